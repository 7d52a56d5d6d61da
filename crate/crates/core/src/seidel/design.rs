//! The binary Golay code, the Steiner system S(4,7,23), the McLaughlin graph
//! and the 276-vertex regular two-graph built from them.

use super::{Graph, SeidelMatrix};

/// Reduced-echelon generator of the [23,12,7] Golay code; bit `i` is
/// coordinate `i`. Spanned by the cyclic shifts of the indicator of the
/// quadratic residues mod 23.
pub const GOLAY_GENERATOR: [u32; 12] = [
    0x400571, 0x2007c9, 0x100695, 0x8063b, 0x4066c, 0x20336, 0x1019b, 0x85bc, 0x42de, 0x216f,
    0x15c6, 0xae3,
];

/// FNV-1a (64-bit) over the little-endian bytes of [`GOLAY_GENERATOR`].
pub const GOLAY_CHECKSUM: u64 = 0xed8f_8d7d_5fc4_f938;

const MASK23: u32 = (1 << 23) - 1;

pub fn generator_checksum(rows: &[u32]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for r in rows {
        for b in r.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}

/// Quadratic residues mod 23.
pub fn quadratic_residues_23() -> Vec<u32> {
    let mut qr: Vec<u32> = (1..23u32).map(|i| i * i % 23).collect();
    qr.sort_unstable();
    qr.dedup();
    qr
}

/// The 23 cyclic shifts of the quadratic-residue indicator.
pub fn qr_shifts() -> Vec<u32> {
    let base: u32 = quadratic_residues_23().iter().map(|q| 1u32 << q).sum();
    (0..23)
        .map(|s| ((base << s) | (base >> (23 - s))) & MASK23)
        .collect()
}

/// All 4096 codewords, ascending.
pub fn golay_codewords() -> Vec<u32> {
    let mut words = vec![0u32];
    for &g in &GOLAY_GENERATOR {
        let extra: Vec<u32> = words.iter().map(|w| w ^ g).collect();
        words.extend(extra);
    }
    words.sort_unstable();
    words
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinerSystem {
    points: usize,
    blocks: Vec<[u8; 7]>,
}

impl SteinerSystem {
    pub fn points(&self) -> usize {
        self.points
    }

    /// Blocks as sorted point lists, in lexicographic order.
    pub fn blocks(&self) -> &[[u8; 7]] {
        &self.blocks
    }

    pub fn block_mask(block: &[u8; 7]) -> u32 {
        block.iter().fold(0, |m, &p| m | (1 << p))
    }

    /// Number of blocks containing every point of `set`.
    pub fn blocks_through(&self, set: &[u8]) -> usize {
        let m: u32 = set.iter().fold(0, |m, &p| m | (1 << p));
        self.blocks
            .iter()
            .filter(|b| Self::block_mask(b) & m == m)
            .count()
    }

    /// Whether every 4-subset of points lies in exactly one block.
    pub fn is_steiner_4(&self) -> bool {
        let mut count = std::collections::HashMap::<u32, u32>::new();
        for b in &self.blocks {
            for i in 0..7 {
                for j in i + 1..7 {
                    for k in j + 1..7 {
                        for l in k + 1..7 {
                            let m = (1u32 << b[i]) | (1 << b[j]) | (1 << b[k]) | (1 << b[l]);
                            *count.entry(m).or_default() += 1;
                        }
                    }
                }
            }
        }
        count.len() == 8855 && count.values().all(|&c| c == 1)
    }
}

/// Supports of the 253 weight-7 Golay codewords.
pub fn steiner_4_7_23() -> SteinerSystem {
    let mut blocks: Vec<[u8; 7]> = golay_codewords()
        .into_iter()
        .filter(|w| w.count_ones() == 7)
        .map(|w| {
            let mut b = [0u8; 7];
            for (slot, p) in b.iter_mut().zip((0..23u8).filter(|&p| w >> p & 1 == 1)) {
                *slot = p;
            }
            b
        })
        .collect();
    blocks.sort_unstable();
    SteinerSystem { points: 23, blocks }
}

/// McLaughlin graph on 275 vertices, fixed point `p = 0`.
///
/// Vertex order: points `1..=22`, then the 77 blocks through `p`, then the
/// 176 blocks avoiding `p`, blocks in lexicographic order.
pub fn mclaughlin_graph() -> Graph {
    let sys = steiner_4_7_23();
    let p = 0u8;
    let pmask = 1u32 << p;
    let masks: Vec<u32> = sys.blocks().iter().map(SteinerSystem::block_mask).collect();
    let through: Vec<u32> = masks.iter().copied().filter(|m| m & pmask != 0).collect();
    let avoid: Vec<u32> = masks.iter().copied().filter(|m| m & pmask == 0).collect();

    #[derive(Clone, Copy)]
    enum V {
        Point(u8),
        Through(u32),
        Avoid(u32),
    }
    let mut verts: Vec<V> = (0..23u8).filter(|&x| x != p).map(V::Point).collect();
    verts.extend(through.iter().map(|&m| V::Through(m)));
    verts.extend(avoid.iter().map(|&m| V::Avoid(m)));

    let adjacent = |a: V, b: V| -> bool {
        use V::*;
        match (a, b) {
            (Point(_), Point(_)) => false,
            (Point(x), Through(m)) | (Through(m), Point(x)) => m >> x & 1 == 0,
            (Point(x), Avoid(m)) | (Avoid(m), Point(x)) => m >> x & 1 == 1,
            (Through(a), Through(b)) => a & b == pmask,
            (Through(a), Avoid(b)) | (Avoid(b), Through(a)) => (a & b).count_ones() == 3,
            (Avoid(a), Avoid(b)) => (a & b).count_ones() == 1,
        }
    };

    let n = verts.len();
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if adjacent(verts[i], verts[j]) {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// Seidel matrix of the McLaughlin graph plus an isolated vertex (vertex 0).
pub fn witt_two_graph_276() -> SeidelMatrix {
    let mcl = mclaughlin_graph();
    let mut g = Graph::new(276);
    for (a, b) in mcl.edges() {
        g.add_edge(a + 1, b + 1);
    }
    SeidelMatrix::from_graph(&g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_matches_checksum() {
        assert_eq!(generator_checksum(&GOLAY_GENERATOR), GOLAY_CHECKSUM);
    }

    #[test]
    fn residues() {
        assert_eq!(
            quadratic_residues_23(),
            vec![1, 2, 3, 4, 6, 8, 9, 12, 13, 16, 18]
        );
    }
}
