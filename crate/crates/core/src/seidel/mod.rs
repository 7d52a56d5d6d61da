//! Graphs, Seidel matrices and switching.
//!
//! A Seidel matrix `S` is symmetric with zero diagonal and off-diagonal entries
//! `±1`; it corresponds to the graph `H` with `S = J - I - 2A(H)`. A set of
//! equiangular lines with angle `arccos(1/5)` has Gram matrix `I + S/5`, so the
//! condition "smallest Seidel eigenvalue at least -5" is exactly the PSD-ness
//! of `S + 5I`, and the ambient dimension of the lines is `rank(S + 5I)`.

mod bitset;
pub mod clique;
pub mod design;

use std::fmt::Write as _;

use thiserror::Error;

use crate::exactlin::{self, rat, NegativeWitness, PsdResult, Rational, RationalMatrix};

pub use bitset::BitSet;
pub use clique::{max_clique, CliqueResult};
pub use design::{
    golay_codewords, mclaughlin_graph, steiner_4_7_23, witt_two_graph_276, SteinerSystem,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeidelError {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("invalid Seidel entries at {}", fmt_cells(.cells))]
    InvalidEntries { cells: Vec<(usize, usize)> },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("smallest Seidel eigenvalue is below -5 (witness value {})", .0.value)]
    NotPsd(NegativeWitness),
    #[error("invalid switching data: {0}")]
    InvalidSwitching(String),
}

fn fmt_cells(cells: &[(usize, usize)]) -> String {
    let shown: Vec<String> = cells
        .iter()
        .take(8)
        .map(|(i, j)| format!("({i},{j})"))
        .collect();
    let more = if cells.len() > 8 {
        format!(" and {} more", cells.len() - 8)
    } else {
        String::new()
    };
    format!("{}{}", shown.join(", "), more)
}

/// Simple undirected graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    rows: Vec<BitSet>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            rows: (0..n).map(|_| BitSet::new(n)).collect(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(i, j);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n > 2 {
            g.add_edge(n - 1, 0);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a != b, "loops are not allowed");
        self.rows[a].insert(b);
        self.rows[b].insert(a);
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) {
        self.rows[a].remove(b);
        self.rows[b].remove(a);
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.rows[a].contains(b)
    }

    pub fn neighbor_set(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[v].iter()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.order())
            .flat_map(|a| {
                self.neighbors(a)
                    .filter(move |&b| b > a)
                    .map(move |b| (a, b))
            })
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(BitSet::count).sum::<usize>() / 2
    }

    /// Adds an isolated vertex and returns its index.
    pub fn add_vertex(&mut self) -> usize {
        let n = self.order() + 1;
        let mut rows: Vec<BitSet> = Vec::with_capacity(n);
        for (a, old) in self.rows.iter().enumerate() {
            rows.push(BitSet::from_indices(n, old.iter()));
            debug_assert!(!rows[a].contains(n - 1));
        }
        rows.push(BitSet::new(n));
        self.rows = rows;
        n - 1
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &a)| vs[i + 1..].iter().all(|&b| a != b && self.has_edge(a, b)))
    }

    /// First non-adjacent pair of distinct vertices in `vs`, if any.
    pub fn first_non_edge(&self, vs: &[usize]) -> Option<(usize, usize)> {
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                if a != b && !self.has_edge(a, b) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Induced subgraph; vertex `k` of the result is `vs[k]`.
    pub fn induced(&self, vs: &[usize]) -> Graph {
        let mut g = Graph::new(vs.len());
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                if self.has_edge(vs[i], vs[j]) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::new(self.order());
        for (a, b) in self.edges() {
            g.add_edge(perm[a], perm[b]);
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        let n = self.order();
        if n == 0 {
            return true;
        }
        let mut seen = BitSet::new(n);
        seen.insert(0);
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen.contains(w) {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        seen.count() == n
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = BitSet::new(n);
        let mut out = Vec::new();
        for s in 0..n {
            if seen.contains(s) {
                continue;
            }
            seen.insert(s);
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for w in self.neighbors(v) {
                    if !seen.contains(w) {
                        seen.insert(w);
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn adjacency_matrix(&self) -> RationalMatrix {
        let n = self.order();
        RationalMatrix::from_fn(
            n,
            n,
            |i, j| if self.has_edge(i, j) { rat(1) } else { rat(0) },
        )
    }
}

/// Symmetric `{0, ±1}` matrix with zero diagonal and `±1` off the diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeidelMatrix {
    n: usize,
    entries: Vec<i8>,
}

impl SeidelMatrix {
    /// Validates row-major entries; every offending cell is reported.
    pub fn from_entries(n: usize, entries: Vec<i8>) -> Result<Self, SeidelError> {
        if entries.len() != n * n {
            return Err(SeidelError::DimensionMismatch {
                expected: n * n,
                got: entries.len(),
            });
        }
        let mut cells = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let e = entries[i * n + j];
                let ok = if i == j {
                    e == 0
                } else {
                    (e == 1 || e == -1) && e == entries[j * n + i]
                };
                if !ok {
                    cells.push((i, j));
                }
            }
        }
        if !cells.is_empty() {
            return Err(SeidelError::InvalidEntries { cells });
        }
        Ok(SeidelMatrix { n, entries })
    }

    /// `S(H) = J - I - 2A(H)`.
    pub fn from_graph(g: &Graph) -> Self {
        let n = g.order();
        let mut entries = vec![0i8; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    entries[i * n + j] = if g.has_edge(i, j) { -1 } else { 1 };
                }
            }
        }
        SeidelMatrix { n, entries }
    }

    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.get(i, j) == -1 {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.n + j]
    }

    /// Row-major entries of `S + shift * I`.
    pub fn shifted(&self, shift: i64) -> Vec<i64> {
        let n = self.n;
        (0..n * n)
            .map(|k| self.entries[k] as i64 + if k / n == k % n { shift } else { 0 })
            .collect()
    }

    pub fn to_rational(&self) -> RationalMatrix {
        RationalMatrix::from_i64(self.n, self.n, &self.shifted(0))
    }

    /// The Gram matrix `S + 5I` of the (unnormalized) line vectors.
    pub fn gram(&self) -> RationalMatrix {
        RationalMatrix::from_i64(self.n, self.n, &self.shifted(5))
    }

    /// Parses the text format: first line `n`, then `n` rows of `n`
    /// whitespace-separated entries from `{0, 1, -1}`.
    pub fn parse(text: &str) -> Result<Self, SeidelError> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (l0, first) = lines.next().ok_or(SeidelError::Parse {
            line: 1,
            col: 1,
            msg: "empty input".into(),
        })?;
        let n: usize = first.trim().parse().map_err(|_| SeidelError::Parse {
            line: l0 + 1,
            col: 1,
            msg: format!("expected order, got {:?}", first.trim()),
        })?;
        let mut entries = Vec::with_capacity(n * n);
        let mut rows = 0;
        for (ln, line) in lines {
            if rows == n {
                return Err(SeidelError::Parse {
                    line: ln + 1,
                    col: 1,
                    msg: "trailing data after matrix".into(),
                });
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != n {
                return Err(SeidelError::Parse {
                    line: ln + 1,
                    col: toks.len().min(n) + 1,
                    msg: format!("expected {n} entries, found {}", toks.len()),
                });
            }
            for (c, t) in toks.iter().enumerate() {
                let v: i8 = match *t {
                    "0" => 0,
                    "1" | "+1" => 1,
                    "-1" => -1,
                    _ => {
                        return Err(SeidelError::Parse {
                            line: ln + 1,
                            col: c + 1,
                            msg: format!("entry {t:?} not in {{0,1,-1}}"),
                        })
                    }
                };
                entries.push(v);
            }
            rows += 1;
        }
        if rows != n {
            return Err(SeidelError::Parse {
                line: l0 + 2 + rows,
                col: 1,
                msg: format!("expected {n} rows, found {rows}"),
            });
        }
        Self::from_entries(n, entries)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
        s
    }
}

/// Switching by a sign vector followed by a relabeling: the result is
/// `(PD)^T S (PD)`, entry `(i, j)` being `d_i d_j S[perm[i]][perm[j]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwitchingOp {
    signs: Vec<i8>,
    perm: Vec<usize>,
}

impl SwitchingOp {
    pub fn new(signs: Vec<i8>, perm: Vec<usize>) -> Result<Self, SeidelError> {
        if signs.len() != perm.len() {
            return Err(SeidelError::InvalidSwitching(
                "sign and permutation lengths differ".into(),
            ));
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(SeidelError::InvalidSwitching("signs must be ±1".into()));
        }
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(SeidelError::InvalidSwitching("not a permutation".into()));
            }
        }
        Ok(SwitchingOp { signs, perm })
    }

    pub fn identity(n: usize) -> Self {
        SwitchingOp {
            signs: vec![1; n],
            perm: (0..n).collect(),
        }
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn inverse(&self) -> SwitchingOp {
        let n = self.perm.len();
        let mut inv = vec![0; n];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        let signs = (0..n).map(|i| self.signs[inv[i]]).collect();
        SwitchingOp { signs, perm: inv }
    }

    pub fn apply(&self, s: &SeidelMatrix) -> Result<SeidelMatrix, SeidelError> {
        let n = s.order();
        if self.perm.len() != n {
            return Err(SeidelError::DimensionMismatch {
                expected: n,
                got: self.perm.len(),
            });
        }
        let mut entries = vec![0i8; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] =
                    self.signs[i] * self.signs[j] * s.get(self.perm[i], self.perm[j]);
            }
        }
        Ok(SeidelMatrix { n, entries })
    }
}

/// Certifies `λ_min(S) >= t` via `psd_check(S - tI)`.
pub fn smallest_eig_at_least(s: &SeidelMatrix, t: &Rational) -> PsdResult {
    exactlin::psd_check(&s.to_rational().shift_diagonal(&-t.clone()))
        .expect("Seidel matrices are symmetric")
}

/// Dimension spanned by the lines: `n - nullity(S + 5I)`.
pub fn line_dimension(s: &SeidelMatrix) -> Result<usize, SeidelError> {
    let gram = s.gram();
    if let PsdResult::NotPsd(w) = exactlin::psd_check(&gram).expect("symmetric") {
        return Err(SeidelError::NotPsd(w));
    }
    Ok(s.order() - exactlin::nullity(&gram).nullity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::ratio;

    #[test]
    fn empty_graph_gives_j_minus_i() {
        let s = SeidelMatrix::from_graph(&Graph::new(3));
        assert!((0..3).all(|i| (0..3).all(|j| s.get(i, j) == if i == j { 0 } else { 1 })));
    }

    #[test]
    fn complete_graph_negates() {
        let s = SeidelMatrix::from_graph(&Graph::complete(5));
        assert!((0..5).all(|i| (0..5).all(|j| s.get(i, j) == if i == j { 0 } else { -1 })));
        assert_eq!(s.to_graph(), Graph::complete(5));
    }

    #[test]
    fn malformed_entries_are_listed() {
        let err = SeidelMatrix::from_entries(2, vec![1, 1, 1, 0]).unwrap_err();
        assert_eq!(
            err,
            SeidelError::InvalidEntries {
                cells: vec![(0, 0)]
            }
        );
        let err = SeidelMatrix::from_entries(2, vec![0, 1, -1, 0]).unwrap_err();
        assert_eq!(
            err,
            SeidelError::InvalidEntries {
                cells: vec![(0, 1), (1, 0)]
            }
        );
    }

    #[test]
    fn parse_rejects_zero_off_diagonal_and_asymmetry() {
        assert!(matches!(
            SeidelMatrix::parse("2\n0 0\n0 0\n"),
            Err(SeidelError::InvalidEntries { .. })
        ));
        assert!(matches!(
            SeidelMatrix::parse("2\n0 1\n-1 0\n"),
            Err(SeidelError::InvalidEntries { .. })
        ));
        assert!(matches!(
            SeidelMatrix::parse("2\n0 1\n1 2\n"),
            Err(SeidelError::Parse {
                line: 3,
                col: 2,
                ..
            })
        ));
        assert!(matches!(
            SeidelMatrix::parse("3\n0 1 1\n1 0 1\n"),
            Err(SeidelError::Parse { .. })
        ));
        let s = SeidelMatrix::parse("2\n0 -1\n-1 0\n").unwrap();
        assert_eq!(SeidelMatrix::parse(&s.to_text()).unwrap(), s);
    }

    #[test]
    fn switching_examples() {
        let s = SeidelMatrix::from_graph(&Graph::from_edges(4, &[(0, 1), (1, 2)]));
        assert_eq!(SwitchingOp::identity(4).apply(&s).unwrap(), s);
        let all_neg = SwitchingOp::new(vec![-1; 4], (0..4).collect()).unwrap();
        assert_eq!(all_neg.apply(&s).unwrap(), s);

        let k2 = SeidelMatrix::from_graph(&Graph::complete(2));
        let flip = SwitchingOp::new(vec![-1, 1], vec![0, 1]).unwrap();
        let out = flip.apply(&k2).unwrap();
        assert_eq!((out.get(0, 1), out.get(1, 0)), (1, 1));

        let op = SwitchingOp::new(vec![1, -1, -1, 1], vec![2, 0, 3, 1]).unwrap();
        assert_eq!(op.inverse().apply(&op.apply(&s).unwrap()).unwrap(), s);
    }

    #[test]
    fn k5_eigenvalue_bounds() {
        let s = SeidelMatrix::from_graph(&Graph::complete(5));
        assert!(smallest_eig_at_least(&s, &rat(-5)).is_psd());
        assert!(smallest_eig_at_least(&s, &rat(-4)).is_psd());
        assert!(!smallest_eig_at_least(&s, &ratio(-39, 10)).is_psd());
        assert_eq!(line_dimension(&s).unwrap(), 5);
    }

    #[test]
    fn line_dimension_rejects_small_eigenvalue() {
        // four pairwise non-adjacent vertices attached to one vertex of a K5
        let mut g = Graph::complete(5);
        for _ in 0..4 {
            let v = g.add_vertex();
            g.add_edge(v, 0);
        }
        assert!(matches!(
            line_dimension(&SeidelMatrix::from_graph(&g)),
            Err(SeidelError::NotPsd(_))
        ));
    }
}
