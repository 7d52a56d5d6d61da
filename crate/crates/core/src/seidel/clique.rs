//! Maximum clique search: bitset branch-and-bound with a greedy-coloring bound.

use serde::Serialize;

use super::{BitSet, Graph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueResult {
    /// Lexicographically least maximum clique, sorted ascending.
    pub vertices: Vec<usize>,
    /// Search nodes visited while proving optimality.
    pub nodes: u64,
}

impl CliqueResult {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

struct Search<'a> {
    g: &'a Graph,
    nodes: u64,
}

impl Search<'_> {
    /// Vertices of `cand` paired with greedy color classes, ascending by color.
    fn color_order(&self, cand: &BitSet) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(cand.count());
        let mut uncolored = cand.clone();
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut avail = uncolored.clone();
            while let Some(v) = avail.first() {
                avail.remove(v);
                avail.difference_with(self.g.neighbor_set(v));
                uncolored.remove(v);
                out.push((v, color));
            }
        }
        out
    }

    /// Largest clique in `cand` strictly bigger than `floor`, if any.
    fn max_in(&mut self, cand: &BitSet, floor: usize) -> Option<Vec<usize>> {
        self.nodes += 1;
        let order = self.color_order(cand);
        let mut best: Option<Vec<usize>> = None;
        let mut floor = floor;
        let mut cand = cand.clone();
        for &(v, color) in order.iter().rev() {
            if color <= floor {
                break;
            }
            let sub = cand.intersect(self.g.neighbor_set(v));
            let found = if sub.is_empty() {
                if floor == 0 {
                    Some(Vec::new())
                } else {
                    None
                }
            } else {
                self.max_in(&sub, floor.saturating_sub(1)).or_else(|| {
                    if floor == 0 {
                        Some(Vec::new())
                    } else {
                        None
                    }
                })
            };
            if let Some(mut c) = found {
                if c.len() + 1 > floor {
                    c.push(v);
                    floor = c.len();
                    best = Some(c);
                }
            }
            cand.remove(v);
        }
        best
    }

    /// Some clique of exactly `need` vertices inside `cand`, if one exists.
    fn exists(&mut self, cand: &BitSet, need: usize) -> bool {
        if need == 0 {
            return true;
        }
        self.nodes += 1;
        let order = self.color_order(cand);
        let mut cand = cand.clone();
        for &(v, color) in order.iter().rev() {
            if color < need {
                return false;
            }
            let sub = cand.intersect(self.g.neighbor_set(v));
            if self.exists(&sub, need - 1) {
                return true;
            }
            cand.remove(v);
        }
        false
    }
}

/// Returns the lexicographically least maximum clique of `g`.
///
/// The clique number is found first; the vertex set is then fixed one vertex
/// at a time by the smallest choice that still extends to a maximum clique,
/// so the answer does not depend on search order.
pub fn max_clique(g: &Graph) -> CliqueResult {
    let n = g.order();
    let mut s = Search { g, nodes: 0 };
    if n == 0 {
        return CliqueResult {
            vertices: vec![],
            nodes: 0,
        };
    }
    let all = BitSet::full(n);
    let omega = s.max_in(&all, 0).map_or(0, |c| c.len());
    let mut chosen = Vec::with_capacity(omega);
    let mut cand = all;
    while chosen.len() < omega {
        let mut picked = None;
        for v in cand.iter() {
            let sub = cand.intersect(g.neighbor_set(v));
            if s.exists(&sub, omega - chosen.len() - 1) {
                picked = Some(v);
                break;
            }
        }
        let v = picked.expect("clique number is attained");
        chosen.push(v);
        let mut next = cand.intersect(g.neighbor_set(v));
        for u in 0..=v {
            next.remove(u);
        }
        cand = next;
    }
    CliqueResult {
        vertices: chosen,
        nodes: s.nodes,
    }
}

/// Whether `g` has a clique on `k` vertices.
pub fn has_clique_of_size(g: &Graph, k: usize) -> bool {
    let mut s = Search { g, nodes: 0 };
    s.exists(&BitSet::full(g.order()), k)
}
