//! Exhaustive search for the largest multiset size keeping `Δ` PSD.
//!
//! `Δ` only depends on the counts per row-swap orbit, and removing copies can
//! only increase `Δ` in the Loewner order. The search therefore walks orbit
//! multisets in nondecreasing orbit order, keeps for every node the list of
//! orbits that can still be added once, and stops a branch as soon as `Δ`
//! leaves the PSD cone.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use super::{MatrixMultiset, TwoRowMatrix, Universe};
use crate::exactlin::{is_psd_integer, RationalMatrix};
use crate::seidel::BitSet;

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Largest multiset size explored.
    pub cap: usize,
    /// Restrict the universe to these matrices.
    pub support_filter: Option<Vec<TwoRowMatrix>>,
    /// Abort after this many search nodes.
    pub node_budget: Option<u64>,
    /// Shard the first level across the rayon pool.
    pub parallel: bool,
}

impl SearchOptions {
    pub fn with_cap(cap: usize) -> Self {
        SearchOptions {
            cap,
            parallel: true,
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SearchStatus {
    /// Every multiset of size `max + 1` fails (or `Q11` itself fails when `max` is `None`).
    Exact { max: Option<usize> },
    /// Feasible multisets exist at the cap; nothing is claimed beyond it.
    InconclusiveAtCap { cap: usize },
    /// The node budget ran out before the search finished.
    BudgetExhausted { nodes: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    pub universe: String,
    pub universe_size: usize,
    pub orbit_count: usize,
    pub cap: usize,
    pub status: SearchStatus,
    /// Feasible orbit-count vectors of each size `0..=cap`.
    pub feasible_by_size: Vec<u64>,
    /// Largest size with a feasible multiset.
    pub max_feasible: Option<usize>,
    /// Matrices used by some feasible multiset of size `max_feasible`, both
    /// members of every used orbit included.
    pub supports_at_max: Vec<TwoRowMatrix>,
    /// First feasible multiset of size `max_feasible` in enumeration order.
    pub witness_at_max: Option<MatrixMultiset>,
    pub nodes: u64,
}

impl SearchOutcome {
    /// The proven bound, if the search was conclusive.
    pub fn proven_max(&self) -> Option<Option<usize>> {
        match self.status {
            SearchStatus::Exact { max } => Some(max),
            _ => None,
        }
    }

    pub fn is_conclusive(&self) -> bool {
        matches!(self.status, SearchStatus::Exact { .. })
    }
}

struct Engine {
    r: usize,
    forms: Vec<Vec<i64>>,
    cap: usize,
    budget: Option<u64>,
    nodes: AtomicU64,
    aborted: AtomicBool,
}

#[derive(Default)]
struct Acc {
    feasible: Vec<u64>,
    supports: Vec<BitSet>,
    witness: Vec<Option<Vec<usize>>>,
}

impl Acc {
    fn new(cap: usize, orbits: usize) -> Self {
        Acc {
            feasible: vec![0; cap + 1],
            supports: (0..=cap).map(|_| BitSet::new(orbits)).collect(),
            witness: vec![None; cap + 1],
        }
    }

    fn record(&mut self, stack: &[usize]) {
        let d = stack.len();
        self.feasible[d] += 1;
        for &o in stack {
            self.supports[d].insert(o);
        }
        if self.witness[d].is_none() {
            self.witness[d] = Some(stack.to_vec());
        }
    }

    fn merge(&mut self, other: Acc) {
        for d in 0..self.feasible.len() {
            self.feasible[d] += other.feasible[d];
            for o in other.supports[d].iter() {
                self.supports[d].insert(o);
            }
            if self.witness[d].is_none() {
                self.witness[d] = other.witness[d].clone();
            }
        }
    }
}

impl Engine {
    fn sub(&self, d: &[i64], o: usize) -> Vec<i64> {
        d.iter().zip(&self.forms[o]).map(|(a, b)| a - b).collect()
    }

    fn filter(&self, d: &[i64], cands: &[usize]) -> Vec<usize> {
        cands
            .iter()
            .copied()
            .filter(|&c| is_psd_integer(self.r, &self.sub(d, c)))
            .collect()
    }

    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.budget.is_some_and(|b| n > b) {
            self.aborted.store(true, Ordering::Relaxed);
        }
        !self.aborted.load(Ordering::Relaxed)
    }

    fn dfs(&self, d: &[i64], cands: &[usize], stack: &mut Vec<usize>, acc: &mut Acc) {
        if !self.tick() {
            return;
        }
        acc.record(stack);
        if stack.len() == self.cap {
            return;
        }
        for (k, &o) in cands.iter().enumerate() {
            let next = self.sub(d, o);
            let sub_cands = self.filter(&next, &cands[k..]);
            stack.push(o);
            self.dfs(&next, &sub_cands, stack, acc);
            stack.pop();
        }
    }
}

/// Largest `m ≤ cap` such that some multiset of size `m` keeps `Q(Q11; a)` PSD.
pub fn search_max_multiplicity(
    q11: &RationalMatrix,
    universe: &Universe,
    opts: &SearchOptions,
) -> SearchOutcome {
    let universe = match &opts.support_filter {
        Some(f) => Universe::from_elements(
            &format!("{} ∩ filter", universe.name),
            universe
                .elements
                .iter()
                .filter(|a| f.contains(a))
                .cloned()
                .collect(),
        ),
        None => universe.clone(),
    };
    let r = q11.n_rows();
    assert_eq!(universe.cols(), r, "universe width must match Q11");
    assert!(q11.is_symmetric(), "Q11 must be symmetric");
    let den = q11
        .common_denominator()
        .to_i64()
        .expect("small denominators");
    let scale = 27 * den;
    let d0: Vec<i64> = (0..r * r)
        .map(|k| {
            (q11.get(k / r, k % r) * crate::exactlin::rat(scale))
                .to_integer()
                .to_i64()
                .expect("entries fit in i64")
        })
        .collect();
    let forms: Vec<Vec<i64>> = universe
        .orbits
        .iter()
        .map(|o| {
            let f = universe.elements[o[0]].reduced_form_27();
            debug_assert!(
                o.iter()
                    .all(|&e| universe.elements[e].reduced_form_27() == f),
                "row swap must fix the form"
            );
            f.into_iter().map(|x| x * den).collect()
        })
        .collect();
    let engine = Engine {
        r,
        forms,
        cap: opts.cap,
        budget: opts.node_budget,
        nodes: AtomicU64::new(0),
        aborted: AtomicBool::new(false),
    };
    let orbit_count = universe.orbits.len();
    let mut acc = Acc::new(opts.cap, orbit_count);

    if is_psd_integer(r, &d0) && engine.tick() {
        acc.record(&[]);
        if opts.cap > 0 {
            let roots = engine.filter(&d0, &(0..orbit_count).collect::<Vec<_>>());
            let shard = |k: usize| {
                let mut a = Acc::new(opts.cap, orbit_count);
                let next = engine.sub(&d0, roots[k]);
                let cands = engine.filter(&next, &roots[k..]);
                engine.dfs(&next, &cands, &mut vec![roots[k]], &mut a);
                a
            };
            let shards: Vec<Acc> = if opts.parallel {
                (0..roots.len()).into_par_iter().map(shard).collect()
            } else {
                (0..roots.len()).map(shard).collect()
            };
            for s in shards {
                acc.merge(s);
            }
        }
    }

    let nodes = engine.nodes.load(Ordering::Relaxed);
    let max_feasible = (0..=opts.cap).rev().find(|&d| acc.feasible[d] > 0);
    let status = if engine.aborted.load(Ordering::Relaxed) {
        SearchStatus::BudgetExhausted { nodes }
    } else if max_feasible == Some(opts.cap) {
        SearchStatus::InconclusiveAtCap { cap: opts.cap }
    } else {
        SearchStatus::Exact { max: max_feasible }
    };
    let (supports_at_max, witness_at_max) = match max_feasible {
        Some(d) => {
            let mut sup: Vec<TwoRowMatrix> = acc.supports[d]
                .iter()
                .flat_map(|o| {
                    universe.orbits[o]
                        .iter()
                        .map(|&e| universe.elements[e].clone())
                })
                .collect();
            sup.sort();
            let w = acc.witness[d].as_ref().map(|stack| {
                MatrixMultiset::from_counts(
                    stack
                        .iter()
                        .map(|&o| (universe.elements[universe.orbits[o][0]].clone(), 1)),
                )
            });
            (sup, w)
        }
        None => (Vec::new(), None),
    };
    SearchOutcome {
        universe: universe.name.clone(),
        universe_size: universe.elements.len(),
        orbit_count,
        cap: opts.cap,
        status,
        feasible_by_size: acc.feasible,
        max_feasible,
        supports_at_max,
        witness_at_max,
        nodes,
    }
}
