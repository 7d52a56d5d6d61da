//! Complete short-vector enumeration for an integral positive definite Gram.
//!
//! With `D_i` the leading principal minors and `λ_{ji} = D_i L_{ji}` the
//! fraction-free LDLᵀ factors, the scaled tail norms `P_i = D_{i-1} · q_i(x)`
//! are integers obeying
//!
//! ```text
//! D_i P_i = D_{i-1} P_{i+1} + (D_i x_i + t_i)^2,   t_i = Σ_{j>i} λ_{ji} x_j,
//! ```
//!
//! so the admissible range of every coordinate is an integer square root away.
//! Everything runs in checked `i128` and restarts in `BigInt` on overflow.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::exactlin::{serialize_rational, Rational};

/// A lattice vector in basis coordinates with its exact norm.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ShortVector {
    #[serde(serialize_with = "serialize_rational")]
    pub norm: Rational,
    pub coords: Vec<i64>,
}

/// Every nonzero vector of norm at most `bound`, one per `±` pair.
///
/// The representative has its last nonzero coordinate positive. Vectors are
/// sorted by norm, then coordinates.
#[derive(Clone, Debug, Serialize)]
pub struct ShortVectorList {
    #[serde(serialize_with = "serialize_rational")]
    pub bound: Rational,
    pub vectors: Vec<ShortVector>,
    pub nodes: u64,
}

impl ShortVectorList {
    /// Number of vectors (both signs) per distinct norm.
    pub fn theta_prefix(&self) -> Vec<(Rational, usize)> {
        let mut out: Vec<(Rational, usize)> = Vec::new();
        for v in &self.vectors {
            match out.last_mut() {
                Some((n, c)) if *n == v.norm => *c += 2,
                _ => out.push((v.norm.clone(), 2)),
            }
        }
        out
    }

    pub fn min_norm(&self) -> Option<&Rational> {
        self.vectors.first().map(|v| &v.norm)
    }
}

/// The enumeration visited more nodes than allowed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BudgetExceeded {
    pub nodes: u64,
}

trait Int:
    Clone + Ord + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + Roots + Send + Sync
{
    fn from_big(b: &BigInt) -> Option<Self>;
    fn from_i64(v: i64) -> Self;
    fn to_big(&self) -> BigInt;
}

impl Int for i128 {
    fn from_big(b: &BigInt) -> Option<Self> {
        b.to_i128()
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Int for BigInt {
    fn from_big(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Leading minors `D_{-1} = 1, D_0, …, D_{r-1}` and `λ_{ji}` of a positive definite Gram.
#[derive(Clone, Debug)]
pub struct FractionFreeLdl {
    /// `minors[i + 1] = D_i`, `minors[0] = 1`.
    pub minors: Vec<BigInt>,
    /// `lambda[j][i]` for `j > i`.
    pub lambda: Vec<Vec<BigInt>>,
}

/// Fraction-free LDLᵀ without pivoting; `None` if `g` is not positive definite.
pub fn fraction_free_ldl(g: &[Vec<BigInt>]) -> Option<FractionFreeLdl> {
    let r = g.len();
    let mut minors = vec![BigInt::one(); r + 1];
    let mut lambda = vec![vec![BigInt::zero(); r]; r];
    // Bareiss on a copy: after step i, a[j][c] holds the (i+1)-minor with rows 0..=i, j and cols 0..=i, c
    let mut a = g.to_vec();
    for i in 0..r {
        if !a[i][i].is_positive() {
            return None;
        }
        minors[i + 1] = a[i][i].clone();
        for j in i + 1..r {
            lambda[j][i] = a[j][i].clone();
        }
        for j in i + 1..r {
            for c in i + 1..r {
                a[j][c] = (&a[i][i] * &a[j][c] - &a[j][i] * &a[i][c]) / &minors[i];
            }
        }
    }
    Some(FractionFreeLdl { minors, lambda })
}

struct Walker<'a, T: Int> {
    d: Vec<T>,
    lam: Vec<Vec<T>>,
    p: T,
    q: T,
    budget: Option<u64>,
    nodes: &'a AtomicU64,
    aborted: &'a AtomicBool,
}

#[derive(Clone)]
struct Frame<T> {
    x: Vec<i64>,
    t: Vec<T>,
}

enum Step {
    Overflow,
}

impl<T: Int> Walker<'_, T> {
    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.budget.is_some_and(|b| n > b) {
            self.aborted.store(true, Ordering::Relaxed);
        }
        !self.aborted.load(Ordering::Relaxed)
    }

    // D_i for coordinate i is d[i + 1]
    fn range(
        &self,
        i: usize,
        p_next: &T,
        t_i: &T,
        nonneg: bool,
    ) -> Result<Option<(i64, i64)>, Step> {
        let (di, dprev) = (&self.d[i + 1], &self.d[i]);
        let room = di
            .checked_mul(&self.p)
            .ok_or(Step::Overflow)?
            .checked_sub(&self.q.checked_mul(p_next).ok_or(Step::Overflow)?)
            .ok_or(Step::Overflow)?;
        if room.is_negative() {
            return Ok(None);
        }
        let w2 = dprev
            .checked_mul(&room)
            .ok_or(Step::Overflow)?
            .div_floor(&self.q);
        let w = w2.sqrt();
        let lo = (-w.clone() - t_i.clone()).div_ceil(di);
        let hi = (w - t_i.clone()).div_floor(di);
        let lo = lo.to_big().to_i64().ok_or(Step::Overflow)?;
        let hi = hi.to_big().to_i64().ok_or(Step::Overflow)?;
        let lo = if nonneg { lo.max(0) } else { lo };
        Ok(if lo > hi { None } else { Some((lo, hi)) })
    }

    fn next_p(&self, i: usize, p_next: &T, t_i: &T, x: i64) -> Result<T, Step> {
        let (di, dprev) = (&self.d[i + 1], &self.d[i]);
        let s = di
            .checked_mul(&T::from_i64(x))
            .ok_or(Step::Overflow)?
            .checked_add(t_i)
            .ok_or(Step::Overflow)?;
        let num = dprev
            .checked_mul(p_next)
            .ok_or(Step::Overflow)?
            .checked_add(&s.checked_mul(&s).ok_or(Step::Overflow)?)
            .ok_or(Step::Overflow)?;
        Ok(num / di.clone())
    }

    fn push(&self, frame: &mut Frame<T>, i: usize, x: i64) -> Result<(), Step> {
        frame.x[i] = x;
        let xv = T::from_i64(x);
        for k in 0..i {
            let add = self.lam[i][k].checked_mul(&xv).ok_or(Step::Overflow)?;
            frame.t[k] = frame.t[k].checked_add(&add).ok_or(Step::Overflow)?;
        }
        Ok(())
    }

    fn pop(&self, frame: &mut Frame<T>, i: usize) {
        let xv = T::from_i64(frame.x[i]);
        for k in 0..i {
            frame.t[k] = frame.t[k].clone() - self.lam[i][k].clone() * xv.clone();
        }
        frame.x[i] = 0;
    }

    /// Visits coordinate `i` with tail norm `p_next = P_{i+1}` already fixed.
    fn walk(
        &self,
        frame: &mut Frame<T>,
        i: usize,
        p_next: T,
        zero_above: bool,
        sink: &mut dyn FnMut(&[i64], &T),
    ) -> Result<(), Step> {
        if !self.tick() {
            return Ok(());
        }
        let t_i = frame.t[i].clone();
        let Some((lo, hi)) = self.range(i, &p_next, &t_i, zero_above)? else {
            return Ok(());
        };
        for x in lo..=hi {
            let p_i = self.next_p(i, &p_next, &t_i, x)?;
            self.push(frame, i, x)?;
            if i == 0 {
                if !(zero_above && x == 0) {
                    sink(&frame.x, &p_i);
                }
            } else {
                self.walk(frame, i - 1, p_i, zero_above && x == 0, sink)?;
            }
            self.pop(frame, i);
        }
        Ok(())
    }
}

/// A partial assignment of the top coordinates, waiting to be explored.
struct Task<T> {
    frame: Frame<T>,
    /// Next coordinate to assign.
    level: usize,
    p_next: T,
    zero_above: bool,
}

// enough independent subtrees to keep the pool busy
const FRONTIER: usize = 512;

fn run<T: Int, A: Send>(
    ff: &FractionFreeLdl,
    p: &BigInt,
    q: &BigInt,
    budget: Option<u64>,
    parallel: bool,
    init: &(dyn Fn() -> A + Sync),
    visit: &(dyn Fn(&mut A, &[i64], &BigInt) + Sync),
) -> Result<Result<(Vec<A>, u64), BudgetExceeded>, Step> {
    let r = ff.minors.len() - 1;
    let conv = |b: &BigInt| T::from_big(b).ok_or(Step::Overflow);
    let d = ff.minors.iter().map(conv).collect::<Result<Vec<T>, _>>()?;
    let lam = ff
        .lambda
        .iter()
        .map(|row| row.iter().map(conv).collect::<Result<Vec<T>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    let nodes = AtomicU64::new(0);
    let aborted = AtomicBool::new(false);
    let w = Walker {
        d,
        lam,
        p: conv(p)?,
        q: conv(q)?,
        budget,
        nodes: &nodes,
        aborted: &aborted,
    };
    if r == 0 {
        return Ok(Ok((Vec::new(), 0)));
    }

    // breadth-first expansion of the top levels into independent subtrees
    let mut tasks = vec![Task {
        frame: Frame {
            x: vec![0i64; r],
            t: vec![T::zero(); r],
        },
        level: r - 1,
        p_next: T::zero(),
        zero_above: true,
    }];
    while tasks.len() < FRONTIER && tasks.iter().any(|t| t.level > 0) {
        let mut next = Vec::new();
        for task in tasks {
            if task.level == 0 {
                next.push(task);
                continue;
            }
            w.tick();
            let i = task.level;
            let t_i = task.frame.t[i].clone();
            let Some((lo, hi)) = w.range(i, &task.p_next, &t_i, task.zero_above)? else {
                continue;
            };
            for x in lo..=hi {
                let p_i = w.next_p(i, &task.p_next, &t_i, x)?;
                let mut frame = task.frame.clone();
                w.push(&mut frame, i, x)?;
                next.push(Task {
                    frame,
                    level: i - 1,
                    p_next: p_i,
                    zero_above: task.zero_above && x == 0,
                });
            }
        }
        tasks = next;
    }
    let explore = |mut task: Task<T>| -> Result<A, Step> {
        let mut acc = init();
        let mut sink = |x: &[i64], n: &T| visit(&mut acc, x, &n.to_big());
        w.walk(
            &mut task.frame,
            task.level,
            task.p_next,
            task.zero_above,
            &mut sink,
        )?;
        Ok(acc)
    };
    let parts: Vec<Result<A, Step>> = if parallel {
        tasks.into_par_iter().map(explore).collect()
    } else {
        tasks.into_iter().map(explore).collect()
    };
    let mut out = Vec::with_capacity(parts.len());
    for part in parts {
        out.push(part?);
    }
    let n = nodes.load(Ordering::Relaxed);
    if aborted.load(Ordering::Relaxed) {
        return Ok(Err(BudgetExceeded { nodes: n }));
    }
    Ok(Ok((out, n)))
}

/// Calls `visit(acc, x, xᵀ G x)` for every nonzero `x` with `xᵀ G x ≤ bound · scale`,
/// one per `±` pair. Subtrees get their own accumulators, returned in a fixed
/// order that does not depend on scheduling.
pub fn visit_gram<A: Send>(
    g: &[Vec<BigInt>],
    bound: &Rational,
    scale: &BigInt,
    budget: Option<u64>,
    parallel: bool,
    init: &(dyn Fn() -> A + Sync),
    visit: &(dyn Fn(&mut A, &[i64], &BigInt) + Sync),
) -> Result<(Vec<A>, u64), BudgetExceeded> {
    let ff = fraction_free_ldl(g).expect("Gram must be positive definite");
    // xᵀ G x / scale ≤ bound  ⇔  q · xᵀ G x ≤ p · scale
    let p = bound.numer() * scale;
    let q = bound.denom().clone();
    match run::<i128, A>(&ff, &p, &q, budget, parallel, init, visit) {
        Ok(res) => res,
        Err(Step::Overflow) => match run::<BigInt, A>(&ff, &p, &q, budget, parallel, init, visit) {
            Ok(res) => res,
            Err(Step::Overflow) => unreachable!("BigInt arithmetic does not overflow"),
        },
    }
}

/// All nonzero `x` with `xᵀ G x ≤ bound`, up to sign; `G` integral and positive definite.
///
/// Norms are reported as `xᵀ G x / scale`, for Grams that were scaled to become integral.
pub fn enumerate_gram(
    g: &[Vec<BigInt>],
    bound: &Rational,
    scale: &BigInt,
    budget: Option<u64>,
    parallel: bool,
) -> Result<ShortVectorList, BudgetExceeded> {
    let (parts, nodes) = visit_gram(
        g,
        bound,
        scale,
        budget,
        parallel,
        &Vec::new,
        &|acc: &mut Vec<ShortVector>, x, n| {
            acc.push(ShortVector {
                norm: Rational::new(n.clone(), scale.clone()),
                coords: x.to_vec(),
            })
        },
    )?;
    let mut vectors: Vec<ShortVector> = parts.into_iter().flatten().collect();
    vectors.sort();
    Ok(ShortVectorList {
        bound: bound.clone(),
        vectors,
        nodes,
    })
}
