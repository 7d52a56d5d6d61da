//! Basis reduction driven by the Gram matrix alone.
//!
//! Integral LLL: the Gram–Schmidt data is kept as the integers
//! `d_i` (leading principal minors) and `λ_{ij} = d_j μ_{ij}`, so every step is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

/// How the extracted basis is reduced before enumeration.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reduction {
    /// Keep the Hermite basis.
    None,
    /// Size reduction only: `|μ_{ij}| ≤ 1/2`.
    SizeReduce,
    /// LLL with `δ = 99/100`.
    #[default]
    Lll,
}

/// Reduced Gram `Tᵀ G T` and the unimodular `T` (columns are the new basis in old coordinates).
#[derive(Clone, Debug)]
pub struct Reduced {
    pub gram: Vec<Vec<BigInt>>,
    pub transform: Vec<Vec<BigInt>>,
}

struct State {
    n: usize,
    g: Vec<Vec<BigInt>>,
    h: Vec<Vec<BigInt>>,
    d: Vec<BigInt>,
    lam: Vec<Vec<BigInt>>,
}

impl State {
    // d[0] = 1, d[i+1] is the i-th Gram–Schmidt minor; vectors are 0-based
    fn dk(&self, i: usize) -> &BigInt {
        &self.d[i + 1]
    }

    fn init_row(&mut self, k: usize) {
        for j in 0..=k {
            let mut u = self.g[k][j].clone();
            for i in 0..j {
                u = (self.dk(i) * &u - &self.lam[k][i] * &self.lam[j][i]) / &self.d[i];
            }
            if j < k {
                self.lam[k][j] = u;
            } else {
                assert!(u.is_positive(), "basis Gram must be positive definite");
                self.d[k + 1] = u;
            }
        }
    }

    fn red(&mut self, k: usize, l: usize) {
        let two_l: BigInt = &self.lam[k][l] * 2u32;
        if two_l.abs() <= *self.dk(l) {
            return;
        }
        // nearest integer to λ/d, ties rounded down
        let q = (&two_l + self.dk(l)).div_floor(&(self.dk(l) * 2u32));
        let n = self.n;
        for r in 0..n {
            let t = &q * &self.h[r][l];
            self.h[r][k] -= t;
        }
        // b_k <- b_k - q b_l on the Gram
        let kk = &self.g[k][k] - &q * &self.g[k][l] * 2u32 + &q * &q * &self.g[l][l];
        for r in 0..n {
            if r != k {
                let v = &self.g[r][k] - &q * &self.g[r][l];
                self.g[r][k] = v.clone();
                self.g[k][r] = v;
            }
        }
        self.g[k][k] = kk;
        let dl = self.dk(l).clone();
        self.lam[k][l] -= &q * &dl;
        for i in 0..l {
            let t = &q * &self.lam[l][i];
            self.lam[k][i] -= t;
        }
    }

    fn swap(&mut self, k: usize, kmax: usize) {
        let n = self.n;
        for r in 0..n {
            self.h[r].swap(k, k - 1);
        }
        self.g.swap(k, k - 1);
        for r in 0..n {
            self.g[r].swap(k, k - 1);
        }
        for j in 0..k - 1 {
            let t = self.lam[k][j].clone();
            self.lam[k][j] = self.lam[k - 1][j].clone();
            self.lam[k - 1][j] = t;
        }
        let lam = self.lam[k][k - 1].clone();
        let (dk, dk1, dk2) = (
            self.d[k + 1].clone(),
            self.d[k].clone(),
            self.d[k - 1].clone(),
        );
        let b = (&dk2 * &dk + &lam * &lam) / &dk1;
        for i in k + 1..=kmax {
            let t = self.lam[i][k].clone();
            self.lam[i][k] = (&dk * &self.lam[i][k - 1] - &lam * &t) / &dk1;
            self.lam[i][k - 1] = (&b * &t + &lam * &self.lam[i][k]) / &dk;
        }
        self.d[k] = b;
    }

    fn lovasz_fails(&self, k: usize) -> bool {
        // 100 d_k d_{k-2} < 99 d_{k-1}^2 - 100 λ^2, in 1-based minors
        let lhs = self.d[k + 1].clone() * &self.d[k - 1] * 100u32;
        let rhs =
            &self.d[k] * &self.d[k] * 99u32 - &self.lam[k][k - 1] * &self.lam[k][k - 1] * 100u32;
        lhs < rhs
    }
}

/// Reduces the basis whose Gram is `g` (positive definite).
pub fn reduce(g: &[Vec<BigInt>], mode: Reduction) -> Reduced {
    let n = g.len();
    let identity: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::from(1)
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    if n == 0 || mode == Reduction::None {
        return Reduced {
            gram: g.to_vec(),
            transform: identity,
        };
    }
    let mut s = State {
        n,
        g: g.to_vec(),
        h: identity,
        d: vec![BigInt::from(1); n + 1],
        lam: vec![vec![BigInt::zero(); n]; n],
    };
    match mode {
        Reduction::SizeReduce => {
            for k in 0..n {
                s.init_row(k);
            }
            for k in 1..n {
                for l in (0..k).rev() {
                    s.red(k, l);
                }
            }
        }
        _ => {
            s.init_row(0);
            let mut kmax = 0;
            let mut k = 1;
            while k < n {
                if k > kmax {
                    kmax = k;
                    s.init_row(k);
                }
                s.red(k, k - 1);
                if s.lovasz_fails(k) {
                    s.swap(k, kmax);
                    k = (k - 1).max(1);
                } else {
                    for l in (0..k - 1).rev() {
                        s.red(k, l);
                    }
                    k += 1;
                }
            }
        }
    }
    Reduced {
        gram: s.g,
        transform: s.h,
    }
}

/// `Tᵀ G T`, exactly.
pub fn congruent(g: &[Vec<BigInt>], t: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = g.len();
    let m = t.first().map_or(0, |r| r.len());
    let gt: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..n).fold(BigInt::zero(), |acc, k| acc + &g[i][k] * &t[k][j]))
                .collect()
        })
        .collect();
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| (0..n).fold(BigInt::zero(), |acc, k| acc + &t[k][i] * &gt[k][j]))
                .collect()
        })
        .collect()
}
