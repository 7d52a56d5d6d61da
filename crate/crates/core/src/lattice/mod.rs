//! Lattices presented by an integral Gram matrix of generators.
//!
//! A line system with Seidel matrix `S` gives generators `f_1, …, f_n` with
//! Gram `5I + S`. Nothing ambient is ever built: a basis is extracted from the
//! Gram alone, every generator gets integer coordinates in it, and all
//! further work (enumeration, duals, isometries) happens on the `r × r` basis Gram.

mod enumerate;
mod hnf;
mod isometry;
mod maximality;
mod reduce;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactlin::{self, rat, NegativeWitness, PsdResult, Rational, RationalMatrix};
use crate::seidel::SeidelMatrix;

pub use enumerate::{
    enumerate_gram, fraction_free_ldl, visit_gram, BudgetExceeded, FractionFreeLdl, ShortVector,
    ShortVectorList,
};
pub use hnf::{column_hnf, solve_lower_integral};
pub use isometry::{
    isometry, InvariantMismatch, IsometryCertificate, IsometryOptions, IsometryOutcome,
};
pub use maximality::{strong_maximality_check, Maximality, MaximalityReport, MaximalityWitness};
pub use reduce::{congruent, reduce, Reduced, Reduction};

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("generator Gram is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("expected {expected} entries, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("generator Gram is not positive semidefinite")]
    NotPsd(NegativeWitness),
    #[error("enumeration budget exhausted after {nodes} nodes")]
    Budget { nodes: u64 },
    #[error("a reduced coordinate does not fit in 64 bits")]
    TooLarge,
    #[error("line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
}

impl From<BudgetExceeded> for LatticeError {
    fn from(b: BudgetExceeded) -> Self {
        LatticeError::Budget { nodes: b.nodes }
    }
}

/// Choices made while extracting a basis.
#[derive(Clone, Debug, Default)]
pub struct ExtractOptions {
    /// Generators are tried in this order when picking an independent set.
    pub generator_order: Option<Vec<usize>>,
    pub reduction: Reduction,
}

#[derive(Clone, Debug, Serialize)]
pub struct GramLattice {
    n: usize,
    generator_gram: Vec<i64>,
    rank: usize,
    /// Generators whose span was saturated to obtain the basis.
    independent: Vec<usize>,
    basis_gram: Vec<Vec<i64>>,
    /// `gen_coords[g]` expresses generator `g` in the basis.
    gen_coords: Vec<Vec<i64>>,
    reduction: Reduction,
}

fn big_matrix(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn small_matrix(m: &[Vec<BigInt>]) -> Result<Vec<Vec<i64>>, LatticeError> {
    m.iter()
        .map(|r| {
            r.iter()
                .map(|x| x.to_i64().ok_or(LatticeError::TooLarge))
                .collect()
        })
        .collect()
}

impl GramLattice {
    /// Lattice spanned by `n` generators with the given (row-major) Gram,
    /// with a basis extracted under default options.
    pub fn from_generator_gram(n: usize, entries: Vec<i64>) -> Result<Self, LatticeError> {
        Self::with_options(n, entries, &ExtractOptions::default())
    }

    pub fn with_options(
        n: usize,
        entries: Vec<i64>,
        opts: &ExtractOptions,
    ) -> Result<Self, LatticeError> {
        if entries.len() != n * n {
            return Err(LatticeError::DimensionMismatch {
                expected: n * n,
                got: entries.len(),
            });
        }
        for i in 0..n {
            for j in i + 1..n {
                if entries[i * n + j] != entries[j * n + i] {
                    return Err(LatticeError::NotSymmetric(i, j));
                }
            }
        }
        let gram = RationalMatrix::from_i64(n, n, &entries);
        if let PsdResult::NotPsd(w) = exactlin::psd_check(&gram).expect("square and symmetric") {
            return Err(LatticeError::NotPsd(w));
        }
        extract(n, entries, opts)
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generator_gram(&self, i: usize, j: usize) -> i64 {
        self.generator_gram[i * self.n + j]
    }

    pub fn basis_gram(&self) -> &[Vec<i64>] {
        &self.basis_gram
    }

    pub fn gen_coords(&self, g: usize) -> &[i64] {
        &self.gen_coords[g]
    }

    pub fn independent_generators(&self) -> &[usize] {
        &self.independent
    }

    pub fn reduction(&self) -> Reduction {
        self.reduction
    }

    /// Re-extracts the basis with different choices; the lattice is unchanged.
    pub fn basis_extract(&self, opts: &ExtractOptions) -> Result<Self, LatticeError> {
        extract(self.n, self.generator_gram.clone(), opts)
    }

    /// `xᵀ G y` for basis coordinates.
    pub fn inner(&self, x: &[i64], y: &[i64]) -> i128 {
        let r = self.rank;
        let mut s = 0i128;
        for i in 0..r {
            if x[i] == 0 {
                continue;
            }
            let row: i128 = (0..r)
                .map(|j| self.basis_gram[i][j] as i128 * y[j] as i128)
                .sum();
            s += x[i] as i128 * row;
        }
        s
    }

    /// Basis coordinates of `Σ c_g f_g`.
    pub fn combine(&self, coeffs: &[(usize, i64)]) -> Vec<i64> {
        let mut v = vec![0i64; self.rank];
        for &(g, c) in coeffs {
            for (vi, a) in v.iter_mut().zip(&self.gen_coords[g]) {
                *vi += c * a;
            }
        }
        v
    }

    /// Norm of `Σ c_g f_g` read straight off the generator Gram.
    pub fn generator_combination_norm(&self, coeffs: &[(usize, i64)]) -> i64 {
        coeffs
            .iter()
            .map(|&(a, ca)| {
                coeffs
                    .iter()
                    .map(|&(b, cb)| ca * cb * self.generator_gram(a, b))
                    .sum::<i64>()
            })
            .sum()
    }

    /// First generator pair whose inner product differs when computed through coordinates.
    pub fn first_inconsistency(&self) -> Option<(usize, usize)> {
        let gc: Vec<Vec<i128>> = self
            .gen_coords
            .iter()
            .map(|c| {
                (0..self.rank)
                    .map(|i| {
                        (0..self.rank)
                            .map(|j| self.basis_gram[i][j] as i128 * c[j] as i128)
                            .sum()
                    })
                    .collect()
            })
            .collect();
        for a in 0..self.n {
            for b in a..self.n {
                let v: i128 = self.gen_coords[a]
                    .iter()
                    .zip(&gc[b])
                    .map(|(&x, y)| x as i128 * y)
                    .sum();
                if v != self.generator_gram(a, b) as i128 {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn determinant(&self) -> BigInt {
        let ff = fraction_free_ldl(&big_matrix(&self.basis_gram))
            .expect("basis Gram is positive definite");
        ff.minors[self.rank].clone()
    }

    pub fn basis_gram_rational(&self) -> RationalMatrix {
        RationalMatrix::from_fn(self.rank, self.rank, |i, j| rat(self.basis_gram[i][j]))
    }

    /// All nonzero vectors of norm at most `bound`, one per `±` pair.
    pub fn short_vectors(
        &self,
        bound: &Rational,
        node_budget: Option<u64>,
    ) -> Result<ShortVectorList, LatticeError> {
        Ok(enumerate_gram(
            &big_matrix(&self.basis_gram),
            bound,
            &BigInt::from(1),
            node_budget,
            true,
        )?)
    }

    /// Least positive norm, found by enumerating at bounds `1, 2, 3, …`.
    pub fn min_norm(&self, node_budget: Option<u64>) -> Result<MinNorm, LatticeError> {
        let mut nodes = 0;
        for b in 1.. {
            let list = self.short_vectors(&rat(b), node_budget)?;
            nodes += list.nodes;
            if !list.vectors.is_empty() {
                return Ok(MinNorm {
                    norm: b,
                    pairs: list.vectors.len(),
                    nodes,
                    bound_completed: b,
                });
            }
        }
        unreachable!("a lattice of positive rank has vectors of some norm")
    }

    /// Gram of the dual basis, `G⁻¹`.
    pub fn dual_basis_gram(&self) -> RationalMatrix {
        exactlin::rational_inverse(&self.basis_gram_rational())
            .expect("basis Gram is positive definite")
    }
}

/// Result of [`GramLattice::min_norm`]: the enumeration at `bound_completed` ran to the end.
#[derive(Clone, Debug, Serialize)]
pub struct MinNorm {
    pub norm: i64,
    /// Vectors of minimal norm, one per `±` pair.
    pub pairs: usize,
    pub nodes: u64,
    pub bound_completed: i64,
}

fn extract(
    n: usize,
    entries: Vec<i64>,
    opts: &ExtractOptions,
) -> Result<GramLattice, LatticeError> {
    let gram = RationalMatrix::from_i64(n, n, &entries);
    let order: Vec<usize> = opts
        .generator_order
        .clone()
        .unwrap_or_else(|| (0..n).collect());
    assert_eq!(
        order.len(),
        n,
        "generator order must list every generator once"
    );
    let permuted = gram.submatrix(&order, &order);
    let kernel = exactlin::nullity(&permuted);
    let mut independent: Vec<usize> = kernel.pivots.iter().map(|&p| order[p]).collect();
    independent.sort_unstable();
    let r = independent.len();
    if r == 0 {
        return Ok(GramLattice {
            n,
            generator_gram: entries,
            rank: 0,
            independent,
            basis_gram: Vec::new(),
            gen_coords: vec![Vec::new(); n],
            reduction: opts.reduction,
        });
    }

    // rational coordinates of every generator in the independent ones
    let all: Vec<usize> = (0..n).collect();
    let gp = gram.submatrix(&independent, &independent);
    let inv =
        exactlin::rational_inverse(&gp).expect("independent generators have a nonsingular Gram");
    let coords = inv.mul(&gram.submatrix(&independent, &all));
    let den = coords.common_denominator();
    let scaled: Vec<Vec<BigInt>> = (0..r)
        .map(|i| {
            (0..n)
                .map(|g| (coords.get(i, g) * Rational::from_integer(den.clone())).to_integer())
                .collect()
        })
        .collect();

    // saturate: the columns span the lattice, scaled by `den`
    let h = column_hnf(&scaled).expect("coordinates have full row rank");
    let hq = RationalMatrix::from_fn(r, r, |i, j| Rational::new(h[i][j].clone(), den.clone()));
    let bg = hq.transpose().mul(&gp).mul(&hq);
    let basis_gram: Vec<Vec<BigInt>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    let v = bg.get(i, j);
                    assert!(
                        v.is_integer(),
                        "inner products of lattice vectors are integers"
                    );
                    v.to_integer()
                })
                .collect()
        })
        .collect();
    let gen_coords: Vec<Vec<BigInt>> = (0..n)
        .map(|g| {
            let col: Vec<BigInt> = (0..r).map(|i| scaled[i][g].clone()).collect();
            solve_lower_integral(&h, &col).expect("generators lie in the lattice they span")
        })
        .collect();

    let red = reduce(&basis_gram, opts.reduction);
    let t_inv = exactlin::rational_inverse(&RationalMatrix::from_fn(r, r, |i, j| {
        Rational::from_integer(red.transform[i][j].clone())
    }))
    .expect("reduction is unimodular");
    let gen_coords: Vec<Vec<BigInt>> = gen_coords
        .iter()
        .map(|c| {
            (0..r)
                .map(|i| {
                    let v = (0..r).fold(Rational::zero(), |acc, j| {
                        acc + t_inv.get(i, j) * Rational::from_integer(c[j].clone())
                    });
                    assert!(
                        v.is_integer(),
                        "unimodular change of basis keeps coordinates integral"
                    );
                    v.to_integer()
                })
                .collect()
        })
        .collect();

    let lattice = GramLattice {
        n,
        generator_gram: entries,
        rank: r,
        independent,
        basis_gram: small_matrix(&red.gram)?,
        gen_coords: small_matrix(&gen_coords)?,
        reduction: opts.reduction,
    };
    assert_eq!(
        lattice.first_inconsistency(),
        None,
        "coordinates must reproduce the generator Gram"
    );
    Ok(lattice)
}

/// The lattice of a line system: generators with Gram `5I + S`.
pub fn lattice_from_seidel(s: &SeidelMatrix) -> Result<GramLattice, LatticeError> {
    GramLattice::from_generator_gram(s.order(), s.shifted(5))
}

/// Outcome of comparing minimum norms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Obstruction {
    /// The candidate sublattice has a vector shorter than anything in the ambient lattice.
    Obstructed {
        sub_min: i64,
        super_min: i64,
    },
    NoObstructionFound {
        sub_min: i64,
        super_min: i64,
    },
}

/// A sublattice of `sup` (up to isometry) cannot have smaller minimum norm than `sup`.
pub fn embedding_obstruction(
    sub: &GramLattice,
    sup: &GramLattice,
    node_budget: Option<u64>,
) -> Result<Obstruction, LatticeError> {
    let a = sub.min_norm(node_budget)?.norm;
    let b = sup.min_norm(node_budget)?.norm;
    Ok(if a < b {
        Obstruction::Obstructed {
            sub_min: a,
            super_min: b,
        }
    } else {
        Obstruction::NoObstructionFound {
            sub_min: a,
            super_min: b,
        }
    })
}

/// Integral Gram in the Seidel text layout: the order, then one row per line.
pub fn gram_to_text(n: usize, entries: &[i64]) -> String {
    let mut s = format!("{n}\n");
    for i in 0..n {
        let row: Vec<String> = entries[i * n..(i + 1) * n]
            .iter()
            .map(|v| v.to_string())
            .collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

pub fn parse_gram_text(text: &str) -> Result<(usize, Vec<i64>), LatticeError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (l0, first) = lines.next().ok_or(LatticeError::Parse {
        line: 1,
        col: 1,
        msg: "empty input".into(),
    })?;
    let n: usize = first.trim().parse().map_err(|_| LatticeError::Parse {
        line: l0 + 1,
        col: 1,
        msg: "expected the order".into(),
    })?;
    let mut entries = Vec::with_capacity(n * n);
    let mut rows = 0;
    for (ln, line) in lines {
        let vals: Vec<&str> = line.split_whitespace().collect();
        if vals.len() != n {
            return Err(LatticeError::Parse {
                line: ln + 1,
                col: 1,
                msg: format!("expected {n} entries, found {}", vals.len()),
            });
        }
        for (c, v) in vals.iter().enumerate() {
            entries.push(v.parse().map_err(|_| LatticeError::Parse {
                line: ln + 1,
                col: c + 1,
                msg: format!("not an integer: {v}"),
            })?);
        }
        rows += 1;
    }
    if rows != n {
        return Err(LatticeError::Parse {
            line: l0 + 1,
            col: 1,
            msg: format!("expected {n} rows, found {rows}"),
        });
    }
    Ok((n, entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seidel::Graph;

    #[test]
    fn k2() {
        let s = SeidelMatrix::from_graph(&Graph::complete(2));
        let l = lattice_from_seidel(&s).unwrap();
        assert_eq!(l.generator_gram(0, 1), -1);
        assert_eq!(l.rank(), 2);
        assert_eq!(l.determinant(), BigInt::from(24));
    }

    #[test]
    fn dependent_third_generator() {
        // g3 = g1 + g2 with |g1|² = 2, |g2|² = 3, (g1,g2) = 1
        let l = GramLattice::with_options(
            3,
            vec![2, 1, 3, 1, 3, 4, 3, 4, 7],
            &ExtractOptions {
                reduction: Reduction::None,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(l.rank(), 2);
        assert_eq!(l.independent_generators(), &[0, 1]);
        assert_eq!(l.gen_coords(0), &[1, 0]);
        assert_eq!(l.gen_coords(1), &[0, 1]);
        assert_eq!(l.gen_coords(2), &[1, 1]);
    }

    #[test]
    fn basis_generators_get_identity_coordinates() {
        let l = GramLattice::with_options(
            2,
            vec![5, -1, -1, 5],
            &ExtractOptions {
                reduction: Reduction::None,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(l.gen_coords(0), &[1, 0]);
        assert_eq!(l.gen_coords(1), &[0, 1]);
    }

    #[test]
    fn saturation_adds_half_vectors() {
        // g1, g2 orthogonal of norm 4 and g3 = (g1 + g2)/2 of norm 2
        let l = GramLattice::from_generator_gram(3, vec![4, 0, 2, 0, 4, 2, 2, 2, 2]).unwrap();
        assert_eq!(l.rank(), 2);
        assert_eq!(l.determinant(), BigInt::from(4));
    }

    #[test]
    fn not_psd() {
        assert!(matches!(
            GramLattice::from_generator_gram(2, vec![1, 2, 2, 1]),
            Err(LatticeError::NotPsd(_))
        ));
    }

    #[test]
    fn dual_of_rank_one() {
        let l = GramLattice::from_generator_gram(1, vec![5]).unwrap();
        assert_eq!(
            l.dual_basis_gram(),
            RationalMatrix::from_fn(1, 1, |_, _| exactlin::ratio(1, 5))
        );
        assert!(l.short_vectors(&rat(4), None).unwrap().vectors.is_empty());
        assert_eq!(l.min_norm(None).unwrap().norm, 5);
    }

    #[test]
    fn text_round_trip() {
        let t = gram_to_text(2, &[5, -1, -1, 5]);
        assert_eq!(parse_gram_text(&t).unwrap(), (2, vec![5, -1, -1, 5]));
        assert!(matches!(
            parse_gram_text("2\n1 x\n1 1\n"),
            Err(LatticeError::Parse {
                line: 2,
                col: 2,
                ..
            })
        ));
    }

    #[test]
    fn obstruction_against_itself() {
        let l = lattice_from_seidel(&SeidelMatrix::from_graph(&Graph::path(4))).unwrap();
        assert!(matches!(
            embedding_obstruction(&l, &l, None).unwrap(),
            Obstruction::NoObstructionFound { .. }
        ));
    }
}
