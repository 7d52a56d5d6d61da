//! Block matrices `Q(Q11; a)` built from multisets of `2 × r` matrices, their
//! Schur reductions `Δ`, and exhaustive PSD searches over multisets.
//!
//! For `a: M → Z_{≥0}` with `m = Σ a(A)`, `Q21` stacks `a(A)` copies of each
//! `A`, `Q22 = (9I_2 - 3J_2)^{⊕m}`, and
//! `Δ = Q11 - Σ a(A) A^T (9I_2 - 3J_2)^{-1} A`, which is PSD exactly when `Q` is.

pub mod claims;
pub mod constants;
pub mod search;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::exactlin::{rat, ratio, RationalMatrix};

pub use claims::{
    verify_fixed_not_psd, verify_key_theorem, verify_m9_theorem, verify_sum_bound,
    verify_support_lemma, KeyTheoremReport,
};
pub use constants::{b_matrix, Variant};
pub use search::{search_max_multiplicity, SearchOptions, SearchOutcome, SearchStatus};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PsdCertError {
    #[error("multiset matrices have {got} columns but Q11 has order {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("Q11 is not symmetric at ({0},{1})")]
    NotSymmetric(usize, usize),
    #[error("matrices in one multiset must share a column count")]
    MixedWidths,
}

/// A `2 × r` integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TwoRowMatrix {
    entries: Vec<i64>,
}

impl TwoRowMatrix {
    pub fn new(top: &[i64], bottom: &[i64]) -> Self {
        assert_eq!(top.len(), bottom.len(), "rows must have equal length");
        TwoRowMatrix {
            entries: top.iter().chain(bottom).copied().collect(),
        }
    }

    pub fn cols(&self) -> usize {
        self.entries.len() / 2
    }

    pub fn row(&self, i: usize) -> &[i64] {
        let r = self.cols();
        &self.entries[i * r..(i + 1) * r]
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.cols() + j]
    }

    /// Row swap `A ↦ Ā`.
    pub fn bar(&self) -> Self {
        TwoRowMatrix::new(self.row(1), self.row(0))
    }

    /// Horizontal join `[self other]`.
    pub fn join(&self, other: &TwoRowMatrix) -> Self {
        let top: Vec<i64> = self.row(0).iter().chain(other.row(0)).copied().collect();
        let bottom: Vec<i64> = self.row(1).iter().chain(other.row(1)).copied().collect();
        TwoRowMatrix::new(&top, &bottom)
    }

    /// Columns `from..to`.
    pub fn columns(&self, from: usize, to: usize) -> Self {
        TwoRowMatrix::new(&self.row(0)[from..to], &self.row(1)[from..to])
    }

    pub fn to_rational(&self) -> RationalMatrix {
        RationalMatrix::from_i64(2, self.cols(), &self.entries)
    }

    /// `A^T [[6,3],[3,6]] A = 27 · A^T (9I_2 - 3J_2)^{-1} A`.
    pub fn reduced_form_27(&self) -> Vec<i64> {
        let r = self.cols();
        let mut out = vec![0i64; r * r];
        for i in 0..r {
            let (p0, p1) = (self.get(0, i), self.get(1, i));
            for j in 0..r {
                let (q0, q1) = (self.get(0, j), self.get(1, j));
                out[i * r + j] = 6 * p0 * q0 + 3 * p0 * q1 + 3 * p1 * q0 + 6 * p1 * q1;
            }
        }
        out
    }

    /// `A^T (9I_2 - 3J_2)^{-1} A` as a rational matrix.
    pub fn reduced_form(&self) -> RationalMatrix {
        let r = self.cols();
        let f = self.reduced_form_27();
        RationalMatrix::from_fn(r, r, |i, j| ratio(f[i * r + j], 27))
    }
}

impl fmt::Display for TwoRowMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |i| {
            self.row(i)
                .iter()
                .map(i64::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "[[{}],[{}]]", row(0), row(1))
    }
}

/// Finite set of `2 × r` matrices, grouped into orbits of the row swap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Universe {
    pub name: String,
    pub elements: Vec<TwoRowMatrix>,
    /// Orbits as sorted element indices, ordered by their first element.
    pub orbits: Vec<Vec<usize>>,
}

impl Universe {
    pub fn from_elements(name: &str, mut elements: Vec<TwoRowMatrix>) -> Self {
        elements.sort();
        elements.dedup();
        let mut orbit_of = vec![usize::MAX; elements.len()];
        let mut orbits = Vec::new();
        for i in 0..elements.len() {
            if orbit_of[i] != usize::MAX {
                continue;
            }
            let mut o = vec![i];
            if let Ok(j) = elements.binary_search(&elements[i].bar()) {
                if j != i {
                    o.push(j);
                }
            }
            for &k in &o {
                orbit_of[k] = orbits.len();
            }
            orbits.push(o);
        }
        Universe {
            name: name.to_string(),
            elements,
            orbits,
        }
    }

    /// `M_2(vals)`.
    pub fn m2(vals: &[i64]) -> Self {
        let mut els = Vec::new();
        for &a in vals {
            for &b in vals {
                for &c in vals {
                    for &d in vals {
                        els.push(TwoRowMatrix::new(&[a, b], &[c, d]));
                    }
                }
            }
        }
        let name = format!(
            "M2({{{}}})",
            vals.iter()
                .map(i64::to_string)
                .collect::<Vec<_>>()
                .join(",")
        );
        Universe::from_elements(&name, els)
    }

    /// `M_{2,2,2}(left, right)`: `[A_1 A_2]` with `A_1 ∈ M_2(left)`, `A_2 ∈ M_2(right)`.
    pub fn m222(left: &[i64], right: &[i64]) -> Self {
        let (l, r) = (Universe::m2(left), Universe::m2(right));
        Universe::joined(
            &format!("M222({},{})", &l.name[2..], &r.name[2..]),
            &l.elements,
            &r.elements,
        )
    }

    /// All joins `[A_1 A_2]` over the two lists.
    pub fn joined(name: &str, left: &[TwoRowMatrix], right: &[TwoRowMatrix]) -> Self {
        let els = left
            .iter()
            .flat_map(|a| right.iter().map(move |b| a.join(b)))
            .collect();
        Universe::from_elements(name, els)
    }

    pub fn cols(&self) -> usize {
        self.elements.first().map_or(0, TwoRowMatrix::cols)
    }

    pub fn index_of(&self, a: &TwoRowMatrix) -> Option<usize> {
        self.elements.binary_search(a).ok()
    }

    pub fn orbit_index(&self, element: usize) -> usize {
        self.orbits
            .iter()
            .position(|o| o.contains(&element))
            .expect("element belongs to an orbit")
    }
}

/// `a: M → Z_{≥0}`, stored sparsely in lexicographic order of the matrices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MatrixMultiset {
    #[serde(serialize_with = "serialize_counts")]
    counts: BTreeMap<TwoRowMatrix, u32>,
}

/// As a list of `{matrix, count}` pairs, since JSON keys must be strings.
fn serialize_counts<S: serde::Serializer>(
    counts: &BTreeMap<TwoRowMatrix, u32>,
    s: S,
) -> Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Entry<'a> {
        matrix: &'a TwoRowMatrix,
        count: u32,
    }
    s.collect_seq(
        counts
            .iter()
            .map(|(matrix, &count)| Entry { matrix, count }),
    )
}

impl MatrixMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_counts(items: impl IntoIterator<Item = (TwoRowMatrix, u32)>) -> Self {
        let mut m = Self::new();
        for (a, c) in items {
            m.add(a, c);
        }
        m
    }

    pub fn add(&mut self, a: TwoRowMatrix, copies: u32) {
        if copies > 0 {
            *self.counts.entry(a).or_default() += copies;
        }
    }

    pub fn count(&self, a: &TwoRowMatrix) -> u32 {
        self.counts.get(a).copied().unwrap_or(0)
    }

    /// `m`, the sum of the images.
    pub fn total(&self) -> usize {
        self.counts.values().map(|&c| c as usize).sum()
    }

    pub fn support(&self) -> impl Iterator<Item = &TwoRowMatrix> {
        self.counts.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TwoRowMatrix, u32)> {
        self.counts.iter().map(|(a, &c)| (a, c))
    }

    /// Applies the row swap to every matrix, keeping counts.
    pub fn bar(&self) -> Self {
        Self::from_counts(self.iter().map(|(a, c)| (a.bar(), c)))
    }

    fn width(&self) -> Result<Option<usize>, PsdCertError> {
        let mut w = None;
        for a in self.support() {
            match w {
                None => w = Some(a.cols()),
                Some(c) if c != a.cols() => return Err(PsdCertError::MixedWidths),
                _ => {}
            }
        }
        Ok(w)
    }
}

/// `Q(Q11; a)` with its blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct QAssembly {
    pub q11: RationalMatrix,
    pub q21: RationalMatrix,
    pub q22: RationalMatrix,
    pub q: RationalMatrix,
}

fn check_q11(q11: &RationalMatrix, a: &MatrixMultiset) -> Result<(), PsdCertError> {
    if let Some((i, j)) = q11.first_asymmetry() {
        return Err(PsdCertError::NotSymmetric(i, j));
    }
    match a.width()? {
        Some(w) if w != q11.n_rows() => Err(PsdCertError::DimensionMismatch {
            expected: q11.n_rows(),
            got: w,
        }),
        _ => Ok(()),
    }
}

/// `9I_2 - 3J_2`.
pub fn q22_block() -> RationalMatrix {
    RationalMatrix::from_rows(&[vec![6, -3], vec![-3, 6]])
}

pub fn assemble_q(q11: &RationalMatrix, a: &MatrixMultiset) -> Result<QAssembly, PsdCertError> {
    check_q11(q11, a)?;
    let r = q11.n_rows();
    let m = a.total();
    let mut rows: Vec<&[i64]> = Vec::with_capacity(2 * m);
    for (mat, c) in a.iter() {
        for _ in 0..c {
            rows.push(mat.row(0));
            rows.push(mat.row(1));
        }
    }
    let q21 = RationalMatrix::from_fn(2 * m, r, |i, j| rat(rows[i][j]));
    let q22 = RationalMatrix::direct_sum(&vec![q22_block(); m]);
    let q = RationalMatrix::from_blocks(q11, &q21.transpose(), &q21, &q22);
    Ok(QAssembly {
        q11: q11.clone(),
        q21,
        q22,
        q,
    })
}

/// `Δ = Q11 - Σ a(A) A^T (9I_2 - 3J_2)^{-1} A`.
pub fn delta(q11: &RationalMatrix, a: &MatrixMultiset) -> Result<RationalMatrix, PsdCertError> {
    check_q11(q11, a)?;
    let mut d = q11.clone();
    for (mat, c) in a.iter() {
        d = d.sub(&mat.reduced_form().scale(&rat(c as i64)));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational_inverse;

    fn m(top: [i64; 2], bottom: [i64; 2]) -> TwoRowMatrix {
        TwoRowMatrix::new(&top, &bottom)
    }

    #[test]
    fn worked_example() {
        let a = MatrixMultiset::from_counts([(m([-1, -1], [2, -1]), 1), (m([2, 2], [2, -1]), 2)]);
        let q11 = RationalMatrix::from_rows(&[vec![4, -1], vec![-1, 4]]);
        let q = assemble_q(&q11, &a).unwrap().q;
        let expected = RationalMatrix::from_rows(&[
            vec![4, -1, -1, 2, 2, 2, 2, 2],
            vec![-1, 4, -1, -1, 2, -1, 2, -1],
            vec![-1, -1, 6, -3, 0, 0, 0, 0],
            vec![2, -1, -3, 6, 0, 0, 0, 0],
            vec![2, 2, 0, 0, 6, -3, 0, 0],
            vec![2, -1, 0, 0, -3, 6, 0, 0],
            vec![2, 2, 0, 0, 0, 0, 6, -3],
            vec![2, -1, 0, 0, 0, 0, -3, 6],
        ]);
        assert_eq!(q, expected);
    }

    #[test]
    fn empty_multiset() {
        let q11 = q22_block();
        assert_eq!(assemble_q(&q11, &MatrixMultiset::new()).unwrap().q, q11);
        assert_eq!(delta(&q11, &MatrixMultiset::new()).unwrap(), q11);
    }

    #[test]
    fn single_copy() {
        let a = MatrixMultiset::from_counts([(m([2, -1], [-1, 2]), 1)]);
        let asm = assemble_q(&q22_block(), &a).unwrap();
        assert_eq!(asm.q.n_rows(), 4);
        assert_eq!(asm.q21, m([2, -1], [-1, 2]).to_rational());
        let d = delta(&q22_block(), &a).unwrap();
        assert_eq!(
            d,
            RationalMatrix::from_fn(2, 2, |i, j| if i == j {
                ratio(16, 3)
            } else {
                ratio(-8, 3)
            })
        );
    }

    #[test]
    fn reduced_form_matches_inverse() {
        let inv = rational_inverse(&q22_block()).unwrap();
        assert_eq!(
            inv,
            RationalMatrix::from_rows(&[vec![6, 3], vec![3, 6]]).scale(&ratio(1, 27))
        );
        let a = m([-3, 0], [2, -1]);
        assert_eq!(
            a.reduced_form(),
            a.to_rational().transpose().mul(&inv).mul(&a.to_rational())
        );
    }

    #[test]
    fn dimension_mismatch() {
        let a = MatrixMultiset::from_counts([(TwoRowMatrix::new(&[1, 2, 3], &[4, 5, 6]), 1)]);
        assert_eq!(
            delta(&q22_block(), &a),
            Err(PsdCertError::DimensionMismatch {
                expected: 2,
                got: 3
            })
        );
    }

    #[test]
    fn universe_orbits() {
        let u = Universe::m2(&[-1, 2]);
        assert_eq!(u.elements.len(), 16);
        assert_eq!(u.orbits.len(), 10);
        let w = Universe::m222(&[-3, 0], &[-1, 2]);
        assert_eq!(w.elements.len(), 256);
        assert_eq!(w.orbits.len(), 136);
        assert_eq!(w.cols(), 4);
    }
}
