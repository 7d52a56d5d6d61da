//! Exact rational linear algebra.
//!
//! Every positive-semidefiniteness decision in the toolkit is made here, by a
//! symmetric-pivoted `L D L^T` factorization carried out over arbitrary-precision
//! rationals. A PSD verdict ships with the factorization (which recomposes to
//! the input exactly); a non-PSD verdict ships with a rational vector `w` such
//! that `w^T M w < 0`.
//!
//! Pivoting rule: at each step the remaining diagonal entry of largest absolute
//! value is chosen, ties broken by the lowest original index. This makes the
//! certificates deterministic.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

pub type Rational = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// `n / d` as a reduced rational. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExactLinError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric: entry ({row},{col}) differs from ({col},{row})")]
    NotSymmetric { row: usize, col: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular (kernel vector {})", fmt_vec(.kernel))]
    Singular { kernel: Vec<Rational> },
}

fn fmt_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Dense matrix over arbitrary-precision rationals, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RationalMatrix { rows, cols, data }
    }

    /// Builds a matrix from row-major integer entries.
    ///
    /// Panics if `entries.len() != rows * cols`.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(
            entries.len(),
            rows * cols,
            "entry count does not match shape"
        );
        RationalMatrix {
            rows,
            cols,
            data: entries.iter().map(|&x| rat(x)).collect(),
        }
    }

    /// Builds a matrix from integer rows. Panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let flat: Vec<i64> = rows.iter().flatten().copied().collect();
        Self::from_i64(rows.len(), cols, &flat)
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// First pair `(i, j)` with `i < j` and `M[i][j] != M[j][i]`, scanning row-major.
    pub fn first_asymmetry(&self) -> Option<(usize, usize)> {
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && self.first_asymmetry().is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn try_mul(&self, other: &RationalMatrix) -> Result<RationalMatrix, ExactLinError> {
        if self.cols != other.rows {
            return Err(ExactLinError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RationalMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix product; panics on incompatible shapes.
    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        self.try_mul(other).expect("incompatible shapes")
    }

    fn zip_with(
        &self,
        other: &RationalMatrix,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> RationalMatrix {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "shape mismatch"
        );
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &RationalMatrix) -> RationalMatrix {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &RationalMatrix) -> RationalMatrix {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &Rational) -> RationalMatrix {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    /// `M + s I`. Panics if not square.
    pub fn shift_diagonal(&self, s: &Rational) -> RationalMatrix {
        assert!(self.is_square());
        let mut out = self.clone();
        for i in 0..self.rows {
            let v = out.get(i, i) + s;
            out.set(i, i, v);
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// `v^T M v`.
    pub fn quadratic_form(&self, v: &[Rational]) -> Rational {
        let mv = self.mul_vec(v);
        v.iter()
            .zip(&mv)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn principal_submatrix(&self, idx: &[usize]) -> RationalMatrix {
        Self::from_fn(idx.len(), idx.len(), |i, j| {
            self.get(idx[i], idx[j]).clone()
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> RationalMatrix {
        Self::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    /// Block-diagonal matrix built from the given blocks.
    pub fn direct_sum(blocks: &[RationalMatrix]) -> RationalMatrix {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = RationalMatrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Assembles `[[a, b], [c, d]]`.
    pub fn from_blocks(
        a: &RationalMatrix,
        b: &RationalMatrix,
        c: &RationalMatrix,
        d: &RationalMatrix,
    ) -> RationalMatrix {
        assert!(
            a.rows == b.rows && c.rows == d.rows && a.cols == c.cols && b.cols == d.cols,
            "block shapes"
        );
        let rows = a.rows + c.rows;
        let cols = a.cols + b.cols;
        Self::from_fn(rows, cols, |i, j| match (i < a.rows, j < a.cols) {
            (true, true) => a.get(i, j).clone(),
            (true, false) => b.get(i, j - a.cols).clone(),
            (false, true) => c.get(i - a.rows, j).clone(),
            (false, false) => d.get(i - a.rows, j - a.cols).clone(),
        })
    }

    /// Entries as `i64` if every entry is an integer in range.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.data
            .iter()
            .map(|x| {
                if x.is_integer() {
                    x.to_integer().to_i64()
                } else {
                    None
                }
            })
            .collect()
    }

    /// Least common multiple of all entry denominators.
    pub fn common_denominator(&self) -> BigInt {
        self.data
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    pub fn determinant(&self) -> Result<Rational, ExactLinError> {
        if !self.is_square() {
            return Err(ExactLinError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut det = Rational::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != k {
                a.swap(p, k);
                det = -det;
            }
            let piv = a[k][k].clone();
            det *= &piv;
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = &a[i][k] / &piv;
                for j in k..n {
                    let t = &f * &a[k][j];
                    a[i][j] -= t;
                }
            }
        }
        Ok(det)
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        self.get(i, j)
    }
}

/// Serialized as a list of rows of decimal fraction strings.
impl Serialize for RationalMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let parts: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Factorization `P M P^T = L D L^T` proving `M` positive semidefinite.
///
/// `perm[k]` is the original index placed at pivot position `k`, `lower` is
/// unit lower triangular in pivot order, `diag` is non-negative.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LdlCertificate {
    pub perm: Vec<usize>,
    pub lower: RationalMatrix,
    #[serde(serialize_with = "serialize_rationals")]
    pub diag: Vec<Rational>,
}

impl LdlCertificate {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }

    /// Rebuilds `M` in the original index order.
    pub fn recompose(&self) -> RationalMatrix {
        let n = self.perm.len();
        let mut pivoted = RationalMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let mut s = Rational::zero();
                for k in 0..=j {
                    let d = &self.diag[k];
                    if d.is_zero() {
                        continue;
                    }
                    let (a, b) = (self.lower.get(i, k), self.lower.get(j, k));
                    if !a.is_zero() && !b.is_zero() {
                        s += a * d * b;
                    }
                }
                pivoted.set(i, j, s.clone());
                pivoted.set(j, i, s);
            }
        }
        let mut out = RationalMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(self.perm[i], self.perm[j], pivoted.get(i, j).clone());
            }
        }
        out
    }

    /// Structural checks plus exact recomposition against `m`.
    pub fn validates(&self, m: &RationalMatrix) -> bool {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        for &p in &self.perm {
            if p >= n || seen[p] {
                return false;
            }
            seen[p] = true;
        }
        let unit_lower = (0..n).all(|i| {
            (0..n).all(|j| match j.cmp(&i) {
                std::cmp::Ordering::Equal => self.lower.get(i, j).is_one(),
                std::cmp::Ordering::Greater => self.lower.get(i, j).is_zero(),
                std::cmp::Ordering::Less => true,
            })
        });
        unit_lower && self.diag.iter().all(|d| !d.is_negative()) && &self.recompose() == m
    }
}

/// A rational vector `w` with `w^T M w = value < 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NegativeWitness {
    #[serde(serialize_with = "serialize_rationals")]
    pub vector: Vec<Rational>,
    #[serde(serialize_with = "serialize_rational")]
    pub value: Rational,
}

impl NegativeWitness {
    pub fn validates(&self, m: &RationalMatrix) -> bool {
        self.value.is_negative() && m.quadratic_form(&self.vector) == self.value
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PsdVerdict {
    Psd,
    NotPsd,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PsdResult {
    Psd(LdlCertificate),
    NotPsd(NegativeWitness),
}

impl PsdResult {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdResult::Psd(_))
    }

    pub fn verdict(&self) -> PsdVerdict {
        if self.is_psd() {
            PsdVerdict::Psd
        } else {
            PsdVerdict::NotPsd
        }
    }

    pub fn certificate(&self) -> Option<&LdlCertificate> {
        match self {
            PsdResult::Psd(c) => Some(c),
            PsdResult::NotPsd(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&NegativeWitness> {
        match self {
            PsdResult::NotPsd(w) => Some(w),
            PsdResult::Psd(_) => None,
        }
    }

    pub fn validates(&self, m: &RationalMatrix) -> bool {
        match self {
            PsdResult::Psd(c) => c.validates(m),
            PsdResult::NotPsd(w) => w.validates(m),
        }
    }
}

/// Decides whether the symmetric matrix `m` is positive semidefinite.
pub fn psd_check(m: &RationalMatrix) -> Result<PsdResult, ExactLinError> {
    if !m.is_square() {
        return Err(ExactLinError::NotSquare {
            rows: m.n_rows(),
            cols: m.n_cols(),
        });
    }
    if let Some((row, col)) = m.first_asymmetry() {
        return Err(ExactLinError::NotSymmetric { row, col });
    }
    let n = m.n_rows();
    let mut a: Vec<Vec<Rational>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut lower: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut diag: Vec<Rational> = Vec::with_capacity(n);

    for k in 0..n {
        // most negative remaining diagonal entry, if any
        let mut neg: Option<usize> = None;
        for i in k..n {
            if a[i][i].is_negative() {
                neg = match neg {
                    Some(j) if a[j][j] < a[i][i] || (a[j][j] == a[i][i] && perm[j] < perm[i]) => {
                        Some(j)
                    }
                    _ => Some(i),
                };
            }
        }
        if let Some(i) = neg {
            let mut y = vec![Rational::zero(); n - k];
            y[i - k] = Rational::one();
            return Ok(PsdResult::NotPsd(lift_witness(m, &lower, &perm, k, y)));
        }

        let mut p = k;
        for i in k + 1..n {
            if a[i][i] > a[p][p] || (a[i][i] == a[p][p] && perm[i] < perm[p]) {
                p = i;
            }
        }
        if a[p][p].is_zero() {
            // zero diagonal: PSD forces the whole remaining block to vanish
            for i in k..n {
                for j in i + 1..n {
                    if !a[i][j].is_zero() {
                        let mut y = vec![Rational::zero(); n - k];
                        y[i - k] = Rational::one();
                        y[j - k] = if a[i][j].is_positive() {
                            -Rational::one()
                        } else {
                            Rational::one()
                        };
                        return Ok(PsdResult::NotPsd(lift_witness(m, &lower, &perm, k, y)));
                    }
                }
            }
            diag.extend((k..n).map(|_| Rational::zero()));
            break;
        }

        if p != k {
            a.swap(p, k);
            for row in a.iter_mut() {
                row.swap(p, k);
            }
            perm.swap(p, k);
            for j in 0..k {
                let t = std::mem::take(&mut lower[k][j]);
                lower[k][j] = std::mem::replace(&mut lower[p][j], t);
            }
        }

        let d = a[k][k].clone();
        for i in k + 1..n {
            if !a[i][k].is_zero() {
                lower[i][k] = &a[i][k] / &d;
            }
        }
        for i in k + 1..n {
            if lower[i][k].is_zero() {
                continue;
            }
            let l = lower[i][k].clone();
            for j in k + 1..=i {
                if a[k][j].is_zero() {
                    continue;
                }
                let t = &l * &a[k][j];
                a[i][j] -= t;
                if i != j {
                    a[j][i] = a[i][j].clone();
                }
            }
        }
        diag.push(d);
    }

    let lower = RationalMatrix::from_fn(n, n, |i, j| lower[i][j].clone());
    Ok(PsdResult::Psd(LdlCertificate { perm, lower, diag }))
}

/// Extends a negative direction `y` of the Schur complement at step `k` to a
/// vector in the original coordinates with the same quadratic-form value.
fn lift_witness(
    m: &RationalMatrix,
    lower: &[Vec<Rational>],
    perm: &[usize],
    k: usize,
    y: Vec<Rational>,
) -> NegativeWitness {
    let n = perm.len();
    let mut x = vec![Rational::zero(); n];
    for (off, v) in y.into_iter().enumerate() {
        x[k + off] = v;
    }
    // solve L11^T u = -L21^T y by back substitution
    for i in (0..k).rev() {
        let mut s = Rational::zero();
        for j in i + 1..n {
            if !lower[j][i].is_zero() && !x[j].is_zero() {
                s += &lower[j][i] * &x[j];
            }
        }
        x[i] = -s;
    }
    let mut vector = vec![Rational::zero(); n];
    for (pos, v) in x.into_iter().enumerate() {
        vector[perm[pos]] = v;
    }
    let value = m.quadratic_form(&vector);
    debug_assert!(value.is_negative(), "lifted witness must be negative");
    NegativeWitness { vector, value }
}

/// Exact PSD verdict for an integer symmetric matrix, without certificate.
///
/// Uses the same pivot sequence as [`psd_check`] but in fraction-free form:
/// the working block is the Schur complement scaled by the previous pivot
/// (a positive integer), so every sign test agrees with the rational route.
/// Runs in `i128` and falls back to `BigInt` on overflow.
pub fn is_psd_integer(n: usize, entries: &[i64]) -> bool {
    assert_eq!(entries.len(), n * n);
    let small: Vec<i128> = entries.iter().map(|&x| x as i128).collect();
    match fraction_free_psd(n, small) {
        Some(v) => v,
        None => {
            let big: Vec<BigInt> = entries.iter().map(|&x| BigInt::from(x)).collect();
            fraction_free_psd(n, big).expect("BigInt arithmetic cannot overflow")
        }
    }
}

fn fraction_free_psd<T>(n: usize, mut a: Vec<T>) -> Option<bool>
where
    T: Clone + Integer + Signed + CheckedMul + CheckedSub,
{
    let mut idx: Vec<usize> = (0..n).collect();
    let mut prev = T::one();
    for k in 0..n {
        let at = |a: &Vec<T>, i: usize, j: usize| a[i * n + j].clone();
        if (k..n).any(|i| at(&a, i, i).is_negative()) {
            return Some(false);
        }
        let mut p = k;
        for i in k + 1..n {
            let (di, dp) = (at(&a, i, i), at(&a, p, p));
            if di > dp || (di == dp && idx[i] < idx[p]) {
                p = i;
            }
        }
        if at(&a, p, p).is_zero() {
            let clean = (k..n).all(|i| (i + 1..n).all(|j| at(&a, i, j).is_zero()));
            return Some(clean);
        }
        if p != k {
            for j in 0..n {
                a.swap(p * n + j, k * n + j);
            }
            for i in 0..n {
                a.swap(i * n + p, i * n + k);
            }
            idx.swap(p, k);
        }
        let piv = at(&a, k, k);
        for i in k + 1..n {
            for j in k + 1..=i {
                let lhs = piv.checked_mul(&at(&a, i, j))?;
                let rhs = at(&a, i, k).checked_mul(&at(&a, k, j))?;
                let v = lhs.checked_sub(&rhs)? / prev.clone();
                a[i * n + j] = v.clone();
                a[j * n + i] = v;
            }
        }
        prev = piv;
    }
    Some(true)
}

/// Kernel of a matrix: `rank + nullity = n_cols`.
#[derive(Clone, Debug, PartialEq)]
pub struct Kernel {
    pub rank: usize,
    pub nullity: usize,
    pub basis: Vec<Vec<Rational>>,
    /// Pivot columns of the row echelon form; they index a maximal independent set of columns.
    pub pivots: Vec<usize>,
}

/// Computes `dim ker(M)` together with a kernel basis (one vector per free column).
pub fn nullity(m: &RationalMatrix) -> Kernel {
    let (rows, cols) = (m.n_rows(), m.n_cols());
    let mut a: Vec<Vec<Rational>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for j in c..cols {
            if !a[r][j].is_zero() {
                a[r][j] *= &inv;
            }
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in c..cols {
                if !pivot_row[j].is_zero() {
                    row[j] -= &f * &pivot_row[j];
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let is_pivot = {
        let mut v = vec![false; cols];
        for &c in &pivots {
            v[c] = true;
        }
        v
    };
    let basis: Vec<Vec<Rational>> = (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect();
    Kernel {
        rank: pivots.len(),
        nullity: cols - pivots.len(),
        basis,
        pivots,
    }
}

/// Exact inverse by Gauss-Jordan elimination.
pub fn rational_inverse(m: &RationalMatrix) -> Result<RationalMatrix, ExactLinError> {
    if !m.is_square() {
        return Err(ExactLinError::NotSquare {
            rows: m.n_rows(),
            cols: m.n_cols(),
        });
    }
    let n = m.n_rows();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            row
        })
        .collect();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            let kernel = nullity(m)
                .basis
                .into_iter()
                .next()
                .expect("singular matrix has a kernel");
            return Err(ExactLinError::Singular { kernel });
        };
        a.swap(p, c);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = a[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == c || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in 0..2 * n {
                if !pivot_row[j].is_zero() {
                    row[j] -= &f * &pivot_row[j];
                }
            }
        }
    }
    Ok(RationalMatrix::from_fn(n, n, |i, j| a[i][n + j].clone()))
}

pub(crate) fn serialize_rational<S: serde::Serializer>(
    x: &Rational,
    s: S,
) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub(crate) fn serialize_rationals<S: serde::Serializer>(
    v: &[Rational],
    s: S,
) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}
