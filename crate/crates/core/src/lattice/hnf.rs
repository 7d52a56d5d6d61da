//! Column Hermite normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Column-style Hermite normal form of an `rows × cols` matrix of full row rank.
///
/// Returns the `rows × rows` lower triangular basis `H` of the lattice spanned
/// by the columns: positive diagonal, and `0 ≤ H[i][k] < H[i][i]` for `k < i`.
/// Returns `None` when the rows are linearly dependent.
pub fn column_hnf(m: &[Vec<BigInt>]) -> Option<Vec<Vec<BigInt>>> {
    let rows = m.len();
    if rows == 0 {
        return Some(Vec::new());
    }
    let cols = m[0].len();
    // column-major working copy
    let mut c: Vec<Vec<BigInt>> = (0..cols)
        .map(|j| (0..rows).map(|i| m[i][j].clone()).collect())
        .collect();
    for i in 0..rows {
        let p = (i..cols).find(|&j| !c[j][i].is_zero())?;
        c.swap(i, p);
        for j in i + 1..cols {
            if c[j][i].is_zero() {
                continue;
            }
            let (a, b) = (c[i][i].clone(), c[j][i].clone());
            let e = a.extended_gcd(&b);
            let (ag, bg) = (&a / &e.gcd, &b / &e.gcd);
            // [col_i, col_j] <- [x col_i + y col_j, -b/g col_i + a/g col_j], a unimodular step
            for r in i..rows {
                let (u, v) = (c[i][r].clone(), c[j][r].clone());
                c[i][r] = &e.x * &u + &e.y * &v;
                c[j][r] = &ag * &v - &bg * &u;
            }
        }
        if c[i][i].is_negative() {
            for r in i..rows {
                c[i][r] = -c[i][r].clone();
            }
        }
        for k in 0..i {
            let q = c[k][i].div_floor(&c[i][i]);
            if q.is_zero() {
                continue;
            }
            for r in i..rows {
                let d = &q * &c[i][r];
                c[k][r] -= d;
            }
        }
    }
    Some(
        (0..rows)
            .map(|i| (0..rows).map(|j| c[j][i].clone()).collect())
            .collect(),
    )
}

/// Solves `H x = b` for lower triangular `H`, if the solution is integral.
pub fn solve_lower_integral(h: &[Vec<BigInt>], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = h.len();
    let mut x: Vec<BigInt> = Vec::with_capacity(n);
    for i in 0..n {
        let mut s = b[i].clone();
        for (k, xk) in x.iter().enumerate() {
            s -= &h[i][k] * xk;
        }
        let (q, r) = s.div_rem(&h[i][i]);
        if !r.is_zero() {
            return None;
        }
        x.push(q);
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| big(x)).collect())
            .collect()
    }

    #[test]
    fn two_by_three() {
        // (2,0), (0,3), (1,1) generate all of Z^2
        let h = column_hnf(&mat(&[&[2, 0, 1], &[0, 3, 1]])).unwrap();
        assert_eq!(h, mat(&[&[1, 0], &[0, 1]]));
        let h = column_hnf(&mat(&[&[2, 4], &[0, 6]])).unwrap();
        assert_eq!(h, mat(&[&[2, 0], &[0, 6]]));
    }

    #[test]
    fn dependent_rows() {
        assert!(column_hnf(&mat(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn triangular_solve() {
        let h = mat(&[&[2, 0], &[1, 3]]);
        assert_eq!(
            solve_lower_integral(&h, &[big(4), big(5)]),
            Some(vec![big(2), big(1)])
        );
        assert_eq!(solve_lower_integral(&h, &[big(1), big(5)]), None);
    }
}
