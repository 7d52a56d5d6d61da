//! Named matrices of the matching-pillar argument.
//!
//! Rows and columns of `B(X, i)` are ordered `z_1, z_2, y_1, y_2`: two (5,1)
//! vertices, then an edge of another (5,2) pillar. Entries are the table
//! values `(15/2)(x̄, ȳ)` for unit line vectors.

use serde::Serialize;

use super::{TwoRowMatrix, Universe};
use crate::exactlin::RationalMatrix;

/// Which pair of (5,1) vertices is present.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Variant {
    /// Two non-adjacent vertices of `P_{b_1}`.
    I,
    /// One vertex each of `P_{b_1}` and `P_{b_2}`.
    II,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::I, Variant::II];

    pub fn label(self) -> &'static str {
        match self {
            Variant::I => "I",
            Variant::II => "II",
        }
    }
}

pub fn b11(x: Variant) -> [[i64; 2]; 2] {
    match x {
        Variant::I => [[4, -2], [-2, 4]],
        Variant::II => [[4, -1], [-1, 4]],
    }
}

pub const B22: [[i64; 2]; 2] = [[6, -3], [-3, 6]];

/// `B_21^{(1..=7)}`; rows indexed by `y`, columns by `z`.
pub const B21: [[[i64; 2]; 2]; 7] = [
    [[1, 1], [1, 1]],
    [[-2, 1], [1, 1]],
    [[-2, -2], [1, 1]],
    [[-2, 1], [-2, 1]],
    [[-2, 1], [1, -2]],
    [[-2, -2], [-2, 1]],
    [[-2, -2], [-2, -2]],
];

/// `B(X, i) = [[B_11^X, B_21^{(i)T}], [B_21^{(i)}, B_22]]`, `i` in `1..=7`, as row-major integers.
pub fn b_entries(x: Variant, i: usize) -> Vec<i64> {
    let (a, b, c) = (b11(x), B21[i - 1], B22);
    let mut m = vec![0i64; 16];
    for r in 0..2 {
        for s in 0..2 {
            m[r * 4 + s] = a[r][s];
            m[(r + 2) * 4 + s + 2] = c[r][s];
            m[(r + 2) * 4 + s] = b[r][s];
            m[s * 4 + r + 2] = b[r][s];
        }
    }
    m
}

pub fn b_matrix(x: Variant, i: usize) -> RationalMatrix {
    RationalMatrix::from_i64(4, 4, &b_entries(x, i))
}

fn t(top: [i64; 2], bottom: [i64; 2]) -> TwoRowMatrix {
    TwoRowMatrix::new(&top, &bottom)
}

fn t4(top: [i64; 4], bottom: [i64; 4]) -> TwoRowMatrix {
    TwoRowMatrix::new(&top, &bottom)
}

/// The six matrices `𝓜`: three generators and their row swaps.
pub fn script_m() -> Vec<TwoRowMatrix> {
    let gens = [
        t([2, -1], [-1, 2]),
        t([2, -1], [-1, -1]),
        t([-1, 2], [-1, -1]),
    ];
    let mut v: Vec<TwoRowMatrix> = gens.iter().flat_map(|a| [a.clone(), a.bar()]).collect();
    v.sort();
    v.dedup();
    v
}

/// `C_1, …, C_8` in their listed order.
pub fn c_matrices() -> [TwoRowMatrix; 8] {
    [
        t4([0, 0, -1, -1], [0, 0, -1, 2]),
        t4([0, 0, -1, -1], [0, 0, 2, -1]),
        t4([0, 0, -1, 2], [0, 0, 2, -1]),
        t4([-3, 0, 2, -1], [0, 0, -1, -1]),
        t4([0, -3, -1, -1], [0, 0, 2, -1]),
        t4([-3, 0, 2, -1], [0, 0, -1, 2]),
        t4([0, -3, -1, -1], [0, 0, -1, 2]),
        t4([-3, 0, 2, -1], [0, -3, -1, -1]),
    ]
}

/// Displayed values of `9 · C_k^T (9I_2 - 3J_2)^{-1} C_k`, `k = 1..=8`.
pub const C_PRODUCTS_9: [[[i64; 4]; 4]; 8] = [
    [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 6, -3], [0, 0, -3, 6]],
    [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 6, -3], [0, 0, -3, 6]],
    [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 6, -3], [0, 0, -3, 6]],
    [[18, 0, -9, 9], [0, 0, 0, 0], [-9, 0, 6, -3], [9, 0, -3, 6]],
    [[0, 0, 0, 0], [0, 18, 0, 9], [0, 0, 6, -3], [0, 9, -3, 6]],
    [[18, 0, -9, 0], [0, 0, 0, 0], [-9, 0, 6, -3], [0, 0, -3, 6]],
    [[0, 0, 0, 0], [0, 18, 9, 0], [0, 9, 6, -3], [0, 0, -3, 6]],
    [[18, 9, -9, 9], [9, 18, 0, 9], [-9, 0, 6, -3], [9, 9, -3, 6]],
];

/// `𝓜'_X`: `C_1..C_5` for `I`, `C_1..C_8` for `II`.
pub fn m_prime(x: Variant) -> Vec<TwoRowMatrix> {
    let c = c_matrices();
    match x {
        Variant::I => c[..5].to_vec(),
        Variant::II => c.to_vec(),
    }
}

/// `𝓜_X = 𝓜'_X ∪ {Ā}`.
pub fn m_x(x: Variant) -> Vec<TwoRowMatrix> {
    let mut v: Vec<TwoRowMatrix> = m_prime(x)
        .iter()
        .flat_map(|a| [a.clone(), a.bar()])
        .collect();
    v.sort();
    v.dedup();
    v
}

/// `M_2({-1,2})`.
pub fn universe_m2() -> Universe {
    Universe::m2(&[-1, 2])
}

/// `M_{2,2,2}({-3,0},{-1,2})`.
pub fn universe_m222() -> Universe {
    Universe::m222(&[-3, 0], &[-1, 2])
}

/// `[A_1 A_2]` with `A_1 ∈ M_2({-3,0})` and `A_2 ∈ 𝓜`: the only matrices that
/// can carry weight when the multiset has nine elements.
pub fn universe_m222_restricted() -> Universe {
    Universe::joined(
        "M222({-3,0},𝓜)",
        &Universe::m2(&[-3, 0]).elements,
        &script_m(),
    )
}

/// `(i, swap_rows, swap_cols)` reaching a listed `B_21^{(i)}`.
pub type B21Image = Option<(usize, bool, bool)>;

/// For every `B_21 ∈ M_2({-2,1})`, the index `i` and the row/column swaps
/// `(swap_rows, swap_cols)` carrying it onto `B_21^{(i)}`.
pub fn b21_coverage() -> Vec<([[i64; 2]; 2], B21Image)> {
    let vals = [-2, 1];
    let mut out = Vec::new();
    for &a in &vals {
        for &b in &vals {
            for &c in &vals {
                for &d in &vals {
                    let m = [[a, b], [c, d]];
                    let mut hit = None;
                    'search: for sr in [false, true] {
                        for sc in [false, true] {
                            let mut n = m;
                            if sr {
                                n.swap(0, 1);
                            }
                            if sc {
                                for row in n.iter_mut() {
                                    row.swap(0, 1);
                                }
                            }
                            if let Some(i) = B21.iter().position(|x| *x == n) {
                                hit = Some((i + 1, sr, sc));
                                break 'search;
                            }
                        }
                    }
                    out.push((m, hit));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn script_m_is_bar_closed() {
        let m = script_m();
        assert_eq!(m.len(), 6);
        assert!(m.iter().all(|a| m.contains(&a.bar())));
    }

    #[test]
    fn m_x_sizes() {
        assert_eq!(m_x(Variant::I).len(), 10);
        assert_eq!(m_x(Variant::II).len(), 16);
    }

    #[test]
    fn b_matrix_layout() {
        let b = b_entries(Variant::II, 5);
        assert_eq!(&b[0..4], &[4, -1, -2, 1]);
        assert_eq!(&b[4..8], &[-1, 4, 1, -2]);
        assert_eq!(&b[8..12], &[-2, 1, 6, -3]);
        assert_eq!(&b[12..16], &[1, -2, -3, 6]);
    }

    #[test]
    fn restricted_universe() {
        let u = universe_m222_restricted();
        assert_eq!(u.elements.len(), 96);
        assert_eq!(u.orbits.len(), 48);
    }
}
