//! Connected graphs with largest adjacency eigenvalue at most 2 (the Smith
//! graphs) and the extraction of a large induced `nK_1 + mK_2`.
//!
//! Each family carries a fixed vertex labeling `1..=k`:
//!
//! * `A_t`: path `1..t`. `Ã_t`: cycle `1..t+1`.
//! * `D_t`: path `1..t-1`, vertex `t` pendant at `2`.
//! * `D̃_t`: path `1..t-1`, `t` pendant at `2`, `t+1` pendant at `t-2`.
//! * `E_6`: path `1..5`, `6` at `3`. `E_7`: path `1..6`, `7` at `4`.
//!   `E_8`: path `1..7`, `8` at `3`.
//! * `Ẽ_6`: path `1..5`, `6` at `3`, `7` at `6`. `Ẽ_7`: path `1..7`, `8` at
//!   `4`. `Ẽ_8`: path `1..8`, `9` at `3`.
//!
//! Removing the white vertices of a labeling leaves `nK_1 + mK_2` with
//! `|V| ≤ 4n/3 + 3m`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::exactlin::is_psd_integer;
use crate::seidel::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum AdeFamily {
    A,
    D,
    E6,
    E7,
    E8,
    AffineA,
    AffineD,
    AffineE6,
    AffineE7,
    AffineE8,
    NotLaplace2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdeClass {
    pub family: AdeFamily,
    /// Index `t` for the `A`, `D`, `Ã`, `D̃` series.
    pub t: Option<usize>,
    /// `labeling[k - 1]` is the vertex carrying label `k`.
    pub labeling: Vec<usize>,
}

impl fmt::Display for AdeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use AdeFamily::*;
        let t = self.t.unwrap_or(0);
        match self.family {
            A => write!(f, "A{t}"),
            D => write!(f, "D{t}"),
            AffineA => write!(f, "~A{t}"),
            AffineD => write!(f, "~D{t}"),
            E6 => write!(f, "E6"),
            E7 => write!(f, "E7"),
            E8 => write!(f, "E8"),
            AffineE6 => write!(f, "~E6"),
            AffineE7 => write!(f, "~E7"),
            AffineE8 => write!(f, "~E8"),
            NotLaplace2 => write!(f, "not-ADE"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AdeError {
    #[error("graph is not connected")]
    Disconnected,
    #[error("admissibility is only defined for the affine A and D series, not {0}")]
    NotAffineSeries(String),
    #[error(
        "{0} is excluded: the extraction requires ~A_t with t+1 ≡ 0 and ~D_t with t+1 ≡ 2 (mod 3)"
    )]
    Excluded(String),
    #[error("largest eigenvalue exceeds 2")]
    NotLaplace2,
}

fn path_from(
    g: &Graph,
    start: usize,
    prev: Option<usize>,
    allowed: impl Fn(usize) -> bool,
) -> Vec<usize> {
    let mut out = vec![start];
    let (mut prev, mut cur) = (prev, start);
    loop {
        let next = g
            .neighbors(cur)
            .filter(|&w| Some(w) != prev && allowed(w))
            .min();
        match next {
            Some(w) if !out.contains(&w) => {
                out.push(w);
                prev = Some(cur);
                cur = w;
            }
            _ => return out,
        }
    }
}

/// Arms hanging off `center`, each listed outward, sorted by (length, first vertex).
fn arms(g: &Graph, center: usize) -> Vec<Vec<usize>> {
    let mut a: Vec<Vec<usize>> = g
        .neighbors(center)
        .map(|w| path_from(g, w, Some(center), |_| true))
        .collect();
    a.sort_by_key(|arm| (arm.len(), arm[0]));
    a
}

/// Labels a tree with one branch vertex: `left` reversed, `center`, `right`,
/// then the `extra` arm.
fn tree_label(left: &[usize], center: usize, right: &[usize], extra: &[usize]) -> Vec<usize> {
    left.iter()
        .rev()
        .copied()
        .chain([center])
        .chain(right.iter().copied())
        .chain(extra.iter().copied())
        .collect()
}

/// Identifies the family of a connected graph, certified by the exact PSD
/// check of `2I - A`.
pub fn classify_ade(g: &Graph) -> Result<AdeClass, AdeError> {
    let n = g.order();
    if !g.is_connected() || n == 0 {
        return Err(AdeError::Disconnected);
    }
    let not = AdeClass {
        family: AdeFamily::NotLaplace2,
        t: None,
        labeling: vec![],
    };
    let mut m = vec![0i64; n * n];
    for i in 0..n {
        m[i * n + i] = 2;
        for j in g.neighbors(i) {
            m[i * n + j] = -1;
        }
    }
    if !is_psd_integer(n, &m) {
        return Ok(not);
    }
    let degrees: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let branch: Vec<usize> = (0..n).filter(|&v| degrees[v] >= 3).collect();
    let class = |family, t, labeling| {
        Ok(AdeClass {
            family,
            t,
            labeling,
        })
    };
    if branch.is_empty() {
        if n >= 3 && g.edge_count() == n {
            let first = g.neighbors(0).min().expect("cycle");
            let mut lab = vec![0];
            lab.extend(path_from(g, first, Some(0), |w| w != 0));
            return class(AdeFamily::AffineA, Some(n - 1), lab);
        }
        let start = (0..n).find(|&v| degrees[v] <= 1).expect("path has an end");
        return class(AdeFamily::A, Some(n), path_from(g, start, None, |_| true));
    }
    if branch.len() == 2 {
        // ~D_t: two branch vertices joined by a path, two leaves at each
        let (u, v) = (branch[0], branch[1]);
        let leaves =
            |c: usize| -> Vec<usize> { g.neighbors(c).filter(|&w| degrees[w] == 1).collect() };
        let (lu, lv) = (leaves(u), leaves(v));
        let inner = path_from(g, u, None, |w| degrees[w] == 2 || w == v);
        let mut lab = vec![lu[0]];
        lab.extend(inner);
        lab.push(lv[0]);
        lab.push(lu[1]);
        lab.push(lv[1]);
        return class(AdeFamily::AffineD, Some(n - 1), lab);
    }
    let c = branch[0];
    if degrees[c] == 4 {
        let l: Vec<usize> = g.neighbors(c).collect();
        return class(AdeFamily::AffineD, Some(4), vec![l[0], c, l[1], l[2], l[3]]);
    }
    let a = arms(g, c);
    let lens: Vec<usize> = a.iter().map(Vec::len).collect();
    match lens.as_slice() {
        [1, 1, _] => class(AdeFamily::D, Some(n), tree_label(&a[0], c, &a[2], &a[1])),
        [1, 2, 2] => class(AdeFamily::E6, None, tree_label(&a[1], c, &a[2], &a[0])),
        [1, 2, 3] => class(AdeFamily::E7, None, tree_label(&a[2], c, &a[1], &a[0])),
        [1, 2, 4] => class(AdeFamily::E8, None, tree_label(&a[1], c, &a[2], &a[0])),
        [2, 2, 2] => class(
            AdeFamily::AffineE6,
            None,
            tree_label(&a[0], c, &a[1], &a[2]),
        ),
        [1, 3, 3] => class(
            AdeFamily::AffineE7,
            None,
            tree_label(&a[1], c, &a[2], &a[0]),
        ),
        [1, 2, 5] => class(
            AdeFamily::AffineE8,
            None,
            tree_label(&a[1], c, &a[2], &a[0]),
        ),
        _ => unreachable!("2I - A is PSD but the tree shape {lens:?} is not a Smith graph"),
    }
}

pub fn admissible_affine(c: &AdeClass) -> Result<bool, AdeError> {
    match (c.family, c.t) {
        (AdeFamily::AffineA, Some(t)) => Ok((t + 1) % 3 == 0),
        (AdeFamily::AffineD, Some(t)) => Ok((t + 1) % 3 == 2),
        _ => Err(AdeError::NotAffineSeries(c.to_string())),
    }
}

/// White labels (1-based) removed by the extraction.
pub fn white_labels(c: &AdeClass) -> Vec<usize> {
    let t = c.t.unwrap_or(0);
    match c.family {
        AdeFamily::A => (1..=t).filter(|i| i % 3 == 0).collect(),
        AdeFamily::AffineA => (1..=t + 1).filter(|i| i % 3 == 1).collect(),
        AdeFamily::D => match t % 3 {
            0 => std::iter::once(1)
                .chain((2..t).filter(|i| i % 3 == 0))
                .collect(),
            1 => std::iter::once(2)
                .chain((3..t).filter(|i| i % 3 == 1))
                .collect(),
            _ => (1..t).filter(|i| i % 3 == 2).collect(),
        },
        AdeFamily::AffineD => (1..t).filter(|i| i % 3 == 2).collect(),
        AdeFamily::E6 | AdeFamily::AffineE6 => vec![3],
        AdeFamily::E7 => vec![3, 4],
        AdeFamily::AffineE7 => vec![3, 5],
        AdeFamily::E8 | AdeFamily::AffineE8 => vec![3, 6],
        AdeFamily::NotLaplace2 => vec![],
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Extraction {
    pub n: usize,
    pub m: usize,
    /// Vertices of the induced `nK_1 + mK_2`, ascending.
    pub vertices: Vec<usize>,
    pub removed: Vec<usize>,
}

impl Extraction {
    /// `order ≤ 4n/3 + 3m`, compared as `3·order ≤ 4n + 9m`.
    pub fn bound_holds(&self, order: usize) -> bool {
        3 * order <= 4 * self.n + 9 * self.m
    }
}

pub fn extract_independent_part(g: &Graph) -> Result<Extraction, AdeError> {
    let c = classify_ade(g)?;
    match c.family {
        AdeFamily::NotLaplace2 => return Err(AdeError::NotLaplace2),
        AdeFamily::AffineA | AdeFamily::AffineD if !admissible_affine(&c)? => {
            return Err(AdeError::Excluded(c.to_string()))
        }
        _ => {}
    }
    let mut removed: Vec<usize> = white_labels(&c)
        .iter()
        .map(|&k| c.labeling[k - 1])
        .collect();
    removed.sort_unstable();
    let vertices: Vec<usize> = (0..g.order()).filter(|v| !removed.contains(v)).collect();
    let sub = g.induced(&vertices);
    let mut n = 0;
    let mut m = 0;
    for comp in sub.components() {
        match comp.len() {
            1 => n += 1,
            2 => m += 1,
            k => unreachable!("white vertices of {c} leave a component of size {k}"),
        }
    }
    Ok(Extraction {
        n,
        m,
        vertices,
        removed,
    })
}
