//! Loading and validating the 57-line Seidel matrices.

use std::fs;
use std::path::{Path, PathBuf};

use eqlines::exactlin::{nullity, psd_check, PsdResult};
use eqlines::seidel::{max_clique, SeidelError, SeidelMatrix};
use serde::Serialize;
use thiserror::Error;

pub const PROVENANCE: &str = "S_i = F_i^T F_i / 2 - 5I, with F_i the 10 x 57 matrices of the published 57-line systems in dimension 18";

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: SeidelError },
    #[error("{path}: invariant `{invariant}` violated: {detail}")]
    Invariant {
        path: PathBuf,
        invariant: &'static str,
        detail: String,
    },
}

impl IngestError {
    /// Name of the violated invariant, if that is what failed.
    pub fn invariant(&self) -> Option<&'static str> {
        match self {
            IngestError::Invariant { invariant, .. } => Some(invariant),
            _ => None,
        }
    }
}

/// What a data file must satisfy beyond being a Seidel matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectations {
    pub order: usize,
    pub nullity: usize,
    pub rank: usize,
    /// Skipped when `None`.
    pub clique_number: Option<usize>,
}

impl Expectations {
    /// 57 lines in dimension 18 with base size 6.
    pub const FIFTY_SEVEN: Expectations = Expectations {
        order: 57,
        nullity: 39,
        rank: 18,
        clique_number: Some(6),
    };
}

#[derive(Clone, Debug, Serialize)]
pub struct Validation {
    pub order: usize,
    pub nullity: usize,
    pub rank: usize,
    pub clique_number: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct SeidelDataFile {
    pub path: PathBuf,
    pub matrix: SeidelMatrix,
    pub provenance: &'static str,
    pub validation: Validation,
}

/// Checks, in order: order, `λ_min ≥ -5`, nullity of `S + 5I` (which also
/// pins `λ_min = -5`), rank, clique number. Returns the first failure as
/// `(invariant, detail)`.
pub fn validate(
    s: &SeidelMatrix,
    want: &Expectations,
) -> Result<Validation, (&'static str, String)> {
    if s.order() != want.order {
        return Err((
            "order",
            format!("expected {} lines, found {}", want.order, s.order()),
        ));
    }
    let gram = s.gram();
    if let PsdResult::NotPsd(w) = psd_check(&gram).expect("Seidel matrices are symmetric") {
        return Err((
            "lambda-min",
            format!("S + 5I has a negative direction with value {}", w.value),
        ));
    }
    let k = nullity(&gram).nullity;
    if k != want.nullity {
        return Err((
            "nullity",
            format!("nullity(S + 5I) = {k}, expected {}", want.nullity),
        ));
    }
    let rank = s.order() - k;
    if rank != want.rank {
        return Err((
            "rank",
            format!("rank(S + 5I) = {rank}, expected {}", want.rank),
        ));
    }
    let clique_number = match want.clique_number {
        Some(c) => {
            let got = max_clique(&s.to_graph()).size();
            if got != c {
                return Err((
                    "clique-number",
                    format!("clique number {got}, expected {c}"),
                ));
            }
            Some(got)
        }
        None => None,
    };
    Ok(Validation {
        order: s.order(),
        nullity: k,
        rank,
        clique_number,
    })
}

pub fn ingest_seidel_with(path: &Path, want: &Expectations) -> Result<SeidelDataFile, IngestError> {
    let text = fs::read_to_string(path).map_err(|source| IngestError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let matrix = SeidelMatrix::parse(&text).map_err(|source| IngestError::Parse {
        path: path.to_path_buf(),
        source,
    })?;
    let validation =
        validate(&matrix, want).map_err(|(invariant, detail)| IngestError::Invariant {
            path: path.to_path_buf(),
            invariant,
            detail,
        })?;
    Ok(SeidelDataFile {
        path: path.to_path_buf(),
        matrix,
        provenance: PROVENANCE,
        validation,
    })
}

pub fn ingest_seidel(path: &Path) -> Result<SeidelDataFile, IngestError> {
    ingest_seidel_with(path, &Expectations::FIFTY_SEVEN)
}

/// `S1.txt` … `S4.txt` inside the data directory.
pub fn data_path(dir: &Path, i: usize) -> PathBuf {
    dir.join(format!("S{i}.txt"))
}
