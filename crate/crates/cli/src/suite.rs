use std::path::PathBuf;
use std::time::Instant;

use eqlines::seidel::SeidelMatrix;
use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use crate::ingest::{data_path, ingest_seidel, IngestError};
use crate::registry::{registry, Claim, Ctx, Outcome};
use crate::report::{ClaimReport, SuiteReport, TOOLKIT_VERSION};

#[derive(Clone, Debug)]
pub struct Config {
    pub data_dir: PathBuf,
    /// Threads for the suite pool; `None` uses the rayon default.
    pub workers: Option<usize>,
    pub node_budget: Option<u64>,
    pub timing: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            data_dir: PathBuf::from("data"),
            workers: None,
            node_budget: None,
            timing: false,
        }
    }
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown claim or prefix {0:?}")]
    UnknownClaim(String),
    #[error(transparent)]
    Data(#[from] IngestError),
    #[error("cannot build thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

pub fn claim_ids() -> Vec<String> {
    registry().into_iter().map(|c| c.id).collect()
}

/// Registry entries matching the selection in registry order. An entry of the
/// selection matches a claim id exactly or as a prefix; an empty selection
/// picks everything.
pub fn select(selection: &[String]) -> Result<Vec<Claim>, SuiteError> {
    let all = registry();
    if selection.is_empty() {
        return Ok(all);
    }
    for s in selection {
        if !all.iter().any(|c| c.id.starts_with(s.as_str())) {
            return Err(SuiteError::UnknownClaim(s.clone()));
        }
    }
    Ok(all
        .into_iter()
        .filter(|c| selection.iter().any(|s| c.id.starts_with(s.as_str())))
        .collect())
}

/// Runs the selected claims concurrently and returns their reports in registry order.
pub fn run_suite(selection: &[String], config: &Config) -> Result<SuiteReport, SuiteError> {
    let claims = select(selection)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = config.workers {
        builder = builder.num_threads(w);
    }
    let pool = builder.build()?;
    pool.install(|| {
        let mut data: [Option<SeidelMatrix>; 4] = Default::default();
        let mut missing: Vec<usize> = Vec::new();
        for i in 1..=4 {
            if !claims.iter().any(|c| c.data.contains(&i)) {
                continue;
            }
            let path = data_path(&config.data_dir, i);
            if path.exists() {
                data[i - 1] = Some(ingest_seidel(&path)?.matrix);
            } else {
                missing.push(i);
            }
        }
        let ctx = Ctx {
            node_budget: config.node_budget,
            data: &data,
        };
        let reports = claims
            .par_iter()
            .map(|c| {
                let start = Instant::now();
                let absent: Vec<String> = c
                    .data
                    .iter()
                    .filter(|i| missing.contains(i))
                    .map(|&i| data_path(&config.data_dir, i).display().to_string())
                    .collect();
                let out = if absent.is_empty() {
                    (c.run)(&ctx)
                } else {
                    Outcome::inconclusive(
                        format!("missing data file {}", absent.join(", ")),
                        json!({ "reason": "missing data", "files": absent }),
                    )
                };
                ClaimReport {
                    claim_id: c.id.clone(),
                    status: out.status,
                    summary: out.summary,
                    payload: out.payload,
                    wall_time: config.timing.then(|| start.elapsed().as_secs_f64()),
                    version: TOOLKIT_VERSION.to_string(),
                }
            })
            .collect();
        Ok(SuiteReport::new(reports))
    })
}
