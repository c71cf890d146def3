//! From a parsed configuration to a torsion report.

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};
use thiserror::Error;

use crate::filtration::{
    build_gamma, check_gamma_two, torsion_report, IndexIdentityStatus, CodimTorsion, Filtration, FiltrationError, Ratio,
    TorsionReport, GENERIC_NOTE,
};
use crate::intlattice::{ElementaryDivisors, LatticeIndex};
use crate::kmodel::{normalize_config, quillen_generators, weil_generators, Config, DroppedFactor, ModelError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComputeError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Filtration(#[from] FiltrationError),
    #[error("inadmissible configuration: {0}")]
    Inadmissible(String),
}

/// Everything `compute` produces for one configuration.
#[derive(Clone, Debug)]
pub struct Computation {
    pub config: Config,
    pub dropped: Vec<DroppedFactor>,
    /// `(Gamma(X), Gamma(X_E))`; absent when every factor was dropped.
    pub filtrations: Option<(Filtration, Filtration)>,
    pub report: TorsionReport,
    /// Outcome of the `d <= 2` comparison with the split side.
    pub gamma_two: Result<(), FiltrationError>,
}

fn point_report() -> TorsionReport {
    let one = BigInt::one();
    TorsionReport {
        per_codim: vec![CodimTorsion { d: 0, torsion: ElementaryDivisors { divisors: vec![], free_rank: 1 } }],
        index: LatticeIndex::Finite(one.clone()),
        alpha: vec![LatticeIndex::Finite(one.clone())],
        beta: vec![Some(Ratio::new(one.clone(), one))],
        index_identity: IndexIdentityStatus::Verified,
        split_side_torsion_free: true,
        note: Some(GENERIC_NOTE.into()),
    }
}

fn filtrations(config: &Config) -> Result<(Vec<DroppedFactor>, Option<(Filtration, Filtration)>), ComputeError> {
    match config {
        Config::Split(idx) => {
            idx.admissibility().map_err(ComputeError::Inadmissible)?;
            let norm = normalize_config(idx);
            if norm.index.n() == 0 {
                return Ok((norm.dropped, None));
            }
            let (ke, kx) = quillen_generators(&norm.index)?;
            Ok((norm.dropped, Some((build_gamma(&kx), build_gamma(&ke)))))
        }
        Config::Quadric(q) => {
            q.admissibility().map_err(ComputeError::Inadmissible)?;
            let (_, ke, kx) = weil_generators(q)?;
            Ok((Vec::new(), Some((build_gamma(&kx), build_gamma(&ke)))))
        }
    }
}

/// Builds both filtrations and the report for `config`.
pub fn compute(config: &Config) -> Result<Computation, ComputeError> {
    let (dropped, filtrations) = filtrations(config)?;
    let (report, gamma_two) = match &filtrations {
        Some((fx, fe)) => (torsion_report(fx, fe)?, check_gamma_two(fx, fe)),
        None => (point_report(), Ok(())),
    };
    Ok(Computation { config: config.clone(), dropped, filtrations, report, gamma_two })
}

impl Computation {
    pub fn to_json(&self) -> Value {
        let mut out = json!({
            "config": self.config.to_json(),
            "dropped_factors": self.dropped,
            "report": self.report.to_json(),
            "gamma_two": match &self.gamma_two {
                Ok(()) => Value::from("ok"),
                Err(e) => Value::from(e.to_string()),
            },
        });
        if let Some((fx, _)) = &self.filtrations {
            out["ring"] = json!({"truncations": fx.spec().truncations(), "dim": fx.dim()});
        }
        out
    }
}
