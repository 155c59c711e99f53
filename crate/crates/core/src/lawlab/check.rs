use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{defect, sample_tuple, LawError, LawId, Op, Regime, SamplerConfig};
use crate::algebra3::CVec3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Holds,
    Violated,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Holds => "HOLDS",
            Verdict::Violated => "VIOLATED",
        }
    }
}

/// Outcome of checking one law over a sampled population.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawReport {
    pub law: LawId,
    pub op: Op,
    pub regime: Regime,
    pub seed: u64,
    /// Tuples whose defect was evaluated.
    pub samples: u64,
    /// Tuples skipped because an operation was undefined on them.
    pub skips: u64,
    /// Skip counts keyed by error name.
    pub skip_reasons: BTreeMap<String, u64>,
    pub max_defect: f64,
    pub mean_defect: f64,
    /// Tuples with defect above `tol`.
    pub violations: u64,
    pub tol: f64,
    pub worst_index: Option<u64>,
    pub worst_input: Vec<CVec3>,
    pub verdict: Verdict,
}

impl LawReport {
    pub fn skip_rate(&self) -> f64 {
        let total = self.samples + self.skips;
        if total == 0 {
            0.0
        } else {
            self.skips as f64 / total as f64
        }
    }
}

enum Outcome {
    Defect(f64),
    Skip(&'static str),
}

/// Evaluates `law` for `op` on `cfg.count` sampled tuples.
///
/// Samples are evaluated on the current rayon pool; the report does not
/// depend on its size. Ties for the worst sample go to the lowest index.
pub fn check(law: LawId, op: Op, cfg: &SamplerConfig, tol: f64) -> Result<LawReport, LawError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(LawError::InvalidTolerance(tol));
    }
    cfg.validate()?;
    law.supports(op, cfg.regime)?;

    let arity = law.arity();
    let outcomes: Vec<Outcome> = (0..cfg.count)
        .into_par_iter()
        .map(|i| {
            let inputs = sample_tuple(cfg, i, arity);
            match defect(law, op, &inputs, cfg.c) {
                Ok(d) if d.is_finite() => Outcome::Defect(d),
                Ok(_) => Outcome::Skip("NonFinite"),
                Err(LawError::Composition(e)) => Outcome::Skip(e.name()),
                Err(_) => unreachable!("law support and arity checked above"),
            }
        })
        .collect();

    let mut samples = 0u64;
    let mut skips = 0u64;
    let mut skip_reasons = BTreeMap::new();
    let mut sum = 0.0;
    let mut max_defect = 0.0;
    let mut worst_index = None;
    let mut violations = 0u64;
    for (i, outcome) in outcomes.iter().enumerate() {
        match *outcome {
            Outcome::Defect(d) => {
                samples += 1;
                sum += d;
                if d > tol {
                    violations += 1;
                }
                if worst_index.is_none() || d > max_defect {
                    max_defect = d;
                    worst_index = Some(i as u64);
                }
            }
            Outcome::Skip(reason) => {
                skips += 1;
                *skip_reasons.entry(reason.to_string()).or_insert(0) += 1;
            }
        }
    }
    let mean_defect = if samples > 0 {
        sum / samples as f64
    } else {
        0.0
    };
    let worst_input = worst_index
        .map(|i| sample_tuple(cfg, i, arity))
        .unwrap_or_default();

    Ok(LawReport {
        law,
        op,
        regime: cfg.regime,
        seed: cfg.seed,
        samples,
        skips,
        skip_reasons,
        max_defect,
        // summation rounding can nudge the mean above a constant maximum
        mean_defect: mean_defect.min(max_defect),
        violations,
        tol,
        worst_index,
        worst_input,
        verdict: if violations == 0 {
            Verdict::Holds
        } else {
            Verdict::Violated
        },
    })
}
