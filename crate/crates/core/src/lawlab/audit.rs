//! Population-wide numeric audits that are not a single law defect.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{defect, normalized_defect, sample_tuple, LawError, LawId, Op, SamplerConfig};
use crate::algebra3::{dot_bilinear, CVec3, LightSpeed};
use crate::recsym::rs_add;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AuditResult {
    /// Largest value of the audited quantity over evaluated samples.
    pub max: f64,
    pub samples: u64,
    pub skips: u64,
}

fn run_audit<F>(cfg: &SamplerConfig, arity: usize, metric: F) -> Result<AuditResult, LawError>
where
    F: Fn(&[CVec3]) -> Option<f64> + Sync,
{
    cfg.validate()?;
    let values: Vec<Option<f64>> = (0..cfg.count)
        .into_par_iter()
        .map(|i| metric(&sample_tuple(cfg, i, arity)).filter(|m| m.is_finite()))
        .collect();
    let mut out = AuditResult {
        max: 0.0,
        samples: 0,
        skips: 0,
    };
    for v in values {
        match v {
            Some(m) => {
                out.samples += 1;
                out.max = out.max.max(m);
            }
            None => out.skips += 1,
        }
    }
    Ok(out)
}

/// Largest change in the defect of `law` when every input and `c` are
/// multiplied by `factor`. Both composition formulas depend on `v/c` only.
pub fn scale_invariance_audit(
    law: LawId,
    op: Op,
    cfg: &SamplerConfig,
    factor: f64,
) -> Result<AuditResult, LawError> {
    law.supports(op, cfg.regime)?;
    let scaled_ctx = LightSpeed::new(cfg.c.get() * factor)?;
    run_audit(cfg, law.arity(), |inputs| {
        let base = defect(law, op, inputs, cfg.c).ok()?;
        let scaled: Vec<CVec3> = inputs.iter().map(|v| v.scale_real(factor)).collect();
        let rescaled = defect(law, op, &scaled, scaled_ctx).ok()?;
        Some((base - rescaled).abs())
    })
}

/// Largest `|Im((a ⊞ b)·(a ⊞ b))| / c²` over sampled pairs. Zero in exact
/// arithmetic for real inputs, which is what makes the bilinear magnitude of
/// an RS sum a real speed.
pub fn rs_self_dot_imag_audit(cfg: &SamplerConfig) -> Result<AuditResult, LawError> {
    let c2 = cfg.c.get() * cfg.c.get();
    run_audit(cfg, 2, |p| {
        let w = rs_add(p[0], p[1], cfg.c).ok()?.w;
        Some(dot_bilinear(w, w).im.abs() / c2)
    })
}

/// Largest normalized `‖(−b) ⊕ (−a) + (b ⊕ a)‖`. Einstein addition is odd
/// under joint negation, which makes its reversed-negation defect on `(a, b)`
/// equal to its reciprocity defect on `(−a, b)`.
pub fn einstein_oddness_audit(cfg: &SamplerConfig) -> Result<AuditResult, LawError> {
    LawId::Commutativity.supports(Op::Einstein, cfg.regime)?;
    run_audit(cfg, 2, |p| {
        let (a, b) = (p[0], p[1]);
        let lhs = Op::Einstein.compose(-b, -a, cfg.c).ok()?;
        let rhs = -Op::Einstein.compose(b, a, cfg.c).ok()?;
        Some(normalized_defect(lhs, rhs, cfg.c))
    })
}
