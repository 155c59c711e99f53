use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{defect, sample_tuple, LawError, LawId, Op, SamplerConfig};
use crate::algebra3::{norm_hermitian, CVec3, LightSpeed};

/// Hard cap on accepted shrink steps.
pub const MAX_SHRINK_STEPS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ShrinkKind {
    /// Every input's rapidity `atanh(‖v‖/c)` halved.
    HalveRapidity,
    /// Component `component` of input `vector` set to zero.
    ZeroComponent { vector: usize, component: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShrinkStep {
    #[serde(flatten)]
    pub kind: ShrinkKind,
    /// Defect after the step; always above the tolerance.
    pub defect: f64,
}

/// A (possibly shrunk) input tuple on which a law fails.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub law: LawId,
    pub op: Op,
    pub c: LightSpeed,
    pub tol: f64,
    pub inputs: Vec<CVec3>,
    pub defect: f64,
    /// Sample index the search stopped at.
    pub found_at: u64,
    pub original_inputs: Vec<CVec3>,
    pub original_defect: f64,
    pub shrink_steps: usize,
    pub trace: Vec<ShrinkStep>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum HuntOutcome {
    Found(Counterexample),
    NotFound { searched: u64, skips: u64 },
}

/// Scans sampled tuples in index order for one with defect above `tol`,
/// then, if `shrink` is set, greedily simplifies it.
///
/// Each shrink round tries halving all rapidities, then zeroing each
/// nonzero component of each vector; a candidate is kept iff its defect is
/// still above `tol`. Shrinking stops after a round with no accepted step.
pub fn hunt_and_shrink(
    law: LawId,
    op: Op,
    cfg: &SamplerConfig,
    tol: f64,
    shrink: bool,
) -> Result<HuntOutcome, LawError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(LawError::InvalidTolerance(tol));
    }
    cfg.validate()?;
    law.supports(op, cfg.regime)?;

    let ctx = cfg.c;
    let eval = |inputs: &[CVec3]| match defect(law, op, inputs, ctx) {
        Ok(d) if d.is_finite() => Some(d),
        _ => None,
    };

    let mut skips = 0;
    for index in 0..cfg.count {
        let inputs = sample_tuple(cfg, index, law.arity());
        let Some(d) = eval(&inputs) else {
            skips += 1;
            continue;
        };
        if d > tol {
            let (shrunk, shrunk_defect, trace) = if shrink {
                shrink_tuple(inputs.clone(), d, tol, ctx, &eval)
            } else {
                (inputs.clone(), d, Vec::new())
            };
            return Ok(HuntOutcome::Found(Counterexample {
                law,
                op,
                c: ctx,
                tol,
                inputs: shrunk,
                defect: shrunk_defect,
                found_at: index,
                original_inputs: inputs,
                original_defect: d,
                shrink_steps: trace.len(),
                trace,
            }));
        }
    }
    Ok(HuntOutcome::NotFound {
        searched: cfg.count,
        skips,
    })
}

fn shrink_tuple(
    mut inputs: Vec<CVec3>,
    mut current: f64,
    tol: f64,
    ctx: LightSpeed,
    eval: &dyn Fn(&[CVec3]) -> Option<f64>,
) -> (Vec<CVec3>, f64, Vec<ShrinkStep>) {
    let mut trace = Vec::new();
    let try_step = |candidate: Vec<CVec3>,
                    kind: ShrinkKind,
                    inputs: &mut Vec<CVec3>,
                    current: &mut f64,
                    trace: &mut Vec<ShrinkStep>|
     -> bool {
        if trace.len() >= MAX_SHRINK_STEPS || candidate == *inputs {
            return false;
        }
        match eval(&candidate) {
            Some(d) if d > tol => {
                *inputs = candidate;
                *current = d;
                trace.push(ShrinkStep { kind, defect: d });
                true
            }
            _ => false,
        }
    };

    loop {
        let mut progressed = false;
        let halved = inputs.iter().map(|v| halve_rapidity(*v, ctx)).collect();
        progressed |= try_step(
            halved,
            ShrinkKind::HalveRapidity,
            &mut inputs,
            &mut current,
            &mut trace,
        );
        for vector in 0..inputs.len() {
            for component in 0..3 {
                let mut parts = inputs[vector].components();
                if parts[component] == Complex64::new(0.0, 0.0) {
                    continue;
                }
                parts[component] = Complex64::new(0.0, 0.0);
                let mut candidate = inputs.clone();
                candidate[vector] = CVec3::from_components(parts);
                progressed |= try_step(
                    candidate,
                    ShrinkKind::ZeroComponent { vector, component },
                    &mut inputs,
                    &mut current,
                    &mut trace,
                );
            }
        }
        if !progressed || trace.len() >= MAX_SHRINK_STEPS {
            break;
        }
    }
    (inputs, current, trace)
}

/// Maps speed `c·tanh(θ)` to `c·tanh(θ/2)` along the same direction. Vectors
/// at or beyond `c` (possible for complex inputs) are halved instead.
fn halve_rapidity(v: CVec3, ctx: LightSpeed) -> CVec3 {
    let r = norm_hermitian(v);
    if r == 0.0 {
        return v;
    }
    let beta = r / ctx.get();
    let factor = if beta < 1.0 {
        (beta.atanh() / 2.0).tanh() / beta
    } else {
        0.5
    };
    v.scale_real(factor)
}
