//! Seeded law checker for the two composition operations.
//!
//! A law is measured by its *defect* on a concrete input tuple:
//! `‖lhs − rhs‖ / max(c, ‖lhs‖, ‖rhs‖)` with the Hermitian norm, so zero means
//! the law holds exactly there. [`check`] aggregates defects over a sampled
//! population, [`hunt_and_shrink`] looks for a violating tuple and reduces it.
//!
//! Reports are bit-reproducible: every sample is drawn from its own RNG stream
//! derived from `(seed, index)`, defects are gathered in index order and
//! reduced sequentially, so the thread count never changes the result.

mod audit;
mod check;
mod laws;
mod sampler;
mod shrink;
mod suite;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra3::{magnitude_bilinear, norm_hermitian, CScalar, CVec3, LightSpeed, Velocity};
use crate::einstein::einstein_add;
use crate::error::CompositionError;
use crate::recsym::rs_add;

pub use audit::{
    einstein_oddness_audit, rs_self_dot_imag_audit, scale_invariance_audit, AuditResult,
};
pub use check::{check, LawReport, Verdict};
pub use laws::{defect, normalized_defect, normalized_scalar_defect};
pub use sampler::{sample, sample_tuple, Regime, SamplerConfig};
pub use shrink::{hunt_and_shrink, Counterexample, HuntOutcome, ShrinkKind, ShrinkStep};
pub use suite::{run_suite, Expectation, SuiteConfig, SuiteReport, SuiteRow};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LawError {
    #[error("law {law} is not defined for {op} on the {regime} regime: {reason}")]
    Unsupported {
        law: LawId,
        op: Op,
        regime: Regime,
        reason: &'static str,
    },
    #[error("law {law} takes {expected} input vectors, got {got}")]
    Arity {
        law: LawId,
        expected: usize,
        got: usize,
    },
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("max_beta must lie in (0, 1), got {0}")]
    InvalidMaxBeta(f64),
    #[error(transparent)]
    Composition(#[from] CompositionError),
}

/// The composition operation under test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Op {
    Einstein,
    Recsym,
}

impl Op {
    pub const ALL: [Op; 2] = [Op::Einstein, Op::Recsym];

    pub fn name(self) -> &'static str {
        match self {
            Op::Einstein => "einstein",
            Op::Recsym => "recsym",
        }
    }

    /// Binary composition on complex vectors. Einstein addition rejects
    /// inputs with nonzero imaginary parts.
    pub fn compose(self, a: CVec3, b: CVec3, ctx: LightSpeed) -> Result<CVec3, CompositionError> {
        match self {
            Op::Einstein => {
                let a = Velocity::from_cvec(a, ctx)?;
                let b = Velocity::from_cvec(b, ctx)?;
                Ok(einstein_add(&a, &b)?.w.to_cvec())
            }
            Op::Recsym => Ok(rs_add(a, b, ctx)?.w),
        }
    }

    /// Magnitude notion native to the operation: Euclidean for Einstein
    /// results, principal bilinear root for RS results.
    pub fn magnitude(self, v: CVec3) -> CScalar {
        match self {
            Op::Einstein => CScalar::new(norm_hermitian(v), 0.0),
            Op::Recsym => magnitude_bilinear(v),
        }
    }

    /// Only real inputs are meaningful for Einstein addition.
    pub fn accepts_complex(self) -> bool {
        matches!(self, Op::Recsym)
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Op {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "einstein" => Ok(Op::Einstein),
            "recsym" => Ok(Op::Recsym),
            other => Err(format!(
                "unknown operation `{other}` (expected einstein or recsym)"
            )),
        }
    }
}

/// Catalogue of checkable laws.
///
/// | law | lhs | rhs |
/// |---|---|---|
/// | associativity | `(u∘v)∘w` | `u∘(v∘w)` |
/// | commutativity | `u∘v` | `v∘u` |
/// | reciprocity | `−((−v)∘u)` | `(−u)∘v` |
/// | negation_reversed | `−(u∘v)` | `(−v)∘(−u)` |
/// | negation_same_order | `−(u∘v)` | `(−u)∘(−v)` |
/// | magnitude_equality | `\|u ⊞ v\|` (bilinear) | `‖u ⊕ v‖` |
/// | magnitude_commutativity | `\|u∘v\|` | `\|v∘u\|` |
/// | identity | `u∘0`, `0∘u` | `u` |
/// | inverse | `(−u)∘u`, `u∘(−u)` | `0` |
/// | subluminal_closure | `\|u∘v\| < c` | |
/// | dual_path | `u ⊞ v` direct | via Pauli quaternions |
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LawId {
    Associativity,
    Commutativity,
    Reciprocity,
    NegationReversed,
    NegationSameOrder,
    MagnitudeEquality,
    MagnitudeCommutativity,
    Identity,
    Inverse,
    SubluminalClosure,
    DualPath,
}

impl LawId {
    pub const ALL: [LawId; 11] = [
        LawId::Associativity,
        LawId::Commutativity,
        LawId::Reciprocity,
        LawId::NegationReversed,
        LawId::NegationSameOrder,
        LawId::MagnitudeEquality,
        LawId::MagnitudeCommutativity,
        LawId::Identity,
        LawId::Inverse,
        LawId::SubluminalClosure,
        LawId::DualPath,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LawId::Associativity => "associativity",
            LawId::Commutativity => "commutativity",
            LawId::Reciprocity => "reciprocity",
            LawId::NegationReversed => "negation_reversed",
            LawId::NegationSameOrder => "negation_same_order",
            LawId::MagnitudeEquality => "magnitude_equality",
            LawId::MagnitudeCommutativity => "magnitude_commutativity",
            LawId::Identity => "identity",
            LawId::Inverse => "inverse",
            LawId::SubluminalClosure => "subluminal_closure",
            LawId::DualPath => "dual_path",
        }
    }

    /// Number of input vectors per tuple.
    pub fn arity(self) -> usize {
        match self {
            LawId::Associativity => 3,
            LawId::Identity | LawId::Inverse => 1,
            _ => 2,
        }
    }

    /// Three chained divisions amplify rounding, so associativity gets a
    /// looser default than the pairwise laws.
    pub fn default_tolerance(self) -> f64 {
        match self {
            LawId::Associativity => 1e-10,
            _ => 1e-12,
        }
    }

    /// Whether the defect of this law is defined for `op` on `regime`.
    pub fn supports(self, op: Op, regime: Regime) -> Result<(), LawError> {
        let unsupported = |reason| {
            Err(LawError::Unsupported {
                law: self,
                op,
                regime,
                reason,
            })
        };
        if self == LawId::DualPath && op == Op::Einstein {
            return unsupported("the quaternion route exists only for recsym");
        }
        if regime == Regime::ComplexDisc {
            if !op.accepts_complex() {
                return unsupported("Einstein addition is defined on real velocities only");
            }
            if self == LawId::MagnitudeEquality {
                return unsupported("the comparison needs an Einstein sum of real inputs");
            }
        }
        Ok(())
    }
}

impl fmt::Display for LawId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LawId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LawId::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| format!("unknown law `{s}`"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for law in LawId::ALL {
            assert_eq!(law.name().parse::<LawId>().unwrap(), law);
            let json = serde_json::to_string(&law).unwrap();
            assert_eq!(json, format!("\"{}\"", law.name()));
        }
        for op in Op::ALL {
            assert_eq!(op.name().parse::<Op>().unwrap(), op);
        }
        assert!("assoc".parse::<LawId>().is_err());
    }

    #[test]
    fn unsupported_combinations() {
        assert!(LawId::DualPath
            .supports(Op::Einstein, Regime::UniformBall)
            .is_err());
        assert!(LawId::DualPath
            .supports(Op::Recsym, Regime::ComplexDisc)
            .is_ok());
        assert!(LawId::Associativity
            .supports(Op::Einstein, Regime::ComplexDisc)
            .is_err());
        assert!(LawId::MagnitudeEquality
            .supports(Op::Recsym, Regime::ComplexDisc)
            .is_err());
        assert!(LawId::MagnitudeEquality
            .supports(Op::Einstein, Regime::Collinear)
            .is_ok());
    }
}
