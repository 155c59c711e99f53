use super::{LawError, LawId, Op};
use crate::algebra3::{magnitude_bilinear, norm_hermitian, CScalar, CVec3, LightSpeed};
use crate::recsym::{rs_add, rs_add_via_quaternion};

/// `‖lhs − rhs‖ / max(c, ‖lhs‖, ‖rhs‖)`, Hermitian norms.
pub fn normalized_defect(lhs: CVec3, rhs: CVec3, ctx: LightSpeed) -> f64 {
    let scale = ctx.get().max(norm_hermitian(lhs)).max(norm_hermitian(rhs));
    norm_hermitian(lhs - rhs) / scale
}

/// Scalar analogue of [`normalized_defect`].
pub fn normalized_scalar_defect(lhs: CScalar, rhs: CScalar, ctx: LightSpeed) -> f64 {
    let scale = ctx.get().max(lhs.norm()).max(rhs.norm());
    (lhs - rhs).norm() / scale
}

/// Defect of `law` for `op` on one input tuple. Zero means the law holds
/// exactly on these inputs.
///
/// `subluminal_closure` is an indicator: 0 when the composed magnitude is
/// strictly below `c`, 1 otherwise.
pub fn defect(law: LawId, op: Op, inputs: &[CVec3], ctx: LightSpeed) -> Result<f64, LawError> {
    if inputs.len() != law.arity() {
        return Err(LawError::Arity {
            law,
            expected: law.arity(),
            got: inputs.len(),
        });
    }
    if law == LawId::DualPath && op == Op::Einstein {
        return Err(LawError::Unsupported {
            law,
            op,
            regime: super::Regime::UniformBall,
            reason: "the quaternion route exists only for recsym",
        });
    }
    let f = |a: CVec3, b: CVec3| op.compose(a, b, ctx);
    let d = |l: CVec3, r: CVec3| normalized_defect(l, r, ctx);

    let value = match law {
        LawId::Associativity => {
            let (u, v, w) = (inputs[0], inputs[1], inputs[2]);
            d(f(f(u, v)?, w)?, f(u, f(v, w)?)?)
        }
        LawId::Commutativity => {
            let (u, v) = (inputs[0], inputs[1]);
            d(f(u, v)?, f(v, u)?)
        }
        LawId::Reciprocity => {
            let (u, v) = (inputs[0], inputs[1]);
            d(-f(-v, u)?, f(-u, v)?)
        }
        LawId::NegationReversed => {
            let (u, v) = (inputs[0], inputs[1]);
            d(-f(u, v)?, f(-v, -u)?)
        }
        LawId::NegationSameOrder => {
            let (u, v) = (inputs[0], inputs[1]);
            d(-f(u, v)?, f(-u, -v)?)
        }
        LawId::MagnitudeEquality => {
            let (u, v) = (inputs[0], inputs[1]);
            let rs = magnitude_bilinear(rs_add(u, v, ctx)?.w);
            let einstein = Op::Einstein.compose(u, v, ctx)?;
            normalized_scalar_defect(rs, CScalar::new(norm_hermitian(einstein), 0.0), ctx)
        }
        LawId::MagnitudeCommutativity => {
            let (u, v) = (inputs[0], inputs[1]);
            let uv = op.magnitude(f(u, v)?);
            let vu = op.magnitude(f(v, u)?);
            normalized_scalar_defect(uv, vu, ctx)
        }
        LawId::Identity => {
            let u = inputs[0];
            d(f(u, CVec3::ZERO)?, u).max(d(f(CVec3::ZERO, u)?, u))
        }
        LawId::Inverse => {
            let u = inputs[0];
            d(f(-u, u)?, CVec3::ZERO).max(d(f(u, -u)?, CVec3::ZERO))
        }
        LawId::SubluminalClosure => {
            let (u, v) = (inputs[0], inputs[1]);
            let m = op.magnitude(f(u, v)?).norm();
            if m < ctx.get() {
                0.0
            } else {
                1.0
            }
        }
        LawId::DualPath => {
            let (u, v) = (inputs[0], inputs[1]);
            d(rs_add(u, v, ctx)?.w, rs_add_via_quaternion(u, v, ctx)?.w)
        }
    };
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::CompositionError;

    const C1: LightSpeed = LightSpeed::UNIT;

    fn r(x: f64, y: f64, z: f64) -> CVec3 {
        CVec3::real(x, y, z)
    }

    #[test]
    fn identity_example() {
        let a = r(0.7, 0.0, 0.0);
        assert_eq!(
            defect(LawId::Identity, Op::Einstein, &[a], C1).unwrap(),
            0.0
        );
        assert_eq!(defect(LawId::Identity, Op::Recsym, &[a], C1).unwrap(), 0.0);
    }

    #[test]
    fn einstein_associativity_witness() {
        let t = [r(0.5, 0.0, 0.0), r(0.0, 0.5, 0.0), r(0.5, 0.0, 0.0)];
        let d = defect(LawId::Associativity, Op::Einstein, &t, C1).unwrap();
        assert!(d > 1e-3);
        assert!((d - 0.041138313).abs() < 1e-8);
    }

    #[test]
    fn recsym_associativity_on_real_triple() {
        let t = [r(0.5, 0.0, 0.0), r(0.0, 0.5, 0.0), r(0.0, 0.0, 0.5)];
        assert!(defect(LawId::Associativity, Op::Recsym, &t, C1).unwrap() <= 1e-10);
        let t = [r(0.9, -0.1, 0.3), r(-0.2, 0.8, 0.1), r(0.3, 0.3, -0.7)];
        assert!(defect(LawId::Associativity, Op::Recsym, &t, C1).unwrap() <= 1e-10);
    }

    #[test]
    fn reciprocity_witness() {
        let p = [r(0.5, 0.0, 0.0), r(0.0, 0.5, 0.0)];
        let d = defect(LawId::Reciprocity, Op::Einstein, &p, C1).unwrap();
        // W + W̃ = (√0.75/2 − 1/2)(1, 1, 0), largest of |W|, |W̃| is below c
        let expected = 2f64.sqrt() * (0.5 - 0.75f64.sqrt() * 0.5);
        assert!((d - expected).abs() < 1e-15);
        assert!(defect(LawId::Reciprocity, Op::Recsym, &p, C1).unwrap() <= 1e-15);
    }

    #[test]
    fn negation_laws() {
        let p = [r(0.5, 0.0, 0.0), r(0.0, 0.5, 0.0)];
        assert!(defect(LawId::NegationReversed, Op::Recsym, &p, C1).unwrap() <= 1e-15);
        // cross term flips: |2 · 0.25i| / 1
        let same = defect(LawId::NegationSameOrder, Op::Recsym, &p, C1).unwrap();
        assert!((same - 0.5).abs() < 1e-15);
        assert_eq!(
            defect(LawId::NegationSameOrder, Op::Einstein, &p, C1).unwrap(),
            0.0
        );
    }

    #[test]
    fn magnitude_and_closure() {
        let p = [r(0.5, 0.0, 0.0), r(0.0, 0.5, 0.0)];
        for op in Op::ALL {
            assert!(defect(LawId::MagnitudeEquality, op, &p, C1).unwrap() <= 1e-15);
            assert!(defect(LawId::MagnitudeCommutativity, op, &p, C1).unwrap() <= 1e-15);
            assert_eq!(defect(LawId::SubluminalClosure, op, &p, C1).unwrap(), 0.0);
        }
        let fast = [r(0.999, 0.0, 0.0), r(0.999, 0.0, 0.0)];
        assert_eq!(
            defect(LawId::SubluminalClosure, Op::Einstein, &fast, C1).unwrap(),
            0.0
        );
        // outside the physical domain RS addition happily exceeds c
        let wild = [r(3.0, 0.0, 0.0), r(0.0, 3.0, 0.0)];
        assert_eq!(
            defect(LawId::SubluminalClosure, Op::Recsym, &wild, C1).unwrap(),
            1.0
        );
    }

    #[test]
    fn errors() {
        let a = r(0.1, 0.0, 0.0);
        assert!(matches!(
            defect(LawId::Associativity, Op::Recsym, &[a, a], C1),
            Err(LawError::Arity {
                expected: 3,
                got: 2,
                ..
            })
        ));
        assert!(matches!(
            defect(LawId::DualPath, Op::Einstein, &[a, a], C1),
            Err(LawError::Unsupported { .. })
        ));
        let z = CVec3::from_parts([0.1, 0.0, 0.0], [0.0, 0.1, 0.0]);
        assert_eq!(
            defect(LawId::Commutativity, Op::Einstein, &[z, a], C1),
            Err(LawError::Composition(CompositionError::ComplexVelocity))
        );
        let b = r(-1.0, 0.0, 0.0);
        assert!(matches!(
            defect(LawId::Commutativity, Op::Recsym, &[r(1.0, 0.0, 0.0), b], C1),
            Err(LawError::Composition(
                CompositionError::DegenerateDenominator { .. }
            ))
        ));
    }
}
