//! Reciprocal-symmetric (RS) velocity addition.
//!
//! ```text
//! a ⊞ b = (a + b + (i/c) a×b) / (1 + a·b/c²)
//! ```
//!
//! with bilinear dot and cross products. The same operation is the
//! projectivized product of Pauli quaternions `(1, a/c)(1, b/c)`, which is
//! why it associates. Both routes are implemented: [`rs_add`] evaluates the
//! closed form, [`rs_add_via_quaternion`] goes through [`quat_mul`].
//!
//! Inputs are arbitrary complex 3-vectors. Sums of real non-parallel
//! velocities are complex, and feeding them back in is needed to compose
//! three or more velocities.

use num_complex::Complex64;

use crate::algebra3::{cross, dot_bilinear, CScalar, CVec3, LightSpeed, I};
use crate::error::CompositionError;

/// Denominators with modulus at or below this are rejected.
pub const DENOM_TOLERANCE: f64 = 1e-12;

/// Result of an RS composition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RSum {
    pub w: CVec3,
    pub denom: CScalar,
}

/// Scalar-plus-vector element of the Pauli algebra, `s + w·σ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliQuaternion {
    pub s: CScalar,
    pub w: CVec3,
}

impl PauliQuaternion {
    pub const ONE: PauliQuaternion = PauliQuaternion {
        s: Complex64::new(1.0, 0.0),
        w: CVec3::ZERO,
    };

    pub fn new(s: CScalar, w: CVec3) -> Self {
        PauliQuaternion { s, w }
    }

    pub fn is_finite(&self) -> bool {
        self.s.is_finite() && self.w.is_finite()
    }
}

impl std::ops::Mul for PauliQuaternion {
    type Output = PauliQuaternion;
    fn mul(self, rhs: PauliQuaternion) -> PauliQuaternion {
        quat_mul(self, rhs)
    }
}

fn check_denom(denom: CScalar) -> Result<(), CompositionError> {
    let magnitude = denom.norm();
    if magnitude > DENOM_TOLERANCE {
        Ok(())
    } else {
        Err(CompositionError::DegenerateDenominator { magnitude })
    }
}

/// `a ⊞ b`.
pub fn rs_add(a: CVec3, b: CVec3, ctx: LightSpeed) -> Result<RSum, CompositionError> {
    let c = ctx.get();
    let denom = 1.0 + dot_bilinear(a, b) / (c * c);
    check_denom(denom)?;
    let numer = a + b + (I / c) * cross(a, b);
    let inv = denom.inv();
    Ok(RSum {
        w: inv * numer,
        denom,
    })
}

/// Velocity of `object` seen from `observer`: `(−observer) ⊞ object`.
///
/// Swapping the arguments negates the result exactly.
pub fn rs_relative_velocity(
    observer: CVec3,
    object: CVec3,
    ctx: LightSpeed,
) -> Result<RSum, CompositionError> {
    rs_add(-observer, object, ctx)
}

/// `v ↦ (1, v/c)`.
pub fn quat_embed(v: CVec3, ctx: LightSpeed) -> PauliQuaternion {
    PauliQuaternion {
        s: Complex64::new(1.0, 0.0),
        w: v.scale_real(1.0 / ctx.get()),
    }
}

/// Product induced by `σⱼσₖ = δⱼₖ + i εⱼₖₗ σₗ`:
/// `(s₁, w₁)(s₂, w₂) = (s₁s₂ + w₁·w₂, s₁w₂ + s₂w₁ + i w₁×w₂)`.
pub fn quat_mul(p: PauliQuaternion, q: PauliQuaternion) -> PauliQuaternion {
    PauliQuaternion {
        s: p.s * q.s + dot_bilinear(p.w, q.w),
        w: p.s * q.w + q.s * p.w + I * cross(p.w, q.w),
    }
}

/// `c · w / s`, the velocity represented by a quaternion up to scale.
pub fn quat_project(q: PauliQuaternion, ctx: LightSpeed) -> Result<RSum, CompositionError> {
    check_denom(q.s)?;
    Ok(RSum {
        w: (ctx.get() / q.s) * q.w,
        denom: q.s,
    })
}

/// `a ⊞ b` computed as `project(embed(a) · embed(b))`.
pub fn rs_add_via_quaternion(
    a: CVec3,
    b: CVec3,
    ctx: LightSpeed,
) -> Result<RSum, CompositionError> {
    quat_project(quat_mul(quat_embed(a, ctx), quat_embed(b, ctx)), ctx)
}
