//! Complex scalar and complex 3-vector algebra.
//!
//! Products here are *bilinear*: [`dot_bilinear`] and [`cross`] never
//! conjugate. The Hermitian norm ([`norm_hermitian`]) exists only to measure
//! residuals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::CompositionError;

/// Complex scalar.
pub type CScalar = Complex64;

/// The imaginary unit.
pub const I: CScalar = Complex64::new(0.0, 1.0);

/// Fractional margin below `c` that accepted velocities must respect.
pub const SUBLUMINAL_MARGIN: f64 = 1e-12;

/// Complex 3-vector.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "CVec3Parts", into = "CVec3Parts")]
pub struct CVec3 {
    pub x: CScalar,
    pub y: CScalar,
    pub z: CScalar,
}

/// Wire layout of a [`CVec3`]: real and imaginary parts as separate triples.
#[derive(Serialize, Deserialize)]
struct CVec3Parts {
    re: [f64; 3],
    im: [f64; 3],
}

impl From<CVec3Parts> for CVec3 {
    fn from(p: CVec3Parts) -> Self {
        CVec3::from_parts(p.re, p.im)
    }
}

impl From<CVec3> for CVec3Parts {
    fn from(v: CVec3) -> Self {
        CVec3Parts {
            re: v.re(),
            im: v.im(),
        }
    }
}

impl CVec3 {
    pub const ZERO: CVec3 = CVec3 {
        x: Complex64::new(0.0, 0.0),
        y: Complex64::new(0.0, 0.0),
        z: Complex64::new(0.0, 0.0),
    };

    pub const fn new(x: CScalar, y: CScalar, z: CScalar) -> Self {
        CVec3 { x, y, z }
    }

    /// Real vector with zero imaginary parts.
    pub const fn real(x: f64, y: f64, z: f64) -> Self {
        CVec3 {
            x: Complex64::new(x, 0.0),
            y: Complex64::new(y, 0.0),
            z: Complex64::new(z, 0.0),
        }
    }

    pub fn from_parts(re: [f64; 3], im: [f64; 3]) -> Self {
        CVec3 {
            x: Complex64::new(re[0], im[0]),
            y: Complex64::new(re[1], im[1]),
            z: Complex64::new(re[2], im[2]),
        }
    }

    /// Like [`CVec3::from_parts`] but rejects NaN and infinite components.
    pub fn try_from_parts(re: [f64; 3], im: [f64; 3]) -> Result<Self, CompositionError> {
        let v = Self::from_parts(re, im);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(CompositionError::NonFinite)
        }
    }

    pub fn components(&self) -> [CScalar; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_components(c: [CScalar; 3]) -> Self {
        CVec3 {
            x: c[0],
            y: c[1],
            z: c[2],
        }
    }

    pub fn re(&self) -> [f64; 3] {
        [self.x.re, self.y.re, self.z.re]
    }

    pub fn im(&self) -> [f64; 3] {
        [self.x.im, self.y.im, self.z.im]
    }

    pub fn is_real(&self) -> bool {
        self.im() == [0.0; 3]
    }

    pub fn is_finite(&self) -> bool {
        self.components().iter().all(|c| c.is_finite())
    }

    /// Real parts, or `None` when any imaginary part is nonzero.
    pub fn to_real(&self) -> Option<[f64; 3]> {
        self.is_real().then(|| self.re())
    }

    pub fn scale(&self, s: CScalar) -> CVec3 {
        scale(s, *self)
    }

    pub fn scale_real(&self, s: f64) -> CVec3 {
        CVec3 {
            x: self.x * s,
            y: self.y * s,
            z: self.z * s,
        }
    }

    pub fn dot(&self, other: &CVec3) -> CScalar {
        dot_bilinear(*self, *other)
    }

    pub fn cross(&self, other: &CVec3) -> CVec3 {
        cross(*self, *other)
    }

    pub fn norm_hermitian(&self) -> f64 {
        norm_hermitian(*self)
    }
}

impl From<[f64; 3]> for CVec3 {
    fn from(v: [f64; 3]) -> Self {
        CVec3::real(v[0], v[1], v[2])
    }
}

impl Add for CVec3 {
    type Output = CVec3;
    fn add(self, rhs: CVec3) -> CVec3 {
        CVec3 {
            x: self.x + rhs.x,
            y: self.y + rhs.y,
            z: self.z + rhs.z,
        }
    }
}

impl Sub for CVec3 {
    type Output = CVec3;
    fn sub(self, rhs: CVec3) -> CVec3 {
        CVec3 {
            x: self.x - rhs.x,
            y: self.y - rhs.y,
            z: self.z - rhs.z,
        }
    }
}

impl Neg for CVec3 {
    type Output = CVec3;
    fn neg(self) -> CVec3 {
        CVec3 {
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }
}

impl Mul<CVec3> for CScalar {
    type Output = CVec3;
    fn mul(self, rhs: CVec3) -> CVec3 {
        scale(self, rhs)
    }
}

impl fmt::Display for CVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

pub fn add(a: CVec3, b: CVec3) -> CVec3 {
    a + b
}

pub fn sub(a: CVec3, b: CVec3) -> CVec3 {
    a - b
}

pub fn neg(a: CVec3) -> CVec3 {
    -a
}

pub fn scale(s: CScalar, a: CVec3) -> CVec3 {
    CVec3 {
        x: s * a.x,
        y: s * a.y,
        z: s * a.z,
    }
}

/// `Σ aₖ bₖ` with no conjugation.
pub fn dot_bilinear(a: CVec3, b: CVec3) -> CScalar {
    a.x * b.x + a.y * b.y + a.z * b.z
}

pub fn cross(a: CVec3, b: CVec3) -> CVec3 {
    CVec3 {
        x: a.y * b.z - a.z * b.y,
        y: a.z * b.x - a.x * b.z,
        z: a.x * b.y - a.y * b.x,
    }
}

/// `√(Σ |aₖ|²)`.
pub fn norm_hermitian(a: CVec3) -> f64 {
    a.components()
        .iter()
        .map(|c| c.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Principal square root of the bilinear self-dot.
pub fn magnitude_bilinear(a: CVec3) -> CScalar {
    principal_sqrt(dot_bilinear(a, a))
}

/// Square root with the branch cut on the negative real axis. The result has
/// nonnegative real part, and nonnegative imaginary part when the real part
/// is zero.
pub fn principal_sqrt(z: CScalar) -> CScalar {
    // -0.0 imaginary parts would otherwise select the lower side of the cut
    let z = Complex64::new(z.re, if z.im == 0.0 { 0.0 } else { z.im });
    let r = z.sqrt();
    if r.re == 0.0 && r.im < 0.0 {
        Complex64::new(0.0, -r.im)
    } else {
        r
    }
}

/// Speed of light `c > 0` for a family of velocities.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct LightSpeed(f64);

impl LightSpeed {
    /// Natural units, `c = 1`.
    pub const UNIT: LightSpeed = LightSpeed(1.0);

    pub fn new(c: f64) -> Result<Self, CompositionError> {
        if c.is_finite() && c > 0.0 {
            Ok(LightSpeed(c))
        } else {
            Err(CompositionError::InvalidLightSpeed(c))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// Largest speed accepted by [`Velocity::new`].
    pub fn speed_limit(self) -> f64 {
        (1.0 - SUBLUMINAL_MARGIN) * self.0
    }
}

impl Default for LightSpeed {
    fn default() -> Self {
        LightSpeed::UNIT
    }
}

impl TryFrom<f64> for LightSpeed {
    type Error = CompositionError;
    fn try_from(c: f64) -> Result<Self, Self::Error> {
        LightSpeed::new(c)
    }
}

impl From<LightSpeed> for f64 {
    fn from(c: LightSpeed) -> f64 {
        c.0
    }
}

/// Real subluminal velocity tied to a light-speed context.
///
/// Construction enforces `‖v‖ ≤ (1 − 1e−12) c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Velocity {
    v: [f64; 3],
    ctx: LightSpeed,
}

impl Velocity {
    pub fn new(v: [f64; 3], ctx: LightSpeed) -> Result<Self, CompositionError> {
        if !v.iter().all(|x| x.is_finite()) {
            return Err(CompositionError::NonFinite);
        }
        let speed = norm3(v);
        let limit = ctx.speed_limit();
        if speed > limit {
            return Err(CompositionError::Superluminal {
                speed,
                limit,
                c: ctx.get(),
            });
        }
        Ok(Velocity { v, ctx })
    }

    pub fn from_cvec(v: CVec3, ctx: LightSpeed) -> Result<Self, CompositionError> {
        if !v.is_finite() {
            return Err(CompositionError::NonFinite);
        }
        let re = v.to_real().ok_or(CompositionError::ComplexVelocity)?;
        Velocity::new(re, ctx)
    }

    pub fn zero(ctx: LightSpeed) -> Self {
        Velocity { v: [0.0; 3], ctx }
    }

    /// Skips the speed check. Results of Einstein addition are subluminal
    /// in exact arithmetic but may land inside the rejection margin.
    pub(crate) fn new_unchecked(v: [f64; 3], ctx: LightSpeed) -> Self {
        Velocity { v, ctx }
    }

    pub fn components(&self) -> [f64; 3] {
        self.v
    }

    pub fn ctx(&self) -> LightSpeed {
        self.ctx
    }

    pub fn speed(&self) -> f64 {
        norm3(self.v)
    }

    pub fn to_cvec(&self) -> CVec3 {
        CVec3::from(self.v)
    }

    pub fn neg(&self) -> Velocity {
        Velocity {
            v: [-self.v[0], -self.v[1], -self.v[2]],
            ctx: self.ctx,
        }
    }
}

pub(crate) fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}
