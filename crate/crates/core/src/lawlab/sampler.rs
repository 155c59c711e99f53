use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::LawError;
use crate::algebra3::{norm3, CVec3, LightSpeed};

/// Largest tilt from the common axis in the near-parallel regime, radians.
pub const NEAR_PARALLEL_MAX_ANGLE: f64 = 1e-3;

/// Lower speed bound of the near-lightspeed regime, as a fraction of `c`.
pub const NEAR_LIGHTSPEED_MIN_BETA: f64 = 0.99;

// keeps products like `r * unit` from rounding past the cap
const CAP_SHRINK: f64 = 1.0 - 4.0 * f64::EPSILON;

/// Geometry of the sampled tuples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// Independent velocities, uniform in the ball of radius `max_beta·c`.
    UniformBall,
    /// Independent velocities with speeds in `[0.99, max_beta]·c`.
    NearLightspeed,
    /// Velocities within 1e−3 rad of a shared random axis.
    NearParallel,
    /// Velocities along one shared random axis, either sense.
    Collinear,
    /// Velocities along the axes of a random orthonormal frame.
    Orthogonal,
    /// Complex components, each uniform in the disc of radius `max_beta·c`.
    ComplexDisc,
}

impl Regime {
    pub const ALL: [Regime; 6] = [
        Regime::UniformBall,
        Regime::NearLightspeed,
        Regime::NearParallel,
        Regime::Collinear,
        Regime::Orthogonal,
        Regime::ComplexDisc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Regime::UniformBall => "uniform_ball",
            Regime::NearLightspeed => "near_lightspeed",
            Regime::NearParallel => "near_parallel",
            Regime::Collinear => "collinear",
            Regime::Orthogonal => "orthogonal",
            Regime::ComplexDisc => "complex_disc",
        }
    }

    pub fn is_complex(self) -> bool {
        self == Regime::ComplexDisc
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Regime {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Regime::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown regime `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub seed: u64,
    pub count: u64,
    pub c: LightSpeed,
    /// Speed cap as a fraction of `c`, in `(0, 1)`.
    pub max_beta: f64,
    pub regime: Regime,
}

impl SamplerConfig {
    pub const DEFAULT_MAX_BETA: f64 = 0.999;

    pub fn new(seed: u64, count: u64) -> Self {
        SamplerConfig {
            seed,
            count,
            c: LightSpeed::UNIT,
            max_beta: Self::DEFAULT_MAX_BETA,
            regime: Regime::UniformBall,
        }
    }

    pub fn with_regime(mut self, regime: Regime) -> Self {
        self.regime = regime;
        self
    }

    pub fn with_light_speed(mut self, c: LightSpeed) -> Self {
        self.c = c;
        self
    }

    pub fn with_max_beta(mut self, max_beta: f64) -> Self {
        self.max_beta = max_beta;
        self
    }

    pub fn with_count(mut self, count: u64) -> Self {
        self.count = count;
        self
    }

    pub fn validate(&self) -> Result<(), LawError> {
        if self.max_beta > 0.0 && self.max_beta < 1.0 {
            Ok(())
        } else {
            Err(LawError::InvalidMaxBeta(self.max_beta))
        }
    }

    fn speed_cap(&self) -> f64 {
        self.max_beta * self.c.get() * CAP_SHRINK
    }
}

/// One vector per index, `cfg.count` in total.
pub fn sample(cfg: &SamplerConfig) -> Vec<CVec3> {
    (0..cfg.count).map(|i| sample_tuple(cfg, i, 1)[0]).collect()
}

/// The `index`-th tuple of `arity` vectors. Depends only on `cfg` and
/// `index`.
pub fn sample_tuple(cfg: &SamplerConfig, index: u64, arity: usize) -> Vec<CVec3> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index);
    let cap = cfg.speed_cap();
    match cfg.regime {
        Regime::UniformBall => (0..arity)
            .map(|_| scaled(unit_vector(&mut rng), ball_speed(&mut rng, cap)))
            .collect(),
        Regime::NearLightspeed => {
            let lo = (NEAR_LIGHTSPEED_MIN_BETA * cfg.c.get()).min(cap);
            (0..arity)
                .map(|_| {
                    let speed = lo + (cap - lo) * rng.random::<f64>();
                    scaled(unit_vector(&mut rng), speed)
                })
                .collect()
        }
        Regime::Collinear => {
            let axis = unit_vector(&mut rng);
            (0..arity)
                .map(|_| scaled(axis, cap * (2.0 * rng.random::<f64>() - 1.0)))
                .collect()
        }
        Regime::Orthogonal => {
            let frame = orthonormal_frame(&mut rng);
            (0..arity)
                .map(|i| scaled(frame[i % 3], ball_speed(&mut rng, cap)))
                .collect()
        }
        Regime::NearParallel => {
            let [axis, e1, e2] = orthonormal_frame(&mut rng);
            (0..arity)
                .map(|_| {
                    let tilt = NEAR_PARALLEL_MAX_ANGLE * rng.random::<f64>();
                    let phi = TAU * rng.random::<f64>();
                    let (st, ct) = tilt.sin_cos();
                    let (sp, cp) = phi.sin_cos();
                    let dir = [0, 1, 2].map(|k| ct * axis[k] + st * (cp * e1[k] + sp * e2[k]));
                    scaled(normalized(dir), ball_speed(&mut rng, cap))
                })
                .collect()
        }
        Regime::ComplexDisc => (0..arity)
            .map(|_| {
                let z = [(); 3].map(|_| {
                    let r = cap * rng.random::<f64>().sqrt();
                    Complex64::from_polar(r, TAU * rng.random::<f64>())
                });
                CVec3::from_components(z)
            })
            .collect(),
    }
}

/// Radius with density ∝ r² on `[0, cap)`.
fn ball_speed(rng: &mut ChaCha8Rng, cap: f64) -> f64 {
    cap * rng.random::<f64>().cbrt()
}

fn unit_vector(rng: &mut ChaCha8Rng) -> [f64; 3] {
    let z = 2.0 * rng.random::<f64>() - 1.0;
    let phi = TAU * rng.random::<f64>();
    let rho = (1.0 - z * z).max(0.0).sqrt();
    normalized([rho * phi.cos(), rho * phi.sin(), z])
}

fn normalized(v: [f64; 3]) -> [f64; 3] {
    let n = norm3(v);
    v.map(|x| x / n)
}

fn scaled(dir: [f64; 3], speed: f64) -> CVec3 {
    CVec3::from(dir.map(|x| x * speed))
}

fn orthonormal_frame(rng: &mut ChaCha8Rng) -> [[f64; 3]; 3] {
    let n1 = unit_vector(rng);
    let n2 = loop {
        let d = unit_vector(rng);
        let along = d[0] * n1[0] + d[1] * n1[1] + d[2] * n1[2];
        let perp = [0, 1, 2].map(|k| d[k] - along * n1[k]);
        if norm3(perp) > 1e-3 {
            break normalized(perp);
        }
    };
    let n3 = [
        n1[1] * n2[2] - n1[2] * n2[1],
        n1[2] * n2[0] - n1[0] * n2[2],
        n1[0] * n2[1] - n1[1] * n2[0],
    ];
    [n1, n2, normalized(n3)]
}
