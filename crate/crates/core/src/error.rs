use thiserror::Error;

/// Domain errors raised by the composition operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CompositionError {
    #[error("velocities carry different light-speed contexts ({0} vs {1})")]
    MixedContext(f64, f64),
    #[error("speed {speed} is not below the admissible limit {limit} (c = {c})")]
    Superluminal { speed: f64, limit: f64, c: f64 },
    #[error("composition denominator {magnitude:e} is below tolerance")]
    DegenerateDenominator { magnitude: f64 },
    #[error("light speed must be positive and finite, got {0}")]
    InvalidLightSpeed(f64),
    #[error("non-finite component in input")]
    NonFinite,
    #[error("velocity has a nonzero imaginary part")]
    ComplexVelocity,
}

impl CompositionError {
    /// Short variant name, as printed by the command-line tool.
    pub fn name(&self) -> &'static str {
        match self {
            CompositionError::MixedContext(..) => "MixedContext",
            CompositionError::Superluminal { .. } => "Superluminal",
            CompositionError::DegenerateDenominator { .. } => "DegenerateDenominator",
            CompositionError::InvalidLightSpeed(_) => "InvalidLightSpeed",
            CompositionError::NonFinite => "NonFinite",
            CompositionError::ComplexVelocity => "ComplexVelocity",
        }
    }
}
