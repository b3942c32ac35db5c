//! Thermal statistics of the two-level medium: Gibbs occupation at inverse
//! temperature beta and the identification of the copy error rate with the
//! upper-level population.

use crate::copier::MediumNoise;
use crate::error::{Error, Result};

/// A two-level medium in equilibrium: inverse temperature `beta`, level
/// splitting `delta` = E1 - E0 >= 0, and ground energy `e0` (default 0; all
/// energy accounting uses the splitting only).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalMedium {
    beta: f64,
    delta: f64,
    e0: f64,
}

impl ThermalMedium {
    pub fn new(beta: f64, delta: f64) -> Result<Self> {
        Self::with_ground_energy(beta, delta, 0.0)
    }

    pub fn with_ground_energy(beta: f64, delta: f64, e0: f64) -> Result<Self> {
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::OutOfRange {
                name: "beta",
                value: beta,
                requirement: "positive and finite",
            });
        }
        if delta.is_nan() || delta < 0.0 {
            return Err(Error::NegativeLevelSplitting { delta });
        }
        if !e0.is_finite() {
            return Err(Error::OutOfRange {
                name: "e0",
                value: e0,
                requirement: "finite",
            });
        }
        Ok(Self { beta, delta, e0 })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn ground_energy(&self) -> f64 {
        self.e0
    }

    pub fn excited_energy(&self) -> f64 {
        self.e0 + self.delta
    }

    /// The dimensionless product beta * delta that all occupation formulas
    /// depend on.
    pub fn beta_delta(&self) -> f64 {
        self.beta * self.delta
    }
}

/// Level populations of a thermal two-level system; p0 + p1 = 1 and p1 <= 1/2
/// for a nonnegative splitting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Occupation {
    p0: f64,
    p1: f64,
}

impl Occupation {
    pub fn p0(&self) -> f64 {
        self.p0
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }
}

/// Gibbs populations p0 = 1/(1 + e^{-beta delta}), p1 = e^{-beta delta}/(1 +
/// e^{-beta delta}), evaluated through e^{-beta delta} so nothing overflows
/// no matter how large beta * delta gets.
pub fn occupation(medium: &ThermalMedium) -> Occupation {
    let weight = (-medium.beta_delta()).exp();
    let p1 = weight / (1.0 + weight);
    Occupation { p0: 1.0 - p1, p1 }
}

/// The copy error rate of a thermal medium: b equals the upper-level
/// population, which lies in (0, 1/2] for delta >= 0.
pub fn error_rate(medium: &ThermalMedium) -> MediumNoise {
    let p1 = occupation(medium).p1();
    // tanh keeps full relative precision in 1 - 2b even where p1 rounds
    // to exactly 1/2.
    let polarization = (0.5 * medium.beta_delta()).tanh();
    MediumNoise::from_parts(p1, polarization)
}

/// Level splitting that produces a given thermal error rate at inverse
/// temperature beta: delta = ln((1-b)/b) / beta.
///
/// For b above 1/4 the ratio is evaluated as 2 atanh(1 - 2b) from the stored
/// polarization, which keeps the round trip with [`error_rate`] accurate to a
/// few ulps even for beta * delta down to 1e-6; for smaller b the direct
/// logarithms are already well conditioned.
pub fn delta_for_error_rate(beta: f64, noise: &MediumNoise) -> Result<f64> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::OutOfRange {
            name: "beta",
            value: beta,
            requirement: "positive and finite",
        });
    }
    let b = noise.b();
    if b == 0.0 {
        return Err(Error::NoThermalInverse {
            b,
            reason: "a zero error rate needs an infinite level splitting",
        });
    }
    if b > 0.5 {
        return Err(Error::NoThermalInverse {
            b,
            reason: "rates above 1/2 would need a negative splitting, outside the thermal branch",
        });
    }
    let beta_delta = if b > 0.25 {
        2.0 * noise.polarization().atanh()
    } else {
        (-b).ln_1p() - b.ln()
    };
    Ok(beta_delta / beta)
}
