//! Redundancy and energy accounting: how many media a useful bit needs at a
//! given error rate, and the total energy delivered to them per useful copied
//! bit, W(beta, delta) = delta (1/2 - b) / (1 + (1-b) log2(1-b) + b log2 b).
//!
//! W is increasing in the level splitting and approaches delta/2 from above
//! for large splittings; its infimum, reached as delta -> 0, is ln(4)/beta
//! (natural log: expanding numerator and denominator in t = tanh(beta
//! delta/2) gives delta*t/2 over t^2/(2 ln 2), i.e. 2 ln 2 / beta in the
//! limit). Copying one bit therefore costs at least twice the kT ln 2 that
//! erasing one costs.

use serde::Serialize;

use crate::channel::mutual_information_symmetric;
use crate::copier::MediumNoise;
use crate::error::{Error, Result};
use crate::thermo::{error_rate, ThermalMedium};

const LN_2: f64 = std::f64::consts::LN_2;

/// Polarization below which the closed-form transinformation is replaced by
/// its series in t = 1 - 2b. Direct evaluation loses all significant digits
/// once beta * delta drops below ~1e-7; at the switch point the truncated
/// series is already accurate to O(t^6/28) ~ 1e-26 relative.
const SERIES_POLARIZATION_THRESHOLD: f64 = 1e-4;

/// Energy bookkeeping for one choice of medium, all in the units of delta.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyReport {
    /// Level splitting of the medium.
    pub delta: f64,
    /// Thermal error rate b.
    pub b: f64,
    /// Transinformation per copied symbol, in bits.
    pub info_bits: f64,
    /// Media (symbols) per useful bit, n = 1 / info_bits.
    pub redundancy_n: f64,
    /// Mean medium energy before copying, delta * b.
    pub avg_energy_before: f64,
    /// Mean medium energy after copying, delta / 2 (copies carry fair bits).
    pub avg_energy_after: f64,
    /// Energy per useful copied bit, n * (after - before). Computed in the
    /// cancellation-free quotient form delta * (1/2 - b) / info_bits; the
    /// stored before/after fields lose relative precision in their
    /// difference once beta * delta drops below ~1e-3.
    pub w_per_useful_bit: f64,
}

/// One grid point of the energy-versus-splitting curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub delta: f64,
    pub b: f64,
    pub info_bits: f64,
    pub redundancy_n: f64,
    pub w: f64,
}

/// Grid spacing for [`sweep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridSpacing {
    Linear,
    Log,
}

/// Transinformation in bits, switching to the series
/// (t^2/2 + t^4/12 + t^6/30) / ln 2 in t = 1 - 2b once the closed form would
/// cancel away.
pub(crate) fn stable_transinformation_bits(noise: &MediumNoise) -> f64 {
    let t = noise.polarization();
    if t < SERIES_POLARIZATION_THRESHOLD {
        let t2 = t * t;
        (t2 / 2.0) * (1.0 + t2 / 6.0 + t2 * t2 / 15.0) / LN_2
    } else {
        mutual_information_symmetric(noise).bits
    }
}

/// (w, info_bits) evaluated together so both come from the same branch.
fn w_and_info(delta: f64, noise: &MediumNoise) -> (f64, f64) {
    let t = noise.polarization();
    if t < SERIES_POLARIZATION_THRESHOLD {
        let t2 = t * t;
        let shape = 1.0 + t2 / 6.0 + t2 * t2 / 15.0;
        let info = (t2 / 2.0) * shape / LN_2;
        // delta * (t/2) / info, rearranged so t^2 never underflows.
        let w = LN_2 * (delta / t) / shape;
        (w, info)
    } else {
        let info = mutual_information_symmetric(noise).bits;
        (delta * (0.5 * t) / info, info)
    }
}

/// Symbols needed per useful bit at the Shannon limit, n = 1 / I(b).
/// Defined for b in [0, 1/2); at b = 1/2 the channel carries nothing.
pub fn redundancy(noise: &MediumNoise) -> Result<f64> {
    let b = noise.b();
    if b == 0.5 {
        return Err(Error::InfiniteRedundancy);
    }
    if !(0.0..0.5).contains(&b) {
        return Err(Error::OutOfRange {
            name: "b",
            value: b,
            requirement: "in [0, 1/2) for redundancy accounting",
        });
    }
    Ok(1.0 / mutual_information_symmetric(noise).bits)
}

/// Full energy bookkeeping for a thermal medium with positive splitting.
pub fn energy_report(medium: &ThermalMedium) -> Result<EnergyReport> {
    let delta = medium.delta();
    if delta <= 0.0 {
        return Err(Error::OutOfRange {
            name: "delta",
            value: delta,
            requirement: "positive for energy accounting",
        });
    }
    let noise = error_rate(medium);
    let (w, info) = w_and_info(delta, &noise);
    Ok(EnergyReport {
        delta,
        b: noise.b(),
        info_bits: info,
        redundancy_n: 1.0 / info,
        avg_energy_before: delta * noise.b(),
        avg_energy_after: 0.5 * delta,
        w_per_useful_bit: w,
    })
}

/// The infimum of W over the splitting: ln(4) / beta. Assumes beta > 0.
pub fn copy_bound(beta: f64) -> f64 {
    2.0 * LN_2 / beta
}

/// Energy curve over a splitting grid, rows in increasing delta.
pub fn sweep(
    beta: f64,
    delta_min: f64,
    delta_max: f64,
    steps: usize,
    spacing: GridSpacing,
) -> Result<Vec<SweepRow>> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::OutOfRange {
            name: "beta",
            value: beta,
            requirement: "positive and finite",
        });
    }
    if !(delta_min > 0.0 && delta_min.is_finite()) {
        return Err(Error::OutOfRange {
            name: "delta_min",
            value: delta_min,
            requirement: "positive and finite",
        });
    }
    if !(delta_max > delta_min && delta_max.is_finite()) {
        return Err(Error::OutOfRange {
            name: "delta_max",
            value: delta_max,
            requirement: "finite and greater than delta_min",
        });
    }
    if steps < 2 {
        return Err(Error::InsufficientSteps { steps });
    }
    let mut rows = Vec::with_capacity(steps);
    for i in 0..steps {
        let fraction = i as f64 / (steps - 1) as f64;
        let delta = if i == 0 {
            delta_min
        } else if i == steps - 1 {
            delta_max
        } else {
            match spacing {
                GridSpacing::Linear => delta_min + (delta_max - delta_min) * fraction,
                GridSpacing::Log => {
                    (delta_min.ln() + (delta_max.ln() - delta_min.ln()) * fraction).exp()
                }
            }
        };
        let medium = ThermalMedium::new(beta, delta).expect("validated grid parameters");
        let report = energy_report(&medium).expect("grid deltas are positive");
        rows.push(SweepRow {
            delta: report.delta,
            b: report.b,
            info_bits: report.info_bits,
            redundancy_n: report.redundancy_n,
            w: report.w_per_useful_bit,
        });
    }
    Ok(rows)
}
