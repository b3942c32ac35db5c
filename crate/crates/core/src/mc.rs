//! Seeded Monte Carlo validation of the channel statistics and the energy
//! bookkeeping.
//!
//! Determinism contract: all sampling uses the ChaCha8 stream cipher keyed by
//! the 64-bit user seed. Trials are split into fixed batches of 2^16; batch i
//! draws from cipher stream i, and every trial consumes exactly two uniform
//! deviates, each formed as (next_u64 >> 11) * 2^-53, a dyadic rational in
//! [0, 1). The batch layout never depends on how many worker threads run it,
//! so merged counts are bit-for-bit reproducible for a given seed; seeds
//! should come from the caller (or OS entropy the caller chose to record),
//! never be drawn silently.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::channel::{ChannelJoint, Transinformation};
use crate::copier::{MediumNoise, SourceDistribution};
use crate::energy::stable_transinformation_bits;
use crate::error::{Error, Result};
use crate::thermo::{error_rate, ThermalMedium};

/// Trials per ChaCha stream. Fixed so the trial -> stream mapping is part of
/// the output format, not a scheduling artifact.
const BATCH_TRIALS: u64 = 1 << 16;

const U64_TO_UNIT: f64 = 1.0 / 9007199254740992.0; // 2^-53

fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * U64_TO_UNIT
}

fn batch_rng(seed: u64, batch: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(batch);
    rng
}

/// Parameters of one channel-sampling run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McConfig {
    trials: u64,
    seed: u64,
    dist: SourceDistribution,
    noise: MediumNoise,
}

impl McConfig {
    pub fn new(
        trials: u64,
        seed: u64,
        dist: SourceDistribution,
        noise: MediumNoise,
    ) -> Result<Self> {
        if trials == 0 {
            return Err(Error::NoTrials);
        }
        Ok(Self {
            trials,
            seed,
            dist,
            noise,
        })
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn dist(&self) -> &SourceDistribution {
        &self.dist
    }

    pub fn noise(&self) -> &MediumNoise {
        &self.noise
    }
}

/// Empirical joint counts of (source symbol, copied symbol).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChannelCounts {
    pub n00: u64,
    pub n01: u64,
    pub n10: u64,
    pub n11: u64,
    pub trials: u64,
}

/// Draws `trials` independent (X, Y) pairs: X = 1 with probability p1, Y is X
/// flipped with probability b.
pub fn simulate_channel(config: &McConfig) -> ChannelCounts {
    let p1 = config.dist.p1();
    let b = config.noise.b();
    let batches = config.trials.div_ceil(BATCH_TRIALS);
    let counts = (0..batches)
        .into_par_iter()
        .map(|batch| {
            let lo = batch * BATCH_TRIALS;
            let hi = (lo + BATCH_TRIALS).min(config.trials);
            let mut rng = batch_rng(config.seed, batch);
            let mut c = [0u64; 4];
            for _ in lo..hi {
                let x = uniform(&mut rng) < p1;
                let flip = uniform(&mut rng) < b;
                let y = x ^ flip;
                c[2 * usize::from(x) + usize::from(y)] += 1;
            }
            c
        })
        .reduce(
            || [0u64; 4],
            |a, b| [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]],
        );
    ChannelCounts {
        n00: counts[0],
        n01: counts[1],
        n10: counts[2],
        n11: counts[3],
        trials: config.trials,
    }
}

fn empirical_joint(counts: &ChannelCounts) -> ChannelJoint {
    let n = counts.trials as f64;
    ChannelJoint::new([
        [counts.n00 as f64 / n, counts.n01 as f64 / n],
        [counts.n10 as f64 / n, counts.n11 as f64 / n],
    ])
    .expect("count frequencies form a joint table")
}

/// Plug-in transinformation estimate from the empirical frequencies, with the
/// 0 log 0 := 0 convention. No bias correction is applied: at the trial
/// counts used here (>= 1e6) the O(1/N) plug-in bias sits far below the
/// sampling noise.
pub fn empirical_mutual_information(counts: &ChannelCounts) -> Transinformation {
    crate::channel::mutual_information(&empirical_joint(counts))
}

/// Analytic (delta-method) standard error of the plug-in estimate: the
/// per-sample variance of log2(p_xy / (p_x p_y)) under the empirical
/// distribution, divided by the trial count.
pub fn mutual_information_standard_error(counts: &ChannelCounts) -> f64 {
    let joint = empirical_joint(counts);
    let info = crate::channel::mutual_information(&joint).bits;
    let p = joint.probabilities();
    let px = joint.x_marginal();
    let py = joint.y_marginal();
    let mut second_moment = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            if p[i][j] == 0.0 {
                continue;
            }
            let term = (p[i][j] / (px[i] * py[j])).log2();
            second_moment += p[i][j] * term * term;
        }
    }
    ((second_moment - info * info).max(0.0) / counts.trials as f64).sqrt()
}

/// Samples the energy bookkeeping: mean medium energy before copying (thermal
/// occupation) and after (fair bits), scaled by the closed-form redundancy.
/// Returns the empirical energy per useful copied bit.
pub fn empirical_energy_audit(medium: &ThermalMedium, trials: u64, seed: u64) -> Result<f64> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let delta = medium.delta();
    if delta <= 0.0 {
        return Err(Error::OutOfRange {
            name: "delta",
            value: delta,
            requirement: "positive for energy accounting",
        });
    }
    let noise = error_rate(medium);
    let b = noise.b();
    let batches = trials.div_ceil(BATCH_TRIALS);
    let (upper_before, ones_after) = (0..batches)
        .into_par_iter()
        .map(|batch| {
            let lo = batch * BATCH_TRIALS;
            let hi = (lo + BATCH_TRIALS).min(trials);
            let mut rng = batch_rng(seed, batch);
            let mut upper = 0u64;
            let mut ones = 0u64;
            for _ in lo..hi {
                if uniform(&mut rng) < b {
                    upper += 1;
                }
                if uniform(&mut rng) < 0.5 {
                    ones += 1;
                }
            }
            (upper, ones)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let energy_before = delta * (upper_before as f64 / trials as f64);
    let energy_after = delta * (ones_after as f64 / trials as f64);
    let redundancy = 1.0 / stable_transinformation_bits(&noise);
    Ok(redundancy * (energy_after - energy_before))
}
