//! The copy process viewed as a binary information channel: joint source/copy
//! statistics and the transinformation they carry.

use crate::copier::{MediumNoise, SourceDistribution};
use crate::error::{Error, Result};

/// Joint distribution P(X_i, Y_j) of the source process X and the copy
/// process Y, with both marginals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelJoint {
    p_xy: [[f64; 2]; 2],
    p_x: [f64; 2],
    p_y: [f64; 2],
}

impl ChannelJoint {
    /// Validates a 2x2 probability table (entries in [0, 1], total 1 within
    /// 1e-12) and derives the marginals.
    pub fn new(p_xy: [[f64; 2]; 2]) -> Result<Self> {
        for row in &p_xy {
            for &p in row {
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::InvalidProbability {
                        name: "joint entry",
                        value: p,
                    });
                }
            }
        }
        let sum: f64 = p_xy.iter().flatten().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::UnnormalizedDistribution { sum });
        }
        let p_x = [p_xy[0][0] + p_xy[0][1], p_xy[1][0] + p_xy[1][1]];
        let p_y = [p_xy[0][0] + p_xy[1][0], p_xy[0][1] + p_xy[1][1]];
        Ok(Self { p_xy, p_x, p_y })
    }

    pub fn probabilities(&self) -> &[[f64; 2]; 2] {
        &self.p_xy
    }

    pub fn x_marginal(&self) -> [f64; 2] {
        self.p_x
    }

    pub fn y_marginal(&self) -> [f64; 2] {
        self.p_y
    }
}

/// Transinformation (mutual information) between source and copy, in bits.
/// For binary alphabets it lies in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transinformation {
    pub bits: f64,
}

/// Joint table of one copy: correct transmission with probability 1 - b,
/// a flip with probability b, independent of the source symbol.
pub fn joint_distribution(dist: &SourceDistribution, noise: &MediumNoise) -> ChannelJoint {
    let (p0, p1, b) = (dist.p0(), dist.p1(), noise.b());
    ChannelJoint::new([[p0 * (1.0 - b), p0 * b], [p1 * b, p1 * (1.0 - b)]])
        .expect("products of probabilities form a joint table")
}

fn xlog2(p: f64) -> f64 {
    if p == 0.0 {
        0.0 // 0 log 0 := 0
    } else {
        p * p.log2()
    }
}

/// I(X,Y) = sum_ij P(X_i,Y_j) log2( P(X_i,Y_j) / (P(X_i) P(Y_j)) ), with the
/// 0 log 0 := 0 convention.
pub fn mutual_information(joint: &ChannelJoint) -> Transinformation {
    let mut bits = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let p = joint.p_xy[i][j];
            if p == 0.0 {
                continue;
            }
            bits += p * (p / (joint.p_x[i] * joint.p_y[j])).log2();
        }
    }
    Transinformation { bits }
}

/// Transinformation of a fair source through the copy channel:
/// I(b) = 1 + (1-b) log2(1-b) + b log2 b.
pub fn mutual_information_symmetric(noise: &MediumNoise) -> Transinformation {
    let b = noise.b();
    Transinformation {
        bits: 1.0 + xlog2(1.0 - b) + xlog2(b),
    }
}
