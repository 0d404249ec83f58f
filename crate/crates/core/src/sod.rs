//! Index bookkeeping for the Lefschetz decompositions of the exceptional
//! divisors and the semiorthogonal decomposition of the strict transform.
//!
//! Nothing here models derived categories. Each block is a tag recording
//! which subcategory sits where and with which `O(l)` twist, as a function
//! of the codimension `d` and multiplicity `k` of each center.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlockKind {
    /// `Lpr*(D^b(X))`.
    Pullback,
    /// Left orthogonal of the twisted pullback blocks.
    LeftOrthogonal,
    /// Right orthogonal of the twisted pullback blocks.
    RightOrthogonal,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LefschetzBlock {
    pub center: usize,
    /// Subscript `l` of `A_l` (or `B_l`).
    pub index: usize,
    pub kind: BlockKind,
    /// Exponent of the `O(1)` twist.
    pub twist: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lefschetz {
    Applicable {
        /// `A_0, A_1 ⊗ O(1), ..., A_{d-k-1} ⊗ O(d-k-1)`.
        blocks: Vec<LefschetzBlock>,
        /// `B_{d-k-1} ⊗ O(1+k-d), ..., B_1 ⊗ O(-1), B_0`.
        dual_blocks: Vec<LefschetzBlock>,
    },
    NotApplicable {
        reason: String,
    },
}

/// Lefschetz and dual Lefschetz chains for the exceptional divisor over one
/// center; requires `k < d`.
pub fn lefschetz(center: usize, d: usize, k: u32) -> Lefschetz {
    let k = k as usize;
    if k >= d {
        return Lefschetz::NotApplicable {
            reason: format!("needs k < d, got k = {k}, d = {d}"),
        };
    }
    let top = d - k - 1;
    let blocks = (0..=top)
        .map(|l| LefschetzBlock {
            center,
            index: l,
            kind: if l == 0 {
                BlockKind::LeftOrthogonal
            } else {
                BlockKind::Pullback
            },
            twist: l as i64,
        })
        .collect();
    let dual_blocks = (0..=top)
        .rev()
        .map(|l| LefschetzBlock {
            center,
            index: l,
            kind: if l == 0 {
                BlockKind::RightOrthogonal
            } else {
                BlockKind::Pullback
            },
            twist: -(l as i64),
        })
        .collect();
    Lefschetz::Applicable { blocks, dual_blocks }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SodBlock {
    /// `Rτ_*(Lpr*D^b(X_center) ⊗ O(twist))`.
    Twisted { center: usize, twist: i64 },
    /// The residual component, a weakly crepant categorical resolution.
    Residual { weakly_crepant: bool },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("k < d fails at centers {offenders:?}")]
pub struct SodError {
    pub offenders: Vec<usize>,
}

/// Ordered blocks of the decomposition: per center in input order the twists
/// `k-d+1, ..., -1` ascending, then the residual component.
pub fn sod(centers: &[(usize, u32)]) -> Result<Vec<SodBlock>, SodError> {
    let offenders: Vec<usize> = centers
        .iter()
        .enumerate()
        .filter(|(_, &(d, k))| k as usize >= d)
        .map(|(i, _)| i)
        .collect();
    if !offenders.is_empty() {
        return Err(SodError { offenders });
    }
    let mut out = Vec::new();
    for (i, &(d, k)) in centers.iter().enumerate() {
        let lo = k as i64 - d as i64 + 1;
        out.extend((lo..0).map(|twist| SodBlock::Twisted { center: i, twist }));
    }
    out.push(SodBlock::Residual { weakly_crepant: true });
    Ok(out)
}

/// The twists `m` with `-d < m < 0` at which pushforward from the projective
/// bundle vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerreVanishingRecord {
    pub center: usize,
    /// Exclusive lower end, `-d`.
    pub lower: i64,
    /// Exclusive upper end, always `0`.
    pub upper: i64,
    pub twists: Vec<i64>,
}

pub fn serre_vanishing_record(center: usize, d: usize) -> SerreVanishingRecord {
    let lower = -(d as i64);
    SerreVanishingRecord {
        center,
        lower,
        upper: 0,
        twists: (lower + 1..0).collect(),
    }
}

/// Everything the categorical section of a report needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SodReport {
    pub lefschetz: Vec<Lefschetz>,
    pub decomposition: Result<Vec<SodBlock>, SodError>,
    pub vanishing: Vec<SerreVanishingRecord>,
}

impl SodReport {
    pub fn build(centers: &[(usize, u32)]) -> Self {
        SodReport {
            lefschetz: centers
                .iter()
                .enumerate()
                .map(|(i, &(d, k))| lefschetz(i, d, k))
                .collect(),
            decomposition: sod(centers),
            vanishing: centers
                .iter()
                .enumerate()
                .map(|(i, &(d, _))| serre_vanishing_record(i, d))
                .collect(),
        }
    }
}
