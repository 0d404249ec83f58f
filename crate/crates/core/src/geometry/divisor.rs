//! Divisor classes on the blow-up and the adjunction bookkeeping for the
//! canonical class of the strict transform.

use std::ops::{Add, Sub};

use crate::error::GeometryError;

/// Integer class on the basis `{π*Y, E_1, ..., E_n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    pub pullback_y: i64,
    pub exceptional: Vec<i64>,
}

/// `K = a·π*K_Y + Σ b_i E_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalClass {
    pub pullback_ky: i64,
    pub exceptional: Vec<i64>,
}

/// Class on the finer basis `{π*K_Z, π*Y, E_1, ..., E_n}` used for the
/// adjunction computation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeClass {
    pub pullback_kz: i64,
    pub pullback_y: i64,
    pub exceptional: Vec<i64>,
}

impl LatticeClass {
    pub fn zero(n: usize) -> Self {
        LatticeClass {
            pullback_kz: 0,
            pullback_y: 0,
            exceptional: vec![0; n],
        }
    }

    /// `K_{Bl_X Z} = π*K_Z + Σ (d_i - 1) E_i`.
    pub fn canonical_of_blowup(codims: &[usize]) -> Self {
        LatticeClass {
            pullback_kz: 1,
            pullback_y: 0,
            exceptional: codims.iter().map(|&d| d as i64 - 1).collect(),
        }
    }

    /// `π*Y - Σ k_i E_i`.
    pub fn strict_transform(mults: &[u32]) -> Self {
        LatticeClass {
            pullback_kz: 0,
            pullback_y: 1,
            exceptional: mults.iter().map(|&k| -(k as i64)).collect(),
        }
    }

    /// `π*K_Y = π*(K_Z + Y)`.
    pub fn pullback_canonical_of_y(n: usize) -> Self {
        LatticeClass {
            pullback_kz: 1,
            pullback_y: 1,
            exceptional: vec![0; n],
        }
    }

    pub fn exceptional_unit(n: usize, i: usize, coeff: i64) -> Self {
        let mut c = LatticeClass::zero(n);
        c.exceptional[i] = coeff;
        c
    }
}

impl Add for &LatticeClass {
    type Output = LatticeClass;

    fn add(self, rhs: &LatticeClass) -> LatticeClass {
        LatticeClass {
            pullback_kz: self.pullback_kz + rhs.pullback_kz,
            pullback_y: self.pullback_y + rhs.pullback_y,
            exceptional: self
                .exceptional
                .iter()
                .zip(&rhs.exceptional)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &LatticeClass {
    type Output = LatticeClass;

    fn sub(self, rhs: &LatticeClass) -> LatticeClass {
        LatticeClass {
            pullback_kz: self.pullback_kz - rhs.pullback_kz,
            pullback_y: self.pullback_y - rhs.pullback_y,
            exceptional: self
                .exceptional
                .iter()
                .zip(&rhs.exceptional)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscrepancyEntry {
    pub center: usize,
    pub codimension: usize,
    pub multiplicity: u32,
    /// `d - k - 1`.
    pub by_formula: i64,
    /// Coefficient of `E_i` in `(K_Bl + Ỹ) - π*K_Y`.
    pub by_lattice: i64,
}

/// Formal record, for a codimension-two center with `k = 1`, of the class of
/// the exceptional divisor of `B` in `X` as `pr*det(C) ⊗ O(Ỹ + 2E)` restricted
/// to the exceptional divisor of `Ỹ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalBlowupRecord {
    pub center: usize,
    pub det_conormal_power: i64,
    pub twist: DivisorClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionLedger {
    pub strict_transform: DivisorClass,
    pub canonical: CanonicalClass,
    pub discrepancies: Vec<DiscrepancyEntry>,
    /// The canonical-class identity presumes `Y` normal; this is never checked.
    pub assumes_normal: bool,
    pub blowup_records: Vec<ExceptionalBlowupRecord>,
}

/// Computes the discrepancy of every center twice, from the closed formula and
/// from lattice adjunction, and fails if the two disagree.
pub fn adjunction_ledger(centers: &[(usize, u32)]) -> Result<AdjunctionLedger, GeometryError> {
    let n = centers.len();
    let codims: Vec<usize> = centers.iter().map(|c| c.0).collect();
    let mults: Vec<u32> = centers.iter().map(|c| c.1).collect();

    let strict = LatticeClass::strict_transform(&mults);
    let k_strict = &LatticeClass::canonical_of_blowup(&codims) + &strict;
    let relative = &k_strict - &LatticeClass::pullback_canonical_of_y(n);
    if relative.pullback_kz != 0 || relative.pullback_y != 0 {
        return Err(GeometryError::Internal(
            "adjunction left a pulled-back term in the relative canonical class".into(),
        ));
    }

    let mut discrepancies = Vec::with_capacity(n);
    for (i, &(d, k)) in centers.iter().enumerate() {
        let by_formula = d as i64 - k as i64 - 1;
        let by_lattice = relative.exceptional[i];
        if by_formula != by_lattice {
            return Err(GeometryError::Internal(format!(
                "discrepancy mismatch at center {i}: formula {by_formula}, lattice {by_lattice}"
            )));
        }
        discrepancies.push(DiscrepancyEntry {
            center: i,
            codimension: d,
            multiplicity: k,
            by_formula,
            by_lattice,
        });
    }

    let blowup_records = if mults.iter().all(|&k| k == 1) {
        centers
            .iter()
            .enumerate()
            .filter(|(_, c)| c.0 == 2)
            .map(|(i, _)| {
                let twist = &strict + &LatticeClass::exceptional_unit(n, i, 2);
                ExceptionalBlowupRecord {
                    center: i,
                    det_conormal_power: 1,
                    twist: DivisorClass {
                        pullback_y: twist.pullback_y,
                        exceptional: twist.exceptional,
                    },
                }
            })
            .collect()
    } else {
        Vec::new()
    };

    Ok(AdjunctionLedger {
        strict_transform: DivisorClass {
            pullback_y: strict.pullback_y,
            exceptional: strict.exceptional.clone(),
        },
        canonical: CanonicalClass {
            pullback_ky: 1,
            exceptional: relative.exceptional,
        },
        discrepancies,
        assumes_normal: true,
        blowup_records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toy_discrepancies() {
        // d = 4, k = 2
        let l = adjunction_ledger(&[(4, 2)]).unwrap();
        assert_eq!(l.discrepancies[0].by_lattice, 1);
        assert_eq!(l.strict_transform.exceptional, vec![-2]);
        for n in 1..6usize {
            let l = adjunction_ledger(&[(n, 1)]).unwrap();
            assert_eq!(l.canonical.exceptional, vec![n as i64 - 2]);
        }
        let crepant = adjunction_ledger(&[(2, 1)]).unwrap();
        assert_eq!(crepant.discrepancies[0].by_formula, 0);
    }

    #[test]
    fn codimension_two_record() {
        let l = adjunction_ledger(&[(2, 1), (3, 1)]).unwrap();
        assert_eq!(l.blowup_records.len(), 1);
        // Ỹ + 2E_1 = π*Y + E_1 - E_2
        assert_eq!(l.blowup_records[0].twist.pullback_y, 1);
        assert_eq!(l.blowup_records[0].twist.exceptional, vec![1, -1]);
        assert!(adjunction_ledger(&[(2, 2)]).unwrap().blowup_records.is_empty());
    }

    #[test]
    fn formula_matches_lattice_everywhere() {
        for d in 1..=12usize {
            for k in 1..=12u32 {
                let l = adjunction_ledger(&[(d, k), (12, 1)]).unwrap();
                assert_eq!(l.discrepancies[0].by_formula, l.discrepancies[0].by_lattice);
            }
        }
    }
}
