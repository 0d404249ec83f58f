//! Ideals and the decision procedures built on Groebner bases: membership,
//! membership in a power, emptiness of the variety, radical membership and
//! Krull dimension.

mod groebner;
mod minors;

use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering as AtomicOrdering};

use serde::{Deserialize, Serialize};

use crate::error::{IdealError, PolyError};
use crate::monomial::MonomialOrder;
use crate::poly::{Polynomial, Ring};

pub use minors::{minors_ideal, PolyMatrix};

/// Generators in a common ring together with the order used for bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    order: MonomialOrder,
}

impl Ideal {
    /// Zero generators are dropped. Panics if generators disagree on the ring.
    pub fn new(ring: Ring, gens: impl IntoIterator<Item = Polynomial>) -> Self {
        Self::try_new(ring, gens).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn try_new(ring: Ring, gens: impl IntoIterator<Item = Polynomial>) -> Result<Self, IdealError> {
        let mut out = Vec::new();
        for g in gens {
            if g.ring() != ring {
                return Err(crate::error::PolyError::RingMismatch {
                    left_vars: ring.nvars,
                    left_field: ring.field,
                    right_vars: g.nvars(),
                    right_field: g.field(),
                }
                .into());
            }
            if !g.is_zero() {
                out.push(g);
            }
        }
        Ok(Ideal {
            ring,
            gens: out,
            order: MonomialOrder::Grevlex,
        })
    }

    pub fn with_order(mut self, order: MonomialOrder) -> Self {
        self.order = order;
        self
    }

    pub fn unit(ring: Ring) -> Self {
        Ideal::new(ring, [ring.one()])
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// `self + other`.
    pub fn sum(&self, other: &Ideal) -> Ideal {
        assert_eq!(self.ring, other.ring);
        Ideal {
            ring: self.ring,
            gens: self.gens.iter().chain(&other.gens).cloned().collect(),
            order: self.order,
        }
    }

    pub fn with_generator(&self, g: Polynomial) -> Ideal {
        self.sum(&Ideal::new(self.ring, [g]))
    }

    /// Generators of `I^k`: every product of `k` generators taken with
    /// repetition, duplicates removed.
    pub fn power(&self, k: u32) -> Ideal {
        if k == 0 {
            return Ideal::unit(self.ring).with_order(self.order);
        }
        let n = self.gens.len();
        let mut products: Vec<Polynomial> = Vec::new();
        // nondecreasing index tuples of length k
        let mut idx = vec![0usize; k as usize];
        if n > 0 {
            loop {
                let mut p = self.ring.one();
                for &i in &idx {
                    p = &p * &self.gens[i];
                }
                if !p.is_zero() && !products.contains(&p) {
                    products.push(p);
                }
                let Some(pos) = (0..idx.len()).rev().find(|&t| idx[t] + 1 < n) else {
                    break;
                };
                let v = idx[pos] + 1;
                for slot in &mut idx[pos..] {
                    *slot = v;
                }
            }
        }
        Ideal {
            ring: self.ring,
            gens: products,
            order: self.order,
        }
    }

    /// The same generators in `extra` more trailing variables.
    pub fn extend_vars(&self, extra: usize) -> Ideal {
        Ideal {
            ring: self.ring.extended(extra),
            gens: self.gens.iter().map(|g| g.extend_vars(extra)).collect(),
            order: self.order,
        }
    }
}

/// A reduced Groebner basis with the order and ideal it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    basis: Vec<Polynomial>,
    order: MonomialOrder,
    source: Ideal,
}

impl GroebnerBasis {
    /// Elements sorted by leading monomial, largest first; all monic.
    pub fn elements(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn ideal(&self) -> &Ideal {
        &self.source
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_unit()
    }

    /// Remainder of multivariate division; zero iff `p` is in the ideal.
    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        assert_eq!(p.ring(), self.source.ring, "normal form across rings");
        let ring = self.source.ring;
        let basis: Vec<_> = self
            .basis
            .iter()
            .map(|g| groebner::to_terms(g, self.order))
            .collect();
        let r = groebner::reduce(ring.field, self.order, groebner::to_terms(p, self.order), &basis);
        groebner::from_terms(ring, r)
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Re-checks reducedness and that every S-polynomial reduces to zero.
    pub fn verify(&self) -> Result<(), String> {
        let basis: Vec<_> = self
            .basis
            .iter()
            .map(|g| groebner::to_terms(g, self.order))
            .collect();
        groebner::verify(self.source.ring.field, self.order, &basis)
    }
}

/// Dimension of a variety; `Empty` when the ideal is the unit ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dimension {
    Empty,
    #[serde(untagged)]
    Finite(usize),
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Empty => write!(f, "empty"),
            Dimension::Finite(d) => write!(f, "{d}"),
        }
    }
}

static AUDIT: AtomicBool = AtomicBool::new(false);
static AUDITED: AtomicUsize = AtomicUsize::new(0);

/// Process-wide switch that makes every Groebner computation re-verify its
/// output before returning it. A failed check panics.
pub mod audit {
    use super::*;

    pub fn enable() {
        AUDIT.store(true, AtomicOrdering::SeqCst);
    }

    pub fn disable() {
        AUDIT.store(false, AtomicOrdering::SeqCst);
    }

    pub fn is_enabled() -> bool {
        AUDIT.load(AtomicOrdering::SeqCst)
    }

    /// Number of bases verified since process start.
    pub fn verified_count() -> usize {
        AUDITED.load(AtomicOrdering::SeqCst)
    }
}

/// Entry point for all ideal computations, carrying the optional degree
/// guardrail.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Engine {
    max_degree: Option<u32>,
}

impl Engine {
    pub fn new() -> Self {
        Engine::default()
    }

    /// Aborts any Groebner run that produces a polynomial of total degree
    /// above `bound`.
    pub fn with_max_degree(bound: Option<u32>) -> Self {
        Engine { max_degree: bound }
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.max_degree
    }

    pub fn groebner(&self, ideal: &Ideal) -> Result<GroebnerBasis, IdealError> {
        let terms = groebner::buchberger(ideal.ring, ideal.order, &ideal.gens, self.max_degree)?;
        if audit::is_enabled() {
            if let Err(e) = groebner::verify(ideal.ring.field, ideal.order, &terms) {
                panic!("Groebner basis audit failed: {e}");
            }
            AUDITED.fetch_add(1, AtomicOrdering::SeqCst);
        }
        let basis = terms
            .into_iter()
            .map(|t| groebner::from_terms(ideal.ring, t))
            .collect();
        Ok(GroebnerBasis {
            basis,
            order: ideal.order,
            source: ideal.clone(),
        })
    }

    pub fn contains(&self, ideal: &Ideal, p: &Polynomial) -> Result<bool, IdealError> {
        if p.is_zero() {
            return Ok(true);
        }
        Ok(self.groebner(ideal)?.contains(p))
    }

    /// `p ∈ I^k`, testing against the expanded generators of the power.
    pub fn power_contains(&self, p: &Polynomial, ideal: &Ideal, k: u32) -> Result<bool, IdealError> {
        if k == 0 {
            return Err(IdealError::ZeroPower);
        }
        self.contains(&ideal.power(k), p)
    }

    /// `V(I) = ∅` over the algebraic closure, i.e. `1 ∈ I`.
    pub fn is_empty(&self, ideal: &Ideal) -> Result<bool, IdealError> {
        Ok(self.groebner(ideal)?.is_unit())
    }

    /// `g ∈ √I` via the Rabinowitsch trick: `1 ∈ I + (1 - t·g)` with a
    /// fresh variable `t`.
    pub fn radical_contains(&self, g: &Polynomial, ideal: &Ideal) -> Result<bool, IdealError> {
        if g.is_zero() {
            return Ok(true);
        }
        let gb = self.groebner(ideal)?;
        self.radical_contains_in(g, &gb)
    }

    /// As [`Engine::radical_contains`], reusing a basis of the ideal. The
    /// Rabinowitsch ideal is seeded with the reduced basis, which is much
    /// cheaper than starting from the original generators.
    pub fn radical_contains_in(&self, g: &Polynomial, gb: &GroebnerBasis) -> Result<bool, IdealError> {
        let ring = gb.source.ring;
        if g.ring() != ring {
            return Err(PolyError::RingMismatch {
                left_vars: g.nvars(),
                left_field: g.field(),
                right_vars: ring.nvars,
                right_field: ring.field,
            }
            .into());
        }
        if g.is_zero() || gb.is_unit() || gb.contains(g) {
            return Ok(true);
        }
        let n = ring.nvars;
        let extended = Ideal::try_new(ring, gb.elements().to_vec())?.extend_vars(1);
        let t = extended.ring.var(n);
        let rabinowitsch = &extended.ring.one() - &(&t * &g.extend_vars(1));
        self.is_empty(&extended.with_generator(rabinowitsch))
    }

    /// Largest set of variables containing the support of no leading monomial
    /// of a Groebner basis.
    pub fn krull_dimension(&self, ideal: &Ideal) -> Result<Dimension, IdealError> {
        let gb = self.groebner(ideal)?;
        if gb.is_unit() {
            return Ok(Dimension::Empty);
        }
        let n = ideal.ring.nvars;
        let supports: Vec<u64> = gb
            .elements()
            .iter()
            .map(|g| {
                let (lm, _) = g.leading_term(gb.order).expect("nonzero");
                lm.support().fold(0u64, |acc, i| acc | (1 << i))
            })
            .collect();
        assert!(n < 64, "krull dimension supports fewer than 64 variables");
        let mut best = 0usize;
        for set in 0u64..(1u64 << n) {
            let size = set.count_ones() as usize;
            if size > best && supports.iter().all(|s| s & !set != 0) {
                best = size;
            }
        }
        Ok(Dimension::Finite(best))
    }

    /// `I ∩ F[x_split, ...]`, computed with the block order eliminating the
    /// first `split` variables. Generators stay in the full ring.
    pub fn eliminate(&self, ideal: &Ideal, split: usize) -> Result<Ideal, IdealError> {
        let block = ideal.clone().with_order(MonomialOrder::Block { split });
        let gb = self.groebner(&block)?;
        let first: Vec<usize> = (0..split).collect();
        let kept = gb
            .elements()
            .iter()
            .filter(|g| g.degree_in(&first) == Some(0))
            .cloned();
        Ok(Ideal::new(ideal.ring, kept).with_order(ideal.order))
    }
}
