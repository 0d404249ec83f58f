//! Sparse multivariate polynomials with exact coefficients.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::PolyError;
use crate::monomial::{Monomial, MonomialOrder};
use crate::scalar::{Field, Scalar};

/// Variable count plus coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    pub nvars: usize,
    pub field: Field,
}

impl Ring {
    pub fn new(nvars: usize, field: Field) -> Self {
        Ring { nvars, field }
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial {
            ring: *self,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> Polynomial {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: Scalar) -> Polynomial {
        self.term(c, Monomial::one(self.nvars))
    }

    pub fn int(&self, n: i64) -> Polynomial {
        self.constant(self.field.from_i64(n))
    }

    pub fn var(&self, index: usize) -> Polynomial {
        assert!(index < self.nvars, "variable {index} out of range");
        self.term(self.field.one(), Monomial::var(self.nvars, index, 1))
    }

    pub fn term(&self, c: Scalar, m: Monomial) -> Polynomial {
        assert_eq!(m.nvars(), self.nvars);
        assert!(self.field.owns(&c), "coefficient from a different field");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { ring: *self, terms }
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs, combining
    /// repeated monomials.
    pub fn from_terms<I>(&self, terms: I) -> Polynomial
    where
        I: IntoIterator<Item = (Scalar, Monomial)>,
    {
        let mut p = self.zero();
        for (c, m) in terms {
            assert_eq!(m.nvars(), self.nvars);
            p.add_term(c, m);
        }
        p
    }

    /// The same field with `extra` more variables appended.
    pub fn extended(&self, extra: usize) -> Ring {
        Ring::new(self.nvars + extra, self.field)
    }
}

/// A polynomial: map from monomial to nonzero coefficient.
///
/// Terms are stored in ascending grevlex order, which fixes iteration and
/// serialization order independently of insertion history.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars
    }

    pub fn field(&self) -> Field {
        self.ring.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().next().is_some_and(Monomial::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Coefficient of the constant term, zero if absent.
    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&Monomial::one(self.nvars()))
            .cloned()
            .unwrap_or_else(|| self.field().zero())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, vars: &[usize]) -> Option<u32> {
        self.terms.keys().map(|m| m.degree_in(vars)).max()
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field().zero())
    }

    /// Terms sorted descending under `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&Monomial, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Indices of variables that occur in some term.
    pub fn variables(&self) -> Vec<usize> {
        let mut seen = vec![false; self.nvars()];
        for m in self.terms.keys() {
            for i in m.support() {
                seen[i] = true;
            }
        }
        (0..self.nvars()).filter(|&i| seen[i]).collect()
    }

    fn add_term(&mut self, c: Scalar, m: Monomial) {
        if c.is_zero() {
            return;
        }
        let field = self.ring.field;
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = field.add(existing, &c);
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(PolyError::RingMismatch {
                left_vars: self.ring.nvars,
                left_field: self.ring.field,
                right_vars: other.ring.nvars,
                right_field: other.ring.field,
            })
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(c.clone(), m.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        let field = self.ring.field;
        let mut out = self.ring.zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(field.mul(ca, cb), ma.mul(mb));
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        let field = self.ring.field;
        Polynomial {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), field.neg(c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return self.ring.zero();
        }
        let field = self.ring.field;
        Polynomial {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), field.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|(a, c)| (a.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Scales so the leading coefficient under `order` is one.
    pub fn monic(&self, order: MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.ring.field.inv(c)),
        }
    }

    /// Formal partial derivative. In characteristic `p` the exponent is read
    /// mod `p`, so `d/dx x^p = 0`.
    pub fn partial(&self, index: usize) -> Result<Polynomial, PolyError> {
        if index >= self.nvars() {
            return Err(PolyError::VariableOutOfRange {
                index,
                nvars: self.nvars(),
            });
        }
        let field = self.ring.field;
        let mut out = self.ring.zero();
        for (m, c) in &self.terms {
            let e = m.exponent(index);
            if e == 0 {
                continue;
            }
            out.add_term(field.mul_int(c, e as u64), m.with_exponent(index, e - 1));
        }
        Ok(out)
    }

    /// All first partials, in variable order.
    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.nvars())
            .map(|i| self.partial(i).expect("index in range"))
            .collect()
    }

    /// Replaces each variable `i` by `images[i]` (or leaves it when `None`).
    /// All images must live in the same ring, which becomes the result's ring.
    pub fn substitute(&self, target: Ring, images: &[Option<Polynomial>]) -> Result<Polynomial, PolyError> {
        if images.len() != self.nvars() {
            return Err(PolyError::VariableOutOfRange {
                index: images.len(),
                nvars: self.nvars(),
            });
        }
        let mut identity = Vec::with_capacity(images.len());
        for (i, img) in images.iter().enumerate() {
            match img {
                Some(p) => {
                    if p.ring != target {
                        return Err(PolyError::RingMismatch {
                            left_vars: target.nvars,
                            left_field: target.field,
                            right_vars: p.nvars(),
                            right_field: p.field(),
                        });
                    }
                    identity.push(p.clone());
                }
                None => {
                    if i >= target.nvars || target.field != self.field() {
                        return Err(PolyError::VariableOutOfRange {
                            index: i,
                            nvars: target.nvars,
                        });
                    }
                    identity.push(target.var(i));
                }
            }
        }
        let mut power_cache: Vec<Vec<Polynomial>> = vec![vec![target.one()]; identity.len()];
        let mut out = target.zero();
        for (m, c) in &self.terms {
            let mut t = target.constant(c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut power_cache[i];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &identity[i];
                    cache.push(next);
                }
                t = &t * &cache[e as usize];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Sum of the terms whose degree in `vars` is exactly `k`.
    pub fn graded_part(&self, vars: &[usize], k: u32) -> Polynomial {
        Polynomial {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree_in(vars) == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Exact division by `x_index^k`; `None` if some term has a smaller power.
    pub fn divide_by_var_power(&self, index: usize, k: u32) -> Option<Polynomial> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(index);
            if e < k {
                return None;
            }
            terms.insert(m.with_exponent(index, e - k), c.clone());
        }
        Some(Polynomial {
            ring: self.ring,
            terms,
        })
    }

    /// Embeds into a ring with `extra` more trailing variables.
    pub fn extend_vars(&self, extra: usize) -> Polynomial {
        Polynomial {
            ring: self.ring.extended(extra),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.extended(extra), c.clone()))
                .collect(),
        }
    }

    /// Re-indexes onto the variables in `keep` (in that order). Fails if a
    /// dropped variable occurs.
    pub fn restrict_vars(&self, keep: &[usize]) -> Option<Polynomial> {
        let ring = Ring::new(keep.len(), self.field());
        let mut out = ring.zero();
        for (m, c) in &self.terms {
            if m.degree_in(keep) != m.degree() {
                return None;
            }
            let exps: Vec<u32> = keep.iter().map(|&i| m.exponent(i)).collect();
            out.add_term(c.clone(), Monomial::new(exps));
        }
        Some(out)
    }

    /// Canonical text: terms descending under `order`, explicit `*`, `^` for
    /// powers, integer or `a/b` coefficients.
    pub fn render(&self, names: &[String], order: MonomialOrder) -> String {
        assert_eq!(names.len(), self.nvars(), "one name per variable");
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.sorted_terms(order).into_iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (v, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[v].clone()),
                    _ => factors.push(format!("{}^{}", names[v], e)),
                }
            }
            let _ = write!(out, "{}", factors.join("*"));
        }
        out
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;

            /// Panics on ring mismatch; use the `checked_` form for fallible input.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl std::ops::$trait<&Polynomial> for Polynomial {
            type Output = Polynomial;

            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}
