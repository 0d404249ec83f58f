use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

pub type Exponents = SmallVec<[u32; 8]>;

/// A power product `x_0^e_0 * ... * x_{n-1}^e_{n-1}` with cached total degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn new(exps: impl Into<Exponents>) -> Self {
        let exps = exps.into();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn var(nvars: usize, index: usize, power: u32) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[index] = power;
        m.degree = power;
        m
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.exps[index]
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Sum of the exponents at the given positions.
    pub fn degree_in(&self, vars: &[usize]) -> u32 {
        vars.iter().map(|&i| self.exps[i]).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, provided `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect::<Exponents>(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, _)| i)
    }

    pub(crate) fn with_exponent(&self, index: usize, value: u32) -> Monomial {
        let mut exps = self.exps.clone();
        exps[index] = value;
        Monomial::new(exps)
    }

    pub(crate) fn extended(&self, extra: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps.extend(std::iter::repeat_n(0, extra));
        Monomial {
            exps,
            degree: self.degree,
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// Canonical storage order of a polynomial's terms is graded reverse
/// lexicographic.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex(&self.exps, &other.exps)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A term order on monomials of a fixed variable count.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
    /// Grevlex on variables `[0, split)`, ties broken by grevlex on the rest.
    /// Eliminates the first block.
    Block {
        split: usize,
    },
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => grevlex(&a.exps, &b.exps),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Block { split } => {
                let split = split.min(a.exps.len());
                grevlex(&a.exps[..split], &b.exps[..split])
                    .then_with(|| grevlex(&a.exps[split..], &b.exps[split..]))
            }
        }
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(Exponents::from_slice(e))
    }

    #[test]
    fn grevlex_examples() {
        let o = MonomialOrder::Grevlex;
        // x^2 > xy > y^2 > x > y > 1
        let seq = [
            m(&[2, 0]),
            m(&[1, 1]),
            m(&[0, 2]),
            m(&[1, 0]),
            m(&[0, 1]),
            m(&[0, 0]),
        ];
        for w in seq.windows(2) {
            assert_eq!(o.cmp(&w[0], &w[1]), Ordering::Greater);
        }
        // x*z^2 < y^3 in grevlex over x > y > z
        assert_eq!(o.cmp(&m(&[1, 0, 2]), &m(&[0, 3, 0])), Ordering::Less);
    }

    #[test]
    fn lex_and_block() {
        assert_eq!(
            MonomialOrder::Lex.cmp(&m(&[1, 0]), &m(&[0, 5])),
            Ordering::Greater
        );
        let b = MonomialOrder::Block { split: 1 };
        assert_eq!(b.cmp(&m(&[1, 0, 0]), &m(&[0, 4, 4])), Ordering::Greater);
        assert_eq!(b.cmp(&m(&[0, 2, 0]), &m(&[0, 1, 0])), Ordering::Greater);
    }

    #[test]
    fn cached_degree() {
        let a = m(&[1, 2, 3]);
        assert_eq!(a.degree(), 6);
        assert_eq!(a.mul(&m(&[1, 1, 1])).degree(), 9);
        assert_eq!(m(&[1, 1, 1]).quotient_of(&a), Some(m(&[0, 1, 2])));
        assert_eq!(a.quotient_of(&m(&[1, 1, 1])), None);
    }

    fn mono3() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..4, 3).prop_map(|v| Monomial::new(Exponents::from_vec(v)))
    }

    fn order() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::Grevlex),
            Just(MonomialOrder::Lex),
            (0usize..=3).prop_map(|split| MonomialOrder::Block { split }),
        ]
    }

    proptest! {
        #[test]
        fn orders_are_monomial_orders(o in order(), a in mono3(), b in mono3(), c in mono3()) {
            // compatible with multiplication
            prop_assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&c), &b.mul(&c)));
            // 1 is minimal
            prop_assert_ne!(o.cmp(&Monomial::one(3), &a), Ordering::Greater);
            // total: equal only when identical
            prop_assert_eq!(o.cmp(&a, &b) == Ordering::Equal, a == b);
        }
    }
}
