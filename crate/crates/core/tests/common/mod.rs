//! A deliberately plain Groebner basis implementation over Q, sharing no code
//! with the crate: dense exponent vectors, hand-written grevlex, textbook
//! Buchberger with every pair and no criteria. Used only as an oracle.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Mono = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NPoly {
    pub terms: BTreeMap<Mono, BigRational>,
}

pub fn grevlex(a: &Mono, b: &Mono) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            // smaller exponent in the last differing variable is larger
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

impl NPoly {
    pub fn zero() -> Self {
        NPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_ints(terms: &[(i64, Mono)]) -> Self {
        let mut p = NPoly::zero();
        for (c, m) in terms {
            p.add_term(m.clone(), BigRational::from_integer(BigInt::from(*c)));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Mono, c: BigRational) {
        let e = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn lead(&self) -> Option<(Mono, BigRational)> {
        self.terms
            .iter()
            .max_by(|a, b| grevlex(a.0, b.0))
            .map(|(m, c)| (m.clone(), c.clone()))
    }

    pub fn add(&self, other: &NPoly) -> NPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &NPoly) -> NPoly {
        let mut out = NPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let m: Mono = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    /// `self - c·x^m·g`
    fn sub_scaled(&self, c: &BigRational, m: &Mono, g: &NPoly) -> NPoly {
        let mut out = self.clone();
        for (gm, gc) in &g.terms {
            let mm: Mono = gm.iter().zip(m).map(|(x, y)| x + y).collect();
            out.add_term(mm, -(c * gc));
        }
        out
    }

    fn monic(&self) -> NPoly {
        let Some((_, lc)) = self.lead() else {
            return self.clone();
        };
        NPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c / &lc)).collect(),
        }
    }
}

fn divides(a: &Mono, b: &Mono) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn quotient(b: &Mono, a: &Mono) -> Mono {
    b.iter().zip(a).map(|(x, y)| x - y).collect()
}

/// Textbook multivariate division: the remainder of `p` by `divisors` in the
/// given order.
pub fn divide(p: &NPoly, divisors: &[NPoly]) -> NPoly {
    let mut p = p.clone();
    let mut rem = NPoly::zero();
    while let Some((lm, lc)) = p.lead() {
        let mut done = false;
        for g in divisors {
            let Some((gm, gc)) = g.lead() else { continue };
            if divides(&gm, &lm) {
                p = p.sub_scaled(&(&lc / &gc), &quotient(&lm, &gm), g);
                done = true;
                break;
            }
        }
        if !done {
            p.terms.remove(&lm);
            rem.add_term(lm, lc);
        }
    }
    rem
}

fn s_poly(f: &NPoly, g: &NPoly) -> NPoly {
    let (fm, fc) = f.lead().unwrap();
    let (gm, gc) = g.lead().unwrap();
    let l: Mono = fm.iter().zip(&gm).map(|(a, b)| *a.max(b)).collect();
    let a = NPoly::zero().sub_scaled(&(-BigRational::one() / &fc), &quotient(&l, &fm), f);
    a.sub_scaled(&(BigRational::one() / &gc), &quotient(&l, &gm), g)
}

/// Reduced Groebner basis for grevlex, sorted by leading monomial descending.
pub fn reduced_basis(gens: &[NPoly]) -> Vec<NPoly> {
    let mut g: Vec<NPoly> = gens.iter().filter(|p| !p.is_zero()).cloned().collect();
    let mut pairs: Vec<(usize, usize)> = (0..g.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = pairs.pop() {
        let r = divide(&s_poly(&g[i], &g[j]), &g);
        if !r.is_zero() {
            let k = g.len();
            g.push(r);
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    // minimal basis
    let mut minimal: Vec<NPoly> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let pm = p.lead().unwrap().0;
        let redundant = g.iter().enumerate().any(|(j, q)| {
            let qm = q.lead().unwrap().0;
            j != i && divides(&qm, &pm) && (qm != pm || j < i)
        });
        if !redundant {
            minimal.push(p.monic());
        }
    }
    // tail-reduce each element by the others
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<NPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let (lm, lc) = minimal[i].lead().unwrap();
        let mut tail = minimal[i].clone();
        tail.terms.remove(&lm);
        let mut r = divide(&tail, &others);
        r.add_term(lm, lc);
        reduced.push(r.monic());
    }
    reduced.sort_by(|a, b| grevlex(&b.lead().unwrap().0, &a.lead().unwrap().0));
    reduced
}

pub fn member(p: &NPoly, basis: &[NPoly]) -> bool {
    divide(p, basis).is_zero()
}

pub fn is_unit(basis: &[NPoly]) -> bool {
    basis.len() == 1 && basis[0].terms.len() == 1 && basis[0].terms.keys().all(|m| m.iter().all(|&e| e == 0))
}

/// True when dividing by the generators in some order leaves no remainder.
/// Sound for membership but not complete.
pub fn member_by_some_ordering(p: &NPoly, gens: &[NPoly]) -> bool {
    let mut idx: Vec<usize> = (0..gens.len()).collect();
    loop {
        let ordered: Vec<NPoly> = idx.iter().map(|&i| gens[i].clone()).collect();
        if divide(p, &ordered).is_zero() {
            return true;
        }
        // next lexicographic permutation
        let Some(i) = (0..idx.len().saturating_sub(1))
            .rev()
            .find(|&i| idx[i] < idx[i + 1])
        else {
            return false;
        };
        let j = (i + 1..idx.len()).rev().find(|&j| idx[j] > idx[i]).unwrap();
        idx.swap(i, j);
        idx[i + 1..].reverse();
    }
}
