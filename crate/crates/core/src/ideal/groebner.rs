//! Buchberger's algorithm on term vectors sorted by the active order.
//!
//! Pairs are picked by the normal strategy (smallest lcm first, ties by
//! index) and pruned with the coprime-leading-monomial and chain criteria.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::error::IdealError;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Polynomial, Ring};
use crate::scalar::{Field, Scalar};

pub(crate) type Term = (Monomial, Scalar);

/// A polynomial as terms sorted descending under some order. Never holds a
/// zero coefficient.
pub(crate) type Terms = Vec<Term>;

pub(crate) fn to_terms(p: &Polynomial, order: MonomialOrder) -> Terms {
    p.sorted_terms(order)
        .into_iter()
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect()
}

pub(crate) fn from_terms(ring: Ring, terms: Terms) -> Polynomial {
    ring.from_terms(terms.into_iter().map(|(m, c)| (c, m)))
}

fn make_monic(field: Field, p: &mut Terms) {
    if let Some((_, lc)) = p.first() {
        if !lc.is_one() {
            let inv = field.inv(lc);
            for (_, c) in p.iter_mut() {
                *c = field.mul(c, &inv);
            }
        }
    }
}

/// `p - c * m * g`, all sorted descending.
fn sub_scaled(field: Field, order: MonomialOrder, p: &[Term], c: &Scalar, m: &Monomial, g: &[Term]) -> Terms {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    let mut shifted: Option<Term> = g.first().map(|(gm, gc)| (gm.mul(m), field.mul(gc, c)));
    while i < p.len() || shifted.is_some() {
        let ord = match (&p.get(i), &shifted) {
            (Some(a), Some(b)) => order.cmp(&a.0, &b.0),
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (None, None) => unreachable!(),
        };
        match ord {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let (bm, bc) = shifted.take().expect("present");
                out.push((bm, field.neg(&bc)));
                j += 1;
                shifted = g.get(j).map(|(gm, gc)| (gm.mul(m), field.mul(gc, c)));
            }
            Ordering::Equal => {
                let (bm, bc) = shifted.take().expect("present");
                let diff = field.sub(&p[i].1, &bc);
                if !diff.is_zero() {
                    out.push((bm, diff));
                }
                i += 1;
                j += 1;
                shifted = g.get(j).map(|(gm, gc)| (gm.mul(m), field.mul(gc, c)));
            }
        }
    }
    out
}

/// Full reduction of `p` modulo `basis` (every term, not only the head).
pub(crate) fn reduce(field: Field, order: MonomialOrder, p: Terms, basis: &[Terms]) -> Terms {
    reduce_skipping(field, order, p, basis, None)
}

fn reduce_skipping(
    field: Field,
    order: MonomialOrder,
    mut p: Terms,
    basis: &[Terms],
    skip: Option<usize>,
) -> Terms {
    let mut rem = Vec::new();
    let mut start = 0;
    while start < p.len() {
        let (lm, lc) = &p[start];
        let divisor = basis
            .iter()
            .enumerate()
            .filter(|(k, _)| Some(*k) != skip)
            .map(|(_, g)| g)
            .find(|g| g[0].0.divides(lm));
        match divisor {
            Some(g) => {
                let q = g[0].0.quotient_of(lm).expect("divides");
                let c = field.div(lc, &g[0].1);
                p = sub_scaled(field, order, &p[start..], &c, &q, g);
                start = 0;
            }
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
        }
    }
    rem
}

fn s_polynomial(field: Field, order: MonomialOrder, a: &Terms, b: &Terms) -> Terms {
    let lcm = a[0].0.lcm(&b[0].0);
    let qa = a[0].0.quotient_of(&lcm).expect("lcm");
    let qb = b[0].0.quotient_of(&lcm).expect("lcm");
    let ca = field.inv(&a[0].1);
    let scaled_a: Terms = a.iter().map(|(m, c)| (m.mul(&qa), field.mul(c, &ca))).collect();
    let cb = field.inv(&b[0].1);
    sub_scaled(field, order, &scaled_a, &cb, &qb, b)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn check_degree(p: &Terms, bound: Option<u32>) -> Result<(), IdealError> {
    if let Some(bound) = bound {
        let degree = p.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        if degree > bound {
            return Err(IdealError::DegreeBoundExceeded { bound, degree });
        }
    }
    Ok(())
}

/// Reduced Groebner basis of the ideal generated by `gens`, sorted by leading
/// monomial descending.
pub(crate) fn buchberger(
    ring: Ring,
    order: MonomialOrder,
    gens: &[Polynomial],
    bound: Option<u32>,
) -> Result<Vec<Terms>, IdealError> {
    let field = ring.field;
    let unit = || vec![(Monomial::one(ring.nvars), field.one())];
    let mut basis: Vec<Terms> = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let mut t = to_terms(g, order);
        check_degree(&t, bound)?;
        make_monic(field, &mut t);
        if t[0].0.is_one() {
            return Ok(vec![unit()]);
        }
        basis.push(t);
    }

    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push(Pair {
                i,
                j,
                lcm: basis[i][0].0.lcm(&basis[j][0].0),
            });
            pending.insert((i, j));
        }
    }

    while !pairs.is_empty() {
        let pick = (0..pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pairs[a], &pairs[b]);
                order
                    .cmp(&pa.lcm, &pb.lcm)
                    .then_with(|| (pa.j, pa.i).cmp(&(pb.j, pb.i)))
            })
            .expect("nonempty");
        let Pair { i, j, lcm } = pairs.swap_remove(pick);
        pending.remove(&(i, j));

        let (lmi, lmj) = (&basis[i][0].0, &basis[j][0].0);
        if lmi.is_coprime(lmj) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k][0].0.divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }

        let s = s_polynomial(field, order, &basis[i], &basis[j]);
        let mut h = reduce(field, order, s, &basis);
        if h.is_empty() {
            continue;
        }
        check_degree(&h, bound)?;
        make_monic(field, &mut h);
        if h[0].0.is_one() {
            return Ok(vec![unit()]);
        }
        let new = basis.len();
        for (k, g) in basis.iter().enumerate() {
            pairs.push(Pair {
                i: k,
                j: new,
                lcm: g[0].0.lcm(&h[0].0),
            });
            pending.insert((k, new));
        }
        basis.push(h);
    }

    Ok(interreduce(field, order, basis))
}

fn interreduce(field: Field, order: MonomialOrder, basis: Vec<Terms>) -> Vec<Terms> {
    // Keep only elements with minimal leading monomials; on equal leading
    // monomials the earliest survives.
    let keep: Vec<Terms> = basis
        .iter()
        .enumerate()
        .filter(|(a, g)| {
            !basis
                .iter()
                .enumerate()
                .any(|(b, h)| b != *a && h[0].0.divides(&g[0].0) && (h[0].0 != g[0].0 || b < *a))
        })
        .map(|(_, g)| g.clone())
        .collect();

    let mut reduced: Vec<Terms> = Vec::with_capacity(keep.len());
    for (k, g) in keep.iter().enumerate() {
        let head = g[0].clone();
        let tail = reduce_skipping(field, order, g[1..].to_vec(), &keep, Some(k));
        let mut r = Vec::with_capacity(tail.len() + 1);
        r.push(head);
        r.extend(tail);
        make_monic(field, &mut r);
        reduced.push(r);
    }
    reduced.sort_by(|a, b| order.cmp(&b[0].0, &a[0].0));
    reduced
}

/// Checks the defining properties of a reduced Groebner basis: monic,
/// no leading monomial divides a term of another element, and every
/// S-polynomial reduces to zero.
pub(crate) fn verify(field: Field, order: MonomialOrder, basis: &[Terms]) -> Result<(), String> {
    for (a, g) in basis.iter().enumerate() {
        if g.is_empty() {
            return Err(format!("element {a} is zero"));
        }
        if !g[0].1.is_one() {
            return Err(format!("element {a} is not monic"));
        }
        for w in g.windows(2) {
            if order.cmp(&w[0].0, &w[1].0) != Ordering::Greater {
                return Err(format!("element {a} is not sorted"));
            }
        }
        for (b, h) in basis.iter().enumerate() {
            if a != b && h.iter().any(|(m, _)| g[0].0.divides(m)) {
                return Err(format!("leading monomial of {a} divides a term of {b}"));
            }
        }
    }
    for j in 0..basis.len() {
        for i in 0..j {
            let s = s_polynomial(field, order, &basis[i], &basis[j]);
            if !reduce(field, order, s, basis).is_empty() {
                return Err(format!("S({i}, {j}) does not reduce to zero"));
            }
        }
    }
    Ok(())
}
