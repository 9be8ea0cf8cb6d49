use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::polyring::{Monomial, Polynomial, Ring, Term};

/// Support bitmask used to reject divisibility tests quickly.
pub(crate) fn support_mask(m: &Monomial) -> u128 {
    let mut mask = 0u128;
    for (i, &e) in m.exps().iter().enumerate() {
        if e > 0 {
            mask |= 1u128 << (i % 128);
        }
    }
    mask
}

/// Leading data of a divisor list, prepared once per reduction.
pub(crate) struct Divisors<'a> {
    polys: Vec<&'a Polynomial>,
    lms: Vec<&'a Monomial>,
    masks: Vec<u128>,
    inv_lcs: Vec<Coeff>,
}

impl<'a> Divisors<'a> {
    pub(crate) fn new(ring: &Ring, polys: impl IntoIterator<Item = &'a Polynomial>) -> Self {
        let field = ring.field();
        let polys: Vec<&Polynomial> = polys.into_iter().filter(|p| !p.is_zero()).collect();
        let lms = polys.iter().map(|p| p.leading_monomial().unwrap()).collect::<Vec<_>>();
        let masks = lms.iter().map(|m| support_mask(m)).collect();
        let inv_lcs = polys.iter().map(|p| field.inv(p.leading_coeff().unwrap())).collect();
        Divisors { polys, lms, masks, inv_lcs }
    }

    fn find(&self, m: &Monomial) -> Option<usize> {
        let mask = support_mask(m);
        (0..self.polys.len()).find(|&k| self.masks[k] & !mask == 0 && self.lms[k].divides(m))
    }

    /// Full reduction: no term of the result is divisible by a divisor's leading monomial.
    pub(crate) fn reduce(&self, p: &Polynomial) -> Polynomial {
        let ring = p.ring().clone();
        let field = ring.field();
        let mut rem: Vec<Term> = p.terms().to_vec();
        let mut start = 0usize;
        let mut out: Vec<Term> = Vec::new();
        while start < rem.len() {
            let lead = &rem[start];
            match self.find(&lead.mono) {
                None => {
                    out.push(lead.clone());
                    start += 1;
                }
                Some(k) => {
                    let q = lead.mono.div(self.lms[k]).unwrap();
                    let c = field.mul(&lead.coeff, &self.inv_lcs[k]);
                    rem = sub_scaled(&ring, &rem[start..], self.polys[k].terms(), &c, &q);
                    start = 0;
                }
            }
        }
        Polynomial::from_sorted(&ring, out)
    }
}

/// `a - c * q * b` for canonical term slices.
fn sub_scaled(ring: &Ring, a: &[Term], b: &[Term], c: &Coeff, q: &Monomial) -> Vec<Term> {
    let field = ring.field();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut bj: Option<Term> = None;
    let next_b = |j: usize| -> Option<Term> {
        b.get(j).map(|t| Term { coeff: field.neg(&field.mul(&t.coeff, c)), mono: t.mono.mul(q) })
    };
    if j < b.len() {
        bj = next_b(j);
    }
    while i < a.len() {
        let Some(tb) = bj.as_ref() else { break };
        match ring.cmp(&a[i].mono, &tb.mono) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(tb.clone());
                j += 1;
                bj = next_b(j);
            }
            Ordering::Equal => {
                let s = field.add(&a[i].coeff, &tb.coeff);
                if !field.is_zero(&s) {
                    out.push(Term { coeff: s, mono: a[i].mono.clone() });
                }
                i += 1;
                j += 1;
                bj = next_b(j);
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    while let Some(t) = bj {
        out.push(t);
        j += 1;
        bj = next_b(j);
    }
    out
}

/// Remainder of `p` on division by `divisors` (first divisor in list order wins).
pub fn normal_form(p: &Polynomial, divisors: &[Polynomial]) -> Result<Polynomial> {
    for g in divisors {
        p.check_ring(g)?;
    }
    Ok(Divisors::new(p.ring(), divisors).reduce(p))
}

/// Monic S-polynomial of two nonzero polynomials.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    f.check_ring(g)?;
    let (ft, gt) = (f.leading_term()?, g.leading_term()?);
    let field = f.ring().field();
    let lcm = ft.mono.lcm(&gt.mono);
    let a = f.mul_term(&field.inv(&ft.coeff), &lcm.div(&ft.mono).unwrap());
    let b = g.mul_term(&field.inv(&gt.coeff), &lcm.div(&gt.mono).unwrap());
    Ok((&a - &b).monic())
}

/// Buchberger's criterion on `g`: returns whether every S-pair reduces to zero,
/// together with the index pairs whose S-polynomial does not.
pub fn is_groebner(g: &[Polynomial]) -> Result<(bool, Vec<(usize, usize)>)> {
    if g.iter().any(Polynomial::is_zero) {
        return Err(Error::ZeroPolynomial);
    }
    let Some(first) = g.first() else {
        return Ok((true, vec![]));
    };
    for p in g {
        first.check_ring(p)?;
    }
    let divs = Divisors::new(first.ring(), g);
    let mut offenders = Vec::new();
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            let s = s_polynomial(&g[i], &g[j])?;
            if !divs.reduce(&s).is_zero() {
                offenders.push((i, j));
            }
        }
    }
    Ok((offenders.is_empty(), offenders))
}
