use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use super::ring::Ring;
use crate::error::{Error, Result};
use crate::field::Coeff;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Coeff,
    pub mono: Monomial,
}

/// Canonical sparse polynomial: nonzero coefficients, distinct monomials, sorted
/// descending under the ring's order.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<Term>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeightedDegree {
    Homogeneous(i64),
    Inhomogeneous,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state)
    }
}

pub(crate) fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// `p op q` in canonical form.
pub fn poly_arith(op: ArithOp, p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    match op {
        ArithOp::Add => p.checked_add(q),
        ArithOp::Sub => p.checked_sub(q),
        ArithOp::Mul => p.checked_mul(q),
    }
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Ring, c: Coeff) -> Self {
        Self::term(ring, c, Monomial::one(ring.arity()))
    }

    pub fn term(ring: &Ring, c: Coeff, mono: Monomial) -> Self {
        let terms = if ring.field().is_zero(&c) { vec![] } else { vec![Term { coeff: c, mono }] };
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn monomial(ring: &Ring, mono: Monomial) -> Self {
        Self::term(ring, ring.field().one(), mono)
    }

    pub fn var(ring: &Ring, idx: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.arity(), idx))
    }

    pub fn var_named(ring: &Ring, name: &str) -> Result<Self> {
        let i = ring.var_index(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var(ring, i))
    }

    /// Normalizes arbitrary terms: merges equal monomials, drops zeros, sorts.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Coeff, Monomial)>) -> Self {
        let field = ring.field();
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (c, m) in terms {
            assert_eq!(m.arity(), ring.arity(), "monomial arity does not match ring");
            match acc.get_mut(&m) {
                Some(e) => *e = field.add(e, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<Term> = acc
            .into_iter()
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(mono, coeff)| Term { coeff, mono })
            .collect();
        terms.sort_by(|a, b| ring.cmp(&b.mono, &a.mono));
        Polynomial { ring: ring.clone(), terms }
    }

    /// Trusts `terms` to already be canonical for `ring`.
    pub(crate) fn from_sorted(ring: &Ring, terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].mono, &w[1].mono) == Ordering::Greater));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_term(&self) -> Result<&Term> {
        self.terms.first().ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|t| &t.coeff)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.mono.degree()).max().unwrap_or(0)
    }

    pub fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let field = self.ring.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        let conv = |t: &Term| {
            if negate_other {
                Term { coeff: field.neg(&t.coeff), mono: t.mono.clone() }
            } else {
                t.clone()
            }
        };
        while i < a.len() && j < b.len() {
            match self.ring.cmp(&a[i].mono, &b[j].mono) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(conv(&b[j]));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        field.sub(&a[i].coeff, &b[j].coeff)
                    } else {
                        field.add(&a[i].coeff, &b[j].coeff)
                    };
                    if !field.is_zero(&c) {
                        out.push(Term { coeff: c, mono: a[i].mono.clone() });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(conv));
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        if other.terms.len() == 1 {
            let t = &other.terms[0];
            return Ok(self.mul_term(&t.coeff, &t.mono));
        }
        if self.terms.len() == 1 {
            let t = &self.terms[0];
            return Ok(other.mul_term(&t.coeff, &t.mono));
        }
        let field = self.ring.field();
        let prods = self.terms.iter().flat_map(|s| {
            other
                .terms
                .iter()
                .map(move |o| (field.mul(&s.coeff, &o.coeff), s.mono.mul(&o.mono)))
        });
        Ok(Polynomial::from_terms(&self.ring, prods))
    }

    /// `c * m * self`; multiplication by a monomial preserves the term order.
    pub fn mul_term(&self, c: &Coeff, m: &Monomial) -> Polynomial {
        let field = self.ring.field();
        if field.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term { coeff: field.mul(&t.coeff, c), mono: t.mono.mul(m) })
            .collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        self.mul_term(c, &Monomial::one(self.ring.arity()))
    }

    pub fn neg(&self) -> Polynomial {
        let field = self.ring.field();
        let terms = self
            .terms
            .iter()
            .map(|t| Term { coeff: field.neg(&t.coeff), mono: t.mono.clone() })
            .collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if self.ring.field().is_one(lc) => self.clone(),
            Some(lc) => self.scale(&self.ring.field().inv(lc)),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        matches!(self.weighted_degree("std"), Ok(WeightedDegree::Homogeneous(_)))
    }

    /// Common weight of all terms under a named grading.
    pub fn weighted_degree(&self, grading: &str) -> Result<WeightedDegree> {
        let w = self.ring.grading(grading)?;
        let first = self.leading_term()?.mono.weighted_degree(w);
        if self.terms.iter().all(|t| t.mono.weighted_degree(w) == first) {
            Ok(WeightedDegree::Homogeneous(first))
        } else {
            Ok(WeightedDegree::Inhomogeneous)
        }
    }

    /// Re-sorts the same polynomial in a ring with identical variables but another order.
    pub fn reorder(&self, ring: &Ring) -> Result<Polynomial> {
        if !self.ring.same_variables(ring) {
            return Err(Error::RingMismatch);
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| ring.cmp(&b.mono, &a.mono));
        Ok(Polynomial { ring: ring.clone(), terms })
    }

    /// Renames variables: variable `i` of this ring becomes variable `var_map[i]` of `target`.
    pub fn embed(&self, target: &Ring, var_map: &[usize]) -> Polynomial {
        assert_eq!(var_map.len(), self.ring.arity());
        let terms = self.terms.iter().map(|t| {
            let mut e = vec![0u16; target.arity()];
            for (i, &x) in t.mono.0.iter().enumerate() {
                e[var_map[i]] += x;
            }
            (t.coeff.clone(), Monomial(e))
        });
        Polynomial::from_terms(target, terms)
    }

    /// Evaluates at `images` (one polynomial of a common target ring per variable).
    pub fn substitute(&self, target: &Ring, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.arity() {
            return Err(Error::Invalid("one image per variable is required".into()));
        }
        if images.iter().any(|p| !same_ring(p.ring(), target)) {
            return Err(Error::RingMismatch);
        }
        let mut cache: HashMap<(usize, u16), Polynomial> = HashMap::new();
        let mut acc = Polynomial::zero(target);
        for t in &self.terms {
            let mut prod = Polynomial::constant(target, t.coeff.clone());
            for (i, &e) in t.mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = cache.entry((i, e)).or_insert_with(|| images[i].pow(e as u32));
                prod = &prod * pw;
            }
            acc = &acc + &prod;
        }
        Ok(acc)
    }

    /// Exact quotient `self / g`; `None` when `g` does not divide `self`.
    pub fn exact_div(&self, g: &Polynomial) -> Result<Option<Polynomial>> {
        self.check_ring(g)?;
        let lt = g.leading_term()?;
        let field = self.ring.field();
        let inv = field.inv(&lt.coeff);
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some(t) = rem.terms.first() {
            let Some(q) = t.mono.div(&lt.mono) else {
                return Ok(None);
            };
            let c = field.mul(&t.coeff, &inv);
            rem = rem.merge(&g.mul_term(&c, &q), true);
            quot.push((c, q));
        }
        Ok(Some(Polynomial::from_terms(&self.ring, quot)))
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

pub(crate) fn fmt_monomial(ring: &Ring, m: &Monomial) -> String {
    let parts: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                ring.var_name(i).to_string()
            } else {
                format!("{}^{}", ring.var_name(i), e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field();
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            let abs = if neg { field.neg(&t.coeff) } else { t.coeff.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if t.mono.is_one() {
                write!(f, "{abs}")?;
            } else if field.is_one(&abs) {
                write!(f, "{}", fmt_monomial(&self.ring, &t.mono))?;
            } else {
                write!(f, "{abs}*{}", fmt_monomial(&self.ring, &t.mono))?;
            }
        }
        Ok(())
    }
}
