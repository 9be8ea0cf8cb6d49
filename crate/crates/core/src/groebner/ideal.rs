use std::sync::OnceLock;

use super::division::Divisors;
use super::{buchberger, GbOptions, GbReport, Guards};
use crate::error::{Error, Result};
use crate::polyring::{same_ring, Monomial, MonomialOrder, Polynomial, Ring, VariableMeta};

/// Finitely generated ideal with a lazily computed reduced Groebner basis
/// (under the order of its ring).
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    gb: OnceLock<Vec<Polynomial>>,
}

impl Ideal {
    pub fn new(ring: &Ring, gens: impl IntoIterator<Item = Polynomial>) -> Result<Self> {
        let mut out: Vec<Polynomial> = Vec::new();
        for g in gens {
            if !same_ring(g.ring(), ring) {
                return Err(Error::RingMismatch);
            }
            if !g.is_zero() && !out.contains(&g) {
                out.push(g);
            }
        }
        Ok(Ideal { ring: ring.clone(), gens: out, gb: OnceLock::new() })
    }

    pub fn zero(ring: &Ring) -> Self {
        Ideal { ring: ring.clone(), gens: vec![], gb: OnceLock::new() }
    }

    pub fn unit(ring: &Ring) -> Self {
        Ideal { ring: ring.clone(), gens: vec![Polynomial::one(ring)], gb: OnceLock::new() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(Polynomial::is_monomial)
    }

    /// Reduced Groebner basis, cached after the first successful computation.
    pub fn groebner(&self, guards: &Guards) -> Result<&[Polynomial]> {
        if let Some(g) = self.gb.get() {
            return Ok(g);
        }
        let (basis, _) = buchberger(&self.ring, &self.gens, &GbOptions::with_guards(*guards))?;
        let _ = self.gb.set(basis);
        Ok(self.gb.get().unwrap())
    }

    /// Runs Buchberger afresh and returns the statistics as well.
    pub fn groebner_report(&self, opts: &GbOptions) -> Result<(Vec<Polynomial>, GbReport)> {
        let (basis, report) = buchberger(&self.ring, &self.gens, opts)?;
        let _ = self.gb.set(basis.clone());
        Ok((basis, report))
    }

    pub fn reduce(&self, p: &Polynomial, guards: &Guards) -> Result<Polynomial> {
        p.check_ring(&Polynomial::zero(&self.ring))?;
        let gb = self.groebner(guards)?;
        Ok(Divisors::new(&self.ring, gb).reduce(p))
    }

    pub fn contains(&self, p: &Polynomial, guards: &Guards) -> Result<bool> {
        Ok(self.reduce(p, guards)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal, guards: &Guards) -> Result<bool> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        for g in &other.gens {
            if !self.contains(g, guards)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality decided by comparing reduced Groebner bases.
    pub fn equals(&self, other: &Ideal, guards: &Guards) -> Result<bool> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(self.groebner(guards)? == other.groebner(guards)?)
    }

    pub fn is_unit(&self, guards: &Guards) -> Result<bool> {
        self.contains(&Polynomial::one(&self.ring), guards)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        Ideal::new(&self.ring, self.gens.iter().chain(other.gens.iter()).cloned())
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.checked_mul(b)?);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// `f * self`.
    pub fn times(&self, f: &Polynomial) -> Result<Ideal> {
        let gens = self.gens.iter().map(|g| g.checked_mul(f)).collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, gens)
    }

    /// Generators of `self^k`: products of all size-`k` multisets of generators.
    pub fn power(&self, k: u32) -> Result<Ideal> {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// The same ideal in a ring with the same variables under another order.
    pub fn reorder(&self, ring: &Ring) -> Result<Ideal> {
        let gens = self.gens.iter().map(|g| g.reorder(ring)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    pub fn leading_monomials(&self, guards: &Guards) -> Result<Vec<Monomial>> {
        Ok(self.groebner(guards)?.iter().map(|g| g.leading_monomial().unwrap().clone()).collect())
    }
}

/// Ring homomorphism given by the images of the source variables.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    pub source: Ring,
    pub target: Ring,
    pub images: Vec<Polynomial>,
}

impl AlgebraMap {
    pub fn new(source: &Ring, target: &Ring, images: Vec<Polynomial>) -> Result<Self> {
        if images.len() != source.arity() {
            return Err(Error::Invalid(format!(
                "algebra map needs {} images, got {}",
                source.arity(),
                images.len()
            )));
        }
        if images.iter().any(|p| !same_ring(p.ring(), target)) {
            return Err(Error::RingMismatch);
        }
        Ok(AlgebraMap { source: source.clone(), target: target.clone(), images })
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        if !same_ring(p.ring(), &self.source) {
            return Err(Error::RingMismatch);
        }
        p.substitute(&self.target, &self.images)
    }
}

/// `I ∩ k[keep]`, computed with an elimination order that puts the other variables first.
pub fn eliminate(ideal: &Ideal, keep: &[usize], guards: &Guards) -> Result<Ideal> {
    let ring = ideal.ring();
    let n = ring.arity();
    if keep.iter().any(|&k| k >= n) {
        return Err(Error::Invalid("keep set refers to a variable outside the ring".into()));
    }
    let mut in_keep = vec![false; n];
    for &k in keep {
        in_keep[k] = true;
    }
    let elim: Vec<usize> = (0..n).filter(|&i| !in_keep[i]).collect();
    if elim.is_empty() {
        return Ok(ideal.clone());
    }
    let kept: Vec<usize> = (0..n).filter(|&i| in_keep[i]).collect();
    let perm: Vec<usize> = elim.iter().chain(kept.iter()).copied().collect();
    let elim_ring = ring.permuted(&perm, MonomialOrder::elimination(elim.len(), n));
    let mut to_new = vec![0usize; n];
    for (new, &old) in perm.iter().enumerate() {
        to_new[old] = new;
    }
    let gens: Vec<Polynomial> = ideal.gens().iter().map(|g| g.embed(&elim_ring, &to_new)).collect();
    let (gb, _) = buchberger(&elim_ring, &gens, &GbOptions::with_guards(*guards))?;
    let result: Vec<Polynomial> = gb
        .iter()
        .filter(|g| g.terms().iter().all(|t| t.mono.exps()[..elim.len()].iter().all(|&e| e == 0)))
        .map(|g| g.embed(ring, &perm))
        .collect();
    Ideal::new(ring, result)
}

fn fresh_name(taken: impl Fn(&str) -> bool, base: &str) -> String {
    let mut name = base.to_string();
    while taken(&name) {
        name.push('_');
    }
    name
}

/// Kernel of `map` via the graph ideal `(y_i - image_i)` and elimination of the target
/// variables. Every returned generator is checked to map to zero.
pub fn kernel_of_map(map: &AlgebraMap, guards: &Guards) -> Result<Ideal> {
    let (src, tgt) = (&map.source, &map.target);
    let (ns, nt) = (src.arity(), tgt.arity());
    let mut vars: Vec<VariableMeta> = Vec::with_capacity(ns + nt);
    for i in 0..nt {
        let name = fresh_name(|s| src.var_index(s).is_some(), &format!("{}'", tgt.var_name(i)));
        vars.push(VariableMeta::plain(name));
    }
    for v in src.variables() {
        vars.push(VariableMeta::plain(v.name.clone()));
    }
    let joined = crate::polyring::build_ring(src.field(), vars, MonomialOrder::elimination(nt, nt + ns))?;
    let tgt_map: Vec<usize> = (0..nt).collect();
    let gens: Vec<Polynomial> = map
        .images
        .iter()
        .enumerate()
        .map(|(i, img)| &Polynomial::var(&joined, nt + i) - &img.embed(&joined, &tgt_map))
        .collect();
    let graph = Ideal::new(&joined, gens)?;
    let keep: Vec<usize> = (nt..nt + ns).collect();
    let elim = eliminate(&graph, &keep, guards)?;
    let back: Vec<usize> = (0..nt + ns).map(|i| i.saturating_sub(nt)).collect();
    let kernel: Vec<Polynomial> = elim.gens().iter().map(|g| g.embed(src, &back)).collect();
    for g in &kernel {
        if !map.apply(g)?.is_zero() {
            return Err(Error::Invalid(format!("kernel post-check failed on {g}")));
        }
    }
    Ideal::new(src, kernel)
}

pub fn membership(p: &Polynomial, ideal: &Ideal, guards: &Guards) -> Result<bool> {
    ideal.contains(p, guards)
}

/// `I ∩ J` via `t I + (1 - t) J` and elimination of `t`.
pub fn ideal_intersection(i: &Ideal, j: &Ideal, guards: &Guards) -> Result<Ideal> {
    let ring = i.ring();
    if !same_ring(ring, j.ring()) {
        return Err(Error::RingMismatch);
    }
    if i.is_zero_ideal() || j.is_zero_ideal() {
        return Ok(Ideal::zero(ring));
    }
    let n = ring.arity();
    let tag = fresh_name(|s| ring.var_index(s).is_some(), "_tag");
    let mut vars = vec![VariableMeta::plain(tag)];
    vars.extend(ring.variables().iter().map(|v| VariableMeta::plain(v.name.clone())));
    let tagged = crate::polyring::build_ring(ring.field(), vars, MonomialOrder::elimination(1, n + 1))?;
    let shift: Vec<usize> = (1..=n).collect();
    let t = Polynomial::var(&tagged, 0);
    let one_minus_t = &Polynomial::one(&tagged) - &t;
    let gens = i
        .gens()
        .iter()
        .map(|g| &g.embed(&tagged, &shift) * &t)
        .chain(j.gens().iter().map(|g| &g.embed(&tagged, &shift) * &one_minus_t))
        .collect::<Vec<_>>();
    let elim = eliminate(&Ideal::new(&tagged, gens)?, &shift, guards)?;
    let back: Vec<usize> = (0..=n).map(|k| k.saturating_sub(1)).collect();
    let result = Ideal::new(ring, elim.gens().iter().map(|g| g.embed(ring, &back)))?;
    for g in result.gens() {
        if !i.contains(g, guards)? || !j.contains(g, guards)? {
            return Err(Error::Invalid(format!("intersection post-check failed on {g}")));
        }
    }
    Ok(result)
}

fn colon_principal(i: &Ideal, g: &Polynomial, guards: &Guards) -> Result<Ideal> {
    let ring = i.ring();
    if g.is_zero() {
        return Ok(Ideal::unit(ring));
    }
    if g.len() == 1 && g.leading_monomial().unwrap().is_one() {
        return Ok(i.clone());
    }
    let principal = Ideal::new(ring, [g.clone()])?;
    let meet = ideal_intersection(i, &principal, guards)?;
    let mut gens = Vec::with_capacity(meet.gens().len());
    for h in meet.gens() {
        let q = h
            .exact_div(g)?
            .ok_or_else(|| Error::Invalid(format!("{h} is not divisible by {g}")))?;
        gens.push(q);
    }
    Ideal::new(ring, gens)
}

/// `I : J = ∩_g (I : g)` over the generators `g` of `J`; checks `J (I : J) ⊆ I`.
pub fn ideal_colon(i: &Ideal, j: &Ideal, guards: &Guards) -> Result<Ideal> {
    if !same_ring(i.ring(), j.ring()) {
        return Err(Error::RingMismatch);
    }
    let mut acc: Option<Ideal> = None;
    for g in j.gens() {
        let c = colon_principal(i, g, guards)?;
        acc = Some(match acc {
            None => c,
            Some(a) => ideal_intersection(&a, &c, guards)?,
        });
    }
    let result = acc.unwrap_or_else(|| Ideal::unit(i.ring()));
    for a in j.gens() {
        for b in result.gens() {
            if !i.contains(&(a * b), guards)? {
                return Err(Error::Invalid(format!("colon post-check failed on {a} * {b}")));
            }
        }
    }
    Ok(result)
}

/// `I : f^∞`, iterating `I : f` until the ideal stops growing.
pub fn ideal_saturation(i: &Ideal, f: &Polynomial, guards: &Guards) -> Result<Ideal> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let principal = Ideal::new(i.ring(), [f.clone()])?;
    let mut current = i.clone();
    loop {
        let next = ideal_colon(&current, &principal, guards)?;
        if next.equals(&current, guards)? {
            return Ok(current);
        }
        current = next;
    }
}

/// Monomial ideal generated by the leading monomials of the reduced Groebner basis.
pub fn initial_ideal(i: &Ideal, guards: &Guards) -> Result<Ideal> {
    let ring = i.ring();
    let lms = i.leading_monomials(guards)?;
    Ideal::new(ring, lms.into_iter().map(|m| Polynomial::monomial(ring, m)))
}

/// Largest variable set containing the support of no generator (exhaustive
/// branch and bound on the generator supports).
pub fn max_independent_set(arity: usize, supports: &[Vec<usize>]) -> Vec<usize> {
    assert!(arity <= 128, "at most 128 variables are supported");
    let edges: Vec<u128> = supports
        .iter()
        .map(|s| s.iter().fold(0u128, |m, &v| m | (1u128 << v)))
        .collect();
    if edges.contains(&0) {
        return vec![];
    }
    let all: u128 = if arity == 128 { u128::MAX } else { (1u128 << arity) - 1 };
    let mut best = 0u128;
    let mut best_size = 0u32;
    search(&edges, all, &mut best, &mut best_size);
    (0..arity).filter(|&v| best >> v & 1 == 1).collect()
}

fn search(edges: &[u128], allowed: u128, best: &mut u128, best_size: &mut u32) {
    let size = allowed.count_ones();
    if size <= *best_size && *best_size > 0 {
        return;
    }
    let hit = edges
        .iter()
        .filter(|&&e| e & !allowed == 0)
        .min_by_key(|e| e.count_ones());
    match hit {
        None => {
            if size > *best_size || *best_size == 0 {
                *best = allowed;
                *best_size = size;
            }
        }
        Some(&e) => {
            let mut rest = e;
            while rest != 0 {
                let v = rest.trailing_zeros();
                rest &= rest - 1;
                search(edges, allowed & !(1u128 << v), best, best_size);
            }
        }
    }
}

/// Krull dimension of `ring / I` for a monomial ideal `I`.
pub fn monomial_dim(i: &Ideal) -> Result<usize> {
    if !i.is_monomial() {
        return Err(Error::Invalid("monomial_dim needs monomial generators".into()));
    }
    let supports: Vec<Vec<usize>> =
        i.gens().iter().map(|g| g.leading_monomial().unwrap().support().collect()).collect();
    if supports.iter().any(|s| s.is_empty()) {
        // unit ideal: empty quotient, reported as dimension 0
        return Ok(0);
    }
    Ok(max_independent_set(i.ring().arity(), &supports).len())
}
