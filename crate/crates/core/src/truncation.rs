//! Truncations `(f_1, ..., f_r)_{>=d}` of complete intersections: generators, the
//! h-polynomials coming from truncated Koszul syzygies, and presentations of the
//! Rees algebra and the special fiber ring.

use serde_json::json;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::groebner::{ideal_colon, AlgebraMap, Guards, Ideal};
use crate::polyring::{parse_poly, Monomial, MonomialOrder, Polynomial, Ring, RingSpec, TauLabel, WeightedDegree};
use crate::reescomb::{
    a_geq_generators, build_b, build_c, minor_ideal, multi_index_set, rees_target_ring, x_monomial, Instance,
    MultiIndex,
};

/// `I = (f_1, ..., f_r)_{>=d}` with `f` a homogeneous regular sequence, `deg f_1 >= ... >= deg f_r`.
#[derive(Clone, Debug)]
pub struct TruncationInstance {
    base: Ring,
    f: Vec<Polynomial>,
    degrees: Vec<u32>,
    d: u32,
    blocks: Instance,
}

/// `k[x_1, ..., x_n]`.
pub fn base_ring(n: usize, field: FieldSpec) -> Result<Ring> {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    RingSpec::plain(field, &refs, MonomialOrder::RevLex)
}

fn homogeneous_degree(p: &Polynomial) -> Result<u32> {
    match p.weighted_degree("std") {
        Ok(WeightedDegree::Homogeneous(d)) => Ok(d as u32),
        Ok(WeightedDegree::Inhomogeneous) => Err(Error::Inhomogeneous(p.to_string())),
        Err(Error::ZeroPolynomial) => Err(Error::InvalidInstance("zero polynomial in the sequence".into())),
        Err(e) => Err(e),
    }
}

/// True iff `(f_1, ..., f_{i-1}) : f_i = (f_1, ..., f_{i-1})` for every `i`.
pub fn check_regular_sequence(f: &[Polynomial], guards: &Guards) -> Result<bool> {
    let Some(first) = f.first() else {
        return Ok(true);
    };
    let ring = first.ring().clone();
    for p in f {
        if homogeneous_degree(p)? == 0 {
            return Ok(false);
        }
    }
    for i in 1..f.len() {
        let prev = Ideal::new(&ring, f[..i].iter().cloned())?;
        let colon = ideal_colon(&prev, &Ideal::new(&ring, [f[i].clone()])?, guards)?;
        if !colon.equals(&prev, guards)? {
            return Ok(false);
        }
    }
    Ok(true)
}

impl TruncationInstance {
    pub fn new(n: usize, field: FieldSpec, f: Vec<Polynomial>, d: u32, guards: &Guards) -> Result<Self> {
        let base = base_ring(n, field)?;
        if f.is_empty() {
            return Err(Error::InvalidInstance("at least one polynomial is required".into()));
        }
        if f.len() > n {
            return Err(Error::InvalidInstance(format!("r = {} exceeds n = {n}", f.len())));
        }
        let f = f.iter().map(|p| p.reorder(&base)).collect::<Result<Vec<_>>>()?;
        let degrees = f.iter().map(homogeneous_degree).collect::<Result<Vec<_>>>()?;
        if degrees.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInstance("degrees must be nonincreasing".into()));
        }
        if d < degrees[0] {
            return Err(Error::InvalidInstance(format!("d = {d} is below the largest degree {}", degrees[0])));
        }
        if !check_regular_sequence(&f, guards)? {
            return Err(Error::InvalidInstance("the polynomials do not form a regular sequence".into()));
        }
        let a: Vec<u32> = degrees.iter().map(|&di| d - di).collect();
        let blocks = Instance::with_zero_blocks(n, &a, field)?;
        Ok(TruncationInstance { base, f, degrees, d, blocks })
    }

    /// Parses each of `f` in `k[x_1, ..., x_n]`.
    pub fn parse(n: usize, field: FieldSpec, f: &[&str], d: u32, guards: &Guards) -> Result<Self> {
        let base = base_ring(n, field)?;
        let polys = f.iter().map(|s| parse_poly(&base, s)).collect::<Result<Vec<_>>>()?;
        Self::new(n, field, polys, d, guards)
    }

    pub fn n(&self) -> usize {
        self.blocks.n()
    }

    pub fn r(&self) -> usize {
        self.f.len()
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn f(&self) -> &[Polynomial] {
        &self.f
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    pub fn field(&self) -> FieldSpec {
        self.blocks.field()
    }

    /// `a_i = d - d_i`; zero exponents are kept as blocks.
    pub fn a(&self) -> &[u32] {
        self.blocks.a()
    }

    /// The block data `(n, a)`, rings `S` and `T`.
    pub fn blocks(&self) -> &Instance {
        &self.blocks
    }

    /// `sigma_{i,j} = d - d_i - d_j` (1-based `i < j`).
    pub fn sigma(&self, i: usize, j: usize) -> i64 {
        self.d as i64 - self.degrees[i - 1] as i64 - self.degrees[j - 1] as i64
    }

    /// `delta = d_1 + d_2 - d` when `r = 2` and `d <= d_1 + d_2`.
    pub fn delta(&self) -> Option<u32> {
        if self.r() == 2 && self.sigma(1, 2) <= 0 {
            Some((-self.sigma(1, 2)) as u32)
        } else {
            None
        }
    }

    /// `d >= d_1 + d_2` (always true for `r = 1`).
    pub fn is_large_d(&self) -> bool {
        self.r() == 1 || self.sigma(1, 2) >= 0
    }

    pub fn echo(&self) -> serde_json::Value {
        json!({
            "mode": "truncation",
            "n": self.n(),
            "f": self.f.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "degrees": self.degrees,
            "d": self.d,
            "a": self.a(),
            "delta": self.delta(),
            "field": self.field().to_string(),
        })
    }
}

/// Block `l` and multi-index `j` with `x^{a,j}` equal to the monomial `e` of degree `a`.
fn index_of_exponents(e: &[u16]) -> MultiIndex {
    let n = e.len();
    let mut prefix = Vec::with_capacity(n - 1);
    let mut acc = 0u32;
    for &x in &e[..n - 1] {
        acc += x as u32;
        prefix.push(acc);
    }
    prefix.reverse();
    MultiIndex(prefix)
}

/// `x^{a_l,j} f_l`, aligned with the variables of `T` (tau-descending).
pub fn truncation_generators(ti: &TruncationInstance) -> Result<Vec<Polynomial>> {
    ti.blocks
        .t_ring()
        .variables()
        .iter()
        .map(|v| {
            let lab = v.label.as_ref().unwrap();
            let l = lab.block as usize;
            let xm = x_monomial(&ti.base, ti.a()[l - 1], &MultiIndex(lab.index.clone()))?;
            Ok(&xm * &ti.f[l - 1])
        })
        .collect()
}

/// `chi: S -> R[t]`, `T_{l,j} -> x^{a_l,j} f_l t`, `x_i -> x_i`.
pub fn chi_map(ti: &TruncationInstance) -> Result<AlgebraMap> {
    let target = rees_target_ring(ti.n(), 1, ti.field())?;
    let embed: Vec<usize> = (0..ti.n()).collect();
    let t = Polynomial::var_named(&target, "t1")?;
    let s = ti.blocks.s_ring();
    let images = s
        .variables()
        .iter()
        .map(|v| {
            let lab = v.label.as_ref().unwrap();
            if lab.block == 0 {
                return Polynomial::var_named(&target, &v.name);
            }
            let l = lab.block as usize;
            let xm = x_monomial(&ti.base, ti.a()[l - 1], &MultiIndex(lab.index.clone()))?;
            Ok(&(&xm * &ti.f[l - 1]).embed(&target, &embed) * &t)
        })
        .collect::<Result<Vec<_>>>()?;
    AlgebraMap::new(s, &target, images)
}

/// `T -> R`, `T_{l,j} -> x^{a_l,j} f_l`; its image is the special fiber ring.
pub fn fiber_map(ti: &TruncationInstance) -> Result<AlgebraMap> {
    AlgebraMap::new(ti.blocks.t_ring(), &ti.base, truncation_generators(ti)?)
}

/// Which spanning set of `m^sigma` multiplies the Koszul syzygies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HBasis {
    /// The monomials of degree `sigma`.
    Monomial,
    /// `x^{sigma,t,s}` for `t` strict and `1 <= s <= n`; contains repeats.
    Redundant,
}

/// Where an h-polynomial comes from: the pair `i < j` and the multiplier `w`
/// (`None` for the single column `(-f_2, f_1)` when `d < d_1 + d_2`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HTag {
    pub i: usize,
    pub j: usize,
    pub w: Option<Polynomial>,
}

#[derive(Clone, Debug)]
pub struct HFamily {
    pub polys: Vec<Polynomial>,
    pub tags: Vec<HTag>,
}

/// `sum_k coeff(p, x^{a_l,k}) T_{l,k}` for `p` homogeneous of degree `a_l`.
fn expand_linear(ti: &TruncationInstance, p: &Polynomial, l: usize) -> Result<Polynomial> {
    let s = ti.blocks.s_ring();
    let al = ti.a()[l - 1];
    let mut terms = Vec::new();
    for t in p.terms() {
        if t.mono.degree() != al {
            return Err(Error::Invalid(format!(
                "expansion of {p} on the basis of m^{al} met a term of degree {}",
                t.mono.degree()
            )));
        }
        let k = index_of_exponents(&t.mono.0);
        let v = ti.blocks.t_var(s, l as u32, &k)?;
        terms.push((t.coeff.clone(), Monomial::var(s.arity(), v)));
    }
    Ok(Polynomial::from_terms(s, terms))
}

/// `sum c mu` rewritten as `sum c (mu / x^{a_l,k}) T_{l,k}` with `k` the tau-largest index
/// whose monomial divides `mu`.
fn expand_with_x(ti: &TruncationInstance, p: &Polynomial, l: usize) -> Result<Polynomial> {
    let s = ti.blocks.s_ring();
    let al = ti.a()[l - 1];
    let x_of: Vec<usize> = (1..=ti.n())
        .map(|i| s.var_index(&format!("x{i}")).unwrap())
        .collect();
    let mut terms = Vec::new();
    for t in p.terms() {
        let k = multi_index_set(al, ti.n(), false)
            .into_iter()
            .rev()
            .find(|k| {
                let e = crate::reescomb::x_exponents(al, k).unwrap();
                e.iter().zip(&t.mono.0).all(|(&need, &have)| need as u16 <= have)
            })
            .ok_or_else(|| Error::Invalid(format!("no basis monomial of m^{al} divides a term of {p}")))?;
        let e = crate::reescomb::x_exponents(al, &k)?;
        let mut m = vec![0u16; s.arity()];
        for i in 0..ti.n() {
            m[x_of[i]] = t.mono.0[i] - e[i] as u16;
        }
        m[ti.blocks.t_var(s, l as u32, &k)?] += 1;
        terms.push((t.coeff.clone(), Monomial(m)));
    }
    Ok(Polynomial::from_terms(s, terms))
}

fn multipliers(ti: &TruncationInstance, sigma: u32, basis: HBasis) -> Result<Vec<Polynomial>> {
    let n = ti.n();
    let idx = match basis {
        HBasis::Monomial => multi_index_set(sigma, n, false),
        HBasis::Redundant if sigma == 0 => vec![MultiIndex(vec![0; n - 1])],
        HBasis::Redundant => multi_index_set(sigma, n, true)
            .into_iter()
            .flat_map(|t| (1..=n).map(move |s| t.shifted(s)))
            .collect(),
    };
    idx.iter().map(|k| x_monomial(&ti.base, sigma, k)).collect()
}

/// The h-polynomials: rows `-w f_j e_i + w f_i e_j` rewritten on the T-variables.
pub fn h_polynomials(ti: &TruncationInstance, basis: HBasis) -> Result<HFamily> {
    let mut polys = Vec::new();
    let mut tags = Vec::new();
    if ti.r() == 1 {
        return Ok(HFamily { polys, tags });
    }
    if ti.is_large_d() {
        for i in 1..=ti.r() {
            for j in i + 1..=ti.r() {
                let sigma = ti.sigma(i, j) as u32;
                for w in multipliers(ti, sigma, basis)? {
                    let ei = expand_linear(ti, &(&w * &ti.f[j - 1]).neg(), i)?;
                    let ej = expand_linear(ti, &(&w * &ti.f[i - 1]), j)?;
                    polys.push(&ei + &ej);
                    tags.push(HTag { i, j, w: Some(w) });
                }
            }
        }
    } else if ti.r() == 2 {
        let e1 = expand_with_x(ti, &ti.f[1].neg(), 1)?;
        let e2 = expand_with_x(ti, &ti.f[0], 2)?;
        polys.push(&e1 + &e2);
        tags.push(HTag { i: 1, j: 2, w: None });
    } else {
        return Err(out_of_range(ti));
    }
    Ok(HFamily { polys, tags })
}

fn out_of_range(ti: &TruncationInstance) -> Error {
    Error::OutOfTheoremRange(format!(
        "r = {} with d = {} < d_1 + d_2 = {}",
        ti.r(),
        ti.d,
        ti.degrees[0] + ti.degrees[1]
    ))
}

/// `(I_2(C) + h A_{>=delta}) : x_1^delta` for `r = 2`, `d < d_1 + d_2`; also usable at
/// other `delta` as the ideal side of the divisorial identity.
pub fn divisorial_side(ti: &TruncationInstance, delta: u32) -> Result<Ideal> {
    let s = ti.blocks.s_ring();
    let h = h_polynomials(ti, HBasis::Monomial)?;
    let ic = minor_ideal(&build_c(&ti.blocks)?)?;
    let mut gens = ic.gens().to_vec();
    for m in a_geq_generators(s, delta)? {
        let mp = Polynomial::monomial(s, m);
        for hk in &h.polys {
            gens.push(hk * &mp);
        }
    }
    Ideal::new(s, gens)
}

fn assert_in_kernel(map: &AlgebraMap, ideal: &Ideal, what: &str) -> Result<()> {
    for g in ideal.gens() {
        if !map.apply(g)?.is_zero() {
            return Err(Error::Invalid(format!("{what} generator {g} does not map to zero")));
        }
    }
    Ok(())
}

/// Defining ideal of `R(I)` in `S`.
pub fn rees_presentation(ti: &TruncationInstance, guards: &Guards) -> Result<Ideal> {
    let s = ti.blocks.s_ring();
    let ic = minor_ideal(&build_c(&ti.blocks)?)?;
    let ideal = if ti.r() == 1 {
        ic
    } else if ti.is_large_d() {
        let h = h_polynomials(ti, HBasis::Monomial)?;
        ic.sum(&Ideal::new(s, h.polys)?)?
    } else if ti.r() == 2 {
        let delta = ti.delta().unwrap();
        let x1 = Ideal::new(s, [Polynomial::var_named(s, "x1")?])?;
        let mut cur = divisorial_side(ti, delta)?;
        for _ in 0..delta {
            cur = ideal_colon(&cur, &x1, guards)?;
        }
        cur
    } else {
        return Err(out_of_range(ti));
    };
    assert_in_kernel(&chi_map(ti)?, &ideal, "presentation")?;
    Ok(ideal)
}

/// Defining ideal of `F(I)` in `T`.
pub fn fiber_presentation(ti: &TruncationInstance, guards: &Guards) -> Result<Ideal> {
    let t = ti.blocks.t_ring();
    let ib = minor_ideal(&build_b(&ti.blocks)?)?;
    let ideal = if ti.r() == 1 {
        ib
    } else if ti.is_large_d() {
        let h = h_polynomials(ti, HBasis::Monomial)?;
        let hs = h.polys.iter().map(|p| to_t_ring(p, t)).collect::<Result<Vec<_>>>()?;
        ib.sum(&Ideal::new(t, hs.into_iter().flatten())?)?
    } else {
        // the presentation ideal is bihomogeneous, so setting x = 0 in a generating set
        // generates its image modulo (x)
        let rees = rees_presentation(ti, guards)?;
        let gens = rees.groebner(guards)?;
        let imgs = gens.iter().map(|p| to_t_ring(p, t)).collect::<Result<Vec<_>>>()?;
        Ideal::new(t, imgs.into_iter().flatten())?
    };
    assert_in_kernel(&fiber_map(ti)?, &ideal, "fiber")?;
    Ok(ideal)
}

/// Sets the x-variables to zero and moves the rest into `t`; `None` if nothing is left.
fn to_t_ring(p: &Polynomial, t: &Ring) -> Result<Option<Polynomial>> {
    let s = p.ring();
    let map: Vec<Option<usize>> = s
        .variables()
        .iter()
        .map(|v| {
            let lab: &TauLabel = v.label.as_ref().unwrap();
            if lab.block == 0 {
                None
            } else {
                t.var_by_label(lab)
            }
        })
        .collect();
    let terms = p.terms().iter().filter_map(|term| {
        let mut e = vec![0u16; t.arity()];
        for (i, &x) in term.mono.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            e[map[i]?] += x;
        }
        Some((term.coeff.clone(), Monomial(e)))
    });
    let q = Polynomial::from_terms(t, terms);
    Ok(if q.is_zero() { None } else { Some(q) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::kernel_of_map;
    use crate::polyring::WeightedDegree::Homogeneous as H;

    fn g() -> Guards {
        Guards::default()
    }

    fn ti(n: usize, f: &[&str], d: u32) -> TruncationInstance {
        TruncationInstance::parse(n, FieldSpec::Rationals, f, d, &g()).unwrap()
    }

    fn sp(ti: &TruncationInstance, s: &str) -> Polynomial {
        parse_poly(ti.blocks().s_ring(), s).unwrap()
    }

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn regular_sequence_examples() {
        let r3 = base_ring(3, FieldSpec::Rationals).unwrap();
        let p = |s: &str| parse_poly(&r3, s).unwrap();
        assert!(check_regular_sequence(&[p("x1"), p("x2")], &g()).unwrap());
        assert!(!check_regular_sequence(&[p("x1"), p("x1*x2")], &g()).unwrap());
        assert!(check_regular_sequence(&[p("x1^2 - x2*x3"), p("x2^2")], &g()).unwrap());
        assert!(check_regular_sequence(&[p("x1 + x2^2")], &g()).is_err());
    }

    #[test]
    fn instance_validation() {
        let bad = |f: &[&str], d| TruncationInstance::parse(2, FieldSpec::Rationals, f, d, &g()).is_err();
        assert!(bad(&["x1", "x2^2"], 3));
        assert!(bad(&["x1^2", "x2^2"], 1));
        assert!(bad(&["x1", "x1"], 2));
        assert!(bad(&["x1", "x2", "x1+x2"], 3));
        let t = ti(2, &["x1^2", "x2^2"], 3);
        assert_eq!(t.a(), &[1, 1]);
        assert_eq!(t.delta(), Some(1));
        assert!(!t.is_large_d());
    }

    #[test]
    fn generator_examples() {
        let t = ti(2, &["x1", "x2"], 2);
        let gens = truncation_generators(&t).unwrap();
        let names: Vec<&str> = t.blocks().t_ring().variables().iter().map(|v| v.name.as_str()).collect();
        assert_eq!(names, vec!["T_2_1", "T_2_0", "T_1_1", "T_1_0"]);
        let b = t.base();
        let expected: Vec<Polynomial> =
            ["x1*x2", "x2^2", "x1^2", "x1*x2"].iter().map(|s| parse_poly(b, s).unwrap()).collect();
        assert_eq!(gens, expected);
        let one = ti(2, &["x1^2+x2^2"], 2);
        assert_eq!(truncation_generators(&one).unwrap(), vec![one.f()[0].clone()]);
        for (n, f, d) in [(3, vec!["x1^2", "x2"], 4), (2, vec!["x1^3", "x2^2"], 5)] {
            let t = ti(n, &f, d);
            let gens = truncation_generators(&t).unwrap();
            let count: u64 = t.a().iter().map(|&a| binom(a as u64 + n as u64 - 1, n as u64 - 1)).sum();
            assert_eq!(gens.len() as u64, count);
            assert!(gens.iter().all(|p| p.weighted_degree("std").unwrap() == H(d as i64)));
        }
    }

    #[test]
    fn h_examples() {
        let t = ti(2, &["x1", "x2"], 2);
        let h = h_polynomials(&t, HBasis::Monomial).unwrap();
        assert_eq!(h.polys, vec![sp(&t, "T_2_1 - T_1_0")]);
        let chi = chi_map(&t).unwrap();
        assert!(chi.apply(&h.polys[0]).unwrap().is_zero());

        let t = ti(2, &["x1^2", "x2^2"], 3);
        let h = h_polynomials(&t, HBasis::Monomial).unwrap();
        assert_eq!(h.polys, vec![sp(&t, "-x2*T_1_0 + x1*T_2_1")]);
        assert!(chi_map(&t).unwrap().apply(&h.polys[0]).unwrap().is_zero());
        let bideg = (h.polys[0].weighted_degree("std-x").unwrap(), h.polys[0].weighted_degree("std-T").unwrap());
        assert_eq!(bideg, (H(1), H(1)));

        assert!(h_polynomials(&ti(3, &["x1^2", "x2^2", "x3^2"], 3), HBasis::Monomial).is_err());
    }

    #[test]
    fn h_count_and_bidegree() {
        for (n, f, d) in [
            (2, vec!["x1^2", "x2^2"], 5),
            (3, vec!["x1", "x2", "x3"], 3),
            (3, vec!["x1^2 - x2*x3", "x2^2"], 6),
            (2, vec!["x1^2 + x1*x2", "x2"], 4),
        ] {
            let t = ti(n, &f, d);
            let h = h_polynomials(&t, HBasis::Monomial).unwrap();
            let mut expected = 0;
            for i in 1..=t.r() {
                for j in i + 1..=t.r() {
                    expected += binom(t.sigma(i, j) as u64 + n as u64 - 1, n as u64 - 1);
                }
            }
            assert_eq!(h.polys.len() as u64, expected);
            let chi = chi_map(&t).unwrap();
            for p in &h.polys {
                assert_eq!(p.weighted_degree("std-x").unwrap(), H(0));
                assert_eq!(p.weighted_degree("std-T").unwrap(), H(1));
                assert!(chi.apply(p).unwrap().is_zero());
            }
            // the redundant family spans the same ideal modulo nothing: it is the same set
            // of rows with repeats
            let red = h_polynomials(&t, HBasis::Redundant).unwrap();
            let s = t.blocks().s_ring();
            let a = Ideal::new(s, h.polys.clone()).unwrap();
            let b = Ideal::new(s, red.polys.clone()).unwrap();
            assert!(a.equals(&b, &g()).unwrap());
        }
    }

    #[test]
    fn small_d_h_bidegree() {
        for (f, d, delta) in [(vec!["x1^2", "x2^2"], 3, 1), (vec!["x1^3", "x2^3"], 4, 2), (vec!["x1^3", "x2^2"], 3, 2)] {
            let t = ti(2, &f, d);
            assert_eq!(t.delta(), Some(delta));
            let h = h_polynomials(&t, HBasis::Monomial).unwrap();
            assert_eq!(h.polys.len(), 1);
            let p = &h.polys[0];
            assert_eq!(p.weighted_degree("std-x").unwrap(), H(delta as i64));
            assert_eq!(p.weighted_degree("std-T").unwrap(), H(1));
            assert!(chi_map(&t).unwrap().apply(p).unwrap().is_zero());
        }
    }

    fn oracle_rees(t: &TruncationInstance) -> Ideal {
        kernel_of_map(&chi_map(t).unwrap(), &g()).unwrap()
    }

    #[test]
    fn rees_presentation_examples() {
        let t = ti(2, &["x1", "x2"], 2);
        let pres = rees_presentation(&t, &g()).unwrap();
        let listed = Ideal::new(
            t.blocks().s_ring(),
            ["x1*T_1_0 - x2*T_1_1", "x1*T_2_0 - x2*T_2_1", "T_1_1*T_2_0 - T_1_0*T_2_1", "T_2_1 - T_1_0"]
                .map(|s| sp(&t, s)),
        )
        .unwrap();
        assert!(pres.equals(&listed, &g()).unwrap());
        assert!(pres.equals(&oracle_rees(&t), &g()).unwrap());

        let t = ti(2, &["x1^2", "x2^2"], 3);
        assert!(rees_presentation(&t, &g()).unwrap().equals(&oracle_rees(&t), &g()).unwrap());

        let t = ti(2, &["x1^2"], 3);
        let pres = rees_presentation(&t, &g()).unwrap();
        let ic = minor_ideal(&build_c(t.blocks()).unwrap()).unwrap();
        assert!(pres.equals(&ic, &g()).unwrap());
        assert!(pres.equals(&oracle_rees(&t), &g()).unwrap());

        assert!(matches!(
            rees_presentation(&ti(3, &["x1^2", "x2^2", "x3^2"], 3), &g()),
            Err(Error::OutOfTheoremRange(_))
        ));
    }

    #[test]
    fn fiber_presentation_examples() {
        let t = ti(2, &["x1", "x2"], 2);
        let fib = fiber_presentation(&t, &g()).unwrap();
        let tr = t.blocks().t_ring();
        let listed = Ideal::new(
            tr,
            ["T_1_1*T_2_0 - T_1_0*T_2_1", "T_2_1 - T_1_0"].map(|s| parse_poly(tr, s).unwrap()),
        )
        .unwrap();
        assert!(fib.equals(&listed, &g()).unwrap());
        let oracle = kernel_of_map(&fiber_map(&t).unwrap(), &g()).unwrap();
        assert!(fib.equals(&oracle, &g()).unwrap());

        let t = ti(2, &["x1^2", "x2^2"], 3);
        let fib = fiber_presentation(&t, &g()).unwrap();
        let oracle = kernel_of_map(&fiber_map(&t).unwrap(), &g()).unwrap();
        assert!(fib.equals(&oracle, &g()).unwrap());

        let t = ti(2, &["x1^2"], 4);
        let fib = fiber_presentation(&t, &g()).unwrap();
        assert!(fib.equals(&minor_ideal(&build_b(t.blocks()).unwrap()).unwrap(), &g()).unwrap());
    }
}
