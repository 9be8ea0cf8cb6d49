use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::field::Coeff;
use crate::groebner::s_polynomial;
use crate::polyring::{Monomial, Polynomial};
use crate::reescomb::{display_name, Minor, VarMatrix};

/// Outcome of certifying the S-pair of two minors.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SPairOutcome {
    /// Leading terms are coprime, so the S-pair reduces to zero.
    Coprime,
    Certified(SPairCertificate),
    /// No case of the analysis applies; `reason` names the failed step.
    Unclassified { reason: String },
}

/// `d(ag - ef) - g(ad - bc) = b(cg - fG) - f(de - bG)` for a choice of `G`.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SPairCertificate {
    pub minor1: String,
    pub minor2: String,
    pub case: u8,
    /// Entries `a, b, c, d, e, f, g, G` by display name.
    pub entries: Vec<(char, String)>,
    /// `G` was not the entry the case prescribes; another matrix entry was found.
    pub g_by_search: bool,
    /// `m1 = cg - fG`, `m2 = de - bG`; `0` when the minor vanishes. For direct
    /// certificates, the first two minors of the combination.
    pub m1: String,
    pub m2: String,
    pub identity: String,
    /// `term < adg` for every term on the right.
    pub comparisons: Vec<String>,
    /// Equal leading terms: the S-pair is a combination of minors with smaller
    /// leading terms.
    pub direct: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Role {
    TopLeft,
    BottomRight,
}

struct Pos {
    tl: usize,
    tr: usize,
    bl: usize,
    br: usize,
}

fn corners(m: &VarMatrix, mi: &Minor) -> Pos {
    let (s, t) = mi.rows;
    let (c1, c2) = mi.cols;
    Pos { tl: m.entry(s, c1), tr: m.entry(s, c2), bl: m.entry(t, c1), br: m.entry(t, c2) }
}

fn mono2(arity: usize, u: usize, v: usize) -> Monomial {
    let mut e = vec![0u16; arity];
    e[u] += 1;
    e[v] += 1;
    Monomial(e)
}

fn describe(m: &VarMatrix, mi: &Minor) -> String {
    let p = corners(m, mi);
    let name = |v: usize| display_name(m.ring().variables()[v].label.as_ref().unwrap());
    format!("|{} {}; {} {}|", name(p.tl), name(p.tr), name(p.bl), name(p.br))
}

/// Minors of a matrix, keyed by their monic form for membership up to sign.
pub struct MinorSet {
    polys: HashSet<Polynomial>,
    list: Vec<Polynomial>,
}

impl MinorSet {
    pub fn new(minors: &[Minor]) -> Self {
        let list: Vec<Polynomial> = minors.iter().map(|m| m.poly.monic()).collect();
        MinorSet { polys: list.iter().cloned().collect(), list }
    }

    /// Writes a quadric `p` as `sum c_k m_k` over minors by cancelling its leading term
    /// against a minor with the same leading monomial, repeatedly.
    fn linear_combination(&self, p: &Polynomial) -> Option<Vec<(Coeff, Polynomial)>> {
        let mut rest = p.clone();
        let mut out = Vec::new();
        while !rest.is_zero() {
            let lt = rest.leading_term().ok()?.clone();
            let m = self.list.iter().find(|m| m.leading_monomial() == Some(&lt.mono))?;
            rest = &rest - &m.scale(&lt.coeff);
            out.push((lt.coeff, m.clone()));
        }
        Some(out)
    }

    /// Zero or plus-minus a minor.
    pub fn contains(&self, p: &Polynomial) -> bool {
        p.is_zero() || self.polys.contains(&p.monic())
    }
}

#[derive(Clone, Copy)]
struct Letters {
    a: usize,
    b: usize,
    c: usize,
    d: usize,
    e: usize,
    f: usize,
    g: usize,
}

/// Positional letters and `G` for `h1`, `h2` with the shared variable in the given roles.
fn positional(p1: &Pos, p2: &Pos, m1: &Minor, m2: &Minor, m: &VarMatrix, roles: (Role, Role)) -> Option<(u8, Letters, usize)> {
    match roles {
        // h1 = |a f; e g|, h2 = |a c; b d|, G in h1's bottom row and h2's right column
        (Role::TopLeft, Role::TopLeft) => Some((
            1,
            Letters { a: p1.tl, f: p1.tr, e: p1.bl, g: p1.br, c: p2.tr, b: p2.bl, d: p2.br },
            m.entry(m1.rows.1, m2.cols.1),
        )),
        // h1 = |a e; f g|, h2 = |d c; b a|, G in h2's top row and h1's right column
        (Role::TopLeft, Role::BottomRight) => Some((
            2,
            Letters { a: p1.tl, e: p1.tr, f: p1.bl, g: p1.br, d: p2.tl, c: p2.tr, b: p2.bl },
            m.entry(m2.rows.0, m1.cols.1),
        )),
        // h1 = |d b; c a|, h2 = |g e; f a|, G in h2's top row and h1's left column
        (Role::BottomRight, Role::BottomRight) => Some((
            3,
            Letters { d: p1.tl, b: p1.tr, c: p1.bl, a: p1.br, g: p2.tl, e: p2.tr, f: p2.bl },
            m.entry(m2.rows.0, m1.cols.0),
        )),
        (Role::BottomRight, Role::TopLeft) => None,
    }
}

struct Verified {
    m1: Polynomial,
    m2: Polynomial,
    lhs: Polynomial,
    comparisons: Vec<String>,
}

/// Re-verifies the identity, minor membership and the strict order comparisons.
fn verify(m: &VarMatrix, set: &MinorSet, l: &Letters, big_g: usize, spoly: &Polynomial) -> Option<Verified> {
    let ring = m.ring();
    let v = |i: usize| Polynomial::var(ring, i);
    let (a, b, c, d, e, f, g, gg) = (v(l.a), v(l.b), v(l.c), v(l.d), v(l.e), v(l.f), v(l.g), v(big_g));
    let h_ag = &(&a * &g) - &(&e * &f);
    let h_ad = &(&a * &d) - &(&b * &c);
    let m1 = &(&c * &g) - &(&f * &gg);
    let m2 = &(&d * &e) - &(&b * &gg);
    if !set.contains(&h_ag) || !set.contains(&h_ad) || !set.contains(&m1) || !set.contains(&m2) {
        return None;
    }
    let lhs = &(&d * &h_ag) - &(&g * &h_ad);
    let rhs = &(&b * &m1) - &(&f * &m2);
    if lhs != rhs {
        return None;
    }
    // the left side must be the S-pair (up to a unit)
    if lhs.is_zero() != spoly.is_zero() || (!lhs.is_zero() && lhs.monic() != *spoly) {
        return None;
    }
    let adg = (&(&a * &d) * &g).terms()[0].mono.clone();
    let mut comparisons = Vec::new();
    for side in [&b * &m1, &f * &m2] {
        for t in side.terms() {
            if ring.cmp(&t.mono, &adg) != std::cmp::Ordering::Less {
                return None;
            }
            comparisons.push(format!(
                "{} < {}",
                Polynomial::monomial(ring, t.mono.clone()),
                Polynomial::monomial(ring, adg.clone())
            ));
        }
    }
    Some(Verified { m1, m2, lhs, comparisons })
}

fn roles_of(p: &Pos, v: usize) -> Vec<Role> {
    let mut r = Vec::new();
    if p.tl == v {
        r.push(Role::TopLeft);
    }
    if p.br == v {
        r.push(Role::BottomRight);
    }
    r
}

/// Certifies that the S-pair of `mi1`, `mi2` (minors of `m`, listed in `set`) reduces
/// to zero, following the three-case analysis with a structured choice of `G`.
pub fn structured_spair_certificate(
    m: &VarMatrix,
    set: &MinorSet,
    mi1: &Minor,
    mi2: &Minor,
) -> Result<SPairOutcome> {
    let arity = m.ring().arity();
    let (p1, p2) = (corners(m, mi1), corners(m, mi2));
    let lt1 = mi1.poly.leading_term()?.mono.clone();
    let lt2 = mi2.poly.leading_term()?.mono.clone();
    if lt1 != mono2(arity, p1.tl, p1.br) || lt2 != mono2(arity, p2.tl, p2.br) {
        return Ok(SPairOutcome::Unclassified { reason: "leading term is not the main diagonal".into() });
    }
    if lt1.is_coprime(&lt2) {
        return Ok(SPairOutcome::Coprime);
    }
    let spoly = s_polynomial(&mi1.poly, &mi2.poly)?;
    let name = |v: usize| display_name(m.ring().variables()[v].label.as_ref().unwrap());
    let shared: Vec<usize> = lt1.gcd(&lt2).support().collect();

    let build = |h1: &Minor, h2: &Minor, case: u8, l: &Letters, gg: usize, by_search: bool, ver: Verified| {
        SPairCertificate {
            minor1: describe(m, h1),
            minor2: describe(m, h2),
            case,
            entries: vec![
                ('a', name(l.a)),
                ('b', name(l.b)),
                ('c', name(l.c)),
                ('d', name(l.d)),
                ('e', name(l.e)),
                ('f', name(l.f)),
                ('g', name(l.g)),
                ('G', name(gg)),
            ],
            g_by_search: by_search,
            m1: ver.m1.to_string(),
            m2: ver.m2.to_string(),
            identity: format!("d(ag - ef) - g(ad - bc) = {}", ver.lhs),
            comparisons: ver.comparisons,
            direct: false,
        }
    };

    // equal leading terms: the S-pair is a quadric and must be a combination of minors
    // whose leading terms lie below the common one
    if lt1 == lt2 {
        if let Some(chain) = set.linear_combination(&spoly) {
            let roles = (roles_of(&p1, shared[0])[0], roles_of(&p2, shared[0])[0]);
            let case = match roles {
                (Role::TopLeft, Role::TopLeft) => 1,
                (Role::BottomRight, Role::BottomRight) => 3,
                _ => 2,
            };
            let ring = m.ring();
            let mut comparisons = Vec::new();
            for (_, mk) in &chain {
                let lm = mk.leading_monomial().unwrap();
                if ring.cmp(lm, &lt1) != std::cmp::Ordering::Less {
                    return Ok(SPairOutcome::Unclassified { reason: "combination does not descend".into() });
                }
                comparisons.push(format!(
                    "{} < {}",
                    Polynomial::monomial(ring, lm.clone()),
                    Polynomial::monomial(ring, lt1.clone())
                ));
            }
            let terms: Vec<String> = chain.iter().map(|(c, mk)| format!("({c})({mk})")).collect();
            return Ok(SPairOutcome::Certified(SPairCertificate {
                minor1: describe(m, mi1),
                minor2: describe(m, mi2),
                case,
                entries: Vec::new(),
                g_by_search: false,
                m1: chain.first().map_or("0".into(), |(_, p)| p.to_string()),
                m2: chain.get(1).map_or("0".into(), |(_, p)| p.to_string()),
                identity: format!("S = {}", if terms.is_empty() { "0".into() } else { terms.join(" + ") }),
                comparisons,
                direct: true,
            }));
        }
    }

    let orders = [(mi1, mi2, &p1, &p2), (mi2, mi1, &p2, &p1)];
    // positional G first
    for &(h1, h2, q1, q2) in &orders {
        for &a in &shared {
            for &r1 in &roles_of(q1, a) {
                for &r2 in &roles_of(q2, a) {
                    let Some((case, l, gg)) = positional(q1, q2, h1, h2, m, (r1, r2)) else {
                        continue;
                    };
                    if let Some(ver) = verify(m, set, &l, gg, &spoly) {
                        return Ok(SPairOutcome::Certified(build(h1, h2, case, &l, gg, false, ver)));
                    }
                }
            }
        }
    }
    // any matrix entry as G, and either labelling of the off-diagonal entries
    let mut entries: Vec<usize> = (0..m.rows()).flat_map(|s| (0..m.cols()).map(move |c| (s, c))).map(|(s, c)| m.entry(s, c)).collect();
    entries.sort_unstable();
    entries.dedup();
    for &(h1, h2, q1, q2) in &orders {
        for &a in &shared {
            for &r1 in &roles_of(q1, a) {
                for &r2 in &roles_of(q2, a) {
                    let Some((case, l, _)) = positional(q1, q2, h1, h2, m, (r1, r2)) else {
                        continue;
                    };
                    for swap_ef in [false, true] {
                        for swap_bc in [false, true] {
                            let mut l2 = l;
                            if swap_ef {
                                std::mem::swap(&mut l2.e, &mut l2.f);
                            }
                            if swap_bc {
                                std::mem::swap(&mut l2.b, &mut l2.c);
                            }
                            for &gg in &entries {
                                if let Some(ver) = verify(m, set, &l2, gg, &spoly) {
                                    return Ok(SPairOutcome::Certified(build(h1, h2, case, &l2, gg, true, ver)));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(SPairOutcome::Unclassified {
        reason: format!("no choice of G certifies {} and {}", describe(m, mi1), describe(m, mi2)),
    })
}

/// Tally of certificates over all pairs of minors of a matrix.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct SPairSweep {
    pub pairs: usize,
    pub coprime: usize,
    pub case1: usize,
    pub case2: usize,
    pub case3: usize,
    pub direct: usize,
    pub g_by_search: usize,
    pub unclassified: Vec<String>,
}

impl fmt::Display for SPairSweep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} pairs: {} coprime, cases 1/2/3 = {}/{}/{}, {} unclassified",
            self.pairs,
            self.coprime,
            self.case1,
            self.case2,
            self.case3,
            self.unclassified.len()
        )
    }
}

/// Certifies every pair of minors of `m`.
pub fn certify_all(m: &VarMatrix, minors: &[Minor]) -> Result<SPairSweep> {
    let set = MinorSet::new(minors);
    let mut sw = SPairSweep::default();
    for i in 0..minors.len() {
        for j in i + 1..minors.len() {
            sw.pairs += 1;
            match structured_spair_certificate(m, &set, &minors[i], &minors[j])? {
                SPairOutcome::Coprime => sw.coprime += 1,
                SPairOutcome::Certified(c) => {
                    match c.case {
                        1 => sw.case1 += 1,
                        2 => sw.case2 += 1,
                        _ => sw.case3 += 1,
                    }
                    sw.direct += c.direct as usize;
                    sw.g_by_search += c.g_by_search as usize;
                }
                SPairOutcome::Unclassified { reason } => sw.unclassified.push(reason),
            }
        }
    }
    Ok(sw)
}
