use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::groebner::{
    initial_ideal, is_groebner, kernel_of_map, monomial_dim, normal_form, s_polynomial, AlgebraMap, Guards,
    Ideal,
};
use crate::polyring::{Monomial, MonomialOrder, Polynomial, Ring};
use crate::reescomb::{
    a_geq_generators, build_b, build_c, dim_witness, dim_witness_c, display_name, minor_ideal, minors2,
    predicted_initial_gens, rees_maps, special_ideals, Instance, MultiIndex, VarMatrix,
};
use crate::truncation::{
    chi_map, divisorial_side, fiber_map, fiber_presentation, rees_presentation, TruncationInstance,
};

use super::{certify_all, CheckKind, CheckParams, Outcome, Verdict};

pub(super) fn run_powers(kind: CheckKind, inst: &Instance, p: &CheckParams) -> Result<Outcome> {
    match kind {
        CheckKind::GbMinors => gb_minors(inst, p),
        CheckKind::InitialIdeal => initial_ideal_check(inst, &p.guards),
        CheckKind::KernelEqualityM => kernel_equality(inst, &p.guards),
        CheckKind::Dimension => dimension(inst, &p.guards),
        CheckKind::ColonIdentity => colon_identity(inst, &p.guards),
        CheckKind::InductionMembership => induction_membership(inst, &p.guards),
        CheckKind::SymbolicPower => symbolic_power(inst, p),
        _ => unreachable!("{kind} is a truncation check"),
    }
}

pub(super) fn run_truncation(kind: CheckKind, ti: &TruncationInstance, p: &CheckParams) -> Result<Outcome> {
    match kind {
        CheckKind::ReesPresentation => rees_presentation_check(ti, &p.guards),
        CheckKind::DivisorialIdentity => divisorial_identity(ti, p),
        CheckKind::QuadraticGb => quadratic_gb(ti, &p.guards),
        CheckKind::HeightQ => height_q(ti, &p.guards),
        _ => unreachable!("{kind} is a powers check"),
    }
}

fn var_display(ring: &Ring, v: usize) -> String {
    match &ring.variables()[v].label {
        Some(l) => display_name(l),
        None => ring.var_name(v).to_string(),
    }
}

fn mono_display(ring: &Ring, m: &Monomial) -> String {
    let parts: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| if e == 1 { var_display(ring, v) } else { format!("{}^{e}", var_display(ring, v)) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Generators of one ideal outside the other, in both directions.
fn difference(lhs: &Ideal, rhs: &Ideal, guards: &Guards) -> Result<(Vec<String>, Vec<String>)> {
    let mut only_lhs = Vec::new();
    for g in lhs.gens() {
        if !rhs.contains(g, guards)? {
            only_lhs.push(g.to_string());
        }
    }
    let mut only_rhs = Vec::new();
    for g in rhs.gens() {
        if !lhs.contains(g, guards)? {
            only_rhs.push(g.to_string());
        }
    }
    Ok((only_lhs, only_rhs))
}

/// Two-way equality; records basis sizes under `name` and fails with the stray generators.
fn compare(out: Outcome, name: &str, lhs: &Ideal, rhs: &Ideal, guards: &Guards) -> Result<Outcome> {
    let mut out = out;
    let (a, b) = difference(lhs, rhs, guards)?;
    out.evidence.insert(
        name.into(),
        json!({
            "lhsBasis": lhs.groebner(guards)?.len(),
            "rhsBasis": rhs.groebner(guards)?.len(),
            "equal": a.is_empty() && b.is_empty(),
        }),
    );
    if a.is_empty() && b.is_empty() {
        Ok(out)
    } else {
        Ok(out.fail(json!({ "comparison": name, "onlyLhs": a, "onlyRhs": b })))
    }
}

/// Minor count and, per non-reducing S-pair, the pair and its nonzero remainder (an
/// element of the ideal whose leading term no minor's leading term divides).
fn gb_of_matrix(m: &VarMatrix) -> Result<(usize, Vec<Value>)> {
    let polys: Vec<Polynomial> = minors2(m).into_iter().map(|mi| mi.poly).collect();
    let (_, offenders) = is_groebner(&polys)?;
    let named = offenders
        .iter()
        .map(|&(i, j)| {
            let rem = normal_form(&s_polynomial(&polys[i], &polys[j])?, &polys)?;
            Ok(json!({
                "pair": [polys[i].to_string(), polys[j].to_string()],
                "remainder": rem.to_string(),
                "remainderLeading": mono_display(m.ring(), rem.leading_monomial().unwrap()),
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((polys.len(), named))
}

fn gb_minors(inst: &Instance, p: &CheckParams) -> Result<Outcome> {
    let mut out = Outcome::new(Map::new());
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    out.evidence.insert("seed".into(), json!(p.seed));
    for (name, m) in [("B", build_b(inst)?), ("C", build_c(inst)?)] {
        let (size, offenders) = gb_of_matrix(&m)?;
        let reduced = minor_ideal(&m)?.groebner(&p.guards)?.len();
        let minors = minors2(&m);
        let sweep = certify_all(&m, &minors)?;
        let mut subs = Vec::new();
        if m.cols() >= 2 {
            for _ in 0..p.submatrices {
                let k = rng.gen_range(2..=m.cols());
                let mut cols = sample(&mut rng, m.cols(), k).into_vec();
                cols.sort_unstable();
                let sub = m.submatrix(&cols);
                let (sub_size, sub_off) = gb_of_matrix(&sub)?;
                subs.push(json!({ "columns": cols, "minors": sub_size, "offenders": sub_off.len() }));
                if !sub_off.is_empty() {
                    out = out.fail(json!({
                        "matrix": name,
                        "columns": cols,
                        "grid": sub.grid(),
                        "offenders": sub_off,
                    }));
                }
            }
        }
        out.evidence.insert(
            name.into(),
            json!({
                "columns": m.cols(),
                "gbSize": size,
                "reducedGbSize": reduced,
                "offenders": offenders.len(),
                "spairs": sweep,
                "submatrices": subs,
            }),
        );
        if !offenders.is_empty() {
            out = out.fail(json!({ "matrix": name, "offenders": offenders }));
        }
        if !sweep.unclassified.is_empty() {
            out = out.fail(json!({ "matrix": name, "unclassified": sweep.unclassified }));
        }
    }
    Ok(out)
}

fn initial_ideal_check(inst: &Instance, guards: &Guards) -> Result<Outcome> {
    let mut out = Outcome::new(Map::new());
    for (name, m) in [("B", build_b(inst)?), ("C", build_c(inst)?)] {
        let ring = m.ring().clone();
        let predicted: BTreeSet<Monomial> = predicted_initial_gens(&m).into_iter().collect();
        let computed: BTreeSet<Monomial> = initial_ideal(&minor_ideal(&m)?, guards)?
            .gens()
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect();
        let names = |s: &mut dyn Iterator<Item = &Monomial>| -> Vec<String> { s.map(|x| mono_display(&ring, x)).collect() };
        out.evidence.insert(
            name.into(),
            json!({ "predicted": predicted.len(), "computed": computed.len() }),
        );
        if predicted != computed {
            let missing = names(&mut computed.difference(&predicted));
            let extra = names(&mut predicted.difference(&computed));
            out = out.fail(json!({ "matrix": name, "notPredicted": missing, "notComputed": extra }));
        }
    }
    Ok(out)
}

fn kernel_equality(inst: &Instance, guards: &Guards) -> Result<Outcome> {
    let (phi, psi) = rees_maps(inst)?;
    let out = Outcome::new(Map::new());
    let out = compare(out, "kerPhi=I2(C)", &kernel_of_map(&phi, guards)?, &minor_ideal(&build_c(inst)?)?, guards)?;
    compare(out, "kerPsi=I2(B)", &kernel_of_map(&psi, guards)?, &minor_ideal(&build_b(inst)?)?, guards)
}

fn is_independent(vars: &[usize], gens: &[Polynomial]) -> Option<String> {
    gens.iter()
        .find(|g| g.leading_monomial().unwrap().support().all(|v| vars.contains(&v)))
        .map(|g| g.to_string())
}

fn dimension(inst: &Instance, guards: &Guards) -> Result<Outcome> {
    let mut out = Outcome::new(Map::new());
    let (n, r) = (inst.n(), inst.r());
    for (name, m, expected, u) in [
        ("B", build_b(inst)?, n + r - 1, dim_witness(inst)?),
        ("C", build_c(inst)?, n + r, dim_witness_c(inst)?),
    ] {
        let init = initial_ideal(&minor_ideal(&m)?, guards)?;
        let dim = monomial_dim(&init)?;
        let hit = is_independent(&u.vars, init.gens());
        let ring = m.ring();
        out.evidence.insert(
            name.into(),
            json!({
                "dim": dim,
                "expected": expected,
                "witness": u.vars.iter().map(|&v| var_display(ring, v)).collect::<Vec<_>>(),
                "witnessListed": u.raw_len,
            }),
        );
        if dim != expected {
            out = out.fail(json!({ "matrix": name, "dim": dim, "expected": expected }));
        }
        if u.vars.len() != expected {
            out = out.fail(json!({ "matrix": name, "witnessSize": u.vars.len(), "expected": expected }));
        }
        if let Some(g) = hit {
            out = out.fail(json!({ "matrix": name, "witnessContainsInitialOf": g }));
        }
    }
    Ok(out)
}

/// `T_{r,(a_r,...,a_r)}`.
fn top_variable(inst: &Instance) -> Result<Polynomial> {
    let t = inst.t_ring();
    let v = inst.t_var(t, inst.r() as u32, &MultiIndex(vec![inst.a_r(); inst.n() - 1]))?;
    Ok(Polynomial::var(t, v))
}

fn colon_identity(inst: &Instance, guards: &Guards) -> Result<Outcome> {
    let sp = special_ideals(inst)?;
    let ib = minor_ideal(&build_b(inst)?)?;
    let top = top_variable(inst)?;
    let base = ib.sum(&Ideal::new(inst.t_ring(), [top.clone()])?)?;
    let ka = sp.k.power(inst.a_r())?;
    let lhs = crate::groebner::ideal_colon(&base, &ka, guards)?;
    let rhs = ib.sum(&sp.p)?;
    let mut out = Outcome::new(Map::new());
    out.evidence.insert("generator".into(), json!(top.to_string()));
    out.evidence.insert("power".into(), json!(inst.a_r()));
    compare(out, "colon=P", &lhs, &rhs, guards)
}

/// Monomials of degree `k` in the given variables.
fn monomials_in(arity: usize, vars: &[usize], k: u32) -> Vec<Monomial> {
    fn rec(start: usize, left: u32, vars: &[usize], cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(Monomial(cur.clone()));
            return;
        }
        for i in start..vars.len() {
            cur[vars[i]] += 1;
            rec(i, left - 1, vars, cur, out);
            cur[vars[i]] -= 1;
        }
    }
    let mut out = Vec::new();
    rec(0, k, vars, &mut vec![0; arity], &mut out);
    out
}

fn k_vars(inst: &Instance) -> Result<Vec<usize>> {
    let sp = special_ideals(inst)?;
    Ok(sp.k.gens().iter().map(|g| g.leading_monomial().unwrap().support().next().unwrap()).collect())
}

fn induction_membership(inst: &Instance, guards: &Guards) -> Result<Outcome> {
    let t = inst.t_ring();
    let ib = minor_ideal(&build_b(inst)?)?;
    let target = ib.sum(&Ideal::new(t, [top_variable(inst)?])?)?;
    target.groebner(guards)?;
    let kv = k_vars(inst)?;
    let mut out = Outcome::new(Map::new());
    let mut checked = 0usize;
    let r = inst.r() as u32;
    for j in crate::reescomb::multi_index_set(inst.a_r(), inst.n(), false) {
        let tj = Polynomial::var(t, inst.t_var(t, r, &j)?);
        for lambda in monomials_in(t.arity(), &kv, inst.a_r() - j.j1()) {
            let prod = &tj * &Polynomial::monomial(t, lambda.clone());
            checked += 1;
            if !target.contains(&prod, guards)? {
                out = out.fail(json!({
                    "j": j.to_string(),
                    "lambda": mono_display(t, &lambda),
                    "product": prod.to_string(),
                }));
            }
        }
    }
    out.evidence.insert("products".into(), json!(checked));
    Ok(out)
}

fn symbolic_power(inst: &Instance, p: &CheckParams) -> Result<Outcome> {
    let t = inst.t_ring();
    let deg = t.grading("Deg")?.to_vec();
    let kv = k_vars(inst)?;
    let zero_vars: Vec<usize> = (0..t.arity()).filter(|&v| deg[v] == 0).collect();
    let ib = minor_ideal(&build_b(inst)?)?;
    let max_a = inst.a().iter().copied().max().unwrap_or(0);
    let deltas = p.delta.clone().unwrap_or_else(|| (1..=inst.a_r() + 1).collect());
    let mut out = Outcome::new(Map::new());
    let mut per_delta = Vec::new();
    for delta in deltas {
        let bound = p.witness_bound.unwrap_or(2 * delta * max_a);
        let kd = monomials_in(t.arity(), &kv, delta);
        // (i) K^delta lies in A_{>=delta}
        if let Some(m) = kd.iter().find(|m| m.weighted_degree(&deg) < delta as i64) {
            out = out.fail(json!({ "delta": delta, "kPowerBelowDeg": mono_display(t, m) }));
        }
        let gens = a_geq_generators(t, delta)?;
        // (ii) A_{>=delta} lies in K
        if let Some(m) = gens.iter().find(|m| !m.support().any(|v| kv.contains(&v))) {
            out = out.fail(json!({ "delta": delta, "generatorOutsideK": mono_display(t, m) }));
        }
        // (iii) a Deg-0 witness f with f m in K^delta modulo I_2(B)
        let target = ib.sum(&Ideal::new(t, kd.iter().map(|m| Polynomial::monomial(t, m.clone())))?)?;
        target.groebner(&p.guards)?;
        let mut witnesses = Map::new();
        let mut exhausted = Vec::new();
        for g in &gens {
            let gp = Polynomial::monomial(t, g.clone());
            let mut found = None;
            'search: for k in 0..=bound {
                for f in monomials_in(t.arity(), &zero_vars, k) {
                    let fp = Polynomial::monomial(t, f.clone());
                    if target.contains(&(&fp * &gp), &p.guards)? {
                        found = Some(f);
                        break 'search;
                    }
                }
                if zero_vars.is_empty() {
                    break;
                }
            }
            match found {
                Some(f) => {
                    witnesses.insert(mono_display(t, g), json!(mono_display(t, &f)));
                }
                None => exhausted.push(mono_display(t, g)),
            }
        }
        per_delta.push(json!({
            "delta": delta,
            "aGeq": gens.iter().map(|m| mono_display(t, m)).collect::<Vec<_>>(),
            "kPowerGenerators": kd.len(),
            "witnesses": witnesses,
            "witnessBound": bound,
            "unmatched": exhausted,
        }));
        if !exhausted.is_empty() && out.verdict == Verdict::Pass {
            out.verdict = Verdict::BoundExhausted;
        }
    }
    out.evidence.insert("deltas".into(), Value::Array(per_delta));
    Ok(out)
}

fn rees_presentation_check(ti: &TruncationInstance, guards: &Guards) -> Result<Outcome> {
    let mut out = Outcome::new(Map::new());
    let pres = rees_presentation(ti, guards)?;
    let oracle = kernel_of_map(&chi_map(ti)?, guards)?;
    if ti.delta() == Some(1) {
        // R(I) and the divisorial ideal L of R(M) have the same dimension
        let l = special_ideals(ti.blocks())?.l;
        let ic = minor_ideal(&build_c(ti.blocks())?)?;
        let dim_l = monomial_dim(&initial_ideal(&ic.sum(&l)?, guards)?)?;
        let dim_r = monomial_dim(&initial_ideal(&oracle, guards)?)?;
        out.evidence.insert("dimRees".into(), json!(dim_r));
        out.evidence.insert("dimModL".into(), json!(dim_l));
        if dim_l != dim_r {
            out = out.fail(json!({ "dimRees": dim_r, "dimModL": dim_l }));
        }
    }
    let out = compare(out, "rees", &pres, &oracle, guards)?;
    let fib = fiber_presentation(ti, guards)?;
    let fib_oracle = kernel_of_map(&fiber_map(ti)?, guards)?;
    compare(out, "fiber", &fib, &fib_oracle, guards)
}

fn divisorial_identity(ti: &TruncationInstance, p: &CheckParams) -> Result<Outcome> {
    if ti.r() != 2 {
        return Err(Error::Invalid(format!("divisorial-identity needs r = 2, got r = {}", ti.r())));
    }
    let guards = &p.guards;
    let delta = ti.delta().unwrap_or(0);
    let s = ti.blocks().s_ring();
    let ic = minor_ideal(&build_c(ti.blocks())?)?;
    let ker = kernel_of_map(&chi_map(ti)?, guards)?;
    let x1d = Polynomial::var_named(s, "x1")?.pow(delta);
    let lhs = ic.sum(&ker.times(&x1d)?)?;
    let rhs = divisorial_side(ti, delta)?;
    let mut out = Outcome::new(Map::new());
    out.evidence.insert("delta".into(), json!(delta));
    compare(out, "x1^delta*ker=hL", &lhs, &rhs, guards)
}

/// Orders tried for the Koszul proxy: the ring order, lex, both on the reversed
/// variable list, then seeded random variable permutations under revlex.
fn candidate_orders(arity: usize) -> Vec<(String, Vec<usize>, MonomialOrder)> {
    let id: Vec<usize> = (0..arity).collect();
    let rev: Vec<usize> = (0..arity).rev().collect();
    let mut out = vec![
        ("revlex".to_string(), id.clone(), MonomialOrder::RevLex),
        ("lex".to_string(), id, MonomialOrder::Lex),
        ("revlex-reversed".to_string(), rev.clone(), MonomialOrder::RevLex),
        ("lex-reversed".to_string(), rev, MonomialOrder::Lex),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for k in 0..8 {
        let perm = sample(&mut rng, arity, arity).into_vec();
        out.push((format!("revlex-permuted-{k}"), perm, MonomialOrder::RevLex));
    }
    out
}

/// Max degree of the reduced GB under each candidate order until one is quadratic.
fn quadratic_search(ideal: &Ideal, guards: &Guards) -> Result<(Option<String>, Vec<Value>)> {
    let ring = ideal.ring();
    let mut tried = Vec::new();
    for (name, perm, order) in candidate_orders(ring.arity()) {
        let target = ring.permuted(&perm, order);
        let mut place = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            place[old] = new;
        }
        let moved = Ideal::new(&target, ideal.gens().iter().map(|g| g.embed(&target, &place)))?;
        let gb = moved.groebner(guards)?;
        let max = gb.iter().map(|g| g.total_degree()).max().unwrap_or(0);
        tried.push(json!({ "order": name, "basisSize": gb.len(), "maxDegree": max }));
        if max <= 2 {
            return Ok((Some(name), tried));
        }
    }
    Ok((None, tried))
}

fn quadratic_gb(ti: &TruncationInstance, guards: &Guards) -> Result<Outcome> {
    let mut out = Outcome::new(Map::new());
    out.evidence.insert("note".into(), json!("Koszul proxy: quadratic Groebner basis under some tested order"));
    for (name, ideal) in [("rees", rees_presentation(ti, guards)?), ("fiber", fiber_presentation(ti, guards)?)] {
        let (found, tried) = quadratic_search(&ideal, guards)?;
        out.evidence.insert(name.into(), json!({ "quadraticOrder": found, "tried": tried }));
        if found.is_none() {
            out = out.fail(json!({ "ideal": name, "tried": tried }));
        }
    }
    Ok(out)
}

fn height_q(ti: &TruncationInstance, guards: &Guards) -> Result<Outcome> {
    let (n, r) = (ti.n(), ti.r());
    let ker: AlgebraMap = chi_map(ti)?;
    let rees = kernel_of_map(&ker, guards)?;
    let dim_i = monomial_dim(&initial_ideal(&rees, guards)?)?;
    let ic = minor_ideal(&build_c(ti.blocks())?)?;
    let dim_m = monomial_dim(&initial_ideal(&ic, guards)?)?;
    let mut out = Outcome::new(Map::new());
    out.evidence.insert("dimReesI".into(), json!(dim_i));
    out.evidence.insert("dimReesM".into(), json!(dim_m));
    out.evidence.insert("heightQ".into(), json!(dim_m as i64 - dim_i as i64));
    if dim_i != n + 1 {
        out = out.fail(json!({ "dimReesI": dim_i, "expected": n + 1 }));
    }
    if dim_m as i64 - dim_i as i64 != r as i64 - 1 {
        out = out.fail(json!({ "heightQ": dim_m as i64 - dim_i as i64, "expected": r - 1 }));
    }
    Ok(out)
}
