use std::time::Instant;

use super::division::Divisors;
use super::{GbOptions, GbReport, GbStatus};
use crate::error::{Error, Result};
use crate::polyring::{Monomial, Polynomial, Ring};

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    deg: u32,
}

struct State<'o> {
    ring: Ring,
    polys: Vec<Polynomial>,
    lms: Vec<Monomial>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    report: GbReport,
    opts: &'o GbOptions,
}

impl State<'_> {
    fn make_pair(&self, i: usize, j: usize) -> Pair {
        let lcm = self.lms[i].lcm(&self.lms[j]);
        let deg = lcm.degree();
        Pair { i: i.min(j), j: i.max(j), lcm, deg }
    }

    /// Gebauer-Moeller installation of the new basis element `h`.
    fn update(&mut self, h: usize) {
        let actives: Vec<usize> = (0..h).filter(|&g| self.active[g]).collect();
        self.report.pairs_generated += actives.len();
        if !self.opts.criteria {
            for &g in &actives {
                let p = self.make_pair(g, h);
                self.pairs.push(p);
            }
            self.active[h] = true;
            return;
        }
        let lm_h = self.lms[h].clone();
        let cands: Vec<(usize, Monomial, bool)> = actives
            .iter()
            .map(|&g| (g, lm_h.lcm(&self.lms[g]), lm_h.is_coprime(&self.lms[g])))
            .collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for (k, (g1, l1, coprime)) in cands.iter().enumerate() {
            let dominated =
                cands[k + 1..].iter().chain(kept.iter()).any(|(_, l2, _)| l2.divides(l1));
            if *coprime || !dominated {
                kept.push((*g1, l1.clone(), *coprime));
            }
        }
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .filter(|(_, _, coprime)| !coprime)
            .map(|(g, _, _)| self.make_pair(g, h))
            .collect();
        self.report.pairs_skipped += actives.len() - new_pairs.len();

        let before = self.pairs.len();
        let lms = &self.lms;
        self.pairs.retain(|p| {
            !(lm_h.divides(&p.lcm)
                && lms[p.i].lcm(&lm_h) != p.lcm
                && lms[p.j].lcm(&lm_h) != p.lcm)
        });
        self.report.pairs_skipped += before - self.pairs.len();
        self.pairs.extend(new_pairs);

        for g in actives {
            if lm_h.divides(&self.lms[g]) {
                self.active[g] = false;
            }
        }
        self.active[h] = true;
    }

    fn select(&mut self) -> Option<Pair> {
        let ring = &self.ring;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            pa.deg
                .cmp(&pb.deg)
                .then_with(|| ring.cmp(&pa.lcm, &pb.lcm))
                .then_with(|| (pa.j, pa.i).cmp(&(pb.j, pb.i)))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    fn push(&mut self, p: Polynomial) -> Result<usize> {
        let deg = p.total_degree();
        if deg > self.opts.guards.max_degree {
            return Err(self.abort(format!(
                "basis element of degree {deg} exceeds the degree cap {}",
                self.opts.guards.max_degree
            )));
        }
        self.report.max_degree = self.report.max_degree.max(deg);
        self.lms.push(p.leading_monomial().unwrap().clone());
        self.polys.push(p);
        self.active.push(false);
        Ok(self.polys.len() - 1)
    }

    fn abort(&mut self, reason: String) -> Error {
        self.report.status = GbStatus::Aborted;
        self.report.pairs_pending = self.pairs.len();
        self.report.basis_size = self.active.iter().filter(|&&a| a).count();
        Error::Aborted { reason, report: Box::new(self.report.clone()) }
    }

    fn active_polys(&self) -> Vec<&Polynomial> {
        (0..self.polys.len()).filter(|&k| self.active[k]).map(|k| &self.polys[k]).collect()
    }
}

/// Reduced Groebner basis of `gens` under the order of their ring.
pub fn buchberger(ring: &Ring, gens: &[Polynomial], opts: &GbOptions) -> Result<(Vec<Polynomial>, GbReport)> {
    let started = Instant::now();
    for g in gens {
        if !crate::polyring::same_ring(g.ring(), ring) {
            return Err(Error::RingMismatch);
        }
    }
    let mut st = State {
        ring: ring.clone(),
        polys: Vec::new(),
        lms: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        report: GbReport::default(),
        opts,
    };

    // Inter-reduce the input once so that the initial basis is small.
    let mut input: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    input.sort_by(|a, b| {
        a.leading_monomial().unwrap().degree().cmp(&b.leading_monomial().unwrap().degree()).then_with(|| {
            ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
        })
    });
    input.dedup();
    for g in input {
        let r = Divisors::new(ring, st.active_polys()).reduce(&g);
        if r.is_zero() {
            continue;
        }
        let h = st.push(r.monic())?;
        st.update(h);
    }

    while let Some(pair) = st.select() {
        st.report.pairs_processed += 1;
        if st.report.pairs_processed > opts.guards.max_pairs {
            st.report.pairs_processed -= 1;
            st.pairs.push(pair);
            return Err(st.abort(format!("S-pair cap of {} exceeded", opts.guards.max_pairs)));
        }
        let s = super::s_polynomial(&st.polys[pair.i], &st.polys[pair.j])?;
        let r = Divisors::new(ring, st.active_polys()).reduce(&s);
        if r.is_zero() {
            st.report.pairs_reduced += 1;
            continue;
        }
        let h = st.push(r.monic())?;
        st.update(h);
    }

    let basis = interreduce(ring, st.active_polys().into_iter().cloned().collect());
    st.report.basis_size = basis.len();
    st.report.max_degree = basis.iter().map(Polynomial::total_degree).max().unwrap_or(0);
    st.report.elapsed_ms = started.elapsed().as_millis() as u64;
    st.report.status = GbStatus::Complete;
    Ok((basis, st.report))
}

/// Turns a minimal Groebner basis into the reduced one, sorted by leading monomial descending.
pub(crate) fn interreduce(ring: &Ring, mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    // minimality: drop elements whose leading monomial is divisible by another one
    basis.sort_by(|a, b| ring.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let lm = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(j, o)| {
            j != k && {
                let olm = o.leading_monomial().unwrap();
                olm.divides(lm) && (olm != lm || j < k)
            }
        });
        if !redundant {
            minimal.push(g.monic());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others = minimal.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, p)| p);
        let divs = Divisors::new(ring, others);
        let g = &minimal[k];
        let lead = Polynomial::from_sorted(ring, vec![g.terms()[0].clone()]);
        let tail = g - &lead;
        out.push(&lead + &divs.reduce(&tail));
    }
    out.sort_by(|a, b| ring.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    out
}
