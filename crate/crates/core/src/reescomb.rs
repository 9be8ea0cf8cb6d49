//! Index sets, the matrices `B` and `C`, their minors, and the ideals attached to
//! direct sums of powers of the maximal ideal.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::groebner::{AlgebraMap, Ideal};
use crate::polyring::{build_ring, Monomial, MonomialOrder, Polynomial, Ring, RingSpec, TauLabel, VariableMeta};

/// Written multi-index `(j_{n-1}, ..., j_1)`; entries weakly decrease left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    /// `j_1`, the last written entry (0 for the empty index).
    pub fn j1(&self) -> u32 {
        self.0.last().copied().unwrap_or(0)
    }

    /// `j_i` for `1 <= i <= n - 1`.
    pub fn j(&self, i: usize) -> u32 {
        self.0[self.0.len() - i]
    }

    pub fn is_member(&self, a: u32, strict: bool) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
            && self.0.first().is_none_or(|&top| top <= a)
            && (!strict || self.0.last().map_or(a >= 1, |&low| low >= 1))
    }

    /// `T_{l,j,s}`: subtract 1 from `j_1, ..., j_{s-1}`.
    pub fn shifted(&self, s: usize) -> MultiIndex {
        let len = self.0.len();
        let mut e = self.0.clone();
        for (k, v) in e.iter_mut().enumerate() {
            if k + s > len {
                *v -= 1;
            }
        }
        MultiIndex(e)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `|J_a| = C(a+n-1, n-1)`, or `|J'_a| = C(a+n-2, n-1)` when strict.
pub fn index_set_size(a: u32, n: usize, strict: bool) -> u64 {
    let n = n as u64;
    match (strict, a) {
        (true, 0) => 0,
        (true, a) => binomial(a as u64 + n - 2, n - 1),
        (false, a) => binomial(a as u64 + n - 1, n - 1),
    }
}

/// `J_a` (or `J'_a` when `strict`) in ascending tau order.
pub fn multi_index_set(a: u32, n: usize, strict: bool) -> Vec<MultiIndex> {
    fn rec(pos: usize, len: usize, hi: u32, lo: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if pos == len {
            out.push(MultiIndex(cur.clone()));
            return;
        }
        for v in lo..=hi {
            cur.push(v);
            rec(pos + 1, len, v, lo, cur, out);
            cur.pop();
        }
    }
    let lo = strict as u32;
    let mut out = Vec::new();
    if n == 0 || (strict && a == 0) {
        return out;
    }
    if lo <= a {
        rec(0, n - 1, a, lo, &mut Vec::new(), &mut out);
    }
    out
}

/// Exponents of `x^{a,j} = prod x_i^{j_i - j_{i-1}}` with `j_0 = 0`, `j_n = a`.
pub fn x_exponents(a: u32, j: &MultiIndex) -> Result<Vec<u32>> {
    if !j.is_member(a, false) {
        return Err(Error::IndexOutOfRange(format!("{j} for a = {a}")));
    }
    let n = j.0.len() + 1;
    let jj = |i: usize| -> u32 {
        match i {
            0 => 0,
            i if i == n => a,
            i => j.j(i),
        }
    };
    Ok((1..=n).map(|i| jj(i) - jj(i - 1)).collect())
}

/// `x^{a,j}` as a monomial of `ring`, whose x-variables are named `x1, ..., xn`.
pub fn x_monomial(ring: &Ring, a: u32, j: &MultiIndex) -> Result<Polynomial> {
    let exps = x_exponents(a, j)?;
    let mut e = vec![0u16; ring.arity()];
    for (i, &x) in exps.iter().enumerate() {
        let name = format!("x{}", i + 1);
        let idx = ring.var_index(&name).ok_or(Error::UnknownVariable(name))?;
        e[idx] = x as u16;
    }
    Ok(Polynomial::monomial(ring, Monomial(e)))
}

/// Label of `x_s`: block 0, index `(1, ..., 1, 0, ..., 0)` with `s - 1` trailing zeros.
pub fn x_label(n: usize, s: usize) -> TauLabel {
    TauLabel::new(0, (0..n - 1).map(|k| (k + s < n) as u32).collect())
}

/// Label of the matrix entry `T_{l,j,s}` (row `s`, counted from 1 at the top).
pub fn entry_variable(l: u32, j: &MultiIndex, s: usize) -> Result<TauLabel> {
    let n = j.0.len() + 1;
    let top = j.0.first().copied().unwrap_or(0);
    if !j.is_member(top, true) || n < 2 {
        return Err(Error::IndexOutOfRange(format!("{j} is not strict")));
    }
    if s == 0 || s > n {
        return Err(Error::IndexOutOfRange(format!("row {s} outside 1..={n}")));
    }
    Ok(TauLabel::new(l, j.shifted(s).0))
}

/// Internal variable name: `x3` for block 0, `T_2_1_0` otherwise.
pub fn var_name(label: &TauLabel) -> String {
    if label.block == 0 {
        let zeros = label.index.iter().rev().take_while(|&&v| v == 0).count();
        format!("x{}", zeros + 1)
    } else {
        let mut s = format!("T_{}", label.block);
        for v in &label.index {
            s.push_str(&format!("_{v}"));
        }
        s
    }
}

/// Display name in the layout of printed matrices: `T_{2,1,0}`.
pub fn display_name(label: &TauLabel) -> String {
    if label.block == 0 {
        var_name(label)
    } else {
        let parts: Vec<String> = std::iter::once(label.block)
            .chain(label.index.iter().copied())
            .map(|v| v.to_string())
            .collect();
        format!("T_{{{}}}", parts.join(","))
    }
}

/// `n` and the exponents `a_1 <= ... <= a_r` of `M = m^{a_1} + ... + m^{a_r}`.
#[derive(Clone, Debug)]
pub struct Instance {
    n: usize,
    a: Vec<u32>,
    field: FieldSpec,
    stripped: usize,
    t_ring: Ring,
    s_ring: Ring,
}

impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.a == other.a && self.field == other.field && self.stripped == other.stripped
    }
}

impl Eq for Instance {}

impl Instance {
    /// Zero exponents are removed; they only adjoin polynomial variables.
    pub fn new(n: usize, a: &[u32], field: FieldSpec) -> Result<Self> {
        let kept: Vec<u32> = a.iter().copied().filter(|&v| v > 0).collect();
        if kept.is_empty() {
            return Err(Error::InvalidInstance("at least one positive exponent is required".into()));
        }
        Self::build(n, kept, field, a.len() - a.iter().filter(|&&v| v > 0).count())
    }

    /// Keeps zero exponents as blocks with the single variable `T_{l,0,...,0}`
    /// and no column in `B`.
    pub fn with_zero_blocks(n: usize, a: &[u32], field: FieldSpec) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidInstance("at least one block is required".into()));
        }
        Self::build(n, a.to_vec(), field, 0)
    }

    fn build(n: usize, a: Vec<u32>, field: FieldSpec, stripped: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInstance(format!("n = {n}; at least two variables are required")));
        }
        if a.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidInstance("exponents must be nondecreasing".into()));
        }
        if a.iter().any(|&v| v > 60) || n > 12 {
            return Err(Error::InvalidInstance("instance is far beyond desk scale".into()));
        }
        let mut t_vars = Vec::new();
        for (l, &al) in a.iter().enumerate() {
            for j in multi_index_set(al, n, false) {
                let label = TauLabel::new(l as u32 + 1, j.0);
                t_vars.push(VariableMeta::labelled(var_name(&label), label));
            }
        }
        let t_ring = build_ring(field, t_vars.clone(), MonomialOrder::RevLex)?;
        let mut s_vars = t_vars;
        for s in 1..=n {
            let label = x_label(n, s);
            let mut v = VariableMeta::labelled(var_name(&label), label);
            v.row = Some(s);
            s_vars.push(v);
        }
        let s_ring = build_ring(field, s_vars, MonomialOrder::RevLex)?;
        Ok(Instance { n, a, field, stripped, t_ring, s_ring })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[u32] {
        &self.a
    }

    pub fn a_r(&self) -> u32 {
        *self.a.last().unwrap()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Number of zero exponents removed at construction.
    pub fn stripped(&self) -> usize {
        self.stripped
    }

    /// `T = k[T_{l,j}]`.
    pub fn t_ring(&self) -> &Ring {
        &self.t_ring
    }

    /// `S = T[x_1, ..., x_n]`; the x-variables are the tau-smallest.
    pub fn s_ring(&self) -> &Ring {
        &self.s_ring
    }

    /// Index of `T_{l,j}` in `ring`.
    pub fn t_var(&self, ring: &Ring, l: u32, j: &MultiIndex) -> Result<usize> {
        let label = TauLabel::new(l, j.0.clone());
        ring.var_by_label(&label)
            .ok_or_else(|| Error::UnknownVariable(var_name(&label)))
    }

    pub fn echo(&self) -> serde_json::Value {
        json!({
            "mode": "powers",
            "n": self.n,
            "a": self.a,
            "field": self.field.to_string(),
            "strippedZeroBlocks": self.stripped,
        })
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.a.iter().map(u32::to_string).collect();
        write!(f, "n={}, a=({})", self.n, a.join(","))
    }
}

/// Matrix of variables; columns carry the tau label `(l, j)` with `j` strict.
#[derive(Clone, Debug)]
pub struct VarMatrix {
    ring: Ring,
    columns: Vec<TauLabel>,
    entries: Vec<Vec<usize>>,
}

impl VarMatrix {
    fn build(ring: &Ring, n: usize, columns: Vec<TauLabel>) -> Result<Self> {
        let mut entries = vec![Vec::with_capacity(columns.len()); n];
        for c in &columns {
            for (s, row) in entries.iter_mut().enumerate() {
                let label = entry_variable(c.block, &MultiIndex(c.index.clone()), s + 1)?;
                let v = ring
                    .var_by_label(&label)
                    .ok_or_else(|| Error::UnknownVariable(var_name(&label)))?;
                row.push(v);
            }
        }
        Ok(VarMatrix { ring: ring.clone(), columns, entries })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column_labels(&self) -> &[TauLabel] {
        &self.columns
    }

    /// Variable index at row `s`, column `c` (both 0-based).
    pub fn entry(&self, s: usize, c: usize) -> usize {
        self.entries[s][c]
    }

    pub fn entry_poly(&self, s: usize, c: usize) -> Polynomial {
        Polynomial::var(&self.ring, self.entries[s][c])
    }

    pub fn entry_label(&self, s: usize, c: usize) -> &TauLabel {
        self.ring.variables()[self.entries[s][c]].label.as_ref().unwrap()
    }

    /// The columns `cols` (indices, kept in the given order).
    pub fn submatrix(&self, cols: &[usize]) -> VarMatrix {
        VarMatrix {
            ring: self.ring.clone(),
            columns: cols.iter().map(|&c| self.columns[c].clone()).collect(),
            entries: self.entries.iter().map(|row| cols.iter().map(|&c| row[c]).collect()).collect(),
        }
    }

    /// Aligned text grid, one line per row, display names padded to a common width.
    pub fn grid(&self) -> String {
        let names: Vec<Vec<String>> = (0..self.rows())
            .map(|s| (0..self.cols()).map(|c| display_name(self.entry_label(s, c))).collect())
            .collect();
        let widths: Vec<usize> = (0..self.cols())
            .map(|c| names.iter().map(|row| row[c].len()).max().unwrap_or(0))
            .collect();
        names
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&widths)
                    .map(|(v, &w)| format!("{v:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn b_columns(inst: &Instance) -> Vec<TauLabel> {
    let mut cols = Vec::new();
    for (l, &al) in inst.a.iter().enumerate() {
        for j in multi_index_set(al, inst.n, true) {
            cols.push(TauLabel::new(l as u32 + 1, j.0));
        }
    }
    cols
}

/// `B_a` with entries in `T`.
pub fn build_b(inst: &Instance) -> Result<VarMatrix> {
    build_b_in(inst, inst.t_ring())
}

/// `B_a` with entries in any ring carrying the T-variables of `inst`.
pub fn build_b_in(inst: &Instance, ring: &Ring) -> Result<VarMatrix> {
    VarMatrix::build(ring, inst.n, b_columns(inst))
}

/// `C_a = [x | B_a]` with entries in `S`.
pub fn build_c(inst: &Instance) -> Result<VarMatrix> {
    let mut cols = vec![TauLabel::new(0, vec![1; inst.n - 1])];
    cols.extend(b_columns(inst));
    VarMatrix::build(inst.s_ring(), inst.n, cols)
}

/// A nonzero 2x2 minor `(c1,s)(c2,t) - (c2,s)(c1,t)` with `c1 < c2`, `s < t` (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minor {
    pub rows: (usize, usize),
    pub cols: (usize, usize),
    pub poly: Polynomial,
}

/// All nonzero 2x2 minors, columns outermost.
pub fn minors2(m: &VarMatrix) -> Vec<Minor> {
    let mut out = Vec::new();
    for c1 in 0..m.cols() {
        for c2 in c1 + 1..m.cols() {
            for s in 0..m.rows() {
                for t in s + 1..m.rows() {
                    let poly = &(&m.entry_poly(s, c1) * &m.entry_poly(t, c2))
                        - &(&m.entry_poly(s, c2) * &m.entry_poly(t, c1));
                    if !poly.is_zero() {
                        out.push(Minor { rows: (s, t), cols: (c1, c2), poly });
                    }
                }
            }
        }
    }
    out
}

pub fn minor_ideal(m: &VarMatrix) -> Result<Ideal> {
    Ideal::new(m.ring(), minors2(m).into_iter().map(|mi| mi.poly))
}

/// Products of the top-left and bottom-right entries over all column pairs and row
/// pairs, without duplicates, sorted.
pub fn predicted_initial_gens(m: &VarMatrix) -> Vec<Monomial> {
    let mut set = BTreeSet::new();
    for mi in minors2(m) {
        let (s, t) = mi.rows;
        let (c1, c2) = mi.cols;
        let mut e = vec![0u16; m.ring().arity()];
        e[m.entry(s, c1)] += 1;
        e[m.entry(t, c2)] += 1;
        set.insert(Monomial(e));
    }
    set.into_iter().collect()
}

/// `k[x_1, ..., x_n, t_1, ..., t_r]`.
pub fn rees_target_ring(n: usize, r: usize, field: FieldSpec) -> Result<Ring> {
    let names: Vec<String> = (1..=n)
        .map(|i| format!("x{i}"))
        .chain((1..=r).map(|l| format!("t{l}")))
        .collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    RingSpec::plain(field, &refs, MonomialOrder::RevLex)
}

/// `phi: S -> R[t]` and its restriction `psi: T -> R[t]`, `T_{l,j} -> x^{a_l,j} t_l`.
pub fn rees_maps(inst: &Instance) -> Result<(AlgebraMap, AlgebraMap)> {
    let target = rees_target_ring(inst.n, inst.r(), inst.field)?;
    let image = |v: &VariableMeta| -> Result<Polynomial> {
        let label = v.label.as_ref().unwrap();
        if label.block == 0 {
            return Polynomial::var_named(&target, &v.name);
        }
        let t = Polynomial::var_named(&target, &format!("t{}", label.block))?;
        let xm = x_monomial(&target, inst.a[label.block as usize - 1], &MultiIndex(label.index.clone()))?;
        Ok(&xm * &t)
    };
    let phi_images = inst.s_ring.variables().iter().map(image).collect::<Result<Vec<_>>>()?;
    let psi_images = inst.t_ring.variables().iter().map(image).collect::<Result<Vec<_>>>()?;
    Ok((
        AlgebraMap::new(&inst.s_ring, &target, phi_images)?,
        AlgebraMap::new(&inst.t_ring, &target, psi_images)?,
    ))
}

/// `K` (first row of `B`) and `P` in `T`; `L = K + (x_1)` in `S`.
#[derive(Clone, Debug)]
pub struct SpecialIdeals {
    pub k: Ideal,
    pub l: Ideal,
    pub p: Ideal,
}

pub fn special_ideals(inst: &Instance) -> Result<SpecialIdeals> {
    let first_row = |ring: &Ring| -> Vec<Polynomial> {
        ring.variables()
            .iter()
            .enumerate()
            .filter(|(_, v)| {
                let lab = v.label.as_ref().unwrap();
                lab.block > 0 && lab.deg_weight() >= 1
            })
            .map(|(i, _)| Polynomial::var(ring, i))
            .collect()
    };
    let t = inst.t_ring();
    let k = Ideal::new(t, first_row(t))?;
    let s = inst.s_ring();
    let mut lg = first_row(s);
    lg.push(Polynomial::var_named(s, "x1")?);
    let l = Ideal::new(s, lg)?;
    let r = inst.r() as u32;
    let pg = t
        .variables()
        .iter()
        .enumerate()
        .filter(|(_, v)| v.label.as_ref().unwrap().block == r)
        .map(|(i, _)| Polynomial::var(t, i));
    let p = Ideal::new(t, pg)?;
    Ok(SpecialIdeals { k, l, p })
}

/// Minimal generators of the monomial ideal of all monomials with `Deg >= delta`,
/// using the ring's `Deg` grading. Sorted descending in the ring order.
pub fn a_geq_generators(ring: &Ring, delta: u32) -> Result<Vec<Monomial>> {
    if delta == 0 {
        return Ok(vec![Monomial::one(ring.arity())]);
    }
    let w = ring.grading("Deg")?;
    let pos: Vec<usize> = (0..ring.arity()).filter(|&i| w[i] > 0).collect();
    let delta = delta as i64;
    let mut out = Vec::new();
    let mut cur = vec![0u16; ring.arity()];
    fn rec(start: usize, deg: i64, delta: i64, pos: &[usize], w: &[i64], cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if deg >= delta {
            let min_w = pos.iter().filter(|&&v| cur[v] > 0).map(|&v| w[v]).min().unwrap();
            if deg - min_w < delta {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        for k in start..pos.len() {
            let v = pos[k];
            cur[v] += 1;
            rec(k, deg + w[v], delta, pos, w, cur, out);
            cur[v] -= 1;
        }
    }
    rec(0, 0, delta, &pos, w, &mut cur, &mut out);
    out.sort_by(|a, b| ring.cmp(b, a));
    Ok(out)
}

/// The variable set `U` witnessing `dim T/in(I_2(B)) >= r + n - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimWitness {
    /// Indices into the ring, deduplicated, ascending.
    pub vars: Vec<usize>,
    /// Length of the listing before deduplication.
    pub raw_len: usize,
}

fn witness_labels(inst: &Instance) -> Vec<TauLabel> {
    let n = inst.n;
    let mut labels: Vec<TauLabel> = (1..=inst.r() as u32).map(|l| TauLabel::new(l, vec![0; n - 1])).collect();
    let ar = inst.a_r();
    for k in (1..n).rev() {
        let idx = (0..n - 1).map(|p| if p < k { ar } else { 0 }).collect();
        labels.push(TauLabel::new(inst.r() as u32, idx));
    }
    labels
}

fn witness_in(ring: &Ring, labels: Vec<TauLabel>) -> Result<DimWitness> {
    let raw_len = labels.len();
    let mut vars = labels
        .iter()
        .map(|l| ring.var_by_label(l).ok_or_else(|| Error::UnknownVariable(var_name(l))))
        .collect::<Result<Vec<_>>>()?;
    vars.sort_unstable();
    vars.dedup();
    Ok(DimWitness { vars, raw_len })
}

/// `U = {T_{l,0..0}} + {T_{r,a_r..a_r,0..0}}` in `T`.
pub fn dim_witness(inst: &Instance) -> Result<DimWitness> {
    witness_in(inst.t_ring(), witness_labels(inst))
}

/// `U` for `C`, read as `B` of `1, a_1, ..., a_r`: adds `x_n = T_{0,0..0}`.
pub fn dim_witness_c(inst: &Instance) -> Result<DimWitness> {
    let mut labels = witness_labels(inst);
    labels.insert(0, x_label(inst.n, inst.n));
    witness_in(inst.s_ring(), labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{initial_ideal, kernel_of_map, monomial_dim, Guards};
    use crate::polyring::parse_poly;

    fn inst(n: usize, a: &[u32]) -> Instance {
        Instance::new(n, a, FieldSpec::Rationals).unwrap()
    }

    /// Weakly increasing tuples `0 <= j_1 <= ... <= j_{n-1} <= a` by brute force over all
    /// tuples in `[0, a]^{n-1}`.
    fn brute_index_set(a: u32, n: usize, strict: bool) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let total = (a as usize + 1).pow(n as u32 - 1);
        for code in 0..total {
            let mut c = code;
            let mut t = Vec::new();
            for _ in 0..n - 1 {
                t.push((c % (a as usize + 1)) as u32);
                c /= a as usize + 1;
            }
            // t = (j_1, ..., j_{n-1})
            if t.windows(2).all(|w| w[0] <= w[1]) && (!strict || t.first().map_or(true, |&v| v >= 1)) {
                out.push(t.into_iter().rev().collect());
            }
        }
        out.sort();
        out
    }

    #[test]
    fn index_sets_match_brute_force() {
        for n in 2..=5 {
            for a in 0..=4 {
                for strict in [false, true] {
                    let got: Vec<Vec<u32>> = multi_index_set(a, n, strict).into_iter().map(|j| j.0).collect();
                    assert_eq!(got, brute_index_set(a, n, strict), "a={a} n={n} strict={strict}");
                    assert_eq!(got.len() as u64, index_set_size(a, n, strict));
                }
            }
        }
    }

    #[test]
    fn index_set_examples() {
        let j: Vec<Vec<u32>> = multi_index_set(2, 3, false).into_iter().map(|j| j.0).collect();
        assert_eq!(j, vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![2, 0], vec![2, 1], vec![2, 2]]);
        assert_eq!(multi_index_set(1, 3, true), vec![MultiIndex(vec![1, 1])]);
        for n in 2..=5 {
            assert_eq!(multi_index_set(0, n, false), vec![MultiIndex(vec![0; n - 1])]);
        }
    }

    #[test]
    fn x_monomial_examples() {
        let i = inst(3, &[2]);
        let s = i.s_ring();
        assert_eq!(x_monomial(s, 2, &MultiIndex(vec![2, 1])).unwrap(), parse_poly(s, "x1*x2").unwrap());
        assert_eq!(x_monomial(s, 2, &MultiIndex(vec![0, 0])).unwrap(), parse_poly(s, "x3^2").unwrap());
        let i2 = inst(2, &[1]);
        let s2 = i2.s_ring();
        assert_eq!(x_monomial(s2, 1, &MultiIndex(vec![1])).unwrap(), parse_poly(s2, "x1").unwrap());
        assert_eq!(x_monomial(s2, 1, &MultiIndex(vec![0])).unwrap(), parse_poly(s2, "x2").unwrap());
        assert!(x_monomial(s, 2, &MultiIndex(vec![1, 2])).is_err());
        assert!(x_monomial(s, 2, &MultiIndex(vec![3, 0])).is_err());
        for j in multi_index_set(3, 4, false) {
            assert_eq!(x_exponents(3, &j).unwrap().iter().sum::<u32>(), 3);
        }
    }

    #[test]
    fn entry_variable_examples() {
        let t = |l, idx: Vec<u32>| TauLabel::new(l, idx);
        assert_eq!(entry_variable(2, &MultiIndex(vec![2, 1]), 2).unwrap(), t(2, vec![2, 0]));
        assert_eq!(entry_variable(1, &MultiIndex(vec![1, 1]), 3).unwrap(), t(1, vec![0, 0]));
        assert_eq!(entry_variable(1, &MultiIndex(vec![1, 1]), 1).unwrap(), t(1, vec![1, 1]));
        assert!(entry_variable(1, &MultiIndex(vec![1, 0]), 1).is_err());
        assert!(entry_variable(1, &MultiIndex(vec![1, 1]), 4).is_err());
        for s in 1..=4 {
            assert_eq!(entry_variable(0, &MultiIndex(vec![1, 1, 1]), s).unwrap(), x_label(4, s));
        }
    }

    #[test]
    fn rings_have_expected_sizes() {
        let i = inst(3, &[1, 2]);
        assert_eq!(i.t_ring().arity(), 9);
        assert_eq!(i.s_ring().arity(), 12);
        let s = i.s_ring();
        let names: Vec<&str> = (9..12).map(|k| s.var_name(k)).collect();
        assert_eq!(names, vec!["x1", "x2", "x3"]);
        assert_eq!(s.var_name(0), "T_2_2_2");
        assert!(Instance::new(1, &[1], FieldSpec::Rationals).is_err());
        assert!(Instance::new(2, &[2, 1], FieldSpec::Rationals).is_err());
        assert!(Instance::new(2, &[0], FieldSpec::Rationals).is_err());
        let z = inst(2, &[0, 1]);
        assert_eq!((z.r(), z.stripped()), (1, 1));
    }

    #[test]
    fn deg_grading_examples() {
        let i = inst(3, &[1, 2]);
        let s = i.s_ring();
        let deg = |name: &str| parse_poly(s, name).unwrap().weighted_degree("Deg").unwrap();
        use crate::polyring::WeightedDegree::Homogeneous as H;
        assert_eq!(deg("T_2_2_2"), H(2));
        assert_eq!(deg("x1"), H(1));
        assert_eq!(deg("x2"), H(0));
        assert_eq!(deg("x3"), H(0));
        for m in minors2(&build_b(&i).unwrap()) {
            assert!(matches!(m.poly.weighted_degree("Deg").unwrap(), H(_)));
            assert_eq!(m.poly.weighted_degree("std-T").unwrap(), H(2));
        }
    }

    #[test]
    fn golden_example_matrix() {
        let b = build_b(&inst(3, &[1, 2])).unwrap();
        let expected = "\
T_{1,1,1}  T_{2,1,1}  T_{2,2,1}  T_{2,2,2}
T_{1,1,0}  T_{2,1,0}  T_{2,2,0}  T_{2,2,1}
T_{1,0,0}  T_{2,0,0}  T_{2,1,0}  T_{2,1,1}";
        assert_eq!(b.grid(), expected);
    }

    #[test]
    fn small_matrices() {
        let c = build_c(&inst(2, &[1])).unwrap();
        assert_eq!(c.grid(), "x1  T_{1,1}\nx2  T_{1,0}");
        let b = build_b(&inst(2, &[2])).unwrap();
        assert_eq!(b.grid(), "T_{1,1}  T_{1,2}\nT_{1,0}  T_{1,1}");
    }

    #[test]
    fn column_counts_and_coverage() {
        for (n, a) in [(2, vec![1]), (2, vec![1, 2]), (3, vec![1, 2]), (3, vec![2, 2]), (4, vec![1, 1]), (4, vec![2, 3])] {
            let i = inst(n, &a);
            let b = build_b(&i).unwrap();
            let expected: u64 = a.iter().map(|&al| index_set_size(al, n, true)).sum();
            assert_eq!(b.cols() as u64, expected);
            let labels = b.column_labels();
            assert!(labels.windows(2).all(|w| w[0] < w[1]));
            let mut seen = vec![false; i.t_ring().arity()];
            for s in 0..b.rows() {
                for c in 0..b.cols() {
                    seen[b.entry(s, c)] = true;
                }
            }
            assert!(seen.iter().all(|&x| x), "n={n} a={a:?}");
        }
    }

    #[test]
    fn minors_examples() {
        let i = inst(2, &[1]);
        let c = build_c(&i).unwrap();
        let m = minors2(&c);
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].poly, parse_poly(i.s_ring(), "x1*T_1_0 - x2*T_1_1").unwrap());
        assert_eq!(minors2(&build_b(&inst(3, &[1, 2])).unwrap()).len(), 18);
        let b = build_b(&inst(2, &[2])).unwrap();
        assert!(minors2(&b.submatrix(&[0, 0])).is_empty());
    }

    #[test]
    fn predicted_initial_examples() {
        let i = inst(2, &[1]);
        let c = build_c(&i).unwrap();
        let p = predicted_initial_gens(&c);
        assert_eq!(p, vec![parse_poly(i.s_ring(), "x1*T_1_0").unwrap().terms()[0].mono.clone()]);
        // the pattern runs over 18 column/row pairs; repeated entries make only 14 products distinct
        let b = build_b(&inst(3, &[1, 2])).unwrap();
        let m = minors2(&b);
        assert_eq!(m.len(), 18);
        let lts: BTreeSet<Monomial> = m.iter().map(|mi| mi.poly.terms()[0].mono.clone()).collect();
        assert_eq!(predicted_initial_gens(&b), lts.into_iter().collect::<Vec<_>>());
        assert_eq!(predicted_initial_gens(&b).len(), 14);
        assert!(predicted_initial_gens(&c.submatrix(&[1])).is_empty());
    }

    #[test]
    fn predicted_initial_matches_computed() {
        let g = Guards::default();
        for (n, a) in [(2, vec![1, 2]), (3, vec![1, 2]), (3, vec![1, 1])] {
            let i = inst(n, &a);
            for m in [build_b(&i).unwrap(), build_c(&i).unwrap()] {
                let init = initial_ideal(&minor_ideal(&m).unwrap(), &g).unwrap();
                let mut got: Vec<Monomial> = init.gens().iter().map(|p| p.terms()[0].mono.clone()).collect();
                got.sort();
                assert_eq!(got, predicted_initial_gens(&m), "n={n} a={a:?}");
            }
        }
    }

    #[test]
    fn rees_map_examples() {
        let i = inst(2, &[2]);
        let (phi, psi) = rees_maps(&i).unwrap();
        let tgt = phi.target.clone();
        let img = |name: &str| phi.apply(&parse_poly(i.s_ring(), name).unwrap()).unwrap();
        assert_eq!(img("T_1_2"), parse_poly(&tgt, "x1^2*t1").unwrap());
        assert_eq!(img("T_1_1"), parse_poly(&tgt, "x1*x2*t1").unwrap());
        assert_eq!(img("T_1_0"), parse_poly(&tgt, "x2^2*t1").unwrap());
        assert_eq!(img("x2"), parse_poly(&tgt, "x2").unwrap());
        assert_eq!(psi.apply(&parse_poly(i.t_ring(), "T_1_1").unwrap()).unwrap(), img("T_1_1"));
        let i1 = inst(2, &[1]);
        let (phi1, _) = rees_maps(&i1).unwrap();
        let t1 = phi1.target.clone();
        assert_eq!(phi1.apply(&parse_poly(i1.s_ring(), "T_1_1").unwrap()).unwrap(), parse_poly(&t1, "x1*t1").unwrap());
        assert_eq!(phi1.apply(&parse_poly(i1.s_ring(), "T_1_0").unwrap()).unwrap(), parse_poly(&t1, "x2*t1").unwrap());
    }

    #[test]
    fn phi_kills_minors_and_shift_identity() {
        for (n, a) in [(2, vec![1, 3]), (3, vec![1, 2]), (4, vec![2])] {
            let i = inst(n, &a);
            let (phi, _) = rees_maps(&i).unwrap();
            for m in minors2(&build_c(&i).unwrap()) {
                assert!(phi.apply(&m.poly).unwrap().is_zero());
            }
            // x_1 * phi(T_{l,j,s}) = x_s * phi(T_{l,j})
            let s_ring = i.s_ring();
            let b = build_b_in(&i, s_ring).unwrap();
            for c in 0..b.cols() {
                let top = phi.apply(&b.entry_poly(0, c)).unwrap();
                for s in 0..n {
                    let lhs = &phi.apply(&Polynomial::var_named(s_ring, "x1").unwrap()).unwrap()
                        * &phi.apply(&b.entry_poly(s, c)).unwrap();
                    let xs = phi.apply(&Polynomial::var_named(s_ring, &format!("x{}", s + 1)).unwrap()).unwrap();
                    assert_eq!(lhs, &xs * &top);
                }
            }
        }
    }

    #[test]
    fn kernel_of_psi_small() {
        let i = inst(2, &[2]);
        let (_, psi) = rees_maps(&i).unwrap();
        let k = kernel_of_map(&psi, &Guards::default()).unwrap();
        let b = minor_ideal(&build_b(&i).unwrap()).unwrap();
        assert!(k.equals(&b, &Guards::default()).unwrap());
    }

    #[test]
    fn special_ideal_examples() {
        let i = inst(2, &[2]);
        let sp = special_ideals(&i).unwrap();
        let t = i.t_ring();
        let k = Ideal::new(t, ["T_1_1", "T_1_2"].map(|v| parse_poly(t, v).unwrap())).unwrap();
        assert!(sp.k.equals(&k, &Guards::default()).unwrap());
        assert!(sp.l.contains(&parse_poly(i.s_ring(), "x1").unwrap(), &Guards::default()).unwrap());
        let i2 = inst(2, &[1, 1]);
        let sp2 = special_ideals(&i2).unwrap();
        let t2 = i2.t_ring();
        let p = Ideal::new(t2, ["T_2_1", "T_2_0"].map(|v| parse_poly(t2, v).unwrap())).unwrap();
        assert!(sp2.p.equals(&p, &Guards::default()).unwrap());
    }

    /// All monomials of `Deg >= delta` and total degree at most `max_deg`, then the minimal
    /// ones by divisibility.
    fn brute_a_geq(ring: &Ring, delta: i64, max_deg: u16) -> Vec<Monomial> {
        let w = ring.grading("Deg").unwrap();
        let n = ring.arity();
        let mut all = Vec::new();
        let mut e = vec![0u16; n];
        loop {
            let m = Monomial(e.clone());
            if m.degree() <= max_deg as u32 && m.weighted_degree(w) >= delta {
                all.push(m);
            }
            let mut k = 0;
            while k < n {
                e[k] += 1;
                if e[k] <= max_deg {
                    break;
                }
                e[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
        let mut minimal: Vec<Monomial> = all
            .iter()
            .filter(|m| !all.iter().any(|o| o != *m && o.divides(m)))
            .cloned()
            .collect();
        minimal.sort_by(|a, b| ring.cmp(b, a));
        minimal
    }

    #[test]
    fn a_geq_examples() {
        let i = inst(2, &[2]);
        let t = i.t_ring();
        let g = a_geq_generators(t, 2).unwrap();
        let expected: Vec<Monomial> = ["T_1_2", "T_1_1^2"]
            .iter()
            .map(|s| parse_poly(t, s).unwrap().terms()[0].mono.clone())
            .collect();
        let mut g_sorted = g.clone();
        g_sorted.sort();
        let mut e_sorted = expected;
        e_sorted.sort();
        assert_eq!(g_sorted, e_sorted);
        let sp = special_ideals(&i).unwrap();
        let ones = a_geq_generators(t, 1).unwrap();
        assert_eq!(ones.len(), sp.k.gens().len());
        assert!(ones.iter().all(|m| m.degree() == 1));
    }

    #[test]
    fn a_geq_matches_exhaustive_search() {
        for (n, a, delta) in [(2, vec![2], 3), (2, vec![1, 2], 2), (3, vec![2], 3), (2, vec![3], 4)] {
            let i = inst(n, &a);
            let t = i.t_ring();
            let maxa = *a.iter().max().unwrap() as i64;
            let g = a_geq_generators(t, delta).unwrap();
            let w = t.grading("Deg").unwrap();
            for m in &g {
                let d = m.weighted_degree(w);
                assert!(d >= delta as i64 && d <= delta as i64 + maxa - 1);
            }
            assert_eq!(g, brute_a_geq(t, delta as i64, delta as u16), "n={n} a={a:?}");
        }
    }

    #[test]
    fn dim_witness_examples() {
        let i = inst(3, &[1, 2]);
        let u = dim_witness(&i).unwrap();
        let t = i.t_ring();
        let mut names: Vec<&str> = u.vars.iter().map(|&v| t.var_name(v)).collect();
        names.sort();
        assert_eq!(names, vec!["T_1_0_0", "T_2_0_0", "T_2_2_0", "T_2_2_2"]);
        assert_eq!(u.raw_len, 4);
        let i2 = inst(2, &[2]);
        let u2 = dim_witness(&i2).unwrap();
        let mut names2: Vec<&str> = u2.vars.iter().map(|&v| i2.t_ring().var_name(v)).collect();
        names2.sort();
        assert_eq!(names2, vec!["T_1_0", "T_1_2"]);
    }

    #[test]
    fn dim_witness_is_independent() {
        let g = Guards::default();
        for (n, a) in [(2, vec![1, 2]), (3, vec![1, 2]), (4, vec![1, 1]), (3, vec![2, 3])] {
            let i = inst(n, &a);
            for (m, u) in [
                (build_b(&i).unwrap(), dim_witness(&i).unwrap()),
                (build_c(&i).unwrap(), dim_witness_c(&i).unwrap()),
            ] {
                for p in predicted_initial_gens(&m) {
                    assert!(p.support().any(|v| !u.vars.contains(&v)));
                }
                assert_eq!(u.vars.len(), u.raw_len);
            }
            let init = initial_ideal(&minor_ideal(&build_b(&i).unwrap()).unwrap(), &g).unwrap();
            assert_eq!(monomial_dim(&init).unwrap(), n + a.len() - 1);
        }
    }
}
