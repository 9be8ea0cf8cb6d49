use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::monomial::{Monomial, MonomialOrder};
use crate::error::{Error, Result};
use crate::field::FieldSpec;

/// Block number and multi-index `(j_{n-1}, ..., j_1)` of a variable.
///
/// Block 0 holds the x-variables: `x_s` is labelled by `(1, ..., 1, 0, ..., 0)` with
/// `s - 1` trailing zeros, which makes `C` the `B`-matrix of the sequence `1, a_1, ..., a_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TauLabel {
    pub block: u32,
    pub index: Vec<u32>,
}

impl TauLabel {
    pub fn new(block: u32, index: Vec<u32>) -> Self {
        TauLabel { block, index }
    }

    /// Lexicographic comparison of `(block, j_{n-1}, ..., j_1)`.
    pub fn tau_cmp(&self, other: &TauLabel) -> Ordering {
        self.block.cmp(&other.block).then_with(|| self.index.cmp(&other.index))
    }

    /// `Deg(T_{l,j}) = j_1`, the last written entry.
    pub fn deg_weight(&self) -> i64 {
        self.index.last().copied().unwrap_or(0) as i64
    }
}

impl PartialOrd for TauLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TauLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.tau_cmp(other)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VariableMeta {
    pub name: String,
    pub label: Option<TauLabel>,
    /// Matrix row for variables displayed in a fixed row (x-variables).
    pub row: Option<usize>,
}

impl VariableMeta {
    pub fn plain(name: impl Into<String>) -> Self {
        VariableMeta { name: name.into(), label: None, row: None }
    }

    pub fn labelled(name: impl Into<String>, label: TauLabel) -> Self {
        VariableMeta { name: name.into(), label: Some(label), row: None }
    }
}

/// Variables, coefficient field, monomial order and named gradings of a polynomial ring.
#[derive(Debug, PartialEq, Eq)]
pub struct RingSpec {
    field: FieldSpec,
    vars: Vec<VariableMeta>,
    order: MonomialOrder,
    gradings: Vec<(String, Vec<i64>)>,
    by_name: HashMap<String, usize>,
}

pub type Ring = Arc<RingSpec>;

/// Builds a ring. Labelled variables are sorted strictly descending under tau (the
/// ordering is verified afterwards); unlabelled variables keep the given order.
/// Mixing labelled and unlabelled variables is rejected.
pub fn build_ring(
    field: FieldSpec,
    mut vars: Vec<VariableMeta>,
    order: MonomialOrder,
) -> Result<Ring> {
    if let FieldSpec::Prime(p) = field {
        FieldSpec::prime(p)?;
    }
    let labelled = vars.iter().filter(|v| v.label.is_some()).count();
    if labelled != 0 && labelled != vars.len() {
        return Err(Error::Invalid("either all or no variables may carry a tau label".into()));
    }
    let mut names = HashSet::new();
    for v in &vars {
        if !names.insert(v.name.clone()) {
            return Err(Error::DuplicateVariable(v.name.clone()));
        }
    }
    if labelled > 0 {
        let mut labels = HashSet::new();
        for v in &vars {
            if !labels.insert(v.label.clone()) {
                return Err(Error::DuplicateVariable(v.name.clone()));
            }
        }
        vars.sort_by(|a, b| b.label.cmp(&a.label));
        for w in vars.windows(2) {
            if w[0].label.as_ref().unwrap().tau_cmp(w[1].label.as_ref().unwrap()) != Ordering::Greater {
                return Err(Error::NotTauSorted(w[1].name.clone()));
            }
        }
    }
    if !order.arity_ok(vars.len()) {
        return Err(Error::Invalid("order blocks do not cover the variables".into()));
    }
    let mut gradings = vec![("std".to_string(), vec![1; vars.len()])];
    if labelled > 0 {
        let lab = |v: &VariableMeta| v.label.clone().unwrap();
        gradings.push((
            "std-x".into(),
            vars.iter().map(|v| (lab(v).block == 0) as i64).collect(),
        ));
        gradings.push((
            "std-T".into(),
            vars.iter().map(|v| (lab(v).block != 0) as i64).collect(),
        ));
        gradings.push(("Deg".into(), vars.iter().map(|v| lab(v).deg_weight()).collect()));
    }
    let by_name = vars.iter().enumerate().map(|(i, v)| (v.name.clone(), i)).collect();
    Ok(Arc::new(RingSpec { field, vars, order, gradings, by_name }))
}

impl RingSpec {
    /// Ring with the given variable names in the given order and no tau labels.
    pub fn plain(field: FieldSpec, names: &[&str], order: MonomialOrder) -> Result<Ring> {
        build_ring(field, names.iter().map(|n| VariableMeta::plain(*n)).collect(), order)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn variables(&self) -> &[VariableMeta] {
        &self.vars
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i].name
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn var_by_label(&self, label: &TauLabel) -> Option<usize> {
        self.vars.iter().position(|v| v.label.as_ref() == Some(label))
    }

    pub fn grading(&self, name: &str) -> Result<&[i64]> {
        self.gradings
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, w)| w.as_slice())
            .ok_or_else(|| Error::UnknownGrading(name.to_string()))
    }

    pub fn grading_names(&self) -> impl Iterator<Item = &str> {
        self.gradings.iter().map(|(n, _)| n.as_str())
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    /// Same variables and field under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Ring> {
        if !order.arity_ok(self.arity()) {
            return Err(Error::Invalid("order blocks do not cover the variables".into()));
        }
        Ok(Arc::new(RingSpec {
            field: self.field,
            vars: self.vars.clone(),
            order,
            gradings: self.gradings.clone(),
            by_name: self.by_name.clone(),
        }))
    }

    /// Same variables with a permuted variable list; used to move a block to the front.
    pub(crate) fn permuted(&self, perm: &[usize], order: MonomialOrder) -> Ring {
        let vars: Vec<_> = perm.iter().map(|&i| self.vars[i].clone()).collect();
        let gradings = self
            .gradings
            .iter()
            .map(|(n, w)| (n.clone(), perm.iter().map(|&i| w[i]).collect()))
            .collect();
        let by_name = vars.iter().enumerate().map(|(i, v)| (v.name.clone(), i)).collect();
        Arc::new(RingSpec { field: self.field, vars, order, gradings, by_name })
    }

    pub fn same_variables(&self, other: &RingSpec) -> bool {
        self.field == other.field && self.vars == other.vars
    }
}
