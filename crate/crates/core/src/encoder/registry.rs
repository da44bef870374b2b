use std::collections::HashMap;

use crate::encoder::formula::VarId;

/// Solver sort of a variable. Integer bounds are inclusive; a missing
/// bound leaves that side unconstrained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sort {
    Bool,
    Int { lo: Option<i64>, hi: Option<i64> },
}

impl Sort {
    pub fn range(lo: i64, hi: i64) -> Sort {
        Sort::Int { lo: Some(lo), hi: Some(hi) }
    }

    pub fn unbounded() -> Sort {
        Sort::Int { lo: None, hi: None }
    }
}

/// The symbol instance a variable stands for. `x` is a transducer input
/// letter: a plain symbol, or `rho * |Σ| + a` for lookahead pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKey {
    Dst { q: usize, x: usize },
    OutCh { q: usize, x: usize, z: usize },
    OutLen { q: usize, x: usize },
    CfgPos { ex: usize, i: usize },
    CfgState { ex: usize, i: usize },
    Sim { p: usize, q: usize, r: usize },
    SimR { p: usize, q: usize, r: usize, rho: usize },
    Ed { q: usize, x: usize },
    Wed { q: usize, x: usize },
    En { p: usize, q: usize, r: usize, rho: usize },
    Dr { rho: usize, a: usize },
    Look { ex: usize, i: usize },
}

impl VarKey {
    fn name(&self) -> String {
        match *self {
            VarKey::Dst { q, x } => format!("dst_{q}_{x}"),
            VarKey::OutCh { q, x, z } => format!("och_{q}_{x}_{z}"),
            VarKey::OutLen { q, x } => format!("olen_{q}_{x}"),
            VarKey::CfgPos { ex, i } => format!("cpos_{ex}_{i}"),
            VarKey::CfgState { ex, i } => format!("cst_{ex}_{i}"),
            VarKey::Sim { p, q, r } => format!("sim_{p}_{q}_{r}"),
            VarKey::SimR { p, q, r, rho } => format!("simr_{p}_{q}_{r}_{rho}"),
            VarKey::Ed { q, x } => format!("ed_{q}_{x}"),
            VarKey::Wed { q, x } => format!("wed_{q}_{x}"),
            VarKey::En { p, q, r, rho } => format!("en_{p}_{q}_{r}_{rho}"),
            VarKey::Dr { rho, a } => format!("dr_{rho}_{a}"),
            VarKey::Look { ex, i } => format!("look_{ex}_{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarDecl {
    pub name: String,
    pub sort: Sort,
}

/// Maps symbol instances to solver variables, in declaration order.
#[derive(Debug, Clone, Default)]
pub struct VarRegistry {
    decls: Vec<VarDecl>,
    index: HashMap<VarKey, VarId>,
    by_name: HashMap<String, VarId>,
    helpers: usize,
}

impl VarRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    fn push(&mut self, name: String, sort: Sort) -> VarId {
        let id = self.decls.len();
        self.by_name.insert(name.clone(), id);
        self.decls.push(VarDecl { name, sort });
        id
    }

    /// Declares `key` once; later calls return the existing variable.
    pub fn declare(&mut self, key: VarKey, sort: Sort) -> VarId {
        if let Some(&id) = self.index.get(&key) {
            return id;
        }
        let id = self.push(key.name(), sort);
        self.index.insert(key, id);
        id
    }

    /// A fresh helper variable.
    pub fn fresh(&mut self, prefix: &str, sort: Sort) -> VarId {
        self.helpers += 1;
        self.push(format!("{prefix}_{}", self.helpers), sort)
    }

    pub fn get(&self, key: &VarKey) -> Option<VarId> {
        self.index.get(key).copied()
    }

    pub fn by_name(&self, name: &str) -> Option<VarId> {
        self.by_name.get(name).copied()
    }

    pub fn decls(&self) -> &[VarDecl] {
        &self.decls
    }

    pub fn decl(&self, v: VarId) -> &VarDecl {
        &self.decls[v]
    }

    pub fn len(&self) -> usize {
        self.decls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.decls.is_empty()
    }

    pub fn keyed(&self) -> impl Iterator<Item = (&VarKey, VarId)> {
        self.index.iter().map(|(k, &v)| (k, v))
    }
}
