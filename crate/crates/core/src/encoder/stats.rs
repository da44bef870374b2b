use std::collections::BTreeMap;
use std::fmt;

use crate::encoder::formula::Formula;

/// Constraint families. `ExampleExhausted`, `WedDef` and `Template` have
/// no counterpart in the published encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// configurations start at output position 0 in the initial state.
    ExampleInit,
    /// configuration update while output remains.
    ExampleStep,
    /// Once the whole output is produced, later transitions output nothing.
    ExampleExhausted,
    /// the whole output is produced at the end of the input.
    ExampleFinal,
    /// initial simulation triple.
    TypeInit,
    /// simulation advancement.
    TypeStep,
    /// no accepting input reaches a rejecting output state.
    TypeFinal,
    /// per-transition distance when the output contains the input.
    EdContains,
    /// per-transition distance when it does not.
    EdAbsent,
    /// Scaled slack `p_num - p_den * ed`.
    WedDef,
    /// no initial credit.
    EnergyInit,
    /// energy step.
    EnergyStep,
    /// no energy debt at accepting states.
    EnergyFinal,
    /// initial budget `D`.
    BoundedInit,
    /// budget decrement.
    BoundedStep,
    /// lookahead states along each example.
    LookChain,
    /// configuration update keyed by lookahead state.
    LookStep,
    /// some lookahead state starts the simulation.
    LookTypeInit,
    /// simulation advancement through the inverse lookahead relation.
    LookTypeStep,
    /// accepting condition at the initial lookahead state.
    LookTypeFinal,
    /// Pinned transitions.
    Template,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&format!("{self:?}"))
    }
}

/// Per-family counts of constraint instances, of those actually emitted
/// (instances that fold to `true` are dropped), and the largest number of
/// distinct variables in one emitted instance.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EncodingStats {
    pub instances: BTreeMap<Family, usize>,
    pub emitted: BTreeMap<Family, usize>,
    pub max_vars: BTreeMap<Family, usize>,
}

impl EncodingStats {
    pub(crate) fn record(&mut self, family: Family, f: &Formula) {
        *self.instances.entry(family).or_default() += 1;
        if *f != Formula::True {
            *self.emitted.entry(family).or_default() += 1;
            let n = f.vars().len();
            let m = self.max_vars.entry(family).or_default();
            *m = (*m).max(n);
        }
    }

    pub fn instances(&self, family: Family) -> usize {
        self.instances.get(&family).copied().unwrap_or(0)
    }

    pub fn emitted(&self, family: Family) -> usize {
        self.emitted.get(&family).copied().unwrap_or(0)
    }

    pub fn total_emitted(&self) -> usize {
        self.emitted.values().sum()
    }
}

impl fmt::Display for EncodingStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (fam, n) in &self.instances {
            writeln!(
                f,
                "{fam:<18} instances {n:>7}  emitted {:>7}  max vars {:>4}",
                self.emitted(*fam),
                self.max_vars.get(fam).copied().unwrap_or(0)
            )?;
        }
        Ok(())
    }
}
