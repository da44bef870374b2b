use crate::alphabet::Sym;
use crate::automata::dfa::Dfa;
use crate::automata::ft::Ft;
use crate::error::{Error, Result};

/// A piecewise transducer: each branch applies its transducer on inputs
/// accepted by its domain. Domains are pairwise disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainRestrictedFt {
    branches: Vec<(Ft, Dfa)>,
}

impl DomainRestrictedFt {
    /// Checks pairwise disjointness by product emptiness; an overlap is
    /// reported with its shortest witness.
    pub fn new(branches: Vec<(Ft, Dfa)>) -> Result<Self> {
        let Some((first, _)) = branches.first() else {
            return Err(Error::InvalidInput("at least one branch is required".into()));
        };
        let alphabet = first.alphabet().clone();
        for (t, d) in &branches {
            if *t.alphabet() != alphabet || *d.alphabet() != alphabet {
                return Err(Error::AlphabetMismatch);
            }
        }
        for i in 0..branches.len() {
            for j in i + 1..branches.len() {
                let both = branches[i].1.intersect(&branches[j].1)?;
                if let Some(witness) = both.witness() {
                    return Err(Error::OverlappingDomains { witness });
                }
            }
        }
        Ok(DomainRestrictedFt { branches })
    }

    pub fn branches(&self) -> &[(Ft, Dfa)] {
        &self.branches
    }

    /// Index of the branch whose domain accepts `w`.
    pub fn branch_for(&self, w: &[Sym]) -> Option<usize> {
        self.branches.iter().position(|(_, d)| d.accepts_syms(w))
    }

    /// `None` when `w` lies outside every domain.
    pub fn run_syms(&self, w: &[Sym]) -> Option<Vec<Sym>> {
        self.branch_for(w).map(|i| self.branches[i].0.run_syms(w))
    }

    pub fn run(&self, w: &str) -> Result<Option<String>> {
        let alphabet = self.branches[0].0.alphabet();
        let syms = alphabet.encode(w)?;
        Ok(self.run_syms(&syms).map(|o| alphabet.decode(&o)))
    }

    /// Union of all branch domains.
    pub fn domain(&self) -> Dfa {
        let mut dom = self.branches[0].1.clone();
        for (_, d) in &self.branches[1..] {
            dom = dom.union(d).expect("alphabets checked at construction");
        }
        dom
    }
}

/// Combines `(transducer, domain)` branches into a [`DomainRestrictedFt`].
pub fn restrict_union(branches: Vec<(Ft, Dfa)>) -> Result<DomainRestrictedFt> {
    DomainRestrictedFt::new(branches)
}
