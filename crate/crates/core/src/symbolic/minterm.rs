use crate::alphabet::{Alphabet, Sym};
use crate::error::{Error, Result};
use crate::symbolic::interval::IntervalPred;

/// A partition of the universe into minterms, each with a representative
/// witness character. Minterm `i` is symbol `i` of [`MintermMap::alphabet`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MintermMap {
    universe: IntervalPred,
    minterms: Vec<(IntervalPred, char)>,
    alphabet: Alphabet,
}

/// All satisfiable conjunctions of the predicates and their negations
/// within `universe`, ordered by least code point.
pub fn compute_minterms(preds: &[IntervalPred], universe: &IntervalPred) -> Result<MintermMap> {
    if universe.is_empty() {
        return Err(Error::InvalidInput("minterms need a non-empty universe".into()));
    }
    let mut blocks = vec![universe.clone()];
    for p in preds {
        let p = p.and(universe);
        let mut next = Vec::with_capacity(blocks.len() * 2);
        for b in blocks {
            let inside = b.and(&p);
            let outside = b.minus(&p);
            if !inside.is_empty() {
                next.push(inside);
            }
            if !outside.is_empty() {
                next.push(outside);
            }
        }
        blocks = next;
    }
    blocks.sort_by_key(|b| b.least());
    let minterms = blocks
        .into_iter()
        .map(|b| {
            let w =
                b.witness().ok_or_else(|| Error::InvalidInput(format!("minterm {b} contains no valid character")))?;
            Ok((b, w))
        })
        .collect::<Result<Vec<_>>>()?;
    MintermMap::from_parts(universe.clone(), minterms)
}

impl MintermMap {
    /// Validates an explicit partition: minterms pairwise disjoint,
    /// covering `universe`, and each witness inside its own minterm.
    pub fn from_parts(universe: IntervalPred, minterms: Vec<(IntervalPred, char)>) -> Result<Self> {
        let mut covered = IntervalPred::empty();
        for (m, w) in &minterms {
            if m.is_empty() || !m.contains_char(*w) {
                return Err(Error::InvalidInput(format!("witness {w:?} does not satisfy minterm {m}")));
            }
            if !covered.and(m).is_empty() {
                return Err(Error::InvalidInput(format!("minterm {m} overlaps another minterm")));
            }
            covered = covered.or(m);
        }
        if covered != universe {
            return Err(Error::InvalidInput("minterms do not cover the universe".into()));
        }
        let alphabet = Alphabet::new(minterms.iter().map(|&(_, w)| w))?;
        Ok(MintermMap { universe, minterms, alphabet })
    }

    pub fn universe(&self) -> &IntervalPred {
        &self.universe
    }

    /// The witness alphabet, in minterm order.
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.minterms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.minterms.is_empty()
    }

    pub fn minterms(&self) -> &[(IntervalPred, char)] {
        &self.minterms
    }

    pub fn predicate(&self, s: Sym) -> &IntervalPred {
        &self.minterms[s].0
    }

    pub fn witness(&self, s: Sym) -> char {
        self.minterms[s].1
    }

    /// Index of the minterm containing `c`.
    pub fn minterm_of(&self, c: char) -> Option<Sym> {
        self.minterms.iter().position(|(m, _)| m.contains_char(c))
    }

    /// The witness representing `c`.
    pub fn witness_of(&self, c: char) -> Option<char> {
        self.minterm_of(c).map(|s| self.witness(s))
    }

    /// Replaces every character by its witness.
    pub fn to_witnesses(&self, w: &str) -> Result<String> {
        w.chars().map(|c| self.witness_of(c).ok_or(Error::ForeignSymbol(c))).collect()
    }

    /// Whether every predicate is a union of minterms.
    pub fn refines(&self, pred: &IntervalPred) -> bool {
        self.minterms.iter().all(|(m, _)| m.is_subset_of(pred) || m.and(pred).is_empty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn escape_quotes_minterms() {
        let u = IntervalPred::ascii();
        let quote = IntervalPred::single('"');
        let bslash = IntervalPred::single('\\');
        let other = quote.or(&bslash).not_within(&u);
        let not_bslash = bslash.not_within(&u);
        let mm = compute_minterms(&[other.clone(), quote.clone(), bslash.clone(), not_bslash], &u).unwrap();
        assert_eq!(mm.len(), 3);
        let got: Vec<(IntervalPred, char)> = mm.minterms().to_vec();
        assert_eq!(got, vec![(other, 'a'), (quote, '"'), (bslash, '\\')]);
        assert_eq!(mm.alphabet().symbols(), &['a', '"', '\\']);
        assert_eq!(mm.to_witnesses("x\"y\\").unwrap(), "a\"a\\");
    }

    #[test]
    fn from_parts_rejects_bad_partitions() {
        let u = IntervalPred::range(0, 9).unwrap();
        let lo = IntervalPred::range(0, 4).unwrap();
        let hi = IntervalPred::range(5, 9).unwrap();
        assert!(MintermMap::from_parts(u.clone(), vec![(lo.clone(), '\u{1}'), (hi.clone(), '\u{5}')]).is_ok());
        assert!(MintermMap::from_parts(u.clone(), vec![(lo.clone(), '\u{5}'), (hi.clone(), '\u{6}')]).is_err());
        assert!(MintermMap::from_parts(u, vec![(lo, '\u{1}')]).is_err());
    }
}
