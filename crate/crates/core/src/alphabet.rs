use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a symbol inside an [`Alphabet`].
pub type Sym = usize;

/// A finite, ordered, duplicate-free list of characters.
///
/// The list order is the tie-breaking order used by every search that
/// returns a "shortest" witness.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Arc<[char]>,
}

impl Alphabet {
    pub fn new<I: IntoIterator<Item = char>>(symbols: I) -> Result<Self> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet must be non-empty".into()));
        }
        let mut seen = BTreeMap::new();
        for (i, &c) in symbols.iter().enumerate() {
            if seen.insert(c, i).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {c:?}")));
            }
        }
        Ok(Alphabet { symbols: symbols.into() })
    }

    /// Builds an alphabet from the characters of `s`, in order.
    pub fn from_str_chars(s: &str) -> Result<Self> {
        Self::new(s.chars())
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn char_of(&self, s: Sym) -> char {
        self.symbols[s]
    }

    pub fn index_of(&self, c: char) -> Option<Sym> {
        // alphabets are small; a linear scan beats building a map per lookup
        self.symbols.iter().position(|&x| x == c)
    }

    pub fn encode(&self, w: &str) -> Result<Vec<Sym>> {
        w.chars().map(|c| self.index_of(c).ok_or(Error::ForeignSymbol(c))).collect()
    }

    pub fn decode(&self, w: &[Sym]) -> String {
        w.iter().map(|&s| self.symbols[s]).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Sym, char)> + '_ {
        self.symbols.iter().copied().enumerate()
    }

    /// Enumerates all words of length at most `max_len`, shortest first,
    /// then in alphabet order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Vec<Sym>> {
        let mut out = vec![Vec::new()];
        let mut layer = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * self.len());
            for w in &layer {
                for s in 0..self.len() {
                    let mut v = w.clone();
                    v.push(s);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({:?})", self.symbols.iter().collect::<String>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_empty() {
        assert!(Alphabet::from_str_chars("").is_err());
        assert!(Alphabet::from_str_chars("aba").is_err());
    }

    #[test]
    fn encode_roundtrip_and_foreign_symbol() {
        let a = Alphabet::from_str_chars("a\"\\").unwrap();
        let w = a.encode("a\"a").unwrap();
        assert_eq!(w, vec![0, 1, 0]);
        assert_eq!(a.decode(&w), "a\"a");
        assert_eq!(a.encode("ab"), Err(Error::ForeignSymbol('b')));
    }

    #[test]
    fn word_enumeration_is_length_then_alphabet_ordered() {
        let a = Alphabet::from_str_chars("ba").unwrap();
        let ws: Vec<String> = a.words_up_to(2).iter().map(|w| a.decode(w)).collect();
        assert_eq!(ws, ["", "b", "a", "bb", "ba", "ab", "aa"]);
    }
}
