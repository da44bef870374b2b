use std::fmt;

use crate::error::{Error, Result};

/// A union of closed code-point intervals in canonical form: sorted,
/// pairwise disjoint and non-adjacent. The empty union is unsatisfiable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntervalPred {
    intervals: Vec<(u32, u32)>,
}

/// 7-bit ASCII, the default universe.
pub const ASCII: (u32, u32) = (0, 127);

impl IntervalPred {
    /// Normalizes an arbitrary list of intervals. Inverted bounds are an
    /// error.
    pub fn new(intervals: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut v: Vec<(u32, u32)> = intervals.into_iter().collect();
        if let Some(&(lo, hi)) = v.iter().find(|(lo, hi)| lo > hi) {
            return Err(Error::InvalidInput(format!("interval [{lo}, {hi}] is inverted")));
        }
        v.sort_unstable();
        let mut out: Vec<(u32, u32)> = Vec::with_capacity(v.len());
        for (lo, hi) in v {
            match out.last_mut() {
                Some(last) if lo <= last.1.saturating_add(1) => last.1 = last.1.max(hi),
                _ => out.push((lo, hi)),
            }
        }
        Ok(IntervalPred { intervals: out })
    }

    pub fn empty() -> Self {
        IntervalPred::default()
    }

    pub fn range(lo: u32, hi: u32) -> Result<Self> {
        Self::new([(lo, hi)])
    }

    pub fn char_range(lo: char, hi: char) -> Result<Self> {
        Self::range(lo as u32, hi as u32)
    }

    pub fn single(c: char) -> Self {
        IntervalPred { intervals: vec![(c as u32, c as u32)] }
    }

    pub fn ascii() -> Self {
        IntervalPred { intervals: vec![ASCII] }
    }

    pub fn from_chars(chars: impl IntoIterator<Item = char>) -> Self {
        Self::new(chars.into_iter().map(|c| (c as u32, c as u32))).expect("point intervals")
    }

    pub fn intervals(&self) -> &[(u32, u32)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, c: u32) -> bool {
        self.intervals
            .binary_search_by(|&(lo, hi)| {
                if hi < c {
                    std::cmp::Ordering::Less
                } else if lo > c {
                    std::cmp::Ordering::Greater
                } else {
                    std::cmp::Ordering::Equal
                }
            })
            .is_ok()
    }

    pub fn contains_char(&self, c: char) -> bool {
        self.contains(c as u32)
    }

    /// Number of code points satisfying the predicate.
    pub fn size(&self) -> u64 {
        self.intervals.iter().map(|&(lo, hi)| u64::from(hi - lo) + 1).sum()
    }

    pub fn least(&self) -> Option<u32> {
        self.intervals.first().map(|&(lo, _)| lo)
    }

    /// The interval itself when the predicate is a single interval.
    pub fn as_single_interval(&self) -> Option<(u32, u32)> {
        match self.intervals.as_slice() {
            [iv] => Some(*iv),
            _ => None,
        }
    }

    pub fn and(&self, other: &IntervalPred) -> IntervalPred {
        let (a, b) = (&self.intervals, &other.intervals);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            let lo = a[i].0.max(b[j].0);
            let hi = a[i].1.min(b[j].1);
            if lo <= hi {
                out.push((lo, hi));
            }
            if a[i].1 < b[j].1 {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalPred { intervals: out }
    }

    pub fn or(&self, other: &IntervalPred) -> IntervalPred {
        Self::new(self.intervals.iter().chain(&other.intervals).copied()).expect("canonical inputs")
    }

    /// Complement relative to `universe`.
    pub fn not_within(&self, universe: &IntervalPred) -> IntervalPred {
        let mut gaps = Vec::new();
        let mut next = 0u32;
        let mut open = true;
        for &(lo, hi) in &self.intervals {
            if lo > next {
                gaps.push((next, lo - 1));
            }
            match hi.checked_add(1) {
                Some(n) => next = n,
                None => {
                    open = false;
                    break;
                }
            }
        }
        if open {
            gaps.push((next, u32::MAX));
        }
        universe.and(&IntervalPred { intervals: gaps })
    }

    pub fn minus(&self, other: &IntervalPred) -> IntervalPred {
        other.not_within(self)
    }

    pub fn is_subset_of(&self, other: &IntervalPred) -> bool {
        self.minus(other).is_empty()
    }

    pub fn chars(&self) -> impl Iterator<Item = char> + '_ {
        self.intervals.iter().flat_map(|&(lo, hi)| (lo..=hi).filter_map(char::from_u32))
    }

    /// Preferred representative: a lowercase letter, then an uppercase
    /// letter, then a digit, then printable ASCII, then any character; the
    /// least one within the first non-empty class.
    pub fn witness(&self) -> Option<char> {
        const CLASSES: [(u32, u32); 4] =
            [('a' as u32, 'z' as u32), ('A' as u32, 'Z' as u32), ('0' as u32, '9' as u32), (0x20, 0x7e)];
        for (lo, hi) in CLASSES {
            let hit = self.and(&IntervalPred { intervals: vec![(lo, hi)] });
            let c = hit.chars().next();
            if c.is_some() {
                return c;
            }
        }
        self.chars().next()
    }
}

impl fmt::Display for IntervalPred {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |c: u32| match char::from_u32(c) {
            Some(ch) if !ch.is_control() => format!("{ch}"),
            _ => format!("\\u{{{c:x}}}"),
        };
        write!(f, "[")?;
        for &(lo, hi) in &self.intervals {
            if lo == hi {
                write!(f, "{}", show(lo))?;
            } else {
                write!(f, "{}-{}", show(lo), show(hi))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_adjacent_and_overlapping() {
        let p = IntervalPred::new([(5, 7), (1, 2), (3, 4), (6, 9)]).unwrap();
        assert_eq!(p.intervals(), &[(1, 9)]);
        assert!(IntervalPred::new([(3, 2)]).is_err());
    }

    #[test]
    fn boolean_algebra() {
        let u = IntervalPred::ascii();
        let az = IntervalPred::char_range('a', 'z').unwrap();
        let a = IntervalPred::single('a');
        assert_eq!(az.and(&a), a);
        assert_eq!(az.minus(&a), IntervalPred::char_range('b', 'z').unwrap());
        let not_az = az.not_within(&u);
        assert_eq!(not_az.intervals(), &[(0, 96), (123, 127)]);
        assert_eq!(not_az.or(&az), u);
        assert_eq!(u.size(), 128);
    }

    #[test]
    fn witness_prefers_letters() {
        let q = IntervalPred::from_chars(['"', '\\']).not_within(&IntervalPred::ascii());
        assert_eq!(q.witness(), Some('a'));
        assert_eq!(IntervalPred::single('"').witness(), Some('"'));
        assert_eq!(IntervalPred::range(0, 5).unwrap().witness(), Some('\0'));
        assert_eq!(IntervalPred::empty().witness(), None);
    }
}
