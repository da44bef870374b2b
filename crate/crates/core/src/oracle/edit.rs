use num_rational::Ratio;

use crate::error::{Error, Result};

/// Levenshtein distance by the textbook dynamic program (unit-cost
/// insertion, deletion and substitution).
pub fn edit_distance_syms<T: PartialEq>(s: &[T], t: &[T]) -> usize {
    let mut prev: Vec<usize> = (0..=t.len()).collect();
    let mut cur = vec![0; t.len() + 1];
    for (i, a) in s.iter().enumerate() {
        cur[0] = i + 1;
        for (j, b) in t.iter().enumerate() {
            let sub = prev[j] + usize::from(a != b);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[t.len()]
}

pub fn edit_distance(s: &str, t: &str) -> usize {
    let s: Vec<char> = s.chars().collect();
    let t: Vec<char> = t.chars().collect();
    edit_distance_syms(&s, &t)
}

/// `ed(s, t) / len(s)`; undefined for empty `s`.
pub fn mean_edit_distance(s: &str, t: &str) -> Result<Ratio<i64>> {
    let n = s.chars().count();
    if n == 0 {
        return Err(Error::InvalidInput("mean edit distance from the empty word".into()));
    }
    Ok(Ratio::new(edit_distance(s, t) as i64, n as i64))
}
