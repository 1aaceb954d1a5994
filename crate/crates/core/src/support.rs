use std::fmt;

use crate::error::{Error, Result};

/// Sorted, nonempty set of zero-based coordinate indices.
///
/// Displayed one-based, as `{1,2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Support(Vec<usize>);

impl Support {
    pub fn new(mut indices: Vec<usize>, order: usize) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        if indices.is_empty() {
            return Err(Error::Parse("support must be nonempty".into()));
        }
        if let Some(&bad) = indices.iter().find(|&&i| i >= order) {
            return Err(Error::IndexOutOfRange { index: bad, order });
        }
        Ok(Self(indices))
    }

    pub(crate) fn from_sorted(indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        Self(indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn is_subset(&self, other: &Support) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    pub fn is_strict_subset(&self, other: &Support) -> bool {
        self.len() < other.len() && self.is_subset(other)
    }

    /// One-based, comma separated, without braces: `1,2`.
    pub fn to_plain(&self) -> String {
        self.0
            .iter()
            .map(|i| (i + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_plain())
    }
}

/// All nonempty subsets of `0..order`, by cardinality and then lexicographically.
pub fn supports_by_cardinality(order: usize) -> Vec<Support> {
    let mut out = Vec::with_capacity((1usize << order.min(30)).saturating_sub(1));
    for k in 1..=order {
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            out.push(Support(combo.clone()));
            // advance to the next k-combination in lexicographic order
            let mut i = k;
            while i > 0 && combo[i - 1] == order - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            combo[i - 1] += 1;
            for j in i..k {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    out
}
