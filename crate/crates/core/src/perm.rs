//! Permutations of `[n]` and modular position arithmetic.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Maps any integer position onto `1..=n` modulo `n`.
///
/// Panics if `n == 0`.
pub fn wrap_position(p: i64, n: usize) -> usize {
    assert!(n >= 1, "wrap_position needs n >= 1");
    let n = n as i64;
    ((p - 1).rem_euclid(n) + 1) as usize
}

/// Bottom labeling of a lottery: `entries[j - 1]` is the element that ends
/// at position `j`. Elements and positions are 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    entries: Vec<usize>,
}

impl Permutation {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        let ok = n >= 1
            && entries.iter().all(|&e| {
                if e == 0 || e > n || seen[e] {
                    return false;
                }
                seen[e] = true;
                true
            });
        if ok {
            Ok(Permutation { entries })
        } else {
            Err(Error::InvalidPermutation { n, entries })
        }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1);
        Permutation {
            entries: (1..=n).collect(),
        }
    }

    /// `(n, n-1, ..., 1)`.
    pub fn reverse_identity(n: usize) -> Self {
        assert!(n >= 1);
        Permutation {
            entries: (1..=n).rev().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// Element at the 1-based bottom position `pos`.
    pub fn at(&self, pos: usize) -> usize {
        self.entries[pos - 1]
    }

    /// Bottom positions indexed by element: `result[e - 1]` is where `e` ends.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.n()];
        for (j, &e) in self.entries.iter().enumerate() {
            pos[e - 1] = j + 1;
        }
        pos
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(j, &e)| e == j + 1)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(entries: Vec<usize>) -> Result<Self> {
        Permutation::new(entries)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.entries
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.entries)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}
