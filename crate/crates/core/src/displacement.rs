//! Displacement vectors and cyclic inversion arithmetic.
//!
//! Element `i` of a cyclic lottery starts at top position `i` and ends at
//! bottom position `i + x_i (mod n)`; `x_i` is its net rightward movement,
//! counting a step from line `n` to line `1` as rightward. On the universal
//! cover of the cylinder the route of `i` runs from `i` to `i + x_i`, which
//! makes crossing counts a matter of counting multiples of `n` in an
//! interval.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::perm::{wrap_position, Permutation};
use crate::{Error, Result};

/// Integer vector with zero sum, indexed by element (`entries[i - 1] = x_i`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct DisplacementVector {
    entries: Vec<i64>,
}

/// Signed number of times two routes cross on the cylinder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrossingNumber(pub i64);

impl CrossingNumber {
    pub fn abs(self) -> u64 {
        self.0.unsigned_abs()
    }
}

impl DisplacementVector {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() || entries.iter().sum::<i64>() != 0 {
            return Err(Error::InvalidDisplacementVector(entries));
        }
        Ok(DisplacementVector { entries })
    }

    pub fn zero(n: usize) -> Self {
        assert!(n >= 1);
        DisplacementVector {
            entries: vec![0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// `x_i` for the 1-based element `i`.
    pub fn get(&self, i: usize) -> i64 {
        self.entries[i - 1]
    }

    pub fn max_entry(&self) -> i64 {
        *self.entries.iter().max().expect("non-empty")
    }

    pub fn min_entry(&self) -> i64 {
        *self.entries.iter().min().expect("non-empty")
    }

    /// Bottom position where element `i` ends.
    pub fn end_position(&self, i: usize) -> usize {
        wrap_position(i as i64 + self.get(i), self.n())
    }

    fn check_element(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n() {
            Err(Error::ElementOutOfRange {
                element: i,
                n: self.n(),
            })
        } else {
            Ok(())
        }
    }

    /// `c_ij(x)`: with `r = i - j` and `s = (i + x_i) - (j + x_j)`, the number
    /// of multiples of `n` in `[r, s]`, negated when `s < r`.
    pub fn crossing_number(&self, i: usize, j: usize) -> Result<CrossingNumber> {
        self.check_element(i)?;
        self.check_element(j)?;
        if i == j {
            return Err(Error::DiagonalCrossing(i));
        }
        Ok(CrossingNumber(self.crossing_unchecked(i, j)))
    }

    pub(crate) fn crossing_unchecked(&self, i: usize, j: usize) -> i64 {
        let n = self.n() as i64;
        let r = i as i64 - j as i64;
        let s = (i as i64 + self.get(i)) - (j as i64 + self.get(j));
        if r <= s {
            multiples_in(r, s, n)
        } else {
            -multiples_in(s, r, n)
        }
    }

    /// Total number of route crossings, `sum_{i<j} |c_ij(x)|`.
    pub fn inversion_number(&self) -> u64 {
        let n = self.n();
        let mut total = 0;
        for i in 1..=n {
            for j in i + 1..=n {
                total += self.crossing_unchecked(i, j).unsigned_abs();
            }
        }
        total
    }

    /// Crossings carried by the route of `j`: `sum_i |c_ij(x)|`.
    pub fn route_crossings(&self, j: usize) -> u64 {
        (1..=self.n())
            .filter(|&i| i != j)
            .map(|i| self.crossing_unchecked(i, j).unsigned_abs())
            .sum()
    }

    /// `c_min(x) = min_j sum_i |c_ij(x)|`.
    pub fn c_min(&self) -> u64 {
        (1..=self.n())
            .map(|j| self.route_crossings(j))
            .min()
            .unwrap_or(0)
    }

    /// True when every pair of routes crosses at most once, i.e. the vector
    /// is realised by some lottery in which no two routes meet twice.
    pub fn is_almost_optimal(&self) -> bool {
        let n = self.n();
        (1..=n).all(|i| (i + 1..=n).all(|j| self.crossing_unchecked(i, j).abs() <= 1))
    }

    /// Moves `n` units from `x_i` to `x_j`. Validity for a permutation is
    /// preserved since both end positions are unchanged modulo `n`.
    pub fn shift(&self, i: usize, j: usize) -> DisplacementVector {
        let n = self.n() as i64;
        let mut entries = self.entries.clone();
        entries[i - 1] -= n;
        entries[j - 1] += n;
        DisplacementVector { entries }
    }

    /// Max-min contraction `T_ij`: requires `x_i = max`, `x_j = min` and
    /// `x_i - x_j = n`.
    pub fn contract(&self, i: usize, j: usize) -> Result<DisplacementVector> {
        self.check_element(i)?;
        self.check_element(j)?;
        let (hi, lo) = (self.max_entry(), self.min_entry());
        if self.get(i) != hi || self.get(j) != lo || hi - lo != self.n() as i64 {
            return Err(Error::Internal(format!(
                "T_({i},{j}) is not a max-min contraction of {:?}",
                self.entries
            )));
        }
        Ok(self.shift(i, j))
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [i64] {
        &mut self.entries
    }
}

/// Number of multiples of `n` in the inclusive interval `[a, b]`.
fn multiples_in(a: i64, b: i64, n: i64) -> i64 {
    if a > b {
        return 0;
    }
    b.div_euclid(n) - (a - 1).div_euclid(n)
}

impl TryFrom<Vec<i64>> for DisplacementVector {
    type Error = Error;

    fn try_from(entries: Vec<i64>) -> Result<Self> {
        DisplacementVector::new(entries)
    }
}

impl From<DisplacementVector> for Vec<i64> {
    fn from(x: DisplacementVector) -> Vec<i64> {
        x.entries
    }
}

impl fmt::Debug for DisplacementVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DV{:?}", self.entries)
    }
}

impl fmt::Display for DisplacementVector {
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

/// True iff `sum x = 0` and every element `i` ends where `π` puts it.
pub fn is_valid_dv(perm: &Permutation, x: &DisplacementVector) -> Result<bool> {
    if perm.n() != x.n() {
        return Err(Error::DimensionMismatch {
            expected: perm.n(),
            actual: x.n(),
        });
    }
    Ok(x.entries.iter().sum::<i64>() == 0 && (1..=x.n()).all(|i| perm.at(x.end_position(i)) == i))
}

/// A valid vector of `π` with small entries.
///
/// Each element takes the representative offset of smallest absolute value
/// (ties `±k` resolved to `+k`); the sum, a multiple of `n`, is then brought
/// to zero one `n` at a time, lowering the current largest entry (smallest
/// index first) while positive, raising the current smallest entry while
/// negative.
pub fn base_dv(perm: &Permutation) -> DisplacementVector {
    let n = perm.n() as i64;
    let pos = perm.positions();
    let mut entries: Vec<i64> = (1..=perm.n())
        .map(|i| {
            let d = pos[i - 1] as i64 - i as i64;
            [d, d - n, d + n]
                .into_iter()
                .min_by_key(|&v| (v.abs(), v < 0))
                .expect("three candidates")
        })
        .collect();
    let mut sum: i64 = entries.iter().sum();
    while sum > 0 {
        let k = argmax_first(&entries);
        entries[k] -= n;
        sum -= n;
    }
    while sum < 0 {
        let k = argmin_first(&entries);
        entries[k] += n;
        sum += n;
    }
    DisplacementVector { entries }
}

fn argmax_first(v: &[i64]) -> usize {
    let m = *v.iter().max().expect("non-empty");
    v.iter().position(|&e| e == m).expect("present")
}

fn argmin_first(v: &[i64]) -> usize {
    let m = *v.iter().min().expect("non-empty");
    v.iter().position(|&e| e == m).expect("present")
}

/// A displacement vector of `π` of minimum inversion number.
///
/// Starting from [`base_dv`], while some pair has `x_i - x_j > n` the pair
/// with the smallest such `i` (then smallest `j`) is shifted by `n`. Every
/// shift strictly lowers `inv`, and the result satisfies `max - min <= n`.
pub fn optimal_dv(perm: &Permutation) -> DisplacementVector {
    let mut x = base_dv(perm);
    let n = perm.n() as i64;
    loop {
        let lo = x.min_entry();
        let Some(i) = (0..x.n()).find(|&i| x.entries[i] - lo > n) else {
            break;
        };
        let xi = x.entries[i];
        let j = (0..x.n())
            .find(|&j| xi - x.entries[j] > n)
            .expect("the minimum qualifies");
        x.entries[i] -= n;
        x.entries[j] += n;
    }
    x
}

/// True iff `x` is a valid vector of `π` attaining the minimum `inv`.
pub fn is_optimal_dv(perm: &Permutation, x: &DisplacementVector) -> Result<bool> {
    if !is_valid_dv(perm, x)? {
        return Err(Error::InvalidDisplacementVector(x.entries.clone()));
    }
    Ok(x.inversion_number() == optimal_dv(perm).inversion_number())
}
