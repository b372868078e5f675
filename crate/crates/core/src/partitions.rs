//! Integer partitions and the partition-division quasi-order.
//!
//! `B` divides `A` (both partitions of the same k) when every part of `A` is
//! a multiple of some part of `B`. A partition is maximal when it divides no
//! other partition of k; it then suffices to look at strictly shorter
//! partitions, which is what [`is_maximal`] does.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Guard for [`enumerate_partitions`].
pub const ENUMERATE_LIMIT: u32 = 64;
/// Guard for [`maximal_partitions`] and [`has_unique_maximal`].
pub const MAXIMAL_LIMIT: u32 = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("k = {k} outside 1..={limit}")]
    OutOfRange { k: u32, limit: u32 },
    #[error("partitions of different totals: {0} and {1}")]
    TotalMismatch(u32, u32),
    #[error("invalid partition: {0}")]
    Invalid(String),
    #[error("need 1 <= m <= k/2, got k = {k}, m = {m}")]
    Precondition { k: u32, m: u32 },
}

/// Positive parts in non-increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts `parts` into non-increasing order; rejects empty input and zero parts.
    pub fn new(mut parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.is_empty() {
            return Err(PartitionError::Invalid("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(PartitionError::Invalid("parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// The one-part partition `(k)`.
    pub fn single(k: u32) -> Self {
        assert!(k > 0);
        Partition { parts: vec![k] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    /// Accepts `(7,6,4)` with parts in any order; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| {
                PartitionError::Invalid(format!("{s:?} is not of the form (a,b,...)"))
            })?;
        let parts = inner
            .split(',')
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| PartitionError::Invalid(format!("bad part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

fn check_range(k: u32, limit: u32) -> Result<(), PartitionError> {
    if k == 0 || k > limit {
        return Err(PartitionError::OutOfRange { k, limit });
    }
    Ok(())
}

/// Every partition of `k`, in reverse-lexicographic order: `(k)` first, `(1,...,1)` last.
pub fn enumerate_partitions(k: u32) -> Result<Vec<Partition>, PartitionError> {
    check_range(k, ENUMERATE_LIMIT)?;
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fill(k, k, &mut stack, &mut out);
    Ok(out)
}

fn fill(remaining: u32, max_part: u32, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: stack.clone(),
        });
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        stack.push(part);
        fill(remaining - part, part, stack, out);
        stack.pop();
    }
}

/// True iff `b` divides `a`: each part of `a` has a divisor among the parts of `b`.
pub fn divides(b: &Partition, a: &Partition) -> Result<bool, PartitionError> {
    if b.total() != a.total() {
        return Err(PartitionError::TotalMismatch(b.total(), a.total()));
    }
    Ok(divides_unchecked(b, a))
}

fn divides_unchecked(b: &Partition, a: &Partition) -> bool {
    a.parts.iter().all(|&x| b.parts.iter().any(|&y| x % y == 0))
}

/// True iff `a` divides no partition of its total other than itself.
///
/// Only partitions shorter than `a` need to be examined: if `a` divides a
/// different partition at least as long, it also divides a shorter one.
/// The search builds those shorter partitions directly out of multiples of
/// the parts of `a`.
pub fn is_maximal(a: &Partition) -> bool {
    let k = a.total();
    let limit = a.len() - 1;
    if limit == 0 {
        return true;
    }
    let mut multiples: Vec<u32> = (1..=k)
        .filter(|m| a.parts.iter().any(|&d| m % d == 0))
        .collect();
    multiples.reverse();
    !shorter_sum_exists(&multiples, k, limit)
}

/// Whether `target` is a sum of at most `slots` entries of `values`
/// (descending, repetition allowed).
fn shorter_sum_exists(values: &[u32], target: u32, slots: usize) -> bool {
    if target == 0 {
        return true;
    }
    if slots == 0 {
        return false;
    }
    for (i, &v) in values.iter().enumerate() {
        if v > target {
            continue;
        }
        // non-increasing choice; too few slots left even at the largest value
        if (v as usize) * slots < target as usize {
            return false;
        }
        if shorter_sum_exists(&values[i..], target - v, slots - 1) {
            return true;
        }
    }
    false
}

/// Reference check: scans every partition of the same total.
pub fn is_maximal_full_scan(a: &Partition) -> bool {
    let all = enumerate_partitions(a.total()).expect("total within the enumeration guard");
    all.iter().all(|b| b == a || !divides_unchecked(a, b))
}

/// The maximal partitions of `k` in reverse-lexicographic order.
pub fn maximal_partitions(k: u32) -> Result<Vec<Partition>, PartitionError> {
    check_range(k, MAXIMAL_LIMIT)?;
    Ok(enumerate_partitions(k)?
        .into_iter()
        .filter(is_maximal)
        .collect())
}

/// Closed form for two-part partitions: `(k-m, m)` is maximal iff `m` does not divide `k`.
pub fn is_len2_maximal(k: u32, m: u32) -> Result<bool, PartitionError> {
    if m == 0 || 2 * m > k {
        return Err(PartitionError::Precondition { k, m });
    }
    Ok(!k.is_multiple_of(m))
}

/// True iff `(k)` is the only maximal partition of `k`.
pub fn has_unique_maximal(k: u32) -> Result<bool, PartitionError> {
    let max = maximal_partitions(k)?;
    Ok(max.len() == 1)
}
