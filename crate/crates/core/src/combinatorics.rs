//! Compositions, descent and peak sets, and the enumerations every other
//! module indexes by. All enumerations are emitted in lexicographic order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// A finite sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return invalid(format!("composition parts must be positive: {parts:?}"));
        }
        Ok(Composition(parts))
    }

    /// Builds a composition from parts already known to be positive.
    pub(crate) fn from_parts_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(parts.iter().all(|&p| p > 0));
        Composition(parts)
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The size `|α|`.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn last(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn concat(&self, other: &Composition) -> Composition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Composition(parts)
    }

    pub fn reversed(&self) -> Composition {
        Composition(self.0.iter().rev().copied().collect())
    }
}

impl TryFrom<Vec<u32>> for Composition {
    type Error = Error;
    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Composition::new(parts)
    }
}

impl From<Composition> for Vec<u32> {
    fn from(c: Composition) -> Self {
        c.0
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Parses `"2,2,1"`; errors carry the byte offset of the offending part.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = Vec::new();
        if s.trim().is_empty() {
            return Ok(Composition::empty());
        }
        let mut offset = 0;
        for piece in s.split(',') {
            let trimmed = piece.trim();
            let lead = piece.len() - piece.trim_start().len();
            match trimmed.parse::<u32>() {
                Ok(p) if p > 0 => parts.push(p),
                _ => {
                    return Err(Error::Parse {
                        position: offset + lead,
                        message: format!("expected a positive integer, found {trimmed:?}"),
                    })
                }
            }
            offset += piece.len() + 1;
        }
        Ok(Composition(parts))
    }
}

/// Builds a composition from a literal; panics on zero parts.
#[macro_export]
macro_rules! comp {
    ($($p:expr),* $(,)?) => {
        $crate::combinatorics::Composition::new(vec![$($p),*]).expect("positive parts")
    };
}

/// A sequence of nonnegative integers; its length counts positive entries only.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeakComposition(pub Vec<u32>);

impl WeakComposition {
    pub fn len(&self) -> usize {
        self.0.iter().filter(|&&p| p > 0).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Drops zero entries.
    pub fn to_composition(&self) -> Composition {
        Composition(self.0.iter().copied().filter(|&p| p > 0).collect())
    }
}

/// An arbitrary integer vector, the index type of general 𝔖_α.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntVector(pub Vec<i64>);

impl IntVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }
}

impl From<&Composition> for IntVector {
    fn from(c: &Composition) -> Self {
        IntVector(c.parts().iter().map(|&p| p as i64).collect())
    }
}

impl FromStr for IntVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        let mut offset = 0;
        for piece in s.split(',') {
            let trimmed = piece.trim();
            out.push(trimmed.parse::<i64>().map_err(|_| Error::Parse {
                position: offset,
                message: format!("expected an integer, found {trimmed:?}"),
            })?);
            offset += piece.len() + 1;
        }
        Ok(IntVector(out))
    }
}

/// A peak set in `[n]`: a subset of `[2, n-1]` without consecutive elements.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PeakSet {
    n: u32,
    elems: Vec<u32>,
}

impl PeakSet {
    pub fn new(n: u32, mut elems: Vec<u32>) -> Result<Self> {
        elems.sort_unstable();
        elems.dedup();
        for (i, &x) in elems.iter().enumerate() {
            if x < 2 || x + 1 > n {
                return invalid(format!("{x} is outside [2, {}]", n.saturating_sub(1)));
            }
            if i > 0 && elems[i - 1] + 1 == x {
                return invalid(format!("peak set contains consecutive {} and {x}", x - 1));
            }
        }
        Ok(PeakSet { n, elems })
    }

    pub fn empty(n: u32) -> Self {
        PeakSet { n, elems: Vec::new() }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn elems(&self) -> &[u32] {
        &self.elems
    }

    /// The peak composition whose descent set is this peak set.
    pub fn to_composition(&self) -> Composition {
        composition_from_descents(&self.elems, self.n).expect("peak set lies in [n-1]")
    }
}

impl fmt::Display for PeakSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.elems.iter().map(u32::to_string).collect();
        write!(f, "{{{}}}_{}", e.join(","), self.n)
    }
}

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u32>,
    strict: bool,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return invalid("partition parts must be positive");
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return invalid(format!("{parts:?} is not weakly decreasing"));
        }
        let strict = parts.windows(2).all(|w| w[0] > w[1]);
        Ok(Partition { parts, strict })
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn sorted(mut parts: Vec<u32>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn to_composition(&self) -> Composition {
        Composition(self.parts.clone())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Partial sums `α₁, α₁+α₂, …` excluding the total.
pub fn descent_set(alpha: &Composition) -> Vec<u32> {
    let parts = alpha.parts();
    let mut out = Vec::with_capacity(parts.len().saturating_sub(1));
    let mut acc = 0;
    for &p in parts.iter().take(parts.len().saturating_sub(1)) {
        acc += p;
        out.push(acc);
    }
    out
}

pub fn composition_from_descents(set: &[u32], n: u32) -> Result<Composition> {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if let Some(&x) = sorted.iter().find(|&&x| x == 0 || x >= n) {
        return invalid(format!("{x} is outside [1, {}]", n.saturating_sub(1)));
    }
    let mut parts = Vec::with_capacity(sorted.len() + 1);
    let mut prev = 0;
    for x in sorted.into_iter().chain(std::iter::once(n)) {
        parts.push(x - prev);
        prev = x;
    }
    if n == 0 {
        parts.clear();
    }
    Ok(Composition(parts))
}

pub fn peak_set(alpha: &Composition) -> PeakSet {
    let n = alpha.size();
    let d = descent_set(alpha);
    let elems = d
        .iter()
        .copied()
        .filter(|&x| x >= 2 && x < n && d.binary_search(&(x - 1)).is_err())
        .collect();
    PeakSet { n, elems }
}

fn check_positive(n: u32) -> Result<()> {
    if n == 0 {
        return invalid("n must be at least 1");
    }
    Ok(())
}

fn enumerate(n: u32, allowed: &dyn Fn(&[u32], u32, u32) -> bool) -> Vec<Composition> {
    fn go(
        remaining: u32,
        prefix: &mut Vec<u32>,
        allowed: &dyn Fn(&[u32], u32, u32) -> bool,
        out: &mut Vec<Composition>,
    ) {
        if remaining == 0 {
            out.push(Composition(prefix.clone()));
            return;
        }
        for p in 1..=remaining {
            if allowed(prefix, p, remaining - p) {
                prefix.push(p);
                go(remaining - p, prefix, allowed, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), allowed, &mut out);
    out
}

pub fn compositions(n: u32) -> Result<Vec<Composition>> {
    check_positive(n)?;
    Ok(enumerate(n, &|_, _, _| true))
}

pub fn odd_compositions(n: u32) -> Result<Vec<Composition>> {
    check_positive(n)?;
    Ok(enumerate(n, &|_, p, _| p % 2 == 1))
}

/// Compositions whose parts all exceed 1, except that the last may equal 1.
pub fn peak_compositions(n: u32) -> Result<Vec<Composition>> {
    check_positive(n)?;
    Ok(enumerate(n, &|_, p, rest| p > 1 || rest == 0))
}

/// Peak sets of `[n]`, ordered by their peak compositions.
pub fn peak_sets(n: u32) -> Result<Vec<PeakSet>> {
    Ok(peak_compositions(n)?
        .iter()
        .map(|c| PeakSet { n, elems: descent_set(c) })
        .collect())
}

/// The refining order: `α ≤ β` iff `D(β) ⊆ D(α)`.
pub fn refines(alpha: &Composition, beta: &Composition) -> Result<bool> {
    if alpha.size() != beta.size() {
        return invalid(format!("{alpha} and {beta} have different sizes"));
    }
    let da = descent_set(alpha);
    Ok(descent_set(beta).iter().all(|x| da.binary_search(x).is_ok()))
}

/// All `β` with `D(β) ⊆ D(α)`, i.e. the coarsenings of `α` (including `α`).
pub fn coarsenings(alpha: &Composition) -> Vec<Composition> {
    let n = alpha.size();
    subsets(&descent_set(alpha))
        .into_iter()
        .map(|s| composition_from_descents(&s, n).expect("subset of D(α)"))
        .collect()
}

/// All `β` with `D(α) ⊆ D(β)`, i.e. the refinements of `α` (including `α`).
pub fn refinements(alpha: &Composition) -> Vec<Composition> {
    let n = alpha.size();
    let d = descent_set(alpha);
    let free: Vec<u32> = (1..n).filter(|x| d.binary_search(x).is_err()).collect();
    subsets(&free)
        .into_iter()
        .map(|mut s| {
            s.extend_from_slice(&d);
            composition_from_descents(&s, n).expect("subset of [n-1]")
        })
        .collect()
}

fn subsets(items: &[u32]) -> Vec<Vec<u32>> {
    (0u64..(1u64 << items.len()))
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &x)| x)
                .collect()
        })
        .collect()
}

pub fn fibonacci(n: u32) -> u64 {
    let (mut a, mut b) = (1u64, 1u64);
    for _ in 0..n {
        (a, b) = (b, a + b);
    }
    a
}

pub fn is_peak_composition(alpha: &Composition) -> bool {
    let parts = alpha.parts();
    !parts.is_empty() && parts[..parts.len() - 1].iter().all(|&p| p > 1)
}

/// Sorts distinct parts decreasingly; the sign is the parity of inversions
/// of the sorting permutation.
pub fn rearrangement(alpha: &Composition) -> Result<(Partition, i32)> {
    let parts = alpha.parts();
    let mut seen = parts.to_vec();
    seen.sort_unstable();
    if seen.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::SignUndefined(format!("{alpha} has repeated parts")));
    }
    let inversions = (0..parts.len())
        .flat_map(|i| (i + 1..parts.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| parts[i] < parts[j])
        .count();
    let sign = if inversions % 2 == 0 { 1 } else { -1 };
    Ok((Partition::sorted(parts.to_vec())?, sign))
}

/// Strict partitions of `n` in lexicographic order.
pub fn strict_partitions(n: u32) -> Vec<Partition> {
    let mut out: Vec<Partition> = enumerate(n, &|prefix, p, _| prefix.last().is_none_or(|&q| p < q))
        .into_iter()
        .map(|c| Partition::new(c.0).expect("decreasing"))
        .collect();
    out.sort();
    out
}
