//! Integer partitions and the symmetric-group numerology built on them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// Trailing zeros are never stored, so two partitions are equal iff their
/// Young diagrams are. The derived ordering is lexicographic on the parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, dropping trailing zeros.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(invalid(format!("parts {parts:?} are not weakly decreasing")));
        }
        if parts.contains(&0) {
            return Err(invalid(format!("parts {parts:?} contain an interior zero")));
        }
        Ok(Partition { parts })
    }

    /// Sorts arbitrary parts into a partition (zeros dropped).
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub(crate) fn from_sorted_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(!parts.contains(&0));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(n)`; empty for `n = 0`.
    pub fn row(n: usize) -> Self {
        Partition::from_unsorted(vec![n])
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `|λ|`
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `ℓ(λ)`
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-indexed), or 0 past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// The parts padded with zeros to length `n` (truncating is never needed
    /// by callers, so `n < ℓ(λ)` is a logic error).
    pub fn padded(&self, n: usize) -> Vec<usize> {
        assert!(n >= self.len(), "cannot pad {self} to length {n}");
        let mut v = self.parts.clone();
        v.resize(n, 0);
        v
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let parts = (1..=width).map(|j| self.parts.iter().take_while(|&&x| x >= j).count()).collect();
        Partition { parts }
    }

    /// `dλ`, each part multiplied by `d`.
    pub fn scale(&self, d: usize) -> Partition {
        if d == 0 {
            return Partition::empty();
        }
        Partition { parts: self.parts.iter().map(|&x| x * d).collect() }
    }

    /// Whether the diagram of `self` contains the diagram of `other`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    /// Multiplicity `m_i` of each part size `i`, indexed by `i` (index 0 unused).
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.part(0) + 1];
        for &x in &self.parts {
            m[x] += 1;
        }
        m
    }

    /// Sign of any permutation with this cycle type, `(-1)^{|ρ|-ℓ(ρ)}`.
    pub fn sign(&self) -> i32 {
        if (self.size() - self.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Concatenate-and-sort union of the parts (the cycle type of a product
    /// of disjoint permutations, or the key of `p_ρ · p_σ`).
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.len() || j < other.len() {
            if j == other.len() || (i < self.len() && self.parts[i] >= other.parts[j]) {
                parts.push(self.parts[i]);
                i += 1;
            } else {
                parts.push(other.parts[j]);
                j += 1;
            }
        }
        Partition { parts }
    }

    /// Number of standard Young tableaux, `|μ|! / Π hooks`.
    pub fn hook_dimension(&self) -> BigUint {
        let conj = self.conjugate();
        let mut hooks = BigUint::one();
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                let hook = row - j + conj.parts[j] - i - 1;
                hooks *= hook as u64;
            }
        }
        factorial(self.size()) / hooks
    }

    /// `z_ρ = Π_i i^{m_i} m_i!`, the order of the centralizer of a permutation of cycle type ρ.
    pub fn centralizer_order(&self) -> BigUint {
        let mut z = BigUint::one();
        for (i, &m) in self.multiplicities().iter().enumerate().skip(1) {
            if m > 0 {
                z *= BigUint::from(i).pow(m as u32) * factorial(m);
            }
        }
        z
    }

    /// Comma-separated parts, the inverse of [`FromStr`].
    pub fn to_text(&self) -> String {
        self.parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, x| acc * x)
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_text())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|e| invalid(format!("bad partition part {t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_text())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Convenience constructor for literals in tests and examples. Panics on
/// malformed input.
#[macro_export]
macro_rules! partition {
    () => { $crate::partitions::Partition::empty() };
    ($($x:expr),+ $(,)?) => {
        $crate::partitions::Partition::new(vec![$($x),+]).expect("valid partition literal")
    };
}

/// All partitions of `n`, optionally with at most `max_length` parts.
///
/// Order is reverse-lexicographic: `(n)` first, `(1^n)` last.
pub fn partitions_of(n: usize, max_length: Option<usize>) -> Vec<Partition> {
    fn rec(remaining: usize, max_part: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition::from_sorted_unchecked(cur.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            // The remaining slots must be able to absorb what is left.
            if part * slots < remaining {
                break;
            }
            cur.push(part);
            rec(remaining - part, part, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, max_length.unwrap_or(n), &mut Vec::new(), &mut out);
    out
}

/// Shapes with exactly one SSYT of content `(k^p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum ExceptionalClass {
    /// `(pk)`
    FullRow,
    /// `(k^p)`
    Rectangle,
    /// `(a^{p-1})`
    NearRectangleEqual {
        a: usize,
    },
    /// `(b, c^{p-1})`, `b > c ≥ 1`
    RowOverRectangle {
        b: usize,
        c: usize,
    },
    /// `(b^{p-1}, c)`, `b > c ≥ 1`
    RectangleOverRow {
        b: usize,
        c: usize,
    },
    NonExceptional,
}

impl ExceptionalClass {
    pub fn is_exceptional(&self) -> bool {
        !matches!(self, ExceptionalClass::NonExceptional)
    }
}

/// Tags `λ ⊢ pk`, `ℓ(λ) ≤ p`, with its exceptional form; first match wins in
/// the order FullRow, Rectangle, NearRectangleEqual, RowOverRectangle,
/// RectangleOverRow.
pub fn classify_exceptional(lambda: &Partition, p: usize, k: usize) -> Result<ExceptionalClass> {
    if p == 0 {
        return Err(invalid("p must be positive"));
    }
    if lambda.size() != p * k {
        return Err(invalid(format!("|{lambda}| = {} but pk = {}", lambda.size(), p * k)));
    }
    if lambda.len() > p {
        return Err(invalid(format!("ℓ({lambda}) = {} exceeds p = {p}", lambda.len())));
    }
    let parts = lambda.parts();
    if parts.len() <= 1 {
        return Ok(ExceptionalClass::FullRow);
    }
    if parts.len() == p && parts.iter().all(|&x| x == k) {
        return Ok(ExceptionalClass::Rectangle);
    }
    if parts.len() == p - 1 && parts.iter().all(|&x| x == parts[0]) {
        return Ok(ExceptionalClass::NearRectangleEqual { a: parts[0] });
    }
    if parts.len() == p {
        let (b, c) = (parts[0], parts[1]);
        if b > c && parts[1..].iter().all(|&x| x == c) {
            return Ok(ExceptionalClass::RowOverRectangle { b, c });
        }
        let (b, c) = (parts[0], parts[p - 1]);
        if b > c && parts[..p - 1].iter().all(|&x| x == b) {
            return Ok(ExceptionalClass::RectangleOverRow { b, c });
        }
    }
    Ok(ExceptionalClass::NonExceptional)
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use proptest::prelude::*;

    fn brute_syt_count(shape: &Partition) -> u64 {
        // Count standard fillings by removing corners recursively.
        if shape.is_empty() {
            return 1;
        }
        let parts = shape.parts();
        let mut total = 0;
        for i in 0..parts.len() {
            if parts[i] > shape.part(i + 1) {
                let mut smaller = parts.to_vec();
                smaller[i] -= 1;
                total += brute_syt_count(&Partition::from_unsorted(smaller));
            }
        }
        total
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(partition![3, 2, 1].conjugate(), partition![3, 2, 1]);
        assert_eq!(partition![6].conjugate(), partition![1, 1, 1, 1, 1, 1]);
        assert_eq!(partition![4, 2].conjugate(), partition![2, 2, 1, 1]);
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn scale_examples() {
        assert_eq!(partition![3, 1].scale(2), partition![6, 2]);
        assert_eq!(partition![2, 2].scale(0), partition![]);
        assert_eq!(partition![31, 3, 2, 2, 2].scale(1), partition![31, 3, 2, 2, 2]);
    }

    #[test]
    fn hook_dimension_examples() {
        assert_eq!(partition![5].hook_dimension(), BigUint::from(1u32));
        assert_eq!(partition![1, 1, 1, 1].hook_dimension(), BigUint::from(1u32));
        assert_eq!(partition![2, 1].hook_dimension(), BigUint::from(2u32));
        assert_eq!(Partition::empty().hook_dimension(), BigUint::from(1u32));
        for n in 0..=8 {
            for mu in partitions_of(n, None) {
                assert_eq!(mu.hook_dimension(), BigUint::from(brute_syt_count(&mu)), "{mu}");
            }
        }
    }

    #[test]
    fn centralizer_examples() {
        assert_eq!(partition![1, 1, 1].centralizer_order(), BigUint::from(6u32));
        assert_eq!(partition![3].centralizer_order(), BigUint::from(3u32));
        assert_eq!(partition![2, 1].centralizer_order(), BigUint::from(2u32));
    }

    #[test]
    fn centralizer_by_brute_force_in_s4() {
        // Count permutations commuting with a representative of each class.
        let n = 4;
        let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
        for rho in partitions_of(n, None) {
            let mut rep = vec![0; n];
            let mut start = 0;
            for &len in rho.parts() {
                for i in 0..len {
                    rep[start + i] = start + (i + 1) % len;
                }
                start += len;
            }
            let count = perms.iter().filter(|s| (0..n).all(|i| s[rep[i]] == rep[s[i]])).count();
            assert_eq!(rho.centralizer_order(), BigUint::from(count), "{rho}");
        }
    }

    #[test]
    fn class_equation() {
        for n in 0..=9 {
            let total: BigUint = partitions_of(n, None).iter().map(|rho| factorial(n) / rho.centralizer_order()).sum();
            assert_eq!(total, factorial(n));
        }
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(partitions_of(0, None), vec![Partition::empty()]);
        let p4 = partitions_of(4, None);
        assert_eq!(p4.len(), 5);
        assert_eq!(
            p4,
            vec![partition![4], partition![3, 1], partition![2, 2], partition![2, 1, 1], partition![1, 1, 1, 1]]
        );
        assert_eq!(partitions_of(4, Some(2)), vec![partition![4], partition![3, 1], partition![2, 2]]);
        let counts: Vec<usize> = (0..=12).map(|n| partitions_of(n, None).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
    }

    #[test]
    fn hook_dimension_sum_of_squares() {
        for p in 0..=8 {
            let sum: BigUint = partitions_of(p, None).iter().map(|mu| mu.hook_dimension().pow(2)).sum();
            assert_eq!(sum, factorial(p));
        }
    }

    #[test]
    fn conjugation_invariants() {
        for n in 0..=12 {
            for lambda in partitions_of(n, None) {
                assert_eq!(lambda.conjugate().conjugate(), lambda);
                if n <= 10 {
                    assert_eq!(lambda.hook_dimension(), lambda.conjugate().hook_dimension());
                }
            }
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_exceptional(&partition![6], 3, 2).unwrap(), ExceptionalClass::FullRow);
        assert_eq!(classify_exceptional(&partition![2, 2, 2], 3, 2).unwrap(), ExceptionalClass::Rectangle);
        assert_eq!(classify_exceptional(&partition![3, 2, 1], 3, 2).unwrap(), ExceptionalClass::NonExceptional);
        assert_eq!(
            classify_exceptional(&partition![3, 3], 3, 2).unwrap(),
            ExceptionalClass::NearRectangleEqual { a: 3 }
        );
        assert_eq!(
            classify_exceptional(&partition![4, 1, 1], 3, 2).unwrap(),
            ExceptionalClass::RowOverRectangle { b: 4, c: 1 }
        );
        assert_eq!(
            classify_exceptional(&partition![5, 5, 5, 1], 4, 4).unwrap(),
            ExceptionalClass::RectangleOverRow { b: 5, c: 1 }
        );
        assert!(matches!(classify_exceptional(&partition![3, 2], 3, 2), Err(Error::InvalidInput(_))));
        assert!(matches!(classify_exceptional(&partition![3, 1, 1, 1], 3, 2), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!("3,2,1".parse::<Partition>().unwrap(), partition![3, 2, 1]);
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("(4, 2, 0)".parse::<Partition>().unwrap(), partition![4, 2]);
        assert!("2,3".parse::<Partition>().is_err());
        assert!("2,x".parse::<Partition>().is_err());
        assert_eq!(partition![31, 3, 2].to_text(), "31,3,2");
        assert_eq!(serde_json::to_string(&partition![2, 1]).unwrap(), "\"2,1\"");
    }

    #[test]
    fn union_is_sorted_concatenation() {
        assert_eq!(partition![3, 1].union(&partition![2, 2, 1]), partition![3, 2, 2, 1, 1]);
        assert_eq!(Partition::empty().union(&partition![2]), partition![2]);
    }

    proptest! {
        #[test]
        fn text_round_trip(parts in proptest::collection::vec(1usize..20, 0..8)) {
            let lambda = Partition::from_unsorted(parts);
            prop_assert_eq!(lambda.to_text().parse::<Partition>().unwrap(), lambda);
        }

        #[test]
        fn conjugate_preserves_size(parts in proptest::collection::vec(1usize..15, 0..10)) {
            let lambda = Partition::from_unsorted(parts);
            let c = lambda.conjugate();
            prop_assert_eq!(c.size(), lambda.size());
            prop_assert_eq!(c.len(), lambda.part(0));
        }
    }
}
