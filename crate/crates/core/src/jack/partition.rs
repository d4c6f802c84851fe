use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Error, Result};

/// An integer partition `λ_1 ≥ λ_2 ≥ ... ≥ λ_l > 0`.
///
/// The total order implemented by `Ord` sorts by weight and then
/// reverse-lexicographically, so within a fixed weight a partition precedes
/// every partition it dominates. This is the basis order used by every
/// matrix in the crate; the zero partition is always first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds a partition, dropping trailing zeros.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return domain(format!("parts {parts:?} are not weakly decreasing"));
        }
        if parts.contains(&0) {
            return domain(format!("parts {parts:?} contain an interior zero"));
        }
        Ok(Self(parts))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|λ|`.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `λ_i` with 1-based `i`, zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// `λ'_i = #{j : λ_j ≥ i}`.
    pub fn conjugate(&self) -> Self {
        let first = self.0.first().copied().unwrap_or(0);
        Self((1..=first).map(|i| self.0.iter().filter(|&&p| p >= i).count() as u32).collect())
    }

    /// `B(λ) = Σ (i-1) λ_i`.
    pub fn b_stat(&self) -> u64 {
        self.0.iter().enumerate().map(|(i, &p)| i as u64 * p as u64).sum()
    }

    /// `λ_(i)`: remove one box from row `i` (1-based). `None` when the
    /// result is not a partition or the row is empty. Removing the last box
    /// of the final row shortens the partition.
    pub fn remove_box(&self, i: usize) -> Option<Self> {
        if i == 0 || i > self.0.len() {
            return None;
        }
        let mut parts = self.0.clone();
        parts[i - 1] -= 1;
        if i < parts.len() && parts[i - 1] < parts[i] {
            return None;
        }
        if parts[i - 1] == 0 {
            parts.truncate(i - 1);
        }
        Some(Self(parts))
    }

    /// Dominance order: equal weight and every partial sum of `self` is at
    /// least the corresponding partial sum of `other`.
    pub fn dominates(&self, other: &Self) -> bool {
        if self.weight() != other.weight() {
            return false;
        }
        let (mut a, mut b) = (0u32, 0u32);
        for i in 0..self.len().max(other.len()) {
            a += self.part(i + 1);
            b += other.part(i + 1);
            if a < b {
                return false;
            }
        }
        true
    }

    /// `κ_i ≤ λ_i` for every `i`.
    pub fn is_contained_in(&self, top: &Self) -> bool {
        self.len() <= top.len() && self.0.iter().zip(&top.0).all(|(a, b)| a <= b)
    }

    /// Multiplicities of each distinct part value.
    pub fn multiplicities(&self) -> Vec<u32> {
        let mut out = Vec::new();
        let mut iter = self.0.iter().peekable();
        while let Some(&v) = iter.next() {
            let mut m = 1;
            while iter.peek() == Some(&&v) {
                iter.next();
                m += 1;
            }
            out.push(m);
        }
        out
    }

    /// Exponent vector of length `n`, zero padded.
    pub fn padded(&self, n: usize) -> Vec<u32> {
        let mut e = self.0.clone();
        e.resize(n.max(e.len()), 0);
        e
    }

    /// All partitions of `weight` with at most `max_len` parts, in basis
    /// order (dominance-maximal first).
    pub fn all_of_weight(weight: u32, max_len: usize) -> Vec<Self> {
        fn rec(rem: u32, cap: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            if slots == 0 {
                return;
            }
            for p in (1..=cap.min(rem)).rev() {
                cur.push(p);
                rec(rem - p, p, slots - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(weight, weight, max_len, &mut Vec::new(), &mut out);
        out
    }

    /// Every partition contained in `top`, in basis order.
    pub fn down_set(top: &Self) -> Vec<Self> {
        fn rec(top: &[u32], i: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            out.push(Partition(cur.clone()));
            if i == top.len() {
                return;
            }
            for p in 1..=cap.min(top[i]) {
                cur.push(p);
                rec(top, i + 1, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(&top.0, 0, u32::MAX, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// Every partition of weight at most `max_weight` with at most
    /// `max_len` parts, in basis order.
    pub fn up_to_weight(max_weight: u32, max_len: usize) -> Vec<Self> {
        (0..=max_weight)
            .flat_map(|w| Self::all_of_weight(w, max_len))
            .collect()
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `2,1`, `(2,1)`, `()` or the empty string.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if inner.is_empty() {
            return Ok(Self::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Domain(format!("bad partition literal {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

impl TryFrom<&[u32]> for Partition {
    type Error = Error;

    fn try_from(parts: &[u32]) -> Result<Self> {
        Self::new(parts.to_vec())
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for building partitions in tests and examples.
///
/// ```
/// use intertwine::part;
/// assert_eq!(part![3, 1].conjugate(), part![2, 1, 1]);
/// assert!(part![].is_empty());
/// ```
#[macro_export]
macro_rules! part {
    () => { $crate::jack::Partition::empty() };
    ($($p:expr),+ $(,)?) => {
        $crate::jack::Partition::new(vec![$($p),+]).expect("valid partition literal")
    };
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Column counts read straight off the Young diagram.
    fn conjugate_by_diagram(lambda: &Partition) -> Vec<u32> {
        let mut cols = Vec::new();
        for &len in lambda.parts() {
            for col in 0..len as usize {
                if cols.len() <= col {
                    cols.push(0);
                }
                cols[col] += 1;
            }
        }
        cols
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(part![2, 1].conjugate(), part![2, 1]);
        assert_eq!(part![].conjugate(), part![]);
        assert_eq!(part![3, 1].conjugate(), part![2, 1, 1]);
        assert_eq!(part![3, 1].conjugate().parts(), conjugate_by_diagram(&part![3, 1]));
    }

    #[test]
    fn b_stat_examples() {
        assert_eq!(part![].b_stat(), 0);
        assert_eq!(part![3, 1].b_stat(), 1);
        assert_eq!(part![2, 2, 1].b_stat(), 4);
        // Σ C(λ'_i, 2) with λ' = (3, 2): 3 + 1
        assert_eq!(part![2, 2, 1].conjugate(), part![3, 2]);
    }

    #[test]
    fn b_stat_duality_up_to_weight_twelve() {
        for lambda in Partition::up_to_weight(12, 12) {
            let dual: u64 = lambda
                .conjugate()
                .parts()
                .iter()
                .map(|&c| c as u64 * (c as u64).saturating_sub(1) / 2)
                .sum();
            assert_eq!(lambda.b_stat(), dual, "{lambda}");
        }
    }

    #[test]
    fn remove_box_rules() {
        assert_eq!(part![2, 2].remove_box(1), None);
        assert_eq!(part![2, 2].remove_box(2), Some(part![2, 1]));
        assert_eq!(part![2, 1].remove_box(2), Some(part![2]));
        assert_eq!(part![1].remove_box(1), Some(part![]));
        assert_eq!(part![3, 1].remove_box(3), None);
    }

    #[test]
    fn rejects_increasing_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(Partition::new(vec![2, 1, 0, 0]).unwrap(), part![2, 1]);
        assert!("(1,3)".parse::<Partition>().is_err());
        assert_eq!("(3,1)".parse::<Partition>().unwrap(), part![3, 1]);
        assert_eq!("()".parse::<Partition>().unwrap(), part![]);
    }

    #[test]
    fn basis_order() {
        let w4 = Partition::all_of_weight(4, 4);
        assert_eq!(w4, vec![part![4], part![3, 1], part![2, 2], part![2, 1, 1], part![1, 1, 1, 1]]);
        assert!(w4.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(Partition::all_of_weight(4, 2).len(), 3);
        let down = Partition::down_set(&part![2, 1]);
        assert_eq!(down, vec![part![], part![1], part![2], part![1, 1], part![2, 1]]);
    }

    #[test]
    fn dominance() {
        assert!(part![3, 1].dominates(&part![2, 2]));
        assert!(part![2, 2].dominates(&part![2, 1, 1]));
        assert!(!part![2, 2].dominates(&part![3, 1]));
        assert!(!part![3].dominates(&part![2]));
    }

    fn arb_partition() -> impl Strategy<Value = Partition> {
        prop::collection::vec(1u32..7, 0..6).prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            Partition::new(v).unwrap()
        })
    }

    proptest! {
        #[test]
        fn conjugate_is_an_involution(lambda in arb_partition()) {
            prop_assert_eq!(lambda.conjugate().conjugate(), lambda.clone());
            prop_assert_eq!(lambda.conjugate().weight(), lambda.weight());
            let conj = lambda.conjugate();
            prop_assert_eq!(conj.parts(), &conjugate_by_diagram(&lambda)[..]);
        }

        #[test]
        fn dominance_respects_basis_order(a in arb_partition(), b in arb_partition()) {
            if a.dominates(&b) {
                prop_assert!(a <= b);
            }
        }

        #[test]
        fn display_round_trip(lambda in arb_partition()) {
            prop_assert_eq!(lambda.to_string().parse::<Partition>().unwrap(), lambda);
        }
    }
}
