use std::fmt;

use serde::{Deserialize, Serialize};

use super::SymbolicError;

/// Highest level whose code fits in a `u64`.
pub const MAX_LEVEL: u32 = 63;

/// An eventually periodic infinite binary word `prefix · period^∞`.
///
/// Stored in normal form: the period is primitive and the prefix is as short
/// as possible, so derived equality is equality of infinite words.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawWord", into = "RawWord")]
pub struct BranchWord {
    prefix: Vec<bool>,
    period: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct RawWord {
    prefix: String,
    period: String,
}

impl TryFrom<RawWord> for BranchWord {
    type Error = SymbolicError;

    fn try_from(raw: RawWord) -> Result<Self, Self::Error> {
        BranchWord::new(&raw.prefix, &raw.period)
    }
}

impl From<BranchWord> for RawWord {
    fn from(w: BranchWord) -> RawWord {
        let s = |bits: &[bool]| bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
        RawWord {
            prefix: s(&w.prefix),
            period: s(&w.period),
        }
    }
}

fn parse_bits(s: &str) -> Result<Vec<bool>, SymbolicError> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(SymbolicError::InvalidWord(format!("unexpected character {c:?} in {s:?}"))),
        })
        .collect()
}

impl BranchWord {
    pub fn new(prefix: &str, period: &str) -> Result<BranchWord, SymbolicError> {
        let prefix = parse_bits(prefix)?;
        let period = parse_bits(period)?;
        if period.is_empty() {
            return Err(SymbolicError::InvalidWord("period must be nonempty".into()));
        }
        Ok(BranchWord::normalize(prefix, period))
    }

    fn normalize(mut prefix: Vec<bool>, mut period: Vec<bool>) -> BranchWord {
        let len = period.len();
        if let Some(d) = (1..=len)
            .find(|&d| len.is_multiple_of(d) && (d..len).all(|i| period[i] == period[i - d]))
        {
            period.truncate(d);
        }
        while prefix.last().is_some_and(|&b| b == *period.last().unwrap()) {
            prefix.pop();
            period.rotate_right(1);
        }
        BranchWord { prefix, period }
    }

    /// Letter at position `i` (0-based).
    pub fn bit(&self, i: usize) -> bool {
        match self.prefix.get(i) {
            Some(&b) => b,
            None => self.period[(i - self.prefix.len()) % self.period.len()],
        }
    }

    /// Length of the longest common prefix; `None` when the words are equal.
    pub fn common_prefix_len(&self, other: &BranchWord) -> Option<usize> {
        if self == other {
            return None;
        }
        let (p, q) = (self.period.len(), other.period.len());
        let bound = self.prefix.len().max(other.prefix.len()) + p * q;
        (0..bound).find(|&i| self.bit(i) != other.bit(i))
    }

    /// `code(w↾ℓ) = 2^ℓ + value(w↾ℓ)`, first letter most significant.
    pub fn code_at(&self, level: u32) -> Option<u64> {
        if level == 0 || level > MAX_LEVEL {
            return None;
        }
        let value = (0..level as usize).fold(0u64, |acc, i| acc << 1 | self.bit(i) as u64);
        Some((1u64 << level) + value)
    }

    /// Members of the branch set in increasing order, as far as `u64` reaches.
    pub fn elements(&self) -> impl Iterator<Item = u64> + '_ {
        (1..=MAX_LEVEL).map(move |l| self.code_at(l).unwrap())
    }

    /// Whether `n = code(w↾ℓ)` for some `ℓ ≥ 1`.
    pub fn contains(&self, n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let level = 63 - n.leading_zeros();
        self.code_at(level) == Some(n)
    }
}

/// Level of a natural number: `⌊log₂ n⌋`, for `n ≥ 2`.
pub fn level_of(n: u64) -> Option<u32> {
    (n >= 2).then(|| 63 - n.leading_zeros())
}

impl fmt::Debug for BranchWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |bits: &[bool]| bits.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>();
        write!(f, "{}({})", s(&self.prefix), s(&self.period))
    }
}

impl fmt::Display for BranchWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(prefix: &str, period: &str) -> BranchWord {
        BranchWord::new(prefix, period).unwrap()
    }

    #[test]
    fn normal_form() {
        assert_eq!(w("0", "10"), w("", "01"));
        assert_eq!(w("", "0101"), w("", "01"));
        assert_eq!(w("111", "1"), w("", "1"));
        assert_ne!(w("1", "0"), w("", "0"));
        assert!(BranchWord::new("", "").is_err());
        assert!(BranchWord::new("2", "0").is_err());
    }

    #[test]
    fn codes() {
        let zeros = w("", "0");
        let first: Vec<u64> = zeros.elements().take(10).collect();
        assert_eq!(first, vec![2, 4, 8, 16, 32, 64, 128, 256, 512, 1024]);
        let alt = w("", "01");
        assert_eq!(alt.code_at(2), Some(5));
        assert!(alt.contains(5));
        assert!(!alt.contains(6));
        assert!(!alt.contains(1));
    }

    #[test]
    fn common_prefix() {
        assert_eq!(w("", "0").common_prefix_len(&w("", "1")), Some(0));
        assert_eq!(w("", "01").common_prefix_len(&w("0", "1")), Some(2));
        assert_eq!(w("", "01").common_prefix_len(&w("0", "10")), None);
    }

    fn word_strategy() -> impl Strategy<Value = (String, String)> {
        ("[01]{0,4}", "[01]{1,4}")
    }

    proptest! {
        #[test]
        fn normalization_preserves_letters((p, q) in word_strategy()) {
            let word = BranchWord::new(&p, &q).unwrap();
            let raw: Vec<char> = p.chars().chain(q.chars().cycle().take(40)).collect();
            for (i, &c) in raw.iter().enumerate().take(40) {
                prop_assert_eq!(word.bit(i), c == '1');
            }
        }

        #[test]
        fn equality_matches_letters((p1, q1) in word_strategy(), (p2, q2) in word_strategy()) {
            let a = BranchWord::new(&p1, &q1).unwrap();
            let b = BranchWord::new(&p2, &q2).unwrap();
            let agree = (0..64).all(|i| a.bit(i) == b.bit(i));
            prop_assert_eq!(a == b, agree);
            if let Some(l) = a.common_prefix_len(&b) {
                prop_assert!((0..l).all(|i| a.bit(i) == b.bit(i)));
                prop_assert_ne!(a.bit(l), b.bit(l));
            }
        }
    }
}
