//! Permutations in one-line notation, plus containment witnesses.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A permutation of {1, …, n} in one-line notation.
///
/// `values[i]` is σ_{i+1}; all public APIs speak 1-based values, storage is a
/// plain vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    /// Build from one-line notation, checking that it is a bijection on {1..n}.
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} out of range 1..={n}"
                )));
            }
            if seen[v] {
                return Err(Error::InvalidPermutation(format!("value {v} repeated")));
            }
            seen[v] = true;
        }
        Ok(Self { values })
    }

    /// The identity permutation of length n.
    pub fn identity(n: usize) -> Self {
        Self {
            values: (1..=n).collect(),
        }
    }

    /// Relabel an arbitrary sequence of distinct integers by rank.
    ///
    /// `[4, 1, 5, 2, 6]` becomes `31425`.
    pub fn of_ranks(seq: &[usize]) -> Result<Self> {
        let mut order: Vec<usize> = (0..seq.len()).collect();
        order.sort_by_key(|&i| seq[i]);
        for w in order.windows(2) {
            if seq[w[0]] == seq[w[1]] {
                return Err(Error::InvalidPermutation(format!(
                    "duplicate entry {}",
                    seq[w[0]]
                )));
            }
        }
        let mut values = vec![0; seq.len()];
        for (rank, &i) in order.iter().enumerate() {
            values[i] = rank + 1;
        }
        Ok(Self { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// σ_i for 1-based position i.
    pub fn at(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.values.len()];
        for (i, &v) in self.values.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Self { values: inv }
    }

    /// 1-based position of a value.
    pub fn position_of(&self, value: usize) -> usize {
        self.values.iter().position(|&v| v == value).unwrap() + 1
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.values
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]", self)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Whitespace-separated one-line notation: `"4 1 5 2 6 3"`.
    fn from_str(s: &str) -> Result<Self> {
        let values: Vec<usize> = s
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|e| Error::Format(format!("bad token {t:?}: {e}")))
            })
            .collect::<Result<_>>()?;
        Self::new(values)
    }
}

/// A containment witness: strictly increasing 1-based positions into a text
/// permutation selecting a subsequence order-isomorphic to a pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub positions: Vec<usize>,
}

impl Embedding {
    /// Check that this embedding witnesses `pattern` inside `text`.
    ///
    /// Validates strict monotonicity of positions and order-isomorphism of the
    /// selected subsequence; O(k log k).
    pub fn validate(&self, text: &Permutation, pattern: &Permutation) -> Result<()> {
        if self.positions.len() != pattern.len() {
            return Err(Error::Precondition(format!(
                "embedding has {} positions, pattern length {}",
                self.positions.len(),
                pattern.len()
            )));
        }
        for w in self.positions.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::Precondition(format!(
                    "positions not strictly increasing at {} >= {}",
                    w[0], w[1]
                )));
            }
        }
        if let Some(&last) = self.positions.last() {
            if last > text.len() || self.positions[0] == 0 {
                return Err(Error::Precondition("position out of range".into()));
            }
        }
        let selected: Vec<usize> = self.positions.iter().map(|&p| text.at(p)).collect();
        let iso = Permutation::of_ranks(&selected)?;
        if iso.values() != pattern.values() {
            return Err(Error::Precondition(format!(
                "selected subsequence has order type {iso}, want {pattern}"
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0]).is_err());
        assert!(Permutation::new(vec![2, 3]).is_err());
        assert!(Permutation::new(vec![]).is_ok());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(p("3 1 2").inverse(), p("2 3 1"));
        assert_eq!(p("1 2 3").inverse(), p("1 2 3"));
        assert_eq!(p("4 1 5 2 6 3").inverse().to_string(), "2 4 6 1 3 5");
    }

    #[test]
    fn of_ranks_relabels() {
        assert_eq!(
            Permutation::of_ranks(&[4, 1, 5, 2, 6]).unwrap(),
            p("3 1 4 2 5")
        );
        assert!(Permutation::of_ranks(&[2, 2]).is_err());
    }

    #[test]
    fn display_parse_roundtrip() {
        let q = p("4 1 5 2 6 3");
        assert_eq!(q.to_string().parse::<Permutation>().unwrap(), q);
    }

    #[test]
    fn embedding_validation() {
        let text = p("1 4 8 7 3 5 2 6");
        let emb = Embedding {
            positions: vec![3, 4, 5],
        };
        emb.validate(&text, &p("3 2 1")).unwrap();
        assert!(emb.validate(&text, &p("1 2 3")).is_err());
        let bad = Embedding {
            positions: vec![4, 3, 5],
        };
        assert!(bad.validate(&text, &p("3 2 1")).is_err());
    }
}
