//! Permutations in one-line notation, boundary-order style: `image[i]` is the
//! label found at road position `i+1`.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::MeanderError;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its one-line image `sigma(1), ..., sigma(n)`.
    pub fn from_image(image: Vec<usize>) -> Result<Self, MeanderError> {
        if image.is_empty() {
            return Err(MeanderError::Empty);
        }
        let n = image.len();
        let mut seen = vec![false; n + 1];
        for &v in &image {
            if v == 0 || v > n {
                return Err(MeanderError::NotABijection {
                    n,
                    reason: format!("value {v} out of range 1..={n}"),
                });
            }
            if seen[v] {
                return Err(MeanderError::NotABijection {
                    n,
                    reason: format!("value {v} repeated"),
                });
            }
            seen[v] = true;
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// sigma(i) for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.image[i - 1]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// Positions of each label: `inverse()[j-1]` is sigma^{-1}(j).
    pub fn inverse_image(&self) -> Vec<usize> {
        let mut inv = vec![0; self.image.len()];
        for (pos, &label) in self.image.iter().enumerate() {
            inv[label - 1] = pos + 1;
        }
        inv
    }

    pub fn inverse(&self) -> Permutation {
        Permutation {
            image: self.inverse_image(),
        }
    }

    /// sigma(1) = 1 and sigma(n) = n.
    pub fn is_dissipative(&self) -> bool {
        let n = self.n();
        self.image[0] == 1 && self.image[n - 1] == n
    }

    /// Conjugation by the reversal kappa(j) = n+1-j.
    pub fn reversal_conjugate(&self) -> Permutation {
        let n = self.n();
        let mut image = vec![0; n];
        for i in 1..=n {
            image[i - 1] = n + 1 - self.apply(n + 1 - i);
        }
        Permutation { image }
    }

    /// Orbit under the group generated by inversion and reversal conjugation,
    /// sorted lexicographically.
    pub fn symmetry_orbit(&self) -> Vec<Permutation> {
        let mut orbit = vec![self.clone()];
        loop {
            let mut next = Vec::new();
            for p in &orbit {
                for q in [p.inverse(), p.reversal_conjugate()] {
                    if !orbit.contains(&q) && !next.contains(&q) {
                        next.push(q);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            orbit.extend(next);
        }
        orbit.sort();
        orbit
    }

    /// Lexicographic minimum of the symmetry orbit.
    pub fn canonical(&self) -> Permutation {
        self.symmetry_orbit().into_iter().next().unwrap()
    }

    pub fn morse_vector(&self) -> MorseVector {
        let inv = self.inverse_image();
        let n = self.n();
        let mut indices = Vec::with_capacity(n);
        let mut acc: i64 = 0;
        indices.push(0);
        for j in 1..n {
            // term for j: (-1)^{j+1} sign(inv(j+1) - inv(j)), 1-based j
            let sign = if inv[j] > inv[j - 1] { 1 } else { -1 };
            let parity = if j % 2 == 1 { 1 } else { -1 };
            acc += parity * sign;
            indices.push(acc);
        }
        MorseVector { indices }
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = MeanderError;
    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        Permutation::from_image(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.image
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.image.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = MeanderError;

    /// Parses one-line comma notation, e.g. `1,4,3,2,5`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(MeanderError::Empty);
        }
        let mut image = Vec::new();
        for tok in trimmed.split(',') {
            let tok = tok.trim();
            image.push(
                tok.parse::<usize>()
                    .map_err(|_| MeanderError::InvalidToken(tok.to_string()))?,
            );
        }
        Permutation::from_image(image)
    }
}

/// Partial alternating winding sums; entry `k` is the Morse index of the
/// k-th equilibrium when the permutation is Sturm.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorseVector {
    indices: Vec<i64>,
}

impl MorseVector {
    pub fn indices(&self) -> &[i64] {
        &self.indices
    }

    pub fn is_nonnegative(&self) -> bool {
        self.indices.iter().all(|&i| i >= 0)
    }
}

pub fn parse_permutation(text: &str) -> Result<Permutation, MeanderError> {
    text.parse()
}
