//! Seaweed meanders `M(a_1,...,a_p | b_1,...,b_q)` built from proper rainbow
//! blocks, the gcd component formulas for bi-rainbows, and the equivalent
//! Cartesian billiard on the staircase domain of the seaweed matrix algebra.

use std::fmt;
use std::str::FromStr;

use meander::ClosedMeander;
use thiserror::Error;

pub mod billiard;

pub use billiard::{billiard_components, billiard_from_seaweed, Billiard, Trajectory};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeaweedError {
    #[error("rainbow size sums differ: {upper} (upper) vs {lower} (lower)")]
    SumMismatch { upper: usize, lower: usize },
    #[error("rainbow sizes must be positive")]
    ZeroBlock,
    #[error("empty composition")]
    Empty,
    #[error("invalid token `{0}` in composition")]
    InvalidToken(String),
    #[error("gcd component formulas exist only for 1..=3 upper blocks, got {0}")]
    Unsupported(usize),
    #[error("billiard trajectory left the cell domain at {0:?}")]
    MalformedDomain((i64, i64)),
}

/// Proper rainbow sizes, upper then lower, left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeaweedComposition {
    alpha: Vec<usize>,
    beta: Vec<usize>,
}

impl SeaweedComposition {
    pub fn new(alpha: Vec<usize>, beta: Vec<usize>) -> Result<Self, SeaweedError> {
        if alpha.is_empty() || beta.is_empty() {
            return Err(SeaweedError::Empty);
        }
        if alpha.iter().chain(beta.iter()).any(|&a| a == 0) {
            return Err(SeaweedError::ZeroBlock);
        }
        let up: usize = alpha.iter().sum();
        let lo: usize = beta.iter().sum();
        if up != lo {
            return Err(SeaweedError::SumMismatch {
                upper: up,
                lower: lo,
            });
        }
        Ok(SeaweedComposition { alpha, beta })
    }

    /// Bi-rainbow: a single lower rainbow spanning everything.
    pub fn birainbow(alpha: Vec<usize>) -> Result<Self, SeaweedError> {
        let total: usize = alpha.iter().sum();
        SeaweedComposition::new(alpha, vec![total])
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    pub fn beta(&self) -> &[usize] {
        &self.beta
    }

    /// Half the vertex count of the induced meander.
    pub fn half_size(&self) -> usize {
        self.alpha.iter().sum()
    }
}

impl fmt::Display for SeaweedComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{}|{}", join(&self.alpha), join(&self.beta))
    }
}

impl FromStr for SeaweedComposition {
    type Err = SeaweedError;

    /// Parses `2,2|1,3`; without a bar the input is read as a bi-rainbow.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse_side = |side: &str| -> Result<Vec<usize>, SeaweedError> {
            let side = side.trim();
            if side.is_empty() {
                return Err(SeaweedError::Empty);
            }
            side.split(',')
                .map(|tok| {
                    let tok = tok.trim();
                    tok.parse::<usize>()
                        .map_err(|_| SeaweedError::InvalidToken(tok.to_string()))
                })
                .collect()
        };
        match s.split_once('|') {
            Some((a, b)) => SeaweedComposition::new(parse_side(a)?, parse_side(b)?),
            None => SeaweedComposition::birainbow(parse_side(s)?),
        }
    }
}

fn rainbow_blocks(sizes: &[usize]) -> Vec<(usize, usize)> {
    let mut arches = Vec::new();
    let mut offset = 0;
    for &size in sizes {
        for k in 1..=size {
            arches.push((offset + k, offset + 2 * size + 1 - k));
        }
        offset += 2 * size;
    }
    arches
}

/// The closed meander of a seaweed composition: concatenated proper rainbows
/// above and below, no nesting across blocks.
pub fn seaweed_meander(sc: &SeaweedComposition) -> ClosedMeander {
    let n = 2 * sc.half_size();
    ClosedMeander::new(n, rainbow_blocks(&sc.alpha), rainbow_blocks(&sc.beta))
        .expect("rainbow blocks are a noncrossing perfect matching")
}

/// Closed-form component count of a bi-rainbow with at most three blocks.
pub fn birainbow_formula(alpha: &[usize]) -> Result<usize, SeaweedError> {
    if alpha.contains(&0) {
        return Err(SeaweedError::ZeroBlock);
    }
    match alpha {
        [] => Err(SeaweedError::Empty),
        [a] => Ok(*a),
        [a, b] => Ok(gcd(*a, *b)),
        [a, b, c] => Ok(gcd(a + b, b + c)),
        _ => Err(SeaweedError::Unsupported(alpha.len())),
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
