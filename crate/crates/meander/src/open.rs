//! Open meanders: arch systems of a permutation read along the road, and the
//! Sturm predicate built from them.

use crate::perm::Permutation;
use crate::MeanderError;

/// Which arch family a crossing pair belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArchFamily {
    Upper,
    Lower,
}

/// An open meander: odd crossing count, alternating upper/lower arches.
///
/// Arches are stored by road positions as sorted pairs `(a, b)`, `a < b`,
/// each family sorted for canonical equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenMeander {
    perm: Permutation,
    upper: Vec<(usize, usize)>,
    lower: Vec<(usize, usize)>,
}

impl OpenMeander {
    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn n(&self) -> usize {
        self.perm.n()
    }

    pub fn upper(&self) -> &[(usize, usize)] {
        &self.upper
    }

    pub fn lower(&self) -> &[(usize, usize)] {
        &self.lower
    }
}

/// A pair of arches that cross.
pub type CrossingPair = ((usize, usize), (usize, usize));

/// An arch family: position pairs `(a, b)` with `a < b`, sorted.
pub type ArchList = Vec<(usize, usize)>;

/// Quadratic crossing check: returns the first offending pair of arches.
pub fn find_crossing_pairwise(arches: &[(usize, usize)]) -> Option<CrossingPair> {
    for (i, &(a, b)) in arches.iter().enumerate() {
        for &(c, d) in &arches[i + 1..] {
            if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                return Some(((a, b), (c, d)));
            }
        }
    }
    None
}

/// Stack-based linear crossing check over a partial matching.
pub fn is_noncrossing_stack(arches: &[(usize, usize)]) -> bool {
    let n = arches.iter().map(|&(_, b)| b).max().unwrap_or(0);
    let mut open_at = vec![0usize; n + 1]; // position -> partner it opens toward
    let mut close_at = vec![false; n + 1];
    for &(a, b) in arches {
        open_at[a] = b;
        close_at[b] = true;
    }
    let mut stack: Vec<usize> = Vec::new();
    for p in 1..=n {
        if close_at[p] {
            match stack.pop() {
                Some(expected) if expected == p => {}
                _ => return false,
            }
        }
        if open_at[p] != 0 {
            stack.push(open_at[p]);
        }
    }
    stack.is_empty()
}

/// Builds the candidate arch families of `sigma` without the crossing check.
///
/// The arch between river labels `j, j+1` joins road positions
/// `sigma^{-1}(j)` and `sigma^{-1}(j+1)`; it is upper for odd `j`.
pub fn candidate_arches(sigma: &Permutation) -> (ArchList, ArchList) {
    let inv = sigma.inverse_image();
    let n = sigma.n();
    let mut upper = Vec::with_capacity(n / 2);
    let mut lower = Vec::with_capacity(n / 2);
    for j in 1..n {
        let a = inv[j - 1];
        let b = inv[j];
        let pair = (a.min(b), a.max(b));
        if j % 2 == 1 {
            upper.push(pair);
        } else {
            lower.push(pair);
        }
    }
    upper.sort_unstable();
    lower.sort_unstable();
    (upper, lower)
}

/// Arch-diagram construction; fails on even order or crossing arches.
pub fn open_meander_arches(sigma: &Permutation) -> Result<OpenMeander, MeanderError> {
    let n = sigma.n();
    if n.is_multiple_of(2) {
        return Err(MeanderError::ParityViolation { n });
    }
    let (upper, lower) = candidate_arches(sigma);
    for (family, arches) in [(ArchFamily::Upper, &upper), (ArchFamily::Lower, &lower)] {
        if let Some((x, y)) = find_crossing_pairwise(arches) {
            let _ = family;
            return Err(MeanderError::ArchCrossing {
                first: x,
                second: y,
            });
        }
    }
    Ok(OpenMeander {
        perm: sigma.clone(),
        upper,
        lower,
    })
}

pub fn is_meander(sigma: &Permutation) -> bool {
    open_meander_arches(sigma).is_ok()
}

/// Dissipative Morse meander predicate.
pub fn is_sturm(sigma: &Permutation) -> bool {
    is_meander(sigma) && sigma.is_dissipative() && sigma.morse_vector().is_nonnegative()
}
