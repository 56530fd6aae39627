//! Closed meanders: two noncrossing perfect matchings over a common vertex
//! line, component counting, the closing rule for dissipative open meanders,
//! and the doubling construction onto a lower rainbow.

use serde::{Deserialize, Serialize};

use crate::open::{find_crossing_pairwise, OpenMeander};
use crate::MeanderError;

/// Two noncrossing perfect matchings of `1..=n`, `n` even.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawClosedMeander", into = "RawClosedMeander")]
pub struct ClosedMeander {
    n: usize,
    upper: Vec<(usize, usize)>,
    lower: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct RawClosedMeander {
    n: usize,
    upper: Vec<[usize; 2]>,
    lower: Vec<[usize; 2]>,
}

impl TryFrom<RawClosedMeander> for ClosedMeander {
    type Error = MeanderError;
    fn try_from(raw: RawClosedMeander) -> Result<Self, Self::Error> {
        let conv = |v: Vec<[usize; 2]>| v.into_iter().map(|[a, b]| (a, b)).collect::<Vec<_>>();
        ClosedMeander::new(raw.n, conv(raw.upper), conv(raw.lower))
    }
}

impl From<ClosedMeander> for RawClosedMeander {
    fn from(m: ClosedMeander) -> Self {
        let conv = |v: Vec<(usize, usize)>| v.into_iter().map(|(a, b)| [a, b]).collect::<Vec<_>>();
        RawClosedMeander {
            n: m.n,
            upper: conv(m.upper),
            lower: conv(m.lower),
        }
    }
}

impl ClosedMeander {
    /// Validates and canonicalizes (pairs sorted, families sorted).
    pub fn new(
        n: usize,
        upper: Vec<(usize, usize)>,
        lower: Vec<(usize, usize)>,
    ) -> Result<Self, MeanderError> {
        if n == 0 || n % 2 == 1 {
            return Err(MeanderError::ParityViolation { n });
        }
        let canon = |arches: Vec<(usize, usize)>, side: &str| -> Result<Vec<_>, MeanderError> {
            let mut covered = vec![false; n + 1];
            let mut out = Vec::with_capacity(n / 2);
            for (a, b) in arches {
                let (a, b) = (a.min(b), a.max(b));
                if a == 0 || b > n || a == b {
                    return Err(MeanderError::NotAMatching {
                        reason: format!("{side} arch ({a},{b}) out of range 1..={n}"),
                    });
                }
                for v in [a, b] {
                    if covered[v] {
                        return Err(MeanderError::NotAMatching {
                            reason: format!("{side} vertex {v} covered twice"),
                        });
                    }
                    covered[v] = true;
                }
                out.push((a, b));
            }
            if let Some(v) = (1..=n).find(|&v| !covered[v]) {
                return Err(MeanderError::NotAMatching {
                    reason: format!("{side} vertex {v} uncovered"),
                });
            }
            out.sort_unstable();
            if let Some((x, y)) = find_crossing_pairwise(&out) {
                return Err(MeanderError::ArchCrossing {
                    first: x,
                    second: y,
                });
            }
            Ok(out)
        };
        Ok(ClosedMeander {
            n,
            upper: canon(upper, "upper")?,
            lower: canon(lower, "lower")?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn upper(&self) -> &[(usize, usize)] {
        &self.upper
    }

    pub fn lower(&self) -> &[(usize, usize)] {
        &self.lower
    }

    fn partner_table(arches: &[(usize, usize)], n: usize) -> Vec<usize> {
        let mut partner = vec![0; n + 1];
        for &(a, b) in arches {
            partner[a] = b;
            partner[b] = a;
        }
        partner
    }

    /// Number of closed curves: cycles of the alternating upper/lower walk.
    pub fn count_components(&self) -> usize {
        let up = Self::partner_table(&self.upper, self.n);
        let lo = Self::partner_table(&self.lower, self.n);
        let mut visited = vec![false; self.n + 1];
        let mut components = 0;
        for start in 1..=self.n {
            if visited[start] {
                continue;
            }
            components += 1;
            let mut v = start;
            loop {
                visited[v] = true;
                let u = up[v];
                visited[u] = true;
                v = lo[u];
                if v == start {
                    break;
                }
            }
        }
        components
    }
}

/// Closes a dissipative open meander into a single closed Jordan curve.
///
/// Vertex 1 is deleted, the upper arch out of it is replaced by a new upper
/// arch from the old position of label 2 to the right end, and positions
/// `2..=n` are relabeled to `1..=n-1`.
pub fn close_open_meander(om: &OpenMeander) -> Result<ClosedMeander, MeanderError> {
    if !om.perm().is_dissipative() {
        return Err(MeanderError::NotDissipative);
    }
    let n = om.n();
    if n < 3 {
        return Err(MeanderError::ParityViolation { n });
    }
    let pos2 = om.perm().inverse_image()[1]; // position of label 2
    let mut upper: Vec<(usize, usize)> = om
        .upper()
        .iter()
        .filter(|&&(a, _)| a != 1)
        .map(|&(a, b)| (a - 1, b - 1))
        .collect();
    upper.push((pos2 - 1, n - 1));
    let lower: Vec<(usize, usize)> = om.lower().iter().map(|&(a, b)| (a - 1, b - 1)).collect();
    ClosedMeander::new(n - 1, upper, lower)
}

/// Doubles a closed meander onto `2n` vertices with a full lower rainbow.
///
/// Upper arches survive unchanged; each lower arch `(i, j)` reappears as the
/// upper arch `(2n+1-i, 2n+1-j)`; the new lower matching is the rainbow
/// `(k, 2n+1-k)`. Components are preserved.
pub fn open_to_rainbow(m: &ClosedMeander) -> ClosedMeander {
    let n = m.n();
    let big = 2 * n;
    let mut upper: Vec<(usize, usize)> = m.upper().to_vec();
    for &(i, j) in m.lower() {
        upper.push((big + 1 - j, big + 1 - i));
    }
    let lower: Vec<(usize, usize)> = (1..=n).map(|k| (k, big + 1 - k)).collect();
    ClosedMeander::new(big, upper, lower).expect("doubling preserves meander invariants")
}
