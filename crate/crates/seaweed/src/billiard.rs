//! Cartesian billiards: ±45° flight paths between half-integer boundary
//! points of a grid-cell domain, with specular reflection at horizontal and
//! vertical boundary segments.
//!
//! Cell `(r, c)` covers the unit square `[c-1, c] x [r-1, r]`. Midpoints are
//! kept in doubled integer coordinates, so the midpoint of a vertical edge at
//! `x = c` between rows has doubled coordinates `(2c, 2r-1)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::{SeaweedComposition, SeaweedError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Billiard {
    cells: BTreeSet<(i64, i64)>, // (row, col), 1-based
}

/// A closed flight path, as real-coordinate edge midpoints in traversal order.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub points: Vec<(f64, f64)>,
}

type State = ((i64, i64), (i64, i64)); // (doubled midpoint, direction)

impl Billiard {
    pub fn new(cells: impl IntoIterator<Item = (i64, i64)>) -> Self {
        Billiard {
            cells: cells.into_iter().collect(),
        }
    }

    pub fn cells(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.cells.iter().copied()
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    /// The cell a segment crosses when leaving midpoint `p` in direction `d`.
    fn crossed_cell(p: (i64, i64), d: (i64, i64)) -> (i64, i64) {
        let q = (p.0 + d.0, p.1 + d.1);
        let ox = if p.0 % 2 != 0 { p.0 } else { q.0 };
        let oy = if p.1 % 2 != 0 { p.1 } else { q.1 };
        ((oy + 1) / 2, (ox + 1) / 2)
    }

    fn is_valid(&self, s: &State) -> bool {
        self.cells.contains(&Self::crossed_cell(s.0, s.1))
    }

    /// One flight segment plus reflection bookkeeping.
    fn step(&self, s: &State) -> Result<State, SeaweedError> {
        if !self.is_valid(s) {
            return Err(SeaweedError::MalformedDomain(Self::crossed_cell(s.0, s.1)));
        }
        let (p, d) = *s;
        let q = (p.0 + d.0, p.1 + d.1);
        let continuing = (q, d);
        if self.is_valid(&continuing) {
            return Ok(continuing);
        }
        // Boundary edge: reflect the normal component and stay in the domain.
        let reflected = if q.0 % 2 == 0 {
            (q, (-d.0, d.1)) // vertical edge
        } else {
            (q, (d.0, -d.1)) // horizontal edge
        };
        if !self.is_valid(&reflected) {
            return Err(SeaweedError::MalformedDomain(Self::crossed_cell(
                reflected.0,
                reflected.1,
            )));
        }
        Ok(reflected)
    }

    fn all_states(&self) -> Vec<State> {
        let mut states = BTreeSet::new();
        for &(r, c) in &self.cells {
            let midpoints = [
                (2 * c - 2, 2 * r - 1), // left
                (2 * c, 2 * r - 1),     // right
                (2 * c - 1, 2 * r - 2), // bottom
                (2 * c - 1, 2 * r),     // top
            ];
            for p in midpoints {
                for d in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    let s = (p, d);
                    if self.is_valid(&s) {
                        states.insert(s);
                    }
                }
            }
        }
        states.into_iter().collect()
    }

    /// Traces every flight path once. Directed orbits come in reverse pairs;
    /// each pair is one geometric trajectory.
    pub fn trajectories(&self) -> Result<Vec<Trajectory>, SeaweedError> {
        let states = self.all_states();
        let index: BTreeMap<State, usize> =
            states.iter().enumerate().map(|(i, s)| (*s, i)).collect();

        let mut orbit_of = vec![usize::MAX; states.len()];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for start in 0..states.len() {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut cycle = Vec::new();
            let mut s = states[start];
            loop {
                let i = index[&s];
                if orbit_of[i] != usize::MAX {
                    break;
                }
                orbit_of[i] = id;
                cycle.push(i);
                s = self.step(&s)?;
            }
            orbits.push(cycle);
        }

        // union orbits with their reverses (same segment, opposite direction)
        let mut class = (0..orbits.len()).collect::<Vec<usize>>();
        fn find(class: &mut [usize], mut x: usize) -> usize {
            while class[x] != x {
                class[x] = class[class[x]];
                x = class[x];
            }
            x
        }
        for (i, &(p, d)) in states.iter().enumerate() {
            let q = (p.0 + d.0, p.1 + d.1);
            let rev = (q, (-d.0, -d.1));
            let j = index[&rev];
            let (a, b) = (find(&mut class, orbit_of[i]), find(&mut class, orbit_of[j]));
            if a != b {
                class[a.max(b)] = a.min(b);
            }
        }

        let mut representative: BTreeMap<usize, usize> = BTreeMap::new();
        for (id, cycle) in orbits.iter().enumerate() {
            let root = find(&mut class, id);
            representative.entry(root).or_insert(cycle[0]);
        }

        let mut out = Vec::new();
        for &start in representative.values() {
            let first = states[start];
            let mut points = Vec::new();
            let mut s = first;
            loop {
                points.push((s.0 .0 as f64 / 2.0, s.0 .1 as f64 / 2.0));
                s = self.step(&s)?;
                if s == first {
                    break;
                }
            }
            out.push(Trajectory { points });
        }
        Ok(out)
    }

    /// Every boundary midpoint lies on exactly one trajectory; used by tests.
    pub fn boundary_midpoints(&self) -> BTreeSet<(i64, i64)> {
        let mut out = BTreeSet::new();
        for &(r, c) in &self.cells {
            let neighbors = [
                ((r, c - 1), (2 * c - 2, 2 * r - 1)),
                ((r, c + 1), (2 * c, 2 * r - 1)),
                ((r - 1, c), (2 * c - 1, 2 * r - 2)),
                ((r + 1, c), (2 * c - 1, 2 * r)),
            ];
            for (adj, mid) in neighbors {
                if !self.cells.contains(&adj) {
                    out.insert(mid);
                }
            }
        }
        out
    }

    pub fn to_dump(&self) -> Result<BilliardDump, SeaweedError> {
        Ok(BilliardDump {
            cells: self.cells.iter().map(|&(r, c)| [r, c]).collect(),
            trajectories: self
                .trajectories()?
                .into_iter()
                .map(|t| t.points.into_iter().map(|(x, y)| [x, y]).collect())
                .collect(),
        })
    }

    /// Deterministic SVG: cells as squares, flight paths as closed polylines.
    pub fn to_svg(&self) -> Result<String, SeaweedError> {
        const SCALE: f64 = 40.0;
        const MARGIN: f64 = 20.0;
        let rows = self.cells.iter().map(|&(r, _)| r).max().unwrap_or(1) as f64;
        let cols = self.cells.iter().map(|&(_, c)| c).max().unwrap_or(1) as f64;
        let width = cols * SCALE + 2.0 * MARGIN;
        let height = rows * SCALE + 2.0 * MARGIN;
        let fx = |x: f64| MARGIN + x * SCALE;
        let fy = |y: f64| height - MARGIN - y * SCALE;

        let mut s = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {width:.2} {height:.2}\">\n"
        );
        for &(r, c) in &self.cells {
            s.push_str(&format!(
                "  <rect x=\"{:.2}\" y=\"{:.2}\" width=\"{SCALE:.2}\" height=\"{SCALE:.2}\" fill=\"#eeeeee\" stroke=\"#666666\" stroke-width=\"1\"/>\n",
                fx((c - 1) as f64),
                fy(r as f64),
            ));
        }
        let palette = [
            "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2",
        ];
        for (i, traj) in self.trajectories()?.iter().enumerate() {
            let pts: Vec<String> = traj
                .points
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", fx(x), fy(y)))
                .collect();
            s.push_str(&format!(
                "  <polygon points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>\n",
                pts.join(" "),
                palette[i % palette.len()]
            ));
        }
        s.push_str("</svg>\n");
        Ok(s)
    }
}

/// Serializable billiard snapshot: sorted cell list plus traced paths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BilliardDump {
    pub cells: Vec<[i64; 2]>,
    pub trajectories: Vec<Vec<[f64; 2]>>,
}

/// Domain of admissible nonzero entries of the seaweed matrix algebra:
/// column `c` admits rows from just above the largest lower partial sum
/// below `c` up to the smallest upper partial sum at or above `c`.
pub fn billiard_from_seaweed(sc: &SeaweedComposition) -> Billiard {
    let half = sc.half_size() as i64;
    let alpha_partials: Vec<i64> = sc
        .alpha()
        .iter()
        .scan(0i64, |acc, &a| {
            *acc += a as i64;
            Some(*acc)
        })
        .collect();
    let beta_partials: Vec<i64> = sc
        .beta()
        .iter()
        .scan(0i64, |acc, &b| {
            *acc += b as i64;
            Some(*acc)
        })
        .collect();
    let mut cells = Vec::new();
    for c in 1..=half {
        let upper_end = *alpha_partials
            .iter()
            .find(|&&s| s >= c)
            .expect("partial sums reach the total");
        let lower_start = beta_partials
            .iter()
            .copied()
            .filter(|&s| s < c)
            .max()
            .unwrap_or(0);
        for r in (lower_start + 1)..=upper_end {
            cells.push((r, c));
        }
    }
    Billiard::new(cells)
}

/// Number of distinct flight paths.
pub fn billiard_components(b: &Billiard) -> Result<usize, SeaweedError> {
    Ok(b.trajectories()?.len())
}
