//! Temperley–Lieb diagram monoid on N strands with loop scalars tracked as a
//! power of the loop parameter, plus the Markov trace via strand closure and
//! the translation of monomials into lower rainbow meanders.
//!
//! Scalars never leave the monomial world here: every trace of a monomial is
//! a pure power of the loop parameter, so only the exponent is stored.

use std::fmt;
use std::str::FromStr;

use meander::ClosedMeander;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TlError {
    #[error("generator index {index} out of range 1..={max} for {strands} strands")]
    IndexOutOfRange {
        index: usize,
        max: usize,
        strands: usize,
    },
    #[error("cannot compose diagrams on {left} and {right} strands")]
    SizeMismatch { left: usize, right: usize },
    #[error("strand count must be positive")]
    NoStrands,
    #[error("invalid word syntax: {0}")]
    BadSyntax(String),
    #[error("pairing is not planar: {0:?} and {1:?} cross")]
    NotPlanar((Endpoint, Endpoint), (Endpoint, Endpoint)),
    #[error("pairing does not cover every endpoint exactly once")]
    NotAMatching,
}

/// Endpoint on the diagram boundary, 1-based strand index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Endpoint {
    Top(usize),
    Bottom(usize),
}

impl Endpoint {
    /// Position in the boundary circle: top left-to-right, bottom right-to-left.
    fn circle_index(self, n: usize) -> usize {
        match self {
            Endpoint::Top(i) => i - 1,
            Endpoint::Bottom(i) => 2 * n - i,
        }
    }

    pub fn label(self) -> String {
        match self {
            Endpoint::Top(i) => format!("t{i}"),
            Endpoint::Bottom(i) => format!("b{i}"),
        }
    }

    fn parse(s: &str) -> Result<Endpoint, TlError> {
        let (kind, idx) = s.split_at(1);
        let i: usize = idx
            .parse()
            .map_err(|_| TlError::BadSyntax(format!("bad endpoint `{s}`")))?;
        match kind {
            "t" => Ok(Endpoint::Top(i)),
            "b" => Ok(Endpoint::Bottom(i)),
            _ => Err(TlError::BadSyntax(format!("bad endpoint `{s}`"))),
        }
    }
}

/// A word in the multiplicative generators; the empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TLWord {
    strands: usize,
    letters: Vec<usize>,
}

impl TLWord {
    pub fn new(strands: usize, letters: Vec<usize>) -> Result<Self, TlError> {
        if strands == 0 {
            return Err(TlError::NoStrands);
        }
        for &i in &letters {
            if i == 0 || i >= strands {
                return Err(TlError::IndexOutOfRange {
                    index: i,
                    max: strands - 1,
                    strands,
                });
            }
        }
        Ok(TLWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }
}

impl fmt::Display for TLWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={}:", self.strands)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

impl FromStr for TLWord {
    type Err = TlError;

    /// Parses `N=4: 2 1 3`; an empty letter list is the identity.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rest = s
            .trim()
            .strip_prefix("N=")
            .ok_or_else(|| TlError::BadSyntax("expected `N=<strands>: ...`".into()))?;
        let (count, letters_text) = match rest.split_once(':') {
            Some((c, l)) => (c, l),
            None => (rest, ""),
        };
        let strands: usize = count
            .trim()
            .parse()
            .map_err(|_| TlError::BadSyntax(format!("bad strand count `{}`", count.trim())))?;
        let mut letters = Vec::new();
        for tok in letters_text.split_whitespace() {
            letters.push(
                tok.parse::<usize>()
                    .map_err(|_| TlError::BadSyntax(format!("bad letter `{tok}`")))?,
            );
        }
        TLWord::new(strands, letters)
    }
}

/// Planar pairing of N top and N bottom endpoints with a loop exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TLDiagram {
    strands: usize,
    pairing: Vec<(Endpoint, Endpoint)>,
    loop_exponent: usize,
}

impl TLDiagram {
    pub fn new(
        strands: usize,
        pairing: Vec<(Endpoint, Endpoint)>,
        loop_exponent: usize,
    ) -> Result<Self, TlError> {
        if strands == 0 {
            return Err(TlError::NoStrands);
        }
        let mut covered = vec![false; 2 * strands];
        let mut canon: Vec<(Endpoint, Endpoint)> = Vec::with_capacity(strands);
        for (a, b) in pairing {
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            for e in [a, b] {
                let idx = match e {
                    Endpoint::Top(i) | Endpoint::Bottom(i) if i >= 1 && i <= strands => {
                        e.circle_index(strands)
                    }
                    _ => return Err(TlError::NotAMatching),
                };
                if covered[idx] {
                    return Err(TlError::NotAMatching);
                }
                covered[idx] = true;
            }
            canon.push((a, b));
        }
        if covered.iter().any(|&c| !c) {
            return Err(TlError::NotAMatching);
        }
        canon.sort_unstable();
        let d = TLDiagram {
            strands,
            pairing: canon,
            loop_exponent,
        };
        d.check_planar()?;
        Ok(d)
    }

    fn check_planar(&self) -> Result<(), TlError> {
        let n = self.strands;
        for (i, &(a, b)) in self.pairing.iter().enumerate() {
            let (x1, y1) = order(a.circle_index(n), b.circle_index(n));
            for &(c, d) in &self.pairing[i + 1..] {
                let (x2, y2) = order(c.circle_index(n), d.circle_index(n));
                let crosses = (x1 < x2 && x2 < y1 && y1 < y2) || (x2 < x1 && x1 < y2 && y2 < y1);
                if crosses {
                    return Err(TlError::NotPlanar((a, b), (c, d)));
                }
            }
        }
        Ok(())
    }

    pub fn identity(strands: usize) -> Result<Self, TlError> {
        if strands == 0 {
            return Err(TlError::NoStrands);
        }
        Ok(TLDiagram {
            strands,
            pairing: (1..=strands)
                .map(|i| (Endpoint::Top(i), Endpoint::Bottom(i)))
                .collect(),
            loop_exponent: 0,
        })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn pairing(&self) -> &[(Endpoint, Endpoint)] {
        &self.pairing
    }

    pub fn loop_exponent(&self) -> usize {
        self.loop_exponent
    }

    /// Same pairing, ignoring accumulated loops.
    pub fn same_shape(&self, other: &TLDiagram) -> bool {
        self.strands == other.strands && self.pairing == other.pairing
    }

    pub fn to_dump(&self) -> TLDiagramDump {
        TLDiagramDump {
            n: self.strands,
            loop_exponent: self.loop_exponent,
            pairs: self
                .pairing
                .iter()
                .map(|&(a, b)| [a.label(), b.label()])
                .collect(),
        }
    }

    pub fn from_dump(dump: &TLDiagramDump) -> Result<Self, TlError> {
        let mut pairing = Vec::with_capacity(dump.pairs.len());
        for [a, b] in &dump.pairs {
            pairing.push((Endpoint::parse(a)?, Endpoint::parse(b)?));
        }
        TLDiagram::new(dump.n, pairing, dump.loop_exponent)
    }
}

fn order(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// JSON shape with human-readable endpoint labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TLDiagramDump {
    pub n: usize,
    pub loop_exponent: usize,
    pub pairs: Vec<[String; 2]>,
}

/// The cup/cap generator: tops i, i+1 and bottoms i, i+1 joined, all other
/// strands passing through.
pub fn generator_diagram(i: usize, strands: usize) -> Result<TLDiagram, TlError> {
    if strands == 0 {
        return Err(TlError::NoStrands);
    }
    if i == 0 || i >= strands {
        return Err(TlError::IndexOutOfRange {
            index: i,
            max: strands - 1,
            strands,
        });
    }
    let mut pairing = vec![
        (Endpoint::Top(i), Endpoint::Top(i + 1)),
        (Endpoint::Bottom(i), Endpoint::Bottom(i + 1)),
    ];
    for j in (1..=strands).filter(|&j| j != i && j != i + 1) {
        pairing.push((Endpoint::Top(j), Endpoint::Bottom(j)));
    }
    TLDiagram::new(strands, pairing, 0)
}

/// Vertical concatenation with `d1` on top: glue d1's bottom row to d2's top
/// row, re-trace strands, and absorb every closed loop into the exponent.
pub fn compose(d1: &TLDiagram, d2: &TLDiagram) -> Result<TLDiagram, TlError> {
    let n = d1.strands;
    if n != d2.strands {
        return Err(TlError::SizeMismatch {
            left: n,
            right: d2.strands,
        });
    }
    // node layout: 0..n d1 top | n..2n d1 bottom | 2n..3n d2 top | 3n..4n d2 bottom
    let node = |owner: usize, e: Endpoint| -> usize {
        match (owner, e) {
            (1, Endpoint::Top(i)) => i - 1,
            (1, Endpoint::Bottom(i)) => n + i - 1,
            (2, Endpoint::Top(i)) => 2 * n + i - 1,
            (2, Endpoint::Bottom(i)) => 3 * n + i - 1,
            _ => unreachable!(),
        }
    };
    let mut pair = vec![usize::MAX; 4 * n];
    for &(a, b) in &d1.pairing {
        pair[node(1, a)] = node(1, b);
        pair[node(1, b)] = node(1, a);
    }
    for &(a, b) in &d2.pairing {
        pair[node(2, a)] = node(2, b);
        pair[node(2, b)] = node(2, a);
    }
    // glue edges between the interior rows
    let glue = |k: usize| -> Option<usize> {
        if (n..2 * n).contains(&k) {
            Some(k + n)
        } else if (2 * n..3 * n).contains(&k) {
            Some(k - n)
        } else {
            None
        }
    };
    let exterior = |k: usize| -> Option<Endpoint> {
        if k < n {
            Some(Endpoint::Top(k + 1))
        } else if k >= 3 * n {
            Some(Endpoint::Bottom(k - 3 * n + 1))
        } else {
            None
        }
    };

    let mut visited = vec![false; 4 * n];
    let mut pairing = Vec::with_capacity(n);
    for start in (0..n).chain(3 * n..4 * n) {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        let mut cur = pair[start];
        loop {
            visited[cur] = true;
            match glue(cur) {
                Some(next) => {
                    visited[next] = true;
                    cur = pair[next];
                }
                None => break,
            }
        }
        pairing.push((
            exterior(start).expect("walk starts outside"),
            exterior(cur).expect("walk ends outside"),
        ));
    }
    // anything unvisited in the glue region is a closed loop
    let mut loops = 0;
    for start in n..3 * n {
        if visited[start] {
            continue;
        }
        loops += 1;
        let mut cur = start;
        loop {
            visited[cur] = true;
            let hop = glue(cur).expect("loop stays interior");
            visited[hop] = true;
            cur = pair[hop];
            if cur == start {
                break;
            }
        }
    }
    TLDiagram::new(n, pairing, d1.loop_exponent + d2.loop_exponent + loops)
}

/// Left-to-right product of the word's generator diagrams.
pub fn eval_word(word: &TLWord) -> Result<TLDiagram, TlError> {
    let mut acc = TLDiagram::identity(word.strands)?;
    for &i in &word.letters {
        acc = compose(&acc, &generator_diagram(i, word.strands)?)?;
    }
    Ok(acc)
}

/// Markov trace exponent: close the evaluated diagram by joining `t_i` to
/// `b_i` around the outside and count all loops, interior ones included.
pub fn markov_trace_exponent(word: &TLWord) -> Result<usize, TlError> {
    let d = eval_word(word)?;
    Ok(d.loop_exponent + closure_components(&d))
}

fn closure_components(d: &TLDiagram) -> usize {
    let n = d.strands;
    let node = |e: Endpoint| -> usize {
        match e {
            Endpoint::Top(i) => i - 1,
            Endpoint::Bottom(i) => n + i - 1,
        }
    };
    let mut pair = vec![usize::MAX; 2 * n];
    for &(a, b) in &d.pairing {
        pair[node(a)] = node(b);
        pair[node(b)] = node(a);
    }
    let closure = |k: usize| -> usize {
        if k < n {
            k + n
        } else {
            k - n
        }
    };
    let mut visited = vec![false; 2 * n];
    let mut cycles = 0;
    for start in 0..2 * n {
        if visited[start] {
            continue;
        }
        cycles += 1;
        let mut cur = start;
        loop {
            visited[cur] = true;
            let hop = pair[cur];
            visited[hop] = true;
            cur = closure(hop);
            if cur == start {
                break;
            }
        }
    }
    cycles
}

/// A word translated to its lower rainbow meander, with any interior loops
/// (pure scalar factors) reported alongside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeanderTranslation {
    pub meander: ClosedMeander,
    pub interior_loops: usize,
}

/// Joins the bottom boundary around to the top: `t_j -> j`, `b_j -> 2N+1-j`
/// become the upper arches over a full lower rainbow on 2N vertices. The
/// meander's component count plus `interior_loops` equals the trace exponent.
pub fn word_to_meander(word: &TLWord) -> Result<MeanderTranslation, TlError> {
    let d = eval_word(word)?;
    let n = d.strands;
    let vertex = |e: Endpoint| -> usize {
        match e {
            Endpoint::Top(j) => j,
            Endpoint::Bottom(j) => 2 * n + 1 - j,
        }
    };
    let upper: Vec<(usize, usize)> = d
        .pairing
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (vertex(a), vertex(b));
            (x.min(y), x.max(y))
        })
        .collect();
    let lower: Vec<(usize, usize)> = (1..=n).map(|k| (k, 2 * n + 1 - k)).collect();
    let meander = ClosedMeander::new(2 * n, upper, lower)
        .expect("planar pairing maps to a noncrossing matching");
    Ok(MeanderTranslation {
        meander,
        interior_loops: d.loop_exponent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(n: usize, letters: &[usize]) -> TLWord {
        TLWord::new(n, letters.to_vec()).unwrap()
    }

    #[test]
    fn parse_word_format() {
        let w: TLWord = "N=4: 2 1 3".parse().unwrap();
        assert_eq!(w.strands(), 4);
        assert_eq!(w.letters(), &[2, 1, 3]);
        let empty: TLWord = "N=4:".parse().unwrap();
        assert!(empty.letters().is_empty());
        assert!("N=4: 4".parse::<TLWord>().is_err());
        assert!("4: 1".parse::<TLWord>().is_err());
    }

    #[test]
    fn generator_shapes() {
        let e1 = generator_diagram(1, 2).unwrap();
        assert_eq!(
            e1.pairing(),
            &[
                (Endpoint::Top(1), Endpoint::Top(2)),
                (Endpoint::Bottom(1), Endpoint::Bottom(2)),
            ]
        );
        let e2 = generator_diagram(2, 4).unwrap();
        assert!(e2.pairing().contains(&(Endpoint::Top(2), Endpoint::Top(3))));
        assert!(e2
            .pairing()
            .contains(&(Endpoint::Bottom(2), Endpoint::Bottom(3))));
        assert!(e2
            .pairing()
            .contains(&(Endpoint::Top(1), Endpoint::Bottom(1))));
        assert!(e2
            .pairing()
            .contains(&(Endpoint::Top(4), Endpoint::Bottom(4))));
        assert!(matches!(
            generator_diagram(4, 4),
            Err(TlError::IndexOutOfRange { index: 4, .. })
        ));
    }

    #[test]
    fn square_relation_adds_a_loop() {
        let e2 = generator_diagram(2, 4).unwrap();
        let sq = compose(&e2, &e2).unwrap();
        assert!(sq.same_shape(&e2));
        assert_eq!(sq.loop_exponent(), 1);
    }

    #[test]
    fn braid_like_relation() {
        let e1 = generator_diagram(1, 4).unwrap();
        let e2 = generator_diagram(2, 4).unwrap();
        let prod = compose(&e2, &compose(&e1, &e2).unwrap()).unwrap();
        assert!(prod.same_shape(&e2));
        assert_eq!(prod.loop_exponent(), 0);
    }

    #[test]
    fn distant_generators_commute() {
        let e1 = generator_diagram(1, 4).unwrap();
        let e3 = generator_diagram(3, 4).unwrap();
        assert_eq!(compose(&e1, &e3).unwrap(), compose(&e3, &e1).unwrap());
    }

    #[test]
    fn eval_word_213() {
        let d = eval_word(&word(4, &[2, 1, 3])).unwrap();
        assert_eq!(
            d.pairing(),
            &[
                (Endpoint::Top(1), Endpoint::Top(4)),
                (Endpoint::Top(2), Endpoint::Top(3)),
                (Endpoint::Bottom(1), Endpoint::Bottom(2)),
                (Endpoint::Bottom(3), Endpoint::Bottom(4)),
            ]
        );
        assert_eq!(d.loop_exponent(), 0);
    }

    #[test]
    fn eval_empty_and_square() {
        assert_eq!(
            eval_word(&word(4, &[])).unwrap(),
            TLDiagram::identity(4).unwrap()
        );
        let d = eval_word(&word(4, &[2, 2])).unwrap();
        assert!(d.same_shape(&generator_diagram(2, 4).unwrap()));
        assert_eq!(d.loop_exponent(), 1);
    }

    #[test]
    fn trace_examples() {
        assert_eq!(markov_trace_exponent(&word(4, &[2, 1, 3])).unwrap(), 1);
        assert_eq!(markov_trace_exponent(&word(5, &[])).unwrap(), 5);
        assert_eq!(markov_trace_exponent(&word(2, &[1])).unwrap(), 1);
    }

    #[test]
    fn meander_translation_examples() {
        let t = word_to_meander(&word(4, &[2, 1, 3])).unwrap();
        assert_eq!(t.meander.n(), 8);
        assert_eq!(t.meander.count_components(), 1);
        assert_eq!(t.interior_loops, 0);

        let id2 = word_to_meander(&word(2, &[])).unwrap();
        assert_eq!(id2.meander.n(), 4);
        assert_eq!(id2.meander.count_components(), 2);

        let cup = word_to_meander(&word(2, &[1])).unwrap();
        assert_eq!(cup.meander.count_components(), 1);
    }

    #[test]
    fn compose_size_mismatch() {
        let a = TLDiagram::identity(3).unwrap();
        let b = TLDiagram::identity(4).unwrap();
        assert!(matches!(
            compose(&a, &b),
            Err(TlError::SizeMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn dump_roundtrip() {
        let d = eval_word(&word(4, &[2, 1, 3, 2])).unwrap();
        let dump = d.to_dump();
        let text = serde_json::to_string(&dump).unwrap();
        let back: TLDiagramDump = serde_json::from_str(&text).unwrap();
        assert_eq!(TLDiagram::from_dump(&back).unwrap(), d);
    }

    #[test]
    fn planarity_validation() {
        // crossing pairing t1-b2 / t2-b1 is rejected
        let crossing = TLDiagram::new(
            2,
            vec![
                (Endpoint::Top(1), Endpoint::Bottom(2)),
                (Endpoint::Top(2), Endpoint::Bottom(1)),
            ],
            0,
        );
        assert!(matches!(crossing, Err(TlError::NotPlanar(_, _))));
    }
}
