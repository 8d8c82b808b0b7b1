//! Oriented planar knot diagrams in PD notation.
//!
//! A crossing `X[a,b,c,d]` lists its four edge labels counterclockwise,
//! starting at the incoming under-strand edge `a`, so the under-strand runs
//! `a -> c`. Slots are numbered `0..4` in that order and quadrant `i` is the
//! corner between slot `i` and slot `i + 1`. Looking at a crossing with the
//! under-strand pointing up, quadrants 0, 1, 2, 3 are lower-right,
//! upper-right, upper-left and lower-left.

mod faces;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub use faces::{alexander_indices, faces, faces_with_null, Region, Regions};
pub use parse::parse_pd;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Handedness {
    /// Over-strand points right when the under-strand points up (relation
    /// exponent `q`). This is the positive crossing in the usual writhe
    /// convention.
    Left,
    /// Over-strand points left when the under-strand points up (relation
    /// exponent `q^-1`).
    Right,
}

impl Handedness {
    pub fn flipped(self) -> Self {
        match self {
            Handedness::Left => Handedness::Right,
            Handedness::Right => Handedness::Left,
        }
    }

    /// Power of `q` attached to the lower quadrants of the crossing relation.
    pub fn twist(self) -> i64 {
        match self {
            Handedness::Left => 1,
            Handedness::Right => -1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub id: usize,
    /// Normalized 0-based edge ids, counterclockwise from the incoming under edge.
    pub edges: [usize; 4],
    pub handedness: Handedness,
}

impl Crossing {
    /// Slot through which the over-strand enters (1 or 3).
    pub fn over_in_slot(&self) -> usize {
        match self.handedness {
            Handedness::Left => 3,
            Handedness::Right => 1,
        }
    }

    pub fn over_out_slot(&self) -> usize {
        (self.over_in_slot() + 2) % 4
    }

    /// Writhe sign: +1 for the positive crossing.
    pub fn sign(&self) -> i64 {
        match self.handedness {
            Handedness::Left => 1,
            Handedness::Right => -1,
        }
    }
}

/// A validated one-component diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    /// For each edge, the slot it leaves from (tail) and arrives at (head).
    tails: Vec<(usize, usize)>,
    heads: Vec<(usize, usize)>,
    /// Edges in knot order, starting with the edge leaving crossing 0 at slot 2.
    traversal: Vec<usize>,
}

/// Where a kink is attached relative to the strand it is inserted into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kink {
    /// First pass under, loop on the left of the strand.
    UnderLeft,
    /// First pass under, loop on the right.
    UnderRight,
    /// First pass over, loop on the left.
    OverLeft,
    /// First pass over, loop on the right.
    OverRight,
}

impl Diagram {
    pub fn unknot() -> Self {
        Diagram { crossings: Vec::new(), tails: Vec::new(), heads: Vec::new(), traversal: Vec::new() }
    }

    /// Builds a diagram from raw PD labels. Labels are normalized to their
    /// rank among the distinct labels used.
    pub fn from_labels(raw: &[[i64; 4]]) -> Result<Self> {
        if raw.is_empty() {
            return Ok(Self::unknot());
        }
        let mut uses: BTreeMap<i64, usize> = BTreeMap::new();
        for x in raw {
            for &l in x {
                *uses.entry(l).or_default() += 1;
            }
        }
        let bad: Vec<String> =
            uses.iter().filter(|(_, &n)| n != 2).map(|(l, n)| format!("{l}(x{n})")).collect();
        if !bad.is_empty() {
            return Err(Error::InconsistentDiagram(format!(
                "every edge label must occur exactly twice; offending labels: {}",
                bad.join(", ")
            )));
        }
        let rank: BTreeMap<i64, usize> = uses.keys().enumerate().map(|(i, &l)| (l, i)).collect();
        let edges: Vec<[usize; 4]> = raw.iter().map(|x| x.map(|l| rank[&l])).collect();
        Self::from_edges(&edges)
    }

    fn from_edges(edges: &[[usize; 4]]) -> Result<Self> {
        let v = edges.len();
        let edge_count = 2 * v;
        let mut slots: Vec<Vec<(usize, usize)>> = vec![Vec::new(); edge_count];
        for (x, e) in edges.iter().enumerate() {
            for (i, &l) in e.iter().enumerate() {
                slots[l].push((x, i));
            }
        }
        let partner = |x: usize, i: usize| -> (usize, usize) {
            let s = &slots[edges[x][i]];
            if s[0] == (x, i) {
                s[1]
            } else {
                s[0]
            }
        };

        let mut tails = vec![(usize::MAX, 0); edge_count];
        let mut heads = vec![(usize::MAX, 0); edge_count];
        let mut over_in: Vec<Option<usize>> = vec![None; v];
        let mut traversal = Vec::with_capacity(edge_count);
        let start = (0usize, 2usize);
        let mut cur = start;
        loop {
            let e = edges[cur.0][cur.1];
            if traversal.len() == edge_count || tails[e].0 != usize::MAX {
                return Err(Error::InconsistentDiagram(format!(
                    "strand traversal revisits edge {}",
                    e + 1
                )));
            }
            tails[e] = cur;
            traversal.push(e);
            let (y, j) = partner(cur.0, cur.1);
            heads[e] = (y, j);
            match j {
                0 => cur = (y, 2),
                2 => {
                    return Err(Error::InconsistentDiagram(format!(
                        "crossing {} is entered through its outgoing under slot; \
                         expected X[a,b,c,d] with the under-strand running a -> c",
                        y + 1
                    )))
                }
                _ => {
                    if over_in[y].replace(j).is_some() {
                        return Err(Error::InconsistentDiagram(format!(
                            "over-strand of crossing {} traversed twice",
                            y + 1
                        )));
                    }
                    cur = (y, (j + 2) % 4);
                }
            }
            if cur == start {
                break;
            }
        }
        if traversal.len() != edge_count {
            return Err(Error::InconsistentDiagram(format!(
                "diagram has more than one component ({} of {} edges on the first)",
                traversal.len(),
                edge_count
            )));
        }
        let crossings = edges
            .iter()
            .enumerate()
            .map(|(x, e)| {
                let handedness = match over_in[x] {
                    Some(3) => Handedness::Left,
                    Some(1) => Handedness::Right,
                    _ => {
                        return Err(Error::InconsistentDiagram(format!(
                            "over-strand of crossing {} never traversed",
                            x + 1
                        )))
                    }
                };
                Ok(Crossing { id: x, edges: *e, handedness })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Diagram { crossings, tails, heads, traversal })
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        2 * self.crossings.len()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn component_count(&self) -> usize {
        1
    }

    /// `(crossing, slot)` where the edge leaves its tail crossing.
    pub fn tail(&self, edge: usize) -> (usize, usize) {
        self.tails[edge]
    }

    /// `(crossing, slot)` where the edge enters its head crossing.
    pub fn head(&self, edge: usize) -> (usize, usize) {
        self.heads[edge]
    }

    pub fn traversal(&self) -> &[usize] {
        &self.traversal
    }

    /// The other `(crossing, slot)` carrying the same edge.
    pub fn partner(&self, crossing: usize, slot: usize) -> (usize, usize) {
        let e = self.crossings[crossing].edges[slot];
        if self.tails[e] == (crossing, slot) {
            self.heads[e]
        } else {
            self.tails[e]
        }
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(Crossing::sign).sum()
    }

    pub fn signs(&self) -> Vec<i64> {
        self.crossings.iter().map(Crossing::sign).collect()
    }

    /// PD text with 1-based normalized labels.
    pub fn pd_string(&self) -> String {
        if self.crossings.is_empty() {
            return "unknot".into();
        }
        self.crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.edges.map(|e| e + 1);
                format!("X[{a},{b},{cc},{d}]")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn labels(&self) -> Vec<[usize; 4]> {
        self.crossings.iter().map(|c| c.edges.map(|e| e + 1)).collect()
    }

    /// Inserts a one-crossing kink into `edge` (0-based). The result is a
    /// Reidemeister-I-distinct diagram of the same knot.
    pub fn with_kink(&self, edge: usize, kink: Kink) -> Result<Diagram> {
        if self.crossings.is_empty() {
            let raw = match kink {
                Kink::UnderLeft => [0, 0, 1, 1],
                Kink::UnderRight => [0, 1, 1, 0],
                Kink::OverLeft => [1, 1, 0, 0],
                Kink::OverRight => [1, 0, 0, 1],
            };
            return Self::from_labels(&[raw]);
        }
        if edge >= self.edge_count() {
            return Err(Error::InvalidParameter(format!("edge {} out of range", edge + 1)));
        }
        let scale = |e: usize| 3 * e as i64;
        let mut raw: Vec<[i64; 4]> = self.crossings.iter().map(|c| c.edges.map(scale)).collect();
        let (hx, hs) = self.heads[edge];
        let (inc, lp, out) = (scale(edge), scale(edge) + 1, scale(edge) + 2);
        raw[hx][hs] = out;
        let new = match kink {
            Kink::UnderLeft => [inc, out, lp, lp],
            Kink::UnderRight => [inc, lp, lp, out],
            Kink::OverLeft => [lp, lp, out, inc],
            Kink::OverRight => [lp, inc, out, lp],
        };
        raw.push(new);
        Self::from_labels(&raw)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pd_string())
    }
}

/// Handedness of crossing `c` in `d`.
pub fn handedness(c: &Crossing, _d: &Diagram) -> Handedness {
    c.handedness
}

/// The diagram with over and under exchanged at every crossing. The
/// underlying 4-valent plane graph and the knot orientation are unchanged.
pub fn mirror(d: &Diagram) -> Diagram {
    if d.crossings.is_empty() {
        return d.clone();
    }
    let edges: Vec<[usize; 4]> = d
        .crossings
        .iter()
        .map(|c| {
            let [a, b, cc, dd] = c.edges;
            match c.handedness {
                // over-strand d -> b becomes the under-strand
                Handedness::Left => [dd, a, b, cc],
                Handedness::Right => [b, cc, dd, a],
            }
        })
        .collect();
    Diagram::from_edges(&edges).expect("mirror of a valid diagram is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
    const FIGURE_EIGHT: &str = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";

    #[test]
    fn trefoil_is_sign_homogeneous() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.edge_count(), 6);
        assert_eq!(d.writhe().abs(), 3);
        let h = d.crossings()[0].handedness;
        assert!(d.crossings().iter().all(|c| handedness(c, &d) == h));
    }

    #[test]
    fn figure_eight_has_zero_writhe() {
        let d = parse_pd(FIGURE_EIGHT).unwrap();
        assert_eq!(d.writhe(), 0);
        let lefts = d.crossings().iter().filter(|c| c.handedness == Handedness::Left).count();
        assert_eq!(lefts, 2);
    }

    #[test]
    fn mirror_flips_every_crossing_and_is_an_involution() {
        for pd in [TREFOIL, FIGURE_EIGHT, "X[1,1,2,2]"] {
            let d = parse_pd(pd).unwrap();
            let m = mirror(&d);
            for (a, b) in d.crossings().iter().zip(m.crossings()) {
                assert_eq!(a.handedness.flipped(), b.handedness);
            }
            assert_eq!(mirror(&m), d);
        }
    }

    #[test]
    fn unknot_special_case() {
        let d = parse_pd("unknot").unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.pd_string(), "unknot");
        assert_eq!(mirror(&d), d);
    }

    #[test]
    fn two_components_rejected() {
        // Hopf link
        let err = parse_pd("X[1,3,2,4] X[3,1,4,2]").unwrap_err();
        assert!(matches!(err, Error::InconsistentDiagram(_)), "{err:?}");
    }

    #[test]
    fn backwards_under_strand_rejected() {
        let err = parse_pd("X[2,4,1,5] X[3,6,4,1] X[5,2,6,3]").unwrap_err();
        assert!(matches!(err, Error::InconsistentDiagram(_)), "{err:?}");
    }

    #[test]
    fn kinks_add_one_crossing() {
        let d = parse_pd(TREFOIL).unwrap();
        for kink in [Kink::UnderLeft, Kink::UnderRight, Kink::OverLeft, Kink::OverRight] {
            for e in 0..d.edge_count() {
                let k = d.with_kink(e, kink).unwrap();
                assert_eq!(k.crossing_count(), 4);
                assert_eq!((k.writhe() - d.writhe()).abs(), 1);
            }
        }
        let u = Diagram::unknot().with_kink(0, Kink::UnderLeft).unwrap();
        assert_eq!(u.pd_string(), "X[1,1,2,2]");
    }

    #[test]
    fn pd_round_trip() {
        let d = parse_pd(FIGURE_EIGHT).unwrap();
        assert_eq!(parse_pd(&d.pd_string()).unwrap(), d);
    }
}
