//! Dehn and Wirtinger presentations of the knot group.

use serde::Serialize;

use crate::diagram::{alexander_indices, faces, Diagram, Handedness, Regions};
use crate::error::Result;

/// One crossing relation `g_j g_k^-1 g_l g_m^-1 = 1`. The four regions are
/// read with the under-strand pointing up: `j` upper-left, `k` lower-left,
/// `l` lower-right, `m` upper-right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DehnRelation {
    pub crossing: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub m: usize,
    pub handedness: Handedness,
}

impl DehnRelation {
    /// `(region, exponent)` letters of the relator, with the null region
    /// (`g_0 = 1`) dropped.
    pub fn word(&self) -> Vec<(usize, i32)> {
        [(self.j, 1), (self.k, -1), (self.l, 1), (self.m, -1)]
            .into_iter()
            .filter(|&(r, _)| r != 0)
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct DehnPresentation {
    /// Generators are the non-null regions `1..=v+1`.
    pub generator_count: usize,
    pub relations: Vec<DehnRelation>,
    /// Alexander index of every region, null region included.
    pub indices: Vec<i64>,
    pub regions: Regions,
}

pub fn dehn_presentation(d: &Diagram) -> Result<DehnPresentation> {
    dehn_presentation_with(d, faces(d)?)
}

/// Dehn presentation for a given choice of faces (and hence null region).
pub fn dehn_presentation_with(d: &Diagram, regions: Regions) -> Result<DehnPresentation> {
    let indices = alexander_indices(d, &regions)?;
    let relations = d
        .crossings()
        .iter()
        .map(|c| DehnRelation {
            crossing: c.id,
            j: regions.at(c.id, 2),
            k: regions.at(c.id, 3),
            l: regions.at(c.id, 0),
            m: regions.at(c.id, 1),
            handedness: c.handedness,
        })
        .collect();
    Ok(DehnPresentation { generator_count: regions.len() - 1, relations, indices, regions })
}

/// `x_c = x_o x_a x_o^-1` at a left-handed crossing and
/// `x_c = x_o^-1 x_a x_o` at a right-handed one, where `a` and `c` are the
/// incoming and outgoing under-arcs and `o` the over-arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WirtingerRelation {
    pub crossing: usize,
    pub outgoing: usize,
    pub incoming: usize,
    pub over: usize,
    pub handedness: Handedness,
}

impl WirtingerRelation {
    /// Relator word whose vanishing is the relation, as `(generator, ±1)`.
    pub fn relator(&self) -> Vec<(usize, i32)> {
        let (o, a, c) = (self.over, self.incoming, self.outgoing);
        match self.handedness {
            Handedness::Left => vec![(o, 1), (a, 1), (o, -1), (c, -1)],
            Handedness::Right => vec![(o, -1), (a, 1), (o, 1), (c, -1)],
        }
    }
}

#[derive(Debug, Clone)]
pub struct WirtingerPresentation {
    pub generator_count: usize,
    pub relations: Vec<WirtingerRelation>,
    /// Arc containing each edge.
    pub edge_arc: Vec<usize>,
}

impl WirtingerPresentation {
    /// Exponent-sum matrix (relations x generators) of the relators.
    pub fn abelianized(&self) -> Vec<Vec<i64>> {
        self.relations
            .iter()
            .map(|r| {
                let mut row = vec![0i64; self.generator_count];
                for (g, e) in r.relator() {
                    row[g] += e as i64;
                }
                row
            })
            .collect()
    }
}

/// Arcs are numbered in knot order, arc 0 leaving crossing 0 under-strand.
pub fn wirtinger_presentation(d: &Diagram) -> WirtingerPresentation {
    if d.crossing_count() == 0 {
        return WirtingerPresentation { generator_count: 1, relations: Vec::new(), edge_arc: Vec::new() };
    }
    let mut edge_arc = vec![0usize; d.edge_count()];
    let mut arc = 0;
    for (n, &e) in d.traversal().iter().enumerate() {
        if n > 0 && d.tail(e).1 == 2 {
            arc += 1;
        }
        edge_arc[e] = arc;
    }
    let relations = d
        .crossings()
        .iter()
        .map(|c| WirtingerRelation {
            crossing: c.id,
            outgoing: edge_arc[c.edges[2]],
            incoming: edge_arc[c.edges[0]],
            over: edge_arc[c.edges[1]],
            handedness: c.handedness,
        })
        .collect();
    WirtingerPresentation { generator_count: arc + 1, relations, edge_arc }
}

/// Renders a word such as `g1 g3^-1`.
pub fn render_word(prefix: &str, word: &[(usize, i32)]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter()
        .map(|&(g, e)| if e == 1 { format!("{prefix}{g}") } else { format!("{prefix}{g}^{e}") })
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;
    use crate::ztorsion::{smith_normal_form, IntMatrix};

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
    const FIGURE_EIGHT: &str = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";

    #[test]
    fn dehn_shapes() {
        let p = dehn_presentation(&parse_pd(TREFOIL).unwrap()).unwrap();
        assert_eq!(p.generator_count, 4);
        assert_eq!(p.relations.len(), 3);
        let u = dehn_presentation(&parse_pd("unknot").unwrap()).unwrap();
        assert_eq!(u.generator_count, 1);
        assert!(u.relations.is_empty());
    }

    #[test]
    fn dehn_relations_abelianize_through_the_index() {
        for pd in [TREFOIL, FIGURE_EIGHT, "X[1,1,2,2]"] {
            let p = dehn_presentation(&parse_pd(pd).unwrap()).unwrap();
            let i = &p.indices;
            for r in &p.relations {
                assert_eq!(i[r.j] - i[r.k] + i[r.l] - i[r.m], 0);
                // lower quadrants sit one q-power away from the upper ones
                assert_eq!(i[r.j] - i[r.k], r.handedness.twist());
            }
        }
    }

    #[test]
    fn wirtinger_shapes() {
        let w = wirtinger_presentation(&parse_pd(TREFOIL).unwrap());
        assert_eq!(w.generator_count, 3);
        assert_eq!(w.relations.len(), 3);
        let u = wirtinger_presentation(&parse_pd("unknot").unwrap());
        assert_eq!(u.generator_count, 1);
        assert!(u.relations.is_empty());
    }

    #[test]
    fn wirtinger_abelianization_is_infinite_cyclic() {
        for pd in [TREFOIL, FIGURE_EIGHT, "X[1,1,2,2]", "X[1,4,2,5] X[3,8,4,9] X[5,10,6,1] X[9,6,10,7] X[7,2,8,3]"] {
            let w = wirtinger_presentation(&parse_pd(pd).unwrap());
            let m = IntMatrix::from_i64_rows(&w.abelianized());
            let snf = smith_normal_form(&m);
            // H_1 = Z^gens / row space: all divisors 1 and corank one
            assert_eq!(snf.rank(), w.generator_count - 1, "{pd}");
            assert!(snf.divisors().iter().all(|d| *d == 1.into()), "{pd}");
        }
    }

    #[test]
    fn words_render() {
        assert_eq!(render_word("g", &[(1, 1), (2, -1)]), "g1 g2^-1");
        assert_eq!(render_word("g", &[]), "1");
    }
}
