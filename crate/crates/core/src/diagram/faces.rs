use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};

use super::Diagram;

/// A face of the diagram. `corners` is the cyclic list of
/// `(crossing, quadrant)` pairs met when walking the boundary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Region {
    pub id: usize,
    pub corners: Vec<(usize, usize)>,
    /// Sorted distinct 0-based edges on the boundary.
    pub edges: Vec<usize>,
}

/// All `v + 2` faces of a diagram, indexed by region id. Region 0 is the
/// null region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Regions {
    regions: Vec<Region>,
    quadrant_region: Vec<[usize; 4]>,
}

impl Regions {
    pub fn len(&self) -> usize {
        self.regions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regions.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Region> {
        self.regions.iter()
    }

    pub fn get(&self, id: usize) -> &Region {
        &self.regions[id]
    }

    /// Region containing quadrant `quadrant` of crossing `crossing`.
    pub fn at(&self, crossing: usize, quadrant: usize) -> usize {
        self.quadrant_region[crossing][quadrant % 4]
    }

    pub fn as_slice(&self) -> &[Region] {
        &self.regions
    }
}

fn trace(d: &Diagram) -> Result<Vec<Region>> {
    let v = d.crossing_count();
    if v == 0 {
        return Ok(vec![
            Region { id: 0, corners: Vec::new(), edges: Vec::new() },
            Region { id: 1, corners: Vec::new(), edges: Vec::new() },
        ]);
    }
    let mut seen = vec![[false; 4]; v];
    let mut out = Vec::new();
    for x in 0..v {
        for i in 0..4 {
            if seen[x][i] {
                continue;
            }
            let mut corners = Vec::new();
            let mut edges = Vec::new();
            let mut cur = (x, i);
            while !seen[cur.0][cur.1] {
                seen[cur.0][cur.1] = true;
                edges.push(d.crossings()[cur.0].edges[cur.1]);
                let (y, j) = d.partner(cur.0, cur.1);
                corners.push((y, j));
                cur = (y, (j + 1) % 4);
            }
            if cur != (x, i) {
                return Err(Error::InconsistentDiagram("face trace did not close up".into()));
            }
            edges.sort_unstable();
            edges.dedup();
            out.push(Region { id: 0, corners, edges });
        }
    }
    if out.len() != v + 2 {
        return Err(Error::InconsistentDiagram(format!(
            "corner tracing found {} faces, a planar diagram with {v} crossings has {}",
            out.len(),
            v + 2
        )));
    }
    // Order by boundary edge set so that mirroring (which keeps the plane
    // graph) keeps region ids.
    out.sort_by(|a, b| {
        a.edges.cmp(&b.edges).then_with(|| min_corner(a).cmp(&min_corner(b)))
    });
    Ok(out)
}

fn min_corner(r: &Region) -> (usize, usize) {
    r.corners.iter().copied().min().unwrap_or((usize::MAX, 0))
}

fn assemble(d: &Diagram, mut traced: Vec<Region>, null: usize) -> Regions {
    let null_face = traced.remove(null);
    traced.insert(0, null_face);
    let mut quadrant_region = vec![[usize::MAX; 4]; d.crossing_count()];
    for (id, r) in traced.iter_mut().enumerate() {
        r.id = id;
        for &(x, q) in &r.corners {
            quadrant_region[x][q] = id;
        }
    }
    Regions { regions: traced, quadrant_region }
}

/// Traces the faces and picks the null region: the face with the most
/// corners, ties broken by the smallest boundary edge label.
pub fn faces(d: &Diagram) -> Result<Regions> {
    let traced = trace(d)?;
    let null = (0..traced.len())
        .max_by(|&a, &b| {
            let (ra, rb) = (&traced[a], &traced[b]);
            ra.corners
                .len()
                .cmp(&rb.corners.len())
                .then_with(|| rb.edges.first().cmp(&ra.edges.first()))
                .then_with(|| b.cmp(&a))
        })
        .expect("at least two faces");
    Ok(assemble(d, traced, null))
}

/// Like [`faces`] but declares the face at position `face` of the
/// deterministic face order (the order used before the null region is moved
/// to the front) to be the null region.
pub fn faces_with_null(d: &Diagram, face: usize) -> Result<Regions> {
    let traced = trace(d)?;
    if face >= traced.len() {
        return Err(Error::InvalidParameter(format!(
            "face {face} out of range (diagram has {} faces)",
            traced.len()
        )));
    }
    Ok(assemble(d, traced, face))
}

/// Alexander's region index: the null region has index 0 and crossing an
/// edge from its right side to its left side raises the index by one.
pub fn alexander_indices(d: &Diagram, regions: &Regions) -> Result<Vec<i64>> {
    let n = regions.len();
    if d.crossing_count() == 0 {
        return Ok(vec![0, 1]);
    }
    // (left, right) region of every edge, seen from its tail.
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    let mut sides = Vec::with_capacity(d.edge_count());
    for e in 0..d.edge_count() {
        let (x, s) = d.tail(e);
        let left = regions.at(x, s);
        let right = regions.at(x, s + 3);
        adj[right].push((left, 1));
        adj[left].push((right, -1));
        sides.push((left, right));
    }
    let mut index: Vec<Option<i64>> = vec![None; n];
    index[0] = Some(0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(r) = queue.pop_front() {
        let base = index[r].unwrap();
        for &(s, delta) in &adj[r] {
            if index[s].is_none() {
                index[s] = Some(base + delta);
                queue.push_back(s);
            }
        }
    }
    let index: Vec<i64> = index
        .into_iter()
        .map(|i| i.ok_or_else(|| Error::InconsistentDiagram("region graph is disconnected".into())))
        .collect::<Result<_>>()?;
    for (e, &(l, r)) in sides.iter().enumerate() {
        if index[l] != index[r] + 1 {
            return Err(Error::InconsistentDiagram(format!(
                "index rule fails across edge {}",
                e + 1
            )));
        }
    }
    Ok(index)
}
