use serde::{Deserialize, Serialize};

use super::classify::{CrossingLabels, CrossingType};
use super::split::is_three_edge_connected;
use super::PetalizeError;
use crate::petal::{KnotDiagram, PetalPermutation};
use crate::util::UnionFind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveVariant {
    /// Segments on all AD edges and on a spanning tree of same-type edges.
    Tree,
    /// Segments on every edge.
    Simple,
}

impl std::str::FromStr for CurveVariant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "tree" => Ok(Self::Tree),
            "simple" => Ok(Self::Simple),
            _ => Err(format!("unknown variant {s:?}, expected tree or simple")),
        }
    }
}

/// Faces of the diagram, each lying to the right of its walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneGraphView {
    pub faces: Vec<Vec<(usize, bool)>>,
    pub outer_face: usize,
    /// Face walking each edge forwards.
    pub right: Vec<usize>,
    /// Face walking each edge backwards.
    pub left: Vec<usize>,
}

impl PlaneGraphView {
    pub fn new(d: &KnotDiagram) -> Self {
        let faces = d.faces();
        let mut right = vec![0; d.edge_count()];
        let mut left = vec![0; d.edge_count()];
        for (f, walk) in faces.iter().enumerate() {
            for &(e, fwd) in walk {
                if fwd {
                    right[e] = f;
                } else {
                    left[e] = f;
                }
            }
        }
        // the longest walk is as good an unbounded face as any
        let outer_face = (0..faces.len()).max_by_key(|&f| (faces[f].len(), usize::MAX - f)).unwrap_or(0);
        Self { faces, outer_face, right, left }
    }

    /// `v - e + f` for a connected diagram.
    pub fn euler_characteristic(&self, crossings: usize) -> i64 {
        crossings as i64 - 2 * crossings as i64 + self.faces.len() as i64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeType {
    AD,
    AA,
    DD,
}

/// The dual graph with the edge sets chosen for the curve: `g` (AD edges,
/// possibly with the base edge) and `t` (same-type edges completing a
/// spanning tree).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraphView {
    pub ends: Vec<(usize, usize)>,
    pub types: Vec<EdgeType>,
    pub g: Vec<usize>,
    pub t: Vec<usize>,
    /// Size of the spanning forest of the AD edges.
    pub forest: usize,
    /// Whether the base edge was added to `g` to put it on the curve.
    pub augmented: bool,
}

impl DualGraphView {
    pub fn new(d: &KnotDiagram, plane: &PlaneGraphView, labels: &CrossingLabels) -> Self {
        let ends = (0..d.edge_count()).map(|e| (plane.right[e], plane.left[e])).collect();
        let types = (0..d.edge_count())
            .map(|e| {
                match (labels.labels[d.tail(e).crossing], labels.labels[d.head(e).crossing]) {
                    (CrossingType::A, CrossingType::A) => EdgeType::AA,
                    (CrossingType::D, CrossingType::D) => EdgeType::DD,
                    _ => EdgeType::AD,
                }
            })
            .collect();
        Self { ends, types, g: Vec::new(), t: Vec::new(), forest: 0, augmented: false }
    }

    /// Dual of a 3-edge-connected diagram has no loops or parallel edges.
    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.ends.iter().all(|&(a, b)| a != b && seen.insert((a.min(b), a.max(b))))
    }

    /// Number of segments the curve places on edge `e`.
    pub fn crossings_on(&self, e: usize) -> usize {
        if self.types[e] == EdgeType::AD {
            1
        } else if self.g.contains(&e) || self.t.contains(&e) {
            2
        } else {
            0
        }
    }
}

fn select_tree(dual: &mut DualGraphView, faces: usize, base: usize) -> Result<(), PetalizeError> {
    let mut uf = UnionFind::new(faces);
    for e in 0..dual.types.len() {
        if dual.types[e] == EdgeType::AD {
            dual.g.push(e);
            let (a, b) = dual.ends[e];
            if uf.union(a, b) {
                dual.forest += 1;
            }
        }
    }
    let m = dual.g.len() / 2;
    if dual.forest < m + 1 {
        return Err(PetalizeError::Internal(format!("AD forest has {} edges, fewer than m+1 = {}", dual.forest, m + 1)));
    }
    // the base point must lie on the curve
    if dual.types[base] != EdgeType::AD {
        let (a, b) = dual.ends[base];
        if uf.union(a, b) {
            dual.t.push(base);
        } else {
            dual.g.push(base);
            dual.augmented = true;
        }
    }
    for e in 0..dual.types.len() {
        if dual.types[e] != EdgeType::AD && e != base {
            let (a, b) = dual.ends[e];
            if uf.union(a, b) {
                dual.t.push(e);
            }
        }
    }
    Ok(())
}

/// An intersection of the curve with the diagram: the `index`-th crossing
/// point along `edge`, counted in the edge's direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Intersection {
    pub edge: usize,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatingCurve {
    pub labels: CrossingLabels,
    pub variant: CurveVariant,
    pub intersections: Vec<Intersection>,
    /// Intersection ids on each edge, in the edge's direction.
    pub per_edge: Vec<Vec<usize>>,
    /// Intersection ids in the order met along the curve, oriented so that
    /// the A side is on the right.
    pub curve: Vec<usize>,
    pub start_intersection: usize,
    /// Number of circles before merging.
    pub circles: usize,
}

impl SeparatingCurve {
    pub fn total(&self) -> usize {
        self.intersections.len()
    }

    /// Checks that the curve separates A crossings from D crossings: the
    /// side flips at every intersection and matches the label at each end
    /// of every edge.
    pub fn separates(&self, d: &KnotDiagram) -> bool {
        let single_cycle = {
            let mut c = self.curve.clone();
            c.sort_unstable();
            c == (0..self.intersections.len()).collect::<Vec<_>>()
        };
        single_cycle
            && self.intersections.len() % 2 == 0
            && (0..d.edge_count()).all(|e| {
                let k = self.per_edge[e].len();
                let differ = self.labels.labels[d.tail(e).crossing] != self.labels.labels[d.head(e).crossing];
                k <= 2 && (k % 2 == 1) == differ
            })
    }
}

/// Tips are numbered `2*segment + side`, side 1 lying in the right face.
type Tip = usize;

struct Piece {
    from: Tip,
    to: Tip,
}

/// Places segments, joins their tips inside faces, and merges the circles
/// into one.
pub fn build_separating_curve(
    d: &KnotDiagram,
    labels: &CrossingLabels,
    variant: CurveVariant,
) -> Result<SeparatingCurve, PetalizeError> {
    if labels.is_uniform() {
        return Err(PetalizeError::NotSeparable);
    }
    if variant == CurveVariant::Tree && !is_three_edge_connected(d) {
        return Err(PetalizeError::NotThreeEdgeConnected);
    }
    let plane = PlaneGraphView::new(d);
    let mut dual = DualGraphView::new(d, &plane, labels);
    match variant {
        CurveVariant::Tree => select_tree(&mut dual, plane.faces.len(), labels.base_edge)?,
        CurveVariant::Simple => {
            for e in 0..d.edge_count() {
                if dual.types[e] == EdgeType::AD {
                    dual.g.push(e);
                } else {
                    dual.t.push(e);
                }
            }
        }
    }

    let mut intersections = Vec::new();
    let mut per_edge = vec![Vec::new(); d.edge_count()];
    for e in 0..d.edge_count() {
        for index in 0..dual.crossings_on(e) {
            per_edge[e].push(intersections.len());
            intersections.push(Intersection { edge: e, index });
        }
    }

    // Inside each face the tips split the boundary into arcs alternately on
    // the A and D side; every D arc is capped by a piece running from its
    // first tip to its last, which keeps the A side on the right.
    let mut faces: Vec<Vec<Piece>> = Vec::with_capacity(plane.faces.len());
    for walk in &plane.faces {
        let mut tips: Vec<(Tip, CrossingType)> = Vec::new();
        let mut first_side = None;
        for &(e, fwd) in walk {
            let start = if fwd { d.tail(e) } else { d.head(e) };
            let mut side = labels.labels[start.crossing];
            first_side.get_or_insert(side);
            let segs: Vec<usize> = if fwd { per_edge[e].clone() } else { per_edge[e].iter().rev().copied().collect() };
            for s in segs {
                side = flip(side);
                tips.push((2 * s + usize::from(fwd), side));
            }
        }
        let k = tips.len();
        let pieces = (0..k)
            .filter(|&i| tips[i].1 == CrossingType::D)
            .map(|i| Piece { from: tips[i].0, to: tips[(i + 1) % k].0 })
            .collect();
        faces.push(pieces);
    }

    let tips = 2 * intersections.len();
    let trace = |faces: &[Vec<Piece>], extra: &[Piece]| -> Result<Vec<usize>, PetalizeError> {
        let mut next = vec![usize::MAX; tips];
        for p in faces.iter().flatten().chain(extra) {
            next[p.from] = p.to;
        }
        // circle id of every segment
        let mut circle = vec![usize::MAX; intersections.len()];
        let mut count = 0;
        for s in 0..intersections.len() {
            if circle[s] != usize::MAX {
                continue;
            }
            let mut tip = if next[2 * s] != usize::MAX { 2 * s } else { 2 * s + 1 };
            loop {
                let end = next[tip];
                if end == usize::MAX {
                    return Err(PetalizeError::Internal("segment tips are not joined consistently".into()));
                }
                let seg = end / 2;
                if circle[seg] != usize::MAX {
                    break;
                }
                circle[seg] = count;
                tip = end ^ 1;
            }
            count += 1;
        }
        Ok(circle)
    };

    let circle_of = trace(&faces, &[])?;
    let circles = circle_of.iter().copied().max().map_or(0, |c| c + 1);
    let mut uf = UnionFind::new(circles);
    let mut parked: Vec<Piece> = Vec::new();
    let mut merged = true;
    while merged {
        merged = false;
        for pieces in &mut faces {
            let mut i = 0;
            while pieces.len() > 1 && i < pieces.len() {
                let j = (i + 1) % pieces.len();
                let (ci, cj) = (circle_of[pieces[i].from / 2], circle_of[pieces[j].from / 2]);
                if uf.union(ci, cj) {
                    // band between neighbouring caps
                    let long = Piece { from: pieces[i].from, to: pieces[j].to };
                    parked.push(Piece { from: pieces[j].from, to: pieces[i].to });
                    pieces[i] = long;
                    pieces.remove(j);
                    merged = true;
                } else {
                    i += 1;
                }
            }
        }
    }
    if uf.count() != 1 {
        return Err(PetalizeError::Internal(format!("{} circles remain after merging", uf.count())));
    }

    let mut next = vec![usize::MAX; tips];
    for p in faces.iter().flatten().chain(&parked) {
        next[p.from] = p.to;
    }
    let base_segs = &per_edge[labels.base_edge];
    let start_intersection = *base_segs.first().unwrap_or(&0);
    let mut tip = if next[2 * start_intersection] != usize::MAX { 2 * start_intersection } else { 2 * start_intersection + 1 };
    let mut curve = Vec::with_capacity(intersections.len());
    curve.push(start_intersection);
    loop {
        let end = next[tip];
        let seg = end / 2;
        if seg == start_intersection || curve.len() > intersections.len() {
            break;
        }
        curve.push(seg);
        tip = end ^ 1;
    }
    let curve_ok = curve.len() == intersections.len();
    let out = SeparatingCurve {
        labels: labels.clone(),
        variant,
        intersections,
        per_edge,
        curve,
        start_intersection,
        circles,
    };
    if !curve_ok || !out.separates(d) {
        return Err(PetalizeError::Internal("merged curve is not a single separating circle".into()));
    }
    Ok(out)
}

fn flip(t: CrossingType) -> CrossingType {
    match t {
        CrossingType::A => CrossingType::D,
        CrossingType::D => CrossingType::A,
    }
}

/// Reads the petal permutation off the curve with B at `start`: the other
/// intersections are numbered along the curve, then listed in the order the
/// knot meets them from B.
pub fn curve_to_permutation_from(
    d: &KnotDiagram,
    curve: &SeparatingCurve,
    start: usize,
) -> Result<PetalPermutation, PetalizeError> {
    let total = curve.total();
    let at = curve.curve.iter().position(|&s| s == start).ok_or(PetalizeError::Internal("start is not on the curve".into()))?;
    let mut label = vec![0; total];
    for k in 1..total {
        label[curve.curve[(at + k) % total]] = k;
    }
    let edge = curve.intersections[start].edge;
    let mut along: Vec<usize> = Vec::with_capacity(total);
    let mut e = edge;
    for _ in 0..d.edge_count() {
        along.extend(&curve.per_edge[e]);
        e = d.next_edge(e);
    }
    let b = along.iter().position(|&s| s == start).expect("start lies on its edge");
    let heights = (1..total).map(|k| label[along[(b + k) % total]]).collect();
    Ok(PetalPermutation::new(heights)?)
}

pub fn curve_to_permutation(d: &KnotDiagram, curve: &SeparatingCurve) -> Result<PetalPermutation, PetalizeError> {
    curve_to_permutation_from(d, curve, curve.start_intersection)
}
