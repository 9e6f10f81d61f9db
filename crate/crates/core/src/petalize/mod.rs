//! Turning a knot diagram into a petal permutation with at most `2c - 1`
//! petals.
//!
//! Crossings are split into ascending (A) and descending (D) ones as seen
//! from the base edge. A closed curve separating the two kinds, meeting the
//! diagram once on every AD edge and twice on a spanning tree of the other
//! edges in the dual graph, is read off as a permutation: its intersections
//! are numbered along the curve and listed in the order the knot meets them.
//! Diagrams with a 2-edge cut are split into connected summands first.

mod classify;
mod curve;
mod split;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use classify::{classify_crossings, CrossingLabels, CrossingType};
pub use curve::{
    build_separating_curve, curve_to_permutation, curve_to_permutation_from, CurveVariant, DualGraphView, EdgeType,
    Intersection, PlaneGraphView, SeparatingCurve,
};
pub use split::{find_two_edge_cut, is_three_edge_connected, split_connected_sum};

use crate::petal::{KnotDiagram, PermError, PetalPermutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PetalizeError {
    #[error("diagram has {0} components, expected a knot")]
    MultiComponent(usize),
    #[error("all crossings have the same type")]
    NotSeparable,
    #[error("diagram has a 2-edge cut")]
    NotThreeEdgeConnected,
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("petalize failed: {0}")]
    Internal(String),
}

/// `π # σ`: the arc of height `p` in `π` is replaced by the arcs of `σ`
/// raised by `p - 1`.
pub fn connect_sum_perms(pi: &PetalPermutation, sigma: &PetalPermutation) -> PetalPermutation {
    let p = pi.petals();
    let mut heights = Vec::with_capacity(p + sigma.petals() - 1);
    for &h in pi.heights() {
        if h == p {
            heights.extend(sigma.heights().iter().map(|&s| s + p - 1));
        } else {
            heights.push(h);
        }
    }
    PetalPermutation::new(heights).expect("block substitution keeps a permutation of odd length")
}

/// One summand of a petalized diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub crossings: usize,
    pub perm: PetalPermutation,
    /// Curve intersections, absent when the factor is a trivial diagram.
    pub intersections: Option<usize>,
    pub circles: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PetalizeReport {
    pub perm: PetalPermutation,
    pub variant: CurveVariant,
    pub factors: Vec<Factor>,
}

fn petalize_factor(d: &KnotDiagram, variant: CurveVariant) -> Result<Factor, PetalizeError> {
    let labels = classify_crossings(d, d.base_edge())?;
    if d.crossing_count() == 0 || labels.is_uniform() {
        return Ok(Factor { crossings: d.crossing_count(), perm: PetalPermutation::identity(1).expect("odd"), intersections: None, circles: None });
    }
    let curve = build_separating_curve(d, &labels, variant)?;
    Ok(Factor {
        crossings: d.crossing_count(),
        perm: curve_to_permutation(d, &curve)?,
        intersections: Some(curve.total()),
        circles: Some(curve.circles),
    })
}

pub fn petalize_with(d: &KnotDiagram, variant: CurveVariant) -> Result<PetalizeReport, PetalizeError> {
    if d.components() != 1 {
        return Err(PetalizeError::MultiComponent(d.components()));
    }
    let shortcut = d.crossing_count() == 0 || classify_crossings(d, d.base_edge())?.is_uniform();
    let factors = if shortcut {
        vec![Factor { crossings: d.crossing_count(), perm: PetalPermutation::identity(1).expect("odd"), intersections: None, circles: None }]
    } else {
        split_connected_sum(d).iter().map(|f| petalize_factor(f, variant)).collect::<Result<Vec<_>, _>>()?
    };
    let perm = factors
        .iter()
        .fold(PetalPermutation::identity(1).expect("odd"), |acc, f| connect_sum_perms(&acc, &f.perm));
    Ok(PetalizeReport { perm, variant, factors })
}

/// A petal permutation of the knot drawn by `d`, with at most
/// `2 * crossings - 1` petals.
pub fn petalize(d: &KnotDiagram) -> Result<PetalPermutation, PetalizeError> {
    Ok(petalize_with(d, CurveVariant::Tree)?.perm)
}
