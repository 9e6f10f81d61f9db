use serde::{Deserialize, Serialize};

use super::PetalizeError;
use crate::petal::KnotDiagram;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CrossingType {
    /// Under-strand visited first.
    A,
    /// Over-strand visited first.
    D,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingLabels {
    pub labels: Vec<CrossingType>,
    pub base_edge: usize,
}

impl CrossingLabels {
    /// True when every crossing has the same type, so the knot is trivial.
    pub fn is_uniform(&self) -> bool {
        self.labels.windows(2).all(|w| w[0] == w[1])
    }

    pub fn count(&self, t: CrossingType) -> usize {
        self.labels.iter().filter(|&&l| l == t).count()
    }
}

/// Labels each crossing by the strand met first when travelling from the
/// start of `base`.
pub fn classify_crossings(d: &KnotDiagram, base: usize) -> Result<CrossingLabels, PetalizeError> {
    if d.components() != 1 {
        return Err(PetalizeError::MultiComponent(d.components()));
    }
    let n = d.crossing_count();
    let mut labels: Vec<Option<CrossingType>> = vec![None; n];
    let mut e = base;
    for _ in 0..d.edge_count() {
        let x = d.head(e).crossing;
        if labels[x].is_none() {
            labels[x] = Some(if d.head_is_over(e) { CrossingType::D } else { CrossingType::A });
        }
        e = d.next_edge(e);
    }
    Ok(CrossingLabels { labels: labels.into_iter().map(|l| l.expect("single component visits all")).collect(), base_edge: base })
}
