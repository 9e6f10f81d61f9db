//! Petal permutations for knots and two-component links, and the
//! combinatorial diagrams they determine.

mod chord;
mod diagram;
mod perm;

pub use chord::{petal_to_diagram, ChordModel};
pub use diagram::{Crossing, DiagramError, EdgeEnd, GaussCode, GaussEntry, KnotDiagram};
pub use perm::{LinkPetalPermutation, PermError, PetalPermutation, Symmetry};

pub fn make_petal(heights: Vec<usize>) -> Result<PetalPermutation, PermError> {
    PetalPermutation::new(heights)
}

pub fn make_link(heights: Vec<usize>, m: usize, n: usize) -> Result<LinkPetalPermutation, PermError> {
    LinkPetalPermutation::new(heights, m, n)
}

pub fn apply_symmetry(perm: &PetalPermutation, sym: Symmetry) -> PetalPermutation {
    perm.apply_symmetry(sym)
}

pub fn stabilize(perm: &PetalPermutation, position: usize, level: usize) -> Result<PetalPermutation, PermError> {
    perm.stabilize(position, level)
}
