use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("inconsistent diagram: {0}")]
    Inconsistent(String),
}

/// One crossing of an oriented diagram.
///
/// `slots` lists the four incident edges counterclockwise, starting with the
/// incoming under-strand; slot 2 is therefore the outgoing under-strand. The
/// over-strand enters through `over_in` (1 or 3) and leaves through the
/// opposite slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub slots: [usize; 4],
    pub over_in: u8,
}

impl Crossing {
    pub fn new(slots: [usize; 4], over_in: u8) -> Self {
        debug_assert!(over_in == 1 || over_in == 3);
        Self { slots, over_in }
    }

    /// +1 when the over-strand points to the left of the under-strand
    /// (the under direction turned counterclockwise by less than a half
    /// turn meets the over direction), -1 otherwise.
    pub fn sign(&self) -> i32 {
        if self.over_in == 1 {
            1
        } else {
            -1
        }
    }

    pub fn over_out(&self) -> u8 {
        4 - self.over_in
    }

    pub fn is_incoming(&self, slot: u8) -> bool {
        slot == 0 || slot == self.over_in
    }

    /// The same crossing with the strands' heights exchanged.
    pub fn switched(&self) -> Self {
        let s = self.slots;
        if self.over_in == 1 {
            Self { slots: [s[1], s[2], s[3], s[0]], over_in: 3 }
        } else {
            Self { slots: [s[3], s[0], s[1], s[2]], over_in: 1 }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeEnd {
    pub crossing: usize,
    pub slot: u8,
}

/// An oriented link diagram stored as a planar-diagram code with a rotation
/// system. Edges are numbered `0..2c`; each edge runs from an outgoing slot
/// (its tail) to an incoming slot (its head). Crossingless components are
/// kept as a count of free loops.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotDiagram {
    crossings: Vec<Crossing>,
    tails: Vec<EdgeEnd>,
    heads: Vec<EdgeEnd>,
    free_loops: usize,
    components: usize,
    base_edge: usize,
}

impl KnotDiagram {
    /// The 0-crossing diagram with `loops` unlinked circles.
    pub fn unlink(loops: usize) -> Self {
        Self {
            crossings: Vec::new(),
            tails: Vec::new(),
            heads: Vec::new(),
            free_loops: loops,
            components: loops,
            base_edge: 0,
        }
    }

    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    pub fn from_crossings(
        crossings: Vec<Crossing>,
        free_loops: usize,
        base_edge: usize,
    ) -> Result<Self, DiagramError> {
        let edges = 2 * crossings.len();
        if crossings.is_empty() {
            return Ok(Self::unlink(free_loops));
        }
        let mut tails: Vec<Option<EdgeEnd>> = vec![None; edges];
        let mut heads: Vec<Option<EdgeEnd>> = vec![None; edges];
        for (ci, c) in crossings.iter().enumerate() {
            if c.over_in != 1 && c.over_in != 3 {
                return Err(DiagramError::Inconsistent(format!(
                    "crossing {ci} has over-strand entering at slot {}",
                    c.over_in
                )));
            }
            for slot in 0..4u8 {
                let e = c.slots[slot as usize];
                if e >= edges {
                    return Err(DiagramError::Inconsistent(format!(
                        "edge label {e} outside 0..{edges}"
                    )));
                }
                let end = EdgeEnd { crossing: ci, slot };
                let target = if c.is_incoming(slot) { &mut heads[e] } else { &mut tails[e] };
                if target.is_some() {
                    return Err(DiagramError::Inconsistent(format!(
                        "edge {e} has two {}",
                        if c.is_incoming(slot) { "heads" } else { "tails" }
                    )));
                }
                *target = Some(end);
            }
        }
        let tails: Vec<EdgeEnd> = tails
            .into_iter()
            .enumerate()
            .map(|(e, t)| t.ok_or_else(|| DiagramError::Inconsistent(format!("edge {e} has no tail"))))
            .collect::<Result<_, _>>()?;
        let heads: Vec<EdgeEnd> = heads
            .into_iter()
            .enumerate()
            .map(|(e, t)| t.ok_or_else(|| DiagramError::Inconsistent(format!("edge {e} has no head"))))
            .collect::<Result<_, _>>()?;
        if base_edge >= edges {
            return Err(DiagramError::Inconsistent("base edge out of range".into()));
        }
        let mut d = Self { crossings, tails, heads, free_loops, components: 0, base_edge };
        d.components = d.edge_cycles().len() + free_loops;
        d.check_planar()?;
        Ok(d)
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        self.tails.len()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing(&self, i: usize) -> &Crossing {
        &self.crossings[i]
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn base_edge(&self) -> usize {
        self.base_edge
    }

    pub fn tail(&self, e: usize) -> EdgeEnd {
        self.tails[e]
    }

    pub fn head(&self, e: usize) -> EdgeEnd {
        self.heads[e]
    }

    /// Edge at the other end of a slot's edge.
    pub fn opposite_end(&self, end: EdgeEnd) -> EdgeEnd {
        let e = self.crossings[end.crossing].slots[end.slot as usize];
        if self.tails[e] == end {
            self.heads[e]
        } else {
            self.tails[e]
        }
    }

    /// The edge that continues the strand after the head of `e`.
    pub fn next_edge(&self, e: usize) -> usize {
        let h = self.heads[e];
        self.crossings[h.crossing].slots[((h.slot + 2) % 4) as usize]
    }

    /// True when the head of `e` is the over-strand of its crossing.
    pub fn head_is_over(&self, e: usize) -> bool {
        self.heads[e].slot % 2 == 1
    }

    pub fn with_base_edge(mut self, base: usize) -> Self {
        assert!(base < self.edge_count() || self.edge_count() == 0);
        self.base_edge = base;
        self
    }

    pub fn writhe(&self) -> i32 {
        self.crossings.iter().map(Crossing::sign).sum()
    }

    /// Edge cycles of the successor map. The cycle through the base edge
    /// comes first and starts at it; the others start at their smallest edge.
    pub fn edge_cycles(&self) -> Vec<Vec<usize>> {
        let edges = self.edge_count();
        let mut seen = vec![false; edges];
        let mut cycles = Vec::new();
        let starts = std::iter::once(self.base_edge).chain(0..edges);
        for start in starts {
            if edges == 0 || seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut e = start;
            while !seen[e] {
                seen[e] = true;
                cycle.push(e);
                e = self.next_edge(e);
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Component index of every edge, following [`Self::edge_cycles`].
    pub fn edge_components(&self) -> Vec<usize> {
        let mut comp = vec![0; self.edge_count()];
        for (i, cycle) in self.edge_cycles().iter().enumerate() {
            for &e in cycle {
                comp[e] = i;
            }
        }
        comp
    }

    /// Faces of the plane graph as cyclic lists of `(edge, forward)` where
    /// `forward` tells whether the face walk follows the edge's orientation.
    /// Each face lies to the right of its walk.
    pub fn faces(&self) -> Vec<Vec<(usize, bool)>> {
        let n = self.crossing_count();
        let mut seen = vec![[false; 4]; n];
        let mut faces = Vec::new();
        for x in 0..n {
            for i in 0..4u8 {
                if seen[x][i as usize] {
                    continue;
                }
                let mut face = Vec::new();
                let (mut cx, mut ci) = (x, i);
                while !seen[cx][ci as usize] {
                    seen[cx][ci as usize] = true;
                    let out_slot = (ci + 1) % 4;
                    let from = EdgeEnd { crossing: cx, slot: out_slot };
                    let e = self.crossings[cx].slots[out_slot as usize];
                    let forward = self.tails[e] == from;
                    face.push((e, forward));
                    let to = self.opposite_end(from);
                    cx = to.crossing;
                    ci = to.slot;
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Number of connected pieces of the underlying 4-valent graph
    /// (free loops excluded).
    pub fn graph_pieces(&self) -> usize {
        let n = self.crossing_count();
        let mut uf = crate::util::UnionFind::new(n);
        for e in 0..self.edge_count() {
            uf.union(self.tails[e].crossing, self.heads[e].crossing);
        }
        uf.count()
    }

    fn check_planar(&self) -> Result<(), DiagramError> {
        let n = self.crossing_count();
        let f = self.faces().len();
        let expected = n + 2 * self.graph_pieces();
        if f != expected {
            return Err(DiagramError::Inconsistent(format!(
                "rotation system is not planar: {f} faces, expected {expected}"
            )));
        }
        Ok(())
    }

    /// Mirror image: every crossing switched.
    pub fn mirror(&self) -> Self {
        let crossings = self.crossings.iter().map(Crossing::switched).collect();
        Self::from_crossings(crossings, self.free_loops, self.base_edge)
            .expect("switching crossings keeps a valid diagram")
    }

    /// Relabels edges in traversal order (base edge first) and crossings in
    /// order of first visit.
    pub fn canonical(&self) -> Self {
        if self.crossings.is_empty() {
            return self.clone();
        }
        let mut edge_map = vec![usize::MAX; self.edge_count()];
        let mut cross_map = vec![usize::MAX; self.crossing_count()];
        let mut next_edge = 0;
        let mut next_cross = 0;
        for cycle in self.edge_cycles() {
            for e in cycle {
                edge_map[e] = next_edge;
                next_edge += 1;
                let x = self.heads[e].crossing;
                if cross_map[x] == usize::MAX {
                    cross_map[x] = next_cross;
                    next_cross += 1;
                }
            }
        }
        let mut crossings = vec![Crossing::new([0; 4], 1); self.crossing_count()];
        for (old, c) in self.crossings.iter().enumerate() {
            crossings[cross_map[old]] = Crossing::new(c.slots.map(|e| edge_map[e]), c.over_in);
        }
        Self::from_crossings(crossings, self.free_loops, 0).expect("relabeling keeps a valid diagram")
    }

    pub fn gauss_code(&self) -> GaussCode {
        let components = self
            .edge_cycles()
            .into_iter()
            .map(|cycle| {
                cycle
                    .into_iter()
                    .map(|e| {
                        let h = self.heads[e];
                        GaussEntry {
                            crossing: h.crossing,
                            over: h.slot % 2 == 1,
                            sign: self.crossings[h.crossing].sign() as i8,
                        }
                    })
                    .collect()
            })
            .collect();
        GaussCode { components, free_loops: self.free_loops }
    }

    /// Linking number of a two-component diagram: half the signed count of
    /// crossings between the components.
    pub fn linking_number(&self) -> Option<i64> {
        if self.components != 2 {
            return None;
        }
        if self.free_loops > 0 {
            return Some(0);
        }
        let comp = self.edge_components();
        let mut total = 0i64;
        for c in &self.crossings {
            if comp[c.slots[0]] != comp[c.slots[1]] {
                total += c.sign() as i64;
            }
        }
        Some(total / 2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GaussEntry {
    pub crossing: usize,
    pub over: bool,
    pub sign: i8,
}

/// Signed Gauss code: per component, the crossings met in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussCode {
    pub components: Vec<Vec<GaussEntry>>,
    pub free_loops: usize,
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut lines: Vec<String> = self
            .components
            .iter()
            .map(|comp| {
                comp.iter()
                    .map(|g| {
                        format!(
                            "{}{}{}",
                            if g.over { 'O' } else { 'U' },
                            g.crossing + 1,
                            if g.sign > 0 { '+' } else { '-' }
                        )
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        lines.extend(std::iter::repeat_n(String::new(), self.free_loops));
        write!(f, "{}", lines.join("\n"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Standard right-handed-table trefoil code, 0-based.
    pub(crate) fn trefoil() -> KnotDiagram {
        // X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]
        let c = vec![
            Crossing::new([0, 4, 1, 3], 3),
            Crossing::new([2, 0, 3, 5], 3),
            Crossing::new([4, 2, 5, 1], 3),
        ];
        KnotDiagram::from_crossings(c, 0, 0).unwrap()
    }

    #[test]
    fn trefoil_structure() {
        let d = trefoil();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.components(), 1);
        assert_eq!(d.faces().len(), 5);
        assert_eq!(d.writhe(), -3);
        let g = d.gauss_code();
        assert_eq!(g.components[0].len(), 6);
        assert_eq!(g.to_string(), "U1- O3- U2- O1- U3- O2-");
    }

    #[test]
    fn switching_twice_is_identity() {
        let c = Crossing::new([0, 4, 1, 3], 3);
        assert_eq!(c.switched().switched(), c);
        assert_eq!(c.switched().sign(), -c.sign());
        let d = trefoil();
        assert_eq!(d.mirror().mirror(), d);
        assert_eq!(d.mirror().writhe(), 3);
    }

    #[test]
    fn rejects_bad_codes() {
        let c = vec![Crossing::new([0, 1, 1, 0], 3)];
        assert!(KnotDiagram::from_crossings(c, 0, 0).is_err());
        let c = vec![Crossing::new([0, 4, 1, 3], 3), Crossing::new([2, 0, 3, 5], 3)];
        assert!(KnotDiagram::from_crossings(c, 0, 0).is_err());
    }

    #[test]
    fn canonical_is_idempotent() {
        let d = trefoil().with_base_edge(3);
        let c = d.canonical();
        assert_eq!(c.canonical(), c);
        assert_eq!(c.base_edge(), 0);
    }
}
