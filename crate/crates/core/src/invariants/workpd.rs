//! Mutable planar-diagram code used by the exponential oracles.
//!
//! Labels are the edge numbers of the source diagram; removing crossings
//! merges labels, so every live label keeps exactly one tail and one head.

use crate::petal::{Crossing, KnotDiagram};
use crate::util::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct WorkPd {
    pub xs: Vec<Crossing>,
    pub loops: usize,
    labels: usize,
}

type End = (usize, u8);

impl WorkPd {
    pub fn from_diagram(d: &KnotDiagram) -> Self {
        Self { xs: d.crossings().to_vec(), loops: d.free_loops(), labels: d.edge_count() }
    }

    /// Both ends of every label as `[tail, head]`.
    fn ends(&self) -> Vec<[Option<End>; 2]> {
        let mut ends = vec![[None, None]; self.labels];
        for (x, c) in self.xs.iter().enumerate() {
            for s in 0..4u8 {
                let idx = usize::from(c.is_incoming(s));
                ends[c.slots[s as usize]][idx] = Some((x, s));
            }
        }
        ends
    }

    fn other_end(&self, ends: &[[Option<End>; 2]], (x, s): End) -> End {
        let l = self.xs[x].slots[s as usize];
        let [t, h] = ends[l];
        if t == Some((x, s)) {
            h.unwrap()
        } else {
            t.unwrap()
        }
    }

    /// Number of closed components, free loops included.
    pub fn components(&self) -> usize {
        let mut uf = UnionFind::new(self.labels);
        for c in &self.xs {
            uf.union(c.slots[0], c.slots[2]);
            uf.union(c.slots[1], c.slots[3]);
        }
        let mut live = vec![false; self.labels];
        for c in &self.xs {
            for &l in &c.slots {
                live[l] = true;
            }
        }
        let mut roots: Vec<usize> = (0..self.labels).filter(|&l| live[l]).map(|l| uf.find(l)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len() + self.loops
    }

    /// Standard-convention writhe, the negative of the stored signs.
    pub fn standard_writhe(&self) -> i64 {
        -self.xs.iter().map(|c| c.sign() as i64).sum::<i64>()
    }

    /// Renames `from` to `to` in every remaining crossing and in `pending`.
    fn rename(&mut self, from: usize, to: usize, pending: &mut [usize]) {
        for c in &mut self.xs {
            for l in &mut c.slots {
                if *l == from {
                    *l = to;
                }
            }
        }
        for l in pending {
            if *l == from {
                *l = to;
            }
        }
    }

    /// Removes crossings (indices distinct) and joins the given label pairs
    /// in order. A pair whose labels coincide closes a free loop.
    fn excise(&mut self, mut remove: Vec<usize>, joins: &[(usize, usize)]) {
        remove.sort_unstable_by(|a, b| b.cmp(a));
        for x in remove {
            self.xs.swap_remove(x);
        }
        let mut pending: Vec<usize> = joins.iter().flat_map(|&(a, b)| [a, b]).collect();
        for i in 0..joins.len() {
            let (a, b) = (pending[2 * i], pending[2 * i + 1]);
            if a == b {
                self.loops += 1;
            } else {
                self.rename(b, a, &mut pending);
            }
        }
    }

    pub fn switch(&mut self, x: usize) {
        self.xs[x] = self.xs[x].switched();
    }

    /// Oriented smoothing: incoming under joins outgoing over and incoming
    /// over joins outgoing under.
    pub fn smooth(&mut self, x: usize) {
        let c = self.xs[x];
        let s = c.slots;
        let joins = [(s[0], s[c.over_out() as usize]), (s[c.over_in as usize], s[2])];
        self.excise(vec![x], &joins);
    }

    fn try_r1(&mut self) -> bool {
        for x in 0..self.xs.len() {
            let s = self.xs[x].slots;
            for i in 0..4 {
                if s[i] == s[(i + 1) % 4] {
                    let (u, v) = (s[(i + 2) % 4], s[(i + 3) % 4]);
                    self.excise(vec![x], &[(u, v)]);
                    return true;
                }
            }
        }
        false
    }

    fn try_r2(&mut self) -> bool {
        let ends = self.ends();
        for x in 0..self.xs.len() {
            for i in 0..4u8 {
                let (y, j) = self.other_end(&ends, (x, (i + 1) % 4));
                if y == x {
                    continue;
                }
                // the face with corner (x, i) is a bigon through y
                if self.other_end(&ends, (y, (j + 1) % 4)) != (x, i) {
                    continue;
                }
                if (i + 1) % 2 != j % 2 {
                    continue;
                }
                let (sx, sy) = (self.xs[x].slots, self.xs[y].slots);
                let a = sx[((i + 3) % 4) as usize];
                let b = sy[((j + 2) % 4) as usize];
                let c = sx[((i + 2) % 4) as usize];
                let d = sy[((j + 3) % 4) as usize];
                self.excise(vec![x, y], &[(a, b), (c, d)]);
                return true;
            }
        }
        false
    }

    /// Applies Reidemeister I and II reductions until none applies.
    pub fn simplify(&mut self) {
        while self.try_r1() || self.try_r2() {}
    }

    /// First crossing met under-first when the components are traversed in
    /// order of their smallest label, each from that label.
    pub fn first_ascending(&self) -> Option<usize> {
        let ends = self.ends();
        let mut seen_label = vec![false; self.labels];
        let mut seen_cross = vec![false; self.xs.len()];
        for start in 0..self.labels {
            if seen_label[start] || ends[start][1].is_none() {
                continue;
            }
            let mut l = start;
            while !seen_label[l] {
                seen_label[l] = true;
                let (x, s) = ends[l][1].unwrap();
                if !seen_cross[x] {
                    if s == 0 {
                        return Some(x);
                    }
                    seen_cross[x] = true;
                }
                l = self.xs[x].slots[((s + 2) % 4) as usize];
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::petal::Crossing;

    fn trefoil() -> KnotDiagram {
        let c = vec![
            Crossing::new([0, 4, 1, 3], 3),
            Crossing::new([2, 0, 3, 5], 3),
            Crossing::new([4, 2, 5, 1], 3),
        ];
        KnotDiagram::from_crossings(c, 0, 0).unwrap()
    }

    #[test]
    fn smoothing_trefoil_gives_two_components() {
        let mut w = WorkPd::from_diagram(&trefoil());
        assert_eq!(w.components(), 1);
        w.smooth(0);
        assert_eq!(w.xs.len(), 2);
        assert_eq!(w.components(), 2);
    }

    #[test]
    fn trefoil_is_reduced() {
        let mut w = WorkPd::from_diagram(&trefoil());
        w.simplify();
        assert_eq!(w.xs.len(), 3);
    }

    #[test]
    fn switched_trefoil_simplifies_to_unknot() {
        let mut w = WorkPd::from_diagram(&trefoil());
        w.switch(0);
        w.simplify();
        assert_eq!(w.xs.len(), 0);
        assert_eq!(w.loops, 1);
    }

    #[test]
    fn kink_is_removed() {
        // X[1,1,2,2] style curl: one crossing, one loop
        let d = KnotDiagram::from_crossings(vec![Crossing::new([0, 0, 1, 1], 3)], 0, 0);
        // slots: 0 in-under, 1 out-over (over_in = 3), so label 0 runs slot1 -> slot0
        let d = d.unwrap();
        let mut w = WorkPd::from_diagram(&d);
        w.simplify();
        assert_eq!((w.xs.len(), w.loops, w.components()), (0, 1, 1));
    }
}
