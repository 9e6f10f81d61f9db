use std::cmp::Ordering;
use std::collections::HashMap;

use super::diagram::{Crossing, KnotDiagram};
use super::perm::PetalPermutation;

const DIRECTION_SCALE: f64 = (1u64 << 20) as f64;

/// Planar realization of a `p`-petal rose by straight chords.
///
/// Arc `k` (0-based here) leaves the boundary circle at angle
/// `2*pi*((k*(p-1)/2) mod p)/p` and travels through the center. Each chord is
/// shifted off the center by a small offset so that every pair of chords
/// meets in a simple crossing; consecutive arcs are joined outside the
/// circle by petals between angularly adjacent endpoints.
#[derive(Debug, Clone)]
pub struct ChordModel {
    start_index: Vec<usize>,
    directions: Vec<(i64, i64)>,
    offsets: Vec<i64>,
    order: Vec<Vec<usize>>,
}

fn cross(a: (i64, i64), b: (i64, i64)) -> i128 {
    a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128
}

fn dot(a: (i64, i64), b: (i64, i64)) -> i128 {
    a.0 as i128 * b.0 as i128 + a.1 as i128 * b.1 as i128
}

/// Position of the crossing with chord `l` along chord `k`, as a fraction
/// with positive denominator.
fn along(dirs: &[(i64, i64)], offsets: &[i64], k: usize, l: usize) -> (i128, i128) {
    let (dk, dl) = (dirs[k], dirs[l]);
    let num = offsets[k] as i128 * dot(dk, dl) - offsets[l] as i128 * dot(dk, dk);
    let den = cross(dk, dl);
    if den < 0 {
        (-num, -den)
    } else {
        (num, den)
    }
}

fn cmp_frac(a: (i128, i128), b: (i128, i128)) -> Ordering {
    (a.0 * b.1).cmp(&(b.0 * a.1))
}

impl ChordModel {
    pub fn new(p: usize) -> Self {
        assert!(p % 2 == 1, "petal count must be odd");
        let start_index: Vec<usize> = (0..p).map(|k| (k * (p - 1) / 2) % p).collect();
        let directions: Vec<(i64, i64)> = start_index
            .iter()
            .map(|&a| {
                let theta = std::f64::consts::TAU * a as f64 / p as f64 + std::f64::consts::PI;
                (
                    (DIRECTION_SCALE * theta.cos()).round() as i64,
                    (DIRECTION_SCALE * theta.sin()).round() as i64,
                )
            })
            .collect();
        for k in 0..p {
            for l in k + 1..p {
                assert!(cross(directions[k], directions[l]) != 0, "parallel chords");
            }
        }
        let candidates: [fn(i64) -> i64; 4] =
            [|k| k + 1, |k| (k + 1) * (k + 2) + 1, |k| 3 * k * k + 7 * k + 2, |k| (k + 1).pow(3) + 5 * k];
        for offset_fn in candidates {
            let offsets: Vec<i64> = (0..p as i64).map(offset_fn).collect();
            if let Some(order) = Self::crossing_order(&directions, &offsets) {
                return Self { start_index, directions, offsets, order };
            }
        }
        panic!("no generic chord offsets found for p = {p}");
    }

    fn crossing_order(dirs: &[(i64, i64)], offsets: &[i64]) -> Option<Vec<Vec<usize>>> {
        let p = dirs.len();
        let mut order = Vec::with_capacity(p);
        for k in 0..p {
            let mut partners: Vec<(usize, (i128, i128))> = (0..p)
                .filter(|&l| l != k)
                .map(|l| (l, along(dirs, offsets, k, l)))
                .collect();
            partners.sort_by(|a, b| cmp_frac(a.1, b.1));
            if partners.windows(2).any(|w| cmp_frac(w[0].1, w[1].1) == Ordering::Equal) {
                return None;
            }
            order.push(partners.into_iter().map(|(l, _)| l).collect());
        }
        Some(order)
    }

    pub fn petals(&self) -> usize {
        self.directions.len()
    }

    /// Boundary angle index of arc `k`'s starting point, in units of `2*pi/p`.
    pub fn start_index(&self, k: usize) -> usize {
        self.start_index[k]
    }

    pub fn direction(&self, k: usize) -> (i64, i64) {
        self.directions[k]
    }

    pub fn offset(&self, k: usize) -> i64 {
        self.offsets[k]
    }

    /// Arcs crossed by arc `k`, in travel order.
    pub fn crossing_order_of(&self, k: usize) -> &[usize] {
        &self.order[k]
    }

    /// Sign of the crossing between arcs `k` and `l` when `under` lies
    /// below `over`.
    pub fn crossing_sign(&self, under: usize, over: usize) -> i32 {
        if cross(self.directions[under], self.directions[over]) > 0 {
            1
        } else {
            -1
        }
    }

    /// Builds the oriented diagram for the given heights. Edge `i` enters the
    /// `i`-th crossing visited, starting on arc 1, so edge 0 is the base edge.
    pub fn diagram(&self, perm: &PetalPermutation) -> KnotDiagram {
        let p = self.petals();
        assert_eq!(perm.petals(), p);
        if p == 1 {
            return KnotDiagram::unknot();
        }
        let heights = perm.heights();
        let visits: Vec<(usize, usize)> =
            (0..p).flat_map(|k| self.order[k].iter().map(move |&l| (k, l))).collect();
        let total = visits.len();
        let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut crossings: Vec<Crossing> = Vec::with_capacity(total / 2);
        for &(k, l) in &visits {
            let key = (k.min(l), k.max(l));
            if !ids.contains_key(&key) {
                let (under, over) = if heights[k] < heights[l] { (k, l) } else { (l, k) };
                let over_in = if self.crossing_sign(under, over) > 0 { 1 } else { 3 };
                ids.insert(key, crossings.len());
                crossings.push(Crossing::new([usize::MAX; 4], over_in));
            }
        }
        for (i, &(k, l)) in visits.iter().enumerate() {
            let id = ids[&(k.min(l), k.max(l))];
            let c = &mut crossings[id];
            let (in_slot, out_slot) =
                if heights[k] < heights[l] { (0, 2) } else { (c.over_in as usize, c.over_out() as usize) };
            c.slots[in_slot] = i;
            c.slots[out_slot] = (i + 1) % total;
        }
        KnotDiagram::from_crossings(crossings, 0, 0).expect("chord model yields a planar diagram")
    }
}

/// Diagram of the petal knot with the given heights.
pub fn petal_to_diagram(perm: &PetalPermutation) -> KnotDiagram {
    ChordModel::new(perm.petals()).diagram(perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn consecutive_arcs_meet_at_adjacent_boundary_points() {
        for p in [3usize, 5, 7, 9, 11] {
            let m = ChordModel::new(p);
            for k in 0..p {
                let next = (k + 1) % p;
                // end of arc k sits at start_index + p/2 turns, i.e. 2*start + p in units of pi/p
                let end = (2 * m.start_index(k) + p) % (2 * p);
                let start = (2 * m.start_index(next)) % (2 * p);
                let gap = (end as i64 - start as i64).rem_euclid(2 * p as i64);
                assert!(gap == 1 || gap == 2 * p as i64 - 1, "p={p} k={k} gap={gap}");
            }
        }
    }

    #[test]
    fn every_pair_crosses_once() {
        for p in [1usize, 3, 5, 7, 9, 13] {
            let perm = PetalPermutation::identity(p).unwrap();
            let d = petal_to_diagram(&perm);
            assert_eq!(d.crossing_count(), p * (p - 1) / 2);
            assert_eq!(d.components(), 1);
            let m = ChordModel::new(p);
            for k in 0..p {
                assert_eq!(m.crossing_order_of(k).len(), p - 1);
            }
        }
    }

    #[test]
    fn crossing_signs_follow_parity_and_heights() {
        // For arcs k < l the sign is (-1)^(k+l) * sgn(h(k) - h(l)).
        let p = 7;
        let m = ChordModel::new(p);
        for k in 0..p {
            for l in k + 1..p {
                let parity = if (k + l) % 2 == 0 { 1 } else { -1 };
                assert_eq!(m.crossing_sign(l, k), parity, "k over l");
                assert_eq!(m.crossing_sign(k, l), -parity, "l over k");
            }
        }
    }
}
