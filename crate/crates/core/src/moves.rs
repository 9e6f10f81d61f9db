//! Smoothing a petal knot at a pair of adjacent heights, adjacent-height
//! swaps, and the bookkeeping that relates the change in `c2` to linking
//! numbers of smoothings.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::invariants::{linking_number, perm_c2, InvariantError};
use crate::petal::{ChordModel, LinkPetalPermutation, PermError, PetalPermutation, Symmetry};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("swap index {t} outside 1..={max}")]
    OutOfRange { t: usize, max: usize },
    #[error("swaps at heights {0} and {1} are not disjoint")]
    NotDisjoint(usize, usize),
    #[error("order is not a permutation of the swaps")]
    BadOrder,
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

/// The transposition `(t, t+1)` of heights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AdjacentSwap {
    pub t: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

/// Result of smoothing the crossing between the arcs of heights `t` and
/// `t+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothedLink {
    pub m: usize,
    pub link: LinkPetalPermutation,
    pub merged_side: Side,
    pub d: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapEffect {
    pub epsilon: i64,
    pub lk: i64,
    pub delta_c2: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapTerm {
    pub t: usize,
    pub eps: i64,
    pub lk: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapBatchReport {
    pub k: usize,
    pub terms: Vec<SwapTerm>,
    pub delta_c2: i64,
    pub residual: i64,
}

impl SwapBatchReport {
    /// `k(k-1)/2`, the largest residual allowed for `k` disjoint swaps.
    pub fn residual_bound(&self) -> i64 {
        (self.k * self.k.saturating_sub(1) / 2) as i64
    }

    pub fn within_bound(&self) -> bool {
        self.residual.abs() <= self.residual_bound()
    }
}

fn check_t(perm: &PetalPermutation, t: usize) -> Result<(), MoveError> {
    let max = perm.petals().saturating_sub(1);
    if t == 0 || t > max {
        return Err(MoveError::OutOfRange { t, max });
    }
    Ok(())
}

/// Smooths `perm` at the crossing of heights `t` and `t+1`.
///
/// Heights are rotated so that the pair becomes `{2n, 2n+1}`. With `a`, `b`
/// the positions of `2n` and `2n+1`, segment A holds the arcs strictly after
/// `a` up to `b` (cyclically) and segment B the rest; the merged arc, of
/// height `2n`, joins the odd segment.
pub fn smooth(perm: &PetalPermutation, t: usize) -> Result<SmoothedLink, MoveError> {
    check_t(perm, t)?;
    let p = perm.petals();
    let top = p - 1;
    let mut rotated = perm.clone();
    for _ in t..top {
        rotated = rotated.apply_symmetry(Symmetry::RotateValues);
    }
    let h = rotated.heights();
    let a = rotated.position_of(top) - 1;
    let b = rotated.position_of(p) - 1;
    let between = |from: usize, to: usize| {
        let mut out = Vec::new();
        let mut i = (from + 1) % p;
        while i != to {
            out.push(h[i]);
            i = (i + 1) % p;
        }
        out
    };
    let mut seg_a = between(a, b);
    let mut seg_b = between(b, a);
    let merged_side = if seg_a.len() % 2 == 1 {
        seg_a.push(top);
        Side::A
    } else {
        seg_b.push(top);
        Side::B
    };
    let m = seg_a.len() / 2;
    let n = seg_b.len() / 2;
    let heights: Vec<usize> = seg_a.into_iter().chain(seg_b).collect();
    let pa = perm.position_of(t);
    let pb = perm.position_of(t + 1);
    Ok(SmoothedLink { m, link: LinkPetalPermutation::new(heights, m, n)?, merged_side, d: pa.abs_diff(pb) / 2 })
}

/// Sign of the crossing exchanged by the swap `(t, t+1)`, in the diagram of
/// `perm`.
pub fn swap_crossing_sign(perm: &PetalPermutation, t: usize) -> Result<i64, MoveError> {
    check_t(perm, t)?;
    let model = ChordModel::new(perm.petals());
    let under = perm.position_of(t) - 1;
    let over = perm.position_of(t + 1) - 1;
    Ok(model.crossing_sign(under, over) as i64)
}

/// `ε` of the swap, from the sign `σ` of the crossing it changes: `ε = σ`
/// when the merged arc of the smoothing joins segment B and `ε = -σ` when it
/// joins segment A (the A-first numbering of the link shifts the parity of
/// one component). With this, `c2(swapped) - c2(perm) = ε lk`.
pub fn swap_epsilon(perm: &PetalPermutation, t: usize) -> Result<i64, MoveError> {
    let sigma = swap_crossing_sign(perm, t)?;
    Ok(match smooth(perm, t)?.merged_side {
        Side::A => -sigma,
        Side::B => sigma,
    })
}

/// `ε` and the linking number of the smoothing, without computing `c2`.
pub fn swap_term(perm: &PetalPermutation, t: usize) -> Result<SwapTerm, MoveError> {
    let smoothed = smooth(perm, t)?;
    let lk = linking_number(&smoothed.link)?;
    let sigma = swap_crossing_sign(perm, t)?;
    let eps = if smoothed.merged_side == Side::A { -sigma } else { sigma };
    Ok(SwapTerm { t, eps, lk })
}

pub fn swap_effect(perm: &PetalPermutation, t: usize) -> Result<SwapEffect, MoveError> {
    let term = swap_term(perm, t)?;
    let swapped = perm.swap_heights(t)?;
    let delta_c2 = perm_c2(&swapped)? - perm_c2(perm)?;
    Ok(SwapEffect { epsilon: term.eps, lk: term.lk, delta_c2 })
}

/// Applies the transpositions `(2i-1, 2i)` for every selected `i` (1-based
/// indices into `mask`).
pub fn perform_swaps(perm: &PetalPermutation, mask: &[bool]) -> Result<PetalPermutation, MoveError> {
    let p = perm.petals();
    if let Some(last) = mask.iter().rposition(|&b| b) {
        if 2 * (last + 1) > p {
            return Err(MoveError::OutOfRange { t: 2 * last + 1, max: p.saturating_sub(1) });
        }
    }
    let heights = perm
        .heights()
        .iter()
        .map(|&h| {
            let i = (h - 1) / 2;
            if i < mask.len() && mask[i] && 2 * i + 2 <= p {
                if h % 2 == 1 {
                    h + 1
                } else {
                    h - 1
                }
            } else {
                h
            }
        })
        .collect();
    Ok(PetalPermutation::new(heights)?)
}

/// Compares the total change of `c2` under several disjoint swaps with the
/// sum of the single-swap predictions `ε_i lk_i`, all taken on `perm`.
pub fn error_decomposition(
    perm: &PetalPermutation,
    swaps: &[AdjacentSwap],
    order: &[usize],
) -> Result<SwapBatchReport, MoveError> {
    for s in swaps {
        check_t(perm, s.t)?;
    }
    for (i, a) in swaps.iter().enumerate() {
        for b in &swaps[i + 1..] {
            if a.t.abs_diff(b.t) < 2 {
                return Err(MoveError::NotDisjoint(a.t.min(b.t), a.t.max(b.t)));
            }
        }
    }
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..swaps.len()).collect::<Vec<_>>() {
        return Err(MoveError::BadOrder);
    }
    let terms = swaps.iter().map(|s| swap_term(perm, s.t)).collect::<Result<Vec<_>, _>>()?;
    let mut current = perm.clone();
    for &i in order {
        current = current.swap_heights(swaps[i].t)?;
    }
    let delta_c2 = perm_c2(&current)? - perm_c2(perm)?;
    let predicted: i64 = terms.iter().map(|t| t.eps * t.lk).sum();
    Ok(SwapBatchReport { k: swaps.len(), terms, delta_c2, residual: delta_c2 - predicted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::petal::make_petal;

    #[test]
    fn worked_smoothing_example() {
        let p = make_petal(vec![2, 6, 10, 4, 9, 1, 3, 11, 8, 7, 5]).unwrap();
        let s = smooth(&p, 10).unwrap();
        assert_eq!(s.m, 2);
        assert_eq!(s.link.first(), &[4, 9, 1, 3]);
        assert_eq!(s.link.second(), &[8, 7, 5, 2, 6, 10]);
        assert_eq!(s.merged_side, Side::B);
        assert_eq!(s.d, 2);
    }

    #[test]
    fn adjacent_positions_split_off_an_unknot() {
        let p = make_petal(vec![1, 2, 3]).unwrap();
        let s = smooth(&p, 1).unwrap();
        assert_eq!(s.link.heights().len(), 2);
        assert!(s.m == 0 || s.link.n() == 0);
        assert_eq!(linking_number(&s.link).unwrap(), 0);
    }

    #[test]
    fn swaps_by_mask() {
        let p = make_petal(vec![1, 2, 3]).unwrap();
        assert_eq!(perform_swaps(&p, &[]).unwrap(), p);
        assert_eq!(perform_swaps(&p, &[true]).unwrap().heights(), &[2, 1, 3]);
        let q = make_petal(vec![1, 2, 3, 4, 5]).unwrap();
        let full = perform_swaps(&q, &[true, true]).unwrap();
        assert_eq!(full.heights(), &[2, 1, 4, 3, 5]);
        assert_eq!(perform_swaps(&full, &[true, true]).unwrap(), q);
        assert!(perform_swaps(&p, &[false, true]).is_err());
    }

    #[test]
    fn rejects_overlapping_swaps() {
        let p = make_petal(vec![1, 3, 5, 2, 4]).unwrap();
        let r = error_decomposition(&p, &[AdjacentSwap { t: 1 }, AdjacentSwap { t: 2 }], &[0, 1]);
        assert!(matches!(r, Err(MoveError::NotDisjoint(1, 2))));
        assert!(smooth(&p, 5).is_err());
        assert!(smooth(&p, 0).is_err());
    }
}
