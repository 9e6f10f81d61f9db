use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{InvariantError, Strategy};
use crate::det::{bareiss, berkowitz, unit_pivot, DensePoly, PivotFailure};
use crate::jet::Jet;
use crate::petal::KnotDiagram;
use crate::poly::LaurentPolynomial;
use crate::ring::{IntRing, Ring};

/// Entry `a + b*t` in column `col`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatrixEntry {
    pub col: usize,
    pub a: i64,
    pub b: i64,
}

fn require_knot(d: &KnotDiagram) -> Result<(), InvariantError> {
    if d.components() != 1 {
        return Err(InvariantError::NotAKnot(d.components()));
    }
    Ok(())
}

/// Over-arc index of every edge. Arcs are numbered along the traversal from
/// the base edge; a new arc starts after each under-passage.
pub fn arc_labels(d: &KnotDiagram) -> Vec<usize> {
    let n = d.crossing_count();
    let mut arc = vec![0; d.edge_count()];
    let mut a = 0;
    for &e in d.edge_cycles().first().map(Vec::as_slice).unwrap_or(&[]) {
        arc[e] = a % n.max(1);
        if !d.head_is_over(e) {
            a += 1;
        }
    }
    arc
}

/// Sparse Alexander matrix, one row per crossing and one column per arc.
/// A crossing with over-arc `k`, incoming under-arc `i` and outgoing
/// under-arc `j` contributes `1-t` at `k` and, for sign +1, `t` at `i` and
/// `-1` at `j`; for sign -1 the last two are exchanged.
pub fn alexander_matrix(d: &KnotDiagram) -> Result<Vec<Vec<MatrixEntry>>, InvariantError> {
    require_knot(d)?;
    let arc = arc_labels(d);
    Ok(d.crossings()
        .iter()
        .map(|c| {
            let k = arc[c.slots[c.over_in as usize]];
            let i = arc[c.slots[0]];
            let j = arc[c.slots[2]];
            let (at_i, at_j) = if c.sign() > 0 { ((0, 1), (-1, 0)) } else { ((-1, 0), (0, 1)) };
            let mut row: Vec<MatrixEntry> = Vec::with_capacity(3);
            for (col, (a, b)) in [(k, (1, -1)), (i, at_i), (j, at_j)] {
                match row.iter_mut().find(|e| e.col == col) {
                    Some(e) => {
                        e.a += a;
                        e.b += b;
                    }
                    None => row.push(MatrixEntry { col, a, b }),
                }
            }
            row.retain(|e| e.a != 0 || e.b != 0);
            row
        })
        .collect())
}

/// The matrix with its last row and column removed, densified.
fn minor<R: Ring>(rows: &[Vec<MatrixEntry>], entry: impl Fn(i64, i64) -> R) -> Vec<Vec<R>> {
    let n = rows.len().saturating_sub(1);
    rows[..n]
        .iter()
        .map(|row| {
            let mut dense = vec![R::zero(); n];
            for e in row.iter().filter(|e| e.col < n) {
                dense[e.col] = entry(e.a, e.b);
            }
            dense
        })
        .collect()
}

fn poly_minor<T: IntRing>(rows: &[Vec<MatrixEntry>]) -> Vec<Vec<DensePoly<T>>> {
    minor(rows, |a, b| DensePoly::new(vec![T::from_i64(a), T::from_i64(b)]))
}

/// Unnormalized determinant `D(t)` of the Alexander minor.
pub fn alexander_determinant(d: &KnotDiagram) -> Result<LaurentPolynomial, InvariantError> {
    let rows = alexander_matrix(d)?;
    if rows.is_empty() {
        return Ok(LaurentPolynomial::one());
    }
    let det = match bareiss(poly_minor::<i128>(&rows)) {
        Some(p) => LaurentPolynomial::from_coeffs(&p.coeffs().iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>()),
        None => {
            log::debug!("i128 overflow in Bareiss, retrying with big integers");
            let p = bareiss(poly_minor::<BigInt>(&rows))
                .ok_or_else(|| InvariantError::NormalizationFailure("inexact Bareiss division".into()))?;
            LaurentPolynomial::from_coeffs(p.coeffs())
        }
    };
    Ok(det)
}

/// Strips the unit `±t^k` so that the result is symmetric with value 1 at 1.
pub fn normalize_alexander(det: &LaurentPolynomial) -> Result<LaurentPolynomial, InvariantError> {
    let at_one = det.eval_at_one();
    if Zero::is_zero(&at_one) {
        return Err(InvariantError::NormalizationFailure("determinant vanishes at t = 1".into()));
    }
    if !at_one.abs().is_one() {
        return Err(InvariantError::UnitFailure(format!("determinant is {at_one} at t = 1")));
    }
    let (lo, hi) = (det.min_exp().unwrap(), det.max_exp().unwrap());
    if (lo + hi) % 2 != 0 {
        return Err(InvariantError::NormalizationFailure(format!("odd degree span {lo}..{hi}")));
    }
    let mut out = det.shift(-(lo + hi) / 2);
    if at_one.is_negative() {
        out = -out;
    }
    if !out.is_symmetric() {
        return Err(InvariantError::NormalizationFailure(format!("{out} is not symmetric")));
    }
    Ok(out)
}

pub fn alexander_polynomial(d: &KnotDiagram) -> Result<LaurentPolynomial, InvariantError> {
    normalize_alexander(&alexander_determinant(d)?)
}

/// `c2 = Δ''(1)/2` for a normalized Δ.
pub fn c2_from_alexander(delta: &LaurentPolynomial) -> Result<i64, InvariantError> {
    let d2 = delta.jet_at_one().d2;
    let two = BigInt::from(2);
    if !Zero::is_zero(&(&d2 % &two)) {
        return Err(InvariantError::IntegralityFailure(format!("Δ''(1) = {d2} is odd")));
    }
    (d2 / two).to_i64().ok_or_else(|| InvariantError::IntegralityFailure("c2 exceeds 64 bits".into()))
}

fn jet_minor<T: IntRing>(rows: &[Vec<MatrixEntry>]) -> Vec<Vec<Jet<T>>> {
    minor(rows, Jet::linear)
}

fn jet_det<T: IntRing>(rows: &[Vec<MatrixEntry>]) -> Option<Jet<BigInt>> {
    match unit_pivot(jet_minor::<T>(rows)) {
        Ok(j) => Some(j.to_big()),
        Err(PivotFailure::Overflow) => None,
        Err(PivotFailure::NoUnitPivot) => {
            log::debug!("no unit pivot, using Berkowitz");
            berkowitz(&jet_minor::<T>(rows)).map(|j| j.to_big())
        }
    }
}

/// Jet of `D(t)` at `t = 1`, computed without forming the polynomial.
pub fn alexander_jet(d: &KnotDiagram) -> Result<Jet<BigInt>, InvariantError> {
    let rows = alexander_matrix(d)?;
    if rows.is_empty() {
        return Ok(Jet::one());
    }
    Ok(jet_det::<i128>(&rows).unwrap_or_else(|| {
        log::debug!("i128 overflow in jet elimination, retrying with big integers");
        jet_det::<BigInt>(&rows).expect("big integers do not overflow")
    }))
}

/// Same as [`alexander_jet`] but always through Berkowitz; used as a
/// cross-check of the unit-pivot elimination.
pub fn alexander_jet_berkowitz(d: &KnotDiagram) -> Result<Jet<BigInt>, InvariantError> {
    let rows = alexander_matrix(d)?;
    if rows.is_empty() {
        return Ok(Jet::one());
    }
    Ok(berkowitz(&jet_minor::<BigInt>(&rows)).expect("big integers do not overflow"))
}

/// `c2` from the jet of `D = ±t^k Δ`: with `u = D(1) = ±1`, `k = u D'(1)` and
/// `c2 = (u D''(1) - k(k-1)) / 2`.
pub fn c2_from_jet(j: &Jet<BigInt>) -> Result<i64, InvariantError> {
    let u = j.d0.unit_sign().ok_or_else(|| InvariantError::UnitFailure(format!("D(1) = {}", j.d0)))?;
    let u = BigInt::from(u);
    let k = &j.d1 * &u;
    let twice: BigInt = &j.d2 * &u - &k * (&k - BigInt::from(1));
    let two = BigInt::from(2);
    if !Zero::is_zero(&(&twice % &two)) {
        return Err(InvariantError::IntegralityFailure(format!("2*c2 = {twice} is odd")));
    }
    (twice / two).to_i64().ok_or_else(|| InvariantError::IntegralityFailure("c2 exceeds 64 bits".into()))
}

pub fn casson_c2(d: &KnotDiagram, strategy: Strategy) -> Result<i64, InvariantError> {
    match strategy {
        Strategy::Jet => c2_from_jet(&alexander_jet(d)?),
        Strategy::FullPoly => c2_from_alexander(&alexander_polynomial(d)?),
    }
}
