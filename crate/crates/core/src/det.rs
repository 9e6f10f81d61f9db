//! Exact determinants over integer polynomial rings.
//!
//! * [`bareiss`]: fraction-free elimination over `Z[t]`.
//! * [`berkowitz`]: division-free, works over any commutative ring.
//! * [`unit_pivot`]: Gaussian elimination that only pivots on units. Over
//!   jets this is valid whenever the matrix at `t = 1` is totally unimodular,
//!   which is the case for Alexander matrices.

use crate::ring::{IntRing, Ring};

/// Dense polynomial in `t` with ascending coefficients and no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensePoly<T>(pub Vec<T>);

impl<T: IntRing> DensePoly<T> {
    pub fn new(mut c: Vec<T>) -> Self {
        while c.last().is_some_and(Ring::is_zero) {
            c.pop();
        }
        Self(c)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.0
    }

    /// Exact quotient; `None` on overflow or a nonzero remainder.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.0.is_empty() {
            return None;
        }
        if self.0.is_empty() {
            return Some(Self(Vec::new()));
        }
        if self.0.len() < d.0.len() {
            return None;
        }
        let mut rem = self.0.clone();
        let dl = d.0.len();
        let lead = &d.0[dl - 1];
        let mut q = vec![T::zero(); rem.len() - dl + 1];
        for i in (0..q.len()).rev() {
            let top = &rem[i + dl - 1];
            if top.is_zero() {
                continue;
            }
            let qi = top.div_exact(lead)?;
            for (j, dj) in d.0.iter().enumerate() {
                rem[i + j] = rem[i + j].rsub(&qi.rmul(dj)?)?;
            }
            q[i] = qi;
        }
        rem.iter().all(Ring::is_zero).then(|| Self::new(q))
    }
}

impl<T: IntRing> Ring for DensePoly<T> {
    fn zero() -> Self {
        Self(Vec::new())
    }
    fn one() -> Self {
        Self(vec![T::one()])
    }
    fn from_i64(v: i64) -> Self {
        Self::new(vec![T::from_i64(v)])
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    fn radd(&self, o: &Self) -> Option<Self> {
        let n = self.0.len().max(o.0.len());
        let zero = T::zero();
        let c = (0..n)
            .map(|i| self.0.get(i).unwrap_or(&zero).radd(o.0.get(i).unwrap_or(&zero)))
            .collect::<Option<Vec<T>>>()?;
        Some(Self::new(c))
    }
    fn rsub(&self, o: &Self) -> Option<Self> {
        self.radd(&o.rneg()?)
    }
    fn rneg(&self) -> Option<Self> {
        Some(Self(self.0.iter().map(Ring::rneg).collect::<Option<Vec<T>>>()?))
    }
    fn rmul(&self, o: &Self) -> Option<Self> {
        if self.0.is_empty() || o.0.is_empty() {
            return Some(Self::zero());
        }
        let mut c = vec![T::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] = c[i + j].radd(&a.rmul(b)?)?;
            }
        }
        Some(Self::new(c))
    }
}

/// Bareiss elimination. `None` on overflow (or, for exact rings, a failed
/// exact division, which cannot happen for valid input).
pub fn bareiss<T: IntRing>(mut m: Vec<Vec<DensePoly<T>>>) -> Option<DensePoly<T>> {
    let n = m.len();
    if n == 0 {
        return Some(DensePoly::one());
    }
    let mut negate = false;
    let mut prev = DensePoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return Some(DensePoly::zero()),
            }
        }
        let (top, bottom) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            for j in k + 1..n {
                let a = row[j].rmul(&pivot_row[k])?;
                let b = row[k].rmul(&pivot_row[j])?;
                row[j] = a.rsub(&b)?.div_exact(&prev)?;
            }
            row[k] = DensePoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.rneg()
    } else {
        Some(det)
    }
}

/// Berkowitz's division-free determinant. `None` on overflow.
pub fn berkowitz<R: Ring>(a: &[Vec<R>]) -> Option<R> {
    let n = a.len();
    if n == 0 {
        return Some(R::one());
    }
    // coefficients of det(x I - A_r), leading first
    let mut v = vec![R::one(), a[0][0].rneg()?];
    for r in 1..n {
        // Toeplitz column: 1, -a_rr, -R C, -R M C, ...
        let mut t = vec![R::one(), a[r][r].rneg()?];
        let mut x: Vec<R> = (0..r).map(|i| a[i][r].clone()).collect();
        for _ in 0..r {
            let mut dot = R::zero();
            for (j, xj) in x.iter().enumerate() {
                dot = dot.radd(&a[r][j].rmul(xj)?)?;
            }
            t.push(dot.rneg()?);
            let mut nx = Vec::with_capacity(r);
            for i in 0..r {
                let mut s = R::zero();
                for (j, xj) in x.iter().enumerate() {
                    s = s.radd(&a[i][j].rmul(xj)?)?;
                }
                nx.push(s);
            }
            x = nx;
        }
        let mut nv = Vec::with_capacity(r + 2);
        for i in 0..r + 2 {
            let mut s = R::zero();
            for (j, vj) in v.iter().enumerate().take(i + 1) {
                s = s.radd(&t[i - j].rmul(vj)?)?;
            }
            nv.push(s);
        }
        v = nv;
    }
    let det = v.pop().unwrap();
    if n % 2 == 1 {
        det.rneg()
    } else {
        Some(det)
    }
}

/// Outcome of [`unit_pivot`] when it cannot finish.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotFailure {
    Overflow,
    /// No unit entry remained in the active submatrix.
    NoUnitPivot,
}

/// Elimination over a ring of jets pivoting only on entries whose value is
/// a unit. Row and column swaps are tracked in the sign.
pub fn unit_pivot<T: IntRing>(mut m: Vec<Vec<crate::jet::Jet<T>>>) -> Result<crate::jet::Jet<T>, PivotFailure> {
    use crate::jet::Jet;
    let of = PivotFailure::Overflow;
    let n = m.len();
    let mut det = Jet::<T>::one();
    let mut negate = false;
    for k in 0..n {
        let found = (k..n)
            .find(|&r| m[r][k].d0.unit_sign().is_some())
            .map(|r| (r, k))
            .or_else(|| {
                (k..n).find_map(|r| (k..n).find(|&c| m[r][c].d0.unit_sign().is_some()).map(|c| (r, c)))
            });
        let (r, c) = found.ok_or(PivotFailure::NoUnitPivot)?;
        if r != k {
            m.swap(r, k);
            negate = !negate;
        }
        if c != k {
            for row in m.iter_mut() {
                row.swap(c, k);
            }
            negate = !negate;
        }
        let pivot = m[k][k].clone();
        det = det.rmul(&pivot).ok_or(of)?;
        let inv = pivot.inverse().ok_or(of)?;
        let (top, bottom) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let support: Vec<usize> = (k + 1..n).filter(|&j| !pivot_row[j].is_zero()).collect();
        for row in bottom.iter_mut() {
            if row[k].is_zero() {
                continue;
            }
            let f = row[k].rmul(&inv).ok_or(of)?;
            for &j in &support {
                row[j] = row[j].rsub(&f.rmul(&pivot_row[j]).ok_or(of)?).ok_or(of)?;
            }
            row[k] = Jet::zero();
        }
    }
    if negate {
        det.rneg().ok_or(of)
    } else {
        Ok(det)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::Jet;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    /// Cofactor expansion, the slow reference.
    fn laplace(a: &[Vec<i128>]) -> i128 {
        let n = a.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|c| {
                let minor: Vec<Vec<i128>> =
                    a[1..].iter().map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &v)| v).collect()).collect();
                let s = if c % 2 == 0 { 1 } else { -1 };
                s * a[0][c] * laplace(&minor)
            })
            .sum()
    }

    fn matrix(n: usize) -> impl Strategy<Value = Vec<Vec<i128>>> {
        proptest::collection::vec(proptest::collection::vec(-4i128..5, n), n)
    }

    #[test]
    fn small_known_values() {
        let a = vec![vec![2i128, 1], vec![7, 4]];
        assert_eq!(berkowitz(&a), Some(1));
        let p = |c: &[i128]| DensePoly::new(c.to_vec());
        // [[1-t, t], [t, 1-t]] has determinant 1 - 2t
        let m = vec![vec![p(&[1, -1]), p(&[0, 1])], vec![p(&[0, 1]), p(&[1, -1])]];
        assert_eq!(bareiss(m), Some(p(&[1, -2])));
    }

    #[test]
    fn exact_division() {
        let p = |c: &[i128]| DensePoly::new(c.to_vec());
        assert_eq!(p(&[-1, 0, 1]).div_exact(&p(&[1, 1])), Some(p(&[-1, 1])));
        assert_eq!(p(&[1, 0, 1]).div_exact(&p(&[1, 1])), None);
    }

    proptest! {
        #[test]
        fn berkowitz_matches_laplace(n in 0usize..6, seed in matrix(5)) {
            let a: Vec<Vec<i128>> = seed.iter().take(n).map(|r| r[..n].to_vec()).collect();
            prop_assert_eq!(berkowitz(&a), Some(laplace(&a)));
            let big: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
            prop_assert_eq!(berkowitz(&big), Some(BigInt::from(laplace(&a))));
        }

        #[test]
        fn bareiss_matches_laplace_on_constants(n in 0usize..6, seed in matrix(5)) {
            let a: Vec<Vec<i128>> = seed.iter().take(n).map(|r| r[..n].to_vec()).collect();
            let m = a.iter().map(|r| r.iter().map(|&v| DensePoly::new(vec![v])).collect()).collect();
            prop_assert_eq!(bareiss(m), Some(DensePoly::new(vec![laplace(&a)])));
        }

        #[test]
        fn unit_pivot_matches_berkowitz_on_incidence_jets(
            n in 1usize..7,
            edges in proptest::collection::vec((0usize..7, 0usize..7, -3i64..4, -3i64..4), 7),
        ) {
            // rows ±(e_i - e_j) at t=1 plus linear perturbations vanishing at 1
            let mut m = vec![vec![Jet::<i128>::zero(); n]; n];
            for (r, &(i, j, a, b)) in edges.iter().take(n).enumerate() {
                let (i, j) = (i % n, j % n);
                m[r][i] = m[r][i].radd(&Jet::linear(1 + a, -a)).unwrap();
                m[r][j] = m[r][j].rsub(&Jet::linear(1 + b, -b)).unwrap();
                if r == n - 1 {
                    m[r] = vec![Jet::zero(); n];
                    m[r][i] = Jet::linear(b, 1 - b);
                }
            }
            let reference = berkowitz(&m).unwrap();
            match unit_pivot(m) {
                Ok(d) => prop_assert_eq!(d, reference),
                Err(e) => {
                    prop_assert_eq!(e, PivotFailure::NoUnitPivot);
                    prop_assert_eq!(reference.d0, 0);
                }
            }
        }
    }
}
