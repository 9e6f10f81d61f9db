use super::workpd::WorkPd;
use super::InvariantError;
use crate::petal::KnotDiagram;
use crate::poly::LaurentPolynomial;

/// Crossing limit of the exact skein oracle.
pub const SKEIN_LIMIT: usize = 14;

/// Coefficients of `z^0..=z^max_deg`, accumulated into `acc` scaled by
/// `scale * z^shift`.
fn conway_rec(mut w: WorkPd, max_deg: usize, shift: usize, scale: i64, acc: &mut [i64]) {
    loop {
        w.simplify();
        let mu = w.components().max(1);
        // the Conway polynomial of a mu-component link is divisible by z^(mu-1)
        if shift + mu - 1 > max_deg {
            return;
        }
        let Some(x) = w.first_ascending() else {
            if mu == 1 {
                acc[shift] += scale;
            }
            return;
        };
        let sign = w.xs[x].sign() as i64;
        let mut smoothed = w.clone();
        smoothed.smooth(x);
        conway_rec(smoothed, max_deg, shift + 1, scale * sign, acc);
        w.switch(x);
    }
}

fn to_poly(acc: &[i64]) -> LaurentPolynomial {
    LaurentPolynomial::from_coeffs(acc)
}

/// Conway polynomial in `z` by the skein recursion
/// `∇(L) = ∇(L') + s z ∇(L0)`, where `L'` switches the first ascending
/// crossing, `s` is its sign and `L0` its oriented smoothing.
pub fn conway_skein(d: &KnotDiagram) -> Result<LaurentPolynomial, InvariantError> {
    if d.crossing_count() > SKEIN_LIMIT {
        return Err(InvariantError::TooLarge { crossings: d.crossing_count(), limit: SKEIN_LIMIT });
    }
    let max_deg = d.crossing_count() + d.components();
    let mut acc = vec![0i64; max_deg + 1];
    conway_rec(WorkPd::from_diagram(d), max_deg, 0, 1, &mut acc);
    Ok(to_poly(&acc))
}

/// Conway coefficients up to `z^max_deg` only. Branches that cannot reach
/// those degrees are pruned, so this runs on diagrams far beyond the exact
/// limit when `max_deg` is small.
pub fn conway_truncated(d: &KnotDiagram, max_deg: usize) -> LaurentPolynomial {
    let mut acc = vec![0i64; max_deg + 1];
    conway_rec(WorkPd::from_diagram(d), max_deg, 0, 1, &mut acc);
    to_poly(&acc)
}

/// `c2` as the `z^2` coefficient of the truncated Conway polynomial.
pub fn skein_c2(d: &KnotDiagram) -> Result<i64, InvariantError> {
    if d.components() != 1 {
        return Err(InvariantError::NotAKnot(d.components()));
    }
    let c = conway_truncated(d, 2);
    Ok(i64::try_from(c.coeff(2)).expect("small coefficient"))
}

/// Display of a Conway polynomial in the variable `z`.
pub fn conway_to_string(p: &LaurentPolynomial) -> String {
    struct Z<'a>(&'a LaurentPolynomial);
    impl std::fmt::Display for Z<'_> {
        fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
            self.0.fmt_with(f, |e| if e == 0 { None } else { Some(format!("z^{e}")) })
        }
    }
    Z(p).to_string()
}
