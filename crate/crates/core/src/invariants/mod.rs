//! Knot and link invariants: linking number, Alexander polynomial, the
//! Casson invariant `c2`, and two exponential oracles (Conway skein and
//! Kauffman bracket) used to cross-check them.

mod alexander;
mod jones;
mod linking;
mod skein;
mod workpd;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use alexander::{
    alexander_determinant, alexander_jet, alexander_jet_berkowitz, alexander_matrix, alexander_polynomial, arc_labels,
    c2_from_alexander, c2_from_jet, casson_c2, normalize_alexander, MatrixEntry,
};
pub use jones::{jones_polynomial, kauffman_jones, JonesPolynomial, STATE_SUM_LIMIT};
pub use linking::{linking_number, linking_sum, linking_sum_naive};
pub use skein::{conway_skein, conway_to_string, conway_truncated, skein_c2, SKEIN_LIMIT};

use crate::petal::{petal_to_diagram, KnotDiagram, PetalPermutation};
use crate::poly::{bigint_to_json, LaurentPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("expected a knot, found {0} components")]
    NotAKnot(usize),
    #[error("normalization failed: {0}")]
    NormalizationFailure(String),
    #[error("integrality check failed: {0}")]
    IntegralityFailure(String),
    #[error("unit check failed: {0}")]
    UnitFailure(String),
    #[error("{crossings} crossings exceed the limit of {limit}")]
    TooLarge { crossings: usize, limit: usize },
    #[error("linking double sum {0} is odd")]
    ParityViolation(i64),
}

/// How `c2` is obtained from the Alexander matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Second-order Taylor data of the determinant at `t = 1` only.
    Jet,
    /// The full normalized Alexander polynomial.
    FullPoly,
}

impl Strategy {
    /// Jet from 11 petals up, the full polynomial below.
    pub fn default_for(petals: usize) -> Self {
        if petals >= 11 {
            Strategy::Jet
        } else {
            Strategy::FullPoly
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Jet => "jet",
            Strategy::FullPoly => "full_poly",
        }
    }
}

impl std::str::FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "jet" => Ok(Strategy::Jet),
            "full_poly" | "full" => Ok(Strategy::FullPoly),
            _ => Err(format!("unknown strategy {s:?} (expected jet or full_poly)")),
        }
    }
}

/// Invariants of one knot. `delta` is absent when the jet strategy was used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub perm: Option<PetalPermutation>,
    pub crossings: usize,
    pub delta: Option<LaurentPolynomial>,
    pub c2: i64,
    pub jones: Option<JonesPolynomial>,
    pub strategy: Strategy,
}

impl InvariantReport {
    pub fn to_json(&self) -> serde_json::Value {
        let pairs = |p: Vec<(i64, num_bigint::BigInt)>| {
            serde_json::Value::Array(
                p.iter().map(|(e, c)| serde_json::json!([e, bigint_to_json(c)])).collect(),
            )
        };
        let mut v = serde_json::json!({
            "perm": self.perm.as_ref().map(|p| p.heights().to_vec()),
            "crossings": self.crossings,
            "delta": self.delta.as_ref().map(|d| pairs(d.to_pairs())),
            "c2": self.c2,
            "strategy": self.strategy.name(),
        });
        if let Some(j) = &self.jones {
            v["jones"] = pairs(j.to_pairs());
            v["jones_text"] = j.to_string().into();
        }
        if let Some(d) = &self.delta {
            v["delta_text"] = d.to_string().into();
        }
        v
    }
}

pub fn diagram_invariants(
    d: &KnotDiagram,
    strategy: Strategy,
    with_jones: bool,
) -> Result<InvariantReport, InvariantError> {
    let (delta, c2) = match strategy {
        Strategy::FullPoly => {
            let delta = alexander_polynomial(d)?;
            let c2 = c2_from_alexander(&delta)?;
            (Some(delta), c2)
        }
        Strategy::Jet => (None, casson_c2(d, Strategy::Jet)?),
    };
    Ok(InvariantReport {
        perm: None,
        crossings: d.crossing_count(),
        delta,
        c2,
        jones: with_jones.then(|| jones_polynomial(d)),
        strategy,
    })
}

/// Invariants of a petal knot; `strategy` defaults by petal count.
pub fn perm_invariants(
    perm: &PetalPermutation,
    strategy: Option<Strategy>,
    with_jones: bool,
) -> Result<InvariantReport, InvariantError> {
    let strategy = strategy.unwrap_or_else(|| Strategy::default_for(perm.petals()));
    let d = petal_to_diagram(perm);
    let mut r = diagram_invariants(&d, strategy, with_jones)?;
    r.perm = Some(perm.clone());
    Ok(r)
}

/// `c2` of a petal knot with the default strategy.
pub fn perm_c2(perm: &PetalPermutation) -> Result<i64, InvariantError> {
    casson_c2(&petal_to_diagram(perm), Strategy::default_for(perm.petals()))
}
