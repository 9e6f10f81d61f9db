use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;

use super::workpd::WorkPd;
use super::InvariantError;
use crate::petal::{Crossing, KnotDiagram};
use crate::poly::LaurentPolynomial;
use crate::ring::IntRing;
use crate::util::UnionFind;

/// Crossing limit of the plain state sum.
pub const STATE_SUM_LIMIT: usize = 22;

/// Jones polynomial stored with exponents in units of `t^(1/4)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JonesPolynomial {
    pub quarter: LaurentPolynomial,
}

impl JonesPolynomial {
    /// `V(t) -> V(1/t)`, the Jones polynomial of the mirror image.
    pub fn mirror(&self) -> Self {
        Self { quarter: self.quarter.invert_variable() }
    }

    pub fn is_mirror_symmetric(&self) -> bool {
        *self == self.mirror()
    }

    /// Coefficients as `(exponent in quarters, value)`.
    pub fn to_pairs(&self) -> Vec<(i64, BigInt)> {
        self.quarter.to_pairs()
    }
}

impl fmt::Display for JonesPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.quarter.fmt_with(f, |e| match e {
            0 => None,
            4 => Some("t".into()),
            e if e % 4 == 0 => Some(format!("t^{}", e / 4)),
            e if e % 2 == 0 => Some(format!("t^({}/2)", e / 2)),
            e => Some(format!("t^({e}/4)")),
        })
    }
}

/// Sparse Laurent polynomial in `A` over a checked integer ring.
#[derive(Debug, Clone, PartialEq)]
struct APoly<T>(BTreeMap<i64, T>);

impl<T: IntRing> APoly<T> {
    fn monomial(e: i64) -> Self {
        Self(BTreeMap::from([(e, T::one())]))
    }

    fn add_assign(&mut self, o: &Self) -> Option<()> {
        for (&e, c) in &o.0 {
            let v = match self.0.get(&e) {
                Some(x) => x.radd(c)?,
                None => c.clone(),
            };
            if v.is_zero() {
                self.0.remove(&e);
            } else {
                self.0.insert(e, v);
            }
        }
        Some(())
    }

    fn shift(&self, k: i64) -> Self {
        Self(self.0.iter().map(|(&e, c)| (e + k, c.clone())).collect())
    }

    /// Multiplies by the loop value `d = -A^2 - A^-2`.
    fn times_loop(&self) -> Option<Self> {
        let mut out = Self(BTreeMap::new());
        out.add_assign(&self.shift(2))?;
        out.add_assign(&self.shift(-2))?;
        out.negate()
    }

    fn negate(&self) -> Option<Self> {
        Some(Self(self.0.iter().map(|(&e, c)| Some((e, c.rneg()?))).collect::<Option<_>>()?))
    }

    /// Exact division by `d`; `p / d = -A^2 p / (1 + A^4)`.
    fn div_loop(&self) -> Option<Self> {
        let Some((&lo, _)) = self.0.first_key_value() else {
            return Some(self.clone());
        };
        let hi = *self.0.last_key_value().unwrap().0;
        let mut q: BTreeMap<i64, T> = BTreeMap::new();
        let zero = T::zero();
        for e in lo..=hi - 4 {
            let prev = q.get(&(e - 4)).unwrap_or(&zero);
            let v = self.0.get(&e).unwrap_or(&zero).rsub(prev)?;
            if !v.is_zero() {
                q.insert(e, v);
            }
        }
        // remainder check: p - (1 + A^4) q must vanish
        let mut check = Self(q.clone());
        check.add_assign(&Self(q.clone()).shift(4))?;
        if check != *self {
            return None;
        }
        Self(q).shift(2).negate()
    }

    fn to_big(&self) -> BTreeMap<i64, BigInt> {
        self.0.iter().map(|(&e, c)| (e, c.to_bigint())).collect()
    }
}

fn pairs(c: &Crossing, a_smoothing: bool) -> [(usize, usize); 2] {
    let s = c.slots;
    if a_smoothing {
        [(s[0], s[1]), (s[2], s[3])]
    } else {
        [(s[1], s[2]), (s[3], s[0])]
    }
}

/// Free loops, counting an empty diagram as one unknot.
fn free_loops(w: &WorkPd) -> usize {
    if w.xs.is_empty() {
        w.loops.max(1)
    } else {
        w.loops
    }
}

/// `⟨D⟩` by summing over all `2^n` states.
fn bracket_state_sum(w: &WorkPd, labels: usize) -> BTreeMap<i64, BigInt> {
    let n = w.xs.len();
    // counts[a][loops] = number of states with `a` A-smoothings and `loops` circles
    let mut counts = vec![vec![0u64; 2 * n + 2]; n + 1];
    for mask in 0u64..(1u64 << n) {
        let mut uf = UnionFind::new(labels);
        for (x, c) in w.xs.iter().enumerate() {
            for (u, v) in pairs(c, mask >> x & 1 == 1) {
                uf.union(u, v);
            }
        }
        let mut live = vec![false; labels];
        for c in &w.xs {
            for &l in &c.slots {
                live[uf.find(l)] = true;
            }
        }
        let loops = live.iter().filter(|&&b| b).count();
        counts[mask.count_ones() as usize][loops] += 1;
    }
    let mut total = APoly::<BigInt>(BTreeMap::new());
    for (a, row) in counts.iter().enumerate() {
        for (loops, &cnt) in row.iter().enumerate() {
            if cnt == 0 {
                continue;
            }
            let mut term = APoly::<BigInt>::monomial(2 * a as i64 - n as i64);
            for _ in 0..loops + free_loops(w) {
                term = term.times_loop().unwrap();
            }
            let scaled = APoly(term.0.into_iter().map(|(e, c)| (e, c * cnt)).collect());
            total.add_assign(&scaled).unwrap();
        }
    }
    total.div_loop().expect("bracket is divisible by the loop value").to_big()
}

/// Crossing order that keeps the set of half-processed labels small.
fn frontier_order(w: &WorkPd) -> Vec<usize> {
    let n = w.xs.len();
    let mut done = vec![false; n];
    let mut open_count: HashMap<usize, u8> = HashMap::new();
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&x| !done[x])
            .max_by_key(|&x| {
                let shared = w.xs[x].slots.iter().filter(|l| open_count.get(l) == Some(&1)).count();
                (shared, std::cmp::Reverse(x))
            })
            .unwrap();
        done[next] = true;
        order.push(next);
        for &l in &w.xs[next].slots {
            *open_count.entry(l).or_insert(0) += 1;
        }
    }
    order
}

/// `⟨D⟩` by dynamic programming over the pairings of half-processed labels.
fn bracket_frontier<T: IntRing>(w: &WorkPd) -> Option<BTreeMap<i64, BigInt>> {
    type Key = Vec<(usize, usize)>;
    let mut states: HashMap<Key, APoly<T>> = HashMap::from([(Vec::new(), APoly::monomial(0))]);
    for x in frontier_order(w) {
        let c = w.xs[x];
        let mut next: HashMap<Key, APoly<T>> = HashMap::new();
        for (key, poly) in &states {
            for (a_smoothing, shift) in [(true, 1i64), (false, -1)] {
                let mut partner: HashMap<usize, usize> = HashMap::new();
                for &(u, v) in key {
                    partner.insert(u, v);
                    partner.insert(v, u);
                }
                let mut closed = 0;
                for (u, v) in pairs(&c, a_smoothing) {
                    if u == v {
                        closed += 1;
                        continue;
                    }
                    if partner.get(&u) == Some(&v) {
                        partner.remove(&u);
                        partner.remove(&v);
                        closed += 1;
                        continue;
                    }
                    let a = partner.remove(&u).unwrap_or(u);
                    let b = partner.remove(&v).unwrap_or(v);
                    partner.remove(&a);
                    partner.remove(&b);
                    partner.insert(a, b);
                    partner.insert(b, a);
                }
                let mut key: Key = partner.into_iter().filter(|(u, v)| u < v).collect();
                key.sort_unstable();
                let mut term = poly.shift(shift);
                for _ in 0..closed {
                    term = term.times_loop()?;
                }
                match next.get_mut(&key) {
                    Some(p) => p.add_assign(&term)?,
                    None => {
                        next.insert(key, term);
                    }
                }
            }
        }
        states = next;
    }
    let mut total = states.remove(&Vec::new())?;
    for _ in 0..free_loops(w) {
        total = total.times_loop()?;
    }
    Some(total.div_loop()?.to_big())
}

fn normalize(bracket: BTreeMap<i64, BigInt>, standard_writhe: i64) -> JonesPolynomial {
    // V = (-A^3)^(-w) <D>, then A = t^(-1/4)
    let sign: BigInt = if standard_writhe % 2 == 0 { 1.into() } else { (-1).into() };
    let quarter = LaurentPolynomial::from_terms(
        bracket.into_iter().map(|(e, c)| (-(e - 3 * standard_writhe), c * &sign)),
    );
    JonesPolynomial { quarter }
}

/// Jones polynomial by the Kauffman bracket state sum over the diagram as
/// given.
pub fn kauffman_jones(d: &KnotDiagram) -> Result<JonesPolynomial, InvariantError> {
    if d.crossing_count() > STATE_SUM_LIMIT {
        return Err(InvariantError::TooLarge { crossings: d.crossing_count(), limit: STATE_SUM_LIMIT });
    }
    let w = WorkPd::from_diagram(d);
    Ok(normalize(bracket_state_sum(&w, d.edge_count()), w.standard_writhe()))
}

/// Jones polynomial of any size: Reidemeister I/II reduction, then the
/// frontier recursion over the bracket.
pub fn jones_polynomial(d: &KnotDiagram) -> JonesPolynomial {
    let mut w = WorkPd::from_diagram(d);
    w.simplify();
    let bracket = bracket_frontier::<i128>(&w).unwrap_or_else(|| {
        log::debug!("i128 overflow in bracket, retrying with big integers");
        bracket_frontier::<BigInt>(&w).expect("big integers do not overflow")
    });
    normalize(bracket, w.standard_writhe())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loop_division_round_trips() {
        let p = APoly::<i128>(BTreeMap::from([(3, 2), (-1, -5), (0, 7)]));
        assert_eq!(p.times_loop().unwrap().div_loop().unwrap(), p);
        assert!(APoly::<i128>::monomial(0).div_loop().is_none());
    }

    #[test]
    fn display_in_quarters() {
        let j = JonesPolynomial { quarter: LaurentPolynomial::from_terms([(4, 1), (-2, -1), (1, 3)]) };
        assert_eq!(j.to_string(), "t + 3*t^(1/4) - t^(-1/2)");
    }
}
