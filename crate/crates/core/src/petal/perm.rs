use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("petal permutation must have odd length, got {0}")]
    EvenLength(usize),
    #[error("heights are not a permutation of 1..={0}")]
    NotPermutation(usize),
    #[error("link heights have length {got}, expected 2m+2n = {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("{0} out of range")]
    OutOfRange(&'static str),
}

fn check_bijection(heights: &[usize]) -> bool {
    let len = heights.len();
    let mut seen = vec![false; len + 1];
    for &h in heights {
        if h == 0 || h > len || seen[h] {
            return false;
        }
        seen[h] = true;
    }
    true
}

/// Heights of the straight arcs of a petal diagram, listed in the order the
/// arcs are traversed. Values are `1..=p` with `p` odd.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct PetalPermutation {
    heights: Vec<usize>,
}

/// One of the three symmetries of petal permutations that preserve the knot
/// type up to mirror image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    /// `h -> (h mod p) + 1`: the top arc becomes the bottom arc.
    RotateValues,
    /// Start the traversal one arc later.
    RotatePositions,
    /// `h -> p + 1 - h`: the mirror image.
    Reflect,
}

impl PetalPermutation {
    pub fn new(heights: Vec<usize>) -> Result<Self, PermError> {
        if heights.len() % 2 == 0 {
            return Err(PermError::EvenLength(heights.len()));
        }
        if !check_bijection(&heights) {
            return Err(PermError::NotPermutation(heights.len()));
        }
        Ok(Self { heights })
    }

    pub fn identity(p: usize) -> Result<Self, PermError> {
        Self::new((1..=p).collect())
    }

    /// Number of petals (arcs).
    pub fn petals(&self) -> usize {
        self.heights.len()
    }

    /// `n` in `p = 2n + 1`.
    pub fn half(&self) -> usize {
        self.heights.len() / 2
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    /// Height of arc `k` (1-based arc index).
    pub fn height(&self, k: usize) -> usize {
        self.heights[k - 1]
    }

    /// 1-based position of the arc with height `h`.
    pub fn position_of(&self, h: usize) -> usize {
        self.heights.iter().position(|&x| x == h).expect("height in range") + 1
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.heights
    }

    pub fn apply_symmetry(&self, sym: Symmetry) -> Self {
        let p = self.petals();
        let heights = match sym {
            Symmetry::RotateValues => self.heights.iter().map(|&h| h % p + 1).collect(),
            Symmetry::RotatePositions => {
                let mut v = self.heights.clone();
                v.rotate_left(1.min(p));
                v
            }
            Symmetry::Reflect => self.heights.iter().map(|&h| p + 1 - h).collect(),
        };
        Self { heights }
    }

    /// Inserts the adjacent pair `(level + 1, level)` before the arc at
    /// 1-based `position` (`position = p + 1` appends), shifting every
    /// height `>= level` up by two.
    pub fn stabilize(&self, position: usize, level: usize) -> Result<Self, PermError> {
        let p = self.petals();
        if level == 0 || level > p + 1 {
            return Err(PermError::OutOfRange("stabilization level"));
        }
        if position == 0 || position > p + 1 {
            return Err(PermError::OutOfRange("stabilization position"));
        }
        let mut heights: Vec<usize> = self
            .heights
            .iter()
            .map(|&h| if h >= level { h + 2 } else { h })
            .collect();
        heights.splice(position - 1..position - 1, [level + 1, level]);
        Ok(Self { heights })
    }

    /// Swaps the arcs at heights `t` and `t + 1`.
    pub fn swap_heights(&self, t: usize) -> Result<Self, PermError> {
        if t == 0 || t >= self.petals() {
            return Err(PermError::OutOfRange("swap index"));
        }
        let heights = self
            .heights
            .iter()
            .map(|&h| {
                if h == t {
                    t + 1
                } else if h == t + 1 {
                    t
                } else {
                    h
                }
            })
            .collect();
        Ok(Self { heights })
    }
}

impl TryFrom<Vec<usize>> for PetalPermutation {
    type Error = PermError;
    fn try_from(v: Vec<usize>) -> Result<Self, PermError> {
        Self::new(v)
    }
}

impl From<PetalPermutation> for Vec<usize> {
    fn from(p: PetalPermutation) -> Self {
        p.heights
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, v: &[usize]) -> fmt::Result {
    let parts: Vec<String> = v.iter().map(|h| h.to_string()).collect();
    write!(f, "{}", parts.join(","))
}

impl fmt::Display for PetalPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        write_tuple(f, &self.heights)?;
        write!(f, ")")
    }
}

/// Heights of a two-component petal link with `2m` arcs in the first
/// component (indices `1..=2m`) and `2n` in the second.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinkPetalPermutation {
    m: usize,
    n: usize,
    heights: Vec<usize>,
}

impl LinkPetalPermutation {
    pub fn new(heights: Vec<usize>, m: usize, n: usize) -> Result<Self, PermError> {
        let expected = 2 * m + 2 * n;
        if heights.len() != expected {
            return Err(PermError::LengthMismatch { got: heights.len(), expected });
        }
        if !check_bijection(&heights) {
            return Err(PermError::NotPermutation(heights.len()));
        }
        Ok(Self { m, n, heights })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    pub fn first(&self) -> &[usize] {
        &self.heights[..2 * self.m]
    }

    pub fn second(&self) -> &[usize] {
        &self.heights[2 * self.m..]
    }

    /// `h -> N + 1 - h` on all heights.
    pub fn reflect(&self) -> Self {
        let total = self.heights.len();
        Self {
            m: self.m,
            n: self.n,
            heights: self.heights.iter().map(|&h| total + 1 - h).collect(),
        }
    }
}

impl fmt::Display for LinkPetalPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        write_tuple(f, &self.heights)?;
        write!(f, "; {},{})", self.m, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> PetalPermutation {
        PetalPermutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn validation() {
        assert_eq!(perm(&[1, 2, 3]).petals(), 3);
        assert_eq!(perm(&[1, 3, 5, 2, 4]).petals(), 5);
        assert_eq!(PetalPermutation::new(vec![1, 2]), Err(PermError::EvenLength(2)));
        assert_eq!(PetalPermutation::new(vec![1, 1, 3]), Err(PermError::NotPermutation(3)));
        assert_eq!(PetalPermutation::new(vec![0, 1, 2]), Err(PermError::NotPermutation(3)));
        assert_eq!(PetalPermutation::new(vec![]), Err(PermError::EvenLength(0)));
    }

    #[test]
    fn symmetries() {
        let p = perm(&[1, 3, 5, 2, 4]);
        assert_eq!(p.apply_symmetry(Symmetry::RotateValues).heights(), &[2, 4, 1, 3, 5]);
        assert_eq!(p.apply_symmetry(Symmetry::RotatePositions).heights(), &[3, 5, 2, 4, 1]);
        assert_eq!(perm(&[1, 2, 3]).apply_symmetry(Symmetry::Reflect).heights(), &[3, 2, 1]);
    }

    #[test]
    fn stabilization() {
        let s = perm(&[1]).stabilize(1, 1).unwrap();
        assert_eq!(s.heights(), &[2, 1, 3]);
        let s = perm(&[1, 3, 5, 2, 4]).stabilize(3, 2).unwrap();
        assert_eq!(s.heights(), &[1, 5, 3, 2, 7, 4, 6]);
        assert!(perm(&[1, 2, 3]).stabilize(5, 1).is_err());
        assert!(perm(&[1, 2, 3]).stabilize(1, 5).is_err());
    }

    #[test]
    fn links() {
        assert!(LinkPetalPermutation::new(vec![1, 2, 3, 4], 1, 1).is_ok());
        let l = LinkPetalPermutation::new(vec![4, 9, 1, 3, 8, 7, 5, 2, 6, 10], 2, 3).unwrap();
        assert_eq!(l.first(), &[4, 9, 1, 3]);
        assert_eq!(l.second(), &[8, 7, 5, 2, 6, 10]);
        assert_eq!(
            LinkPetalPermutation::new(vec![1, 2, 3], 1, 1),
            Err(PermError::LengthMismatch { got: 3, expected: 4 })
        );
        assert_eq!(
            LinkPetalPermutation::new(vec![1, 2, 2, 4], 1, 1),
            Err(PermError::NotPermutation(4))
        );
    }

    #[test]
    fn serde_validates() {
        let ok: PetalPermutation = serde_json::from_str("[1,3,5,2,4]").unwrap();
        assert_eq!(ok.petals(), 5);
        assert!(serde_json::from_str::<PetalPermutation>("[1,2]").is_err());
    }
}
