use super::InvariantError;
use crate::petal::LinkPetalPermutation;

/// `sum_{i in I} sum_{j in J} (-1)^(i+j) sgn(h(i) - h(j))` with 1-based
/// positions, by one sweep over the heights.
pub fn linking_sum(heights: &[usize], split: usize) -> i64 {
    let len = heights.len();
    let mut at_height = vec![0usize; len + 1];
    for (pos, &h) in heights.iter().enumerate() {
        at_height[h] = pos + 1;
    }
    let parity = |pos: usize| if pos % 2 == 0 { 1i64 } else { -1 };
    let j_total: i64 = (split + 1..=len).map(parity).sum();
    let mut j_below = 0i64;
    let mut total = 0i64;
    for &pos in &at_height[1..] {
        if pos > split {
            j_below += parity(pos);
        } else {
            // J arcs below count +1, J arcs above count -1
            total += parity(pos) * (2 * j_below - j_total);
        }
    }
    total
}

/// Quadratic evaluation of the same double sum, kept as a reference.
pub fn linking_sum_naive(heights: &[usize], split: usize) -> i64 {
    let mut total = 0i64;
    for i in 1..=split {
        for j in split + 1..=heights.len() {
            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
            total += s * (heights[i - 1] as i64 - heights[j - 1] as i64).signum();
        }
    }
    total
}

pub fn linking_number(link: &LinkPetalPermutation) -> Result<i64, InvariantError> {
    let sum = linking_sum(link.heights(), 2 * link.m());
    if sum % 2 != 0 {
        return Err(InvariantError::ParityViolation(sum));
    }
    Ok(sum / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::petal::make_link;

    #[test]
    fn small_links() {
        assert_eq!(linking_number(&make_link(vec![1, 2, 3, 4], 1, 1).unwrap()).unwrap(), 0);
        // terms (i,j) = (1,3), (1,4), (2,3), (2,4) give -1, +1, -1, -1
        assert_eq!(linking_number(&make_link(vec![1, 3, 2, 4], 1, 1).unwrap()).unwrap(), -1);
        assert_eq!(linking_number(&make_link(vec![2, 1, 4, 3], 0, 2).unwrap()).unwrap(), 0);
    }

    #[test]
    fn sweep_matches_double_sum() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let m = rand::Rng::random_range(&mut rng, 0..6usize);
            let n = rand::Rng::random_range(&mut rng, 0..6usize);
            let mut h: Vec<usize> = (1..=2 * m + 2 * n).collect();
            h.shuffle(&mut rng);
            assert_eq!(linking_sum(&h, 2 * m), linking_sum_naive(&h, 2 * m));
        }
    }
}
