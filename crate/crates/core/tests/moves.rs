use petaluma::invariants::{conway_truncated, linking_number};
use petaluma::moves::{error_decomposition, perform_swaps, smooth, swap_effect, AdjacentSwap, MoveError, Side};
use petaluma::petal::{make_petal, petal_to_diagram, PetalPermutation};
use petaluma::sampling::{uniform_heights, SeededStream};

fn perm(h: &[usize]) -> PetalPermutation {
    make_petal(h.to_vec()).unwrap()
}

/// `c2` as the `z^2` coefficient of the Conway polynomial, by skein.
fn skein_c2(p: &PetalPermutation) -> i64 {
    i64::try_from(conway_truncated(&petal_to_diagram(p), 2).coeff(2)).unwrap()
}

#[test]
fn worked_smoothing() {
    let s = smooth(&perm(&[2, 6, 10, 4, 9, 1, 3, 11, 8, 7, 5]), 10).unwrap();
    assert_eq!((s.m, s.link.n()), (2, 3));
    assert_eq!(s.link.first(), &[4, 9, 1, 3]);
    assert_eq!(s.link.second(), &[8, 7, 5, 2, 6, 10]);
    assert_eq!(s.merged_side, Side::B);
}

#[test]
fn smoothing_yields_even_components() {
    let mut st = SeededStream::new(21, 0);
    for p in [3, 5, 9, 15] {
        for _ in 0..20 {
            let pi = perm(&uniform_heights(p, &mut st));
            for t in 1..p {
                let s = smooth(&pi, t).unwrap();
                assert_eq!(s.link.heights().len(), p - 1);
                assert_eq!(2 * (s.link.m() + s.link.n()), p - 1);
                let mut h = s.link.heights().to_vec();
                h.sort_unstable();
                assert_eq!(h, (1..p).collect::<Vec<_>>());
            }
        }
    }
}

#[test]
fn swap_identity_against_skein() {
    let mut st = SeededStream::new(22, 0);
    for _ in 0..40 {
        let pi = perm(&uniform_heights(7, &mut st));
        let base = skein_c2(&pi);
        for t in 1..7 {
            let e = swap_effect(&pi, t).unwrap();
            assert_eq!(skein_c2(&pi.swap_heights(t).unwrap()) - base, e.delta_c2, "{pi} at {t}");
            let lk = linking_number(&smooth(&pi, t).unwrap().link).unwrap();
            assert_eq!(e.delta_c2, e.epsilon * lk, "{pi} at {t}");
        }
    }
}

#[test]
fn disjoint_swaps_stay_within_error_bound() {
    let mut st = SeededStream::new(23, 0);
    for _ in 0..60 {
        let pi = perm(&uniform_heights(9, &mut st));
        let swaps = [AdjacentSwap { t: 1 }, AdjacentSwap { t: 4 }, AdjacentSwap { t: 7 }];
        let a = error_decomposition(&pi, &swaps, &[0, 1, 2]).unwrap();
        let b = error_decomposition(&pi, &swaps, &[2, 0, 1]).unwrap();
        // the final permutation does not depend on the order
        assert_eq!(a, b);
        assert!(a.within_bound(), "{pi}: residual {}", a.residual);
        let direct = skein_c2(&perform_swaps(&pi, &[true, false, false, false]).unwrap()) - skein_c2(&pi);
        assert_eq!(direct, swap_effect(&pi, 1).unwrap().delta_c2);
    }
}

#[test]
fn rejects_bad_swaps() {
    let pi = perm(&[1, 3, 5, 2, 4]);
    assert!(matches!(smooth(&pi, 0), Err(MoveError::OutOfRange { .. })));
    assert!(matches!(smooth(&pi, 5), Err(MoveError::OutOfRange { .. })));
    let s = [AdjacentSwap { t: 1 }, AdjacentSwap { t: 2 }];
    assert!(matches!(error_decomposition(&pi, &s, &[0, 1]), Err(MoveError::NotDisjoint(1, 2))));
    let s = [AdjacentSwap { t: 1 }, AdjacentSwap { t: 3 }];
    assert!(matches!(error_decomposition(&pi, &s, &[0, 0]), Err(MoveError::BadOrder)));
}
