use std::collections::HashMap;

use petaluma::invariants::{alexander_polynomial, casson_c2, Strategy};
use petaluma::petal::{make_link, make_petal, petal_to_diagram, PermError, PetalPermutation, Symmetry};
use petaluma::sampling::{all_permutations, uniform_heights, SeededStream};

fn perm(h: &[usize]) -> PetalPermutation {
    make_petal(h.to_vec()).unwrap()
}

#[test]
fn validation() {
    assert_eq!(perm(&[1, 2, 3]).petals(), 3);
    assert_eq!(perm(&[1, 3, 5, 2, 4]).petals(), 5);
    assert_eq!(make_petal(vec![1, 2]), Err(PermError::EvenLength(2)));
    assert!(matches!(make_petal(vec![1, 1, 3]), Err(PermError::NotPermutation(_))));
    assert!(matches!(make_petal(vec![0, 1, 2]), Err(PermError::NotPermutation(_))));
    assert!(make_link(vec![1, 2, 3, 4], 1, 1).is_ok());
    assert!(make_link(vec![1, 2, 3], 1, 1).is_err());
    assert!(make_link(vec![2, 1], 0, 1).is_ok());
}

#[test]
fn symmetry_examples() {
    let p = perm(&[1, 3, 5, 2, 4]);
    assert_eq!(p.apply_symmetry(Symmetry::RotateValues).heights(), &[2, 4, 1, 3, 5]);
    assert_eq!(p.apply_symmetry(Symmetry::RotatePositions).heights(), &[3, 5, 2, 4, 1]);
    assert_eq!(perm(&[1, 2, 3]).apply_symmetry(Symmetry::Reflect).heights(), &[3, 2, 1]);
    let mut q = p.clone();
    for _ in 0..5 {
        q = q.apply_symmetry(Symmetry::RotateValues);
    }
    assert_eq!(q, p);
}

#[test]
fn stabilization_keeps_the_knot() {
    let p = perm(&[1, 3, 5, 2, 4]);
    for pos in 1..=6 {
        for level in 1..=6 {
            let q = p.stabilize(pos, level).unwrap();
            assert_eq!(q.petals(), 7);
            let d = petal_to_diagram(&q);
            assert_eq!(casson_c2(&d, Strategy::FullPoly).unwrap(), 1, "{q}");
        }
    }
    assert!(p.stabilize(0, 1).is_err());
    assert!(p.stabilize(1, 7).is_err());
}

#[test]
fn one_crossing_per_arc_pair_with_higher_arc_over() {
    let mut s = SeededStream::new(3, 0);
    for p in [1usize, 3, 5, 7, 9, 13] {
        let pi = perm(&uniform_heights(p, &mut s));
        let d = petal_to_diagram(&pi);
        assert_eq!(d.crossing_count(), p * (p - 1) / 2);
        assert_eq!(d.components(), 1);
        if p == 1 {
            continue;
        }
        let code = d.gauss_code();
        let walk = &code.components[0];
        assert_eq!(walk.len(), p * (p - 1));
        // arc k occupies entries (p-1)k .. (p-1)(k+1) of the walk
        let mut arcs_at: HashMap<usize, Vec<(usize, bool)>> = HashMap::new();
        for (i, g) in walk.iter().enumerate() {
            arcs_at.entry(g.crossing).or_default().push((i / (p - 1), g.over));
        }
        let mut pairs = std::collections::HashSet::new();
        for visits in arcs_at.values() {
            assert_eq!(visits.len(), 2);
            let ((k, ko), (l, lo)) = (visits[0], visits[1]);
            assert_ne!(k, l);
            assert!(pairs.insert((k.min(l), k.max(l))));
            assert_ne!(ko, lo);
            assert_eq!(ko, pi.height(k + 1) > pi.height(l + 1), "{pi}: arcs {k}, {l}");
        }
        assert_eq!(pairs.len(), p * (p - 1) / 2);
    }
}

#[test]
fn small_petal_counts_are_unknots() {
    for p in [1, 3] {
        for h in all_permutations(p) {
            let d = petal_to_diagram(&perm(&h));
            assert_eq!(alexander_polynomial(&d).unwrap().to_string(), "1");
        }
    }
}

#[test]
fn seven_petals_have_21_crossings() {
    for h in all_permutations(7).into_iter().step_by(97) {
        assert_eq!(petal_to_diagram(&perm(&h)).crossing_count(), 21);
    }
}
