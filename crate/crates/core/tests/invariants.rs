use petaluma::invariants::{
    alexander_polynomial, casson_c2, conway_skein, jones_polynomial, kauffman_jones, linking_number, linking_sum,
    perm_invariants, Strategy,
};
use petaluma::io::parse_pd;
use petaluma::moves::smooth;
use petaluma::petal::{petal_to_diagram, Crossing, KnotDiagram, LinkPetalPermutation, PetalPermutation};
use petaluma::sampling::{uniform_heights, SeededStream};
use petaluma::verify::fixture;
use petaluma::LaurentPolynomial;

fn perm(h: &[usize]) -> PetalPermutation {
    PetalPermutation::new(h.to_vec()).unwrap()
}

fn poly(s: &str) -> LaurentPolynomial {
    s.parse().unwrap()
}

/// Smooths crossing `x` of `d` in the orientation-respecting way by
/// merging edge labels: under-in joins over-out, over-in joins under-out.
fn smooth_crossing(d: &KnotDiagram, x: usize) -> KnotDiagram {
    let c = d.crossing(x);
    let (o_in, o_out) = (c.slots[c.over_in as usize], c.slots[4 - c.over_in as usize]);
    let (u_in, u_out) = (c.slots[0], c.slots[2]);
    let mut parent: Vec<usize> = (0..d.edge_count()).collect();
    fn find(p: &mut [usize], mut e: usize) -> usize {
        while p[e] != e {
            e = p[e];
        }
        e
    }
    let mut loops = d.free_loops();
    for (a, b) in [(u_in, o_out), (o_in, u_out)] {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            loops += 1;
        } else {
            parent[rb] = ra;
        }
    }
    let mut ids = std::collections::HashMap::new();
    let crossings: Vec<Crossing> = d
        .crossings()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != x)
        .map(|(_, c)| {
            let mut s = c.slots;
            for e in &mut s {
                let r = find(&mut parent, *e);
                let next = ids.len();
                *e = *ids.entry(r).or_insert(next);
            }
            Crossing::new(s, c.over_in)
        })
        .collect();
    KnotDiagram::from_crossings(crossings, loops, 0).unwrap()
}

/// The crossing of `d` whose over/under data differs after exchanging the
/// heights `t` and `t+1`.
fn swapped_crossing(p: &PetalPermutation, t: usize) -> usize {
    let (a, b) = (petal_to_diagram(p), petal_to_diagram(&p.swap_heights(t).unwrap()));
    let diff: Vec<usize> = (0..a.crossing_count()).filter(|&i| a.crossing(i) != b.crossing(i)).collect();
    assert_eq!(diff.len(), 1, "{p} swap {t}");
    diff[0]
}

#[test]
fn knot_table_values() {
    assert_eq!(alexander_polynomial(&petal_to_diagram(&perm(&[1, 3, 5, 2, 4]))).unwrap(), poly("t - 1 + t^-1"));
    assert_eq!(alexander_polynomial(&petal_to_diagram(&perm(&[1, 5, 3, 7, 2, 4, 6]))).unwrap(), poly("-t + 3 - t^-1"));
    for (name, delta, c2) in [
        ("3_1", "t - 1 + t^-1", 1),
        ("4_1", "-t + 3 - t^-1", -1),
        ("5_1", "t^2 - t + 1 - t^-1 + t^-2", 3),
        ("5_2", "2*t - 3 + 2*t^-1", 2),
        ("6_1", "-2*t + 5 - 2*t^-1", -2),
        ("6_2", "-t^2 + 3*t - 3 + 3*t^-1 - t^-2", -1),
        ("6_3", "t^2 - 3*t + 5 - 3*t^-1 + t^-2", 1),
        ("granny", "t^2 - 2*t + 3 - 2*t^-1 + t^-2", 2),
        ("unknot_descending", "1", 0),
    ] {
        let d = parse_pd(fixture(name).unwrap()).unwrap();
        assert_eq!(alexander_polynomial(&d).unwrap(), poly(delta), "{name}");
        assert_eq!(casson_c2(&d, Strategy::FullPoly).unwrap(), c2, "{name}");
        assert_eq!(casson_c2(&d, Strategy::Jet).unwrap(), c2, "{name}");
    }
}

#[test]
fn granny_and_square_differ_only_in_jones() {
    let g = parse_pd(fixture("granny").unwrap()).unwrap();
    let s = parse_pd(fixture("square").unwrap()).unwrap();
    assert_eq!(alexander_polynomial(&g).unwrap(), alexander_polynomial(&s).unwrap());
    let (jg, js) = (jones_polynomial(&g), jones_polynomial(&s));
    assert_ne!(jg, js);
    assert!(js.is_mirror_symmetric());
    assert!(!jg.is_mirror_symmetric());
}

#[test]
fn jones_state_sum_agrees_with_reduced_computation() {
    let mut s = SeededStream::new(5, 0);
    for _ in 0..20 {
        let p = perm(&uniform_heights(7, &mut s));
        let d = petal_to_diagram(&p);
        assert_eq!(kauffman_jones(&d).unwrap(), jones_polynomial(&d), "{p}");
    }
}

#[test]
fn conway_z2_coefficient_is_c2() {
    let mut s = SeededStream::new(6, 0);
    for _ in 0..30 {
        let p = perm(&uniform_heights(5, &mut s));
        let d = petal_to_diagram(&p);
        let z = conway_skein(&d).unwrap();
        assert_eq!(z.coeff(2), casson_c2(&d, Strategy::Jet).unwrap().into(), "{p}");
    }
}

#[test]
fn petal_lk_matches_diagram_smoothing() {
    let mut s = SeededStream::new(11, 0);
    for p in [5, 7, 9, 11] {
        for _ in 0..40 {
            let pi = perm(&uniform_heights(p, &mut s));
            for t in 1..p {
                let link = smooth(&pi, t).unwrap().link;
                let d = smooth_crossing(&petal_to_diagram(&pi), swapped_crossing(&pi, t));
                assert_eq!(d.components(), 2);
                // the double sum orients the second component against the
                // diagram exactly when the smoothed crossing is positive
                let sigma = petal_to_diagram(&pi).crossing(swapped_crossing(&pi, t)).sign() as i64;
                assert_eq!(d.linking_number(), Some(-sigma * linking_number(&link).unwrap()), "{pi} at {t}");
            }
        }
    }
}

#[test]
fn reflection_negates_lk_sample_by_sample() {
    let mut s = SeededStream::new(12, 0);
    for _ in 0..500 {
        let h = uniform_heights(40, &mut s);
        let link = LinkPetalPermutation::new(h, 8, 12).unwrap();
        assert_eq!(linking_number(&link.reflect()).unwrap(), -linking_number(&link).unwrap());
    }
}

#[test]
fn lk_double_sum_reference() {
    // independent evaluation of the double sum, pairs enumerated by height
    let mut s = SeededStream::new(13, 0);
    for _ in 0..200 {
        let h = uniform_heights(24, &mut s);
        let split = 10;
        let mut total = 0i64;
        for a in 0..h.len() {
            for b in 0..h.len() {
                if a < split && b >= split && h[a] > h[b] {
                    let sign = if (a + b) % 2 == 0 { 1 } else { -1 };
                    total += 2 * sign;
                }
            }
        }
        let j_alt: i64 = (split..h.len()).map(|b| if b % 2 == 0 { 1 } else { -1 }).sum();
        let i_alt: i64 = (0..split).map(|a| if a % 2 == 0 { 1 } else { -1 }).sum();
        // sgn(x) = 2[x > 0] - 1 for x != 0
        assert_eq!(linking_sum(&h, split), total - i_alt * j_alt);
    }
}

#[test]
fn hopf_fixture_links_once() {
    let d = parse_pd(fixture("hopf").unwrap()).unwrap();
    assert_eq!(d.components(), 2);
    assert_eq!(d.linking_number().map(i64::abs), Some(1));
    assert!(casson_c2(&d, Strategy::Jet).is_err());
}

#[test]
fn reports_carry_requested_parts() {
    let r = perm_invariants(&perm(&[1, 3, 5, 2, 4]), Some(Strategy::Jet), false).unwrap();
    assert!(r.delta.is_none() && r.jones.is_none());
    assert_eq!(r.c2, 1);
    let r = perm_invariants(&perm(&[1, 3, 5, 2, 4]), None, true).unwrap();
    assert_eq!(r.delta, Some(poly("t - 1 + t^-1")));
    assert_eq!(r.jones.unwrap().to_string(), "t^-1 + t^-3 - t^-4");
    assert_eq!(r.crossings, 10);
}
