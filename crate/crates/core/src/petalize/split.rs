use std::collections::VecDeque;

use crate::petal::{Crossing, KnotDiagram};

/// Crossings reachable from crossing 0 when edges `cut` are removed.
fn reachable_without(d: &KnotDiagram, cut: [usize; 2]) -> Vec<bool> {
    let n = d.crossing_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in (0..d.edge_count()).filter(|e| !cut.contains(e)) {
        let (a, b) = (d.tail(e).crossing, d.head(e).crossing);
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    seen
}

/// A pair of edges whose removal disconnects the diagram, with the side of
/// each crossing.
pub fn find_two_edge_cut(d: &KnotDiagram) -> Option<([usize; 2], Vec<bool>)> {
    let edges = d.edge_count();
    for e1 in 0..edges {
        for e2 in e1 + 1..edges {
            let side = reachable_without(d, [e1, e2]);
            if side.iter().any(|&s| !s) {
                return Some(([e1, e2], side));
            }
        }
    }
    None
}

pub fn is_three_edge_connected(d: &KnotDiagram) -> bool {
    d.crossing_count() == 0 || find_two_edge_cut(d).is_none()
}

/// The part of `d` on crossings with `side[x] == keep`, with the two cut
/// edges joined into one.
fn part(d: &KnotDiagram, cut: [usize; 2], side: &[bool], keep: bool) -> KnotDiagram {
    // the cut edge leaving this part carries on as the joined edge
    let (leaving, entering) = if side[d.tail(cut[0]).crossing] == keep { (cut[0], cut[1]) } else { (cut[1], cut[0]) };
    let kept: Vec<usize> = (0..d.crossing_count()).filter(|&x| side[x] == keep).collect();
    let mut crossings: Vec<Crossing> = kept.iter().map(|&x| *d.crossing(x)).collect();
    for c in &mut crossings {
        for l in &mut c.slots {
            if *l == entering {
                *l = leaving;
            }
        }
    }
    let mut relabel = vec![usize::MAX; d.edge_count()];
    let mut next = 0;
    for c in &mut crossings {
        for l in &mut c.slots {
            if relabel[*l] == usize::MAX {
                relabel[*l] = next;
                next += 1;
            }
            *l = relabel[*l];
        }
    }
    let base = d.base_edge();
    let base = if base == entering { relabel[leaving] } else { relabel.get(base).copied().unwrap_or(usize::MAX) };
    let base = if base == usize::MAX { 0 } else { base };
    KnotDiagram::from_crossings(crossings, 0, base).expect("a 2-edge cut splits into planar factors")
}

/// Splits along 2-edge cuts until every factor is 3-edge-connected.
pub fn split_connected_sum(d: &KnotDiagram) -> Vec<KnotDiagram> {
    if d.crossing_count() == 0 {
        return vec![d.clone()];
    }
    match find_two_edge_cut(d) {
        None => vec![d.clone()],
        Some((cut, side)) => {
            let mut out = split_connected_sum(&part(d, cut, &side, true));
            out.extend(split_connected_sum(&part(d, cut, &side, false)));
            out
        }
    }
}
