use num_rational::Ratio;

use super::*;
use crate::decomposition::{decompose, RegionClass, SuperregionKind};
use crate::families::{
    make_a_tail_graph, make_b_tail_graph, make_multitail_graph, make_peanut, make_tail_graph, random_regular,
};

struct Certified {
    profile: Dist2Profile,
    dec: Decomposition,
    book: PairBook,
    resolution: Resolution,
}

fn certify(g: &Graph) -> Certified {
    let profile = Dist2Profile::new(g);
    let dec = decompose(g, &profile).unwrap();
    let mut book = build_book(g, &profile, &dec).unwrap();
    let resolution = resolve_collisions(g, &profile, &dec, &mut book);
    Certified {
        profile,
        dec,
        book,
        resolution,
    }
}

fn assert_sound(g: &Graph, c: &Certified) {
    assert!(c.book.pairs().all(|p| c.profile.at_distance_two(p.x, p.y)));
    assert!(quota_shortfalls(&c.book, &c.dec).is_empty());
    assert!(s3_overloads(&c.book, &c.profile).is_empty());
    assert!(c.resolution.unresolved.is_empty(), "{:?}", c.resolution.unresolved);
    assert!(c.book.is_disjoint());
    assert!(c.book.total() <= c.profile.sum_deg2());
    let report = aggregate_bound(g, &c.profile, &c.book, &c.dec.classes);
    assert!(report.sum_pairs >= report.four_v);
}

/// A `d = 8` graph whose C region's `W` vertex is also the chosen boundary
/// source of a low-degree vertex in a neighbouring G region.
pub(crate) fn c_region_collision_graph() -> Graph {
    // ids: g0..g9 = 0..10, u = 10, y = 11, a1..a5 = 12..17, p1, p2 = 17, 18,
    // q = 19, r1, r2 = 20, 21, s1..s7 = 22..29
    let gv: Vec<usize> = (0..10).collect();
    let (u, y, q, r1, r2) = (10, 11, 19, 20, 21);
    let a: Vec<usize> = (12..17).collect();
    let p = [17, 18];
    let s: Vec<usize> = (22..29).collect();
    let mut edges = Vec::new();
    let missing = [(0, 1), (0, 2), (1, 3), (4, 5), (6, 7), (8, 9)];
    for (i, &x) in gv.iter().enumerate() {
        for &z in &gv[i + 1..] {
            if !missing.contains(&(x, z)) {
                edges.push((x, z));
            }
        }
    }
    edges.extend([(u, 0), (u, 1), (u, y)]);
    let ys: Vec<usize> = a.iter().chain(&p).copied().collect();
    for &t in &ys {
        edges.push((y, t));
    }
    for &t in &a {
        edges.push((u, t));
    }
    let y_missing = [(12, 13), (14, 15)];
    for (i, &t) in ys.iter().enumerate() {
        for &o in &ys[i + 1..] {
            if !y_missing.contains(&(t, o)) {
                edges.push((t, o));
            }
        }
    }
    for &t in &[12, 13, 14, 15, 17, 18] {
        edges.push((q, t));
    }
    edges.extend([(q, r1), (q, r2)]);
    let block: Vec<usize> = [r1, r2].into_iter().chain(s.iter().copied()).collect();
    for (i, &x) in block.iter().enumerate() {
        for &z in &block[i + 1..] {
            if (x, z) != (r1, r2) {
                edges.push((x, z));
            }
        }
    }
    Graph::from_edges(29, edges).unwrap()
}

#[test]
fn rhs_values() {
    assert_eq!(theorem_rhs(100, 9), Some(Ratio::from_integer(60)));
    assert_eq!(theorem_rhs(50, 7), Some(Ratio::from_integer(0)));
    assert_eq!(theorem_rhs(19, 8), Some(Ratio::new(304, 45)));
    assert_eq!(theorem_rhs(10, 6), None);
}

#[test]
fn tail_pair_counts() {
    for (d, k) in [(7, 1), (7, 3), (9, 2)] {
        let (g, _) = make_tail_graph(d, k).unwrap();
        let c = certify(&g);
        let tail = c
            .dec
            .superregions
            .iter()
            .find(|s| s.kind == SuperregionKind::Tail)
            .unwrap();
        let set = &c.book.sets[tail.id];
        let count = |tag| set.iter().filter(|p| p.tag == tag).count();
        let u_t = tail.tails[0].attachment;
        let s2 = set.iter().filter(|p| p.y == u_t).count();
        let s3 = set.iter().filter(|p| p.x == u_t).count();
        assert_eq!(count(PairTag::S1), (4 * k - 3) * (d - 1));
        assert_eq!((s2, s3), (d - 1, d - 1));
        assert_eq!(count(PairTag::S4), d - 1);
        assert_eq!(set.len(), 4 * k * (d - 1));
        assert_sound(&g, &c);
    }
}

#[test]
fn a_tail_has_exactly_four_per_v_vertex() {
    let (g, _) = make_a_tail_graph(7, 1, 0).unwrap();
    let c = certify(&g);
    let a = c
        .dec
        .superregions
        .iter()
        .find(|s| s.kind == SuperregionKind::ATail)
        .unwrap();
    let v_count = a.vertices.iter().filter(|&&v| c.dec.classes.in_v(v)).count();
    assert_eq!(v_count, 11);
    assert_eq!(c.book.sets[a.id].len(), 44);
    assert_sound(&g, &c);
}

#[test]
fn head_tails_meet_their_quota() {
    for (d, k, xp) in [(7, 2, 2), (9, 1, 4), (9, 1, 0)] {
        let (g, _) = make_a_tail_graph(d, k, xp).unwrap();
        assert_sound(&g, &certify(&g));
    }
    for (d, k, xp) in [(7, 1, 2), (7, 2, 4), (9, 1, 6), (9, 2, 2)] {
        let (g, _) = make_b_tail_graph(d, k, xp).unwrap();
        assert_sound(&g, &certify(&g));
    }
}

#[test]
fn multitail_is_union_of_tails() {
    let (g, _) = make_multitail_graph(7, &[1, 2, 1]).unwrap();
    let c = certify(&g);
    let m = c
        .dec
        .superregions
        .iter()
        .find(|s| s.kind == SuperregionKind::Multitail)
        .unwrap();
    assert_eq!(c.book.sets[m.id].len(), 4 * 4 * 6);
    assert_sound(&g, &c);
}

#[test]
fn random_graph_is_all_singletons() {
    let g = random_regular(100, 9, 42).unwrap();
    let c = certify(&g);
    assert!(c.dec.superregions.iter().all(|s| s.kind == SuperregionKind::Singleton));
    assert_eq!(c.resolution.found, 0);
    let direct: usize = (0..g.n())
        .filter(|&v| c.dec.classes.in_v(v))
        .map(|v| c.profile.deg2(v))
        .sum();
    assert_eq!(c.book.total(), direct);
    let report = aggregate_bound(&g, &c.profile, &c.book, &c.dec.classes);
    assert_eq!(report.verdict, BoundVerdict::Pass);
    assert_sound(&g, &c);
}

#[test]
fn singleton_outside_v_gets_nothing() {
    let (g, meta) = make_multitail_graph(7, &[1, 1, 1]).unwrap();
    let c = certify(&g);
    let u = meta.label("u");
    let s = c.dec.superregions.iter().find(|s| s.vertices == [u]).unwrap();
    assert!(!c.dec.classes.in_v(u));
    assert!(c.book.sets[s.id].is_empty());
}

#[test]
fn peanut_is_refused() {
    let (g, _) = make_peanut(8).unwrap();
    let p = Dist2Profile::new(&g);
    let dec = decompose(&g, &p).unwrap();
    assert_eq!(build_book(&g, &p, &dec), Err(PairError::ExceptionGraph("peanut")));
}

#[test]
fn c_region_collision_is_repaired() {
    let g = c_region_collision_graph();
    assert_eq!(g.regular_degree(), Some(8));
    let profile = Dist2Profile::new(&g);
    let dec = decompose(&g, &profile).unwrap();
    let kinds: Vec<_> = dec.superregions.iter().map(|s| s.kind).collect();
    assert!(kinds.contains(&SuperregionKind::PlainRegion(RegionClass::C)));
    let mut book = build_book(&g, &profile, &dec).unwrap();
    let before = detect_collisions(&book);
    assert!(before.forbidden.is_empty());
    assert!(before.allowed.iter().any(|c| (c.x, c.y) == (0, 11)));
    let res = resolve_collisions(&g, &profile, &dec, &mut book);
    assert!(res.replacements.iter().any(|r| r.1 == (0, 11) && r.2 == (1, 11)));
    assert!(res.unresolved.is_empty());
    assert!(book.is_disjoint());
}

#[test]
fn empty_collision_list_leaves_book_unchanged() {
    let (g, _) = make_tail_graph(7, 1).unwrap();
    let profile = Dist2Profile::new(&g);
    let dec = decompose(&g, &profile).unwrap();
    let mut book = build_book(&g, &profile, &dec).unwrap();
    let original = book.clone();
    let res = resolve_collisions(&g, &profile, &dec, &mut book);
    assert_eq!(res.found, 0);
    assert_eq!(book, original);
}
