use squarewatch_core::decomposition::{decompose, SuperregionKind};
use squarewatch_core::families::{
    make_a_tail_graph, make_b_tail_graph, make_multitail_graph, make_peanut, make_snake, make_tail_graph,
};
use squarewatch_core::format::{emit_graph6, parse_stream};
use squarewatch_core::graph::Dist2Profile;
use squarewatch_core::verify::{analyze, lemma_suite, run_batch, Status, Verdict};
use squarewatch_core::Graph;

fn d11_families() -> Vec<(String, Graph)> {
    let d = 11;
    let mut out = vec![("tail".to_string(), make_tail_graph(d, 2).unwrap().0)];
    for xp in (0..d - 3).step_by(2) {
        out.push((format!("atail x'={xp}"), make_a_tail_graph(d, 1, xp).unwrap().0));
    }
    for xp in (2..=d - 3).step_by(2) {
        out.push((format!("btail x'={xp}"), make_b_tail_graph(d, 1, xp).unwrap().0));
    }
    out.push(("multitail".into(), make_multitail_graph(d, &[1, 2, 1]).unwrap().0));
    out.push((
        "multitail m=5".into(),
        make_multitail_graph(d, &[1, 1, 1, 1, 1]).unwrap().0,
    ));
    out
}

#[test]
fn degree_eleven_families_pass_every_check() {
    for (name, g) in d11_families() {
        let checks = lemma_suite(&g).unwrap();
        assert!(
            checks.iter().all(|c| matches!(c.verdict, Verdict::Pass { .. })),
            "{name}: {checks:?}"
        );
        let report = analyze(&g, name.clone(), false);
        assert_eq!(report.status, Status::Pass, "{name}");
    }
}

#[test]
fn census_matches_the_construction() {
    let kinds = |g: &Graph| {
        let dec = decompose(g, &Dist2Profile::new(g)).unwrap();
        dec.superregions
            .iter()
            .map(|s| s.kind)
            .filter(|&k| k != SuperregionKind::Singleton)
            .collect::<Vec<_>>()
    };
    assert!(kinds(&make_b_tail_graph(9, 2, 4).unwrap().0).contains(&SuperregionKind::BTail));
    assert!(kinds(&make_a_tail_graph(9, 2, 2).unwrap().0).contains(&SuperregionKind::ATail));
    let multi = kinds(&make_multitail_graph(9, &[2, 1, 1]).unwrap().0);
    assert_eq!(multi.iter().filter(|&&k| k == SuperregionKind::Multitail).count(), 1);
    assert!(!multi.contains(&SuperregionKind::Tail));
}

#[test]
fn a_stream_with_one_snake_has_one_snake_status() {
    let mut text = String::new();
    for d in [7, 9] {
        text += &emit_graph6(&make_a_tail_graph(d, 1, 2).unwrap().0);
        text.push('\n');
    }
    text += &emit_graph6(&make_snake(9, 2, 1).unwrap().0);
    text.push('\n');
    text += &emit_graph6(&make_peanut(10).unwrap().0);
    text.push('\n');
    let (_, summary) = run_batch(&parse_stream(&text), Some(2), false).unwrap();
    assert_eq!(
        (
            summary.total,
            summary.pass,
            summary.exception_snake,
            summary.exception_peanut
        ),
        (4, 2, 1, 1)
    );
}

#[test]
fn reports_serialise_with_every_field() {
    let (g, _) = make_b_tail_graph(7, 1, 2).unwrap();
    let json: serde_json::Value = serde_json::to_value(analyze(&g, "b", false)).unwrap();
    for key in [
        "id",
        "n",
        "d",
        "status",
        "reason",
        "e_g",
        "e_g2",
        "sum_deg2",
        "theorem_rhs",
        "census",
        "lemmas",
        "collisions",
        "witness",
    ] {
        assert!(json.get(key).is_some(), "{key}");
    }
    assert_eq!(json["theorem_rhs"]["decimal"], "0.000000");
    assert_eq!(json["census"]["BTail"], 1);
}
