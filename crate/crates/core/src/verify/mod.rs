//! Exhaustive checks of the structural lemmas on one concrete graph, and the
//! per-graph report and batch pipeline built on top of them.
//!
//! Distance facts are recomputed here from full breadth-first searches and
//! regions are rebuilt from scratch, so the checks do not share code paths
//! with the decomposition they audit.

mod batch;
mod report;

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::decomposition::{
    all_tails, assemble_superregions, build_and_classify_regions, build_class_table, check_tail_intersection,
    find_tails, low_degree_set, recover_attachment, region_equivalence, verify_partition, Decomposition,
    DecompositionError, PartitionVerdict, TailIntersection,
};
use crate::graph::{basic_checks, bfs_distances, graph_power, Dist2Profile, Distance, Graph, Vertex};
use crate::pairbook::{
    build_book, detect_collisions, quota_shortfalls, resolve_collisions, s3_overloads, PairBook, PairError, Resolution,
};

pub use batch::{render_batch, run_batch, BatchError, BatchItem, Summary};
pub use report::{analyze, CollisionStats, RationalValue, Report, Status, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    /// `checked` counts the instances the statement was quantified over.
    Pass {
        checked: usize,
    },
    Fail {
        witness: Vec<Vertex>,
        detail: String,
    },
    Skipped {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    #[serde(flatten)]
    pub verdict: Verdict,
}

impl Check {
    pub fn failed(&self) -> bool {
        matches!(self.verdict, Verdict::Fail { .. })
    }
}

/// Every check in report order.
pub const CHECK_NAMES: [&str; 21] = [
    "distance-profile",
    "second-degree-boundary",
    "region-min-size",
    "region-locality",
    "region-size-by-min-deg2",
    "region-max-size",
    "region-disjoint",
    "c-region-span",
    "c-region-component",
    "c-region-hub-neighbours",
    "decomposition",
    "tail-nesting",
    "head-attachment",
    "superregion-partition",
    "designation-bound",
    "pair-construction",
    "pair-distance",
    "pair-quota",
    "collision-type",
    "s3-load",
    "collision-resolution",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("graph is not regular")]
    NotRegular,
    #[error("graph is not connected")]
    Disconnected,
}

/// Check verdicts plus the intermediate structures the report reuses.
#[derive(Debug, Clone)]
pub struct Audit {
    pub d: usize,
    pub profile: Dist2Profile,
    pub checks: Vec<Check>,
    pub decomposition: Option<Decomposition>,
    pub book: Option<PairBook>,
    pub resolution: Option<Resolution>,
}

/// Runs every check; the graph must be connected and regular.
pub fn lemma_suite(g: &Graph) -> Result<Vec<Check>, SuiteError> {
    audit(g).map(|a| a.checks)
}

/// Second neighbourhoods from full BFS distance vectors.
struct Brute {
    n2: Vec<Vec<Vertex>>,
    n2_prime: Vec<Vec<Vertex>>,
}

impl Brute {
    fn new(g: &Graph) -> Self {
        let (mut n2, mut n2_prime) = (Vec::with_capacity(g.n()), Vec::with_capacity(g.n()));
        for v in 0..g.n() {
            let dist = bfs_distances(g, v).expect("vertex in range");
            let second: Vec<Vertex> = (0..g.n()).filter(|&x| dist[x] == Distance::Finite(2)).collect();
            let prime = second
                .iter()
                .copied()
                .filter(|&x| g.neighbors(x).iter().any(|&y| dist[y] == Distance::Finite(3)))
                .collect();
            n2.push(second);
            n2_prime.push(prime);
        }
        Brute { n2, n2_prime }
    }

    fn deg2(&self, v: Vertex) -> usize {
        self.n2[v].len()
    }

    fn within_two(&self, g: &Graph, u: Vertex, v: Vertex) -> bool {
        u == v || g.has_edge(u, v) || self.n2[u].binary_search(&v).is_ok()
    }
}

fn pass(checked: usize) -> Verdict {
    Verdict::Pass { checked }
}

fn fail(witness: Vec<Vertex>, detail: impl Into<String>) -> Verdict {
    Verdict::Fail {
        witness,
        detail: detail.into(),
    }
}

struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn put(&mut self, name: &'static str, verdict: Verdict) {
        debug_assert!(CHECK_NAMES.contains(&name));
        self.checks.push(Check { name, verdict });
    }

    /// Marks every check not yet recorded as skipped and restores report order.
    fn finish(mut self, reason: Option<String>) -> Vec<Check> {
        for name in CHECK_NAMES {
            if !self.checks.iter().any(|c| c.name == name) {
                let reason = reason.clone().unwrap_or_else(|| "not reached".into());
                self.checks.push(Check {
                    name,
                    verdict: Verdict::Skipped { reason },
                });
            }
        }
        self.checks
            .sort_by_key(|c| CHECK_NAMES.iter().position(|&n| n == c.name));
        self.checks
    }
}

fn distance_profile(g: &Graph, profile: &Dist2Profile, brute: &Brute) -> Verdict {
    let square = graph_power(g, 2).expect("exponent is positive");
    for v in 0..g.n() {
        if profile.n2(v) != brute.n2[v] || profile.n2_prime(v) != brute.n2_prime[v] {
            return fail(vec![v], "fast profile disagrees with full breadth-first search");
        }
        if square.degree(v) != g.degree(v) + brute.deg2(v) {
            return fail(vec![v], "degree in the square is not deg + deg2");
        }
    }
    pass(g.n())
}

fn boundary_degree(d: usize, brute: &Brute) -> Verdict {
    let mut checked = 0;
    for (v, prime) in brute.n2_prime.iter().enumerate() {
        for &u in prime {
            checked += 1;
            if brute.deg2(u) + brute.deg2(v) < d + 1 {
                return fail(
                    vec![v, u],
                    format!(
                        "deg2(u) = {} but d - deg2(v) + 1 = {}",
                        brute.deg2(u),
                        d + 1 - brute.deg2(v)
                    ),
                );
            }
        }
    }
    pass(checked)
}

/// Low-degree classes by search over the "distance at most two" relation.
fn low_classes(g: &Graph, brute: &Brute) -> Vec<Vec<Vertex>> {
    let low: Vec<bool> = (0..g.n()).map(|v| brute.deg2(v) < 4).collect();
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for s in (0..g.n()).filter(|&v| low[v]) {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut class = vec![s];
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &x in g.neighbors(v).iter().chain(&brute.n2[v]) {
                if low[x] && !seen[x] {
                    seen[x] = true;
                    class.push(x);
                    stack.push(x);
                }
            }
        }
        class.sort_unstable();
        out.push(class);
    }
    out
}

struct RawRegion {
    core: Vec<Vertex>,
    vertices: Vec<Vertex>,
}

fn raw_regions(g: &Graph, brute: &Brute) -> Vec<RawRegion> {
    low_classes(g, brute)
        .into_iter()
        .map(|core| {
            let set: BTreeSet<Vertex> = core
                .iter()
                .flat_map(|&v| g.neighbors(v).iter().copied())
                .chain(core.iter().copied())
                .collect();
            RawRegion {
                core,
                vertices: set.into_iter().collect(),
            }
        })
        .collect()
}

fn region_bounds(g: &Graph, d: usize, brute: &Brute, regions: &[RawRegion], rec: &mut Recorder) {
    let count = regions.len();
    let first = |bad: Option<&RawRegion>, detail: &str| match bad {
        Some(r) => fail(r.core.clone(), detail),
        None => pass(count),
    };
    rec.put(
        "region-min-size",
        first(
            regions.iter().find(|r| r.vertices.len() < d + 1),
            "region has fewer than d + 1 vertices",
        ),
    );
    let mut locality = pass(count);
    'outer: for r in regions {
        for &v in &r.core {
            if let Some(&x) = r.vertices.iter().find(|&&x| !brute.within_two(g, v, x)) {
                locality = fail(vec![v, x], "region vertex at distance three or more from a core vertex");
                break 'outer;
            }
        }
    }
    rec.put("region-locality", locality);
    let min_deg2 = |r: &RawRegion| r.vertices.iter().map(|&v| brute.deg2(v)).min().unwrap_or(0);
    rec.put(
        "region-size-by-min-deg2",
        first(
            regions.iter().find(|r| r.vertices.len() > d + min_deg2(r) + 1),
            "region larger than d + t + 1",
        ),
    );
    rec.put(
        "region-max-size",
        first(
            regions.iter().find(|r| r.vertices.len() > d + 4),
            "region larger than d + 4",
        ),
    );
    let mut owner = vec![usize::MAX; g.n()];
    let mut disjoint = pass(count);
    'regions: for (i, r) in regions.iter().enumerate() {
        for &v in &r.vertices {
            if owner[v] != usize::MAX {
                disjoint = fail(vec![v], format!("vertex shared by regions {} and {i}", owner[v]));
                break 'regions;
            }
            owner[v] = i;
        }
    }
    rec.put("region-disjoint", disjoint);
}

/// Component of `G - removed` containing `start`, sorted.
fn component_without(g: &Graph, start: Vertex, removed: Vertex) -> Vec<Vertex> {
    let mut seen = vec![false; g.n()];
    seen[removed] = true;
    seen[start] = true;
    let mut queue = std::collections::VecDeque::from([start]);
    let mut out = vec![start];
    while let Some(v) = queue.pop_front() {
        for &x in g.neighbors(v) {
            if !seen[x] {
                seen[x] = true;
                out.push(x);
                queue.push_back(x);
            }
        }
    }
    out.sort_unstable();
    out
}

fn c_regions(g: &Graph, brute: &Brute, regions: &[RawRegion], rec: &mut Recorder) {
    let mut span = pass(0);
    let mut component = pass(0);
    let mut hub = pass(0);
    let mut checked = 0;
    for r in regions {
        // C regions: no deg2 = 1 vertex, and a deg2 = 2 vertex with one boundary vertex
        if r.core.iter().any(|&v| brute.deg2(v) <= 1) {
            continue;
        }
        for &v in r
            .core
            .iter()
            .filter(|&&v| brute.deg2(v) == 2 && brute.n2_prime[v].len() == 1)
        {
            checked += 1;
            let u = brute.n2_prime[v][0];
            let g_v = component_without(g, v, u);
            let far: Vec<Vertex> = g_v
                .iter()
                .copied()
                .filter(|&x| brute.n2[u].binary_search(&x).is_ok())
                .collect();
            let near: Vec<Vertex> = r.vertices.iter().copied().filter(|&x| g.has_edge(u, x)).collect();
            if matches!(span, Verdict::Pass { .. }) {
                let stray = r
                    .vertices
                    .iter()
                    .copied()
                    .find(|&x| x != u && !g.has_edge(u, x) && far.binary_search(&x).is_err());
                if let Some(x) = stray {
                    span = fail(vec![v, u, x], "region vertex outside V, X, w and u");
                }
            }
            if matches!(component, Verdict::Pass { .. }) && g_v != r.vertices {
                let diff = g_v
                    .iter()
                    .chain(&r.vertices)
                    .copied()
                    .find(|x| g_v.binary_search(x).is_err() || r.vertices.binary_search(x).is_err())
                    .unwrap_or(v);
                component = fail(
                    vec![v, u, diff],
                    "component of G - u containing v differs from the region",
                );
            }
            if matches!(hub, Verdict::Pass { .. }) && (near.len() < 2 || far.len() < 4) {
                hub = fail(
                    vec![v, u],
                    format!("{} region neighbours of u and |V| = {}", near.len(), far.len()),
                );
            }
        }
    }
    for verdict in [&mut span, &mut component, &mut hub] {
        if let Verdict::Pass { checked: c } = verdict {
            *c = checked;
        }
    }
    rec.put("c-region-span", span);
    rec.put("c-region-component", component);
    rec.put("c-region-hub-neighbours", hub);
}

fn decomposition_failure(e: &DecompositionError, superregion_vertices: impl Fn(usize) -> Vec<Vertex>) -> Verdict {
    let witness = match e {
        DecompositionError::RegionBound { witness, .. } => witness.clone(),
        DecompositionError::Degenerate { vertex, .. } => vec![*vertex],
        DecompositionError::AmbiguousHead { attachment } | DecompositionError::HeadMismatch { attachment } => {
            vec![*attachment]
        }
        DecompositionError::DesignationBound { superregion, .. } => superregion_vertices(*superregion),
        DecompositionError::NotRegular
        | DecompositionError::SnakeGraph { .. }
        | DecompositionError::Inconsistent(_) => Vec::new(),
    };
    fail(witness, e.to_string())
}

/// Runs the checks and keeps the decomposition and pair book for reporting.
pub fn audit(g: &Graph) -> Result<Audit, SuiteError> {
    let basic = basic_checks(g);
    if !basic.is_connected {
        return Err(SuiteError::Disconnected);
    }
    let d = basic.regular_degree.ok_or(SuiteError::NotRegular)?;
    let profile = Dist2Profile::new(g);
    let brute = Brute::new(g);
    let mut rec = Recorder { checks: Vec::new() };
    rec.put("distance-profile", distance_profile(g, &profile, &brute));
    rec.put("second-degree-boundary", boundary_degree(d, &brute));
    let raw = raw_regions(g, &brute);
    region_bounds(g, d, &brute, &raw, &mut rec);
    c_regions(g, &brute, &raw, &mut rec);

    let mut audit = Audit {
        d,
        profile,
        checks: Vec::new(),
        decomposition: None,
        book: None,
        resolution: None,
    };
    let reason = library_stages(g, d, &mut audit, &mut rec);
    audit.checks = rec.finish(reason);
    Ok(audit)
}

/// Decomposition and pair-book checks. Returns why later checks were skipped.
fn library_stages(g: &Graph, d: usize, audit: &mut Audit, rec: &mut Recorder) -> Option<String> {
    let profile = &audit.profile;
    let classes = region_equivalence(g, profile, &low_degree_set(profile));
    let regions = match build_and_classify_regions(g, profile, &classes) {
        Ok(r) => r,
        Err(e) => {
            rec.put("decomposition", decomposition_failure(&e, |_| Vec::new()));
            return Some(format!("decomposition failed: {e}"));
        }
    };
    let tails = find_tails(g, profile, &regions);
    let every = all_tails(&tails);
    rec.put(
        "tail-nesting",
        match check_tail_intersection(g, &every) {
            TailIntersection::Consistent | TailIntersection::Snake { .. } => pass(every.len()),
            TailIntersection::Violation { shared, .. } => fail(vec![shared], "intersecting tails are not nested"),
        },
    );
    let superregions = match assemble_superregions(g, &regions, &tails) {
        Ok(s) => s,
        Err(DecompositionError::SnakeGraph { d, segments }) => {
            let reason = format!("snake graph (d = {d}, {segments} segments) has no superregion partition");
            rec.put("decomposition", Verdict::Skipped { reason: reason.clone() });
            return Some(reason);
        }
        Err(e) => {
            rec.put("decomposition", decomposition_failure(&e, |_| Vec::new()));
            return Some(format!("decomposition failed: {e}"));
        }
    };

    let attachments: BTreeSet<Vertex> = every.iter().map(|t| t.attachment).collect();
    let mut heads = 0;
    let mut head_verdict = None;
    for s in &superregions {
        let Some(head) = &s.head else { continue };
        heads += 1;
        let hits: Vec<Vertex> = head
            .vertices
            .iter()
            .copied()
            .filter(|v| attachments.contains(v))
            .collect();
        if hits != [head.attachment] {
            head_verdict = Some(fail(hits, "head region does not hold exactly one tail attachment"));
        } else if recover_attachment(g, &head.vertices) != Some(head.attachment) {
            head_verdict = Some(fail(
                vec![head.attachment],
                "link-vertex procedure misses the attachment",
            ));
        }
        if head_verdict.is_some() {
            break;
        }
    }
    rec.put("head-attachment", head_verdict.unwrap_or(pass(heads)));
    rec.put(
        "superregion-partition",
        match verify_partition(g, &superregions) {
            PartitionVerdict::Holds => pass(superregions.len()),
            PartitionVerdict::RefusedSnake { .. } => Verdict::Skipped {
                reason: "snake graph".into(),
            },
            PartitionVerdict::Overlap { vertex, first, second } => {
                fail(vec![vertex], format!("vertex in superregions {first} and {second}"))
            }
            PartitionVerdict::Uncovered { vertex } => fail(vec![vertex], "vertex in no superregion"),
        },
    );

    let classes = match build_class_table(profile, d, &regions, &superregions) {
        Ok(c) => c,
        Err(e) => {
            let verdict = decomposition_failure(&e, |id| superregions[id].vertices.clone());
            if matches!(e, DecompositionError::DesignationBound { .. }) {
                rec.put("designation-bound", verdict.clone());
            }
            rec.put("decomposition", verdict);
            return Some(format!("decomposition failed: {e}"));
        }
    };
    let over = superregions.iter().find(|s| {
        let flagged = s
            .vertices
            .iter()
            .filter(|&&v| !classes.in_u(v) && (classes.in_w(v) || classes.class(v).designated_n))
            .count();
        (d + 1) * flagged > 2 * s.len()
    });
    rec.put(
        "designation-bound",
        match over {
            Some(s) => fail(s.vertices.clone(), "too many W and N vertices outside U"),
            None => pass(superregions.len()),
        },
    );
    rec.put("decomposition", pass(superregions.len()));
    let dec = Decomposition {
        d,
        regions,
        tails,
        superregions,
        classes,
    };

    let book = match build_book(g, profile, &dec) {
        Ok(b) => b,
        Err(PairError::ExceptionGraph(name)) => {
            audit.decomposition = Some(dec);
            let reason = format!("pair sets are not defined for the {name} exception");
            rec.put("pair-construction", Verdict::Skipped { reason: reason.clone() });
            return Some(reason);
        }
        Err(e) => {
            let witness = match &e {
                PairError::InvalidPair { x, y, .. } => vec![*x, *y],
                PairError::Malformed { owner, .. } => dec.superregions[*owner].vertices.clone(),
                PairError::ExceptionGraph(_) => Vec::new(),
            };
            rec.put("pair-construction", fail(witness, e.to_string()));
            audit.decomposition = Some(dec);
            return Some(format!("pair construction failed: {e}"));
        }
    };
    rec.put("pair-construction", pass(book.total()));
    rec.put(
        "pair-distance",
        match book
            .pairs()
            .find(|p| audit.profile.n2(p.x).binary_search(&p.y).is_err())
        {
            Some(p) => fail(
                vec![p.x, p.y],
                format!("pair of superregion {} is not at distance two", p.owner),
            ),
            None => pass(book.total()),
        },
    );
    rec.put(
        "pair-quota",
        match quota_shortfalls(&book, &dec).first() {
            Some(&(id, have, need)) => fail(
                dec.superregions[id].vertices.clone(),
                format!("{have} pairs, {need} needed"),
            ),
            None => pass(dec.superregions.len()),
        },
    );
    let before = detect_collisions(&book);
    rec.put(
        "collision-type",
        match before.forbidden.first() {
            Some(c) => fail(vec![c.x, c.y], format!("pair claimed with tags {:?}", c.owners)),
            None => pass(before.len()),
        },
    );
    let mut resolved = book.clone();
    let resolution = resolve_collisions(g, &audit.profile, &dec, &mut resolved);
    let overloads: Vec<_> = s3_overloads(&book, &audit.profile)
        .into_iter()
        .chain(s3_overloads(&resolved, &audit.profile))
        .collect();
    rec.put(
        "s3-load",
        match overloads.first() {
            Some(&(_, v, count)) => fail(
                vec![v],
                format!("{count} S3 pairs end at a vertex with deg2 = {}", audit.profile.deg2(v)),
            ),
            None => pass(
                resolved
                    .pairs()
                    .filter(|p| p.tag == crate::pairbook::PairTag::S3)
                    .count(),
            ),
        },
    );
    rec.put(
        "collision-resolution",
        match (resolution.unresolved.first(), resolved.is_disjoint()) {
            (Some(u), _) => fail(vec![u.x, u.y], u.case.clone()),
            (None, false) => fail(Vec::new(), "book still has a shared pair"),
            (None, true) => pass(resolution.found),
        },
    );
    audit.decomposition = Some(dec);
    audit.book = Some(resolved);
    audit.resolution = Some(resolution);
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_a_tail_graph, make_peanut, make_snake, make_tail_graph, random_regular};

    fn verdict<'a>(checks: &'a [Check], name: &str) -> &'a Verdict {
        &checks.iter().find(|c| c.name == name).unwrap().verdict
    }

    #[test]
    fn every_check_is_reported_in_order() {
        let (g, _) = make_tail_graph(7, 1).unwrap();
        let checks = lemma_suite(&g).unwrap();
        let names: Vec<&str> = checks.iter().map(|c| c.name).collect();
        assert_eq!(names, CHECK_NAMES);
        assert!(
            checks.iter().all(|c| matches!(c.verdict, Verdict::Pass { .. })),
            "{checks:?}"
        );
    }

    #[test]
    fn irregular_input_is_refused() {
        let (g, _) = make_snake(7, 1, 1).unwrap();
        let (a, b) = g.edges().next().unwrap();
        let broken = Graph::from_edges(g.n(), g.edges().filter(|&e| e != (a, b))).unwrap();
        assert_eq!(lemma_suite(&broken), Err(SuiteError::NotRegular));
        let two = Graph::complete(4).disjoint_union(&Graph::complete(4));
        assert_eq!(lemma_suite(&two), Err(SuiteError::Disconnected));
    }

    #[test]
    fn peanut_passes_region_lemmas_and_partition() {
        let (g, _) = make_peanut(8).unwrap();
        let checks = lemma_suite(&g).unwrap();
        for name in [
            "second-degree-boundary",
            "region-min-size",
            "region-locality",
            "region-disjoint",
            "superregion-partition",
        ] {
            assert!(matches!(verdict(&checks, name), Verdict::Pass { .. }), "{name}");
        }
        assert!(matches!(verdict(&checks, "pair-quota"), Verdict::Skipped { .. }));
        assert!(!checks.iter().any(Check::failed));
    }

    #[test]
    fn snake_skips_the_partition() {
        let (g, _) = make_snake(9, 1, 2).unwrap();
        let checks = lemma_suite(&g).unwrap();
        assert!(!checks.iter().any(Check::failed));
        assert!(matches!(
            verdict(&checks, "superregion-partition"),
            Verdict::Skipped { .. }
        ));
        assert!(matches!(verdict(&checks, "tail-nesting"), Verdict::Pass { .. }));
    }

    #[test]
    fn head_lemma_is_exercised() {
        let (g, _) = make_a_tail_graph(9, 1, 2).unwrap();
        let checks = lemma_suite(&g).unwrap();
        assert_eq!(verdict(&checks, "head-attachment"), &Verdict::Pass { checked: 1 });
    }

    #[test]
    fn c_region_lemmas_are_exercised() {
        let g = crate::pairbook::tests::c_region_collision_graph();
        let checks = lemma_suite(&g).unwrap();
        assert!(!checks.iter().any(Check::failed), "{checks:?}");
        assert!(matches!(verdict(&checks, "c-region-component"), Verdict::Pass { checked } if *checked > 0));
        assert!(matches!(verdict(&checks, "collision-type"), Verdict::Pass { checked } if *checked > 0));
    }

    #[test]
    fn random_graph_passes() {
        let g = random_regular(60, 8, 3).unwrap();
        assert!(!lemma_suite(&g).unwrap().iter().any(Check::failed));
    }
}
