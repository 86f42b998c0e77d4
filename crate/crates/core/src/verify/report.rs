use std::collections::BTreeMap;
use std::time::Instant;

use num_rational::Ratio;
use serde::Serialize;

use super::{audit, Check, Verdict};
use crate::decomposition::{detect_peanut, detect_snake};
use crate::graph::{basic_checks, graph_power, Dist2Profile, Graph, Vertex};
use crate::pairbook::theorem_rhs;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    ExceptionSnake,
    ExceptionPeanut,
    OutOfScope,
    Violation,
}

/// An exact fraction with a fixed six-place decimal rendering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalValue {
    pub num: i64,
    pub den: i64,
    pub decimal: String,
}

impl From<Ratio<i64>> for RationalValue {
    fn from(r: Ratio<i64>) -> Self {
        let (num, den) = (*r.numer(), *r.denom());
        // round half away from zero at six places, in integers
        let scaled = (num as i128 * 1_000_000 * 2 + den as i128 * num.signum() as i128) / (2 * den as i128);
        let sign = if scaled < 0 { "-" } else { "" };
        let abs = scaled.unsigned_abs();
        RationalValue {
            num,
            den,
            decimal: format!("{sign}{}.{:06}", abs / 1_000_000, abs % 1_000_000),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CollisionStats {
    pub found: usize,
    pub resolved: usize,
    pub unresolved: usize,
}

/// The first counterexample behind a violation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub source: String,
    pub vertices: Vec<Vertex>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub id: String,
    pub n: usize,
    pub d: Option<usize>,
    pub status: Status,
    /// Why the graph is outside the theorem, if it is.
    pub reason: Option<String>,
    pub e_g: usize,
    pub e_g2: usize,
    pub sum_deg2: usize,
    pub theorem_rhs: Option<RationalValue>,
    pub census: BTreeMap<String, usize>,
    pub lemmas: Vec<Check>,
    pub collisions: Option<CollisionStats>,
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

/// Full pipeline for one graph. Never fails: every outcome is a status.
pub fn analyze(g: &Graph, id: impl Into<String>, timing: bool) -> Report {
    let start = Instant::now();
    let n = g.n();
    let basic = basic_checks(g);
    let profile = Dist2Profile::new(g);
    let sum_deg2 = profile.sum_deg2();
    let e_g = g.edge_count();
    let e_g2 = graph_power(g, 2).expect("exponent is positive").edge_count();
    let d = basic.regular_degree;
    let mut report = Report {
        id: id.into(),
        n,
        d,
        status: Status::OutOfScope,
        reason: None,
        e_g,
        e_g2,
        sum_deg2,
        theorem_rhs: d.and_then(|d| theorem_rhs(n, d)).map(RationalValue::from),
        census: BTreeMap::new(),
        lemmas: Vec::new(),
        collisions: None,
        witness: None,
        timing_ms: None,
    };
    classify(g, &basic, &mut report);
    if timing {
        report.timing_ms = Some(start.elapsed().as_secs_f64() * 1000.0);
    }
    report
}

fn classify(g: &Graph, basic: &crate::graph::BasicChecks, report: &mut Report) {
    let n = g.n();
    if n == 0 {
        report.reason = Some("empty graph".into());
        return;
    }
    if !basic.is_connected {
        report.reason = Some("graph is disconnected".into());
        return;
    }
    let Some(d) = basic.regular_degree else {
        report.reason = Some("graph is not regular".into());
        return;
    };
    let audit = audit(g).expect("connected regular input");
    if let Some(dec) = &audit.decomposition {
        report.census = dec.census().into_iter().collect();
    }
    if let Some(res) = &audit.resolution {
        report.collisions = Some(CollisionStats {
            found: res.found,
            resolved: res.resolved,
            unresolved: res.unresolved.len(),
        });
    }
    report.lemmas = audit.checks;

    let identity = report.e_g2 >= report.e_g && 2 * (report.e_g2 - report.e_g) == report.sum_deg2;
    if detect_snake(g).is_some() {
        report.status = Status::ExceptionSnake;
        return;
    }
    if detect_peanut(g).is_some() {
        report.status = Status::ExceptionPeanut;
        return;
    }
    if d <= 6 {
        report.reason = Some(format!("degree {d} is at most 6"));
        return;
    }
    if basic.square_complete {
        report.reason = Some("square is complete".into());
        return;
    }
    let all: Vec<Vertex> = (0..n).collect();
    let witness = if !identity {
        Some(Witness {
            source: "square-identity".into(),
            vertices: all,
            detail: "e(G^2) - e(G) differs from half the deg2 sum".into(),
        })
    } else if let Some(c) = report.lemmas.iter().find(|c| c.failed()) {
        let Verdict::Fail { witness, detail } = &c.verdict else {
            unreachable!()
        };
        Some(Witness {
            source: c.name.into(),
            vertices: if witness.is_empty() { all } else { witness.clone() },
            detail: detail.clone(),
        })
    } else {
        let rhs = theorem_rhs(n, d).expect("d > 6");
        (Ratio::from_integer((report.sum_deg2 / 2) as i64) <= rhs).then(|| Witness {
            source: "theorem-bound".into(),
            vertices: all,
            detail: format!("e(G^2) - e(G) = {} is not above {rhs}", report.sum_deg2 / 2),
        })
    };
    report.status = if witness.is_some() {
        Status::Violation
    } else {
        Status::Pass
    };
    report.witness = witness;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_multitail_graph, make_peanut, make_snake, random_regular};

    #[test]
    fn decimal_rendering_is_exact() {
        assert_eq!(RationalValue::from(Ratio::new(304, 45)).decimal, "6.755556");
        assert_eq!(RationalValue::from(Ratio::new(-1, 3)).decimal, "-0.333333");
        assert_eq!(RationalValue::from(Ratio::from_integer(60)).decimal, "60.000000");
        assert_eq!(RationalValue::from(Ratio::new(1, 2_000_000)).decimal, "0.000001");
    }

    #[test]
    fn exceptions_are_named() {
        let (g, _) = make_snake(7, 1, 1).unwrap();
        let r = analyze(&g, "snake", false);
        assert_eq!((r.status, r.sum_deg2), (Status::ExceptionSnake, 44));
        let (g, _) = make_peanut(8).unwrap();
        let r = analyze(&g, "peanut", false);
        assert_eq!((r.status, r.sum_deg2), (Status::ExceptionPeanut, 52));
        assert_eq!(r.theorem_rhs.unwrap().decimal, "6.755556");
    }

    #[test]
    fn random_graph_passes() {
        let g = random_regular(100, 9, 7).unwrap();
        let r = analyze(&g, "r", false);
        assert_eq!(r.status, Status::Pass, "{:?}", r.witness);
        assert_eq!(r.census.get("Singleton"), Some(&100));
        assert_eq!(r.e_g2 - r.e_g, r.sum_deg2 / 2);
    }

    #[test]
    fn out_of_scope_reasons() {
        assert_eq!(
            analyze(&Graph::complete(8), "k8", false).reason.as_deref(),
            Some("square is complete")
        );
        let g = random_regular(30, 6, 1).unwrap();
        assert_eq!(analyze(&g, "d6", false).status, Status::OutOfScope);
        let two = Graph::complete(9).disjoint_union(&Graph::complete(9));
        assert_eq!(
            analyze(&two, "two", false).reason.as_deref(),
            Some("graph is disconnected")
        );
        assert_eq!(
            analyze(&Graph::empty(0), "e", false).reason.as_deref(),
            Some("empty graph")
        );
    }

    #[test]
    fn structured_family_passes_with_census() {
        let (g, _) = make_multitail_graph(7, &[1, 1, 1]).unwrap();
        let r = analyze(&g, "m", true);
        assert_eq!(r.status, Status::Pass, "{:?}", r.witness);
        assert_eq!(r.census.get("Multitail"), Some(&1));
        assert!(r.timing_ms.is_some());
        let json = serde_json::to_string(&analyze(&g, "m", false)).unwrap();
        assert!(!json.contains("timing_ms"));
        assert!(json.contains("\"status\":\"pass\""));
    }
}
