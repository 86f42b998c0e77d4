use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::{analyze, Report, Status};
use crate::format::FormatError;
use crate::graph::Graph;

#[derive(Debug, Error)]
pub enum BatchError {
    #[error("cannot start worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error("cannot serialise report: {0}")]
    Json(#[from] serde_json::Error),
}

/// One line of batch output: a report, or the reason an input failed to parse.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum BatchItem {
    Report(Box<Report>),
    ParseError { id: String, parse_error: String },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub exception_snake: usize,
    pub exception_peanut: usize,
    pub out_of_scope: usize,
    pub violation: usize,
    pub parse_errors: usize,
}

impl Summary {
    fn add(&mut self, item: &BatchItem) {
        self.total += 1;
        match item {
            BatchItem::ParseError { .. } => self.parse_errors += 1,
            BatchItem::Report(r) => match r.status {
                Status::Pass => self.pass += 1,
                Status::ExceptionSnake => self.exception_snake += 1,
                Status::ExceptionPeanut => self.exception_peanut += 1,
                Status::OutOfScope => self.out_of_scope += 1,
                Status::Violation => self.violation += 1,
            },
        }
    }
}

fn process((id, parsed): &(String, Result<Graph, FormatError>), timing: bool) -> BatchItem {
    match parsed {
        Ok(g) => BatchItem::Report(Box::new(analyze(g, id.clone(), timing))),
        Err(e) => BatchItem::ParseError {
            id: id.clone(),
            parse_error: e.to_string(),
        },
    }
}

/// Analyses every input, in parallel when `jobs != 1`, keeping input order.
/// `jobs = None` uses the default pool size.
pub fn run_batch(
    inputs: &[(String, Result<Graph, FormatError>)],
    jobs: Option<usize>,
    timing: bool,
) -> Result<(Vec<BatchItem>, Summary), BatchError> {
    let items: Vec<BatchItem> = if jobs == Some(1) {
        inputs.iter().map(|i| process(i, timing)).collect()
    } else {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(j) = jobs {
            builder = builder.num_threads(j);
        }
        builder
            .build()?
            .install(|| inputs.par_iter().map(|i| process(i, timing)).collect())
    };
    let mut summary = Summary::default();
    for item in &items {
        summary.add(item);
    }
    Ok((items, summary))
}

/// JSON lines: one object per item, then `{"summary": ...}`.
pub fn render_batch(items: &[BatchItem], summary: &Summary) -> Result<String, BatchError> {
    #[derive(Serialize)]
    struct Wrapped<'a> {
        summary: &'a Summary,
    }
    let mut out = String::new();
    for item in items {
        out.push_str(&serde_json::to_string(item)?);
        out.push('\n');
    }
    out.push_str(&serde_json::to_string(&Wrapped { summary })?);
    out.push('\n');
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_snake, random_regular};
    use crate::format::{emit_graph6, parse_stream};

    #[test]
    fn order_and_counts_survive_parallelism() {
        let mut text = String::new();
        for seed in 0..12 {
            text.push_str(&emit_graph6(&random_regular(30, 7, seed).unwrap()));
            text.push('\n');
        }
        text.push_str(&emit_graph6(&make_snake(7, 1, 1).unwrap().0));
        text.push_str("\nnot-graph6\n");
        let inputs = parse_stream(&text);
        let (serial, s1) = run_batch(&inputs, Some(1), false).unwrap();
        let (parallel, s2) = run_batch(&inputs, Some(4), false).unwrap();
        assert_eq!(
            render_batch(&serial, &s1).unwrap(),
            render_batch(&parallel, &s2).unwrap()
        );
        assert_eq!((s1.total, s1.exception_snake, s1.parse_errors), (14, 1, 1));
        assert_eq!(s1.pass + s1.out_of_scope, 12);
    }

    #[test]
    fn empty_stream_gives_empty_summary() {
        let (items, summary) = run_batch(&[], None, false).unwrap();
        assert!(items.is_empty());
        assert_eq!(summary, Summary::default());
        assert_eq!(
            render_batch(&items, &summary).unwrap(),
            "{\"summary\":{\"total\":0,\"pass\":0,\"exception_snake\":0,\"exception_peanut\":0,\"out_of_scope\":0,\"violation\":0,\"parse_errors\":0}}\n"
        );
    }
}
