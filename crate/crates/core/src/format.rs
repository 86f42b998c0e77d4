//! graph6 and plain adjacency-list encodings.
//!
//! graph6 packs the upper triangle of the adjacency matrix column by column
//! into 6-bit groups, each offset by 63 so the output is printable ASCII.

use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("graph6 byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },
    #[error("adjacency list line {line}: {reason}")]
    Adjacency { line: usize, reason: String },
}

const HEADER: &[u8] = b">>graph6<<";
const SMALL_N_MAX: usize = 62;
const MEDIUM_N_MAX: usize = 258_047;

fn g6_err<T>(offset: usize, reason: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError::Graph6 {
        offset,
        reason: reason.into(),
    })
}

fn read_groups(bytes: &[u8], start: usize, count: usize) -> Result<u64, FormatError> {
    if bytes.len() < start + count {
        return g6_err(bytes.len(), "size field truncated");
    }
    let mut value = 0u64;
    for (i, &b) in bytes[start..start + count].iter().enumerate() {
        if !(63..=126).contains(&b) {
            return g6_err(start + i, format!("byte {b} outside the printable range 63..=126"));
        }
        value = (value << 6) | u64::from(b - 63);
    }
    Ok(value)
}

/// Decodes one graph6 string. Trailing `\n`/`\r` and a leading `>>graph6<<`
/// header are accepted; offsets in errors count from the start of `bytes`.
pub fn parse_graph6(bytes: &[u8]) -> Result<Graph, FormatError> {
    let mut end = bytes.len();
    while end > 0 && matches!(bytes[end - 1], b'\n' | b'\r') {
        end -= 1;
    }
    let bytes = &bytes[..end];
    let mut pos = if bytes.starts_with(HEADER) { HEADER.len() } else { 0 };
    if pos >= bytes.len() {
        return g6_err(pos, "missing size field");
    }
    let n = if bytes[pos] != 126 {
        let n = read_groups(bytes, pos, 1)?;
        pos += 1;
        n
    } else if bytes.get(pos + 1) != Some(&126) {
        let n = read_groups(bytes, pos + 1, 3)?;
        pos += 4;
        n
    } else {
        let n = read_groups(bytes, pos + 2, 6)?;
        pos += 8;
        n
    };
    let n = usize::try_from(n).map_err(|_| FormatError::Graph6 {
        offset: pos,
        reason: "vertex count does not fit in memory".into(),
    })?;
    let bits = n
        .checked_mul(n.saturating_sub(1))
        .map(|b| b / 2)
        .ok_or_else(|| FormatError::Graph6 {
            offset: pos,
            reason: "vertex count too large".into(),
        })?;
    let body_len = bits.div_ceil(6);
    let body = &bytes[pos..];
    if body.len() != body_len {
        return g6_err(
            pos + body.len().min(body_len),
            format!("expected {body_len} body bytes for {n} vertices, found {}", body.len()),
        );
    }
    let mut edges = Vec::new();
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6];
            if !(63..=126).contains(&byte) {
                return g6_err(pos + k / 6, format!("byte {byte} outside the printable range 63..=126"));
            }
            if (byte - 63) >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if let Some(&last) = body.last() {
        if !(63..=126).contains(&last) {
            return g6_err(
                pos + body.len() - 1,
                format!("byte {last} outside the printable range 63..=126"),
            );
        }
        let pad = body_len * 6 - bits;
        if pad > 0 && (last - 63) & ((1 << pad) - 1) != 0 {
            return g6_err(pos + body.len() - 1, "nonzero padding bits");
        }
    }
    Graph::from_edges(n, edges).map_err(|e| FormatError::Graph6 {
        offset: pos,
        reason: e.to_string(),
    })
}

/// Encodes `g` with the shortest size field, without a trailing newline.
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    let push_groups = |out: &mut Vec<u8>, value: u64, count: u32| {
        for i in (0..count).rev() {
            out.push(((value >> (6 * i)) & 63) as u8 + 63);
        }
    };
    if n <= SMALL_N_MAX {
        out.push(n as u8 + 63);
    } else if n <= MEDIUM_N_MAX {
        out.push(126);
        push_groups(&mut out, n as u64, 3);
    } else {
        out.extend([126, 126]);
        push_groups(&mut out, n as u64, 6);
    }
    let mut group = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            group = (group << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(group + 63);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((group << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

fn adj_err<T>(line: usize, reason: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError::Adjacency {
        line,
        reason: reason.into(),
    })
}

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize), FormatError> {
    let mut it = line.split_whitespace();
    let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
        return adj_err(lineno, "expected two integers");
    };
    match (a.parse(), b.parse()) {
        (Ok(a), Ok(b)) => Ok((a, b)),
        _ => adj_err(lineno, "expected two non-negative integers"),
    }
}

/// Parses an `n m` header followed by `m` lines `u v` (0-based). Blank lines
/// and lines starting with `#` are skipped; line numbers are 1-based.
pub fn parse_adjacency(text: &str) -> Result<Graph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let Some((hline, header)) = lines.next() else {
        return adj_err(1, "missing `n m` header");
    };
    let (n, m) = parse_pair(header, hline)?;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::with_capacity(m);
    let mut last_line = hline;
    for (lineno, line) in lines {
        let (u, v) = parse_pair(line, lineno)?;
        if u >= n || v >= n {
            return adj_err(lineno, format!("vertex out of range for n = {n}"));
        }
        if u == v {
            return adj_err(lineno, format!("self-loop at {u}"));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return adj_err(lineno, format!("duplicate edge {u}-{v}"));
        }
        edges.push((u, v));
        last_line = lineno;
    }
    if edges.len() != m {
        return adj_err(last_line, format!("header promises {m} edges, found {}", edges.len()));
    }
    Graph::from_edges(n, edges).map_err(|e| FormatError::Adjacency {
        line: hline,
        reason: e.to_string(),
    })
}

pub fn emit_adjacency(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Graph6,
    Adjacency,
}

/// Adjacency lists start with a line of two integers; anything else is
/// treated as graph6.
pub fn detect_format(text: &str) -> InputFormat {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(l) if l.split_whitespace().count() == 2 && l.split_whitespace().all(|t| t.parse::<usize>().is_ok()) => {
            InputFormat::Adjacency
        }
        _ => InputFormat::Graph6,
    }
}

/// One parse result per graph in `text`: a single graph for an adjacency
/// list, one per non-empty line for graph6. Ids are `line:<k>` (1-based).
pub fn parse_stream(text: &str) -> Vec<(String, Result<Graph, FormatError>)> {
    match detect_format(text) {
        InputFormat::Adjacency => vec![("graph:1".into(), parse_adjacency(text))],
        InputFormat::Graph6 => text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| (format!("line:{}", i + 1), parse_graph6(l.trim().as_bytes())))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_known_encodings() {
        assert_eq!(parse_graph6(b"C~").unwrap(), Graph::complete(4));
        assert_eq!(emit_graph6(&Graph::complete(4)), "C~");
        assert_eq!(parse_graph6(b"@").unwrap(), Graph::empty(1));
        assert_eq!(emit_graph6(&Graph::empty(1)), "@");
        assert_eq!(parse_graph6(b"?").unwrap(), Graph::empty(0));
        // path 0-1-2: bits (0,1)=1 (0,2)=0 (1,2)=1 -> 101000 = 40, 40 + 63 = b'g'
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(emit_graph6(&p3), "Bg");
        assert_eq!(parse_graph6(b">>graph6<<Bg\n").unwrap(), p3);
    }

    #[test]
    fn malformed_inputs_report_offsets() {
        assert_eq!(
            parse_graph6(b"C"),
            Err(FormatError::Graph6 {
                offset: 1,
                reason: "expected 1 body bytes for 4 vertices, found 0".into()
            })
        );
        assert!(matches!(
            parse_graph6(b"C~~"),
            Err(FormatError::Graph6 { offset: 2, .. })
        ));
        // K3 body is 3 bits; a set padding bit is rejected
        assert!(matches!(
            parse_graph6(b"B\x7f"),
            Err(FormatError::Graph6 { offset: 1, .. })
        ));
        assert!(matches!(
            parse_graph6(b"B "),
            Err(FormatError::Graph6 { offset: 1, .. })
        ));
        assert!(matches!(parse_graph6(b""), Err(FormatError::Graph6 { offset: 0, .. })));
        assert!(matches!(parse_graph6(b"~??"), Err(FormatError::Graph6 { .. })));
    }

    #[test]
    fn medium_size_header() {
        let g = Graph::empty(63);
        let s = emit_graph6(&g);
        assert!(s.starts_with("~??~"));
        assert_eq!(parse_graph6(s.as_bytes()).unwrap(), g);
    }

    #[test]
    fn adjacency_round_trip() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let text = emit_adjacency(&g);
        assert_eq!(text, "4 4\n0 1\n0 3\n1 2\n2 3\n");
        assert_eq!(parse_adjacency(&text).unwrap(), g);
        assert_eq!(detect_format(&text), InputFormat::Adjacency);
        assert_eq!(detect_format("C~\n"), InputFormat::Graph6);
    }

    #[test]
    fn adjacency_errors_carry_lines() {
        assert!(matches!(
            parse_adjacency(""),
            Err(FormatError::Adjacency { line: 1, .. })
        ));
        assert!(matches!(
            parse_adjacency("3 1\n0 5\n"),
            Err(FormatError::Adjacency { line: 2, .. })
        ));
        assert!(matches!(
            parse_adjacency("3 2\n0 1\n# note\n1 0\n"),
            Err(FormatError::Adjacency { line: 4, .. })
        ));
        assert!(matches!(
            parse_adjacency("3 2\n0 1\n"),
            Err(FormatError::Adjacency { line: 2, .. })
        ));
        assert!(matches!(
            parse_adjacency("3 1\n1 1\n"),
            Err(FormatError::Adjacency { .. })
        ));
    }

    #[test]
    fn streams_keep_line_ids() {
        let items = parse_stream("C~\n\nC\n@\n");
        let ids: Vec<&str> = items.iter().map(|(id, _)| id.as_str()).collect();
        assert_eq!(ids, ["line:1", "line:3", "line:4"]);
        assert!(items[1].1.is_err());
    }
}
