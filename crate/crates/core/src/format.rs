//! Text formats: graph6, plain edge lists and DOT.
//!
//! graph6 follows the public byte layout: a size header `N(n)` followed by
//! the upper triangle of the adjacency matrix in column order
//! (`x(0,1) x(0,2) x(1,2) x(0,3) …`), packed six bits per byte, each byte
//! offset by 63.

use thiserror::Error;

use crate::graph::{Graph, GraphError, MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("malformed graph6 header: {0}")]
    Header(String),
    #[error("graph6 payload truncated: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("trailing garbage after graph6 payload: {0:?}")]
    Trailing(String),
    #[error("invalid graph6 byte {0:#04x}")]
    InvalidByte(u8),
    #[error("malformed edge list: {0}")]
    EdgeList(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

const HEADER: &str = ">>graph6<<";

/// Encodes `g` as a single graph6 line (no trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Decodes one graph6 line. An optional `>>graph6<<` prefix and surrounding
/// whitespace are accepted; anything else after the payload is an error.
pub fn from_graph6(line: &str) -> Result<Graph, FormatError> {
    let s = line.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    let Some(&first) = bytes.first() else {
        return Err(FormatError::Header("empty input".into()));
    };
    for &b in bytes {
        if !(63..=126).contains(&b) {
            return Err(FormatError::InvalidByte(b));
        }
    }
    let (n, body) = if first == 126 {
        if bytes.len() < 4 {
            return Err(FormatError::Header("truncated long size header".into()));
        }
        if bytes[1] == 126 {
            return Err(FormatError::Header("8-byte size header unsupported".into()));
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        if n <= 62 {
            return Err(FormatError::Header(format!("non-minimal size header for n={n}")));
        }
        (n, &bytes[4..])
    } else {
        ((first - 63) as usize, &bytes[1..])
    };
    if n > MAX_ORDER {
        return Err(GraphError::OrderOverflow(n).into());
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() < expected {
        return Err(FormatError::Truncated {
            expected,
            found: body.len(),
        });
    }
    if body.len() > expected {
        return Err(FormatError::Trailing(
            String::from_utf8_lossy(&body[expected..]).into_owned(),
        ));
    }
    let pad = expected * 6 - nbits;
    if pad > 0 && (body[expected - 1] - 63) & ((1 << pad) - 1) != 0 {
        return Err(FormatError::Trailing("nonzero padding bits".into()));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::build(n, &edges)?)
}

/// Parses the plain edge-list format: `n m` header, then `m` lines `u v`.
/// Blank lines and `#` comments are ignored.
pub fn from_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| FormatError::EdgeList("missing header".into()))?;
    let (n, m) = parse_pair(header)?;
    let mut edges = Vec::with_capacity(m);
    for line in lines {
        edges.push(parse_pair(line)?);
    }
    if edges.len() != m {
        return Err(FormatError::EdgeList(format!(
            "header announces {m} edges, found {}",
            edges.len()
        )));
    }
    Ok(Graph::build(n, &edges)?)
}

fn parse_pair(line: &str) -> Result<(usize, usize), FormatError> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize, FormatError> {
        it.next()
            .ok_or_else(|| FormatError::EdgeList(format!("expected two integers: {line:?}")))?
            .parse()
            .map_err(|_| FormatError::EdgeList(format!("not an integer pair: {line:?}")))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(FormatError::EdgeList(format!("extra tokens: {line:?}")));
    }
    Ok((a, b))
}
