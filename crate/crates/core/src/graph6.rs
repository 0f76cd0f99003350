//! graph6 codec.
//!
//! A line is `N(n) R(x)`: the vertex count in one (n <= 62), four or eight
//! bytes, followed by the upper triangle of the adjacency matrix in column
//! order, packed six bits per byte (each byte offset by 63), zero padded.
//! An optional `>>graph6<<` header is accepted.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

const HEADER: &[u8] = b">>graph6<<";

fn parse_err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        reason: reason.into(),
    }
}

/// Decode one graph6 line. Trailing `\n`/`\r` are ignored.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let mut pos = 0;
    if bytes.starts_with(b">>") {
        if !bytes.starts_with(HEADER) {
            return Err(parse_err(0, "malformed header, expected >>graph6<<"));
        }
        pos = HEADER.len();
    }
    let six = |at: usize| -> Result<u64> {
        match bytes.get(at) {
            None => Err(parse_err(at, "unexpected end of input")),
            Some(&b) if (63..=126).contains(&b) => Ok(u64::from(b - 63)),
            Some(&b) => Err(parse_err(at, format!("byte {b:#04x} outside 63..=126"))),
        }
    };

    let first = six(pos)?;
    let n = if first < 63 {
        pos += 1;
        first as usize
    } else if six(pos + 1)? < 63 {
        let v = (six(pos + 1)? << 12) | (six(pos + 2)? << 6) | six(pos + 3)?;
        pos += 4;
        v as usize
    } else {
        let mut v = 0u64;
        for k in 2..8 {
            v = (v << 6) | six(pos + k)?;
        }
        pos += 8;
        v as usize
    };
    if n > MAX_VERTICES {
        return Err(parse_err(0, format!("{n} vertices exceeds the limit of {MAX_VERTICES}")));
    }

    let bits = n * n.saturating_sub(1) / 2;
    let body = bits.div_ceil(6);
    if bytes.len() < pos + body {
        return Err(parse_err(bytes.len(), "truncated adjacency data"));
    }
    if bytes.len() > pos + body {
        return Err(parse_err(pos + body, "trailing bytes after adjacency data"));
    }

    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let at = pos + k / 6;
            if six(at)? >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let at = pos + body - 1;
        let pad = 6 - bits % 6;
        if six(at)? & ((1 << pad) - 1) != 0 {
            return Err(parse_err(at, "nonzero padding bits"));
        }
    }
    Graph::from_edges(n, &edges)
}

/// Encode a graph as a graph6 line (no header, no newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
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
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}
