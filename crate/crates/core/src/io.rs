//! Graph text formats: headerless graph6 and a plain edge list.
//!
//! Lines starting with `#` are treated as comments by both readers, so the
//! labelled-matching annotations written by the generators can be piped
//! straight back in.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order accepted by the graph6 codec (single-byte size header).
pub const GRAPH6_MAX_ORDER: usize = 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Format {
    Graph6,
    EdgeList,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph6" | "g6" => Ok(Format::Graph6),
            "edge-list" | "edgelist" | "el" => Ok(Format::EdgeList),
            other => Err(Error::domain(format!("unknown graph format `{other}`"))),
        }
    }
}

fn parse_err(offset: usize, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        line,
        message: message.into(),
    }
}

/// Content lines of `text` as `(byte offset, 1-based line number, line)`,
/// skipping blank lines and `#` comments. Trailing `\r` is stripped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, usize, &str)> {
    let mut offset = 0;
    text.split_inclusive('\n').enumerate().filter_map(move |(i, raw)| {
        let start = offset;
        offset += raw.len();
        let line = raw.trim_end_matches(['\n', '\r']);
        if line.trim().is_empty() || line.starts_with('#') {
            None
        } else {
            Some((start, i + 1, line))
        }
    })
}

/// Parses one graph in the given format.
pub fn load_graph(text: &str, format: Format) -> Result<Graph> {
    match format {
        Format::Graph6 => {
            let mut lines = content_lines(text);
            let (off, no, line) = lines
                .next()
                .ok_or_else(|| parse_err(0, 1, "no graph6 line found"))?;
            if let Some((off2, no2, _)) = lines.next() {
                return Err(parse_err(off2, no2, "more than one graph6 line"));
            }
            decode_graph6_at(line, off, no)
        }
        Format::EdgeList => parse_edge_list(text),
    }
}

/// Serialises a graph in the given format. The output is newline-terminated.
pub fn write_graph(g: &Graph, format: Format) -> Result<String> {
    match format {
        Format::Graph6 => {
            let mut s = encode_graph6(g)?;
            s.push('\n');
            Ok(s)
        }
        Format::EdgeList => Ok(write_edge_list(g)),
    }
}

/// Decodes a single graph6 string (no trailing newline expected).
pub fn decode_graph6(s: &str) -> Result<Graph> {
    decode_graph6_at(s.trim_end_matches(['\n', '\r']), 0, 1)
}

fn decode_graph6_at(s: &str, base: usize, line: usize) -> Result<Graph> {
    let bytes = s.as_bytes();
    let Some(&head) = bytes.first() else {
        return Err(parse_err(base, line, "empty graph6 string"));
    };
    if head == b'>' {
        return Err(parse_err(base, line, "graph6 header `>>graph6<<` is not supported"));
    }
    if head == b'~' {
        return Err(parse_err(
            base,
            line,
            format!("graph6 orders above {GRAPH6_MAX_ORDER} are not supported"),
        ));
    }
    if !(63..=126).contains(&head) {
        return Err(parse_err(base, line, format!("invalid graph6 size byte {head:#04x}")));
    }
    let n = (head - 63) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    let body = &bytes[1..];
    if body.len() != nbytes {
        let at = base + 1 + body.len().min(nbytes);
        return Err(parse_err(
            at,
            line,
            format!(
                "graph6 body has {} bytes, expected {} for order {}",
                body.len(),
                nbytes,
                n
            ),
        ));
    }
    let mut g = Graph::new(n);
    let mut k = 0;
    for (pos, &c) in body.iter().enumerate() {
        if !(63..=126).contains(&c) {
            return Err(parse_err(base + 1 + pos, line, format!("invalid graph6 byte {c:#04x}")));
        }
        let val = c - 63;
        for b in (0..6).rev() {
            let bit = val >> b & 1 == 1;
            if k < nbits {
                if bit {
                    let (i, j) = triangle_index(k);
                    g.add_edge(i, j);
                }
            } else if bit {
                return Err(parse_err(base + 1 + pos, line, "non-zero graph6 padding bits"));
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Maps a bit position of the column-major upper triangle to `(i, j)`, `i < j`.
fn triangle_index(k: usize) -> (usize, usize) {
    let mut j = 1;
    let mut start = 0;
    while start + j <= k {
        start += j;
        j += 1;
    }
    (k - start, j)
}

/// Encodes a graph of order at most 62 in graph6 (no trailing newline).
pub fn encode_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > GRAPH6_MAX_ORDER {
        return Err(Error::domain(format!(
            "graph6 orders above {GRAPH6_MAX_ORDER} are not supported"
        )));
    }
    let mut out = String::with_capacity(2 + n * n / 12);
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut fill = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            fill += 1;
            if fill == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                fill = 0;
            }
        }
    }
    if fill > 0 {
        out.push(((acc << (6 - fill)) + 63) as char);
    }
    Ok(out)
}

/// Reads a corpus with one graph6 string per line.
pub fn read_graph6_corpus(text: &str) -> Result<Vec<Graph>> {
    content_lines(text)
        .map(|(off, no, line)| decode_graph6_at(line, off, no))
        .collect()
}

fn parse_usize(tok: &str, offset: usize, line: usize, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| parse_err(offset, line, format!("expected {what}, found `{tok}`")))
}

/// Parses the edge-list format: a header `order edge-count` followed by one
/// `u v` pair per line, 0-based.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (hoff, hno, header) = lines
        .next()
        .ok_or_else(|| parse_err(0, 1, "missing `order edge-count` header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(parse_err(hoff, hno, "header must be `order edge-count`"));
    }
    let order = parse_usize(toks[0], hoff, hno, "order")?;
    let count = parse_usize(toks[1], hoff, hno, "edge count")?;
    if order > crate::graph::MAX_ORDER {
        return Err(parse_err(
            hoff,
            hno,
            format!("order {order} exceeds the supported maximum {}", crate::graph::MAX_ORDER),
        ));
    }
    let mut g = Graph::new(order);
    let mut seen = 0;
    let mut last = (hoff + header.len(), hno);
    for (off, no, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(parse_err(off, no, "edge line must be `u v`"));
        }
        let u = parse_usize(toks[0], off, no, "vertex index")?;
        let v = parse_usize(toks[1], off, no, "vertex index")?;
        if u >= order || v >= order {
            return Err(parse_err(
                off,
                no,
                format!("vertex index out of range in edge {u} {v} (order {order})"),
            ));
        }
        if u == v {
            return Err(parse_err(off, no, format!("loop at line {no}")));
        }
        if g.has_edge(u, v) {
            return Err(parse_err(off, no, format!("duplicate edge {u} {v}")));
        }
        g.add_edge(u, v);
        seen += 1;
        last = (off + line.len(), no);
    }
    if seen != count {
        return Err(parse_err(
            last.0,
            last.1,
            format!("header announces {count} edges, found {seen}"),
        ));
    }
    Ok(g)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.order(), g.edge_count());
    for e in g.edges() {
        let _ = writeln!(s, "{} {}", e.u, e.v);
    }
    s
}
