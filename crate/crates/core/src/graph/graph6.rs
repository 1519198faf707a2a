//! The graph6 interchange format.
//!
//! Layout: a size header `N(n)` followed by the upper triangle of the adjacency
//! matrix, read column by column (`x(0,1), x(0,2), x(1,2), x(0,3), …`), packed
//! six bits per byte with 63 added to each byte. Padding bits must be zero.

use super::Graph;
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

fn parse_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

/// Decodes one graph6 string (surrounding whitespace and the optional
/// `>>graph6<<` header are accepted).
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let trimmed = text.trim_end_matches(['\n', '\r']);
    let (base, body) = match trimmed.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, trimmed.as_bytes()),
    };
    if let Some(pos) = body.iter().position(|&b| !(63..=126).contains(&b)) {
        return Err(parse_err(base + pos, format!("byte {:#04x} outside 63..=126", body[pos])));
    }
    let (n, header_len) = parse_size(body).map_err(|(off, msg)| parse_err(base + off, msg))?;
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let data = &body[header_len..];
    if data.len() != expected {
        return Err(parse_err(
            base + header_len + data.len().min(expected),
            format!("expected {expected} data bytes for n = {n}, found {}", data.len()),
        ));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.set_edge(i, j);
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = data[expected - 1] - 63;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(parse_err(base + header_len + expected - 1, "nonzero padding bits"));
        }
    }
    Ok(g)
}

fn parse_size(body: &[u8]) -> std::result::Result<(usize, usize), (usize, String)> {
    let six = |bytes: &[u8]| bytes.iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
    match body {
        [] => Err((0, "empty input".into())),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err((2 + rest.len(), "truncated 8-byte size header".into()));
            }
            let n = six(&rest[..6]);
            if n < 258_048 {
                return Err((0, format!("non-canonical 8-byte header for n = {n}")));
            }
            Ok((n, 8))
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err((1 + rest.len(), "truncated 4-byte size header".into()));
            }
            let n = six(&rest[..3]);
            if n < 63 {
                return Err((0, format!("non-canonical 4-byte header for n = {n}")));
            }
            Ok((n, 4))
        }
        [b, ..] => Ok(((b - 63) as usize, 1)),
    }
}

/// Parses a newline-separated stream, skipping blank lines. Errors carry the
/// byte offset within the whole stream.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let content = line.trim_end_matches(['\n', '\r']);
        if !content.trim().is_empty() {
            out.push(parse_graph6(content).map_err(|e| match e {
                Error::Parse { offset: o, message } => Error::Parse {
                    offset: offset + o,
                    message,
                },
                other => other,
            })?);
        }
        offset += line.len();
    }
    Ok(out)
}

/// Encodes a graph as graph6 (no header, no trailing newline).
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        out.extend((0..3).rev().map(|s| ((n >> (6 * s)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|s| ((n >> (6 * s)) & 63) as u8 + 63));
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
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle};

    #[test]
    fn single_vertex() {
        let g = parse_graph6("@").unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(emit_graph6(&g), "@");
    }

    #[test]
    fn triangle_by_hand() {
        // n = 3 -> 'B'; bits x01 x02 x12 = 111, padded to 111000 = 56 -> 'w'
        let g = parse_graph6("Bw").unwrap();
        assert_eq!(g, complete(3).unwrap());
        assert_eq!(emit_graph6(&complete(3).unwrap()), "Bw");
    }

    #[test]
    fn known_encodings() {
        assert_eq!(emit_graph6(&cycle(5).unwrap()), "Dhc");
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(emit_graph6(&g), "DQc");
    }

    #[test]
    fn optional_header_is_accepted() {
        assert_eq!(parse_graph6(">>graph6<<Bw").unwrap(), complete(3).unwrap());
    }

    #[test]
    fn errors_carry_offsets() {
        match parse_graph6("Bw?") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("unexpected {other:?}"),
        }
        match parse_graph6("Bx") {
            Err(Error::Parse { offset, message }) => {
                assert_eq!(offset, 1);
                assert!(message.contains("padding"));
            }
            other => panic!("unexpected {other:?}"),
        }
        match parse_graph6("B w") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_graph6(""), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(parse_graph6("~?"), Err(Error::Parse { .. })));
    }

    #[test]
    fn stream_offsets_accumulate() {
        match parse_graph6_lines("Bw\nBx\n") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(parse_graph6_lines("Bw\n\n@\n").unwrap().len(), 2);
    }

    #[test]
    fn large_header_round_trip() {
        let g = cycle(100).unwrap();
        let s = emit_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }
}
