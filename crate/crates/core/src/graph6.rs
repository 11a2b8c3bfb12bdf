//! Bit-exact graph6 short-form codec (orders 0..=62).
//!
//! Layout: byte 0 is `63 + n`; the upper-triangle bit sequence
//! x(0,1), x(0,2), x(1,2), x(0,3), ... follows, packed big-endian into
//! 6-bit groups, each group offset by 63. The optional `>>graph6<<`
//! header is tolerated on input and never emitted. Long form (n > 62),
//! sparse6 and digraph6 are out of scope.

use thiserror::Error;

use crate::graph::Graph;

/// Largest order the short form can carry.
pub const MAX_GRAPH6_ORDER: usize = 62;

const HEADER: &str = ">>graph6<<";
const OFFSET: u8 = 63;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("invalid byte 0x{byte:02x} at offset {offset}")]
    InvalidByte { byte: u8, offset: usize },
    #[error("long-form graph6 marker at offset {0}; only n <= 62 is supported")]
    LongForm(usize),
    #[error("truncated: order {order} needs {expected} edge bytes, found {found}")]
    Truncated {
        order: usize,
        expected: usize,
        found: usize,
    },
    #[error("trailing garbage at offset {0}")]
    TrailingGarbage(usize),
    #[error("nonzero padding bits in final group at offset {0}")]
    NonzeroPadding(usize),
    #[error("order {0} exceeds the graph6 short form limit of 62")]
    UnsupportedOrder(usize),
}

fn edge_bytes(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Decodes one graph6 string (an optional header is stripped first).
pub fn parse_graph6(line: &str) -> Result<Graph, Graph6Error> {
    let body = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = body.as_bytes();
    let Some(&first) = bytes.first() else {
        return Err(Graph6Error::Empty);
    };
    if first == 126 {
        return Err(Graph6Error::LongForm(0));
    }
    if !(OFFSET..126).contains(&first) {
        return Err(Graph6Error::InvalidByte {
            byte: first,
            offset: 0,
        });
    }
    let n = (first - OFFSET) as usize;
    let expected = edge_bytes(n);
    let found = bytes.len() - 1;
    if found < expected {
        return Err(Graph6Error::Truncated {
            order: n,
            expected,
            found,
        });
    }
    if found > expected {
        return Err(Graph6Error::TrailingGarbage(1 + expected));
    }

    let mut groups = Vec::with_capacity(expected);
    for (i, &b) in bytes[1..].iter().enumerate() {
        if !(OFFSET..127).contains(&b) {
            return Err(Graph6Error::InvalidByte {
                byte: b,
                offset: 1 + i,
            });
        }
        groups.push(b - OFFSET);
    }

    let mut g = Graph::empty(n);
    let mut k = 0usize;
    for v in 1..n {
        for u in 0..v {
            let bit = groups[k / 6] >> (5 - k % 6) & 1;
            if bit == 1 {
                g.set_edge(u, v, true);
            }
            k += 1;
        }
    }
    // Remaining bits of the last group must be zero padding.
    while k < expected * 6 {
        if groups[k / 6] >> (5 - k % 6) & 1 != 0 {
            return Err(Graph6Error::NonzeroPadding(1 + k / 6));
        }
        k += 1;
    }
    Ok(g)
}

/// Encodes a graph of order at most 62; exact inverse of [`parse_graph6`].
pub fn write_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.n();
    if n > MAX_GRAPH6_ORDER {
        return Err(Graph6Error::UnsupportedOrder(n));
    }
    let mut out = Vec::with_capacity(1 + edge_bytes(n));
    out.push(OFFSET + n as u8);
    let mut group = 0u8;
    let mut filled = 0usize;
    for v in 1..n {
        for u in 0..v {
            group = (group << 1) | u8::from(g.has_edge(u, v));
            filled += 1;
            if filled == 6 {
                out.push(OFFSET + group);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(OFFSET + (group << (6 - filled)));
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ASCII"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{petersen, Graph};

    #[test]
    fn smallest_codes() {
        let g = parse_graph6("@").unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(write_graph6(&g).unwrap(), "@");

        let empty = parse_graph6("?").unwrap();
        assert_eq!(empty.n(), 0);
        assert_eq!(write_graph6(&empty).unwrap(), "?");
    }

    #[test]
    fn k3_is_bw() {
        let k3 = Graph::complete(3);
        assert_eq!(write_graph6(&k3).unwrap(), "Bw");
        assert_eq!(parse_graph6("Bw").unwrap(), k3);
    }

    #[test]
    fn path_is_bg() {
        let g = parse_graph6("Bg").unwrap();
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && !g.has_edge(0, 2));
        assert_eq!(write_graph6(&g).unwrap(), "Bg");
    }

    #[test]
    fn header_tolerated_not_emitted() {
        let g = parse_graph6(">>graph6<<Bw").unwrap();
        assert_eq!(write_graph6(&g).unwrap(), "Bw");
    }

    #[test]
    fn petersen_roundtrip() {
        let g = petersen();
        let s = write_graph6(&g).unwrap();
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn error_positions() {
        assert_eq!(parse_graph6(""), Err(Graph6Error::Empty));
        assert_eq!(
            parse_graph6("B\x1f"),
            Err(Graph6Error::InvalidByte { byte: 0x1f, offset: 1 })
        );
        assert_eq!(
            parse_graph6("B"),
            Err(Graph6Error::Truncated { order: 3, expected: 1, found: 0 })
        );
        assert_eq!(parse_graph6("Bww"), Err(Graph6Error::TrailingGarbage(2)));
        assert_eq!(parse_graph6("~??"), Err(Graph6Error::LongForm(0)));
        // K3 bits are 111; "Bx" sets a padding bit (111001).
        assert_eq!(parse_graph6("Bx"), Err(Graph6Error::NonzeroPadding(1)));
        assert_eq!(
            write_graph6(&Graph::empty(63)),
            Err(Graph6Error::UnsupportedOrder(63))
        );
    }
}
