//! graph6 encoding and decoding (McKay's format).
//!
//! The byte layout is the standard one used by graph census tools: a size
//! prefix `N(n)` (one byte for `n <= 62`, `'~'` plus three bytes for
//! `63 <= n <= 258047`), followed by the upper triangle of the adjacency
//! matrix in column order, packed six bits per byte with 63 added. Encoding
//! is bit-exact: padding bits are zero and are checked on decode.

use crate::graph::Graph;
use crate::{Error, Result};

const MAX_LONG_N: usize = 258_047;

fn err(msg: impl Into<String>) -> Error {
    Error::Graph6(msg.into())
}

/// Encodes a graph as a graph6 string (no header, no trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    assert!(
        n <= MAX_LONG_N,
        "graph6 long form supports at most {MAX_LONG_N} vertices"
    );
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.push(((n >> 12) & 0x3f) as u8 + 63);
        out.push(((n >> 6) & 0x3f) as u8 + 63);
        out.push((n & 0x3f) as u8 + 63);
    }
    // Upper triangle, column by column: (0,1), (0,2), (1,2), (0,3), ...
    let mut acc: u8 = 0;
    let mut nbits = 0;
    for j in 1..n as u32 {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Decodes one graph6 line. A leading `>>graph6<<` header is tolerated.
pub fn from_graph6(s: &str) -> Result<Graph> {
    let s = s.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(err("empty line"));
    }
    for &b in bytes {
        if !(63..=126).contains(&b) {
            return Err(err(format!("byte {b:#x} outside graph6 alphabet")));
        }
    }
    let (n, body) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            return Err(err("8-byte size prefix (n > 258047) is not supported"));
        }
        if bytes.len() < 4 {
            return Err(err("truncated 3-byte size prefix"));
        }
        let n = ((bytes[1] - 63) as usize) << 12
            | ((bytes[2] - 63) as usize) << 6
            | (bytes[3] - 63) as usize;
        if n <= 62 {
            return Err(err(format!("non-canonical long size prefix for n={n}")));
        }
        (n, &bytes[4..])
    } else {
        ((bytes[0] - 63) as usize, &bytes[1..])
    };
    let nbits = n * n.saturating_sub(1) / 2;
    let expect = nbits.div_ceil(6);
    if body.len() != expect {
        return Err(err(format!(
            "n={n} needs {expect} body bytes, got {}",
            body.len()
        )));
    }
    let mut edges = Vec::new();
    let mut idx = 0usize;
    for j in 1..n as u32 {
        for i in 0..j {
            let byte = body[idx / 6] - 63;
            if (byte >> (5 - idx % 6)) & 1 == 1 {
                edges.push((i, j));
            }
            idx += 1;
        }
    }
    if nbits % 6 != 0 {
        let pad = body[expect - 1] - 63;
        if pad & ((1 << (6 - nbits % 6)) - 1) != 0 {
            return Err(err("nonzero padding bits"));
        }
    }
    Graph::from_edges(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete, complete_bipartite, cycle, path, star};
    use crate::graph::Graph;
    use proptest::prelude::*;

    // Golden strings produced by an independent encoder (networkx 3.4).
    #[test]
    fn encode_known_graphs() {
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        assert_eq!(to_graph6(&Graph::empty(1)), "@");
        assert_eq!(to_graph6(&complete(2).unwrap()), "A_");
        assert_eq!(to_graph6(&path(3).unwrap()), "Bg");
        assert_eq!(to_graph6(&path(4).unwrap()), "Ch");
        assert_eq!(to_graph6(&cycle(4).unwrap()), "Cl");
        assert_eq!(to_graph6(&cycle(5).unwrap()), "Dhc");
        assert_eq!(to_graph6(&complete(4).unwrap()), "C~");
        assert_eq!(to_graph6(&star(4).unwrap()), "Cs");
        assert_eq!(to_graph6(&complete_bipartite(3, 3).unwrap()), "EFz_");
        let two_k2 = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(to_graph6(&two_k2), "C`");
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
        let petersen = Graph::from_edges(
            10,
            [
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
            ],
        )
        .unwrap();
        assert_eq!(to_graph6(&petersen), "IheA@GUAo");
    }

    #[test]
    fn long_size_prefix() {
        let p63 = path(63).unwrap();
        let s = to_graph6(&p63);
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 63, 126]);
        assert_eq!(from_graph6(&s).unwrap(), p63);
    }

    #[test]
    fn decode_rejects_malformed() {
        assert!(from_graph6("").is_err());
        assert!(from_graph6("A").is_err()); // missing body byte
        assert!(from_graph6("A_~").is_err()); // trailing bytes
        assert!(from_graph6("B\u{7f}").is_err()); // byte outside alphabet
        assert!(from_graph6("~~??????").is_err()); // 8-byte form unsupported
        // nonzero padding bits: n=2 has 1 data bit, 5 padding bits
        let bad = String::from_utf8(vec![b'A', 63 + 0b011111]).unwrap();
        assert!(from_graph6(&bad).is_err());
    }

    #[test]
    fn decode_tolerates_header_and_newline() {
        assert_eq!(from_graph6(">>graph6<<A_\n").unwrap(), complete(2).unwrap());
    }

    proptest! {
        #[test]
        fn roundtrip_random_graphs(n in 0usize..40, seed in any::<u64>()) {
            // cheap deterministic edge selection from the seed
            let mut edges = Vec::new();
            let mut state = seed | 1;
            for i in 0..n as u32 {
                for j in i + 1..n as u32 {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    if state >> 63 == 1 {
                        edges.push((i, j));
                    }
                }
            }
            let g = Graph::from_edges(n, edges).unwrap();
            let s = to_graph6(&g);
            prop_assert_eq!(from_graph6(&s).unwrap(), g);
        }

        #[test]
        fn roundtrip_large_star(n in 63u64..200) {
            let g = star(n).unwrap();
            prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
        }
    }
}
