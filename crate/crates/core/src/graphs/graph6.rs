//! graph6 encoding of simple graphs, bit-exact per the de-facto standard
//! (printable bytes 63..=126, upper triangle in column order, 6 bits per
//! byte, big-endian within each byte).

use super::Graph;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("byte {offset}: empty input")]
    Empty { offset: usize },
    #[error("byte {offset}: character {byte:#04x} outside graph6 range 63..=126")]
    BadChar { offset: usize, byte: u8 },
    #[error("byte {offset}: truncated size header")]
    TruncatedHeader { offset: usize },
    #[error("byte {offset}: expected {expected} data bytes, found {found}")]
    WrongLength {
        offset: usize,
        expected: usize,
        found: usize,
    },
    #[error("byte {offset}: nonzero padding bits")]
    BadPadding { offset: usize },
    #[error("graph too large for graph6 ({0} vertices)")]
    TooLarge(usize),
}

/// Encodes the size prefix N(n).
fn encode_size(n: usize, out: &mut Vec<u8>) -> Result<(), Graph6Error> {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    } else if n <= 68_719_476_735 {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    } else {
        return Err(Graph6Error::TooLarge(n));
    }
    Ok(())
}

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out = Vec::new();
    encode_size(n, &mut out).expect("graph too large for graph6");
    let mut acc: u8 = 0;
    let mut nbits = 0;
    for j in 1..n {
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
    String::from_utf8(out).unwrap()
}

pub fn decode_graph6(s: &str) -> Result<Graph, Graph6Error> {
    let mut bytes = s.as_bytes();
    let mut base = 0;
    // Optional header used by some tools.
    if let Some(rest) = s.strip_prefix(">>graph6<<") {
        bytes = rest.as_bytes();
        base = s.len() - rest.len();
    }
    let bytes = bytes
        .strip_suffix(b"\n")
        .unwrap_or(bytes)
        .strip_suffix(b"\r")
        .unwrap_or_else(|| bytes.strip_suffix(b"\n").unwrap_or(bytes));
    if bytes.is_empty() {
        return Err(Graph6Error::Empty { offset: base });
    }
    let check = |off: usize, b: u8| -> Result<u64, Graph6Error> {
        if !(63..=126).contains(&b) {
            Err(Graph6Error::BadChar {
                offset: base + off,
                byte: b,
            })
        } else {
            Ok((b - 63) as u64)
        }
    };
    // Size header.
    let (n, data_start) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            if bytes.len() < 8 {
                return Err(Graph6Error::TruncatedHeader {
                    offset: base + bytes.len(),
                });
            }
            let mut n = 0u64;
            for (k, &b) in bytes[2..8].iter().enumerate() {
                n = (n << 6) | check(2 + k, b)?;
            }
            (n as usize, 8)
        } else {
            if bytes.len() < 4 {
                return Err(Graph6Error::TruncatedHeader {
                    offset: base + bytes.len(),
                });
            }
            let mut n = 0u64;
            for (k, &b) in bytes[1..4].iter().enumerate() {
                n = (n << 6) | check(1 + k, b)?;
            }
            (n as usize, 4)
        }
    } else {
        (check(0, bytes[0])? as usize, 1)
    };

    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    let found = bytes.len() - data_start;
    if found != expected {
        return Err(Graph6Error::WrongLength {
            offset: base + data_start,
            expected,
            found,
        });
    }
    let mut g = Graph::new(n);
    let mut bit_index = 0usize;
    for (k, &b) in bytes[data_start..].iter().enumerate() {
        let v = check(data_start + k, b)? as u8;
        for t in 0..6 {
            let bit = (v >> (5 - t)) & 1;
            if bit_index >= nbits {
                if bit != 0 {
                    return Err(Graph6Error::BadPadding {
                        offset: base + data_start + k,
                    });
                }
                continue;
            }
            if bit == 1 {
                // Recover (i, j) for this upper-triangle position.
                let (i, j) = triangle_coords(bit_index);
                g.add_edge(i, j);
            }
            bit_index += 1;
        }
    }
    Ok(g)
}

/// Maps a column-order upper-triangle bit index to its (i, j), i < j.
fn triangle_coords(idx: usize) -> (usize, usize) {
    // Column j holds j bits, starting at offset j(j-1)/2.
    let mut j = (((8 * idx + 1) as f64).sqrt() as usize).div_ceil(2);
    while j * (j + 1) / 2 <= idx {
        j += 1;
    }
    while j * (j.saturating_sub(1)) / 2 > idx {
        j -= 1;
    }
    (idx - j * (j - 1) / 2, j)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex_is_at_sign() {
        assert_eq!(encode_graph6(&Graph::new(1)), "@");
    }

    #[test]
    fn k2_is_a_underscore() {
        assert_eq!(encode_graph6(&Graph::complete(2)), "A_");
    }

    #[test]
    fn five_vertex_reference_encoding() {
        // Reference value produced by other graph6 implementations.
        let mut g = Graph::new(5);
        for (u, v) in [(0, 2), (0, 4), (1, 3), (3, 4)] {
            g.add_edge(u, v);
        }
        assert_eq!(encode_graph6(&g), "DQc");
        assert_eq!(decode_graph6("DQc").unwrap(), g);
    }

    #[test]
    fn k4_known_encoding() {
        // K4: all 6 upper-triangle bits set -> 111111 -> 63+63 = '~'... one byte.
        let s = encode_graph6(&Graph::complete(4));
        assert_eq!(s, "C~");
        assert_eq!(decode_graph6(&s).unwrap(), Graph::complete(4));
    }

    #[test]
    fn decode_reports_offsets() {
        match decode_graph6("A\u{1}") {
            Err(Graph6Error::BadChar { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("expected BadChar, got {other:?}"),
        }
        match decode_graph6("C~~") {
            Err(Graph6Error::WrongLength {
                offset,
                expected,
                found,
            }) => {
                assert_eq!((offset, expected, found), (1, 1, 2));
            }
            other => panic!("expected WrongLength, got {other:?}"),
        }
    }

    #[test]
    fn header_prefix_accepted() {
        let s = format!(">>graph6<<{}", encode_graph6(&Graph::cycle(5)));
        assert_eq!(decode_graph6(&s).unwrap(), Graph::cycle(5));
    }

    #[test]
    fn medium_size_header_round_trips() {
        let mut g = Graph::new(100);
        for v in 1..100 {
            g.add_edge(0, v);
        }
        let s = encode_graph6(&g);
        assert_eq!(s.as_bytes()[0], 126);
        assert_eq!(decode_graph6(&s).unwrap(), g);
    }

    #[test]
    fn triangle_coords_walks_columns() {
        assert_eq!(triangle_coords(0), (0, 1));
        assert_eq!(triangle_coords(1), (0, 2));
        assert_eq!(triangle_coords(2), (1, 2));
        assert_eq!(triangle_coords(3), (0, 3));
        assert_eq!(triangle_coords(45 - 1), (8, 9));
    }
}
