//! graph6 encoding of trees (one graph per line, no header).
//!
//! The size prefix `N(n)` is one byte for `n <= 62`, `126` plus three bytes
//! up to `258047`, and `126 126` plus six bytes beyond. The adjacency bits
//! are the upper triangle in column order `x(0,1), x(0,2), x(1,2), x(0,3), ...`,
//! zero-padded to a multiple of six and packed six bits per byte offset by 63.

use thiserror::Error;

use crate::tree::{Tree, TreeError};

const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("invalid graph6 byte {byte:#04x} at offset {offset}")]
    InvalidByte { byte: u8, offset: usize },
    #[error("graph6 string has {got} data bytes, expected {expected} for n = {n}")]
    Length {
        n: usize,
        expected: usize,
        got: usize,
    },
    #[error("decoded graph is not a tree: {0}")]
    NotATree(#[from] TreeError),
}

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
}

pub fn to_graph6(tree: &Tree) -> String {
    let n = tree.n();
    let mut out = Vec::new();
    encode_size(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | tree.has_edge(i, j) as u8;
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

fn decode_size(bytes: &[u8]) -> Result<(usize, usize), Graph6Error> {
    let value = |i: usize| -> Result<usize, Graph6Error> {
        match bytes.get(i) {
            Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as usize),
            Some(&b) => Err(Graph6Error::InvalidByte { byte: b, offset: i }),
            None => Err(Graph6Error::Length {
                n: 0,
                expected: i + 1,
                got: bytes.len(),
            }),
        }
    };
    if value(0)? < 63 {
        return Ok((value(0)?, 1));
    }
    let (start, count) = if value(1)? == 63 { (2, 6) } else { (1, 3) };
    let mut n = 0;
    for i in start..start + count {
        n = (n << 6) | value(i)?;
    }
    Ok((n, start + count))
}

/// Decodes the adjacency lists of an arbitrary simple graph.
fn decode_adjacency(line: &str) -> Result<(usize, Vec<(usize, usize)>), Graph6Error> {
    let line = line.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let (n, offset) = decode_size(bytes)?;
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let data = &bytes[offset..];
    if data.len() != expected {
        return Err(Graph6Error::Length {
            n,
            expected,
            got: data.len(),
        });
    }
    if let Some(i) = data.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Graph6Error::InvalidByte {
            byte: data[i],
            offset: offset + i,
        });
    }
    let bit = |k: usize| ((data[k / 6] - 63) >> (5 - k % 6)) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok((n, edges))
}

pub fn from_graph6(line: &str) -> Result<Tree, Graph6Error> {
    let (n, edges) = decode_adjacency(line)?;
    Ok(Tree::from_edges(n, &edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let p2 = Tree::path(2);
        assert_eq!(to_graph6(&p2), "A_");
        assert_eq!(from_graph6("A_").unwrap(), p2);
    }

    #[test]
    fn known_small_encodings() {
        // P_4 0-1-2-3: bits x01 x02 x12 x03 x13 x23 = 1 0 1 0 0 1
        assert_eq!(to_graph6(&Tree::path(4)), "Ch");
        // K_{1,3} centered at 0: 1 1 0 1 0 0
        assert_eq!(to_graph6(&Tree::star(3)), "Cs");
        assert_eq!(to_graph6(&Tree::from_edges(1, &[]).unwrap()), "@");
    }

    #[test]
    fn rejects_cycle() {
        // C_4: 0-1, 1-2, 2-3, 0-3 → bits 1 0 1 1 0 1
        let err = from_graph6("Cl").unwrap_err();
        assert!(matches!(
            err,
            Graph6Error::NotATree(TreeError::Cycle { .. })
        ));
    }

    #[test]
    fn malformed() {
        assert_eq!(from_graph6(""), Err(Graph6Error::Empty));
        assert!(matches!(from_graph6("C"), Err(Graph6Error::Length { .. })));
        assert!(matches!(
            from_graph6("Ch?"),
            Err(Graph6Error::Length { .. })
        ));
        assert!(matches!(
            from_graph6("C\x01"),
            Err(Graph6Error::InvalidByte { .. })
        ));
        assert!(matches!(
            from_graph6("C "),
            Err(Graph6Error::InvalidByte { .. })
        ));
    }

    #[test]
    fn header_and_newline_tolerated() {
        assert_eq!(from_graph6(">>graph6<<Ch\n").unwrap(), Tree::path(4));
    }

    #[test]
    fn medium_size_prefix() {
        let big = Tree::path(70);
        let s = to_graph6(&big);
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 64, 70 - 64 + 63]);
        assert_eq!(from_graph6(&s).unwrap(), big);
    }
}
