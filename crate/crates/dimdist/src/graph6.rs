//! graph6 text codec, bit-exact per the published format description.
//!
//! A graph on `n` vertices is one ASCII line: the vertex count `N(n)`
//! (the single byte `n + 63` for `n <= 62`, or `126` followed by three
//! bytes carrying 18 bits for larger `n`), then the upper triangle of the
//! adjacency matrix read column by column — bit order `(0,1), (0,2), (1,2),
//! (0,3), ...` — packed big-endian into 6-bit groups, each offset by 63.
//! Padding bits must be zero.

use thiserror::Error;

use crate::graph::{Graph, MAX_VERTICES};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty input")]
    Empty,
    #[error("malformed header byte {0:#04x}")]
    BadHeader(u8),
    #[error("graph6 data byte {0:#04x} outside the printable range 63..=126")]
    BadByte(u8),
    #[error("truncated bit body: expected {expected} data bytes, got {got}")]
    Truncated { expected: usize, got: usize },
    #[error("{extra} trailing byte(s) after the bit body")]
    TrailingGarbage { extra: usize },
    #[error("nonzero padding bits in the final data byte")]
    NonzeroPadding,
    #[error("vertex count {n} exceeds the supported maximum {MAX_VERTICES}")]
    TooLarge { n: usize },
    #[error("graph6 encodes the empty graph on 0 vertices, which is unsupported")]
    ZeroVertices,
}

/// Encodes the labeled graph (not isomorph-canonical).
pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.push(((n >> 12) & 0x3f) as u8 + 63);
        out.push(((n >> 6) & 0x3f) as u8 + 63);
        out.push((n & 0x3f) as u8 + 63);
    }
    let mut acc = 0u8;
    let mut nbits = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
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

/// Decodes one graph6 line (without the trailing newline).
pub fn decode(text: &str) -> Result<Graph, Graph6Error> {
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let (n, header_len) = if bytes[0] == 126 {
        if bytes.len() < 4 {
            return Err(Graph6Error::BadHeader(bytes[0]));
        }
        if bytes[1] == 126 {
            // 8-byte form encodes n > 258047, far beyond our width
            return Err(Graph6Error::TooLarge { n: usize::MAX });
        }
        let mut n = 0usize;
        for &b in &bytes[1..4] {
            if !(63..=126).contains(&b) {
                return Err(Graph6Error::BadByte(b));
            }
            n = (n << 6) | (b - 63) as usize;
        }
        (n, 4)
    } else {
        if !(63..=126).contains(&bytes[0]) {
            return Err(Graph6Error::BadHeader(bytes[0]));
        }
        ((bytes[0] - 63) as usize, 1)
    };
    if n == 0 {
        return Err(Graph6Error::ZeroVertices);
    }
    if n > MAX_VERTICES {
        return Err(Graph6Error::TooLarge { n });
    }

    let nbits = n * (n - 1) / 2;
    let nbytes = nbits.div_ceil(6);
    let body = &bytes[header_len..];
    if body.len() < nbytes {
        return Err(Graph6Error::Truncated {
            expected: nbytes,
            got: body.len(),
        });
    }
    if body.len() > nbytes {
        return Err(Graph6Error::TrailingGarbage {
            extra: body.len() - nbytes,
        });
    }

    let mut edges = Vec::new();
    let mut bit_index = 0usize;
    for &b in body {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::BadByte(b));
        }
        let val = b - 63;
        for shift in (0..6).rev() {
            let bit = val >> shift & 1;
            if bit_index >= nbits {
                if bit != 0 {
                    return Err(Graph6Error::NonzeroPadding);
                }
            } else if bit == 1 {
                edges.push(pair_at(bit_index));
            }
            bit_index += 1;
        }
    }
    Ok(Graph::from_edges(n, &edges).expect("decoded pairs are in range"))
}

/// The `(u, v)` pair at position `i` of the column-major upper triangle.
fn pair_at(i: usize) -> (usize, usize) {
    // column v holds v bits; find the first v with v*(v+1)/2 > i
    let mut v = 1usize;
    let mut before = 0usize;
    while before + v <= i {
        before += v;
        v += 1;
    }
    (i - before, v)
}
