//! graph6 encoding: size prefix, then the upper triangle of the adjacency
//! matrix read column by column (`x(0,1), x(0,2), x(1,2), x(0,3), ...`),
//! packed big-endian into 6-bit groups offset by 63.

use super::{Graph, GraphError};

/// Largest order expressible with the 4-byte size prefix.
pub const GRAPH6_MAX_VERTICES: usize = 258_047;

pub fn to_graph6(g: &Graph) -> Result<String, GraphError> {
    let n = g.order();
    if n > GRAPH6_MAX_VERTICES {
        return Err(GraphError::TooLarge(n));
    }
    let mut out = size_prefix(n);
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
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ASCII"))
}

pub(crate) fn size_prefix(n: usize) -> Vec<u8> {
    if n <= 62 {
        vec![n as u8 + 63]
    } else {
        vec![
            126,
            ((n >> 12) & 63) as u8 + 63,
            ((n >> 6) & 63) as u8 + 63,
            (n & 63) as u8 + 63,
        ]
    }
}

pub fn from_graph6(s: &str) -> Result<Graph, GraphError> {
    let raw = s.as_bytes();
    let header = b">>graph6<<";
    let start = if raw.starts_with(header) { header.len() } else { 0 };
    let mut end = raw.len();
    while end > start && (raw[end - 1] == b'\n' || raw[end - 1] == b'\r') {
        end -= 1;
    }
    let bytes = &raw[start..end];
    let bad = |offset: usize, reason: &str| GraphError::MalformedEncoding {
        offset: start + offset,
        reason: reason.to_string(),
    };
    if let Some(i) = bytes.iter().position(|&b| !(63..=126).contains(&b)) {
        return Err(bad(i, "byte outside the printable range 63..=126"));
    }
    let (n, body_at) = match bytes {
        [] => return Err(bad(0, "empty input")),
        [126, 126, ..] => return Err(bad(1, "8-byte size prefix exceeds the supported range")),
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(bad(bytes.len(), "truncated size prefix"));
            }
            let n = rest[..3].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            if n <= 62 {
                return Err(bad(1, "long size prefix used for a small order"));
            }
            (n, 4)
        }
        [b, ..] => ((b - 63) as usize, 1),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let body = &bytes[body_at..];
    if body.len() != expected {
        return Err(bad(
            body_at + body.len().min(expected),
            &format!("expected {expected} data bytes for {n} vertices, found {}", body.len()),
        ));
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
    if bits % 6 != 0 {
        let last = body[expected - 1] - 63;
        if last & ((1u8 << (6 - bits % 6)) - 1) != 0 {
            return Err(bad(body_at + expected - 1, "non-zero padding bits"));
        }
    }
    Graph::new(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent encoder: materialise the full bit string, then chunk it.
    fn oracle(n: usize, adj: impl Fn(usize, usize) -> bool) -> String {
        let mut bitstring = Vec::new();
        for j in 0..n {
            for i in 0..j {
                bitstring.push(adj(i, j));
            }
        }
        while bitstring.len() % 6 != 0 {
            bitstring.push(false);
        }
        let mut out = String::new();
        out.push((n as u8 + 63) as char);
        for chunk in bitstring.chunks(6) {
            let v = chunk.iter().fold(0u8, |a, &b| a * 2 + b as u8);
            out.push((v + 63) as char);
        }
        out
    }

    #[test]
    fn small_known_strings() {
        let k4 = Graph::from_fn(4, |_, _| true);
        assert_eq!(oracle(4, |_, _| true), "C~");
        assert_eq!(to_graph6(&k4).unwrap(), "C~");
        assert_eq!(to_graph6(&Graph::empty(1)).unwrap(), "@");
        assert_eq!(oracle(1, |_, _| false), "@");
        assert_eq!(to_graph6(&Graph::empty(0)).unwrap(), "?");
        assert_eq!(from_graph6("C~").unwrap(), k4);
        assert_eq!(from_graph6("D??").unwrap(), Graph::empty(5));
        assert_eq!(oracle(5, |_, _| false), "D??");
    }

    #[test]
    fn matches_oracle_on_irregular_graph() {
        // the 5-vertex example graph with edges a-c, a-e, b-d, d-e
        let g = Graph::new(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g).unwrap(), oracle(5, |i, j| g.has_edge(i, j)));
        assert_eq!(to_graph6(&g).unwrap(), "DQc");
    }

    #[test]
    fn long_prefix() {
        let g = Graph::new(100, &[(0, 99), (5, 6)]).unwrap();
        let s = to_graph6(&g).unwrap();
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 64, 63 + 36]);
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(from_graph6("ZZ"), Err(GraphError::MalformedEncoding { .. })));
        assert!(matches!(from_graph6(""), Err(GraphError::MalformedEncoding { offset: 0, .. })));
        match from_graph6("C~ ") {
            Err(GraphError::MalformedEncoding { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("unexpected {other:?}"),
        }
        // K3 is "Bw"; "B~" sets padding bits
        assert_eq!(from_graph6("Bw").unwrap(), Graph::from_fn(3, |_, _| true));
        assert!(from_graph6("B~").is_err());
        assert!(from_graph6(">>graph6<<C~\n").is_ok());
    }
}
