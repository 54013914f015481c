//! graph6 encoding: `N(n)` followed by the upper triangle of the adjacency
//! matrix in column-major order, packed six bits per byte with offset 63.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidGraph6(msg.into())
}

pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.extend([(n >> 12) & 63, (n >> 6) & 63, n & 63].map(|x| x as u8 + 63));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
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
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(invalid(format!("byte {b:#04x} outside 63..=126")));
    }
    let (n, body) = match bytes {
        [] => return Err(invalid("empty string")),
        [126, 126, ..] => return Err(invalid("order exceeds 64 vertices")),
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(invalid("truncated order field"));
            }
            let v = rest[..3].iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
            if v <= 62 {
                return Err(invalid("order below 63 must use the short form"));
            }
            (v, &rest[3..])
        }
        [first, rest @ ..] => ((first - 63) as usize, rest),
    };
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices(n));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(invalid(format!("expected {expected} data bytes for n = {n}, got {}", body.len())));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    for k in nbits..expected * 6 {
        if bit(k) {
            return Err(invalid("non-zero padding bits"));
        }
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{random_graph, standard_family, Family};

    #[test]
    fn known_encodings() {
        let k2 = standard_family(Family::Complete, 2).unwrap();
        assert_eq!(write_graph6(&k2), "A_");
        assert_eq!(parse_graph6("A_").unwrap(), k2);
        assert_eq!(write_graph6(&Graph::empty(1).unwrap()), "@");
        assert_eq!(write_graph6(&Graph::empty(0).unwrap()), "?");
        // P3 with edges 01, 12: bits (0,1)=1 (0,2)=0 (1,2)=1 -> 101000.
        let p3 = standard_family(Family::Path, 3).unwrap();
        assert_eq!(write_graph6(&p3), "Bg");
        // K4: six ones.
        assert_eq!(write_graph6(&standard_family(Family::Complete, 4).unwrap()), "C~");
    }

    #[test]
    fn long_order_form() {
        let g = random_graph(64, 0.2, 3).unwrap();
        let s = write_graph6(&g);
        assert!(s.starts_with("~?@?"));
        assert_eq!(parse_graph6(&s).unwrap(), g);
        let g = random_graph(63, 0.5, 4).unwrap();
        assert_eq!(parse_graph6(&write_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn header_and_newline_accepted() {
        assert_eq!(parse_graph6(">>graph6<<A_\n").unwrap().edge_count(), 1);
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("A").is_err());
        assert!(parse_graph6("A__").is_err());
        assert!(parse_graph6("A ").is_err());
        // K2 data byte with a padding bit set.
        assert!(parse_graph6("A`").is_err());
        assert!(matches!(parse_graph6("~??~"), Err(Error::InvalidGraph6(_))));
    }

    #[test]
    fn round_trip_random() {
        for seed in 0..1000u64 {
            let n = (seed % 13) as usize;
            let g = random_graph(n, 0.45, seed).unwrap();
            assert_eq!(parse_graph6(&write_graph6(&g)).unwrap(), g);
        }
    }
}
