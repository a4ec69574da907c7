//! Line-based text formats with 1-based ids.
//!
//! A hypergraph is a header `n k m` followed by one sorted edge per line.
//! A coloring is a single line of `n` colors.

use super::{Coloring, Hypergraph};
use crate::error::{Error, Result};
use std::fmt::Write as _;

pub fn write_hypergraph(h: &Hypergraph) -> String {
    let mut out = format!("{} {} {}\n", h.n(), h.k(), h.m());
    for e in h.edges() {
        let line: Vec<String> = e.iter().map(|v| (v + 1).to_string()).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

fn numbers(line: &str) -> Result<Vec<u64>> {
    line.split_whitespace().map(|t| t.parse::<u64>().map_err(|e| Error::Parse(format!("{t:?}: {e}")))).collect()
}

pub fn parse_hypergraph(s: &str) -> Result<Hypergraph> {
    let mut lines = s.lines().filter(|l| !l.trim().is_empty());
    let header = numbers(lines.next().ok_or_else(|| Error::Parse("missing header".into()))?)?;
    let [n, k, m] = header[..] else {
        return Err(Error::Parse(format!("header must be `n k m`, got {header:?}")));
    };
    let edges = lines
        .map(|l| numbers(l).map(|e| e.into_iter().map(|v| v as u32).collect()))
        .collect::<Result<Vec<Vec<u32>>>>()?;
    if edges.len() as u64 != m {
        return Err(Error::Parse(format!("header announces {m} edges, found {}", edges.len())));
    }
    Hypergraph::from_one_based(n as usize, k as usize, &edges)
}

pub fn write_coloring(c: &Coloring) -> String {
    let v: Vec<String> = c.to_one_based().iter().map(u32::to_string).collect();
    format!("{}\n", v.join(" "))
}

pub fn parse_coloring(s: &str, q: usize) -> Result<Coloring> {
    let colors: Vec<u32> = numbers(s)?.into_iter().map(|c| c as u32).collect();
    Coloring::from_one_based(&colors, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let h = Hypergraph::from_one_based(5, 3, &[vec![5, 1, 2], vec![1, 3, 4]]).unwrap();
        let s = write_hypergraph(&h);
        assert_eq!(s, "5 3 2\n1 2 5\n1 3 4\n");
        assert_eq!(parse_hypergraph(&s).unwrap(), h);
        let c = Coloring::from_one_based(&[1, 2, 3, 1, 2], 3).unwrap();
        assert_eq!(parse_coloring(&write_coloring(&c), 3).unwrap(), c);
    }

    #[test]
    fn parse_errors() {
        assert!(parse_hypergraph("").is_err());
        assert!(parse_hypergraph("5 3 2\n1 2 3\n").is_err());
        assert!(parse_hypergraph("5 3\n").is_err());
        assert!(parse_hypergraph("5 3 1\n1 x 3\n").is_err());
        assert!(parse_coloring("1 2 4", 3).is_err());
    }
}
