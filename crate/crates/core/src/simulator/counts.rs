use super::Hypergraph;
use crate::error::{Error, Result};

/// Membership mask of a vertex list.
pub fn mask(n: usize, vertices: &[u32]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in vertices {
        m[v as usize] = true;
    }
    m
}

/// Whether edge `e`, anchored at `x ∈ e`, contains `α` distinct vertices of
/// `X2` besides `x` with the remaining vertices in `X3`.
///
/// Splitting `e \ {x}` by membership, this holds iff no vertex lies outside
/// `X2 ∪ X3` and `|X2 \ X3| ≤ α ≤ |X2|`. For `α = k-1` it reduces to
/// `e \ {x} ⊆ X2`.
pub fn edge_qualifies(e: &[u32], x: u32, alpha: usize, in2: &[bool], in3: &[bool]) -> bool {
    let (mut both, mut only2, mut neither) = (0usize, 0usize, 0usize);
    for &v in e {
        if v == x {
            continue;
        }
        let (a, b) = (in2[v as usize], in3[v as usize]);
        match (a, b) {
            (true, true) => both += 1,
            (true, false) => only2 += 1,
            (false, false) => neither += 1,
            (false, true) => {}
        }
    }
    neither == 0 && only2 <= alpha && alpha <= both + only2
}

/// `m_α(X1, X2, X3)`: edges `e` with some `x ∈ e ∩ X1` such that
/// `e \ {x}` holds `α` distinct vertices of `X2` and the rest lies in `X3`.
/// Each edge counts once. For `α = k-1`, `X3` is ignored.
pub fn edge_count_m(h: &Hypergraph, alpha: usize, x1: &[bool], x2: &[bool], x3: Option<&[bool]>) -> Result<usize> {
    let n = h.n();
    if alpha == 0 || alpha >= h.k() {
        return Err(Error::param(format!("alpha must lie in 1..{}, got {alpha}", h.k())));
    }
    if x1.len() != n || x2.len() != n || x3.is_some_and(|x| x.len() != n) {
        return Err(Error::Mismatch(format!("vertex sets must have length n = {n}")));
    }
    let none = vec![false; n];
    let x3 = if alpha == h.k() - 1 { &none[..] } else { x3.unwrap_or(&none) };
    Ok(h.edges().filter(|e| e.iter().any(|&x| x1[x as usize] && edge_qualifies(e, x, alpha, x2, x3))).count())
}
