use crate::error::{Error, Result};

/// A k-uniform hypergraph on vertices `0..n` with distinct edges.
///
/// Edges are strictly increasing k-tuples kept in lexicographic order, so
/// membership is a binary search. Each vertex lists the ids of the edges it
/// lies in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    edges: Vec<u32>,
    incidence: Vec<Vec<u32>>,
}

impl Hypergraph {
    pub fn empty(n: usize, k: usize) -> Self {
        Hypergraph { n, k, edges: Vec::new(), incidence: vec![Vec::new(); n] }
    }

    /// Builds from 0-based edges in any vertex order. Duplicate edges,
    /// repeated vertices and out-of-range ids are errors.
    pub fn new(n: usize, k: usize, edges: Vec<Vec<u32>>) -> Result<Self> {
        if k == 0 {
            return Err(Error::param("k must be positive"));
        }
        let mut sorted = Vec::with_capacity(edges.len());
        for mut e in edges {
            if e.len() != k {
                return Err(Error::Mismatch(format!("edge {e:?} does not have {k} vertices")));
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::param(format!("edge {e:?} repeats a vertex")));
            }
            if e[k - 1] as usize >= n {
                return Err(Error::param(format!("edge {e:?} has a vertex outside 0..{n}")));
            }
            sorted.push(e);
        }
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::param(format!("duplicate edge {:?}", w[0])));
        }
        Ok(Self::from_sorted(n, k, sorted.concat()))
    }

    /// As [`Hypergraph::new`] with 1-based vertex ids.
    pub fn from_one_based(n: usize, k: usize, edges: &[Vec<u32>]) -> Result<Self> {
        let edges = edges
            .iter()
            .map(|e| {
                e.iter().map(|&v| v.checked_sub(1).ok_or_else(|| Error::param("vertex ids are 1-based"))).collect()
            })
            .collect::<Result<_>>()?;
        Self::new(n, k, edges)
    }

    /// Flat edges already sorted and distinct.
    pub(crate) fn from_sorted(n: usize, k: usize, edges: Vec<u32>) -> Self {
        let mut incidence = vec![Vec::new(); n];
        for (id, e) in edges.chunks(k).enumerate() {
            for &v in e {
                incidence[v as usize].push(id as u32);
            }
        }
        Hypergraph { n, k, edges, incidence }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len().checked_div(self.k).unwrap_or(0)
    }

    pub fn edge(&self, id: usize) -> &[u32] {
        &self.edges[id * self.k..(id + 1) * self.k]
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = &[u32]> + '_ {
        self.edges.chunks(self.k.max(1))
    }

    /// Ids of the edges containing `v`.
    pub fn incident(&self, v: usize) -> &[u32] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    /// Membership of a strictly increasing k-tuple.
    pub fn contains(&self, e: &[u32]) -> bool {
        if e.len() != self.k {
            return false;
        }
        let (mut lo, mut hi) = (0, self.m());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.edge(mid).cmp(e) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }
}
