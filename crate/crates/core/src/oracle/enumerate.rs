use super::check_budget;
use crate::error::{Error, Result};
use crate::simulator::{in_cluster, Coloring, Hypergraph};
use rayon::prelude::*;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Filter {
    All,
    Balanced,
}

/// Exact coloring counts. Serialized with integers as strings.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExactCounts {
    /// Proper colorings.
    pub z_q: u64,
    /// Balanced proper colorings.
    pub z_bal: u64,
    pub z_tame: Option<u64>,
    /// Proper colorings passing the filter, by class sizes.
    pub by_class_profile: BTreeMap<Vec<usize>, u64>,
}

struct Profiles<'a>(&'a BTreeMap<Vec<usize>, u64>);

impl Serialize for Profiles<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            let key: Vec<String> = k.iter().map(usize::to_string).collect();
            m.serialize_entry(&key.join(","), &v.to_string())?;
        }
        m.end()
    }
}

impl Serialize for ExactCounts {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ExactCounts", 4)?;
        st.serialize_field("z_q", &self.z_q.to_string())?;
        st.serialize_field("z_bal", &self.z_bal.to_string())?;
        st.serialize_field("z_tame", &self.z_tame.map(|z| z.to_string()))?;
        st.serialize_field("by_class_profile", &Profiles(&self.by_class_profile))?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub counts: ExactCounts,
    /// Proper colorings passing the filter, in lexicographic order of the
    /// assignment vector, when requested.
    pub colorings: Option<Vec<Coloring>>,
}

struct Dfs<'a> {
    h: &'a Hypergraph,
    q: usize,
    /// Edge ids grouped by their largest vertex.
    closing: Vec<Vec<u32>>,
    filter: Filter,
    collect: bool,
    assign: Vec<u32>,
    sizes: Vec<usize>,
    counts: ExactCounts,
    list: Vec<Vec<u32>>,
}

impl Dfs<'_> {
    fn closes_monochromatic(&self, v: usize) -> bool {
        let c = self.assign[v];
        self.closing[v].iter().any(|&id| self.h.edge(id as usize).iter().all(|&u| self.assign[u as usize] == c))
    }

    fn balanced(&self) -> bool {
        let n = self.assign.len() as f64;
        let target = n / self.q as f64;
        self.sizes.iter().all(|&s| (s as f64 - target).abs() <= n.sqrt())
    }

    fn visit(&mut self, v: usize) {
        if v == self.assign.len() {
            self.counts.z_q += 1;
            let bal = self.balanced();
            if bal {
                self.counts.z_bal += 1;
            }
            if self.filter == Filter::All || bal {
                *self.counts.by_class_profile.entry(self.sizes.clone()).or_default() += 1;
                if self.collect {
                    self.list.push(self.assign.clone());
                }
            }
            return;
        }
        for c in 0..self.q as u32 {
            self.assign[v] = c;
            self.sizes[c as usize] += 1;
            if !self.closes_monochromatic(v) {
                self.visit(v + 1);
            }
            self.sizes[c as usize] -= 1;
        }
    }
}

pub(crate) fn closing_edges(h: &Hypergraph) -> Vec<Vec<u32>> {
    let mut closing = vec![Vec::new(); h.n()];
    for (id, e) in h.edges().enumerate() {
        closing[*e.last().expect("k >= 1") as usize].push(id as u32);
    }
    closing
}

/// Every proper q-coloring of `h`, by depth-first search over vertices in
/// id order. An edge is checked once its largest vertex is colored. The
/// search is split into q shards by the color of vertex 0.
pub fn enumerate_colorings(
    h: &Hypergraph,
    q: usize,
    filter: Filter,
    collect: bool,
    budget: u64,
) -> Result<Enumeration> {
    if q == 0 {
        return Err(Error::param("q must be positive"));
    }
    check_budget(q, h.n(), budget)?;
    let n = h.n();
    let closing = closing_edges(h);
    let new_dfs = || Dfs {
        h,
        q,
        closing: closing.clone(),
        filter,
        collect,
        assign: vec![0; n],
        sizes: vec![0; q],
        counts: ExactCounts::default(),
        list: Vec::new(),
    };
    let shards: Vec<(ExactCounts, Vec<Vec<u32>>)> = if n == 0 {
        let mut d = new_dfs();
        d.visit(0);
        vec![(d.counts, d.list)]
    } else {
        (0..q as u32)
            .into_par_iter()
            .map(|c| {
                let mut d = new_dfs();
                d.assign[0] = c;
                d.sizes[c as usize] = 1;
                if !d.closes_monochromatic(0) {
                    d.visit(1);
                }
                (d.counts, d.list)
            })
            .collect()
    };
    let mut counts = ExactCounts::default();
    let mut list = Vec::new();
    for (c, l) in shards {
        counts.z_q += c.z_q;
        counts.z_bal += c.z_bal;
        for (k, v) in c.by_class_profile {
            *counts.by_class_profile.entry(k).or_default() += v;
        }
        list.extend(l);
    }
    let colorings =
        if collect { Some(list.into_iter().map(|a| Coloring::new(a, q)).collect::<Result<_>>()?) } else { None };
    Ok(Enumeration { counts, colorings })
}

/// Balanced proper colorings `τ` of `h` with `τ` in the cluster of `sigma`.
pub fn enumerate_cluster(h: &Hypergraph, sigma: &Coloring, budget: u64) -> Result<Vec<Coloring>> {
    if h.n() != sigma.n() {
        return Err(Error::Mismatch(format!("hypergraph has n = {} but coloring has n = {}", h.n(), sigma.n())));
    }
    let all = enumerate_colorings(h, sigma.q(), Filter::Balanced, true, budget)?;
    let mut out = Vec::new();
    for tau in all.colorings.expect("collected") {
        if in_cluster(sigma, &tau, h.k() as u32)?.value {
            out.push(tau);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulator::is_proper;

    fn count(h: &Hypergraph, q: usize) -> u64 {
        enumerate_colorings(h, q, Filter::All, false, super::super::DEFAULT_BUDGET).unwrap().counts.z_q
    }

    #[test]
    fn examples() {
        let single = Hypergraph::from_one_based(4, 3, &[vec![1, 2, 3]]).unwrap();
        assert_eq!(count(&single, 2), 12);
        assert_eq!(count(&Hypergraph::empty(3, 3), 2), 8);
        let all =
            Hypergraph::from_one_based(4, 3, &[vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4], vec![2, 3, 4]]).unwrap();
        assert_eq!(count(&all, 2), 6);
    }

    #[test]
    fn budget_is_enforced() {
        let h = Hypergraph::empty(30, 3);
        assert!(matches!(enumerate_colorings(&h, 3, Filter::All, false, 1000), Err(Error::Budget { .. })));
    }

    #[test]
    fn balanced_filter_is_consistent() {
        let h = Hypergraph::from_one_based(6, 3, &[vec![1, 2, 3], vec![2, 4, 6], vec![1, 5, 6]]).unwrap();
        let all = enumerate_colorings(&h, 2, Filter::All, true, 1 << 20).unwrap();
        let bal = enumerate_colorings(&h, 2, Filter::Balanced, true, 1 << 20).unwrap();
        let expected: Vec<Coloring> = all.colorings.unwrap().into_iter().filter(|c| c.is_balanced()).collect();
        assert_eq!(bal.colorings.unwrap(), expected);
        assert_eq!(bal.counts.z_bal, expected.len() as u64);
        assert!(expected.iter().all(|c| is_proper(&h, c)));
    }

    #[test]
    fn cluster_contains_sigma() {
        let h = Hypergraph::empty(4, 3);
        let s = Coloring::from_one_based(&[1, 1, 2, 2], 2).unwrap();
        let c = enumerate_cluster(&h, &s, 1 << 20).unwrap();
        assert!(c.contains(&s));
        // a_ii > 0.29 with n = 4 means both vertices of each class kept.
        assert_eq!(c, vec![s]);
    }

    #[test]
    fn counts_serialize_as_strings() {
        let single = Hypergraph::from_one_based(4, 3, &[vec![1, 2, 3]]).unwrap();
        let e = enumerate_colorings(&single, 2, Filter::All, false, 1 << 20).unwrap();
        let j = serde_json::to_value(&e.counts).unwrap();
        assert_eq!(j["z_q"], "12");
        assert_eq!(j["by_class_profile"]["2,2"], "6");
    }
}
