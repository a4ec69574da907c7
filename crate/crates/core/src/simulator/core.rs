use super::{Coloring, Hypergraph};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, VecDeque};

/// Occurrence thresholds of the core process.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thresholds {
    /// `W_ij = {v ∈ V_i : m_{k-1}(v, V_j) < t_w}`
    pub t_w: u64,
    /// `U_ij = {v ∈ V_i : m_1(v, W_j, V_j) > t_u}`
    pub t_u: u64,
    /// Closure of `Z` adds `v` with `m_1(v, Z, V_j) > t_z`.
    pub t_z: u64,
    /// Core vertices have `m_{k-1}(v, V_i ∩ core) ≥ t_core` for all `i ≠ σ(v)`.
    pub t_core: u64,
    /// Vertices with `m_{k-1}(v, V_j) < blocked_min` for some foreign `j`
    /// are reported as sparse.
    pub blocked_min: u64,
}

impl Thresholds {
    /// `t_w = 300k`, `t_u = t_z = t_core = 100k`, `blocked_min = 15`.
    pub fn for_k(k: u32) -> Self {
        let k = k as u64;
        Thresholds { t_w: 300 * k, t_u: 100 * k, t_z: 100 * k, t_core: 100 * k, blocked_min: 15 }
    }

    /// [`Thresholds::for_k`] divided by `factor`, rounded, at least 1.
    pub fn scaled(k: u32, factor: f64) -> Self {
        let d = Self::for_k(k);
        let s = |x: u64| ((x as f64 / factor).round() as u64).max(1);
        Thresholds { t_w: s(d.t_w), t_u: s(d.t_u), t_z: s(d.t_z), t_core: s(d.t_core), blocked_min: s(d.blocked_min) }
    }

    pub fn uniform(t: u64) -> Self {
        Thresholds { t_w: t, t_u: t, t_z: t, t_core: t, blocked_min: t }
    }
}

/// Output of [`extract_core`]. Vertex sets are sorted 0-based id lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoreDecomposition {
    pub n: usize,
    pub q: usize,
    pub thresholds: Thresholds,
    /// `w_sets[i][j] = W_ij`; empty on the diagonal.
    pub w_sets: Vec<Vec<Vec<u32>>>,
    pub w: Vec<u32>,
    pub u: Vec<u32>,
    pub z: Vec<u32>,
    pub core: Vec<u32>,
    /// Vertices with no supporting edge into at least one foreign class.
    pub a0: Vec<u32>,
    /// Vertices with no supporting edge into at least two foreign classes.
    pub a00: Vec<u32>,
    /// Vertices with a supporting edge touching `Z`.
    pub az: Vec<u32>,
    /// Vertices outside `A0` with no supporting edge avoiding `W` in some
    /// foreign class.
    pub aw: Vec<u32>,
    /// Vertices unblocked in at least two colors.
    pub f1: Vec<u32>,
    /// Vertices unblocked in at least three colors.
    pub f2: Vec<u32>,
    pub sparse: Vec<u32>,
}

fn to_list(m: &[bool]) -> Vec<u32> {
    m.iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v as u32).collect()
}

/// The common color of `e \ {v}`, if there is one.
fn others_color(e: &[u32], v: u32, sigma: &Coloring) -> Option<usize> {
    let mut it = e.iter().filter(|&&u| u != v);
    let c = sigma.color(*it.next()? as usize);
    it.all(|&u| sigma.color(u as usize) == c).then_some(c as usize)
}

/// `e` counts towards `m_1(w, Z, V_j)`: every other vertex is in `Z` or
/// `V_j`, at most one of them is in `Z` outside `V_j`, and at least one is
/// in `Z`.
fn z_qualifies(e: &[u32], w: u32, j: usize, in_z: &[bool], sigma: &Coloring) -> bool {
    let (mut z_in, mut z_out) = (0, 0);
    for &o in e {
        if o == w {
            continue;
        }
        let z = in_z[o as usize];
        let inv = sigma.color(o as usize) as usize == j;
        match (z, inv) {
            (true, true) => z_in += 1,
            (true, false) => z_out += 1,
            (false, false) => return false,
            (false, true) => {}
        }
    }
    z_out <= 1 && z_in + z_out >= 1
}

fn check(h: &Hypergraph, sigma: &Coloring) -> Result<()> {
    if h.n() != sigma.n() {
        return Err(Error::Mismatch(format!("hypergraph has n = {} but coloring has n = {}", h.n(), sigma.n())));
    }
    if h.k() < 2 {
        return Err(Error::param("the core needs k >= 2"));
    }
    Ok(())
}

/// Greatest subset of `alive` in which every vertex `v` has at least
/// `t_core` edges `e ∋ v` with `e \ {v}` inside the subset and inside `V_j`,
/// for every color `j ≠ σ(v)`. Computed by peeling with a work queue.
pub fn peel(h: &Hypergraph, sigma: &Coloring, alive: &[bool], t_core: u64) -> Result<Vec<bool>> {
    check(h, sigma)?;
    let n = h.n();
    let q = sigma.q();
    let mut alive = alive.to_vec();
    let mut dead_in_edge: Vec<u32> =
        h.edges().map(|e| e.iter().filter(|&&v| !alive[v as usize]).count() as u32).collect();
    let mut support = vec![0u64; n * q];
    for (id, e) in h.edges().enumerate() {
        if dead_in_edge[id] > 0 {
            continue;
        }
        for &v in e {
            if let Some(j) = others_color(e, v, sigma) {
                support[v as usize * q + j] += 1;
            }
        }
    }
    let violates = |v: usize, support: &[u64]| {
        let own = sigma.color(v) as usize;
        (0..q).any(|j| j != own && support[v * q + j] < t_core)
    };
    let mut queued = vec![false; n];
    let mut queue = VecDeque::new();
    for v in 0..n {
        if alive[v] && violates(v, &support) {
            queued[v] = true;
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        alive[v] = false;
        for &id in h.incident(v) {
            let id = id as usize;
            dead_in_edge[id] += 1;
            if dead_in_edge[id] != 1 {
                continue;
            }
            let e = h.edge(id);
            for &u in e {
                let ui = u as usize;
                if ui == v || !alive[ui] {
                    continue;
                }
                if let Some(j) = others_color(e, u, sigma) {
                    support[ui * q + j] -= 1;
                    if !queued[ui] && j != sigma.color(ui) as usize && support[ui * q + j] < t_core {
                        queued[ui] = true;
                        queue.push_back(ui);
                    }
                }
            }
        }
    }
    Ok(alive)
}

/// Runs the W/U/Z construction, the core, and the free-vertex sets.
///
/// `Z` starts at `U` and repeatedly absorbs the lowest-id vertex `v ∉ Z`
/// with `m_1(v, Z, V_j) > t_z` for some `j ≠ σ(v)`.
pub fn extract_core(h: &Hypergraph, sigma: &Coloring, thr: &Thresholds) -> Result<CoreDecomposition> {
    check(h, sigma)?;
    let n = h.n();
    let q = sigma.q();
    let color = |v: usize| sigma.color(v) as usize;

    // deg[v][j] = m_{k-1}(v, V_j)
    let mut deg = vec![0u64; n * q];
    for e in h.edges() {
        for &v in e {
            if let Some(j) = others_color(e, v, sigma) {
                deg[v as usize * q + j] += 1;
            }
        }
    }
    let foreign = |v: usize| (0..q).filter(move |&j| j != color(v));

    let mut w_sets = vec![vec![Vec::new(); q]; q];
    let mut in_w = vec![false; n];
    for v in 0..n {
        for j in foreign(v) {
            if deg[v * q + j] < thr.t_w {
                w_sets[color(v)][j].push(v as u32);
                in_w[v] = true;
            }
        }
    }

    // m_1(v, W_j, V_j): others all in V_j, at least one of them in W.
    let mut to_w = vec![0u64; n * q];
    let mut avoid_w = vec![0u64; n * q];
    let mut in_z = vec![false; n];
    for e in h.edges() {
        for &v in e {
            if let Some(j) = others_color(e, v, sigma) {
                if e.iter().any(|&o| o != v && in_w[o as usize]) {
                    to_w[v as usize * q + j] += 1;
                } else {
                    avoid_w[v as usize * q + j] += 1;
                }
            }
        }
    }
    for v in 0..n {
        if foreign(v).any(|j| to_w[v * q + j] > thr.t_u) {
            in_z[v] = true;
        }
    }
    let in_u = in_z.clone();

    let mut zc = vec![0u64; n * q];
    for e in h.edges() {
        for &v in e {
            let vi = v as usize;
            if in_z[vi] {
                continue;
            }
            for j in foreign(vi) {
                if z_qualifies(e, v, j, &in_z, sigma) {
                    zc[vi * q + j] += 1;
                }
            }
        }
    }
    let mut candidates: BTreeSet<usize> =
        (0..n).filter(|&v| !in_z[v] && foreign(v).any(|j| zc[v * q + j] > thr.t_z)).collect();
    while let Some(u) = candidates.pop_first() {
        if !foreign(u).any(|j| zc[u * q + j] > thr.t_z) {
            continue;
        }
        for &id in h.incident(u) {
            let e = h.edge(id as usize);
            for &w in e {
                let wi = w as usize;
                if wi == u || in_z[wi] {
                    continue;
                }
                for j in foreign(wi) {
                    let before = z_qualifies(e, w, j, &in_z, sigma);
                    in_z[u] = true;
                    let after = z_qualifies(e, w, j, &in_z, sigma);
                    in_z[u] = false;
                    if after && !before {
                        zc[wi * q + j] += 1;
                    } else if before && !after {
                        zc[wi * q + j] -= 1;
                    }
                }
            }
        }
        in_z[u] = true;
        for &id in h.incident(u) {
            for &w in h.edge(id as usize) {
                let wi = w as usize;
                if !in_z[wi] && foreign(wi).any(|j| zc[wi * q + j] > thr.t_z) {
                    candidates.insert(wi);
                }
            }
        }
    }

    let in_core = peel(h, sigma, &vec![true; n], thr.t_core)?;

    let mut a0 = vec![false; n];
    let mut a00 = vec![false; n];
    let mut aw = vec![false; n];
    let mut sparse = vec![false; n];
    for v in 0..n {
        let zero = foreign(v).filter(|&i| deg[v * q + i] == 0).count();
        a0[v] = zero >= 1;
        a00[v] = zero >= 2;
        aw[v] = !a0[v] && foreign(v).any(|i| avoid_w[v * q + i] == 0);
        sparse[v] = foreign(v).any(|i| deg[v * q + i] < thr.blocked_min);
    }

    let mut az = vec![false; n];
    let mut blocked = vec![false; n * q];
    for e in h.edges() {
        for &v in e {
            let vi = v as usize;
            if let Some(j) = others_color(e, v, sigma) {
                let others = || e.iter().filter(|&&o| o != v);
                if j != color(vi) && others().any(|&o| in_z[o as usize]) {
                    az[vi] = true;
                }
                if others().all(|&o| in_core[o as usize]) {
                    blocked[vi * q + j] = true;
                }
            }
        }
    }
    let free = |v: usize| (0..q).filter(|&j| !blocked[v * q + j]).count();
    let f1: Vec<bool> = (0..n).map(|v| free(v) >= 2).collect();
    let f2: Vec<bool> = (0..n).map(|v| free(v) >= 3).collect();

    Ok(CoreDecomposition {
        n,
        q,
        thresholds: *thr,
        w_sets,
        w: to_list(&in_w),
        u: to_list(&in_u),
        z: to_list(&in_z),
        core: to_list(&in_core),
        a0: to_list(&a0),
        a00: to_list(&a00),
        az: to_list(&az),
        aw: to_list(&aw),
        f1: to_list(&f1),
        f2: to_list(&f2),
        sparse: to_list(&sparse),
    })
}
