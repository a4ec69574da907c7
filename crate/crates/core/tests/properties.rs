use hypercolor::moments::{
    energy_from_power_sum, energy_from_power_sum_log_domain, entropy_row_bound, entropy_row_bound_pinned, rate,
    rate_log_domain, scaled_row_entropy,
};
use hypercolor::oracle::{enumerate_colorings, partition_function, Filter};
use hypercolor::polytope::{flatten, is_in_d, overlap_of, project_to_d, random_point_in_d};
use hypercolor::rng::from_seed;
use hypercolor::simulator::{
    edge_count_m, extract_core, is_proper, mask, monochromatic_count, peel, sample_hypergraph, sample_planted,
};
use hypercolor::{Coloring, Hypergraph, ModelParams, OverlapMatrix, Thresholds};
use proptest::prelude::*;

fn graph(n: usize, k: usize, density: f64, seed: u64) -> Hypergraph {
    let total = (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1));
    let m = ((total as f64) * density).round() as usize;
    sample_hypergraph(n, k, m, &mut from_seed(seed)).unwrap()
}

fn subsets(items: &[u32], size: usize) -> Vec<Vec<u32>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    if items.len() < size {
        return Vec::new();
    }
    let mut out = subsets(&items[1..], size - 1);
    for s in &mut out {
        s.insert(0, items[0]);
    }
    out.extend(subsets(&items[1..], size));
    out
}

fn naive_m(h: &Hypergraph, alpha: usize, x1: &[bool], x2: &[bool], x3: &[bool]) -> usize {
    h.edges()
        .filter(|e| {
            e.iter().any(|&x| {
                if !x1[x as usize] {
                    return false;
                }
                let rest: Vec<u32> = e.iter().copied().filter(|&v| v != x).collect();
                subsets(&rest, alpha).iter().any(|s| {
                    s.iter().all(|&v| x2[v as usize]) && rest.iter().filter(|v| !s.contains(v)).all(|&v| x3[v as usize])
                })
            })
        })
        .count()
}

/// Edges through `v` whose other vertices all lie in `V_j ∩ alive`.
fn support(h: &Hypergraph, sigma: &Coloring, alive: &[bool], v: usize, j: u32) -> usize {
    h.edges()
        .filter(|e| {
            e.contains(&(v as u32))
                && e.iter().all(|&o| o as usize == v || (alive[o as usize] && sigma.color(o as usize) == j))
        })
        .count()
}

fn naive_peel(h: &Hypergraph, sigma: &Coloring, t: u64) -> Vec<bool> {
    let n = h.n();
    let mut alive = vec![true; n];
    loop {
        let drop: Vec<usize> = (0..n)
            .filter(|&v| {
                alive[v]
                    && (0..sigma.q() as u32)
                        .any(|j| j != sigma.color(v) && (support(h, sigma, &alive, v, j) as u64) < t)
            })
            .collect();
        if drop.is_empty() {
            return alive;
        }
        for v in drop {
            alive[v] = false;
        }
    }
}

fn naive_z(h: &Hypergraph, sigma: &Coloring, u: &[u32], t_z: u64) -> Vec<u32> {
    let n = h.n();
    let mut in_z = mask(n, u);
    loop {
        let next = (0..n).find(|&v| {
            !in_z[v]
                && (0..sigma.q() as u32).filter(|&j| j != sigma.color(v)).any(|j| {
                    let vj: Vec<bool> = (0..n).map(|o| sigma.color(o) == j).collect();
                    let x1 = mask(n, &[v as u32]);
                    naive_m(h, 1, &x1, &in_z, &vj) as u64 > t_z
                })
        });
        match next {
            Some(v) => in_z[v] = true,
            None => return (0..n as u32).filter(|&v| in_z[v as usize]).collect(),
        }
    }
}

fn arb_row(q: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..1.0, q).prop_filter_map("zero row", move |w| {
        let s: f64 = w.iter().sum();
        (s > 1e-6).then(|| w.iter().map(|x| x / (s * q as f64)).collect())
    })
}

fn arb_cols(q: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::sample::subsequence((0..q).collect::<Vec<_>>(), 1..=q)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn flatten_is_idempotent_and_local(q in 2usize..7, seed in any::<u64>(), i in 0usize..7, cols in arb_cols(7)) {
        let i = i % q;
        let cols: Vec<usize> = cols.into_iter().filter(|&j| j < q).collect();
        prop_assume!(!cols.is_empty());
        let a = random_point_in_d(q, &mut from_seed(seed)).unwrap();
        let f = flatten(&a, i, &cols).unwrap();
        let g = flatten(&f, i, &cols).unwrap();
        prop_assert!(f.max_abs_diff(&g) <= 1e-17);
        prop_assert!((f.row_sums()[i] - a.row_sums()[i]).abs() < 1e-15);
        for r in 0..q {
            for c in 0..q {
                if r != i || !cols.contains(&c) {
                    prop_assert_eq!(f.get(r, c), a.get(r, c));
                }
            }
        }
    }

    #[test]
    fn row_bounds_dominate_row_entropy(row in (3usize..9).prop_flat_map(arb_row), mask_bits in any::<u16>()) {
        let q = row.len();
        let h = scaled_row_entropy(&row).unwrap();
        let cols: Vec<usize> = (0..q).filter(|j| mask_bits >> j & 1 == 1).collect();
        prop_assume!(!cols.is_empty());
        prop_assert!(entropy_row_bound(&row, &cols, 1e-9).unwrap() >= h - 1e-12);
        let pinned: Vec<usize> = cols.into_iter().filter(|&j| j != 0).collect();
        if !pinned.is_empty() && pinned.len() < q - 1 && q as f64 * row[0] < 1.0 - 1e-9 {
            prop_assert!(entropy_row_bound_pinned(&row, &pinned, 1e-9).unwrap() >= h - 1e-12);
        }
    }

    #[test]
    fn energy_increases_with_power_sum(q in 3u32..20, k in 3u32..6, c in 0.1f64..50.0, x in 0.0f64..1.0, y in 0.0f64..1.0) {
        let p = ModelParams::new(q, k, c).unwrap();
        let floor = 2.0 * (q as f64).powi(1 - k as i32);
        let lo = floor * (1.0 + 1e-6);
        let (x, y) = (lo + x * (1.0 - lo), lo + y * (1.0 - lo));
        let (ex, ey) = (energy_from_power_sum(x, &p).unwrap(), energy_from_power_sum(y, &p).unwrap());
        if x < y {
            prop_assert!(ex <= ey);
        }
        let lx = energy_from_power_sum_log_domain(x, &p).unwrap();
        prop_assert!((ex - lx).abs() <= 1e-9 * (1.0 + ex.abs()));
    }

    #[test]
    fn rate_is_entropy_plus_energy(q in 2usize..8, k in 2u32..6, c in 0.0f64..20.0, seed in any::<u64>()) {
        let a = random_point_in_d(q, &mut from_seed(seed)).unwrap();
        let p = ModelParams::new(q as u32, k, c).unwrap();
        let f = rate(&a, &p).unwrap();
        prop_assert_eq!(f.rate, f.entropy + f.energy);
        let g = rate_log_domain(&a, &p).unwrap();
        prop_assert!((f.rate - g.rate).abs() < 1e-10);
    }

    #[test]
    fn projection_lands_in_d(q in 2usize..8, w in prop::collection::vec(0.01f64..1.0, 64)) {
        let p = project_to_d(q, &w[..q * q], 10_000, 1e-13).unwrap();
        prop_assert!(is_in_d(&p.matrix, 1e-10));
    }

    #[test]
    fn json_round_trip_is_exact(q in 2usize..6, seed in any::<u64>()) {
        let a = random_point_in_d(q, &mut from_seed(seed)).unwrap();
        prop_assert_eq!(OverlapMatrix::from_json(&a.to_json()).unwrap(), a.clone());
        prop_assert_eq!(OverlapMatrix::from_csv(&a.to_csv()).unwrap(), a);
    }

    #[test]
    fn overlap_marginals_are_class_fractions(n in 1usize..40, q in 1usize..5, seed in any::<u64>()) {
        let mut rng = from_seed(seed);
        let draw = |rng: &mut hypercolor::rng::Rng| {
            use rand::Rng;
            Coloring::new((0..n).map(|_| rng.random_range(0..q as u32)).collect(), q).unwrap()
        };
        let (s, t) = (draw(&mut rng), draw(&mut rng));
        let a = overlap_of(&s, &t).unwrap();
        for (i, r) in a.row_sums().into_iter().enumerate() {
            prop_assert!((r - s.class_size(i) as f64 / n as f64).abs() < 1e-12);
        }
        for (j, c) in a.col_sums().into_iter().enumerate() {
            prop_assert!((c - t.class_size(j) as f64 / n as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn edge_count_matches_naive(n in 4usize..10, k in 2usize..5, density in 0.0f64..1.0, seed in any::<u64>(),
                                b1 in any::<u16>(), b2 in any::<u16>(), b3 in any::<u16>(), alpha in 1usize..4) {
        prop_assume!(k <= n && alpha < k);
        let h = graph(n, k, density, seed);
        let bits = |b: u16| (0..n).map(|v| b >> v & 1 == 1).collect::<Vec<_>>();
        let (x1, x2, x3) = (bits(b1), bits(b2), bits(b3));
        let x3_eff = if alpha == k - 1 { vec![false; n] } else { x3.clone() };
        prop_assert_eq!(edge_count_m(&h, alpha, &x1, &x2, Some(&x3)).unwrap(), naive_m(&h, alpha, &x1, &x2, &x3_eff));
    }

    #[test]
    fn peel_is_the_greatest_fixed_point(n in 3usize..12, k in 2usize..4, q in 2usize..4, density in 0.0f64..1.0,
                                        seed in any::<u64>(), t in 0u64..4) {
        prop_assume!(k <= n);
        let h = graph(n, k, density, seed);
        let sigma = Coloring::round_robin(n, q).unwrap();
        let core = peel(&h, &sigma, &vec![true; n], t).unwrap();
        prop_assert_eq!(&core, &naive_peel(&h, &sigma, t));
        prop_assert_eq!(peel(&h, &sigma, &core, t).unwrap(), core);
    }

    #[test]
    fn core_decomposition_invariants(n in 3usize..12, k in 2usize..4, q in 2usize..4, density in 0.0f64..1.0,
                                     seed in any::<u64>(), t in 1u64..3) {
        prop_assume!(k <= n);
        let h = graph(n, k, density, seed);
        let sigma = Coloring::round_robin(n, q).unwrap();
        let thr = Thresholds { t_w: 3 * t, t_u: t, t_z: t, t_core: t, blocked_min: t };
        let d = extract_core(&h, &sigma, &thr).unwrap();
        prop_assert!(d.f2.iter().all(|v| d.f1.contains(v)));
        prop_assert!(d.a00.iter().all(|v| d.a0.contains(v)));
        prop_assert!(d.u.iter().all(|v| d.z.contains(v)));
        prop_assert!(d.aw.iter().all(|v| !d.a0.contains(v)));
        prop_assert_eq!(&d.z, &naive_z(&h, &sigma, &d.u, thr.t_z));
        let core = mask(n, &d.core);
        prop_assert_eq!(core, naive_peel(&h, &sigma, thr.t_core));
        for v in 0..n as u32 {
            if !d.w.contains(&v) && !d.z.contains(&v) {
                prop_assert!(d.core.contains(&v), "vertex {} outside W and Z but not in the core", v);
            }
        }
    }

    #[test]
    fn proper_iff_no_monochromatic_edge(n in 3usize..10, k in 2usize..4, q in 1usize..4, density in 0.0f64..1.0,
                                        seed in any::<u64>(), colors in prop::collection::vec(0u32..4, 10)) {
        prop_assume!(k <= n);
        let h = graph(n, k, density, seed);
        let tau = Coloring::new(colors[..n].iter().map(|&c| c % q as u32).collect(), q).unwrap();
        prop_assert_eq!(monochromatic_count(&h, &tau) == 0, is_proper(&h, &tau));
    }

    #[test]
    fn planted_colorings_are_proper(n in 6usize..60, q in 2u32..5, k in 3u32..5, c in 0.5f64..5.0, seed in any::<u64>()) {
        prop_assume!(k as usize <= n);
        let sigma = Coloring::round_robin(n, q as usize).unwrap();
        let p = ModelParams::new(q, k, c).unwrap().with_n(n as u64);
        prop_assume!(p.is_ok());
        let h = sample_planted(&p.unwrap(), &sigma, &mut from_seed(seed));
        prop_assume!(h.is_ok());
        prop_assert!(is_proper(&h.unwrap().value, &sigma));
    }

    #[test]
    fn enumeration_matches_brute_force(n in 2usize..7, k in 2usize..4, q in 1usize..4, density in 0.0f64..1.0, seed in any::<u64>()) {
        prop_assume!(k <= n);
        let h = graph(n, k, density, seed);
        let mut brute = 0u64;
        for code in 0..q.pow(n as u32) {
            let colors = (0..n).map(|v| (code / q.pow(v as u32) % q) as u32).collect();
            if is_proper(&h, &Coloring::new(colors, q).unwrap()) {
                brute += 1;
            }
        }
        let e = enumerate_colorings(&h, q, Filter::All, false, 1 << 20).unwrap();
        prop_assert_eq!(e.counts.z_q, brute);
        let z0 = partition_function(&h, q, 0.0, 1 << 20).unwrap();
        prop_assert!((z0 - n as f64 * (q as f64).ln()).abs() < 1e-9);
    }
}
