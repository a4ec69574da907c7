use crate::args::{BoundsArgs, ClusterArgs, Domain, MaximizeArgs, OracleArgs, RateArgs, ScanArgs, SimulateArgs};
use crate::config::{need, FileConfig};
use crate::error::{usage, CliResult};
use crate::output::Report;
use hypercolor::maximizer::{condensation_scan, s_stable_gap_table};
use hypercolor::moments::{
    critical_c, first_moment_exponent, first_moment_root, flat_overlap, kappa_checked, rate, rate_log_domain,
    s_stable_overlap, scaled_identity, stability_constant, stable_overlap, threshold_bounds,
};
use hypercolor::oracle::{
    count_tame, empirical_first_moment, enumerate_cluster, enumerate_colorings, exact_expected_balanced,
    exact_expected_colorings, partition_function, ratio_to_f64, Filter, DEFAULT_BUDGET,
};
use hypercolor::polytope::{is_in_d, is_separable_matrix, separable_window, stability_index};
use hypercolor::rng::stream;
use hypercolor::simulator::{
    cluster_size_log_bound, extract_core, monochromatic_count, sample_hypergraph, sample_planted, separability_scan,
};
use hypercolor::{maximize, Coloring, DomainTag, MaximizeConfig, ModelParams, OverlapMatrix, Thresholds, Warning};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use std::path::Path;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Inputs shared by every command.
pub struct Context {
    pub file: FileConfig,
    pub seed: u64,
    pub budget: u64,
}

impl Context {
    fn inputs(&self, random: bool, mut fields: Value) -> Value {
        let m = fields.as_object_mut().expect("object");
        m.insert("tool_version".into(), json!(VERSION));
        if random {
            m.insert("seed".into(), json!(self.seed));
        }
        fields
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

pub fn bounds(ctx: &Context, a: &BoundsArgs) -> CliResult<Report> {
    let q = need(a.q, ctx.file.q, "q")?;
    let k = need(a.k, ctx.file.k, "k")?;
    let b = threshold_bounds(q, k)?;
    let kap = kappa_checked(q as f64, k);
    let window = separable_window(q as usize, k);
    let mut warnings = b.warnings.clone();
    warnings.extend(kap.warnings.clone());
    warnings.extend(window.warnings(k));
    let mut outputs = json!({
        "bounds": b.value,
        "kappa": kap.value,
        "stability_constant": stability_constant(k),
        "first_moment_root": first_moment_root(q, k),
        "critical_c": critical_c(q, k),
        "separability_window": window,
    });
    let mut inputs = json!({ "q": q, "k": k, "gap_table": a.gap_table });
    if a.gap_table {
        let c = a.c.or(ctx.file.c).unwrap_or(b.value.new_lower);
        let p = ModelParams::new(q, k, c)?;
        let rows = s_stable_gap_table(&p)?;
        outputs["all_positive"] = json!(rows.iter().all(|r| r.positive));
        outputs["table"] = to_value(&rows);
        inputs["c"] = json!(c);
    }
    Ok(Report::new(ctx.inputs(false, inputs), outputs, warnings))
}

fn load_matrix(path: &Path) -> CliResult<OverlapMatrix> {
    let text =
        std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read matrix {}: {e}", path.display())))?;
    let csv = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    Ok(if csv { OverlapMatrix::from_csv(&text)? } else { OverlapMatrix::from_json(&text)? })
}

pub fn rate_cmd(ctx: &Context, a: &RateArgs) -> CliResult<Report> {
    let k = need(a.k, ctx.file.k, "k")?;
    let c = need(a.c, ctx.file.c, "c")?;
    let named = ["flat", "identity", "stable", "s-stable"].contains(&a.matrix.as_str());
    let matrix = if named {
        let q = need(a.q, ctx.file.q, "q")? as usize;
        match a.matrix.as_str() {
            "flat" => flat_overlap(q),
            "identity" => scaled_identity(q),
            "stable" => stable_overlap(q, k),
            _ => s_stable_overlap(q, need(a.s, ctx.file.s, "s")?)?,
        }
    } else {
        load_matrix(Path::new(&a.matrix))?
    };
    let q = matrix.q() as u32;
    if let Some(flag_q) = a.q.or(ctx.file.q) {
        if flag_q != q {
            return Err(usage(format!("--q {flag_q} does not match the {q}x{q} matrix")));
        }
    }
    let p = ModelParams::new(q, k, c)?;
    let native = rate(&matrix, &p)?;
    let log = rate_log_domain(&matrix, &p)?;
    let sep = is_separable_matrix(&matrix, k);
    let outputs = json!({
        "rate": native.rate,
        "native": native,
        "log_domain": log,
        "first_moment_exponent": first_moment_exponent(&p),
        "in_d": is_in_d(&matrix, 1e-9),
        "stability_index": stability_index(&matrix, k),
        "separable": sep.value,
        "matrix": matrix,
    });
    let inputs = json!({ "q": q, "k": k, "c": c, "matrix": a.matrix, "s": a.s.or(ctx.file.s) });
    Ok(Report::new(ctx.inputs(false, inputs), outputs, sep.warnings))
}

pub fn maximize_cmd(ctx: &Context, a: &MaximizeArgs) -> CliResult<Report> {
    let f = &ctx.file;
    let q = need(a.q, f.q, "q")?;
    let k = need(a.k, f.k, "k")?;
    let c = need(a.c, f.c, "c")?;
    let p = ModelParams::new(q, k, c)?;
    let domain = match a.domain.or(f.domain).unwrap_or(Domain::D) {
        Domain::D => DomainTag::D,
        Domain::S => DomainTag::S,
        Domain::Tame => DomainTag::Tame,
        Domain::Stable => DomainTag::Stable { s: need(a.s, f.s, "s")? },
    };
    let d = MaximizeConfig::default();
    let cfg = MaximizeConfig {
        starts: a.starts.or(f.starts).unwrap_or(d.starts),
        max_steps: a.max_steps.or(f.max_steps).unwrap_or(d.max_steps),
        grad_tol: a.grad_tol.or(f.grad_tol).unwrap_or(d.grad_tol),
        seed: ctx.seed,
        flatten: !a.no_flatten,
        ..d
    };
    let report = maximize(domain, &p, &cfg)?;
    let warnings = report.warnings.clone();
    let mut outputs = to_value(&report);
    if !report.per_s_results.is_empty() {
        outputs["table"] = to_value(&report.per_s_results);
    }
    let inputs = json!({ "q": q, "k": k, "c": c, "domain": domain, "config": cfg });
    Ok(Report::new(ctx.inputs(true, inputs), outputs, warnings))
}

#[derive(Serialize)]
struct CoreRow {
    trial: usize,
    m: usize,
    monochromatic: usize,
    w: usize,
    u: usize,
    z: usize,
    core: usize,
    a0: usize,
    a00: usize,
    az: usize,
    aw: usize,
    f1: usize,
    f2: usize,
    sparse: usize,
    /// V \ (W ∪ Z) lies inside the core.
    outside_wz_in_core: bool,
    log_bound: f64,
}

fn thresholds(k: u32, scale: Option<f64>) -> CliResult<Thresholds> {
    match scale {
        None => Ok(Thresholds::for_k(k)),
        Some(s) if s > 0.0 && s.is_finite() => Ok(Thresholds::scaled(k, s)),
        Some(s) => Err(usage(format!("--scale must be positive, got {s}"))),
    }
}

fn planted_params(q: u32, k: u32, c: f64, n: u64) -> CliResult<ModelParams> {
    Ok(ModelParams::new(q, k, c)?.with_n(n)?)
}

pub fn simulate_core(ctx: &Context, a: &SimulateArgs) -> CliResult<Report> {
    let f = &ctx.file;
    let q = need(a.q, f.q, "q")?;
    let k = need(a.k, f.k, "k")?;
    let c = need(a.c, f.c, "c")?;
    let n = need(a.n, f.n, "n")?;
    let trials = a.trials.or(f.trials).unwrap_or(1);
    if trials == 0 {
        return Err(usage("--trials must be positive"));
    }
    let scale = a.scale.or(f.scale);
    let thr = thresholds(k, scale)?;
    let p = planted_params(q, k, c, n)?;
    let seed = ctx.seed;
    let results: Vec<(CoreRow, Vec<Warning>)> = (0..trials)
        .into_par_iter()
        .map(|t| -> CliResult<_> {
            let mut rng = stream(seed, t as u64);
            let sigma = Coloring::random_balanced(n as usize, q as usize, &mut rng)?;
            let h = sample_planted(&p, &sigma, &mut rng)?;
            let d = extract_core(&h.value, &sigma, &thr)?;
            let in_core = |v: &u32| d.core.binary_search(v).is_ok();
            let outside = (0..n as u32)
                .filter(|v| d.w.binary_search(v).is_err() && d.z.binary_search(v).is_err())
                .all(|v| in_core(&v));
            let row = CoreRow {
                trial: t,
                m: h.value.m(),
                monochromatic: monochromatic_count(&h.value, &sigma),
                w: d.w.len(),
                u: d.u.len(),
                z: d.z.len(),
                core: d.core.len(),
                a0: d.a0.len(),
                a00: d.a00.len(),
                az: d.az.len(),
                aw: d.aw.len(),
                f1: d.f1.len(),
                f2: d.f2.len(),
                sparse: d.sparse.len(),
                outside_wz_in_core: outside,
                log_bound: cluster_size_log_bound(&d, q as usize, n as usize),
            };
            Ok((row, h.warnings))
        })
        .collect::<CliResult<_>>()?;
    let mean = |g: &dyn Fn(&CoreRow) -> f64| results.iter().map(|(r, _)| g(r)).sum::<f64>() / trials as f64;
    let outputs = json!({
        "thresholds": thr,
        "expected_edges": c * n as f64,
        "mean_edges": mean(&|r| r.m as f64),
        "mean_core": mean(&|r| r.core as f64),
        "mean_log_bound": mean(&|r| r.log_bound),
        "monochromatic_total": results.iter().map(|(r, _)| r.monochromatic).sum::<usize>(),
        "table": results.iter().map(|(r, _)| to_value(r)).collect::<Vec<_>>(),
    });
    let warnings = results.into_iter().flat_map(|(_, w)| w).collect();
    let inputs = json!({ "q": q, "k": k, "c": c, "n": n, "trials": trials, "scale": scale });
    Ok(Report::new(ctx.inputs(true, inputs), outputs, warnings))
}

pub fn simulate_cluster(ctx: &Context, a: &ClusterArgs) -> CliResult<Report> {
    let f = &ctx.file;
    let q = need(a.q, f.q, "q")?;
    let k = need(a.k, f.k, "k")?;
    let c = need(a.c, f.c, "c")?;
    let n = need(a.n, f.n, "n")?;
    let scale = a.scale.or(f.scale);
    let thr = thresholds(k, scale)?;
    let p = planted_params(q, k, c, n)?;
    let mut rng = stream(ctx.seed, 0);
    let sigma = Coloring::random_balanced(n as usize, q as usize, &mut rng)?;
    let h = sample_planted(&p, &sigma, &mut rng)?;
    let mut warnings = h.warnings;
    let h = h.value;
    let cluster = enumerate_cluster(&h, &sigma, ctx.budget)?;
    let d = extract_core(&h, &sigma, &thr)?;
    let bound = cluster_size_log_bound(&d, q as usize, n as usize);
    let ln_size = (cluster.len() as f64).ln() / n as f64;
    let scan = separability_scan(&h, &sigma, &cluster)?;
    warnings.extend(scan.warnings.clone());
    let mut outputs = json!({
        "m": h.m(),
        "sigma": sigma.to_one_based(),
        "cluster_size": cluster.len(),
        "ln_cluster_size_per_n": ln_size,
        "log_bound": bound,
        "within_bound": ln_size <= bound,
        "core_size": d.core.len(),
        "separable": scan.is_separable(),
        "violations": scan.violations.len(),
    });
    if a.tame {
        let t = count_tame(&h, q as usize, ctx.budget)?;
        warnings.extend(t.warnings.clone());
        outputs["tame"] = to_value(&t);
    }
    let inputs = json!({ "q": q, "k": k, "c": c, "n": n, "scale": scale, "tame": a.tame });
    Ok(Report::new(ctx.inputs(true, inputs), outputs, warnings))
}

pub fn oracle_verify(ctx: &Context, a: &OracleArgs) -> CliResult<Report> {
    let f = &ctx.file;
    let n = need(a.n, f.n, "n")?;
    let k = need(a.k, f.k, "k")?;
    let q = need(a.q, f.q, "q")?;
    let m = match (a.m.or(f.m), a.c.or(f.c)) {
        (Some(m), _) => m,
        (None, Some(c)) => ModelParams::new(q, k, c)?.with_n(n)?.m().expect("n is set"),
        (None, None) => return Err(usage("missing required value --m (or --c)")),
    };
    let trials = a.trials.or(f.trials).unwrap_or(1000);
    let (nu, ku, qu) = (n as usize, k as usize, q as usize);
    let exact = exact_expected_colorings(nu, ku, m, qu)?;
    let balanced = exact_expected_balanced(nu, ku, m, qu)?;
    let est = empirical_first_moment(nu, ku, m as usize, qu, trials, ctx.seed, ctx.budget)?;
    let exact_f = ratio_to_f64(&exact);
    let diff = (est.mean - exact_f).abs();
    let agrees = if est.std_error == 0.0 { diff <= 1e-9 * exact_f.max(1.0) } else { diff <= 3.0 * est.std_error };
    let mut outputs = json!({
        "exact_expected": exact.to_string(),
        "exact_expected_f64": exact_f,
        "exact_expected_balanced": balanced.to_string(),
        "exact_expected_balanced_f64": ratio_to_f64(&balanced),
        "empirical": est,
        "z_score": if est.std_error > 0.0 { json!(diff / est.std_error) } else { Value::Null },
        "agrees_within_3se": agrees,
    });
    let beta = a.beta.or(f.beta);
    if let Some(beta) = beta {
        let mut rng = stream(ctx.seed, trials as u64);
        let h = sample_hypergraph(nu, ku, m as usize, &mut rng)?;
        let counts = enumerate_colorings(&h, qu, Filter::All, false, ctx.budget)?.counts;
        outputs["potts"] = json!({
            "beta": beta,
            "ln_partition": partition_function(&h, qu, beta, ctx.budget)?,
            "z_q": counts.z_q.to_string(),
            "edges": h.edges().map(|e| e.iter().map(|v| v + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
        });
    }
    let inputs = json!({ "n": n, "k": k, "q": q, "m": m, "trials": trials, "beta": beta });
    Ok(Report::new(ctx.inputs(true, inputs), outputs, Vec::new()))
}

pub fn condensation(ctx: &Context, a: &ScanArgs) -> CliResult<Report> {
    let k = a.k.or(ctx.file.k).unwrap_or(3);
    let qs = if !a.q.is_empty() {
        a.q.clone()
    } else if let Some(q) = ctx.file.q {
        vec![q]
    } else {
        vec![10, 100, 1000, 10_000]
    };
    let gammas = if !a.gammas.is_empty() {
        a.gammas.clone()
    } else if let Some(g) = &ctx.file.gammas {
        g.clone()
    } else {
        let lo = std::f64::consts::LN_2;
        (0..=10).map(|i| lo + (2.0 - lo) * i as f64 / 10.0).collect()
    };
    let scan = condensation_scan(&qs, k, &gammas)?;
    let outputs = json!({
        "first_positive": scan.first_positive.map(|(q, g)| json!({ "q": q, "gamma": g })).unwrap_or(json!("none found")),
        "table": scan.rows,
    });
    let inputs = json!({ "k": k, "q": qs, "gammas": gammas });
    Ok(Report::new(ctx.inputs(false, inputs), outputs, scan.warnings))
}

pub fn default_budget(ctx_budget: Option<u64>) -> u64 {
    ctx_budget.unwrap_or(DEFAULT_BUDGET)
}
