use crate::error::{Error, Result};
use crate::moments::{flat_overlap, flat_rate, rate, s_stable_rate};
use crate::params::ModelParams;
use crate::polytope::{
    averaging_condition, flatten, project_rows, project_to_d, random_point_in_d, random_point_in_s,
    random_stable_point, stability_index, DomainTag, OverlapMatrix,
};
use crate::rng::{stream, Rng};
use crate::warning::Warning;
use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

const LOG_FLOOR: f64 = 1e-300;
const MAX_HALVINGS: usize = 60;
const MAX_RESTARTS: usize = 10;
const PROJECTION_ITERATIONS: usize = 10_000;
const PROJECTION_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MaximizeConfig {
    pub starts: usize,
    pub max_steps: usize,
    /// Ascent stops once the projected gradient norm drops below this.
    pub grad_tol: f64,
    pub initial_step: f64,
    /// Membership tolerance for row and column sums.
    pub tolerance: f64,
    pub seed: u64,
    /// Interleave flattening moves with gradient steps.
    pub flatten: bool,
}

impl Default for MaximizeConfig {
    fn default() -> Self {
        MaximizeConfig {
            starts: 200,
            max_steps: 10_000,
            grad_tol: 1e-10,
            initial_step: 0.1,
            tolerance: 1e-9,
            seed: 0,
            flatten: true,
        }
    }
}

/// Best value found among starts ending with stability index `s`, against
/// `F(ā(s)) + q^{0.999-k}` (just `F(ā)` for `s = 0`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerStability {
    pub s: usize,
    pub best_value: f64,
    pub bound: f64,
    pub starts: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaximizationReport {
    pub domain: DomainTag,
    pub params: ModelParams,
    pub best_point: OverlapMatrix,
    pub best_value: f64,
    /// `F(ā)`
    pub flat_value: f64,
    /// `best_value - flat_value`
    pub gap: f64,
    /// Smallest max-norm distance from a final point to `ā`.
    pub min_flat_distance: f64,
    pub starts: usize,
    /// Starts that stopped before the step limit.
    pub converged_starts: usize,
    pub restarts: usize,
    pub steps: usize,
    pub flatten_moves: usize,
    pub per_s_results: Vec<PerStability>,
    /// No sampled point with stability index `s ≥ 1` reached `F(ā)`.
    pub flat_dominates: bool,
    pub warnings: Vec<Warning>,
}

/// `∂F/∂a_ij = -ln a_ij - 1 + c k a_ij^{k-1} / (1 - 2q^{1-k} + ‖a‖_k^k)`,
/// entries floored at `1e-300` inside the logarithm.
pub fn gradient(a: &OverlapMatrix, p: &ModelParams) -> Vec<f64> {
    let k = p.k as i32;
    let denom = 1.0 - 2.0 * p.q_pow_1mk() + a.power_sum(p.k);
    let coef = p.c * p.k as f64 / denom;
    a.entries().iter().map(|&x| -x.max(LOG_FLOOR).ln() - 1.0 + coef * x.powi(k - 1)).collect()
}

/// Projection of `g` onto the tangent space of the domain: row and column
/// means removed for doubly stochastic domains, row means only for S.
pub fn projected_direction(g: &[f64], q: usize, doubly: bool) -> Vec<f64> {
    let qf = q as f64;
    let rows: Vec<f64> = g.chunks(q).map(|r| r.iter().sum::<f64>() / qf).collect();
    if !doubly {
        return g.iter().enumerate().map(|(idx, x)| x - rows[idx / q]).collect();
    }
    let mut cols = vec![0.0; q];
    for (idx, x) in g.iter().enumerate() {
        cols[idx % q] += x / qf;
    }
    let mean = rows.iter().sum::<f64>() / qf;
    g.iter().enumerate().map(|(idx, x)| x - rows[idx / q] - cols[idx % q] + mean).collect()
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn value(a: &OverlapMatrix, p: &ModelParams) -> f64 {
    rate(a, p).map(|r| r.rate).unwrap_or(f64::NEG_INFINITY)
}

fn reproject(entries: Vec<f64>, q: usize, domain: DomainTag) -> Result<OverlapMatrix> {
    let clipped: Vec<f64> = entries.into_iter().map(|x| x.max(0.0)).collect();
    if domain.doubly_stochastic() {
        Ok(project_to_d(q, &clipped, PROJECTION_ITERATIONS, PROJECTION_TOL)?.matrix)
    } else {
        project_rows(q, &clipped)
    }
}

fn start_point(domain: DomainTag, p: &ModelParams, rng: &mut Rng) -> Result<OverlapMatrix> {
    let q = p.q as usize;
    match domain {
        DomainTag::D => random_point_in_d(q, rng),
        DomainTag::S => random_point_in_s(q, rng),
        DomainTag::Stable { s } => random_stable_point(q, p.k, s, false, rng),
        DomainTag::Tame => {
            let first = rng.random_range(0..q);
            let mut last = None;
            for off in 0..q {
                match random_stable_point(q, p.k, (first + off) % q, true, rng) {
                    Ok(a) => return Ok(a),
                    Err(e) => last = Some(e),
                }
            }
            Err(last.expect("q > 0"))
        }
    }
}

#[derive(Debug, Clone)]
struct StartResult {
    point: OverlapMatrix,
    value: f64,
    steps: usize,
    converged: bool,
    restarts: usize,
    flatten_moves: usize,
    flatten_decreases: usize,
    worst_decrease: f64,
}

struct Ascent<'a> {
    domain: DomainTag,
    p: &'a ModelParams,
    cfg: &'a MaximizeConfig,
    flatten_moves: usize,
    flatten_decreases: usize,
    worst_decrease: f64,
}

impl Ascent<'_> {
    fn admissible(&self, a: &OverlapMatrix) -> bool {
        self.domain.contains(a, self.p.k, self.cfg.tolerance)
    }

    /// One greedy pass over the rows: on each row the largest prefix of
    /// smallest entries meeting the averaging condition is flattened, and
    /// the move kept if it strictly raises F.
    fn flatten_pass(&mut self, a: &mut OverlapMatrix, f: &mut f64) -> Result<()> {
        let q = a.q();
        let lq = (q as f64).ln();
        for i in 0..q {
            let mut order: Vec<usize> = (0..q).collect();
            order.sort_by(|&x, &y| a.get(i, x).total_cmp(&a.get(i, y)).then(x.cmp(&y)));
            for size in (2..=q).rev() {
                let cols = &order[..size];
                let mu = ((size as f64).ln() / lq).min(1.0);
                if !averaging_condition(a, i, cols, mu, self.p).value {
                    continue;
                }
                let flat = flatten(a, i, cols)?;
                let raw = value(&flat, self.p);
                if raw < *f - 1e-12 {
                    self.flatten_decreases += 1;
                    self.worst_decrease = self.worst_decrease.min(raw - *f);
                }
                let cand = if self.domain.doubly_stochastic() {
                    reproject(flat.into_entries(), q, self.domain)?
                } else {
                    flat
                };
                let fc = value(&cand, self.p);
                if fc > *f && self.admissible(&cand) {
                    *a = cand;
                    *f = fc;
                    self.flatten_moves += 1;
                }
                break;
            }
        }
        Ok(())
    }

    /// Runs from `a` until convergence or the step limit. Errors come from
    /// failed projections.
    fn run(&mut self, mut a: OverlapMatrix) -> Result<(OverlapMatrix, f64, usize, bool)> {
        let q = a.q();
        let mut f = value(&a, self.p);
        for step in 0..self.cfg.max_steps {
            if self.cfg.flatten {
                self.flatten_pass(&mut a, &mut f)?;
            }
            let d = projected_direction(&gradient(&a, self.p), q, self.domain.doubly_stochastic());
            if norm(&d) < self.cfg.grad_tol {
                return Ok((a, f, step, true));
            }
            let mut t = self.cfg.initial_step;
            let mut accepted = false;
            for _ in 0..MAX_HALVINGS {
                let trial: Vec<f64> = a.entries().iter().zip(&d).map(|(x, g)| x + t * g).collect();
                let cand = reproject(trial, q, self.domain)?;
                let fc = value(&cand, self.p);
                if fc > f && self.admissible(&cand) {
                    debug_assert!(fc > f);
                    a = cand;
                    f = fc;
                    accepted = true;
                    break;
                }
                t *= 0.5;
            }
            if !accepted {
                return Ok((a, f, step, true));
            }
        }
        Ok((a, f, self.cfg.max_steps, false))
    }
}

fn run_start(index: usize, domain: DomainTag, p: &ModelParams, cfg: &MaximizeConfig) -> Result<StartResult> {
    let mut rng = stream(cfg.seed, index as u64);
    let mut ascent = Ascent { domain, p, cfg, flatten_moves: 0, flatten_decreases: 0, worst_decrease: 0.0 };
    let mut restarts = 0;
    loop {
        let a0 = start_point(domain, p, &mut rng)?;
        match ascent.run(a0) {
            Ok((point, value, steps, converged)) => {
                return Ok(StartResult {
                    point,
                    value,
                    steps,
                    converged,
                    restarts,
                    flatten_moves: ascent.flatten_moves,
                    flatten_decreases: ascent.flatten_decreases,
                    worst_decrease: ascent.worst_decrease,
                })
            }
            Err(_) if restarts < MAX_RESTARTS => restarts += 1,
            Err(e) => return Err(e),
        }
    }
}

/// Multistart projected gradient ascent of F over `domain`.
///
/// Each start draws its own point from a stream derived from `cfg.seed` and
/// its index, so results do not depend on thread scheduling. The best start
/// wins; ties go to the lexicographically smaller matrix.
pub fn maximize(domain: DomainTag, p: &ModelParams, cfg: &MaximizeConfig) -> Result<MaximizationReport> {
    if cfg.starts == 0 {
        return Err(Error::param("at least one start is needed"));
    }
    if let DomainTag::Stable { s } = domain {
        if s >= p.q as usize {
            return Err(Error::param(format!("stability index {s} must be below q = {}", p.q)));
        }
    }
    let results: Vec<StartResult> =
        (0..cfg.starts).into_par_iter().map(|i| run_start(i, domain, p, cfg)).collect::<Result<_>>()?;

    let best = results
        .iter()
        .max_by(|x, y| x.value.total_cmp(&y.value).then_with(|| y.point.lex_cmp(&x.point)))
        .expect("at least one start");
    let flat_value = flat_rate(p).rate;
    let q = p.q as usize;
    let flat = flat_overlap(q);

    let mut per_s: Vec<PerStability> = Vec::new();
    if matches!(domain, DomainTag::Tame | DomainTag::Stable { .. }) {
        for r in &results {
            let s = stability_index(&r.point, p.k);
            match per_s.iter_mut().find(|x| x.s == s) {
                Some(e) => {
                    e.best_value = e.best_value.max(r.value);
                    e.starts += 1;
                }
                None => {
                    let bound = if s == 0 || s >= q {
                        flat_value
                    } else {
                        s_stable_rate(p, s)?.rate + (q as f64).powf(0.999 - p.k as f64)
                    };
                    per_s.push(PerStability { s, best_value: r.value, bound, starts: 1 });
                }
            }
        }
        per_s.sort_by_key(|x| x.s);
    }
    let flat_dominates = match domain {
        DomainTag::Tame | DomainTag::Stable { .. } => {
            per_s.iter().filter(|x| x.s >= 1).all(|x| x.best_value < flat_value)
        }
        _ => best.value <= flat_value + cfg.tolerance,
    };

    let converged_starts = results.iter().filter(|r| r.converged).count();
    let restarts: usize = results.iter().map(|r| r.restarts).sum();
    let decreases: usize = results.iter().map(|r| r.flatten_decreases).sum();
    let mut warnings = Vec::new();
    if restarts > 0 {
        warnings.push(Warning::RestartedStarts { count: restarts });
    }
    if converged_starts < cfg.starts {
        warnings.push(Warning::UnconvergedStarts { count: cfg.starts - converged_starts });
    }
    if decreases > 0 {
        let worst = results.iter().map(|r| r.worst_decrease).fold(0.0, f64::min);
        warnings.push(Warning::FlattenDecrease { count: decreases, worst });
    }

    Ok(MaximizationReport {
        domain,
        params: *p,
        best_point: best.point.clone(),
        best_value: best.value,
        flat_value,
        gap: best.value - flat_value,
        min_flat_distance: results.iter().map(|r| r.point.max_abs_diff(&flat)).fold(f64::INFINITY, f64::min),
        starts: cfg.starts,
        converged_starts,
        restarts,
        steps: results.iter().map(|r| r.steps).sum(),
        flatten_moves: results.iter().map(|r| r.flatten_moves).sum(),
        per_s_results: per_s,
        flat_dominates,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(starts: usize) -> MaximizeConfig {
        MaximizeConfig { starts, seed: 17, ..Default::default() }
    }

    #[test]
    fn zero_density_maximum_is_flat() {
        for domain in [DomainTag::D, DomainTag::S] {
            let p = ModelParams::new(3, 3, 0.0).unwrap();
            let r = maximize(domain, &p, &cfg(8)).unwrap();
            assert!((r.best_value - 2.0 * 3f64.ln()).abs() < 1e-9, "{domain}: {}", r.best_value);
            assert!(r.best_point.max_abs_diff(&flat_overlap(3)) < 1e-6);
        }
    }

    #[test]
    fn below_critical_density_flat_wins() {
        let p = ModelParams::new(3, 3, 4.0).unwrap();
        let r = maximize(DomainTag::D, &p, &cfg(16)).unwrap();
        assert!(r.gap <= 1e-9);
        assert!(r.min_flat_distance < 1e-6);
        assert!(r.gap >= -1e-9);
        assert_eq!(r.gap, r.best_value - r.flat_value);
        assert!(DomainTag::D.contains(&r.best_point, 3, 1e-9));
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let p = ModelParams::new(4, 3, 10.0).unwrap();
        let a = maximize(DomainTag::D, &p, &cfg(6)).unwrap();
        let b = maximize(DomainTag::D, &p, &cfg(6)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn tame_domain_reports_per_stability() {
        let p = ModelParams::new(4, 3, 10.0).unwrap();
        let r = maximize(DomainTag::Tame, &p, &cfg(8)).unwrap();
        assert!(!r.per_s_results.is_empty());
        assert!(DomainTag::Tame.contains(&r.best_point, 3, 1e-9));
        let total: usize = r.per_s_results.iter().map(|x| x.starts).sum();
        assert_eq!(total, 8);
    }

    #[test]
    fn tangent_projection_preserves_sums() {
        let g: Vec<f64> = (0..16).map(|x| (x as f64).sin()).collect();
        let d = projected_direction(&g, 4, true);
        for i in 0..4 {
            assert!(d[i * 4..i * 4 + 4].iter().sum::<f64>().abs() < 1e-14);
            assert!((0..4).map(|r| d[r * 4 + i]).sum::<f64>().abs() < 1e-14);
        }
        let d = projected_direction(&g, 4, false);
        for i in 0..4 {
            assert!(d[i * 4..i * 4 + 4].iter().sum::<f64>().abs() < 1e-14);
        }
    }
}
