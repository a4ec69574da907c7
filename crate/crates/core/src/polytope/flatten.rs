use super::OverlapMatrix;
use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::warning::{Checked, Warning};

/// Replaces the entries `(i, j)`, `j ∈ J`, by their average. Row sums are
/// preserved; all other entries are untouched.
pub fn flatten(a: &OverlapMatrix, i: usize, cols: &[usize]) -> Result<OverlapMatrix> {
    let q = a.q();
    if cols.is_empty() {
        return Err(Error::param("flatten needs a nonempty column set"));
    }
    if i >= q || cols.iter().any(|&j| j >= q) {
        return Err(Error::param(format!("row {i} or a column in {cols:?} is out of range for q = {q}")));
    }
    let mut seen = vec![false; q];
    for &j in cols {
        if std::mem::replace(&mut seen[j], true) {
            return Err(Error::param(format!("column {j} repeated")));
        }
    }
    let avg = cols.iter().map(|&j| a.get(i, j)).sum::<f64>() / cols.len() as f64;
    let mut entries = a.entries().to_vec();
    for &j in cols {
        entries[i * q + j] = avg;
    }
    Ok(OverlapMatrix::from_raw(q, entries))
}

/// `3 ln ln q / ln q`, the smallest admissible μ.
pub fn averaging_mu_lower(q: usize) -> f64 {
    let lq = (q as f64).ln();
    3.0 * lq.ln() / lq
}

/// Both size and magnitude conditions under which flattening row `i` on `J`
/// cannot lower the rate:
/// `|J| ≥ q^μ` and `max_{j∈J} a_ij^{k-1} < 0.995/(k q^{k-1}) (μ - ln ln q / ln q)`.
///
/// μ outside `[3 ln ln q / ln q, 1]` yields `false` with a warning.
pub fn averaging_condition(a: &OverlapMatrix, i: usize, cols: &[usize], mu: f64, p: &ModelParams) -> Checked<bool> {
    let q = a.q();
    let lower = averaging_mu_lower(q);
    if !(mu >= lower && mu <= 1.0) {
        return Checked::with(false, vec![Warning::MuOutOfRange { mu, lower }]);
    }
    if cols.is_empty() || i >= q {
        return Checked::clean(false);
    }
    let qf = q as f64;
    if (cols.len() as f64) < qf.powf(mu) {
        return Checked::clean(false);
    }
    let k = p.k as i32;
    let lq = qf.ln();
    let cap = 0.995 / (p.k as f64 * qf.powi(k - 1)) * (mu - lq.ln() / lq);
    let max = cols.iter().map(|&j| a.get(i, j).powi(k - 1)).fold(0.0, f64::max);
    Checked::clean(max < cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::{flat_overlap, rate, scaled_identity};

    fn row_matrix(q: usize, row: &[f64]) -> OverlapMatrix {
        // Row 0 given, the rest uniform so the total is 1.
        let mut e = row.to_vec();
        e.extend(std::iter::repeat_n(1.0 / (q * q) as f64, q * q - q));
        OverlapMatrix::new(q, e).unwrap()
    }

    #[test]
    fn flatten_examples() {
        let a = row_matrix(3, &[0.2, 0.1, 1.0 / 30.0]);
        let f = flatten(&a, 0, &[0, 1]).unwrap();
        assert!((f.get(0, 0) - 0.15).abs() < 1e-15);
        assert!((f.get(0, 1) - 0.15).abs() < 1e-15);
        assert_eq!(f.get(0, 2), 1.0 / 30.0);

        let g = flatten(&a, 0, &[0, 1, 2]).unwrap();
        for j in 0..3 {
            assert!((g.get(0, j) - 1.0 / 9.0).abs() < 1e-15);
        }

        let flat = flat_overlap(4);
        assert_eq!(flatten(&flat, 2, &[1, 3]).unwrap(), flat);
        assert!(flatten(&flat, 0, &[]).is_err());
    }

    #[test]
    fn flatten_is_idempotent_and_keeps_row_sums() {
        let a = row_matrix(4, &[0.13, 0.07, 0.04, 0.01]);
        let f = flatten(&a, 0, &[0, 2, 3]).unwrap();
        let g = flatten(&f, 0, &[0, 2, 3]).unwrap();
        assert_eq!(f, g);
        assert!((f.row_sums()[0] - a.row_sums()[0]).abs() < 1e-16);
    }

    #[test]
    fn averaging_condition_examples() {
        let p = ModelParams::new(100, 3, 1.0).unwrap();
        let flat = flat_overlap(100);
        let all: Vec<usize> = (0..100).collect();
        assert!(averaging_condition(&flat, 0, &all, 1.0, &p).value);
        assert!(!averaging_condition(&flat, 0, &all[..50], 1.0, &p).value);

        let id = scaled_identity(100);
        assert!(!averaging_condition(&id, 0, &all, 1.0, &p).value);
    }

    #[test]
    fn mu_range_is_empty_for_intermediate_q() {
        // 3 ln ln q / ln q exceeds 1 for 7 <= q <= 93.
        assert!(averaging_mu_lower(6) < 1.0);
        assert!(averaging_mu_lower(7) > 1.0);
        assert!(averaging_mu_lower(93) > 1.0);
        assert!(averaging_mu_lower(94) < 1.0);

        let p = ModelParams::new(30, 3, 1.0).unwrap();
        let all: Vec<usize> = (0..30).collect();
        let r = averaging_condition(&flat_overlap(30), 0, &all, 1.0, &p);
        assert!(!r.value);
        assert!(matches!(r.warnings[0], Warning::MuOutOfRange { .. }));
    }

    #[test]
    fn averaging_can_lower_the_rate_at_q3() {
        // The monotonicity guarantee is asymptotic: at q = 3, k = 5 a row that
        // meets the condition can lose rate when flattened.
        let q = 3;
        let c = crate::moments::threshold_bounds(3, 5).unwrap().value.new_lower;
        let p = ModelParams::new(3, 5, c).unwrap();
        let third = 1.0 / 3.0;
        let row = [17.0 / 120.0, 0.19, third - 17.0 / 120.0 - 0.19];
        let a = OverlapMatrix::from_fn(q, |i, j| if i == 0 { row[j] } else { (third - row[j]) / 2.0 }).unwrap();
        assert!(crate::polytope::is_in_d(&a, 1e-12));
        let cols = [0, 1];
        assert!(averaging_condition(&a, 0, &cols, 0.63, &p).value);
        let before = rate(&a, &p).unwrap().rate;
        let after = rate(&flatten(&a, 0, &cols).unwrap(), &p).unwrap().rate;
        assert!(after - before < -1e-3, "{}", after - before);
    }
}
