use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Model parameters: `q` colors, arity `k`, density `c` (edges per vertex)
/// and an optional vertex count `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub q: u32,
    pub k: u32,
    pub c: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
}

impl ModelParams {
    /// `c = 0` is accepted: the rate then reduces to the entropy.
    pub fn new(q: u32, k: u32, c: f64) -> Result<Self> {
        if q < 2 {
            return Err(Error::param(format!("q must be at least 2, got {q}")));
        }
        if k < 2 {
            return Err(Error::param(format!("k must be at least 2, got {k}")));
        }
        if !c.is_finite() || c < 0.0 {
            return Err(Error::param(format!("c must be finite and nonnegative, got {c}")));
        }
        Ok(ModelParams { q, k, c, n: None })
    }

    pub fn with_n(self, n: u64) -> Result<Self> {
        if n < self.k as u64 {
            return Err(Error::param(format!("n = {n} is smaller than k = {}", self.k)));
        }
        let p = ModelParams { n: Some(n), ..self };
        let m = p.m().expect("n is set");
        let total = binomial_f64(n, self.k as u64);
        if (m as f64) > total {
            return Err(Error::param(format!(
                "m = {m} exceeds the number of possible edges C({n},{}) = {total}",
                self.k
            )));
        }
        if m == 0 && self.c > 0.0 {
            return Err(Error::param("m = ceil(c n) must be at least 1".to_string()));
        }
        Ok(p)
    }

    /// Edge count `m = ceil(c n)`. Products within 1e-9 of an integer are
    /// rounded so that `c = m / n` reproduces `m`.
    pub fn m(&self) -> Option<u64> {
        self.n.map(|n| {
            let x = self.c * n as f64;
            let r = x.round();
            if (x - r).abs() <= 1e-9 * r.max(1.0) {
                r as u64
            } else {
                x.ceil() as u64
            }
        })
    }

    pub fn ln_q(&self) -> f64 {
        (self.q as f64).ln()
    }

    /// `q^{1-k}`
    pub fn q_pow_1mk(&self) -> f64 {
        (self.q as f64).powi(1 - self.k as i32)
    }
}

/// `C(n, r)` as a float; exact while the result fits in 53 bits.
pub fn binomial_f64(n: u64, r: u64) -> f64 {
    if r > n {
        return 0.0;
    }
    let r = r.min(n - r);
    let mut acc = 1.0f64;
    for i in 0..r {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

/// `C(n, r)` as an integer, `None` on overflow.
pub fn binomial_u128(n: u64, r: u64) -> Option<u128> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r as u128 {
        acc = acc.checked_mul(n as u128 - i)? / (i + 1);
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert!(ModelParams::new(1, 3, 1.0).is_err());
        assert!(ModelParams::new(3, 1, 1.0).is_err());
        assert!(ModelParams::new(3, 3, -1.0).is_err());
        assert!(ModelParams::new(3, 3, f64::NAN).is_err());
        assert!(ModelParams::new(3, 3, 1.0).unwrap().with_n(2).is_err());
        // C(4,3) = 4 edges at most.
        assert!(ModelParams::new(2, 3, 2.0).unwrap().with_n(4).is_err());
    }

    #[test]
    fn edge_count_is_ceiling() {
        let p = ModelParams::new(2, 3, 0.4).unwrap().with_n(5).unwrap();
        assert_eq!(p.m(), Some(2));
        let p = ModelParams::new(2, 3, 0.41).unwrap().with_n(5).unwrap();
        assert_eq!(p.m(), Some(3));
        let p = ModelParams::new(2, 3, 0.0).unwrap().with_n(5).unwrap();
        assert_eq!(p.m(), Some(0));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial_f64(20, 3), 1140.0);
        assert_eq!(binomial_u128(300, 3), Some(4_455_100));
        assert_eq!(binomial_u128(3, 5), Some(0));
    }
}
