use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::HashMap;

/// Largest `n` accepted by the exact profile sums.
pub const MAX_EXACT_N: usize = 30;

/// `C(n, r)` exactly.
pub fn binomial_big(n: &BigUint, r: u64) -> BigUint {
    if BigUint::from(r) > *n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..r {
        acc *= n - BigUint::from(i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

fn factorials(n: usize) -> Vec<BigUint> {
    let mut f = vec![BigUint::one()];
    for i in 1..=n {
        let next = &f[i - 1] * BigUint::from(i);
        f.push(next);
    }
    f
}

/// Calls `f` on every composition of `n` into `q` ordered parts.
fn compositions(n: usize, q: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(left: usize, parts: &mut Vec<usize>, q: usize, f: &mut impl FnMut(&[usize])) {
        if parts.len() == q - 1 {
            parts.push(left);
            f(parts);
            parts.pop();
            return;
        }
        for x in 0..=left {
            parts.push(x);
            rec(left - x, parts, q, f);
            parts.pop();
        }
    }
    rec(n, &mut Vec::with_capacity(q), q, f);
}

fn profile_sum(n: usize, k: usize, m: u64, q: usize, keep: impl Fn(&[usize]) -> bool) -> Result<BigRational> {
    if q == 0 || k == 0 {
        return Err(Error::param("q and k must be positive"));
    }
    if n > MAX_EXACT_N {
        return Err(Error::param(format!("exact profile sums support n <= {MAX_EXACT_N}, got {n}")));
    }
    let total = binomial_big(&BigUint::from(n), k as u64);
    if BigUint::from(m) > total {
        return Err(Error::param(format!("m = {m} exceeds C({n},{k}) = {total}")));
    }
    let fact = factorials(n);
    let mut cache: HashMap<BigUint, BigUint> = HashMap::new();
    let mut numer = BigUint::zero();
    compositions(n, q, &mut |parts: &[usize]| {
        if !keep(parts) {
            return;
        }
        let mono: BigUint = parts.iter().map(|&s| binomial_big(&BigUint::from(s), k as u64)).sum();
        let good = &total - mono;
        let ways = cache.entry(good.clone()).or_insert_with(|| binomial_big(&good, m)).clone();
        if ways.is_zero() {
            return;
        }
        let mut multinomial = fact[n].clone();
        for &s in parts {
            multinomial /= &fact[s];
        }
        numer += multinomial * ways;
    });
    let denom = binomial_big(&total, m);
    Ok(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
}

/// `E[Z_q]` over uniform hypergraphs with `m` edges:
/// `Σ_{σ ∈ [q]^n} C(C(n,k) - Σ_i C(n_i,k), m) / C(C(n,k), m)`, grouped by
/// class sizes and computed exactly.
pub fn exact_expected_colorings(n: usize, k: usize, m: u64, q: usize) -> Result<BigRational> {
    profile_sum(n, k, m, q, |_| true)
}

/// As [`exact_expected_colorings`] restricted to balanced maps
/// (`|n_i - n/q| ≤ √n`).
pub fn exact_expected_balanced(n: usize, k: usize, m: u64, q: usize) -> Result<BigRational> {
    let target = n as f64 / q as f64;
    let slack = (n as f64).sqrt();
    profile_sum(n, k, m, q, |parts| parts.iter().all(|&s| (s as f64 - target).abs() <= slack))
}

pub fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
