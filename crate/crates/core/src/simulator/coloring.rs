use crate::error::{Error, Result};
use rand::seq::SliceRandom;
use rand::Rng;

/// A map from vertices `0..n` to colors `0..q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    q: usize,
    colors: Vec<u32>,
    class_sizes: Vec<usize>,
}

impl Coloring {
    pub fn new(colors: Vec<u32>, q: usize) -> Result<Self> {
        if q == 0 {
            return Err(Error::param("q must be positive"));
        }
        let mut class_sizes = vec![0; q];
        for (v, &c) in colors.iter().enumerate() {
            if c as usize >= q {
                return Err(Error::param(format!("vertex {v} has color {c}, outside 0..{q}")));
            }
            class_sizes[c as usize] += 1;
        }
        Ok(Coloring { q, colors, class_sizes })
    }

    pub fn from_one_based(colors: &[u32], q: usize) -> Result<Self> {
        let colors = colors
            .iter()
            .map(|&c| c.checked_sub(1).ok_or_else(|| Error::param("colors are 1-based")))
            .collect::<Result<_>>()?;
        Self::new(colors, q)
    }

    /// Vertex `v` gets color `v mod q`.
    pub fn round_robin(n: usize, q: usize) -> Result<Self> {
        Self::new((0..n).map(|v| (v % q) as u32).collect(), q)
    }

    /// Class sizes differ by at most one; the assignment is a uniform
    /// shuffle of [`Coloring::round_robin`].
    pub fn random_balanced<R: Rng + ?Sized>(n: usize, q: usize, rng: &mut R) -> Result<Self> {
        let mut colors: Vec<u32> = (0..n).map(|v| (v % q.max(1)) as u32).collect();
        colors.shuffle(rng);
        Self::new(colors, q)
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    pub fn class_size(&self, j: usize) -> usize {
        self.class_sizes[j]
    }

    /// Every class size within `√n` of `n/q`.
    pub fn is_balanced(&self) -> bool {
        let n = self.n() as f64;
        let target = n / self.q as f64;
        let slack = n.sqrt();
        self.class_sizes.iter().all(|&s| (s as f64 - target).abs() <= slack)
    }

    pub fn to_one_based(&self) -> Vec<u32> {
        self.colors.iter().map(|c| c + 1).collect()
    }
}
