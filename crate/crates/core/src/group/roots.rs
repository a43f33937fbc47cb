//! Positive roots of type B_n and their Chevalley generators inside the
//! matrix realization preserving the antidiagonal form.

use std::fmt;

use crate::linalg::{Matrix, Rational, Scalar};

/// A positive root, with indices `0 ≤ i < j < n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Root {
    /// `e_i − e_j` (long).
    Difference(usize, usize),
    /// `e_i + e_j` (long).
    Sum(usize, usize),
    /// `e_i` (short).
    Short(usize),
}

impl Root {
    /// Coefficients in the basis `e_1, …, e_n`.
    pub fn vector(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        match *self {
            Root::Difference(i, j) => {
                v[i] = 1;
                v[j] = -1;
            }
            Root::Sum(i, j) => {
                v[i] = 1;
                v[j] = 1;
            }
            Root::Short(i) => v[i] = 1,
        }
        v
    }

    /// Number of simple roots in the expansion.
    pub fn height(&self, n: usize) -> usize {
        match *self {
            Root::Difference(i, j) => j - i,
            Root::Sum(i, j) => 2 * n - i - j,
            Root::Short(i) => n - i,
        }
    }

    pub fn is_short(&self) -> bool {
        matches!(self, Root::Short(_))
    }

    /// Matrix position whose entry of `exp(t·X_α)` equals `t`.
    pub fn primary_position(&self, n: usize) -> (usize, usize) {
        let dim = 2 * n + 1;
        match *self {
            Root::Difference(i, j) => (i, j),
            Root::Sum(i, j) => (i, dim - 1 - j),
            Root::Short(i) => (i, n),
        }
    }

    /// The two matrix units making up `X_α = E_p − E_q` as `(p, q)`.
    pub(crate) fn generator_positions(&self, n: usize) -> ((usize, usize), (usize, usize)) {
        let dim = 2 * n + 1;
        let dual = |k: usize| dim - 1 - k;
        match *self {
            Root::Difference(i, j) => ((i, j), (dual(j), dual(i))),
            Root::Sum(i, j) => ((i, dual(j)), (j, dual(i))),
            Root::Short(i) => ((i, n), (n, dual(i))),
        }
    }

    /// Nilpotent generator `X_α` with `X^T J + J X = 0`.
    pub fn generator<T: Scalar>(&self, n: usize) -> Matrix<T> {
        let dim = 2 * n + 1;
        let (p, q) = self.generator_positions(n);
        let mut x = Matrix::zeros(dim, dim);
        x[p] = T::one();
        x[q] = -T::one();
        x
    }

    /// `⟨λ, α⟩` for a weight given in `e_i` coordinates.
    pub fn pair<V>(&self, weight: &[V]) -> V
    where
        V: Copy + std::ops::Add<Output = V> + std::ops::Sub<Output = V>,
    {
        match *self {
            Root::Difference(i, j) => weight[i] - weight[j],
            Root::Sum(i, j) => weight[i] + weight[j],
            Root::Short(i) => weight[i],
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Root::Difference(i, j) => write!(f, "e{}-e{}", i + 1, j + 1),
            Root::Sum(i, j) => write!(f, "e{}+e{}", i + 1, j + 1),
            Root::Short(i) => write!(f, "e{}", i + 1),
        }
    }
}

/// Positive roots in the fixed product order, simple roots and `ρ`.
///
/// Order: `e_i − e_j` lexicographically, then `e_i + e_j` lexicographically,
/// then the short roots `e_1, …, e_n`. The short simple root `e_n` is last.
#[derive(Clone, Debug)]
pub struct RootDatum {
    n: usize,
    positive: Vec<Root>,
    simple: Vec<Root>,
    rho: Vec<Rational>,
}

impl RootDatum {
    pub fn new(n: usize) -> Self {
        let mut positive = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in (i + 1)..n {
                positive.push(Root::Difference(i, j));
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                positive.push(Root::Sum(i, j));
            }
        }
        positive.extend((0..n).map(Root::Short));

        let mut simple: Vec<Root> = (0..n.saturating_sub(1))
            .map(|i| Root::Difference(i, i + 1))
            .collect();
        simple.push(Root::Short(n - 1));

        let mut twice_rho = vec![0i64; n];
        for r in &positive {
            for (acc, c) in twice_rho.iter_mut().zip(r.vector(n)) {
                *acc += c;
            }
        }
        let rho = twice_rho
            .iter()
            .map(|&v| Rational::from_ratio(v, 2))
            .collect();
        Self {
            n,
            positive,
            simple,
            rho,
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn simple_roots(&self) -> &[Root] {
        &self.simple
    }

    /// Half the sum of the positive roots, exactly.
    pub fn rho(&self) -> &[Rational] {
        &self.rho
    }

    pub fn rho_f64(&self) -> Vec<f64> {
        self.rho.iter().map(Scalar::to_f64).collect()
    }

    pub fn index_of(&self, root: &Root) -> Option<usize> {
        self.positive.iter().position(|r| r == root)
    }

    pub fn max_height(&self) -> usize {
        self.positive
            .iter()
            .map(|r| r.height(self.n))
            .max()
            .unwrap_or(0)
    }
}
