//! Nested rules on boxes: Clenshaw–Curtis, and the trapezoid rule for
//! integrands that vanish with all derivatives on the faces.
//!
//! Level `L` uses `2^L + 1` nodes per axis and contains the level `L − 1`
//! nodes at even indices, so one set of integrand values gives both a fine
//! and a coarse estimate; their difference is the reported error.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("tolerance {tol:e} not reached: error estimate {err:e} at level {level}")]
    ToleranceNotReached { tol: f64, err: f64, level: u32 },
    #[error("box bounds must satisfy lo < hi on every axis")]
    BadBox,
}

/// Nodes on `[−1, 1]` (descending) and weights of the level-`L` rule.
pub fn clenshaw_curtis(level: u32) -> (Vec<f64>, Vec<f64>) {
    if level == 0 {
        return (vec![0.0], vec![2.0]);
    }
    let n = 1usize << level;
    let nodes: Vec<f64> = (0..=n).map(|k| (PI * k as f64 / n as f64).cos()).collect();
    let weights = (0..=n)
        .map(|k| {
            let c = if k == 0 || k == n { 1.0 } else { 2.0 };
            let mut s = 0.0;
            for j in 1..=n / 2 {
                let b = if 2 * j == n { 1.0 } else { 2.0 };
                s +=
                    b / (4.0 * (j * j) as f64 - 1.0) * (2.0 * PI * (j * k) as f64 / n as f64).cos();
            }
            c / n as f64 * (1.0 - s)
        })
        .collect();
    (nodes, weights)
}

/// Nodes on `[−1, 1]` (descending) and weights of the level-`L` trapezoid
/// rule.
pub fn trapezoid(level: u32) -> (Vec<f64>, Vec<f64>) {
    if level == 0 {
        return (vec![0.0], vec![2.0]);
    }
    let n = 1usize << level;
    let h = 2.0 / n as f64;
    let nodes = (0..=n).map(|k| 1.0 - h * k as f64).collect();
    let weights = (0..=n)
        .map(|k| if k == 0 || k == n { 0.5 * h } else { h })
        .collect();
    (nodes, weights)
}

/// Which nested one-dimensional rule a tensor rule is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RuleFamily {
    #[default]
    ClenshawCurtis,
    Trapezoid,
}

impl RuleFamily {
    pub fn rule(self, level: u32) -> (Vec<f64>, Vec<f64>) {
        match self {
            RuleFamily::ClenshawCurtis => clenshaw_curtis(level),
            RuleFamily::Trapezoid => trapezoid(level),
        }
    }
}

/// Axis-aligned box `∏ [lo_i, hi_i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadBox {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl QuadBox {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self, QuadError> {
        if lo.len() != hi.len()
            || lo
                .iter()
                .zip(&hi)
                .any(|(a, b)| a.partial_cmp(b) != Some(std::cmp::Ordering::Less))
        {
            return Err(QuadError::BadBox);
        }
        Ok(Self { lo, hi })
    }

    /// `center ± radius` on each axis.
    pub fn centered(center: &[f64], radius: &[f64]) -> Result<Self, QuadError> {
        Self::new(
            center.iter().zip(radius).map(|(c, r)| c - r).collect(),
            center.iter().zip(radius).map(|(c, r)| c + r).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn volume(&self) -> f64 {
        self.lo.iter().zip(&self.hi).map(|(a, b)| b - a).product()
    }

    pub fn center(&self) -> Vec<f64> {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(a, b)| 0.5 * (a + b))
            .collect()
    }

    /// Scales each half-width by `factor` about the centre.
    pub fn expanded(&self, factor: f64) -> Self {
        let c = self.center();
        let lo = c
            .iter()
            .zip(&self.lo)
            .map(|(c, a)| c - factor * (c - a))
            .collect();
        let hi = c
            .iter()
            .zip(&self.hi)
            .map(|(c, b)| c + factor * (b - c))
            .collect();
        Self { lo, hi }
    }

    /// Smallest box containing all `points`, with degenerate axes widened
    /// by `min_half_width`.
    pub fn bounding(points: &[Vec<f64>], min_half_width: f64) -> Option<Self> {
        let first = points.first()?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for p in points {
            for (i, v) in p.iter().enumerate() {
                lo[i] = lo[i].min(*v);
                hi[i] = hi[i].max(*v);
            }
        }
        for i in 0..lo.len() {
            if hi[i] - lo[i] < 2.0 * min_half_width {
                let c = 0.5 * (lo[i] + hi[i]);
                lo[i] = c - min_half_width;
                hi[i] = c + min_half_width;
            }
        }
        Some(Self { lo, hi })
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        p.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(v, (a, b))| *a <= *v && *v <= *b)
    }
}

/// One node of a tensor rule.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorNode {
    pub point: Vec<f64>,
    pub weight: f64,
    /// Weight in the level `L − 1` rule when the node belongs to it.
    pub coarse_weight: Option<f64>,
    /// Whether the node lies on a face of the box.
    pub on_boundary: bool,
}

/// Tensor product of a nested rule on a box. Nodes are generated from their
/// flat index on demand.
#[derive(Clone, Debug)]
pub struct TensorRule {
    level: u32,
    points: Vec<Vec<f64>>,
    weights: Vec<Vec<f64>>,
    coarse: Vec<Vec<f64>>,
    per_axis: usize,
    len: usize,
}

impl TensorRule {
    pub fn new(bx: &QuadBox, level: u32) -> Self {
        Self::with_family(bx, level, RuleFamily::ClenshawCurtis)
    }

    pub fn with_family(bx: &QuadBox, level: u32, family: RuleFamily) -> Self {
        let level = level.max(1);
        let (x, w) = family.rule(level);
        let (_, wc) = family.rule(level - 1);
        let m = x.len();
        let d = bx.dim();
        let mut points = Vec::with_capacity(d);
        let mut weights = Vec::with_capacity(d);
        let mut coarse = Vec::with_capacity(d);
        for axis in 0..d {
            let half = 0.5 * (bx.hi[axis] - bx.lo[axis]);
            let mid = 0.5 * (bx.hi[axis] + bx.lo[axis]);
            points.push(x.iter().map(|t| mid + half * t).collect());
            weights.push(w.iter().map(|v| half * v).collect());
            coarse.push(wc.iter().map(|v| half * v).collect());
        }
        Self {
            level,
            points,
            weights,
            coarse,
            per_axis: m,
            len: m.pow(d as u32),
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.points.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// The node with flat index `i` (first axis varies fastest).
    pub fn node(&self, mut i: usize) -> TensorNode {
        let d = self.dim();
        let mut point = Vec::with_capacity(d);
        let mut weight = 1.0;
        let mut coarse = Some(1.0);
        let mut on_boundary = false;
        for axis in 0..d {
            let k = i % self.per_axis;
            i /= self.per_axis;
            point.push(self.points[axis][k]);
            weight *= self.weights[axis][k];
            coarse = match coarse {
                Some(c) if k.is_multiple_of(2) => Some(c * self.coarse[axis][k / 2]),
                _ => None,
            };
            on_boundary |= k == 0 || k == self.per_axis - 1;
        }
        TensorNode {
            point,
            weight,
            coarse_weight: coarse,
            on_boundary,
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = TensorNode> + '_ {
        (0..self.len).map(|i| self.node(i))
    }

    /// Integrates with integrand values evaluated in parallel and summed in
    /// node order, so the result does not depend on the thread count.
    pub fn integrate<F>(&self, f: F) -> QuadResult
    where
        F: Fn(&[f64]) -> Complex64 + Sync,
    {
        let values: Vec<Complex64> = (0..self.len)
            .into_par_iter()
            .map(|i| f(&self.node(i).point))
            .collect();
        self.integrate_values(&values)
    }

    /// Combines precomputed integrand values (one per node, in node order).
    pub fn integrate_values(&self, values: &[Complex64]) -> QuadResult {
        let mut fine = Complex64::new(0.0, 0.0);
        let mut coarse = Complex64::new(0.0, 0.0);
        let mut boundary_max: f64 = 0.0;
        for (i, v) in values.iter().enumerate() {
            let node = self.node(i);
            fine += v * node.weight;
            if let Some(wc) = node.coarse_weight {
                coarse += v * wc;
            }
            if node.on_boundary {
                boundary_max = boundary_max.max(v.norm());
            }
        }
        QuadResult {
            value: fine,
            abs_err: (fine - coarse).norm(),
            nodes: self.len,
            boundary_max,
        }
    }
}

/// Gauss rule with `k` nodes for `∫_{−1}^{1} w(t) g(t) dt`.
///
/// The recurrence of the polynomials orthogonal for `w` comes from the
/// Stieltjes procedure on an `m`-point trapezoid discretization of `w`,
/// which is spectrally accurate when `w` vanishes with all derivatives at
/// ±1; nodes and weights then come from the Jacobi matrix (Golub–Welsch).
/// Nodes are returned in ascending order.
pub fn gauss_for_weight<W: Fn(f64) -> f64>(weight: W, k: usize, m: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(
        k >= 1 && m > 2 * k,
        "need more discretization points than nodes"
    );
    let h = 2.0 / m as f64;
    let t: Vec<f64> = (1..m).map(|j| -1.0 + h * j as f64).collect();
    let w: Vec<f64> = t.iter().map(|x| h * weight(*x)).collect();
    let mass: f64 = w.iter().sum();
    let mut alpha = Vec::with_capacity(k);
    let mut beta = Vec::with_capacity(k);
    // Orthonormal Lanczos form: p_prev, p_cur with Σ w p_cur² = 1.
    let mut prev = vec![0.0; t.len()];
    let mut cur = vec![1.0 / mass.sqrt(); t.len()];
    let mut b_prev = 0.0;
    for _ in 0..k {
        let a: f64 = t
            .iter()
            .zip(&w)
            .zip(&cur)
            .map(|((x, wi), p)| wi * x * p * p)
            .sum();
        alpha.push(a);
        let mut next: Vec<f64> = (0..t.len())
            .map(|j| (t[j] - a) * cur[j] - b_prev * prev[j])
            .collect();
        let b = next
            .iter()
            .zip(&w)
            .map(|(p, wi)| wi * p * p)
            .sum::<f64>()
            .sqrt();
        next.iter_mut().for_each(|p| *p /= b);
        beta.push(b);
        prev = std::mem::replace(&mut cur, next);
        b_prev = b;
    }
    let jacobi = nalgebra::DMatrix::from_fn(k, k, |i, j| {
        if i == j {
            alpha[i]
        } else if i + 1 == j {
            beta[i]
        } else if j + 1 == i {
            beta[j]
        } else {
            0.0
        }
    });
    let eig = nalgebra::SymmetricEigen::new(jacobi);
    let mut pairs: Vec<(f64, f64)> = (0..k)
        .map(|i| (eig.eigenvalues[i], mass * eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// Tensor product of arbitrary one-dimensional rules, evaluated in parallel
/// and summed in node order.
#[derive(Clone, Debug)]
pub struct ProductRule {
    points: Vec<Vec<f64>>,
    weights: Vec<Vec<f64>>,
    len: usize,
}

impl ProductRule {
    pub fn new(axes: Vec<(Vec<f64>, Vec<f64>)>) -> Self {
        let len = axes.iter().map(|(p, _)| p.len()).product();
        let (points, weights) = axes.into_iter().unzip();
        Self {
            points,
            weights,
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn dim(&self) -> usize {
        self.points.len()
    }

    /// Point and weight of the node with flat index `i` (first axis
    /// fastest).
    pub fn node(&self, mut i: usize) -> (Vec<f64>, f64) {
        let mut point = Vec::with_capacity(self.dim());
        let mut weight = 1.0;
        for (p, w) in self.points.iter().zip(&self.weights) {
            let k = i % p.len();
            i /= p.len();
            point.push(p[k]);
            weight *= w[k];
        }
        (point, weight)
    }

    pub fn integrate<F>(&self, f: F) -> Complex64
    where
        F: Fn(&[f64]) -> Complex64 + Sync,
    {
        let values: Vec<Complex64> = (0..self.len)
            .into_par_iter()
            .map(|i| {
                let (p, w) = self.node(i);
                f(&p) * w
            })
            .collect();
        values.iter().sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub abs_err: f64,
    pub nodes: usize,
    /// Largest integrand modulus on the faces of the box.
    pub boundary_max: f64,
}

/// One-dimensional integral over `[a, b]`, refining the level until the
/// nested difference is at most `tol`.
pub fn integrate_1d<F>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_level: u32,
) -> Result<QuadResult, QuadError>
where
    F: Fn(f64) -> Complex64,
{
    if a.partial_cmp(&b) != Some(std::cmp::Ordering::Less) {
        return Err(QuadError::BadBox);
    }
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut last = None;
    for level in 3..=max_level {
        let (x, w) = clenshaw_curtis(level);
        let (_, wc) = clenshaw_curtis(level - 1);
        let mut fine = Complex64::new(0.0, 0.0);
        let mut coarse = Complex64::new(0.0, 0.0);
        for (k, (xk, wk)) in x.iter().zip(&w).enumerate() {
            let v = f(mid + half * xk);
            fine += v * (half * wk);
            if k % 2 == 0 {
                coarse += v * (half * wc[k / 2]);
            }
        }
        let res = QuadResult {
            value: fine,
            abs_err: (fine - coarse).norm(),
            nodes: x.len(),
            boundary_max: 0.0,
        };
        if res.abs_err <= tol {
            return Ok(res);
        }
        last = Some(res);
    }
    let last = last.expect("at least one level");
    Err(QuadError::ToleranceNotReached {
        tol,
        err: last.abs_err,
        level: max_level,
    })
}
