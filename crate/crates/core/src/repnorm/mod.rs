//! The regular representation on `ℓ²(G) ⊗ C^n` and norm estimates.
//!
//! `π(a)(δ_h ⊗ v) = δ_h ⊗ α_{h⁻¹}(a) v` and `λ_g(δ_h ⊗ v) = δ_{gh} ⊗ v`, so
//! `L_g X_g` maps `δ_h ⊗ v` to `δ_{gh} ⊗ α_{h⁻¹}(X_g) v`. Compressing to a
//! ball `B_R` never increases the norm, and the compressions increase to
//! `‖X‖` as `R` grows. Every estimate here is therefore a lower bound, except
//! the triangle bound `Σ ‖X_g‖`, which is the only certified upper bound.

mod compress;
mod solver;

pub use compress::CompressedOperator;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coeffalg::C64;
use crate::crossed::CpElement;
use crate::error::{Error, Result};
use crate::groups::SphereIndex;
use solver::{Op, TopPair};

/// Largest dimension accepted by [`norm_exact_small`].
pub const EXACT_LIMIT: usize = 2000;

/// Default slack added beyond the support length when no radius is given.
pub const DEFAULT_RADIUS_SLACK: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateKind {
    LowerBound,
    ExactSmall,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Power,
    #[default]
    Lanczos,
    Dense,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Power => "power",
            Method::Lanczos => "lanczos",
            Method::Dense => "dense",
        })
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "power" => Ok(Method::Power),
            "lanczos" => Ok(Method::Lanczos),
            "dense" => Ok(Method::Dense),
            _ => Err(Error::parse("method", 0, format!("unknown method `{s}` (power, lanczos, dense)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormOptions {
    /// Relative residual `‖A*Ay − θy‖/θ` at which iteration stops.
    pub tol: f64,
    /// Cap on `A*A` applications per radius.
    pub max_iter: usize,
    pub method: Method,
    /// Number of smaller radii recorded in the history.
    pub history: usize,
    /// Krylov dimension between Lanczos restarts.
    pub krylov: usize,
    /// Largest admissible `|B_R| · n`.
    pub budget: usize,
    /// Seed of the start vector.
    pub seed: u64,
}

impl Default for NormOptions {
    fn default() -> Self {
        NormOptions {
            tol: 1e-6,
            max_iter: 5000,
            method: Method::Lanczos,
            history: 2,
            krylov: 40,
            budget: crate::budget_from_env(),
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HistoryPoint {
    pub radius: usize,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub value: f64,
    pub kind: EstimateKind,
    pub radius: usize,
    pub method: Method,
    pub iterations: usize,
    pub residual: f64,
    /// `|B_R| · n`.
    pub dim: usize,
    /// `Σ ‖X_g‖`.
    pub triangle_bound: f64,
    /// Values at increasing radii, ending with `radius`.
    pub monotone_history: Vec<HistoryPoint>,
}

impl NormEstimate {
    fn zero(radius: usize, method: Method) -> Self {
        NormEstimate {
            value: 0.0,
            kind: EstimateKind::LowerBound,
            radius,
            method,
            iterations: 0,
            residual: 0.0,
            dim: 0,
            triangle_bound: 0.0,
            monotone_history: vec![HistoryPoint { radius, value: 0.0 }],
        }
    }

    /// Relative change over the last `steps` history entries.
    pub fn plateau_change(&self, steps: usize) -> Option<f64> {
        let h = &self.monotone_history;
        if h.len() <= steps {
            return None;
        }
        let last = h[h.len() - 1].value;
        let first = h[h.len() - 1 - steps].value;
        Some(if last == 0.0 { 0.0 } else { (last - first) / last })
    }
}

/// Support length plus [`DEFAULT_RADIUS_SLACK`].
pub fn default_radius(x: &CpElement) -> usize {
    x.max_length() + DEFAULT_RADIUS_SLACK
}

fn check_budget(index: &SphereIndex, radius: usize, n: usize, budget: usize) -> Result<()> {
    let dim = index.ball_len(radius) as u128 * n as u128;
    if dim > budget as u128 {
        return Err(Error::BudgetExceeded { estimate: dim, budget });
    }
    Ok(())
}

/// `P_R X P_R`.
pub fn compress(x: &CpElement, radius: usize, budget: usize) -> Result<CompressedOperator> {
    let index = SphereIndex::shared(x.group(), radius, budget)?;
    check_budget(&index, radius, x.dim(), budget)?;
    CompressedOperator::new(x, index, radius)
}

struct Restricted<'a> {
    op: &'a CompressedOperator,
    radius: usize,
    dim: usize,
}

impl Op for Restricted<'_> {
    fn dim(&self) -> usize {
        self.dim
    }
    fn apply(&self, x: &[C64], y: &mut [C64]) {
        self.op.apply_at(self.radius, x, y);
    }
    fn apply_adjoint(&self, x: &[C64], y: &mut [C64]) {
        self.op.apply_adjoint_at(self.radius, x, y);
    }
}

fn seeded_vector(dim: usize, seed: u64) -> Vec<C64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..dim)
        .map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect()
}

/// Certified lower bound for `‖X‖` from the compression to `B_radius`.
pub fn norm_lower(x: &CpElement, radius: usize, opts: &NormOptions) -> Result<NormEstimate> {
    if opts.method == Method::Dense {
        return norm_exact_small(x, radius);
    }
    let index = SphereIndex::shared(x.group(), radius, opts.budget)?;
    norm_lower_on(x, &index, radius, opts)
}

/// As [`norm_lower`], reusing an enumerated ball of radius at least `radius`.
pub fn norm_lower_on(
    x: &CpElement,
    index: &Arc<SphereIndex>,
    radius: usize,
    opts: &NormOptions,
) -> Result<NormEstimate> {
    if x.is_zero() {
        return Ok(NormEstimate::zero(radius, opts.method));
    }
    check_budget(index, radius, x.dim(), opts.budget)?;
    let op = CompressedOperator::new(x, index.clone(), radius)?;
    let first = radius.saturating_sub(opts.history);
    let mut start = seeded_vector(op.dim_at(first), opts.seed);
    let mut history = Vec::new();
    let mut iterations = 0;
    let mut residual = 0.0;
    let mut value = 0.0f64;
    for r in first..=radius {
        let dim = op.dim_at(r);
        start.resize(dim, C64::new(0.0, 0.0));
        let restricted = Restricted { op: &op, radius: r, dim };
        let pair: TopPair = match opts.method {
            Method::Power => solver::power(&restricted, start, opts.tol, opts.max_iter),
            _ => solver::lanczos(&restricted, start, opts.tol, opts.max_iter, opts.krylov),
        };
        iterations += pair.iterations;
        residual = pair.residual;
        // a compression to a smaller ball is a compression of this one
        value = value.max(pair.value);
        history.push(HistoryPoint { radius: r, value });
        // a pure warm start can stay in a symmetry sector that misses the top
        start = seeded_vector(op.dim_at((r + 1).min(radius)), opts.seed ^ (r as u64 + 1));
        if pair.value > 0.0 {
            let scale = 0.5 / start.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            for z in &mut start {
                *z *= scale;
            }
            for (z, w) in start.iter_mut().zip(&pair.vector) {
                *z += w;
            }
        }
    }
    let triangle = x.triangle_bound();
    if value > triangle * (1.0 + 1e-9) + 1e-12 {
        return Err(Error::TriangleBound { value, bound: triangle });
    }
    Ok(NormEstimate {
        value,
        kind: EstimateKind::LowerBound,
        radius,
        method: opts.method,
        iterations,
        residual,
        dim: op.dim(),
        triangle_bound: triangle,
        monotone_history: history,
    })
}

/// Norm of the compression to `B_radius` by a dense singular value decomposition.
pub fn norm_exact_small(x: &CpElement, radius: usize) -> Result<NormEstimate> {
    let ball: u128 = x.group().sphere_sizes(radius).iter().sum();
    let dim = usize::try_from(ball.saturating_mul(x.dim() as u128)).unwrap_or(usize::MAX);
    if dim > EXACT_LIMIT {
        return Err(Error::SizeExceeded { dim, limit: EXACT_LIMIT });
    }
    let index = SphereIndex::shared(x.group(), radius, EXACT_LIMIT)?;
    let triangle = x.triangle_bound();
    if x.is_zero() {
        let mut e = NormEstimate::zero(radius, Method::Dense);
        e.kind = EstimateKind::ExactSmall;
        return Ok(e);
    }
    let op = CompressedOperator::new(x, index, radius)?;
    let dense = op.to_dense();
    let mut history = Vec::new();
    let mut value = 0.0f64;
    for r in radius.saturating_sub(2)..=radius {
        let d = op.dim_at(r);
        let block = dense.view((0, 0), (d, d)).into_owned();
        let top = block.singular_values().iter().copied().fold(0.0, f64::max);
        value = value.max(top);
        history.push(HistoryPoint { radius: r, value });
    }
    Ok(NormEstimate {
        value,
        kind: EstimateKind::ExactSmall,
        radius,
        method: Method::Dense,
        iterations: 0,
        residual: 0.0,
        dim,
        triangle_bound: triangle,
        monotone_history: history,
    })
}

/// `max_Y ‖π((XY)*(XY))‖^{1/2} / ‖π(Y*Y)‖^{1/2}` over the candidates.
pub fn norm_lower_pi(x: &CpElement, candidates: &[CpElement]) -> Result<f64> {
    let mut best = 0.0f64;
    for y in candidates {
        let cy = y.column_norm()?;
        if cy == 0.0 {
            return Err(Error::OutOfRange {
                what: "candidate",
                detail: "zero element".into(),
            });
        }
        best = best.max(x.product(y)?.column_norm()? / cy);
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InteriorReport {
    pub radius: usize,
    pub interior_radius: usize,
    pub columns_checked: usize,
    pub max_deviation: f64,
}

/// Compares `compress(XY)` with `compress(X) · compress(Y)` on the columns
/// `δ_h ⊗ e_i` with `|h| <= R − k − l`.
pub fn interior_product_check(x: &CpElement, y: &CpElement, radius: usize) -> Result<InteriorReport> {
    let xy = x.product(y)?;
    interior_check_against(x, y, &xy, radius)
}

/// As [`interior_product_check`] with an externally supplied candidate product.
pub fn interior_check_against(
    x: &CpElement,
    y: &CpElement,
    xy: &CpElement,
    radius: usize,
) -> Result<InteriorReport> {
    let (k, l) = (x.max_length(), y.max_length());
    if radius < k + l + 1 {
        return Err(Error::RadiusTooSmall { radius, needed: k + l + 1 });
    }
    let index = SphereIndex::shared(x.group(), radius, crate::budget_from_env())?;
    let ax = CompressedOperator::new(x, index.clone(), radius)?;
    let ay = CompressedOperator::new(y, index.clone(), radius)?;
    let axy = CompressedOperator::new(xy, index, radius)?;
    let interior = radius - k - l;
    let cols = ax.dim_at(interior);
    let mut e = vec![C64::new(0.0, 0.0); ax.dim()];
    let mut dev = 0.0f64;
    for j in 0..cols {
        e[j] = C64::new(1.0, 0.0);
        let lhs = ax.apply(&ay.apply(&e));
        let rhs = axy.apply(&e);
        dev = lhs.iter().zip(&rhs).map(|(a, b)| (a - b).norm()).fold(dev, f64::max);
        e[j] = C64::new(0.0, 0.0);
    }
    Ok(InteriorReport {
        radius,
        interior_radius: interior,
        columns_checked: cols,
        max_deviation: dev,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffalg::testutil::random_op;
    use crate::coeffalg::CoeffOp;
    use crate::crossed::testutil::{ctx, random_element};
    use nalgebra::DMatrix;

    fn r(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn sum_c1(group: &str) -> CpElement {
        let c = ctx(group, "trivial:1");
        let g = c.group().clone();
        CpElement::group_ring(c, g.letters().into_iter().map(|l| (g.from_letters(&[l]).unwrap(), r(1.0)))).unwrap()
    }

    /// Top eigenvalue of the radial part of `Σ_{C_1} λ_g` on `B_R ⊂ F_2`.
    fn radial_oracle(radius: usize) -> f64 {
        let mut t = DMatrix::<f64>::zeros(radius + 1, radius + 1);
        for k in 0..radius {
            let b = if k == 0 { 2.0 } else { 3f64.sqrt() };
            t[(k, k + 1)] = b;
            t[(k + 1, k)] = b;
        }
        t.symmetric_eigenvalues().iter().copied().fold(f64::MIN, f64::max)
    }

    #[test]
    fn single_coefficient() {
        let c = ctx("free:2", "randunitary:3:2");
        let a = random_op(3, 4);
        let x = CpElement::monomial(c.clone(), c.group().identity(), a.clone()).unwrap();
        let est = norm_lower(&x, 3, &NormOptions::default()).unwrap();
        assert!((est.value - a.op_norm()).abs() < 1e-6 * a.op_norm());
        assert!(est.value <= a.op_norm() * (1.0 + 1e-12));
        let d = CpElement::monomial(c.clone(), c.group().identity(), CoeffOp::diag(&[r(2.0), r(1.0), r(0.5)])).unwrap();
        assert!((norm_exact_small(&d, 2).unwrap().value - 2.0).abs() < 1e-12);
        assert_eq!(norm_exact_small(&CpElement::zero(c), 2).unwrap().value, 0.0);
    }

    #[test]
    fn integer_shift_closed_form() {
        let c = ctx("zd:1", "trivial:1");
        let z = c.group().clone();
        let x = CpElement::group_ring(
            c,
            [(z.from_exponents(&[1]).unwrap(), r(1.0)), (z.from_exponents(&[-1]).unwrap(), r(1.0))],
        )
        .unwrap();
        let est = norm_lower(&x, 20, &NormOptions::default()).unwrap();
        let oracle = 2.0 * (std::f64::consts::PI / 42.0).cos();
        assert!(est.value >= oracle - 1e-6 && est.value <= 2.0, "{}", est.value);
        let hist: Vec<f64> = est.monotone_history.iter().map(|h| h.value).collect();
        assert!(hist.windows(2).all(|w| w[0] <= w[1]));
        for (h, rad) in est.monotone_history.iter().zip(18..=20) {
            let o = 2.0 * (std::f64::consts::PI / (2.0 * rad as f64 + 2.0)).cos();
            assert!((h.value - o).abs() < 1e-6);
        }
    }

    #[test]
    fn free_group_generators_match_radial_oracle() {
        let x = sum_c1("free:2");
        let est = norm_lower(&x, 10, &NormOptions::default()).unwrap();
        assert!(est.value <= 4.0);
        assert!((est.value - radial_oracle(10)).abs() < 1e-6, "{} vs {}", est.value, radial_oracle(10));
        assert!(est.value >= 0.95 * 2.0 * 3f64.sqrt());
        let power = NormOptions { method: Method::Power, ..NormOptions::default() };
        let p = norm_lower(&x, 6, &power).unwrap();
        assert!((p.value - radial_oracle(6)).abs() < 1e-4);
    }

    #[test]
    fn agrees_with_dense_oracle() {
        let opts = NormOptions { tol: 1e-9, ..NormOptions::default() };
        for (i, (g, a)) in [("free:2", "randperm:2:1"), ("zd:2", "randunitary:2:5"), ("fpc:2,3", "trivial:1")]
            .iter()
            .enumerate()
        {
            let c = ctx(g, a);
            for seed in 0..4 {
                let x = random_element(&c, 2, 4, 10 * i as u64 + seed);
                let lo = norm_lower(&x, 4, &opts).unwrap();
                let ex = norm_exact_small(&x, 4).unwrap();
                assert!((lo.value - ex.value).abs() < 1e-6 * ex.value.max(1.0), "{g}: {} {}", lo.value, ex.value);
                assert!(lo.value <= x.triangle_bound() + 1e-12);
            }
        }
    }

    #[test]
    fn c_star_identity_on_interior() {
        let c = ctx("free:2", "randperm:2:3");
        let x = random_element(&c, 1, 3, 2);
        let xx = x.adjoint().product(&x).unwrap();
        let opts = NormOptions { tol: 1e-10, ..NormOptions::default() };
        let n1 = norm_lower(&x, 9, &opts).unwrap().value;
        let n2 = norm_lower(&xx, 9, &opts).unwrap().value;
        // both approach ‖X‖² from below at slightly different rates
        assert!((n2 - n1 * n1).abs() < 2e-2 * n2, "{n2} vs {}", n1 * n1);
    }

    #[test]
    fn pi_lower_bound() {
        let c = ctx("free:2", "randunitary:2:9");
        let x = random_element(&c, 2, 5, 3);
        let unit = CpElement::unit(c.clone());
        assert!((norm_lower_pi(&x, &[unit.clone()]).unwrap() - x.column_norm().unwrap()).abs() < 1e-12);
        let cands: Vec<CpElement> = (0..10).map(|s| random_element(&c, 2, 4, 100 + s)).chain([unit, x.adjoint()]).collect();
        let pi = norm_lower_pi(&x, &cands).unwrap();
        let lo = norm_lower(&x, 8, &NormOptions::default()).unwrap();
        assert!(pi <= lo.value * (1.0 + 1e-6), "{pi} > {}", lo.value);
        assert!(norm_lower_pi(&x, &[CpElement::zero(c)]).is_err());
    }

    #[test]
    fn interior_check_and_negative_control() {
        let c = ctx("free:2", "randunitary:2:11");
        let x = random_element(&c, 2, 4, 1);
        let y = random_element(&c, 2, 4, 2);
        let rep = interior_product_check(&x, &y, 5).unwrap();
        assert!(rep.max_deviation < 1e-10);
        assert!(rep.columns_checked > 0);
        assert!(interior_product_check(&x, &y, 4).is_err());
        // twisting with α_g on the wrong factor
        let g = c.group().clone();
        let mut wrong = CpElement::zero(c.clone());
        for (a, xa) in x.terms() {
            for (b, yb) in y.terms() {
                let term = xa * &c.apply(&g.inverse(a), yb).unwrap();
                let m = CpElement::monomial(c.clone(), g.multiply(a, b).unwrap(), term).unwrap();
                wrong = wrong.try_add(&m).unwrap();
            }
        }
        let bad = interior_check_against(&x, &y, &wrong, 5).unwrap();
        assert!(bad.max_deviation > 1e-3);
    }

    #[test]
    fn budget_is_enforced() {
        let x = sum_c1("free:3");
        let opts = NormOptions { budget: 1000, ..NormOptions::default() };
        assert!(matches!(norm_lower(&x, 8, &opts), Err(Error::BudgetExceeded { .. })));
        assert!(matches!(norm_exact_small(&x, 6), Err(Error::SizeExceeded { .. })));
    }
}
