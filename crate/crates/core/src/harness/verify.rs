//! Verifiers for the proven inequalities.

use std::sync::Arc;

use rand::Rng;

use super::sample::{stream, TrialSpec};
use super::{
    jgroup_constant, polygrowth_constant, verdict, zprop_constant, Constants, HarnessOptions, InequalityId,
    InequalityReport, LhsSource, FREE_GROUP_M,
};
use crate::crossed::{CpElement, MultiplierSymbol};
use crate::error::{Error, Result};
use crate::groups::{growth_fit, GroupKind, SphereIndex};
use crate::repnorm::{norm_lower_on, norm_lower_pi, NormEstimate};

/// Radius of the ball used to fit `|C_k| <= C (1+k)^s`.
pub(super) const GROWTH_FIT_RADIUS: usize = 12;

pub(super) fn shared_index(spec: &TrialSpec, radius: usize, opts: &HarnessOptions) -> Result<Arc<SphereIndex>> {
    SphereIndex::shared(spec.group(), radius, opts.norm.budget)
}

pub(super) fn blank(id: InequalityId, spec: &TrialSpec, trial: usize, k: usize) -> InequalityReport {
    InequalityReport {
        inequality_id: id,
        probe: id.is_probe(),
        group: spec.group().spec(),
        action: spec.action.spec().to_string(),
        n: spec.dim(),
        seed: spec.seed,
        trial,
        k,
        l: None,
        m: None,
        support_size: 0,
        lhs: 0.0,
        lhs_source: LhsSource::Zero,
        rhs: 0.0,
        constants: Constants::default(),
        verdict: super::Verdict::Consistent,
        margin: 0.0,
        estimate: None,
        operator_lower: None,
        diagnostic: None,
        note: None,
    }
}

pub(super) fn finish(mut r: InequalityReport, lhs: f64, rhs: f64) -> InequalityReport {
    r.lhs = lhs;
    r.rhs = rhs;
    r.verdict = verdict(lhs, rhs);
    r.margin = rhs - lhs;
    r
}

/// `max(compression bound, π bound)` for `‖X‖`.
pub(super) fn operator_lhs(
    x: &CpElement,
    index: &Arc<SphereIndex>,
    opts: &HarnessOptions,
    extra: &[CpElement],
) -> Result<(f64, NormEstimate)> {
    let radius = opts.radius_for(x.max_length());
    let est = norm_lower_on(x, index, radius, &opts.norm)?;
    let mut candidates = vec![CpElement::unit(x.context().clone()), x.adjoint()];
    candidates.extend(extra.iter().filter(|y| !y.is_zero()).cloned());
    let pi = norm_lower_pi(x, &candidates)?;
    Ok((est.value.max(pi), est))
}

fn random_candidates<R: Rng>(
    spec: &TrialSpec,
    index: &SphereIndex,
    k: usize,
    count: usize,
    rng: &mut R,
) -> Result<Vec<CpElement>> {
    (0..count).map(|_| spec.sample(index, k, rng)).collect()
}

/// Runs `body(trial, x, rng)` on each sampled `X`.
pub(super) fn single_element_trials<F>(
    id: InequalityId,
    spec: &TrialSpec,
    k: usize,
    index: &Arc<SphereIndex>,
    opts: &HarnessOptions,
    mut body: F,
) -> Result<Vec<InequalityReport>>
where
    F: FnMut(InequalityReport, &CpElement, Vec<CpElement>) -> Result<Vec<InequalityReport>>,
{
    let mut out = Vec::with_capacity(spec.trials);
    for t in 0..spec.trials {
        let mut rng = stream(spec.seed, id.as_str(), t as u64);
        let x = spec.sample(index, k, &mut rng)?;
        let extra = random_candidates(spec, index, k, opts.pi_candidates, &mut rng)?;
        let mut r = blank(id, spec, t, k);
        r.support_size = x.support_len();
        if x.is_zero() {
            out.push(finish(r, 0.0, 0.0));
            continue;
        }
        out.extend(body(r, &x, extra)?);
    }
    Ok(out)
}

fn sphere_bound_trials(
    id: InequalityId,
    spec: &TrialSpec,
    k: usize,
    n_bound: f64,
    opts: &HarnessOptions,
) -> Result<Vec<InequalityReport>> {
    let index = shared_index(spec, opts.radius_for(k), opts)?;
    single_element_trials(id, spec, k, &index, opts, |mut r, x, extra| {
        if x.max_length() != k || x.support().any(|g| g.len() != k) {
            return Err(Error::OutOfRange {
                what: "support",
                detail: format!("must lie in the sphere C_{k}; use a sphere sampler"),
            });
        }
        let (lhs, est) = operator_lhs(x, &index, opts, &extra)?;
        let rhs = n_bound * (1.0 + k as f64) * x.l2_norm();
        r.lhs_source = LhsSource::OperatorLower;
        r.estimate = Some(est);
        r.constants.n_bound = Some(n_bound);
        Ok(vec![finish(r, lhs, rhs)])
    })
}

/// `‖X‖ <= N (1+k) (Σ ‖X_g‖²)^{1/2}` for `X` supported on `C_k`.
pub fn verify_prop61(spec: &TrialSpec, k: usize, n_bound: f64, opts: &HarnessOptions) -> Result<Vec<InequalityReport>> {
    sphere_bound_trials(InequalityId::Prop61, spec, k, n_bound, opts)
}

/// The free-group case of [`verify_prop61`], with `N = 1`.
pub fn verify_cor62_free(spec: &TrialSpec, k: usize, opts: &HarnessOptions) -> Result<Vec<InequalityReport>> {
    require_free(spec)?;
    sphere_bound_trials(InequalityId::Cor62Free, spec, k, 1.0, opts)
}

fn require_free(spec: &TrialSpec) -> Result<()> {
    if spec.group().is_free() {
        Ok(())
    } else {
        Err(Error::InvalidGroup(format!("{} is not a free group", spec.group().spec())))
    }
}

fn weighted_trials(
    id: InequalityId,
    spec: &TrialSpec,
    k: usize,
    big_m: f64,
    opts: &HarnessOptions,
) -> Result<Vec<InequalityReport>> {
    let index = shared_index(spec, opts.radius_for(k), opts)?;
    single_element_trials(id, spec, k, &index, opts, |mut r, x, extra| {
        let (lhs, est) = operator_lhs(x, &index, opts, &extra)?;
        let rhs = big_m * x.rd_rhs_scalar(2.0);
        r.lhs_source = LhsSource::OperatorLower;
        r.estimate = Some(est);
        r.constants.big_m = Some(big_m);
        r.constants.s = Some(2.0);
        Ok(vec![finish(r, lhs, rhs)])
    })
}

/// `‖X‖ <= M (Σ (1+|g|)^4 ‖X_g‖²)^{1/2}`.
///
/// With `big_m = None` the constant is `N (π/√6) √2` for the given `N`.
pub fn verify_thm64(
    spec: &TrialSpec,
    k: usize,
    big_m: Option<f64>,
    n_bound: f64,
    opts: &HarnessOptions,
) -> Result<Vec<InequalityReport>> {
    let m = big_m.unwrap_or_else(|| jgroup_constant(n_bound));
    let mut reports = weighted_trials(InequalityId::Thm64, spec, k, m, opts)?;
    for r in &mut reports {
        r.constants.n_bound = Some(n_bound);
    }
    Ok(reports)
}

/// The free-group case of [`verify_thm64`], with `M = 2`.
pub fn verify_cor65_free(spec: &TrialSpec, k: usize, opts: &HarnessOptions) -> Result<Vec<InequalityReport>> {
    require_free(spec)?;
    weighted_trials(InequalityId::Cor65Free, spec, k, FREE_GROUP_M, opts)
}

/// Growth fit `(C, s)` of a free abelian group.
pub(super) fn fit_growth(spec: &TrialSpec, opts: &HarnessOptions) -> Result<(f64, f64)> {
    if !matches!(spec.group().kind(), GroupKind::FreeAbelian { .. }) {
        return Err(Error::NotPolynomial(format!(
            "{} does not have polynomial growth",
            spec.group().spec()
        )));
    }
    let index = shared_index(spec, GROWTH_FIT_RADIUS, opts)?;
    let fit = growth_fit(&index, 1e9)?;
    if !fit.polynomial {
        return Err(Error::NotPolynomial(format!("no polynomial fit on B_{GROWTH_FIT_RADIUS}")));
    }
    Ok((fit.c, f64::from(fit.s)))
}

/// Operator rapid-decay constants implied by growth `(C, s)`:
/// `‖X‖ <= C_RD ‖Σ (1+|g|)^{2 s_RD} (α_g(X_g X_g*) + X_g* X_g)‖^{1/2}`
/// with `C_RD = π √(2C)/√6` and `s_RD = (s+2)/2`.
pub fn operator_rd_constants(c: f64, s: f64) -> (f64, f64) {
    (polygrowth_constant(c), (s + 2.0) / 2.0)
}

/// `‖X‖ <= M ‖Σ (1+|g|)^{s+2} X_g* X_g‖^{1/2}` and the same with
/// `α_g(X_g X_g*)`, for groups with `|C_k| <= C (1+k)^s`.
pub fn verify_polygrowth(spec: &TrialSpec, k: usize, opts: &HarnessOptions) -> Result<Vec<InequalityReport>> {
    let (c, s) = fit_growth(spec, opts)?;
    let big_m = polygrowth_constant(c);
    let index = shared_index(spec, opts.radius_for(k), opts)?;
    single_element_trials(InequalityId::Thm5PolygrowthOp, spec, k, &index, opts, |mut r, x, extra| {
        let (lhs, est) = operator_lhs(x, &index, opts, &extra)?;
        r.lhs_source = LhsSource::OperatorLower;
        r.estimate = Some(est);
        r.constants = Constants {
            big_m: Some(big_m),
            c: Some(c),
            s: Some(s),
            ..Constants::default()
        };
        let mut row = r.clone();
        row.inequality_id = InequalityId::Thm5PolygrowthRow;
        let col_rhs = big_m * x.weighted_column_norm(s + 2.0)?;
        let row_rhs = big_m * x.weighted_row_norm(s + 2.0)?;
        Ok(vec![finish(r, lhs, col_rhs), finish(row, lhs, row_rhs)])
    })
}

/// `‖Σ x_n λ^n‖ <= (π²/3 − 1)^{1/2} (Σ (1+|n|)² ‖x_n‖²)^{1/2}` on `Z`.
pub fn verify_zprop(spec: &TrialSpec, k: usize, opts: &HarnessOptions) -> Result<Vec<InequalityReport>> {
    if !matches!(spec.group().kind(), GroupKind::FreeAbelian { rank: 1 }) {
        return Err(Error::InvalidGroup(format!("{} is not Z", spec.group().spec())));
    }
    let c = zprop_constant();
    let index = shared_index(spec, opts.radius_for(k), opts)?;
    single_element_trials(InequalityId::ZpropSection4, spec, k, &index, opts, |mut r, x, extra| {
        let (lhs, est) = operator_lhs(x, &index, opts, &extra)?;
        r.lhs_source = LhsSource::OperatorLower;
        r.estimate = Some(est);
        r.constants.c = Some(c);
        r.constants.s = Some(1.0);
        Ok(vec![finish(r, lhs, c * x.rd_rhs_scalar(1.0))])
    })
}

/// `‖M_φ X‖ <= 2 C m Σ ‖X_g‖` with `m = sup |φ(g)| (2+|g|)^{s+1}`.
///
/// `(C, s)` are operator rapid-decay constants; by default they come from
/// the growth fit through [`operator_rd_constants`]. The ratio of the
/// estimates of `‖M_φ X‖` and `‖X‖` is recorded as a diagnostic.
pub fn verify_multiplier(
    spec: &TrialSpec,
    k: usize,
    phi: &MultiplierSymbol,
    rd: Option<(f64, f64)>,
    opts: &HarnessOptions,
) -> Result<Vec<InequalityReport>> {
    let (c_rd, s_rd) = match rd {
        Some(p) => p,
        None => {
            let (c, s) = fit_growth(spec, opts)?;
            operator_rd_constants(c, s)
        }
    };
    let m = phi.m_constant(s_rd)?;
    let index = shared_index(spec, opts.radius_for(k), opts)?;
    single_element_trials(InequalityId::Prop7Multiplier, spec, k, &index, opts, |mut r, x, extra| {
        let y = x.multiply_symbol(phi);
        let rhs = 2.0 * c_rd * m * x.triangle_bound();
        r.constants = Constants {
            c: Some(c_rd),
            s: Some(s_rd),
            small_m: Some(m),
            lambda: match phi {
                MultiplierSymbol::ExponentialDecay(l) => Some(*l),
                _ => None,
            },
            ..Constants::default()
        };
        r.note = Some(phi.to_string());
        if y.is_zero() {
            return Ok(vec![finish(r, 0.0, rhs)]);
        }
        let (lhs, est) = operator_lhs(&y, &index, opts, &extra)?;
        let (base, _) = operator_lhs(x, &index, opts, &extra)?;
        r.lhs_source = LhsSource::OperatorLower;
        r.estimate = Some(est);
        if base > 0.0 {
            r.diagnostic = Some(lhs / base);
        }
        Ok(vec![finish(r, lhs, rhs)])
    })
}

/// Lower bounds for `‖M_{φ_λ} X − X‖` with `φ_λ(g) = e^{-λ|g|}`, in the given order.
pub fn multiplier_continuity(
    x: &CpElement,
    lambdas: &[f64],
    opts: &HarnessOptions,
) -> Result<Vec<(f64, NormEstimate)>> {
    let radius = opts.radius_for(x.max_length());
    let index = SphereIndex::shared(x.group(), radius, opts.norm.budget)?;
    lambdas
        .iter()
        .map(|&l| {
            let d = x.multiply_symbol(&MultiplierSymbol::ExponentialDecay(l)).try_sub(x)?;
            Ok((l, norm_lower_on(&d, &index, radius, &opts.norm)?))
        })
        .collect()
}

/// Product of two samples and its `m`-sphere part.
pub(super) struct PairTrial {
    pub x: CpElement,
    pub y: CpElement,
    pub z: CpElement,
}

/// All nonzero spheres `|k−l| ..= k+l`, or just `m`.
pub(super) fn m_values(k: usize, l: usize, m: Option<usize>) -> Result<Vec<usize>> {
    match m {
        Some(m) if m > k + l => Err(Error::OutOfRange {
            what: "m",
            detail: format!("need m <= k + l = {}", k + l),
        }),
        Some(m) => Ok(vec![m]),
        None => Ok((k.abs_diff(l)..=k + l).collect()),
    }
}

/// Runs `body` on `(X, Y, M_{χ_m}(XY))` for every trial and `m`.
pub(super) fn pair_trials<F>(
    id: InequalityId,
    spec: &TrialSpec,
    k: usize,
    l: usize,
    m: Option<usize>,
    opts: &HarnessOptions,
    mut body: F,
) -> Result<Vec<InequalityReport>>
where
    F: FnMut(InequalityReport, &PairTrial, Option<&Arc<SphereIndex>>) -> Result<Vec<InequalityReport>>,
{
    let ms = m_values(k, l, m)?;
    let radius = if opts.operator_diagnostic { opts.radius_for(k + l) } else { k.max(l) };
    let index = shared_index(spec, radius, opts)?;
    let diag = opts.operator_diagnostic.then_some(&index);
    let mut out = Vec::new();
    for t in 0..spec.trials {
        // shared by every pair statement, so they see the same (X, Y)
        let mut rng = stream(spec.seed, "pair", t as u64);
        let x = spec.sample(&index, k, &mut rng)?;
        let y = spec.sample(&index, l, &mut rng)?;
        let xy = x.product(&y)?;
        for &mm in &ms {
            let z = xy.multiply_symbol(&MultiplierSymbol::IndicatorAnnulus(mm));
            let mut r = blank(id, spec, t, k);
            r.l = Some(l);
            r.m = Some(mm);
            r.support_size = x.support_len() + y.support_len();
            let trial = PairTrial { x: x.clone(), y: y.clone(), z };
            out.extend(body(r, &trial, diag)?);
        }
    }
    Ok(out)
}

pub(super) fn operator_diagnostic(
    z: &CpElement,
    index: Option<&Arc<SphereIndex>>,
    opts: &HarnessOptions,
) -> Result<Option<f64>> {
    match index {
        Some(idx) if !z.is_zero() => {
            let radius = opts.radius_for(z.max_length()).min(idx.radius());
            Ok(Some(norm_lower_on(z, idx, radius, &opts.norm)?.value))
        }
        Some(_) => Ok(Some(0.0)),
        None => Ok(None),
    }
}

/// Both inequalities for `Z = M_{χ_m}(XY)`, `supp X ⊂ C_k`, `supp Y ⊂ C_l`:
///
/// * (a) `‖Z‖_π <= N (Σ ‖X_a‖²)^{1/2} ‖Σ Y_b* Y_b‖^{1/2}`
/// * (b) `‖Z*‖_π <= N ‖Σ α_a(X_a X_a*)‖^{1/2} (Σ ‖Y_b‖²)^{1/2}`
///
/// where `‖Z‖_π = ‖Σ Z_g* Z_g‖^{1/2}` is the column norm and `‖Z*‖_π` the
/// row norm. With `m = None` every `m` in `|k−l| ..= k+l` is tested.
pub fn verify_hagprop(
    spec: &TrialSpec,
    k: usize,
    l: usize,
    m: Option<usize>,
    n_bound: f64,
    opts: &HarnessOptions,
) -> Result<Vec<InequalityReport>> {
    pair_trials(InequalityId::Cor63HagpropA, spec, k, l, m, opts, |r, p, diag| {
        let op = operator_diagnostic(&p.z, diag, opts)?;
        let mut a = r.clone();
        a.constants.n_bound = Some(n_bound);
        a.lhs_source = LhsSource::PiColumn;
        a.operator_lower = op;
        let mut b = a.clone();
        b.inequality_id = InequalityId::Cor63HagpropB;
        b.lhs_source = LhsSource::PiRow;
        let ra = n_bound * p.x.l2_norm() * p.y.column_norm()?;
        let rb = n_bound * p.x.row_norm()? * p.y.l2_norm();
        Ok(vec![finish(a, p.z.column_norm()?, ra), finish(b, p.z.row_norm()?, rb)])
    })
}
