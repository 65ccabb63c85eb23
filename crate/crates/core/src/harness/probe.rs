//! Probes of statements the proofs do not cover.
//!
//! Same mechanics as the verifiers; a `VIOLATION` here is a finding.

use super::sample::TrialSpec;
use super::verify::{blank, finish, operator_diagnostic, operator_lhs, pair_trials, shared_index, single_element_trials};
use super::{Constants, HarnessOptions, InequalityId, InequalityReport, LhsSource};
use crate::coeffalg::{CoeffOp, C64};
use crate::crossed::CpElement;
use crate::error::Result;

/// `‖M_{χ_m}(XY)‖_π <= N ‖Σ α_a(X_a X_a*)‖^{1/2} ‖Σ Y_b* Y_b‖^{1/2}`.
///
/// The diagnostic is the right side of the first Haagerup-property
/// inequality, `N (Σ ‖X_a‖²)^{1/2} ‖Σ Y_b* Y_b‖^{1/2}`, which coincides with
/// `rhs` for scalar coefficients.
pub fn probe_desired(
    spec: &TrialSpec,
    k: usize,
    l: usize,
    m: Option<usize>,
    n_bound: f64,
    opts: &HarnessOptions,
) -> Result<Vec<InequalityReport>> {
    pair_trials(InequalityId::ProbeDesired, spec, k, l, m, opts, |mut r, p, diag| {
        r.constants.n_bound = Some(n_bound);
        r.lhs_source = LhsSource::PiColumn;
        r.operator_lower = operator_diagnostic(&p.z, diag, opts)?;
        let col_y = p.y.column_norm()?;
        r.diagnostic = Some(n_bound * p.x.l2_norm() * col_y);
        let rhs = n_bound * p.x.row_norm()? * col_y;
        Ok(vec![finish(r, p.z.column_norm()?, rhs)])
    })
}

/// `‖X‖ <= C (Σ_k (1+k)^{2s} ‖Σ_{g ∈ C_k} (α_g(X_g X_g*) + X_g* X_g)‖)^{1/2}`.
///
/// Random trials come from `spec`; they are followed by one structured trial
/// per radius `r = 1..=k`, `X = Σ_{j <= r} L_{g_j} E_{jj}` along the first
/// element `g_j` of each sphere, with matrix units cycling through the
/// diagonal.
pub fn probe_mixed(spec: &TrialSpec, k: usize, c: f64, s: f64, opts: &HarnessOptions) -> Result<Vec<InequalityReport>> {
    let index = shared_index(spec, opts.radius_for(k), opts)?;
    let constants = Constants {
        c: Some(c),
        s: Some(s),
        ..Constants::default()
    };
    let mut out = single_element_trials(InequalityId::ProbeMixed, spec, k, &index, opts, |mut r, x, extra| {
        let (lhs, est) = operator_lhs(x, &index, opts, &extra)?;
        r.lhs_source = LhsSource::OperatorLower;
        r.estimate = Some(est);
        r.constants = constants.clone();
        r.diagnostic = Some(c * x.rd_rhs_operator(s)?);
        Ok(vec![finish(r, lhs, c * x.rd_rhs_mixed(s)?)])
    })?;
    let n = spec.dim();
    for radius in 1..=k {
        let terms: Vec<_> = (0..=radius)
            .map(|j| {
                let mut e = vec![C64::new(0.0, 0.0); n];
                e[j % n] = C64::new(1.0, 0.0);
                (index.sphere(j)[0].clone(), CoeffOp::diag(&e))
            })
            .collect();
        let x = CpElement::from_terms(spec.action.clone(), terms)?;
        let (lhs, est) = operator_lhs(&x, &index, opts, &[])?;
        let mut r = blank(InequalityId::ProbeMixed, spec, spec.trials + radius - 1, radius);
        r.support_size = x.support_len();
        r.lhs_source = LhsSource::OperatorLower;
        r.estimate = Some(est);
        r.constants = constants.clone();
        r.diagnostic = Some(c * x.rd_rhs_operator(s)?);
        r.note = Some("ray".into());
        out.push(finish(r, lhs, c * x.rd_rhs_mixed(s)?));
    }
    Ok(out)
}
