//! Property (J) on ball truncations.
//!
//! For `g` and `0 <= s < |g| + 1` the prefix factor `u_(g,s)` is the element
//! spelled by the first `⌊s⌋` letters of the normal form of `g`, and
//! `v_(g,s) = u⁻¹ g`. For a pair `(a, b)` with cancellation number `p` and
//! product `g = ab`, the middle factor is `c = u_(g,|a|-p)⁻¹ a`, so that
//! `a = u c` and `b = c⁻¹ v`. The checks below measure how far these factors
//! are from the target lengths `s`, `|g| - s` and `p`.
//!
//! Violations are collected and returned; they are findings, not errors.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{in_thickened, Group, GroupElement, SphereIndex};

/// Thickening constants `α, β, γ`, the solution-count windows `μ, ν`, and `N`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct JParameters {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub mu: f64,
    pub nu: f64,
    pub n: usize,
}

impl JParameters {
    /// The exact constants of free groups: `α = β = γ = 0`, `N = 1`.
    pub fn exact() -> Self {
        JParameters {
            alpha: 0.0,
            beta: 0.0,
            gamma: 0.0,
            mu: 0.0,
            nu: 0.0,
            n: 1,
        }
    }

    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let p = JParameters {
            alpha,
            beta,
            gamma,
            ..Self::exact()
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("gamma", self.gamma),
            ("mu", self.mu),
            ("nu", self.nu),
        ] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::OutOfRange {
                    what: "property (J) parameter",
                    detail: format!("{name} = {v}"),
                });
            }
        }
        if self.n == 0 {
            return Err(Error::OutOfRange {
                what: "property (J) parameter",
                detail: "N must be at least 1".into(),
            });
        }
        Ok(())
    }
}

/// Target length used for `v_(g,s)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VTarget {
    /// `v ∈ C_{|g| - s, β}`: the length the prefix construction produces, and
    /// the form in which the solution-count argument consumes `v`.
    #[default]
    Exact,
    /// `v ∈ C_{|g| + 1 - s, β}`: needs `β >= 1` even for free groups.
    ShiftedByOne,
}

impl VTarget {
    fn target(self, g_len: usize, s: f64) -> f64 {
        match self {
            VTarget::Exact => g_len as f64 - s,
            VTarget::ShiftedByOne => g_len as f64 + 1.0 - s,
        }
    }
}

/// `u_(g,s)`: the first `⌊s⌋` letters of `g` (the identity for `s < 1`).
pub fn prefix_u(group: &Group, g: &GroupElement, s: f64) -> Result<GroupElement> {
    if !group.contains(g) {
        return Err(Error::MismatchedGroups);
    }
    if !(s >= 0.0 && s < g.len() as f64 + 1.0) {
        return Err(Error::OutOfRange {
            what: "prefix parameter s",
            detail: format!("s = {s} not in [0, {})", g.len() + 1),
        });
    }
    Ok(group.prefix(g, s.floor() as usize))
}

/// The factorization data for one pair.
#[derive(Clone, Debug, PartialEq)]
pub struct JDecomposition {
    pub g: GroupElement,
    pub s: f64,
    pub p: usize,
    pub u: GroupElement,
    pub v: GroupElement,
    pub c: GroupElement,
}

/// Factor `a = u c`, `b = c⁻¹ v` around `g = ab`.
pub fn decompose(group: &Group, a: &GroupElement, b: &GroupElement) -> Result<JDecomposition> {
    decompose_with(group, a, b, &prefix_u)
}

/// A rule producing the prefix factor `u_(g,s)`.
pub type PrefixRule = dyn Fn(&Group, &GroupElement, f64) -> Result<GroupElement>;

pub fn decompose_with(
    group: &Group,
    a: &GroupElement,
    b: &GroupElement,
    rule: &PrefixRule,
) -> Result<JDecomposition> {
    let g = group.multiply(a, b)?;
    let p = (a.len() + b.len() - g.len()) / 2;
    let s = (a.len() - p) as f64;
    let u = rule(group, &g, s)?;
    let u_inv = group.inverse(&u);
    let c = group.mul_unchecked(&u_inv, a);
    let v = group.mul_unchecked(&u_inv, &g);
    Ok(JDecomposition { g, s, p, u, v, c })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Clause {
    /// `u_(g,s) ∈ C_{s,α}`
    PrefixLength,
    /// `v_(g,s) ∈ C_{target,β}`
    RemainderLength,
    /// `c(a,b) ∈ C_{p,γ}`
    MiddleLength,
    /// `a = u c`
    FactorA,
    /// `b = c⁻¹ v`
    FactorB,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JViolation {
    pub clause: Clause,
    pub g: String,
    pub s: f64,
    pub a: Option<String>,
    pub b: Option<String>,
    pub p: Option<usize>,
    pub length: usize,
    pub target: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct JReport {
    pub group: String,
    pub radius: usize,
    pub params: JParameters,
    pub v_target: VTarget,
    pub pass: bool,
    pub elements_checked: usize,
    pub pairs_checked: usize,
    /// Smallest `α, β, γ` that would have made every checked tuple pass.
    pub alpha_needed: f64,
    pub beta_needed: f64,
    pub gamma_needed: f64,
    pub violations: Vec<JViolation>,
}

/// Check clauses (i)-(iii) on `B_R`, with `R` the radius of `index`.
pub fn check_j_on_ball(index: &SphereIndex, params: &JParameters, v_target: VTarget) -> Result<JReport> {
    check_j_on_ball_with(index, params, v_target, &prefix_u)
}

pub fn check_j_on_ball_with(
    index: &SphereIndex,
    params: &JParameters,
    v_target: VTarget,
    rule: &PrefixRule,
) -> Result<JReport> {
    params.validate()?;
    let group = index.group();
    let radius = index.radius();
    let fmt = |g: &GroupElement| group.format_element(g);
    let mut report = JReport {
        group: group.spec(),
        radius,
        params: *params,
        v_target,
        pass: true,
        elements_checked: 0,
        pairs_checked: 0,
        alpha_needed: 0.0,
        beta_needed: 0.0,
        gamma_needed: 0.0,
        violations: Vec::new(),
    };

    for g in index.elements() {
        report.elements_checked += 1;
        for si in 0..=g.len() {
            let s = si as f64;
            let u = rule(group, g, s)?;
            let v = group.mul_unchecked(&group.inverse(&u), g);
            let vt = v_target.target(g.len(), s);
            report.alpha_needed = report.alpha_needed.max((u.len() as f64 - s).abs());
            report.beta_needed = report.beta_needed.max((v.len() as f64 - vt).abs());
            if !in_thickened(u.len(), s, params.alpha) {
                report.violations.push(JViolation {
                    clause: Clause::PrefixLength,
                    g: fmt(g),
                    s,
                    a: None,
                    b: None,
                    p: None,
                    length: u.len(),
                    target: s,
                });
            }
            if !in_thickened(v.len(), vt, params.beta) {
                report.violations.push(JViolation {
                    clause: Clause::RemainderLength,
                    g: fmt(g),
                    s,
                    a: None,
                    b: None,
                    p: None,
                    length: v.len(),
                    target: vt,
                });
            }
        }
    }

    for a in index.elements() {
        for b in index.ball(radius - a.len()) {
            report.pairs_checked += 1;
            let d = decompose_with(group, a, b, rule)?;
            let p = d.p;
            report.gamma_needed = report.gamma_needed.max((d.c.len() as f64 - p as f64).abs());
            let mut push = |clause, length, target| {
                report.violations.push(JViolation {
                    clause,
                    g: fmt(&d.g),
                    s: d.s,
                    a: Some(fmt(a)),
                    b: Some(fmt(b)),
                    p: Some(p),
                    length,
                    target,
                })
            };
            if !in_thickened(d.c.len(), p as f64, params.gamma) {
                push(Clause::MiddleLength, d.c.len(), p as f64);
            }
            if group.mul_unchecked(&d.u, &d.c) != *a {
                push(Clause::FactorA, a.len(), a.len() as f64);
            }
            if group.mul_unchecked(&group.inverse(&d.c), &d.v) != *b {
                push(Clause::FactorB, b.len(), b.len() as f64);
            }
        }
    }
    report.pass = report.violations.is_empty();
    Ok(report)
}

/// Enumerate `B_R` and run [`check_j_on_ball`].
pub fn check_j(
    group: &Group,
    radius: usize,
    params: &JParameters,
    v_target: VTarget,
    budget: usize,
) -> Result<JReport> {
    let index = SphereIndex::enumerate(group, radius, budget)?;
    check_j_on_ball(&index, params, v_target)
}

/// `|{ (c, v) ∈ C_{p,μ} × C_{|b|-p,ν} : c⁻¹ v = b }|`.
///
/// `index` must reach radius `⌊p + μ⌋`.
pub fn count_solutions(
    index: &SphereIndex,
    b: &GroupElement,
    p: usize,
    mu: f64,
    nu: f64,
) -> Result<usize> {
    let group = index.group();
    if !group.contains(b) {
        return Err(Error::MismatchedGroups);
    }
    if p > b.len() {
        return Err(Error::OutOfRange {
            what: "cancellation level p",
            detail: format!("p = {p} > |b| = {}", b.len()),
        });
    }
    if !(mu >= 0.0 && nu >= 0.0 && mu.is_finite() && nu.is_finite()) {
        return Err(Error::OutOfRange {
            what: "solution window",
            detail: format!("mu = {mu}, nu = {nu}"),
        });
    }
    let needed = (p as f64 + mu).floor() as usize;
    if index.radius() < needed {
        return Err(Error::RadiusTooSmall {
            radius: index.radius(),
            needed,
        });
    }
    let target = b.len() as f64 - p as f64;
    Ok(index
        .thickened(p as f64, mu)
        .filter(|c| in_thickened(group.mul_unchecked(c, b).len(), target, nu))
        .count())
}

/// Largest solution count over `b ∈ B_R` and `0 <= p <= |b|`.
pub fn max_n_on_ball(group: &Group, radius: usize, mu: f64, nu: f64, budget: usize) -> Result<usize> {
    let index = SphereIndex::enumerate(group, radius + mu.max(0.0).floor() as usize, budget)?;
    max_n_on_index(&index, radius, mu, nu)
}

pub fn max_n_on_index(index: &SphereIndex, radius: usize, mu: f64, nu: f64) -> Result<usize> {
    let mut best = 0;
    for b in index.ball(radius) {
        for p in 0..=b.len() {
            best = best.max(count_solutions(index, b, p, mu, nu)?);
        }
    }
    Ok(best)
}

/// Measured constants on a ball: the smallest `α, β, γ` that pass, with
/// `μ = γ`, `ν = β + 1` and the corresponding empirical `N`.
pub fn measure_parameters(group: &Group, radius: usize, budget: usize) -> Result<JParameters> {
    let report = check_j(group, radius, &JParameters::exact(), VTarget::Exact, budget)?;
    let mu = report.gamma_needed;
    let nu = report.beta_needed + 1.0;
    let n = max_n_on_ball(group, radius, mu, nu, budget)?;
    Ok(JParameters {
        alpha: report.alpha_needed,
        beta: report.beta_needed,
        gamma: report.gamma_needed,
        mu,
        nu,
        n: n.max(1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const BUDGET: usize = 5_000_000;

    fn el(g: &Group, s: &str) -> GroupElement {
        g.parse_element(s).unwrap()
    }

    #[test]
    fn prefix_examples() {
        let f2 = Group::free(2).unwrap();
        let g = el(&f2, "a b a^-1");
        assert_eq!(prefix_u(&f2, &g, 2.0).unwrap(), el(&f2, "a b"));
        assert_eq!(prefix_u(&f2, &g, 2.7).unwrap(), el(&f2, "a b"));
        assert!(prefix_u(&f2, &g, 0.0).unwrap().is_identity());
        assert!(prefix_u(&f2, &g, 0.99).unwrap().is_identity());
        let u = prefix_u(&f2, &g, 3.0).unwrap();
        assert_eq!(u, g);
        assert!(f2.multiply(&f2.inverse(&u), &g).unwrap().is_identity());
        assert!(prefix_u(&f2, &g, 4.0).is_err());
        assert!(prefix_u(&f2, &g, -0.5).is_err());
        assert!(prefix_u(&f2, &g, f64::NAN).is_err());
    }

    #[test]
    fn free_group_passes_exactly() {
        let f2 = Group::free(2).unwrap();
        let r = check_j(&f2, 4, &JParameters::exact(), VTarget::Exact, BUDGET).unwrap();
        assert!(r.pass, "{:?}", &r.violations[..r.violations.len().min(3)]);
        assert_eq!((r.alpha_needed, r.beta_needed, r.gamma_needed), (0.0, 0.0, 0.0));
    }

    #[test]
    fn shifted_target_needs_beta_one() {
        let f2 = Group::free(2).unwrap();
        let r = check_j(&f2, 3, &JParameters::exact(), VTarget::ShiftedByOne, BUDGET).unwrap();
        assert!(!r.pass);
        assert!(r.violations.iter().all(|v| v.clause == Clause::RemainderLength));
        let p = JParameters::new(0.0, 1.0, 0.0).unwrap();
        assert!(check_j(&f2, 3, &p, VTarget::ShiftedByOne, BUDGET).unwrap().pass);
    }

    #[test]
    fn integers_pass_exactly() {
        let z = Group::free_abelian(1).unwrap();
        assert!(check_j(&z, 5, &JParameters::exact(), VTarget::Exact, BUDGET).unwrap().pass);
    }

    #[test]
    fn suffix_rule_is_caught() {
        let f2 = Group::free(2).unwrap();
        let idx = SphereIndex::enumerate(&f2, 4, BUDGET).unwrap();
        let suffix = |g: &Group, x: &GroupElement, s: f64| Ok(g.suffix(x, s.floor() as usize));
        let r = check_j_on_ball_with(&idx, &JParameters::exact(), VTarget::Exact, &suffix).unwrap();
        assert!(!r.pass);
        assert!(r.violations.iter().any(|v| v.clause == Clause::MiddleLength));
    }

    #[test]
    fn abelian_plane_needs_positive_gamma() {
        let z2 = Group::free_abelian(2).unwrap();
        let r = check_j(&z2, 3, &JParameters::exact(), VTarget::Exact, BUDGET).unwrap();
        assert!(!r.pass);
        // a = y, b = x: u = x, c = x⁻¹y has length 2 but p = 0
        assert!(r.gamma_needed >= 2.0);
    }

    #[test]
    fn solution_counts() {
        let f2 = Group::free(2).unwrap();
        let idx = SphereIndex::enumerate(&f2, 3, BUDGET).unwrap();
        let b = el(&f2, "x y");
        // oracle: brute force over every element of length 1
        let brute = idx
            .sphere(1)
            .iter()
            .filter(|c| f2.multiply(c, &b).unwrap().len() == 1)
            .count();
        assert_eq!(brute, 1);
        assert_eq!(count_solutions(&idx, &b, 1, 0.0, 0.0).unwrap(), 1);
        assert_eq!(count_solutions(&idx, &b, 0, 0.0, 0.0).unwrap(), 1);
        assert!(count_solutions(&idx, &b, 3, 0.0, 0.0).is_err());

        let z = Group::free_abelian(1).unwrap();
        let idx = SphereIndex::enumerate(&z, 4, BUDGET).unwrap();
        let b = z.from_exponents(&[3]).unwrap();
        assert_eq!(count_solutions(&idx, &b, 1, 0.0, 0.0).unwrap(), 1);
    }

    #[test]
    fn counts_are_monotone_in_windows() {
        let g = Group::free_product_cyclic(&[2, 3]).unwrap();
        let idx = SphereIndex::enumerate(&g, 6, BUDGET).unwrap();
        for b in idx.ball(3) {
            for p in 0..=b.len() {
                let mut prev = 0;
                for w in [0.0, 0.5, 1.0, 2.0] {
                    let c = count_solutions(&idx, b, p, w, w).unwrap();
                    assert!(c >= prev);
                    prev = c;
                }
            }
        }
    }

    #[test]
    fn max_n_small_cases() {
        let f2 = Group::free(2).unwrap();
        assert_eq!(max_n_on_ball(&f2, 0, 0.0, 0.0, BUDGET).unwrap(), 1);
        assert_eq!(max_n_on_ball(&f2, 3, 0.0, 0.0, BUDGET).unwrap(), 1);
        let z2 = Group::free_abelian(2).unwrap();
        assert_eq!(max_n_on_ball(&z2, 0, 0.0, 0.0, BUDGET).unwrap(), 1);
    }

    #[test]
    fn integer_solution_count_regression() {
        // oracle: count (c, v) over integers directly, v = c + m
        let brute = |r: i64| {
            let mut best = 0;
            for m in -r..=r {
                for p in 0..=m.abs() {
                    let count = (-(p + 1)..=(p + 1))
                        .filter(|c| (c.abs() - p).abs() <= 1)
                        .filter(|c| ((c + m).abs() - (m.abs() - p)).abs() <= 1)
                        .count();
                    best = best.max(count);
                }
            }
            best
        };
        let frozen = brute(6);
        assert_eq!(frozen, 3);
        let z = Group::free_abelian(1).unwrap();
        assert_eq!(max_n_on_ball(&z, 6, 1.0, 1.0, BUDGET).unwrap(), frozen);
    }

    #[test]
    fn measured_parameters_for_modular_group() {
        let g = Group::free_product_cyclic(&[2, 3]).unwrap();
        let p = measure_parameters(&g, 5, BUDGET).unwrap();
        assert_eq!(p.alpha, 0.0);
        assert_eq!(p.beta, 0.0);
        let idx = SphereIndex::enumerate(&g, 5, BUDGET).unwrap();
        let r = check_j_on_ball(&idx, &JParameters::new(p.alpha, p.beta, p.gamma).unwrap(), VTarget::Exact)
            .unwrap();
        assert!(r.pass);
        assert!(p.n >= 1);
    }
}
