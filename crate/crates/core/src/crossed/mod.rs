//! Finitely supported elements `X = Σ L_g X_g` of the reduced crossed product.
//!
//! The covariance relation is `L_g a L_g* = α_g(a)`, which gives
//!
//! ```text
//! (XY)_f = Σ_{gh = f} α_{h⁻¹}(X_g) Y_h
//! (X*)_g = α_{g⁻¹}(X_{g⁻¹}*)
//! ```
//!
//! [`crate::repnorm`] realizes the same convention as operators on
//! `ℓ²(G) ⊗ C^n`, and its interior check ties the two together.

mod io;
mod symbol;

pub use io::{format_element_file, parse_element_file, read_element_file, write_element_file};
pub use symbol::MultiplierSymbol;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::coeffalg::{positive_part_norm, CoeffOp, GroupAction, Implementer, C64};
use crate::error::{Error, Result};
use crate::groups::{Group, GroupElement};

/// A finitely supported crossed-product element.
///
/// Coefficients are kept in shortlex order of their group elements; exact
/// zero matrices are never stored.
#[derive(Clone, Debug)]
pub struct CpElement {
    ctx: Arc<GroupAction>,
    coeffs: BTreeMap<GroupElement, CoeffOp>,
}

impl PartialEq for CpElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_context(other) && self.coeffs == other.coeffs
    }
}

impl CpElement {
    pub fn zero(ctx: Arc<GroupAction>) -> Self {
        CpElement {
            ctx,
            coeffs: BTreeMap::new(),
        }
    }

    /// Sums repeated keys; checks dimensions and group membership.
    pub fn from_terms(
        ctx: Arc<GroupAction>,
        terms: impl IntoIterator<Item = (GroupElement, CoeffOp)>,
    ) -> Result<Self> {
        let mut x = CpElement::zero(ctx);
        for (g, a) in terms {
            if a.dim() != x.dim() {
                return Err(Error::DimensionMismatch {
                    expected: x.dim(),
                    found: a.dim(),
                });
            }
            if !x.group().contains(&g) {
                return Err(Error::MismatchedGroups);
            }
            x.accumulate(g, a);
        }
        Ok(x)
    }

    /// `L_g a`.
    pub fn monomial(ctx: Arc<GroupAction>, g: GroupElement, a: CoeffOp) -> Result<Self> {
        Self::from_terms(ctx, [(g, a)])
    }

    /// `L_e · 1`.
    pub fn unit(ctx: Arc<GroupAction>) -> Self {
        let n = ctx.dim();
        let e = ctx.group().identity();
        let mut x = CpElement::zero(ctx);
        x.coeffs.insert(e, CoeffOp::identity(n));
        x
    }

    /// `Σ c_g L_g · 1`: an element of the group algebra.
    pub fn group_ring(
        ctx: Arc<GroupAction>,
        terms: impl IntoIterator<Item = (GroupElement, C64)>,
    ) -> Result<Self> {
        let n = ctx.dim();
        Self::from_terms(
            ctx,
            terms
                .into_iter()
                .map(|(g, z)| (g, CoeffOp::identity(n).scale(z))),
        )
    }

    fn accumulate(&mut self, g: GroupElement, a: CoeffOp) {
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(g) {
            Entry::Vacant(v) => {
                if !a.is_zero() {
                    v.insert(a);
                }
            }
            Entry::Occupied(mut o) => {
                let sum = &*o.get() + &a;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn with_coeffs(&self, coeffs: BTreeMap<GroupElement, CoeffOp>) -> Self {
        CpElement {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    pub fn context(&self) -> &Arc<GroupAction> {
        &self.ctx
    }

    pub fn action(&self) -> &GroupAction {
        &self.ctx
    }

    pub fn group(&self) -> &Group {
        self.ctx.group()
    }

    pub fn dim(&self) -> usize {
        self.ctx.dim()
    }

    pub fn same_context(&self, other: &CpElement) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx.same_as(&other.ctx)
    }

    fn check_context(&self, other: &CpElement) -> Result<()> {
        if self.same_context(other) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn support(&self) -> impl Iterator<Item = &GroupElement> {
        self.coeffs.keys()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &CoeffOp)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, g: &GroupElement) -> Option<&CoeffOp> {
        self.coeffs.get(g)
    }

    /// `X_g`, zero when `g` is outside the support.
    pub fn coeff_or_zero(&self, g: &GroupElement) -> CoeffOp {
        self.coeffs
            .get(g)
            .cloned()
            .unwrap_or_else(|| CoeffOp::zero(self.dim()))
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest word length in the support (0 for the zero element).
    pub fn max_length(&self) -> usize {
        self.coeffs.keys().map(GroupElement::len).max().unwrap_or(0)
    }

    pub fn try_add(&self, other: &CpElement) -> Result<CpElement> {
        self.check_context(other)?;
        let mut out = self.clone();
        for (g, a) in &other.coeffs {
            out.accumulate(g.clone(), a.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &CpElement) -> Result<CpElement> {
        self.try_add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, z: C64) -> CpElement {
        self.with_coeffs(
            self.coeffs
                .iter()
                .map(|(g, a)| (g.clone(), a.scale(z)))
                .filter(|(_, a)| !a.is_zero())
                .collect(),
        )
    }

    /// Twisted convolution.
    pub fn product(&self, other: &CpElement) -> Result<CpElement> {
        self.check_context(other)?;
        let group = self.group();
        let mut out = CpElement::zero(self.ctx.clone());
        for (h, yh) in &other.coeffs {
            let twist = self.ctx.implementer(&group.inverse(h));
            for (g, xg) in &self.coeffs {
                let f = group.mul_unchecked(g, h);
                out.accumulate(f, &twist.conjugate(xg) * yh);
            }
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> CpElement {
        let group = self.group();
        self.with_coeffs(
            self.coeffs
                .iter()
                .map(|(k, a)| (group.inverse(k), self.ctx.implementer(k).conjugate(&a.adjoint())))
                .collect(),
        )
    }

    /// Coefficientwise product `Σ L_f X_f Y_f`.
    pub fn hadamard(&self, other: &CpElement) -> Result<CpElement> {
        self.check_context(other)?;
        Ok(self.with_coeffs(
            self.coeffs
                .iter()
                .filter_map(|(g, a)| other.coeffs.get(g).map(|b| (g.clone(), a * b)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        ))
    }

    /// `M_φ X = Σ L_g φ(g) X_g`.
    pub fn multiply_symbol(&self, phi: &MultiplierSymbol) -> CpElement {
        self.with_coeffs(
            self.coeffs
                .iter()
                .map(|(g, a)| (g.clone(), a.scale(phi.eval(g))))
                .filter(|(_, a)| !a.is_zero())
                .collect(),
        )
    }

    /// Keep the coefficients with `|g| <= n`.
    pub fn truncate_ball(&self, n: usize) -> CpElement {
        self.filter(|g| g.len() <= n)
    }

    /// Keep the coefficients with `|g| = m`.
    pub fn restrict_sphere(&self, m: usize) -> CpElement {
        self.filter(|g| g.len() == m)
    }

    pub fn filter(&self, mut keep: impl FnMut(&GroupElement) -> bool) -> CpElement {
        self.with_coeffs(
            self.coeffs
                .iter()
                .filter(|(g, _)| keep(g))
                .map(|(g, a)| (g.clone(), a.clone()))
                .collect(),
        )
    }

    /// `S_p`: the part of `XY` coming from pairs `(a, b)` with cancellation number `p`.
    pub fn product_block(&self, other: &CpElement, p: usize) -> Result<CpElement> {
        Ok(self
            .product_blocks(other)?
            .remove(&p)
            .unwrap_or_else(|| CpElement::zero(self.ctx.clone())))
    }

    /// All nonzero blocks `S_p`, keyed by `p`.
    pub fn product_blocks(&self, other: &CpElement) -> Result<BTreeMap<usize, CpElement>> {
        self.check_context(other)?;
        let group = self.group();
        let mut blocks: BTreeMap<usize, CpElement> = BTreeMap::new();
        for (h, yh) in &other.coeffs {
            let twist = self.ctx.implementer(&group.inverse(h));
            for (g, xg) in &self.coeffs {
                let f = group.mul_unchecked(g, h);
                let p = (g.len() + h.len() - f.len()) / 2;
                blocks
                    .entry(p)
                    .or_insert_with(|| CpElement::zero(self.ctx.clone()))
                    .accumulate(f, &twist.conjugate(xg) * yh);
            }
        }
        blocks.retain(|_, b| !b.is_zero());
        Ok(blocks)
    }

    /// `‖Σ X_g* X_g‖^{1/2}`.
    pub fn column_norm(&self) -> Result<f64> {
        let terms: Vec<CoeffOp> = self.coeffs.values().map(|a| &a.adjoint() * a).collect();
        Ok(positive_part_norm(&terms)?.sqrt())
    }

    /// `‖Σ α_g(X_g X_g*)‖^{1/2}`.
    pub fn row_norm(&self) -> Result<f64> {
        let terms: Vec<CoeffOp> = self
            .coeffs
            .iter()
            .map(|(g, a)| self.ctx.implementer(g).conjugate(&(a * &a.adjoint())))
            .collect();
        Ok(positive_part_norm(&terms)?.sqrt())
    }

    /// `‖Σ (1+|g|)^t X_g* X_g‖^{1/2}`.
    pub fn weighted_column_norm(&self, t: f64) -> Result<f64> {
        let terms: Vec<CoeffOp> = self
            .coeffs
            .iter()
            .map(|(g, a)| (&a.adjoint() * a).scale(C64::new(weight(g.len(), t / 2.0), 0.0)))
            .collect();
        Ok(positive_part_norm(&terms)?.sqrt())
    }

    /// `‖Σ (1+|g|)^t α_g(X_g X_g*)‖^{1/2}`.
    pub fn weighted_row_norm(&self, t: f64) -> Result<f64> {
        let terms: Vec<CoeffOp> = self
            .coeffs
            .iter()
            .map(|(g, a)| {
                self.ctx
                    .implementer(g)
                    .conjugate(&(a * &a.adjoint()))
                    .scale(C64::new(weight(g.len(), t / 2.0), 0.0))
            })
            .collect();
        Ok(positive_part_norm(&terms)?.sqrt())
    }

    /// `(Σ ‖X_g‖²)^{1/2}`.
    pub fn l2_norm(&self) -> f64 {
        self.coeffs
            .values()
            .map(|a| a.op_norm().powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// `Σ ‖X_g‖`, an upper bound for `‖X‖`.
    pub fn triangle_bound(&self) -> f64 {
        self.coeffs.values().map(CoeffOp::op_norm).sum()
    }

    /// `(Σ (1+|g|)^{2s} ‖X_g‖²)^{1/2}`.
    pub fn rd_rhs_scalar(&self, s: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|(g, a)| weight(g.len(), s) * a.op_norm().powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// `‖Σ (1+|g|)^{2s} (α_g(X_g X_g*) + X_g* X_g)‖^{1/2}`.
    pub fn rd_rhs_operator(&self, s: f64) -> Result<f64> {
        let terms: Vec<CoeffOp> = self
            .coeffs
            .iter()
            .map(|(g, a)| self.row_col_term(g, a).scale(C64::new(weight(g.len(), s), 0.0)))
            .collect();
        Ok(positive_part_norm(&terms)?.sqrt())
    }

    /// `(Σ_k (1+k)^{2s} ‖Σ_{g ∈ C_k} (α_g(X_g X_g*) + X_g* X_g)‖)^{1/2}`.
    pub fn rd_rhs_mixed(&self, s: f64) -> Result<f64> {
        let mut by_sphere: BTreeMap<usize, Vec<CoeffOp>> = BTreeMap::new();
        for (g, a) in &self.coeffs {
            by_sphere.entry(g.len()).or_default().push(self.row_col_term(g, a));
        }
        let mut total = 0.0;
        for (k, terms) in by_sphere {
            total += weight(k, s) * positive_part_norm(&terms)?;
        }
        Ok(total.sqrt())
    }

    /// `(Σ_k (1+k)^{2s} Σ_{g ∈ C_k} 2‖X_g‖²)^{1/2}`, the triangle-inequality
    /// relaxation of [`CpElement::rd_rhs_mixed`].
    pub fn rd_rhs_mixed_relaxed(&self, s: f64) -> f64 {
        (2.0 * self.rd_rhs_scalar(s).powi(2)).sqrt()
    }

    fn row_col_term(&self, g: &GroupElement, a: &CoeffOp) -> CoeffOp {
        let row = self.ctx.implementer(g).conjugate(&(a * &a.adjoint()));
        &row + &(&a.adjoint() * a)
    }

    /// Largest entrywise deviation between coefficient maps.
    pub fn max_abs_diff(&self, other: &CpElement) -> f64 {
        let zero = CoeffOp::zero(self.dim());
        let mut d = 0.0f64;
        for (g, a) in &self.coeffs {
            d = d.max(a.max_abs_diff(other.coeffs.get(g).unwrap_or(&zero)));
        }
        for (g, b) in &other.coeffs {
            if !self.coeffs.contains_key(g) {
                d = d.max(b.max_abs_diff(&zero));
            }
        }
        d
    }

    /// The twist `α_{h⁻¹}` used for source column `h`.
    pub(crate) fn twist_for(&self, h: &GroupElement) -> Implementer {
        self.ctx.implementer(&self.group().inverse(h))
    }
}

fn weight(len: usize, s: f64) -> f64 {
    (1.0 + len as f64).powf(2.0 * s)
}

#[cfg(test)]
pub(crate) mod testutil {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub fn ctx(group: &str, action: &str) -> Arc<GroupAction> {
        let g = Group::parse(group).unwrap();
        Arc::new(GroupAction::parse(&g, action).unwrap())
    }

    /// Random element supported on random words of length `<= k`.
    pub fn random_element(ctx: &Arc<GroupAction>, k: usize, terms: usize, seed: u64) -> CpElement {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let group = ctx.group().clone();
        let letters = group.letters();
        let n = ctx.dim();
        let items: Vec<(GroupElement, CoeffOp)> = (0..terms)
            .map(|_| {
                let len = rng.random_range(0..=k);
                let w: Vec<i8> = (0..len)
                    .map(|_| letters[rng.random_range(0..letters.len())])
                    .collect();
                let entries: Vec<C64> = (0..n * n)
                    .map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                    .collect();
                (group.from_letters(&w).unwrap(), CoeffOp::from_rows(n, &entries).unwrap())
            })
            .collect();
        CpElement::from_terms(ctx.clone(), items).unwrap()
    }
}
