//! Compression `P_R X P_R` on `ℓ²(B_R) ⊗ C^n`.

use std::sync::Arc;

use nalgebra::DMatrix;

use crate::coeffalg::{CoeffOp, C64};
use crate::crossed::CpElement;
use crate::error::{Error, Result};
use crate::groups::{GroupElement, SphereIndex};

/// Sparse block matrix with blocks `α_{h⁻¹}(X_g)` at `(gh, h)`.
///
/// Basis vectors are `δ_h ⊗ e_i` for `h` in shortlex order, so the
/// compression to any smaller ball is the leading principal block.
/// Blocks are stored grouped by source element.
#[derive(Clone, Debug)]
pub struct CompressedOperator {
    index: Arc<SphereIndex>,
    radius: usize,
    n: usize,
    basis: usize,
    targets: Vec<u32>,
    sources: Vec<u32>,
    /// `source_start[i]..source_start[i+1]` are the blocks with source `i`.
    source_start: Vec<usize>,
    data: Vec<C64>,
}

impl CompressedOperator {
    /// Compress `x` onto `B_radius`, using (a prefix of) `index`.
    pub fn new(x: &CpElement, index: Arc<SphereIndex>, radius: usize) -> Result<Self> {
        if index.group() != x.group() {
            return Err(Error::MismatchedGroups);
        }
        if radius > index.radius() {
            return Err(Error::RadiusTooSmall {
                radius: index.radius(),
                needed: radius,
            });
        }
        let group = x.group();
        let n = x.dim();
        let basis = index.ball_len(radius);
        let terms: Vec<(&GroupElement, &CoeffOp)> = x.terms().collect();
        let mut targets = Vec::new();
        let mut sources = Vec::new();
        let mut data = Vec::new();
        let mut source_start = Vec::with_capacity(basis + 1);
        for (si, h) in index.ball(radius).iter().enumerate() {
            source_start.push(targets.len());
            let twist = x.twist_for(h);
            for (g, xg) in &terms {
                if g.len() > radius + h.len() || h.len() > radius + g.len() {
                    continue;
                }
                let f = group.mul_unchecked(g, h);
                if f.len() > radius {
                    continue;
                }
                let ti = index.index_of(&f).expect("ball element indexed");
                let block = twist.conjugate(xg);
                targets.push(ti as u32);
                sources.push(si as u32);
                data.extend(block.row_major());
            }
        }
        source_start.push(targets.len());
        Ok(CompressedOperator {
            index,
            radius,
            n,
            basis,
            targets,
            sources,
            source_start,
            data,
        })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// `|B_R| · n`.
    pub fn dim(&self) -> usize {
        self.basis * self.n
    }

    pub fn coeff_dim(&self) -> usize {
        self.n
    }

    pub fn nnz_blocks(&self) -> usize {
        self.targets.len()
    }

    pub fn index(&self) -> &Arc<SphereIndex> {
        &self.index
    }

    /// Dimension of the compression to `B_r`, `r <= R`.
    pub fn dim_at(&self, r: usize) -> usize {
        self.index.ball_len(r.min(self.radius)) * self.n
    }

    /// The block at `(target, source)`, if present.
    pub fn block(&self, target: &GroupElement, source: &GroupElement) -> Option<CoeffOp> {
        let t = self.index.index_of(target)? as u32;
        let s = self.index.index_of(source)?;
        if s >= self.basis {
            return None;
        }
        let nn = self.n * self.n;
        (self.source_start[s]..self.source_start[s + 1])
            .filter(|&b| self.targets[b] == t)
            .map(|b| CoeffOp::from_rows(self.n, &self.data[b * nn..(b + 1) * nn]).expect("square"))
            .reduce(|a, b| &a + &b)
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        let d = self.dim();
        let n = self.n;
        let mut m = DMatrix::zeros(d, d);
        for b in 0..self.targets.len() {
            let (t, s) = (self.targets[b] as usize, self.sources[b] as usize);
            for i in 0..n {
                for j in 0..n {
                    m[(t * n + i, s * n + j)] += self.data[b * n * n + i * n + j];
                }
            }
        }
        m
    }

    /// `y = P_r A P_r x` for `x` of length `dim_at(r)`.
    pub fn apply_at(&self, r: usize, x: &[C64], y: &mut [C64]) {
        let m = self.index.ball_len(r.min(self.radius)) as u32;
        let n = self.n;
        y.iter_mut().for_each(|v| *v = C64::new(0.0, 0.0));
        let end = self.source_start[m as usize];
        for b in 0..end {
            let t = self.targets[b];
            if t >= m {
                continue;
            }
            let (t, s) = (t as usize, self.sources[b] as usize);
            let blk = &self.data[b * n * n..(b + 1) * n * n];
            if n == 1 {
                y[t] += blk[0] * x[s];
                continue;
            }
            for i in 0..n {
                let mut acc = C64::new(0.0, 0.0);
                for j in 0..n {
                    acc += blk[i * n + j] * x[s * n + j];
                }
                y[t * n + i] += acc;
            }
        }
    }

    /// `y = (P_r A P_r)* x`.
    pub fn apply_adjoint_at(&self, r: usize, x: &[C64], y: &mut [C64]) {
        let m = self.index.ball_len(r.min(self.radius)) as u32;
        let n = self.n;
        y.iter_mut().for_each(|v| *v = C64::new(0.0, 0.0));
        let end = self.source_start[m as usize];
        for b in 0..end {
            let t = self.targets[b];
            if t >= m {
                continue;
            }
            let (t, s) = (t as usize, self.sources[b] as usize);
            let blk = &self.data[b * n * n..(b + 1) * n * n];
            if n == 1 {
                y[s] += blk[0].conj() * x[t];
                continue;
            }
            for j in 0..n {
                let mut acc = C64::new(0.0, 0.0);
                for i in 0..n {
                    acc += blk[i * n + j].conj() * x[t * n + i];
                }
                y[s * n + j] += acc;
            }
        }
    }

    pub fn apply(&self, x: &[C64]) -> Vec<C64> {
        let mut y = vec![C64::new(0.0, 0.0); self.dim()];
        self.apply_at(self.radius, x, &mut y);
        y
    }

    pub fn apply_adjoint(&self, x: &[C64]) -> Vec<C64> {
        let mut y = vec![C64::new(0.0, 0.0); self.dim()];
        self.apply_adjoint_at(self.radius, x, &mut y);
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossed::testutil::{ctx, random_element};

    fn idx(group: &crate::groups::Group, r: usize) -> Arc<SphereIndex> {
        SphereIndex::shared(group, r, 1_000_000).unwrap()
    }

    #[test]
    fn unit_compresses_to_identity() {
        let c = ctx("free:2", "randperm:2:3");
        let u = CpElement::unit(c.clone());
        let op = CompressedOperator::new(&u, idx(c.group(), 2), 2).unwrap();
        assert_eq!(op.dim(), 17 * 2);
        assert_eq!(op.to_dense(), DMatrix::identity(34, 34));
    }

    #[test]
    fn truncated_shift() {
        let c = ctx("zd:1", "trivial:1");
        let z = c.group().clone();
        let x = CpElement::group_ring(c.clone(), [(z.from_exponents(&[1]).unwrap(), C64::new(1.0, 0.0))]).unwrap();
        let index = idx(&z, 2);
        let op = CompressedOperator::new(&x, index.clone(), 2).unwrap();
        let d = op.to_dense();
        // oracle: δ_h ↦ δ_{h+1} on {-2, ..., 2}
        let pos = |k: i64| index.index_of(&z.from_exponents(&[k]).unwrap()).unwrap();
        let mut expect = DMatrix::<C64>::zeros(5, 5);
        for k in -2..2 {
            expect[(pos(k + 1), pos(k))] = C64::new(1.0, 0.0);
        }
        assert_eq!(d, expect);
        let mut p = d.clone();
        for _ in 0..4 {
            p = &p * &d;
        }
        assert!(p.iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn adjoint_compression_and_matvecs() {
        for (g, a) in [("free:2", "randunitary:2:1"), ("zd:2", "randperm:3:2"), ("fpc:2,3", "randunitary:2:3")] {
            let c = ctx(g, a);
            let x = random_element(&c, 2, 5, 4);
            let index = idx(c.group(), 3);
            let op = CompressedOperator::new(&x, index.clone(), 3).unwrap();
            let opa = CompressedOperator::new(&x.adjoint(), index.clone(), 3).unwrap();
            let dense = op.to_dense();
            let dev = (&dense.adjoint() - opa.to_dense()).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(dev < 1e-12, "{g}");
            let v: Vec<C64> = (0..op.dim()).map(|i| C64::new((i as f64).sin(), (i as f64 * 0.3).cos())).collect();
            let y = op.apply(&v);
            let yd = &dense * nalgebra::DVector::from_vec(v.clone());
            assert!(y.iter().zip(yd.iter()).all(|(a, b)| (a - b).norm() < 1e-12));
            let ya = op.apply_adjoint(&v);
            let yad = dense.adjoint() * nalgebra::DVector::from_vec(v.clone());
            assert!(ya.iter().zip(yad.iter()).all(|(a, b)| (a - b).norm() < 1e-12));
            // compression to a smaller ball is the leading block
            let small = CompressedOperator::new(&x, index.clone(), 1).unwrap().to_dense();
            let d1 = op.dim_at(1);
            assert_eq!(small, dense.view((0, 0), (d1, d1)).into_owned());
            // block layout
            for (gk, xg) in x.terms() {
                for h in index.ball(1) {
                    let f = c.group().multiply(gk, h).unwrap();
                    if f.len() <= 3 {
                        let expect = c.apply(&c.group().inverse(h), xg).unwrap();
                        let got = op.block(&f, h).unwrap();
                        assert!(got.max_abs_diff(&expect) < 1e-12);
                    }
                }
            }
        }
    }
}
