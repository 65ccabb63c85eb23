//! Largest eigenpair of `A*A` for a matrix-free `A`.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::coeffalg::C64;

pub(crate) struct TopPair {
    /// `‖A y‖` for the returned unit vector `y`.
    pub value: f64,
    pub vector: Vec<C64>,
    /// Number of `A*A` applications.
    pub iterations: usize,
    /// `‖A*A y − θ y‖ / θ` with `θ = value²`.
    pub residual: f64,
}

fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[C64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn axpy(alpha: C64, x: &[C64], y: &mut [C64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn scale(a: &mut [C64], s: f64) {
    for z in a {
        *z *= s;
    }
}

/// Matrix-free operator of a fixed dimension.
pub(crate) trait Op {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[C64], y: &mut [C64]);
    fn apply_adjoint(&self, x: &[C64], y: &mut [C64]);
}

struct Gram<'a, O: Op> {
    op: &'a O,
    tmp: Vec<C64>,
}

impl<O: Op> Gram<'_, O> {
    fn apply(&mut self, x: &[C64], y: &mut [C64]) {
        self.op.apply(x, &mut self.tmp);
        self.op.apply_adjoint(&self.tmp, y);
    }
}

/// `(‖A y‖, relative residual)` for a unit vector `y`.
fn certify<O: Op>(op: &O, y: &[C64]) -> (f64, f64) {
    let mut ay = vec![C64::new(0.0, 0.0); op.dim()];
    op.apply(y, &mut ay);
    let value = norm(&ay);
    if value == 0.0 {
        return (0.0, 0.0);
    }
    let mut my = vec![C64::new(0.0, 0.0); op.dim()];
    op.apply_adjoint(&ay, &mut my);
    let theta = value * value;
    axpy(C64::new(-theta, 0.0), y, &mut my);
    (value, norm(&my) / theta)
}

fn normalized(mut v: Vec<C64>) -> Option<Vec<C64>> {
    let nv = norm(&v);
    if nv == 0.0 || !nv.is_finite() {
        return None;
    }
    scale(&mut v, 1.0 / nv);
    Some(v)
}

/// Restarted Lanczos with full reorthogonalization on `A*A`.
pub(crate) fn lanczos<O: Op>(op: &O, start: Vec<C64>, tol: f64, max_iter: usize, krylov: usize) -> TopPair {
    let d = op.dim();
    let mut gram = Gram {
        op,
        tmp: vec![C64::new(0.0, 0.0); d],
    };
    let Some(mut y) = normalized(start) else {
        return TopPair { value: 0.0, vector: vec![C64::new(0.0, 0.0); d], iterations: 0, residual: 0.0 };
    };
    let m = krylov.clamp(1, d.max(1));
    let mut iterations = 0;
    let mut best: Option<TopPair> = None;
    loop {
        let mut basis: Vec<Vec<C64>> = vec![y.clone()];
        let mut alphas: Vec<f64> = Vec::new();
        let mut betas: Vec<f64> = Vec::new();
        let mut w = vec![C64::new(0.0, 0.0); d];
        let mut invariant = false;
        for j in 0..m {
            gram.apply(&basis[j], &mut w);
            iterations += 1;
            let alpha = dot(&basis[j], &w).re;
            alphas.push(alpha);
            let scale_ref = alpha.abs().max(betas.last().copied().unwrap_or(0.0));
            for _ in 0..2 {
                for q in &basis {
                    let c = dot(q, &w);
                    axpy(-c, q, &mut w);
                }
            }
            let beta = norm(&w);
            if beta <= 1e-13 * scale_ref.max(f64::MIN_POSITIVE) {
                invariant = true;
                break;
            }
            if j + 1 == m || iterations >= max_iter {
                break;
            }
            betas.push(beta);
            let mut q = w.clone();
            scale(&mut q, 1.0 / beta);
            basis.push(q);
        }
        let k = alphas.len();
        let mut t = DMatrix::<f64>::zeros(k, k);
        for i in 0..k {
            t[(i, i)] = alphas[i];
            if i + 1 < k {
                t[(i, i + 1)] = betas[i];
                t[(i + 1, i)] = betas[i];
            }
        }
        let eig = SymmetricEigen::new(t);
        let top = (0..k)
            .max_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]))
            .unwrap_or(0);
        let mut ritz = vec![C64::new(0.0, 0.0); d];
        for (i, q) in basis.iter().take(k).enumerate() {
            axpy(C64::new(eig.eigenvectors[(i, top)], 0.0), q, &mut ritz);
        }
        y = match normalized(ritz) {
            Some(v) => v,
            None => y,
        };
        let (value, residual) = certify(op, &y);
        let improved = best.as_ref().is_none_or(|b| value >= b.value);
        if improved {
            best = Some(TopPair { value, vector: y.clone(), iterations, residual });
        }
        let b = best.as_mut().expect("set above");
        b.iterations = iterations;
        if residual <= tol || iterations >= max_iter || value == 0.0 || invariant || k == d {
            return best.expect("set above");
        }
    }
}

/// Power iteration on `A*A`.
pub(crate) fn power<O: Op>(op: &O, start: Vec<C64>, tol: f64, max_iter: usize) -> TopPair {
    let d = op.dim();
    let mut gram = Gram {
        op,
        tmp: vec![C64::new(0.0, 0.0); d],
    };
    let Some(mut y) = normalized(start) else {
        return TopPair { value: 0.0, vector: vec![C64::new(0.0, 0.0); d], iterations: 0, residual: 0.0 };
    };
    let mut w = vec![C64::new(0.0, 0.0); d];
    let mut iterations = 0;
    let mut best = (0.0, y.clone());
    loop {
        gram.apply(&y, &mut w);
        iterations += 1;
        let theta = dot(&y, &w).re;
        let value = theta.max(0.0).sqrt();
        let mut r = w.clone();
        axpy(C64::new(-theta, 0.0), &y, &mut r);
        let residual = if theta > 0.0 { norm(&r) / theta } else { 0.0 };
        if value >= best.0 {
            best = (value, y.clone());
        }
        if residual <= tol || iterations >= max_iter || theta <= 0.0 {
            break;
        }
        match normalized(w.clone()) {
            Some(v) => y = v,
            None => break,
        }
    }
    let (value, residual) = certify(op, &best.1);
    TopPair { value, vector: best.1, iterations, residual }
}
