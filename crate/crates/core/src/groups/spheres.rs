use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use super::{Group, GroupElement, GroupKind};
use crate::error::{Error, Result};

/// Slack used when comparing integer lengths against real thresholds.
const LENGTH_EPS: f64 = 1e-9;

/// `true` when a word of length `len` lies in `C_{k,α} = { k - α <= |g| <= k + α }`.
pub fn in_thickened(len: usize, k: f64, alpha: f64) -> bool {
    let l = len as f64;
    l >= k - alpha - LENGTH_EPS && l <= k + alpha + LENGTH_EPS
}

/// Exhaustive enumeration of the spheres `C_0, ..., C_R`.
///
/// Elements are stored in shortlex order, so the ball `B_r` is always a
/// prefix of [`SphereIndex::elements`].
#[derive(Debug)]
pub struct SphereIndex {
    group: Group,
    elements: Vec<GroupElement>,
    offsets: Vec<usize>,
    index: HashMap<GroupElement, u32>,
}

impl SphereIndex {
    pub fn enumerate(group: &Group, radius: usize, budget: usize) -> Result<Self> {
        let estimate: u128 = group
            .sphere_sizes(radius)
            .iter()
            .fold(0u128, |acc, s| acc.saturating_add(*s));
        if estimate > budget as u128 || estimate > u128::from(u32::MAX) {
            return Err(Error::BudgetExceeded { estimate, budget });
        }
        let letters: Vec<GroupElement> = group
            .letters()
            .iter()
            .map(|&l| group.from_letters(&[l]))
            .collect::<Result<_>>()?;

        let mut elements = vec![group.identity()];
        let mut offsets = vec![0, 1];
        for k in 1..=radius {
            let prev = &elements[offsets[k - 1]..offsets[k]];
            let mut seen = HashSet::new();
            let mut next = Vec::new();
            for g in prev {
                for x in &letters {
                    let h = group.mul_unchecked(g, x);
                    if h.len() == k && seen.insert(h.clone()) {
                        next.push(h);
                    }
                }
            }
            next.sort();
            elements.extend(next);
            offsets.push(elements.len());
        }
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i as u32))
            .collect();
        Ok(SphereIndex {
            group: group.clone(),
            elements,
            offsets,
            index,
        })
    }

    pub fn shared(group: &Group, radius: usize, budget: usize) -> Result<Arc<Self>> {
        Self::enumerate(group, radius, budget).map(Arc::new)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn radius(&self) -> usize {
        self.offsets.len() - 2
    }

    /// The sphere `C_k` (empty beyond the radius).
    pub fn sphere(&self, k: usize) -> &[GroupElement] {
        if k > self.radius() {
            return &[];
        }
        &self.elements[self.offsets[k]..self.offsets[k + 1]]
    }

    /// The ball `B_r` as a prefix of the element list.
    pub fn ball(&self, r: usize) -> &[GroupElement] {
        let r = r.min(self.radius());
        &self.elements[..self.offsets[r + 1]]
    }

    pub fn ball_len(&self, r: usize) -> usize {
        self.offsets[r.min(self.radius()) + 1]
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `|C_0|, ..., |C_R|`.
    pub fn sizes(&self) -> Vec<usize> {
        self.offsets.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).map(|&i| i as usize)
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.index.contains_key(g)
    }

    /// Elements of the thickened sphere `C_{k,α}` that lie inside the index.
    pub fn thickened(&self, k: f64, alpha: f64) -> impl Iterator<Item = &GroupElement> {
        let lo = (k - alpha - LENGTH_EPS).ceil().max(0.0) as usize;
        let hi = (k + alpha + LENGTH_EPS).floor();
        let hi = if hi < 0.0 { None } else { Some(hi as usize) };
        let range = match hi {
            Some(hi) if lo <= hi && lo <= self.radius() => {
                self.offsets[lo]..self.offsets[hi.min(self.radius()) + 1]
            }
            _ => 0..0,
        };
        self.elements[range].iter()
    }
}

pub(crate) fn sphere_sizes(group: &Group, radius: usize) -> Vec<u128> {
    match group.kind() {
        GroupKind::Free { rank } => {
            let d = *rank as u128;
            let mut out = vec![1u128];
            let mut s = 2 * d;
            for _ in 1..=radius {
                out.push(s);
                s = s.saturating_mul(2 * d - 1);
            }
            out
        }
        GroupKind::FreeAbelian { rank } => {
            let mut cnt = vec![0u128; radius + 1];
            cnt[0] = 1;
            for _ in 0..*rank {
                let mut next = vec![0u128; radius + 1];
                for k in 0..=radius {
                    let mut acc = cnt[k];
                    for t in 1..=k {
                        acc = acc.saturating_add(cnt[k - t].saturating_mul(2));
                    }
                    next[k] = acc;
                }
                cnt = next;
            }
            cnt
        }
        GroupKind::FreeProductCyclic { orders } => {
            // syllable length multiplicities per factor
            let mult: Vec<Vec<(usize, u128)>> = orders
                .iter()
                .map(|&n| {
                    let n = n as usize;
                    (1..=n / 2)
                        .map(|l| (l, if 2 * l == n { 1 } else { 2 }))
                        .collect()
                })
                .collect();
            let m = orders.len();
            // ending[l][i]: reduced words of length l whose last syllable is in factor i
            let mut ending = vec![vec![0u128; m]; radius + 1];
            let mut out = vec![1u128];
            for l in 1..=radius {
                for i in 0..m {
                    let mut acc = 0u128;
                    for &(sl, c) in &mult[i] {
                        if sl > l {
                            continue;
                        }
                        let before: u128 = if sl == l {
                            1
                        } else {
                            (0..m)
                                .filter(|&j| j != i)
                                .fold(0u128, |a, j| a.saturating_add(ending[l - sl][j]))
                        };
                        acc = acc.saturating_add(before.saturating_mul(c));
                    }
                    ending[l][i] = acc;
                }
                out.push(ending[l].iter().fold(0u128, |a, x| a.saturating_add(*x)));
            }
            out
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthFit {
    pub c: f64,
    pub s: u32,
    pub polynomial: bool,
}

/// Fit `|C_k| <= C (1 + k)^s` over the enumerated spheres.
///
/// The smallest integer `s` is chosen for which `|C_k| / k^s` stops growing
/// on the upper half of the radius range; `C` is then the largest such ratio
/// (and at least `|C_0| = 1`), which gives `|C_k| <= C k^s <= C (1 + k)^s`.
/// When no `s <= R` qualifies, or `C` exceeds `cap`, the fit is flagged as
/// non-polynomial.
pub fn growth_fit(index: &SphereIndex, cap: f64) -> Result<GrowthFit> {
    let r = index.radius();
    if r < 3 {
        return Err(Error::RadiusTooSmall {
            radius: r,
            needed: 3,
        });
    }
    let sizes = index.sizes();
    let tail_start = r.div_ceil(2).max(1);
    let ratios = |s: u32| -> Vec<f64> {
        (1..=r)
            .map(|k| sizes[k] as f64 / (k as f64).powi(s as i32))
            .collect()
    };
    for s in 0..=r as u32 {
        let rs = ratios(s);
        let tail = &rs[tail_start - 1..];
        let bounded = tail.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12));
        let c = rs.iter().copied().fold(1.0f64, f64::max);
        if bounded && c <= cap {
            return Ok(GrowthFit {
                c,
                s,
                polynomial: true,
            });
        }
    }
    let s = r as u32;
    let c = ratios(s).into_iter().fold(1.0f64, f64::max);
    Ok(GrowthFit {
        c,
        s,
        polynomial: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const BUDGET: usize = 5_000_000;

    #[test]
    fn free_sphere_counts() {
        let f2 = Group::free(2).unwrap();
        let idx = SphereIndex::enumerate(&f2, 2, BUDGET).unwrap();
        assert_eq!(idx.sizes(), vec![1, 4, 12]);
    }

    #[test]
    fn lattice_sphere_counts() {
        let z2 = Group::free_abelian(2).unwrap();
        let idx = SphereIndex::enumerate(&z2, 3, BUDGET).unwrap();
        // oracle: count integer points with |a| + |b| = k directly
        for k in 0..=3i64 {
            let brute = (-k..=k)
                .flat_map(|a| (-k..=k).map(move |b| (a, b)))
                .filter(|(a, b)| a.abs() + b.abs() == k)
                .count();
            assert_eq!(idx.sphere(k as usize).len(), brute);
        }
        let z = Group::free_abelian(1).unwrap();
        let idx = SphereIndex::enumerate(&z, 5, BUDGET).unwrap();
        assert_eq!(idx.sizes(), vec![1, 2, 2, 2, 2, 2]);
    }

    #[test]
    fn free_product_counts_match_dp() {
        for orders in [vec![2, 3], vec![3, 4, 2], vec![5]] {
            let g = Group::free_product_cyclic(&orders).unwrap();
            let idx = SphereIndex::enumerate(&g, 7, BUDGET).unwrap();
            let dp: Vec<usize> = g.sphere_sizes(7).iter().map(|&c| c as usize).collect();
            assert_eq!(idx.sizes(), dp, "orders {orders:?}");
        }
        // Z_2 * Z_3: lengths alternate s, t^{±1}: 1, 3, 4, 6, 8, ...
        let g = Group::free_product_cyclic(&[2, 3]).unwrap();
        assert_eq!(g.sphere_sizes(4), vec![1, 3, 4, 6, 8]);
    }

    #[test]
    fn budget_is_enforced() {
        let f3 = Group::free(3).unwrap();
        match SphereIndex::enumerate(&f3, 12, 1000).unwrap_err() {
            Error::BudgetExceeded { estimate, budget } => {
                assert_eq!(budget, 1000);
                assert!(estimate > 1000);
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn ball_is_prefix_and_index_consistent() {
        let g = Group::free_product_cyclic(&[2, 3]).unwrap();
        let idx = SphereIndex::enumerate(&g, 6, BUDGET).unwrap();
        for (i, el) in idx.elements().iter().enumerate() {
            assert_eq!(idx.index_of(el), Some(i));
        }
        for r in 0..=6 {
            assert!(idx.ball(r).iter().all(|g| g.len() <= r));
            for k in 0..=r {
                assert!(idx.sphere(k).iter().all(|g| g.len() == k));
            }
        }
    }

    #[test]
    fn thickened_spheres() {
        let f2 = Group::free(2).unwrap();
        let idx = SphereIndex::enumerate(&f2, 4, BUDGET).unwrap();
        assert_eq!(idx.thickened(2.0, 0.0).count(), 12);
        assert_eq!(idx.thickened(2.0, 1.0).count(), 4 + 12 + 36);
        assert_eq!(idx.thickened(2.5, 0.0).count(), 0);
        assert_eq!(idx.thickened(0.0, 0.5).count(), 1);
        assert!(in_thickened(3, 2.5, 0.5));
        assert!(!in_thickened(3, 2.4, 0.5));
    }

    #[test]
    fn growth_fits() {
        let z2 = Group::free_abelian(2).unwrap();
        let fit = growth_fit(&SphereIndex::enumerate(&z2, 3, BUDGET).unwrap(), 1e6).unwrap();
        assert_eq!((fit.c, fit.s, fit.polynomial), (4.0, 1, true));

        let z = Group::free_abelian(1).unwrap();
        let fit = growth_fit(&SphereIndex::enumerate(&z, 6, BUDGET).unwrap(), 1e6).unwrap();
        assert_eq!((fit.c, fit.s, fit.polynomial), (2.0, 0, true));

        let f2 = Group::free(2).unwrap();
        let fit = growth_fit(&SphereIndex::enumerate(&f2, 8, BUDGET).unwrap(), 1e6).unwrap();
        assert!(!fit.polynomial);

        let small = SphereIndex::enumerate(&z2, 2, BUDGET).unwrap();
        assert!(growth_fit(&small, 1e6).is_err());
    }

    #[test]
    fn growth_fit_bound_holds() {
        let z3 = Group::free_abelian(3).unwrap();
        let idx = SphereIndex::enumerate(&z3, 6, BUDGET).unwrap();
        let fit = growth_fit(&idx, 1e6).unwrap();
        assert_eq!(fit.s, 2);
        for (k, &n) in idx.sizes().iter().enumerate() {
            assert!(n as f64 <= fit.c * (1.0 + k as f64).powi(fit.s as i32));
        }
    }
}
