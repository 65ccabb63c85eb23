//! Trial specifications and seeded samplers.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::coeffalg::{random_unitary, CoeffOp, GroupAction, C64};
use crate::crossed::CpElement;
use crate::error::{Error, Result};
use crate::groups::{Group, GroupElement, SphereIndex};

/// Independent RNG stream: ChaCha8 keyed by `sha256(seed ‖ name ‖ 0 ‖ index)`.
pub fn stream(seed: u64, name: &str, index: u64) -> ChaCha8Rng {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(name.as_bytes());
    h.update([0u8]);
    h.update(index.to_le_bytes());
    let digest = h.finalize();
    let mut key = [0u8; 32];
    key.copy_from_slice(&digest);
    ChaCha8Rng::from_seed(key)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoeffSampler {
    /// i.i.d. standard complex Gaussian entries
    #[default]
    Gaussian,
    /// Haar-random unitaries
    Unitary,
    /// `u v*` for independent unit Gaussian vectors
    RankOne,
}

impl fmt::Display for CoeffSampler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoeffSampler::Gaussian => "gaussian",
            CoeffSampler::Unitary => "unitary",
            CoeffSampler::RankOne => "rank-one",
        })
    }
}

impl FromStr for CoeffSampler {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "gaussian" => Ok(CoeffSampler::Gaussian),
            "unitary" => Ok(CoeffSampler::Unitary),
            "rank-one" | "rank1" | "rankone" => Ok(CoeffSampler::RankOne),
            other => Err(Error::parse(
                "coefficient sampler",
                0,
                format!("unknown sampler `{other}` (gaussian, unitary, rank-one)"),
            )),
        }
    }
}

impl CoeffSampler {
    pub fn sample<R: Rng + ?Sized>(&self, n: usize, scale: f64, rng: &mut R) -> CoeffOp {
        let gauss = |rng: &mut R| {
            C64::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
                * std::f64::consts::FRAC_1_SQRT_2
        };
        let m = match self {
            CoeffSampler::Gaussian => nalgebra::DMatrix::from_fn(n, n, |_, _| gauss(rng)),
            CoeffSampler::Unitary => random_unitary(n, rng),
            CoeffSampler::RankOne => {
                let unit = |rng: &mut R| {
                    let v = nalgebra::DVector::from_fn(n, |_, _| gauss(rng));
                    let nv = v.norm();
                    if nv == 0.0 {
                        nalgebra::DVector::from_element(n, C64::new(1.0 / (n as f64).sqrt(), 0.0))
                    } else {
                        v / C64::new(nv, 0.0)
                    }
                };
                let u = unit(rng);
                let v = unit(rng);
                &u * v.adjoint()
            }
        };
        CoeffOp::from_matrix(m * C64::new(scale, 0.0)).expect("square by construction")
    }
}

/// Which group elements carry coefficients, relative to a radius `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SupportSampler {
    /// all of `C_k`
    FullSphere,
    /// `size` distinct elements of `C_k`
    SphereSubset(usize),
    /// `size` distinct elements of `B_k`
    BallSubset(usize),
}

impl Default for SupportSampler {
    fn default() -> Self {
        SupportSampler::SphereSubset(4)
    }
}

impl fmt::Display for SupportSampler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SupportSampler::FullSphere => f.write_str("sphere"),
            SupportSampler::SphereSubset(s) => write!(f, "sphere-subset:{s}"),
            SupportSampler::BallSubset(s) => write!(f, "ball-subset:{s}"),
        }
    }
}

impl FromStr for SupportSampler {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        let size = || -> Result<usize> {
            let a = arg.ok_or_else(|| Error::parse("support sampler", 0, format!("`{head}` needs a size")))?;
            let v: usize = a
                .trim()
                .parse()
                .map_err(|_| Error::parse("support sampler", head.len() + 1, format!("bad size `{a}`")))?;
            if v == 0 {
                return Err(Error::parse("support sampler", head.len() + 1, "size must be positive"));
            }
            Ok(v)
        };
        match head {
            "sphere" | "full-sphere" if arg.is_none() => Ok(SupportSampler::FullSphere),
            "sphere-subset" => Ok(SupportSampler::SphereSubset(size()?)),
            "ball-subset" => Ok(SupportSampler::BallSubset(size()?)),
            _ => Err(Error::parse(
                "support sampler",
                0,
                format!("unknown sampler `{s}` (sphere, sphere-subset:N, ball-subset:N)"),
            )),
        }
    }
}

impl SupportSampler {
    /// Distinct support elements, in shortlex order.
    pub fn sample<R: Rng + ?Sized>(&self, index: &SphereIndex, k: usize, rng: &mut R) -> Vec<GroupElement> {
        let pool: &[GroupElement] = match self {
            SupportSampler::FullSphere => return index.sphere(k).to_vec(),
            SupportSampler::SphereSubset(_) => index.sphere(k),
            SupportSampler::BallSubset(_) => index.ball(k),
        };
        let size = match self {
            SupportSampler::SphereSubset(s) | SupportSampler::BallSubset(s) => *s,
            SupportSampler::FullSphere => unreachable!(),
        };
        if size >= pool.len() {
            return pool.to_vec();
        }
        let mut picks = rand::seq::index::sample(rng, pool.len(), size).into_vec();
        picks.sort_unstable();
        picks.into_iter().map(|i| pool[i].clone()).collect()
    }
}

/// Everything needed to reproduce a batch of random trials.
#[derive(Clone, Debug)]
pub struct TrialSpec {
    pub action: Arc<GroupAction>,
    pub coeff: CoeffSampler,
    pub scale: f64,
    pub support: SupportSampler,
    pub trials: usize,
    pub seed: u64,
}

impl TrialSpec {
    pub fn new(action: Arc<GroupAction>) -> Self {
        TrialSpec {
            action,
            coeff: CoeffSampler::default(),
            scale: 1.0,
            support: SupportSampler::default(),
            trials: 10,
            seed: 0,
        }
    }

    /// From textual group and action specifications.
    pub fn parse(group: &str, action: &str) -> Result<Self> {
        let g = Group::parse(group)?;
        Ok(Self::new(Arc::new(GroupAction::parse(&g, action)?)))
    }

    pub fn coeff(mut self, c: CoeffSampler) -> Self {
        self.coeff = c;
        self
    }

    pub fn scale(mut self, s: f64) -> Self {
        self.scale = s;
        self
    }

    pub fn support(mut self, s: SupportSampler) -> Self {
        self.support = s;
        self
    }

    pub fn trials(mut self, t: usize) -> Self {
        self.trials = t;
        self
    }

    pub fn seed(mut self, s: u64) -> Self {
        self.seed = s;
        self
    }

    pub fn group(&self) -> &Group {
        self.action.group()
    }

    pub fn dim(&self) -> usize {
        self.action.dim()
    }

    /// A random element supported at radius `k`.
    pub fn sample<R: Rng + ?Sized>(&self, index: &SphereIndex, k: usize, rng: &mut R) -> Result<CpElement> {
        let support = self.support.sample(index, k, rng);
        let n = self.dim();
        let terms: Vec<(GroupElement, CoeffOp)> = support
            .into_iter()
            .map(|g| (g, self.coeff.sample(n, self.scale, rng)))
            .collect();
        CpElement::from_terms(self.action.clone(), terms)
    }
}
