//! Actions of a word group on `M_n(C)` by inner automorphisms `a ↦ U_g a U_g*`.
//!
//! Actions are specified by the images of the generators. Text forms:
//!
//! * `trivial:n`
//! * `perm:n:g1=(0 1)(2 3),g2=cycle(1 2)` with 0-based points; unlisted
//!   generators act trivially
//! * `unitary:file=<path>`: one matrix per generator, blank-line separated
//! * `randperm:n[:seed]`, `randunitary:n[:seed]`: seeded random images that
//!   satisfy the group relations

use std::fmt;
use std::path::PathBuf;

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{parse_complex, CoeffOp, C64};
use crate::error::{Error, Result};
use crate::groups::{Group, GroupElement, GroupKind};

/// Tolerance for unitarity and relation checks of general unitaries.
pub const UNITARY_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionKind {
    Trivial,
    Permutation,
    Unitary,
}

/// Parsed action text, before it is bound to a group.
#[derive(Clone, Debug, PartialEq)]
pub enum ActionSpec {
    Trivial { dim: usize },
    Perm { dim: usize, images: Vec<(usize, Vec<usize>)> },
    UnitaryFile { path: PathBuf },
    RandomPerm { dim: usize, seed: u64 },
    RandomUnitary { dim: usize, seed: u64 },
}

/// The unitary implementing `α_g`.
#[derive(Clone, Debug)]
pub enum Implementer {
    Identity,
    /// `U e_i = e_{σ(i)}`.
    Perm(Vec<usize>),
    Unitary(DMatrix<C64>),
}

impl Implementer {
    /// `U a U*`.
    pub fn conjugate(&self, a: &CoeffOp) -> CoeffOp {
        match self {
            Implementer::Identity => a.clone(),
            Implementer::Perm(sigma) => {
                let n = sigma.len();
                let m = a.matrix();
                let mut out = DMatrix::zeros(n, n);
                for j in 0..n {
                    for i in 0..n {
                        out[(sigma[i], sigma[j])] = m[(i, j)];
                    }
                }
                CoeffOp::from_matrix(out).expect("square")
            }
            Implementer::Unitary(_) if a.is_scalar() => a.clone(),
            Implementer::Unitary(u) => {
                CoeffOp::from_matrix(u * a.matrix() * u.adjoint()).expect("square")
            }
        }
    }

    pub fn to_matrix(&self, n: usize) -> DMatrix<C64> {
        match self {
            Implementer::Identity => DMatrix::identity(n, n),
            Implementer::Perm(sigma) => perm_matrix(sigma),
            Implementer::Unitary(u) => u.clone(),
        }
    }
}

fn perm_matrix(sigma: &[usize]) -> DMatrix<C64> {
    let n = sigma.len();
    let mut m = DMatrix::zeros(n, n);
    for (i, &s) in sigma.iter().enumerate() {
        m[(s, i)] = C64::new(1.0, 0.0);
    }
    m
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    // (p ∘ q)(i) = p(q(i)), i.e. U_p U_q
    q.iter().map(|&i| p[i]).collect()
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &s) in p.iter().enumerate() {
        inv[s] = i;
    }
    inv
}

#[derive(Clone, Debug)]
enum Images {
    Trivial,
    Perm(Vec<Vec<usize>>),
    Unitary(Vec<DMatrix<C64>>),
}

/// A validated action of `group` on `M_dim(C)`.
#[derive(Clone, Debug)]
pub struct GroupAction {
    group: Group,
    dim: usize,
    images: Images,
    spec: String,
}

impl fmt::Display for GroupAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec)
    }
}

impl GroupAction {
    pub fn trivial(group: &Group, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidAction("dimension must be positive".into()));
        }
        Ok(GroupAction {
            group: group.clone(),
            dim,
            images: Images::Trivial,
            spec: format!("trivial:{dim}"),
        })
    }

    /// Generator `i` (0-based) maps to `U e_j = e_{perms[i][j]}`.
    pub fn permutation(group: &Group, dim: usize, perms: Vec<Vec<usize>>) -> Result<Self> {
        if perms.len() != group.rank() {
            return Err(Error::InvalidAction(format!(
                "{} generator images for a group of rank {}",
                perms.len(),
                group.rank()
            )));
        }
        for (i, p) in perms.iter().enumerate() {
            let mut seen = vec![false; dim];
            if p.len() != dim || p.iter().any(|&j| j >= dim || std::mem::replace(&mut seen[j], true)) {
                return Err(Error::InvalidAction(format!(
                    "image of generator {} is not a permutation of 0..{dim}",
                    i + 1
                )));
            }
        }
        let action = GroupAction {
            group: group.clone(),
            dim,
            spec: render_perm_spec(dim, &perms),
            images: Images::Perm(perms),
        };
        action.check_relations()?;
        Ok(action)
    }

    pub fn unitary(group: &Group, mats: Vec<DMatrix<C64>>, spec: impl Into<String>) -> Result<Self> {
        if mats.len() != group.rank() {
            return Err(Error::InvalidAction(format!(
                "{} generator images for a group of rank {}",
                mats.len(),
                group.rank()
            )));
        }
        let dim = mats.first().map_or(1, |m| m.nrows());
        for (i, u) in mats.iter().enumerate() {
            if u.nrows() != dim || u.ncols() != dim {
                return Err(Error::InvalidAction(format!(
                    "image of generator {} is not {dim}x{dim}",
                    i + 1
                )));
            }
            let dev = max_dev(&(u.adjoint() * u), &DMatrix::identity(dim, dim));
            if dev > UNITARY_TOL {
                return Err(Error::InvalidAction(format!(
                    "image of generator {} is not unitary (deviation {dev:.3e})",
                    i + 1
                )));
            }
        }
        let action = GroupAction {
            group: group.clone(),
            dim,
            images: Images::Unitary(mats),
            spec: spec.into(),
        };
        action.check_relations()?;
        Ok(action)
    }

    pub fn parse(group: &Group, text: &str) -> Result<Self> {
        ActionSpec::parse(text)?.build(group)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> ActionKind {
        match self.images {
            Images::Trivial => ActionKind::Trivial,
            Images::Perm(_) => ActionKind::Permutation,
            Images::Unitary(_) => ActionKind::Unitary,
        }
    }

    pub fn spec(&self) -> &str {
        &self.spec
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self.images, Images::Trivial)
    }

    /// Same group, dimension and generator images.
    pub fn same_as(&self, other: &GroupAction) -> bool {
        if self.group != other.group || self.dim != other.dim {
            return false;
        }
        match (&self.images, &other.images) {
            (Images::Trivial, Images::Trivial) => true,
            (Images::Perm(a), Images::Perm(b)) => a == b,
            (Images::Unitary(a), Images::Unitary(b)) => a == b,
            _ => false,
        }
    }

    /// The unitary `U_g`, multiplied out along the normal form of `g`.
    pub fn implementer(&self, g: &GroupElement) -> Implementer {
        debug_assert!(self.group.contains(g));
        match &self.images {
            Images::Trivial => Implementer::Identity,
            Images::Perm(perms) => {
                let mut acc: Vec<usize> = (0..self.dim).collect();
                for &l in g.word() {
                    let p = &perms[l.unsigned_abs() as usize - 1];
                    acc = if l > 0 { compose(&acc, p) } else { compose(&acc, &invert(p)) };
                }
                if acc.iter().enumerate().all(|(i, &s)| i == s) {
                    Implementer::Identity
                } else {
                    Implementer::Perm(acc)
                }
            }
            Images::Unitary(mats) => {
                if g.is_identity() {
                    return Implementer::Identity;
                }
                let mut acc = DMatrix::<C64>::identity(self.dim, self.dim);
                for &l in g.word() {
                    let u = &mats[l.unsigned_abs() as usize - 1];
                    acc = if l > 0 { &acc * u } else { &acc * u.adjoint() };
                }
                Implementer::Unitary(acc)
            }
        }
    }

    /// `α_g(a) = U_g a U_g*`.
    pub fn apply(&self, g: &GroupElement, a: &CoeffOp) -> Result<CoeffOp> {
        if a.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: a.dim(),
            });
        }
        if !self.group.contains(g) {
            return Err(Error::MismatchedGroups);
        }
        Ok(self.implementer(g).conjugate(a))
    }

    fn generator_matrix(&self, i: usize) -> DMatrix<C64> {
        match &self.images {
            Images::Trivial => DMatrix::identity(self.dim, self.dim),
            Images::Perm(p) => perm_matrix(&p[i]),
            Images::Unitary(u) => u[i].clone(),
        }
    }

    /// Deviation of the generator images from the group relations.
    pub fn relation_defect(&self) -> f64 {
        let n = self.dim;
        let id = DMatrix::<C64>::identity(n, n);
        let mut defect = 0.0f64;
        match self.group.kind() {
            GroupKind::Free { .. } => {}
            GroupKind::FreeAbelian { rank } => {
                for i in 0..*rank {
                    for j in i + 1..*rank {
                        let a = self.generator_matrix(i);
                        let b = self.generator_matrix(j);
                        defect = defect.max(max_dev(&(&a * &b), &(&b * &a)));
                    }
                }
            }
            GroupKind::FreeProductCyclic { orders } => {
                for (i, &m) in orders.iter().enumerate() {
                    let u = self.generator_matrix(i);
                    let mut pow = id.clone();
                    for _ in 0..m {
                        pow = &pow * &u;
                    }
                    defect = defect.max(max_dev(&pow, &id));
                }
            }
        }
        defect
    }

    fn check_relations(&self) -> Result<()> {
        let tol = match self.images {
            Images::Unitary(_) => UNITARY_TOL,
            _ => 0.0,
        };
        let d = self.relation_defect();
        if d > tol {
            return Err(Error::InvalidAction(format!(
                "generator images violate the relations of {} (defect {d:.3e})",
                self.group.spec()
            )));
        }
        Ok(())
    }
}

fn max_dev(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn render_perm_spec(dim: usize, perms: &[Vec<usize>]) -> String {
    let mut parts = Vec::new();
    for (i, p) in perms.iter().enumerate() {
        let mut seen = vec![false; dim];
        let mut cycles = String::new();
        for start in 0..dim {
            if seen[start] || p[start] == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                cyc.push(j.to_string());
                j = p[j];
            }
            cycles.push_str(&format!("({})", cyc.join(" ")));
        }
        if !cycles.is_empty() {
            parts.push(format!("g{}={cycles}", i + 1));
        }
    }
    if parts.is_empty() {
        format!("perm:{dim}")
    } else {
        format!("perm:{dim}:{}", parts.join(","))
    }
}

impl ActionSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let (family, rest) = text.split_once(':').unwrap_or((text, ""));
        let at = family.len() + 1;
        let dim = |s: &str| -> Result<usize> {
            match s.trim().parse::<usize>() {
                Ok(n) if n > 0 => Ok(n),
                _ => Err(Error::parse("action spec", at, format!("expected a positive dimension, got `{s}`"))),
            }
        };
        let dim_seed = |s: &str| -> Result<(usize, u64)> {
            let (d, seed) = s.split_once(':').unwrap_or((s, "0"));
            let seed = seed
                .trim()
                .parse::<u64>()
                .map_err(|_| Error::parse("action spec", at + d.len() + 1, format!("bad seed `{seed}`")))?;
            Ok((dim(d)?, seed))
        };
        match family {
            "trivial" => Ok(ActionSpec::Trivial { dim: dim(rest)? }),
            "perm" => {
                let (d, gens) = rest.split_once(':').unwrap_or((rest, ""));
                let n = dim(d)?;
                let mut images = Vec::new();
                let mut pos = at + d.len() + 1;
                for item in split_top_level(gens) {
                    if !item.trim().is_empty() {
                        images.push(parse_perm_image(item, n, pos)?);
                    }
                    pos += item.len() + 1;
                }
                Ok(ActionSpec::Perm { dim: n, images })
            }
            "unitary" => {
                let path = rest
                    .strip_prefix("file=")
                    .ok_or_else(|| Error::parse("action spec", at, "expected `unitary:file=<path>`"))?;
                Ok(ActionSpec::UnitaryFile { path: PathBuf::from(path) })
            }
            "randperm" => {
                let (dim, seed) = dim_seed(rest)?;
                Ok(ActionSpec::RandomPerm { dim, seed })
            }
            "randunitary" => {
                let (dim, seed) = dim_seed(rest)?;
                Ok(ActionSpec::RandomUnitary { dim, seed })
            }
            other => Err(Error::parse(
                "action spec",
                0,
                format!("unknown action `{other}` (expected trivial, perm, unitary, randperm or randunitary)"),
            )),
        }
    }

    pub fn build(&self, group: &Group) -> Result<GroupAction> {
        let rank = group.rank();
        match self {
            ActionSpec::Trivial { dim } => GroupAction::trivial(group, *dim),
            ActionSpec::Perm { dim, images } => {
                let mut perms: Vec<Vec<usize>> = vec![(0..*dim).collect(); rank];
                for (gen, p) in images {
                    if *gen == 0 || *gen > rank {
                        return Err(Error::InvalidAction(format!(
                            "generator g{gen} outside 1..={rank}"
                        )));
                    }
                    perms[gen - 1] = compose(&perms[gen - 1], p);
                }
                GroupAction::permutation(group, *dim, perms)
            }
            ActionSpec::UnitaryFile { path } => {
                let text = std::fs::read_to_string(path)?;
                let mats = parse_matrix_list(&text)?;
                GroupAction::unitary(group, mats, format!("unitary:file={}", path.display()))
            }
            ActionSpec::RandomPerm { dim, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let perms = random_perms(group, *dim, &mut rng);
                let mut a = GroupAction::permutation(group, *dim, perms)?;
                a.spec = format!("randperm:{dim}:{seed}");
                Ok(a)
            }
            ActionSpec::RandomUnitary { dim, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let mats = random_unitaries(group, *dim, &mut rng);
                GroupAction::unitary(group, mats, format!("randunitary:{dim}:{seed}"))
            }
        }
    }
}

/// Splits on commas that are not inside parentheses.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// `g2=(0 1)(2 3)` or `x2=cycle(0 1)`.
fn parse_perm_image(item: &str, n: usize, pos: usize) -> Result<(usize, Vec<usize>)> {
    let err = |msg: String| Error::parse("action spec", pos, msg);
    let (name, cycles) = item
        .split_once('=')
        .ok_or_else(|| err(format!("expected `g<i>=(...)`, got `{item}`")))?;
    let name = name.trim();
    let gen: usize = name
        .strip_prefix('g')
        .or_else(|| name.strip_prefix('x'))
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| err(format!("bad generator name `{name}`")))?;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut rest = cycles.trim();
    while !rest.is_empty() {
        rest = rest.strip_prefix("cycle").unwrap_or(rest).trim_start();
        let inner_end = rest.find(')').ok_or_else(|| err("unbalanced parentheses".into()))?;
        let inner = rest
            .strip_prefix('(')
            .map(|r| &r[..inner_end - 1])
            .ok_or_else(|| err(format!("expected `(` in `{cycles}`")))?;
        let pts: Vec<usize> = inner
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| err(format!("bad point `{t}`"))))
            .collect::<Result<_>>()?;
        if let Some(&p) = pts.iter().find(|&&p| p >= n) {
            return Err(err(format!("point {p} outside 0..{n}")));
        }
        let mut cyc: Vec<usize> = (0..n).collect();
        for w in 0..pts.len() {
            cyc[pts[w]] = pts[(w + 1) % pts.len()];
        }
        let mut check = pts.clone();
        check.sort_unstable();
        check.dedup();
        if check.len() != pts.len() {
            return Err(err(format!("repeated point in cycle ({inner})")));
        }
        // cycles written left to right are applied right to left
        perm = compose(&perm, &cyc);
        rest = rest[inner_end + 1..].trim_start();
    }
    Ok((gen, perm))
}

/// Matrices separated by blank lines; rows of whitespace-separated complex
/// literals; `#` starts a comment.
pub fn parse_matrix_list(text: &str) -> Result<Vec<DMatrix<C64>>> {
    let mut mats = Vec::new();
    let mut rows: Vec<Vec<C64>> = Vec::new();
    let flush = |rows: &mut Vec<Vec<C64>>, mats: &mut Vec<DMatrix<C64>>, line: usize| -> Result<()> {
        if rows.is_empty() {
            return Ok(());
        }
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::parse("matrix file", line, format!("matrix ending here is not {n}x{n}")));
        }
        let flat: Vec<C64> = rows.drain(..).flatten().collect();
        mats.push(DMatrix::from_row_slice(n, n, &flat));
        Ok(())
    };
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            flush(&mut rows, &mut mats, lineno + 1)?;
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| parse_complex(t).map_err(|_| Error::parse("matrix file", lineno + 1, format!("bad entry `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    flush(&mut rows, &mut mats, text.lines().count())?;
    Ok(mats)
}

/// Haar-distributed unitary via QR of a complex Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<C64> {
    let g = DMatrix::<C64>::from_fn(n, n, |_, _| {
        C64::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
    });
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

fn random_unitaries<R: Rng + ?Sized>(group: &Group, n: usize, rng: &mut R) -> Vec<DMatrix<C64>> {
    let rank = group.rank();
    match group.kind() {
        GroupKind::Free { .. } => (0..rank).map(|_| random_unitary(n, rng)).collect(),
        GroupKind::FreeAbelian { .. } => {
            let q = random_unitary(n, rng);
            (0..rank)
                .map(|_| {
                    let phases: Vec<C64> = (0..n)
                        .map(|_| C64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU)))
                        .collect();
                    &q * DMatrix::from_diagonal(&nalgebra::DVector::from_vec(phases)) * q.adjoint()
                })
                .collect()
        }
        GroupKind::FreeProductCyclic { orders } => orders
            .iter()
            .map(|&m| {
                let q = random_unitary(n, rng);
                let phases: Vec<C64> = (0..n)
                    .map(|_| {
                        let k = rng.random_range(0..m);
                        C64::from_polar(1.0, std::f64::consts::TAU * f64::from(k) / f64::from(m))
                    })
                    .collect();
                &q * DMatrix::from_diagonal(&nalgebra::DVector::from_vec(phases)) * q.adjoint()
            })
            .collect(),
    }
}

fn random_perms<R: Rng + ?Sized>(group: &Group, n: usize, rng: &mut R) -> Vec<Vec<usize>> {
    let shuffled = |rng: &mut R| {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(rng);
        p
    };
    match group.kind() {
        GroupKind::Free { rank } => (0..*rank).map(|_| shuffled(rng)).collect(),
        GroupKind::FreeAbelian { rank } => {
            let base = shuffled(rng);
            (0..*rank)
                .map(|_| {
                    let k = rng.random_range(1..=n.max(1));
                    let mut p: Vec<usize> = (0..n).collect();
                    for _ in 0..k {
                        p = compose(&p, &base);
                    }
                    p
                })
                .collect()
        }
        GroupKind::FreeProductCyclic { orders } => orders
            .iter()
            .map(|&m| {
                // disjoint cycles of length m, remaining points fixed
                let m = m as usize;
                let mut pts: Vec<usize> = (0..n).collect();
                pts.shuffle(rng);
                let mut p: Vec<usize> = (0..n).collect();
                if m >= 2 {
                    for chunk in pts.chunks_exact(m) {
                        for w in 0..m {
                            p[chunk[w]] = chunk[(w + 1) % m];
                        }
                    }
                }
                p
            })
            .collect(),
    }
}
