//! Word groups with exact normal forms.
//!
//! Three families are supported, each with a normal form that is also a
//! geodesic word for the standard symmetric generating set:
//!
//! * `F_d`: freely reduced words;
//! * `Z^d`: all letters of the first coordinate, then the second, and so on;
//! * `Z_{n_1} * ... * Z_{n_k}`: alternating syllables, each syllable `x_i^e`
//!   written with `e` positive letters when `e <= n_i / 2` and with `n_i - e`
//!   inverse letters otherwise.
//!
//! Because the normal form is geodesic, word length is just the number of
//! letters and every prefix of the normal form is again a normal form.

mod parse;
mod spheres;

pub use parse::{format_word, parse_word};
pub use spheres::{growth_fit, in_thickened, GrowthFit, SphereIndex};

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A signed generator index: `+i` is generator `i` (1-based), `-i` its inverse.
pub type Letter = i8;

/// Normal-form word storage.
pub type Word = SmallVec<[Letter; 16]>;

/// Largest number of generators a group may have (letters are `i8`).
pub const MAX_GENERATORS: usize = 127;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupKind {
    Free { rank: usize },
    FreeAbelian { rank: usize },
    FreeProductCyclic { orders: Vec<u32> },
}

/// A finitely generated word group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Group {
    kind: GroupKind,
    id: u32,
}

/// A group element stored as its normal-form word.
///
/// Elements carry the identifier of their owning group; equality compares
/// both the group and the word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    group: u32,
    word: Word,
}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.group.hash(state);
        self.word.as_slice().hash(state);
    }
}

/// Shortlex: shorter words first, then lexicographic on letters.
impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then_with(|| self.word.as_slice().cmp(other.word.as_slice()))
            .then_with(|| self.group.cmp(&other.group))
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl GroupElement {
    /// The normal-form word.
    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    /// Word length with respect to the standard generating set.
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn group_id(&self) -> u32 {
        self.group
    }
}

fn fnv1a(bytes: &[u8]) -> u32 {
    let mut h: u32 = 0x811c_9dc5;
    for b in bytes {
        h ^= u32::from(*b);
        h = h.wrapping_mul(0x0100_0193);
    }
    h
}

impl Group {
    pub fn new(kind: GroupKind) -> Result<Self> {
        match &kind {
            GroupKind::Free { rank } | GroupKind::FreeAbelian { rank } => {
                if *rank == 0 || *rank > MAX_GENERATORS {
                    return Err(Error::InvalidGroup(format!(
                        "rank must be in 1..={MAX_GENERATORS}, got {rank}"
                    )));
                }
            }
            GroupKind::FreeProductCyclic { orders } => {
                if orders.is_empty() || orders.len() > MAX_GENERATORS {
                    return Err(Error::InvalidGroup(format!(
                        "need 1..={MAX_GENERATORS} cyclic factors, got {}",
                        orders.len()
                    )));
                }
                if let Some(n) = orders.iter().find(|&&n| n < 2) {
                    return Err(Error::InvalidGroup(format!(
                        "cyclic factor orders must be at least 2, got {n}"
                    )));
                }
            }
        }
        let mut g = Group { kind, id: 0 };
        g.id = fnv1a(g.spec().as_bytes());
        Ok(g)
    }

    pub fn free(rank: usize) -> Result<Self> {
        Self::new(GroupKind::Free { rank })
    }

    pub fn free_abelian(rank: usize) -> Result<Self> {
        Self::new(GroupKind::FreeAbelian { rank })
    }

    pub fn free_product_cyclic(orders: &[u32]) -> Result<Self> {
        Self::new(GroupKind::FreeProductCyclic {
            orders: orders.to_vec(),
        })
    }

    /// Parse `free:d`, `zd:d` or `fpc:n1,n2,...`.
    pub fn parse(spec: &str) -> Result<Self> {
        parse::parse_group_spec(spec)
    }

    /// The canonical specification string, inverse of [`Group::parse`].
    pub fn spec(&self) -> String {
        match &self.kind {
            GroupKind::Free { rank } => format!("free:{rank}"),
            GroupKind::FreeAbelian { rank } => format!("zd:{rank}"),
            GroupKind::FreeProductCyclic { orders } => {
                let parts: Vec<String> = orders.iter().map(u32::to_string).collect();
                format!("fpc:{}", parts.join(","))
            }
        }
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn id(&self) -> u32 {
        self.id
    }

    pub fn is_free(&self) -> bool {
        matches!(self.kind, GroupKind::Free { .. })
    }

    /// Number of generators (cyclic factors for free products).
    pub fn rank(&self) -> usize {
        match &self.kind {
            GroupKind::Free { rank } | GroupKind::FreeAbelian { rank } => *rank,
            GroupKind::FreeProductCyclic { orders } => orders.len(),
        }
    }

    /// Order of generator `i` (0-based), `None` when it has infinite order.
    pub fn generator_order(&self, i: usize) -> Option<u32> {
        match &self.kind {
            GroupKind::FreeProductCyclic { orders } => orders.get(i).copied(),
            _ => None,
        }
    }

    /// The symmetric generating set as letters `±1, ..., ±rank`.
    pub fn letters(&self) -> Vec<Letter> {
        let r = self.rank() as Letter;
        (1..=r).flat_map(|i| [i, -i]).collect()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            group: self.id,
            word: Word::new(),
        }
    }

    /// Generator `i` (0-based).
    pub fn generator(&self, i: usize) -> Result<GroupElement> {
        if i >= self.rank() {
            return Err(Error::OutOfRange {
                what: "generator index",
                detail: format!("{i} >= rank {}", self.rank()),
            });
        }
        self.from_letters(&[(i + 1) as Letter])
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.group == self.id
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if g.group == self.id {
            Ok(())
        } else {
            Err(Error::MismatchedGroups)
        }
    }

    /// Normal form of an arbitrary product of letters.
    pub fn from_letters(&self, letters: &[Letter]) -> Result<GroupElement> {
        let r = self.rank() as i32;
        for &l in letters {
            let a = i32::from(l).abs();
            if a == 0 || a > r {
                return Err(Error::OutOfRange {
                    what: "generator letter",
                    detail: format!("{l} not in ±1..=±{r}"),
                });
            }
        }
        let word = match &self.kind {
            GroupKind::Free { .. } => free_reduce(letters.iter().copied()),
            GroupKind::FreeAbelian { rank } => {
                let mut exps = vec![0i64; *rank];
                accumulate_exponents(letters, &mut exps);
                abelian_word(&exps)
            }
            GroupKind::FreeProductCyclic { orders } => {
                let mut stack = SyllableStack::default();
                for &l in letters {
                    stack.push(l.unsigned_abs(), i64::from(l.signum()), orders);
                }
                stack.render(orders)
            }
        };
        Ok(GroupElement {
            group: self.id,
            word,
        })
    }

    /// Element of `Z^d` from its exponent vector.
    pub fn from_exponents(&self, exps: &[i64]) -> Result<GroupElement> {
        match &self.kind {
            GroupKind::FreeAbelian { rank } if *rank == exps.len() => Ok(GroupElement {
                group: self.id,
                word: abelian_word(exps),
            }),
            GroupKind::FreeAbelian { rank } => Err(Error::DimensionMismatch {
                expected: *rank,
                found: exps.len(),
            }),
            _ => Err(Error::InvalidGroup(format!(
                "exponent vectors need a free abelian group, not {}",
                self.spec()
            ))),
        }
    }

    /// Exponent vector of an element of `Z^d`.
    pub fn exponents(&self, g: &GroupElement) -> Option<Vec<i64>> {
        match &self.kind {
            GroupKind::FreeAbelian { rank } => {
                let mut exps = vec![0i64; *rank];
                accumulate_exponents(&g.word, &mut exps);
                Some(exps)
            }
            _ => None,
        }
    }

    /// Normal form of `ab`.
    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub(crate) fn mul_unchecked(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let word = match &self.kind {
            GroupKind::Free { .. } => {
                free_reduce(a.word.iter().copied().chain(b.word.iter().copied()))
            }
            GroupKind::FreeAbelian { rank } => {
                let mut exps = vec![0i64; *rank];
                accumulate_exponents(&a.word, &mut exps);
                accumulate_exponents(&b.word, &mut exps);
                abelian_word(&exps)
            }
            GroupKind::FreeProductCyclic { orders } => {
                let mut stack = SyllableStack::from_word(&a.word);
                for (gen, e) in syllables(&b.word) {
                    stack.push(gen, e, orders);
                }
                stack.render(orders)
            }
        };
        GroupElement {
            group: self.id,
            word,
        }
    }

    /// `g⁻¹`. Panics in debug builds when `g` belongs to another group.
    pub fn inverse(&self, g: &GroupElement) -> GroupElement {
        debug_assert_eq!(g.group, self.id, "element of a different group");
        let word = match &self.kind {
            GroupKind::Free { .. } => g.word.iter().rev().map(|l| -l).collect(),
            GroupKind::FreeAbelian { .. } => g.word.iter().map(|l| -l).collect(),
            GroupKind::FreeProductCyclic { orders } => {
                let mut out = Word::new();
                let sy = syllables(&g.word);
                for &(gen, e) in sy.iter().rev() {
                    render_syllable(gen, -e, orders[gen as usize - 1], &mut out);
                }
                out
            }
        };
        GroupElement {
            group: self.id,
            word,
        }
    }

    /// Word length `|g|`.
    pub fn length(&self, g: &GroupElement) -> usize {
        g.word.len()
    }

    /// The integer `p` with `2p <= |a| + |b| - |ab| < 2p + 2`.
    pub fn cancellation_number(&self, a: &GroupElement, b: &GroupElement) -> Result<usize> {
        let ab = self.multiply(a, b)?;
        Ok((a.len() + b.len() - ab.len()) / 2)
    }

    /// The element made of the first `k` letters of the normal form of `g`.
    pub fn prefix(&self, g: &GroupElement, k: usize) -> GroupElement {
        let k = k.min(g.word.len());
        GroupElement {
            group: self.id,
            word: g.word[..k].iter().copied().collect(),
        }
    }

    /// The element made of the last `k` letters of the normal form of `g`.
    pub fn suffix(&self, g: &GroupElement, k: usize) -> GroupElement {
        let k = k.min(g.word.len());
        let start = g.word.len() - k;
        GroupElement {
            group: self.id,
            word: g.word[start..].iter().copied().collect(),
        }
    }

    /// Parse an element literal (`x1 x2^-1`, `(2,-1)`, `s t^2`, `e`).
    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        parse_word(self, text)
    }

    /// Render an element in the literal syntax accepted by [`Group::parse_element`].
    pub fn format_element(&self, g: &GroupElement) -> String {
        format_word(self, g)
    }

    /// Exact sizes `|C_0|, ..., |C_R|`, computed without enumeration.
    pub fn sphere_sizes(&self, radius: usize) -> Vec<u128> {
        spheres::sphere_sizes(self, radius)
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec())
    }
}

fn free_reduce(letters: impl Iterator<Item = Letter>) -> Word {
    let mut out = Word::new();
    for l in letters {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn accumulate_exponents(word: &[Letter], exps: &mut [i64]) {
    for &l in word {
        exps[l.unsigned_abs() as usize - 1] += i64::from(l.signum());
    }
}

fn abelian_word(exps: &[i64]) -> Word {
    let mut out = Word::new();
    for (i, &e) in exps.iter().enumerate() {
        let letter = (i + 1) as Letter * e.signum() as Letter;
        for _ in 0..e.unsigned_abs() {
            out.push(letter);
        }
    }
    out
}

/// Runs of equal letters as `(generator, signed run length)`.
fn syllables(word: &[Letter]) -> SmallVec<[(u8, i64); 8]> {
    let mut out: SmallVec<[(u8, i64); 8]> = SmallVec::new();
    for &l in word {
        let gen = l.unsigned_abs();
        let sign = i64::from(l.signum());
        match out.last_mut() {
            Some((g, e)) if *g == gen => *e += sign,
            _ => out.push((gen, sign)),
        }
    }
    out
}

fn render_syllable(gen: u8, exp: i64, order: u32, out: &mut Word) {
    let n = i64::from(order);
    let e = exp.rem_euclid(n);
    if e == 0 {
        return;
    }
    let (letter, count) = if 2 * e <= n {
        (gen as Letter, e)
    } else {
        (-(gen as Letter), n - e)
    };
    for _ in 0..count {
        out.push(letter);
    }
}

/// Reduced syllables `(generator, exponent mod order)` of a free product.
#[derive(Default)]
struct SyllableStack {
    items: SmallVec<[(u8, i64); 8]>,
}

impl SyllableStack {
    fn from_word(word: &[Letter]) -> Self {
        SyllableStack {
            items: syllables(word),
        }
    }

    fn push(&mut self, gen: u8, e: i64, orders: &[u32]) {
        let n = i64::from(orders[gen as usize - 1]);
        let e = e.rem_euclid(n);
        if e == 0 {
            return;
        }
        if let Some((g, top)) = self.items.last_mut() {
            if *g == gen {
                let merged = (*top + e).rem_euclid(n);
                if merged == 0 {
                    self.items.pop();
                } else {
                    *top = merged;
                }
                return;
            }
        }
        self.items.push((gen, e));
    }

    fn render(&self, orders: &[u32]) -> Word {
        let mut out = Word::new();
        for &(gen, e) in &self.items {
            render_syllable(gen, e, orders[gen as usize - 1], &mut out);
        }
        out
    }
}
