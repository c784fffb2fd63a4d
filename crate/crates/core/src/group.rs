//! Canonical normal forms, word metric, and ball/shell enumeration for the
//! built-in group families: integer lattices `Z^d` (with the standard `±e_i`
//! generators or the box `ℓ∞` set), free groups `F_n`, and the discrete
//! Heisenberg group.
//!
//! Elements are immutable values carrying their [`GroupSpec`]; every operation
//! is a pure function. Balls are open: `B_k = { g : |g| < k }`, so `B_1 = {e}`
//! and the shell `S_k = B_{k+1} \ B_k` is the sphere of word length exactly `k`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Generator choice for integer lattices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatticeGens {
    /// The standard symmetric set `{±e_1, …, ±e_d}` (word length = ℓ1 norm).
    Standard,
    /// All nonzero vectors of `{-1,0,1}^d` (word length = ℓ∞ norm).
    Box,
}

/// A built-in finitely generated group together with its symmetric generating set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GroupSpec {
    IntegerLattice { dim: u8, gens: LatticeGens },
    FreeGroup { rank: u8 },
    Heisenberg,
}

impl GroupSpec {
    pub fn lattice(dim: u8, gens: LatticeGens) -> Result<Self> {
        if dim == 0 {
            return Err(Error::validation("lattice dimension must be at least 1"));
        }
        Ok(GroupSpec::IntegerLattice { dim, gens })
    }

    pub fn free(rank: u8) -> Result<Self> {
        if rank == 0 {
            return Err(Error::validation("free group rank must be at least 1"));
        }
        Ok(GroupSpec::FreeGroup { rank })
    }

    pub fn heisenberg() -> Self {
        GroupSpec::Heisenberg
    }

    /// Identity element of this group.
    pub fn identity(&self) -> Element {
        let form = match self {
            GroupSpec::IntegerLattice { dim, .. } => Form::Lattice(vec![0; *dim as usize]),
            GroupSpec::FreeGroup { .. } => Form::Word(Vec::new()),
            GroupSpec::Heisenberg => Form::Heis([0, 0, 0]),
        };
        Element { spec: *self, form }
    }

    /// The symmetric generating set, in a fixed deterministic order.
    pub fn generators(&self) -> Vec<Element> {
        match self {
            GroupSpec::IntegerLattice { dim, gens } => {
                let d = *dim as usize;
                match gens {
                    LatticeGens::Standard => {
                        let mut out = Vec::with_capacity(2 * d);
                        for i in 0..d {
                            for sign in [1i64, -1] {
                                let mut v = vec![0i64; d];
                                v[i] = sign;
                                out.push(Element { spec: *self, form: Form::Lattice(v) });
                            }
                        }
                        out
                    }
                    LatticeGens::Box => {
                        let mut out = Vec::new();
                        let mut v = vec![-1i64; d];
                        loop {
                            if v.iter().any(|&c| c != 0) {
                                out.push(Element { spec: *self, form: Form::Lattice(v.clone()) });
                            }
                            let mut i = 0;
                            loop {
                                if i == d {
                                    out.sort();
                                    return out;
                                }
                                if v[i] < 1 {
                                    v[i] += 1;
                                    break;
                                }
                                v[i] = -1;
                                i += 1;
                            }
                        }
                    }
                }
            }
            GroupSpec::FreeGroup { rank } => {
                let mut out = Vec::with_capacity(2 * *rank as usize);
                for i in 1..=*rank as i8 {
                    out.push(Element { spec: *self, form: Form::Word(vec![i]) });
                    out.push(Element { spec: *self, form: Form::Word(vec![-i]) });
                }
                out
            }
            GroupSpec::Heisenberg => [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0]]
                .into_iter()
                .map(|t| Element { spec: *self, form: Form::Heis(t) })
                .collect(),
        }
    }

    /// Short human-readable name, e.g. `z2-box`, `f2`, `heisenberg`.
    pub fn short_name(&self) -> String {
        match self {
            GroupSpec::IntegerLattice { dim, gens: LatticeGens::Standard } => format!("z{dim}"),
            GroupSpec::IntegerLattice { dim, gens: LatticeGens::Box } => format!("z{dim}-box"),
            GroupSpec::FreeGroup { rank } => format!("f{rank}"),
            GroupSpec::Heisenberg => "heisenberg".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Form {
    /// Coordinate vector of length `dim`.
    Lattice(Vec<i64>),
    /// Freely reduced word; letter `i > 0` is the i-th generator, `-i` its inverse.
    Word(Vec<i8>),
    /// Upper-triangular integer triple `(a, b, c)`.
    Heis([i64; 3]),
}

/// A group element in canonical normal form, tagged with its [`GroupSpec`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    spec: GroupSpec,
    form: Form,
}

impl Element {
    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    pub fn is_identity(&self) -> bool {
        match &self.form {
            Form::Lattice(v) => v.iter().all(|&c| c == 0),
            Form::Word(w) => w.is_empty(),
            Form::Heis(t) => *t == [0, 0, 0],
        }
    }

    /// Lattice element from coordinates.
    pub fn from_coords(spec: GroupSpec, coords: &[i64]) -> Result<Self> {
        match spec {
            GroupSpec::IntegerLattice { dim, .. } => {
                if coords.len() != dim as usize {
                    return Err(Error::validation(format!(
                        "expected {dim} coordinates, got {}",
                        coords.len()
                    )));
                }
                Ok(Element { spec, form: Form::Lattice(coords.to_vec()) })
            }
            GroupSpec::Heisenberg => {
                if coords.len() != 3 {
                    return Err(Error::validation("Heisenberg elements take 3 coordinates"));
                }
                Ok(Element { spec, form: Form::Heis([coords[0], coords[1], coords[2]]) })
            }
            _ => Err(Error::usage("coordinate form applies to lattice and Heisenberg groups")),
        }
    }

    /// Free-group element from a word over `a..z` (capitals are inverses).
    pub fn from_word(spec: GroupSpec, word: &str) -> Result<Self> {
        let GroupSpec::FreeGroup { rank } = spec else {
            return Err(Error::usage("word form applies to free groups"));
        };
        let mut letters = Vec::with_capacity(word.len());
        for ch in word.chars() {
            if ch.is_whitespace() {
                continue;
            }
            let (idx, inv) = if ch.is_ascii_lowercase() {
                (ch as u8 - b'a' + 1, false)
            } else if ch.is_ascii_uppercase() {
                (ch as u8 - b'A' + 1, true)
            } else {
                return Err(Error::validation(format!("invalid letter {ch:?} in word")));
            };
            if idx > rank {
                return Err(Error::validation(format!(
                    "letter {ch:?} exceeds free group rank {rank}"
                )));
            }
            letters.push(if inv { -(idx as i8) } else { idx as i8 });
        }
        Ok(Element { spec, form: Form::Word(reduce_word(letters)) })
    }

    /// Word length with respect to the spec's generating set.
    pub fn word_length(&self) -> u32 {
        match (&self.spec, &self.form) {
            (GroupSpec::IntegerLattice { gens: LatticeGens::Standard, .. }, Form::Lattice(v)) => {
                v.iter().map(|c| c.unsigned_abs() as u32).sum()
            }
            (GroupSpec::IntegerLattice { gens: LatticeGens::Box, .. }, Form::Lattice(v)) => {
                v.iter().map(|c| c.unsigned_abs() as u32).max().unwrap_or(0)
            }
            (_, Form::Word(w)) => w.len() as u32,
            (_, Form::Heis(t)) => heisenberg_length(*t),
            _ => unreachable!("form always matches spec"),
        }
    }

    pub fn inverse(&self) -> Element {
        let form = match &self.form {
            Form::Lattice(v) => Form::Lattice(v.iter().map(|c| -c).collect()),
            Form::Word(w) => Form::Word(w.iter().rev().map(|l| -l).collect()),
            Form::Heis([a, b, c]) => Form::Heis([-a, -b, a * b - c]),
        };
        Element { spec: self.spec, form }
    }

    /// Coordinates for lattice and Heisenberg elements.
    pub fn coords(&self) -> Option<Vec<i64>> {
        match &self.form {
            Form::Lattice(v) => Some(v.clone()),
            Form::Heis(t) => Some(t.to_vec()),
            Form::Word(_) => None,
        }
    }

    fn mul_form(&self, rhs: &Element) -> Form {
        match (&self.form, &rhs.form) {
            (Form::Lattice(a), Form::Lattice(b)) => {
                Form::Lattice(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (Form::Word(a), Form::Word(b)) => {
                let mut w = a.clone();
                for &l in b {
                    if w.last() == Some(&-l) {
                        w.pop();
                    } else {
                        w.push(l);
                    }
                }
                Form::Word(w)
            }
            (Form::Heis([a, b, c]), Form::Heis([a2, b2, c2])) => {
                Form::Heis([a + a2, b + b2, c + c2 + a * b2])
            }
            _ => unreachable!("form always matches spec"),
        }
    }

    /// Group product in normal form; errors if the specs differ.
    pub fn multiply(&self, rhs: &Element) -> Result<Element> {
        if self.spec != rhs.spec {
            return Err(Error::GroupMismatch(format!(
                "{} vs {}",
                self.spec.short_name(),
                rhs.spec.short_name()
            )));
        }
        Ok(self.mul_unchecked(rhs))
    }

    pub(crate) fn mul_unchecked(&self, rhs: &Element) -> Element {
        debug_assert_eq!(self.spec, rhs.spec);
        Element { spec: self.spec, form: self.mul_form(rhs) }
    }

    /// Tie-break ordering of normal forms among elements of equal word length.
    /// Positive directions sort before negative ones, so on `Z` the order is
    /// `0 < 1 < -1 < 2 < -2 < …`.
    fn tiebreak_cmp(&self, other: &Element) -> Ordering {
        fn signed(c: i64) -> (u64, u8) {
            if c >= 0 {
                (c as u64, 0)
            } else {
                (c.unsigned_abs(), 1)
            }
        }
        match (&self.form, &other.form) {
            (Form::Lattice(a), Form::Lattice(b)) => {
                for (x, y) in a.iter().zip(b) {
                    let ord = signed(*x).cmp(&signed(*y));
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
                Ordering::Equal
            }
            (Form::Word(a), Form::Word(b)) => {
                for (x, y) in a.iter().zip(b) {
                    let kx = (x.unsigned_abs(), u8::from(*x < 0));
                    let ky = (y.unsigned_abs(), u8::from(*y < 0));
                    let ord = kx.cmp(&ky);
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
                a.len().cmp(&b.len())
            }
            (Form::Heis(a), Form::Heis(b)) => {
                for (x, y) in a.iter().zip(b) {
                    let ord = signed(*x).cmp(&signed(*y));
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
                Ordering::Equal
            }
            _ => Ordering::Equal,
        }
    }

    /// Plain lexicographic comparison of lattice coordinates (`-1 < 0 < 1`).
    /// This order is translation-invariant on `Z^d`, which the dictator rules
    /// `lex-min` and `lex-middle` rely on.
    pub fn lattice_lex_cmp(&self, other: &Element) -> Result<Ordering> {
        match (&self.form, &other.form) {
            (Form::Lattice(a), Form::Lattice(b)) if self.spec == other.spec => Ok(a.cmp(b)),
            _ => Err(Error::usage("lattice lexicographic order applies to one lattice group")),
        }
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn spec_rank(spec: &GroupSpec) -> (u8, u8, u8) {
    match spec {
        GroupSpec::IntegerLattice { dim, gens } => {
            (0, *dim, matches!(gens, LatticeGens::Box) as u8)
        }
        GroupSpec::FreeGroup { rank } => (1, *rank, 0),
        GroupSpec::Heisenberg => (2, 0, 0),
    }
}

/// Shortlex: word length first, then the normal-form tie-break. The identity
/// is the unique minimum, which downstream code (dictator maps, deterministic
/// iteration) depends on.
impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        spec_rank(&self.spec)
            .cmp(&spec_rank(&other.spec))
            .then_with(|| self.word_length().cmp(&other.word_length()))
            .then_with(|| self.tiebreak_cmp(other))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.form {
            Form::Lattice(v) => {
                let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
            Form::Word(w) => {
                if w.is_empty() {
                    return write!(f, "e");
                }
                for &l in w {
                    let ch = (b'a' + l.unsigned_abs() - 1) as char;
                    if l > 0 {
                        write!(f, "{ch}")?;
                    } else {
                        write!(f, "{}", ch.to_ascii_uppercase())?;
                    }
                }
                Ok(())
            }
            Form::Heis([a, b, c]) => write!(f, "({a},{b},{c})"),
        }
    }
}

fn reduce_word(letters: Vec<i8>) -> Vec<i8> {
    let mut w: Vec<i8> = Vec::with_capacity(letters.len());
    for l in letters {
        if l == 0 {
            continue;
        }
        if w.last() == Some(&-l) {
            w.pop();
        } else {
            w.push(l);
        }
    }
    w
}

/// Word length in the discrete Heisenberg group, by memoized breadth-first
/// search from the identity (there is no simple closed form).
fn heisenberg_length(target: [i64; 3]) -> u32 {
    static CACHE: OnceLock<Mutex<HeisDistances>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HeisDistances::new()));
    let mut state = cache.lock().expect("Heisenberg distance cache poisoned");
    state.query(target)
}

struct HeisDistances {
    dist: HashMap<[i64; 3], u32>,
    frontier: Vec<[i64; 3]>,
    radius: u32,
}

const HEIS_BFS_CAP: u32 = 48;

impl HeisDistances {
    fn new() -> Self {
        let mut dist = HashMap::new();
        dist.insert([0, 0, 0], 0);
        HeisDistances { dist, frontier: vec![[0, 0, 0]], radius: 0 }
    }

    fn query(&mut self, target: [i64; 3]) -> u32 {
        loop {
            if let Some(&d) = self.dist.get(&target) {
                return d;
            }
            assert!(
                self.radius < HEIS_BFS_CAP,
                "Heisenberg word-length query for {target:?} exceeds the supported radius {HEIS_BFS_CAP}"
            );
            self.expand();
        }
    }

    fn expand(&mut self) {
        let gens: [[i64; 3]; 4] = [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0]];
        let mut next = Vec::new();
        for &[a, b, c] in &self.frontier {
            for &[a2, b2, b2c] in &gens {
                let prod = [a + a2, b + b2, c + b2c + a * b2];
                if !self.dist.contains_key(&prod) {
                    self.dist.insert(prod, self.radius + 1);
                    next.push(prod);
                }
            }
        }
        self.frontier = next;
        self.radius += 1;
    }
}

/// Enumerated shells of the word metric: `levels[k]` holds the elements of
/// word length exactly `k`, sorted shortlex. `B_k` (open) is the union of
/// levels `0..k`.
#[derive(Debug, Clone)]
pub struct BallTable {
    spec: GroupSpec,
    levels: Vec<Vec<Element>>,
}

impl BallTable {
    /// Breadth-first enumeration of all elements of word length `<= kmax`.
    pub fn with_radius(spec: GroupSpec, kmax: u32) -> Result<Self> {
        let budget = crate::enumeration_budget();
        let gens = spec.generators();
        let mut seen: HashMap<Element, u32> = HashMap::new();
        let e = spec.identity();
        seen.insert(e.clone(), 0);
        let mut levels = vec![vec![e]];
        let mut total: u128 = 1;
        for k in 1..=kmax {
            let mut level = Vec::new();
            for g in &levels[(k - 1) as usize] {
                for s in &gens {
                    let h = g.mul_unchecked(s);
                    if !seen.contains_key(&h) {
                        seen.insert(h.clone(), k);
                        level.push(h);
                        total += 1;
                        if total > budget {
                            return Err(Error::BudgetExceeded { needed: total, budget });
                        }
                    }
                }
            }
            level.sort();
            levels.push(level);
        }
        Ok(BallTable { spec, levels })
    }

    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    /// Largest enumerated word length.
    pub fn max_radius(&self) -> u32 {
        (self.levels.len() - 1) as u32
    }

    /// The shell `S_k = B_{k+1} \ B_k` of word length exactly `k`.
    pub fn level(&self, k: u32) -> &[Element] {
        &self.levels[k as usize]
    }

    /// `|B_k|` for the open ball `B_k = { g : |g| < k }`.
    pub fn open_ball_size(&self, k: u32) -> u128 {
        self.levels.iter().take(k as usize).map(|l| l.len() as u128).sum()
    }

    /// Elements of the open ball `B_k`, sorted shortlex.
    pub fn open_ball(&self, k: u32) -> Vec<Element> {
        let mut out: Vec<Element> =
            self.levels.iter().take(k as usize).flatten().cloned().collect();
        out.sort();
        out
    }

    /// Elements of the closed ball `{ g : |g| <= k }`, sorted shortlex.
    pub fn closed_ball(&self, k: u32) -> Vec<Element> {
        self.open_ball(k + 1)
    }
}

/// Open ball `B_k` as a [`BallTable`] truncated at radius `k`, i.e. shells of
/// word length `< k`.
pub fn ball(spec: GroupSpec, k: u32) -> Result<BallTable> {
    if k < 1 {
        return Err(Error::usage("ball radius must be at least 1"));
    }
    BallTable::with_radius(spec, k - 1)
}

/// Exact shell sizes `|S_k|` for `k = 0..=kmax`, by closed-form integer
/// counting where available (lattices, free groups) and by BFS for the
/// Heisenberg group.
pub fn shell_counts(spec: GroupSpec, kmax: u32) -> Result<Vec<u128>> {
    match spec {
        GroupSpec::IntegerLattice { dim, gens: LatticeGens::Standard } => {
            // Convolution over coordinates: points of Z^d with l1 norm exactly k.
            let d = dim as usize;
            let mut counts: Vec<u128> = vec![0; kmax as usize + 1];
            counts[0] = 1;
            for _ in 0..d {
                let mut next = vec![0u128; kmax as usize + 1];
                for k in 0..=kmax as usize {
                    let mut acc = counts[k];
                    for j in 1..=k {
                        acc += 2 * counts[k - j];
                    }
                    next[k] = acc;
                }
                counts = next;
            }
            Ok(counts)
        }
        GroupSpec::IntegerLattice { dim, gens: LatticeGens::Box } => {
            let d = dim as u32;
            let cube = |n: u128| -> u128 { n.pow(d) };
            Ok((0..=kmax)
                .map(|k| {
                    if k == 0 {
                        1
                    } else {
                        cube(2 * k as u128 + 1) - cube(2 * k as u128 - 1)
                    }
                })
                .collect())
        }
        GroupSpec::FreeGroup { rank } => {
            let n = rank as u128;
            let mut out = Vec::with_capacity(kmax as usize + 1);
            out.push(1);
            if kmax >= 1 {
                out.push(2 * n);
                let mut last = 2 * n;
                for _ in 2..=kmax {
                    last *= 2 * n - 1;
                    out.push(last);
                }
            }
            Ok(out)
        }
        GroupSpec::Heisenberg => {
            let table = BallTable::with_radius(spec, kmax)?;
            Ok((0..=kmax).map(|k| table.level(k).len() as u128).collect())
        }
    }
}

/// One row of a growth table.
#[derive(Debug, Clone, Serialize)]
pub struct GrowthRow {
    pub k: u32,
    /// `|B_k|` under the active ball convention.
    pub ball_size: u128,
    /// `|S_k| = |B_{k+1} \ B_k|` (open convention), the sphere of radius `k`.
    pub shell_size: u128,
    /// `|S_k| / |S_{k-n}|` for the configured offset `n`; `None` when `k <= n`.
    pub ratio: Option<f64>,
}

/// Ball convention for reported cumulative sizes: open `{|g| < k}` (the
/// default) or closed `{|g| <= k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BallConvention {
    Open,
    Closed,
}

/// Growth table for `k = 1..=kmax` with sphere ratios at the given offset.
pub fn growth_table(
    spec: GroupSpec,
    kmax: u32,
    offset: u32,
    convention: BallConvention,
) -> Result<Vec<GrowthRow>> {
    if kmax < 1 {
        return Err(Error::usage("kmax must be at least 1"));
    }
    let counts = shell_counts(spec, kmax)?;
    let mut cumulative: Vec<u128> = Vec::with_capacity(counts.len() + 1);
    let mut acc = 0u128;
    cumulative.push(0);
    for &c in &counts {
        acc += c;
        cumulative.push(acc);
    }
    let rows = (1..=kmax)
        .map(|k| {
            let ball_size = match convention {
                BallConvention::Open => cumulative[k as usize],
                BallConvention::Closed => cumulative[k as usize + 1],
            };
            let ratio = if k > offset && counts[(k - offset) as usize] > 0 {
                Some(counts[k as usize] as f64 / counts[(k - offset) as usize] as f64)
            } else {
                None
            };
            GrowthRow { k, ball_size, shell_size: counts[k as usize], ratio }
        })
        .collect();
    Ok(rows)
}

/// Supremum of sphere-size ratios `|S_{m+n}| / |S_m|` over `1 <= m <= kmax - n`,
/// where `S_j` is the sphere of word length exactly `j`. Nondecreasing in
/// `kmax`; the identity sphere `S_0` never enters a denominator.
pub fn sphere_ratio_sup(spec: GroupSpec, kmax: u32, offset: u32) -> Result<f64> {
    if offset < 1 {
        return Err(Error::usage("offset must be at least 1"));
    }
    if kmax < offset + 1 {
        return Err(Error::usage(format!("kmax must be at least offset + 1 = {}", offset + 1)));
    }
    let counts = shell_counts(spec, kmax)?;
    for (k, &c) in counts.iter().enumerate().skip(1) {
        if c == 0 {
            return Err(Error::EmptyShell { radius: k as u32 });
        }
    }
    let mut sup = 0.0f64;
    for m in 1..=(kmax - offset) {
        let r = counts[(m + offset) as usize] as f64 / counts[m as usize] as f64;
        sup = sup.max(r);
    }
    Ok(sup)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> GroupSpec {
        GroupSpec::lattice(1, LatticeGens::Standard).unwrap()
    }

    fn z2() -> GroupSpec {
        GroupSpec::lattice(2, LatticeGens::Standard).unwrap()
    }

    fn f2() -> GroupSpec {
        GroupSpec::free(2).unwrap()
    }

    fn el(spec: GroupSpec, coords: &[i64]) -> Element {
        Element::from_coords(spec, coords).unwrap()
    }

    #[test]
    fn lattice_multiplication_is_coordinate_addition() {
        let a = el(z2(), &[1, 0]);
        let b = el(z2(), &[0, 1]);
        assert_eq!(a.multiply(&b).unwrap(), el(z2(), &[1, 1]));
    }

    #[test]
    fn free_reduction_cancels() {
        let ab = Element::from_word(f2(), "ab").unwrap();
        let binv = Element::from_word(f2(), "B").unwrap();
        let a = Element::from_word(f2(), "a").unwrap();
        assert_eq!(ab.multiply(&binv).unwrap(), a);
    }

    /// Independent oracle: multiplication of upper-triangular 3x3 integer
    /// matrices [[1,a,c],[0,1,b],[0,0,1]].
    fn heis_matrix_mul(x: [i64; 3], y: [i64; 3]) -> [i64; 3] {
        let m = |t: [i64; 3]| [[1, t[0], t[2]], [0, 1, t[1]], [0, 0, 1]];
        let (mx, my) = (m(x), m(y));
        let mut p = [[0i64; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                p[i][j] = (0..3).map(|k| mx[i][k] * my[k][j]).sum();
            }
        }
        [p[0][1], p[1][2], p[0][2]]
    }

    #[test]
    fn heisenberg_matches_matrix_oracle() {
        let spec = GroupSpec::heisenberg();
        let triples = [[1, 0, 0], [0, 1, 0], [2, -1, 3], [-1, 4, -2], [0, 0, 1]];
        for &x in &triples {
            for &y in &triples {
                let ex = el(spec, &x);
                let ey = el(spec, &y);
                let prod = ex.multiply(&ey).unwrap();
                assert_eq!(prod.coords().unwrap(), heis_matrix_mul(x, y).to_vec());
            }
        }
        // x*y and y*x differ by the central element z = (0,0,1).
        let x = el(spec, &[1, 0, 0]);
        let y = el(spec, &[0, 1, 0]);
        let xy = x.multiply(&y).unwrap();
        let yx = y.multiply(&x).unwrap();
        let zc = el(spec, &[0, 0, 1]);
        assert_ne!(xy, yx);
        assert_eq!(yx.multiply(&zc).unwrap(), xy);
    }

    #[test]
    fn inverse_and_identity_laws() {
        for spec in [z(), z2(), f2(), GroupSpec::heisenberg()] {
            let e = spec.identity();
            assert_eq!(e.word_length(), 0);
            for g in BallTable::with_radius(spec, 3).unwrap().open_ball(4) {
                assert_eq!(g.multiply(&g.inverse()).unwrap(), e);
                assert_eq!(g.multiply(&e).unwrap(), g);
            }
        }
    }

    #[test]
    fn mismatched_specs_error() {
        let a = el(z(), &[1]);
        let b = el(z2(), &[1, 0]);
        assert!(matches!(a.multiply(&b), Err(Error::GroupMismatch(_))));
    }

    #[test]
    fn open_ball_on_z_radius_three() {
        let table = ball(z(), 3).unwrap();
        let b3 = table.open_ball(3);
        let want: Vec<Element> = [-2i64, -1, 0, 1, 2].iter().map(|&c| el(z(), &[c])).collect();
        assert_eq!(b3.len(), 5);
        for g in &want {
            assert!(b3.contains(g));
        }
        assert_eq!(table.open_ball_size(3), 5);
    }

    #[test]
    fn bfs_levels_agree_with_closed_forms() {
        for spec in [
            z(),
            z2(),
            GroupSpec::lattice(3, LatticeGens::Standard).unwrap(),
            GroupSpec::lattice(2, LatticeGens::Box).unwrap(),
            f2(),
            GroupSpec::free(3).unwrap(),
        ] {
            let kmax = 6;
            let table = BallTable::with_radius(spec, kmax).unwrap();
            let counts = shell_counts(spec, kmax).unwrap();
            for k in 0..=kmax {
                assert_eq!(
                    table.level(k).len() as u128,
                    counts[k as usize],
                    "{} level {k}",
                    spec.short_name()
                );
            }
        }
    }

    #[test]
    fn f2_shell_sizes() {
        let table = BallTable::with_radius(f2(), 3).unwrap();
        assert_eq!(table.level(1).len(), 4);
        assert_eq!(table.level(2).len(), 12);
        assert_eq!(table.level(3).len(), 36);
    }

    #[test]
    fn heisenberg_first_shells() {
        // |S_2| = 12 by direct expansion of two-letter products.
        let table = BallTable::with_radius(GroupSpec::heisenberg(), 2).unwrap();
        assert_eq!(table.level(0).len(), 1);
        assert_eq!(table.level(1).len(), 4);
        assert_eq!(table.level(2).len(), 12);
    }

    #[test]
    fn z2_box_balls_are_squares() {
        let spec = GroupSpec::lattice(2, LatticeGens::Box).unwrap();
        let table = BallTable::with_radius(spec, 4).unwrap();
        for k in 1..=4u32 {
            // Open ball B_k = {max|x_i| <= k-1} has (2k-1)^2 points.
            assert_eq!(table.open_ball_size(k), (2 * k as u128 - 1).pow(2));
        }
    }

    #[test]
    fn bfs_layering_invariants() {
        for spec in [z2(), f2(), GroupSpec::heisenberg()] {
            let kmax = 4;
            let table = BallTable::with_radius(spec, kmax).unwrap();
            let gens = spec.generators();
            for k in 0..=kmax {
                for g in table.level(k) {
                    assert_eq!(g.word_length(), k);
                }
                assert_eq!(
                    table.open_ball_size(k + 1),
                    table.open_ball_size(k) + table.level(k).len() as u128
                );
                if k >= 1 {
                    // Every shell element has a generator-neighbor one level down.
                    for g in table.level(k) {
                        let has = gens
                            .iter()
                            .any(|s| g.mul_unchecked(s).word_length() == k - 1);
                        assert!(has, "{g} in level {k} of {}", spec.short_name());
                    }
                }
            }
            // The identity is the shortlex minimum of every ball.
            let b = table.open_ball(kmax + 1);
            assert_eq!(b.first().unwrap(), &spec.identity());
        }
    }

    #[test]
    fn sphere_ratio_on_z_is_one() {
        // Spheres on Z have sizes 2,2,2,…, so every ratio is exactly 1.
        assert_eq!(sphere_ratio_sup(z(), 10, 1).unwrap(), 1.0);
    }

    #[test]
    fn sphere_ratio_on_f2_is_three() {
        for kmax in [3, 5, 20] {
            assert_eq!(sphere_ratio_sup(f2(), kmax, 1).unwrap(), 3.0);
        }
    }

    #[test]
    fn sphere_ratio_on_z2_attained_early() {
        // Spheres 4k: ratios 4(m+1)/(4m) peak at m=1 and decrease toward 1.
        let sup = sphere_ratio_sup(z2(), 50, 1).unwrap();
        assert_eq!(sup, 2.0);
        let tail = shell_counts(z2(), 50).unwrap();
        let last = tail[50] as f64 / tail[49] as f64;
        assert!((last - 1.0).abs() < 0.05);
    }

    #[test]
    fn sphere_ratio_sup_is_monotone_and_stabilizes() {
        for spec in [z(), z2(), f2()] {
            let mut prev = 0.0;
            for kmax in 2..=30 {
                let s = sphere_ratio_sup(spec, kmax, 1).unwrap();
                assert!(s >= prev);
                prev = s;
            }
            assert_eq!(
                sphere_ratio_sup(spec, 20, 1).unwrap(),
                sphere_ratio_sup(spec, 30, 1).unwrap()
            );
        }
    }

    #[test]
    fn sphere_ratio_offset_form() {
        // F2 with offset 2: |S_{m+2}|/|S_m| = 9 for m >= 1.
        assert_eq!(sphere_ratio_sup(f2(), 12, 2).unwrap(), 9.0);
    }

    #[test]
    fn sphere_ratio_rejects_small_kmax() {
        assert!(sphere_ratio_sup(z(), 2, 2).is_err());
    }

    #[test]
    fn shortlex_order_on_z() {
        let mut v: Vec<Element> = [-2i64, 1, 0, -1, 2].iter().map(|&c| el(z(), &[c])).collect();
        v.sort();
        let coords: Vec<i64> = v.iter().map(|g| g.coords().unwrap()[0]).collect();
        assert_eq!(coords, vec![0, 1, -1, 2, -2]);
    }

    #[test]
    fn growth_table_rows() {
        let rows = growth_table(z2(), 5, 1, BallConvention::Open).unwrap();
        assert_eq!(rows.len(), 5);
        assert_eq!(rows[0].k, 1);
        assert_eq!(rows[0].ball_size, 1); // open B_1 = {e}
        assert_eq!(rows[0].shell_size, 4);
        assert_eq!(rows[0].ratio, None);
        assert_eq!(rows[1].shell_size, 8);
        assert_eq!(rows[1].ratio, Some(2.0));
        let closed = growth_table(z2(), 5, 1, BallConvention::Closed).unwrap();
        assert_eq!(closed[0].ball_size, 5); // closed B_1
    }

    #[test]
    fn word_parsing_and_display() {
        let g = Element::from_word(f2(), "abA").unwrap();
        assert_eq!(g.to_string(), "abA");
        assert_eq!(g.word_length(), 3);
        let reduced = Element::from_word(f2(), "aA").unwrap();
        assert!(reduced.is_identity());
    }
}
