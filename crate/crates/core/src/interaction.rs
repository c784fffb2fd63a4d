//! Translation-invariant interactions: families of local energy terms stored
//! by orbit representatives whose support contains the identity, an optional
//! summable radial tail with a caller-supplied analytic bound, the Hamiltonian
//! of a finite window, the absolute-summability norm, the full-dimensionality
//! diagnostic, and the induced energy-difference cocycle.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::Element;
use crate::subshift::{Alphabet, Symbol, WindowConfig};

/// Dense table index for a symbol tuple: the first site is the most
/// significant digit, matching the filling enumeration order.
pub(crate) fn table_index(asize: usize, symbols: &[Symbol]) -> usize {
    symbols.iter().fold(0, |acc, s| acc * asize + s.0 as usize)
}

pub(crate) fn table_len(asize: usize, sites: usize) -> Result<usize> {
    let len = (asize as u128).checked_pow(sites as u32).unwrap_or(u128::MAX);
    let budget = crate::enumeration_budget();
    if len > budget {
        return Err(Error::BudgetExceeded { needed: len, budget });
    }
    Ok(len as usize)
}

/// One orbit representative: a finite support containing the identity and a
/// total energy table over symbol assignments on it.
#[derive(Debug, Clone)]
pub struct InteractionTerm {
    support: Vec<Element>,
    energies: Vec<f64>,
}

impl InteractionTerm {
    pub fn new(alphabet: &Alphabet, support: Vec<Element>, energies: Vec<f64>) -> Result<Self> {
        let mut support = support;
        support.sort();
        support.dedup();
        if support.is_empty() {
            return Err(Error::validation("interaction support must be nonempty"));
        }
        if !support[0].is_identity() {
            return Err(Error::validation(
                "interaction representative supports must contain the identity",
            ));
        }
        let want = table_len(alphabet.len(), support.len())?;
        if energies.len() != want {
            return Err(Error::validation(format!(
                "energy table has {} entries; support of size {} over {} symbols needs {}",
                energies.len(),
                support.len(),
                alphabet.len(),
                want
            )));
        }
        if energies.iter().any(|e| !e.is_finite()) {
            return Err(Error::validation("energy tables must be finite"));
        }
        Ok(InteractionTerm { support, energies })
    }

    /// Builds the dense table from sparse `(symbols, energy)` entries; missing
    /// entries are zero.
    pub fn from_sparse(
        alphabet: &Alphabet,
        support: Vec<Element>,
        entries: &[(Vec<Symbol>, f64)],
    ) -> Result<Self> {
        let mut sorted = support.clone();
        sorted.sort();
        let len = table_len(alphabet.len(), sorted.len())?;
        let mut energies = vec![0.0; len];
        for (symbols, v) in entries {
            if symbols.len() != sorted.len() {
                return Err(Error::validation("sparse entry arity mismatch"));
            }
            energies[table_index(alphabet.len(), symbols)] = *v;
        }
        InteractionTerm::new(alphabet, support, energies)
    }

    pub fn support(&self) -> &[Element] {
        &self.support
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn sup_norm(&self) -> f64 {
        self.energies.iter().fold(0.0, |m, e| m.max(e.abs()))
    }

    /// Support diameter `max |f^{-1} f'|`.
    pub fn diameter(&self) -> u32 {
        let mut d = 0;
        for a in &self.support {
            let ainv = a.inverse();
            for b in &self.support {
                d = d.max(ainv.mul_unchecked(b).word_length());
            }
        }
        d
    }

    /// Largest word length over the support.
    pub fn radius(&self) -> u32 {
        self.support.iter().map(Element::word_length).max().unwrap_or(0)
    }

    /// Energy of the translate `g·support` read from the window.
    /// `Φ_{gΛ}(x) = Φ_Λ(g^{-1}·x)` by translation invariance.
    pub fn value_at(&self, asize: usize, g: &Element, w: &WindowConfig) -> Result<f64> {
        let mut idx = 0usize;
        for f in &self.support {
            let site = g.mul_unchecked(f);
            let s = w.symbol_at(&site).ok_or(Error::MissingSite { site: site.to_string() })?;
            idx = idx * asize + s.0 as usize;
        }
        Ok(self.energies[idx])
    }
}

/// Analytic per-site bound `T(n) >= Σ_{k>n} |S_k| · sup_k` on the energy of
/// all tail terms through a single site beyond radius `n`.
#[derive(Debug, Clone, Copy, Serialize)]
pub enum TailBound {
    /// `T(n) = numerator / n`.
    InverseN { numerator: f64 },
}

impl TailBound {
    pub fn at(&self, n: u32) -> f64 {
        match self {
            TailBound::InverseN { numerator } => numerator / n.max(1) as f64,
        }
    }
}

/// Declared long-range tail: the interaction's terms beyond `truncated_at`
/// are never evaluated numerically; they contribute certified error bounds.
#[derive(Debug, Clone, Copy)]
pub struct Tail {
    pub truncated_at: u32,
    pub bound: TailBound,
}

/// A translation-invariant interaction handled through orbit representatives.
#[derive(Debug, Clone)]
pub struct Interaction {
    alphabet: Alphabet,
    terms: Vec<InteractionTerm>,
    tail: Option<Tail>,
}

impl Interaction {
    pub fn new(alphabet: Alphabet, terms: Vec<InteractionTerm>, tail: Option<Tail>) -> Self {
        Interaction { alphabet, terms, tail }
    }

    pub fn zero(alphabet: Alphabet) -> Self {
        Interaction { alphabet, terms: Vec::new(), tail: None }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn terms(&self) -> &[InteractionTerm] {
        &self.terms
    }

    pub fn tail(&self) -> Option<&Tail> {
        self.tail.as_ref()
    }

    /// Collar radius a window needs so that every term translate meeting it is
    /// determined: the largest support diameter.
    pub fn reach(&self) -> u32 {
        self.terms.iter().map(InteractionTerm::diameter).max().unwrap_or(0)
    }

    /// Interaction scaled by `alpha` plus `other` (finite parts; used by the
    /// linearity checks). Tails are not combined.
    pub fn scaled_sum(&self, alpha: f64, other: &Interaction) -> Result<Interaction> {
        if self.alphabet != other.alphabet {
            return Err(Error::usage("interactions over different alphabets"));
        }
        let mut terms: Vec<InteractionTerm> = self
            .terms
            .iter()
            .map(|t| InteractionTerm {
                support: t.support.clone(),
                energies: t.energies.iter().map(|e| alpha * e).collect(),
            })
            .collect();
        'outer: for t in &other.terms {
            for mine in terms.iter_mut() {
                if mine.support == t.support {
                    for (a, b) in mine.energies.iter_mut().zip(&t.energies) {
                        *a += b;
                    }
                    continue 'outer;
                }
            }
            terms.push(t.clone());
        }
        Ok(Interaction { alphabet: self.alphabet.clone(), terms, tail: None })
    }
}

/// Hamiltonian value together with the certified truncation error
/// (zero for finite-range interactions).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct HamiltonianValue {
    pub value: f64,
    pub truncation_error: f64,
}

/// All translates of `support` that intersect `lambda`, each exactly once,
/// in deterministic (shortlex) order.
fn translates_meeting(lambda: &[Element], support: &[Element]) -> BTreeSet<Element> {
    let mut out = BTreeSet::new();
    for l in lambda {
        for f in support {
            // g·f = l  =>  g = l·f^{-1}.
            out.insert(l.mul_unchecked(&f.inverse()));
        }
    }
    out
}

/// `H_Λ(w)`: the sum of every interaction term whose translate meets `lambda`,
/// evaluated on the window, plus the certified tail error.
pub fn hamiltonian(
    phi: &Interaction,
    lambda: &[Element],
    w: &WindowConfig,
) -> Result<HamiltonianValue> {
    let asize = phi.alphabet().len();
    let mut value = 0.0;
    for term in phi.terms() {
        for g in translates_meeting(lambda, term.support()) {
            value += term.value_at(asize, &g, w)?;
        }
    }
    let truncation_error = phi
        .tail()
        .map(|t| lambda.len() as f64 * t.bound.at(t.truncated_at))
        .unwrap_or(0.0);
    Ok(HamiltonianValue { value, truncation_error })
}

/// `‖Φ‖_B`: the finite part of the absolute-summability norm, plus the
/// declared tail bound. Each representative contributes once per translate of
/// its support through the identity, i.e. `|Λ| · ‖Φ_Λ‖_∞`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BNorm {
    pub value: f64,
    pub tail_bound: f64,
}

pub fn b_norm(phi: &Interaction) -> BNorm {
    let value = phi
        .terms()
        .iter()
        .map(|t| t.support().len() as f64 * t.sup_norm())
        .sum();
    let tail_bound = phi.tail().map(|t| t.bound.at(t.truncated_at)).unwrap_or(0.0);
    BNorm { value, tail_bound }
}

/// Full-dimensionality report: for each representative, the ratio between the
/// closed ball it escapes and its cardinality; `c` is the largest witnessed
/// constant.
#[derive(Debug, Clone, Serialize)]
pub struct FullDimReport {
    pub holds: bool,
    pub c: f64,
    /// `(support radius, |ball| / |support|)` per representative.
    pub per_term: Vec<(u32, f64)>,
    /// True when a declared tail makes the constant grow with the truncation.
    pub limited_by_truncation: bool,
}

/// Checks the defining bound `sup { |B_n| : Λ escapes B_{n-1} } <= C |Λ|`
/// over the finite representatives; with open balls the supremum is the
/// closed ball of radius `max |g|, g ∈ Λ`.
pub fn is_full_dimensional(phi: &Interaction) -> Result<FullDimReport> {
    let mut c = 0.0f64;
    let mut per_term = Vec::new();
    for term in phi.terms() {
        if term.sup_norm() == 0.0 {
            continue;
        }
        let radius = term.radius();
        let spec = term.support()[0].spec();
        let counts = crate::group::shell_counts(spec, radius)?;
        let ball: u128 = counts.iter().sum();
        let ratio = ball as f64 / term.support().len() as f64;
        per_term.push((radius, ratio));
        c = c.max(ratio);
    }
    let limited_by_truncation = phi.tail().is_some();
    Ok(FullDimReport { holds: !limited_by_truncation, c, per_term, limited_by_truncation })
}

/// A cocycle evaluation: the value and a certified error bound (zero for
/// finite-range sources).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CocycleValue {
    pub value: f64,
    pub error_bound: f64,
}

/// `φ_Φ(x, y) = H_Δ(x) − H_Δ(y)` for windows agreeing outside `delta`.
/// Antisymmetric; exactly zero when the windows coincide.
pub fn cocycle_interaction(
    phi: &Interaction,
    wx: &WindowConfig,
    wy: &WindowConfig,
    delta: &[Element],
) -> Result<CocycleValue> {
    check_agree_outside(wx, wy, delta)?;
    let hx = hamiltonian(phi, delta, wx)?;
    let hy = hamiltonian(phi, delta, wy)?;
    Ok(CocycleValue {
        value: hx.value - hy.value,
        error_bound: hx.truncation_error + hy.truncation_error,
    })
}

pub(crate) fn check_agree_outside(
    wx: &WindowConfig,
    wy: &WindowConfig,
    delta: &[Element],
) -> Result<()> {
    let mx = wx.merged_pattern();
    let my = wy.merged_pattern();
    if mx.len() != my.len() {
        return Err(Error::usage("windows cover different regions"));
    }
    for (g, s) in mx.cells() {
        if delta.contains(g) {
            continue;
        }
        if my.get(g) != Some(s) {
            return Err(Error::usage(format!("windows disagree outside Δ at {g}")));
        }
    }
    Ok(())
}
