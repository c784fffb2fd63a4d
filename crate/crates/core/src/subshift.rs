//! Patterns, shifts of finite type, finite-window configurations with boundary
//! collars, and the holonomy machinery (pattern-swap involutions and their
//! orbits) that generates the Gibbs relation on finite windows.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec;
use crate::group::{Element, GroupSpec};

/// Finite ordered alphabet. Symbols are referenced by index ([`Symbol`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::validation("alphabet must be nonempty"));
        }
        if symbols.len() > u8::MAX as usize {
            return Err(Error::validation("alphabet size is capped at 255"));
        }
        for (i, a) in symbols.iter().enumerate() {
            if symbols[..i].contains(a) {
                return Err(Error::validation(format!("duplicate symbol {a:?}")));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// The two-symbol alphabet `{"0", "1"}`.
    pub fn binary() -> Self {
        Alphabet::new(["0", "1"]).unwrap()
    }

    /// The spin alphabet `{"-", "+"}` (index 0 is `-`, index 1 is `+`).
    pub fn spins() -> Self {
        Alphabet::new(["-", "+"]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> {
        (0..self.symbols.len() as u8).map(Symbol)
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.symbols[s.0 as usize]
    }

    pub fn index_of(&self, name: &str) -> Result<Symbol> {
        self.symbols
            .iter()
            .position(|s| s == name)
            .map(|i| Symbol(i as u8))
            .ok_or_else(|| Error::validation(format!("unknown symbol {name:?}")))
    }

    pub fn contains(&self, s: Symbol) -> bool {
        (s.0 as usize) < self.symbols.len()
    }
}

/// Index into an [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Symbol(pub u8);

/// A finite partial configuration: an assignment of symbols to a finite set
/// of group elements. Iteration over cells is always in shortlex order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Pattern {
    cells: BTreeMap<Element, Symbol>,
}

impl Pattern {
    pub fn empty() -> Self {
        Pattern { cells: BTreeMap::new() }
    }

    pub fn from_cells(cells: impl IntoIterator<Item = (Element, Symbol)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (g, s) in cells {
            if let Some(prev) = map.insert(g.clone(), s) {
                if prev != s {
                    return Err(Error::usage(format!("conflicting symbols at {g}")));
                }
            }
        }
        Ok(Pattern { cells: map })
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn get(&self, g: &Element) -> Option<Symbol> {
        self.cells.get(g).copied()
    }

    pub fn set(&mut self, g: Element, s: Symbol) {
        self.cells.insert(g, s);
    }

    pub fn support(&self) -> impl Iterator<Item = &Element> {
        self.cells.keys()
    }

    pub fn cells(&self) -> impl Iterator<Item = (&Element, Symbol)> {
        self.cells.iter().map(|(g, s)| (g, *s))
    }

    pub fn contains_site(&self, g: &Element) -> bool {
        self.cells.contains_key(g)
    }

    /// Group of the first cell, if any.
    pub fn group_spec(&self) -> Option<GroupSpec> {
        self.cells.keys().next().map(|g| g.spec())
    }

    /// Largest word length over the support (0 for the empty pattern).
    pub fn radius(&self) -> u32 {
        self.cells.keys().map(|g| g.word_length()).max().unwrap_or(0)
    }

    /// Support diameter `max |f^{-1} f'|` over pairs of support elements.
    pub fn diameter(&self) -> u32 {
        let sites: Vec<&Element> = self.cells.keys().collect();
        let mut d = 0;
        for a in &sites {
            let ainv = a.inverse();
            for b in &sites {
                d = d.max(ainv.mul_unchecked(b).word_length());
            }
        }
        d
    }

    /// The shifted pattern `g·p` with `(g·p)(h) = p(g^{-1} h)`, i.e. support
    /// translated to `g·support` with symbols carried along.
    pub fn translate(&self, g: &Element) -> Result<Pattern> {
        let mut cells = BTreeMap::new();
        for (h, s) in &self.cells {
            cells.insert(g.multiply(h)?, *s);
        }
        Ok(Pattern { cells })
    }

    /// Union of two patterns; errors when they disagree on a shared site.
    pub fn merged(&self, other: &Pattern) -> Result<Pattern> {
        let mut cells = self.cells.clone();
        for (g, s) in &other.cells {
            if let Some(prev) = cells.insert(g.clone(), *s) {
                if prev != *s {
                    return Err(Error::usage(format!("patterns disagree at {g}")));
                }
            }
        }
        Ok(Pattern { cells })
    }

    pub fn restricted_to<'a>(&self, sites: impl IntoIterator<Item = &'a Element>) -> Pattern {
        let mut cells = BTreeMap::new();
        for g in sites {
            if let Some(s) = self.cells.get(g) {
                cells.insert(g.clone(), *s);
            }
        }
        Pattern { cells }
    }

    /// Pattern with the given sites removed.
    pub fn without<'a>(&self, sites: impl IntoIterator<Item = &'a Element>) -> Pattern {
        let mut cells = self.cells.clone();
        for g in sites {
            cells.remove(g);
        }
        Pattern { cells }
    }

    pub fn agrees_with_on<'a>(
        &self,
        other: &Pattern,
        sites: impl IntoIterator<Item = &'a Element>,
    ) -> bool {
        sites.into_iter().all(|g| self.get(g) == other.get(g))
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> PatternDisplay<'a> {
        PatternDisplay { pattern: self, alphabet }
    }
}

pub struct PatternDisplay<'a> {
    pattern: &'a Pattern,
    alphabet: &'a Alphabet,
}

impl fmt::Display for PatternDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        write!(f, "{{")?;
        for (g, s) in self.pattern.cells() {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{g}:{}", self.alphabet.name(s))?;
            first = false;
        }
        write!(f, "}}")
    }
}

/// A shift of finite type: a finite alphabet together with a finite list of
/// forbidden patterns. The `range` is the largest support diameter among the
/// forbidden patterns, which bounds how far a constraint can reach.
#[derive(Debug, Clone)]
pub struct Sft {
    alphabet: Alphabet,
    forbidden: Vec<Pattern>,
    range: u32,
}

impl Sft {
    pub fn new(alphabet: Alphabet, forbidden: Vec<Pattern>) -> Result<Self> {
        for p in &forbidden {
            if p.is_empty() {
                return Err(Error::validation("forbidden patterns must be nonempty"));
            }
            for (_, s) in p.cells() {
                if !alphabet.contains(s) {
                    return Err(Error::validation("forbidden pattern uses an unknown symbol"));
                }
            }
        }
        let range = forbidden.iter().map(Pattern::diameter).max().unwrap_or(0);
        Ok(Sft { alphabet, forbidden, range })
    }

    pub fn full_shift(alphabet: Alphabet) -> Self {
        Sft { alphabet, forbidden: Vec::new(), range: 0 }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn forbidden(&self) -> &[Pattern] {
        &self.forbidden
    }

    pub fn range(&self) -> u32 {
        self.range
    }

    pub fn is_full(&self) -> bool {
        self.forbidden.is_empty()
    }
}

/// A finite window: an interior pattern on `Λ` and a fixed boundary pattern on
/// a collar around it. The computational stand-in for a point of the subshift
/// with the exterior frozen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowConfig {
    interior: Pattern,
    boundary: Pattern,
}

impl WindowConfig {
    pub fn new(interior: Pattern, boundary: Pattern) -> Result<Self> {
        for g in interior.support() {
            if boundary.contains_site(g) {
                return Err(Error::usage(format!(
                    "interior and boundary overlap at {g}"
                )));
            }
        }
        Ok(WindowConfig { interior, boundary })
    }

    pub fn interior(&self) -> &Pattern {
        &self.interior
    }

    pub fn boundary(&self) -> &Pattern {
        &self.boundary
    }

    pub fn symbol_at(&self, g: &Element) -> Option<Symbol> {
        self.interior.get(g).or_else(|| self.boundary.get(g))
    }

    /// Interior and boundary merged into one pattern.
    pub fn merged_pattern(&self) -> Pattern {
        self.interior.merged(&self.boundary).expect("interior and boundary are disjoint")
    }

    pub fn group_spec(&self) -> Option<GroupSpec> {
        self.interior.group_spec().or_else(|| self.boundary.group_spec())
    }

    /// Replace the interior symbols on `sites` by those of `patch` (which must
    /// cover exactly those sites).
    pub fn with_patch(&self, patch: &Pattern) -> Result<WindowConfig> {
        let mut interior = self.interior.clone();
        for (g, s) in patch.cells() {
            if !interior.contains_site(g) {
                return Err(Error::usage(format!("patch site {g} is not in the interior")));
            }
            interior.set(g.clone(), s);
        }
        WindowConfig::new(interior, self.boundary.clone())
    }

    /// Checks that the boundary covers the collar `(Λ·B_{r+1}) \ Λ` required
    /// for admissibility scans of reach `r` (the SFT range, or wider for
    /// energy evaluation).
    pub fn validate_collar(&self, reach: u32) -> Result<()> {
        let Some(spec) = self.group_spec() else { return Ok(()) };
        let ball = crate::group::BallTable::with_radius(spec, reach)?;
        for g in self.interior.support() {
            for b in ball.open_ball(reach + 1) {
                let cell = g.mul_unchecked(&b);
                if self.symbol_at(&cell).is_none() {
                    return Err(Error::MissingSite { site: cell.to_string() });
                }
            }
        }
        Ok(())
    }
}

/// Which notion of membership in the subshift a computation used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AdmissibilitySemantics {
    /// No translate of a forbidden pattern occurs inside the scanned region.
    /// An upper approximation of true membership for constrained shifts.
    LocalWindow,
    /// Local admissibility plus global extensibility via the follower graph;
    /// exact, available for one-dimensional shifts.
    OneDimExact,
}

impl AdmissibilitySemantics {
    /// Exact semantics when the group is `Z` with standard generators and the
    /// shift is genuinely constrained, local otherwise.
    pub fn preferred(sft: &Sft, spec: GroupSpec) -> Self {
        if !sft.is_full() && crate::onedim::supports(spec) {
            AdmissibilitySemantics::OneDimExact
        } else {
            AdmissibilitySemantics::LocalWindow
        }
    }
}

/// True iff no translate of a forbidden pattern matches inside `p`'s support.
pub fn is_locally_admissible(sft: &Sft, p: &Pattern) -> bool {
    if sft.is_full() || p.is_empty() {
        return true;
    }
    for forb in sft.forbidden() {
        let anchor = forb.support().next().expect("forbidden patterns are nonempty");
        let anchor_inv = anchor.inverse();
        for (u, _) in p.cells() {
            // Translate g placing the anchor cell of `forb` at u.
            let g = u.mul_unchecked(&anchor_inv);
            let mut matches = true;
            for (fsite, fsym) in forb.cells() {
                match p.get(&g.mul_unchecked(fsite)) {
                    Some(s) if s == fsym => {}
                    _ => {
                        matches = false;
                        break;
                    }
                }
            }
            if matches {
                return false;
            }
        }
    }
    true
}

/// Window form of [`is_locally_admissible`].
pub fn is_window_admissible(sft: &Sft, w: &WindowConfig) -> bool {
    is_locally_admissible(sft, &w.merged_pattern())
}

/// Admissibility under the requested semantics.
pub fn is_admissible(sft: &Sft, p: &Pattern, semantics: AdmissibilitySemantics) -> Result<bool> {
    match semantics {
        AdmissibilitySemantics::LocalWindow => Ok(is_locally_admissible(sft, p)),
        AdmissibilitySemantics::OneDimExact => crate::onedim::is_globally_extensible(sft, p),
    }
}

/// Deterministic candidate decoder: sites sorted shortlex, site 0 the most
/// significant digit, symbols in alphabet order.
pub(crate) fn decode_filling(sites: &[Element], asize: u64, mut index: u64) -> Pattern {
    let mut cells = BTreeMap::new();
    for g in sites.iter().rev() {
        cells.insert(g.clone(), Symbol((index % asize) as u8));
        index /= asize;
    }
    Pattern { cells }
}

fn sorted_sites(sites: &[Element]) -> Result<Vec<Element>> {
    let mut v = sites.to_vec();
    v.sort();
    v.dedup();
    if v.len() != sites.len() {
        return Err(Error::usage("window sites must be distinct"));
    }
    Ok(v)
}

/// All admissible fillings of `sites` compatible with the fixed `boundary`,
/// in shortlex-lexicographic order. Candidates are scanned in parallel when
/// the `parallel` feature is on; the output order does not depend on that.
pub fn enumerate_fillings(sft: &Sft, sites: &[Element], boundary: &Pattern) -> Result<Vec<Pattern>> {
    enumerate_fillings_semantics(sft, sites, boundary, AdmissibilitySemantics::LocalWindow)
}

/// [`enumerate_fillings`] under explicit admissibility semantics.
pub fn enumerate_fillings_semantics(
    sft: &Sft,
    sites: &[Element],
    boundary: &Pattern,
    semantics: AdmissibilitySemantics,
) -> Result<Vec<Pattern>> {
    let sites = sorted_sites(sites)?;
    for g in &sites {
        if boundary.contains_site(g) {
            return Err(Error::usage(format!("site {g} is fixed by the boundary")));
        }
    }
    if sites.is_empty() {
        return Ok(if is_locally_admissible(sft, boundary) {
            vec![Pattern::empty()]
        } else {
            Vec::new()
        });
    }
    let asize = sft.alphabet().len() as u64;
    let count = (asize as u128).checked_pow(sites.len() as u32).unwrap_or(u128::MAX);
    let budget = crate::enumeration_budget();
    if count > budget {
        return Err(Error::BudgetExceeded { needed: count, budget });
    }
    let check = |interior: &Pattern| -> Result<bool> {
        let merged = interior.merged(boundary)?;
        is_admissible(sft, &merged, semantics)
    };
    let results: Vec<Result<Pattern>> = exec::filter_map_indices(count as u64, |idx| {
        let interior = decode_filling(&sites, asize, idx);
        match check(&interior) {
            Ok(true) => Some(Ok(interior)),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        }
    });
    results.into_iter().collect()
}

/// The involution `ψ_{ω,η}`: exchanges the patterns `ω` and `η` on their
/// common support wherever the exchange stays admissible, and otherwise does
/// nothing. Applying it twice is the identity.
pub fn holonomy_swap(
    sft: &Sft,
    omega: &Pattern,
    eta: &Pattern,
    w: &WindowConfig,
    semantics: AdmissibilitySemantics,
) -> Result<WindowConfig> {
    let support: Vec<&Element> = omega.support().collect();
    if !(eta.len() == omega.len() && support.iter().all(|g| eta.contains_site(g))) {
        return Err(Error::usage("swap patterns must share their support"));
    }
    for g in &support {
        if !w.interior().contains_site(g) {
            return Err(Error::usage(format!(
                "swap support site {g} is outside the window interior"
            )));
        }
    }
    let matches = |p: &Pattern| support.iter().all(|g| w.symbol_at(g) == p.get(g));
    let try_swap = |target: &Pattern| -> Result<Option<WindowConfig>> {
        let swapped = w.with_patch(target)?;
        let ok = is_admissible(sft, &w.merged_pattern(), semantics)?
            && is_admissible(sft, &swapped.merged_pattern(), semantics)?;
        Ok(ok.then_some(swapped))
    };
    if matches(omega) {
        if let Some(sw) = try_swap(eta)? {
            return Ok(sw);
        }
    } else if matches(eta) {
        if let Some(sw) = try_swap(omega)? {
            return Ok(sw);
        }
    }
    Ok(w.clone())
}

/// The full orbit of `w` under the pattern-swap group on `lambda` with the
/// exterior fixed: every admissible refilling of `lambda` compatible with the
/// rest of the window, merged back into `w`.
pub fn holonomy_group_orbit(
    sft: &Sft,
    lambda: &[Element],
    w: &WindowConfig,
    semantics: AdmissibilitySemantics,
) -> Result<Vec<WindowConfig>> {
    if lambda.is_empty() {
        return Ok(vec![w.clone()]);
    }
    for g in lambda {
        if !w.interior().contains_site(g) {
            return Err(Error::usage(format!("orbit site {g} is outside the window interior")));
        }
    }
    let exterior = w.interior().without(lambda.iter());
    let fixed = exterior.merged(w.boundary())?;
    let fillings = enumerate_fillings_semantics(sft, lambda, &fixed, semantics)?;
    fillings
        .into_iter()
        .map(|fill| WindowConfig::new(fill.merged(&exterior)?, w.boundary().clone()))
        .collect()
}

/// Golden mean shift on `Z`: binary alphabet, adjacent `11` forbidden.
pub fn golden_mean_shift() -> Sft {
    let spec = GroupSpec::lattice(1, crate::group::LatticeGens::Standard).unwrap();
    let one = Symbol(1);
    let p = Pattern::from_cells([
        (Element::from_coords(spec, &[0]).unwrap(), one),
        (Element::from_coords(spec, &[1]).unwrap(), one),
    ])
    .unwrap();
    Sft::new(Alphabet::binary(), vec![p]).unwrap()
}

/// Sites `a..=b` on `Z` with standard generators.
pub fn z_interval(a: i64, b: i64) -> Vec<Element> {
    let spec = GroupSpec::lattice(1, crate::group::LatticeGens::Standard).unwrap();
    (a..=b).map(|i| Element::from_coords(spec, &[i]).unwrap()).collect()
}

/// Constant pattern on the given sites.
pub fn constant_pattern(sites: &[Element], s: Symbol) -> Pattern {
    Pattern::from_cells(sites.iter().map(|g| (g.clone(), s))).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::LatticeGens;
    use proptest::prelude::*;

    fn zspec() -> GroupSpec {
        GroupSpec::lattice(1, LatticeGens::Standard).unwrap()
    }

    fn zel(i: i64) -> Element {
        Element::from_coords(zspec(), &[i]).unwrap()
    }

    fn word_pattern(start: i64, symbols: &[u8]) -> Pattern {
        Pattern::from_cells(
            symbols.iter().enumerate().map(|(i, &s)| (zel(start + i as i64), Symbol(s))),
        )
        .unwrap()
    }

    #[test]
    fn shift_by_identity_is_identity() {
        let p = word_pattern(0, &[1, 0, 1]);
        assert_eq!(p.translate(&zspec().identity()).unwrap(), p);
    }

    #[test]
    fn shift_translates_support_on_z() {
        let p = word_pattern(0, &[1]);
        let shifted = p.translate(&zel(1)).unwrap();
        assert_eq!(shifted.get(&zel(1)), Some(Symbol(1)));
        assert_eq!(shifted.len(), 1);
    }

    #[test]
    fn shift_composes_on_free_group() {
        let f2 = GroupSpec::free(2).unwrap();
        let a = Element::from_word(f2, "a").unwrap();
        let b = Element::from_word(f2, "b").unwrap();
        let p = Pattern::from_cells([
            (f2.identity(), Symbol(0)),
            (b.clone(), Symbol(1)),
        ])
        .unwrap();
        let shifted = p.translate(&a).unwrap();
        let ab = Element::from_word(f2, "ab").unwrap();
        assert_eq!(shifted.get(&a), Some(Symbol(0)));
        assert_eq!(shifted.get(&ab), Some(Symbol(1)));
        let h = Element::from_word(f2, "Ba").unwrap();
        let lhs = p.translate(&h).unwrap().translate(&a).unwrap();
        let rhs = p.translate(&a.multiply(&h).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn full_shift_admits_everything() {
        let sft = Sft::full_shift(Alphabet::binary());
        assert!(is_locally_admissible(&sft, &word_pattern(0, &[1, 1, 1])));
    }

    #[test]
    fn golden_mean_detects_adjacent_ones() {
        let sft = golden_mean_shift();
        assert!(!is_locally_admissible(&sft, &word_pattern(-1, &[0, 1, 1, 0])));
        assert!(is_locally_admissible(&sft, &word_pattern(0, &[0, 1, 0, 1, 0])));
    }

    #[test]
    fn golden_mean_range_is_one() {
        assert_eq!(golden_mean_shift().range(), 1);
    }

    #[test]
    fn enumerate_full_shift_counts() {
        let sft = Sft::full_shift(Alphabet::binary());
        let fills = enumerate_fillings(&sft, &z_interval(0, 2), &Pattern::empty()).unwrap();
        assert_eq!(fills.len(), 8);
        // Shortlex-lexicographic: first all-0, last all-1.
        assert_eq!(fills[0], word_pattern(0, &[0, 0, 0]));
        assert_eq!(fills[7], word_pattern(0, &[1, 1, 1]));
    }

    #[test]
    fn golden_mean_fillings_are_fibonacci() {
        let sft = golden_mean_shift();
        // Independent oracle: direct scan over all binary words of length L
        // with no adjacent ones (the 0-boundary adds no further constraint).
        let brute = |len: usize| -> usize {
            (0..1u32 << len)
                .filter(|w| {
                    let bits: Vec<bool> =
                        (0..len).map(|i| w >> (len - 1 - i) & 1 == 1).collect();
                    bits.windows(2).all(|p| !(p[0] && p[1]))
                })
                .count()
        };
        // F(1) = F(2) = 1.
        let fib = |n: usize| -> usize {
            let (mut a, mut b) = (1usize, 1usize);
            for _ in 3..=n {
                let c = a + b;
                a = b;
                b = c;
            }
            b
        };
        for len in 1..=12usize {
            let sites = z_interval(0, len as i64 - 1);
            let boundary = Pattern::from_cells([
                (zel(-1), Symbol(0)),
                (zel(len as i64), Symbol(0)),
            ])
            .unwrap();
            let got = enumerate_fillings(&sft, &sites, &boundary).unwrap().len();
            assert_eq!(got, brute(len), "L={len}");
            assert_eq!(got, fib(len + 2), "L={len}");
        }
    }

    #[test]
    fn frozen_boundary_forces_zero() {
        let sft = golden_mean_shift();
        let boundary = Pattern::from_cells([(zel(-1), Symbol(1)), (zel(1), Symbol(1))]).unwrap();
        let fills = enumerate_fillings(&sft, &z_interval(0, 0), &boundary).unwrap();
        assert_eq!(fills.len(), 1);
        assert_eq!(fills[0].get(&zel(0)), Some(Symbol(0)));
    }

    fn golden_window(interior: &[u8], boundary_left: u8, boundary_right: u8) -> WindowConfig {
        let len = interior.len() as i64;
        let boundary = Pattern::from_cells([
            (zel(-1), Symbol(boundary_left)),
            (zel(len), Symbol(boundary_right)),
        ])
        .unwrap();
        WindowConfig::new(word_pattern(0, interior), boundary).unwrap()
    }

    #[test]
    fn swap_on_full_shift_flips() {
        let sft = Sft::full_shift(Alphabet::binary());
        let w = WindowConfig::new(word_pattern(0, &[0]), Pattern::empty()).unwrap();
        let omega = word_pattern(0, &[0]);
        let eta = word_pattern(0, &[1]);
        let swapped =
            holonomy_swap(&sft, &omega, &eta, &w, AdmissibilitySemantics::LocalWindow).unwrap();
        assert_eq!(swapped.interior().get(&zel(0)), Some(Symbol(1)));
    }

    #[test]
    fn swap_blocked_by_admissibility() {
        let sft = golden_mean_shift();
        let w = golden_window(&[0], 0, 1);
        let omega = word_pattern(0, &[0]);
        let eta = word_pattern(0, &[1]);
        let swapped =
            holonomy_swap(&sft, &omega, &eta, &w, AdmissibilitySemantics::LocalWindow).unwrap();
        assert_eq!(&swapped, &w);
    }

    #[test]
    fn swap_equal_patterns_is_identity() {
        let sft = golden_mean_shift();
        let w = golden_window(&[0, 1], 0, 0);
        let omega = word_pattern(0, &[0, 1]);
        let swapped =
            holonomy_swap(&sft, &omega, &omega, &w, AdmissibilitySemantics::LocalWindow).unwrap();
        assert_eq!(&swapped, &w);
    }

    #[test]
    fn swap_support_mismatch_errors() {
        let sft = golden_mean_shift();
        let w = golden_window(&[0, 0], 0, 0);
        let omega = word_pattern(0, &[0]);
        let eta = word_pattern(1, &[1]);
        assert!(holonomy_swap(&sft, &omega, &eta, &w, AdmissibilitySemantics::LocalWindow)
            .is_err());
    }

    proptest! {
        /// The swap is an involution on arbitrary windows, admissible or not.
        #[test]
        fn swap_is_involution(
            interior in proptest::collection::vec(0u8..2, 4),
            omega in proptest::collection::vec(0u8..2, 2),
            eta in proptest::collection::vec(0u8..2, 2),
            left in 0u8..2,
            right in 0u8..2,
        ) {
            let sft = golden_mean_shift();
            let w = golden_window(&interior, left, right);
            let omega = word_pattern(1, &omega);
            let eta = word_pattern(1, &eta);
            let mode = AdmissibilitySemantics::LocalWindow;
            let once = holonomy_swap(&sft, &omega, &eta, &w, mode).unwrap();
            let twice = holonomy_swap(&sft, &omega, &eta, &once, mode).unwrap();
            prop_assert_eq!(twice, w);
        }

        /// Orbits computed from any two members of a class coincide.
        #[test]
        fn orbit_is_an_equivalence(
            interior in proptest::collection::vec(0u8..2, 4),
            left in 0u8..2,
            right in 0u8..2,
        ) {
            let sft = golden_mean_shift();
            let w = golden_window(&interior, left, right);
            prop_assume!(is_window_admissible(&sft, &w));
            let lambda = z_interval(1, 2);
            let mode = AdmissibilitySemantics::LocalWindow;
            let orbit = holonomy_group_orbit(&sft, &lambda, &w, mode).unwrap();
            prop_assert!(orbit.contains(&w));
            for member in &orbit {
                let other = holonomy_group_orbit(&sft, &lambda, member, mode).unwrap();
                prop_assert_eq!(&other, &orbit);
            }
        }
    }

    #[test]
    fn orbit_sizes_match_examples() {
        let full = Sft::full_shift(Alphabet::binary());
        let w = WindowConfig::new(word_pattern(0, &[0, 0]), Pattern::empty()).unwrap();
        let orbit = holonomy_group_orbit(
            &full,
            &z_interval(0, 1),
            &w,
            AdmissibilitySemantics::LocalWindow,
        )
        .unwrap();
        assert_eq!(orbit.len(), 4);

        let gm = golden_mean_shift();
        let w = golden_window(&[0, 0], 0, 0);
        let orbit = holonomy_group_orbit(
            &gm,
            &z_interval(0, 1),
            &w,
            AdmissibilitySemantics::LocalWindow,
        )
        .unwrap();
        assert_eq!(orbit.len(), 3); // 00, 01, 10

        let orbit = holonomy_group_orbit(&gm, &[], &w, AdmissibilitySemantics::LocalWindow)
            .unwrap();
        assert_eq!(orbit, vec![w]);
    }

    #[test]
    fn collar_validation() {
        let sft = golden_mean_shift();
        let w = golden_window(&[0, 1, 0], 0, 0);
        w.validate_collar(sft.range()).unwrap();
        let missing = WindowConfig::new(word_pattern(0, &[0, 1, 0]), Pattern::empty()).unwrap();
        assert!(missing.validate_collar(sft.range()).is_err());
    }
}
