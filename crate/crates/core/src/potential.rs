//! Potentials: local (finite-radius) functions given by sums of small tables,
//! series potentials with analytic variation formulas, the k-th variation,
//! shell and volume norms with divergence certificates, the Birkhoff-style
//! partial sums `f_m`, and the induced cocycle.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec;
use crate::group::{BallConvention, BallTable, Element, GroupSpec};
use crate::interaction::{table_index, table_len, CocycleValue};
use crate::subshift::{
    Alphabet, AdmissibilitySemantics, Pattern, Sft, Symbol, WindowConfig,
};

/// One summand of a local potential: a finite support (not required to contain
/// the identity) and a total table over symbol assignments on it.
#[derive(Debug, Clone)]
pub struct PotentialTerm {
    support: Vec<Element>,
    table: Vec<f64>,
}

impl PotentialTerm {
    pub fn new(alphabet: &Alphabet, support: Vec<Element>, table: Vec<f64>) -> Result<Self> {
        let mut support = support;
        support.sort();
        support.dedup();
        let want = table_len(alphabet.len(), support.len())?;
        if table.len() != want {
            return Err(Error::validation(format!(
                "potential table has {} entries, needs {}",
                table.len(),
                want
            )));
        }
        if table.iter().any(|v| !v.is_finite()) {
            return Err(Error::validation("potential tables must be finite"));
        }
        Ok(PotentialTerm { support, table })
    }

    pub fn constant(c: f64) -> Self {
        PotentialTerm { support: Vec::new(), table: vec![c] }
    }

    pub fn from_sparse(
        alphabet: &Alphabet,
        support: Vec<Element>,
        entries: &[(Vec<Symbol>, f64)],
    ) -> Result<Self> {
        let mut sorted = support;
        sorted.sort();
        sorted.dedup();
        let len = table_len(alphabet.len(), sorted.len())?;
        let mut table = vec![0.0; len];
        for (symbols, v) in entries {
            if symbols.len() != sorted.len() {
                return Err(Error::validation("sparse entry arity mismatch"));
            }
            table[table_index(alphabet.len(), symbols)] = *v;
        }
        PotentialTerm::new(alphabet, sorted, table)
    }

    pub fn support(&self) -> &[Element] {
        &self.support
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    pub fn sup_norm(&self) -> f64 {
        self.table.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn scaled(&self, alpha: f64) -> PotentialTerm {
        PotentialTerm {
            support: self.support.clone(),
            table: self.table.iter().map(|v| alpha * v).collect(),
        }
    }

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

    /// Value on the shifted configuration `g·z`, i.e. the table read at
    /// `z(g^{-1} s)` over the support sites `s`.
    fn value_shifted(&self, asize: usize, g_inv: &Element, w: &WindowConfig) -> Result<f64> {
        let mut idx = 0usize;
        for s in &self.support {
            let site = g_inv.mul_unchecked(s);
            let sym = w.symbol_at(&site).ok_or(Error::MissingSite { site: site.to_string() })?;
            idx = idx * asize + sym.0 as usize;
        }
        Ok(self.table[idx])
    }
}

/// A finite-radius potential: a finite sum of [`PotentialTerm`]s.
#[derive(Debug, Clone)]
pub struct LocalPotential {
    alphabet: Alphabet,
    terms: Vec<PotentialTerm>,
}

impl LocalPotential {
    pub fn new(alphabet: Alphabet, terms: Vec<PotentialTerm>) -> Self {
        LocalPotential { alphabet, terms }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn terms(&self) -> &[PotentialTerm] {
        &self.terms
    }

    /// All support sites, sorted shortlex.
    pub fn union_support(&self) -> Vec<Element> {
        let mut set = BTreeSet::new();
        for t in &self.terms {
            set.extend(t.support.iter().cloned());
        }
        set.into_iter().collect()
    }

    /// Smallest `r` with the dependence set inside the open ball `B_r`.
    pub fn radius(&self) -> u32 {
        self.terms
            .iter()
            .flat_map(|t| t.support.iter())
            .map(|g| g.word_length() + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn reach(&self) -> u32 {
        self.terms.iter().map(PotentialTerm::diameter).max().unwrap_or(0)
    }

    pub fn sup_norm_bound(&self) -> f64 {
        self.terms.iter().map(PotentialTerm::sup_norm).sum()
    }

    /// Value at the identity placement: reads the window on the union support.
    pub fn value(&self, w: &WindowConfig) -> Result<f64> {
        self.value_shifted(&identity_of(self, w)?, w)
    }

    /// `f(g·z)` for the configuration held by the window.
    pub fn value_shifted(&self, g: &Element, w: &WindowConfig) -> Result<f64> {
        let g_inv = g.inverse();
        let asize = self.alphabet.len();
        let mut acc = 0.0;
        for t in &self.terms {
            acc += t.value_shifted(asize, &g_inv, w)?;
        }
        Ok(acc)
    }

    /// Value on a bare pattern covering the union support.
    pub fn value_on_pattern(&self, p: &Pattern) -> Result<f64> {
        let asize = self.alphabet.len();
        let mut acc = 0.0;
        for t in &self.terms {
            let mut idx = 0usize;
            for s in &t.support {
                let sym = p.get(s).ok_or(Error::MissingSite { site: s.to_string() })?;
                idx = idx * asize + sym.0 as usize;
            }
            acc += t.table[idx];
        }
        Ok(acc)
    }
}

fn identity_of(f: &LocalPotential, w: &WindowConfig) -> Result<Element> {
    f.union_support()
        .first()
        .map(|g| g.spec().identity())
        .or_else(|| w.group_spec().map(|s| s.identity()))
        .ok_or_else(|| Error::usage("cannot infer the group of an empty potential"))
}

/// Exact analytic variation data for a series potential.
#[derive(Debug, Clone, Copy, Serialize)]
pub enum VariationFormula {
    /// `v_k = scale · Σ_{l >= k} 1/l²` for `k >= 1`, with the harmonic lower
    /// bound `v_k >= scale / k`.
    InverseSquareTail { scale: f64 },
}

impl VariationFormula {
    pub fn v(&self, k: u32) -> f64 {
        match self {
            VariationFormula::InverseSquareTail { scale } => {
                scale * inverse_square_tail(k.max(1))
            }
        }
    }

    pub fn lower_bound(&self, k: u32) -> f64 {
        match self {
            VariationFormula::InverseSquareTail { scale } => scale / k.max(1) as f64,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            VariationFormula::InverseSquareTail { scale } => {
                format!("v_k = {scale} * sum_{{l>=k}} 1/l^2 >= {scale}/k")
            }
        }
    }
}

/// `Σ_{l=k}^∞ 1/l²`, by partial summation plus an Euler–Maclaurin tail;
/// accurate to well below 1e-12.
pub fn inverse_square_tail(k: u32) -> f64 {
    let k = k.max(1) as u64;
    let cut = k + 1024;
    let mut acc = 0.0;
    for l in k..cut {
        let l = l as f64;
        acc += 1.0 / (l * l);
    }
    let m = cut as f64;
    acc + 1.0 / m + 1.0 / (2.0 * m * m) + 1.0 / (6.0 * m * m * m)
        - 1.0 / (30.0 * m * m * m * m * m)
}

/// A potential given as a convergent series of local pieces. Only finitely
/// many pieces are materialized for evaluation; the variation structure of the
/// full series is carried analytically.
#[derive(Debug, Clone)]
pub struct SeriesPotential {
    alphabet: Alphabet,
    pieces: Vec<PotentialTerm>,
    variation: VariationFormula,
    /// `v_0` of the full series.
    sup_norm: f64,
    /// Bound on `Σ` of sup-norms of the pieces left unmaterialized.
    eval_tail_sup: f64,
}

impl SeriesPotential {
    pub fn new(
        alphabet: Alphabet,
        pieces: Vec<PotentialTerm>,
        variation: VariationFormula,
        sup_norm: f64,
        eval_tail_sup: f64,
    ) -> Self {
        SeriesPotential { alphabet, pieces, variation, sup_norm, eval_tail_sup }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn pieces(&self) -> &[PotentialTerm] {
        &self.pieces
    }

    pub fn variation_formula(&self) -> &VariationFormula {
        &self.variation
    }

    pub fn eval_tail_sup(&self) -> f64 {
        self.eval_tail_sup
    }

    fn as_local(&self) -> LocalPotential {
        LocalPotential { alphabet: self.alphabet.clone(), terms: self.pieces.clone() }
    }
}

/// Local or series potential.
#[derive(Debug, Clone)]
pub enum Potential {
    Local(LocalPotential),
    Series(SeriesPotential),
}

impl Potential {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Potential::Local(f) => f.alphabet(),
            Potential::Series(f) => f.alphabet(),
        }
    }

    pub fn reach(&self) -> u32 {
        match self {
            Potential::Local(f) => f.reach(),
            Potential::Series(f) => f.as_local().reach(),
        }
    }

    pub fn as_local_for_eval(&self) -> LocalPotential {
        match self {
            Potential::Local(f) => f.clone(),
            Potential::Series(f) => f.as_local(),
        }
    }

    /// Evaluation error carried by the materialized representation.
    pub fn eval_tail_sup(&self) -> f64 {
        match self {
            Potential::Local(_) => 0.0,
            Potential::Series(f) => f.eval_tail_sup,
        }
    }
}

/// A computed variation value and whether it is exact for the shift (versus a
/// locally-admissible upper bound).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct VariationValue {
    pub value: f64,
    pub exact: bool,
}

/// The k-th variation `v_k(f)`: for `k = 0` the sup norm over admissible
/// assignments, for `k >= 1` the largest `|f(y) - f(x)|` over pairs of
/// admissible assignments agreeing on the open ball `B_k`.
pub fn variation(
    f: &Potential,
    sft: &Sft,
    k: u32,
    semantics: AdmissibilitySemantics,
) -> Result<VariationValue> {
    match f {
        Potential::Series(s) => Ok(VariationValue {
            value: if k == 0 { s.sup_norm } else { s.variation.v(k) },
            exact: true,
        }),
        Potential::Local(f) => variation_local(f, sft, k, semantics),
    }
}

fn variation_local(
    f: &LocalPotential,
    sft: &Sft,
    k: u32,
    semantics: AdmissibilitySemantics,
) -> Result<VariationValue> {
    let sites = f.union_support();
    if sites.is_empty() {
        // Constant potential: v_0 = |c|, higher variations vanish.
        let c: f64 = f.terms().iter().map(|t| t.table[0]).sum();
        return Ok(VariationValue { value: if k == 0 { c.abs() } else { 0.0 }, exact: true });
    }
    if k >= f.radius() && k >= 1 {
        return Ok(VariationValue { value: 0.0, exact: true });
    }
    let spec = sites[0].spec();
    let semantics = if sft.is_full() { AdmissibilitySemantics::LocalWindow } else { semantics };

    // Region scanned: the dependence set, extended by the whole ball B_k when
    // the shift is constrained so that "agreeing on B_k" keys over every cell
    // of B_k, not just those the potential reads.
    let mut region: BTreeSet<Element> = sites.into_iter().collect();
    if !sft.is_full() && k >= 1 {
        let table = BallTable::with_radius(spec, k - 1)?;
        region.extend(table.open_ball(k));
    }
    let region: Vec<Element> = region.into_iter().collect();
    let exact = sft.is_full() || semantics == AdmissibilitySemantics::OneDimExact;

    let asize = sft.alphabet().len();
    let count = table_len(asize, region.len())? as u64;
    let in_ball: Vec<bool> = region.iter().map(|g| g.word_length() < k.max(1)).collect();

    // Admissible assignments with (shared-key, value) per candidate.
    let evaluated: Vec<Result<(Vec<Symbol>, f64)>> =
        exec::filter_map_indices(count, |idx| {
            let p = crate::subshift::decode_filling(&region, asize as u64, idx);
            let adm = match crate::subshift::is_admissible(sft, &p, semantics) {
                Ok(a) => a,
                Err(e) => return Some(Err(e)),
            };
            if !adm {
                return None;
            }
            let value = match f.value_on_pattern(&p) {
                Ok(v) => v,
                Err(e) => return Some(Err(e)),
            };
            let key: Vec<Symbol> = region
                .iter()
                .zip(&in_ball)
                .filter(|(_, inb)| k >= 1 && **inb)
                .map(|(g, _)| p.get(g).expect("region cell"))
                .collect();
            Some(Ok((key, value)))
        });
    let mut groups: HashMap<Vec<Symbol>, (f64, f64)> = HashMap::new();
    let mut sup = 0.0f64;
    for item in evaluated {
        let (key, value) = item?;
        sup = sup.max(value.abs());
        let entry = groups.entry(key).or_insert((value, value));
        entry.0 = entry.0.min(value);
        entry.1 = entry.1.max(value);
    }
    if groups.is_empty() {
        return Err(Error::Domain("no admissible assignment on the dependence set".into()));
    }
    let value = if k == 0 {
        sup
    } else {
        groups.values().map(|(lo, hi)| hi - lo).fold(0.0, f64::max)
    };
    Ok(VariationValue { value, exact })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormKind {
    Shell,
    Volume,
}

/// Certificate that a norm series diverges: an explicit minorant series whose
/// partial sums cross the stated threshold at the stated index.
#[derive(Debug, Clone, Serialize)]
pub struct DivergenceCertificate {
    pub minorant: String,
    pub threshold: f64,
    pub crossed_at_k: u32,
    pub value_at_crossing: f64,
}

#[derive(Debug, Clone, Serialize)]
pub enum NormValue {
    Finite(f64),
    Divergent(DivergenceCertificate),
}

/// Norm computation report. Shell and volume norms are certified
/// independently; neither dominates the other in general. Values depend on
/// the generating set, so the group spec and ball convention are recorded.
#[derive(Debug, Clone, Serialize)]
pub struct NormReport {
    pub kind: NormKind,
    pub group: GroupSpec,
    pub convention: BallConvention,
    pub kmax: u32,
    pub value: NormValue,
    pub partial_sums: Vec<f64>,
    pub variations: Vec<f64>,
    pub exact_variations: bool,
    pub semantics: AdmissibilitySemantics,
}

const DIVERGENCE_THRESHOLD: f64 = 10.0;

fn norm_weights(
    kind: NormKind,
    spec: GroupSpec,
    convention: BallConvention,
    kmax: u32,
) -> Result<Vec<f64>> {
    let counts = crate::group::shell_counts(spec, kmax + 1)?;
    let cum = |upto: usize| -> u128 { counts.iter().take(upto).map(|&c| c).sum() };
    Ok((0..=kmax)
        .map(|k| match (kind, convention) {
            // Open balls: |B_{k+1} \ B_k| is the sphere of radius k; |B_0| = 0.
            (NormKind::Shell, BallConvention::Open) => counts[k as usize] as f64,
            (NormKind::Volume, BallConvention::Open) => cum(k as usize) as f64,
            // Closed balls: |B_{k+1} \ B_k| is the sphere of radius k+1.
            (NormKind::Shell, BallConvention::Closed) => counts[k as usize + 1] as f64,
            (NormKind::Volume, BallConvention::Closed) => cum(k as usize + 1) as f64,
        })
        .collect())
}

fn norm_report(
    kind: NormKind,
    f: &Potential,
    sft: &Sft,
    spec: GroupSpec,
    kmax: u32,
    convention: BallConvention,
    semantics: AdmissibilitySemantics,
) -> Result<NormReport> {
    let weights = norm_weights(kind, spec, convention, kmax)?;
    let mut variations = Vec::with_capacity(kmax as usize + 1);
    let mut exact = true;
    let keff = match f {
        Potential::Local(l) => kmax.min(l.radius().max(1)),
        Potential::Series(_) => kmax,
    };
    for k in 0..=kmax {
        if k <= keff {
            let v = variation(f, sft, k, semantics)?;
            exact &= v.exact;
            variations.push(v.value);
        } else {
            variations.push(0.0);
        }
    }
    let mut partial_sums = Vec::with_capacity(kmax as usize + 1);
    let mut acc = 0.0;
    for k in 0..=kmax as usize {
        acc += weights[k] * variations[k];
        partial_sums.push(acc);
    }
    let value = match f {
        Potential::Local(_) => NormValue::Finite(acc),
        Potential::Series(s) => {
            divergence_certificate(kind, s.variation, spec, convention, kmax)?
                .map(NormValue::Divergent)
                .unwrap_or(NormValue::Finite(acc))
        }
    };
    Ok(NormReport {
        kind,
        group: spec,
        convention,
        kmax,
        value,
        partial_sums,
        variations,
        exact_variations: exact,
        semantics,
    })
}

fn divergence_certificate(
    kind: NormKind,
    formula: VariationFormula,
    spec: GroupSpec,
    convention: BallConvention,
    kmax: u32,
) -> Result<Option<DivergenceCertificate>> {
    let scan = kmax.max(4096);
    let weights = norm_weights(kind, spec, convention, scan)?;
    let mut acc = 0.0;
    for k in 1..=scan {
        acc += weights[k as usize] * formula.lower_bound(k);
        if acc > DIVERGENCE_THRESHOLD {
            return Ok(Some(DivergenceCertificate {
                minorant: format!(
                    "sum_k |B_{{k+1}}\\B_k| * lower(v_k) with {}",
                    formula.describe()
                ),
                threshold: DIVERGENCE_THRESHOLD,
                crossed_at_k: k,
                value_at_crossing: acc,
            }));
        }
    }
    Ok(None)
}

/// Shell norm `Σ_k |B_{k+1} \ B_k| v_k(f)`.
pub fn shell_norm(
    f: &Potential,
    sft: &Sft,
    spec: GroupSpec,
    kmax: u32,
    convention: BallConvention,
    semantics: AdmissibilitySemantics,
) -> Result<NormReport> {
    norm_report(NormKind::Shell, f, sft, spec, kmax, convention, semantics)
}

/// Volume norm `Σ_k |B_k| v_k(f)`; with open balls the `k = 0` term vanishes
/// because `B_0` is empty.
pub fn volume_norm(
    f: &Potential,
    sft: &Sft,
    spec: GroupSpec,
    kmax: u32,
    convention: BallConvention,
    semantics: AdmissibilitySemantics,
) -> Result<NormReport> {
    norm_report(NormKind::Volume, f, sft, spec, kmax, convention, semantics)
}

/// `f_m(z) = Σ_{g ∈ B_m} f(g·z)` over the open ball `B_m`.
pub fn partial_sum_f_m(f: &Potential, m: u32, w: &WindowConfig) -> Result<f64> {
    let local = f.as_local_for_eval();
    let spec = local
        .union_support()
        .first()
        .map(|g| g.spec())
        .or_else(|| w.group_spec())
        .ok_or_else(|| Error::usage("cannot infer the group"))?;
    let table = BallTable::with_radius(spec, m.saturating_sub(1))?;
    let mut acc = 0.0;
    for g in table.open_ball(m) {
        acc += local.value_shifted(&g, w)?;
    }
    Ok(acc)
}

/// `φ_f(x, y) = Σ_g [f(g·y) − f(g·x)]` for windows agreeing outside `delta`.
/// For a local potential only finitely many translates contribute and the sum
/// is exact; a series contributes its declared materialization error.
pub fn cocycle_potential(
    f: &Potential,
    wx: &WindowConfig,
    wy: &WindowConfig,
    delta: &[Element],
) -> Result<CocycleValue> {
    crate::interaction::check_agree_outside(wx, wy, delta)?;
    let local = f.as_local_for_eval();
    let asize = local.alphabet().len();
    let mut value = 0.0;
    for term in local.terms() {
        // f(g·z) reads z at g^{-1}s; the term feels the difference iff
        // g^{-1}s ∈ Δ for some support site s, i.e. g ∈ s·Δ^{-1}.
        let mut affected: BTreeSet<Element> = BTreeSet::new();
        for s in term.support() {
            for d in delta {
                affected.insert(s.mul_unchecked(&d.inverse()));
            }
        }
        for g in affected {
            let g_inv = g.inverse();
            let fy = term.value_shifted(asize, &g_inv, wy)?;
            let fx = term.value_shifted(asize, &g_inv, wx)?;
            value += fy - fx;
        }
    }
    let error_bound = 2.0 * delta.len() as f64 * f.eval_tail_sup();
    Ok(CocycleValue { value, error_bound })
}

/// Spin bond potential `f(x) = x_0 x_1` over the `{-,+}` alphabet on `Z`.
pub fn spin_bond_potential() -> Potential {
    let alphabet = Alphabet::spins();
    let spec = GroupSpec::lattice(1, crate::group::LatticeGens::Standard).unwrap();
    let spin = |s: u8| if s == 1 { 1.0 } else { -1.0 };
    let sites =
        vec![Element::from_coords(spec, &[0]).unwrap(), Element::from_coords(spec, &[1]).unwrap()];
    let mut table = vec![0.0; 4];
    for a in 0..2u8 {
        for b in 0..2u8 {
            table[table_index(2, &[Symbol(a), Symbol(b)])] = spin(a) * spin(b);
        }
    }
    Potential::Local(LocalPotential::new(
        alphabet.clone(),
        vec![PotentialTerm::new(&alphabet, sites, table).unwrap()],
    ))
}
