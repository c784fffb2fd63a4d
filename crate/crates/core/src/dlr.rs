//! DLR specification kernels on finite windows, exact finite-volume Gibbs
//! tables, Glauber resampling dynamics, and the numerical certification of the
//! correspondence between the DLR property and conformality with respect to
//! the induced cocycle — all at desk scale, with fixed boundaries standing in
//! for the exterior.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec;
use crate::group::{BallTable, Element};
use crate::interaction::{cocycle_interaction, hamiltonian, CocycleValue, Interaction};
use crate::potential::{cocycle_potential, partial_sum_f_m, Potential};
use crate::subshift::{
    enumerate_fillings_semantics, holonomy_swap, AdmissibilitySemantics, Pattern, Sft, Symbol,
    WindowConfig,
};

/// Tolerance for enumeration-exact identities.
pub const TOL_EXACT: f64 = 1e-10;
/// Tolerance for identities through a base-point change only.
pub const TOL_BASEPOINT: f64 = 1e-12;
/// Tolerance when a truncated tail or a dual evaluation path participates.
pub const TOL_DUAL_PATH: f64 = 1e-9;

/// Either source of a cocycle: an interaction or a potential, evaluated
/// through its own module.
#[derive(Debug, Clone)]
pub enum CocycleSource {
    Interaction(Interaction),
    Potential(Potential),
}

impl CocycleSource {
    /// `φ(x, y)` for windows agreeing outside `delta`, with its error bound.
    pub fn cocycle(
        &self,
        wx: &WindowConfig,
        wy: &WindowConfig,
        delta: &[Element],
    ) -> Result<CocycleValue> {
        match self {
            CocycleSource::Interaction(phi) => cocycle_interaction(phi, wx, wy, delta),
            CocycleSource::Potential(f) => cocycle_potential(f, wx, wy, delta),
        }
    }

    /// Collar radius needed beyond the SFT range for energy evaluation.
    pub fn reach(&self) -> u32 {
        match self {
            CocycleSource::Interaction(phi) => phi.reach(),
            CocycleSource::Potential(f) => f.reach(),
        }
    }

    /// Log-weight of the window for single-site conditionals: `-H_{site}` for
    /// an interaction, the local shifted sum of the potential otherwise. Both
    /// normalize to the same conditional distribution as [`dlr_kernel`].
    fn conditional_log_weight(&self, site: &Element, w: &WindowConfig) -> Result<f64> {
        match self {
            CocycleSource::Interaction(phi) => {
                Ok(-hamiltonian(phi, std::slice::from_ref(site), w)?.value)
            }
            CocycleSource::Potential(f) => {
                let local = f.as_local_for_eval();
                let mut acc = 0.0;
                let site_inv = site.inverse();
                let mut translates = std::collections::BTreeSet::new();
                for term in local.terms() {
                    for s in term.support() {
                        translates.insert(s.mul_unchecked(&site_inv));
                    }
                }
                for g in translates {
                    acc += local.value_shifted(&g, w)?;
                }
                Ok(acc)
            }
        }
    }
}

/// The probability kernel of the DLR equation on a finite window: admissible
/// fillings of the sites given the boundary, with their probabilities.
#[derive(Debug, Clone)]
pub struct SpecificationKernel {
    pub sites: Vec<Element>,
    pub boundary: Pattern,
    pub fillings: Vec<Pattern>,
    pub probabilities: Vec<f64>,
    pub semantics: AdmissibilitySemantics,
}

impl SpecificationKernel {
    pub fn len(&self) -> usize {
        self.fillings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fillings.is_empty()
    }

    pub fn window(&self, i: usize) -> WindowConfig {
        WindowConfig::new(self.fillings[i].clone(), self.boundary.clone())
            .expect("kernel windows are disjoint by construction")
    }

    /// Symbols of filling `i` in site order.
    pub fn key(&self, i: usize) -> Vec<Symbol> {
        self.sites
            .iter()
            .map(|g| self.fillings[i].get(g).expect("filling covers the sites"))
            .collect()
    }

    pub fn index_of_key(&self, key: &[Symbol]) -> Option<usize> {
        (0..self.len()).find(|&i| self.key(i) == key)
    }

    /// Probabilities must be nonnegative and sum to 1 within 1e-12.
    pub fn validate(&self) -> Result<()> {
        if self.is_empty() {
            return Err(Error::NoAdmissibleFilling);
        }
        if self.probabilities.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::validation("kernel probabilities must be nonnegative"));
        }
        let sum: f64 = self.probabilities.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::validation(format!(
                "kernel probabilities sum to {sum}, expected 1 within 1e-12"
            )));
        }
        Ok(())
    }
}

fn kernel_from_base(
    sft: &Sft,
    src: &CocycleSource,
    sites: &[Element],
    boundary: &Pattern,
    semantics: AdmissibilitySemantics,
    base: usize,
) -> Result<SpecificationKernel> {
    let mut sites = sites.to_vec();
    sites.sort();
    sites.dedup();
    let fillings = enumerate_fillings_semantics(sft, &sites, boundary, semantics)?;
    if fillings.is_empty() {
        return Err(Error::NoAdmissibleFilling);
    }
    let base_window = WindowConfig::new(fillings[base].clone(), boundary.clone())?;
    let mut log_weights = Vec::with_capacity(fillings.len());
    for f in &fillings {
        let w = WindowConfig::new(f.clone(), boundary.clone())?;
        // P(η) ∝ exp(φ(η₀, η)) by the cocycle chain rule applied to Eq-style
        // weights; the base point cancels in the normalization.
        log_weights.push(src.cocycle(&base_window, &w, &sites)?.value);
    }
    let max = log_weights.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = log_weights.iter().map(|l| (l - max).exp()).collect();
    let z: f64 = weights.iter().sum();
    let probabilities = weights.iter().map(|w| w / z).collect();
    Ok(SpecificationKernel {
        sites,
        boundary: boundary.clone(),
        fillings,
        probabilities,
        semantics,
    })
}

/// The specification kernel of Eq-style DLR conditioning: the probability of
/// each admissible filling `η` is `exp(φ(η₀, η)) / Σ_ζ exp(φ(η₀, ζ))`, which
/// is independent of the admissible reference filling `η₀`. Log-weights are
/// shifted by their maximum before exponentiation.
pub fn dlr_kernel(
    sft: &Sft,
    src: &CocycleSource,
    sites: &[Element],
    boundary: &Pattern,
    semantics: AdmissibilitySemantics,
) -> Result<SpecificationKernel> {
    kernel_from_base(sft, src, sites, boundary, semantics, 0)
}

/// Max deviation between kernels recomputed from every admissible base point.
pub fn base_point_independence(
    sft: &Sft,
    src: &CocycleSource,
    sites: &[Element],
    boundary: &Pattern,
    semantics: AdmissibilitySemantics,
) -> Result<f64> {
    let reference = kernel_from_base(sft, src, sites, boundary, semantics, 0)?;
    let mut worst = 0.0f64;
    for base in 1..reference.len() {
        let other = kernel_from_base(sft, src, sites, boundary, semantics, base)?;
        for (p, q) in reference.probabilities.iter().zip(&other.probabilities) {
            worst = worst.max((p - q).abs());
        }
    }
    Ok(worst)
}

/// `Z_Λ = Σ_η exp(−H_Λ(η x_{Λ^c}))` over admissible fillings.
pub fn partition_function(
    sft: &Sft,
    phi: &Interaction,
    sites: &[Element],
    boundary: &Pattern,
    semantics: AdmissibilitySemantics,
) -> Result<f64> {
    let fillings = enumerate_fillings_semantics(sft, sites, boundary, semantics)?;
    if fillings.is_empty() {
        return Err(Error::NoAdmissibleFilling);
    }
    let mut z = 0.0;
    for f in &fillings {
        let w = WindowConfig::new(f.clone(), boundary.clone())?;
        z += (-hamiltonian(phi, sites, &w)?.value).exp();
    }
    Ok(z)
}

/// Exact finite-volume Gibbs distribution: the full kernel on the window,
/// plus the partition function when the source is an interaction.
#[derive(Debug, Clone)]
pub struct FiniteVolumeGibbs {
    pub kernel: SpecificationKernel,
    pub partition: Option<f64>,
}

impl FiniteVolumeGibbs {
    pub fn point_mass(w: &WindowConfig) -> Self {
        let sites: Vec<Element> = w.interior().support().cloned().collect();
        FiniteVolumeGibbs {
            kernel: SpecificationKernel {
                sites,
                boundary: w.boundary().clone(),
                fillings: vec![w.interior().clone()],
                probabilities: vec![1.0],
                semantics: AdmissibilitySemantics::LocalWindow,
            },
            partition: None,
        }
    }

    /// Empirical measure from observed symbol-vector frequencies.
    pub fn from_empirical(
        sites: Vec<Element>,
        boundary: Pattern,
        counts: &BTreeMap<Vec<Symbol>, u64>,
    ) -> Result<Self> {
        let total: u64 = counts.values().sum();
        if total == 0 {
            return Err(Error::usage("empirical measure needs at least one sample"));
        }
        let mut fillings = Vec::new();
        let mut probabilities = Vec::new();
        for (key, n) in counts {
            fillings.push(Pattern::from_cells(
                sites.iter().cloned().zip(key.iter().copied()),
            )?);
            probabilities.push(*n as f64 / total as f64);
        }
        Ok(FiniteVolumeGibbs {
            kernel: SpecificationKernel {
                sites,
                boundary,
                fillings,
                probabilities,
                semantics: AdmissibilitySemantics::LocalWindow,
            },
            partition: None,
        })
    }
}

pub fn exact_gibbs(
    sft: &Sft,
    src: &CocycleSource,
    sites: &[Element],
    boundary: &Pattern,
    semantics: AdmissibilitySemantics,
) -> Result<FiniteVolumeGibbs> {
    let kernel = dlr_kernel(sft, src, sites, boundary, semantics)?;
    let partition = match src {
        CocycleSource::Interaction(phi) => {
            Some(partition_function(sft, phi, &kernel.sites, boundary, semantics)?)
        }
        CocycleSource::Potential(_) => None,
    };
    Ok(FiniteVolumeGibbs { kernel, partition })
}

#[derive(Debug, Clone)]
pub struct GlauberOptions {
    /// Steps discarded before recording; defaults to a tenth of the run.
    pub burn_in: Option<u64>,
    /// Keep every `thin`-th visited configuration in the sample stream.
    pub thin: u64,
    /// Cap on the recorded stream length.
    pub max_stream: usize,
}

impl Default for GlauberOptions {
    fn default() -> Self {
        GlauberOptions { burn_in: None, thin: 1000, max_stream: 1000 }
    }
}

#[derive(Debug, Clone)]
pub struct GlauberOutcome {
    pub sites: Vec<Element>,
    pub steps: u64,
    pub seed: u64,
    pub empirical: BTreeMap<Vec<Symbol>, u64>,
    /// Total-variation distance to the exact table, when it was computable.
    pub tv_distance: Option<f64>,
    pub stream: Vec<Vec<Symbol>>,
}

/// Single-site heat-bath dynamics: repeatedly resample a uniformly chosen
/// site from its one-site kernel given the rest of the window. The invariant
/// distribution is the exact finite-volume Gibbs table (detailed balance).
/// Deterministic for a fixed seed.
pub fn glauber_chain(
    sft: &Sft,
    src: &CocycleSource,
    sites: &[Element],
    boundary: &Pattern,
    steps: u64,
    seed: u64,
    opts: &GlauberOptions,
) -> Result<GlauberOutcome> {
    let mut sites = sites.to_vec();
    sites.sort();
    sites.dedup();
    let fillings = enumerate_fillings_semantics(sft, &sites, boundary, AdmissibilitySemantics::LocalWindow)?;
    if fillings.is_empty() {
        return Err(Error::NoAdmissibleFilling);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = WindowConfig::new(fillings[0].clone(), boundary.clone())?;
    let burn_in = opts.burn_in.unwrap_or(steps / 10);
    let mut empirical: BTreeMap<Vec<Symbol>, u64> = BTreeMap::new();
    let mut stream = Vec::new();
    let asize = sft.alphabet().len() as u8;
    for step in 0..steps {
        let site = &sites[rng.gen_range(0..sites.len())];
        // Candidate states and their conditional log-weights.
        let mut weights: Vec<(Symbol, f64)> = Vec::with_capacity(asize as usize);
        for a in 0..asize {
            let patch = Pattern::from_cells([(site.clone(), Symbol(a))])?;
            let cand = state.with_patch(&patch)?;
            if !crate::subshift::is_window_admissible(sft, &cand) {
                continue;
            }
            weights.push((Symbol(a), src.conditional_log_weight(site, &cand)?));
        }
        let max = weights.iter().map(|(_, l)| *l).fold(f64::NEG_INFINITY, f64::max);
        let total: f64 = weights.iter().map(|(_, l)| (l - max).exp()).sum();
        let mut u = rng.gen::<f64>() * total;
        let mut chosen = weights[weights.len() - 1].0;
        for (a, l) in &weights {
            u -= (l - max).exp();
            if u <= 0.0 {
                chosen = *a;
                break;
            }
        }
        let patch = Pattern::from_cells([(site.clone(), chosen)])?;
        state = state.with_patch(&patch)?;
        if step >= burn_in {
            let key: Vec<Symbol> =
                sites.iter().map(|g| state.interior().get(g).unwrap()).collect();
            *empirical.entry(key.clone()).or_insert(0) += 1;
            if step % opts.thin == 0 && stream.len() < opts.max_stream {
                stream.push(key);
            }
        }
    }
    let tv_distance = match exact_gibbs(sft, src, &sites, boundary, AdmissibilitySemantics::LocalWindow) {
        Ok(gibbs) => {
            let total: u64 = empirical.values().sum();
            let mut tv = 0.0;
            for i in 0..gibbs.kernel.len() {
                let key = gibbs.kernel.key(i);
                let emp = empirical.get(&key).copied().unwrap_or(0) as f64 / total.max(1) as f64;
                tv += (gibbs.kernel.probabilities[i] - emp).abs();
            }
            // Configurations observed but not in the exact support would be a
            // bug; they would also show up here.
            for key in empirical.keys() {
                if gibbs.kernel.index_of_key(key).is_none() {
                    tv += empirical[key] as f64 / total.max(1) as f64;
                }
            }
            Some(tv / 2.0)
        }
        Err(Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(GlauberOutcome { sites, steps, seed, empirical, tv_distance, stream })
}

/// Termwise detailed-balance check of the single-site dynamics against the
/// exact table: `P(η) K(η→η') = P(η') K(η'→η)` over all single-site moves.
pub fn detailed_balance_deviation(
    sft: &Sft,
    src: &CocycleSource,
    mu: &FiniteVolumeGibbs,
) -> Result<f64> {
    mu.kernel.validate()?;
    let kernel = &mu.kernel;
    let n = kernel.len();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let (ki, kj) = (kernel.key(i), kernel.key(j));
            let diff: Vec<usize> = (0..ki.len()).filter(|&s| ki[s] != kj[s]).collect();
            if diff.len() != 1 {
                continue;
            }
            let site = &kernel.sites[diff[0]];
            let (wi, wj) = (kernel.window(i), kernel.window(j));
            // Conditional kernel at the shared rest: both moves draw from it.
            let li = src.conditional_log_weight(site, &wi)?;
            let lj = src.conditional_log_weight(site, &wj)?;
            let m = li.max(lj);
            // Normalizer over all admissible symbols at the site.
            let mut z = 0.0;
            for a in 0..sft.alphabet().len() as u8 {
                let cand = wi.with_patch(&Pattern::from_cells([(site.clone(), Symbol(a))])?)?;
                if crate::subshift::is_window_admissible(sft, &cand) {
                    z += (src.conditional_log_weight(site, &cand)? - m).exp();
                }
            }
            let k_ij = (lj - m).exp() / z;
            let k_ji = (li - m).exp() / z;
            let lhs = kernel.probabilities[i] * k_ij;
            let rhs = kernel.probabilities[j] * k_ji;
            worst = worst.max((lhs - rhs).abs());
        }
    }
    Ok(worst)
}

/// Result of a conformality sweep: the worst deviation of
/// `μ(ψ(w)) − exp(φ(w, ψ(w))) · μ(w)` over all swap involutions on `lambda`
/// and all singleton events in the support.
#[derive(Debug, Clone, Serialize)]
pub struct RnResult {
    pub pairs_tested: usize,
    pub windows_tested: usize,
    pub max_deviation: f64,
    pub semantics: AdmissibilitySemantics,
}

/// Certifies that the finite-volume measure transforms under every pattern
/// swap on `lambda` with Radon-Nikodym derivative `exp φ`.
pub fn verify_conformal(
    sft: &Sft,
    src: &CocycleSource,
    mu: &FiniteVolumeGibbs,
    lambda: &[Element],
) -> Result<RnResult> {
    mu.kernel.validate()?;
    let kernel = &mu.kernel;
    let semantics = kernel.semantics;
    let mut lambda = lambda.to_vec();
    lambda.sort();
    lambda.dedup();
    for g in &lambda {
        if !kernel.sites.contains(g) {
            return Err(Error::usage(format!("lambda site {g} is outside the window")));
        }
    }
    // Swap patterns: standalone-admissible fillings of lambda.
    let patterns = enumerate_fillings_semantics(sft, &lambda, &Pattern::empty(), semantics)?;
    let np = patterns.len();
    let index: BTreeMap<Vec<Symbol>, usize> =
        (0..kernel.len()).map(|i| (kernel.key(i), i)).collect();
    let per_pair: Vec<Result<f64>> = exec::filter_map_indices((np * np) as u64, |pair| {
        let (a, b) = ((pair / np as u64) as usize, (pair % np as u64) as usize);
        let run = || -> Result<f64> {
            let mut worst = 0.0f64;
            for i in 0..kernel.len() {
                let w = kernel.window(i);
                let swapped = holonomy_swap(sft, &patterns[a], &patterns[b], &w, semantics)?;
                if &swapped == &w {
                    continue;
                }
                let key: Vec<Symbol> = kernel
                    .sites
                    .iter()
                    .map(|g| swapped.interior().get(g).unwrap())
                    .collect();
                let j = *index.get(&key).ok_or_else(|| {
                    Error::validation("swap produced a filling outside the support")
                })?;
                let phi = src.cocycle(&w, &swapped, &lambda)?.value;
                let dev = (kernel.probabilities[j]
                    - phi.exp() * kernel.probabilities[i])
                    .abs();
                worst = worst.max(dev);
            }
            Ok(worst)
        };
        Some(run())
    });
    let mut max_deviation = 0.0f64;
    for r in per_pair {
        max_deviation = max_deviation.max(r?);
    }
    Ok(RnResult {
        pairs_tested: np * np,
        windows_tested: kernel.len(),
        max_deviation,
        semantics,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DlrConsistency {
    pub classes_tested: usize,
    pub skipped_zero_measure: usize,
    pub max_deviation: f64,
}

/// Conditional probabilities of `mu` on `delta` given the exterior match the
/// specification kernel there. Exterior classes of zero measure are skipped
/// and reported.
pub fn verify_dlr_conditionals(
    sft: &Sft,
    src: &CocycleSource,
    mu: &FiniteVolumeGibbs,
    delta: &[Element],
) -> Result<DlrConsistency> {
    mu.kernel.validate()?;
    let kernel = &mu.kernel;
    let mut delta = delta.to_vec();
    delta.sort();
    delta.dedup();
    for g in &delta {
        if !kernel.sites.contains(g) {
            return Err(Error::usage(format!("delta site {g} is outside the window")));
        }
    }
    let exterior_sites: Vec<Element> =
        kernel.sites.iter().filter(|g| !delta.contains(g)).cloned().collect();
    let mut classes: BTreeMap<Vec<Symbol>, Vec<usize>> = BTreeMap::new();
    for i in 0..kernel.len() {
        let key: Vec<Symbol> = exterior_sites
            .iter()
            .map(|g| kernel.fillings[i].get(g).expect("filling covers the window"))
            .collect();
        classes.entry(key).or_default().push(i);
    }
    let mut skipped = 0usize;
    let mut tested = 0usize;
    let mut max_deviation = 0.0f64;
    for (key, members) in &classes {
        let class_prob: f64 = members.iter().map(|&i| kernel.probabilities[i]).sum();
        if class_prob < 1e-14 {
            skipped += 1;
            continue;
        }
        tested += 1;
        let exterior = Pattern::from_cells(
            exterior_sites.iter().cloned().zip(key.iter().copied()),
        )?;
        let boundary = exterior.merged(&kernel.boundary)?;
        let cond_kernel = dlr_kernel(sft, src, &delta, &boundary, kernel.semantics)?;
        if cond_kernel.len() != members.len() {
            return Err(Error::validation(
                "conditional support does not match the window class".to_string(),
            ));
        }
        for &i in members {
            let dkey: Vec<Symbol> = delta
                .iter()
                .map(|g| kernel.fillings[i].get(g).unwrap())
                .collect();
            let j = cond_kernel
                .index_of_key(&dkey)
                .ok_or_else(|| Error::validation("class member missing from kernel"))?;
            let conditional = kernel.probabilities[i] / class_prob;
            max_deviation =
                max_deviation.max((conditional - cond_kernel.probabilities[j]).abs());
        }
    }
    Ok(DlrConsistency { classes_tested: tested, skipped_zero_measure: skipped, max_deviation })
}

/// The DLR kernel computed through the Birkhoff-style partial sums
/// `f_m(z) = Σ_{g ∈ B_m} f(g·z)`: probabilities proportional to `exp f_m(η)`.
/// For a local potential this equals [`dlr_kernel`] exactly once `B_m` covers
/// every translate whose value differs across fillings.
pub fn dlr_kernel_partial_sums(
    sft: &Sft,
    f: &Potential,
    sites: &[Element],
    boundary: &Pattern,
    m: u32,
    semantics: AdmissibilitySemantics,
) -> Result<SpecificationKernel> {
    let mut sites = sites.to_vec();
    sites.sort();
    sites.dedup();
    let fillings = enumerate_fillings_semantics(sft, &sites, boundary, semantics)?;
    if fillings.is_empty() {
        return Err(Error::NoAdmissibleFilling);
    }
    let mut log_weights = Vec::with_capacity(fillings.len());
    for fill in &fillings {
        let w = WindowConfig::new(fill.clone(), boundary.clone())?;
        log_weights.push(partial_sum_f_m(f, m, &w)?);
    }
    let max = log_weights.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = log_weights.iter().map(|l| (l - max).exp()).collect();
    let z: f64 = weights.iter().sum();
    Ok(SpecificationKernel {
        sites,
        boundary: boundary.clone(),
        fillings,
        probabilities: weights.iter().map(|w| w / z).collect(),
        semantics,
    })
}

/// Smallest `m` for which the partial-sum kernel on `sites` is exact for a
/// local potential: the open ball `B_m` must contain every `g` with
/// `g^{-1}·supp(f) ∩ sites ≠ ∅`.
pub fn partial_sum_radius(f: &Potential, sites: &[Element]) -> u32 {
    let local = f.as_local_for_eval();
    let mut m = 1;
    for term in local.terms() {
        for s in term.support() {
            for site in sites {
                // f(g·z) reads z at g^{-1}s; it meets `site` iff g = s·site^{-1}... inverted.
                let g = s.mul_unchecked(&site.inverse());
                m = m.max(g.word_length() + 1);
            }
        }
    }
    m
}

/// Tower consistency: marginal-conditional composition of the full-window
/// table reproduces the sub-window kernel. Alias of the conditional check,
/// reported separately for sub-windows.
pub fn tower_consistency(
    sft: &Sft,
    src: &CocycleSource,
    mu: &FiniteVolumeGibbs,
    delta: &[Element],
) -> Result<DlrConsistency> {
    verify_dlr_conditionals(sft, src, mu, delta)
}

/// Collar sites `(sites·B̄_reach) \ sites`, the cells a boundary must fix.
pub fn collar_sites(sites: &[Element], reach: u32) -> Result<Vec<Element>> {
    let Some(first) = sites.first() else {
        return Err(Error::usage("collar of an empty window"));
    };
    let table = BallTable::with_radius(first.spec(), reach)?;
    let mut out = std::collections::BTreeSet::new();
    for g in sites {
        for b in table.open_ball(reach + 1) {
            let cell = g.mul_unchecked(&b);
            if !sites.contains(&cell) {
                out.insert(cell);
            }
        }
    }
    Ok(out.into_iter().collect())
}
