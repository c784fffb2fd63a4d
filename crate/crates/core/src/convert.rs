//! Translate-weighting maps between interactions and potentials: the uniform
//! map, dictator maps, checks that all of them induce the same cocycle and the
//! same mean energy, the exact inverse for local potentials, and the long-range
//! pair interaction whose image fails to be shell-regular.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dlr::FiniteVolumeGibbs;
use crate::error::{Error, Result};
use crate::exec;
use crate::group::{BallConvention, BallTable, Element, GroupSpec};
use crate::interaction::{
    b_norm, cocycle_interaction, table_index, table_len, BNorm, Interaction, InteractionTerm,
    Tail, TailBound,
};
use crate::potential::{
    cocycle_potential, inverse_square_tail, shell_norm, LocalPotential, NormReport, Potential,
    PotentialTerm, SeriesPotential, VariationFormula,
};
use crate::subshift::{
    decode_filling, enumerate_fillings, is_locally_admissible, Alphabet, Pattern, Sft, Symbol,
    WindowConfig,
};

/// Designation rule of a dictator map: which translate of each orbit carries
/// the whole weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DictatorRule {
    /// The translate that is shortlex-least among the orbit members containing
    /// the identity, comparing supports as shortlex-sorted element sequences.
    /// Well-defined on every built-in group; designed so that centered balls
    /// are their own designates.
    ShortlexMin,
    /// Weight on `Λ` iff the identity is the lexicographically least element
    /// of `Λ` (integer lattices only; on `Z` this is `0 = inf Λ`).
    LexMin,
    /// Weight on `Λ` iff the identity is the `⌊(|Λ|+1)/2⌋`-th element of `Λ`
    /// in lexicographic order (integer lattices only).
    LexMiddle,
}

/// Nonnegative weights `a_Λ` over the translates of each orbit containing the
/// identity, summing to one per orbit.
#[derive(Debug, Clone)]
pub enum WeightScheme {
    Uniform,
    Dictator(DictatorRule),
    /// Per representative: one weight per translate `f_j^{-1}·Λ`, following
    /// the shortlex order of the representative support.
    Explicit(Vec<Vec<f64>>),
}

impl WeightScheme {
    pub fn describe(&self) -> String {
        match self {
            WeightScheme::Uniform => "uniform".into(),
            WeightScheme::Dictator(DictatorRule::ShortlexMin) => "dictator:shortlex-min".into(),
            WeightScheme::Dictator(DictatorRule::LexMin) => "dictator:lex-min".into(),
            WeightScheme::Dictator(DictatorRule::LexMiddle) => "dictator:lex-middle".into(),
            WeightScheme::Explicit(_) => "explicit".into(),
        }
    }
}

fn is_lattice(spec: GroupSpec) -> bool {
    matches!(spec, GroupSpec::IntegerLattice { .. })
}

/// Index `j` such that the translate `f_j^{-1}·support` is the designated one.
fn dictator_index(rule: DictatorRule, support: &[Element]) -> Result<usize> {
    let spec = support[0].spec();
    match rule {
        DictatorRule::ShortlexMin => {
            // Canonical orbit member: minimal shortlex-sorted element sequence.
            let mut best: Option<(Vec<Element>, usize)> = None;
            for (j, f) in support.iter().enumerate() {
                let f_inv = f.inverse();
                let mut translate: Vec<Element> =
                    support.iter().map(|g| f_inv.mul_unchecked(g)).collect();
                translate.sort();
                match &best {
                    Some((cur, _)) if *cur <= translate => {}
                    _ => best = Some((translate, j)),
                }
            }
            Ok(best.expect("nonempty support").1)
        }
        DictatorRule::LexMin | DictatorRule::LexMiddle => {
            if !is_lattice(spec) {
                return Err(Error::usage(
                    "lex dictator rules are defined on integer lattices only",
                ));
            }
            let mut order: Vec<usize> = (0..support.len()).collect();
            order.sort_by(|&a, &b| {
                support[a].lattice_lex_cmp(&support[b]).expect("same lattice")
            });
            let pick = match rule {
                DictatorRule::LexMin => 0,
                // 1-indexed ⌊(|Λ|+1)/2⌋-th element in lex order.
                _ => (support.len() + 1) / 2 - 1,
            };
            Ok(order[pick])
        }
    }
}

/// The weight vector `(a_{f_j^{-1}Λ})_j` for one representative support.
pub fn weights_for_support(scheme: &WeightScheme, term_idx: usize, support: &[Element]) -> Result<Vec<f64>> {
    let n = support.len();
    match scheme {
        WeightScheme::Uniform => Ok(vec![1.0 / n as f64; n]),
        WeightScheme::Dictator(rule) => {
            let mut w = vec![0.0; n];
            w[dictator_index(*rule, support)?] = 1.0;
            Ok(w)
        }
        WeightScheme::Explicit(table) => {
            let w = table.get(term_idx).ok_or_else(|| {
                Error::validation(format!("explicit scheme has no weights for orbit {term_idx}"))
            })?;
            if w.len() != n {
                return Err(Error::validation(format!(
                    "orbit {term_idx}: {} weights for a support of size {n}",
                    w.len()
                )));
            }
            if w.iter().any(|a| *a < 0.0 || !a.is_finite()) {
                return Err(Error::validation(format!(
                    "orbit {term_idx}: weights must be nonnegative"
                )));
            }
            let sum: f64 = w.iter().sum();
            if (sum - 1.0).abs() > 1e-12 {
                return Err(Error::validation(format!(
                    "orbit {term_idx}: weights sum to {sum}, expected 1"
                )));
            }
            Ok(w.clone())
        }
    }
}

/// `A_Φ(x) = −Σ_{Λ ∋ e} a_Λ Φ_Λ(x)`, materialized as a local potential with
/// one piece per translate carrying nonzero weight. Linear in `Φ`. Interactions
/// with a declared tail must be truncated first.
pub fn translate_weight(phi: &Interaction, scheme: &WeightScheme) -> Result<Potential> {
    if phi.tail().is_some() {
        return Err(Error::usage(
            "translate weighting applies to finite interactions; truncate the tail first",
        ));
    }
    let alphabet = phi.alphabet().clone();
    let asize = alphabet.len();
    let mut pieces = Vec::new();
    for (t, term) in phi.terms().iter().enumerate() {
        let support = term.support();
        let weights = weights_for_support(scheme, t, support)?;
        for (j, &a) in weights.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let f_inv = support[j].inverse();
            let translated: Vec<Element> =
                support.iter().map(|g| f_inv.mul_unchecked(g)).collect();
            // Sorted order of the translated support permutes the table axes.
            let mut order: Vec<usize> = (0..translated.len()).collect();
            order.sort_by(|&x, &y| translated[x].cmp(&translated[y]));
            let sorted: Vec<Element> = order.iter().map(|&i| translated[i].clone()).collect();
            let len = table_len(asize, support.len())?;
            let mut table = vec![0.0; len];
            for idx in 0..len {
                let assignment = decode_symbols(asize, support.len(), idx);
                let permuted: Vec<Symbol> = order.iter().map(|&i| assignment[i]).collect();
                table[table_index(asize, &permuted)] = -a * term.energies()[idx];
            }
            pieces.push(PotentialTerm::new(&alphabet, sorted, table)?);
        }
    }
    Ok(Potential::Local(LocalPotential::new(alphabet, pieces)))
}

fn decode_symbols(asize: usize, sites: usize, mut idx: usize) -> Vec<Symbol> {
    let mut out = vec![Symbol(0); sites];
    for slot in out.iter_mut().rev() {
        *slot = Symbol((idx % asize) as u8);
        idx /= asize;
    }
    out
}

/// Rejection-samples a locally admissible assignment on `region`.
fn sample_admissible(
    sft: &Sft,
    region: &[Element],
    rng: &mut ChaCha8Rng,
    max_tries: u32,
) -> Result<Pattern> {
    let asize = sft.alphabet().len() as u8;
    for _ in 0..max_tries {
        let p = Pattern::from_cells(
            region.iter().map(|g| (g.clone(), Symbol(rng.gen_range(0..asize)))),
        )?;
        if is_locally_admissible(sft, &p) {
            return Ok(p);
        }
    }
    Err(Error::domain(format!(
        "no admissible sample on a {}-site region after {max_tries} tries",
        region.len()
    )))
}

#[derive(Debug, Clone, Serialize)]
pub struct SameCocycleReport {
    pub pairs_tested: usize,
    /// `max |φ_{A_Φ} − φ_Φ|` under the first scheme.
    pub max_vs_interaction: f64,
    /// `max |φ_{A_Φ,s1} − φ_{A_Φ,s2}|`.
    pub max_between_schemes: f64,
}

/// Randomized certification that `Φ` and its images under two weighting
/// schemes all induce the same cocycle: asymptotic pairs are sampled in random
/// windows and the three cocycle evaluations compared. Deterministic per seed.
pub fn check_same_cocycle(
    sft: &Sft,
    phi: &Interaction,
    s1: &WeightScheme,
    s2: &WeightScheme,
    trials: u32,
    seed: u64,
) -> Result<SameCocycleReport> {
    let f1 = translate_weight(phi, s1)?;
    let f2 = translate_weight(phi, s2)?;
    let spec = phi
        .terms()
        .first()
        .map(|t| t.support()[0].spec())
        .ok_or_else(|| Error::usage("same-cocycle check needs a nonzero interaction"))?;
    let reach = phi.reach().max(sft.range());
    let delta_pool = BallTable::with_radius(spec, 2)?.open_ball(3);
    let halo = BallTable::with_radius(spec, reach)?.open_ball(reach + 1);
    let per_trial: Vec<Result<(f64, f64)>> = exec::filter_map_indices(trials as u64, |t| {
        let run = || -> Result<(f64, f64)> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t));
            // Random difference set Δ of one to three sites near the origin.
            let mut delta = BTreeSet::new();
            for _ in 0..rng.gen_range(1..=3usize) {
                delta.insert(delta_pool[rng.gen_range(0..delta_pool.len())].clone());
            }
            let delta: Vec<Element> = delta.into_iter().collect();
            let mut region = BTreeSet::new();
            for d in &delta {
                for b in &halo {
                    region.insert(d.mul_unchecked(b));
                }
            }
            let region: Vec<Element> = region.into_iter().collect();
            let full = sample_admissible(sft, &region, &mut rng, 20_000)?;
            let boundary = full.without(delta.iter());
            let wx = WindowConfig::new(full.restricted_to(delta.iter()), boundary.clone())?;
            let refills = enumerate_fillings(sft, &delta, &boundary)?;
            let wy = WindowConfig::new(
                refills[rng.gen_range(0..refills.len())].clone(),
                boundary,
            )?;
            let phi_val = cocycle_interaction(phi, &wx, &wy, &delta)?.value;
            let a1 = cocycle_potential(&f1, &wx, &wy, &delta)?.value;
            let a2 = cocycle_potential(&f2, &wx, &wy, &delta)?.value;
            Ok(((a1 - phi_val).abs(), (a1 - a2).abs()))
        };
        Some(run())
    });
    let mut max_vs_interaction = 0.0f64;
    let mut max_between_schemes = 0.0f64;
    for r in per_trial {
        let (a, b) = r?;
        max_vs_interaction = max_vs_interaction.max(a);
        max_between_schemes = max_between_schemes.max(b);
    }
    Ok(SameCocycleReport {
        pairs_tested: trials as usize,
        max_vs_interaction,
        max_between_schemes,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct MeanEnergyReport {
    /// `∫ A_Φ dμ`, evaluated through the scheme's weights over fully
    /// determined translates.
    pub weighted: f64,
    /// The weight-free closed form `−Σ_{Λ ∋ e} (1/|Λ|) ∫ Φ_Λ dμ`.
    pub closed_form: f64,
    pub translates_used: usize,
}

/// Mean energy of the window measure. Both the scheme-weighted integral and
/// the closed form average each orbit over its fully determined translates,
/// which makes the result independent of the weights; computing the weighted
/// value through the scheme exercises its normalization numerically.
pub fn mean_energy(
    phi: &Interaction,
    mu: &FiniteVolumeGibbs,
    scheme: &WeightScheme,
) -> Result<MeanEnergyReport> {
    mu.kernel.validate()?;
    let asize = phi.alphabet().len();
    let determined: BTreeSet<Element> = mu
        .kernel
        .sites
        .iter()
        .cloned()
        .chain(mu.kernel.boundary.support().cloned())
        .collect();
    let mut weighted = 0.0;
    let mut closed_form = 0.0;
    let mut translates_used = 0usize;
    for (t, term) in phi.terms().iter().enumerate() {
        let weights = weights_for_support(scheme, t, term.support())?;
        // Fully determined translates δ·support ⊆ determined region.
        let mut translates: BTreeSet<Element> = BTreeSet::new();
        for cell in &determined {
            for f in term.support() {
                let delta = cell.mul_unchecked(&f.inverse());
                if term.support().iter().all(|g| determined.contains(&delta.mul_unchecked(g))) {
                    translates.insert(delta);
                }
            }
        }
        if translates.is_empty() {
            return Err(Error::domain(format!(
                "window too small to evaluate the support of orbit {t}"
            )));
        }
        let n = translates.len() as f64;
        translates_used += translates.len();
        for delta in &translates {
            let mut expectation = 0.0;
            for i in 0..mu.kernel.len() {
                let w = mu.kernel.window(i);
                expectation += mu.kernel.probabilities[i] * term.value_at(asize, delta, &w)?;
            }
            // Σ_j a_j = 1 per orbit; kept explicit so the scheme's weights
            // participate in the computation.
            let sigma: f64 = weights.iter().sum();
            weighted += -(sigma * expectation) / n;
            closed_form +=
                -(term.support().len() as f64 * expectation) / (term.support().len() as f64 * n);
        }
    }
    Ok(MeanEnergyReport { weighted, closed_form, translates_used })
}

/// The exact preimage of a local potential: a single representative on the
/// closed ball of the potential's radius with table `−f`. The designated
/// dictator translate of a centered ball is the ball itself, so
/// `translate_weight(result, dictator shortlex-min)` reproduces `f` exactly.
pub fn interaction_from_potential(f: &Potential) -> Result<Interaction> {
    let Potential::Local(local) = f else {
        return Err(Error::usage(
            "only local potentials have the exact single-orbit preimage",
        ));
    };
    let support_sites = local.union_support();
    let spec = support_sites
        .first()
        .map(|g| g.spec())
        .ok_or_else(|| Error::usage("cannot infer the group of a constant potential"))?;
    let radius = local.radius().max(1);
    let ball = BallTable::with_radius(spec, radius - 1)?.closed_ball(radius - 1);
    let alphabet = local.alphabet().clone();
    let asize = alphabet.len();
    let len = table_len(asize, ball.len())?;
    let mut energies = vec![0.0; len];
    for idx in 0..len {
        let assignment = decode_filling(&ball, asize as u64, idx as u64);
        energies[idx] = -local.value_on_pattern(&assignment)?;
    }
    let term = InteractionTerm::new(&alphabet, ball.clone(), energies)?;
    // The construction relies on the ball being its own dictator designate.
    let designated = dictator_index(DictatorRule::ShortlexMin, &ball)?;
    if !ball[designated].is_identity() {
        return Err(Error::validation(
            "internal: the centered ball is not its own dictator designate",
        ));
    }
    Ok(Interaction::new(alphabet, vec![term], None))
}

/// The long-range pair interaction `Φ_{{i,j}}(x) = 1/(j−i)²` on `x_i = x_j = 1`
/// over `{0,1}^Z`, truncated at range `R`, together with its norm data and its
/// dictator image (weight on `Λ` iff `0 = inf Λ`), whose shell norm diverges.
#[derive(Debug)]
pub struct CounterexampleReport {
    pub interaction: Interaction,
    pub truncation: u32,
    pub b_norm: BNorm,
    /// Analytic `v_1` of the untruncated image.
    pub v1: f64,
    /// The untruncated image with its analytic variation formula.
    pub image_series: Potential,
    /// The dictator image of the truncated part.
    pub image_truncated: Potential,
    /// Divergence-certified shell norm of the untruncated image.
    pub shell_report: NormReport,
}

pub fn counterexample_interaction(truncation: u32, kmax: u32) -> Result<CounterexampleReport> {
    if truncation < 1 {
        return Err(Error::usage("truncation radius must be at least 1"));
    }
    let alphabet = Alphabet::binary();
    let spec = crate::fixtures::z_spec();
    let zel = |i: i64| Element::from_coords(spec, &[i]).unwrap();
    let mut terms = Vec::with_capacity(truncation as usize);
    for j in 1..=truncation as i64 {
        terms.push(InteractionTerm::from_sparse(
            &alphabet,
            vec![zel(0), zel(j)],
            &[(vec![Symbol(1), Symbol(1)], 1.0 / (j * j) as f64)],
        )?);
    }
    let finite = Interaction::new(alphabet.clone(), terms.clone(), None);
    let image_truncated = translate_weight(&finite, &WeightScheme::Dictator(DictatorRule::LexMin))?;
    let interaction = Interaction::new(
        alphabet.clone(),
        terms,
        Some(Tail { truncated_at: truncation, bound: TailBound::InverseN { numerator: 2.0 } }),
    );
    let materialized = truncation.min(64) as usize;
    let pieces: Vec<PotentialTerm> = match &image_truncated {
        Potential::Local(l) => l.terms().iter().take(materialized).cloned().collect(),
        _ => unreachable!(),
    };
    let image_series = Potential::Series(SeriesPotential::new(
        alphabet.clone(),
        pieces,
        VariationFormula::InverseSquareTail { scale: 1.0 },
        inverse_square_tail(1),
        inverse_square_tail(materialized as u32 + 1),
    ));
    let sft = Sft::full_shift(alphabet);
    let shell_report = shell_norm(
        &image_series,
        &sft,
        spec,
        kmax,
        BallConvention::Open,
        crate::subshift::AdmissibilitySemantics::LocalWindow,
    )?;
    Ok(CounterexampleReport {
        b_norm: b_norm(&interaction),
        interaction,
        truncation,
        v1: inverse_square_tail(1),
        image_series,
        image_truncated,
        shell_report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{golden_mean_site_bond, ising_interaction, z2el, zel};
    use crate::potential::{variation, NormValue, VariationValue};
    use crate::subshift::{constant_pattern, z_interval, AdmissibilitySemantics};

    fn bond_values(f: &Potential, bits: &[(i64, u8)]) -> f64 {
        let p = Pattern::from_cells(bits.iter().map(|&(i, s)| (zel(i), Symbol(s)))).unwrap();
        match f {
            Potential::Local(l) => l.value_on_pattern(&p).unwrap(),
            _ => unreachable!(),
        }
    }

    #[test]
    fn uniform_map_of_ising_splits_bonds() {
        // A_Φ(x) = (β/2)(x_{-1}x_0 + x_0x_1).
        let phi = ising_interaction(1.0);
        let f = translate_weight(&phi, &WeightScheme::Uniform).unwrap();
        let all_plus = bond_values(&f, &[(-1, 1), (0, 1), (1, 1)]);
        assert!((all_plus - 1.0).abs() < 1e-15);
        let mixed = bond_values(&f, &[(-1, 1), (0, 1), (1, 0)]);
        assert!((mixed - 0.0).abs() < 1e-15);
    }

    #[test]
    fn dictator_map_of_ising_keeps_forward_bond() {
        // Weight on {0,1}; nothing on {-1,0}.
        let phi = ising_interaction(1.0);
        let f =
            translate_weight(&phi, &WeightScheme::Dictator(DictatorRule::ShortlexMin)).unwrap();
        match &f {
            Potential::Local(l) => {
                assert_eq!(l.terms().len(), 1);
                let sites: Vec<i64> =
                    l.terms()[0].support().iter().map(|g| g.coords().unwrap()[0]).collect();
                assert_eq!(sites, vec![0, 1]);
            }
            _ => unreachable!(),
        }
        let v = bond_values(&f, &[(0, 1), (1, 0)]);
        assert!((v - (-1.0)).abs() < 1e-15); // -Φ = +x_0x_1 = -1 on +-
    }

    #[test]
    fn lex_rules_match_shortlex_on_the_ising_bond() {
        let phi = ising_interaction(0.5);
        for rule in [DictatorRule::LexMin, DictatorRule::ShortlexMin] {
            let f = translate_weight(&phi, &WeightScheme::Dictator(rule)).unwrap();
            match &f {
                Potential::Local(l) => {
                    let sites: Vec<i64> =
                        l.terms()[0].support().iter().map(|g| g.coords().unwrap()[0]).collect();
                    assert_eq!(sites, vec![0, 1], "{rule:?}");
                }
                _ => unreachable!(),
            }
        }
        // lex-middle of {0,1} designates the first element in lex order too
        // (⌊(2+1)/2⌋ = 1st), so the same translate carries the weight.
        let f = translate_weight(&phi, &WeightScheme::Dictator(DictatorRule::LexMiddle)).unwrap();
        match &f {
            Potential::Local(l) => {
                let sites: Vec<i64> =
                    l.terms()[0].support().iter().map(|g| g.coords().unwrap()[0]).collect();
                assert_eq!(sites, vec![0, 1]);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn explicit_scheme_validation() {
        let phi = ising_interaction(1.0);
        let bad = WeightScheme::Explicit(vec![vec![0.7, 0.7]]);
        assert!(matches!(translate_weight(&phi, &bad), Err(Error::Validation(_))));
        let negative = WeightScheme::Explicit(vec![vec![1.5, -0.5]]);
        assert!(translate_weight(&phi, &negative).is_err());
        let good = WeightScheme::Explicit(vec![vec![0.25, 0.75]]);
        assert!(translate_weight(&phi, &good).is_ok());
    }

    #[test]
    fn translate_weight_is_linear() {
        let phi = ising_interaction(1.0);
        let psi = ising_interaction(0.25);
        let sum = phi.scaled_sum(2.0, &psi).unwrap();
        let s = WeightScheme::Uniform;
        let f_sum = translate_weight(&sum, &s).unwrap();
        let f_phi = translate_weight(&phi, &s).unwrap();
        let f_psi = translate_weight(&psi, &s).unwrap();
        for bits in [[1u8, 1, 1], [1, 0, 1], [0, 0, 1], [0, 1, 0]] {
            let at = |f: &Potential| {
                bond_values(f, &[(-1, bits[0]), (0, bits[1]), (1, bits[2])])
            };
            assert!((at(&f_sum) - (2.0 * at(&f_phi) + at(&f_psi))).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_interaction_maps_to_zero() {
        let phi = Interaction::zero(Alphabet::spins());
        let f = translate_weight(&phi, &WeightScheme::Uniform).unwrap();
        match f {
            Potential::Local(l) => assert!(l.terms().is_empty()),
            _ => unreachable!(),
        }
    }

    #[test]
    fn same_cocycle_on_ising() {
        let sft = Sft::full_shift(Alphabet::spins());
        let phi = ising_interaction(1.0);
        let report = check_same_cocycle(
            &sft,
            &phi,
            &WeightScheme::Uniform,
            &WeightScheme::Dictator(DictatorRule::ShortlexMin),
            50,
            42,
        )
        .unwrap();
        assert!(report.max_vs_interaction <= 1e-10, "{report:?}");
        assert!(report.max_between_schemes <= 1e-10, "{report:?}");
    }

    #[test]
    fn same_cocycle_on_golden_mean() {
        let (sft, phi) = golden_mean_site_bond(0.2);
        let report = check_same_cocycle(
            &sft,
            &phi,
            &WeightScheme::Uniform,
            &WeightScheme::Dictator(DictatorRule::LexMin),
            50,
            7,
        )
        .unwrap();
        assert!(report.max_vs_interaction <= 1e-10, "{report:?}");
        assert!(report.max_between_schemes <= 1e-10, "{report:?}");
    }

    #[test]
    fn same_cocycle_on_z2_plaquette() {
        let sft = Sft::full_shift(Alphabet::spins());
        let phi = crate::fixtures::z2_plaquette_interaction(0.4);
        let report = check_same_cocycle(
            &sft,
            &phi,
            &WeightScheme::Uniform,
            &WeightScheme::Dictator(DictatorRule::ShortlexMin),
            25,
            11,
        )
        .unwrap();
        assert!(report.max_vs_interaction <= 1e-10, "{report:?}");
    }

    #[test]
    fn mean_energy_point_mass_all_plus() {
        // Ising β=1 at the all-plus point mass: +1 for every scheme, and the
        // closed form agrees.
        let phi = ising_interaction(1.0);
        let sites = z_interval(0, 3);
        let w = WindowConfig::new(
            constant_pattern(&sites, Symbol(1)),
            crate::fixtures::plus_collar(&sites, phi.reach()),
        )
        .unwrap();
        let mu = FiniteVolumeGibbs::point_mass(&w);
        for scheme in [
            WeightScheme::Uniform,
            WeightScheme::Dictator(DictatorRule::ShortlexMin),
            WeightScheme::Dictator(DictatorRule::LexMin),
        ] {
            let report = mean_energy(&phi, &mu, &scheme).unwrap();
            assert!((report.weighted - 1.0).abs() < 1e-12, "{report:?}");
            assert!((report.closed_form - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn mean_energy_zero_interaction() {
        let phi = ising_interaction(0.0);
        let sites = z_interval(0, 1);
        let w = WindowConfig::new(
            constant_pattern(&sites, Symbol(1)),
            crate::fixtures::plus_collar(&sites, phi.reach()),
        )
        .unwrap();
        let mu = FiniteVolumeGibbs::point_mass(&w);
        let report = mean_energy(&phi, &mu, &WeightScheme::Uniform).unwrap();
        assert_eq!(report.weighted, 0.0);
    }

    #[test]
    fn mean_energy_scheme_agreement_on_gibbs_window() {
        let sft = Sft::full_shift(Alphabet::spins());
        let phi = ising_interaction(0.8);
        let sites = z_interval(0, 7);
        let boundary = crate::fixtures::plus_collar(&sites, phi.reach());
        let mu = crate::dlr::exact_gibbs(
            &sft,
            &crate::dlr::CocycleSource::Interaction(phi.clone()),
            &sites,
            &boundary,
            AdmissibilitySemantics::LocalWindow,
        )
        .unwrap();
        let uniform = mean_energy(&phi, &mu, &WeightScheme::Uniform).unwrap();
        let dictator =
            mean_energy(&phi, &mu, &WeightScheme::Dictator(DictatorRule::LexMiddle)).unwrap();
        assert!((uniform.weighted - dictator.weighted).abs() <= 1e-10);
        assert!((uniform.weighted - uniform.closed_form).abs() <= 1e-10);
    }

    #[test]
    fn preimage_round_trip_is_exact() {
        let f = crate::potential::spin_bond_potential();
        let phi = interaction_from_potential(&f).unwrap();
        // ‖Φ‖_B = |B_2| · ‖f‖_∞ = 3 on Z.
        assert_eq!(b_norm(&phi).value, 3.0);
        let back = translate_weight(&phi, &WeightScheme::Dictator(DictatorRule::ShortlexMin))
            .unwrap();
        // Exact equality on all 8 patterns of the ball {-1,0,1}.
        for bits in 0..8u8 {
            let p = Pattern::from_cells(
                [
                    (zel(-1), Symbol(bits >> 2 & 1)),
                    (zel(0), Symbol(bits >> 1 & 1)),
                    (zel(1), Symbol(bits & 1)),
                ],
            )
            .unwrap();
            let orig = match &f {
                Potential::Local(l) => l.value_on_pattern(&p).unwrap(),
                _ => unreachable!(),
            };
            let round = match &back {
                Potential::Local(l) => l.value_on_pattern(&p).unwrap(),
                _ => unreachable!(),
            };
            assert_eq!(orig, round, "bits {bits:03b}");
        }
    }

    #[test]
    fn preimage_of_zero_is_zero() {
        let alphabet = Alphabet::binary();
        let f = Potential::Local(LocalPotential::new(
            alphabet.clone(),
            vec![PotentialTerm::from_sparse(&alphabet, vec![zel(0)], &[]).unwrap()],
        ));
        let phi = interaction_from_potential(&f).unwrap();
        assert_eq!(b_norm(&phi).value, 0.0);
    }

    #[test]
    fn preimage_rejects_series() {
        let report = counterexample_interaction(8, 16).unwrap();
        assert!(interaction_from_potential(&report.image_series).is_err());
    }

    #[test]
    fn counterexample_norms() {
        let report = counterexample_interaction(10_000, 64).unwrap();
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        // ‖Φ‖_B partial sums reach π²/3 within 1e-3 at R = 10^4.
        assert!((report.b_norm.value - pi2 / 3.0).abs() < 1e-3, "{}", report.b_norm.value);
        // v_1(A_Φ) = π²/6 by the tail formula.
        assert!((report.v1 - pi2 / 6.0).abs() < 1e-6);
        // Divergence certificate with the harmonic minorant 2·H_K.
        match &report.shell_report.value {
            NormValue::Divergent(cert) => {
                assert!(cert.crossed_at_k <= 200, "crossed at {}", cert.crossed_at_k);
                assert!(cert.value_at_crossing > 10.0);
            }
            _ => panic!("expected divergence"),
        }
    }

    #[test]
    fn counterexample_image_variations_match_formula() {
        let report = counterexample_interaction(64, 16).unwrap();
        let sft = Sft::full_shift(Alphabet::binary());
        let VariationValue { value: v1, .. } = variation(
            &report.image_series,
            &sft,
            1,
            AdmissibilitySemantics::LocalWindow,
        )
        .unwrap();
        assert!((v1 - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-6);
    }

    #[test]
    fn counterexample_is_not_full_dimensional_in_the_limit() {
        // The pair {0,R} escapes the closed ball of radius R: ratio (2R+1)/2.
        let report = counterexample_interaction(50, 8).unwrap();
        let fd = crate::interaction::is_full_dimensional(&report.interaction).unwrap();
        assert!(!fd.holds);
        assert!((fd.c - 101.0 / 2.0).abs() < 1e-12);
    }

    #[test]
    fn z2_dictator_shortlex_min_designates_centered_ball() {
        // The closed unit ball in Z² must be its own designate.
        let spec = crate::fixtures::z2_spec();
        let ball = BallTable::with_radius(spec, 1).unwrap().closed_ball(1);
        let j = dictator_index(DictatorRule::ShortlexMin, &ball).unwrap();
        assert!(ball[j].is_identity());
        let _ = z2el(0, 0);
    }
}
