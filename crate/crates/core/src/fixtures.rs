//! Ready-made interactions and shifts used by the test suites, the benches,
//! and the CLI examples.

use crate::group::{Element, GroupSpec, LatticeGens};
use crate::interaction::{table_index, Interaction, InteractionTerm};
use crate::subshift::{Alphabet, Pattern, Sft, Symbol};

pub fn z_spec() -> GroupSpec {
    GroupSpec::lattice(1, LatticeGens::Standard).unwrap()
}

pub fn z2_spec() -> GroupSpec {
    GroupSpec::lattice(2, LatticeGens::Standard).unwrap()
}

pub fn zel(i: i64) -> Element {
    Element::from_coords(z_spec(), &[i]).unwrap()
}

pub fn z2el(x: i64, y: i64) -> Element {
    Element::from_coords(z2_spec(), &[x, y]).unwrap()
}

fn spin(s: u8) -> f64 {
    if s == 1 {
        1.0
    } else {
        -1.0
    }
}

/// Nearest-neighbor Ising on `Z` over `{-,+}`: `Φ_{{0,1}}(x) = -β x_0 x_1`.
pub fn ising_interaction(beta: f64) -> Interaction {
    let alphabet = Alphabet::spins();
    let mut energies = vec![0.0; 4];
    for a in 0..2u8 {
        for b in 0..2u8 {
            energies[table_index(2, &[Symbol(a), Symbol(b)])] = -beta * spin(a) * spin(b);
        }
    }
    let term = InteractionTerm::new(&alphabet, vec![zel(0), zel(1)], energies).unwrap();
    Interaction::new(alphabet, vec![term], None)
}

/// Plaquette interaction on `Z²`: `-j` times the product of the four spins on
/// the unit square at the origin.
pub fn z2_plaquette_interaction(j: f64) -> Interaction {
    let alphabet = Alphabet::spins();
    let support = vec![z2el(0, 0), z2el(1, 0), z2el(0, 1), z2el(1, 1)];
    let mut energies = vec![0.0; 16];
    for idx in 0..16usize {
        let bits = [(idx >> 3) & 1, (idx >> 2) & 1, (idx >> 1) & 1, idx & 1];
        let prod: f64 = bits.iter().map(|&b| spin(b as u8)).product();
        energies[idx] = -j * prod;
    }
    let term = InteractionTerm::new(&alphabet, support, energies).unwrap();
    Interaction::new(alphabet, vec![term], None)
}

/// Site + bond energies on the golden mean shift: a field `h` on single 1s
/// and asymmetric bond energies on the admissible two-site words.
pub fn golden_mean_site_bond(h: f64) -> (Sft, Interaction) {
    let sft = crate::subshift::golden_mean_shift();
    let alphabet = Alphabet::binary();
    let site = InteractionTerm::from_sparse(
        &alphabet,
        vec![zel(0)],
        &[(vec![Symbol(1)], h)],
    )
    .unwrap();
    let bond = InteractionTerm::from_sparse(
        &alphabet,
        vec![zel(0), zel(1)],
        &[
            (vec![Symbol(0), Symbol(0)], 0.3),
            (vec![Symbol(0), Symbol(1)], -0.4),
            (vec![Symbol(1), Symbol(0)], 0.25),
        ],
    )
    .unwrap();
    (sft, Interaction::new(alphabet, vec![site, bond], None))
}

/// All-`+` boundary collar around the sites, thick enough for `reach`.
pub fn plus_collar(sites: &[Element], reach: u32) -> Pattern {
    let collar = crate::dlr::collar_sites(sites, reach).unwrap();
    crate::subshift::constant_pattern(&collar, Symbol(1))
}

/// All-`0` boundary collar around the sites.
pub fn zero_collar(sites: &[Element], reach: u32) -> Pattern {
    let collar = crate::dlr::collar_sites(sites, reach).unwrap();
    crate::subshift::constant_pattern(&collar, Symbol(0))
}
