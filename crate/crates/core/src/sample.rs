//! Seeded random terms for property tests and batch experiments.

use rand::Rng;

use crate::pi1::Surface;
use crate::term::{Symbol, Term};

/// Atoms used by [`core_term`].
pub const CORE_ATOMS: [&str; 3] = ["a", "b", "c"];

fn leaf<R: Rng + ?Sized>(rng: &mut R, atoms: &[&str]) -> Term {
    if rng.gen_ratio(1, 8) {
        Term::rho()
    } else {
        Term::atom(atoms[rng.gen_range(0..atoms.len())])
    }
}

/// A term over `rho`, `sigma`, `tau`, `subL`, `subR` and the atoms `a`, `b`,
/// `c`, of depth at most `max_depth` (a leaf has depth 1).
pub fn core_term<R: Rng + ?Sized>(rng: &mut R, max_depth: usize) -> Term {
    if max_depth <= 1 || rng.gen_ratio(3, 10) {
        return leaf(rng, &CORE_ATOMS);
    }
    let d = max_depth - 1;
    match rng.gen_range(0..10) {
        0..=2 => Term::sigma(core_term(rng, d)),
        3..=7 => Term::tau(core_term(rng, d), core_term(rng, d)),
        8 => Term::sub_l(core_term(rng, d), core_term(rng, d)),
        _ => Term::sub_r(core_term(rng, d), core_term(rng, d)),
    }
}

/// A loop over the generators of `surface` built from `rho`, `sigma` and
/// `tau`, of depth at most `max_depth`.
pub fn surface_term<R: Rng + ?Sized>(rng: &mut R, surface: Surface, max_depth: usize) -> Term {
    if max_depth <= 1 || rng.gen_ratio(3, 10) {
        return leaf(rng, surface.generators());
    }
    let d = max_depth - 1;
    if rng.gen_ratio(1, 3) {
        Term::sigma(surface_term(rng, surface, d))
    } else {
        Term::tau(surface_term(rng, surface, d), surface_term(rng, surface, d))
    }
}

/// A term that may use every operator, for ordering and parser tests.
pub fn any_term<R: Rng + ?Sized>(rng: &mut R, max_depth: usize) -> Term {
    if max_depth <= 1 || rng.gen_ratio(3, 10) {
        return leaf(rng, &CORE_ATOMS);
    }
    let d = max_depth - 1;
    let sym = Symbol::ALL[rng.gen_range(0..Symbol::ALL.len())];
    let (lo, hi) = sym.arity();
    let n = rng.gen_range(lo..=hi);
    Term::op(sym, (0..n).map(|_| any_term(rng, d)).collect()).expect("arity in range")
}
