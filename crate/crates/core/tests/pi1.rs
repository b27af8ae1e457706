//! Fundamental group computations against the counting oracle.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pathrw::pi1::{canonicalize, compose, inverse, oracle_count, to_path, Surface, SurfaceElement};
use pathrw::sample::surface_term;
use pathrw::{normalize, parse, Term};

fn surface() -> impl Strategy<Value = Surface> {
    proptest::sample::select(Surface::ALL.to_vec())
}

fn element(s: Surface) -> BoxedStrategy<SurfaceElement> {
    match s {
        Surface::Circle => (-8i64..=8).prop_map(SurfaceElement::Circle).boxed(),
        Surface::Torus => (-8i64..=8, -8i64..=8)
            .prop_map(|(m, n)| SurfaceElement::Torus(m, n))
            .boxed(),
        Surface::ProjectivePlane => (0u8..=1).prop_map(SurfaceElement::ProjectivePlane).boxed(),
    }
}

fn nf(t: Term) -> Term {
    normalize(&t).unwrap().final_term().clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn canonical_form_matches_oracle(s in surface(), seed in any::<u64>()) {
        let t = surface_term(&mut ChaCha8Rng::seed_from_u64(seed), s, 8);
        let c = canonicalize(s, &t).unwrap();
        prop_assert_eq!(c.element, oracle_count(s, &t).unwrap());
        prop_assert_eq!(nf(to_path(c.element)), nf(c.final_word().to_term()));
    }

    #[test]
    fn homomorphism((s, x, y) in surface().prop_flat_map(|s| (Just(s), element(s), element(s)))) {
        let t = Term::tau(to_path(x), to_path(y));
        prop_assert_eq!(canonicalize(s, &t).unwrap().element, compose(x, y).unwrap());
        let inv = Term::sigma(to_path(x));
        prop_assert_eq!(canonicalize(s, &inv).unwrap().element, inverse(x));
    }

    #[test]
    fn group_axioms_on_paths(
        (a, b, c) in surface().prop_flat_map(|s| (element(s), element(s), element(s)))
    ) {
        let (a, b, c) = (to_path(a), to_path(b), to_path(c));
        prop_assert_eq!(
            nf(Term::tau(Term::tau(a.clone(), b.clone()), c.clone())),
            nf(Term::tau(a.clone(), Term::tau(b, c)))
        );
        prop_assert_eq!(nf(Term::tau(a.clone(), Term::rho())), nf(a.clone()));
        prop_assert_eq!(nf(Term::tau(a.clone(), Term::sigma(a))), Term::rho());
    }
}

#[test]
fn kernel_is_trivial() {
    for s in Surface::ALL {
        for m in -8..=8 {
            for n in -8..=8 {
                let e = match s {
                    Surface::Circle => SurfaceElement::Circle(m),
                    Surface::Torus => SurfaceElement::Torus(m, n),
                    Surface::ProjectivePlane => SurfaceElement::ProjectivePlane(m.rem_euclid(2) as u8),
                };
                assert_eq!(nf(to_path(e)) == Term::rho(), e == s.identity(), "{e}");
            }
        }
    }
}

#[test]
fn projective_plane_self_inverse() {
    let rp2 = Surface::ProjectivePlane;
    let one = SurfaceElement::ProjectivePlane(1);
    assert_eq!(canonicalize(rp2, &parse("sigma(alpha)").unwrap()).unwrap().element, one);
    assert_eq!(canonicalize(rp2, &parse("alpha").unwrap()).unwrap().element, one);
    let c = canonicalize(rp2, &parse("tau(sigma(alpha),tau(alpha,alpha))").unwrap()).unwrap();
    assert_eq!(c.element, one);
    assert!(c.relation_steps.iter().all(|s| s.relation == "cicl"));
}

#[test]
fn circle_examples() {
    let c = Surface::Circle;
    let canon = |s: &str| canonicalize(c, &parse(s).unwrap()).unwrap().element;
    assert_eq!(canon("tau(sigma(loop),loop)"), SurfaceElement::Circle(0));
    assert_eq!(canon("tau(tau(loop,loop),loop)"), SurfaceElement::Circle(3));
    assert_eq!(canon("tau(sigma(loop),sigma(loop))"), SurfaceElement::Circle(-2));
    assert_eq!(nf(parse("tau(sigma(loop),sigma(loop))").unwrap()), nf(to_path(SurfaceElement::Circle(-2))));
}
