//! Second-level rewriting and independence of choice.

use pathrw::meta::{cd2_equal, cd2_interleavings, rw2_equal, rw2_normalize, staircases, MetaTerm, Witness};
use pathrw::{normalize, parse, Position, RuleSet, RewriteTrace, Term};

fn chain(k: usize, atom: &str) -> RewriteTrace {
    let t = (0..2 * k).fold(Term::atom(atom), |acc, _| Term::sigma(acc));
    normalize(&t).unwrap()
}

#[test]
fn interleaving_counts_are_binomial() {
    let binom = |n: usize, k: usize| (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
    for n in 1..=6 {
        for m in 1..=6 {
            let set = cd2_interleavings(&chain(n - 1, "a"), &chain(m - 1, "b")).unwrap();
            assert_eq!(set.len(), binom(n + m - 2, n - 1), "{n} x {m}");
            assert_eq!(staircases(n, m).unwrap().len(), set.len());
        }
    }
}

#[test]
fn interleavings_are_valid_reductions() {
    let theta = chain(2, "a");
    let phi = chain(1, "b");
    let set = cd2_interleavings(&theta, &phi).unwrap();
    assert_eq!(set.len(), 3);
    for tr in &set {
        assert_eq!(tr.initial, Term::tau(theta.initial.clone(), phi.initial.clone()));
        assert_eq!(tr.final_term(), &parse("tau(a,b)").unwrap());
        tr.replay(RuleSet::standard()).unwrap();
        for s in &tr.steps {
            assert!(Position(vec![0]).is_prefix_of(&s.position) || Position(vec![1]).is_prefix_of(&s.position));
        }
    }
    let distinct: std::collections::BTreeSet<String> = set.iter().map(|t| t.to_text()).collect();
    assert_eq!(distinct.len(), 3);
    assert!(set.iter().all(|x| set.iter().all(|y| cd2_equal(&set, x, y))));
}

#[test]
fn meta_normal_forms_keep_endpoints() {
    let w = MetaTerm::witness(Witness::new("theta", chain(2, "a")));
    let (a, b) = w.endpoints().unwrap();
    let m = MetaTerm::tau2(
        MetaTerm::tau2(MetaTerm::rho2(a.clone()), w.clone()).unwrap(),
        MetaTerm::tau2(MetaTerm::sigma2(w.clone()), w.clone()).unwrap(),
    )
    .unwrap();
    let tr = rw2_normalize(&m).unwrap();
    assert_eq!(tr.final_term(), &w);
    for s in &tr.steps {
        assert_eq!(s.after.endpoints().unwrap(), (a.clone(), b.clone()));
    }
    assert!(rw2_equal(&m, &w).unwrap());
    // different endpoints are never rw2-equal
    assert!(!rw2_equal(&MetaTerm::rho2(a), &MetaTerm::rho2(b)).unwrap());
}

#[test]
fn inverse_pair_collapses() {
    let w = MetaTerm::witness(Witness::new("theta", chain(1, "a")));
    let (a, _) = w.endpoints().unwrap();
    let m = MetaTerm::tau2(w.clone(), MetaTerm::sigma2(w)).unwrap();
    assert!(rw2_equal(&m, &MetaTerm::rho2(a)).unwrap());
}
