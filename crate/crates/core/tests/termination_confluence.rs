//! Orientation and joinability results for the rule system as a whole.

use pathrw::confluence::critical_pairs;
use pathrw::ordering::{check_rule_orientation, Precedence, Rpo, Verdict};
use pathrw::{parse, Normalizer, RuleSet, Symbol};

#[test]
fn only_the_tau_sub_rules_resist_the_standard_precedence() {
    let report = check_rule_orientation(RuleSet::standard(), &Rpo::default());
    let missing: Vec<&str> = report.not_oriented().iter().map(|e| e.name).collect();
    assert_eq!(missing, ["tsblr", "tsbrr"]);
}

#[test]
fn tau_above_sub_r_orients_everything() {
    let rpo = Rpo {
        precedence: Precedence::standard().with(Symbol::Tau, Symbol::SubR).unwrap(),
        ..Rpo::default()
    };
    assert!(check_rule_orientation(RuleSet::standard(), &rpo).all_oriented());
    let report = check_rule_orientation(&RuleSet::core(), &rpo);
    assert_eq!(report.entry("tsbrr").unwrap().verdict, Verdict::Oriented);
}

#[test]
fn groupoid_rules_are_locally_confluent() {
    let cps = critical_pairs(&RuleSet::groupoid()).unwrap();
    assert!(!cps.is_empty());
    assert!(cps.iter().all(|c| c.joinable == Some(true)), "{:?}", cps.iter().find(|c| c.joinable == Some(false)));
}

#[test]
fn cancellation_rules_are_needed_for_the_groupoid() {
    let rules = RuleSet::groupoid().without(&["tts", "tst"]);
    let cps = critical_pairs(&rules).unwrap();
    let bad = cps.iter().find(|c| c.outer == "tr" && c.inner == "tt").unwrap();
    assert_eq!(bad.joinable, Some(false));
    assert_eq!(bad.peak.to_string(), "tau(tau(t2,r2),sigma(tau(t2,r2)))");
}

#[test]
fn sub_rules_leave_divergent_peaks() {
    let cps = critical_pairs(&RuleSet::core()).unwrap();
    let cp = cps
        .iter()
        .find(|c| c.outer == "tsbrr" && c.inner == "tsbrl")
        .unwrap();
    let (l, r) = cp.normal_forms.clone().unwrap();
    assert_eq!(l.to_string(), "subL(subR(s1,t1),s2)");
    assert_eq!(r.to_string(), "subR(s1,subL(t1,s2))");

    // sigma pushed through subR hides an inverse pair from tr
    let core = RuleSet::core();
    let n = Normalizer::new(&core);
    let t = parse("tau(subR(a,b),sigma(subR(a,b)))").unwrap();
    assert_eq!(n.normal_form(&t).unwrap().to_string(), "rho");
    let pushed = parse("tau(subR(a,b),subL(sigma(b),sigma(a)))").unwrap();
    assert_eq!(
        n.normal_form(&pushed).unwrap().to_string(),
        "subR(a,tau(b,subL(sigma(b),sigma(a))))"
    );
}
