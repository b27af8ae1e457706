//! Critical pairs by superposition of left-hand sides.
//!
//! Context rules take part through their empty-context instances only.

use std::fmt;

use crate::rules::{RewriteRule, RuleSet};
use crate::term::{Head, Position, Substitution, Term};
use crate::trs::{Normalizer, TrsError};

/// Syntactic most general unifier with occurs check.
pub fn unify(a: &Term, b: &Term) -> Option<Substitution> {
    let mut subst = Substitution::new();
    let mut stack = vec![(a.clone(), b.clone())];
    while let Some((x, y)) = stack.pop() {
        let x = resolve(&subst, &x);
        let y = resolve(&subst, &y);
        if x == y {
            continue;
        }
        match (x.head(), y.head()) {
            (Head::Var(v), _) => bind(&mut subst, v, &y)?,
            (_, Head::Var(v)) => bind(&mut subst, v, &x)?,
            _ => {
                if x.head() != y.head() || x.args().len() != y.args().len() {
                    return None;
                }
                stack.extend(x.args().iter().cloned().zip(y.args().iter().cloned()));
            }
        }
    }
    Some(subst)
}

/// Fully applies a triangular substitution.
fn resolve(subst: &Substitution, t: &Term) -> Term {
    match t.head() {
        Head::Var(v) => match subst.get(v) {
            Some(u) => resolve(subst, u),
            None => t.clone(),
        },
        _ => t.with_args(t.args().iter().map(|a| resolve(subst, a)).collect()),
    }
}

fn bind(subst: &mut Substitution, v: &str, t: &Term) -> Option<()> {
    let t = resolve(subst, t);
    if t.contains_var(v) {
        return None;
    }
    subst.insert(v, t);
    Some(())
}

fn rename(t: &Term, suffix: &str) -> Term {
    match t.head() {
        Head::Var(v) => Term::var(&format!("{v}{suffix}")),
        _ => t.with_args(t.args().iter().map(|a| rename(a, suffix)).collect()),
    }
}

/// Two one-step reducts of a common peak.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPair {
    /// Rule applied at the root of the peak.
    pub outer: &'static str,
    /// Rule applied at `position`.
    pub inner: &'static str,
    pub position: Position,
    pub peak: Term,
    /// Result of the inner rewrite.
    pub left: Term,
    /// Result of the outer rewrite.
    pub right: Term,
    pub joinable: Option<bool>,
    /// Normal forms of `left` and `right`.
    pub normal_forms: Option<(Term, Term)>,
}

impl CriticalPair {
    pub fn common_normal_form(&self) -> Option<&Term> {
        match (&self.joinable, &self.normal_forms) {
            (Some(true), Some((l, _))) => Some(l),
            _ => None,
        }
    }
}

impl fmt::Display for CriticalPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}/{} @ {}: {} -> {} | {}",
            self.outer, self.inner, self.position, self.peak, self.left, self.right
        )?;
        match (&self.joinable, &self.normal_forms) {
            (Some(true), Some((nf, _))) => write!(f, " : joinable at {nf}"),
            (Some(false), Some((l, r))) => write!(f, " : NOT joinable ({l} vs {r})"),
            _ => Ok(()),
        }
    }
}

/// All critical pairs among `rules`, ordered by (outer index, inner index, position).
pub fn superpose(rules: &RuleSet) -> Vec<CriticalPair> {
    let mut out = Vec::new();
    for outer in rules {
        for inner in rules {
            overlaps(outer, inner, &mut out);
        }
    }
    out
}

fn overlaps(outer: &RewriteRule, inner: &RewriteRule, out: &mut Vec<CriticalPair>) {
    let (l1, r1) = outer.bare_instance();
    let (l1, r1) = (rename(&l1, "1"), rename(&r1, "1"));
    let (l2, r2) = inner.bare_instance();
    let (l2, r2) = (rename(&l2, "2"), rename(&r2, "2"));
    for p in l1.positions() {
        if p.is_root() && outer.index == inner.index {
            continue;
        }
        let sub = l1.get(&p).expect("own position");
        if matches!(sub.head(), Head::Var(_)) {
            continue;
        }
        let Some(mgu) = unify(sub, &l2) else {
            continue;
        };
        let peak = resolve(&mgu, &l1);
        let left = resolve(&mgu, &l1.replace_at(&p, r2.clone()).expect("own position"));
        let right = resolve(&mgu, &r1);
        out.push(CriticalPair {
            outer: outer.name,
            inner: inner.name,
            position: p,
            peak,
            left,
            right,
            joinable: None,
            normal_forms: None,
        });
    }
}

/// Normalizes both results and records whether they meet.
pub fn check_joinable(cp: &CriticalPair, n: &Normalizer<'_>) -> Result<CriticalPair, TrsError> {
    let l = n.normal_form(&cp.left)?;
    let r = n.normal_form(&cp.right)?;
    let mut cp = cp.clone();
    cp.joinable = Some(l == r);
    cp.normal_forms = Some((l, r));
    Ok(cp)
}

/// Enumerates and checks every critical pair of `rules` using the same rules
/// for joining.
pub fn critical_pairs(rules: &RuleSet) -> Result<Vec<CriticalPair>, TrsError> {
    let n = Normalizer::new(rules);
    superpose(rules)
        .iter()
        .map(|cp| check_joinable(cp, &n))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse, parse_pattern};

    fn p(s: &str) -> Term {
        parse_pattern(s).unwrap()
    }

    #[test]
    fn unification() {
        let s = unify(&p("tau(X,sigma(Y))"), &p("tau(rho,Z)")).unwrap();
        assert_eq!(s.get("X"), Some(&Term::rho()));
        assert_eq!(resolve(&s, &p("Z")), p("sigma(Y)"));
        assert!(unify(&p("X"), &p("sigma(X)")).is_none());
        assert!(unify(&p("sigma(X)"), &p("tau(X,Y)")).is_none());
        let s = unify(&p("tau(X,X)"), &p("tau(Y,sigma(Z))")).unwrap();
        assert_eq!(resolve(&s, &p("X")), resolve(&s, &p("Y")));
    }

    #[test]
    fn sr_inside_ss() {
        let rules = RuleSet::standard().filter(|r| r.index <= 2);
        let cps = superpose(&rules);
        let cp = cps
            .iter()
            .find(|c| c.outer == "ss" && c.inner == "sr")
            .unwrap();
        assert_eq!(cp.peak, parse("sigma(sigma(rho))").unwrap());
        assert_eq!(cp.left, parse("sigma(rho)").unwrap());
        assert_eq!(cp.right, Term::rho());
        let checked = check_joinable(cp, &Normalizer::new(&rules)).unwrap();
        assert_eq!(checked.common_normal_form(), Some(&Term::rho()));
    }

    #[test]
    fn ss_and_stss() {
        let rules = RuleSet::standard();
        let cps = superpose(rules);
        assert!(!cps.iter().any(|c| c.outer == "stss" && c.inner == "ss"));
        let cp = cps
            .into_iter()
            .find(|c| c.outer == "ss" && c.inner == "stss")
            .expect("overlap exists");
        assert_eq!(cp.position, Position(vec![0]));
        assert_eq!(cp.peak.to_string(), "sigma(sigma(tau(r2,s2)))");
        assert_eq!(cp.left.to_string(), "sigma(tau(sigma(s2),sigma(r2)))");
        assert_eq!(cp.right.to_string(), "tau(r2,s2)");
        let checked = check_joinable(&cp, &Normalizer::new(rules)).unwrap();
        assert_eq!(checked.joinable, Some(true));
    }

    #[test]
    fn no_overlap() {
        let rules = RuleSet::standard().filter(|r| matches!(r.name, "sr" | "mx2l1"));
        assert!(superpose(&rules).is_empty());
    }

    #[test]
    fn self_overlap_at_root_excluded() {
        let rules = RuleSet::standard().filter(|r| r.name == "tt");
        let cps = superpose(&rules);
        assert!(cps.iter().all(|c| !c.position.is_root()));
        assert_eq!(cps.len(), 1);
    }
}
