//! Second-level rewriting: rules acting on rw-equality witnesses.
//!
//! A [`MetaTerm`] composes witnesses of `s =rw t` with meta reflexivity,
//! symmetry and transitivity. Every node has a pair of endpoint terms, and
//! every rewrite preserves them. The seven mirrored rules remove the same
//! redundancies as rules 1–6 and `tt` do one level down.
//!
//! Independence of choice compares the different interleavings of two
//! reductions running side by side under a `tau`.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::term::{Position, Term};
use crate::trs::{RewriteStep, RewriteTrace, TrsError};

/// Largest `n + m` accepted by [`staircases`].
pub const MAX_INTERLEAVING_SPAN: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetaError {
    #[error("endpoints do not compose: {left} ends at {end}, {right} starts at {start}")]
    Endpoints {
        left: String,
        right: String,
        end: String,
        start: String,
    },
    #[error("rw-sequence must contain at least one term")]
    EmptySequence,
    #[error("interleaving of {0} + {1} terms exceeds the supported span")]
    TooLarge(usize, usize),
    #[error("rule {rule} changed endpoints at {position}")]
    EndpointDrift { rule: &'static str, position: Position },
    #[error(transparent)]
    Trs(#[from] TrsError),
}

/// An rw-equality witness between two path terms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Witness {
    /// Display label, e.g. `theta`.
    pub label: String,
    pub trace: RewriteTrace,
}

impl Witness {
    pub fn new(label: &str, trace: RewriteTrace) -> Witness {
        Witness {
            label: label.to_string(),
            trace,
        }
    }

    pub fn source(&self) -> &Term {
        &self.trace.initial
    }

    pub fn target(&self) -> &Term {
        self.trace.final_term()
    }
}

/// Terms over rw-equality witnesses.
#[derive(Clone, PartialEq, Eq)]
pub enum MetaTerm {
    Witness(Arc<Witness>),
    /// Meta reflexivity at a term.
    Rho2(Term),
    Sigma2(Box<MetaTerm>),
    Tau2(Box<MetaTerm>, Box<MetaTerm>),
}

impl MetaTerm {
    pub fn witness(w: Witness) -> MetaTerm {
        MetaTerm::Witness(Arc::new(w))
    }

    pub fn rho2(t: Term) -> MetaTerm {
        MetaTerm::Rho2(t)
    }

    pub fn sigma2(m: MetaTerm) -> MetaTerm {
        MetaTerm::Sigma2(Box::new(m))
    }

    /// Composition; the first argument's target must be the second's source.
    pub fn tau2(a: MetaTerm, b: MetaTerm) -> Result<MetaTerm, MetaError> {
        let (_, end) = a.endpoints()?;
        let (start, _) = b.endpoints()?;
        if end != start {
            return Err(MetaError::Endpoints {
                left: a.to_string(),
                right: b.to_string(),
                end: end.to_string(),
                start: start.to_string(),
            });
        }
        Ok(MetaTerm::Tau2(Box::new(a), Box::new(b)))
    }

    /// `(source, target)` of the witnessed rw-equality.
    pub fn endpoints(&self) -> Result<(Term, Term), MetaError> {
        match self {
            MetaTerm::Witness(w) => Ok((w.source().clone(), w.target().clone())),
            MetaTerm::Rho2(t) => Ok((t.clone(), t.clone())),
            MetaTerm::Sigma2(m) => m.endpoints().map(|(s, t)| (t, s)),
            MetaTerm::Tau2(a, b) => {
                let (s, mid) = a.endpoints()?;
                let (mid2, t) = b.endpoints()?;
                if mid != mid2 {
                    return Err(MetaError::Endpoints {
                        left: a.to_string(),
                        right: b.to_string(),
                        end: mid.to_string(),
                        start: mid2.to_string(),
                    });
                }
                Ok((s, t))
            }
        }
    }

    fn children(&self) -> Vec<&MetaTerm> {
        match self {
            MetaTerm::Sigma2(m) => vec![m],
            MetaTerm::Tau2(a, b) => vec![a, b],
            _ => Vec::new(),
        }
    }

    pub fn get(&self, p: &Position) -> Option<&MetaTerm> {
        let mut cur = self;
        for &i in &p.0 {
            cur = *cur.children().get(i)?;
        }
        Some(cur)
    }

    fn replace(&self, path: &[usize], new: MetaTerm) -> MetaTerm {
        match (path.split_first(), self) {
            (None, _) => new,
            (Some((0, rest)), MetaTerm::Sigma2(m)) => MetaTerm::sigma2(m.replace(rest, new)),
            (Some((0, rest)), MetaTerm::Tau2(a, b)) => {
                MetaTerm::Tau2(Box::new(a.replace(rest, new)), b.clone())
            }
            (Some((1, rest)), MetaTerm::Tau2(a, b)) => {
                MetaTerm::Tau2(a.clone(), Box::new(b.replace(rest, new)))
            }
            _ => unreachable!("invalid meta position"),
        }
    }

    fn positions(&self) -> Vec<Position> {
        let mut out = vec![Position::root()];
        for (i, c) in self.children().into_iter().enumerate() {
            out.extend(c.positions().into_iter().map(|p| Position::root().child(i).join(&p)));
        }
        out
    }
}

impl fmt::Display for MetaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetaTerm::Witness(w) => f.write_str(&w.label),
            MetaTerm::Rho2(_) => f.write_str("rho2"),
            MetaTerm::Sigma2(m) => write!(f, "sigma2({m})"),
            MetaTerm::Tau2(a, b) => write!(f, "tau2({a},{b})"),
        }
    }
}

impl fmt::Debug for MetaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A meta-level rule. Patterns print with `t`, `r`, `s` for witnesses.
#[derive(Clone, Copy, Debug)]
pub struct MetaRule {
    pub name: &'static str,
    pub lhs: &'static str,
    pub rhs: &'static str,
    apply: fn(&MetaTerm) -> Option<MetaTerm>,
}

impl MetaRule {
    pub fn apply(&self, m: &MetaTerm) -> Option<MetaTerm> {
        (self.apply)(m)
    }
}

fn as_tau2(m: &MetaTerm) -> Option<(&MetaTerm, &MetaTerm)> {
    match m {
        MetaTerm::Tau2(a, b) => Some((a, b)),
        _ => None,
    }
}

fn as_sigma2(m: &MetaTerm) -> Option<&MetaTerm> {
    match m {
        MetaTerm::Sigma2(a) => Some(a),
        _ => None,
    }
}

fn is_rho2(m: &MetaTerm) -> bool {
    matches!(m, MetaTerm::Rho2(_))
}

fn source(m: &MetaTerm) -> Term {
    m.endpoints().expect("well-formed meta term").0
}

fn tr2(m: &MetaTerm) -> Option<MetaTerm> {
    let (a, b) = as_tau2(m)?;
    (as_sigma2(b)? == a).then(|| MetaTerm::rho2(source(m)))
}

fn tsr2(m: &MetaTerm) -> Option<MetaTerm> {
    let (a, b) = as_tau2(m)?;
    (as_sigma2(a)? == b).then(|| MetaTerm::rho2(source(m)))
}

fn trr2(m: &MetaTerm) -> Option<MetaTerm> {
    let (a, b) = as_tau2(m)?;
    is_rho2(b).then(|| a.clone())
}

fn tlr2(m: &MetaTerm) -> Option<MetaTerm> {
    let (a, b) = as_tau2(m)?;
    is_rho2(a).then(|| b.clone())
}

fn sr2(m: &MetaTerm) -> Option<MetaTerm> {
    let a = as_sigma2(m)?;
    is_rho2(a).then(|| a.clone())
}

fn ss2(m: &MetaTerm) -> Option<MetaTerm> {
    as_sigma2(as_sigma2(m)?).cloned()
}

fn tt2(m: &MetaTerm) -> Option<MetaTerm> {
    let (ab, c) = as_tau2(m)?;
    let (a, b) = as_tau2(ab)?;
    Some(MetaTerm::Tau2(
        Box::new(a.clone()),
        Box::new(MetaTerm::Tau2(Box::new(b.clone()), Box::new(c.clone()))),
    ))
}

const META_RULES: [MetaRule; 7] = [
    MetaRule { name: "tr2", lhs: "tau2(t,sigma2(t))", rhs: "rho2", apply: tr2 },
    MetaRule { name: "tsr2", lhs: "tau2(sigma2(t),t)", rhs: "rho2", apply: tsr2 },
    MetaRule { name: "trr2", lhs: "tau2(t,rho2)", rhs: "t", apply: trr2 },
    MetaRule { name: "tlr2", lhs: "tau2(rho2,t)", rhs: "t", apply: tlr2 },
    MetaRule { name: "sr2", lhs: "sigma2(rho2)", rhs: "rho2", apply: sr2 },
    MetaRule { name: "ss2", lhs: "sigma2(sigma2(t))", rhs: "t", apply: ss2 },
    MetaRule { name: "tt2", lhs: "tau2(tau2(t,r),s)", rhs: "tau2(t,tau2(r,s))", apply: tt2 },
];

/// The seven meta rules: tr2, tsr2, trr2, tlr2, sr2, ss2, tt2.
pub fn rw2_rule_table() -> &'static [MetaRule] {
    &META_RULES
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetaStep {
    pub rule: &'static str,
    pub position: Position,
    pub before: MetaTerm,
    pub after: MetaTerm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetaTrace {
    pub initial: MetaTerm,
    pub steps: Vec<MetaStep>,
}

impl MetaTrace {
    pub fn final_term(&self) -> &MetaTerm {
        self.steps.last().map_or(&self.initial, |s| &s.after)
    }

    pub fn rule_names(&self) -> Vec<&'static str> {
        self.steps.iter().map(|s| s.rule).collect()
    }
}

/// Outermost-leftmost normalization; checks endpoints after every step.
pub fn rw2_normalize(m: &MetaTerm) -> Result<MetaTrace, MetaError> {
    let ends = m.endpoints()?;
    let mut trace = MetaTrace {
        initial: m.clone(),
        steps: Vec::new(),
    };
    let mut cur = m.clone();
    // every rule shrinks the term or, for tt2, moves weight rightwards
    let limit = 10 * (cur.positions().len() + 1) * (cur.positions().len() + 1);
    'outer: loop {
        if trace.steps.len() > limit {
            return Err(TrsError::StepLimitExceeded { limit }.into());
        }
        for p in cur.positions() {
            let sub = cur.get(&p).expect("own position");
            for rule in &META_RULES {
                if let Some(new) = rule.apply(sub) {
                    let after = cur.replace(&p.0, new);
                    if after.endpoints()? != ends {
                        return Err(MetaError::EndpointDrift {
                            rule: rule.name,
                            position: p,
                        });
                    }
                    trace.steps.push(MetaStep {
                        rule: rule.name,
                        position: p,
                        before: cur.clone(),
                        after: after.clone(),
                    });
                    cur = after;
                    continue 'outer;
                }
            }
        }
        return Ok(trace);
    }
}

/// rw2-equality: same endpoints and same meta normal form.
pub fn rw2_equal(a: &MetaTerm, b: &MetaTerm) -> Result<bool, MetaError> {
    if a.endpoints()? != b.endpoints()? {
        return Ok(false);
    }
    Ok(rw2_normalize(a)?.final_term() == rw2_normalize(b)?.final_term())
}

/// Monotone lattice paths from `(1, 1)` to `(n, m)`: each step advances
/// exactly one coordinate by one. There are `C(n+m-2, n-1)` of them.
pub fn staircases(n: usize, m: usize) -> Result<Vec<Vec<(usize, usize)>>, MetaError> {
    if n == 0 || m == 0 {
        return Err(MetaError::EmptySequence);
    }
    if n + m > MAX_INTERLEAVING_SPAN {
        return Err(MetaError::TooLarge(n, m));
    }
    let mut out = Vec::new();
    let mut path = vec![(1, 1)];
    extend_staircase(n, m, &mut path, &mut out);
    Ok(out)
}

fn extend_staircase(
    n: usize,
    m: usize,
    path: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    let (l, r) = *path.last().expect("non-empty");
    if (l, r) == (n, m) {
        out.push(path.clone());
        return;
    }
    if l < n {
        path.push((l + 1, r));
        extend_staircase(n, m, path, out);
        path.pop();
    }
    if r < m {
        path.push((l, r + 1));
        extend_staircase(n, m, path, out);
        path.pop();
    }
}

/// Every interleaving of `theta` (reducing `s`) and `phi` (reducing `t`) as
/// a reduction of `tau(s, t)`. Each step of `theta` fires at position `0.p`,
/// each step of `phi` at `1.p`.
pub fn cd2_interleavings(
    theta: &RewriteTrace,
    phi: &RewriteTrace,
) -> Result<Vec<RewriteTrace>, MetaError> {
    let left = theta.terms();
    let right = phi.terms();
    let paths = staircases(left.len(), right.len())?;
    let pair = |l: usize, r: usize| Term::tau(left[l - 1].clone(), right[r - 1].clone());
    Ok(paths
        .into_iter()
        .map(|path| {
            let steps = path
                .windows(2)
                .map(|w| {
                    let ((l0, r0), (l1, r1)) = (w[0], w[1]);
                    let (src, side) = if l1 > l0 {
                        (&theta.steps[l0 - 1], 0)
                    } else {
                        (&phi.steps[r0 - 1], 1)
                    };
                    RewriteStep {
                        rule: src.rule.clone(),
                        index: src.index,
                        fragment: src.fragment,
                        position: Position::root().child(side).join(&src.position),
                        before: pair(l0, r0),
                        after: pair(l1, r1),
                    }
                })
                .collect();
            RewriteTrace {
                initial: pair(1, 1),
                steps,
            }
        })
        .collect())
}

/// Independence of choice: `x` and `y` are identified when both belong to
/// the interleaving set.
pub fn cd2_equal(set: &[RewriteTrace], x: &RewriteTrace, y: &RewriteTrace) -> bool {
    set.contains(x) && set.contains(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;
    use crate::rules::RuleSet;
    use crate::trs::normalize;

    fn witness(label: &str, s: &str) -> MetaTerm {
        MetaTerm::witness(Witness::new(label, normalize(&parse(s).unwrap()).unwrap()))
    }

    #[test]
    fn rule_table() {
        let names: Vec<_> = rw2_rule_table().iter().map(|r| r.name).collect();
        assert_eq!(names, ["tr2", "tsr2", "trr2", "tlr2", "sr2", "ss2", "tt2"]);
        let tt2 = &rw2_rule_table()[6];
        assert_eq!((tt2.lhs, tt2.rhs), ("tau2(tau2(t,r),s)", "tau2(t,tau2(r,s))"));
    }

    #[test]
    fn right_unit() {
        let theta = witness("theta", "sigma(sigma(a))");
        let (_, end) = theta.endpoints().unwrap();
        let m = MetaTerm::tau2(theta.clone(), MetaTerm::rho2(end)).unwrap();
        let tr = rw2_normalize(&m).unwrap();
        assert_eq!(tr.final_term(), &theta);
        assert_eq!(tr.rule_names(), ["trr2"]);
    }

    #[test]
    fn double_symmetry_and_inverse() {
        let theta = witness("theta", "tau(b,sigma(b))");
        let m = MetaTerm::sigma2(MetaTerm::sigma2(theta.clone()));
        assert_eq!(rw2_normalize(&m).unwrap().final_term(), &theta);

        let m = MetaTerm::tau2(theta.clone(), MetaTerm::sigma2(theta.clone())).unwrap();
        let tr = rw2_normalize(&m).unwrap();
        assert_eq!(tr.rule_names(), ["tr2"]);
        assert_eq!(tr.final_term(), &MetaTerm::rho2(parse("tau(b,sigma(b))").unwrap()));
    }

    fn one_step(label: &str, from: &str) -> MetaTerm {
        let t = parse(from).unwrap();
        let r = &crate::trs::applicable_redexes(&t, RuleSet::standard())[0];
        let st = crate::trs::apply_step(&t, r.rule, &r.position).unwrap();
        MetaTerm::witness(Witness::new(label, RewriteTrace { initial: t, steps: vec![st] }))
    }

    #[test]
    fn associativity() {
        let a = one_step("a", "sigma(sigma(sigma(sigma(sigma(sigma(x))))))");
        let b = one_step("b", "sigma(sigma(sigma(sigma(x))))");
        let c = one_step("c", "sigma(sigma(x))");
        let ab = MetaTerm::tau2(a.clone(), b.clone()).unwrap();
        let m = MetaTerm::tau2(ab, c.clone()).unwrap();
        let tr = rw2_normalize(&m).unwrap();
        assert_eq!(tr.rule_names(), ["tt2"]);
        let bc = MetaTerm::tau2(b, c).unwrap();
        assert_eq!(tr.final_term(), &MetaTerm::tau2(a, bc).unwrap());
    }

    #[test]
    fn endpoint_mismatch() {
        let a = witness("a", "sigma(sigma(a))");
        let b = witness("b", "sigma(rho)");
        assert!(matches!(MetaTerm::tau2(a, b), Err(MetaError::Endpoints { .. })));
    }

    #[test]
    fn staircase_counts() {
        assert_eq!(staircases(1, 1).unwrap(), vec![vec![(1, 1)]]);
        assert_eq!(staircases(2, 2).unwrap().len(), 2);
        assert_eq!(staircases(2, 3).unwrap().len(), 3);
        assert_eq!(staircases(3, 3).unwrap().len(), 6);
        assert_eq!(staircases(0, 2), Err(MetaError::EmptySequence));
        assert_eq!(staircases(11, 10), Err(MetaError::TooLarge(11, 10)));
    }

    #[test]
    fn two_by_two_interleavings() {
        let theta = normalize(&parse("sigma(sigma(s))").unwrap()).unwrap();
        let phi = normalize(&parse("sigma(rho)").unwrap()).unwrap();
        let set = cd2_interleavings(&theta, &phi).unwrap();
        assert_eq!(set.len(), 2);
        let texts: Vec<Vec<String>> = set
            .iter()
            .map(|t| t.terms().iter().map(|x| x.to_string()).collect())
            .collect();
        assert_eq!(
            texts[0],
            ["tau(sigma(sigma(s)),sigma(rho))", "tau(s,sigma(rho))", "tau(s,rho)"]
        );
        assert_eq!(
            texts[1],
            ["tau(sigma(sigma(s)),sigma(rho))", "tau(sigma(sigma(s)),rho)", "tau(s,rho)"]
        );
        for tr in &set {
            tr.replay(RuleSet::standard()).unwrap();
        }
        assert!(cd2_equal(&set, &set[0], &set[1]));
        assert!(!cd2_equal(&set, &set[0], &theta));
    }
}
