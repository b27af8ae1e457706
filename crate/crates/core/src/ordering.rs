//! Recursive path ordering and the rule-orientation termination check.
//!
//! `s = f(s1..sm) > t = g(t1..tn)` holds when
//!
//! 1. `f = g` and the arguments decrease under the status of `f`
//!    (multiset extension, or left-to-right lexicographic with `s > tj` for all `j`), or
//! 2. `f > g` in the precedence and `s > tj` for every `j`, or
//! 3. some `si >= t`.
//!
//! Atoms are minimal constants: below every operator and incomparable to each
//! other. A pattern variable `x` is below exactly the terms that contain it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::rules::{RewriteRule, RuleSet};
use crate::term::{Head, Symbol, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderingError {
    #[error("precedence is not a strict order: {0} > {0} follows from the given pairs")]
    Cyclic(Symbol),
}

/// A strict partial order on operators, stored with its transitive closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Precedence {
    pairs: BTreeSet<(Symbol, Symbol)>,
    closure: BTreeSet<(Symbol, Symbol)>,
}

impl Precedence {
    pub fn new(pairs: impl IntoIterator<Item = (Symbol, Symbol)>) -> Result<Precedence, OrderingError> {
        let pairs: BTreeSet<_> = pairs.into_iter().collect();
        let mut closure = pairs.clone();
        loop {
            let extra: Vec<_> = closure
                .iter()
                .flat_map(|&(a, b)| {
                    closure
                        .iter()
                        .filter(move |&&(c, _)| c == b)
                        .map(move |&(_, d)| (a, d))
                })
                .filter(|p| !closure.contains(p))
                .collect();
            if extra.is_empty() {
                break;
            }
            closure.extend(extra);
        }
        if let Some(&(a, _)) = closure.iter().find(|(a, b)| a == b) {
            return Err(OrderingError::Cyclic(a));
        }
        Ok(Precedence { pairs, closure })
    }

    /// σ > τ > ρ; σ above every ξ, μ and substitution operator; τ > subL.
    pub fn standard() -> Precedence {
        use Symbol::*;
        Precedence::new([
            (Sigma, Tau),
            (Tau, Rho),
            (Sigma, Xi),
            (Sigma, XiAnd),
            (Sigma, Xi1),
            (Sigma, Xi2),
            (Sigma, Mu),
            (Sigma, Mu1),
            (Sigma, Mu2),
            (Sigma, SubL),
            (Sigma, SubR),
            (Tau, SubL),
        ])
        .expect("acyclic")
    }

    /// A copy with one more pair.
    pub fn with(&self, greater: Symbol, smaller: Symbol) -> Result<Precedence, OrderingError> {
        Precedence::new(self.pairs.iter().copied().chain([(greater, smaller)]))
    }

    pub fn greater(&self, f: Symbol, g: Symbol) -> bool {
        self.closure.contains(&(f, g))
    }

    /// The generating pairs.
    pub fn pairs(&self) -> impl Iterator<Item = (Symbol, Symbol)> + '_ {
        self.pairs.iter().copied()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Multiset,
    Lexicographic,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Multiset => "multiset",
            Status::Lexicographic => "lexicographic",
        })
    }
}

/// Argument-comparison status of every operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorStatus(BTreeMap<Symbol, Status>);

impl OperatorStatus {
    pub fn all_multiset() -> OperatorStatus {
        OperatorStatus(Symbol::ALL.iter().map(|&s| (s, Status::Multiset)).collect())
    }

    /// Multiset everywhere except τ, which is lexicographic.
    pub fn standard() -> OperatorStatus {
        OperatorStatus::all_multiset().set(Symbol::Tau, Status::Lexicographic)
    }

    pub fn set(mut self, op: Symbol, status: Status) -> OperatorStatus {
        self.0.insert(op, status);
        self
    }

    pub fn get(&self, op: Symbol) -> Status {
        self.0[&op]
    }
}

/// Dershowitz–Manna multiset extension: `a >> b` iff `a != b` and every
/// element of `b - a` is dominated by some element of `a - b`.
pub fn multiset_greater<T: PartialEq>(a: &[T], b: &[T], gt: impl Fn(&T, &T) -> bool) -> bool {
    let (a_rest, b_rest) = multiset_difference(a, b);
    if a_rest.is_empty() && b_rest.is_empty() {
        return false;
    }
    b_rest.iter().all(|y| a_rest.iter().any(|x| gt(x, y)))
}

/// `(a - b, b - a)` as multisets.
fn multiset_difference<'a, T: PartialEq>(a: &'a [T], b: &'a [T]) -> (Vec<&'a T>, Vec<&'a T>) {
    let mut b_left: Vec<Option<&T>> = b.iter().map(Some).collect();
    let mut a_rest = Vec::new();
    for x in a {
        match b_left.iter_mut().find(|y| y.is_some_and(|y| y == x)) {
            Some(slot) => *slot = None,
            None => a_rest.push(x),
        }
    }
    (a_rest, b_left.into_iter().flatten().collect())
}

/// Which clause of the ordering decided `s > t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reason {
    /// Argument `i` of `s` is `>=` the right side.
    Subterm(usize),
    /// Head precedence.
    Precedence(Symbol, Symbol),
    /// Same head; arguments compared under the status.
    SameHead(Symbol, Status),
    /// Operator above atom.
    AboveAtom,
    /// A variable below a term containing it.
    Contains,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::Subterm(i) => write!(f, "subterm: argument {} dominates", i + 1),
            Reason::Precedence(a, b) => write!(f, "precedence {a} > {b}"),
            Reason::SameHead(s, st) => write!(f, "equal heads {s}, {st} comparison of arguments"),
            Reason::AboveAtom => f.write_str("operator above atom"),
            Reason::Contains => f.write_str("variable occurs in left side"),
        }
    }
}

/// Recursive path ordering over a precedence and status assignment.
#[derive(Clone, Debug)]
pub struct Rpo {
    pub precedence: Precedence,
    pub status: OperatorStatus,
}

impl Default for Rpo {
    fn default() -> Rpo {
        Rpo::new(Precedence::standard(), OperatorStatus::standard())
    }
}

impl Rpo {
    pub fn new(precedence: Precedence, status: OperatorStatus) -> Rpo {
        Rpo { precedence, status }
    }

    pub fn greater(&self, s: &Term, t: &Term) -> bool {
        self.explain(s, t).is_some()
    }

    pub fn greater_or_equal(&self, s: &Term, t: &Term) -> bool {
        s == t || self.greater(s, t)
    }

    /// The clause that establishes `s > t`, if any.
    pub fn explain(&self, s: &Term, t: &Term) -> Option<Reason> {
        if s == t {
            return None;
        }
        let f = match s.head() {
            Head::Op(f) => *f,
            // atoms, variables and holes dominate nothing
            _ => return None,
        };
        if let Head::Var(v) = t.head() {
            return s.contains_var(v).then_some(Reason::Contains);
        }
        if let Some(i) = s.args().iter().position(|si| self.greater_or_equal(si, t)) {
            return Some(Reason::Subterm(i));
        }
        let g = match t.head() {
            Head::Op(g) => *g,
            Head::Atom(_) => return Some(Reason::AboveAtom),
            _ => return None,
        };
        if f == g {
            let status = self.status.get(f);
            let ok = match status {
                Status::Multiset => {
                    multiset_greater(s.args(), t.args(), |x, y| self.greater(x, y))
                }
                Status::Lexicographic => {
                    self.lex_greater(s.args(), t.args())
                        && t.args().iter().all(|tj| self.greater(s, tj))
                }
            };
            return ok.then_some(Reason::SameHead(f, status));
        }
        if self.precedence.greater(f, g) && t.args().iter().all(|tj| self.greater(s, tj)) {
            return Some(Reason::Precedence(f, g));
        }
        None
    }

    fn lex_greater(&self, a: &[Term], b: &[Term]) -> bool {
        for (x, y) in a.iter().zip(b) {
            if x != y {
                return self.greater(x, y);
            }
        }
        a.len() > b.len()
    }

    /// Why `s > t` fails at the top level.
    pub fn diagnose(&self, s: &Term, t: &Term) -> String {
        if s == t {
            return "sides are equal".to_string();
        }
        let (Head::Op(f), Head::Op(g)) = (s.head(), t.head()) else {
            return format!("{s} is not above {t}");
        };
        let (f, g) = (*f, *g);
        let no_subterm = format!("no argument of {s} is >= {t}");
        if f == g {
            let status = self.status.get(f);
            let detail = match status {
                Status::Multiset => {
                    let (a_rest, b_rest) = multiset_difference(s.args(), t.args());
                    let open: Vec<String> = b_rest
                        .iter()
                        .filter(|y| !a_rest.iter().any(|x| self.greater(x, y)))
                        .map(|y| y.to_string())
                        .collect();
                    format!("{{{}}} not dominated", open.join(", "))
                }
                Status::Lexicographic => {
                    match s.args().iter().zip(t.args()).find(|(x, y)| x != y) {
                        Some((x, y)) if !self.greater(x, y) => {
                            format!("first differing arguments {x} vs {y} not decreasing")
                        }
                        _ => {
                            let big: Vec<String> = t
                                .args()
                                .iter()
                                .filter(|tj| !self.greater(s, tj))
                                .map(|tj| tj.to_string())
                                .collect();
                            format!("left side not above {}", big.join(", "))
                        }
                    }
                }
            };
            format!("equal heads {f} ({status}): {detail}; {no_subterm}")
        } else if self.precedence.greater(f, g) {
            let big: Vec<String> = t
                .args()
                .iter()
                .filter(|tj| !self.greater(s, tj))
                .map(|tj| tj.to_string())
                .collect();
            format!("precedence {f} > {g} but left side not above {}; {no_subterm}", big.join(", "))
        } else {
            format!("{f} and {g} incomparable in precedence; {no_subterm}")
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Oriented,
    NotOriented,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Oriented => "oriented",
            Verdict::NotOriented => "not-oriented",
        })
    }
}

/// One checked instance of a rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceCheck {
    /// `bare`, `xi1` or `plain`.
    pub label: &'static str,
    pub lhs: Term,
    pub rhs: Term,
    pub verdict: Verdict,
    /// Deciding clause when oriented, failing comparison otherwise.
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientationEntry {
    pub index: u8,
    pub name: &'static str,
    pub verdict: Verdict,
    pub instances: Vec<InstanceCheck>,
}

#[derive(Clone, Debug)]
pub struct OrientationReport {
    pub entries: Vec<OrientationEntry>,
    pub tau_status: Status,
    pub precedence: Vec<(Symbol, Symbol)>,
}

#[derive(Serialize)]
struct SummaryRecord<'a> {
    rule: &'a str,
    index: u8,
    verdict: Verdict,
    tau_status: Status,
}

impl OrientationReport {
    pub fn all_oriented(&self) -> bool {
        self.entries.iter().all(|e| e.verdict == Verdict::Oriented)
    }

    pub fn entry(&self, name: &str) -> Option<&OrientationEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn not_oriented(&self) -> Vec<&OrientationEntry> {
        self.entries
            .iter()
            .filter(|e| e.verdict == Verdict::NotOriented)
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("tau status: {}\n", self.tau_status);
        for e in &self.entries {
            out.push_str(&format!("{:>2} {:<6} {}\n", e.index, e.name, e.verdict));
            for i in &e.instances {
                out.push_str(&format!(
                    "     {:<5} {} > {} : {}\n",
                    i.label, i.lhs, i.rhs, i.note
                ));
            }
        }
        let bad = self.not_oriented();
        out.push_str(&format!(
            "{} of {} rules oriented\n",
            self.entries.len() - bad.len(),
            self.entries.len()
        ));
        out
    }

    /// JSON lines `{rule, index, verdict, tau_status}`.
    pub fn to_json_lines(&self) -> String {
        self.entries
            .iter()
            .map(|e| {
                serde_json::to_string(&SummaryRecord {
                    rule: e.name,
                    index: e.index,
                    verdict: e.verdict,
                    tau_status: self.tau_status,
                })
                .expect("serializable")
                    + "\n"
            })
            .collect()
    }
}

/// Checks `lhs > rhs` for every rule, with variables frozen to fresh atoms.
/// Context rules are checked with the empty context and with `C = xi1([])`.
pub fn check_rule_orientation(rules: &RuleSet, rpo: &Rpo) -> OrientationReport {
    let entries = rules.iter().map(|r| orient_rule(r, rpo)).collect();
    OrientationReport {
        entries,
        tau_status: rpo.status.get(Symbol::Tau),
        precedence: rpo.precedence.pairs().collect(),
    }
}

fn orient_rule(rule: &RewriteRule, rpo: &Rpo) -> OrientationEntry {
    let instances: Vec<(&'static str, (Term, Term))> = if rule.is_context_rule() {
        vec![
            ("bare", rule.bare_instance()),
            ("xi1", rule.with_context(Term::xi1)),
        ]
    } else {
        vec![("plain", (rule.lhs.clone(), rule.rhs.clone()))]
    };
    let instances: Vec<InstanceCheck> = instances
        .into_iter()
        .map(|(label, (l, r))| {
            let (lhs, rhs) = (l.freeze(), r.freeze());
            let (verdict, note) = match rpo.explain(&lhs, &rhs) {
                Some(reason) => (Verdict::Oriented, reason.to_string()),
                None => (Verdict::NotOriented, rpo.diagnose(&lhs, &rhs)),
            };
            InstanceCheck {
                label,
                lhs,
                rhs,
                verdict,
                note,
            }
        })
        .collect();
    let verdict = if instances.iter().all(|i| i.verdict == Verdict::Oriented) {
        Verdict::Oriented
    } else {
        Verdict::NotOriented
    };
    OrientationEntry {
        index: rule.index,
        name: rule.name,
        verdict,
        instances,
    }
}
