//! Applying rules: redex search, single steps, strategies, traces and
//! rw-equality.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rules::{Fragment, RewriteRule, RuleSet};
use crate::term::{Position, Term, TermError};

pub const DEFAULT_STEP_LIMIT: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrsError {
    #[error("normalization exceeded {limit} steps")]
    StepLimitExceeded { limit: usize },
    #[error("rule {rule} does not apply at {position}")]
    NotApplicable { rule: String, position: Position },
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error(transparent)]
    Term(#[from] TermError),
    #[error("trace does not replay: {0}")]
    BrokenTrace(String),
}

/// A rule together with the position where its left side matches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Redex<'r> {
    pub rule: &'r RewriteRule,
    pub position: Position,
}

/// All redexes of `t`, ordered by rule index and then by preorder position.
/// Arguments of atoms are never searched.
pub fn applicable_redexes<'r>(t: &Term, rules: &'r RuleSet) -> Vec<Redex<'r>> {
    let positions = t.positions();
    let mut out = Vec::new();
    for rule in rules {
        for p in &positions {
            let sub = t.get(p).expect("own position");
            if rule.matches(sub).is_some() {
                out.push(Redex {
                    rule,
                    position: p.clone(),
                });
            }
        }
    }
    out
}

/// One rewrite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteStep {
    pub rule: String,
    pub index: u8,
    pub fragment: Fragment,
    pub position: Position,
    pub before: Term,
    pub after: Term,
}

/// Rewrites `t` at `p` with `rule`.
pub fn apply_step(t: &Term, rule: &RewriteRule, p: &Position) -> Result<RewriteStep, TrsError> {
    let sub = t.subterm_at(p)?;
    let m = rule.matches(sub).ok_or_else(|| TrsError::NotApplicable {
        rule: rule.name.to_string(),
        position: p.clone(),
    })?;
    let after = t.replace_at(p, rule.instantiate(&m))?;
    Ok(RewriteStep {
        rule: rule.name.to_string(),
        index: rule.index,
        fragment: rule.fragment,
        position: p.clone(),
        before: t.clone(),
        after,
    })
}

/// A finite reduction sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteTrace {
    pub initial: Term,
    pub steps: Vec<RewriteStep>,
}

/// One step of the machine-readable trace export.
#[derive(Serialize)]
struct StepRecord<'a> {
    step: usize,
    rule: &'a str,
    position: String,
    before: String,
    after: String,
}

impl RewriteTrace {
    pub fn empty(t: Term) -> RewriteTrace {
        RewriteTrace {
            initial: t,
            steps: Vec::new(),
        }
    }

    pub fn final_term(&self) -> &Term {
        self.steps.last().map_or(&self.initial, |s| &s.after)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn rule_names(&self) -> Vec<&str> {
        self.steps.iter().map(|s| s.rule.as_str()).collect()
    }

    /// `initial`, then the result of each step.
    pub fn terms(&self) -> Vec<&Term> {
        std::iter::once(&self.initial)
            .chain(self.steps.iter().map(|s| &s.after))
            .collect()
    }

    /// Checks chaining and re-derives every step with [`apply_step`].
    pub fn replay(&self, rules: &RuleSet) -> Result<Term, TrsError> {
        let mut cur = self.initial.clone();
        for (k, s) in self.steps.iter().enumerate() {
            if s.before != cur {
                return Err(TrsError::BrokenTrace(format!("step {} does not chain", k + 1)));
            }
            let rule = rules
                .get(&s.rule)
                .ok_or_else(|| TrsError::UnknownRule(s.rule.clone()))?;
            let redone = apply_step(&cur, rule, &s.position)?;
            if redone.after != s.after {
                return Err(TrsError::BrokenTrace(format!(
                    "step {} yields {} instead of {}",
                    k + 1,
                    redone.after,
                    s.after
                )));
            }
            cur = redone.after;
        }
        Ok(cur)
    }

    /// One line per step: `step <k>: <rule> @ <position> : <before> => <after>`.
    /// Steps by rules that touch ξ/μ/ν are suffixed with ` [mixed]`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, s) in self.steps.iter().enumerate() {
            out.push_str(&format!(
                "step {}: {} @ {} : {} => {}",
                k + 1,
                s.rule,
                s.position,
                s.before,
                s.after
            ));
            if s.fragment == Fragment::Mixed {
                out.push_str(" [mixed]");
            }
            out.push('\n');
        }
        out
    }

    /// JSON lines, one object per step with fields
    /// `step`, `rule`, `position`, `before`, `after`.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for (k, s) in self.steps.iter().enumerate() {
            let rec = StepRecord {
                step: k + 1,
                rule: &s.rule,
                position: s.position.to_string(),
                before: s.before.to_string(),
                after: s.after.to_string(),
            };
            out.push_str(&serde_json::to_string(&rec).expect("serializable"));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for RewriteTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Redex selection.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// First redex in preorder; lowest rule index at that position.
    #[default]
    OutermostLeftmost,
    /// First redex in postorder; lowest rule index at that position.
    InnermostLeftmost,
    /// Uniformly random redex from a seeded generator.
    Random(u64),
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Strategy, String> {
        match s {
            "outermost" | "outermost-leftmost" => Ok(Strategy::OutermostLeftmost),
            "innermost" | "innermost-leftmost" => Ok(Strategy::InnermostLeftmost),
            _ => match s.strip_prefix("random:").or(s.strip_prefix("random")) {
                Some("") => Ok(Strategy::Random(0)),
                Some(seed) => seed
                    .parse()
                    .map(Strategy::Random)
                    .map_err(|_| format!("bad seed in `{s}`")),
                None => Err(format!("unknown strategy `{s}`")),
            },
        }
    }
}

/// Normalization driver.
#[derive(Clone, Debug)]
pub struct Normalizer<'r> {
    rules: &'r RuleSet,
    strategy: Strategy,
    step_limit: usize,
}

impl<'r> Normalizer<'r> {
    pub fn new(rules: &'r RuleSet) -> Normalizer<'r> {
        Normalizer {
            rules,
            strategy: Strategy::default(),
            step_limit: DEFAULT_STEP_LIMIT,
        }
    }

    pub fn strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn step_limit(mut self, limit: usize) -> Self {
        assert!(limit > 0, "step limit must be positive");
        self.step_limit = limit;
        self
    }

    pub fn rules(&self) -> &'r RuleSet {
        self.rules
    }

    pub fn run(&self, t: &Term) -> Result<RewriteTrace, TrsError> {
        let mut rng = match self.strategy {
            Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        let mut trace = RewriteTrace::empty(t.clone());
        let mut cur = t.clone();
        loop {
            let next = match (&self.strategy, rng.as_mut()) {
                (Strategy::Random(_), Some(rng)) => {
                    let all = applicable_redexes(&cur, self.rules);
                    all.choose(rng).cloned()
                }
                (Strategy::InnermostLeftmost, _) => self.first_redex(&cur, false),
                _ => self.first_redex(&cur, true),
            };
            let Some(redex) = next else {
                return Ok(trace);
            };
            if trace.steps.len() == self.step_limit {
                return Err(TrsError::StepLimitExceeded {
                    limit: self.step_limit,
                });
            }
            let step = apply_step(&cur, redex.rule, &redex.position)?;
            cur = step.after.clone();
            trace.steps.push(step);
        }
    }

    pub fn normal_form(&self, t: &Term) -> Result<Term, TrsError> {
        self.run(t).map(|tr| tr.final_term().clone())
    }

    fn first_redex(&self, t: &Term, preorder: bool) -> Option<Redex<'r>> {
        let mut path = Vec::new();
        self.search(t, &mut path, preorder)
    }

    fn search(&self, t: &Term, path: &mut Vec<usize>, preorder: bool) -> Option<Redex<'r>> {
        if preorder {
            if let Some(r) = self.at(t, path) {
                return Some(r);
            }
        }
        if !t.is_atom() {
            for (i, a) in t.args().iter().enumerate() {
                path.push(i);
                let found = self.search(a, path, preorder);
                path.pop();
                if found.is_some() {
                    return found;
                }
            }
        }
        if preorder {
            None
        } else {
            self.at(t, path)
        }
    }

    fn at(&self, t: &Term, path: &[usize]) -> Option<Redex<'r>> {
        self.rules
            .iter()
            .find(|r| r.matches(t).is_some())
            .map(|rule| Redex {
                rule,
                position: Position(path.to_vec()),
            })
    }
}

/// Normalizes with all 39 rules, outermost-leftmost, default step limit.
pub fn normalize(t: &Term) -> Result<RewriteTrace, TrsError> {
    Normalizer::new(RuleSet::standard()).run(t)
}

/// Outcome of an rw-equality check; the traces witness the common normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RwEquality {
    pub equal: bool,
    pub left: RewriteTrace,
    pub right: RewriteTrace,
}

impl RwEquality {
    pub fn witness(&self) -> Option<(&RewriteTrace, &RewriteTrace)> {
        self.equal.then_some((&self.left, &self.right))
    }
}

/// Decides `s =rw t` by comparing normal forms.
pub fn rw_equal_with(n: &Normalizer<'_>, s: &Term, t: &Term) -> Result<RwEquality, TrsError> {
    let left = n.run(s)?;
    let right = n.run(t)?;
    Ok(RwEquality {
        equal: left.final_term() == right.final_term(),
        left,
        right,
    })
}

pub fn rw_equal(s: &Term, t: &Term) -> Result<RwEquality, TrsError> {
    rw_equal_with(&Normalizer::new(RuleSet::standard()), s, t)
}
