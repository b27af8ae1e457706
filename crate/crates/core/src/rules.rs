//! The 39 rewrite rules on path terms.

use std::fmt;
use std::sync::LazyLock;

use serde::{Deserialize, Serialize};

use crate::parse::parse_pattern;
use crate::term::{match_context_pair, match_into, Context, Head, Relation, Substitution, Term};

/// Which operators a rule involves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Fragment {
    /// σ, τ, ρ and substitution only.
    Core,
    /// Involves ξ, μ or ν.
    Mixed,
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fragment::Core => "core",
            Fragment::Mixed => "mixed",
        })
    }
}

/// Shape of a context rule: the two `C[...]` occurrences of its left side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContextShape {
    pub relation: Relation,
    /// Variable bound to the plugged subterm.
    pub hole_var: String,
    /// The left side with the two contexts replaced by placeholder variables.
    skeleton: Term,
}

const LEFT_SLOT: &str = "%left";
const RIGHT_SLOT: &str = "%right";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub index: u8,
    pub name: &'static str,
    pub lhs: Term,
    pub rhs: Term,
    pub context: Option<ContextShape>,
    pub fragment: Fragment,
}

/// A successful match of a rule's left side.
#[derive(Clone, Debug)]
pub struct RuleMatch {
    pub subst: Substitution,
    pub context: Option<Context>,
}

impl RewriteRule {
    fn build(index: u8, name: &'static str, lhs: &str, rhs: &str) -> RewriteRule {
        let lhs = parse_pattern(lhs).expect("rule lhs");
        let rhs = parse_pattern(rhs).expect("rule rhs");
        let lhs_vars = lhs.variables();
        assert!(
            rhs.variables().iter().all(|v| lhs_vars.contains(v)),
            "rule {name}: rhs has extra variables"
        );
        let fragment = if lhs.symbols().iter().chain(rhs.symbols().iter()).all(|s| s.is_core()) {
            Fragment::Core
        } else {
            Fragment::Mixed
        };
        let context = context_shape(&lhs);
        RewriteRule {
            index,
            name,
            lhs,
            rhs,
            context,
            fragment,
        }
    }

    pub fn is_context_rule(&self) -> bool {
        self.context.is_some()
    }

    /// Matches the left side at the root of `t`.
    pub fn matches(&self, t: &Term) -> Option<RuleMatch> {
        match &self.context {
            None => {
                let mut subst = Substitution::new();
                match_into(&self.lhs, t, &mut subst).then_some(RuleMatch {
                    subst,
                    context: None,
                })
            }
            Some(shape) => {
                let mut subst = Substitution::new();
                if !match_into(&shape.skeleton, t, &mut subst) {
                    return None;
                }
                let a = subst.get(LEFT_SLOT)?;
                let b = subst.get(RIGHT_SLOT)?;
                let m = match_context_pair(a, b, shape.relation)?;
                let subst: Substitution = subst
                    .iter()
                    .filter(|(k, _)| !k.starts_with('%'))
                    .map(|(k, v)| (k.clone(), v.clone()))
                    .chain(std::iter::once((shape.hole_var.clone(), m.binding)))
                    .collect();
                Some(RuleMatch {
                    subst,
                    context: Some(m.context),
                })
            }
        }
    }

    /// Instantiates the right side for a match.
    pub fn instantiate(&self, m: &RuleMatch) -> Term {
        instantiate(&self.rhs, &m.subst, m.context.as_ref())
    }

    /// The rule with each `C[x]` replaced by `wrap(x)`.
    pub fn with_context(&self, wrap: impl Fn(Term) -> Term + Copy) -> (Term, Term) {
        (fill_context(&self.lhs, wrap), fill_context(&self.rhs, wrap))
    }

    /// First-order instance with the empty context.
    pub fn bare_instance(&self) -> (Term, Term) {
        self.with_context(|x| x)
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}. {} -> {} [{}]", self.index, self.lhs, self.rhs, self.name)
    }
}

fn instantiate(t: &Term, subst: &Substitution, ctx: Option<&Context>) -> Term {
    match t.head() {
        Head::Var(v) => subst.get(v).cloned().unwrap_or_else(|| t.clone()),
        Head::Ctx => {
            let inner = instantiate(&t.args()[0], subst, ctx);
            match ctx {
                Some(c) => c.plug(inner),
                None => inner,
            }
        }
        _ => t.with_args(t.args().iter().map(|a| instantiate(a, subst, ctx)).collect()),
    }
}

fn fill_context(t: &Term, wrap: impl Fn(Term) -> Term + Copy) -> Term {
    match t.head() {
        Head::Ctx => wrap(fill_context(&t.args()[0], wrap)),
        _ => t.with_args(t.args().iter().map(|a| fill_context(a, wrap)).collect()),
    }
}

fn context_shape(lhs: &Term) -> Option<ContextShape> {
    let ctx_positions: Vec<_> = lhs
        .positions()
        .into_iter()
        .filter(|p| matches!(lhs.get(p).map(Term::head), Some(Head::Ctx)))
        .collect();
    if ctx_positions.is_empty() {
        return None;
    }
    assert_eq!(ctx_positions.len(), 2, "context rules use C twice");
    let a = &lhs.get(&ctx_positions[0]).unwrap().args()[0];
    let b = &lhs.get(&ctx_positions[1]).unwrap().args()[0];
    let sigma_of = |t: &Term, v: &Term| t.is(crate::term::Symbol::Sigma) && t.args()[0] == *v;
    let (relation, hole) = match (a.head(), b.head()) {
        (Head::Var(_), _) if sigma_of(b, a) => (Relation::ThenSigma, a),
        (_, Head::Var(_)) if sigma_of(a, b) => (Relation::SigmaThen, b),
        (Head::Var(_), _) if b.is_rho() => (Relation::ThenRho, a),
        (_, Head::Var(_)) if a.is_rho() => (Relation::RhoThen, b),
        _ => panic!("unsupported context shape {a} / {b}"),
    };
    let skeleton = lhs
        .replace_at(&ctx_positions[0], Term::var(LEFT_SLOT))
        .and_then(|t| t.replace_at(&ctx_positions[1], Term::var(RIGHT_SLOT)))
        .unwrap();
    Some(ContextShape {
        relation,
        hole_var: hole.var_name().unwrap().to_string(),
        skeleton,
    })
}

const TABLE: [(u8, &str, &str, &str); 39] = [
    (1, "sr", "sigma(rho)", "rho"),
    (2, "ss", "sigma(sigma(r))", "r"),
    (3, "tr", "tau(C[r],C[sigma(r)])", "C[rho]"),
    (4, "tsr", "tau(C[sigma(r)],C[r])", "C[rho]"),
    (5, "trr", "tau(C[r],C[rho])", "C[r]"),
    (6, "tlr", "tau(C[rho],C[r])", "C[r]"),
    (7, "slr", "subL(C[r],C[rho])", "C[r]"),
    (8, "srr", "subR(C[rho],C[r])", "C[r]"),
    (9, "sls", "subL(subL(s,C[r]),C[sigma(r)])", "s"),
    (10, "slss", "subL(subL(s,C[sigma(r)]),C[r])", "s"),
    (11, "srs", "subR(C[s],subR(C[sigma(s)],r))", "r"),
    (12, "srrr", "subR(C[sigma(s)],subR(C[s],r))", "r"),
    (13, "mx2l1", "mu1(xi1(r))", "r"),
    (14, "mx2l2", "mu1(xiA(r,s))", "r"),
    (15, "mx2r1", "mu2(xiA(r,s))", "s"),
    (16, "mx2r2", "mu2(xi2(s))", "s"),
    (17, "mx3l", "mu(xi1(r),s,u)", "s"),
    (18, "mx3r", "mu(xi2(r),s,u)", "u"),
    (19, "mxl", "nu(xi(r))", "r"),
    (20, "mxr", "mu(xi2(r),s)", "s"),
    (21, "mx", "xi(mu1(r),mu2(r))", "r"),
    (22, "mxx", "mu(t,xi1(r),xi2(s))", "t"),
    (23, "xmr", "xi(nu(r))", "r"),
    (24, "mx1r", "mu(s,xi2(r))", "s"),
    (25, "stss", "sigma(tau(r,s))", "tau(sigma(s),sigma(r))"),
    (26, "ssbl", "sigma(subL(r,s))", "subR(sigma(s),sigma(r))"),
    (27, "ssbr", "sigma(subR(r,s))", "subL(sigma(s),sigma(r))"),
    (28, "sx", "sigma(xi(r))", "xi(sigma(r))"),
    (29, "sxss", "sigma(xi(s,r))", "xi(sigma(s),sigma(r))"),
    (30, "sm", "sigma(mu(r))", "mu(sigma(r))"),
    (31, "smss", "sigma(mu(s,r))", "mu(sigma(s),sigma(r))"),
    (32, "smsss", "sigma(mu(r,u,v))", "mu(sigma(r),sigma(u),sigma(v))"),
    (33, "tsbll", "tau(r,subL(rho,s))", "subL(r,s)"),
    (34, "tsbrl", "tau(r,subR(s,rho))", "subL(r,s)"),
    (35, "tsblr", "tau(subL(r,s),t)", "tau(r,subR(s,t))"),
    (36, "tsbrr", "tau(subR(s,t),u)", "subR(s,tau(t,u))"),
    (37, "tt", "tau(tau(t,r),s)", "tau(t,tau(r,s))"),
    (38, "tts", "tau(C[u],tau(C[sigma(u)],v))", "v"),
    (39, "tst", "tau(C[sigma(u)],tau(C[u],v))", "v"),
];

static STANDARD: LazyLock<RuleSet> = LazyLock::new(|| RuleSet {
    rules: TABLE
        .iter()
        .map(|&(i, n, l, r)| RewriteRule::build(i, n, l, r))
        .collect(),
});

/// An ordered collection of rules, sorted by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleSet {
    rules: Vec<RewriteRule>,
}

impl RuleSet {
    /// All 39 rules.
    pub fn standard() -> &'static RuleSet {
        &STANDARD
    }

    /// Rules over σ, τ, ρ and substitution only.
    pub fn core() -> RuleSet {
        RuleSet::standard().filter(|r| r.fragment == Fragment::Core)
    }

    /// The σ/τ/ρ rules that decide loop words: 1–6, 25 and 37–39.
    pub fn groupoid() -> RuleSet {
        RuleSet::standard().filter(|r| matches!(r.index, 1..=6 | 25 | 37..=39))
    }

    pub fn from_rules(mut rules: Vec<RewriteRule>) -> RuleSet {
        rules.sort_by_key(|r| r.index);
        RuleSet { rules }
    }

    pub fn filter(&self, keep: impl Fn(&RewriteRule) -> bool) -> RuleSet {
        RuleSet {
            rules: self.rules.iter().filter(|r| keep(r)).cloned().collect(),
        }
    }

    /// The set minus the named rules.
    pub fn without(&self, names: &[&str]) -> RuleSet {
        self.filter(|r| !names.contains(&r.name))
    }

    pub fn get(&self, name: &str) -> Option<&RewriteRule> {
        self.rules.iter().find(|r| r.name == name)
    }

    pub fn by_index(&self, index: u8) -> Option<&RewriteRule> {
        self.rules.iter().find(|r| r.index == index)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, RewriteRule> {
        self.rules.iter()
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}

impl<'a> IntoIterator for &'a RuleSet {
    type Item = &'a RewriteRule;
    type IntoIter = std::slice::Iter<'a, RewriteRule>;

    fn into_iter(self) -> Self::IntoIter {
        self.rules.iter()
    }
}

/// The 39 rules in index order.
pub fn rule_table() -> &'static [RewriteRule] {
    &STANDARD.rules
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    #[test]
    fn table_shape() {
        let rules = rule_table();
        assert_eq!(rules.len(), 39);
        for (i, r) in rules.iter().enumerate() {
            assert_eq!(r.index as usize, i + 1);
        }
        let ctx: Vec<u8> = rules
            .iter()
            .filter(|r| r.is_context_rule())
            .map(|r| r.index)
            .collect();
        assert_eq!(ctx, [3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 38, 39]);
        let mut names: Vec<_> = rules.iter().map(|r| r.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), 39);
    }

    #[test]
    fn fragments() {
        let core: Vec<u8> = RuleSet::core().iter().map(|r| r.index).collect();
        let expected: Vec<u8> = (1..=12).chain(25..=27).chain(33..=39).collect();
        assert_eq!(core, expected);
        assert_eq!(core.len(), 22);
    }

    #[test]
    fn lookups() {
        let s = RuleSet::standard();
        let ss = s.get("ss").unwrap();
        assert_eq!((ss.lhs.to_string(), ss.rhs.to_string()), ("sigma(sigma(r))".into(), "r".into()));
        let stss = s.get("stss").unwrap();
        assert_eq!(stss.rhs.to_string(), "tau(sigma(s),sigma(r))");
        assert_eq!(s.get("tt").unwrap().lhs.to_string(), "tau(tau(t,r),s)");
        assert_eq!(s.get("tst").unwrap().rhs.to_string(), "v");
    }

    #[test]
    fn context_relations() {
        let s = RuleSet::standard();
        let rel = |n: &str| s.get(n).unwrap().context.as_ref().unwrap().relation;
        assert_eq!(rel("tr"), Relation::ThenSigma);
        assert_eq!(rel("tsr"), Relation::SigmaThen);
        assert_eq!(rel("trr"), Relation::ThenRho);
        assert_eq!(rel("tlr"), Relation::RhoThen);
        assert_eq!(rel("srs"), Relation::ThenSigma);
        assert_eq!(rel("tst"), Relation::SigmaThen);
    }

    #[test]
    fn context_rule_matching() {
        let tr = RuleSet::standard().get("tr").unwrap();
        let t = parse("tau(xi1(r),xi1(sigma(r)))").unwrap();
        let m = tr.matches(&t).unwrap();
        assert_eq!(tr.instantiate(&m).to_string(), "xi1(rho)");

        let tst = RuleSet::standard().get("tst").unwrap();
        let t = parse("tau(sigma(a),tau(a,v))").unwrap();
        assert_eq!(tst.instantiate(&tst.matches(&t).unwrap()).to_string(), "v");
        let t = parse("tau(nu(sigma(a)),tau(nu(a),w))").unwrap();
        assert_eq!(tst.instantiate(&tst.matches(&t).unwrap()).to_string(), "w");
    }

    #[test]
    fn bare_and_wrapped_instances() {
        let tr = RuleSet::standard().get("tr").unwrap();
        let (l, r) = tr.bare_instance();
        assert_eq!((l.to_string(), r.to_string()), ("tau(r,sigma(r))".into(), "rho".into()));
        let (l, r) = tr.with_context(Term::xi1);
        assert_eq!(
            (l.to_string(), r.to_string()),
            ("tau(xi1(r),xi1(sigma(r)))".into(), "xi1(rho)".into())
        );
    }
}
