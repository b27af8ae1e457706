//! Path terms: the label algebra of equality proofs.
//!
//! A [`Term`] is a finite tree whose nodes are either opaque atoms (atomic
//! reasons such as `r`, `loop`, or labelled steps like `beta(x,y)`) or one of
//! the path operators. Rule patterns reuse the same tree with two extra node
//! kinds: pattern variables and context applications `C[...]`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Path operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Symbol {
    Rho,
    Sigma,
    Tau,
    SubL,
    SubR,
    Xi,
    Xi1,
    Xi2,
    XiAnd,
    Mu,
    Mu1,
    Mu2,
    Nu,
}

impl Symbol {
    pub const ALL: [Symbol; 13] = [
        Symbol::Rho,
        Symbol::Sigma,
        Symbol::Tau,
        Symbol::SubL,
        Symbol::SubR,
        Symbol::Xi,
        Symbol::Xi1,
        Symbol::Xi2,
        Symbol::XiAnd,
        Symbol::Mu,
        Symbol::Mu1,
        Symbol::Mu2,
        Symbol::Nu,
    ];

    /// Concrete-syntax name.
    pub fn name(self) -> &'static str {
        match self {
            Symbol::Rho => "rho",
            Symbol::Sigma => "sigma",
            Symbol::Tau => "tau",
            Symbol::SubL => "subL",
            Symbol::SubR => "subR",
            Symbol::Xi => "xi",
            Symbol::Xi1 => "xi1",
            Symbol::Xi2 => "xi2",
            Symbol::XiAnd => "xiA",
            Symbol::Mu => "mu",
            Symbol::Mu1 => "mu1",
            Symbol::Mu2 => "mu2",
            Symbol::Nu => "nu",
        }
    }

    pub fn from_name(name: &str) -> Option<Symbol> {
        Symbol::ALL.into_iter().find(|s| s.name() == name)
    }

    /// Smallest and largest admissible number of arguments.
    pub fn arity(self) -> (usize, usize) {
        match self {
            Symbol::Rho => (0, 0),
            Symbol::Sigma | Symbol::Xi1 | Symbol::Xi2 | Symbol::Mu1 | Symbol::Mu2 | Symbol::Nu => {
                (1, 1)
            }
            Symbol::Tau | Symbol::SubL | Symbol::SubR | Symbol::XiAnd => (2, 2),
            Symbol::Xi => (1, 2),
            Symbol::Mu => (1, 3),
        }
    }

    pub fn accepts_arity(self, n: usize) -> bool {
        let (lo, hi) = self.arity();
        (lo..=hi).contains(&n)
    }

    fn arity_text(self) -> String {
        match self.arity() {
            (lo, hi) if lo == hi => lo.to_string(),
            (lo, hi) => format!("{lo}..{hi}"),
        }
    }

    /// Congruence operators: the only operators a rewrite context may pass through.
    pub fn is_congruence(self) -> bool {
        matches!(
            self,
            Symbol::Xi
                | Symbol::Xi1
                | Symbol::Xi2
                | Symbol::XiAnd
                | Symbol::Mu
                | Symbol::Mu1
                | Symbol::Mu2
                | Symbol::Nu
        )
    }

    /// σ, τ, ρ and the substitution operators.
    pub fn is_core(self) -> bool {
        matches!(
            self,
            Symbol::Rho | Symbol::Sigma | Symbol::Tau | Symbol::SubL | Symbol::SubR
        )
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The label at a node.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Head {
    /// Opaque atomic reason; its arguments (if any) are inert.
    Atom(String),
    Op(Symbol),
    /// Pattern variable.
    Var(String),
    /// Context application `C[t]` (rule patterns only).
    Ctx,
    /// The hole of a one-hole context.
    Hole,
}

/// An immutable path term.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Term {
    head: Head,
    args: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("arity error at {line}:{column}: `{op}` takes {expected} argument(s), found {found}")]
    Arity {
        line: usize,
        column: usize,
        op: String,
        expected: String,
        found: usize,
    },
    #[error("`{0}` takes {1} argument(s), found {2}")]
    BadArity(Symbol, String, usize),
    #[error("invalid atom name `{0}`")]
    BadAtom(String),
    #[error("position {position} is not valid for {term}")]
    InvalidPosition { position: Position, term: String },
}

impl Term {
    /// Builds an operator node, checking its arity.
    pub fn op(symbol: Symbol, args: Vec<Term>) -> Result<Term, TermError> {
        if !symbol.accepts_arity(args.len()) {
            return Err(TermError::BadArity(
                symbol,
                symbol.arity_text(),
                args.len(),
            ));
        }
        Ok(Term {
            head: Head::Op(symbol),
            args,
        })
    }

    fn op_unchecked(symbol: Symbol, args: Vec<Term>) -> Term {
        debug_assert!(symbol.accepts_arity(args.len()));
        Term {
            head: Head::Op(symbol),
            args,
        }
    }

    /// A nullary atom. Panics on names that are not identifiers or that
    /// collide with an operator name; use [`Term::try_atom`] for untrusted input.
    pub fn atom(name: &str) -> Term {
        Term::try_atom(name, Vec::new()).expect("invalid atom name")
    }

    pub fn try_atom(name: &str, args: Vec<Term>) -> Result<Term, TermError> {
        if !is_identifier(name) || Symbol::from_name(name).is_some() {
            return Err(TermError::BadAtom(name.to_string()));
        }
        Ok(Term {
            head: Head::Atom(name.to_string()),
            args,
        })
    }

    pub fn var(name: &str) -> Term {
        Term {
            head: Head::Var(name.to_string()),
            args: Vec::new(),
        }
    }

    pub fn hole() -> Term {
        Term {
            head: Head::Hole,
            args: Vec::new(),
        }
    }

    pub fn ctx(inner: Term) -> Term {
        Term {
            head: Head::Ctx,
            args: vec![inner],
        }
    }

    pub fn rho() -> Term {
        Term::op_unchecked(Symbol::Rho, Vec::new())
    }

    pub fn sigma(t: Term) -> Term {
        Term::op_unchecked(Symbol::Sigma, vec![t])
    }

    pub fn tau(a: Term, b: Term) -> Term {
        Term::op_unchecked(Symbol::Tau, vec![a, b])
    }

    pub fn sub_l(a: Term, b: Term) -> Term {
        Term::op_unchecked(Symbol::SubL, vec![a, b])
    }

    pub fn sub_r(a: Term, b: Term) -> Term {
        Term::op_unchecked(Symbol::SubR, vec![a, b])
    }

    pub fn xi1(t: Term) -> Term {
        Term::op_unchecked(Symbol::Xi1, vec![t])
    }

    pub fn xi2(t: Term) -> Term {
        Term::op_unchecked(Symbol::Xi2, vec![t])
    }

    pub fn nu(t: Term) -> Term {
        Term::op_unchecked(Symbol::Nu, vec![t])
    }

    pub fn head(&self) -> &Head {
        &self.head
    }

    pub fn args(&self) -> &[Term] {
        &self.args
    }

    pub fn symbol(&self) -> Option<Symbol> {
        match self.head {
            Head::Op(s) => Some(s),
            _ => None,
        }
    }

    pub fn is(&self, symbol: Symbol) -> bool {
        self.symbol() == Some(symbol)
    }

    pub fn is_rho(&self) -> bool {
        self.is(Symbol::Rho)
    }

    pub fn is_atom(&self) -> bool {
        matches!(self.head, Head::Atom(_))
    }

    pub fn atom_name(&self) -> Option<&str> {
        match &self.head {
            Head::Atom(n) => Some(n),
            _ => None,
        }
    }

    pub fn var_name(&self) -> Option<&str> {
        match &self.head {
            Head::Var(n) => Some(n),
            _ => None,
        }
    }

    /// Builds a node with the same head and new arguments.
    pub(crate) fn with_args(&self, args: Vec<Term>) -> Term {
        Term {
            head: self.head.clone(),
            args,
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.args.iter().map(Term::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.args.iter().map(Term::depth).max().unwrap_or(0)
    }

    /// True when the term contains no pattern variables, holes or contexts.
    pub fn is_ground(&self) -> bool {
        match self.head {
            Head::Var(_) | Head::Hole | Head::Ctx => false,
            _ => self.args.iter().all(Term::is_ground),
        }
    }

    /// Names of the pattern variables, in first-occurrence order.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        if let Head::Var(v) = &self.head {
            if !out.contains(v) {
                out.push(v.clone());
            }
        }
        for a in &self.args {
            a.collect_vars(out);
        }
    }

    pub fn contains_var(&self, name: &str) -> bool {
        match &self.head {
            Head::Var(v) if v == name => true,
            _ => self.args.iter().any(|a| a.contains_var(name)),
        }
    }

    /// Atom names occurring in the term, outside atom arguments.
    pub fn atoms(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.visit(&mut |t| {
            if let Some(n) = t.atom_name() {
                out.push(n);
            }
        });
        out
    }

    /// Preorder walk that does not descend into atom arguments.
    fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Term)) {
        f(self);
        if !self.is_atom() {
            for a in &self.args {
                a.visit(f);
            }
        }
    }

    /// Operator symbols occurring in the term.
    pub fn symbols(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        self.visit(&mut |t| {
            if let Some(s) = t.symbol() {
                if !out.contains(&s) {
                    out.push(s);
                }
            }
        });
        out
    }

    /// Every position in preorder (node before its children, children left to
    /// right), skipping the inert arguments of atoms.
    pub fn positions(&self) -> Vec<Position> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.collect_positions(&mut path, &mut out);
        out
    }

    fn collect_positions(&self, path: &mut Vec<usize>, out: &mut Vec<Position>) {
        out.push(Position(path.clone()));
        if self.is_atom() {
            return;
        }
        for (i, a) in self.args.iter().enumerate() {
            path.push(i);
            a.collect_positions(path, out);
            path.pop();
        }
    }

    pub fn get(&self, p: &Position) -> Option<&Term> {
        let mut cur = self;
        for &i in &p.0 {
            cur = cur.args.get(i)?;
        }
        Some(cur)
    }

    pub fn subterm_at(&self, p: &Position) -> Result<&Term, TermError> {
        self.get(p).ok_or_else(|| TermError::InvalidPosition {
            position: p.clone(),
            term: self.to_string(),
        })
    }

    /// Returns a copy of `self` with the subterm at `p` replaced by `s`.
    pub fn replace_at(&self, p: &Position, s: Term) -> Result<Term, TermError> {
        self.subterm_at(p)?;
        Ok(self.replace_unchecked(&p.0, s))
    }

    fn replace_unchecked(&self, path: &[usize], s: Term) -> Term {
        match path.split_first() {
            None => s,
            Some((&i, rest)) => {
                let mut args = self.args.clone();
                args[i] = self.args[i].replace_unchecked(rest, s);
                self.with_args(args)
            }
        }
    }

    /// Replaces every pattern variable by a nullary atom of the same name.
    pub fn freeze(&self) -> Term {
        match &self.head {
            Head::Var(v) => Term {
                head: Head::Atom(v.clone()),
                args: Vec::new(),
            },
            _ => self.with_args(self.args.iter().map(Term::freeze).collect()),
        }
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match &self.head {
            Head::Atom(n) | Head::Var(n) => n.as_str(),
            Head::Op(s) => s.name(),
            Head::Hole => return f.write_str("[]"),
            Head::Ctx => return write!(f, "C[{}]", self.args[0]),
        };
        f.write_str(name)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Term {
    type Err = TermError;

    fn from_str(s: &str) -> Result<Term, TermError> {
        crate::parse::parse(s)
    }
}

/// A path from the root to a node: the sequence of child indices.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Position(pub Vec<usize>);

impl Position {
    pub fn root() -> Position {
        Position(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, i: usize) -> Position {
        let mut v = self.0.clone();
        v.push(i);
        Position(v)
    }

    /// `self` followed by `rest`.
    pub fn join(&self, rest: &Position) -> Position {
        let mut v = self.0.clone();
        v.extend_from_slice(&rest.0);
        Position(v)
    }

    pub fn is_prefix_of(&self, other: &Position) -> bool {
        other.0.starts_with(&self.0)
    }
}

impl From<Vec<usize>> for Position {
    fn from(v: Vec<usize>) -> Position {
        Position(v)
    }
}

/// Dot path, `root` for the empty position.
impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl FromStr for Position {
    type Err = std::num::ParseIntError;

    fn from_str(s: &str) -> Result<Position, Self::Err> {
        if s == "root" || s.is_empty() {
            return Ok(Position::root());
        }
        s.split('.')
            .map(str::parse)
            .collect::<Result<Vec<_>, _>>()
            .map(Position)
    }
}

/// Finite map from pattern-variable names to terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution(BTreeMap<String, Term>);

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn get(&self, var: &str) -> Option<&Term> {
        self.0.get(var)
    }

    pub fn insert(&mut self, var: &str, t: Term) -> Option<Term> {
        self.0.insert(var.to_string(), t)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Term)> {
        self.0.iter()
    }

    /// Replaces bound variables; unbound variables are kept.
    pub fn apply(&self, t: &Term) -> Term {
        match &t.head {
            Head::Var(v) => self.0.get(v).cloned().unwrap_or_else(|| t.clone()),
            _ => t.with_args(t.args.iter().map(|a| self.apply(a)).collect()),
        }
    }
}

impl FromIterator<(String, Term)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (String, Term)>>(iter: I) -> Self {
        Substitution(iter.into_iter().collect())
    }
}

/// First-order matching. Repeated variables must bind syntactically equal terms.
pub fn match_pattern(pattern: &Term, t: &Term) -> Option<Substitution> {
    let mut subst = Substitution::new();
    match_into(pattern, t, &mut subst).then_some(subst)
}

pub(crate) fn match_into(pattern: &Term, t: &Term, subst: &mut Substitution) -> bool {
    match &pattern.head {
        Head::Var(v) => match subst.get(v) {
            Some(bound) => bound == t,
            None => {
                subst.insert(v, t.clone());
                true
            }
        },
        Head::Ctx | Head::Hole => false,
        Head::Atom(_) => pattern == t,
        Head::Op(_) => {
            pattern.head == t.head
                && pattern.args.len() == t.args.len()
                && pattern
                    .args
                    .iter()
                    .zip(&t.args)
                    .all(|(p, s)| match_into(p, s, subst))
        }
    }
}

/// A term with exactly one hole.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Context {
    frame: Term,
    hole: Position,
}

impl Context {
    pub fn bare() -> Context {
        Context {
            frame: Term::hole(),
            hole: Position::root(),
        }
    }

    /// Cuts `t` at `p`, leaving a hole there.
    pub fn around(t: &Term, p: &Position) -> Result<Context, TermError> {
        Ok(Context {
            frame: t.replace_at(p, Term::hole())?,
            hole: p.clone(),
        })
    }

    pub fn is_bare(&self) -> bool {
        self.hole.is_root()
    }

    pub fn hole(&self) -> &Position {
        &self.hole
    }

    pub fn frame(&self) -> &Term {
        &self.frame
    }

    pub fn plug(&self, t: Term) -> Term {
        self.frame.replace_unchecked(&self.hole.0, t)
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.frame, f)
    }
}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Context({})", self.frame)
    }
}

/// How the two plugged subterms of a context pair relate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    /// `C[r]` against `C[σ(r)]`.
    ThenSigma,
    /// `C[σ(r)]` against `C[r]`.
    SigmaThen,
    /// `C[r]` against `C[ρ]`.
    ThenRho,
    /// `C[ρ]` against `C[r]`.
    RhoThen,
    /// `C[u]` against `C[u]`.
    Equal,
}

impl Relation {
    /// The binding `r` if `(a, b)` is an instance of the relation.
    fn holds(self, a: &Term, b: &Term) -> Option<Term> {
        match self {
            Relation::ThenSigma => (b.is(Symbol::Sigma) && b.args[0] == *a).then(|| a.clone()),
            Relation::SigmaThen => (a.is(Symbol::Sigma) && a.args[0] == *b).then(|| b.clone()),
            Relation::ThenRho => b.is_rho().then(|| a.clone()),
            Relation::RhoThen => a.is_rho().then(|| b.clone()),
            Relation::Equal => (a == b).then(|| a.clone()),
        }
    }

    /// The pair `(left, right)` plugged for binding `r`.
    pub fn sides(self, r: &Term) -> (Term, Term) {
        match self {
            Relation::ThenSigma => (r.clone(), Term::sigma(r.clone())),
            Relation::SigmaThen => (Term::sigma(r.clone()), r.clone()),
            Relation::ThenRho => (r.clone(), Term::rho()),
            Relation::RhoThen => (Term::rho(), r.clone()),
            Relation::Equal => (r.clone(), r.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContextMatch {
    pub context: Context,
    pub binding: Term,
}

/// Decomposes `a = C[x]`, `b = C[y]` with `(x, y)` in `relation`.
///
/// Candidate holes lie on the common spine of `a` and `b`; the outermost
/// candidate where the relation holds wins, so the bare hole is tried first.
/// The spine only passes through congruence operators (ξ/μ/ν families).
pub fn match_context_pair(a: &Term, b: &Term, relation: Relation) -> Option<ContextMatch> {
    let mut path = Vec::new();
    let binding = find_hole(a, b, relation, &mut path)?;
    let context = Context {
        frame: a.replace_unchecked(&path, Term::hole()),
        hole: Position(path),
    };
    Some(ContextMatch { context, binding })
}

fn find_hole(a: &Term, b: &Term, relation: Relation, path: &mut Vec<usize>) -> Option<Term> {
    if let Some(r) = relation.holds(a, b) {
        return Some(r);
    }
    let frame_ok = matches!(a.head, Head::Op(s) if s.is_congruence())
        && a.head == b.head
        && a.args.len() == b.args.len();
    if !frame_ok {
        return None;
    }
    let differing: Vec<usize> = (0..a.args.len())
        .filter(|&i| a.args[i] != b.args[i])
        .collect();
    let candidates: Vec<usize> = match differing.len() {
        0 => (0..a.args.len()).collect(),
        1 => differing,
        _ => return None,
    };
    for i in candidates {
        path.push(i);
        if let Some(r) = find_hole(&a.args[i], &b.args[i], relation, path) {
            return Some(r);
        }
        path.pop();
    }
    None
}
