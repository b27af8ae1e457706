//! Fundamental groups of the circle, the torus and the real projective plane.
//!
//! A loop on a surface is a path term over the surface's generators built
//! with `rho`, `sigma` and `tau`. Canonicalization normalizes the term with
//! the rewrite rules, flattens it to a word, applies the surface relation
//! (`co` on the torus, `cicl` on the projective plane) and counts letters.
//!
//! Composition follows `r ∘ s = tau(s, r)`: the first argument of `tau` is
//! traversed first.
//!
//! ```
//! use pathrw::pi1::{canonicalize, Surface, SurfaceElement};
//!
//! let t = "tau(tau(tau(beta,alpha),sigma(beta)),sigma(alpha))".parse().unwrap();
//! let c = canonicalize(Surface::Torus, &t).unwrap();
//! assert_eq!(c.element, SurfaceElement::Torus(0, 0));
//! ```

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::rules::RuleSet;
use crate::term::{Head, Symbol, Term};
use crate::trs::{Normalizer, RewriteTrace, TrsError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Pi1Error {
    #[error("atom `{atom}` is not a generator of the {surface}")]
    ForeignAtom { atom: String, surface: Surface },
    #[error("operator `{0}` is not allowed in a loop (only rho, sigma, tau)")]
    ForeignOperator(String),
    #[error("elements of the {0} and the {1} cannot be combined")]
    SurfaceMismatch(Surface, Surface),
    #[error("unknown surface `{0}` (expected circle, torus or rp2)")]
    UnknownSurface(String),
    #[error(transparent)]
    Trs(#[from] TrsError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Surface {
    /// Generator `loop`.
    Circle,
    /// Generators `alpha`, `beta`; relation `co`.
    Torus,
    /// Generator `alpha`; relation `cicl`.
    ProjectivePlane,
}

impl Surface {
    pub const ALL: [Surface; 3] = [Surface::Circle, Surface::Torus, Surface::ProjectivePlane];

    pub fn generators(self) -> &'static [&'static str] {
        match self {
            Surface::Circle => &["loop"],
            Surface::Torus => &["alpha", "beta"],
            Surface::ProjectivePlane => &["alpha"],
        }
    }

    pub fn identity(self) -> SurfaceElement {
        match self {
            Surface::Circle => SurfaceElement::Circle(0),
            Surface::Torus => SurfaceElement::Torus(0, 0),
            Surface::ProjectivePlane => SurfaceElement::ProjectivePlane(0),
        }
    }

    /// Short name used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            Surface::Circle => "circle",
            Surface::Torus => "torus",
            Surface::ProjectivePlane => "rp2",
        }
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Surface::Circle => "circle",
            Surface::Torus => "torus",
            Surface::ProjectivePlane => "projective plane",
        })
    }
}

impl FromStr for Surface {
    type Err = Pi1Error;

    fn from_str(s: &str) -> Result<Surface, Pi1Error> {
        match s {
            "circle" | "s1" => Ok(Surface::Circle),
            "torus" | "t2" => Ok(Surface::Torus),
            "rp2" | "projective-plane" => Ok(Surface::ProjectivePlane),
            _ => Err(Pi1Error::UnknownSurface(s.to_string())),
        }
    }
}

/// Canonical group element. `Torus(m, n)` stands for `beta^m alpha^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SurfaceElement {
    Circle(i64),
    Torus(i64, i64),
    ProjectivePlane(u8),
}

impl SurfaceElement {
    pub fn surface(self) -> Surface {
        match self {
            SurfaceElement::Circle(_) => Surface::Circle,
            SurfaceElement::Torus(..) => Surface::Torus,
            SurfaceElement::ProjectivePlane(_) => Surface::ProjectivePlane,
        }
    }
}

impl fmt::Display for SurfaceElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceElement::Circle(n) => write!(f, "{n}"),
            SurfaceElement::Torus(m, n) => write!(f, "({m},{n})"),
            SurfaceElement::ProjectivePlane(b) => write!(f, "{b}"),
        }
    }
}

/// A generator or its formal inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: &'static str,
    pub inverse: bool,
}

impl Letter {
    pub fn inverted(self) -> Letter {
        Letter {
            inverse: !self.inverse,
            ..self
        }
    }

    fn to_term(self) -> Term {
        let a = Term::atom(self.generator);
        if self.inverse {
            Term::sigma(a)
        } else {
            a
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.generator)?;
        if self.inverse {
            f.write_str("^-1")?;
        }
        Ok(())
    }
}

/// Letters in traversal order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LoopWord(pub Vec<Letter>);

impl LoopWord {
    /// `tau`-chain nested to the right, `rho` for the empty word.
    pub fn to_term(&self) -> Term {
        let mut it = self.0.iter().rev();
        let Some(last) = it.next() else {
            return Term::rho();
        };
        it.fold(last.to_term(), |acc, l| Term::tau(l.to_term(), acc))
    }

    fn signed_count(&self, generator: &str) -> i64 {
        self.0
            .iter()
            .filter(|l| l.generator == generator)
            .map(|l| if l.inverse { -1 } else { 1 })
            .sum()
    }
}

impl fmt::Display for LoopWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// One use of a surface relation on a flattened word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordStep {
    /// `co` or `cicl`.
    pub relation: &'static str,
    /// Index of the first letter affected.
    pub index: usize,
    pub before: LoopWord,
    pub after: LoopWord,
}

/// The result of [`canonicalize`] with its justification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canonical {
    pub element: SurfaceElement,
    /// Normalization of the input term.
    pub normalization: RewriteTrace,
    /// Flattened normal form.
    pub word: LoopWord,
    /// Surface relation steps applied to `word`.
    pub relation_steps: Vec<WordStep>,
    /// Normalization of the word left after the relation steps.
    pub cleanup: RewriteTrace,
}

impl Canonical {
    /// The reduced representative path: `rho` for the identity.
    pub fn final_term(&self) -> &Term {
        self.cleanup.final_term()
    }

    pub fn final_word(&self) -> LoopWord {
        flatten_normal(self.cleanup.final_term())
    }

    /// Human-readable justification, one line per step.
    pub fn trace_text(&self) -> String {
        let mut out = self.normalization.to_text();
        for s in &self.relation_steps {
            out.push_str(&format!(
                "{} @ {}: {} => {}\n",
                s.relation, s.index, s.before, s.after
            ));
        }
        if !self.relation_steps.is_empty() {
            out.push_str(&self.cleanup.to_text());
        }
        out
    }
}

fn letter(surface: Surface, name: &str, inverse: bool) -> Result<Letter, Pi1Error> {
    surface
        .generators()
        .iter()
        .find(|g| **g == name)
        .map(|g| Letter {
            generator: g,
            inverse,
        })
        .ok_or_else(|| Pi1Error::ForeignAtom {
            atom: name.to_string(),
            surface,
        })
}

/// Checks that `t` is a loop over the surface's generators.
fn check(surface: Surface, t: &Term) -> Result<(), Pi1Error> {
    match t.head() {
        Head::Atom(a) if t.args().is_empty() => letter(surface, a, false).map(|_| ()),
        Head::Op(Symbol::Rho | Symbol::Sigma | Symbol::Tau) => {
            t.args().iter().try_for_each(|a| check(surface, a))
        }
        Head::Op(s) => Err(Pi1Error::ForeignOperator(s.name().to_string())),
        _ => Err(Pi1Error::ForeignOperator(t.to_string())),
    }
}

/// Reads off the word of a normal form: a right-nested `tau` chain of
/// generators and inverted generators, or `rho`.
fn flatten_normal(t: &Term) -> LoopWord {
    fn go(t: &Term, out: &mut Vec<Letter>) {
        match t.head() {
            Head::Op(Symbol::Tau) => {
                go(&t.args()[0], out);
                go(&t.args()[1], out);
            }
            Head::Op(Symbol::Rho) => {}
            _ => {
                let (name, inverse) = match t.atom_name() {
                    Some(a) => (a, false),
                    None => (
                        t.args()[0].atom_name().expect("normal form letter"),
                        true,
                    ),
                };
                out.push(Letter {
                    generator: intern(name),
                    inverse,
                });
            }
        }
    }
    let mut out = Vec::new();
    go(t, &mut out);
    LoopWord(out)
}

fn intern(name: &str) -> &'static str {
    ["loop", "alpha", "beta"]
        .into_iter()
        .find(|g| *g == name)
        .expect("surface generator")
}

fn count(surface: Surface, w: &LoopWord) -> SurfaceElement {
    match surface {
        Surface::Circle => SurfaceElement::Circle(w.signed_count("loop")),
        Surface::Torus => {
            SurfaceElement::Torus(w.signed_count("beta"), w.signed_count("alpha"))
        }
        Surface::ProjectivePlane => SurfaceElement::ProjectivePlane((w.0.len() % 2) as u8),
    }
}

/// `co`: move alpha-letters in front of beta-letters, one swap at a time.
fn commute(w: &LoopWord, steps: &mut Vec<WordStep>) -> LoopWord {
    let mut cur = w.clone();
    while let Some(i) = cur
        .0
        .windows(2)
        .position(|p| p[0].generator == "beta" && p[1].generator == "alpha")
    {
        let mut next = cur.clone();
        next.0.swap(i, i + 1);
        steps.push(WordStep {
            relation: "co",
            index: i,
            before: cur,
            after: next.clone(),
        });
        cur = next;
    }
    cur
}

/// `cicl`: alpha^-1 becomes alpha, then alpha alpha vanishes.
fn cicl(w: &LoopWord, steps: &mut Vec<WordStep>) -> LoopWord {
    let mut cur = w.clone();
    while let Some(i) = cur.0.iter().position(|l| l.inverse) {
        let mut next = cur.clone();
        next.0[i].inverse = false;
        steps.push(WordStep {
            relation: "cicl",
            index: i,
            before: cur,
            after: next.clone(),
        });
        cur = next;
    }
    while cur.0.len() >= 2 {
        let mut next = cur.clone();
        next.0.drain(0..2);
        steps.push(WordStep {
            relation: "cicl",
            index: 0,
            before: cur,
            after: next.clone(),
        });
        cur = next;
    }
    cur
}

/// Canonical element of a loop, with the rewrite and relation steps that
/// justify it.
pub fn canonicalize(surface: Surface, t: &Term) -> Result<Canonical, Pi1Error> {
    check(surface, t)?;
    let n = Normalizer::new(RuleSet::standard());
    let normalization = n.run(t)?;
    let word = flatten_normal(normalization.final_term());
    let mut relation_steps = Vec::new();
    let related = match surface {
        Surface::Circle => word.clone(),
        Surface::Torus => commute(&word, &mut relation_steps),
        Surface::ProjectivePlane => cicl(&word, &mut relation_steps),
    };
    let cleanup = n.run(&related.to_term())?;
    let element = count(surface, &flatten_normal(cleanup.final_term()));
    Ok(Canonical {
        element,
        normalization,
        word,
        relation_steps,
        cleanup,
    })
}

/// Flattens by structural recursion alone and counts letters. Shares no
/// code with [`canonicalize`].
pub fn oracle_count(surface: Surface, t: &Term) -> Result<SurfaceElement, Pi1Error> {
    fn go(surface: Surface, t: &Term, inverse: bool, out: &mut Vec<Letter>) -> Result<(), Pi1Error> {
        match (t.head(), t.args()) {
            (Head::Atom(a), []) => {
                out.push(letter(surface, a, inverse)?);
                Ok(())
            }
            (Head::Op(Symbol::Rho), _) => Ok(()),
            (Head::Op(Symbol::Sigma), [a]) => go(surface, a, !inverse, out),
            (Head::Op(Symbol::Tau), [a, b]) => {
                // the inverse of a composite traverses it backwards
                let (first, second) = if inverse { (b, a) } else { (a, b) };
                go(surface, first, inverse, out)?;
                go(surface, second, inverse, out)
            }
            (Head::Op(s), _) => Err(Pi1Error::ForeignOperator(s.name().to_string())),
            _ => Err(Pi1Error::ForeignOperator(t.to_string())),
        }
    }
    let mut letters = Vec::new();
    go(surface, t, false, &mut letters)?;
    let mut signed = std::collections::BTreeMap::new();
    for l in &letters {
        *signed.entry(l.generator).or_insert(0i64) += if l.inverse { -1 } else { 1 };
    }
    let get = |g: &str| signed.get(g).copied().unwrap_or(0);
    Ok(match surface {
        Surface::Circle => SurfaceElement::Circle(get("loop")),
        Surface::Torus => SurfaceElement::Torus(get("beta"), get("alpha")),
        Surface::ProjectivePlane => SurfaceElement::ProjectivePlane((letters.len() % 2) as u8),
    })
}

fn power(generator: &str, n: i64) -> Term {
    match n {
        0 => Term::rho(),
        n if n < 0 => Term::sigma(power(generator, -n)),
        n => {
            let g = Term::atom(generator);
            (1..n).fold(g.clone(), |acc, _| Term::tau(acc, g.clone()))
        }
    }
}

/// `loop^n`: `rho` for 0, a left-nested `tau` chain for positive `n`, and
/// `sigma(loop^-n)` for negative `n`.
pub fn loop_power(n: i64) -> Term {
    power("loop", n)
}

/// Representative path of a group element. The torus element `(m, n)` maps
/// to `tau(alpha^n, beta^m)`, i.e. `beta^m ∘ alpha^n`.
pub fn to_path(e: SurfaceElement) -> Term {
    match e {
        SurfaceElement::Circle(n) => loop_power(n),
        SurfaceElement::Torus(m, n) => match (m, n) {
            (0, n) => power("alpha", n),
            (m, 0) => power("beta", m),
            (m, n) => Term::tau(power("alpha", n), power("beta", m)),
        },
        SurfaceElement::ProjectivePlane(0) => Term::rho(),
        SurfaceElement::ProjectivePlane(_) => Term::atom("alpha"),
    }
}

pub fn compose(x: SurfaceElement, y: SurfaceElement) -> Result<SurfaceElement, Pi1Error> {
    use SurfaceElement::*;
    match (x, y) {
        (Circle(a), Circle(b)) => Ok(Circle(a + b)),
        (Torus(m1, n1), Torus(m2, n2)) => Ok(Torus(m1 + m2, n1 + n2)),
        (ProjectivePlane(a), ProjectivePlane(b)) => Ok(ProjectivePlane((a + b) % 2)),
        _ => Err(Pi1Error::SurfaceMismatch(x.surface(), y.surface())),
    }
}

pub fn inverse(x: SurfaceElement) -> SurfaceElement {
    match x {
        SurfaceElement::Circle(n) => SurfaceElement::Circle(-n),
        SurfaceElement::Torus(m, n) => SurfaceElement::Torus(-m, -n),
        SurfaceElement::ProjectivePlane(b) => SurfaceElement::ProjectivePlane(b),
    }
}
