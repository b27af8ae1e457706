//! Rewriting for computational paths.
//!
//! Paths are the proof terms of propositional equality, built from atomic
//! reasons with reflexivity `rho`, symmetry `sigma`, transitivity `tau`,
//! substitution `subL`/`subR` and the congruence operators `xi*`, `mu*`, `nu`.
//! This crate provides
//!
//! - the term language with parsing, positions and context matching ([`term`], [`parse`]);
//! - the 39-rule rewrite system, strategies and traces ([`rules`], [`trs`]);
//! - a recursive path ordering termination check ([`ordering`]);
//! - critical-pair confluence checking ([`confluence`]);
//! - second-level rewriting of rewrite sequences ([`meta`]);
//! - fundamental groups of the circle, torus and projective plane ([`pi1`]).
//!
//! ```
//! use pathrw::{normalize, Term};
//!
//! let t: Term = "tau(tau(loop,loop),sigma(loop))".parse().unwrap();
//! let trace = normalize(&t).unwrap();
//! assert_eq!(trace.final_term().to_string(), "loop");
//! assert_eq!(trace.rule_names(), ["tt", "tr", "trr"]);
//! ```

pub mod confluence;
pub mod meta;
pub mod ordering;
pub mod parse;
pub mod pi1;
pub mod rules;
pub mod sample;
pub mod term;
pub mod trs;

pub use parse::{parse, parse_pattern};
pub use rules::{rule_table, Fragment, RewriteRule, RuleSet};
pub use term::{
    match_context_pair, match_pattern, Context, ContextMatch, Head, Position, Relation,
    Substitution, Symbol, Term, TermError,
};
pub use trs::{
    applicable_redexes, apply_step, normalize, rw_equal, Normalizer, Redex, RewriteStep,
    RewriteTrace, RwEquality, Strategy, TrsError,
};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/terms.md")]
    mod terms {}
    #[doc = include_str!("../../../book/src/rewriting.md")]
    mod rewriting {}
    #[doc = include_str!("../../../book/src/termination.md")]
    mod termination {}
    #[doc = include_str!("../../../book/src/confluence.md")]
    mod confluence {}
    #[doc = include_str!("../../../book/src/meta.md")]
    mod meta {}
    #[doc = include_str!("../../../book/src/fundamental-groups.md")]
    mod fundamental_groups {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
