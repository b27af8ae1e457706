//! Concrete syntax for path terms.
//!
//! ```text
//! term := 'rho'
//!       | OP '(' term {',' term} ')'      OP in sigma tau subL subR xi xi1 xi2 xiA mu mu1 mu2 nu
//!       | IDENT
//!       | IDENT '(' term {',' term} ')'   opaque labelled atom
//! ```
//!
//! Whitespace between tokens is ignored. Patterns additionally accept
//! `C[term]` for a context application and `[]` for a hole; in a pattern every
//! bare identifier is a variable.

use crate::term::{is_identifier, Symbol, Term, TermError};

/// Parses a ground path term.
pub fn parse(text: &str) -> Result<Term, TermError> {
    Parser::new(text, false).parse_all()
}

/// Parses a rule pattern: bare identifiers become variables.
pub fn parse_pattern(text: &str) -> Result<Term, TermError> {
    Parser::new(text, true).parse_all()
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    pattern: bool,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, pattern: bool) -> Parser<'a> {
        Parser {
            src,
            pos: 0,
            pattern,
        }
    }

    fn line_col(&self, offset: usize) -> (usize, usize) {
        let before = &self.src[..offset];
        let line = before.matches('\n').count() + 1;
        let column = before
            .rfind('\n')
            .map_or(before.chars().count(), |nl| before[nl + 1..].chars().count())
            + 1;
        (line, column)
    }

    fn syntax(&self, offset: usize, message: impl Into<String>) -> TermError {
        let (line, column) = self.line_col(offset);
        TermError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<(), TermError> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(d) => Err(self.syntax(self.pos, format!("expected `{c}`, found `{d}`"))),
            None => Err(self.syntax(self.pos, format!("expected `{c}`, found end of input"))),
        }
    }

    fn parse_all(mut self) -> Result<Term, TermError> {
        let t = self.term()?;
        match self.peek() {
            None => Ok(t),
            Some(c) => Err(self.syntax(self.pos, format!("unexpected `{c}` after term"))),
        }
    }

    fn ident(&mut self) -> Result<(usize, &'a str), TermError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest
            .char_indices()
            .find(|&(i, c)| {
                !(c.is_ascii_alphanumeric() || c == '_') || (i == 0 && !c.is_ascii_alphabetic())
            })
            .map_or(rest.len(), |(i, _)| i);
        if len == 0 {
            return Err(match rest.chars().next() {
                Some(c) => self.syntax(start, format!("expected a term, found `{c}`")),
                None => self.syntax(start, "expected a term, found end of input"),
            });
        }
        self.pos += len;
        Ok((start, &rest[..len]))
    }

    fn term(&mut self) -> Result<Term, TermError> {
        if self.pattern && self.peek() == Some('[') {
            self.pos += 1;
            self.expect(']')?;
            return Ok(Term::hole());
        }
        let (start, name) = self.ident()?;
        if self.pattern && name == "C" && self.peek() == Some('[') {
            self.pos += 1;
            let inner = self.term()?;
            self.expect(']')?;
            return Ok(Term::ctx(inner));
        }
        let args = if self.peek() == Some('(') {
            self.pos += 1;
            let mut args = vec![self.term()?];
            while self.peek() == Some(',') {
                self.pos += 1;
                args.push(self.term()?);
            }
            self.expect(')')?;
            Some(args)
        } else {
            None
        };
        match Symbol::from_name(name) {
            Some(sym) => {
                let args = args.unwrap_or_default();
                Term::op(sym, args).map_err(|e| match e {
                    TermError::BadArity(op, expected, found) => {
                        let (line, column) = self.line_col(start);
                        TermError::Arity {
                            line,
                            column,
                            op: op.name().to_string(),
                            expected,
                            found,
                        }
                    }
                    other => other,
                })
            }
            None => {
                debug_assert!(is_identifier(name));
                match args {
                    None if self.pattern => Ok(Term::var(name)),
                    args => Term::try_atom(name, args.unwrap_or_default()),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors() {
        assert_eq!(parse("sigma(rho)").unwrap(), Term::sigma(Term::rho()));
        assert_eq!(
            parse("tau(tau(t,r),s)").unwrap(),
            Term::tau(
                Term::tau(Term::atom("t"), Term::atom("r")),
                Term::atom("s")
            )
        );
        let mu = parse("mu(t, xi1(r), xi2(s))").unwrap();
        assert_eq!(
            mu,
            Term::op(
                Symbol::Mu,
                vec![
                    Term::atom("t"),
                    Term::xi1(Term::atom("r")),
                    Term::xi2(Term::atom("s"))
                ]
            )
            .unwrap()
        );
    }

    #[test]
    fn printing() {
        assert_eq!(Term::sigma(Term::sigma(Term::atom("r"))).to_string(), "sigma(sigma(r))");
        assert_eq!(Term::rho().to_string(), "rho");
        assert_eq!(
            Term::tau(Term::atom("a"), Term::sigma(Term::atom("a"))).to_string(),
            "tau(a,sigma(a))"
        );
    }

    #[test]
    fn whitespace_and_labels() {
        let t = parse("  tau ( eta( x ) ,\n beta(x, y) ) ").unwrap();
        assert_eq!(t.to_string(), "tau(eta(x),beta(x,y))");
    }

    #[test]
    fn arity_errors() {
        match parse("tau(a)") {
            Err(TermError::Arity {
                line: 1,
                column: 1,
                op,
                found: 1,
                ..
            }) => assert_eq!(op, "tau"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("rho(a)"), Err(TermError::Arity { .. })));
        assert!(matches!(parse("sigma"), Err(TermError::Arity { .. })));
        assert!(matches!(parse("xi(a,b,c)"), Err(TermError::Arity { .. })));
        assert!(parse("mu(a,b,c)").is_ok());
        assert!(matches!(parse("mu(a,b,c,d)"), Err(TermError::Arity { .. })));
    }

    #[test]
    fn syntax_errors_have_positions() {
        match parse("tau(a,\n  b") {
            Err(TermError::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 4)),
            other => panic!("{other:?}"),
        }
        match parse("sigma(1)") {
            Err(TermError::Syntax { line, column, .. }) => assert_eq!((line, column), (1, 7)),
            other => panic!("{other:?}"),
        }
        assert!(parse("").is_err());
        assert!(parse("a b").is_err());
        assert!(parse("f()").is_err());
    }

    #[test]
    fn patterns() {
        let p = parse_pattern("tau(C[r],C[sigma(r)])").unwrap();
        assert_eq!(p.to_string(), "tau(C[r],C[sigma(r)])");
        assert_eq!(p.variables(), vec!["r".to_string()]);
        assert_eq!(parse_pattern("xi1([])").unwrap().to_string(), "xi1([])");
        // ground parser keeps identifiers as atoms and rejects holes
        assert!(parse("C[r]").is_err());
        assert!(parse("r").unwrap().is_atom());
    }
}
