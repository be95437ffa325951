//! Recursive-descent parser for terms and equations.
//!
//! ```text
//! equation := sum "=" sum
//! sum      := product ("+" product)*
//! product  := unary ("*" unary)*
//! unary    := "-" unary | primary
//! primary  := "x" digit | "0" | "1" | "(" sum ")"
//!           | "c(" idx "," sum ")" | "cg({" idx-list "}," sum ")"
//!           | "s(" idx "," idx "," sum ")" | "p(" idx "," idx "," sum ")"
//!           | "d(" idx "," idx ")" | "ssub([" idx-list "]," sum ")"
//! ```

use thiserror::Error;

use super::{Equation, Kind, SigTag, Signature, Term};
use crate::transform::Transformation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("{line}:{col}: index {index} out of range for dimension {alpha}")]
    Index {
        line: usize,
        col: usize,
        index: usize,
        alpha: usize,
    },

    #[error("{line}:{col}: operator {kind} is not in signature {sig}")]
    Signature {
        line: usize,
        col: usize,
        kind: String,
        sig: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Num(usize),
    Sym(char),
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str, first_line: usize) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut line = first_line;
    let mut col = 1;
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let (l, c) = (line, col);
        if ch == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if ch.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        let tok = if ch.is_ascii_lowercase() {
            let mut w = String::new();
            while let Some(&a) = chars.peek().filter(|a| a.is_ascii_lowercase()) {
                w.push(a);
                chars.next();
                col += 1;
            }
            Tok::Word(w)
        } else if ch.is_ascii_digit() {
            let mut n = 0usize;
            while let Some(d) = chars.peek().and_then(|a| a.to_digit(10)) {
                n = n.saturating_mul(10).saturating_add(d as usize);
                chars.next();
                col += 1;
            }
            Tok::Num(n)
        } else if "()+*-=,{}[]".contains(ch) {
            chars.next();
            col += 1;
            Tok::Sym(ch)
        } else {
            return Err(ParseError::Syntax {
                line: l,
                col: c,
                msg: format!("unexpected character {ch:?}"),
            });
        };
        out.push(Token {
            tok,
            line: l,
            col: c,
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    alpha: usize,
    sig: Option<SigTag>,
}

impl Parser {
    fn new(
        text: &str,
        first_line: usize,
        alpha: usize,
        sig: Option<SigTag>,
    ) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(text, first_line)?,
            pos: 0,
            alpha,
            sig,
        })
    }

    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax<T>(&self, at: &Token, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            line: at.line,
            col: at.col,
            msg: msg.into(),
        })
    }

    fn describe(tok: &Tok) -> String {
        match tok {
            Tok::Word(w) => format!("{w:?}"),
            Tok::Num(n) => format!("number {n}"),
            Tok::Sym(c) => format!("{c:?}"),
            Tok::End => "end of input".into(),
        }
    }

    fn expect(&mut self, ch: char) -> Result<(), ParseError> {
        let t = self.next();
        if t.tok == Tok::Sym(ch) {
            Ok(())
        } else {
            self.syntax(
                &t,
                format!("expected {ch:?}, found {}", Self::describe(&t.tok)),
            )
        }
    }

    fn admit(&self, kind: Kind, at: &Token) -> Result<(), ParseError> {
        match self.sig {
            Some(tag) if !tag.admits(kind) => Err(ParseError::Signature {
                line: at.line,
                col: at.col,
                kind: kind.to_string(),
                sig: tag.to_string(),
            }),
            _ => Ok(()),
        }
    }

    fn index(&mut self) -> Result<usize, ParseError> {
        let t = self.next();
        match t.tok.clone() {
            Tok::Num(n) if n < self.alpha => Ok(n),
            Tok::Num(n) => Err(ParseError::Index {
                line: t.line,
                col: t.col,
                index: n,
                alpha: self.alpha,
            }),
            other => self.syntax(
                &t,
                format!("expected an index, found {}", Self::describe(&other)),
            ),
        }
    }

    fn index_list(&mut self, close: char) -> Result<Vec<usize>, ParseError> {
        let mut out = Vec::new();
        if self.peek().tok == Tok::Sym(close) {
            self.next();
            return Ok(out);
        }
        loop {
            out.push(self.index()?);
            let t = self.next();
            match t.tok.clone() {
                Tok::Sym(',') => continue,
                Tok::Sym(c) if c == close => return Ok(out),
                other => {
                    return self.syntax(
                        &t,
                        format!(
                            "expected ',' or {close:?}, found {}",
                            Self::describe(&other)
                        ),
                    )
                }
            }
        }
    }

    fn sum(&mut self) -> Result<Term, ParseError> {
        let mut t = self.product()?;
        while self.peek().tok == Tok::Sym('+') {
            let at = self.next();
            self.admit(Kind::Sum, &at)?;
            t = t.plus(self.product()?);
        }
        Ok(t)
    }

    fn product(&mut self) -> Result<Term, ParseError> {
        let mut t = self.unary()?;
        while self.peek().tok == Tok::Sym('*') {
            let at = self.next();
            self.admit(Kind::Product, &at)?;
            t = t.times(self.unary()?);
        }
        Ok(t)
    }

    fn unary(&mut self) -> Result<Term, ParseError> {
        if self.peek().tok == Tok::Sym('-') {
            self.next();
            return Ok(self.unary()?.complement());
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Term, ParseError> {
        let at = self.next();
        match &at.tok {
            Tok::Num(0) => Ok(Term::Zero),
            Tok::Num(1) => Ok(Term::One),
            Tok::Sym('(') => {
                let t = self.sum()?;
                self.expect(')')?;
                Ok(t)
            }
            Tok::Word(w) if w == "x" => {
                let t = self.next();
                match t.tok {
                    Tok::Num(n) if n < 10 && t.line == at.line && t.col == at.col + 1 => {
                        Ok(Term::Var(n))
                    }
                    Tok::Num(n) if n >= 10 => self.syntax(&t, "variables are x0 .. x9"),
                    _ => self.syntax(&at, "expected a variable x0 .. x9"),
                }
            }
            Tok::Word(w) => {
                let w = w.clone();
                self.operator(&w, &at)
            }
            other => self.syntax(
                &at,
                format!("expected a term, found {}", Self::describe(other)),
            ),
        }
    }

    fn operator(&mut self, word: &str, at: &Token) -> Result<Term, ParseError> {
        let kind = match word {
            "c" => Kind::Cyl,
            "cg" => Kind::CylSet,
            "s" => Kind::Subst,
            "p" => Kind::Perm,
            "d" => Kind::Diag,
            "ssub" => Kind::SubstSigma,
            _ => return self.syntax(at, format!("unknown operator {word:?}")),
        };
        self.admit(kind, at)?;
        self.expect('(')?;
        let t = match kind {
            Kind::Cyl => {
                let i = self.index()?;
                self.expect(',')?;
                Term::c(i, self.sum()?)
            }
            Kind::CylSet => {
                self.expect('{')?;
                let g = self.index_list('}')?;
                self.expect(',')?;
                Term::cg(&g, self.sum()?)
            }
            Kind::Subst | Kind::Perm => {
                let i = self.index()?;
                self.expect(',')?;
                let j = self.index()?;
                self.expect(',')?;
                let body = self.sum()?;
                if kind == Kind::Subst {
                    Term::s(i, j, body)
                } else {
                    Term::p(i, j, body)
                }
            }
            Kind::Diag => {
                let i = self.index()?;
                self.expect(',')?;
                let j = self.index()?;
                Term::Diag(i, j)
            }
            Kind::SubstSigma => {
                let list_at = self.peek().clone();
                self.expect('[')?;
                let map = self.index_list(']')?;
                if map.len() != self.alpha {
                    return self.syntax(
                        &list_at,
                        format!("ssub needs {} entries, found {}", self.alpha, map.len()),
                    );
                }
                let sigma = match Transformation::from_map(&map) {
                    Ok(s) => s,
                    Err(e) => return self.syntax(&list_at, e.to_string()),
                };
                self.expect(',')?;
                Term::ssub(sigma, self.sum()?)
            }
            _ => unreachable!("only operator kinds reach here"),
        };
        self.expect(')')?;
        Ok(t)
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        let t = self.next();
        if t.tok == Tok::End {
            Ok(())
        } else {
            self.syntax(&t, format!("unexpected {}", Self::describe(&t.tok)))
        }
    }

    fn equation(&mut self) -> Result<(Term, Term), ParseError> {
        let lhs = self.sum()?;
        self.expect('=')?;
        let rhs = self.sum()?;
        self.finish()?;
        Ok((lhs, rhs))
    }
}

fn term_with(text: &str, alpha: usize, sig: Option<SigTag>) -> Result<Term, ParseError> {
    let mut p = Parser::new(text, 1, alpha, sig)?;
    let t = p.sum()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_term(text: &str, alpha: usize) -> Result<Term, ParseError> {
    term_with(text, alpha, None)
}

/// Parses and also rejects operators outside `sig`.
pub fn parse_term_in(text: &str, sig: &Signature) -> Result<Term, ParseError> {
    term_with(text, sig.alpha, Some(sig.tag))
}

fn equation_with(
    text: &str,
    line: usize,
    alpha: usize,
    sig: Option<SigTag>,
) -> Result<(Term, Term), ParseError> {
    Parser::new(text, line, alpha, sig)?.equation()
}

/// Parses `lhs = rhs`. The label is left empty for the caller to set.
pub fn parse_equation(text: &str, alpha: usize) -> Result<Equation, ParseError> {
    let (lhs, rhs) = equation_with(text, 1, alpha, None)?;
    Ok(Equation::new("", lhs, rhs))
}

pub fn parse_equation_in(text: &str, sig: &Signature) -> Result<Equation, ParseError> {
    let (lhs, rhs) = equation_with(text, 1, sig.alpha, Some(sig.tag))?;
    Ok(Equation::new("", lhs, rhs))
}

fn file_with(text: &str, alpha: usize, sig: Option<SigTag>) -> Result<Vec<Equation>, ParseError> {
    let mut out = Vec::new();
    let mut label: Option<String> = None;
    for (n, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('#') {
            label = Some(rest.trim().to_string());
            continue;
        }
        let (lhs, rhs) = equation_with(line, n + 1, alpha, sig)?;
        let name = label
            .take()
            .filter(|l| !l.is_empty())
            .unwrap_or_else(|| format!("eq{}", out.len() + 1));
        out.push(Equation::new(name, lhs, rhs));
    }
    Ok(out)
}

/// One equation per line; a `# label` line names the equation after it.
/// Unlabelled equations are called `eq1`, `eq2`, ...
pub fn parse_equation_file(text: &str, alpha: usize) -> Result<Vec<Equation>, ParseError> {
    file_with(text, alpha, None)
}

pub fn parse_equation_file_in(text: &str, sig: &Signature) -> Result<Vec<Equation>, ParseError> {
    file_with(text, sig.alpha, Some(sig.tag))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_instances() {
        let eq = parse_equation("s(0,1,c(0,x0)) = c(0,x0)", 3).unwrap();
        assert_eq!(eq.lhs, Term::s(0, 1, Term::c(0, Term::var(0))));
        assert_eq!(eq.rhs, Term::c(0, Term::var(0)));
        let t = parse_term("p(0,1,x0+-x1)", 3).unwrap();
        assert_eq!(
            t,
            Term::p(0, 1, Term::var(0).plus(Term::var(1).complement()))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        let t = parse_term("x0+x1*x2+-x0", 3).unwrap();
        let x = Term::var;
        assert_eq!(t, x(0).plus(x(1).times(x(2))).plus(x(0).complement()));
        let t = parse_term("-x0*x1", 3).unwrap();
        assert_eq!(t, x(0).complement().times(x(1)));
        let t = parse_term(" ( x0 + x1 ) * x2 ", 3).unwrap();
        assert_eq!(t, x(0).plus(x(1)).times(x(2)));
    }

    #[test]
    fn index_errors_carry_position() {
        assert_eq!(
            parse_term("c(3,x0)", 3),
            Err(ParseError::Index {
                line: 1,
                col: 3,
                index: 3,
                alpha: 3
            })
        );
        let err = parse_equation_file("x0 = x0\n\nc(0,x0) = d(0,7)", 3).unwrap_err();
        assert!(
            matches!(
                err,
                ParseError::Index {
                    line: 3,
                    col: 15,
                    ..
                }
            ),
            "{err}"
        );
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(
            parse_term("c(0,x0", 3),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_term("x0 x1", 3),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_term("x 0", 3),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_term("x12", 3),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_term("q(0,x0)", 3),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(parse_term("2", 3), Err(ParseError::Syntax { .. })));
        assert!(matches!(
            parse_term("ssub([0,1],x0)", 3),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_equation("x0", 3),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_term("x0 % x1", 3),
            Err(ParseError::Syntax { .. })
        ));
    }

    #[test]
    fn signature_errors() {
        let sig = Signature::new(SigTag::Csp, 3);
        assert!(parse_term_in("p(0,1,c(0,x0))", &sig).is_ok());
        let err = parse_term_in("x0*d(0,1)", &sig).unwrap_err();
        assert_eq!(
            err,
            ParseError::Signature {
                line: 1,
                col: 4,
                kind: "d".into(),
                sig: "csp".into()
            }
        );
    }

    #[test]
    fn index_lists() {
        assert_eq!(
            parse_term("cg({2,0,2},x0)", 3).unwrap(),
            Term::cg(&[0, 2], Term::var(0))
        );
        assert_eq!(
            parse_term("cg({},x0)", 3).unwrap(),
            Term::CylSet(vec![], Box::new(Term::var(0)))
        );
        let s = Transformation::from_map(&[0, 0, 1]).unwrap();
        assert_eq!(
            parse_term("ssub([0,0,1],x0)", 3).unwrap(),
            Term::ssub(s, Term::var(0))
        );
    }

    #[test]
    fn file_labels() {
        let text = "# F1[i=0]\nx0+c(0,x0) = c(0,x0)\n\nx0 = x0\n#\nx1 = x1\n";
        let eqs = parse_equation_file(text, 3).unwrap();
        let labels: Vec<_> = eqs.iter().map(|e| e.label.as_str()).collect();
        assert_eq!(labels, vec!["F1[i=0]", "eq2", "eq3"]);
    }
}
