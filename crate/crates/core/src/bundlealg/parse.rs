//! Lexer and recursive-descent parser for bundle expressions.
//!
//! ```text
//! expr   := term { "(+)" term } ;
//! term   := factor { "(x)" factor } ;
//! factor := atom | "S^" INT "(" expr ")" | "Wedge^" INT "(" expr ")"
//!         | "Dual(" expr ")" | "End0(" expr ")" | "det(" expr ")" | "pr(" expr ")"
//!         | "Gamma(" INT {"," INT} ")(" expr ")" | "(" expr ")" ;
//! atom   := "Omega1" | "Omega" INT | "L^" SINT | "O" | "E1" | "E2" | "V" | "U(" INT ")" ;
//! ```

use std::fmt;

use super::expr::BundleExpr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lex,
    Syntax,
    Arity,
    UnknownIdentifier,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ParseErrorKind::Lex => "lex",
            ParseErrorKind::Syntax => "syntax",
            ParseErrorKind::Arity => "arity",
            ParseErrorKind::UnknownIdentifier => "unknown-identifier",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Byte offset into the source.
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} error at byte {}: {}", self.kind, self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Plus,
    Times,
    LParen,
    RParen,
    Comma,
    Caret,
    Minus,
    Int(u64),
    Ident(String),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Plus => f.write_str("'(+)'"),
            Tok::Times => f.write_str("'(x)'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Comma => f.write_str("','"),
            Tok::Caret => f.write_str("'^'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Int(v) => write!(f, "integer {v}"),
            Tok::Ident(s) => write!(f, "identifier '{s}'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'(' if src[i..].starts_with("(+)") => {
                i += 3;
                Tok::Plus
            }
            b'(' if src[i..].starts_with("(x)") => {
                i += 3;
                Tok::Times
            }
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            b',' => {
                i += 1;
                Tok::Comma
            }
            b'^' => {
                i += 1;
                Tok::Caret
            }
            b'-' => {
                i += 1;
                Tok::Minus
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v = src[start..i].parse::<u64>().map_err(|_| ParseError {
                    kind: ParseErrorKind::Lex,
                    offset: start,
                    message: format!("integer literal '{}' out of range", &src[start..i]),
                })?;
                Tok::Int(v)
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                Tok::Ident(src[start..i].to_string())
            }
            _ => {
                let ch = src[i..].chars().next().unwrap();
                return Err(ParseError {
                    kind: ParseErrorKind::Lex,
                    offset: start,
                    message: format!("unexpected character {ch:?}"),
                });
            }
        };
        out.push((tok, start));
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, kind: ParseErrorKind, message: String) -> ParseError {
        ParseError { kind, offset: self.offset(), message }
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.err(ParseErrorKind::Syntax, format!("expected {t}, found {}", self.peek())))
        }
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(v)
            }
            t => Err(self.err(ParseErrorKind::Syntax, format!("expected integer, found {t}"))),
        }
    }

    fn small_int(&mut self) -> Result<u32, ParseError> {
        let off = self.offset();
        let v = self.int()?;
        u32::try_from(v).map_err(|_| ParseError {
            kind: ParseErrorKind::Lex,
            offset: off,
            message: format!("integer {v} too large"),
        })
    }

    fn signed_int(&mut self) -> Result<i64, ParseError> {
        let off = self.offset();
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let v = self.int()?;
        let v = i64::try_from(v).map_err(|_| ParseError {
            kind: ParseErrorKind::Lex,
            offset: off,
            message: format!("exponent {v} too large"),
        })?;
        Ok(if neg { -v } else { v })
    }

    fn expr(&mut self) -> Result<BundleExpr, ParseError> {
        let mut lhs = self.term()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            let rhs = self.term()?;
            lhs = BundleExpr::sum(lhs, rhs);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<BundleExpr, ParseError> {
        let mut lhs = self.factor()?;
        while *self.peek() == Tok::Times {
            self.bump();
            let rhs = self.factor()?;
            lhs = BundleExpr::tensor(lhs, rhs);
        }
        Ok(lhs)
    }

    /// `"(" expr ")"` as the single argument of a functor.
    fn argument(&mut self, name: &str) -> Result<BundleExpr, ParseError> {
        self.expect(Tok::LParen)?;
        if *self.peek() == Tok::RParen {
            return Err(self.err(ParseErrorKind::Arity, format!("{name} takes one argument, found none")));
        }
        let e = self.expr()?;
        if *self.peek() == Tok::Comma {
            return Err(self.err(ParseErrorKind::Arity, format!("{name} takes one argument")));
        }
        self.expect(Tok::RParen)?;
        Ok(e)
    }

    fn factor(&mut self) -> Result<BundleExpr, ParseError> {
        let (tok, off) = self.bump();
        match tok {
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => self.named(&name, off),
            t => Err(ParseError {
                kind: ParseErrorKind::Syntax,
                offset: off,
                message: format!("expected a bundle, found {t}"),
            }),
        }
    }

    fn named(&mut self, name: &str, off: usize) -> Result<BundleExpr, ParseError> {
        match name {
            "O" => Ok(BundleExpr::Trivial),
            "E1" => Ok(BundleExpr::E1),
            "E2" => Ok(BundleExpr::E2),
            "V" => Ok(BundleExpr::V),
            "L" => {
                self.expect(Tok::Caret)?;
                Ok(BundleExpr::LPow(self.signed_int()?))
            }
            "U" => {
                self.expect(Tok::LParen)?;
                if *self.peek() == Tok::RParen {
                    return Err(self.err(ParseErrorKind::Arity, "U takes one rank argument".into()));
                }
                let r = self.int()?;
                self.expect(Tok::RParen)?;
                Ok(BundleExpr::Unitary(r))
            }
            "S" | "Wedge" => {
                self.expect(Tok::Caret)?;
                let k = self.small_int()?;
                let a = self.argument(name)?;
                Ok(if name == "S" { BundleExpr::sym(k, a) } else { BundleExpr::wedge(k, a) })
            }
            "Dual" => Ok(BundleExpr::dual(self.argument(name)?)),
            "End0" => Ok(BundleExpr::end0(self.argument(name)?)),
            "det" => Ok(BundleExpr::det(self.argument(name)?)),
            "pr" => Ok(BundleExpr::primitive(self.argument(name)?)),
            "Gamma" => {
                self.expect(Tok::LParen)?;
                if *self.peek() == Tok::RParen {
                    return Err(self.err(ParseErrorKind::Arity, "Gamma needs at least one parameter".into()));
                }
                let mut params = vec![self.small_int()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    params.push(self.small_int()?);
                }
                self.expect(Tok::RParen)?;
                let a = self.argument(name)?;
                Ok(BundleExpr::gamma(params, a))
            }
            "Omega" => Ok(BundleExpr::Omega(self.small_int()?)),
            _ => {
                if let Some(k) = name.strip_prefix("Omega") {
                    if let Ok(k) = k.parse::<u32>() {
                        return Ok(BundleExpr::Omega(k));
                    }
                }
                Err(ParseError {
                    kind: ParseErrorKind::UnknownIdentifier,
                    offset: off,
                    message: format!("unknown identifier '{name}'"),
                })
            }
        }
    }
}

/// Parses a bundle expression.
pub fn parse_expr(src: &str) -> Result<BundleExpr, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.err(ParseErrorKind::Syntax, format!("unexpected {} after expression", p.peek())));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use BundleExpr as B;

    #[test]
    fn examples() {
        assert_eq!(
            parse_expr("S^2(Omega1) (x) L^-1").unwrap(),
            B::tensor(B::sym(2, B::Omega(1)), B::LPow(-1))
        );
        assert_eq!(
            parse_expr("pr(Wedge^3(E1 (+) E2))").unwrap(),
            B::primitive(B::wedge(3, B::sum(B::E1, B::E2)))
        );
        assert_eq!(
            parse_expr("Gamma(1,2)(Omega1) (x) L^-6").unwrap(),
            B::tensor(B::gamma(vec![1, 2], B::Omega(1)), B::LPow(-6))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        let e = parse_expr("O (+) Omega1 (x) L^2 (x) Omega2 (+) U(3)").unwrap();
        let want = B::sum(
            B::sum(B::Trivial, B::tensor(B::tensor(B::Omega(1), B::LPow(2)), B::Omega(2))),
            B::Unitary(3),
        );
        assert_eq!(e, want);
        assert_eq!(parse_expr("Omega 3").unwrap(), B::Omega(3));
        assert_eq!(parse_expr("(V)").unwrap(), B::V);
    }

    #[test]
    fn error_offsets() {
        let e = parse_expr("S^2(Omega1) (x) Foo").unwrap_err();
        assert_eq!((e.kind, e.offset), (ParseErrorKind::UnknownIdentifier, 16));
        let e = parse_expr("L^-1 $").unwrap_err();
        assert_eq!((e.kind, e.offset), (ParseErrorKind::Lex, 5));
        let e = parse_expr("Dual(E1, E2)").unwrap_err();
        assert_eq!((e.kind, e.offset), (ParseErrorKind::Arity, 7));
        let e = parse_expr("S^2 Omega1").unwrap_err();
        assert_eq!((e.kind, e.offset), (ParseErrorKind::Syntax, 4));
        let e = parse_expr("E1 E2").unwrap_err();
        assert_eq!((e.kind, e.offset), (ParseErrorKind::Syntax, 3));
        let e = parse_expr("Gamma()(Omega1)").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Arity);
        let e = parse_expr("").unwrap_err();
        assert_eq!((e.kind, e.offset), (ParseErrorKind::Syntax, 0));
    }
}
