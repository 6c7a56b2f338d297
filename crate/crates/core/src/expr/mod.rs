//! Words in the generators with Laurent coefficients.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := '-' unary | power
//! power := atom ('^' '-'? INT)?
//! atom  := INT | v | [2] | alpha | E<i> | u | '(' expr ')'
//! ```

mod lexer;

use std::fmt;

use lexer::{syntax, tokenize, Spanned, Tok};

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::scalars::{Ring, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(u64),
    V,
    Two,
    Alpha,
    Gen(usize),
    U,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

pub fn parse(text: &str) -> Result<Expr> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    let t = p.peek();
    if t.tok != Tok::End {
        return Err(syntax(
            t.line,
            t.column,
            format!("unexpected {}", t.tok.describe()),
        ));
    }
    Ok(e)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.next();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.next();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.peek().tok == Tok::Star {
            self.next();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek().tok == Tok::Minus {
            self.next();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.next();
        let negative = self.peek().tok == Tok::Minus;
        if negative {
            self.next();
        }
        let t = self.next();
        let Tok::Int(k) = t.tok else {
            return Err(syntax(
                t.line,
                t.column,
                format!("expected an integer exponent, found {}", t.tok.describe()),
            ));
        };
        let k = i64::try_from(k).map_err(|_| syntax(t.line, t.column, "exponent is too large"))?;
        Ok(Expr::Pow(Box::new(base), if negative { -k } else { k }))
    }

    fn atom(&mut self) -> Result<Expr> {
        let t = self.next();
        Ok(match t.tok {
            Tok::Int(k) => Expr::Int(k),
            Tok::V => Expr::V,
            Tok::Two => Expr::Two,
            Tok::Alpha => Expr::Alpha,
            Tok::Gen(i) => Expr::Gen(i),
            Tok::U => Expr::U,
            Tok::LParen => {
                let e = self.expr()?;
                let close = self.next();
                if close.tok != Tok::RParen {
                    return Err(syntax(
                        close.line,
                        close.column,
                        format!("expected ')', found {}", close.tok.describe()),
                    ));
                }
                e
            }
            other => {
                return Err(syntax(
                    t.line,
                    t.column,
                    format!("unexpected {}", other.describe()),
                ))
            }
        })
    }
}

impl Expr {
    fn level(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            f.write_str("(")?;
            self.write_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Expr::Int(k) => write!(f, "{k}"),
            Expr::V => f.write_str("v"),
            Expr::Two => f.write_str("[2]"),
            Expr::Alpha => f.write_str("alpha"),
            Expr::Gen(i) => write!(f, "E{i}"),
            Expr::U => f.write_str("u"),
            Expr::Neg(a) => {
                f.write_str("-")?;
                a.write_at(f, 3)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write_at(f, 1)?;
                f.write_str(if matches!(self, Expr::Add(..)) {
                    " + "
                } else {
                    " - "
                })?;
                b.write_at(f, 2)
            }
            Expr::Mul(a, b) => {
                a.write_at(f, 2)?;
                f.write_str("*")?;
                b.write_at(f, 3)
            }
            Expr::Pow(a, k) => {
                a.write_at(f, 5)?;
                write!(f, "^{k}")
            }
        }
    }

    /// Evaluates in the diagram algebra of rank `n` over `ring`.
    pub fn eval(&self, n: usize, ring: Ring) -> Result<AlgebraElement> {
        let scalar = |c: Scalar| AlgebraElement::scalar(n, c);
        Ok(match self {
            Expr::Int(k) => {
                let k = i64::try_from(*k)
                    .map_err(|_| Error::Eval(format!("integer {k} is too large")))?;
                scalar(Scalar::from_int(ring, k))
            }
            Expr::V => scalar(Scalar::v(ring)),
            Expr::Two => scalar(Scalar::two(ring)),
            Expr::Alpha => scalar(Scalar::alpha(ring)?),
            Expr::Gen(i) => {
                if *i == 0 || *i > n {
                    return Err(Error::IndexOutOfRange {
                        index: *i as i64,
                        lo: 1,
                        hi: n as i64,
                    });
                }
                AlgebraElement::e(n, *i, ring)?
            }
            Expr::U => AlgebraElement::u_pow(n, 1, ring),
            Expr::Neg(a) => a.eval(n, ring)?.neg(),
            Expr::Add(a, b) => a.eval(n, ring)?.add(&b.eval(n, ring)?)?,
            Expr::Sub(a, b) => a.eval(n, ring)?.sub(&b.eval(n, ring)?)?,
            Expr::Mul(a, b) => a.eval(n, ring)?.mul(&b.eval(n, ring)?)?,
            Expr::Pow(a, k) => {
                let x = a.eval(n, ring)?;
                if *k < 0 {
                    x.inverse()
                        .map_err(|_| {
                            Error::Eval(format!("{a} is not invertible, so ^{k} is undefined"))
                        })?
                        .pow(-k)?
                } else {
                    x.pow(*k)?
                }
            }
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

/// Parses and evaluates `text`.
pub fn evaluate(text: &str, n: usize, ring: Ring) -> Result<AlgebraElement> {
    parse(text)?.eval(n, ring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Diagram;

    fn b(e: Expr) -> Box<Expr> {
        Box::new(e)
    }

    #[test]
    fn trees() {
        assert_eq!(
            parse("E1*E2*E1").unwrap(),
            Expr::Mul(
                b(Expr::Mul(b(Expr::Gen(1)), b(Expr::Gen(2)))),
                b(Expr::Gen(1))
            )
        );
        assert_eq!(
            parse("[2]*E1 - E1^2").unwrap(),
            Expr::Sub(
                b(Expr::Mul(b(Expr::Two), b(Expr::Gen(1)))),
                b(Expr::Pow(b(Expr::Gen(1)), 2))
            )
        );
        assert_eq!(
            parse("u^-1 * E1 * u").unwrap(),
            Expr::Mul(
                b(Expr::Mul(b(Expr::Pow(b(Expr::U), -1)), b(Expr::Gen(1)))),
                b(Expr::U)
            )
        );
        assert_eq!(
            parse("-E1^2").unwrap(),
            Expr::Neg(b(Expr::Pow(b(Expr::Gen(1)), 2)))
        );
    }

    #[test]
    fn printing() {
        for s in [
            "E1*E2*E1",
            "[2]*E1 - E1^2",
            "u^-1*E1*u",
            "E1 - (E2 - E3)",
            "(E1 + E2)^2",
            "-(E1 + 1)*v^-2",
            "(u^2)^3",
        ] {
            let e = parse(s).unwrap();
            assert_eq!(e.to_string(), s);
            assert_eq!(parse(&e.to_string()).unwrap(), e);
        }
        assert_eq!(parse(" ( E1 )*( E2 )").unwrap().to_string(), "E1*E2");
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(
            parse("E1 +"),
            Err(Error::Syntax {
                line: 1,
                column: 5,
                ..
            })
        ));
        assert!(matches!(
            parse("(E1"),
            Err(Error::Syntax {
                line: 1,
                column: 4,
                ..
            })
        ));
        assert!(matches!(
            parse("E1\n  * )"),
            Err(Error::Syntax {
                line: 2,
                column: 5,
                ..
            })
        ));
        assert!(matches!(
            parse("E1^v"),
            Err(Error::Syntax { column: 4, .. })
        ));
        assert!(matches!(
            parse("E1 E2"),
            Err(Error::Syntax { column: 4, .. })
        ));
    }

    #[test]
    fn evaluation() {
        let r = Ring::integer();
        assert!(evaluate("[2]*E1 - E1^2", 4, r).unwrap().is_zero());
        assert_eq!(
            evaluate("E1*E2*E1", 4, r).unwrap(),
            evaluate("E1", 4, r).unwrap()
        );
        assert_eq!(
            evaluate("u^-1*E1*u", 4, r).unwrap(),
            evaluate("E4", 4, r).unwrap()
        );
        let u4 = evaluate("u^4", 4, r).unwrap();
        assert_eq!(u4.as_diagram().unwrap(), &Diagram::u_pow(4, 4));
        assert_eq!(
            evaluate("(v + v^-1) - [2]", 3, r).unwrap(),
            AlgebraElement::zero(3, r)
        );
    }

    #[test]
    fn evaluation_errors() {
        let r = Ring::integer();
        assert!(matches!(
            evaluate("E5", 4, r),
            Err(Error::IndexOutOfRange { index: 5, .. })
        ));
        assert!(matches!(
            evaluate("E0", 4, r),
            Err(Error::IndexOutOfRange { index: 0, .. })
        ));
        assert!(matches!(evaluate("alpha*E1", 4, r), Err(Error::NoAlpha(_))));
        assert!(matches!(evaluate("E1^-1", 4, r), Err(Error::Eval(_))));
        assert!(evaluate("alpha*E1", 4, Ring::integer_alpha()).is_ok());
    }
}
