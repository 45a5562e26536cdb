use num_bigint::BigInt;
use num_traits::Zero;

use super::SeqExpr;
use crate::error::{Error, Result};
use crate::ratmath::Rational;

/// Parses the concrete expression syntax.
///
/// ```text
/// expr := term (('+' | '*' | '.') term)*     '.' binds tighter than '*', '*' tighter than '+'
/// term := arith(rat, rat) | geo(rat, rat) | fin[rat, ...] | star(expr)
///       | shift(rat, expr) | shuffle(expr, ...) | (expr)
/// rat  := integer ['/' positive-integer]
/// ```
pub fn parse(text: &str) -> Result<SeqExpr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.sum()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    fn sum(&mut self) -> Result<SeqExpr> {
        let mut e = self.hadamard()?;
        while self.eat(b'+') {
            e = SeqExpr::sum(e, self.hadamard()?);
        }
        Ok(e)
    }

    fn hadamard(&mut self) -> Result<SeqExpr> {
        let mut e = self.cauchy()?;
        while self.eat(b'*') {
            e = SeqExpr::hadamard(e, self.cauchy()?);
        }
        Ok(e)
    }

    fn cauchy(&mut self) -> Result<SeqExpr> {
        let mut e = self.term()?;
        while self.eat(b'.') {
            e = SeqExpr::cauchy(e, self.term()?);
        }
        Ok(e)
    }

    fn ident(&mut self) -> &str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii")
    }

    fn term(&mut self) -> Result<SeqExpr> {
        if self.eat(b'(') {
            let e = self.sum()?;
            self.expect(b')')?;
            return Ok(e);
        }
        let start = {
            self.skip_ws();
            self.pos
        };
        let name = self.ident().to_owned();
        match name.as_str() {
            "arith" | "geo" => {
                self.expect(b'(')?;
                let a = self.rational()?;
                self.expect(b',')?;
                let b = self.rational()?;
                self.expect(b')')?;
                Ok(if name == "arith" {
                    SeqExpr::arith(a, b)
                } else {
                    SeqExpr::geo(a, b)
                })
            }
            "fin" => {
                self.expect(b'[')?;
                let mut values = Vec::new();
                if !self.eat(b']') {
                    loop {
                        values.push(self.rational()?);
                        if self.eat(b']') {
                            break;
                        }
                        self.expect(b',')?;
                    }
                }
                Ok(SeqExpr::Fin(values))
            }
            "star" => {
                self.expect(b'(')?;
                let e = self.sum()?;
                self.expect(b')')?;
                Ok(SeqExpr::star(e))
            }
            "shift" => {
                self.expect(b'(')?;
                let a = self.rational()?;
                self.expect(b',')?;
                let e = self.sum()?;
                self.expect(b')')?;
                Ok(SeqExpr::shift(a, e))
            }
            "shuffle" => {
                self.expect(b'(')?;
                if self.eat(b')') {
                    return Err(Error::Arity(format!(
                        "shuffle at position {start} needs at least one child"
                    )));
                }
                let mut children = vec![self.sum()?];
                while self.eat(b',') {
                    children.push(self.sum()?);
                }
                self.expect(b')')?;
                Ok(SeqExpr::Shuffle(children))
            }
            "" => {
                self.pos = start;
                Err(self.error("expected a term"))
            }
            other => {
                let msg = format!("unknown constructor '{other}'");
                self.pos = start;
                Err(self.error(msg))
            }
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(s.parse().expect("digit string"))
    }

    fn rational(&mut self) -> Result<Rational> {
        self.skip_ws();
        let negative = self.src.get(self.pos) == Some(&b'-');
        if negative {
            self.pos += 1;
        }
        let mut num = self.digits()?;
        if negative {
            num = -num;
        }
        if self.eat(b'/') {
            self.skip_ws();
            let at = self.pos;
            let den = self.digits()?;
            if den.is_zero() {
                self.pos = at;
                return Err(self.error("zero denominator"));
            }
            return Ok(Rational::new(num, den));
        }
        Ok(Rational::from_integer(num))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmath::{int, rat};

    #[test]
    fn parses_examples() {
        assert_eq!(
            parse("geo(1, 2) + arith(0, 1)").unwrap(),
            SeqExpr::sum(SeqExpr::geo(int(1), int(2)), SeqExpr::arith(int(0), int(1)))
        );
        assert_eq!(
            parse("shift(7, fin[1, -1/2])").unwrap(),
            SeqExpr::shift(int(7), SeqExpr::fin(vec![int(1), rat(-1, 2)]))
        );
        assert_eq!(
            parse("star(shift(0, geo(1,1)))").unwrap(),
            SeqExpr::star(SeqExpr::shift(int(0), SeqExpr::geo(int(1), int(1))))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        let g = |l: i64| SeqExpr::geo(int(1), int(l));
        assert_eq!(
            parse("geo(1,1) + geo(1,2) * geo(1,3) . geo(1,4)").unwrap(),
            SeqExpr::sum(
                g(1),
                SeqExpr::hadamard(g(2), SeqExpr::cauchy(g(3), g(4)))
            )
        );
        assert_eq!(
            parse("geo(1,1) + geo(1,2) + geo(1,3)").unwrap(),
            SeqExpr::sum(SeqExpr::sum(g(1), g(2)), g(3))
        );
        assert_eq!(
            parse("(geo(1,1) + geo(1,2)) * geo(1,3)").unwrap(),
            SeqExpr::hadamard(SeqExpr::sum(g(1), g(2)), g(3))
        );
    }

    #[test]
    fn reports_errors() {
        assert!(matches!(parse("shuffle()"), Err(Error::Arity(_))));
        assert!(matches!(parse("geo(1, 2"), Err(Error::Parse { pos: 8, .. })));
        assert!(matches!(parse("geo(1, 2/0)"), Err(Error::Parse { pos: 9, .. })));
        assert!(matches!(parse("geo(1, 2/-3)"), Err(Error::Parse { .. })));
        assert!(matches!(parse("foo(1)"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse("geo(1,2) geo(1,2)"), Err(Error::Parse { pos: 9, .. })));
        assert!(matches!(parse(""), Err(Error::Parse { pos: 0, .. })));
    }

    #[test]
    fn print_then_parse_is_identity() {
        let cases = [
            "shuffle(geo(1, 2), shift(-3/4, arith(0, 1)))",
            "fin[]",
            "(geo(1, 2) + geo(1, 3)) . star(shift(0, geo(1, 1)))",
            "geo(1, 2) * (arith(1, 1) * geo(2, 2))",
        ];
        for c in cases {
            let e = parse(c).unwrap();
            assert_eq!(e.to_string(), c);
            assert_eq!(parse(&e.to_string()).unwrap(), e);
        }
    }
}
