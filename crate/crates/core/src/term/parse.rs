use super::Term;
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        if !self.src.get(self.pos).is_some_and(u8::is_ascii_lowercase) {
            return None;
        }
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || *c == b'_')
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .map_or_else(
                || {
                    self.pos = start;
                    self.err("expected an integer")
                },
                Ok,
            )
    }

    fn peek_is(&mut self, c: u8) -> bool {
        self.skip_ws();
        self.src.get(self.pos) == Some(&c)
    }

    fn term(&mut self) -> Result<Term> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&b'1') {
            self.pos += 1;
            return Ok(Term::One);
        }
        let start = self.pos;
        let Some(name) = self.ident() else {
            return self.err("expected a term");
        };
        if !self.peek_is(b'(') {
            return Ok(Term::Var(name.to_string()));
        }
        match name {
            "inv" => {
                self.expect(b'(')?;
                let t = self.term()?;
                self.expect(b')')?;
                Ok(Term::inv(t))
            }
            "mul" => {
                self.expect(b'(')?;
                let a = self.term()?;
                self.expect(b',')?;
                let b = self.term()?;
                self.expect(b')')?;
                Ok(Term::mul(a, b))
            }
            "pow" => {
                self.expect(b'(')?;
                let t = self.term()?;
                self.expect(b',')?;
                let a = self.int()?;
                self.expect(b')')?;
                Ok(Term::pow(t, a))
            }
            other => {
                self.pos = start;
                self.err(format!("unknown constructor `{other}`"))
            }
        }
    }
}

/// Parses a term; errors carry the byte offset of the failure.
pub fn parse_term(text: &str) -> Result<Term> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let t = p.term()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return p.err("trailing input");
    }
    Ok(t)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(
            parse_term("inv(mul(x,y))").unwrap(),
            Term::inv(Term::mul(Term::var("x"), Term::var("y")))
        );
        assert_eq!(parse_term("pow(x,-2)").unwrap(), Term::pow(Term::var("x"), -2));
        assert_eq!(parse_term(" mul ( x , 1 ) ").unwrap().to_string(), "mul(x,1)");
        assert_eq!(parse_term("x_1").unwrap(), Term::var("x_1"));
    }

    #[test]
    fn errors_carry_offsets() {
        assert!(matches!(parse_term("mul(x"), Err(Error::Syntax { offset: 5, .. })));
        assert!(matches!(parse_term("foo(x)"), Err(Error::Syntax { offset: 0, .. })));
        assert!(matches!(parse_term("pow(x,y)"), Err(Error::Syntax { offset: 6, .. })));
        assert!(matches!(parse_term("x y"), Err(Error::Syntax { offset: 2, .. })));
        assert!(parse_term("").is_err());
        assert!(parse_term("X").is_err());
    }

    pub(crate) fn arb_term() -> impl Strategy<Value = Term> {
        let leaf = prop_oneof![
            Just(Term::One),
            prop::sample::select(vec!["x", "y", "z"]).prop_map(Term::var),
        ];
        leaf.prop_recursive(5, 32, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Term::inv),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::mul(a, b)),
                (inner, -3i64..=3).prop_map(|(t, a)| Term::pow(t, a)),
            ]
        })
    }

    proptest! {
        #[test]
        fn printer_round_trips(t in arb_term()) {
            prop_assert_eq!(parse_term(&t.to_string()).unwrap(), t);
        }
    }
}
