//! Recursive-descent parser for the term and polynomial surface syntax.
//!
//! Grammar (ASCII, whitespace-insensitive):
//!
//! ```text
//! term  := tens ("." tens)*
//! tens  := atom ("#" atom)*
//! atom  := IDENT | "id(" NAT ")" | "tau(" NAT "," NAT ")"
//!        | "tau_inv(" NAT "," NAT ")" | "(" term ")"
//! poly  := ["-"] scaled (("+" | "-") scaled)*
//! scaled := [RAT "*"] term
//! RAT   := NAT ["/" NAT]
//! ```
//!
//! `.` binds looser than `#`, and `f . g` means f after g. Every identifier
//! must name a generator of the supplied signature; arities are checked at
//! each composition with byte positions in errors.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::parse_rational;
use crate::signature::Signature;
use crate::term::Term;

/// Parses a term, arity-checking every composition.
///
/// ```
/// use omega_core::{parse_term, Signature};
///
/// let sig = Signature::new([("mu".into(), 2, 1)]).unwrap();
/// let t = parse_term("mu . (mu # id(1))", &sig).unwrap();
/// assert_eq!((t.dom(), t.cod()), (3, 1));
/// ```
pub fn parse_term(text: &str, sig: &Signature) -> Result<Term> {
    let mut p = Parser::new(text, sig);
    let t = p.term()?;
    p.expect_end()?;
    // Normalize, so a printed term parses back to its flattened form.
    Ok(t.flatten().into_term())
}

/// Parses a formal linear combination of terms sharing one (dom, cod) pair.
pub fn parse_polynomial(text: &str, sig: &Signature) -> Result<Polynomial> {
    let mut p = Parser::new(text, sig);
    let poly = p.polynomial()?;
    p.expect_end()?;
    Ok(poly)
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
    sig: &'a Signature,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, sig: &'a Signature) -> Self {
        Parser {
            text,
            bytes: text.as_bytes(),
            pos: 0,
            sig,
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
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
            Err(self.error(format!("expected `{}`", c as char)))
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        if self.peek().is_some() {
            Err(self.error("trailing input"))
        } else {
            Ok(())
        }
    }

    fn nat(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a number"));
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| self.error("number out of range"))
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphabetic() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
            while self.pos < self.bytes.len()
                && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
            {
                self.pos += 1;
            }
            Ok(self.text[start..self.pos].to_string())
        } else {
            Err(self.error("expected an identifier"))
        }
    }

    fn term(&mut self) -> Result<Term> {
        let mut factors = vec![self.tens()?];
        while self.eat(b'.') {
            factors.push(self.tens()?);
        }
        // Right-associate the chain; record the position for arity errors.
        let pos = self.pos;
        let mut it = factors.into_iter().rev();
        let mut acc = it.next().unwrap();
        for f in it {
            acc = Term::compose(f, acc).map_err(|e| Error::Syntax {
                position: pos,
                message: e.to_string(),
            })?;
        }
        Ok(acc)
    }

    fn tens(&mut self) -> Result<Term> {
        let mut acc = self.atom()?;
        while self.eat(b'#') {
            acc = Term::tensor(acc, self.atom()?);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Term> {
        if self.eat(b'(') {
            let t = self.term()?;
            self.expect(b')')?;
            return Ok(t);
        }
        let at = self.pos;
        let name = self.ident()?;
        match name.as_str() {
            "id" => {
                self.expect(b'(')?;
                let n = self.nat()?;
                self.expect(b')')?;
                Ok(Term::id(n))
            }
            "tau" | "tau_inv" => {
                self.expect(b'(')?;
                let m = self.nat()?;
                self.expect(b',')?;
                let n = self.nat()?;
                self.expect(b')')?;
                Ok(if name == "tau" {
                    Term::braid(m, n)
                } else {
                    Term::braid_inv(m, n)
                })
            }
            _ => match self.sig.lookup(&name) {
                Some(g) => Ok(Term::gen(&g.name, g.arity, g.coarity)),
                None => Err(Error::Syntax {
                    position: at,
                    message: format!("unknown generator `{name}`"),
                }),
            },
        }
    }

    fn polynomial(&mut self) -> Result<Polynomial> {
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            let _ = self.eat(b'+');
        }
        let (c, t) = self.scaled(negate)?;
        let mut poly = Polynomial::from_term_scaled(&c, t);
        while let Some(op) = self.peek() {
            if op != b'+' && op != b'-' {
                break;
            }
            self.pos += 1;
            let (c, t) = self.scaled(op == b'-')?;
            let next = Polynomial::from_term_scaled(&c, t);
            poly = poly.add(&next).map_err(|e| Error::Syntax {
                position: self.pos,
                message: e.to_string(),
            })?;
        }
        Ok(poly)
    }

    fn scaled(&mut self, negate: bool) -> Result<(BigRational, Term)> {
        let mut coeff = if let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                let save = self.pos;
                let lit = self.rational_literal()?;
                if self.eat(b'*') {
                    lit
                } else {
                    self.pos = save;
                    BigRational::from_integer(1.into())
                }
            } else {
                BigRational::from_integer(1.into())
            }
        } else {
            return Err(self.error("expected a term"));
        };
        if negate {
            coeff = -coeff;
        }
        Ok((coeff, self.term()?))
    }

    fn rational_literal(&mut self) -> Result<BigRational> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
        }
        parse_rational(&self.text[start..self.pos]).map_err(|e| Error::Syntax {
            position: start,
            message: e.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::hopf_signature;

    #[test]
    fn parses_identity() {
        let sig = Signature::empty();
        let t = parse_term("id(2)", &sig).unwrap();
        assert_eq!((t.dom(), t.cod()), (2, 2));
    }

    #[test]
    fn parses_composition_with_arities() {
        let sig = Signature::new([("mu".into(), 2, 1)]).unwrap();
        let t = parse_term("mu . (mu # id(1))", &sig).unwrap();
        assert_eq!((t.dom(), t.cod()), (3, 1));
    }

    #[test]
    fn parses_braid_pair() {
        let sig = Signature::empty();
        let t = parse_term("tau(1,2) . tau_inv(1,2)", &sig).unwrap();
        assert_eq!((t.dom(), t.cod()), (3, 3));
    }

    #[test]
    fn reports_unknown_generator() {
        let sig = Signature::empty();
        let err = parse_term("id(1) . frob", &sig).unwrap_err();
        assert!(err.to_string().contains("frob"), "{err}");
    }

    #[test]
    fn reports_arity_mismatch_with_position() {
        let sig = Signature::new([("mu".into(), 2, 1)]).unwrap();
        let err = parse_term("mu . mu . mu", &sig).unwrap_err();
        assert!(matches!(err, Error::Syntax { .. }), "{err}");
    }

    #[test]
    fn precedence_hash_over_dot() {
        let sig = hopf_signature();
        // mu . Delta # eps parses as mu . (Delta # eps): 2 -> 1.
        let t = parse_term("mu . Delta # eps", &sig).unwrap();
        assert_eq!((t.dom(), t.cod()), (2, 1));
    }

    #[test]
    fn parses_polynomial_with_coefficients() {
        let sig = hopf_signature();
        let p = parse_polynomial("mu . Delta - u . eps", &sig).unwrap();
        assert_eq!((p.dom(), p.cod()), (1, 1));
        assert_eq!(p.terms().len(), 2);
        let p = parse_polynomial("1/2 * id(2) - 1/2 * tau(1,1)", &sig).unwrap();
        assert_eq!(p.terms().len(), 2);
    }

    #[test]
    fn polynomial_rejects_mixed_arities() {
        let sig = hopf_signature();
        assert!(parse_polynomial("mu + eps", &sig).is_err());
    }
}
