use num::{BigInt, BigRational, One, Zero};

use super::{Monomial, RationalPoly};
use crate::error::{Error, Result};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }
}

pub(super) fn parse_poly(s: &str, nvars: usize) -> Result<RationalPoly> {
    let mut cur = Cursor { src: s.as_bytes(), pos: 0 };
    let mut out = RationalPoly::zero(nvars);
    if cur.peek().is_none() {
        return cur.err("empty polynomial");
    }
    let mut first = true;
    loop {
        let sign = match cur.peek() {
            Some(b'+') => {
                cur.bump();
                BigRational::one()
            }
            Some(b'-') => {
                cur.bump();
                -BigRational::one()
            }
            None => break,
            Some(_) if first => BigRational::one(),
            Some(c) => return cur.err(format!("expected '+' or '-', found '{}'", c as char)),
        };
        first = false;
        let (m, c) = parse_term(&mut cur, nvars)?;
        out.add_term(m, sign * c);
    }
    Ok(out)
}

fn parse_term(cur: &mut Cursor<'_>, nvars: usize) -> Result<(Monomial, BigRational)> {
    let mut coeff = BigRational::one();
    let mut saw_any = false;
    if matches!(cur.peek(), Some(b) if b.is_ascii_digit()) {
        let num: BigInt = cur.digits()?.parse().expect("digits");
        let mut c = BigRational::from_integer(num);
        if cur.peek() == Some(b'/') {
            cur.bump();
            let den: BigInt = cur.digits()?.parse().expect("digits");
            if den.is_zero() {
                return cur.err("zero denominator");
            }
            c /= BigRational::from_integer(den);
        }
        coeff = c;
        saw_any = true;
    }
    let mut exps = vec![0u32; nvars];
    loop {
        match cur.peek() {
            Some(b'*') => {
                cur.bump();
                if cur.peek() != Some(b'x') {
                    return cur.err("expected variable after '*'");
                }
            }
            Some(b'x') => {}
            _ => break,
        }
        cur.bump();
        let idx: usize = cur
            .digits()?
            .parse()
            .map_err(|_| Error::Parse { pos: cur.pos, msg: "variable index too large".into() })?;
        if idx >= nvars {
            return cur.err(format!("variable x{idx} out of range for {nvars} variables"));
        }
        let mut e = 1u32;
        if cur.peek() == Some(b'^') {
            cur.bump();
            e = cur
                .digits()?
                .parse()
                .map_err(|_| Error::Parse { pos: cur.pos, msg: "exponent too large".into() })?;
        }
        exps[idx] += e;
        saw_any = true;
    }
    if !saw_any {
        return cur.err("expected a term");
    }
    Ok((Monomial::new(exps), coeff))
}

#[cfg(test)]
mod tests {
    use super::super::{rat, ratio};
    use super::*;

    #[test]
    fn accepts_implicit_products_and_exponents() {
        let a = parse_poly("3x0^2x1 - x2", 3).unwrap();
        let b = parse_poly("3*x0^2*x1^1 + -1*x2", 3);
        // "+ -" is not part of the grammar
        assert!(b.is_err());
        let b = parse_poly("3*x0^2*x1^1 - 1*x2^1", 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rational_coefficients() {
        let a = parse_poly("1/2*x0 + 2/4*x0", 1).unwrap();
        assert_eq!(a.coefficient(&Monomial::new(vec![1])), rat(1));
        let c = parse_poly("-7/3", 2).unwrap();
        assert_eq!(c.coefficient(&Monomial::one(2)), ratio(-7, 3));
    }

    #[test]
    fn repeated_variables_multiply() {
        let a = parse_poly("x0*x0*x1", 2).unwrap();
        assert_eq!(a, parse_poly("x0^2*x1", 2).unwrap());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly("", 2).is_err());
        assert!(parse_poly("x3", 2).is_err());
        assert!(parse_poly("2 x0 x", 2).is_err());
        assert!(parse_poly("1/0", 2).is_err());
        assert!(parse_poly("x0 +", 2).is_err());
        assert!(parse_poly("y0", 2).is_err());
    }

    #[test]
    fn print_parse_round_trip() {
        let s = "x0^3 - 5/7*x0*x1*x2 + 2*x2^3";
        let a = parse_poly(s, 3).unwrap();
        assert_eq!(parse_poly(&a.to_string(), 3).unwrap(), a);
    }
}
