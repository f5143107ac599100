//! Text form of Laurent polynomials: terms in descending exponent order,
//! `c*A^k` joined by ` + ` / ` - `, exponent 0 printed as the bare constant,
//! unit coefficients omitted. For example `A + 1 + A^-1`.

use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{LaurentPoly, RingError};

/// Display adapter printing a polynomial in a chosen variable name.
pub struct InVar<'a> {
    poly: &'a LaurentPoly,
    var: &'a str,
}

impl LaurentPoly {
    pub fn display_in<'a>(&'a self, var: &'a str) -> InVar<'a> {
        InVar { poly: self, var }
    }

    /// Parses the text form with the given variable name.
    pub fn parse_in(text: &str, var: &str) -> Result<Self, RingError> {
        parse(text, var)
    }
}

impl fmt::Display for InVar<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (i, (exp, c)) in self.poly.terms().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if exp == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            f.write_str(self.var)?;
            if exp != 1 {
                write!(f, "^{exp}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_in("A").fmt(f)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for LaurentPoly {
    type Err = RingError;
    fn from_str(s: &str) -> Result<Self, RingError> {
        parse(s, "A")
    }
}

fn parse(text: &str, var: &str) -> Result<LaurentPoly, RingError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(RingError::Parse("empty polynomial".into()));
    }
    // Split into signed terms; a sign directly after '^' belongs to the exponent.
    let mut out = LaurentPoly::zero();
    let mut start = 0;
    let bytes = compact.as_bytes();
    for i in 1..=bytes.len() {
        let boundary = i == bytes.len()
            || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^');
        if boundary {
            let (exp, c) = parse_term(&compact[start..i], var)?;
            out.add_term(exp, c);
            start = i;
        }
    }
    Ok(out)
}

fn parse_term(term: &str, var: &str) -> Result<(i64, BigInt), RingError> {
    let bad = || RingError::Parse(alloc::format!("malformed term `{term}`"));
    let (sign, body) = match term.as_bytes().first() {
        Some(b'-') => (-1, &term[1..]),
        Some(b'+') => (1, &term[1..]),
        _ => (1, term),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let (coeff_part, var_part) = match body.find(var) {
        None => (body, None),
        Some(pos) => {
            let coeff = &body[..pos];
            let coeff = match coeff.strip_suffix('*') {
                Some(c) if !c.is_empty() => c,
                Some(_) => return Err(bad()),
                None if coeff.is_empty() => "1",
                None => return Err(bad()),
            };
            (coeff, Some(&body[pos + var.len()..]))
        }
    };
    let c: BigInt = coeff_part.parse().map_err(|_| bad())?;
    let exp = match var_part {
        None => 0,
        Some("") => 1,
        Some(rest) => rest
            .strip_prefix('^')
            .and_then(|e| e.parse::<i64>().ok())
            .ok_or_else(bad)?,
    };
    Ok((exp, if sign < 0 { -c } else { c }))
}
