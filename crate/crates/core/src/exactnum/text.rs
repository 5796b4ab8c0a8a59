//! Canonical text form `M:[c0,c1,...]` with each coefficient written `p/q`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{CycloNum, Rational};
use crate::error::{Error, Result};

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:[", self.order())?;
        for (i, c) in self.coeffs().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}/{}", c.numer(), c.denom())?;
        }
        f.write_str("]")
    }
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| Error::Parse(format!("bad numerator in {text:?}")))?;
    let d = BigInt::from_str(d).map_err(|_| Error::Parse(format!("bad denominator in {text:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(n, d))
}

pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl FromStr for CycloNum {
    type Err = Error;

    fn from_str(s: &str) -> Result<CycloNum> {
        let s = s.trim();
        let (order, rest) =
            s.split_once(':').ok_or_else(|| Error::Parse(format!("missing ':' in {s:?}")))?;
        let order: u32 = order.trim().parse().map_err(|_| Error::Parse(format!("bad conductor in {s:?}")))?;
        let body = rest
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("coefficients must be bracketed in {s:?}")))?;
        let coeffs: Vec<Rational> = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split(',').map(parse_rational).collect::<Result<_>>()?
        };
        CycloNum::from_coeffs(order, &coeffs)
    }
}

impl CycloNum {
    pub fn to_canonical_string(&self) -> String {
        self.to_string()
    }
}
