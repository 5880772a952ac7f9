//! Integer Laurent polynomials in `v`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Dense coefficients starting at exponent `low`. The zero polynomial has no
/// coefficients; otherwise the first and last coefficients are nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, 1)
    }

    /// The polynomial `v`.
    pub fn v() -> Self {
        LaurentPoly::monomial(1, 1)
    }

    pub fn monomial(exp: i32, coeff: i64) -> Self {
        if coeff == 0 {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            low: exp,
            coeffs: vec![coeff],
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn normalize(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead == self.coeffs.len() {
            return LaurentPoly::zero();
        }
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i32;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs == [1]
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        let k = exp - self.low;
        if k < 0 {
            return 0;
        }
        self.coeffs.get(k as usize).copied().unwrap_or(0)
    }

    pub fn min_degree(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_degree(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    /// Nonzero terms `(exponent, coefficient)` in increasing exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (self.low + k as i32, c))
    }

    pub fn add_term(&mut self, exp: i32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        if self.is_zero() {
            *self = LaurentPoly::monomial(exp, coeff);
            return;
        }
        if exp < self.low {
            let pad = (self.low - exp) as usize;
            self.coeffs.splice(0..0, std::iter::repeat_n(0, pad));
            self.low = exp;
        }
        let k = (exp - self.low) as usize;
        if k >= self.coeffs.len() {
            self.coeffs.resize(k + 1, 0);
        }
        self.coeffs[k] += coeff;
        if self.coeffs[k] == 0 {
            *self = std::mem::take(self).normalize();
        }
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// `p(v^{-1})`.
    pub fn bar(&self) -> Self {
        match self.max_degree() {
            None => LaurentPoly::zero(),
            Some(top) => LaurentPoly {
                low: -top,
                coeffs: self.coeffs.iter().rev().copied().collect(),
            },
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// `p'(1)`.
    pub fn derivative_at_one(&self) -> i64 {
        self.terms().map(|(e, c)| e as i64 * c).sum()
    }

    /// Non-negative coefficients and no negative exponents.
    pub fn in_n0_v(&self) -> bool {
        self.is_zero() || (self.low >= 0 && self.coeffs.iter().all(|&c| c >= 0))
    }

    /// Every term has positive degree.
    pub fn in_v_z_v(&self) -> bool {
        self.is_zero() || self.low >= 1
    }

    /// Bar-invariant with a non-negative expansion in powers of `v + v^{-1}`.
    pub fn in_n0_sym(&self) -> bool {
        if !self.is_bar_invariant() {
            return false;
        }
        let mut rest = self.clone();
        while let Some(top) = rest.max_degree() {
            let c = rest.coeff(top);
            if c < 0 {
                return false;
            }
            rest = &rest - &symmetric_power(top as u32).scale(c);
        }
        true
    }

    /// The bar-invariant polynomial agreeing with `self` in degrees `<= 0`.
    pub fn symmetric_lower_part(&self) -> Self {
        let mut out = LaurentPoly::zero();
        for (e, c) in self.terms().filter(|&(e, _)| e <= 0) {
            out.add_term(e, c);
            if e < 0 {
                out.add_term(-e, c);
            }
        }
        out
    }

    /// Exact division; errors when a remainder is left.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<Self> {
        let (dlow, dtop) = match (divisor.min_degree(), divisor.max_degree()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::NonExactDivision),
        };
        let lead = divisor.coeff(dtop);
        let mut rest = self.clone();
        let mut quotient = LaurentPoly::zero();
        while let Some(top) = rest.max_degree() {
            let low = rest.low;
            if top - low < dtop - dlow {
                return Err(Error::NonExactDivision);
            }
            let c = rest.coeff(top);
            if c % lead != 0 {
                return Err(Error::NonExactDivision);
            }
            let term = LaurentPoly::monomial(top - dtop, c / lead);
            rest = &rest - &(&term * divisor);
            quotient += &term;
        }
        Ok(quotient)
    }
}

/// `(v + v^{-1})^k`.
fn symmetric_power(k: u32) -> LaurentPoly {
    let base = LaurentPoly::from_terms([(-1, 1), (1, 1)]);
    (0..k).fold(LaurentPoly::one(), |acc, _| &acc * &base)
}

/// The quantum integer `[a] = v^{a-1} + v^{a-3} + ... + v^{1-a}`.
pub fn quantum_int(a: u32) -> LaurentPoly {
    let a = a as i32;
    LaurentPoly::from_terms((0..a).map(|j| (a - 1 - 2 * j, 1)))
}

/// `[a]! = [1][2]...[a]`.
pub fn quantum_factorial(a: u32) -> LaurentPoly {
    (1..=a).fold(LaurentPoly::one(), |acc, j| &acc * &quantum_int(j))
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        if rhs.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = rhs.clone();
            return;
        }
        let low = self.low.min(rhs.low);
        let top = self.max_degree().unwrap().max(rhs.max_degree().unwrap());
        let mut coeffs = vec![0i64; (top - low + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.low - low) as usize + k] += c;
        }
        *self = LaurentPoly { low, coeffs }.normalize();
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self += &-rhs;
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly {
            low: self.low + rhs.low,
            coeffs,
        }
        .normalize()
    }
}

impl fmt::Display for LaurentPoly {
    /// Terms in increasing degree: `0`, `v`, `3v^2`, `v^-1+1+v`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            if c < 0 {
                f.write_str("-")?;
            } else if k > 0 {
                f.write_str("+")?;
            }
            let a = c.unsigned_abs();
            match (e, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => {}
                _ => write!(f, "{a}")?,
            }
            match e {
                0 => {}
                1 => f.write_str("v")?,
                _ => write!(f, "v^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Parses the display form, e.g. `3v^2`, `v^-1+1+v`, `-2v`.
    fn from_str(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |offset: usize, message: &str| Error::Syntax {
            offset,
            message: message.to_string(),
        };
        if text.is_empty() {
            return Err(err(0, "empty polynomial"));
        }
        let bytes = text.as_bytes();
        let mut out = LaurentPoly::zero();
        let mut i = 0;
        while i < bytes.len() {
            let start = i;
            let mut sign = 1i64;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = -1;
                }
                i += 1;
            } else if start > 0 {
                return Err(err(i, "expected '+' or '-'"));
            }
            let digits = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let coeff: Option<i64> = if i > digits {
                Some(
                    text[digits..i]
                        .parse()
                        .map_err(|_| err(digits, "coefficient out of range"))?,
                )
            } else {
                None
            };
            let exp = if i < bytes.len() && bytes[i] == b'v' {
                i += 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let es = i;
                    if i < bytes.len() && bytes[i] == b'-' {
                        i += 1;
                    }
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    text[es..i]
                        .parse::<i32>()
                        .map_err(|_| err(es, "expected an exponent"))?
                } else {
                    1
                }
            } else {
                if coeff.is_none() {
                    return Err(err(digits, "expected a term"));
                }
                0
            };
            out.add_term(exp, sign * coeff.unwrap_or(1));
        }
        Ok(out)
    }
}
