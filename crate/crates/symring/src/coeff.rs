//! Scalar coefficients: Gaussian rationals in exact mode, complex floats in
//! the opt-in floating mode.
//!
//! Exact and floating values are never mixed silently; arithmetic between the
//! two modes panics. Floating mode exists for unit coefficients that are not
//! fourth roots of unity.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Tolerance for zero/equality predicates in floating mode.
pub const FLOAT_EPS: f64 = 1e-12;

#[derive(Clone, PartialEq)]
pub enum Coefficient {
    Exact { re: BigRational, im: BigRational },
    Float { re: f64, im: f64 },
}

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient::Exact {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        Coefficient::from_integer(1)
    }

    pub fn i() -> Self {
        Coefficient::Exact {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn from_integer(v: i64) -> Self {
        Coefficient::Exact {
            re: BigRational::from_integer(BigInt::from(v)),
            im: BigRational::zero(),
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Coefficient::Exact {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn gaussian(re: BigRational, im: BigRational) -> Self {
        Coefficient::Exact { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Coefficient::Exact {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn float(re: f64, im: f64) -> Self {
        Coefficient::Float { re, im }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Coefficient::Exact { .. })
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Exact { re, im } => re.is_zero() && im.is_zero(),
            Coefficient::Float { re, im } => re.abs() < FLOAT_EPS && im.abs() < FLOAT_EPS,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coefficient::Exact { re, im } => re.is_one() && im.is_zero(),
            Coefficient::Float { re, im } => (re - 1.0).abs() < FLOAT_EPS && im.abs() < FLOAT_EPS,
        }
    }

    pub fn is_real(&self) -> bool {
        match self {
            Coefficient::Exact { im, .. } => im.is_zero(),
            Coefficient::Float { im, .. } => im.abs() < FLOAT_EPS,
        }
    }

    /// Exact equality in exact mode, `FLOAT_EPS` comparison in floating mode.
    pub fn equals(&self, other: &Coefficient) -> bool {
        match (self, other) {
            (Coefficient::Exact { .. }, Coefficient::Exact { .. }) => self == other,
            _ => (self.clone() - other.clone()).is_zero(),
        }
    }

    pub fn conj(&self) -> Coefficient {
        match self {
            Coefficient::Exact { re, im } => Coefficient::Exact {
                re: re.clone(),
                im: -im.clone(),
            },
            Coefficient::Float { re, im } => Coefficient::Float { re: *re, im: -im },
        }
    }

    /// `|z|^2`, kept in the same mode as `z`.
    pub fn norm_sqr(&self) -> Coefficient {
        self.clone() * self.conj()
    }

    pub fn recip(&self) -> Coefficient {
        assert!(!self.is_zero(), "division by zero coefficient");
        match self {
            Coefficient::Exact { re, im } => {
                let d = re * re + im * im;
                Coefficient::Exact {
                    re: re / &d,
                    im: -im / &d,
                }
            }
            Coefficient::Float { re, im } => {
                let d = re * re + im * im;
                Coefficient::Float {
                    re: re / d,
                    im: -im / d,
                }
            }
        }
    }

    /// Multiplication by a machine integer, valid in either mode.
    pub fn mul_int(&self, k: i64) -> Coefficient {
        match self {
            Coefficient::Exact { re, im } => {
                let k = BigRational::from_integer(BigInt::from(k));
                Coefficient::Exact {
                    re: re * &k,
                    im: im * &k,
                }
            }
            Coefficient::Float { re, im } => Coefficient::Float {
                re: re * k as f64,
                im: im * k as f64,
            },
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        match self {
            Coefficient::Exact { re, im } => (rational_to_f64(re), rational_to_f64(im)),
            Coefficient::Float { re, im } => (*re, *im),
        }
    }

    /// Exact rational real/imaginary parts; errors in floating mode.
    pub fn exact_parts(&self) -> Result<(&BigRational, &BigRational)> {
        match self {
            Coefficient::Exact { re, im } => Ok((re, im)),
            Coefficient::Float { .. } => Err(Error::InvalidInput(
                "exact value required but coefficient is in floating mode".into(),
            )),
        }
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    let num = r.numer();
    let den = r.denom();
    // Good enough for display and float-mode fallbacks.
    let fnum: f64 = num.to_string().parse().unwrap_or(f64::NAN);
    let fden: f64 = den.to_string().parse().unwrap_or(f64::NAN);
    fnum / fden
}

macro_rules! mode_pair {
    ($a:expr, $b:expr) => {
        match ($a, $b) {
            (Coefficient::Exact { re: ar, im: ai }, Coefficient::Exact { re: br, im: bi }) => {
                Ok((ar, ai, br, bi))
            }
            (Coefficient::Float { .. }, Coefficient::Float { .. }) => Err(()),
            _ => panic!("exact and floating coefficients may not be mixed"),
        }
    };
}

impl Add for Coefficient {
    type Output = Coefficient;

    fn add(self, rhs: Coefficient) -> Coefficient {
        match mode_pair!(&self, &rhs) {
            Ok((ar, ai, br, bi)) => Coefficient::Exact {
                re: ar + br,
                im: ai + bi,
            },
            Err(()) => {
                let (ar, ai) = self.to_f64_pair();
                let (br, bi) = rhs.to_f64_pair();
                Coefficient::Float {
                    re: ar + br,
                    im: ai + bi,
                }
            }
        }
    }
}

impl Sub for Coefficient {
    type Output = Coefficient;

    fn sub(self, rhs: Coefficient) -> Coefficient {
        self + (-rhs)
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;

    fn neg(self) -> Coefficient {
        match self {
            Coefficient::Exact { re, im } => Coefficient::Exact { re: -re, im: -im },
            Coefficient::Float { re, im } => Coefficient::Float { re: -re, im: -im },
        }
    }
}

impl Mul for Coefficient {
    type Output = Coefficient;

    fn mul(self, rhs: Coefficient) -> Coefficient {
        match mode_pair!(&self, &rhs) {
            Ok((ar, ai, br, bi)) => Coefficient::Exact {
                re: ar * br - ai * bi,
                im: ar * bi + ai * br,
            },
            Err(()) => {
                let (ar, ai) = self.to_f64_pair();
                let (br, bi) = rhs.to_f64_pair();
                Coefficient::Float {
                    re: ar * br - ai * bi,
                    im: ar * bi + ai * br,
                }
            }
        }
    }
}

impl Div for Coefficient {
    type Output = Coefficient;

    fn div(self, rhs: Coefficient) -> Coefficient {
        let r = rhs.recip();
        self * r
    }
}

impl<'a> Add for &'a Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &'a Coefficient) -> Coefficient {
        self.clone() + rhs.clone()
    }
}

impl<'a> Sub for &'a Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &'a Coefficient) -> Coefficient {
        self.clone() - rhs.clone()
    }
}

impl<'a> Mul for &'a Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &'a Coefficient) -> Coefficient {
        self.clone() * rhs.clone()
    }
}

fn fmt_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("bad numerator `{num}`: {e}")))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("bad denominator `{den}`: {e}")))?;
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(BigRational::new(num, den))
    } else {
        let num: BigInt = s
            .parse()
            .map_err(|e| Error::Parse(format!("bad integer `{s}`: {e}")))?;
        Ok(BigRational::from_integer(num))
    }
}

impl fmt::Display for Coefficient {
    /// Canonical text form: `re_num/re_den` for real values,
    /// `re_num/re_den,im_num/im_den` otherwise; floating values as `~re,~im`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Exact { re, im } => {
                if im.is_zero() {
                    write!(f, "{}", fmt_rational(re))
                } else {
                    write!(f, "{},{}", fmt_rational(re), fmt_rational(im))
                }
            }
            Coefficient::Float { re, im } => write!(f, "~{re},~{im}"),
        }
    }
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Coefficient {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('~') {
            let parts: Vec<&str> = s.split(',').collect();
            let re: f64 = parts[0][1..]
                .parse()
                .map_err(|e| Error::Parse(format!("bad float `{s}`: {e}")))?;
            let im: f64 = if parts.len() > 1 {
                parts[1]
                    .trim_start_matches('~')
                    .parse()
                    .map_err(|e| Error::Parse(format!("bad float `{s}`: {e}")))?
            } else {
                0.0
            };
            return Ok(Coefficient::Float { re, im });
        }
        match s.split_once(',') {
            Some((re, im)) => Ok(Coefficient::Exact {
                re: parse_rational(re)?,
                im: parse_rational(im)?,
            }),
            None => Ok(Coefficient::Exact {
                re: parse_rational(s)?,
                im: BigRational::zero(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops_exact() {
        let a = Coefficient::from_ratio(1, 2) + Coefficient::i() * Coefficient::from_ratio(1, 3);
        let b = a.clone() * a.clone().recip();
        assert!(b.is_one());
        let c = a.clone() - a.clone();
        assert!(c.is_zero());
    }

    #[test]
    fn conjugation() {
        let a = Coefficient::from_ratio(2, 5) + Coefficient::i();
        let n = a.norm_sqr();
        assert_eq!(n, Coefficient::from_ratio(29, 25));
        assert!(n.is_real());
    }

    #[test]
    #[should_panic(expected = "may not be mixed")]
    fn mixing_modes_panics() {
        let _ = Coefficient::one() + Coefficient::float(1.0, 0.0);
    }

    #[test]
    fn text_roundtrip() {
        for s in ["1/2", "-3/4,1/1", "5/1", "0/1"] {
            let c: Coefficient = s.parse().unwrap();
            let again: Coefficient = c.to_string().parse().unwrap();
            assert_eq!(c, again);
        }
    }
}
