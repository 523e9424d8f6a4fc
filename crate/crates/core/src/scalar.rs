//! Exact Gaussian-rational scalars.
//!
//! `CScalar` is a complex number whose real and imaginary parts are
//! arbitrary-precision rationals. It is the coefficient field for every
//! symbolic object in this crate: all kernel computations are exact, floats
//! only appear in the numerical cross-checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

pub type Rational = BigRational;

/// Complex number with exact rational real and imaginary parts.
///
/// `num_rational::BigRational` keeps values in lowest terms with a positive
/// denominator, so equality of `CScalar` is exact structural equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CScalar {
    pub re: Rational,
    pub im: Rational,
}

impl CScalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        CScalar { re, im }
    }

    pub fn zero() -> Self {
        CScalar {
            re: Rational::zero(),
            im: Rational::zero(),
        }
    }

    pub fn one() -> Self {
        CScalar {
            re: Rational::one(),
            im: Rational::zero(),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        CScalar {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        CScalar {
            re: Rational::from_integer(BigInt::from(n)),
            im: Rational::zero(),
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        CScalar {
            re: r,
            im: Rational::zero(),
        }
    }

    /// Exact rational `p/q`.
    pub fn from_frac(p: i64, q: i64) -> Self {
        CScalar {
            re: Rational::new(BigInt::from(p), BigInt::from(q)),
            im: Rational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        CScalar {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// |z|^2 as an exact rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "division by zero CScalar");
        CScalar {
            re: &self.re / &n,
            im: -(&self.im / &n),
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    /// Exact rational strings (`"p/q"` or `"p"`), real then imaginary.
    pub fn to_strings(&self) -> (String, String) {
        (self.re.to_string(), self.im.to_string())
    }

    pub fn parse_parts(re: &str, im: &str) -> Result<Self, String> {
        let re = Rational::from_str(re).map_err(|e| format!("bad rational '{re}': {e}"))?;
        let im = Rational::from_str(im).map_err(|e| format!("bad rational '{im}': {e}"))?;
        Ok(CScalar { re, im })
    }
}

/// Lossy conversion used only at the boundary to the numerical modules.
pub fn rational_to_f64(r: &Rational) -> f64 {
    // Scale down huge numerators/denominators before converting.
    let numer = r.numer();
    let denom = r.denom();
    let nb = numer.bits() as i64;
    let db = denom.bits() as i64;
    let shift = (nb.max(db) - 900).max(0) as u64;
    if shift == 0 {
        let n = big_to_f64(numer);
        let d = big_to_f64(denom);
        n / d
    } else {
        let n = big_to_f64(&(numer >> shift));
        let d = big_to_f64(&(denom >> shift));
        n / d
    }
}

fn big_to_f64(b: &BigInt) -> f64 {
    // BigInt -> f64 via string is exact enough for <= ~300 digits; use the
    // built-in conversion which is correctly rounded.
    use num_traits::ToPrimitive;
    b.to_f64().unwrap_or(if b.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

impl fmt::Display for CScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}*i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}{}*i", self.re, self.im)
        } else {
            write!(f, "{}+{}*i", self.re, self.im)
        }
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl<'a, 'b> $trait<&'b CScalar> for &'a CScalar {
            type Output = CScalar;
            fn $method(self, rhs: &'b CScalar) -> CScalar {
                let $a = self;
                let $b = rhs;
                $body
            }
        }
        impl $trait<CScalar> for CScalar {
            type Output = CScalar;
            fn $method(self, rhs: CScalar) -> CScalar {
                (&self).$method(&rhs)
            }
        }
        impl<'b> $trait<&'b CScalar> for CScalar {
            type Output = CScalar;
            fn $method(self, rhs: &'b CScalar) -> CScalar {
                (&self).$method(rhs)
            }
        }
    };
}

impl_binop!(Add, add, |a, b| CScalar {
    re: &a.re + &b.re,
    im: &a.im + &b.im,
});
impl_binop!(Sub, sub, |a, b| CScalar {
    re: &a.re - &b.re,
    im: &a.im - &b.im,
});
impl_binop!(Mul, mul, |a, b| CScalar {
    re: &a.re * &b.re - &a.im * &b.im,
    im: &a.re * &b.im + &a.im * &b.re,
});
impl<'b> Div<&'b CScalar> for &CScalar {
    type Output = CScalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &'b CScalar) -> CScalar {
        self * &rhs.inv()
    }
}

impl Div<CScalar> for CScalar {
    type Output = CScalar;
    fn div(self, rhs: CScalar) -> CScalar {
        (&self).div(&rhs)
    }
}

impl<'b> Div<&'b CScalar> for CScalar {
    type Output = CScalar;
    fn div(self, rhs: &'b CScalar) -> CScalar {
        (&self).div(rhs)
    }
}

impl Neg for &CScalar {
    type Output = CScalar;
    fn neg(self) -> CScalar {
        CScalar {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl Neg for CScalar {
    type Output = CScalar;
    fn neg(self) -> CScalar {
        -&self
    }
}

impl AddAssign<&CScalar> for CScalar {
    fn add_assign(&mut self, rhs: &CScalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops_are_exact() {
        let a = CScalar::from_frac(1, 3);
        let b = CScalar::new(
            Rational::new(BigInt::from(2), BigInt::from(5)),
            Rational::new(BigInt::from(-1), BigInt::from(7)),
        );
        let prod = &a * &b;
        let back = &prod / &b;
        assert_eq!(back, a);
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = CScalar::i();
        assert_eq!(&i * &i, CScalar::from_int(-1));
    }

    #[test]
    fn division_by_complex() {
        // (1+i)/(1-i) = i
        let n = CScalar::new(Rational::one(), Rational::one());
        let d = CScalar::new(Rational::one(), -Rational::one());
        assert_eq!(&n / &d, CScalar::i());
    }

    #[test]
    fn parse_round_trip() {
        let z = CScalar::new(
            Rational::new(BigInt::from(-3), BigInt::from(4)),
            Rational::new(BigInt::from(5), BigInt::from(9)),
        );
        let (re, im) = z.to_strings();
        assert_eq!(re, "-3/4");
        assert_eq!(CScalar::parse_parts(&re, &im).unwrap(), z);
    }
}
