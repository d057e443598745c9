//! Exact scalar fields: the rationals and the Gaussian rationals.
//!
//! Every computation in this crate is a polynomial identity in structure
//! constants, so exact subfields of the reals/complexes suffice and no
//! tolerance ever appears. Inputs that would require irrational coefficients
//! are out of scope.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision rational number, the field ℚ.
pub type Rational = num_rational::BigRational;

/// An exact field with conjugation, suitable as a ground field for all
/// linear algebra in this crate. Conjugation is the identity on ℚ and
/// complex conjugation on ℚ(i).
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
    + Send
    + Sync
    + 'static
{
    /// Short name used in error messages and file headers ("Q" or "Qi").
    const NAME: &'static str;

    fn from_int(n: i64) -> Self;

    fn conjugate(&self) -> Self;

    /// A square root of −1, when the field has one.
    fn imaginary_unit() -> Option<Self>;

    /// Returns the value as a rational if it lies in the real subfield.
    fn to_rational(&self) -> Option<Rational>;

    /// All field elements with integer coordinates in `[−bound, bound]`:
    /// the integers for ℚ, the Gaussian integers for ℚ(i).
    fn grid_values(bound: i64) -> Vec<Self>;

    /// Parses the textual form produced by `Display`.
    fn parse(s: &str) -> Result<Self, Error>;
}

fn parse_rational_term(s: &str, field: &'static str) -> Result<Rational, Error> {
    let err = || Error::ParseScalar {
        input: s.to_string(),
        field,
    };
    let mut parts = s.splitn(2, '/');
    let num: BigInt = parts.next().ok_or_else(err)?.parse().map_err(|_| err())?;
    match parts.next() {
        None => Ok(Rational::from_integer(num)),
        Some(d) => {
            let den: BigInt = d.parse().map_err(|_| err())?;
            if den.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(num, den))
        }
    }
}

impl Field for Rational {
    const NAME: &'static str = "Q";

    fn from_int(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn conjugate(&self) -> Self {
        self.clone()
    }

    fn imaginary_unit() -> Option<Self> {
        None
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn grid_values(bound: i64) -> Vec<Self> {
        (-bound..=bound).map(Self::from_int).collect()
    }

    fn parse(s: &str) -> Result<Self, Error> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        parse_rational_term(&compact, Self::NAME)
    }
}

/// An element of ℚ(i): a Gaussian rational `re + im·i` with `i² = −1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    re: Rational,
    im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_real(re: Rational) -> Self {
        Self {
            re,
            im: Rational::zero(),
        }
    }

    pub fn i() -> Self {
        Self {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    /// Squared modulus `re² + im²`, nonzero unless `self` is zero.
    pub fn norm_sq(&self) -> Rational {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self {
            re: self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone(),
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

impl Div for GaussianRational {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let n = rhs.norm_sq();
        if n.is_zero() {
            panic!("division by zero in Q(i)");
        }
        let conj = rhs.conjugate();
        let prod = self * conj;
        Self {
            re: prod.re / n.clone(),
            im: prod.im / n,
        }
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self {
            re: Rational::zero(),
            im: Rational::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self {
            re: Rational::one(),
            im: Rational::zero(),
        }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn imag_part(im: &Rational) -> String {
            if im == &Rational::one() {
                "i".to_string()
            } else if im == &-Rational::one() {
                "-i".to_string()
            } else {
                format!("{im}i")
            }
        }
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}", imag_part(&self.im))
        } else if self.im.is_negative() {
            write!(f, "{}-{}", self.re, imag_part(&-self.im.clone()))
        } else {
            write!(f, "{}+{}", self.re, imag_part(&self.im))
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Field for GaussianRational {
    const NAME: &'static str = "Qi";

    fn from_int(n: i64) -> Self {
        Self::from_real(Rational::from_int(n))
    }

    fn conjugate(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    fn imaginary_unit() -> Option<Self> {
        Some(Self::i())
    }

    fn to_rational(&self) -> Option<Rational> {
        if self.im.is_zero() {
            Some(self.re.clone())
        } else {
            None
        }
    }

    fn grid_values(bound: i64) -> Vec<Self> {
        let mut out = Vec::new();
        for re in -bound..=bound {
            for im in -bound..=bound {
                out.push(Self::new(Rational::from_int(re), Rational::from_int(im)));
            }
        }
        out
    }

    fn parse(s: &str) -> Result<Self, Error> {
        let err = || Error::ParseScalar {
            input: s.to_string(),
            field: Self::NAME,
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        // Split into at most two signed terms; signs may only open a term.
        let bytes = compact.as_bytes();
        let mut split = None;
        for (idx, &b) in bytes.iter().enumerate().skip(1) {
            if b == b'+' || b == b'-' {
                if split.is_some() {
                    return Err(err());
                }
                split = Some(idx);
            }
        }
        let (first, second) = match split {
            None => (compact.as_str(), None),
            Some(idx) => (&compact[..idx], Some(&compact[idx..])),
        };

        let parse_term = |term: &str| -> Result<(Rational, bool), Error> {
            let (imag, mantissa) = match term.strip_suffix('i') {
                Some(m) => (true, m),
                None => (false, term),
            };
            let value = if imag && (mantissa.is_empty() || mantissa == "+" || mantissa == "-") {
                let one = Rational::one();
                if mantissa == "-" {
                    -one
                } else {
                    one
                }
            } else {
                parse_rational_term(mantissa, Self::NAME)?
            };
            Ok((value, imag))
        };

        let mut re = None;
        let mut im = None;
        for term in std::iter::once(first).chain(second) {
            let (value, imag) = parse_term(term)?;
            let slot = if imag { &mut im } else { &mut re };
            if slot.is_some() {
                return Err(err());
            }
            *slot = Some(value);
        }
        Ok(Self {
            re: re.unwrap_or_else(Rational::zero),
            im: im.unwrap_or_else(Rational::zero),
        })
    }
}

/// Convenience constructor: the rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Convenience constructor: the Gaussian rational `a/b + (c/d)i`.
pub fn gauss(a: i64, b: i64, c: i64, d: i64) -> GaussianRational {
    GaussianRational::new(rat(a, b), rat(c, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parse_and_display() {
        assert_eq!(Rational::parse("3/4").unwrap(), rat(3, 4));
        assert_eq!(Rational::parse("-7").unwrap(), rat(-7, 1));
        assert_eq!(Rational::parse(" 5 / 10 ").unwrap(), rat(1, 2));
        assert_eq!(format!("{}", rat(-3, 6)), "-1/2");
        assert!(Rational::parse("1/0").is_err());
        assert!(Rational::parse("i").is_err());
    }

    #[test]
    fn gaussian_parse_and_display() {
        let cases = [
            ("1/2+3/4i", gauss(1, 2, 3, 4)),
            ("1/2 + 3/4 i", gauss(1, 2, 3, 4)),
            ("2-3i", gauss(2, 1, -3, 1)),
            ("i", GaussianRational::i()),
            ("-i", -GaussianRational::i()),
            ("3i", gauss(0, 1, 3, 1)),
            ("-2/5", gauss(-2, 5, 0, 1)),
            ("0", GaussianRational::zero()),
        ];
        for (text, value) in cases {
            assert_eq!(GaussianRational::parse(text).unwrap(), value, "{text}");
        }
        assert!(GaussianRational::parse("1+2+3i").is_err());
        assert!(GaussianRational::parse("2i+3i").is_err());
        assert!(GaussianRational::parse("").is_err());

        // Display round-trips through parse.
        for value in [
            gauss(1, 2, 3, 4),
            gauss(-1, 1, -1, 1),
            gauss(0, 1, -5, 7),
            gauss(4, 3, 0, 1),
            GaussianRational::i(),
        ] {
            let shown = format!("{value}");
            assert_eq!(GaussianRational::parse(&shown).unwrap(), value, "{shown}");
        }
    }

    #[test]
    fn gaussian_field_axioms() {
        let a = gauss(1, 2, -3, 1);
        let b = gauss(2, 3, 1, 5);
        assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        assert_eq!(
            (a.clone() / b.clone()) * b.clone(),
            a.clone(),
            "division inverts multiplication"
        );
        assert_eq!(a.clone() * a.conjugate(), {
            GaussianRational::from_real(a.norm_sq())
        });
        let i = GaussianRational::i();
        assert_eq!(i.clone() * i.clone(), -GaussianRational::one());
    }

    #[test]
    fn conjugation_is_identity_on_rationals() {
        let x = rat(22, 7);
        assert_eq!(x.conjugate(), x);
    }
}
