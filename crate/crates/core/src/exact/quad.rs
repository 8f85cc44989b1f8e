use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::Rational;

/// An element `p + q*sqrt5` of the quadratic field over the rationals
/// generated by the square root of five.
///
/// The representation is unique because sqrt5 is irrational, so equality
/// is componentwise and the sign of any element is computable exactly:
/// comparisons never touch floating point.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QuadNumber {
    rational: Rational,
    sqrt5: Rational,
}

impl QuadNumber {
    pub fn new(rational: Rational, sqrt5: Rational) -> Self {
        QuadNumber { rational, sqrt5 }
    }

    pub fn from_rational(r: Rational) -> Self {
        QuadNumber {
            rational: r,
            sqrt5: Rational::zero(),
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n))
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    /// `0 + 1*sqrt5`.
    pub fn sqrt5() -> Self {
        QuadNumber {
            rational: Rational::zero(),
            sqrt5: Rational::one(),
        }
    }

    /// The golden ratio `(1 + sqrt5)/2`.
    pub fn phi() -> Self {
        QuadNumber {
            rational: Rational::new(1, 2).unwrap(),
            sqrt5: Rational::new(1, 2).unwrap(),
        }
    }

    /// Coefficient of 1.
    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    /// Coefficient of sqrt5.
    pub fn sqrt5_part(&self) -> &Rational {
        &self.sqrt5
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.sqrt5.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.sqrt5.is_zero()
    }

    /// Collapses to the rational component; errors if a sqrt5 residue
    /// remains, which signals a formula-evaluation bug in the caller.
    pub fn as_rational(&self) -> Result<Rational> {
        if self.sqrt5.is_zero() {
            Ok(self.rational.clone())
        } else {
            Err(Error::IrrationalResidue(self.to_string()))
        }
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let p = self.rational.signum();
        let q = self.sqrt5.signum();
        match (p, q) {
            (0, _) => q,
            (_, 0) => p,
            (1, 1) => 1,
            (-1, -1) => -1,
            // Mixed signs: |p| vs |q|*sqrt5 decided by squaring.
            _ => {
                let p2 = &self.rational * &self.rational;
                let q2_5 = &(&self.sqrt5 * &self.sqrt5) * &Rational::from_integer(5);
                let s = match p2.cmp(&q2_5) {
                    Ordering::Greater => p,
                    Ordering::Less => q,
                    // p^2 = 5 q^2 with q != 0 would make sqrt5 rational.
                    Ordering::Equal => unreachable!("sqrt5 is irrational"),
                };
                s
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Result<Self> {
        // 1/(p + q*sqrt5) = (p - q*sqrt5) / (p^2 - 5 q^2)
        let norm = &(&self.rational * &self.rational)
            - &(&(&self.sqrt5 * &self.sqrt5) * &Rational::from_integer(5));
        if norm.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QuadNumber {
            rational: self.rational.checked_div(&norm)?,
            sqrt5: (-&self.sqrt5).checked_div(&norm)?,
        })
    }

    pub fn checked_div(&self, rhs: &QuadNumber) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, exp: i64) -> Result<Self> {
        let mut base = if exp < 0 { self.recip()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = QuadNumber::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// `phi^k` for any integer `k`; phi is a unit, so negative powers are
    /// exact (`phi^-1 = phi - 1`).
    pub fn golden_power(k: i64) -> Self {
        let base = if k < 0 {
            // phi - 1 = (-1 + sqrt5)/2
            QuadNumber {
                rational: Rational::new(-1, 2).unwrap(),
                sqrt5: Rational::new(1, 2).unwrap(),
            }
        } else {
            Self::phi()
        };
        base.pow(k.unsigned_abs() as i64).expect("nonzero base")
    }

    /// Exact `floor(x * 10^pow10)`, used for decimal rendering and as a
    /// cross-check oracle for comparisons. Integer arithmetic throughout.
    pub fn floor_scaled(&self, pow10: u32) -> BigInt {
        let scale = BigInt::from(10).pow(pow10);
        // x * 10^k = (a + b*sqrt5) / d with integers a, b and d > 0.
        let d = self.rational.denom() * self.sqrt5.denom();
        let a = self.rational.numer() * self.sqrt5.denom() * &scale;
        let b = self.sqrt5.numer() * self.rational.denom() * &scale;
        let c = floor_sqrt5_multiple(&b);
        (a + c).div_floor(&d)
    }

    /// Decimal approximation with `sig` significant digits, truncated
    /// toward zero. Human-readable output only; never used in checks.
    pub fn decimal_approx(&self, sig: usize) -> String {
        let sign = self.signum();
        if sign == 0 {
            return "0".to_string();
        }
        let x = self.abs();
        let sig = sig.max(1);
        let mut k = (sig + 2) as u32;
        let digits = loop {
            let m = x.floor_scaled(k);
            let s = m.to_string();
            if !m.is_zero() && s.len() >= sig {
                break s;
            }
            k += sig as u32;
        };
        let exp = digits.len() as i64 - 1 - k as i64;
        let lead: String = digits.chars().take(sig).collect();
        let body = if exp < 0 {
            let zeros = "0".repeat((-exp - 1) as usize);
            format!("0.{zeros}{lead}")
        } else if (exp as usize) + 1 >= sig {
            format!("{}{}", lead, "0".repeat(exp as usize + 1 - sig))
        } else {
            let (int_part, frac_part) = lead.split_at(exp as usize + 1);
            format!("{int_part}.{frac_part}")
        };
        if sign < 0 {
            format!("-{body}")
        } else {
            body
        }
    }
}

/// `floor(b * sqrt5)` for an integer `b`.
fn floor_sqrt5_multiple(b: &BigInt) -> BigInt {
    if b.is_zero() {
        return BigInt::zero();
    }
    let t: BigInt = (BigInt::from(5) * b * b).sqrt();
    if b.is_positive() {
        t
    } else {
        // 5 b^2 is never a perfect square for b != 0, so the floor of a
        // negative multiple always rounds one further down.
        -t - 1
    }
}

impl Ord for QuadNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl PartialOrd for QuadNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! quad_binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl $trait<&QuadNumber> for &QuadNumber {
            type Output = QuadNumber;
            fn $method(self, rhs: &QuadNumber) -> QuadNumber {
                let $a = self;
                let $b = rhs;
                $body
            }
        }
        impl $trait for QuadNumber {
            type Output = QuadNumber;
            fn $method(self, rhs: QuadNumber) -> QuadNumber {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadNumber> for QuadNumber {
            type Output = QuadNumber;
            fn $method(self, rhs: &QuadNumber) -> QuadNumber {
                (&self).$method(rhs)
            }
        }
        impl $trait<QuadNumber> for &QuadNumber {
            type Output = QuadNumber;
            fn $method(self, rhs: QuadNumber) -> QuadNumber {
                self.$method(&rhs)
            }
        }
    };
}

quad_binop!(Add, add, |a, b| QuadNumber {
    rational: &a.rational + &b.rational,
    sqrt5: &a.sqrt5 + &b.sqrt5,
});

quad_binop!(Sub, sub, |a, b| QuadNumber {
    rational: &a.rational - &b.rational,
    sqrt5: &a.sqrt5 - &b.sqrt5,
});

quad_binop!(Mul, mul, |a, b| QuadNumber {
    rational: &(&a.rational * &b.rational)
        + &(&(&a.sqrt5 * &b.sqrt5) * &Rational::from_integer(5)),
    sqrt5: &(&a.rational * &b.sqrt5) + &(&a.sqrt5 * &b.rational),
});

impl Neg for &QuadNumber {
    type Output = QuadNumber;
    fn neg(self) -> QuadNumber {
        QuadNumber {
            rational: -&self.rational,
            sqrt5: -&self.sqrt5,
        }
    }
}

impl Neg for QuadNumber {
    type Output = QuadNumber;
    fn neg(self) -> QuadNumber {
        -&self
    }
}

impl Mul<&Rational> for &QuadNumber {
    type Output = QuadNumber;
    fn mul(self, rhs: &Rational) -> QuadNumber {
        QuadNumber {
            rational: &self.rational * rhs,
            sqrt5: &self.sqrt5 * rhs,
        }
    }
}

impl fmt::Display for QuadNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt5", self.rational, self.sqrt5)
    }
}

impl serde::Serialize for QuadNumber {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for QuadNumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.split_once(" + ") {
            Some((rat, rest)) => {
                let coef = rest
                    .trim()
                    .strip_suffix("*sqrt5")
                    .ok_or_else(|| Error::Parse(format!("missing *sqrt5 suffix in {s:?}")))?;
                Ok(QuadNumber {
                    rational: rat.parse()?,
                    sqrt5: coef.parse()?,
                })
            }
            None => Ok(QuadNumber::from_rational(s.parse()?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::frac;

    fn quad(p: Rational, q: Rational) -> QuadNumber {
        QuadNumber::new(p, q)
    }

    #[test]
    fn sqrt5_squares_to_five() {
        let root = QuadNumber::sqrt5();
        assert_eq!(&root * &root, QuadNumber::from_integer(5));
    }

    #[test]
    fn phi_satisfies_its_defining_identity() {
        let phi = QuadNumber::phi();
        // phi^2 = phi + 1 = 3/2 + (1/2)*sqrt5
        assert_eq!(&phi * &phi, &phi + &QuadNumber::one());
        assert_eq!(&phi * &phi, quad(frac(3, 2), frac(1, 2)));
    }

    #[test]
    fn scaled_definition_of_the_path_slope_offset() {
        // ((5 - sqrt5)/10) * 10 + sqrt5 = 5
        let a = quad(frac(1, 2), frac(-1, 10));
        let v = &(&a * &QuadNumber::from_integer(10)) + &QuadNumber::sqrt5();
        assert_eq!(v, QuadNumber::from_integer(5));
    }

    #[test]
    fn golden_powers() {
        assert_eq!(QuadNumber::golden_power(0), QuadNumber::one());
        assert_eq!(QuadNumber::golden_power(2), quad(frac(3, 2), frac(1, 2)));
        assert_eq!(QuadNumber::golden_power(-1), quad(frac(-1, 2), frac(1, 2)));
        for k in -50..=50 {
            let prod = QuadNumber::golden_power(k) * QuadNumber::golden_power(-k);
            assert_eq!(prod, QuadNumber::one(), "phi^{k} * phi^-{k}");
        }
    }

    #[test]
    fn exact_comparison_of_mixed_sign_elements() {
        // a = (5 - sqrt5)/10, b = (79*sqrt5 - 165)/70: b < a.
        let a = quad(frac(1, 2), frac(-1, 10));
        let b = quad(frac(-33, 14), frac(79, 70));
        assert!(b < a);
        assert!(a > b);
        assert_eq!(a.cmp(&a), std::cmp::Ordering::Equal);
        // 1/sqrt5 - 1/3 < 2/sqrt5 - 3/4
        let c2 = quad(frac(-1, 3), frac(1, 5));
        let c4 = quad(frac(-3, 4), frac(2, 5));
        assert!(c2 < c4);
    }

    #[test]
    fn signum_covers_all_quadrants() {
        assert_eq!(QuadNumber::zero().signum(), 0);
        assert_eq!(quad(frac(1, 2), frac(-1, 10)).signum(), 1); // 0.5 - 0.22
        assert_eq!(quad(frac(-9, 4), frac(1, 1)).signum(), -1); // -2.25 + 2.23
        assert_eq!(quad(frac(-2, 1), frac(1, 1)).signum(), 1); // -2 + 2.23
        assert_eq!(quad(frac(3, 1), frac(-2, 1)).signum(), -1); // 3 - 4.47
    }

    #[test]
    fn as_rational_requires_zero_residue() {
        assert_eq!(
            quad(frac(2, 3), Rational::zero()).as_rational().unwrap(),
            frac(2, 3)
        );
        assert!(matches!(
            QuadNumber::sqrt5().as_rational(),
            Err(Error::IrrationalResidue(_))
        ));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(
            QuadNumber::one().checked_div(&QuadNumber::zero()),
            Err(Error::DivisionByZero)
        ));
        let phi = QuadNumber::phi();
        assert_eq!(phi.checked_div(&phi).unwrap(), QuadNumber::one());
    }

    #[test]
    fn renders_and_parses_canonically() {
        let b = quad(frac(-33, 14), frac(79, 70));
        assert_eq!(b.to_string(), "-33/14 + 79/70*sqrt5");
        assert_eq!(b.to_string().parse::<QuadNumber>().unwrap(), b);
        assert_eq!("13/9".parse::<QuadNumber>().unwrap().to_string(), "13/9 + 0/1*sqrt5");
    }

    #[test]
    fn decimal_rendering_is_truncated_exact_scaling() {
        let a = quad(frac(1, 2), frac(-1, 10));
        assert!(a.decimal_approx(9).starts_with("0.27639320"));
        let b = quad(frac(-33, 14), frac(79, 70));
        assert!(b.decimal_approx(9).starts_with("0.16641957"));
        assert_eq!(QuadNumber::from_integer(-5).decimal_approx(3), "-5.00");
        assert_eq!(QuadNumber::from_integer(1234).decimal_approx(2), "1200");
        assert_eq!(QuadNumber::zero().decimal_approx(5), "0");
        // sqrt5 = 2.2360679...
        assert!(QuadNumber::sqrt5().decimal_approx(8).starts_with("2.2360679"));
    }
}
