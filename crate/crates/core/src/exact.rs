//! Arbitrary-precision integers and normalized rationals, plus factorial
//! utilities. Every other module builds on these.
//!
//! - [`Rational`]: exact rational number, always normalized
//! - [`factorial`], [`binomial`]: exact factorials (memoized) and binomial
//!   coefficients
//!
//! The canonical string form of a rational is `"n/d"` with the sign on the
//! numerator and `/1` omitted for integers, e.g. `-23/226800`, `17`, `0`.
//! [`Rational`] implements `Display`/`FromStr` for exactly this grammar.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact rational number.
///
/// Invariants, maintained by every constructor and operation:
/// - `gcd(|numerator|, denominator) = 1`
/// - `denominator >= 1`; the sign is carried by the numerator
/// - zero is uniquely `0/1`
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    /// Build `n/d` in normalized form. Panics if `d` is zero.
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Self {
        let d = denominator.into();
        assert!(!d.is_zero(), "rational with zero denominator");
        Rational(BigRational::new(numerator.into(), d))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// True when the denominator is 1.
    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// -1, 0 or +1.
    pub fn signum(&self) -> i32 {
        if self.0.is_zero() {
            0
        } else if self.0.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rational(self.0.recip())
    }

    /// Largest integer not exceeding this rational.
    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Integer power, with negative exponents inverting first.
    /// Panics when raising zero to a negative power.
    pub fn pow(&self, exponent: i64) -> Self {
        if exponent == 0 {
            return Rational::one();
        }
        let base = if exponent < 0 {
            self.recip()
        } else {
            self.clone()
        };
        let mut e = exponent.unsigned_abs();
        let mut acc = Rational::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! forward_binop {
    ($Op:ident, $op:ident) => {
        impl $Op for Rational {
            type Output = Rational;
            fn $op(self, rhs: Rational) -> Rational {
                Rational((self.0).$op(rhs.0))
            }
        }
        impl $Op<&Rational> for Rational {
            type Output = Rational;
            fn $op(self, rhs: &Rational) -> Rational {
                Rational((self.0).$op(&rhs.0))
            }
        }
        impl $Op<Rational> for &Rational {
            type Output = Rational;
            fn $op(self, rhs: Rational) -> Rational {
                Rational((&self.0).$op(rhs.0))
            }
        }
        impl $Op<&Rational> for &Rational {
            type Output = Rational;
            fn $op(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$op(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numerator())
        } else {
            write!(f, "{}/{}", self.numerator(), self.denominator())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Failure to parse the canonical rational grammar `-?[0-9]+(/[0-9]+)?`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseRationalError {
    Empty,
    InvalidDigit,
    ZeroDenominator,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseRationalError::Empty => write!(f, "empty rational literal"),
            ParseRationalError::InvalidDigit => {
                write!(f, "rational literal must match -?[0-9]+(/[0-9]+)?")
            }
            ParseRationalError::ZeroDenominator => write!(f, "rational with zero denominator"),
        }
    }
}

impl std::error::Error for ParseRationalError {}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts the same grammar `Display` emits: optional leading `-`,
    /// decimal digits, optional `/` and decimal digits. No `+`, no spaces.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        fn digits(part: &str) -> Result<BigInt, ParseRationalError> {
            if part.is_empty() {
                return Err(ParseRationalError::Empty);
            }
            if !part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(ParseRationalError::InvalidDigit);
            }
            Ok(BigInt::parse_bytes(part.as_bytes(), 10).expect("ascii digits"))
        }

        let (negative, rest) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (num_part, den_part) = match rest.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (rest, None),
        };
        let mut numer = digits(num_part)?;
        if negative {
            numer = -numer;
        }
        let denom = match den_part {
            Some(d) => {
                let d = digits(d)?;
                if d.is_zero() {
                    return Err(ParseRationalError::ZeroDenominator);
                }
                d
            }
            None => BigInt::one(),
        };
        Ok(Rational::new(numer, denom))
    }
}

// Factorials are memoized for the whole process: the defining recursion and
// the composition sum evaluate thousands of factorial ratios. The table is
// extended under a lock, so concurrent callers are safe.
static FACTORIALS: Mutex<Vec<BigInt>> = Mutex::new(Vec::new());

/// Exact `n!`.
pub fn factorial(n: u64) -> BigInt {
    let n = n as usize;
    let mut table = FACTORIALS.lock().expect("factorial table poisoned");
    if table.is_empty() {
        table.push(BigInt::one());
    }
    while table.len() <= n {
        let next = table.last().expect("nonempty") * BigInt::from(table.len());
        table.push(next);
    }
    table[n].clone()
}

/// Exact binomial coefficient `n choose k`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn construction_normalizes() {
        assert_eq!(rat(2, -12), rat(-1, 6));
        assert_eq!(rat(2, -12).to_string(), "-1/6");
        assert_eq!(rat(0, 5).to_string(), "0");
        assert_eq!(rat(0, 5).denominator(), &BigInt::one());
        assert_eq!(rat(-23, -226800).to_string(), "23/226800");
    }

    #[test]
    #[should_panic(expected = "zero denominator")]
    fn zero_denominator_rejected() {
        let _ = rat(1, 0);
    }

    #[test]
    #[should_panic]
    fn division_by_zero_rejected() {
        let _ = rat(1, 6) / Rational::zero();
    }

    #[test]
    fn field_arithmetic() {
        assert_eq!(rat(1, 36) - rat(1, 30), rat(-1, 180));
        assert_eq!(rat(1, 6).pow(2), rat(1, 36));
        assert_eq!(rat(-1, 6).pow(-1), rat(-6, 1));
        assert_eq!(rat(-1, 6).pow(-1).to_string(), "-6");
        assert_eq!(rat(2, 3).pow(0), Rational::one());
        assert_eq!(rat(2, 3).pow(-3), rat(27, 8));
    }

    #[test]
    #[should_panic(expected = "reciprocal of zero")]
    fn zero_reciprocal_rejected() {
        let _ = Rational::zero().recip();
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
        // oracle: direct product 1*2*...*7
        let direct: BigInt = (1..=7).map(BigInt::from).product();
        assert_eq!(factorial(7), direct);
        assert_eq!(direct, BigInt::from(5040));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(10, 0), BigInt::one());
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(600, 300), factorial(600) / (factorial(300).pow(2)));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["-23/226800", "0", "17", "-6", "1/6", "263/14968800"] {
            let q: Rational = s.parse().unwrap();
            assert_eq!(q.to_string(), s);
        }
        // grammatical but non-canonical inputs normalize
        assert_eq!("4/6".parse::<Rational>().unwrap(), rat(2, 3));
        assert_eq!("5/1".parse::<Rational>().unwrap().to_string(), "5");
    }

    #[test]
    fn parse_rejects_bad_grammar() {
        for s in [
            "", "+5", "1/0", "1 /2", "a", "1/", "/2", "1//2", "--1", "1.5",
        ] {
            assert!(s.parse::<Rational>().is_err(), "accepted {s:?}");
        }
    }

    #[test]
    fn signs_and_ordering() {
        assert!(rat(-1, 6).is_negative());
        assert_eq!(rat(-1, 6).signum(), -1);
        assert_eq!(Rational::zero().signum(), 0);
        assert_eq!(rat(-1, 6).abs(), rat(1, 6));
        assert!(rat(1, 3) > rat(1, 4));
    }
}
