//! p-adic valuations of integers, rationals and factorials, and the
//! factorial-valuation bounds that control the denominators of the epsilon
//! sequence.
//!
//! For a prime `p`, `v_p(n)` is the exponent of `p` in `n`, extended to
//! rationals by `v_p(a/b) = v_p(a) - v_p(b)` and to zero by `v_p(0) = +inf`.
//! A rational `q` is a p-local integer (`q` in `Z_(p)`) exactly when
//! `v_p(q) >= 0`.
//!
//! The checks in this module are the ones that feed the `verify` suites:
//!
//! - [`vp_factorial`]: Legendre's formula `v_p(n!) = (n - s_p(n))/(p-1)`
//!   with `s_p` the base-p digit sum
//! - [`central_ratio_valuation`]: `v_p((n!)^2/(2n+1)!)`; for `p = 2` this
//!   equals `-s_2(n)`, for odd `p` it is at least `-2n/(p-1)` with equality
//!   exactly at `n = (p-1)/2`
//! - [`bound_factorial_odd`]: `v_p((2n+1)!) <= 2(n - s_p(n))/(p-1) + r + 1`
//! - [`check_multi_index_bound`]: the product version over a tuple of
//!   indices, whose equality case pins the leading p-adic term of `eps_l`

use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::exact::Rational;
use crate::primes::is_prime_u64;

/// A p-adic valuation: an integer, or `+inf` for the valuation of zero.
/// `Infinite` compares greater than every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    /// The finite value, or `None` for `+inf`.
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    /// `self >= bound`, with `+inf` passing every bound.
    pub fn at_least(self, bound: i64) -> bool {
        match self {
            Valuation::Finite(v) => v >= bound,
            Valuation::Infinite => true,
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "+inf"),
        }
    }
}

fn assert_prime(p: u64) {
    assert!(is_prime_u64(p), "valuations need a prime base, got {p}");
}

/// `v_p(n)` for an integer `n`; `+inf` for `n = 0`. Panics on non-prime `p`.
pub fn vp_int(p: u64, n: &BigInt) -> Valuation {
    assert_prime(p);
    if n.is_zero() {
        return Valuation::Infinite;
    }
    let p = BigInt::from(p);
    let mut rest = n.abs();
    let mut v = 0i64;
    loop {
        let (q, r) = rest.div_rem(&p);
        if !r.is_zero() {
            return Valuation::Finite(v);
        }
        rest = q;
        v += 1;
    }
}

/// `v_p(q) = v_p(numerator) - v_p(denominator)`. Panics on non-prime `p`.
pub fn vp_rational(p: u64, q: &Rational) -> Valuation {
    if q.is_zero() {
        assert_prime(p);
        return Valuation::Infinite;
    }
    match (vp_int(p, q.numerator()), vp_int(p, q.denominator())) {
        (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a - b),
        _ => unreachable!("nonzero rational has finite valuations"),
    }
}

/// The base-p digits of `n`, least significant first, with no trailing
/// zero digit; empty for `n = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitExpansion {
    base: u64,
    digits: Vec<u64>,
}

impl DigitExpansion {
    pub fn new(base: u64, n: u64) -> Self {
        assert!(base >= 2, "digit expansion needs base >= 2");
        let mut digits = Vec::new();
        let mut rest = n;
        while rest > 0 {
            digits.push(rest % base);
            rest /= base;
        }
        DigitExpansion { base, digits }
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    /// `sum n_i p^i`.
    pub fn value(&self) -> u64 {
        self.digits
            .iter()
            .rev()
            .fold(0, |acc, &d| acc * self.base + d)
    }

    pub fn digit_sum(&self) -> u64 {
        self.digits.iter().sum()
    }

    /// Index of the leading digit (`r` in `n = n_r p^r + ... + n_0`);
    /// `None` for zero.
    pub fn leading_index(&self) -> Option<usize> {
        self.digits.len().checked_sub(1)
    }
}

/// `v_p(n!)` by Legendre's digit-sum formula `(n - s_p(n))/(p - 1)`.
/// Panics on non-prime `p`.
pub fn vp_factorial(p: u64, n: u64) -> u64 {
    assert_prime(p);
    let s = DigitExpansion::new(p, n).digit_sum();
    (n - s) / (p - 1)
}

/// `v_p((n!)^2 / (2n+1)!)` for `n >= 1`.
///
/// For `p = 2` this equals minus the binary digit sum of `n`; for odd `p`
/// it is `>= -2n/(p-1)`, with equality exactly when `n = (p-1)/2`.
pub fn central_ratio_valuation(p: u64, n: u64) -> i64 {
    assert!(n >= 1, "central ratio starts at n = 1");
    2 * vp_factorial(p, n) as i64 - vp_factorial(p, 2 * n + 1) as i64
}

/// Both sides of the odd-prime factorial bound
/// `v_p((2n+1)!) <= 2(n - s_p(n))/(p-1) + r + 1`.
#[derive(Clone, Debug)]
pub struct OddFactorialBound {
    pub p: u64,
    pub n: u64,
    /// `v_p((2n+1)!)`.
    pub valuation: u64,
    /// The right-hand side, kept exact: it need not be an integer.
    pub bound: Rational,
    pub holds: bool,
}

/// Evaluate the factorial bound for an odd prime `p` and `n >= 1`.
pub fn bound_factorial_odd(p: u64, n: u64) -> OddFactorialBound {
    assert_prime(p);
    assert!(p % 2 == 1, "the factorial bound is about odd primes");
    assert!(n >= 1);
    let expansion = DigitExpansion::new(p, n);
    let r = expansion.leading_index().expect("n >= 1") as i64;
    let valuation = vp_factorial(p, 2 * n + 1);
    let bound =
        Rational::new(2 * (n - expansion.digit_sum()) as i64, p as i64 - 1) + Rational::from(r + 1);
    let holds = Rational::from(valuation as i64) <= bound;
    OddFactorialBound {
        p,
        n,
        valuation,
        bound,
        holds,
    }
}

/// Report for the product bound over a tuple of indices `(n_1, ..., n_m)`:
/// `v_p(prod (n_t!)^2/(2n_t+1)!) >= -2l/(p-1)` for `l = sum n_t`, with
/// equality exactly when every `n_t = (p-1)/2`.
#[derive(Clone, Debug)]
pub struct MultiIndexBound {
    pub p: u64,
    pub parts: Vec<u64>,
    /// `l = sum of parts`.
    pub total: u64,
    /// Valuation of the product.
    pub valuation: i64,
    /// `-2l/(p-1)`, kept exact.
    pub lower_bound: Rational,
    pub bound_holds: bool,
    pub equality: bool,
    /// Whether every part equals `(p-1)/2`.
    pub equality_expected: bool,
}

impl MultiIndexBound {
    /// Bound holds and equality occurs exactly in the expected case.
    pub fn passes(&self) -> bool {
        self.bound_holds && self.equality == self.equality_expected
    }
}

/// Evaluate the product bound for an odd prime `p` and a nonempty list of
/// positive parts.
pub fn check_multi_index_bound(p: u64, parts: &[u64]) -> MultiIndexBound {
    assert_prime(p);
    assert!(p % 2 == 1, "the product bound is about odd primes");
    assert!(!parts.is_empty(), "part list must be nonempty");
    assert!(parts.iter().all(|&n| n >= 1), "parts must be positive");
    let total: u64 = parts.iter().sum();
    let valuation: i64 = parts.iter().map(|&n| central_ratio_valuation(p, n)).sum();
    let lower_bound = Rational::new(-2 * total as i64, p as i64 - 1);
    let value = Rational::from(valuation);
    let half = (p - 1) / 2;
    MultiIndexBound {
        p,
        parts: parts.to_vec(),
        total,
        valuation,
        bound_holds: value >= lower_bound,
        equality: value == lower_bound,
        equality_expected: parts.iter().all(|&n| n == half),
        lower_bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::epsilon::epsilon;

    #[test]
    fn integer_valuations() {
        assert_eq!(vp_int(2, &BigInt::from(48)), Valuation::Finite(4));
        assert_eq!(vp_int(5, &BigInt::from(0)), Valuation::Infinite);
        assert_eq!(vp_int(3, &BigInt::from(7)), Valuation::Finite(0));
        assert_eq!(vp_int(3, &BigInt::from(-54)), Valuation::Finite(3));
    }

    #[test]
    #[should_panic(expected = "prime base")]
    fn composite_base_rejected() {
        let _ = vp_int(6, &BigInt::from(36));
    }

    #[test]
    fn rational_valuations_of_epsilon() {
        assert_eq!(vp_rational(2, &epsilon(5)), Valuation::Finite(-5));
        assert_eq!(vp_rational(5, &epsilon(3)), Valuation::Finite(0));
        assert_eq!(vp_rational(5, &epsilon(13)), Valuation::Finite(-5));
        assert_eq!(vp_rational(7, &Rational::zero()), Valuation::Infinite);
    }

    #[test]
    fn valuation_ordering_and_addition() {
        assert!(Valuation::Infinite > Valuation::Finite(i64::MAX));
        assert!(Valuation::Finite(-3) < Valuation::Finite(0));
        assert_eq!(
            Valuation::Finite(2) + Valuation::Finite(-5),
            Valuation::Finite(-3)
        );
        assert_eq!(
            Valuation::Finite(7) + Valuation::Infinite,
            Valuation::Infinite
        );
        assert!(Valuation::Infinite.at_least(i64::MAX));
        assert!(!Valuation::Finite(-1).at_least(0));
    }

    #[test]
    fn digit_expansions() {
        let e = DigitExpansion::new(3, 4);
        assert_eq!(e.digits(), &[1, 1]);
        assert_eq!(e.value(), 4);
        assert_eq!(e.digit_sum(), 2);
        assert_eq!(e.leading_index(), Some(1));

        let zero = DigitExpansion::new(7, 0);
        assert!(zero.digits().is_empty());
        assert_eq!(zero.value(), 0);
        assert_eq!(zero.leading_index(), None);
    }

    // independent oracle: v_p(n!) = sum_{i>=1} floor(n / p^i)
    fn vp_factorial_direct(p: u64, n: u64) -> u64 {
        let mut total = 0;
        let mut power = p;
        while power <= n {
            total += n / power;
            match power.checked_mul(p) {
                Some(next) => power = next,
                None => break,
            }
        }
        total
    }

    #[test]
    fn factorial_valuations() {
        assert_eq!(vp_factorial(2, 10), 8);
        assert_eq!(vp_factorial_direct(2, 10), 8);
        assert_eq!(vp_factorial(3, 10), 4);
        assert_eq!(vp_factorial_direct(3, 10), 4);
        assert_eq!(vp_factorial(7, 6), 0);
        for p in [2u64, 3, 5, 7, 11, 13] {
            for n in 0..500 {
                assert_eq!(vp_factorial(p, n), vp_factorial_direct(p, n), "p={p} n={n}");
            }
        }
    }

    #[test]
    fn central_ratio_examples() {
        assert_eq!(central_ratio_valuation(2, 5), -2);
        assert_eq!(central_ratio_valuation(5, 2), -1);
        assert_eq!(central_ratio_valuation(5, 1), 0);
        // p = 2: equals minus the binary digit sum
        for n in 1..300 {
            assert_eq!(
                central_ratio_valuation(2, n),
                -(DigitExpansion::new(2, n).digit_sum() as i64)
            );
        }
    }

    #[test]
    fn odd_factorial_bound_examples() {
        let b = bound_factorial_odd(3, 4);
        assert_eq!(b.valuation, 4);
        assert_eq!(b.bound, Rational::from(4));
        assert!(b.holds);

        let b = bound_factorial_odd(5, 2);
        assert_eq!(b.valuation, 1);
        assert_eq!(b.bound, Rational::from(1));
        assert!(b.holds);

        let b = bound_factorial_odd(5, 12);
        assert_eq!(b.valuation, 6);
        assert_eq!(b.bound, Rational::from(6));
        assert!(b.holds);

        for p in [3u64, 5, 7, 11] {
            for n in 1..200 {
                assert!(bound_factorial_odd(p, n).holds, "p={p} n={n}");
            }
        }
    }

    #[test]
    fn multi_index_examples() {
        let r = check_multi_index_bound(5, &[2, 2]);
        assert_eq!(r.valuation, -2);
        assert!(r.equality && r.equality_expected && r.passes());

        let r = check_multi_index_bound(5, &[1, 3]);
        assert!(r.bound_holds && !r.equality && !r.equality_expected && r.passes());

        let r = check_multi_index_bound(3, &[1, 1, 1]);
        assert_eq!(r.valuation, -3);
        assert!(r.equality && r.equality_expected && r.passes());
    }

    #[test]
    fn two_adic_product_is_local_integer() {
        // 2^(l-1) * prod (n_t!)^2/(2n_t+1)! is 2-locally integral whenever
        // some part is >= 2
        let lists: [&[u64]; 6] = [
            &[2],
            &[3, 1],
            &[2, 2, 1],
            &[5, 4, 1, 1],
            &[7],
            &[2, 1, 1, 1, 1],
        ];
        for parts in lists {
            assert!(parts.iter().any(|&n| n >= 2));
            let l: u64 = parts.iter().sum();
            let v2: i64 = parts
                .iter()
                .map(|&n| central_ratio_valuation(2, n))
                .sum::<i64>()
                + l as i64
                - 1;
            assert!(v2 >= 0, "parts {parts:?}");
        }
    }
}
