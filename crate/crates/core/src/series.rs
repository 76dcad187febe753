//! Truncated formal power series over exact rationals.
//!
//! A [`PowerSeries`] of order `N` is a polynomial of degree `N` regarded as
//! a series known only up to `x^N`. Arithmetic between series of different
//! orders truncates to the smaller order: composition and inversion shorten
//! the usable order, and padding with zeros would fabricate coefficients.
//!
//! Besides the generic ring operations the module provides the three named
//! series this crate revolves around:
//!
//! - [`cosh_sqrt`]: `h(x) = 2 cosh(sqrt(x)) - 2`, coefficient of `x^i` is
//!   `2/(2i)!`
//! - [`arccosh_sq`]: `f(x) = (arccosh(1 + x/2))^2`, the compositional
//!   inverse of `h`
//! - [`arccosh_sq_derivative`]: `f'(x)`, coefficient of `x^i` is
//!   `(-1)^i (i!)^2 / (2i+1)!`
//!
//! The reciprocal `1/f'` generates the epsilon sequence; see the `epsilon`
//! module.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exact::{factorial, Rational};

/// A truncated formal power series with exact rational coefficients.
///
/// `coeffs[i]` is the coefficient of `x^i`; the order is `coeffs.len() - 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    /// Series with the given coefficients; the order is `coeffs.len() - 1`.
    /// Panics on an empty coefficient list.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "power series needs at least the constant term"
        );
        PowerSeries { coeffs }
    }

    /// The constant series `c` at the given order.
    pub fn constant(c: Rational, order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); order + 1];
        coeffs[0] = c;
        PowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        PowerSeries::constant(Rational::one(), order)
    }

    /// The series `x` at the given order (which must be at least 1).
    pub fn x(order: usize) -> Self {
        assert!(order >= 1, "the series x needs order >= 1");
        let mut coeffs = vec![Rational::zero(); order + 1];
        coeffs[1] = Rational::one();
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `x^i`. Panics beyond the truncation order.
    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// Drop coefficients above `order`. Panics when `order` exceeds the
    /// current order: that would require inventing coefficients.
    pub fn truncated(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        PowerSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `x^k`. The known coefficients shift up, so the order
    /// grows by `k`; no information is invented.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        PowerSeries { coeffs }
    }

    /// Termwise derivative; the order drops by one. The derivative of an
    /// order-0 series is the zero series of order 0.
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return PowerSeries::zero(0);
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, a)| a * &Rational::from(i as i64 + 1))
            .collect();
        PowerSeries { coeffs }
    }

    /// Multiplicative inverse up to the truncation order, by the triangular
    /// recurrence `b_0 = 1/a_0`, `b_n = -(1/a_0) * sum_{k=1}^n a_k b_{n-k}`.
    /// Panics when the constant term is zero.
    pub fn inverse(&self) -> Self {
        assert!(
            !self.coeffs[0].is_zero(),
            "inverse of a series with zero constant term"
        );
        let n = self.order();
        let a = Scaled::from_series(self);
        // the b_m are kept as integers over a growing common denominator,
        // so the inner sums are plain integer dot products
        let b0 = self.coeffs[0].recip();
        let mut b_den = b0.denominator().clone();
        let mut b_nums = Vec::with_capacity(n + 1);
        b_nums.push(b0.numerator().clone());
        for m in 1..=n {
            let mut sum = BigInt::zero();
            for k in 1..=m {
                if !a.nums[k].is_zero() {
                    sum += &a.nums[k] * &b_nums[m - k];
                }
            }
            // sum/(a.den * b_den) times -(1/a_0) with a_0 = a.nums[0]/a.den
            let b_m = Rational::new(-sum, &a.nums[0] * &b_den);
            let lcm = b_den.lcm(b_m.denominator());
            if lcm != b_den {
                let grow = &lcm / &b_den;
                for x in &mut b_nums {
                    *x *= &grow;
                }
                b_den = lcm;
            }
            b_nums.push(b_m.numerator() * (&b_den / b_m.denominator()));
        }
        let coeffs = b_nums
            .into_iter()
            .map(|x| Rational::new(x, b_den.clone()))
            .collect();
        PowerSeries { coeffs }
    }

    /// Formal substitution `self(inner)`, by Horner accumulation over the
    /// outer coefficients, truncated to the smaller of the two orders.
    /// Panics when `inner` has a nonzero constant term (the substituted
    /// coefficients would not stabilize).
    pub fn compose(&self, inner: &PowerSeries) -> Self {
        assert!(
            inner.coeffs[0].is_zero(),
            "composition requires the inner series to have zero constant term"
        );
        let order = self.order().min(inner.order());
        let inner = Scaled::from_series(&inner.truncated(order));
        let mut acc = Scaled::from_constant(&self.coeffs[order], order);
        for k in (0..order).rev() {
            acc = acc.mul(&inner, order);
            if !self.coeffs[k].is_zero() {
                acc.add_to_constant(&self.coeffs[k]);
            }
        }
        acc.into_series()
    }
}

// Integer coefficients over one shared denominator. Multiplication becomes
// an integer convolution followed by a single content reduction, instead of
// a gcd-normalizing rational operation per coefficient.
struct Scaled {
    nums: Vec<BigInt>,
    den: BigInt,
}

impl Scaled {
    fn from_series(ps: &PowerSeries) -> Scaled {
        let mut den = BigInt::one();
        for c in &ps.coeffs {
            den = den.lcm(c.denominator());
        }
        let nums = ps
            .coeffs
            .iter()
            .map(|c| c.numerator() * (&den / c.denominator()))
            .collect();
        Scaled { nums, den }
    }

    fn from_constant(c: &Rational, order: usize) -> Scaled {
        let mut nums = vec![BigInt::zero(); order + 1];
        nums[0] = c.numerator().clone();
        Scaled {
            nums,
            den: c.denominator().clone(),
        }
    }

    fn into_series(self) -> PowerSeries {
        let coeffs = self
            .nums
            .into_iter()
            .map(|x| Rational::new(x, self.den.clone()))
            .collect();
        PowerSeries { coeffs }
    }

    fn mul(&self, rhs: &Scaled, order: usize) -> Scaled {
        let mut nums = vec![BigInt::zero(); order + 1];
        for (i, a) in self.nums.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.nums.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    nums[i + j] += a * b;
                }
            }
        }
        let mut product = Scaled {
            nums,
            den: &self.den * &rhs.den,
        };
        product.reduce();
        product
    }

    fn add_to_constant(&mut self, c: &Rational) {
        let lcm = self.den.lcm(c.denominator());
        if lcm != self.den {
            let grow = &lcm / &self.den;
            for x in &mut self.nums {
                *x *= &grow;
            }
            self.den = lcm;
        }
        self.nums[0] += c.numerator() * (&self.den / c.denominator());
    }

    // divide out gcd(den, content of nums)
    fn reduce(&mut self) {
        let mut g = self.den.clone();
        for x in &self.nums {
            if g.is_one() {
                return;
            }
            if !x.is_zero() {
                g = g.gcd(x);
            }
        }
        if g.is_one() {
            return;
        }
        for x in &mut self.nums {
            *x /= &g;
        }
        self.den /= &g;
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|i| &self.coeffs[i] + &rhs.coeffs[i])
            .collect();
        PowerSeries { coeffs }
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|i| &self.coeffs[i] - &rhs.coeffs[i])
            .collect();
        PowerSeries { coeffs }
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + a * b;
                }
            }
        }
        PowerSeries { coeffs }
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl std::fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PowerSeries[order {}; {:?}]", self.order(), self.coeffs)
    }
}

/// `h(x) = 2 cosh(sqrt(x)) - 2`: zero constant term, coefficient of `x^i`
/// equal to `2/(2i)!` for `i >= 1`.
pub fn cosh_sqrt(order: usize) -> PowerSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(Rational::zero());
    for i in 1..=order as u64 {
        coeffs.push(Rational::new(2, factorial(2 * i)));
    }
    PowerSeries::from_coeffs(coeffs)
}

/// How to build the coefficients of [`arccosh_sq`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArccoshSqMethod {
    /// `a_i = (-1)^(i-1) * 2((i-1)!)^2 / (2i)!`.
    ClosedForm,
    /// `a_1 = 1`, `a_{i+1} = -i^2 / ((2i+2)(2i+1)) * a_i`, the recursion
    /// forced by the differential equation
    /// `x(x+4) f''(x) + (x+2) f'(x) - 2 = 0`.
    OdeRecursion,
}

/// `f(x) = (arccosh(1 + x/2))^2`, the compositional inverse of
/// [`cosh_sqrt`]. Requires `order >= 1`; both methods agree exactly.
pub fn arccosh_sq(order: usize, method: ArccoshSqMethod) -> PowerSeries {
    assert!(order >= 1, "arccosh_sq needs order >= 1");
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(Rational::zero());
    match method {
        ArccoshSqMethod::ClosedForm => {
            for i in 1..=order as u64 {
                let mut a = Rational::new(
                    BigInt::from(2) * factorial(i - 1) * factorial(i - 1),
                    factorial(2 * i),
                );
                if i % 2 == 0 {
                    a = -a;
                }
                coeffs.push(a);
            }
        }
        ArccoshSqMethod::OdeRecursion => {
            let mut a = Rational::one();
            coeffs.push(a.clone());
            for i in 1..order as i64 {
                a = a * Rational::new(-i * i, (2 * i + 2) * (2 * i + 1));
                coeffs.push(a.clone());
            }
        }
    }
    PowerSeries::from_coeffs(coeffs)
}

/// `f'(x)`: coefficient of `x^i` is `(-1)^i (i!)^2 / (2i+1)!`.
pub fn arccosh_sq_derivative(order: usize) -> PowerSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    for i in 0..=order as u64 {
        let mut a = Rational::new(factorial(i) * factorial(i), factorial(2 * i + 1));
        if i % 2 == 1 {
            a = -a;
        }
        coeffs.push(a);
    }
    PowerSeries::from_coeffs(coeffs)
}
