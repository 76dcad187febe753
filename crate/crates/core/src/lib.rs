//! Exact computation of the rational sequence `{eps_l}` defined by
//!
//! ```text
//! sum_{l>=0} x^l/(2l+1)!  =  sum_{i>=0} eps_i * h(x)^i,    h(x) = 2 cosh(sqrt(x)) - 2,
//! ```
//!
//! together with the p-adic structure of its values and the arithmetic
//! consequences for A_n-type counts of SU(2) gauge groups.
//!
//! Modules:
//! - [`exact`]: arbitrary-precision normalized rationals and factorials
//! - [`series`]: truncated formal power series over exact rationals
//! - [`epsilon`]: the sequence itself, by three independent methods
//! - [`padic`]: p-adic valuations and the factorial-valuation lemmas
//! - [`primes`]: sieve, primality testing and factorization of the
//!   epsilon values
//! - [`gauge`]: the prefix invariant `d'_p(k)`, bounds on `d_p(k)`, and
//!   the A_n-type count lower bound with its prime-counting identity

pub mod epsilon;
pub mod exact;
pub mod gauge;
pub mod padic;
pub mod primes;
pub mod series;

pub use exact::{factorial, Rational};
pub use series::PowerSeries;

pub use num_bigint::{BigInt, BigUint};
