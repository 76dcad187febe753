//! Prime generation, primality testing, the prime counting function, and
//! factorization of the epsilon numerators and denominators.
//!
//! - [`sieve`]: primes up to a limit, ascending
//! - [`prime_pi`]: `pi(x)` for non-negative rational `x` (as `pi(floor x)`)
//! - [`is_prime`]: deterministic Miller-Rabin below `2^64`, strong
//!   probable-prime testing with 40 fixed bases above
//! - [`factor_rational`]: trial division up to a bound, then Brent's
//!   cycle-finding variant of Pollard rho with primality certification of
//!   every listed factor; whatever cannot be split within the retry budget
//!   is reported as an unfactored residue instead of looping forever
//!
//! The canonical text form of a [`FactorizationReport`] is
//! `-1 · 2^-4 · 3^-4 · 5^-2 · 7^-1 · 23`: sign first when negative,
//! ascending primes, caret exponents with `^1` omitted.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::Rational;

/// Default trial-division bound: the epsilon denominators are 41-smooth
/// and the small numerator factors all fall well below this.
pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

/// Default seed for the randomized rho constants.
pub const DEFAULT_SEED: u64 = 1;

const MAX_TRIAL_BOUND: u64 = 100_000_000;
// Splits composites whose smallest prime factor is up to roughly 10^20
// within a couple of seconds; anything harder becomes a residue instead of
// an open-ended search.
const RHO_RETRIES: u32 = 8;

/// All primes `<= limit`, ascending. Requires `limit >= 2`.
pub fn sieve(limit: u64) -> Vec<u64> {
    assert!(limit >= 2, "sieve needs limit >= 2");
    assert!(
        limit <= MAX_TRIAL_BOUND,
        "sieve limit capped at {MAX_TRIAL_BOUND}"
    );
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Number of primes `<= x`.
pub fn prime_pi_u64(x: u64) -> u64 {
    if x < 2 {
        return 0;
    }
    sieve(x).len() as u64
}

/// `pi(x)` for a non-negative rational argument, as `pi(floor x)`.
pub fn prime_pi(x: &Rational) -> u64 {
    assert!(!x.is_negative(), "prime counting needs x >= 0");
    let floor = x.floor();
    prime_pi_u64(
        floor
            .to_u64()
            .expect("prime counting argument out of range"),
    )
}

fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_u64(acc, base, m);
        }
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

// Deterministic for all n < 2^64 with this witness set.
const WITNESSES_U64: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality for `n < 2^64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES_U64 {
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// The first 40 primes, used as fixed Miller-Rabin bases above 2^64.
const BASES_BIG: [u64; 40] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173,
];

fn is_prime_big(n: &BigUint) -> bool {
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().expect("n > 1");
    let d = &n_minus_1 >> s;
    'base: for a in BASES_BIG {
        let a = BigUint::from(a);
        if &a % n == BigUint::zero() {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

/// Primality of a non-negative integer: deterministic below `2^64`,
/// strong probable-prime above (40 fixed bases).
pub fn is_prime(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let n = n.magnitude();
    match n.to_u64() {
        Some(small) => is_prime_u64(small),
        None => {
            if n.is_even() {
                return false;
            }
            is_prime_big(n)
        }
    }
}

// Counter-based generator for the rho polynomial constants; quality is
// irrelevant, reproducibility is not.
struct SplitMix64(u64);

impl SplitMix64 {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

// One attempt of Brent's variant on an odd composite; None when the cycle
// collapses for this choice of constants or the iteration cap is hit.
fn brent_rho_u64(n: u64, rng: &mut SplitMix64) -> Option<u64> {
    debug_assert!(n % 2 == 1 && n > 3);
    let c = rng.next() % (n - 2) + 1;
    let mut y = rng.next() % (n - 2) + 1;
    let step = |y: u64| ((y as u128 * y as u128 + c as u128) % n as u128) as u64;
    let batch = 128u64;
    let cap = 1u64 << 18;
    let (mut g, mut r, mut q) = (1u64, 1u64, 1u64);
    let (mut x, mut ys) = (y, y);
    while g == 1 {
        if r > cap {
            return None;
        }
        x = y;
        for _ in 0..r {
            y = step(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..batch.min(r - k) {
                y = step(y);
                q = mulmod_u64(q, x.abs_diff(y), n);
            }
            g = gcd_u64(q, n);
            k += batch;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = step(ys);
            g = gcd_u64(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn brent_rho_big(n: &BigUint, rng: &mut SplitMix64) -> Option<BigUint> {
    let one = BigUint::one();
    let c = BigUint::from(rng.next());
    let mut y = BigUint::from(rng.next()) % n;
    let abs_diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    let step = |y: &BigUint| (y * y + &c) % n;
    let batch = 128u64;
    let cap = 1u64 << 16;
    let (mut g, mut r, mut q) = (one.clone(), 1u64, one.clone());
    let (mut x, mut ys) = (y.clone(), y.clone());
    while g == one {
        if r > cap {
            return None;
        }
        x = y.clone();
        for _ in 0..r {
            y = step(&y);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..batch.min(r - k) {
                y = step(&y);
                q = q * abs_diff(&x, &y) % n;
            }
            g = q.gcd(n);
            k += batch;
        }
        r *= 2;
    }
    if &g == n {
        loop {
            ys = step(&ys);
            g = abs_diff(&x, &ys).gcd(n);
            if g > one {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}

// Nontrivial factor of an odd composite, retrying with fresh constants.
fn split_composite(n: &BigUint, rng: &mut SplitMix64) -> Option<BigUint> {
    for _ in 0..RHO_RETRIES {
        let found = match n.to_u64() {
            Some(small) => brent_rho_u64(small, rng).map(BigUint::from),
            None => brent_rho_big(n, rng),
        };
        if let Some(d) = found {
            debug_assert!(d > BigUint::one() && &d < n);
            return Some(d);
        }
    }
    None
}

// Factor a positive integer: trial division by the sieved primes, then
// rho on whatever survives. Returns (prime -> exponent, unsplit composites).
fn factor_integer(
    n: &BigUint,
    trial_primes: &[u64],
    rng: &mut SplitMix64,
) -> (BTreeMap<BigUint, u64>, Vec<BigUint>) {
    let mut factors: BTreeMap<BigUint, u64> = BTreeMap::new();
    let mut unfactored = Vec::new();
    let mut rest = n.clone();
    let one = BigUint::one();

    // while the cofactor exceeds u64, every trial prime must be tested
    let mut idx = 0;
    while idx < trial_primes.len() && rest.to_u64().is_none() {
        let p = trial_primes[idx];
        while (&rest % p).is_zero() {
            rest /= p;
            *factors.entry(BigUint::from(p)).or_insert(0) += 1;
        }
        idx += 1;
    }
    // machine-word cofactor: divide until p^2 passes it
    if let Some(mut small) = rest.to_u64() {
        while idx < trial_primes.len() && small > 1 {
            let p = trial_primes[idx];
            if p * p > small {
                break;
            }
            while small % p == 0 {
                small /= p;
                *factors.entry(BigUint::from(p)).or_insert(0) += 1;
            }
            idx += 1;
        }
        rest = BigUint::from(small);
    }

    if rest > one {
        let mut stack = vec![rest];
        while let Some(m) = stack.pop() {
            if is_prime(&BigInt::from(m.clone())) {
                *factors.entry(m).or_insert(0) += 1;
            } else if let Some(d) = split_composite(&m, rng) {
                stack.push(&m / &d);
                stack.push(d);
            } else {
                unfactored.push(m);
            }
        }
    }
    (factors, unfactored)
}

/// An integer the factorizer could not split within its retry budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residue {
    pub value: BigInt,
    /// `+1` when the residue sits in the numerator, `-1` in the denominator.
    pub exponent: i64,
    /// Whether the residue passes [`is_prime`]; unsplit residues are
    /// normally composite.
    pub probable_prime: bool,
}

/// Signed prime factorization of a nonzero rational.
///
/// `sign * prod p^e * residue^e` reconstructs the input exactly; listed
/// primes are certified by [`is_prime`] and exponents are nonzero
/// (negative for denominator primes).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationReport {
    pub sign: i32,
    pub factors: Vec<(BigInt, i64)>,
    pub residue: Option<Residue>,
}

impl FactorizationReport {
    /// Multiply the report back together.
    pub fn reconstruct(&self) -> Rational {
        let mut value = Rational::from(self.sign as i64);
        for (p, e) in &self.factors {
            value = value * Rational::from(p.clone()).pow(*e);
        }
        if let Some(residue) = &self.residue {
            value = value * Rational::from(residue.value.clone()).pow(residue.exponent);
        }
        value
    }
}

impl fmt::Display for FactorizationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.sign < 0 {
            parts.push("-1".to_string());
        }
        for (p, e) in &self.factors {
            if *e == 1 {
                parts.push(p.to_string());
            } else {
                parts.push(format!("{p}^{e}"));
            }
        }
        if let Some(residue) = &self.residue {
            let value = if residue.exponent == 1 {
                format!("{} [unfactored]", residue.value)
            } else {
                format!("{}^{} [unfactored]", residue.value, residue.exponent)
            };
            parts.push(value);
        }
        if parts.is_empty() {
            parts.push("1".to_string());
        }
        write!(f, "{}", parts.join(" · "))
    }
}

/// Factor a nonzero rational with the default trial bound and seed.
pub fn factor_rational(q: &Rational) -> FactorizationReport {
    factor_rational_with(q, DEFAULT_TRIAL_BOUND, DEFAULT_SEED)
}

/// Factor a nonzero rational: trial division by all primes up to
/// `trial_bound`, then rho with constants drawn from `seed`.
pub fn factor_rational_with(q: &Rational, trial_bound: u64, seed: u64) -> FactorizationReport {
    assert!(!q.is_zero(), "factorization of zero");
    let trial_primes = sieve(trial_bound.max(2));
    let mut rng = SplitMix64(seed);

    let (numer_factors, numer_unsplit) =
        factor_integer(q.numerator().magnitude(), &trial_primes, &mut rng);
    let (denom_factors, denom_unsplit) =
        factor_integer(q.denominator().magnitude(), &trial_primes, &mut rng);

    let mut merged: BTreeMap<BigUint, i64> = BTreeMap::new();
    for (p, e) in numer_factors {
        *merged.entry(p).or_insert(0) += e as i64;
    }
    for (p, e) in denom_factors {
        *merged.entry(p).or_insert(0) -= e as i64;
    }
    let factors: Vec<(BigInt, i64)> = merged
        .into_iter()
        .filter(|(_, e)| *e != 0)
        .map(|(p, e)| (BigInt::from(p), e))
        .collect();

    let residue = match (numer_unsplit.is_empty(), denom_unsplit.is_empty()) {
        (true, true) => None,
        (false, true) => Some(make_residue(numer_unsplit, 1)),
        (true, false) => Some(make_residue(denom_unsplit, -1)),
        (false, false) => {
            // one optional residue cannot carry both sides
            panic!("unfactored composites in both numerator and denominator")
        }
    };

    FactorizationReport {
        sign: if q.is_negative() { -1 } else { 1 },
        factors,
        residue,
    }
}

fn make_residue(unsplit: Vec<BigUint>, exponent: i64) -> Residue {
    let value: BigUint = unsplit.into_iter().product();
    let value = BigInt::from(value);
    let probable_prime = is_prime(&value);
    Residue {
        value,
        exponent,
        probable_prime,
    }
}
