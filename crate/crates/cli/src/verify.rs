//! Verification suites: each named suite sweeps one family of invariants,
//! printing a PASS/FAIL line per check (first failing witness included)
//! and NOTE lines for reported-but-not-failing observations.

use clap::ValueEnum;
use epseq::epsilon::epsilon;
use epseq::exact::{factorial, Rational};
use epseq::gauge::{
    count_primes_factor_at_least, d_prime, d_prime_closed_form, log_identity_check,
    product_count_identity,
};
use epseq::padic::{vp_int, vp_rational};
use epseq::series::{arccosh_sq, arccosh_sq_derivative, cosh_sqrt, ArccoshSqMethod};
use epseq::{BigInt, PowerSeries};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    V2,
    V3,
    V5,
    Vp,
    Congruence,
    Series,
    Identity,
    All,
}

pub struct Reporter {
    pub passed: u64,
    pub failed: u64,
    fail_fast: bool,
}

impl Reporter {
    fn new(fail_fast: bool) -> Reporter {
        Reporter {
            passed: 0,
            failed: 0,
            fail_fast,
        }
    }

    /// Print the check line; returns true when the run should stop.
    fn check(&mut self, ok: bool, line: &str) -> bool {
        if ok {
            self.passed += 1;
            println!("PASS {line}");
        } else {
            self.failed += 1;
            println!("FAIL {line}");
        }
        !ok && self.fail_fast
    }

    fn note(&self, line: &str) {
        println!("NOTE {line}");
    }
}

/// Run a suite; returns the reporter with pass/fail counts.
pub fn run(
    suite: Suite,
    max: usize,
    prime: Option<u64>,
    tolerance: f64,
    seed: u64,
    fail_fast: bool,
) -> Reporter {
    let mut r = Reporter::new(fail_fast);
    let stop = match suite {
        Suite::V2 => fixed_valuation(&mut r, 2, max),
        Suite::V3 => fixed_valuation(&mut r, 3, max),
        Suite::V5 => five_adic(&mut r, max),
        Suite::Vp => general_odd(&mut r, max, prime),
        Suite::Congruence => congruences(&mut r, max),
        Suite::Series => series_identities(&mut r, max),
        Suite::Identity => gauge_identities(&mut r, max, tolerance, seed),
        Suite::All => {
            fixed_valuation(&mut r, 2, max)
                || fixed_valuation(&mut r, 3, max)
                || five_adic(&mut r, max)
                || general_odd(&mut r, max, prime)
                || congruences(&mut r, max)
                || series_identities(&mut r, max)
                || gauge_identities(&mut r, max, tolerance, seed)
        }
    };
    if stop {
        println!("stopped at first failure (--fail-fast)");
    }
    r
}

fn vp_eps(p: u64, l: usize) -> i64 {
    vp_rational(p, &epsilon(l))
        .finite()
        .expect("epsilon values are nonzero")
}

// v_2(eps_l) = -l (and identically for p = 3)
fn fixed_valuation(r: &mut Reporter, p: u64, max: usize) -> bool {
    for l in 1..=max {
        let v = vp_eps(p, l);
        if r.check(
            v == -(l as i64),
            &format!("v{p} l={l}: v_{p}(eps_{l}) = {v}, expected {}", -(l as i64)),
        ) {
            return true;
        }
    }
    false
}

// v_5(eps_l) = -floor(l/2), except strictly above it when l = 3 mod 10
fn five_adic(r: &mut Reporter, max: usize) -> bool {
    let mut exceptional = Vec::new();
    for l in 1..=max {
        let v = vp_eps(5, l);
        let expected = -((l / 2) as i64);
        let (ok, line) = if l % 10 == 3 {
            exceptional.push(l);
            (
                v > expected,
                format!(
                    "v5 l={l}: v_5(eps_{l}) = {v} > {expected} (exceptional index, l = 3 mod 10)"
                ),
            )
        } else {
            (
                v == expected,
                format!("v5 l={l}: v_5(eps_{l}) = {v}, expected {expected}"),
            )
        };
        if r.check(ok, &line) {
            return true;
        }
    }
    r.note(&format!(
        "v5 exceptional indices up to {max}: {exceptional:?}"
    ));
    false
}

// v_p(eps_(n(p-1)/2)) = -n, and v_p(eps_l) > -n for l < n(p-1)/2
fn general_odd(r: &mut Reporter, max: usize, prime: Option<u64>) -> bool {
    let primes = match prime {
        Some(p) => vec![p],
        None => vec![7, 11, 13],
    };
    for p in primes {
        let half = ((p - 1) / 2) as usize;
        let values: Vec<i64> = (0..=max).map(|l| vp_eps(p, l)).collect();
        let mut n = 1i64;
        while n as usize * half <= max {
            let at = n as usize * half;
            if r.check(
                values[at] == -n,
                &format!(
                    "vp p={p} n={n}: v_{p}(eps_{at}) = {}, expected {}",
                    values[at], -n
                ),
            ) {
                return true;
            }
            let violation = (0..at).find(|&l| values[l] <= -n);
            let line = match violation {
                None => format!("vp p={p} n={n}: v_{p}(eps_l) > {} for all l < {at}", -n),
                Some(l) => format!(
                    "vp p={p} n={n}: v_{p}(eps_{l}) = {} violates > {}",
                    values[l], -n
                ),
            };
            if r.check(violation.is_none(), &line) {
                return true;
            }
            n += 1;
        }
    }
    false
}

// leading-term congruences mod p^(-n+1), plus the odd-index 5-adic one
fn congruences(r: &mut Reporter, max: usize) -> bool {
    for p in [5u64, 7, 11] {
        let half = (p - 1) / 2;
        let mut n: u64 = 1;
        while n * half <= max as u64 {
            let l = (n * half) as usize;
            let sign = if (n * (p + 1) / 2).is_multiple_of(2) {
                1
            } else {
                -1
            };
            let leading = Rational::from(sign) * Rational::from(factorial(half)).pow(2 * n as i64)
                / Rational::from(factorial(p)).pow(n as i64);
            let v = vp_rational(p, &(epsilon(l) - leading));
            let ok = v.at_least(-(n as i64) + 1);
            if r.check(
                ok,
                &format!(
                    "congruence p={p} n={n}: v_{p}(eps_{l} - leading term) = {v} >= {}",
                    -(n as i64) + 1
                ),
            ) {
                return true;
            }
            n += 1;
        }
    }

    let mut n: i64 = 1;
    while 2 * n < max as i64 {
        let l = (2 * n + 1) as usize;
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let term = Rational::from(sign) * Rational::from(2).pow(2 * n) * Rational::from(7 - 2 * n)
            / (Rational::from(factorial(5)).pow(n - 1) * Rational::from(factorial(7)));
        let v = vp_rational(5, &(epsilon(l) - term));
        let ok = v.at_least(-n + 1);
        if r.check(
            ok,
            &format!(
                "congruence mod 5 l={l}: v_5(eps_{l} - closed term) = {v} >= {}",
                -n + 1
            ),
        ) {
            return true;
        }
        n += 1;
    }
    false
}

// the functional identities between f, h and the generating series
fn series_identities(r: &mut Reporter, max: usize) -> bool {
    let order = max.max(2);
    let f = arccosh_sq(order, ArccoshSqMethod::ClosedForm);
    let h = cosh_sqrt(order);

    let ok = f.compose(&h) == PowerSeries::x(order);
    if r.check(ok, &format!("series: f(h(x)) = x through order {order}")) {
        return true;
    }

    let fp = f.derivative();
    let fpp = fp.derivative();
    let two = Rational::from(2);
    let residual = &(&(&fpp.shift_up(2) + &fpp.shift_up(1).scale(&Rational::from(4)))
        + &(&fp.shift_up(1) + &fp.scale(&two)))
        - &PowerSeries::constant(two, order - 1);
    if r.check(
        residual.is_zero(),
        &format!(
            "series: x(x+4)f'' + (x+2)f' - 2 vanishes through order {}",
            order - 1
        ),
    ) {
        return true;
    }

    let ok = f == arccosh_sq(order, ArccoshSqMethod::OdeRecursion);
    if r.check(
        ok,
        &format!("series: closed-form f matches its recursion through order {order}"),
    ) {
        return true;
    }

    let g = arccosh_sq_derivative(order).inverse();
    let lhs = PowerSeries::from_coeffs(
        (0..=order as u64)
            .map(|l| Rational::new(1, factorial(2 * l + 1)))
            .collect(),
    );
    let ok = g.compose(&h) == lhs;
    if r.check(
        ok,
        &format!("series: sum x^l/(2l+1)! = sum eps_i h(x)^i through order {order}"),
    ) {
        return true;
    }
    false
}

// d' sweeps, the counting identity, product reconstruction, log identity
fn gauge_identities(r: &mut Reporter, max: usize, tolerance: f64, seed: u64) -> bool {
    // deterministic k sampler on top of the fixed grid
    let mut state = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut next = move || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        state >> 33
    };
    let mut sample_ks: Vec<(u32, u32, i64)> = Vec::new();
    for a in 0..=6u32 {
        for b in 0..=6u32 {
            for m in [1i64, 5, 7] {
                sample_ks.push((a, b, m));
                sample_ks.push((a, b, -m));
            }
        }
    }
    for _ in 0..50 {
        let m = [1i64, 5, 7, 25, 35, 77, 143][next() as usize % 7];
        let sign = if next() % 2 == 0 { 1 } else { -1 };
        sample_ks.push((next() as u32 % 9, next() as u32 % 9, sign * m));
    }

    for (p, expected_exp) in [(2u64, 0usize), (3u64, 1usize)] {
        let witness = sample_ks.iter().find(|&&(a, b, m)| {
            let k = BigInt::from(m) * BigInt::from(2).pow(a) * BigInt::from(3).pow(b);
            let expected = [a, b][expected_exp] as u64;
            d_prime(p, &k) != expected
        });
        let line = match witness {
            None => format!(
                "identity: d'_{p}(k) = v_{p}(k) on {} sampled k values",
                sample_ks.len()
            ),
            Some((a, b, m)) => format!("identity: d'_{p} mismatch at k = {m}*2^{a}*3^{b}"),
        };
        if r.check(witness.is_none(), &line) {
            return true;
        }
    }

    // scan values for p >= 5: assert the derived formula, report the
    // difference from the quoted closed form
    for p in [5u64, 7] {
        let mut scan_ok = true;
        for v in 0..=2u32 {
            let k = BigInt::from(p).pow(v) * BigInt::from(6);
            let scanned = d_prime(p, &k);
            scan_ok &= scanned == (v as u64 + 1) * (p - 1) / 2 - 1;
        }
        if r.check(
            scan_ok,
            &format!("identity: d'_{p} scan equals (v_{p}(k)+1)({p}-1)/2 - 1 for v_{p}(k) <= 2"),
        ) {
            return true;
        }
        let k = BigInt::from(p);
        r.note(&format!(
            "identity: d'_{p}({p}) scans to {} while the quoted closed form gives {} \
             (documented discrepancy for p >= 5; the scan is ground truth)",
            d_prime(p, &k),
            d_prime_closed_form(p, vp_int(p, &k).finite().unwrap()),
        ));
    }

    for n in 1..=max as u64 {
        let bad_r = (2..=n + 1).find(|&rr| !count_primes_factor_at_least(n, rr).holds());
        let product = product_count_identity(n);
        let ok = bad_r.is_none() && product.holds();
        let line = match bad_r {
            Some(rr) => {
                let id = count_primes_factor_at_least(n, rr);
                format!(
                    "identity counts n={n}: direct {} != pi-form {} at r={rr}",
                    id.direct, id.via_prime_pi
                )
            }
            None => format!(
                "identity counts n={n}: counting identity for every r and exact product reconstruction"
            ),
        };
        if r.check(ok, &line) {
            return true;
        }
    }

    let mut worst = 0f64;
    let mut all_ok = true;
    for n in 1..=max as u64 {
        let report = log_identity_check(n, tolerance);
        worst = worst.max(report.abs_diff);
        all_ok &= report.passes();
    }
    if r.check(
        all_ok,
        &format!("identity log: max |difference| {worst:.3e} over n <= {max} (tolerance {tolerance:.1e})"),
    ) {
        return true;
    }
    false
}
