//! The rational sequence `{eps_l}`, computed by three independent methods.
//!
//! The sequence is defined by `eps_0 = 1` together with the identity
//!
//! ```text
//! 1/(2l+1)! = sum_{i=1}^{l} sum_{j_1+...+j_i=l, j_t>=1} 2^i eps_i / ((2j_1)! ... (2j_i)!)
//! ```
//!
//! for every `l >= 1`; equivalently `sum_l x^l/(2l+1)! = sum_i eps_i h(x)^i`
//! for `h(x) = 2 cosh(sqrt(x)) - 2`, and equivalently `eps_i` is the `i`-th
//! Taylor coefficient of `1/f'(x)` for `f` the compositional inverse of `h`.
//!
//! - [`series_table`] inverts `f'` (the production method, O(N^2) rational
//!   operations)
//! - [`recursion_table`] solves the defining identity triangularly, with the
//!   inner composition sums evaluated exactly as convolutions of powers
//!   of `h`
//! - [`composition_sum`] evaluates the explicit alternating sum
//!   `eps_l = sum_j sum_{i_1+...+i_j=l} (-1)^(j+l) (i_1!)^2...(i_j!)^2 /
//!   ((2i_1+1)!...(2i_j+1)!)`, either over partitions with multinomial
//!   ordering counts or over literal compositions
//!
//! The first few values: `eps_1 = 1/6`, `eps_2 = -1/180`, `eps_3 = 1/1512`.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::exact::{binomial, factorial, Rational};
use crate::series::arccosh_sq_derivative;

/// Which derivation produced a table of epsilon values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Recursion,
    SeriesInversion,
    CompositionSum,
}

/// Exact values `eps_0 ... eps_N` with the method that computed them.
/// Tables produced by different methods over the same range are identical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonTable {
    values: Vec<Rational>,
    method: Method,
}

impl EpsilonTable {
    pub fn max_order(&self) -> usize {
        self.values.len() - 1
    }

    /// `eps_l`. Panics beyond the table's range.
    pub fn get(&self, l: usize) -> &Rational {
        &self.values[l]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn method(&self) -> Method {
        self.method
    }
}

/// `eps_0 ... eps_N` as the Taylor coefficients of `1/f'(x)`.
pub fn series_table(max_order: usize) -> EpsilonTable {
    let values = arccosh_sq_derivative(max_order).inverse().coeffs().to_vec();
    EpsilonTable {
        values,
        method: Method::SeriesInversion,
    }
}

/// `eps_0 ... eps_N` by solving the defining identity inductively: with
/// `eps_1 ... eps_{l-1}` known, `eps_l` is the unique solution of
///
/// ```text
/// 1/(2l+1)! = sum_{i=1}^{l} eps_i * [x^l] h(x)^i
/// ```
///
/// since the pivot coefficient `[x^l] h(x)^l = 2^l/(2!)^l = 1`. The inner
/// sums over compositions `(j_1, ..., j_i)` of `l` are exactly the
/// coefficients of `h^i`, accumulated here as integer convolutions scaled
/// by `(2l)!`: with `H[i][l] = (2l)! * [x^l] h(x)^i`,
///
/// ```text
/// H[1][l] = 2,    H[i][l] = sum_{j=1}^{l-i+1} 2 * C(2l, 2j) * H[i-1][l-j],
/// ```
///
/// which keeps the O(N^3) inner work in integer arithmetic.
pub fn recursion_table(max_order: usize) -> EpsilonTable {
    let n = max_order;
    let mut values = vec![Rational::one()];
    if n == 0 {
        return EpsilonTable {
            values,
            method: Method::Recursion,
        };
    }

    // even binomials C(2l, 2j) for 1 <= j <= l <= n
    let even_binomials: Vec<Vec<BigInt>> = (0..=n as u64)
        .map(|l| (0..=l).map(|j| binomial(2 * l, 2 * j)).collect())
        .collect();

    let two = BigInt::from(2);
    // partial sums S[l] = sum_{i<l} eps_i * H[i][l], filled in row by row
    let mut partial: Vec<Rational> = vec![Rational::zero(); n + 1];
    // row = H[i][..] for the current power i
    let mut row: Vec<BigInt> = vec![two.clone(); n + 1];
    row[0] = BigInt::zero();

    for i in 1..=n {
        let eps_i = (Rational::new(1, 2 * i as i64 + 1) - &partial[i])
            / Rational::from(factorial(2 * i as u64));
        for (l, h_il) in row.iter().enumerate().skip(i + 1) {
            partial[l] = &partial[l] + &eps_i * &Rational::from(h_il.clone());
        }
        values.push(eps_i);
        if i == n {
            break;
        }

        let mut next = vec![BigInt::zero(); n + 1];
        for l in (i + 1)..=n {
            let binoms = &even_binomials[l];
            let mut acc = BigInt::zero();
            for j in 1..=(l - i) {
                let prev = &row[l - j];
                if !prev.is_zero() {
                    acc += &binoms[j] * prev;
                }
            }
            next[l] = acc * &two;
        }
        row = next;
    }
    EpsilonTable {
        values,
        method: Method::Recursion,
    }
}

/// How [`composition_sum`] enumerates the index tuples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumStrategy {
    /// Enumerate partitions of `l` and weight each by its number of
    /// distinct orderings `j!/(m_1! m_2! ...)`, `m_t` the part
    /// multiplicities.
    Partitions,
    /// Enumerate all `2^(l-1)` compositions literally. Only permitted for
    /// `l <= 25`.
    NaiveCompositions,
}

/// Largest order accepted by [`SumStrategy::NaiveCompositions`].
pub const NAIVE_COMPOSITION_LIMIT: usize = 25;

/// `eps_l` as the explicit alternating sum over index tuples
/// `(i_1, ..., i_j)` with `i_1 + ... + i_j = l`, each tuple contributing
/// `(-1)^(j+l) * prod_t (i_t!)^2/(2 i_t + 1)!`. Requires `l >= 1`.
pub fn composition_sum(l: usize, strategy: SumStrategy) -> Rational {
    assert!(l >= 1, "composition sum starts at l = 1");

    // w(n) = (n!)^2 / (2n+1)!
    let central: Vec<Rational> = (0..=l as u64)
        .map(|n| Rational::new(factorial(n) * factorial(n), factorial(2 * n + 1)))
        .collect();

    match strategy {
        SumStrategy::Partitions => {
            let mut total = Rational::zero();
            each_partition(l, &mut |parts| {
                let j = parts.len();
                let mut product = Rational::one();
                let mut orderings = factorial(j as u64);
                let mut run: u32 = 0;
                for (idx, &part) in parts.iter().enumerate() {
                    run += 1;
                    if idx + 1 == parts.len() || parts[idx + 1] != part {
                        product = product * central[part].pow(run as i64);
                        orderings /= factorial(run as u64);
                        run = 0;
                    }
                }
                let term = product * Rational::from(orderings);
                if (j + l).is_multiple_of(2) {
                    total = &total + &term;
                } else {
                    total = &total - &term;
                }
            });
            total
        }
        SumStrategy::NaiveCompositions => {
            assert!(
                l <= NAIVE_COMPOSITION_LIMIT,
                "naive composition enumeration is limited to l <= {NAIVE_COMPOSITION_LIMIT}"
            );
            let mut total = Rational::zero();
            compose_rec(l, l, &Rational::one(), 0, &central, &mut total);
            total
        }
    }
}

/// All partitions of `l` with parts in non-increasing order.
fn each_partition(l: usize, visit: &mut impl FnMut(&[usize])) {
    fn rec(
        remaining: usize,
        max_part: usize,
        parts: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if remaining == 0 {
            visit(parts);
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            parts.push(part);
            rec(remaining - part, part, parts, visit);
            parts.pop();
        }
    }
    rec(l, l, &mut Vec::new(), visit);
}

fn compose_rec(
    l: usize,
    remaining: usize,
    prefix: &Rational,
    parts_so_far: usize,
    central: &[Rational],
    total: &mut Rational,
) {
    for part in 1..=remaining {
        let extended = prefix * &central[part];
        if part == remaining {
            if (parts_so_far + 1 + l).is_multiple_of(2) {
                *total = &*total + &extended;
            } else {
                *total = &*total - &extended;
            }
        } else {
            compose_rec(
                l,
                remaining - part,
                &extended,
                parts_so_far + 1,
                central,
                total,
            );
        }
    }
}

/// `eps_0 ... eps_N` via [`composition_sum`] for each order.
pub fn composition_sum_table(max_order: usize, strategy: SumStrategy) -> EpsilonTable {
    let mut values = vec![Rational::one()];
    for l in 1..=max_order {
        values.push(composition_sum(l, strategy));
    }
    EpsilonTable {
        values,
        method: Method::CompositionSum,
    }
}

// Process-wide cache behind the plain accessor. Extension recomputes the
// full inverse series at a doubled order; reads of an already-built range
// never block each other.
static CACHE: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

/// `eps_l` from the shared cache, extending it via [`series_table`] when
/// `l` is beyond the cached range.
pub fn epsilon(l: usize) -> Rational {
    {
        let cache = CACHE.read().expect("epsilon cache poisoned");
        if l < cache.len() {
            return cache[l].clone();
        }
    }
    let mut cache = CACHE.write().expect("epsilon cache poisoned");
    if l >= cache.len() {
        let target = l.max(2 * cache.len()).max(16);
        *cache = series_table(target).values;
    }
    cache[l].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::cosh_sqrt;
    use crate::PowerSeries;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn recursion_small_values() {
        let table = recursion_table(3);
        assert_eq!(table.get(0), &Rational::one());
        assert_eq!(table.get(1), &rat(1, 6));
        assert_eq!(table.get(2), &rat(-1, 180));
        assert_eq!(table.get(3), &rat(1, 1512));
    }

    #[test]
    fn series_small_values() {
        let table = series_table(5);
        assert_eq!(table.get(0), &Rational::one());
        assert_eq!(table.get(4), &rat(-23, 226800));
        // eps_5 = 263 / (2^5 3^5 5^2 7 11)
        assert_eq!(table.get(5), &rat(263, 14968800));
    }

    #[test]
    fn composition_sum_small_values() {
        for strategy in [SumStrategy::Partitions, SumStrategy::NaiveCompositions] {
            assert_eq!(composition_sum(1, strategy), rat(1, 6));
            // the two compositions of 2: (2) and (1,1)
            assert_eq!(composition_sum(2, strategy), rat(-1, 30) + rat(1, 36));
            assert_eq!(composition_sum(2, strategy), rat(-1, 180));
            assert_eq!(composition_sum(3, strategy), rat(1, 1512));
        }
    }

    #[test]
    #[should_panic(expected = "limited to l <= 25")]
    fn naive_strategy_cutoff() {
        let _ = composition_sum(26, SumStrategy::NaiveCompositions);
    }

    #[test]
    fn methods_agree_at_moderate_order() {
        let series = series_table(30);
        let recursion = recursion_table(30);
        assert_eq!(series.values(), recursion.values());
        let compsum = composition_sum_table(18, SumStrategy::Partitions);
        assert_eq!(&series.values()[..=18], compsum.values());
        let naive = composition_sum_table(12, SumStrategy::NaiveCompositions);
        assert_eq!(&series.values()[..=12], naive.values());
    }

    #[test]
    fn cached_accessor() {
        assert_eq!(epsilon(0), Rational::one());
        assert_eq!(epsilon(2), rat(-1, 180));
        // numerator of eps_13 is 71 * 1531 * 20479 * 397849
        let numerator: BigInt = [71u64, 1531, 20479, 397849]
            .iter()
            .map(|&p| BigInt::from(p))
            .product();
        assert_eq!(epsilon(13).numerator(), &numerator);
        assert!(epsilon(20).is_negative());
    }

    #[test]
    fn defining_identity_residual() {
        // substitute the computed table back into
        // 1/(2l+1)! = sum_i eps_i [x^l] h^i, with the h powers formed by
        // ordinary series multiplication
        let n = 24;
        let table = series_table(n);
        let h = cosh_sqrt(n);
        let mut power = PowerSeries::one(n);
        let mut rhs = PowerSeries::one(n);
        for i in 1..=n {
            power = &power * &h;
            rhs = &rhs + &power.scale(table.get(i));
        }
        for l in 0..=n {
            assert_eq!(
                rhs.coeff(l),
                &Rational::new(1, factorial(2 * l as u64 + 1)),
                "l = {l}"
            );
        }
    }

    #[test]
    fn sign_alternates_for_low_orders() {
        let table = series_table(20);
        for l in 1..=20 {
            let expected = if l % 2 == 1 { 1 } else { -1 };
            assert_eq!(table.get(l).signum(), expected, "l = {l}");
        }
    }
}
