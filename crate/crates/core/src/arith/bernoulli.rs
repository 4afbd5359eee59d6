use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{binomial, is_prime, ArithError, Rational};

/// Memoized Bernoulli numbers in the `x/(e^x - 1)` convention (`B_1 = -1/2`).
///
/// Readers share the table; a miss takes the write lock and extends it. Two
/// threads racing to fill the same prefix compute identical values.
#[derive(Debug)]
pub struct BernoulliTable {
    values: RwLock<Vec<Rational>>,
}

impl Default for BernoulliTable {
    fn default() -> Self {
        Self::new()
    }
}

impl BernoulliTable {
    pub fn new() -> Self {
        BernoulliTable {
            values: RwLock::new(vec![Rational::one()]),
        }
    }

    /// `B_q`, zero for `q < 0` and for odd `q >= 3`.
    ///
    /// `B_1 = -1/2` is returned for completeness. Intersection-number callers
    /// never reach it since the Bernoulli index there is always even.
    pub fn get(&self, q: i64) -> Rational {
        if q < 0 || (q >= 3 && q % 2 == 1) {
            return Rational::zero();
        }
        let q = q as usize;
        if let Some(v) = self.values.read().expect("bernoulli table poisoned").get(q) {
            return v.clone();
        }
        let mut values = self.values.write().expect("bernoulli table poisoned");
        while values.len() <= q {
            let n = values.len();
            let next = next_bernoulli(&values, n);
            values.push(next);
        }
        values[q].clone()
    }
}

// B_n = -1/(n+1) * sum_{j<n} C(n+1, j) B_j
fn next_bernoulli(prev: &[Rational], n: usize) -> Rational {
    if n >= 3 && n % 2 == 1 {
        return Rational::zero();
    }
    let mut acc = Rational::zero();
    for (j, b) in prev.iter().enumerate() {
        if !b.is_zero() {
            acc += b * Rational::from_integer(binomial(n as i64 + 1, j as i64));
        }
    }
    -acc / Rational::from_integer(BigInt::from(n + 1))
}

fn global_table() -> &'static BernoulliTable {
    static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
    TABLE.get_or_init(BernoulliTable::new)
}

/// `B_q` from the process-wide memo table.
pub fn bernoulli(q: i64) -> Rational {
    global_table().get(q)
}

/// Product of the primes `p` with `(p - 1) | q`, which is the denominator of `B_q`.
pub fn von_staudt_denominator(q: i64) -> Result<BigInt, ArithError> {
    if q < 2 || q % 2 != 0 {
        return Err(ArithError::BadBernoulliIndex(q));
    }
    let q = q as u64;
    let mut acc = BigInt::one();
    for d in 1..=q {
        if q % d == 0 && is_prime(d + 1) {
            acc *= BigInt::from(d + 1);
        }
    }
    Ok(acc)
}
