use super::modular::pow_mod;

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

// Deterministic for every n < 3.3 * 10^24, which covers u64.
const MILLER_RABIN_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality: trial division below 10^6, Miller-Rabin with fixed witnesses above.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < TRIAL_DIVISION_LIMIT {
        return trial_division(n);
    }
    miller_rabin(n)
}

fn trial_division(n: u64) -> bool {
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn miller_rabin(n: u64) -> bool {
    if n % 2 == 0 {
        return false;
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &MILLER_RABIN_WITNESSES {
        if a % n == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime `>= n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n.max(2);
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// Smallest odd prime `>= n`.
pub fn next_odd_prime(n: u64) -> u64 {
    next_prime(n.max(3))
}
