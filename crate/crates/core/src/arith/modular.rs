use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{is_prime, ArithError};

/// An odd prime modulus. Primality is checked once, on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if p > 2 && p < (1 << 32) && is_prime(p) {
            Ok(Modulus(p))
        } else {
            Err(ArithError::NotOddPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Residue class modulo an odd prime. The residue is always reduced into `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModN {
    residue: u64,
    modulus: Modulus,
}

impl ModN {
    pub fn new(value: u64, modulus: Modulus) -> Self {
        ModN {
            residue: value % modulus.0,
            modulus,
        }
    }

    pub fn from_i64(value: i64, modulus: Modulus) -> Self {
        let p = modulus.0 as i64;
        ModN::new(value.rem_euclid(p) as u64, modulus)
    }

    pub fn zero(modulus: Modulus) -> Self {
        ModN {
            residue: 0,
            modulus,
        }
    }

    pub fn one(modulus: Modulus) -> Self {
        ModN {
            residue: 1,
            modulus,
        }
    }

    pub fn residue(self) -> u64 {
        self.residue
    }

    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.residue == 0
    }

    pub fn pow(self, exp: u64) -> Self {
        ModN {
            residue: pow_mod(self.residue, exp, self.modulus.0),
            modulus: self.modulus,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(self) -> Option<Self> {
        if self.residue == 0 {
            None
        } else {
            Some(self.pow(self.modulus.0 - 2))
        }
    }

    /// Representative in `(-p/2, p/2]`, handy for sign-aware display.
    pub fn symmetric(self) -> i64 {
        let p = self.modulus.0 as i64;
        let r = self.residue as i64;
        if r > p / 2 {
            r - p
        } else {
            r
        }
    }

    fn check(self, other: Self) {
        assert_eq!(
            self.modulus, other.modulus,
            "mixed moduli in prime-field arithmetic"
        );
    }
}

impl fmt::Display for ModN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

impl Add for ModN {
    type Output = ModN;
    fn add(self, rhs: ModN) -> ModN {
        self.check(rhs);
        let p = self.modulus.0;
        let s = self.residue + rhs.residue;
        ModN {
            residue: if s >= p { s - p } else { s },
            modulus: self.modulus,
        }
    }
}

impl Sub for ModN {
    type Output = ModN;
    fn sub(self, rhs: ModN) -> ModN {
        self + (-rhs)
    }
}

impl Neg for ModN {
    type Output = ModN;
    fn neg(self) -> ModN {
        let residue = if self.residue == 0 {
            0
        } else {
            self.modulus.0 - self.residue
        };
        ModN { residue, ..self }
    }
}

impl Mul for ModN {
    type Output = ModN;
    fn mul(self, rhs: ModN) -> ModN {
        self.check(rhs);
        ModN {
            residue: mul_mod(self.residue, rhs.residue, self.modulus.0),
            modulus: self.modulus,
        }
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// `base^exp mod p` by square-and-multiply.
pub fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    if p == 1 {
        return 0;
    }
    let mut base = base % p;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// `n! mod p`.
pub fn factorial_mod(n: u64, p: u64) -> Result<ModN, ArithError> {
    let m = Modulus::new(p)?;
    Ok((1..=n).fold(ModN::one(m), |acc, i| acc * ModN::new(i, m)))
}

/// `a^{-1} mod p`. A non-invertible input means a `p > 2k`-style precondition was broken upstream.
pub fn inv_mod(a: i64, p: u64) -> Result<ModN, ArithError> {
    let m = Modulus::new(p)?;
    ModN::from_i64(a, m)
        .inverse()
        .ok_or_else(|| ArithError::NotInvertible {
            value: a.to_string(),
            modulus: p,
        })
}
