//! Arithmetic in the prime field `F_p`.
//!
//! Elements carry their modulus so that mixed-modulus operations are caught
//! immediately. All values are kept in the canonical range `[0, p)`.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FpError {
    #[error("0 has no multiplicative inverse in F_{0}")]
    NotInvertible(u64),
    #[error("modulus mismatch: F_{0} vs F_{1}")]
    ModulusMismatch(u64, u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// Trial-division primality test; the moduli in this crate are tiny.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
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

/// An element of `F_p`, stored as `value` in `[0, modulus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    /// Reduces `value` into the canonical range. The modulus must be prime.
    pub fn new(value: i64, modulus: u64) -> Self {
        debug_assert!(is_prime(modulus), "modulus {modulus} must be prime");
        let m = modulus as i64;
        let v = ((value % m) + m) % m;
        Fp {
            value: v as u64,
            modulus,
        }
    }

    /// Like [`Fp::new`] but validates the modulus at runtime.
    pub fn checked_new(value: i64, modulus: u64) -> Result<Self, FpError> {
        if !is_prime(modulus) {
            return Err(FpError::NotPrime(modulus));
        }
        Ok(Self::new(value, modulus))
    }

    pub fn zero(modulus: u64) -> Self {
        Fp { value: 0, modulus }
    }

    pub fn one(modulus: u64) -> Self {
        Fp { value: 1, modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn check(self, other: Self) -> (u64, u64, u64) {
        assert_eq!(
            self.modulus, other.modulus,
            "cannot mix F_{} and F_{}",
            self.modulus, other.modulus
        );
        (self.value, other.value, self.modulus)
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self.value;
        let mut acc = 1u64;
        let p = self.modulus;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp {
            value: acc,
            modulus: p,
        }
    }

    /// Multiplicative inverse, via Fermat: `a^(p-2)`.
    pub fn inv(self) -> Result<Self, FpError> {
        if self.value == 0 {
            return Err(FpError::NotInvertible(self.modulus));
        }
        Ok(self.pow(self.modulus - 2))
    }
}

impl std::ops::Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let (a, b, p) = self.check(rhs);
        Fp {
            value: (a + b) % p,
            modulus: p,
        }
    }
}

impl std::ops::Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        let (a, b, p) = self.check(rhs);
        Fp {
            value: (a + p - b) % p,
            modulus: p,
        }
    }
}

impl std::ops::Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let (a, b, p) = self.check(rhs);
        Fp {
            value: a * b % p,
            modulus: p,
        }
    }
}

impl std::ops::Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl std::fmt::Display for Fp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}

// Raw helpers used by the dense kernels, which keep coefficients as bare u64.
pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}

pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b) % p
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "0 has no inverse mod {p}");
    pow_mod(a, p - 2, p)
}
