//! Validated dimensions and the primality test behind them.

use crate::error::{Error, Result};

/// Largest accepted dimension. Primality is decided by trial division with
/// divisors up to 10^6, so anything past 10^12 is rejected instead of guessed.
pub const MAX_DIM: u64 = 1_000_000_000_000;

/// A Hilbert space dimension together with the arithmetic facts the rest of the
/// crate branches on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dim {
    d: u64,
    is_prime: bool,
    n_sq_plus_3: Option<u64>,
}

impl Dim {
    pub fn new(d: u64) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension(d));
        }
        if d > MAX_DIM {
            return Err(Error::DimensionTooLarge(d));
        }
        let n_sq_plus_3 = if d >= 3 { exact_sqrt(d - 3) } else { None };
        Ok(Dim {
            d,
            is_prime: is_prime(d)?,
            n_sq_plus_3,
        })
    }

    #[inline]
    pub fn get(&self) -> u64 {
        self.d
    }

    /// The dimension as a length. Never zero.
    #[inline]
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.d as usize
    }

    pub fn is_odd(&self) -> bool {
        !self.d.is_multiple_of(2)
    }

    pub fn is_prime(&self) -> bool {
        self.is_prime
    }

    /// `n` with `d = n^2 + 3`, when it exists.
    pub fn n_sq_plus_3(&self) -> Option<u64> {
        self.n_sq_plus_3
    }

    pub fn mod4(&self) -> u64 {
        self.d % 4
    }

    pub fn mod8(&self) -> u64 {
        self.d % 8
    }

    /// Canonical representative of `i` modulo `d` in `0..d`.
    #[inline]
    pub fn reduce(&self, i: i64) -> usize {
        i.rem_euclid(self.d as i64) as usize
    }

    /// Multiplicative inverse of 2 modulo an odd `d`.
    pub fn half(&self) -> Option<usize> {
        self.is_odd().then(|| self.d.div_ceil(2) as usize)
    }

    /// Odd prime with `d ≡ 3 mod 4`, the setting of Legendre vectors.
    pub fn is_prime_3_mod_4(&self) -> bool {
        self.is_prime && self.mod4() == 3
    }
}

/// `Some(r)` when `n = r^2`.
pub fn exact_sqrt(n: u64) -> Option<u64> {
    let mut r = libm::sqrt(n as f64) as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    (r * r == n).then_some(r)
}

/// Deterministic trial-division primality test for `n ≤ MAX_DIM`.
pub fn is_prime(n: u64) -> Result<bool> {
    if n > MAX_DIM {
        return Err(Error::DimensionTooLarge(n));
    }
    if n < 2 {
        return Ok(false);
    }
    if n < 4 {
        return Ok(true);
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return Ok(false);
    }
    let mut f = 5u64;
    while f * f <= n {
        if n.is_multiple_of(f) || n.is_multiple_of(f + 2) {
            return Ok(false);
        }
        f += 6;
    }
    Ok(true)
}
