//! Legendre vectors: Ansatz vectors whose phases take one value `x1` on the
//! quadratic residues and `-1/x1` on the non-residues, for prime `d ≡ 3 mod 4`.
//!
//! Counting conventions follow Perron: a *Rest* is a quadratic residue or 0,
//! a *Nichtrest* is anything else.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::ansatz::{self, AnsatzVector};
use crate::dim::{self, Dim};
use crate::error::{Error, Result};
use crate::verify;
use crate::wh::{sqrt_real, WeylHeisenberg};

fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut b = base as u128 % m128;
    let mut acc = 1u128 % m128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Legendre symbol `(n/p)` by Euler's criterion.
pub fn legendre_symbol(n: i64, p: u64) -> Result<i8> {
    if p < 3 || p.is_multiple_of(2) || !dim::is_prime(p).unwrap_or(false) {
        return Err(Error::NotOddPrime(p as i64));
    }
    let r = (n as i128).rem_euclid(p as i128) as u64;
    if r == 0 {
        return Ok(0);
    }
    Ok(if mod_pow(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    })
}

fn require_prime_3_mod_4(dim: Dim) -> Result<()> {
    if !dim.is_prime_3_mod_4() {
        return Err(Error::UnsupportedDimension {
            d: dim.get(),
            reason: "Legendre vectors need a prime d ≡ 3 mod 4",
        });
    }
    Ok(())
}

/// Legendre symbols of `0..p`, computed once per dimension.
#[derive(Debug, Clone)]
pub struct ResidueTable {
    symbols: Vec<i8>,
}

impl ResidueTable {
    pub fn new(p: u64) -> Result<Self> {
        let symbols = (0..p as i64)
            .map(|n| legendre_symbol(n, p))
            .collect::<Result<Vec<_>>>()?;
        Ok(ResidueTable { symbols })
    }

    pub fn symbol(&self, n: i64) -> i8 {
        self.symbols[n.rem_euclid(self.symbols.len() as i64) as usize]
    }

    /// Perron's Rest: a residue or 0.
    pub fn is_rest(&self, n: i64) -> bool {
        self.symbol(n) >= 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PerronCounts {
    pub p: u64,
    pub a: i64,
    pub reste_from_reste: u64,
    pub nichtreste_from_reste: u64,
    pub reste_from_nichtreste: u64,
    pub nichtreste_from_nichtreste: u64,
}

impl PerronCounts {
    /// The values predicted by Perron's two theorems:
    /// `((p+1)/4, (p+1)/4, (p+1)/4, (p-3)/4)`.
    pub fn predicted(p: u64, a: i64) -> Self {
        PerronCounts {
            p,
            a,
            reste_from_reste: (p + 1) / 4,
            nichtreste_from_reste: (p + 1) / 4,
            reste_from_nichtreste: (p + 1) / 4,
            nichtreste_from_nichtreste: (p - 3) / 4,
        }
    }

    pub fn matches_prediction(&self) -> bool {
        *self == Self::predicted(self.p, self.a)
    }
}

/// Classify `r + a` for every Rest `r` and `n + a` for every Nichtrest `n`.
pub fn perron_counts(p: u64, a: i64) -> Result<PerronCounts> {
    let dim = Dim::new(p)?;
    require_prime_3_mod_4(dim)?;
    perron_counts_with(&ResidueTable::new(p)?, p, a)
}

/// [`perron_counts`] against a precomputed table for `p`.
pub fn perron_counts_with(table: &ResidueTable, p: u64, a: i64) -> Result<PerronCounts> {
    if a.rem_euclid(p as i64) == 0 {
        return Err(Error::ShiftNotCoprime { a, p });
    }
    let mut c = PerronCounts {
        p,
        a,
        reste_from_reste: 0,
        nichtreste_from_reste: 0,
        reste_from_nichtreste: 0,
        nichtreste_from_nichtreste: 0,
    };
    for n in 0..p as i64 {
        match (table.is_rest(n), table.is_rest(n + a)) {
            (true, true) => c.reste_from_reste += 1,
            (true, false) => c.nichtreste_from_reste += 1,
            (false, true) => c.reste_from_nichtreste += 1,
            (false, false) => c.nichtreste_from_nichtreste += 1,
        }
    }
    Ok(c)
}

/// All primes `p ≡ 3 mod 4` with `p ≤ limit`.
pub fn primes_3_mod_4(limit: u64) -> Vec<u64> {
    (3..=limit)
        .step_by(4)
        .filter(|&p| dim::is_prime(p).unwrap_or(false))
        .collect()
}

/// The closed-form phase `x1` solving the X-overlap equation.
///
/// For `d ≡ 3 mod 8`: `x1 = (√(-(√(d+1)+1)) - 1)/√x0`.
/// For `d ≡ 7 mod 8`: `x1 = (√(-(d-3)(√(d+1)+1)) - x0)/(√(d+1)·√x0)`.
/// The inner square root is `beta_sign · i·√|radicand|`.
pub fn legendre_x1(dim: Dim, beta_sign: i8) -> Result<Complex64> {
    require_prime_3_mod_4(dim)?;
    let point = rescaled_residue_component(dim, 1, beta_sign);
    Ok(point / sqrt_real(ansatz::x0_value(dim, false)))
}

/// `√x0 · x1` on either branch of `√(d+1)` (`sqrt_sign = -1` is the ghost branch).
fn rescaled_residue_component(dim: Dim, sqrt_sign: i8, beta_sign: i8) -> Complex64 {
    let d = dim.get() as f64;
    let s = f64::from(sqrt_sign) * libm::sqrt(d + 1.0);
    let x0 = -2.0 - s;
    let sign = f64::from(beta_sign);
    if dim.mod8() == 3 {
        sqrt_real(-(s + 1.0)) * sign - 1.0
    } else {
        (sqrt_real(-(d - 3.0) * (s + 1.0)) * sign - x0) / s
    }
}

/// Rescaled Legendre point `(x0, x_1, …, x_{d-1})` on either branch of
/// `√(d+1)`. Residue indices carry `√x0·x1`, the others `-x0/(√x0·x1)`; on the
/// default branch this is the rescaled Legendre vector, on the ghost branch its
/// Galois conjugate (real components, not unit phases).
pub fn rescaled_point(dim: Dim, sqrt_sign: i8, beta_sign: i8) -> Result<Vec<Complex64>> {
    require_prime_3_mod_4(dim)?;
    let table = ResidueTable::new(dim.get())?;
    let s = f64::from(sqrt_sign) * libm::sqrt(dim.get() as f64 + 1.0);
    let x0 = -2.0 - s;
    let res = rescaled_residue_component(dim, sqrt_sign, beta_sign);
    let non = -x0 / res;
    Ok((0..dim.get() as i64)
        .map(|j| match table.symbol(j) {
            0 => Complex64::new(x0, 0.0),
            1 => res,
            _ => non,
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct LegendreVector {
    x1: Complex64,
    beta_sign: i8,
    ansatz: AnsatzVector,
}

impl LegendreVector {
    pub fn x1(&self) -> Complex64 {
        self.x1
    }

    pub fn beta_sign(&self) -> i8 {
        self.beta_sign
    }

    pub fn ansatz(&self) -> &AnsatzVector {
        &self.ansatz
    }

    pub fn dim(&self) -> Dim {
        self.ansatz.dim()
    }
}

/// Ansatz vector with `v_j = x1` on residues and `-1/x1` elsewhere, for any unit `x1`.
pub fn legendre_ansatz(dim: Dim, x1: Complex64) -> Result<AnsatzVector> {
    require_prime_3_mod_4(dim)?;
    let table = ResidueTable::new(dim.get())?;
    let other = -x1.inv();
    let phases = (1..dim.get() as i64)
        .map(|j| if table.symbol(j) == 1 { x1 } else { other })
        .collect();
    AnsatzVector::from_phases(dim, phases, false)
}

pub fn build_legendre_vector(dim: Dim, beta_sign: i8) -> Result<LegendreVector> {
    let x1 = legendre_x1(dim, beta_sign)?;
    Ok(LegendreVector {
        x1,
        beta_sign,
        ansatz: legendre_ansatz(dim, x1)?,
    })
}

/// Closed form of `⟨v|X^{-2j}|v⟩` for a Legendre vector with phase `x1`.
///
/// Residue `j`, `d ≡ 3 mod 8`: `(d-3)/2 - (d-3)/4·x1⁻² - (d+1)/4·x1² + 2√x0/x1`.
/// Residue `j`, `d ≡ 7 mod 8`: `(d-3)/2 - (d+1)/4·x1⁻² - (d-3)/4·x1² - 2√x0·x1`.
/// Non-residue `j` substitutes `x1 ↦ -1/x1`.
pub fn lemma1_closed_form(dim: Dim, x1: Complex64, j_is_residue: bool) -> Result<Complex64> {
    require_prime_3_mod_4(dim)?;
    let d = dim.get() as f64;
    let x = if j_is_residue { x1 } else { -x1.inv() };
    let r = sqrt_real(ansatz::x0_value(dim, false));
    let (x2, xm2) = (x * x, (x * x).inv());
    let base = Complex64::new((d - 3.0) / 2.0, 0.0);
    Ok(if dim.mod8() == 3 {
        base - xm2 * ((d - 3.0) / 4.0) - x2 * ((d + 1.0) / 4.0) + r / x * 2.0
    } else {
        base - xm2 * ((d + 1.0) / 4.0) - x2 * ((d - 3.0) / 4.0) - r * x * 2.0
    })
}

/// Largest deviation between the closed forms and the direct autocorrelations,
/// over `j = 1..d-1`, for the Legendre vector with phase `x1`.
pub fn lemma1_max_deviation(dim: Dim, x1: Complex64) -> Result<f64> {
    let av = legendre_ansatz(dim, x1)?;
    let table = ResidueTable::new(dim.get())?;
    let v = av.to_v_form();
    let wh = WeylHeisenberg::new(dim);
    let mut worst = 0.0f64;
    for j in 1..dim.get() as i64 {
        let direct = wh.shift_overlap(v.components(), -2 * j);
        let closed = lemma1_closed_form(dim, x1, table.symbol(j) == 1)?;
        worst = worst.max((direct - closed).norm());
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Solves the X-overlap equation and is a SIC fiducial.
    Sic,
    /// Solves the X-overlap equation but is not a SIC fiducial.
    XOverlapOnly,
    /// Fails the X-overlap equation.
    Neither,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Sic => "sic",
            Verdict::XOverlapOnly => "xoverlap-only",
            Verdict::Neither => "neither",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchReport {
    pub beta_sign: i8,
    pub x_overlap_residual: f64,
    pub sic_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LegendreClassification {
    pub d: u64,
    pub mod8: u64,
    pub branches: [BranchReport; 2],
    pub tolerance: f64,
}

impl LegendreClassification {
    /// Worst X-overlap residual over both branches.
    pub fn x_overlap_residual(&self) -> f64 {
        self.branches
            .iter()
            .map(|b| b.x_overlap_residual)
            .fold(0.0, f64::max)
    }

    /// Worst SIC residual over both branches.
    pub fn sic_residual(&self) -> f64 {
        self.branches
            .iter()
            .map(|b| b.sic_residual)
            .fold(0.0, f64::max)
    }

    pub fn verdict(&self) -> Verdict {
        if self.x_overlap_residual() > self.tolerance {
            Verdict::Neither
        } else if self.sic_residual() <= self.tolerance {
            Verdict::Sic
        } else {
            Verdict::XOverlapOnly
        }
    }
}

pub fn classify_legendre(dim: Dim) -> Result<LegendreClassification> {
    let branch = |sign: i8| -> Result<BranchReport> {
        let lv = build_legendre_vector(dim, sign)?;
        let psi = lv.ansatz().to_normalized();
        Ok(BranchReport {
            beta_sign: sign,
            x_overlap_residual: ansatz::x_overlap_residual(&psi)?,
            sic_residual: verify::sic_residual(&psi),
        })
    };
    Ok(LegendreClassification {
        d: dim.get(),
        mod8: dim.mod8(),
        branches: [branch(1)?, branch(-1)?],
        tolerance: verify::default_tolerance(dim),
    })
}
