//! Weyl–Heisenberg action in the standard representation.
//!
//! `Z|r⟩ = ω^r|r⟩`, `X|r⟩ = |r+1⟩` and `D_{j,k} = τ^{jk} X^j Z^k` with
//! `ω = e^{2πi/d}` and `τ = -e^{πi/d}`. Nothing here builds a d×d matrix; every
//! operator is applied as a cyclic shift followed by a diagonal phase.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::dim::Dim;
use crate::error::{Error, Result};

/// Tolerance used when checking that a vector tagged as normalized has unit norm.
pub const NORM_TOL: f64 = 1e-9;

/// Table of the `2d`-th roots of unity `e^{iπm/d}`, from which every power of
/// `ω` and `τ` is read off. Entries are evaluated from sin/cos directly.
#[derive(Debug, Clone)]
pub struct PhaseConstants {
    dim: Dim,
    roots: Vec<Complex64>,
}

impl PhaseConstants {
    pub fn new(dim: Dim) -> Self {
        let d = dim.get();
        let roots = (0..2 * d)
            .map(|m| {
                let theta = PI * m as f64 / d as f64;
                Complex64::new(libm::cos(theta), libm::sin(theta))
            })
            .collect();
        PhaseConstants { dim, roots }
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    /// `ω = e^{2πi/d}`.
    pub fn omega(&self) -> Complex64 {
        self.omega_pow(1)
    }

    /// `τ = -e^{πi/d}`.
    pub fn tau(&self) -> Complex64 {
        self.tau_pow(1)
    }

    /// `ω^n` for any integer `n`.
    #[inline]
    pub fn omega_pow(&self, n: i64) -> Complex64 {
        let two_d = 2 * self.dim.get() as i128;
        self.roots[(2 * n as i128).rem_euclid(two_d) as usize]
    }

    /// `τ^n = e^{iπ n (d+1)/d}` for any integer `n`.
    #[inline]
    pub fn tau_pow(&self, n: i64) -> Complex64 {
        let d = self.dim.get() as i128;
        self.roots[(n as i128 * (d + 1)).rem_euclid(2 * d) as usize]
    }
}

/// How the components of a [`CVec`] are scaled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Form {
    /// Unit vector `Ψ`.
    Normalized,
    /// `v = (√x0, v_1, …, v_{d-1})` with unit phases past index 0.
    VForm,
    /// `x = √x0 · v`, so `x_0 = x0` is real.
    Rescaled,
    /// Any other complex vector.
    General,
}

impl Form {
    pub fn name(&self) -> &'static str {
        match self {
            Form::Normalized => "normalized",
            Form::VForm => "v-form",
            Form::Rescaled => "rescaled",
            Form::General => "general",
        }
    }
}

/// Dense complex vector of length `d` tagged with its [`Form`].
#[derive(Debug, Clone, PartialEq)]
pub struct CVec {
    dim: Dim,
    components: Vec<Complex64>,
    form: Form,
}

impl CVec {
    pub fn new(dim: Dim, components: Vec<Complex64>, form: Form) -> Result<Self> {
        if components.len() != dim.len() {
            return Err(Error::DimensionMismatch {
                expected: dim.len(),
                found: components.len(),
            });
        }
        let v = CVec {
            dim,
            components,
            form,
        };
        if form == Form::Normalized {
            let n = v.norm();
            if (n - 1.0).abs() > NORM_TOL {
                return Err(Error::InvariantViolation {
                    name: "unit-norm",
                    detail: alloc::format!("norm is {n}"),
                });
            }
        }
        Ok(v)
    }

    /// A general vector; the dimension is taken from the length.
    pub fn from_components(components: Vec<Complex64>) -> Result<Self> {
        let dim = Dim::new(components.len() as u64)?;
        CVec::new(dim, components, Form::General)
    }

    /// The basis vector `|r⟩`.
    pub fn basis(dim: Dim, r: i64) -> Self {
        let mut components = alloc::vec![Complex64::new(0.0, 0.0); dim.len()];
        components[dim.reduce(r)] = Complex64::new(1.0, 0.0);
        CVec {
            dim,
            components,
            form: Form::Normalized,
        }
    }

    pub(crate) fn from_parts_unchecked(dim: Dim, components: Vec<Complex64>, form: Form) -> Self {
        debug_assert_eq!(components.len(), dim.len());
        CVec {
            dim,
            components,
            form,
        }
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn form(&self) -> Form {
        self.form
    }

    pub fn components(&self) -> &[Complex64] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Complex64> {
        self.components
    }

    pub fn norm_sqr(&self) -> f64 {
        self.components.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.norm_sqr())
    }

    /// Unit vector in the same direction, re-tagged as normalized.
    ///
    /// Rescaled input is first divided by `√x0` (imaginary branch for `x0 < 0`)
    /// so the result carries the phase convention of `N·v`; plain division by
    /// the norm would multiply it by `i` and flip the sign of the X-overlap.
    pub fn to_normalized(&self) -> CVec {
        let mut comps = self.components.clone();
        if self.form == Form::Rescaled {
            let x0 = comps[0].re;
            let root = sqrt_real(x0);
            if root.norm_sqr() > 0.0 {
                for c in comps.iter_mut() {
                    *c /= root;
                }
            }
        }
        let n = libm::sqrt(comps.iter().map(|c| c.norm_sqr()).sum::<f64>());
        if n > 0.0 {
            for c in comps.iter_mut() {
                *c /= n;
            }
        }
        CVec::from_parts_unchecked(self.dim, comps, Form::Normalized)
    }

    /// Multiply every component by `c`; the form tag becomes `General` unless
    /// `|c| = 1` and the vector was normalized.
    pub fn scaled(&self, c: Complex64) -> CVec {
        let form = if self.form == Form::Normalized && (c.norm() - 1.0).abs() < 1e-15 {
            Form::Normalized
        } else {
            Form::General
        };
        CVec::from_parts_unchecked(
            self.dim,
            self.components.iter().map(|z| z * c).collect(),
            form,
        )
    }
}

/// `√x` for real `x`: `i√|x|` when negative.
pub fn sqrt_real(x: f64) -> Complex64 {
    if x < 0.0 {
        Complex64::new(0.0, libm::sqrt(-x))
    } else {
        Complex64::new(libm::sqrt(x), 0.0)
    }
}

/// Precomputed phases for one dimension; the methods act on raw component slices.
#[derive(Debug, Clone)]
pub struct WeylHeisenberg {
    phases: PhaseConstants,
}

impl WeylHeisenberg {
    pub fn new(dim: Dim) -> Self {
        WeylHeisenberg {
            phases: PhaseConstants::new(dim),
        }
    }

    pub fn dim(&self) -> Dim {
        self.phases.dim
    }

    pub fn phases(&self) -> &PhaseConstants {
        &self.phases
    }

    fn check_len(&self, psi: &[Complex64]) -> Result<()> {
        if psi.len() != self.dim().len() {
            return Err(Error::DimensionMismatch {
                expected: self.dim().len(),
                found: psi.len(),
            });
        }
        Ok(())
    }

    /// `D_{j,k} ψ`: component `r` is `τ^{jk} ω^{k(r-j)} ψ_{r-j}`.
    pub fn displace(&self, psi: &[Complex64], j: i64, k: i64) -> Result<Vec<Complex64>> {
        self.check_len(psi)?;
        let dim = self.dim();
        let (j, k) = (dim.reduce(j), dim.reduce(k));
        let d = dim.len();
        let pre = self.phases.tau_pow((j * k) as i64);
        Ok((0..d)
            .map(|r| {
                let src = (r + d - j) % d;
                pre * self.phases.omega_pow((k * src) as i64) * psi[src]
            })
            .collect())
    }

    /// `⟨ψ|D_{j,k}|ψ⟩` without materializing `D_{j,k}ψ`.
    pub fn overlap(&self, psi: &[Complex64], j: i64, k: i64) -> Complex64 {
        let dim = self.dim();
        let (j, k) = (dim.reduce(j), dim.reduce(k));
        let d = dim.len();
        let mut acc = Complex64::new(0.0, 0.0);
        for r in 0..d {
            let src = (r + d - j) % d;
            acc += psi[r].conj() * self.phases.omega_pow((k * src) as i64) * psi[src];
        }
        self.phases.tau_pow((j * k) as i64) * acc
    }

    /// `⟨ψ|X^m|ψ⟩ = Σ_r ψ*_r ψ_{r-m}`.
    pub fn shift_overlap(&self, psi: &[Complex64], m: i64) -> Complex64 {
        let d = self.dim().len();
        let m = self.dim().reduce(m);
        (0..d).map(|r| psi[r].conj() * psi[(r + d - m) % d]).sum()
    }

    /// `Z^k ψ`.
    pub fn clock(&self, psi: &[Complex64], k: i64) -> Vec<Complex64> {
        let k = self.dim().reduce(k) as i64;
        psi.iter()
            .enumerate()
            .map(|(r, c)| self.phases.omega_pow(k * r as i64) * c)
            .collect()
    }

    /// Unitary DFT with kernel `ω^{rs}/√d`.
    pub fn dft(&self, psi: &[Complex64]) -> Vec<Complex64> {
        let d = self.dim().len();
        let scale = 1.0 / libm::sqrt(d as f64);
        (0..d)
            .map(|r| {
                let s: Complex64 = (0..d)
                    .map(|s| self.phases.omega_pow(((r * s) % d) as i64) * psi[s])
                    .sum();
                s * scale
            })
            .collect()
    }
}

pub fn apply_displacement(psi: &CVec, j: i64, k: i64) -> CVec {
    let wh = WeylHeisenberg::new(psi.dim());
    let out = wh
        .displace(psi.components(), j, k)
        .expect("length fixed by CVec invariant");
    let form = if psi.form() == Form::Normalized {
        Form::Normalized
    } else {
        Form::General
    };
    CVec::from_parts_unchecked(psi.dim(), out, form)
}

/// `⟨φ|ψ⟩`, conjugate-linear in the first argument.
pub fn inner_product(phi: &CVec, psi: &CVec) -> Result<Complex64> {
    inner_product_slices(phi.components(), psi.components())
}

pub fn inner_product_slices(phi: &[Complex64], psi: &[Complex64]) -> Result<Complex64> {
    if phi.len() != psi.len() {
        return Err(Error::DimensionMismatch {
            expected: phi.len(),
            found: psi.len(),
        });
    }
    Ok(phi.iter().zip(psi).map(|(a, b)| a.conj() * b).sum())
}

pub fn dft(psi: &CVec) -> CVec {
    let wh = WeylHeisenberg::new(psi.dim());
    let form = if psi.form() == Form::Normalized {
        Form::Normalized
    } else {
        Form::General
    };
    CVec::from_parts_unchecked(psi.dim(), wh.dft(psi.components()), form)
}
