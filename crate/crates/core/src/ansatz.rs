//! The almost-flat Ansatz `Ψ = N(√x0, v_1, …, v_{d-1})` in odd dimension, with
//! `x0 = -2 - √(d+1)`, `|v_j| = 1` and `v_{d-j} = -v_j*`. Also here: the
//! Z-overlap and X-overlap residuals and the displacement-sum identities.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::dim::Dim;
use crate::error::{Error, Result};
use crate::wh::{sqrt_real, CVec, Form, WeylHeisenberg};

const ANSATZ_TOL: f64 = 1e-12;

/// An almost-flat candidate vector. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct AnsatzVector {
    dim: Dim,
    ghost: bool,
    x0: f64,
    sqrt_x0: Complex64,
    /// `v_1..v_{d-1}`; index `j - 1` holds `v_j`.
    phases: Vec<Complex64>,
    /// Kept as given so angle files round-trip bit for bit.
    angles: Vec<f64>,
    norm_sq: f64,
}

fn require_odd(dim: Dim) -> Result<()> {
    if !dim.is_odd() {
        return Err(Error::UnsupportedDimension {
            d: dim.get(),
            reason: "the almost-flat Ansatz is only built for odd d",
        });
    }
    Ok(())
}

/// `x0 = -2 ∓ √(d+1)`; the ghost branch takes the plus sign.
pub fn x0_value(dim: Dim, ghost: bool) -> f64 {
    let s = libm::sqrt(dim.get() as f64 + 1.0);
    if ghost {
        -2.0 + s
    } else {
        -2.0 - s
    }
}

/// Number of free angles, `(d-1)/2`.
pub fn free_angle_count(dim: Dim) -> usize {
    (dim.len() - 1) / 2
}

impl AnsatzVector {
    /// Build from the free angles `θ_1..θ_{(d-1)/2}`: `v_j = e^{iθ_j}` and
    /// `v_{d-j} = -e^{-iθ_j}`.
    pub fn from_angles(dim: Dim, angles: &[f64], ghost: bool) -> Result<Self> {
        require_odd(dim)?;
        if dim.get() < 3 {
            return Err(Error::InvalidDimension(dim.get()));
        }
        let half = free_angle_count(dim);
        if angles.len() != half {
            return Err(Error::WrongAngleCount {
                expected: half,
                found: angles.len(),
            });
        }
        let d = dim.len();
        let mut phases = alloc::vec![Complex64::new(0.0, 0.0); d - 1];
        for (idx, &theta) in angles.iter().enumerate() {
            let j = idx + 1;
            let v = Complex64::new(libm::cos(theta), libm::sin(theta));
            phases[j - 1] = v;
            phases[d - j - 1] = -v.conj();
        }
        Ok(Self::assemble(dim, phases, angles.to_vec(), ghost))
    }

    /// Build from all `d-1` phases, checking the Ansatz invariants.
    pub fn from_phases(dim: Dim, phases: Vec<Complex64>, ghost: bool) -> Result<Self> {
        require_odd(dim)?;
        let d = dim.len();
        if phases.len() != d - 1 {
            return Err(Error::DimensionMismatch {
                expected: d - 1,
                found: phases.len(),
            });
        }
        for (idx, v) in phases.iter().enumerate() {
            let j = idx + 1;
            if (v.norm() - 1.0).abs() > ANSATZ_TOL {
                return Err(Error::InvariantViolation {
                    name: "unit-phase",
                    detail: alloc::format!("|v_{j}| = {}", v.norm()),
                });
            }
            if (phases[d - j - 1] + v.conj()).norm() > ANSATZ_TOL {
                return Err(Error::InvariantViolation {
                    name: "conjugation-symmetry",
                    detail: alloc::format!("v_{} != -conj(v_{j})", d - j),
                });
            }
        }
        let angles = phases[..free_angle_count(dim)]
            .iter()
            .map(|v| v.arg())
            .collect();
        Ok(Self::assemble(dim, phases, angles, ghost))
    }

    fn assemble(dim: Dim, phases: Vec<Complex64>, angles: Vec<f64>, ghost: bool) -> Self {
        let x0 = x0_value(dim, ghost);
        // |√x0|² = |x0|, so this matches 1/(d-1-x0) on the default branch and
        // still normalizes on the ghost branch.
        let norm_sq = 1.0 / (dim.get() as f64 - 1.0 + x0.abs());
        AnsatzVector {
            dim,
            ghost,
            x0,
            sqrt_x0: sqrt_real(x0),
            phases,
            angles,
            norm_sq,
        }
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn ghost(&self) -> bool {
        self.ghost
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn sqrt_x0(&self) -> Complex64 {
        self.sqrt_x0
    }

    /// `N²`.
    pub fn norm_sq(&self) -> f64 {
        self.norm_sq
    }

    /// `v_1..v_{d-1}`.
    pub fn phases(&self) -> &[Complex64] {
        &self.phases
    }

    /// `v_j` for `j` in `1..d`.
    pub fn phase(&self, j: usize) -> Complex64 {
        self.phases[j - 1]
    }

    /// `θ_j` for `j = 1..(d-1)/2`: the angles given to [`Self::from_angles`],
    /// or `arg v_j` for vectors built from phases.
    pub fn angles(&self) -> Vec<f64> {
        self.angles.clone()
    }

    /// `(√x0, v_1, …, v_{d-1})`.
    pub fn to_v_form(&self) -> CVec {
        let mut comps = Vec::with_capacity(self.dim.len());
        comps.push(self.sqrt_x0);
        comps.extend_from_slice(&self.phases);
        CVec::from_parts_unchecked(self.dim, comps, Form::VForm)
    }

    /// `N·(√x0, v_1, …, v_{d-1})`.
    pub fn to_normalized(&self) -> CVec {
        let n = libm::sqrt(self.norm_sq);
        let mut comps = Vec::with_capacity(self.dim.len());
        comps.push(self.sqrt_x0 * n);
        comps.extend(self.phases.iter().map(|v| v * n));
        CVec::from_parts_unchecked(self.dim, comps, Form::Normalized)
    }

    /// `(x0, √x0·v_1, …, √x0·v_{d-1})`.
    pub fn to_rescaled(&self) -> CVec {
        let mut comps = Vec::with_capacity(self.dim.len());
        comps.push(Complex64::new(self.x0, 0.0));
        comps.extend(self.phases.iter().map(|v| v * self.sqrt_x0));
        CVec::from_parts_unchecked(self.dim, comps, Form::Rescaled)
    }
}

pub fn build_ansatz(dim: Dim, angles: &[f64], ghost: bool) -> Result<AnsatzVector> {
    AnsatzVector::from_angles(dim, angles, ghost)
}

/// `max_{k=1..d-1} |√(d+1)⟨Ψ|Z^kΨ⟩ - 1|` on the normalized input.
pub fn z_overlap_residual(psi: &CVec) -> f64 {
    let psi = psi.to_normalized();
    let wh = WeylHeisenberg::new(psi.dim());
    let s = libm::sqrt(psi.dim().get() as f64 + 1.0);
    let p = psi.components();
    (1..psi.dim().len() as i64)
        .map(|k| {
            let z: Complex64 = p
                .iter()
                .enumerate()
                .map(|(r, c)| c.norm_sqr() * wh.phases().omega_pow(k * r as i64))
                .sum();
            (z * s - 1.0).norm()
        })
        .fold(0.0, f64::max)
}

/// Per-`j` residuals `√(d+1)⟨Ψ|X^{-2j}Ψ⟩ - sign·ψ_j²/|ψ_j|²` for `j = 1..d-1`,
/// index `j - 1`.
///
/// `sign = 1` is the X-overlap equation for a vector whose first component is
/// imaginary; `sign = -1` is the form it takes after multiplying by `i`.
pub fn x_overlap_residuals_signed(psi: &CVec, sign: f64) -> Result<Vec<Complex64>> {
    require_odd(psi.dim())?;
    let psi = psi.to_normalized();
    let p = psi.components();
    if let Some(index) = (1..p.len()).find(|&j| p[j].norm_sqr() == 0.0) {
        return Err(Error::DegenerateComponent { index });
    }
    let wh = WeylHeisenberg::new(psi.dim());
    let s = libm::sqrt(psi.dim().get() as f64 + 1.0);
    Ok((1..p.len())
        .map(|j| {
            let lhs = wh.shift_overlap(p, -2 * j as i64) * s;
            lhs - p[j] * p[j] / p[j].norm_sqr() * sign
        })
        .collect())
}

pub fn x_overlap_residuals(psi: &CVec) -> Result<Vec<Complex64>> {
    x_overlap_residuals_signed(psi, 1.0)
}

/// `max_{j=1..d-1} |√(d+1)⟨Ψ|X^{-2j}Ψ⟩ - ψ_j²/|ψ_j|²|`.
pub fn x_overlap_residual(psi: &CVec) -> Result<f64> {
    Ok(x_overlap_residuals(psi)?
        .iter()
        .map(|r| r.norm())
        .fold(0.0, f64::max))
}

/// The v-form X-overlap residuals `⟨v|X^{-2j}|v⟩ - (√(d+1)+1) v_j²`, `j = 1..d-1`.
pub fn v_form_x_residuals(av: &AnsatzVector) -> Vec<Complex64> {
    let v = av.to_v_form();
    let wh = WeylHeisenberg::new(av.dim());
    let s = libm::sqrt(av.dim().get() as f64 + 1.0);
    let c = v.components();
    (1..c.len())
        .map(|j| wh.shift_overlap(c, -2 * j as i64) - c[j] * c[j] * (s + 1.0))
        .collect()
}

/// Two sides of an identity evaluated numerically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityReport {
    pub j: i64,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub deviation: f64,
}

impl IdentityReport {
    fn new(j: i64, lhs: Complex64, rhs: Complex64) -> Self {
        IdentityReport {
            j,
            lhs,
            rhs,
            deviation: (lhs - rhs).norm(),
        }
    }
}

/// `⟨Ψ|X^{-2j}Ψ⟩ + Σ_{k=1}^{d-1}⟨Ψ|D_{-2j,k}Ψ⟩ = d·ψ*_{-j}·ψ_j`, valid for every
/// vector in odd dimension. Evaluated on the raw components.
pub fn displacement_row_identity(psi: &CVec, j: i64) -> Result<IdentityReport> {
    require_odd(psi.dim())?;
    let dim = psi.dim();
    let wh = WeylHeisenberg::new(dim);
    let p = psi.components();
    let m = -2 * j;
    let lhs: Complex64 = (0..dim.len() as i64).map(|k| wh.overlap(p, m, k)).sum();
    let rhs = p[dim.reduce(-j)].conj() * p[dim.reduce(j)] * dim.get() as f64;
    Ok(IdentityReport::new(j, lhs, rhs))
}

/// `Σ_{k=1}^{d-1}⟨Ψ|D_{j,k}Ψ⟩` against `-√(d+1)⟨Ψ|X^jΨ⟩` on the normalized
/// input. For Ansatz vectors this holds at `j` exactly when the X-overlap
/// equation holds at `-j/2`.
pub fn displacement_sum_relation(psi: &CVec, j: i64) -> Result<IdentityReport> {
    require_odd(psi.dim())?;
    let psi = psi.to_normalized();
    let dim = psi.dim();
    let wh = WeylHeisenberg::new(dim);
    let p = psi.components();
    let lhs: Complex64 = (1..dim.len() as i64).map(|k| wh.overlap(p, j, k)).sum();
    let rhs = -wh.shift_overlap(p, j) * libm::sqrt(dim.get() as f64 + 1.0);
    Ok(IdentityReport::new(j, lhs, rhs))
}

/// `Z^k ψ`. Z-shifts preserve every Ansatz relation, so the form tag is kept.
pub fn z_shift(psi: &CVec, k: i64) -> CVec {
    let wh = WeylHeisenberg::new(psi.dim());
    CVec::from_parts_unchecked(psi.dim(), wh.clock(psi.components(), k), psi.form())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::known;
    use alloc::vec;
    use core::f64::consts::PI;
    use proptest::prelude::*;

    fn dim(d: u64) -> Dim {
        Dim::new(d).unwrap()
    }

    fn lcg_angles(n: usize, seed: u64) -> Vec<f64> {
        let mut s = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
        (0..n)
            .map(|_| {
                s = s
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                (s >> 11) as f64 / (1u64 << 53) as f64 * 2.0 * PI
            })
            .collect()
    }

    #[test]
    fn d3_zero_angle() {
        let av = build_ansatz(dim(3), &[0.0], false).unwrap();
        assert_eq!(av.x0(), -4.0);
        let v = av.to_v_form();
        let c = v.components();
        assert!((c[0] - Complex64::new(0.0, 2.0)).norm() < 1e-15);
        assert!((c[1] - 1.0).norm() < 1e-15);
        assert!((c[2] + 1.0).norm() < 1e-15);
        assert!((av.sqrt_x0() * av.sqrt_x0() - av.x0()).norm() < 1e-12);
    }

    #[test]
    fn d7_x0_and_normalization() {
        let av = build_ansatz(dim(7), &[0.3, 1.1, -2.0], false).unwrap();
        assert!((av.x0() - (-4.828_427_124_7)).abs() < 1e-10);
        assert!(((av.x0() + 2.0).powi(2) - 8.0).abs() < 1e-12);
        assert!((av.norm_sq() - 0.092_349_5).abs() < 1e-7);
        assert!((av.norm_sq() - 1.0 / (8.0 + 2.0 * libm::sqrt(2.0))).abs() < 1e-15);
        assert!(av.sqrt_x0().im > 0.0);
        let n = av.to_normalized();
        assert!((n.norm() - 1.0).abs() < 1e-13);
        assert!(z_overlap_residual(&n) < 1e-12);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            build_ansatz(dim(7), &[0.0, 0.0], false),
            Err(Error::WrongAngleCount {
                expected: 3,
                found: 2
            })
        );
        assert!(matches!(
            build_ansatz(dim(8), &[0.0; 3], false),
            Err(Error::UnsupportedDimension { .. })
        ));
        let bad = vec![Complex64::new(1.0, 0.0); 6];
        assert!(matches!(
            AnsatzVector::from_phases(dim(7), bad, false),
            Err(Error::InvariantViolation {
                name: "conjugation-symmetry",
                ..
            })
        ));
    }

    #[test]
    fn rescaled_form_relations() {
        let av = build_ansatz(dim(7), &lcg_angles(3, 5), false).unwrap();
        let x = av.to_rescaled();
        let c = x.components();
        assert!((c[0].re - av.x0()).abs() < 1e-15);
        for j in 1..7 {
            assert!((c[j].norm_sqr() - (2.0 + 2.0 * libm::sqrt(2.0))).abs() < 1e-12);
            assert!((c[j].conj() - c[7 - j]).norm() < 1e-12);
            assert!((c[j] * c[7 - j] + av.x0()).norm() < 1e-12);
        }
        // the rescaled vector normalizes back to N·v
        let back = x.to_normalized();
        let n = av.to_normalized();
        for (a, b) in back.components().iter().zip(n.components()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn z_residual_of_basis_vector() {
        let e0 = CVec::basis(dim(7), 0);
        assert!((z_overlap_residual(&e0) - (libm::sqrt(8.0) - 1.0)).abs() < 1e-14);
        assert!(z_overlap_residual(&known::d7_x1()) < 1e-12);
    }

    #[test]
    fn x_overlap_on_known_vectors() {
        assert!(x_overlap_residual(&known::d7_x1()).unwrap() < 1e-11);
        assert!(x_overlap_residual(&known::d7_x2()).unwrap() < 1e-11);
        assert!(x_overlap_residual(&known::d19_solution(1)).unwrap() < 1e-11);
        let random = build_ansatz(dim(7), &lcg_angles(3, 17), false).unwrap();
        assert!(x_overlap_residual(&random.to_normalized()).unwrap() > 0.1);
    }

    #[test]
    fn x_overlap_errors() {
        let even = CVec::basis(dim(4), 0);
        assert!(matches!(
            x_overlap_residual(&even),
            Err(Error::UnsupportedDimension { .. })
        ));
        assert_eq!(
            x_overlap_residual(&CVec::basis(dim(5), 0)),
            Err(Error::DegenerateComponent { index: 1 })
        );
    }

    #[test]
    fn phase_sensitivity() {
        let psi = known::d7_x1().to_normalized();
        let rotated = psi.scaled(Complex64::new(0.0, 1.0));
        assert!(x_overlap_residual(&rotated).unwrap() > 1.0);
        let flipped = x_overlap_residuals_signed(&rotated, -1.0).unwrap();
        assert!(flipped.iter().all(|r| r.norm() < 1e-11));
    }

    // Σ_k D_{m,k} built from explicit matrices, τ^{mk} by repeated products.
    fn displacement_sum_matrix(d: usize, m: usize) -> Vec<Vec<Complex64>> {
        let tau = -Complex64::from_polar(1.0, PI / d as f64);
        let omega = Complex64::from_polar(1.0, 2.0 * PI / d as f64);
        let mut out = vec![vec![Complex64::new(0.0, 0.0); d]; d];
        for k in 0..d {
            let mut t = Complex64::new(1.0, 0.0);
            for _ in 0..m * k {
                t *= tau;
            }
            // (X^m Z^k)_{r,s} = δ_{r, s+m} ω^{ks}
            for s in 0..d {
                let mut w = Complex64::new(1.0, 0.0);
                for _ in 0..k * s {
                    w *= omega;
                }
                out[(s + m) % d][s] += t * w;
            }
        }
        out
    }

    #[test]
    fn row_identity_against_matrix_oracle() {
        let d = 5usize;
        let j = 2i64;
        let m = (-2 * j).rem_euclid(d as i64) as usize;
        let mat = displacement_sum_matrix(d, m);
        // d|−j⟩⟨j|
        for r in 0..d {
            for s in 0..d {
                let expect = if r == (d - 2) && s == 2 {
                    d as f64
                } else {
                    0.0
                };
                assert!((mat[r][s] - expect).norm() < 1e-12, "r={r} s={s}");
            }
        }
        for seed in 0..10u64 {
            let a = lcg_angles(2 * d, seed);
            let comps: Vec<_> = (0..d)
                .map(|r| Complex64::new(a[2 * r].cos(), a[2 * r + 1].sin()))
                .collect();
            let psi = CVec::from_components(comps.clone()).unwrap();
            let oracle: Complex64 = (0..d)
                .map(|r| comps[r].conj() * (0..d).map(|s| mat[r][s] * comps[s]).sum::<Complex64>())
                .sum();
            let rep = displacement_row_identity(&psi, j).unwrap();
            assert!(rep.deviation < 1e-12);
            assert!((rep.lhs - oracle).norm() < 1e-12);
        }
    }

    #[test]
    fn row_identity_on_d7_sic() {
        let psi = known::d7_x1().to_normalized();
        for j in 1..7 {
            assert!(displacement_row_identity(&psi, j).unwrap().deviation < 1e-12);
            assert!(displacement_sum_relation(&psi, j).unwrap().deviation < 1e-12);
        }
        assert!(displacement_row_identity(&CVec::basis(dim(4), 1), 1).is_err());
    }

    #[test]
    fn prop1_residuals_scale_together() {
        let dm = dim(7);
        let s = libm::sqrt(8.0);
        for seed in 0..100u64 {
            let av = build_ansatz(dm, &lcg_angles(3, seed), false).unwrap();
            let psi = av.to_normalized();
            let r7 = x_overlap_residuals(&psi).unwrap();
            for j in 1..7i64 {
                let r10 = displacement_sum_relation(&psi, -2 * j).unwrap();
                let r10 = r10.lhs - r10.rhs;
                let expect = r7[j as usize - 1] * ((s - 1.0) / s);
                assert!((r10 - expect).norm() < 1e-12, "seed={seed} j={j}");
            }
        }
    }

    #[test]
    fn v_form_and_normalized_residuals_agree() {
        let dm = dim(7);
        let s = libm::sqrt(8.0);
        for seed in 0..20u64 {
            let av = build_ansatz(dm, &lcg_angles(3, seed), false).unwrap();
            let r7 = x_overlap_residuals(&av.to_normalized()).unwrap();
            let r8 = v_form_x_residuals(&av);
            for (a, b) in r7.iter().zip(&r8) {
                assert!((a - b * (s * av.norm_sq())).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn z_shift_basics() {
        let psi = known::d7_x1().to_normalized();
        assert_eq!(z_shift(&psi, 0), psi);
        let e0 = CVec::basis(dim(7), 0);
        assert_eq!(z_shift(&e0, 3), e0);
        for k in 1..7 {
            assert!(x_overlap_residual(&z_shift(&psi, k)).unwrap() < 1e-11);
        }
    }

    #[test]
    fn ghost_branch() {
        let av = build_ansatz(dim(7), &[0.1, 0.2, 0.3], true).unwrap();
        assert!(av.x0() > 0.0);
        assert!(av.sqrt_x0().im == 0.0 && av.sqrt_x0().re > 0.0);
        assert!((av.to_normalized().norm() - 1.0).abs() < 1e-13);
    }

    proptest! {
        #[test]
        fn ansatz_invariants(seed in any::<u64>(), half in 1usize..12) {
            let d = (2 * half + 1) as u64;
            let av = build_ansatz(dim(d), &lcg_angles(half, seed), false).unwrap();
            let d = d as usize;
            for j in 1..d {
                prop_assert!((av.phase(j).norm() - 1.0).abs() < 1e-12);
                prop_assert!((av.phase(d - j) + av.phase(j).conj()).norm() < 1e-12);
            }
            prop_assert!(((av.x0() + 2.0).powi(2) - (d as f64 + 1.0)).abs() < 1e-12);
            prop_assert!((av.to_normalized().norm() - 1.0).abs() < 1e-13);
            prop_assert!(z_overlap_residual(&av.to_normalized()) < 1e-12);
            let again = AnsatzVector::from_phases(av.dim(), av.phases().to_vec(), false).unwrap();
            prop_assert_eq!(again.phases(), av.phases());
        }

        #[test]
        fn z_shift_closure_near_solutions(eps in 1e-9f64..1e-3, k in 1i64..7, which in 0usize..3) {
            let base = AnsatzVector::from_phases(
                dim(7),
                known::d7_x1().components()[1..].iter().map(|x| x / Complex64::new(0.0, libm::sqrt(2.0 + 2.0 * libm::sqrt(2.0)))).collect(),
                false,
            ).unwrap();
            let mut angles = base.angles();
            angles[which] += eps;
            let psi = build_ansatz(dim(7), &angles, false).unwrap().to_normalized();
            let r = x_overlap_residual(&psi).unwrap();
            let shifted = x_overlap_residual(&z_shift(&psi, k)).unwrap();
            prop_assert!(shifted <= r * (1.0 + 1e-9) + 1e-14);
        }
    }
}
