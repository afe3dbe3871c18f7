//! SIC verification: direct overlaps, the quartic `G(i,k)` criterion and the
//! modulus-only check on the shift overlaps.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::dim::Dim;
use crate::wh::{CVec, WeylHeisenberg};

/// All `d²` overlaps `⟨Ψ|D_{j,k}|Ψ⟩` of the normalized input, row `j`, column `k`.
#[derive(Debug, Clone)]
pub struct OverlapTable {
    dim: Dim,
    entries: Vec<Complex64>,
    input_norm: f64,
}

impl OverlapTable {
    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.entries[j * self.dim.len() + k]
    }

    /// Row `j` as a slice over `k`.
    pub fn row(&self, j: usize) -> &[Complex64] {
        let d = self.dim.len();
        &self.entries[j * d..(j + 1) * d]
    }

    /// Norm of the vector before internal normalization.
    pub fn input_norm(&self) -> f64 {
        self.input_norm
    }
}

fn unit_components(psi: &CVec) -> (Vec<Complex64>, f64) {
    let n = psi.norm();
    let comps = if n > 0.0 {
        psi.components().iter().map(|c| c / n).collect()
    } else {
        psi.components().to_vec()
    };
    (comps, n)
}

pub fn overlap_table(psi: &CVec) -> OverlapTable {
    let (comps, input_norm) = unit_components(psi);
    let wh = WeylHeisenberg::new(psi.dim());
    let d = psi.dim().len() as i64;
    let mut entries = Vec::with_capacity((d * d) as usize);
    for j in 0..d {
        for k in 0..d {
            entries.push(wh.overlap(&comps, j, k));
        }
    }
    OverlapTable {
        dim: psi.dim(),
        entries,
        input_norm,
    }
}

fn table_residual(table: &OverlapTable) -> (f64, (usize, usize)) {
    let d = table.dim.len();
    let target = 1.0 / (d as f64 + 1.0);
    let mut worst = (-1.0, (0, 1));
    for j in 0..d {
        for k in 0..d {
            if j == 0 && k == 0 {
                continue;
            }
            let dev = (table.get(j, k).norm_sqr() - target).abs();
            if dev > worst.0 {
                worst = (dev, (j, k));
            }
        }
    }
    worst
}

/// `max_{(j,k)≠(0,0)} | |⟨Ψ|D_{j,k}Ψ⟩|² - 1/(d+1) |` on the normalized input.
pub fn sic_residual(psi: &CVec) -> f64 {
    table_residual(&overlap_table(psi)).0
}

/// `G(i,k) = Σ_r ψ*_{r+i} ψ*_{r+k} ψ_r ψ_{r+i+k}` on the raw components.
pub fn gik_quartic(psi: &CVec, i: i64, k: i64) -> Complex64 {
    gik_quartic_slice(psi.dim(), psi.components(), i, k)
}

fn gik_quartic_slice(dim: Dim, p: &[Complex64], i: i64, k: i64) -> Complex64 {
    let d = dim.len();
    let (i, k) = (dim.reduce(i), dim.reduce(k));
    (0..d)
        .map(|r| p[(r + i) % d].conj() * p[(r + k) % d].conj() * p[r] * p[(r + i + k) % d])
        .sum()
}

/// `G(i,k) = (1/d) Σ_j ω^{kj} |⟨Ψ|X^i Z^j|Ψ⟩|²` on the raw components.
pub fn gik_fourier(psi: &CVec, i: i64, k: i64) -> Complex64 {
    let wh = WeylHeisenberg::new(psi.dim());
    let d = psi.dim().len() as i64;
    let s: Complex64 = (0..d)
        .map(|j| wh.phases().omega_pow(k * j) * wh.overlap(psi.components(), i, j).norm_sqr())
        .sum();
    s / d as f64
}

/// Target value of `G(i,k)` for a SIC fiducial.
pub fn gik_target(dim: Dim, i: usize, k: usize) -> f64 {
    let hits = (i == 0) as u8 + (k == 0) as u8;
    f64::from(hits) / (dim.get() as f64 + 1.0)
}

/// Full `G` table of the normalized input, row `i`, column `k`, via the quartic form.
pub fn gik_table(psi: &CVec) -> Vec<Complex64> {
    let (comps, _) = unit_components(psi);
    let dim = psi.dim();
    let d = dim.len() as i64;
    let mut out = Vec::with_capacity((d * d) as usize);
    for i in 0..d {
        for k in 0..d {
            out.push(gik_quartic_slice(dim, &comps, i, k));
        }
    }
    out
}

/// `max_{i,k} |G(i,k) - (δ_{i,0} + δ_{k,0})/(d+1)|` on the normalized input.
pub fn gik_residual(psi: &CVec) -> f64 {
    let d = psi.dim().len();
    gik_table(psi)
        .iter()
        .enumerate()
        .map(|(n, g)| (g - gik_target(psi.dim(), n / d, n % d)).norm())
        .fold(0.0, f64::max)
}

/// `max_{j=1..d-1} | |⟨Ψ|X^jΨ⟩|² - 1/(d+1) |` on the normalized input.
pub fn naive_x_residual(psi: &CVec) -> f64 {
    let (comps, _) = unit_components(psi);
    let wh = WeylHeisenberg::new(psi.dim());
    let target = 1.0 / (psi.dim().get() as f64 + 1.0);
    (1..psi.dim().len() as i64)
        .map(|j| (wh.shift_overlap(&comps, j).norm_sqr() - target).abs())
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SicReport {
    pub max_modulus_deviation: f64,
    pub worst_pair: (usize, usize),
    pub gik_max_deviation: f64,
    pub is_sic: bool,
    pub tolerance_used: f64,
    /// Norm of the input before normalization.
    pub input_norm: f64,
}

/// Decide the SIC property from overlap moduli; the `G` residual is reported
/// alongside as an independent check.
///
/// The input is normalized internally. A zero vector is never a SIC.
pub fn is_sic(psi: &CVec, tol: f64) -> SicReport {
    let table = overlap_table(psi);
    let (dev, worst_pair) = table_residual(&table);
    let gik = gik_residual(psi);
    SicReport {
        max_modulus_deviation: dev,
        worst_pair,
        gik_max_deviation: gik,
        is_sic: table.input_norm > 0.0 && dev <= tol,
        tolerance_used: tol,
        input_norm: table.input_norm,
    }
}

/// Default tolerance for aggregate residuals, `1e-9·d`.
pub fn default_tolerance(dim: Dim) -> f64 {
    1e-9 * dim.get() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::known;
    use alloc::vec;
    use proptest::prelude::*;

    fn random_vec(d: usize, seed: u64) -> CVec {
        let mut s = seed | 1;
        let mut next = || {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            (s >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        CVec::from_components((0..d).map(|_| Complex64::new(next(), next())).collect()).unwrap()
    }

    #[test]
    fn d3_fiducial_overlaps() {
        let psi = known::d3_fiducial();
        let t = overlap_table(&psi);
        assert!((t.get(0, 0) - 1.0).norm() < 1e-15);
        for j in 0..3 {
            for k in 0..3 {
                if (j, k) != (0, 0) {
                    assert!((t.get(j, k).norm() - 0.5).abs() < 1e-15);
                }
            }
        }
        assert!(sic_residual(&psi) < 1e-14);
        assert!((gik_quartic(&psi, 0, 0).re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn d7_published_vector_overlaps() {
        let psi = known::d7_x1().to_normalized();
        let t = overlap_table(&psi);
        let m = 1.0 / libm::sqrt(8.0);
        for j in 0..7 {
            for k in 0..7 {
                if (j, k) != (0, 0) {
                    assert!((t.get(j, k).norm() - m).abs() < 1e-12);
                }
            }
        }
        assert!((m - 0.353553).abs() < 1e-6);
        assert!(gik_residual(&psi) < 1e-11);
        assert!(gik_fourier(&psi, 1, 2).norm() < 1e-10);
        assert!((gik_quartic(&psi, 3, 0).re - 1.0 / 8.0).abs() < 1e-12);
        assert!(naive_x_residual(&psi) < 1e-11);
    }

    #[test]
    fn rescaled_input_is_normalized_internally() {
        let r = is_sic(&known::d7_x2(), 1e-10);
        assert!(r.is_sic);
        assert!((r.input_norm - known::d7_x2().norm()).abs() < 1e-15);
        assert!(r.max_modulus_deviation < 1e-10);
    }

    #[test]
    fn d67_legendre_vector_is_not_sic() {
        let psi = known::d67_solution(1);
        assert!(sic_residual(&psi) > 0.01);
        assert!(!is_sic(&psi, default_tolerance(psi.dim())).is_sic);
    }

    #[test]
    fn random_vector_is_not_sic() {
        let psi = random_vec(7, 99);
        assert!(sic_residual(&psi) > 0.01);
    }

    #[test]
    fn basis_vector_cases() {
        let dim = Dim::new(5).unwrap();
        let e0 = CVec::basis(dim, 0);
        assert_eq!(gik_quartic(&e0, 1, 1), Complex64::new(0.0, 0.0));
        assert_eq!(gik_fourier(&e0, 0, 0), Complex64::new(1.0, 0.0));
        let expected = 1.0 - 2.0 / 6.0;
        assert!((gik_table(&e0)[0].re - 2.0 / 6.0 - expected).abs() < 1e-15);
        assert!(gik_residual(&e0) >= expected - 1e-15);
        assert!((naive_x_residual(&e0) - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn zero_vector_is_not_sic() {
        let z = CVec::from_components(vec![Complex64::new(0.0, 0.0); 3]).unwrap();
        assert!(!is_sic(&z, 1.0).is_sic);
    }

    #[test]
    fn gik_equivalence_on_sics_and_non_sics() {
        let sics = [
            known::d3_fiducial(),
            known::d7_x1(),
            known::d7_x2(),
            known::d19_solution(1),
        ];
        for v in sics {
            assert!(sic_residual(&v) < 1e-12);
            assert!(gik_residual(&v) < 1e-10);
        }
        for seed in 1..20 {
            let v = random_vec(7, seed);
            assert!(sic_residual(&v) > 1e-6);
            assert!(gik_residual(&v) > 1e-6);
        }
    }

    #[test]
    fn d67_vector_fails_gik() {
        let v = known::d67_solution(-1);
        assert!(gik_residual(&v) > 0.001);
    }

    proptest! {
        #[test]
        fn quartic_equals_fourier(d in 2usize..50, seed in any::<u64>(), i in 0i64..50, k in 0i64..50) {
            let v = random_vec(d, seed);
            let a = gik_quartic(&v, i, k);
            let b = gik_fourier(&v, i, k);
            let scale = v.norm_sqr() * v.norm_sqr();
            prop_assert!((a - b).norm() < 1e-12 * scale.max(1.0), "{a} vs {b}");
        }

        #[test]
        fn moduli_ignore_global_phase(d in 2usize..12, seed in any::<u64>(), phi in 0.0f64..6.3) {
            let v = random_vec(d, seed);
            let w = v.scaled(Complex64::from_polar(1.0, phi));
            let (a, b) = (overlap_table(&v), overlap_table(&w));
            for j in 0..d {
                for k in 0..d {
                    prop_assert!((a.get(j, k).norm() - b.get(j, k).norm()).abs() < 1e-13);
                }
            }
        }

        #[test]
        fn table_entry_bounds(d in 2usize..10, seed in any::<u64>()) {
            let t = overlap_table(&random_vec(d, seed));
            prop_assert!((t.get(0, 0) - 1.0).norm() < 1e-13);
            for j in 0..d {
                for k in 0..d {
                    prop_assert!(t.get(j, k).norm() <= 1.0 + 1e-13);
                }
            }
        }
    }
}
