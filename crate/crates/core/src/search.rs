//! Seeded multi-start search over the free Ansatz angles.
//!
//! Each restart draws its starting angles from a ChaCha stream keyed by
//! `(seed, restart_index)` and runs BFGS with central finite-difference
//! gradients. Results are ordered by `(objective_value, restart_index)`, so the
//! outcome does not depend on the order in which restarts are executed.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ansatz::{self, build_ansatz, free_angle_count};
use crate::dim::Dim;
use crate::error::{Error, Result};
use crate::verify;
use crate::wh::{CVec, WeylHeisenberg};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    /// `Σ_j |⟨v|X^{-2j}v⟩ - (√(d+1)+1) v_j²|²`.
    XOverlap,
    /// `Σ_{i,k} |G(i,k) - (δ_{i,0}+δ_{k,0})/(d+1)|²` on the normalized vector.
    Sic,
    /// `Σ_j (|⟨Ψ|X^jΨ⟩|² - 1/(d+1))²`.
    NaiveX,
}

impl Objective {
    pub fn name(&self) -> &'static str {
        match self {
            Objective::XOverlap => "xoverlap",
            Objective::Sic => "sic",
            Objective::NaiveX => "naive_x",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "xoverlap" => Some(Objective::XOverlap),
            "sic" => Some(Objective::Sic),
            "naive_x" => Some(Objective::NaiveX),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub dim: Dim,
    pub objective: Objective,
    pub seed: u64,
    pub restarts: usize,
    pub max_iterations: usize,
    /// Finite-difference step for gradients.
    pub gradient_step: f64,
    pub convergence_threshold: f64,
}

impl SearchConfig {
    pub const DEFAULT_MAX_ITERATIONS: usize = 1000;
    pub const DEFAULT_GRADIENT_STEP: f64 = 1e-6;
    pub const DEFAULT_THRESHOLD: f64 = 1e-18;

    pub fn new(dim: Dim, objective: Objective, seed: u64, restarts: usize) -> Result<Self> {
        let cfg = SearchConfig {
            dim,
            objective,
            seed,
            restarts,
            max_iterations: Self::DEFAULT_MAX_ITERATIONS,
            gradient_step: Self::DEFAULT_GRADIENT_STEP,
            convergence_threshold: Self::DEFAULT_THRESHOLD,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.dim.is_odd() || self.dim.get() < 3 {
            return Err(Error::UnsupportedDimension {
                d: self.dim.get(),
                reason: "search runs over the odd-dimensional Ansatz",
            });
        }
        let bad = |name, detail: &str| Error::InvariantViolation {
            name,
            detail: detail.into(),
        };
        if self.restarts == 0 {
            return Err(bad("restarts", "at least one restart is required"));
        }
        if self.convergence_threshold.is_nan() || self.convergence_threshold <= 0.0 {
            return Err(bad("convergence_threshold", "must be positive"));
        }
        if self.gradient_step.is_nan() || self.gradient_step <= 0.0 {
            return Err(bad("gradient_step", "must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub angles: Vec<f64>,
    pub objective_value: f64,
    pub restart_index: usize,
    pub iterations: usize,
    pub converged: bool,
}

/// Evaluates one objective on angle vectors for a fixed dimension.
#[derive(Debug, Clone)]
pub struct ObjectiveFn {
    dim: Dim,
    objective: Objective,
    wh: WeylHeisenberg,
}

impl ObjectiveFn {
    pub fn new(dim: Dim, objective: Objective) -> Self {
        ObjectiveFn {
            dim,
            objective,
            wh: WeylHeisenberg::new(dim),
        }
    }

    pub fn eval(&self, angles: &[f64]) -> Result<f64> {
        let av = build_ansatz(self.dim, angles, false)?;
        let d = self.dim.len();
        Ok(match self.objective {
            Objective::XOverlap => {
                let v = av.to_v_form();
                let c = v.components();
                let s1 = libm::sqrt(d as f64 + 1.0) + 1.0;
                (1..d)
                    .map(|j| {
                        (self.wh.shift_overlap(c, -2 * j as i64) - c[j] * c[j] * s1).norm_sqr()
                    })
                    .sum()
            }
            Objective::Sic => {
                let psi = av.to_normalized();
                verify::gik_table(&psi)
                    .iter()
                    .enumerate()
                    .map(|(n, g)| (g - verify::gik_target(self.dim, n / d, n % d)).norm_sqr())
                    .sum()
            }
            Objective::NaiveX => {
                let psi = av.to_normalized();
                let target = 1.0 / (d as f64 + 1.0);
                (1..d)
                    .map(|j| {
                        let e =
                            self.wh.shift_overlap(psi.components(), j as i64).norm_sqr() - target;
                        e * e
                    })
                    .sum()
            }
        })
    }
}

pub fn objective(config: &SearchConfig, angles: &[f64]) -> Result<f64> {
    ObjectiveFn::new(config.dim, config.objective).eval(angles)
}

/// Starting angles for `restart`, uniform on `[0, 2π)`.
pub fn initial_angles(config: &SearchConfig, restart: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(restart as u64);
    (0..free_angle_count(config.dim))
        .map(|_| rng.random::<f64>() * TAU)
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn gradient(f: &ObjectiveFn, x: &[f64], h: f64) -> Vec<f64> {
    let mut probe = x.to_vec();
    (0..x.len())
        .map(|i| {
            probe[i] = x[i] + h;
            let up = f.eval(&probe).unwrap_or(f64::INFINITY);
            probe[i] = x[i] - h;
            let down = f.eval(&probe).unwrap_or(f64::INFINITY);
            probe[i] = x[i];
            (up - down) / (2.0 * h)
        })
        .collect()
}

fn wrap(angles: &mut [f64]) {
    for a in angles {
        *a = a.rem_euclid(TAU);
    }
}

/// BFGS with Armijo backtracking from `start`.
fn bfgs(f: &ObjectiveFn, start: Vec<f64>, config: &SearchConfig) -> (Vec<f64>, f64, usize) {
    const ARMIJO: f64 = 1e-4;
    const FLOOR: f64 = 1e-30;
    let n = start.len();
    let h = config.gradient_step;
    let identity = |n: usize| {
        let mut m = alloc::vec![0.0; n * n];
        for i in 0..n {
            m[i * n + i] = 1.0;
        }
        m
    };

    let mut x = start;
    let mut fx = f.eval(&x).unwrap_or(f64::INFINITY);
    let mut g = gradient(f, &x, h);
    let mut hinv = identity(n);
    let mut iterations = 0;
    let mut stalled = 0;

    while iterations < config.max_iterations && fx > FLOOR {
        iterations += 1;
        let mut p: Vec<f64> = (0..n)
            .map(|i| -dot(&hinv[i * n..(i + 1) * n], &g))
            .collect();
        let mut slope = dot(&g, &p);
        if slope.is_nan() || slope >= 0.0 {
            hinv = identity(n);
            p = g.iter().map(|v| -v).collect();
            slope = dot(&g, &p);
            if slope.is_nan() || slope >= 0.0 {
                break;
            }
        }

        let mut alpha = 1.0;
        let mut accepted = None;
        for _ in 0..60 {
            let trial: Vec<f64> = x.iter().zip(&p).map(|(xi, pi)| xi + alpha * pi).collect();
            let ft = f.eval(&trial).unwrap_or(f64::INFINITY);
            if ft <= fx + ARMIJO * alpha * slope {
                accepted = Some((trial, ft));
                break;
            }
            alpha *= 0.5;
        }
        let Some((x_new, f_new)) = accepted else {
            if hinv == identity(n) {
                break;
            }
            hinv = identity(n);
            continue;
        };

        let g_new = gradient(f, &x_new, h);
        let s: Vec<f64> = x_new.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = g_new.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > 1e-300 {
            if iterations == 1 {
                let scale = sy / dot(&y, &y);
                hinv.iter_mut().for_each(|v| *v *= scale);
            }
            let rho = 1.0 / sy;
            let hy: Vec<f64> = (0..n).map(|i| dot(&hinv[i * n..(i + 1) * n], &y)).collect();
            let yhy = dot(&y, &hy);
            for i in 0..n {
                for j in 0..n {
                    hinv[i * n + j] += -rho * (hy[i] * s[j] + s[i] * hy[j])
                        + (rho * rho * yhy + rho) * s[i] * s[j];
                }
            }
        }

        let progress = fx - f_new;
        x = x_new;
        fx = f_new;
        g = g_new;
        if progress <= 1e-6 * fx {
            stalled += 1;
            if stalled >= 8 {
                break;
            }
        } else {
            stalled = 0;
        }
    }
    wrap(&mut x);
    (x, fx, iterations)
}

/// Run a single restart.
pub fn run_restart(config: &SearchConfig, restart: usize) -> SearchResult {
    let f = ObjectiveFn::new(config.dim, config.objective);
    let (angles, value, iterations) = bfgs(&f, initial_angles(config, restart), config);
    let objective_value = value.max(0.0);
    SearchResult {
        angles,
        objective_value,
        restart_index: restart,
        iterations,
        converged: objective_value < config.convergence_threshold,
    }
}

/// Order by `(objective_value, restart_index)`.
pub fn sort_results(results: &mut [SearchResult]) {
    results.sort_by(|a, b| {
        a.objective_value
            .total_cmp(&b.objective_value)
            .then(a.restart_index.cmp(&b.restart_index))
    });
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub config: SearchConfig,
    /// Sorted; the first entry is the best.
    pub results: Vec<SearchResult>,
}

impl SearchOutcome {
    pub fn from_results(config: SearchConfig, mut results: Vec<SearchResult>) -> Self {
        sort_results(&mut results);
        SearchOutcome { config, results }
    }

    pub fn best(&self) -> &SearchResult {
        &self.results[0]
    }

    /// Normalized Ansatz vector for a result.
    pub fn vector(&self, result: &SearchResult) -> CVec {
        result_vector(self.config.dim, result)
    }
}

pub fn result_vector(dim: Dim, result: &SearchResult) -> CVec {
    build_ansatz(dim, &result.angles, false)
        .expect("angle count fixed by the search")
        .to_normalized()
}

/// All restarts, run one after another.
pub fn minimize(config: &SearchConfig) -> Result<SearchOutcome> {
    config.validate()?;
    let results = (0..config.restarts)
        .map(|r| run_restart(config, r))
        .collect();
    Ok(SearchOutcome::from_results(config.clone(), results))
}

/// Distance between `Z^k a` and the best phase-aligned `b`, minimized over `k`.
pub fn canonical_distance(a: &CVec, b: &CVec) -> Result<(f64, usize)> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim().len(),
            found: b.dim().len(),
        });
    }
    let a = a.to_normalized();
    let b = b.to_normalized();
    let wh = WeylHeisenberg::new(a.dim());
    let mut best = (f64::INFINITY, 0);
    for k in 0..a.dim().len() {
        let ak = wh.clock(a.components(), k as i64);
        let ov: Complex64 = b
            .components()
            .iter()
            .zip(&ak)
            .map(|(x, y)| x.conj() * y)
            .sum();
        let phase = if ov.norm() > 0.0 {
            ov / ov.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let dist = libm::sqrt(
            ak.iter()
                .zip(b.components())
                .map(|(x, y)| (x - phase * y).norm_sqr())
                .sum::<f64>(),
        );
        if dist < best.0 {
            best = (dist, k);
        }
    }
    Ok(best)
}

/// Whether `a` and `b` agree up to a Z-shift and a global phase.
pub fn canonical_match(a: &CVec, b: &CVec, tol: f64) -> Result<bool> {
    Ok(canonical_distance(a, b)?.0 < tol)
}

/// Mean-free check used by tests and the CLI: the X-overlap residual of the
/// vector of a search result.
pub fn result_x_overlap_residual(dim: Dim, result: &SearchResult) -> Result<f64> {
    ansatz::x_overlap_residual(&result_vector(dim, result))
}
