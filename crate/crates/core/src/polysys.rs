//! Polynomial systems in the rescaled variables `x_0..x_{d-1}` with exact
//! rational coefficients: the Ansatz relations, the X-overlap equations and
//! optional multiplier symmetries. Systems are exported for an external
//! Gröbner engine and checked numerically at candidate points; no basis is
//! computed here.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::Write;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::dim::Dim;
use crate::error::{Error, Result};

/// A monomial as `(variable, exponent)` pairs with positive exponents, sorted
/// by variable priority `x1 > x2 > … > x_{d-1} > x0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    nvars: usize,
    factors: Vec<(usize, u32)>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            nvars,
            factors: Vec::new(),
        }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        Self::from_exponents(nvars, (0..nvars).map(|i| (i == index) as u32))
    }

    pub fn from_exponents<I: IntoIterator<Item = u32>>(nvars: usize, exps: I) -> Self {
        let mut factors: Vec<(usize, u32)> = exps
            .into_iter()
            .enumerate()
            .filter(|&(_, e)| e > 0)
            .collect();
        factors.sort_by_key(|&(v, _)| rank(nvars, v));
        Monomial { nvars, factors }
    }

    /// Dense exponent vector of length `nvars`, indexed by variable.
    pub fn exponents(&self) -> Vec<u32> {
        let mut e = alloc::vec![0; self.nvars];
        for &(v, k) in &self.factors {
            e[v] = k;
        }
        e
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.exponents();
        for &(v, k) in &other.factors {
            e[v] += k;
        }
        Monomial::from_exponents(self.nvars, e)
    }

    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        self.factors
            .iter()
            .fold(Complex64::new(1.0, 0.0), |acc, &(v, e)| {
                acc * point[v].powu(e)
            })
    }
}

/// Position of variable `v` in the order `x1, x2, …, x_{d-1}, x0`.
fn rank(nvars: usize, v: usize) -> usize {
    if v == 0 {
        nvars - 1
    } else {
        v - 1
    }
}

impl Ord for Monomial {
    /// Graded lexicographic with `x1 > x2 > … > x_{d-1} > x0`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.factors.iter().zip(&other.factors) {
                let (ra, rb) = (rank(self.nvars, a.0), rank(other.nvars, b.0));
                if ra != rb {
                    // the higher-priority variable is present only on one side
                    return rb.cmp(&ra);
                }
                if a.1 != b.1 {
                    return a.1.cmp(&b.1);
                }
            }
            self.factors.len().cmp(&other.factors.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial over the rationals. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(Monomial::var(nvars, index), BigRational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        let entry = self
            .terms
            .entry(m.clone())
            .or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from the leading monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&BigRational> {
        self.terms.get(m)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, k) in &self.terms {
            out.add_term(m.clone(), k * c);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// Value at a complex point, coefficients rounded to double precision.
    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, c)| m.eval(point) * c.to_f64().unwrap_or(f64::NAN))
            .sum()
    }

    /// One-line plain-text rendering, e.g. `x0^2 + 4*x0 - 4`.
    pub fn to_plain(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let a = c.abs();
            let unit = a.is_one();
            if !unit || m.factors.is_empty() {
                if a.is_integer() {
                    let _ = write!(out, "{}", a.numer());
                } else {
                    let _ = write!(out, "{}/{}", a.numer(), a.denom());
                }
                if !m.factors.is_empty() {
                    out.push('*');
                }
            }
            for (i, &(v, e)) in m.factors.iter().enumerate() {
                if i > 0 {
                    out.push('*');
                }
                let _ = write!(out, "x{v}");
                if e > 1 {
                    let _ = write!(out, "^{e}");
                }
            }
        }
        out
    }

    /// Inverse of [`Poly::to_plain`].
    pub fn parse_plain(line: &str, nvars: usize) -> core::result::Result<Poly, String> {
        let s: String = line.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err("empty polynomial".into());
        }
        let mut poly = Poly::zero(nvars);
        if s == "0" {
            return Ok(poly);
        }
        let bytes = s.as_bytes();
        let mut start = 0;
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i] == b'+' || bytes[i] == b'-' {
                let (m, c) = parse_term(&s[start..i], nvars)?;
                poly.add_term(m, c);
                start = i;
            }
        }
        Ok(poly)
    }
}

fn parse_term(t: &str, nvars: usize) -> core::result::Result<(Monomial, BigRational), String> {
    let (neg, body) = match t.as_bytes().first() {
        Some(b'-') => (true, &t[1..]),
        Some(b'+') => (false, &t[1..]),
        _ => (false, t),
    };
    if body.is_empty() {
        return Err(alloc::format!("dangling sign in `{t}`"));
    }
    let mut coeff = BigRational::one();
    let mut exps = alloc::vec![0u32; nvars];
    for (n, factor) in body.split('*').enumerate() {
        if let Some(rest) = factor.strip_prefix('x') {
            let (idx, e) = match rest.split_once('^') {
                Some((i, e)) => (
                    i,
                    e.parse::<u32>()
                        .map_err(|_| alloc::format!("bad exponent in `{factor}`"))?,
                ),
                None => (rest, 1),
            };
            let idx: usize = idx
                .parse()
                .map_err(|_| alloc::format!("bad variable `{factor}`"))?;
            if idx >= nvars {
                return Err(alloc::format!("variable x{idx} out of range"));
            }
            exps[idx] += e;
        } else if n == 0 {
            coeff = parse_rational(factor)?;
        } else {
            return Err(alloc::format!("unexpected factor `{factor}`"));
        }
    }
    if neg {
        coeff = -coeff;
    }
    Ok((Monomial::from_exponents(nvars, exps), coeff))
}

fn parse_rational(s: &str) -> core::result::Result<BigRational, String> {
    let int = |v: &str| {
        v.parse::<BigInt>()
            .map_err(|_| alloc::format!("bad number `{v}`"))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = int(d)?;
            if d.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(BigRational::new(int(n)?, d))
        }
        None => Ok(BigRational::from_integer(int(s)?)),
    }
}

/// Role of a generator in a [`PolySystem`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    /// `x_j·x_{d-j} + x0`.
    Conjugation(usize),
    /// `(x0 + 2)² - (d + 1)`.
    X0Quadratic,
    /// X-overlap equation at `j`.
    XOverlap(usize),
    /// `x_j - x_{mj}`.
    Symmetry(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolySystem {
    dim: Dim,
    polys: Vec<Poly>,
    kinds: Vec<GeneratorKind>,
    symmetry_multiplier: Option<i64>,
}

impl PolySystem {
    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn kinds(&self) -> &[GeneratorKind] {
        &self.kinds
    }

    pub fn symmetry_multiplier(&self) -> Option<i64> {
        self.symmetry_multiplier
    }

    pub fn generators(&self) -> impl Iterator<Item = (GeneratorKind, &Poly)> {
        self.kinds.iter().copied().zip(&self.polys)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Build the system for odd `d`.
///
/// The X-overlap equation in rescaled variables reads
/// `Σ_k x_k* x_{k+2j} = (x0 + 1)·x_j²`, after eliminating `√(d+1) = -(x0+2)`.
/// Conjugates are replaced by `x_0* = x_0` and `x_k* = x_{d-k}`.
pub fn build_system(dim: Dim, symmetry_multiplier: Option<i64>) -> Result<PolySystem> {
    if !dim.is_odd() {
        return Err(Error::UnsupportedDimension {
            d: dim.get(),
            reason: "polynomial systems are only built for odd d",
        });
    }
    let d = dim.len();
    let v = |i: usize| Poly::var(d, i % d);
    let mut polys = Vec::new();
    let mut kinds = Vec::new();

    for j in 1..=(d - 1) / 2 {
        polys.push(v(j).mul(&v(d - j)).add(&v(0)));
        kinds.push(GeneratorKind::Conjugation(j));
    }

    let shifted = v(0).add(&Poly::constant(d, rat(2)));
    polys.push(
        shifted
            .mul(&shifted)
            .sub(&Poly::constant(d, rat(d as i64 + 1))),
    );
    kinds.push(GeneratorKind::X0Quadratic);

    let x0_plus_1 = v(0).add(&Poly::constant(d, rat(1)));
    for j in 1..d {
        let mut lhs = Poly::zero(d);
        for k in 0..d {
            let conj = if k == 0 { 0 } else { d - k };
            lhs = lhs.add(&v(conj).mul(&v(k + 2 * j)));
        }
        polys.push(lhs.sub(&x0_plus_1.mul(&v(j).mul(&v(j)))));
        kinds.push(GeneratorKind::XOverlap(j));
    }

    if let Some(m) = symmetry_multiplier {
        let mr = m.rem_euclid(d as i64) as u64;
        if mr == 0 || gcd(mr, d as u64) != 1 {
            return Err(Error::MultiplierNotCoprime { m, d: d as u64 });
        }
        for j in 1..d {
            let image = (mr as usize * j) % d;
            if image != j {
                polys.push(v(j).sub(&v(image)));
                kinds.push(GeneratorKind::Symmetry(j));
            }
        }
    }

    Ok(PolySystem {
        dim,
        polys,
        kinds,
        symmetry_multiplier,
    })
}

fn check_point_len(expected: usize, point: &[Complex64]) -> Result<()> {
    if point.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: point.len(),
        });
    }
    Ok(())
}

/// `|p(point)|` for every generator, in order.
pub fn eval_system(sys: &PolySystem, point: &[Complex64]) -> Result<Vec<f64>> {
    check_point_len(sys.dim.len(), point)?;
    Ok(sys.polys.iter().map(|p| p.eval(point).norm()).collect())
}

/// The published lex Gröbner basis of the first irreducible component at `d = 7`.
pub fn d7_component_basis() -> Vec<Poly> {
    const LINES: [&str; 7] = [
        "x1 + x6 + 1/2*x0 - 1",
        "x2 + x6 + 1/2*x0 - 1",
        "x4 + x6 + 1/2*x0 - 1",
        "x3 - x6",
        "x5 - x6",
        "x6^2 + 1/2*x6*x0 - x6 - x0",
        "x0^2 + 4*x0 - 4",
    ];
    LINES
        .iter()
        .map(|l| Poly::parse_plain(l, 7).expect("hard-coded basis parses"))
        .collect()
}

/// Largest `|g(point)|` over the seven basis polynomials of [`d7_component_basis`].
pub fn check_d7_component_basis(point: &[Complex64]) -> Result<f64> {
    check_point_len(7, point)?;
    Ok(d7_component_basis()
        .iter()
        .map(|p| p.eval(point).norm())
        .fold(0.0, f64::max))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    /// One polynomial per line.
    Plain,
    /// A Singular script declaring the ring and asking for a lex basis.
    CasScript,
}

fn variable_list(d: usize) -> String {
    let mut names: Vec<String> = (1..d).map(|i| alloc::format!("x{i}")).collect();
    names.push("x0".into());
    names.join(",")
}

pub fn export_system(sys: &PolySystem, format: ExportFormat) -> String {
    let d = sys.dim.len();
    let mut out = String::new();
    match format {
        ExportFormat::Plain => {
            for p in &sys.polys {
                out.push_str(&p.to_plain());
                out.push('\n');
            }
        }
        ExportFormat::CasScript => {
            let _ = writeln!(out, "// d = {d}, {} generators", sys.polys.len());
            if let Some(m) = sys.symmetry_multiplier {
                let _ = writeln!(out, "// symmetry x_j = x_{{{m}j}}");
            }
            let _ = writeln!(out, "ring R = 0, ({}), lp;", variable_list(d));
            out.push_str("ideal I =\n");
            for (n, p) in sys.polys.iter().enumerate() {
                let sep = if n + 1 == sys.polys.len() { ";" } else { "," };
                let _ = writeln!(out, "  {}{sep}", p.to_plain());
            }
            out.push_str("ideal G = std(I);\nprint(G);\n");
        }
    }
    out
}

/// Parse the plain export format, one polynomial per non-empty line.
pub fn parse_plain_system(text: &str, nvars: usize) -> Result<Vec<Poly>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(n, l)| {
            Poly::parse_plain(l, nvars).map_err(|message| Error::Parse {
                line: n + 1,
                message,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ansatz::{self, z_shift};
    use crate::known;
    use crate::legendre;
    use crate::wh::{CVec, Form};
    use proptest::prelude::*;

    fn dim(d: u64) -> Dim {
        Dim::new(d).unwrap()
    }

    fn lines(sys: &PolySystem) -> Vec<String> {
        export_system(sys, ExportFormat::Plain)
            .lines()
            .map(String::from)
            .collect()
    }

    #[test]
    fn d7_generators() {
        let sys = build_system(dim(7), None).unwrap();
        let l = lines(&sys);
        assert_eq!(
            &l[..4],
            &["x1*x6 + x0", "x2*x5 + x0", "x3*x4 + x0", "x0^2 + 4*x0 - 4"]
        );
        assert_eq!(sys.polys().len(), 3 + 1 + 6);
        assert!(sys.symmetry_multiplier().is_none());
    }

    #[test]
    fn d7_x_overlap_line() {
        // Σ_k x_k* x_{k+2}:  x0·x2 + x6·x3 + x5·x4 + x4·x5 + x3·x6 + x2·x0 + x1·x1
        // minus (x0 + 1)·x1²
        let sys = build_system(dim(7), None).unwrap();
        assert_eq!(lines(&sys)[4], "-x1^2*x0 + 2*x2*x0 + 2*x3*x6 + 2*x4*x5");
    }

    #[test]
    fn symmetry_constraints() {
        let sys = build_system(dim(67), Some(29)).unwrap();
        let l = lines(&sys);
        assert!(l.contains(&"x1 - x29".to_string()));
        assert!(l.contains(&"x2 - x58".to_string()));
        let sys19 = build_system(dim(19), Some(7)).unwrap();
        let l = lines(&sys19);
        for s in ["x1 - x7", "x7 - x11", "-x1 + x11"] {
            assert!(l.contains(&s.to_string()), "{s}");
        }
        assert!(matches!(
            build_system(dim(21), Some(7)),
            Err(Error::MultiplierNotCoprime { m: 7, d: 21 })
        ));
        assert!(matches!(
            build_system(dim(12), None),
            Err(Error::UnsupportedDimension { .. })
        ));
    }

    #[test]
    fn invariant_generators_present() {
        for d in [3u64, 7, 19, 67] {
            let sys = build_system(dim(d), None).unwrap();
            let quad =
                Poly::parse_plain(&alloc::format!("x0^2 + 4*x0 - {}", d - 3), d as usize).unwrap();
            assert!(sys.polys().contains(&quad));
            for j in 1..=(d as usize - 1) / 2 {
                let rel = Poly::var(d as usize, j)
                    .mul(&Poly::var(d as usize, d as usize - j))
                    .add(&Poly::var(d as usize, 0));
                assert!(sys.polys().contains(&rel));
            }
        }
    }

    #[test]
    fn system_vanishes_at_published_solutions() {
        let sys7 = build_system(dim(7), None).unwrap();
        for v in [known::d7_x1(), known::d7_x2()] {
            let r = eval_system(&sys7, v.components()).unwrap();
            assert!(r.iter().all(|&e| e < 1e-10), "{r:?}");
        }
        let sys19 = build_system(dim(19), None).unwrap();
        for sign in [1, -1] {
            let r = eval_system(&sys19, known::d19_solution(sign).components()).unwrap();
            assert!(r.iter().all(|&e| e < 1e-10));
        }
        let sys19s = build_system(dim(19), Some(4)).unwrap();
        let r = eval_system(&sys19s, known::d19_solution(1).components()).unwrap();
        assert!(r.iter().all(|&e| e < 1e-10));
        let sys67 = build_system(dim(67), Some(29)).unwrap();
        let r = eval_system(&sys67, known::d67_solution(1).components()).unwrap();
        assert!(r.iter().all(|&e| e < 1e-9));
    }

    #[test]
    fn zero_vector_residual() {
        let sys = build_system(dim(7), None).unwrap();
        let r = eval_system(&sys, &[Complex64::new(0.0, 0.0); 7]).unwrap();
        assert_eq!(r[3], 4.0);
        assert!(eval_system(&sys, &[Complex64::new(0.0, 0.0); 6]).is_err());
    }

    #[test]
    fn component_basis_membership() {
        assert!(check_d7_component_basis(known::d7_x1().components()).unwrap() < 1e-10);
        assert!(check_d7_component_basis(known::d7_x2().components()).unwrap() < 1e-10);
        let shifted = z_shift(&known::d7_x1(), 1);
        assert!(check_d7_component_basis(shifted.components()).unwrap() > 0.01);
        assert!(check_d7_component_basis(&[Complex64::new(0.0, 0.0); 5]).is_err());
    }

    #[test]
    fn four_first_component_points() {
        let sys = build_system(dim(7), None).unwrap();
        for sqrt_sign in [1, -1] {
            for beta in [1, -1] {
                let p = legendre::rescaled_point(dim(7), sqrt_sign, beta).unwrap();
                assert!(check_d7_component_basis(&p).unwrap() < 1e-10);
                assert!(eval_system(&sys, &p).unwrap().iter().all(|&e| e < 1e-10));
            }
        }
    }

    #[test]
    fn solutions_normalize_to_x_overlap_solutions() {
        for d in [7u64, 19] {
            let sys = build_system(dim(d), None).unwrap();
            for sign in [1, -1] {
                let p = legendre::rescaled_point(dim(d), 1, sign).unwrap();
                assert!(eval_system(&sys, &p).unwrap().iter().all(|&e| e < 1e-10));
                assert!(p[0].re < 0.0);
                let v = CVec::new(dim(d), p, Form::Rescaled).unwrap();
                assert!(ansatz::x_overlap_residual(&v).unwrap() < 1e-8);
            }
        }
    }

    #[test]
    fn export_is_stable_and_round_trips() {
        for (d, m) in [(7u64, None), (19, Some(7)), (67, Some(29))] {
            let sys = build_system(dim(d), m).unwrap();
            let a = export_system(&sys, ExportFormat::Plain);
            let b = export_system(&build_system(dim(d), m).unwrap(), ExportFormat::Plain);
            assert_eq!(a, b);
            let parsed = parse_plain_system(&a, d as usize).unwrap();
            assert_eq!(parsed, sys.polys());
        }
    }

    #[test]
    fn cas_script_shape() {
        let sys = build_system(dim(7), None).unwrap();
        let s = export_system(&sys, ExportFormat::CasScript);
        assert!(s.contains("ring R = 0, (x1,x2,x3,x4,x5,x6,x0), lp;"));
        assert!(s.contains("  x0^2 + 4*x0 - 4,\n"));
        assert!(s.contains("std(I)"));
        assert_eq!(s.matches(',').count() >= sys.polys().len() - 1, true);
    }

    #[test]
    fn monomial_order() {
        let m = |e: [u32; 3]| Monomial::from_exponents(3, e);
        // x1 > x2 > x0 inside each degree
        assert!(m([0, 1, 0]) > m([0, 0, 1]));
        assert!(m([0, 0, 1]) > m([1, 0, 0]));
        assert!(m([2, 0, 0]) > m([0, 1, 0]));
        assert!(m([0, 1, 1]) > m([0, 0, 2]));
        assert!(m([1, 1, 0]) < m([0, 2, 0]));
        assert!(m([0, 0, 0]) < m([1, 0, 0]));
    }

    #[test]
    fn parse_errors() {
        assert!(Poly::parse_plain("x9 + 1", 3).is_err());
        assert!(Poly::parse_plain("1/0*x1", 3).is_err());
        assert!(Poly::parse_plain("x1 + ", 3).is_err());
        assert!(matches!(
            parse_plain_system("x1\nx1 * y", 3),
            Err(Error::Parse { line: 2, .. })
        ));
        assert_eq!(Poly::parse_plain("0", 3).unwrap(), Poly::zero(3));
        let p = Poly::parse_plain("-3/4*x2^2*x0 + x1 - 7", 3).unwrap();
        assert_eq!(p.to_plain(), "-3/4*x2^2*x0 + x1 - 7");
    }

    fn arb_poly(nvars: usize) -> impl Strategy<Value = Poly> {
        proptest::collection::vec(
            (
                proptest::collection::vec(0u32..4, nvars),
                -50i64..50,
                1i64..9,
            ),
            0..8,
        )
        .prop_map(move |terms| {
            let mut p = Poly::zero(nvars);
            for (e, n, d) in terms {
                p.add_term(
                    Monomial::from_exponents(nvars, e),
                    BigRational::new(BigInt::from(n), BigInt::from(d)),
                );
            }
            p
        })
    }

    proptest! {
        #[test]
        fn plain_round_trip(p in arb_poly(5)) {
            let text = p.to_plain();
            prop_assert_eq!(Poly::parse_plain(&text, 5).unwrap(), p);
        }
    }
}
