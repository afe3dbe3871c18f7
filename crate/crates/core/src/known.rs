//! Published solution vectors in rescaled form, written out from their closed
//! forms. These are kept apart from the Legendre construction so the two can be
//! checked against each other.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::dim::Dim;
use crate::wh::{CVec, Form};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rescaled(d: u64, comps: Vec<Complex64>) -> CVec {
    CVec::new(Dim::new(d).expect("valid"), comps, Form::Rescaled).expect("length d")
}

/// `β = √(-2√m - 1)` on the positive imaginary branch, times `sign`.
fn beta(m: f64, sign: i8) -> Complex64 {
    c(0.0, f64::from(sign) * libm::sqrt(2.0 * libm::sqrt(m) + 1.0))
}

/// Dimension 7, with `β = √(-2√2 - 1)` and `sign` selecting `±β`.
///
/// Indices {1, 2, 4} carry `(√2(-β+1)+2)/2` and {3, 5, 6} carry
/// `(√2(β+1)+2)/2`. `sign = +1` is the vector usually labelled `x₁`.
pub fn d7_solution(sign: i8) -> CVec {
    let r2 = libm::sqrt(2.0);
    let b = beta(2.0, sign);
    let x0 = c(-2.0 * r2 - 2.0, 0.0);
    let minus = (-b + 1.0) * r2 * 0.5 + 1.0;
    let plus = (b + 1.0) * r2 * 0.5 + 1.0;
    rescaled(7, alloc::vec![x0, minus, minus, plus, minus, plus, plus])
}

pub fn d7_x1() -> CVec {
    d7_solution(1)
}

pub fn d7_x2() -> CVec {
    d7_solution(-1)
}

/// Dimension 19 smallest-component solution: `β - 1` on
/// {1,4,5,6,7,9,11,16,17}, `-β - 1` elsewhere, `β = √(-2√5 - 1)`.
pub fn d19_solution(sign: i8) -> CVec {
    const PLUS: [usize; 9] = [1, 4, 5, 6, 7, 9, 11, 16, 17];
    let b = beta(5.0, sign);
    let mut comps = alloc::vec![-b - 1.0; 19];
    comps[0] = c(-2.0 - 2.0 * libm::sqrt(5.0), 0.0);
    for j in PLUS {
        comps[j] = b - 1.0;
    }
    rescaled(19, comps)
}

/// Dimension 67 smallest-component solution: `β - 1` where `j ≠ 0` is a square
/// mod 67, `-β - 1` otherwise, `β = √(-2√17 - 1)`. Squares are found by
/// squaring, not by a residue test.
pub fn d67_solution(sign: i8) -> CVec {
    let b = beta(17.0, sign);
    let mut comps = alloc::vec![-b - 1.0; 67];
    comps[0] = c(-2.0 - 2.0 * libm::sqrt(17.0), 0.0);
    for t in 1..67usize {
        comps[t * t % 67] = b - 1.0;
    }
    rescaled(67, comps)
}

/// The standard `d = 3` fiducial `(0, 1, -1)/√2`.
pub fn d3_fiducial() -> CVec {
    let s = 1.0 / libm::sqrt(2.0);
    CVec::new(
        Dim::new(3).expect("valid"),
        alloc::vec![c(0.0, 0.0), c(s, 0.0), c(-s, 0.0)],
        Form::Normalized,
    )
    .expect("unit norm")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rescaled_moduli_and_pairing() {
        for v in [
            d7_x1(),
            d7_x2(),
            d19_solution(1),
            d19_solution(-1),
            d67_solution(1),
        ] {
            let x = v.components();
            let d = x.len();
            let x0 = x[0].re;
            for j in 1..d {
                assert!((x[j].norm_sqr() + x0).abs() < 1e-12, "d={d} j={j}");
                assert!((x[j] * x[d - j] + x0).norm() < 1e-12, "d={d} j={j}");
                assert!((x[j].conj() - x[d - j]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn d7_x0_value() {
        assert!((d7_x1().components()[0].re - (-4.828_427_124_746_19)).abs() < 1e-12);
    }
}
