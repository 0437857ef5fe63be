//! Exact polynomial arithmetic over ℚ.
//!
//! [`MultiPoly`] is a sparse polynomial in the two deformation parameters
//! `a`, `h` and the mark variables `x_i`. Every monomial carries the quantum
//! grading `deg a = 4`, `deg h = 2`, `deg x_i = 2`. [`LaurentPoly`] holds
//! integer Laurent polynomials in `q`, used for brackets and Euler
//! characteristics.

mod laurent;
mod multi;
mod parse;

pub use laurent::LaurentPoly;
pub use multi::{Homogeneity, Monomial, MultiPoly};

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

pub type Rational = num_rational::BigRational;

/// Builds the rational `num / den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A ring variable. Variables are ordered `a < h < x_0 < x_1 < …`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    A,
    H,
    X(u32),
}

impl Var {
    pub fn index(self) -> usize {
        match self {
            Var::A => 0,
            Var::H => 1,
            Var::X(i) => i as usize + 2,
        }
    }

    pub fn from_index(index: usize) -> Var {
        match index {
            0 => Var::A,
            1 => Var::H,
            i => Var::X((i - 2) as u32),
        }
    }

    /// Quantum degree of the variable.
    pub fn grading(self) -> i32 {
        match self {
            Var::A => 4,
            Var::H | Var::X(_) => 2,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::A => write!(f, "a"),
            Var::H => write!(f, "h"),
            Var::X(i) => write!(f, "x{i}"),
        }
    }
}

/// The degree-6 potential `p(a,h,x) = x³ − (3/2)h x² − 3a x` at the variable `x`.
pub fn potential(x: &MultiPoly) -> MultiPoly {
    let a = MultiPoly::var(Var::A);
    let h = MultiPoly::var(Var::H);
    x.pow(3) - (&h * &x.pow(2)).scale(&rat(3, 2)) - (&a * x).scale(&int(3))
}

/// `x² − h x − a`, the defining relation of the Frobenius algebra.
pub fn frobenius_relation(x: &MultiPoly) -> MultiPoly {
    x.pow(2) - &MultiPoly::var(Var::H) * x - MultiPoly::var(Var::A)
}

/// Remainder of `p` modulo `v² − h v − a`, of degree at most one in `v`.
pub fn reduce_frobenius(p: &MultiPoly, v: Var) -> MultiPoly {
    let coeffs = p.coefficients_in(v);
    let Some(&top) = coeffs.keys().next_back() else {
        return MultiPoly::zero();
    };
    if top < 2 {
        return p.clone();
    }
    let (a, h) = (MultiPoly::a(), MultiPoly::h());
    // Horner: keep `r0 + r1·v`, multiply by v and add the next coefficient.
    let (mut r0, mut r1) = (MultiPoly::zero(), MultiPoly::zero());
    for k in (0..=top).rev() {
        let next0 = &r1 * &a;
        let next1 = &r0 + &(&r1 * &h);
        r0 = next0 + coeffs.get(&k).cloned().unwrap_or_default();
        r1 = next1;
    }
    r0 + r1 * MultiPoly::var(v)
}
