use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::{fmt_rational, Rational, Var};
use crate::error::{Error, Result};

/// Exponent vector indexed by [`Var::index`], trailing zeros trimmed.
///
/// Ordered graded-lexicographically: total degree first, ties broken by the
/// exponent of the largest variable downwards.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        let mut exps = vec![0; v.index() + 1];
        exps[v.index()] = e;
        Monomial::from_exponents(exps)
    }

    pub fn from_exponents(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.get(v.index()).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Quantum grading: `4·e_a + 2·e_h + 2·Σ e_x`.
    pub fn grading(&self) -> i32 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &e)| Var::from_index(i).grading() * e as i32)
            .sum()
    }

    pub fn vars(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (Var::from_index(i), e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let exps = (0..n)
            .map(|i| self.0.get(i).unwrap_or(&0) + other.0.get(i).unwrap_or(&0))
            .collect();
        Monomial(exps)
    }

    /// `self / other` if `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut exps = self.0.clone();
        for (i, &e) in other.0.iter().enumerate() {
            exps[i] = exps[i].checked_sub(e)?;
        }
        Some(Monomial::from_exponents(exps))
    }

    /// Removes `v` from the monomial, returning its exponent.
    fn split_off(&self, v: Var) -> (Monomial, u32) {
        let e = self.exponent(v);
        if e == 0 {
            return (self.clone(), 0);
        }
        let mut exps = self.0.clone();
        exps[v.index()] = 0;
        (Monomial::from_exponents(exps), e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| {
                let n = self.0.len().max(other.0.len());
                for i in (0..n).rev() {
                    let (a, b) = (self.0.get(i).unwrap_or(&0), other.0.get(i).unwrap_or(&0));
                    match a.cmp(b) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in self.vars() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Result of [`MultiPoly::homogeneous_degree`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial, homogeneous of every degree.
    Zero,
    Degree(i32),
    Inhomogeneous,
}

impl Homogeneity {
    pub fn degree(self) -> Option<i32> {
        match self {
            Homogeneity::Degree(d) => Some(d),
            _ => None,
        }
    }

    /// True if the polynomial is zero or homogeneous of degree `d`.
    pub fn admits(self, d: i32) -> bool {
        match self {
            Homogeneity::Zero => true,
            Homogeneity::Degree(e) => e == d,
            Homogeneity::Inhomogeneous => false,
        }
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is ring
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(super::int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v), Rational::one())
    }

    pub fn a() -> Self {
        Self::var(Var::A)
    }

    pub fn h() -> Self {
        Self::var(Var::H)
    }

    pub fn x(i: u32) -> Self {
        Self::var(Var::X(i))
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial (including zero).
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self
                .terms
                .get(&Monomial::one())
                .cloned(),
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.vars().map(|(v, _)| v))
            .collect()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(n, k)| (n.mul(m), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Common quantum grading of all monomials.
    pub fn homogeneous_degree(&self) -> Homogeneity {
        let mut degrees = self.terms.keys().map(Monomial::grading);
        match degrees.next() {
            None => Homogeneity::Zero,
            Some(d) if degrees.all(|e| e == d) => Homogeneity::Degree(d),
            Some(_) => Homogeneity::Inhomogeneous,
        }
    }

    /// Simultaneous substitution `v ↦ bindings[v]`.
    ///
    /// Bindings whose right-hand sides mention other bound variables in a
    /// cycle (`x1 ↦ x2, x2 ↦ x1`) are rejected. A variable bound to an
    /// expression in itself is allowed.
    pub fn substitute(&self, bindings: &BTreeMap<Var, MultiPoly>) -> Result<MultiPoly> {
        check_acyclic(bindings)?;
        Ok(self.substitute_unchecked(bindings))
    }

    pub(crate) fn substitute_unchecked(&self, bindings: &BTreeMap<Var, MultiPoly>) -> MultiPoly {
        if bindings.is_empty() {
            return self.clone();
        }
        let mut powers: BTreeMap<(Var, u32), MultiPoly> = BTreeMap::new();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut rest = Vec::new();
            let mut term = MultiPoly::constant(c.clone());
            for (v, e) in m.vars() {
                match bindings.get(&v) {
                    Some(val) => {
                        let p = powers.entry((v, e)).or_insert_with(|| val.pow(e));
                        term = &term * &*p;
                    }
                    None => rest.push((v, e)),
                }
            }
            let mut mono = Monomial::one();
            for (v, e) in rest {
                mono = mono.mul(&Monomial::var_pow(v, e));
            }
            out += term.mul_monomial(&mono, &Rational::one());
        }
        out
    }

    /// Exact quotient `self / d`; fails unless `d` divides `self`.
    pub fn divide_exact(&self, d: &MultiPoly) -> Result<MultiPoly> {
        let inexact = || Error::InexactDivision {
            dividend: self.to_string(),
            divisor: d.to_string(),
        };
        let (dm, dc) = d.leading_term().ok_or_else(inexact)?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((pm, pc)) = rem.leading_term() {
            let m = pm.checked_div(dm).ok_or_else(inexact)?;
            let c = pc / dc;
            rem -= d.mul_monomial(&m, &c);
            quot.add_term(m, c);
        }
        Ok(quot)
    }

    pub fn evaluate(&self, point: &BTreeMap<Var, Rational>) -> Result<Rational> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.vars() {
                let x = point.get(&v).ok_or(Error::UnboundVariable(v))?;
                t *= num_traits::pow(x.clone(), e as usize);
            }
            total += t;
        }
        Ok(total)
    }

    /// Substitutes constants for the listed variables and leaves the rest.
    pub fn evaluate_partial(&self, point: &BTreeMap<Var, Rational>) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = m.exponents().to_vec();
            for (v, e) in m.vars() {
                if let Some(x) = point.get(&v) {
                    coeff *= num_traits::pow(x.clone(), e as usize);
                    exps[v.index()] = 0;
                }
            }
            out.add_term(Monomial::from_exponents(exps), coeff);
        }
        out
    }

    /// Writes `self = c·v − c·α` with `c` a nonzero rational and `α` free of
    /// `v`, returning `(c, α)`.
    pub fn as_linear_in(&self, v: Var) -> Option<(Rational, MultiPoly)> {
        let unit = Monomial::var(v);
        let mut c = None;
        let mut rest = MultiPoly::zero();
        for (m, k) in &self.terms {
            if m.exponent(v) == 0 {
                rest.add_term(m.clone(), k.clone());
            } else if *m == unit {
                c = Some(k.clone());
            } else {
                return None;
            }
        }
        let c = c?;
        let alpha = rest.scale(&(-c.recip()));
        Some((c, alpha))
    }

    /// Polynomial in `v` with coefficients free of `v`, indexed by power.
    pub fn coefficients_in(&self, v: Var) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (rest, e) = m.split_off(v);
            out.entry(e).or_default().add_term(rest, c.clone());
        }
        out
    }
}

fn check_acyclic(bindings: &BTreeMap<Var, MultiPoly>) -> Result<()> {
    // Depth-first search over "v's value mentions bound w ≠ v".
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    let deps: BTreeMap<Var, Vec<Var>> = bindings
        .iter()
        .map(|(v, p)| {
            let ds = p
                .variables()
                .into_iter()
                .filter(|w| w != v && bindings.contains_key(w))
                .collect();
            (*v, ds)
        })
        .collect();
    let mut marks: BTreeMap<Var, Mark> = deps.keys().map(|v| (*v, Mark::New)).collect();
    fn visit(
        v: Var,
        deps: &BTreeMap<Var, Vec<Var>>,
        marks: &mut BTreeMap<Var, Mark>,
    ) -> Result<()> {
        match marks[&v] {
            Mark::Done => return Ok(()),
            Mark::Active => return Err(Error::CyclicSubstitution(v)),
            Mark::New => {}
        }
        marks.insert(v, Mark::Active);
        for &w in &deps[&v] {
            visit(w, deps, marks)?;
        }
        marks.insert(v, Mark::Done);
        Ok(())
    }
    for v in deps.keys() {
        visit(*v, &deps, &mut marks)?;
    }
    Ok(())
}

impl From<Var> for MultiPoly {
    fn from(v: Var) -> Self {
        MultiPoly::var(v)
    }
}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<i64> for MultiPoly {
    fn from(n: i64) -> Self {
        MultiPoly::int(n)
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign for MultiPoly {
    fn add_assign(&mut self, rhs: MultiPoly) {
        if self.terms.len() < rhs.terms.len() {
            let lhs = std::mem::replace(self, rhs);
            *self += &lhs;
        } else {
            for (m, c) in rhs.terms {
                self.add_term(m, c);
            }
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl SubAssign for MultiPoly {
    fn sub_assign(&mut self, rhs: MultiPoly) {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> MultiPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $assign:ident) => {
        impl $tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                let mut out = self.clone();
                out.$assign(rhs);
                out
            }
        }
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(mut self, rhs: MultiPoly) -> MultiPoly {
                self.$assign(rhs);
                self
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(mut self, rhs: &MultiPoly) -> MultiPoly {
                self.$assign(rhs);
                self
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                let mut out = self.clone();
                out.$assign(rhs);
                out
            }
        }
    };
}

forward_binop!(Add, add, add_assign);
forward_binop!(Sub, sub, sub_assign);

impl Mul<MultiPoly> for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Mul<&MultiPoly> for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        &self * rhs
    }
}

impl Mul<MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        self * &rhs
    }
}

impl std::iter::Sum for MultiPoly {
    fn sum<I: Iterator<Item = MultiPoly>>(iter: I) -> MultiPoly {
        let mut acc = MultiPoly::zero();
        for p in iter {
            acc += p;
        }
        acc
    }
}

/// Canonical text: terms in decreasing graded-lex order, e.g.
/// `x1^3 - 3/2*h*x1^2 - 3*a*x1`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&abs))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{potential, rat};

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let prod = &p("x1 + x2") * &p("x1 - x2");
        assert_eq!(prod, p("x1^2 - x2^2"));
    }

    #[test]
    fn potential_from_monomials() {
        let x = MultiPoly::x(1);
        let h = MultiPoly::h();
        let a = MultiPoly::a();
        let built = x.pow(3) - (&h * &x.pow(2)).scale(&rat(3, 2)) - (&a * &x).scale(&rat(3, 1));
        assert_eq!(built, potential(&x));
        assert_eq!(built, p("x1^3 - 3/2*h*x1^2 - 3*a*x1"));
        assert_eq!(&built + &MultiPoly::zero(), built);
    }

    #[test]
    fn substitution_examples() {
        let u2 = p("-3*(x3 + x4) + 3*h");
        let b = BTreeMap::from([(Var::X(4), p("h - x2"))]);
        assert_eq!(u2.substitute(&b).unwrap(), p("3*x2 - 3*x3"));

        let id = BTreeMap::from([(Var::X(1), p("x1"))]);
        assert_eq!(p("x1").substitute(&id).unwrap(), p("x1"));

        let omega = potential(&MultiPoly::x(2)) - potential(&MultiPoly::x(1));
        let collapse = BTreeMap::from([(Var::X(2), p("x1"))]);
        assert!(omega.substitute(&collapse).unwrap().is_zero());
    }

    #[test]
    fn cyclic_substitution_rejected() {
        let b = BTreeMap::from([(Var::X(1), p("x2")), (Var::X(2), p("x1 + h"))]);
        assert!(matches!(
            p("x1").substitute(&b),
            Err(Error::CyclicSubstitution(_))
        ));
        // Chains are simultaneous, not iterated.
        let chain = BTreeMap::from([(Var::X(1), p("x2")), (Var::X(2), p("x3"))]);
        assert_eq!(p("x1 + x2").substitute(&chain).unwrap(), p("x2 + x3"));
    }

    #[test]
    fn exact_division() {
        let (xi, xj) = (MultiPoly::x(1), MultiPoly::x(2));
        let q = (potential(&xj) - potential(&xi))
            .divide_exact(&(&xj - &xi))
            .unwrap();
        assert_eq!(q, p("x1^2 + x1*x2 + x2^2 - 3/2*h*(x1 + x2) - 3*a"));
        assert_eq!(q.homogeneous_degree(), Homogeneity::Degree(4));

        assert_eq!(p("x1^2 - x2^2").divide_exact(&p("x1 - x2")).unwrap(), p("x1 + x2"));
        let pot = potential(&xi);
        assert_eq!(pot.divide_exact(&MultiPoly::one()).unwrap(), pot);
        assert!(matches!(
            p("x1^2 + 1").divide_exact(&p("x1 - x2")),
            Err(Error::InexactDivision { .. })
        ));
        assert!(p("x1").divide_exact(&MultiPoly::zero()).is_err());
    }

    #[test]
    fn homogeneity() {
        assert_eq!(potential(&MultiPoly::x(3)).homogeneous_degree(), Homogeneity::Degree(6));
        assert_eq!(p("x1 + a").homogeneous_degree(), Homogeneity::Inhomogeneous);
        assert_eq!(MultiPoly::zero().homogeneous_degree(), Homogeneity::Zero);
    }

    #[test]
    fn evaluation() {
        use crate::poly::int;
        let f = p("x0^2 - h*x0 - a");
        let pt = BTreeMap::from([(Var::X(0), int(1)), (Var::H, int(1)), (Var::A, int(0))]);
        assert_eq!(f.evaluate(&pt).unwrap(), int(0));

        let pot = potential(&MultiPoly::x(0));
        let pt = BTreeMap::from([(Var::X(0), int(2)), (Var::H, int(0)), (Var::A, int(0))]);
        assert_eq!(pot.evaluate(&pt).unwrap(), int(8));

        let disc = p("h^2 + 4*a");
        let pt = BTreeMap::from([(Var::H, int(1)), (Var::A, rat(-1, 4))]);
        assert_eq!(disc.evaluate(&pt).unwrap(), int(0));

        let missing = BTreeMap::from([(Var::H, int(1))]);
        assert_eq!(disc.evaluate(&missing), Err(Error::UnboundVariable(Var::A)));
    }

    #[test]
    fn linear_form_detection() {
        let (c, alpha) = p("-3*x4 - 3*x6 + 3*h").as_linear_in(Var::X(6)).unwrap();
        assert_eq!(c, rat(-3, 1));
        assert_eq!(alpha, p("h - x4"));
        assert!(p("x1*x2 - x3").as_linear_in(Var::X(1)).is_none());
        assert!(p("x1^2 + x2").as_linear_in(Var::X(1)).is_none());
        assert!(p("x2").as_linear_in(Var::X(1)).is_none());
    }

    #[test]
    fn canonical_text() {
        assert_eq!(p("-3*a*x1 + x1^3 - 3/2*h*x1^2").to_string(), "x1^3 - 3/2*h*x1^2 - 3*a*x1");
        assert_eq!(p("2 - x1").to_string(), "-x1 + 2");
        assert_eq!(MultiPoly::zero().to_string(), "0");
        let q = p("x1^2 + x1*x2 + x2^2 - 3/2*h*x1 - 3/2*h*x2 - 3*a");
        assert_eq!(q.to_string().parse::<MultiPoly>().unwrap(), q);
    }
}
