//! Sparse multivariate polynomials with exact rational coefficients.

mod monomial;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use monomial::{binomial, monomial_basis, Monomial, MonomialIndex};

/// A polynomial in `x0, ..., x{nvars-1}` over the rationals.
///
/// Terms are kept in a map ordered by [`Monomial`]'s graded reverse-lexicographic
/// order; no zero coefficient is ever stored, so the zero polynomial is an empty
/// map tagged with its variable count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

impl RationalPoly {
    pub fn zero(nvars: usize) -> Self {
        RationalPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i), BigRational::one())
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        RationalPoly { nvars, terms }
    }

    /// Builds a polynomial from (monomial, coefficient) pairs, summing repeats.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = RationalPoly::zero(nvars);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::VariableCount { left: nvars, right: m.nvars() });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Inverse of [`RationalPoly::coefficient_vector`].
    pub fn from_coefficients(index: &MonomialIndex, coeffs: &[BigRational]) -> Self {
        let nvars = index.basis().first().map_or(0, |m| m.nvars());
        let mut terms = BTreeMap::new();
        for (m, c) in index.basis().iter().zip(coeffs) {
            if !c.is_zero() {
                terms.insert(m.clone(), c.clone());
            }
        }
        RationalPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order, leading term first.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// True when every term has the same total degree (the zero polynomial is
    /// homogeneous of every degree).
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// True when the polynomial is zero or homogeneous of degree `d`.
    pub fn is_form_of_degree(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &RationalPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCount { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &RationalPoly) -> Result<RationalPoly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &RationalPoly) -> Result<RationalPoly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &RationalPoly) -> Result<RationalPoly> {
        self.check_vars(other)?;
        let mut out = RationalPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> RationalPoly {
        if c.is_zero() {
            return RationalPoly::zero(self.nvars);
        }
        RationalPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by `x_i`.
    pub fn times_var(&self, i: usize) -> RationalPoly {
        RationalPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.times_var(i), c.clone())).collect(),
        }
    }

    pub fn times_monomial(&self, mono: &Monomial) -> RationalPoly {
        RationalPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> RationalPoly {
        let mut acc = RationalPoly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to `x_i`.
    pub fn partial_derivative(&self, i: usize) -> Result<RationalPoly> {
        if i >= self.nvars {
            return Err(Error::VariableIndex { index: i, nvars: self.nvars });
        }
        let mut out = RationalPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if let Some(q) = m.div_var(i) {
                out.add_term(q, c * BigRational::from_integer(BigInt::from(e)));
            }
        }
        Ok(out)
    }

    /// Infallible derivative for internal callers that already know `i` is in range.
    pub(crate) fn diff(&self, i: usize) -> RationalPoly {
        self.partial_derivative(i).expect("variable index in range")
    }

    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.nvars {
            return Err(Error::Dimension { expected: self.nvars, found: point.len() });
        }
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    v *= num::pow(x.clone(), e as usize);
                }
            }
            total += v;
        }
        Ok(total)
    }

    pub fn evaluate_complex(&self, point: &[Complex64]) -> Result<Complex64> {
        if point.len() != self.nvars {
            return Err(Error::Dimension { expected: self.nvars, found: point.len() });
        }
        let mut total = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut v = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    v *= x.powu(e);
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Coordinates with respect to a monomial basis; `None` when some term lies
    /// outside the basis.
    pub fn coefficient_vector(&self, index: &MonomialIndex) -> Option<Vec<BigRational>> {
        let mut v = vec![BigRational::zero(); index.len()];
        for (m, c) in &self.terms {
            v[index.get(m)?] = c.clone();
        }
        Some(v)
    }

    /// Leading coefficient in the canonical order.
    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.terms.values().next_back()
    }

    /// Scales so the leading coefficient is one; the zero polynomial is unchanged.
    pub fn monic(&self) -> RationalPoly {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Returns `c` with `other = c * self`, if such a rational exists.
    pub fn proportionality(&self, other: &RationalPoly) -> Option<BigRational> {
        if self.nvars != other.nvars {
            return None;
        }
        if self.is_zero() {
            return if other.is_zero() { Some(BigRational::one()) } else { None };
        }
        let (m, a) = self.terms.iter().next_back()?;
        let c = other.coefficient(m) / a;
        if &self.scale(&c) == other {
            Some(c)
        } else {
            None
        }
    }

    /// Parses the text format `c*x0^a0*x1^a1 + ...` (explicit `*` and `^1` optional).
    pub fn parse(s: &str, nvars: usize) -> Result<RationalPoly> {
        parse::parse_poly(s, nvars)
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let is_const = m.degree() == 0;
            if abs.is_one() && !is_const {
                write!(f, "{m}")?;
            } else if is_const {
                write!(f, "{abs}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a RationalPoly> for &'a RationalPoly {
            type Output = RationalPoly;
            fn $method(self, rhs: &'a RationalPoly) -> RationalPoly {
                self.$checked(rhs).expect("polynomials over the same variables")
            }
        }
        impl $trait<RationalPoly> for RationalPoly {
            type Output = RationalPoly;
            fn $method(self, rhs: RationalPoly) -> RationalPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> RationalPoly {
        RationalPoly::parse(s, n).unwrap()
    }

    #[test]
    fn add_examples() {
        assert!((p("x0", 2) + p("-x0", 2)).is_zero());
        assert_eq!(p("x0^2", 2) + p("x1^2", 2), p("x0^2 + x1^2", 2));
        assert!((p("x0*x1", 2) - p("x1*x0", 2)).is_zero());
    }

    #[test]
    fn add_rejects_mismatched_variables() {
        assert_eq!(
            p("x0", 2).checked_add(&p("x0", 3)),
            Err(Error::VariableCount { left: 2, right: 3 })
        );
        assert!(p("x0", 2).checked_mul(&p("x0", 3)).is_err());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(p("x0", 2) * p("x1", 2), p("x0*x1", 2));
        assert_eq!(p("x0+x1", 2) * p("x0-x1", 2), p("x0^2-x1^2", 2));
        assert!((RationalPoly::zero(2) * p("x0^3+7", 2)).is_zero());
        let q = p("x0^2 + x0*x1", 2) * p("x1^3", 2);
        assert!(q.is_homogeneous());
        assert_eq!(q.degree(), Some(5));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p("x0^2*x1", 2).partial_derivative(0).unwrap(), p("2*x0*x1", 2));
        assert!(p("x0^3", 2).partial_derivative(1).unwrap().is_zero());
        assert_eq!(p("x0*x1*x2", 3).partial_derivative(2).unwrap(), p("x0*x1", 3));
        assert_eq!(
            p("x0", 2).partial_derivative(2),
            Err(Error::VariableIndex { index: 2, nvars: 2 })
        );
    }

    #[test]
    fn evaluate_examples() {
        let r = |v: &[i64]| v.iter().map(|&x| rat(x)).collect::<Vec<_>>();
        assert_eq!(p("x0^2+x1^2", 2).evaluate(&r(&[1, 1])).unwrap(), rat(2));
        assert_eq!(p("x0*x1*x2", 3).evaluate(&r(&[1, 0, 5])).unwrap(), rat(0));
        assert_eq!(p("x0^3+x1^3+x2^3", 3).evaluate(&r(&[1, 1, 0])).unwrap(), rat(2));
        assert!(p("x0", 2).evaluate(&r(&[1])).is_err());
        let z = p("x0^2+x1^2", 2)
            .evaluate_complex(&[Complex64::new(0.0, 1.0), Complex64::new(1.0, 0.0)])
            .unwrap();
        assert!(z.norm() < 1e-15);
    }

    #[test]
    fn printing_is_canonical() {
        assert_eq!(p("x1^2 + x0^2", 2).to_string(), "x0^2 + x1^2");
        assert_eq!(p("-3/6*x0x1 + 2", 2).to_string(), "-1/2*x0*x1 + 2");
        assert_eq!(p("x2^2 - x0x2 + x1^2", 3).to_string(), "x1^2 - x0*x2 + x2^2");
        assert_eq!(RationalPoly::zero(3).to_string(), "0");
    }

    #[test]
    fn proportionality_detects_scalars() {
        let a = p("x0^2 - 2*x1^2", 2);
        assert_eq!(a.proportionality(&a.scale(&ratio(-3, 2))), Some(ratio(-3, 2)));
        assert_eq!(a.proportionality(&p("x0^2", 2)), None);
    }
}
