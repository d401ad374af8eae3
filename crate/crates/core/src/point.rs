//! Projective points with exact rational or floating complex coordinates.

use num::complex::Complex64;
use num::{BigRational, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Complex coordinates, scaled so the largest-modulus coordinate equals one.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPoint {
    coords: Vec<Complex64>,
}

impl ComplexPoint {
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        let max = coords.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
        if max == 0.0 || !max.is_finite() {
            return Err(Error::ZeroPoint);
        }
        // Ties within rounding go to the lowest index so normalization is stable.
        let k = coords.iter().position(|z| z.norm() >= max * (1.0 - 1e-9)).expect("max attained");
        let s = coords[k];
        let coords = coords.iter().map(|z| z / s).collect();
        Ok(ComplexPoint { coords })
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Chordal distance `sqrt(1 - |<u,v>|^2 / (|u|^2 |v|^2))` between the lines
    /// spanned by the two coordinate vectors.
    pub fn chordal_distance(&self, other: &ComplexPoint) -> f64 {
        let dot: Complex64 = self.coords.iter().zip(&other.coords).map(|(a, b)| a.conj() * b).sum();
        let na: f64 = self.coords.iter().map(|z| z.norm_sqr()).sum();
        let nb: f64 = other.coords.iter().map(|z| z.norm_sqr()).sum();
        (1.0 - dot.norm_sqr() / (na * nb)).max(0.0).sqrt()
    }
}

/// A point of projective space.
///
/// Rational points are normalized so the first nonzero coordinate is one;
/// complex points follow [`ComplexPoint`]'s largest-modulus normalization.
#[derive(Debug, Clone, PartialEq)]
pub enum ProjPoint {
    Rational(Vec<BigRational>),
    Complex(ComplexPoint),
}

impl ProjPoint {
    pub fn rational(coords: Vec<BigRational>) -> Result<Self> {
        let k = coords.iter().position(|c| !c.is_zero()).ok_or(Error::ZeroPoint)?;
        let s = coords[k].clone();
        Ok(ProjPoint::Rational(coords.into_iter().map(|c| c / &s).collect()))
    }

    pub fn from_integers(coords: &[i64]) -> Result<Self> {
        Self::rational(coords.iter().map(|&c| crate::poly::rat(c)).collect())
    }

    pub fn complex(coords: Vec<Complex64>) -> Result<Self> {
        Ok(ProjPoint::Complex(ComplexPoint::new(coords)?))
    }

    pub fn len(&self) -> usize {
        match self {
            ProjPoint::Rational(c) => c.len(),
            ProjPoint::Complex(c) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn as_rational(&self) -> Option<&[BigRational]> {
        match self {
            ProjPoint::Rational(c) => Some(c),
            ProjPoint::Complex(_) => None,
        }
    }

    /// Floating view of the coordinates (exact points are converted).
    pub fn to_complex(&self) -> ComplexPoint {
        match self {
            ProjPoint::Complex(c) => c.clone(),
            ProjPoint::Rational(c) => ComplexPoint::new(
                c.iter().map(|x| Complex64::new(x.to_f64().unwrap_or(f64::NAN), 0.0)).collect(),
            )
            .expect("nonzero rational point"),
        }
    }

    /// Same projective point: exact comparison of normalized rational
    /// representatives, chordal distance below `tol` otherwise.
    pub fn same_as(&self, other: &ProjPoint, tol: f64) -> bool {
        match (self, other) {
            (ProjPoint::Rational(a), ProjPoint::Rational(b)) => a == b,
            _ => self.to_complex().chordal_distance(&other.to_complex()) < tol,
        }
    }
}
