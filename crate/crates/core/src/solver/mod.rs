//! Eigenpoint enumeration: closed form for Fermat tensors, exact and
//! numerical roots on the projective line, and a resultant-based solver in the
//! plane.

mod plane;
pub mod univariate;

pub use plane::{solve_eigenpoints_p2, DEDUP_TOL};

use std::cmp::Ordering;

use num::complex::Complex64;
use num::{BigRational, One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::point::ProjPoint;
use crate::poly::Monomial;
use crate::tensor::{determinantal_generators, residual, w_count, PSTensor, SymTensor};
use univariate::{aberth, RatUni};

/// One eigenpoint with its bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpoint {
    pub point: ProjPoint,
    pub multiplicity: usize,
    /// `max |f_ij|` at the normalized point; `None` for exact points.
    pub residual: Option<f64>,
    /// `false` when Newton polishing did not reach the tolerance.
    pub polished: bool,
}

/// Eigenpoints in canonical order, with per-chart diagnostics.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EigenpointSet {
    pub points: Vec<Eigenpoint>,
    pub warnings: Vec<String>,
}

impl EigenpointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of points counted with multiplicity.
    pub fn degree(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity).sum()
    }

    pub fn projective_points(&self) -> Vec<ProjPoint> {
        self.points.iter().map(|p| p.point.clone()).collect()
    }

    fn sort(&mut self) {
        self.points.sort_by(|a, b| canonical_cmp(&a.point, &b.point));
    }
}

impl Serialize for Eigenpoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Eigenpoint", 4)?;
        st.serialize_field("coords", &crate::io::point_to_json(&self.point))?;
        st.serialize_field("multiplicity", &self.multiplicity)?;
        st.serialize_field("residual", &self.residual)?;
        st.serialize_field("polished", &self.polished)?;
        st.end()
    }
}

impl Serialize for EigenpointSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("EigenpointSet", 3)?;
        st.serialize_field("count", &self.points.len())?;
        st.serialize_field("points", &self.points)?;
        st.serialize_field("warnings", &self.warnings)?;
        st.end()
    }
}

/// Orders exact points before floating ones, exact points by coordinates,
/// floating points by rounded real then imaginary parts.
fn canonical_cmp(a: &ProjPoint, b: &ProjPoint) -> Ordering {
    match (a, b) {
        (ProjPoint::Rational(x), ProjPoint::Rational(y)) => y.cmp(x),
        (ProjPoint::Rational(_), ProjPoint::Complex(_)) => Ordering::Less,
        (ProjPoint::Complex(_), ProjPoint::Rational(_)) => Ordering::Greater,
        (ProjPoint::Complex(x), ProjPoint::Complex(y)) => {
            let key = |c: &crate::point::ComplexPoint| -> Vec<i64> {
                c.coords().iter().flat_map(|z| [round_key(z.re), round_key(z.im)]).collect()
            };
            key(y).cmp(&key(x))
        }
    }
}

fn round_key(x: f64) -> i64 {
    (x * 1e8).round() as i64
}

/// Eigenpoints of `x_0^d + ... + x_n^d`: for each nonempty support, the first
/// support coordinate is one and the others are `(d-2)`-th roots of unity.
/// Exact for `d` in `{3, 4}`, floating otherwise.
pub fn fermat_eigenpoints(n: usize, d: u32) -> Result<EigenpointSet> {
    if n < 1 || d < 3 {
        return Err(Error::InvalidArgument(format!("Fermat eigenpoints need n >= 1 and d >= 3, got ({n},{d})")));
    }
    let nv = n + 1;
    let m = (d - 2) as usize;
    let exact = d <= 4;
    let t = crate::tensor::gradient_tensor(&SymTensor::fermat(n, d)?);
    let f = determinantal_generators(&t);
    let mut set = EigenpointSet::default();
    for support in 1u32..(1 << nv) {
        let idx: Vec<usize> = (0..nv).filter(|i| support & (1 << i) != 0).collect();
        let free = idx.len() - 1;
        let total = m.pow(free as u32);
        for code in 0..total {
            // digits of `code` in base m pick the root of unity on each free slot
            let mut digits = Vec::with_capacity(free);
            let mut c = code;
            for _ in 0..free {
                digits.push(c % m);
                c /= m;
            }
            let point = if exact {
                let mut coords = vec![BigRational::zero(); nv];
                coords[idx[0]] = BigRational::one();
                for (slot, &k) in idx[1..].iter().zip(&digits) {
                    coords[*slot] = if k == 0 { BigRational::one() } else { -BigRational::one() };
                }
                ProjPoint::rational(coords)?
            } else {
                let mut coords = vec![Complex64::zero(); nv];
                coords[idx[0]] = Complex64::one();
                for (slot, &k) in idx[1..].iter().zip(&digits) {
                    coords[*slot] = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / m as f64);
                }
                ProjPoint::complex(coords)?
            };
            let res = match &point {
                ProjPoint::Rational(_) => None,
                ProjPoint::Complex(c) => Some(residual(&f, c.coords())?),
            };
            set.points.push(Eigenpoint { point, multiplicity: 1, residual: res, polished: true });
        }
    }
    debug_assert_eq!(set.len() as u128, w_count(n, d)?);
    set.sort();
    Ok(set)
}

/// Roots of the single minor `f_01 = x_0 g_1 - x_1 g_0` on the projective line,
/// with multiplicities. Rational roots are exact; the rest come from the
/// numerical root finder applied to each squarefree factor.
pub fn solve_eigenpoints_p1(t: &PSTensor) -> Result<EigenpointSet> {
    if t.n() != 1 {
        return Err(Error::InvalidArgument(format!("expected a tensor on P^1, got n = {}", t.n())));
    }
    let f = determinantal_generators(t);
    let f01 = &f.entries()[0];
    if f01.is_zero() {
        return Err(Error::PositiveDimensional);
    }
    let d = t.d() as usize;
    // f01 = Σ c_k x0^k x1^(d-k)
    let coeffs: Vec<BigRational> =
        (0..=d).map(|k| f01.coefficient(&Monomial::new(vec![k as u32, (d - k) as u32]))).collect();
    let low = coeffs.iter().position(|c| !c.is_zero()).expect("nonzero form");
    let high = coeffs.iter().rposition(|c| !c.is_zero()).expect("nonzero form");
    let mut set = EigenpointSet::default();
    let exact_point = |c: Vec<BigRational>| ProjPoint::rational(c);
    if low > 0 {
        // x0^low divides: the point (0 : 1)
        set.points.push(Eigenpoint {
            point: exact_point(vec![BigRational::zero(), BigRational::one()])?,
            multiplicity: low,
            residual: None,
            polished: true,
        });
    }
    if high < d {
        set.points.push(Eigenpoint {
            point: exact_point(vec![BigRational::one(), BigRational::zero()])?,
            multiplicity: d - high,
            residual: None,
            polished: true,
        });
    }
    // remaining roots t = x0 / x1 of Σ_{k=low}^{high} c_k t^(k-low)
    let p = RatUni::new(coeffs[low..=high].to_vec());
    for (factor, mult) in p.squarefree_decomposition() {
        let mut rest = factor.clone();
        for r in factor.rational_roots()? {
            set.points.push(Eigenpoint {
                point: exact_point(vec![r.clone(), BigRational::one()])?,
                multiplicity: mult,
                residual: None,
                polished: true,
            });
            rest = rest.div_exact(&RatUni::new(vec![-r, BigRational::one()]));
        }
        if rest.degree().unwrap_or(0) == 0 {
            continue;
        }
        for z in aberth(&rest.to_complex())? {
            let z = polish_root(&rest, z);
            let point = ProjPoint::complex(vec![z, Complex64::one()])?;
            let ProjPoint::Complex(c) = &point else { unreachable!() };
            let res = residual(&f, c.coords())?;
            set.points.push(Eigenpoint { point, multiplicity: mult, residual: Some(res), polished: true });
        }
    }
    set.sort();
    Ok(set)
}

/// A few Newton steps on the exact polynomial evaluated in floating point.
fn polish_root(p: &RatUni, mut z: Complex64) -> Complex64 {
    let c = p.to_complex();
    for _ in 0..5 {
        let mut v = Complex64::zero();
        let mut dv = Complex64::zero();
        for a in c.iter().rev() {
            dv = dv * z + v;
            v = v * z + a;
        }
        if dv.norm() == 0.0 {
            break;
        }
        let step = v / dv;
        z -= step;
        if step.norm() <= f64::EPSILON * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use crate::tensor::{gradient_tensor, is_eigenpoint, DEFAULT_TOL};

    #[test]
    fn fermat_counts() {
        for n in 1..=4 {
            for d in 3..=6 {
                let s = fermat_eigenpoints(n, d).unwrap();
                assert_eq!(s.len() as u128, w_count(n, d).unwrap(), "({n},{d})");
            }
        }
    }

    #[test]
    fn fermat_binary_cubic() {
        let s = fermat_eigenpoints(1, 3).unwrap();
        let pts: Vec<_> = s.points.iter().map(|p| p.point.as_rational().unwrap().to_vec()).collect();
        assert_eq!(pts, vec![vec![rat(1), rat(1)], vec![rat(1), rat(0)], vec![rat(0), rat(1)]]);
    }

    #[test]
    fn fermat_points_are_eigenpoints() {
        for (n, d) in [(2, 3), (2, 4), (3, 4), (2, 5)] {
            let t = gradient_tensor(&SymTensor::fermat(n, d).unwrap());
            for p in fermat_eigenpoints(n, d).unwrap().points {
                assert!(is_eigenpoint(&t, &p.point, DEFAULT_TOL).unwrap().is_eigenpoint);
            }
        }
    }

    #[test]
    fn binary_fermat_cubic_solved_exactly() {
        let t = gradient_tensor(&SymTensor::fermat(1, 3).unwrap());
        let s = solve_eigenpoints_p1(&t).unwrap();
        assert_eq!(s.projective_points(), fermat_eigenpoints(1, 3).unwrap().projective_points());
    }

    #[test]
    fn binary_cubic_with_complex_roots() {
        // f01 = x0^3 - x1^3
        let t = PSTensor::parse(1, 3, &["x1^2", "x0^2"]).unwrap();
        let s = solve_eigenpoints_p1(&t).unwrap();
        assert_eq!(s.degree(), 3);
        assert_eq!(s.points[0].point, ProjPoint::from_integers(&[1, 1]).unwrap());
        for p in &s.points[1..] {
            assert!(p.point.as_rational().is_none());
            assert!(p.residual.unwrap() < 1e-12);
        }
    }

    #[test]
    fn binary_multiplicities() {
        // g = (x0 x1, x1^2 + x0^2): f01 = x0 (x1^2 + x0^2) - x1 * x0 x1 = x0^3
        let t = PSTensor::parse(1, 3, &["x0x1", "x1^2 + x0^2"]).unwrap();
        let s = solve_eigenpoints_p1(&t).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.points[0].multiplicity, 3);
    }

    #[test]
    fn binary_identity_is_positive_dimensional() {
        let t = PSTensor::parse(1, 2, &["x0", "x1"]).unwrap();
        assert_eq!(solve_eigenpoints_p1(&t), Err(Error::PositiveDimensional));
    }
}
