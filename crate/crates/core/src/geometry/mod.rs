//! The Laguerre map, decomposability of 2-vectors, fiber lines and the
//! configuration conditions a point set must satisfy to lie in a
//! zero-dimensional eigenscheme.

mod config;

pub use config::{
    collinearity_report, configuration_report, curve_incidence_report, ConfigReport, CurveCandidate, CurveSearch,
    LineIncidence, SUBSET_CAP,
};

use num::complex::Complex64;
use num::{BigRational, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, RatMatrix};
use crate::point::ProjPoint;
use crate::tensor::{determinantal_generators, pair_index, pairs, triples, PSTensor, DEFAULT_TOL};

/// Rank tolerance for floating 2-vectors, relative to the largest singular value.
pub const RANK_TOL: f64 = 1e-8;

/// Coordinates `p_ij`, `0 <= i < j <= n`, of a 2-vector in `Λ² C^{n+1}`.
#[derive(Debug, Clone, PartialEq)]
pub enum PluckerVector {
    Rational { n: usize, coords: Vec<BigRational> },
    Complex { n: usize, coords: Vec<Complex64> },
}

impl PluckerVector {
    pub fn rational(n: usize, coords: Vec<BigRational>) -> Result<Self> {
        check_len(n, coords.len())?;
        Ok(PluckerVector::Rational { n, coords })
    }

    pub fn complex(n: usize, coords: Vec<Complex64>) -> Result<Self> {
        check_len(n, coords.len())?;
        Ok(PluckerVector::Complex { n, coords })
    }

    /// `u ∧ v`.
    pub fn wedge(u: &ProjPoint, v: &ProjPoint) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::Dimension { expected: u.len(), found: v.len() });
        }
        let n = u.len() - 1;
        match (u.as_rational(), v.as_rational()) {
            (Some(a), Some(b)) => {
                let coords = pairs(n).into_iter().map(|(i, j)| &a[i] * &b[j] - &a[j] * &b[i]).collect();
                Ok(PluckerVector::Rational { n, coords })
            }
            _ => {
                let (a, b) = (u.to_complex(), v.to_complex());
                let (a, b) = (a.coords(), b.coords());
                let coords = pairs(n).into_iter().map(|(i, j)| a[i] * b[j] - a[j] * b[i]).collect();
                Ok(PluckerVector::Complex { n, coords })
            }
        }
    }

    pub fn n(&self) -> usize {
        match self {
            PluckerVector::Rational { n, .. } | PluckerVector::Complex { n, .. } => *n,
        }
    }

    /// `p_ij` for any `i != j`, with `p_ji = -p_ij`.
    pub fn get_complex(&self, i: usize, j: usize) -> Complex64 {
        let n = self.n();
        let (a, b, sign) = if i < j { (i, j, 1.0) } else { (j, i, -1.0) };
        if a == b {
            return Complex64::zero();
        }
        let k = pair_index(n, a, b);
        match self {
            PluckerVector::Rational { coords, .. } => Complex64::new(sign * to_f64(&coords[k]), 0.0),
            PluckerVector::Complex { coords, .. } => coords[k] * sign,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            PluckerVector::Rational { coords, .. } => coords.iter().all(|c| c.is_zero()),
            PluckerVector::Complex { coords, .. } => coords.iter().all(|c| c.norm() == 0.0),
        }
    }
}

impl serde::Serialize for PluckerVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PluckerVector", 2)?;
        st.serialize_field("n", &self.n())?;
        match self {
            PluckerVector::Rational { coords, .. } => {
                let c: Vec<String> = coords.iter().map(|x| x.to_string()).collect();
                st.serialize_field("coords", &c)?;
            }
            PluckerVector::Complex { coords, .. } => {
                let c: Vec<[f64; 2]> = coords.iter().map(|z| [z.re, z.im]).collect();
                st.serialize_field("coords", &c)?;
            }
        }
        st.end()
    }
}

fn check_len(n: usize, len: usize) -> Result<()> {
    let expected = (n + 1) * n / 2;
    if n < 1 || len != expected {
        return Err(Error::Dimension { expected, found: len });
    }
    Ok(())
}

fn to_f64(x: &BigRational) -> f64 {
    num::ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
}

/// `λ_T(P) = (f_ij(P))`: the Plücker coordinates of the line through `P` and
/// the point `(g_0(P) : ... : g_n(P))`.
///
/// Fails with [`Error::Indeterminate`] at eigenpoints (exactly for rational
/// points, below [`DEFAULT_TOL`] for complex ones).
pub fn laguerre(t: &PSTensor, p: &ProjPoint) -> Result<PluckerVector> {
    if p.len() != t.n() + 1 {
        return Err(Error::Dimension { expected: t.n() + 1, found: p.len() });
    }
    let f = determinantal_generators(t);
    let omega = match p {
        ProjPoint::Rational(c) => {
            let coords = f.entries().iter().map(|e| e.evaluate(c)).collect::<Result<Vec<_>>>()?;
            PluckerVector::Rational { n: t.n(), coords }
        }
        ProjPoint::Complex(c) => {
            let coords = f.entries().iter().map(|e| e.evaluate_complex(c.coords())).collect::<Result<Vec<_>>>()?;
            if coords.iter().all(|z| z.norm() < DEFAULT_TOL) {
                return Err(Error::Indeterminate);
            }
            PluckerVector::Complex { n: t.n(), coords }
        }
    };
    if omega.is_zero() {
        return Err(Error::Indeterminate);
    }
    Ok(omega)
}

/// The point `(g_0(P) : ... : g_n(P))`, or `None` when all values vanish.
pub fn gradient_point(t: &PSTensor, p: &ProjPoint) -> Result<Option<ProjPoint>> {
    match p {
        ProjPoint::Rational(c) => {
            let v = t.evaluate(c)?;
            Ok(ProjPoint::rational(v).ok())
        }
        ProjPoint::Complex(c) => {
            let v = t.forms().iter().map(|g| g.evaluate_complex(c.coords())).collect::<Result<Vec<_>>>()?;
            Ok(ProjPoint::complex(v).ok())
        }
    }
}

/// The matrix of `v ↦ ω ∧ v`, one row per `i < j < k` with entries
/// `p_jk` at column `i`, `-p_ik` at `j` and `p_ij` at `k`.
#[derive(Debug, Clone, PartialEq)]
pub enum WedgeMatrix {
    Rational(RatMatrix),
    Complex(Vec<Vec<Complex64>>),
}

impl WedgeMatrix {
    pub fn of(omega: &PluckerVector) -> WedgeMatrix {
        let n = omega.n();
        let trs = triples(n);
        match omega {
            PluckerVector::Rational { coords, .. } => {
                let mut m = RatMatrix::zeros(trs.len(), n + 1);
                for (r, &(i, j, k)) in trs.iter().enumerate() {
                    m.set(r, i, coords[pair_index(n, j, k)].clone());
                    m.set(r, j, -coords[pair_index(n, i, k)].clone());
                    m.set(r, k, coords[pair_index(n, i, j)].clone());
                }
                WedgeMatrix::Rational(m)
            }
            PluckerVector::Complex { coords, .. } => {
                let scale = coords.iter().map(|z| z.norm()).fold(0.0, f64::max);
                let c: Vec<Complex64> = coords.iter().map(|z| z / scale).collect();
                let rows = trs
                    .iter()
                    .map(|&(i, j, k)| {
                        let mut row = vec![Complex64::zero(); n + 1];
                        row[i] = c[pair_index(n, j, k)];
                        row[j] = -c[pair_index(n, i, k)];
                        row[k] = c[pair_index(n, i, j)];
                        row
                    })
                    .collect();
                WedgeMatrix::Complex(rows)
            }
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            WedgeMatrix::Rational(m) => linalg::rank(m),
            WedgeMatrix::Complex(rows) => linalg::numeric_rank(rows, RANK_TOL),
        }
    }

    /// Whether `A_ω P = 0`: exactly for rational data, up to `tol` (relative to
    /// the normalized point) otherwise.
    pub fn annihilates(&self, p: &ProjPoint, tol: f64) -> Result<bool> {
        match (self, p) {
            (WedgeMatrix::Rational(m), ProjPoint::Rational(c)) => Ok(m.mul_vec(c)?.iter().all(|x| x.is_zero())),
            _ => {
                let q = p.to_complex();
                let rows: Vec<Vec<Complex64>> = match self {
                    WedgeMatrix::Rational(m) => (0..m.rows())
                        .map(|r| m.row(r).iter().map(|x| Complex64::new(to_f64(x), 0.0)).collect())
                        .collect(),
                    WedgeMatrix::Complex(rows) => rows.clone(),
                };
                if rows.first().is_some_and(|r| r.len() != q.len()) {
                    return Err(Error::Dimension { expected: rows[0].len(), found: q.len() });
                }
                Ok(rows.iter().all(|r| r.iter().zip(q.coords()).map(|(a, b)| a * b).sum::<Complex64>().norm() < tol))
            }
        }
    }
}

/// Rank of `v ↦ ω ∧ v`; it equals `n - 1` exactly when `ω` is decomposable.
pub fn rank_a_omega(omega: &PluckerVector) -> Result<usize> {
    if omega.is_zero() {
        return Err(Error::ZeroPoint);
    }
    Ok(WedgeMatrix::of(omega).rank())
}

/// Linear equations `p_ij P_k - p_ik P_j + p_jk P_i = 0` of the line with
/// Plücker coordinates `ω`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberLine {
    pub equations: WedgeMatrix,
}

impl FiberLine {
    pub fn contains(&self, p: &ProjPoint) -> Result<bool> {
        self.equations.annihilates(p, DEFAULT_TOL)
    }

    /// Two points spanning the line (rational data only).
    pub fn spanning_points(&self) -> Option<Vec<ProjPoint>> {
        match &self.equations {
            WedgeMatrix::Rational(m) => {
                let k = linalg::kernel_basis(m);
                k.vectors.into_iter().map(|v| ProjPoint::rational(v).ok()).collect()
            }
            WedgeMatrix::Complex(_) => None,
        }
    }
}

/// The fiber line of the Laguerre map through `ω`; fails unless `ω` is a
/// nonzero decomposable 2-vector.
pub fn fiber_line(omega: &PluckerVector) -> Result<FiberLine> {
    let rank = rank_a_omega(omega)?;
    let expected = omega.n() - 1;
    if rank != expected {
        return Err(Error::NotDecomposable { rank, expected });
    }
    Ok(FiberLine { equations: WedgeMatrix::of(omega) })
}
