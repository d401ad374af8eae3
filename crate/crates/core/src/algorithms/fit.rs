use num::{BigRational, One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, RatMatrix};
use crate::point::ProjPoint;
use crate::poly::{binomial, Monomial, MonomialIndex, RationalPoly};
use crate::tensor::{pairs, AnyTensor, PSTensor, SymTensor};

/// Result of interpolating a tensor through a set of points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessResult {
    pub found: bool,
    pub witness: Option<AnyTensor>,
    pub kernel_dim: usize,
    pub trivial_dim: usize,
}

/// Looks for a tensor, outside the family whose minors vanish identically,
/// having every given point as an eigenpoint.
///
/// The conditions `x_i g_j(p) - x_j g_i(p) = 0` (or `x_i ∂_j f(p) - x_j ∂_i f(p) = 0`)
/// are linear in the coefficients of the tensor. The witness is the first
/// kernel basis vector not in the span of the trivial family, scaled so its
/// first nonzero coefficient is one.
pub fn fit_tensor_to_points(points: &[ProjPoint], d: u32, symmetric: bool) -> Result<WitnessResult> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("d must be at least 2, got {d}")));
    }
    let Some(first) = points.first() else {
        return Err(Error::InvalidArgument("no points given".into()));
    };
    let nv = first.len();
    if nv < 2 {
        return Err(Error::InvalidArgument("points need at least two coordinates".into()));
    }
    let n = nv - 1;
    let mut coords: Vec<&[BigRational]> = Vec::with_capacity(points.len());
    for (idx, p) in points.iter().enumerate() {
        if p.len() != nv {
            return Err(Error::Dimension { expected: nv, found: p.len() });
        }
        let c = p.as_rational().ok_or(Error::NonRationalPoint(idx))?;
        if let Some(prev) = coords.iter().position(|q| *q == c) {
            return Err(Error::DuplicatePoint(prev, idx));
        }
        coords.push(c);
    }

    let prs = pairs(n);
    let (index, unknowns) = if symmetric {
        let idx = MonomialIndex::new(nv, d);
        let len = idx.len();
        (idx, len)
    } else {
        let idx = MonomialIndex::new(nv, d - 1);
        let len = nv * idx.len();
        (idx, len)
    };

    let mut m = RatMatrix::zeros(coords.len() * prs.len(), unknowns);
    let mut row = 0;
    for c in &coords {
        for &(i, j) in &prs {
            for (col, mono) in index.basis().iter().enumerate() {
                if symmetric {
                    let v = &c[i] * eval_diff(mono, j, c) - &c[j] * eval_diff(mono, i, c);
                    m.set(row, col, v);
                } else {
                    // x_i g_j(p) - x_j g_i(p)
                    let v = eval(mono, c);
                    m.set(row, j * index.len() + col, &c[i] * &v);
                    m.set(row, i * index.len() + col, -(&c[j] * &v));
                }
            }
            row += 1;
        }
    }
    let kernel = linalg::kernel_basis(&m);

    let trivial = if symmetric { symmetric_trivial(n, d, &index) } else { partially_symmetric_trivial(n, d, &index) };
    let trivial_dim = trivial.len();
    debug_assert_eq!(trivial_dim as u128, trivial_dimension(n, d, symmetric));
    let found = kernel.dim > trivial_dim;

    let mut witness = None;
    if found {
        let base_rank = trivial_dim;
        for v in &kernel.vectors {
            let mut rows = trivial.clone();
            rows.push(v.clone());
            let span = RatMatrix::from_rows(unknowns, rows)?;
            if linalg::rank(&span) > base_rank {
                let v = linalg::normalize_first_nonzero(v);
                witness = Some(if symmetric {
                    AnyTensor::Symmetric(SymTensor::new(n, d, RationalPoly::from_coefficients(&index, &v))?)
                } else {
                    let forms = v.chunks(index.len()).map(|c| RationalPoly::from_coefficients(&index, c)).collect();
                    AnyTensor::PartiallySymmetric(PSTensor::new(n, d, forms)?)
                });
                break;
            }
        }
    }
    Ok(WitnessResult { found, witness, kernel_dim: kernel.dim, trivial_dim })
}

/// Dimension of the tensors whose minors vanish identically: `C(n+d-2, n)` in
/// the partially symmetric case, `1` for even `d` and `0` for odd `d` in the
/// symmetric case.
pub fn trivial_dimension(n: usize, d: u32, symmetric: bool) -> u128 {
    if symmetric {
        u128::from(d.is_multiple_of(2))
    } else {
        binomial((n + d as usize - 2) as u64, n as u64)
    }
}

fn eval(m: &Monomial, c: &[BigRational]) -> BigRational {
    let mut acc = BigRational::one();
    for (x, &e) in c.iter().zip(m.exponents()) {
        for _ in 0..e {
            acc *= x;
        }
    }
    acc
}

fn eval_diff(m: &Monomial, i: usize, c: &[BigRational]) -> BigRational {
    let e = m.exponents()[i];
    match m.div_var(i) {
        Some(q) => eval(&q, c) * BigRational::from_integer(e.into()),
        None => BigRational::zero(),
    }
}

fn partially_symmetric_trivial(n: usize, d: u32, index: &MonomialIndex) -> Vec<Vec<BigRational>> {
    let nv = n + 1;
    MonomialIndex::new(nv, d - 2)
        .basis()
        .iter()
        .map(|u| {
            let mut v = vec![BigRational::zero(); nv * index.len()];
            for k in 0..nv {
                let pos = index.get(&u.times_var(k)).expect("degree d-1 monomial");
                v[k * index.len() + pos] = BigRational::one();
            }
            v
        })
        .collect()
}

fn symmetric_trivial(n: usize, d: u32, index: &MonomialIndex) -> Vec<Vec<BigRational>> {
    if d % 2 == 1 {
        return Vec::new();
    }
    let q = sum_of_squares(n + 1);
    vec![q.pow(d / 2).coefficient_vector(index).expect("degree d form")]
}

pub(crate) fn sum_of_squares(nv: usize) -> RationalPoly {
    (0..nv).fold(RationalPoly::zero(nv), |acc, i| {
        let x = RationalPoly::var(nv, i);
        &acc + &(&x * &x)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{is_eigenpoint, DEFAULT_TOL};

    fn pts(rows: &[&[i64]]) -> Vec<ProjPoint> {
        rows.iter().map(|r| ProjPoint::from_integers(r).unwrap()).collect()
    }

    #[test]
    fn coordinate_points_symmetric_cubic() {
        let points = pts(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let r = fit_tensor_to_points(&points, 3, true).unwrap();
        assert!(r.found);
        assert_eq!(r.trivial_dim, 0);
        let w = r.witness.unwrap();
        let t = w.to_partially_symmetric();
        for p in &points {
            assert!(is_eigenpoint(&t, p, DEFAULT_TOL).unwrap().is_eigenpoint);
        }
        assert!(!w.det_tuple().is_zero());
    }

    #[test]
    fn fermat_cubic_points_pin_down_the_form() {
        let points = pts(&[
            &[1, 0, 0],
            &[0, 1, 0],
            &[0, 0, 1],
            &[1, 1, 0],
            &[1, 0, 1],
            &[0, 1, 1],
            &[1, 1, 1],
        ]);
        let r = fit_tensor_to_points(&points, 3, true).unwrap();
        assert!(r.found);
        assert_eq!(r.kernel_dim, r.trivial_dim + 1);
        let AnyTensor::Symmetric(s) = r.witness.unwrap() else { panic!("symmetric witness expected") };
        let fermat = RationalPoly::parse("x0^3 + x1^3 + x2^3", 3).unwrap();
        assert!(fermat.proportionality(s.form()).is_some());
    }

    #[test]
    fn collinear_points_give_degenerate_or_no_witness() {
        let points = pts(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[1, 2, 0]]);
        let r = fit_tensor_to_points(&points, 3, true).unwrap();
        if let Some(w) = r.witness {
            let t = w.to_partially_symmetric();
            for p in &points {
                assert!(is_eigenpoint(&t, p, DEFAULT_TOL).unwrap().is_eigenpoint);
            }
        }
    }

    #[test]
    fn partially_symmetric_trivial_dimension() {
        let points = pts(&[&[1, 0, 0], &[0, 1, 0]]);
        let r = fit_tensor_to_points(&points, 3, false).unwrap();
        assert_eq!(r.trivial_dim, 3);
        assert!(r.found);
        let w = r.witness.unwrap();
        assert!(!w.det_tuple().is_zero());
    }

    #[test]
    fn rejects_bad_input() {
        let dup = pts(&[&[1, 0, 0], &[2, 0, 0]]);
        assert!(matches!(fit_tensor_to_points(&dup, 3, true), Err(Error::DuplicatePoint(0, 1))));
        let c = ProjPoint::complex(vec![num::complex::Complex64::new(1.0, 0.0); 3]).unwrap();
        assert!(matches!(fit_tensor_to_points(&[c], 3, true), Err(Error::NonRationalPoint(0))));
    }
}
