use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, Zero};

use super::univariate::{aberth, interpolate, RatUni};
use super::{Eigenpoint, EigenpointSet};
use crate::error::{Error, Result};
use crate::hilbert::dimension_probe;
use crate::linalg::{self, RatMatrix};
use crate::point::ProjPoint;
use crate::poly::RationalPoly;
use crate::tensor::{determinantal_generators, residual, DetTuple, PSTensor};

/// Chordal distance below which two solutions are the same point.
pub const DEDUP_TOL: f64 = 1e-6;

/// Residual (on the coefficient-normalized minors) below which a root of the
/// eliminated system is kept as a candidate before polishing.
const CANDIDATE_TOL: f64 = 1e-3;

const NEWTON_CAP: usize = 25;

/// The chart coordinate `u` is replaced by `w - s v`, so distinct points get
/// distinct `w` unless they lie on one line of slope `s`.
fn shear() -> BigRational {
    BigRational::new(BigInt::from(7), BigInt::from(19))
}

/// Numerical eigenpoints of a tensor on the projective plane.
///
/// In the chart `x_c = 1` the eigenscheme is cut out by the two minors
/// containing `c`. Their resultant in one chart coordinate is computed exactly
/// by evaluation at integer nodes and interpolation; its squarefree part is
/// solved numerically, the other coordinate is recovered from the roots of one
/// minor, candidates are screened against all three minors and polished by
/// damped Newton iteration on the best-conditioned pair of minors. Solutions
/// from the three charts are merged by chordal distance.
pub fn solve_eigenpoints_p2(t: &PSTensor, tol: f64) -> Result<EigenpointSet> {
    if t.n() != 2 {
        return Err(Error::InvalidArgument(format!("expected a tensor on P^2, got n = {}", t.n())));
    }
    let f = determinantal_generators(t);
    if !dimension_probe(&f).is_zero_dimensional {
        return Err(Error::PositiveDimensional);
    }
    let scaled = normalize_coefficients(&f);
    let derivs: Vec<[RationalPoly; 3]> = scaled
        .entries()
        .iter()
        .map(|e| [0, 1, 2].map(|i| e.partial_derivative(i).expect("variable in range")))
        .collect();

    let mut set = EigenpointSet::default();
    let mut candidates: Vec<(Vec<Complex64>, f64, bool)> = Vec::new();
    for c in 0..3 {
        match chart_candidates(&scaled, &derivs, c) {
            Ok(found) => candidates.extend(found),
            Err(e) => set.warnings.push(format!("chart x{c} = 1: {e}")),
        }
    }

    candidates.sort_by(|a, b| a.1.total_cmp(&b.1));
    let mut kept: Vec<(ProjPoint, bool)> = Vec::new();
    for (coords, _, converged) in candidates {
        let p = ProjPoint::complex(coords)?;
        if kept.iter().all(|(q, _)| !p.same_as(q, DEDUP_TOL)) {
            kept.push((p, converged));
        }
    }
    for (point, _) in kept {
        let ProjPoint::Complex(c) = &point else { unreachable!("solver points are floating") };
        let res = residual(&f, c.coords())?;
        set.points.push(Eigenpoint { point, multiplicity: 1, residual: Some(res), polished: res < tol });
    }
    set.sort();
    Ok(set)
}

fn normalize_coefficients(f: &DetTuple) -> DetTuple {
    let max = f
        .entries()
        .iter()
        .flat_map(|e| e.terms().map(|(_, c)| c.abs()))
        .max()
        .unwrap_or_else(BigRational::one);
    f.scale(&max.recip())
}

/// Coefficients `c[b][a]` of `w^a v^b` after setting `x_c = 1`,
/// `x_a = w - s v`, `x_b = v`.
fn chart_bivariate(p: &RationalPoly, a: usize, b: usize, d: usize) -> Vec<Vec<BigRational>> {
    let s = shear();
    let mut out = vec![vec![BigRational::zero(); d + 1]; d + 1];
    for (m, coeff) in p.terms() {
        let e = m.exponents();
        let (pa, pb) = (e[a] as usize, e[b] as usize);
        // (w - s v)^pa v^pb = Σ_k C(pa,k) w^(pa-k) (-s v)^k v^pb
        let mut binom = BigInt::one();
        let mut neg_s_pow = BigRational::one();
        for k in 0..=pa {
            let term = coeff * BigRational::from_integer(binom.clone()) * &neg_s_pow;
            out[k + pb][pa - k] += term;
            binom = binom * BigInt::from(pa - k) / BigInt::from(k + 1);
            neg_s_pow *= -&s;
        }
    }
    out
}

fn eval_in_w(biv: &[Vec<BigRational>], w: &BigRational) -> Vec<BigRational> {
    biv.iter().map(|row| row.iter().rev().fold(BigRational::zero(), |acc, c| acc * w + c)).collect()
}

fn eval_in_w_complex(biv: &[Vec<BigRational>], w: Complex64) -> Vec<Complex64> {
    biv.iter()
        .map(|row| {
            row.iter().rev().fold(Complex64::zero(), |acc, c| acc * w + num::ToPrimitive::to_f64(c).unwrap_or(0.0))
        })
        .collect()
}

/// Determinant of the Sylvester matrix of two polynomials of formal degrees
/// `dp` and `dq` (coefficients low to high).
fn sylvester_resultant(p: &[BigRational], q: &[BigRational], dp: usize, dq: usize) -> Result<BigRational> {
    let size = dp + dq;
    if size == 0 {
        return Ok(BigRational::one());
    }
    let mut m = RatMatrix::zeros(size, size);
    for r in 0..dq {
        for k in 0..=dp {
            m.set(r, r + k, p[dp - k].clone());
        }
    }
    for r in 0..dp {
        for k in 0..=dq {
            m.set(dq + r, r + k, q[dq - k].clone());
        }
    }
    linalg::determinant(&m)
}

/// Degree in `v` of a bivariate coefficient grid.
fn v_degree(biv: &[Vec<BigRational>]) -> Option<usize> {
    biv.iter().rposition(|row| row.iter().any(|c| !c.is_zero()))
}

fn chart_candidates(
    f: &DetTuple,
    derivs: &[[RationalPoly; 3]],
    c: usize,
) -> Result<Vec<(Vec<Complex64>, f64, bool)>> {
    let d = f.d() as usize;
    let (a, b) = match c {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let p = chart_bivariate(&f.get(c, a), a, b, d);
    let q = chart_bivariate(&f.get(c, b), a, b, d);

    // The Sylvester matrix uses the generic v-degrees, so its determinant is
    // a polynomial in w of degree at most d^2 and may be evaluated anywhere.
    let (Some(dp), Some(dq)) = (v_degree(&p), v_degree(&q)) else {
        return Err(Error::Numeric("chart minor vanishes identically".into()));
    };
    let nodes: Vec<BigRational> = (0..=(d * d) as i64).map(|k| BigRational::from_integer(BigInt::from(k))).collect();
    let values = nodes
        .iter()
        .map(|w| sylvester_resultant(&eval_in_w(&p, w), &eval_in_w(&q, w), dp, dq))
        .collect::<Result<Vec<_>>>()?;
    let res = interpolate(&nodes, &values);
    if res.is_zero() {
        return Err(Error::Numeric("resultant vanishes identically".into()));
    }
    let sf = res.squarefree_part();
    if sf.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let s = num::ToPrimitive::to_f64(&shear()).expect("small shear");
    let mut out = Vec::new();
    for w0 in aberth(&sf.to_complex())? {
        let w0 = polish_univariate(&sf, w0);
        let mut pv = eval_in_w_complex(&p, w0);
        if trimmed_degree(&mut pv) == 0 {
            pv = eval_in_w_complex(&q, w0);
            if trimmed_degree(&mut pv) == 0 {
                continue;
            }
        }
        for v0 in aberth(&pv)? {
            let mut x = [Complex64::zero(); 3];
            x[c] = Complex64::one();
            x[a] = w0 - v0 * s;
            x[b] = v0;
            let pre = projective_residual(f, &x)?;
            if pre.is_nan() || pre >= CANDIDATE_TOL {
                continue;
            }
            let (y, converged) = newton(f, derivs, c, a, b, x);
            let post = projective_residual(f, &y)?;
            let (best, r) = if post <= pre { (y, post) } else { (x, pre) };
            out.push((best.to_vec(), r, converged));
        }
    }
    Ok(out)
}

fn trimmed_degree(p: &mut Vec<Complex64>) -> usize {
    let max = p.iter().map(|z| z.norm()).fold(0.0, f64::max);
    while p.last().is_some_and(|z| z.norm() <= 1e-12 * max) {
        p.pop();
    }
    p.len().saturating_sub(1)
}

fn polish_univariate(p: &RatUni, mut z: Complex64) -> Complex64 {
    let c = p.to_complex();
    for _ in 0..3 {
        let (mut v, mut dv) = (Complex64::zero(), Complex64::zero());
        for a in c.iter().rev() {
            dv = dv * z + v;
            v = v * z + a;
        }
        if dv.norm() == 0.0 {
            break;
        }
        z -= v / dv;
    }
    z
}

fn projective_residual(f: &DetTuple, x: &[Complex64; 3]) -> Result<f64> {
    let p = crate::point::ComplexPoint::new(x.to_vec())?;
    residual(f, p.coords())
}

/// Damped Newton in the chart `x_c = 1` on the pair of minors whose Jacobian
/// determinant is largest at the start.
fn newton(
    f: &DetTuple,
    derivs: &[[RationalPoly; 3]],
    _c: usize,
    a: usize,
    b: usize,
    start: [Complex64; 3],
) -> ([Complex64; 3], bool) {
    let eval = |k: usize, x: &[Complex64; 3]| f.entries()[k].evaluate_complex(x).unwrap_or(Complex64::new(f64::NAN, 0.0));
    let jac = |k: usize, x: &[Complex64; 3]| -> [Complex64; 2] {
        [a, b].map(|i| derivs[k][i].evaluate_complex(x).unwrap_or(Complex64::new(f64::NAN, 0.0)))
    };
    let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
    let (p, q) = pairs
        .iter()
        .copied()
        .max_by(|&(p1, q1), &(p2, q2)| {
            let d1 = det2(jac(p1, &start), jac(q1, &start)).norm();
            let d2 = det2(jac(p2, &start), jac(q2, &start)).norm();
            d1.total_cmp(&d2)
        })
        .expect("three pairs");
    let mut x = start;
    let norm_f = |x: &[Complex64; 3]| eval(p, x).norm().max(eval(q, x).norm());
    let mut current = norm_f(&x);
    for _ in 0..NEWTON_CAP {
        let (jp, jq) = (jac(p, &x), jac(q, &x));
        let det = det2(jp, jq);
        if det.norm() == 0.0 || !det.re.is_finite() {
            return (x, false);
        }
        let (fp, fq) = (eval(p, &x), eval(q, &x));
        // J δ = F with J = [[jp0, jp1], [jq0, jq1]]
        let da = (fp * jq[1] - fq * jp[1]) / det;
        let db = (jp[0] * fq - jq[0] * fp) / det;
        let mut step = 1.0;
        let mut accepted = false;
        for _ in 0..12 {
            let mut y = x;
            y[a] -= da * step;
            y[b] -= db * step;
            let r = norm_f(&y);
            if r < current || r == 0.0 {
                x = y;
                current = r;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        let size = (da.norm() + db.norm()) * step;
        let scale = 1.0 + x[a].norm() + x[b].norm();
        if !accepted || size <= 1e-15 * scale || current == 0.0 {
            return (x, accepted || current == 0.0 || size <= 1e-15 * scale);
        }
    }
    (x, true)
}

fn det2(r0: [Complex64; 2], r1: [Complex64; 2]) -> Complex64 {
    r0[0] * r1[1] - r0[1] * r1[0]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::fermat_eigenpoints;
    use crate::tensor::{gradient_tensor, w_count, SymTensor};

    #[test]
    fn fermat_cubic_matches_closed_form() {
        let t = gradient_tensor(&SymTensor::fermat(2, 3).unwrap());
        let s = solve_eigenpoints_p2(&t, 1e-8).unwrap();
        let exact = fermat_eigenpoints(2, 3).unwrap();
        assert_eq!(s.len(), 7, "{:?}", s);
        for e in &exact.points {
            let best = s.points.iter().map(|p| p.point.to_complex().chordal_distance(&e.point.to_complex())).fold(f64::INFINITY, f64::min);
            assert!(best < 1e-10, "{best}");
        }
    }

    #[test]
    fn generic_plane_cubic_has_seven_points() {
        let t = PSTensor::parse(2, 3, &["x0^2 + 2x1x2 - x2^2", "3x0x1 - x1^2 + x2^2", "x0^2 - 5x0x2 + 7x1^2"]).unwrap();
        let s = solve_eigenpoints_p2(&t, 1e-8).unwrap();
        assert_eq!(s.len() as u128, w_count(2, 3).unwrap());
        assert!(s.points.iter().all(|p| p.polished && p.residual.unwrap() < 1e-8));
    }

    #[test]
    fn trivial_family_rejected() {
        let h = RationalPoly::parse("x0^2 + x1x2", 3).unwrap();
        let t = PSTensor::trivial(2, &h).unwrap();
        assert_eq!(solve_eigenpoints_p2(&t, 1e-8), Err(Error::PositiveDimensional));
    }
}
