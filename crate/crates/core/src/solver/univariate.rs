//! Univariate polynomials: exact rational arithmetic for squarefree
//! decomposition, interpolation and rational roots; a floating simultaneous
//! root finder for everything else.

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense polynomial with rational coefficients, constant term first, no
/// trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatUni(Vec<BigRational>);

impl RatUni {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatUni(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect())
    }

    pub fn zero() -> Self {
        RatUni(Vec::new())
    }

    pub fn one() -> Self {
        RatUni(vec![BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.0.last()
    }

    pub fn evaluate(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> RatUni {
        Self::new(
            self.0.iter().enumerate().skip(1).map(|(k, c)| c * BigRational::from_integer(BigInt::from(k))).collect(),
        )
    }

    pub fn monic(&self) -> RatUni {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let inv = l.recip();
                RatUni(self.0.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn sub(&self, other: &RatUni) -> RatUni {
        let len = self.0.len().max(other.0.len());
        let z = BigRational::zero();
        Self::new((0..len).map(|k| self.0.get(k).unwrap_or(&z) - other.0.get(k).unwrap_or(&z)).collect())
    }

    pub fn mul(&self, other: &RatUni) -> RatUni {
        if self.is_zero() || other.is_zero() {
            return RatUni::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, divisor: &RatUni) -> (RatUni, RatUni) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.leading().expect("nonzero").recip();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (RatUni::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.0.iter().enumerate() {
                rem[k + j] -= &c * b;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Exact quotient; the caller knows the division is exact.
    pub fn div_exact(&self, divisor: &RatUni) -> RatUni {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &RatUni) -> RatUni {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `f / gcd(f, f')`.
    pub fn squarefree_part(&self) -> RatUni {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        self.div_exact(&self.gcd(&self.derivative())).monic()
    }

    /// Yun's algorithm: squarefree, pairwise coprime factors with their
    /// multiplicities, omitting constants.
    pub fn squarefree_decomposition(&self) -> Vec<(RatUni, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let df = self.derivative();
        let a0 = self.gcd(&df);
        let mut b = self.div_exact(&a0);
        let c = df.div_exact(&a0);
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            let nb = b.div_exact(&a);
            let nc = d.div_exact(&a);
            d = nc.sub(&nb.derivative());
            b = nb;
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, i));
            }
            i += 1;
        }
        out
    }

    /// Floating coefficients scaled so the largest has modulus one.
    pub fn to_complex(&self) -> Vec<Complex64> {
        let max = self.0.iter().map(|c| c.abs()).max().unwrap_or_else(BigRational::zero);
        if max.is_zero() {
            return Vec::new();
        }
        self.0.iter().map(|c| Complex64::new((c / &max).to_f64().unwrap_or(0.0), 0.0)).collect()
    }

    /// Every rational root, each once, found by testing continued-fraction
    /// convergents of the numerical real roots exactly.
    pub fn rational_roots(&self) -> Result<Vec<BigRational>> {
        let mut roots = Vec::new();
        if self.is_zero() {
            return Ok(roots);
        }
        let mut f = self.squarefree_part();
        if f.0.first().is_some_and(|c| c.is_zero()) {
            roots.push(BigRational::zero());
            f = f.div_exact(&RatUni(vec![BigRational::zero(), BigRational::one()]));
        }
        if f.degree().unwrap_or(0) == 0 {
            return Ok(roots);
        }
        for z in aberth(&f.to_complex())? {
            if z.im.abs() > 1e-6 * (1.0 + z.re.abs()) {
                continue;
            }
            for cand in convergents(z.re) {
                if f.evaluate(&cand).is_zero() {
                    if !roots.contains(&cand) {
                        roots.push(cand);
                    }
                    break;
                }
            }
        }
        roots.sort();
        Ok(roots)
    }
}

/// Continued-fraction convergents of `x`, until the approximation is exact to
/// double precision or the denominators leave the range where `x` carries
/// information.
fn convergents(x: f64) -> Vec<BigRational> {
    let mut out = Vec::new();
    if !x.is_finite() {
        return out;
    }
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut r = x;
    for _ in 0..40 {
        let a = r.floor();
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        out.push(BigRational::new(h2.clone(), k2.clone()));
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let frac = r - a;
        if frac.abs() < 1e-12 || k1.bits() > 60 {
            break;
        }
        r = 1.0 / frac;
    }
    out
}

/// Newton's divided differences through `(xs[k], ys[k])`.
pub fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> RatUni {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut p = RatUni::zero();
    for i in (0..n).rev() {
        // p = p * (x - xs[i]) + coef[i]
        let mut c = p.mul(&RatUni::new(vec![-xs[i].clone(), BigRational::one()])).0;
        if c.is_empty() {
            c.push(BigRational::zero());
        }
        c[0] += &coef[i];
        p = RatUni::new(c);
    }
    p
}

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All complex roots of `Σ coeffs[k] z^k` by Aberth–Ehrlich iteration.
/// Trailing (high-order) zero coefficients are dropped; roots at zero are
/// returned exactly.
pub fn aberth(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|z| z.norm() == 0.0) {
        c.pop();
    }
    if c.is_empty() {
        return Err(Error::Numeric("zero polynomial has no isolated roots".into()));
    }
    let zeros = c.iter().take_while(|z| z.norm() == 0.0).count();
    let c = &c[zeros..];
    let deg = c.len() - 1;
    let mut roots = vec![Complex64::zero(); zeros];
    if deg == 0 {
        return Ok(roots);
    }
    let lead = c[deg];
    let monic: Vec<Complex64> = c.iter().map(|z| z / lead).collect();
    // Fujiwara-style bound on the root moduli.
    let bound = (0..deg)
        .map(|k| monic[k].norm().powf(1.0 / (deg - k) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3)
        * 2.0;
    let radius = bound / 2.0;
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / deg as f64 + 0.4))
        .collect();
    let mut converged = vec![false; deg];
    for _ in 0..2000 {
        let mut all = true;
        for k in 0..deg {
            if converged[k] {
                continue;
            }
            let (p, dp) = horner(&monic, z[k]);
            if p.norm() == 0.0 {
                converged[k] = true;
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..deg).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (Complex64::one() - ratio * sum);
            if !w.re.is_finite() || !w.im.is_finite() {
                all = false;
                z[k] += Complex64::new(1e-3, 1e-3);
                continue;
            }
            z[k] -= w;
            if w.norm() <= 4.0 * f64::EPSILON * (1.0 + z[k].norm()) {
                converged[k] = true;
            } else {
                all = false;
            }
        }
        if all {
            roots.extend(z);
            return Ok(roots);
        }
    }
    // Accept slow convergence (clustered roots) when the residuals are small.
    let scale: f64 = monic.iter().map(|c| c.norm()).sum();
    let ok = z.iter().all(|&r| horner(&monic, r).0.norm() <= 1e-8 * scale * (1.0 + r.norm()).powi(deg as i32));
    if ok {
        roots.extend(z);
        Ok(roots)
    } else {
        Err(Error::Numeric(format!("root finder did not converge for a degree {deg} polynomial")))
    }
}
