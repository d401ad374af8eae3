//! Partially symmetric and symmetric tensors, their determinantal generators,
//! eigenpoint membership, the eigenpoint count and tensor equivalence.

use num::{BigRational, One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, RatMatrix};
use crate::point::ProjPoint;
use crate::poly::{MonomialIndex, RationalPoly};
use crate::system::{image_matrix, stacked_vector};

/// Default tolerance for membership of floating points.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A partially symmetric tensor of order `d` on `C^{n+1}`, stored as the tuple
/// `(g_0, ..., g_n)` of forms of degree `d - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PSTensor {
    n: usize,
    d: u32,
    forms: Vec<RationalPoly>,
}

/// A symmetric tensor, stored as one form `f` of degree `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymTensor {
    n: usize,
    d: u32,
    f: RationalPoly,
}

/// Ordered tuple `(f_ij : 0 <= i < j <= n)` of forms of degree `d`.
///
/// Pairs are stored lexicographically: `(0,1), (0,2), ..., (0,n), (1,2), ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetTuple {
    n: usize,
    d: u32,
    entries: Vec<RationalPoly>,
}

fn check_dims(n: usize, d: u32) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!("n must be at least 1, got {n}")));
    }
    if d < 2 {
        return Err(Error::InvalidArgument(format!("d must be at least 2, got {d}")));
    }
    Ok(())
}

fn check_form(p: &RationalPoly, nvars: usize, deg: u32) -> Result<()> {
    if p.nvars() != nvars {
        return Err(Error::VariableCount { left: nvars, right: p.nvars() });
    }
    if !p.is_form_of_degree(deg) {
        return Err(Error::InvalidArgument(format!("{p} is not a form of degree {deg}")));
    }
    Ok(())
}

impl PSTensor {
    pub fn new(n: usize, d: u32, forms: Vec<RationalPoly>) -> Result<Self> {
        check_dims(n, d)?;
        if forms.len() != n + 1 {
            return Err(Error::Dimension { expected: n + 1, found: forms.len() });
        }
        for g in &forms {
            check_form(g, n + 1, d - 1)?;
        }
        Ok(PSTensor { n, d, forms })
    }

    /// Parses `n + 1` forms in the polynomial text format.
    pub fn parse(n: usize, d: u32, forms: &[&str]) -> Result<Self> {
        let forms = forms.iter().map(|s| RationalPoly::parse(s, n + 1)).collect::<Result<_>>()?;
        Self::new(n, d, forms)
    }

    /// The tensor `(x_0 h, ..., x_n h)`, whose minors all vanish.
    pub fn trivial(n: usize, h: &RationalPoly) -> Result<Self> {
        let d = h.degree().unwrap_or(0) + 2;
        Self::new(n, d, (0..=n).map(|k| h.times_var(k)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn forms(&self) -> &[RationalPoly] {
        &self.forms
    }

    pub fn scale(&self, c: &BigRational) -> PSTensor {
        PSTensor { n: self.n, d: self.d, forms: self.forms.iter().map(|g| g.scale(c)).collect() }
    }

    /// Adds the trivial family member `(x_0 h, ..., x_n h)`.
    pub fn add_trivial(&self, h: &RationalPoly) -> Result<PSTensor> {
        check_form(h, self.n + 1, self.d - 2)?;
        let forms = self.forms.iter().enumerate().map(|(k, g)| g + &h.times_var(k)).collect();
        Ok(PSTensor { n: self.n, d: self.d, forms })
    }

    /// Evaluates `(g_0(P), ..., g_n(P))` at a rational point.
    pub fn evaluate(&self, point: &[BigRational]) -> Result<Vec<BigRational>> {
        self.forms.iter().map(|g| g.evaluate(point)).collect()
    }
}

impl SymTensor {
    pub fn new(n: usize, d: u32, f: RationalPoly) -> Result<Self> {
        check_dims(n, d)?;
        check_form(&f, n + 1, d)?;
        Ok(SymTensor { n, d, f })
    }

    pub fn parse(n: usize, d: u32, f: &str) -> Result<Self> {
        Self::new(n, d, RationalPoly::parse(f, n + 1)?)
    }

    /// The Fermat form `x_0^d + ... + x_n^d`.
    pub fn fermat(n: usize, d: u32) -> Result<Self> {
        let mut f = RationalPoly::zero(n + 1);
        for i in 0..=n {
            f = &f + &RationalPoly::var(n + 1, i).pow(d);
        }
        Self::new(n, d, f)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn form(&self) -> &RationalPoly {
        &self.f
    }
}

/// Index of the pair `(i, j)`, `i < j`, in the lexicographic pair order.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j <= n);
    // pairs starting with a < i: sum_{a<i} (n - a)
    i * n - i * i.saturating_sub(1) / 2 + (j - i - 1)
}

/// All pairs `(i, j)` with `0 <= i < j <= n`, lexicographically.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..=n {
        for j in i + 1..=n {
            out.push((i, j));
        }
    }
    out
}

/// All triples `i < j < k <= n`, lexicographically.
pub fn triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 0..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                out.push((i, j, k));
            }
        }
    }
    out
}

impl DetTuple {
    pub fn new(n: usize, d: u32, entries: Vec<RationalPoly>) -> Result<Self> {
        check_dims(n, d)?;
        let expected = n * (n + 1) / 2;
        if entries.len() != expected {
            return Err(Error::Dimension { expected, found: entries.len() });
        }
        for f in &entries {
            check_form(f, n + 1, d)?;
        }
        Ok(DetTuple { n, d, entries })
    }

    pub fn zero(n: usize, d: u32) -> Self {
        DetTuple { n, d, entries: vec![RationalPoly::zero(n + 1); n * (n + 1) / 2] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn entries(&self) -> &[RationalPoly] {
        &self.entries
    }

    /// `f_ij` for `i < j`; `f_ji = -f_ij` and `f_ii = 0` by convention.
    pub fn get(&self, i: usize, j: usize) -> RationalPoly {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.entries[pair_index(self.n, i, j)].clone(),
            Greater => -&self.entries[pair_index(self.n, j, i)],
            Equal => RationalPoly::zero(self.n + 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RationalPoly::is_zero)
    }

    pub fn scale(&self, c: &BigRational) -> DetTuple {
        DetTuple { n: self.n, d: self.d, entries: self.entries.iter().map(|f| f.scale(c)).collect() }
    }

    /// `c` with `other = c * self`, if one exists.
    pub fn proportionality(&self, other: &DetTuple) -> Option<BigRational> {
        if self.n != other.n || self.d != other.d {
            return None;
        }
        let lead = self.entries.iter().position(|f| !f.is_zero());
        let Some(k) = lead else {
            return other.is_zero().then(BigRational::one);
        };
        let c = self.entries[k].proportionality(&other.entries[k])?;
        (self.scale(&c) == *other).then_some(c)
    }
}

/// Number of eigenpoints of a general tensor: `((d-1)^{n+1} - 1) / (d-2)`, and
/// `n + 1` for `d = 2`.
pub fn w_count(n: usize, d: u32) -> Result<u128> {
    check_dims(n, d)?;
    if d == 2 {
        return Ok(n as u128 + 1);
    }
    let base = (d - 1) as u128;
    let pow = u32::try_from(n + 1)
        .ok()
        .and_then(|e| base.checked_pow(e))
        .ok_or_else(|| Error::InvalidArgument(format!("w({n},{d}) overflows")))?;
    Ok((pow - 1) / (d as u128 - 2))
}

/// Either kind of tensor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyTensor {
    PartiallySymmetric(PSTensor),
    Symmetric(SymTensor),
}

impl AnyTensor {
    pub fn n(&self) -> usize {
        match self {
            AnyTensor::PartiallySymmetric(t) => t.n,
            AnyTensor::Symmetric(s) => s.n,
        }
    }

    pub fn d(&self) -> u32 {
        match self {
            AnyTensor::PartiallySymmetric(t) => t.d,
            AnyTensor::Symmetric(s) => s.d,
        }
    }

    /// The tensor as a tuple of forms, taking gradients of symmetric tensors.
    pub fn to_partially_symmetric(&self) -> PSTensor {
        match self {
            AnyTensor::PartiallySymmetric(t) => t.clone(),
            AnyTensor::Symmetric(s) => gradient_tensor(s),
        }
    }

    pub fn det_tuple(&self) -> DetTuple {
        determinantal_generators(&self.to_partially_symmetric())
    }
}

/// The minors `f_ij = x_i g_j - x_j g_i`.
pub fn determinantal_generators(t: &PSTensor) -> DetTuple {
    let n = t.n;
    let entries = pairs(n)
        .into_iter()
        .map(|(i, j)| &t.forms[j].times_var(i) - &t.forms[i].times_var(j))
        .collect();
    DetTuple { n, d: t.d, entries }
}

/// The gradient `(∂_0 f, ..., ∂_n f)`.
pub fn gradient_tensor(s: &SymTensor) -> PSTensor {
    let forms = (0..=s.n).map(|i| s.f.diff(i)).collect();
    PSTensor { n: s.n, d: s.d, forms }
}

/// Outcome of a membership test.
#[derive(Debug, Clone, PartialEq)]
pub struct Membership {
    pub is_eigenpoint: bool,
    /// `max |f_ij(P)|` on the normalized point; `None` for exact points.
    pub residual: Option<f64>,
}

/// Tests whether `P` is an eigenpoint of `T`: exactly for rational points, and by
/// `max |f_ij(P)| < tol` on the normalized representative for complex points.
pub fn is_eigenpoint(t: &PSTensor, p: &ProjPoint, tol: f64) -> Result<Membership> {
    if p.len() != t.n + 1 {
        return Err(Error::Dimension { expected: t.n + 1, found: p.len() });
    }
    let f = determinantal_generators(t);
    match p {
        ProjPoint::Rational(c) => {
            for e in &f.entries {
                if !e.evaluate(c)?.is_zero() {
                    return Ok(Membership { is_eigenpoint: false, residual: None });
                }
            }
            Ok(Membership { is_eigenpoint: true, residual: None })
        }
        ProjPoint::Complex(c) => {
            let r = residual(&f, c.coords())?;
            Ok(Membership { is_eigenpoint: r < tol, residual: Some(r) })
        }
    }
}

/// `max |f_ij(P)|` at complex coordinates (no normalization applied here).
pub fn residual(f: &DetTuple, coords: &[num::complex::Complex64]) -> Result<f64> {
    let mut r = 0.0f64;
    for e in &f.entries {
        r = r.max(e.evaluate_complex(coords)?.norm());
    }
    Ok(r)
}

/// Finds `(c, h)` with `g'_k = c g_k + x_k h` for all `k` and `c != 0`.
///
/// Such a pair exists exactly when both tensors have proportional determinantal
/// tuples with a nonzero factor.
pub fn same_determinantal_equations(t: &PSTensor, t2: &PSTensor) -> Result<Option<(BigRational, RationalPoly)>> {
    if t.n != t2.n || t.d != t2.d {
        return Err(Error::InvalidArgument("tensors have different shapes".into()));
    }
    let nv = t.n + 1;
    let h_index = MonomialIndex::new(nv, t.d - 2);
    let targets: Vec<MonomialIndex> = (0..nv).map(|_| MonomialIndex::new(nv, t.d - 1)).collect();
    let mut columns = vec![t.forms.clone()];
    for m in h_index.basis() {
        columns.push((0..nv).map(|k| RationalPoly::term(m.times_var(k), BigRational::one())).collect());
    }
    let a = image_matrix(&columns, &targets);
    let b = stacked_vector(&t2.forms, &targets).expect("forms have degree d-1");
    let Some(mut x) = linalg::solve(&a, &b)? else { return Ok(None) };
    if x[0].is_zero() {
        // c may still be free: shift along a kernel vector with nonzero c.
        let k = linalg::kernel_basis(&a);
        let Some(v) = k.vectors.iter().find(|v| !v[0].is_zero()) else { return Ok(None) };
        let s = v[0].recip();
        for (xi, vi) in x.iter_mut().zip(v) {
            *xi += vi * &s;
        }
    }
    let c = x[0].clone();
    let h = RationalPoly::from_coefficients(&h_index, &x[1..]);
    Ok(Some((c, h)))
}

/// Brings the matrix with rows `(l_0, ..., l_n)` and `(h_0, ..., h_n)` to the form
/// with first row `(x_0, ..., x_n)` by a constant column operation `B`, returning
/// the second row `(h_0, ..., h_n) B` as a tensor. `None` when the linear forms
/// are dependent.
pub fn normalize_matrix(ls: &[RationalPoly], hs: &[RationalPoly]) -> Result<Option<PSTensor>> {
    if ls.len() != hs.len() || ls.len() < 2 {
        return Err(Error::Dimension { expected: ls.len().max(2), found: hs.len() });
    }
    let nv = ls.len();
    let n = nv - 1;
    for l in ls {
        check_form(l, nv, 1)?;
    }
    let deg = hs
        .iter()
        .find_map(RationalPoly::degree)
        .ok_or_else(|| Error::InvalidArgument("second row is identically zero; degree unknown".into()))?;
    for h in hs {
        check_form(h, nv, deg)?;
    }
    let lin = MonomialIndex::from_basis((0..nv).map(|k| crate::poly::Monomial::var(nv, k)).collect());
    // coeffs[i][k] = coefficient of x_k in l_i; we need B with coeffs^T B = I.
    let coeffs: Vec<Vec<BigRational>> = ls.iter().map(|l| l.coefficient_vector(&lin).expect("linear")).collect();
    let ct = RatMatrix::from_rows(nv, coeffs)?.transpose();
    if linalg::rank(&ct) < nv {
        return Ok(None);
    }
    let mut b = RatMatrix::zeros(nv, nv);
    for j in 0..nv {
        let mut e = vec![BigRational::zero(); nv];
        e[j] = BigRational::one();
        let col = linalg::solve(&ct, &e)?.expect("invertible");
        for (i, v) in col.into_iter().enumerate() {
            b.set(i, j, v);
        }
    }
    let forms = (0..nv)
        .map(|j| {
            hs.iter()
                .enumerate()
                .fold(RationalPoly::zero(nv), |acc, (i, h)| &acc + &h.scale(b.get(i, j)))
        })
        .collect();
    Ok(Some(PSTensor::new(n, deg + 1, forms)?))
}
