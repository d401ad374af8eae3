//! Dense exact linear algebra over the rationals.
//!
//! All answers are exact. Rows are first scaled to integers; a fast path runs
//! Gauss-Jordan modulo 62-bit primes, lifts the proposed kernel (or particular
//! solution) by Chinese remaindering and rational reconstruction, and accepts
//! it only after an exact integer check. Whatever the fast path cannot certify
//! goes through fraction-free Bareiss elimination.

mod bareiss;
mod modular;
mod numeric;

pub use numeric::{numeric_null_vector, numeric_rank};

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::{Error, Result};

/// Row-major dense rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

/// Basis of a right null space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelBasis {
    pub dim: usize,
    pub vectors: Vec<Vec<BigRational>>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigRational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension { expected: rows * cols, found: data.len() });
        }
        Ok(RatMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    /// Builds from explicit rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Dimension { expected: cols, found: r.len() });
            }
            data.extend(r);
        }
        Ok(RatMatrix { rows: nrows, cols, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().flat_map(|r| r.iter().map(|&x| crate::poly::rat(x))).collect();
        RatMatrix { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Result<Vec<BigRational>> {
        if v.len() != self.cols {
            return Err(Error::Dimension { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = BigRational::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect())
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Each row scaled by the lcm of its denominators.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| clear_denominators(self.row(i))).collect()
    }
}

/// Multiplies a rational vector by the lcm of its denominators.
pub fn clear_denominators(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

/// Exact rank over the rationals.
pub fn rank(m: &RatMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let ints = m.integer_rows();
    let r = modular::rank_mod(&ints, m.cols, modular::PRIMES[0]);
    // Rank mod p never exceeds the rational rank, so a full modular rank is final.
    if r == m.rows.min(m.cols) {
        return r;
    }
    if let Some((pivots, _)) = modular_kernel(&ints, m.cols) {
        return pivots.len();
    }
    bareiss::eliminate(ints, m.cols).pivots.len()
}

/// Basis of the right null space, one vector per non-pivot column of the
/// reduced row echelon form, with a unit entry at that column.
pub fn kernel_basis(m: &RatMatrix) -> KernelBasis {
    let cols = m.cols;
    if m.rows == 0 {
        let vectors: Vec<_> = (0..cols).map(|f| unit(cols, f)).collect();
        return KernelBasis { dim: cols, vectors };
    }
    let ints = m.integer_rows();
    if let Some((_, vectors)) = modular_kernel(&ints, cols) {
        return KernelBasis { dim: vectors.len(), vectors };
    }
    let (pivots, rows) = bareiss::rref(ints, cols);
    let vectors = kernel_from_rref(&pivots, &rows, cols);
    KernelBasis { dim: vectors.len(), vectors }
}

/// One solution of `m x = b`, or `None` when the system is inconsistent.
/// Free variables are set to zero.
pub fn solve(m: &RatMatrix, b: &[BigRational]) -> Result<Option<Vec<BigRational>>> {
    if b.len() != m.rows {
        return Err(Error::Dimension { expected: m.rows, found: b.len() });
    }
    let cols = m.cols;
    let aug: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.push(b[i].clone());
            clear_denominators(&r)
        })
        .collect();
    if let Some(x) = modular_solve(&aug, cols) {
        return Ok(Some(x));
    }
    let (pivots, rows) = bareiss::rref(aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return Ok(None);
    }
    let mut x = vec![BigRational::zero(); cols];
    for (row, &c) in rows.iter().zip(&pivots) {
        x[c] = row[cols].clone();
    }
    Ok(Some(x))
}

/// Determinant of a square matrix.
pub fn determinant(m: &RatMatrix) -> Result<BigRational> {
    if m.rows != m.cols {
        return Err(Error::Dimension { expected: m.rows, found: m.cols });
    }
    let mut scale = BigInt::one();
    let rows: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|i| {
            let r = m.row(i);
            let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &l;
            r.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    Ok(BigRational::new(bareiss::determinant(rows), scale))
}

fn unit(n: usize, k: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); n];
    v[k] = BigRational::one();
    v
}

fn kernel_from_rref(pivots: &[usize], rows: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    let mut is_pivot = vec![false; cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = unit(cols, f);
            for (row, &c) in rows.iter().zip(pivots) {
                v[c] = -row[f].clone();
            }
            v
        })
        .collect()
}

fn int_dot_is_zero(row: &[BigInt], v: &[BigInt], rhs: Option<&BigInt>) -> bool {
    let mut acc = BigInt::zero();
    for (a, x) in row.iter().zip(v) {
        if !a.is_zero() && !x.is_zero() {
            acc += a * x;
        }
    }
    match rhs {
        None => acc.is_zero(),
        Some(r) => acc == *r,
    }
}

/// Scales a rational vector to integers, returning the vector and the scale.
fn integerize(v: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    (v.iter().map(|x| x.numer() * (&l / x.denom())).collect(), l)
}

/// Multi-modular kernel. Returns the pivot columns and the certified basis.
///
/// The lifted vectors have unit entries on the `cols - r` free columns, so they
/// are independent; once each is checked to lie in the rational kernel, the
/// kernel has dimension at least `cols - r`, while the modular rank `r` bounds
/// the rational rank from below. Both together make the basis exact.
fn modular_kernel(ints: &[Vec<BigInt>], cols: usize) -> Option<(Vec<usize>, Vec<Vec<BigRational>>)> {
    let mut crt: Option<modular::Crt> = None;
    let mut pivots_seen: Option<Vec<usize>> = None;
    for &p in &modular::PRIMES {
        let rr = modular::rref(ints, cols, p);
        match &pivots_seen {
            None => pivots_seen = Some(rr.pivots.clone()),
            Some(prev) if *prev != rr.pivots => return None,
            _ => {}
        }
        let kernel = modular::kernel_from_rref(&rr, cols, p);
        if kernel.is_empty() {
            return Some((rr.pivots, Vec::new()));
        }
        let flat: Vec<u64> = kernel.iter().flatten().copied().collect();
        let acc = crt.get_or_insert_with(|| modular::Crt::new(flat.len()));
        acc.add(&flat, p);
        let Some(lifted) = acc.reconstruct() else { continue };
        let vectors: Vec<Vec<BigRational>> = lifted.chunks(cols).map(|c| c.to_vec()).collect();
        let ok = vectors.iter().all(|v| {
            let (iv, _) = integerize(v);
            ints.iter().all(|row| int_dot_is_zero(row, &iv, None))
        });
        if ok {
            return Some((rr.pivots, vectors));
        }
    }
    None
}

/// Multi-modular particular solution of the augmented system; certified by
/// substitution. Returns `None` when it cannot certify (including genuinely
/// inconsistent systems, which the exact path then decides).
fn modular_solve(aug: &[Vec<BigInt>], cols: usize) -> Option<Vec<BigRational>> {
    let mut crt: Option<modular::Crt> = None;
    for &p in &modular::PRIMES {
        let rr = modular::rref(aug, cols + 1, p);
        if rr.pivots.last() == Some(&cols) {
            return None;
        }
        let mut x = vec![0u64; cols];
        for (row, &c) in rr.rows.iter().zip(&rr.pivots) {
            x[c] = row[cols];
        }
        let acc = crt.get_or_insert_with(|| modular::Crt::new(cols));
        acc.add(&x, p);
        let Some(lifted) = acc.reconstruct() else { continue };
        let (iv, scale) = integerize(&lifted);
        let ok = aug.iter().all(|row| {
            let rhs = &row[cols] * &scale;
            int_dot_is_zero(&row[..cols], &iv, Some(&rhs))
        });
        if ok {
            return Some(lifted);
        }
    }
    None
}

/// Sign-normalizes a vector so its first nonzero entry is one.
pub fn normalize_first_nonzero(v: &[BigRational]) -> Vec<BigRational> {
    match v.iter().find(|x| !x.is_zero()) {
        None => v.to_vec(),
        Some(f) => {
            let inv = f.recip();
            v.iter().map(|x| x * &inv).collect()
        }
    }
}

/// True when every entry is an integer and the gcd of the entries is one.
pub fn is_primitive_integer(v: &[BigRational]) -> bool {
    v.iter().all(|x| x.is_integer())
        && v.iter().fold(BigInt::zero(), |g, x| g.gcd(x.numer())).abs().is_one()
}
