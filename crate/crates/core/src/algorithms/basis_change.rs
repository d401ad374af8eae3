use num::{BigInt, BigRational, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::characterize::{derham_check, koszul_check};
use crate::error::{Error, Result};
use crate::linalg::{self, RatMatrix};
use crate::poly::{binomial, MonomialIndex, RationalPoly};
use crate::system::image_matrix;
use crate::tensor::{pair_index, triples, DetTuple};

const RANDOM_TRIALS: usize = 8;
const GRID_CAP: u128 = 200_000;

/// Outcome of searching for an invertible change of basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisChange {
    /// `m` is invertible and `f = m · hs` satisfies the identities.
    Found { m: RatMatrix, f: DetTuple },
    /// Every matrix in the solution space is singular (certified exactly).
    NoneExists,
    /// Random trials failed and the exact certificate was too large to run.
    Inconclusive { grid_points: u128 },
}

/// Report of [`basis_change_search`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisChangeSearch {
    pub solution_dim: usize,
    pub outcome: BasisChange,
}

/// Looks for a constant invertible matrix `M` such that the forms `M · hs`,
/// read as `(f_01, f_02, ..., f_{n-1,n})`, satisfy the Koszul identities (and
/// the de Rham identities when `symmetric`).
///
/// The identities are linear in the entries of `M`. A basis of their solution
/// space is computed exactly; random integer combinations are tried first and a
/// negative answer is certified by evaluating the determinant, a polynomial of
/// degree `C(n+1,2)` in the basis coefficients, on a unisolvent grid.
pub fn basis_change_search(hs: &[RationalPoly], symmetric: bool, seed: u64) -> Result<BasisChangeSearch> {
    let big_n = hs.len();
    let n = triangular_root(big_n)
        .ok_or_else(|| Error::InvalidArgument(format!("{big_n} forms is not C(n+1,2) for any n >= 1")))?;
    let nv = n + 1;
    let d = common_degree(hs, nv)?;

    let as_tuple = |forms: Vec<RationalPoly>| DetTuple::new(n, d, forms);
    let identity = RatMatrix::identity(big_n);
    let direct = as_tuple(hs.to_vec())?;
    let passes = |f: &DetTuple| koszul_check(f) && (!symmetric || derham_check(f));

    let basis = constraint_kernel(hs, n, d, symmetric);
    let solution_dim = basis.len();
    if passes(&direct) {
        return Ok(BasisChangeSearch { solution_dim, outcome: BasisChange::Found { m: identity, f: direct } });
    }
    if basis.is_empty() {
        return Ok(BasisChangeSearch { solution_dim, outcome: BasisChange::NoneExists });
    }

    let found = |m: RatMatrix| -> Result<BasisChange> {
        let forms = apply(&m, hs);
        Ok(BasisChange::Found { m, f: as_tuple(forms)? })
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIALS {
        let coeffs: Vec<i64> = (0..basis.len()).map(|_| rng.gen_range(-3..=3)).collect();
        let m = combine(&basis, &coeffs, big_n);
        if !linalg::determinant(&m)?.is_zero() {
            return Ok(BasisChangeSearch { solution_dim, outcome: found(m)? });
        }
    }

    // The determinant has total degree <= big_n in the r combination
    // coefficients; the points with nonnegative integer coordinates summing to
    // at most big_n are unisolvent for that space.
    let r = basis.len();
    let grid_points = binomial((big_n + r) as u64, r as u64);
    if grid_points > GRID_CAP {
        return Ok(BasisChangeSearch { solution_dim, outcome: BasisChange::Inconclusive { grid_points } });
    }
    let mut point = vec![0i64; r];
    loop {
        let m = combine(&basis, &point, big_n);
        if !linalg::determinant(&m)?.is_zero() {
            return Ok(BasisChangeSearch { solution_dim, outcome: found(m)? });
        }
        if !next_lattice_point(&mut point, big_n as i64) {
            break;
        }
    }
    Ok(BasisChangeSearch { solution_dim, outcome: BasisChange::NoneExists })
}

fn triangular_root(len: usize) -> Option<usize> {
    (1..).take_while(|n| n * (n + 1) / 2 <= len).find(|n| n * (n + 1) / 2 == len)
}

fn common_degree(hs: &[RationalPoly], nv: usize) -> Result<u32> {
    let mut degree = None;
    for h in hs {
        if h.nvars() != nv {
            return Err(Error::VariableCount { left: nv, right: h.nvars() });
        }
        if !h.is_homogeneous() {
            return Err(Error::InvalidArgument(format!("{h} is not homogeneous")));
        }
        if let Some(e) = h.degree() {
            match degree {
                None => degree = Some(e),
                Some(d) if d != e => {
                    return Err(Error::InvalidArgument(format!("forms of degrees {d} and {e}")));
                }
                _ => {}
            }
        }
    }
    match degree {
        Some(d) if d >= 2 => Ok(d),
        Some(d) => Err(Error::InvalidArgument(format!("forms must have degree at least 2, got {d}"))),
        None => Err(Error::InvalidArgument("all forms are zero".into())),
    }
}

/// Basis of the matrices `M`, flattened row-major, for which `M · hs`
/// satisfies the identities.
fn constraint_kernel(hs: &[RationalPoly], n: usize, d: u32, symmetric: bool) -> Vec<Vec<BigRational>> {
    let big_n = hs.len();
    let nv = n + 1;
    let trs = triples(n);
    if trs.is_empty() {
        return linalg::kernel_basis(&RatMatrix::zeros(0, big_n * big_n)).vectors;
    }
    let mut targets: Vec<MonomialIndex> = trs.iter().map(|_| MonomialIndex::new(nv, d + 1)).collect();
    if symmetric {
        targets.extend(trs.iter().map(|_| MonomialIndex::new(nv, d - 1)));
    }
    let mut columns = Vec::with_capacity(big_n * big_n);
    for p in 0..big_n {
        for h in hs {
            // contribution of the entry M[p][q] to every identity
            let mut image = Vec::with_capacity(targets.len());
            for &(i, j, k) in &trs {
                let mut acc = RationalPoly::zero(nv);
                if p == pair_index(n, j, k) {
                    acc = &acc + &h.times_var(i);
                }
                if p == pair_index(n, i, k) {
                    acc = &acc - &h.times_var(j);
                }
                if p == pair_index(n, i, j) {
                    acc = &acc + &h.times_var(k);
                }
                image.push(acc);
            }
            if symmetric {
                for &(i, j, k) in &trs {
                    let mut acc = RationalPoly::zero(nv);
                    if p == pair_index(n, j, k) {
                        acc = &acc + &h.diff(i);
                    }
                    if p == pair_index(n, i, k) {
                        acc = &acc - &h.diff(j);
                    }
                    if p == pair_index(n, i, j) {
                        acc = &acc + &h.diff(k);
                    }
                    image.push(acc);
                }
            }
            columns.push(image);
        }
    }
    linalg::kernel_basis(&image_matrix(&columns, &targets)).vectors
}

fn combine(basis: &[Vec<BigRational>], coeffs: &[i64], big_n: usize) -> RatMatrix {
    let mut flat = vec![BigRational::zero(); big_n * big_n];
    for (v, &c) in basis.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        let c = BigRational::from_integer(BigInt::from(c));
        for (acc, x) in flat.iter_mut().zip(v) {
            *acc += &c * x;
        }
    }
    RatMatrix::new(big_n, big_n, flat).expect("square matrix")
}

fn apply(m: &RatMatrix, hs: &[RationalPoly]) -> Vec<RationalPoly> {
    (0..m.rows())
        .map(|p| {
            let mut acc = RationalPoly::zero(hs[0].nvars());
            for (q, h) in hs.iter().enumerate() {
                let c = m.get(p, q);
                if !c.is_zero() {
                    acc = &acc + &h.scale(c);
                }
            }
            acc
        })
        .collect()
}

/// Steps through `{a in N^r : sum a <= total}` in lexicographic order.
fn next_lattice_point(a: &mut [i64], total: i64) -> bool {
    let r = a.len();
    let sum: i64 = a.iter().sum();
    if sum < total {
        a[r - 1] += 1;
        return true;
    }
    // carry: zero the last nonzero slot and bump its left neighbour
    let Some(last) = (0..r).rev().find(|&i| a[i] != 0) else { return false };
    if last == 0 {
        return false;
    }
    a[last] = 0;
    a[last - 1] += 1;
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{determinantal_generators, gradient_tensor, PSTensor, SymTensor};

    fn poly(s: &str) -> RationalPoly {
        RationalPoly::parse(s, 3).unwrap()
    }

    #[test]
    fn lattice_enumeration_counts() {
        let mut a = vec![0i64; 3];
        let mut count = 1;
        while next_lattice_point(&mut a, 4) {
            assert!(a.iter().sum::<i64>() <= 4);
            count += 1;
        }
        assert_eq!(count as u128, binomial(7, 3));
    }

    #[test]
    fn natural_order_accepted_with_identity() {
        let t = PSTensor::parse(2, 3, &["x0^2 + x1x2", "x1^2", "x2^2 - x0x1"]).unwrap();
        let f = determinantal_generators(&t);
        let s = basis_change_search(f.entries(), false, 0).unwrap();
        match s.outcome {
            BasisChange::Found { m, f: g } => {
                assert_eq!(m, RatMatrix::identity(3));
                assert_eq!(g, f);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn permuted_fermat_tuple_is_repaired() {
        let s = SymTensor::fermat(2, 3).unwrap();
        let f = determinantal_generators(&gradient_tensor(&s));
        let e = f.entries();
        let hs = vec![e[2].clone(), e[0].clone(), e[1].clone()];
        assert!(!koszul_check(&DetTuple::new(2, 3, hs.clone()).unwrap()));
        let search = basis_change_search(&hs, true, 7).unwrap();
        match search.outcome {
            BasisChange::Found { m, f } => {
                assert!(!linalg::determinant(&m).unwrap().is_zero());
                assert!(koszul_check(&f) && derham_check(&f));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn pure_cubes_admit_no_invertible_change() {
        let hs = vec![poly("x0^3"), poly("x1^3"), poly("x2^3")];
        let s = basis_change_search(&hs, false, 0).unwrap();
        assert_eq!(s.outcome, BasisChange::NoneExists);
    }

    #[test]
    fn rejects_mixed_degrees() {
        let hs = vec![poly("x0^3"), poly("x1^2"), poly("x2^3")];
        assert!(basis_change_search(&hs, false, 0).is_err());
        assert!(basis_change_search(&hs[..2], false, 0).is_err());
    }
}
