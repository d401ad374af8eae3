use num::{BigRational, One};

use crate::linalg;
use crate::poly::{MonomialIndex, RationalPoly};
use crate::system::{image_matrix, stacked_vector};
use crate::tensor::{pairs, triples, AnyTensor, DetTuple, PSTensor, SymTensor};

/// Result of testing a tuple against both families of identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterizationVerdict {
    pub koszul_ok: bool,
    pub derham_ok: bool,
    pub recovered: Option<AnyTensor>,
}

/// `x_i f_jk - x_j f_ik + x_k f_ij = 0` for every `i < j < k`.
pub fn koszul_check(f: &DetTuple) -> bool {
    triples(f.n()).into_iter().all(|(i, j, k)| koszul_residual(f, i, j, k).is_zero())
}

pub(crate) fn koszul_residual(f: &DetTuple, i: usize, j: usize, k: usize) -> RationalPoly {
    let a = f.get(j, k).times_var(i);
    let b = f.get(i, k).times_var(j);
    let c = f.get(i, j).times_var(k);
    &(&a - &b) + &c
}

/// `∂_i f_jk - ∂_j f_ik + ∂_k f_ij = 0` for every `i < j < k`.
pub fn derham_check(f: &DetTuple) -> bool {
    triples(f.n()).into_iter().all(|(i, j, k)| {
        let a = f.get(j, k).diff(i);
        let b = f.get(i, k).diff(j);
        let c = f.get(i, j).diff(k);
        (&(&a - &b) + &c).is_zero()
    })
}

/// Runs both checks, then the recovery matching `symmetric`.
pub fn characterize(f: &DetTuple, symmetric: bool) -> CharacterizationVerdict {
    let koszul_ok = koszul_check(f);
    let derham_ok = derham_check(f);
    let recovered = if symmetric {
        recover_symmetric(f).map(AnyTensor::Symmetric)
    } else {
        recover_partially_symmetric(f).map(AnyTensor::PartiallySymmetric)
    };
    CharacterizationVerdict { koszul_ok, derham_ok, recovered }
}

/// Solves `x_i g_j - x_j g_i = f_ij` for `g_0, ..., g_n` of degree `d - 1`.
///
/// Returns `None` when the Koszul identities fail. The solution is unique up to
/// adding `(x_0 h, ..., x_n h)`; the representative returned is the particular
/// solution with free coordinates set to zero.
pub fn recover_partially_symmetric(f: &DetTuple) -> Option<PSTensor> {
    if f.d() < 2 || !koszul_check(f) {
        return None;
    }
    let (n, d) = (f.n(), f.d());
    let nv = n + 1;
    let g_index = MonomialIndex::new(nv, d - 1);
    let prs = pairs(n);
    let targets: Vec<MonomialIndex> = prs.iter().map(|_| MonomialIndex::new(nv, d)).collect();
    let mut columns = Vec::with_capacity(nv * g_index.len());
    for k in 0..nv {
        for m in g_index.basis() {
            let unit = RationalPoly::term(m.clone(), BigRational::one());
            let image = prs
                .iter()
                .map(|&(i, j)| {
                    if k == j {
                        unit.times_var(i)
                    } else if k == i {
                        -unit.times_var(j)
                    } else {
                        RationalPoly::zero(nv)
                    }
                })
                .collect();
            columns.push(image);
        }
    }
    let a = image_matrix(&columns, &targets);
    let b = stacked_vector(f.entries(), &targets)?;
    let x = linalg::solve(&a, &b).ok()??;
    let forms = x.chunks(g_index.len()).map(|c| RationalPoly::from_coefficients(&g_index, c)).collect();
    PSTensor::new(n, d, forms).ok()
}

/// Matrix of `f ↦ (x_i ∂_j f - x_j ∂_i f)_{i<j}` on forms of degree `d`, with
/// rows restricted to the given pairs.
pub(crate) fn minor_map_matrix(n: usize, d: u32, prs: &[(usize, usize)]) -> (MonomialIndex, linalg::RatMatrix) {
    let nv = n + 1;
    let f_index = MonomialIndex::new(nv, d);
    let targets: Vec<MonomialIndex> = prs.iter().map(|_| f_index.clone()).collect();
    let columns: Vec<Vec<RationalPoly>> = f_index
        .basis()
        .iter()
        .map(|m| {
            let unit = RationalPoly::term(m.clone(), BigRational::one());
            prs.iter().map(|&(i, j)| &unit.diff(j).times_var(i) - &unit.diff(i).times_var(j)).collect()
        })
        .collect();
    let a = image_matrix(&columns, &targets);
    (f_index, a)
}

/// Solves `x_i ∂_j f - x_j ∂_i f = f_ij` for a form `f` of degree `d`.
///
/// Returns `None` unless both identity families hold and the system is
/// consistent. For `d` even the solution is unique up to multiples of
/// `(x_0^2 + ... + x_n^2)^{d/2}`; when the tuple is zero that power is returned
/// instead of the zero form.
pub fn recover_symmetric(f: &DetTuple) -> Option<SymTensor> {
    if f.d() < 2 || !koszul_check(f) || !derham_check(f) {
        return None;
    }
    let (n, d) = (f.n(), f.d());
    let (f_index, a) = minor_map_matrix(n, d, &pairs(n));
    let targets: Vec<MonomialIndex> = pairs(n).iter().map(|_| f_index.clone()).collect();
    let b = stacked_vector(f.entries(), &targets)?;
    let x = linalg::solve(&a, &b).ok()??;
    let mut form = RationalPoly::from_coefficients(&f_index, &x);
    if form.is_zero() {
        if let Some(v) = linalg::kernel_basis(&a).vectors.first() {
            form = RationalPoly::from_coefficients(&f_index, v).monic();
        }
    }
    SymTensor::new(n, d, form).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{determinantal_generators, gradient_tensor};

    fn poly(s: &str, nv: usize) -> RationalPoly {
        RationalPoly::parse(s, nv).unwrap()
    }

    fn tuple(n: usize, d: u32, entries: &[&str]) -> DetTuple {
        DetTuple::new(n, d, entries.iter().map(|s| poly(s, n + 1)).collect()).unwrap()
    }

    #[test]
    fn koszul_examples() {
        let t = gradient_tensor(&SymTensor::parse(2, 3, "x0^3").unwrap());
        assert!(koszul_check(&determinantal_generators(&t)));
        assert!(!koszul_check(&tuple(2, 3, &["x0x1^2", "0", "0"])));
        assert!(koszul_check(&DetTuple::zero(3, 4)));
        // n = 1 has no triples
        assert!(koszul_check(&tuple(1, 3, &["x0^3 + 5x1^3"])));
    }

    #[test]
    fn derham_examples() {
        let t = gradient_tensor(&SymTensor::parse(2, 3, "x0^3").unwrap());
        assert!(derham_check(&determinantal_generators(&t)));
        assert!(derham_check(&DetTuple::zero(2, 3)));
        let t = PSTensor::parse(2, 3, &["x1^2", "0", "0"]).unwrap();
        let f = determinantal_generators(&t);
        assert_eq!(f.entries(), &[poly("-x1^3", 3), poly("-x1^2x2", 3), RationalPoly::zero(3)]);
        assert!(koszul_check(&f));
        assert!(!derham_check(&f));
    }

    #[test]
    fn recover_partially_symmetric_round_trip() {
        let t = PSTensor::parse(2, 3, &["x0^2 - x1x2", "3x2^2 + x0x1", "x1^2 - 2x0x2"]).unwrap();
        let f = determinantal_generators(&t);
        let back = recover_partially_symmetric(&f).unwrap();
        assert_eq!(determinantal_generators(&back), f);
        let (c, _h) = crate::tensor::same_determinantal_equations(&t, &back).unwrap().unwrap();
        assert_eq!(c, BigRational::one());
    }

    #[test]
    fn recover_partially_symmetric_zero_tuple() {
        let back = recover_partially_symmetric(&DetTuple::zero(1, 3)).unwrap();
        assert!(determinantal_generators(&back).is_zero());
    }

    #[test]
    fn recover_partially_symmetric_rejects_non_koszul() {
        assert_eq!(recover_partially_symmetric(&tuple(2, 3, &["x0x1^2", "0", "0"])), None);
    }

    #[test]
    fn recover_symmetric_fermat_cubic() {
        let s = SymTensor::fermat(2, 3).unwrap();
        let f = determinantal_generators(&gradient_tensor(&s));
        let back = recover_symmetric(&f).unwrap();
        assert!(s.form().proportionality(back.form()).is_some());
        assert_eq!(determinantal_generators(&gradient_tensor(&back)), f);
    }

    #[test]
    fn recover_symmetric_zero_tuple_even_degree() {
        let back = recover_symmetric(&DetTuple::zero(2, 4)).unwrap();
        let q = poly("x0^2 + x1^2 + x2^2", 3).pow(2);
        assert!(q.proportionality(back.form()).is_some());
    }

    #[test]
    fn recover_symmetric_rejects_non_gradient() {
        let t = PSTensor::parse(2, 3, &["x1^2", "0", "0"]).unwrap();
        assert_eq!(recover_symmetric(&determinantal_generators(&t)), None);
    }

    #[test]
    fn characterize_reports_everything() {
        let s = SymTensor::parse(2, 3, "x0^3").unwrap();
        let f = determinantal_generators(&gradient_tensor(&s));
        let v = characterize(&f, false);
        assert!(v.koszul_ok && v.derham_ok);
        assert!(matches!(v.recovered, Some(AnyTensor::PartiallySymmetric(_))));
        assert!(matches!(characterize(&f, true).recovered, Some(AnyTensor::Symmetric(_))));
        let v = characterize(&tuple(2, 3, &["x0x1^2", "0", "0"]), false);
        assert!(!v.koszul_ok);
        assert_eq!(v.recovered, None);
    }

    #[test]
    fn binary_even_forms_need_consistency() {
        // for n = 1, d even, the image of f ↦ x0 ∂1 f - x1 ∂0 f has codimension one
        let f = tuple(1, 2, &["x0^2 + x1^2"]);
        let v = characterize(&f, true);
        assert!(v.koszul_ok && v.derham_ok);
        assert_eq!(v.recovered, None);
        assert!(characterize(&f, false).recovered.is_some());
    }
}
