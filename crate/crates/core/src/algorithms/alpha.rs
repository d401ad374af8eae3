use num::{BigInt, BigRational, One};

use super::characterize::minor_map_matrix;
use super::fit::sum_of_squares;
use crate::error::{Error, Result};
use crate::linalg::{self, RatMatrix};
use crate::poly::{binomial, MonomialIndex, RationalPoly};
use crate::tensor::{determinantal_generators, gradient_tensor, pairs, SymTensor};

/// Kernel of `f ↦ (x_i ∂_j f - x_j ∂_i f)_{i<j}` on forms of degree `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaKernel {
    pub dim: usize,
    /// Monic kernel generator when the kernel is one-dimensional.
    pub generator: Option<RationalPoly>,
}

/// Computes the kernel exactly.
///
/// The kernel of the map restricted to the adjacent pairs `(i, i+1)` contains
/// the full kernel and is much cheaper to compute. Each of its basis vectors is
/// checked against every pair; if all pass, the two kernels coincide.
pub fn alpha_kernel(n: usize, d: u32) -> Result<AlphaKernel> {
    if n < 1 || d < 2 {
        return Err(Error::InvalidArgument(format!("alpha kernel needs n >= 1 and d >= 2, got ({n},{d})")));
    }
    let adjacent: Vec<(usize, usize)> = (0..n).map(|i| (i, i + 1)).collect();
    let (index, sub) = minor_map_matrix(n, d, &adjacent);
    let candidates = linalg::kernel_basis(&sub).vectors;
    let forms: Vec<RationalPoly> = candidates.iter().map(|v| RationalPoly::from_coefficients(&index, v)).collect();
    let basis = if forms.iter().all(|f| in_kernel(n, d, f)) {
        forms
    } else {
        let (index, full) = minor_map_matrix(n, d, &pairs(n));
        linalg::kernel_basis(&full).vectors.iter().map(|v| RationalPoly::from_coefficients(&index, v)).collect()
    };
    let generator = if basis.len() == 1 { Some(basis[0].monic()) } else { None };
    Ok(AlphaKernel { dim: basis.len(), generator })
}

fn in_kernel(n: usize, d: u32, f: &RationalPoly) -> bool {
    SymTensor::new(n, d, f.clone())
        .map(|s| determinantal_generators(&gradient_tensor(&s)).is_zero())
        .unwrap_or(false)
}

/// `(x_0^2 + ... + x_n^2)^{k}`.
pub fn quadric_power(n: usize, k: u32) -> RationalPoly {
    sum_of_squares(n + 1).pow(k)
}

/// Upper bound on the dimension of the variety of eigenschemes, obtained as
/// (affine dimension of the space of tensors) - (dimension of a generic fiber)
/// - 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionBound {
    /// `(n+1) · C(n+d-1, n)`.
    pub source_dim: u128,
    /// Dimension of the tensors with identically vanishing minors, computed as
    /// an exact kernel dimension.
    pub fiber_dim: u128,
    pub bound: i128,
}

/// Evaluates the bound with the fiber dimension taken from the exact kernel of
/// the map sending a tensor to its minors.
pub fn dimension_bound(n: usize, d: u32) -> Result<DimensionBound> {
    if n < 1 || d < 2 {
        return Err(Error::InvalidArgument(format!("dimension bound needs n >= 1 and d >= 2, got ({n},{d})")));
    }
    let nv = n + 1;
    let g_index = MonomialIndex::new(nv, d - 1);
    let f_index = MonomialIndex::new(nv, d);
    let prs = pairs(n);
    let cols = nv * g_index.len();
    let mut m = RatMatrix::zeros(prs.len() * f_index.len(), cols);
    for (p, &(i, j)) in prs.iter().enumerate() {
        for (c, mono) in g_index.basis().iter().enumerate() {
            let base = p * f_index.len();
            let ri = f_index.get(&mono.times_var(i)).expect("degree d monomial");
            let rj = f_index.get(&mono.times_var(j)).expect("degree d monomial");
            // x_i g_j - x_j g_i
            m.set(base + ri, j * g_index.len() + c, BigRational::one());
            m.set(base + rj, i * g_index.len() + c, -BigRational::one());
        }
    }
    let fiber_dim = linalg::kernel_basis(&m).dim as u128;
    let source_dim = cols as u128;
    Ok(DimensionBound { source_dim, fiber_dim, bound: source_dim as i128 - fiber_dim as i128 - 1 })
}

/// The same bound in closed form, `n (n+d) / (d-1) · C(n+d-2, n) - 1`.
pub fn dimension_bound_closed_form(n: usize, d: u32) -> Result<i128> {
    if n < 1 || d < 2 {
        return Err(Error::InvalidArgument(format!("dimension bound needs n >= 1 and d >= 2, got ({n},{d})")));
    }
    let c = binomial((n + d as usize - 2) as u64, n as u64);
    let value = BigRational::new(
        BigInt::from(n) * BigInt::from(n + d as usize) * BigInt::from(c),
        BigInt::from(d - 1),
    );
    if !value.is_integer() {
        return Err(Error::InvalidArgument(format!("closed form is not integral at ({n},{d})")));
    }
    let v: i128 = value.to_integer().try_into().map_err(|_| Error::InvalidArgument("bound overflows".into()))?;
    Ok(v - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_degree_kernel_is_trivial() {
        assert_eq!(alpha_kernel(2, 3).unwrap(), AlphaKernel { dim: 0, generator: None });
    }

    #[test]
    fn even_degree_kernel_is_quadric_power() {
        let k = alpha_kernel(1, 2).unwrap();
        assert_eq!(k.dim, 1);
        assert_eq!(k.generator.unwrap(), RationalPoly::parse("x0^2 + x1^2", 2).unwrap());
        let k = alpha_kernel(2, 4).unwrap();
        assert_eq!(k.generator.unwrap(), quadric_power(2, 2));
    }

    #[test]
    fn bound_routes_agree() {
        for n in 1..=3 {
            for d in 3..=5 {
                let b = dimension_bound(n, d).unwrap();
                assert_eq!(b.fiber_dim, binomial((n + d as usize - 2) as u64, n as u64));
                assert_eq!(b.bound, dimension_bound_closed_form(n, d).unwrap());
            }
        }
    }

    #[test]
    fn plane_bound_is_d_squared_plus_2d_minus_1() {
        for d in 3..=6i128 {
            assert_eq!(dimension_bound_closed_form(2, d as u32).unwrap(), d * d + 2 * d - 1);
        }
    }
}
