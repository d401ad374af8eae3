//! Seeded random tensors with small integer coefficients.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::poly::{monomial_basis, rat, RationalPoly};
use crate::tensor::{AnyTensor, PSTensor, SymTensor};

/// Coefficients are drawn uniformly from `-bound..=bound`.
pub const DEFAULT_BOUND: i64 = 20;

fn random_form(rng: &mut ChaCha8Rng, nvars: usize, e: u32, bound: i64) -> Result<RationalPoly> {
    loop {
        let terms = monomial_basis(nvars, e).into_iter().map(|m| (m, rat(rng.gen_range(-bound..=bound))));
        let f = RationalPoly::from_terms(nvars, terms)?;
        if !f.is_zero() {
            return Ok(f);
        }
    }
}

pub fn random_tensor(n: usize, d: u32, symmetric: bool, seed: u64, bound: i64) -> Result<AnyTensor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = bound.max(1);
    if symmetric {
        let f = random_form(&mut rng, n + 1, d, bound)?;
        Ok(AnyTensor::Symmetric(SymTensor::new(n, d, f)?))
    } else {
        let e = d.saturating_sub(1);
        let forms = (0..=n).map(|_| random_form(&mut rng, n + 1, e, bound)).collect::<Result<Vec<_>>>()?;
        Ok(AnyTensor::PartiallySymmetric(PSTensor::new(n, d, forms)?))
    }
}
