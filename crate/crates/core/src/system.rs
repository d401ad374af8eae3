//! Helpers for turning linear maps between spaces of polynomial tuples into
//! rational matrices.

use num::{BigRational, Zero};

use crate::linalg::RatMatrix;
use crate::poly::{MonomialIndex, RationalPoly};

/// Matrix of a linear map whose `c`-th column is the image tuple `columns[c]`.
/// Rows are indexed by (tuple component `k`, monomial of `targets[k]`), in that
/// nesting order.
///
/// Panics if an image has a term outside its target basis; callers build the
/// bases from the known degrees.
pub(crate) fn image_matrix(columns: &[Vec<RationalPoly>], targets: &[MonomialIndex]) -> RatMatrix {
    let offsets = row_offsets(targets);
    let nrows = offsets[targets.len()];
    let mut m = RatMatrix::zeros(nrows, columns.len());
    for (c, image) in columns.iter().enumerate() {
        debug_assert_eq!(image.len(), targets.len());
        for (k, poly) in image.iter().enumerate() {
            for (mono, coeff) in poly.terms() {
                let r = targets[k].get(mono).expect("image term lies in target basis");
                m.set(offsets[k] + r, c, coeff.clone());
            }
        }
    }
    m
}

/// Stacked coefficient vector of a polynomial tuple, in the row order used by
/// [`image_matrix`].
pub(crate) fn stacked_vector(tuple: &[RationalPoly], targets: &[MonomialIndex]) -> Option<Vec<BigRational>> {
    let offsets = row_offsets(targets);
    let mut v = vec![BigRational::zero(); offsets[targets.len()]];
    for (k, poly) in tuple.iter().enumerate() {
        for (mono, coeff) in poly.terms() {
            let r = targets[k].get(mono)?;
            v[offsets[k] + r] = coeff.clone();
        }
    }
    Some(v)
}

fn row_offsets(targets: &[MonomialIndex]) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(targets.len() + 1);
    let mut acc = 0;
    offsets.push(0);
    for t in targets {
        acc += t.len();
        offsets.push(acc);
    }
    offsets
}
