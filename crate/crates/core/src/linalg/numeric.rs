//! Floating-point rank of small complex matrices.

use nalgebra::DMatrix;
use num::complex::Complex64;

/// Number of singular values above `tol` times the largest one. Rows must have
/// equal length.
pub fn numeric_rank(rows: &[Vec<Complex64>], tol: f64) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let cols = first.len();
    if cols == 0 {
        return 0;
    }
    let data: Vec<Complex64> = rows.iter().flatten().copied().collect();
    let m = DMatrix::from_row_slice(rows.len(), cols, &data);
    let sv = m.svd(false, false).singular_values;
    let top = sv.iter().copied().fold(0.0f64, f64::max);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * top).count()
}

/// Unit vector spanning the direction of the smallest singular value, i.e. an
/// approximate null vector.
pub fn numeric_null_vector(rows: &[Vec<Complex64>], cols: usize) -> Vec<Complex64> {
    let mut data: Vec<Complex64> = rows.iter().flatten().copied().collect();
    let mut nrows = rows.len();
    // pad to a square matrix so the full right singular basis is available
    while nrows < cols {
        data.extend(std::iter::repeat_n(Complex64::new(0.0, 0.0), cols));
        nrows += 1;
    }
    let m = DMatrix::from_row_slice(nrows, cols, &data);
    let svd = m.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let (k, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |best, (i, &s)| if s < best.1 { (i, s) } else { best });
    (0..cols).map(|j| v_t[(k, j)].conj()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn detects_dependent_rows() {
        let a = vec![c(1.0, 0.0), c(0.0, 1.0), c(2.0, 0.0)];
        let b: Vec<_> = a.iter().map(|z| z * c(0.5, -3.0)).collect();
        assert_eq!(numeric_rank(&[a.clone(), b], 1e-8), 1);
        assert_eq!(numeric_rank(&[a, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]], 1e-8), 2);
        assert_eq!(numeric_rank(&[vec![c(0.0, 0.0); 2]], 1e-8), 0);
    }

    #[test]
    fn null_vector_of_rank_deficient_rows() {
        let rows = vec![vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 1.0), c(0.0, 1.0)]];
        let v = numeric_null_vector(&rows, 3);
        for r in &rows {
            let dot: Complex64 = r.iter().zip(&v).map(|(a, b)| a * b).sum();
            assert!(dot.norm() < 1e-12);
        }
        assert!((v.iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0).abs() < 1e-12);
    }
}
