//! Fraction-free elimination over the integers.

use num::{BigInt, BigRational, One, Zero};

/// Row echelon form produced by Bareiss elimination. Only the first `pivots.len()`
/// rows are kept; row `k` has its pivot at column `pivots[k]`.
pub(crate) struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    /// Sign flips from row swaps, used by the determinant.
    pub swaps: usize,
}

/// Bareiss elimination with the first nonzero entry of each column as pivot.
/// Every intermediate entry is a minor of the input, so the division by the
/// previous pivot is exact.
pub(crate) fn eliminate(mut a: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(pr) = (r..nrows).find(|&i| !a[i][c].is_zero()) else { continue };
        if pr != r {
            a.swap(pr, r);
            swaps += 1;
        }
        let (top, rest) = a.split_at_mut(r + 1);
        let prow = &top[r];
        let piv = &prow[c];
        for row in rest.iter_mut() {
            let f = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let mut v = piv * &row[j];
                if !f.is_zero() && !prow[j].is_zero() {
                    v -= &f * &prow[j];
                }
                if !v.is_zero() {
                    v /= &prev;
                }
                row[j] = v;
            }
        }
        prev = top[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Echelon { rows: a, pivots, swaps }
}

/// Reduced row echelon form over the rationals, built from the Bareiss echelon
/// by normalizing pivots and clearing upward.
pub(crate) fn rref(int_rows: Vec<Vec<BigInt>>, cols: usize) -> (Vec<usize>, Vec<Vec<BigRational>>) {
    let ech = eliminate(int_rows, cols);
    let mut rows: Vec<Vec<BigRational>> = ech
        .rows
        .into_iter()
        .zip(&ech.pivots)
        .map(|(row, &c)| {
            let piv = row[c].clone();
            row.into_iter().map(|x| BigRational::new(x, piv.clone())).collect()
        })
        .collect();
    for k in (0..rows.len()).rev() {
        let c = ech.pivots[k];
        let (above, from_k) = rows.split_at_mut(k);
        let prow = &from_k[0];
        for row in above.iter_mut() {
            let f = row[c].clone();
            if f.is_zero() {
                continue;
            }
            for j in c..cols {
                if !prow[j].is_zero() {
                    row[j] -= &f * &prow[j];
                }
            }
        }
    }
    (ech.pivots, rows)
}

pub(crate) fn determinant(a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let ech = eliminate(a, n);
    if ech.pivots.len() < n {
        return BigInt::zero();
    }
    let d = ech.rows[n - 1][n - 1].clone();
    if ech.swaps % 2 == 1 {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(ints(&[&[2, 1], &[1, 3]])), BigInt::from(5));
        assert_eq!(determinant(ints(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(ints(&[&[1, 2], &[2, 4]])), BigInt::zero());
        // Vandermonde on 1,2,3,4: product of differences = 12
        let v = ints(&[&[1, 1, 1, 1], &[1, 2, 4, 8], &[1, 3, 9, 27], &[1, 4, 16, 64]]);
        assert_eq!(determinant(v), BigInt::from(12));
    }

    #[test]
    fn elimination_skips_zero_columns() {
        let e = eliminate(ints(&[&[0, 2, 4], &[0, 1, 1], &[0, 3, 5]]), 3);
        assert_eq!(e.pivots, vec![1, 2]);
    }
}
