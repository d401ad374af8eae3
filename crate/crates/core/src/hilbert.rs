//! Graded Betti numbers and Hilbert function predicted for a zero-dimensional
//! eigenscheme, compared with the Hilbert function of the ideal spanned by a
//! tuple of minors, computed from exact ranks.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, RatMatrix};
use crate::poly::{binomial, MonomialIndex};
use crate::tensor::DetTuple;

/// One summand `R(-twist)^multiplicity` of the module in homological degree `index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BettiEntry {
    pub index: usize,
    pub twist: u64,
    pub multiplicity: u128,
}

/// Graded free modules `F_1, ..., F_n` of the resolution of `R/I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub n: usize,
    pub d: u32,
    pub entries: Vec<BettiEntry>,
}

impl BettiTable {
    /// Summands of `F_i`, in increasing twist.
    pub fn module(&self, i: usize) -> Vec<BettiEntry> {
        self.entries.iter().filter(|e| e.index == i).copied().collect()
    }

    /// Summands with equal twist merged, as `(twist, multiplicity)`.
    pub fn graded(&self, i: usize) -> Vec<(u64, u128)> {
        let mut out: Vec<(u64, u128)> = Vec::new();
        for e in self.module(i) {
            match out.last_mut() {
                Some((t, m)) if *t == e.twist => *m += e.multiplicity,
                _ => out.push((e.twist, e.multiplicity)),
            }
        }
        out
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.n {
            write!(f, "F_{i} =")?;
            for (k, (t, m)) in self.graded(i).into_iter().enumerate() {
                let sep = if k == 0 { " " } else { " + " };
                if m == 1 {
                    write!(f, "{sep}R(-{t})")?;
                } else {
                    write!(f, "{sep}R(-{t})^{m}")?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn check_dims(n: usize, d: u32) -> Result<()> {
    if n < 1 || d < 2 {
        return Err(Error::InvalidArgument(format!("need n >= 1 and d >= 2, got ({n},{d})")));
    }
    Ok(())
}

/// `F_i = ⊕_{j=1}^{i} R(-j(d-2)-i-1)^{C(n+1,i+1)}` for `i = 1..n`.
pub fn predicted_betti(n: usize, d: u32) -> Result<BettiTable> {
    check_dims(n, d)?;
    let mut entries = Vec::new();
    for i in 1..=n {
        let multiplicity = binomial((n + 1) as u64, (i + 1) as u64);
        for j in 1..=i {
            let twist = (j as u64) * (d as u64 - 2) + i as u64 + 1;
            entries.push(BettiEntry { index: i, twist, multiplicity });
        }
    }
    Ok(BettiTable { n, d, entries })
}

/// Numerator of the Hilbert series, `1 + Σ_i (-1)^i Σ_{twists} mult · t^twist`,
/// as a dense coefficient list.
pub fn hilbert_numerator(n: usize, d: u32) -> Result<Vec<i128>> {
    let table = predicted_betti(n, d)?;
    let top = table.entries.iter().map(|e| e.twist).max().unwrap_or(0) as usize;
    let mut coeffs = vec![0i128; top + 1];
    coeffs[0] = 1;
    for e in &table.entries {
        let sign = if e.index % 2 == 1 { -1 } else { 1 };
        coeffs[e.twist as usize] += sign * e.multiplicity as i128;
    }
    Ok(coeffs)
}

/// Coefficient of `t^e` in `numerator / (1-t)^{n+1}`.
pub fn predicted_hilbert(n: usize, d: u32, e: u32) -> Result<u128> {
    let num = hilbert_numerator(n, d)?;
    let mut acc: i128 = 0;
    for (k, &c) in num.iter().enumerate() {
        if k as u32 > e || c == 0 {
            continue;
        }
        acc += c * binomial((e as usize - k + n) as u64, n as u64) as i128;
    }
    u128::try_from(acc).map_err(|_| Error::InvalidArgument(format!("negative Hilbert value {acc}")))
}

/// `dim (R/I)_e` for the ideal spanned by the entries of `f`, computed as
/// `C(n+e, n)` minus the rank of `{m · f_ij : deg m = e - d}`.
pub fn actual_hilbert(f: &DetTuple, e: u32) -> u128 {
    let n = f.n();
    let nv = n + 1;
    let full = binomial((n as u64) + e as u64, n as u64);
    if e < f.d() || f.is_zero() {
        return full;
    }
    let target = MonomialIndex::new(nv, e);
    let multipliers = MonomialIndex::new(nv, e - f.d());
    let mut rows = Vec::with_capacity(multipliers.len() * f.entries().len());
    for g in f.entries().iter().filter(|g| !g.is_zero()) {
        for m in multipliers.basis() {
            rows.push(g.times_monomial(m).coefficient_vector(&target).expect("degree e product"));
        }
    }
    let matrix = RatMatrix::from_rows(target.len(), rows).expect("rows of equal length");
    full - linalg::rank(&matrix) as u128
}

/// Predicted and actual Hilbert function at one degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HilbertRecord {
    pub degree: u32,
    pub predicted: u128,
    pub actual: u128,
    pub agree: bool,
}

/// Degree from which the predicted Hilbert function is constant, `n(d-2) + 1`.
pub fn stabilization_degree(n: usize, d: u32) -> u32 {
    n as u32 * (d - 2) + 1
}

/// Records for `e = 0..=window`; the default window is `n(d-2) + 2`.
pub fn hilbert_table(f: &DetTuple, window: Option<u32>) -> Result<Vec<HilbertRecord>> {
    let (n, d) = (f.n(), f.d());
    let last = window.unwrap_or(stabilization_degree(n, d) + 1);
    (0..=last)
        .map(|e| {
            let predicted = predicted_hilbert(n, d, e)?;
            let actual = actual_hilbert(f, e);
            Ok(HilbertRecord { degree: e, predicted, actual, agree: predicted == actual })
        })
        .collect()
}

/// Hilbert values one past the regularity predicted for a zero-dimensional
/// eigenscheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DimensionProbe {
    pub is_zero_dimensional: bool,
    pub degree: Option<u128>,
    pub probe_degree: u32,
    pub values: [u128; 2],
}

/// Evaluates the Hilbert function at `e* = n(d-2) + 1` and `e* + 1` and reports
/// a zero-dimensional scheme of degree `c` when both values equal `c`.
pub fn dimension_probe(f: &DetTuple) -> DimensionProbe {
    let e = stabilization_degree(f.n(), f.d());
    let values = [actual_hilbert(f, e), actual_hilbert(f, e + 1)];
    let stable = values[0] == values[1];
    DimensionProbe { is_zero_dimensional: stable, degree: stable.then_some(values[0]), probe_degree: e, values }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::RationalPoly;
    use crate::tensor::{determinantal_generators, gradient_tensor, w_count, PSTensor, SymTensor};

    #[test]
    fn betti_plane_cubic() {
        let t = predicted_betti(2, 3).unwrap();
        assert_eq!(t.graded(1), vec![(3, 3)]);
        assert_eq!(t.graded(2), vec![(4, 1), (5, 1)]);
        assert_eq!(t.to_string(), "F_1 = R(-3)^3\nF_2 = R(-4) + R(-5)\n");
    }

    #[test]
    fn betti_space_cubic() {
        let t = predicted_betti(3, 3).unwrap();
        assert_eq!(t.graded(1), vec![(3, 6)]);
        assert_eq!(t.graded(2), vec![(4, 4), (5, 4)]);
        assert_eq!(t.graded(3), vec![(5, 1), (6, 1), (7, 1)]);
    }

    #[test]
    fn betti_binary_forms() {
        for d in 2..6 {
            let t = predicted_betti(1, d).unwrap();
            assert_eq!(t.graded(1), vec![(d as u64, 1)]);
        }
    }

    #[test]
    fn hilbert_plane_cubic_series() {
        assert_eq!(hilbert_numerator(2, 3).unwrap(), vec![1, 0, 0, -3, 1, 1]);
        let hf: Vec<u128> = (0..6).map(|e| predicted_hilbert(2, 3, e).unwrap()).collect();
        assert_eq!(hf, vec![1, 3, 6, 7, 7, 7]);
        assert_eq!(predicted_hilbert(2, 4, 30).unwrap(), 13);
    }

    #[test]
    fn predicted_stabilizes_at_w() {
        for n in 1..=4 {
            for d in 2..=6 {
                let e0 = stabilization_degree(n, d);
                for e in e0..e0 + 3 {
                    assert_eq!(predicted_hilbert(n, d, e).unwrap(), w_count(n, d).unwrap(), "({n},{d}) e={e}");
                }
            }
        }
    }

    #[test]
    fn zero_tuple_has_full_hilbert_function() {
        let f = DetTuple::zero(2, 3);
        for e in 0..6 {
            assert_eq!(actual_hilbert(&f, e), binomial(2 + e as u64, 2));
        }
        assert!(!dimension_probe(&f).is_zero_dimensional);
    }

    #[test]
    fn trivial_family_is_not_zero_dimensional() {
        let h = RationalPoly::parse("x0 + 2x1 - x2", 3).unwrap();
        let t = PSTensor::trivial(2, &h).unwrap();
        let p = dimension_probe(&determinantal_generators(&t));
        assert_eq!(p.degree, None);
    }

    #[test]
    fn fermat_curves_are_zero_dimensional() {
        let s = SymTensor::fermat(2, 3).unwrap();
        let f = determinantal_generators(&gradient_tensor(&s));
        assert_eq!(actual_hilbert(&f, 4), 7);
        assert_eq!(dimension_probe(&f).degree, Some(7));
        let s = SymTensor::fermat(2, 4).unwrap();
        let f = determinantal_generators(&gradient_tensor(&s));
        assert_eq!(dimension_probe(&f).degree, Some(13));
    }

    #[test]
    fn specific_plane_cubic_matches_prediction() {
        let t = PSTensor::parse(2, 3, &["x0^2 + 2x1x2 - x2^2", "3x0x1 - x1^2 + x2^2", "x0^2 - 5x0x2 + 7x1^2"]).unwrap();
        let table = hilbert_table(&determinantal_generators(&t), None).unwrap();
        assert_eq!(table.len(), 5);
        assert!(table.iter().all(|r| r.agree), "{table:?}");
    }
}
