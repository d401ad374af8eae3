use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

/// Exponent vector of a monomial in `x0, ..., x{nvars-1}`.
///
/// Ordering is graded reverse-lexicographic with `x0 > x1 > ... `: higher total
/// degree first, then the monomial with the smaller exponent in the last
/// differing variable is larger.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Multiplies by `x_i`.
    pub fn times_var(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e[i] += 1;
        Monomial(e)
    }

    /// Divides by `x_i`, returning `None` when `x_i` does not divide.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.0[i] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i] -= 1;
        Some(Monomial(e))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            if a != b {
                return b.cmp(a);
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// All monomials of degree `e` in `nvars` variables, leading (grevlex-largest) first.
pub fn monomial_basis(nvars: usize, e: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if nvars == 0 {
        if e == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    let mut cur = vec![0u32; nvars];
    fill(&mut cur, 0, e, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

fn fill(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == cur.len() {
        cur[pos] = left;
        out.push(Monomial(cur.clone()));
        return;
    }
    for a in (0..=left).rev() {
        cur[pos] = a;
        fill(cur, pos + 1, left - a, out);
    }
    cur[pos] = 0;
}

/// A monomial basis together with a position lookup, used to turn graded
/// pieces into coordinate vectors.
#[derive(Debug, Clone)]
pub struct MonomialIndex {
    basis: Vec<Monomial>,
    position: HashMap<Monomial, usize>,
}

impl MonomialIndex {
    pub fn new(nvars: usize, e: u32) -> Self {
        Self::from_basis(monomial_basis(nvars, e))
    }

    pub fn from_basis(basis: Vec<Monomial>) -> Self {
        let position = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        MonomialIndex { basis, position }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn get(&self, m: &Monomial) -> Option<usize> {
        self.position.get(m).copied()
    }

    pub fn monomial(&self, i: usize) -> &Monomial {
        &self.basis[i]
    }
}

/// Binomial coefficient as `u128`; panics on overflow, which only happens far
/// outside the sizes this crate handles.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_two_vars_degree_three() {
        let b = monomial_basis(2, 3);
        let exps: Vec<_> = b.iter().map(|m| m.exponents().to_vec()).collect();
        assert_eq!(exps, vec![vec![3, 0], vec![2, 1], vec![1, 2], vec![0, 3]]);
    }

    #[test]
    fn basis_three_vars_grevlex() {
        let b = monomial_basis(3, 2);
        let exps: Vec<_> = b.iter().map(|m| m.exponents().to_vec()).collect();
        assert_eq!(
            exps,
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![0, 2, 0],
                vec![1, 0, 1],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
    }

    #[test]
    fn basis_degree_zero() {
        assert_eq!(monomial_basis(3, 0), vec![Monomial::one(3)]);
    }

    #[test]
    fn basis_sizes_match_binomial() {
        for nvars in 1..6usize {
            for e in 0..7u32 {
                let b = monomial_basis(nvars, e);
                assert_eq!(b.len() as u128, binomial((nvars as u64) - 1 + e as u64, e as u64));
                let set: std::collections::HashSet<_> = b.iter().collect();
                assert_eq!(set.len(), b.len());
            }
        }
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(12, 8), 495);
    }
}
