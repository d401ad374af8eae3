//! Reduction modulo word-sized primes, Chinese remaindering and rational
//! reconstruction. Everything here only proposes answers; callers certify them
//! exactly before use.

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

pub(crate) const PRIMES: [u64; 8] = [
    4611686018427387847,
    4611686018427387817,
    4611686018427387787,
    4611686018427387761,
    4611686018427387751,
    4611686018427387737,
    4611686018427387733,
    4611686018427387709,
];

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + (p - b)
    }
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

pub(crate) fn reduce(x: &BigInt, p: u64) -> u64 {
    if let Some(v) = x.to_i64() {
        return v.rem_euclid(p as i64) as u64;
    }
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

/// Reduced row echelon form over `Z/p`, rows sorted by pivot column.
pub(crate) struct ModRref {
    pub pivots: Vec<usize>,
    pub rows: Vec<Vec<u64>>,
}

/// Incremental Gauss-Jordan: every stored row keeps a unit pivot at its first
/// nonzero entry and zeros in every other stored pivot column, so the result
/// is the unique RREF of the row space.
pub(crate) fn rref(int_rows: &[Vec<BigInt>], cols: usize, p: u64) -> ModRref {
    let mut pivot_rows: Vec<(usize, Vec<u64>)> = Vec::new();
    for src in int_rows {
        let mut r: Vec<u64> = src.iter().map(|x| if x.is_zero() { 0 } else { reduce(x, p) }).collect();
        for (c, pr) in &pivot_rows {
            let f = r[*c];
            if f != 0 {
                for j in 0..cols {
                    if pr[j] != 0 {
                        r[j] = submod(r[j], mulmod(f, pr[j], p), p);
                    }
                }
            }
        }
        let Some(c_new) = r.iter().position(|&x| x != 0) else { continue };
        let inv = invmod(r[c_new], p);
        for x in r.iter_mut() {
            if *x != 0 {
                *x = mulmod(*x, inv, p);
            }
        }
        for (_, pr) in pivot_rows.iter_mut() {
            let f = pr[c_new];
            if f != 0 {
                for j in c_new..cols {
                    if r[j] != 0 {
                        pr[j] = submod(pr[j], mulmod(f, r[j], p), p);
                    }
                }
            }
        }
        pivot_rows.push((c_new, r));
        if pivot_rows.len() == cols {
            break;
        }
    }
    pivot_rows.sort_by_key(|(c, _)| *c);
    let pivots = pivot_rows.iter().map(|(c, _)| *c).collect();
    let rows = pivot_rows.into_iter().map(|(_, r)| r).collect();
    ModRref { pivots, rows }
}

pub(crate) fn rank_mod(int_rows: &[Vec<BigInt>], cols: usize, p: u64) -> usize {
    rref(int_rows, cols, p).pivots.len()
}

/// Kernel basis mod p with unit entries on the free columns, in free-column order.
pub(crate) fn kernel_from_rref(rr: &ModRref, cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut is_pivot = vec![false; cols];
    for &c in &rr.pivots {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (row, &c) in rr.rows.iter().zip(&rr.pivots) {
                v[c] = (p - row[f]) % p;
            }
            v
        })
        .collect()
}

/// Incrementally combines residues modulo several primes.
pub(crate) struct Crt {
    modulus: BigInt,
    values: Vec<BigInt>,
}

impl Crt {
    pub fn new(len: usize) -> Self {
        Crt { modulus: BigInt::one(), values: vec![BigInt::zero(); len] }
    }

    pub fn add(&mut self, residues: &[u64], p: u64) {
        let pb = BigInt::from(p);
        if self.modulus.is_one() {
            self.values = residues.iter().map(|&r| BigInt::from(r)).collect();
            self.modulus = pb;
            return;
        }
        // x = v + m * ((r - v) * m^{-1} mod p)
        let m_mod_p = reduce(&self.modulus, p);
        let m_inv = invmod(m_mod_p, p);
        for (v, &r) in self.values.iter_mut().zip(residues) {
            let vm = reduce(v, p);
            let t = mulmod(submod(r, vm, p), m_inv, p);
            *v += &self.modulus * BigInt::from(t);
        }
        self.modulus *= pb;
    }

    pub fn reconstruct(&self) -> Option<Vec<BigRational>> {
        let bound = (&self.modulus / BigInt::from(2)).sqrt();
        self.values.iter().map(|v| rational_reconstruct(v, &self.modulus, &bound)).collect()
    }
}

/// Wang's rational reconstruction: `n/d ≡ a (mod m)` with `|n|, d <= bound`.
pub(crate) fn rational_reconstruct(a: &BigInt, m: &BigInt, bound: &BigInt) -> Option<BigRational> {
    let a = a.mod_floor(m);
    if a.is_zero() {
        return Some(BigRational::zero());
    }
    let (mut r0, mut r1) = (m.clone(), a);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > *bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}
