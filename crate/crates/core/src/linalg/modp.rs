use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Arithmetic modulo the Mersenne prime `2^61 - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp;

impl Fp {
    pub const P: u64 = (1 << 61) - 1;

    pub fn add(a: u64, b: u64) -> u64 {
        (a + b) % Self::P
    }

    pub fn sub(a: u64, b: u64) -> u64 {
        (a + Self::P - b) % Self::P
    }

    pub fn mul(a: u64, b: u64) -> u64 {
        ((u128::from(a) * u128::from(b)) % u128::from(Self::P)) as u64
    }

    pub fn pow(mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = Self::mul(r, a);
            }
            a = Self::mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(a: u64) -> u64 {
        Self::pow(a, Self::P - 2)
    }

    pub fn from_i64(x: i64) -> u64 {
        x.rem_euclid(Self::P as i64) as u64
    }

    /// Reduction of a rational; `None` if the denominator vanishes mod p.
    pub fn reduce(x: &BigRational) -> Option<u64> {
        let p = BigInt::from(Self::P);
        let red = |v: &BigInt| -> u64 {
            let r = ((v % &p) + &p) % &p;
            r.to_u64().expect("residue fits")
        };
        let d = red(x.denom());
        if d == 0 {
            return None;
        }
        Some(Self::mul(red(x.numer()), Self::inv(d)))
    }

    /// Row reduction in place; returns pivot columns.
    pub fn rref(m: &mut [Vec<u64>]) -> Vec<usize> {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&k| m[k][c] != 0) else { continue };
            m.swap(r, p);
            let inv = Self::inv(m[r][c]);
            for x in m[r].iter_mut() {
                *x = Self::mul(*x, inv);
            }
            let pivot = m[r].clone();
            for (k, row) in m.iter_mut().enumerate() {
                if k == r || row[c] == 0 {
                    continue;
                }
                let f = row[c];
                for (x, &p) in row.iter_mut().zip(&pivot).skip(c) {
                    if p != 0 {
                        *x = Self::sub(*x, Self::mul(f, p));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(m: &[Vec<u64>]) -> usize {
        Self::rref(&mut m.to_vec()).len()
    }

    pub fn nullspace(m: &[Vec<u64>], cols: usize) -> Vec<Vec<u64>> {
        let mut a = m.to_vec();
        let pivots = Self::rref(&mut a);
        let mut basis = Vec::new();
        for free in (0..cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0; cols];
            v[free] = 1;
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = Self::sub(0, a[r][free]);
            }
            basis.push(v);
        }
        basis
    }

    pub fn is_invertible(m: &[Vec<u64>]) -> bool {
        let n = m.len();
        m.iter().all(|r| r.len() == n) && Self::rank(m) == n
    }

    pub fn reduce_all(m: &[BigRational]) -> Option<Vec<u64>> {
        m.iter().map(Self::reduce).collect()
    }

    pub fn is_zero_vec(v: &[u64]) -> bool {
        v.iter().all(Zero::is_zero)
    }

    /// The fraction `r/s` with `|r| < 2^30`, `s < 2^29` congruent to `a`, if any.
    pub fn reconstruct(a: u64) -> Option<BigRational> {
        const BOUND: i128 = 1 << 30;
        const DENOM: i128 = 1 << 29;
        let (mut r0, mut r1) = (i128::from(Self::P), i128::from(a));
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 >= BOUND {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        if t1 == 0 || t1.abs() >= DENOM {
            return None;
        }
        let (num, den) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
        Some(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
}

/// Basis of `{x : m x = 0}` in the same normal form as the rational
/// `nullspace`: solved modulo p, lifted by rational reconstruction and checked
/// exactly. Since the rank mod p never exceeds the rank over Q, a verified
/// lift is the exact answer; otherwise the rational elimination runs.
pub fn lifted_nullspace(m: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    let fallback = || super::rational::nullspace(m, cols);
    let Some(reduced) = m.iter().map(|r| Fp::reduce_all(r)).collect::<Option<Vec<_>>>() else { return fallback() };
    let mut basis = Vec::new();
    for v in Fp::nullspace(&reduced, cols) {
        let Some(lift) = v.iter().map(|&x| Fp::reconstruct(x)).collect::<Option<Vec<_>>>() else { return fallback() };
        let zero = m.iter().all(|row| {
            row.iter().zip(&lift).filter(|(a, b)| !a.is_zero() && !b.is_zero()).fold(BigRational::zero(), |acc, (a, b)| acc + a * b).is_zero()
        });
        if !zero {
            return fallback();
        }
        basis.push(lift);
    }
    basis
}
