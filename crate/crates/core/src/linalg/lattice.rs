use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&k| !m[k][c].is_zero()) else { continue };
        m.swap(r, p);
        for k in r + 1..rows {
            for j in c + 1..cols {
                let v = (&m[r][c] * &m[k][j] - &m[k][c] * &m[r][j]) / &prev;
                m[k][j] = v;
            }
            m[k][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Row echelon form over the integers restricted to the first `width`
/// columns, using only unimodular row operations. Returns the number of
/// pivot rows; rows below it vanish on those columns.
fn echelon(rows: &mut [Vec<BigInt>], width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        if r == rows.len() {
            break;
        }
        loop {
            let best = (r..rows.len())
                .filter(|&k| !rows[k][c].is_zero())
                .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()));
            let Some(best) = best else { break };
            rows.swap(r, best);
            let mut done = true;
            for k in r + 1..rows.len() {
                if rows[k][c].is_zero() {
                    continue;
                }
                let f = rows[k][c].div_floor(&rows[r][c]);
                let pivot = rows[r].clone();
                for (x, p) in rows[k].iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
                if !rows[k][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[r][c].is_zero() {
            continue;
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Hermite normal form of the lattice spanned by `rows`: positive pivots,
/// entries above each pivot reduced into `[0, pivot)`, zero rows dropped.
pub fn hermite_rows(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let width = rows.first().map_or(0, Vec::len);
    let pivots = echelon(&mut rows, width);
    rows.truncate(pivots.len());
    for (r, &c) in pivots.iter().enumerate() {
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -&*x;
            }
        }
        let pivot = rows[r].clone();
        for row in rows.iter_mut().take(r) {
            let f = row[c].div_floor(&pivot[c]);
            if !f.is_zero() {
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
    }
    rows
}

/// Basis (in Hermite normal form) of the integer lattice `{x in Z^n : a x = 0}`
/// where `a` is given by its rows of length `n`.
pub fn integer_kernel(a: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let m = a.len();
    let mut work: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut row: Vec<BigInt> = a.iter().map(|r| r[j].clone()).collect();
            row.extend((0..n).map(|k| BigInt::from(i64::from(k == j))));
            row
        })
        .collect();
    let pivots = echelon(&mut work, m);
    let kernel: Vec<Vec<BigInt>> = work.into_iter().skip(pivots.len()).map(|r| r[m..].to_vec()).collect();
    if kernel.is_empty() {
        return kernel;
    }
    hermite_rows(kernel)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_of_small_matrix() {
        let a = vec![z(&[2, 4, 6])];
        let k = integer_kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s: BigInt = v.iter().zip(&a[0]).map(|(x, y)| x * y).sum();
            assert!(s.is_zero());
        }
        // the lattice contains (2,-1,0) and (3,0,-1), so it is saturated
        let h = hermite_rows(vec![z(&[2, -1, 0]), z(&[3, 0, -1])]);
        assert_eq!(h, k);
    }

    #[test]
    fn bareiss_matches_expectation() {
        assert_eq!(bareiss_rank(vec![z(&[1, 2]), z(&[2, 4])]), 1);
        assert_eq!(bareiss_rank(vec![z(&[0, 1, 0]), z(&[1, 0, 0]), z(&[1, 1, 0])]), 2);
        assert_eq!(bareiss_rank(vec![z(&[3, 1]), z(&[1, 3])]), 2);
    }

    #[test]
    fn hermite_is_canonical() {
        let a = hermite_rows(vec![z(&[1, 1, 0]), z(&[0, 1, 1])]);
        let b = hermite_rows(vec![z(&[1, 2, 1]), z(&[-1, -1, 0])]);
        assert_eq!(a, b);
    }
}
