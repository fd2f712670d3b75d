use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::quadform::UnitForm;
use crate::quiver::{Arrow, ArrowKind, DimVector, StaircaseQuiver, Vertex};

/// Largest `Σ d_s d_t` over arrows the brute force accepts.
pub const ORACLE_CAP: usize = 12;

struct Layout {
    arrows: Vec<Arrow>,
    shapes: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    len: usize,
}

fn mat_mul(p: u8, a: &[u8], b: &[u8], n: usize, k: usize, m: usize) -> Vec<u8> {
    let mut out = vec![0u8; n * m];
    for i in 0..n {
        for j in 0..m {
            let mut s = 0u32;
            for l in 0..k {
                s += u32::from(a[i * k + l]) * u32::from(b[l * m + j]);
            }
            out[i * m + j] = (s % u32::from(p)) as u8;
        }
    }
    out
}

fn block(layout: &Layout, tuple: &[u8], a: usize) -> Vec<u8> {
    tuple[layout.offsets[a]..layout.offsets[a] + layout.shapes[a].0 * layout.shapes[a].1].to_vec()
}

/// Number of `GL(d)`-orbits on relation-satisfying representations of
/// dimension `d` over `F_p`, by exhaustive enumeration.
pub fn oracle_count_small(lambda: &Partition, d: &DimVector, p: u64) -> Result<u64> {
    if p != 2 && p != 3 {
        return Err(Error::FieldSize(p));
    }
    if d.lambda() != lambda {
        return Err(Error::ShapeMismatch(lambda.clone()));
    }
    let p = p as u8;
    let q = StaircaseQuiver::new(lambda);
    let mut layout = Layout { arrows: Vec::new(), shapes: Vec::new(), offsets: Vec::new(), len: 0 };
    for a in q.arrows() {
        let shape = (d.get(a.target()) as usize, d.get(a.source) as usize);
        layout.arrows.push(*a);
        layout.shapes.push(shape);
        layout.offsets.push(layout.len);
        layout.len += shape.0 * shape.1;
    }
    if layout.len > ORACLE_CAP {
        return Err(Error::CapExceeded(format!("{} matrix entries, at most {ORACLE_CAP} allowed", layout.len)));
    }
    let index: BTreeMap<Arrow, usize> = layout.arrows.iter().enumerate().map(|(k, a)| (*a, k)).collect();
    let commutes = |tuple: &[u8]| {
        q.relations().iter().all(|&r| {
            let h = |i, j| index[&Arrow::new(ArrowKind::H, Vertex::new(i, j))];
            let v = |i, j| index[&Arrow::new(ArrowKind::V, Vertex::new(i, j))];
            let (a1, b1) = (h(r.i, r.j), v(r.i - 1, r.j));
            let (a2, b2) = (v(r.i, r.j), h(r.i, r.j - 1));
            let left = mat_mul(p, &block(&layout, tuple, b1), &block(&layout, tuple, a1), layout.shapes[b1].0, layout.shapes[b1].1, layout.shapes[a1].1);
            let right = mat_mul(p, &block(&layout, tuple, b2), &block(&layout, tuple, a2), layout.shapes[b2].0, layout.shapes[b2].1, layout.shapes[a2].1);
            left == right
        })
    };
    let total = u64::from(p).pow(layout.len as u32) as usize;
    let decode = |mut code: usize| -> Vec<u8> {
        (0..layout.len)
            .map(|_| {
                let x = (code % p as usize) as u8;
                code /= p as usize;
                x
            })
            .collect()
    };
    let encode = |tuple: &[u8]| tuple.iter().rev().fold(0usize, |acc, &x| acc * p as usize + x as usize);
    let moves = generators(&q, d, p);
    let mut seen = vec![false; total];
    let mut orbits = 0;
    for start in 0..total {
        if seen[start] || !commutes(&decode(start)) {
            continue;
        }
        orbits += 1;
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(code) = stack.pop() {
            let tuple = decode(code);
            for g in &moves {
                let next = encode(&act(&layout, &tuple, g, p));
                if !seen[next] {
                    seen[next] = true;
                    stack.push(next);
                }
            }
        }
    }
    Ok(orbits)
}

/// An elementary matrix at one vertex, with its inverse.
struct Move {
    at: Vertex,
    n: usize,
    g: Vec<u8>,
    inv: Vec<u8>,
}

fn generators(q: &StaircaseQuiver, d: &DimVector, p: u8) -> Vec<Move> {
    let mut out = Vec::new();
    let unit = |n: usize| -> Vec<u8> { (0..n * n).map(|k| u8::from(k % (n + 1) == 0)).collect() };
    for &v in q.vertices() {
        let n = d.get(v) as usize;
        for i in 0..n {
            if p == 3 {
                let mut g = unit(n);
                g[i * n + i] = 2;
                out.push(Move { at: v, n, inv: g.clone(), g });
            }
            for j in 0..n {
                if i != j {
                    let mut g = unit(n);
                    g[i * n + j] = 1;
                    let mut inv = unit(n);
                    inv[i * n + j] = p - 1;
                    out.push(Move { at: v, n, g, inv });
                }
            }
        }
    }
    out
}

fn act(layout: &Layout, tuple: &[u8], m: &Move, p: u8) -> Vec<u8> {
    let mut out = tuple.to_vec();
    for (k, a) in layout.arrows.iter().enumerate() {
        let (r, c) = layout.shapes[k];
        if r * c == 0 {
            continue;
        }
        let mut blk = block(layout, tuple, k);
        if a.target() == m.at {
            blk = mat_mul(p, &m.g, &blk, m.n, m.n, c);
        }
        if a.source == m.at {
            blk = mat_mul(p, &blk, &m.inv, r, m.n, m.n);
        }
        out[layout.offsets[k]..layout.offsets[k] + r * c].copy_from_slice(&blk);
    }
    out
}

/// For a representation-finite algebra: the number of multisets of positive
/// roots summing to `d`.
pub fn krs_count(d: &DimVector) -> Result<u64> {
    let roots: Vec<Vec<i64>> = UnitForm::of(d.lambda()).positive_roots()?.into_iter().map(|r| r.values().to_vec()).collect();
    let mut memo = BTreeMap::new();
    Ok(count(&roots, 0, d.values().to_vec(), &mut memo))
}

fn count(roots: &[Vec<i64>], from: usize, rest: Vec<i64>, memo: &mut BTreeMap<(usize, Vec<i64>), u64>) -> u64 {
    if rest.iter().all(|&x| x == 0) {
        return 1;
    }
    if from == roots.len() {
        return 0;
    }
    if let Some(&c) = memo.get(&(from, rest.clone())) {
        return c;
    }
    let mut total = count(roots, from + 1, rest.clone(), memo);
    let mut cur = rest.clone();
    loop {
        for (x, r) in cur.iter_mut().zip(&roots[from]) {
            *x -= r;
        }
        if cur.iter().any(|&x| x < 0) {
            break;
        }
        total += count(roots, from + 1, cur.clone(), memo);
    }
    memo.insert((from, rest), total);
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(parts: &[usize], rows: &[Vec<i64>]) -> (Partition, DimVector) {
        let l = Partition::of(parts);
        let d = DimVector::from_rows(&l, rows).unwrap();
        (l, d)
    }

    #[test]
    fn frozen_counts() {
        let (l, d) = dv(&[2], &[vec![1, 1]]);
        assert_eq!(oracle_count_small(&l, &d, 2).unwrap(), 2);
        let (l, d) = dv(&[2, 2], &[vec![1, 1], vec![1, 1]]);
        assert_eq!(oracle_count_small(&l, &d, 2).unwrap(), 10);
        let (l, d) = dv(&[2], &[vec![2, 1]]);
        assert_eq!(oracle_count_small(&l, &d, 2).unwrap(), 2);
    }

    #[test]
    fn matches_root_multisets_on_finite_types() {
        let cases: [(&[usize], Vec<Vec<i64>>); 5] = [
            (&[3], vec![vec![1, 2, 1]]),
            (&[1, 2], vec![vec![1, 1], vec![1]]),
            (&[2, 2], vec![vec![1, 1], vec![1, 1]]),
            (&[1, 3], vec![vec![1, 2, 1], vec![1]]),
            (&[2, 2], vec![vec![1, 2], vec![1, 1]]),
        ];
        for (parts, rows) in cases {
            let (l, d) = dv(parts, &rows);
            let expected = krs_count(&d).unwrap();
            for p in [2, 3] {
                if let Ok(n) = oracle_count_small(&l, &d, p) {
                    assert_eq!(n, expected, "{l} {rows:?} over F{p}");
                }
            }
        }
    }

    #[test]
    fn rejects_large_inputs() {
        let (l, d) = dv(&[3], &[vec![3, 3, 3]]);
        assert!(matches!(oracle_count_small(&l, &d, 2), Err(Error::CapExceeded(_))));
        let (l, d) = dv(&[2], &[vec![1, 1]]);
        assert!(matches!(oracle_count_small(&l, &d, 5), Err(Error::FieldSize(5))));
    }
}
