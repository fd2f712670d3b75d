use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::rep::Representation;
use crate::error::{Error, Result};
use crate::linalg::{lifted_nullspace, nullspace, rref, Fp, QMatrix};
use crate::quiver::{Arrow, ArrowKind, Vertex};

/// Default seed of the randomized isomorphism test.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// A generator of a representation: a vector at a vertex outside the images
/// of the incoming arrows.
#[derive(Debug, Clone)]
struct Generator {
    at: Vertex,
    vector: Vec<BigRational>,
}

fn column(m: &QMatrix, c: usize) -> Vec<BigRational> {
    (0..m.rows).map(|r| m.get(r, c).clone()).collect()
}

fn generators(m: &Representation) -> Vec<Generator> {
    let mut out = Vec::new();
    for &v in m.quiver().vertices() {
        let n = m.dim_at(v);
        if n == 0 {
            continue;
        }
        let mut spanning: Vec<Vec<BigRational>> = Vec::new();
        for a in [Arrow::new(ArrowKind::H, Vertex::new(v.i + 1, v.j)), Arrow::new(ArrowKind::V, Vertex::new(v.i, v.j + 1))] {
            if m.quiver().arrow_index(&a).is_some() {
                let mat = m.matrix(&a);
                spanning.extend((0..mat.cols).map(|c| column(mat, c)));
            }
        }
        let k = spanning.len();
        for e in 0..n {
            let mut unit = vec![BigRational::zero(); n];
            unit[e] = BigRational::from_integer(1.into());
            spanning.push(unit);
        }
        // Columns of [image | I]; pivots among the identity part pick a complement.
        let mut rows: Vec<Vec<BigRational>> = (0..n).map(|r| spanning.iter().map(|c| c[r].clone()).collect()).collect();
        for p in rref(&mut rows) {
            if p >= k {
                let mut vector = vec![BigRational::zero(); n];
                vector[p - k] = BigRational::from_integer(1.into());
                out.push(Generator { at: v, vector });
            }
        }
    }
    out
}

fn below(a: Vertex, b: Vertex) -> bool {
    b.i <= a.i && b.j <= a.j
}

/// `Hom(M, N)` parametrized by the images of the generators of `M`.
struct HomSystem {
    gens: Vec<Generator>,
    offsets: Vec<usize>,
    unknowns: usize,
    equations: Vec<Vec<BigRational>>,
}

fn hom_system(m: &Representation, n: &Representation) -> Result<HomSystem> {
    if m.lambda() != n.lambda() {
        return Err(Error::DifferentPartitions);
    }
    let gens = generators(m);
    let mut offsets = Vec::new();
    let mut unknowns = 0;
    for g in &gens {
        offsets.push(unknowns);
        unknowns += n.dim_at(g.at);
    }
    let mut equations = Vec::new();
    for &w in m.quiver().vertices() {
        let here: Vec<usize> = (0..gens.len()).filter(|&k| below(gens[k].at, w)).collect();
        if here.is_empty() {
            continue;
        }
        let images: Vec<Vec<BigRational>> = here.iter().map(|&k| m.path_map(gens[k].at, w).mul_vec(&gens[k].vector)).collect();
        let mw = m.dim_at(w);
        let a: Vec<Vec<BigRational>> = (0..mw).map(|r| images.iter().map(|c| c[r].clone()).collect()).collect();
        let deps = if mw == 0 {
            (0..here.len())
                .map(|k| (0..here.len()).map(|l| BigRational::from_integer(i64::from(k == l).into())).collect())
                .collect()
        } else {
            nullspace(&a, here.len())
        };
        let nw = n.dim_at(w);
        if nw == 0 {
            continue;
        }
        let paths: Vec<QMatrix> = here.iter().map(|&k| n.path_map(gens[k].at, w)).collect();
        for c in deps {
            for r in 0..nw {
                let mut eq = vec![BigRational::zero(); unknowns];
                for (idx, &k) in here.iter().enumerate() {
                    if c[idx].is_zero() {
                        continue;
                    }
                    for col in 0..paths[idx].cols {
                        let x = paths[idx].get(r, col);
                        if !x.is_zero() {
                            eq[offsets[k] + col] += &c[idx] * x;
                        }
                    }
                }
                if eq.iter().any(|x| !x.is_zero()) {
                    equations.push(eq);
                }
            }
        }
    }
    Ok(HomSystem { gens, offsets, unknowns, equations })
}

/// `dim Hom(M, N)`: images of the generators of `M` subject to every linear
/// dependency among their path images.
pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    let sys = hom_system(m, n)?;
    Ok(lifted_nullspace(&sys.equations, sys.unknowns).len())
}

/// A basis of `Hom(M, N)`, each element given by its matrix at every vertex.
pub fn hom_basis(m: &Representation, n: &Representation) -> Result<Vec<BTreeMap<Vertex, QMatrix>>> {
    let sys = hom_system(m, n)?;
    let solutions = lifted_nullspace(&sys.equations, sys.unknowns);
    // At each vertex, a basis of M_w chosen among the generator path images.
    let mut frames = BTreeMap::new();
    for &w in m.quiver().vertices() {
        let mw = m.dim_at(w);
        let here: Vec<usize> = (0..sys.gens.len()).filter(|&k| below(sys.gens[k].at, w)).collect();
        let images: Vec<Vec<BigRational>> = here.iter().map(|&k| m.path_map(sys.gens[k].at, w).mul_vec(&sys.gens[k].vector)).collect();
        let mut rows: Vec<Vec<BigRational>> = (0..mw).map(|r| images.iter().map(|c| c[r].clone()).collect()).collect();
        let pivots = if mw == 0 { Vec::new() } else { rref(&mut rows) };
        if pivots.len() != mw {
            return Err(Error::Matrix("generators do not span".into()));
        }
        let chosen: Vec<usize> = pivots.iter().map(|&p| here[p]).collect();
        let mut basis = QMatrix::zeros(mw, mw);
        for (c, &p) in pivots.iter().enumerate() {
            for (r, x) in images[p].iter().enumerate().take(mw) {
                basis.set(r, c, x.clone());
            }
        }
        let inverse = basis.inverse().expect("pivot columns are independent");
        frames.insert(w, (chosen, inverse));
    }
    let mut out = Vec::new();
    for sol in solutions {
        let mut f = BTreeMap::new();
        for &w in m.quiver().vertices() {
            let (chosen, inverse) = &frames[&w];
            let nw = n.dim_at(w);
            let mut img = QMatrix::zeros(nw, chosen.len());
            for (c, &k) in chosen.iter().enumerate() {
                let at = sys.gens[k].at;
                let y: Vec<BigRational> = sol[sys.offsets[k]..sys.offsets[k] + n.dim_at(at)].to_vec();
                let col = n.path_map(at, w).mul_vec(&y);
                for (r, x) in col.into_iter().enumerate() {
                    img.set(r, c, x);
                }
            }
            f.insert(w, img.mul(inverse)?);
        }
        out.push(f);
    }
    Ok(out)
}

pub fn is_isomorphic(m: &Representation, n: &Representation, trials: usize) -> Result<bool> {
    is_isomorphic_seeded(m, n, trials, DEFAULT_SEED)
}

/// Samples random intertwiners over `F_p`, `p = 2^61 - 1`, and looks for one
/// that is invertible at every vertex. A `true` answer is certain.
pub fn is_isomorphic_seeded(m: &Representation, n: &Representation, trials: usize, seed: u64) -> Result<bool> {
    if m.lambda() != n.lambda() {
        return Err(Error::DifferentPartitions);
    }
    if m.dims() != n.dims() {
        return Ok(false);
    }
    let e = hom_dim(m, m)?;
    if hom_dim(n, n)? != e || hom_dim(m, n)? != e {
        return Ok(false);
    }
    let basis = hom_basis(m, n)?;
    let mut reduced = Vec::new();
    for f in &basis {
        let mut g = BTreeMap::new();
        for (v, mat) in f {
            let Some(data) = Fp::reduce_all(&mat.data) else { return Ok(false) };
            g.insert(*v, (mat.rows, data));
        }
        reduced.push(g);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let coeffs: Vec<u64> = (0..reduced.len()).map(|_| rng.gen_range(0..Fp::P)).collect();
        let invertible = m.quiver().vertices().iter().all(|v| {
            let size = m.dim_at(*v);
            if size == 0 {
                return true;
            }
            let mut sum = vec![0u64; size * size];
            for (c, g) in coeffs.iter().zip(&reduced) {
                for (acc, x) in sum.iter_mut().zip(&g[v].1) {
                    *acc = Fp::add(*acc, Fp::mul(*c, *x));
                }
            }
            let rows: Vec<Vec<u64>> = sum.chunks(size).map(<[u64]>::to_vec).collect();
            Fp::is_invertible(&rows)
        });
        if invertible {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank;
    use crate::partition::Partition;
    use crate::quiver::DimVector;

    /// Solves the full intertwiner system `f_t M_a = N_a f_s`.
    fn naive_hom_dim(m: &Representation, n: &Representation) -> usize {
        let q = m.quiver();
        let mut offset = BTreeMap::new();
        let mut unknowns = 0;
        for &v in q.vertices() {
            offset.insert(v, unknowns);
            unknowns += m.dim_at(v) * n.dim_at(v);
        }
        // f_v is n_v x m_v, entry (r, c) at offset + r * m_v + c.
        let mut eqs = Vec::new();
        for a in q.arrows() {
            let (s, t) = (a.source, a.target());
            let (ma, na) = (m.matrix(a), n.matrix(a));
            for r in 0..n.dim_at(t) {
                for c in 0..m.dim_at(s) {
                    let mut eq = vec![BigRational::zero(); unknowns];
                    for k in 0..m.dim_at(t) {
                        eq[offset[&t] + r * m.dim_at(t) + k] += ma.get(k, c);
                    }
                    for k in 0..n.dim_at(s) {
                        eq[offset[&s] + k * m.dim_at(s) + c] -= na.get(r, k);
                    }
                    eqs.push(eq);
                }
            }
        }
        unknowns - rank(&eqs)
    }

    fn random_rep(lambda: &Partition, rows: &[Vec<i64>], seed: u64) -> Representation {
        let dims = DimVector::from_rows(lambda, rows).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = crate::quiver::StaircaseQuiver::new(lambda);
        loop {
            let mut mats = BTreeMap::new();
            for a in q.arrows() {
                let (r, c) = (dims.get(a.target()) as usize, dims.get(a.source) as usize);
                let data: Vec<i64> = (0..r * c).map(|_| rng.gen_range(-1..=1)).collect();
                mats.insert(*a, QMatrix::from_i64(r, c, &data));
            }
            if let Ok(rep) = Representation::new(dims.clone(), mats) {
                return rep;
            }
        }
    }

    fn v(i: usize, j: usize) -> Vertex {
        Vertex::new(i, j)
    }

    #[test]
    fn simples() {
        let l = Partition::of(&[2, 2]);
        for a in [v(1, 1), v(2, 2)] {
            for b in [v(1, 1), v(1, 2), v(2, 2)] {
                let d = hom_dim(&Representation::simple(&l, a).unwrap(), &Representation::simple(&l, b).unwrap()).unwrap();
                assert_eq!(d, usize::from(a == b));
            }
        }
    }

    #[test]
    fn projectives_represent_evaluation() {
        let l = Partition::of(&[2, 2]);
        for seed in 0..6 {
            let m = random_rep(&l, &[vec![2, 1], vec![1, 2]], seed);
            for &w in m.quiver().vertices() {
                let p = Representation::projective(&l, w).unwrap();
                assert_eq!(hom_dim(&p, &m).unwrap(), m.dim_at(w));
            }
        }
    }

    #[test]
    fn agrees_with_naive_system() {
        let cases: [(&[usize], Vec<Vec<i64>>); 3] = [
            (&[2, 2], vec![vec![2, 1], vec![1, 2]]),
            (&[1, 2, 3], vec![vec![1, 2, 1], vec![2, 1], vec![1]]),
            (&[3], vec![vec![2, 2, 1]]),
        ];
        for (parts, rows) in cases {
            let l = Partition::of(parts);
            for seed in 0..4 {
                let a = random_rep(&l, &rows, seed);
                let b = random_rep(&l, &rows, seed + 100);
                assert_eq!(hom_dim(&a, &b).unwrap(), naive_hom_dim(&a, &b));
                assert_eq!(hom_dim(&a, &a).unwrap(), naive_hom_dim(&a, &a));
                for f in hom_basis(&a, &b).unwrap() {
                    for arrow in a.quiver().arrows() {
                        let lhs = f[&arrow.target()].mul(a.matrix(arrow)).unwrap();
                        let rhs = b.matrix(arrow).mul(&f[&arrow.source]).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn identity_versus_zero_square() {
        let l = Partition::of(&[2, 2]);
        let ones = DimVector::from_rows(&l, &[vec![1, 1], vec![1, 1]]).unwrap();
        let q = crate::quiver::StaircaseQuiver::new(&l);
        let id: BTreeMap<_, _> = q.arrows().iter().map(|a| (*a, QMatrix::identity(1))).collect();
        let m = Representation::new(ones.clone(), id).unwrap();
        let z = Representation::zero(ones);
        assert_eq!(hom_dim(&m, &m).unwrap(), 1);
        assert_eq!(hom_dim(&z, &z).unwrap(), 4);
        assert!(!is_isomorphic(&m, &z, 16).unwrap());
        assert!(is_isomorphic(&m, &m, 16).unwrap());
    }

    #[test]
    fn base_change_is_isomorphic() {
        let l = Partition::of(&[1, 2, 3]);
        let m = random_rep(&l, &[vec![2, 2, 1], vec![2, 1], vec![1]], 7);
        let mut g = BTreeMap::new();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for &w in m.quiver().vertices() {
            let k = m.dim_at(w);
            loop {
                let data: Vec<i64> = (0..k * k).map(|_| rng.gen_range(-3..=3)).collect();
                let mat = QMatrix::from_i64(k, k, &data);
                if mat.inverse().is_some() {
                    g.insert(w, mat);
                    break;
                }
            }
        }
        let n = m.base_change(&g).unwrap();
        assert!(is_isomorphic(&m, &n, 16).unwrap());
        let other = random_rep(&l, &[vec![2, 2, 1], vec![2, 1], vec![1]], 8);
        let iso = is_isomorphic(&m, &other, 16).unwrap();
        assert_eq!(iso, is_isomorphic(&other, &m, 16).unwrap());
    }
}
