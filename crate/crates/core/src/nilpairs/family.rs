use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::hom::hom_dim;
use super::rep::Representation;
use crate::error::{Error, Result};
use crate::linalg::{nullspace, q, rref, QMatrix};
use crate::partition::Partition;
use crate::quiver::{Arrow, ArrowKind, DimVector, IntVector, StaircaseQuiver, Vertex};

const FAMILY_SEED: u64 = 0xfa57;
const ATTEMPTS: usize = 32;

/// A preprojective dimension vector on a tame concealed base, a marked
/// vertex on it and a new source attached to that vertex by one arrow.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDescriptor {
    pub lambda: Partition,
    pub base: Partition,
    pub rows: Vec<Vec<i64>>,
    pub anchor: (usize, usize),
    pub source: (usize, usize),
    pub derived: bool,
}

impl FamilyDescriptor {
    pub fn anchor(&self) -> Vertex {
        Vertex::new(self.anchor.0, self.anchor.1)
    }

    pub fn source(&self) -> Vertex {
        Vertex::new(self.source.0, self.source.1)
    }

    pub fn base_vector(&self) -> Result<DimVector> {
        DimVector::from_rows(&self.base, &self.rows)
    }

    /// The base vector extended by zero, with 1 at the source.
    pub fn dims(&self) -> Result<DimVector> {
        let mut v = self.base_vector()?.extend_to(&self.lambda, (0, 0))?;
        v.set(self.source(), 1)?;
        DimVector::new(v)
    }

    pub fn parameters(&self) -> Result<usize> {
        Ok(self.base_vector()?.get(self.anchor()) as usize)
    }

    fn arrow(&self) -> Arrow {
        let x = self.source();
        let kind = if x.i > self.anchor.0 { ArrowKind::H } else { ArrowKind::V };
        Arrow::new(kind, x)
    }
}

pub fn bundled_families() -> &'static [FamilyDescriptor] {
    static DATA: OnceLock<Vec<FamilyDescriptor>> = OnceLock::new();
    DATA.get_or_init(|| serde_json::from_str(include_str!("../../data/families.json")).expect("bundled families parse"))
}

pub fn family_descriptor(lambda: &Partition) -> Result<&'static FamilyDescriptor> {
    bundled_families().iter().find(|f| &f.lambda == lambda).ok_or_else(|| Error::NoDescriptor(lambda.clone()))
}

/// `d = Σ c(y) dim P(y)` with `c(y) = d(y) - d(y+(1,0)) - d(y+(0,1)) + d(y+(1,1))`.
fn projective_multiplicities(d: &IntVector) -> Vec<(Vertex, i64)> {
    let q = StaircaseQuiver::new(d.lambda());
    q.vertices()
        .iter()
        .map(|&y| {
            let at = |i, j| d.get(Vertex::new(i, j));
            (y, at(y.i, y.j) - at(y.i + 1, y.j) - at(y.i, y.j + 1) + at(y.i + 1, y.j + 1))
        })
        .filter(|&(_, c)| c != 0)
        .collect()
}

fn below(a: Vertex, b: Vertex) -> bool {
    b.i <= a.i && b.j <= a.j
}

/// `d = Σ c(y) dim I(y)` with `c(y) = d(y) - d(y-(1,0)) - d(y-(0,1)) + d(y-(1,1))`.
fn injective_multiplicities(d: &IntVector) -> Vec<(Vertex, i64)> {
    let q = StaircaseQuiver::new(d.lambda());
    q.vertices()
        .iter()
        .map(|&y| {
            let at = |i: usize, j: usize| if i == 0 || j == 0 { 0 } else { d.get(Vertex::new(i, j)) };
            (y, at(y.i, y.j) - at(y.i - 1, y.j) - at(y.i, y.j - 1) + at(y.i - 1, y.j - 1))
        })
        .filter(|&(_, c)| c != 0)
        .collect()
}

fn split(mults: Vec<(Vertex, i64)>) -> (Vec<Vertex>, Vec<Vertex>) {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for (y, c) in mults {
        let list = if c > 0 { &mut pos } else { &mut neg };
        list.extend(std::iter::repeat_n(y, c.unsigned_abs() as usize));
    }
    (pos, neg)
}

/// A brick with dimension vector `d`: the kernel of a generic map `I0 -> I1`
/// between injectives, or failing that the cokernel of a generic map
/// `P1 -> P0`. Both are read off from `d`; when that is not minimal, up to
/// two common summands are added on both sides.
/// `Err(ShapeMismatch)` if no attempt yields a brick of dimension `d`.
pub fn preprojective_module(d: &DimVector) -> Result<Representation> {
    let lambda = d.lambda().clone();
    let q = StaircaseQuiver::new(&lambda);
    let vs = q.vertices();
    let mut extras: Vec<Vec<Vertex>> = vec![Vec::new()];
    extras.extend(vs.iter().map(|&v| vec![v]));
    for a in 0..vs.len() {
        for b in a..vs.len() {
            extras.push(vec![vs[a], vs[b]]);
        }
    }
    let (i0, i1) = split(injective_multiplicities(d));
    let (p0, p1) = split(projective_multiplicities(d));
    let mut rng = ChaCha8Rng::seed_from_u64(FAMILY_SEED);
    for extra in &extras {
        for injective in [true, false] {
            let (big, small) = if injective { (&i0, &i1) } else { (&p0, &p1) };
            let big: Vec<Vertex> = big.iter().chain(extra).copied().collect();
            let small: Vec<Vertex> = small.iter().chain(extra).copied().collect();
            for _ in 0..ATTEMPTS {
                // Entry (l, k) links the summand big[l] with small[k].
                let c: Vec<Vec<i64>> = big
                    .iter()
                    .map(|&a| {
                        small
                            .iter()
                            .map(|&b| {
                                let linked = if injective { below(b, a) } else { below(a, b) };
                                if a != b && linked { rng.gen_range(-4..=4) } else { 0 }
                            })
                            .collect()
                    })
                    .collect();
                let built = if injective { kernel(&q, d, &big, &small, &c) } else { cokernel(&q, d, &big, &small, &c) };
                if let Some(rep) = built {
                    if hom_dim(&rep, &rep)? == 1 {
                        return Ok(rep);
                    }
                    break;
                }
            }
        }
    }
    Err(Error::ShapeMismatch(lambda))
}

fn kernel(quiver: &StaircaseQuiver, d: &DimVector, i0: &[Vertex], i1: &[Vertex], c: &[Vec<i64>]) -> Option<Representation> {
    // At w, I0 has basis {l : i0[l] <= w}; the map to I1 is c restricted.
    let mut frames = BTreeMap::new();
    for &w in quiver.vertices() {
        let cols: Vec<usize> = (0..i0.len()).filter(|&l| below(w, i0[l])).collect();
        let rows: Vec<usize> = (0..i1.len()).filter(|&k| below(w, i1[k])).collect();
        let map: Vec<Vec<BigRational>> = rows.iter().map(|&k| cols.iter().map(|&l| q(c[l][k])).collect()).collect();
        let basis = if rows.is_empty() {
            (0..cols.len()).map(|r| (0..cols.len()).map(|s| q(i64::from(r == s))).collect()).collect()
        } else {
            nullspace(&map, cols.len())
        };
        if basis.len() as i64 != d.get(w) {
            return None;
        }
        // Rows of `basis_t` are the kernel vectors; its right inverse gives coordinates.
        let basis_t = QMatrix::from_rows(basis.len(), cols.len(), basis).ok()?;
        let coords = right_inverse(&basis_t)?.transpose();
        frames.insert(w, (cols, basis_t.transpose(), coords));
    }
    let mut matrices = BTreeMap::new();
    for a in quiver.arrows() {
        let (s, t) = (a.source, a.target());
        let (cols_s, embed_s, _) = &frames[&s];
        let (cols_t, _, coords_t) = &frames[&t];
        let mut restrict = QMatrix::zeros(cols_t.len(), cols_s.len());
        for (r_idx, l) in cols_t.iter().enumerate() {
            let c_idx = cols_s.iter().position(|x| x == l).expect("up-sets are nested");
            restrict.set(r_idx, c_idx, q(1));
        }
        matrices.insert(*a, coords_t.mul(&restrict).ok()?.mul(embed_s).ok()?);
    }
    Representation::new(d.clone(), matrices).ok()
}

fn cokernel(quiver: &StaircaseQuiver, d: &DimVector, p0: &[Vertex], p1: &[Vertex], c: &[Vec<i64>]) -> Option<Representation> {
    // At w, P0 has basis {l : w <= p0[l]}; the cokernel is cut out by the left
    // nullspace of the image, with a section to lift back.
    let mut frames = BTreeMap::new();
    for &w in quiver.vertices() {
        let rows: Vec<usize> = (0..p0.len()).filter(|&l| below(p0[l], w)).collect();
        let cols: Vec<usize> = (0..p1.len()).filter(|&k| below(p1[k], w)).collect();
        let image_t: Vec<Vec<BigRational>> = cols.iter().map(|&k| rows.iter().map(|&l| q(c[l][k])).collect()).collect();
        let proj = if cols.is_empty() {
            (0..rows.len()).map(|r| (0..rows.len()).map(|s| q(i64::from(r == s))).collect()).collect()
        } else {
            nullspace(&image_t, rows.len())
        };
        if proj.len() as i64 != d.get(w) {
            return None;
        }
        let proj_m = QMatrix::from_rows(proj.len(), rows.len(), proj.clone()).ok()?;
        let section = right_inverse(&proj_m)?;
        frames.insert(w, (rows, proj_m, section));
    }
    let mut matrices = BTreeMap::new();
    for a in quiver.arrows() {
        let (s, t) = (a.source, a.target());
        let (rows_s, _, sec) = &frames[&s];
        let (rows_t, proj_t, _) = &frames[&t];
        let mut incl = QMatrix::zeros(rows_t.len(), rows_s.len());
        for (c_idx, l) in rows_s.iter().enumerate() {
            let r_idx = rows_t.iter().position(|x| x == l).expect("rectangles are nested");
            incl.set(r_idx, c_idx, q(1));
        }
        matrices.insert(*a, proj_t.mul(&incl).ok()?.mul(sec).ok()?);
    }
    Representation::new(d.clone(), matrices).ok()
}

/// A right inverse of a full-row-rank matrix, supported on its pivot columns.
fn right_inverse(m: &QMatrix) -> Option<QMatrix> {
    if m.rows == 0 {
        return Some(QMatrix::zeros(m.cols, 0));
    }
    let mut rows = m.to_rows();
    let pivots = rref(&mut rows);
    if pivots.len() != m.rows {
        return None;
    }
    let mut square = QMatrix::zeros(m.rows, m.rows);
    for (c, &p) in pivots.iter().enumerate() {
        for r in 0..m.rows {
            square.set(r, c, m.get(r, p).clone());
        }
    }
    let inv = square.inverse()?;
    let mut out = QMatrix::zeros(m.cols, m.rows);
    for (k, &p) in pivots.iter().enumerate() {
        for c in 0..m.rows {
            out.set(p, c, inv.get(k, c).clone());
        }
    }
    Some(out)
}

fn base_module(desc: &FamilyDescriptor) -> Result<Representation> {
    static CACHE: OnceLock<Mutex<BTreeMap<Partition, Representation>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(m) = cache.lock().expect("cache lock").get(&desc.lambda) {
        return Ok(m.clone());
    }
    let m = preprojective_module(&desc.base_vector()?)?;
    cache.lock().expect("cache lock").insert(desc.lambda.clone(), m.clone());
    Ok(m)
}

/// The member of the bundled family of `λ` at `params`: the preprojective
/// module on the base, with a one-dimensional source mapping to the marked
/// vertex by the column `params`.
pub fn two_param_family(lambda: &Partition, params: &[BigRational]) -> Result<Representation> {
    let desc = family_descriptor(lambda)?;
    let k = desc.parameters()?;
    if params.len() != k || params.iter().all(Zero::is_zero) {
        return Err(Error::BadParameters(k));
    }
    let base = base_module(desc)?;
    let dims = desc.dims()?;
    let mut matrices = BTreeMap::new();
    for (a, m) in base.matrices() {
        matrices.insert(*a, m.clone());
    }
    let column = QMatrix::from_rows(k, 1, params.iter().map(|x| vec![x.clone()]).collect())?;
    matrices.insert(desc.arrow(), column);
    Representation::new(dims, matrices)
}
