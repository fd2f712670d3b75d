use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use super::rep::{matrix_from_json, matrix_to_json, Representation};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::partition::Partition;
use crate::quiver::{Arrow, ArrowKind, DimVector, Vertex};

/// A bigrading index `(s, t)`, both at least 1.
pub type Degree = (usize, usize);

fn degree_key((s, t): Degree) -> String {
    format!("{s},{t}")
}

fn parse_degree(key: &str) -> Result<Degree> {
    let bad = || Error::InvalidPair(format!("bad degree `{key}`"));
    let (s, t) = key.split_once(',').ok_or_else(bad)?;
    let s: usize = s.trim().parse().map_err(|_| bad())?;
    let t: usize = t.trim().parse().map_err(|_| bad())?;
    if s == 0 || t == 0 {
        return Err(bad());
    }
    Ok((s, t))
}

/// The box of the staircase quiver carrying `V_{s,t}`: row `t`, column `s`.
pub fn vertex_of((s, t): Degree) -> Vertex {
    Vertex::new(t, s)
}

pub fn degree_of(v: Vertex) -> Degree {
    (v.j, v.i)
}

/// `V = ⊕ V_{s,t}`, recorded by its dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BigradedSpace {
    dims: BTreeMap<Degree, usize>,
}

impl BigradedSpace {
    pub fn new(dims: impl IntoIterator<Item = (Degree, usize)>) -> Result<Self> {
        let mut out = BTreeMap::new();
        for ((s, t), k) in dims {
            if s == 0 || t == 0 {
                return Err(Error::InvalidPair(format!("degree ({s},{t}) must be positive")));
            }
            if k > 0 {
                out.insert((s, t), k);
            }
        }
        Ok(BigradedSpace { dims: out })
    }

    pub fn dim(&self, d: Degree) -> usize {
        self.dims.get(&d).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<Degree, usize> {
        &self.dims
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// All `(s,t)` lying weakly below some nonzero component.
    pub fn shape(&self) -> Result<BTreeSet<Degree>> {
        if self.is_zero() {
            return Err(Error::ZeroSpace);
        }
        let mut sh = BTreeSet::new();
        for &(p, q) in self.dims.keys() {
            for s in 1..=p {
                for t in 1..=q {
                    sh.insert((s, t));
                }
            }
        }
        Ok(sh)
    }

    pub fn height(&self) -> Result<usize> {
        Ok(self.shape()?.iter().map(|&(_, t)| t).max().expect("nonempty"))
    }

    /// `λ_i = #{s : (s, h - i) ∈ sh(V)}` for `0 <= i < h`.
    pub fn lambda(&self) -> Result<Partition> {
        let sh = self.shape()?;
        let h = self.height()?;
        let parts = (0..h).map(|i| sh.iter().filter(|&&(_, t)| t == h - i).count()).collect();
        Partition::new(parts)
    }

    pub fn shape_lambda(&self) -> Result<(BTreeSet<Degree>, Partition)> {
        Ok((self.shape()?, self.lambda()?))
    }

    /// `dim V` as a dimension vector on the quiver of `λ(V)`; boxes of the
    /// shape with `V_{s,t} = 0` carry 0.
    pub fn dim_vector(&self) -> Result<DimVector> {
        let lambda = self.lambda()?;
        let rows = (1..=lambda.len())
            .map(|t| (1..=lambda.row_len(t)).map(|s| self.dim((s, t)) as i64).collect())
            .collect::<Vec<Vec<i64>>>();
        DimVector::from_rows(&lambda, &rows)
    }

    pub fn from_dim_vector(d: &DimVector) -> Result<Self> {
        let lambda = d.lambda().clone();
        let q = crate::quiver::StaircaseQuiver::new(&lambda);
        Self::new(q.vertices().iter().map(|&v| (degree_of(v), d.get(v) as usize)))
    }
}

impl Serialize for BigradedSpace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let dims: BTreeMap<String, usize> = self.dims.iter().map(|(&d, &k)| (degree_key(d), k)).collect();
        serde_json::json!({ "dims": dims }).serialize(s)
    }
}

impl<'de> Deserialize<'de> for BigradedSpace {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            dims: BTreeMap<String, usize>,
        }
        let raw = Raw::deserialize(d)?;
        let mut dims = Vec::new();
        for (k, v) in raw.dims {
            dims.push((parse_degree(&k).map_err(D::Error::custom)?, v));
        }
        BigradedSpace::new(dims).map_err(D::Error::custom)
    }
}

/// A failure of a graded pair, located at a bigrading index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub square: Degree,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}): {}", self.square.0, self.square.1, self.message)
    }
}

/// Operators `φ: V_{s,t} -> V_{s-1,t}` and `ψ: V_{s,t} -> V_{s,t-1}`.
/// Missing blocks are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPair {
    pub space: BigradedSpace,
    pub phi: BTreeMap<Degree, QMatrix>,
    pub psi: BTreeMap<Degree, QMatrix>,
}

impl GradedPair {
    pub fn zero(space: BigradedSpace) -> Self {
        GradedPair { space, phi: BTreeMap::new(), psi: BTreeMap::new() }
    }

    fn block(&self, map: &BTreeMap<Degree, QMatrix>, d: Degree, target: Option<Degree>) -> QMatrix {
        let rows = target.map_or(0, |t| self.space.dim(t));
        map.get(&d).cloned().filter(|m| (m.rows, m.cols) == (rows, self.space.dim(d))).unwrap_or_else(|| QMatrix::zeros(rows, self.space.dim(d)))
    }

    pub fn phi_at(&self, (s, t): Degree) -> QMatrix {
        self.block(&self.phi, (s, t), (s > 1).then(|| (s - 1, t)))
    }

    pub fn psi_at(&self, (s, t): Degree) -> QMatrix {
        self.block(&self.psi, (s, t), (t > 1).then(|| (s, t - 1)))
    }

    /// Shape errors per block, then every non-commuting square.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let check = |out: &mut Vec<Violation>, name: &str, map: &BTreeMap<Degree, QMatrix>, lower: fn(Degree) -> Option<Degree>| {
            for (&d, m) in map {
                let rows = lower(d).map_or(0, |t| self.space.dim(t));
                let cols = self.space.dim(d);
                if (m.rows, m.cols) != (rows, cols) && !(m.data.is_empty() && m.is_zero() && rows * cols == 0) {
                    out.push(Violation {
                        square: d,
                        message: format!("{name} block is {}x{}, expected {rows}x{cols}", m.rows, m.cols),
                    });
                }
            }
        };
        check(&mut out, "phi", &self.phi, |(s, t)| (s > 1).then(|| (s - 1, t)));
        check(&mut out, "psi", &self.psi, |(s, t)| (t > 1).then(|| (s, t - 1)));
        if !out.is_empty() {
            return out;
        }
        for &(s, t) in self.space.dims().keys() {
            if s < 2 || t < 2 {
                continue;
            }
            let left = self.psi_at((s - 1, t)).mul(&self.phi_at((s, t))).expect("shapes agree");
            let right = self.phi_at((s, t - 1)).mul(&self.psi_at((s, t))).expect("shapes agree");
            if left != right {
                out.push(Violation { square: (s, t), message: "phi and psi do not commute".into() });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn to_representation(&self) -> Result<Representation> {
        if let Some(v) = self.validate().first() {
            return Err(Error::InvalidPair(v.to_string()));
        }
        let dims = self.space.dim_vector()?;
        let mut matrices = BTreeMap::new();
        for &d in self.space.dims().keys() {
            let v = vertex_of(d);
            if d.0 > 1 {
                matrices.insert(Arrow::new(ArrowKind::V, v), self.phi_at(d));
            }
            if d.1 > 1 {
                matrices.insert(Arrow::new(ArrowKind::H, v), self.psi_at(d));
            }
        }
        Representation::new(dims, matrices)
    }

    pub fn from_representation(rep: &Representation) -> Result<Self> {
        let space = BigradedSpace::from_dim_vector(rep.dims())?;
        let mut pair = GradedPair::zero(space);
        for (a, m) in rep.matrices() {
            if m.rows == 0 || m.cols == 0 {
                continue;
            }
            let d = degree_of(a.source);
            match a.kind {
                ArrowKind::V => pair.phi.insert(d, m.clone()),
                ArrowKind::H => pair.psi.insert(d, m.clone()),
            };
        }
        Ok(pair)
    }

    /// The total operators on `⊕ V_{s,t}`, in the block order of the
    /// nonzero degrees.
    pub fn total_operators(&self) -> (QMatrix, QMatrix) {
        let degrees: Vec<Degree> = self.space.dims().keys().copied().collect();
        let mut offset = BTreeMap::new();
        let mut n = 0;
        for &d in &degrees {
            offset.insert(d, n);
            n += self.space.dim(d);
        }
        let mut phi = QMatrix::zeros(n, n);
        let mut psi = QMatrix::zeros(n, n);
        for &(s, t) in &degrees {
            let c0 = offset[&(s, t)];
            let place = |target: &mut QMatrix, block: QMatrix, to: Degree| {
                if let Some(&r0) = offset.get(&to) {
                    for r in 0..block.rows {
                        for c in 0..block.cols {
                            target.set(r0 + r, c0 + c, block.get(r, c).clone());
                        }
                    }
                }
            };
            if s > 1 {
                place(&mut phi, self.phi_at((s, t)), (s - 1, t));
            }
            if t > 1 {
                place(&mut psi, self.psi_at((s, t)), (s, t - 1));
            }
        }
        (phi, psi)
    }
}

impl Serialize for GradedPair {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let enc = |m: &BTreeMap<Degree, QMatrix>| -> BTreeMap<String, Value> {
            m.iter().map(|(&d, x)| (degree_key(d), matrix_to_json(x))).collect()
        };
        let dims: BTreeMap<String, usize> = self.space.dims().iter().map(|(&d, &k)| (degree_key(d), k)).collect();
        serde_json::json!({ "dims": dims, "phi": enc(&self.phi), "psi": enc(&self.psi) }).serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedPair {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            dims: BTreeMap<String, usize>,
            #[serde(default)]
            phi: BTreeMap<String, Value>,
            #[serde(default)]
            psi: BTreeMap<String, Value>,
        }
        let raw = Raw::deserialize(d)?;
        let mut dims = Vec::new();
        for (k, v) in &raw.dims {
            dims.push((parse_degree(k).map_err(D::Error::custom)?, *v));
        }
        let space = BigradedSpace::new(dims).map_err(D::Error::custom)?;
        let dec = |m: &BTreeMap<String, Value>| -> Result<BTreeMap<Degree, QMatrix>> {
            let mut out = BTreeMap::new();
            for (k, v) in m {
                let deg = parse_degree(k)?;
                out.insert(deg, matrix_from_json(v, space.dim(deg))?);
            }
            Ok(out)
        };
        let phi = dec(&raw.phi).map_err(D::Error::custom)?;
        let psi = dec(&raw.psi).map_err(D::Error::custom)?;
        Ok(GradedPair { space, phi, psi })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> BigradedSpace {
        BigradedSpace::new([((3, 1), 1), ((1, 3), 1), ((4, 1), 1), ((2, 1), 2), ((1, 2), 2), ((2, 2), 3)]).unwrap()
    }

    fn square(phi21: i64) -> GradedPair {
        let space = BigradedSpace::new([((1, 1), 1), ((1, 2), 1), ((2, 1), 1), ((2, 2), 1)]).unwrap();
        let one = |x| QMatrix::from_i64(1, 1, &[x]);
        let mut p = GradedPair::zero(space);
        p.phi.insert((2, 2), one(1));
        p.psi.insert((2, 2), one(1));
        p.phi.insert((2, 1), one(phi21));
        p.psi.insert((1, 2), one(2));
        p
    }

    #[test]
    fn shape_and_lambda_of_example() {
        let v = example();
        let sh = v.shape().unwrap();
        let expected: BTreeSet<Degree> = [(1, 1), (2, 1), (3, 1), (4, 1), (1, 2), (2, 2), (1, 3)].into_iter().collect();
        assert_eq!(sh, expected);
        assert_eq!(v.lambda().unwrap(), Partition::of(&[1, 2, 4]));
        assert_eq!(v.total(), 10);
    }

    #[test]
    fn single_box() {
        let v = BigradedSpace::new([((1, 1), 3)]).unwrap();
        assert_eq!(v.lambda().unwrap(), Partition::of(&[1]));
        let rep = GradedPair::zero(v).to_representation().unwrap();
        assert_eq!(rep.dims().rows(), vec![vec![3]]);
        assert!(rep.quiver().arrows().is_empty());
    }

    #[test]
    fn zero_space_has_no_shape() {
        assert!(matches!(BigradedSpace::default().lambda(), Err(Error::ZeroSpace)));
    }

    #[test]
    fn example_converts_with_empty_corner() {
        let rep = GradedPair::zero(example()).to_representation().unwrap();
        assert_eq!(rep.dims().rows(), vec![vec![0, 2, 1, 1], vec![2, 3], vec![1]]);
        assert_eq!(rep.quiver().len(), 7);
    }

    #[test]
    fn commuting_square() {
        let bad = square(1);
        let v = bad.validate();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].square, (2, 2));
        let mut good = square(1);
        good.psi.insert((1, 2), QMatrix::from_i64(1, 1, &[1]));
        assert!(good.is_valid());
        assert!(square(2).is_valid());
    }

    #[test]
    fn shape_violation() {
        let mut p = GradedPair::zero(BigradedSpace::new([((1, 2), 1)]).unwrap());
        p.phi.insert((1, 2), QMatrix::from_i64(1, 1, &[2]));
        assert_eq!(p.validate()[0].square, (1, 2));
    }

    #[test]
    fn round_trip_through_representation() {
        let mut good = square(1);
        good.psi.insert((1, 2), QMatrix::from_i64(1, 1, &[1]));
        let rep = good.to_representation().unwrap();
        assert_eq!(rep.matrix(&Arrow::parse_id("b:2,2").unwrap()), &good.phi[&(2, 2)]);
        assert_eq!(rep.matrix(&Arrow::parse_id("a:2,1").unwrap()), &good.psi[&(1, 2)]);
        let back = GradedPair::from_representation(&rep).unwrap();
        assert_eq!(back, good);
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"dims":{"1,1":1,"2,1":1},"phi":{"2,1":[["3/2"]]}}"#;
        let p: GradedPair = serde_json::from_str(text).unwrap();
        assert!(p.is_valid());
        let again: GradedPair = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(p, again);
        let v: BigradedSpace = serde_json::from_str(r#"{"dims":{"2,2":1}}"#).unwrap();
        assert_eq!(v.lambda().unwrap(), Partition::of(&[2, 2]));
    }
}
