use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg::{parse_rational, QMatrix};
use crate::partition::Partition;
use crate::quiver::{Arrow, ArrowKind, DimVector, StaircaseQuiver, Vertex};

/// A representation of the staircase algebra: a vector space per box and a
/// matrix per arrow, commuting on every unit square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    quiver: StaircaseQuiver,
    dims: DimVector,
    matrices: BTreeMap<Arrow, QMatrix>,
}

impl Representation {
    /// Checks shapes and commutativity; absent arrows get zero matrices.
    pub fn new(dims: DimVector, mut matrices: BTreeMap<Arrow, QMatrix>) -> Result<Self> {
        let quiver = StaircaseQuiver::new(dims.lambda());
        for a in matrices.keys() {
            if quiver.arrow_index(a).is_none() {
                return Err(Error::Matrix(format!("no arrow {} in {}", a.id(), dims.lambda())));
            }
        }
        for a in quiver.arrows() {
            let (rows, cols) = (dims.get(a.target()) as usize, dims.get(a.source) as usize);
            let m = matrices.entry(*a).or_insert_with(|| QMatrix::zeros(rows, cols));
            if (m.rows, m.cols) != (rows, cols) {
                if m.is_zero() && m.data.is_empty() {
                    *m = QMatrix::zeros(rows, cols);
                } else {
                    return Err(Error::Matrix(format!(
                        "arrow {} needs a {rows}x{cols} matrix, got {}x{}",
                        a.id(),
                        m.rows,
                        m.cols
                    )));
                }
            }
        }
        let rep = Representation { quiver, dims, matrices };
        if let Some(v) = rep.relation_failures().first() {
            return Err(Error::Matrix(format!("square at {v} does not commute")));
        }
        Ok(rep)
    }

    pub fn zero(dims: DimVector) -> Self {
        Self::new(dims, BTreeMap::new()).expect("zero maps commute")
    }

    /// The simple representation at `v`.
    pub fn simple(lambda: &Partition, v: Vertex) -> Result<Self> {
        let q = StaircaseQuiver::new(lambda);
        Ok(Self::zero(q.simple_vector(v)?))
    }

    /// The indecomposable projective at `v`: one-dimensional on the rectangle
    /// below `v` with identity maps.
    pub fn projective(lambda: &Partition, v: Vertex) -> Result<Self> {
        let q = StaircaseQuiver::new(lambda);
        let dims = q.projective_vector(v)?;
        let mut matrices = BTreeMap::new();
        for a in q.arrows() {
            if dims.get(a.source) == 1 && dims.get(a.target()) == 1 {
                matrices.insert(*a, QMatrix::identity(1));
            }
        }
        Self::new(dims, matrices)
    }

    pub fn lambda(&self) -> &Partition {
        self.quiver.lambda()
    }

    pub fn quiver(&self) -> &StaircaseQuiver {
        &self.quiver
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    pub fn dim_at(&self, v: Vertex) -> usize {
        self.dims.get(v) as usize
    }

    pub fn matrix(&self, a: &Arrow) -> &QMatrix {
        &self.matrices[a]
    }

    pub fn matrices(&self) -> &BTreeMap<Arrow, QMatrix> {
        &self.matrices
    }

    /// Anchors of the unit squares whose two paths differ.
    pub fn relation_failures(&self) -> Vec<Vertex> {
        let mut bad = Vec::new();
        for &r in self.quiver.relations() {
            let h = |i, j| Arrow::new(ArrowKind::H, Vertex::new(i, j));
            let v = |i, j| Arrow::new(ArrowKind::V, Vertex::new(i, j));
            let left = self.matrices[&v(r.i - 1, r.j)].mul(&self.matrices[&h(r.i, r.j)]);
            let right = self.matrices[&h(r.i, r.j - 1)].mul(&self.matrices[&v(r.i, r.j)]);
            if left != right {
                bad.push(r);
            }
        }
        bad
    }

    /// The composed map along any path from `from` down to `to`; all such
    /// paths agree.
    pub fn path_map(&self, from: Vertex, to: Vertex) -> QMatrix {
        assert!(to.i <= from.i && to.j <= from.j);
        let mut m = QMatrix::identity(self.dim_at(from));
        let mut cur = from;
        while cur.j > to.j {
            let a = Arrow::new(ArrowKind::V, cur);
            m = self.matrices[&a].mul(&m).expect("shapes agree");
            cur = a.target();
        }
        while cur.i > to.i {
            let a = Arrow::new(ArrowKind::H, cur);
            m = self.matrices[&a].mul(&m).expect("shapes agree");
            cur = a.target();
        }
        m
    }

    /// Transport along invertible matrices `g_v`: every `M_a` becomes
    /// `g_t M_a g_s^{-1}`.
    pub fn base_change(&self, g: &BTreeMap<Vertex, QMatrix>) -> Result<Self> {
        let mut inverses = BTreeMap::new();
        for (v, m) in g {
            inverses.insert(*v, m.inverse().ok_or_else(|| Error::Matrix(format!("singular base change at {v}")))?);
        }
        let mut matrices = BTreeMap::new();
        for (a, m) in &self.matrices {
            let left = g.get(&a.target()).cloned().unwrap_or_else(|| QMatrix::identity(m.rows));
            let right = inverses.get(&a.source).cloned().unwrap_or_else(|| QMatrix::identity(m.cols));
            matrices.insert(*a, left.mul(m)?.mul(&right)?);
        }
        Self::new(self.dims.clone(), matrices)
    }
}

pub(crate) fn matrix_to_json(m: &QMatrix) -> Value {
    Value::Array(
        (0..m.rows)
            .map(|r| Value::Array(m.row(r).iter().map(|x| Value::String(rational_string(x))).collect()))
            .collect(),
    )
}

pub(crate) fn rational_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Reads a row-major matrix of rationals; entries may be strings `"p/q"` or
/// integers. The column count of an empty matrix is taken from `cols`.
pub(crate) fn matrix_from_json(v: &Value, cols: usize) -> Result<QMatrix> {
    let rows = v.as_array().ok_or_else(|| Error::Matrix("matrix must be an array of rows".into()))?;
    if rows.is_empty() {
        return Ok(QMatrix::zeros(0, cols));
    }
    let mut entries = Vec::new();
    for row in rows {
        let row = row.as_array().ok_or_else(|| Error::Matrix("matrix row must be an array".into()))?;
        let mut out = Vec::new();
        for x in row {
            out.push(match x {
                Value::String(s) => parse_rational(s)?,
                Value::Number(n) if n.is_i64() => crate::linalg::q(n.as_i64().expect("checked")),
                other => return Err(Error::Matrix(format!("bad entry {other}"))),
            });
        }
        entries.push(out);
    }
    let c = entries[0].len();
    QMatrix::from_rows(entries.len(), c, entries)
}

#[derive(Serialize, Deserialize)]
struct RepJson {
    lambda: Partition,
    rows: Vec<Vec<i64>>,
    #[serde(default)]
    matrices: BTreeMap<String, Value>,
}

impl Serialize for Representation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let matrices = self
            .matrices
            .iter()
            .filter(|(_, m)| m.rows > 0 && m.cols > 0)
            .map(|(a, m)| (a.id(), matrix_to_json(m)))
            .collect();
        RepJson { lambda: self.lambda().clone(), rows: self.dims.rows(), matrices }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Representation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = RepJson::deserialize(d)?;
        let dims = DimVector::from_rows(&j.lambda, &j.rows).map_err(D::Error::custom)?;
        let mut matrices = BTreeMap::new();
        for (id, v) in &j.matrices {
            let a = Arrow::parse_id(id).ok_or_else(|| D::Error::custom(format!("bad arrow id `{id}`")))?;
            let cols = dims.get(a.source).max(0) as usize;
            matrices.insert(a, matrix_from_json(v, cols).map_err(D::Error::custom)?);
        }
        Representation::new(dims, matrices).map_err(D::Error::custom)
    }
}

/// Block-diagonal direct sum.
pub fn direct_sum(a: &Representation, b: &Representation) -> Result<Representation> {
    if a.lambda() != b.lambda() {
        return Err(Error::DifferentPartitions);
    }
    let dims = DimVector::new(a.dims().checked_add(b.dims())?)?;
    let mut matrices = BTreeMap::new();
    for (arrow, ma) in a.matrices() {
        let mb = b.matrix(arrow);
        let mut m = QMatrix::zeros(ma.rows + mb.rows, ma.cols + mb.cols);
        for r in 0..ma.rows {
            for c in 0..ma.cols {
                m.set(r, c, ma.get(r, c).clone());
            }
        }
        for r in 0..mb.rows {
            for c in 0..mb.cols {
                m.set(ma.rows + r, ma.cols + c, mb.get(r, c).clone());
            }
        }
        matrices.insert(*arrow, m);
    }
    Representation::new(dims, matrices)
}
