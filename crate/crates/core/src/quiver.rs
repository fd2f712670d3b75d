//! The staircase quiver of a partition with its commutativity relations, and
//! vertex-indexed integer vectors over it.

use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// A box `(i, j)` of the Young diagram: row `i` from the bottom, column `j`
/// from the left, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    pub i: usize,
    pub j: usize,
}

impl Vertex {
    pub const fn new(i: usize, j: usize) -> Self {
        Vertex { i, j }
    }

    pub fn transposed(self) -> Vertex {
        Vertex { i: self.j, j: self.i }
    }

    pub fn label(self) -> String {
        format!("{},{}", self.i, self.j)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ArrowKind {
    /// `alpha_{i,j}: (i,j) -> (i-1,j)`
    H,
    /// `beta_{i,j}: (i,j) -> (i,j-1)`
    V,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub kind: ArrowKind,
    pub source: Vertex,
}

impl Arrow {
    pub const fn new(kind: ArrowKind, source: Vertex) -> Self {
        Arrow { kind, source }
    }

    pub fn target(&self) -> Vertex {
        let Vertex { i, j } = self.source;
        match self.kind {
            ArrowKind::H => Vertex::new(i - 1, j),
            ArrowKind::V => Vertex::new(i, j - 1),
        }
    }

    /// Stable identifier: `a:i,j` for horizontal, `b:i,j` for vertical arrows.
    pub fn id(&self) -> String {
        let tag = match self.kind {
            ArrowKind::H => 'a',
            ArrowKind::V => 'b',
        };
        format!("{tag}:{},{}", self.source.i, self.source.j)
    }

    pub fn parse_id(id: &str) -> Option<Arrow> {
        let (tag, rest) = id.split_once(':')?;
        let (i, j) = rest.split_once(',')?;
        let source = Vertex::new(i.trim().parse().ok()?, j.trim().parse().ok()?);
        let kind = match tag {
            "a" => ArrowKind::H,
            "b" => ArrowKind::V,
            _ => return None,
        };
        Some(Arrow { kind, source })
    }
}

/// `Q(lambda)` together with its unit-square commutativity relations. Each
/// relation is stored by the top-right corner `(i, j)` of its square and
/// equates the two paths `(i,j) -> (i-1,j-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaircaseQuiver {
    lambda: Partition,
    vertices: Vec<Vertex>,
    offsets: Vec<usize>,
    arrows: Vec<Arrow>,
    relations: Vec<Vertex>,
}

impl StaircaseQuiver {
    pub fn new(lambda: &Partition) -> Self {
        let rows = lambda.rows();
        let mut vertices = Vec::with_capacity(lambda.size());
        let mut offsets = Vec::with_capacity(rows.len());
        let mut arrows = Vec::new();
        let mut relations = Vec::new();
        for (r, &len) in rows.iter().enumerate() {
            offsets.push(vertices.len());
            let i = r + 1;
            for j in 1..=len {
                let v = Vertex::new(i, j);
                vertices.push(v);
                if i >= 2 {
                    arrows.push(Arrow { kind: ArrowKind::H, source: v });
                }
                if j >= 2 {
                    arrows.push(Arrow { kind: ArrowKind::V, source: v });
                }
                if i >= 2 && j >= 2 {
                    relations.push(v);
                }
            }
        }
        arrows.sort();
        StaircaseQuiver {
            lambda: lambda.clone(),
            vertices,
            offsets,
            arrows,
            relations,
        }
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &[Vertex] {
        &self.relations
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.lambda.contains_box(v.i, v.j)
    }

    /// Position of `v` in the canonical (bottom-up, left-to-right) order.
    pub fn index(&self, v: Vertex) -> Option<usize> {
        if self.contains(v) {
            Some(self.offsets[v.i - 1] + v.j - 1)
        } else {
            None
        }
    }

    fn checked_index(&self, v: Vertex) -> Result<usize> {
        self.index(v).ok_or_else(|| Error::NoSuchVertex(v, self.lambda.clone()))
    }

    pub fn arrow_index(&self, arrow: &Arrow) -> Option<usize> {
        self.arrows.binary_search(arrow).ok()
    }

    fn indicator(&self, pred: impl Fn(Vertex) -> bool) -> DimVector {
        let values = self.vertices.iter().map(|&w| i64::from(pred(w))).collect();
        DimVector(IntVector { lambda: self.lambda.clone(), values })
    }

    pub fn simple_vector(&self, v: Vertex) -> Result<DimVector> {
        self.checked_index(v)?;
        Ok(self.indicator(|w| w == v))
    }

    /// Dimension vector of the indecomposable projective at `v`: the lower-left
    /// rectangle spanned by `v`.
    pub fn projective_vector(&self, v: Vertex) -> Result<DimVector> {
        self.checked_index(v)?;
        Ok(self.indicator(|w| w.i <= v.i && w.j <= v.j))
    }

    /// Dimension vector of the indecomposable injective at `v`: the part of
    /// the diagram weakly above and to the right of `v`.
    pub fn injective_vector(&self, v: Vertex) -> Result<DimVector> {
        self.checked_index(v)?;
        Ok(self.indicator(|w| w.i >= v.i && w.j >= v.j))
    }

    pub fn zero_vector(&self) -> IntVector {
        IntVector::zero(&self.lambda)
    }

    /// Graphviz rendering; relation squares appear as dotted diagonals.
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"Q{}\" {{", self.lambda);
        let _ = writeln!(s, "  node [shape=circle, fontsize=10];");
        for v in &self.vertices {
            // turned a quarter anticlockwise: column index becomes height
            let _ = writeln!(
                s,
                "  \"{}\" [label=\"{}\", pos=\"{},{}!\"];",
                v.label(),
                v.label(),
                -(v.i as i64),
                v.j
            );
        }
        for a in &self.arrows {
            let greek = match a.kind {
                ArrowKind::H => "α",
                ArrowKind::V => "β",
            };
            let _ = writeln!(
                s,
                "  \"{}\" -> \"{}\" [label=\"{}{},{}\"];",
                a.source.label(),
                a.target().label(),
                greek,
                a.source.i,
                a.source.j
            );
        }
        for r in &self.relations {
            let _ = writeln!(
                s,
                "  \"{}\" -> \"{}\" [style=dotted, arrowhead=none, constraint=false];",
                r.label(),
                Vertex::new(r.i - 1, r.j - 1).label()
            );
        }
        s.push_str("}\n");
        s
    }
}

/// Integer vector indexed by the boxes of a Young diagram, stored in the
/// canonical vertex order. Serialized as rows, bottom row first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector {
    lambda: Partition,
    values: Vec<i64>,
}

impl IntVector {
    pub fn zero(lambda: &Partition) -> Self {
        IntVector { lambda: lambda.clone(), values: vec![0; lambda.size()] }
    }

    pub fn from_values(lambda: &Partition, values: Vec<i64>) -> Result<Self> {
        if values.len() != lambda.size() {
            return Err(Error::ShapeMismatch(lambda.clone()));
        }
        Ok(IntVector { lambda: lambda.clone(), values })
    }

    pub fn from_rows(lambda: &Partition, rows: &[Vec<i64>]) -> Result<Self> {
        let expected = lambda.rows();
        if rows.len() != expected.len() || rows.iter().zip(&expected).any(|(r, &n)| r.len() != n) {
            return Err(Error::ShapeMismatch(lambda.clone()));
        }
        Ok(IntVector { lambda: lambda.clone(), values: rows.concat() })
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [i64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<i64> {
        self.values
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let mut k = 0;
        for len in self.lambda.rows() {
            out.push(self.values[k..k + len].to_vec());
            k += len;
        }
        out
    }

    fn offset(&self, v: Vertex) -> Option<usize> {
        if !self.lambda.contains_box(v.i, v.j) {
            return None;
        }
        let before: usize = (1..v.i).map(|i| self.lambda.row_len(i)).sum();
        Some(before + v.j - 1)
    }

    pub fn get(&self, v: Vertex) -> i64 {
        self.offset(v).map_or(0, |k| self.values[k])
    }

    pub fn set(&mut self, v: Vertex, value: i64) -> Result<()> {
        let k = self.offset(v).ok_or_else(|| Error::NoSuchVertex(v, self.lambda.clone()))?;
        self.values[k] = value;
        Ok(())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|&x| x >= 0)
    }

    pub fn is_sincere(&self) -> bool {
        self.values.iter().all(|&x| x > 0)
    }

    pub fn total(&self) -> i64 {
        self.values.iter().sum()
    }

    /// Relabels along `(i, j) -> (j, i)` onto the transposed partition.
    pub fn transposed(&self) -> IntVector {
        let lt = self.lambda.transpose();
        let q = StaircaseQuiver::new(&lt);
        let values = q.vertices().iter().map(|w| self.get(w.transposed())).collect();
        IntVector { lambda: lt, values }
    }

    /// Zero-extension along the placement `(i, j) -> (i + di, j + dj)`.
    pub fn extend_to(&self, target: &Partition, (di, dj): (usize, usize)) -> Result<IntVector> {
        let q = StaircaseQuiver::new(&self.lambda);
        let mut out = IntVector::zero(target);
        for (k, v) in q.vertices().iter().enumerate() {
            out.set(Vertex::new(v.i + di, v.j + dj), self.values[k])?;
        }
        Ok(out)
    }

    /// Componentwise `self >= other`.
    pub fn dominates(&self, other: &IntVector) -> bool {
        self.lambda == other.lambda && self.values.iter().zip(&other.values).all(|(a, b)| a >= b)
    }

    pub fn checked_add(&self, other: &IntVector) -> Result<IntVector> {
        if self.lambda != other.lambda {
            return Err(Error::ShapeMismatch(other.lambda.clone()));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(IntVector { lambda: self.lambda.clone(), values })
    }
}

#[derive(Serialize, Deserialize)]
struct VectorJson {
    lambda: Partition,
    rows: Vec<Vec<i64>>,
}

impl Serialize for IntVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        VectorJson { lambda: self.lambda.clone(), rows: self.rows() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = VectorJson::deserialize(d)?;
        IntVector::from_rows(&j.lambda, &j.rows).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join(" | "))
    }
}

/// A dimension vector: an [`IntVector`] with non-negative entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct DimVector(IntVector);

impl DimVector {
    pub fn new(v: IntVector) -> Result<Self> {
        if v.is_nonnegative() {
            Ok(DimVector(v))
        } else {
            Err(Error::NegativeDimension)
        }
    }

    pub fn from_rows(lambda: &Partition, rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(IntVector::from_rows(lambda, rows)?)
    }

    pub fn into_inner(self) -> IntVector {
        self.0
    }
}

impl std::ops::Deref for DimVector {
    type Target = IntVector;
    fn deref(&self) -> &IntVector {
        &self.0
    }
}

impl<'de> Deserialize<'de> for DimVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        DimVector::new(IntVector::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(q: &StaircaseQuiver, kind: ArrowKind) -> usize {
        q.arrows().iter().filter(|a| a.kind == kind).count()
    }

    #[test]
    fn example_1123() {
        let q = StaircaseQuiver::new(&Partition::of(&[1, 1, 2, 3]));
        assert_eq!(q.len(), 7);
        let ids: Vec<String> = q.arrows().iter().map(Arrow::id).collect();
        let mut expected = vec!["a:2,1", "a:3,1", "a:4,1", "a:2,2", "b:1,2", "b:1,3", "b:2,2"];
        expected.sort();
        let mut got = ids.clone();
        got.sort();
        assert_eq!(got, expected);
        assert_eq!(q.relations(), &[Vertex::new(2, 2)]);
        assert!(q.contains(Vertex::new(4, 1)) && q.contains(Vertex::new(1, 3)));
    }

    #[test]
    fn linear_and_square_quivers() {
        let q = StaircaseQuiver::new(&Partition::row(5));
        assert_eq!((q.len(), count(&q, ArrowKind::V), count(&q, ArrowKind::H)), (5, 4, 0));
        assert!(q.relations().is_empty());
        let q = StaircaseQuiver::new(&Partition::of(&[3, 3]));
        assert_eq!((q.len(), count(&q, ArrowKind::H), count(&q, ArrowKind::V)), (6, 3, 4));
        assert_eq!(q.relations(), &[Vertex::new(2, 2), Vertex::new(2, 3)]);
    }

    #[test]
    fn projective_and_injective_vectors() {
        let l = Partition::of(&[3, 3, 3]);
        let q = StaircaseQuiver::new(&l);
        let p = q.projective_vector(Vertex::new(2, 2)).unwrap();
        assert_eq!(p.rows(), vec![vec![1, 1, 0], vec![1, 1, 0], vec![0, 0, 0]]);
        let i = q.injective_vector(Vertex::new(2, 2)).unwrap();
        assert_eq!(i.rows(), vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 1]]);
        assert_eq!(q.projective_vector(Vertex::new(1, 1)).unwrap(), q.simple_vector(Vertex::new(1, 1)).unwrap());
        assert_eq!(q.injective_vector(Vertex::new(3, 3)).unwrap(), q.simple_vector(Vertex::new(3, 3)).unwrap());
        assert!(q.projective_vector(Vertex::new(4, 1)).is_err());

        let q = StaircaseQuiver::new(&Partition::of(&[1, 1, 2, 3]));
        let p = q.projective_vector(Vertex::new(4, 1)).unwrap();
        assert_eq!(p.rows(), vec![vec![1, 0, 0], vec![1, 0], vec![1], vec![1]]);

        let q = StaircaseQuiver::new(&Partition::of(&[2, 2]));
        assert_eq!(q.injective_vector(Vertex::new(1, 1)).unwrap().values(), &[1, 1, 1, 1]);
    }

    #[test]
    fn dot_export() {
        let q = StaircaseQuiver::new(&Partition::row(2));
        let dot = q.to_dot();
        assert_eq!(dot.matches(" -> ").count(), 1);
        assert_eq!(dot.matches("label=\"1,").count(), 2);

        let q = StaircaseQuiver::new(&Partition::of(&[2, 2]));
        let dot = q.to_dot();
        assert_eq!(dot.matches(" -> ").count(), 5);
        assert_eq!(dot.matches("style=dotted").count(), 1);
        assert_eq!(dot, StaircaseQuiver::new(&Partition::of(&[2, 2])).to_dot());
    }

    #[test]
    fn arrow_ids_round_trip() {
        let q = StaircaseQuiver::new(&Partition::of(&[2, 3, 3]));
        for a in q.arrows() {
            assert_eq!(Arrow::parse_id(&a.id()), Some(*a));
            assert!(q.contains(a.target()));
        }
        assert_eq!(Arrow::parse_id("c:1,1"), None);
    }

    #[test]
    fn vector_json() {
        let l = Partition::of(&[1, 3]);
        let v = IntVector::from_rows(&l, &[vec![1, -2, 3], vec![4]]).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"lambda":[1,3],"rows":[[1,-2,3],[4]]}"#);
        let back: IntVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        assert!(serde_json::from_str::<DimVector>(&s).is_err());
        assert!(serde_json::from_str::<IntVector>(r#"{"lambda":[1,3],"rows":[[1,2],[4]]}"#).is_err());
    }
}
