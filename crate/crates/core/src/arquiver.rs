//! Knitting of the preprojective Auslander-Reiten component at the level of
//! dimension vectors, and the orbit quiver of the result.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::classify::{classify, OrbitType, RepType};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::quadform::UnitForm;
use crate::quiver::{DimVector, IntVector, StaircaseQuiver, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ARVertex {
    pub id: usize,
    pub dim: DimVector,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub projective: Option<Vertex>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub injective: Option<Vertex>,
    /// Id of the projective starting this vertex's τ-orbit.
    pub tau_orbit: usize,
    /// Number of inverse translations separating the vertex from its projective.
    pub slice: usize,
    /// Id of `τ` of this vertex, if not projective.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ARArrow {
    pub source: usize,
    pub target: usize,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ARQuiver {
    pub lambda: Partition,
    pub vertices: Vec<ARVertex>,
    pub arrows: Vec<ARArrow>,
    pub complete: bool,
}

pub fn default_slice_limit(lambda: &Partition) -> usize {
    10 * lambda.size()
}

/// Knits forward from the simple projective `P(1,1)`.
///
/// A projective is inserted as soon as a vertex with the dimension vector of
/// its radical exists. Vertices whose dimension vector is that of an
/// indecomposable injective are not translated. Knitting stops translating at
/// `slice_limit` slices, and below any vertex whose mesh could not be
/// completed; the result is then flagged incomplete.
pub fn knit(lambda: &Partition, slice_limit: usize) -> Result<ARQuiver> {
    let slice_limit = slice_limit.max(1);
    let quiver = StaircaseQuiver::new(lambda);
    let mut radicals: Vec<(Vertex, IntVector)> = Vec::new();
    let mut injectives: HashMap<Vec<i64>, Vertex> = HashMap::new();
    for &v in quiver.vertices() {
        let mut r = quiver.projective_vector(v)?.into_inner();
        r.set(v, 0)?;
        radicals.push((v, r));
        injectives.insert(quiver.injective_vector(v)?.values().to_vec(), v);
    }

    let mut k = Knitter {
        lambda: lambda.clone(),
        vertices: Vec::new(),
        out: Vec::new(),
        inn: Vec::new(),
        pending: radicals,
        injectives,
        truncated: Vec::new(),
        any_truncated: false,
    };
    let corner = Vertex::new(1, 1);
    let p11 = quiver.projective_vector(corner)?;
    k.pending.retain(|(v, _)| *v != corner);
    k.create(p11.into_inner(), Some(corner), None, 0)?;

    let mut queue: VecDeque<usize> = (0..k.vertices.len()).collect();
    let mut queued = k.vertices.len();
    while let Some(x) = queue.pop_front() {
        let blocked = k.inn[x].iter().any(|(w, _)| k.truncated[*w]);
        if k.vertices[x].injective.is_none() {
            if blocked || k.vertices[x].slice + 1 >= slice_limit {
                k.truncated[x] = true;
                k.any_truncated = true;
            } else if let Some(dim) = k.translate(x)? {
                let z = k.create(dim, None, Some(x), k.vertices[x].slice + 1)?;
                let succ = k.out[x].clone();
                for (e, m) in succ {
                    k.link(e, z, m);
                }
            } else {
                k.truncated[x] = true;
                k.any_truncated = true;
            }
        }
        while queued < k.vertices.len() {
            queue.push_back(queued);
            queued += 1;
        }
    }

    let complete = !k.any_truncated && k.pending.is_empty();
    let mut arrows = Vec::new();
    for (s, outs) in k.out.iter().enumerate() {
        for &(t, m) in outs {
            arrows.push(ARArrow { source: s, target: t, multiplicity: m });
        }
    }
    arrows.sort_by_key(|a| (a.source, a.target));
    Ok(ARQuiver { lambda: k.lambda, vertices: k.vertices, arrows, complete })
}

struct Knitter {
    lambda: Partition,
    vertices: Vec<ARVertex>,
    out: Vec<Vec<(usize, u32)>>,
    inn: Vec<Vec<(usize, u32)>>,
    pending: Vec<(Vertex, IntVector)>,
    injectives: HashMap<Vec<i64>, Vertex>,
    truncated: Vec<bool>,
    any_truncated: bool,
}

impl Knitter {
    fn link(&mut self, s: usize, t: usize, m: u32) {
        self.out[s].push((t, m));
        self.inn[t].push((s, m));
    }

    fn create(&mut self, dim: IntVector, projective: Option<Vertex>, tau: Option<usize>, slice: usize) -> Result<usize> {
        let id = self.vertices.len();
        let injective = self.injectives.get(dim.values()).copied();
        let tau_orbit = match tau {
            Some(t) => self.vertices[t].tau_orbit,
            None => id,
        };
        self.vertices.push(ARVertex { id, dim: DimVector::new(dim.clone())?, projective, injective, tau_orbit, slice, tau });
        self.out.push(Vec::new());
        self.inn.push(Vec::new());
        self.truncated.push(false);
        let ready: Vec<Vertex> =
            self.pending.iter().filter(|(_, r)| r.values() == dim.values()).map(|(v, _)| *v).collect();
        self.pending.retain(|(v, _)| !ready.contains(v));
        let q = StaircaseQuiver::new(&self.lambda);
        for v in ready {
            let p = self.create(q.projective_vector(v)?.into_inner(), Some(v), None, 0)?;
            self.link(id, p, 1);
        }
        Ok(id)
    }

    /// `dim τ⁻X = sum of successors - dim X`; `None` on arithmetic overflow.
    fn translate(&self, x: usize) -> Result<Option<IntVector>> {
        let mut values: Vec<i64> = self.vertices[x].dim.values().iter().map(|v| -v).collect();
        for &(e, m) in &self.out[x] {
            for (acc, d) in values.iter_mut().zip(self.vertices[e].dim.values()) {
                let Some(add) = d.checked_mul(i64::from(m)).and_then(|a| acc.checked_add(a)) else {
                    return Ok(None);
                };
                *acc = add;
            }
        }
        if values.iter().any(|&v| v < 0) || values.iter().all(|&v| v == 0) {
            let shown: IntVector = IntVector::from_values(&self.lambda, values.clone())?;
            return Err(Error::MeshBreach(format!("translate of {} gives {shown}", self.vertices[x].dim)));
        }
        Ok(Some(IntVector::from_values(&self.lambda, values)?))
    }
}

impl ARQuiver {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn projective_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.projective.is_some()).count()
    }

    pub fn has_all_projectives(&self) -> bool {
        self.projective_count() == self.lambda.size()
    }

    pub fn dims(&self) -> Vec<DimVector> {
        self.vertices.iter().map(|v| v.dim.clone()).collect()
    }

    pub fn has_sincere_preprojective(&self) -> bool {
        self.vertices.iter().any(|v| v.dim.is_sincere())
    }

    /// Re-checks `dim X + dim τ⁻X = sum of the middle terms` at every
    /// translated vertex.
    pub fn meshes_hold(&self) -> bool {
        let mut middle: BTreeMap<usize, Vec<i64>> = BTreeMap::new();
        for a in &self.arrows {
            if self.vertices[a.target].tau.is_some() {
                let acc = middle.entry(a.target).or_insert_with(|| vec![0; self.lambda.size()]);
                for (x, d) in acc.iter_mut().zip(self.vertices[a.source].dim.values()) {
                    *x += d * i64::from(a.multiplicity);
                }
            }
        }
        self.vertices.iter().filter_map(|z| z.tau.map(|x| (z, x))).all(|(z, x)| {
            let lhs: Vec<i64> =
                z.dim.values().iter().zip(self.vertices[x].dim.values()).map(|(a, b)| a + b).collect();
            middle.get(&z.id).is_some_and(|m| *m == lhs)
        })
    }

    /// Graphviz rendering; dashed edges join `τ⁻X` to `X`.
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"AR{}\" {{", self.lambda);
        let _ = writeln!(s, "  rankdir=LR;\n  node [shape=box, fontsize=9];");
        for v in &self.vertices {
            let label: Vec<String> = v
                .dim
                .rows()
                .iter()
                .rev()
                .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
                .collect();
            let mut attrs = format!("label=\"{}\"", label.join("\\n"));
            if v.projective.is_some() {
                attrs.push_str(", style=bold");
            }
            if v.injective.is_some() {
                attrs.push_str(", peripheries=2");
            }
            let _ = writeln!(s, "  v{} [{attrs}];", v.id);
        }
        for a in &self.arrows {
            let extra = if a.multiplicity > 1 { format!(" [label=\"{}\"]", a.multiplicity) } else { String::new() };
            let _ = writeln!(s, "  v{} -> v{}{extra};", a.source, a.target);
        }
        for v in &self.vertices {
            if let Some(t) = v.tau {
                let _ = writeln!(s, "  v{} -> v{} [style=dashed, arrowhead=none, constraint=false];", v.id, t);
            }
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitQuiver {
    /// One node per τ-orbit, named by the projective that starts it.
    pub nodes: Vec<Vertex>,
    /// Undirected edges `(a, b, multiplicity)` with `a < b`: the largest number
    /// of arrows between members of the two orbits, in either direction.
    pub edges: Vec<(usize, usize, u32)>,
    pub recognized_type: OrbitType,
}

pub fn orbit_quiver(ar: &ARQuiver) -> Result<OrbitQuiver> {
    if !ar.has_all_projectives() {
        return Err(Error::PartialComponent);
    }
    let mut starts: Vec<(Vertex, usize)> =
        ar.vertices.iter().filter_map(|v| v.projective.map(|p| (p, v.id))).collect();
    starts.sort();
    let index: HashMap<usize, usize> = starts.iter().enumerate().map(|(k, &(_, id))| (id, k)).collect();
    let mut mult: BTreeMap<(usize, usize), u32> = BTreeMap::new();
    for a in &ar.arrows {
        let x = index[&ar.vertices[a.source].tau_orbit];
        let y = index[&ar.vertices[a.target].tau_orbit];
        let key = (x.min(y), x.max(y));
        let e = mult.entry(key).or_insert(0);
        *e = (*e).max(a.multiplicity);
    }
    let edges: Vec<(usize, usize, u32)> = mult.into_iter().map(|((a, b), m)| (a, b, m)).collect();
    let recognized_type = OrbitType::recognize(starts.len(), &edges);
    Ok(OrbitQuiver { nodes: starts.into_iter().map(|(p, _)| p).collect(), edges, recognized_type })
}

impl OrbitQuiver {
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph \"orbits\" {\n  node [shape=circle, fontsize=10];\n");
        for (k, v) in self.nodes.iter().enumerate() {
            let _ = writeln!(s, "  o{k} [label=\"[P{}]\"];", v.label());
        }
        for &(a, b, m) in &self.edges {
            let extra = if m > 1 { format!(" [label=\"{m}\"]") } else { String::new() };
            let _ = writeln!(s, "  o{a} -- o{b}{extra};");
        }
        let _ = writeln!(s, "  label=\"{}\";", self.recognized_type);
        s.push_str("}\n");
        s
    }
}

/// Number of indecomposables of a representation-finite staircase algebra,
/// counted as positive roots of its Tits form.
pub fn count_indecomposables(lambda: &Partition) -> Result<usize> {
    if classify(lambda) != RepType::Finite {
        return Err(Error::WrongType(lambda.clone(), "finite"));
    }
    Ok(UnitForm::of(lambda).positive_roots()?.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::of(parts)
    }

    fn sorted_dims(ar: &ARQuiver) -> Vec<Vec<i64>> {
        let mut d: Vec<Vec<i64>> = ar.vertices.iter().map(|v| v.dim.values().to_vec()).collect();
        d.sort();
        d
    }

    #[test]
    fn linear_quivers() {
        let ar = knit(&p(&[4]), 40).unwrap();
        assert!(ar.complete);
        assert_eq!(ar.len(), 10);
        assert!(ar.meshes_hold());
        assert_eq!(ar.projective_count(), 4);
    }

    #[test]
    fn square_is_complete_with_eleven() {
        let ar = knit(&p(&[2, 2]), 40).unwrap();
        assert!(ar.complete);
        assert_eq!(ar.len(), 11);
        assert!(ar.has_sincere_preprojective());
        let mut roots: Vec<Vec<i64>> =
            UnitForm::of(&p(&[2, 2])).positive_roots().unwrap().iter().map(|r| r.values().to_vec()).collect();
        roots.sort();
        assert_eq!(sorted_dims(&ar), roots);
    }

    #[test]
    fn tame_concealed_component_is_infinite() {
        let l = p(&[3, 6]);
        let ar = knit(&l, 40).unwrap();
        assert!(!ar.complete);
        assert!(ar.has_all_projectives());
        assert!(ar.vertices.iter().all(|v| v.injective.is_none()));
        assert!(ar.meshes_hold());
        let oq = orbit_quiver(&ar).unwrap();
        assert_eq!(oq.recognized_type, OrbitType::E8Tilde);
    }

    #[test]
    fn orbit_quivers_of_finite_cases() {
        let oq = orbit_quiver(&knit(&p(&[1, 2, 3]), 60).unwrap()).unwrap();
        assert_eq!(oq.recognized_type, OrbitType::E6);
        let oq = orbit_quiver(&knit(&p(&[2, 6]), 80).unwrap()).unwrap();
        assert_eq!(oq.recognized_type, OrbitType::D(8));
    }

    #[test]
    fn partial_component_refused() {
        let ar = knit(&p(&[3, 3, 3]), 30).unwrap();
        assert!(!ar.has_all_projectives());
        assert_eq!(orbit_quiver(&ar), Err(Error::PartialComponent));
    }

    #[test]
    fn sincere_examples() {
        assert!(knit(&p(&[2]), 10).unwrap().has_sincere_preprojective());
        assert!(knit(&p(&[1, 2, 3]), 60).unwrap().has_sincere_preprojective());
    }

    #[test]
    fn counts() {
        assert_eq!(count_indecomposables(&p(&[5])).unwrap(), 15);
        assert_eq!(count_indecomposables(&p(&[2, 2])).unwrap(), 11);
        let l = p(&[1, 2, 3]);
        assert_eq!(count_indecomposables(&l).unwrap(), knit(&l, 60).unwrap().len());
        assert!(count_indecomposables(&p(&[3, 6])).is_err());
    }

    #[test]
    fn dot_output_is_deterministic() {
        let a = knit(&p(&[2, 2]), 20).unwrap().to_dot();
        assert_eq!(a, knit(&p(&[2, 2]), 20).unwrap().to_dot());
        assert!(a.contains("style=dashed"));
    }
}
