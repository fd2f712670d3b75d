//! Graded nilpotent pairs and the representations they correspond to.
//!
//! A bigraded space `V = ⊕ V_{s,t}` with operators `φ` lowering `s` and `ψ`
//! lowering `t` that commute blockwise is the same as a representation of the
//! staircase algebra of `λ(V)`: `V_{s,t}` sits at row `t`, column `s`, `φ`
//! runs along vertical arrows and `ψ` along horizontal ones.

mod family;
mod hom;
mod oracle;
mod rep;
mod space;

use serde::{Deserialize, Serialize};

pub use family::{bundled_families, family_descriptor, preprojective_module, two_param_family, FamilyDescriptor};
pub use hom::{hom_basis, hom_dim, is_isomorphic, is_isomorphic_seeded, DEFAULT_SEED};
pub use oracle::{krs_count, oracle_count_small, ORACLE_CAP};
pub use rep::{direct_sum, Representation};
pub use space::{degree_of, vertex_of, BigradedSpace, Degree, GradedPair, Violation};

use crate::classify::{classify, RepType, TAME_CONCEALED};
use crate::error::Result;
use crate::partition::Partition;
use crate::quadform::UnitForm;
use crate::quiver::DimVector;

pub fn finiteness_partition(lambda: &Partition) -> bool {
    classify(lambda) == RepType::Finite
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Finiteness {
    Finite,
    Infinite,
    Unknown,
}

/// A tame concealed subdiagram whose minimal nullroot `dim V` dominates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NullrootHit {
    pub sub: Partition,
    pub offset: (usize, usize),
    pub nullroot: DimVector,
}

/// Every placement of a tame concealed diagram inside the diagram of `d`
/// whose zero-extended minimal nullroot lies below `d`.
pub fn dominated_nullroots(d: &DimVector) -> Result<Vec<NullrootHit>> {
    let lambda = d.lambda();
    let mut out = Vec::new();
    let mut subs: Vec<Partition> = Vec::new();
    for parts in TAME_CONCEALED {
        let mu = Partition::of(parts);
        for cand in [mu.transpose(), mu] {
            if !subs.contains(&cand) {
                subs.push(cand);
            }
        }
    }
    for mu in subs {
        let placements = mu.placements_in(lambda);
        if placements.is_empty() {
            continue;
        }
        let root = UnitForm::of(&mu).minimal_nullroot()?;
        for offset in placements {
            let ext = root.extend_to(lambda, offset)?;
            if d.dominates(&ext) {
                out.push(NullrootHit { sub: mu.clone(), offset, nullroot: DimVector::new(ext)? });
            }
        }
    }
    Ok(out)
}

pub fn finiteness_dims(d: &DimVector) -> Result<Finiteness> {
    if finiteness_partition(d.lambda()) {
        return Ok(Finiteness::Finite);
    }
    if !dominated_nullroots(d)?.is_empty() {
        return Ok(Finiteness::Infinite);
    }
    if classify(d.lambda()) == RepType::TameConcealed {
        return Ok(Finiteness::Finite);
    }
    Ok(Finiteness::Unknown)
}

/// Whether the graded pairs on `V` fall into finitely many orbits.
pub fn finiteness_space(v: &BigradedSpace) -> Result<Finiteness> {
    finiteness_dims(&v.dim_vector()?)
}
