//! Representation type and orbit type of staircase algebras, with an
//! independent verification through the Tits form.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::quadform::{Decision, SymForm, UnitForm, WEAK_NONNEGATIVITY_BOUND};
use crate::quiver::IntVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RepType {
    Finite,
    TameConcealed,
    TameNotConcealed,
    Wild,
}

impl RepType {
    /// 0 for finite, 1 for tame, 2 for wild.
    pub fn class(self) -> u8 {
        match self {
            RepType::Finite => 0,
            RepType::TameConcealed | RepType::TameNotConcealed => 1,
            RepType::Wild => 2,
        }
    }

    pub fn is_tame(self) -> bool {
        self.class() == 1
    }

    pub fn name(self) -> &'static str {
        match self {
            RepType::Finite => "finite",
            RepType::TameConcealed => "tame-concealed",
            RepType::TameNotConcealed => "tame-not-concealed",
            RepType::Wild => "wild",
        }
    }
}

impl fmt::Display for RepType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub const TAME_CONCEALED: [&[usize]; 9] = [
    &[3, 6],
    &[1, 2, 6],
    &[1, 3, 4],
    &[2, 2, 5],
    &[1, 1, 2, 4],
    &[1, 2, 2, 3],
    &[1, 1, 1, 3, 3],
    &[1, 1, 1, 2, 2, 2],
    &[1, 1, 1, 1, 2, 3],
];

pub const TAME_NOT_CONCEALED: [&[usize]; 8] = [
    &[4, 5],
    &[5, 5],
    &[1, 4, 4],
    &[2, 3, 3],
    &[3, 3, 3],
    &[2, 2, 2, 3],
    &[1, 2, 2, 2, 2],
    &[2, 2, 2, 2, 2],
];

const FINITE_EXCEPTIONS: [&[usize]; 4] = [&[1, 3, 4], &[2, 3, 3], &[1, 2, 2, 3], &[1, 1, 2, 4]];

fn listed(table: &[&[usize]], lambda: &Partition) -> bool {
    table.iter().any(|p| *p == lambda.parts())
}

/// `(1^k, m)`: every part but the largest equals one.
fn is_hook(lambda: &Partition) -> bool {
    let p = lambda.parts();
    p[..p.len() - 1].iter().all(|&x| x == 1)
}

pub fn classify(lambda: &Partition) -> RepType {
    let p = lambda.parts();
    let finite = is_hook(lambda)
        || (p.len() == 2 && p[0] == 2)
        || (p.len() >= 2 && p[p.len() - 2..] == [2, 2] && p[..p.len() - 2].iter().all(|&x| x == 1))
        || (lambda.size() <= 8 && !listed(&FINITE_EXCEPTIONS, lambda));
    if finite {
        RepType::Finite
    } else if listed(&TAME_CONCEALED, lambda) {
        RepType::TameConcealed
    } else if listed(&TAME_NOT_CONCEALED, lambda) {
        RepType::TameNotConcealed
    } else {
        RepType::Wild
    }
}

/// Type of the one-step partition `(m^l)`, i.e. of the tensor product of two
/// linearly oriented type A quivers.
pub fn tensor_type(m: usize, l: usize) -> Result<RepType> {
    if m == 0 || l == 0 {
        return Err(Error::EmptyPartition);
    }
    Ok(classify(&Partition::new(vec![m; l])?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrbitType {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
    /// Euclidean `A~_{n-1}` on `n` vertices.
    ATilde(usize),
    /// Euclidean `D~_{n-1}` on `n` vertices.
    DTilde(usize),
    E6Tilde,
    E7Tilde,
    E8Tilde,
    WildOrbit,
}

impl OrbitType {
    pub fn is_dynkin(self) -> bool {
        matches!(self, OrbitType::A(_) | OrbitType::D(_) | OrbitType::E6 | OrbitType::E7 | OrbitType::E8)
    }

    pub fn is_euclidean(self) -> bool {
        matches!(
            self,
            OrbitType::ATilde(_) | OrbitType::DTilde(_) | OrbitType::E6Tilde | OrbitType::E7Tilde | OrbitType::E8Tilde
        )
    }

    /// The representation class this orbit type corresponds to.
    pub fn class(self) -> u8 {
        if self.is_dynkin() {
            0
        } else if self.is_euclidean() {
            1
        } else {
            2
        }
    }

    /// Recognizes a connected multigraph on `n` vertices from its unit form:
    /// positive definite graphs are Dynkin, positive semidefinite of corank
    /// one are Euclidean.
    pub fn recognize(n: usize, edges: &[(usize, usize, u32)]) -> OrbitType {
        if n == 0 {
            return OrbitType::WildOrbit;
        }
        let coeffs: Vec<(usize, usize, i64)> = edges.iter().map(|&(a, b, m)| (a, b, -i64::from(m))).collect();
        if edges.iter().any(|&(a, b, _)| a == b) {
            return OrbitType::WildOrbit;
        }
        let form = SymForm::unit(n, &coeffs);
        let Some(rank) = form.psd_rank() else { return OrbitType::WildOrbit };
        let mut degree = vec![0u32; n];
        let mut adj = vec![Vec::new(); n];
        for &(a, b, m) in edges {
            degree[a] += m;
            degree[b] += m;
            adj[a].push(b);
            adj[b].push(a);
        }
        let simple_edges: u32 = edges.iter().map(|e| e.2).sum();
        if rank == n {
            return match arms(&degree, &adj) {
                None => OrbitType::A(n),
                Some(a) => match a.as_slice() {
                    [1, 1, _] => OrbitType::D(n),
                    [1, 2, 2] => OrbitType::E6,
                    [1, 2, 3] => OrbitType::E7,
                    [1, 2, 4] => OrbitType::E8,
                    _ => OrbitType::WildOrbit,
                },
            };
        }
        if rank + 1 != n {
            return OrbitType::WildOrbit;
        }
        if simple_edges as usize == n {
            return OrbitType::ATilde(n);
        }
        let branch: Vec<usize> = (0..n).filter(|&v| degree[v] >= 3).collect();
        if branch.len() == 2 || degree.contains(&4) {
            return OrbitType::DTilde(n);
        }
        match arms(&degree, &adj).as_deref() {
            Some([2, 2, 2]) => OrbitType::E6Tilde,
            Some([1, 3, 3]) => OrbitType::E7Tilde,
            Some([1, 2, 5]) => OrbitType::E8Tilde,
            _ => OrbitType::WildOrbit,
        }
    }
}

/// Sorted arm lengths of a tree with exactly one branch vertex of degree
/// three; `None` for a path.
fn arms(degree: &[u32], adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    let center = (0..degree.len()).find(|&v| degree[v] >= 3)?;
    let mut lens: Vec<usize> = adj[center]
        .iter()
        .map(|&start| {
            let (mut prev, mut cur, mut len) = (center, start, 1);
            while degree[cur] == 2 {
                let next = *adj[cur].iter().find(|&&w| w != prev).expect("path continues");
                prev = cur;
                cur = next;
                len += 1;
            }
            len
        })
        .collect();
    lens.sort_unstable();
    Some(lens)
}

impl fmt::Display for OrbitType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitType::A(n) => write!(f, "A{n}"),
            OrbitType::D(n) => write!(f, "D{n}"),
            OrbitType::E6 => f.write_str("E6"),
            OrbitType::E7 => f.write_str("E7"),
            OrbitType::E8 => f.write_str("E8"),
            OrbitType::ATilde(n) => write!(f, "A{}~", n - 1),
            OrbitType::DTilde(n) => write!(f, "D{}~", n - 1),
            OrbitType::E6Tilde => f.write_str("E6~"),
            OrbitType::E7Tilde => f.write_str("E7~"),
            OrbitType::E8Tilde => f.write_str("E8~"),
            OrbitType::WildOrbit => f.write_str("wild"),
        }
    }
}

const E6_LIST: [&[usize]; 3] = [&[1, 2, 3], &[2, 2, 2], &[3, 3]];
const E7_LIST: [&[usize]; 6] = [&[1, 1, 2, 3], &[1, 2, 4], &[1, 2, 2, 2], &[3, 4], &[1, 3, 3], &[2, 2, 3]];
const E8_LIST: [&[usize]; 8] =
    [&[1, 1, 1, 2, 3], &[1, 2, 5], &[1, 1, 2, 2, 2], &[3, 5], &[1, 1, 3, 3], &[2, 2, 4], &[2, 2, 2, 2], &[4, 4]];
const E7_TILDE_LIST: [&[usize]; 7] =
    [&[1, 3, 4], &[1, 2, 2, 3], &[2, 3, 3], &[1, 1, 2, 4], &[3, 3, 3], &[1, 4, 4], &[2, 2, 2, 3]];
const E8_TILDE_LIST: [&[usize]; 9] = [
    &[3, 6],
    &[4, 5],
    &[1, 2, 6],
    &[2, 2, 5],
    &[1, 1, 1, 3, 3],
    &[1, 2, 2, 2, 2],
    &[1, 1, 1, 1, 2, 3],
    &[1, 1, 1, 2, 2, 2],
    &[5, 5],
];

/// Orbit type from the closed-form case table; a partition and its
/// transpose share the type.
pub fn orbit_type(lambda: &Partition) -> OrbitType {
    let n = lambda.size();
    let t = lambda.transpose();
    let either = |table: &[&[usize]]| listed(table, lambda) || listed(table, &t);
    let p = lambda.parts();
    if is_hook(lambda) {
        OrbitType::A(n)
    } else if (p.len() == 2 && p[0] == 2) || (p.len() >= 2 && p[p.len() - 2..] == [2, 2] && p[..p.len() - 2].iter().all(|&x| x == 1))
    {
        OrbitType::D(n)
    } else if either(&E6_LIST) {
        OrbitType::E6
    } else if either(&E7_LIST) {
        OrbitType::E7
    } else if either(&E8_LIST) {
        OrbitType::E8
    } else if either(&E7_TILDE_LIST) {
        OrbitType::E7Tilde
    } else if either(&E8_TILDE_LIST) {
        OrbitType::E8Tilde
    } else {
        OrbitType::WildOrbit
    }
}

#[derive(Debug, Clone, Deserialize)]
struct WitnessEntry {
    label: String,
    lambda: Partition,
    rows: Vec<Vec<i64>>,
    q: i64,
}

/// A bundled vector on which the Tits form takes a prescribed value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BundledWitness {
    pub label: String,
    pub vector: IntVector,
    pub q: i64,
}

pub fn bundled_witnesses() -> &'static [BundledWitness] {
    static DATA: OnceLock<Vec<BundledWitness>> = OnceLock::new();
    DATA.get_or_init(|| {
        let raw: Vec<WitnessEntry> =
            serde_json::from_str(include_str!("../data/witnesses.json")).expect("bundled witness data parses");
        raw.into_iter()
            .map(|e| BundledWitness {
                vector: IntVector::from_rows(&e.lambda, &e.rows).expect("bundled witness shape"),
                label: e.label,
                q: e.q,
            })
            .collect()
    })
}

/// Where a wildness witness came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum WitnessSource {
    Bundled { label: String, transposed: bool },
    Extended { label: String, transposed: bool, from: Partition, offset: (usize, usize) },
    Search { bound: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub vector: IntVector,
    pub q: i64,
    pub source: WitnessSource,
}

/// A non-negative vector with Tits form value `-1`.
pub fn wildness_witness(lambda: &Partition) -> Result<Witness> {
    if classify(lambda) != RepType::Wild {
        return Err(Error::WrongType(lambda.clone(), "wild"));
    }
    let form = UnitForm::of(lambda);
    let mut candidates: Vec<(String, bool, IntVector)> = Vec::new();
    for w in bundled_witnesses().iter().filter(|w| w.q == -1) {
        candidates.push((w.label.clone(), false, w.vector.clone()));
    }
    for w in bundled_witnesses().iter().filter(|w| w.q == -1) {
        candidates.push((w.label.clone(), true, w.vector.transposed()));
    }
    for (label, transposed, v) in &candidates {
        if v.lambda() == lambda {
            return Ok(Witness {
                q: form.eval(v)?,
                vector: v.clone(),
                source: WitnessSource::Bundled { label: label.clone(), transposed: *transposed },
            });
        }
    }
    for (label, transposed, v) in &candidates {
        if let Some(&offset) = v.lambda().placements_in(lambda).first() {
            let vector = v.extend_to(lambda, offset)?;
            return Ok(Witness {
                q: form.eval(&vector)?,
                vector,
                source: WitnessSource::Extended {
                    label: label.clone(),
                    transposed: *transposed,
                    from: v.lambda().clone(),
                    offset,
                },
            });
        }
    }
    let bound = WEAK_NONNEGATIVITY_BOUND;
    let found = form.sym().value_walk(-1, bound).or_else(|| {
        if ((bound + 1) as f64).powi(lambda.size() as i32) <= 1.0e7 {
            form.sym().box_search(bound, |v| v == -1)
        } else {
            None
        }
    });
    match found {
        Some(values) => {
            let vector = IntVector::from_values(lambda, values)?;
            Ok(Witness { q: form.eval(&vector)?, vector, source: WitnessSource::Search { bound } })
        }
        None => Err(Error::CapExceeded(format!("no witness for {lambda} within bound {bound}"))),
    }
}

/// One form-theoretic check: what the claimed type predicts and what was
/// observed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub criterion: String,
    pub expected: Decision,
    pub observed: Decision,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<IntVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<i64>,
}

impl Check {
    fn new(criterion: &str, expected: bool, observed: Decision) -> Self {
        Check {
            criterion: criterion.into(),
            expected: if expected { Decision::Holds } else { Decision::Fails },
            observed,
            certificate: None,
            value: None,
        }
    }

    pub fn contradicts(&self) -> bool {
        self.observed != Decision::Inconclusive && self.observed != self.expected
    }
}

fn decide(b: bool) -> Decision {
    if b {
        Decision::Holds
    } else {
        Decision::Fails
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub lambda: Partition,
    pub claimed: RepType,
    pub checks: Vec<Check>,
    pub consistent: bool,
    pub inconclusive: bool,
}

/// Re-derives the claimed type's consequences from the Tits form alone.
pub fn verify_classification(lambda: &Partition) -> ClassificationReport {
    let claimed = classify(lambda);
    let form = UnitForm::of(lambda);
    let mut checks = Vec::new();
    match claimed {
        RepType::Finite => {
            let v = form.is_weakly_positive();
            checks.push(Check::new("weakly-positive", true, v.decision));
            if let Some(w) = v.witness {
                checks.last_mut().expect("pushed").value = form.eval(&w).ok();
                checks.last_mut().expect("pushed").certificate = Some(w);
            }
        }
        RepType::TameConcealed | RepType::TameNotConcealed => {
            let v = form.is_weakly_positive();
            let mut c = Check::new("weakly-positive", false, v.decision);
            if let Some(w) = v.witness {
                c.value = form.eval(&w).ok();
                c.certificate = Some(w);
            }
            checks.push(c);
            let psd = form.is_psd();
            checks.push(Check::new("positive-semidefinite", true, decide(psd)));
            let wn = form.is_weakly_nonnegative(WEAK_NONNEGATIVITY_BOUND);
            checks.push(Check::new("weakly-nonnegative", true, wn.decision));
            if psd {
                let corank = form.corank0().expect("psd form");
                let mut c = Check::new("corank0-at-most-one", true, decide(corank <= 1));
                c.value = Some(corank as i64);
                checks.push(c);
                let rank = form.radical_basis().expect("psd form").len();
                let mut c = Check::new("radical-rank-one-or-two", true, decide((1..=2).contains(&rank)));
                c.value = Some(rank as i64);
                checks.push(c);
                if claimed == RepType::TameConcealed {
                    let mut c = Check::new("sincere-minimal-nullroot", true, Decision::Fails);
                    if let Ok(root) = form.minimal_nullroot() {
                        c.observed = decide(root.is_sincere());
                        c.certificate = Some(root.into_inner());
                    }
                    checks.push(c);
                }
            }
        }
        RepType::Wild => {
            let mut c = Check::new("witness-value-minus-one", true, Decision::Inconclusive);
            if let Ok(w) = wildness_witness(lambda) {
                c.observed = decide(w.q == -1 && w.vector.is_nonnegative());
                c.value = Some(w.q);
                c.certificate = Some(w.vector);
            }
            checks.push(c);
            checks.push(Check::new("positive-semidefinite", false, decide(form.is_psd())));
        }
    }
    let consistent = !checks.iter().any(Check::contradicts);
    let inconclusive = checks.iter().any(|c| c.observed == Decision::Inconclusive);
    ClassificationReport { lambda: lambda.clone(), claimed, checks, consistent, inconclusive }
}
