//! Integral unit forms: the Tits form of a staircase quiver and the generic
//! symmetric engine behind it (exact evaluation, positivity tests, radicals,
//! root enumeration).

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{integer_kernel, nullspace, q, rank, QMatrix};
use crate::partition::Partition;
use crate::quiver::{DimVector, IntVector, StaircaseQuiver, Vertex};

pub const WEAK_POSITIVITY_BOUND: i64 = 6;
pub const WEAK_NONNEGATIVITY_BOUND: i64 = 18;

const SEARCH_NODE_CAP: usize = 200_000;
const ROOT_WALK_CAP: usize = 2_000_000;
const EXHAUSTIVE_CAP: f64 = 1.0e7;

/// Integral quadratic form `q(x) = sum_i x_i^2 + sum_{i<j} c_ij x_i x_j`,
/// stored as the integer matrix `2G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymForm {
    n: usize,
    twice: Vec<i64>,
    neighbours: Vec<Vec<(usize, i64)>>,
}

impl SymForm {
    /// Builds the unit form on `n` variables with the given off-diagonal
    /// coefficients; repeated pairs accumulate.
    pub fn unit(n: usize, coefficients: &[(usize, usize, i64)]) -> Self {
        let mut twice = vec![0; n * n];
        for k in 0..n {
            twice[k * n + k] = 2;
        }
        for &(a, b, c) in coefficients {
            assert!(a != b && a < n && b < n);
            twice[a * n + b] += c;
            twice[b * n + a] += c;
        }
        let neighbours = (0..n)
            .map(|i| (0..n).filter(|&j| j != i && twice[i * n + j] != 0).map(|j| (j, twice[i * n + j])).collect())
            .collect();
        SymForm { n, twice, neighbours }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Entry of `2G`.
    pub fn twice_gram(&self, i: usize, j: usize) -> i64 {
        self.twice[i * self.n + j]
    }

    pub fn eval(&self, x: &[i64]) -> i64 {
        assert_eq!(x.len(), self.n);
        let mut s: i128 = 0;
        for i in 0..self.n {
            if x[i] == 0 {
                continue;
            }
            s += i128::from(x[i]) * i128::from(x[i]) * 2;
            for &(j, c) in &self.neighbours[i] {
                s += i128::from(c) * i128::from(x[i]) * i128::from(x[j]);
            }
        }
        i64::try_from(s / 2).expect("form value fits in i64")
    }

    pub fn bilinear(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s: i128 = 0;
        for i in 0..self.n {
            if x[i] == 0 {
                continue;
            }
            s += 2 * i128::from(x[i]) * i128::from(y[i]);
            for &(j, c) in &self.neighbours[i] {
                s += i128::from(c) * i128::from(x[i]) * i128::from(y[j]);
            }
        }
        i64::try_from(s).expect("bilinear value fits in i64")
    }

    /// `b(x, e_i)` for every `i`.
    fn b_basis(&self, x: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|i| 2 * x[i] + self.neighbours[i].iter().map(|&(j, c)| c * x[j]).sum::<i64>())
            .collect()
    }

    pub fn gram(&self) -> QMatrix {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        QMatrix {
            rows: self.n,
            cols: self.n,
            data: self.twice.iter().map(|&c| q(c) * &half).collect(),
        }
    }

    /// Number of positive pivots in an exact symmetric elimination, or `None`
    /// if the form is not positive semidefinite.
    pub fn psd_rank(&self) -> Option<usize> {
        let mut a: Vec<Vec<BigRational>> =
            (0..self.n).map(|i| (0..self.n).map(|j| q(self.twice_gram(i, j))).collect()).collect();
        let mut alive: Vec<usize> = (0..self.n).collect();
        let mut pivots = 0;
        loop {
            if alive.iter().any(|&k| a[k][k].is_negative()) {
                return None;
            }
            let Some(pos) = alive.iter().position(|&k| a[k][k].is_positive()) else {
                let clean = alive.iter().all(|&i| alive.iter().all(|&j| a[i][j].is_zero()));
                return clean.then_some(pivots);
            };
            let k = alive.remove(pos);
            let pivot = a[k][k].clone();
            let col: Vec<BigRational> = alive.iter().map(|&i| a[i][k].clone()).collect();
            for (x, &i) in alive.iter().enumerate() {
                if col[x].is_zero() {
                    continue;
                }
                for (y, &j) in alive.iter().enumerate() {
                    if !col[y].is_zero() {
                        a[i][j] = &a[i][j] - &col[x] * &col[y] / &pivot;
                    }
                }
            }
            pivots += 1;
        }
    }

    pub fn is_psd(&self) -> bool {
        self.psd_rank().is_some()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.psd_rank() == Some(self.n)
    }

    /// Hermite basis of the integer kernel of `2G`.
    pub fn kernel_basis(&self) -> Vec<Vec<i64>> {
        let rows: Vec<Vec<BigInt>> =
            (0..self.n).map(|i| (0..self.n).map(|j| BigInt::from(self.twice_gram(i, j))).collect()).collect();
        integer_kernel(&rows, self.n)
            .into_iter()
            .map(|v| v.iter().map(|x| x.to_i64().expect("kernel entry fits in i64")).collect())
            .collect()
    }

    /// Radical basis; only defined for positive semidefinite forms.
    pub fn radical(&self) -> Result<Vec<Vec<i64>>> {
        if !self.is_psd() {
            return Err(Error::NotNonNegative);
        }
        Ok(self.kernel_basis())
    }

    /// Dimension of the span of the radical's intersection with the
    /// non-negative orthant, via extreme rays of the pulled-back cone.
    pub fn corank0(&self) -> Result<usize> {
        let basis = self.radical()?;
        let r = basis.len();
        if r == 0 {
            return Ok(0);
        }
        // constraint k: sum_j y_j basis[j][k] >= 0
        let constraints: Vec<Vec<BigRational>> =
            (0..self.n).map(|k| basis.iter().map(|b| q(b[k])).collect()).collect();
        let feasible = |y: &[BigRational]| {
            constraints.iter().all(|c| !c.iter().zip(y).fold(BigRational::zero(), |s, (a, b)| s + a * b).is_negative())
        };
        let mut rays: Vec<Vec<BigRational>> = Vec::new();
        let mut consider = |y: Vec<BigRational>| {
            for s in [1, -1] {
                let cand: Vec<BigRational> = y.iter().map(|v| v * q(s)).collect();
                if feasible(&cand) {
                    rays.push(cand);
                }
            }
        };
        if r == 1 {
            consider(vec![q(1)]);
        } else {
            for subset in combinations(self.n, r - 1) {
                let rows: Vec<Vec<BigRational>> = subset.iter().map(|&k| constraints[k].clone()).collect();
                let ns = nullspace(&rows, r);
                if ns.len() == 1 {
                    consider(ns.into_iter().next().expect("one vector"));
                }
            }
        }
        Ok(rank(&rays))
    }

    /// Breadth-first walk through the vectors with `q = 1` inside the box
    /// `[0, bound]^n`, starting at the simple roots; stops at the first vector
    /// with `q <= 0` met on the way.
    fn root_walk(&self, bound: i64) -> Walk {
        let n = self.n;
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut roots = Vec::new();
        let mut frontier: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            let b = self.b_basis(&e);
            seen.insert(e.clone());
            frontier.push((e, b));
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (x, bx) in &frontier {
                for i in 0..n {
                    if x[i] + 1 > bound {
                        continue;
                    }
                    // q(x + e_i) = q(x) + 1 + b(x, e_i) with q(x) = 1
                    let value = 2 + bx[i];
                    if value <= 0 {
                        let mut y = x.clone();
                        y[i] += 1;
                        return Walk::Violation(y);
                    }
                    if value != 1 {
                        continue;
                    }
                    let mut y = x.clone();
                    y[i] += 1;
                    if seen.contains(&y) {
                        continue;
                    }
                    let mut by = bx.clone();
                    by[i] += 2;
                    for &(j, c) in &self.neighbours[i] {
                        by[j] += c;
                    }
                    seen.insert(y.clone());
                    next.push((y, by));
                }
            }
            roots.extend(frontier.into_iter().map(|(x, _)| x));
            if seen.len() > ROOT_WALK_CAP {
                return Walk::Truncated;
            }
            frontier = next;
        }
        Walk::Complete(roots)
    }

    /// Weak positivity inside the box `[0, bound]^n`. Any minimal violating
    /// vector sits one step above a chain of roots descending to a simple
    /// root, so the walk is exhaustive for the box.
    pub fn weakly_positive(&self, bound: i64) -> Verdict<Vec<i64>> {
        match self.root_walk(bound) {
            Walk::Violation(w) => Verdict { decision: Decision::Fails, witness: Some(w), bound },
            Walk::Complete(_) => Verdict { decision: Decision::Holds, witness: None, bound },
            Walk::Truncated => Verdict { decision: Decision::Inconclusive, witness: None, bound },
        }
    }

    /// Positive roots, sorted by total then lexicographically.
    pub fn positive_roots(&self, bound: i64) -> Result<Vec<Vec<i64>>> {
        let mut roots = match self.root_walk(bound) {
            Walk::Complete(roots) => roots,
            Walk::Violation(w) => return Err(Error::NotWeaklyPositive(w)),
            Walk::Truncated => return Err(Error::CapExceeded(format!("more than {ROOT_WALK_CAP} roots"))),
        };
        roots.sort_by(|a, b| a.iter().sum::<i64>().cmp(&b.iter().sum::<i64>()).then_with(|| a.cmp(b)));
        Ok(roots)
    }

    pub fn weakly_nonnegative(&self, bound: i64) -> Verdict<Vec<i64>> {
        if self.is_psd() {
            return Verdict { decision: Decision::Holds, witness: None, bound };
        }
        if let Some(w) = self.descent_walk(bound, |v| v < 0) {
            return Verdict { decision: Decision::Fails, witness: Some(w), bound };
        }
        let boxes = ((bound + 1) as f64).powi(self.n as i32);
        if boxes <= EXHAUSTIVE_CAP {
            return match self.box_search(bound, |v| v < 0) {
                Some(w) => Verdict { decision: Decision::Fails, witness: Some(w), bound },
                None => Verdict { decision: Decision::Holds, witness: None, bound },
            };
        }
        Verdict { decision: Decision::Inconclusive, witness: None, bound }
    }

    /// First vector with `q = target` met by [`Self::descent_walk`].
    pub fn value_walk(&self, target: i64, bound: i64) -> Option<Vec<i64>> {
        self.descent_walk(bound, |v| v == target)
    }

    /// Walk through non-negative vectors with `q` in `{0, 1}` looking for a
    /// step whose value satisfies `accept`.
    fn descent_walk(&self, bound: i64, accept: impl Fn(i64) -> bool) -> Option<Vec<i64>> {
        let n = self.n;
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut frontier: Vec<(Vec<i64>, i64, Vec<i64>)> = Vec::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            let b = self.b_basis(&e);
            seen.insert(e.clone());
            frontier.push((e, 1, b));
        }
        while !frontier.is_empty() && seen.len() < SEARCH_NODE_CAP {
            let mut next = Vec::new();
            for (x, qx, bx) in &frontier {
                for i in 0..n {
                    if x[i] + 1 > bound {
                        continue;
                    }
                    let value = qx + 1 + bx[i];
                    let mut y = x.clone();
                    y[i] += 1;
                    if accept(value) {
                        return Some(y);
                    }
                    if !(0..=1).contains(&value) || seen.contains(&y) {
                        continue;
                    }
                    let mut by = bx.clone();
                    by[i] += 2;
                    for &(j, c) in &self.neighbours[i] {
                        by[j] += c;
                    }
                    seen.insert(y.clone());
                    next.push((y, value, by));
                }
            }
            frontier = next;
        }
        None
    }

    /// Exhaustive search of `[0, bound]^n` minus the origin.
    pub fn box_search(&self, bound: i64, pred: impl Fn(i64) -> bool) -> Option<Vec<i64>> {
        let n = self.n;
        let mut x = vec![0i64; n];
        loop {
            let mut k = 0;
            while k < n && x[k] == bound {
                x[k] = 0;
                k += 1;
            }
            if k == n {
                return None;
            }
            x[k] += 1;
            if pred(self.eval(&x)) {
                return Some(x);
            }
        }
    }
}

enum Walk {
    Complete(Vec<Vec<i64>>),
    Violation(Vec<i64>),
    Truncated,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Holds,
    Fails,
    Inconclusive,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Holds => "holds",
            Decision::Fails => "fails",
            Decision::Inconclusive => "inconclusive",
        })
    }
}

/// Outcome of a bounded decision procedure. A `Fails` verdict carries its
/// witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict<W> {
    pub decision: Decision,
    pub witness: Option<W>,
    pub bound: i64,
}

pub type FormVerdict = Verdict<IntVector>;

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        self.decision == Decision::Holds
    }

    pub fn fails(&self) -> bool {
        self.decision == Decision::Fails
    }

    fn map<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        Verdict { decision: self.decision, witness: self.witness.map(f), bound: self.bound }
    }
}

/// The Tits form of a staircase algebra: `-1` per arrow, `+1` per
/// commutativity square between its diagonal corners.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitForm {
    quiver: StaircaseQuiver,
    form: SymForm,
}

pub fn tits_form(quiver: &StaircaseQuiver) -> UnitForm {
    let idx = |v: Vertex| quiver.index(v).expect("vertex of quiver");
    let mut coefficients = Vec::new();
    for a in quiver.arrows() {
        coefficients.push((idx(a.source), idx(a.target()), -1));
    }
    for &r in quiver.relations() {
        coefficients.push((idx(r), idx(Vertex::new(r.i - 1, r.j - 1)), 1));
    }
    UnitForm { quiver: quiver.clone(), form: SymForm::unit(quiver.len(), &coefficients) }
}

impl UnitForm {
    pub fn of(lambda: &Partition) -> Self {
        tits_form(&StaircaseQuiver::new(lambda))
    }

    pub fn quiver(&self) -> &StaircaseQuiver {
        &self.quiver
    }

    pub fn lambda(&self) -> &Partition {
        self.quiver.lambda()
    }

    pub fn sym(&self) -> &SymForm {
        &self.form
    }

    /// Off-diagonal coefficient `c(u, v)`; zero for non-adjacent or absent vertices.
    pub fn coefficient(&self, u: Vertex, v: Vertex) -> i64 {
        match (self.quiver.index(u), self.quiver.index(v)) {
            (Some(a), Some(b)) if a != b => self.form.twice_gram(a, b),
            _ => 0,
        }
    }

    /// All nonzero coefficients `(u, v, c)` with `u < v`.
    pub fn coefficients(&self) -> Vec<(Vertex, Vertex, i64)> {
        let vs = self.quiver.vertices();
        let mut out = Vec::new();
        for a in 0..vs.len() {
            for b in a + 1..vs.len() {
                let c = self.form.twice_gram(a, b);
                if c != 0 {
                    out.push((vs[a], vs[b], c));
                }
            }
        }
        out
    }

    fn check(&self, x: &IntVector) -> Result<()> {
        if x.lambda() != self.lambda() {
            return Err(Error::ShapeMismatch(x.lambda().clone()));
        }
        Ok(())
    }

    fn wrap(&self, values: Vec<i64>) -> IntVector {
        IntVector::from_values(self.lambda(), values).expect("shape of the form")
    }

    pub fn eval(&self, x: &IntVector) -> Result<i64> {
        self.check(x)?;
        Ok(self.form.eval(x.values()))
    }

    pub fn bilinear(&self, x: &IntVector, y: &IntVector) -> Result<i64> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.form.bilinear(x.values(), y.values()))
    }

    pub fn gram(&self) -> QMatrix {
        self.form.gram()
    }

    pub fn is_psd(&self) -> bool {
        self.form.is_psd()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.form.is_positive_definite()
    }

    pub fn radical_basis(&self) -> Result<Vec<IntVector>> {
        Ok(self.form.radical()?.into_iter().map(|v| self.wrap(v)).collect())
    }

    /// Whether `x` lies in the integer span of `basis`.
    pub fn in_lattice(basis: &[IntVector], x: &IntVector) -> bool {
        let rows: Vec<Vec<BigRational>> = basis.iter().map(|b| b.values().iter().map(|&v| q(v)).collect()).collect();
        let mut with = rows.clone();
        with.push(x.values().iter().map(|&v| q(v)).collect());
        if rank(&with) != rank(&rows) {
            return false;
        }
        // basis is in Hermite form: solve by back-substitution on pivots
        let mut rest: Vec<i64> = x.values().to_vec();
        for b in basis {
            let Some(p) = b.values().iter().position(|&v| v != 0) else { continue };
            if rest[p] % b.values()[p] != 0 {
                return false;
            }
            let f = rest[p] / b.values()[p];
            for (r, v) in rest.iter_mut().zip(b.values()) {
                *r -= f * v;
            }
        }
        rest.iter().all(|&v| v == 0)
    }

    pub fn is_weakly_positive(&self) -> FormVerdict {
        self.is_weakly_positive_within(WEAK_POSITIVITY_BOUND)
    }

    pub fn is_weakly_positive_within(&self, bound: i64) -> FormVerdict {
        self.form.weakly_positive(bound).map(|w| self.wrap(w))
    }

    pub fn is_weakly_nonnegative(&self, bound: i64) -> FormVerdict {
        self.form.weakly_nonnegative(bound.max(1)).map(|w| self.wrap(w))
    }

    pub fn positive_roots(&self) -> Result<Vec<DimVector>> {
        self.positive_roots_within(WEAK_POSITIVITY_BOUND)
    }

    pub fn positive_roots_within(&self, bound: i64) -> Result<Vec<DimVector>> {
        let roots = self.form.positive_roots(bound).map_err(|e| match e {
            Error::NotWeaklyPositive(_) => Error::WrongType(self.lambda().clone(), "finite"),
            other => other,
        })?;
        Ok(roots.into_iter().map(|v| DimVector::new(self.wrap(v)).expect("non-negative root")).collect())
    }

    pub fn corank0(&self) -> Result<usize> {
        self.form.corank0()
    }

    /// Primitive positive generator of a rank-one radical.
    pub fn minimal_nullroot(&self) -> Result<DimVector> {
        let basis = self.form.radical()?;
        if basis.len() != 1 {
            return Err(Error::RadicalRank(basis.len()));
        }
        let mut g = basis.into_iter().next().expect("one generator");
        if g.iter().all(|&v| v <= 0) {
            g.iter_mut().for_each(|v| *v = -*v);
        }
        if g.iter().any(|&v| v < 0) {
            return Err(Error::MixedSignGenerator);
        }
        DimVector::new(self.wrap(g))
    }
}

/// Hand-picked generators of the radical for the two rectangles whose form
/// has corank two.
pub fn bundled_radical_generators(lambda: &Partition) -> Option<Vec<IntVector>> {
    #[derive(Deserialize)]
    struct Entry {
        lambda: Partition,
        generators: Vec<Vec<Vec<i64>>>,
    }
    static DATA: std::sync::OnceLock<Vec<Entry>> = std::sync::OnceLock::new();
    let data = DATA.get_or_init(|| serde_json::from_str(include_str!("../data/radicals.json")).expect("bundled radicals parse"));
    let entry = data.iter().find(|e| &e.lambda == lambda)?;
    entry.generators.iter().map(|rows| IntVector::from_rows(lambda, rows).ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(parts: &[usize]) -> UnitForm {
        UnitForm::of(&Partition::of(parts))
    }

    fn vec_of(parts: &[usize], rows: &[Vec<i64>]) -> IntVector {
        IntVector::from_rows(&Partition::of(parts), rows).unwrap()
    }

    /// Brute-force oracle: every vector of the box, no cleverness.
    fn box_values(f: &UnitForm, bound: i64) -> Vec<(Vec<i64>, i64)> {
        let n = f.quiver().len();
        let mut out = Vec::new();
        let mut x = vec![0i64; n];
        loop {
            let mut k = 0;
            while k < n && x[k] == bound {
                x[k] = 0;
                k += 1;
            }
            if k == n {
                return out;
            }
            x[k] += 1;
            out.push((x.clone(), f.sym().eval(&x)));
        }
    }

    #[test]
    fn coefficients_small_cases() {
        let f = form(&[2]);
        assert_eq!(f.coefficients(), vec![(Vertex::new(1, 1), Vertex::new(1, 2), -1)]);
        let f = form(&[2, 2]);
        let c = f.coefficients();
        assert_eq!(c.iter().filter(|t| t.2 == -1).count(), 4);
        assert_eq!(f.coefficient(Vertex::new(1, 1), Vertex::new(2, 2)), 1);
        let f = form(&[1, 1, 2, 3]);
        let c = f.coefficients();
        assert_eq!(c.iter().filter(|t| t.2 == -1).count(), 7);
        assert_eq!(c.iter().filter(|t| t.2 == 1).collect::<Vec<_>>(), vec![&(Vertex::new(1, 1), Vertex::new(2, 2), 1)]);
    }

    #[test]
    fn witness_values() {
        let f = form(&[4, 6]);
        assert_eq!(f.eval(&vec_of(&[4, 6], &[vec![0, 2, 4, 4, 2, 1], vec![2, 4, 4, 2]])).unwrap(), -1);
        let f = form(&[2, 3, 4]);
        assert_eq!(f.eval(&vec_of(&[2, 3, 4], &[vec![1, 3, 3, 1], vec![2, 4, 2], vec![2, 2]])).unwrap(), -1);
        let f = form(&[3, 3, 3]);
        let v = vec_of(&[3, 3, 3], &[vec![0, 1, 1], vec![1, 2, 1], vec![1, 1, 0]]);
        assert_eq!(f.eval(&v).unwrap(), 0);
        assert!(f.eval(&vec_of(&[2, 2], &[vec![1, 1], vec![1, 1]])).is_err());
    }

    #[test]
    fn orthogonality_of_radical_generator() {
        let f = form(&[3, 3, 3]);
        let u = vec_of(&[3, 3, 3], &[vec![1, 1, 0], vec![1, 0, -1], vec![0, -1, -1]]);
        for v in f.quiver().vertices() {
            let e = f.quiver().simple_vector(*v).unwrap();
            assert_eq!(f.bilinear(&u, &e).unwrap(), 0);
        }
        let g = f.gram();
        let uq: Vec<BigRational> = u.values().iter().map(|&x| q(x)).collect();
        assert!(g.mul_vec(&uq).iter().all(Zero::is_zero));
    }

    #[test]
    fn gram_of_a2() {
        let g = form(&[2]).gram();
        let half = BigRational::new((-1).into(), 2.into());
        assert_eq!(g.data, vec![q(1), half.clone(), half, q(1)]);
    }

    #[test]
    fn psd_examples() {
        assert!(form(&[3, 3, 3]).is_psd());
        assert!(!form(&[2, 3, 4]).is_psd());
        assert!(form(&[5]).is_positive_definite());
        assert!(form(&[5, 5]).is_psd());
        assert!(!form(&[1, 3, 4]).is_positive_definite());
    }

    #[test]
    fn radicals() {
        let f = form(&[3, 3, 3]);
        let basis = f.radical_basis().unwrap();
        assert_eq!(basis.len(), 2);
        let u = vec_of(&[3, 3, 3], &[vec![1, 1, 0], vec![1, 0, -1], vec![0, -1, -1]]);
        let v = vec_of(&[3, 3, 3], &[vec![0, 1, 1], vec![1, 2, 1], vec![1, 1, 0]]);
        assert!(UnitForm::in_lattice(&basis, &u) && UnitForm::in_lattice(&basis, &v));
        // and the lattice they span is the whole radical
        let hermite = crate::linalg::hermite_rows(
            [&u, &v].iter().map(|x| x.values().iter().map(|&a| BigInt::from(a)).collect()).collect(),
        );
        let ours: Vec<Vec<BigInt>> = basis.iter().map(|x| x.values().iter().map(|&a| BigInt::from(a)).collect()).collect();
        assert_eq!(hermite, ours);

        let f = form(&[5, 5]);
        let basis = f.radical_basis().unwrap();
        assert_eq!(basis.len(), 2);
        let a = vec_of(&[5, 5], &[vec![2, 3, 2, 0, -1], vec![1, 0, -2, -3, -2]]);
        let b = vec_of(&[5, 5], &[vec![0, 1, 2, 2, 1], vec![1, 2, 2, 1, 0]]);
        assert!(UnitForm::in_lattice(&basis, &a) && UnitForm::in_lattice(&basis, &b));

        let f = form(&[3, 6]);
        assert_eq!(f.radical_basis().unwrap().len(), 1);
        assert_eq!(form(&[2, 3, 4]).radical_basis(), Err(Error::NotNonNegative));
    }

    #[test]
    fn weak_positivity_examples() {
        assert!(form(&[2, 2, 4]).is_weakly_positive().holds());
        let f = form(&[1, 3, 4]);
        let v = f.is_weakly_positive();
        assert!(v.fails());
        assert!(f.eval(v.witness.as_ref().unwrap()).unwrap() <= 0);
        for n in 1..=8 {
            assert!(form(&[n]).is_weakly_positive().holds());
        }
    }

    #[test]
    fn weak_nonnegativity_examples() {
        assert!(form(&[3, 3, 3]).is_weakly_nonnegative(18).holds());
        assert!(form(&[1, 3, 4]).is_weakly_nonnegative(18).holds());
        let f = form(&[4, 6]);
        let v = f.is_weakly_nonnegative(18);
        assert!(v.fails());
        assert!(f.eval(v.witness.as_ref().unwrap()).unwrap() < 0);
    }

    #[test]
    fn root_counts() {
        assert_eq!(form(&[4]).positive_roots().unwrap().len(), 10);
        assert_eq!(form(&[2, 2]).positive_roots().unwrap().len(), 11);
        let f = form(&[1, 3, 4]);
        assert!(matches!(f.positive_roots(), Err(Error::WrongType(..))));
    }

    #[test]
    fn roots_match_brute_force() {
        for parts in [&[2, 2][..], &[1, 2], &[1, 1, 2], &[2, 3], &[1, 2, 2]] {
            let f = form(parts);
            let mut expected: Vec<Vec<i64>> =
                box_values(&f, 6).into_iter().filter(|(_, v)| *v == 1).map(|(x, _)| x).collect();
            expected.sort();
            let mut got: Vec<Vec<i64>> = f.positive_roots().unwrap().into_iter().map(|d| d.values().to_vec()).collect();
            got.sort();
            assert_eq!(got, expected, "{parts:?}");
        }
    }

    #[test]
    fn weak_positivity_matches_brute_force() {
        for parts in [&[1, 3][..], &[2, 3], &[1, 1, 3], &[3, 3], &[1, 2, 3], &[2, 2, 2]] {
            let f = form(parts);
            let brute = box_values(&f, 3).iter().all(|(_, v)| *v > 0);
            assert_eq!(f.is_weakly_positive_within(3).holds(), brute, "{parts:?}");
        }
    }

    #[test]
    fn projectives_are_roots() {
        let f = form(&[1, 2, 3]);
        let roots = f.positive_roots().unwrap();
        for v in f.quiver().vertices() {
            assert!(roots.contains(&f.quiver().projective_vector(*v).unwrap()));
        }
    }

    #[test]
    fn corank0_examples() {
        assert_eq!(form(&[2, 2]).corank0().unwrap(), 0);
        assert_eq!(form(&[3, 6]).corank0().unwrap(), 1);
        assert_eq!(form(&[3, 3, 3]).corank0().unwrap(), 1);
        assert_eq!(form(&[5, 5]).corank0().unwrap(), 1);
    }

    #[test]
    fn nullroots() {
        let r = form(&[3, 6]).minimal_nullroot().unwrap();
        assert!(r.is_sincere());
        assert_eq!(form(&[3, 6]).eval(&r).unwrap(), 0);
        assert!(form(&[1, 2, 6]).minimal_nullroot().unwrap().is_sincere());
        assert_eq!(form(&[3, 3, 3]).minimal_nullroot(), Err(Error::RadicalRank(2)));
    }

    #[test]
    fn verdict_json() {
        let v = form(&[1, 3, 4]).is_weakly_positive();
        let s = serde_json::to_string(&v).unwrap();
        assert!(s.starts_with(r#"{"decision":"fails","witness":{"lambda":[1,3,4]"#));
        let back: FormVerdict = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}
