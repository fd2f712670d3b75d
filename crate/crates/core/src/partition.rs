//! Partitions stored as non-decreasing sequences of positive parts.
//!
//! The Young diagram of a partition is drawn with its longest row at the
//! bottom; row `i` counted from the bottom has `parts[l - i]` boxes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

/// Size, length and number of distinct parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Measures {
    pub size: usize,
    pub length: usize,
    pub steps: usize,
}

impl Partition {
    /// Builds a partition from arbitrary positive parts; the parts are sorted.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptyPartition);
        }
        if parts.contains(&0) {
            return Err(Error::PartitionSyntax("0".into()));
        }
        parts.sort_unstable();
        Ok(Partition { parts })
    }

    /// Panicking constructor for literals in tests and tables.
    pub fn of(parts: &[usize]) -> Self {
        Self::new(parts.to_vec()).expect("valid partition literal")
    }

    /// The single-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        Self::of(&[n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn steps(&self) -> usize {
        let mut s = 1;
        for w in self.parts.windows(2) {
            if w[0] != w[1] {
                s += 1;
            }
        }
        s
    }

    pub fn measures(&self) -> Measures {
        Measures {
            size: self.size(),
            length: self.len(),
            steps: self.steps(),
        }
    }

    /// Row lengths of the Young diagram from the bottom row upwards
    /// (non-increasing).
    pub fn rows(&self) -> Vec<usize> {
        self.parts.iter().rev().copied().collect()
    }

    /// Length of row `i` (1-based from the bottom), zero above the diagram.
    pub fn row_len(&self, i: usize) -> usize {
        if i == 0 || i > self.parts.len() {
            0
        } else {
            self.parts[self.parts.len() - i]
        }
    }

    /// Height of column `j` (1-based from the left).
    pub fn col_len(&self, j: usize) -> usize {
        if j == 0 {
            return 0;
        }
        self.parts.iter().filter(|&&p| p >= j).count()
    }

    pub fn contains_box(&self, i: usize, j: usize) -> bool {
        i >= 1 && j >= 1 && j <= self.row_len(i)
    }

    pub fn transpose(&self) -> Partition {
        let width = *self.parts.last().expect("non-empty");
        let cols = (1..=width).map(|j| self.col_len(j)).collect();
        Partition::new(cols).expect("column heights are positive")
    }

    /// Bottom-left aligned containment of Young diagrams: every row of `self`
    /// (counted from the bottom) fits into the corresponding row of `other`.
    pub fn is_subdiagram_of(&self, other: &Partition) -> bool {
        self.len() <= other.len() && (1..=self.len()).all(|i| self.row_len(i) <= other.row_len(i))
    }

    /// All translations `(di, dj)` placing `self`'s diagram inside `other`'s,
    /// i.e. box `(i, j)` goes to `(i + di, j + dj)`. A translated Young
    /// diagram is a convex subquiver of the staircase quiver.
    pub fn placements_in(&self, other: &Partition) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        if self.len() > other.len() {
            return out;
        }
        for di in 0..=(other.len() - self.len()) {
            let max_dj = other.row_len(di + 1);
            for dj in 0..=max_dj {
                let fits = (1..=self.len()).all(|i| self.row_len(i) + dj <= other.row_len(i + di));
                if fits {
                    out.push((di, dj));
                }
            }
        }
        out
    }

    /// Partitions covering `self` in the subdiagram order (one box added).
    pub fn covers(&self) -> Vec<Partition> {
        let rows = self.rows();
        let mut out = Vec::new();
        for i in 0..=rows.len() {
            let cur = rows.get(i).copied().unwrap_or(0);
            let below = if i == 0 { usize::MAX } else { rows[i - 1] };
            if cur < below {
                let mut r = rows.clone();
                if i == r.len() {
                    r.push(1);
                } else {
                    r[i] += 1;
                }
                out.push(Partition::new(r).expect("positive rows"));
            }
        }
        out.sort();
        out
    }

    /// Canonical potency notation, e.g. `1^2,2^3,6,8^2`.
    pub fn to_potency(&self) -> String {
        let mut items = Vec::new();
        let mut k = 0;
        while k < self.parts.len() {
            let v = self.parts[k];
            let mut m = 1;
            while k + m < self.parts.len() && self.parts[k + m] == v {
                m += 1;
            }
            if m == 1 {
                items.push(v.to_string());
            } else {
                items.push(format!("{v}^{m}"));
            }
            k += m;
        }
        items.join(",")
    }
}

/// Parses `item ("," item)*` with `item := INT | INT "^" INT`; whitespace is
/// ignored and the result is sorted.
pub fn parse_partition(text: &str) -> Result<Partition> {
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let cleaned = cleaned.trim_start_matches('(').trim_end_matches(')');
    if cleaned.is_empty() {
        return Err(Error::EmptyPartition);
    }
    let mut parts = Vec::new();
    for item in cleaned.split(',') {
        let bad = || Error::PartitionSyntax(item.to_string());
        let (value, mult) = match item.split_once('^') {
            Some((v, k)) => (v, k),
            None => (item, "1"),
        };
        let value: usize = value.parse().map_err(|_| bad())?;
        let mult: usize = mult.parse().map_err(|_| bad())?;
        if value == 0 || mult == 0 {
            return Err(bad());
        }
        parts.extend(std::iter::repeat_n(value, mult));
    }
    Partition::new(parts)
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_partition(s)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_potency())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n`, in lexicographic order of their sorted parts.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in min..=remaining {
            // later parts are at least p, so p must leave room for them
            if p != remaining && remaining - p < p {
                continue;
            }
            cur.push(p);
            rec(remaining - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, 1, &mut Vec::new(), &mut out);
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_potency_example() {
        let p = parse_partition("1^2,2^3,6,8^2").unwrap();
        assert_eq!(p.parts(), &[1, 1, 2, 2, 2, 6, 8, 8]);
        assert_eq!(p.to_potency(), "1^2,2^3,6,8^2");
        assert_eq!(parse_partition("5").unwrap().parts(), &[5]);
        assert_eq!(parse_partition("3, 1 ,2").unwrap().parts(), &[1, 2, 3]);
    }

    #[test]
    fn parse_errors_name_token() {
        match parse_partition("1,0,2") {
            Err(Error::PartitionSyntax(t)) => assert_eq!(t, "0"),
            other => panic!("unexpected {other:?}"),
        }
        match parse_partition("2^x") {
            Err(Error::PartitionSyntax(t)) => assert_eq!(t, "2^x"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_partition("-3").is_err());
        assert!(parse_partition("").is_err());
        assert!(parse_partition("2^0").is_err());
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(Partition::of(&[1, 1, 3, 4]).transpose(), Partition::of(&[1, 2, 2, 4]));
        assert_eq!(Partition::row(5).transpose(), Partition::of(&[1, 1, 1, 1, 1]));
        assert_eq!(Partition::of(&[1, 1, 2, 3]).transpose(), Partition::of(&[1, 2, 4]));
    }

    #[test]
    fn measures_examples() {
        let m = Partition::of(&[1, 1, 2, 2, 2, 6, 8, 8]).measures();
        assert_eq!((m.size, m.length, m.steps), (30, 8, 4));
        let m = Partition::row(5).measures();
        assert_eq!((m.size, m.length, m.steps), (5, 1, 1));
        let m = Partition::of(&[3, 3, 3]).measures();
        assert_eq!((m.size, m.length, m.steps), (9, 3, 1));
    }

    #[test]
    fn subdiagram_examples() {
        assert!(Partition::of(&[3, 6]).is_subdiagram_of(&Partition::of(&[4, 6])));
        assert!(!Partition::of(&[2, 2]).is_subdiagram_of(&Partition::of(&[1, 4])));
        let l = Partition::of(&[1, 2, 3]);
        assert!(l.is_subdiagram_of(&l));
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=12).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
    }

    #[test]
    fn placements_include_translations() {
        let small = Partition::of(&[2]);
        let big = Partition::of(&[2, 3]);
        // row 1 has 3 boxes, row 2 has 2
        assert_eq!(small.placements_in(&big), vec![(0, 0), (0, 1), (1, 0)]);
    }

    #[test]
    fn covers_add_one_box() {
        let c = Partition::of(&[1, 2]).covers();
        assert_eq!(c, vec![Partition::of(&[1, 1, 2]), Partition::of(&[1, 3]), Partition::of(&[2, 2])]);
        for p in &c {
            assert!(Partition::of(&[1, 2]).is_subdiagram_of(p));
        }
    }
}
