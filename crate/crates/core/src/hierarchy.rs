//! The partitions up to a given size, ordered by inclusion of diagrams and
//! labelled by representation type.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::classify::{classify, RepType};
use crate::partition::{partitions_of, Partition};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HierarchyNode {
    pub lambda: Partition,
    pub label: String,
    pub rep_type: RepType,
    /// Wild, with every one-box-smaller diagram not wild.
    pub minimal_wild: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hierarchy {
    pub max_n: usize,
    pub nodes: Vec<HierarchyNode>,
    /// Cover relations `(smaller, larger)` as node indices.
    pub edges: Vec<(usize, usize)>,
}

pub fn hierarchy(max_n: usize) -> Hierarchy {
    let mut nodes = Vec::new();
    let mut index = BTreeMap::new();
    for n in 1..=max_n {
        for lambda in partitions_of(n) {
            index.insert(lambda.clone(), nodes.len());
            nodes.push(HierarchyNode { label: lambda.to_potency(), rep_type: classify(&lambda), lambda, minimal_wild: false });
        }
    }
    let mut edges = Vec::new();
    for (k, node) in nodes.iter().enumerate() {
        for up in node.lambda.covers() {
            if let Some(&u) = index.get(&up) {
                edges.push((k, u));
            }
        }
    }
    let mut no_wild_below = vec![true; nodes.len()];
    for &(a, b) in &edges {
        if nodes[a].rep_type == RepType::Wild {
            no_wild_below[b] = false;
        }
    }
    for (node, ok) in nodes.iter_mut().zip(no_wild_below) {
        node.minimal_wild = node.rep_type == RepType::Wild && ok;
    }
    Hierarchy { max_n, nodes, edges }
}

impl Hierarchy {
    pub fn minimal_wild(&self) -> Vec<&Partition> {
        self.nodes.iter().filter(|n| n.minimal_wild).map(|n| &n.lambda).collect()
    }

    pub fn to_dot(&self) -> String {
        let colour = |t: RepType| match t {
            RepType::Finite => "palegreen",
            RepType::TameConcealed => "gold",
            RepType::TameNotConcealed => "lightgoldenrod1",
            RepType::Wild => "salmon",
        };
        let mut out = String::from("digraph hierarchy {\n  rankdir=BT;\n  node [shape=box, style=filled];\n");
        for n in 1..=self.max_n {
            out.push_str("  { rank=same;");
            for (k, _) in self.nodes.iter().enumerate().filter(|(_, x)| x.lambda.size() == n) {
                let _ = write!(out, " n{k};");
            }
            out.push_str(" }\n");
        }
        for (k, node) in self.nodes.iter().enumerate() {
            let pen = if node.minimal_wild { ", penwidth=3" } else { "" };
            let _ = writeln!(out, "  n{k} [label=\"({})\", fillcolor={}, tooltip=\"{}\"{pen}];", node.label, colour(node.rep_type), node.rep_type);
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_edges() {
        let h = hierarchy(4);
        assert_eq!(h.nodes.len(), 1 + 2 + 3 + 5);
        assert!(h.edges.iter().all(|&(a, b)| h.nodes[a].lambda.is_subdiagram_of(&h.nodes[b].lambda)));
        assert!(h.nodes.iter().all(|n| n.rep_type == RepType::Finite));
    }

    #[test]
    fn minimal_wild_frontier_up_to_ten() {
        let h = hierarchy(10);
        let mut got: Vec<Partition> = h.minimal_wild().into_iter().cloned().collect();
        got.sort();
        let mut expected: Vec<Partition> = [
            &[4, 6][..],
            &[3, 7],
            &[2, 3, 4],
            &[1, 1, 3, 4],
            &[1, 3, 5],
            &[1, 2, 7],
            &[2, 2, 6],
            &[1, 1, 2, 5],
        ]
        .iter()
        .flat_map(|p| {
            let l = Partition::of(p);
            [l.transpose(), l]
        })
        .collect();
        expected.sort();
        expected.dedup();
        assert_eq!(got, expected);
    }

    #[test]
    fn dot_is_deterministic() {
        let a = hierarchy(6).to_dot();
        assert_eq!(a, hierarchy(6).to_dot());
        assert!(a.contains("rankdir=BT"));
    }
}
