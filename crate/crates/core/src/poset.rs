//! Finite posets given by an explicit order relation, with Hasse diagrams.

use serde::Serialize;

#[derive(Debug, Clone)]
pub struct Poset<T> {
    nodes: Vec<T>,
    leq: Vec<Vec<bool>>,
}

/// JSON view: `{nodes, covering_edges}` with edges as `[lower, upper]` index pairs.
#[derive(Debug, Clone, Serialize)]
pub struct PosetJson<N: Serialize> {
    pub relation: String,
    pub nodes: Vec<N>,
    pub covering_edges: Vec<[usize; 2]>,
    pub minimal: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub reflexive: bool,
    pub antisymmetric: bool,
    pub transitive: bool,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.reflexive && self.antisymmetric && self.transitive
    }
}

impl<T> Poset<T> {
    /// Builds the poset by evaluating `leq(a, b)` on every ordered pair.
    pub fn from_relation(nodes: Vec<T>, mut leq: impl FnMut(&T, &T) -> bool) -> Self {
        let rel = nodes
            .iter()
            .map(|a| nodes.iter().map(|b| leq(a, b)).collect())
            .collect();
        Poset { nodes, leq: rel }
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.len();
        let reflexive = (0..n).all(|i| self.leq[i][i]);
        let antisymmetric = (0..n).all(|i| (0..n).all(|j| i == j || !(self.leq[i][j] && self.leq[j][i])));
        let transitive = (0..n).all(|i| {
            (0..n).all(|j| !self.leq[i][j] || (0..n).all(|k| !self.leq[j][k] || self.leq[i][k]))
        });
        AxiomReport {
            reflexive,
            antisymmetric,
            transitive,
        }
    }

    /// Pairs `(i, j)` with `i < j` and nothing strictly between.
    pub fn covering_edges(&self) -> Vec<[usize; 2]> {
        let n = self.len();
        let lt = |i: usize, j: usize| i != j && self.leq[i][j];
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if lt(i, j) && !(0..n).any(|k| lt(i, k) && lt(k, j)) {
                    edges.push([i, j]);
                }
            }
        }
        edges
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| !(0..self.len()).any(|j| j != i && self.leq[j][i]))
            .collect()
    }

    /// Indices `j` with `i ≤ j`.
    pub fn up_set(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.leq[i][j]).collect()
    }

    /// Indices `j` with `j ≤ i`.
    pub fn down_set(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.leq[j][i]).collect()
    }

    pub fn position(&self, pred: impl Fn(&T) -> bool) -> Option<usize> {
        self.nodes.iter().position(pred)
    }

    pub fn to_json<N: Serialize>(&self, relation: &str, view: impl Fn(&T) -> N) -> PosetJson<N> {
        PosetJson {
            relation: relation.to_string(),
            nodes: self.nodes.iter().map(view).collect(),
            covering_edges: self.covering_edges(),
            minimal: self.minimal(),
        }
    }

    /// Graphviz digraph of the Hasse diagram, edges pointing upward in the order.
    pub fn to_dot(&self, graph_name: &str, label: impl Fn(&T) -> String) -> String {
        let mut out = format!("digraph \"{graph_name}\" {{\n  rankdir=BT;\n");
        for (i, node) in self.nodes.iter().enumerate() {
            let text = label(node).replace('"', "\\\"");
            out.push_str(&format!("  n{i} [label=\"{text}\"];\n"));
        }
        for [a, b] in self.covering_edges() {
            out.push_str(&format!("  n{a} -> n{b};\n"));
        }
        out.push_str("}\n");
        out
    }
}
