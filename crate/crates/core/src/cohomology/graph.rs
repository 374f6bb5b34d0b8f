//! Which pairs of columns commute in the plactic monoid.

use std::fmt::Write as _;

use serde::Serialize;

use crate::column::{commutes, Column};
use crate::letters::{columns_to_letters, rsk_normal_form};

#[derive(Clone, Debug, Serialize)]
pub struct CommutationGraph {
    pub n: usize,
    pub vertices: Vec<Column>,
    /// Unordered edges `(a, b)` with `a < b` in the column order.
    pub edges: Vec<(Column, Column)>,
}

/// Decides `ab = ba` by comparing insertion tableaux of the two letter
/// words.
pub fn commute_by_letters(a: Column, b: Column) -> bool {
    let ab = columns_to_letters(&[a, b]);
    let ba = columns_to_letters(&[b, a]);
    rsk_normal_form(&ab) == rsk_normal_form(&ba)
}

pub fn commutation_graph(n: usize) -> CommutationGraph {
    let vertices = Column::generators(n);
    let mut edges = Vec::new();
    for (i, &a) in vertices.iter().enumerate() {
        for &b in &vertices[i + 1..] {
            if commute_by_letters(a, b) {
                edges.push((a, b));
            }
        }
    }
    CommutationGraph { n, vertices, edges }
}

impl CommutationGraph {
    pub fn adjacent(&self, a: Column, b: Column) -> bool {
        self.edges.iter().any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
    }

    pub fn neighbours(&self, a: Column) -> Vec<Column> {
        self.vertices.iter().copied().filter(|&b| b != a && self.adjacent(a, b)).collect()
    }

    /// Number of `k`-cliques for `k = 0, 1, ...`, ending with the first zero.
    pub fn clique_profile(&self) -> Vec<usize> {
        let mut profile = vec![1];
        let mut level: Vec<Vec<usize>> = (0..self.vertices.len()).map(|i| vec![i]).collect();
        while !level.is_empty() {
            profile.push(level.len());
            let mut next = Vec::new();
            for clique in &level {
                let last = *clique.last().expect("nonempty");
                for j in last + 1..self.vertices.len() {
                    if clique.iter().all(|&i| self.adjacent(self.vertices[i], self.vertices[j])) {
                        let mut c = clique.clone();
                        c.push(j);
                        next.push(c);
                    }
                }
            }
            level = next;
        }
        profile.push(0);
        profile
    }

    /// Adjacency lists keyed by the column's display form.
    pub fn adjacency(&self) -> Vec<(String, Vec<String>)> {
        self.vertices
            .iter()
            .map(|&a| (a.to_string(), self.neighbours(a).iter().map(Column::to_string).collect()))
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let mut out = format!("graph commutation_{} {{\n", self.n);
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{v}\";");
        }
        for (a, b) in &self.edges {
            let _ = writeln!(out, "  \"{a}\" -- \"{b}\";");
        }
        out.push_str("}\n");
        out
    }

    /// Pairs on which the column-level commutation test disagrees with the
    /// letter-level one.
    pub fn disagreements_with_columns(&self) -> Vec<(Column, Column)> {
        let mut out = Vec::new();
        for (i, &a) in self.vertices.iter().enumerate() {
            for &b in &self.vertices[i + 1..] {
                if commutes(a, b) != self.adjacent(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}
