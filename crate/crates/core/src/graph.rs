//! Entry graph of the extremality system when every minimal zero has support of
//! size two.
//!
//! With unit diagonal such a zero is `(e_i + e_j) / 2`, so each equation reads
//! `X_ik + X_jk = 0` and links two entry positions. The solution space then has
//! one free parameter per bipartite connected component: entries in a component
//! with an odd cycle are forced to zero, entries in a bipartite component share
//! one absolute value with opposite signs across the two colour classes.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use num_traits::Zero as _;

use crate::error::{Error, Result};
use crate::linalg::{int, rat, triangle_len, upper_index, upper_position, SymMatrix};
use crate::zeros::MinimalZeroList;

/// Upper-triangle position `(i, j)`, `i <= j`, zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EntryVertex {
    pub i: usize,
    pub j: usize,
}

impl EntryVertex {
    pub fn new(i: usize, j: usize) -> Self {
        if i <= j {
            Self { i, j }
        } else {
            Self { i: j, j: i }
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.i == self.j
    }

    /// Compact one-based label, `12` for `(0, 1)`; ambiguous past order 9.
    pub fn short_label(&self) -> String {
        format!("{}{}", self.i + 1, self.j + 1)
    }

    /// DOT node name, `X1_2` for `(0, 1)`.
    pub fn node_name(&self) -> String {
        format!("X{}_{}", self.i + 1, self.j + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureGraph {
    order: usize,
    /// Edges as pairs of vertex ids (upper-triangle indices), smaller id first.
    edges: BTreeSet<(usize, usize)>,
}

impl StructureGraph {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn vertex_count(&self) -> usize {
        triangle_len(self.order)
    }

    pub fn vertex(&self, id: usize) -> EntryVertex {
        let (i, j) = upper_position(self.order, id);
        EntryVertex { i, j }
    }

    pub fn vertex_id(&self, v: EntryVertex) -> usize {
        upper_index(self.order, v.i, v.j)
    }

    pub fn vertices(&self) -> Vec<EntryVertex> {
        (0..self.vertex_count()).map(|id| self.vertex(id)).collect()
    }

    pub fn edges(&self) -> Vec<(EntryVertex, EntryVertex)> {
        self.edges
            .iter()
            .map(|&(a, b)| (self.vertex(a), self.vertex(b)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: EntryVertex, b: EntryVertex) -> bool {
        let (x, y) = (self.vertex_id(a), self.vertex_id(b));
        self.edges.contains(&(x.min(y), x.max(y)))
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }
}

pub fn build_graph(a: &SymMatrix, zeros: &MinimalZeroList) -> Result<StructureGraph> {
    let n = a.order();
    if zeros.matrix().order() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: zeros.matrix().order(),
        });
    }
    if !a.is_unit_diagonal() {
        return Err(Error::NotUnitDiagonal);
    }
    let half = rat(1, 2);
    let mut edges = BTreeSet::new();
    for zero in zeros.zeros() {
        let s = zero.support();
        if s.len() != 2 {
            return Err(Error::SupportCardinalityNotTwo {
                support: s.to_string(),
            });
        }
        let (i, j) = (s.indices()[0], s.indices()[1]);
        let u = zero.coordinates();
        assert!(
            u[i] == half && u[j] == half,
            "support-two zero of a unit-diagonal copositive matrix must be (1/2, 1/2) on {s}"
        );
        let au = a.mul_vec(u)?;
        for (k, value) in au.iter().enumerate() {
            if !value.is_zero() {
                continue;
            }
            let x = upper_index(n, i, k);
            let y = upper_index(n, j, k);
            assert_ne!(x, y, "an equation X_ik + X_jk = 0 with i != j joins distinct entries");
            edges.insert((x.min(y), x.max(y)));
        }
    }
    Ok(StructureGraph { order: n, edges })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<EntryVertex>,
    pub bipartite: bool,
    /// Colour classes for bipartite components; the class of the first vertex comes first.
    pub classes: Option<(Vec<EntryVertex>, Vec<EntryVertex>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    pub order: usize,
    pub components: Vec<Component>,
    pub bipartite_count: usize,
}

impl ComponentReport {
    pub fn component_of(&self, v: EntryVertex) -> Option<usize> {
        self.components.iter().position(|c| c.vertices.contains(&v))
    }
}

/// Connected components by breadth-first two-colouring; a colour conflict
/// marks an odd cycle.
pub fn component_analysis(g: &StructureGraph) -> ComponentReport {
    let adj = g.adjacency();
    let mut colour: Vec<Option<bool>> = vec![None; g.vertex_count()];
    let mut components = Vec::new();
    for root in 0..g.vertex_count() {
        if colour[root].is_some() {
            continue;
        }
        colour[root] = Some(false);
        let mut queue = VecDeque::from([root]);
        let mut members = vec![root];
        let mut bipartite = true;
        while let Some(v) = queue.pop_front() {
            let cv = colour[v].expect("queued vertices are coloured");
            for &w in &adj[v] {
                match colour[w] {
                    None => {
                        colour[w] = Some(!cv);
                        members.push(w);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cv => bipartite = false,
                    Some(_) => {}
                }
            }
        }
        members.sort_unstable();
        let classes = bipartite.then(|| {
            let (same, other): (Vec<usize>, Vec<usize>) =
                members.iter().partition(|&&v| colour[v] == Some(false));
            (
                same.into_iter().map(|v| g.vertex(v)).collect(),
                other.into_iter().map(|v| g.vertex(v)).collect(),
            )
        });
        components.push(Component {
            vertices: members.into_iter().map(|v| g.vertex(v)).collect(),
            bipartite,
            classes,
        });
    }
    let bipartite_count = components.iter().filter(|c| c.bipartite).count();
    ComponentReport {
        order: g.order(),
        components,
        bipartite_count,
    }
}

/// Dimension of the solution space of the two-term system.
pub fn dimension_via_graph(report: &ComponentReport) -> usize {
    report.bipartite_count
}

/// The `{-1,0,1}` matrix spanning the solution space when it is one-dimensional,
/// signed so that the diagonal is `+1`.
pub fn reconstruct_pattern(report: &ComponentReport) -> Result<SymMatrix> {
    if report.bipartite_count != 1 {
        return Err(Error::AmbiguousPattern {
            bipartite_count: report.bipartite_count,
        });
    }
    let component = report
        .components
        .iter()
        .find(|c| c.bipartite)
        .expect("exactly one bipartite component");
    let (first, second) = component.classes.as_ref().expect("bipartite components carry classes");
    let n = report.order;
    let diagonal: Vec<EntryVertex> = (0..n).map(|i| EntryVertex::new(i, i)).collect();
    let (positive, negative) = if diagonal.iter().all(|d| first.contains(d)) {
        (first, second)
    } else if diagonal.iter().all(|d| second.contains(d)) {
        (second, first)
    } else {
        return Err(Error::InconsistentDiagonal);
    };
    Ok(SymMatrix::from_fn(n, |i, j| {
        let v = EntryVertex::new(i, j);
        if positive.contains(&v) {
            int(1)
        } else if negative.contains(&v) {
            int(-1)
        } else {
            int(0)
        }
    }))
}

/// Graphviz rendering: one node per entry, component index and colour class as
/// node attributes.
pub fn to_dot(g: &StructureGraph, report: &ComponentReport) -> String {
    let mut out = String::from("graph structure {\n");
    for (ci, c) in report.components.iter().enumerate() {
        for v in &c.vertices {
            let class = match &c.classes {
                Some((first, _)) if first.contains(v) => "0",
                Some(_) => "1",
                None => "none",
            };
            writeln!(
                out,
                "  {} [label=\"X{}{}\", component={}, bipartite={}, class=\"{}\"];",
                v.node_name(),
                v.i + 1,
                v.j + 1,
                ci,
                c.bipartite,
                class
            )
            .expect("writing to a String cannot fail");
        }
    }
    for (a, b) in g.edges() {
        writeln!(out, "  {} -- {};", a.node_name(), b.node_name())
            .expect("writing to a String cannot fail");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::{horn, rank_one};
    use crate::zeros::{minimal_zeros, Precondition};

    fn graph_of(a: &SymMatrix) -> StructureGraph {
        let z = minimal_zeros(a, Precondition::Check).unwrap();
        build_graph(a, &z).unwrap()
    }

    fn labels(vs: &[EntryVertex]) -> Vec<String> {
        vs.iter().map(|v| v.short_label()).collect()
    }

    fn edge_labels(g: &StructureGraph) -> Vec<(String, String)> {
        g.edges()
            .iter()
            .map(|(a, b)| (a.short_label(), b.short_label()))
            .collect()
    }

    fn pairs(p: &[(&str, &str)]) -> Vec<(String, String)> {
        p.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    #[test]
    fn two_by_two_path() {
        let a = SymMatrix::from_int_rows(&[&[1, -1], &[-1, 1]]);
        let g = graph_of(&a);
        assert_eq!(edge_labels(&g), pairs(&[("11", "12"), ("12", "22")]));
        let r = component_analysis(&g);
        assert_eq!(r.components.len(), 1);
        let (c0, c1) = r.components[0].classes.clone().unwrap();
        assert_eq!(labels(&c0), ["11", "22"]);
        assert_eq!(labels(&c1), ["12"]);
        assert_eq!(dimension_via_graph(&r), 1);
        assert_eq!(reconstruct_pattern(&r).unwrap(), a);
    }

    #[test]
    fn rank_one_even_cycle() {
        let a = rank_one(&[1, -1, 1]);
        let g = graph_of(&a);
        let mut expected = pairs(&[
            ("11", "12"),
            ("12", "22"),
            ("13", "23"),
            ("12", "13"),
            ("22", "23"),
            ("23", "33"),
        ]);
        expected.sort();
        let mut got = edge_labels(&g);
        got.sort();
        assert_eq!(got, expected);
        let r = component_analysis(&g);
        assert_eq!(r.components.len(), 1);
        assert!(r.components[0].bipartite);
        let (c0, c1) = r.components[0].classes.clone().unwrap();
        assert_eq!(labels(&c0), ["11", "13", "22", "33"]);
        assert_eq!(labels(&c1), ["12", "23"]);
        assert_eq!(reconstruct_pattern(&r).unwrap(), a);
    }

    #[test]
    fn isolated_vertices_are_bipartite() {
        let a = SymMatrix::from_int_rows(&[&[1, -1, 1], &[-1, 1, 1], &[1, 1, 1]]);
        let g = graph_of(&a);
        assert_eq!(edge_labels(&g), pairs(&[("11", "12"), ("12", "22")]));
        let r = component_analysis(&g);
        assert_eq!(r.components.len(), 4);
        assert!(r.components.iter().all(|c| c.bipartite));
        assert_eq!(dimension_via_graph(&r), 4);
        assert_eq!(
            reconstruct_pattern(&r),
            Err(Error::AmbiguousPattern { bipartite_count: 4 })
        );
    }

    #[test]
    fn odd_cycle_detected() {
        // triangle on three vertices plus nothing else
        let g = StructureGraph {
            order: 2,
            edges: BTreeSet::from([(0, 1), (1, 2), (0, 2)]),
        };
        let r = component_analysis(&g);
        assert_eq!(r.components.len(), 1);
        assert!(!r.components[0].bipartite);
        assert_eq!(r.bipartite_count, 0);
    }

    #[test]
    fn horn_graph_is_connected_bipartite() {
        let g = graph_of(&horn());
        let r = component_analysis(&g);
        assert_eq!(r.components.len(), 1);
        assert!(r.components[0].bipartite);
        assert_eq!(r.components[0].vertices.len(), 15);
        assert_eq!(reconstruct_pattern(&r).unwrap(), horn());
    }

    #[test]
    fn refuses_bad_input() {
        let a = SymMatrix::from_int_rows(&[&[4, -6], &[-6, 9]]);
        let z = minimal_zeros(&a, Precondition::Check).unwrap();
        assert_eq!(build_graph(&a, &z), Err(Error::NotUnitDiagonal));
    }

    #[test]
    fn dot_has_one_node_per_entry() {
        let a = SymMatrix::from_int_rows(&[&[1, -1], &[-1, 1]]);
        let g = graph_of(&a);
        let dot = to_dot(&g, &component_analysis(&g));
        assert_eq!(dot.matches("[label=").count(), 3);
        assert!(dot.contains("X1_1 -- X1_2;"));
        assert!(dot.contains("X1_2 -- X2_2;"));
    }
}
