//! Whitehead graphs, Whitehead automorphisms and the separability test.
//!
//! The graph of a system of cyclic words over `F_k` has one vertex per
//! letter (`2k` in all) and, for each cyclically adjacent pair `(a, b)` in
//! a word, an edge `{a⁻¹, b}`.

mod automorphism;
mod dot;
mod separability;

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::freegroup::{CyclicWord, Letter};

pub use automorphism::{apply_move, WhiteheadMove};
pub use dot::to_dot;
pub(crate) use separability::best_cut_move;
pub use separability::{
    cut_vertex_move, decide_separability, decide_separability_with, DecideOptions, SeparabilityVerdict,
    SeparabilityWitness, TraceStep, Verdict,
};

/// One edge of a Whitehead graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WhiteheadEdge {
    /// Vertex indices (see [`Letter::vertex`]), smaller first.
    pub ends: (usize, usize),
    /// Index of the word in the system.
    pub curve: usize,
    /// Position of the second letter of the pair in that word.
    pub position: usize,
}

/// Whitehead multigraph of a curve system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhiteheadGraph {
    rank: usize,
    system: Vec<CyclicWord>,
    edges: Vec<WhiteheadEdge>,
    adjacency: Vec<Vec<usize>>,
}

/// Builds the Whitehead graph of `system` over a rank-`rank` basis.
pub fn build_graph(rank: usize, system: &[CyclicWord]) -> WhiteheadGraph {
    WhiteheadGraph::build(rank, system)
}

impl WhiteheadGraph {
    /// Builds the graph; every one of the `2·rank` vertices is present.
    pub fn build(rank: usize, system: &[CyclicWord]) -> Self {
        let mut edges = Vec::new();
        let mut adjacency = alloc::vec![Vec::new(); 2 * rank];
        for (c, w) in system.iter().enumerate() {
            let l = w.letters();
            let n = l.len();
            for i in 0..n {
                let a = l[(i + n - 1) % n].inv().vertex();
                let b = l[i].vertex();
                edges.push(WhiteheadEdge { ends: (a.min(b), a.max(b)), curve: c, position: i });
                adjacency[a].push(b);
                adjacency[b].push(a);
            }
        }
        for adj in adjacency.iter_mut() {
            adj.sort_unstable();
        }
        WhiteheadGraph { rank, system: system.to_vec(), edges, adjacency }
    }

    /// Rank of the basis.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The words the graph was built from.
    pub fn system(&self) -> &[CyclicWord] {
        &self.system
    }

    /// Number of vertices, `2·rank`.
    pub fn vertex_count(&self) -> usize {
        2 * self.rank
    }

    /// Edges in (curve, position) order.
    pub fn edges(&self) -> &[WhiteheadEdge] {
        &self.edges
    }

    /// Multigraph degree.
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Neighbours with multiplicity, sorted.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// Number of edges between `u` and `v`.
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.adjacency[u].iter().filter(|&&w| w == v).count()
    }

    /// Number of edges with exactly one end in `set`.
    pub fn capacity(&self, set: &[usize]) -> usize {
        self.edges.iter().filter(|e| set.contains(&e.ends.0) != set.contains(&e.ends.1)).count()
    }

    /// Connected components after deleting `removed`; each sorted, listed
    /// by smallest vertex. Isolated vertices form their own components.
    pub fn components_without(&self, removed: &[usize]) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut comp = alloc::vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX || removed.contains(&s) {
                continue;
            }
            let id = out.len();
            let mut members = alloc::vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let u = members[i];
                i += 1;
                for &w in &self.adjacency[u] {
                    if comp[w] == usize::MAX && !removed.contains(&w) {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Connected components.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_without(&[])
    }

    /// True when all `2·rank` vertices lie in one component.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Number of components that contain at least one vertex of positive
    /// degree, after deleting `removed`.
    fn nontrivial_components_without(&self, removed: &[usize]) -> usize {
        self.components_without(removed).iter().filter(|c| c.iter().any(|&v| self.degree(v) > 0)).count()
    }

    /// Articulation points of the underlying simple graph.
    pub fn cut_vertices(&self) -> Vec<usize> {
        let base = self.nontrivial_components_without(&[]);
        (0..self.vertex_count())
            .filter(|&v| self.degree(v) > 0 && self.nontrivial_components_without(&[v]) > base)
            .collect()
    }

    /// Vertices of degree one.
    pub fn valence_one(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| self.degree(v) == 1).collect()
    }

    /// Generators `g` occurring in the system such that deleting both `g`
    /// and `g⁻¹` increases the number of components carrying edges. A
    /// pattern is certified when a single cut-vertex automorphism at `g` or
    /// `g⁻¹` already increases the number of components.
    pub fn bridge_patterns(&self) -> Vec<BridgePattern> {
        let mut out = Vec::new();
        let base = self.nontrivial_components_without(&[]);
        for g in 0..self.rank {
            if self.degree(2 * g) == 0 {
                continue;
            }
            let removed = [2 * g, 2 * g + 1];
            let sides: Vec<Vec<usize>> = self
                .components_without(&removed)
                .into_iter()
                .filter(|c| self.edges.iter().any(|e| c.contains(&e.ends.0) && c.contains(&e.ends.1)))
                .collect();
            if sides.len() <= base {
                continue;
            }
            let certificate = self.certify_bridge(g);
            out.push(BridgePattern {
                generator: g,
                sides: sides.into_iter().map(|c| c.into_iter().map(Letter::from_vertex).collect()).collect(),
                certificate,
            });
        }
        out
    }

    fn certify_bridge(&self, g: usize) -> Option<WhiteheadMove> {
        let base = self.components().len();
        for v in [2 * g, 2 * g + 1] {
            for side in self.components_without(&[v]) {
                if side.contains(&(v ^ 1)) {
                    continue;
                }
                let mv = cut_vertex_move(v, &side);
                let image: Vec<CyclicWord> = self.system.iter().map(|w| mv.apply(w)).collect();
                if WhiteheadGraph::build(self.rank, &image).components().len() > base {
                    return Some(mv);
                }
            }
        }
        None
    }

    /// Components, cut vertices, valence-one vertices and bridge patterns.
    pub fn analyze(&self) -> GraphAnalysis {
        let to_letters = |v: Vec<usize>| v.into_iter().map(Letter::from_vertex).collect::<Vec<_>>();
        GraphAnalysis {
            components: self.components().into_iter().map(to_letters).collect(),
            cut_vertices: to_letters(self.cut_vertices()),
            valence_one: to_letters(self.valence_one()),
            bridges: self.bridge_patterns(),
        }
    }
}

/// Structural summary of a Whitehead graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphAnalysis {
    /// Connected components as letter sets.
    pub components: Vec<Vec<Letter>>,
    /// Articulation points.
    pub cut_vertices: Vec<Letter>,
    /// Degree-one vertices.
    pub valence_one: Vec<Letter>,
    /// Two-vertex bridge patterns.
    pub bridges: Vec<BridgePattern>,
}

/// A pair `{g, g⁻¹}` whose removal splits the edges into several sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgePattern {
    /// The generator `g`.
    pub generator: usize,
    /// Edge-carrying components of the graph minus `g` and `g⁻¹`.
    pub sides: Vec<Vec<Letter>>,
    /// A move at `g` or `g⁻¹` whose image graph is disconnected.
    pub certificate: Option<WhiteheadMove>,
}

/// Structural analysis of `graph`.
pub fn analyze(graph: &WhiteheadGraph) -> GraphAnalysis {
    graph.analyze()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::Basis;

    fn sys(b: &Basis, ws: &[&str]) -> Vec<CyclicWord> {
        ws.iter().map(|w| b.parse_cyclic(w).unwrap()).collect()
    }

    #[test]
    fn square_word_gives_four_cycle() {
        let b = Basis::new(["x", "y"]).unwrap();
        let g = build_graph(2, &sys(&b, &["x x y y"]));
        let mut ends: Vec<_> = g.edges().iter().map(|e| e.ends).collect();
        ends.sort_unstable();
        // x=0 x⁻¹=1 y=2 y⁻¹=3
        assert_eq!(ends, [(0, 1), (0, 3), (1, 2), (2, 3)]);
        let a = g.analyze();
        assert_eq!(a.components.len(), 1);
        assert!(a.cut_vertices.is_empty());
    }

    #[test]
    fn single_letter() {
        let b = Basis::new(["x", "y"]).unwrap();
        let g = build_graph(2, &sys(&b, &["x"]));
        assert_eq!(g.edges().len(), 1);
        assert_eq!(g.edges()[0].ends, (0, 1));
        assert_eq!(g.components().len(), 3);
    }

    #[test]
    fn path_has_middle_cut_vertex() {
        // x⁻¹—y—... : word "x y" gives edges {x⁻¹,y} and {y⁻¹,x}
        let b = Basis::new(["x", "y", "z"]).unwrap();
        let g = build_graph(3, &sys(&b, &["x y", "y^-1 z"]));
        // edges {x⁻¹,y},{y⁻¹,x},{y,z},{z⁻¹,y⁻¹}: path x⁻¹—y—z and x—y⁻¹—z⁻¹
        assert_eq!(g.cut_vertices(), [2, 3]);
    }

    #[test]
    fn degree_law() {
        let b = Basis::new(["x", "y", "z"]).unwrap();
        let s = sys(&b, &["x^-1 y x^-1 y x y^-1 x z^-1 x z^-1 x^-1 z"]);
        let g = build_graph(3, &s);
        let degs: Vec<usize> = (0..6).map(|v| g.degree(v)).collect();
        assert_eq!(degs, [6, 6, 3, 3, 3, 3]);
    }
}
