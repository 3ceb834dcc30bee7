//! Hypergraph data model: vertices are dense ids `0..n`, edges are sets of
//! vertices (parallel copies allowed), orientations pick one tail per edge.

use std::collections::BTreeSet;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge index {index} out of range (m = {count})")]
    EdgeOutOfRange { index: usize, count: usize },
    #[error("edge {index} is empty")]
    EmptyEdge { index: usize },
    #[error("edge {index} repeats vertex {vertex}")]
    RepeatedVertex { index: usize, vertex: usize },
    #[error("tail {tail} is not an endpoint of edge {edge}")]
    TailNotEndpoint { edge: usize, tail: usize },
    #[error("expected {edges} weights, got {weights}")]
    WeightCountMismatch { weights: usize, edges: usize },
}

/// A hyperedge: a nonempty set of distinct vertices, stored sorted.
/// `original_index` is the edge's position in the input edge list and is
/// preserved by subgraph extraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperedge {
    ends: Vec<usize>,
    original_index: usize,
}

impl Hyperedge {
    pub fn ends(&self) -> &[usize] {
        &self.ends
    }

    /// Number of endpoints; loops have dimension 1.
    pub fn dimension(&self) -> usize {
        self.ends.len()
    }

    pub fn is_loop(&self) -> bool {
        self.ends.len() == 1
    }

    pub fn original_index(&self) -> usize {
        self.original_index
    }

    pub fn contains(&self, v: usize) -> bool {
        self.ends.binary_search(&v).is_ok()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Hyperedge>,
    weights: Option<Vec<f64>>,
}

impl Hypergraph {
    /// Builds a hypergraph on vertices `0..n`. Each edge must be a nonempty
    /// set of distinct in-range vertices; endpoint order is normalized.
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        let edges = edges
            .into_iter()
            .enumerate()
            .map(|(index, ends)| normalize_edge(n, index, ends))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Hypergraph {
            n,
            edges,
            weights: None,
        })
    }

    /// Attaches per-edge weights. An empty weight list on an edgeless graph
    /// normalizes to "no weights" (the text format cannot tell them apart).
    pub fn with_weights(mut self, weights: Vec<f64>) -> Result<Self, GraphError> {
        if weights.len() != self.edges.len() {
            return Err(GraphError::WeightCountMismatch {
                weights: weights.len(),
                edges: self.edges.len(),
            });
        }
        self.weights = if weights.is_empty() {
            None
        } else {
            Some(weights)
        };
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Result<&Hyperedge, GraphError> {
        self.edges.get(index).ok_or(GraphError::EdgeOutOfRange {
            index,
            count: self.edges.len(),
        })
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    /// The hypergraph dimension: minimum edge dimension. None when edgeless.
    pub fn min_dimension(&self) -> Option<usize> {
        self.edges.iter().map(Hyperedge::dimension).min()
    }

    /// s*: maximum edge dimension. None when edgeless.
    pub fn max_dimension(&self) -> Option<usize> {
        self.edges.iter().map(Hyperedge::dimension).max()
    }

    /// Sorted list of vertices incident to at least one edge.
    pub fn support(&self) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        for e in &self.edges {
            for &v in e.ends() {
                seen[v] = true;
            }
        }
        (0..self.n).filter(|&v| seen[v]).collect()
    }

    /// The subgraph keeping exactly the given edges (original indices and
    /// weights carried over). Vertex set is unchanged.
    pub fn subgraph(&self, edge_indices: &[usize]) -> Result<Hypergraph, GraphError> {
        let mut edges = Vec::with_capacity(edge_indices.len());
        let mut weights = self.weights.as_ref().map(|_| Vec::new());
        for &i in edge_indices {
            edges.push(self.edge(i)?.clone());
            if let (Some(ws), Some(all)) = (weights.as_mut(), self.weights.as_ref()) {
                ws.push(all[i]);
            }
        }
        Ok(Hypergraph {
            n: self.n,
            edges,
            weights,
        })
    }

    /// Edges entirely inside the vertex set, in edge order with multiplicity.
    pub fn span_of_vertices(&self, vertices: &[usize]) -> Result<Vec<usize>, GraphError> {
        let mask = self.vertex_mask(vertices)?;
        Ok((0..self.edges.len())
            .filter(|&i| self.edges[i].ends().iter().all(|&v| mask[v]))
            .collect())
    }

    /// Union of the endpoint sets of the given edges.
    pub fn span_of_edges(&self, edge_indices: &[usize]) -> Result<BTreeSet<usize>, GraphError> {
        let mut out = BTreeSet::new();
        for &i in edge_indices {
            out.extend(self.edge(i)?.ends().iter().copied());
        }
        Ok(out)
    }

    /// (out-degree, in-degree, undirected degree) of a vertex set. Loops
    /// inside the set contribute to none of the three.
    pub fn degrees(
        &self,
        orientation: &Orientation,
        vertices: &[usize],
    ) -> Result<(usize, usize, usize), GraphError> {
        orientation.check(self)?;
        let mask = self.vertex_mask(vertices)?;
        let mut out = 0;
        let mut inward = 0;
        for (i, e) in self.edges.iter().enumerate() {
            let some_in = e.ends().iter().any(|&v| mask[v]);
            let some_out = e.ends().iter().any(|&v| !mask[v]);
            if !(some_in && some_out) {
                continue;
            }
            if mask[orientation.tail(i)] {
                out += 1;
            } else {
                inward += 1;
            }
        }
        Ok((out, inward, out + inward))
    }

    /// Vertices reachable from `v` by directed paths, where each edge is
    /// traversed from its tail to any other endpoint. Includes `v`.
    /// Deterministic depth-first order: lower edge index first, then lower
    /// endpoint id.
    pub fn reach(
        &self,
        orientation: &Orientation,
        v: usize,
    ) -> Result<BTreeSet<usize>, GraphError> {
        orientation.check(self)?;
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        let mut out_edges = vec![Vec::new(); self.n];
        for i in 0..self.edges.len() {
            out_edges[orientation.tail(i)].push(i);
        }
        let mut visited = vec![false; self.n];
        visited[v] = true;
        let mut stack = vec![v];
        let mut result = BTreeSet::new();
        result.insert(v);
        while let Some(u) = stack.pop() {
            for &e in &out_edges[u] {
                for &w in self.edges[e].ends() {
                    if !visited[w] {
                        visited[w] = true;
                        result.insert(w);
                        stack.push(w);
                    }
                }
            }
        }
        Ok(result)
    }

    fn vertex_mask(&self, vertices: &[usize]) -> Result<Vec<bool>, GraphError> {
        let mut mask = vec![false; self.n];
        for &v in vertices {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v,
                    n: self.n,
                });
            }
            mask[v] = true;
        }
        Ok(mask)
    }
}

fn normalize_edge(n: usize, index: usize, mut ends: Vec<usize>) -> Result<Hyperedge, GraphError> {
    if ends.is_empty() {
        return Err(GraphError::EmptyEdge { index });
    }
    for &v in &ends {
        if v >= n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n });
        }
    }
    ends.sort_unstable();
    for pair in ends.windows(2) {
        if pair[0] == pair[1] {
            return Err(GraphError::RepeatedVertex {
                index,
                vertex: pair[0],
            });
        }
    }
    Ok(Hyperedge {
        ends,
        original_index: index,
    })
}

/// Designates one endpoint of each edge as its tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    tails: Vec<usize>,
}

impl Orientation {
    pub fn new(graph: &Hypergraph, tails: Vec<usize>) -> Result<Self, GraphError> {
        if tails.len() != graph.edge_count() {
            return Err(GraphError::EdgeOutOfRange {
                index: tails.len(),
                count: graph.edge_count(),
            });
        }
        for (i, &t) in tails.iter().enumerate() {
            if !graph.edges()[i].contains(t) {
                return Err(GraphError::TailNotEndpoint { edge: i, tail: t });
            }
        }
        Ok(Orientation { tails })
    }

    pub fn tail(&self, edge: usize) -> usize {
        self.tails[edge]
    }

    pub fn tails(&self) -> &[usize] {
        &self.tails
    }

    fn check(&self, graph: &Hypergraph) -> Result<(), GraphError> {
        if self.tails.len() != graph.edge_count() {
            return Err(GraphError::EdgeOutOfRange {
                index: self.tails.len(),
                count: graph.edge_count(),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Hypergraph {
        Hypergraph::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(
            Hypergraph::new(2, vec![vec![0, 2]]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        ));
        assert!(matches!(
            Hypergraph::new(2, vec![vec![]]),
            Err(GraphError::EmptyEdge { index: 0 })
        ));
        assert!(matches!(
            Hypergraph::new(2, vec![vec![1, 1]]),
            Err(GraphError::RepeatedVertex {
                index: 0,
                vertex: 1
            })
        ));
    }

    #[test]
    fn span_of_vertices_examples() {
        let g = triangle();
        assert_eq!(g.span_of_vertices(&[0, 1]).unwrap(), vec![0]);
        assert_eq!(g.span_of_vertices(&[]).unwrap(), Vec::<usize>::new());

        let h = Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(h.span_of_vertices(&[0, 1, 2]).unwrap(), vec![0]);
        assert!(h.span_of_vertices(&[3]).is_err());
    }

    #[test]
    fn span_of_edges_examples() {
        let g = triangle();
        assert_eq!(g.span_of_edges(&[0, 1]).unwrap(), BTreeSet::from([0, 1, 2]));
        assert_eq!(g.span_of_edges(&[]).unwrap(), BTreeSet::new());
        let h = Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(h.span_of_edges(&[0]).unwrap(), BTreeSet::from([0, 1, 2]));
        assert!(h.span_of_edges(&[1]).is_err());
    }

    #[test]
    fn degree_examples() {
        let g = Hypergraph::new(2, vec![vec![0, 1]]).unwrap();
        let o = Orientation::new(&g, vec![0]).unwrap();
        assert_eq!(g.degrees(&o, &[0]).unwrap(), (1, 0, 1));
        assert_eq!(g.degrees(&o, &[1]).unwrap(), (0, 1, 1));
        assert_eq!(g.degrees(&o, &[0, 1]).unwrap(), (0, 0, 0));

        // Loops contribute nothing.
        let l = Hypergraph::new(1, vec![vec![0]]).unwrap();
        let lo = Orientation::new(&l, vec![0]).unwrap();
        assert_eq!(l.degrees(&lo, &[0]).unwrap(), (0, 0, 0));
    }

    #[test]
    fn reach_follows_tails_only() {
        // {0,1} tailed 0, {1,2} tailed 1: a directed chain.
        let g = Hypergraph::new(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        let o = Orientation::new(&g, vec![0, 1]).unwrap();
        assert_eq!(g.reach(&o, 0).unwrap(), BTreeSet::from([0, 1, 2]));
        assert_eq!(g.reach(&o, 2).unwrap(), BTreeSet::from([2]));
    }

    #[test]
    fn dfs_covers_connected_oriented_hypergraph() {
        // Oriented 3-uniform hypergraph whose search from vertex 4 visits
        // every vertex.
        let g = Hypergraph::new(5, vec![vec![4, 0, 1], vec![0, 2, 3], vec![1, 3, 4]]).unwrap();
        let o = Orientation::new(&g, vec![4, 0, 1]).unwrap();
        assert_eq!(g.reach(&o, 4).unwrap(), BTreeSet::from([0, 1, 2, 3, 4]));
    }

    #[test]
    fn reach_set_has_no_out_edges() {
        let g =
            Hypergraph::new(6, vec![vec![0, 1], vec![1, 2, 3], vec![3, 4], vec![5, 0]]).unwrap();
        let o = Orientation::new(&g, vec![1, 3, 4, 5]).unwrap();
        for v in 0..6 {
            let r: Vec<usize> = g.reach(&o, v).unwrap().into_iter().collect();
            let (out, _, _) = g.degrees(&o, &r).unwrap();
            assert_eq!(out, 0, "reach({v}) must be out-closed");
        }
    }

    #[test]
    fn subgraph_keeps_original_indices_and_weights() {
        let g = triangle().with_weights(vec![1.0, 2.0, 3.0]).unwrap();
        let s = g.subgraph(&[2, 0]).unwrap();
        assert_eq!(s.edge_count(), 2);
        assert_eq!(s.edges()[0].original_index(), 2);
        assert_eq!(s.edges()[1].original_index(), 0);
        assert_eq!(s.weights().unwrap(), &[3.0, 1.0]);
    }
}
