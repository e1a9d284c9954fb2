//! Weighted and signed graphs with optional semi-infinite path tails.
//!
//! A [`WeightedGraph`] is a finite core on dense vertex indices `0..n` plus a
//! list of [`TailSpec`]s. Tails stay symbolic here; [`WeightedGraph::truncate`]
//! materializes them as ordinary vertices when a finite matrix is needed.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A semi-infinite path hanging off a core vertex.
///
/// The path starts with the edges listed in `prefix` (attach vertex first)
/// and continues forever with edges of weight `bulk`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailSpec {
    pub attach: usize,
    #[serde(default)]
    pub prefix: Vec<f64>,
    #[serde(default = "unit_weight")]
    pub bulk: f64,
}

fn unit_weight() -> f64 {
    1.0
}

impl TailSpec {
    /// All-ones infinite path attached at `attach`.
    pub fn unit(attach: usize) -> Self {
        Self {
            attach,
            prefix: Vec::new(),
            bulk: 1.0,
        }
    }

    /// Weight of the `k`-th tail edge, counting the edge at the attach vertex as 0.
    pub fn edge_weight(&self, k: usize) -> f64 {
        self.prefix.get(k).copied().unwrap_or(self.bulk)
    }

    /// Largest absolute degree of any tail-interior vertex.
    fn interior_max_degree(&self) -> f64 {
        let mut m = 2.0 * self.bulk.abs();
        for k in 0..self.prefix.len() {
            m = m.max(self.edge_weight(k).abs() + self.edge_weight(k + 1).abs());
        }
        m
    }
}

/// Finite weighted graph core with optional tails.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    edges: BTreeMap<(usize, usize), f64>,
    adj: Vec<Vec<(usize, f64)>>,
    tails: Vec<TailSpec>,
    labels: Option<Vec<String>>,
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl WeightedGraph {
    /// Builds a graph from an edge list. Repeated declarations of an edge are
    /// accepted only when they carry the same weight.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut map = BTreeMap::new();
        for (a, b, w) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            if w == 0.0 {
                return Err(Error::ZeroWeight(a, b));
            }
            if !w.is_finite() {
                return Err(Error::Parse(format!("non-finite weight on {{{a},{b}}}")));
            }
            let k = key(a, b);
            match map.get(&k) {
                Some(&prev) if prev != w => {
                    return Err(Error::DuplicateEdgeConflict {
                        a: k.0,
                        b: k.1,
                        first: prev,
                        second: w,
                    })
                }
                _ => {
                    map.insert(k, w);
                }
            }
        }
        Ok(Self::from_map(n, map))
    }

    /// Unweighted graph from vertex pairs.
    pub fn unweighted<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::new(n, edges.into_iter().map(|(a, b)| (a, b, 1.0)))
    }

    fn from_map(n: usize, edges: BTreeMap<(usize, usize), f64>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (&(a, b), &w) in &edges {
            adj[a].push((b, w));
            adj[b].push((a, w));
        }
        for row in &mut adj {
            row.sort_by_key(|&(v, _)| v);
        }
        Self {
            n,
            edges,
            adj,
            tails: Vec::new(),
            labels: None,
        }
    }

    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Self::from_map(n, BTreeMap::new())
    }

    pub fn with_tails(mut self, tails: Vec<TailSpec>) -> Result<Self> {
        for t in &tails {
            if t.attach >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: t.attach,
                    n: self.n,
                });
            }
            if t.prefix.contains(&0.0) || t.bulk == 0.0 {
                return Err(Error::ZeroWeight(t.attach, t.attach));
            }
        }
        self.tails = tails;
        Ok(self)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::Parse(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n
            )));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::Parse(format!("duplicate label `{dup}`")));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Number of core vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(a, b, w)` with `a < b`, in canonical order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.edges.iter().map(|(&(a, b), &w)| (a, b, w))
    }

    pub fn tails(&self) -> &[TailSpec] {
        &self.tails
    }

    pub fn has_tails(&self) -> bool {
        !self.tails.is_empty()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Resolves a vertex token: a label if the graph carries labels, otherwise
    /// a plain index.
    pub fn resolve(&self, token: &str) -> Result<usize> {
        if let Some(labels) = &self.labels {
            if let Some(i) = labels.iter().position(|l| l == token) {
                return Ok(i);
            }
        }
        let v: usize = token
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("unknown vertex `{token}`")))?;
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(v)
    }

    /// Label of a vertex (its index when unlabelled).
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    /// `w(a, b)`, zero when there is no edge.
    pub fn weight(&self, a: usize, b: usize) -> f64 {
        self.edges.get(&key(a, b)).copied().unwrap_or(0.0)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains_key(&key(a, b))
    }

    /// Core neighbours of `a` with edge weights, sorted by vertex.
    pub fn neighbors(&self, a: usize) -> &[(usize, f64)] {
        &self.adj[a]
    }

    /// Core adjacency matrix; tail edges are not included.
    pub fn adjacency_matrix(&self) -> DMatrix<f64> {
        let mut a = DMatrix::zeros(self.n, self.n);
        for (&(i, j), &w) in &self.edges {
            a[(i, j)] = w;
            a[(j, i)] = w;
        }
        a
    }

    /// Replaces every tail by its first `depth` vertices, giving a finite
    /// graph on `n + depth * tails` vertices. Tail vertices are appended tail
    /// by tail, nearest to the core first.
    pub fn truncate(&self, depth: usize) -> WeightedGraph {
        let total = self.n + depth * self.tails.len();
        let mut map = self.edges.clone();
        for (t, tail) in self.tails.iter().enumerate() {
            let base = self.n + t * depth;
            let mut prev = tail.attach;
            for k in 0..depth {
                let v = base + k;
                map.insert(key(prev, v), tail.edge_weight(k));
                prev = v;
            }
        }
        let mut g = Self::from_map(total, map);
        if let Some(labels) = &self.labels {
            let mut l = labels.clone();
            for t in 0..self.tails.len() {
                for k in 0..depth {
                    l.push(format!("tail{t}.{}", k + 1));
                }
            }
            g.labels = Some(l);
        }
        g
    }

    /// Same graph with the listed edges' weights multiplied by -1.
    pub fn negate_edges(&self, edges: &[(usize, usize)]) -> Result<WeightedGraph> {
        let mut map = self.edges.clone();
        for &(a, b) in edges {
            match map.get_mut(&key(a, b)) {
                Some(w) => *w = -*w,
                None => return Err(Error::MissingEdge(a, b)),
            }
        }
        let mut g = Self::from_map(self.n, map);
        g.tails = self.tails.clone();
        g.labels = self.labels.clone();
        Ok(g)
    }

    /// Applies `f` to every core edge weight (and optionally to tails),
    /// keeping the vertex set, tails and labels.
    pub(crate) fn map_weights<F>(&self, mut f: F, tails: Vec<TailSpec>) -> WeightedGraph
    where
        F: FnMut(usize, usize, f64) -> f64,
    {
        let map = self
            .edges
            .iter()
            .map(|(&(a, b), &w)| ((a, b), f(a, b, w)))
            .collect();
        let mut g = Self::from_map(self.n, map);
        g.tails = tails;
        g.labels = self.labels.clone();
        g
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let mut degree = vec![0.0; self.n];
        let mut absolute = vec![0.0; self.n];
        for (&(a, b), &w) in &self.edges {
            degree[a] += w;
            degree[b] += w;
            absolute[a] += w.abs();
            absolute[b] += w.abs();
        }
        let mut tail_max: f64 = 0.0;
        for t in &self.tails {
            let w0 = t.edge_weight(0);
            degree[t.attach] += w0;
            absolute[t.attach] += w0.abs();
            tail_max = tail_max.max(t.interior_max_degree());
        }
        let max_absolute = absolute.iter().copied().fold(tail_max, f64::max);
        DegreeProfile {
            degree,
            absolute_degree: absolute,
            max_absolute_degree: max_absolute,
        }
    }
}

/// Per-vertex degrees and the bound `M` on the operator norm of `A(G)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeProfile {
    pub degree: Vec<f64>,
    pub absolute_degree: Vec<f64>,
    /// Maximum absolute degree over every vertex, tail interiors included.
    pub max_absolute_degree: f64,
}

impl DegreeProfile {
    pub fn bound(&self) -> f64 {
        self.max_absolute_degree
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> WeightedGraph {
        let e = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b)));
        WeightedGraph::unweighted(4, e).unwrap()
    }

    #[test]
    fn smallest_graph() {
        let g = WeightedGraph::unweighted(2, [(0, 1)]).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.weight(1, 0), 1.0);
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            WeightedGraph::new(2, [(0, 1, 0.0)]),
            Err(Error::ZeroWeight(0, 1))
        );
        assert_eq!(
            WeightedGraph::new(2, [(1, 1, 1.0)]),
            Err(Error::SelfLoop(1))
        );
        assert!(matches!(
            WeightedGraph::new(2, [(0, 1, 1.0), (1, 0, 2.0)]),
            Err(Error::DuplicateEdgeConflict { .. })
        ));
        // same weight twice is fine
        let g = WeightedGraph::new(2, [(0, 1, 1.5), (1, 0, 1.5)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(matches!(
            WeightedGraph::new(2, [(0, 2, 1.0)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn regular_degree_bound() {
        let p = k4().degree_profile();
        assert_eq!(p.max_absolute_degree, 3.0);
        assert!(p.degree.iter().all(|&d| d == 3.0));
    }

    #[test]
    fn tail_interior_has_degree_two() {
        let g = WeightedGraph::unweighted(2, [(0, 1)])
            .unwrap()
            .with_tails(vec![TailSpec::unit(1)])
            .unwrap();
        let p = g.degree_profile();
        assert_eq!(p.absolute_degree, vec![1.0, 2.0]);
        assert_eq!(p.max_absolute_degree, 2.0);
    }

    #[test]
    fn weighted_tail_prefix_counts() {
        let g = WeightedGraph::unweighted(1, [])
            .unwrap()
            .with_tails(vec![TailSpec {
                attach: 0,
                prefix: vec![3.0, -2.0],
                bulk: 1.0,
            }])
            .unwrap();
        let p = g.degree_profile();
        assert_eq!(p.absolute_degree, vec![3.0]);
        assert_eq!(p.max_absolute_degree, 5.0);
    }

    #[test]
    fn absolute_degree_dominates_degree() {
        let g = WeightedGraph::new(3, [(0, 1, -2.0), (1, 2, 0.5)]).unwrap();
        let p = g.degree_profile();
        for v in 0..3 {
            assert!(p.degree[v].abs() <= p.absolute_degree[v]);
            assert!(p.absolute_degree[v] <= p.max_absolute_degree);
        }
        assert_eq!(p.degree[1], -1.5);
        assert_eq!(p.absolute_degree[1], 2.5);
    }

    #[test]
    fn truncation_appends_path() {
        let g = WeightedGraph::unweighted(2, [(0, 1)])
            .unwrap()
            .with_tails(vec![TailSpec::unit(1)])
            .unwrap();
        let t = g.truncate(2);
        assert_eq!(t.n(), 4);
        assert_eq!(t.weight(1, 2), 1.0);
        assert_eq!(t.weight(2, 3), 1.0);
        assert!(!t.has_tails());
    }

    #[test]
    fn negate_edges_flips_only_listed() {
        let c6 = WeightedGraph::unweighted(6, (0..6).map(|j| (j, (j + 1) % 6))).unwrap();
        let s = c6.negate_edges(&[(3, 4), (0, 5)]).unwrap();
        assert_eq!(s.weight(3, 4), -1.0);
        assert_eq!(s.weight(5, 0), -1.0);
        assert_eq!(s.weight(1, 2), 1.0);
        assert_eq!(c6.negate_edges(&[]).unwrap(), c6);
        assert_eq!(c6.negate_edges(&[(0, 3)]), Err(Error::MissingEdge(0, 3)));
    }

    #[test]
    fn adjacency_is_symmetric() {
        let g = WeightedGraph::new(4, [(0, 1, 2.0), (2, 3, -1.0), (1, 3, 0.25)]).unwrap();
        let a = g.adjacency_matrix();
        assert_eq!(a, a.transpose());
        let p = g.degree_profile();
        for v in 0..4 {
            let row: f64 = a.row(v).iter().map(|x| x.abs()).sum();
            assert!((row - p.absolute_degree[v]).abs() < 1e-12);
        }
    }
}
