//! Simple undirected graphs as sources of metric spaces.

use std::collections::{HashMap, HashSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::metric::{pairs, FiniteMetricSpace, MetricError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0:?}")]
    SelfLoop(String),
    #[error("duplicate edge {0:?} -- {1:?}")]
    DuplicateEdge(String, String),
    #[error("edge endpoint {0:?} is not a declared vertex")]
    UnknownVertex(String),
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("graph is disconnected: {0:?} cannot reach {1:?}")]
    DisconnectedGraph(String, String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Metric(#[from] MetricError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from vertex labels and index edges.
    pub fn from_indices(
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut seen_labels = HashSet::new();
        for l in &labels {
            if !seen_labels.insert(l.as_str()) {
                return Err(GraphError::DuplicateVertex(l.clone()));
            }
        }
        let n = labels.len();
        let mut adj = vec![Vec::new(); n];
        let mut list = Vec::new();
        let mut seen = HashSet::new();
        for (a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::UnknownVertex(format!("#{x}")));
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(labels[a].clone()));
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(GraphError::DuplicateEdge(labels[e.0].clone(), labels[e.1].clone()));
            }
            adj[a].push(b);
            adj[b].push(a);
            list.push(e);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        Ok(Graph { labels, edges: list, adj })
    }

    /// Builds a graph from labelled edges; every endpoint must be declared.
    pub fn from_labeled(labels: Vec<String>, edges: &[(&str, &str)]) -> Result<Self, GraphError> {
        let index: HashMap<&str, usize> =
            labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let lookup = |l: &str| index.get(l).copied().ok_or_else(|| GraphError::UnknownVertex(l.into()));
        let idx_edges = edges
            .iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>, GraphError>>()?;
        Self::from_indices(labels, idx_edges)
    }

    /// Parses the edge-list text format: one `u v` pair per line, `#`
    /// comments, and an optional `vertices: a b c` header declaring vertices
    /// up front (including isolated ones).
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut labels: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut edges = Vec::new();
        let mut intern = |l: &str, labels: &mut Vec<String>| -> usize {
            *index.entry(l.to_string()).or_insert_with(|| {
                labels.push(l.to_string());
                labels.len() - 1
            })
        };
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("vertices:") {
                for v in rest.split_whitespace() {
                    intern(v, &mut labels);
                }
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(GraphError::Parse {
                    line: lineno + 1,
                    message: format!("expected `u v`, got {line:?}"),
                });
            }
            let a = intern(toks[0], &mut labels);
            let b = intern(toks[1], &mut labels);
            edges.push((a, b));
        }
        Self::from_indices(labels, edges)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// BFS distances from `source`; `None` for unreachable vertices.
    pub fn bfs(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].expect("queued vertices are reached");
            for &y in &self.adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }
}

/// All-pairs BFS distances as an exact metric space.
pub fn shortest_path_metric(g: &Graph) -> Result<FiniteMetricSpace, GraphError> {
    let n = g.len();
    if n >= 1 {
        if let Some(far) = g.bfs(0).iter().position(Option::is_none) {
            return Err(GraphError::DisconnectedGraph(g.labels[0].clone(), g.labels[far].clone()));
        }
    }
    let rows: Vec<Vec<i64>> = (0..n)
        .into_par_iter()
        .map(|s| g.bfs(s).into_iter().map(|d| d.expect("connected") as i64).collect())
        .collect();
    Ok(FiniteMetricSpace::from_integers(g.labels.clone(), &rows)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Bipartiteness {
    /// `coloring[v]` is 0 or 1 and every edge joins different colors.
    Bipartite { coloring: Vec<u8> },
    /// Vertices of an odd cycle, in cyclic order.
    OddCycle { cycle: Vec<usize> },
}

impl Bipartiteness {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartiteness::Bipartite { .. })
    }
}

/// 2-colors the graph by BFS or returns an odd cycle.
pub fn is_bipartite(g: &Graph) -> Bipartiteness {
    let n = g.len();
    let mut color: Vec<Option<u8>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    for root in 0..n {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            let cx = color[x].expect("colored");
            for &y in g.neighbors(x) {
                match color[y] {
                    None => {
                        color[y] = Some(1 - cx);
                        parent[y] = x;
                        depth[y] = depth[x] + 1;
                        queue.push_back(y);
                    }
                    Some(cy) if cy == cx => {
                        return Bipartiteness::OddCycle {
                            cycle: tree_cycle(x, y, &parent, &depth),
                        };
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Bipartiteness::Bipartite { coloring: color.into_iter().map(|c| c.unwrap_or(0)).collect() }
}

/// Cycle formed by the non-tree edge `x -- y` and the BFS tree paths to
/// their lowest common ancestor.
fn tree_cycle(x: usize, y: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let (mut a, mut b) = (x, y);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

/// Result of checking that odd-distance pairs have empty bisectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OddDistanceReport {
    pub bipartite: bool,
    pub odd_pairs: usize,
    pub empty_bisectors: usize,
    /// Odd-distance pairs with a non-empty bisector, with the bisector size.
    pub violations: Vec<(usize, usize, usize)>,
}

impl OddDistanceReport {
    /// True when the graph is bipartite and no odd-distance pair has a
    /// non-empty bisector. For non-bipartite graphs this is always false; the
    /// violations are then informational.
    pub fn lemma_holds(&self) -> bool {
        self.bipartite && self.violations.is_empty()
    }
}

pub fn check_odd_distance_bisectors(g: &Graph) -> Result<OddDistanceReport, GraphError> {
    let space = shortest_path_metric(g)?;
    let n = space.len();
    let mut report = OddDistanceReport {
        bipartite: is_bipartite(g).is_bipartite(),
        odd_pairs: 0,
        empty_bisectors: 0,
        violations: Vec::new(),
    };
    for (u, v) in pairs(n) {
        if !space.dist(u, v).numer().bit(0) {
            continue;
        }
        report.odd_pairs += 1;
        let size = (0..n).filter(|&x| space.equidistant(x, u, v)).count();
        if size == 0 {
            report.empty_bisectors += 1;
        } else {
            report.violations.push((u, v, size));
        }
    }
    Ok(report)
}
