//! Undirected simple graphs with a fixed vertex-id space.
//!
//! Deleting vertices never compacts ids: removed vertices stay behind as
//! degree-0 tombstones so that per-vertex arrays (coreness in particular)
//! computed before and after a deletion line up index by index.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// Dense vertex identifier in `0..n`.
pub type VertexId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
    live: Vec<bool>,
    live_count: usize,
    m: usize,
    labels: Option<Vec<String>>,
}

/// What the edge-list reader dropped while simplifying the input.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParseReport {
    pub lines: usize,
    pub duplicate_edges: usize,
    pub self_loops: usize,
}

impl ParseReport {
    pub fn dropped(&self) -> usize {
        self.duplicate_edges + self.self_loops
    }
}

impl Graph {
    /// Builds a simple graph on `n` vertices. Self-loops and repeated edges
    /// (in either orientation) are dropped.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: u.max(v),
                    n,
                });
            }
            if u != v {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        Ok(Self::from_raw_adjacency(adj, None).0)
    }

    fn from_raw_adjacency(
        mut adj: Vec<Vec<VertexId>>,
        labels: Option<Vec<String>>,
    ) -> (Self, usize) {
        let mut removed = 0;
        let mut half_edges = 0;
        for list in &mut adj {
            list.sort_unstable();
            let before = list.len();
            list.dedup();
            removed += before - list.len();
            half_edges += list.len();
        }
        let n = adj.len();
        let graph = Graph {
            adj,
            live: vec![true; n],
            live_count: n,
            m: half_edges / 2,
            labels,
        };
        // every duplicate edge shows up once in each endpoint's list
        (graph, removed / 2)
    }

    /// Reads a SNAP-style edge list: one whitespace-separated pair per line,
    /// `#` comments, arbitrary string tokens mapped to ids in order of first
    /// appearance. Directed inputs are symmetrized.
    pub fn from_edge_list<R: BufRead>(reader: R) -> Result<(Self, ParseReport)> {
        let mut ids: HashMap<String, VertexId> = HashMap::new();
        let mut labels: Vec<String> = Vec::new();
        let mut adj: Vec<Vec<VertexId>> = Vec::new();
        let mut report = ParseReport::default();

        let mut intern = |tok: &str, adj: &mut Vec<Vec<VertexId>>| -> VertexId {
            if let Some(&id) = ids.get(tok) {
                return id;
            }
            let id = labels.len();
            ids.insert(tok.to_owned(), id);
            labels.push(tok.to_owned());
            adj.push(Vec::new());
            id
        };

        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            report.lines += 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
                continue;
            }
            let mut tokens = trimmed.split_whitespace();
            let (a, b) = match (tokens.next(), tokens.next(), tokens.next()) {
                (Some(a), Some(b), None) => (a, b),
                _ => {
                    return Err(Error::Parse {
                        line: idx + 1,
                        message: format!(
                            "expected 2 tokens, found {}",
                            trimmed.split_whitespace().count()
                        ),
                    })
                }
            };
            let u = intern(a, &mut adj);
            let v = intern(b, &mut adj);
            if u == v {
                report.self_loops += 1;
                continue;
            }
            adj[u].push(v);
            adj[v].push(u);
        }

        let (graph, dups) = Self::from_raw_adjacency(adj, Some(labels));
        report.duplicate_edges = dups;
        Ok((graph, report))
    }

    /// Writes `u v` per edge with `u < v`, sorted. Tombstones are skipped;
    /// ids (not labels) are written.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> Result<()> {
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}")?;
        }
        Ok(())
    }

    /// Size of the id space, including tombstones.
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn live_count(&self) -> usize {
        self.live_count
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_live(&self, v: VertexId) -> bool {
        self.live[v]
    }

    pub fn live_mask(&self) -> &[bool] {
        &self.live
    }

    pub fn live_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.n()).filter(move |&v| self.live[v])
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Sorted neighbor ids; empty for tombstones.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Original token for `v`, falling back to the numeric id.
    pub fn label(&self, v: VertexId) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v >= self.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n() });
        }
        Ok(())
    }

    /// Induced subgraph on `V \ deleted`, keeping the id space.
    pub fn delete_vertices(&self, deleted: &[VertexId]) -> Result<Graph> {
        let mut gone = vec![false; self.n()];
        for &v in deleted {
            self.check_vertex(v)?;
            gone[v] = true;
        }
        let mut live = self.live.clone();
        let mut live_count = self.live_count;
        let mut half_edges = 0;
        let adj: Vec<Vec<VertexId>> = self
            .adj
            .iter()
            .enumerate()
            .map(|(v, list)| {
                if gone[v] {
                    if live[v] {
                        live[v] = false;
                        live_count -= 1;
                    }
                    return Vec::new();
                }
                let kept: Vec<VertexId> = list.iter().copied().filter(|&u| !gone[u]).collect();
                half_edges += kept.len();
                kept
            })
            .collect();
        Ok(Graph {
            adj,
            live,
            live_count,
            m: half_edges / 2,
            labels: self.labels.clone(),
        })
    }

    /// Restricts to the largest connected component (lowest id wins ties),
    /// relabelled densely in increasing old-id order.
    pub fn largest_component(&self) -> Graph {
        let comps = crate::components::connected_components(self, self.live_mask());
        let Some(best) = comps.largest() else {
            return self.clone();
        };
        let members: Vec<VertexId> = self
            .live_vertices()
            .filter(|&v| comps.label[v] == Some(best))
            .collect();
        self.induced_compact(&members)
    }

    /// Induced subgraph on `members`, relabelled `members[i] -> i`.
    pub fn induced_compact(&self, members: &[VertexId]) -> Graph {
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in members.iter().enumerate() {
            new_id[v] = i;
        }
        let adj: Vec<Vec<VertexId>> = members
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter(|&&u| new_id[u] != usize::MAX)
                    .map(|&u| new_id[u])
                    .collect()
            })
            .collect();
        let labels = self
            .labels
            .as_ref()
            .map(|l| members.iter().map(|&v| l[v].clone()).collect());
        Self::from_raw_adjacency(adj, labels).0
    }
}
