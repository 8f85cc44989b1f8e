//! Compact undirected graphs on at most 64 vertices.
//!
//! Vertices are dense integers assigned at construction; deletions keep
//! the original indices and shrink the `present` mask instead of
//! relabelling, so subset masks stay stable across surgery.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Hard capacity of the bitmask representation.
pub const MAX_VERTICES: usize = 64;

#[derive(Clone)]
pub struct Graph {
    /// Index space established at construction (indices 0..slots).
    slots: usize,
    /// Bitmask of vertices that are still present.
    present: u64,
    /// Neighbour mask per slot; always a subset of `present`, and zero
    /// for absent vertices.
    adj: [u64; MAX_VERTICES],
}

/// Structural equality on the present vertices; the size of the original
/// index space is irrelevant.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.present == other.present && self.adj == other.adj
    }
}

impl Eq for Graph {}

/// Generator tag for the standard families plus explicit edge lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphKind {
    Path(usize),
    Star(usize),
    Complete(usize),
    Empty(usize),
    EdgeList { n: usize, edges: Vec<(usize, usize)> },
}

impl GraphKind {
    pub fn build(&self) -> Result<Graph> {
        match self {
            GraphKind::Path(n) => Graph::path(*n),
            GraphKind::Star(n) => Graph::star(*n),
            GraphKind::Complete(n) => Graph::complete(*n),
            GraphKind::Empty(n) => Graph::empty(*n),
            GraphKind::EdgeList { n, edges } => Graph::from_edges(*n, edges),
        }
    }
}

#[inline]
fn bit(v: usize) -> u64 {
    1u64 << v
}

fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Graph {
    fn check_capacity(n: usize) -> Result<()> {
        if n > MAX_VERTICES {
            return Err(Error::Capacity {
                got: n,
                limit: MAX_VERTICES,
            });
        }
        Ok(())
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph> {
        Self::check_capacity(n)?;
        Ok(Graph {
            slots: n,
            present: low_bits(n),
            adj: [0; MAX_VERTICES],
        })
    }

    /// Path 0-1-...-(n-1).
    pub fn path(n: usize) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for v in 1..n {
            g.add_edge_unchecked(v - 1, v);
        }
        Ok(g)
    }

    /// Star with centre 0 adjacent to all other vertices.
    pub fn star(n: usize) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for v in 1..n {
            g.add_edge_unchecked(0, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge_unchecked(u, v);
            }
        }
        Ok(g)
    }

    /// Graph on vertices `0..n` with the given edges. Duplicate edges are
    /// collapsed; self-loops and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Parse(format!(
                    "edge {u}-{v} out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::Parse(format!("self-loop at vertex {u}")));
            }
            g.add_edge_unchecked(u, v);
        }
        Ok(g)
    }

    fn add_edge_unchecked(&mut self, u: usize, v: usize) {
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
    }

    /// Parses the edge-list format: an optional first line `n <count>`,
    /// then one `u v` pair per line (0-indexed). Blank lines and lines
    /// starting with `#` are ignored.
    pub fn from_edge_list_text(text: &str) -> Result<Graph> {
        let mut declared_n: Option<usize> = None;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut first_data_line = true;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let a = parts.next().unwrap();
            let b = parts
                .next()
                .ok_or_else(|| Error::Parse(format!("line {}: expected two fields", lineno + 1)))?;
            if parts.next().is_some() {
                return Err(Error::Parse(format!(
                    "line {}: trailing fields in {line:?}",
                    lineno + 1
                )));
            }
            if first_data_line && a == "n" {
                declared_n = Some(b.parse().map_err(|_| {
                    Error::Parse(format!("line {}: bad vertex count {b:?}", lineno + 1))
                })?);
                first_data_line = false;
                continue;
            }
            first_data_line = false;
            let u: usize = a
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad vertex {a:?}", lineno + 1)))?;
            let v: usize = b
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad vertex {b:?}", lineno + 1)))?;
            edges.push((u, v));
        }
        let n = declared_n
            .unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
        Graph::from_edges(n, &edges)
    }

    pub fn from_edge_list_file(path: &Path) -> Result<Graph> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_edge_list_text(&text)
    }

    /// Parses a generator spec string: `path:N`, `star:N`, `complete:N`,
    /// `empty:N` or `file:PATH`.
    pub fn from_spec(spec: &str) -> Result<Graph> {
        let (kind, arg) = spec
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("bad graph spec {spec:?} (expected kind:arg)")))?;
        let parse_n = |arg: &str| -> Result<usize> {
            arg.parse()
                .map_err(|_| Error::Parse(format!("bad vertex count {arg:?} in spec {spec:?}")))
        };
        match kind {
            "path" => Graph::path(parse_n(arg)?),
            "star" => Graph::star(parse_n(arg)?),
            "complete" => Graph::complete(parse_n(arg)?),
            "empty" => Graph::empty(parse_n(arg)?),
            "file" => Graph::from_edge_list_file(Path::new(arg)),
            _ => Err(Error::Parse(format!(
                "unknown graph kind {kind:?} (expected path/star/complete/empty/file)"
            ))),
        }
    }

    // ---- accessors ----

    /// Number of present vertices.
    pub fn vertex_count(&self) -> usize {
        self.present.count_ones() as usize
    }

    /// Size of the index space fixed at construction.
    pub fn slot_count(&self) -> usize {
        self.slots
    }

    pub fn present_mask(&self) -> u64 {
        self.present
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        v < self.slots && self.present & bit(v) != 0
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.slots).filter(move |&v| self.present & bit(v) != 0)
    }

    /// Neighbour mask of `v` (not including `v`).
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    /// `v` together with its neighbours.
    pub fn closed_neighborhood(&self, v: usize) -> u64 {
        self.adj[v] | bit(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.slots && v < self.slots && self.adj[u] & bit(v) != 0
    }

    pub fn edge_count(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in self.vertices() {
            let mut higher = self.adj[u] & !low_bits(u + 1);
            while higher != 0 {
                let v = higher.trailing_zeros() as usize;
                out.push((u, v));
                higher &= higher - 1;
            }
        }
        out
    }

    // ---- surgery ----

    fn check_vertex(&self, v: usize) -> Result<()> {
        if !self.contains_vertex(v) {
            return Err(Error::VertexAbsent(v));
        }
        Ok(())
    }

    pub fn remove_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        Ok(self.without_mask(bit(v)))
    }

    /// Removes `v` together with all of its neighbours.
    pub fn remove_closed_nbhd(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        Ok(self.without_mask(self.closed_neighborhood(v)))
    }

    pub fn remove_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(Error::EdgeAbsent(u, v));
        }
        let mut g = self.clone();
        g.adj[u] &= !bit(v);
        g.adj[v] &= !bit(u);
        Ok(g)
    }

    /// Restriction to `present & !mask`, dropping all incident edges.
    pub(crate) fn without_mask(&self, mask: u64) -> Graph {
        let keep = self.present & !mask;
        let mut g = Graph {
            slots: self.slots,
            present: keep,
            adj: [0; MAX_VERTICES],
        };
        for v in 0..self.slots {
            if keep & bit(v) != 0 {
                g.adj[v] = self.adj[v] & keep;
            }
        }
        g
    }

    /// The induced subgraph on `mask` (which must be a subset of the
    /// present vertices).
    pub(crate) fn induced(&self, mask: u64) -> Graph {
        debug_assert_eq!(mask & !self.present, 0);
        self.without_mask(self.present & !mask)
    }

    // ---- structure ----

    /// Connected component masks, ordered by their lowest vertex.
    pub(crate) fn component_masks_of(&self, mask: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut rem = mask;
        while rem != 0 {
            let start = rem.trailing_zeros() as usize;
            let mut comp = bit(start);
            loop {
                let mut grown = comp;
                let mut scan = comp;
                while scan != 0 {
                    let v = scan.trailing_zeros() as usize;
                    grown |= self.adj[v] & mask;
                    scan &= scan - 1;
                }
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            out.push(comp);
            rem &= !comp;
        }
        out
    }

    /// Connected components as graphs on their own vertex subsets; the
    /// empty graph has no components.
    pub fn components(&self) -> Vec<Graph> {
        self.component_masks_of(self.present)
            .into_iter()
            .map(|m| self.induced(m))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.component_masks_of(self.present).len() == 1
    }

    /// Connected and with exactly `n - 1` edges.
    pub fn is_tree(&self) -> bool {
        let n = self.vertex_count();
        n > 0 && self.is_connected() && self.edge_count() == n - 1
    }

    /// Whether no two vertices of `set` are adjacent. `set` must be a
    /// subset of the present vertices.
    pub fn is_independent(&self, set: u64) -> Result<bool> {
        if set & !self.present != 0 {
            return Err(Error::SetNotInGraph);
        }
        let mut scan = set;
        while scan != 0 {
            let v = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            if self.adj[v] & set != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Disjoint union, relabelling each part onto fresh indices.
    pub fn disjoint_union(parts: &[Graph]) -> Result<Graph> {
        let total: usize = parts.iter().map(|g| g.vertex_count()).sum();
        Self::check_capacity(total).map_err(|_| Error::Capacity {
            got: total,
            limit: MAX_VERTICES,
        })?;
        let mut edges = Vec::new();
        let mut offset = 0;
        for g in parts {
            let relabel: Vec<usize> = g.vertices().collect();
            let index_of = |v: usize| offset + relabel.iter().position(|&w| w == v).unwrap();
            for (u, v) in g.edges() {
                edges.push((index_of(u), index_of(v)));
            }
            offset += g.vertex_count();
        }
        Graph::from_edges(total, &edges)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph(n={}, edges={:?})",
            self.vertex_count(),
            self.edges()
        )
    }
}

impl FromStr for Graph {
    type Err = Error;
    fn from_str(s: &str) -> Result<Graph> {
        Graph::from_spec(s)
    }
}
