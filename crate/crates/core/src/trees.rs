//! Isomorphism-free enumeration of free trees on up to 18 vertices.
//!
//! Rooted trees are represented by canonical level sequences: the depth
//! of each vertex in preorder, with the subtrees of every vertex listed
//! in non-increasing lexicographic order of their own sequences. Free
//! trees are generated rooted at their centroid, which is unique up to
//! the well-known two-centroid case:
//!
//! * one centroid: canonical rooted trees whose root subtrees all have
//!   at most `(n-1)/2` vertices (this is exactly the condition for the
//!   root to be the unique centroid);
//! * two centroids (`n` even): an unordered pair of canonical rooted
//!   trees on `n/2` vertices joined by an edge between their roots.
//!
//! Every isomorphism class is produced exactly once, in a deterministic
//! order, with no explicit isomorphism testing.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest supported vertex count for enumeration.
pub const MAX_TREE_VERTICES: usize = 18;

/// Canonical description of one free tree.
#[derive(Clone, Debug, PartialEq, Eq)]
enum TreeCode {
    /// Level sequence rooted at the unique centroid.
    Central(Vec<u8>),
    /// Two halves of equal size joined at their roots; the first half is
    /// lexicographically the larger.
    Bicentral(Vec<u8>, Vec<u8>),
}

impl TreeCode {
    fn build_graph(&self) -> Graph {
        match self {
            TreeCode::Central(seq) => graph_from_level_sequence(seq, &[]),
            TreeCode::Bicentral(a, b) => graph_from_level_sequence(a, b),
        }
    }
}

/// Decodes one or two level sequences into a tree; the second sequence,
/// if nonempty, is attached by an edge between the two roots.
fn graph_from_level_sequence(a: &[u8], b: &[u8]) -> Graph {
    let n = a.len() + b.len();
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut emit = |seq: &[u8], offset: usize| {
        let mut last_at_depth: Vec<usize> = Vec::new();
        for (i, &d) in seq.iter().enumerate() {
            let d = d as usize;
            if i > 0 {
                edges.push((last_at_depth[d - 1], offset + i));
            }
            last_at_depth.truncate(d);
            last_at_depth.push(offset + i);
        }
    };
    emit(a, 0);
    if !b.is_empty() {
        emit(b, a.len());
        edges.push((0, a.len()));
    }
    Graph::from_edges(n, &edges).expect("level sequence within capacity")
}

/// All canonical rooted level sequences for sizes `1..=max`, indexed by
/// size. Small sizes only (at most 9 here), so the lists stay tiny.
fn rooted_trees_up_to(max: usize) -> Vec<Vec<Vec<u8>>> {
    let mut by_size: Vec<Vec<Vec<u8>>> = vec![Vec::new(); max + 1];
    if max == 0 {
        return by_size;
    }
    by_size[1].push(vec![0]);
    for size in 2..=max {
        let mut out = Vec::new();
        let forests = forests_of(size - 1, size - 1, None, &by_size);
        for forest in forests {
            out.push(assemble(&forest));
        }
        by_size[size] = out;
    }
    by_size
}

fn assemble(forest: &[Vec<u8>]) -> Vec<u8> {
    let mut seq = vec![0u8];
    for tree in forest {
        seq.extend(tree.iter().map(|&d| d + 1));
    }
    seq
}

/// Non-increasing sequences of canonical rooted trees with the given
/// total size, each part of size at most `cap` and lexicographically at
/// most `bound` when one is given.
fn forests_of(
    total: usize,
    cap: usize,
    bound: Option<&[u8]>,
    by_size: &[Vec<Vec<u8>>],
) -> Vec<Vec<Vec<u8>>> {
    if total == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for size in 1..=total.min(cap) {
        for tree in &by_size[size] {
            if let Some(b) = bound {
                if tree.as_slice() > b {
                    continue;
                }
            }
            for mut rest in forests_of(total - size, cap, Some(tree), by_size) {
                let mut forest = Vec::with_capacity(rest.len() + 1);
                forest.push(tree.clone());
                forest.append(&mut rest);
                out.push(forest);
            }
        }
    }
    out
}

fn free_tree_codes(n: usize) -> Vec<TreeCode> {
    if n == 1 {
        return vec![TreeCode::Central(vec![0])];
    }
    let mut codes = Vec::new();
    let half_cap = (n - 1) / 2;
    let by_size = rooted_trees_up_to(half_cap.max(n / 2));
    // Unique centroid: every root subtree has at most (n-1)/2 vertices.
    for forest in forests_of(n - 1, half_cap, None, &by_size) {
        codes.push(TreeCode::Central(assemble(&forest)));
    }
    // Two centroids: halves of size n/2 joined at the roots.
    if n.is_multiple_of(2) {
        let mut halves = by_size[n / 2].clone();
        halves.sort_by(|a, b| b.cmp(a));
        for i in 0..halves.len() {
            for j in i..halves.len() {
                codes.push(TreeCode::Bicentral(halves[i].clone(), halves[j].clone()));
            }
        }
    }
    codes
}

/// Iterator over one representative per isomorphism class of free trees
/// on `n` vertices, in a fixed deterministic order.
pub struct TreeIterator {
    codes: std::vec::IntoIter<TreeCode>,
}

impl Iterator for TreeIterator {
    type Item = Graph;
    fn next(&mut self) -> Option<Graph> {
        self.codes.next().map(|c| c.build_graph())
    }
    fn size_hint(&self) -> (usize, Option<usize>) {
        self.codes.size_hint()
    }
}

impl ExactSizeIterator for TreeIterator {}

/// Enumerates all free trees on `n` vertices, `1 <= n <= 18`.
pub fn enumerate_trees(n: usize) -> Result<TreeIterator> {
    if !(1..=MAX_TREE_VERTICES).contains(&n) {
        return Err(Error::OutOfRange {
            what: "tree vertex count",
            got: n,
            min: 1,
            max: MAX_TREE_VERTICES,
        });
    }
    Ok(TreeIterator {
        codes: free_tree_codes(n).into_iter(),
    })
}

/// Canonical code of an arbitrary tree: the centroid-rooted canonical
/// level sequence (both halves concatenated, larger first, in the
/// two-centroid case — the second `0` entry makes the two shapes
/// unambiguous). Equal codes iff isomorphic.
pub fn tree_canonical_code(g: &Graph) -> Result<Vec<u8>> {
    if !g.is_tree() {
        return Err(Error::Internal(format!(
            "canonical code requested for a non-tree: {g:?}"
        )));
    }
    let centroids = centroids(g);
    match centroids.as_slice() {
        [c] => Ok(canonical_rooted(g, *c, None)),
        [c1, c2] => {
            let a = canonical_rooted(g, *c1, Some(*c2));
            let b = canonical_rooted(g, *c2, Some(*c1));
            let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
            let mut code = hi;
            code.extend_from_slice(&lo);
            Ok(code)
        }
        _ => unreachable!("a tree has one or two centroids"),
    }
}

/// Whether the tree is a path (every degree at most 2).
pub fn is_path(g: &Graph) -> bool {
    g.is_tree() && g.vertices().all(|v| g.degree(v) <= 2)
}

fn canonical_rooted(g: &Graph, root: usize, blocked: Option<usize>) -> Vec<u8> {
    let mut kids: Vec<Vec<u8>> = Vec::new();
    let mut nbrs = g.neighbors(root);
    while nbrs != 0 {
        let c = nbrs.trailing_zeros() as usize;
        nbrs &= nbrs - 1;
        if Some(c) == blocked {
            continue;
        }
        kids.push(canonical_rooted(g, c, Some(root)));
    }
    kids.sort_by(|a, b| b.cmp(a));
    let mut out = vec![0u8];
    for k in kids {
        out.extend(k.iter().map(|&d| d + 1));
    }
    out
}

/// The one or two centroid vertices of a tree.
fn centroids(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let verts: Vec<usize> = g.vertices().collect();
    let root = verts[0];
    // Subtree sizes by iterative post-order from `root`.
    let mut size = vec![0usize; g.slot_count()];
    let mut parent = vec![usize::MAX; g.slot_count()];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![root];
    let mut seen = 0u64;
    while let Some(v) = stack.pop() {
        seen |= 1 << v;
        order.push(v);
        let mut nbrs = g.neighbors(v);
        while nbrs != 0 {
            let u = nbrs.trailing_zeros() as usize;
            nbrs &= nbrs - 1;
            if seen & (1 << u) == 0 {
                parent[u] = v;
                stack.push(u);
            }
        }
    }
    for &v in order.iter().rev() {
        size[v] += 1;
        if parent[v] != usize::MAX {
            size[parent[v]] += size[v];
        }
    }
    // weight(v) = size of the largest component of the tree minus v.
    let mut best = Vec::new();
    let mut best_weight = usize::MAX;
    for &v in &verts {
        let mut w = n - size[v];
        let mut nbrs = g.neighbors(v);
        while nbrs != 0 {
            let u = nbrs.trailing_zeros() as usize;
            nbrs &= nbrs - 1;
            if parent[u] == v {
                w = w.max(size[u]);
            }
        }
        match w.cmp(&best_weight) {
            std::cmp::Ordering::Less => {
                best_weight = w;
                best = vec![v];
            }
            std::cmp::Ordering::Equal => best.push(v),
            std::cmp::Ordering::Greater => {}
        }
    }
    best.sort_unstable();
    best
}
