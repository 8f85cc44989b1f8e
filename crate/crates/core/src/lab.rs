//! Exhaustive verification suites: labelled-graph sweeps for the global
//! bounds and the decreasing-vertex theorem, tree sweeps for star
//! maximality, path minimality and the deletion quotient, and the
//! per-edge / per-vertex scans behind the non-monotonicity examples.
//!
//! Every inequality is checked in exact arithmetic. Sweeps process the
//! enumeration in fixed-size chunks that are checked in parallel; the
//! reported witness is always the first failure in enumeration order,
//! so results are independent of the worker schedule.

use rayon::prelude::*;
use serde::Serialize;

use crate::engine;
use crate::error::{Error, Result};
use crate::exact::{QuadNumber, Rational};
use crate::family;
use crate::graph::Graph;
use crate::path_analysis;
use crate::report::{VerificationReport, Witness};
use crate::trees::{enumerate_trees, is_path};

/// Largest vertex count for labelled-graph enumeration (2^21 graphs).
pub const MAX_LABELLED_N: usize = 7;
/// Largest vertex count for the tree sweeps.
pub const MAX_TREE_SWEEP_N: usize = 16;
/// Largest vertex count for the quotient sweep.
pub const MAX_QUOTIENT_N: usize = 14;
/// Vertex range for the weighted extremal scan.
pub const MAX_WEIGHTED_SCAN_N: usize = 12;

const CHUNK: usize = 4096;

/// All labelled graphs on `n` vertices, one per subset of the possible
/// edges, in increasing order of the edge bitmask.
pub struct LabelledGraphs {
    n: usize,
    pairs: Vec<(usize, usize)>,
    next: u64,
    end: u64,
}

impl Iterator for LabelledGraphs {
    type Item = Graph;
    fn next(&mut self) -> Option<Graph> {
        if self.next == self.end {
            return None;
        }
        let mask = self.next;
        self.next += 1;
        let edges: Vec<(usize, usize)> = self
            .pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Some(Graph::from_edges(self.n, &edges).expect("valid edge pairs"))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for LabelledGraphs {}

/// Enumerates all `2^(n(n-1)/2)` labelled graphs on `n` vertices,
/// `1 <= n <= 7`. No isomorphism deduplication: the claims checked over
/// this enumeration are isomorphism-invariant, so labelled coverage is
/// enough and much simpler.
pub fn enumerate_graphs(n: usize) -> Result<LabelledGraphs> {
    if !(1..=MAX_LABELLED_N).contains(&n) {
        return Err(Error::OutOfRange {
            what: "labelled-graph vertex count",
            got: n,
            min: 1,
            max: MAX_LABELLED_N,
        });
    }
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            pairs.push((u, v));
        }
    }
    let end = 1u64 << pairs.len();
    Ok(LabelledGraphs {
        n,
        pairs,
        next: 0,
        end,
    })
}

/// Chunked parallel sweep returning the first failure in enumeration
/// order, or `None` when every item passes.
fn sweep<T, W, F>(items: impl Iterator<Item = T>, check: F) -> Option<W>
where
    T: Send + Sync,
    W: Send,
    F: Fn(&T) -> Option<W> + Sync,
{
    let mut iter = items;
    let mut buf: Vec<T> = Vec::with_capacity(CHUNK);
    loop {
        buf.clear();
        for item in iter.by_ref() {
            buf.push(item);
            if buf.len() == CHUNK {
                break;
            }
        }
        if buf.is_empty() {
            return None;
        }
        let hit = buf
            .par_iter()
            .enumerate()
            .filter_map(|(i, t)| check(t).map(|w| (i, w)))
            .min_by_key(|(i, _)| *i);
        if let Some((_, w)) = hit {
            return Some(w);
        }
    }
}

/// Checks `avi(K_n) = n/(n+1) < avi(G) < n/2 = avi(E_n)` strictly for
/// every labelled graph other than the edgeless and the complete one.
pub fn verify_global_bounds(n: usize) -> Result<VerificationReport> {
    let claim = "complete-edgeless-bounds";
    let graphs = enumerate_graphs(n)?;
    let total = graphs.len();
    let range = format!("all {total} labelled graphs on {n} vertices");

    let lower = Rational::new(n as i64, n as i64 + 1).unwrap();
    let upper = Rational::new(n as i64, 2).unwrap();
    if engine::avi(&Graph::complete(n)?) != lower {
        return Err(Error::Internal("avi(K_n) != n/(n+1)".into()));
    }
    if engine::avi(&Graph::empty(n)?) != upper {
        return Err(Error::Internal("avi(E_n) != n/2".into()));
    }

    let edgeless = Graph::empty(n)?;
    let complete = Graph::complete(n)?;
    let witness = sweep(graphs, |g| {
        if *g == edgeless || *g == complete {
            return None;
        }
        let value = engine::avi(g);
        if value > lower && value < upper {
            None
        } else {
            Some(Witness::from_graph(g).with_value("avi", &value))
        }
    });
    Ok(match witness {
        Some(w) => VerificationReport::counterexample(claim, range, w),
        None => VerificationReport::verified(claim, range)
            .with_note(format!("bounds: {lower} < avi(G) < {upper}")),
    })
}

/// For every labelled graph, derives the deletion witness from the
/// independent-set family and confirms against the engine that removing
/// it strictly decreases the average.
pub fn verify_decreasing_vertex(n: usize) -> Result<VerificationReport> {
    let claim = "decreasing-vertex-exists";
    let graphs = enumerate_graphs(n)?;
    let total = graphs.len();
    let range = format!("all {total} labelled graphs on {n} vertices");

    let witness = sweep(graphs, |g| {
        let fail = |key: &str, value: String| Some(Witness::from_graph(g).with_value(key, value));
        let fam = match family::independent_family(g) {
            Ok(f) => f,
            Err(e) => return fail("family-error", e.to_string()),
        };
        let x0 = match fam.find_decreasing_element() {
            Ok(x0) => x0,
            Err(e) => return fail("witness-error", e.to_string()),
        };
        let restricted_avg = match fam.restricted(x0) {
            Ok(r) => r.average(),
            Err(e) => return fail("restriction-error", e.to_string()),
        };
        // Dual route: the restricted family is exactly the independent-set
        // family of G - x0.
        let engine_avg = engine::avi(&g.remove_vertex(x0).expect("witness is present"));
        if restricted_avg != engine_avg {
            return fail("route-mismatch", format!("{restricted_avg} vs {engine_avg}"));
        }
        if restricted_avg < engine::avi(g) {
            None
        } else {
            fail("non-decreasing", format!("vertex {x0} -> {restricted_avg}"))
        }
    });
    Ok(match witness {
        Some(w) => VerificationReport::counterexample(claim, range, w),
        None => VerificationReport::verified(claim, range),
    })
}

fn is_star(g: &Graph) -> bool {
    let n = g.vertex_count();
    n <= 2 || g.vertices().any(|v| g.degree(v) == n - 1)
}

fn tree_sweep_range(n: usize, max: usize, what: &'static str) -> Result<()> {
    if n < 1 || n > max {
        return Err(Error::OutOfRange {
            what,
            got: n,
            min: 1,
            max,
        });
    }
    Ok(())
}

/// Checks `avi(S_n) >= avi(T)` for every free tree on `n` vertices, with
/// equality exactly at the star.
pub fn verify_star_maximal(n: usize) -> Result<VerificationReport> {
    tree_sweep_range(n, MAX_TREE_SWEEP_N, "star-maximality order")?;
    let claim = "star-maximal";
    let trees: Vec<Graph> = enumerate_trees(n)?.collect();
    let range = format!("{} free trees on {n} vertices", trees.len());
    let star_avg = engine::avi(&Graph::star(n)?);

    let witness = sweep(trees.into_iter(), |t| {
        let value = engine::avi(t);
        let ok = if is_star(t) {
            value == star_avg
        } else {
            value < star_avg
        };
        if ok {
            None
        } else {
            Some(
                Witness::from_graph(t)
                    .with_value("avi", &value)
                    .with_value("avi-star", &star_avg),
            )
        }
    });
    Ok(match witness {
        Some(w) => VerificationReport::counterexample(claim, range, w),
        None => VerificationReport::verified(claim, range)
            .with_note(format!("avi(S_{n}) = {star_avg}; equality only at the star")),
    })
}

/// Checks that every non-path tree on `n` vertices satisfies the exact
/// bound `avi(T) >= a*n + b` and exceeds `avi(P_n)`, and that the path
/// itself stays below `a*n + b` (for `n >= 4`).
pub fn verify_path_minimal(n: usize) -> Result<VerificationReport> {
    tree_sweep_range(n, MAX_TREE_SWEEP_N, "path-minimality order")?;
    let claim = "path-minimal";
    if n <= 3 {
        return Ok(VerificationReport::verified(
            claim,
            format!("trees on {n} vertices"),
        )
        .with_note("vacuous: every tree on at most three vertices is a path"));
    }
    let trees: Vec<Graph> = enumerate_trees(n)?.collect();
    let range = format!("{} free trees on {n} vertices", trees.len());
    let path_avg = engine::avi(&Graph::path(n)?);
    let linear_bound = &path_analysis::path_slope() * &Rational::from_integer(n as i64)
        + path_analysis::nonpath_intercept();

    // The path itself must sit strictly below the non-path bound.
    if (QuadNumber::from_rational(path_avg.clone()) - &linear_bound).signum() >= 0 {
        return Err(Error::Internal(format!(
            "avi(P_{n}) = {path_avg} is not below the non-path bound"
        )));
    }

    let witness = sweep(trees.into_iter(), |t| {
        if is_path(t) {
            return None;
        }
        let value = engine::avi(t);
        let above_linear =
            (QuadNumber::from_rational(value.clone()) - &linear_bound).signum() >= 0;
        if above_linear && value > path_avg {
            None
        } else {
            Some(
                Witness::from_graph(t)
                    .with_value("avi", &value)
                    .with_value("avi-path", &path_avg)
                    .with_value("linear-bound", &linear_bound),
            )
        }
    });
    Ok(match witness {
        Some(w) => VerificationReport::counterexample(claim, range, w),
        None => VerificationReport::verified(claim, range).with_note(format!(
            "avi(P_{n}) = {path_avg} < a*{n} + b = {linear_bound} <= avi(T) for non-paths"
        )),
    })
}

/// Checks `1/2 <= I(T-v)/I(T) < 1` for every tree on `n` vertices and
/// every vertex `v`.
pub fn verify_quotient_bounds(n: usize) -> Result<VerificationReport> {
    tree_sweep_range(n, MAX_QUOTIENT_N, "quotient-bound order")?;
    let claim = "deletion-quotient-bounds";
    let trees: Vec<Graph> = enumerate_trees(n)?.collect();
    let range = format!(
        "{} free trees on {n} vertices, every vertex",
        trees.len()
    );
    let half = Rational::new(1, 2).unwrap();
    let one = Rational::one();

    let witness = sweep(trees.into_iter(), |t| {
        let count = engine::summary(t).count;
        for v in t.vertices() {
            let removed = engine::summary(&t.remove_vertex(v).expect("present")).count;
            let ratio = Rational::new(removed, count.clone()).expect("I(T) > 0");
            if ratio < half || ratio >= one {
                return Some(
                    Witness::from_graph(t)
                        .with_value("vertex", v)
                        .with_value("ratio", &ratio),
                );
            }
        }
        None
    });
    Ok(match witness {
        Some(w) => VerificationReport::counterexample(claim, range, w),
        None => VerificationReport::verified(claim, range),
    })
}

/// How a single removal moved the average.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Decrease,
    Equal,
    Increase,
}

fn direction(before: &Rational, after: &Rational) -> Direction {
    match after.cmp(before) {
        std::cmp::Ordering::Less => Direction::Decrease,
        std::cmp::Ordering::Equal => Direction::Equal,
        std::cmp::Ordering::Greater => Direction::Increase,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeScanRow {
    pub edge: (usize, usize),
    pub before: Rational,
    pub after: Rational,
    pub direction: Direction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexScanRow {
    pub vertex: usize,
    pub before: Rational,
    pub after: Rational,
    pub direction: Direction,
}

/// Classifies every single-edge removal by its effect on the average.
pub fn edge_scan(g: &Graph) -> Result<Vec<EdgeScanRow>> {
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let before = engine::avi(g);
    Ok(g.edges()
        .into_iter()
        .map(|(u, v)| {
            let after = engine::avi(&g.remove_edge(u, v).expect("edge listed"));
            let direction = direction(&before, &after);
            EdgeScanRow {
                edge: (u, v),
                before: before.clone(),
                after,
                direction,
            }
        })
        .collect())
}

/// Classifies every single-vertex removal by its effect on the average,
/// and confirms that at least one vertex strictly decreases it.
pub fn vertex_scan(g: &Graph) -> Result<Vec<VertexScanRow>> {
    if g.vertex_count() == 0 {
        return Err(Error::NoVertices);
    }
    let before = engine::avi(g);
    let rows: Vec<VertexScanRow> = g
        .vertices()
        .map(|v| {
            let after = engine::avi(&g.remove_vertex(v).expect("present"));
            let direction = direction(&before, &after);
            VertexScanRow {
                vertex: v,
                before: before.clone(),
                after,
                direction,
            }
        })
        .collect();
    if !rows.iter().any(|r| r.direction == Direction::Decrease) {
        return Err(Error::Internal(format!(
            "no vertex removal decreases avi on {g:?}"
        )));
    }
    Ok(rows)
}

/// Exploratory: does the path minimise the weighted average at this
/// fugacity? Reports a witness tree when it does not.
pub fn weighted_extremal_scan(n: usize, alpha: &Rational) -> Result<VerificationReport> {
    if !(2..=MAX_WEIGHTED_SCAN_N).contains(&n) {
        return Err(Error::OutOfRange {
            what: "weighted-scan order",
            got: n,
            min: 2,
            max: MAX_WEIGHTED_SCAN_N,
        });
    }
    if alpha.signum() <= 0 {
        return Err(Error::NonPositiveAlpha(alpha.to_string()));
    }
    let claim = "weighted-path-minimal";
    let range = format!("trees on {n} vertices at alpha = {alpha}");
    let path_value = engine::weighted_summary(&Graph::path(n)?, alpha)?.average;

    let mut best: Option<(Rational, Graph)> = None;
    let mut tie_with_path = false;
    for t in enumerate_trees(n)? {
        if is_path(&t) {
            continue;
        }
        let value = engine::weighted_summary(&t, alpha)?.average;
        if value == path_value {
            tie_with_path = true;
        }
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, t));
        }
    }
    match best {
        Some((value, tree)) if value < path_value => {
            let witness = Witness::from_graph(&tree)
                .with_value("weighted-avi", &value)
                .with_value("weighted-avi-path", &path_value);
            Ok(VerificationReport::counterexample(claim, range, witness)
                .with_note("a non-path tree has a strictly smaller weighted average"))
        }
        _ => {
            let mut report = VerificationReport::verified(claim, range)
                .with_note(format!("path value {path_value}"));
            if tie_with_path {
                report = report.with_note("minimal, but tied with a non-path tree");
            }
            Ok(report)
        }
    }
}
