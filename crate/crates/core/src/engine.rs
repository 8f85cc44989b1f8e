//! Exact computation of the independence polynomial and the derived
//! invariants: the number of independent sets, their total size, the
//! average size, and the fugacity-weighted variants.
//!
//! The core algorithm splits the graph into connected components and
//! multiplies their polynomials. Within a component it pivots on a
//! maximum-degree vertex `v` and uses the deletion recursion
//! `I(G,x) = I(G-v,x) + x*I(G-N[v],x)`, memoised on the subset mask of
//! surviving vertices. Connected tree subproblems switch to a linear
//! rooted two-state DP, which keeps enumeration workloads (millions of
//! engine calls over all trees of a given order) fast.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::graph::Graph;

/// Cap for the exhaustive subset oracle.
pub const BRUTE_FORCE_MAX_VERTICES: usize = 25;

/// The independence polynomial: `coeffs[k]` counts the independent sets
/// of size `k`. Every graph has `coeffs[0] = 1` (the empty set), and the
/// degree equals the independence number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependencePoly {
    coeffs: Vec<BigInt>,
}

impl IndependencePoly {
    /// The polynomial of the empty graph: the constant 1.
    pub fn one() -> Self {
        IndependencePoly {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::one());
        }
        IndependencePoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Largest independent-set size counted by the polynomial.
    pub fn independence_number(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Total number of independent sets (evaluation at 1).
    pub fn count(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Total size of all independent sets (derivative at 1).
    pub fn total(&self) -> BigInt {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * BigInt::from(k))
            .sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(other.coeffs.len())];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        IndependencePoly::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IndependencePoly::from_coeffs(coeffs)
    }

    /// Multiplication by `x`: every counted set gains one element.
    pub fn shifted(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigInt::zero());
        coeffs.extend_from_slice(&self.coeffs);
        IndependencePoly { coeffs }
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        // Horner, highest coefficient first.
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc
    }

    /// Exact evaluation of `sum_k k * coeffs[k] * x^k`.
    pub fn weighted_total(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        let mut power = Rational::one();
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                power *= x;
                acc += &(Rational::from_integer(c * BigInt::from(k)) * &power);
            }
        }
        acc
    }
}

impl fmt::Display for IndependencePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            if k == 0 {
                write!(f, "{c}")?;
            } else if k == 1 {
                write!(f, " + {c}*x")?;
            } else {
                write!(f, " + {c}*x^{k}")?;
            }
        }
        Ok(())
    }
}

/// `I(G)`, `T(G)` and their exact ratio `avi(G)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSummary {
    pub count: BigInt,
    pub total: BigInt,
    pub average: Rational,
}

/// The weighted counterparts at fugacity `alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedSummary {
    pub count: Rational,
    pub total: Rational,
    pub average: Rational,
}

#[inline]
fn bit(v: usize) -> u64 {
    1u64 << v
}

fn pivot_vertex(g: &Graph, mask: u64) -> usize {
    let mut best = usize::MAX;
    let mut best_deg = 0;
    let mut scan = mask;
    while scan != 0 {
        let v = scan.trailing_zeros() as usize;
        scan &= scan - 1;
        let deg = (g.neighbors(v) & mask).count_ones() as usize;
        if best == usize::MAX || deg > best_deg {
            best = v;
            best_deg = deg;
        }
    }
    best
}

fn mask_edge_count(g: &Graph, mask: u64) -> usize {
    let mut twice = 0usize;
    let mut scan = mask;
    while scan != 0 {
        let v = scan.trailing_zeros() as usize;
        scan &= scan - 1;
        twice += (g.neighbors(v) & mask).count_ones() as usize;
    }
    twice / 2
}

/// Two-state DP on a tree submask: polynomial with the root included and
/// with the root excluded.
fn tree_dp(g: &Graph, mask: u64, v: usize, parent: u64) -> (IndependencePoly, IndependencePoly) {
    let mut included = IndependencePoly::one();
    let mut excluded = IndependencePoly::one();
    let mut children = g.neighbors(v) & mask & !parent;
    while children != 0 {
        let c = children.trailing_zeros() as usize;
        children &= children - 1;
        let (c_in, c_out) = tree_dp(g, mask, c, bit(v));
        included = included.mul(&c_out);
        excluded = excluded.mul(&c_in.add(&c_out));
    }
    (included.shifted(), excluded)
}

fn tree_poly(g: &Graph, mask: u64) -> IndependencePoly {
    let root = mask.trailing_zeros() as usize;
    let (inc, exc) = tree_dp(g, mask, root, 0);
    inc.add(&exc)
}

fn poly_mask(
    g: &Graph,
    mask: u64,
    memo: &mut HashMap<u64, IndependencePoly>,
    use_tree_dp: bool,
) -> IndependencePoly {
    if mask == 0 {
        return IndependencePoly::one();
    }
    if let Some(p) = memo.get(&mask) {
        return p.clone();
    }
    let comps = g.component_masks_of(mask);
    let poly = if comps.len() > 1 {
        let mut acc = IndependencePoly::one();
        for comp in comps {
            acc = acc.mul(&poly_mask(g, comp, memo, use_tree_dp));
        }
        acc
    } else if use_tree_dp && mask_edge_count(g, mask) == mask.count_ones() as usize - 1 {
        // Connected with n-1 edges: a tree.
        tree_poly(g, mask)
    } else {
        let v = pivot_vertex(g, mask);
        let closed = (g.neighbors(v) & mask) | bit(v);
        let without_v = poly_mask(g, mask & !bit(v), memo, use_tree_dp);
        let without_nbhd = poly_mask(g, mask & !closed, memo, use_tree_dp);
        without_v.add(&without_nbhd.shifted())
    };
    memo.insert(mask, poly.clone());
    poly
}

pub(crate) fn indep_poly_with(g: &Graph, use_tree_dp: bool) -> IndependencePoly {
    // The memo is local to this call, so concurrent calls never share state.
    let mut memo = HashMap::new();
    poly_mask(g, g.present_mask(), &mut memo, use_tree_dp)
}

/// Exact independence polynomial of `g`.
pub fn indep_poly(g: &Graph) -> IndependencePoly {
    indep_poly_with(g, true)
}

/// Subset-enumeration oracle: walks all `2^n` vertex subsets and tests
/// independence directly. Deliberately independent of [`indep_poly`].
pub fn brute_force_poly(g: &Graph) -> Result<IndependencePoly> {
    let verts: Vec<usize> = g.vertices().collect();
    let m = verts.len();
    if m > BRUTE_FORCE_MAX_VERTICES {
        return Err(Error::Capacity {
            got: m,
            limit: BRUTE_FORCE_MAX_VERTICES,
        });
    }
    // Adjacency compressed to indices 0..m.
    let mut cadj = vec![0u32; m];
    for (i, &u) in verts.iter().enumerate() {
        for (j, &v) in verts.iter().enumerate() {
            if g.has_edge(u, v) {
                cadj[i] |= 1 << j;
            }
        }
    }
    let mut independent = vec![false; 1usize << m];
    independent[0] = true;
    let mut counts = vec![0u64; m + 1];
    counts[0] = 1;
    for s in 1..(1usize << m) {
        let v = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        if independent[rest] && cadj[v] as usize & rest == 0 {
            independent[s] = true;
            counts[s.count_ones() as usize] += 1;
        }
    }
    Ok(IndependencePoly::from_coeffs(
        counts.into_iter().map(BigInt::from).collect(),
    ))
}

/// `I(G)`, `T(G)`, `avi(G)` from the exact polynomial.
pub fn summary(g: &Graph) -> InvariantSummary {
    let poly = indep_poly(g);
    summary_of_poly(&poly)
}

pub fn summary_of_poly(poly: &IndependencePoly) -> InvariantSummary {
    let count = poly.count();
    let total = poly.total();
    let average = Rational::new(total.clone(), count.clone()).expect("count >= 1");
    InvariantSummary {
        count,
        total,
        average,
    }
}

/// Average size of independent sets.
pub fn avi(g: &Graph) -> Rational {
    summary(g).average
}

/// Weighted invariants at fugacity `alpha > 0`.
pub fn weighted_summary(g: &Graph, alpha: &Rational) -> Result<WeightedSummary> {
    if alpha.signum() <= 0 {
        return Err(Error::NonPositiveAlpha(alpha.to_string()));
    }
    let poly = indep_poly(g);
    Ok(weighted_summary_of_poly(&poly, alpha))
}

pub fn weighted_summary_of_poly(poly: &IndependencePoly, alpha: &Rational) -> WeightedSummary {
    let count = poly.eval(alpha);
    let total = poly.weighted_total(alpha);
    let average = total.checked_div(&count).expect("count > 0 for alpha > 0");
    WeightedSummary {
        count,
        total,
        average,
    }
}

/// Computes `avi` of the disjoint union and checks, exactly, that it
/// equals the sum of the per-part values.
pub fn avi_additive_check(parts: &[Graph]) -> Result<Rational> {
    let union = Graph::disjoint_union(parts)?;
    let whole = avi(&union);
    let by_parts: Rational = parts.iter().map(avi).sum();
    if whole != by_parts {
        return Err(Error::Internal(format!(
            "avi of disjoint union {whole} != sum of parts {by_parts}"
        )));
    }
    Ok(whole)
}
