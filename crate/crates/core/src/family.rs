//! Finite set families over a ground set of at most 64 elements, and the
//! constructive form of the averaging argument: whenever the member
//! cardinalities are not all equal, some ground element can be deleted
//! so that the surviving members have a strictly smaller average size.

use num_bigint::BigInt;

use crate::engine;
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::graph::Graph;

/// An explicit family of distinct subsets (bitmasks) of a ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    ground: u64,
    members: Vec<u64>,
}

impl SetFamily {
    /// Validates that the members are distinct, nonempty as a list, and
    /// contained in the ground set.
    pub fn new(ground: u64, members: Vec<u64>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let mut seen = std::collections::HashSet::with_capacity(members.len());
        for &m in &members {
            if m & !ground != 0 {
                return Err(Error::MemberOutsideGround);
            }
            if !seen.insert(m) {
                return Err(Error::DuplicateMember);
            }
        }
        Ok(SetFamily { ground, members })
    }

    pub fn ground(&self) -> u64 {
        self.ground
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Sum of member cardinalities.
    pub fn size_total(&self) -> u64 {
        self.members.iter().map(|m| m.count_ones() as u64).sum()
    }

    /// `counts[k]` = number of members of cardinality `k`.
    pub fn counts_by_size(&self) -> Vec<u64> {
        let max = self
            .members
            .iter()
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0);
        let mut counts = vec![0u64; max + 1];
        for m in &self.members {
            counts[m.count_ones() as usize] += 1;
        }
        counts
    }

    /// Exact average cardinality of the members.
    pub fn average(&self) -> Rational {
        Rational::new(
            BigInt::from(self.size_total()),
            BigInt::from(self.members.len()),
        )
        .expect("family is nonempty")
    }

    /// The members avoiding `x`, as a family over the shrunken ground set.
    pub fn restricted(&self, x: usize) -> Result<SetFamily> {
        let b = 1u64 << x;
        let kept: Vec<u64> = self
            .members
            .iter()
            .copied()
            .filter(|m| m & b == 0)
            .collect();
        SetFamily::new(self.ground & !b, kept)
    }

    /// Finds a ground element whose deletion strictly decreases the
    /// average member size. Requires the member cardinalities not to be
    /// all equal; in that degenerate case no such element can exist and
    /// an error is returned.
    ///
    /// Among the elements with a nonempty restricted family, the one
    /// minimising the restricted average is returned (lowest index on
    /// ties), matching the existence argument: the restricted averages,
    /// weighted by the restricted family sizes, average out to something
    /// strictly below the family average.
    pub fn find_decreasing_element(&self) -> Result<usize> {
        let sizes: Vec<u32> = self.members.iter().map(|m| m.count_ones()).collect();
        if sizes.iter().all(|&s| s == sizes[0]) {
            return Err(Error::DegenerateFamily);
        }
        let mut best: Option<(usize, u64, u64)> = None; // (x, restricted total, restricted count)
        let mut scan = self.ground;
        while scan != 0 {
            let x = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            let b = 1u64 << x;
            let mut total = 0u64;
            let mut count = 0u64;
            for m in &self.members {
                if m & b == 0 {
                    total += m.count_ones() as u64;
                    count += 1;
                }
            }
            if count == 0 {
                continue;
            }
            let better = match &best {
                None => true,
                // total/count < best_total/best_count, exactly.
                Some((_, bt, bc)) => (total as u128) * (*bc as u128) < (*bt as u128) * (count as u128),
            };
            if better {
                best = Some((x, total, count));
            }
        }
        let (x, total, count) =
            best.expect("some member misses some element when cardinalities differ");
        // The choice must strictly win against the family average.
        debug_assert!(
            (total as u128) * (self.members.len() as u128)
                < (self.size_total() as u128) * (count as u128)
        );
        Ok(x)
    }
}

/// All independent sets of `g` (including the empty set) as a family over
/// the present vertices.
pub fn independent_family(g: &Graph) -> Result<SetFamily> {
    let verts: Vec<usize> = g.vertices().collect();
    if verts.len() > engine::BRUTE_FORCE_MAX_VERTICES {
        return Err(Error::Capacity {
            got: verts.len(),
            limit: engine::BRUTE_FORCE_MAX_VERTICES,
        });
    }
    let m = verts.len();
    let mut cadj = vec![0u64; m];
    for (i, &u) in verts.iter().enumerate() {
        for (j, &v) in verts.iter().enumerate() {
            if g.has_edge(u, v) {
                cadj[i] |= 1 << j;
            }
        }
    }
    // Incremental independence over compressed masks, then expand back to
    // the original vertex indices.
    let mut independent = vec![false; 1usize << m];
    independent[0] = true;
    let mut members = Vec::new();
    for s in 0..(1usize << m) {
        if s > 0 {
            let v = s.trailing_zeros() as usize;
            let rest = s & (s - 1);
            independent[s] = independent[rest] && (cadj[v] as usize & rest) == 0;
        }
        if independent[s] {
            let mut mask = 0u64;
            let mut scan = s;
            while scan != 0 {
                let i = scan.trailing_zeros() as usize;
                scan &= scan - 1;
                mask |= 1u64 << verts[i];
            }
            members.push(mask);
        }
    }
    SetFamily::new(g.present_mask(), members)
}
