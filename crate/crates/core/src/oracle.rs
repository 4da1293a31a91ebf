//! Brute-force ground truth for small instances.
//!
//! Nothing here shares code with the constructive algorithms beyond the
//! per-part checks in [`crate::verify`].

use std::collections::HashSet;

use crate::graph::Graph;
use crate::partitioners::Partition;
use crate::verify::{check_part, PartitionSpec};
use crate::{Error, Result};

pub const MAX_PARTITION_N: usize = 12;
pub const MAX_MERGE_TOTAL: usize = 40;

/// Exhaustively looks for a partition of `V(g)` matching `spec`.
///
/// Vertices are placed in id order; each placement re-checks only the part
/// that grew, which is enough because every supported constraint is closed
/// under taking induced subgraphs. With `spec.equitable`, part sizes are
/// capped so that only equitable size profiles are reached.
pub fn brute_partition_exists(g: &Graph, spec: &PartitionSpec) -> Result<Option<Partition>> {
    let n = g.n();
    if n > MAX_PARTITION_N {
        return Err(Error::InstanceTooLarge {
            size: n,
            cap: MAX_PARTITION_N,
        });
    }
    if spec.parts == 0 {
        return Ok((n == 0).then(|| Partition {
            parts: Vec::new(),
            trace: Vec::new(),
        }));
    }
    let mut state = Brute {
        g,
        spec,
        parts: vec![Vec::new(); spec.parts],
        hi: if spec.equitable { n.div_ceil(spec.parts) } else { n },
        extra: if spec.equitable && !n.is_multiple_of(spec.parts) {
            n % spec.parts
        } else {
            spec.parts
        },
    };
    Ok(state.place(0).then(|| Partition {
        parts: state.parts.iter().map(|p| p.iter().copied().collect()).collect(),
        trace: Vec::new(),
    }))
}

struct Brute<'a> {
    g: &'a Graph,
    spec: &'a PartitionSpec,
    parts: Vec<Vec<usize>>,
    /// Largest allowed part size.
    hi: usize,
    /// How many parts may reach `hi`.
    extra: usize,
}

impl Brute<'_> {
    fn place(&mut self, v: usize) -> bool {
        if v == self.g.n() {
            return true;
        }
        for i in 0..self.parts.len() {
            let size = self.parts[i].len();
            if size == self.hi {
                continue;
            }
            if size + 1 == self.hi && self.parts.iter().filter(|p| p.len() == self.hi).count() == self.extra {
                continue;
            }
            // Empty parts with the same constraint are interchangeable.
            if size == 0
                && (0..i).any(|j| self.parts[j].is_empty() && self.spec.constraint(j) == self.spec.constraint(i))
            {
                continue;
            }
            self.parts[i].push(v);
            if check_part(self.g, &self.parts[i], self.spec.constraint(i)).is_ok() && self.place(v + 1) {
                return true;
            }
            self.parts[i].pop();
        }
        false
    }
}

/// Whether `ell` disjoint sets of size at least `target` exist, each inside
/// the union of at most two classes whose sizes are `class_sizes`.
///
/// Only sizes matter: each set is described by the classes it draws from and
/// how many elements it takes from each.
pub fn merge_bound_tight(class_sizes: &[usize], ell: usize, target: usize) -> Result<bool> {
    let total: usize = class_sizes.iter().sum();
    if total > MAX_MERGE_TOTAL {
        return Err(Error::InstanceTooLarge {
            size: total,
            cap: MAX_MERGE_TOTAL,
        });
    }
    let mut caps = class_sizes.to_vec();
    caps.sort_unstable();
    let mut failed = HashSet::new();
    Ok(fits(&caps, ell, target, &mut failed))
}

/// Sets of exactly `target` elements suffice, since larger ones can shrink.
/// `caps` is kept sorted so that failed states are shared across class
/// permutations.
fn fits(caps: &[usize], ell: usize, target: usize, failed: &mut HashSet<(usize, Vec<usize>)>) -> bool {
    if ell == 0 || target == 0 {
        return true;
    }
    if ell * target > caps.iter().sum() || failed.contains(&(ell, caps.to_vec())) {
        return false;
    }
    let k = caps.len();
    for i in 0..k {
        for j in i..k {
            let (ci, cj) = (caps[i], caps[j]);
            let reach = if i == j { ci } else { ci + cj };
            if reach < target {
                continue;
            }
            // Take x from class i and the rest from class j.
            let xs = if i == j {
                target..=target
            } else {
                target.saturating_sub(cj)..=ci.min(target)
            };
            for x in xs {
                let mut next = caps.to_vec();
                next[i] -= x;
                if i != j {
                    next[j] -= target - x;
                }
                next.sort_unstable();
                if fits(&next, ell - 1, target, failed) {
                    return true;
                }
            }
        }
    }
    failed.insert((ell, caps.to_vec()));
    false
}
