//! Pairwise merging of disjoint classes into large blocks.
//!
//! Given disjoint classes `A_0..A_{k-1}` with `n` elements in total and a
//! target `ell < k`, [`proposition_merge`] produces blocks `B_1..B_ell`, each
//! inside the union of at most two classes, plus a leftover `B_0` inside the
//! union of `k - ell - 1` classes. Every block has at least
//! `q = ⌊(2n + k - ell) / (k + ell - 1)⌋` elements and the first
//! `r = ⌈n - (k + ell - 1) q / 2⌉` of them have at least `q + 1`.
//!
//! Class indices are 0-based throughout, including in provenance and `I`.

use serde::{Deserialize, Serialize};

use crate::coloring::{validate_coloring, Coloring, ColoringKind};
use crate::graph::{Graph, VertexSet};
use crate::partitioners::Partition;
use crate::{Error, Result};

/// `⌊(2n + k - ell) / (k + ell - 1)⌋`, the guaranteed block size.
pub fn merge_quota(k: usize, ell: usize, n: usize) -> Result<usize> {
    if ell < 1 || ell >= k {
        return Err(Error::BadParameters(format!("need 1 <= ell < k, got k={k}, ell={ell}")));
    }
    Ok((2 * n + k - ell) / (k + ell - 1))
}

/// `⌈n - (k + ell - 1) q / 2⌉`: how many blocks must exceed the quota.
/// May be zero or negative.
pub fn threshold(k: usize, ell: usize, n: usize, q: usize) -> i64 {
    let twice = 2 * n as i64 - ((k + ell - 1) * q) as i64;
    twice.div_euclid(2) + twice.rem_euclid(2)
}

/// One recursion step of the merge, in numbers only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotaStep {
    pub q: usize,
    pub n_prime: i64,
    pub q_prime: i64,
    pub threshold: i64,
    /// `q' = q + 1` exactly when `threshold >= ell - 1`, and `q' = q` otherwise.
    pub quota_rule_holds: bool,
    /// `n - (k+ell-1) q / 2 = n' - (k+ell-3) q / 2`, compared after doubling.
    pub slack_identity_holds: bool,
    pub identity_holds: bool,
}

/// Evaluates the quota after one block of size `q` is split off: with
/// `n' = n - q` and `q' = ⌊(2n' + k - ell) / (k + ell - 3)⌋`, reports whether
/// `q'` relates to `q` as the merge recursion needs.
pub fn lemma_quota_step(k: usize, ell: usize, n: usize) -> Result<QuotaStep> {
    if ell < 2 || ell >= k {
        return Err(Error::BadParameters(format!("need 2 <= ell < k, got k={k}, ell={ell}")));
    }
    let q = merge_quota(k, ell, n)?;
    let n_prime = n as i64 - q as i64;
    let numerator = 2 * n_prime + (k - ell) as i64;
    let q_prime = numerator.div_euclid((k + ell - 3) as i64);
    let r = threshold(k, ell, n, q);
    let expected = if r >= ell as i64 - 1 { q as i64 + 1 } else { q as i64 };
    let quota_rule_holds = q_prime == expected;
    let slack_identity_holds = 2 * n as i64 - ((k + ell - 1) * q) as i64 == 2 * n_prime - ((k + ell - 3) * q) as i64;
    Ok(QuotaStep {
        q,
        n_prime,
        q_prime,
        threshold: r,
        quota_rule_holds,
        slack_identity_holds,
        identity_holds: quota_rule_holds && slack_identity_holds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeInput {
    pub classes: Vec<VertexSet>,
    pub ell: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergedBlock {
    pub members: VertexSet,
    /// Indices of the (at most two) classes the block was drawn from.
    pub from: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeResult {
    #[serde(rename = "B0")]
    pub b0: VertexSet,
    /// Sorted by decreasing size, so the size guarantees hold by position.
    #[serde(rename = "B")]
    pub blocks: Vec<MergedBlock>,
    /// `k - ell - 1` class indices whose union contains `B0`.
    #[serde(rename = "I")]
    pub leftover_classes: Vec<usize>,
    pub q: usize,
    pub r: i64,
}

impl MergeResult {
    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.members.len()).collect()
    }
}

/// Merges classes into `ell` large blocks and a leftover.
///
/// Follows the induction on `ell`:
/// * `ell = 1`: the two largest classes (lexicographically first pair on
///   ties) form the block.
/// * otherwise, if some ordered pair `(i, j)` has `|A_i| <= q <= |A_i| +
///   |A_j|`, the block is `A_i` plus the `q - |A_i|` lowest ids of `A_j`, and
///   the rest is merged recursively into `ell - 1` blocks;
/// * otherwise every class exceeds `q`, and the blocks are single classes
///   except for the last, which joins two.
///
/// The result is checked against all size and provenance guarantees before
/// it is returned.
pub fn proposition_merge(input: &MergeInput) -> Result<MergeResult> {
    let k = input.classes.len();
    let ell = input.ell;
    if k < 2 || ell < 1 || ell >= k {
        return Err(Error::BadParameters(format!(
            "need k >= 2 classes and 1 <= ell < k, got k={k}, ell={ell}"
        )));
    }
    ensure_disjoint(&input.classes)?;
    let n: usize = input.classes.iter().map(VertexSet::len).sum();
    let q = merge_quota(k, ell, n)?;

    let classes: Vec<(usize, Vec<usize>)> = input.classes.iter().enumerate().map(|(i, c)| (i, c.to_vec())).collect();
    let (b0, mut blocks, mut leftover) = merge_rec(classes, ell)?;
    blocks.sort_by_key(|b| std::cmp::Reverse(b.members.len()));
    leftover.sort_unstable();

    let result = MergeResult {
        b0: b0.into_iter().collect(),
        blocks,
        leftover_classes: leftover,
        q,
        r: threshold(k, ell, n, q),
    };
    check_merge_result(&input.classes, ell, &result)?;
    Ok(result)
}

type Partial = (Vec<usize>, Vec<MergedBlock>, Vec<usize>);

fn merge_rec(classes: Vec<(usize, Vec<usize>)>, ell: usize) -> Result<Partial> {
    let k = classes.len();
    let n: usize = classes.iter().map(|(_, c)| c.len()).sum();
    let q = merge_quota(k, ell, n)?;
    let size = |i: usize| classes[i].1.len();

    if ell == 1 {
        let mut best = (0, 1);
        for i in 0..k {
            for j in i + 1..k {
                if size(i) + size(j) > size(best.0) + size(best.1) {
                    best = (i, j);
                }
            }
        }
        let (i, j) = best;
        let members = classes[i].1.iter().chain(&classes[j].1).copied().collect();
        let mut b0 = Vec::new();
        let mut leftover = Vec::new();
        for (t, (orig, c)) in classes.iter().enumerate() {
            if t != i && t != j {
                b0.extend_from_slice(c);
                leftover.push(*orig);
            }
        }
        let block = MergedBlock {
            members,
            from: sorted_pair(classes[i].0, classes[j].0),
        };
        return Ok((b0, vec![block], leftover));
    }

    let split = (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .find(|&(i, j)| i != j && size(i) <= q && q <= size(i) + size(j));
    if let Some((i, j)) = split {
        let take = q - size(i);
        let mut members: VertexSet = classes[i].1.iter().copied().collect();
        members.extend(classes[j].1[..take].iter().copied());
        let block = MergedBlock {
            members,
            from: sorted_pair(classes[i].0, classes[j].0),
        };
        let rest: Vec<(usize, Vec<usize>)> = classes
            .iter()
            .enumerate()
            .filter(|&(t, _)| t != i)
            .map(|(t, (orig, c))| {
                let c = if t == j { c[take..].to_vec() } else { c.clone() };
                (*orig, c)
            })
            .collect();
        let (b0, mut blocks, leftover) = merge_rec(rest, ell - 1)?;
        blocks.push(block);
        return Ok((b0, blocks, leftover));
    }

    if (0..k).any(|i| size(i) <= q) {
        return Err(Error::UnreachableCaseII { k, ell, q });
    }
    // Every class is larger than q.
    let mut blocks: Vec<MergedBlock> = (0..ell - 1)
        .map(|i| MergedBlock {
            members: classes[i].1.iter().copied().collect(),
            from: vec![classes[i].0],
        })
        .collect();
    blocks.push(MergedBlock {
        members: classes[ell - 1].1.iter().chain(&classes[ell].1).copied().collect(),
        from: sorted_pair(classes[ell - 1].0, classes[ell].0),
    });
    let b0 = classes[ell + 1..].iter().flat_map(|(_, c)| c.iter().copied()).collect();
    let leftover = classes[ell + 1..].iter().map(|(orig, _)| *orig).collect();
    Ok((b0, blocks, leftover))
}

fn sorted_pair(a: usize, b: usize) -> Vec<usize> {
    vec![a.min(b), a.max(b)]
}

fn ensure_disjoint(classes: &[VertexSet]) -> Result<()> {
    let mut seen = std::collections::BTreeSet::new();
    for c in classes {
        for v in c.iter() {
            if !seen.insert(v) {
                return Err(Error::OverlappingSets { vertex: v });
            }
        }
    }
    Ok(())
}

/// Checks the four guarantees of a merge result against its input.
pub fn check_merge_result(classes: &[VertexSet], ell: usize, result: &MergeResult) -> Result<()> {
    let fail = |what: &str| Err(Error::MergeInvariant(what.to_string()));
    let k = classes.len();
    let n: usize = classes.iter().map(VertexSet::len).sum();

    // The blocks and the leftover partition the union of the classes.
    let mut all: Vec<usize> = result.b0.iter().collect();
    for b in &result.blocks {
        all.extend(b.members.iter());
    }
    all.sort_unstable();
    let mut union: Vec<usize> = classes.iter().flat_map(VertexSet::iter).collect();
    union.sort_unstable();
    if all != union || result.blocks.len() != ell {
        return fail("partition of the union into ell blocks and a leftover");
    }
    // (i) each block lies in the union of its (at most two) source classes.
    for b in &result.blocks {
        if b.from.is_empty() || b.from.len() > 2 || b.from.iter().any(|&i| i >= k) {
            return fail("(i) provenance names one or two classes");
        }
        if !b.members.iter().all(|v| b.from.iter().any(|&i| classes[i].contains(v))) {
            return fail("(i) block inside the union of two classes");
        }
    }
    // (ii) and (iii) sizes.
    let q = merge_quota(k, ell, n)?;
    let r = threshold(k, ell, n, q);
    if result.q != q || result.r != r {
        return fail("quota and threshold");
    }
    for (pos, b) in result.blocks.iter().enumerate() {
        let need = if (pos as i64) < r { q + 1 } else { q };
        if b.members.len() < need {
            return fail(if (pos as i64) < r {
                "(ii) |B_i| >= q + 1"
            } else {
                "(iii) |B_i| >= q"
            });
        }
    }
    // (iv) the leftover lies in k - ell - 1 classes.
    let mut idx = result.leftover_classes.clone();
    idx.sort_unstable();
    idx.dedup();
    if idx.len() != k - ell - 1 || idx.iter().any(|&i| i >= k) {
        return fail("(iv) |I| = k - ell - 1");
    }
    if !result.b0.iter().all(|v| idx.iter().any(|&i| classes[i].contains(v))) {
        return fail("(iv) B0 inside the union of the classes in I");
    }
    Ok(())
}

/// `k - 1` blocks whose sizes are `⌊n/(k-1)⌋` or `⌈n/(k-1)⌉`, each inside the
/// union of two classes. The leftover is always empty.
pub fn equitable_merge(classes: &[VertexSet]) -> Result<MergeResult> {
    let k = classes.len();
    if k < 2 {
        return Err(Error::BadParameters(format!("need at least two classes, got {k}")));
    }
    let result = proposition_merge(&MergeInput {
        classes: classes.to_vec(),
        ell: k - 1,
    })?;
    let n: usize = classes.iter().map(VertexSet::len).sum();
    let (lo, extra) = (n / (k - 1), n % (k - 1));
    if !result.b0.is_empty() {
        return Err(Error::MergeInvariant("B0 empty when ell = k - 1".into()));
    }
    let sizes = result.block_sizes();
    let larger = sizes.iter().filter(|&&s| s == lo + 1).count();
    if sizes.iter().any(|&s| s != lo && s != lo + 1) || (extra > 0 && larger != extra) {
        return Err(Error::MergeInvariant(format!(
            "sizes {sizes:?} are not {extra} x {} and the rest {lo}",
            lo + 1
        )));
    }
    Ok(result)
}

/// An equitable three-way split whose second and third parts are forests,
/// together with the merge it was trimmed from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoForestSplit {
    pub partition: Partition,
    pub merge: MergeResult,
}

/// Equitable 3-partition `(B0', B1', B2')` with `B1'` and `B2'` inducing
/// forests, from an acyclic coloring with at most five classes.
pub fn partition_2forests_1graph(g: &Graph, coloring: &[VertexSet]) -> Result<Partition> {
    split_2forests_1graph(g, coloring).map(|s| s.partition)
}

pub fn split_2forests_1graph(g: &Graph, coloring: &[VertexSet]) -> Result<TwoForestSplit> {
    let mut classes = coloring.to_vec();
    if classes.len() <= 5 {
        classes.resize(5, VertexSet::new());
    }
    let as_coloring = Coloring {
        kind: ColoringKind::Acyclic,
        classes: classes.clone(),
    };
    let report = validate_coloring(g, &as_coloring);
    if classes.len() != 5 || !report.passed() {
        let mut report = report;
        report.push(crate::verify::Check::from_result(
            "class_count<=5",
            if classes.len() == 5 {
                Ok(())
            } else {
                Err(crate::verify::Witness::PartCount {
                    expected: 5,
                    actual: classes.len(),
                })
            },
        ));
        return Err(Error::InvalidColoring {
            report: Box::new(report),
        });
    }

    let merge = proposition_merge(&MergeInput { classes, ell: 2 })?;
    let n = g.n();
    let target = n / 3 + usize::from(n % 3 == 2);
    let trimmed: Vec<VertexSet> = merge
        .blocks
        .iter()
        .map(|b| b.members.iter().take(target).collect())
        .collect();
    if trimmed.iter().any(|b| b.len() != target) {
        return Err(Error::MergeInvariant(format!(
            "blocks {:?} too small for target {target}",
            merge.block_sizes()
        )));
    }
    let rest: VertexSet = g
        .vertices()
        .filter(|&v| trimmed.iter().all(|b| !b.contains(v)))
        .collect();
    let mut parts = vec![rest];
    parts.extend(trimmed);
    Ok(TwoForestSplit {
        partition: Partition {
            parts,
            trace: Vec::new(),
        },
        merge,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Synthetic classes with consecutive labels.
    fn classes(sizes: &[usize]) -> Vec<VertexSet> {
        let mut next = 0;
        sizes
            .iter()
            .map(|&s| {
                let c = (next..next + s).collect();
                next += s;
                c
            })
            .collect()
    }

    #[test]
    fn quota_examples() {
        assert_eq!(merge_quota(5, 2, 10).unwrap(), 3);
        for n in 0..50 {
            assert_eq!(merge_quota(5, 2, n).unwrap(), (n + 1) / 3);
            assert_eq!(merge_quota(4, 3, n).unwrap(), n / 3);
        }
        assert_eq!(merge_quota(4, 3, 10).unwrap(), 3);
        assert_eq!(merge_quota(2, 1, 0).unwrap(), 0);
        assert!(merge_quota(3, 3, 5).is_err());
        assert!(merge_quota(3, 0, 5).is_err());
    }

    #[test]
    fn quota_step_examples() {
        let s = lemma_quota_step(5, 2, 10).unwrap();
        assert_eq!((s.q, s.n_prime, s.q_prime, s.threshold), (3, 7, 4, 1));
        assert!(s.identity_holds);
        let s = lemma_quota_step(5, 2, 12).unwrap();
        assert_eq!((s.q, s.n_prime, s.q_prime, s.threshold), (4, 8, 4, 0));
        assert!(s.identity_holds);
        let s = lemma_quota_step(3, 2, 4).unwrap();
        assert_eq!((s.q, s.n_prime, s.q_prime, s.threshold), (2, 2, 2, 0));
        assert!(s.identity_holds);
        assert!(lemma_quota_step(5, 1, 10).is_err());
    }

    #[test]
    fn merge_sizes_42222() {
        let r = proposition_merge(&MergeInput {
            classes: classes(&[4, 2, 2, 2, 2]),
            ell: 2,
        })
        .unwrap();
        assert_eq!((r.q, r.r), (4, 0));
        assert!(r.block_sizes().iter().all(|&s| s >= 4));
        assert_eq!(r.leftover_classes.len(), 2);
    }

    #[test]
    fn tight_family_hits_quota_exactly() {
        let a = 2;
        let r = proposition_merge(&MergeInput {
            classes: classes(&[2 * a, a, a, a, a]),
            ell: 2,
        })
        .unwrap();
        assert_eq!(r.q, 2 * a);
    }

    #[test]
    fn two_singletons_merge() {
        let r = proposition_merge(&MergeInput {
            classes: vec![[0].into(), [1].into()],
            ell: 1,
        })
        .unwrap();
        assert_eq!(r.blocks[0].members, [0, 1].into());
        assert!(r.b0.is_empty());
        assert_eq!(r.q, 2);
    }

    #[test]
    fn small_systems_satisfy_invariants() {
        for sizes in [[3usize, 3, 3, 3].as_slice(), &[5, 5, 5], &[1, 6, 6, 6, 6], &[0, 0, 4]] {
            for ell in 1..sizes.len() {
                let input = MergeInput {
                    classes: classes(sizes),
                    ell,
                };
                proposition_merge(&input).unwrap();
            }
        }
    }

    #[test]
    fn overlapping_classes_rejected() {
        let err = proposition_merge(&MergeInput {
            classes: vec![[0, 1].into(), [1, 2].into()],
            ell: 1,
        })
        .unwrap_err();
        assert_eq!(err, Error::OverlappingSets { vertex: 1 });
    }

    #[test]
    fn equitable_examples() {
        let r = equitable_merge(&classes(&[3, 3, 3, 3])).unwrap();
        assert_eq!(r.block_sizes(), vec![4, 4, 4]);

        let r = equitable_merge(&[[0, 1].into(), [2].into()]).unwrap();
        assert_eq!(r.blocks.len(), 1);
        assert_eq!(r.blocks[0].members, [0, 1, 2].into());

        let r = equitable_merge(&classes(&[1, 1, 1, 1, 1])).unwrap();
        assert_eq!(r.block_sizes(), vec![2, 1, 1, 1]);
    }

    #[test]
    fn forest_split_edgeless() {
        let g = Graph::empty(6);
        let coloring = vec![
            (0..6).collect(),
            VertexSet::new(),
            VertexSet::new(),
            VertexSet::new(),
            VertexSet::new(),
        ];
        let p = partition_2forests_1graph(&g, &coloring).unwrap();
        assert_eq!(p.sizes(), vec![2, 2, 2]);
    }

    #[test]
    fn forest_split_k4() {
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let coloring = vec![[0].into(), [1].into(), [2].into(), [3].into(), VertexSet::new()];
        let split = split_2forests_1graph(&g, &coloring).unwrap();
        assert_eq!(split.partition.sizes(), vec![2, 1, 1]);
        assert_eq!(split.merge.q, 1);
    }

    #[test]
    fn forest_split_rejects_bad_coloring() {
        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let err = partition_2forests_1graph(&c4, &[[0, 2].into(), [1, 3].into()]).unwrap_err();
        assert!(matches!(err, Error::InvalidColoring { .. }));
        let six: Vec<VertexSet> = (0..4)
            .map(|v| [v].into())
            .chain([VertexSet::new(), VertexSet::new()])
            .collect();
        assert!(matches!(
            partition_2forests_1graph(&c4, &six),
            Err(Error::InvalidColoring { .. })
        ));
    }

    #[test]
    fn merge_json_shape() {
        let r = proposition_merge(&MergeInput {
            classes: vec![[0].into(), [1].into(), [2].into()],
            ell: 1,
        })
        .unwrap();
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"B0":[2],"B":[{"members":[0,1],"from":[0,1]}],"I":[2],"q":2,"r":0}"#
        );
    }
}
