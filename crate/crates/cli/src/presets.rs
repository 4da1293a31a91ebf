//! The partitioning algorithms exposed by `partition` and `bench`.

use clap::ValueEnum;
use serde_json::{json, Value};

use equipart::coloring::{
    exact_acyclic_coloring, exact_proper_coloring, validate_coloring, Coloring, ColoringKind, ColoringOutcome,
};
use equipart::partitioners::{
    partition_2x2deg_trifree_with, partition_2x3deg_with, partition_3x2deg_with, Partition, ReplayOptions,
};
use equipart::setmerge::{equitable_merge, proposition_merge, split_2forests_1graph, MergeInput};
use equipart::verify::{check_part, check_partition, is_planar, Check, PartConstraint, PartitionSpec, Report, Witness};
use equipart::{Error, Graph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    /// Two 3-degenerate parts.
    #[value(name = "2x3deg")]
    TwoThreeDegenerate,
    /// Three 2-degenerate parts.
    #[value(name = "3x2deg")]
    ThreeTwoDegenerate,
    /// Two 2-degenerate parts of a triangle-free graph.
    #[value(name = "2x2deg-trifree")]
    TwoTwoDegenerateTriangleFree,
    /// Two forests and one arbitrary part, from an acyclic 5-coloring.
    #[value(name = "2forests1graph")]
    TwoForestsOneGraph,
    /// Three forests, from an acyclic 4-coloring.
    #[value(name = "3forests")]
    ThreeForests,
    /// Three bipartite parts, from a proper 4-coloring.
    #[value(name = "3bipartite")]
    ThreeBipartite,
    /// Two large forests and an independent set, from an acyclic 4-coloring.
    #[value(name = "2forests1independent")]
    TwoForestsOneIndependent,
    /// Two large bipartite parts and an independent set, from a proper
    /// 4-coloring.
    #[value(name = "2bipartite1independent")]
    TwoBipartiteOneIndependent,
    /// Max degree + 6 linear forests, from a coloring in which every two
    /// classes induce a linear forest (`--coloring` required).
    #[value(name = "linear-forests")]
    LinearForests,
}

impl Algorithm {
    pub fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }
}

pub struct Outcome {
    /// Algorithm-specific output, including the partition.
    pub output: Value,
    pub parts: Vec<VertexSet>,
    pub report: Report,
    pub repairs: usize,
}

/// Why an algorithm refused its input.
pub struct Precondition {
    pub kind: &'static str,
    pub message: String,
    pub witness: Option<Value>,
}

impl Precondition {
    fn new(kind: &'static str, message: impl Into<String>) -> Self {
        Precondition {
            kind,
            message: message.into(),
            witness: None,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": self.kind, "message": self.message, "witness": self.witness })
    }
}

impl From<Error> for Precondition {
    fn from(e: Error) -> Self {
        let witness = match &e {
            Error::NotTriangleFree { triangle } => Some(json!({ "kind": "triangle", "vertices": triangle })),
            Error::InvalidColoring { report } => report.witness().map(|w| serde_json::to_value(w).unwrap()),
            Error::NoLowDegreeVertex { step, min_degree } => Some(json!({ "step": step, "min_degree": min_degree })),
            Error::StructureClaimViolated { step, remaining } => Some(json!({ "step": step, "remaining": remaining })),
            Error::RepairFailed { step, vertex } => Some(json!({ "step": step, "vertex": vertex })),
            _ => None,
        };
        let kind = match &e {
            Error::NotTriangleFree { .. } => "not_triangle_free",
            Error::InvalidColoring { .. } => "invalid_coloring",
            Error::NoLowDegreeVertex { .. } => "no_low_degree_vertex",
            Error::StructureClaimViolated { .. } => "structure_claim_violated",
            Error::RepairFailed { .. } => "repair_failed",
            _ => "internal",
        };
        Precondition {
            kind,
            message: e.to_string(),
            witness,
        }
    }
}

pub struct Request<'a> {
    pub coloring: Option<&'a [VertexSet]>,
    pub budget: u64,
    pub full_trace: bool,
}

pub fn run(alg: Algorithm, g: &Graph, req: &Request) -> Result<Outcome, Precondition> {
    if !is_planar(g) {
        return Err(Precondition::new("not_planar", "input graph is not planar"));
    }
    let opts = ReplayOptions {
        full_trace: req.full_trace,
        check_each_step: false,
    };
    match alg {
        Algorithm::TwoThreeDegenerate => replayed(g, partition_2x3deg_with(g, opts)?, 2, 3),
        Algorithm::ThreeTwoDegenerate => replayed(g, partition_3x2deg_with(g, opts)?, 3, 2),
        Algorithm::TwoTwoDegenerateTriangleFree => replayed(g, partition_2x2deg_trifree_with(g, opts)?, 2, 2),
        Algorithm::TwoForestsOneGraph => {
            let coloring = coloring_for(g, req, 5, ColoringKind::Acyclic)?;
            let split = split_2forests_1graph(g, &coloring)?;
            let spec = PartitionSpec {
                parts: 3,
                constraints: vec![
                    PartConstraint::Unconstrained,
                    PartConstraint::Forest,
                    PartConstraint::Forest,
                ],
                equitable: true,
            };
            let parts = split.partition.parts.clone();
            Ok(Outcome {
                report: check_partition(g, &parts, &spec),
                output: json!({ "coloring": coloring, "merge": split.merge, "partition": split.partition }),
                parts,
                repairs: 0,
            })
        }
        Algorithm::ThreeForests => merged_equitably(
            g,
            coloring_for(g, req, 4, ColoringKind::Acyclic)?,
            PartConstraint::Forest,
        ),
        Algorithm::ThreeBipartite => merged_equitably(
            g,
            coloring_for(g, req, 4, ColoringKind::Proper)?,
            PartConstraint::Bipartite,
        ),
        Algorithm::TwoForestsOneIndependent => two_large_one_independent(
            g,
            coloring_for(g, req, 4, ColoringKind::Acyclic)?,
            PartConstraint::Forest,
        ),
        Algorithm::TwoBipartiteOneIndependent => two_large_one_independent(
            g,
            coloring_for(g, req, 4, ColoringKind::Proper)?,
            PartConstraint::Bipartite,
        ),
        Algorithm::LinearForests => linear_forests(g, req),
    }
}

fn replayed(g: &Graph, p: Partition, k: usize, bound: usize) -> Result<Outcome, Precondition> {
    let spec = PartitionSpec::uniform(k, PartConstraint::Degenerate(bound), true);
    let repairs = p.trace.iter().filter(|e| !e.moved.is_empty()).count();
    Ok(Outcome {
        report: check_partition(g, &p.parts, &spec),
        parts: p.parts.clone(),
        output: json!({ "partition": p }),
        repairs,
    })
}

/// The supplied coloring padded to `k` classes, or one found by search.
fn coloring_for(g: &Graph, req: &Request, k: usize, kind: ColoringKind) -> Result<Vec<VertexSet>, Precondition> {
    if let Some(classes) = req.coloring {
        let mut classes = classes.to_vec();
        if classes.len() > k {
            return Err(Precondition::new(
                "invalid_coloring",
                format!("coloring has {} classes, at most {k} allowed", classes.len()),
            ));
        }
        classes.resize(k, VertexSet::new());
        let report = validate_coloring(
            g,
            &Coloring {
                kind,
                classes: classes.clone(),
            },
        );
        if !report.passed() {
            return Err(Error::InvalidColoring {
                report: Box::new(report),
            }
            .into());
        }
        return Ok(classes);
    }
    let outcome = match kind {
        ColoringKind::Acyclic => exact_acyclic_coloring(g, k, req.budget),
        ColoringKind::Proper => exact_proper_coloring(g, k, req.budget),
    };
    let kind_name = if kind == ColoringKind::Acyclic {
        "acyclic"
    } else {
        "proper"
    };
    match outcome {
        ColoringOutcome::Found(c) => Ok(c.classes),
        ColoringOutcome::NoColoring => Err(Precondition::new(
            "no_coloring",
            format!("graph has no {kind_name} {k}-coloring"),
        )),
        ColoringOutcome::BudgetExhausted => Err(Precondition::new(
            "budget_exhausted",
            format!("no {kind_name} {k}-coloring found within {} search nodes", req.budget),
        )),
    }
}

fn merged_equitably(g: &Graph, classes: Vec<VertexSet>, constraint: PartConstraint) -> Result<Outcome, Precondition> {
    let merge = equitable_merge(&classes)?;
    let parts: Vec<VertexSet> = merge.blocks.iter().map(|b| b.members.clone()).collect();
    let spec = PartitionSpec::uniform(parts.len(), constraint, true);
    Ok(Outcome {
        report: check_partition(g, &parts, &spec),
        output: json!({ "coloring": classes, "merge": merge, "parts": parts }),
        parts,
        repairs: 0,
    })
}

/// Parts `(B1, B2, B0)` of a merge with `ell = 2` over four classes: the
/// first two of size at least `⌊2(n+1)/5⌋`, the last inside one class.
fn two_large_one_independent(
    g: &Graph,
    classes: Vec<VertexSet>,
    constraint: PartConstraint,
) -> Result<Outcome, Precondition> {
    let merge = proposition_merge(&MergeInput {
        classes: classes.clone(),
        ell: 2,
    })?;
    let mut parts: Vec<VertexSet> = merge.blocks.iter().map(|b| b.members.clone()).collect();
    parts.push(merge.b0.clone());
    let spec = PartitionSpec {
        parts: 3,
        constraints: vec![constraint, constraint, PartConstraint::Independent],
        equitable: false,
    };
    let mut report = check_partition(g, &parts, &spec);
    let required = 2 * (g.n() + 1) / 5;
    for (i, part) in parts.iter().take(2).enumerate() {
        let size = part.len();
        let result = if size >= required {
            Ok(())
        } else {
            Err(Witness::SmallPart {
                part: i,
                size,
                required,
            })
        };
        report.push(Check::from_result(format!("part[{i}]:size>={required}"), result));
    }
    Ok(Outcome {
        report,
        output: json!({ "coloring": classes, "merge": merge, "parts": parts }),
        parts,
        repairs: 0,
    })
}

fn linear_forests(g: &Graph, req: &Request) -> Result<Outcome, Precondition> {
    let Some(supplied) = req.coloring else {
        return Err(Precondition::new(
            "missing_coloring",
            "linear-forests needs --coloring: classes whose pairwise unions induce linear forests",
        ));
    };
    let k = g.max_degree() + 7;
    if supplied.len() > k {
        return Err(Precondition::new(
            "invalid_coloring",
            format!(
                "coloring has {} classes, at most max degree + 7 = {k} allowed",
                supplied.len()
            ),
        ));
    }
    let mut classes = supplied.to_vec();
    classes.resize(k, VertexSet::new());
    let report = validate_coloring(
        g,
        &Coloring {
            kind: ColoringKind::Proper,
            classes: classes.clone(),
        },
    );
    let mut witness = report.witness().cloned();
    if witness.is_none() {
        witness = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).find_map(|(i, j)| {
            check_part(g, &classes[i].union(&classes[j]).to_vec(), PartConstraint::LinearForest).err()
        });
    }
    if let Some(w) = witness {
        let mut p = Precondition::new(
            "invalid_coloring",
            "coloring is not proper or two of its classes do not induce a linear forest",
        );
        p.witness = Some(serde_json::to_value(w).unwrap());
        return Err(p);
    }
    merged_equitably(g, classes, PartConstraint::LinearForest)
}
