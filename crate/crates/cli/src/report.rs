//! JSON report shapes. Every report starts with `"schema": 1`.

use serde::Serialize;

use multiserial::dsl;
use multiserial::endalgebra::{GldimReport, ProjectiveDimension, RepdimReport};
use multiserial::linalg::format_scalar;
use multiserial::pipeline::{AuslanderGenerator, PipelineTrace, SplitSide, SummandKind};
use multiserial::presentation::{AdmissibilityReport, BasisReport, ConditionSReport, RelationClass, Side};
use multiserial::representations::Representation;
use multiserial::splitting::{EmbeddingWitness, SplittingDatum};
use multiserial::{Error, ErrorClass, Presentation, Quiver};

pub const SCHEMA: u32 = 1;

#[derive(Serialize)]
pub struct Envelope<T: Serialize> {
    pub schema: u32,
    pub command: &'static str,
    #[serde(flatten)]
    pub body: T,
}

#[derive(Serialize)]
pub struct ErrorReport {
    pub class: &'static str,
    pub exit_code: i32,
    pub message: String,
}

pub fn class_name(class: ErrorClass) -> &'static str {
    match class {
        ErrorClass::Verdict => "verdict",
        ErrorClass::Input => "input",
        ErrorClass::Internal => "internal",
    }
}

pub fn exit_code(class: ErrorClass) -> i32 {
    match class {
        ErrorClass::Verdict => 1,
        ErrorClass::Input => 2,
        ErrorClass::Internal => 3,
    }
}

impl ErrorReport {
    pub fn new(e: &Error) -> Self {
        ErrorReport {
            class: class_name(e.class()),
            exit_code: exit_code(e.class()),
            message: e.to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct WitnessJson {
    pub arrow: String,
    pub side: &'static str,
    pub first: String,
    pub second: String,
}

#[derive(Serialize)]
pub struct RelationJson {
    pub relation: String,
    pub class: &'static str,
}

#[derive(Serialize)]
pub struct CheckReport {
    pub name: String,
    pub admissible: bool,
    pub nilpotency_index: Option<usize>,
    pub diagnostics: Vec<String>,
    pub monomial: bool,
    pub condition_s: Option<bool>,
    pub witnesses: Vec<WitnessJson>,
    pub relations: Vec<RelationJson>,
    pub special_multiserial: bool,
}

impl CheckReport {
    pub fn new(
        p: &Presentation,
        adm: &AdmissibilityReport,
        s: Option<&ConditionSReport>,
        classes: Option<&[RelationClass]>,
    ) -> Self {
        let q = p.quiver();
        CheckReport {
            name: p.name().to_string(),
            admissible: adm.admissible,
            nilpotency_index: adm.nilpotency_index,
            diagnostics: adm.diagnostics.clone(),
            monomial: p.is_monomial(),
            condition_s: s.map(|r| r.holds),
            witnesses: s
                .map(|r| {
                    r.witnesses
                        .iter()
                        .map(|w| WitnessJson {
                            arrow: q.arrow_name(w.arrow).to_string(),
                            side: match w.side {
                                Side::Right => "successors",
                                Side::Left => "predecessors",
                            },
                            first: q.arrow_name(w.first).to_string(),
                            second: q.arrow_name(w.second).to_string(),
                        })
                        .collect()
                })
                .unwrap_or_default(),
            relations: p
                .relations()
                .iter()
                .enumerate()
                .map(|(i, r)| RelationJson {
                    relation: p.relation_string(r),
                    class: match classes.and_then(|c| c.get(i)) {
                        Some(RelationClass::Monomial) => "monomial",
                        Some(RelationClass::SocleCombination) => "socle-combination",
                        Some(RelationClass::Violation) => "violation",
                        None => "unclassified",
                    },
                })
                .collect(),
            special_multiserial: adm.admissible && s.is_some_and(|r| r.holds),
        }
    }
}

#[derive(Serialize)]
pub struct BasisJson {
    pub name: String,
    pub dimension: usize,
    pub radical_dimension: usize,
    pub nilpotency_index: usize,
    pub monomial: bool,
    pub paths_by_length: Vec<Vec<String>>,
}

impl BasisJson {
    pub fn new(p: &Presentation, r: &BasisReport) -> Self {
        let q = p.quiver();
        BasisJson {
            name: p.name().to_string(),
            dimension: r.dimension,
            radical_dimension: r.radical_dimension,
            nilpotency_index: r.nilpotency_index,
            monomial: r.monomial,
            paths_by_length: r
                .paths_by_length
                .iter()
                .map(|level| level.iter().map(|path| q.path_name(path)).collect())
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct DatumJson {
    pub vertex: String,
    pub s1: Vec<String>,
    pub s2: Vec<String>,
    pub e1: Vec<String>,
    pub e2: Vec<String>,
}

impl DatumJson {
    pub fn new(q: &Quiver, d: &SplittingDatum) -> Self {
        let names = |v: &[multiserial::ArrowId]| v.iter().map(|&a| q.arrow_name(a).to_string()).collect();
        DatumJson {
            vertex: q.vertex_name(d.vertex).to_string(),
            s1: names(&d.s1),
            s2: names(&d.s2),
            e1: names(&d.e1),
            e2: names(&d.e2),
        }
    }
}

#[derive(Serialize)]
pub struct WitnessPairs {
    pub vertex: String,
    pub halves: [String; 2],
    pub radical_dimension: usize,
    pub pairs: Vec<[String; 2]>,
}

impl WitnessPairs {
    pub fn new(before: &Quiver, after: &Quiver, w: &EmbeddingWitness) -> Self {
        WitnessPairs {
            vertex: w.vertex.clone(),
            halves: [w.halves.0.clone(), w.halves.1.clone()],
            radical_dimension: w.radical_dimension(),
            pairs: w
                .pairs
                .iter()
                .map(|(a, b)| [before.path_name(a), after.path_name(b)])
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct SplitJson {
    pub name: String,
    pub datum: DatumJson,
    pub witness: WitnessPairs,
    pub presentation: String,
}

#[derive(Serialize)]
pub struct StepJson {
    pub vertex: String,
    pub side: &'static str,
    pub datum: DatumJson,
    pub c_after: usize,
    pub excess_after: usize,
    pub radical_dimension: usize,
}

#[derive(Serialize)]
pub struct ComponentJson {
    pub vertices: Vec<String>,
    pub shape: String,
}

#[derive(Serialize)]
pub struct PipelineJson {
    pub name: String,
    pub initial_c: usize,
    pub steps: usize,
    pub final_c: usize,
    pub trace: Vec<StepJson>,
    pub target: String,
    pub components: Vec<String>,
    pub component_vertices: Vec<ComponentJson>,
}

impl PipelineJson {
    pub fn new(t: &PipelineTrace) -> Self {
        let target = t.target();
        PipelineJson {
            name: t.input.name().to_string(),
            initial_c: t.initial_c,
            steps: t.steps.len(),
            final_c: t.final_c(),
            trace: t
                .steps
                .iter()
                .map(|s| StepJson {
                    vertex: s.vertex.clone(),
                    side: match s.side {
                        SplitSide::S => "S",
                        SplitSide::E => "E",
                    },
                    datum: DatumJson::new(s.before.quiver(), &s.datum),
                    c_after: s.c_after,
                    excess_after: s.excess_after,
                    radical_dimension: s.witness.radical_dimension(),
                })
                .collect(),
            target: dsl::print(target),
            components: t.components.iter().map(|(_, s)| s.to_string()).collect(),
            component_vertices: t
                .components
                .iter()
                .map(|(c, s)| ComponentJson {
                    vertices: c.vertices.iter().map(|&v| target.quiver().vertex_name(v).to_string()).collect(),
                    shape: s.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct MatrixJson {
    pub arrow: String,
    pub rows: Vec<Vec<String>>,
}

#[derive(Serialize)]
pub struct ModuleJson {
    pub dimension_vector: Vec<usize>,
    pub matrices: Vec<MatrixJson>,
}

impl ModuleJson {
    pub fn new(q: &Quiver, m: &Representation) -> Self {
        ModuleJson {
            dimension_vector: m.dimension_vector().to_vec(),
            matrices: q
                .arrows()
                .map(|a| {
                    let mat = m.map(a);
                    MatrixJson {
                        arrow: q.arrow_name(a).to_string(),
                        rows: (0..mat.rows()).map(|r| mat.row(r).iter().map(format_scalar).collect()).collect(),
                    }
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct SummandJson {
    pub label: String,
    pub kind: &'static str,
    #[serde(flatten)]
    pub module: ModuleJson,
}

#[derive(Serialize)]
pub struct GeneratorJson {
    pub name: String,
    pub steps: usize,
    pub components: Vec<String>,
    pub summands: Vec<SummandJson>,
}

impl GeneratorJson {
    pub fn new(p: &Presentation, g: &AuslanderGenerator) -> Self {
        GeneratorJson {
            name: p.name().to_string(),
            steps: g.trace.steps.len(),
            components: g.trace.components.iter().map(|(_, s)| s.to_string()).collect(),
            summands: g
                .summands
                .iter()
                .map(|s| SummandJson {
                    label: s.label(p),
                    kind: match s.kind {
                        SummandKind::Projective(_) => "projective",
                        SummandKind::Injective(_) => "injective",
                        SummandKind::Uniserial { .. } => "uniserial",
                    },
                    module: ModuleJson::new(p.quiver(), &s.module),
                })
                .collect(),
        }
    }
}

fn pd_json(d: ProjectiveDimension) -> serde_json::Value {
    match d {
        ProjectiveDimension::Finite(n) => serde_json::Value::from(n),
        ProjectiveDimension::ExceedsBound => serde_json::Value::from("exceeds-bound"),
    }
}

#[derive(Serialize)]
pub struct GldimJson {
    pub end_dimension: usize,
    pub radical_dimension: usize,
    pub radical_nilpotency_index: usize,
    pub simples: usize,
    pub projective_dimensions: Vec<serde_json::Value>,
    pub global_dimension: serde_json::Value,
    pub bound: usize,
}

impl GldimJson {
    pub fn new(g: &GldimReport) -> Self {
        GldimJson {
            end_dimension: g.dimension,
            radical_dimension: g.radical_dimension,
            radical_nilpotency_index: g.radical_nilpotency_index,
            simples: g.simples,
            projective_dimensions: g.projective_dimensions.iter().map(|&d| pd_json(d)).collect(),
            global_dimension: pd_json(g.global_dimension),
            bound: g.bound,
        }
    }
}

#[derive(Serialize)]
pub struct VerifyJson {
    pub name: String,
    pub verified: String,
    pub socle_steps: usize,
    pub steps: usize,
    pub components: Vec<String>,
    pub summands: Vec<String>,
    pub end_dimension: usize,
    pub gldim: GldimJson,
    pub holds: bool,
}

impl VerifyJson {
    pub fn new(p: &Presentation, r: &RepdimReport) -> Self {
        VerifyJson {
            name: p.name().to_string(),
            verified: dsl::print(&r.presentation),
            socle_steps: r.socle_steps,
            steps: r.generator.trace.steps.len(),
            components: r.generator.trace.components.iter().map(|(_, s)| s.to_string()).collect(),
            summands: r.generator.summands.iter().map(|s| s.label(&r.presentation)).collect(),
            end_dimension: r.end_dimension,
            gldim: GldimJson::new(&r.gldim),
            holds: true,
        }
    }
}

#[derive(Serialize)]
pub struct SocleQuotientJson {
    pub name: String,
    pub dimension: usize,
    pub socle_dimension: usize,
    pub quotient_dimension: usize,
    pub presentation: String,
}

#[derive(Serialize)]
pub struct FuzzJson {
    pub seed: u64,
    pub count: usize,
    pub max_vertices: usize,
    pub max_arrows: usize,
    pub presentations: Vec<String>,
}
