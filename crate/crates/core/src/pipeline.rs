//! Iterated splitting of a monomial special multiserial algebra until the
//! quiver is a disjoint union of linearly oriented `A_n` and cyclically
//! oriented `Ã_n` quivers, and the generator-cogenerator obtained by pulling
//! the uniserial modules of the result back along the chain of splits.

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::quiver::{Component, Path, Shape, VertexId};
use crate::representations::{injective_module, is_isomorphic, projective_module, restrict, uniserial_module, Representation};
use crate::splitting::{auto_split_datum_e, auto_split_datum_s, embedding_witness, split, EmbeddingWitness, SplittingDatum};

/// Number of vertices with at least two outgoing arrows plus the number with
/// at least two incoming arrows.
pub fn complexity_c(p: &Presentation) -> usize {
    let q = p.quiver();
    q.vertices().filter(|&v| q.out_degree(v) > 1).count() + q.vertices().filter(|&v| q.in_degree(v) > 1).count()
}

/// Total number of surplus arrow ends: `Σ_v max(0, |S(v)| - 1) + max(0, |E(v)| - 1)`.
/// Every split step lowers it by at least one.
pub fn excess(p: &Presentation) -> usize {
    let q = p.quiver();
    q.vertices()
        .map(|v| q.out_degree(v).saturating_sub(1) + q.in_degree(v).saturating_sub(1))
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitSide {
    S,
    E,
}

#[derive(Clone, Debug)]
pub struct PipelineStep {
    /// Name of the split vertex in the presentation before this step.
    pub vertex: String,
    pub side: SplitSide,
    pub datum: SplittingDatum,
    /// Presentation before the step; the datum refers to its vertex and arrow ids.
    pub before: Presentation,
    pub result: Presentation,
    pub witness: EmbeddingWitness,
    pub c_after: usize,
    pub excess_after: usize,
}

#[derive(Clone, Debug)]
pub struct PipelineTrace {
    pub input: Presentation,
    pub initial_c: usize,
    pub steps: Vec<PipelineStep>,
    pub components: Vec<(Component, Shape)>,
}

impl PipelineTrace {
    pub fn target(&self) -> &Presentation {
        self.steps.last().map_or(&self.input, |s| &s.result)
    }

    pub fn final_c(&self) -> usize {
        complexity_c(self.target())
    }

    /// Vertex of the input that a vertex of the target came from.
    pub fn origin(&self, mut w: VertexId) -> VertexId {
        for step in self.steps.iter().rev() {
            let v = step.datum.vertex;
            if w.0 > v.0 {
                w = VertexId(w.0 - 1);
            }
        }
        w
    }
}

fn s_witness_reason(p: &Presentation) -> String {
    let adm = p.is_admissible(crate::presentation::DEFAULT_MAX_LEN);
    if !adm.admissible {
        return adm.diagnostics.join("; ");
    }
    match p.check_condition_s() {
        Ok(r) => {
            let q = p.quiver();
            r.witnesses
                .iter()
                .map(|w| {
                    format!(
                        "{} has {} {} and {}",
                        q.arrow_name(w.arrow),
                        if w.side == crate::presentation::Side::Right { "successors" } else { "predecessors" },
                        q.arrow_name(w.first),
                        q.arrow_name(w.second)
                    )
                })
                .collect::<Vec<_>>()
                .join("; ")
        }
        Err(e) => e.to_string(),
    }
}

/// Splits repeatedly (smallest vertex with several outgoing arrows first,
/// then smallest with several incoming arrows) until no vertex branches.
pub fn run_theorem1(p: &Presentation) -> Result<PipelineTrace> {
    if !p.is_monomial() {
        return Err(Error::NotMonomial);
    }
    if !p.is_special_multiserial() {
        return Err(Error::NotSpecialMultiserial(s_witness_reason(p)));
    }
    let radical = p.basis()?.radical_dimension();
    let initial_c = complexity_c(p);
    let mut steps: Vec<PipelineStep> = Vec::new();
    let mut current = p.clone();
    let mut c = initial_c;
    let mut surplus = excess(p);

    while c > 0 {
        let q = current.quiver();
        let (v, side) = match q.vertices().find(|&v| q.out_degree(v) > 1) {
            Some(v) => (v, SplitSide::S),
            None => (
                q.vertices().find(|&v| q.in_degree(v) > 1).expect("c > 0"),
                SplitSide::E,
            ),
        };
        let datum = match side {
            SplitSide::S => auto_split_datum_s(&current, v)?,
            SplitSide::E => auto_split_datum_e(&current, v)?,
        };
        let next = split(&current, &datum)?;
        let witness = embedding_witness(&current, &next, &datum)?;
        if witness.radical_dimension() != radical {
            return Err(Error::InternalInvariantViolation(format!(
                "radical dimension changed from {radical} to {}",
                witness.radical_dimension()
            )));
        }
        if !next.is_monomial() || !next.check_condition_s()?.holds {
            return Err(Error::InternalInvariantViolation(
                "split presentation is not monomial special multiserial".into(),
            ));
        }
        let c_after = complexity_c(&next);
        let excess_after = excess(&next);
        if c_after > c || excess_after >= surplus {
            return Err(Error::InternalInvariantViolation(format!(
                "split at {} did not reduce branching (c {c} -> {c_after}, excess {surplus} -> {excess_after})",
                q.vertex_name(v)
            )));
        }
        steps.push(PipelineStep {
            vertex: q.vertex_name(v).to_string(),
            side,
            datum,
            before: current.clone(),
            result: next.clone(),
            witness,
            c_after,
            excess_after,
        });
        current = next;
        c = c_after;
        surplus = excess_after;
    }

    let mut components = Vec::new();
    for comp in current.quiver().connected_components() {
        let shape = comp.quiver.classify_shape()?;
        match shape {
            Shape::LinearA(_) => {}
            Shape::CycleATilde(_) => {
                let has_relation = current
                    .relations()
                    .iter()
                    .any(|r| r.terms()[0].1.arrows().iter().all(|a| comp.arrows.contains(a)));
                if !has_relation {
                    return Err(Error::InternalInvariantViolation(
                        "cyclic component without relations".into(),
                    ));
                }
            }
            Shape::Other => {
                return Err(Error::InternalInvariantViolation(
                    "component of the target is neither linear nor cyclic".into(),
                ))
            }
        }
        components.push((comp, shape));
    }
    Ok(PipelineTrace {
        input: p.clone(),
        initial_c,
        steps,
        components,
    })
}

/// All basis paths of the target, trivial ones included.
pub fn uniserials_of_target(trace: &PipelineTrace) -> Result<Vec<Path>> {
    Ok(trace.target().basis()?.paths().to_vec())
}

/// Pulls a module over the target back to the input presentation.
pub fn pull_back(trace: &PipelineTrace, m: &Representation) -> Result<Representation> {
    let mut m = m.clone();
    for step in trace.steps.iter().rev() {
        m = restrict(&step.before, &step.result, step.datum.vertex, &m)?;
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SummandKind {
    Projective(VertexId),
    Injective(VertexId),
    /// A uniserial of the target, described by its source vertex in the input
    /// and its arrow sequence.
    Uniserial { origin: VertexId, path: Path },
}

#[derive(Clone, Debug)]
pub struct Summand {
    pub kind: SummandKind,
    pub module: Representation,
}

impl Summand {
    pub fn label(&self, p: &Presentation) -> String {
        let q = p.quiver();
        match &self.kind {
            SummandKind::Projective(v) => format!("P({})", q.vertex_name(*v)),
            SummandKind::Injective(v) => format!("I({})", q.vertex_name(*v)),
            SummandKind::Uniserial { origin, path } => {
                if path.is_trivial() {
                    format!("M(e_{})", q.vertex_name(*origin))
                } else {
                    let names: Vec<&str> = path.arrows().iter().map(|&a| q.arrow_name(a)).collect();
                    format!("M({})", names.join("."))
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct AuslanderGenerator {
    pub trace: PipelineTrace,
    pub summands: Vec<Summand>,
}

/// Dimension vector and ranks of the arrow maps, both isomorphism invariants.
fn signature(m: &Representation) -> (Vec<usize>, Vec<usize>) {
    (m.dimension_vector().to_vec(), m.maps().iter().map(|a| a.rank()).collect())
}

fn push_unique(p: &Presentation, summands: &mut Vec<Summand>, candidate: Summand) -> Result<()> {
    let sig = signature(&candidate.module);
    for s in summands.iter() {
        if signature(&s.module) == sig && is_isomorphic(p, &s.module, &candidate.module)? {
            return Ok(());
        }
    }
    summands.push(candidate);
    Ok(())
}

/// Projectives, injectives and pulled-back uniserials of the target, one
/// summand per isomorphism class.
pub fn auslander_generator(p: &Presentation) -> Result<AuslanderGenerator> {
    let trace = run_theorem1(p)?;
    let q = p.quiver();
    let mut summands: Vec<Summand> = Vec::new();
    for v in q.vertices() {
        let module = projective_module(p, v)?;
        push_unique(p, &mut summands, Summand { kind: SummandKind::Projective(v), module })?;
    }
    for v in q.vertices() {
        let module = injective_module(p, v)?;
        push_unique(p, &mut summands, Summand { kind: SummandKind::Injective(v), module })?;
    }
    let target = trace.target();
    let mut seen: Vec<(VertexId, Vec<crate::quiver::ArrowId>)> = Vec::new();
    for path in uniserials_of_target(&trace)? {
        let origin = trace.origin(path.source());
        let key = (origin, path.arrows().to_vec());
        if seen.contains(&key) {
            continue;
        }
        seen.push(key);
        let module = pull_back(&trace, &uniserial_module(target, &path)?)?;
        let original = if path.is_trivial() { Path::trivial(origin) } else { q.path(path.arrows())? };
        push_unique(
            p,
            &mut summands,
            Summand {
                kind: SummandKind::Uniserial { origin, path: original },
                module,
            },
        )?;
    }
    Ok(AuslanderGenerator { trace, summands })
}
