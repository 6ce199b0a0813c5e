//! Splitting a vertex `v` into `v.1` and `v.2` along partitions of the arrows
//! leaving and entering it.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::presentation::{Presentation, Relation};
use crate::quiver::{ArrowId, Path, Quiver, VertexId};

/// Partitions `S(v) = S1 ⊔ S2` and `E(v) = E1 ⊔ E2`. Arrow lists are kept
/// sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingDatum {
    pub vertex: VertexId,
    pub s1: Vec<ArrowId>,
    pub s2: Vec<ArrowId>,
    pub e1: Vec<ArrowId>,
    pub e2: Vec<ArrowId>,
}

impl SplittingDatum {
    pub fn new(vertex: VertexId, s1: Vec<ArrowId>, s2: Vec<ArrowId>, e1: Vec<ArrowId>, e2: Vec<ArrowId>) -> Self {
        let sorted = |mut v: Vec<ArrowId>| {
            v.sort();
            v
        };
        SplittingDatum {
            vertex,
            s1: sorted(s1),
            s2: sorted(s2),
            e1: sorted(e1),
            e2: sorted(e2),
        }
    }

    /// Resolves vertex and arrow names against a quiver.
    pub fn from_names(quiver: &Quiver, vertex: &str, s1: &[String], s2: &[String], e1: &[String], e2: &[String]) -> Result<Self> {
        let ids = |names: &[String]| names.iter().map(|n| quiver.arrow(n)).collect::<Result<Vec<_>>>();
        Ok(SplittingDatum::new(quiver.vertex(vertex)?, ids(s1)?, ids(s2)?, ids(e1)?, ids(e2)?))
    }

    fn start_part(&self, a: ArrowId) -> Option<usize> {
        if self.s1.contains(&a) {
            Some(1)
        } else if self.s2.contains(&a) {
            Some(2)
        } else {
            None
        }
    }

    fn end_part(&self, a: ArrowId) -> Option<usize> {
        if self.e1.contains(&a) {
            Some(1)
        } else if self.e2.contains(&a) {
            Some(2)
        } else {
            None
        }
    }

    pub fn describe(&self, quiver: &Quiver) -> String {
        let names = |v: &[ArrowId]| v.iter().map(|&a| quiver.arrow_name(a)).collect::<Vec<_>>().join(",");
        format!(
            "at {}: S1={{{}}} S2={{{}}} E1={{{}}} E2={{{}}}",
            quiver.vertex_name(self.vertex),
            names(&self.s1),
            names(&self.s2),
            names(&self.e1),
            names(&self.e2)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatumValidation {
    pub valid: bool,
    pub violations: Vec<String>,
}

/// Checks that the datum partitions `S(v)` and `E(v)`, that `a.b` vanishes for
/// `a ∈ E_i`, `b ∈ S_j`, `i ≠ j`, and that every non-monomial relation meets
/// `v` through only one half on each side.
pub fn validate_splitting_datum(p: &Presentation, sp: &SplittingDatum) -> Result<DatumValidation> {
    let q = p.quiver();
    let v = sp.vertex;
    if v.0 >= q.vertex_count() {
        return Err(Error::UnknownVertex(format!("#{}", v.0)));
    }
    let mut violations = Vec::new();
    let vname = q.vertex_name(v);

    let mut check_partition = |label: &str, first: &[ArrowId], second: &[ArrowId], expected: Vec<ArrowId>| {
        let a: BTreeSet<ArrowId> = first.iter().copied().collect();
        let b: BTreeSet<ArrowId> = second.iter().copied().collect();
        for x in a.intersection(&b) {
            violations.push(format!("{} lies in both {label}1 and {label}2", q.arrow_name(*x)));
        }
        let union: BTreeSet<ArrowId> = a.union(&b).copied().collect();
        let expected: BTreeSet<ArrowId> = expected.into_iter().collect();
        for x in union.difference(&expected) {
            let side = if label == "S" { "start" } else { "end" };
            violations.push(format!("{} does not {side} at {vname}", q.arrow_name(*x)));
        }
        for x in expected.difference(&union) {
            violations.push(format!("{} is missing from {label}1 ∪ {label}2", q.arrow_name(*x)));
        }
    };
    check_partition("S", &sp.s1, &sp.s2, q.arrows_from(v)?);
    check_partition("E", &sp.e1, &sp.e2, q.arrows_into(v)?);
    if !violations.is_empty() {
        return Ok(DatumValidation { valid: false, violations });
    }

    let basis = p.basis()?;
    for (ei, si) in [(&sp.e1, &sp.s2), (&sp.e2, &sp.s1)] {
        for &a in ei {
            for &b in si {
                let ab = q.path(&[a, b])?;
                if !basis.normal_form(&ab).is_empty() {
                    violations.push(format!(
                        "{} is not in the ideal although {} and {} lie in different halves",
                        q.path_name(&ab),
                        q.arrow_name(a),
                        q.arrow_name(b)
                    ));
                }
            }
        }
    }

    for r in p.relations().iter().filter(|r| !r.is_monomial()) {
        let mut entering = BTreeSet::new();
        let mut leaving = BTreeSet::new();
        for (_, path) in r.terms() {
            for &a in path.arrows() {
                if let Some(i) = sp.end_part(a) {
                    entering.insert(i);
                }
                if let Some(i) = sp.start_part(a) {
                    leaving.insert(i);
                }
            }
        }
        if entering.len() > 1 {
            violations.push(format!("relation `{}` enters {vname} through both E1 and E2", p.relation_string(r)));
        }
        if leaving.len() > 1 {
            violations.push(format!("relation `{}` leaves {vname} through both S1 and S2", p.relation_string(r)));
        }
    }
    Ok(DatumValidation {
        valid: violations.is_empty(),
        violations,
    })
}

/// Names of the two vertices replacing `v`.
pub fn split_names(name: &str) -> (String, String) {
    (format!("{name}.1"), format!("{name}.2"))
}

/// The split presentation. Vertex `v` is replaced in place by `v.1` followed
/// by `v.2`; arrows keep their order and names.
pub fn split(p: &Presentation, sp: &SplittingDatum) -> Result<Presentation> {
    let check = validate_splitting_datum(p, sp)?;
    if !check.valid {
        return Err(Error::InvalidSplittingDatum(check.violations));
    }
    let q = p.quiver();
    let v = sp.vertex;
    let (n1, n2) = split_names(q.vertex_name(v));
    for name in [&n1, &n2] {
        if q.vertex(name).is_ok() {
            return Err(Error::VertexNameCollision(name.clone()));
        }
    }

    let mut out = Quiver::new();
    let mut image = Vec::with_capacity(q.vertex_count());
    let (mut v1, mut v2) = (VertexId(0), VertexId(0));
    for w in q.vertices() {
        if w == v {
            v1 = out.add_vertex(&n1)?;
            v2 = out.add_vertex(&n2)?;
            image.push(v1);
        } else {
            image.push(out.add_vertex(q.vertex_name(w))?);
        }
    }
    let half = |part: Option<usize>| if part == Some(1) { v1 } else { v2 };
    for a in q.arrows() {
        let s = match sp.start_part(a) {
            None => image[q.source(a).0],
            part => half(part),
        };
        let t = match sp.end_part(a) {
            None => image[q.target(a).0],
            part => half(part),
        };
        out.add_arrow(q.arrow_name(a), s, t)?;
    }

    let mut relations = Vec::new();
    for r in p.relations() {
        let terms: Vec<_> = r
            .terms()
            .iter()
            .filter_map(|(c, path)| out.path(path.arrows()).ok().map(|np| (c.clone(), np)))
            .collect();
        // Monomials that are no longer composable are exactly the removed a.b.
        if let Some(rel) = Relation::normalized(terms) {
            relations.push(rel);
        }
    }
    Ok(Presentation::from_parts(p.name(), out, relations))
}

/// Identity-on-arrows bijection between radical basis paths of a
/// presentation and of its split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingWitness {
    pub vertex: String,
    pub halves: (String, String),
    /// Basis paths of length ≥ 1, as pairs (path in the original, path in the split).
    pub pairs: Vec<(Path, Path)>,
}

impl EmbeddingWitness {
    pub fn radical_dimension(&self) -> usize {
        self.pairs.len()
    }
}

pub fn embedding_witness(p: &Presentation, split_p: &Presentation, sp: &SplittingDatum) -> Result<EmbeddingWitness> {
    let (q, qs) = (p.quiver(), split_p.quiver());
    let (b, bs) = (p.basis()?, split_p.basis()?);
    let failure = |path: &Path, quiver: &Quiver, reason: &str| Error::WitnessFailure {
        path: quiver.path_name(path),
        reason: reason.to_string(),
    };

    let mut pairs = Vec::new();
    for path in b.paths().iter().filter(|x| !x.is_trivial()) {
        let image = qs
            .path(path.arrows())
            .map_err(|_| failure(path, q, "not composable after splitting"))?;
        if bs.index_of(&image).is_none() {
            return Err(failure(path, q, "zero after splitting"));
        }
        pairs.push((path.clone(), image));
    }
    for path in bs.paths().iter().filter(|x| !x.is_trivial()) {
        let preimage = q
            .path(path.arrows())
            .map_err(|_| failure(path, qs, "not composable before splitting"))?;
        if b.index_of(&preimage).is_none() {
            return Err(failure(path, qs, "zero before splitting"));
        }
    }
    if pairs.len() != bs.radical_dimension() {
        return Err(Error::WitnessFailure {
            path: String::new(),
            reason: format!("radical dimensions differ: {} vs {}", pairs.len(), bs.radical_dimension()),
        });
    }
    let name = q.vertex_name(sp.vertex).to_string();
    Ok(EmbeddingWitness {
        halves: split_names(&name),
        vertex: name,
        pairs,
    })
}

fn require_monomial_special(p: &Presentation) -> Result<()> {
    if !p.is_monomial() {
        return Err(Error::PreconditionFailed("presentation is not monomial".into()));
    }
    if !p.is_special_multiserial() {
        return Err(Error::PreconditionFailed("presentation is not special multiserial".into()));
    }
    Ok(())
}

/// Separates the first arrow `b1` leaving `v` from the others; arrows `a`
/// entering `v` go to the second half exactly when `a.b1` is zero.
pub fn auto_split_datum_s(p: &Presentation, v: VertexId) -> Result<SplittingDatum> {
    require_monomial_special(p)?;
    let q = p.quiver();
    let out = q.arrows_from(v)?;
    if out.len() < 2 {
        return Err(Error::PreconditionFailed(format!(
            "vertex {} has fewer than two outgoing arrows",
            q.vertex_name(v)
        )));
    }
    let basis = p.basis()?;
    let b1 = out[0];
    let (e2, e1): (Vec<ArrowId>, Vec<ArrowId>) = q
        .arrows_into(v)?
        .into_iter()
        .partition(|&a| basis.normal_form(&q.path(&[a, b1]).expect("composable at v")).is_empty());
    Ok(SplittingDatum::new(v, vec![b1], out[1..].to_vec(), e1, e2))
}

/// Mirror of [`auto_split_datum_s`] for incoming arrows.
pub fn auto_split_datum_e(p: &Presentation, v: VertexId) -> Result<SplittingDatum> {
    require_monomial_special(p)?;
    let q = p.quiver();
    let inc = q.arrows_into(v)?;
    if inc.len() < 2 {
        return Err(Error::PreconditionFailed(format!(
            "vertex {} has fewer than two incoming arrows",
            q.vertex_name(v)
        )));
    }
    let basis = p.basis()?;
    let a1 = inc[0];
    let (s2, s1): (Vec<ArrowId>, Vec<ArrowId>) = q
        .arrows_from(v)?
        .into_iter()
        .partition(|&b| basis.normal_form(&q.path(&[a1, b]).expect("composable at v")).is_empty());
    Ok(SplittingDatum::new(v, s1, s2, vec![a1], inc[1..].to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse, print};

    fn kronecker() -> Presentation {
        parse("algebra K\nvertices 1 2\narrow a : 1 -> 2\narrow b : 1 -> 2\n").unwrap()
    }

    fn datum(p: &Presentation, v: &str, s1: &[&str], s2: &[&str], e1: &[&str], e2: &[&str]) -> SplittingDatum {
        let own = |x: &[&str]| x.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        SplittingDatum::from_names(p.quiver(), v, &own(s1), &own(s2), &own(e1), &own(e2)).unwrap()
    }

    #[test]
    fn validation_examples() {
        let k = kronecker();
        assert!(validate_splitting_datum(&k, &datum(&k, "1", &["a"], &["b"], &[], &[])).unwrap().valid);
        assert!(validate_splitting_datum(&k, &datum(&k, "2", &[], &[], &["a"], &["b"])).unwrap().valid);
        let path = parse("algebra P\nvertices 1 2 3\narrow a : 1 -> 2\narrow b : 2 -> 3\n").unwrap();
        let bad = validate_splitting_datum(&path, &datum(&path, "2", &["b"], &[], &[], &["a"])).unwrap();
        assert!(!bad.valid);
        assert_eq!(bad.violations.len(), 1);
        let incomplete = validate_splitting_datum(&k, &datum(&k, "1", &["a"], &[], &[], &[])).unwrap();
        assert!(!incomplete.valid);
    }

    #[test]
    fn condition_two_for_binomials() {
        let p = parse(
            "algebra B\nvertices 1 2 3\narrow a : 1 -> 2\narrow b : 1 -> 2\narrow c : 2 -> 3\narrow d : 2 -> 3\nrelations\na.c - b.d\na.d\nb.c\nend\n",
        )
        .unwrap();
        let across = datum(&p, "2", &["c"], &["d"], &["a"], &["b"]);
        let check = validate_splitting_datum(&p, &across).unwrap();
        assert!(!check.valid);
        assert_eq!(check.violations.len(), 2);
        let single = datum(&p, "2", &["c", "d"], &[], &["a", "b"], &[]);
        assert!(validate_splitting_datum(&p, &single).unwrap().valid);
    }

    #[test]
    fn split_kronecker() {
        let k = kronecker();
        let sp = datum(&k, "1", &["a"], &["b"], &[], &[]);
        let s = split(&k, &sp).unwrap();
        assert_eq!(
            print(&s),
            "algebra K\nvertices 1.1 1.2 2\narrow a : 1.1 -> 2\narrow b : 1.2 -> 2\n"
        );
        let w = embedding_witness(&k, &s, &sp).unwrap();
        assert_eq!(w.radical_dimension(), 2);
    }

    #[test]
    fn split_removes_broken_relation() {
        let p = parse("algebra P\nvertices 1 2 3\narrow a : 1 -> 2\narrow b : 2 -> 3\nrelations\na.b\nend\n").unwrap();
        let sp = datum(&p, "2", &["b"], &[], &[], &["a"]);
        let s = split(&p, &sp).unwrap();
        assert_eq!(
            print(&s),
            "algebra P\nvertices 1 2.1 2.2 3\narrow a : 1 -> 2.2\narrow b : 2.1 -> 3\n"
        );
    }

    #[test]
    fn trivial_split_adds_isolated_vertex() {
        let p = parse("algebra P\nvertices 1 2\narrow a : 1 -> 2\n").unwrap();
        let sp = datum(&p, "2", &[], &[], &["a"], &[]);
        let s = split(&p, &sp).unwrap();
        assert_eq!(s.dimension().unwrap(), p.dimension().unwrap() + 1);
        assert_eq!(s.quiver().out_degree(VertexId(2)) + s.quiver().in_degree(VertexId(2)), 0);
    }

    #[test]
    fn witness_on_unsplit_path() {
        let p = parse("algebra P\nvertices 1 2 3\narrow a : 1 -> 2\narrow b : 2 -> 3\n").unwrap();
        let sp = datum(&p, "2", &["b"], &[], &["a"], &[]);
        let s = split(&p, &sp).unwrap();
        let w = embedding_witness(&p, &s, &sp).unwrap();
        let names: Vec<String> = w.pairs.iter().map(|(x, _)| p.quiver().path_name(x)).collect();
        assert_eq!(names, ["a", "b", "a.b"]);
    }

    #[test]
    fn auto_data() {
        let k = kronecker();
        let v1 = k.quiver().vertex("1").unwrap();
        assert_eq!(auto_split_datum_s(&k, v1).unwrap(), datum(&k, "1", &["a"], &["b"], &[], &[]));
        let v2 = k.quiver().vertex("2").unwrap();
        assert_eq!(auto_split_datum_e(&k, v2).unwrap(), datum(&k, "2", &[], &[], &["a"], &["b"]));

        let one = parse("algebra X\nvertices 0 1 2\narrow c : 0 -> 1\narrow a : 1 -> 2\narrow b : 1 -> 2\nrelations\nc.b\nend\n").unwrap();
        let v = one.quiver().vertex("1").unwrap();
        assert_eq!(auto_split_datum_s(&one, v).unwrap(), datum(&one, "1", &["a"], &["b"], &["c"], &[]));
        let two = parse(
            "algebra X\nvertices 0 1 2\narrow c : 0 -> 1\narrow a : 1 -> 2\narrow b : 1 -> 2\nrelations\nc.a\nc.b\nend\n",
        )
        .unwrap();
        assert_eq!(auto_split_datum_s(&two, v).unwrap(), datum(&two, "1", &["a"], &["b"], &[], &["c"]));

        let e1 = parse("algebra X\nvertices 1 2 3\narrow a : 1 -> 2\narrow b : 1 -> 2\narrow c : 2 -> 3\nrelations\na.c\nend\n").unwrap();
        let v = e1.quiver().vertex("2").unwrap();
        assert_eq!(auto_split_datum_e(&e1, v).unwrap(), datum(&e1, "2", &[], &["c"], &["a"], &["b"]));
        let e2 = parse("algebra X\nvertices 1 2 3\narrow a : 1 -> 2\narrow b : 1 -> 2\narrow c : 2 -> 3\nrelations\nb.c\nend\n").unwrap();
        assert_eq!(auto_split_datum_e(&e2, v).unwrap(), datum(&e2, "2", &["c"], &[], &["a"], &["b"]));
    }

    #[test]
    fn auto_data_preconditions() {
        let p = parse("algebra P\nvertices 1 2\narrow a : 1 -> 2\n").unwrap();
        let v = p.quiver().vertex("1").unwrap();
        assert!(matches!(auto_split_datum_s(&p, v), Err(Error::PreconditionFailed(_))));
    }

    #[test]
    fn name_collision() {
        let p = parse("algebra P\nvertices 1 1.1 2\narrow a : 1 -> 2\narrow b : 1 -> 2\n").unwrap();
        let sp = datum(&p, "1", &["a"], &["b"], &[], &[]);
        assert!(matches!(split(&p, &sp), Err(Error::VertexNameCollision(_))));
    }
}
