//! Presentations `KQ/I` of finite-dimensional algebras by a quiver and a set of
//! uniform relations with rational coefficients.
//!
//! The basis of nonzero paths is computed degree by degree. For relations whose
//! terms all have the same length the ideal is graded, and the degree `L` part
//! of `KQ/I` is spanned by `b.a` for basis paths `b` of length `L - 1` and
//! arrows `a`; the relations of that degree are reduced onto those candidates
//! and an exact row reduction picks the surviving basis paths. Relations mixing
//! lengths take a slower route over all paths that avoid the monomial
//! relations, with an explicit certificate that some power of the arrow ideal
//! lies in `I`.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{dense_to_sparse, format_scalar, sparse_axpy, Echelon, PivotRule, Scalar, SparseVec};
use crate::quiver::{ArrowId, Path, Quiver, VertexId};

/// Default bound on path lengths explored by the basis computation.
pub const DEFAULT_MAX_LEN: usize = 64;

/// Beyond this many candidate paths the algebra is treated as not finite
/// dimensional for practical purposes.
const PATH_BUDGET: usize = 100_000;

/// A uniform linear combination of paths, normalized so that paths are
/// distinct, coefficients nonzero and the first coefficient is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    terms: Vec<(Scalar, Path)>,
}

impl Relation {
    /// Merges repeated paths, drops zero terms and scales the leading
    /// coefficient to 1. Returns `None` if nothing survives.
    pub fn normalized(terms: Vec<(Scalar, Path)>) -> Option<Relation> {
        let mut merged: Vec<(Scalar, Path)> = Vec::new();
        for (c, p) in terms {
            match merged.iter_mut().find(|(_, q)| *q == p) {
                Some((d, _)) => *d += c,
                None => merged.push((c, p)),
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        let lead = merged.first()?.0.clone();
        for (c, _) in merged.iter_mut() {
            *c /= &lead;
        }
        Some(Relation { terms: merged })
    }

    pub fn monomial(path: Path) -> Relation {
        Relation {
            terms: vec![(Scalar::one(), path)],
        }
    }

    pub fn terms(&self) -> &[(Scalar, Path)] {
        &self.terms
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn source(&self) -> VertexId {
        self.terms[0].1.source()
    }

    pub fn target(&self) -> VertexId {
        self.terms[0].1.target()
    }

    pub fn min_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0)
    }

    pub fn max_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.min_len() == self.max_len()
    }

    fn is_uniform(&self) -> bool {
        self.terms
            .iter()
            .all(|(_, p)| p.source() == self.source() && p.target() == self.target())
    }
}

/// Prints a relation in the DSL syntax, e.g. `a.a - 2/3*b.b`.
pub fn relation_to_string(quiver: &Quiver, r: &Relation) -> String {
    let mut out = String::new();
    for (i, (c, p)) in r.terms().iter().enumerate() {
        let negative = *c < Scalar::zero();
        let magnitude = if negative { -c.clone() } else { c.clone() };
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if !magnitude.is_one() {
            out.push_str(&format_scalar(&magnitude));
            out.push('*');
        }
        out.push_str(&quiver.path_name(p));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Right,
    Left,
}

/// Basis of nonzero paths together with the right action of arrows on it.
#[derive(Clone, Debug)]
pub struct Basis {
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    /// `right[i][a]` is the normal form of `paths[i].a` (empty when zero or
    /// not composable).
    right: Vec<Vec<SparseVec>>,
    nilpotency_index: usize,
}

impl Basis {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn path(&self, i: usize) -> &Path {
        &self.paths[i]
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Smallest `L` with `J^L` contained in `I`.
    pub fn nilpotency_index(&self) -> usize {
        self.nilpotency_index
    }

    pub fn radical_dimension(&self) -> usize {
        self.paths.iter().filter(|p| !p.is_trivial()).count()
    }

    pub fn unit(&self, i: usize) -> SparseVec {
        BTreeMap::from([(i, Scalar::one())])
    }

    /// `x.a` in normal form.
    pub fn right_arrow(&self, x: &SparseVec, a: ArrowId) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, c) in x {
            sparse_axpy(&mut out, c, &self.right[i][a.0]);
        }
        out
    }

    /// Normal form of an arbitrary path.
    pub fn normal_form(&self, p: &Path) -> SparseVec {
        let start = self.index[&Path::trivial(p.source())];
        let mut v = self.unit(start);
        for &a in p.arrows() {
            if v.is_empty() {
                break;
            }
            v = self.right_arrow(&v, a);
        }
        v
    }

    pub fn normal_form_of(&self, terms: &[(Scalar, Path)]) -> SparseVec {
        let mut out = SparseVec::new();
        for (c, p) in terms {
            sparse_axpy(&mut out, c, &self.normal_form(p));
        }
        out
    }

    /// `a.x` in normal form.
    pub fn left_arrow(&self, quiver: &Quiver, a: ArrowId, x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, c) in x {
            let p = &self.paths[i];
            if quiver.target(a) != p.source() {
                continue;
            }
            let mut v = self.right_arrow(&self.unit(self.index[&Path::trivial(quiver.source(a))]), a);
            for &b in p.arrows() {
                if v.is_empty() {
                    break;
                }
                v = self.right_arrow(&v, b);
            }
            sparse_axpy(&mut out, c, &v);
        }
        out
    }

    /// Product of two basis elements in normal form.
    pub fn multiply(&self, i: usize, j: usize) -> SparseVec {
        let (p, q) = (&self.paths[i], &self.paths[j]);
        if p.target() != q.source() {
            return SparseVec::new();
        }
        let mut v = self.unit(i);
        for &a in q.arrows() {
            if v.is_empty() {
                break;
            }
            v = self.right_arrow(&v, a);
        }
        v
    }

    fn from_levels(levels: Vec<Vec<Path>>, right: HashMap<(Path, ArrowId), SparseVecByPath>, arrows: usize, nilpotency_index: usize) -> Basis {
        let paths: Vec<Path> = levels.into_iter().flatten().collect();
        let index: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut table = vec![vec![SparseVec::new(); arrows]; paths.len()];
        for ((p, a), v) in right {
            let i = index[&p];
            table[i][a.0] = v.into_iter().map(|(q, c)| (index[&q], c)).collect();
        }
        Basis {
            paths,
            index,
            right: table,
            nilpotency_index,
        }
    }
}

type SparseVecByPath = Vec<(Path, Scalar)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisReport {
    /// Basis paths grouped by length, index = length.
    pub paths_by_length: Vec<Vec<Path>>,
    pub dimension: usize,
    pub radical_dimension: usize,
    pub monomial: bool,
    pub nilpotency_index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub nilpotency_index: Option<usize>,
    pub diagnostics: Vec<String>,
}

/// A violation of condition (S): `arrow` has two distinct nonzero
/// continuations on the given side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SWitness {
    pub arrow: ArrowId,
    pub side: Side,
    pub first: ArrowId,
    pub second: ArrowId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionSReport {
    pub holds: bool,
    pub witnesses: Vec<SWitness>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationClass {
    Monomial,
    SocleCombination,
    Violation,
}

/// An algebra `KQ/I`. The basis of nonzero paths is computed on first use and
/// cached.
#[derive(Clone, Debug)]
pub struct Presentation {
    name: String,
    quiver: Quiver,
    relations: Vec<Relation>,
    basis: OnceLock<Basis>,
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.quiver == other.quiver && self.relations == other.relations
    }
}

impl Presentation {
    /// Builds a presentation, normalizing every relation. Relations must be
    /// uniform and must not cancel to zero.
    pub fn new(name: &str, quiver: Quiver, relations: Vec<Vec<(Scalar, Path)>>) -> Result<Self> {
        let mut rels = Vec::with_capacity(relations.len());
        for terms in relations {
            let rel = Relation::normalized(terms).ok_or(Error::EmptyRelation)?;
            if !rel.is_uniform() {
                return Err(Error::NonUniformRelation(relation_to_string(&quiver, &rel)));
            }
            rels.push(rel);
        }
        Ok(Presentation {
            name: name.to_string(),
            quiver,
            relations: rels,
            basis: OnceLock::new(),
        })
    }

    pub(crate) fn from_parts(name: &str, quiver: Quiver, relations: Vec<Relation>) -> Self {
        let mut unique: Vec<Relation> = Vec::with_capacity(relations.len());
        for r in relations {
            if !unique.contains(&r) {
                unique.push(r);
            }
        }
        Presentation {
            name: name.to_string(),
            quiver,
            relations: unique,
            basis: OnceLock::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn is_monomial(&self) -> bool {
        self.relations.iter().all(Relation::is_monomial)
    }

    pub fn relation_string(&self, r: &Relation) -> String {
        relation_to_string(&self.quiver, r)
    }

    /// The cached basis, computed with [`DEFAULT_MAX_LEN`] if necessary.
    pub fn basis(&self) -> Result<&Basis> {
        self.basis_with_bound(DEFAULT_MAX_LEN)
    }

    pub fn basis_with_bound(&self, max_len: usize) -> Result<&Basis> {
        if let Some(b) = self.basis.get() {
            if b.nilpotency_index <= max_len {
                return Ok(b);
            }
            return Err(Error::NotFiniteDimensional {
                max_len,
                reason: format!("nonzero paths of length {}", b.nilpotency_index - 1),
            });
        }
        let b = self.compute_basis_uncached(max_len)?;
        let _ = self.basis.set(b);
        Ok(self.basis.get().expect("basis was just stored"))
    }

    pub fn dimension(&self) -> Result<usize> {
        Ok(self.basis()?.len())
    }

    pub fn compute_basis(&self, max_len: usize) -> Result<BasisReport> {
        let basis = self.basis_with_bound(max_len)?;
        let mut paths_by_length: Vec<Vec<Path>> = Vec::new();
        for p in basis.paths() {
            if paths_by_length.len() <= p.len() {
                paths_by_length.resize(p.len() + 1, Vec::new());
            }
            paths_by_length[p.len()].push(p.clone());
        }
        Ok(BasisReport {
            paths_by_length,
            dimension: basis.len(),
            radical_dimension: basis.radical_dimension(),
            monomial: self.is_monomial(),
            nilpotency_index: basis.nilpotency_index(),
        })
    }

    fn check_generators(&self) -> Result<()> {
        for r in &self.relations {
            if let Some((_, p)) = r.terms().iter().find(|(_, p)| p.len() < 2) {
                return Err(Error::NonAdmissibleGenerator {
                    relation: self.relation_string(r),
                    term: self.quiver.path_name(p),
                });
            }
        }
        Ok(())
    }

    fn compute_basis_uncached(&self, max_len: usize) -> Result<Basis> {
        self.check_generators()?;
        if self.relations.iter().all(Relation::is_homogeneous) {
            self.graded_basis(max_len)
        } else {
            self.filtered_basis(max_len)
        }
    }

    fn graded_basis(&self, max_len: usize) -> Result<Basis> {
        let q = &self.quiver;
        let mut levels: Vec<Vec<Path>> = vec![q.vertices().map(Path::trivial).collect()];
        // Normal forms of b.a for basis paths b, keyed by (b, a), as path combinations.
        let mut right: HashMap<(Path, ArrowId), SparseVecByPath> = HashMap::new();
        let mut total = levels[0].len();
        let mut by_degree: BTreeMap<usize, Vec<&Relation>> = BTreeMap::new();
        for r in &self.relations {
            by_degree.entry(r.max_len()).or_default().push(r);
        }

        for len in 1..=max_len {
            let prev = &levels[len - 1];
            let mut candidates: Vec<(Path, ArrowId)> = Vec::new();
            for b in prev {
                for a in q.arrows().filter(|&a| q.source(a) == b.target()) {
                    candidates.push((b.clone(), a));
                }
            }
            candidates.sort_by(|(b1, a1), (b2, a2)| b1.arrows().cmp(b2.arrows()).then(a1.cmp(a2)));
            if candidates.is_empty() {
                return Ok(Basis::from_levels(levels, right, q.arrow_count(), len));
            }
            if total + candidates.len() > PATH_BUDGET {
                return Err(Error::NotFiniteDimensional {
                    max_len,
                    reason: format!("more than {PATH_BUDGET} candidate paths by length {len}"),
                });
            }
            let slot: HashMap<(Path, ArrowId), usize> = candidates
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, k)| (k, i))
                .collect();

            let mut ideal = Echelon::new(candidates.len(), PivotRule::Last);
            for (&degree, rels) in by_degree.range(..=len) {
                for r in rels {
                    for b in levels[len - degree].iter().filter(|b| b.target() == r.source()) {
                        let mut row = vec![Scalar::zero(); candidates.len()];
                        for (c, p) in r.terms() {
                            let (init, last) = p.arrows().split_at(degree - 1);
                            let prefix = reduce_path(&right, b, init);
                            for (base, coeff) in prefix {
                                row[slot[&(base, last[0])]] += c * coeff;
                            }
                        }
                        ideal.insert(row);
                    }
                }
            }

            let mut level = Vec::new();
            for (i, (b, a)) in candidates.iter().enumerate() {
                if !ideal.is_pivot(i) {
                    let path = b.then(&q.arrow_path(*a)).expect("candidate is composable");
                    right.insert((b.clone(), *a), vec![(path.clone(), Scalar::one())]);
                    level.push(path);
                }
            }
            for (i, (b, a)) in candidates.iter().enumerate() {
                if let Some(row) = ideal.row_for_pivot(i) {
                    let nf: SparseVecByPath = row
                        .iter()
                        .enumerate()
                        .filter(|(j, x)| *j != i && !x.is_zero())
                        .map(|(j, x)| {
                            let (bj, aj) = &candidates[j];
                            (bj.then(&q.arrow_path(*aj)).expect("composable"), -x.clone())
                        })
                        .collect();
                    right.insert((b.clone(), *a), nf);
                }
            }
            let empty = level.is_empty();
            total += level.len();
            levels.push(level);
            if empty {
                return Ok(Basis::from_levels(levels, right, q.arrow_count(), len));
            }
        }
        Err(Error::NotFiniteDimensional {
            max_len,
            reason: format!("basis paths of length {max_len} remain"),
        })
    }

    /// Basis for relations whose terms have different lengths.
    fn filtered_basis(&self, max_len: usize) -> Result<Basis> {
        let q = &self.quiver;
        let monomials: Vec<&Path> = self
            .relations
            .iter()
            .filter(|r| r.is_monomial())
            .map(|r| &r.terms()[0].1)
            .collect();
        let others: Vec<&Relation> = self.relations.iter().filter(|r| !r.is_monomial()).collect();
        let avoids = |p: &Path| !monomials.iter().any(|m| p.contains_subpath(m));

        // Paths avoiding every monomial relation, grouped by length.
        let mut alive: Vec<Vec<Path>> = vec![q.vertices().map(Path::trivial).collect()];
        let mut total = alive[0].len();
        let extend = |alive: &mut Vec<Vec<Path>>, total: &mut usize| -> Result<()> {
            let next: Vec<Path> = alive
                .last()
                .expect("level 0 exists")
                .iter()
                .flat_map(|p| {
                    q.arrows()
                        .filter(move |&a| q.source(a) == p.target())
                        .map(move |a| p.then(&q.arrow_path(a)).expect("composable"))
                })
                .filter(|p| avoids(p))
                .collect();
            *total += next.len();
            if *total > PATH_BUDGET {
                return Err(Error::NotFiniteDimensional {
                    max_len,
                    reason: format!("more than {PATH_BUDGET} paths avoid the monomial relations"),
                });
            }
            alive.push(next);
            Ok(())
        };

        let concat = |u: &Path, p: &Path, w: &Path| -> Option<Path> {
            let path = u.then(p)?.then(w)?;
            avoids(&path).then_some(path)
        };

        // Spans {u.r.w} with every term of length at most `bound`; `keep`
        // decides which terms are recorded (all of them, or a truncation).
        let ideal_span = |alive: &Vec<Vec<Path>>,
                          index: &HashMap<Path, usize>,
                          bound: usize,
                          truncate_at: Option<usize>|
         -> Echelon {
            let mut span = Echelon::new(index.len(), PivotRule::Last);
            for r in &others {
                for ul in 0..alive.len() {
                    for u in alive[ul].iter().filter(|u| u.target() == r.source()) {
                        for wl in 0..alive.len() {
                            let total_len = ul + wl + r.max_len();
                            let low_len = ul + wl + r.min_len();
                            match truncate_at {
                                None if total_len > bound => continue,
                                Some(t) if low_len >= t => continue,
                                _ => {}
                            }
                            for w in alive[wl].iter().filter(|w| w.source() == r.target()) {
                                let mut row = vec![Scalar::zero(); index.len()];
                                for (c, p) in r.terms() {
                                    if let Some(path) = concat(u, p, w) {
                                        if truncate_at.map_or(true, |t| path.len() < t) {
                                            row[index[&path]] += c;
                                        }
                                    }
                                }
                                span.insert(row);
                            }
                        }
                    }
                }
            }
            span
        };

        for bound in 2..=max_len {
            while alive.len() <= bound {
                extend(&mut alive, &mut total)?;
            }
            let flat: Vec<Path> = alive.iter().flatten().cloned().collect();
            let index: HashMap<Path, usize> = flat.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
            let span = ideal_span(&alive, &index, bound, None);
            let certified = (1..=bound).find(|&l| {
                alive[l].iter().all(|p| {
                    let mut unit = vec![Scalar::zero(); index.len()];
                    unit[index[p]] = Scalar::one();
                    span.contains(&unit)
                })
            });
            let Some(top) = certified else { continue };

            // J^top lies in I: the algebra is the quotient of the paths of
            // length < top by the truncated ideal.
            let low: Vec<Vec<Path>> = alive[..top].to_vec();
            let low_flat: Vec<Path> = low.iter().flatten().cloned().collect();
            let low_index: HashMap<Path, usize> =
                low_flat.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
            let trunc = ideal_span(&low, &low_index, usize::MAX, Some(top));
            let nf_of = |p: &Path| -> SparseVecByPath {
                if p.len() >= top || !avoids(p) {
                    return Vec::new();
                }
                let i = low_index[p];
                match trunc.row_for_pivot(i) {
                    None => vec![(p.clone(), Scalar::one())],
                    Some(row) => row
                        .iter()
                        .enumerate()
                        .filter(|(j, x)| *j != i && !x.is_zero())
                        .map(|(j, x)| (low_flat[j].clone(), -x.clone()))
                        .collect(),
                }
            };
            let levels: Vec<Vec<Path>> = low
                .iter()
                .map(|lvl| lvl.iter().filter(|p| !trunc.is_pivot(low_index[*p])).cloned().collect())
                .collect();
            let mut right = HashMap::new();
            for b in levels.iter().flatten() {
                for a in q.arrows().filter(|&a| q.source(a) == b.target()) {
                    let ba = b.then(&q.arrow_path(a)).expect("composable");
                    right.insert((b.clone(), a), nf_of(&ba));
                }
            }
            let mut basis = Basis::from_levels(levels, right, q.arrow_count(), top);
            // The certified length may not be minimal; find the true index.
            let nilpotent_at = (1..=top)
                .find(|&l| {
                    l == top
                        || alive[l].iter().all(|p| basis.normal_form(p).is_empty())
                })
                .unwrap_or(top);
            basis.nilpotency_index = nilpotent_at;
            return Ok(basis);
        }
        Err(Error::NotFiniteDimensional {
            max_len,
            reason: "no power of the arrow ideal could be shown to lie in the ideal".into(),
        })
    }

    /// Admissibility: every relation term has length at least 2 and the
    /// arrow ideal is nilpotent modulo the relations.
    pub fn is_admissible(&self, max_len: usize) -> AdmissibilityReport {
        match self.basis_with_bound(max_len) {
            Ok(b) => AdmissibilityReport {
                admissible: true,
                nilpotency_index: Some(b.nilpotency_index()),
                diagnostics: Vec::new(),
            },
            Err(e) => AdmissibilityReport {
                admissible: false,
                nilpotency_index: None,
                diagnostics: vec![e.to_string()],
            },
        }
    }

    /// Condition (S): every arrow has at most one arrow continuing it to a
    /// nonzero path on each side.
    pub fn check_condition_s(&self) -> Result<ConditionSReport> {
        let basis = self.basis()?;
        let q = &self.quiver;
        let mut witnesses = Vec::new();
        for a in q.arrows() {
            let path_a = q.arrow_path(a);
            let nf_a = basis.normal_form(&path_a);
            let successors: Vec<ArrowId> = q
                .arrows()
                .filter(|&b| q.source(b) == q.target(a))
                .filter(|&b| !basis.right_arrow(&nf_a, b).is_empty())
                .collect();
            let predecessors: Vec<ArrowId> = q
                .arrows()
                .filter(|&c| q.target(c) == q.source(a))
                .filter(|&c| !basis.left_arrow(q, c, &nf_a).is_empty())
                .collect();
            for (side, list) in [(Side::Right, successors), (Side::Left, predecessors)] {
                for (i, &first) in list.iter().enumerate() {
                    for &second in &list[i + 1..] {
                        witnesses.push(SWitness {
                            arrow: a,
                            side,
                            first,
                            second,
                        });
                    }
                }
            }
        }
        Ok(ConditionSReport {
            holds: witnesses.is_empty(),
            witnesses,
        })
    }

    pub fn is_special_multiserial(&self) -> bool {
        self.is_admissible(DEFAULT_MAX_LEN).admissible
            && self.check_condition_s().map(|r| r.holds).unwrap_or(false)
    }

    /// Whether the element `x` is annihilated by every arrow on the given
    /// side (right socle: `x.a = 0`; left socle: `a.x = 0`).
    pub fn element_in_socle(&self, x: &SparseVec, side: Side) -> Result<bool> {
        let basis = self.basis()?;
        let q = &self.quiver;
        Ok(q.arrows().all(|a| match side {
            Side::Right => basis.right_arrow(x, a).is_empty(),
            Side::Left => basis.left_arrow(q, a, x).is_empty(),
        }))
    }

    /// Socle membership of a basis path.
    pub fn socle_membership(&self, p: &Path, side: Side) -> Result<bool> {
        let basis = self.basis()?;
        let i = basis
            .index_of(p)
            .ok_or_else(|| Error::UnknownBasisPath(self.quiver.path_name(p)))?;
        self.element_in_socle(&basis.unit(i), side)
    }

    /// Socle membership of the image of an arbitrary path.
    pub fn path_in_socle(&self, p: &Path, side: Side) -> Result<bool> {
        let nf = self.basis()?.normal_form(p);
        self.element_in_socle(&nf, side)
    }

    /// Tags each relation as monomial, a combination of paths lying in the
    /// two-sided socle, or neither.
    pub fn classify_relations(&self) -> Result<Vec<RelationClass>> {
        self.relations
            .iter()
            .map(|r| {
                if r.is_monomial() {
                    return Ok(RelationClass::Monomial);
                }
                for (_, p) in r.terms() {
                    if !self.path_in_socle(p, Side::Right)? || !self.path_in_socle(p, Side::Left)? {
                        return Ok(RelationClass::Violation);
                    }
                }
                Ok(RelationClass::SocleCombination)
            })
            .collect()
    }

    /// Right socle of `A` as a subspace of the basis coordinates.
    pub fn right_socle(&self) -> Result<Echelon> {
        let basis = self.basis()?;
        let n = basis.len();
        let q = &self.quiver;
        // x lies in the socle iff x.a = 0 for all a: the kernel of the
        // transpose of the stacked right-action matrices.
        let mut action = Echelon::new(n, PivotRule::First);
        for a in q.arrows() {
            let mut columns: BTreeMap<usize, Vec<Scalar>> = BTreeMap::new();
            for i in 0..n {
                for (&j, c) in &basis.right[i][a.0] {
                    columns.entry(j).or_insert_with(|| vec![Scalar::zero(); n])[i] = c.clone();
                }
            }
            for col in columns.into_values() {
                action.insert(col);
            }
        }
        Ok(Echelon::from_vectors(n, action.kernel().basis))
    }

    pub fn socle_dimension(&self) -> Result<usize> {
        Ok(self.right_socle()?.len())
    }

    /// Presents `A/soc(A)` for the right socle, removing vertices and arrows
    /// that lie in the socle and turning socle paths into monomial relations.
    pub fn socle_quotient(&self) -> Result<Presentation> {
        let basis = self.basis()?;
        let q = &self.quiver;
        let socle = self.right_socle()?;
        let in_socle = |v: &SparseVec| socle.contains(&crate::linalg::sparse_to_dense(v, basis.len()));

        let vertex_dead: Vec<bool> = q
            .vertices()
            .map(|v| in_socle(&basis.unit(basis.index[&Path::trivial(v)])))
            .collect();
        let arrow_dead: Vec<bool> = q
            .arrows()
            .map(|a| vertex_dead[q.source(a).0] || vertex_dead[q.target(a).0] || in_socle(&basis.normal_form(&q.arrow_path(a))))
            .collect();

        let mut quotient = Quiver::new();
        for v in q.vertices().filter(|v| !vertex_dead[v.0]) {
            quotient.add_vertex(q.vertex_name(v))?;
        }
        for a in q.arrows().filter(|a| !arrow_dead[a.0]) {
            let s = quotient.vertex(q.vertex_name(q.source(a)))?;
            let t = quotient.vertex(q.vertex_name(q.target(a)))?;
            quotient.add_arrow(q.arrow_name(a), s, t)?;
        }
        let survives = |p: &Path| !vertex_dead[p.source().0] && p.arrows().iter().all(|a| !arrow_dead[a.0]);
        let transport = |p: &Path| -> Result<Path> {
            if p.is_trivial() {
                Ok(Path::trivial(quotient.vertex(q.vertex_name(p.source()))?))
            } else {
                let arrows = p
                    .arrows()
                    .iter()
                    .map(|&a| quotient.arrow(q.arrow_name(a)))
                    .collect::<Result<Vec<_>>>()?;
                quotient.path(&arrows)
            }
        };

        let mut relations = Vec::new();
        for r in &self.relations {
            let mut residual = Vec::new();
            for (c, p) in r.terms().iter().filter(|(_, p)| survives(p)) {
                if in_socle(&basis.normal_form(p)) {
                    relations.push(Relation::monomial(transport(p)?));
                } else {
                    residual.push((c.clone(), transport(p)?));
                }
            }
            if let Some(rel) = Relation::normalized(residual) {
                relations.push(rel);
            }
        }
        for row in socle.rows() {
            let terms: Vec<(Scalar, Path)> = dense_to_sparse(row)
                .into_iter()
                .map(|(i, c)| (c, basis.path(i).clone()))
                .filter(|(_, p)| survives(p))
                .collect();
            let Some(rel) = Relation::normalized(terms) else { continue };
            if rel.terms().iter().any(|(_, p)| p.len() < 2) {
                return Err(Error::SocleQuotientNotPresentable(format!(
                    "socle element `{}` involves paths of length < 2",
                    self.relation_string(&rel)
                )));
            }
            let terms = rel
                .terms()
                .iter()
                .map(|(c, p)| Ok((c.clone(), transport(p)?)))
                .collect::<Result<Vec<_>>>()?;
            relations.extend(Relation::normalized(terms));
        }
        let result = Presentation::from_parts(&format!("{}_soc", self.name), quotient, relations);
        let expected = basis.len() - socle.len();
        let got = result.dimension()?;
        if got != expected {
            return Err(Error::InternalInvariantViolation(format!(
                "socle quotient has dimension {got}, expected {expected}"
            )));
        }
        Ok(result)
    }
}

/// Normal form of `b` followed by `arrows`, using the right-action table built
/// so far (all intermediate lengths must already be known).
fn reduce_path(
    right: &HashMap<(Path, ArrowId), SparseVecByPath>,
    b: &Path,
    arrows: &[ArrowId],
) -> SparseVecByPath {
    let mut current: Vec<(Path, Scalar)> = vec![(b.clone(), Scalar::one())];
    for &a in arrows {
        let mut next: Vec<(Path, Scalar)> = Vec::new();
        for (p, c) in &current {
            for (r, d) in &right[&(p.clone(), a)] {
                match next.iter_mut().find(|(x, _)| x == r) {
                    Some((_, e)) => *e += c * d,
                    None => next.push((r.clone(), c * d)),
                }
            }
        }
        next.retain(|(_, c)| !c.is_zero());
        current = next;
    }
    current
}
