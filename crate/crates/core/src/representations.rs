//! Right modules over `KQ/I` as quiver representations.
//!
//! Vectors are rows and arrows act on the right: the matrix of `a : s -> t`
//! has `dim M_s` rows and `dim M_t` columns, so the action of a path `a.b` is
//! the product `M_a * M_b`.

use std::collections::HashSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{int, sparse_axpy, Echelon, Kernel, Matrix, PivotRule, Scalar, SparseEchelon, SparseVec};
use crate::presentation::{Basis, Presentation};
use crate::quiver::{ArrowId, Path, VertexId};

#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl Representation {
    /// Checks matrix shapes and that every relation acts as zero.
    pub fn new(p: &Presentation, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let q = p.quiver();
        if dims.len() != q.vertex_count() || maps.len() != q.arrow_count() {
            return Err(Error::InternalInvariantViolation(
                "representation does not match the quiver".into(),
            ));
        }
        for a in q.arrows() {
            let m = &maps[a.0];
            if m.rows() != dims[q.source(a).0] || m.cols() != dims[q.target(a).0] {
                return Err(Error::InternalInvariantViolation(format!(
                    "matrix of {} has the wrong shape",
                    q.arrow_name(a)
                )));
            }
        }
        let rep = Representation { dims, maps };
        for r in p.relations() {
            let (s, t) = (r.source(), r.target());
            for i in 0..rep.dims[s.0] {
                let mut total = vec![Scalar::zero(); rep.dims[t.0]];
                for (c, path) in r.terms() {
                    let mut v = vec![Scalar::zero(); rep.dims[s.0]];
                    v[i] = c.clone();
                    for &a in path.arrows() {
                        v = rep.maps[a.0].left_apply(&v);
                    }
                    for (x, y) in total.iter_mut().zip(v) {
                        *x += y;
                    }
                }
                if total.iter().any(|x| !x.is_zero()) {
                    return Err(Error::RelationViolated(p.relation_string(r)));
                }
            }
        }
        Ok(rep)
    }

    pub fn dimension_vector(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, v: VertexId) -> usize {
        self.dims[v.0]
    }

    pub fn total_dimension(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn map(&self, a: ArrowId) -> &Matrix {
        &self.maps[a.0]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// Action of a path; the identity for a trivial path.
    pub fn path_action(&self, path: &Path) -> Matrix {
        let mut m = Matrix::identity(self.dims[path.source().0]);
        for &a in path.arrows() {
            m = m.mul(&self.maps[a.0]);
        }
        m
    }
}

/// The string module of a basis path: one basis vector per position along
/// the path, each arrow moving one position forward.
pub fn uniserial_module(p: &Presentation, path: &Path) -> Result<Representation> {
    let q = p.quiver();
    if p.basis()?.index_of(path).is_none() {
        return Err(Error::NotBasisPath(q.path_name(path)));
    }
    let mut dims = vec![0; q.vertex_count()];
    let mut local = Vec::with_capacity(path.len() + 1);
    let mut at = path.source();
    local.push(dims[at.0]);
    dims[at.0] += 1;
    for &a in path.arrows() {
        at = q.target(a);
        local.push(dims[at.0]);
        dims[at.0] += 1;
    }
    let mut maps: Vec<Matrix> = q
        .arrows()
        .map(|a| Matrix::zeros(dims[q.source(a).0], dims[q.target(a).0]))
        .collect();
    for (k, &a) in path.arrows().iter().enumerate() {
        maps[a.0].set(local[k], local[k + 1], Scalar::one());
    }
    Representation::new(p, dims, maps)
}

pub fn simple_module(p: &Presentation, v: VertexId) -> Result<Representation> {
    uniserial_module(p, &Path::trivial(v))
}

/// Local coordinates at each vertex for a family of basis paths, grouped by
/// the vertex chosen by `at`.
fn local_indices(basis: &Basis, members: &[usize], vertices: usize, at: impl Fn(&Path) -> VertexId) -> (Vec<usize>, Vec<Option<usize>>) {
    let mut dims = vec![0; vertices];
    let mut local = vec![None; basis.len()];
    for &i in members {
        let w = at(basis.path(i));
        local[i] = Some(dims[w.0]);
        dims[w.0] += 1;
    }
    (dims, local)
}

/// `P_v = e_v A`, spanned by basis paths starting at `v`.
pub fn projective_module(p: &Presentation, v: VertexId) -> Result<Representation> {
    let q = p.quiver();
    let basis = p.basis()?;
    let members: Vec<usize> = (0..basis.len()).filter(|&i| basis.path(i).source() == v).collect();
    let (dims, local) = local_indices(basis, &members, q.vertex_count(), |x| x.target());
    let mut maps: Vec<Matrix> = q
        .arrows()
        .map(|a| Matrix::zeros(dims[q.source(a).0], dims[q.target(a).0]))
        .collect();
    for &i in &members {
        for b in q.arrows().filter(|&b| q.source(b) == basis.path(i).target()) {
            for (j, c) in basis.right_arrow(&basis.unit(i), b) {
                let (row, col) = (local[i].expect("member"), local[j].expect("member"));
                maps[b.0].set(row, col, c);
            }
        }
    }
    Representation::new(p, dims, maps)
}

/// `I_v = D(A e_v)`, dual to the basis paths ending at `v`.
pub fn injective_module(p: &Presentation, v: VertexId) -> Result<Representation> {
    let q = p.quiver();
    let basis = p.basis()?;
    let members: Vec<usize> = (0..basis.len()).filter(|&i| basis.path(i).target() == v).collect();
    let (dims, local) = local_indices(basis, &members, q.vertex_count(), |x| x.source());
    let mut maps: Vec<Matrix> = q
        .arrows()
        .map(|a| Matrix::zeros(dims[q.source(a).0], dims[q.target(a).0]))
        .collect();
    // (q* . a)(y) = q*(a.y): the entry for (q, y) is the coefficient of q in a.y.
    for &y in &members {
        for a in q.arrows().filter(|&a| q.target(a) == basis.path(y).source()) {
            for (i, c) in basis.left_arrow(q, a, &basis.unit(y)) {
                let (row, col) = (local[i].expect("member"), local[y].expect("member"));
                maps[a.0].set(row, col, c);
            }
        }
    }
    Representation::new(p, dims, maps)
}

pub fn projective_modules(p: &Presentation) -> Result<Vec<Representation>> {
    p.quiver().vertices().map(|v| projective_module(p, v)).collect()
}

pub fn injective_modules(p: &Presentation) -> Result<Vec<Representation>> {
    p.quiver().vertices().map(|v| injective_module(p, v)).collect()
}

/// Restriction along the embedding `A -> A^Sp` of a split at `v`: the space at
/// `v` is the direct sum of the spaces at its two halves, and arrow matrices
/// are carried over block by block.
pub fn restrict(original: &Presentation, split: &Presentation, v: VertexId, m: &Representation) -> Result<Representation> {
    let (q, qs) = (original.quiver(), split.quiver());
    if qs.vertex_count() != q.vertex_count() + 1 || qs.arrow_count() != q.arrow_count() {
        return Err(Error::InternalInvariantViolation("split presentation does not match".into()));
    }
    // Split vertex w' maps to original vertex `parent[w']` at block `offset[w']`.
    let mut parent = Vec::with_capacity(qs.vertex_count());
    let mut offset = Vec::with_capacity(qs.vertex_count());
    let mut dims = vec![0; q.vertex_count()];
    for w in qs.vertices() {
        let pw = if w.0 <= v.0 { w } else { VertexId(w.0 - 1) };
        parent.push(pw);
        offset.push(dims[pw.0]);
        dims[pw.0] += m.dims[w.0];
    }
    let mut maps = Vec::with_capacity(q.arrow_count());
    for a in qs.arrows() {
        let (s, t) = (qs.source(a), qs.target(a));
        let mut big = Matrix::zeros(dims[parent[s.0].0], dims[parent[t.0].0]);
        big.put_block(offset[s.0], offset[t.0], &m.maps[a.0]);
        maps.push(big);
    }
    Representation::new(original, dims, maps)
}

/// A module homomorphism, one matrix per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMap {
    pub blocks: Vec<Matrix>,
}

impl ModuleMap {
    pub fn identity(m: &Representation) -> Self {
        ModuleMap {
            blocks: m.dims.iter().map(|&d| Matrix::identity(d)).collect(),
        }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(x, y)| x.mul(y)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn is_invertible(&self) -> bool {
        self.blocks.iter().all(Matrix::is_invertible)
    }

    pub fn flatten(&self) -> Vec<Scalar> {
        self.blocks.iter().flat_map(|b| b.entries().iter().cloned()).collect()
    }

    fn combination(basis: &[ModuleMap], coeffs: &[Scalar]) -> ModuleMap {
        let mut blocks: Vec<Matrix> = basis[0].blocks.iter().map(|b| Matrix::zeros(b.rows(), b.cols())).collect();
        for (m, c) in basis.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            for (acc, b) in blocks.iter_mut().zip(&m.blocks) {
                *acc = acc.add(&b.scale(c));
            }
        }
        ModuleMap { blocks }
    }
}

/// A basis of `Hom(M, N)` with coordinate extraction. A homomorphism is
/// stored through the images of a fixed set of top generators of `M`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub basis: Vec<ModuleMap>,
    kernel: Kernel,
    generators: Vec<(VertexId, Vec<Scalar>)>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a homomorphism in `basis`.
    pub fn coordinates(&self, f: &ModuleMap) -> Vec<Scalar> {
        let images: Vec<Scalar> = self
            .generators
            .iter()
            .flat_map(|(v, g)| f.blocks[v.0].left_apply(g))
            .collect();
        self.kernel.coordinates(&images)
    }
}

/// A basis of each `M_w` made of elements `g.p`, where `g` is a top
/// generator and `p` a path, grown breadth first along arrows.
struct Spanning {
    generators: Vec<(VertexId, Vec<Scalar>)>,
    /// `(vertex, vector, generator, parent)`; the parent is the element and
    /// arrow this one was reached from.
    elements: Vec<(VertexId, Vec<Scalar>, usize, Option<(usize, ArrowId)>)>,
    at: Vec<Vec<usize>>,
    /// Inverse of the matrix whose rows are the basis vectors at a vertex.
    inverse: Vec<Matrix>,
}

impl Spanning {
    fn new(p: &Presentation, m: &Representation) -> Spanning {
        let q = p.quiver();
        let mut generators = Vec::new();
        for w in q.vertices() {
            let d = m.dims[w.0];
            let mut span = Echelon::new(d, PivotRule::First);
            for a in q.arrows().filter(|&a| q.target(a) == w) {
                let ma = &m.maps[a.0];
                for r in 0..ma.rows() {
                    span.insert(ma.row(r).to_vec());
                }
            }
            for j in 0..d {
                let mut e = vec![Scalar::zero(); d];
                e[j] = Scalar::one();
                if span.insert(e.clone()) {
                    generators.push((w, e));
                }
            }
        }
        let mut spans: Vec<Echelon> = q.vertices().map(|w| Echelon::new(m.dims[w.0], PivotRule::First)).collect();
        let mut elements = Vec::new();
        let mut at = vec![Vec::new(); q.vertex_count()];
        for (i, (w, g)) in generators.iter().enumerate() {
            spans[w.0].insert(g.clone());
            at[w.0].push(elements.len());
            elements.push((*w, g.clone(), i, None));
        }
        let mut next = 0;
        while next < elements.len() {
            let (w, v, gen) = (elements[next].0, elements[next].1.clone(), elements[next].2);
            for a in q.arrows().filter(|&a| q.source(a) == w) {
                let t = q.target(a);
                let image = m.maps[a.0].left_apply(&v);
                if spans[t.0].insert(image.clone()) {
                    at[t.0].push(elements.len());
                    elements.push((t, image, gen, Some((next, a))));
                }
            }
            next += 1;
        }
        let inverse = q
            .vertices()
            .map(|w| {
                let rows: Vec<Vec<Scalar>> = at[w.0].iter().map(|&i| elements[i].1.clone()).collect();
                Matrix::from_rows(rows, m.dims[w.0])
                    .inverse()
                    .expect("top generators generate the module")
            })
            .collect();
        Spanning {
            generators,
            elements,
            at,
            inverse,
        }
    }
}

/// Solves for the images of the top generators of `M` under a homomorphism
/// `M -> N`: the image of each spanning element `g.p` is forced, and every
/// remaining arrow action gives a linear condition.
pub fn hom(p: &Presentation, m: &Representation, n: &Representation) -> HomSpace {
    let q = p.quiver();
    let sp = Spanning::new(p, m);
    let mut offset = Vec::with_capacity(sp.generators.len());
    let mut unknowns = 0;
    for (w, _) in &sp.generators {
        offset.push(unknowns);
        unknowns += n.dims[w.0];
    }

    // image[i][j]: column j of f(element i) as a form in the unknowns.
    let push = |forms: &[SparseVec], a: ArrowId| -> Vec<SparseVec> {
        let na = &n.maps[a.0];
        (0..na.cols())
            .map(|c| {
                let mut acc = SparseVec::new();
                for (r, form) in forms.iter().enumerate() {
                    let x = na.get(r, c);
                    if !x.is_zero() {
                        sparse_axpy(&mut acc, x, form);
                    }
                }
                acc
            })
            .collect()
    };
    let mut image: Vec<Vec<SparseVec>> = Vec::with_capacity(sp.elements.len());
    for (w, _, gen, parent) in &sp.elements {
        let forms = match parent {
            None => (0..n.dims[w.0])
                .map(|j| SparseVec::from([(offset[*gen] + j, Scalar::one())]))
                .collect(),
            Some((from, a)) => push(&image[*from], *a),
        };
        image.push(forms);
    }

    let tree: HashSet<(usize, ArrowId)> = sp.elements.iter().filter_map(|e| e.3).collect();
    let mut system = SparseEchelon::new(unknowns);
    'outer: for (i, (w, v, _, _)) in sp.elements.iter().enumerate() {
        for a in q.arrows().filter(|&a| q.source(a) == *w) {
            let t = q.target(a);
            if tree.contains(&(i, a)) {
                continue;
            }
            let coords = sp.inverse[t.0].left_apply(&m.maps[a.0].left_apply(v));
            let mut eqs = push(&image[i], a);
            for (j, eq) in eqs.iter_mut().enumerate() {
                for (k, c) in coords.iter().enumerate() {
                    if !c.is_zero() {
                        sparse_axpy(eq, &-c.clone(), &image[sp.at[t.0][k]][j]);
                    }
                }
            }
            for eq in eqs {
                if !eq.is_empty() {
                    system.insert(eq);
                    if system.is_full() {
                        break 'outer;
                    }
                }
            }
        }
    }

    let kernel = system.kernel();
    let basis = kernel
        .basis
        .iter()
        .map(|x| ModuleMap {
            blocks: q
                .vertices()
                .map(|w| {
                    let rows: Vec<Vec<Scalar>> = sp.at[w.0]
                        .iter()
                        .map(|&i| {
                            image[i]
                                .iter()
                                .map(|form| form.iter().map(|(u, c)| c * &x[*u]).sum())
                                .collect()
                        })
                        .collect();
                    sp.inverse[w.0].mul(&Matrix::from_rows(rows, n.dims[w.0]))
                })
                .collect(),
        })
        .collect();
    HomSpace {
        basis,
        kernel,
        generators: sp.generators,
    }
}

/// Bound on the number of grid points tried before giving up.
const GRID_BUDGET: usize = 50_000;

/// Decides `M ≅ N` by searching `Hom(M, N)` for an invertible element.
///
/// Negative answers come from invariants (dimension vectors and Hom
/// dimensions against simples and against `M`, `N` themselves) or from an
/// exhaustive search over a grid large enough that a nonzero determinant
/// polynomial cannot vanish on all of it.
pub fn is_isomorphic(p: &Presentation, m: &Representation, n: &Representation) -> Result<bool> {
    if m.dims != n.dims {
        return Ok(false);
    }
    if m.total_dimension() == 0 {
        return Ok(true);
    }
    let h = hom(p, m, n);
    if h.dim() == 0 {
        return Ok(false);
    }
    if h.basis.iter().any(ModuleMap::is_invertible) {
        return Ok(true);
    }
    for t in 1..=64u64 {
        let coeffs: Vec<Scalar> = (0..h.dim() as u64)
            .map(|i| int((((i + 1) * (t + 3) * 7919 + t * t) % 13) as i64 - 6))
            .collect();
        if ModuleMap::combination(&h.basis, &coeffs).is_invertible() {
            return Ok(true);
        }
    }

    let dims = |x: &Representation, y: &Representation| hom(p, x, y).dim();
    if dims(n, m) != h.dim() || dims(m, m) != h.dim() || dims(n, n) != h.dim() {
        return Ok(false);
    }
    for v in p.quiver().vertices() {
        let s = simple_module(p, v)?;
        if dims(m, &s) != dims(n, &s) || dims(&s, m) != dims(&s, n) {
            return Ok(false);
        }
    }

    // det(f) is a polynomial of degree at most dim M in the coordinates of f;
    // if it is nonzero it is nonzero somewhere on {0..dim M}^k.
    let side = m.total_dimension() + 1;
    let k = h.dim();
    let points = (side as f64).powi(k as i32);
    if points > GRID_BUDGET as f64 {
        return Err(Error::Inconclusive(format!(
            "no invertible map found among {k}-dimensional Hom space within the search budget"
        )));
    }
    let mut digits = vec![0usize; k];
    loop {
        let coeffs: Vec<Scalar> = digits.iter().map(|&d| int(d as i64)).collect();
        if ModuleMap::combination(&h.basis, &coeffs).is_invertible() {
            return Ok(true);
        }
        let mut pos = 0;
        while pos < k {
            digits[pos] += 1;
            if digits[pos] < side {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
        if pos == k {
            return Ok(false);
        }
    }
}
