//! Finite-dimensional algebras given by structure constants, endomorphism
//! algebras of modules, and global dimension by minimal projective
//! resolutions of the simple right modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use std::collections::HashMap;

use crate::linalg::{
    dense_to_sparse, int, is_zero_vec, sparse_axpy, sparse_to_dense, Echelon, Matrix, PivotRule, Scalar, SparseEchelon,
    SparseVec,
};
use crate::pipeline::{auslander_generator, AuslanderGenerator};
use crate::presentation::Presentation;
use crate::representations::{hom, HomSpace, Representation};

/// Above this dimension associativity is checked on a sample of triples.
const FULL_CHECK_DIM: usize = 64;

/// An associative unital algebra with basis `b_0, …, b_{n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstantAlgebra {
    n: usize,
    table: Vec<Vec<SparseVec>>,
    one: Vec<Scalar>,
}

impl StructureConstantAlgebra {
    /// `table[i][j]` is `b_i b_j`. Fails if the product is not associative
    /// or `one` is not a two-sided identity.
    pub fn new(table: Vec<Vec<SparseVec>>, one: Vec<Scalar>) -> Result<Self> {
        let alg = StructureConstantAlgebra {
            n: one.len(),
            table,
            one,
        };
        if alg.table.len() != alg.n || alg.table.iter().any(|row| row.len() != alg.n) {
            return Err(Error::InternalInvariantViolation("multiplication table has the wrong shape".into()));
        }
        for i in 0..alg.n {
            let b = alg.unit(i);
            if alg.mul(&alg.one, &b) != b || alg.mul(&b, &alg.one) != b {
                return Err(Error::InternalInvariantViolation("identity element is not an identity".into()));
            }
        }
        if let Some((i, j, k)) = alg.associativity_failure(FULL_CHECK_DIM) {
            return Err(Error::InternalInvariantViolation(format!(
                "multiplication is not associative on basis triple ({i}, {j}, {k})"
            )));
        }
        Ok(alg)
    }

    /// The subalgebra of `d × d` matrices spanned by `mats` (which must be
    /// closed under products and contain the identity).
    pub fn from_matrix_span(mats: &[Matrix]) -> Result<Self> {
        let d = mats.first().map_or(0, Matrix::rows);
        let span = Echelon::from_vectors(d * d, mats.iter().map(|m| m.entries().to_vec()));
        let basis: Vec<Matrix> = span
            .rows()
            .iter()
            .map(|r| Matrix::from_rows(r.chunks(d.max(1)).map(<[Scalar]>::to_vec).collect(), d))
            .collect();
        let coords = |m: &Matrix| -> Result<Vec<Scalar>> {
            span.coordinates(m.entries())
                .ok_or_else(|| Error::InternalInvariantViolation("matrix span is not closed".into()))
        };
        let mut table = Vec::with_capacity(basis.len());
        for x in &basis {
            let mut row = Vec::with_capacity(basis.len());
            for y in &basis {
                row.push(crate::linalg::dense_to_sparse(&coords(&x.mul(y))?));
            }
            table.push(row);
        }
        StructureConstantAlgebra::new(table, coords(&Matrix::identity(d))?)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn one(&self) -> &[Scalar] {
        &self.one
    }

    pub fn unit(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.n];
        v[i] = Scalar::one();
        v
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut acc = SparseVec::new();
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                sparse_axpy(&mut acc, &(a * b), &self.table[i][j]);
            }
        }
        crate::linalg::sparse_to_dense(&acc, self.n)
    }

    pub fn basis_sparse(&self, i: usize) -> SparseVec {
        SparseVec::from([(i, Scalar::one())])
    }

    pub fn mul_sparse(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (i, a) in x {
            for (j, b) in y {
                sparse_axpy(&mut acc, &(a * b), &self.table[*i][*j]);
            }
        }
        acc
    }

    /// First basis triple violating associativity; all triples when the
    /// dimension is at most `full`, a deterministic sample otherwise.
    pub fn associativity_failure(&self, full: usize) -> Option<(usize, usize, usize)> {
        let n = self.n;
        let check = |i: usize, j: usize, k: usize| {
            let left = self.mul(&crate::linalg::sparse_to_dense(&self.table[i][j], n), &self.unit(k));
            let right = self.mul(&self.unit(i), &crate::linalg::sparse_to_dense(&self.table[j][k], n));
            left == right
        };
        if n <= full {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        if !check(i, j, k) {
                            return Some((i, j, k));
                        }
                    }
                }
            }
        } else {
            for s in 0..20_000usize {
                let (i, j, k) = ((s * 7919) % n, (s * 104_729 + 13) % n, (s * 1_299_709 + 29) % n);
                if !check(i, j, k) {
                    return Some((i, j, k));
                }
            }
        }
        None
    }

    /// Upper triangular `d × d` matrices.
    pub fn upper_triangular(d: usize) -> Self {
        let mut mats = Vec::new();
        for i in 0..d {
            for j in i..d {
                let mut m = Matrix::zeros(d, d);
                m.set(i, j, Scalar::one());
                mats.push(m);
            }
        }
        Self::from_matrix_span(&mats).expect("upper triangular matrices form an algebra")
    }

    /// All `d × d` matrices.
    pub fn matrix_algebra(d: usize) -> Self {
        let mut mats = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let mut m = Matrix::zeros(d, d);
                m.set(i, j, Scalar::one());
                mats.push(m);
            }
        }
        Self::from_matrix_span(&mats).expect("matrices form an algebra")
    }

    /// `K^d` with componentwise product.
    pub fn product_of_fields(d: usize) -> Self {
        let mats: Vec<Matrix> = (0..d)
            .map(|i| {
                let mut m = Matrix::zeros(d, d);
                m.set(i, i, Scalar::one());
                m
            })
            .collect();
        Self::from_matrix_span(&mats).expect("diagonal matrices form an algebra")
    }
}

/// Size limits for building an endomorphism algebra.
pub const MAX_END_DIM: usize = 4000;
pub const MAX_END_PRODUCTS: usize = 2_000_000;

/// `End(M)^op` for `M = ⊕ M_i`, with basis the union of bases of the spaces
/// `Hom(M_i, M_j)`.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub algebra: StructureConstantAlgebra,
    /// `hom_dims[i][j] = dim Hom(M_i, M_j)`.
    pub hom_dims: Vec<Vec<usize>>,
    /// First basis index of `Hom(M_i, M_j)`.
    pub offsets: Vec<Vec<usize>>,
}

/// The product of `x ∈ Hom(M_i, M_j)` and `y ∈ Hom(M_j, M_k)` is `y ∘ x`.
pub fn end_algebra(p: &Presentation, summands: &[Representation]) -> Result<EndAlgebra> {
    let t = summands.len();
    let spaces: Vec<Vec<HomSpace>> = summands
        .iter()
        .map(|m| summands.iter().map(|n| hom(p, m, n)).collect())
        .collect();
    let mut offset = vec![vec![0usize; t]; t];
    let mut n = 0;
    for i in 0..t {
        for j in 0..t {
            offset[i][j] = n;
            n += spaces[i][j].dim();
        }
    }
    let products: usize = (0..t)
        .flat_map(|i| (0..t).flat_map(move |j| (0..t).map(move |k| (i, j, k))))
        .map(|(i, j, k)| spaces[i][j].dim() * spaces[j][k].dim())
        .sum();
    if n > MAX_END_DIM || products > MAX_END_PRODUCTS {
        return Err(Error::Inconclusive(format!(
            "endomorphism algebra of dimension {n} with {products} basis products exceeds the exact computation limits ({MAX_END_DIM}, {MAX_END_PRODUCTS})"
        )));
    }
    let mut table = vec![vec![SparseVec::new(); n]; n];
    for i in 0..t {
        for j in 0..t {
            for (xi, x) in spaces[i][j].basis.iter().enumerate() {
                for k in 0..t {
                    for (yi, y) in spaces[j][k].basis.iter().enumerate() {
                        let coords = spaces[i][k].coordinates(&x.then(y));
                        let base = offset[i][k];
                        table[offset[i][j] + xi][offset[j][k] + yi] = coords
                            .into_iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(l, c)| (base + l, c))
                            .collect();
                    }
                }
            }
        }
    }
    let mut one = vec![Scalar::zero(); n];
    for (i, m) in summands.iter().enumerate() {
        let id = crate::representations::ModuleMap::identity(m);
        for (l, c) in spaces[i][i].coordinates(&id).into_iter().enumerate() {
            one[offset[i][i] + l] = c;
        }
    }
    Ok(EndAlgebra {
        algebra: StructureConstantAlgebra::new(table, one)?,
        hom_dims: spaces.iter().map(|row| row.iter().map(HomSpace::dim).collect()).collect(),
        offsets: offset,
    })
}

#[derive(Clone, Debug)]
pub struct Radical {
    pub basis: Echelon,
    pub nilpotency_index: usize,
}

/// Radical as the kernel of the trace form `(x, y) ↦ tr(L_{xy})`, checked to
/// be a nilpotent two-sided ideal.
pub fn radical(g: &StructureConstantAlgebra) -> Result<Radical> {
    let n = g.dim();
    let traces: Vec<Scalar> = (0..n)
        .map(|k| (0..n).filter_map(|j| g.table[k][j].get(&j).cloned()).sum())
        .collect();
    let mut gram = Echelon::new(n, PivotRule::First);
    for i in 0..n {
        let row: Vec<Scalar> = (0..n)
            .map(|j| g.table[i][j].iter().map(|(k, c)| c * &traces[*k]).sum())
            .collect();
        gram.insert(row);
    }
    let rad = Echelon::from_vectors(n, gram.kernel().basis);
    for r in rad.rows() {
        for i in 0..n {
            let b = g.unit(i);
            if !rad.contains(&g.mul(r, &b)) || !rad.contains(&g.mul(&b, r)) {
                return Err(Error::InternalInvariantViolation("radical is not a two-sided ideal".into()));
            }
        }
    }
    let mut power = rad.clone();
    let mut index = 1;
    while !power.is_empty() {
        if index > n + 1 {
            return Err(Error::InternalInvariantViolation("radical is not nilpotent".into()));
        }
        let mut next = Echelon::new(n, PivotRule::First);
        for x in power.rows() {
            for r in rad.rows() {
                next.insert(g.mul(x, r));
            }
        }
        power = next;
        index += 1;
    }
    Ok(Radical {
        basis: rad,
        nilpotency_index: index,
    })
}

type Poly = Vec<Scalar>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_divmod(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let mut r = trim(a.clone());
    let b = trim(b.clone());
    let lead = b.last().expect("nonzero divisor").clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Scalar::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let f = r.last().expect("nonempty") / &lead;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &f * c;
        }
        q[shift] = f;
        r = trim(r);
    }
    (trim(q), r)
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![Scalar::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

/// `(g, u, v)` with `u a + v b = g = gcd(a, b)`.
fn poly_ext_gcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (trim(a.clone()), trim(b.clone()));
    let (mut u0, mut u1) = (vec![Scalar::one()], Vec::new());
    let (mut v0, mut v1) = (Vec::new(), vec![Scalar::one()]);
    while !r1.is_empty() {
        let (q, r) = poly_divmod(&r0, &r1);
        let u2 = poly_sub(&u0, &poly_mul(&q, &u1));
        let v2 = poly_sub(&v0, &poly_mul(&q, &v1));
        (r0, r1) = (r1, r);
        (u0, u1) = (u1, u2);
        (v0, v1) = (v1, v2);
    }
    (r0, u0, v0)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

const ROOT_SEARCH_LIMIT: u64 = 1_000_000_000_000;

/// Rational roots of `p`, in increasing order. Candidates come from the
/// rational root theorem; polynomials with very large extreme coefficients
/// are only tested at 0.
fn rational_roots(p: &Poly) -> Vec<Scalar> {
    let p = trim(p.clone());
    if p.len() <= 1 {
        return Vec::new();
    }
    let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * Scalar::from_integer(lcm.clone())).to_integer()).collect();
    let low = ints.iter().position(|c| !c.is_zero()).expect("nonzero polynomial");
    let mut roots = Vec::new();
    if low > 0 {
        roots.push(Scalar::zero());
    }
    let rest = &ints[low..];
    if rest.len() > 1 {
        let (a0, an) = (rest[0].abs().to_u64(), rest[rest.len() - 1].abs().to_u64());
        if let (Some(a0), Some(an)) = (a0, an) {
            if a0 <= ROOT_SEARCH_LIMIT && an <= ROOT_SEARCH_LIMIT {
                let eval = |x: &Scalar| {
                    rest.iter()
                        .rev()
                        .fold(Scalar::zero(), |acc, c| acc * x + Scalar::from_integer(c.clone()))
                };
                for num in divisors(a0) {
                    for den in divisors(an) {
                        for sign in [1i64, -1] {
                            let x = Scalar::new(BigInt::from(num) * sign, BigInt::from(den));
                            if eval(&x).is_zero() && !roots.contains(&x) {
                                roots.push(x);
                            }
                        }
                    }
                }
            }
        }
    }
    roots.sort();
    roots
}

fn eval_poly(g: &StructureConstantAlgebra, p: &Poly, z: &[Scalar], e: &[Scalar]) -> Vec<Scalar> {
    let mut acc = vec![Scalar::zero(); g.dim()];
    for c in p.iter().rev() {
        acc = g.mul(&acc, z);
        for (a, x) in acc.iter_mut().zip(e) {
            *a += c * x;
        }
    }
    acc
}

/// Minimal polynomial of `z` in the corner algebra with identity `e`.
fn minimal_polynomial(g: &StructureConstantAlgebra, z: &[Scalar], e: &[Scalar]) -> Poly {
    let mut powers = vec![e.to_vec()];
    let mut span = Echelon::from_vectors(g.dim(), [e.to_vec()]);
    loop {
        let next = g.mul(powers.last().expect("nonempty"), z);
        if span.contains(&next) {
            powers.push(next);
            let k = powers.len() - 1;
            let m = Matrix::from_rows(powers, g.dim()).transpose();
            let dep = m
                .kernel()
                .basis
                .into_iter()
                .find(|v| !v[k].is_zero())
                .expect("powers are dependent");
            let lead = dep[k].clone();
            return dep.into_iter().map(|c| c / &lead).collect();
        }
        span.insert(next.clone());
        powers.push(next);
    }
}

enum Trial {
    Split(Vec<Scalar>),
    Nilpotent(Vec<Scalar>),
    NoRationalRoot,
    Scalar,
}

fn try_split(g: &StructureConstantAlgebra, z: &[Scalar], e: &[Scalar]) -> Trial {
    let mu = minimal_polynomial(g, z, e);
    if mu.len() <= 2 {
        return Trial::Scalar;
    }
    let Some(r) = rational_roots(&mu).into_iter().next() else {
        return Trial::NoRationalRoot;
    };
    let linear = vec![-r.clone(), Scalar::one()];
    let (mut rest, mut power) = (mu.clone(), vec![Scalar::one()]);
    loop {
        let (q, rem) = poly_divmod(&rest, &linear);
        if !rem.is_empty() {
            break;
        }
        rest = q;
        power = poly_mul(&power, &linear);
    }
    if rest.len() <= 1 {
        let n: Vec<Scalar> = z.iter().zip(e).map(|(x, y)| x - &r * y).collect();
        let k = power.len() - 1;
        let top = eval_poly(g, &(0..k).map(|i| if i == k - 1 { Scalar::one() } else { Scalar::zero() }).collect(), &n, e);
        return Trial::Nilpotent(top);
    }
    let (gcd, _, v) = poly_ext_gcd(&power, &rest);
    let scale = gcd[0].clone();
    let proj: Poly = poly_mul(&v, &rest).into_iter().map(|c| c / &scale).collect();
    Trial::Split(eval_poly(g, &proj, z, e))
}

/// Splits `e` into primitive orthogonal idempotents of a semisimple algebra
/// whose endomorphism rings are the ground field.
fn split_idempotent(s: &StructureConstantAlgebra, e: Vec<Scalar>, out: &mut Vec<Vec<Scalar>>) -> Result<()> {
    let n = s.dim();
    let corner = Echelon::from_vectors(n, (0..n).map(|i| s.mul(&s.mul(&e, &s.unit(i)), &e)));
    if corner.len() <= 1 {
        out.push(e);
        return Ok(());
    }
    let rows: Vec<Vec<Scalar>> = corner.rows().to_vec();
    let mut nilpotents = Vec::new();
    let mut rootless = false;
    let attempt = |z: &[Scalar], nilpotents: &mut Vec<Vec<Scalar>>, rootless: &mut bool| -> Option<Vec<Scalar>> {
        match try_split(s, z, &e) {
            Trial::Split(f) => Some(f),
            Trial::Nilpotent(m) => {
                nilpotents.push(m);
                None
            }
            Trial::NoRationalRoot => {
                *rootless = true;
                None
            }
            Trial::Scalar => None,
        }
    };
    let mut found = None;
    for z in &rows {
        found = attempt(z, &mut nilpotents, &mut rootless);
        if found.is_some() {
            break;
        }
    }
    if found.is_none() {
        let nils = nilpotents.clone();
        'outer: for m in &nils {
            for y in &rows {
                for z in [s.mul(m, y), s.mul(y, m)] {
                    if is_zero_vec(&z) {
                        continue;
                    }
                    found = attempt(&z, &mut nilpotents, &mut rootless);
                    if found.is_some() {
                        break 'outer;
                    }
                }
            }
        }
    }
    if found.is_none() {
        for t in 1..=48i64 {
            let mut z = vec![Scalar::zero(); n];
            for (i, r) in rows.iter().enumerate() {
                let c = int(((i as i64 + 1) * (t + 2) * 37 + t * t) % 11 - 5);
                for (a, x) in z.iter_mut().zip(r) {
                    *a += &c * x;
                }
            }
            found = attempt(&z, &mut nilpotents, &mut rootless);
            if found.is_some() {
                break;
            }
        }
    }
    match found {
        Some(f) => {
            let rest: Vec<Scalar> = e.iter().zip(&f).map(|(x, y)| x - y).collect();
            split_idempotent(s, f, out)?;
            split_idempotent(s, rest, out)
        }
        None => {
            let commutative = rows.iter().all(|x| rows.iter().all(|y| s.mul(x, y) == s.mul(y, x)));
            if commutative && rootless {
                Err(Error::NonSplitQuotient(format!(
                    "a commutative corner of dimension {} contains an element without rational eigenvalues",
                    rows.len()
                )))
            } else {
                Err(Error::LiftingExhausted(format!(
                    "could not split a corner of dimension {}",
                    rows.len()
                )))
            }
        }
    }
}

/// Complete set of orthogonal primitive idempotents of `g`, grouped by
/// isomorphism class of the corresponding indecomposable projectives.
#[derive(Clone, Debug)]
pub struct Idempotents {
    pub elements: Vec<Vec<Scalar>>,
    /// `class[i]` is the class of `elements[i]`; classes are numbered by first
    /// appearance.
    pub class: Vec<usize>,
}

impl Idempotents {
    pub fn class_count(&self) -> usize {
        self.class.iter().max().map_or(0, |m| m + 1)
    }

    /// Index of the first idempotent in each class.
    pub fn representatives(&self) -> Vec<usize> {
        (0..self.class_count())
            .map(|c| self.class.iter().position(|&x| x == c).expect("class is nonempty"))
            .collect()
    }
}

pub fn primitive_idempotents(g: &StructureConstantAlgebra, rad: &Radical) -> Result<Idempotents> {
    let n = g.dim();
    let free: Vec<usize> = (0..n).filter(|&c| !rad.basis.is_pivot(c)).collect();
    let m = free.len();
    let project = |x: &[Scalar]| -> Vec<Scalar> {
        let r = rad.basis.reduce(x.to_vec());
        free.iter().map(|&c| r[c].clone()).collect()
    };
    let lift = |y: &[Scalar]| -> Vec<Scalar> {
        let mut x = vec![Scalar::zero(); n];
        for (&c, v) in free.iter().zip(y) {
            x[c] = v.clone();
        }
        x
    };
    let mut table = vec![vec![SparseVec::new(); m]; m];
    for (a, &ca) in free.iter().enumerate() {
        for (b, &cb) in free.iter().enumerate() {
            table[a][b] = crate::linalg::dense_to_sparse(&project(&g.mul(&g.unit(ca), &g.unit(cb))));
        }
    }
    let s = StructureConstantAlgebra::new(table, project(g.one()))?;

    let mut prims = Vec::new();
    if m > 0 {
        split_idempotent(&s, s.one().to_vec(), &mut prims)?;
    }
    let mut class: Vec<usize> = Vec::with_capacity(prims.len());
    let mut reps: Vec<usize> = Vec::new();
    for (i, e) in prims.iter().enumerate() {
        let linked = reps.iter().position(|&r| {
            (0..m).any(|b| !is_zero_vec(&s.mul(&s.mul(&prims[r], &s.unit(b)), e)))
        });
        match linked {
            Some(c) => class.push(c),
            None => {
                class.push(reps.len());
                reps.push(i);
            }
        }
    }
    let squares: usize = (0..reps.len())
        .map(|c| class.iter().filter(|&&x| x == c).count().pow(2))
        .sum();
    if squares != m {
        return Err(Error::NonSplitQuotient(format!(
            "block sizes give {squares}, semisimple quotient has dimension {m}"
        )));
    }

    // Lift one at a time inside the complement of those already lifted.
    let mut lifted: Vec<Vec<Scalar>> = Vec::with_capacity(prims.len());
    let mut complement = g.one().to_vec();
    for (i, e) in prims.iter().enumerate() {
        if i + 1 == prims.len() {
            lifted.push(complement.clone());
            break;
        }
        let mut x = g.mul(&g.mul(&complement, &lift(e)), &complement);
        let mut rounds = 0;
        loop {
            let x2 = g.mul(&x, &x);
            if x2 == x {
                break;
            }
            rounds += 1;
            if rounds > 64 {
                return Err(Error::InternalInvariantViolation("idempotent lifting did not converge".into()));
            }
            let x3 = g.mul(&x2, &x);
            x = x2.iter().zip(&x3).map(|(a, b)| int(3) * a - int(2) * b).collect();
        }
        complement = complement.iter().zip(&x).map(|(a, b)| a - b).collect();
        lifted.push(x);
    }
    for (i, a) in lifted.iter().enumerate() {
        for (j, b) in lifted.iter().enumerate() {
            let prod = g.mul(a, b);
            let ok = if i == j { &prod == a } else { is_zero_vec(&prod) };
            if !ok {
                return Err(Error::InternalInvariantViolation("lifted idempotents are not orthogonal".into()));
            }
        }
    }
    Ok(Idempotents { elements: lifted, class })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ProjectiveDimension {
    Finite(usize),
    ExceedsBound,
}

impl std::fmt::Display for ProjectiveDimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProjectiveDimension::Finite(n) => write!(f, "{n}"),
            ProjectiveDimension::ExceedsBound => write!(f, "exceeds bound"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GldimReport {
    pub dimension: usize,
    pub radical_dimension: usize,
    pub radical_nilpotency_index: usize,
    pub simples: usize,
    pub projective_dimensions: Vec<ProjectiveDimension>,
    pub global_dimension: ProjectiveDimension,
    pub bound: usize,
}

/// Default resolution length after which a resolution is abandoned.
pub const DEFAULT_BOUND: usize = 5;

/// A basis of `e Γ` for a class idempotent `e`. Each basis row has a pivot
/// column where it is 1 and every other row is 0, so local coordinates of an
/// element of `e Γ` are its entries at the pivots.
struct Projective {
    rows: Vec<SparseVec>,
    local: HashMap<usize, usize>,
    /// `e rad` in local coordinates.
    radical: SparseEchelon,
}

impl Projective {
    fn new(rows: Vec<SparseVec>, pivots: Vec<usize>) -> Self {
        let d = rows.len();
        Projective {
            rows,
            local: pivots.into_iter().enumerate().map(|(l, p)| (p, l)).collect(),
            radical: SparseEchelon::new(d),
        }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    fn coords(&self, y: &SparseVec) -> SparseVec {
        y.iter()
            .filter_map(|(k, v)| self.local.get(k).map(|&l| (l, v.clone())))
            .collect()
    }

    fn to_global(&self, x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&l, c) in x {
            sparse_axpy(&mut out, c, &self.rows[l]);
        }
        out
    }
}

/// What the resolution needs to know about an algebra: one primitive
/// idempotent per isomorphism class, the projectives they cut out, and
/// elements generating the radical modulo its square.
struct Setup {
    idempotents: Vec<SparseVec>,
    projectives: Vec<Projective>,
    arrows: Vec<SparseVec>,
    radical_dimension: usize,
    nilpotency_index: usize,
}

/// Elements of `rad` completing a basis of `rad²` to one of `rad`.
fn radical_generators(rad: &[SparseVec], square: &SparseEchelon) -> Vec<SparseVec> {
    let mut span = square.clone();
    rad.iter().filter(|r| span.insert((*r).clone())).cloned().collect()
}

fn generic_setup(g: &StructureConstantAlgebra) -> Result<Setup> {
    let n = g.dim();
    let rad = radical(g)?;
    let idem = primitive_idempotents(g, &rad)?;
    let rad_rows: Vec<SparseVec> = rad.basis.rows().iter().map(|r| dense_to_sparse(r)).collect();
    let mut square = SparseEchelon::new(n);
    for x in &rad_rows {
        for y in &rad_rows {
            square.insert(g.mul_sparse(x, y));
        }
    }
    let idempotents: Vec<SparseVec> = idem
        .representatives()
        .iter()
        .map(|&i| dense_to_sparse(&idem.elements[i]))
        .collect();
    let projectives = idempotents
        .iter()
        .map(|e| {
            let ech = Echelon::from_vectors(n, (0..n).map(|j| sparse_to_dense(&g.mul_sparse(e, &g.basis_sparse(j)), n)));
            let mut p = Projective::new(ech.rows().iter().map(|r| dense_to_sparse(r)).collect(), ech.pivots().to_vec());
            for r in &rad_rows {
                let local = p.coords(&g.mul_sparse(e, r));
                p.radical.insert(local);
            }
            p
        })
        .collect();
    Ok(Setup {
        idempotents,
        projectives,
        arrows: radical_generators(&rad_rows, &square),
        radical_dimension: rad_rows.len(),
        nilpotency_index: rad.nilpotency_index,
    })
}

/// Uses the summand identities as idempotents. The radical is assembled from
/// the radicals of the endomorphism rings of the summands and all maps
/// between distinct summands, and certified to be a nilpotent ideal with
/// quotient `K^t`.
fn end_setup(end: &EndAlgebra) -> Result<Setup> {
    let g = &end.algebra;
    let t = end.hom_dims.len();
    let block = |i: usize, j: usize| end.offsets[i][j]..end.offsets[i][j] + end.hom_dims[i][j];
    let one = dense_to_sparse(g.one());
    let idempotents: Vec<SparseVec> = (0..t)
        .map(|i| one.iter().filter(|(k, _)| block(i, i).contains(k)).map(|(k, v)| (*k, v.clone())).collect())
        .collect();

    // J_ij for every pair of summands, as sparse vectors.
    let mut parts: Vec<Vec<Vec<SparseVec>>> = vec![vec![Vec::new(); t]; t];
    let mut local_radicals: Vec<Echelon> = Vec::with_capacity(t);
    for i in 0..t {
        let r = block(i, i);
        let base = r.start;
        let local: Vec<Vec<SparseVec>> = r
            .clone()
            .map(|x| {
                r.clone()
                    .map(|y| g.table[x][y].iter().map(|(k, v)| (k - base, v.clone())).collect())
                    .collect()
            })
            .collect();
        let unit: Vec<Scalar> = r.clone().map(|k| g.one()[k].clone()).collect();
        let sub = StructureConstantAlgebra::new(local, unit)?;
        let rad = radical(&sub)?;
        if rad.basis.len() + 1 != sub.dim() {
            return Err(Error::NonSplitQuotient(format!(
                "summand {i} has an endomorphism ring of dimension {} with radical of dimension {}",
                sub.dim(),
                rad.basis.len()
            )));
        }
        parts[i][i] = rad
            .basis
            .rows()
            .iter()
            .map(|row| dense_to_sparse(row).into_iter().map(|(k, v)| (k + base, v)).collect())
            .collect();
        local_radicals.push(rad.basis);
    }
    for i in 0..t {
        for j in 0..t {
            if i != j {
                parts[i][j] = block(i, j).map(|k| SparseVec::from([(k, Scalar::one())])).collect();
            }
        }
    }
    let in_local_radical = |i: usize, y: &SparseVec| {
        let dense: Vec<Scalar> = block(i, i).map(|k| y.get(&k).cloned().unwrap_or_else(Scalar::zero)).collect();
        local_radicals[i].contains(&dense)
    };
    // Maps through a different summand never compose to an automorphism.
    for i in 0..t {
        for j in (0..t).filter(|&j| j != i) {
            for x in &parts[i][j] {
                for y in &parts[j][i] {
                    if !in_local_radical(i, &g.mul_sparse(x, y)) {
                        return Err(Error::InternalInvariantViolation(format!(
                            "generator summands {i} and {j} are isomorphic"
                        )));
                    }
                }
            }
        }
    }

    // Powers of J, kept block by block: J^{m+1}_{ik} = Σ_j J^m_{ij} J_{jk}.
    let mut square: Vec<Vec<SparseEchelon>> = (0..t).map(|_| (0..t).map(|_| SparseEchelon::new(g.dim())).collect()).collect();
    for i in 0..t {
        for j in 0..t {
            for x in &parts[i][j] {
                for k in 0..t {
                    for y in &parts[j][k] {
                        let z = g.mul_sparse(x, y);
                        if !z.is_empty() {
                            square[i][k].insert(z);
                        }
                    }
                }
            }
        }
    }
    let arrows: Vec<Vec<Vec<SparseVec>>> = (0..t)
        .map(|i| (0..t).map(|j| radical_generators(&parts[i][j], &square[i][j])).collect())
        .collect();
    let mut power: Vec<Vec<Vec<SparseVec>>> = parts.clone();
    let mut index = 1;
    while power.iter().flatten().any(|b| !b.is_empty()) {
        if index > g.dim() + 1 {
            return Err(Error::InternalInvariantViolation("radical is not nilpotent".into()));
        }
        let mut next: Vec<Vec<SparseEchelon>> = (0..t).map(|_| (0..t).map(|_| SparseEchelon::new(g.dim())).collect()).collect();
        for i in 0..t {
            for j in 0..t {
                for x in &power[i][j] {
                    for k in 0..t {
                        for a in &arrows[j][k] {
                            let z = g.mul_sparse(x, a);
                            if !z.is_empty() {
                                next[i][k].insert(z);
                            }
                        }
                    }
                }
            }
        }
        power = next
            .into_iter()
            .map(|row| row.into_iter().map(|e| e.rows().map(|(_, r)| r.clone()).collect()).collect())
            .collect();
        index += 1;
    }

    let projectives = (0..t)
        .map(|i| {
            let cols: Vec<usize> = (0..t).flat_map(|j| block(i, j)).collect();
            let mut p = Projective::new(
                cols.iter().map(|&k| SparseVec::from([(k, Scalar::one())])).collect(),
                cols.clone(),
            );
            for j in 0..t {
                for r in &parts[i][j] {
                    let local = p.coords(r);
                    p.radical.insert(local);
                }
            }
            p
        })
        .collect();
    Ok(Setup {
        idempotents,
        projectives,
        arrows: arrows.into_iter().flatten().flatten().collect(),
        radical_dimension: parts.iter().flatten().map(Vec::len).sum(),
        nilpotency_index: index,
    })
}

/// Submodules of `⊕ e_{c_i} Γ`, stored in the local coordinates of the
/// summands laid out one after another.
#[derive(Clone, Debug)]
struct Layout {
    classes: Vec<usize>,
    offsets: Vec<usize>,
    dim: usize,
}

impl Layout {
    fn new(classes: Vec<usize>, setup: &Setup) -> Self {
        let mut offsets = Vec::with_capacity(classes.len());
        let mut dim = 0;
        for &c in &classes {
            offsets.push(dim);
            dim += setup.projectives[c].dim();
        }
        Layout { classes, offsets, dim }
    }

    fn slot(&self, k: usize) -> usize {
        self.offsets.partition_point(|&o| o <= k) - 1
    }

    fn split(&self, x: &SparseVec) -> Vec<SparseVec> {
        let mut out = vec![SparseVec::new(); self.classes.len()];
        for (&k, v) in x {
            let s = self.slot(k);
            out[s].insert(k - self.offsets[s], v.clone());
        }
        out
    }
}

struct Resolver<'a> {
    g: &'a StructureConstantAlgebra,
    setup: Setup,
    /// `actions[c][h][l]`: local coordinates of `row_l · h` in `e_c Γ`, for
    /// `h` running over the radical generators and then the idempotents.
    actions: Vec<Vec<Vec<SparseVec>>>,
}

impl<'a> Resolver<'a> {
    fn new(g: &'a StructureConstantAlgebra, setup: Setup) -> Self {
        let elements: Vec<&SparseVec> = setup.arrows.iter().chain(&setup.idempotents).collect();
        let actions = setup
            .projectives
            .iter()
            .map(|p| {
                elements
                    .iter()
                    .map(|h| p.rows.iter().map(|row| p.coords(&g.mul_sparse(row, h))).collect())
                    .collect()
            })
            .collect();
        Resolver { g, setup, actions }
    }

    fn act(&self, x: &SparseVec, layout: &Layout, h: usize) -> SparseVec {
        let mut out = SparseVec::new();
        for (&k, v) in x {
            let s = layout.slot(k);
            let (c, off) = (layout.classes[s], layout.offsets[s]);
            let image = &self.actions[c][h][k - off];
            for (l, w) in image {
                let e = out.entry(off + l).or_insert_with(Scalar::zero);
                *e += v * w;
                if e.is_zero() {
                    out.remove(&(off + l));
                }
            }
        }
        out
    }

    /// Kernel of a projective cover of the submodule spanned by `rows`.
    fn syzygy(&self, rows: &[SparseVec], layout: &Layout) -> Result<(Vec<SparseVec>, Layout)> {
        let arrows = self.setup.arrows.len();
        let mut rad_part = SparseEchelon::new(layout.dim);
        for x in rows {
            for h in 0..arrows {
                rad_part.insert(self.act(x, layout, h));
            }
        }
        let mut generators: Vec<(usize, SparseVec)> = Vec::new();
        for c in 0..self.setup.idempotents.len() {
            let mut seen = SparseEchelon::new(layout.dim);
            for (_, y) in rad_part.rows() {
                seen.insert(self.act(y, layout, arrows + c));
            }
            for x in rows {
                let y = self.act(x, layout, arrows + c);
                if !y.is_empty() && seen.insert(y.clone()) {
                    generators.push((c, y));
                }
            }
        }

        let cover = Layout::new(generators.iter().map(|(c, _)| *c).collect(), &self.setup);
        let mut system = SparseEchelon::new(layout.dim + cover.dim);
        for (j, (c, gen)) in generators.iter().enumerate() {
            let pieces: Vec<SparseVec> = layout
                .split(gen)
                .iter()
                .enumerate()
                .map(|(s, piece)| self.setup.projectives[layout.classes[s]].to_global(piece))
                .collect();
            for (l, u) in self.setup.projectives[*c].rows.iter().enumerate() {
                let mut row = SparseVec::new();
                for (s, piece) in pieces.iter().enumerate() {
                    if piece.is_empty() {
                        continue;
                    }
                    let local = self.setup.projectives[layout.classes[s]].coords(&self.g.mul_sparse(piece, u));
                    for (k, v) in local {
                        row.insert(layout.offsets[s] + k, v);
                    }
                }
                row.insert(layout.dim + cover.offsets[j] + l, Scalar::one());
                system.insert(row);
            }
        }
        let image_rank = system.rows().filter(|(p, _)| *p < layout.dim).count();
        if image_rank != rows.len() {
            return Err(Error::InternalInvariantViolation("projective cover is not surjective".into()));
        }
        let kernel: Vec<SparseVec> = system
            .rows()
            .filter(|(p, _)| *p >= layout.dim)
            .map(|(_, r)| r.iter().map(|(k, v)| (k - layout.dim, v.clone())).collect())
            .collect();
        for x in &kernel {
            for (s, piece) in cover.split(x).into_iter().enumerate() {
                if !self.setup.projectives[cover.classes[s]].radical.reduce(piece).is_empty() {
                    return Err(Error::InternalInvariantViolation("projective cover is not minimal".into()));
                }
            }
        }
        Ok((kernel, cover))
    }

    fn projective_dimension_of_simple(&self, c: usize, bound: usize) -> Result<ProjectiveDimension> {
        let mut layout = Layout::new(vec![c], &self.setup);
        let mut rows: Vec<SparseVec> = self.setup.projectives[c].radical.rows().map(|(_, r)| r.clone()).collect();
        let mut k = 0;
        while !rows.is_empty() {
            k += 1;
            if k > bound {
                return Ok(ProjectiveDimension::ExceedsBound);
            }
            (rows, layout) = self.syzygy(&rows, &layout)?;
        }
        Ok(ProjectiveDimension::Finite(k))
    }
}

fn resolve_simples(g: &StructureConstantAlgebra, setup: Setup, bound: usize) -> Result<GldimReport> {
    let (radical_dimension, nilpotency_index, simples) =
        (setup.radical_dimension, setup.nilpotency_index, setup.idempotents.len());
    let resolver = Resolver::new(g, setup);
    let pds = (0..simples)
        .map(|c| resolver.projective_dimension_of_simple(c, bound))
        .collect::<Result<Vec<_>>>()?;
    let global = pds.iter().copied().max().unwrap_or(ProjectiveDimension::Finite(0));
    Ok(GldimReport {
        dimension: g.dim(),
        radical_dimension,
        radical_nilpotency_index: nilpotency_index,
        simples,
        projective_dimensions: pds,
        global_dimension: global,
        bound,
    })
}

/// Global dimension as the maximum projective dimension of a simple right
/// module, each computed by a minimal projective resolution.
pub fn global_dimension(g: &StructureConstantAlgebra, bound: usize) -> Result<GldimReport> {
    resolve_simples(g, generic_setup(g)?, bound)
}

/// Same as [`global_dimension`] for `End(M)^op` with `M` a sum of pairwise
/// non-isomorphic indecomposables, using the summand decomposition.
pub fn global_dimension_of_end(end: &EndAlgebra, bound: usize) -> Result<GldimReport> {
    resolve_simples(&end.algebra, end_setup(end)?, bound)
}

#[derive(Clone, Debug)]
pub struct RepdimReport {
    /// The presentation actually verified (after socle quotients, if any).
    pub presentation: Presentation,
    pub socle_steps: usize,
    pub generator: AuslanderGenerator,
    pub end_dimension: usize,
    pub gldim: GldimReport,
}

/// Repeatedly factors out the socle until the presentation is monomial.
pub fn reduce_by_socles(p: &Presentation) -> Result<(Presentation, usize)> {
    let mut current = p.clone();
    let mut steps = 0;
    while !current.is_monomial() {
        if steps > p.dimension()? {
            return Err(Error::PreconditionFailed("socle quotients never became monomial".into()));
        }
        current = current.socle_quotient()?;
        steps += 1;
    }
    Ok((current, steps))
}

/// Builds the generator-cogenerator from the splitting pipeline and checks
/// that its endomorphism algebra has global dimension at most 3.
pub fn verify_repdim_le_3(p: &Presentation, bound: usize, via_socle: bool) -> Result<RepdimReport> {
    let (target, socle_steps) = if via_socle { reduce_by_socles(p)? } else { (p.clone(), 0) };
    let generator = auslander_generator(&target)?;
    let modules: Vec<Representation> = generator.summands.iter().map(|s| s.module.clone()).collect();
    let gamma = end_algebra(&target, &modules)?;
    let gldim = global_dimension_of_end(&gamma, bound)?;
    match gldim.global_dimension {
        ProjectiveDimension::Finite(d) if d <= 3 => Ok(RepdimReport {
            presentation: target,
            socle_steps,
            generator,
            end_dimension: gamma.algebra.dim(),
            gldim,
        }),
        other => Err(Error::AssertionFailed(format!(
            "global dimension of the endomorphism algebra is {other} (bound {bound})"
        ))),
    }
}
