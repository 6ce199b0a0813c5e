#![allow(dead_code)]

use std::collections::BTreeSet;

use multiserial::linalg::{int, Matrix, Scalar};
use multiserial::presentation::DEFAULT_MAX_LEN;
use multiserial::representations::Representation;
use multiserial::{Path, Presentation, Quiver, VertexId};

/// Nonzero paths of a monomial algebra, by depth-first search over arrow
/// names, discarding any path that contains a relation as a contiguous
/// block. Trivial paths are written `e_v`.
pub fn subpath_avoidance(p: &Presentation) -> BTreeSet<String> {
    let q = p.quiver();
    let forbidden: Vec<Vec<String>> = p
        .relations()
        .iter()
        .map(|r| {
            let (_, path) = &r.terms()[0];
            path.arrows().iter().map(|&a| q.arrow_name(a).to_string()).collect()
        })
        .collect();
    let arrows: Vec<(String, String, String)> = q
        .arrows()
        .map(|a| {
            (
                q.arrow_name(a).to_string(),
                q.vertex_name(q.source(a)).to_string(),
                q.vertex_name(q.target(a)).to_string(),
            )
        })
        .collect();
    let contains = |word: &[String], pattern: &[String]| word.windows(pattern.len()).any(|w| w == pattern);

    let mut out = BTreeSet::new();
    let mut stack: Vec<(Vec<String>, String)> = Vec::new();
    for v in q.vertices() {
        out.insert(format!("e_{}", q.vertex_name(v)));
    }
    for (name, _, t) in &arrows {
        stack.push((vec![name.clone()], t.clone()));
    }
    while let Some((word, end)) = stack.pop() {
        if forbidden.iter().any(|f| contains(&word, f)) {
            continue;
        }
        assert!(word.len() <= DEFAULT_MAX_LEN, "oracle found an infinite family of paths");
        out.insert(word.join("."));
        for (name, s, t) in &arrows {
            if *s == end {
                let mut next = word.clone();
                next.push(name.clone());
                stack.push((next, t.clone()));
            }
        }
    }
    out
}

/// Basis of `p` as computed by the library, in the oracle's naming.
pub fn computed(p: &Presentation) -> BTreeSet<String> {
    let q = p.quiver();
    let report = p.compute_basis(DEFAULT_MAX_LEN).unwrap();
    report.paths_by_length.iter().flatten().map(|path| q.path_name(path)).collect()
}

pub fn relations_of(p: &Presentation) -> Vec<Vec<(Scalar, Path)>> {
    p.relations().iter().map(|r| r.terms().to_vec()).collect()
}

/// Adds `p - λq` for two distinct parallel basis paths of length at least two.
pub fn with_binomial(p: &Presentation, pick: usize, lambda: i64) -> Option<Presentation> {
    let b = p.basis().ok()?;
    let long: Vec<&Path> = b.paths().iter().filter(|x| x.len() >= 2).collect();
    let mut pairs = Vec::new();
    for (i, x) in long.iter().enumerate() {
        for y in &long[i + 1..] {
            if x.source() == y.source() && x.target() == y.target() {
                pairs.push(((*x).clone(), (*y).clone()));
            }
        }
    }
    if pairs.is_empty() {
        return None;
    }
    let (x, y) = pairs[pick % pairs.len()].clone();
    let mut rels = relations_of(p);
    rels.push(vec![(int(1), x), (int(-lambda), y)]);
    Presentation::new("binomial", p.quiver().clone(), rels).ok()
}

/// Adds an arrow `zz` parallel to `b = σ(a)` that only survives after `a`.
pub fn with_violation(p: &Presentation) -> Option<(Presentation, String)> {
    let q = p.quiver();
    let b = p.basis().ok()?;
    let (a, succ) = b
        .paths()
        .iter()
        .find(|x| x.len() == 2)
        .map(|x| (x.arrows()[0], x.arrows()[1]))?;
    let mut q2: Quiver = q.clone();
    let zz = q2.add_arrow("zz", q.source(succ), q.target(succ)).ok()?;
    let mut rels: Vec<Vec<(Scalar, Path)>> = Vec::new();
    for r in p.relations() {
        let (c, path) = &r.terms()[0];
        rels.push(vec![(c.clone(), q2.path(path.arrows()).ok()?)]);
    }
    for x in q2.arrows_from(q2.target(zz)).ok()? {
        rels.push(vec![(int(1), q2.path(&[zz, x]).ok()?)]);
    }
    for y in q2.arrows_into(q2.source(zz)).ok()? {
        if y != a && y != zz {
            rels.push(vec![(int(1), q2.path(&[y, zz]).ok()?)]);
        }
    }
    let name = q.arrow_name(a).to_string();
    Some((Presentation::new("injected", q2, rels).ok()?, name))
}

/// `dim Hom(M, N)` from the full system `M_a f_t = f_s N_a` over all entries
/// of all vertex maps.
pub fn hom_dim_dense(p: &Presentation, m: &Representation, n: &Representation) -> usize {
    let q = p.quiver();
    let mut offset = Vec::new();
    let mut unknowns = 0;
    for v in q.vertices() {
        offset.push(unknowns);
        unknowns += m.dim_at(v) * n.dim_at(v);
    }
    let var = |v: usize, i: usize, j: usize| offset[v] + i * n.dim_at(VertexId(v)) + j;
    let mut rows = Vec::new();
    for a in q.arrows() {
        let (s, t) = (q.source(a), q.target(a));
        let (ma, na) = (m.map(a), n.map(a));
        for i in 0..m.dim_at(s) {
            for k in 0..n.dim_at(t) {
                let mut row = vec![int(0); unknowns];
                for j in 0..m.dim_at(t) {
                    row[var(t.0, j, k)] += ma.get(i, j);
                }
                for j in 0..n.dim_at(s) {
                    row[var(s.0, i, j)] -= na.get(j, k);
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return unknowns;
    }
    unknowns - Matrix::from_rows(rows, unknowns).rank()
}
