mod common;

use common::hom_dim_dense;
use multiserial::dsl::parse;
use multiserial::endalgebra::{end_algebra, global_dimension, verify_repdim_le_3, ProjectiveDimension, DEFAULT_BOUND};
use multiserial::fuzz::{fuzz_generator, FuzzLimits};
use multiserial::pipeline::auslander_generator;
use multiserial::representations::{
    hom, injective_module, is_isomorphic, projective_module, simple_module, uniserial_module,
};
use multiserial::Presentation;

fn small(seed: u64) -> Presentation {
    fuzz_generator(seed, FuzzLimits { max_vertices: 4, max_arrows: 6 }).unwrap()
}

#[test]
fn yoneda_dimensions() {
    for seed in 1..=40 {
        let p = small(seed);
        let q = p.quiver();
        let basis = p.basis().unwrap();
        let mut modules = Vec::new();
        for v in q.vertices() {
            modules.push(projective_module(&p, v).unwrap());
            modules.push(injective_module(&p, v).unwrap());
            modules.push(simple_module(&p, v).unwrap());
        }
        for path in basis.paths().iter().filter(|x| !x.is_trivial()) {
            modules.push(uniserial_module(&p, path).unwrap());
        }
        for m in &modules {
            for v in q.vertices() {
                let pv = projective_module(&p, v).unwrap();
                let iv = injective_module(&p, v).unwrap();
                assert_eq!(hom(&p, &pv, m).dim(), m.dim_at(v), "seed {seed}");
                assert_eq!(hom(&p, m, &iv).dim(), m.dim_at(v), "seed {seed}");
            }
        }
    }
}

#[test]
fn hom_matches_dense_system() {
    for seed in 1..=25 {
        let p = small(seed);
        let q = p.quiver();
        let mut modules = Vec::new();
        for v in q.vertices() {
            modules.push(projective_module(&p, v).unwrap());
            modules.push(injective_module(&p, v).unwrap());
        }
        for path in p.basis().unwrap().paths().iter().filter(|x| x.len() == 1) {
            modules.push(uniserial_module(&p, path).unwrap());
        }
        for m in &modules {
            for n in &modules {
                assert_eq!(hom(&p, m, n).dim(), hom_dim_dense(&p, m, n), "seed {seed}");
            }
        }
    }
}

#[test]
fn hom_coordinates_recover_basis() {
    let p = small(3);
    let q = p.quiver();
    let ms: Vec<_> = q.vertices().map(|v| injective_module(&p, v).unwrap()).collect();
    for m in &ms {
        for n in &ms {
            let h = hom(&p, m, n);
            for (i, f) in h.basis.iter().enumerate() {
                let c = h.coordinates(f);
                for (j, x) in c.iter().enumerate() {
                    assert_eq!(*x, multiserial::linalg::int(i64::from(i == j)));
                }
            }
        }
    }
}

#[test]
fn isomorphism_is_detected() {
    let p = parse("algebra a2\nvertices 1 2\narrow a : 1 -> 2\n").unwrap();
    let v1 = p.quiver().vertex("1").unwrap();
    let v2 = p.quiver().vertex("2").unwrap();
    let p1 = projective_module(&p, v1).unwrap();
    let i2 = injective_module(&p, v2).unwrap();
    assert!(is_isomorphic(&p, &p1, &i2).unwrap());
    assert!(!is_isomorphic(&p, &p1, &simple_module(&p, v1).unwrap()).unwrap());
}

#[test]
fn end_algebras_are_associative() {
    for seed in 1..=60 {
        let p = small(seed);
        let g = auslander_generator(&p).unwrap();
        let modules: Vec<_> = g.summands.iter().map(|s| s.module.clone()).collect();
        let end = end_algebra(&p, &modules).unwrap();
        if end.algebra.dim() <= 64 {
            assert_eq!(end.algebra.associativity_failure(64), None, "seed {seed}");
        }
        let total: usize = end.hom_dims.iter().flatten().sum();
        assert_eq!(total, end.algebra.dim());
    }
}

#[test]
fn auslander_algebra_of_a2() {
    let p = parse("algebra a2\nvertices 1 2\narrow a : 1 -> 2\n").unwrap();
    let r = verify_repdim_le_3(&p, DEFAULT_BOUND, false).unwrap();
    assert_eq!(r.generator.summands.len(), 3);
    assert_eq!(r.end_dimension, 5);
    assert_eq!(r.gldim.global_dimension, ProjectiveDimension::Finite(2));
    let generic = global_dimension(&end_algebra(&p, &r.generator.summands.iter().map(|s| s.module.clone()).collect::<Vec<_>>()).unwrap().algebra, DEFAULT_BOUND).unwrap();
    assert_eq!(generic.global_dimension, ProjectiveDimension::Finite(2));
}

fn gldim_of(text: &str) -> usize {
    let p = parse(text).unwrap();
    match verify_repdim_le_3(&p, DEFAULT_BOUND, false).unwrap().gldim.global_dimension {
        ProjectiveDimension::Finite(d) => d,
        ProjectiveDimension::ExceedsBound => unreachable!(),
    }
}

fn linear(n: usize, rad_square_zero: bool) -> String {
    let mut s = format!("algebra lin{n}\nvertices");
    for i in 1..=n {
        s += &format!(" {i}");
    }
    s += "\n";
    for i in 1..n {
        s += &format!("arrow x{i} : {i} -> {}\n", i + 1);
    }
    if rad_square_zero && n > 2 {
        s += "relations\n";
        for i in 1..n - 1 {
            s += &format!("  x{i}.x{}\n", i + 1);
        }
        s += "end\n";
    }
    s
}

#[test]
fn representation_finite_families() {
    for n in 2..=5 {
        let relation = vec!["a"; n].join(".");
        let d = gldim_of(&format!("algebra loop{n}\nvertices v\narrow a : v -> v\nrelations\n  {relation}\nend\n"));
        assert_eq!(d, 2, "loop {n}");
        assert!(gldim_of(&linear(n, false)) <= 2);
        assert!(gldim_of(&linear(n, true)) <= 2);
    }
    assert_eq!(gldim_of("algebra semisimple\nvertices 1 2\n"), 0);
}
