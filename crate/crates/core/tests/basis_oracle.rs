mod common;

use common::{computed, subpath_avoidance};
use multiserial::dsl::{parse, print};
use multiserial::fuzz::{fuzz_generator, FuzzLimits};
use multiserial::Presentation;
use proptest::prelude::*;

#[test]
fn corpus_monomial_instances_match_oracle() {
    for text in [
        include_str!("../../../corpus/kronecker.alg"),
        include_str!("../../../corpus/loop3.alg"),
        include_str!("../../../corpus/a2.alg"),
        include_str!("../../../corpus/fan.alg"),
        include_str!("../../../corpus/star.alg"),
        include_str!("../../../corpus/semisimple.alg"),
        include_str!("../../../corpus/linear4_rad2.alg"),
    ] {
        let p = parse(text).unwrap();
        assert!(p.is_monomial());
        assert_eq!(computed(&p), subpath_avoidance(&p), "{}", p.name());
    }
}

#[test]
fn fuzz_seeds_match_oracle() {
    for seed in 1..=200 {
        let p = fuzz_generator(seed, FuzzLimits::default()).unwrap();
        assert_eq!(computed(&p), subpath_avoidance(&p), "seed {seed}");
    }
}

#[test]
fn dsl_round_trip_on_corpus_and_fuzz() {
    let mut all: Vec<Presentation> = (1..=50).map(|s| fuzz_generator(s, FuzzLimits::default()).unwrap()).collect();
    all.push(parse(include_str!("../../../corpus/e3.alg")).unwrap());
    all.push(parse(include_str!("../../../corpus/violation.alg")).unwrap());
    for p in all {
        let text = print(&p);
        let back = parse(&text).unwrap();
        assert_eq!(back.relations(), p.relations());
        assert_eq!(back.dimension().unwrap(), p.dimension().unwrap());
        assert_eq!(print(&back), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_monomial_algebras_match_oracle(seed in 0u64..1_000_000, v in 1usize..6, a in 0usize..9) {
        let p = fuzz_generator(seed, FuzzLimits { max_vertices: v, max_arrows: a }).unwrap();
        prop_assert_eq!(computed(&p), subpath_avoidance(&p));
    }

    #[test]
    fn normal_form_is_idempotent(seed in 0u64..1_000_000) {
        let p = fuzz_generator(seed, FuzzLimits { max_vertices: 4, max_arrows: 6 }).unwrap();
        let b = p.basis().unwrap();
        for path in b.paths() {
            let nf = b.normal_form(path);
            prop_assert_eq!(nf.len(), 1);
            let again = b.normal_form_of(&nf.iter().map(|(i, c)| (c.clone(), b.path(*i).clone())).collect::<Vec<_>>());
            prop_assert_eq!(again, nf);
        }
    }
}
