//! Seeded generator of random monomial special multiserial presentations.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::int;
use crate::presentation::{Presentation, DEFAULT_MAX_LEN};
use crate::quiver::{ArrowId, Path, Quiver, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FuzzLimits {
    pub max_vertices: usize,
    pub max_arrows: usize,
}

impl Default for FuzzLimits {
    fn default() -> Self {
        FuzzLimits {
            max_vertices: 8,
            max_arrows: 14,
        }
    }
}

const MAX_ATTEMPTS: u64 = 64;

/// Deterministic in `seed`. The quiver is connected whenever the arrow limit
/// allows it.
pub fn fuzz_generator(seed: u64, limits: FuzzLimits) -> Result<Presentation> {
    if limits.max_vertices == 0 {
        return Err(Error::PreconditionFailed("max_vertices must be positive".into()));
    }
    for attempt in 0..MAX_ATTEMPTS {
        let sub = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(attempt);
        let p = attempt_once(seed, sub, limits)?;
        if p.is_monomial() && p.is_special_multiserial() && p.is_admissible(DEFAULT_MAX_LEN).admissible {
            return Ok(p);
        }
    }
    Err(Error::InternalInvariantViolation(format!(
        "fuzz seed {seed} produced no valid presentation"
    )))
}

/// `count` presentations from consecutive seeds starting at `seed`.
pub fn fuzz_corpus(seed: u64, count: usize, limits: FuzzLimits) -> Result<Vec<Presentation>> {
    (0..count as u64).map(|i| fuzz_generator(seed + i, limits)).collect()
}

fn attempt_once(seed: u64, sub: u64, limits: FuzzLimits) -> Result<Presentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(sub);
    let n = rng.gen_range(1..=limits.max_vertices.min(limits.max_arrows + 1));
    let m = rng.gen_range((n - 1)..=limits.max_arrows.max(n - 1));

    let mut q = Quiver::new();
    let vs: Vec<VertexId> = (1..=n)
        .map(|i| q.add_vertex(&i.to_string()))
        .collect::<Result<_>>()?;
    let mut ends = Vec::with_capacity(m);
    for i in 1..n {
        let j = rng.gen_range(0..i);
        ends.push(if rng.gen_bool(0.5) { (vs[j], vs[i]) } else { (vs[i], vs[j]) });
    }
    while ends.len() < m {
        ends.push((vs[rng.gen_range(0..n)], vs[rng.gen_range(0..n)]));
    }
    ends.shuffle(&mut rng);
    let arrows: Vec<ArrowId> = ends
        .iter()
        .enumerate()
        .map(|(i, &(s, t))| q.add_arrow(&format!("a{i}"), s, t))
        .collect::<Result<_>>()?;

    // Partial injective successor function: the only pairs allowed to survive.
    let mut succ: Vec<Option<usize>> = vec![None; m];
    let mut has_pred = vec![false; m];
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(&mut rng);
    for &a in &order {
        let free: Vec<usize> = (0..m)
            .filter(|&b| q.source(arrows[b]) == q.target(arrows[a]) && !has_pred[b])
            .collect();
        if !free.is_empty() && rng.gen_bool(0.75) {
            let b = free[rng.gen_range(0..free.len())];
            succ[a] = Some(b);
            has_pred[b] = true;
        }
    }

    let mut relations: Vec<Vec<ArrowId>> = Vec::new();
    for a in 0..m {
        for b in 0..m {
            if q.source(arrows[b]) == q.target(arrows[a]) && succ[a] != Some(b) {
                relations.push(vec![arrows[a], arrows[b]]);
            }
        }
    }
    let chain = |start: usize, len: usize| -> Option<Vec<ArrowId>> {
        let mut out = vec![arrows[start]];
        let mut cur = start;
        while out.len() < len {
            cur = succ[cur]?;
            out.push(arrows[cur]);
        }
        Some(out)
    };
    for a in 0..m {
        if rng.gen_bool(0.3) {
            if let Some(path) = chain(a, rng.gen_range(2..=4)) {
                relations.push(path);
            }
        }
    }
    let mut seen = vec![false; m];
    for a in 0..m {
        if seen[a] {
            continue;
        }
        let mut cycle = vec![a];
        let mut cur = a;
        let mut closed = false;
        while let Some(b) = succ[cur] {
            if b == a {
                closed = true;
                break;
            }
            if cycle.contains(&b) || seen[b] {
                break;
            }
            cycle.push(b);
            cur = b;
        }
        if closed {
            for &c in &cycle {
                seen[c] = true;
            }
            let start = cycle[rng.gen_range(0..cycle.len())];
            let len = rng.gen_range(2..=cycle.len() + 2);
            relations.push(chain(start, len).expect("cycles continue indefinitely"));
        }
    }

    relations.sort();
    relations.dedup();
    let rels = relations
        .iter()
        .map(|r| Ok(vec![(int(1), q.path(r)?)]))
        .collect::<Result<Vec<Vec<(_, Path)>>>>()?;
    Presentation::new(&format!("fuzz{seed}"), q, rels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::print;

    #[test]
    fn deterministic() {
        let l = FuzzLimits::default();
        assert_eq!(print(&fuzz_generator(7, l).unwrap()), print(&fuzz_generator(7, l).unwrap()));
    }

    #[test]
    fn hundred_from_42_pass() {
        let corpus = fuzz_corpus(42, 100, FuzzLimits::default()).unwrap();
        assert!(corpus.iter().all(|p| p.is_special_multiserial() && p.is_monomial()));
    }

    #[test]
    fn tiny_limits() {
        let p = fuzz_generator(1, FuzzLimits { max_vertices: 1, max_arrows: 1 }).unwrap();
        assert!(p.is_special_multiserial());
        assert!(p.quiver().vertex_count() == 1);
    }
}
