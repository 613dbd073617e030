//! Seeded random generators for every input family: 321-avoiders, riffles,
//! width-2 posets, ordered trees, and st-outerplanar graphs.
//!
//! All generators are deterministic in the seed; none attempt uniformity
//! over their class, only good coverage of it.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dag::Dag;
use crate::perm::Permutation;
use crate::stouter::{Dir, InteriorEdge, StOuterplanarGraph};
use crate::{Error, Result};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A 321-avoiding permutation: a random value split into two increasing
/// subsequences interleaved by a random binary word.
pub fn random_perm321(n: usize, rng: &mut ChaCha8Rng) -> Permutation {
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for v in 1..=n {
        if rng.gen_bool(0.5) {
            upper.push(v);
        } else {
            lower.push(v);
        }
    }
    let mut word: Vec<bool> = (0..n).map(|i| i < upper.len()).collect();
    word.shuffle(rng);
    let (mut ui, mut li) = (0, 0);
    let mut values = Vec::with_capacity(n);
    for take_upper in word {
        if take_upper && ui < upper.len() {
            values.push(upper[ui]);
            ui += 1;
        } else if li < lower.len() {
            values.push(lower[li]);
            li += 1;
        } else {
            values.push(upper[ui]);
            ui += 1;
        }
    }
    Permutation::new(values).expect("interleaving is a permutation")
}

/// A riffle: values 1..k−1 and k..n merged in random order, each side kept
/// increasing.
pub fn random_riffle(n: usize, rng: &mut ChaCha8Rng) -> Permutation {
    let k = rng.gen_range(1..=n + 1);
    let lower: Vec<usize> = (1..k).collect();
    let upper: Vec<usize> = (k..=n).collect();
    let mut word: Vec<bool> = (0..n).map(|i| i < upper.len()).collect();
    word.shuffle(rng);
    let (mut ui, mut li) = (0, 0);
    let mut values = Vec::with_capacity(n);
    for take_upper in word {
        if take_upper {
            values.push(upper[ui]);
            ui += 1;
        } else {
            values.push(lower[li]);
            li += 1;
        }
    }
    Permutation::new(values).expect("riffle word is a permutation")
}

/// A uniformly random permutation (Fisher–Yates).
pub fn random_perm(n: usize, rng: &mut ChaCha8Rng) -> Permutation {
    let mut values: Vec<usize> = (1..=n).collect();
    values.shuffle(rng);
    Permutation::new(values).expect("shuffle is a permutation")
}

/// A width-≤2 DAG: two chains with random acyclic cross edges, transitively
/// reduced.
pub fn random_width2(n: usize, rng: &mut ChaCha8Rng) -> Result<Dag> {
    let n1 = if n <= 1 { n } else { rng.gen_range(1..n) };
    let n2 = n - n1;
    let name = |chain: usize, i: usize| format!("{}{}", if chain == 0 { "a" } else { "b" }, i + 1);
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for c in 0..2 {
        let len = if c == 0 { n1 } else { n2 };
        for i in 0..len {
            vertices.push(name(c, i));
            if i > 0 {
                edges.push((name(c, i - 1), name(c, i)));
            }
        }
    }
    // candidate cross edges, added only while they keep the graph acyclic
    let mut candidates = Vec::new();
    for i in 0..n1 {
        for j in 0..n2 {
            candidates.push((name(0, i), name(1, j)));
            candidates.push((name(1, j), name(0, i)));
        }
    }
    candidates.shuffle(rng);
    let keep = candidates.len().min(n);
    for cand in candidates.into_iter().take(keep) {
        if !rng.gen_bool(0.4) {
            continue;
        }
        let mut trial = edges.clone();
        trial.push(cand.clone());
        if Dag::new(vertices.clone(), trial).is_ok() {
            edges.push(cand);
        }
    }
    Ok(Dag::new(vertices, edges)?.transitive_reduction())
}

/// A rooted ordered tree as a DAG: vertex i gets a uniform parent among its
/// predecessors; children keep insertion order.
pub fn random_tree(n: usize, rng: &mut ChaCha8Rng) -> Result<Dag> {
    let name = |i: usize| format!("v{}", i + 1);
    let mut vertices = vec![name(0)];
    let mut edges = Vec::new();
    for i in 1..n {
        let parent = rng.gen_range(0..i);
        vertices.push(name(i));
        edges.push((name(parent), name(i)));
    }
    Dag::new(vertices, edges)
}

/// A transitively reduced, non-crossing st-outerplanar graph with about n
/// vertices.
///
/// Built as a left-to-right sweep of cross edges obeying the advance rules
/// that keep the result acyclic, planar, and reduced: consecutive edges of
/// equal direction advance both rows; an up edge followed by a down edge
/// advances the bottom row by at least two (forcing a green path); a down
/// edge followed by an up edge advances the top row by at least two
/// (forcing a yellow path).
pub fn random_stouter(n: usize, rng: &mut ChaCha8Rng) -> Result<StOuterplanarGraph> {
    if n < 5 {
        return Ok(StOuterplanarGraph {
            top: vec!["s".into(), "t".into()],
            bottom: vec!["s".into(), "t".into()],
            interior: vec![],
        });
    }
    // edge list in normalized coordinates, starting with the implicit
    // s→top-first edge
    let mut edges: Vec<(usize, usize, bool)> = vec![(0, 0, true)];
    let (mut b, mut t) = (0usize, 0usize);
    let mut up = true;
    loop {
        // rows so far plus s/t overhead; stop before overshooting n
        if b + t + 6 > n {
            break;
        }
        let next_up = rng.gen_bool(0.5);
        let (db_min, dt_min) = match (up, next_up) {
            (true, true) | (false, false) => (1, 1),
            (true, false) => (2, 0),
            (false, true) => (0, 2),
        };
        let db = db_min + rng.gen_range(0..=2);
        let dt = dt_min + rng.gen_range(0..=2);
        b += db;
        t += dt;
        edges.push((b, t, next_up));
        up = next_up;
    }
    if up {
        // close with the implicit top-last→t edge
        b += 2 + rng.gen_range(0..=1);
        t += rng.gen_range(0..=1);
        edges.push((b, t, false));
    }
    let bottom_len = b + 1; // indices 0..=b, with index b playing t
    let top_len = t + 1;
    let bname = |i: usize| {
        if i == 0 {
            "s".to_string()
        } else if i == bottom_len - 1 {
            "t".to_string()
        } else {
            format!("b{i}")
        }
    };
    let tname = |i: usize| format!("u{}", i + 1);
    let bottom: Vec<String> = (0..bottom_len).map(bname).collect();
    let mut top = vec!["s".to_string()];
    top.extend((0..top_len).map(tname));
    top.push("t".to_string());
    let mut interior = Vec::new();
    for (i, &(eb, et, eup)) in edges.iter().enumerate() {
        if i == 0 || i == edges.len() - 1 {
            continue; // the two implicit path-to-path edges
        }
        let (from, to, dir) = if eup {
            (bname(eb), tname(et), Dir::Up)
        } else {
            (tname(et), bname(eb), Dir::Down)
        };
        interior.push(InteriorEdge { from, to, dir });
    }
    let g = StOuterplanarGraph { top, bottom, interior };
    let diag = crate::stouter::validate(&g);
    if !diag.ok {
        return Err(Error::Internal(format!(
            "generator produced an invalid graph: {:?}",
            diag.errors
        )));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{contains, riffle_forbidden};
    use crate::perm::Permutation;

    #[test]
    fn perm321_avoids_321() {
        let mut rng = rng_from_seed(5);
        let p321: Permutation = "3 2 1".parse().unwrap();
        for _ in 0..200 {
            let n = rng.gen_range(1..40);
            let p = random_perm321(n, &mut rng);
            assert_eq!(p.len(), n);
            assert!(!contains(&p, &p321));
        }
    }

    #[test]
    fn riffles_avoid_all_three() {
        let mut rng = rng_from_seed(6);
        let forbidden = riffle_forbidden();
        for _ in 0..200 {
            let n = rng.gen_range(1..30);
            let p = random_riffle(n, &mut rng);
            for f in &forbidden {
                assert!(!contains(&p, f));
            }
        }
    }

    #[test]
    fn width2_is_reduced_and_narrow() {
        let mut rng = rng_from_seed(7);
        for _ in 0..50 {
            let n = rng.gen_range(1..25);
            let d = random_width2(n, &mut rng).unwrap();
            assert_eq!(d.n(), n);
            assert_eq!(d.transitive_reduction().edge_count(), d.edge_count());
            assert!(crate::drawing::width2_chains(&d).is_ok());
        }
    }

    #[test]
    fn trees_have_one_root() {
        let mut rng = rng_from_seed(8);
        for _ in 0..50 {
            let n = rng.gen_range(1..30);
            let d = random_tree(n, &mut rng).unwrap();
            assert!(crate::drawing::tree_root(&d).is_ok());
        }
    }

    #[test]
    fn stouter_generator_validates() {
        let mut rng = rng_from_seed(9);
        for _ in 0..100 {
            let n = rng.gen_range(2..80);
            let g = random_stouter(n, &mut rng).unwrap();
            assert!(crate::stouter::validate(&g).ok);
            assert!(g.to_dag().unwrap().n() <= n + 10);
        }
    }

    #[test]
    fn deterministic_in_seed() {
        let a = random_perm321(20, &mut rng_from_seed(1));
        let b = random_perm321(20, &mut rng_from_seed(1));
        assert_eq!(a, b);
        let c = random_stouter(30, &mut rng_from_seed(2)).unwrap();
        let d = random_stouter(30, &mut rng_from_seed(2)).unwrap();
        assert_eq!(c, d);
    }
}
