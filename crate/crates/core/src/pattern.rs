//! Pattern containment search and avoidance-class enumeration.

use rayon::prelude::*;

use crate::perm::{Embedding, Permutation};
use crate::{Error, Result};

/// Default cap for brute-force enumeration over n! candidates.
pub const ENUM_GUARD: usize = 11;

/// Search for an occurrence of `pattern` in `text` as an order-isomorphic
/// subsequence at strictly increasing positions.
///
/// Depth-first backtracking over candidate positions. At each pattern index we
/// only try text values that fit the open interval forced by the already
/// placed pattern neighbours in value order, which prunes most branches;
/// worst case remains exponential.
pub fn contains_pattern(text: &Permutation, pattern: &Permutation) -> Option<Embedding> {
    let k = pattern.len();
    if k == 0 {
        return Some(Embedding { positions: vec![] });
    }
    if k > text.len() {
        return None;
    }
    let pat = pattern.values();
    let txt = text.values();
    // chosen[j] = text value assigned to pattern index j (0 = unset)
    let mut chosen: Vec<usize> = vec![0; k];
    let mut positions: Vec<usize> = Vec::with_capacity(k);
    if search(txt, pat, 0, 0, &mut chosen, &mut positions) {
        Some(Embedding { positions })
    } else {
        None
    }
}

fn search(
    txt: &[usize],
    pat: &[usize],
    j: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    positions: &mut Vec<usize>,
) -> bool {
    if j == pat.len() {
        return true;
    }
    // Tightest bounds on the text value usable for pattern index j: it must
    // sit between the values already chosen for the pattern entries nearest
    // to pat[j] from below and above.
    let mut lo = 0usize; // exclusive
    let mut hi = usize::MAX; // exclusive
    for i in 0..j {
        if pat[i] < pat[j] {
            lo = lo.max(chosen[i]);
        } else {
            hi = hi.min(chosen[i]);
        }
    }
    let remaining = pat.len() - j;
    for p in start..=txt.len().saturating_sub(remaining) {
        let v = txt[p];
        if v > lo && v < hi {
            chosen[j] = v;
            positions.push(p + 1);
            if search(txt, pat, j + 1, p + 1, chosen, positions) {
                return true;
            }
            positions.pop();
            chosen[j] = 0;
        }
    }
    false
}

/// Convenience: does `text` contain `pattern` at all?
pub fn contains(text: &Permutation, pattern: &Permutation) -> bool {
    contains_pattern(text, pattern).is_some()
}

/// Does `text` avoid every pattern in `forbidden`?
pub fn avoids_all(text: &Permutation, forbidden: &[Permutation]) -> bool {
    forbidden.iter().all(|f| contains_pattern(text, f).is_none())
}

/// All length-n permutations avoiding every forbidden pattern, in
/// lexicographic order. Refuses n > [`ENUM_GUARD`].
pub fn enumerate_avoiders(n: usize, forbidden: &[Permutation]) -> Result<Vec<Permutation>> {
    enumerate_avoiders_with_limit(n, forbidden, ENUM_GUARD)
}

/// [`enumerate_avoiders`] with an explicit guard override.
pub fn enumerate_avoiders_with_limit(
    n: usize,
    forbidden: &[Permutation],
    limit: usize,
) -> Result<Vec<Permutation>> {
    if n > limit {
        return Err(Error::EnumerationGuard { n, limit });
    }
    // Walk all n! sequences in lexicographic order, in chunks so the filter
    // can run data-parallel without holding every candidate at once.
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    let mut done = false;
    const CHUNK: usize = 100_000;
    while !done {
        let mut batch: Vec<Vec<usize>> = Vec::with_capacity(CHUNK);
        for _ in 0..CHUNK {
            batch.push(cur.clone());
            if !next_permutation(&mut cur) {
                done = true;
                break;
            }
        }
        let survivors: Vec<Permutation> = batch
            .into_par_iter()
            .filter_map(|v| {
                let p = Permutation::new(v).expect("generated permutation");
                if avoids_all(&p, forbidden) {
                    Some(p)
                } else {
                    None
                }
            })
            .collect();
        out.extend(survivors);
    }
    Ok(out)
}

/// Advance to the lexicographically next arrangement; false after the last.
pub fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// The riffle class S_n(321, 2143, 2413): forbidden-pattern list.
pub fn riffle_forbidden() -> Vec<Permutation> {
    vec![
        Permutation::new(vec![3, 2, 1]).unwrap(),
        Permutation::new(vec![2, 1, 4, 3]).unwrap(),
        Permutation::new(vec![2, 4, 1, 3]).unwrap(),
    ]
}

/// All riffles of length n, generated directly as interleavings of
/// 1..k−1 and k..n (both increasing), deduplicated, in lexicographic order.
///
/// Does not go through the n! enumerator, so it scales to n well past the
/// guard; count is 2^n − n.
pub fn all_riffles(n: usize) -> Vec<Permutation> {
    assert!(n >= 1);
    let mut out: Vec<Permutation> = Vec::new();
    // k = first value of the upper run; k = n+1 gives the identity.
    for k in 1..=n + 1 {
        let lower: Vec<usize> = (1..k).collect();
        let upper: Vec<usize> = (k..=n).collect();
        // choose which positions take upper values
        let mut word = vec![false; n];
        loop {
            if word.iter().filter(|&&b| b).count() == upper.len() {
                let (mut li, mut ui) = (0, 0);
                let mut vals = Vec::with_capacity(n);
                for &is_upper in &word {
                    if is_upper {
                        vals.push(upper[ui]);
                        ui += 1;
                    } else {
                        vals.push(lower[li]);
                        li += 1;
                    }
                }
                out.push(Permutation::new(vals).unwrap());
            }
            if !next_subset(&mut word) {
                break;
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn next_subset(word: &mut [bool]) -> bool {
    for b in word.iter_mut() {
        if *b {
            *b = false;
        } else {
            *b = true;
            return true;
        }
    }
    false
}

/// Catalan number C_n.
pub fn catalan(n: usize) -> u64 {
    let mut c: u64 = 1;
    for i in 0..n as u64 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn containment_examples() {
        let text = p("1 4 8 7 3 5 2 6");
        let emb = contains_pattern(&text, &p("3 2 1")).unwrap();
        emb.validate(&text, &p("3 2 1")).unwrap();
        assert!(contains_pattern(&p("1 2 3"), &p("2 1")).is_none());
        let emb = contains_pattern(&p("2 1 4 3"), &p("2 1 4 3")).unwrap();
        assert_eq!(emb.positions, vec![1, 2, 3, 4]);
    }

    #[test]
    fn self_containment_is_identity() {
        for s in ["1", "2 1", "3 1 4 2 5", "4 1 5 2 6 3"] {
            let q = p(s);
            let emb = contains_pattern(&q, &q).unwrap();
            assert_eq!(emb.positions, (1..=q.len()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn enumeration_examples() {
        let a = enumerate_avoiders(3, &[p("3 2 1")]).unwrap();
        let names: Vec<String> = a.iter().map(|q| q.to_string()).collect();
        assert_eq!(names, ["1 2 3", "1 3 2", "2 1 3", "2 3 1", "3 1 2"]);
        assert_eq!(enumerate_avoiders(1, &[p("3 2 1")]).unwrap().len(), 1);
        assert_eq!(enumerate_avoiders(4, &riffle_forbidden()).unwrap().len(), 12);
        assert!(matches!(
            enumerate_avoiders(12, &[]),
            Err(Error::EnumerationGuard { .. })
        ));
    }

    #[test]
    fn riffles_match_enumeration() {
        for n in 2..=7 {
            let direct = all_riffles(n);
            let brute = enumerate_avoiders(n, &riffle_forbidden()).unwrap();
            assert_eq!(direct, brute, "n={n}");
            assert_eq!(direct.len(), (1usize << n) - n);
        }
    }

    #[test]
    fn catalan_counts() {
        assert_eq!(catalan(0), 1);
        assert_eq!(catalan(3), 5);
        assert_eq!(catalan(7), 429);
        for n in 1..=8 {
            assert_eq!(
                enumerate_avoiders(n, &[p("3 2 1")]).unwrap().len() as u64,
                catalan(n)
            );
        }
    }
}
