//! Dominance drawings of DAGs: verification, conversion to permutations,
//! and the width-2 / tree pipelines onto universal point sets.


use serde::{Deserialize, Serialize};

use crate::dag::Dag;
use crate::pattern::contains_pattern;
use crate::perm::Permutation;
use crate::points::{
    dominates_weak, int, plot, points_to_permutation, shear, Point, PointSet,
};
use crate::superpattern::{embed_321, MuIndex};
use crate::{Error, Result};

/// A DAG together with a planar placement of its vertices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Drawing {
    pub graph: Dag,
    /// placement[i] is the point of vertex i (graph index order)
    pub placement: Vec<Point>,
}

impl Drawing {
    pub fn new(graph: Dag, placement: Vec<Point>) -> Result<Self> {
        if placement.len() != graph.n() {
            return Err(Error::Precondition(format!(
                "{} points for {} vertices",
                placement.len(),
                graph.n()
            )));
        }
        let ps = PointSet::new(placement.clone());
        ps.check_distinct()?;
        Ok(Self { graph, placement })
    }

    pub fn point_set(&self) -> PointSet {
        PointSet::new(self.placement.clone())
    }
}

/// Outcome of a dominance check: either valid, or a witness pair of vertex
/// names on which reachability and dominance disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominanceReport {
    pub valid: bool,
    pub witness: Option<(String, String)>,
}

/// Check that reachability coincides with weak coordinate dominance on every
/// ordered vertex pair.
pub fn verify_dominance_drawing(d: &Drawing) -> DominanceReport {
    let reach = d.graph.reachability();
    let n = d.graph.n();
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            let dom = dominates_weak(&d.placement[u], &d.placement[v]);
            if reach[u][v] != dom {
                return DominanceReport {
                    valid: false,
                    witness: Some((d.graph.vertex(u).to_string(), d.graph.vertex(v).to_string())),
                };
            }
        }
    }
    DominanceReport {
        valid: true,
        witness: None,
    }
}

/// Shear the placement and replace coordinates by ranks.
pub fn drawing_to_permutation(d: &Drawing) -> Result<Permutation> {
    let report = verify_dominance_drawing(d);
    if !report.valid {
        return Err(Error::Precondition(format!(
            "not a dominance drawing; witness {:?}",
            report.witness
        )));
    }
    points_to_permutation(&shear(&d.point_set()))
}

/// Graph indices of d's vertices in increasing sheared-x order; position i of
/// `drawing_to_permutation(d)` corresponds to vertex `order[i]`.
fn x_order(d: &Drawing) -> Vec<usize> {
    let sheared = shear(&d.point_set());
    let mut order: Vec<usize> = (0..d.graph.n()).collect();
    order.sort_by_key(|&i| sheared.points[i].x);
    order
}

// ---------------------------------------------------------------------------
// Width 2

/// A partition of the vertices into two reachability chains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainPair {
    pub chain_a: Vec<String>,
    pub chain_b: Vec<String>,
}

/// Partition a width-≤2 order into two chains, or produce a 3-antichain.
///
/// Dynamic program along a topological order: the last placed vertex always
/// ends one chain, so the state is just the possible tails of the other
/// chain. O(n²) states and transitions.
pub fn width2_chains(g: &Dag) -> std::result::Result<ChainPair, [String; 3]> {
    let n = g.n();
    if n == 0 {
        return Ok(ChainPair {
            chain_a: vec![],
            chain_b: vec![],
        });
    }
    let order = g.topo_order().expect("dag");
    let reach = g.reachability();
    // state: after placing order[..=i], the other chain's tail (n = empty).
    // parent[i][tail] = previous tail, for reconstruction.
    let mut alive = vec![false; n + 1];
    alive[n] = true;
    let mut parents: Vec<Vec<Option<usize>>> = Vec::with_capacity(n);
    parents.push(vec![None; n + 1]);
    for i in 1..n {
        let v = order[i];
        let prev = order[i - 1];
        let mut next_alive = vec![false; n + 1];
        let mut parent = vec![None; n + 1];
        for tail in 0..=n {
            if !alive[tail] {
                continue;
            }
            // extend the chain ending at prev
            if reach[prev][v] && !next_alive[tail] {
                next_alive[tail] = true;
                parent[tail] = Some(tail);
            }
            // extend the other chain (tail -> v); prev becomes the other tail
            if (tail == n || reach[tail][v]) && !next_alive[prev] {
                next_alive[prev] = true;
                parent[prev] = Some(tail);
            }
        }
        alive = next_alive;
        parents.push(parent);
        if !alive.iter().any(|&b| b) {
            return Err(find_antichain(g, &reach));
        }
    }
    // reconstruct: prefer the empty other chain, then walk parents backwards
    let mut tail = if alive[n] {
        n
    } else {
        (0..n).find(|&t| alive[t]).expect("nonempty alive set")
    };
    // chain id per vertex: walk back, recording which chain each v joined
    let mut chain_of = vec![0u8; n];
    for i in (1..n).rev() {
        let v = order[i];
        let prev_tail = parents[i][tail].expect("parent recorded");
        if prev_tail == tail {
            // v extended prev's chain; mark later via prev handling
            chain_of[v] = chain_of_prev_marker();
        } else {
            // v extended the other chain; prev became the tail we saw
            debug_assert_eq!(tail, order[i - 1]);
            chain_of[v] = 1;
        }
        tail = prev_tail;
    }
    // resolve markers: "same chain as the previous vertex in topo order"
    let mut chains: Vec<Vec<usize>> = vec![vec![], vec![]];
    chains[0].push(order[0]);
    let mut chain_idx = vec![0u8; n];
    chain_idx[order[0]] = 0;
    for i in 1..n {
        let v = order[i];
        let c = if chain_of[v] == chain_of_prev_marker() {
            chain_idx[order[i - 1]]
        } else {
            1 - chain_idx[order[i - 1]]
        };
        chain_idx[v] = c;
        chains[c as usize].push(v);
    }
    // sanity: each chain totally ordered by reachability
    for chain in &chains {
        for w in chain.windows(2) {
            assert!(reach[w[0]][w[1]], "chain not totally ordered");
        }
    }
    Ok(ChainPair {
        chain_a: chains[0].iter().map(|&i| g.vertex(i).to_string()).collect(),
        chain_b: chains[1].iter().map(|&i| g.vertex(i).to_string()).collect(),
    })
}

fn chain_of_prev_marker() -> u8 {
    2
}

fn find_antichain(g: &Dag, reach: &[Vec<bool>]) -> [String; 3] {
    let n = g.n();
    let incomp = |a: usize, b: usize| !reach[a][b] && !reach[b][a];
    for a in 0..n {
        for b in a + 1..n {
            if !incomp(a, b) {
                continue;
            }
            for c in b + 1..n {
                if incomp(a, c) && incomp(b, c) {
                    return [
                        g.vertex(a).to_string(),
                        g.vertex(b).to_string(),
                        g.vertex(c).to_string(),
                    ];
                }
            }
        }
    }
    unreachable!("DP failure implies a 3-antichain exists")
}

/// Dominance drawing of a width-≤2 order.
///
/// With chains A and B: a vertex of A takes x = its chain position and y =
/// the earliest B position it reaches (|B| + own position if none), and
/// symmetrically for B. The result is checked against the dominance oracle;
/// its permutation avoids 321.
pub fn width2_drawing(g: &Dag) -> Result<Drawing> {
    let chains = width2_chains(g).map_err(Error::WidthExceeded)?;
    let reach = g.reachability();
    let idx =
        |name: &String| g.index_of(name).expect("chain vertices come from g");
    let a: Vec<usize> = chains.chain_a.iter().map(idx).collect();
    let b: Vec<usize> = chains.chain_b.iter().map(idx).collect();
    let mut placement = vec![Point::new(int(0), int(0)); g.n()];
    let earliest = |v: usize, other: &[usize]| -> Option<usize> {
        other
            .iter()
            .position(|&w| v == w || reach[v][w])
            .map(|p| p + 1)
    };
    for (i, &v) in a.iter().enumerate() {
        let x = (i + 1) as i64;
        let y = earliest(v, &b)
            .map(|p| p as i64)
            .unwrap_or((b.len() + i + 1) as i64);
        placement[v] = Point::new(int(x), int(y));
    }
    for (j, &v) in b.iter().enumerate() {
        let y = (j + 1) as i64;
        let x = earliest(v, &a)
            .map(|p| p as i64)
            .unwrap_or((a.len() + j + 1) as i64);
        placement[v] = Point::new(int(x), int(y));
    }
    let d = Drawing::new(g.clone(), placement)?;
    let report = verify_dominance_drawing(&d);
    if !report.valid {
        return Err(Error::Internal(format!(
            "width-2 drawing failed dominance check at {:?}",
            report.witness
        )));
    }
    Ok(d)
}

// ---------------------------------------------------------------------------
// Trees

/// Check that g is a rooted directed tree and return the root.
pub fn tree_root(g: &Dag) -> Result<usize> {
    let n = g.n();
    let mut indeg = vec![0usize; n];
    for u in 0..n {
        for &v in g.successors(u) {
            indeg[v] += 1;
        }
    }
    let roots: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    if roots.len() != 1 || indeg.iter().any(|&d| d > 1) || g.edge_count() != n - 1 {
        return Err(Error::Graph("not a rooted directed tree".into()));
    }
    Ok(roots[0])
}

/// Dominance drawing of a rooted tree: x is the left-to-right preorder rank,
/// y the right-to-left preorder rank; dominance is exactly ancestry.
pub fn tree_drawing(t: &Dag) -> Result<Drawing> {
    let root = tree_root(t)?;
    let n = t.n();
    let mut x = vec![0i64; n];
    let mut y = vec![0i64; n];
    preorder(t, root, false, &mut x);
    preorder(t, root, true, &mut y);
    let placement: Vec<Point> = (0..n).map(|i| Point::new(int(x[i]), int(y[i]))).collect();
    let d = Drawing::new(t.clone(), placement)?;
    let report = verify_dominance_drawing(&d);
    if !report.valid {
        return Err(Error::Internal(format!(
            "tree drawing failed dominance check at {:?}",
            report.witness
        )));
    }
    Ok(d)
}

fn preorder(t: &Dag, root: usize, reversed: bool, rank: &mut [i64]) {
    let mut next = 1i64;
    let mut stack = vec![root];
    while let Some(u) = stack.pop() {
        rank[u] = next;
        next += 1;
        let children = t.successors(u);
        // stack reverses, so push in reverse for left-to-right order
        if reversed {
            stack.extend(children.iter().copied());
        } else {
            stack.extend(children.iter().rev().copied());
        }
    }
}

/// Universal point set for n-vertex tree drawings: plot of the permutation
/// obtained by prepending a fresh global minimum to a 213-superpattern for
/// length n − 1.
pub fn tree_universal_pointset(n: usize, sp213: &Permutation) -> PointSet {
    assert!(n >= 1);
    let mut vals = Vec::with_capacity(sp213.len() + 1);
    vals.push(1);
    vals.extend(sp213.values().iter().map(|&v| v + 1));
    plot(&Permutation::new(vals).expect("shifted superpattern"))
}

// ---------------------------------------------------------------------------
// Embedding drawings into universal point sets

/// Re-draw d on a subset of `universal`'s points via pattern containment.
pub fn embed_drawing(d: &Drawing, universal: &PointSet) -> Result<Drawing> {
    let pi = drawing_to_permutation(d)?;
    let sheared = shear(universal);
    let text = points_to_permutation(&sheared)?;
    let emb = contains_pattern(&text, &pi).ok_or(Error::NotContained)?;
    // text position -> index into `universal`
    let mut by_x: Vec<usize> = (0..universal.len()).collect();
    by_x.sort_by_key(|&i| sheared.points[i].x);
    let order = x_order(d);
    let mut placement = vec![Point::new(int(0), int(0)); d.graph.n()];
    for (i, &v) in order.iter().enumerate() {
        let upoint = &universal.points[by_x[emb.positions[i] - 1]];
        placement[v] = Point::new(upoint.x, upoint.y);
    }
    let out = Drawing::new(d.graph.clone(), placement)?;
    let report = verify_dominance_drawing(&out);
    if !report.valid {
        return Err(Error::Internal(format!(
            "embedded drawing failed dominance check at {:?}",
            report.witness
        )));
    }
    Ok(out)
}

/// Embed a drawing whose permutation avoids 321 into plot(mu(n)) via the
/// constructive grid embedder.
pub fn embed_drawing_into_mu(d: &Drawing, n: usize) -> Result<Drawing> {
    let pi = drawing_to_permutation(d)?;
    let grid = embed_321(&pi, n)?;
    let idx = MuIndex::new(n);
    let order = x_order(d);
    let mut placement = vec![Point::new(int(0), int(0)); d.graph.n()];
    for (i, &v) in order.iter().enumerate() {
        let (col, row) = grid.cells[i];
        let pos = idx.cell_position(row, col) as i64;
        let val = idx.cell_value(row, col) as i64;
        placement[v] = Point::new(int(pos), int(val));
    }
    let out = Drawing::new(d.graph.clone(), placement)?;
    let report = verify_dominance_drawing(&out);
    if !report.valid {
        return Err(Error::Internal(format!(
            "mu-embedded drawing failed dominance check at {:?}",
            report.witness
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::contains;
    use crate::superpattern::{generic_superpattern, mu};

    fn dag(vs: &[&str], es: &[(&str, &str)]) -> Dag {
        Dag::new(
            vs.iter().map(|s| s.to_string()).collect(),
            es.iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
        )
        .unwrap()
    }

    fn diamond() -> Dag {
        dag(
            &["s", "a", "b", "t"],
            &[("s", "a"), ("s", "b"), ("a", "t"), ("b", "t")],
        )
    }

    fn pt(x: i64, y: i64) -> Point {
        Point::new(int(x), int(y))
    }

    #[test]
    fn verify_diamond() {
        let d = Drawing::new(diamond(), vec![pt(1, 1), pt(2, 3), pt(3, 2), pt(4, 4)]).unwrap();
        assert!(verify_dominance_drawing(&d).valid);
    }

    #[test]
    fn verify_catches_false_dominance() {
        let g = dag(&["v1", "v2"], &[]);
        let d = Drawing::new(g, vec![pt(1, 1), pt(2, 2)]).unwrap();
        let report = verify_dominance_drawing(&d);
        assert!(!report.valid);
        assert_eq!(report.witness, Some(("v1".into(), "v2".into())));
    }

    #[test]
    fn verify_single_vertex() {
        let g = dag(&["v"], &[]);
        let d = Drawing::new(g, vec![pt(5, 5)]).unwrap();
        assert!(verify_dominance_drawing(&d).valid);
    }

    #[test]
    fn chains_of_diamond() {
        let chains = width2_chains(&diamond()).unwrap();
        assert_eq!(chains.chain_a.len() + chains.chain_b.len(), 4);
    }

    #[test]
    fn chains_of_total_order() {
        let g = dag(&["1", "2", "3"], &[("1", "2"), ("2", "3")]);
        let chains = width2_chains(&g).unwrap();
        let sizes = {
            let mut s = [chains.chain_a.len(), chains.chain_b.len()];
            s.sort();
            s
        };
        assert_eq!(sizes, [0, 3]);
    }

    #[test]
    fn antichain_rejected_with_witness() {
        let g = dag(&["a", "b", "c"], &[]);
        let w = width2_chains(&g).unwrap_err();
        assert_eq!(w, ["a".to_string(), "b".into(), "c".into()]);
    }

    #[test]
    fn width2_drawing_examples() {
        let g = dag(
            &["a1", "a2", "b1", "b2"],
            &[("a1", "a2"), ("b1", "b2"), ("a1", "b2")],
        );
        let d = width2_drawing(&g).unwrap();
        let pi = drawing_to_permutation(&d).unwrap();
        assert!(!contains(&pi, &"3 2 1".parse().unwrap()));
        // single chain: diagonal
        let g = dag(&["1", "2", "3"], &[("1", "2"), ("2", "3")]);
        let d = width2_drawing(&g).unwrap();
        assert!(verify_dominance_drawing(&d).valid);
    }

    #[test]
    fn tree_drawing_examples() {
        let path = dag(&["1", "2", "3"], &[("1", "2"), ("2", "3")]);
        let d = tree_drawing(&path).unwrap();
        assert_eq!(d.placement, vec![pt(1, 1), pt(2, 2), pt(3, 3)]);
        let g = dag(&["r", "a", "b"], &[("r", "a"), ("r", "b")]);
        let d = tree_drawing(&g).unwrap();
        assert_eq!(d.placement, vec![pt(1, 1), pt(2, 3), pt(3, 2)]);
        let pi = drawing_to_permutation(&d).unwrap();
        assert!(!contains(&pi, &"2 1 3".parse().unwrap()));
        assert!(tree_drawing(&diamond()).is_err());
    }

    #[test]
    fn tree_pointset_examples() {
        let ps = tree_universal_pointset(2, &Permutation::identity(1));
        assert_eq!(ps, plot(&"1 2".parse().unwrap()));
        let ps = tree_universal_pointset(4, &generic_superpattern(3));
        let first = &ps.points[0];
        for p in &ps.points[1..] {
            assert!(first.x < p.x && first.y < p.y);
        }
    }

    #[test]
    fn embed_diamond_into_mu_plot() {
        let d = Drawing::new(diamond(), vec![pt(1, 1), pt(2, 3), pt(3, 2), pt(4, 4)]).unwrap();
        let out = embed_drawing(&d, &plot(&mu(4))).unwrap();
        assert!(verify_dominance_drawing(&out).valid);
        let out = embed_drawing_into_mu(&d, 4).unwrap();
        assert!(verify_dominance_drawing(&out).valid);
    }

    #[test]
    fn embed_single_vertex_anywhere() {
        let g = dag(&["v"], &[]);
        let d = Drawing::new(g, vec![pt(7, 9)]).unwrap();
        let ps = plot(&"2 1 3".parse().unwrap());
        let out = embed_drawing(&d, &ps).unwrap();
        assert_eq!(out.placement.len(), 1);
    }
}
