//! st-outerplanar graphs: validation, colored-region decomposition, the
//! quadtree universal point set Q_m, interval allocation, and the embedding
//! theorem, plus the skew-riffle superpattern read off from Q.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::dag::Dag;
use crate::drawing::{verify_dominance_drawing, Drawing};
use crate::perm::Permutation;
use crate::points::{int, ratio, Coord, Point, PointSet, Tag};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Input representation

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dir {
    Up,
    Down,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InteriorEdge {
    pub from: String,
    pub to: String,
    pub dir: Dir,
}

/// An st-outerplanar graph: two directed paths from s to t bordering the
/// outer face (sharing exactly their endpoints), plus interior edges between
/// them, each tagged upward (bottom to top) or downward.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StOuterplanarGraph {
    pub top: Vec<String>,
    pub bottom: Vec<String>,
    pub interior: Vec<InteriorEdge>,
}

impl StOuterplanarGraph {
    /// The underlying DAG: both path edge sets plus the interior edges.
    pub fn to_dag(&self) -> Result<Dag> {
        let mut vertices: Vec<String> = self.bottom.clone();
        for v in &self.top {
            if !vertices.contains(v) {
                vertices.push(v.clone());
            }
        }
        let mut edges = Vec::new();
        for w in self.bottom.windows(2) {
            edges.push((w[0].clone(), w[1].clone()));
        }
        for w in self.top.windows(2) {
            edges.push((w[0].clone(), w[1].clone()));
        }
        for e in &self.interior {
            edges.push((e.from.clone(), e.to.clone()));
        }
        Dag::new(vertices, edges)
    }
}

/// One cross edge in normalized row coordinates: bottom index, top index,
/// direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct CrossEdge {
    b: usize,
    t: usize,
    up: bool,
}

/// Normalized form: the bottom row is the whole bottom path (s and t
/// included), the top row is the top path's interior, and the cross edges
/// are the interior edges plus the two path-to-path boundary edges
/// s→top-first (up) and top-last→t (down), sorted left to right.
struct Norm {
    brow: Vec<String>,
    trow: Vec<String>,
    edges: Vec<CrossEdge>,
}

fn normalize(g: &StOuterplanarGraph) -> Result<Norm> {
    let brow = g.bottom.clone();
    let trow: Vec<String> = if g.top.len() >= 2 {
        g.top[1..g.top.len() - 1].to_vec()
    } else {
        return Err(Error::Graph("top path too short".into()));
    };
    let bidx: HashMap<&str, usize> = brow.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let tidx: HashMap<&str, usize> = trow.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let mut edges = Vec::new();
    if !trow.is_empty() {
        edges.push(CrossEdge { b: 0, t: 0, up: true });
        edges.push(CrossEdge {
            b: brow.len() - 1,
            t: trow.len() - 1,
            up: false,
        });
    }
    for e in &g.interior {
        let (bname, tname) = match e.dir {
            Dir::Up => (&e.from, &e.to),
            Dir::Down => (&e.to, &e.from),
        };
        let b = *bidx
            .get(bname.as_str())
            .ok_or_else(|| Error::Graph(format!("{bname:?} not on the bottom path")))?;
        let t = *tidx
            .get(tname.as_str())
            .ok_or_else(|| Error::Graph(format!("{tname:?} not interior to the top path")))?;
        if b == 0 || b == brow.len() - 1 {
            return Err(Error::Graph(format!(
                "interior edge touches a path endpoint at {bname:?}"
            )));
        }
        edges.push(CrossEdge {
            b,
            t,
            up: e.dir == Dir::Up,
        });
    }
    edges.sort_by_key(|e| (e.b, e.t, e.up));
    Ok(Norm { brow, trow, edges })
}

/// Validation outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub ok: bool,
    pub errors: Vec<String>,
}

/// Check the st-outerplanar invariants: shared endpoints, acyclicity, a
/// single source and sink, transitive reduction, and non-crossing interior
/// edges.
pub fn validate(g: &StOuterplanarGraph) -> Diagnostic {
    let mut errors = Vec::new();
    if g.bottom.len() < 2 || g.top.len() < 2 {
        errors.push("each path needs at least two vertices".into());
    } else {
        if g.bottom.first() != g.top.first() {
            errors.push("paths do not share a first vertex".into());
        }
        if g.bottom.last() != g.top.last() {
            errors.push("paths do not share a last vertex".into());
        }
        if g.bottom.first() == g.bottom.last() {
            errors.push("source and sink coincide".into());
        }
        let interior_b: HashSet<&String> = g.bottom[1..g.bottom.len() - 1].iter().collect();
        let interior_t: HashSet<&String> = g.top[1..g.top.len() - 1].iter().collect();
        if !interior_b.is_disjoint(&interior_t) {
            errors.push("paths share an interior vertex".into());
        }
    }
    let dag = match g.to_dag() {
        Ok(d) => Some(d),
        Err(e) => {
            errors.push(e.to_string());
            None
        }
    };
    if let Some(dag) = &dag {
        let n = dag.n();
        let mut indeg = vec![0usize; n];
        let mut outdeg = vec![0usize; n];
        for u in 0..n {
            for &v in dag.successors(u) {
                indeg[v] += 1;
                outdeg[u] += 1;
            }
        }
        let sources: Vec<&str> = (0..n).filter(|&i| indeg[i] == 0).map(|i| dag.vertex(i)).collect();
        let sinks: Vec<&str> = (0..n).filter(|&i| outdeg[i] == 0).map(|i| dag.vertex(i)).collect();
        if sources.len() != 1 || Some(sources[0]) != g.bottom.first().map(String::as_str) {
            errors.push(format!("sources {sources:?}, expected exactly the shared start"));
        }
        if sinks.len() != 1 || Some(sinks[0]) != g.bottom.last().map(String::as_str) {
            errors.push(format!("sinks {sinks:?}, expected exactly the shared end"));
        }
        if dag.transitive_reduction().edge_count() != dag.edge_count() {
            errors.push("graph is not transitively reduced".into());
        }
    }
    match normalize(g) {
        Ok(norm) => {
            for w in norm.edges.windows(2) {
                if w[1].t < w[0].t {
                    errors.push(format!(
                        "crossing interior edges: ({}, {}) and ({}, {})",
                        w[0].b, w[0].t, w[1].b, w[1].t
                    ));
                }
            }
        }
        Err(e) => errors.push(e.to_string()),
    }
    Diagnostic {
        ok: errors.is_empty(),
        errors,
    }
}

// ---------------------------------------------------------------------------
// Region decomposition

/// One block X_{2i−1} ∪ X_{2i}: a red region (with its green tail) and the
/// following blue region (with its yellow tail). The final blue may be the
/// sink alone; green and yellow may be empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub red_bottom: Vec<String>,
    pub red_top: Vec<String>,
    pub green: Vec<String>,
    pub blue_top: Vec<String>,
    pub blue_bottom: Vec<String>,
    pub yellow: Vec<String>,
    /// up edges with both endpoints in this block's red region
    pub red_edges: Vec<(String, String)>,
    /// down edges with their source in this block's blue top row
    pub blue_edges: Vec<(String, String)>,
}

impl Block {
    pub fn red_size(&self) -> usize {
        self.red_bottom.len() + self.red_top.len() + self.green.len()
    }
    pub fn blue_size(&self) -> usize {
        self.blue_top.len() + self.blue_bottom.len() + self.yellow.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionDecomposition {
    pub blocks: Vec<Block>,
}

impl RegionDecomposition {
    /// Region sizes in block order: |R_1 ∪ G_1|, |B_1 ∪ Y_1|, |R_2 ∪ G_2|, …
    pub fn x_sizes(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for b in &self.blocks {
            out.push(b.red_size());
            if b.blue_size() > 0 {
                out.push(b.blue_size());
            }
        }
        out
    }
}

/// Partition the vertices into alternating red/green/blue/yellow regions by
/// sweeping the sorted cross edges, grouped into alternating up/down runs.
pub fn decompose_regions(g: &StOuterplanarGraph) -> Result<RegionDecomposition> {
    let diag = validate(g);
    if !diag.ok {
        return Err(Error::Graph(format!("invalid input: {:?}", diag.errors)));
    }
    let norm = normalize(g)?;
    let (brow, trow) = (&norm.brow, &norm.trow);
    if norm.edges.is_empty() {
        // single edge s→t: one red region holding both endpoints
        let block = Block {
            red_bottom: brow.clone(),
            ..Block::default()
        };
        return Ok(RegionDecomposition { blocks: vec![block] });
    }
    // group into runs of equal direction; the sweep starts upward and, with t
    // on the bottom row, always ends with a down run
    let mut runs: Vec<Vec<CrossEdge>> = Vec::new();
    for &e in &norm.edges {
        match runs.last_mut() {
            Some(run) if run[0].up == e.up => run.push(e),
            _ => runs.push(vec![e]),
        }
    }
    if !runs[0][0].up || runs.last().unwrap()[0].up {
        return Err(Error::Internal("run sweep must start up and end down".into()));
    }
    let take_b = |from: usize, to_incl: isize, cb: &mut usize| -> Vec<String> {
        let mut out = Vec::new();
        let mut i = (*cb).max(from);
        while (i as isize) <= to_incl {
            out.push(brow[i].clone());
            i += 1;
        }
        *cb = (*cb).max(i);
        out
    };
    let take_t = |from: usize, to_incl: isize, ct: &mut usize| -> Vec<String> {
        let mut out = Vec::new();
        let mut i = (*ct).max(from);
        while (i as isize) <= to_incl {
            out.push(trow[i].clone());
            i += 1;
        }
        *ct = (*ct).max(i);
        out
    };
    let mut blocks = Vec::new();
    let (mut cb, mut ct) = (0usize, 0usize);
    let mut r = 0;
    while r < runs.len() {
        let ups = &runs[r];
        let downs = runs.get(r + 1);
        let mut block = Block::default();
        // red: bottom and top rows up to the last up edge, inclusive
        let e = *ups.last().unwrap();
        let red_b_start = cb;
        block.red_bottom = take_b(0, e.b as isize, &mut cb);
        block.red_top = take_t(0, e.t as isize, &mut ct);
        for ue in ups {
            if ue.b >= red_b_start {
                block.red_edges.push((brow[ue.b].clone(), trow[ue.t].clone()));
            }
        }
        if let Some(downs) = downs {
            let f1 = downs[0];
            let f2 = *downs.last().unwrap();
            // green: bottom vertices strictly before the first down arrow
            block.green = take_b(0, f1.b as isize - 1, &mut cb);
            // blue: both rows through the last down edge
            let blue_t_start = ct;
            block.blue_bottom = take_b(0, f2.b as isize, &mut cb);
            block.blue_top = take_t(0, f2.t as isize, &mut ct);
            for de in downs {
                if de.t >= blue_t_start {
                    block.blue_edges.push((trow[de.t].clone(), brow[de.b].clone()));
                }
            }
            // yellow: top vertices strictly before the next up run's first dest
            if let Some(next_ups) = runs.get(r + 2) {
                block.yellow = take_t(0, next_ups[0].t as isize - 1, &mut ct);
            }
        }
        blocks.push(block);
        r += 2;
    }
    if cb != brow.len() || ct != trow.len() {
        return Err(Error::Internal(format!(
            "decomposition left vertices unassigned: cb={cb}/{}, ct={ct}/{}",
            brow.len(),
            trow.len()
        )));
    }
    Ok(RegionDecomposition { blocks })
}

/// Check the six reachability facts of the decomposition against the
/// transitive closure. Returns the index (1–6) of the first failing fact.
pub fn verify_facts(
    g: &StOuterplanarGraph,
    d: &RegionDecomposition,
) -> Result<std::result::Result<(), usize>> {
    let dag = g.to_dag()?;
    let reach = dag.reachability();
    let idx = |name: &String| dag.index_of(name).expect("region vertex in graph");
    let reaches_all = |from: &[String], to: &[String]| {
        from.iter()
            .all(|u| to.iter().all(|v| reach[idx(u)][idx(v)]))
    };
    let reaches_none = |from: &[String], to: &[String]| {
        from.iter()
            .all(|u| to.iter().all(|v| !reach[idx(u)][idx(v)]))
    };
    let cat = |a: &[String], b: &[String]| -> Vec<String> {
        a.iter().chain(b.iter()).cloned().collect()
    };
    for (i, blk) in d.blocks.iter().enumerate() {
        let red = cat(&blk.red_bottom, &blk.red_top);
        let blue = cat(&blk.blue_top, &blk.blue_bottom);
        // 1: R_i reaches all of B_i and Y_i; R_i's bottom row reaches all of
        //    G_i and its top row none of it
        if !(reaches_all(&red, &blue)
            && reaches_all(&red, &blk.yellow)
            && reaches_all(&blk.red_bottom, &blk.green)
            && reaches_none(&blk.red_top, &blk.green))
        {
            return Ok(Err(1));
        }
        // 2: G_i reaches all of B_i's bottom row; none of Y_i, R_i, B_i's top
        if !(reaches_all(&blk.green, &blk.blue_bottom)
            && reaches_none(&blk.green, &blk.yellow)
            && reaches_none(&blk.green, &red)
            && reaches_none(&blk.green, &blk.blue_top))
        {
            return Ok(Err(2));
        }
        // 3: B_i reaches nothing in R_i or G_i; its top row reaches all of
        //    Y_i and its bottom row none of it
        if !(reaches_none(&blue, &red)
            && reaches_none(&blue, &blk.green)
            && reaches_all(&blk.blue_top, &blk.yellow)
            && reaches_none(&blk.blue_bottom, &blk.yellow))
        {
            return Ok(Err(3));
        }
        // 4: Y_i reaches nothing in R_i, B_i, or G_i
        if !(reaches_none(&blk.yellow, &red)
            && reaches_none(&blk.yellow, &blue)
            && reaches_none(&blk.yellow, &blk.green))
        {
            return Ok(Err(4));
        }
        if let Some(next) = d.blocks.get(i + 1) {
            let next_red = cat(&next.red_bottom, &next.red_top);
            // 5: B_i reaches all of R_{i+1}
            if !reaches_all(&blue, &next_red) {
                return Ok(Err(5));
            }
            // 6: Y_i reaches all of R_{i+1}'s top row, none of its bottom row
            //    and none of G_{i+1}
            if !(reaches_all(&blk.yellow, &next.red_top)
                && reaches_none(&blk.yellow, &next.red_bottom)
                && reaches_none(&blk.yellow, &next.green))
            {
                return Ok(Err(6));
            }
        }
    }
    Ok(Ok(()))
}

// ---------------------------------------------------------------------------
// Interval allocation

/// Membership test for 𝓘_n: dyadic intervals [q·2^j + 1, (q+1)·2^j] of size
/// ≥ 2 within [1, n].
pub fn is_dyadic(lo: u64, hi: u64, n: u64) -> bool {
    if lo == 0 || hi < lo || hi > n {
        return false;
    }
    let size = hi - lo + 1;
    size >= 2 && size.is_power_of_two() && (lo - 1) % size == 0
}

pub fn pow2ceil(n: u64) -> u64 {
    n.max(1).next_power_of_two()
}

/// Allocate a sorted sequence of contiguous, disjoint intervals of 𝓘_{4n}
/// with |I_i| ≥ sizes_i, given Σ sizes ≤ n.
///
/// Intervals are placed left to right; whenever the next block's power-of-two
/// size does not align with the current frontier, earlier intervals are
/// promoted in place (when their position allows doubling) or shifted right
/// after aligning what lies beneath them.
pub fn interval_allocate(sizes: &[u64], n: u64) -> Result<Vec<(u64, u64)>> {
    if !n.is_power_of_two() {
        return Err(Error::Precondition(format!("{n} is not a power of two")));
    }
    let total: u64 = sizes.iter().sum();
    if total > n {
        return Err(Error::Precondition(format!(
            "sizes sum to {total}, exceeding n = {n}"
        )));
    }
    let cap = 4 * n;
    let mut stack: Vec<(u64, u64)> = Vec::new(); // (start, size)
    for &a in sizes {
        if a == 0 {
            return Err(Error::Precondition("zero-size request".into()));
        }
        let p = pow2ceil(a.max(2));
        make_aligned(&mut stack, p, cap)?;
        let e = stack.last().map(|&(s, sz)| s + sz - 1).unwrap_or(0);
        stack.push((e + 1, p));
    }
    for &(s, sz) in &stack {
        if s + sz - 1 > cap || !is_dyadic(s, s + sz - 1, cap) {
            return Err(Error::Internal(format!(
                "allocator produced a non-dyadic interval [{s}, {}] in I_{cap}",
                s + sz - 1
            )));
        }
    }
    Ok(stack.iter().map(|&(s, sz)| (s, s + sz - 1)).collect())
}

/// Promote or shift intervals until the frontier end is a multiple of q.
fn make_aligned(stack: &mut Vec<(u64, u64)>, q: u64, cap: u64) -> Result<()> {
    let mut fuel = 10_000u32;
    loop {
        let e = stack.last().map(|&(s, sz)| s + sz - 1).unwrap_or(0);
        if e % q == 0 {
            return Ok(());
        }
        fuel = fuel
            .checked_sub(1)
            .ok_or_else(|| Error::Internal("interval alignment diverged".into()))?;
        let (s, sz) = *stack.last().expect("misaligned frontier implies nonempty");
        if (s - 1) % (2 * sz) == 0 {
            // the interval sits on the low half of its parent: double it
            let top = stack.last_mut().unwrap();
            top.1 = 2 * sz;
            if top.0 + top.1 - 1 > cap {
                return Err(Error::Internal("promotion escaped the 4n range".into()));
            }
        } else {
            // align everything beneath to the parent grid, then reattach
            stack.pop();
            make_aligned(stack, 2 * sz, cap)?;
            let e2 = stack.last().map(|&(s2, sz2)| s2 + sz2 - 1).unwrap_or(0);
            stack.push((e2 + 1, sz));
        }
    }
}

// ---------------------------------------------------------------------------
// The quadtree point set Q_m

/// Universal point set for st-outerplanar dominance drawings.
///
/// For every dyadic square [a, b] of the diagonal, the hollow-square sides
/// are shared along quadtree columns: the largest square with the same left
/// end owns the bottom and left sides, the largest with the same right end
/// owns the top and right sides. Each square additionally carries a yellow
/// column above its top-left corner and a green column right of its
/// bottom-right corner.
pub struct QuadSet {
    pub m: u64,
    pub k: u32,
    pub points: PointSet,
    black: usize,
    colored: usize,
}

fn maxanc_left(a: u64, m: u64) -> u64 {
    if a == 1 {
        m
    } else {
        1u64 << (a - 1).trailing_zeros()
    }
}

fn maxanc_right(b: u64, m: u64) -> u64 {
    if b == m {
        m
    } else {
        1u64 << b.trailing_zeros()
    }
}

/// Black boundary points of the square [a, b], as owned by the sharing rule.
/// Band denominators come from the owning square, so a nested square's side
/// points always stay within half a unit of its own boundary.
impl QuadSet {
    pub fn bottom_point(&self, a: u64, x: u64) -> Point {
        let mo = maxanc_left(a, self.m) as i64;
        Point::new(int(x as i64), int(a as i64 - 1) + ratio((x - a + 1) as i64, 2 * mo))
    }

    pub fn left_point(&self, a: u64, y: u64) -> Point {
        let mo = maxanc_left(a, self.m) as i64;
        Point::new(int(a as i64 - 1) + ratio((y - a + 1) as i64, 2 * mo), int(y as i64))
    }

    pub fn top_point(&self, b: u64, x: u64) -> Point {
        let mo = maxanc_right(b, self.m);
        let ar = b - mo + 1;
        Point::new(
            int(x as i64),
            int(b as i64) + ratio((x - ar + 1) as i64, 2 * mo as i64),
        )
    }

    pub fn right_point(&self, b: u64, y: u64) -> Point {
        let mo = maxanc_right(b, self.m);
        let ar = b - mo + 1;
        Point::new(
            int(b as i64) + ratio((y - ar + 1) as i64, 2 * mo as i64),
            int(y as i64),
        )
    }

    /// p-th point (1-based, bottom to top) of the green column of [a, b].
    pub fn green_point(&self, a: u64, b: u64, p: u64) -> Point {
        let msz = (b - a + 1) as i64;
        Point::new(
            int(b as i64) + ratio(7, 8),
            int(a as i64) - ratio(1, 2) + ratio(p as i64, 4 * (msz + 1)),
        )
    }

    /// p-th point (1-based) of the yellow column of [a, b].
    pub fn yellow_point(&self, a: u64, b: u64, p: u64) -> Point {
        let msz = (b - a + 1) as i64;
        Point::new(
            int(a as i64) - ratio(3, 8),
            int(b as i64) + ratio(3, 4) + ratio(p as i64, 4 * (msz + 1)),
        )
    }

    pub fn black_count(&self) -> usize {
        self.black
    }

    pub fn colored_count(&self) -> usize {
        self.colored
    }

    pub fn black_points(&self) -> PointSet {
        PointSet::new(
            self.points
                .points
                .iter()
                .filter(|p| p.tag == Some(Tag::Black))
                .cloned()
                .collect(),
        )
    }

    /// Exact (x, y) membership set, for verifying drawings stay on Q.
    pub fn coordinate_set(&self) -> HashSet<(Coord, Coord)> {
        self.points.points.iter().map(|p| (p.x, p.y)).collect()
    }
}

/// Build Q_m for m = 2^k, k ≥ 1.
pub fn build_q(m: u64) -> Result<QuadSet> {
    if !m.is_power_of_two() || m < 2 {
        return Err(Error::Precondition(format!("{m} is not a power of two ≥ 2")));
    }
    let k = m.trailing_zeros();
    let mut points = Vec::new();
    let mut black = 0usize;
    let mut colored = 0usize;
    // iterate squares largest first
    let mut size = m;
    while size >= 2 {
        let mut a = 1;
        while a + size - 1 <= m {
            let b = a + size - 1;
            let root = size == m;
            let owns_bottom_left = root || (a - 1) % (2 * size) != 0;
            let owns_top_right = root || (a - 1) % (2 * size) == 0;
            let q = QuadSet {
                m,
                k,
                points: PointSet::default(),
                black: 0,
                colored: 0,
            };
            if owns_bottom_left {
                for x in a..=b {
                    points.push(Point {
                        tag: Some(Tag::Black),
                        ..q.bottom_point(a, x)
                    });
                    black += 1;
                }
                for y in a..=b {
                    points.push(Point {
                        tag: Some(Tag::Black),
                        ..q.left_point(a, y)
                    });
                    black += 1;
                }
            }
            if owns_top_right {
                for x in a..=b {
                    points.push(Point {
                        tag: Some(Tag::Black),
                        ..q.top_point(b, x)
                    });
                    black += 1;
                }
                for y in a..=b {
                    points.push(Point {
                        tag: Some(Tag::Black),
                        ..q.right_point(b, y)
                    });
                    black += 1;
                }
            }
            for p in 1..=size {
                points.push(Point {
                    tag: Some(Tag::Green),
                    ..q.green_point(a, b, p)
                });
                points.push(Point {
                    tag: Some(Tag::Yellow),
                    ..q.yellow_point(a, b, p)
                });
                colored += 2;
            }
            a += size;
        }
        size /= 2;
    }
    Ok(QuadSet {
        m,
        k,
        points: PointSet::new(points),
        black,
        colored,
    })
}

// ---------------------------------------------------------------------------
// The embedding theorem

/// Result of placing an st-outerplanar graph on Q.
pub struct StEmbedding {
    pub drawing: Drawing,
    pub quad: QuadSet,
    /// allocated diagonal intervals, in block order
    pub intervals: Vec<(u64, u64)>,
}

/// Draw g on the points of Q_{8·pow2ceil(n)}: red regions on the horizontal
/// sides of their allocated squares, blue on the vertical sides, green and
/// yellow tails on the squares' attached columns.
pub fn embed_st_outerplanar(g: &StOuterplanarGraph) -> Result<StEmbedding> {
    let dag = g.to_dag()?;
    let n = dag.n() as u64;
    let decomp = decompose_regions(g)?;
    if let Err(fact) = verify_facts(g, &decomp)? {
        return Err(Error::Internal(format!("decomposition violates fact {fact}")));
    }
    let m = 8 * pow2ceil(n);
    let quad = build_q(m)?;
    let sizes: Vec<u64> = decomp.x_sizes().iter().map(|&s| s as u64).collect();
    let intervals = interval_allocate(&sizes, m / 4)?;
    let mut placement: HashMap<String, Point> = HashMap::new();
    let mut iv = intervals.iter();
    for blk in &decomp.blocks {
        let &(a, b) = iv.next().ok_or_else(|| Error::Internal("missing interval".into()))?;
        place_red_region(&quad, blk, a, b, &mut placement)?;
        if blk.blue_size() > 0 {
            let &(a2, b2) = iv
                .next()
                .ok_or_else(|| Error::Internal("missing interval".into()))?;
            place_blue_region(&quad, blk, a2, b2, &mut placement)?;
        }
    }
    let points: Vec<Point> = dag
        .vertices()
        .iter()
        .map(|v| {
            placement
                .remove(v)
                .ok_or_else(|| Error::Internal(format!("vertex {v:?} left unplaced")))
        })
        .collect::<Result<_>>()?;
    let drawing = Drawing::new(dag, points)?;
    let report = verify_dominance_drawing(&drawing);
    if !report.valid {
        return Err(Error::Internal(format!(
            "embedding failed the dominance oracle at {:?}",
            report.witness
        )));
    }
    Ok(StEmbedding {
        drawing,
        quad,
        intervals,
    })
}

/// Slot orders for a region: merge the two rows against the region's edge
/// list so that edge endpoints share a slot and, between edges, destinations
/// precede sources in slot order.
///
/// `dests with slot < sources` is the rule of the red-riffle lemma: in a red
/// region, between two upward edges the top-row vertices take lower x than
/// the bottom-row vertices.
fn region_slots(
    srcs: &[String],
    dests: &[String],
    edges: &[(String, String)],
) -> Result<Vec<(String, usize, bool)>> {
    // returns (vertex, slot, is_source_row)
    let mut out = Vec::new();
    let mut si = 0usize;
    let mut di = 0usize;
    let mut slot = 0usize;
    for (es, ed) in edges {
        // destinations strictly before this edge's destination
        while di < dests.len() && dests[di] != *ed {
            slot += 1;
            out.push((dests[di].clone(), slot, false));
            di += 1;
        }
        // sources strictly before this edge's source
        while si < srcs.len() && srcs[si] != *es {
            slot += 1;
            out.push((srcs[si].clone(), slot, true));
            si += 1;
        }
        if di >= dests.len() || si >= srcs.len() {
            return Err(Error::Internal("region edge endpoint missing from rows".into()));
        }
        slot += 1;
        out.push((dests[di].clone(), slot, false));
        out.push((srcs[si].clone(), slot, true));
        di += 1;
        si += 1;
    }
    for d in &dests[di..] {
        slot += 1;
        out.push((d.clone(), slot, false));
    }
    for s in &srcs[si..] {
        slot += 1;
        out.push((s.clone(), slot, true));
    }
    Ok(out)
}

fn place_red_region(
    quad: &QuadSet,
    blk: &Block,
    a: u64,
    b: u64,
    placement: &mut HashMap<String, Point>,
) -> Result<()> {
    let slots = region_slots(&blk.red_bottom, &blk.red_top, &blk.red_edges)?;
    let side = b - a + 1;
    for (v, slot, is_bottom) in slots {
        if slot as u64 > side {
            return Err(Error::Internal("red region overflows its square".into()));
        }
        let x = a + slot as u64 - 1;
        let pt = if is_bottom {
            quad.bottom_point(a, x)
        } else {
            quad.top_point(b, x)
        };
        placement.insert(v, pt);
    }
    for (p, v) in blk.green.iter().enumerate() {
        if p as u64 + 1 > side {
            return Err(Error::Internal("green tail overflows its column".into()));
        }
        placement.insert(v.clone(), quad.green_point(a, b, p as u64 + 1));
    }
    Ok(())
}

fn place_blue_region(
    quad: &QuadSet,
    blk: &Block,
    a: u64,
    b: u64,
    placement: &mut HashMap<String, Point>,
) -> Result<()> {
    let slots = region_slots(&blk.blue_top, &blk.blue_bottom, &blk.blue_edges)?;
    let side = b - a + 1;
    for (v, slot, is_top) in slots {
        if slot as u64 > side {
            return Err(Error::Internal("blue region overflows its square".into()));
        }
        let y = a + slot as u64 - 1;
        let pt = if is_top {
            quad.left_point(a, y)
        } else {
            quad.right_point(b, y)
        };
        placement.insert(v, pt);
    }
    for (p, v) in blk.yellow.iter().enumerate() {
        if p as u64 + 1 > side {
            return Err(Error::Internal("yellow tail overflows its column".into()));
        }
        placement.insert(v.clone(), quad.yellow_point(a, b, p as u64 + 1));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Skew riffles

/// σ ⊖ τ: σ's values shifted above, τ placed below and to the right.
pub fn skew_sum(a: &Permutation, b: &Permutation) -> Permutation {
    let mut v: Vec<usize> = a.values().iter().map(|&x| x + b.len()).collect();
    v.extend_from_slice(b.values());
    Permutation::new(v).expect("skew sum of permutations")
}

/// All skew riffles of length ≤ maxlen: the closure of riffles and
/// antiriffles under skew sums.
pub fn skew_riffles_upto(maxlen: usize) -> Vec<Permutation> {
    use crate::pattern::all_riffles;
    let mut set: HashSet<Permutation> = HashSet::new();
    for n in 1..=maxlen {
        for r in all_riffles(n) {
            set.insert(r.inverse());
            set.insert(r);
        }
    }
    loop {
        let current: Vec<Permutation> = set.iter().cloned().collect();
        let before = set.len();
        for a in &current {
            for b in &current {
                if a.len() + b.len() <= maxlen {
                    set.insert(skew_sum(a, b));
                }
            }
        }
        if set.len() == before {
            break;
        }
    }
    let mut out: Vec<Permutation> = set.into_iter().collect();
    out.sort();
    out
}

/// Superpattern point set for skew riffles: the black points of Q_n.
pub fn skew_riffle_superpattern(n: u64) -> Result<PointSet> {
    Ok(build_q(n)?.black_points())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::contains_pattern;
    use crate::points::{points_to_permutation, shear};

    fn g(bottom: &[&str], top: &[&str], interior: &[(&str, &str, Dir)]) -> StOuterplanarGraph {
        StOuterplanarGraph {
            bottom: bottom.iter().map(|s| s.to_string()).collect(),
            top: top.iter().map(|s| s.to_string()).collect(),
            interior: interior
                .iter()
                .map(|(f, t, d)| InteriorEdge {
                    from: f.to_string(),
                    to: t.to_string(),
                    dir: *d,
                })
                .collect(),
        }
    }

    fn single_edge() -> StOuterplanarGraph {
        g(&["s", "t"], &["s", "t"], &[])
    }

    fn small_valid() -> StOuterplanarGraph {
        // bottom s→b1→b2→t, top s→u1→u2→t, one upward interior edge b1→u2
        g(
            &["s", "b1", "b2", "t"],
            &["s", "u1", "u2", "t"],
            &[("b1", "u2", Dir::Up)],
        )
    }

    #[test]
    fn validate_examples() {
        assert!(validate(&single_edge()).ok);
        assert!(validate(&small_valid()).ok);
        // crossing interior edges: b1→u2 (up) and u1→b2 (down) interleave
        let bad = g(
            &["s", "b1", "b2", "b3", "t"],
            &["s", "u1", "u2", "u3", "t"],
            &[("b1", "u3", Dir::Up), ("u1", "b3", Dir::Down)],
        );
        let d = validate(&bad);
        assert!(!d.ok);
        assert!(d.errors.iter().any(|e| e.contains("crossing")));
    }

    #[test]
    fn validate_rejects_redundant_edges() {
        // s→u1 interior edge duplicates reachability of the top path
        let bad = g(
            &["s", "b1", "t"],
            &["s", "u1", "t"],
            &[("b1", "u1", Dir::Up)],
        );
        assert!(!validate(&bad).ok);
    }

    #[test]
    fn decompose_single_edge() {
        let d = decompose_regions(&single_edge()).unwrap();
        assert_eq!(d.blocks.len(), 1);
        assert_eq!(d.blocks[0].red_bottom, vec!["s", "t"]);
        assert_eq!(d.blocks[0].blue_size(), 0);
        assert!(verify_facts(&single_edge(), &d).unwrap().is_ok());
    }

    #[test]
    fn decompose_small() {
        let d = decompose_regions(&small_valid()).unwrap();
        assert_eq!(d.blocks.len(), 1);
        let blk = &d.blocks[0];
        assert_eq!(blk.red_bottom, vec!["s", "b1"]);
        assert_eq!(blk.red_top, vec!["u1", "u2"]);
        assert_eq!(blk.green, vec!["b2"]);
        assert_eq!(blk.blue_bottom, vec!["t"]);
        assert!(blk.blue_top.is_empty());
        assert!(verify_facts(&small_valid(), &d).unwrap().is_ok());
    }

    #[test]
    fn decompose_with_green() {
        // green path b1 between the up edge at s and the final down arrow
        let gr = g(&["s", "b1", "t"], &["s", "u1", "t"], &[]);
        assert!(validate(&gr).ok);
        let d = decompose_regions(&gr).unwrap();
        let blk = &d.blocks[0];
        assert_eq!(blk.red_bottom, vec!["s"]);
        assert_eq!(blk.red_top, vec!["u1"]);
        assert_eq!(blk.green, vec!["b1"]);
        assert_eq!(blk.blue_bottom, vec!["t"]);
        assert!(verify_facts(&gr, &d).unwrap().is_ok());
    }

    #[test]
    fn facts_catch_mutation() {
        let gr = g(&["s", "b1", "t"], &["s", "u1", "t"], &[]);
        let mut d = decompose_regions(&gr).unwrap();
        // swapping the green vertex with the blue bottom breaks fact 2
        let blk = &mut d.blocks[0];
        std::mem::swap(&mut blk.green, &mut blk.blue_bottom);
        assert!(verify_facts(&gr, &d).unwrap().is_err());
    }

    #[test]
    fn interval_allocation_examples() {
        assert_eq!(interval_allocate(&[8], 8).unwrap(), vec![(1, 8)]);
        assert_eq!(interval_allocate(&[2, 2], 4).unwrap(), vec![(1, 2), (3, 4)]);
        assert_eq!(
            interval_allocate(&[1, 1, 1, 1], 4).unwrap(),
            vec![(1, 2), (3, 4), (5, 6), (7, 8)]
        );
        assert_eq!(
            interval_allocate(&[2, 2, 8], 16).unwrap(),
            vec![(1, 4), (5, 8), (9, 16)]
        );
        assert!(interval_allocate(&[5], 4).is_err());
    }

    #[test]
    fn interval_allocation_invariants() {
        for sizes in [
            vec![4u64, 2, 4],
            vec![2, 16],
            vec![8, 2],
            vec![3, 3, 3, 3],
            vec![1, 7, 1, 7],
            vec![5, 2, 2, 2, 2, 2],
        ] {
            let n = pow2ceil(sizes.iter().sum());
            let ivs = interval_allocate(&sizes, n).unwrap();
            assert_eq!(ivs.len(), sizes.len());
            let mut prev_end = 0;
            for (iv, &want) in ivs.iter().zip(&sizes) {
                assert!(is_dyadic(iv.0, iv.1, 4 * n), "{ivs:?} for {sizes:?}");
                assert_eq!(iv.0, prev_end + 1, "not contiguous: {ivs:?}");
                assert!(iv.1 - iv.0 + 1 >= want.max(2));
                prev_end = iv.1;
            }
        }
    }

    #[test]
    fn q_sizes_match_lemma() {
        for j in 1..=8u32 {
            let m = 1u64 << j;
            let q = build_q(m).unwrap();
            let (mm, kk) = (m as usize, j as usize);
            assert_eq!(q.black_count(), 4 * mm + 2 * mm * (kk - 1));
            assert_eq!(q.colored_count(), 2 * mm * kk);
            assert!(q.points.len() <= 4 * mm * kk + 4 * mm);
            q.points.check_distinct().unwrap();
        }
    }

    #[test]
    fn column_lookup_lemma() {
        // every diagonal square of side l has yellow and green columns of l
        // points in their stated bands
        let q = build_q(64).unwrap();
        let mut size = 64u64;
        while size >= 2 {
            let mut a = 1;
            while a + size - 1 <= 64 {
                let b = a + size - 1;
                for p in 1..=size {
                    let yp = q.yellow_point(a, b, p);
                    assert!(yp.y > int(b as i64) + ratio(3, 4) && yp.y < int(b as i64 + 1));
                    let gp = q.green_point(a, b, p);
                    assert!(gp.y > int(a as i64) - ratio(1, 2) && gp.y < int(a as i64) - ratio(1, 4));
                }
                a += size;
            }
            size /= 2;
        }
    }

    #[test]
    fn independence_lemma() {
        use crate::points::dominates_weak;
        // adjacent same-size squares: green of the first vs the second square
        let q = build_q(16).unwrap();
        for (a1, b1, a2, b2) in [(1u64, 4u64, 5u64, 8u64), (5, 6, 7, 8), (9, 12, 13, 16)] {
            for p in 1..=(b1 - a1 + 1) {
                let g1 = q.green_point(a1, b1, p);
                for p2 in 1..=(b2 - a2 + 1) {
                    let y2 = q.yellow_point(a2, b2, p2);
                    assert!(!dominates_weak(&g1, &y2) && !dominates_weak(&y2, &g1));
                }
                for y in a2..=b2 {
                    let right = q.right_point(b2, y);
                    assert!(dominates_weak(&g1, &right));
                    let left = q.left_point(a2, y);
                    assert!(!dominates_weak(&g1, &left) && !dominates_weak(&left, &g1));
                }
            }
            for p in 1..=(b1 - a1 + 1) {
                let y1 = q.yellow_point(a1, b1, p);
                for x in a2..=b2 {
                    let top = q.top_point(b2, x);
                    assert!(dominates_weak(&y1, &top));
                    let bottom = q.bottom_point(a2, x);
                    assert!(!dominates_weak(&y1, &bottom) && !dominates_weak(&bottom, &y1));
                }
            }
        }
    }

    #[test]
    fn embed_examples() {
        for gr in [single_edge(), small_valid(), g(&["s", "b1", "t"], &["s", "u1", "t"], &[])] {
            let emb = embed_st_outerplanar(&gr).unwrap();
            assert!(verify_dominance_drawing(&emb.drawing).valid);
            let coords = emb.quad.coordinate_set();
            for p in &emb.drawing.placement {
                assert!(coords.contains(&(p.x, p.y)), "placement off Q at {p:?}");
            }
        }
    }

    #[test]
    fn embed_two_parallel_three_paths() {
        // two parallel 3-edge paths with one upward edge
        let gr = g(
            &["s", "b1", "b2", "t"],
            &["s", "u1", "u2", "t"],
            &[("b1", "u2", Dir::Up)],
        );
        assert!(validate(&gr).ok);
        let emb = embed_st_outerplanar(&gr).unwrap();
        assert!(verify_dominance_drawing(&emb.drawing).valid);
    }

    #[test]
    fn skew_sum_examples() {
        let one = Permutation::identity(1);
        let p321 = skew_sum(&skew_sum(&one, &one), &one);
        assert_eq!(p321, "3 2 1".parse().unwrap());
        let s = skew_sum(&"1 2".parse().unwrap(), &"2 1".parse().unwrap());
        assert_eq!(s, "3 4 2 1".parse().unwrap());
    }

    #[test]
    fn skew_riffles_small() {
        let sr = skew_riffles_upto(3);
        // all of S_3 except none: 123, 132, 213, 231, 312 are riffles; 321 is
        // a skew sum of singletons
        assert!(sr.contains(&"3 2 1".parse().unwrap()));
        assert_eq!(sr.iter().filter(|p| p.len() == 3).count(), 6);
    }

    #[test]
    fn skew_riffle_superpattern_contains_chains() {
        let ps = skew_riffle_superpattern(8).unwrap();
        assert_eq!(ps.len(), 4 * 8 + 2 * 8 * 2);
        let text = points_to_permutation(&shear(&ps)).unwrap();
        for s in ["5 4 3 2 1", "5 4 3 1 2", "3 4 5 2 1", "4 5 1 2 3"] {
            let pat: Permutation = s.parse().unwrap();
            assert!(contains_pattern(&text, &pat).is_some(), "missing {s}");
        }
    }

    #[test]
    fn json_roundtrip() {
        let gr = small_valid();
        let text = serde_json::to_string(&gr).unwrap();
        assert!(text.contains("\"dir\":\"up\""));
        let back: StOuterplanarGraph = serde_json::from_str(&text).unwrap();
        assert_eq!(back, gr);
    }
}
