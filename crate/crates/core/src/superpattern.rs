//! Superpattern constructions: the riffle/antiriffle family, the 321-avoiding
//! grid construction μ_n with its constructive embedder, and oracles.

use rayon::prelude::*;

use crate::board::{board_to_permutation, Board};
use crate::pattern::{contains_pattern, enumerate_avoiders_with_limit, ENUM_GUARD};
use crate::perm::{Embedding, Permutation};
use crate::points::{int, ratio, Point, PointSet, Tag};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Riffles

/// ρ_n = (n+1) 1 (n+2) 2 … (2n) n, length 2n.
pub fn riffle_superpattern_full(n: usize) -> Permutation {
    assert!(n >= 1);
    let mut v = Vec::with_capacity(2 * n);
    for i in 1..=n {
        v.push(n + i);
        v.push(i);
    }
    Permutation::new(v).unwrap()
}

/// The reduced riffle superpattern: ρ_n with its final element dropped,
/// relabeled to length 2n − 1.
pub fn riffle_superpattern(n: usize) -> Permutation {
    let full = riffle_superpattern_full(n);
    let vals = &full.values()[..2 * n - 1];
    Permutation::of_ranks(vals).unwrap()
}

/// Split a riffle into its lower run 1..k−1 and upper run k..n: returns the
/// smallest upper value k ≤ n such that the positions of 1..k−1 and of k..n
/// are each increasing. Errors if no such split exists (σ is not a riffle).
fn riffle_split(sigma: &Permutation) -> Result<usize> {
    let n = sigma.len();
    let inv = sigma.inverse();
    // longest increasing prefix / suffix of the position sequence q_v
    let mut mpfx = 1;
    while mpfx < n && inv.at(mpfx + 1) > inv.at(mpfx) {
        mpfx += 1;
    }
    let mut ksfx = n;
    while ksfx > 1 && inv.at(ksfx) > inv.at(ksfx - 1) {
        ksfx -= 1;
    }
    let hi = (mpfx + 1).min(n);
    if ksfx > hi {
        return Err(Error::Precondition(format!(
            "{sigma} is not a riffle: no increasing split"
        )));
    }
    Ok(hi)
}

/// Embed a riffle of length n into `riffle_superpattern(n)`.
///
/// With split value k, upper elements (σ_i ≥ k) go to the odd slot of pair i;
/// lower elements to the even slot, shifted down one pair past the position
/// of the value n to compensate for the dropped final element.
pub fn embed_riffle(sigma: &Permutation, n: usize) -> Result<Embedding> {
    if sigma.len() != n || n == 0 {
        return Err(Error::Precondition(format!(
            "expected a permutation of length {n}"
        )));
    }
    let k = riffle_split(sigma)?;
    debug_assert!(k <= n, "split always keeps n in the upper run");
    let jstar = sigma.position_of(n);
    let mut positions = Vec::with_capacity(n);
    for i in 1..=n {
        let pos = if sigma.at(i) >= k {
            2 * i - 1
        } else if i < jstar {
            2 * i
        } else {
            2 * (i - 1)
        };
        positions.push(pos);
    }
    let emb = Embedding { positions };
    emb.validate(&riffle_superpattern(n), sigma)?;
    Ok(emb)
}

/// inverse(ρ'_n): superpattern for the antiriffles S_n(123⁻¹-closure
/// inverses of the riffle class).
pub fn antiriffle_superpattern(n: usize) -> Permutation {
    riffle_superpattern(n).inverse()
}

/// Embed a length-n antiriffle by conjugation: embed its inverse as a riffle
/// and invert the witness.
pub fn embed_antiriffle(sigma: &Permutation, n: usize) -> Result<Embedding> {
    let inv_emb = embed_riffle(&sigma.inverse(), n)?;
    // If π embeds into τ at positions ℓ, then π⁻¹ embeds into τ⁻¹ at the
    // sorted image values τ(ℓ).
    let tau = riffle_superpattern(n);
    let mut values: Vec<usize> = inv_emb.positions.iter().map(|&p| tau.at(p)).collect();
    values.sort_unstable();
    let emb = Embedding { positions: values };
    emb.validate(&antiriffle_superpattern(n), sigma)?;
    Ok(emb)
}

/// The hollow square: 4n black points on the boundary of the region [1, n]².
///
/// Bottom and top sides carry one point per integer x with fractional y just
/// below/above the region; left and right sides are the transpose. The
/// bottom+top pair at x = i forms pair i of a riffle superpattern (read in
/// x-order after shearing), and left+right the antiriffle transpose.
pub fn combined_square(n: usize) -> PointSet {
    assert!(n >= 1);
    let d = 2 * n as i64;
    let m = n as i64;
    let mut points = Vec::with_capacity(4 * n);
    for i in 1..=m {
        // bottom: (i, i/2n)
        points.push(Point::tagged(int(i), ratio(i, d), Tag::Black));
        // top: (i, n + i/2n)
        points.push(Point::tagged(int(i), int(m) + ratio(i, d), Tag::Black));
        // left: (i/2n, i)
        points.push(Point::tagged(ratio(i, d), int(i), Tag::Black));
        // right: (n + i/2n, i)
        points.push(Point::tagged(int(m) + ratio(i, d), int(i), Tag::Black));
    }
    PointSet::new(points)
}

// ---------------------------------------------------------------------------
// The 321-superpattern μ_n

/// Grid parameters of the μ_n construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MuParams {
    pub n: usize,
    /// s = ⌈√n⌉.
    pub s: usize,
    /// Grid side 6n + 8s.
    pub g: usize,
    /// Red band width 2s + 1.
    pub band_width: usize,
    /// Blue line spacing s.
    pub line_spacing: usize,
}

impl MuParams {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut s = 1usize;
        while s * s < n {
            s += 1;
        }
        let g = 6 * n + 8 * s;
        Self {
            n,
            s,
            g,
            band_width: 2 * s + 1,
            line_spacing: s,
        }
    }

    /// Red band: cell (row i, col j) with 1 ≤ j − i ≤ 2s + 1.
    pub fn is_red(&self, i: usize, j: usize) -> bool {
        j > i && j - i <= self.band_width
    }

    /// Blue lines: i − j = k·s for k ≥ 0.
    pub fn is_blue(&self, i: usize, j: usize) -> bool {
        i >= j && (i - j) % self.s == 0
    }

    pub fn is_cell(&self, i: usize, j: usize) -> bool {
        self.is_red(i, j) || self.is_blue(i, j)
    }

    /// Reduced variant keeps the red band, the main diagonal, and blue lines
    /// k ≤ 2s truncated below column j0(k); see [`reduced_mu_board`].
    pub fn is_reduced_cell(&self, i: usize, j: usize) -> bool {
        if self.is_red(i, j) {
            return true;
        }
        if !self.is_blue(i, j) {
            return false;
        }
        let k = (i - j) / self.s;
        if k == 0 {
            return true;
        }
        if k > 2 * self.s {
            return false;
        }
        j >= self.reduced_col_floor(k)
    }

    /// First kept column on blue line k ≥ 1 in the reduced construction.
    fn reduced_col_floor(&self, k: usize) -> usize {
        let s = self.s;
        // the line is usable only where an element i units below the band can
        // reach it within the shift budget; shaving a constant slope off the
        // start keeps the count at 8n^{3/2} + O(n)
        (k * s + 2 * s + 3).saturating_sub(s.div_ceil(2)).max(1)
    }
}

/// The 0/1 chessboard of μ_n, materialized. Grid side 6n + 8s.
pub fn mu_board(n: usize) -> Board {
    let p = MuParams::new(n);
    let cells: Vec<Vec<u64>> = (1..=p.g)
        .map(|i| (1..=p.g).map(|j| u64::from(p.is_cell(i, j))).collect())
        .collect();
    Board::new(cells).expect("mu board has the full diagonal")
}

/// μ_n as a permutation: the expansion of its chessboard.
pub fn mu(n: usize) -> Permutation {
    board_to_permutation(&mu_board(n)).expect("mu board is valid")
}

/// The reduced chessboard: only the lowest 2s blue lines, each truncated at a
/// sloped floor so that total size drops from 30n^{3/2} to 22n^{3/2} + Θ(n).
pub fn reduced_mu_board(n: usize) -> Board {
    let p = MuParams::new(n);
    let cells: Vec<Vec<u64>> = (1..=p.g)
        .map(|i| {
            (1..=p.g)
                .map(|j| u64::from(p.is_reduced_cell(i, j)))
                .collect()
        })
        .collect();
    Board::new(cells).expect("reduced mu board keeps the diagonal")
}

/// |μ_n| as the sum of the two arithmetic series: red diagonals d = 1..2s+1
/// of length g − d, blue diagonals k·s for k = 0..⌊g/s⌋ of length g − ks.
pub fn mu_series_len(n: usize) -> u64 {
    let p = MuParams::new(n);
    let g = p.g as u64;
    let s = p.s as u64;
    let red: u64 = (1..=2 * s + 1).map(|d| g - d).sum();
    let blue: u64 = (0..=g / s).map(|k| g - k * s).sum();
    red + blue
}

/// |μ_n| by arithmetic cell count (no materialization).
pub fn mu_len(n: usize) -> u64 {
    let p = MuParams::new(n);
    let (g, s) = (p.g as u64, p.s as u64);
    let red: u64 = (1..=(2 * s + 1).min(g - 1)).map(|d| g - d).sum();
    let blue: u64 = (0..)
        .map(|k| k * s)
        .take_while(|&d| d < g)
        .map(|d| g - d)
        .sum();
    red + blue
}

/// Reduced cell count, arithmetic.
pub fn reduced_mu_len(n: usize) -> u64 {
    let p = MuParams::new(n);
    let (g, s) = (p.g as u64, p.s as u64);
    let red: u64 = (1..=(2 * s + 1).min(g - 1)).map(|d| g - d).sum();
    let mut blue: u64 = g; // k = 0 diagonal
    for k in 1..=2 * s {
        if k * s >= g {
            break;
        }
        let len = g - k * s; // columns 1..len lie on the line
        let floor = p.reduced_col_floor(k as usize) as u64;
        if floor <= len {
            blue += len - floor + 1;
        }
    }
    red + blue
}

// ---------------------------------------------------------------------------
// 321 decomposition and the diagonal embedding

/// Partition of a 321-avoider into its left-to-right maxima (upper) and the
/// rest (lower); both subsequences are value-increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition321 {
    /// 1-based indices of the left-to-right maxima.
    pub upper: Vec<usize>,
    /// 1-based indices of everything else.
    pub lower: Vec<usize>,
}

pub fn decompose_321(sigma: &Permutation) -> Result<Decomposition321> {
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    let mut best = 0;
    let mut last_lower = 0;
    for i in 1..=sigma.len() {
        let v = sigma.at(i);
        if v > best {
            best = v;
            upper.push(i);
        } else {
            if v < last_lower {
                return Err(Error::Precondition(format!(
                    "{sigma} contains 321; cannot decompose"
                )));
            }
            last_lower = v;
            lower.push(i);
        }
    }
    Ok(Decomposition321 { upper, lower })
}

/// Integer grid placement of a permutation's plot during the μ embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridEmbedding {
    /// Per σ-index (column, row) cells in the g × g index space.
    pub cells: Vec<(usize, usize)>,
    pub up_shifts: usize,
    pub right_shifts: usize,
}

/// Place a 321-avoider in the bottom-right triangle of a 2n × 2n grid with
/// the upper subsequence on the main diagonal.
///
/// Walk the upper points left to right; a point below the diagonal is lifted
/// onto it by shifting it and everything above it up, a point above by
/// shifting it and everything to its right rightward.
pub fn initial_diagonal_embed(sigma: &Permutation) -> Result<Vec<(i64, i64)>> {
    let d = decompose_321(sigma)?;
    let n = sigma.len() as i64;
    let mut pts: Vec<(i64, i64)> = (1..=sigma.len())
        .map(|i| (i as i64, sigma.at(i) as i64))
        .collect();
    for &ui in &d.upper {
        let (x, y) = pts[ui - 1];
        if y < x {
            let delta = x - y;
            for p in pts.iter_mut() {
                if p.1 >= y {
                    p.1 += delta;
                }
            }
        } else if y > x {
            let delta = y - x;
            for p in pts.iter_mut() {
                if p.0 >= x {
                    p.0 += delta;
                }
            }
        }
    }
    for &ui in &d.upper {
        let (x, y) = pts[ui - 1];
        if x != y {
            return Err(Error::Internal(format!(
                "upper point {ui} of {sigma} off-diagonal at ({x}, {y})"
            )));
        }
    }
    for &(x, y) in &pts {
        if y > x || x < 1 || y < 1 || x > 2 * n || y > 2 * n {
            return Err(Error::Internal(format!(
                "point ({x}, {y}) escapes the bottom-right triangle of the {} grid",
                2 * n
            )));
        }
    }
    Ok(pts)
}

/// Embed a 321-avoider of length ≤ n into the nonzero cells of μ_n.
///
/// After the diagonal embedding, each lower point is driven into the middle
/// half of the red band by upward or rightward shifts of stride s; upper
/// points ride along and stay on blue lines throughout.
pub fn embed_321(sigma: &Permutation, n: usize) -> Result<GridEmbedding> {
    if sigma.len() > n {
        return Err(Error::Precondition(format!(
            "length {} exceeds n = {n}",
            sigma.len()
        )));
    }
    if sigma.is_empty() {
        return Ok(GridEmbedding {
            cells: vec![],
            up_shifts: 0,
            right_shifts: 0,
        });
    }
    let p = MuParams::new(n);
    let s = p.s as i64;
    let d = decompose_321(sigma)?;
    let mut pts = initial_diagonal_embed(sigma)?;
    let mut up_shifts = 0usize;
    let mut right_shifts = 0usize;
    for &li in &d.lower {
        let (x, y) = pts[li - 1];
        let dist = x - y;
        if dist > 2 * s + 1 {
            // too deep below the band: lift it (and everything above it)
            let u = (2 * (dist - 2 * s - 1) + s).div_euclid(2 * s)
                + i64::from((2 * (dist - 2 * s - 1) + s) % (2 * s) != 0);
            let y0 = y;
            for p in pts.iter_mut() {
                if p.1 >= y0 {
                    p.1 += u * s;
                }
            }
            up_shifts += u as usize;
        } else if dist < 1 {
            // Dragged above the band by earlier lifts: push it right, but only
            // just far enough. The point drifted above the band solely through
            // upward shifts, so the minimal push keeps every point's rightward
            // shift count at or below its upward count, which is what keeps
            // the upper points on the blue lines.
            let r = (1 - dist).div_euclid(s) + i64::from((1 - dist) % s != 0);
            let x0 = x;
            for p in pts.iter_mut() {
                if p.0 >= x0 {
                    p.0 += r * s;
                }
            }
            right_shifts += r as usize;
        }
        let (x, y) = pts[li - 1];
        if !(1..=2 * s + 1).contains(&(x - y)) {
            return Err(Error::Internal(format!(
                "lower point {li} missed the band: ({x}, {y})"
            )));
        }
    }
    if up_shifts > 4 * p.s || right_shifts > 4 * p.s {
        return Err(Error::Internal(format!(
            "shift budget exceeded: {up_shifts} up, {right_shifts} right, s = {}",
            p.s
        )));
    }
    // final sanity: all cells nonzero in μ, inside the grid, order preserved
    let mut is_upper = vec![false; pts.len() + 1];
    for &ui in &d.upper {
        is_upper[ui] = true;
    }
    let mut cells = Vec::with_capacity(pts.len());
    for (idx, &(x, y)) in pts.iter().enumerate() {
        let (col, row) = (x as usize, y as usize);
        if x < 1 || y < 1 || col > p.g || row > p.g {
            return Err(Error::Internal(format!(
                "cell ({x}, {y}) outside the {} grid",
                p.g
            )));
        }
        let on_mu = if is_upper[idx + 1] {
            row >= col && (row - col) % p.s == 0
        } else {
            p.is_red(row, col)
        };
        if !on_mu {
            return Err(Error::Internal(format!(
                "cell ({x}, {y}) lands on a zero cell of mu_{n}"
            )));
        }
        cells.push((col, row));
    }
    for w in pts.windows(2) {
        if w[1].0 <= w[0].0 {
            return Err(Error::Internal("columns not increasing".into()));
        }
    }
    let mut by_val: Vec<usize> = (0..pts.len()).collect();
    by_val.sort_by_key(|&i| sigma.at(i + 1));
    for w in by_val.windows(2) {
        if pts[w[1]].1 <= pts[w[0]].1 {
            return Err(Error::Internal("rows not increasing with value".into()));
        }
    }
    Ok(GridEmbedding {
        cells,
        up_shifts,
        right_shifts,
    })
}

/// O(1)-per-cell index arithmetic for μ_n: positions and values of grid cells
/// in `mu(n)` without materializing the board.
pub struct MuIndex {
    pub params: MuParams,
    col_off: Vec<u64>,
    row_off: Vec<u64>,
}

impl MuIndex {
    pub fn new(n: usize) -> Self {
        let p = MuParams::new(n);
        let (g, s) = (p.g as u64, p.s as u64);
        let mut col_off = vec![0u64; p.g + 1];
        let mut row_off = vec![0u64; p.g + 1];
        for j in 1..=g {
            let red = (j - 1).min(2 * s + 1);
            let blue = (g - j) / s + 1;
            col_off[j as usize] = col_off[j as usize - 1] + red + blue;
        }
        for i in 1..=g {
            let red = (g - i).min(2 * s + 1);
            let blue = (i - 1) / s + 1;
            row_off[i as usize] = row_off[i as usize - 1] + red + blue;
        }
        Self {
            params: p,
            col_off,
            row_off,
        }
    }

    pub fn len(&self) -> u64 {
        self.col_off[self.params.g]
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// 1-based position in mu(n) of the element at cell (row i, col j).
    pub fn cell_position(&self, i: usize, j: usize) -> u64 {
        debug_assert!(self.params.is_cell(i, j));
        let s = self.params.s as u64;
        let (iu, ju) = (i as u64, j as u64);
        // cells of column j strictly below row i
        let red_lo = ju.saturating_sub(2 * s + 1).max(1);
        let red_below = if ju > 1 && iu > red_lo {
            (iu.min(ju) - red_lo).min(2 * s + 1)
        } else {
            0
        };
        let blue_below = if iu > ju { (iu - 1 - ju) / s + 1 } else { 0 };
        self.col_off[j - 1] + red_below + blue_below + 1
    }

    /// Value in mu(n) of the element at cell (row i, col j).
    pub fn cell_value(&self, i: usize, j: usize) -> u64 {
        debug_assert!(self.params.is_cell(i, j));
        let s = self.params.s as u64;
        let (iu, ju) = (i as u64, j as u64);
        let left = if ju <= iu {
            // blue cell: blue cells of row i strictly left of col j
            (iu - 1) / s - (iu - ju) / s
        } else {
            // red cell: all blues of the row plus reds in (i, j)
            (iu - 1) / s + 1 + (ju - 1 - iu)
        };
        self.row_off[i - 1] + left + 1
    }
}

/// Convert a grid embedding of σ into a containment witness into mu(n).
pub fn grid_to_mu_embedding(
    sigma: &Permutation,
    grid: &GridEmbedding,
    idx: &MuIndex,
) -> Result<Embedding> {
    let positions: Vec<usize> = grid
        .cells
        .iter()
        .map(|&(col, row)| idx.cell_position(row, col) as usize)
        .collect();
    // positions follow σ's column order, hence increase; cross-check values
    let values: Vec<usize> = grid
        .cells
        .iter()
        .map(|&(col, row)| idx.cell_value(row, col) as usize)
        .collect();
    let iso = Permutation::of_ranks(&values)?;
    if iso != *sigma {
        return Err(Error::Internal(format!(
            "mu cell values have order type {iso}, want {sigma}"
        )));
    }
    Ok(Embedding { positions })
}

/// Embed σ into mu(n) end to end and return the validated witness.
pub fn embed_321_into_mu(sigma: &Permutation, n: usize) -> Result<Embedding> {
    let grid = embed_321(sigma, n)?;
    let idx = MuIndex::new(n);
    grid_to_mu_embedding(sigma, &grid, &idx)
}

// ---------------------------------------------------------------------------
// Oracles

/// Brute-force superpattern check: every length-n avoider of `forbidden`
/// must occur in `sp`. Returns the first counterexample on failure.
pub fn verify_superpattern(
    sp: &Permutation,
    n: usize,
    forbidden: &[Permutation],
) -> Result<std::result::Result<(), Permutation>> {
    verify_superpattern_with_limit(sp, n, forbidden, ENUM_GUARD)
}

pub fn verify_superpattern_with_limit(
    sp: &Permutation,
    n: usize,
    forbidden: &[Permutation],
    limit: usize,
) -> Result<std::result::Result<(), Permutation>> {
    let avoiders = enumerate_avoiders_with_limit(n, forbidden, limit)?;
    let missing = avoiders
        .par_iter()
        .enumerate()
        .filter(|(_, q)| contains_pattern(sp, q).is_none())
        .min_by_key(|(i, _)| *i);
    Ok(match missing {
        Some((_, q)) => Err(q.clone()),
        None => Ok(()),
    })
}

/// The classical n²-size superpattern: value (j−1)·n + i at position
/// (i−1)·n + j. Contains every length-n permutation.
pub fn generic_superpattern(n: usize) -> Permutation {
    assert!(n >= 1);
    let mut v = vec![0usize; n * n];
    for i in 1..=n {
        for j in 1..=n {
            v[(i - 1) * n + j - 1] = (j - 1) * n + i;
        }
    }
    Permutation::new(v).unwrap()
}

/// Constructive witness into `generic_superpattern(n)`: σ_i sits at position
/// (i−1)·n + σ_i.
pub fn embed_generic(sigma: &Permutation, n: usize) -> Result<Embedding> {
    if sigma.len() > n {
        return Err(Error::Precondition(format!(
            "length {} exceeds n = {n}",
            sigma.len()
        )));
    }
    let emb = Embedding {
        positions: (1..=sigma.len()).map(|i| (i - 1) * n + sigma.at(i)).collect(),
    };
    emb.validate(&generic_superpattern(n), sigma)?;
    Ok(emb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{all_riffles, enumerate_avoiders};

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn rho_examples() {
        assert_eq!(riffle_superpattern_full(3), p("4 1 5 2 6 3"));
        assert_eq!(riffle_superpattern(3), p("3 1 4 2 5"));
        assert_eq!(riffle_superpattern(1), p("1"));
        for n in 1..=12 {
            assert_eq!(riffle_superpattern(n).len(), 2 * n - 1);
        }
    }

    #[test]
    fn embed_riffle_examples() {
        let emb = embed_riffle(&p("1 3 2"), 3).unwrap();
        assert_eq!(emb.positions, vec![2, 3, 4]);
        embed_riffle(&p("1 2 3"), 3).unwrap();
        embed_riffle(&p("3 1 2"), 3).unwrap();
        assert!(embed_riffle(&p("3 2 1"), 3).is_err());
    }

    #[test]
    fn embed_all_riffles_small() {
        for n in 1..=8 {
            let sp = riffle_superpattern(n);
            for r in all_riffles(n) {
                let emb = embed_riffle(&r, n).unwrap();
                emb.validate(&sp, &r).unwrap();
            }
        }
    }

    #[test]
    fn antiriffle_conjugation() {
        assert_eq!(antiriffle_superpattern(3), riffle_superpattern(3).inverse());
        assert_eq!(antiriffle_superpattern(1), p("1"));
        for n in 2..=7 {
            let sp = antiriffle_superpattern(n);
            for r in all_riffles(n) {
                let anti = r.inverse();
                let emb = embed_antiriffle(&anti, n).unwrap();
                emb.validate(&sp, &anti).unwrap();
            }
        }
        // not an antiriffle: 2143 is its own inverse and not a riffle
        assert!(embed_antiriffle(&p("2 1 4 3"), 4).is_err());
    }

    #[test]
    fn combined_square_contains_both() {
        use crate::pattern::contains;
        use crate::points::{points_to_permutation, shear};
        let sq = combined_square(2);
        assert_eq!(sq.len(), 8);
        let perm = points_to_permutation(&shear(&sq)).unwrap();
        assert!(contains(&perm, &riffle_superpattern_full(2)));
        assert!(contains(&perm, &riffle_superpattern_full(2).inverse()));
        assert!(combined_square(1).len() <= 4);
    }

    #[test]
    fn combined_square_horizontal_is_riffle_superpattern() {
        use crate::points::{points_to_permutation, shear, PointSet};
        for n in [3usize, 4] {
            let sq = combined_square(n);
            let horiz: Vec<_> = sq
                .points
                .iter()
                .filter(|pt| *pt.x.denom() == 1)
                .cloned()
                .collect();
            let perm = points_to_permutation(&shear(&PointSet::new(horiz))).unwrap();
            for r in all_riffles(n) {
                assert!(contains_pattern(&perm, &r).is_some(), "riffle {r} in n={n}");
            }
        }
    }

    #[test]
    fn mu_board_small() {
        let pm = MuParams::new(4);
        assert_eq!(pm.s, 2);
        assert_eq!(pm.g, 40);
        assert!(pm.is_red(1, 3));
        assert!(!pm.is_red(3, 1));
        assert!(pm.is_blue(5, 3));
        assert!(!pm.is_blue(4, 3));
        let b = mu_board(1);
        assert_eq!(b.total(), mu_series_len(1));
    }

    #[test]
    fn mu_lengths_agree() {
        for n in [1, 2, 3, 4, 9, 16] {
            let b = mu_board(n);
            assert_eq!(b.total(), mu_series_len(n), "n={n}");
            assert_eq!(mu_len(n), mu_series_len(n), "n={n}");
            let r = reduced_mu_board(n);
            assert_eq!(r.total(), reduced_mu_len(n), "n={n}");
            assert!(r.total() <= b.total());
        }
    }

    #[test]
    fn decompose_examples() {
        let d = decompose_321(&p("2 4 1 3")).unwrap();
        assert_eq!(d.upper, vec![1, 2]);
        assert_eq!(d.lower, vec![3, 4]);
        let d = decompose_321(&p("1 2 3")).unwrap();
        assert_eq!(d.upper, vec![1, 2, 3]);
        assert!(d.lower.is_empty());
        let d = decompose_321(&p("3 1 2")).unwrap();
        assert_eq!(d.upper, vec![1]);
        assert_eq!(d.lower, vec![2, 3]);
        assert!(decompose_321(&p("3 2 1")).is_err());
    }

    #[test]
    fn diagonal_embed_examples() {
        assert_eq!(initial_diagonal_embed(&p("1 2")).unwrap(), vec![(1, 1), (2, 2)]);
        assert_eq!(initial_diagonal_embed(&p("2 1")).unwrap(), vec![(2, 2), (3, 1)]);
        assert_eq!(
            initial_diagonal_embed(&p("2 3 1")).unwrap(),
            vec![(2, 2), (3, 3), (4, 1)]
        );
    }

    #[test]
    fn embed_321_identity_on_diagonal() {
        for n in [1usize, 4, 9] {
            let grid = embed_321(&Permutation::identity(n), n).unwrap();
            for &(c, r) in &grid.cells {
                assert_eq!(c, r);
            }
            assert_eq!(grid.up_shifts, 0);
        }
    }

    #[test]
    fn embed_321_exhaustive_small() {
        for n in 1..=6 {
            let idx = MuIndex::new(n);
            let text = mu(n);
            for sigma in enumerate_avoiders(n, &[p("3 2 1")]).unwrap() {
                let grid = embed_321(&sigma, n).unwrap();
                let emb = grid_to_mu_embedding(&sigma, &grid, &idx).unwrap();
                emb.validate(&text, &sigma).unwrap();
            }
        }
    }

    #[test]
    fn mu_index_matches_board_expansion() {
        for n in [1usize, 2, 3, 5] {
            let pm = MuParams::new(n);
            let idx = MuIndex::new(n);
            let perm = mu(n);
            assert_eq!(idx.len(), perm.len() as u64);
            for i in 1..=pm.g {
                for j in 1..=pm.g {
                    if pm.is_cell(i, j) {
                        let pos = idx.cell_position(i, j) as usize;
                        let val = idx.cell_value(i, j) as usize;
                        assert_eq!(perm.at(pos), val, "n={n} cell ({i},{j})");
                    }
                }
            }
        }
    }

    #[test]
    fn verify_superpattern_examples() {
        assert!(verify_superpattern(&p("1 2 3"), 2, &[]).unwrap().is_err());
        let res = verify_superpattern(&mu(4), 4, &[p("3 2 1")]).unwrap();
        assert!(res.is_ok());
        let res = verify_superpattern(
            &riffle_superpattern(6),
            6,
            &crate::pattern::riffle_forbidden(),
        )
        .unwrap();
        assert!(res.is_ok());
    }

    #[test]
    fn generic_superpattern_examples() {
        assert_eq!(generic_superpattern(2), p("1 3 2 4"));
        assert_eq!(generic_superpattern(1), p("1"));
        let res = verify_superpattern(&generic_superpattern(4), 4, &[]).unwrap();
        assert!(res.is_ok());
        for sigma in enumerate_avoiders(4, &[]).unwrap() {
            embed_generic(&sigma, 4).unwrap();
        }
    }

    #[test]
    fn mu_permutation_length_matches_cell_count() {
        for n in [1usize, 2, 4, 9] {
            assert_eq!(mu(n).len() as u64, mu_len(n));
        }
    }
}
