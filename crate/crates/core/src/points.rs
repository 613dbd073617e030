//! Planar point sets with exact rational coordinates.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::perm::Permutation;
use crate::{Error, Result};

/// Exact rational coordinate.
pub type Coord = Ratio<i64>;

/// Color tag on a point of a universal point set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tag {
    Black,
    Red,
    Blue,
    Green,
    Yellow,
}

/// A tagged, optionally labelled planar point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Point {
    #[serde(serialize_with = "ser_coord", deserialize_with = "de_coord")]
    pub x: Coord,
    #[serde(serialize_with = "ser_coord", deserialize_with = "de_coord")]
    pub y: Coord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tag: Option<Tag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl Point {
    pub fn new(x: Coord, y: Coord) -> Self {
        Self {
            x,
            y,
            tag: None,
            label: None,
        }
    }

    pub fn tagged(x: Coord, y: Coord, tag: Tag) -> Self {
        Self {
            x,
            y,
            tag: Some(tag),
            label: None,
        }
    }
}

fn ser_coord<S: Serializer>(c: &Coord, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&coord_string(c))
}

fn de_coord<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Coord, D::Error> {
    let s = String::deserialize(d)?;
    parse_coord(&s).map_err(|e| D::Error::custom(e.to_string()))
}

/// Render a coordinate as `"p"` or `"p/q"`.
pub fn coord_string(c: &Coord) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Parse `"p"` or `"p/q"`.
pub fn parse_coord(s: &str) -> Result<Coord> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let n: i64 = num
        .parse()
        .map_err(|e| Error::Format(format!("bad rational {s:?}: {e}")))?;
    let d: i64 = den
        .parse()
        .map_err(|e| Error::Format(format!("bad rational {s:?}: {e}")))?;
    if d == 0 {
        return Err(Error::Format(format!("zero denominator in {s:?}")));
    }
    Ok(Ratio::new(n, d))
}

/// An ordered collection of points.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointSet {
    pub points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Self {
        Self { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Fail if any two points coincide exactly.
    pub fn check_distinct(&self) -> Result<()> {
        let mut seen: Vec<(Coord, Coord)> = self.points.iter().map(|p| (p.x, p.y)).collect();
        seen.sort();
        for w in seen.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Precondition(format!(
                    "duplicate point ({}, {})",
                    coord_string(&w[0].0),
                    coord_string(&w[0].1)
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serde_json::to_string(self).map_err(|_| fmt::Error)?)
    }
}

impl FromStr for PointSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))
    }
}

/// plot(σ) = {(i, σ_i)}.
pub fn plot(p: &Permutation) -> PointSet {
    PointSet::new(
        (1..=p.len())
            .map(|i| Point::new(Ratio::from_integer(i as i64), Ratio::from_integer(p.at(i) as i64)))
            .collect(),
    )
}

/// Eliminate tied coordinates: scale by the common denominator L so all
/// coordinates become integers, then (x, y) ↦ (x·N + y, y·N + x) with
/// N = 1 + max |coordinate| after scaling.
///
/// For any pair, weak dominance (x ≤ x' and y ≤ y', not both equal) becomes
/// strict dominance in both sheared coordinates, and incomparable pairs stay
/// incomparable; so the transform is safe exactly when ties occur only
/// between comparable points.
pub fn shear(ps: &PointSet) -> PointSet {
    let mut denom: i64 = 1;
    for p in &ps.points {
        for c in [p.x, p.y] {
            denom = denom.lcm(c.denom());
        }
    }
    let scale = Ratio::from_integer(denom);
    let mut bound: i64 = 0;
    for p in &ps.points {
        for c in [p.x, p.y] {
            bound = bound.max((c * scale).abs().to_integer());
        }
    }
    let n = Ratio::from_integer(bound + 1);
    PointSet::new(
        ps.points
            .iter()
            .map(|p| Point {
                x: (p.x * scale) * n + p.y * scale,
                y: (p.y * scale) * n + p.x * scale,
                tag: p.tag,
                label: p.label.clone(),
            })
            .collect(),
    )
}

/// Replace coordinates by ranks: the permutation mapping x-rank to y-rank.
///
/// Requires all x distinct and all y distinct; shear first otherwise.
pub fn points_to_permutation(ps: &PointSet) -> Result<Permutation> {
    let m = ps.len();
    let mut by_x: Vec<usize> = (0..m).collect();
    by_x.sort_by_key(|&i| ps.points[i].x);
    for w in by_x.windows(2) {
        if ps.points[w[0]].x == ps.points[w[1]].x {
            return Err(Error::TiedCoordinates(format!(
                "two points share x = {}; shear first",
                coord_string(&ps.points[w[0]].x)
            )));
        }
    }
    let mut by_y: Vec<usize> = (0..m).collect();
    by_y.sort_by_key(|&i| ps.points[i].y);
    for w in by_y.windows(2) {
        if ps.points[w[0]].y == ps.points[w[1]].y {
            return Err(Error::TiedCoordinates(format!(
                "two points share y = {}; shear first",
                coord_string(&ps.points[w[0]].y)
            )));
        }
    }
    let mut y_rank = vec![0usize; m];
    for (rank, &i) in by_y.iter().enumerate() {
        y_rank[i] = rank + 1;
    }
    Permutation::new(by_x.iter().map(|&i| y_rank[i]).collect())
}

/// Weak dominance: p ≤ q coordinate-wise.
pub fn dominates_weak(p: &Point, q: &Point) -> bool {
    p.x <= q.x && p.y <= q.y
}

/// Strict dominance in both coordinates.
pub fn dominates_strict(p: &Point, q: &Point) -> bool {
    p.x < q.x && p.y < q.y
}

pub fn ratio(n: i64, d: i64) -> Coord {
    Ratio::new(n, d)
}

pub fn int(n: i64) -> Coord {
    Ratio::from_integer(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn plot_roundtrip() {
        for s in ["1", "2 1", "4 1 5 2 6 3", "1 4 8 7 3 5 2 6"] {
            let q = p(s);
            assert_eq!(points_to_permutation(&plot(&q)).unwrap(), q);
        }
    }

    #[test]
    fn rank_replacement() {
        let ps = PointSet::new(vec![
            Point::new(int(10), int(5)),
            Point::new(int(20), int(1)),
            Point::new(int(30), int(7)),
        ]);
        assert_eq!(points_to_permutation(&ps).unwrap(), p("2 1 3"));
    }

    #[test]
    fn shear_separates_comparable_ties() {
        let ps = PointSet::new(vec![
            Point::new(int(1), int(1)),
            Point::new(int(1), int(2)),
            Point::new(int(2), int(3)),
        ]);
        assert!(points_to_permutation(&ps).is_err());
        let sheared = shear(&ps);
        assert_eq!(points_to_permutation(&sheared).unwrap(), p("1 2 3"));
    }

    #[test]
    fn shear_preserves_incomparability() {
        let ps = PointSet::new(vec![Point::new(int(1), int(2)), Point::new(int(2), int(1))]);
        let sheared = shear(&ps);
        assert!(!dominates_weak(&sheared.points[0], &sheared.points[1]));
        assert!(!dominates_weak(&sheared.points[1], &sheared.points[0]));
        assert_eq!(points_to_permutation(&sheared).unwrap(), p("2 1"));
    }

    #[test]
    fn json_roundtrip() {
        let ps = PointSet::new(vec![
            Point {
                x: ratio(7, 2),
                y: int(3),
                tag: Some(Tag::Yellow),
                label: Some("v1".into()),
            },
            Point::new(int(1), ratio(-1, 3)),
        ]);
        let text = serde_json::to_string(&ps).unwrap();
        assert!(text.contains("\"7/2\""));
        assert_eq!(text.parse::<PointSet>().unwrap(), ps);
    }
}
