//! Projective lines and points with integer coordinates, and the incidence
//! structure of a line arrangement.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn canonical(mut v: [BigInt; 3]) -> Result<[BigInt; 3]> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    let first = v.iter().find(|x| !x.is_zero()).expect("nonzero");
    let g = if first.is_negative() { -g } else { g };
    for x in v.iter_mut() {
        *x = &*x / &g;
    }
    Ok(v)
}

fn cross(a: &[BigInt; 3], b: &[BigInt; 3]) -> [BigInt; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn dot(a: &[BigInt; 3], b: &[BigInt; 3]) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

fn fmt_triple(v: &[BigInt; 3], open: char, sep: char, close: char, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "{open}{}{sep}{}{sep}{}{close}", v[0], v[1], v[2])
}

/// The line `a0*z0 + a1*z1 + a2*z2 = 0`, stored primitive with its first
/// nonzero coefficient positive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ProjLine {
    coeffs: [BigInt; 3],
}

impl ProjLine {
    pub fn new(coeffs: [BigInt; 3]) -> Result<Self> {
        Ok(ProjLine { coeffs: canonical(coeffs)? })
    }

    pub fn from_i64(a0: i64, a1: i64, a2: i64) -> Result<Self> {
        Self::new([a0.into(), a1.into(), a2.into()])
    }

    pub fn coeffs(&self) -> &[BigInt; 3] {
        &self.coeffs
    }

    /// Value of the linear form at the given homogeneous coordinates.
    pub fn eval(&self, p: &ProjPoint) -> BigInt {
        dot(&self.coeffs, &p.coords)
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.eval(p).is_zero()
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_triple(&self.coeffs, '[', ',', ']', f)
    }
}

/// A point `(z0 : z1 : z2)` in canonical primitive form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ProjPoint {
    coords: [BigInt; 3],
}

impl ProjPoint {
    pub fn new(coords: [BigInt; 3]) -> Result<Self> {
        Ok(ProjPoint { coords: canonical(coords)? })
    }

    pub fn from_i64(z0: i64, z1: i64, z2: i64) -> Result<Self> {
        Self::new([z0.into(), z1.into(), z2.into()])
    }

    pub fn coords(&self) -> &[BigInt; 3] {
        &self.coords
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_triple(&self.coords, '(', ':', ')', f)
    }
}

/// Intersection point of two distinct lines.
pub fn intersect(l1: &ProjLine, l2: &ProjLine) -> Result<ProjPoint> {
    if l1 == l2 {
        return Err(Error::IdenticalLines(l1.to_string()));
    }
    ProjPoint::new(cross(&l1.coeffs, &l2.coeffs))
}

/// Line through two distinct points.
pub fn join(p1: &ProjPoint, p2: &ProjPoint) -> Result<ProjLine> {
    if p1 == p2 {
        return Err(Error::InvalidArrangement(format!("cannot join {p1} with itself")));
    }
    ProjLine::new(cross(&p1.coords, &p2.coords))
}

/// An ordered list of pairwise distinct lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrangement {
    lines: Vec<ProjLine>,
}

impl Arrangement {
    pub fn new(lines: Vec<ProjLine>) -> Result<Self> {
        if lines.len() < 2 {
            return Err(Error::InvalidArrangement(format!(
                "need at least 2 lines, got {}",
                lines.len()
            )));
        }
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                if lines[i] == lines[j] {
                    return Err(Error::InvalidArrangement(format!(
                        "L{} and L{} are the same line {}",
                        i + 1,
                        j + 1,
                        lines[i]
                    )));
                }
            }
        }
        Ok(Arrangement { lines })
    }

    pub fn from_i64(coeffs: &[[i64; 3]]) -> Result<Self> {
        let lines = coeffs
            .iter()
            .map(|c| ProjLine::from_i64(c[0], c[1], c[2]))
            .collect::<Result<Vec<_>>>()?;
        Self::new(lines)
    }

    pub fn lines(&self) -> &[ProjLine] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }
}

/// A point where at least two lines of an arrangement meet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplePoint {
    pub point: ProjPoint,
    /// Zero-based indices of the incident lines, increasing.
    pub lines: Vec<usize>,
}

impl MultiplePoint {
    pub fn multiplicity(&self) -> usize {
        self.lines.len()
    }

    pub fn on_line(&self, line: usize) -> bool {
        self.lines.binary_search(&line).is_ok()
    }

    /// One-based line labels, e.g. `{1,2,3,4}`.
    pub fn label(&self) -> String {
        let parts: Vec<String> = self.lines.iter().map(|i| (i + 1).to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceData {
    pub n_lines: usize,
    /// Sorted by the canonical point order.
    pub points: Vec<MultiplePoint>,
}

impl IncidenceData {
    /// Number of points of each multiplicity, keyed by `r`.
    pub fn census(&self) -> BTreeMap<usize, usize> {
        let mut c = BTreeMap::new();
        for p in &self.points {
            *c.entry(p.multiplicity()).or_insert(0) += 1;
        }
        c
    }

    /// Index of the point whose incident lines are exactly `lines` (zero-based).
    pub fn find(&self, lines: &[usize]) -> Option<usize> {
        let mut key = lines.to_vec();
        key.sort_unstable();
        self.points.iter().position(|p| p.lines == key)
    }

    pub fn points_on(&self, line: usize) -> impl Iterator<Item = (usize, &MultiplePoint)> {
        self.points.iter().enumerate().filter(move |(_, p)| p.on_line(line))
    }
}

/// Group all pairwise intersections of the arrangement into multiple points.
pub fn compute_incidence(a: &Arrangement) -> IncidenceData {
    let mut groups: BTreeMap<ProjPoint, Vec<usize>> = BTreeMap::new();
    let lines = a.lines();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let p = intersect(&lines[i], &lines[j]).expect("arrangement lines are distinct");
            let entry = groups.entry(p).or_default();
            for idx in [i, j] {
                if !entry.contains(&idx) {
                    entry.push(idx);
                }
            }
        }
    }
    let points = groups
        .into_iter()
        .map(|(point, mut lines)| {
            lines.sort_unstable();
            MultiplePoint { point, lines }
        })
        .collect();
    IncidenceData { n_lines: a.len(), points }
}
