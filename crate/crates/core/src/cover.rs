//! Character data of an abelian cover, the loop class `epsilon` around an
//! exceptional curve, and the smoothness classification of multiple points.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Arrangement, IncidenceData, ProjPoint};
use crate::linalg;

/// An element of `(Z/qZ)^k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GroupElement {
    pub q: u64,
    pub entries: Vec<u64>,
}

impl GroupElement {
    pub fn new(q: u64, entries: Vec<u64>) -> Self {
        let entries = entries.into_iter().map(|x| x % q).collect();
        GroupElement { q, entries }
    }

    pub fn from_i64(q: u64, entries: &[i64]) -> Self {
        let qi = q as i64;
        GroupElement {
            q,
            entries: entries.iter().map(|&x| x.rem_euclid(qi) as u64).collect(),
        }
    }

    pub fn zero(q: u64, k: usize) -> Self {
        GroupElement { q, entries: vec![0; k] }
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &GroupElement) -> GroupElement {
        debug_assert_eq!(self.q, other.q);
        debug_assert_eq!(self.rank(), other.rank());
        GroupElement {
            q: self.q,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| (a + b) % self.q)
                .collect(),
        }
    }

    /// The dual pairing `sum chi_j * a_j mod q`.
    pub fn pair(&self, other: &GroupElement) -> u64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .fold(0, |acc, (a, b)| (acc + a * b) % self.q)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// True iff `a` and `b` span a subgroup isomorphic to `(Z/qZ)^2`.
pub fn pair_independent(a: &GroupElement, b: &GroupElement) -> bool {
    let k = a.rank();
    linalg::rank_mod_p(&[a.entries.clone(), b.entries.clone()], k, a.q) == 2
}

/// An epimorphism from the first homology of the arrangement complement to
/// `(Z/qZ)^k`, given by the images of the meridians.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverSpec {
    arrangement: Arrangement,
    q: u64,
    k: usize,
    phi: Vec<GroupElement>,
}

impl CoverSpec {
    /// Validates primality of `q`, `k >= 2`, the zero-sum relation,
    /// surjectivity and nonvanishing of every character.
    pub fn new(arrangement: Arrangement, q: u64, k: usize, phi: Vec<GroupElement>) -> Result<Self> {
        if !linalg::is_prime(q) {
            return Err(Error::InvalidCoverSpec(format!("q = {q} is not prime")));
        }
        if k < 2 {
            return Err(Error::InvalidCoverSpec(format!("rank k = {k} must be at least 2")));
        }
        if phi.len() != arrangement.len() {
            return Err(Error::InvalidCoverSpec(format!(
                "{} characters for {} lines",
                phi.len(),
                arrangement.len()
            )));
        }
        for (i, g) in phi.iter().enumerate() {
            if g.q != q || g.rank() != k {
                return Err(Error::InvalidCoverSpec(format!(
                    "character of L{} is not an element of (Z/{q})^{k}",
                    i + 1
                )));
            }
            if g.entries.iter().any(|&x| x >= q) {
                return Err(Error::InvalidCoverSpec(format!("character of L{} is not reduced", i + 1)));
            }
            if g.is_zero() {
                return Err(Error::InvalidCoverSpec(format!("character of L{} is zero", i + 1)));
            }
        }
        let sum = phi.iter().fold(GroupElement::zero(q, k), |s, g| s.add(g));
        if !sum.is_zero() {
            return Err(Error::InvalidCoverSpec(format!("characters sum to {sum}, not zero")));
        }
        let rows: Vec<Vec<u64>> = phi.iter().map(|g| g.entries.clone()).collect();
        let rank = linalg::rank_mod_p(&rows, k, q);
        if rank != k {
            return Err(Error::InvalidCoverSpec(format!(
                "characters span a subgroup of rank {rank}, not {k}"
            )));
        }
        Ok(CoverSpec { arrangement, q, k, phi })
    }

    pub fn from_i64(arrangement: Arrangement, q: u64, phi: &[&[i64]]) -> Result<Self> {
        let k = phi.first().map_or(0, |p| p.len());
        let phi = phi.iter().map(|p| GroupElement::from_i64(q, p)).collect();
        Self::new(arrangement, q, k, phi)
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.phi.len()
    }

    pub fn phi(&self) -> &[GroupElement] {
        &self.phi
    }
}

/// Sum of the characters of the lines through a multiple point.
pub fn epsilon(lines: &[usize], spec: &CoverSpec) -> GroupElement {
    lines
        .iter()
        .fold(GroupElement::zero(spec.q, spec.k), |s, &i| s.add(&spec.phi[i]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointStatus {
    NonBranch,
    BranchGood,
    Bad,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifiedPoint {
    /// Index into `IncidenceData::points`.
    pub index: usize,
    pub point: ProjPoint,
    pub lines: Vec<usize>,
    pub epsilon: GroupElement,
    pub status: PointStatus,
    /// First incident line whose character is dependent on epsilon, for Bad points.
    pub offending_line: Option<usize>,
}

impl ClassifiedPoint {
    pub fn multiplicity(&self) -> usize {
        self.lines.len()
    }

    /// Points that are blown up: every point of multiplicity at least 3 and
    /// every non-branch double point.
    pub fn is_blown_up(&self) -> bool {
        self.multiplicity() >= 3 || self.status == PointStatus::NonBranch
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointClassification {
    pub points: Vec<ClassifiedPoint>,
}

impl PointClassification {
    /// Number of non-branch points of multiplicity `r`.
    pub fn t_prime(&self, r: usize) -> usize {
        self.points
            .iter()
            .filter(|p| p.multiplicity() == r && p.status == PointStatus::NonBranch)
            .count()
    }

    /// Number of branch points of multiplicity `r`.
    pub fn t_double_prime(&self, r: usize) -> usize {
        self.points
            .iter()
            .filter(|p| p.multiplicity() == r && p.status != PointStatus::NonBranch)
            .count()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity()).max().unwrap_or(0)
    }

    /// Indices (into `points`) of the blown-up set, in point order.
    pub fn blowup_set(&self) -> Vec<usize> {
        (0..self.points.len()).filter(|&i| self.points[i].is_blown_up()).collect()
    }

    pub fn first_bad(&self) -> Option<&ClassifiedPoint> {
        self.points.iter().find(|p| p.status == PointStatus::Bad)
    }
}

pub fn classify_points(spec: &CoverSpec, inc: &IncidenceData) -> PointClassification {
    let points = inc
        .points
        .iter()
        .enumerate()
        .map(|(index, mp)| {
            let eps = epsilon(&mp.lines, spec);
            let (status, offending_line) = if eps.is_zero() {
                (PointStatus::NonBranch, None)
            } else {
                match mp.lines.iter().find(|&&i| !pair_independent(&eps, &spec.phi[i])) {
                    None => (PointStatus::BranchGood, None),
                    Some(&i) => (PointStatus::Bad, Some(i)),
                }
            };
            ClassifiedPoint {
                index,
                point: mp.point.clone(),
                lines: mp.lines.clone(),
                epsilon: eps,
                status,
                offending_line,
            }
        })
        .collect();
    PointClassification { points }
}

/// Fails with `BadPoint` if the cover acquires a singularity not resolved by
/// the standard blow-up.
pub fn ensure_good(spec: &CoverSpec, cls: &PointClassification) -> Result<()> {
    match cls.first_bad() {
        None => Ok(()),
        Some(p) => {
            let line = p.offending_line.expect("bad point records its line");
            let lines: Vec<String> = p.lines.iter().map(|i| format!("L{}", i + 1)).collect();
            Err(Error::BadPoint {
                point: p.point.to_string(),
                lines: lines.join(","),
                epsilon: p.epsilon.to_string(),
                line: line + 1,
                character: spec.phi[line].to_string(),
            })
        }
    }
}
