//! Numerical invariants K², e and χ, the Picard lattice of the blown-up
//! plane, the class D_K with q·K = f*(D_K), and the geometry of the curves
//! lying over the arrangement.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::cover::{ensure_good, CoverSpec, GroupElement, PointClassification, PointStatus};
use crate::error::{Error, Result};
use crate::linalg;

fn to_i64(x: BigInt, what: &'static str) -> Result<i64> {
    x.to_i64().ok_or(Error::Overflow(what))
}

fn big(x: usize) -> BigInt {
    BigInt::from(x)
}

/// `q^{k-2}` as an exact integer.
fn group_scale(spec: &CoverSpec) -> BigInt {
    num_traits::pow(BigInt::from(spec.q()), spec.k() - 2)
}

pub fn k_squared(spec: &CoverSpec, cls: &PointClassification) -> Result<i64> {
    ensure_good(spec, cls)?;
    let (q, n) = (big(spec.q() as usize), big(spec.n()));
    let mut acc = &q * &n - &n - BigInt::from(3) * &q;
    acc = &acc * &acc;
    for r in 2..=cls.max_multiplicity() {
        let r_big = big(r);
        let a = &r_big * &q - &q - &r_big;
        acc -= &a * &a * big(cls.t_prime(r));
        if r >= 3 {
            let b = &r_big * &q - BigInt::from(2) * &q - &r_big + 1;
            acc -= &b * &b * big(cls.t_double_prime(r));
        }
    }
    to_i64(group_scale(spec) * acc, "K^2")
}

pub fn euler_characteristic(spec: &CoverSpec, cls: &PointClassification) -> Result<i64> {
    ensure_good(spec, cls)?;
    let (q, n) = (big(spec.q() as usize), big(spec.n()));
    let q1 = &q - 1;
    let mut acc = BigInt::from(3) * &q * &q - BigInt::from(2) * &n * (&q * &q - &q);
    for r in 2..=cls.max_multiplicity() {
        acc += &q * &q * big(cls.t_prime(r));
    }
    acc += &q1 * &q1 * big(cls.t_double_prime(2));
    for r in 3..=cls.max_multiplicity() {
        acc += (big(r - 1) * &q1 * &q1 + 1) * big(cls.t_double_prime(r));
    }
    to_i64(group_scale(spec) * acc, "Euler number")
}

/// Noether's formula; fails when `K² + e` is not divisible by 12.
pub fn chi_holomorphic(k2: i64, e: i64) -> Result<i64> {
    let s = k2.checked_add(e).ok_or(Error::Overflow("K^2 + e"))?;
    if s.rem_euclid(12) != 0 {
        return Err(Error::NoetherViolation(s));
    }
    Ok(s / 12)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumericalInvariants {
    pub k2: i64,
    pub euler: i64,
    pub chi: i64,
}

pub fn numerical_invariants(spec: &CoverSpec, cls: &PointClassification) -> Result<NumericalInvariants> {
    let k2 = k_squared(spec, cls)?;
    let euler = euler_characteristic(spec, cls)?;
    let chi = chi_holomorphic(k2, euler)?;
    Ok(NumericalInvariants { k2, euler, chi })
}

/// A class `l*L + sum e_i E_i` in the Picard lattice of the blown-up plane.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticeClass {
    pub l: i64,
    pub e: Vec<i64>,
}

impl LatticeClass {
    pub fn zero(rank_e: usize) -> Self {
        LatticeClass { l: 0, e: vec![0; rank_e] }
    }

    pub fn dot(&self, other: &LatticeClass) -> i64 {
        debug_assert_eq!(self.e.len(), other.e.len());
        self.l * other.l - self.e.iter().zip(&other.e).map(|(a, b)| a * b).sum::<i64>()
    }

    pub fn square(&self) -> i64 {
        self.dot(self)
    }

    pub fn add_scaled(&mut self, c: i64, other: &LatticeClass) {
        self.l += c * other.l;
        for (a, b) in self.e.iter_mut().zip(&other.e) {
            *a += c * b;
        }
    }
}

/// Basis `L, E_1, ..., E_t` where `E_i` lies over the `i`-th blown-up point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupLattice {
    /// Indices into the classification's point list, one per exceptional curve.
    pub points: Vec<usize>,
    /// Zero-based incident lines of each blown-up point.
    pub point_lines: Vec<Vec<usize>>,
    pub n_lines: usize,
}

impl BlowupLattice {
    pub fn new(cls: &PointClassification, n_lines: usize) -> Self {
        let points = cls.blowup_set();
        let point_lines = points.iter().map(|&i| cls.points[i].lines.clone()).collect();
        BlowupLattice { points, point_lines, n_lines }
    }

    pub fn rank(&self) -> usize {
        1 + self.points.len()
    }

    pub fn line(&self) -> LatticeClass {
        LatticeClass { l: 1, ..LatticeClass::zero(self.points.len()) }
    }

    pub fn exceptional(&self, i: usize) -> LatticeClass {
        let mut c = LatticeClass::zero(self.points.len());
        c.e[i] = 1;
        c
    }

    /// Lattice indices of the blown-up points lying on line `j`.
    pub fn points_on_line(&self, j: usize) -> Vec<usize> {
        (0..self.points.len()).filter(|&i| self.point_lines[i].contains(&j)).collect()
    }

    /// Number of blown-up points on line `j`.
    pub fn t(&self, j: usize) -> usize {
        self.points_on_line(j).len()
    }

    pub fn strict_transform(&self, j: usize) -> LatticeClass {
        let mut c = self.line();
        for i in self.points_on_line(j) {
            c.e[i] = -1;
        }
        c
    }

    /// `Λ_i = L - E_i`, a general member of the pencil through point `i`.
    pub fn pencil(&self, i: usize) -> LatticeClass {
        let mut c = self.line();
        c.e[i] = -1;
        c
    }

    pub fn exceptional_label(&self, i: usize) -> String {
        let parts: Vec<String> = self.point_lines[i].iter().map(|j| (j + 1).to_string()).collect();
        format!("E[{}]", parts.join(","))
    }

    pub fn format_class(&self, c: &LatticeClass) -> String {
        let mut out = format!("{}L", c.l);
        for (i, &x) in c.e.iter().enumerate() {
            if x != 0 {
                let sign = if x < 0 { '-' } else { '+' };
                let mag = x.abs();
                let coef = if mag == 1 { String::new() } else { mag.to_string() };
                out.push_str(&format!(" {sign} {coef}{}", self.exceptional_label(i)));
            }
        }
        out
    }
}

/// `D_K = (qn-n-3q)L - sum_{T'} (rq-q-r) E_p - sum_{T''} (rq-2q-r+1) E_p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalData {
    pub d_k: LatticeClass,
}

pub fn canonical_divisor_class(
    spec: &CoverSpec,
    cls: &PointClassification,
    lat: &BlowupLattice,
) -> Result<CanonicalData> {
    ensure_good(spec, cls)?;
    let q = spec.q() as i64;
    let n = spec.n() as i64;
    let mut d_k = lat.line();
    d_k.l = q * n - n - 3 * q;
    for (i, &pi) in lat.points.iter().enumerate() {
        let p = &cls.points[pi];
        let r = p.multiplicity() as i64;
        d_k.e[i] = match p.status {
            PointStatus::NonBranch => -(r * q - q - r),
            _ => -(r * q - 2 * q - r + 1),
        };
    }
    Ok(CanonicalData { d_k })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    NonMinimalWitness,
    NonAmpleWitness,
    Ok,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityEntry {
    pub curve: String,
    pub product: i64,
    pub verdict: Verdict,
}

/// Products of D_K with every strict transform and exceptional curve. A
/// negative product exhibits a curve contracted by the canonical map of a
/// non-minimal model, a zero product a curve on which K is not ample. Only
/// these visible curves are inspected.
pub fn minimality_report(
    spec: &CoverSpec,
    cls: &PointClassification,
    lat: &BlowupLattice,
) -> Result<Vec<MinimalityEntry>> {
    let d_k = canonical_divisor_class(spec, cls, lat)?.d_k;
    let sq = d_k.square();
    if sq <= 0 {
        return Err(Error::NotBig(sq));
    }
    let entry = |curve: String, c: &LatticeClass| {
        let product = d_k.dot(c);
        let verdict = match product {
            p if p < 0 => Verdict::NonMinimalWitness,
            0 => Verdict::NonAmpleWitness,
            _ => Verdict::Ok,
        };
        MinimalityEntry { curve, product, verdict }
    };
    let mut out: Vec<MinimalityEntry> = (0..lat.n_lines)
        .map(|j| entry(format!("L~{}", j + 1), &lat.strict_transform(j)))
        .collect();
    out.extend((0..lat.points.len()).map(|i| entry(lat.exceptional_label(i), &lat.exceptional(i))));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "index")]
pub enum CurveSource {
    /// Strict transform of a line (zero-based index).
    Line(usize),
    /// Exceptional curve (lattice index).
    Exceptional(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub source: CurveSource,
    pub label: String,
    pub branch: bool,
    pub components: u64,
    pub genus: i64,
    /// Self-intersection of each component, from the pullback of the lattice class.
    pub self_intersection: i64,
    /// The same number obtained by adjunction from the genus and D_K.
    pub self_intersection_adjunction: i64,
}

fn subgroup_order(gens: &[Vec<u64>], dim: usize, q: u64) -> u64 {
    q.pow(linalg::rank_mod_p(gens, dim, q) as u32)
}

/// Fibre geometry over one curve of the blown-up plane. `stabilizer` is
/// the character of the curve (None for non-branch curves) and `meetings`
/// the characters of the branch curves crossing it.
fn hurwitz(spec: &CoverSpec, stabilizer: Option<&GroupElement>, meetings: &[GroupElement]) -> (u64, i64) {
    let q = spec.q();
    let k = spec.k();
    let base: Vec<Vec<u64>> = stabilizer.map(|s| vec![s.entries.clone()]).unwrap_or_default();
    let base_order = subgroup_order(&base, k, q);
    let quotient_order = q.pow(k as u32) / base_order;
    // each meeting point ramifies iff its character is nontrivial modulo the stabilizer
    let ramified = meetings
        .iter()
        .filter(|m| {
            let mut rows = base.clone();
            rows.push(m.entries.clone());
            linalg::rank_mod_p(&rows, k, q) > base.len()
        })
        .count() as u64;
    let mut rows = base.clone();
    rows.extend(meetings.iter().map(|m| m.entries.clone()));
    let h = subgroup_order(&rows, k, q) / base_order;
    let components = quotient_order / h;
    // 2g - 2 = |H| (N (q-1)/q - 2); every ramified point forces |H| >= q
    let twice_g_minus_2 = if ramified == 0 {
        -2 * h as i64
    } else {
        (h / q) as i64 * ramified as i64 * (q as i64 - 1) - 2 * h as i64
    };
    debug_assert!(twice_g_minus_2 % 2 == 0);
    (components, twice_g_minus_2 / 2 + 1)
}

pub fn branch_curve_report(
    spec: &CoverSpec,
    cls: &PointClassification,
    lat: &BlowupLattice,
) -> Result<Vec<CurveRecord>> {
    ensure_good(spec, cls)?;
    let d_k = canonical_divisor_class(spec, cls, lat)?.d_k;
    let q = spec.q() as i64;
    let scale = group_scale(spec).to_i64().ok_or(Error::Overflow("q^(k-2)"))?;
    let phi = spec.phi();
    let mut out = Vec::new();

    for j in 0..spec.n() {
        let mut meetings = Vec::new();
        for p in &cls.points {
            if !p.lines.contains(&j) {
                continue;
            }
            if p.is_blown_up() {
                if p.status != PointStatus::NonBranch {
                    meetings.push(p.epsilon.clone());
                }
            } else {
                let other = *p.lines.iter().find(|&&i| i != j).expect("double point");
                meetings.push(phi[other].clone());
            }
        }
        let (components, genus) = hurwitz(spec, Some(&phi[j]), &meetings);
        let class = lat.strict_transform(j);
        let total_sq = scale * class.square();
        let total_k = scale * d_k.dot(&class);
        let c = components as i64;
        out.push(CurveRecord {
            source: CurveSource::Line(j),
            label: format!("L~{}", j + 1),
            branch: true,
            components,
            genus,
            self_intersection: total_sq / c,
            self_intersection_adjunction: 2 * genus - 2 - total_k / c,
        });
    }

    for (i, &pi) in lat.points.iter().enumerate() {
        let p = &cls.points[pi];
        let meetings: Vec<GroupElement> = p.lines.iter().map(|&l| phi[l].clone()).collect();
        let class = lat.exceptional(i);
        let branch = p.status != PointStatus::NonBranch;
        let (components, genus) = if branch {
            hurwitz(spec, Some(&p.epsilon), &meetings)
        } else {
            hurwitz(spec, None, &meetings)
        };
        let (total_sq, total_k) = if branch {
            (scale * class.square(), scale * d_k.dot(&class))
        } else {
            (scale * q * q * class.square(), scale * q * d_k.dot(&class))
        };
        let c = components as i64;
        out.push(CurveRecord {
            source: CurveSource::Exceptional(i),
            label: lat.exceptional_label(i),
            branch,
            components,
            genus,
            self_intersection: total_sq / c,
            self_intersection_adjunction: 2 * genus - 2 - total_k / c,
        });
    }
    Ok(out)
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::NonMinimalWitness => "non-minimal witness",
            Verdict::NonAmpleWitness => "non-ample witness",
            Verdict::Ok => "ok",
        })
    }
}
