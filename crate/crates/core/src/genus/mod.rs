//! Geometric genus of an abelian cover as a sum over its cyclic quotients,
//! each computed by counting regular 2-forms `Σ z^j g_j dx∧dy / z^(q-1)`.

mod interpolation;

pub use interpolation::{condition_matrix, poly_space_dim, VanishingSpec};

use serde::{Deserialize, Serialize};

use crate::cover::{ensure_good, CoverSpec, GroupElement, PointClassification};
use crate::error::{Error, Result};
use crate::geometry::{IncidenceData, ProjLine};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicLine {
    /// Zero-based index in the original arrangement.
    pub index: usize,
    pub line: ProjLine,
    pub m: u64,
}

/// The cyclic cover `z^q = Π l_i^{m_i}` with `Σ m_i = q·m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicCoverSpec {
    pub q: u64,
    pub lines: Vec<CyclicLine>,
    pub m: i64,
}

impl CyclicCoverSpec {
    fn multiplicity(&self, index: usize) -> Option<u64> {
        self.lines.iter().find(|l| l.index == index).map(|l| l.m)
    }
}

/// Quotient by the kernel of `chi`: line `i` enters with `<chi, φ_i> mod q`.
pub fn quotient_multiplicities(spec: &CoverSpec, chi: &GroupElement) -> CyclicCoverSpec {
    let q = spec.q();
    let lines: Vec<CyclicLine> = spec
        .phi()
        .iter()
        .enumerate()
        .filter_map(|(index, g)| {
            let m = chi.pair(g);
            (m != 0).then(|| CyclicLine { index, line: spec.arrangement().lines()[index].clone(), m })
        })
        .collect();
    let total: u64 = lines.iter().map(|l| l.m).sum();
    debug_assert_eq!(total % q, 0);
    CyclicCoverSpec { q, lines, m: (total / q) as i64 }
}

/// Characters up to scalar: first nonzero entry equal to 1, in
/// lexicographic order.
pub fn characters_up_to_scalar(q: u64, k: usize) -> Vec<GroupElement> {
    let total = (q as usize).pow(k as u32);
    (1..total)
        .map(|mut x| {
            let mut entries = vec![0u64; k];
            for slot in entries.iter_mut().rev() {
                *slot = (x % q as usize) as u64;
                x /= q as usize;
            }
            entries
        })
        .filter(|e| e.iter().find(|&&x| x != 0) == Some(&1))
        .map(|entries| GroupElement { q, entries })
        .collect()
}

fn ceil_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b) + i64::from(a.rem_euclid(b) != 0)
}

/// Singular points of the branch divisor with their weighted multiplicity
/// `r = Σ m_i` over incident branch lines.
fn branch_singularities(c: &CyclicCoverSpec, inc: &IncidenceData) -> Vec<(crate::geometry::ProjPoint, i64)> {
    inc.points
        .iter()
        .filter_map(|p| {
            let ms: Vec<u64> = p.lines.iter().filter_map(|&i| c.multiplicity(i)).collect();
            (ms.len() >= 2).then(|| (p.point.clone(), ms.iter().sum::<u64>() as i64))
        })
        .collect()
}

fn clamp(x: i64) -> u32 {
    x.max(0) as u32
}

/// Double covers: forms of degree m-3 with order `⌈(r+1)/2⌉-2` at r-fold points.
pub fn double_cover_systems(c: &CyclicCoverSpec, inc: &IncidenceData) -> Vec<VanishingSpec> {
    let points = branch_singularities(c, inc)
        .into_iter()
        .map(|(p, r)| (p, clamp(ceil_div(r + 1, 2) - 2)))
        .collect();
    vec![VanishingSpec { degree: c.m - 3, forced: Vec::new(), points }]
}

/// One system per `j = 0..q-1`: degree `(q-j-1)m-3`, line powers `r_j` with
/// `q r_j >= (q-j-1)m_i - q + 1`, point orders `s_j` with
/// `q s_j >= (q-j-1)r - 2q + 1`. The point orders come from a single blowup
/// of each singular point. For q = 3 this count is exact; the component
/// `j = 0` is the space of forms `s·Π l_i^{m_i-1}` of degree 2m-3 and `j = 1`
/// the forms of degree m-3 with order `⌈(r+1)/3⌉-2`.
pub fn general_systems(c: &CyclicCoverSpec, inc: &IncidenceData) -> Vec<VanishingSpec> {
    let q = c.q as i64;
    let sing = branch_singularities(c, inc);
    (0..q)
        .map(|j| {
            let w = q - j - 1;
            let forced = c
                .lines
                .iter()
                .filter_map(|l| {
                    let r = clamp(ceil_div(w * l.m as i64 - q + 1, q));
                    (r > 0).then(|| (l.line.clone(), r))
                })
                .collect();
            let points = sing
                .iter()
                .map(|(p, r)| (p.clone(), clamp(ceil_div(w * r - 2 * q + 1, q))))
                .collect();
            VanishingSpec { degree: w * c.m - 3, forced, points }
        })
        .collect()
}

/// The vanishing systems whose dimensions add up to the genus of the cyclic
/// cover, and whether that sum is exact (as opposed to an upper bound).
pub fn quotient_systems(c: &CyclicCoverSpec, inc: &IncidenceData) -> (Vec<VanishingSpec>, bool) {
    match c.q {
        2 => (double_cover_systems(c, inc), true),
        3 => (general_systems(c, inc), true),
        _ => (general_systems(c, inc), false),
    }
}

/// Geometric genus of the cyclic cover and its exactness; an upper bound
/// of zero is exact.
pub fn cyclic_pg(c: &CyclicCoverSpec, inc: &IncidenceData) -> Result<(u64, bool)> {
    let (systems, exact) = quotient_systems(c, inc);
    let mut total = 0;
    for vs in &systems {
        total += poly_space_dim(vs)?;
    }
    Ok((total, exact || total == 0))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientEntry {
    pub character: GroupElement,
    /// One-based line labels with their multiplicities.
    pub multiplicities: Vec<(usize, u64)>,
    pub pg: u64,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusReport {
    pub entries: Vec<QuotientEntry>,
    pub pg: u64,
    pub exact: bool,
}

fn quotient_entry(spec: &CoverSpec, inc: &IncidenceData, chi: GroupElement) -> Result<QuotientEntry> {
    let c = quotient_multiplicities(spec, &chi);
    let (pg, exact) = cyclic_pg(&c, inc)?;
    let multiplicities = c.lines.iter().map(|l| (l.index + 1, l.m)).collect();
    Ok(QuotientEntry { character: chi, multiplicities, pg, exact })
}

fn thread_count() -> usize {
    std::env::var("COVERCALC_THREADS")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(1)
}

/// `p_g` of the abelian cover as the sum over its `(q^k-1)/(q-1)` cyclic
/// quotients. Setting `COVERCALC_THREADS` above 1 evaluates quotients in
/// parallel; the result does not depend on it.
pub fn abelian_pg(spec: &CoverSpec, inc: &IncidenceData, cls: &PointClassification) -> Result<GenusReport> {
    ensure_good(spec, cls)?;
    let chars = characters_up_to_scalar(spec.q(), spec.k());
    let threads = thread_count();
    let entries: Vec<QuotientEntry> = if threads > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Validation { location: "COVERCALC_THREADS".into(), message: e.to_string() })?;
        pool.install(|| chars.into_par_iter().map(|chi| quotient_entry(spec, inc, chi)).collect::<Result<_>>())?
    } else {
        chars.into_iter().map(|chi| quotient_entry(spec, inc, chi)).collect::<Result<_>>()?
    };
    let pg = entries.iter().map(|e| e.pg).sum();
    let exact = entries.iter().all(|e| e.exact);
    Ok(GenusReport { entries, pg, exact })
}

/// `q = p_g + 1 - χ`; an upper bound whenever `p_g` is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Irregularity {
    pub value: i64,
    pub exact: bool,
}

pub fn irregularity(report: &GenusReport, chi_hol: i64) -> Result<Irregularity> {
    let pg = report.pg as i64;
    let value = pg + 1 - chi_hol;
    if value < 0 {
        return Err(Error::NegativeIrregularity { pg, chi: chi_hol });
    }
    Ok(Irregularity { value, exact: report.exact })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{classify_points, GroupElement};
    use crate::geometry::compute_incidence;
    use crate::presets::preset;

    fn ge(q: u64, e: &[u64]) -> GroupElement {
        GroupElement::new(q, e.to_vec())
    }

    #[test]
    fn character_count() {
        assert_eq!(characters_up_to_scalar(2, 3).len(), 7);
        assert_eq!(characters_up_to_scalar(5, 2).len(), 6);
        assert_eq!(characters_up_to_scalar(3, 5).len(), 121);
        assert_eq!(characters_up_to_scalar(3, 2)[0], ge(3, &[0, 1]));
    }

    #[test]
    fn ceilings() {
        assert_eq!(ceil_div(7, 2), 4);
        assert_eq!(ceil_div(-3, 2), -1);
        assert_eq!(ceil_div(-4, 2), -2);
        assert_eq!(ceil_div(6, 3), 2);
    }

    #[test]
    fn hexagonal_quotients() {
        let (_, spec) = preset("hexagonal-3").unwrap();
        let c = quotient_multiplicities(&spec, &ge(3, &[1, 0]));
        let ms: Vec<(usize, u64)> = c.lines.iter().map(|l| (l.index + 1, l.m)).collect();
        assert_eq!(ms, vec![(1, 1), (2, 1), (3, 1), (4, 2), (5, 1)]);
        assert_eq!(c.m, 2);
        let c = quotient_multiplicities(&spec, &ge(3, &[0, 1]));
        let ms: Vec<(usize, u64)> = c.lines.iter().map(|l| (l.index + 1, l.m)).collect();
        assert_eq!(ms, vec![(4, 1), (5, 1), (6, 1)]);
    }

    #[test]
    fn burniat_quotient_has_no_forms() {
        let (a, spec) = preset("burniat-4").unwrap();
        let inc = compute_incidence(&a);
        // w^2 = l1 l2 l3 l4 l5 l6 belongs to the character (1,1)
        let c = quotient_multiplicities(&spec, &ge(2, &[1, 1]));
        assert_eq!(c.lines.iter().map(|l| l.index).collect::<Vec<_>>(), vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(cyclic_pg(&c, &inc).unwrap(), (0, true));
        let c = quotient_multiplicities(&spec, &ge(2, &[1, 0]));
        assert_eq!(c.lines.iter().map(|l| l.index).collect::<Vec<_>>(), vec![0, 1, 2, 6, 7, 8]);
    }

    #[test]
    fn godeaux_quotients_vanish_exactly() {
        let (a, spec) = preset("godeaux").unwrap();
        let inc = compute_incidence(&a);
        let cls = classify_points(&spec, &inc);
        let rep = abelian_pg(&spec, &inc, &cls).unwrap();
        assert_eq!(rep.entries.len(), 6);
        assert_eq!(rep.pg, 0);
        assert!(rep.exact);
        // w^5 = l1 l3 l4^3 among the quotients
        assert!(rep.entries.iter().any(|e| e.multiplicities == vec![(1, 1), (3, 1), (4, 3)]));
    }

    #[test]
    fn double_cover_rule_matches_general_rule() {
        let (a, spec) = preset("burniat-2b").unwrap();
        let inc = compute_incidence(&a);
        for chi in characters_up_to_scalar(2, 2) {
            let c = quotient_multiplicities(&spec, &chi);
            let special: u64 = double_cover_systems(&c, &inc).iter().map(|v| poly_space_dim(v).unwrap()).sum();
            let general: u64 = general_systems(&c, &inc).iter().map(|v| poly_space_dim(v).unwrap()).sum();
            assert_eq!(special, general);
        }
    }

    #[test]
    fn triple_cover_orders_after_one_blowup() {
        let (a, spec) = preset("hexagonal-3").unwrap();
        let inc = compute_incidence(&a);
        let c = quotient_multiplicities(&spec, &ge(3, &[1, 1]));
        let systems = general_systems(&c, &inc);
        assert_eq!(systems.len(), 3);
        // L1, L2, L6 meet with weight 3: g_0 needs order 1 there, g_1 none
        let p3 = &inc.points[inc.find(&[0, 1, 5]).unwrap()].point;
        let order = |vs: &VanishingSpec| vs.points.iter().find(|(p, _)| p == p3).unwrap().1;
        assert_eq!(order(&systems[0]), 1);
        assert_eq!(order(&systems[1]), 0);
        // the m = 2 line L5 divides g_0 once
        assert_eq!(systems[0].forced.len(), 1);
        assert_eq!(systems[0].degree, 2 * c.m - 3);
    }

    #[test]
    fn parallel_matches_serial() {
        let (a, spec) = preset("hexagonal-3").unwrap();
        let inc = compute_incidence(&a);
        let cls = classify_points(&spec, &inc);
        let chars = characters_up_to_scalar(3, 2);
        let serial: Vec<_> = chars.iter().map(|c| quotient_entry(&spec, &inc, c.clone()).unwrap()).collect();
        let rep = abelian_pg(&spec, &inc, &cls).unwrap();
        assert_eq!(rep.entries, serial);
    }

    #[test]
    fn negative_irregularity_is_an_error() {
        let rep = GenusReport { entries: vec![], pg: 0, exact: true };
        assert_eq!(irregularity(&rep, 1).unwrap(), Irregularity { value: 0, exact: true });
        assert!(matches!(irregularity(&rep, 2), Err(Error::NegativeIrregularity { .. })));
    }
}
