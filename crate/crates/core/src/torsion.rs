//! The linear system cutting out the largest character group a cover
//! extends to, the induced universal cover, torsion lower bounds, and the
//! enumeration of divisors whose pullback under a double-cover tower is
//! divisible by two.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::cover::{ensure_good, CoverSpec, GroupElement, PointClassification, PointStatus};
use crate::error::{Error, Result};
use crate::invariants::{canonical_divisor_class, BlowupLattice, LatticeClass};
use crate::linalg;

/// `Σ x_i = 0` together with `Σ_{i ∋ p} x_i = 0` for every non-branch point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquiSystem {
    pub q: u64,
    pub n: usize,
    pub rows: Vec<Vec<u64>>,
    pub rank: usize,
    pub k_phi: usize,
}

impl EquiSystem {
    pub fn satisfied_by(&self, x: &[u64]) -> bool {
        self.rows
            .iter()
            .all(|r| r.iter().zip(x).fold(0, |acc, (a, b)| (acc + a * b) % self.q) == 0)
    }
}

pub fn equi_system(spec: &CoverSpec, cls: &PointClassification) -> Result<EquiSystem> {
    ensure_good(spec, cls)?;
    let n = spec.n();
    let mut rows = vec![vec![1u64; n]];
    for p in cls.points.iter().filter(|p| p.status == PointStatus::NonBranch) {
        let mut row = vec![0u64; n];
        for &i in &p.lines {
            row[i] = 1;
        }
        rows.push(row);
    }
    let rank = linalg::rank_mod_p(&rows, n, spec.q());
    Ok(EquiSystem { q: spec.q(), n, rows, rank, k_phi: n - rank })
}

pub fn k_phi(spec: &CoverSpec, cls: &PointClassification) -> Result<usize> {
    Ok(equi_system(spec, cls)?.k_phi)
}

/// The cover with group `(Z/q)^{k_φ}` whose line characters span all
/// solutions of the system. Its first `k` coordinates are the original
/// characters; the remaining basis vectors are taken greedily from the
/// reduced-echelon kernel basis.
pub fn universal_cover_spec(spec: &CoverSpec, cls: &PointClassification) -> Result<CoverSpec> {
    let sys = equi_system(spec, cls)?;
    let (q, n, k) = (spec.q(), spec.n(), spec.k());
    let mut columns: Vec<Vec<u64>> = (0..k).map(|c| spec.phi().iter().map(|g| g.entries[c]).collect()).collect();
    for v in linalg::nullspace_mod_p(&sys.rows, n, q) {
        if columns.len() == sys.k_phi {
            break;
        }
        let mut trial = columns.clone();
        trial.push(v);
        if linalg::rank_mod_p(&trial, n, q) == trial.len() {
            columns = trial;
        }
    }
    debug_assert_eq!(columns.len(), sys.k_phi);
    let phi = (0..n)
        .map(|i| GroupElement::new(q, columns.iter().map(|c| c[i]).collect()))
        .collect();
    CoverSpec::new(spec.arrangement().clone(), q, sys.k_phi, phi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionBound {
    pub q: u64,
    pub exponent: usize,
    /// The bound `(Z/q)^exponent ⊂ Tors` holds only for regular surfaces.
    pub valid: bool,
}

pub fn torsion_lower_bound(spec: &CoverSpec, cls: &PointClassification, irregularity: i64) -> Result<TorsionBound> {
    let kp = k_phi(spec, cls)?;
    Ok(TorsionBound { q: spec.q(), exponent: kp - spec.k(), valid: irregularity == 0 })
}

/// `Σ a_j L̃_j + Σ b_i E_i + Σ c_i 2Λ_i`, where `Λ_i = L - E_i` is a general
/// line through the `i`-th blown-up point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DivisorCandidate {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub c: Vec<u32>,
}

impl DivisorCandidate {
    pub fn class(&self, lat: &BlowupLattice) -> LatticeClass {
        let mut cls = LatticeClass::zero(lat.points.len());
        for (j, &a) in self.a.iter().enumerate() {
            cls.add_scaled(a as i64, &lat.strict_transform(j));
        }
        for (i, &b) in self.b.iter().enumerate() {
            cls.add_scaled(b as i64, &lat.exceptional(i));
        }
        for (i, &c) in self.c.iter().enumerate() {
            cls.add_scaled(2 * c as i64, &lat.pencil(i));
        }
        cls
    }

    pub fn has_pencil(&self) -> bool {
        self.c.iter().any(|&c| c > 0)
    }

    /// E.g. `L~2 + L~3 + L~7 + E[1,2,3,4]`.
    pub fn label(&self, lat: &BlowupLattice) -> String {
        let term = |coef: u32, name: String| if coef == 1 { name } else { format!("{coef}{name}") };
        let mut parts = Vec::new();
        for (j, &a) in self.a.iter().enumerate().filter(|(_, &a)| a > 0) {
            parts.push(term(a, format!("L~{}", j + 1)));
        }
        for (i, &c) in self.c.iter().enumerate().filter(|(_, &c)| c > 0) {
            let inner = lat.exceptional_label(i).replacen('E', "P", 1);
            parts.push(term(2 * c, inner));
        }
        for (i, &b) in self.b.iter().enumerate().filter(|(_, &b)| b > 0) {
            parts.push(term(b, lat.exceptional_label(i)));
        }
        parts.join(" + ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorSystem {
    pub members: Vec<DivisorCandidate>,
    /// Contains a moving pencil component, i.e. a positive-dimensional family.
    pub pencil_family: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorEnumeration {
    pub target: LatticeClass,
    pub systems: Vec<DivisorSystem>,
}

/// Distribute `total` units among `slots` in lexicographic order.
fn compositions(total: u32, slots: usize, out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>) {
    if cur.len() + 1 == slots {
        cur.push(total);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    if slots == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for x in (0..=total).rev() {
        cur.push(x);
        compositions(total - x, slots, out, cur);
        cur.pop();
    }
}

fn all_compositions(total: u32, slots: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    compositions(total, slots, &mut out, &mut Vec::new());
    out
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// All effective combinations of arrangement curves and doubled pencil
/// lines in the class `D_K` whose pullback is divisible by two, grouped into
/// linear systems. Two candidates are in one system when one is obtained
/// from the other by degenerating a pencil line `Λ_i` into an arrangement
/// line through the same point (`2Λ_i = 2L̃_j + 2Σ E_p` over the other
/// blown-up points `p` of `L_j`).
pub fn enumerate_even_pullback_divisors(
    spec: &CoverSpec,
    cls: &PointClassification,
    lat: &BlowupLattice,
) -> Result<DivisorEnumeration> {
    if spec.q() != 2 {
        return Err(Error::UnsupportedGroup(format!(
            "divisor enumeration needs q = 2, got q = {}",
            spec.q()
        )));
    }
    let target = canonical_divisor_class(spec, cls, lat)?.d_k;
    let n = spec.n();
    let t = lat.points.len();
    let non_branch: Vec<bool> = lat.points.iter().map(|&p| cls.points[p].status == PointStatus::NonBranch).collect();
    let on_line: Vec<Vec<usize>> = (0..n).map(|j| lat.points_on_line(j)).collect();

    let mut cands: Vec<DivisorCandidate> = Vec::new();
    if target.l >= 0 {
        let deg = target.l as u32;
        for pencil_deg in (0..=deg / 2).rev() {
            for c in all_compositions(pencil_deg, t) {
                for a in all_compositions(deg - 2 * pencil_deg, n) {
                    // b is forced by the exceptional coefficients of the class
                    let mut b = Vec::with_capacity(t);
                    let ok = (0..t).all(|i| {
                        let through: i64 = (0..n).filter(|j| on_line[*j].contains(&i)).map(|j| a[j] as i64).sum();
                        let bi = target.e[i] + through + 2 * c[i] as i64;
                        if bi < 0 || (non_branch[i] && bi % 2 != 0) {
                            return false;
                        }
                        b.push(bi as u32);
                        true
                    });
                    if ok {
                        cands.push(DivisorCandidate { a, b, c: c.clone() });
                    }
                }
            }
        }
    }
    cands.sort();
    let index: HashMap<DivisorCandidate, usize> = cands.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();

    let mut uf = UnionFind((0..cands.len()).collect());
    for (x, cand) in cands.iter().enumerate() {
        for j in (0..n).filter(|&j| cand.a[j] >= 2) {
            for &i in &on_line[j] {
                let mut y = cand.clone();
                y.a[j] -= 2;
                let others: Vec<usize> = on_line[j].iter().copied().filter(|&p| p != i).collect();
                if others.iter().any(|&p| y.b[p] < 2) {
                    continue;
                }
                for &p in &others {
                    y.b[p] -= 2;
                }
                y.c[i] += 1;
                if let Some(&yi) = index.get(&y) {
                    uf.union(x, yi);
                }
            }
        }
    }

    let mut groups: Vec<(usize, Vec<DivisorCandidate>)> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for (x, cand) in cands.iter().enumerate() {
        let root = uf.find(x);
        let g = *slot.entry(root).or_insert_with(|| {
            groups.push((root, Vec::new()));
            groups.len() - 1
        });
        groups[g].1.push(cand.clone());
    }
    let systems = groups
        .into_iter()
        .map(|(_, members)| {
            let pencil_family = members.iter().any(|m| m.has_pencil());
            DivisorSystem { members, pencil_family }
        })
        .collect();
    Ok(DivisorEnumeration { target, systems })
}
