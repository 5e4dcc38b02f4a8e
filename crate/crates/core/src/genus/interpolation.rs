//! Dimensions of spaces of plane forms with prescribed line factors and
//! vanishing orders at points.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{ProjLine, ProjPoint};
use crate::linalg;

/// Forms of degree `degree` divisible by `l^r` for every `(l, r)` in
/// `forced` and vanishing to order at least `v` at every `(p, v)` in
/// `points`. Orders count the forced factors too.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingSpec {
    pub degree: i64,
    pub forced: Vec<(ProjLine, u32)>,
    pub points: Vec<(ProjPoint, u32)>,
}

impl VanishingSpec {
    pub fn plain(degree: i64) -> Self {
        VanishingSpec { degree, forced: Vec::new(), points: Vec::new() }
    }

    /// Degree left after dividing out the forced factors.
    pub fn residual_degree(&self) -> i64 {
        self.degree - self.forced.iter().map(|(_, r)| *r as i64).sum::<i64>()
    }

    /// Point conditions left for the cofactor, with zero orders dropped.
    pub fn residual_points(&self) -> Vec<(ProjPoint, u32)> {
        let d = self.residual_degree();
        self.points
            .iter()
            .filter_map(|(p, v)| {
                let through: u32 = self.forced.iter().filter(|(l, _)| l.contains(p)).map(|(_, r)| r).sum();
                let v = v.saturating_sub(through);
                // order d+1 already kills every form of degree d
                let v = (v as i64).min(d + 1) as u32;
                (v > 0).then(|| (p.clone(), v))
            })
            .collect()
    }
}

fn monomial_count(d: i64) -> usize {
    if d < 0 {
        0
    } else {
        let d = d as usize;
        (d + 1) * (d + 2) / 2
    }
}

/// A linear form nonvanishing at every point, from a fixed deterministic
/// search order: the coordinate forms first, then small integer forms.
fn chart(points: &[ProjPoint]) -> Result<[i64; 3]> {
    let mut candidates: Vec<[i64; 3]> = vec![[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    for bound in 1..=4i64 {
        for a in -bound..=bound {
            for b in -bound..=bound {
                for c in -bound..=bound {
                    if a.abs().max(b.abs()).max(c.abs()) == bound {
                        candidates.push([a, b, c]);
                    }
                }
            }
        }
    }
    candidates
        .into_iter()
        .find(|f| {
            points.iter().all(|p| {
                let c = p.coords();
                !(&c[0] * f[0] + &c[1] * f[1] + &c[2] * f[2]).is_zero()
            })
        })
        .ok_or(Error::ChartFailure(points.len()))
}

fn falling(a: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(a - i))
}

/// Integer matrix whose kernel is the residual space: columns are the
/// monomials `x^a y^b` (`a + b <= D'`) of an affine chart, rows the scaled
/// partial derivatives of order below `v` at each point. `None` when the
/// residual degree is negative.
pub fn condition_matrix(vs: &VanishingSpec) -> Result<Option<(usize, Vec<Vec<BigInt>>)>> {
    let d = vs.residual_degree();
    if d < 0 {
        return Ok(None);
    }
    let pts = vs.residual_points();
    let ncols = monomial_count(d);
    if pts.is_empty() {
        return Ok(Some((ncols, Vec::new())));
    }
    let just_points: Vec<ProjPoint> = pts.iter().map(|(p, _)| p.clone()).collect();
    let f = chart(&just_points)?;
    let t = f.iter().position(|&x| x != 0).expect("nonzero form");
    let others: Vec<usize> = (0..3).filter(|&i| i != t).collect();
    let d = d as usize;
    let monomials: Vec<(usize, usize)> = (0..=d).flat_map(|s| (0..=s).map(move |b| (s - b, b))).collect();
    let mut rows = Vec::new();
    for (p, v) in &pts {
        let c = p.coords();
        // affine point (x, y) = (X/w, Y/w); rows are multiplied by w^(D'-α-β)
        let w = &c[0] * f[0] + &c[1] * f[1] + &c[2] * f[2];
        let (x, y) = (&c[others[0]], &c[others[1]]);
        for ord in 0..*v as usize {
            for beta in 0..=ord {
                let alpha = ord - beta;
                let row = monomials
                    .iter()
                    .map(|&(a, b)| {
                        if a < alpha || b < beta {
                            return BigInt::zero();
                        }
                        falling(a, alpha)
                            * falling(b, beta)
                            * num_traits::pow(x.clone(), a - alpha)
                            * num_traits::pow(y.clone(), b - beta)
                            * num_traits::pow(w.clone(), d - a - b)
                    })
                    .collect();
                rows.push(row);
            }
        }
    }
    Ok(Some((ncols, rows)))
}

pub fn poly_space_dim(vs: &VanishingSpec) -> Result<u64> {
    match condition_matrix(vs)? {
        None => Ok(0),
        Some((ncols, rows)) => {
            let rank = linalg::rank_bareiss(&rows);
            Ok((ncols - rank) as u64)
        }
    }
}
