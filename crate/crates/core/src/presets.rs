//! Catalog of the named arrangements with their character assignments.
//!
//! Burniat arrangements use affine coordinates x = z1/z0, y = z2/z0:
//! L1: z0, L2: x = a1, L3: x = 1, L4: z1, L5: x = c1*y, L6: x = c2*y,
//! L7: z2, L8: y = b1, L9: y = 1. The free parameters are fixed to values
//! that avoid every coincidence beyond the intended ones.

use crate::cover::CoverSpec;
use crate::error::{Error, Result};
use crate::geometry::Arrangement;

pub const PRESET_NAMES: [&str; 11] = [
    "godeaux",
    "campedelli-generic",
    "campedelli-fig1",
    "campedelli-fig6",
    "burniat-0",
    "burniat-1",
    "burniat-2a",
    "burniat-2b",
    "burniat-3",
    "burniat-4",
    "hexagonal-3",
];

fn build(q: u64, lines: &[[i64; 3]], phi: &[&[i64]]) -> Result<(Arrangement, CoverSpec)> {
    let a = Arrangement::from_i64(lines)?;
    let spec = CoverSpec::from_i64(a.clone(), q, phi)?;
    Ok((a, spec))
}

fn burniat(a1: i64, b1: i64, c1: i64, c2: i64) -> Result<(Arrangement, CoverSpec)> {
    let lines = [
        [1, 0, 0],
        [-a1, 1, 0],
        [-1, 1, 0],
        [0, 1, 0],
        [0, 1, -c1],
        [0, 1, -c2],
        [0, 0, 1],
        [-b1, 0, 1],
        [-1, 0, 1],
    ];
    let (e1, e2, e3): (&[i64], &[i64], &[i64]) = (&[1, 0], &[0, 1], &[1, 1]);
    build(2, &lines, &[e1, e1, e1, e2, e2, e2, e3, e3, e3])
}

/// The arrangement and cover data of a catalog entry.
pub fn preset(name: &str) -> Result<(Arrangement, CoverSpec)> {
    match name {
        "godeaux" => build(
            5,
            &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]],
            &[&[1, 0], &[0, 1], &[1, 2], &[3, 2]],
        ),
        "campedelli-generic" => build(
            2,
            &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3], [1, 3, 7], [1, 5, 11]],
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 0], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]],
        ),
        // Triangle sides carry (1,0,0), (1,1,0), (0,1,0); each vertex gets
        // one more line so that every triple point has epsilon (0,0,1).
        "campedelli-fig1" => build(
            2,
            &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, -1, 0], [1, 0, -2], [0, 1, -3], [1, 2, 5]],
            &[&[1, 0, 0], &[1, 1, 0], &[0, 1, 0], &[0, 1, 1], &[1, 1, 1], &[1, 0, 1], &[0, 0, 1]],
        ),
        // Triangle, its three cevians through (1:1:1), and a line through
        // two of the feet: six triple points, three double points.
        "campedelli-fig6" => build(
            2,
            &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 1, -1], [1, 0, -1], [1, -1, 0], [1, 1, -1]],
            &[&[0, 0, 1], &[0, 1, 0], &[0, 1, 1], &[1, 0, 0], &[1, 0, 1], &[1, 1, 1], &[1, 1, 0]],
        ),
        "burniat-0" => burniat(2, 3, 5, 7),
        "burniat-1" => burniat(2, 3, 5, 1),
        "burniat-2a" => burniat(6, 2, 3, 1),
        "burniat-2b" => burniat(2, 3, 2, 1),
        "burniat-3" => burniat(2, 2, 2, 1),
        "burniat-4" => burniat(-1, -1, -1, 1),
        "hexagonal-3" => build(
            3,
            &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 1, 2], [1, 0, 3], [1, 5, 0]],
            &[&[1, 0], &[1, 0], &[1, 0], &[2, 1], &[1, 1], &[0, 1]],
        ),
        _ => Err(Error::UnknownPreset(name.to_string())),
    }
}
