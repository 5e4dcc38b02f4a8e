//! Input files: either `preset = "<name>"` or an explicit cover given by
//! `q`, `k` and one `[[line]]` table per line with `coeffs` and `phi`.
//! Option keys `universal`, `torsion_divisors`, `curves` enable the extra
//! report sections.

use serde::Deserialize;

use crate::cover::{CoverSpec, GroupElement};
use crate::error::{Error, Result};
use crate::geometry::{Arrangement, ProjLine};
use crate::linalg;
use crate::presets::preset;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    preset: Option<String>,
    q: Option<u64>,
    k: Option<usize>,
    #[serde(default)]
    universal: bool,
    #[serde(default)]
    torsion_divisors: bool,
    #[serde(default)]
    curves: bool,
    line: Option<Vec<RawLine>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLine {
    coeffs: [i64; 3],
    phi: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverConfig {
    /// Preset name when the cover came from the catalog.
    pub preset: Option<String>,
    pub spec: CoverSpec,
    pub universal: bool,
    pub torsion_divisors: bool,
    pub curves: bool,
}

fn invalid(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Validation { location: location.into(), message: message.into() }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
    (line, col)
}

pub fn parse_config(text: &str) -> Result<CoverConfig> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| {
        let location = match e.span() {
            Some(span) => {
                let (l, c) = line_col(text, span.start);
                format!("line {l}, column {c}")
            }
            None => "input".to_string(),
        };
        Error::Parse { location, message: e.message().trim().to_string() }
    })?;

    let spec = match (&raw.preset, &raw.line) {
        (Some(_), Some(_)) => return Err(invalid("line", "a preset cannot be combined with explicit lines")),
        (Some(name), None) => {
            if raw.q.is_some() || raw.k.is_some() {
                return Err(invalid(if raw.q.is_some() { "q" } else { "k" }, "not allowed together with a preset"));
            }
            preset(name)?.1
        }
        (None, None) => return Err(invalid("input", "expected `preset` or at least two [[line]] tables")),
        (None, Some(lines)) => explicit_spec(&raw, lines)?,
    };
    Ok(CoverConfig {
        preset: raw.preset,
        spec,
        universal: raw.universal,
        torsion_divisors: raw.torsion_divisors,
        curves: raw.curves,
    })
}

fn explicit_spec(raw: &RawConfig, lines: &[RawLine]) -> Result<CoverSpec> {
    let q = raw.q.ok_or_else(|| invalid("q", "missing"))?;
    if !linalg::is_prime(q) {
        return Err(invalid("q", format!("{q} is not prime")));
    }
    let k = raw.k.ok_or_else(|| invalid("k", "missing"))?;
    if k < 2 {
        return Err(invalid("k", format!("rank must be at least 2, got {k}")));
    }
    if lines.len() < 2 {
        return Err(invalid("line", format!("need at least 2 lines, got {}", lines.len())));
    }
    let mut proj = Vec::with_capacity(lines.len());
    let mut phi = Vec::with_capacity(lines.len());
    for (i, l) in lines.iter().enumerate() {
        let at = |field: &str| format!("line[{}].{field}", i + 1);
        let pl = ProjLine::from_i64(l.coeffs[0], l.coeffs[1], l.coeffs[2])
            .map_err(|_| invalid(at("coeffs"), "all coefficients are zero"))?;
        if let Some(j) = proj.iter().position(|p| p == &pl) {
            return Err(invalid(at("coeffs"), format!("same line as line[{}]", j + 1)));
        }
        proj.push(pl);
        if l.phi.len() != k {
            return Err(invalid(at("phi"), format!("expected {k} entries, got {}", l.phi.len())));
        }
        let g = GroupElement::from_i64(q, &l.phi);
        if g.is_zero() {
            return Err(invalid(at("phi"), format!("character {g} is zero mod {q}")));
        }
        phi.push(g);
    }
    let sum = phi.iter().fold(GroupElement::zero(q, k), |s, g| s.add(g));
    if !sum.is_zero() {
        return Err(invalid("line[*].phi", format!("characters sum to {sum}, not zero")));
    }
    let rows: Vec<Vec<u64>> = phi.iter().map(|g| g.entries.clone()).collect();
    let rank = linalg::rank_mod_p(&rows, k, q);
    if rank < k {
        return Err(invalid("line[*].phi", format!("characters generate a subgroup of rank {rank}, not {k}")));
    }
    CoverSpec::new(Arrangement::new(proj)?, q, k, phi)
}

/// Render a cover as an explicit config file.
pub fn emit_config(spec: &CoverSpec, title: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(t) = title {
        out.push_str(&format!("# {t}\n"));
    }
    out.push_str(&format!("q = {}\nk = {}\n", spec.q(), spec.k()));
    for (l, g) in spec.arrangement().lines().iter().zip(spec.phi()) {
        let c = l.coeffs();
        let phi: Vec<String> = g.entries.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!(
            "\n[[line]]\ncoeffs = [{}, {}, {}]\nphi = [{}]\n",
            c[0],
            c[1],
            c[2],
            phi.join(", ")
        ));
    }
    out
}
