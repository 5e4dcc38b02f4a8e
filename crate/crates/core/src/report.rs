//! The analysis pipeline and its text and JSON renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::config::CoverConfig;
use crate::cover::{classify_points, ensure_good, CoverSpec, PointStatus};
use crate::error::{Error, Result};
use crate::genus::{abelian_pg, irregularity};
use crate::geometry::compute_incidence;
use crate::invariants::{
    branch_curve_report, canonical_divisor_class, minimality_report, numerical_invariants, BlowupLattice,
    CurveRecord, MinimalityEntry, Verdict,
};
use crate::torsion::{
    enumerate_even_pullback_divisors, equi_system, torsion_lower_bound, universal_cover_spec, TorsionBound,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineEcho {
    pub index: usize,
    /// Decimal strings, so that arbitrarily large coefficients survive.
    pub coeffs: [String; 3],
    pub phi: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecEcho {
    pub preset: Option<String>,
    pub q: u64,
    pub k: usize,
    pub lines: Vec<LineEcho>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRow {
    pub coords: [String; 3],
    /// One-based line labels.
    pub lines: Vec<usize>,
    pub epsilon: Vec<u64>,
    pub status: PointStatus,
    pub blown_up: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalReport {
    pub k: usize,
    pub k2: i64,
    pub euler: i64,
    pub chi: i64,
    pub pg: u64,
    pub pg_exact: bool,
    pub irregularity: i64,
    pub irregularity_exact: bool,
    pub phi: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorSystemRow {
    pub members: Vec<String>,
    pub pencil_family: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorReport {
    pub target: String,
    pub system_count: usize,
    pub pencil_families: usize,
    pub systems: Vec<DivisorSystemRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub k2: i64,
    pub euler: i64,
    pub chi: i64,
    pub pg: u64,
    pub pg_exact: bool,
    pub irregularity: i64,
    pub irregularity_exact: bool,
    pub k_phi: usize,
    pub torsion: TorsionBound,
    pub canonical_class: String,
    pub minimality: Vec<MinimalityEntry>,
    pub universal: Option<UniversalReport>,
    pub divisors: Option<DivisorReport>,
    pub curves: Option<Vec<CurveRecord>>,
    pub warnings: Vec<String>,
    pub points: Vec<PointRow>,
    pub spec: SpecEcho,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

fn echo(spec: &CoverSpec, preset: Option<&str>) -> SpecEcho {
    let lines = spec
        .arrangement()
        .lines()
        .iter()
        .zip(spec.phi())
        .enumerate()
        .map(|(i, (l, g))| LineEcho {
            index: i + 1,
            coeffs: l.coeffs().clone().map(|c| c.to_string()),
            phi: g.entries.clone(),
        })
        .collect();
    SpecEcho { preset: preset.map(str::to_string), q: spec.q(), k: spec.k(), lines }
}

fn universal_report(spec: &CoverSpec) -> Result<UniversalReport> {
    let inc = compute_incidence(spec.arrangement());
    let cls = classify_points(spec, &inc);
    let u = universal_cover_spec(spec, &cls)?;
    let ucls = classify_points(&u, &inc);
    let inv = numerical_invariants(&u, &ucls)?;
    let genus = abelian_pg(&u, &inc, &ucls)?;
    let irr = irregularity(&genus, inv.chi)?;
    Ok(UniversalReport {
        k: u.k(),
        k2: inv.k2,
        euler: inv.euler,
        chi: inv.chi,
        pg: genus.pg,
        pg_exact: genus.exact,
        irregularity: irr.value,
        irregularity_exact: irr.exact,
        phi: u.phi().iter().map(|g| g.entries.clone()).collect(),
    })
}

pub fn analyze(config: &CoverConfig) -> Result<Report> {
    let spec = &config.spec;
    let inc = compute_incidence(spec.arrangement());
    let cls = classify_points(spec, &inc);
    ensure_good(spec, &cls)?;
    let lat = BlowupLattice::new(&cls, spec.n());
    let inv = numerical_invariants(spec, &cls)?;
    let genus = abelian_pg(spec, &inc, &cls)?;
    let irr = irregularity(&genus, inv.chi)?;
    let k_phi = equi_system(spec, &cls)?.k_phi;
    let torsion = torsion_lower_bound(spec, &cls, irr.value)?;
    let d_k = canonical_divisor_class(spec, &cls, &lat)?.d_k;

    let mut warnings = Vec::new();
    if !genus.exact {
        warnings.push("p_g is an upper bound: point conditions for q >= 5 are only necessary".to_string());
        warnings.push("irregularity is an upper bound (derived from the p_g upper bound)".to_string());
    }
    if !torsion.valid {
        warnings.push(format!(
            "torsion bound not established: irregularity {} is not zero",
            irr.value
        ));
    }
    let minimality = match minimality_report(spec, &cls, &lat) {
        Ok(m) => m,
        Err(Error::NotBig(sq)) => {
            warnings.push(format!("D_K^2 = {sq} is not positive; minimality scan skipped"));
            Vec::new()
        }
        Err(e) => return Err(e),
    };
    for m in &minimality {
        match m.verdict {
            Verdict::NonAmpleWitness => warnings.push(format!(
                "K is not ample: D_K.{} = 0 (curves over it are K-trivial)",
                m.curve
            )),
            Verdict::NonMinimalWitness => warnings.push(format!(
                "surface is not minimal: D_K.{} = {} < 0",
                m.curve, m.product
            )),
            Verdict::Ok => {}
        }
    }

    let universal = if config.universal { Some(universal_report(spec)?) } else { None };
    let divisors = if !config.torsion_divisors {
        None
    } else if spec.q() != 2 {
        warnings.push(format!("divisor enumeration skipped: needs q = 2, got q = {}", spec.q()));
        None
    } else {
        let en = enumerate_even_pullback_divisors(spec, &cls, &lat)?;
        let systems: Vec<DivisorSystemRow> = en
            .systems
            .iter()
            .map(|s| DivisorSystemRow {
                members: s.members.iter().map(|m| m.label(&lat)).collect(),
                pencil_family: s.pencil_family,
            })
            .collect();
        Some(DivisorReport {
            target: lat.format_class(&en.target),
            system_count: systems.len(),
            pencil_families: systems.iter().filter(|s| s.pencil_family).count(),
            systems,
        })
    };
    let curves = if config.curves { Some(branch_curve_report(spec, &cls, &lat)?) } else { None };

    let points = cls
        .points
        .iter()
        .map(|p| PointRow {
            coords: p.point.coords().clone().map(|c| c.to_string()),
            lines: p.lines.iter().map(|i| i + 1).collect(),
            epsilon: p.epsilon.entries.clone(),
            status: p.status,
            blown_up: p.is_blown_up(),
        })
        .collect();

    Ok(Report {
        k2: inv.k2,
        euler: inv.euler,
        chi: inv.chi,
        pg: genus.pg,
        pg_exact: genus.exact,
        irregularity: irr.value,
        irregularity_exact: irr.exact,
        k_phi,
        torsion,
        canonical_class: lat.format_class(&d_k),
        minimality,
        universal,
        divisors,
        curves,
        warnings,
        points,
        spec: echo(spec, config.preset.as_deref()),
    })
}

fn exactness(exact: bool) -> &'static str {
    if exact {
        "exact"
    } else {
        "upper bound"
    }
}

fn render_text(r: &Report) -> String {
    let mut s = String::new();
    let name = r.spec.preset.as_deref().unwrap_or("explicit arrangement");
    let _ = writeln!(s, "cover: {name}, G = (Z/{})^{}, {} lines", r.spec.q, r.spec.k, r.spec.lines.len());
    let _ = writeln!(s);
    let _ = writeln!(s, "K^2 = {}", r.k2);
    let _ = writeln!(s, "e = {}", r.euler);
    let _ = writeln!(s, "chi = {}", r.chi);
    let _ = writeln!(s, "p_g = {} ({})", r.pg, exactness(r.pg_exact));
    let _ = writeln!(s, "q = {} ({})", r.irregularity, exactness(r.irregularity_exact));
    let _ = writeln!(s, "k_phi = {}", r.k_phi);
    let t = &r.torsion;
    let _ = writeln!(
        s,
        "torsion >= (Z/{})^{} [{}]",
        t.q,
        t.exponent,
        if t.valid { "valid" } else { "not established" }
    );
    let _ = writeln!(s, "D_K = {}", r.canonical_class);

    let _ = writeln!(s, "\npoints:");
    for p in &r.points {
        let label: Vec<String> = p.lines.iter().map(|l| l.to_string()).collect();
        let eps: Vec<String> = p.epsilon.iter().map(|x| x.to_string()).collect();
        let status = match p.status {
            PointStatus::NonBranch => "non-branch",
            PointStatus::BranchGood => "branch",
            PointStatus::Bad => "BAD",
        };
        let _ = writeln!(
            s,
            "  ({}:{}:{})  {{{}}}  eps=({})  {}{}",
            p.coords[0],
            p.coords[1],
            p.coords[2],
            label.join(","),
            eps.join(","),
            status,
            if p.blown_up { ", blown up" } else { "" }
        );
    }

    if !r.minimality.is_empty() {
        let _ = writeln!(s, "\nD_K products:");
        for m in &r.minimality {
            let _ = writeln!(s, "  D_K.{} = {}  {}", m.curve, m.product, m.verdict);
        }
    }
    if let Some(u) = &r.universal {
        let _ = writeln!(s, "\nuniversal cover (Z/{})^{}:", r.spec.q, u.k);
        let _ = writeln!(s, "  K^2 = {}", u.k2);
        let _ = writeln!(s, "  e = {}", u.euler);
        let _ = writeln!(s, "  chi = {}", u.chi);
        let _ = writeln!(s, "  p_g = {} ({})", u.pg, exactness(u.pg_exact));
        let _ = writeln!(s, "  q = {} ({})", u.irregularity, exactness(u.irregularity_exact));
    }
    if let Some(d) = &r.divisors {
        let _ = writeln!(
            s,
            "\ndivisors in |{}| with even pullback: {} systems, {} pencil families",
            d.target, d.system_count, d.pencil_families
        );
        for sys in &d.systems {
            let tag = if sys.pencil_family { "  (pencil)" } else { "" };
            let _ = writeln!(s, "  {}{}", sys.members.join("  ~  "), tag);
        }
    }
    if let Some(cs) = &r.curves {
        let _ = writeln!(s, "\ncurves:");
        for c in cs {
            let _ = writeln!(
                s,
                "  {:<14} {:<10} components={} genus={} self-intersection={}",
                c.label,
                if c.branch { "branch" } else { "non-branch" },
                c.components,
                c.genus,
                c.self_intersection
            );
        }
    }
    if !r.warnings.is_empty() {
        let _ = writeln!(s, "\nwarnings:");
        for w in &r.warnings {
            let _ = writeln!(s, "  - {w}");
        }
    }
    s
}

pub fn emit_report(r: &Report, format: Format) -> String {
    match format {
        Format::Text => render_text(r),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("report serializes");
            s.push('\n');
            s
        }
    }
}
