//! One line per acceptance criterion; every value is compared exactly.

use std::collections::BTreeSet;

use covercalc::genus::{
    abelian_pg, characters_up_to_scalar, condition_matrix, double_cover_systems, general_systems,
    irregularity, poly_space_dim, quotient_multiplicities, quotient_systems, GenusReport,
};
use covercalc::invariants::{branch_curve_report, minimality_report, numerical_invariants, BlowupLattice, CurveSource};
use covercalc::torsion::{enumerate_even_pullback_divisors, equi_system, torsion_lower_bound, universal_cover_spec};
use covercalc::{
    classify_points, compute_incidence, linalg, preset, Arrangement, CoverSpec, GroupElement, IncidenceData,
    PointClassification, PointStatus, PRESET_NAMES,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! expect_eq {
    ($left:expr, $right:expr, $($ctx:tt)*) => {{
        let (l, r) = (&$left, &$right);
        if l != r {
            return Err(format!("{}: got {:?}, expected {:?}", format!($($ctx)*), l, r));
        }
    }};
}

struct Analysed {
    spec: CoverSpec,
    inc: IncidenceData,
    cls: PointClassification,
}

impl Analysed {
    fn of(spec: CoverSpec) -> Self {
        let inc = compute_incidence(spec.arrangement());
        let cls = classify_points(&spec, &inc);
        Analysed { spec, inc, cls }
    }

    fn preset(name: &str) -> Self {
        Self::of(preset(name).expect("preset").1)
    }

    fn lattice(&self) -> BlowupLattice {
        BlowupLattice::new(&self.cls, self.spec.n())
    }

    fn genus(&self) -> GenusReport {
        abelian_pg(&self.spec, &self.inc, &self.cls).expect("genus")
    }

    /// (K², e, χ, p_g, irregularity)
    fn summary(&self) -> Result<(i64, i64, i64, u64, i64), String> {
        let inv = numerical_invariants(&self.spec, &self.cls).map_err(|e| e.to_string())?;
        let g = self.genus();
        let irr = irregularity(&g, inv.chi).map_err(|e| e.to_string())?;
        Ok((inv.k2, inv.euler, inv.chi, g.pg, irr.value))
    }

    fn torsion(&self) -> (u64, usize, bool) {
        let (_, _, _, _, irr) = self.summary().expect("summary");
        let t = torsion_lower_bound(&self.spec, &self.cls, irr).expect("torsion");
        (t.q, t.exponent, t.valid)
    }

    fn universal(&self) -> Analysed {
        Analysed::of(universal_cover_spec(&self.spec, &self.cls).expect("universal"))
    }
}

const BURNIAT: [(&str, i64); 6] =
    [("burniat-0", 0), ("burniat-1", 1), ("burniat-2a", 2), ("burniat-2b", 2), ("burniat-3", 3), ("burniat-4", 4)];

fn godeaux() -> Check {
    let a = Analysed::preset("godeaux");
    expect_eq!(a.summary()?, (1, 11, 1, 0, 0), "godeaux (K², e, χ, p_g, q)");
    let g = a.genus();
    expect_eq!(g.entries.len(), 6, "cyclic quotients");
    if let Some(e) = g.entries.iter().find(|e| e.pg != 0 || !e.exact) {
        return Err(format!("quotient {} has p_g {} (exact {})", e.character, e.pg, e.exact));
    }
    expect_eq!(a.torsion(), (5, 1, true), "torsion bound");
    Ok(())
}

fn campedelli() -> Check {
    for name in ["campedelli-generic", "campedelli-fig1", "campedelli-fig6"] {
        let a = Analysed::preset(name);
        let (k2, e, _, pg, irr) = a.summary()?;
        expect_eq!((k2, e, pg, irr), (2, 10, 0, 0), "{name} (K², e, p_g, q)");
        expect_eq!(a.torsion(), (2, 3, true), "{name} torsion bound");
    }
    let a = Analysed::preset("campedelli-fig1");
    let triples: Vec<_> = a.cls.points.iter().filter(|p| p.multiplicity() == 3).collect();
    expect_eq!(triples.len(), 3, "fig1 triple points");
    for p in triples {
        expect_eq!(p.epsilon.entries, vec![0, 0, 1], "ε at {}", p.point);
    }
    Ok(())
}

/// Candidate as (line multiplicities, exceptional multiplicities indexed by
/// the point's incident lines, pencil multiplicities).
type Components = (Vec<u32>, Vec<(Vec<usize>, u32)>, Vec<(Vec<usize>, u32)>);

fn nonzero_by_point(lat: &BlowupLattice, v: &[u32]) -> Vec<(Vec<usize>, u32)> {
    let mut out: Vec<_> =
        v.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, &x)| (lat.point_lines[i].clone(), x)).collect();
    out.sort();
    out
}

/// Exceptional curves of the tables: E1, E2, E3 over the quadruple points
/// through L2, L5, L8; E4..E7 over the triple points L3L6L9, L2L5L9, L2L6L8,
/// L3L5L8 (one-based lines).
fn table_point(lat: &BlowupLattice, e: usize) -> Vec<usize> {
    let want: &[usize] = match e {
        1 => &[2],
        2 => &[5],
        3 => &[8],
        4 => &[3, 6, 9],
        5 => &[2, 5, 9],
        6 => &[2, 6, 8],
        7 => &[3, 5, 8],
        _ => unreachable!(),
    };
    let quadruple = e <= 3;
    let hit = lat
        .point_lines
        .iter()
        .find(|ls| {
            (ls.len() == 4) == quadruple && want.iter().all(|w| ls.contains(&(w - 1))) && (quadruple || ls.len() == 3)
        })
        .unwrap_or_else(|| panic!("no blown-up point for E{e}"));
    hit.clone()
}

fn table_entry(lat: &BlowupLattice, n: usize, lines: &[usize], exc: &[(usize, u32)]) -> Components {
    let mut a = vec![0u32; n];
    for &l in lines {
        a[l - 1] += 1;
    }
    let mut b: Vec<_> = exc.iter().map(|&(e, m)| (table_point(lat, e), m)).collect();
    b.sort();
    (a, b, Vec::new())
}

/// Lines of a table entry and its exceptional curves with multiplicities.
type TableRow = (Vec<usize>, Vec<(usize, u32)>);

fn burniat_table(name: &str) -> Vec<TableRow> {
    let mut rows = vec![
        (vec![3, 6, 9], vec![(4, 2)]),
        (vec![2, 5, 9], vec![(5, 2)]),
        (vec![2, 6, 8], vec![(6, 2)]),
        (vec![2, 3, 7], vec![(1, 1)]),
        (vec![5, 6, 1], vec![(2, 1)]),
        (vec![8, 9, 4], vec![(3, 1)]),
    ];
    rows.push(match name {
        "burniat-4" => (vec![3, 5, 8], vec![(7, 2)]),
        _ => (vec![3, 5, 8], vec![]),
    });
    rows
}

fn burniat() -> Check {
    let k_phis = [8, 7, 6, 6, 5, 5];
    let systems = [63, 31, 15, 15, 7, 7];
    for (((name, s), kp), count) in BURNIAT.iter().zip(k_phis).zip(systems) {
        let a = Analysed::preset(name);
        expect_eq!(a.summary()?, (6 - s, 6 + s, 1, 0, 0), "{name} (K², e, χ, p_g, q)");
        let eq = equi_system(&a.spec, &a.cls).map_err(|e| e.to_string())?;
        expect_eq!(eq.k_phi, kp, "{name} k_φ");
        let lat = a.lattice();
        let en = enumerate_even_pullback_divisors(&a.spec, &a.cls, &lat).map_err(|e| e.to_string())?;
        expect_eq!(en.systems.len(), count, "{name} divisor systems");
        for m in en.systems.iter().flat_map(|s| &s.members) {
            expect_eq!(m.class(&lat), en.target, "{name} class of {}", m.label(&lat));
        }

        if *s >= 3 {
            let got: BTreeSet<Components> = en
                .systems
                .iter()
                .flat_map(|s| &s.members)
                .map(|m| (m.a.clone(), nonzero_by_point(&lat, &m.b), nonzero_by_point(&lat, &m.c)))
                .collect();
            let want: BTreeSet<Components> =
                burniat_table(name).iter().map(|(l, e)| table_entry(&lat, 9, l, e)).collect();
            expect_eq!(want.len(), 7, "{name} table size");
            expect_eq!(got, want, "{name} divisor list");
        }
    }
    Ok(())
}

fn universal_burniat() -> Check {
    let pgs = [66, 31, 15, 15, 7, 7];
    let irrs = [3, 0, 0, 0, 0, 0];
    for (((name, _), pg), irr) in BURNIAT.iter().zip(pgs).zip(irrs) {
        let a = Analysed::preset(name);
        let kp = equi_system(&a.spec, &a.cls).map_err(|e| e.to_string())?.k_phi;
        let u = a.universal();
        expect_eq!(u.spec.k(), kp, "{name} universal rank");
        let (_, _, chi, got_pg, got_irr) = u.summary()?;
        expect_eq!(chi, 1i64 << (kp - 2), "{name} p_a of universal cover");
        expect_eq!((got_pg, got_irr), (pg, irr), "{name} universal (p_g, q)");
        expect_eq!(u.genus().exact, true, "{name} universal p_g exactness");
    }
    Ok(())
}

fn hexagonal() -> Check {
    let a = Analysed::preset("hexagonal-3");
    let (k2, e, _, pg, irr) = a.summary()?;
    expect_eq!((k2, e, pg, irr), (6, 6, 0, 0), "hexagonal (K², e, p_g, q)");
    expect_eq!(a.torsion(), (3, 3, true), "hexagonal torsion bound");
    let u = a.universal();
    expect_eq!(u.spec.k(), 5, "universal rank");
    let (k2, e, chi, _, irr) = u.summary()?;
    expect_eq!((k2, e, chi, irr), (162, 162, 27, 3), "universal (K², e, χ, q)");
    Ok(())
}

fn curve_table() -> Check {
    for (name, _) in BURNIAT {
        let a = Analysed::preset(name);
        let lat = a.lattice();
        let curves = branch_curve_report(&a.spec, &a.cls, &lat).map_err(|e| e.to_string())?;
        expect_eq!(curves.len(), 9 + lat.points.len(), "{name} curve count");
        for c in &curves {
            let (genus, square) = match c.source {
                CurveSource::Line(j) => {
                    let t = lat.t(j) as i64;
                    (3 - t, 1 - t)
                }
                CurveSource::Exceptional(i) => {
                    let status = a.cls.points[lat.points[i]].status;
                    if status == PointStatus::NonBranch {
                        (0, -4)
                    } else {
                        (1, -1)
                    }
                }
            };
            expect_eq!((c.components, c.genus, c.self_intersection), (1, genus, square), "{name} {}", c.label);
            expect_eq!(c.self_intersection_adjunction, square, "{name} {} by adjunction", c.label);
        }
    }
    Ok(())
}

fn minimality() -> Check {
    let zeros = |name: &str| -> Result<Vec<String>, String> {
        let a = Analysed::preset(name);
        let rep = minimality_report(&a.spec, &a.cls, &a.lattice()).map_err(|e| e.to_string())?;
        if let Some(neg) = rep.iter().find(|e| e.product < 0) {
            return Err(format!("{name}: negative product on {}", neg.curve));
        }
        Ok(rep.into_iter().filter(|e| e.product == 0).map(|e| e.curve).collect())
    };
    expect_eq!(zeros("burniat-2b")?, vec!["L~9".to_string()], "burniat-2b zero products");
    expect_eq!(zeros("burniat-2a")?, Vec::<String>::new(), "burniat-2a zero products");
    Ok(())
}

/// Random arrangement with small coefficients and random characters summing
/// to zero; None if the draw is not a valid cover.
fn random_spec(rng: &mut ChaCha8Rng) -> Option<CoverSpec> {
    let q = [2u64, 3, 5][rng.gen_range(0..3)];
    let k = rng.gen_range(2..=3);
    let n = rng.gen_range(k + 2..=8);
    let lines: Vec<[i64; 3]> = (0..n).map(|_| [0; 3].map(|_: i64| rng.gen_range(-3..=3))).collect();
    let arr = Arrangement::from_i64(&lines).ok()?;
    let mut phi: Vec<GroupElement> =
        (0..n - 1).map(|_| GroupElement::new(q, (0..k).map(|_| rng.gen_range(0..q)).collect())).collect();
    let sum = phi.iter().fold(GroupElement::zero(q, k), |s, g| s.add(g));
    phi.push(GroupElement::new(q, sum.entries.iter().map(|x| (q - x) % q).collect()));
    CoverSpec::new(arr, q, k, phi).ok()
}

fn property_suites() -> Check {
    // Noether integrality
    let mut rng = ChaCha8Rng::seed_from_u64(20240501);
    let mut good = 0;
    let mut draws = 0;
    while good < 200 {
        draws += 1;
        if draws > 200_000 {
            return Err(format!("only {good} valid φ-good specs drawn"));
        }
        let Some(spec) = random_spec(&mut rng) else { continue };
        let a = Analysed::of(spec);
        if a.cls.first_bad().is_some() {
            continue;
        }
        let inv = numerical_invariants(&a.spec, &a.cls).map_err(|e| format!("draw {draws}: {e}"))?;
        if (inv.k2 + inv.euler) % 12 != 0 {
            return Err(format!("draw {draws}: K² + e = {} + {}", inv.k2, inv.euler));
        }
        good += 1;
    }

    // double-cover rule against the general rule
    for name in PRESET_NAMES.iter().filter(|n| preset(n).unwrap().1.q() == 2) {
        let a = Analysed::preset(name);
        for chi in characters_up_to_scalar(2, a.spec.k()) {
            let c = quotient_multiplicities(&a.spec, &chi);
            let dim = |systems: Vec<_>| -> Result<u64, String> {
                systems.iter().map(|vs| poly_space_dim(vs).map_err(|e| e.to_string())).sum()
            };
            expect_eq!(
                dim(double_cover_systems(&c, &a.inc))?,
                dim(general_systems(&c, &a.inc))?,
                "{name} quotient {chi}"
            );
        }
    }

    // multiplicativity under the universal cover
    for name in PRESET_NAMES {
        let a = Analysed::preset(name);
        let u = a.universal();
        let degree = (a.spec.q() as i64).pow((u.spec.k() - a.spec.k()) as u32);
        let base = numerical_invariants(&a.spec, &a.cls).map_err(|e| e.to_string())?;
        let up = numerical_invariants(&u.spec, &u.cls).map_err(|e| e.to_string())?;
        expect_eq!(
            (up.k2, up.euler, up.chi),
            (degree * base.k2, degree * base.euler, degree * base.chi),
            "{name} universal invariants (degree {degree})"
        );
    }

    // exact rank against rank modulo a random 62-bit prime
    let p = loop {
        let c = rng.gen_range(1u64 << 61..1u64 << 62) | 1;
        if linalg::is_prime(c) {
            break c;
        }
    };
    let mut matrices = 0;
    for name in PRESET_NAMES {
        let base = Analysed::preset(name);
        for a in [base.universal(), base] {
            for chi in characters_up_to_scalar(a.spec.q(), a.spec.k()) {
                let c = quotient_multiplicities(&a.spec, &chi);
                for vs in quotient_systems(&c, &a.inc).0 {
                    let Some((ncols, m)) = condition_matrix(&vs).map_err(|e| e.to_string())? else { continue };
                    let reduced: Vec<Vec<u64>> =
                        m.iter().map(|r| r.iter().map(|x| linalg::bigint_mod(x, p)).collect()).collect();
                    expect_eq!(
                        linalg::rank_bareiss(&m),
                        linalg::rank_mod_p(&reduced, ncols, p),
                        "{name} quotient {chi}, degree {} (p = {p})",
                        vs.degree
                    );
                    matrices += 1;
                }
            }
        }
    }
    if matrices == 0 {
        return Err("no condition matrices were built".into());
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("1 godeaux invariants and Z/5 torsion", godeaux),
        ("2 campedelli invariants, (Z/2)^3 torsion, fig1 epsilons", campedelli),
        ("3 burniat invariants, k_phi, divisor systems and tables", burniat),
        ("4 universal burniat covers", universal_burniat),
        ("5 hexagonal (Z/3)^2 cover and its (Z/3)^5 universal cover", hexagonal),
        ("6 burniat curve table", curve_table),
        ("7 burniat-2b/2a minimality", minimality),
        ("8 property suites", property_suites),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(()) => println!("PASS {name}"),
            Err(why) => {
                println!("FAIL {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
