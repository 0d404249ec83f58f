//! Named fixture scenes with known answers, seeded random scene generators,
//! and the selftest that runs both.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GeometryError;
use crate::geometry::{Analysis, Analyzer, Center, Scene};
use crate::monomial::Monomial;
use crate::poly::{Polynomial, Ring};
use crate::report::{FixtureCheck, SelftestSection, SuiteSummary};
use crate::scalar::Field;
use crate::scene_file::{CenterSpec, SceneFile, SCENE_SCHEMA_VERSION};
use crate::sod::{lefschetz, sod, Lefschetz};

/// Expected outcome of `analyze` on a fixture. Verdicts are compared by label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectation {
    pub multiplicities: Vec<u32>,
    pub hypothesis: &'static str,
    pub linear: Option<&'static str>,
    pub oracle: &'static str,
    /// Coefficients of the `E_i` in the strict transform class.
    pub strict_transform: Vec<i64>,
    pub discrepancies: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub file: SceneFile,
    pub expect: Expectation,
}

type CenterDef<'a> = (&'a str, &'a [&'a str], &'a [(&'a str, &'a str)]);

fn file(vars: &[String], f: &str, centers: &[CenterDef]) -> SceneFile {
    SceneFile {
        schema: SCENE_SCHEMA_VERSION,
        variables: vars.to_vec(),
        hypersurface: f.to_string(),
        field: Field::Rational,
        centers: centers
            .iter()
            .map(|(name, vanishing, offsets)| CenterSpec {
                name: name.to_string(),
                vanishing: vanishing.iter().map(|s| s.to_string()).collect(),
                offsets: offsets
                    .iter()
                    .map(|(v, c)| (v.to_string(), c.to_string()))
                    .collect(),
            })
            .collect(),
    }
}

fn strs(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn quadric(n: usize) -> (Vec<String>, Vec<String>, String) {
    let xs: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let ys: Vec<String> = (1..=n).map(|i| format!("y{i}")).collect();
    let f = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| format!("{x}*{y}"))
        .collect::<Vec<_>>()
        .join(" + ");
    (xs, ys, f)
}

/// The quadric `x1*y1 + ... + xn*yn` blown up along `y = 0` (`k = 1`).
pub fn toy_linear(n: usize) -> Fixture {
    let (xs, ys, f) = quadric(n);
    let vars: Vec<String> = xs.iter().chain(&ys).cloned().collect();
    let y: Vec<&str> = ys.iter().map(String::as_str).collect();
    Fixture {
        name: format!("quadric-{n}-linear"),
        file: file(&vars, &f, &[("X", &y, &[])]),
        expect: Expectation {
            multiplicities: vec![1],
            hypothesis: "smooth",
            linear: Some("smooth"),
            oracle: "smooth",
            strict_transform: vec![-1],
            discrepancies: vec![n as i64 - 2],
        },
    }
}

/// The same quadric blown up at the origin (`k = 2`).
pub fn toy_origin(n: usize) -> Fixture {
    let (xs, ys, f) = quadric(n);
    let vars: Vec<String> = xs.iter().chain(&ys).cloned().collect();
    let all: Vec<&str> = vars.iter().map(String::as_str).collect();
    Fixture {
        name: format!("quadric-{n}-origin"),
        file: file(&vars, &f, &[("O", &all, &[])]),
        expect: Expectation {
            multiplicities: vec![2],
            hypothesis: "smooth",
            linear: None,
            oracle: "smooth",
            strict_transform: vec![-2],
            discrepancies: vec![2 * n as i64 - 3],
        },
    }
}

pub fn fixtures() -> Vec<Fixture> {
    let mut out = Vec::new();
    for n in 1..=3 {
        out.push(toy_linear(n));
    }
    for n in 1..=3 {
        out.push(toy_origin(n));
    }
    out.push(Fixture {
        name: "cusp".into(),
        file: file(&strs(&["x", "y"]), "x^2 - y^3", &[("O", &["x", "y"], &[])]),
        expect: Expectation {
            multiplicities: vec![2],
            hypothesis: "inconclusive",
            linear: None,
            oracle: "smooth",
            strict_transform: vec![-2],
            discrepancies: vec![-1],
        },
    });
    out.push(Fixture {
        name: "umbrella".into(),
        file: file(&strs(&["x", "y", "z"]), "x^2 - y^2*z", &[("L", &["x", "y"], &[])]),
        expect: Expectation {
            multiplicities: vec![2],
            hypothesis: "smooth",
            linear: None,
            oracle: "smooth",
            strict_transform: vec![-2],
            discrepancies: vec![-1],
        },
    });
    out.push(Fixture {
        name: "crossed-lines".into(),
        file: file(
            &strs(&["x", "y", "z"]),
            "x^2 - y^2*z^2",
            &[("O", &["x", "y", "z"], &[])],
        ),
        expect: Expectation {
            multiplicities: vec![2],
            hypothesis: "inconclusive",
            linear: None,
            oracle: "singular",
            strict_transform: vec![-2],
            discrepancies: vec![0],
        },
    });
    out.push(Fixture {
        name: "two-nodes".into(),
        file: file(
            &strs(&["x", "y", "z"]),
            "x^2 + y^2 - z^2*(z - 1)^2",
            &[
                ("P0", &["x", "y", "z"], &[]),
                ("P1", &["x", "y", "z"], &[("z", "1")]),
            ],
        ),
        expect: Expectation {
            multiplicities: vec![2, 2],
            hypothesis: "smooth",
            linear: None,
            oracle: "smooth",
            strict_transform: vec![-2, -2],
            discrepancies: vec![0, 0],
        },
    });
    out.push(Fixture {
        name: "plane-in-node".into(),
        file: file(
            &strs(&["x", "y", "z", "w"]),
            "x*y - z*w",
            &[("P", &["x", "z"], &[])],
        ),
        expect: Expectation {
            multiplicities: vec![1],
            hypothesis: "smooth",
            linear: Some("smooth"),
            oracle: "smooth",
            strict_transform: vec![-1],
            discrepancies: vec![0],
        },
    });
    out
}

/// Differences between an analysis and a fixture's expectation.
pub fn check_expectation(a: &Analysis, e: &Expectation) -> Vec<String> {
    let mut bad = Vec::new();
    let ks: Vec<u32> = a.centers.iter().map(|c| c.multiplicity).collect();
    if ks != e.multiplicities {
        bad.push(format!("multiplicities {ks:?}, expected {:?}", e.multiplicities));
    }
    if a.hypothesis.label() != e.hypothesis {
        bad.push(format!(
            "hypothesis route {}, expected {}",
            a.hypothesis.label(),
            e.hypothesis
        ));
    }
    let linear = a.linear_route.as_ref().map(|v| v.label());
    if linear != e.linear {
        bad.push(format!("linear route {linear:?}, expected {:?}", e.linear));
    }
    if a.oracle.verdict.label() != e.oracle {
        bad.push(format!(
            "chart oracle {}, expected {}",
            a.oracle.verdict.label(),
            e.oracle
        ));
    }
    if a.ledger.strict_transform.pullback_y != 1
        || a.ledger.strict_transform.exceptional != e.strict_transform
    {
        bad.push(format!(
            "strict transform class {:?}, expected {:?}",
            a.ledger.strict_transform.exceptional, e.strict_transform
        ));
    }
    let ds: Vec<i64> = a.ledger.discrepancies.iter().map(|d| d.by_lattice).collect();
    if ds != e.discrepancies {
        bad.push(format!("discrepancies {ds:?}, expected {:?}", e.discrepancies));
    }
    bad.extend(ledger_violations(a));
    if !a.consistency.consistent {
        bad.push(a.consistency.note.clone());
    }
    bad
}

/// Checks that hold for every analysis: the two discrepancy computations
/// agree and the block counts match `d - k` and `d - k - 1`.
pub fn ledger_violations(a: &Analysis) -> Vec<String> {
    let mut bad = Vec::new();
    for d in &a.ledger.discrepancies {
        if d.by_formula != d.by_lattice {
            bad.push(format!(
                "discrepancy at center {}: formula {} vs lattice {}",
                d.center, d.by_formula, d.by_lattice
            ));
        }
    }
    for c in &a.centers {
        let (d, k) = (c.codimension, c.multiplicity);
        match lefschetz(c.index, d, k) {
            Lefschetz::Applicable { blocks, dual_blocks } => {
                if blocks.len() != d - k as usize || dual_blocks.len() != blocks.len() {
                    bad.push(format!("lefschetz block count at center {}", c.index));
                }
                let twisted = sod(&[(d, k)]).map(|b| b.len() - 1);
                if twisted != Ok(d - k as usize - 1) {
                    bad.push(format!("sod block count at center {}", c.index));
                }
            }
            Lefschetz::NotApplicable { .. } => {
                if (k as usize) < d {
                    bad.push(format!("lefschetz guard misfired at center {}", c.index));
                }
            }
        }
    }
    bad
}

fn random_coefficient(rng: &mut ChaCha8Rng, ring: Ring) -> crate::scalar::Scalar {
    let mut c = 0;
    while c == 0 {
        c = rng.random_range(-3..=3);
    }
    ring.field.from_i64(c)
}

fn random_monomial(rng: &mut ChaCha8Rng, nvars: usize, vars: &[usize], max_degree: u32) -> Monomial {
    let mut exps = vec![0u32; nvars];
    if !vars.is_empty() {
        for _ in 0..rng.random_range(0..=max_degree) {
            exps[vars[rng.random_range(0..vars.len())]] += 1;
        }
    }
    Monomial::new(exps)
}

/// Random polynomial in `vars` with at most `terms` terms of degree at most
/// `max_degree`.
fn random_poly(
    rng: &mut ChaCha8Rng,
    ring: Ring,
    vars: &[usize],
    max_degree: u32,
    terms: usize,
) -> Polynomial {
    let n = rng.random_range(1..=terms);
    ring.from_terms((0..n).map(|_| {
        (
            random_coefficient(rng, ring),
            random_monomial(rng, ring.nvars, vars, max_degree),
        )
    }))
}

fn scene_from(names: Vec<String>, f: Polynomial, normal: Vec<usize>) -> Scene {
    let ring = f.ring();
    let centers = vec![Center::new("X", normal, ring)];
    Scene::new(names, f, centers).expect("generated scenes are well formed")
}

fn default_names(n: usize) -> Vec<String> {
    ["x", "y", "z", "w"]
        .iter()
        .take(n)
        .map(|s| s.to_string())
        .collect()
}

/// A scene in at most four variables with `deg f <= 4` and one coordinate
/// subspace center contained in `Y`.
pub fn random_scene(rng: &mut ChaCha8Rng) -> Scene {
    let n = rng.random_range(2..=4usize);
    let ring = Ring::new(n, Field::Rational);
    let d = rng.random_range(1..=n);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    let mut normal = idx[..d].to_vec();
    normal.sort_unstable();
    let all: Vec<usize> = (0..n).collect();
    loop {
        let mut f = ring.zero();
        // a quadratic part in the normal variables makes k = 2 common
        if rng.random_bool(0.4) {
            for (i, &a) in normal.iter().enumerate() {
                for &b in &normal[i..] {
                    if rng.random_bool(0.5) {
                        let m = ring.var(a) * &ring.var(b);
                        f = f + &m.scale(&random_coefficient(rng, ring));
                    }
                }
            }
        }
        for &l in &normal {
            if rng.random_bool(0.6) {
                let h = random_poly(rng, ring, &all, 3, 3);
                f = f + &(&ring.var(l) * &h);
            }
        }
        if !f.is_zero() && !f.is_constant() && f.degree().is_some_and(|deg| deg <= 4) {
            return scene_from(default_names(n), f, normal);
        }
    }
}

/// A scene with a single center of multiplicity one: `f = Σ y_l·c_l(x) + q`
/// with `q` in the square of the center ideal.
pub fn random_linear_scene(rng: &mut ChaCha8Rng) -> Scene {
    let n = rng.random_range(2..=4usize);
    let ring = Ring::new(n, Field::Rational);
    let d = rng.random_range(1..=n);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    let mut normal = idx[..d].to_vec();
    normal.sort_unstable();
    let tangent: Vec<usize> = (0..n).filter(|i| !normal.contains(i)).collect();
    loop {
        let mode = rng.random_range(0..3);
        // coefficients with a common factor make B too large or singular
        let shared = random_poly(rng, ring, &tangent, 2, 2);
        let mut f = ring.zero();
        for &l in &normal {
            if rng.random_bool(0.8) {
                let c = match mode {
                    0 => random_poly(rng, ring, &tangent, 1, 2),
                    1 => random_poly(rng, ring, &tangent, 2, 2),
                    _ => &shared * &random_poly(rng, ring, &tangent, 1, 2),
                };
                f = f + &(&ring.var(l) * &c);
            }
        }
        if f.is_zero() {
            continue;
        }
        if rng.random_bool(0.5) {
            let a = normal[rng.random_range(0..d)];
            let b = normal[rng.random_range(0..d)];
            let r = random_poly(rng, ring, &tangent, 1, 1);
            f = f + &(&(ring.var(a) * &ring.var(b)) * &r);
        }
        return scene_from(default_names(n), f, normal);
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Counts for the two randomized suites.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteTally {
    pub cases: usize,
    pub positives: usize,
    pub exceptions: Vec<String>,
}

impl SuiteTally {
    pub fn summary(&self) -> SuiteSummary {
        SuiteSummary {
            cases: self.cases,
            positives: self.positives,
            exceptions: self.exceptions.len(),
        }
    }
}

/// Hypothesis route Smooth must imply chart oracle Smooth, and every ledger
/// identity must hold.
pub fn route_agreement(analyzer: &Analyzer, seed: u64, count: usize) -> Result<SuiteTally, GeometryError> {
    let mut r = rng(seed);
    let mut t = SuiteTally::default();
    for i in 0..count {
        let scene = random_scene(&mut r);
        let a = analyzer.analyze(&scene)?;
        t.cases += 1;
        if a.hypothesis.is_smooth() {
            t.positives += 1;
            if !a.oracle.verdict.is_smooth() {
                t.exceptions.push(format!(
                    "scene {i}: {}",
                    scene.hypersurface().render(scene.names(), Default::default())
                ));
            }
        }
        for v in ledger_violations(&a) {
            t.exceptions.push(format!("scene {i}: {v}"));
        }
    }
    Ok(t)
}

/// For `k = 1`: the B criterion (Smooth, of the expected dimension or empty)
/// holds iff the exceptional section is a smooth divisor.
pub fn linear_equivalence(analyzer: &Analyzer, seed: u64, count: usize) -> Result<SuiteTally, GeometryError> {
    let mut r = rng(seed);
    let mut t = SuiteTally::default();
    for i in 0..count {
        let scene = random_linear_scene(&mut r);
        let a = analyzer.analyze_center(&scene, 0)?;
        t.cases += 1;
        let b = a
            .b_locus
            .as_ref()
            .ok_or_else(|| GeometryError::Internal(format!("linear scene {i} has k = {}", a.multiplicity)))?;
        let by_b = b.verdict.is_smooth();
        let by_section = a.exceptional.is_smooth();
        if by_b {
            t.positives += 1;
        }
        if by_b != by_section {
            t.exceptions.push(format!(
                "scene {i}: {} (B {}, section {})",
                scene.hypersurface().render(scene.names(), Default::default()),
                b.verdict.label(),
                a.exceptional.label()
            ));
        }
    }
    Ok(t)
}

pub const SELFTEST_RANDOM_SCENES: usize = 200;
pub const SELFTEST_LINEAR_SCENES: usize = 100;

/// Runs the fixture corpus and both randomized suites.
pub fn selftest(analyzer: &Analyzer, seed: u64) -> Result<SelftestSection, GeometryError> {
    let mut checks = Vec::new();
    for fx in fixtures() {
        let scene = fx.file.to_scene(analyzer.engine())?;
        let a = analyzer.analyze(&scene)?;
        let failures = check_expectation(&a, &fx.expect);
        checks.push(FixtureCheck {
            name: fx.name,
            passed: failures.is_empty(),
            failures,
        });
    }
    let routes = route_agreement(analyzer, seed, SELFTEST_RANDOM_SCENES)?;
    let linear = linear_equivalence(analyzer, seed, SELFTEST_LINEAR_SCENES)?;
    let passed =
        checks.iter().all(|c| c.passed) && routes.exceptions.is_empty() && linear.exceptions.is_empty();
    Ok(SelftestSection {
        seed,
        fixtures: checks,
        route_agreement: routes.summary(),
        linear_equivalence: linear.summary(),
        passed,
    })
}

/// Fixture files keyed by file name, as written to the repository.
pub fn fixture_files() -> BTreeMap<String, String> {
    fixtures()
        .into_iter()
        .map(|f| (format!("{}.toml", f.name), f.file.to_toml()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_meet_expectations() {
        let an = Analyzer::default();
        for fx in fixtures() {
            let scene = fx.file.to_scene(an.engine()).unwrap();
            let a = an.analyze(&scene).unwrap();
            let bad = check_expectation(&a, &fx.expect);
            assert!(bad.is_empty(), "{}: {bad:?}", fx.name);
        }
    }

    #[test]
    fn generators_are_seeded() {
        let a: Vec<_> = (0..5)
            .map({
                let mut r = rng(7);
                move |_| random_scene(&mut r)
            })
            .collect();
        let b: Vec<_> = (0..5)
            .map({
                let mut r = rng(7);
                move |_| random_scene(&mut r)
            })
            .collect();
        assert_eq!(a, b);
    }

    #[test]
    fn random_scenes_are_valid() {
        let an = Analyzer::default();
        let mut r = rng(1);
        for _ in 0..20 {
            let s = random_scene(&mut r);
            assert!(s.nvars() <= 4);
            assert!(s.hypersurface().degree().unwrap() <= 4);
            Scene::validated(
                s.names().to_vec(),
                s.hypersurface().clone(),
                s.centers().to_vec(),
                an.engine(),
            )
            .unwrap();
            let l = random_linear_scene(&mut r);
            assert_eq!(an.multiplicity(&l, 0).unwrap(), 1);
        }
    }
}
