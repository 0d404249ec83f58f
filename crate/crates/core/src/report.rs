//! Versioned reports: what each command produces, as JSON or plain text.
//!
//! Every field is derived from the input alone, so identical invocations
//! serialize to identical bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::GeometryError;
use crate::geometry::{Analysis, Analyzer, CenterAnalysis, OracleOutcome, Scene, Verdict};
use crate::ideal::Dimension;
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::scalar::Field;
use crate::scene_file::SceneFile;
use crate::sod::{BlockKind, Lefschetz, LefschetzBlock, SodBlock, SodReport};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Analyze,
    Charts,
    Sod,
    Oracle,
    Selftest,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Charts => "charts",
            Command::Sod => "sod",
            Command::Oracle => "oracle",
            Command::Selftest => "selftest",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema: u32,
    pub tool: ToolInfo,
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<InputEcho>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub centers: Option<Vec<CenterReport>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<VerdictSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divisors: Option<DivisorSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub charts: Option<Vec<ChartReport>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sod: Option<SodSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub selftest: Option<SelftestSection>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

impl ToolInfo {
    pub fn current() -> Self {
        ToolInfo {
            name: "blowup".into(),
            version: env!("CARGO_PKG_VERSION").into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub field: Field,
    pub variables: Vec<String>,
    /// Canonical rendering of the parsed hypersurface.
    pub hypersurface: String,
    pub centers: Vec<CenterEcho>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterEcho {
    pub name: String,
    pub vanishing: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub offsets: BTreeMap<String, String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Smooth,
    Singular,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// Generators of the witness ideal, rendered in the coordinates named by
    /// the surrounding section.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<String>,
}

impl VerdictReport {
    pub fn new(v: &Verdict, names: &[String]) -> Self {
        match v {
            Verdict::Smooth => VerdictReport {
                status: Status::Smooth,
                reason: None,
                witness: Vec::new(),
            },
            Verdict::Singular(w) => VerdictReport {
                status: Status::Singular,
                reason: Some(w.reason.clone()),
                witness: w.generators.iter().map(|g| render_in(g, names)).collect(),
            },
            Verdict::Inconclusive(why) => VerdictReport {
                status: Status::Inconclusive,
                reason: Some(why.clone()),
                witness: Vec::new(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterReport {
    pub name: String,
    pub codimension: usize,
    pub multiplicity: u32,
    /// True when the center is translated; `leading_form` and `section` then
    /// use `y - c` in place of each normal variable `y`.
    pub local_coordinates: bool,
    pub leading_form: String,
    /// The leading form with the normal variables capitalized as fiber
    /// coordinates.
    pub section: String,
    pub exceptional_divisor: VerdictReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_locus: Option<BLocusReport>,
    pub discrepancy: i64,
    pub lefschetz_applicable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BLocusReport {
    pub tangent_variables: Vec<String>,
    pub coefficients: Vec<String>,
    pub dimension: Dimension,
    pub expected_dimension: i64,
    pub vacuous: bool,
    pub verdict: VerdictReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictSection {
    pub away_from_centers: VerdictReport,
    pub hypothesis_route: VerdictReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub linear_route: Option<VerdictReport>,
    pub chart_oracle: VerdictReport,
    pub consistent: bool,
    pub consistency_note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorSection {
    /// Basis of the exceptional lattice, in report order.
    pub basis: Vec<String>,
    pub strict_transform: BTreeMap<String, i64>,
    pub canonical_class: BTreeMap<String, i64>,
    pub discrepancies: Vec<DiscrepancyReport>,
    pub assumes_y_normal: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub exceptional_blowups: Vec<ExceptionalBlowupReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscrepancyReport {
    pub center: String,
    pub by_formula: i64,
    pub by_lattice: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalBlowupReport {
    pub center: String,
    pub det_conormal_power: i64,
    pub twist: BTreeMap<String, i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSection {
    pub verdict: VerdictReport,
    pub away_from_centers: VerdictReport,
    pub charts: Vec<ChartCheckReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartCheckReport {
    pub center: String,
    pub chart_variable: String,
    pub smooth: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartReport {
    pub center: String,
    pub chart_variable: String,
    pub coordinates: Vec<String>,
    pub exceptional_coordinate: String,
    pub substitution: Vec<Substitution>,
    pub strict_transform: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Substitution {
    pub variable: String,
    pub image: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SodSection {
    /// Order of the twisted blocks within each center.
    pub twist_order: String,
    /// Whether the strict transform was certified smooth; absent when the
    /// command did not evaluate it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strict_transform_certified: Option<bool>,
    pub lefschetz: Vec<LefschetzReport>,
    pub decomposition: DecompositionReport,
    pub serre_vanishing: Vec<VanishingReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum LefschetzReport {
    Applicable {
        center: String,
        codimension: usize,
        multiplicity: u32,
        blocks: Vec<BlockReport>,
        dual_blocks: Vec<BlockReport>,
    },
    NotApplicable {
        center: String,
        codimension: usize,
        multiplicity: u32,
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockReport {
    pub label: String,
    pub kind: BlockKind,
    pub twist: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum DecompositionReport {
    Applicable { blocks: Vec<SodBlockReport> },
    NotApplicable { reason: String, offenders: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SodBlockReport {
    Twisted { center: String, twist: i64 },
    Residual { weakly_crepant: bool },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingReport {
    pub center: String,
    pub lower: i64,
    pub upper: i64,
    pub twists: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestSection {
    pub seed: u64,
    pub fixtures: Vec<FixtureCheck>,
    /// Hypothesis route Smooth implies chart oracle Smooth.
    pub route_agreement: SuiteSummary,
    /// For `k = 1`: B criterion Smooth iff exceptional section Smooth.
    pub linear_equivalence: SuiteSummary,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureCheck {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub cases: usize,
    /// Cases where the premise held.
    pub positives: usize,
    pub exceptions: usize,
}

fn render_in(p: &Polynomial, names: &[String]) -> String {
    p.render(names, MonomialOrder::Grevlex)
}

fn capitalize(name: &str) -> String {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

fn echo(scene: &Scene) -> InputEcho {
    let names = scene.names();
    InputEcho {
        field: scene.ring().field,
        variables: names.to_vec(),
        hypersurface: render_in(scene.hypersurface(), names),
        centers: scene
            .centers()
            .iter()
            .map(|c| CenterEcho {
                name: c.name.clone(),
                vanishing: c.normal().iter().map(|&i| names[i].clone()).collect(),
                offsets: c
                    .normal()
                    .iter()
                    .zip(c.offsets())
                    .filter(|(_, o)| !o.is_zero())
                    .map(|(&i, o)| (names[i].clone(), o.to_string()))
                    .collect(),
            })
            .collect(),
    }
}

fn center_report(a: &CenterAnalysis, scene: &Scene) -> CenterReport {
    let names = scene.names();
    let mut section_names = names.to_vec();
    for &l in a.center.normal() {
        section_names[l] = capitalize(&names[l]);
    }
    let b_locus = a.b_locus.as_ref().map(|b| {
        let tangent: Vec<String> = b.tangent_vars.iter().map(|&i| names[i].clone()).collect();
        BLocusReport {
            coefficients: b.coefficients.iter().map(|c| render_in(c, &tangent)).collect(),
            dimension: b.dimension,
            expected_dimension: b.expected_dimension,
            vacuous: b.vacuous,
            verdict: VerdictReport::new(&b.verdict, &tangent),
            tangent_variables: tangent,
        }
    });
    CenterReport {
        name: a.center.name.clone(),
        codimension: a.codimension,
        multiplicity: a.multiplicity,
        local_coordinates: !a.center.is_through_origin(),
        leading_form: render_in(&a.leading_form, names),
        section: render_in(&a.section, &section_names),
        exceptional_divisor: VerdictReport::new(&a.exceptional, names),
        b_locus,
        discrepancy: a.discrepancy,
        lefschetz_applicable: a.lefschetz_applicable,
    }
}

fn exceptional_key(scene: &Scene, i: usize) -> String {
    format!("E_{}", scene.centers()[i].name)
}

fn class_map(scene: &Scene, head: &str, head_coeff: i64, exceptional: &[i64]) -> BTreeMap<String, i64> {
    let mut m = BTreeMap::new();
    m.insert(head.to_string(), head_coeff);
    for (i, &c) in exceptional.iter().enumerate() {
        m.insert(exceptional_key(scene, i), c);
    }
    m
}

fn divisor_section(analysis: &Analysis, scene: &Scene) -> DivisorSection {
    let l = &analysis.ledger;
    let mut basis = vec!["pi*Y".to_string()];
    basis.extend((0..scene.centers().len()).map(|i| exceptional_key(scene, i)));
    DivisorSection {
        basis,
        strict_transform: class_map(
            scene,
            "pi*Y",
            l.strict_transform.pullback_y,
            &l.strict_transform.exceptional,
        ),
        canonical_class: class_map(scene, "pi*K_Y", l.canonical.pullback_ky, &l.canonical.exceptional),
        discrepancies: l
            .discrepancies
            .iter()
            .map(|d| DiscrepancyReport {
                center: scene.centers()[d.center].name.clone(),
                by_formula: d.by_formula,
                by_lattice: d.by_lattice,
            })
            .collect(),
        assumes_y_normal: l.assumes_normal,
        exceptional_blowups: l
            .blowup_records
            .iter()
            .map(|r| ExceptionalBlowupReport {
                center: scene.centers()[r.center].name.clone(),
                det_conormal_power: r.det_conormal_power,
                twist: class_map(scene, "pi*Y", r.twist.pullback_y, &r.twist.exceptional),
            })
            .collect(),
    }
}

fn oracle_section(o: &OracleOutcome, scene: &Scene) -> OracleSection {
    let names = scene.names();
    // A chart failure carries a witness in that chart's coordinates.
    let verdict_names = match (&o.away_from_centers, o.checks.iter().find(|c| !c.smooth)) {
        (Verdict::Singular(_), _) | (_, None) => names.to_vec(),
        (_, Some(bad)) => bad.names.clone(),
    };
    OracleSection {
        verdict: VerdictReport::new(&o.verdict, &verdict_names),
        away_from_centers: VerdictReport::new(&o.away_from_centers, names),
        charts: o
            .checks
            .iter()
            .map(|c| ChartCheckReport {
                center: scene.centers()[c.center].name.clone(),
                chart_variable: names[c.chart_var].clone(),
                smooth: c.smooth,
            })
            .collect(),
    }
}

fn block_report(b: &LefschetzBlock, letter: char) -> BlockReport {
    BlockReport {
        label: format!("{letter}_{}", b.index),
        kind: b.kind,
        twist: b.twist,
    }
}

fn sod_section(scene: &Scene, invariants: &[(usize, u32)], certified: Option<bool>) -> SodSection {
    let built = SodReport::build(invariants);
    let name = |i: usize| scene.centers()[i].name.clone();
    let lefschetz = built
        .lefschetz
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let (codimension, multiplicity) = invariants[i];
            match l {
                Lefschetz::Applicable { blocks, dual_blocks } => LefschetzReport::Applicable {
                    center: name(i),
                    codimension,
                    multiplicity,
                    blocks: blocks.iter().map(|b| block_report(b, 'A')).collect(),
                    dual_blocks: dual_blocks.iter().map(|b| block_report(b, 'B')).collect(),
                },
                Lefschetz::NotApplicable { reason } => LefschetzReport::NotApplicable {
                    center: name(i),
                    codimension,
                    multiplicity,
                    reason: reason.clone(),
                },
            }
        })
        .collect();
    let decomposition = match &built.decomposition {
        Ok(blocks) => DecompositionReport::Applicable {
            blocks: blocks
                .iter()
                .map(|b| match *b {
                    SodBlock::Twisted { center, twist } => SodBlockReport::Twisted {
                        center: name(center),
                        twist,
                    },
                    SodBlock::Residual { weakly_crepant } => SodBlockReport::Residual { weakly_crepant },
                })
                .collect(),
        },
        Err(e) => DecompositionReport::NotApplicable {
            reason: "every center needs k < d".into(),
            offenders: e.offenders.iter().map(|&i| name(i)).collect(),
        },
    };
    SodSection {
        twist_order: "ascending".into(),
        strict_transform_certified: certified,
        lefschetz,
        decomposition,
        serre_vanishing: built
            .vanishing
            .iter()
            .map(|v| VanishingReport {
                center: name(v.center),
                lower: v.lower,
                upper: v.upper,
                twists: v.twists.clone(),
            })
            .collect(),
    }
}

impl Report {
    fn empty(command: Command) -> Self {
        Report {
            schema: REPORT_SCHEMA_VERSION,
            tool: ToolInfo::current(),
            command,
            input: None,
            centers: None,
            verdicts: None,
            divisors: None,
            oracle: None,
            charts: None,
            sod: None,
            selftest: None,
            warnings: Vec::new(),
        }
    }

    /// Runs one scene command. `Command::Selftest` is not a scene command and
    /// is rejected.
    pub fn run(command: Command, file: &SceneFile, analyzer: &Analyzer) -> Result<Report, GeometryError> {
        let scene = file.to_scene(analyzer.engine())?;
        let mut r = Report::empty(command);
        r.input = Some(echo(&scene));
        match command {
            Command::Analyze => {
                let a = analyzer.analyze(&scene)?;
                let names = scene.names();
                let oracle = oracle_section(&a.oracle, &scene);
                r.centers = Some(a.centers.iter().map(|c| center_report(c, &scene)).collect());
                r.verdicts = Some(VerdictSection {
                    away_from_centers: VerdictReport::new(&a.away_from_centers, names),
                    hypothesis_route: VerdictReport::new(&a.hypothesis, names),
                    linear_route: a.linear_route.as_ref().map(|v| VerdictReport::new(v, names)),
                    chart_oracle: oracle.verdict.clone(),
                    consistent: a.consistency.consistent,
                    consistency_note: a.consistency.note.clone(),
                });
                r.divisors = Some(divisor_section(&a, &scene));
                r.oracle = Some(oracle);
                let invariants: Vec<(usize, u32)> = a
                    .centers
                    .iter()
                    .map(|c| (c.codimension, c.multiplicity))
                    .collect();
                let certified =
                    a.hypothesis.is_smooth() || a.linear_route.as_ref().is_some_and(Verdict::is_smooth);
                r.sod = Some(sod_section(&scene, &invariants, Some(certified)));
                r.warnings = a.warnings.clone();
            }
            Command::Charts => {
                let names = scene.names();
                let mut charts = Vec::new();
                for ci in 0..scene.centers().len() {
                    for ch in analyzer.charts(&scene, ci)? {
                        charts.push(ChartReport {
                            center: scene.centers()[ci].name.clone(),
                            chart_variable: names[ch.chart_var].clone(),
                            exceptional_coordinate: ch.names[ch.exceptional()].clone(),
                            substitution: ch
                                .images
                                .iter()
                                .enumerate()
                                .filter(|(i, img)| **img != scene.ring().var(*i))
                                .map(|(i, img)| Substitution {
                                    variable: names[i].clone(),
                                    image: render_in(img, &ch.names),
                                })
                                .collect(),
                            strict_transform: render_in(&ch.strict_transform, &ch.names),
                            coordinates: ch.names.clone(),
                        });
                    }
                }
                r.charts = Some(charts);
            }
            Command::Sod => {
                let invariants = (0..scene.centers().len())
                    .map(|i| {
                        Ok((
                            scene.centers()[i].codimension(),
                            analyzer.multiplicity(&scene, i)?,
                        ))
                    })
                    .collect::<Result<Vec<_>, GeometryError>>()?;
                r.sod = Some(sod_section(&scene, &invariants, None));
            }
            Command::Oracle => {
                let o = analyzer.chart_oracle(&scene)?;
                r.oracle = Some(oracle_section(&o, &scene));
            }
            Command::Selftest => {
                return Err(GeometryError::Precondition(
                    "selftest does not take a scene".into(),
                ));
            }
        }
        Ok(r)
    }

    pub fn selftest(section: SelftestSection) -> Report {
        let mut r = Report::empty(Command::Selftest);
        r.selftest = Some(section);
        r
    }

    /// False when a sufficient criterion disagreed with the chart oracle or a
    /// selftest check failed.
    pub fn is_consistent(&self) -> bool {
        self.verdicts.as_ref().is_none_or(|v| v.consistent) && self.selftest.as_ref().is_none_or(|s| s.passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_plain(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        let _ = writeln!(
            w,
            "{} {} {}",
            self.tool.name,
            self.tool.version,
            self.command.name()
        );
        if let Some(input) = &self.input {
            let _ = writeln!(
                w,
                "field {}; variables {}",
                input.field,
                input.variables.join(", ")
            );
            let _ = writeln!(w, "f = {}", input.hypersurface);
        }
        for c in self.centers.iter().flatten() {
            let _ = writeln!(
                w,
                "center {}: d = {}, k = {}, discrepancy = {}",
                c.name, c.codimension, c.multiplicity, c.discrepancy
            );
            let local = if c.local_coordinates {
                " (local coordinates)"
            } else {
                ""
            };
            let _ = writeln!(w, "  leading form{local}: {}", c.leading_form);
            let _ = writeln!(w, "  section: {}", c.section);
            let _ = writeln!(
                w,
                "  exceptional divisor: {}",
                plain_verdict(&c.exceptional_divisor)
            );
            if let Some(b) = &c.b_locus {
                let _ = writeln!(
                    w,
                    "  B = V({}) in ({}): dim {}, expected {}: {}{}",
                    b.coefficients.join(", "),
                    b.tangent_variables.join(", "),
                    b.dimension,
                    b.expected_dimension,
                    plain_verdict(&b.verdict),
                    if b.vacuous { " (vacuous)" } else { "" }
                );
            }
        }
        if let Some(v) = &self.verdicts {
            let _ = writeln!(w, "away from centers: {}", plain_verdict(&v.away_from_centers));
            let _ = writeln!(w, "hypothesis route: {}", plain_verdict(&v.hypothesis_route));
            if let Some(l) = &v.linear_route {
                let _ = writeln!(w, "linear route: {}", plain_verdict(l));
            }
            let _ = writeln!(w, "chart oracle: {}", plain_verdict(&v.chart_oracle));
            let _ = writeln!(
                w,
                "consistency: {} ({})",
                if v.consistent { "ok" } else { "VIOLATED" },
                v.consistency_note
            );
        } else if let Some(o) = &self.oracle {
            let _ = writeln!(w, "away from centers: {}", plain_verdict(&o.away_from_centers));
            let _ = writeln!(w, "chart oracle: {}", plain_verdict(&o.verdict));
            for c in &o.charts {
                let _ = writeln!(
                    w,
                    "  chart {} of {}: {}",
                    c.chart_variable,
                    c.center,
                    if c.smooth { "smooth" } else { "singular" }
                );
            }
        }
        if let Some(d) = &self.divisors {
            let _ = writeln!(
                w,
                "strict transform: {}",
                plain_class(&d.basis, &d.strict_transform)
            );
            let mut kb = d.basis.clone();
            kb[0] = "pi*K_Y".into();
            let _ = writeln!(w, "canonical class: K = {}", plain_class(&kb, &d.canonical_class));
            for e in &d.exceptional_blowups {
                let _ = writeln!(
                    w,
                    "  exceptional blow-up over {}: det(C)^{} (x) O({})",
                    e.center,
                    e.det_conormal_power,
                    plain_class(&d.basis, &e.twist)
                );
            }
        }
        for ch in self.charts.iter().flatten() {
            let _ = writeln!(w, "chart {} of {}:", ch.chart_variable, ch.center);
            for s in &ch.substitution {
                let _ = writeln!(w, "  {} = {}", s.variable, s.image);
            }
            let _ = writeln!(w, "  strict transform: {}", ch.strict_transform);
        }
        if let Some(s) = &self.sod {
            plain_sod(w, s);
        }
        if let Some(t) = &self.selftest {
            let _ = writeln!(w, "seed {}", t.seed);
            for f in &t.fixtures {
                let _ = writeln!(w, "  {} {}", if f.passed { "ok  " } else { "FAIL" }, f.name);
                for why in &f.failures {
                    let _ = writeln!(w, "       {why}");
                }
            }
            for (label, s) in [
                ("route agreement", &t.route_agreement),
                ("linear equivalence", &t.linear_equivalence),
            ] {
                let _ = writeln!(
                    w,
                    "{label}: {} cases, {} positive, {} exceptions",
                    s.cases, s.positives, s.exceptions
                );
            }
            let _ = writeln!(w, "{}", if t.passed { "passed" } else { "FAILED" });
        }
        for warning in &self.warnings {
            let _ = writeln!(w, "warning: {warning}");
        }
        out
    }
}

fn plain_verdict(v: &VerdictReport) -> String {
    let label = match v.status {
        Status::Smooth => "smooth",
        Status::Singular => "singular",
        Status::Inconclusive => "inconclusive",
    };
    match &v.reason {
        Some(r) => format!("{label} ({r})"),
        None => label.to_string(),
    }
}

fn plain_class(basis: &[String], coeffs: &BTreeMap<String, i64>) -> String {
    let mut out = String::new();
    for b in basis {
        let c = coeffs.get(b).copied().unwrap_or(0);
        if c == 0 {
            continue;
        }
        let sign = if c < 0 { "-" } else { "+" };
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            let _ = write!(out, " {sign} ");
        }
        if c.abs() != 1 {
            let _ = write!(out, "{}", c.abs());
        }
        out.push_str(b);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn plain_sod(w: &mut String, s: &SodSection) {
    for l in &s.lefschetz {
        match l {
            LefschetzReport::Applicable {
                center,
                blocks,
                dual_blocks,
                ..
            } => {
                let fmt = |bs: &[BlockReport]| {
                    bs.iter()
                        .map(|b| format!("{}(x)O({})", b.label, b.twist))
                        .collect::<Vec<_>>()
                        .join(", ")
                };
                let _ = writeln!(w, "lefschetz over {center}: <{}>", fmt(blocks));
                let _ = writeln!(w, "dual lefschetz over {center}: <{}>", fmt(dual_blocks));
            }
            LefschetzReport::NotApplicable { center, reason, .. } => {
                let _ = writeln!(w, "lefschetz over {center}: not applicable ({reason})");
            }
        }
    }
    match &s.decomposition {
        DecompositionReport::Applicable { blocks } => {
            let parts: Vec<String> = blocks
                .iter()
                .map(|b| match b {
                    SodBlockReport::Twisted { center, twist } => format!("D({center})(x)O({twist})"),
                    SodBlockReport::Residual { .. } => "D~".to_string(),
                })
                .collect();
            let _ = writeln!(w, "sod ({}): <{}>", s.twist_order, parts.join(", "));
        }
        DecompositionReport::NotApplicable { reason, offenders } => {
            let _ = writeln!(
                w,
                "sod: not applicable ({reason}; fails at {})",
                offenders.join(", ")
            );
        }
    }
    if let Some(c) = s.strict_transform_certified {
        let _ = writeln!(w, "strict transform certified smooth: {c}");
    }
    for v in &s.serre_vanishing {
        let _ = writeln!(w, "vanishing over {}: twists {:?}", v.center, v.twists);
    }
}
