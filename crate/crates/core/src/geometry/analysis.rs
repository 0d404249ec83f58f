use crate::error::{GeometryError, SceneError};
use crate::geometry::charts::{self, BlowupChart};
use crate::geometry::divisor::{adjunction_ledger, AdjunctionLedger};
use crate::geometry::{Center, Scene, Verdict};
use crate::ideal::{minors_ideal, Dimension, Engine, Ideal, PolyMatrix};
use crate::poly::Polynomial;

/// The zero locus `B` of the coefficient vector of a linear leading form,
/// inside the tangent coordinate space of the center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BLocus {
    /// Coefficient of each normal variable, over the tangent variables only.
    pub coefficients: Vec<Polynomial>,
    pub tangent_vars: Vec<usize>,
    pub dimension: Dimension,
    /// `2·dim X - N`.
    pub expected_dimension: i64,
    pub verdict: Verdict,
    /// `B` is empty and was accepted without a dimension match.
    pub vacuous: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterAnalysis {
    pub index: usize,
    pub center: Center,
    pub codimension: usize,
    pub multiplicity: u32,
    /// Degree-`k` part of `f` in the normal variables, in coordinates centered
    /// on the center.
    pub leading_form: Polynomial,
    /// The same polynomial read bihomogeneously on `X × P^{d-1}`, with the
    /// normal variables as fiber coordinates.
    pub section: Polynomial,
    pub exceptional: Verdict,
    /// Present when `k = 1`.
    pub b_locus: Option<BLocus>,
    pub discrepancy: i64,
    pub lefschetz_applicable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartCheck {
    pub center: usize,
    pub chart_var: usize,
    /// Chart coordinate names, as in [`BlowupChart::names`].
    pub names: Vec<String>,
    pub smooth: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOutcome {
    pub verdict: Verdict,
    pub away_from_centers: Verdict,
    pub checks: Vec<ChartCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Consistency {
    pub consistent: bool,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Analysis {
    pub centers: Vec<CenterAnalysis>,
    /// Smooth iff `Y - X` is smooth.
    pub away_from_centers: Verdict,
    /// Smooth when the general sufficient criterion applies; never Singular.
    pub hypothesis: Verdict,
    /// The `k = 1` criterion through the `B` loci, when every `k_i = 1`.
    pub linear_route: Option<Verdict>,
    pub oracle: OracleOutcome,
    pub consistency: Consistency,
    pub ledger: AdjunctionLedger,
    pub warnings: Vec<String>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Analyzer {
    engine: Engine,
}

impl Analyzer {
    pub fn new(engine: Engine) -> Self {
        Analyzer { engine }
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    /// Largest `k` with `f ∈ I_X^k`.
    pub fn multiplicity(&self, scene: &Scene, center: usize) -> Result<u32, GeometryError> {
        let c = &scene.centers()[center];
        let f = scene.hypersurface();
        let ideal = c.ideal(scene.ring());
        if !self.engine.contains(&ideal, f)? {
            return Err(SceneError::CenterNotContained(c.name.clone()).into());
        }
        let top = f.degree().unwrap_or(0);
        let mut k = 1;
        while k < top && self.engine.power_contains(f, &ideal, k + 1)? {
            k += 1;
        }
        Ok(k)
    }

    /// The image of `f` in `I^k / I^{k+1}` as the degree-`k` part in the normal
    /// variables, after translating the center to the origin.
    pub fn leading_form(&self, scene: &Scene, center: usize, k: u32) -> Result<Polynomial, GeometryError> {
        let c = &scene.centers()[center];
        let local = c.to_local(scene.hypersurface());
        let phi = local.graded_part(c.normal(), k);
        if phi.is_zero() {
            return Err(GeometryError::Internal(format!(
                "leading form of degree {k} vanishes at center '{}'",
                c.name
            )));
        }
        let ring = scene.ring();
        let origin = Center::new(c.name.clone(), c.normal().to_vec(), ring).ideal(ring);
        if !self.engine.power_contains(&(&local - &phi), &origin, k + 1)? {
            return Err(GeometryError::Internal(format!(
                "f - Φ is not in I^{} at center '{}'",
                k + 1,
                c.name
            )));
        }
        Ok(phi)
    }

    /// Whether the zero locus of the section on `X × P^{d-1}` is a smooth
    /// effective divisor: the singular locus of `V(s)` must lie in the
    /// irrelevant locus `y = 0`.
    pub fn exceptional_section_smooth(&self, a: &CenterAnalysis) -> Result<Verdict, GeometryError> {
        let s = &a.section;
        if s.is_zero() {
            return Err(GeometryError::Precondition(format!(
                "section over center '{}' is zero, so it defines no divisor",
                a.center.name
            )));
        }
        let ring = s.ring();
        let mut gens = vec![s.clone()];
        gens.extend(s.gradient());
        let jac = Ideal::new(ring, gens);
        let gb = self.engine.groebner(&jac)?;
        for &l in a.center.normal() {
            if !self.engine.radical_contains_in(&ring.var(l), &gb)? {
                return Ok(Verdict::singular(
                    format!(
                        "the exceptional divisor over '{}' is singular off the irrelevant locus",
                        a.center.name
                    ),
                    jac.generators().to_vec(),
                ));
            }
        }
        Ok(Verdict::Smooth)
    }

    /// For `k = 1`: `B` must be smooth of dimension `2·dim X - N`. Smoothness
    /// is `V(B + d×d minors of the coefficient Jacobian) = ∅`. An empty `B`
    /// passes vacuously.
    pub fn b_locus_check(&self, a: &CenterAnalysis, nvars: usize) -> Result<BLocus, GeometryError> {
        if a.multiplicity != 1 {
            return Err(GeometryError::Precondition(format!(
                "B locus needs multiplicity 1, center '{}' has {}",
                a.center.name, a.multiplicity
            )));
        }
        let tangent = a.center.tangent(nvars);
        let d = a.codimension;
        let mut coefficients = Vec::with_capacity(d);
        for &l in a.center.normal() {
            let c = a.leading_form.partial(l)?;
            let restricted = c.restrict_vars(&tangent).ok_or_else(|| {
                GeometryError::Internal("linear leading form has a coefficient in normal variables".into())
            })?;
            coefficients.push(restricted);
        }
        let tangent_ring = crate::poly::Ring::new(tangent.len(), a.leading_form.field());
        let b_ideal = Ideal::new(tangent_ring, coefficients.clone());
        let dimension = self.engine.krull_dimension(&b_ideal)?;
        let expected = 2 * tangent.len() as i64 - nvars as i64;

        let (verdict, vacuous) = match dimension {
            Dimension::Empty => (Verdict::Smooth, true),
            Dimension::Finite(dim) if dim as i64 != expected => (
                Verdict::singular(
                    format!("dim B = {dim}, expected {expected}"),
                    b_ideal.generators().to_vec(),
                ),
                false,
            ),
            Dimension::Finite(_) => {
                let jac = PolyMatrix::jacobian(
                    tangent_ring,
                    &coefficients,
                    &(0..tangent.len()).collect::<Vec<_>>(),
                );
                let minors = minors_ideal(&jac, d)?;
                let crit = b_ideal.sum(&minors);
                if self.engine.is_empty(&crit)? {
                    (Verdict::Smooth, false)
                } else {
                    (
                        Verdict::singular(
                            "the coefficient Jacobian drops rank on B",
                            crit.generators().to_vec(),
                        ),
                        false,
                    )
                }
            }
        };
        Ok(BLocus {
            coefficients,
            tangent_vars: tangent,
            dimension,
            expected_dimension: expected,
            verdict,
            vacuous,
        })
    }

    /// Smooth iff `Sing(Y) ⊆ ∪ X_i`: every product of one generator per center
    /// ideal lies in the radical of the Jacobian ideal.
    pub fn sing_contained_in_centers(&self, scene: &Scene) -> Result<Verdict, GeometryError> {
        let jac = scene.jacobian_ideal();
        let ring = scene.ring();
        let witness = || Verdict::singular("Y is singular away from the centers", jac.generators().to_vec());
        let gb = self.engine.groebner(&jac)?;
        if gb.is_unit() {
            return Ok(Verdict::Smooth);
        }
        if scene.centers().is_empty() {
            return Ok(witness());
        }
        let ideals: Vec<Vec<Polynomial>> = scene
            .centers()
            .iter()
            .map(|c| c.ideal(ring).generators().to_vec())
            .collect();
        let mut idx = vec![0usize; ideals.len()];
        loop {
            let mut product = ring.one();
            for (gens, &i) in ideals.iter().zip(&idx) {
                product = &product * &gens[i];
            }
            if !self.engine.radical_contains_in(&product, &gb)? {
                return Ok(witness());
            }
            let Some(pos) = (0..idx.len()).rev().find(|&p| idx[p] + 1 < ideals[p].len()) else {
                break;
            };
            idx[pos] += 1;
            for slot in &mut idx[pos + 1..] {
                *slot = 0;
            }
        }
        Ok(Verdict::Smooth)
    }

    pub fn charts(&self, scene: &Scene, center: usize) -> Result<Vec<BlowupChart>, GeometryError> {
        let k = self.multiplicity(scene, center)?;
        charts::build(scene, center, k)
    }

    /// Direct check of the strict transform: `Y - X` smooth, and in every
    /// chart no singular point of the strict transform lies on `t = 0`.
    pub fn chart_oracle(&self, scene: &Scene) -> Result<OracleOutcome, GeometryError> {
        let away = self.sing_contained_in_centers(scene)?;
        self.chart_oracle_given(scene, away)
    }

    fn chart_oracle_given(&self, scene: &Scene, away: Verdict) -> Result<OracleOutcome, GeometryError> {
        let mut checks = Vec::new();
        let mut failure: Option<Verdict> = None;
        for ci in 0..scene.centers().len() {
            for chart in self.charts(scene, ci)? {
                let ft = &chart.strict_transform;
                let ring = ft.ring();
                let mut gens = vec![ft.clone()];
                gens.extend(ft.gradient());
                gens.push(ring.var(chart.exceptional()));
                let on_exceptional = Ideal::new(ring, gens);
                let smooth = self.engine.is_empty(&on_exceptional)?;
                if !smooth && failure.is_none() {
                    failure = Some(Verdict::singular(
                        format!(
                            "strict transform is singular on the exceptional divisor in chart '{}' of center '{}'",
                            scene.names()[chart.chart_var],
                            scene.centers()[ci].name
                        ),
                        on_exceptional.generators().to_vec(),
                    ));
                }
                checks.push(ChartCheck {
                    center: ci,
                    chart_var: chart.chart_var,
                    names: chart.names.clone(),
                    smooth,
                });
            }
        }
        let verdict = match (&away, failure) {
            (Verdict::Singular(w), _) => Verdict::Singular(w.clone()),
            (_, Some(f)) => f,
            _ => Verdict::Smooth,
        };
        Ok(OracleOutcome {
            verdict,
            away_from_centers: away,
            checks,
        })
    }

    pub fn analyze_center(&self, scene: &Scene, index: usize) -> Result<CenterAnalysis, GeometryError> {
        let center = scene.centers()[index].clone();
        let k = self.multiplicity(scene, index)?;
        let phi = self.leading_form(scene, index, k)?;
        let d = center.codimension();
        let mut a = CenterAnalysis {
            index,
            codimension: d,
            multiplicity: k,
            section: phi.clone(),
            leading_form: phi,
            exceptional: Verdict::Smooth,
            b_locus: None,
            discrepancy: d as i64 - k as i64 - 1,
            lefschetz_applicable: (k as usize) < d,
            center,
        };
        a.exceptional = self.exceptional_section_smooth(&a)?;
        if k == 1 {
            a.b_locus = Some(self.b_locus_check(&a, scene.nvars())?);
        }
        Ok(a)
    }

    /// Runs the hypothesis route, the `k = 1` route when it applies, and the
    /// chart oracle, then the adjunction ledger.
    pub fn analyze(&self, scene: &Scene) -> Result<Analysis, GeometryError> {
        let centers = (0..scene.centers().len())
            .map(|i| self.analyze_center(scene, i))
            .collect::<Result<Vec<_>, _>>()?;
        let away = self.sing_contained_in_centers(scene)?;

        let hypothesis = if !away.is_smooth() {
            Verdict::Inconclusive("Y - X is not smooth".into())
        } else if let Some(bad) = centers.iter().find(|a| !a.exceptional.is_smooth()) {
            Verdict::Inconclusive(format!(
                "the exceptional divisor over '{}' is not a smooth effective divisor",
                bad.center.name
            ))
        } else {
            Verdict::Smooth
        };

        let linear_route = if !centers.is_empty() && centers.iter().all(|a| a.multiplicity == 1) {
            let failed = centers
                .iter()
                .find(|a| !a.b_locus.as_ref().is_some_and(|b| b.verdict.is_smooth()));
            Some(if !away.is_smooth() {
                Verdict::Inconclusive("Y - X is not smooth".into())
            } else if let Some(bad) = failed {
                Verdict::Inconclusive(format!(
                    "B over '{}' is not smooth of the expected dimension",
                    bad.center.name
                ))
            } else {
                Verdict::Smooth
            })
        } else {
            None
        };

        let oracle = self.chart_oracle_given(scene, away.clone())?;
        let consistency = consistency(&hypothesis, linear_route.as_ref(), &oracle.verdict);

        let invariants: Vec<(usize, u32)> = centers.iter().map(|a| (a.codimension, a.multiplicity)).collect();
        let ledger = adjunction_ledger(&invariants)?;

        let mut warnings = Vec::new();
        let p = scene.ring().field.characteristic();
        if p > 0 {
            let max_k = centers.iter().map(|a| a.multiplicity).max().unwrap_or(0);
            let deg = scene.hypersurface().degree().unwrap_or(0);
            if p <= max_k.max(deg) as u64 {
                warnings.push(format!(
                    "characteristic {p} is at most max(k_i, deg f) = {}: the Jacobian criterion certifies \
                     smoothness over the algebraic closure, and partial derivatives that vanish in this \
                     characteristic can produce singular verdicts absent in characteristic 0",
                    max_k.max(deg)
                ));
            }
        }
        for a in &centers {
            if a.b_locus.as_ref().is_some_and(|b| b.vacuous) {
                warnings.push(format!(
                    "B over '{}' is empty and was accepted without a dimension match",
                    a.center.name
                ));
            }
        }

        Ok(Analysis {
            centers,
            away_from_centers: away,
            hypothesis,
            linear_route,
            oracle,
            consistency,
            ledger,
            warnings,
        })
    }
}

fn consistency(hypothesis: &Verdict, linear: Option<&Verdict>, oracle: &Verdict) -> Consistency {
    let certified = hypothesis.is_smooth() || linear.is_some_and(Verdict::is_smooth);
    if certified && oracle.is_singular() {
        return Consistency {
            consistent: false,
            note: "a sufficient criterion certified smoothness but the chart oracle found a singular point"
                .into(),
        };
    }
    let note = match (certified, oracle.is_smooth()) {
        (true, true) => "criterion and chart oracle agree: the strict transform is smooth",
        (false, true) => {
            "criterion inconclusive, chart oracle smooth: the criterion is sufficient, not necessary"
        }
        (false, false) => "criterion inconclusive, chart oracle singular",
        (true, false) => unreachable!(),
    };
    Consistency {
        consistent: true,
        note: note.into(),
    }
}
