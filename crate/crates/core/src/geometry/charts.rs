use crate::error::GeometryError;
use crate::geometry::Scene;
use crate::poly::Polynomial;

/// One affine chart of the blow-up of `A^N` along a center.
///
/// Chart `j` keeps the variable count: slot `j` holds the exceptional
/// coordinate `t`, every other normal slot `l` holds `u_l`, and tangent slots
/// are unchanged. The chart map is `y_j = t + c_j`, `y_l = t*u_l + c_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupChart {
    pub center: usize,
    /// Index of the normal variable that becomes `t`.
    pub chart_var: usize,
    /// Image of every original variable, in chart coordinates.
    pub images: Vec<Polynomial>,
    /// `f(chart map) / t^k`.
    pub strict_transform: Polynomial,
    /// Names of the chart coordinates, slot by slot.
    pub names: Vec<String>,
}

impl BlowupChart {
    /// Slot of the exceptional coordinate.
    pub fn exceptional(&self) -> usize {
        self.chart_var
    }
}

fn fresh_name(base: String, taken: &[String]) -> String {
    let mut name = base;
    while taken.contains(&name) {
        name.push('_');
    }
    name
}

/// All charts of the blow-up along `scene.centers()[center]`, with the strict
/// transform obtained by dividing the pullback by `t^k`.
pub(crate) fn build(scene: &Scene, center: usize, k: u32) -> Result<Vec<BlowupChart>, GeometryError> {
    let c = &scene.centers()[center];
    let ring = scene.ring();
    let f = scene.hypersurface();
    let mut out = Vec::with_capacity(c.codimension());

    for &j in c.normal() {
        let t = ring.var(j);
        let mut images: Vec<Polynomial> = (0..ring.nvars).map(|i| ring.var(i)).collect();
        for (&l, off) in c.normal().iter().zip(c.offsets()) {
            let base = if l == j { t.clone() } else { &t * &ring.var(l) };
            images[l] = &base + &ring.constant(off.clone());
        }
        let wrapped: Vec<_> = images.iter().cloned().map(Some).collect();
        let pullback = f.substitute(ring, &wrapped)?;
        let strict = pullback.divide_by_var_power(j, k).ok_or_else(|| {
            GeometryError::Internal(format!(
                "pullback to chart {} of center '{}' is not divisible by t^{k}",
                scene.names()[j],
                c.name
            ))
        })?;

        let mut names = scene.names().to_vec();
        let taken = scene.names().to_vec();
        for &l in c.normal() {
            names[l] = if l == j {
                fresh_name("t".into(), &taken)
            } else {
                fresh_name(format!("u_{}", scene.names()[l]), &taken)
            };
        }
        out.push(BlowupChart {
            center,
            chart_var: j,
            images,
            strict_transform: strict,
            names,
        });
    }

    let somewhere_reduced = out
        .iter()
        .any(|ch| ch.strict_transform.divide_by_var_power(ch.chart_var, 1).is_none());
    if !somewhere_reduced {
        return Err(GeometryError::Internal(format!(
            "t divides the strict transform in every chart of center '{}'; multiplicity {k} is not maximal",
            c.name
        )));
    }
    Ok(out)
}
