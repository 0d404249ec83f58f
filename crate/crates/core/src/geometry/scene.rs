use crate::error::SceneError;
use crate::ideal::{Engine, Ideal};
use crate::poly::{Polynomial, Ring};
use crate::scalar::Scalar;

/// An affine coordinate subspace `{y_j = c_j : j in vanishing}` of `A^N`.
///
/// The vanishing coordinates are the normal directions; their differentials
/// form a global frame of the conormal bundle. The remaining coordinates are
/// tangent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Center {
    pub name: String,
    vanishing: Vec<usize>,
    offsets: Vec<Scalar>,
}

impl Center {
    /// Center through the origin.
    pub fn new(name: impl Into<String>, vanishing: Vec<usize>, ring: Ring) -> Self {
        let offsets = vec![ring.field.zero(); vanishing.len()];
        Center {
            name: name.into(),
            vanishing,
            offsets,
        }
    }

    /// Center `{y_j = offsets[j]}`.
    pub fn translated(name: impl Into<String>, vanishing: Vec<usize>, offsets: Vec<Scalar>) -> Self {
        assert_eq!(vanishing.len(), offsets.len());
        Center {
            name: name.into(),
            vanishing,
            offsets,
        }
    }

    /// Normal (vanishing) variable indices.
    pub fn normal(&self) -> &[usize] {
        &self.vanishing
    }

    pub fn offsets(&self) -> &[Scalar] {
        &self.offsets
    }

    pub fn codimension(&self) -> usize {
        self.vanishing.len()
    }

    pub fn tangent(&self, nvars: usize) -> Vec<usize> {
        (0..nvars).filter(|i| !self.vanishing.contains(i)).collect()
    }

    pub fn is_through_origin(&self) -> bool {
        self.offsets.iter().all(Scalar::is_zero)
    }

    /// `(y_j - c_j)_j`.
    pub fn ideal(&self, ring: Ring) -> Ideal {
        Ideal::new(
            ring,
            self.vanishing
                .iter()
                .zip(&self.offsets)
                .map(|(&j, c)| &ring.var(j) - &ring.constant(c.clone())),
        )
    }

    /// Rewrites `p` in coordinates centered on this subspace:
    /// `y_j -> y_j + c_j`.
    pub fn to_local(&self, p: &Polynomial) -> Polynomial {
        if self.is_through_origin() {
            return p.clone();
        }
        let ring = p.ring();
        let mut images = vec![None; ring.nvars];
        for (&j, c) in self.vanishing.iter().zip(&self.offsets) {
            images[j] = Some(&ring.var(j) + &ring.constant(c.clone()));
        }
        p.substitute(ring, &images).expect("same ring")
    }
}

/// A hypersurface `Y = V(f)` in `A^N` with pairwise disjoint coordinate
/// centers contained in `Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scene {
    names: Vec<String>,
    f: Polynomial,
    centers: Vec<Center>,
}

impl Scene {
    pub fn new(names: Vec<String>, f: Polynomial, centers: Vec<Center>) -> Result<Self, SceneError> {
        Self::validated(names, f, centers, &Engine::new())
    }

    /// Checks every scene invariant: `f` nonzero and not a unit, centers
    /// well-formed, pairwise disjoint, and contained in `Y`.
    pub fn validated(
        names: Vec<String>,
        f: Polynomial,
        centers: Vec<Center>,
        engine: &Engine,
    ) -> Result<Self, SceneError> {
        let ring = f.ring();
        if names.is_empty() {
            return Err(SceneError::NoVariables);
        }
        assert_eq!(names.len(), ring.nvars, "one name per variable");
        if f.is_zero() {
            return Err(SceneError::ZeroHypersurface);
        }
        if f.is_constant() {
            return Err(SceneError::UnitHypersurface);
        }
        for (a, c) in centers.iter().enumerate() {
            if c.vanishing.is_empty() {
                return Err(SceneError::EmptyCenter(c.name.clone()));
            }
            for (pos, &j) in c.vanishing.iter().enumerate() {
                if j >= ring.nvars {
                    return Err(SceneError::UnknownCenterVariable {
                        center: c.name.clone(),
                        var: format!("#{j}"),
                    });
                }
                if c.vanishing[..pos].contains(&j) {
                    return Err(SceneError::DuplicateCenterVariable {
                        center: c.name.clone(),
                        var: names[j].clone(),
                    });
                }
            }
            if centers[..a].iter().any(|o| o.name == c.name) {
                return Err(SceneError::DuplicateCenter(c.name.clone()));
            }
        }
        for (a, ca) in centers.iter().enumerate() {
            for cb in &centers[a + 1..] {
                let both = ca.ideal(ring).sum(&cb.ideal(ring));
                if !engine.is_empty(&both)? {
                    return Err(SceneError::OverlappingCenters(ca.name.clone(), cb.name.clone()));
                }
            }
        }
        for c in &centers {
            if !engine.contains(&c.ideal(ring), &f)? {
                return Err(SceneError::CenterNotContained(c.name.clone()));
            }
        }
        Ok(Scene { names, f, centers })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn ring(&self) -> Ring {
        self.f.ring()
    }

    pub fn nvars(&self) -> usize {
        self.f.nvars()
    }

    pub fn hypersurface(&self) -> &Polynomial {
        &self.f
    }

    pub fn centers(&self) -> &[Center] {
        &self.centers
    }

    /// Ideal of the singular locus of `Y`: `f` and all its partials.
    pub fn jacobian_ideal(&self) -> Ideal {
        let mut gens = vec![self.f.clone()];
        gens.extend(self.f.gradient());
        Ideal::new(self.ring(), gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn rejects_bad_hypersurfaces() {
        let r = Ring::new(1, Field::Rational);
        assert_eq!(
            Scene::new(names(&["x"]), r.zero(), vec![]),
            Err(SceneError::ZeroHypersurface)
        );
        assert_eq!(
            Scene::new(names(&["x"]), r.int(3), vec![]),
            Err(SceneError::UnitHypersurface)
        );
    }

    #[test]
    fn rejects_overlap_and_non_containment() {
        let r = Ring::new(2, Field::Rational);
        let f = &r.var(0) * &r.var(1);
        let a = Center::new("A", vec![0], r);
        let b = Center::new("B", vec![1], r);
        assert_eq!(
            Scene::new(names(&["x", "y"]), f.clone(), vec![a.clone(), b]),
            Err(SceneError::OverlappingCenters("A".into(), "B".into()))
        );
        let off = Center::translated("C", vec![0], vec![Field::Rational.from_i64(1)]);
        assert_eq!(
            Scene::new(names(&["x", "y"]), r.var(0), vec![off]),
            Err(SceneError::CenterNotContained("C".into()))
        );
        assert!(Scene::new(names(&["x", "y"]), f, vec![a]).is_ok());
    }

    #[test]
    fn translated_centers_can_be_disjoint() {
        let q = Field::Rational;
        let r = Ring::new(1, q);
        let x = r.var(0);
        let f = &x * &(&x - &r.one());
        let c0 = Center::new("P0", vec![0], r);
        let c1 = Center::translated("P1", vec![0], vec![q.from_i64(1)]);
        let s = Scene::new(names(&["x"]), f.clone(), vec![c0, c1.clone()]).unwrap();
        assert_eq!(s.centers().len(), 2);
        // x(x-1) at x -> x + 1 is (x+1)x
        assert_eq!(c1.to_local(&f), &(&x + &r.one()) * &x);
    }
}
