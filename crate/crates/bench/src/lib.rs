//! Inputs shared by the benchmarks.

use blowup_core::corpus::{fixtures, random_scene, rng};
use blowup_core::{parse_expression, Engine, Field, Ideal, Scene};

/// Every fixture scene, by name.
pub fn fixture_scenes() -> Vec<(String, Scene)> {
    let engine = Engine::new();
    fixtures()
        .into_iter()
        .map(|f| {
            let scene = f.file.to_scene(&engine).expect("fixtures are valid");
            (f.name, scene)
        })
        .collect()
}

/// A fixed batch of random scenes.
pub fn random_scenes(seed: u64, count: usize) -> Vec<Scene> {
    let mut r = rng(seed);
    (0..count).map(|_| random_scene(&mut r)).collect()
}

/// Classic Groebner workloads over `field`: cyclic-3 and the Jacobian ideal of
/// a generic-looking quartic surface.
pub fn kernel_ideals(field: Field) -> Vec<(&'static str, Ideal)> {
    let names: Vec<String> = ["x", "y", "z", "w"].iter().map(|s| s.to_string()).collect();
    let p = |s: &str| parse_expression(s, &names, field).expect("valid expression");
    let cyclic = vec![p("x + y + z"), p("x*y + y*z + z*x"), p("x*y*z - 1")];
    let quartic = p("x^4 + y^4 + z^4 + w^4 - 3*x*y*z*w + x*y - z*w + x");
    let mut jac = vec![quartic.clone()];
    jac.extend(quartic.gradient());
    vec![
        ("cyclic-3", Ideal::new(cyclic[0].ring(), cyclic)),
        ("quartic-jacobian", Ideal::new(quartic.ring(), jac)),
    ]
}
