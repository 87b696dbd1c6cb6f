use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;
use serde_json::json;

use dgmorse::catalog;
use dgmorse::dga::{tensor_dga, Dga};
use dgmorse::graded::{Elem, Truncation};
use dgmorse::module::{swap_morphism, tensor_module, CoefficientModule};
use dgmorse::report::Report;
use dgmorse::ring::Integers;
use dgmorse::scene::{Coef, Scene, SceneDoc};

fn resolve(doc: serde_json::Value) -> Scene<Integers> {
    Scene::resolve(SceneDoc::from_json(&doc.to_string()).unwrap(), Integers).unwrap()
}

fn report<'a>(reports: &'a [Report], subject: &str) -> &'a Report {
    reports.iter().find(|r| r.subject.starts_with(subject)).unwrap()
}

fn z(n: i64) -> BigInt {
    BigInt::from(n)
}

/// `ℤ[C₃]` with basis `1, g, h = g²`.
fn cyclic() -> serde_json::Value {
    json!({"window": 2, "basis": [["1", 0], ["g", 0], ["h", 0]], "unit": "1", "products": [
        ["1", "1", [[1, "1"]]], ["1", "g", [[1, "g"]]], ["1", "h", [[1, "h"]]],
        ["g", "1", [[1, "g"]]], ["g", "g", [[1, "h"]]], ["g", "h", [[1, "1"]]],
        ["h", "1", [[1, "h"]]], ["h", "g", [[1, "1"]]], ["h", "h", [[1, "g"]]]
    ]})
}

/// Degree-0 part `ℤ[a]/(a² − 1)` with `c` in degree 1, `μ₁c = a − 1`.
fn with_boundary() -> serde_json::Value {
    json!({"window": 1, "basis": [["1", 0], ["a", 0], ["c", 1]], "unit": "1",
        "d": {"c": [[1, "a"], [-1, "1"]]},
        "products": [
            ["1", "1", [[1, "1"]]], ["1", "a", [[1, "a"]]], ["a", "1", [[1, "a"]]], ["a", "a", [[1, "1"]]],
            ["1", "c", [[1, "c"]]], ["c", "1", [[1, "c"]]], ["a", "c", [[-1, "c"]]], ["c", "a", [[-1, "c"]]]
        ]})
}

#[test]
fn expansion_in_a_group_algebra() {
    let s = resolve(json!({"ring": "integers", "dga": {"A": cyclic()}}));
    let a = &s.dgas["A"];
    assert!(a.validate().is_ok());
    let x = a.element(&[(z(1), "g"), (z(-1), "h")]).unwrap();
    let mut t = Truncation::default();
    let sq = a.multiply(&x, &x, &mut t);
    assert_eq!(sq, a.element(&[(z(1), "h"), (z(-2), "1"), (z(1), "g")]).unwrap());
    assert!(t.clean());
}

#[test]
fn degree_zero_homology_identifies_a_with_one() {
    let s = resolve(json!({"ring": "integers", "dga": {"A": with_boundary()}}));
    let a = &s.dgas["A"];
    let rep = a.validate();
    assert!(rep.is_ok(), "{rep}");
    let h0 = a.degree_zero_homology();
    assert_eq!((h0.group.free_rank(), h0.rank()), (1, 1));
    assert!(h0.warning.is_none());
    assert_eq!(h0.project(&a.element(&[(z(1), "a")]).unwrap()), h0.project(&a.unit_elem()));
    assert!(a.check_projection(&h0).is_ok());
}

#[test]
fn small_window_warns() {
    let a = Dga::polynomial(Integers, 1, 0);
    assert!(a.degree_zero_homology().warning.is_some());
}

#[test]
fn trivial_module_needs_augmentation_killing_boundaries() {
    let doc = |eps: i64| {
        json!({"ring": "integers", "dga": {"A": with_boundary()},
            "modules": {"E": {"trivial": "A", "window": 1, "augmentation": {"a": eps}}}})
    };
    let good = resolve(doc(1)).validate();
    assert!(report(&good, "module E").is_ok());
    let bad = resolve(doc(-1)).validate();
    let rep = report(&bad, "module E");
    assert!(rep.violations.iter().any(|v| v.identity == "a-infinity relation N = 2" && v.at == "(1, c)"), "{rep}");
}

#[test]
fn regular_and_pullback_modules() {
    let s = resolve(json!({"ring": "integers",
        "dga": {"U": {"polynomial": {"degree": 2, "window": 6}}, "V": {"polynomial": {"degree": 1, "window": 6}}},
        "algebra_maps": {"sq": {"source": "U", "target": "V", "images": {"1": [[1, "1"]], "u": [[1, "u^2"]], "u^2": [[1, "u^4"]], "u^3": [[1, "u^6"]]}}},
        "modules": {"R": {"regular": "V"}, "P": {"pullback": "R", "along": "sq"}}}));
    for r in s.validate() {
        assert!(r.is_ok(), "{r}");
    }
    let p = &s.modules["P"];
    let (v, u) = (p.basis.lookup("u").unwrap(), s.dgas["U"].basis.lookup("u").unwrap());
    let mut t = Truncation::default();
    let out = p.nu_basis(&[v, u], &mut t);
    assert_eq!(out, Elem::single(&Integers, p.basis.lookup("u^3").unwrap(), z(1)));
}

#[test]
fn tensor_module_mixed_sign() {
    let a = Arc::new(Dga::polynomial(Integers, 1, 4));
    let f = CoefficientModule::regular(a.clone());
    let ff = tensor_module(&f, &f).unwrap();
    assert!(ff.validate(ff.default_depth()).is_ok());
    let key = |l: &str| ff.basis.lookup(l).unwrap();
    let alg = |l: &str| ff.dga.basis.lookup(l).unwrap();
    let mut t = Truncation::default();
    // (1⊗u)·(u⊗1) = (−1)^{|u||u|} u⊗u
    assert_eq!(ff.nu_basis(&[key("1⊗u"), alg("u⊗1")], &mut t), Elem::single(&Integers, key("u⊗u"), z(-1)));
    assert_eq!(ff.nu_basis(&[key("u⊗1"), alg("1⊗u")], &mut t), Elem::single(&Integers, key("u⊗u"), z(1)));
}

#[test]
fn catalog_morphism_is_valid_and_corruption_is_caught() {
    let s = catalog::sphere_path(2, 8);
    let phi = &s.morphisms["phi"];
    let rep = phi.validate(phi.default_depth());
    assert!(rep.is_ok() && rep.checked > 0, "{rep}");

    let mut doc = catalog::sphere_path_doc(2, 8).unwrap();
    let entry = doc.morphisms.get_mut("phi").unwrap().phi.iter_mut().find(|(k, _)| k == &["1", "u"]).unwrap();
    entry.1 = vec![(Coef::Int(2), "u^2".into())];
    let bad = Scene::resolve(doc, Integers).unwrap().validate();
    let rep = report(&bad, "morphism phi");
    assert!(rep.violations.iter().any(|v| v.identity == "morphism relation N = 2"), "{rep}");
}

proptest! {
    #[test]
    fn polynomial_tensor_structure(k in 1usize..4, window in 0usize..7) {
        let a = Arc::new(Dga::polynomial(Integers, k, window));
        prop_assert!(a.validate().is_ok());
        let aa = Arc::new(tensor_dga(&a, &a));
        prop_assert!(aa.validate().is_ok());
        let s = swap_morphism(&aa).unwrap();
        prop_assert!(s.validate().is_ok());
        let f = CoefficientModule::regular(a.clone());
        let ff = tensor_module(&f, &f).unwrap();
        prop_assert!(ff.validate(ff.default_depth()).is_ok());
    }

    #[test]
    fn group_algebra_is_associative(coeffs in prop::collection::vec(-4i64..5, 9)) {
        let s = resolve(json!({"ring": "integers", "dga": {"A": cyclic()}}));
        let a = &s.dgas["A"];
        let el = |c: &[i64]| a.element(&[(z(c[0]), "1"), (z(c[1]), "g"), (z(c[2]), "h")]).unwrap();
        let (x, y, w) = (el(&coeffs[0..3]), el(&coeffs[3..6]), el(&coeffs[6..9]));
        let mut t = Truncation::default();
        let left = a.multiply(&a.multiply(&x, &y, &mut t), &w, &mut t);
        let right = a.multiply(&x, &a.multiply(&y, &w, &mut t), &mut t);
        prop_assert_eq!(left, right);
        prop_assert_eq!(a.multiply(&x, &y, &mut t), a.multiply(&y, &x, &mut t));
    }
}
