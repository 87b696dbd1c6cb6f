use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::json;

use dgmorse::catalog;
use dgmorse::cocycle::{compose_transfers, pushforward, TransferCocycle};
use dgmorse::module::AlgebraMorphism;
use dgmorse::ring::{Integers, Ring};
use dgmorse::scene::{Coef, Scene, SceneDoc};

fn resolve(doc: serde_json::Value) -> Scene<Integers> {
    Scene::resolve(SceneDoc::from_json(&doc.to_string()).unwrap(), Integers).unwrap()
}

fn boundary_dga() -> serde_json::Value {
    json!({"window": 1, "basis": [["1", 0], ["a", 0], ["c", 1]], "unit": "1",
        "d": {"c": [[1, "a"], [-1, "1"]]},
        "products": [
            ["1", "1", [[1, "1"]]], ["1", "a", [[1, "a"]]], ["a", "1", [[1, "a"]]], ["a", "a", [[1, "1"]]],
            ["1", "c", [[1, "c"]]], ["c", "1", [[1, "c"]]], ["a", "c", [[-1, "c"]]], ["c", "a", [[-1, "c"]]]
        ]})
}

#[test]
fn consecutive_pairs_always_hold() {
    let s = resolve(json!({"ring": "integers", "dga": {"A": boundary_dga()},
        "crit": {"X": {"dim": 2, "points": [["x", 2], ["y", 1], ["w", 1], ["z", 0]]}},
        "cocycles": {"m": {"dga": "A", "crit": "X", "entries": [
            ["x", "y", [[-1, "a"]]], ["y", "z", [[1, "1"]]], ["x", "w", [[1, "1"]]], ["w", "z", [[1, "1"]]],
            ["x", "z", [[1, "c"]]]
        ]}}}));
    let rep = s.cocycles["m"].validate();
    // ∂c = a − 1 = −(m_xy m_yz + m_xw m_wz)
    assert!(rep.is_ok(), "{rep}");
    assert!(rep.checked > 0);
}

#[test]
fn index_two_entry_with_nonzero_boundary_fails() {
    let s = resolve(json!({"ring": "integers", "dga": {"A": boundary_dga()},
        "crit": {"X": {"dim": 2, "points": [["x", 2], ["z", 0]]}},
        "cocycles": {"m": {"dga": "A", "crit": "X", "entries": [["x", "z", [[1, "c"]]]]}}}));
    let rep = s.cocycles["m"].validate();
    assert_eq!(rep.violations.len(), 1, "{rep}");
    assert_eq!((rep.violations[0].identity.as_str(), rep.violations[0].at.as_str()), ("maurer-cartan", "(x, z)"));
}

#[test]
fn broken_triangle_is_localized() {
    let s = resolve(json!({"ring": "integers", "dga": {"A": {"scalars": 2}},
        "crit": {"X": {"dim": 2, "points": [["x", 2], ["y", 1], ["z", 0], ["p", 1], ["q", 0]]}},
        "cocycles": {"m": {"dga": "A", "crit": "X", "entries": [["x", "y", [[1, "1"]]], ["y", "z", [[1, "1"]]], ["p", "q", [[3, "1"]]]]}}}));
    let rep = s.cocycles["m"].validate();
    assert!(rep.cites("(x, z)"), "{rep}");
    assert!(rep.violations.iter().all(|v| v.at == "(x, z)"), "{rep}");
}

#[test]
fn transfers_on_the_circle() {
    let s = catalog::circle_path(6);
    assert!(s.transfers["psi"].validate().is_ok());
    let m = s.cocycles["m"].clone();
    let id = TransferCocycle::identity(m.clone());
    assert!(id.validate().is_ok());

    let mut doc = catalog::circle_path_doc(6);
    doc.transfers.get_mut("psi").unwrap().entries[1].2 = vec![(Coef::Text("t^2".into()), "1".into())];
    let bad = Scene::resolve(doc, s.ring.clone()).unwrap();
    let rep = bad.transfers["psi"].validate();
    assert_eq!(rep.violations.len(), 1, "{rep}");
    assert_eq!(rep.violations[0].at, "(M, m)");

    let there = &s.transfers["psi"];
    let back = Arc::new(
        TransferCocycle::new(s.cocycles["m1"].clone(), m.clone(), 0, s.transfers["psi-inv"].entries().map(|(k, v)| (k, v.clone())).collect())
            .unwrap(),
    );
    let loop_ = compose_transfers(there, &back).unwrap();
    assert!(loop_.validate().is_ok());
    for ((x, y), v) in loop_.entries() {
        assert_eq!(x, y);
        assert_eq!(v, &m.dga.unit_elem());
    }
}

#[test]
fn zero_homotopy_reports_the_difference() {
    let mut doc = catalog::sphere_path_doc(2, 6).unwrap();
    doc.homotopies.get_mut("h").unwrap().entries.clear();
    let s = Scene::resolve(doc, Integers).unwrap();
    let rep = s.homotopies["h"].validate();
    assert_eq!(rep.violations.len(), 1, "{rep}");
    assert_eq!(rep.violations[0].at, "(M, m)");
    assert_eq!(rep.violations[0].detail, "residual (3)·u^2");
    assert!(catalog::sphere_path(2, 6).homotopies["h"].validate().is_ok());
}

#[test]
fn kunneth_cocycles() {
    let s = catalog::torus_free_loop(6);
    let mk = &s.cocycles["mK"];
    assert_eq!(mk.entries().count(), 4);
    assert!(mk.validate().is_ok());
    let ring = &s.ring;
    let aa = &s.dgas["AA"];
    let crit = &mk.crit;
    let at = |x: &str, y: &str| mk.entry(crit.lookup(x).unwrap(), crit.lookup(y).unwrap()).unwrap().clone();
    let elem = |terms: &[(i64, &str)]| {
        let t: Vec<_> = terms.iter().map(|&(c, l)| (ring.from_i64(c), l)).collect();
        aa.element(&t).unwrap()
    };
    assert_eq!(at("(M,M)", "(m,M)"), elem(&[(1, "1⊗1"), (-1, "g⊗1")]));
    assert_eq!(at("(M,M)", "(M,m)"), elem(&[(-1, "1⊗1"), (1, "1⊗g")]));
    assert_eq!(at("(m,M)", "(m,m)"), elem(&[(1, "1⊗1"), (-1, "1⊗g")]));

    let single = resolve(json!({"ring": "integers",
        "dga": {"A": {"polynomial": {"degree": 1, "window": 4}}, "B": {"scalars": 4}, "AB": {"tensor": ["A", "B"]}},
        "crit": {"X": {"dim": 2, "points": [["m", 0], ["M", 2]]}, "P": {"dim": 0, "points": [["p", 0]]}},
        "cocycles": {
            "m": {"dga": "A", "crit": "X", "entries": [["M", "m", [[1, "u"]]]]},
            "n": {"dga": "B", "crit": "P", "entries": []},
            "k": {"kunneth": ["m", "n"], "dga": "AB"}
        }}));
    let k = &single.cocycles["k"];
    let ab = &single.dgas["AB"];
    assert_eq!(k.entries().count(), 1);
    let ((x, y), v) = k.entries().next().unwrap();
    assert_eq!((k.crit.label(x), k.crit.label(y)), ("(M,p)", "(m,p)"));
    assert_eq!(v, &ab.element(&[(BigInt::from(1), "u⊗1")]).unwrap());
}

#[test]
fn pushforward_along_identity() {
    for name in ["sphere-path(2)", "sphere-path(3)"] {
        let s = match catalog::catalog(name, 6).unwrap() {
            dgmorse::scene::AnyScene::Integers(s) => s,
            _ => unreachable!(),
        };
        let m = &s.cocycles["m"];
        let id = AlgebraMorphism::identity(m.dga.clone());
        assert_eq!(&pushforward(m, &id).unwrap(), m.as_ref());
    }
    let s = catalog::circle_free_loop(6);
    let dm = &s.cocycles["Dm"];
    assert!(dm.validate().is_ok());
    assert_eq!(dm.entries().count(), 1);
}
