use num_bigint::BigInt;
use serde_json::json;

use dgmorse::catalog;
use dgmorse::error::Error;
use dgmorse::ring::{Integers, Ring};
use dgmorse::scene::{AnyScene, CocycleDoc, Scene, SceneDoc, SceneError};

fn load(doc: serde_json::Value) -> Result<Scene<Integers>, SceneError> {
    Scene::load(SceneDoc::from_json(&doc.to_string())?, Integers)
}

/// Coefficient of generator `to` in `∂(from)`.
fn coefficient(s: &Scene<Integers>, c: &str, from: (&str, &str), to: (&str, &str)) -> BigInt {
    let c = s.complex(c).unwrap();
    let (k, v) = c.generator(from.0, from.1).unwrap();
    let (j, w) = c.generator(to.0, to.1).unwrap();
    assert_eq!(j + 1, k, "target must sit one degree lower");
    let image = c.complex.d[k].apply(&Integers, &v);
    let i = w.iter().position(|x| !Integers.is_zero(x)).unwrap();
    image[i].clone()
}

fn exterior(c: i64) -> serde_json::Value {
    json!({
        "ring": "integers",
        "dga": {"L": {"window": 4, "basis": [["1", 0], ["e", 1]], "unit": "1",
            "products": [["1", "1", [[1, "1"]]], ["1", "e", [[1, "e"]]], ["e", "1", [[1, "e"]]]]}},
        "modules": {"F": {"dga": "L", "window": 4, "basis": [["f0", 0], ["f1", 1], ["f3", 3]],
            "nu": [
                [["f0", "1"], [[1, "f0"]]], [["f1", "1"], [[1, "f1"]]], [["f3", "1"], [[1, "f3"]]],
                [["f0", "e"], [[1, "f1"]]],
                [["f0", "e", "e"], [[c, "f3"]]]
            ]}},
        "crit": {"X": {"dim": 4, "points": [["x", 4], ["y", 2], ["z", 0]]}},
        "cocycles": {"m": {"dga": "L", "crit": "X", "entries": [["x", "y", [[1, "e"]]], ["y", "z", [[1, "e"]]]]}},
        "run": {"complexes": {"C": {"module": "F", "cocycle": "m"}}}
    })
}

#[test]
fn dg_differential_on_the_sphere() {
    let s = catalog::sphere_path(2, 8);
    for i in 0..6usize {
        let u = |j: usize| match j {
            0 => "1".to_string(),
            1 => "u".to_string(),
            j => format!("u^{j}"),
        };
        let sign = if i % 2 == 0 { 1 } else { -1 };
        assert_eq!(coefficient(&s, "C", (&u(i), "M"), (&u(i + 1), "m")), BigInt::from(sign), "i = {i}");
    }
    assert!(s.complex("C").unwrap().complex.check_d_squared().is_ok());
}

#[test]
fn ainf_three_term_differential() {
    for c in [1, 5, -2] {
        let s = load(exterior(c)).unwrap();
        assert_eq!(coefficient(&s, "C", ("f0", "x"), ("f1", "y")), BigInt::from(1));
        assert_eq!(coefficient(&s, "C", ("f0", "x"), ("f3", "z")), BigInt::from(-c));
        assert!(s.complex("C").unwrap().complex.check_d_squared().is_ok());
    }
}

#[test]
fn zero_cocycle_gives_split_complex() {
    let mut doc = catalog::sphere_path_doc(3, 6).unwrap();
    doc.cocycles.insert("m".into(), CocycleDoc::Explicit { dga: "A".into(), crit: "X".into(), entries: vec![] });
    let s = Scene::load(doc, Integers).unwrap();
    let c = &s.complex("C").unwrap().complex;
    assert!(c.d.iter().all(|m| m.is_zero(&Integers)));
    let h = c.homology().unwrap();
    for k in 0..=c.valid_top() {
        assert_eq!(h.degree(k).unwrap().free_rank(), c.rank(k));
    }
}

#[test]
fn empty_critical_set() {
    let s = load(json!({
        "ring": "integers",
        "dga": {"A": {"polynomial": {"degree": 1, "window": 3}}},
        "modules": {"F": {"regular": "A"}},
        "crit": {"X": {"dim": 0, "points": []}},
        "cocycles": {"m": {"dga": "A", "crit": "X", "entries": []}},
        "run": {"complexes": {"C": {"module": "F", "cocycle": "m"}}}
    }))
    .unwrap();
    let c = &s.complex("C").unwrap().complex;
    assert!((0..=c.top()).all(|k| c.rank(k) == 0));
    assert!(c.homology().unwrap().groups.iter().all(|g| g.is_empty()));
}

#[test]
fn documents_round_trip() {
    for name in catalog::all_names() {
        let a = catalog::catalog(name, 6).unwrap();
        let b = AnyScene::from_json(&a.to_json()).unwrap();
        assert_eq!(a, b, "{name}");
    }
    let s = load(exterior(3)).unwrap();
    let again = Scene::load(SceneDoc::from_json(&s.doc.to_json()).unwrap(), Integers).unwrap();
    assert_eq!(s, again);
}

#[test]
fn wrong_degree_entry_is_rejected() {
    let mut doc = exterior(1);
    doc["cocycles"]["m"]["entries"] = json!([["x", "y", [[1, "1"]]], ["y", "z", [[1, "e"]]]]);
    match load(doc).unwrap_err() {
        SceneError::Build(Error::Degree(msg)) => assert!(msg.contains("(x, y) has degree 0, expected 1"), "{msg}"),
        e => panic!("unexpected error {e}"),
    }
}

#[test]
fn malformed_documents() {
    assert!(matches!(AnyScene::from_json("{"), Err(SceneError::Parse(_))));
    let mut doc = exterior(1);
    doc["run"]["complexes"]["C"]["cocycle"] = json!("nope");
    assert!(matches!(load(doc), Err(SceneError::Build(Error::Unresolved(_)))));
    let mut doc = exterior(1);
    doc["ring"] = json!("quaternions");
    assert!(AnyScene::from_json(&doc.to_string()).is_err());
}
