use proptest::prelude::*;

use dgmorse::catalog;
use dgmorse::cocycle::TwistingCocycle;
use dgmorse::complex::EnrichedComplex;
use dgmorse::error::Error;
use dgmorse::ring::{Integers, Ring};
use dgmorse::spectral::{pages, plan, reduce_mod_p, FieldChoice, LiftedComplex, Reduction};

#[test]
fn field_plans() {
    use FieldChoice::*;
    let frac = |s: &str| Ok(Reduction::FractionField(s.into()));
    assert_eq!(plan("integers", Some(Rationals)), frac("Q"));
    assert_eq!(plan("integers", Some(Prime(5))), Ok(Reduction::ModP(5)));
    assert_eq!(plan("rationals", None), frac("Q"));
    assert_eq!(plan("rationals", Some(Rationals)), frac("Q"));
    assert_eq!(plan("fp:7", None), frac("F7"));
    assert_eq!(plan("fp:7", Some(Prime(7))), frac("F7"));
    assert_eq!(plan("laurent-q", Some(GenericLaurent)), frac("Q(t)"));
    assert_eq!(plan("laurent-fp:3", Some(GenericLaurent)), frac("F3(t)"));
    for (ring, field) in [
        ("integers", None),
        ("laurent-q", None),
        ("laurent-fp:3", None),
        ("laurent-q", Some(Rationals)),
        ("fp:7", Some(Prime(5))),
        ("rationals", Some(GenericLaurent)),
        ("integers", Some(GenericLaurent)),
    ] {
        assert!(matches!(plan(ring, field), Err(Error::Refused(_))), "{ring} {field:?}");
    }
}

#[test]
fn field_choice_parsing() {
    for s in ["q", "fp:2", "fp:101", "generic-laurent"] {
        assert_eq!(s.parse::<FieldChoice>().unwrap().to_string(), s);
    }
    for s in ["", "Q", "fp:", "fp:4", "fp:1", "laurent"] {
        assert!(s.parse::<FieldChoice>().is_err(), "{s}");
    }
}

#[test]
fn reduction_mod_p_changes_torsion_ranks() {
    let s = catalog::sphere_path(2, 6);
    let c = &s.complex("C").unwrap().complex;
    let mut torsion = c.clone();
    for m in torsion.d.iter_mut().skip(1) {
        *m = m.scale(&Integers, &Integers.from_i64(3));
    }
    let over_q = pages(&torsion, 3).unwrap();
    let mod3 = pages(&reduce_mod_p(&torsion, 3).unwrap(), 3).unwrap();
    let mod5 = pages(&reduce_mod_p(&torsion, 5).unwrap(), 3).unwrap();
    assert_eq!(over_q.homology, mod5.homology);
    assert!(mod3.homology.iter().zip(&over_q.homology).all(|(a, b)| a >= b));
    assert!(mod3.homology.iter().sum::<usize>() > over_q.homology.iter().sum::<usize>());
    assert!(reduce_mod_p(c, 4).is_err());
}

#[test]
fn zero_differential_pages_are_constant() {
    let s = catalog::sphere_path(3, 8);
    let c = s.complex("C").unwrap();
    let zero = TwistingCocycle::new(c.cocycle.dga.clone(), c.cocycle.crit.clone(), vec![]).unwrap();
    let split = EnrichedComplex::build(c.module.clone(), zero.into()).unwrap();
    let ss = pages(&split.complex, 4).unwrap();
    for page in &ss.pages {
        assert_eq!(page.dims, ss.pages[0].dims);
        assert!(page.differential_vanishes());
    }
    assert_eq!(ss.limit.dims, ss.pages[0].dims);
    assert_eq!(ss.collapse_page(), 0);
    assert!(ss.check_convergence().is_ok());
}

#[test]
fn sphere_pages() {
    for k in [2usize, 3, 4] {
        let s = catalog::sphere_path(k, 10);
        let c = s.complex("C").unwrap();
        let ss = pages(&c.complex, k + 1).unwrap();
        assert!(ss.check_pages().is_ok());
        assert!(ss.check_convergence().is_ok());
        // E¹ = E^k and d^k cancels everything above the corner
        assert_eq!(ss.page(1).dims, ss.page(k).dims);
        assert!(!ss.page(k).differential_vanishes());
        let nonzero: Vec<_> = ss.page(k + 1).dims.into_iter().filter(|&(_, d)| d > 0).collect();
        assert_eq!(nonzero, vec![((0, 0), 1)], "k = {k}");
        let lifted = LiftedComplex::new(&c.cocycle).unwrap();
        assert!(lifted.check_d_squared(&c.cocycle).is_ok());
    }
}

proptest! {
    #[test]
    fn prime_fields_round_trip(p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 97])) {
        let f = FieldChoice::Prime(p);
        prop_assert_eq!(f.to_string().parse::<FieldChoice>().unwrap(), f);
        prop_assert_eq!(plan("integers", Some(f)), Ok(Reduction::ModP(p)));
        let ring = format!("fp:{p}");
        prop_assert_eq!(plan(&ring, None), Ok(Reduction::FractionField(format!("F{p}"))));
    }
}
