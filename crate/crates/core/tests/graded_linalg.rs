use num_bigint::BigInt;
use proptest::prelude::*;

use dgmorse::graded::{koszul_apply, koszul_apply_tensor, Elem, GradedBasis, GradedMap, TensorElem};
use dgmorse::linalg::{homology_at, kernel, rank, smith_normal_form, solve, Matrix};
use dgmorse::ring::{EuclideanRing, Integers, Laurent, Rationals, Ring};

fn int_matrix(rows: usize, cols: usize, v: &[i64]) -> Matrix<BigInt> {
    let r = (0..rows).map(|i| (0..cols).map(|j| BigInt::from(v[i * cols + j])).collect()).collect();
    Matrix::from_rows(&Integers, cols, r)
}

fn arb_int_matrix() -> impl Strategy<Value = Matrix<BigInt>> {
    (0usize..5, 0usize..5).prop_flat_map(|(r, c)| {
        prop::collection::vec(-9i64..10, r * c).prop_map(move |v| int_matrix(r, c, &v))
    })
}

fn check_smith<R: EuclideanRing>(ring: &R, m: &Matrix<R::Elem>) -> Result<(), TestCaseError> {
    let s = smith_normal_form(ring, m);
    prop_assert_eq!(s.u.mul(ring, m).mul(ring, &s.v), s.d.clone());
    prop_assert_eq!(s.u.mul(ring, &s.u_inv), Matrix::identity(ring, m.rows()));
    prop_assert_eq!(s.v.mul(ring, &s.v_inv), Matrix::identity(ring, m.cols()));
    for i in 0..s.d.rows() {
        for j in 0..s.d.cols() {
            if i != j {
                prop_assert!(ring.is_zero(s.d.get(i, j)));
            }
        }
    }
    let diag = s.diagonal();
    for i in 0..s.rank {
        prop_assert!(!ring.is_zero(&diag[i]));
        prop_assert_eq!(ring.normalize(&diag[i]), diag[i].clone());
        if i + 1 < s.rank {
            prop_assert!(ring.divides(&diag[i], &diag[i + 1]));
        }
    }
    prop_assert!(diag[s.rank..].iter().all(|x| ring.is_zero(x)));
    Ok(())
}

proptest! {
    #[test]
    fn smith_over_integers(m in arb_int_matrix()) {
        check_smith(&Integers, &m)?;
    }

    #[test]
    fn smith_over_laurent(v in prop::collection::vec((-2i64..3, -1i64..2, -2i64..3), 4)) {
        let ring = Laurent::new(Rationals);
        let power = |e: i64| match e {
            0 => ring.one(),
            1 => ring.parse("t").unwrap(),
            _ => ring.parse("t^-1").unwrap(),
        };
        let entry = |(a, e, b): (i64, i64, i64)| ring.add(&ring.from_i64(a), &ring.mul(&ring.from_i64(b), &power(e)));
        let rows = vec![vec![entry(v[0]), entry(v[1])], vec![entry(v[2]), entry(v[3])]];
        let m = Matrix::from_rows(&ring, 2, rows);
        check_smith(&ring, &m)?;
    }

    #[test]
    fn rank_matches_rationals(m in arb_int_matrix()) {
        let q = m.map(|x| num_rational::BigRational::from_integer(x.clone()));
        prop_assert_eq!(rank(&Integers, &m), rank(&Rationals, &q));
    }

    #[test]
    fn kernel_is_annihilated(m in arb_int_matrix()) {
        let k = kernel(&Integers, &m);
        prop_assert_eq!(k.cols(), m.cols() - rank(&Integers, &m));
        prop_assert!(m.mul(&Integers, &k).is_zero(&Integers));
    }

    #[test]
    fn solve_recovers_images(m in arb_int_matrix(), x in prop::collection::vec(-5i64..6, 4)) {
        let x: Vec<BigInt> = x.iter().take(m.cols()).map(|&v| BigInt::from(v)).chain(std::iter::repeat(BigInt::from(0))).take(m.cols()).collect();
        let b = m.apply(&Integers, &x);
        let y = solve(&Integers, &m, &b).expect("b lies in the image");
        prop_assert_eq!(m.apply(&Integers, &y), b);
    }

    /// `(f⊗g)∘(h⊗k) = (−1)^{|g||h|} (fh ⊗ gk)` by brute force on a two-element basis.
    #[test]
    fn koszul_composite(
        degs in prop::collection::vec(-1i64..2, 4),
        coeffs in prop::collection::vec(-3i64..4, 16),
        input in prop::collection::vec(-3i64..4, 4),
    ) {
        let b = GradedBasis::new(1, vec![("a".into(), 0), ("b".into(), 1)]).unwrap();
        let map = |d: i64, c: &[i64]| -> GradedMap<BigInt> {
            let images = (0..2usize)
                .map(|i| {
                    let t = i as i64 + d;
                    let mut e = Elem::new();
                    if (0..2).contains(&t) {
                        e.add_term(&Integers, t as usize, BigInt::from(c[i]));
                    }
                    e
                })
                .collect();
            GradedMap { degree: d, images }
        };
        let (f, g, h, k) = (map(degs[0], &coeffs[0..]), map(degs[1], &coeffs[4..]), map(degs[2], &coeffs[8..]), map(degs[3], &coeffs[12..]));
        let mut t = TensorElem::new();
        for (n, &c) in input.iter().enumerate() {
            t.add_term(&Integers, (n / 2, n % 2), BigInt::from(c));
        }
        let lhs = koszul_apply_tensor(&Integers, &f, &g, &b, &koszul_apply_tensor(&Integers, &h, &k, &b, &t));
        let fh = f.compose(&Integers, &h);
        let gk = g.compose(&Integers, &k);
        let rhs = koszul_apply_tensor(&Integers, &fh, &gk, &b, &t);
        let rhs = if (g.degree * h.degree).rem_euclid(2) == 1 { rhs.negated(&Integers) } else { rhs };
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn koszul_sign_examples() {
    let b = GradedBasis::new(2, vec![("x".into(), 1), ("y".into(), 1), ("z".into(), 2)]).unwrap();
    let one = |i| Elem::single(&Integers, i, BigInt::from(1));
    let f = GradedMap::identity(&Integers, 3);
    let g = GradedMap { degree: 1, images: vec![one(2), one(2), Elem::new()] };
    // |g| = 1, |x| = 1: sign −1.
    let out = koszul_apply(&Integers, &f, &g, (&b, &one(0)), (&b, &one(1))).unwrap();
    assert_eq!(out.get(&(0, 2)), Some(&BigInt::from(-1)));
    // |g| = 0: sign +1.
    let out = koszul_apply(&Integers, &f, &f, (&b, &one(0)), (&b, &one(1))).unwrap();
    assert_eq!(out.get(&(0, 1)), Some(&BigInt::from(1)));
}

#[test]
fn smith_examples() {
    let s = smith_normal_form(&Integers, &int_matrix(2, 2, &[2, 0, 0, 3]));
    assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    let s = smith_normal_form(&Integers, &int_matrix(3, 3, &[2, 4, 4, -6, 6, 12, 10, -4, -16]));
    assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    let z = int_matrix(2, 3, &[0; 6]);
    let s = smith_normal_form(&Integers, &z);
    assert_eq!(s.rank, 0);
    assert_eq!(s.u, Matrix::identity(&Integers, 2));
    assert_eq!(s.v, Matrix::identity(&Integers, 3));
}

#[test]
fn homology_examples() {
    let zero = |r, c| Matrix::zeros(&Integers, r, c);
    let h = homology_at(&Integers, &zero(3, 0), &zero(0, 3)).unwrap();
    assert_eq!((h.free_rank(), h.torsion().len()), (3, 0));
    let h = homology_at(&Integers, &int_matrix(1, 1, &[2]), &zero(0, 1)).unwrap();
    assert_eq!(h.describe(&Integers), "Z/(2)");
    let ring = Laurent::new(Rationals);
    let d = Matrix::from_rows(&ring, 1, vec![vec![ring.parse("1 - t").unwrap()]]);
    let h = homology_at(&ring, &d, &Matrix::zeros(&ring, 0, 1)).unwrap();
    assert_eq!(h.free_rank(), 0);
    assert_eq!(h.describe(&ring), "Laurent/(-1 + t)");
}
