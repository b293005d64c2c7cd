//! Randomized exact identities for ℚ(i) arithmetic, involutions and the
//! cocycle groupoid of matrix groups.

use proptest::prelude::*;
use realforms::exact::{
    connects, in_twisted_stabilizer, is_cocycle, ExactMatrix, GaussianRational, InvolutionSpec,
};

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4)
        .prop_map(|(a, b, c, d)| GaussianRational::from_fractions(a, b, c, d).unwrap())
}

fn matrix(n: usize) -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec(prop::collection::vec(gaussian(), n), n)
        .prop_map(|rows| ExactMatrix::from_rows(rows).unwrap())
}

fn invertible(n: usize) -> impl Strategy<Value = ExactMatrix> {
    matrix(n).prop_filter("singular", |m| !m.det().is_zero())
}

/// Real invertible matrices: the stabilizer of the identity cocycle under
/// plain conjugation.
fn real_invertible(n: usize) -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec(prop::collection::vec((-5i64..=5, 1i64..=3), n), n)
        .prop_map(|rows| {
            ExactMatrix::from_rows(
                rows.into_iter()
                    .map(|r| {
                        r.into_iter()
                            .map(|(a, b)| GaussianRational::from_fractions(a, b, 0, 1).unwrap())
                            .collect()
                    })
                    .collect(),
            )
            .unwrap()
        })
        .prop_filter("singular", |m| !m.det().is_zero())
}

fn involutions() -> Vec<InvolutionSpec> {
    let int = GaussianRational::from_ints;
    let z = || int(0, 0);
    vec![
        InvolutionSpec::Conjugate,
        InvolutionSpec::conjugate_by(ExactMatrix::diagonal(vec![int(1, 0), int(-1, 0)])).unwrap(),
        InvolutionSpec::conjugate_by(
            ExactMatrix::from_rows(vec![vec![z(), int(0, 1)], vec![int(0, 1), z()]]).unwrap(),
        )
        .unwrap(),
        InvolutionSpec::conjugate_by(
            ExactMatrix::from_rows(vec![vec![z(), int(1, 0)], vec![int(1, 0), z()]]).unwrap(),
        )
        .unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn field_identities(a in gaussian(), b in gaussian(), c in gaussian()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), GaussianRational::one());
        }
    }

    #[test]
    fn matrix_inverse(m in invertible(3)) {
        let inv = m.inverse().unwrap();
        prop_assert!(m.mul(&inv).unwrap().is_identity());
        prop_assert!(inv.mul(&m).unwrap().is_identity());
    }

    #[test]
    fn involution_is_multiplicative(m in matrix(2), n in matrix(2), which in 0usize..4) {
        let s = &involutions()[which];
        let mn = m.mul(&n).unwrap();
        prop_assert_eq!(s.apply(&mn).unwrap(), s.apply(&m).unwrap().mul(&s.apply(&n).unwrap()).unwrap());
        prop_assert_eq!(s.apply(&s.apply(&m).unwrap()).unwrap(), m);
    }

    #[test]
    fn connects_is_a_groupoid(h1 in invertible(2), h2 in invertible(2), which in 0usize..4) {
        let s = &involutions()[which];
        // the identity is a cocycle for plain conjugation, J itself for σ_J
        let g = match s {
            InvolutionSpec::Conjugate => ExactMatrix::identity(2),
            InvolutionSpec::ConjugateBy(j) => j.conj(),
        };
        prop_assert!(is_cocycle(&g, s).unwrap());
        let g1 = s.apply(&h1).unwrap().mul(&g).unwrap().mul(&h1.inverse().unwrap()).unwrap();
        let g2 = s.apply(&h2).unwrap().mul(&g1).unwrap().mul(&h2.inverse().unwrap()).unwrap();
        prop_assert!(is_cocycle(&g1, s).unwrap());
        prop_assert!(connects(&h1, &g, &g1, s).unwrap());
        prop_assert!(connects(&h2, &g1, &g2, s).unwrap());
        prop_assert!(connects(&h2.mul(&h1).unwrap(), &g, &g2, s).unwrap());
        prop_assert!(connects(&h1.inverse().unwrap(), &g1, &g, s).unwrap());
    }

    #[test]
    fn stabilizer_is_a_subgroup(a in real_invertible(2), b in real_invertible(2)) {
        let s = InvolutionSpec::Conjugate;
        let g = ExactMatrix::identity(2);
        prop_assert!(in_twisted_stabilizer(&a, &g, &s).unwrap());
        prop_assert!(in_twisted_stabilizer(&a.mul(&b).unwrap(), &g, &s).unwrap());
        prop_assert!(in_twisted_stabilizer(&a.inverse().unwrap(), &g, &s).unwrap());
    }

    #[test]
    fn unitary_stabilizer_closure(t in 0i64..8, u in 0i64..8) {
        // diag(w, 1/w) with |w| = 1 stabilizes (0 i / i 0); w ranges over
        // (a + bi)/c for the Pythagorean triples (3,4,5) and (5,12,13)
        let units = [(1, 0, 1), (0, 1, 1), (3, 4, 5), (4, -3, 5), (5, 12, 13), (-12, 5, 13), (-1, 0, 1), (0, -1, 1)];
        let d = |(a, b, c): (i64, i64, i64)| {
            let w = GaussianRational::from_fractions(a, c, b, c).unwrap();
            ExactMatrix::diagonal(vec![w.clone(), w.inv().unwrap()])
        };
        let int = GaussianRational::from_ints;
        let g = ExactMatrix::from_rows(vec![vec![int(0, 0), int(0, 1)], vec![int(0, 1), int(0, 0)]]).unwrap();
        let s = InvolutionSpec::Conjugate;
        let (x, y) = (d(units[t as usize]), d(units[u as usize]));
        prop_assert!(in_twisted_stabilizer(&x, &g, &s).unwrap());
        prop_assert!(in_twisted_stabilizer(&x.mul(&y).unwrap(), &g, &s).unwrap());
        prop_assert!(in_twisted_stabilizer(&x.inverse().unwrap(), &g, &s).unwrap());
    }
}
