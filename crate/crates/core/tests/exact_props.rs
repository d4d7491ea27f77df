//! Field laws in Q(sqrt d) and integer normal forms against Bareiss.

mod common;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use zcert_core::exact::{hnf, invert_symmetric, snf, IntMatrix, QuadExt, Rational};

fn quad(d: i64) -> impl Strategy<Value = QuadExt> {
    (-20i64..20, 1i64..6, -20i64..20, 1i64..6).prop_map(move |(a, da, b, db)| {
        QuadExt::new(d, Rational::new(a.into(), da.into()), Rational::new(b.into(), db.into())).unwrap()
    })
}

fn field_triple() -> impl Strategy<Value = (QuadExt, QuadExt, QuadExt)> {
    prop::sample::select(vec![-3i64, -2, -1, 2, 3, 5]).prop_flat_map(|d| (quad(d), quad(d), quad(d)))
}

fn int_matrix(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, n), n)
}

fn big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

proptest! {
    #[test]
    fn quadratic_field_laws((x, y, z) in field_triple()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x - &y) + &y, x.clone());
        prop_assert_eq!(x.norm(), (&x * &x.conj()).re().clone());
        if !x.is_zero() {
            prop_assert!((&x * &x.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn smith_form_against_bareiss(rows in (1usize..=5).prop_flat_map(int_matrix)) {
        let m = IntMatrix::from_rows(big(&rows));
        let f = snf(&m).invariant_factors();
        let det = common::bareiss_det(big(&rows)).abs();
        let prod = f.iter().fold(BigInt::one(), |a, b| a * b);
        prop_assert_eq!(prod, det.clone());
        for w in f.windows(2) {
            if !w[1].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero(), "{:?}", f);
            }
        }
        // u m v = d
        let s = snf(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
    }

    #[test]
    fn hermite_form_is_stable(rows in (1usize..=5).prop_flat_map(int_matrix)) {
        let h = hnf(&IntMatrix::from_rows(big(&rows)));
        prop_assert_eq!(hnf(&h), h.clone());
        // same lattice up to sign of the determinant
        let dh = common::bareiss_det(h.to_rows()).abs();
        let dm = common::bareiss_det(big(&rows)).abs();
        if h.rows() == rows.len() {
            prop_assert_eq!(dh, dm);
        }
    }

    #[test]
    fn symmetric_inverse(rows in (1usize..=4).prop_flat_map(int_matrix)) {
        let n = rows.len();
        // g = a^T a + n I is symmetric and nonsingular
        let a = IntMatrix::from_rows(big(&rows));
        let mut g = a.transpose().mul(&a).to_rows();
        for (i, row) in g.iter_mut().enumerate() {
            row[i] += BigInt::from(n as i64);
        }
        let g = IntMatrix::from_rows(g);
        let inv = invert_symmetric(&g).unwrap();
        let id = g.to_rational().mul(&inv);
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { Rational::one() } else { Rational::zero() };
                prop_assert_eq!(&id.row(i)[j], &want);
            }
        }
    }
}
