mod randomized;

use std::sync::Arc;

use instanton::arith::nf_reduce;
use instanton::linalg::{sparse_rank, Matrix, PolyMatrix};
use instanton::monad::{gamma_dimension, verify_monad, MonadDatum};
use instanton::{Field, Monomial, NfElement, NumberField, Polynomial, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..30, 1i64..12).prop_map(|(n, d)| q(n, d))
}

fn cubic_field() -> Arc<NumberField> {
    // n^3 + 2n^2 + n + 1, irreducible over Q
    Arc::new(NumberField::new("n", vec![q(1, 1), q(1, 1), q(2, 1), q(1, 1)]).unwrap())
}

fn nf_element() -> impl Strategy<Value = NfElement> {
    prop::collection::vec(rational(), 3).prop_map(|c| cubic_field().element(&c))
}

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::array::uniform4(0u32..3).prop_map(Monomial)
}

fn q_poly() -> impl Strategy<Value = Polynomial<Rational>> {
    prop::collection::vec((monomial(), rational()), 0..5).prop_map(Polynomial::from_terms)
}

fn nf_poly() -> impl Strategy<Value = Polynomial<NfElement>> {
    prop::collection::vec((monomial(), nf_element()), 0..4).prop_map(Polynomial::from_terms)
}

fn q_matrix() -> impl Strategy<Value = Matrix<Rational>> {
    (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec((-3i64..4).prop_map(|v| q(v, 1)), c), r)
            .prop_map(|rows| Matrix::from_rows(rows).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert!((&a * &Field::inv(&a).unwrap()).is_one());
        }
    }

    #[test]
    fn nf_field_axioms(a in nf_element(), b in nf_element(), c in nf_element()) {
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert!((a.clone() - a.clone()).is_zero());
        if !a.is_zero() {
            prop_assert!((a.clone() * a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn nf_reduce_is_idempotent(c in prop::collection::vec(rational(), 0..8)) {
        let f = cubic_field();
        let once = nf_reduce(&c, f.min_poly()).unwrap();
        prop_assert!(once.len() <= 3);
        prop_assert_eq!(nf_reduce(&once, f.min_poly()).unwrap(), once);
    }

    #[test]
    fn polynomial_ring_axioms(a in q_poly(), b in q_poly(), c in q_poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn q_polynomial_print_parse_round_trip(p in q_poly()) {
        prop_assert_eq!(Polynomial::parse(&p.to_string(), &()).unwrap(), p);
    }

    #[test]
    fn nf_polynomial_print_parse_round_trip(p in nf_poly()) {
        let ctx = Some(cubic_field());
        prop_assert_eq!(Polynomial::parse(&p.to_string(), &ctx).unwrap(), p);
    }

    #[test]
    fn rank_invariants(m in q_matrix()) {
        let rank = m.rank();
        prop_assert_eq!(rank, m.transpose().rank());
        let kernel = m.kernel_basis();
        prop_assert_eq!(rank + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn sparse_rank_matches_dense(m in q_matrix()) {
        let columns = (0..m.cols()).map(|j| {
            (0..m.rows()).filter(|&i| !m.get(i, j).is_zero()).map(|i| (i, m.get(i, j).clone())).collect()
        });
        prop_assert_eq!(sparse_rank(columns), m.rank());
    }
}

fn int_matrix(m: &[Vec<i64>]) -> Matrix<Rational> {
    Matrix::from_rows(m.iter().map(|r| r.iter().map(|&v| q(v, 1)).collect()).collect()).unwrap()
}

fn const_poly_matrix(m: &Matrix<Rational>) -> PolyMatrix<Rational> {
    let rows = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| Polynomial::constant(m.get(i, j).clone())).collect())
        .collect();
    PolyMatrix::from_rows(rows).unwrap()
}

#[test]
fn gamma_is_invariant_under_base_change() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for b in [4, 5, 6, 5, 4, 6] {
        let m = randomized::random_monad(&mut rng, b);
        let (u, uinv) = randomized::unimodular(&mut rng, b, 12);
        let (u, uinv) = (const_poly_matrix(&int_matrix(&u)), const_poly_matrix(&int_matrix(&uinv)));
        let moved = MonadDatum::new(
            1,
            b,
            1,
            u.mul(&m.alpha).unwrap(),
            m.beta.mul(&uinv).unwrap(),
            (),
        )
        .unwrap();
        assert!(verify_monad(&moved).unwrap().is_monad);
        assert_eq!(gamma_dimension(&m).unwrap(), gamma_dimension(&moved).unwrap());
    }
}

#[test]
fn unimodular_inverse_is_inverse() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 2..7 {
        let (u, uinv) = randomized::unimodular(&mut rng, n, 20);
        assert_eq!(int_matrix(&u).mul(&int_matrix(&uinv)).unwrap(), Matrix::identity(n));
    }
}

#[test]
fn graded_rank_matches_dense_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for b in [4, 5, 6] {
        let m = randomized::random_monad(&mut rng, b);
        for map in [m.beta_map(), m.alpha_map(), instanton::monad::s_module(&m)] {
            for k in -2..=3 {
                assert_eq!(map.graded_rank(k), map.graded_piece(k).rank(), "b = {b}, k = {k}");
            }
        }
    }
}
