mod common;

use admm_split::linalg::{adjoint_matvec, matvec};
use admm_split::{CMatrix, CVector, Error, GramSolver, GramStrategy, C64};
use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use common::*;

fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| C64::new(unit(rng), unit(rng))).unwrap()
}

fn random_vector(rng: &mut ChaCha8Rng, len: usize) -> CVector {
    cvec((0..len).map(|_| C64::new(unit(rng), unit(rng))).collect())
}

#[test]
fn matvec_small_cases() {
    let i = C64::new(0.0, 1.0);
    let one = C64::new(1.0, 0.0);
    let x = cvec(vec![one, 2.0 * i, -one]);
    assert_eq!(matvec(&CMatrix::identity(3), &x).unwrap(), x);
    let z = matvec(&CMatrix::zeros(2, 3), &x).unwrap();
    assert_eq!(z, CVector::zeros(2));

    let a = CMatrix::new(2, 2, vec![one, i, C64::new(0.0, 0.0), 2.0 * one]).unwrap();
    let ones = cvec(vec![one, one]);
    let y = matvec(&a, &ones).unwrap();
    assert_eq!(y.as_slice(), &[one + i, 2.0 * one]);
    assert_eq!(y.as_slice(), naive_matvec(&a, ones.as_slice()).as_slice());

    assert!(matches!(matvec(&a, &x), Err(Error::Dimension(_))));
    assert!(matches!(adjoint_matvec(&a, &x), Err(Error::Dimension(_))));
}

#[test]
fn adjoint_small_cases() {
    let i = C64::new(0.0, 1.0);
    let y = CVector::from_real(&[3.0, 4.0]).unwrap();
    assert_eq!(adjoint_matvec(&CMatrix::identity(2), &y).unwrap(), y);
    let a = CMatrix::new(1, 1, vec![i]).unwrap();
    let out = adjoint_matvec(&a, &CVector::from_real(&[1.0]).unwrap()).unwrap();
    assert_eq!(out[0], -i);

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let a = random_matrix(&mut rng, 3, 2);
    let y = random_vector(&mut rng, 3);
    let via_transpose = matvec(&a.conj_transpose(), &y).unwrap();
    assert!(
        adjoint_matvec(&a, &y)
            .unwrap()
            .max_abs_diff(&via_transpose)
            .unwrap()
            < 1e-15
    );
}

#[test]
fn gram_strategies_by_shape() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let wide = GramSolver::new(random_matrix(&mut rng, 5, 30), 1.0).unwrap();
    assert_eq!(wide.strategy(), GramStrategy::Woodbury);
    assert_eq!(wide.inner_dim(), 5);
    let square = GramSolver::new(random_matrix(&mut rng, 6, 6), 1.0).unwrap();
    assert_eq!(square.strategy(), GramStrategy::Direct);
    assert_eq!(square.inner_dim(), 6);
    let tall = GramSolver::new(random_matrix(&mut rng, 5, 3), 1.0).unwrap();
    assert_eq!(tall.strategy(), GramStrategy::Direct);
    assert_eq!(tall.inner_dim(), 3);
}

#[test]
fn gram_solve_against_dense_assembly() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let h = random_matrix(&mut rng, 4, 10);
    let rhs = random_vector(&mut rng, 10);
    let want = gauss_solve(dense_regularized_gram(&h, 0.5), rhs.as_slice().to_vec());
    let got = GramSolver::new(h, 0.5).unwrap().solve(&rhs).unwrap();
    assert!(rel_diff(got.as_slice(), &want) <= 1e-8);
}

#[test]
fn woodbury_matches_direct_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let rows = 1 + (rng.next_u64() % 12) as usize;
        let cols = rows + 1 + (rng.next_u64() % 20) as usize;
        let rho = 10f64.powf(unit(&mut rng) * 2.0);
        let h = random_matrix(&mut rng, rows, cols);
        let rhs = random_vector(&mut rng, cols);
        let dense = gauss_solve(dense_regularized_gram(&h, rho), rhs.as_slice().to_vec());
        let wood = GramSolver::with_strategy(h.clone(), rho, GramStrategy::Woodbury).unwrap();
        let direct = GramSolver::with_strategy(h, rho, GramStrategy::Direct).unwrap();
        let xw = wood.solve(&rhs).unwrap();
        let xd = direct.solve(&rhs).unwrap();
        assert!(rel_diff(xw.as_slice(), &dense) <= 1e-8);
        assert!(rel_diff(xd.as_slice(), &dense) <= 1e-8);
        assert!(rel_diff(xw.as_slice(), xd.as_slice()) <= 1e-8);
    }
}

#[test]
fn gram_residual_is_small() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (rows, cols, rho) in [(8, 40, 1e-3), (40, 8, 1e-3), (20, 20, 1e3)] {
        let h = random_matrix(&mut rng, rows, cols);
        let rhs = random_vector(&mut rng, cols);
        let x = GramSolver::new(h.clone(), rho)
            .unwrap()
            .solve(&rhs)
            .unwrap();
        let hx = naive_matvec(&h, x.as_slice());
        let back: Vec<C64> = naive_adjoint(&h, &hx)
            .iter()
            .zip(x.iter())
            .map(|(a, b)| a + b * rho)
            .collect();
        assert!(rel_diff(&back, rhs.as_slice()) <= 1e-8, "{rows}x{cols}");
    }
}

#[test]
fn gram_is_repeatable() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let h = random_matrix(&mut rng, 150, 300);
    let rhs = random_vector(&mut rng, 300);
    let a = GramSolver::new(h.clone(), 0.3)
        .unwrap()
        .solve(&rhs)
        .unwrap();
    let b = GramSolver::new(h, 0.3).unwrap().solve(&rhs).unwrap();
    assert_eq!(a, b);
}

proptest! {
    #[test]
    fn adjoint_identity(seed in any::<u64>(), rows in 1usize..12, cols in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(&mut rng, rows, cols);
        let x = random_vector(&mut rng, cols);
        let y = random_vector(&mut rng, rows);
        let lhs = matvec(&a, &x).unwrap().dot(&y).unwrap();
        let rhs = x.dot(&adjoint_matvec(&a, &y).unwrap()).unwrap();
        let scale = matvec(&a, &x).unwrap().norm() * y.norm() + 1e-300;
        prop_assert!((lhs - rhs).norm() <= 1e-10 * scale);
    }

    #[test]
    fn matvec_matches_naive_loops(seed in any::<u64>(), rows in 1usize..10, cols in 1usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(&mut rng, rows, cols);
        let x = random_vector(&mut rng, cols);
        let y = matvec(&a, &x).unwrap();
        let want = naive_matvec(&a, x.as_slice());
        prop_assert_eq!(y.as_slice(), want.as_slice());
    }
}
