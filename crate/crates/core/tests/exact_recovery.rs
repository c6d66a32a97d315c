use hhf_core::estimators::recover_factors;
use hhf_core::exact::{candidate_intersection, enumerate_column_candidates, exact_recover, DEFAULT_N_MAX};
use hhf_core::sampling::{derive_seed, sample_binary_matrix, sample_unit_vector, BernoulliParams};
use hhf_core::{linf_error_up_to_sign, BinaryMatrix, Householder, Instance};

fn contains_up_to_sign(cands: &[hhf_core::exact::ColumnGuessSolution], u: &hhf_core::UnitVector) -> bool {
    cands.iter().any(|s| linf_error_up_to_sign(&s.u_candidate, u).unwrap() < 1e-8)
}

#[test]
fn candidates_contain_the_generator() {
    // forward-generate y = H x, then enumerate
    for seed in 0..10u64 {
        let u = sample_unit_vector(10, seed, 0.0).unwrap();
        let mut x = sample_binary_matrix(10, 1, BernoulliParams::new(0.5).unwrap(), seed + 100)
            .unwrap()
            .column(0);
        if x.iter().all(|&b| b == 0) {
            x[3] = 1;
        }
        let y = Householder::new(u.clone()).apply_vector(&x.iter().map(|&b| f64::from(b)).collect::<Vec<_>>()).unwrap();
        let cands = enumerate_column_candidates(&y, DEFAULT_N_MAX).unwrap();
        assert!(contains_up_to_sign(&cands, &u), "seed {seed}");
        let hit = cands.iter().find(|s| linf_error_up_to_sign(&s.u_candidate, &u).unwrap() < 1e-8).unwrap();
        assert_eq!(hit.guess, x);
    }
}

#[test]
fn every_candidate_forward_verifies() {
    for seed in 0..20u64 {
        let inst = Instance::sample(7, 3, BernoulliParams::new(0.5).unwrap(), 0.0, seed).unwrap();
        for j in 0..3 {
            let y = inst.y.column(j);
            let cands = enumerate_column_candidates(&y, DEFAULT_N_MAX).unwrap();
            for s in &cands {
                let x: Vec<f64> = s.guess.iter().map(|&b| f64::from(b)).collect();
                let hx = Householder::new(s.u_candidate.clone()).apply_vector(&x).unwrap();
                let err = hx.iter().zip(&y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                assert!(err < 1e-8);
            }
            if inst.x.column(j).iter().any(|&b| b == 1) {
                assert!(contains_up_to_sign(&cands, &inst.u));
            }
        }
    }
}

#[test]
fn recovers_fifty_instances_in_dimension_eight() {
    let params = BernoulliParams::new(0.5).unwrap();
    for trial in 0..50u64 {
        let u = sample_unit_vector(8, derive_seed(77, trial, 1), 0.0).unwrap().canonical(1e-9);
        let mut x = sample_binary_matrix(8, 6, params, derive_seed(77, trial, 2)).unwrap();
        let mut bump = 0;
        while (0..6).filter(|&j| x.column(j).iter().any(|&b| b == 1)).count() < 2
            || (1..6).all(|j| x.column(j) == x.column(0))
        {
            bump += 1;
            x = sample_binary_matrix(8, 6, params, derive_seed(77, trial, 2 + bump)).unwrap();
        }
        let y = Householder::new(u.clone()).apply_binary(&x).unwrap();
        let r = exact_recover(&y, DEFAULT_N_MAX).unwrap().expect("recovered");
        assert!(linf_error_up_to_sign(&u, &r.u_hat).unwrap() < 1e-9, "trial {trial}");
        assert_eq!(r.x_hat, x, "trial {trial}");
    }
}

#[test]
fn hyperplane_column_does_not_pin_the_generator() {
    // column 1 satisfies u^T x = 0 for u = e1, so it only constrains u to a
    // hyperplane; with column 0 all zero a second binary factorization exists
    let u = hhf_core::UnitVector::basis(4, 0).unwrap();
    let x = BinaryMatrix::from_rows(&[vec![0, 0, 1], vec![0, 1, 1], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
    let y = Householder::new(u.clone()).apply_binary(&x).unwrap();
    assert_eq!(exact_recover(&y, DEFAULT_N_MAX), Err(hhf_core::Error::Ambiguous { count: 2 }));

    let both = candidate_intersection(&y.column(2), &y.column(1), DEFAULT_N_MAX).unwrap();
    assert_eq!(both.len(), 2);
    for v in &both {
        let back = Householder::new(v.clone()).apply(&y).unwrap();
        assert!(back.as_slice().iter().all(|&e| e.abs() < 1e-12 || (e - 1.0).abs() < 1e-12));
    }

    // a generic third nonzero column removes the ambiguity
    let x = BinaryMatrix::from_rows(&[vec![1, 0, 1], vec![1, 1, 1], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
    let u = sample_unit_vector(4, 3, 0.0).unwrap();
    let y = Householder::new(u.clone()).apply_binary(&x).unwrap();
    let r = exact_recover(&y, DEFAULT_N_MAX).unwrap().unwrap();
    assert_eq!(r.x_hat, x);
}

#[test]
fn intersection_is_symmetric_in_the_columns() {
    let inst = Instance::sample(9, 2, BernoulliParams::new(0.5).unwrap(), 0.0, 5).unwrap();
    let (a, b) = (inst.y.column(0), inst.y.column(1));
    let ab = candidate_intersection(&a, &b, DEFAULT_N_MAX).unwrap();
    let ba = candidate_intersection(&b, &a, DEFAULT_N_MAX).unwrap();
    assert_eq!(ab.len(), ba.len());
}

#[test]
fn exact_and_polynomial_agree_with_many_columns() {
    let params = BernoulliParams::new(0.4).unwrap();
    for seed in 0..5u64 {
        let inst = Instance::sample(10, 10_000, params, 0.5, seed).unwrap();
        let exact = exact_recover(&inst.y, DEFAULT_N_MAX).unwrap().unwrap();
        let poly = recover_factors(&inst.y).unwrap();
        let gap = linf_error_up_to_sign(&exact.u_hat, &poly.u_hat).unwrap();
        assert!(gap < 0.05, "seed {seed}: gap {gap}");
        assert_eq!(exact.x_hat, inst.x);
    }
}
