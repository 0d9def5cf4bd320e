use antidual_web::{complement_2x2, convergence_2x2, lebesgue_2x2};

fn close(x: &[f64], y: &[f64]) -> bool {
    x.iter().zip(y).all(|(a, b)| (a - b).abs() < 1e-9)
}

#[test]
fn complement_examples() {
    assert!(close(&complement_2x2(&[1.0, 0.0, 1.0], &[1.0, 0.0, 0.0, 1.0]).unwrap(), &[1.0, 0.0, 1.0]));
    // B A^+ B* with A = diag(2, 0), B = [[1, 0], [3, 0]]
    let ab = complement_2x2(&[2.0, 0.0, 0.0], &[1.0, 0.0, 3.0, 0.0]).unwrap();
    assert!(close(&ab, &[0.5, 1.5, 4.5]));
    let err = complement_2x2(&[1.0, 0.0, 0.0], &[0.0, 0.0, 0.0, 1.0]).unwrap_err();
    assert!(err.contains("not completable"));
}

#[test]
fn lebesgue_examples() {
    let s = lebesgue_2x2(&[1.0, 0.0, 1.0], &[1.0, 0.0, 0.0]).unwrap();
    assert!(close(&s.regular, &[1.0, 0.0, 0.0]));
    assert!(close(&s.singular, &[0.0, 0.0, 1.0]));
    let s = lebesgue_2x2(&[1.0, 1.0, 1.0], &[1.0, 0.0, 0.0]).unwrap();
    assert!(close(&s.regular, &[0.0; 3]));
    assert!(close(&s.singular, &[1.0, 1.0, 1.0]));
    assert!(s.route_deviation < 1e-7);
}

#[test]
fn convergence_curve_decreases_to_zero() {
    let d = convergence_2x2(&[1.0, 0.0, 1.0], &[1.0, 0.0, 0.0], 40).unwrap();
    assert_eq!(d.len(), 41);
    // A:(nB) = diag(n / (n + 1), 0), so the gap is 1 / (n + 1) up to the limit tolerance
    for (k, x) in d.iter().enumerate() {
        let n = 2f64.powi(k as i32);
        assert!((x - 1.0 / (n + 1.0)).abs() < 1e-8, "k = {k}: {x}");
    }
}

#[test]
fn rejects_bad_input() {
    assert!(lebesgue_2x2(&[1.0, 0.0], &[1.0, 0.0, 0.0]).is_err());
    assert!(lebesgue_2x2(&[1.0, 0.0, -1.0], &[1.0, 0.0, 0.0]).is_err());
    assert!(complement_2x2(&[1.0, 0.0, 1.0], &[f64::NAN, 0.0, 0.0, 0.0]).is_err());
}
