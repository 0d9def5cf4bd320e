mod common;

use antidual::matrix::{frobenius, Hermitian};
use antidual::psd::{loewner_leq, pseudo_inverse, range_inclusion, sqrt_psd};
use antidual::sample;
use common::*;

#[test]
fn penrose_conditions() {
    let mut rng = sample::rng(21);
    let tol = pol().eq_tol;
    for _ in 0..200 {
        let n = sample::dim(8, &mut rng);
        let a = sample::psd_any_rank(n, &mut rng);
        let p = pseudo_inverse(&psd(&a));
        let (am, pm) = (a.matrix(), p.matrix());
        assert!(frobenius(&(am * pm * am - am)) <= tol);
        assert!(frobenius(&(pm * am * pm - pm)) <= tol * frobenius(pm).max(1.0));
        let ap = am * pm;
        let pa = pm * am;
        assert!(frobenius(&(&ap - ap.adjoint())) <= tol);
        assert!(frobenius(&(&pa - pa.adjoint())) <= tol);
        // independent check against the SVD pseudo-inverse
        let svd = svd_pinv(am, 1e-10 * frobenius(am).max(1.0));
        assert!(frobenius(&(pm - svd)) <= tol * frobenius(pm).max(1.0));
    }
}

#[test]
fn square_root() {
    let mut rng = sample::rng(22);
    for _ in 0..200 {
        let n = sample::dim(8, &mut rng);
        let a = sample::psd_any_rank(n, &mut rng);
        let r = sqrt_psd(&psd(&a));
        let rm = r.matrix();
        assert!(frobenius(&(rm * rm - a.matrix())) <= pol().eq_tol);
        assert!(frobenius(&(rm * a.matrix() - a.matrix() * rm)) <= pol().eq_tol);
        assert!(psd(r.base()).rank() == psd(&a).rank());
    }
}

#[test]
fn range_inclusion_ignores_square_root() {
    let mut rng = sample::rng(23);
    let mut inside = 0;
    for i in 0..300_usize {
        let n = sample::dim(6, &mut rng);
        let a = psd(&sample::psd_any_rank(n, &mut rng));
        let cols = 1 + sample::index(3, &mut rng);
        let x = if i.is_multiple_of(2) {
            a.matrix() * sample::matrix(n, cols, &mut rng)
        } else {
            sample::matrix(n, cols, &mut rng)
        };
        let direct = range_inclusion(&x, &a, &pol()).unwrap();
        let via_root = range_inclusion(&x, &sqrt_psd(&a), &pol()).unwrap();
        assert_eq!(direct, via_root);
        if direct {
            inside += 1;
        }
    }
    assert!(inside > 100);
}

#[test]
fn loewner_order_is_reflexive_and_transitive() {
    let mut rng = sample::rng(24);
    for _ in 0..200 {
        let n = sample::dim(6, &mut rng);
        let a = sample::psd_any_rank(n, &mut rng);
        assert!(loewner_leq(&a, &a, &pol()).unwrap());
        let b = &a + &sample::psd_any_rank(n, &mut rng);
        let c = &b + &sample::psd_any_rank(n, &mut rng);
        assert!(loewner_leq(&a, &b, &pol()).unwrap());
        assert!(loewner_leq(&b, &c, &pol()).unwrap());
        assert!(loewner_leq(&a, &c, &pol()).unwrap());

        // arbitrary Hermitian triples: the implication must hold whenever its premises do
        let h = |rng: &mut _| {
            let m = sample::matrix(n, n, rng);
            Hermitian::new(&m + m.adjoint()).unwrap()
        };
        let (x, y, z) = (h(&mut rng), h(&mut rng), h(&mut rng));
        if loewner_leq(&x, &y, &pol()).unwrap() && loewner_leq(&y, &z, &pol()).unwrap() {
            assert!(loewner_leq(&x, &z, &pol()).unwrap());
        }
    }
}
