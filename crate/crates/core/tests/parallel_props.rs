mod common;

use antidual::psd::loewner_leq;
use antidual::parallel::{parallel_sum, weighted_parallel_sum};
use antidual::sample;
use common::*;

#[test]
fn matches_classical_parallel_sum() {
    let mut rng = sample::rng(31);
    let mut worst = 0.0_f64;
    for _ in 0..200 {
        let (a, b) = random_pair(6, &mut rng);
        let sum = parallel_sum(&psd(&a), &psd(&b), &pol()).unwrap();
        worst = worst.max(sum.base().distance(&classical_parallel_sum(&a, &b)));
    }
    assert!(worst <= pol().eq_tol, "worst deviation {worst:e}");
}

#[test]
fn weighted_sums() {
    let mut rng = sample::rng(32);
    for _ in 0..100 {
        let (a, b) = random_pair(6, &mut rng);
        let (pa, pb) = (psd(&a), psd(&b));
        let one = weighted_parallel_sum(&pa, &pb, 1.0, &pol()).unwrap();
        assert!(one.base().distance(parallel_sum(&pa, &pb, &pol()).unwrap().base()) <= pol().eq_tol);
        let n = sample::uniform(0.1, 50.0, &mut rng);
        let w = weighted_parallel_sum(&pa, &pb, n, &pol()).unwrap();
        assert!(w.base().distance(&classical_parallel_sum(&a, &b.scaled(n))) <= pol().eq_tol);
    }
}

#[test]
fn iterates_are_monotone() {
    let mut rng = sample::rng(33);
    for _ in 0..100 {
        let (a, b) = random_pair(6, &mut rng);
        let (pa, pb) = (psd(&a), psd(&b));
        let mut n = sample::uniform(0.01, 1.0, &mut rng);
        let mut prev = weighted_parallel_sum(&pa, &pb, n, &pol()).unwrap();
        for _ in 0..12 {
            n *= sample::uniform(1.5, 20.0, &mut rng);
            let next = weighted_parallel_sum(&pa, &pb, n, &pol()).unwrap();
            assert!(loewner_leq(prev.base(), next.base(), &pol()).unwrap(), "not monotone at n = {n}");
            assert!(loewner_leq(next.base(), &a, &pol()).unwrap());
            prev = next;
        }
    }
}
