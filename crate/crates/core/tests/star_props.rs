mod common;

use antidual::completion::{complement, IncompleteBlockSystem};
use antidual::lebesgue::{absolutely_continuous, mutually_singular};
use antidual::matrix::{frobenius, CVec};
use antidual::sample;
use antidual::star::*;
use common::*;

#[test]
fn bridge_accuracy() {
    let mut rng = sample::rng(5);
    for (name, alg) in test_algebras() {
        let (mut ps, mut cs, mut ls, mut us) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
        for _ in 0..100 {
            let f = random_state(&alg, &mut rng);
            let g = random_state(&alg, &mut rng);
            let mf = induced_operator(&alg, &f).unwrap();
            let mg = induced_operator(&alg, &g).unwrap();

            let p = parallel_sum_functional(&alg, &f, &g, &pol()).unwrap();
            let oracle = classical_parallel_sum(&mf, &mg);
            ps = ps.max(induced_operator(&alg, &p).unwrap().distance(&oracle));

            // complement of f + g relative to g is always defined
            let base = &f + &g;
            let h = complement_functional(&alg, &base, &g, &pol()).unwrap();
            let mb = induced_operator(&alg, &base).unwrap();
            let system = IncompleteBlockSystem::new(psd(&mb), mg.matrix().clone()).unwrap();
            let ab = complement(&system, &pol()).unwrap();
            cs = cs.max(induced_operator(&alg, &h).unwrap().distance(ab.base()));
            if let Some(u) = alg.unit() {
                let abu = ab.matrix() * u;
                let dev = (0..alg.dim()).map(|j| (h.values()[j] - abu[j].conj()).norm()).fold(0.0, f64::max);
                us = us.max(dev);
            }

            let split = lebesgue_decompose_functional(&alg, &f, &g, &pol()).unwrap();
            let shorted = shorted_onto_range(&mf, &mg);
            let mr = induced_operator(&alg, &split.regular).unwrap();
            ls = ls.max(mr.distance(&shorted));
            let ms = induced_operator(&alg, &split.singular).unwrap();
            assert!(absolutely_continuous(&psd(&mr), &psd(&mg), &pol()).unwrap(), "{name}");
            assert!(mutually_singular(&psd(&ms), &psd(&mg), &pol()).unwrap(), "{name}");
        }
        eprintln!("{name}: parsum {ps:e} complement {cs:e} lebesgue {ls:e} unital {us:e}");
    }
}

fn square(alg: &FiniteStarAlgebra, f: &Functional, alpha: &CVec) -> f64 {
    f.eval(&alg.product(&alg.adjoint(alpha), alpha)).re
}

#[test]
fn cyclic_norm_is_the_least_constant() {
    let mut rng = sample::rng(6);
    for (name, alg) in test_algebras() {
        for _ in 0..20 {
            let f = random_state(&alg, &mut rng);
            let t = gns(&alg, &f, &pol()).unwrap();
            let c = t.cyclic_norm_sq;
            let scale = f.norm().max(1.0);
            for _ in 0..100 {
                let alpha = sample::vector(alg.dim(), &mut rng);
                let lhs = f.eval(&alpha).norm_sqr();
                assert!(lhs <= c * square(&alg, &f, &alpha) + 1e-9 * scale * scale * alpha.norm_squared().powi(2), "{name}");
            }
            if c > 1e-9 {
                // the element whose class is the cyclic vector attains the bound
                let alpha = svd_pinv(&t.embed, 1e-10) * &t.cyclic;
                let ratio = f.eval(&alpha).norm_sqr() / square(&alg, &f, &alpha);
                assert!((ratio - c).abs() <= 1e-3 * c, "{name}: {ratio} vs {c}");
            }
        }
    }
}

#[test]
fn complement_is_the_least_completing_corner() {
    let mut rng = sample::rng(7);
    for (name, alg) in test_algebras() {
        let k = alg.dim();
        let mut violations = 0;
        let mut probes = 0;
        for _ in 0..40 {
            let f0 = random_state(&alg, &mut rng);
            let g = random_state(&alg, &mut rng);
            let f = &f0 + &g;
            let h = complement_functional(&alg, &f, &g, &pol()).unwrap();
            let scale = f.norm().max(1.0);
            let block = |h: &Functional, a: &CVec, b: &CVec| {
                let cross = g.eval(&alg.product(&alg.adjoint(b), a));
                square(&alg, &f, a) + 2.0 * cross.re + square(&alg, h, b)
            };
            for _ in 0..50 {
                let (a, b) = (sample::vector(k, &mut rng), sample::vector(k, &mut rng));
                let size = a.norm_squared() + b.norm_squared();
                assert!(block(&h, &a, &b) >= -1e-8 * scale * size, "{name}");
            }
            // lowering the corner by a positive functional breaks positivity at the optimal a
            let p = random_state(&alg, &mut rng);
            if p.norm() < 1e-6 {
                continue;
            }
            let lowered = &h - &p.scaled(1e-3);
            let mf = induced_matrix(&alg, &f).unwrap();
            let mg = induced_matrix(&alg, &g).unwrap();
            let mf_pinv = svd_pinv(&mf, 1e-10 * frobenius(&mf).max(1.0));
            for _ in 0..10 {
                let b = sample::vector(k, &mut rng);
                let a = -(&mf_pinv * mg.adjoint() * &b);
                if square(&alg, &p, &b) < 1e-6 * p.norm() * b.norm_squared() {
                    continue;
                }
                probes += 1;
                // the minimum over a is exactly -1e-3 p(b* b)
                if block(&lowered, &a, &b) <= -0.5e-3 * square(&alg, &p, &b) {
                    violations += 1;
                }
            }
        }
        assert!(probes > 0 && violations == probes, "{name}: {violations} violations in {probes} probes");
    }
}
