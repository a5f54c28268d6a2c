// SPDX-License-Identifier: Apache-2.0

use corrperf::channel::{chi_from_kraus, performance_from_chi};
use corrperf::evaluator::{self, direct_terms, kraus_from_propagator, linspace, performance_sector_at, DenseEvaluator};
use corrperf::linalg::max_abs;
use corrperf::{BathSpec, CodeParams, CorrectableMode, NoiseModel, Topology, C64};
use nalgebra::DMatrix;
use proptest::prelude::*;

fn model(code: CodeParams, topology: Topology, spins: usize, beta_omega: f64, gprime: f64) -> NoiseModel {
    let bath = BathSpec {
        topology,
        spins,
        omega: 1.0,
        beta_omega,
        g: 1.0,
        coupling_table: None,
    };
    NoiseModel::new(code, bath, gprime, None).unwrap()
}

fn bath_weights(ev: &DenseEvaluator) -> Vec<f64> {
    let rho = ev.bath_density();
    (0..rho.nrows()).map(|i| rho[(i, i)].re).collect()
}

fn random_state(dim: usize, seed: u64) -> DMatrix<C64> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let a = DMatrix::from_fn(dim, dim, |_, _| {
        C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    let rho = &a * a.adjoint();
    let tr = rho.trace();
    rho / tr
}

#[test]
fn bath_frequency_cancels() {
    let code = CodeParams::synthetic(2, 1).unwrap();
    for topology in [Topology::SharedNonlocal, Topology::PerQubitLocal] {
        let base = model(code, topology, 2, 0.4, 0.1);
        let mut fast = base.clone();
        fast.bath.omega = 7.3;
        let a = DenseEvaluator::new(&base).unwrap();
        let b = DenseEvaluator::new(&fast).unwrap();
        for tau in [0.2, 0.9, 2.5] {
            for mode in [CorrectableMode::TotalWeight, CorrectableMode::CssSplit] {
                let pa = a.performance(tau, mode).unwrap();
                let pb = b.performance(tau, mode).unwrap();
                assert!((pa - pb).abs() < 1e-12, "{topology:?} τ={tau}: {pa} vs {pb}");
            }
        }
    }
}

#[test]
fn x_and_y_summands_vanish_for_dephasing() {
    let code = CodeParams::synthetic(3, 2).unwrap();
    for topology in [Topology::SharedNonlocal, Topology::LocalSplit] {
        let m = model(code, topology, 3, 0.2, 0.1);
        let ev = DenseEvaluator::new(&m).unwrap();
        for tau in [0.3, 1.7] {
            let terms = direct_terms(
                &ev.propagator_at(tau),
                ev.bath_density(),
                &code,
                CorrectableMode::TotalWeight,
            )
            .unwrap();
            for (p, term) in terms {
                if p.x_mask() != 0 {
                    assert!(term.norm() < 1e-14, "{p}: {term}");
                }
            }
        }
    }
}

#[test]
fn bath_spin_relabelling_is_invisible() {
    let code = CodeParams::synthetic(2, 1).unwrap();
    let table = vec![vec![1.0, 0.4, -0.7], vec![0.2, 1.3, 0.5]];
    let permuted: Vec<Vec<f64>> = table.iter().map(|row| vec![row[2], row[0], row[1]]).collect();
    let mut a = model(code, Topology::SharedNonlocal, 3, 0.3, 0.05);
    let mut b = a.clone();
    a.bath.coupling_table = Some(table);
    b.bath.coupling_table = Some(permuted);
    let grid = linspace(0.0, 2.0, 9);
    let ca = evaluator::performance_dense(&a, CorrectableMode::TotalWeight, &grid).unwrap();
    let cb = evaluator::performance_dense(&b, CorrectableMode::TotalWeight, &grid).unwrap();
    for (x, y) in ca.values.iter().zip(&cb.values) {
        assert!((x - y).abs() < 1e-12);
    }
}

#[test]
fn local_split_equals_per_qubit_local() {
    let code = CodeParams::steane();
    let grid = linspace(0.0, std::f64::consts::PI, 33);
    for gprime in [0.0, 0.1] {
        let split = model(code, Topology::LocalSplit, 196, 0.01, gprime);
        let per_qubit = model(code, Topology::PerQubitLocal, 28, 0.01, gprime);
        let a = evaluator::performance_sector(&split, CorrectableMode::TotalWeight, &grid).unwrap();
        let b = evaluator::performance_sector(&per_qubit, CorrectableMode::TotalWeight, &grid).unwrap();
        assert_eq!(a.values, b.values);
    }
}

#[test]
fn catalog_curves_are_bounded_and_start_at_one() {
    let grid = evaluator::default_grid();
    for topology in [Topology::PerQubitLocal, Topology::SharedNonlocal, Topology::LocalSplit] {
        for spins in [7, 196] {
            for gprime in [0.0, 0.1] {
                for mode in [CorrectableMode::TotalWeight, CorrectableMode::CssSplit] {
                    let m = model(CodeParams::steane(), topology, spins, 0.01, gprime);
                    let c = evaluator::performance_sector(&m, mode, &grid).unwrap();
                    assert!((c.values[0] - 1.0).abs() < 1e-12);
                    assert!(c.values.iter().all(|&v| (-1e-12..=1.0 + 1e-12).contains(&v)), "{}", m);
                }
            }
        }
    }
}

#[test]
fn infinite_temperature_parity() {
    // β = 0 with even N: the sector weights are symmetric under k ↔ N − k
    let code = CodeParams::steane();
    for topology in [Topology::PerQubitLocal, Topology::SharedNonlocal] {
        let m = model(code, topology, 8, 0.0, 0.0);
        let mut flipped = m.clone();
        flipped.bath.g = -1.0;
        for tau in [0.1, 0.77, 2.3] {
            let p = performance_sector_at(&m, CorrectableMode::TotalWeight, tau).unwrap();
            let back = performance_sector_at(&m, CorrectableMode::TotalWeight, -tau).unwrap();
            let neg = performance_sector_at(&flipped, CorrectableMode::TotalWeight, tau).unwrap();
            assert!((p - back).abs() < 1e-14 && (p - neg).abs() < 1e-14);
        }
    }
}

#[test]
fn induced_channels_preserve_trace_and_hermiticity() {
    let code = CodeParams::synthetic(2, 1).unwrap();
    for topology in [Topology::PerQubitLocal, Topology::SharedNonlocal] {
        let m = model(code, topology, 2, 0.6, 0.1);
        let ev = DenseEvaluator::new(&m).unwrap();
        let lambda = bath_weights(&ev);
        let rho = random_state(4, 11);
        for tau in [0.0, 0.5, 1.9] {
            let k = kraus_from_propagator(&ev.propagator_at(tau), &lambda, 2).unwrap();
            assert!(k.completeness_error() < 1e-10);
            let out = k.apply(&rho);
            assert!((out.trace() - C64::new(1.0, 0.0)).norm() < 1e-12);
            let chi = chi_from_kraus(&k);
            assert!(chi.hermiticity_error() < 1e-14);
            assert!((chi.trace() - C64::new(1.0, 0.0)).norm() < 1e-12);
            assert!(max_abs(&(chi.apply(&rho).unwrap() - out)) < 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn routes_agree_on_random_small_models(
        n in 1usize..=3,
        t in 0usize..=1,
        per_bath in 1usize..=2,
        topo in 0usize..3,
        beta_omega in 0.0f64..2.0,
        gprime in -0.3f64..0.3,
        tau in 0.0f64..3.2,
    ) {
        let topology = [Topology::PerQubitLocal, Topology::SharedNonlocal, Topology::LocalSplit][topo];
        let spins = match topology {
            Topology::LocalSplit => per_bath * n,
            _ => per_bath,
        };
        let m = model(CodeParams::synthetic(n, t).unwrap(), topology, spins, beta_omega, gprime);
        prop_assume!(m.total_spins() <= 8);
        let ev = DenseEvaluator::new(&m).unwrap();
        let u = ev.propagator_at(tau);
        for mode in [CorrectableMode::TotalWeight, CorrectableMode::CssSplit] {
            let dense = ev.performance(tau, mode).unwrap();
            let sector = performance_sector_at(&m, mode, tau).unwrap();
            let chi = chi_from_kraus(&kraus_from_propagator(&u, &bath_weights(&ev), n).unwrap());
            let via_chi = performance_from_chi(&chi, &m.code, mode).unwrap();
            prop_assert!((dense - sector).abs() < 1e-10);
            prop_assert!((dense - via_chi).abs() < 1e-10);
            prop_assert!((-1e-12..=1.0 + 1e-12).contains(&dense));
        }
    }
}
