//! Library results against independent closed forms.

use qdeform_core::algebra_audit::{check_number_products, AuditSetup};
use qdeform_core::fockspace::{deformed_ladder_ops, f_squared, f_value, NEAR_ZERO};
use qdeform_core::gates::check_cnot_condition;
use qdeform_core::jsqubit::{jm_state, norm_ratio_experiment, HalfInt, QubitLabel};
use qdeform_core::qnumber::{q_factorial, q_number};
use qdeform_core::{DeformationParam, FunctionChoice, TruncatedFockSpace};

const GRID: [f64; 3] = [0.1, 0.5, 0.9];

fn p(s: f64) -> DeformationParam {
    DeformationParam::new(s).unwrap()
}

fn bracket(x: f64, s: f64) -> f64 {
    (s * x).sinh() / s.sinh()
}

/// `F(n)^2` straight from the exponential form.
fn f_sq(n: f64, s: f64, psi1: f64, psi2: f64) -> f64 {
    let q = s.exp();
    (q.powf(n) * psi1 - q.powf(-n) * psi2) / (n * (q - 1.0 / q))
}

#[test]
fn factorial_matches_loop_product() {
    for s in GRID {
        let mut expected = 1.0;
        for n in 0..=12i64 {
            if n > 0 {
                expected *= bracket(n as f64, s);
            }
            let got = q_factorial(n, p(s)).unwrap();
            assert!(((got - expected) / expected).abs() <= 1e-13, "s={s} n={n}");
        }
    }
}

#[test]
fn q_number_known_values() {
    // [2] = q + 1/q, [3] = q^2 + 1 + q^-2
    for s in GRID {
        let q = s.exp();
        assert!((q_number(2.0, p(s)) - (q + 1.0 / q)).abs() < 1e-14);
        assert!((q_number(3.0, p(s)) - (q * q + 1.0 + 1.0 / (q * q))).abs() < 1e-13);
    }
}

#[test]
fn f_at_zero_is_the_small_n_limit() {
    // equal functions: psi * s / sinh(s)
    for s in GRID {
        let got = f_squared(0.0, p(s), 1.0, 1.0).unwrap();
        assert!((got - s / s.sinh()).abs() < 1e-15);
        let near = f_sq(NEAR_ZERO, s, 1.0, 1.0);
        assert!((got - near).abs() < 1e-7);
    }
    // frozen at s = 0.5
    let frozen = 0.959_517_375_667_471_9;
    assert!((f_squared(0.0, p(0.5), 1.0, 1.0).unwrap() - frozen).abs() < 1e-15);
    assert!((f_value(0.0, p(0.5), 1.0, 1.0).unwrap() - 0.979_549).abs() < 1e-6);
}

#[test]
fn f_squared_matches_exponential_form() {
    for s in GRID {
        for (psi1, psi2) in [(1.0, 1.0), (s.exp(), s.exp()), (2.0, 1.0)] {
            for n in 1..8 {
                let n = n as f64;
                let got = f_squared(n, p(s), psi1, psi2).unwrap();
                let want = f_sq(n, s, psi1, psi2);
                assert!(((got - want) / want).abs() < 1e-13, "s={s} n={n}");
            }
        }
    }
}

#[test]
fn number_operator_diagonal_is_psi_times_bracket() {
    // a_q^dag a_q = n F(n)^2 = psi [n] when psi1 = psi2 = psi
    for s in GRID {
        let psi = s.exp();
        let ops = deformed_ladder_ops(TruncatedFockSpace::new(10).unwrap(), p(s), psi, psi).unwrap();
        let product = &ops.a_q_dag * &ops.a_q;
        for n in 0..10 {
            let want = psi * bracket(n as f64, s);
            assert!((product.get(n, n).re - want).abs() <= 1e-12 * want.max(1.0));
        }
    }
}

#[test]
fn number_products_residual_matches_scalar_form() {
    // psi = q: N = n - 1, so the defects are |q[n] - [n-1]| and |q[n+1] - [n]|
    let d = 16;
    for s in GRID {
        let q = s.exp();
        let setup =
            AuditSetup::new(TruncatedFockSpace::new(d).unwrap(), p(s), FunctionChoice::uniform(q, 1.0).unwrap())
                .unwrap();
        let report = check_number_products(&setup, 1e-12).unwrap();
        let want = (0..d - 2)
            .flat_map(|n| {
                let n = n as f64;
                [(q * bracket(n, s) - bracket(n - 1.0, s)).abs(), (q * bracket(n + 1.0, s) - bracket(n, s)).abs()]
            })
            .fold(0.0, f64::max);
        assert!(((report.residual - want) / want).abs() < 1e-10, "s={s}");
        assert!(!report.pass);
    }
}

#[test]
fn jm_state_amplitudes() {
    let space = TruncatedFockSpace::new(4).unwrap();
    // |j=1, m=0> = |1,1>
    let state = jm_state(HalfInt::from_twice(2), HalfInt::from_twice(0), space).unwrap();
    assert!((state.amplitude(1, 1).re - 1.0).abs() < 1e-15);
    assert_eq!(state.support(), vec![state.index(1, 1)]);
    // |j=3/2, m=1/2> = (a1^dag)^2 a2^dag / sqrt(2! 1!) |0,0> = |2,1>
    let state = jm_state(HalfInt::from_twice(3), HalfInt::from_twice(1), space).unwrap();
    assert!((state.amplitude(2, 1).re - 1.0).abs() < 1e-15);
    assert!((state.norm() - 1.0).abs() < 1e-15);
}

#[test]
fn norm_ratio_matches_prefactor_oracle() {
    // control |1>: a_1q^dag once, F(1)^2 = psi; target |0>: a_2q^dag once, F(1)^2 = beta
    let space = TruncatedFockSpace::new(4).unwrap();
    let s = 0.5f64;
    let q = s.exp();
    for (psi, beta) in [(q, 1.0), (q, q), (q * q, q * q)] {
        for x in QubitLabel::BOTH {
            for y in QubitLabel::BOTH {
                let ratio = norm_ratio_experiment(x, y, p(s), psi, beta, space).unwrap();
                let oracle = f_sq(1.0, s, psi, psi) * f_sq(1.0, s, beta, beta);
                assert!((ratio.measured - oracle).abs() < 1e-12 * oracle, "psi={psi} beta={beta}");
            }
        }
    }
}

#[test]
fn cnot_identity_scalar_reduction() {
    // k = 0: G(1)^(1/2)^2 on both sides; k = 1: G(1) on both sides
    for s in GRID {
        let q = s.exp();
        for b1 in [1.0 / q, 1.0, q] {
            for b2 in [1.0 / q, 1.0, q] {
                let report = check_cnot_condition(p(s), b1, b2, 1e-12).unwrap();
                assert!(report.residual < 1e-12, "s={s} b=({b1},{b2}) {}", report.note);
                assert!(report.realizable);
            }
        }
    }
}
