use num_complex::Complex64;
use proptest::prelude::*;

use qfluct::figures::{figure_table, Figure, SweepSpec, Table};
use qfluct::linalg::{hermitian_eigen, psd_sqrt, ComplexMatrix, HERMITIAN_TOL};
use qfluct::measures::{entanglement, fluctuation, Concurrence, EntanglementStats};
use qfluct::mixed::{concurrence_hw, validate_density_matrix};
use qfluct::pure::{concurrence_pure, density_matrix, reduce, PureState, Subsystem};
use qfluct::thermal::{entanglement_temperature, thermal_concurrence, DimerParams};

fn hermitian4() -> impl Strategy<Value = ComplexMatrix> {
    prop::array::uniform32(-1.0f64..1.0).prop_map(|x| {
        let mut m = ComplexMatrix::zeros(4);
        for i in 0..4 {
            for j in 0..4 {
                m[(i, j)] = Complex64::new(x[4 * i + j], x[16 + 4 * i + j]);
            }
        }
        m.hermitian_part()
    })
}

fn state() -> impl Strategy<Value = PureState> {
    prop::array::uniform8(-1.0f64..1.0)
        .prop_filter("nonzero", |p| p.iter().map(|x| x * x).sum::<f64>() > 1e-3)
        .prop_map(|p| PureState::from_reals(p, true).unwrap())
}

/// `[[e^{ia} cos t, e^{ib} sin t], [−e^{−ib} sin t, e^{−ia} cos t]]`.
fn su2(a: f64, b: f64, t: f64) -> [[Complex64; 2]; 2] {
    let (ea, eb) = (Complex64::from_polar(1.0, a), Complex64::from_polar(1.0, b));
    [
        [ea * t.cos(), eb * t.sin()],
        [-eb.conj() * t.sin(), ea.conj() * t.cos()],
    ]
}

fn apply_local(psi: &PureState, u: [[Complex64; 2]; 2], v: [[Complex64; 2]; 2]) -> PureState {
    let amps = psi.amplitudes();
    let out = std::array::from_fn(|k| {
        let (i, j) = (k / 2, k % 2);
        let mut z = Complex64::new(0.0, 0.0);
        for p in 0..2 {
            for q in 0..2 {
                z += u[i][p] * v[j][q] * amps[2 * p + q];
            }
        }
        z
    });
    PureState::new(out, true).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn eigen_reconstructs_and_preserves_trace(m in hermitian4()) {
        let es = hermitian_eigen(&m, HERMITIAN_TOL).unwrap();
        prop_assert!(es.reconstruct().max_abs_diff(&m).unwrap() < 1e-10);
        let sum: f64 = es.values.iter().sum();
        prop_assert!((sum - m.trace().re).abs() < 1e-12);
        prop_assert!(es.values.windows(2).all(|w| w[0] >= w[1]));
        let vtv = es.vectors.adjoint().matmul(&es.vectors).unwrap();
        prop_assert!(vtv.max_abs_diff(&ComplexMatrix::identity(4)).unwrap() < 1e-10);
    }

    #[test]
    fn eigenvalues_scale_with_the_matrix(m in hermitian4(), s in 0.1f64..10.0) {
        let a = hermitian_eigen(&m, HERMITIAN_TOL).unwrap().values;
        let b = hermitian_eigen(&m.scale(s), HERMITIAN_TOL).unwrap().values;
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((s * x - y).abs() < 1e-11 * s.max(1.0));
        }
    }

    #[test]
    fn psd_sqrt_squares_back(m in hermitian4()) {
        let psd = m.matmul(&m).unwrap();
        let r = psd_sqrt(&psd).unwrap();
        prop_assert!(r.matmul(&r).unwrap().max_abs_diff(&psd).unwrap() < 1e-10);
        prop_assert!(r.hermitian_deviation() < 1e-12);
    }

    #[test]
    fn concurrence_is_local_unitary_invariant(
        psi in state(),
        angles in prop::array::uniform6(-3.2f64..3.2),
    ) {
        let u = su2(angles[0], angles[1], angles[2]);
        let v = su2(angles[3], angles[4], angles[5]);
        let moved = apply_local(&psi, u, v);
        let c0 = concurrence_pure(&psi).value();
        prop_assert!((concurrence_pure(&moved).value() - c0).abs() < 1e-12);
        let rho = validate_density_matrix(density_matrix(&moved)).unwrap();
        prop_assert!((concurrence_hw(&rho).unwrap().concurrence.value() - c0).abs() < 1e-9);
    }

    #[test]
    fn entanglement_matches_reduced_entropy(psi in state()) {
        let es = hermitian_eigen(&reduce(&psi, Subsystem::B), HERMITIAN_TOL).unwrap();
        let entropy: f64 = es.values.iter().filter(|&&p| p > 0.0).map(|&p| -p * p.log2()).sum();
        let e = entanglement(concurrence_pure(&psi));
        prop_assert!((e - entropy).abs() < 1e-9);
    }

    #[test]
    fn measures_stay_in_range(v in 0.0f64..=1.0) {
        let c = Concurrence::new(v).unwrap();
        let s = EntanglementStats::from_concurrence(c);
        prop_assert!((0.0..=1.0).contains(&s.e));
        prop_assert!(s.delta_e >= 0.0 && s.delta_e < 1.0);
        prop_assert!(s.e <= v + 1e-15 || v == 0.0);
        prop_assert_eq!(fluctuation(c), s.delta_e);
    }

    #[test]
    fn thermal_concurrence_decreases_with_temperature(j in -5.0f64..-0.1, a in 0.01f64..3.0, b in 0.01f64..3.0) {
        let tau_e = entanglement_temperature(j).unwrap();
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let c_lo = thermal_concurrence(&DimerParams::new(j, lo * tau_e).unwrap()).value();
        let c_hi = thermal_concurrence(&DimerParams::new(j, hi * tau_e).unwrap()).value();
        prop_assert!(c_hi <= c_lo + 1e-15);
    }
}

#[test]
fn figure_csv_round_trips() {
    for n in 1..=4 {
        let fig = Figure::from_number(n).unwrap();
        let spec = SweepSpec::new(fig.default_spec().start, fig.default_spec().stop, 57).unwrap();
        let table = figure_table(fig, &spec).unwrap();
        let text = table.to_csv_string();
        let back = Table::read_csv(text.as_bytes()).unwrap();
        assert_eq!(back.columns, table.columns);
        for (r0, r1) in table.rows.iter().zip(&back.rows) {
            for (x, y) in r0.iter().zip(r1) {
                match (x, y) {
                    (Some(x), Some(y)) => assert!((x - y).abs() <= 1e-11 * x.abs().max(1e-300)),
                    (None, None) => {}
                    _ => panic!("empty cell mismatch"),
                }
            }
        }
        assert_eq!(back.to_csv_string(), text);
    }
}
