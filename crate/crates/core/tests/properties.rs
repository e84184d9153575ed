//! Property-based invariants over randomized inputs.

mod common;

use proptest::prelude::*;

use common::star_by_power_sum;
use tropica::function_space::{enumerate_topologies, is_usc, FiniteTopology, MeetSubspace};
use tropica::io;
use tropica::semifield::Semifield;
use tropica::semimodule::{dual_apply, residuate};
use tropica::spectral::{kleene_star, max_cycle_mean};
use tropica::{Matrix, RMax, Vector};

fn scalar() -> impl Strategy<Value = RMax> {
    prop_oneof![
        1 => Just(RMax::bottom()),
        6 => (-9.0..9.0f64).prop_map(RMax::finite),
    ]
}

fn finite_scalar() -> impl Strategy<Value = RMax> {
    (-9.0..9.0f64).prop_map(RMax::finite)
}

fn vector(n: usize) -> impl Strategy<Value = Vector<RMax>> {
    prop::collection::vec(scalar(), n).prop_map(Vector::from_entries)
}

fn matrix(n: usize) -> impl Strategy<Value = Matrix<RMax>> {
    prop::collection::vec(scalar(), n * n)
        .prop_map(move |data| Matrix::from_fn(n, n, |i, j| data[i * n + j]))
}

proptest! {
    #[test]
    fn matmul_associative(a in matrix(3), b in matrix(3), c in matrix(3)) {
        let lhs = a.matmul(&b).unwrap().matmul(&c).unwrap();
        let rhs = a.matmul(&b.matmul(&c).unwrap()).unwrap();
        prop_assert!(lhs.approx_eq(&rhs));
    }

    #[test]
    fn matmul_composes_application(a in matrix(3), b in matrix(3), x in vector(3)) {
        let composed = a.matmul(&b).unwrap().apply(&x).unwrap();
        let chained = a.apply(&b.apply(&x).unwrap()).unwrap();
        prop_assert!(composed.approx_eq(&chained));
    }

    #[test]
    fn apply_distributes_over_join(a in matrix(4), x in vector(4), y in vector(4)) {
        let lhs = a.apply(&x.oplus(&y).unwrap()).unwrap();
        let rhs = a.apply(&x).unwrap().oplus(&a.apply(&y).unwrap()).unwrap();
        prop_assert!(lhs.approx_eq(&rhs));
    }

    #[test]
    fn vector_lattice_absorption(x in vector(4), y in vector(4)) {
        prop_assert_eq!(x.oplus(&x.wedge(&y).unwrap()).unwrap(), x.clone());
        prop_assert_eq!(x.wedge(&x.oplus(&y).unwrap()).unwrap(), x);
    }

    #[test]
    fn residuation_galois_on_random_probes(
        a in matrix(3),
        b in vector(3),
        probe in vector(3),
    ) {
        // skip instances with an unconstrained coordinate
        if let Ok(best) = residuate(&a, &b) {
            prop_assert!(a.apply(&best).unwrap().leq_approx(&b).unwrap());
            let feasible = a.apply(&probe).unwrap().leq(&b).unwrap();
            if feasible {
                prop_assert!(probe.leq_approx(&best).unwrap());
            }
            if probe.leq(&best).unwrap() {
                prop_assert!(a.apply(&probe).unwrap().leq_approx(&b).unwrap());
            }
        }
    }

    #[test]
    fn star_fixed_point_when_defined(m in matrix(4)) {
        let rho = max_cycle_mean(&m).unwrap();
        // normalize so the closure exists, then check A ⊙ A* ⊕ I = A*
        let a = match rho.value() {
            Some(_) => m.scale(rho.inv().unwrap()),
            None => m,
        };
        let star = kleene_star(&a).unwrap();
        let refed = a.matmul(&star).unwrap().oplus(&Matrix::identity(4)).unwrap();
        prop_assert!(star.approx_eq(&refed));
        prop_assert!(star.approx_eq(&star_by_power_sum(&a)));
    }

    #[test]
    fn dual_is_b_linear(x in prop::collection::vec(finite_scalar(), 4), y in vector(4), z in vector(4), k in finite_scalar()) {
        let x = Vector::from_entries(x);
        let joint = dual_apply(&x, &y.oplus(&z).unwrap()).unwrap();
        let split = dual_apply(&x, &y).unwrap().oplus(dual_apply(&x, &z).unwrap());
        prop_assert!(joint.approx_eq(split));

        let scaled = dual_apply(&x, &y.scale(k)).unwrap();
        prop_assert!(scaled.approx_eq(k.otimes(dual_apply(&x, &y).unwrap())));
    }

    #[test]
    fn projection_laws(
        gens in prop::collection::vec(prop::collection::vec(finite_scalar(), 3), 1..4),
        f in vector(3),
        h_extra in vector(3),
        k in finite_scalar(),
    ) {
        let t = FiniteTopology::discrete(3).unwrap();
        let gens: Vec<Vector<RMax>> = gens.into_iter().map(Vector::from_entries).collect();
        let w = MeetSubspace::new(t, gens).unwrap();

        let p = w.project(&f).unwrap();
        prop_assert!(f.leq_approx(&p).unwrap());
        prop_assert!(w.project(&p).unwrap().approx_eq(&p));

        let h = f.oplus(&h_extra).unwrap();
        prop_assert!(w.project(&f).unwrap().leq_approx(&w.project(&h).unwrap()).unwrap());

        let scaled = w.project(&f.scale(k)).unwrap();
        prop_assert!(scaled.approx_eq(&p.scale(k)));
    }

    #[test]
    fn scalar_roundtrip_through_json(v in scalar()) {
        let json = serde_json::to_string(&v).unwrap();
        let back: RMax = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn matrix_roundtrip_through_json(m in matrix(3)) {
        let json = io::matrix_to_json(&m);
        let back: Matrix<RMax> = io::parse_matrix(&json).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn vector_roundtrip_through_json(v in vector(4)) {
        let json = io::vector_to_json(&v);
        let back: Vector<RMax> = io::parse_vector(&json).unwrap();
        prop_assert_eq!(back, v);
    }
}

#[test]
fn usc_families_are_lattices() {
    // pointwise joins and meets of semicontinuous functions stay
    // semicontinuous, on every topology over up to 4 points
    let mut rng_values = [1.5f64, -0.5, 0.0, 3.0, -2.0, 1.0, 2.5, -1.5, 0.5];
    for m in 1..=4usize {
        for t in enumerate_topologies(m).unwrap() {
            rng_values.rotate_left(1);
            let candidates: Vec<Vector<RMax>> = (0..rng_values.len() - m)
                .map(|s| {
                    Vector::from_entries(
                        rng_values[s..s + m].iter().map(|&v| RMax::finite(v)).collect(),
                    )
                })
                .collect();
            let usc: Vec<&Vector<RMax>> = candidates
                .iter()
                .filter(|f| is_usc(&t, f).unwrap())
                .collect();
            for f in &usc {
                for g in &usc {
                    assert!(is_usc(&t, &f.oplus(g).unwrap()).unwrap());
                    assert!(is_usc(&t, &f.wedge(g).unwrap()).unwrap());
                }
            }
        }
    }
}

#[test]
fn dual_chain_continuity() {
    // monotone sequences approaching a limit carry the functional to its
    // value at the limit
    let x = Vector::from_entries(vec![RMax::finite(0.0), RMax::finite(-1.0), RMax::finite(2.0)]);
    let y = Vector::from_entries(vec![RMax::finite(1.0), RMax::finite(2.0), RMax::finite(3.0)]);
    let limit = dual_apply(&x, &y).unwrap();
    let rates = [1.0f64, 0.7, 1.3];

    let mut prev: Option<RMax> = None;
    for k in 0..50 {
        let shift = (-0.5f64).powi(0) * (0.5f64).powi(k); // 2^-k
        let yk = Vector::from_entries(
            (0..3)
                .map(|i| y.get(i).otimes(RMax::finite(-rates[i] * shift)))
                .collect(),
        );
        let val = dual_apply(&x, &yk).unwrap();
        if let Some(p) = prev {
            assert!(p.leq_approx(val), "nondecreasing chain must not drop");
        }
        prev = Some(val);
        if k == 49 {
            assert!(val.approx_eq_within(limit, 1e-9, 1e-9));
        }
    }
}
