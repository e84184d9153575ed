//! Seeded property suites for the scalar and semimodule laws, runnable
//! both from tests and from the command line. Each law draws its own
//! samples from a deterministic stream, so a report is a pure function of
//! (semifield, seed, sample count).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::semifield::{inf_set, sup_set, ClosedSemifield, Semifield};
use crate::semimodule::{dual_apply, Matrix, Vector};

/// Outcome of one law over its sample stream.
#[derive(Clone, Debug)]
pub struct LawOutcome {
    pub name: &'static str,
    pub samples: u32,
    pub failures: u32,
    pub first_counterexample: Option<String>,
}

/// Outcomes of a whole suite.
#[derive(Clone, Debug)]
pub struct LawReport {
    pub semifield: &'static str,
    pub seed: u64,
    pub outcomes: Vec<LawOutcome>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.failures == 0)
    }
}

/// Default exponent range for sampled nonzero scalars.
const SAMPLE_SPAN: f64 = 10.0;

/// Draws a scalar, bottom with the given probability, otherwise with a
/// uniform exponent in ±[`SAMPLE_SPAN`].
pub fn sample_scalar<K: Semifield>(rng: &mut impl Rng, bottom_prob: f64) -> K {
    if rng.gen_bool(bottom_prob) {
        K::zero()
    } else {
        K::from_exponent(rng.gen_range(-SAMPLE_SPAN..SAMPLE_SPAN))
    }
}

pub fn sample_vector<K: Semifield>(rng: &mut impl Rng, n: usize, bottom_prob: f64) -> Vector<K> {
    Vector::from_entries((0..n).map(|_| sample_scalar(rng, bottom_prob)).collect())
}

pub fn sample_matrix<K: Semifield>(
    rng: &mut impl Rng,
    rows: usize,
    cols: usize,
    bottom_prob: f64,
) -> Matrix<K> {
    Matrix::from_fn(rows, cols, |_, _| sample_scalar(rng, bottom_prob))
}

struct Suite<K> {
    seed: u64,
    samples: u32,
    outcomes: Vec<LawOutcome>,
    _marker: std::marker::PhantomData<K>,
}

impl<K: Semifield> Suite<K> {
    fn new(seed: u64, samples: u32) -> Self {
        Suite {
            seed,
            samples,
            outcomes: Vec::new(),
            _marker: std::marker::PhantomData,
        }
    }

    // every law gets its own RNG stream keyed by (seed, law index), so the
    // report does not depend on the order laws are added in
    fn check(&mut self, name: &'static str, mut law: impl FnMut(&mut ChaCha8Rng) -> Option<String>) {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ (self.outcomes.len() as u64) << 32);
        let mut failures = 0;
        let mut first = None;
        for _ in 0..self.samples {
            if let Some(cex) = law(&mut rng) {
                failures += 1;
                if first.is_none() {
                    first = Some(cex);
                }
            }
        }
        self.outcomes.push(LawOutcome {
            name,
            samples: self.samples,
            failures,
            first_counterexample: first,
        });
    }

    fn finish(self) -> LawReport {
        LawReport {
            semifield: K::NAME,
            seed: self.seed,
            outcomes: self.outcomes,
        }
    }
}

fn expect_eq<K: Semifield>(lhs: K, rhs: K, ctx: String) -> Option<String> {
    if lhs == rhs {
        None
    } else {
        Some(format!("{ctx}: {lhs} != {rhs}"))
    }
}

fn expect_approx<K: Semifield>(lhs: K, rhs: K, ctx: String) -> Option<String> {
    if lhs.approx_eq(rhs) {
        None
    } else {
        Some(format!("{ctx}: {lhs} !~ {rhs}"))
    }
}

/// The scalar laws: idempotency, commutativity, associativity, identity
/// and absorption, both distributivities and their finite-set forms, the
/// order/absorption equivalence, inverses, and roots.
pub fn run_scalar_laws<K: ClosedSemifield>(seed: u64, samples: u32) -> LawReport {
    let mut suite = Suite::<K>::new(seed, samples);
    let s = |rng: &mut ChaCha8Rng| sample_scalar::<K>(rng, 0.1);

    suite.check("oplus idempotent", move |rng| {
        let a = s(rng);
        expect_eq(a.oplus(a), a, format!("a={a}"))
    });
    suite.check("oplus commutative", move |rng| {
        let (a, b) = (s(rng), s(rng));
        expect_eq(a.oplus(b), b.oplus(a), format!("a={a} b={b}"))
    });
    suite.check("oplus associative", move |rng| {
        let (a, b, c) = (s(rng), s(rng), s(rng));
        expect_eq(
            a.oplus(b).oplus(c),
            a.oplus(b.oplus(c)),
            format!("a={a} b={b} c={c}"),
        )
    });
    suite.check("zero neutral for oplus", move |rng| {
        let a = s(rng);
        expect_eq(a.oplus(K::zero()), a, format!("a={a}"))
    });
    suite.check("otimes commutative", move |rng| {
        let (a, b) = (s(rng), s(rng));
        expect_approx(a.otimes(b), b.otimes(a), format!("a={a} b={b}"))
    });
    suite.check("otimes associative", move |rng| {
        let (a, b, c) = (s(rng), s(rng), s(rng));
        expect_approx(
            a.otimes(b).otimes(c),
            a.otimes(b.otimes(c)),
            format!("a={a} b={b} c={c}"),
        )
    });
    suite.check("one neutral for otimes", move |rng| {
        let a = s(rng);
        expect_eq(a.otimes(K::one()), a, format!("a={a}"))
    });
    suite.check("zero absorbing for otimes", move |rng| {
        let a = s(rng);
        expect_eq(a.otimes(K::zero()), K::zero(), format!("a={a}"))
    });
    suite.check("otimes distributes over oplus", move |rng| {
        let (a, b, c) = (s(rng), s(rng), s(rng));
        expect_approx(
            a.otimes(b.oplus(c)),
            a.otimes(b).oplus(a.otimes(c)),
            format!("a={a} b={b} c={c}"),
        )
    });
    suite.check("otimes distributes over finite sups", move |rng| {
        let a = s(rng);
        let xs: Vec<K> = (0..rng.gen_range(1..=16)).map(|_| s(rng)).collect();
        expect_approx(
            a.otimes(sup_set(xs.iter().copied())),
            sup_set(xs.iter().map(|&x| a.otimes(x))),
            format!("a={a} |X|={}", xs.len()),
        )
    });
    suite.check("otimes distributes over finite infs", move |rng| {
        let a = s(rng);
        let xs: Vec<K> = (0..rng.gen_range(1..=16)).map(|_| s(rng)).collect();
        expect_approx(
            a.otimes(inf_set(xs.iter().copied()).expect("nonempty")),
            inf_set(xs.iter().map(|&x| a.otimes(x))).expect("nonempty"),
            format!("a={a} |X|={}", xs.len()),
        )
    });
    suite.check("order iff absorption", move |rng| {
        let (a, b) = (s(rng), s(rng));
        if a.leq(b) == (a.oplus(b) == b) {
            None
        } else {
            Some(format!("a={a} b={b}: leq and oplus disagree"))
        }
    });
    suite.check("inverse law", move |rng| {
        let a = s(rng);
        if a.is_zero() {
            return None;
        }
        expect_approx(
            a.otimes(a.inv().expect("nonzero")),
            K::one(),
            format!("a={a}"),
        )
    });
    suite.check("root law", move |rng| {
        let a = s(rng);
        let n = rng.gen_range(1..=6u32);
        expect_approx(a.nth_root(n).otimes_pow(n), a, format!("a={a} n={n}"))
    });
    suite.check("empty sup is zero", move |_| {
        expect_eq(sup_set(Vec::<K>::new()), K::zero(), "⊕∅".into())
    });
    suite.finish()
}

/// The semimodule laws on K^n and the contract of the dual functional.
pub fn run_semimodule_laws<K: ClosedSemifield>(seed: u64, samples: u32) -> LawReport {
    let mut suite = Suite::<K>::new(seed, samples);
    let dim = |rng: &mut ChaCha8Rng| rng.gen_range(1..=6usize);

    suite.check("scalar action associative", move |rng| {
        let n = dim(rng);
        let (a, b) = (sample_scalar::<K>(rng, 0.1), sample_scalar::<K>(rng, 0.1));
        let x = sample_vector::<K>(rng, n, 0.2);
        let lhs = x.scale(b).scale(a);
        let rhs = x.scale(a.otimes(b));
        if lhs.approx_eq(&rhs) {
            None
        } else {
            Some(format!("a={a} b={b}"))
        }
    });
    suite.check("action distributes over scalar join", move |rng| {
        let n = dim(rng);
        let (a, b) = (sample_scalar::<K>(rng, 0.1), sample_scalar::<K>(rng, 0.1));
        let x = sample_vector::<K>(rng, n, 0.2);
        let lhs = x.scale(a.oplus(b));
        let rhs = x.scale(a).oplus(&x.scale(b)).expect("same dims");
        if lhs.approx_eq(&rhs) {
            None
        } else {
            Some(format!("a={a} b={b}"))
        }
    });
    suite.check("action distributes over vector join", move |rng| {
        let n = dim(rng);
        let a = sample_scalar::<K>(rng, 0.1);
        let x = sample_vector::<K>(rng, n, 0.2);
        let y = sample_vector::<K>(rng, n, 0.2);
        let lhs = x.oplus(&y).expect("same dims").scale(a);
        let rhs = x.scale(a).oplus(&y.scale(a)).expect("same dims");
        if lhs.approx_eq(&rhs) {
            None
        } else {
            Some(format!("a={a}"))
        }
    });
    suite.check("zero scalar annihilates", move |rng| {
        let n = dim(rng);
        let x = sample_vector::<K>(rng, n, 0.2);
        if x.scale(K::zero()).is_zero() {
            None
        } else {
            Some(format!("x={x:?}"))
        }
    });
    suite.check("matrix map preserves finite sups", move |rng| {
        let n = dim(rng);
        let a = sample_matrix::<K>(rng, n, n, 0.3);
        let xs: Vec<Vector<K>> = (0..rng.gen_range(1..=4))
            .map(|_| sample_vector::<K>(rng, n, 0.2))
            .collect();
        let mut sup = Vector::zeros(n);
        let mut mapped_sup = Vector::zeros(n);
        for x in &xs {
            sup = sup.oplus(x).expect("same dims");
            mapped_sup = mapped_sup
                .oplus(&a.apply(x).expect("square"))
                .expect("same dims");
        }
        if a.apply(&sup).expect("square").approx_eq(&mapped_sup) {
            None
        } else {
            Some(format!("n={n} |X|={}", xs.len()))
        }
    });
    suite.check("matrix map homogeneous", move |rng| {
        let n = dim(rng);
        let a = sample_matrix::<K>(rng, n, n, 0.3);
        let k = sample_scalar::<K>(rng, 0.1);
        let x = sample_vector::<K>(rng, n, 0.2);
        let lhs = a.apply(&x.scale(k)).expect("square");
        let rhs = a.apply(&x).expect("square").scale(k);
        if lhs.approx_eq(&rhs) {
            None
        } else {
            Some(format!("k={k}"))
        }
    });
    suite.check("matrix map monotone", move |rng| {
        let n = dim(rng);
        let a = sample_matrix::<K>(rng, n, n, 0.3);
        let x = sample_vector::<K>(rng, n, 0.2);
        let y = x.oplus(&sample_vector::<K>(rng, n, 0.2)).expect("same dims");
        let fx = a.apply(&x).expect("square");
        let fy = a.apply(&y).expect("square");
        if fx.leq_approx(&fy).expect("same dims") {
            None
        } else {
            Some(format!("n={n}"))
        }
    });
    suite.check("dual functional b-linear over joins", move |rng| {
        let n = dim(rng);
        let x = sample_vector::<K>(rng, n, 0.0);
        let y = sample_vector::<K>(rng, n, 0.2);
        let z = sample_vector::<K>(rng, n, 0.2);
        let joint = dual_apply(&x, &y.oplus(&z).expect("same dims")).expect("archimedean");
        let split = dual_apply(&x, &y)
            .expect("archimedean")
            .oplus(dual_apply(&x, &z).expect("archimedean"));
        expect_approx(joint, split, format!("n={n}"))
    });
    suite.check("dual functional homogeneous", move |rng| {
        let n = dim(rng);
        let x = sample_vector::<K>(rng, n, 0.0);
        let y = sample_vector::<K>(rng, n, 0.2);
        let a = sample_scalar::<K>(rng, 0.0);
        let lhs = dual_apply(&x, &y.scale(a)).expect("archimedean");
        let rhs = a.otimes(dual_apply(&x, &y).expect("archimedean"));
        expect_approx(lhs, rhs, format!("a={a}"))
    });
    suite.check("dual functional covers", move |rng| {
        let n = dim(rng);
        let x = sample_vector::<K>(rng, n, 0.0);
        let y = sample_vector::<K>(rng, n, 0.2);
        let lam = dual_apply(&x, &y).expect("archimedean");
        if y.leq_approx(&x.scale(lam)).expect("same dims") {
            None
        } else {
            Some(format!("lam={lam}"))
        }
    });
    suite.finish()
}
