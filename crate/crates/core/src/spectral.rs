//! Constructive spectral theory for matrices over an algebraically closed
//! idempotent semifield: the max cycle mean as principal eigenvalue, Kleene
//! closures, critical nodes, eigenvector construction, a complete spectrum
//! oracle for small matrices, and orbit simulation.

use std::collections::BTreeSet;

use crate::error::Error;
use crate::semifield::{ClosedSemifield, Semifield};
use crate::semimodule::{Matrix, Vector};

/// Hard cap for the exponential spectrum oracle.
pub const DEFAULT_SPECTRUM_CAP: usize = 12;

/// A verified eigenpair. The eigenvector is normalized so its greatest
/// coordinate is the identity; `residual` is the largest carrier deviation
/// between `A ⊙ x` and `λ ⊙ x`.
#[derive(Clone, Debug)]
pub struct EigenSolution<K> {
    pub lambda: K,
    pub eigenvector: Vector<K>,
    pub critical_nodes: BTreeSet<usize>,
    pub residual: f64,
}

/// One verified eigenvalue with a witness eigenvector.
#[derive(Clone, Debug)]
pub struct SpectrumEntry<K> {
    pub lambda: K,
    pub witness: Vector<K>,
    pub support: BTreeSet<usize>,
    pub archimedean: bool,
}

/// Spectrum of a matrix as found by the subset oracle; every entry passes
/// [`eigen_check`].
#[derive(Clone, Debug)]
pub struct SpectrumReport<K> {
    pub eigenvalues: Vec<SpectrumEntry<K>>,
    pub method: &'static str,
}

/// Orbit of `x0` under repeated application of the matrix, with growth
/// estimates in exponent units.
#[derive(Clone, Debug)]
pub struct OrbitReport<K> {
    /// States `x_0, x_1 = A ⊙ x_0, ..., x_k`.
    pub states: Vec<Vector<K>>,
    /// Per-coordinate average increment over the trailing half window,
    /// `None` where an endpoint is bottom.
    pub increments: Vec<Option<f64>>,
    /// Mean of the available per-coordinate increments.
    pub estimate: Option<f64>,
}

// Tarjan's strongly connected components on the support digraph, with the
// output normalized (nodes ascending within a component, components ordered
// by least node) so downstream tie-breaking is deterministic.
fn strongly_connected_components(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    struct State<'a> {
        adj: &'a [Vec<usize>],
        index: usize,
        idx: Vec<Option<usize>>,
        low: Vec<usize>,
        stack: Vec<usize>,
        on_stack: Vec<bool>,
        comps: Vec<Vec<usize>>,
    }

    fn connect(v: usize, st: &mut State) {
        st.idx[v] = Some(st.index);
        st.low[v] = st.index;
        st.index += 1;
        st.stack.push(v);
        st.on_stack[v] = true;

        for i in 0..st.adj[v].len() {
            let w = st.adj[v][i];
            if st.idx[w].is_none() {
                connect(w, st);
                st.low[v] = st.low[v].min(st.low[w]);
            } else if st.on_stack[w] {
                st.low[v] = st.low[v].min(st.idx[w].unwrap());
            }
        }

        if st.low[v] == st.idx[v].unwrap() {
            let mut comp = Vec::new();
            loop {
                let w = st.stack.pop().expect("stack underflow");
                st.on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            comp.sort_unstable();
            st.comps.push(comp);
        }
    }

    let n = adj.len();
    let mut st = State {
        adj,
        index: 0,
        idx: vec![None; n],
        low: vec![0; n],
        stack: Vec::new(),
        on_stack: vec![false; n],
        comps: Vec::new(),
    };
    for v in 0..n {
        if st.idx[v].is_none() {
            connect(v, &mut st);
        }
    }
    st.comps.sort_by_key(|c| c[0]);
    st.comps
}

fn support_adjacency<K: Semifield>(a: &Matrix<K>) -> Vec<Vec<usize>> {
    let n = a.rows();
    (0..n)
        .map(|i| (0..n).filter(|&j| !a.get(i, j).is_zero()).collect())
        .collect()
}

// Karp's dynamic program on one strongly connected component, phrased in
// semifield arithmetic: with D_k(v) the best weight of a length-k walk from
// the root, the component's cycle mean is
//   sup_v  inf_k  (D_s(v) ⊙ D_k(v)^{-1})^{1/(s-k)},   s = |component|.
// Returns None when the component carries no edge (trivial component).
fn karp_component<K: ClosedSemifield>(a: &Matrix<K>, comp: &[usize]) -> Option<K> {
    let s = comp.len();
    let local = |g: usize| comp.binary_search(&g).expect("node in component");
    let mut edges: Vec<(usize, usize, K)> = Vec::new();
    for &u in comp {
        for &v in comp {
            let w = a.get(u, v);
            if !w.is_zero() {
                edges.push((local(u), local(v), w));
            }
        }
    }
    if edges.is_empty() {
        return None;
    }

    let mut d = vec![vec![K::zero(); s]; s + 1];
    d[0][0] = K::one(); // root = least node of the component
    for k in 1..=s {
        for &(u, v, w) in &edges {
            let cand = d[k - 1][u].otimes(w);
            d[k][v] = d[k][v].oplus(cand);
        }
    }

    let mut best = K::zero();
    for v in 0..s {
        let full = d[s][v];
        if full.is_zero() {
            continue;
        }
        let mut v_mean: Option<K> = None;
        for k in 0..s {
            let dk = d[k][v];
            if dk.is_zero() {
                continue;
            }
            let ratio = full.otimes(dk.inv().expect("nonzero"));
            let mean = ratio.nth_root((s - k) as u32);
            v_mean = Some(match v_mean {
                Some(m) => m.wedge(mean),
                None => mean,
            });
        }
        if let Some(m) = v_mean {
            best = best.oplus(m);
        }
    }
    debug_assert!(!best.is_zero(), "strongly connected component with edges has a cycle");
    Some(best)
}

/// Max cycle mean: the supremum over cycles of the cycle weight taken to
/// the 1/length power. Zero for an acyclic matrix. This is the eigenvalue
/// attained by an eigenvector with full support.
pub fn max_cycle_mean<K: ClosedSemifield>(a: &Matrix<K>) -> Result<K, Error> {
    a.require_square()?;
    let comps = strongly_connected_components(&support_adjacency(a));
    let mut rho = K::zero();
    for comp in &comps {
        if let Some(m) = karp_component(a, comp) {
            rho = rho.oplus(m);
        }
    }
    Ok(rho)
}

fn star_diverges<K: ClosedSemifield>(rho: K) -> bool {
    // strict divergence beyond tolerance; a cycle mean that is the identity
    // up to rounding must not trip the check
    !rho.leq(K::one()) && !rho.approx_eq(K::one())
}

/// Transitive closure `A⁺ = A ⊕ A² ⊕ ...` by in-place elimination; defined
/// when no cycle mean exceeds the identity.
pub fn kleene_plus<K: ClosedSemifield>(a: &Matrix<K>) -> Result<Matrix<K>, Error> {
    let n = a.require_square()?;
    let rho = max_cycle_mean(a)?;
    if star_diverges(rho) {
        return Err(Error::DivergentStar(rho.value().unwrap_or(f64::NAN)));
    }
    // Floyd-Warshall elimination: after pass k, d_ij is the best weight of a
    // nonempty walk i -> j through intermediate nodes ≤ k. Diagonal closures
    // are the identity because no cycle gains weight.
    let mut d = a.clone();
    for k in 0..n {
        for i in 0..n {
            let dik = d.get(i, k);
            if dik.is_zero() {
                continue;
            }
            for j in 0..n {
                let via = dik.otimes(d.get(k, j));
                d.set(i, j, d.get(i, j).oplus(via));
            }
        }
    }
    Ok(d)
}

/// Kleene star `A* = I ⊕ A⁺`, the reflexive transitive closure.
pub fn kleene_star<K: ClosedSemifield>(a: &Matrix<K>) -> Result<Matrix<K>, Error> {
    let n = a.require_square()?;
    Matrix::identity(n).oplus(&kleene_plus(a)?)
}

/// Nodes lying on a cycle whose mean attains the max cycle mean: the
/// diagonal fixed points of `(ρ^{-1} ⊙ A)⁺`.
pub fn critical_nodes<K: ClosedSemifield>(a: &Matrix<K>) -> Result<BTreeSet<usize>, Error> {
    let rho = max_cycle_mean(a)?;
    if rho.is_zero() {
        return Err(Error::NoCycles);
    }
    let b = a.scale(rho.inv()?);
    let plus = kleene_plus(&b)?;
    Ok(critical_from_plus(&plus))
}

fn critical_from_plus<K: ClosedSemifield>(plus: &Matrix<K>) -> BTreeSet<usize> {
    (0..plus.rows())
        .filter(|&i| plus.get(i, i).approx_eq(K::one()))
        .collect()
}

fn carrier_distance<K: Semifield>(a: K, b: K) -> f64 {
    match (a.value(), b.value()) {
        (None, None) => 0.0,
        (Some(x), Some(y)) => (x - y).abs(),
        _ => f64::INFINITY,
    }
}

/// True iff `x` is nonzero and `A ⊙ x = λ ⊙ x` within the scalar tolerance.
pub fn eigen_check<K: Semifield>(a: &Matrix<K>, lambda: K, x: &Vector<K>) -> Result<bool, Error> {
    let n = a.require_square()?;
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x.len(),
        });
    }
    if x.is_zero() {
        return Ok(false);
    }
    Ok(a.apply(x)?.approx_eq(&x.scale(lambda)))
}

fn normalize_ray<K: Semifield>(x: &Vector<K>) -> Vector<K> {
    let top = x.sup();
    if top.is_zero() {
        return x.clone();
    }
    x.scale(top.inv().expect("nonzero supremum"))
}

fn residual_of<K: Semifield>(a: &Matrix<K>, lambda: K, x: &Vector<K>) -> Result<f64, Error> {
    let lhs = a.apply(x)?;
    let rhs = x.scale(lambda);
    Ok((0..x.len())
        .map(|i| carrier_distance(lhs.get(i), rhs.get(i)))
        .fold(0.0, f64::max))
}

/// Constructs a verified eigenpair for any square matrix.
///
/// When the matrix has a cycle, the eigenvalue is the max cycle mean ρ and
/// the eigenvector is a critical column of `(ρ^{-1} ⊙ A)⁺`. An acyclic
/// matrix is handled by the zero eigenvalue with the indicator of a column
/// that is entirely bottom (one exists: the support digraph has a node
/// feeding no one).
pub fn principal_eigenpair<K: ClosedSemifield>(a: &Matrix<K>) -> Result<EigenSolution<K>, Error> {
    let n = a.require_square()?;
    let rho = max_cycle_mean(a)?;

    let (eigenvector, critical) = if rho.is_zero() {
        let sink = (0..n)
            .find(|&j| (0..n).all(|i| a.get(i, j).is_zero()))
            .ok_or(Error::VerificationFailed)?;
        (Vector::unit(n, sink), BTreeSet::new())
    } else {
        let b = a.scale(rho.inv()?);
        let plus = kleene_plus(&b)?;
        let critical = critical_from_plus(&plus);
        let &node = critical.iter().next().ok_or(Error::VerificationFailed)?;
        (normalize_ray(&plus.col(node)), critical)
    };

    if !eigen_check(a, rho, &eigenvector)? {
        return Err(Error::VerificationFailed);
    }
    let residual = residual_of(a, rho, &eigenvector)?;
    Ok(EigenSolution {
        lambda: rho,
        eigenvector,
        critical_nodes: critical,
        residual,
    })
}

/// Enumerates the complete spectrum of a small matrix by support subsets.
///
/// A subset S can support an eigenvector exactly when no row outside S
/// reaches a column inside S; on such a subset the candidate eigenvalue is
/// the max cycle mean of A[S,S], whose principal eigenvector extends by
/// bottoms to the full space. Every candidate is re-verified against the
/// full matrix before it is reported, and equal eigenvalues are merged with
/// the witness of the smallest subset found first.
pub fn all_eigenvalues<K: ClosedSemifield>(
    a: &Matrix<K>,
    max_n: usize,
) -> Result<SpectrumReport<K>, Error> {
    let n = a.require_square()?;
    if n > max_n {
        return Err(Error::TooLarge { size: n, cap: max_n });
    }

    let mut entries: Vec<SpectrumEntry<K>> = Vec::new();
    for mask in 1u64..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|&j| mask & (1 << j) != 0).collect();
        let closed = (0..n)
            .filter(|i| !subset.contains(i))
            .all(|i| subset.iter().all(|&j| a.get(i, j).is_zero()));
        if !closed {
            continue;
        }

        let sub = a.principal_submatrix(&subset);
        let pair = principal_eigenpair(&sub)?;
        let mut lifted = vec![K::zero(); n];
        for (local, &global) in subset.iter().enumerate() {
            lifted[global] = pair.eigenvector.get(local);
        }
        let witness = Vector::from_entries(lifted);
        if !eigen_check(a, pair.lambda, &witness)? {
            continue;
        }
        if entries.iter().any(|e| e.lambda.approx_eq(pair.lambda)) {
            continue;
        }
        let support: BTreeSet<usize> = witness.support().into_iter().collect();
        entries.push(SpectrumEntry {
            lambda: pair.lambda,
            archimedean: witness.is_archimedean(),
            witness,
            support,
        });
    }

    entries.sort_by(|p, q| {
        if p.lambda == q.lambda {
            std::cmp::Ordering::Equal
        } else if p.lambda.leq(q.lambda) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    Ok(SpectrumReport {
        eigenvalues: entries,
        method: "subset-oracle",
    })
}

/// Iterates `x_{t+1} = A ⊙ x_t` for `steps` steps and estimates the
/// asymptotic growth rate from the trailing half of the orbit.
pub fn orbit_simulate<K: ClosedSemifield>(
    a: &Matrix<K>,
    x0: &Vector<K>,
    steps: usize,
) -> Result<OrbitReport<K>, Error> {
    let n = a.require_square()?;
    if x0.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x0.len(),
        });
    }
    assert!(steps >= 1, "orbit needs at least one step");

    let mut states = Vec::with_capacity(steps + 1);
    states.push(x0.clone());
    for _ in 0..steps {
        let next = a.apply(states.last().expect("nonempty"))?;
        states.push(next);
    }

    let window = steps / 2;
    let increments: Vec<Option<f64>> = (0..n)
        .map(|i| {
            if window == 0 {
                return None;
            }
            let last = states[steps].get(i).exponent()?;
            let first = states[steps - window].get(i).exponent()?;
            Some((last - first) / window as f64)
        })
        .collect();
    let available: Vec<f64> = increments.iter().flatten().copied().collect();
    let estimate = if available.is_empty() {
        None
    } else {
        Some(available.iter().sum::<f64>() / available.len() as f64)
    };

    Ok(OrbitReport {
        states,
        increments,
        estimate,
    })
}
