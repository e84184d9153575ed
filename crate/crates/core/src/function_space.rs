//! K-valued function lattices over finite topological spaces: upper
//! semicontinuity checks, the unit function and its sup functional, and
//! subspaces closed under scalar multiplication and nonempty meets.

use std::collections::BTreeSet;

use crate::error::Error;
use crate::semifield::Semifield;
use crate::semimodule::{dual_apply, Vector};

/// A finite point set with a validated family of closed sets, stored as
/// bitmasks over the points.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteTopology {
    points: usize,
    closed: BTreeSet<u64>,
}

/// Largest point count; sets are stored in a 64-bit mask and the discrete
/// family is materialized in full.
pub const MAX_POINTS: usize = 16;

impl FiniteTopology {
    /// Validates a family of closed sets (0-based indices): it must contain
    /// the empty set and the whole space and be closed under union and
    /// intersection. Nothing is added implicitly.
    pub fn new(points: usize, closed_sets: &[Vec<usize>]) -> Result<Self, Error> {
        if points == 0 || points > MAX_POINTS {
            return Err(Error::NotATopology(format!(
                "point count {points} outside 1..={MAX_POINTS}"
            )));
        }
        let mut closed = BTreeSet::new();
        for set in closed_sets {
            let mut mask = 0u64;
            for &i in set {
                if i >= points {
                    return Err(Error::NotATopology(format!(
                        "point index {i} out of range for {points} points"
                    )));
                }
                mask |= 1 << i;
            }
            closed.insert(mask);
        }
        let full = Self::full_mask(points);
        if !closed.contains(&0) {
            return Err(Error::NotATopology("missing the empty set".into()));
        }
        if !closed.contains(&full) {
            return Err(Error::NotATopology("missing the whole space".into()));
        }
        for &a in &closed {
            for &b in &closed {
                if !closed.contains(&(a | b)) {
                    return Err(Error::NotATopology(format!(
                        "not closed under union: {:?} ∪ {:?}",
                        unmask(a),
                        unmask(b)
                    )));
                }
                if !closed.contains(&(a & b)) {
                    return Err(Error::NotATopology(format!(
                        "not closed under intersection: {:?} ∩ {:?}",
                        unmask(a),
                        unmask(b)
                    )));
                }
            }
        }
        Ok(FiniteTopology { points, closed })
    }

    /// The discrete topology: every subset is closed.
    pub fn discrete(points: usize) -> Result<Self, Error> {
        if points == 0 || points > MAX_POINTS {
            return Err(Error::TooLarge {
                size: points,
                cap: MAX_POINTS,
            });
        }
        let closed = (0..=Self::full_mask(points)).collect();
        Ok(FiniteTopology { points, closed })
    }

    fn full_mask(points: usize) -> u64 {
        if points == 64 {
            u64::MAX
        } else {
            (1u64 << points) - 1
        }
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn is_closed_mask(&self, mask: u64) -> bool {
        self.closed.contains(&mask)
    }

    /// The closed sets as sorted index lists, in mask order.
    pub fn closed_sets(&self) -> Vec<Vec<usize>> {
        self.closed.iter().map(|&m| unmask(m)).collect()
    }
}

fn unmask(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask & (1 << i) != 0).collect()
}

/// Every topology on up to `points` points, by exhaustive search over
/// families of subsets. Feasible only for very small spaces.
pub fn enumerate_topologies(points: usize) -> Result<Vec<FiniteTopology>, Error> {
    const CAP: usize = 4;
    if points == 0 || points > CAP {
        return Err(Error::TooLarge {
            size: points,
            cap: CAP,
        });
    }
    let full = FiniteTopology::full_mask(points);
    // every family contains ∅ and X; choose freely among the proper subsets
    let proper: Vec<u64> = (1..full).collect();
    let mut out = Vec::new();
    for choice in 0u64..(1 << proper.len()) {
        let mut closed: BTreeSet<u64> = BTreeSet::from([0, full]);
        for (bit, &mask) in proper.iter().enumerate() {
            if choice & (1 << bit) != 0 {
                closed.insert(mask);
            }
        }
        let ok = closed
            .iter()
            .all(|&a| closed.iter().all(|&b| closed.contains(&(a | b)) && closed.contains(&(a & b))));
        if ok {
            out.push(FiniteTopology { points, closed });
        }
    }
    Ok(out)
}

/// A violation of upper semicontinuity: a threshold whose superlevel set is
/// not closed.
#[derive(Clone, Debug, PartialEq)]
pub struct UscViolation<K> {
    pub threshold: K,
    pub superlevel: Vec<usize>,
}

/// Finds a threshold from the value set of `f` whose superlevel set
/// `{x : f(x) ⪰ b}` is not closed, if any. Thresholds outside the value
/// set only produce superlevel sets that already occur for a value of `f`
/// (or the empty set and the whole space), so scanning the value set is
/// exhaustive.
pub fn usc_violation<K: Semifield>(
    topology: &FiniteTopology,
    f: &Vector<K>,
) -> Result<Option<UscViolation<K>>, Error> {
    if f.len() != topology.points() {
        return Err(Error::DimensionMismatch {
            expected: topology.points(),
            found: f.len(),
        });
    }
    for i in 0..f.len() {
        let b = f.get(i);
        if b.is_zero() {
            continue; // superlevel set is the whole space
        }
        let mut mask = 0u64;
        for x in 0..f.len() {
            if b.leq(f.get(x)) {
                mask |= 1 << x;
            }
        }
        if !topology.is_closed_mask(mask) {
            return Ok(Some(UscViolation {
                threshold: b,
                superlevel: unmask(mask),
            }));
        }
    }
    Ok(None)
}

/// True iff every superlevel set of `f` is closed in the topology.
pub fn is_usc<K: Semifield>(topology: &FiniteTopology, f: &Vector<K>) -> Result<bool, Error> {
    Ok(usc_violation(topology, f)?.is_none())
}

/// The function identically equal to the multiplicative identity. It is
/// upper semicontinuous in every topology and Archimedean in K^X.
pub fn unit_function<K: Semifield>(points: usize) -> Vector<K> {
    Vector::constant(points, K::one())
}

/// The sup functional of the unit function: `e*(f) = sup_x f(x)`.
pub fn e_star<K: Semifield>(f: &Vector<K>) -> K {
    f.sup()
}

/// Exponent scale of the coordinate generators used by [`embed_free`];
/// vectors whose entry exponents stay within (-SCALE/2, SCALE/2) are
/// reproduced exactly by the subspace.
pub const EMBED_SCALE: f64 = 1e6;

/// A subspace of K^X closed under scalar multiplication and nonempty
/// pointwise meets, presented by finitely many Archimedean generators:
/// W = { ∧_{i∈S} λ_i ⊙ g_i : S nonempty, λ_i ∈ K }.
#[derive(Clone, Debug)]
pub struct MeetSubspace<K> {
    topology: FiniteTopology,
    generators: Vec<Vector<K>>,
}

impl<K: Semifield> MeetSubspace<K> {
    /// Generators must be Archimedean (no bottom entries) and match the
    /// ambient point count.
    pub fn new(topology: FiniteTopology, generators: Vec<Vector<K>>) -> Result<Self, Error> {
        if generators.is_empty() {
            return Err(Error::NoGenerators);
        }
        for g in &generators {
            if g.len() != topology.points() {
                return Err(Error::DimensionMismatch {
                    expected: topology.points(),
                    found: g.len(),
                });
            }
            if let Some(i) = g.first_bottom() {
                return Err(Error::NotArchimedean(i));
            }
        }
        Ok(MeetSubspace {
            topology,
            generators,
        })
    }

    pub fn topology(&self) -> &FiniteTopology {
        &self.topology
    }

    pub fn generators(&self) -> &[Vector<K>] {
        &self.generators
    }

    /// The least member of W above `f`: `P(f) = ∧_i g_i*(f) ⊙ g_i`.
    /// P is extensive, idempotent, monotone, and commutes with nonzero
    /// scalar multiplication.
    pub fn project(&self, f: &Vector<K>) -> Result<Vector<K>, Error> {
        let mut best: Option<Vector<K>> = None;
        for g in &self.generators {
            let lam = dual_apply(g, f)?;
            let term = g.scale(lam);
            best = Some(match best {
                Some(acc) => acc.wedge(&term)?,
                None => term,
            });
        }
        Ok(best.expect("at least one generator"))
    }

    /// Membership test: `f` belongs to W iff its projection returns it
    /// unchanged (up to the scalar tolerance).
    pub fn contains(&self, f: &Vector<K>) -> Result<bool, Error> {
        Ok(self.project(f)?.approx_eq(f))
    }

    /// The join inside W: the least member above the pointwise join.
    pub fn join(&self, x: &Vector<K>, y: &Vector<K>) -> Result<Vector<K>, Error> {
        self.project(&x.oplus(y)?)
    }

    /// Certifies the Archimedean property of a member `x` against sampled
    /// members: for each sample y, the coefficient `x*(y)` must lift x
    /// above y. Fails with `NotMember` when `x` has a bottom entry or any
    /// participant is outside W.
    pub fn check_archimedean_against(
        &self,
        x: &Vector<K>,
        samples: &[Vector<K>],
    ) -> Result<bool, Error> {
        if !x.is_archimedean() || !self.contains(x)? {
            return Err(Error::NotMember);
        }
        for y in samples {
            if !self.contains(y)? {
                return Err(Error::NotMember);
            }
            let lam = dual_apply(x, y)?;
            if !y.leq_approx(&x.scale(lam))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The discrete n-point space together with a meet-closed subspace of
/// USC(X,K) = K^X that reproduces every vector of moderate magnitude and
/// contains all constants.
///
/// Generators are the unit function and, per point j, the function at the
/// identity on j and huge elsewhere (exponent [`EMBED_SCALE`]); meets of
/// their scalar multiples carve out any vector whose entry exponents span
/// less than the scale. Vectors with bottom entries are reproduced only up
/// to this scale; see [`clamped_embedding`].
pub fn embed_free<K: Semifield>(n: usize) -> Result<(FiniteTopology, MeetSubspace<K>), Error> {
    let topology = FiniteTopology::discrete(n)?;
    let mut generators = vec![unit_function(n)];
    for j in 0..n {
        let spike = Vector::from_entries(
            (0..n)
                .map(|x| {
                    if x == j {
                        K::one()
                    } else {
                        K::from_exponent(EMBED_SCALE)
                    }
                })
                .collect(),
        );
        generators.push(spike);
    }
    let subspace = MeetSubspace::new(topology.clone(), generators)?;
    Ok((topology, subspace))
}

/// Desk-scale stand-in for a vector with bottom entries: bottoms are
/// replaced by an element far below the working range (exponent
/// -[`EMBED_SCALE`]/2), which the subspace of [`embed_free`] does contain.
pub fn clamped_embedding<K: Semifield>(v: &Vector<K>) -> Vector<K> {
    Vector::from_entries(
        v.entries()
            .iter()
            .map(|&e| {
                if e.is_zero() {
                    K::from_exponent(-EMBED_SCALE / 2.0)
                } else {
                    e
                }
            })
            .collect(),
    )
}
