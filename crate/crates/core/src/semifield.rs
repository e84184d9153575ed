//! Scalar algebra: boundedly complete idempotent semifields.
//!
//! A semifield here is a totally ordered carrier with an idempotent join
//! `oplus` (which induces the order), a commutative group operation
//! `otimes` on the nonzero part, and a least element `zero` (bottom) that
//! is neutral for `oplus` and absorbing for `otimes`. Two instances ship:
//! [`RMax`] (reals with max and +) and [`MaxTimes`] (positive reals with
//! max and *).

use std::fmt;

use serde::de::{self, DeserializeOwned, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Relative tolerance for values that passed through `otimes`, `inv`, or roots.
pub const REL_TOL: f64 = 1e-9;
/// Absolute tolerance near zero for the same comparisons.
pub const ABS_TOL: f64 = 1e-12;

/// A boundedly complete, totally ordered idempotent semifield.
///
/// `oplus` is the join and doubles as the order: `a ⪯ b` iff `a ⊕ b = b`.
/// `wedge` is the meet; both are exact on the float carrier (max/min of
/// floats never rounds). `otimes` is the group operation, with `zero`
/// absorbing, and is where rounding enters — results downstream of it
/// compare with [`REL_TOL`]/[`ABS_TOL`].
pub trait Semifield:
    Copy
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// Identifier used in file formats ("rmax", "maxtimes").
    const NAME: &'static str;

    /// The zero element (bottom): least, neutral for `oplus`, absorbing for `otimes`.
    fn zero() -> Self;
    /// The multiplicative identity.
    fn one() -> Self;
    /// Join: least upper bound of the two arguments.
    fn oplus(self, rhs: Self) -> Self;
    /// Meet: greatest lower bound of the two arguments.
    fn wedge(self, rhs: Self) -> Self;
    /// Group operation, extended by absorption to the zero element.
    fn otimes(self, rhs: Self) -> Self;
    /// Multiplicative inverse of a nonzero element.
    fn inv(self) -> Result<Self, Error>;
    /// Order test: `self ⪯ rhs`.
    fn leq(self, rhs: Self) -> bool;

    /// Builds a nonzero element from its carrier magnitude
    /// (any finite real for rmax, a positive normal real for maxtimes).
    fn from_value(v: f64) -> Result<Self, Error>;
    /// Carrier magnitude of a nonzero element; `None` for the zero element.
    fn value(self) -> Option<f64>;
    /// The isomorphism from the additive reals onto the nonzero part:
    /// `from_exponent(s + t) = from_exponent(s) ⊙ from_exponent(t)`.
    fn from_exponent(t: f64) -> Self;
    /// Inverse of [`Semifield::from_exponent`]; `None` for the zero element.
    fn exponent(self) -> Option<f64>;

    fn is_zero(self) -> bool {
        self == Self::zero()
    }

    /// Strict order test.
    fn lt(self, rhs: Self) -> bool {
        self.leq(rhs) && self != rhs
    }

    /// n-fold `otimes` power; the empty product is `one`.
    fn otimes_pow(self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.otimes(self);
        }
        acc
    }

    /// Tolerant equality under the default policy. Two zeros are equal;
    /// a zero never equals a nonzero element.
    fn approx_eq(self, rhs: Self) -> bool {
        self.approx_eq_within(rhs, REL_TOL, ABS_TOL)
    }

    fn approx_eq_within(self, rhs: Self, rel: f64, abs: f64) -> bool {
        match (self.value(), rhs.value()) {
            (None, None) => true,
            (Some(a), Some(b)) => {
                let d = (a - b).abs();
                d <= abs || d <= rel * a.abs().max(b.abs())
            }
            _ => false,
        }
    }

    /// `self ⪯ rhs`, up to the default tolerance. Used when the operands
    /// went through `otimes` and a strict comparison would be noise.
    fn leq_approx(self, rhs: Self) -> bool {
        self.leq(rhs) || self.approx_eq(rhs)
    }
}

/// A semifield in which every element has an nth root for every n ≥ 1.
///
/// Both shipped instances are algebraically closed; an instance without
/// roots simply does not implement this trait, which is what the spectral
/// solvers require.
pub trait ClosedSemifield: Semifield {
    /// The element `y` with `y^⊙n = self`; the root of zero is zero.
    fn nth_root(self, n: u32) -> Self;
}

/// Least upper bound of a finite family; the empty family yields zero.
pub fn sup_set<K: Semifield>(vals: impl IntoIterator<Item = K>) -> K {
    vals.into_iter().fold(K::zero(), K::oplus)
}

/// Greatest lower bound of a finite nonempty family.
pub fn inf_set<K: Semifield>(vals: impl IntoIterator<Item = K>) -> Result<K, Error> {
    vals.into_iter().reduce(K::wedge).ok_or(Error::EmptyInf)
}

/// The max-plus reals: carrier ℝ, join = max, `otimes` = +, identity 0.
///
/// Bottom is held as -∞ internally; externally it is the token "bottom".
/// The wrapped float is never NaN or +∞.
#[derive(Clone, Copy, PartialEq, PartialOrd)]
pub struct RMax(f64);

impl RMax {
    pub const fn bottom() -> Self {
        RMax(f64::NEG_INFINITY)
    }

    /// Finite element; panics on a non-finite argument.
    pub fn finite(v: f64) -> Self {
        assert!(v.is_finite(), "RMax carrier must be finite, got {v}");
        RMax(v)
    }
}

// -0.0 can leak out of negation and division; fold it into +0.0 so that
// equality, display, and serialization all see one identity element.
fn norm(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

impl Semifield for RMax {
    const NAME: &'static str = "rmax";

    fn zero() -> Self {
        Self::bottom()
    }

    fn one() -> Self {
        RMax(0.0)
    }

    fn oplus(self, rhs: Self) -> Self {
        RMax(self.0.max(rhs.0))
    }

    fn wedge(self, rhs: Self) -> Self {
        RMax(self.0.min(rhs.0))
    }

    fn otimes(self, rhs: Self) -> Self {
        RMax(norm(self.0 + rhs.0))
    }

    fn inv(self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::InversionOfZero);
        }
        Ok(RMax(norm(-self.0)))
    }

    fn leq(self, rhs: Self) -> bool {
        self.0 <= rhs.0
    }

    fn from_value(v: f64) -> Result<Self, Error> {
        if !v.is_finite() {
            return Err(Error::InvalidScalar {
                semifield: Self::NAME,
                reason: format!("{v} is not a finite real"),
            });
        }
        Ok(RMax(norm(v)))
    }

    fn value(self) -> Option<f64> {
        if self.is_zero() {
            None
        } else {
            Some(self.0)
        }
    }

    fn from_exponent(t: f64) -> Self {
        debug_assert!(t.is_finite());
        RMax(norm(t))
    }

    fn exponent(self) -> Option<f64> {
        self.value()
    }
}

impl ClosedSemifield for RMax {
    fn nth_root(self, n: u32) -> Self {
        assert!(n >= 1, "root index must be positive");
        RMax(norm(self.0 / f64::from(n)))
    }
}

impl fmt::Debug for RMax {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "RMax(bottom)")
        } else {
            write!(f, "RMax({})", self.0)
        }
    }
}

impl fmt::Display for RMax {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "bottom")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// The max-times positive reals: join = max, `otimes` = *, identity 1.
///
/// Bottom is held as 0.0 internally. The carrier is restricted to positive
/// normal floats so that inversion never overflows.
#[derive(Clone, Copy, PartialEq, PartialOrd)]
pub struct MaxTimes(f64);

impl MaxTimes {
    pub const fn bottom() -> Self {
        MaxTimes(0.0)
    }

    /// Positive element; panics outside the carrier.
    pub fn positive(v: f64) -> Self {
        assert!(
            v.is_finite() && v >= f64::MIN_POSITIVE,
            "MaxTimes carrier must be a positive normal real, got {v}"
        );
        MaxTimes(v)
    }
}

impl Semifield for MaxTimes {
    const NAME: &'static str = "maxtimes";

    fn zero() -> Self {
        Self::bottom()
    }

    fn one() -> Self {
        MaxTimes(1.0)
    }

    fn oplus(self, rhs: Self) -> Self {
        MaxTimes(self.0.max(rhs.0))
    }

    fn wedge(self, rhs: Self) -> Self {
        MaxTimes(self.0.min(rhs.0))
    }

    fn otimes(self, rhs: Self) -> Self {
        MaxTimes(self.0 * rhs.0)
    }

    fn inv(self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::InversionOfZero);
        }
        Ok(MaxTimes(1.0 / self.0))
    }

    fn leq(self, rhs: Self) -> bool {
        self.0 <= rhs.0
    }

    fn from_value(v: f64) -> Result<Self, Error> {
        if !v.is_finite() || v < f64::MIN_POSITIVE {
            return Err(Error::InvalidScalar {
                semifield: Self::NAME,
                reason: format!("{v} is not a positive real"),
            });
        }
        Ok(MaxTimes(v))
    }

    fn value(self) -> Option<f64> {
        if self.is_zero() {
            None
        } else {
            Some(self.0)
        }
    }

    fn from_exponent(t: f64) -> Self {
        debug_assert!(t.is_finite());
        MaxTimes(t.exp())
    }

    fn exponent(self) -> Option<f64> {
        self.value().map(f64::ln)
    }
}

impl ClosedSemifield for MaxTimes {
    fn nth_root(self, n: u32) -> Self {
        assert!(n >= 1, "root index must be positive");
        if n == 1 || self.is_zero() {
            return self;
        }
        MaxTimes(self.0.powf(1.0 / f64::from(n)))
    }
}

impl fmt::Debug for MaxTimes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "MaxTimes(bottom)")
        } else {
            write!(f, "MaxTimes({})", self.0)
        }
    }
}

impl fmt::Display for MaxTimes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "bottom")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

// Wire format for scalars: a JSON number for nonzero elements, the string
// "bottom" for the zero element. Readers additionally accept "-inf" for
// rmax; writers always emit "bottom".

fn serialize_scalar<K: Semifield, S: Serializer>(k: K, ser: S) -> Result<S::Ok, S::Error> {
    match k.value() {
        Some(v) => ser.serialize_f64(v),
        None => ser.serialize_str("bottom"),
    }
}

impl Serialize for RMax {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        serialize_scalar(*self, ser)
    }
}

impl Serialize for MaxTimes {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        serialize_scalar(*self, ser)
    }
}

struct ScalarVisitor<K>(std::marker::PhantomData<K>);

impl<K: Semifield> ScalarVisitor<K> {
    fn from_number<E: de::Error>(v: f64) -> Result<K, E> {
        K::from_value(v).map_err(|e| E::custom(e.to_string()))
    }
}

impl<'de, K: Semifield> Visitor<'de> for ScalarVisitor<K> {
    type Value = K;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a {} scalar: a number or the string \"bottom\"", K::NAME)
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<K, E> {
        Self::from_number(v)
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<K, E> {
        Self::from_number(v as f64)
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<K, E> {
        Self::from_number(v as f64)
    }

    fn visit_str<E: de::Error>(self, s: &str) -> Result<K, E> {
        match s {
            "bottom" => Ok(K::zero()),
            "-inf" if K::NAME == "rmax" => Ok(K::zero()),
            _ => Err(E::custom(format!("unrecognized {} scalar token {s:?}", K::NAME))),
        }
    }
}

impl<'de> Deserialize<'de> for RMax {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        de.deserialize_any(ScalarVisitor(std::marker::PhantomData))
    }
}

impl<'de> Deserialize<'de> for MaxTimes {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        de.deserialize_any(ScalarVisitor(std::marker::PhantomData))
    }
}
