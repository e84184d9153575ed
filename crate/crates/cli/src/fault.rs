use std::fmt;

use serde::{Deserialize, Serialize};
use tropica::semifield::{ClosedSemifield, Semifield};
use tropica::{Error, RMax};

/// Deliberately broken copy of the max-plus scalars, used to exercise the
/// failure path of the law suites end to end: the product gains a spurious
/// bonus when the right factor lies in (0,1), which wrecks distributivity,
/// commutativity, and associativity on a visible fraction of samples.
#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FaultyRMax(RMax);

impl fmt::Display for FaultyRMax {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Semifield for FaultyRMax {
    const NAME: &'static str = "rmax";

    fn zero() -> Self {
        FaultyRMax(RMax::zero())
    }

    fn one() -> Self {
        FaultyRMax(RMax::one())
    }

    fn oplus(self, rhs: Self) -> Self {
        FaultyRMax(self.0.oplus(rhs.0))
    }

    fn wedge(self, rhs: Self) -> Self {
        FaultyRMax(self.0.wedge(rhs.0))
    }

    fn otimes(self, rhs: Self) -> Self {
        let base = self.0.otimes(rhs.0);
        match rhs.0.value() {
            Some(v) if v > 0.0 && v < 1.0 => FaultyRMax(base.otimes(RMax::finite(10.0))),
            _ => FaultyRMax(base),
        }
    }

    fn inv(self) -> Result<Self, Error> {
        self.0.inv().map(FaultyRMax)
    }

    fn leq(self, rhs: Self) -> bool {
        self.0.leq(rhs.0)
    }

    fn from_value(v: f64) -> Result<Self, Error> {
        RMax::from_value(v).map(FaultyRMax)
    }

    fn value(self) -> Option<f64> {
        self.0.value()
    }

    fn from_exponent(t: f64) -> Self {
        FaultyRMax(RMax::from_exponent(t))
    }

    fn exponent(self) -> Option<f64> {
        self.0.exponent()
    }
}

impl ClosedSemifield for FaultyRMax {
    fn nth_root(self, n: u32) -> Self {
        FaultyRMax(self.0.nth_root(n))
    }
}
