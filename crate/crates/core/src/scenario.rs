//! Qualitative fate labels and their composite notation.

use std::fmt;

use serde::{Serialize, Serializer};

/// How the universe looks toward the past.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PastFate {
    /// Big Bang: `a -> 0` at a finite past time.
    BigBang,
    /// Eternal contraction from infinite size as `t -> -inf`.
    EternalContraction,
    /// Asymptotically steady: `a` tends to the static value as `t -> -inf`.
    Steady,
    Static,
    Unknown,
}

/// How the universe looks toward the future.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FutureFate {
    /// Big Crunch: `a -> 0` at a finite future time.
    BigCrunch,
    /// Eternal expansion, `a -> inf`.
    EternalExpansion,
    Steady,
    Static,
    Unknown,
}

/// Monotonicity of `a` over the whole existence interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Expanding,
    Contracting,
    /// Expands, turns around once, then contracts.
    Recollapse,
    /// Contracts, turns around once, then expands.
    Bounce,
    Static,
}

impl PastFate {
    pub fn label(self) -> &'static str {
        match self {
            PastFate::BigBang => "BB",
            PastFate::EternalContraction => "EC",
            PastFate::Steady => "AS",
            PastFate::Static => "STATIC",
            PastFate::Unknown => "UNKNOWN",
        }
    }

    /// The future fate of the time-reflected solution.
    pub fn reflected(self) -> FutureFate {
        match self {
            PastFate::BigBang => FutureFate::BigCrunch,
            PastFate::EternalContraction => FutureFate::EternalExpansion,
            PastFate::Steady => FutureFate::Steady,
            PastFate::Static => FutureFate::Static,
            PastFate::Unknown => FutureFate::Unknown,
        }
    }
}

impl FutureFate {
    pub fn label(self) -> &'static str {
        match self {
            FutureFate::BigCrunch => "BC",
            FutureFate::EternalExpansion => "EE",
            FutureFate::Steady => "AS",
            FutureFate::Static => "STATIC",
            FutureFate::Unknown => "UNKNOWN",
        }
    }

    /// The past fate of the time-reflected solution.
    pub fn reflected(self) -> PastFate {
        match self {
            FutureFate::BigCrunch => PastFate::BigBang,
            FutureFate::EternalExpansion => PastFate::EternalContraction,
            FutureFate::Steady => PastFate::Steady,
            FutureFate::Static => PastFate::Static,
            FutureFate::Unknown => PastFate::Unknown,
        }
    }
}

impl Shape {
    pub fn arrow(self) -> &'static str {
        match self {
            Shape::Expanding => "↗",
            Shape::Contracting => "↘",
            Shape::Recollapse => "↗↘",
            Shape::Bounce => "↘↗",
            Shape::Static => "",
        }
    }

    pub fn reflected(self) -> Shape {
        match self {
            Shape::Expanding => Shape::Contracting,
            Shape::Contracting => Shape::Expanding,
            other => other,
        }
    }
}

impl fmt::Display for PastFate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl fmt::Display for FutureFate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for PastFate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

impl Serialize for FutureFate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scenario {
    pub past: PastFate,
    pub shape: Shape,
    pub future: FutureFate,
}

impl Scenario {
    pub const STATIC: Scenario = Scenario {
        past: PastFate::Static,
        shape: Shape::Static,
        future: FutureFate::Static,
    };

    pub fn new(past: PastFate, shape: Shape, future: FutureFate) -> Self {
        Scenario { past, shape, future }
    }

    /// The scenario of `t -> -t`.
    pub fn reflected(self) -> Scenario {
        Scenario {
            past: self.future.reflected(),
            shape: self.shape.reflected(),
            future: self.past.reflected(),
        }
    }

    /// Composite label such as `BB ↗ EE` or `STATIC`.
    pub fn composite(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shape == Shape::Static {
            return f.write_str("STATIC");
        }
        write!(f, "{} {} {}", self.past, self.shape.arrow(), self.future)
    }
}

impl Serialize for Scenario {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composite_labels() {
        let s = Scenario::new(PastFate::BigBang, Shape::Recollapse, FutureFate::BigCrunch);
        assert_eq!(s.composite(), "BB ↗↘ BC");
        assert_eq!(s.reflected(), s);
        let l = Scenario::new(PastFate::Steady, Shape::Expanding, FutureFate::EternalExpansion);
        assert_eq!(l.reflected().composite(), "EC ↘ AS");
        assert_eq!(Scenario::STATIC.composite(), "STATIC");
    }

    #[test]
    fn reflection_is_involution() {
        let pasts = [
            PastFate::BigBang,
            PastFate::EternalContraction,
            PastFate::Steady,
            PastFate::Unknown,
        ];
        let futures = [
            FutureFate::BigCrunch,
            FutureFate::EternalExpansion,
            FutureFate::Steady,
            FutureFate::Unknown,
        ];
        for p in pasts {
            for f in futures {
                for shape in [Shape::Expanding, Shape::Contracting, Shape::Recollapse, Shape::Bounce] {
                    let s = Scenario::new(p, shape, f);
                    assert_eq!(s.reflected().reflected(), s);
                }
            }
        }
    }
}
