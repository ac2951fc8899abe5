use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Carrier, Quantale, QuantaleError};

/// Finite integers are accepted in `[-FINITE_BOUND, FINITE_BOUND]` so that
/// sums along relation compositions stay far from `i64` overflow.
pub const FINITE_BOUND: i64 = 1 << 40;

/// An element of `Z ∪ {+∞, −∞}`, ordered `−∞ < n < +∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ZInf {
    NegInf,
    Fin(i64),
    PosInf,
}

impl ZInf {
    pub fn fin(v: i64) -> Self {
        ZInf::Fin(v)
    }

    fn mirror(self) -> Self {
        match self {
            ZInf::NegInf => ZInf::PosInf,
            ZInf::PosInf => ZInf::NegInf,
            ZInf::Fin(v) => ZInf::Fin(-v),
        }
    }

    /// `a + b - shift`, with `mixed` returned for `−∞ + +∞` in either order.
    pub fn shifted_add(self, other: ZInf, shift: i64, mixed: ZInf) -> ZInf {
        match (self, other) {
            (ZInf::Fin(a), ZInf::Fin(b)) => ZInf::Fin(a.saturating_add(b).saturating_sub(shift)),
            (ZInf::NegInf, ZInf::PosInf) | (ZInf::PosInf, ZInf::NegInf) => mixed,
            (ZInf::NegInf, _) | (_, ZInf::NegInf) => ZInf::NegInf,
            (ZInf::PosInf, _) | (_, ZInf::PosInf) => ZInf::PosInf,
        }
    }
}

impl fmt::Display for ZInf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZInf::NegInf => f.write_str("-inf"),
            ZInf::PosInf => f.write_str("+inf"),
            ZInf::Fin(v) => write!(f, "{v}"),
        }
    }
}

/// Which order the extended integers carry. `Tropical` uses the usual order
/// (join = max) and `Arctic` the opposite one (join = min).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Tropical,
    Arctic,
}

impl Flavor {
    pub fn flip(self) -> Self {
        match self {
            Flavor::Tropical => Flavor::Arctic,
            Flavor::Arctic => Flavor::Tropical,
        }
    }

    pub(crate) fn bottom(self) -> ZInf {
        match self {
            Flavor::Tropical => ZInf::NegInf,
            Flavor::Arctic => ZInf::PosInf,
        }
    }

    pub(crate) fn top(self) -> ZInf {
        self.bottom().mirror()
    }

    pub(crate) fn leq(self, a: ZInf, b: ZInf) -> bool {
        match self {
            Flavor::Tropical => a <= b,
            Flavor::Arctic => a >= b,
        }
    }
}

/// The extended integers as a quantale: multiplication is `a + b - shift`.
///
/// Mixed infinities resolve to `mixed`; the lawful choice is the lattice
/// bottom (`−∞ +₁ ∞ = −∞` for tropical, `−∞ +₂ ∞ = +∞` for arctic), so the
/// bottom absorbs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ZInfQuantale {
    flavor: Flavor,
    shift: i64,
    mixed: ZInf,
}

impl ZInfQuantale {
    pub fn new(flavor: Flavor) -> Self {
        ZInfQuantale {
            flavor,
            shift: 0,
            mixed: flavor.bottom(),
        }
    }

    pub fn tropical() -> Self {
        Self::new(Flavor::Tropical)
    }

    pub fn arctic() -> Self {
        Self::new(Flavor::Arctic)
    }

    /// Multiplication `a + b - shift` with unit `shift`.
    pub fn with_shift(mut self, shift: i64) -> Self {
        self.shift = shift;
        self
    }

    pub(crate) fn with_mixed(mut self, mixed: ZInf) -> Self {
        self.mixed = mixed;
        self
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn mixed(&self) -> ZInf {
        self.mixed
    }
}

/// Closed-form `a ⊸ b` for `a + c - shift` in the usual order. The mixed
/// convention does not change the supremum.
fn residual_usual(a: ZInf, b: ZInf, shift: i64) -> ZInf {
    match (a, b) {
        (ZInf::NegInf, _) => ZInf::PosInf,
        (_, ZInf::PosInf) => ZInf::PosInf,
        (ZInf::PosInf, _) => ZInf::NegInf,
        (ZInf::Fin(_), ZInf::NegInf) => ZInf::NegInf,
        (ZInf::Fin(x), ZInf::Fin(y)) => ZInf::Fin(y - x + shift),
    }
}

impl Carrier for ZInfQuantale {
    type Elem = ZInf;

    fn leq(&self, a: ZInf, b: ZInf) -> bool {
        self.flavor.leq(a, b)
    }
    fn join(&self, a: ZInf, b: ZInf) -> ZInf {
        if self.flavor.leq(a, b) {
            b
        } else {
            a
        }
    }
    fn meet(&self, a: ZInf, b: ZInf) -> ZInf {
        if self.flavor.leq(a, b) {
            a
        } else {
            b
        }
    }
    fn bottom(&self) -> ZInf {
        self.flavor.bottom()
    }
    fn top(&self) -> ZInf {
        self.flavor.top()
    }
    fn is_finite(&self) -> bool {
        false
    }
    fn domain(&self, window: i64) -> Vec<ZInf> {
        let mut out = vec![ZInf::NegInf];
        out.extend((-window..=window).map(ZInf::Fin));
        out.push(ZInf::PosInf);
        out
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R, window: i64) -> ZInf {
        match rng.gen_range(0..8) {
            0 => ZInf::NegInf,
            1 => ZInf::PosInf,
            _ => ZInf::Fin(rng.gen_range(-window..=window)),
        }
    }
    fn shrink_elem(&self, a: ZInf) -> Vec<ZInf> {
        let mut out = Vec::new();
        let mut push = |c: ZInf| {
            if c != a && self.leq(c, a) && !out.contains(&c) {
                out.push(c);
            }
        };
        push(self.bottom());
        push(ZInf::Fin(0));
        if let ZInf::Fin(v) = a {
            push(ZInf::Fin(v / 2));
        }
        out
    }
    fn render(&self, a: ZInf) -> String {
        a.to_string()
    }
    fn encode(&self, a: ZInf) -> Value {
        match a {
            ZInf::Fin(v) => Value::from(v),
            other => Value::String(other.to_string()),
        }
    }
    fn decode(&self, v: &Value) -> Result<ZInf, QuantaleError> {
        match v {
            Value::String(s) if s == "+inf" || s == "inf" => Ok(ZInf::PosInf),
            Value::String(s) if s == "-inf" => Ok(ZInf::NegInf),
            Value::Number(n) => {
                let x = n
                    .as_i64()
                    .ok_or_else(|| QuantaleError::UnknownElement(n.to_string()))?;
                if x.abs() > FINITE_BOUND {
                    return Err(QuantaleError::OutOfRange(x));
                }
                Ok(ZInf::Fin(x))
            }
            other => Err(QuantaleError::UnknownElement(other.to_string())),
        }
    }
}

impl Quantale for ZInfQuantale {
    fn tensor(&self, a: ZInf, b: ZInf) -> ZInf {
        a.shifted_add(b, self.shift, self.mixed)
    }
    fn unit(&self) -> ZInf {
        ZInf::Fin(self.shift)
    }
    fn residual_right(&self, a: ZInf, b: ZInf) -> ZInf {
        match self.flavor {
            Flavor::Tropical => residual_usual(a, b, self.shift),
            // x ↦ −x is an isomorphism onto the tropical structure with shift −s.
            Flavor::Arctic => residual_usual(a.mirror(), b.mirror(), -self.shift).mirror(),
        }
    }
    fn residual_left(&self, b: ZInf, a: ZInf) -> ZInf {
        self.residual_right(a, b)
    }
}
