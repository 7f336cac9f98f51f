//! Pointwise activations with first and second derivatives.
//!
//! Every kind is C¹ on the reals and C² away from at most one point (SELU's
//! second derivative jumps at 0; we return the left limit there). The
//! reported `lipschitz_bound` / `smoothness_bound` are upper bounds on
//! sup|φ'| and sup|φ''| for the scaled activation.

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;
use crate::Real;

/// SELU constants from Klambauer et al., "Self-Normalizing Neural Networks".
pub const SELU_LAMBDA: f64 = 1.050_700_987_355_480_5;
pub const SELU_ALPHA: f64 = 1.673_263_242_354_377_3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActKind {
    Selu,
    Tanh,
    Softplus,
}

/// Derivative order accepted by [`eval_kind`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Value,
    First,
    Second,
}

impl Order {
    pub fn from_u8(order: u8) -> Option<Self> {
        match order {
            0 => Some(Order::Value),
            1 => Some(Order::First),
            2 => Some(Order::Second),
            _ => None,
        }
    }
}

/// φ, φ' or φ'' of the unscaled activation, generic over the scalar type.
pub fn eval_kind<S: Scalar>(kind: ActKind, x: S, order: Order) -> S {
    match kind {
        ActKind::Selu => {
            let lam = S::of(SELU_LAMBDA);
            let la = S::of(SELU_LAMBDA * SELU_ALPHA);
            if x > S::zero() {
                match order {
                    Order::Value => lam * x,
                    Order::First => lam,
                    Order::Second => S::zero(),
                }
            } else {
                // x <= 0 takes the exponential branch; at x = 0 this is the
                // left-limit convention for the (discontinuous) second
                // derivative, while value and first derivative agree with the
                // linear branch there.
                let e = x.exp();
                match order {
                    Order::Value => la * (e - S::one()),
                    Order::First => la * e,
                    Order::Second => la * e,
                }
            }
        }
        ActKind::Tanh => {
            let t = x.tanh();
            match order {
                Order::Value => t,
                Order::First => S::one() - t * t,
                Order::Second => S::of(-2.0) * t * (S::one() - t * t),
            }
        }
        ActKind::Softplus => {
            // ln(1 + e^x), stabilized for large |x|.
            let sig = if x >= S::zero() {
                S::one() / (S::one() + (-x).exp())
            } else {
                let e = x.exp();
                e / (S::one() + e)
            };
            match order {
                Order::Value => {
                    if x > S::of(30.0) {
                        x + (-x).exp().ln_1p()
                    } else {
                        x.exp().ln_1p()
                    }
                }
                Order::First => sig,
                Order::Second => sig * (S::one() - sig),
            }
        }
    }
}

/// sup|φ'| of the unscaled kind.
fn kind_lipschitz(kind: ActKind) -> f64 {
    match kind {
        // SELU's derivative peaks at λα on the negative branch.
        ActKind::Selu => SELU_LAMBDA * SELU_ALPHA,
        ActKind::Tanh => 1.0,
        ActKind::Softplus => 1.0,
    }
}

/// sup|φ''| of the unscaled kind (max over both SELU branches).
fn kind_smoothness(kind: ActKind) -> f64 {
    match kind {
        ActKind::Selu => SELU_LAMBDA * SELU_ALPHA,
        // |d/dx (1 - tanh^2)| peaks at 4/(3*sqrt(3)).
        ActKind::Tanh => 4.0 / (3.0 * 3.0f64.sqrt()),
        ActKind::Softplus => 0.25,
    }
}

/// An activation kind together with a positive output multiplier.
///
/// `scale = 1` matches the experiment setting; `Activation::lipschitz_one`
/// rescales so the result is exactly 1-Lipschitz, which is what the
/// smoothness-dependent bound checks assume.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Activation {
    pub kind: ActKind,
    pub scale: Real,
}

impl Activation {
    pub fn new(kind: ActKind, scale: Real) -> Self {
        assert!(scale > 0.0, "activation scale must be positive");
        Activation { kind, scale }
    }

    pub fn unit(kind: ActKind) -> Self {
        Activation::new(kind, 1.0)
    }

    /// Same kind, rescaled so sup|φ'| = 1.
    pub fn lipschitz_one(kind: ActKind) -> Self {
        Activation::new(kind, 1.0 / kind_lipschitz(kind))
    }

    pub fn eval(&self, x: Real, order: Order) -> Real {
        self.scale * eval_kind(self.kind, x, order)
    }

    pub fn value(&self, x: Real) -> Real {
        self.eval(x, Order::Value)
    }

    pub fn deriv(&self, x: Real) -> Real {
        self.eval(x, Order::First)
    }

    pub fn value_at_zero(&self) -> Real {
        self.value(0.0)
    }

    /// Upper bound on sup|φ'| for the scaled activation.
    pub fn lipschitz_bound(&self) -> Real {
        self.scale * kind_lipschitz(self.kind)
    }

    /// Upper bound β_φ on sup|φ''| for the scaled activation.
    pub fn smoothness_bound(&self) -> Real {
        self.scale * kind_smoothness(self.kind)
    }
}

/// φ(x), φ'(x) or φ''(x) for a scaled activation; `order` must be 0, 1 or 2.
pub fn activation_eval(a: Activation, x: Real, order: u8) -> crate::Result<Real> {
    let order = Order::from_u8(order)
        .ok_or_else(|| crate::Error::InvalidArgument(format!("derivative order {order} > 2")))?;
    Ok(a.eval(x, order))
}
