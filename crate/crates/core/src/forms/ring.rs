use serde::{Deserialize, Serialize};

use super::BinaryCubic;
use crate::scalar::Scalar;

/// Multiplication table of the cubic ring with basis `(1, ω₁, ω₂)`:
/// each product is stored as its coordinates in that basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingTable<S> {
    pub w1w2: [S; 3],
    pub w1w1: [S; 3],
    pub w2w2: [S; 3],
}

impl<S: Scalar> RingTable<S> {
    /// `ω₁ω₂ = −ad`, `ω₁² = −ac − bω₁ + aω₂`, `ω₂² = −bd − dω₁ + cω₂`.
    pub fn from_form(f: &BinaryCubic<S>) -> Self {
        let (a, b, c, d) = (&f.a, &f.b, &f.c, &f.d);
        RingTable {
            w1w2: [-(a.clone() * d.clone()), S::zero(), S::zero()],
            w1w1: [-(a.clone() * c.clone()), -b.clone(), a.clone()],
            w2w2: [-(b.clone() * d.clone()), -d.clone(), c.clone()],
        }
    }

    /// Product of two ring elements given in the basis `(1, ω₁, ω₂)`.
    pub fn multiply(&self, x: &[S; 3], y: &[S; 3]) -> [S; 3] {
        let mut out = [
            x[0].clone() * y[0].clone(),
            x[0].clone() * y[1].clone() + x[1].clone() * y[0].clone(),
            x[0].clone() * y[2].clone() + x[2].clone() * y[0].clone(),
        ];
        let mut add = |coef: S, table: &[S; 3]| {
            for k in 0..3 {
                out[k] = out[k].clone() + coef.clone() * table[k].clone();
            }
        };
        add(x[1].clone() * y[1].clone(), &self.w1w1);
        add(x[2].clone() * y[2].clone(), &self.w2w2);
        add(x[1].clone() * y[2].clone() + x[2].clone() * y[1].clone(), &self.w1w2);
        out
    }
}
