//! The closed function family `W(x) exp(-a x^4/4 - b x^2/2)` with polynomial
//! prefactor `W`. The family absorbs the `x^q` parity factor into `W`, so
//! differentiation stays polynomial: `d/dx` sends `W` to `W' - (a x^3 + b x) W`
//! and no `1/x` term can ever appear. Any operator with polynomial
//! coefficients in x therefore acts exactly within the family.

use super::sextic::{SexticModel, X_VAR};
use crate::diffop::DiffOp;
use crate::error::QesError;
use crate::multipoly::{MultiIndex, MultiPoly};
use crate::scalar::{CScalar, Rational};

/// `W(x) exp(-a x^4/4 - b x^2/2)`; `q` records the parity label of the model
/// the function came from.
#[derive(Clone, Debug)]
pub struct QuasiPoly {
    pub q: u8,
    pub a: Rational,
    pub b: Rational,
    w: MultiPoly,
}

impl PartialEq for QuasiPoly {
    fn eq(&self, other: &Self) -> bool {
        // Equality of the represented functions: same exponential factor and
        // the same polynomial prefactor. The parity label is bookkeeping.
        self.a == other.a && self.b == other.b && self.w == other.w
    }
}

impl QuasiPoly {
    /// Builds `x^q p(x^2) exp(...)` from a polynomial `p` in `t`.
    pub fn from_t_polynomial(q: u8, a: Rational, b: Rational, p_t: &MultiPoly) -> Self {
        assert_eq!(p_t.vars().len(), 1);
        let mut w = MultiPoly::zero(&X_VAR);
        for (m, c) in p_t.terms() {
            w.add_term(MultiIndex(vec![2 * m.0[0] + q as u32]), c.clone());
        }
        QuasiPoly { q, a, b, w }
    }

    /// Prefactor `W = 1` (times `x^q`).
    pub fn ground_prefactor(m: &SexticModel) -> Self {
        let one = MultiPoly::one(&["t"]);
        Self::from_t_polynomial(m.q, m.a.clone(), m.b.clone(), &one)
    }

    pub fn from_prefactor(q: u8, a: Rational, b: Rational, w: MultiPoly) -> Self {
        assert_eq!(w.vars(), &X_VAR);
        QuasiPoly { q, a, b, w }
    }

    pub fn prefactor(&self) -> &MultiPoly {
        &self.w
    }

    pub fn is_zero(&self) -> bool {
        self.w.is_zero()
    }

    /// Parity of the prefactor: `Some(0)` even, `Some(1)` odd, `None` mixed.
    pub fn parity(&self) -> Option<u8> {
        let mut parity: Option<u8> = None;
        for (m, _) in self.w.terms() {
            let p = (m.0[0] % 2) as u8;
            match parity {
                None => parity = Some(p),
                Some(prev) if prev != p => return None,
                _ => {}
            }
        }
        parity.or(Some(self.q % 2))
    }

    /// `-A'(x) = -(a x^3 + b x)`, the log-derivative of the exponential.
    fn log_deriv(&self) -> MultiPoly {
        let mut p = MultiPoly::zero(&X_VAR);
        p.add_term(MultiIndex(vec![3]), CScalar::from_rational(-self.a.clone()));
        p.add_term(MultiIndex(vec![1]), CScalar::from_rational(-self.b.clone()));
        p
    }

    /// Derivative within the family: `W <- W' - A' W`.
    pub fn differentiate(&self) -> Self {
        let w = &self.w.deriv(0) + &(&self.log_deriv() * &self.w);
        QuasiPoly {
            q: self.q,
            a: self.a.clone(),
            b: self.b.clone(),
            w,
        }
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> Self {
        QuasiPoly {
            q: self.q,
            a: self.a.clone(),
            b: self.b.clone(),
            w: &self.w * p,
        }
    }

    pub fn scale(&self, c: &CScalar) -> Self {
        QuasiPoly {
            q: self.q,
            a: self.a.clone(),
            b: self.b.clone(),
            w: self.w.scale(c),
        }
    }

    pub fn add(&self, other: &QuasiPoly) -> Result<Self, QesError> {
        if self.a != other.a || self.b != other.b {
            return Err(QesError::ParameterMismatch);
        }
        Ok(QuasiPoly {
            q: self.q,
            a: self.a.clone(),
            b: self.b.clone(),
            w: &self.w + &other.w,
        })
    }

    /// Float value of the full function at x.
    pub fn eval_f64(&self, x: f64) -> (f64, f64) {
        let (wr, wi) = self.w.eval_f64(&[(x, 0.0)]);
        let a = crate::scalar::rational_to_f64(&self.a);
        let b = crate::scalar::rational_to_f64(&self.b);
        let g = (-a * x.powi(4) / 4.0 - b * x * x / 2.0).exp();
        (wr * g, wi * g)
    }
}

/// Applies a polynomial-coefficient operator in x to a family member. The
/// result stays in the family exactly.
pub fn apply_to_quasipoly(op: &DiffOp, f: &QuasiPoly) -> Result<QuasiPoly, QesError> {
    if op.vars() != X_VAR {
        return Err(QesError::Poly(crate::error::PolyError::VariableMismatch {
            left: op.vars().join(","),
            right: X_VAR.join(","),
        }));
    }
    let mut acc = QuasiPoly {
        q: f.q,
        a: f.a.clone(),
        b: f.b.clone(),
        w: MultiPoly::zero(&X_VAR),
    };
    for (key, c) in op.terms() {
        let mut g = f.clone();
        for _ in 0..key.der.0[0] {
            g = g.differentiate();
        }
        let mono = MultiPoly::monomial(&X_VAR, &key.mon.0, c.clone());
        acc = acc.add(&g.mul_poly(&mono))?;
    }
    Ok(acc)
}
