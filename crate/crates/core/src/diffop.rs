//! Linear differential operators with polynomial coefficients, kept in
//! normal order: every term is `c * x^mon * d^der` with all multiplication
//! operators to the left of all derivatives. Normal order is canonical, so
//! two operators are equal iff their term maps are equal.

use crate::error::PolyError;
use crate::multipoly::{MultiIndex, MultiPoly};
use crate::scalar::CScalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// Key of one normal-ordered term: monomial exponents, then derivative orders.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct OpKey {
    pub mon: MultiIndex,
    pub der: MultiIndex,
}

/// Normal-ordered differential operator over `CScalar` coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiffOp {
    vars: Vec<String>,
    terms: BTreeMap<OpKey, CScalar>,
}

impl DiffOp {
    pub fn zero(vars: &[&str]) -> Self {
        DiffOp {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(vars: &[&str]) -> Self {
        let mut op = Self::zero(vars);
        let n = op.vars.len();
        op.add_term(MultiIndex::zero(n), MultiIndex::zero(n), CScalar::one());
        op
    }

    /// The partial derivative with respect to `vars[i]`.
    pub fn derivative(vars: &[&str], i: usize) -> Self {
        let mut op = Self::zero(vars);
        let n = op.vars.len();
        op.add_term(MultiIndex::zero(n), MultiIndex::unit(n, i), CScalar::one());
        op
    }

    /// Multiplication operator by a polynomial.
    pub fn mul_by(p: &MultiPoly) -> Self {
        let vars: Vec<String> = p.vars().to_vec();
        let n = vars.len();
        let mut terms = BTreeMap::new();
        for (m, c) in p.terms() {
            terms.insert(
                OpKey {
                    mon: m.clone(),
                    der: MultiIndex::zero(n),
                },
                c.clone(),
            );
        }
        DiffOp { vars, terms }
    }

    /// Raw term constructor `c * x^mon d^der`.
    pub fn term(vars: &[&str], mon: &[u32], der: &[u32], c: CScalar) -> Self {
        let mut op = Self::zero(vars);
        op.add_term(MultiIndex(mon.to_vec()), MultiIndex(der.to_vec()), c);
        op
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_refs(&self) -> Vec<&str> {
        self.vars.iter().map(|s| s.as_str()).collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OpKey, &CScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest total derivative order appearing in any term.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|k| k.der.total()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, mon: MultiIndex, der: MultiIndex, c: CScalar) {
        if c.is_zero() {
            return;
        }
        assert_eq!(mon.0.len(), self.vars.len());
        assert_eq!(der.0.len(), self.vars.len());
        let key = OpKey { mon, der };
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &CScalar) -> DiffOp {
        if c.is_zero() {
            return DiffOp {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        DiffOp {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn check_same_vars(&self, other: &DiffOp) -> Result<(), PolyError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(PolyError::VariableMismatch {
                left: self.vars.join(","),
                right: other.vars.join(","),
            })
        }
    }

    /// Operator composition `self ∘ rhs` (apply `rhs` first), re-normal-ordered.
    ///
    /// For each pair of terms the derivative block commutes past the monomial
    /// block via the Weyl-algebra relation
    /// `d^b x^g = sum_k C(b,k) * g!/(g-k)! * x^(g-k) d^(b-k)`
    /// applied independently per variable.
    #[allow(clippy::needless_range_loop)]
    pub fn compose(&self, rhs: &DiffOp) -> Result<DiffOp, PolyError> {
        self.check_same_vars(rhs)?;
        let nv = self.vars.len();
        let mut out = DiffOp {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                let base = ca * cb;
                // reorder d^(ka.der) x^(kb.mon)
                let caps: Vec<u32> = ka
                    .der
                    .0
                    .iter()
                    .zip(&kb.mon.0)
                    .map(|(b, g)| (*b).min(*g))
                    .collect();
                let mut k = vec![0u32; nv];
                loop {
                    let mut coef = BigRational::one();
                    for i in 0..nv {
                        coef *= BigRational::from_integer(
                            binomial(ka.der.0[i], k[i]) * falling(kb.mon.0[i], k[i]),
                        );
                    }
                    let mon: Vec<u32> = (0..nv).map(|i| ka.mon.0[i] + kb.mon.0[i] - k[i]).collect();
                    let der: Vec<u32> = (0..nv).map(|i| ka.der.0[i] - k[i] + kb.der.0[i]).collect();
                    out.add_term(
                        MultiIndex(mon),
                        MultiIndex(der),
                        &base * &CScalar::from_rational(coef),
                    );
                    // advance the multi-counter k over 0..=caps
                    let mut idx = 0;
                    loop {
                        if idx == nv {
                            break;
                        }
                        if k[idx] < caps[idx] {
                            k[idx] += 1;
                            break;
                        }
                        k[idx] = 0;
                        idx += 1;
                    }
                    if idx == nv {
                        break;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Commutator `[self, rhs] = self∘rhs - rhs∘self`.
    pub fn commutator(&self, rhs: &DiffOp) -> Result<DiffOp, PolyError> {
        let ab = self.compose(rhs)?;
        let ba = rhs.compose(self)?;
        Ok(&ab - &ba)
    }

    /// Applies the operator to a polynomial.
    pub fn apply(&self, q: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if self.vars != q.vars() {
            return Err(PolyError::VariableMismatch {
                left: self.vars.join(","),
                right: q.vars().join(","),
            });
        }
        let nv = self.vars.len();
        let mut out = MultiPoly::zero_with(self.vars.clone());
        for (key, c) in &self.terms {
            for (m, qc) in q.terms() {
                // d^der x^m = prod falling(m_i, der_i) x^(m - der), or 0
                if !key.der.divides(m) {
                    continue;
                }
                let mut coef = BigRational::one();
                for i in 0..nv {
                    coef *= BigRational::from_integer(falling(m.0[i], key.der.0[i]));
                }
                let idx: Vec<u32> = (0..nv)
                    .map(|i| m.0[i] - key.der.0[i] + key.mon.0[i])
                    .collect();
                out.add_term(MultiIndex(idx), &(c * qc) * &CScalar::from_rational(coef));
            }
        }
        Ok(out)
    }

    /// Composes the operator with itself `k` times (`k = 0` is the identity).
    pub fn pow(&self, k: u32) -> Result<DiffOp, PolyError> {
        let vars = self.var_refs();
        let mut acc = DiffOp::identity(&vars);
        for _ in 0..k {
            acc = acc.compose(self)?;
        }
        Ok(acc)
    }

    /// Polynomial coefficient standing in front of a given derivative
    /// multi-index.
    pub fn coeff_of_derivative(&self, der: &[u32]) -> MultiPoly {
        let mut out = MultiPoly::zero_with(self.vars.clone());
        for (key, c) in &self.terms {
            if key.der.0 == der {
                out.add_term(key.mon.clone(), c.clone());
            }
        }
        out
    }

    /// All derivative multi-indices present.
    pub fn derivative_support(&self) -> Vec<MultiIndex> {
        let mut set: Vec<MultiIndex> = Vec::new();
        for key in self.terms.keys() {
            if !set.contains(&key.der) {
                set.push(key.der.clone());
            }
        }
        set
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Falling factorial n (n-1) ... (n-k+1).
fn falling(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
    }
    acc
}

impl Add for &DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &DiffOp) -> DiffOp {
        assert!(self.vars == rhs.vars, "variable-list mismatch in add");
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.mon.clone(), k.der.clone(), c.clone());
        }
        out
    }
}

impl Sub for &DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &DiffOp) -> DiffOp {
        assert!(self.vars == rhs.vars, "variable-list mismatch in sub");
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.mon.clone(), k.der.clone(), -c);
        }
        out
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        self.scale(&CScalar::from_int(-1))
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (key, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for (i, &e) in key.mon.0.iter().enumerate() {
                if e == 1 {
                    write!(f, "*{}", self.vars[i])?;
                } else if e > 1 {
                    write!(f, "*{}^{}", self.vars[i], e)?;
                }
            }
            for (i, &e) in key.der.0.iter().enumerate() {
                if e == 1 {
                    write!(f, "*D{}", self.vars[i])?;
                } else if e > 1 {
                    write!(f, "*D{}^{}", self.vars[i], e)?;
                }
            }
        }
        Ok(())
    }
}
