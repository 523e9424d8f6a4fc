//! Sparse multivariate polynomials over `CScalar`.
//!
//! Terms are held in a `BTreeMap` keyed by exponent multi-indices under
//! graded-lexicographic order, so every polynomial has one canonical
//! representation and equality is plain map equality. Zero coefficients are
//! never stored.

use crate::error::PolyError;
use crate::scalar::{CScalar, Rational};
use num_traits::Zero;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponent multi-index with graded-lexicographic ordering.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Component-wise subtraction; `None` if any component would go negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    pub fn divides(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Grading value `f · p` for a characteristic vector `f`.
    pub fn weighted(&self, weights: &[u32]) -> u64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(p, f)| *p as u64 * *f as u64)
            .sum()
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over Gaussian rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<MultiIndex, CScalar>,
}

impl MultiPoly {
    pub fn zero(vars: &[&str]) -> Self {
        MultiPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn zero_with(vars: Vec<String>) -> Self {
        MultiPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: CScalar) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(MultiIndex::zero(p.vars.len()), c);
        p
    }

    pub fn one(vars: &[&str]) -> Self {
        Self::constant(vars, CScalar::one())
    }

    /// The variable `vars[i]` as a polynomial.
    pub fn var(vars: &[&str], i: usize) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(MultiIndex::unit(p.vars.len(), i), CScalar::one());
        p
    }

    /// Single term `c * x^exp`.
    pub fn monomial(vars: &[&str], exp: &[u32], c: CScalar) -> Self {
        assert_eq!(vars.len(), exp.len());
        let mut p = Self::zero(vars);
        p.add_term(MultiIndex(exp.to_vec()), c);
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &CScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn same_vars(&self, other: &MultiPoly) -> bool {
        self.vars == other.vars
    }

    pub fn check_same_vars(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if self.same_vars(other) {
            Ok(())
        } else {
            Err(PolyError::VariableMismatch {
                left: self.vars.join(","),
                right: other.vars.join(","),
            })
        }
    }

    /// Adds `c * x^idx`, dropping the term if the sum cancels.
    pub fn add_term(&mut self, idx: MultiIndex, c: CScalar) {
        if c.is_zero() {
            return;
        }
        assert_eq!(idx.0.len(), self.vars.len());
        match self.terms.entry(idx) {
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

    pub fn coeff(&self, idx: &MultiIndex) -> CScalar {
        self.terms.get(idx).cloned().unwrap_or_else(CScalar::zero)
    }

    /// Graded-lex leading term.
    pub fn leading_term(&self) -> Option<(&MultiIndex, &CScalar)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &CScalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn deriv(&self, var: usize) -> MultiPoly {
        let mut out = MultiPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut idx = m.clone();
            idx.0[var] = e - 1;
            out.add_term(idx, c * &CScalar::from_int(e as i64));
        }
        out
    }

    /// Substitutes `replacement` for variable `var`. The replacement must be
    /// over the same variable list as the output.
    pub fn substitute(&self, var: usize, replacement: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero_with(replacement.vars.clone());
        for (m, c) in &self.terms {
            let mut factor = MultiPoly::constant(
                &replacement
                    .vars
                    .iter()
                    .map(|s| s.as_str())
                    .collect::<Vec<_>>(),
                c.clone(),
            );
            let mut pow_poly = MultiPoly::zero_with(replacement.vars.clone());
            let mut rest = MultiIndex::zero(replacement.vars.len());
            for (j, &e) in m.0.iter().enumerate() {
                if j == var {
                    continue;
                }
                let jj = replacement
                    .vars
                    .iter()
                    .position(|v| v == &self.vars[j])
                    .expect("substitute: variable not present in target list");
                rest.0[jj] += e;
            }
            pow_poly.add_term(rest, CScalar::one());
            factor = &factor * &pow_poly;
            for _ in 0..m.0[var] {
                factor = &factor * replacement;
            }
            out = &out + &factor;
        }
        out
    }

    /// Renames the variable list (arity must match).
    pub fn with_vars(&self, vars: &[&str]) -> MultiPoly {
        assert_eq!(vars.len(), self.vars.len());
        MultiPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: self.terms.clone(),
        }
    }

    /// Exact evaluation at rational-complex points.
    pub fn eval_exact(&self, point: &[CScalar]) -> CScalar {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = CScalar::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    v = &v * &point[i];
                }
            }
            acc += &v;
        }
        acc
    }

    /// Floating-point evaluation; returns (re, im).
    pub fn eval_f64(&self, point: &[(f64, f64)]) -> (f64, f64) {
        let mut acc = (0.0, 0.0);
        for (m, c) in &self.terms {
            let (mut vr, mut vi) = c.to_f64_pair();
            for (i, &e) in m.0.iter().enumerate() {
                let (pr, pi) = point[i];
                for _ in 0..e {
                    let nr = vr * pr - vi * pi;
                    let ni = vr * pi + vi * pr;
                    vr = nr;
                    vi = ni;
                }
            }
            acc.0 += vr;
            acc.1 += vi;
        }
        acc
    }

    /// Division with remainder by a single divisor under graded-lex order.
    /// Returns `(quotient, remainder)`; the remainder has no term divisible
    /// by the divisor's leading monomial.
    pub fn div_rem(&self, divisor: &MultiPoly) -> Result<(MultiPoly, MultiPoly), PolyError> {
        self.check_same_vars(divisor)?;
        let (lt_idx, lt_coef) = divisor
            .leading_term()
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or(PolyError::DivisionByZero)?;
        let mut quotient = MultiPoly::zero_with(self.vars.clone());
        let mut remainder = MultiPoly::zero_with(self.vars.clone());
        let mut work = self.clone();
        while let Some((m, c)) = work.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            if let Some(diff) = m.checked_sub(&lt_idx) {
                let q = &c / &lt_coef;
                let mut qt = MultiPoly::zero_with(self.vars.clone());
                qt.add_term(diff.clone(), q.clone());
                quotient.add_term(diff, q);
                work = &work - &(&qt * divisor);
            } else {
                remainder.add_term(m.clone(), c.clone());
                work.terms.remove(&m);
            }
        }
        Ok((quotient, remainder))
    }

    /// Exact division; errors with the nonzero remainder as a witness.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Result<MultiPoly, PolyError> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::InexactDivision {
                remainder: r.to_string(),
            })
        }
    }

    /// True if every coefficient has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }

    /// Largest exponent pattern restricted to one variable, as polynomial in
    /// the remaining ones: coefficient of `var^k`.
    pub fn coeff_of_power(&self, var: usize, k: u32) -> MultiPoly {
        let mut out = MultiPoly::zero_with(self.vars.clone());
        for (m, c) in &self.terms {
            if m.0[var] == k {
                let mut idx = m.clone();
                idx.0[var] = 0;
                out.add_term(idx, c.clone());
            }
        }
        out
    }

    /// Sets one variable to zero.
    pub fn set_var_zero(&self, var: usize) -> MultiPoly {
        self.coeff_of_power(var, 0)
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let vars: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        let mut acc = MultiPoly::one(&vars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Real part of the constant coefficient as a rational, if the
    /// polynomial is a real constant.
    pub fn as_rational_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        if m.total() == 0 && c.is_real() {
            Some(c.re.clone())
        } else {
            None
        }
    }
}

fn binop(a: &MultiPoly, b: &MultiPoly, negate: bool) -> MultiPoly {
    assert!(
        a.same_vars(b),
        "variable-list mismatch: [{}] vs [{}]",
        a.vars.join(","),
        b.vars.join(",")
    );
    let mut out = a.clone();
    for (m, c) in &b.terms {
        let c = if negate { -c } else { c.clone() };
        out.add_term(m.clone(), c);
    }
    out
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        binop(self, rhs, false)
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        binop(self, rhs, true)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert!(self.same_vars(rhs), "variable-list mismatch in mul");
        let mut out = MultiPoly::zero_with(self.vars.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.add(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 1 {
                    write!(f, "*{}", self.vars[i])?;
                } else if e > 1 {
                    write!(f, "*{}^{}", self.vars[i], e)?;
                }
            }
        }
        Ok(())
    }
}
