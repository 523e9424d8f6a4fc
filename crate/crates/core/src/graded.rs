//! Graded monomial spaces and restriction of operators to them.
//!
//! A `GradedSpace` is the triangular space spanned by monomials `t^p` with
//! `0 <= f·p <= n` for a characteristic vector `f` of positive integers.
//! With `d = 1` and `f = (1)` this is the space of polynomials of degree at
//! most `n`.

use crate::diffop::DiffOp;
use crate::multipoly::{MultiIndex, MultiPoly};
use crate::scalar::CScalar;

#[derive(Clone, Debug, PartialEq)]
pub struct GradedSpace {
    vars: Vec<String>,
    degree_bound: u32,
    weights: Vec<u32>,
}

/// Result of restricting an operator to a graded space: the exact matrix in
/// the monomial basis, plus the basis monomials whose image leaks outside the
/// space. Leakage is a report, not an error.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub basis: Vec<MultiIndex>,
    /// Column j holds the coordinates of `op(basis[j])`; `matrix[i][j]` is
    /// the coefficient of `basis[i]`.
    pub matrix: Vec<Vec<CScalar>>,
    /// Basis monomials mapped (partly) outside the space.
    pub leakage: Vec<MultiIndex>,
}

impl Restriction {
    pub fn preserves_space(&self) -> bool {
        self.leakage.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

impl GradedSpace {
    /// `f` must be positive and non-decreasing.
    pub fn new(vars: &[&str], degree_bound: u32, weights: &[u32]) -> Self {
        assert_eq!(vars.len(), weights.len());
        assert!(weights.iter().all(|&w| w >= 1), "weights must be positive");
        assert!(
            weights.windows(2).all(|w| w[0] <= w[1]),
            "weights must be non-decreasing"
        );
        GradedSpace {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            degree_bound,
            weights: weights.to_vec(),
        }
    }

    /// Degree-`n` polynomial space in one variable.
    pub fn poly_space(var: &str, n: u32) -> Self {
        Self::new(&[var], n, &[1])
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_refs(&self) -> Vec<&str> {
        self.vars.iter().map(|s| s.as_str()).collect()
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn contains(&self, idx: &MultiIndex) -> bool {
        idx.weighted(&self.weights) <= self.degree_bound as u64
    }

    /// Basis monomials in graded-lex order.
    pub fn basis(&self) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let d = self.vars.len();
        let mut cur = vec![0u32; d];
        loop {
            let idx = MultiIndex(cur.clone());
            if self.contains(&idx) {
                out.push(idx);
            }
            // odometer over exponents bounded by n / f_i
            let mut i = 0;
            loop {
                if i == d {
                    out.sort();
                    return out;
                }
                if (cur[i] + 1) as u64 * self.weights[i] as u64 <= self.degree_bound as u64 {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.basis().len()
    }

    pub fn basis_poly(&self, idx: &MultiIndex) -> MultiPoly {
        MultiPoly::monomial(&self.var_refs(), &idx.0, CScalar::one())
    }

    /// Exact restriction matrix of `op` with leakage report.
    pub fn restrict_matrix(&self, op: &DiffOp) -> Restriction {
        let basis = self.basis();
        let pos: std::collections::BTreeMap<&MultiIndex, usize> =
            basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let dim = basis.len();
        let mut matrix = vec![vec![CScalar::zero(); dim]; dim];
        let mut leakage = Vec::new();
        for (j, b) in basis.iter().enumerate() {
            let image = op
                .apply(&self.basis_poly(b))
                .expect("operator and space share a variable list");
            let mut leaked = false;
            for (m, c) in image.terms() {
                match pos.get(m) {
                    Some(&i) => matrix[i][j] = c.clone(),
                    None => leaked = true,
                }
            }
            if leaked {
                leakage.push(b.clone());
            }
        }
        Restriction {
            basis,
            matrix,
            leakage,
        }
    }

    /// True iff `op` maps every basis monomial to exactly zero.
    pub fn annihilated_by(&self, op: &DiffOp) -> bool {
        self.basis().iter().all(|b| {
            op.apply(&self.basis_poly(b))
                .map(|img| img.is_zero())
                .unwrap_or(false)
        })
    }
}
