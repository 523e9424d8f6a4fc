//! One-dimensional Schroedinger eigensolver used to cross-validate the
//! algebraic spectra, plus the numerical realization of the general gauge
//! transformation from the printed operator form `-P4 d^2 + P3 d + P2` to
//! `-d^2/dx^2 + V(x)`.
//!
//! Discretization: second-order central differences on a Dirichlet box,
//! symmetric tridiagonal matrix, eigenvalues by Sturm-sequence bisection,
//! one Richardson step (grids N and 2N) to cancel the leading h^2 error.
//! Parity sectors live on the half line with a staggered grid so the
//! Neumann/Dirichlet condition at the origin stays second order.

use crate::error::NumericError;
use crate::gl2qes::heun::HeunData;
use crate::gl2qes::sextic::SexticModel;
use crate::multipoly::MultiPoly;
use crate::scalar::rational_to_f64;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Parity {
    None,
    Even,
    Odd,
}

#[derive(Clone, Debug)]
pub struct GridSpec {
    /// Half-width L of the box [-L, L] (or [0, L] with a parity sector).
    pub half_width: f64,
    /// Interior point count; spacing is 2L/N on the full line, L/N half-line.
    pub points: usize,
    pub parity: Parity,
}

impl GridSpec {
    pub fn new(half_width: f64, points: usize, parity: Parity) -> Result<Self, NumericError> {
        if points < 64 {
            return Err(NumericError::BadGrid(format!(
                "need at least 64 points, got {points}"
            )));
        }
        if !half_width.is_finite() || half_width <= 0.0 {
            return Err(NumericError::BadGrid("half-width must be positive".into()));
        }
        Ok(GridSpec {
            half_width,
            points,
            parity,
        })
    }
}

/// A potential the solver can evaluate at any grid point.
#[allow(clippy::large_enum_variant)]
pub enum PotentialSpec {
    /// Sextic model potential, evaluated exactly then rounded.
    Sextic(SexticModel),
    /// Numeric gauge of a printed-form operator.
    HeunGauge(HeunGauge),
    /// Direct closure (used for analytic baselines such as the oscillator).
    Function(Box<dyn Fn(f64) -> f64 + Sync>),
}

impl PotentialSpec {
    pub fn value(&self, x: f64) -> Result<f64, NumericError> {
        match self {
            PotentialSpec::Sextic(m) => Ok(m.potential_at(x)),
            PotentialSpec::HeunGauge(g) => g.potential_at(x),
            PotentialSpec::Function(f) => Ok(f(x)),
        }
    }
}

/// Lowest `count` Dirichlet eigenvalues of `-d^2/dx^2 + V`, ascending,
/// Richardson-refined. Rejects requests reaching into the unreliable top of
/// the discrete spectrum and potentials that do not confine at the box edge.
pub fn eigen_1d(v: &PotentialSpec, g: &GridSpec, count: usize) -> Result<Vec<f64>, NumericError> {
    let coarse = eigen_single_grid(v, g.half_width, g.points, g.parity, count)?;
    let fine = eigen_single_grid(v, g.half_width, g.points * 2, g.parity, count)?;
    let refined: Vec<f64> = coarse
        .iter()
        .zip(&fine)
        .map(|(c, f)| (4.0 * f - c) / 3.0)
        .collect();
    // confinement check: the largest requested energy must sit below the
    // potential at the box edge, otherwise the box truncates real states
    let edge = g.half_width;
    let v_edge = v.value(edge)?;
    if let Some(&e_max) = refined.last() {
        if v_edge <= e_max {
            return Err(NumericError::NonConfining {
                x: edge,
                v: v_edge,
                e: e_max,
            });
        }
    }
    Ok(refined)
}

fn eigen_single_grid(
    v: &PotentialSpec,
    half_width: f64,
    points: usize,
    parity: Parity,
    count: usize,
) -> Result<Vec<f64>, NumericError> {
    let (diag, off) = assemble_tridiagonal(v, half_width, points, parity)?;
    let dim = diag.len();
    let reliable = (dim as f64 * 0.8) as usize;
    if count > reliable {
        return Err(NumericError::CountOutsideReliableWindow {
            count,
            reliable,
            dim,
        });
    }
    Ok(lowest_eigenvalues(&diag, &off, count))
}

fn assemble_tridiagonal(
    v: &PotentialSpec,
    half_width: f64,
    points: usize,
    parity: Parity,
) -> Result<(Vec<f64>, Vec<f64>), NumericError> {
    match parity {
        Parity::None => {
            // interior points of [-L, L], Dirichlet at both ends
            let h = 2.0 * half_width / points as f64;
            let dim = points - 1;
            let inv_h2 = 1.0 / (h * h);
            let mut diag = Vec::with_capacity(dim);
            for i in 1..points {
                let x = -half_width + i as f64 * h;
                diag.push(2.0 * inv_h2 + v.value(x)?);
            }
            Ok((diag, vec![-inv_h2; dim - 1]))
        }
        Parity::Even | Parity::Odd => {
            // staggered half-line grid x_i = (i + 1/2) h, i = 0..N-1;
            // the mirror point x_{-1} = -h/2 carries psi_{-1} = ±psi_0
            let h = half_width / points as f64;
            let inv_h2 = 1.0 / (h * h);
            let mut diag = Vec::with_capacity(points);
            for i in 0..points {
                let x = (i as f64 + 0.5) * h;
                let mut d = 2.0 * inv_h2 + v.value(x)?;
                if i == 0 {
                    match parity {
                        Parity::Even => d -= inv_h2,
                        Parity::Odd => d += inv_h2,
                        Parity::None => unreachable!(),
                    }
                }
                diag.push(d);
            }
            Ok((diag, vec![-inv_h2; points - 1]))
        }
    }
}

/// Number of eigenvalues of the symmetric tridiagonal matrix strictly below
/// `x`, by the Sturm sequence of the LDL^T recurrence.
fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0usize;
    let mut q = diag[0] - x;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..diag.len() {
        let denom = if q.abs() < 1e-300 {
            1e-300f64.copysign(if q == 0.0 { 1.0 } else { q })
        } else {
            q
        };
        q = diag[i] - x - off[i - 1] * off[i - 1] / denom;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Lowest `count` eigenvalues by bisection on the Sturm count.
fn lowest_eigenvalues(diag: &[f64], off: &[f64], count: usize) -> Vec<f64> {
    // Gershgorin bounds
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let n = diag.len();
    for i in 0..n {
        let mut r = 0.0;
        if i > 0 {
            r += off[i - 1].abs();
        }
        if i < n - 1 {
            r += off[i].abs();
        }
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let mut a = lo;
        let mut b = hi;
        for _ in 0..120 {
            let mid = 0.5 * (a + b);
            if sturm_count(diag, off, mid) > k {
                b = mid;
            } else {
                a = mid;
            }
            if (b - a).abs() <= 1e-14 * b.abs().max(a.abs()).max(1.0) {
                break;
            }
        }
        out.push(0.5 * (a + b));
    }
    out
}

// ---------------------------------------------------------------------------
// Numeric gauge of a printed-form operator
// ---------------------------------------------------------------------------

/// Numeric handle for the potential of the gauge-transformed operator
/// `-P4 d^2 + P3 d + P2`. The gauge phase satisfies
/// `A'(t) = (P3 + P4'/2) / (2 P4)` and the variable change is
/// `x(t) = branch * integral dt/sqrt(P4)` from `t_base`; the potential
/// `V = -P4 (A'' + A'^2) + P3 A' + P2` is assembled once as an exact
/// rational function of t and then evaluated at `t(x)`.
pub struct HeunGauge {
    pub branch: i8,
    pub t_base: f64,
    /// Numerator and denominator of V(t); the denominator collapses to 1
    /// whenever the division is exact (poles cancel, as in the sextic family).
    v_num: MultiPoly,
    v_den: MultiPoly,
    p4: MultiPoly,
    base_is_p4_root: bool,
}

impl HeunGauge {
    pub fn new(data: &HeunData, branch: i8, t_base: f64) -> Self {
        let p4 = data.p4.clone();
        let p3 = data.p3.clone();
        let p2 = data.p2.clone();
        let p4d = p4.deriv(0);
        // N = P3 + P4'/2
        let half = crate::scalar::CScalar::from_frac(1, 2);
        let n_poly = &p3 + &p4d.scale(&half);
        let n_deriv = n_poly.deriv(0);
        // 4 P4 V = 2 N P4' - 2 N' P4 - N^2 + 2 P3 N + 4 P2 P4
        let two = crate::scalar::CScalar::from_int(2);
        let four = crate::scalar::CScalar::from_int(4);
        let mut num = (&n_poly * &p4d).scale(&two);
        num = &num - &(&n_deriv * &p4).scale(&two);
        num = &num - &(&n_poly * &n_poly);
        num = &num + &(&p3 * &n_poly).scale(&two);
        num = &num + &(&p2 * &p4).scale(&four);
        let den = p4.scale(&four);
        let (v_num, v_den) = match num.div_exact(&den) {
            Ok(q) => (q, MultiPoly::one(&["t"])),
            Err(_) => (num, den),
        };
        let at_base = eval1(&p4, t_base);
        HeunGauge {
            branch,
            t_base,
            v_num,
            v_den,
            p4,
            base_is_p4_root: at_base.abs() < 1e-12,
        }
    }

    /// Maps x back to t and evaluates V there.
    pub fn potential_at(&self, x: f64) -> Result<f64, NumericError> {
        let t = self.invert(x)?;
        let den = eval1(&self.v_den, t);
        if den.abs() < 1e-280 {
            return Err(NumericError::QuarticVanishesOnPath { t, value: den });
        }
        Ok(eval1(&self.v_num, t) / den)
    }

    /// x(t) = branch * integral_{t_base}^{t} ds / sqrt(P4(s)).
    pub fn map_to_x(&self, t: f64) -> Result<f64, NumericError> {
        Ok(self.signed_arc(t)? * self.branch as f64)
    }

    fn arc_from_base(&self, t: f64) -> Result<f64, NumericError> {
        if self.base_is_p4_root {
            // substitute s = t_base + u^2: integrand 2u/sqrt(P4) is smooth
            let u_max = (t - self.t_base).max(0.0).sqrt();
            let p4d_base = eval1(&self.p4.deriv(0), self.t_base);
            gauss_integrate(
                |u| {
                    if u <= 1e-12 {
                        if p4d_base <= 0.0 {
                            return Err(NumericError::QuarticVanishesOnPath {
                                t: self.t_base,
                                value: p4d_base,
                            });
                        }
                        return Ok(2.0 / p4d_base.sqrt());
                    }
                    let s = self.t_base + u * u;
                    let p = eval1(&self.p4, s);
                    if p <= 0.0 {
                        return Err(NumericError::QuarticVanishesOnPath { t: s, value: p });
                    }
                    Ok(2.0 * u / p.sqrt())
                },
                0.0,
                u_max,
            )
        } else {
            gauss_integrate(
                |s| {
                    let p = eval1(&self.p4, s);
                    if p <= 0.0 {
                        return Err(NumericError::QuarticVanishesOnPath { t: s, value: p });
                    }
                    Ok(1.0 / p.sqrt())
                },
                self.t_base,
                t,
            )
        }
    }

    /// Inverts x(t) by doubling bracket growth plus bisection refinement;
    /// x(t) is strictly monotone where P4 > 0.
    fn invert(&self, x: f64) -> Result<f64, NumericError> {
        let target = x * self.branch as f64;
        if target == 0.0 {
            return Ok(self.t_base);
        }
        let dir = if target > 0.0 { 1.0 } else { -1.0 };
        if dir < 0.0 && self.base_is_p4_root {
            // nothing below a base point sitting on a root of P4
            return Err(NumericError::InversionBracketingFailure { x });
        }
        let mut step = 1.0;
        let mut t_hi = self.t_base + dir * step;
        let mut reach = self.signed_arc(t_hi)?;
        let mut guard = 0;
        while reach.abs() < target.abs() {
            step *= 2.0;
            t_hi = self.t_base + dir * step;
            reach = self.signed_arc(t_hi)?;
            guard += 1;
            if guard > 60 {
                return Err(NumericError::InversionBracketingFailure { x });
            }
        }
        let mut lo = self.t_base;
        let mut hi = t_hi;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let val = self.signed_arc(mid)?.abs();
            if val < target.abs() {
                lo = mid;
            } else {
                hi = mid;
            }
            if (hi - lo).abs() < 1e-13 * hi.abs().max(1.0) {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    fn signed_arc(&self, t: f64) -> Result<f64, NumericError> {
        if t >= self.t_base {
            self.arc_from_base(t)
        } else {
            if self.base_is_p4_root {
                return Err(NumericError::InversionBracketingFailure { x: t });
            }
            Ok(-gauss_integrate(
                |s| {
                    let p = eval1(&self.p4, s);
                    if p <= 0.0 {
                        return Err(NumericError::QuarticVanishesOnPath { t: s, value: p });
                    }
                    Ok(1.0 / p.sqrt())
                },
                t,
                self.t_base,
            )?)
        }
    }
}

/// Convenience wrapper: numeric potential of a printed-form operator at x.
pub fn potential_from_heun(
    data: &HeunData,
    x: f64,
    branch: i8,
    t_base: f64,
) -> Result<f64, NumericError> {
    HeunGauge::new(data, branch, t_base).potential_at(x)
}

fn eval1(p: &MultiPoly, t: f64) -> f64 {
    p.eval_f64(&[(t, 0.0)]).0
}

/// Composite 16-node Gauss-Legendre with interval halving until two nested
/// levels agree to 1e-13 relative.
fn gauss_integrate<F>(f: F, a: f64, b: f64) -> Result<f64, NumericError>
where
    F: Fn(f64) -> Result<f64, NumericError>,
{
    if a == b {
        return Ok(0.0);
    }
    let mut segments = 4usize;
    let mut prev = composite_gauss(&f, a, b, segments)?;
    for _ in 0..14 {
        segments *= 2;
        let cur = composite_gauss(&f, a, b, segments)?;
        if (cur - prev).abs() <= 1e-13 * cur.abs().max(1.0) {
            return Ok(cur);
        }
        prev = cur;
    }
    Ok(prev)
}

fn composite_gauss<F>(f: &F, a: f64, b: f64, segments: usize) -> Result<f64, NumericError>
where
    F: Fn(f64) -> Result<f64, NumericError>,
{
    let h = (b - a) / segments as f64;
    let mut acc = 0.0;
    for s in 0..segments {
        let lo = a + s as f64 * h;
        for (xi, wi) in GL16 {
            let x = lo + 0.5 * h * (xi + 1.0);
            acc += wi * 0.5 * h * f(x)?;
        }
    }
    Ok(acc)
}

/// 16-point Gauss-Legendre nodes/weights on [-1, 1].
const GL16: [(f64, f64); 16] = [
    (-0.9894009349916499, 0.027152459411754095),
    (-0.9445750230732326, 0.062253523938647894),
    (-0.8656312023878318, 0.09515851168249278),
    (-0.755404408355003, 0.12462897125553387),
    (-0.6178762444026438, 0.14959598881657673),
    (-0.4580167776572274, 0.16915651939500254),
    (-0.2816035507792589, 0.18260341504492358),
    (-0.0950125098376374, 0.1894506104550685),
    (0.0950125098376374, 0.1894506104550685),
    (0.2816035507792589, 0.18260341504492358),
    (0.4580167776572274, 0.16915651939500254),
    (0.6178762444026438, 0.14959598881657673),
    (0.755404408355003, 0.12462897125553387),
    (0.8656312023878318, 0.09515851168249278),
    (0.9445750230732326, 0.062253523938647894),
    (0.9894009349916499, 0.027152459411754095),
];

// ---------------------------------------------------------------------------
// Spectrum comparison
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct MatchedPair {
    pub algebraic: f64,
    pub numeric: f64,
    pub rel_error: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareReport {
    pub pairs: Vec<MatchedPair>,
    pub max_rel_error: f64,
    pub rel_tol: f64,
    pub all_matched: bool,
}

/// Greedy nearest matching of each algebraic eigenvalue to a distinct
/// numeric one. Relative error uses `max(1, |E|)` as scale so exact zero
/// eigenvalues remain comparable.
pub fn compare_spectra(algebraic: &[f64], numeric: &[f64], rel_tol: f64) -> CompareReport {
    let mut available: Vec<f64> = numeric.to_vec();
    let mut pairs = Vec::new();
    let mut max_rel = 0.0f64;
    let mut sorted: Vec<f64> = algebraic.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for &e in &sorted {
        if available.is_empty() {
            break;
        }
        let (idx, _) = available
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| (*a - e).abs().partial_cmp(&(*b - e).abs()).unwrap())
            .unwrap();
        let v = available.remove(idx);
        let rel = (v - e).abs() / e.abs().max(1.0);
        max_rel = max_rel.max(rel);
        pairs.push(MatchedPair {
            algebraic: e,
            numeric: v,
            rel_error: rel,
        });
    }
    let matched_all = pairs.len() == algebraic.len();
    CompareReport {
        pairs,
        max_rel_error: max_rel,
        rel_tol,
        all_matched: matched_all && max_rel <= rel_tol,
    }
}

/// Box size at which the sextic ground-state factor has decayed below 1e-14,
/// putting the wall-truncation error under the eigensolver tolerance.
pub fn sextic_half_width(m: &SexticModel) -> f64 {
    let a = rational_to_f64(&m.a);
    let b = rational_to_f64(&m.b);
    let target = 14.0 * std::f64::consts::LN_10 + 2.0;
    // solve a u^2/4 + b u/2 = target for u = L^2 (positive root)
    let u = if a > 0.0 {
        let disc = (b * b / 4.0 + a * target).sqrt();
        (2.0 / a) * (disc - b / 2.0)
    } else {
        2.0 * target / b
    };
    u.max(4.0).sqrt().max(2.5)
}
