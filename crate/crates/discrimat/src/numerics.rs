//! Floating-point elliptic layer: Eisenstein invariants g2(tau), g3(tau)
//! by q-series or truncated lattice sums, the Weierstrass function and its
//! derivatives by the Laurent recursion on a convergence-safe disc, tangent
//! hyperplanes of the quintic Weierstrass embedding, and the numeric
//! confrontation of det A with the tangent locus.
//!
//! Everything here is double precision with explicitly budgeted tolerances;
//! the defining differential equation is evaluated as a runtime oracle for
//! every Weierstrass sample.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::a4;
use crate::error::{Error, Result};
use crate::poly::{rat_to_f64, MultiPoly};
use crate::report::CheckReport;

const LAURENT_TERMS: usize = 30;
const SAFE_DISC_FACTOR: f64 = 0.45;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContextMethod {
    QSeries,
    LatticeSum,
}

/// A modulus in the upper half-plane with its computed invariants and the
/// Laurent coefficients of the Weierstrass function.
#[derive(Debug, Clone)]
pub struct EllipticContext {
    pub tau: Complex64,
    pub g2: Complex64,
    pub g3: Complex64,
    pub series_terms: usize,
    pub built_by: ContextMethod,
    shortest_lattice_vector: f64,
    laurent: Vec<Complex64>,
}

fn divisor_power_sum(k: u32, n: u64) -> f64 {
    let mut s = 0f64;
    for d in 1..=n {
        if n % d == 0 {
            s += (d as f64).powi(k as i32);
        }
    }
    s
}

/// Eisenstein sums E2, E4, E6 of the q-expansion with `terms` terms.
fn eisenstein(tau: Complex64, terms: usize) -> (Complex64, Complex64, Complex64) {
    let q = (Complex64::new(0.0, 2.0 * PI) * tau).exp();
    let mut e2 = Complex64::new(1.0, 0.0);
    let mut e4 = Complex64::new(1.0, 0.0);
    let mut e6 = Complex64::new(1.0, 0.0);
    let mut qk = Complex64::new(1.0, 0.0);
    for k in 1..=terms {
        qk *= q;
        e2 -= 24.0 * divisor_power_sum(1, k as u64) * qk;
        e4 += 240.0 * divisor_power_sum(3, k as u64) * qk;
        e6 -= 504.0 * divisor_power_sum(5, k as u64) * qk;
    }
    (e2, e4, e6)
}

fn invariants_q_series(tau: Complex64, terms: usize) -> (Complex64, Complex64) {
    let (_, e4, e6) = eisenstein(tau, terms);
    let g2 = 4.0 * PI.powi(4) / 3.0 * e4;
    let g3 = 8.0 * PI.powi(6) / 27.0 * e6;
    (g2, g3)
}

fn invariants_lattice(tau: Complex64, n: usize) -> (Complex64, Complex64) {
    let n = n as i64;
    let mut s4 = Complex64::new(0.0, 0.0);
    let mut s6 = Complex64::new(0.0, 0.0);
    for m in -n..=n {
        for k in -n..=n {
            if m == 0 && k == 0 {
                continue;
            }
            let w = Complex64::new(m as f64, 0.0) + (k as f64) * tau;
            let iw2 = 1.0 / (w * w);
            let iw4 = iw2 * iw2;
            s4 += iw4;
            s6 += iw4 * iw2;
        }
    }
    (60.0 * s4, 140.0 * s6)
}

fn shortest_vector(tau: Complex64) -> f64 {
    let mut best = f64::INFINITY;
    for m in -12i64..=12 {
        for n in -12i64..=12 {
            if m == 0 && n == 0 {
                continue;
            }
            let w = Complex64::new(m as f64, 0.0) + (n as f64) * tau;
            best = best.min(w.norm());
        }
    }
    best
}

/// Laurent coefficients c_k, k >= 2, of wp(z) = z^-2 + sum c_k z^{2k-2}:
/// c_2 = g2/20, c_3 = g3/28, and the quadratic recursion above.
fn laurent_coefficients(g2: Complex64, g3: Complex64) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(0.0, 0.0); LAURENT_TERMS + 1];
    c[2] = g2 / 20.0;
    c[3] = g3 / 28.0;
    for k in 4..=LAURENT_TERMS {
        let mut acc = Complex64::new(0.0, 0.0);
        for m in 2..=k - 2 {
            acc += c[m] * c[k - m];
        }
        c[k] = 3.0 / ((2 * k + 1) as f64 * (k - 3) as f64) * acc;
    }
    c
}

pub fn build_context(
    tau: Complex64,
    series_terms: usize,
    method: ContextMethod,
) -> Result<EllipticContext> {
    if tau.im <= 0.0 {
        return Err(Error::Domain(format!(
            "tau must lie in the upper half-plane, got im = {}",
            tau.im
        )));
    }
    if series_terms < 8 {
        return Err(Error::Domain("series_terms must be at least 8".into()));
    }
    let (g2, g3) = match method {
        ContextMethod::QSeries => invariants_q_series(tau, series_terms),
        ContextMethod::LatticeSum => invariants_lattice(tau, series_terms),
    };
    if !g2.is_finite() || !g3.is_finite() {
        return Err(Error::Domain("invariants overflowed".into()));
    }
    Ok(EllipticContext {
        tau,
        g2,
        g3,
        series_terms,
        built_by: method,
        shortest_lattice_vector: shortest_vector(tau),
        laurent: laurent_coefficients(g2, g3),
    })
}

/// Values of wp and its first four derivatives at one point.
#[derive(Debug, Clone, Copy)]
pub struct WpValues {
    pub z: Complex64,
    pub wp: Complex64,
    pub wp1: Complex64,
    pub wp2: Complex64,
    pub wp3: Complex64,
    pub wp4: Complex64,
}

impl WpValues {
    /// Residual of (wp')^2 = 4 wp^3 - g2 wp - g3, normalized by the cubic
    /// scale of the sample.
    pub fn ode_residual(&self, ctx: &EllipticContext) -> f64 {
        let lhs = self.wp1 * self.wp1;
        let rhs = 4.0 * self.wp * self.wp * self.wp - ctx.g2 * self.wp - ctx.g3;
        (lhs - rhs).norm() / self.wp.norm().powi(3).max(1.0)
    }
}

impl EllipticContext {
    pub fn safe_radius(&self) -> f64 {
        SAFE_DISC_FACTOR * self.shortest_lattice_vector
    }

    pub fn shortest_lattice_vector(&self) -> f64 {
        self.shortest_lattice_vector
    }

    /// Evaluate wp, wp', wp'', wp''' by the truncated Laurent expansion;
    /// wp'''' comes from the closed form 120 wp^3 - 18 g2 wp - 12 g3.
    pub fn wp_eval(&self, z: Complex64) -> Result<WpValues> {
        let r = z.norm();
        if r <= 1e-3 || r >= self.safe_radius() {
            return Err(Error::Domain(format!(
                "z with |z| = {r:.4} outside the safe annulus (1e-3, {:.4})",
                self.safe_radius()
            )));
        }
        let mut wp = 1.0 / (z * z);
        let mut wp1 = -2.0 / (z * z * z);
        let mut wp2 = 6.0 / (z * z * z * z);
        let mut wp3 = -24.0 / (z * z * z * z * z);
        // z^{2k-2} built incrementally from k = 2
        let z2 = z * z;
        let mut zpow = z2; // z^{2k-2} at k = 2
        for k in 2..=LAURENT_TERMS {
            let c = self.laurent[k];
            let e = (2 * k - 2) as f64;
            wp += c * zpow;
            wp1 += c * e * zpow / z;
            wp2 += c * e * (e - 1.0) * zpow / z2;
            wp3 += c * e * (e - 1.0) * (e - 2.0) * zpow / (z2 * z);
            zpow *= z2;
        }
        let wp4 = 120.0 * wp * wp * wp - 18.0 * self.g2 * wp - 12.0 * self.g3;
        Ok(WpValues {
            z,
            wp,
            wp1,
            wp2,
            wp3,
            wp4,
        })
    }
}

/// Hyperplane coefficients (s0, s2, s3, s4, s5) of the universal
/// meromorphic function of the quintic embedding.
#[derive(Debug, Clone, Copy)]
pub struct HyperplaneCoords {
    pub s0: Complex64,
    pub s2: Complex64,
    pub s3: Complex64,
    pub s4: Complex64,
    pub s5: Complex64,
}

impl HyperplaneCoords {
    pub fn as_array(&self) -> [Complex64; 5] {
        [self.s0, self.s2, self.s3, self.s4, self.s5]
    }
}

/// lambda(z) = s0 + s2 wp - 1/2 s3 wp' + 1/6 s4 wp'' - 1/24 s5 wp''' and
/// its z-derivative.
pub fn lambda_values(w: &WpValues, s: &HyperplaneCoords) -> (Complex64, Complex64) {
    let lambda = s.s0 + s.s2 * w.wp - 0.5 * s.s3 * w.wp1 + s.s4 * w.wp2 / 6.0
        - s.s5 * w.wp3 / 24.0;
    let dlambda =
        s.s2 * w.wp1 - 0.5 * s.s3 * w.wp2 + s.s4 * w.wp3 / 6.0 - s.s5 * w.wp4 / 24.0;
    (lambda, dlambda)
}

/// Solve lambda'(z) = 0 for s2 and lambda(z) = 0 for s0, given free
/// s3, s4, s5: the resulting hyperplane is tangent to the embedded curve
/// at z by construction.
pub fn tangent_hyperplane(
    ctx: &EllipticContext,
    z: Complex64,
    s3: Complex64,
    s4: Complex64,
    s5: Complex64,
) -> Result<HyperplaneCoords> {
    let w = ctx.wp_eval(z)?;
    let scale = (1.0 + w.wp.norm()).powf(1.5);
    if w.wp1.norm() <= 1e-6 * scale {
        return Err(Error::IllConditioned(format!(
            "wp'(z) = {:.3e} too small relative to scale {:.3e} (z near 2-torsion)",
            w.wp1.norm(),
            scale
        )));
    }
    let s2 = (0.5 * s3 * w.wp2 - s4 * w.wp3 / 6.0 + s5 * w.wp4 / 24.0) / w.wp1;
    let s0 = -(s2 * w.wp - 0.5 * s3 * w.wp1 + s4 * w.wp2 / 6.0 - s5 * w.wp3 / 24.0);
    Ok(HyperplaneCoords { s0, s2, s3, s4, s5 })
}

// ---------------------------------------------------------------------------
// det A as a compiled numeric evaluator
// ---------------------------------------------------------------------------

/// Polynomial over the (s0, s2, s3, s4, s5, g2, g3) table flattened to
/// float coefficients for fast repeated evaluation.
#[derive(Debug, Clone)]
struct CompiledPoly {
    terms: Vec<([u8; 7], f64)>,
}

impl CompiledPoly {
    fn compile(p: &MultiPoly) -> CompiledPoly {
        let terms = p
            .terms()
            .map(|(m, c)| {
                let mut e = [0u8; 7];
                for (i, &x) in m.exponents().iter().enumerate() {
                    e[i] = x as u8;
                }
                (e, rat_to_f64(c))
            })
            .collect();
        CompiledPoly { terms }
    }

    fn eval(&self, point: &[Complex64; 7]) -> Complex64 {
        let mut powers = [[Complex64::new(1.0, 0.0); 12]; 7];
        for (i, p) in point.iter().enumerate() {
            for e in 1..12 {
                powers[i][e] = powers[i][e - 1] * p;
            }
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (exps, c) in &self.terms {
            let mut t = Complex64::new(*c, 0.0);
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    t *= powers[i][e as usize];
                }
            }
            acc += t;
        }
        acc
    }
}

/// Compiled dual-variety equation det A with its partial derivatives and
/// the entries of A itself, ready for sampling.
#[derive(Debug, Clone)]
pub struct DualVariety {
    det: CompiledPoly,
    /// partials with respect to (s0, s2, s3, s4, s5, g2, g3)
    partials: Vec<CompiledPoly>,
    a_entries: Vec<CompiledPoly>,
    pub content_hash: String,
}

impl DualVariety {
    pub fn load(cache_dir: Option<&Path>) -> Result<DualVariety> {
        let (det, content_hash) = a4::det_a_cached(cache_dir)?;
        let partials = a4::a_table()
            .names()
            .iter()
            .map(|n| Ok(CompiledPoly::compile(&det.derivative(n)?)))
            .collect::<Result<Vec<_>>>()?;
        let a = a4::matrix_a();
        let mut a_entries = Vec::with_capacity(36);
        for i in 0..6 {
            for j in 0..6 {
                a_entries.push(CompiledPoly::compile(a.get(i, j)));
            }
        }
        Ok(DualVariety {
            det: CompiledPoly::compile(&det),
            partials,
            a_entries,
            content_hash,
        })
    }

    fn point(ctx: &EllipticContext, s: &HyperplaneCoords) -> [Complex64; 7] {
        [s.s0, s.s2, s.s3, s.s4, s.s5, ctx.g2, ctx.g3]
    }

    pub fn det_at(&self, ctx: &EllipticContext, s: &HyperplaneCoords) -> Complex64 {
        self.det.eval(&Self::point(ctx, s))
    }

    /// |det A(s)| normalized by the median of |det A| over random
    /// hyperplanes with the same coordinate magnitudes.
    pub fn residual(
        &self,
        ctx: &EllipticContext,
        s: &HyperplaneCoords,
        samples: usize,
        seed: u64,
    ) -> Result<f64> {
        let d = self.det_at(ctx, s).norm();
        let mags: Vec<f64> = s.as_array().iter().map(|c| c.norm()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut values: Vec<f64> = (0..samples.max(50))
            .map(|_| {
                let coords: Vec<Complex64> = mags
                    .iter()
                    .map(|&m| {
                        let theta = rng.gen_range(0.0..(2.0 * PI));
                        m * Complex64::new(theta.cos(), theta.sin())
                    })
                    .collect();
                let sr = HyperplaneCoords {
                    s0: coords[0],
                    s2: coords[1],
                    s3: coords[2],
                    s4: coords[3],
                    s5: coords[4],
                };
                self.det_at(ctx, &sr).norm()
            })
            .collect();
        values.sort_by(f64::total_cmp);
        let median = values[values.len() / 2];
        if !(median.is_finite() && median > 0.0) {
            return Err(Error::Domain(
                "degenerate normalization: median |det A| over random hyperplanes is 0".into(),
            ));
        }
        Ok(d / median)
    }

    /// Max entry of (grad det A) . A normalized by |grad| |A|_F, at a point
    /// on the divisor. The first gradient slot is the modulus coordinate of
    /// A, i.e. -6 g3 d/dg2 - 1/3 g2^2 d/dg3 of det A (the closed-form
    /// tau-derivatives composed with the -2 pi i rescaling of the first
    /// row of A); the remaining slots are the s-partials.
    pub fn logarithmic_residual(
        &self,
        ctx: &EllipticContext,
        s: &HyperplaneCoords,
        on_divisor_tol: f64,
        samples: usize,
        seed: u64,
    ) -> Result<f64> {
        let resid = self.residual(ctx, s, samples, seed)?;
        if resid >= on_divisor_tol {
            return Err(Error::NotOnDivisor {
                residual: resid,
                tol: on_divisor_tol,
            });
        }
        Ok(self.gradient_contraction(ctx, s))
    }

    /// The normalized contraction itself (no divisor membership check):
    /// each entry of (grad det A) . A is scaled by the gradient norm times
    /// the norm of the column it contracts with, so that random points
    /// score order 1 regardless of the disparate column scales.
    pub fn gradient_contraction(&self, ctx: &EllipticContext, s: &HyperplaneCoords) -> f64 {
        let pt = Self::point(ctx, s);
        let dg2 = self.partials[5].eval(&pt);
        let dg3 = self.partials[6].eval(&pt);
        let du = -6.0 * ctx.g3 * dg2 - ctx.g2 * ctx.g2 * dg3 / 3.0;
        let mut grad = [Complex64::new(0.0, 0.0); 6];
        grad[0] = du;
        for k in 0..5 {
            grad[k + 1] = self.partials[k].eval(&pt);
        }
        let mut a = [[Complex64::new(0.0, 0.0); 6]; 6];
        for i in 0..6 {
            for j in 0..6 {
                a[i][j] = self.a_entries[i * 6 + j].eval(&pt);
            }
        }
        let grad_norm = grad.iter().map(|g| g.norm_sqr()).sum::<f64>().sqrt();
        let mut worst = 0f64;
        for j in 0..6 {
            let mut acc = Complex64::new(0.0, 0.0);
            let mut col_norm = 0f64;
            for i in 0..6 {
                acc += grad[i] * a[i][j];
                col_norm += a[i][j].norm_sqr();
            }
            let denom = grad_norm * col_norm.sqrt();
            if denom > 0.0 {
                worst = worst.max(acc.norm() / denom);
            }
        }
        worst
    }
}

// ---------------------------------------------------------------------------
// Frobenius-Stickelberger finite differences
// ---------------------------------------------------------------------------

/// Relative errors of central finite differences of g2, g3 in tau against
/// the closed forms (3/(pi i)) g3 and (1/(6 pi i)) g2^2, at steps h and
/// h/2, together with the residuals after adding the quasi-modular
/// (Eisenstein E2) correction terms.
pub struct FsMeasurement {
    pub rel_err_g2: f64,
    pub rel_err_g3: f64,
    pub rel_err_g2_half: f64,
    pub rel_err_g3_half: f64,
    pub corrected_g2: f64,
    pub corrected_g3: f64,
    pub corrected_g2_half: f64,
    pub pi_elimination: f64,
}

pub fn fs_measure(tau: Complex64, h: f64, terms: usize) -> Result<FsMeasurement> {
    if h <= 0.0 || tau.im <= h {
        return Err(Error::Domain("need im(tau) > h > 0".into()));
    }
    let at = |t: Complex64| invariants_q_series(t, terms);
    let (g2, g3) = at(tau);
    let (e2, _, _) = eisenstein(tau, terms);
    let i = Complex64::new(0.0, 1.0);
    let closed_g2 = 3.0 / (PI * i) * g3;
    let closed_g3 = 1.0 / (6.0 * PI * i) * g2 * g2;
    let fd = |h: f64| {
        let (p2, p3) = at(tau + Complex64::new(h, 0.0));
        let (m2, m3) = at(tau - Complex64::new(h, 0.0));
        ((p2 - m2) / (2.0 * h), (p3 - m3) / (2.0 * h))
    };
    let (d2, d3) = fd(h);
    let (d2h, d3h) = fd(h / 2.0);
    let corr_g2 = closed_g2 + Complex64::new(0.0, 2.0 * PI / 3.0) * e2 * g2;
    let corr_g3 = closed_g3 + Complex64::new(0.0, PI) * e2 * g3;
    let rel = |a: Complex64, b: Complex64| (a - b).norm() / b.norm().max(f64::MIN_POSITIVE);
    // eliminating pi between the two closed forms: d2 g2^2 - 18 g3 d3
    let scale = (d2 * g2 * g2).norm().max((18.0 * g3 * d3).norm());
    let pi_elimination = (d2 * g2 * g2 - 18.0 * g3 * d3).norm() / scale;
    Ok(FsMeasurement {
        rel_err_g2: rel(d2, closed_g2),
        rel_err_g3: rel(d3, closed_g3),
        rel_err_g2_half: rel(d2h, closed_g2),
        rel_err_g3_half: rel(d3h, closed_g3),
        corrected_g2: rel(d2, corr_g2),
        corrected_g3: rel(d3, corr_g3),
        corrected_g2_half: rel(d2h, corr_g2),
        pi_elimination,
    })
}

/// Report the finite-difference comparison at tolerance `tol`. The checks
/// against the bare closed forms measure exactly what they say; the
/// `*_quasimodular` checks show that adding the E2 correction term makes
/// the same finite differences match to second order, i.e. the closed
/// forms are the modular part of the derivative, not the derivative.
pub fn frobenius_stickelberger_check(
    tau: Complex64,
    h: f64,
    terms: usize,
    tol: f64,
) -> Result<CheckReport> {
    let mut rep = CheckReport::new("frobenius_stickelberger", 0);
    let m = fs_measure(tau, h, terms)?;
    rep.assert_check(
        "fs_g2",
        m.rel_err_g2 < tol,
        format!("FD dg2/dtau vs (3/(pi i)) g3: rel err {:.3e} (tol {tol:.1e})", m.rel_err_g2),
    );
    rep.assert_check(
        "fs_g3",
        m.rel_err_g3 < tol,
        format!(
            "FD dg3/dtau vs (1/(6 pi i)) g2^2: rel err {:.3e} (tol {tol:.1e})",
            m.rel_err_g3
        ),
    );
    let ratio = m.rel_err_g2 / m.rel_err_g2_half.max(f64::MIN_POSITIVE);
    rep.assert_check(
        "fs_decay",
        (3.0..=5.0).contains(&ratio),
        format!("halving h scales the error vs the closed form by {ratio:.3} (want ~4)"),
    );
    rep.assert_check(
        "fs_pi_elimination",
        m.pi_elimination < tol,
        format!("(dg2/dtau) g2^2 - 18 g3 (dg3/dtau): normalized {:.3e}", m.pi_elimination),
    );
    let corr_ratio = m.corrected_g2 / m.corrected_g2_half.max(f64::MIN_POSITIVE);
    rep.assert_check(
        "fs_g2_quasimodular",
        m.corrected_g2 < tol,
        format!(
            "FD dg2/dtau vs closed form + (2 pi i/3) E2 g2: rel err {:.3e}",
            m.corrected_g2
        ),
    );
    rep.assert_check(
        "fs_g3_quasimodular",
        m.corrected_g3 < tol,
        format!(
            "FD dg3/dtau vs closed form + (pi i) E2 g3: rel err {:.3e}",
            m.corrected_g3
        ),
    );
    rep.assert_check(
        "fs_quasimodular_decay",
        (2.5..=6.0).contains(&corr_ratio),
        format!("halving h scales the corrected error by {corr_ratio:.3} (want ~4)"),
    );
    Ok(rep)
}

/// Parse complex literals of the form "a", "bi", "a+bi", "a-bi".
pub fn parse_complex(src: &str) -> Result<Complex64> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let err = || Error::Parse {
        pos: 0,
        msg: format!("invalid complex literal `{src}`"),
    };
    if s.is_empty() {
        return Err(err());
    }
    if !s.ends_with('i') {
        return s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| err());
    }
    let body = &s[..s.len() - 1];
    // split at the last +/- that is not leading and not an exponent sign
    let bytes = body.as_bytes();
    let mut split = None;
    for k in (1..bytes.len()).rev() {
        if (bytes[k] == b'+' || bytes[k] == b'-')
            && bytes[k - 1] != b'e'
            && bytes[k - 1] != b'E'
        {
            split = Some(k);
            break;
        }
    }
    let (re_str, im_str) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let re = if re_str.is_empty() {
        0.0
    } else {
        re_str.parse::<f64>().map_err(|_| err())?
    };
    let im = match im_str {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|_| err())?,
    };
    Ok(Complex64::new(re, im))
}

/// Uniform point in the annulus [0.15, 0.42] of the safe-disc scale.
pub fn sample_z(ctx: &EllipticContext, rng: &mut ChaCha8Rng) -> Complex64 {
    let scale = ctx.shortest_lattice_vector();
    let r = scale * rng.gen_range(0.15..0.42);
    let theta = rng.gen_range(0.0..(2.0 * PI));
    r * Complex64::new(theta.cos(), theta.sin())
}

/// Random complex with modulus in [0.5, 1.5] and uniform phase.
pub fn sample_unit(rng: &mut ChaCha8Rng) -> Complex64 {
    let r = rng.gen_range(0.5..1.5);
    let theta = rng.gen_range(0.0..(2.0 * PI));
    r * Complex64::new(theta.cos(), theta.sin())
}

/// Build a polynomial evaluation point from a context and hyperplane.
pub fn evaluation_point(
    ctx: &EllipticContext,
    s: &HyperplaneCoords,
) -> BTreeMap<String, Complex64> {
    let mut pt = BTreeMap::new();
    for (name, v) in [
        ("s0", s.s0),
        ("s2", s.s2),
        ("s3", s.s3),
        ("s4", s.s4),
        ("s5", s.s5),
        ("g2", ctx.g2),
        ("g3", ctx.g3),
    ] {
        pt.insert(name.to_string(), v);
    }
    pt
}
