//! Assembled verification suites: everything the command-line driver (and
//! the acceptance tests) runs, with seeds and tolerances surfaced.

use std::path::{Path, PathBuf};
use std::time::Instant;

use num_complex::Complex64;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bezout::{self, Convention};
use crate::error::Result;
use crate::matrix::PolyMatrix;
use crate::numerics::{
    self, build_context, sample_unit, sample_z, tangent_hyperplane, ContextMethod, DualVariety,
    EllipticContext, HyperplaneCoords,
};
use crate::poly::MultiPoly;
use crate::report::CheckReport;
use crate::saito::{self, SaitoReport};
use crate::{a4, wp};

/// Lattice truncation used when cross-checking the q-series invariants;
/// the square-truncation tail of the slowest sum (g2) is ~2e-7 here.
pub const LATTICE_ORACLE_TERMS: usize = 600;

fn finish(mut rep: CheckReport, started: Instant) -> CheckReport {
    rep.elapsed_ms = started.elapsed().as_millis() as u64;
    rep
}

/// One degree of the Bezout battery (plus the Vandermonde identities for
/// the degrees where they are defined).
pub fn suite_bezout(n: u32, convention: Convention, seed: u64) -> Result<CheckReport> {
    let started = Instant::now();
    let mut rep = bezout::verify_section5(n, convention, 4, seed)?;
    if (2..=5).contains(&n) {
        let vrep = bezout::vandermonde_identities(n)?;
        for c in vrep.checks {
            rep.push(format!("vandermonde_{}", c.id), c.status, c.details, c.witness);
        }
    }
    Ok(finish(rep, started))
}

/// Saito certification from file contents: the polynomial text is parsed
/// against the matrix's variable table.
pub fn suite_saito(
    f_text: &str,
    matrix_json: &str,
    check_squarefree: bool,
    seed: u64,
) -> Result<SaitoReport> {
    let a = PolyMatrix::from_json(matrix_json)?;
    let f = MultiPoly::parse(f_text.trim(), a.table())?;
    saito::check_discriminant_matrix(&f, &a, check_squarefree, seed)
}

/// All exact checks of the A~4 battery: Pfaffian vanishing for M and L,
/// exactness and splitting of the coefficient maps, the structure and
/// weight bookkeeping of A, and the tangency structure of det A.
pub fn suite_a4_symbolic(cache_dir: Option<&Path>, budget: usize) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    let t0 = Instant::now();
    out.push(finish(a4::pfaffians_m_on_curve()?, t0));
    let t0 = Instant::now();
    out.push(finish(a4::pfaffians_l_on_curve()?, t0));
    let t0 = Instant::now();
    out.push(finish(a4::exactness_checks()?, t0));
    let t0 = Instant::now();
    out.push(finish(a4::verify_a_structure()?, t0));
    let t0 = Instant::now();
    let (det, hash) = a4::det_a_cached_budget(cache_dir, budget)?;
    let mut rep = a4::log_fields_divisibility(&det)?;
    rep.pass("det_a_cache", format!("det A cached, {} terms, sha256 {hash}", det.num_terms()));
    out.push(finish(rep, t0));
    Ok(out)
}

/// Tolerances of the numeric battery.
#[derive(Debug, Clone)]
pub struct NumericParams {
    pub tau: Complex64,
    pub samples: usize,
    pub terms: usize,
    pub tol: f64,
    pub fd_step: f64,
    pub seed: u64,
    pub cache_dir: Option<PathBuf>,
}

impl Default for NumericParams {
    fn default() -> Self {
        NumericParams {
            tau: Complex64::new(0.0, 1.1),
            samples: 20,
            terms: 64,
            tol: 1e-6,
            fd_step: 1e-4,
            seed: 0,
            cache_dir: None,
        }
    }
}

fn hexagonal_tau() -> Complex64 {
    Complex64::new(0.5, 3f64.sqrt() / 2.0 + 1e-2)
}

/// Contexts exercised by the separation and residual sweeps: the user's
/// tau plus fixed references, always three distinct moduli.
fn sweep_taus(user: Complex64) -> Vec<Complex64> {
    let candidates = [
        user,
        Complex64::new(0.0, 1.1),
        Complex64::new(0.3, 1.2),
        hexagonal_tau(),
    ];
    let mut taus: Vec<Complex64> = Vec::new();
    for c in candidates {
        if taus.iter().all(|t| (*t - c).norm() > 1e-12) {
            taus.push(c);
        }
        if taus.len() == 3 {
            break;
        }
    }
    taus
}

fn tangent_samples(
    ctx: &EllipticContext,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> (Vec<HyperplaneCoords>, usize) {
    let mut out = Vec::with_capacity(count);
    let mut skipped = 0usize;
    while out.len() < count && skipped < 10 * count + 100 {
        let z = sample_z(ctx, rng);
        match tangent_hyperplane(ctx, z, sample_unit(rng), sample_unit(rng), sample_unit(rng)) {
            Ok(s) => out.push(s),
            Err(_) => skipped += 1,
        }
    }
    (out, skipped)
}

/// The full numeric suite: invariant symmetries, the q-series vs lattice
/// cross-check, the differential-equation residual sweep, the
/// finite-difference derivative comparison, the tangency separation of
/// det A, and the logarithmic (gradient contraction) test on the divisor.
pub fn suite_a4_numeric(params: &NumericParams) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();

    // invariant symmetries and series cross-validation
    let t0 = Instant::now();
    let mut rep = CheckReport::new("numeric_invariants", params.seed);
    let square = build_context(Complex64::new(0.0, 1.0), params.terms, ContextMethod::QSeries)?;
    rep.assert_check(
        "g3_square_lattice",
        square.g3.norm() < 1e-10 * square.g2.norm(),
        format!("|g3(i)| = {:.3e} vs |g2(i)| = {:.3e}", square.g3.norm(), square.g2.norm()),
    );
    let hex = build_context(
        Complex64::new(0.5, 3f64.sqrt() / 2.0),
        params.terms,
        ContextMethod::QSeries,
    )?;
    rep.assert_check(
        "g2_hexagonal_lattice",
        hex.g2.norm() < 1e-10 * hex.g3.norm(),
        format!("|g2(rho)| = {:.3e} vs |g3(rho)| = {:.3e}", hex.g2.norm(), hex.g3.norm()),
    );
    let tau13 = Complex64::new(0.0, 1.3);
    let q = build_context(tau13, params.terms.max(64), ContextMethod::QSeries)?;
    let l = build_context(tau13, LATTICE_ORACLE_TERMS, ContextMethod::LatticeSum)?;
    let rel2 = (q.g2 - l.g2).norm() / q.g2.norm();
    let rel3 = (q.g3 - l.g3).norm() / q.g3.norm();
    rep.assert_check(
        "q_vs_lattice",
        rel2 < 1e-6 && rel3 < 1e-6,
        format!(
            "q-series ({} terms) vs lattice sum (|m|,|n| <= {}): rel {:.3e} / {:.3e}",
            params.terms.max(64),
            LATTICE_ORACLE_TERMS,
            rel2,
            rel3
        ),
    );
    out.push(finish(rep, t0));

    // differential-equation residual sweep over three contexts
    let t0 = Instant::now();
    let mut rep = CheckReport::new("numeric_ode", params.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed ^ 0x0de);
    let mut worst = 0f64;
    for tau in sweep_taus(params.tau) {
        let ctx = build_context(tau, params.terms, ContextMethod::QSeries)?;
        for _ in 0..100 {
            let z = sample_z(&ctx, &mut rng);
            let w = ctx.wp_eval(z)?;
            worst = worst.max(w.ode_residual(&ctx));
            let wp2_ref = 6.0 * w.wp * w.wp - ctx.g2 / 2.0;
            worst = worst.max((w.wp2 - wp2_ref).norm() / wp2_ref.norm().max(1.0));
        }
    }
    rep.assert_check(
        "ode_residual",
        worst < 1e-9,
        format!("worst normalized residual over 100 points x 3 contexts: {worst:.3e}"),
    );
    out.push(finish(rep, t0));

    // finite differences against the closed-form derivative expressions
    let t0 = Instant::now();
    let fs = numerics::frobenius_stickelberger_check(
        params.tau,
        params.fd_step,
        params.terms.max(64),
        1e-5,
    )?;
    out.push(finish(fs, t0));

    // tangency separation and logarithmic contraction
    let t0 = Instant::now();
    let mut rep = CheckReport::new("dual_variety", params.seed);
    let dv = DualVariety::load(params.cache_dir.as_deref())?;
    let mut max_tangent = 0f64;
    let mut min_random = f64::INFINITY;
    let mut max_log = 0f64;
    let mut off_log = Vec::new();
    let mut skipped_total = 0usize;
    for (k, tau) in sweep_taus(params.tau).into_iter().enumerate() {
        let ctx = build_context(tau, params.terms, ContextMethod::QSeries)?;
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed ^ (0xd0a1 + k as u64));
        let (tangents, skipped) = tangent_samples(&ctx, params.samples.max(20), &mut rng);
        skipped_total += skipped;
        for (i, s) in tangents.iter().enumerate() {
            let r = dv.residual(&ctx, s, 50, params.seed ^ (i as u64))?;
            max_tangent = max_tangent.max(r);
            if r < params.tol {
                max_log = max_log.max(dv.gradient_contraction(&ctx, s));
            }
        }
        for i in 0..50 {
            let s = HyperplaneCoords {
                s0: sample_unit(&mut rng),
                s2: sample_unit(&mut rng),
                s3: sample_unit(&mut rng),
                s4: sample_unit(&mut rng),
                s5: sample_unit(&mut rng),
            };
            let r = dv.residual(&ctx, &s, 50, params.seed ^ (777 + i as u64))?;
            min_random = min_random.min(r);
            off_log.push(dv.gradient_contraction(&ctx, &s));
        }
    }
    off_log.sort_by(f64::total_cmp);
    let median_off_log = off_log[off_log.len() / 2];
    rep.assert_check(
        "tangent_residual",
        max_tangent < params.tol,
        format!(
            "max normalized |det A| over tangent hyperplanes: {max_tangent:.3e} (tol {:.1e}, {skipped_total} samples skipped)",
            params.tol
        ),
    );
    rep.assert_check(
        "random_residual",
        min_random > 1e-2,
        format!("min normalized |det A| over random hyperplanes: {min_random:.3e} (want > 1e-2)"),
    );
    rep.assert_check(
        "separation",
        max_tangent < params.tol && params.tol <= 1e-2 && min_random > 1e-2,
        format!("strict separation {max_tangent:.3e} < {:.1e} <= 1e-2 < {min_random:.3e}", params.tol),
    );
    rep.assert_check(
        "log_tangency",
        max_log < 1e-5 && max_log > 0.0,
        format!("max normalized gradient contraction on the divisor: {max_log:.3e} (tol 1e-5)"),
    );
    rep.assert_check(
        "log_off_divisor",
        median_off_log > 1e-2,
        format!("median contraction off the divisor: {median_off_log:.3e} (order 1 expected)"),
    );
    rep.pass(
        "det_a_hash",
        format!("det A content sha256 {}", dv.content_hash),
    );
    out.push(finish(rep, t0));
    Ok(out)
}

/// Fixture checks for the saito command path itself.
pub fn suite_saito_fixtures(seed: u64) -> Result<CheckReport> {
    let started = Instant::now();
    let mut rep = CheckReport::new("saito_fixtures", seed);
    let t = crate::vars::VarTable::new(["x", "y"])?;
    let f = MultiPoly::parse("x*y", &t)?;
    let diag = PolyMatrix::new(
        2,
        2,
        vec![
            MultiPoly::parse("x", &t)?,
            MultiPoly::zero(&t),
            MultiPoly::zero(&t),
            MultiPoly::parse("y", &t)?,
        ],
    )?;
    let good = saito::check_discriminant_matrix(&f, &diag, true, seed)?;
    rep.assert_check(
        "normal_crossing",
        good.certified(),
        format!("diag(x, y) certifies x*y (scalar {:?})", good.scalar),
    );
    let t1 = crate::vars::VarTable::new(["x"])?;
    let fx = MultiPoly::parse("x", &t1)?;
    let ax = PolyMatrix::new(1, 1, vec![MultiPoly::parse("x", &t1)?])?;
    let smooth = saito::check_discriminant_matrix(&fx, &ax, true, seed)?;
    rep.assert_check("smooth_divisor", smooth.certified(), "[x] certifies x");
    let bad = saito::check_discriminant_matrix(&f, &PolyMatrix::identity(&t, 2), true, seed)?;
    rep.assert_check(
        "identity_negative",
        !bad.certified(),
        "the identity matrix does not certify x*y",
    );
    Ok(finish(rep, started))
}

/// The five Weierstrass-algebra regressions as a report.
pub fn suite_wp_formal() -> Result<CheckReport> {
    let started = Instant::now();
    let mut rep = CheckReport::new("wp_formal", 0);
    for (k, r) in wp::pfaffian_relations().iter().enumerate() {
        rep.assert_check(
            format!("relation_{}", k + 1),
            r.verify_identity(),
            format!("displayed relation {} reduces to 0", k + 1),
        );
    }
    let p2 = wp::wp_derivative(2);
    rep.assert_check(
        "wp2_closed_form",
        p2 == wp::WElement::new(
            MultiPoly::parse("6*wp^2 - 1/2*g2", &wp::w_table())?,
            MultiPoly::zero(&wp::w_table()),
        ),
        "second derivative is 6 wp^2 - g2/2",
    );
    let p3 = wp::wp_derivative(3);
    rep.assert_check(
        "wp3_closed_form",
        p3 == wp::WElement::new(
            MultiPoly::zero(&wp::w_table()),
            MultiPoly::parse("12*wp", &wp::w_table())?,
        ),
        "third derivative is 12 wp wp'",
    );
    let rel = wp::WElement::wp1()
        .mul(&wp::WElement::wp1())
        .sub(&wp::WElement::wp().pow(3).scale(&crate::poly::rat(4, 1)))
        .add(&wp::WElement::g2().mul(&wp::WElement::wp()))
        .add(&wp::WElement::g3());
    rep.assert_check(
        "defining_relation",
        rel.is_zero() && rel.d_dz().is_zero(),
        "the cubic relation reduces to 0 and is a constant of the derivation",
    );
    Ok(finish(rep, started))
}

/// Every suite in registry order, aggregated.
pub fn run_all(seed: u64, cache_dir: Option<&Path>, budget: usize) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for n in 2..=6 {
        out.push(suite_bezout(n, Convention::XMinusY, seed)?);
    }
    out.push(suite_saito_fixtures(seed)?);
    out.push(suite_wp_formal()?);
    out.extend(suite_a4_symbolic(cache_dir, budget)?);
    let params = NumericParams {
        seed,
        cache_dir: cache_dir.map(Path::to_path_buf),
        ..NumericParams::default()
    };
    out.extend(suite_a4_numeric(&params)?);
    Ok(out)
}

/// Exit-code aggregation over reports: 0 iff nothing failed.
pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(CheckReport::all_passed)
}

pub fn reports_to_json(reports: &[CheckReport]) -> String {
    serde_json::to_string_pretty(reports).expect("report serialization")
}

pub fn reports_summary(reports: &[CheckReport]) -> String {
    reports.iter().map(CheckReport::summary).collect()
}
