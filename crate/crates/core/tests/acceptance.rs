//! Acceptance gate: twelve numbered criteria covering the whole library,
//! each printed as a single pass/fail line with its measured residuals and
//! the tolerance it is held to. The test fails if any criterion fails, but
//! always evaluates and prints all twelve first.
//!
//! Criterion 7 (displacement route vs closed-form coefficients at the edge
//! of the unit label disc) is known not to reach its target at |z| = 1.0:
//! the truncated matrix exponential at dim 64 leaves a coefficient defect
//! of about 2.2e-6 against the 1e-6 target. The line reports the measured
//! value; the criterion is evaluated faithfully rather than relaxed.

use fockstar::coherent::Family;
use fockstar::star::{
    convergence_sweep, default_grid, gap_symbol_closed_form, moyal, run_identity_suite, star,
    IdentityStatus, ValidationReport,
};
use fockstar::{gk, pk, FockOperator, FockSpace, SpectrumParams};
use num_complex::Complex64;
use std::f64::consts::TAU;

struct Gate {
    failures: Vec<usize>,
}

impl Gate {
    fn record(&mut self, number: usize, passed: bool, detail: String) {
        let verdict = if passed { "PASS" } else { "FAIL" };
        println!("criterion {number:02} [{verdict}] {detail}");
        if !passed {
            self.failures.push(number);
        }
    }
}

fn square_params() -> SpectrumParams {
    SpectrumParams::new(1.0, 4.0).unwrap()
}

fn worst_corrected(report: &ValidationReport, names: &[&str]) -> f64 {
    names
        .iter()
        .flat_map(|name| report.entries_named(name))
        .map(|e| e.corrected_residual)
        .fold(0.0, f64::max)
}

fn all_corrected_status(report: &ValidationReport, name: &str) -> bool {
    report
        .entries_named(name)
        .all(|e| e.status == IdentityStatus::Corrected)
}

fn plane_grid() -> Vec<Complex64> {
    default_grid(Family::Gk)
}

fn disc_grid() -> Vec<Complex64> {
    default_grid(Family::Pk)
}

#[test]
fn acceptance_criteria() {
    let mut gate = Gate {
        failures: Vec::new(),
    };
    let params = square_params();
    let space = FockSpace::new(64).unwrap();

    let plane_report = run_identity_suite(Family::Gk, &params, space, &plane_grid(), 1e-8).unwrap();
    let disc_report = run_identity_suite(Family::Pk, &params, space, &disc_grid(), 1e-8).unwrap();

    criterion_01(&mut gate, &params, space);
    criterion_02(&mut gate, &plane_report);
    criterion_03(&mut gate, &plane_report);
    criterion_04(&mut gate, &plane_report);
    criterion_05(&mut gate, &params, space, &plane_report);
    criterion_06(&mut gate, &params);
    criterion_07(&mut gate, &params, space);
    criterion_08(&mut gate, &params);
    criterion_09(&mut gate, &params, space, &disc_report);
    criterion_10(&mut gate, &disc_report);
    criterion_11(&mut gate);
    criterion_12(&mut gate, &params);

    assert!(
        gate.failures.is_empty(),
        "acceptance criteria failed: {:?}",
        gate.failures
    );
}

/// Plane states are eigenvectors of the lowering operator on the grid
/// |z| in {0.25, 0.5, 1, 2} x 8 angles at dim 64.
fn criterion_01(gate: &mut Gate, params: &SpectrumParams, space: FockSpace) {
    const TOL: f64 = 1e-10;
    let lower = FockOperator::lowering(params, space);
    let mut worst = 0.0f64;
    for &z in &plane_grid() {
        let st = gk::state(params, space, z).unwrap();
        let image = lower.apply(st.coeffs()).unwrap();
        let defect: f64 = image
            .iter()
            .zip(st.coeffs().iter())
            .map(|(i, c)| (i - z * c).norm_sqr())
            .sum::<f64>()
            .sqrt();
        worst = worst.max(defect);
    }
    gate.record(
        1,
        worst < TOL,
        format!("plane eigenstate defect ||(a- - z) c||: worst {worst:.3e} (tol {TOL:.0e})"),
    );
}

/// Star-product basics: unit element, pure powers, cubic-polynomial
/// factorization, and the normally ordered quadratic, all at 1e-10.
fn criterion_02(gate: &mut Gate, report: &ValidationReport) {
    const TOL: f64 = 1e-10;
    let worst = worst_corrected(
        report,
        &[
            "unit_star_unit",
            "unit_star_z",
            "unit_star_zbar",
            "z_star_cubed",
            "zbar_star_cubed",
            "holo_star_holo",
            "antiholo_star_antiholo",
            "antiholo_star_holo",
            "zbar_star_z",
        ],
    );
    gate.record(
        2,
        worst < TOL,
        format!("star-product basics incl. cubic factorization: worst {worst:.3e} (tol {TOL:.0e})"),
    );
}

/// Gap-symbol consistency: the matrix expectation matches the corrected
/// closed form at 1e-9; the printed anti-ordered relation is flagged
/// CORRECTED with its residual; the printed closed-form coefficient is
/// flagged CORRECTED away from a = 1.
fn criterion_03(gate: &mut Gate, report: &ValidationReport) {
    const TOL: f64 = 1e-9;
    let worst = worst_corrected(report, &["gap_closed_form"]);
    let sign_flagged = all_corrected_status(report, "z_star_zbar");
    let sign_paper = report
        .entries_named("z_star_zbar")
        .map(|e| e.paper_residual)
        .fold(f64::INFINITY, f64::min);

    let skew = SpectrumParams::new(2.0, 3.0).unwrap();
    let skew_report = run_identity_suite(
        Family::Gk,
        &skew,
        FockSpace::new(64).unwrap(),
        &plane_grid(),
        1e-8,
    )
    .unwrap();
    let coeff_flagged = all_corrected_status(&skew_report, "gap_closed_form");
    let coeff_paper = skew_report
        .entries_named("gap_closed_form")
        .map(|e| e.paper_residual)
        .fold(f64::INFINITY, f64::min);

    gate.record(
        3,
        worst < TOL && sign_flagged && coeff_flagged,
        format!(
            "gap symbol matrix vs corrected closed form: worst {worst:.3e} (tol {TOL:.0e}); \
             printed sign relation CORRECTED (paper residual >= {sign_paper:.3e}); \
             printed coefficient CORRECTED at (a, b) = (2, 3) (paper residual >= {coeff_paper:.3e})"
        ),
    );
}

/// Moyal bracket relations at 1e-8 and bracket antisymmetry at 1e-12.
fn criterion_04(gate: &mut Gate, report: &ValidationReport) {
    const TOL: f64 = 1e-8;
    const TOL_ANTI: f64 = 1e-12;
    let worst = worst_corrected(report, &["moyal_z_zbar", "moyal_z_gap", "moyal_zbar_gap"]);
    let anti = worst_corrected(report, &["moyal_antisymmetry"]);
    gate.record(
        4,
        worst < TOL && anti < TOL_ANTI,
        format!(
            "Moyal bracket relations: worst {worst:.3e} (tol {TOL:.0e}); \
             antisymmetry {anti:.3e} (tol {TOL_ANTI:.0e})"
        ),
    );
}

/// Worked product example: the ordered product reduces to zbar^2 z at
/// 1e-10; the bracket of the pair matches the matrix commutator expectation
/// at 1e-10; the printed bracket form is reported alongside.
fn criterion_05(
    gate: &mut Gate,
    params: &SpectrumParams,
    space: FockSpace,
    report: &ValidationReport,
) {
    const TOL: f64 = 1e-10;
    let ordered = worst_corrected(report, &["example_star_ab"]);

    let raise = FockOperator::raising(params, space);
    let lower = FockOperator::lowering(params, space);
    let number_like = &raise * &lower;
    let comm = number_like.commutator(&raise).unwrap();
    let mut bracket = 0.0f64;
    for &z in &plane_grid() {
        let ba = star(&number_like, &raise, Family::Gk, params, z).unwrap();
        let ab = star(&raise, &number_like, Family::Gk, params, z).unwrap();
        let direct = gk::state(params, space, z)
            .unwrap()
            .expectation(&comm)
            .unwrap();
        bracket = bracket.max(((ba - ab) - direct).norm());
    }
    let printed = report
        .entries_named("example_moyal")
        .map(|e| e.paper_residual)
        .fold(0.0, f64::max);

    gate.record(
        5,
        ordered < TOL && bracket < TOL,
        format!(
            "worked example: ordered product {ordered:.3e}, bracket vs commutator {bracket:.3e} \
             (tol {TOL:.0e}); printed bracket form residual up to {printed:.3e} reported"
        ),
    );
}

/// Plane-family resolution of identity: diagonal moments of the radial
/// measure for n <= 10 at relative 1e-6. Off-diagonal entries vanish
/// identically in the angular integral and need no quadrature.
fn criterion_06(gate: &mut Gate, params: &SpectrumParams) {
    const TOL: f64 = 1e-6;
    let residuals = gk::resolution_residuals(params, 10).unwrap();
    let worst = residuals.iter().fold(0.0f64, |acc, &r| acc.max(r));
    gate.record(
        6,
        worst < TOL,
        format!(
            "plane measure moments n <= 10: worst relative {worst:.3e} (tol {TOL:.0e}); \
             off-diagonals vanish by angular symmetry"
        ),
    );
}

/// Displacement-operator route vs closed-form disc coefficients at dim 64
/// for plane labels up to |z| = 1. Known not to meet 1e-6 at |z| = 1.0;
/// reported honestly.
fn criterion_07(gate: &mut Gate, params: &SpectrumParams, space: FockSpace) {
    const TOL: f64 = 1e-6;
    let mut worst = 0.0f64;
    let mut worst_at = Complex64::new(0.0, 0.0);
    for &modulus in &[0.25, 0.5, 0.75, 1.0] {
        for j in 0..8 {
            let z = Complex64::from_polar(modulus, TAU * j as f64 / 8.0);
            let via_exp = pk::displacement_state(params, space, z);
            let zeta = pk::zeta_map(params, z).unwrap();
            let closed = pk::state(params, space, zeta).unwrap();
            let diff = via_exp
                .coeffs()
                .iter()
                .zip(closed.coeffs().iter())
                .map(|(x, y)| (x - y).norm())
                .fold(0.0f64, f64::max);
            if diff > worst {
                worst = diff;
                worst_at = z;
            }
        }
    }
    gate.record(
        7,
        worst < TOL,
        format!(
            "displacement route vs closed-form disc coefficients: worst {worst:.3e} \
             at z = {worst_at} (tol {TOL:.0e})"
        ),
    );
}

/// Disc-family resolution of identity: diagonal residuals for n <= 10.
fn criterion_08(gate: &mut Gate, params: &SpectrumParams) {
    const TOL: f64 = 1e-8;
    let residuals = pk::resolution_residuals(params, 10).unwrap();
    let worst = residuals.iter().fold(0.0f64, |acc, &r| acc.max(r));
    gate.record(
        8,
        worst < TOL,
        format!("disc measure moments n <= 10: worst {worst:.3e} (tol {TOL:.0e})"),
    );
}

/// Modified ladder: label symbols at 1e-8 on the disc grid; the commutator
/// equals the defect diagonal and the shift intertwinings hold at 1e-12 on
/// the top-left (dim - 1) block.
fn criterion_09(
    gate: &mut Gate,
    params: &SpectrumParams,
    space: FockSpace,
    report: &ValidationReport,
) {
    const TOL: f64 = 1e-8;
    const TOL_BLOCK: f64 = 1e-12;
    let symbols = worst_corrected(report, &["lower_symbol", "raise_symbol"]);

    let ladder = pk::modified_ladder(params, space);
    let d0 = pk::defect_operator(params, space, 0);
    let d1 = pk::defect_operator(params, space, 1);
    let block = space.dim() - 1;
    let comm = ladder
        .lowering
        .commutator(&ladder.raising)
        .unwrap()
        .block_distance(&d0, block);
    let inter_lower = (&ladder.lowering * &d0).block_distance(&(&d1 * &ladder.lowering), block);
    let inter_raise = (&d0 * &ladder.raising).block_distance(&(&ladder.raising * &d1), block);
    let structure = comm.max(inter_lower).max(inter_raise);

    gate.record(
        9,
        symbols < TOL && structure < TOL_BLOCK,
        format!(
            "modified ladder: label symbols {symbols:.3e} (tol {TOL:.0e}); \
             commutator and intertwinings on the block {structure:.3e} (tol {TOL_BLOCK:.0e})"
        ),
    );
}

/// Disc star identities: every relation of the suite at 1e-8 with no
/// oracle-route failures; the printed defect series is compared against the
/// matrix expectation with both residuals recorded.
fn criterion_10(gate: &mut Gate, report: &ValidationReport) {
    const TOL: f64 = 1e-8;
    let worst = report.worst_corrected_residual();
    let ok = worst < TOL && report.fail_count() == 0;
    let series_paper = report
        .entries_named("defect_series_printed")
        .map(|e| e.paper_residual)
        .fold(0.0, f64::max);
    let series_corrected = worst_corrected(report, &["defect_series_printed"]);
    gate.record(
        10,
        ok,
        format!(
            "disc star identities: worst corrected {worst:.3e} (tol {TOL:.0e}); \
             printed defect series residual up to {series_paper:.3e} \
             vs corrected series {series_corrected:.3e}"
        ),
    );
}

/// Harmonic degeneration at (a, b) = (0, 1): unit ladder weight and unit
/// defect exactly, gap symbol identically one at 1e-12, suites free of
/// failures (the plane suite keeps only the printed-sign flag, the disc
/// suite passes outright), and coefficientwise continuity of both families
/// between a = 1e-6 and the a = 0 branch at 1e-4.
fn criterion_11(gate: &mut Gate) {
    const TOL_GAP: f64 = 1e-12;
    const TOL_CONT: f64 = 1e-4;
    let harmonic = SpectrumParams::new(0.0, 1.0).unwrap();
    let space = FockSpace::new(64).unwrap();

    let ladder = pk::modified_ladder(&harmonic, space);
    let weights_unit =
        (0..space.dim()).all(|n| ladder.weight(n) == 1.0 && pk::defect_value(&harmonic, n) == 1.0);

    let mut gap_dev = 0.0f64;
    for &z in &plane_grid() {
        gap_dev = gap_dev.max((gap_symbol_closed_form(&harmonic, z).unwrap() - 1.0).abs());
        let st = gk::state(&harmonic, space, z).unwrap();
        let g = FockOperator::level_gap(&harmonic, space);
        gap_dev = gap_dev.max((st.expectation(&g).unwrap() - Complex64::new(1.0, 0.0)).norm());
    }

    let plane = run_identity_suite(Family::Gk, &harmonic, space, &plane_grid(), 1e-8).unwrap();
    let disc = run_identity_suite(Family::Pk, &harmonic, space, &disc_grid(), 1e-8).unwrap();
    let suites_ok = plane.fail_count() == 0
        && plane.corrected_count() == plane_grid().len()
        && all_corrected_status(&plane, "z_star_zbar")
        && disc.fail_count() == 0
        && disc.corrected_count() == 0;

    let near = SpectrumParams::new(1e-6, 1.0).unwrap();
    let z = Complex64::new(0.5, 0.25);
    let plane_a = gk::state(&near, space, z).unwrap();
    let plane_0 = gk::state(&harmonic, space, z).unwrap();
    let mut cont = plane_a
        .coeffs()
        .iter()
        .zip(plane_0.coeffs().iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0f64, f64::max);
    let disc_a = pk::state(&near, space, pk::zeta_map(&near, z).unwrap()).unwrap();
    let disc_0 = pk::state(&harmonic, space, pk::DiscPoint::new(z).unwrap()).unwrap();
    cont = cont.max(
        disc_a
            .coeffs()
            .iter()
            .zip(disc_0.coeffs().iter())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0f64, f64::max),
    );

    gate.record(
        11,
        weights_unit && gap_dev < TOL_GAP && suites_ok && cont < TOL_CONT,
        format!(
            "harmonic limit: unit weights {}; gap symbol deviation {gap_dev:.3e} \
             (tol {TOL_GAP:.0e}); suites clean {}; continuity a = 1e-6 vs 0: {cont:.3e} \
             (tol {TOL_CONT:.0e})",
            if weights_unit { "exact" } else { "BROKEN" },
            if suites_ok { "yes" } else { "no" },
        ),
    );
}

/// Residuals are non-increasing (within a 1e-13 noise floor) as the
/// truncation doubles 16 -> 32 -> 64 at fixed grid, for both families.
fn criterion_12(gate: &mut Gate, params: &SpectrumParams) {
    const NOISE: f64 = 1e-13;
    let dims = [16usize, 32, 64];
    let mut ok = true;
    let mut detail = String::from("residual vs dim:");
    for family in [Family::Gk, Family::Pk] {
        let grid = default_grid(family);
        let sweep = convergence_sweep(family, params, &grid, &dims, 1e-8).unwrap();
        detail.push_str(&format!(" {family:?}"));
        for (dim, worst) in &sweep {
            detail.push_str(&format!(" {dim}:{worst:.2e}"));
        }
        for pair in sweep.windows(2) {
            if pair[1].1 > pair[0].1 + NOISE {
                ok = false;
            }
        }
    }
    gate.record(12, ok, detail);
}

/// The Moyal helper agrees with the two-star route; kept in the acceptance
/// target so the gate exercises the public bracket entry point directly.
#[test]
fn bracket_entry_point_consistency() {
    let params = square_params();
    let space = FockSpace::new(32).unwrap();
    let raise = FockOperator::raising(&params, space);
    let lower = FockOperator::lowering(&params, space);
    let z = Complex64::new(0.6, -0.3);
    let via_moyal = moyal(&lower, &raise, Family::Gk, &params, z).unwrap();
    let via_stars = star(&lower, &raise, Family::Gk, &params, z).unwrap()
        - star(&raise, &lower, Family::Gk, &params, z).unwrap();
    assert!((via_moyal - via_stars).norm() < 1e-13);
}
