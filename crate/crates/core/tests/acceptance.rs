//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use spinlab_core::codes::{
    source_density, von_neumann_entropy, AlphaFamily, CoherentCode, Encoding, SphereGrid,
};
use spinlab_core::fidelity::{
    asymptotic_table, fidelity_matched, fidelity_parallel, max_fidelity_polynomial,
    max_fidelity_rotation,
};
use spinlab_core::infogain::{info_gain_alpha, info_gain_closed, maximize_alpha};
use spinlab_core::numerics::{bessel_j0_first_zero, unitary_exp};
use spinlab_core::povm::{
    check_identity, octahedron_povm, povm_fidelity_exact, quadrature_povm, simulate,
    von_neumann_pair,
};
use spinlab_core::su2::{entanglement_entropy, overlap_sq_32, peres_generators};
use spinlab_core::{Direction, HalfInt, Ket, Result, C64};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        pass,
        detail: detail.into(),
    })
}

fn table_one() -> Result<Outcome> {
    let exact = [
        2.0 / 3.0,
        (3.0 + 3f64.sqrt()) / 6.0,
        (6.0 + 6f64.sqrt()) / 10.0,
        (5.0 + 15f64.sqrt()) / 10.0,
    ];
    let printed = [0.9114, 0.9306, 0.9429];
    let mut worst_exact = 0.0f64;
    for (i, want) in exact.iter().enumerate() {
        worst_exact = worst_exact.max((max_fidelity_rotation(i + 1)?.0 - want).abs());
    }
    let mut worst_printed = 0.0f64;
    for (i, want) in printed.iter().enumerate() {
        worst_printed = worst_printed.max((max_fidelity_rotation(i + 5)?.0 - want).abs());
    }
    outcome(
        worst_exact < 1e-12 && worst_printed < 5e-5,
        format!("N=1..4 max err {worst_exact:.2e}, N=5..7 max err {worst_printed:.2e}"),
    )
}

fn triangle() -> Result<Outcome> {
    let (mut eig_poly, mut eig_quad) = (0.0f64, 0.0f64);
    for n in 1..=12 {
        let (eig, code) = max_fidelity_rotation(n)?;
        eig_poly = eig_poly.max((eig - max_fidelity_polynomial(n)?).abs());
        eig_quad = eig_quad.max((eig - fidelity_matched(&code)?).abs());
    }
    outcome(
        eig_poly < 1e-12 && eig_quad < 1e-9,
        format!("eigen-poly {eig_poly:.2e}, eigen-quadrature {eig_quad:.2e}"),
    )
}

fn optimal_channels() -> Result<Outcome> {
    let mut worst = 0.0f64;
    for d in 2..=32usize {
        let f = fidelity_matched(&CoherentCode::with_dimension(d)?)?;
        worst = worst.max((f - d as f64 / (d as f64 + 1.0)).abs());
    }
    let mut worst_parallel = 0.0f64;
    for n in 1..=31 {
        let f = fidelity_matched(&CoherentCode::with_dimension(n + 1)?)?;
        worst_parallel = worst_parallel.max((f - fidelity_parallel(n)).abs());
    }
    outcome(
        worst < 1e-10 && worst_parallel < 1e-10,
        format!("d=2..32 max err {worst:.2e}, parallel N=1..31 max err {worst_parallel:.2e}"),
    )
}

fn two_qubit_rotation_code() -> Result<Outcome> {
    let target = (3.0 + 3f64.sqrt()) / 6.0;
    let mut values = Vec::new();
    for beta in [0.0, 0.7, FRAC_PI_2, 2.5, PI, -1.3] {
        values.push(fidelity_matched(
            &AlphaFamily::new(FRAC_PI_4, beta)?.to_state(),
        )?);
    }
    let err = values
        .iter()
        .map(|f| (f - target).abs())
        .fold(0.0, f64::max);
    let spread = values
        .iter()
        .map(|f| (f - values[0]).abs())
        .fold(0.0, f64::max);
    outcome(
        err < 1e-12 && spread < 1e-12,
        format!("max err {err:.2e}, beta spread {spread:.2e}"),
    )
}

fn povm_resolutions() -> Result<Outcome> {
    let mut worst = check_identity(&von_neumann_pair(&Direction::new(1.1, 0.4)?), 2)?;
    for n in 1..=6 {
        let p = quadrature_povm(n, n + 2, n + 2)?;
        worst = worst.max(check_identity(&p, p.dim())?);
    }
    let octa = octahedron_povm();
    worst = worst.max(check_identity(&octa, 4)?);
    let four = CoherentCode::with_dimension(4)?;
    let f = povm_fidelity_exact(&four, &octa, &SphereGrid::exact_for(four.spin()))?;
    let ferr = (f - 0.8).abs();
    outcome(
        worst < 1e-10 && ferr < 1e-12,
        format!("max identity deviation {worst:.2e}, octahedron F err {ferr:.2e}"),
    )
}

fn monte_carlo() -> Result<Outcome> {
    const SHOTS: u64 = 1_000_000;
    let qubit = CoherentCode::with_dimension(2)?;
    let pair = von_neumann_pair(&Direction::z());
    let a = simulate(&qubit, &pair, SHOTS, 2024)?;
    let four = CoherentCode::with_dimension(4)?;
    let octa = octahedron_povm();
    let b = simulate(&four, &octa, SHOTS, 2024)?;
    let b_again = simulate(&four, &octa, SHOTS, 2024)?;
    let (za, zb) = (a.z_score(2.0 / 3.0), b.z_score(0.8));
    let same = b.mean.to_bits() == b_again.mean.to_bits()
        && b.stderr.to_bits() == b_again.stderr.to_bits();
    outcome(
        za.abs() < 4.0 && zb.abs() < 4.0 && same,
        format!(
            "N=1 {:.6}+-{:.1e} (z={za:.2}), octahedron {:.6}+-{:.1e} (z={zb:.2}), reproducible={same}",
            a.mean, a.stderr, b.mean, b.stderr
        ),
    )
}

fn information_gain() -> Result<Outcome> {
    let closed = info_gain_closed(2);
    let quarter = info_gain_alpha(FRAC_PI_4, 0.0)?;
    let (alpha, gain) = maximize_alpha(1e-6)?;
    let pass = (closed - 0.9180).abs() < 5e-5
        && (quarter - 0.8664).abs() < 5e-5
        && (alpha / PI - 0.2317).abs() < 1e-3
        && (gain - 0.8729).abs() < 5e-4;
    outcome(
        pass,
        format!(
            "closed N=2 {closed:.6}, alpha=pi/4 {quarter:.6}, max {gain:.6} at alpha/pi={:.6}",
            alpha / PI
        ),
    )
}

fn asymptotics() -> Result<Outcome> {
    let xi2 = bessel_j0_first_zero()?.powi(2);
    let rows = asymptotic_table(200)?;
    let increasing = rows.windows(2).all(|w| w[1].fidelity > w[0].fidelity);
    let last = rows.last().expect("nonempty table").scaled_gap;
    let rel = (last - xi2).abs() / xi2;
    outcome(
        increasing && rel < 0.03,
        format!(
            "N=200 gap {last:.5} vs xi^2 {xi2:.5} ({:.2}%), increasing={increasing}",
            100.0 * rel
        ),
    )
}

fn structure() -> Result<Outcome> {
    let [gx, gy, gz] = peres_generators();
    let i = C64::i();
    let comm = [
        (&gx * &gy - &gy * &gx - &gz * i).norm(),
        (&gy * &gz - &gz * &gy - &gx * i).norm(),
        (&gz * &gx - &gx * &gz - &gy * i).norm(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    let casimir = &gx * &gx + &gy * &gy + &gz * &gz;
    let cas = (casimir - spinlab_core::CMatrix::identity(4, 4).scale(3.75)).norm();

    let mut up_up = Ket::zeros(4);
    up_up[0] = C64::new(1.0, 0.0);
    let half = entanglement_entropy(&(unitary_exp(&gy, PI)? * &up_up))?;
    let quarter = entanglement_entropy(&(unitary_exp(&gy, FRAC_PI_2)? * &up_up))?;

    let entropy = |code: &dyn Encoding| -> Result<f64> {
        let grid = SphereGrid::exact_for(code.space().max_spin());
        Ok(von_neumann_entropy(&source_density(code, &grid)?))
    };
    let mixed = AlphaFamily::new(FRAC_PI_4, 0.0)?.to_state();
    let entropies = [
        (entropy(&CoherentCode::with_dimension(2)?)?, 1.0),
        (entropy(&CoherentCode::with_dimension(3)?)?, 3f64.log2()),
        (entropy(&CoherentCode::with_dimension(4)?)?, 2.0),
        (entropy(&mixed)?, 1.0 + 0.5 * 3f64.log2()),
    ];
    let ent_err = entropies
        .iter()
        .map(|(g, w)| (g - w).abs())
        .fold(0.0, f64::max);
    outcome(
        comm < 1e-13 && cas < 1e-13 && half < 1e-10 && quarter > 0.01 && ent_err < 1e-8,
        format!(
            "commutators {comm:.1e}, casimir {cas:.1e}, S(pi) {half:.1e}, S(pi/2) {quarter:.4}, source entropies {ent_err:.1e}"
        ),
    )
}

fn monotonicity() -> Result<Outcome> {
    let grid: Vec<f64> = (0..1000).map(|i| -1.0 + 2.0 * i as f64 / 999.0).collect();
    let top = grid
        .iter()
        .map(|&c| overlap_sq_32(c, HalfInt::THREE_HALVES))
        .collect::<Result<Vec<_>>>()?;
    let low = grid
        .iter()
        .map(|&c| overlap_sq_32(c, HalfInt::HALF))
        .collect::<Result<Vec<_>>>()?;
    let top_increasing = top.windows(2).all(|w| w[1] > w[0]);
    let low_monotone = low.windows(2).all(|w| w[1] >= w[0]) || low.windows(2).all(|w| w[1] <= w[0]);
    let zero = overlap_sq_32(1.0 / 3.0, HalfInt::HALF)?.abs();
    outcome(
        top_increasing && !low_monotone && zero < 1e-12,
        format!("S_n=3/2 increasing={top_increasing}, S_n=1/2 monotone={low_monotone}, value at 1/3 {zero:.1e}"),
    )
}

type Check = fn() -> Result<Outcome>;

fn main() -> ExitCode {
    let criteria: [(&str, Check, Option<Duration>); 10] = [
        (
            "1 maximal fidelity table",
            table_one,
            Some(Duration::from_secs(1)),
        ),
        (
            "2 equivalence triangle",
            triangle,
            Some(Duration::from_secs(30)),
        ),
        ("3 optimal-channel fidelities", optimal_channels, None),
        ("4 two-qubit rotation code", two_qubit_rotation_code, None),
        ("5 POVM identity resolutions", povm_resolutions, None),
        ("6 Monte Carlo", monte_carlo, Some(Duration::from_secs(60))),
        ("7 information gain", information_gain, None),
        ("8 asymptotics", asymptotics, None),
        ("9 structure checks", structure, None),
        ("10 monotonicity criterion", monotonicity, None),
    ];
    let mut failures = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (pass, detail) = match result {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let in_time = limit.is_none_or(|l| elapsed <= l);
        let pass = pass && in_time;
        if !pass {
            failures += 1;
        }
        let budget = limit
            .map(|l| format!(" / limit {} s", l.as_secs()))
            .unwrap_or_default();
        println!(
            "[{}] {name}: {detail} ({:.3} s{budget})",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    println!("{} of 10 criteria passed", 10 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
