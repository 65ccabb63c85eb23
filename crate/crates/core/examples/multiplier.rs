//! Exponential-decay multipliers `φ_λ(g) = e^{-λ|g|}` acting on crossed
//! product elements, and their convergence to the identity as `λ → 0`.
//!
//! `cargo run --release --example multiplier`

use rdlab::harness::{multiplier_continuity, operator_rd_constants, verify_multiplier, HarnessOptions, TrialSpec, SupportSampler};
use rdlab::MultiplierSymbol;

fn main() -> rdlab::Result<()> {
    let opts = HarnessOptions::default();
    let spec = TrialSpec::parse("zd:2", "randperm:2:11")?
        .support(SupportSampler::BallSubset(6))
        .trials(4);
    let rd = operator_rd_constants(4.0, 1.0);
    println!("C_RD = {:.4}, s_RD = {}", rd.0, rd.1);
    for lambda in [1.0, 0.5, 0.25] {
        let phi = MultiplierSymbol::ExponentialDecay(lambda);
        let reports = verify_multiplier(&spec, 3, &phi, Some(rd), &opts)?;
        let worst = reports.iter().map(|r| r.lhs / r.rhs).fold(0.0, f64::max);
        println!("λ = {lambda}: m = {:.2}, worst lhs/rhs {worst:.2e}", phi.m_constant(rd.1)?);
    }

    let mut rng = rdlab::harness::stream(0, "example", 0);
    let x = spec.sample(&rdlab::SphereIndex::enumerate(spec.group(), 3, 100_000)?, 3, &mut rng)?;
    for (l, est) in multiplier_continuity(&x, &[2.0, 1.0, 0.5, 0.25, 0.125], &opts)? {
        println!("‖M_φ X - X‖ >= {:.6} at λ = {l}", est.value);
    }
    Ok(())
}
