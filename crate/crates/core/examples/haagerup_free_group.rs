//! Rapid-decay inequalities on F_2 with random matrix coefficients.
//!
//! `cargo run --release --example haagerup_free_group`

use rdlab::harness::{
    summarize, verify_cor62_free, verify_cor65_free, verify_hagprop, HarnessOptions, SupportSampler, TrialSpec,
};

fn main() -> rdlab::Result<()> {
    let opts = HarnessOptions::default();
    let mut reports = Vec::new();
    for action in ["trivial:1", "randperm:2:7"] {
        let spec = TrialSpec::parse("free:2", action)?.trials(5).seed(1);
        for k in 1..=2 {
            reports.extend(verify_cor62_free(&spec.clone().support(SupportSampler::SphereSubset(4)), k, &opts)?);
            reports.extend(verify_cor65_free(&spec.clone().support(SupportSampler::BallSubset(6)), k, &opts)?);
        }
        reports.extend(verify_hagprop(&spec.clone().support(SupportSampler::SphereSubset(3)), 2, 2, None, 1.0, &opts)?);
    }
    let worst = reports
        .iter()
        .max_by(|a, b| (a.lhs / a.rhs).total_cmp(&(b.lhs / b.rhs)))
        .expect("no reports");
    println!("{}", summarize(&reports));
    println!(
        "tightest: {} trial {} k = {}: lhs {:.4} rhs {:.4}",
        worst.inequality_id, worst.trial, worst.k, worst.lhs, worst.rhs
    );
    Ok(())
}
