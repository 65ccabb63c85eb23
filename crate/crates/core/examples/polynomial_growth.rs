//! Rapid decay on Z^d: growth constants and the weighted-norm bounds.
//!
//! `cargo run --release --example polynomial_growth`

use rdlab::harness::{summarize, verify_polygrowth, verify_zprop, zprop_constant, HarnessOptions, SupportSampler, TrialSpec};

fn main() -> rdlab::Result<()> {
    let opts = HarnessOptions::default();
    println!("constant for Z: {:.4}", zprop_constant());
    let z = TrialSpec::parse("zd:1", "trivial:1")?
        .support(SupportSampler::BallSubset(8))
        .trials(10);
    let mut reports = verify_zprop(&z, 8, &opts)?;

    for action in ["trivial:1", "randperm:2:3"] {
        let spec = TrialSpec::parse("zd:2", action)?
            .support(SupportSampler::BallSubset(6))
            .trials(5)
            .seed(2);
        reports.extend(verify_polygrowth(&spec, 3, &opts)?);
    }
    println!("{}", summarize(&reports));
    Ok(())
}
