//! Probes for statements that are open or fail: reported, never asserted.
//!
//! `cargo run --release --example probes`

use rdlab::harness::{probe_desired, probe_mixed, summarize, HarnessOptions, SupportSampler, TrialSpec};

fn main() -> rdlab::Result<()> {
    let opts = HarnessOptions::default();
    let spec = TrialSpec::parse("free:2", "randperm:2:5")?
        .support(SupportSampler::SphereSubset(4))
        .trials(6);
    let mut reports = probe_desired(&spec, 2, 2, None, 1.0, &opts)?;
    reports.extend(probe_mixed(&spec, 2, 1.0, 2.0, &opts)?);
    println!("{}", summarize(&reports));
    for r in reports.iter().filter(|r| r.is_violation()) {
        println!("{} trial {}: lhs {:.4} > rhs {:.4} ({})", r.inequality_id, r.trial, r.lhs, r.rhs, r.note.as_deref().unwrap_or(""));
    }
    Ok(())
}
