//! Lower bounds for operator norms from finite compressions, compared with
//! closed forms.
//!
//! `cargo run --release --example norm_estimates`

use std::f64::consts::PI;
use std::sync::Arc;

use rdlab::repnorm::{norm_exact_small, norm_lower, norm_lower_pi};
use rdlab::{CpElement, Group, GroupAction, NormOptions, C64};

fn main() -> rdlab::Result<()> {
    let opts = NormOptions { tol: 1e-10, ..NormOptions::default() };

    // on Z, L_1 + L_-1 has norm 2; the compression to [-R, R] gives 2cos(π/(2R+2))
    let z = Group::parse("zd:1")?;
    let ctx = Arc::new(GroupAction::trivial(&z, 1)?);
    let one = C64::new(1.0, 0.0);
    let shift = CpElement::group_ring(
        ctx,
        [(z.parse_element("(1)")?, one), (z.parse_element("(-1)")?, one)],
    )?;
    for r in [5, 10, 20, 40] {
        let est = norm_lower(&shift, r, &opts)?;
        println!("Z, R = {r:>2}: {:.10}  closed form {:.10}", est.value, 2.0 * (PI / (2.0 * r as f64 + 2.0)).cos());
    }

    // on F_2 the sum of the generators and their inverses has norm 2√3
    let f2 = Group::parse("free:2")?;
    let ctx = Arc::new(GroupAction::trivial(&f2, 1)?);
    let gens = CpElement::group_ring(ctx, f2.letters().into_iter().map(|l| (f2.from_letters(&[l]).unwrap(), one)))?;
    for r in [4, 7, 10] {
        let est = norm_lower(&gens, r, &opts)?;
        let hist: Vec<String> = est.monotone_history.iter().map(|h| format!("{}:{:.5}", h.radius, h.value)).collect();
        println!("F_2, R = {r:>2}: {:.6} (dim {}, history {})", est.value, est.dim, hist.join(" "));
    }
    println!("limit 2√3 = {:.6}, triangle bound {}", 2.0 * 3f64.sqrt(), gens.triangle_bound());

    let small = norm_exact_small(&gens, 4)?;
    println!("dense check at R = 4: {:.10}", small.value);
    println!("π-norm lower bound:   {:.6}", norm_lower_pi(&gens, &[gens.adjoint()])?);
    Ok(())
}
