//! Factorizations `a = u c`, `b = c⁻¹ v` and the solution-count bound on balls.
//!
//! `cargo run --release --example property_j`

use rdlab::propj::{check_j, decompose, max_n_on_ball, measure_parameters, JParameters, VTarget};
use rdlab::Group;

fn main() -> rdlab::Result<()> {
    let budget = rdlab::budget_from_env();
    let g = Group::parse("free:2")?;
    let a = g.parse_element("x1 x2 x1")?;
    let b = g.parse_element("x1^-1 x2^-1 x2^-1")?;
    let d = decompose(&g, &a, &b)?;
    println!(
        "a = {}, b = {}: ab = {}, p = {}, u = {}, c = {}, v = {}",
        g.format_element(&a),
        g.format_element(&b),
        g.format_element(&d.g),
        d.p,
        g.format_element(&d.u),
        g.format_element(&d.c),
        g.format_element(&d.v),
    );

    let report = check_j(&g, 5, &JParameters::exact(), VTarget::Exact, budget)?;
    println!(
        "free:2 on B_5: pass = {}, {} pairs, N = {}",
        report.pass,
        report.pairs_checked,
        max_n_on_ball(&g, 5, 0.0, 0.0, budget)?
    );

    // the shifted v-target needs beta = 1 even for free groups
    let shifted = check_j(&g, 4, &JParameters::exact(), VTarget::ShiftedByOne, budget)?;
    println!("shifted target: pass = {}, beta needed = {}", shifted.pass, shifted.beta_needed);

    for spec in ["fpc:2,3", "zd:2"] {
        let h = Group::parse(spec)?;
        let p = measure_parameters(&h, 4, budget)?;
        println!(
            "{spec}: alpha {} beta {} gamma {} (mu {}, nu {}) N = {}",
            p.alpha, p.beta, p.gamma, p.mu, p.nu, p.n
        );
    }
    Ok(())
}
