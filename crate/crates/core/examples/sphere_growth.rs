//! Sphere sizes and polynomial growth fits for the built-in groups.
//!
//! `cargo run --release --example sphere_growth`

use rdlab::groups::growth_fit;
use rdlab::{Group, SphereIndex};

fn main() -> rdlab::Result<()> {
    for spec in ["free:2", "free:3", "zd:1", "zd:2", "zd:3", "fpc:2,3", "fpc:2,2"] {
        let g = Group::parse(spec)?;
        let sizes = g.sphere_sizes(8);
        let shown: Vec<String> = sizes.iter().map(u128::to_string).collect();
        println!("{spec:>8}  |C_k|, k=0..8: {}", shown.join(" "));
    }

    // exhaustive enumeration agrees with the closed forms
    let g = Group::parse("free:2")?;
    let index = SphereIndex::enumerate(&g, 6, rdlab::budget_from_env())?;
    assert_eq!(index.sizes().iter().map(|&s| s as u128).collect::<Vec<_>>(), g.sphere_sizes(6));
    println!("B_6 in F_2 has {} elements", index.len());

    for spec in ["zd:1", "zd:2", "zd:3", "free:2"] {
        let g = Group::parse(spec)?;
        let index = SphereIndex::enumerate(&g, 12, rdlab::budget_from_env())?;
        let fit = growth_fit(&index, 1e6)?;
        if fit.polynomial {
            println!("{spec:>8}  |C_k| <= {} (1+k)^{}", fit.c, fit.s);
        } else {
            println!("{spec:>8}  not polynomial on B_12");
        }
    }
    Ok(())
}
