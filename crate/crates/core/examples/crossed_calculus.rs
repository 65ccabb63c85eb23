//! Arithmetic in `M_n(C) ⋊ G`: products, adjoints, the algebraic norms and
//! element files.
//!
//! `cargo run --release --example crossed_calculus`

use std::sync::Arc;

use rdlab::crossed::format_element_file;
use rdlab::{CoeffOp, CpElement, Group, GroupAction, C64};

fn main() -> rdlab::Result<()> {
    let g = Group::parse("free:2")?;
    // x1 swaps the two basis vectors, x2 acts trivially
    let ctx = Arc::new(GroupAction::parse(&g, "perm:2:x1=(0 1)")?);
    let x1 = g.generator(0)?;
    let x2 = g.generator(1)?;
    let e11 = CoeffOp::diag(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);

    let a = CpElement::monomial(ctx.clone(), x1.clone(), e11.clone())?;
    let b = CpElement::from_terms(
        ctx.clone(),
        vec![(x1.clone(), CoeffOp::identity(2)), (x2, e11.scale(C64::new(0.0, 2.0)))],
    )?;

    // (L_g a)(L_h b) = L_gh α_{h⁻¹}(a) b
    let ab = a.product(&b)?;
    print!("a b =\n{}", format_element_file(&ab));
    let lhs = ab.adjoint();
    let rhs = b.adjoint().product(&a.adjoint())?;
    println!("|(ab)* - b* a*| = {:.1e}", lhs.max_abs_diff(&rhs));

    println!("column norm of b: {:.6}", b.column_norm()?);
    println!("row norm of b:    {:.6}", b.row_norm()?);
    println!("l2 norm of b:     {:.6}", b.l2_norm());
    println!("triangle bound:   {:.6}", b.triangle_bound());

    // products split by cancellation level
    for (p, block) in a.product_blocks(&b)? {
        println!("cancellation {p}: {} terms", block.support_len());
    }
    Ok(())
}
