//! Builds the covers `G_n` of a window, multiplies them, and checks the
//! stability margins of the four-piece refinement of one product.

use selfsim_mult::ifs::{build_cover, validate_params, Window};
use selfsim_mult::numerics::{fmt_rational, rat};
use selfsim_mult::product::{product_union, refine_product};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = validate_params(&rat(1, 3), &rat(4, 9))?;
    let window = Window::upper_tail(&p);
    for n in 2..=5 {
        let g = build_cover(&p, std::slice::from_ref(&window), n)?;
        let prod = product_union(&g.union, &g.union)?;
        println!(
            "n={n}: {} codings, {} parts, measure {}, product {prod}",
            g.piece_count,
            g.union.len(),
            fmt_rational(&g.union.measure())
        );
    }
    let top = window.interval();
    let refined = refine_product(&p, &top, &top)?;
    let margins: Vec<String> = refined.margins().iter().map(fmt_rational).collect();
    println!("refinement of {top}·{top}: margins [{}], stable {}", margins.join(", "), refined.is_stable());
    Ok(())
}
