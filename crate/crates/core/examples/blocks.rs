//! Dimensions, kernel dimensions and tags for a sweep of blocks.

use hypspinor::moduli::{classify_sweep, constrained_solution_count, Tag};

fn main() {
    for c in classify_sweep(6, 10) {
        if c.has(Tag::Void) || c.has(Tag::ParityEmpty) {
            continue;
        }
        println!(
            "{:>8}  S4 {} S2 {} C4 {} C0 {}  ker {:>2}/{:>2}  count {:?}  {}",
            c.label.to_string(),
            c.dims.s4,
            c.dims.s2,
            c.dims.c4,
            c.dims.c0,
            c.kernel_dim_punctured,
            c.kernel_dim_global,
            constrained_solution_count(c.label),
            c.tag_string()
        );
    }
}
