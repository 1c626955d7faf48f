//! Irreducible sl₂ modules, their Casimir, and a tensor product split into
//! isotypic pieces.

use hypspinor::rep_core::{casimir, decompose, highest_weights, make_irrep, tensor_chain};

fn main() -> hypspinor::Result<()> {
    for l in 0..=6 {
        println!("C(S_{l}) = {}", casimir(&make_irrep(l))?);
    }
    let t = tensor_chain(&[1, 3, 5]);
    let mut hw = highest_weights(&decompose(&t));
    hw.sort_unstable_by(|a, b| b.cmp(a));
    println!(
        "S_1 (x) S_3 (x) S_5 = {}",
        hw.iter().map(|m| format!("S_{m}")).collect::<Vec<_>>().join(" + ")
    );
    Ok(())
}
