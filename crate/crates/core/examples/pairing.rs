//! Eigenvalues of the pairing operator `Σ ρ₁(σᵢ)ρ_ℓ(σᵢ)` on `S₁ ⊗ S_ℓ`, and
//! the indicial table on `S₁ ⊗ S₃ ⊗ S_L`.

use hypspinor::radial::indicial_data;
use hypspinor::rep_core::{decompose, make_irrep, pairing_op, piece_spectrum, tensor_chain};
use hypspinor::BlockLabel;

fn main() -> hypspinor::Result<()> {
    for l in 1..=5 {
        let t = tensor_chain(&[1, l]);
        let op = pairing_op(&make_irrep(1), &make_irrep(l))?;
        for p in piece_spectrum(&t, &op, &decompose(&t))? {
            println!(
                "l = {l}: S_{} eigenvalue {} (x{})",
                p.highest_weight, p.eigenvalue, p.multiplicity
            );
        }
    }

    let data = indicial_data(BlockLabel::new(0, 8))?;
    println!("\nS_1 S_3 S_8:");
    for (mu, lambda) in &data.lambdas {
        println!("  S_{mu:<2} lambda = {lambda}");
    }
    Ok(())
}
