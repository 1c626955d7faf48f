//! The σ/τ invariant basis of one block and the nine operator identities.

use hypspinor::exact::q;
use hypspinor::invariants::{claim_identities, invariant_basis, invariant_dim, weight_operators, InvariantTarget};
use hypspinor::BlockLabel;

fn main() -> hypspinor::Result<()> {
    let label = BlockLabel::new(2, 6);
    for t in [
        InvariantTarget::S4,
        InvariantTarget::S2,
        InvariantTarget::C4,
        InvariantTarget::C0,
    ] {
        println!("dim Hom_G(V, {t:?}) at {label} = {}", invariant_dim(label, t));
    }
    let basis = invariant_basis(label);
    println!("{} sigma and {} tau vectors", basis.sigma_count(), basis.tau_count());
    for (slot, v) in basis.present() {
        let nonzero = v.iter().filter(|x| **x != q(0)).count();
        println!("  {slot:?}: {nonzero} nonzero coordinates");
    }

    let ops = weight_operators(label)?;
    for c in claim_identities(&ops)? {
        println!("{:<28} {}", c.name, if c.holds { "holds" } else { "FAILS" });
    }
    Ok(())
}
