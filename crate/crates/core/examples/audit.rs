//! Contactomorphism action and the real-dimension ledger of each `±K` pair.

use hypspinor::moduli::{contacto_action, transversality_audit};
use hypspinor::BlockLabel;

fn main() -> hypspinor::Result<()> {
    for (k, l) in [(0, 4), (2, 4), (4, 4), (-4, 4)] {
        let a = contacto_action(BlockLabel::new(k, l))?;
        println!(
            "({k},{l}): weight {} -> {}, scalar {}",
            a.source_weight,
            a.target_weight,
            a.scalar()
        );
    }
    let rep = transversality_audit(10)?;
    for r in &rep.rows {
        println!(
            "+-{} L={}: {} - {} = {} {}",
            r.k,
            r.l,
            r.cr_deformations,
            r.contacto_gauge,
            r.harmonic_targets,
            if r.balanced { "" } else { "UNBALANCED" }
        );
    }
    println!("mismatches: {}", rep.mismatches());
    Ok(())
}
