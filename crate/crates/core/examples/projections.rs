//! A deformation spectrum split into its fillable and self-dual tangent
//! parts.

use hypspinor::moduli::{bland_project, is_fillable, tangent_project, DeformationSpectrum};
use hypspinor::BlockLabel;
use num_complex::Complex64;

fn main() -> hypspinor::Result<()> {
    let s = DeformationSpectrum::from_entries(
        false,
        [
            (BlockLabel::new(0, 4), Complex64::new(1.0, 0.0)),
            (BlockLabel::new(-6, 4), Complex64::new(0.5, -0.5)),
            (BlockLabel::new(-8, 4), Complex64::new(0.0, 2.0)),
            (BlockLabel::new(2, 8), Complex64::new(-1.0, 0.0)),
        ],
    )?;
    let bland = bland_project(&s);
    let tangent = tangent_project(&s);
    println!("input    {}", s.to_json()?);
    println!("bland    {}", bland.to_json()?);
    println!("tangent  {}", tangent.to_json()?);
    println!(
        "fillable: input {}, bland part {}",
        is_fillable(&s),
        is_fillable(&bland)
    );
    Ok(())
}
