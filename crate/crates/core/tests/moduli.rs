use num_complex::Complex64;
use proptest::prelude::*;

use hypspinor::moduli::{
    audit_report, bland_project, classify_block, constrained_solution_count, contacto_action, is_fillable,
    is_phi_admissible, kernel_dim, tangent_project, transversality_audit, DeformationSpectrum, Domain, Tag,
};
use hypspinor::BlockLabel;

fn b(k: i64, l: i64) -> BlockLabel {
    BlockLabel::new(k, l)
}

fn single(k: i64, l: i64) -> DeformationSpectrum {
    DeformationSpectrum::from_entries(false, [(b(k, l), Complex64::new(1.0, 0.5))]).unwrap()
}

#[test]
fn kernel_dimensions() {
    assert_eq!(kernel_dim(b(0, 8), Domain::Global), 9);
    assert_eq!(kernel_dim(b(6, 8), Domain::Global), 0);
    assert_eq!(kernel_dim(b(6, 8), Domain::Punctured), 9);
    assert_eq!(kernel_dim(b(13, 8), Domain::Punctured), 0);
}

#[test]
fn named_classifications() {
    assert_eq!(classify_block(b(6, 4)).tags, vec![Tag::SdTangent]);
    let c = classify_block(b(0, 8));
    assert!(c.has(Tag::HarmonicTarget) && c.has(Tag::KeFillable) && !c.has(Tag::Gauge));
    let c = classify_block(b(4, 4));
    assert!(c.has(Tag::KeFillable) && c.has(Tag::Gauge));
}

#[test]
fn contacto_actions() {
    assert!(!contacto_action(b(0, 4)).unwrap().is_zero());
    assert!(contacto_action(b(4, 4)).unwrap().is_zero());
    assert!(contacto_action(b(-6, 4)).is_err());
}

#[test]
fn projections_of_named_spectra() {
    // (6,4) carries no CR deformation in this convention; its mirror (−6,4) does.
    assert!(DeformationSpectrum::from_entries(false, [(b(6, 4), Complex64::new(1.0, 0.0))]).is_err());
    assert!(bland_project(&single(-6, 4)).is_empty());
    assert_eq!(bland_project(&single(0, 8)), single(0, 8));
    assert!(bland_project(&DeformationSpectrum::new(false)).is_empty());
    assert_eq!(tangent_project(&single(-6, 4)), single(-6, 4));
    assert_eq!(tangent_project(&single(-8, 4)), single(-8, 4));
    assert!(tangent_project(&single(0, 8)).is_empty());
}

#[test]
fn audit_examples() {
    let rep = transversality_audit(8).unwrap();
    let row = rep.rows.iter().find(|r| r.k == 0 && r.l == 8).unwrap();
    assert_eq!(
        (row.cr_deformations, row.contacto_gauge, row.harmonic_targets),
        (36, 18, 18)
    );
    assert_eq!(audit_report(20).unwrap().mismatches(), 0);

    let mut ke = Vec::new();
    let mut sd = Vec::new();
    for k in -8..=0 {
        if !is_phi_admissible(b(k, 4)) {
            continue;
        }
        let c = classify_block(b(k, 4));
        if c.has(Tag::KeFillable) {
            ke.push(k);
        }
        if c.has(Tag::SdTangent) {
            sd.push(k);
        }
    }
    assert_eq!(ke, vec![-4, -2, 0]);
    assert_eq!(sd, vec![-8, -6]);
}

#[test]
fn constrained_count_matches_kernel_per_copy() {
    for l in 1..=12 {
        for k in -(l + 4)..=(l + 4) {
            let label = b(k, l);
            if let Some(n) = constrained_solution_count(label) {
                assert_eq!(n * (l + 1) as usize, kernel_dim(label, Domain::Punctured), "{label}");
            }
        }
    }
}

fn spectrum_strategy() -> impl Strategy<Value = DeformationSpectrum> {
    prop::collection::vec((0i64..=10, 0i64..=30, -3.0f64..3.0, -3.0f64..3.0), 0..12).prop_map(|entries| {
        let mut s = DeformationSpectrum::new(false);
        for (l, j, re, im) in entries {
            let k = -l - 4 + 2 * (j % (l + 1));
            s.insert(b(k, l), Complex64::new(re, im)).unwrap();
        }
        s
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn projections_are_idempotent_and_disjoint(s in spectrum_strategy()) {
        let bl = bland_project(&s);
        let tg = tangent_project(&s);
        prop_assert_eq!(bland_project(&bl), bl.clone());
        prop_assert_eq!(tangent_project(&tg), tg.clone());
        prop_assert_eq!(bland_project(&tangent_project(&s)), tangent_project(&bland_project(&s)));
        prop_assert!(bland_project(&tg).is_empty());
        prop_assert!(is_fillable(&bl));
        // On admissible blocks the two parts account for everything.
        prop_assert_eq!(bl.len() + tg.len(), s.len());
    }

    #[test]
    fn spectrum_json_round_trip(s in spectrum_strategy()) {
        let back = DeformationSpectrum::from_json(&s.to_json().unwrap()).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn tags_partition_admissible_blocks(l in 0i64..=20, j in 0i64..=24) {
        let k = -l - 4 + 2 * (j % (l + 1));
        let c = classify_block(b(k, l));
        prop_assert!(is_phi_admissible(b(k, l)));
        prop_assert!(c.has(Tag::KeFillable) != c.has(Tag::SdTangent));
        prop_assert!(!c.has(Tag::Gauge) || c.has(Tag::KeFillable));
        prop_assert_eq!(c.has(Tag::KeFillable), k.abs() <= l);
    }
}
