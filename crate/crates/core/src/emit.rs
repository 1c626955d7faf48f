//! Flat records behind every table the command-line tool prints, and their
//! JSON and CSV renderings.  Rows are emitted sorted by `(L, K)`.

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::config::Format;
use crate::error::Result;
use crate::exact::format_q;
use crate::invariants::sigma1_pairing_spectrum;
use crate::invariants::BlockLabel;
use crate::moduli::{BlockClassification, DeformationSpectrum, SpectrumRecord};
use crate::radial::{critical_weights, dirac_sq_order0_spectrum, indicial_data, RadialProfile};
use crate::special_fn::{c_infinity, c_infinity_formula, BoundaryValue};
use crate::verify::Report;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockRow {
    #[serde(rename = "K")]
    pub k: i64,
    #[serde(rename = "L")]
    pub l: i64,
    pub dim_s4: usize,
    pub dim_s2: usize,
    pub dim_c4: usize,
    pub dim_c0: usize,
    pub kernel_punctured: usize,
    pub kernel_global: usize,
    pub tags: String,
}

impl From<&BlockClassification> for BlockRow {
    fn from(c: &BlockClassification) -> Self {
        BlockRow {
            k: c.label.k,
            l: c.label.l,
            dim_s4: c.dims.s4,
            dim_s2: c.dims.s2,
            dim_c4: c.dims.c4,
            dim_c0: c.dims.c0,
            kernel_punctured: c.kernel_dim_punctured,
            kernel_global: c.kernel_dim_global,
            tags: c.tag_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialRow {
    pub r: f64,
    pub a4: f64,
    pub a2: f64,
    pub a0: f64,
    pub a_neg2: f64,
    pub a_neg4: f64,
    pub dirac_residual: f64,
    pub constraint_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialTable {
    #[serde(rename = "K")]
    pub k: i64,
    #[serde(rename = "L")]
    pub l: i64,
    pub c_inf: String,
    pub amplitude: f64,
    pub rows: Vec<RadialRow>,
}

impl RadialTable {
    pub fn new(profile: &RadialProfile, amplitude: f64) -> Result<Self> {
        let rows = profile
            .r
            .iter()
            .enumerate()
            .map(|(i, &r)| {
                let w = profile.components[i];
                RadialRow {
                    r,
                    a4: w[0],
                    a2: w[1],
                    a0: w[2],
                    a_neg2: w[3],
                    a_neg4: w[4],
                    dirac_residual: profile.dirac_residual[i],
                    constraint_residual: profile.constraint_residual[i],
                }
            })
            .collect();
        Ok(RadialTable {
            k: profile.label.k,
            l: profile.label.l,
            c_inf: format_q(&c_infinity(profile.label)?),
            amplitude,
            rows,
        })
    }

    /// First line of the CSV form, ahead of the column header.
    pub fn csv_preamble(&self) -> String {
        format!(
            "# block ({},{}) c_inf {} A4 {}",
            self.k, self.l, self.c_inf, self.amplitude
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryRecord {
    #[serde(rename = "K")]
    pub k: i64,
    #[serde(rename = "L")]
    pub l: i64,
    pub c_inf: String,
    pub c_inf_formula: String,
    pub c_inf_f64: f64,
    pub c_inf_numeric: f64,
    pub relative_error: f64,
    /// `s∞` on the weight `+4` line.
    pub s_inf_p4: f64,
    /// `s∞` on the weight `−4` line.
    pub s_inf_m4: f64,
    pub leakage: f64,
    pub top_eigenvalue: String,
    pub top_eigenspace_dim: usize,
    pub in_top_eigenspace: bool,
}

impl BoundaryRecord {
    pub fn new(v: &BoundaryValue) -> Result<Self> {
        let s = sigma1_pairing_spectrum();
        Ok(BoundaryRecord {
            k: v.label.k,
            l: v.label.l,
            c_inf: format_q(&v.c_inf),
            c_inf_formula: c_infinity_formula(v.label)?,
            c_inf_f64: v.c_inf_f64,
            c_inf_numeric: v.c_inf_numeric,
            relative_error: v.relative_error,
            s_inf_p4: v.s_inf[0],
            s_inf_m4: v.s_inf[1],
            leakage: v.leakage,
            top_eigenvalue: format_q(&s.max_eigenvalue),
            top_eigenspace_dim: s.eigenspace_dim(),
            in_top_eigenspace: v.in_top_eigenspace,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndicialRow {
    #[serde(rename = "L")]
    pub l: i64,
    pub regular_exponent: Option<i64>,
    pub rejected_exponent: i64,
    /// Space-separated `−3 + λ` values, by decreasing summand.
    pub origin_exponents: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndicialTable {
    pub min_eigenvalue: String,
    pub minimizers: Vec<(i64, i64)>,
    pub scalar_shift: String,
    pub lambda_min: String,
    pub delta_minus: f64,
    pub delta_plus: f64,
    pub decay_at_infinity: String,
    pub blocks: Vec<IndicialRow>,
}

impl IndicialTable {
    pub fn new(l_max: i64) -> Result<Self> {
        let s = dirac_sq_order0_spectrum();
        let (dm, dp) = critical_weights(crate::exact::to_f64(&s.lambda_min))?;
        let mut blocks = Vec::new();
        let mut decay = String::new();
        for l in 4..=l_max {
            let d = indicial_data(BlockLabel::new(l % 2, l))?;
            decay = format_q(&d.decay_at_infinity);
            blocks.push(IndicialRow {
                l,
                regular_exponent: d.regular_exponent,
                rejected_exponent: d.rejected_exponent,
                origin_exponents: d
                    .origin_exponents
                    .iter()
                    .map(i64::to_string)
                    .collect::<Vec<_>>()
                    .join(" "),
            });
        }
        Ok(IndicialTable {
            min_eigenvalue: format_q(&s.min_eigenvalue),
            minimizers: s.minimizers.clone(),
            scalar_shift: format_q(&s.scalar_shift),
            lambda_min: format_q(&s.lambda_min),
            delta_minus: dm,
            delta_plus: dp,
            decay_at_infinity: decay,
            blocks,
        })
    }

    /// `quantity,value` pairs for the scalar part.
    fn summary(&self) -> Vec<(String, String)> {
        let minimizers = self
            .minimizers
            .iter()
            .map(|(a, b)| format!("({a} {b})"))
            .collect::<Vec<_>>()
            .join(" ");
        vec![
            ("min_eigenvalue".into(), self.min_eigenvalue.clone()),
            ("minimizers".into(), minimizers),
            ("scalar_shift".into(), self.scalar_shift.clone()),
            ("lambda_min".into(), self.lambda_min.clone()),
            ("delta_minus".into(), self.delta_minus.to_string()),
            ("delta_plus".into(), self.delta_plus.to_string()),
            ("decay_at_infinity".into(), self.decay_at_infinity.clone()),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub name: String,
    pub status: String,
    pub measured: Option<f64>,
    pub threshold: Option<f64>,
    pub seconds: f64,
    pub detail: String,
}

pub fn check_rows(report: &Report) -> Vec<CheckRow> {
    report
        .checks
        .iter()
        .map(|c| CheckRow {
            name: c.name.clone(),
            status: if c.passed { "pass" } else { "fail" }.into(),
            measured: c.measured,
            threshold: c.threshold,
            seconds: c.seconds,
            detail: c.detail.clone(),
        })
        .collect()
}

pub fn spectrum_records(s: &DeformationSpectrum) -> Vec<SpectrumRecord> {
    s.iter()
        .map(|(b, c)| SpectrumRecord {
            k: b.k,
            l: b.l,
            re: c.re,
            im: c.im,
        })
        .collect()
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

pub fn rows_to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Parses CSV produced by [`rows_to_csv`], skipping `#` lines.
pub fn rows_from_csv<T: DeserializeOwned>(text: &str) -> Result<Vec<T>> {
    let mut r = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for row in r.deserialize() {
        out.push(row?);
    }
    Ok(out)
}

pub fn render_blocks(rows: &[BlockRow], format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(rows),
        Format::Csv => rows_to_csv(rows),
    }
}

pub fn render_radial(table: &RadialTable, format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(table),
        Format::Csv => Ok(format!("{}\n{}", table.csv_preamble(), rows_to_csv(&table.rows)?)),
    }
}

pub fn render_boundary(rec: &BoundaryRecord, format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(rec),
        Format::Csv => rows_to_csv(std::slice::from_ref(rec)),
    }
}

pub fn render_indicial(table: &IndicialTable, format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(table),
        Format::Csv => {
            #[derive(Serialize)]
            struct Kv<'a> {
                quantity: &'a str,
                value: &'a str,
            }
            let summary = table.summary();
            let kv: Vec<Kv> = summary.iter().map(|(k, v)| Kv { quantity: k, value: v }).collect();
            Ok(format!("{}\n{}", rows_to_csv(&kv)?, rows_to_csv(&table.blocks)?))
        }
    }
}

pub fn render_report(report: &Report, format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(report),
        Format::Csv => rows_to_csv(&check_rows(report)),
    }
}

pub fn render_spectrum(s: &DeformationSpectrum, format: Format) -> Result<String> {
    match format {
        Format::Json => s.to_json(),
        Format::Csv => rows_to_csv(&spectrum_records(s)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moduli::classify_sweep;

    #[test]
    fn block_rows_round_trip() {
        let rows: Vec<BlockRow> = classify_sweep(8, 12).iter().map(BlockRow::from).collect();
        let back: Vec<BlockRow> = serde_json::from_str(&render_blocks(&rows, Format::Json).unwrap()).unwrap();
        assert_eq!(back, rows);
        let back: Vec<BlockRow> = rows_from_csv(&render_blocks(&rows, Format::Csv).unwrap()).unwrap();
        assert_eq!(back, rows);
        let r = rows.iter().find(|r| r.k == 0 && r.l == 8).unwrap();
        assert_eq!((r.kernel_global, r.tags.as_str()), (9, "KE_FILLABLE,HARMONIC_TARGET"));
    }

    #[test]
    fn csv_quotes_commas() {
        let rows: Vec<BlockRow> = classify_sweep(4, 0).iter().map(BlockRow::from).collect();
        let text = rows_to_csv(&rows).unwrap();
        assert!(text.contains("\"KE_FILLABLE,HARMONIC_TARGET\""));
    }

    #[test]
    fn indicial_summary() {
        let t = IndicialTable::new(8).unwrap();
        assert_eq!((t.min_eigenvalue.as_str(), t.lambda_min.as_str()), ("6", "0"));
        assert_eq!((t.delta_minus, t.delta_plus), (0.0, 4.0));
        assert_eq!(t.decay_at_infinity, "4");
        let csv = render_indicial(&t, Format::Csv).unwrap();
        assert!(csv.starts_with("quantity,value\nmin_eigenvalue,6\n"));
    }
}
