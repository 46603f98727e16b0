//! CSV encodings of bases, expansions, antisymmetric states and sweeps.
//!
//! Coefficients are written with 17 significant digits so that every file
//! parses back to the identical `f64`.

use crate::antisym::FirstQuantizedState;
use crate::coefficients::DickeExpansion;
use crate::entanglement::{Fig2Series, SweepPoint};
use crate::error::{DickeError, Result};
use crate::spin::{format_half, parse_twice, OccupationVector, SpinSpecies};

fn signed_half(twice: i64) -> String {
    if twice > 0 {
        format!("+{}", format_half(twice))
    } else {
        format_half(twice)
    }
}

/// `n_+1, n_0, n_-1`-style column names, highest level first.
pub fn level_header(species: SpinSpecies) -> Vec<String> {
    species.twice_m_values().map(|tm| format!("n_{}", signed_half(tm))).collect()
}

pub fn format_coefficient(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_err(e: impl std::fmt::Display) -> DickeError {
    DickeError::Parse(e.to_string())
}

fn write_rows(header: &[String], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header).map_err(csv_err)?;
    for r in rows {
        w.write_record(&r).map_err(csv_err)?;
    }
    String::from_utf8(w.into_inner().map_err(csv_err)?).map_err(csv_err)
}

fn counts_row(v: &OccupationVector) -> Vec<String> {
    v.counts().iter().map(|c| c.to_string()).collect()
}

pub fn basis_to_csv(species: SpinSpecies, basis: &[OccupationVector]) -> Result<String> {
    write_rows(&level_header(species), basis.iter().map(counts_row))
}

pub fn expansion_to_csv(x: &DickeExpansion) -> Result<String> {
    let mut header = level_header(x.species);
    header.push("coefficient".into());
    write_rows(
        &header,
        x.terms.iter().map(|(v, c)| {
            let mut r = counts_row(v);
            r.push(format_coefficient(*c));
            r
        }),
    )
}

fn species_from_levels(levels: usize) -> Result<SpinSpecies> {
    match levels {
        2..=5 => SpinSpecies::from_twice(levels as u32 - 1),
        _ => Err(DickeError::Parse(format!("{levels} level columns"))),
    }
}

/// Inverse of [`expansion_to_csv`]; species, `N` and `M` come from the rows.
pub fn expansion_from_csv(text: &str) -> Result<DickeExpansion> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().map_err(csv_err)?.clone();
    if header.iter().last() != Some("coefficient") {
        return Err(DickeError::Parse("last column must be `coefficient`".into()));
    }
    let species = species_from_levels(header.len() - 1)?;
    if header.iter().take(header.len() - 1).ne(level_header(species).iter().map(String::as_str)) {
        return Err(DickeError::Parse("unexpected level columns".into()));
    }
    let mut terms = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(csv_err)?;
        let counts = rec
            .iter()
            .take(species.levels())
            .map(|f| f.parse::<u32>().map_err(csv_err))
            .collect::<Result<Vec<_>>>()?;
        let c: f64 = rec[species.levels()].parse().map_err(csv_err)?;
        terms.push((OccupationVector::new(counts), c));
    }
    let first = terms.first().ok_or_else(|| DickeError::Parse("no rows".into()))?;
    let n = first.0.total() as u32;
    let twice_m = first.0.twice_magnetization();
    if terms.iter().any(|(v, _)| v.total() != n as u64 || v.twice_magnetization() != twice_m) {
        return Err(DickeError::InconsistentExpansion);
    }
    Ok(DickeExpansion::new(species, n, twice_m, terms))
}

/// One row per term: state index, comma-joined `m` values, amplitude.
pub fn antisym_to_csv(states: &[FirstQuantizedState]) -> Result<String> {
    let header = ["state".to_string(), "assignment".into(), "amplitude".into()];
    write_rows(
        &header,
        states.iter().enumerate().flat_map(|(i, s)| {
            s.terms.iter().map(move |(a, amp)| {
                let joined = a.iter().map(|&tm| format_half(tm)).collect::<Vec<_>>().join(",");
                vec![i.to_string(), joined, format_coefficient(*amp)]
            })
        }),
    )
}

pub fn antisym_from_csv(species: SpinSpecies, text: &str) -> Result<Vec<FirstQuantizedState>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let mut out: Vec<FirstQuantizedState> = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(csv_err)?;
        let idx: usize = rec[0].parse().map_err(csv_err)?;
        let assignment = rec[1].split(',').map(parse_twice).collect::<Result<Vec<_>>>()?;
        let amp: f64 = rec[2].parse().map_err(csv_err)?;
        if idx == out.len() {
            out.push(FirstQuantizedState { species, n_particles: assignment.len(), terms: Vec::new() });
        } else if idx + 1 != out.len() {
            return Err(DickeError::Parse(format!("state index {idx} out of sequence")));
        }
        out[idx].terms.push((assignment, amp));
    }
    Ok(out)
}

fn six(x: f64) -> String {
    format!("{x:.6}")
}

/// `M,negativity` for a single sweep.
pub fn sweep_to_csv(points: &[SweepPoint]) -> Result<String> {
    write_rows(
        &["M".to_string(), "negativity".into()],
        points.iter().map(|p| vec![format_half(p.twice_m), six(p.negativity)]),
    )
}

/// `N,M,negativity` across several sizes.
pub fn multi_sweep_to_csv(points: &[SweepPoint]) -> Result<String> {
    write_rows(
        &["N".to_string(), "M".into(), "negativity".into()],
        points.iter().map(|p| vec![p.n.to_string(), format_half(p.twice_m), six(p.negativity)]),
    )
}

/// `M,dicke,equal`.
pub fn fig2_to_csv(series: &Fig2Series) -> Result<String> {
    if series.dicke.len() != series.equal.len() {
        return Err(DickeError::Parse("series lengths differ".into()));
    }
    write_rows(
        &["M".to_string(), "dicke".into(), "equal".into()],
        series
            .dicke
            .iter()
            .zip(&series.equal)
            .map(|(d, e)| vec![format_half(d.twice_m), six(d.negativity), six(e.negativity)]),
    )
}
