//! Ring description files: a small JSON schema covering monoid rings
//! (by generators or facet normals), hyperbola rings, and determinantal
//! rings.

use std::path::Path;

use num_bigint::BigInt;
use serde::Deserialize;

use divclass::catalog::DeterminantalDatum;
use divclass::hyperbola::HyperbolaDatum;
use divclass::monoid::MonoidRing;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingFile {
    pub schema: u32,
    pub kind: String,
    // monoid
    pub lattice_rank: Option<usize>,
    pub generators: Option<Vec<Vec<i64>>>,
    pub facet_normals: Option<Vec<Vec<i64>>>,
    // hyperbola
    pub exponents: Option<Vec<i64>>,
    pub base_is_local: Option<bool>,
    pub comaximal: Option<Vec<Vec<bool>>>,
    // determinantal
    pub m: Option<u64>,
    pub n: Option<u64>,
    pub k: Option<u64>,
}

pub enum Ring {
    Monoid(MonoidRing),
    Hyperbola(HyperbolaDatum),
    Determinantal(DeterminantalDatum),
}

impl Ring {
    pub fn kind(&self) -> &'static str {
        match self {
            Ring::Monoid(_) => "monoid",
            Ring::Hyperbola(_) => "hyperbola",
            Ring::Determinantal(_) => "determinantal",
        }
    }
}

/// Parses and validates a ring file. Also returns the canonical JSON of
/// the file contents (sorted keys, compact) for hashing into reports.
pub fn load_ring(path: &Path) -> Result<(Ring, String), String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let canonical: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let file: RingFile =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let ring = build_ring(&file).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((ring, canonical.to_string()))
}

fn build_ring(file: &RingFile) -> Result<Ring, String> {
    if file.schema != SCHEMA_VERSION {
        return Err(format!(
            "field 'schema': expected {SCHEMA_VERSION}, got {}",
            file.schema
        ));
    }
    match file.kind.as_str() {
        "monoid" => {
            reject(
                file.exponents.is_some(),
                "field 'exponents' is not a monoid field",
            )?;
            reject(
                file.base_is_local.is_some(),
                "field 'base_is_local' is not a monoid field",
            )?;
            reject(
                file.comaximal.is_some(),
                "field 'comaximal' is not a monoid field",
            )?;
            reject(
                file.m.is_some() || file.n.is_some() || file.k.is_some(),
                "fields 'm'/'n'/'k' are not monoid fields",
            )?;
            let rank = file
                .lattice_rank
                .ok_or("field 'lattice_rank' is required for a monoid ring")?;
            let ring = match (&file.generators, &file.facet_normals) {
                (Some(gens), None) => {
                    MonoidRing::from_generators(rank, &to_bigint_rows(gens, rank)?)
                }
                (None, Some(normals)) => {
                    MonoidRing::from_normals(rank, &to_bigint_rows(normals, rank)?)
                }
                (Some(_), Some(_)) => {
                    return Err("give either 'generators' or 'facet_normals', not both".into())
                }
                (None, None) => {
                    return Err("field 'generators' or 'facet_normals' is required".into())
                }
            };
            ring.map(Ring::Monoid).map_err(|e| e.to_string())
        }
        "hyperbola" => {
            reject(
                file.lattice_rank.is_some(),
                "field 'lattice_rank' is not a hyperbola field",
            )?;
            reject(
                file.generators.is_some() || file.facet_normals.is_some(),
                "fields 'generators'/'facet_normals' are not hyperbola fields",
            )?;
            reject(
                file.m.is_some() || file.n.is_some() || file.k.is_some(),
                "fields 'm'/'n'/'k' are not hyperbola fields",
            )?;
            let exponents: Vec<BigInt> = file
                .exponents
                .as_ref()
                .ok_or("field 'exponents' is required for a hyperbola ring")?
                .iter()
                .map(|&d| BigInt::from(d))
                .collect();
            let local = file.base_is_local.unwrap_or(true);
            let datum = if local {
                reject(
                    file.comaximal.is_some(),
                    "field 'comaximal' only applies when base_is_local is false",
                )?;
                HyperbolaDatum::local(exponents)
            } else {
                let comaximal = file
                    .comaximal
                    .clone()
                    .ok_or("field 'comaximal' is required when base_is_local is false")?;
                HyperbolaDatum::non_local(exponents, comaximal)
            };
            datum.map(Ring::Hyperbola).map_err(|e| e.to_string())
        }
        "determinantal" => {
            reject(
                file.lattice_rank.is_some()
                    || file.generators.is_some()
                    || file.facet_normals.is_some(),
                "monoid fields are not determinantal fields",
            )?;
            reject(
                file.exponents.is_some()
                    || file.base_is_local.is_some()
                    || file.comaximal.is_some(),
                "hyperbola fields are not determinantal fields",
            )?;
            let m = file
                .m
                .ok_or("field 'm' is required for a determinantal ring")?;
            let n = file
                .n
                .ok_or("field 'n' is required for a determinantal ring")?;
            let k = file
                .k
                .ok_or("field 'k' is required for a determinantal ring")?;
            DeterminantalDatum::new(m, n, k)
                .map(Ring::Determinantal)
                .map_err(|e| e.to_string())
        }
        other => Err(format!(
            "field 'kind': expected monoid, hyperbola or determinantal, got '{other}'"
        )),
    }
}

fn reject(condition: bool, message: &str) -> Result<(), String> {
    if condition {
        Err(message.to_string())
    } else {
        Ok(())
    }
}

fn to_bigint_rows(rows: &[Vec<i64>], rank: usize) -> Result<Vec<Vec<BigInt>>, String> {
    for (i, row) in rows.iter().enumerate() {
        if row.len() != rank {
            return Err(format!(
                "vector {i} has {} entries, expected lattice_rank = {rank}",
                row.len()
            ));
        }
    }
    Ok(rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect())
}

/// Parses a comma-separated divisor such as `1,-2,0`.
pub fn parse_divisor(text: &str, expected_len: usize) -> Result<Vec<BigInt>, String> {
    let coeffs: Result<Vec<BigInt>, _> = text
        .split(',')
        .map(|part| part.trim().parse::<i64>().map(BigInt::from))
        .collect();
    let coeffs = coeffs.map_err(|e| format!("divisor '{text}': {e}"))?;
    if coeffs.len() != expected_len {
        return Err(format!(
            "divisor has {} coefficients but the ring has {expected_len}",
            coeffs.len()
        ));
    }
    Ok(coeffs)
}
