//! The structure file format: a JSON object with keys `name`, `elements`, `op`
//! and optional `left_division`, `right_division`, `identity`, `inverse`,
//! `provenance`, serialized canonically.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::bundle::StructureBundle;
use crate::error::{Error, Result};
use crate::set::CarrierIndex;
use crate::table::{check_names, validate_field, DivisionPair, HyperTable, Warning};

type RawTable = Vec<Vec<Vec<String>>>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    name: String,
    elements: Vec<String>,
    op: RawTable,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    left_division: Option<RawTable>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    right_division: Option<RawTable>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    identity: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    inverse: Option<IndexMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<String>,
}

fn lookup(names: &[String], label: &str, location: &str) -> Result<CarrierIndex> {
    names
        .iter()
        .position(|n| n == label)
        .ok_or_else(|| Error::UnknownElement {
            label: label.to_string(),
            location: location.to_string(),
        })
}

/// Parses a structure file, also returning tolerated irregularities.
pub fn parse_with_warnings(bytes: &[u8]) -> Result<(StructureBundle, Vec<Warning>)> {
    let raw: RawFile = serde_json::from_slice(bytes).map_err(|e| Error::Parse {
        location: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    let names = raw.elements;
    check_names(&names)?;

    let (table, mut warnings) = validate_field(&names, &raw.op, "op")?;
    let divisions = match (raw.left_division, raw.right_division) {
        (None, None) => None,
        (Some(l), Some(r)) => {
            let (left, w) = validate_field(&names, &l, "left_division")?;
            warnings.extend(w);
            let (right, w) = validate_field(&names, &r, "right_division")?;
            warnings.extend(w);
            Some(DivisionPair::new(&table, left, right)?)
        }
        (Some(_), None) | (None, Some(_)) => {
            return Err(Error::Parse {
                location: "left_division/right_division".into(),
                message: "division tables must be given together".into(),
            })
        }
    };
    let identity = raw
        .identity
        .as_deref()
        .map(|l| lookup(&names, l, "identity"))
        .transpose()?;
    let inverse = match raw.inverse {
        None => None,
        Some(map) => {
            let mut inv = vec![None; names.len()];
            for (k, v) in &map {
                let x = lookup(&names, k, "inverse")?;
                let y = lookup(&names, v, &format!("inverse[{k:?}]"))?;
                inv[x] = Some(y);
            }
            let inv: Option<Vec<_>> = inv.into_iter().collect();
            Some(inv.ok_or_else(|| Error::Parse {
                location: "inverse".into(),
                message: "inverse must map every element".into(),
            })?)
        }
    };

    let bundle = StructureBundle {
        name: raw.name,
        table,
        divisions,
        identity,
        inverse,
        provenance: raw.provenance,
    };
    bundle.validate()?;
    Ok((bundle, warnings))
}

pub fn parse_structure_file(bytes: &[u8]) -> Result<StructureBundle> {
    parse_with_warnings(bytes).map(|(b, _)| b)
}

fn raw_table(t: &HyperTable) -> RawTable {
    (0..t.order())
        .map(|a| {
            (0..t.order())
                .map(|b| t.cell(a, b).iter().map(|i| t.name(i).to_string()).collect())
                .collect()
        })
        .collect()
}

/// Canonical bytes: two-space indent, fixed key order, cell members in carrier
/// order, trailing newline.
pub fn serialize_structure(b: &StructureBundle) -> String {
    let t = &b.table;
    let raw = RawFile {
        name: b.name.clone(),
        elements: t.names().to_vec(),
        op: raw_table(t),
        left_division: b.divisions.as_ref().map(|d| raw_table(&d.left)),
        right_division: b.divisions.as_ref().map(|d| raw_table(&d.right)),
        identity: b.identity.map(|e| t.name(e).to_string()),
        inverse: b.inverse.as_ref().map(|inv| {
            inv.iter()
                .enumerate()
                .map(|(x, &y)| (t.name(x).to_string(), t.name(y).to_string()))
                .collect()
        }),
        provenance: b.provenance.clone(),
    };
    let mut s = serde_json::to_string_pretty(&raw).expect("plain data serializes");
    s.push('\n');
    s
}
