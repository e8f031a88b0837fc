//! Channel files: JSON with alphabets, a `[x1][x2][y]` table and an
//! optional group block.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::channel::{Mac, SUM_TOL, ZERO_CLAMP};
use crate::checkers::additive::GroupSpec;
use crate::error::{Error, Result};

/// On-disk layout.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDoc {
    name: String,
    x1: Vec<String>,
    x2: Vec<String>,
    y: Vec<String>,
    pmf: Vec<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    group: Option<GroupSpec>,
}

/// A channel together with its optional group structure.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelDoc {
    pub mac: Mac,
    pub group: Option<GroupSpec>,
}

pub fn parse_channel_doc(text: &str) -> Result<ChannelDoc> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawDoc = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::parse(
            if path == "." { "$".into() } else { path },
            e.into_inner().to_string(),
        )
    })?;
    validate_raw(&raw)?;
    let mac = Mac::from_table(raw.name, raw.x1, raw.x2, raw.y, &raw.pmf)
        .map_err(|e| Error::parse("pmf", e.to_string()))?;
    if let Some(g) = &raw.group {
        g.check_dims(&mac)
            .map_err(|(path, msg)| Error::parse(format!("group.{path}"), msg))?;
    }
    Ok(ChannelDoc {
        mac,
        group: raw.group,
    })
}

fn validate_raw(raw: &RawDoc) -> Result<()> {
    for (axis, alphabet) in [("x1", &raw.x1), ("x2", &raw.x2), ("y", &raw.y)] {
        if alphabet.is_empty() {
            return Err(Error::parse(axis, "empty alphabet"));
        }
        for (i, s) in alphabet.iter().enumerate() {
            if alphabet[..i].contains(s) {
                return Err(Error::parse(
                    format!("{axis}[{i}]"),
                    format!("duplicate symbol {s:?}"),
                ));
            }
        }
    }
    if raw.pmf.len() != raw.x1.len() {
        return Err(Error::parse(
            "pmf",
            format!(
                "expected {} rows (one per x1), found {}",
                raw.x1.len(),
                raw.pmf.len()
            ),
        ));
    }
    for (i, slab) in raw.pmf.iter().enumerate() {
        if slab.len() != raw.x2.len() {
            return Err(Error::parse(
                format!("pmf[{i}]"),
                format!(
                    "expected {} rows (one per x2), found {}",
                    raw.x2.len(),
                    slab.len()
                ),
            ));
        }
        for (j, row) in slab.iter().enumerate() {
            if row.len() != raw.y.len() {
                return Err(Error::parse(
                    format!("pmf[{i}][{j}]"),
                    format!(
                        "expected {} entries (one per y), found {}",
                        raw.y.len(),
                        row.len()
                    ),
                ));
            }
            for (k, &p) in row.iter().enumerate() {
                if !p.is_finite() || p < -ZERO_CLAMP || p > 1.0 {
                    return Err(Error::parse(
                        format!("pmf[{i}][{j}][{k}]"),
                        format!("entry {p} outside [0,1]"),
                    ));
                }
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > SUM_TOL {
                return Err(Error::parse(
                    format!("pmf[{i}][{j}]"),
                    format!("row sums to {sum}, not 1"),
                ));
            }
        }
    }
    Ok(())
}

pub fn load_channel_doc(path: impl AsRef<Path>) -> Result<ChannelDoc> {
    parse_channel_doc(&fs::read_to_string(path)?)
}

pub fn load_channel(path: impl AsRef<Path>) -> Result<Mac> {
    Ok(load_channel_doc(path)?.mac)
}

pub fn channel_doc_to_json(doc: &ChannelDoc) -> String {
    let raw = RawDoc {
        name: doc.mac.name().to_string(),
        x1: doc.mac.x1().to_vec(),
        x2: doc.mac.x2().to_vec(),
        y: doc.mac.y().to_vec(),
        pmf: doc.mac.table(),
        group: doc.group.clone(),
    };
    let mut s = serde_json::to_string_pretty(&raw).expect("channel documents always serialize");
    s.push('\n');
    s
}

pub fn save_channel_doc(doc: &ChannelDoc, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, channel_doc_to_json(doc))?;
    Ok(())
}

pub fn save_channel(mac: &Mac, path: impl AsRef<Path>) -> Result<()> {
    save_channel_doc(
        &ChannelDoc {
            mac: mac.clone(),
            group: None,
        },
        path,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn doc(pmf: &str, y: &str) -> String {
        format!(r#"{{"name":"t","x1":["0","1"],"x2":["0"],"y":{y},"pmf":{pmf}}}"#)
    }

    #[test]
    fn round_trip_with_group() {
        let (mac, g) = families::erasure_adder_additive(0.25, 3).unwrap();
        let d = ChannelDoc {
            mac,
            group: Some(g),
        };
        let back = parse_channel_doc(&channel_doc_to_json(&d)).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn bad_row_sum_names_the_row() {
        let e = parse_channel_doc(&doc("[[[1.0,0.0]],[[1.0,0.5]]]", r#"["a","b"]"#)).unwrap_err();
        let msg = e.to_string();
        assert!(msg.starts_with("pmf[1][0]"), "{msg}");
    }

    #[test]
    fn duplicate_symbol() {
        let e = parse_channel_doc(&doc("[[[1.0,0.0]],[[0.0,1.0]]]", r#"["a","a"]"#)).unwrap_err();
        assert!(e.to_string().contains("duplicate symbol"), "{e}");
    }

    #[test]
    fn near_normalized_rows_are_fixed() {
        let d =
            parse_channel_doc(&doc("[[[0.5,0.5000000001]],[[0.0,1.0]]]", r#"["a","b"]"#)).unwrap();
        assert!((d.mac.row(0, 0).iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn missing_field_and_type_errors_carry_paths() {
        let e = parse_channel_doc(r#"{"name":"t","x1":["0"],"x2":["0"],"y":["0"]}"#).unwrap_err();
        assert!(e.to_string().contains("pmf"), "{e}");
        let e =
            parse_channel_doc(r#"{"name":"t","x1":["0"],"x2":["0"],"y":["0"],"pmf":[[["x"]]]}"#)
                .unwrap_err();
        assert!(e.to_string().starts_with("pmf[0][0][0]"), "{e}");
    }

    #[test]
    fn bad_group_dims() {
        let (mac, mut g) = families::bsc_mac_additive(0.1).unwrap();
        g.embed_x1.push(0);
        let text = channel_doc_to_json(&ChannelDoc {
            mac,
            group: Some(g),
        });
        let e = parse_channel_doc(&text).unwrap_err();
        assert!(e.to_string().starts_with("group.embed_x1"), "{e}");
    }
}
