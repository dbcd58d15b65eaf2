//! JSON formats for braces, pre-Lie rings and groups.
//!
//! Output is canonical: keys sorted, no whitespace, one trailing newline, so
//! identical inputs give byte-identical files.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::abelian::{AbelianPGroup, GroupSpec};
use crate::brace::Brace;
use crate::error::{Error, Result};
use crate::group::FiniteGroupTable;
use crate::numtheory::Xi;
use crate::prelie::PreLieRing;

pub(crate) fn big_as_string<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraceJson {
    pub prime: u64,
    pub exponents: Vec<u32>,
    pub star: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreLieJson {
    pub prime: u64,
    pub exponents: Vec<u32>,
    pub dot: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub order: usize,
    pub table: Vec<Vec<u32>>,
    pub identity: u32,
}

/// Any of the three formats, told apart by their table key.
#[derive(Debug, Clone)]
pub enum Structure {
    Brace(Brace),
    PreLie(PreLieRing),
    Group(FiniteGroupTable),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Brace(_) => "brace",
            Structure::PreLie(_) => "prelie",
            Structure::Group(_) => "group",
        }
    }

    pub fn to_value(&self) -> Value {
        match self {
            Structure::Brace(b) => brace_to_value(b),
            Structure::PreLie(p) => prelie_to_value(p, None),
            Structure::Group(g) => group_to_value(g),
        }
    }
}

fn rows(table: &[u32], n: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return Vec::new();
    }
    table.chunks(n).map(<[u32]>::to_vec).collect()
}

fn flatten(rows: &[Vec<u32>], n: usize, what: &str) -> Result<Vec<u32>> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::structural(format!("{what} must be a {n} x {n} array")));
    }
    Ok(rows.concat())
}

/// A bad prime in a file is malformed input, not a failed hypothesis.
fn group_of(prime: u64, exponents: &[u32]) -> Result<AbelianPGroup> {
    AbelianPGroup::from_spec(&GroupSpec {
        prime,
        exponents: exponents.to_vec(),
    })
    .map_err(|e| match e {
        Error::Hypothesis { .. } => Error::structural(e.to_string()),
        e => e,
    })
}

pub fn brace_to_value(b: &Brace) -> Value {
    json!({
        "prime": b.prime(),
        "exponents": b.group().exponents(),
        "star": rows(b.star_table(), b.order()),
    })
}

/// Structural validation only; run [`crate::brace::verify_brace_axioms`] for the axioms.
pub fn brace_from_json(j: &BraceJson) -> Result<Brace> {
    let g = group_of(j.prime, &j.exponents)?;
    let t = flatten(&j.star, g.order(), "star")?;
    Brace::from_table_unchecked(g, t)
}

pub fn prelie_to_value(p: &PreLieRing, provenance: Option<Value>) -> Value {
    let mut v = json!({
        "prime": p.prime(),
        "exponents": p.group().exponents(),
        "dot": rows(p.dot_table(), p.order()),
    });
    if let Some(prov) = provenance {
        v["provenance"] = prov;
    }
    v
}

/// Structural validation only.
pub fn prelie_from_json(j: &PreLieJson) -> Result<PreLieRing> {
    let g = group_of(j.prime, &j.exponents)?;
    let t = flatten(&j.dot, g.order(), "dot")?;
    PreLieRing::from_table_unchecked(g, t)
}

pub fn group_to_value(g: &FiniteGroupTable) -> Value {
    json!({
        "order": g.order(),
        "table": rows(g.table(), g.order()),
        "identity": g.identity(),
    })
}

/// Full validation, including associativity. The order must be a prime
/// power larger than 1, since the prime is read off from it.
pub fn group_from_json(j: &GroupJson) -> Result<FiniteGroupTable> {
    if j.order <= 1 {
        return Err(Error::structural("group order must exceed 1"));
    }
    let t = flatten(&j.table, j.order, "table")?;
    FiniteGroupTable::new(t, j.identity)
}

/// Parses any of the three formats.
pub fn parse_structure(text: &str) -> Result<Structure> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
    let de = |e: serde_json::Error| Error::Parse(e.to_string());
    if obj.contains_key("star") {
        Ok(Structure::Brace(brace_from_json(&serde_json::from_value(v).map_err(de)?)?))
    } else if obj.contains_key("dot") {
        Ok(Structure::PreLie(prelie_from_json(&serde_json::from_value(v).map_err(de)?)?))
    } else if obj.contains_key("table") {
        Ok(Structure::Group(group_from_json(&serde_json::from_value(v).map_err(de)?)?))
    } else {
        Err(Error::Parse("expected a \"star\", \"dot\" or \"table\" key".into()))
    }
}

/// Compact JSON with sorted keys and a trailing newline.
pub fn canonical_string(v: &Value) -> String {
    // serde_json's default map is ordered by key
    let mut s = serde_json::to_string(v).expect("values always serialize");
    s.push('\n');
    s
}

/// SHA-256 of the canonical form, as hex.
pub fn content_hash(v: &Value) -> String {
    hex::encode(Sha256::digest(canonical_string(v).as_bytes()))
}

/// `{"source_brace", "construction", "xi", "gamma"}`; `xi` is a decimal
/// string since it lives modulo `p^p`.
pub fn provenance(source: &Brace, construction: &str, xi: &Xi) -> Value {
    json!({
        "source_brace": content_hash(&brace_to_value(source)),
        "construction": construction,
        "xi": xi.value().to_string(),
        "gamma": xi.gamma(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::{construct, BraceKind};

    #[test]
    fn brace_roundtrip() {
        let b = construct(&BraceKind::RadicalCyclic { p: 5, n: 2 }).unwrap();
        let v = brace_to_value(&b);
        let s = canonical_string(&v);
        assert!(s.starts_with("{\"exponents\":[2],\"prime\":5,\"star\":[[0,0"));
        assert!(s.ends_with("]]}\n"));
        match parse_structure(&s).unwrap() {
            Structure::Brace(c) => assert_eq!(c, b),
            other => panic!("{}", other.kind()),
        }
        assert_eq!(content_hash(&v).len(), 64);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_structure("[1]"), Err(Error::Parse(_))));
        assert!(matches!(parse_structure("{\"x\":1}"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_structure("{\"prime\":5,\"exponents\":[1],\"star\":[[0]]}"),
            Err(Error::Structural(_))
        ));
        assert!(parse_structure("{\"order\":1,\"table\":[[0]],\"identity\":0}").is_err());
        assert!(parse_structure("{\"prime\":4,\"exponents\":[1],\"dot\":[]}").is_err());
    }

    #[test]
    fn group_roundtrip() {
        let g = FiniteGroupTable::heisenberg(3).unwrap();
        let s = canonical_string(&group_to_value(&g));
        match parse_structure(&s).unwrap() {
            Structure::Group(h) => assert_eq!(h, g),
            other => panic!("{}", other.kind()),
        }
    }

    #[test]
    fn prelie_with_provenance() {
        let b = construct(&BraceKind::RadicalCyclic { p: 5, n: 3 }).unwrap();
        let xi = crate::numtheory::xi(5).unwrap();
        let p = PreLieRing::radical_cyclic(5, 2).unwrap();
        let v = prelie_to_value(&p, Some(provenance(&b, "bullet", &xi)));
        let s = canonical_string(&v);
        assert!(s.contains("\"construction\":\"bullet\""));
        match parse_structure(&s).unwrap() {
            Structure::PreLie(q) => assert_eq!(q, p),
            other => panic!("{}", other.kind()),
        }
    }
}
