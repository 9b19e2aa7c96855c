//! JSON encodings shared by the library and the command line.
//!
//! * univariate: `{"var": "a", "coeffs": ["c0", "c1", ...]}`
//! * bivariate: `{"vars": ["a", "b"], "terms": [[[i, j], "c"], ...]}`
//! * over `F_p`: the univariate form plus `"p"`.
//!
//! Integer coefficients are decimal strings so that they survive any JSON
//! reader bit-exactly.

use std::path::Path;

use rug::Integer;
use serde::de::{DeserializeOwned, Error as _};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::fppoly::ModPoly;
use crate::zpoly::{IntPoly1, IntPoly2, Var};
use crate::{Error, Result};

/// Strict decimal parsing: optional `-`, then ASCII digits only.
pub fn parse_decimal(s: &str) -> Option<Integer> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    Integer::from_str_radix(s, 10).ok()
}

/// `serde(with = "...")` adapter storing an [`Integer`] as a decimal string.
pub mod decimal {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Integer, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Integer, D::Error> {
        let s = String::deserialize(d)?;
        parse_decimal(&s).ok_or_else(|| D::Error::custom(format!("invalid decimal integer {s:?}")))
    }
}

/// Like [`decimal`] for an optional value.
pub mod decimal_opt {
    use super::*;

    pub fn serialize<S: Serializer>(
        v: &Option<Integer>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_some(&v.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<Integer>, D::Error> {
        match Option::<String>::deserialize(d)? {
            None => Ok(None),
            Some(s) => parse_decimal(&s)
                .map(Some)
                .ok_or_else(|| D::Error::custom(format!("invalid decimal integer {s:?}"))),
        }
    }
}

/// A coefficient on the wire; validated as soon as it is read so that parse
/// errors point at the offending string.
#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct Dec(#[serde(with = "decimal")] Integer);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Poly1Json {
    var: Var,
    coeffs: Vec<Dec>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Poly2Json {
    vars: [Var; 2],
    terms: Vec<((u32, u32), Dec)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModPolyJson {
    var: Var,
    p: u64,
    coeffs: Vec<Dec>,
}

impl Serialize for IntPoly1 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Poly1Json {
            var: self.var().clone(),
            coeffs: self.coeffs().iter().map(|c| Dec(c.clone())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly1 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = Poly1Json::deserialize(d)?;
        Ok(IntPoly1::new(j.var, j.coeffs.into_iter().map(|c| c.0).collect()))
    }
}

impl Serialize for IntPoly2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Poly2Json {
            vars: self.vars().clone(),
            terms: self.terms().iter().map(|(&e, c)| (e, Dec(c.clone()))).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = Poly2Json::deserialize(d)?;
        if j.vars[0] == j.vars[1] {
            return Err(D::Error::custom("the two variables must differ"));
        }
        Ok(IntPoly2::new(j.vars, j.terms.into_iter().map(|(e, c)| (e, c.0))))
    }
}

impl Serialize for ModPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ModPolyJson {
            var: Var::from("a"),
            p: self.modulus(),
            coeffs: self.coeffs().iter().map(|&c| Dec(Integer::from(c))).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ModPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = ModPolyJson::deserialize(d)?;
        crate::zpoly::check_prime(j.p).map_err(D::Error::custom)?;
        let reduced = j.coeffs.iter().map(|c| c.0.mod_u(j.p as u32) as u64).collect();
        Ok(ModPoly::new(j.p, reduced))
    }
}

/// Pretty-printed JSON.
pub fn to_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::InvalidParameter(e.to_string()))
}

/// Parses `text`, reporting failures with the byte offset where they occurred.
pub fn from_str<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        offset: byte_offset(text, e.line(), e.column()),
        message: e.to_string(),
    })
}

/// serde_json positions are a 1-based line and a 1-based byte column.
fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    if line == 0 {
        return 0;
    }
    let start: usize = text.split_inclusive('\n').take(line - 1).map(str::len).sum();
    (start + column.saturating_sub(1)).min(text.len())
}

pub fn write_file<T: Serialize + ?Sized>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let path = path.as_ref();
    let text = to_string(value)?;
    std::fs::write(path, text + "\n")
        .map_err(|e| Error::InvalidParameter(format!("cannot write {}: {e}", path.display())))
}

pub fn read_file<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))?;
    from_str(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn univariate_round_trip() {
        let f = IntPoly1::new("b", vec![Integer::from(3), Integer::new(), Integer::from(3), Integer::new(), Integer::from(1)]);
        let text = to_string(&f).unwrap();
        assert!(text.contains("\"coeffs\""));
        let g: IntPoly1 = from_str(&text).unwrap();
        assert_eq!(f, g);
        let huge = IntPoly1::new("a", vec![Integer::from(1) << 300u32, Integer::from(-7)]);
        assert_eq!(from_str::<IntPoly1>(&to_string(&huge).unwrap()).unwrap(), huge);
    }

    #[test]
    fn bivariate_round_trip() {
        let f = IntPoly2::from_i64s([Var::from("a"), Var::from("b")], &[((1, 0), 3), ((0, 1), 3), ((2, 1), -1)]);
        let g: IntPoly2 = from_str(&to_string(&f).unwrap()).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn mod_poly_round_trip() {
        let f = ModPoly::from_i64s(3, &[1, 2, 0, 1]).unwrap();
        let g: ModPoly = from_str(&to_string(&f).unwrap()).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn bad_coefficient_names_its_offset() {
        let text = "{\"var\": \"a\",\n \"coeffs\": [\"1\", \"0x1f\"]}";
        match from_str::<IntPoly1>(text) {
            Err(Error::Parse { offset, message }) => {
                assert!(message.contains("0x1f"), "{message}");
                assert!(offset > text.find("coeffs").unwrap() && offset <= text.len());
            }
            other => panic!("expected a parse error, got {other:?}"),
        }
        for bad in ["+1", "1.0", "", "- 1", "1e3"] {
            assert!(parse_decimal(bad).is_none(), "{bad}");
        }
    }

    #[test]
    fn truncated_input_is_a_parse_error() {
        let text = "{\"var\": \"a\", \"coeffs\": [\"1\"";
        assert!(matches!(from_str::<IntPoly1>(text), Err(Error::Parse { .. })));
    }
}
