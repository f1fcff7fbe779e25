//! Space-spec grammar and vector literals.
//!
//! ```text
//! space := "leaf:" num | "sum(" norm-spec ";" space ";" space ")"
//! ```
//!
//! Vector literals are JSON, shaped like the space: a leaf is a map from
//! index to value (`{"0": 1.0, "5": -2.0}`), a sum is a two-element array
//! `[left, right]`.

use super::{SpaceExpr, SpaceVec, SparseVec};
use crate::error::{Error, Result};
use crate::norm2d::parse::Cursor;
use std::fmt;

pub fn parse_space(input: &str) -> Result<SpaceExpr> {
    let mut c = Cursor::new(input);
    let space = space(&mut c)?;
    if !c.at_end() {
        return Err(Error::parse(c.pos, "trailing input after space spec"));
    }
    Ok(space)
}

fn space(c: &mut Cursor) -> Result<SpaceExpr> {
    let at = c.pos;
    if c.eat_keyword("leaf") {
        c.expect(b':')?;
        let p = c.number()?;
        return SpaceExpr::leaf(p);
    }
    if c.eat_keyword("sum") {
        c.expect(b'(')?;
        let n = c.norm()?;
        c.expect(b';')?;
        let left = space(c)?;
        c.expect(b';')?;
        let right = space(c)?;
        c.expect(b')')?;
        return Ok(SpaceExpr::sum(n, left, right));
    }
    Err(Error::parse(at, "expected 'leaf:' or 'sum('"))
}

impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceExpr::Leaf(p) => {
                if p.is_infinite() {
                    write!(f, "leaf:inf")
                } else {
                    write!(f, "leaf:{p}")
                }
            }
            SpaceExpr::Sum(n, l, r) => write!(f, "sum({n}; {l}; {r})"),
        }
    }
}

/// Parse a vector literal for the given space.
pub fn parse_space_vec(space: &SpaceExpr, json: &serde_json::Value) -> Result<SpaceVec> {
    match (space, json) {
        (SpaceExpr::Leaf(_), serde_json::Value::Object(map)) => {
            let mut v = SparseVec::new();
            for (k, val) in map {
                let idx: u64 = k
                    .parse()
                    .map_err(|_| Error::Parse {
                        pos: 0,
                        msg: format!("leaf index '{k}' is not a non-negative integer"),
                    })?;
                let x = val.as_f64().ok_or_else(|| Error::Parse {
                    pos: 0,
                    msg: format!("leaf value for index {k} is not a number"),
                })?;
                if !x.is_finite() {
                    return Err(Error::Domain("vector entries must be finite".into()));
                }
                v.set(idx, x);
            }
            Ok(SpaceVec::Leaf(v))
        }
        (SpaceExpr::Sum(_, l, r), serde_json::Value::Array(items)) if items.len() == 2 => {
            Ok(SpaceVec::pair(
                parse_space_vec(l, &items[0])?,
                parse_space_vec(r, &items[1])?,
            ))
        }
        (SpaceExpr::Leaf(_), _) => Err(Error::Shape(
            "expected a JSON object for a leaf vector".into(),
        )),
        (SpaceExpr::Sum(..), _) => Err(Error::Shape(
            "expected a two-element JSON array for a sum vector".into(),
        )),
    }
}

/// Render a vector back into the JSON literal shape.
pub fn space_vec_to_json(v: &SpaceVec) -> serde_json::Value {
    match v {
        SpaceVec::Leaf(sv) => {
            let mut map = serde_json::Map::new();
            for (i, x) in sv.iter() {
                map.insert(i.to_string(), serde_json::json!(x));
            }
            serde_json::Value::Object(map)
        }
        SpaceVec::Pair(l, r) => {
            serde_json::Value::Array(vec![space_vec_to_json(l), space_vec_to_json(r)])
        }
    }
}
