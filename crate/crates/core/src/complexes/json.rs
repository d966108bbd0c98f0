use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::chain::ChainComplex;
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix};

/// Serialized form of a [`ChainComplex`].
///
/// Keys are `"(n,w)"`; differentials are lists of `[row, col, "p/q"]`
/// triplets for `d_n : C_n → C_{n-1}` at weight `w`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub window: [i64; 2],
    pub weight_cap: u32,
    pub modules: BTreeMap<String, usize>,
    pub differentials: BTreeMap<String, Vec<(usize, usize, String)>>,
    #[serde(default, skip_serializing_if = "is_rationals")]
    pub field: Field,
}

fn is_rationals(f: &Field) -> bool {
    *f == Field::Rationals
}

pub fn slice_key(a: i64, b: impl std::fmt::Display) -> String {
    format!("({a},{b})")
}

pub fn parse_slice_key(key: &str) -> Result<Vec<i64>> {
    let bad = |pos: usize, msg: &str| Error::Parse {
        input: key.to_string(),
        position: pos,
        message: msg.to_string(),
    };
    let inner = key
        .trim()
        .strip_prefix('(')
        .and_then(|k| k.strip_suffix(')'))
        .ok_or_else(|| bad(0, "expected `(a,b,...)`"))?;
    let mut out = Vec::new();
    let mut pos = 1;
    for part in inner.split(',') {
        out.push(part.trim().parse::<i64>().map_err(|_| bad(pos, "expected an integer"))?);
        pos += part.len() + 1;
    }
    Ok(out)
}

impl ChainComplex {
    pub fn to_json(&self) -> ComplexJson {
        let mut modules = BTreeMap::new();
        let mut differentials = BTreeMap::new();
        for w in 0..=self.weight_cap() {
            for n in self.degrees() {
                let dim = self.dim(n, w);
                if dim > 0 {
                    modules.insert(slice_key(n, w), dim);
                }
                let d = self.d(n, w);
                if !d.is_zero() {
                    let trip = d
                        .triplets()
                        .map(|(i, j, v)| (i, j, v.to_string()))
                        .collect();
                    differentials.insert(slice_key(n, w), trip);
                }
            }
        }
        ComplexJson {
            window: [self.window().0, self.window().1],
            weight_cap: self.weight_cap(),
            modules,
            differentials,
            field: self.field(),
        }
    }

    pub fn from_json(json: &ComplexJson) -> Result<ChainComplex> {
        let field = json.field;
        let mut dims = BTreeMap::new();
        for (k, &v) in &json.modules {
            let key = parse_slice_key(k)?;
            let [n, w] = key[..] else {
                return Err(Error::Parse {
                    input: k.clone(),
                    position: 0,
                    message: "expected `(n,w)`".into(),
                });
            };
            dims.insert((n, w as u32), v);
        }
        let get = |n: i64, w: u32| dims.get(&(n, w)).copied().unwrap_or(0);
        let mut diffs = BTreeMap::new();
        for (k, trips) in &json.differentials {
            let key = parse_slice_key(k)?;
            let [n, w] = key[..] else {
                return Err(Error::Parse {
                    input: k.clone(),
                    position: 0,
                    message: "expected `(n,w)`".into(),
                });
            };
            let w = w as u32;
            let entries = trips
                .iter()
                .map(|(i, j, s)| Ok((*i, *j, field.parse_scalar(s)?)))
                .collect::<Result<Vec<_>>>()?;
            let m = Matrix::from_triplets(field, get(n - 1, w), get(n, w), entries)?;
            diffs.insert((n, w), m);
        }
        ChainComplex::from_maps(
            field,
            (json.window[0], json.window[1]),
            json.weight_cap,
            &dims,
            &diffs,
        )
    }
}
