use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::Field;

/// Exponent vector over the generators of a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(vars: usize) -> Self {
        Monomial(vec![0; vars])
    }

    pub fn var(vars: usize, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / x_i`, if `x_i` divides `self`.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        (self.0[i] > 0).then(|| {
            let mut e = self.0.clone();
            e[i] -= 1;
            Monomial(e)
        })
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    #[serde(default = "unit_weight")]
    pub weight: u32,
}

fn unit_weight() -> u32 {
    1
}

#[derive(Deserialize)]
struct PresentationFile {
    generators: Vec<Generator>,
    #[serde(default)]
    relations: Vec<String>,
}

/// A weight-graded commutative algebra `k[x_1, …, x_d] / (monomials)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    label: String,
    field: Field,
    generators: Vec<Generator>,
    relations: Vec<Monomial>,
}

impl AlgebraPresentation {
    pub fn new(generators: Vec<Generator>, relations: Vec<Monomial>) -> Result<Self> {
        for g in &generators {
            if g.weight == 0 {
                return Err(Error::Shape(format!("generator {} has weight 0", g.name)));
            }
        }
        if let Some(r) = relations.iter().find(|r| r.0.len() != generators.len()) {
            return Err(Error::Shape(format!("relation {r:?} has the wrong number of exponents")));
        }
        let label = format!("algebra({} generators)", generators.len());
        Ok(Self {
            label,
            field: Field::Rationals,
            generators,
            relations,
        })
    }

    /// `k[x_1, …, x_d]` with unit weights; names are `x, y, z` up to three
    /// generators and `x1, x2, …` beyond.
    pub fn polynomial(d: usize) -> Self {
        let names: Vec<String> = if d <= 3 {
            ["x", "y", "z"][..d].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=d).map(|i| format!("x{i}")).collect()
        };
        let generators = names
            .into_iter()
            .map(|name| Generator { name, weight: 1 })
            .collect();
        let mut p = Self::new(generators, Vec::new()).unwrap();
        p.label = format!("poly:{d}");
        p
    }

    /// `k[x] / x^m`.
    pub fn truncated(name: &str, m: u32) -> Self {
        let g = Generator {
            name: name.to_string(),
            weight: 1,
        };
        let mut p = Self::new(vec![g], vec![Monomial(vec![m])]).unwrap();
        p.label = format!("trunc:{name}^{m}");
        p
    }

    /// Accepts `poly:d`, `trunc:x^m`, or a path to a JSON presentation file.
    pub fn parse(spec: &str) -> Result<Self> {
        let err = |position: usize, message: &str| Error::Parse {
            input: spec.to_string(),
            position,
            message: message.to_string(),
        };
        if let Some(rest) = spec.strip_prefix("poly:") {
            let d = rest
                .parse::<usize>()
                .map_err(|_| err(5, "expected a generator count"))?;
            return Ok(Self::polynomial(d));
        }
        if let Some(rest) = spec.strip_prefix("trunc:") {
            let Some((name, exp)) = rest.split_once('^') else {
                return Err(err(spec.len(), "expected `name^exponent`"));
            };
            if !is_name(name) {
                return Err(err(6, "expected a generator name"));
            }
            let m = exp
                .parse::<u32>()
                .ok()
                .filter(|&m| m >= 1)
                .ok_or_else(|| err(7 + name.len(), "expected a positive exponent"))?;
            return Ok(Self::truncated(name, m));
        }
        if spec.ends_with(".json") || Path::new(spec).is_file() {
            let text = std::fs::read_to_string(spec).map_err(|e| Error::Io(format!("{spec}: {e}")))?;
            let mut p = Self::from_json(&text)?;
            p.label = spec.to_string();
            return Ok(p);
        }
        Err(err(0, "expected `poly:d`, `trunc:x^m` or a presentation file"))
    }

    /// Parses `{"generators":[{"name":"x","weight":1}],"relations":["x^2"]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: PresentationFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            input: text.to_string(),
            position: e.column(),
            message: e.to_string(),
        })?;
        for g in &file.generators {
            if !is_name(&g.name) {
                return Err(Error::Parse {
                    input: g.name.clone(),
                    position: 0,
                    message: "invalid generator name".into(),
                });
            }
        }
        let relations = file
            .relations
            .iter()
            .map(|r| parse_monomial(r, &file.generators))
            .collect::<Result<Vec<_>>>()?;
        Self::new(file.generators, relations)
    }

    pub fn with_field(mut self, field: Field) -> Self {
        self.field = field;
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn vars(&self) -> usize {
        self.generators.len()
    }

    pub fn relations(&self) -> &[Monomial] {
        &self.relations
    }

    pub fn is_polynomial(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn weight(&self, m: &Monomial) -> u32 {
        m.0.iter().zip(&self.generators).map(|(e, g)| e * g.weight).sum()
    }

    /// Whether the monomial survives in the quotient.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.relations.iter().any(|r| r.divides(m))
    }

    /// Product in the quotient: `None` when it lies in the ideal.
    pub fn multiply(&self, a: &Monomial, b: &Monomial) -> Option<Monomial> {
        let m = a.mul(b);
        self.is_standard(&m).then_some(m)
    }

    /// Standard monomials of weight `w`, in descending lexicographic order
    /// of exponent vectors (`x², xy, y²`).
    pub fn monomial_basis(&self, w: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut e = vec![0u32; self.vars()];
        self.enumerate(0, w, &mut e, &mut out);
        out
    }

    fn enumerate(&self, i: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == self.vars() {
            if left == 0 {
                let m = Monomial(e.clone());
                if self.is_standard(&m) {
                    out.push(m);
                }
            }
            return;
        }
        let wt = self.generators[i].weight;
        for k in (0..=left / wt).rev() {
            e[i] = k;
            self.enumerate(i + 1, left - k * wt, e, out);
        }
        e[i] = 0;
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        let parts: Vec<String> = m
            .0
            .iter()
            .zip(&self.generators)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, g)| if e == 1 { g.name.clone() } else { format!("{}^{e}", g.name) })
            .collect();
        parts.join("*")
    }
}

impl fmt::Display for AlgebraPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses `x^2*y` (factors separated by `*` or spaces) over the given generators.
pub fn parse_monomial(s: &str, generators: &[Generator]) -> Result<Monomial> {
    let err = |position: usize, message: String| Error::Parse {
        input: s.to_string(),
        position,
        message,
    };
    let mut e = vec![0u32; generators.len()];
    let mut pos = 0;
    let mut any = false;
    for token in s.split(['*', ' ']) {
        let start = pos;
        pos += token.len() + 1;
        if token.is_empty() {
            continue;
        }
        let (name, exp) = match token.split_once('^') {
            Some((n, x)) => {
                let k = x
                    .parse::<u32>()
                    .map_err(|_| err(start + n.len() + 1, format!("bad exponent `{x}`")))?;
                (n, k)
            }
            None => (token, 1),
        };
        let i = generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| err(start, format!("unknown generator `{name}`")))?;
        e[i] += exp;
        any = true;
    }
    if !any {
        return Err(err(0, "empty monomial".into()));
    }
    Ok(Monomial(e))
}
