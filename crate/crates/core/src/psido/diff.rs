//! Differential polynomials in jet variables with the total derivative.

use std::collections::BTreeMap;

use crate::emit::{self, Style};
use crate::error::{Error, Result};
use crate::poly::{total_degree, Monomial, Poly};
use crate::scalar::{self, Scalar};

/// A jet variable `u_field^(order)`, or the independent variable `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Jet { field: u16, order: u16 },
    X,
}

pub type DiffPoly = Poly<Var>;

pub fn jet(field: u16, order: u16) -> DiffPoly {
    Poly::var(Var::Jet { field, order })
}

pub fn field(field: u16) -> DiffPoly {
    jet(field, 0)
}

pub fn x() -> DiffPoly {
    Poly::var(Var::X)
}

pub fn constant(c: Scalar) -> DiffPoly {
    Poly::constant(c)
}

/// The total derivative: `u^(k) -> u^(k+1)`, `x -> 1`, extended as a derivation.
pub fn d(p: &DiffPoly) -> DiffPoly {
    let mut out = DiffPoly::zero();
    for v in p.variables() {
        let partial = p.partial(&v);
        match v {
            Var::Jet { field, order } => out = &out + &(&partial * &jet(field, order + 1)),
            Var::X => out = &out + &partial,
        }
    }
    out
}

pub fn d_n(p: &DiffPoly, k: u32) -> DiffPoly {
    let mut out = p.clone();
    for _ in 0..k {
        out = d(&out);
    }
    out
}

pub fn fields_of(p: &DiffPoly) -> Vec<u16> {
    let mut fs: Vec<u16> = p
        .variables()
        .into_iter()
        .filter_map(|v| match v {
            Var::Jet { field, .. } => Some(field),
            Var::X => None,
        })
        .collect();
    fs.dedup();
    fs
}

pub fn max_order(p: &DiffPoly, f: u16) -> Option<u16> {
    p.variables()
        .into_iter()
        .filter_map(|v| match v {
            Var::Jet { field, order } if field == f => Some(order),
            _ => None,
        })
        .max()
}

/// The variational derivative `sum_k (-D)^k dP/du^(k)`.
pub fn euler(p: &DiffPoly, f: u16) -> DiffPoly {
    let Some(top) = max_order(p, f) else {
        return DiffPoly::zero();
    };
    let mut out = DiffPoly::zero();
    for k in 0..=top {
        let partial = p.partial(&Var::Jet { field: f, order: k });
        if partial.is_zero() {
            continue;
        }
        let mut term = d_n(&partial, k as u32);
        if k % 2 == 1 {
            term = -term;
        }
        out = &out + &term;
    }
    out
}

/// True iff `p = D q` for some differential polynomial `q`, decided by the
/// vanishing of every variational derivative.
pub fn is_total_derivative(p: &DiffPoly) -> bool {
    fields_of(p).into_iter().all(|f| euler(p, f).is_zero())
}

/// Some `q` with `D q = p`, or `NotExact`.
pub fn integrate(p: &DiffPoly) -> Result<DiffPoly> {
    let mut q = DiffPoly::zero();
    let jet_degree = |m: &Monomial<Var>| -> u32 {
        m.iter()
            .filter(|(v, _)| matches!(v, Var::Jet { .. }))
            .map(|(_, e)| e)
            .sum()
    };
    let mut by_degree: BTreeMap<u32, DiffPoly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let deg = jet_degree(m);
        if deg == 0 {
            // c x^k integrates to c x^(k+1)/(k+1)
            let k = m.first().map_or(0, |(_, e)| *e);
            q.add_term(vec![(Var::X, k + 1)], c / scalar::int(k as i64 + 1));
        } else {
            by_degree
                .entry(deg)
                .or_insert_with(DiffPoly::zero)
                .add_term(m.clone(), c.clone());
        }
    }
    for (deg, part) in by_degree {
        let mut acc = DiffPoly::zero();
        for f in fields_of(&part) {
            let top = max_order(&part, f).unwrap_or(0);
            for k in 1..=top {
                let partial = part.partial(&Var::Jet { field: f, order: k });
                if partial.is_zero() {
                    continue;
                }
                for j in 0..k {
                    let mut inner = d_n(&partial, (k - 1 - j) as u32);
                    if (k - 1 - j) % 2 == 1 {
                        inner = -inner;
                    }
                    acc = &acc + &(&jet(f, j) * &inner);
                }
            }
        }
        q = &q + &acc.scale(&(scalar::one() / scalar::int(deg as i64)));
    }
    if d(&q) == *p {
        Ok(q)
    } else {
        Err(Error::NotExact)
    }
}

/// Replaces each field by a differential polynomial, extending to jets by
/// differentiating the image.
pub fn substitute_fields(
    p: &DiffPoly,
    mut image: impl FnMut(u16) -> Option<DiffPoly>,
) -> DiffPoly {
    p.substitute(|v| match *v {
        Var::Jet { field, order } => match image(field) {
            Some(img) => d_n(&img, order as u32),
            None => jet(field, order),
        },
        Var::X => x(),
    })
}

/// Names of fields for rendering and parsing.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new(names: Vec<String>) -> Self {
        Alphabet { names }
    }

    pub fn from_strs(names: &[&str]) -> Self {
        Alphabet {
            names: names.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<u16> {
        self.names.iter().position(|n| n == name).map(|i| i as u16)
    }

    pub fn name(&self, f: u16) -> String {
        self.names
            .get(f as usize)
            .cloned()
            .unwrap_or_else(|| format!("w{f}"))
    }

    pub fn jet_string(&self, f: u16, order: u16, style: Style) -> String {
        let name = self.name(f);
        let base = match style {
            Style::Text => name,
            Style::Latex => emit::label_to_latex(&name),
        };
        match (style, order) {
            (_, 0) => base,
            (Style::Latex, k) if k > 3 => format!("{base}^{{({k})}}"),
            (_, k) => format!("{base}{}", "'".repeat(k as usize)),
        }
    }

    pub fn monomial_string(&self, m: &Monomial<Var>, style: Style) -> String {
        let parts: Vec<String> = m
            .iter()
            .map(|(v, e)| {
                let base = match *v {
                    Var::Jet { field, order } => self.jet_string(field, order, style),
                    Var::X => "x".to_string(),
                };
                emit::power(&base, *e, style)
            })
            .collect();
        parts.join(style.product_separator())
    }

    /// Terms ordered by polynomial degree, then total derivative count, then
    /// variable order (fields in alphabet order, lower derivatives first).
    pub fn ordered_terms<'a>(&self, p: &'a DiffPoly) -> Vec<(&'a Monomial<Var>, &'a Scalar)> {
        let weight = |m: &Monomial<Var>| -> u32 {
            m.iter()
                .map(|(v, e)| match v {
                    Var::Jet { order, .. } => *order as u32 * e,
                    Var::X => 0,
                })
                .sum()
        };
        let mut ts: Vec<_> = p.terms().collect();
        ts.sort_by(|(a, _), (b, _)| {
            total_degree(a)
                .cmp(&total_degree(b))
                .then_with(|| weight(a).cmp(&weight(b)))
                .then_with(|| a.cmp(b))
        });
        ts
    }

    pub fn render(&self, p: &DiffPoly, style: Style) -> String {
        let terms: Vec<(Scalar, String)> = self
            .ordered_terms(p)
            .into_iter()
            .map(|(m, c)| (c.clone(), self.monomial_string(m, style)))
            .collect();
        emit::join_terms(&terms, style)
    }

    pub fn text(&self, p: &DiffPoly) -> String {
        self.render(p, Style::Text)
    }

    /// Term list for JSON output.
    pub fn json(&self, p: &DiffPoly) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .ordered_terms(p)
            .into_iter()
            .map(|(m, c)| {
                let factors: Vec<serde_json::Value> = m
                    .iter()
                    .map(|(v, e)| match *v {
                        Var::Jet { field, order } => {
                            serde_json::json!({"field": self.name(field), "derivative": order, "power": e})
                        }
                        Var::X => serde_json::json!({"field": "x", "derivative": 0, "power": e}),
                    })
                    .collect();
                serde_json::json!({"coefficient": scalar::to_string(c), "factors": factors})
            })
            .collect();
        serde_json::Value::Array(terms)
    }
}
