//! The second Gelfand-Dickey bracket as a local Poisson kernel.
//!
//! For a monic `L` of order n and functionals `l_V = Tr(L V)`, the bracket is
//! `{l_V, l_W} = Tr((V L)_+ W L - (L V)_+ L W)`. With this sign the k-th Lax
//! flow is `u_t = {u, H}` for `H = (n/k) Tr L^(k/n)`. Kernels are read off by
//! pairing with symbolic test functions and integrating by parts.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::{json, Value};

use super::diff::{self, Alphabet, DiffPoly, Var};
use super::{parametrize, render_operator, PsiDO};
use crate::emit::Style;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{self, Scalar};

const COEFF_BASE: u16 = 1000;
const LEFT_TEST_BASE: u16 = 2000;
const RIGHT_TEST_BASE: u16 = 3000;

/// `{f(x), g(y)} = sum_m P_m(x) d_x^m delta(x - y)` for every pair of fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalBracket {
    pub fields: Vec<u16>,
    pub entries: BTreeMap<(u16, u16), BTreeMap<u32, DiffPoly>>,
}

/// One coefficient of a kernel that differs between two brackets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermDiff {
    pub left_field: u16,
    pub right_field: u16,
    pub derivative: u32,
    pub computed: DiffPoly,
    pub reference: DiffPoly,
}

/// Outcome of one antisymmetry moment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Moment {
    pub left_field: u16,
    pub right_field: u16,
    pub left_power: u32,
    pub right_power: u32,
    pub vanishes: bool,
}

impl LocalBracket {
    pub fn kernel(&self, f: u16, g: u16) -> BTreeMap<u32, DiffPoly> {
        self.entries.get(&(f, g)).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &Scalar) -> LocalBracket {
        LocalBracket {
            fields: self.fields.clone(),
            entries: self
                .entries
                .iter()
                .map(|(k, ops)| {
                    let scaled = ops
                        .iter()
                        .map(|(m, p)| (*m, p.scale(c)))
                        .filter(|(_, p)| !p.is_zero())
                        .collect();
                    (*k, scaled)
                })
                .collect(),
        }
    }

    /// Every coefficient that differs from `reference`.
    pub fn diff(&self, reference: &LocalBracket) -> Vec<TermDiff> {
        let mut keys: Vec<(u16, u16)> = self.entries.keys().chain(reference.entries.keys()).copied().collect();
        keys.sort();
        keys.dedup();
        let mut out = Vec::new();
        for (f, g) in keys {
            let a = self.kernel(f, g);
            let b = reference.kernel(f, g);
            let mut ms: Vec<u32> = a.keys().chain(b.keys()).copied().collect();
            ms.sort();
            ms.dedup();
            for m in ms.into_iter().rev() {
                let pa = a.get(&m).cloned().unwrap_or_else(DiffPoly::zero);
                let pb = b.get(&m).cloned().unwrap_or_else(DiffPoly::zero);
                if pa != pb {
                    out.push(TermDiff {
                        left_field: f,
                        right_field: g,
                        derivative: m,
                        computed: pa,
                        reference: pb,
                    });
                }
            }
        }
        out
    }

    /// If every kernel is `c` times the reference, returns `c`.
    pub fn ratio_to(&self, reference: &LocalBracket) -> Option<Scalar> {
        let mut ratio: Option<Scalar> = None;
        let mut keys: Vec<(u16, u16)> = self.entries.keys().chain(reference.entries.keys()).copied().collect();
        keys.sort();
        keys.dedup();
        for (f, g) in keys {
            let a = self.kernel(f, g);
            let b = reference.kernel(f, g);
            for m in a.keys().chain(b.keys()) {
                let pa = a.get(m).cloned().unwrap_or_else(DiffPoly::zero);
                let pb = b.get(m).cloned().unwrap_or_else(DiffPoly::zero);
                if pb.is_zero() {
                    if !pa.is_zero() {
                        return None;
                    }
                    continue;
                }
                let (mono, cb) = pb.terms().next().unwrap();
                let r = pa.coefficient(mono) / cb;
                if pa != pb.scale(&r) {
                    return None;
                }
                match &ratio {
                    Some(prev) if *prev != r => return None,
                    _ => ratio = Some(r),
                }
            }
        }
        ratio
    }

    /// `int x^a {f(x), g(y)} y^b + int y^b {g(y), f(x)} x^a` reduced modulo
    /// total derivatives, for all field pairs and `a, b <= max_power`.
    pub fn antisymmetry_moments(&self, max_power: u32) -> Vec<Moment> {
        let mut out = Vec::new();
        let xp = |k: u32| diff::x().pow(k);
        for &f in &self.fields {
            for &g in &self.fields {
                let kfg = self.kernel(f, g);
                let kgf = self.kernel(g, f);
                for a in 0..=max_power {
                    for b in 0..=max_power {
                        let mut density = DiffPoly::zero();
                        for (m, p) in &kfg {
                            density = &density + &(&(&xp(a) * p) * &diff::d_n(&xp(b), *m));
                        }
                        for (m, p) in &kgf {
                            density = &density + &(&(&xp(b) * p) * &diff::d_n(&xp(a), *m));
                        }
                        out.push(Moment {
                            left_field: f,
                            right_field: g,
                            left_power: a,
                            right_power: b,
                            vanishes: diff::is_total_derivative(&density),
                        });
                    }
                }
            }
        }
        out
    }

    /// `{u(x), v(y)} = (...) delta(x-y)` for one pair of fields.
    pub fn render_entry(&self, f: u16, g: u16, alphabet: &Alphabet, style: Style) -> String {
        let k = self.kernel(f, g);
        let op = render_operator(k.iter().rev().map(|(m, p)| (*m as i32, p)), alphabet, style, "d");
        match style {
            Style::Text => format!(
                "{{{}(x), {}(y)}} = ({op}) delta(x-y)",
                alphabet.name(f),
                alphabet.name(g)
            ),
            Style::Latex => format!(
                "\\{{{}(x), {}(y)\\}} = \\left({op}\\right)\\delta(x-y)",
                alphabet.jet_string(f, 0, Style::Latex),
                alphabet.jet_string(g, 0, Style::Latex)
            ),
        }
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|((f, g), ops)| {
                let terms: Vec<Value> = ops
                    .iter()
                    .rev()
                    .map(|(m, p)| json!({"derivative": m, "coefficient": alphabet.json(p)}))
                    .collect();
                json!({"left": alphabet.name(*f), "right": alphabet.name(*g), "kernel": terms})
            })
            .collect();
        Value::Array(entries)
    }
}

/// `res((V L)_+ W L - (L V)_+ L W)`.
pub fn bracket_density(l: &PsiDO, v: &PsiDO, w: &PsiDO, trunc: i32) -> Result<DiffPoly> {
    let lv = l.compose(v, trunc)?.plus_part()?;
    let lw = l.compose(w, trunc)?;
    let vl = v.compose(l, trunc)?.plus_part()?;
    let wl = w.compose(l, trunc)?;
    let first = lv.compose(&lw, -1)?;
    let second = vl.compose(&wl, -1)?;
    second.sub(&first).res()
}

/// `V = sum_k d^(-k-1) o v_k`, so that `res(L V) = sum_k u_k v_k`.
pub fn dual_operator(densities: &BTreeMap<i32, DiffPoly>, trunc: i32) -> Result<PsiDO> {
    let mut v = PsiDO::zero().truncated(trunc);
    for (&k, vk) in densities {
        let term = PsiDO::partial(-k - 1).compose(&PsiDO::function(vk.clone()), trunc)?;
        v = v.add(&term);
    }
    Ok(v)
}

/// The bracket of the fields of `L`. The coefficients of `L` below the top
/// must be triangular in the fields; the only constant coefficient allowed
/// is a vanishing subleading one, which is imposed by Dirac reduction.
pub fn agd_bracket(l: &PsiDO, trunc: i32) -> Result<LocalBracket> {
    let param = parametrize(l)?;
    let n = param.order as i32;
    let mut constrained = false;
    for (order, value) in &param.constant_orders {
        if *order == n - 1 && value.is_zero() {
            constrained = true;
        } else {
            return Err(Error::UnsupportedParametrization(format!(
                "constant coefficient at order {order}; only a vanishing subleading coefficient is supported"
            )));
        }
    }
    let trunc = trunc.min(-2 * n - 2);
    let free: Vec<i32> = (0..n).filter(|&k| !(constrained && k == n - 1)).collect();
    let coeff_symbol = |k: i32| COEFF_BASE + k as u16;

    // each field as a function of the coefficients
    let mut inverse: BTreeMap<u16, DiffPoly> = BTreeMap::new();
    for p in &param.pivots {
        let rest = diff::substitute_fields(&p.rest, |f| inverse.get(&f).cloned());
        let g = (&diff::field(coeff_symbol(p.order)) - &rest).scale(&(scalar::one() / &p.scale));
        inverse.insert(p.field, g);
    }
    let mut fields: Vec<u16> = inverse.keys().copied().collect();
    fields.sort();

    let mut generic = vec![(n, DiffPoly::one())];
    generic.extend(free.iter().map(|&k| (k, diff::field(coeff_symbol(k)))));
    let lu = PsiDO::exact(generic);

    let dual_for = |test: u16, f: u16| -> Result<PsiDO> {
        let density = &diff::field(test) * &inverse[&f];
        let mut vs = BTreeMap::new();
        for &k in &free {
            vs.insert(k, diff::euler(&density, coeff_symbol(k)));
        }
        let mut v = dual_operator(&vs, trunc)?;
        if constrained {
            // fix v_{n-1} so that res [L, V] = 0
            let r = lu.commutator(&v, -1)?.res()?;
            let s = diff::integrate(&r)?.scale(&(scalar::int(-1) / scalar::int(n as i64)));
            let extra = PsiDO::partial(-n).compose(&PsiDO::function(s), trunc)?;
            v = v.add(&extra);
        }
        Ok(v)
    };

    let mut entries = BTreeMap::new();
    for &f in &fields {
        let va = dual_for(LEFT_TEST_BASE + f, f)?;
        for &g in &fields {
            let wb = dual_for(RIGHT_TEST_BASE + g, g)?;
            let t = bracket_density(&lu, &va, &wb, trunc)?;
            let t = diff::substitute_fields(&t, |s| {
                (COEFF_BASE..LEFT_TEST_BASE)
                    .contains(&s)
                    .then(|| l.coeff((s - COEFF_BASE) as i32))
            });
            let e = diff::euler(&t, LEFT_TEST_BASE + f);
            let b = RIGHT_TEST_BASE + g;
            let top = diff::max_order(&e, b).unwrap_or(0);
            let mut kernel = BTreeMap::new();
            let mut check = e.clone();
            for m in 0..=top {
                let v = Var::Jet { field: b, order: m };
                let p = e.partial(&v);
                if !p.is_zero() {
                    check = &check - &(&p * &Poly::var(v));
                    kernel.insert(m as u32, p);
                }
            }
            if !check.is_zero() {
                return Err(Error::Evaluation("bracket density is not bilinear".into()));
            }
            entries.insert((f, g), kernel);
        }
    }
    Ok(LocalBracket { fields, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psido::diff::{field, jet};
    use crate::scalar::{frac, int};

    #[test]
    fn kdv_bracket_is_virasoro_shaped() {
        let l = PsiDO::exact([(2, DiffPoly::one()), (0, field(0))]);
        let b = agd_bracket(&l, -8).unwrap();
        let k = b.kernel(0, 0);
        let reference: BTreeMap<u32, DiffPoly> = [
            (3, DiffPoly::constant(frac(1, 2))),
            (1, field(0).scale(&int(2))),
            (0, jet(0, 1)),
        ]
        .into_iter()
        .collect();
        let reference = LocalBracket {
            fields: vec![0],
            entries: [((0, 0), reference)].into_iter().collect(),
        };
        assert_eq!(b.ratio_to(&reference), Some(int(1)), "{k:?}");
        assert!(b.antisymmetry_moments(2).iter().all(|m| m.vanishes));
    }
}
