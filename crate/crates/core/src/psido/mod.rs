//! Pseudodifferential operators over differential polynomials: composition
//! by the Leibniz rule, fractional roots, Lax flows, residues, the second
//! Gelfand-Dickey bracket and Miura products.

pub mod agd;
pub mod diff;

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::emit::{self, Style};
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

pub use agd::{agd_bracket, LocalBracket};
pub use diff::{Alphabet, DiffPoly, Var};

/// Default truncation for operators of order n.
pub fn default_trunc(n: usize) -> i32 {
    -(2 * n as i32 + 4)
}

/// `sum_k a_k d^k` with finitely many orders above the truncation point.
/// `trunc = None` means the operator is known exactly; otherwise every
/// order below `trunc` is unknown and omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiDO {
    coeffs: BTreeMap<i32, DiffPoly>,
    trunc: Option<i32>,
}

impl PsiDO {
    pub fn zero() -> Self {
        PsiDO {
            coeffs: BTreeMap::new(),
            trunc: None,
        }
    }

    pub fn one() -> Self {
        Self::partial(0)
    }

    /// `d^k`, exactly.
    pub fn partial(k: i32) -> Self {
        Self::exact([(k, DiffPoly::one())])
    }

    /// Multiplication by a function.
    pub fn function(p: DiffPoly) -> Self {
        Self::exact([(0, p)])
    }

    pub fn exact(coeffs: impl IntoIterator<Item = (i32, DiffPoly)>) -> Self {
        let mut op = PsiDO::zero();
        for (k, c) in coeffs {
            op.add_coeff(k, c);
        }
        op
    }

    fn add_coeff(&mut self, k: i32, c: DiffPoly) {
        if c.is_zero() || self.trunc.is_some_and(|t| k < t) {
            return;
        }
        let slot = self.coeffs.entry(k).or_insert_with(DiffPoly::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn trunc(&self) -> Option<i32> {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }

    /// Drops every order below `t`.
    pub fn truncated(&self, t: i32) -> Self {
        let t = self.trunc.map_or(t, |s| s.max(t));
        PsiDO {
            coeffs: self.coeffs.range(t..).map(|(k, c)| (*k, c.clone())).collect(),
            trunc: Some(t),
        }
    }

    pub fn coefficients(&self) -> &BTreeMap<i32, DiffPoly> {
        &self.coeffs
    }

    pub fn coeff(&self, k: i32) -> DiffPoly {
        self.coeffs.get(&k).cloned().unwrap_or_else(DiffPoly::zero)
    }

    pub fn top_order(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_differential(&self) -> bool {
        self.trunc.is_none() && self.coeffs.keys().all(|&k| k >= 0)
    }

    /// Highest order that could carry a nonzero coefficient, for truncation
    /// bookkeeping: the top order, or just below the truncation point.
    fn reach(&self) -> i32 {
        match (self.top_order(), self.trunc) {
            (Some(k), _) => k,
            (None, Some(t)) => t - 1,
            (None, None) => i32::MIN / 4,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = PsiDO {
            coeffs: BTreeMap::new(),
            trunc: self.trunc,
        };
        for (k, p) in &self.coeffs {
            out.add_coeff(*k, p.scale(c));
        }
        out
    }

    pub fn add(&self, other: &PsiDO) -> Self {
        let trunc = match (self.trunc, other.trunc) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        let mut out = PsiDO {
            coeffs: BTreeMap::new(),
            trunc,
        };
        for (k, p) in self.coeffs.iter().chain(&other.coeffs) {
            out.add_coeff(*k, p.clone());
        }
        out
    }

    pub fn sub(&self, other: &PsiDO) -> Self {
        self.add(&other.scale(&scalar::int(-1)))
    }

    /// Orders `>= 0`; needs the operator to be known down to order 0.
    pub fn plus_part(&self) -> Result<PsiDO> {
        if self.trunc.is_some_and(|t| t > 0) {
            return Err(Error::Truncation(format!(
                "plus part needs order 0, operator is truncated at {}",
                self.trunc.unwrap()
            )));
        }
        Ok(PsiDO::exact(self.coeffs.range(0..).map(|(k, c)| (*k, c.clone()))))
    }

    /// Orders `< 0`, keeping the truncation.
    pub fn minus_part(&self) -> PsiDO {
        PsiDO {
            coeffs: self.coeffs.range(..0).map(|(k, c)| (*k, c.clone())).collect(),
            trunc: self.trunc,
        }
    }

    /// Coefficient of `d^-1`.
    pub fn res(&self) -> Result<DiffPoly> {
        if self.trunc.is_some_and(|t| t > -1) {
            return Err(Error::Truncation(format!(
                "residue needs order -1, operator is truncated at {}",
                self.trunc.unwrap()
            )));
        }
        Ok(self.coeff(-1))
    }

    /// True if the two operators agree at every order where both are known.
    pub fn agrees_with(&self, other: &PsiDO) -> bool {
        let lo = match (self.trunc, other.trunc) {
            (Some(a), Some(b)) => a.max(b),
            (a, b) => a.or(b).unwrap_or(i32::MIN),
        };
        let keys: std::collections::BTreeSet<i32> = self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .copied()
            .filter(|&k| k >= lo)
            .collect();
        keys.into_iter().all(|k| self.coeff(k) == other.coeff(k))
    }

    /// Leibniz product. The result is exact when A is a differential
    /// operator and both factors are exact; otherwise it is computed down to
    /// `max(trunc, validity of the inputs)`.
    pub fn compose(&self, other: &PsiDO, trunc: i32) -> Result<PsiDO> {
        let exact = self.is_differential() && other.is_exact();
        let bound = if exact {
            None
        } else {
            let top = self.reach().saturating_add(other.reach());
            if trunc > top && !self.is_zero() && !other.is_zero() {
                return Err(Error::Truncation(format!(
                    "truncation order {trunc} is above the leading order {top} of the product"
                )));
            }
            let mut t = trunc;
            if let Some(ta) = self.trunc {
                t = t.max(ta.saturating_add(other.reach()));
            }
            if let Some(tb) = other.trunc {
                t = t.max(tb.saturating_add(self.reach()));
            }
            Some(t)
        };
        let mut out = PsiDO {
            coeffs: BTreeMap::new(),
            trunc: bound,
        };
        for (&k, a) in &self.coeffs {
            for (&l, b) in &other.coeffs {
                // d^k b = sum_t C(k,t) b^(t) d^(k-t)
                let max_t: i64 = match bound {
                    None => k as i64,
                    Some(t) => {
                        let lim = k as i64 + l as i64 - t as i64;
                        if k >= 0 {
                            lim.min(k as i64)
                        } else {
                            lim
                        }
                    }
                };
                let mut deriv = b.clone();
                for t in 0..=max_t.max(-1) {
                    if t > 0 {
                        deriv = diff::d(&deriv);
                    }
                    if deriv.is_zero() {
                        break;
                    }
                    let binom = scalar::binomial(k as i64, t as u32);
                    if binom.is_zero() {
                        continue;
                    }
                    let coef = (a * &deriv).scale(&binom);
                    out.add_coeff(k + l - t as i32, coef);
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &PsiDO, trunc: i32) -> Result<PsiDO> {
        Ok(self.compose(other, trunc)?.sub(&other.compose(self, trunc)?))
    }

    /// `self^k` for `k >= 1`.
    pub fn power(&self, k: u32, trunc: i32) -> Result<PsiDO> {
        if k == 0 {
            return Ok(PsiDO::one());
        }
        // each later factor raises the truncation point by up to `lift`
        let lift = self.top_order().unwrap_or(0).max(0);
        let mut acc = self.clone();
        for i in 1..k {
            let remaining = (k - 1 - i) as i32;
            acc = self.compose(&acc, trunc.saturating_sub(remaining * lift))?;
        }
        Ok(acc)
    }

    /// Formal adjoint of a differential operator: `sum (-d)^k o a_k`.
    pub fn adjoint(&self) -> Result<PsiDO> {
        if !self.is_differential() {
            return Err(Error::InvalidArgument("adjoint needs a differential operator".into()));
        }
        let mut out = PsiDO::zero();
        for (&k, a) in &self.coeffs {
            let sign = if k % 2 == 0 { scalar::one() } else { scalar::int(-1) };
            let term = PsiDO::partial(k).compose(&PsiDO::function(a.clone()), 0)?;
            out = out.add(&term.scale(&sign));
        }
        Ok(out)
    }

    /// Renders as `a_n*d^n + ... + a_0 + a_-1*d^-1 + ...`, highest order first.
    pub fn render(&self, alphabet: &Alphabet, style: Style) -> String {
        render_operator(
            self.coeffs.iter().rev().map(|(k, c)| (*k, c)),
            alphabet,
            style,
            "d",
        )
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .rev()
            .map(|(k, c)| serde_json::json!({"order": k, "coefficient": alphabet.json(c)}))
            .collect();
        serde_json::json!({"terms": terms, "truncation": self.trunc})
    }
}

/// Shared renderer for operator-valued expressions `sum P_k d^k`.
pub fn render_operator<'a>(
    terms: impl Iterator<Item = (i32, &'a DiffPoly)>,
    alphabet: &Alphabet,
    style: Style,
    symbol: &str,
) -> String {
    let sym = match style {
        Style::Text => symbol.to_string(),
        Style::Latex => "\\partial".to_string(),
    };
    let mut pieces: Vec<(Scalar, String)> = Vec::new();
    for (k, c) in terms {
        let op = match (k, style) {
            (0, _) => String::new(),
            (1, _) => sym.clone(),
            (_, Style::Text) => format!("{sym}^{k}"),
            (_, Style::Latex) => format!("{sym}^{{{k}}}"),
        };
        let join = |a: &str, b: &str| -> String {
            match (a.is_empty(), b.is_empty()) {
                (true, _) => b.to_string(),
                (_, true) => a.to_string(),
                _ => format!("{a}{}{b}", style.product_separator()),
            }
        };
        if c.len() == 1 {
            let (m, coef) = c.terms().next().unwrap();
            let mono = alphabet.monomial_string(m, style);
            pieces.push((coef.clone(), join(&mono, &op)));
        } else {
            let inner = alphabet.render(c, style);
            let wrapped = match style {
                Style::Text => format!("({inner})"),
                Style::Latex => format!("\\left({inner}\\right)"),
            };
            pieces.push((scalar::one(), join(&wrapped, &op)));
        }
    }
    emit::join_terms(&pieces, style)
}

fn check_monic(l: &PsiDO) -> Result<usize> {
    if !l.is_differential() {
        return Err(Error::NonMonic("operator must be a differential operator".into()));
    }
    let n = l
        .top_order()
        .ok_or_else(|| Error::NonMonic("zero operator".into()))?;
    if n < 1 || !l.coeff(n).as_constant().is_some_and(|c| c.is_one()) {
        return Err(Error::NonMonic(format!("leading coefficient of order {n} is not 1")));
    }
    Ok(n as usize)
}

/// The unique `M = d + m_0 + m_-1 d^-1 + ...` with `M^n = L`, computed down
/// to order `trunc`.
pub fn nth_root(l: &PsiDO, n: usize, trunc: i32) -> Result<PsiDO> {
    let order = check_monic(l)?;
    if order != n {
        return Err(Error::NonMonic(format!("operator has order {order}, not {n}")));
    }
    let mut m = PsiDO::partial(1);
    let n_i = n as i32;
    let inv_n = scalar::one() / scalar::int(n as i64);
    // the coefficient of d^(1-j) is fixed by order n-j of M^n
    let mut j = 1;
    while 1 - j >= trunc {
        let target = n_i - j;
        let partial_power = m.power(n as u32, target)?;
        let rhs = &l.coeff(target) - &partial_power.coeff(target);
        m.add_coeff(1 - j, rhs.scale(&inv_n));
        j += 1;
    }
    Ok(m.truncated(trunc))
}

/// `(L^(k/n))_+` for a monic order-n operator.
pub fn fractional_plus(l: &PsiDO, k: u32, trunc: i32) -> Result<PsiDO> {
    let n = check_monic(l)?;
    let root_trunc = trunc.min(1 - k as i32);
    let m = nth_root(l, n, root_trunc)?;
    m.power(k, root_trunc)?.plus_part()
}

/// `[(L^(k/n))_+, L]` by order; orders `>= n-1` must vanish.
pub fn lax_flow(l: &PsiDO, k: u32, trunc: i32) -> Result<BTreeMap<i32, DiffPoly>> {
    if k == 0 {
        return Err(Error::InvalidArgument("flow index must be at least 1".into()));
    }
    let n = check_monic(l)? as i32;
    let p = fractional_plus(l, k, trunc)?;
    let c = p.commutator(l, 0)?;
    if let Some(top) = c.top_order() {
        if top >= n - 1 {
            return Err(Error::Truncation(format!(
                "Lax commutator has a nonzero term of order {top}"
            )));
        }
    }
    Ok((0..n - 1).map(|i| (i, c.coeff(i))).collect())
}

/// How each field of a Lax operator is read off from one coefficient:
/// `coeff(order) = scale * field + rest`, where `rest` involves only fields
/// resolved earlier.
#[derive(Clone, Debug)]
pub struct Pivot {
    pub field: u16,
    pub order: i32,
    pub scale: Scalar,
    pub rest: DiffPoly,
}

/// Field-by-field triangular description of the coefficients of a monic
/// differential operator.
#[derive(Clone, Debug)]
pub struct Parametrization {
    pub order: usize,
    pub pivots: Vec<Pivot>,
    /// Orders below the top whose coefficient is a constant.
    pub constant_orders: Vec<(i32, Scalar)>,
}

pub fn parametrize(l: &PsiDO) -> Result<Parametrization> {
    let n = check_monic(l)?;
    let mut pending: Vec<(i32, DiffPoly)> = Vec::new();
    let mut constant_orders = Vec::new();
    for i in 0..n as i32 {
        let c = l.coeff(i);
        match c.as_constant() {
            Some(v) => constant_orders.push((i, v)),
            None => pending.push((i, c)),
        }
    }
    let mut all_fields: Vec<u16> = pending.iter().flat_map(|(_, c)| diff::fields_of(c)).collect();
    all_fields.sort();
    all_fields.dedup();
    let mut resolved: Vec<u16> = Vec::new();
    let mut pivots = Vec::new();
    while !pending.is_empty() {
        let mut progress = None;
        'search: for (idx, (order, c)) in pending.iter().enumerate() {
            for f in diff::fields_of(c) {
                if resolved.contains(&f) {
                    continue;
                }
                let scale = c.coefficient(&vec![(Var::Jet { field: f, order: 0 }, 1)]);
                if scale.is_zero() {
                    continue;
                }
                let rest = c - &diff::field(f).scale(&scale);
                if diff::fields_of(&rest).iter().all(|g| resolved.contains(g)) {
                    progress = Some((
                        idx,
                        Pivot {
                            field: f,
                            order: *order,
                            scale,
                            rest,
                        },
                    ));
                    break 'search;
                }
            }
        }
        let Some((idx, pivot)) = progress else {
            return Err(Error::UnsupportedParametrization(
                "coefficients are not triangular in the fields".into(),
            ));
        };
        resolved.push(pivot.field);
        pivots.push(pivot);
        pending.remove(idx);
    }
    if resolved.len() != all_fields.len() {
        return Err(Error::UnsupportedParametrization(
            "more fields than non-constant coefficients".into(),
        ));
    }
    Ok(Parametrization {
        order: n,
        pivots,
        constant_orders,
    })
}

/// `dP/dt` given the time derivative of each field.
pub fn time_derivative(p: &DiffPoly, flows: &BTreeMap<u16, DiffPoly>) -> Result<DiffPoly> {
    let mut out = DiffPoly::zero();
    for v in p.variables() {
        let Var::Jet { field, order } = v else {
            continue;
        };
        let flow = flows
            .get(&field)
            .ok_or_else(|| Error::InvalidArgument(format!("no flow for field {field}")))?;
        out = &out + &(&p.partial(&v) * &diff::d_n(flow, order as u32));
    }
    Ok(out)
}

/// Time derivatives of the fields under the k-th flow.
pub fn field_flows(l: &PsiDO, k: u32, trunc: i32) -> Result<BTreeMap<u16, DiffPoly>> {
    let coeff_flows = lax_flow(l, k, trunc)?;
    let param = parametrize(l)?;
    for (order, _) in &param.constant_orders {
        if !coeff_flows.get(order).is_none_or(|c| c.is_zero()) {
            return Err(Error::UnsupportedParametrization(format!(
                "the flow moves the constant coefficient of order {order}"
            )));
        }
    }
    let mut flows = BTreeMap::new();
    for pivot in &param.pivots {
        let total = coeff_flows
            .get(&pivot.order)
            .cloned()
            .unwrap_or_else(DiffPoly::zero);
        let rest_t = time_derivative(&pivot.rest, &flows)?;
        let ft = (&total - &rest_t).scale(&(scalar::one() / &pivot.scale));
        flows.insert(pivot.field, ft);
    }
    Ok(flows)
}

/// `m * f_t = rhs` for one field of a flow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowEquation {
    pub field: u16,
    pub multiplier: Scalar,
    pub rhs: DiffPoly,
}

impl FlowEquation {
    /// Clears the denominator when the leading displayed term is `±1/m`.
    pub fn new(field: u16, flow: &DiffPoly, alphabet: &Alphabet) -> Self {
        let multiplier = alphabet
            .ordered_terms(flow)
            .first()
            .filter(|(_, c)| c.numer().abs().is_one())
            .map_or_else(scalar::one, |(_, c)| Scalar::from_integer(c.denom().clone()));
        FlowEquation {
            field,
            rhs: flow.scale(&multiplier),
            multiplier,
        }
    }

    pub fn render(&self, alphabet: &Alphabet, style: Style) -> String {
        let name = alphabet.name(self.field);
        let lhs = match style {
            Style::Text => format!("{name}_t"),
            Style::Latex => format!("{name}_{{t}}"),
        };
        let lhs = emit::join_terms(&[(self.multiplier.clone(), lhs)], style);
        format!("{lhs} = {}", alphabet.render(&self.rhs, style))
    }
}

/// Displayed equations of the k-th flow, one per field.
pub fn flow_equations(l: &PsiDO, k: u32, trunc: i32, alphabet: &Alphabet) -> Result<Vec<FlowEquation>> {
    Ok(field_flows(l, k, trunc)?
        .iter()
        .map(|(f, p)| FlowEquation::new(*f, p, alphabet))
        .collect())
}

/// Coefficients of `(a d - h_1)(a d - h_2)...(a d - h_m)` by order, for
/// fields `h_j` given by their indices.
pub fn miura_expand(fields: &[u16], alpha: &Scalar) -> BTreeMap<i32, DiffPoly> {
    let mut acc = PsiDO::one();
    for &f in fields {
        let factor = PsiDO::exact([
            (1, DiffPoly::constant(alpha.clone())),
            (0, -diff::field(f)),
        ]);
        acc = acc.compose(&factor, 0).expect("differential product is exact");
    }
    acc.coeffs
}

#[cfg(test)]
mod tests {
    use super::diff::{field, jet};
    use super::*;
    use crate::scalar::{frac, int};

    fn u() -> DiffPoly {
        field(0)
    }

    #[test]
    fn derivative_past_function() {
        let r = PsiDO::partial(1).compose(&PsiDO::function(u()), -5).unwrap();
        assert!(r.is_exact());
        assert_eq!(r, PsiDO::exact([(1, u()), (0, jet(0, 1))]));
    }

    #[test]
    fn inverse_derivative_expansion() {
        let r = PsiDO::partial(-1).compose(&PsiDO::function(u()), -4).unwrap();
        assert_eq!(r.trunc(), Some(-4));
        assert_eq!(r.coeff(-1), u());
        assert_eq!(r.coeff(-2), -jet(0, 1));
        assert_eq!(r.coeff(-3), jet(0, 2));
        assert_eq!(r.coeff(-4), -jet(0, 3));
        let id = PsiDO::partial(-1).compose(&PsiDO::partial(1), -3).unwrap();
        assert!(id.agrees_with(&PsiDO::one()));
    }

    #[test]
    fn truncation_above_leading_order_fails() {
        assert!(PsiDO::partial(-1).compose(&PsiDO::partial(-1), 0).is_err());
    }

    #[test]
    fn root_of_constant_operator() {
        let l = PsiDO::partial(2);
        let m = nth_root(&l, 2, -6).unwrap();
        assert!(m.agrees_with(&PsiDO::partial(1)));
        assert!(m.coefficients().len() == 1);
    }

    #[test]
    fn non_monic_rejected() {
        let l = PsiDO::exact([(2, DiffPoly::constant(int(2))), (0, u())]);
        assert!(matches!(nth_root(&l, 2, -4), Err(Error::NonMonic(_))));
    }

    #[test]
    fn residue_needs_order_minus_one() {
        let p = PsiDO::exact([(-1, u())]);
        assert_eq!(p.res().unwrap(), u());
        assert!(PsiDO::partial(2).res().unwrap().is_zero());
        assert!(p.truncated(0).res().is_err());
    }

    #[test]
    fn translation_flow() {
        let l = PsiDO::exact([(2, DiffPoly::one()), (0, u())]);
        let flows = field_flows(&l, 1, -6).unwrap();
        assert_eq!(flows[&0], jet(0, 1));
        let zero = lax_flow(&l, 2, -6).unwrap();
        assert!(zero.values().all(|c| c.is_zero()));
    }

    #[test]
    fn two_factor_miura() {
        let a = frac(3, 2);
        let coeffs = miura_expand(&[0, 1], &a);
        let h1 = field(0);
        let h2 = field(1);
        assert_eq!(coeffs[&2], DiffPoly::constant(&a * &a));
        assert_eq!(coeffs[&1], (&h1 + &h2).scale(&-a.clone()));
        assert_eq!(coeffs[&0], &(&h1 * &h2) - &jet(1, 1).scale(&a));
    }
}
