//! Exact arithmetic in the universal enveloping algebra U(g).
//!
//! Elements are stored in PBW normal form with respect to a configurable
//! total order on the basis of g. Internally every monomial is a
//! non-decreasing word of *ranks* (positions in that order), so the term map
//! is canonical and two equal elements compare equal structurally.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap};
use std::hash::{Hash, Hasher};
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::emit::{self, Style};
use crate::error::{Error, Result};
use crate::liealg::{AlgebraElement, LieAlgebraSpec};
use crate::poly::Poly;
use crate::scalar::{self, Scalar};

pub type Word = Vec<u16>;
type Terms = BTreeMap<Word, Scalar>;

/// Index of a basis element of g.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorId(pub usize);

/// A PBW monomial: generators strictly increasing in the configured order,
/// each with a positive exponent. The empty monomial is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PbwMonomial {
    pub factors: Vec<(GeneratorId, u32)>,
}

impl PbwMonomial {
    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }
}

/// Element of U(g) in PBW normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NcPoly {
    pub(crate) terms: Terms,
    pub(crate) algebra: Option<u64>,
}

fn add_into(terms: &mut Terms, w: Word, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match terms.entry(w) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn merge_tag(a: Option<u64>, b: Option<u64>) -> Result<Option<u64>> {
    match (a, b) {
        (Some(x), Some(y)) if x != y => Err(Error::MismatchedAlgebras),
        (Some(x), _) | (_, Some(x)) => Ok(Some(x)),
        _ => Ok(None),
    }
}

impl NcPoly {
    /// A scalar, usable with any algebra.
    pub fn constant(c: Scalar) -> Self {
        let mut terms = Terms::new();
        add_into(&mut terms, Vec::new(), c);
        NcPoly {
            terms,
            algebra: None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Length of the longest PBW monomial; `None` for 0.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).max()
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return NcPoly {
                terms: Terms::new(),
                algebra: self.algebra,
            };
        }
        NcPoly {
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
            algebra: self.algebra,
        }
    }

    pub fn try_add(&self, other: &NcPoly) -> Result<NcPoly> {
        let algebra = merge_tag(self.algebra, other.algebra)?;
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            add_into(&mut terms, w.clone(), c.clone());
        }
        Ok(NcPoly { terms, algebra })
    }

    pub fn try_sub(&self, other: &NcPoly) -> Result<NcPoly> {
        self.try_add(&-other)
    }

    /// Raw rank words with coefficients.
    pub fn words(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    /// Homogeneous part of the given PBW degree.
    pub fn degree_part(&self, d: usize) -> NcPoly {
        NcPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == d)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
            algebra: self.algebra,
        }
    }
}

impl Add for &NcPoly {
    type Output = NcPoly;
    /// Panics if the operands belong to different algebras; see [`NcPoly::try_add`].
    fn add(self, rhs: &NcPoly) -> NcPoly {
        self.try_add(rhs).expect("adding elements of different algebras")
    }
}

impl Sub for &NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        self.try_sub(rhs).expect("subtracting elements of different algebras")
    }
}

impl Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        self.scale(&scalar::int(-1))
    }
}

impl Add for NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: NcPoly) -> NcPoly {
        &self + &rhs
    }
}

impl Sub for NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: NcPoly) -> NcPoly {
        &self - &rhs
    }
}

/// Rewriting strategies for the reference reduction of free words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    LeftToRight,
    RightToLeft,
}

/// U(g) for a given spec and PBW order.
#[derive(Clone, Debug)]
pub struct NcAlgebra {
    spec: Arc<LieAlgebraSpec>,
    order: Vec<usize>,
    rank: Vec<u16>,
    brackets: Vec<Vec<Vec<(u16, Scalar)>>>,
    tag: u64,
}

impl NcAlgebra {
    /// Enveloping algebra with the basis order of the spec.
    pub fn new(spec: LieAlgebraSpec) -> Self {
        let order = (0..spec.dim()).collect();
        Self::with_order(Arc::new(spec), order).expect("identity order is valid")
    }

    pub fn from_arc(spec: Arc<LieAlgebraSpec>) -> Self {
        let order = (0..spec.dim()).collect();
        Self::with_order(spec, order).expect("identity order is valid")
    }

    /// `order[r]` is the generator placed at position r of the PBW order.
    pub fn with_order(spec: Arc<LieAlgebraSpec>, order: Vec<usize>) -> Result<Self> {
        let d = spec.dim();
        if order.len() != d {
            return Err(Error::InvalidArgument("order must list every generator once".into()));
        }
        let mut rank = vec![u16::MAX; d];
        for (r, &g) in order.iter().enumerate() {
            spec.check_index(g)?;
            if rank[g] != u16::MAX {
                return Err(Error::InvalidArgument("order must list every generator once".into()));
            }
            rank[g] = r as u16;
        }
        let brackets = (0..d)
            .map(|x| {
                (0..d)
                    .map(|y| {
                        spec.bracket_basis(order[x], order[y])
                            .iter()
                            .map(|(k, c)| (rank[*k], c.clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mut h = DefaultHasher::new();
        spec.fingerprint().hash(&mut h);
        order.hash(&mut h);
        Ok(NcAlgebra {
            spec,
            order,
            rank,
            brackets,
            tag: h.finish(),
        })
    }

    pub fn spec(&self) -> &LieAlgebraSpec {
        &self.spec
    }

    pub fn spec_arc(&self) -> Arc<LieAlgebraSpec> {
        self.spec.clone()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn rank_of(&self, generator: usize) -> u16 {
        self.rank[generator]
    }

    pub fn generator_at(&self, rank: u16) -> usize {
        self.order[rank as usize]
    }

    pub fn dim(&self) -> usize {
        self.order.len()
    }

    fn check(&self, p: &NcPoly) -> Result<()> {
        match p.algebra {
            Some(t) if t != self.tag => Err(Error::MismatchedAlgebras),
            _ => Ok(()),
        }
    }

    pub(crate) fn wrap(&self, terms: Terms) -> NcPoly {
        NcPoly {
            terms,
            algebra: Some(self.tag),
        }
    }

    pub fn zero(&self) -> NcPoly {
        self.wrap(Terms::new())
    }

    pub fn one(&self) -> NcPoly {
        self.constant(scalar::one())
    }

    pub fn constant(&self, c: Scalar) -> NcPoly {
        let mut terms = Terms::new();
        add_into(&mut terms, Vec::new(), c);
        self.wrap(terms)
    }

    /// Claims an untagged element (such as a bare constant) for this algebra.
    pub fn adopt(&self, p: &NcPoly) -> Result<NcPoly> {
        self.check(p)?;
        Ok(self.wrap(p.terms.clone()))
    }

    pub fn generator(&self, i: usize) -> Result<NcPoly> {
        self.spec.check_index(i)?;
        let mut terms = Terms::new();
        terms.insert(vec![self.rank[i]], scalar::one());
        Ok(self.wrap(terms))
    }

    /// A linear element of g viewed in U(g).
    pub fn element(&self, x: &AlgebraElement) -> NcPoly {
        let mut terms = Terms::new();
        for (i, c) in x.support() {
            add_into(&mut terms, vec![self.rank[i]], c.clone());
        }
        self.wrap(terms)
    }

    /// Linear part read back as an element of g, if the polynomial is linear
    /// and has no constant term.
    pub fn as_element(&self, p: &NcPoly) -> Option<AlgebraElement> {
        let mut x = AlgebraElement::zero(self.dim());
        for (w, c) in &p.terms {
            if w.len() != 1 {
                return None;
            }
            x.coords[self.order[w[0] as usize]] = c.clone();
        }
        Some(x)
    }

    /// PBW normal form of the product of generators in `word`.
    pub fn pbw_normal_form(&self, word: &[usize]) -> Result<NcPoly> {
        for &g in word {
            self.spec.check_index(g)?;
        }
        let mut session = self.session();
        let mut acc: Terms = [(Vec::new(), scalar::one())].into_iter().collect();
        for &g in word.iter().rev() {
            acc = session.lmul_terms(self.rank[g], &acc);
        }
        Ok(self.wrap(acc))
    }

    pub fn multiply(&self, a: &NcPoly, b: &NcPoly) -> Result<NcPoly> {
        self.session().multiply(a, b)
    }

    pub fn commutator(&self, a: &NcPoly, b: &NcPoly) -> Result<NcPoly> {
        self.session().commutator(a, b)
    }

    pub fn pow(&self, a: &NcPoly, e: u32) -> Result<NcPoly> {
        let mut s = self.session();
        let mut acc = self.one();
        for _ in 0..e {
            acc = s.multiply(&acc, a)?;
        }
        Ok(acc)
    }

    /// Left-to-right product of a list of factors.
    pub fn product(&self, factors: &[NcPoly]) -> Result<NcPoly> {
        let mut s = self.session();
        let mut acc = self.one();
        for f in factors {
            acc = s.multiply(&acc, f)?;
        }
        Ok(acc)
    }

    /// A multiplication context that memoizes rewrites across calls.
    pub fn session(&self) -> Session<'_> {
        Session {
            alg: self,
            memo: HashMap::new(),
        }
    }

    /// True if `p` commutes with every generator of g.
    pub fn is_central(&self, p: &NcPoly) -> Result<bool> {
        let mut s = self.session();
        for i in 0..self.dim() {
            let g = self.generator(i)?;
            if !s.commutator(p, &g)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Reference reduction of a free word: repeatedly replace one adjacent
    /// out-of-order pair `xy` by `yx + [x,y]`, choosing the leftmost or
    /// rightmost such pair.
    pub fn rewrite_word(&self, word: &[usize], strategy: Strategy) -> Result<NcPoly> {
        for &g in word {
            self.spec.check_index(g)?;
        }
        let mut pending: Terms = Terms::new();
        pending.insert(word.iter().map(|&g| self.rank[g]).collect(), scalar::one());
        let mut done = Terms::new();
        while let Some((w, c)) = pending.pop_first() {
            let positions = (0..w.len().saturating_sub(1)).filter(|&i| w[i] > w[i + 1]);
            let pos = match strategy {
                Strategy::LeftToRight => positions.min(),
                Strategy::RightToLeft => positions.max(),
            };
            let Some(i) = pos else {
                add_into(&mut done, w, c);
                continue;
            };
            let (x, y) = (w[i], w[i + 1]);
            let mut swapped = w.clone();
            swapped.swap(i, i + 1);
            add_into(&mut pending, swapped, c.clone());
            for (z, f) in &self.brackets[x as usize][y as usize] {
                let mut nw = w[..i].to_vec();
                nw.push(*z);
                nw.extend_from_slice(&w[i + 2..]);
                add_into(&mut pending, nw, &c * f);
            }
        }
        Ok(self.wrap(done))
    }

    /// Expands the element as a sum of free words (each PBW monomial is
    /// already a word), for use by reference computations.
    pub fn words_as_generators(&self, p: &NcPoly) -> Vec<(Vec<usize>, Scalar)> {
        p.terms
            .iter()
            .map(|(w, c)| (w.iter().map(|&r| self.order[r as usize]).collect(), c.clone()))
            .collect()
    }

    pub fn monomial_of(&self, w: &[u16]) -> PbwMonomial {
        let mut factors: Vec<(GeneratorId, u32)> = Vec::new();
        for &r in w {
            let g = GeneratorId(self.order[r as usize]);
            match factors.last_mut() {
                Some((last, e)) if *last == g => *e += 1,
                _ => factors.push((g, 1)),
            }
        }
        PbwMonomial { factors }
    }

    /// Terms in graded-lex order: higher degree first, then lexicographic in
    /// the PBW order.
    pub fn terms_graded(&self, p: &NcPoly) -> Vec<(PbwMonomial, Scalar)> {
        let mut ws: Vec<(&Word, &Scalar)> = p.terms.iter().collect();
        ws.sort_by(|(a, _), (b, _)| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        ws.into_iter()
            .map(|(w, c)| (self.monomial_of(w), c.clone()))
            .collect()
    }

    /// Coefficient of a PBW monomial given as a non-decreasing (in the PBW
    /// order) list of generators.
    pub fn coefficient(&self, p: &NcPoly, generators: &[usize]) -> Scalar {
        let mut w: Word = generators.iter().map(|&g| self.rank[g]).collect();
        w.sort();
        p.terms.get(&w).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Top-degree symbol as a commutative polynomial in generator indices.
    pub fn symbol(&self, p: &NcPoly) -> Poly<usize> {
        let Some(d) = p.degree() else {
            return Poly::zero();
        };
        let mut out = Poly::zero();
        for (w, c) in p.terms.iter().filter(|(w, _)| w.len() == d) {
            let m = self.monomial_of(w);
            let mut mono: Vec<(usize, u32)> = m.factors.iter().map(|(g, e)| (g.0, *e)).collect();
            mono.sort();
            out.add_term(mono, c.clone());
        }
        out
    }

    pub fn monomial_string(&self, m: &PbwMonomial, style: Style) -> String {
        let parts: Vec<String> = m
            .factors
            .iter()
            .map(|(g, e)| {
                let label = self.spec.label(g.0);
                let base = match style {
                    Style::Text => label.to_string(),
                    Style::Latex => emit::label_to_latex(label),
                };
                emit::power(&base, *e, style)
            })
            .collect();
        parts.join(style.product_separator())
    }

    pub fn render(&self, p: &NcPoly, style: Style) -> String {
        let terms: Vec<(Scalar, String)> = self
            .terms_graded(p)
            .into_iter()
            .map(|(m, c)| (c, self.monomial_string(&m, style)))
            .collect();
        emit::join_terms(&terms, style)
    }

    pub fn to_text(&self, p: &NcPoly) -> String {
        self.render(p, Style::Text)
    }

    pub fn to_latex(&self, p: &NcPoly) -> String {
        self.render(p, Style::Latex)
    }

    /// JSON term list: `[{"coefficient": "c", "monomial": [[label, exp], ...]}, ...]`.
    pub fn to_json(&self, p: &NcPoly) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms_graded(p)
            .into_iter()
            .map(|(m, c)| {
                let factors: Vec<serde_json::Value> = m
                    .factors
                    .iter()
                    .map(|(g, e)| serde_json::json!([self.spec.label(g.0), e]))
                    .collect();
                serde_json::json!({"coefficient": scalar::to_string(&c), "monomial": factors})
            })
            .collect();
        serde_json::Value::Array(terms)
    }
}

/// Multiplication context holding a local memo of `x * monomial` rewrites.
pub struct Session<'a> {
    alg: &'a NcAlgebra,
    memo: HashMap<(u16, Word), Terms>,
}

impl Session<'_> {
    pub fn algebra(&self) -> &NcAlgebra {
        self.alg
    }

    /// `x * m` for a generator rank and a PBW word.
    fn lmul_word(&mut self, x: u16, w: &[u16]) -> Terms {
        if w.first().is_none_or(|&y| x <= y) {
            let mut nw = Vec::with_capacity(w.len() + 1);
            nw.push(x);
            nw.extend_from_slice(w);
            return [(nw, scalar::one())].into_iter().collect();
        }
        let key = (x, w.to_vec());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let y = w[0];
        let rest = &w[1..];
        // x y r = y (x r) + [x,y] r
        let xr = self.lmul_word(x, rest);
        let mut out = self.lmul_terms(y, &xr);
        let brackets = self.alg.brackets[x as usize][y as usize].clone();
        for (z, f) in brackets {
            let zr = self.lmul_word(z, rest);
            for (nw, c) in zr {
                add_into(&mut out, nw, c * &f);
            }
        }
        self.memo.insert(key, out.clone());
        out
    }

    fn lmul_terms(&mut self, x: u16, t: &Terms) -> Terms {
        let mut out = Terms::new();
        for (w, c) in t {
            for (nw, d) in self.lmul_word(x, w) {
                add_into(&mut out, nw, d * c);
            }
        }
        out
    }

    pub fn multiply(&mut self, a: &NcPoly, b: &NcPoly) -> Result<NcPoly> {
        self.alg.check(a)?;
        self.alg.check(b)?;
        let mut out = Terms::new();
        for (wa, ca) in &a.terms {
            let mut acc = b.terms.clone();
            for &x in wa.iter().rev() {
                acc = self.lmul_terms(x, &acc);
            }
            for (w, c) in acc {
                add_into(&mut out, w, c * ca);
            }
        }
        Ok(self.alg.wrap(out))
    }

    pub fn commutator(&mut self, a: &NcPoly, b: &NcPoly) -> Result<NcPoly> {
        let ab = self.multiply(a, b)?;
        let ba = self.multiply(b, a)?;
        Ok(&ab - &ba)
    }

    pub fn product(&mut self, factors: &[&NcPoly]) -> Result<NcPoly> {
        let mut acc = self.alg.one();
        for f in factors {
            acc = self.multiply(&acc, f)?;
        }
        Ok(acc)
    }
}

impl NcPoly {
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::build;
    use crate::scalar::int;

    fn gl(n: usize) -> NcAlgebra {
        NcAlgebra::new(build("gl", n).unwrap())
    }

    fn gen(alg: &NcAlgebra, label: &str) -> NcPoly {
        alg.generator(alg.spec().index_of(label).unwrap()).unwrap()
    }

    #[test]
    fn ordered_singleton_is_fixed() {
        let a = gl(2);
        let i = a.spec().index_of("E[1,2]").unwrap();
        assert_eq!(a.pbw_normal_form(&[i]).unwrap(), a.generator(i).unwrap());
    }

    #[test]
    fn gl2_commutator() {
        let a = gl(2);
        let e12 = gen(&a, "E[1,2]");
        let e21 = gen(&a, "E[2,1]");
        let h = &gen(&a, "E[1,1]") - &gen(&a, "E[2,2]");
        assert_eq!(a.commutator(&e12, &e21).unwrap(), h);
        assert_eq!(a.commutator(&h, &e12).unwrap(), e12.scale(&int(2)));
        assert!(a.commutator(&h, &h).unwrap().is_zero());
    }

    #[test]
    fn o3_word_difference_is_bracket() {
        let a = NcAlgebra::new(build("o", 3).unwrap());
        let f12 = a.spec().index_of("F[1,2]").unwrap();
        let f23 = a.spec().index_of("F[2,3]").unwrap();
        let f13 = a.spec().index_of("F[1,3]").unwrap();
        let d = &a.pbw_normal_form(&[f12, f23]).unwrap() - &a.pbw_normal_form(&[f23, f12]).unwrap();
        assert_eq!(d, a.generator(f13).unwrap());
    }

    #[test]
    fn invalid_generator_rejected() {
        let a = gl(2);
        assert_eq!(
            a.pbw_normal_form(&[0, 7]),
            Err(Error::InvalidGenerator { index: 7, dim: 4 })
        );
    }

    #[test]
    fn mismatched_algebras_rejected() {
        let a = gl(2);
        let b = gl(3);
        let x = a.generator(0).unwrap();
        let y = b.generator(0).unwrap();
        assert_eq!(a.multiply(&x, &y), Err(Error::MismatchedAlgebras));
        assert!(a.multiply(&NcPoly::constant(int(2)), &x).is_ok());
    }

    #[test]
    fn custom_order_moves_generator_last() {
        let spec = Arc::new(build("gl", 2).unwrap());
        let f = spec.index_of("E[2,1]").unwrap();
        let mut order: Vec<usize> = (0..4).filter(|&i| i != f).collect();
        order.push(f);
        let a = NcAlgebra::with_order(spec, order).unwrap();
        let fe = a.pbw_normal_form(&[f, 0, 1]).unwrap();
        let m = &a.terms_graded(&fe)[0].0;
        assert_eq!(m.factors.last().unwrap().0, GeneratorId(f));
    }

    #[test]
    fn text_rendering() {
        let a = gl(2);
        let e12 = gen(&a, "E[1,2]");
        let e21 = gen(&a, "E[2,1]");
        let p = a.multiply(&e21, &e12).unwrap();
        assert_eq!(a.to_text(&p), "E[1,2]*E[2,1] - E[1,1] + E[2,2]");
        assert_eq!(a.to_latex(&p), "E_{12} E_{21} - E_{11} + E_{22}");
    }
}
