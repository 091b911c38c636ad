//! The finite W-algebra `W = U(v)^{ad m}` for an even good grading,
//! realized through the Whittaker projection `U(g) = U(v) ⊕ I_chi`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::emit::Style;
use crate::error::{Error, Result};
use crate::invariants::{self, CentralPoly};
use crate::liealg::{AlgebraElement, AlgebraKind, LieAlgebraSpec};
use crate::linalg::{self, Matrix};
use crate::ncalg::{NcAlgebra, NcPoly, Session, Word};
use crate::poly::Poly;
use crate::scalar::{self, Scalar};
use crate::sl2kit::{self, Grading, Sl2Triple};

/// Character data for an even good grading. The enveloping algebra is set
/// up with the PBW order `v` first, `m` last.
#[derive(Debug)]
pub struct WhittakerData {
    alg: NcAlgebra,
    triple: Sl2Triple,
    grading: Grading,
    degrees: Vec<i64>,
    v_basis: Vec<usize>,
    m_basis: Vec<usize>,
    chi: Vec<Scalar>,
}

/// Whittaker data for the Dynkin grading of the triple.
pub fn whittaker_dynkin(spec: LieAlgebraSpec, triple: Sl2Triple) -> Result<WhittakerData> {
    let grading = sl2kit::dynkin_grading(&spec, &triple)?;
    build_whittaker(spec, triple, grading)
}

pub fn build_whittaker(spec: LieAlgebraSpec, triple: Sl2Triple, grading: Grading) -> Result<WhittakerData> {
    if !sl2kit::is_even(&grading) {
        return Err(Error::BadGrading("only even gradings are supported".into()));
    }
    if triple.is_zero() {
        if grading.degrees().iter().any(|&d| d != 0) {
            return Err(Error::BadGrading("e = 0 requires the zero grading".into()));
        }
    } else {
        let report = sl2kit::check_good(&spec, &grading, &triple.e);
        if !report.all() {
            let failed: Vec<&str> = report
                .entries()
                .iter()
                .filter(|(_, ok)| !ok)
                .map(|(name, _)| *name)
                .collect();
            return Err(Error::BadGrading(format!("grading is not good: {}", failed.join(", "))));
        }
    }
    let mut degrees = Vec::with_capacity(spec.dim());
    for i in 0..spec.dim() {
        let d = grading.degree_of(&spec.basis_element(i)).ok_or_else(|| {
            Error::BadGrading(format!("basis element {} is not homogeneous", spec.label(i)))
        })?;
        degrees.push(d);
    }
    let v_basis: Vec<usize> = (0..spec.dim()).filter(|&i| degrees[i] >= 0).collect();
    let m_basis: Vec<usize> = (0..spec.dim()).filter(|&i| degrees[i] < 0).collect();
    let mut chi = vec![Scalar::zero(); spec.dim()];
    for &a in &m_basis {
        chi[a] = spec.pairing(&spec.basis_element(a), &triple.e);
    }
    for &a in &m_basis {
        for &b in &m_basis {
            let c = spec.bracket_basis(a, b);
            let value = c.iter().fold(Scalar::zero(), |acc, (k, x)| acc + x * &chi[*k]);
            if !value.is_zero() {
                return Err(Error::BadGrading("chi does not vanish on [m,m]".into()));
            }
        }
    }
    let order: Vec<usize> = v_basis.iter().chain(&m_basis).copied().collect();
    let alg = NcAlgebra::with_order(std::sync::Arc::new(spec), order)?;
    Ok(WhittakerData {
        alg,
        triple,
        grading,
        degrees,
        v_basis,
        m_basis,
        chi,
    })
}

/// Shift convention for the diagonal of the row-determinant matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RdetShift {
    /// Diagonal entries `E[i,i] + u + i`.
    Increasing,
    /// Diagonal entries `E[i,i] + u - i`.
    Decreasing,
}

/// `dim F_j W` next to the count of monomials in a homogeneous basis of
/// `g^e` with weights `degree + 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredDimension {
    pub degree: i64,
    pub computed: usize,
    pub expected: usize,
}

impl WhittakerData {
    pub fn algebra(&self) -> &NcAlgebra {
        &self.alg
    }

    pub fn spec(&self) -> &LieAlgebraSpec {
        self.alg.spec()
    }

    pub fn triple(&self) -> &Sl2Triple {
        &self.triple
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn m_basis(&self) -> &[usize] {
        &self.m_basis
    }

    pub fn v_basis(&self) -> &[usize] {
        &self.v_basis
    }

    /// `chi(a) = B(a, e)` for a basis element of m, zero otherwise.
    pub fn chi(&self, generator: usize) -> &Scalar {
        &self.chi[generator]
    }

    /// Kazhdan weight `degree + 2` of a basis element.
    pub fn weight(&self, generator: usize) -> i64 {
        self.degrees[generator] + 2
    }

    fn v_count(&self) -> u16 {
        self.v_basis.len() as u16
    }

    fn rank_weight(&self, r: u16) -> i64 {
        self.weight(self.alg.generator_at(r))
    }

    /// Projection onto U(v) along I_chi: in the PBW order with m last, every
    /// trailing m-factor `a` is replaced by `chi(a)`.
    pub fn pr_chi(&self, x: &NcPoly) -> Result<NcPoly> {
        let x = self.alg.adopt(x)?;
        let nv = self.v_count();
        let mut terms: BTreeMap<Word, Scalar> = BTreeMap::new();
        for (w, c) in x.words() {
            let cut = w.iter().position(|&r| r >= nv).unwrap_or(w.len());
            let mut coef = c.clone();
            for &r in &w[cut..] {
                coef *= &self.chi[self.alg.generator_at(r)];
            }
            if coef.is_zero() {
                continue;
            }
            *terms.entry(w[..cut].to_vec()).or_insert_with(Scalar::zero) += coef;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(self.alg.wrap(terms))
    }

    pub fn in_v(&self, y: &NcPoly) -> bool {
        let nv = self.v_count();
        y.words().all(|(w, _)| w.iter().all(|&r| r < nv))
    }

    /// `pr_chi([a, y])` for each basis element a of m.
    fn conditions(&self, s: &mut Session<'_>, y: &NcPoly) -> Result<Vec<NcPoly>> {
        self.m_basis
            .iter()
            .map(|&a| {
                let c = s.commutator(&self.alg.generator(a)?, y)?;
                self.pr_chi(&c)
            })
            .collect()
    }

    /// True iff `pr_chi([a, y]) = 0` for every basis element a of m.
    pub fn in_w(&self, y: &NcPoly) -> Result<bool> {
        let y = self.alg.adopt(y)?;
        if !self.in_v(&y) {
            return Err(Error::NotInV);
        }
        let mut s = self.alg.session();
        Ok(self.conditions(&mut s, &y)?.iter().all(NcPoly::is_zero))
    }

    /// Largest Kazhdan weight of a monomial; `None` for 0.
    pub fn kazhdan_degree(&self, p: &NcPoly) -> Option<i64> {
        p.words()
            .map(|(w, _)| w.iter().map(|&r| self.rank_weight(r)).sum())
            .max()
    }

    /// Top Kazhdan-weight part as a commutative polynomial in generator
    /// indices.
    pub fn kazhdan_symbol(&self, p: &NcPoly) -> Poly<usize> {
        let Some(top) = self.kazhdan_degree(p) else {
            return Poly::zero();
        };
        let mut out = Poly::zero();
        for (w, c) in p.words() {
            if w.iter().map(|&r| self.rank_weight(r)).sum::<i64>() != top {
                continue;
            }
            let m = self.alg.monomial_of(w);
            let mut mono: Vec<(usize, u32)> = m.factors.iter().map(|(g, e)| (g.0, *e)).collect();
            mono.sort();
            out.add_term(mono, c.clone());
        }
        out
    }

    /// PBW words over v of Kazhdan weight at most `bound`, sorted by weight
    /// and then by word.
    fn v_words(&self, bound: i64) -> Vec<(i64, Word)> {
        fn go(wd: &WhittakerData, start: u16, left: i64, prefix: &mut Word, weight: i64, out: &mut Vec<(i64, Word)>) {
            out.push((weight, prefix.clone()));
            for r in start..wd.v_count() {
                let w = wd.rank_weight(r);
                // weights of v are at least 2, so the recursion terminates
                if w <= left {
                    prefix.push(r);
                    go(wd, r, left - w, prefix, weight + w, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, 0, bound, &mut Vec::new(), 0, &mut out);
        out.sort();
        out
    }

    /// Conditions of each word as dense columns over a shared index.
    fn condition_columns(&self, words: &[Word]) -> Result<Vec<Vec<Scalar>>> {
        let mut s = self.alg.session();
        let mut keyed: Vec<BTreeMap<(usize, Word), Scalar>> = Vec::with_capacity(words.len());
        let mut keys: BTreeMap<(usize, Word), usize> = BTreeMap::new();
        for w in words {
            let y = self.alg.wrap([(w.clone(), scalar::one())].into_iter().collect());
            let mut entry = BTreeMap::new();
            for (a, c) in self.conditions(&mut s, &y)?.into_iter().enumerate() {
                for (cw, v) in c.words() {
                    let key = (a, cw.clone());
                    let next = keys.len();
                    keys.entry(key.clone()).or_insert(next);
                    entry.insert(key, v.clone());
                }
            }
            keyed.push(entry);
        }
        Ok(keyed
            .into_iter()
            .map(|entry| {
                let mut col = vec![Scalar::zero(); keys.len()];
                for (k, v) in entry {
                    col[keys[&k]] = v;
                }
                col
            })
            .collect())
    }

    /// Dimensions `dim (g^e ∩ g_k)` by degree k.
    pub fn centralizer_degrees(&self) -> BTreeMap<i64, usize> {
        let spec = self.spec();
        let mut out = BTreeMap::new();
        for (k, dim) in self.grading.dimensions() {
            let images: Vec<Vec<Scalar>> = self
                .grading
                .subspace(k)
                .iter()
                .map(|x| spec.bracket(&self.triple.e, x).coords)
                .collect();
            let kernel = dim - linalg::rank_of(&images, spec.dim());
            if kernel > 0 {
                out.insert(k, kernel);
            }
        }
        out
    }

    /// Homogeneous basis of `g^e`, by ascending degree.
    pub fn centralizer_basis(&self) -> Vec<(i64, AlgebraElement)> {
        let spec = self.spec();
        let mut out = Vec::new();
        for k in self.grading.dimensions().keys() {
            let sub = self.grading.subspace(*k);
            let images: Vec<Vec<Scalar>> = sub.iter().map(|x| spec.bracket(&self.triple.e, x).coords).collect();
            let kernel = Matrix::from_columns(&images, spec.dim()).kernel();
            for combo in kernel {
                let x = sub
                    .iter()
                    .zip(&combo)
                    .fold(spec.zero_element(), |acc, (b, c)| &acc + &b.scale(c));
                out.push((*k, x));
            }
        }
        out
    }

    /// `dim F_j W` for `j = 0..=max_degree`, by exact linear algebra on the
    /// PBW words of U(v), next to the weighted monomial count in `g^e`.
    pub fn w_basis_dims(&self, max_degree: i64) -> Result<Vec<FilteredDimension>> {
        let words = self.v_words(max_degree);
        let ws: Vec<Word> = words.iter().map(|(_, w)| w.clone()).collect();
        let columns = self.condition_columns(&ws)?;
        let len = columns.first().map_or(0, Vec::len);
        let expected = weighted_monomial_counts(&self.centralizer_degrees(), max_degree);
        let mut out = Vec::new();
        for j in 0..=max_degree {
            let count = words.iter().filter(|(w, _)| *w <= j).count();
            let rank = linalg::rank_of(&columns[..count], len);
            out.push(FilteredDimension {
                degree: j,
                computed: count - rank,
                expected: expected[j as usize],
            });
        }
        Ok(out)
    }

    /// Linear form `p ↦ B(x, p)` restricted to the slice `e + g^f`, as a
    /// polynomial in coordinates on a basis of `g^f`.
    fn slice_form(&self, generator: usize, fbasis: &[AlgebraElement]) -> Poly<usize> {
        let spec = self.spec();
        let x = spec.basis_element(generator);
        let mut p = Poly::constant(spec.pairing(&x, &self.triple.e));
        for (k, v) in fbasis.iter().enumerate() {
            p = &p + &Poly::var(k).scale(&spec.pairing(&x, v));
        }
        p
    }

    fn slice_restriction(&self, w: &[u16], fbasis: &[AlgebraElement]) -> Poly<usize> {
        w.iter().fold(Poly::one(), |acc, &r| &acc * &self.slice_form(self.alg.generator_at(r), fbasis))
    }

    /// An element of `F_{j+2} W` whose top Kazhdan symbol restricts on
    /// `e + g^f` to that of `x`, for homogeneous `x ∈ g^e ∩ g_j`. Correction
    /// terms are PBW words over v ordered by descending Kazhdan weight; the
    /// solve sets every free coefficient to zero.
    pub fn theta_lift(&self, x: &AlgebraElement) -> Result<NcPoly> {
        let spec = self.spec();
        if x.is_zero() {
            return Ok(self.alg.zero());
        }
        if !spec.bracket(&self.triple.e, x).is_zero() {
            return Err(Error::InvalidArgument("element is not in the centralizer of e".into()));
        }
        let j = self
            .grading
            .degree_of(x)
            .ok_or_else(|| Error::InvalidArgument("element is not homogeneous".into()))?;
        let top = j + 2;
        let target = self.alg.element(x);
        let fbasis = sl2kit::centralizer(spec, &self.triple.f);

        let mut words = self.v_words(top);
        words.sort_by(|(wa, a), (wb, b)| wb.cmp(wa).then_with(|| a.cmp(b)));
        let ws: Vec<Word> = words.iter().map(|(_, w)| w.clone()).collect();
        let mut s = self.alg.session();
        let target_conditions = self.conditions(&mut s, &target)?;

        // condition rows shared between the candidates and the target
        let mut keys: BTreeMap<(usize, Word), usize> = BTreeMap::new();
        let mut cand_entries: Vec<BTreeMap<usize, Scalar>> = Vec::new();
        for w in &ws {
            let y = self.alg.wrap([(w.clone(), scalar::one())].into_iter().collect());
            let mut entry = BTreeMap::new();
            for (a, c) in self.conditions(&mut s, &y)?.into_iter().enumerate() {
                for (cw, v) in c.words() {
                    let next = keys.len();
                    let k = *keys.entry((a, cw.clone())).or_insert(next);
                    entry.insert(k, v.clone());
                }
            }
            cand_entries.push(entry);
        }
        let mut rhs_entries: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (a, c) in target_conditions.iter().enumerate() {
            for (cw, v) in c.words() {
                let next = keys.len();
                let k = *keys.entry((a, cw.clone())).or_insert(next);
                rhs_entries.insert(k, -v.clone());
            }
        }

        // slice rows: the top-weight corrections restrict to zero on e + g^f
        let mut slice_keys: BTreeMap<Vec<(usize, u32)>, usize> = BTreeMap::new();
        let mut slice_entries: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); ws.len()];
        for (k, (weight, w)) in words.iter().enumerate() {
            if *weight != top {
                continue;
            }
            for (m, c) in self.slice_restriction(w, &fbasis).terms() {
                let next = slice_keys.len();
                let key = *slice_keys.entry(m.clone()).or_insert(next);
                slice_entries[k].insert(key, c.clone());
            }
        }

        let rows = keys.len() + slice_keys.len();
        let mut matrix = Matrix::zeros(rows, ws.len());
        for (k, entry) in cand_entries.iter().enumerate() {
            for (r, v) in entry {
                matrix[(*r, k)] = v.clone();
            }
            for (r, v) in &slice_entries[k] {
                matrix[(keys.len() + r, k)] = v.clone();
            }
        }
        let mut rhs = vec![Scalar::zero(); rows];
        for (r, v) in rhs_entries {
            rhs[r] = v;
        }
        let sol = matrix
            .solve(&rhs)
            .ok_or_else(|| Error::NoSolution(format!("no lift of degree {top} found")))?;
        let mut lift = target;
        for (w, c) in ws.iter().zip(&sol) {
            if !c.is_zero() {
                let term = self.alg.wrap([(w.clone(), c.clone())].into_iter().collect());
                lift = lift.try_add(&term)?;
            }
        }
        Ok(lift)
    }

    /// Theta lifts of the homogeneous basis of `g^e`.
    pub fn generators(&self) -> Result<Vec<NcPoly>> {
        self.centralizer_basis().iter().map(|(_, x)| self.theta_lift(x)).collect()
    }

    /// Coefficients `w_1, ..., w_n` of `u^(n-i)` in the row determinant of
    /// the matrix with `E[i,j]` on and above the diagonal, the diagonal
    /// shifted by u and the chosen shifts, and `chi(E[i,j])` below it. Needs
    /// gl_n with the principal grading `deg E[i,j] = 2(j-i)`.
    pub fn w_rdet_generators(&self, shift: RdetShift) -> Result<Vec<NcPoly>> {
        let spec = self.spec();
        if spec.kind() != AlgebraKind::Gl {
            return Err(Error::UnsupportedAlgebra(spec.name().to_string()));
        }
        let n = spec.matrix_size();
        let alg = &self.alg;
        let mut entries: Vec<Vec<CentralPoly>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let unit = invariants::gl_unit(alg, i, j)?;
                let g = spec
                    .index_of(&format!("E[{},{}]", i + 1, j + 1))
                    .ok_or_else(|| Error::UnknownSymbol(format!("E[{},{}]", i + 1, j + 1)))?;
                if self.degrees[g] != 2 * (j as i64 - i as i64) {
                    return Err(Error::BadGrading(
                        "row-determinant generators need the principal grading of gl_n".into(),
                    ));
                }
                let entry = if i < j {
                    vec![unit]
                } else if i == j {
                    let k = i as i64 + 1;
                    let s = match shift {
                        RdetShift::Increasing => k,
                        RdetShift::Decreasing => -k,
                    };
                    vec![unit.try_add(&alg.constant(scalar::int(s)))?, alg.one()]
                } else {
                    vec![alg.constant(self.chi[g].clone())]
                };
                row.push(entry);
            }
            entries.push(row);
        }
        let det = invariants::row_determinant(alg, &entries)?;
        Ok(invariants::coefficients_below_top(alg, &det, n))
    }

    /// Pairwise commutators `[a_i, a_j]` for `i < j`.
    pub fn commutator_table(&self, elements: &[NcPoly]) -> Result<Vec<(usize, usize, NcPoly)>> {
        let mut s = self.alg.session();
        let mut out = Vec::new();
        for i in 0..elements.len() {
            for j in i + 1..elements.len() {
                out.push((i, j, s.commutator(&elements[i], &elements[j])?));
            }
        }
        Ok(out)
    }

    /// Jacobian criterion on the Kazhdan symbols: full rank at one of a few
    /// fixed integer points proves algebraic independence.
    pub fn symbols_independent(&self, elements: &[NcPoly]) -> bool {
        let symbols: Vec<Poly<usize>> = elements.iter().map(|p| self.kazhdan_symbol(p)).collect();
        let vars: Vec<usize> = (0..self.spec().dim()).collect();
        (0..4i64).any(|t| {
            let point = |v: &usize| scalar::int(((*v as i64) * (*v as i64) + 3 * (*v as i64) + 5 * t + 1) % 7 - 3);
            let rows: Vec<Vec<Scalar>> = symbols
                .iter()
                .map(|s| vars.iter().map(|v| s.partial(v).evaluate(point)).collect())
                .collect();
            linalg::rank_of(&rows, vars.len()) == symbols.len()
        })
    }

    pub fn to_json(&self) -> Value {
        let spec = self.spec();
        json!({
            "algebra": spec.name(),
            "m_basis": self.m_basis.iter().map(|&a| spec.label(a)).collect::<Vec<_>>(),
            "v_basis": self.v_basis.iter().map(|&a| spec.label(a)).collect::<Vec<_>>(),
            "chi": self.m_basis.iter()
                .filter(|&&a| !self.chi[a].is_zero())
                .map(|&a| json!([spec.label(a), scalar::to_string(&self.chi[a])]))
                .collect::<Vec<_>>(),
        })
    }

    pub fn render(&self, p: &NcPoly, style: Style) -> String {
        self.alg.render(p, style)
    }
}

/// Number of monomials of total weight at most j, for `j = 0..=max`, in
/// variables with the weights `degree + 2` of the given degree multiplicities.
pub fn weighted_monomial_counts(degrees: &BTreeMap<i64, usize>, max: i64) -> Vec<usize> {
    let len = max.max(0) as usize + 1;
    let mut series = vec![0usize; len];
    series[0] = 1;
    for (&d, &mult) in degrees {
        let w = (d + 2) as usize;
        for _ in 0..mult {
            if w == 0 {
                continue;
            }
            for k in w..len {
                series[k] += series[k - w];
            }
        }
    }
    let mut acc = 0;
    series
        .into_iter()
        .map(|c| {
            acc += c;
            acc
        })
        .collect()
}
