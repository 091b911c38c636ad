//! Classical finite W-algebras: the sl2-adapted basis, the constraint set,
//! the lowest-weight slice and its reduced Poisson bracket.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::emit::{self, Style};
use crate::error::{Error, Result};
use crate::liealg::{AlgebraElement, LieAlgebraSpec};
use crate::linalg::{self, Matrix};
use crate::poly::{Monomial, Poly};
use crate::scalar::{self, Scalar};
use crate::sl2kit::{self, Sl2Triple};

/// Polynomial in the slice coordinates `x_0, x_1, ...`.
pub type SlicePoly = Poly<usize>;

type PolyVec = Vec<SlicePoly>;

/// One irreducible sl2-string inside g.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlString {
    /// Twice the highest weight.
    pub spin2: i64,
    /// Multiplicity index among strings of the same spin, from 1.
    pub multiplicity: usize,
    /// Position of the lowest vector in the adapted basis.
    pub start: usize,
}

impl SlString {
    pub fn len(&self) -> usize {
        self.spin2 as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// A basis of g adapted to an sl2-triple: each string runs from its lowest
/// vector `v` through `ad_e^i v`. The weight of a vector is half its
/// `ad_h` eigenvalue.
#[derive(Clone, Debug)]
pub struct Embedding {
    spec: Arc<LieAlgebraSpec>,
    triple: Sl2Triple,
    strings: Vec<SlString>,
    basis: Vec<AlgebraElement>,
    degrees: Vec<i64>,
    labels: Vec<String>,
}

fn half(d: i64) -> Scalar {
    scalar::frac(d, 2)
}

/// Extends `start` by vectors of `pool` until the span stops growing.
fn complete_basis(start: Vec<Vec<Scalar>>, pool: Vec<Vec<Scalar>>, len: usize) -> Vec<Vec<Scalar>> {
    let mut out: Vec<Vec<Scalar>> = Vec::new();
    for v in start.into_iter().chain(pool) {
        let mut trial = out.clone();
        trial.push(v.clone());
        if linalg::rank_of(&trial, len) == trial.len() {
            out.push(v);
        }
    }
    out
}

pub fn rep_decompose(spec: &LieAlgebraSpec, triple: &Sl2Triple) -> Result<Embedding> {
    let dim = spec.dim();
    let grading = sl2kit::dynkin_grading(spec, triple)?;
    let ad_f = spec.ad(&triple.f);
    let mut strings = Vec::new();
    let mut basis = Vec::new();
    let mut degrees = Vec::new();
    let mut labels = Vec::new();
    let mut per_spin: BTreeMap<i64, usize> = BTreeMap::new();
    let lowest_degree = grading.degrees().iter().copied().min().unwrap_or(0);
    for d in (lowest_degree..=0).rev() {
        let space = grading.subspace(d);
        if space.is_empty() {
            continue;
        }
        // lowest vectors of degree d: kernel of ad_f restricted to g_d
        let cols: Vec<Vec<Scalar>> = space.iter().map(|x| ad_f.apply(&x.coords)).collect();
        let restricted = Matrix::from_columns(&cols, dim);
        let kernel: Vec<Vec<Scalar>> = restricted
            .kernel()
            .into_iter()
            .map(|c| {
                let mut v = vec![scalar::zero(); dim];
                for (coef, x) in c.iter().zip(&space) {
                    for (slot, xi) in v.iter_mut().zip(&x.coords) {
                        *slot += coef * xi;
                    }
                }
                v
            })
            .collect();
        let preferred = if d == -2 && !triple.is_zero() {
            vec![triple.f.coords.clone()]
        } else {
            Vec::new()
        };
        for lowest in complete_basis(preferred, kernel, dim) {
            let spin2 = -d;
            let mu = per_spin.entry(spin2).or_insert(0);
            *mu += 1;
            let mut v = AlgebraElement { coords: lowest };
            // the string through f is scaled so that its top vector is e
            let through_f = d == -2 && !triple.is_zero() && v == triple.f;
            if through_f {
                v = v.scale(&scalar::frac(-1, 2));
            }
            strings.push(SlString {
                spin2,
                multiplicity: *mu,
                start: basis.len(),
            });
            for i in 0..=spin2 {
                let m2 = d + 2 * i;
                labels.push(format!(
                    "I[{},{},{}]",
                    scalar::to_string(&half(spin2)),
                    mu,
                    scalar::to_string(&half(m2))
                ));
                degrees.push(m2);
                basis.push(v.clone());
                v = spec.bracket(&triple.e, &v);
            }
            if !v.is_zero() {
                return Err(Error::InvalidTriple("sl2-string does not close".into()));
            }
        }
    }
    let coords: Vec<Vec<Scalar>> = basis.iter().map(|x| x.coords.clone()).collect();
    if basis.len() != dim || linalg::rank_of(&coords, dim) != dim {
        return Err(Error::InvalidTriple(
            "sl2-strings do not span the algebra".into(),
        ));
    }
    Ok(Embedding {
        spec: Arc::new(spec.clone()),
        triple: triple.clone(),
        strings,
        basis,
        degrees,
        labels,
    })
}

impl Embedding {
    pub fn spec(&self) -> &LieAlgebraSpec {
        &self.spec
    }

    pub fn triple(&self) -> &Sl2Triple {
        &self.triple
    }

    pub fn strings(&self) -> &[SlString] {
        &self.strings
    }

    pub fn basis(&self) -> &[AlgebraElement] {
        &self.basis
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `ad_h` eigenvalue of each adapted basis vector (twice its weight).
    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn weights(&self) -> Vec<Scalar> {
        self.degrees.iter().map(|&d| half(d)).collect()
    }

    /// Lowest vectors, one per string.
    pub fn lowest_vectors(&self) -> Vec<AlgebraElement> {
        self.strings.iter().map(|s| self.basis[s.start].clone()).collect()
    }

    /// Basis dual to the adapted basis under the stored form.
    pub fn dual_basis(&self) -> Result<Vec<AlgebraElement>> {
        dual_of(&self.spec, &self.basis)
    }

    /// Index of `e` in the adapted basis, when it is a basis vector.
    pub fn e_index(&self) -> Option<usize> {
        if self.triple.is_zero() {
            return None;
        }
        self.basis.iter().position(|x| *x == self.triple.e)
    }

    pub fn constraints(&self) -> Result<Vec<Constraint>> {
        let dual = self.dual_basis()?;
        let e_index = self.e_index();
        Ok((0..self.basis.len())
            .filter(|&i| self.degrees[i] > 0)
            .map(|i| Constraint {
                label: self.labels[i].clone(),
                functional: dual[i].clone(),
                constant: if Some(i) == e_index {
                    scalar::one()
                } else {
                    scalar::zero()
                },
                weight: half(self.degrees[i]),
            })
            .collect())
    }

    /// True iff the bracket of any two constraints vanishes on the
    /// constraint surface `e + (weights <= 0)`.
    pub fn first_class_check(&self) -> Result<bool> {
        let cs = self.constraints()?;
        let surface: Vec<&AlgebraElement> = (0..self.basis.len())
            .filter(|&i| self.degrees[i] <= 0)
            .map(|i| &self.basis[i])
            .collect();
        for a in &cs {
            for b in &cs {
                let y = self.spec.bracket(&a.functional, &b.functional);
                if !self.spec.pairing(&self.triple.e, &y).is_zero() {
                    return Ok(false);
                }
                if surface.iter().any(|x| !self.spec.pairing(x, &y).is_zero()) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The inverse of `ad_e : Im(ad_f) -> Im(ad_e)`, extended by zero on
    /// `ker(ad_f)`, the orthogonal complement of `Im(ad_f)`.
    pub fn l_operator(&self) -> Result<Matrix> {
        let dim = self.spec.dim();
        let ad_e = self.spec.ad(&self.triple.e);
        let ad_f = self.spec.ad(&self.triple.f);
        let sources = complete_basis(Vec::new(), (0..dim).map(|j| ad_f.column(j)).collect(), dim);
        let mut domain: Vec<Vec<Scalar>> = sources.iter().map(|y| ad_e.apply(y)).collect();
        let mut image = sources.clone();
        for v in self.lowest_vectors() {
            domain.push(v.coords);
            image.push(vec![scalar::zero(); dim]);
        }
        let domain = Matrix::from_columns(&domain, dim);
        let inv = domain.inverse().ok_or_else(|| {
            Error::InvalidTriple("ad_e is not bijective from Im(ad_f) to Im(ad_e)".into())
        })?;
        Ok(&Matrix::from_columns(&image, dim) * &inv)
    }

    pub fn to_json(&self) -> Value {
        let strings: Vec<Value> = self
            .strings
            .iter()
            .map(|s| {
                let members: Vec<Value> = (s.start..s.start + s.len())
                    .map(|i| {
                        json!({
                            "label": self.labels[i],
                            "weight": scalar::to_string(&half(self.degrees[i])),
                            "element": coords_json(&self.basis[i]),
                        })
                    })
                    .collect();
                json!({
                    "highest_weight": scalar::to_string(&half(s.spin2)),
                    "multiplicity": s.multiplicity,
                    "vectors": members,
                })
            })
            .collect();
        json!({ "algebra": self.spec.name(), "strings": strings })
    }
}

fn coords_json(x: &AlgebraElement) -> Value {
    Value::Array(x.coords.iter().map(|c| Value::String(scalar::to_string(c))).collect())
}

/// The basis `u^a` of span(targets) with `B(u^a, basis_b) = delta`, where
/// `targets` and `basis` have the same length and pair non-degenerately.
fn dual_within(
    spec: &LieAlgebraSpec,
    basis: &[AlgebraElement],
    targets: &[AlgebraElement],
) -> Result<Vec<AlgebraElement>> {
    let r = basis.len();
    let gram = Matrix::from_rows(
        targets
            .iter()
            .map(|t| basis.iter().map(|b| spec.pairing(t, b)).collect())
            .collect(),
    );
    let inv = gram.inverse().ok_or(Error::DegenerateForm)?;
    Ok((0..r)
        .map(|a| {
            (0..r).fold(spec.zero_element(), |acc, c| {
                &acc + &targets[c].scale(&inv[(a, c)])
            })
        })
        .collect())
}

fn dual_of(spec: &LieAlgebraSpec, basis: &[AlgebraElement]) -> Result<Vec<AlgebraElement>> {
    dual_within(spec, basis, basis)
}

/// One constraint `B(functional, J) - constant = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub label: String,
    pub functional: AlgebraElement,
    pub constant: Scalar,
    pub weight: Scalar,
}

/// Bracket values of coordinate functions, `table[a][b] = {x_a, x_b}`.
pub type Table = Vec<Vec<SlicePoly>>;

/// The lowest-weight slice with its reduced Poisson structure. A point of
/// the slice is `w = sum_a x_a s_a` for the lowest-vector basis `s_a`; the
/// coordinate `x_a` is the linear function `B(u^a, .)` for the dual basis
/// `u^a` of highest vectors.
#[derive(Clone, Debug)]
pub struct ClassicalW {
    embedding: Embedding,
    slice: Vec<AlgebraElement>,
    coordinates: Vec<AlgebraElement>,
    degrees: Vec<i64>,
    l_operator: Matrix,
    /// `layers[k]` is the contribution of the k-th term of the series.
    layers: Vec<Table>,
    table: Table,
}

impl ClassicalW {
    pub fn new(embedding: Embedding) -> Result<Self> {
        let slice = embedding.lowest_vectors();
        let highest = highest_vectors(&embedding);
        let coordinates = dual_within(embedding.spec(), &slice, &highest)?;
        Self::assemble(embedding, slice, coordinates)
    }

    /// Uses the given highest vectors as coordinate functions; they must lie
    /// in `ker(ad_e)` and pair non-degenerately with the lowest vectors.
    pub fn with_coordinates(embedding: Embedding, coordinates: Vec<AlgebraElement>) -> Result<Self> {
        let spec = embedding.spec();
        for u in &coordinates {
            if !spec.bracket(&embedding.triple().e, u).is_zero() {
                return Err(Error::InvalidArgument(
                    "coordinate vector is not annihilated by ad_e".into(),
                ));
            }
        }
        let lowest = embedding.lowest_vectors();
        if coordinates.len() != lowest.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coordinate vectors, got {}",
                lowest.len(),
                coordinates.len()
            )));
        }
        let slice = dual_within(spec, &coordinates, &lowest)?;
        Self::assemble(embedding, slice, coordinates)
    }

    fn assemble(
        embedding: Embedding,
        slice: Vec<AlgebraElement>,
        coordinates: Vec<AlgebraElement>,
    ) -> Result<Self> {
        let l_operator = embedding.l_operator()?;
        let grading = sl2kit::dynkin_grading(embedding.spec(), embedding.triple())?;
        let degrees = slice
            .iter()
            .map(|s| grading.degree_of(s).unwrap_or(0))
            .collect();
        let mut cw = ClassicalW {
            embedding,
            slice,
            coordinates,
            degrees,
            l_operator,
            layers: Vec::new(),
            table: Vec::new(),
        };
        let r = cw.rank();
        let mut layers: Vec<Table> = Vec::new();
        for a in 0..r {
            for b in 0..r {
                let parts = cw.bracket_layers(&Poly::var(a), &Poly::var(b))?;
                for (k, p) in parts.into_iter().enumerate() {
                    if layers.len() <= k {
                        layers.push(vec![vec![SlicePoly::zero(); r]; r]);
                    }
                    layers[k][a][b] = p;
                }
            }
        }
        cw.table = combine_layers(&layers, &scalar::one(), r);
        cw.layers = layers;
        Ok(cw)
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn rank(&self) -> usize {
        self.slice.len()
    }

    pub fn slice_basis(&self) -> &[AlgebraElement] {
        &self.slice
    }

    pub fn coordinate_vectors(&self) -> &[AlgebraElement] {
        &self.coordinates
    }

    /// `ad_h` eigenvalue of each slice basis vector.
    pub fn slice_degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn l_operator(&self) -> &Matrix {
        &self.l_operator
    }

    pub fn coordinate(&self, a: usize) -> SlicePoly {
        Poly::var(a)
    }

    /// The generic slice point `w = sum_a x_a s_a`.
    fn point(&self) -> PolyVec {
        let dim = self.embedding.spec().dim();
        let mut w = vec![SlicePoly::zero(); dim];
        for (a, s) in self.slice.iter().enumerate() {
            for (slot, c) in w.iter_mut().zip(&s.coords) {
                if !c.is_zero() {
                    *slot = &*slot + &Poly::var(a).scale(c);
                }
            }
        }
        w
    }

    /// `grad Q` with `dQ(xi) = B(grad Q, xi)` on slice directions.
    pub fn gradient(&self, q: &SlicePoly) -> PolyVec {
        let dim = self.embedding.spec().dim();
        let mut out = vec![SlicePoly::zero(); dim];
        for (a, u) in self.coordinates.iter().enumerate() {
            let pa = q.partial(&a);
            if pa.is_zero() {
                continue;
            }
            for (slot, c) in out.iter_mut().zip(&u.coords) {
                if !c.is_zero() {
                    *slot = &*slot + &pa.scale(c);
                }
            }
        }
        out
    }

    /// The terms `(-L ad_w)^k y` of `(1 + L ad_w)^(-1) y`; the series stops
    /// because `L ad_w` lowers the weight.
    fn neumann_terms(&self, w: &PolyVec, y: PolyVec) -> Result<Vec<PolyVec>> {
        let spec = self.embedding.spec();
        let mut terms = vec![y];
        for _ in 0..=spec.dim() {
            let last = terms.last().expect("series starts with y");
            let next = apply_matrix(&self.l_operator, &bracket_vec(spec, w, last));
            if next.iter().all(SlicePoly::is_zero) {
                return Ok(terms);
            }
            terms.push(next.iter().map(|p| -p).collect());
        }
        Err(Error::NeumannDiverged(spec.dim() + 1))
    }

    /// `B(w, [grad Q1, (-L ad_w)^k grad Q2])` for each k.
    fn bracket_layers(&self, q1: &SlicePoly, q2: &SlicePoly) -> Result<Vec<SlicePoly>> {
        let spec = self.embedding.spec();
        let w = self.point();
        let g1 = self.gradient(q1);
        Ok(self
            .neumann_terms(&w, self.gradient(q2))?
            .iter()
            .map(|t| pair_vec(spec, &w, &bracket_vec(spec, &g1, t)))
            .collect())
    }

    /// `{Q1, Q2}(w) = B(w, [grad Q1, (1 + L ad_w)^(-1) grad Q2])`.
    pub fn bracket_direct(&self, q1: &SlicePoly, q2: &SlicePoly) -> Result<SlicePoly> {
        Ok(self
            .bracket_layers(q1, q2)?
            .into_iter()
            .fold(SlicePoly::zero(), |acc, p| &acc + &p))
    }

    pub fn table(&self) -> &Table {
        &self.table
    }

    /// The coordinate table for the form `c B` in place of `B`, with the
    /// same coordinate vectors: the k-th series term scales by `c^-k`.
    pub fn table_for_scale(&self, c: &Scalar) -> Table {
        combine_layers(&self.layers, &(scalar::one() / c), self.rank())
    }

    pub fn layers(&self) -> &[Table] {
        &self.layers
    }

    /// `{P, Q} = sum_ab dP/dx_a dQ/dx_b {x_a, x_b}`.
    pub fn bracket(&self, p: &SlicePoly, q: &SlicePoly) -> SlicePoly {
        leibniz(&self.table, p, q)
    }

    pub fn is_commutative(&self) -> bool {
        self.table.iter().flatten().all(SlicePoly::is_zero)
    }

    /// Jacobi identity on every triple of coordinate functions.
    pub fn jacobi_holds(&self) -> bool {
        jacobi_holds(&self.table)
    }

    pub fn table_json(&self, names: &[String]) -> Value {
        let r = self.rank();
        let mut rows = Vec::new();
        for a in 0..r {
            for b in a + 1..r {
                rows.push(json!({
                    "left": names[a],
                    "right": names[b],
                    "value": render_poly(&self.table[a][b], names, Style::Text),
                }));
            }
        }
        Value::Array(rows)
    }
}

fn combine_layers(layers: &[Table], t: &Scalar, r: usize) -> Table {
    let mut table = vec![vec![SlicePoly::zero(); r]; r];
    let mut factor = scalar::one();
    for layer in layers {
        for a in 0..r {
            for b in 0..r {
                if !layer[a][b].is_zero() {
                    table[a][b] = &table[a][b] + &layer[a][b].scale(&factor);
                }
            }
        }
        factor *= t;
    }
    table
}

/// `{P, Q}` extended from a coordinate table by the Leibniz rule.
pub fn leibniz(table: &Table, p: &SlicePoly, q: &SlicePoly) -> SlicePoly {
    let r = table.len();
    let mut out = SlicePoly::zero();
    for a in 0..r {
        let pa = p.partial(&a);
        if pa.is_zero() {
            continue;
        }
        for b in 0..r {
            if table[a][b].is_zero() {
                continue;
            }
            let qb = q.partial(&b);
            if qb.is_zero() {
                continue;
            }
            out = &out + &(&(&pa * &qb) * &table[a][b]);
        }
    }
    out
}

pub fn jacobi_holds(table: &Table) -> bool {
    let r = table.len();
    let x = |a: usize| Poly::var(a);
    (0..r).all(|a| {
        (0..r).all(|b| {
            (0..r).all(|c| {
                let s = &(&leibniz(table, &x(a), &table[b][c])
                    + &leibniz(table, &x(b), &table[c][a]))
                    + &leibniz(table, &x(c), &table[a][b]);
                s.is_zero()
            })
        })
    })
}

/// One relation of the minimal sl3 table: `{left, right} = expected`.
#[derive(Clone, Debug)]
pub struct Relation {
    pub left: String,
    pub right: String,
    pub value: Poly<usize>,
    pub expected: Poly<usize>,
    pub holds: bool,
}

/// The sl3 minimal-embedding example with its normalizations fitted.
#[derive(Clone, Debug)]
pub struct MinimalSl3 {
    pub cw: ClassicalW,
    /// Factor `c` such that the bracket is computed with the form `c B`.
    pub form_scale: Scalar,
    /// Coefficient `k` in `F = k x_F`.
    pub f_normalization: Scalar,
    pub names: Vec<String>,
    /// `H, E, F, C` in slice coordinates.
    pub generators: Vec<SlicePoly>,
    pub relations: Vec<Relation>,
    pub jacobi: bool,
    pub first_class: bool,
}

impl MinimalSl3 {
    pub fn all_hold(&self) -> bool {
        self.jacobi && self.relations.iter().all(|r| r.holds)
    }
}

/// The scalar `t` with `P_0 + t P_1 = 0`, when every later `P_k` vanishes.
fn linear_root(parts: &[SlicePoly]) -> Option<Scalar> {
    if parts.iter().skip(2).any(|p| !p.is_zero()) {
        return None;
    }
    let zero = SlicePoly::zero();
    let p0 = parts.first().unwrap_or(&zero);
    let p1 = parts.get(1).unwrap_or(&zero);
    let (m, c1) = p1.terms().next()?;
    let t = -(p0.coefficient(m) / c1);
    (p0 + &p1.scale(&t)).is_zero().then_some(t)
}

/// Builds the minimal embedding `e = E13` of sl3 with coordinates given by
/// `(E11 - 2E22 + E33)/6, E12, E23, E13`, sets `H = 4x1`, `E = x2`,
/// `C = -4/3 (x4 + 3 x1^2)` and `F = k x3`, then fixes the form scale by
/// requiring `C` to be central and `k` by `{E,F} = H^2 + C`.
pub fn minimal_sl3() -> Result<MinimalSl3> {
    let base = crate::liealg::build("sl", 3)?;
    let unit = |i, j| base.element_of(&Matrix::unit(3, i, j));
    let e = unit(0, 2)?;
    let f = unit(2, 0)?;
    let triple = Sl2Triple::new(&base, e.clone(), f.clone(), base.bracket(&e, &f))?;
    let sixth = scalar::frac(1, 6);
    let diag = base.element_of(&Matrix::diagonal(&[
        sixth.clone(),
        scalar::frac(-2, 6),
        sixth,
    ]))?;
    let coords = vec![diag, unit(0, 1)?, unit(1, 2)?, unit(0, 2)?];
    let emb = rep_decompose(&base, &triple)?;
    let first_class = emb.first_class_check()?;
    let cw0 = ClassicalW::with_coordinates(emb, coords.clone())?;

    let x = |a: usize| SlicePoly::var(a);
    let h = x(0).scale(&scalar::int(4));
    let big_e = x(1);
    let c = (&x(3) + &(&x(0) * &x(0)).scale(&scalar::int(3))).scale(&scalar::frac(-4, 3));
    let parts: Vec<SlicePoly> = cw0
        .layers()
        .iter()
        .map(|layer| leibniz(layer, &c, &big_e))
        .collect();
    let t = linear_root(&parts).ok_or_else(|| {
        Error::NoSolution("no form scale makes C central".into())
    })?;
    if t.is_zero() {
        return Err(Error::NoSolution("degenerate form scale".into()));
    }
    let form_scale = scalar::one() / &t;

    let spec = base.with_form(base.form().scale(&form_scale))?;
    let emb = rep_decompose(&spec, &triple)?;
    let cw = ClassicalW::with_coordinates(emb, coords)?;
    let target = &(&h * &h) + &c;
    let ef = cw.bracket(&big_e, &x(2));
    let (m, c1) = ef
        .terms()
        .next()
        .ok_or_else(|| Error::NoSolution("{E, x_F} vanishes".into()))?;
    let k = target.coefficient(m) / c1;
    let big_f = x(2).scale(&k);

    let names: Vec<String> = ["H", "E", "F", "C"].iter().map(|s| s.to_string()).collect();
    let generators = vec![h.clone(), big_e.clone(), big_f.clone(), c.clone()];
    let g = |i: usize| Poly::<usize>::var(i);
    let expected: [(usize, usize, Poly<usize>); 6] = [
        (0, 1, g(1).scale(&scalar::int(2))),
        (0, 2, g(2).scale(&scalar::int(-2))),
        (1, 2, &g(0).pow(2) + &g(3)),
        (3, 0, Poly::zero()),
        (3, 1, Poly::zero()),
        (3, 2, Poly::zero()),
    ];
    let relations = expected
        .into_iter()
        .map(|(a, b, exp)| {
            let raw = cw.bracket(&generators[a], &generators[b]);
            let value = express_in(&generators, &raw, 2).unwrap_or_else(Poly::zero);
            let holds = express_in(&generators, &raw, 2).is_some() && value == exp;
            Relation {
                left: names[a].clone(),
                right: names[b].clone(),
                value,
                expected: exp,
                holds,
            }
        })
        .collect();
    let jacobi = cw.jacobi_holds();
    Ok(MinimalSl3 {
        cw,
        form_scale,
        f_normalization: k,
        names,
        generators,
        relations,
        jacobi,
        first_class,
    })
}

/// Highest vectors (kernel of `ad_e`), ordered like the strings.
fn highest_vectors(embedding: &Embedding) -> Vec<AlgebraElement> {
    embedding
        .strings()
        .iter()
        .map(|s| embedding.basis()[s.start + s.spin2 as usize].clone())
        .collect()
}

fn apply_matrix(m: &Matrix, v: &PolyVec) -> PolyVec {
    (0..m.rows())
        .map(|i| {
            let mut acc = SlicePoly::zero();
            for (j, p) in v.iter().enumerate() {
                let c = &m[(i, j)];
                if !c.is_zero() && !p.is_zero() {
                    acc = &acc + &p.scale(c);
                }
            }
            acc
        })
        .collect()
}

fn bracket_vec(spec: &LieAlgebraSpec, x: &PolyVec, y: &PolyVec) -> PolyVec {
    let mut out = vec![SlicePoly::zero(); spec.dim()];
    for (a, xa) in x.iter().enumerate() {
        if xa.is_zero() {
            continue;
        }
        for (b, yb) in y.iter().enumerate() {
            if yb.is_zero() {
                continue;
            }
            let prod = xa * yb;
            for (c, f) in spec.bracket_basis(a, b) {
                out[*c] = &out[*c] + &prod.scale(f);
            }
        }
    }
    out
}

fn pair_vec(spec: &LieAlgebraSpec, x: &PolyVec, y: &PolyVec) -> SlicePoly {
    let form = spec.form();
    let mut out = SlicePoly::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            let b = &form[(i, j)];
            if b.is_zero() || yj.is_zero() {
                continue;
            }
            out = &out + &(xi * yj).scale(b);
        }
    }
    out
}

/// Writes `p` as a polynomial of total degree `<= max_degree` in the given
/// generator polynomials, if possible.
pub fn express_in(
    generators: &[SlicePoly],
    p: &SlicePoly,
    max_degree: u32,
) -> Option<Poly<usize>> {
    let k = generators.len();
    let mut exponents: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..k {
        exponents = exponents
            .into_iter()
            .flat_map(|e| {
                let used: u32 = e.iter().sum();
                (0..=max_degree - used).map(move |x| {
                    let mut e2 = e.clone();
                    e2.push(x);
                    e2
                })
            })
            .collect();
    }
    let products: Vec<SlicePoly> = exponents
        .iter()
        .map(|e| {
            e.iter()
                .enumerate()
                .fold(SlicePoly::one(), |acc, (g, &x)| &acc * &generators[g].pow(x))
        })
        .collect();
    let mut monomials: Vec<Monomial<usize>> = products
        .iter()
        .chain(std::iter::once(p))
        .flat_map(|q| q.terms().map(|(m, _)| m.clone()).collect::<Vec<_>>())
        .collect();
    monomials.sort();
    monomials.dedup();
    let index: BTreeMap<&Monomial<usize>, usize> =
        monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let column = |q: &SlicePoly| {
        let mut v = vec![scalar::zero(); monomials.len()];
        for (m, c) in q.terms() {
            v[index[m]] = c.clone();
        }
        v
    };
    let cols: Vec<Vec<Scalar>> = products.iter().map(column).collect();
    let system = Matrix::from_columns(&cols, monomials.len());
    let solution = system.solve(&column(p))?;
    let mut out = Poly::zero();
    for (e, c) in exponents.iter().zip(solution) {
        if c.is_zero() {
            continue;
        }
        let m: Monomial<usize> = e
            .iter()
            .enumerate()
            .filter(|(_, &x)| x > 0)
            .map(|(g, &x)| (g, x))
            .collect();
        out.add_term(m, c);
    }
    Some(out)
}

/// Renders a polynomial in named variables, highest degree first.
pub fn render_poly(p: &Poly<usize>, names: &[String], style: Style) -> String {
    let terms: Vec<(Scalar, String)> = p
        .terms_graded()
        .into_iter()
        .map(|(m, c)| {
            let parts: Vec<String> = m
                .iter()
                .map(|(v, e)| {
                    let base = names.get(*v).cloned().unwrap_or_else(|| format!("x{v}"));
                    let base = match style {
                        Style::Text => base,
                        Style::Latex => emit::label_to_latex(&base),
                    };
                    emit::power(&base, *e, style)
                })
                .collect();
            (c.clone(), parts.join(style.product_separator()))
        })
        .collect();
    emit::join_terms(&terms, style)
}

/// Coordinate names `x1, x2, ...`.
pub fn default_names(r: usize) -> Vec<String> {
    (1..=r).map(|i| format!("x{i}")).collect()
}
