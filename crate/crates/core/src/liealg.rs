//! Matrix Lie algebras gl_n, sl_n and o_n with invariant forms, dual bases,
//! structure constants and the quadratic Casimir.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::ncalg::{NcAlgebra, NcPoly};
use crate::scalar::{self, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    Gl,
    Sl,
    O,
    /// Any other matrix Lie algebra given by an explicit basis.
    Matrix,
}

/// Normalization of the invariant bilinear form stored with a spec.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormKind {
    /// `2n tr(xy)` on gl_n and sl_n, `n tr(xy)` on o_n.
    Standard,
    /// Plain `tr(xy)`.
    Trace,
    /// `2n tr(xy) - 2 tr(x) tr(y)` on gl_n, which vanishes on the center.
    TraceFree,
}

impl FormKind {
    pub fn name(self) -> &'static str {
        match self {
            FormKind::Standard => "standard",
            FormKind::Trace => "trace",
            FormKind::TraceFree => "trace-free",
        }
    }
}

/// Coordinates of an element of g in the basis of its spec.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AlgebraElement {
    pub coords: Vec<Scalar>,
}

impl AlgebraElement {
    pub fn zero(dim: usize) -> Self {
        AlgebraElement {
            coords: vec![Scalar::zero(); dim],
        }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut e = Self::zero(dim);
        e.coords[i] = scalar::one();
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        AlgebraElement {
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    /// Nonzero coordinates as (index, value) pairs.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(&scalar::int(-1))
    }
}

/// A finite-dimensional matrix Lie algebra: basis, structure constants and a
/// symmetric invariant form.
#[derive(Clone)]
pub struct LieAlgebraSpec {
    name: String,
    kind: AlgebraKind,
    n: usize,
    labels: Vec<String>,
    matrices: Vec<Matrix>,
    structure: Vec<Vec<Vec<(usize, Scalar)>>>,
    form: Matrix,
    form_kind: Option<FormKind>,
    solver_rows: Vec<(usize, usize)>,
    solver: Matrix,
    fingerprint: u64,
}

impl fmt::Debug for LieAlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LieAlgebraSpec")
            .field("name", &self.name)
            .field("labels", &self.labels)
            .finish()
    }
}

impl PartialEq for LieAlgebraSpec {
    fn eq(&self, other: &Self) -> bool {
        self.fingerprint == other.fingerprint
    }
}

/// Splits `gl3` into (`gl`, 3).
pub fn parse_algebra_name(name: &str) -> Result<(AlgebraKind, usize)> {
    let split = name
        .find(|c: char| c.is_ascii_digit())
        .ok_or_else(|| Error::UnsupportedAlgebra(name.to_string()))?;
    let (prefix, digits) = name.split_at(split);
    let n: usize = digits
        .parse()
        .map_err(|_| Error::UnsupportedAlgebra(name.to_string()))?;
    let kind = match prefix.trim_end_matches('_') {
        "gl" => AlgebraKind::Gl,
        "sl" => AlgebraKind::Sl,
        "o" | "so" => AlgebraKind::O,
        _ => return Err(Error::UnsupportedAlgebra(name.to_string())),
    };
    Ok((kind, n))
}

pub fn build(name: &str, n: usize) -> Result<LieAlgebraSpec> {
    build_with_form(name, n, FormKind::Standard)
}

/// Builds from a combined name such as `gl3` or `o4`.
pub fn build_named(name: &str, form: FormKind) -> Result<LieAlgebraSpec> {
    let (kind, n) = parse_algebra_name(name)?;
    build_kind(kind, n, form)
}

pub fn build_with_form(name: &str, n: usize, form: FormKind) -> Result<LieAlgebraSpec> {
    let kind = match name {
        "gl" => AlgebraKind::Gl,
        "sl" => AlgebraKind::Sl,
        "o" | "so" => AlgebraKind::O,
        _ => return Err(Error::UnsupportedAlgebra(name.to_string())),
    };
    build_kind(kind, n, form)
}

pub fn build_kind(kind: AlgebraKind, n: usize, form: FormKind) -> Result<LieAlgebraSpec> {
    let tag = match kind {
        AlgebraKind::Gl => "gl",
        AlgebraKind::Sl => "sl",
        AlgebraKind::O => "o",
        AlgebraKind::Matrix => return Err(Error::UnsupportedAlgebra("matrix".into())),
    };
    let min = if kind == AlgebraKind::O { 3 } else { 2 };
    if n < min {
        return Err(Error::UnsupportedAlgebra(format!("{tag}{n}")));
    }
    if form == FormKind::TraceFree && kind != AlgebraKind::Gl {
        return Err(Error::UnsupportedAlgebra(format!(
            "trace-free form is only defined on gl_n, not {tag}{n}"
        )));
    }
    let mut labels = Vec::new();
    let mut matrices = Vec::new();
    match kind {
        AlgebraKind::Gl => {
            for i in 0..n {
                for j in 0..n {
                    labels.push(format!("E[{},{}]", i + 1, j + 1));
                    matrices.push(Matrix::unit(n, i, j));
                }
            }
        }
        AlgebraKind::Sl => {
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        labels.push(format!("E[{},{}]", i + 1, j + 1));
                        matrices.push(Matrix::unit(n, i, j));
                    }
                }
            }
            for i in 0..n - 1 {
                labels.push(format!("H[{}]", i + 1));
                matrices.push(&Matrix::unit(n, i, i) - &Matrix::unit(n, i + 1, i + 1));
            }
        }
        AlgebraKind::O => {
            for i in 0..n {
                for j in i + 1..n {
                    labels.push(format!("F[{},{}]", i + 1, j + 1));
                    matrices.push(&Matrix::unit(n, i, j) - &Matrix::unit(n, j, i));
                }
            }
        }
        AlgebraKind::Matrix => unreachable!(),
    }
    let nn = scalar::int(n as i64);
    let form_fn = |x: &Matrix, y: &Matrix| -> Scalar {
        let t = (x * y).trace();
        match (form, kind) {
            (FormKind::Trace, _) => t,
            (FormKind::Standard, AlgebraKind::O) => &nn * t,
            (FormKind::Standard, _) => scalar::int(2) * &nn * t,
            (FormKind::TraceFree, _) => {
                scalar::int(2) * &nn * t - scalar::int(2) * x.trace() * y.trace()
            }
        }
    };
    let gram = gram_matrix(&matrices, form_fn);
    LieAlgebraSpec::assemble(format!("{tag}{n}"), kind, n, labels, matrices, gram, Some(form))
}

fn gram_matrix(matrices: &[Matrix], form: impl Fn(&Matrix, &Matrix) -> Scalar) -> Matrix {
    let d = matrices.len();
    let mut g = Matrix::zeros(d, d);
    for a in 0..d {
        for b in a..d {
            let v = form(&matrices[a], &matrices[b]);
            g[(a, b)] = v.clone();
            g[(b, a)] = v;
        }
    }
    g
}

impl LieAlgebraSpec {
    /// A spec from an explicit basis of n×n matrices closed under the
    /// commutator, with the given Gram matrix of the invariant form.
    pub fn from_matrices(
        name: impl Into<String>,
        labels: Vec<String>,
        matrices: Vec<Matrix>,
        form: Matrix,
    ) -> Result<Self> {
        let n = matrices.first().map_or(0, Matrix::rows);
        Self::assemble(name.into(), AlgebraKind::Matrix, n, labels, matrices, form, None)
    }

    fn assemble(
        name: String,
        kind: AlgebraKind,
        n: usize,
        labels: Vec<String>,
        matrices: Vec<Matrix>,
        form: Matrix,
        form_kind: Option<FormKind>,
    ) -> Result<Self> {
        let dim = matrices.len();
        if labels.len() != dim || form.rows() != dim || form.cols() != dim {
            return Err(Error::InvalidArgument("basis, labels and form disagree in size".into()));
        }
        // Pick `dim` matrix positions on which the basis is independent.
        let flat: Vec<Vec<Scalar>> = matrices.iter().map(|m| m.entries().to_vec()).collect();
        let big = Matrix::from_columns(&flat, n * n);
        let rref = big.transpose().rref();
        if rref.pivots.len() != dim {
            return Err(Error::InvalidArgument("basis matrices are linearly dependent".into()));
        }
        let solver_rows: Vec<(usize, usize)> = rref.pivots.iter().map(|&p| (p / n, p % n)).collect();
        let mut square = Matrix::zeros(dim, dim);
        for (r, &(i, j)) in solver_rows.iter().enumerate() {
            for (b, m) in matrices.iter().enumerate() {
                square[(r, b)] = m[(i, j)].clone();
            }
        }
        let solver = square.inverse().expect("pivot positions give an invertible block");
        let mut spec = LieAlgebraSpec {
            name,
            kind,
            n,
            labels,
            matrices,
            structure: Vec::new(),
            form,
            form_kind,
            solver_rows,
            solver,
            fingerprint: 0,
        };
        let mut structure = vec![vec![Vec::new(); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                if a == b {
                    continue;
                }
                let c = spec.matrices[a].commutator(&spec.matrices[b]);
                let coords = spec.coords_of(&c)?;
                structure[a][b] = coords
                    .into_iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .collect();
            }
        }
        spec.structure = structure;
        let mut h = DefaultHasher::new();
        spec.name.hash(&mut h);
        spec.labels.hash(&mut h);
        spec.structure.hash(&mut h);
        spec.form.hash(&mut h);
        spec.fingerprint = h.finish();
        Ok(spec)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    /// Size of the defining matrices.
    pub fn matrix_size(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn form_kind(&self) -> Option<FormKind> {
        self.form_kind
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn basis_matrix(&self, i: usize) -> &Matrix {
        &self.matrices[i]
    }

    pub fn basis_matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    /// Sparse structure constants: `[I_a, I_b] = sum c I_k` as (k, c) pairs.
    pub fn bracket_basis(&self, a: usize, b: usize) -> &[(usize, Scalar)] {
        &self.structure[a][b]
    }

    pub fn structure_constant(&self, a: usize, b: usize, c: usize) -> Scalar {
        self.structure[a][b]
            .iter()
            .find(|(k, _)| *k == c)
            .map_or_else(Scalar::zero, |(_, v)| v.clone())
    }

    /// Gram matrix of the stored invariant form.
    pub fn form(&self) -> &Matrix {
        &self.form
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.dim() {
            Ok(())
        } else {
            Err(Error::InvalidGenerator {
                index: i,
                dim: self.dim(),
            })
        }
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        AlgebraElement::basis(self.dim(), i)
    }

    pub fn zero_element(&self) -> AlgebraElement {
        AlgebraElement::zero(self.dim())
    }

    /// Coordinates of a matrix in the basis, or `NotInSpan`.
    pub fn coords_of(&self, m: &Matrix) -> Result<Vec<Scalar>> {
        if m.rows() != self.n || m.cols() != self.n {
            return Err(Error::NotInSpan);
        }
        let rhs: Vec<Scalar> = self.solver_rows.iter().map(|&(i, j)| m[(i, j)].clone()).collect();
        let coords = self.solver.apply(&rhs);
        let back = self.to_matrix_coords(&coords);
        if &back != m {
            return Err(Error::NotInSpan);
        }
        Ok(coords)
    }

    pub fn element_of(&self, m: &Matrix) -> Result<AlgebraElement> {
        Ok(AlgebraElement {
            coords: self.coords_of(m)?,
        })
    }

    fn to_matrix_coords(&self, coords: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(self.n, self.n);
        for (c, m) in coords.iter().zip(&self.matrices) {
            if !c.is_zero() {
                out = &out + &m.scale(c);
            }
        }
        out
    }

    pub fn to_matrix(&self, x: &AlgebraElement) -> Matrix {
        self.to_matrix_coords(&x.coords)
    }

    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut out = self.zero_element();
        for (a, ca) in x.support() {
            for (b, cb) in y.support() {
                let cc = ca * cb;
                for (k, f) in &self.structure[a][b] {
                    out.coords[*k] += &cc * f;
                }
            }
        }
        out
    }

    pub fn pairing(&self, x: &AlgebraElement, y: &AlgebraElement) -> Scalar {
        let mut acc = Scalar::zero();
        for (a, ca) in x.support() {
            for (b, cb) in y.support() {
                acc += ca * cb * &self.form[(a, b)];
            }
        }
        acc
    }

    /// Matrix of `ad_x` in the basis; column b holds `[x, I_b]`.
    pub fn ad(&self, x: &AlgebraElement) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for b in 0..d {
            let col = self.bracket(x, &self.basis_element(b));
            for (k, v) in col.coords.into_iter().enumerate() {
                m[(k, b)] = v;
            }
        }
        m
    }

    /// The same algebra with its basis reordered: new basis i is old `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let d = self.dim();
        let mut seen = vec![false; d];
        if perm.len() != d || perm.iter().any(|&p| p >= d || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidArgument("not a permutation of the basis".into()));
        }
        let labels = perm.iter().map(|&p| self.labels[p].clone()).collect();
        let matrices = perm.iter().map(|&p| self.matrices[p].clone()).collect();
        let mut form = Matrix::zeros(d, d);
        for a in 0..d {
            for b in 0..d {
                form[(a, b)] = self.form[(perm[a], perm[b])].clone();
            }
        }
        Self::assemble(
            self.name.clone(),
            self.kind,
            self.n,
            labels,
            matrices,
            form,
            self.form_kind,
        )
    }

    /// The same algebra with a different form normalization.
    pub fn with_form(&self, form: Matrix) -> Result<Self> {
        Self::assemble(
            self.name.clone(),
            self.kind,
            self.n,
            self.labels.clone(),
            self.matrices.clone(),
            form,
            None,
        )
    }

    /// `B([x,y],z) + B(y,[x,z]) = 0` on all basis triples.
    pub fn form_is_invariant(&self) -> bool {
        let d = self.dim();
        (0..d).all(|x| {
            let ex = self.basis_element(x);
            (0..d).all(|y| {
                let ey = self.basis_element(y);
                let xy = self.bracket(&ex, &ey);
                (0..d).all(|z| {
                    let ez = self.basis_element(z);
                    let xz = self.bracket(&ex, &ez);
                    (self.pairing(&xy, &ez) + self.pairing(&ey, &xz)).is_zero()
                })
            })
        })
    }

    pub fn jacobi_holds(&self) -> bool {
        let d = self.dim();
        let e = |i| self.basis_element(i);
        (0..d).all(|x| {
            (0..d).all(|y| {
                (0..d).all(|z| {
                    let a = self.bracket(&self.bracket(&e(x), &e(y)), &e(z));
                    let b = self.bracket(&self.bracket(&e(z), &e(x)), &e(y));
                    let c = self.bracket(&self.bracket(&e(y), &e(z)), &e(x));
                    (&(&a + &b) + &c).is_zero()
                })
            })
        })
    }

    /// JSON description: labels, nonzero structure constants as
    /// `[a, b, c, "value"]` triples of indices, and the form as strings.
    pub fn to_json(&self) -> Value {
        let mut triples = Vec::new();
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                for (c, v) in &self.structure[a][b] {
                    triples.push(json!([a, b, c, scalar::to_string(v)]));
                }
            }
        }
        let form: Vec<Vec<String>> = (0..self.dim())
            .map(|i| self.form.row(i).iter().map(scalar::to_string).collect())
            .collect();
        json!({
            "name": self.name,
            "dim": self.dim(),
            "basis": self.labels,
            "structure_constants": triples,
            "form": form,
            "form_kind": self.form_kind.map(FormKind::name),
        })
    }
}

/// Gram matrix of the trace form of the adjoint representation,
/// `tr(ad_x ad_y)`.
pub fn adjoint_killing(spec: &LieAlgebraSpec) -> Matrix {
    let d = spec.dim();
    let ads: Vec<Matrix> = (0..d).map(|i| spec.ad(&spec.basis_element(i))).collect();
    gram_matrix(&ads, |x, y| (x * y).trace())
}

/// The basis `I^b` with `B(I_a, I^b) = delta_ab`, by solving against the
/// stored form.
pub fn dual_basis(spec: &LieAlgebraSpec) -> Result<Vec<AlgebraElement>> {
    let inv = spec.form.inverse().ok_or(Error::DegenerateForm)?;
    let d = spec.dim();
    Ok((0..d)
        .map(|b| AlgebraElement {
            coords: inv.column(b),
        })
        .collect())
}

/// `sum_a I_a I^a` in the enveloping algebra.
pub fn casimir2(alg: &NcAlgebra) -> Result<NcPoly> {
    let spec = alg.spec();
    let duals = dual_basis(spec)?;
    let mut out = alg.zero();
    for (a, dual) in duals.iter().enumerate() {
        let left = alg.generator(a)?;
        let right = alg.element(dual);
        out = &out + &alg.multiply(&left, &right)?;
    }
    Ok(out)
}

/// `sum_a tr(ad I_a ad I^a)`, the full contraction of the structure
/// constants with indices raised by the form.
pub fn structure_contraction(spec: &LieAlgebraSpec) -> Result<Scalar> {
    let duals = dual_basis(spec)?;
    let mut acc = Scalar::zero();
    for (a, dual) in duals.iter().enumerate() {
        let x = spec.ad(&spec.basis_element(a));
        let y = spec.ad(dual);
        acc += (&x * &y).trace();
    }
    Ok(acc)
}

/// Eigenvalue of the Casimir on the adjoint representation of `[g,g]`:
/// the structure contraction divided by `dim [g,g]`.
pub fn dual_coxeter(spec: &LieAlgebraSpec) -> Result<Scalar> {
    let total = structure_contraction(spec)?;
    let derived = derived_dimension(spec);
    if derived == 0 {
        return Err(Error::InvalidArgument("abelian algebra has no dual Coxeter number".into()));
    }
    Ok(total / scalar::int(derived as i64))
}

fn derived_dimension(spec: &LieAlgebraSpec) -> usize {
    let d = spec.dim();
    let mut vectors = Vec::new();
    for a in 0..d {
        for b in a + 1..d {
            let mut v = vec![Scalar::zero(); d];
            for (k, c) in spec.bracket_basis(a, b) {
                v[*k] = c.clone();
            }
            vectors.push(v);
        }
    }
    crate::linalg::rank_of(&vectors, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn gl2_form_value() {
        let g = build("gl", 2).unwrap();
        let a = g.index_of("E[1,2]").unwrap();
        let b = g.index_of("E[2,1]").unwrap();
        assert_eq!(g.form()[(a, b)], int(4));
    }

    #[test]
    fn sl2_form_and_duals() {
        let g = build("sl", 2).unwrap();
        let h = g.index_of("H[1]").unwrap();
        assert_eq!(g.form()[(h, h)], int(8));
        let duals = dual_basis(&g).unwrap();
        let e = g.index_of("E[1,2]").unwrap();
        let f = g.index_of("E[2,1]").unwrap();
        assert_eq!(duals[e], g.basis_element(f).scale(&frac(1, 4)));
    }

    #[test]
    fn o3_bracket_matches_relation() {
        let g = build("o", 3).unwrap();
        let f12 = g.index_of("F[1,2]").unwrap();
        let f23 = g.index_of("F[2,3]").unwrap();
        let f13 = g.index_of("F[1,3]").unwrap();
        assert_eq!(g.bracket_basis(f12, f23), &[(f13, int(1))]);
    }

    #[test]
    fn trace_free_gl_form_is_degenerate() {
        let g = build_with_form("gl", 2, FormKind::TraceFree).unwrap();
        assert!(g.form().inverse().is_none());
        assert!(g.form_is_invariant());
    }

    #[test]
    fn coordinates_reject_outside_span() {
        let g = build("sl", 2).unwrap();
        assert_eq!(g.coords_of(&Matrix::identity(2)), Err(Error::NotInSpan));
    }

    #[test]
    fn algebra_names() {
        assert_eq!(parse_algebra_name("gl3").unwrap(), (AlgebraKind::Gl, 3));
        assert_eq!(parse_algebra_name("o4").unwrap(), (AlgebraKind::O, 4));
        assert!(parse_algebra_name("e8x").is_err());
        assert!(build("o", 2).is_err());
        assert!(build("sp", 4).is_err());
    }
}
