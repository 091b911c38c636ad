//! sl2-triples through nilpotent elements, gradings by semisimple elements
//! and the good-grading conditions.

use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::{AlgebraElement, LieAlgebraSpec};
use crate::linalg::{self, Matrix};
use crate::scalar::{self, Scalar};

/// An sl2-triple given by n×n matrices, before it is placed in an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixTriple {
    pub e: Matrix,
    pub f: Matrix,
    pub h: Matrix,
}

impl MatrixTriple {
    pub fn relations_hold(&self) -> bool {
        self.e.commutator(&self.f) == self.h
            && self.h.commutator(&self.e) == self.e.scale(&scalar::int(2))
            && self.h.commutator(&self.f) == self.f.scale(&scalar::int(-2))
    }

    pub fn in_spec(&self, spec: &LieAlgebraSpec) -> Result<Sl2Triple> {
        let conv = |m: &Matrix, what: &str| {
            spec.element_of(m)
                .map_err(|_| Error::InvalidTriple(format!("{what} does not lie in {}", spec.name())))
        };
        Sl2Triple::new(spec, conv(&self.e, "e")?, conv(&self.f, "f")?, conv(&self.h, "h")?)
    }
}

/// Principal triple of gl_n: `e = sum E[i,i+1]`, `h = diag(n-1, n-3, ..., 1-n)`
/// and `f` subdiagonal with entries `i(n-i)`.
pub fn jm_regular_gl(n: usize) -> MatrixTriple {
    let mut e = Matrix::zeros(n, n);
    let mut f = Matrix::zeros(n, n);
    let mut h = Matrix::zeros(n, n);
    for i in 0..n {
        h[(i, i)] = scalar::int(n as i64 - 1 - 2 * i as i64);
        if i + 1 < n {
            e[(i, i + 1)] = scalar::one();
            let k = (i + 1) as i64;
            f[(i + 1, i)] = scalar::int(k * (n as i64 - k));
        }
    }
    MatrixTriple { e, f, h }
}

/// Block-diagonal sum of principal triples, one block per part of the
/// partition, so that `e` is in Jordan form.
pub fn jm_from_partition(parts: &[usize]) -> Result<MatrixTriple> {
    if parts.is_empty() || parts.contains(&0) {
        return Err(Error::InvalidPartition(format!("{parts:?} has an empty part")));
    }
    if parts.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidPartition(format!("{parts:?} is not non-increasing")));
    }
    let n: usize = parts.iter().sum();
    let mut out = MatrixTriple {
        e: Matrix::zeros(n, n),
        f: Matrix::zeros(n, n),
        h: Matrix::zeros(n, n),
    };
    let mut offset = 0;
    for &p in parts {
        let block = jm_regular_gl(p);
        for i in 0..p {
            for j in 0..p {
                out.e[(offset + i, offset + j)] = block.e[(i, j)].clone();
                out.f[(offset + i, offset + j)] = block.f[(i, j)].clone();
                out.h[(offset + i, offset + j)] = block.h[(i, j)].clone();
            }
        }
        offset += p;
    }
    Ok(out)
}

/// Parses `"3,1"` (or `"partition:3,1"`) into parts.
pub fn parse_partition(text: &str) -> Result<Vec<usize>> {
    let body = text.trim().strip_prefix("partition:").unwrap_or(text.trim());
    body.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidPartition(format!("cannot read {text:?}")))
        })
        .collect()
}

/// An sl2-triple inside a given algebra. Construction checks
/// `[e,f] = h`, `[h,e] = 2e`, `[h,f] = -2f` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Triple {
    pub e: AlgebraElement,
    pub f: AlgebraElement,
    pub h: AlgebraElement,
}

impl Sl2Triple {
    pub fn new(
        spec: &LieAlgebraSpec,
        e: AlgebraElement,
        f: AlgebraElement,
        h: AlgebraElement,
    ) -> Result<Self> {
        let dim = spec.dim();
        if [&e, &f, &h].iter().any(|x| x.coords.len() != dim) {
            return Err(Error::InvalidTriple("element has the wrong dimension".into()));
        }
        if spec.bracket(&e, &f) != h {
            return Err(Error::InvalidTriple("[e,f] != h".into()));
        }
        if spec.bracket(&h, &e) != e.scale(&scalar::int(2)) {
            return Err(Error::InvalidTriple("[h,e] != 2e".into()));
        }
        if spec.bracket(&h, &f) != f.scale(&scalar::int(-2)) {
            return Err(Error::InvalidTriple("[h,f] != -2f".into()));
        }
        Ok(Sl2Triple { e, f, h })
    }

    pub fn zero(spec: &LieAlgebraSpec) -> Self {
        let z = spec.zero_element();
        Sl2Triple {
            e: z.clone(),
            f: z.clone(),
            h: z,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.e.is_zero()
    }
}

/// Decomposition of g into eigenspaces of `ad_h` with integer eigenvalues.
#[derive(Clone, Debug)]
pub struct Grading {
    basis: Vec<AlgebraElement>,
    degrees: Vec<i64>,
    to_eigen: Matrix,
}

impl Grading {
    /// Grading from an explicit homogeneous basis; checks that the basis
    /// spans g and that `[g_i, g_j]` lies in `g_{i+j}`.
    pub fn from_parts(
        spec: &LieAlgebraSpec,
        basis: Vec<AlgebraElement>,
        degrees: Vec<i64>,
    ) -> Result<Self> {
        let d = spec.dim();
        if basis.len() != d || degrees.len() != d {
            return Err(Error::BadGrading("basis must have one vector per dimension".into()));
        }
        let cols: Vec<Vec<Scalar>> = basis.iter().map(|b| b.coords.clone()).collect();
        let to_eigen = Matrix::from_columns(&cols, d)
            .inverse()
            .ok_or_else(|| Error::BadGrading("vectors do not span the algebra".into()))?;
        let g = Grading {
            basis,
            degrees,
            to_eigen,
        };
        for a in 0..d {
            for b in 0..d {
                let c = spec.bracket(&g.basis[a], &g.basis[b]);
                if !g.is_homogeneous_or_zero(&c, g.degrees[a] + g.degrees[b]) {
                    return Err(Error::BadGrading("bracket does not respect degrees".into()));
                }
            }
        }
        Ok(g)
    }

    fn is_homogeneous_or_zero(&self, x: &AlgebraElement, k: i64) -> bool {
        let c = self.to_eigen.apply(&x.coords);
        c.iter()
            .zip(&self.degrees)
            .all(|(v, &d)| v.is_zero() || d == k)
    }

    pub fn basis(&self) -> &[AlgebraElement] {
        &self.basis
    }

    /// Eigenvalue of `ad_h` on each basis vector.
    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    /// The weight `degree/2` of each basis vector, that is the eigenvalue of
    /// `ad_{h/2}`.
    pub fn weights(&self) -> Vec<Scalar> {
        self.degrees.iter().map(|&d| scalar::frac(d, 2)).collect()
    }

    /// Coordinates of x in the homogeneous basis.
    pub fn eigen_coords(&self, x: &AlgebraElement) -> Vec<Scalar> {
        self.to_eigen.apply(&x.coords)
    }

    /// Degree of a nonzero homogeneous element.
    pub fn degree_of(&self, x: &AlgebraElement) -> Option<i64> {
        let c = self.eigen_coords(x);
        let mut found = None;
        for (v, &d) in c.iter().zip(&self.degrees) {
            if v.is_zero() {
                continue;
            }
            match found {
                None => found = Some(d),
                Some(k) if k != d => return None,
                _ => {}
            }
        }
        found
    }

    /// Projection of x to the degree-j component.
    pub fn component(&self, x: &AlgebraElement, j: i64) -> AlgebraElement {
        let c = self.eigen_coords(x);
        let mut out = AlgebraElement::zero(x.coords.len());
        for ((v, &d), b) in c.iter().zip(&self.degrees).zip(&self.basis) {
            if d == j && !v.is_zero() {
                out = &out + &b.scale(v);
            }
        }
        out
    }

    pub fn subspace(&self, j: i64) -> Vec<AlgebraElement> {
        self.basis
            .iter()
            .zip(&self.degrees)
            .filter(|(_, &d)| d == j)
            .map(|(b, _)| b.clone())
            .collect()
    }

    /// `degree -> dim g_degree`.
    pub fn dimensions(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for &d in &self.degrees {
            *out.entry(d).or_insert(0) += 1;
        }
        out
    }
}

/// Eigenspace decomposition of `ad_x`; fails unless `ad_x` is diagonalizable
/// with integer eigenvalues.
pub fn grading_by(spec: &LieAlgebraSpec, x: &AlgebraElement) -> Result<Grading> {
    let ad = spec.ad(x);
    let d = spec.dim();
    let bound: i64 = (0..d)
        .map(|i| {
            ad.row(i)
                .iter()
                .map(|v| num_traits::Signed::abs(v).ceil().to_integer().to_i64().unwrap_or(i64::MAX / 4))
                .sum::<i64>()
        })
        .max()
        .unwrap_or(0);
    let mut basis = Vec::new();
    let mut degrees = Vec::new();
    for lambda in -bound..=bound {
        let shifted = &ad - &Matrix::identity(d).scale(&scalar::int(lambda));
        for v in shifted.kernel() {
            basis.push(AlgebraElement { coords: v });
            degrees.push(lambda);
        }
        if basis.len() == d {
            break;
        }
    }
    if basis.len() != d {
        return Err(Error::NonSemisimple);
    }
    Grading::from_parts(spec, basis, degrees)
}

pub fn dynkin_grading(spec: &LieAlgebraSpec, triple: &Sl2Triple) -> Result<Grading> {
    grading_by(spec, &triple.h)
}

/// Grading of a gl_n-type algebra by a diagonal matrix.
pub fn grading_by_diagonal(spec: &LieAlgebraSpec, diag: &[Scalar]) -> Result<Grading> {
    let h = Matrix::diagonal(diag);
    let x = spec
        .element_of(&h)
        .map_err(|_| Error::BadGrading("diagonal element is not in the algebra".into()))?;
    grading_by(spec, &x)
}

/// Degree of each matrix unit `E[i,j]` for an algebra whose basis contains
/// them, as an n×n table; `None` if some unit is not homogeneous.
pub fn degree_matrix(spec: &LieAlgebraSpec, grading: &Grading) -> Option<Vec<Vec<i64>>> {
    let n = spec.matrix_size();
    let mut out = vec![vec![0; n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let x = spec.element_of(&Matrix::unit(n, i, j)).ok()?;
            *slot = grading.degree_of(&x)?;
        }
    }
    Some(out)
}

/// Verdicts on the six defining properties of a good grading.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoodReport {
    pub e_in_degree_two: bool,
    pub ad_e_injective_below: bool,
    pub ad_e_surjective_above: bool,
    pub centralizer_nonnegative: bool,
    pub form_pairs_opposite_degrees: bool,
    pub centralizer_dimension: bool,
}

impl GoodReport {
    pub fn all(&self) -> bool {
        self.e_in_degree_two
            && self.ad_e_injective_below
            && self.ad_e_surjective_above
            && self.centralizer_nonnegative
            && self.form_pairs_opposite_degrees
            && self.centralizer_dimension
    }

    pub fn entries(&self) -> [(&'static str, bool); 6] {
        [
            ("e_in_degree_two", self.e_in_degree_two),
            ("ad_e_injective_below", self.ad_e_injective_below),
            ("ad_e_surjective_above", self.ad_e_surjective_above),
            ("centralizer_nonnegative", self.centralizer_nonnegative),
            ("form_pairs_opposite_degrees", self.form_pairs_opposite_degrees),
            ("centralizer_dimension", self.centralizer_dimension),
        ]
    }
}

/// Centralizer `g^e` as a list of basis vectors.
pub fn centralizer(spec: &LieAlgebraSpec, e: &AlgebraElement) -> Vec<AlgebraElement> {
    spec.ad(e)
        .kernel()
        .into_iter()
        .map(|coords| AlgebraElement { coords })
        .collect()
}

pub fn check_good(spec: &LieAlgebraSpec, grading: &Grading, e: &AlgebraElement) -> GoodReport {
    let dim = spec.dim();
    let dims = grading.dimensions();
    let (lo, hi) = (
        dims.keys().next().copied().unwrap_or(0),
        dims.keys().last().copied().unwrap_or(0),
    );
    let e_in_degree_two = !e.is_zero() && grading.degree_of(e) == Some(2);

    // Rank of ad_e restricted to g_j, measured in the full algebra.
    let image_rank = |j: i64| {
        let imgs: Vec<Vec<Scalar>> = grading
            .subspace(j)
            .iter()
            .map(|x| spec.bracket(e, x).coords)
            .collect();
        linalg::rank_of(&imgs, dim)
    };
    let dim_of = |j: i64| dims.get(&j).copied().unwrap_or(0);
    let ad_e_injective_below = (lo..=-1).all(|j| image_rank(j) == dim_of(j));
    let ad_e_surjective_above = (-1..=hi).all(|j| {
        let target = dim_of(j + 2);
        // the image of g_j lies in g_{j+2} only if e is homogeneous of degree 2
        e_in_degree_two && image_rank(j) == target
    });

    let cent = centralizer(spec, e);
    let centralizer_nonnegative = cent.iter().all(|x| {
        grading
            .eigen_coords(x)
            .iter()
            .zip(grading.degrees())
            .all(|(v, &d)| d >= 0 || v.is_zero())
    });

    let form_pairs_opposite_degrees = (0..dim).all(|a| {
        (0..dim).all(|b| {
            grading.degrees()[a] + grading.degrees()[b] == 0
                || spec.pairing(&grading.basis()[a], &grading.basis()[b]).is_zero()
        })
    });

    let centralizer_dimension = cent.len() == dim_of(0) + dim_of(1);

    GoodReport {
        e_in_degree_two,
        ad_e_injective_below,
        ad_e_surjective_above,
        centralizer_nonnegative,
        form_pairs_opposite_degrees,
        centralizer_dimension,
    }
}

/// True iff every nonzero eigenspace has even degree.
pub fn is_even(grading: &Grading) -> bool {
    grading.degrees().iter().all(|d| d % 2 == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::build;
    use crate::scalar::int;

    #[test]
    fn regular_triples_satisfy_relations() {
        for n in 2..=5 {
            assert!(jm_regular_gl(n).relations_hold(), "n = {n}");
        }
        let t = jm_regular_gl(3);
        assert_eq!(t.f[(1, 0)], int(2));
        assert_eq!(t.f[(2, 1)], int(2));
    }

    #[test]
    fn partition_blocks() {
        let t = jm_from_partition(&[2, 1]).unwrap();
        assert_eq!(t.e, Matrix::unit(3, 0, 1));
        assert_eq!(t.f, Matrix::unit(3, 1, 0));
        assert_eq!(t.h, Matrix::diagonal(&[int(1), int(-1), int(0)]));
        assert_eq!(jm_from_partition(&[3]).unwrap(), jm_regular_gl(3));
        assert!(jm_from_partition(&[1, 2]).is_err());
        assert!(jm_from_partition(&[1, 1, 1]).unwrap().e.is_zero());
    }

    #[test]
    fn broken_triple_rejected() {
        let g = build("gl", 2).unwrap();
        let mut t = jm_regular_gl(2);
        t.f = t.f.scale(&int(2));
        assert!(matches!(t.in_spec(&g), Err(Error::InvalidTriple(_))));
    }

    #[test]
    fn non_semisimple_rejected() {
        let g = build("gl", 2).unwrap();
        let e = g.element_of(&Matrix::unit(2, 0, 1)).unwrap();
        assert_eq!(grading_by(&g, &e).unwrap_err(), Error::NonSemisimple);
    }

    #[test]
    fn parse_partitions() {
        assert_eq!(parse_partition("partition:2,1").unwrap(), vec![2, 1]);
        assert_eq!(parse_partition("3").unwrap(), vec![3]);
        assert!(parse_partition("a").is_err());
    }
}
