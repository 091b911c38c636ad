//! Central elements of U(gl_N) and U(o_N): Capelli row determinants,
//! power traces, noncommutative pfaffians and their commutation relations.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::emit::Style;
use crate::error::{Error, Result};
use crate::liealg::{self, AlgebraKind, FormKind};
use crate::ncalg::{NcAlgebra, NcPoly, Session};
use crate::scalar::{self, Scalar};

/// Polynomial in a central formal variable with coefficients in U(g);
/// `coeffs[k]` multiplies the k-th power.
pub type CentralPoly = Vec<NcPoly>;

fn central_mul(s: &mut Session<'_>, a: &CentralPoly, b: &CentralPoly) -> Result<CentralPoly> {
    let zero = s.algebra().zero();
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = vec![zero; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let p = s.multiply(x, y)?;
            out[i + j] = out[i + j].try_add(&p)?;
        }
    }
    Ok(out)
}

fn central_is_zero(p: &CentralPoly) -> bool {
    p.iter().all(NcPoly::is_zero)
}

/// Sign of a permutation given as images of `0..n`.
pub fn permutation_sign(perm: &[usize]) -> i64 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = perm[k];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: &mut Vec<usize>, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..rest.len() {
            let x = rest.remove(k);
            prefix.push(x);
            go(rest, prefix, out);
            prefix.pop();
            rest.insert(k, x);
        }
    }
    let mut out = Vec::new();
    go(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    out
}

/// Row determinant `sum_s sign(s) M[0][s(0)] M[1][s(1)] ...` with the
/// factors multiplied in row order. Entries are polynomials in a central
/// variable.
pub fn row_determinant(alg: &NcAlgebra, entries: &[Vec<CentralPoly>]) -> Result<CentralPoly> {
    let n = entries.len();
    if entries.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidArgument("row determinant needs a square matrix".into()));
    }
    let mut s = alg.session();
    let mut total: CentralPoly = vec![alg.zero()];
    for perm in permutations(n) {
        if (0..n).any(|r| central_is_zero(&entries[r][perm[r]])) {
            continue;
        }
        let mut acc: CentralPoly = vec![alg.one()];
        for (r, &c) in perm.iter().enumerate() {
            acc = central_mul(&mut s, &acc, &entries[r][c])?;
        }
        let sign = scalar::int(permutation_sign(&perm));
        if total.len() < acc.len() {
            total.resize(acc.len(), alg.zero());
        }
        for (k, p) in acc.iter().enumerate() {
            total[k] = total[k].try_add(&p.scale(&sign))?;
        }
    }
    while total.len() > 1 && total.last().is_some_and(NcPoly::is_zero) {
        total.pop();
    }
    Ok(total)
}

/// The generator `E[i,j]` (0-based indices) of U(gl_N).
pub fn gl_unit(alg: &NcAlgebra, i: usize, j: usize) -> Result<NcPoly> {
    let label = format!("E[{},{}]", i + 1, j + 1);
    let idx = alg
        .spec()
        .index_of(&label)
        .ok_or_else(|| Error::UnknownSymbol(label.clone()))?;
    alg.generator(idx)
}

fn require_kind(alg: &NcAlgebra, kind: AlgebraKind) -> Result<usize> {
    if alg.spec().kind() != kind {
        return Err(Error::UnsupportedAlgebra(alg.spec().name().to_string()));
    }
    Ok(alg.spec().matrix_size())
}

/// Coefficients of `tau^(N-1)`, ..., `tau^0` in the row determinant of the
/// matrix with entries `E[i,j] + delta_ij (tau + i)` (1-based i).
pub fn capelli_rdet(alg: &NcAlgebra) -> Result<Vec<NcPoly>> {
    let n = require_kind(alg, AlgebraKind::Gl)?;
    let mut entries = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let e = gl_unit(alg, i, j)?;
            if i == j {
                let shifted = e.try_add(&alg.constant(scalar::int(i as i64 + 1)))?;
                row.push(vec![shifted, alg.one()]);
            } else {
                row.push(vec![e]);
            }
        }
        entries.push(row);
    }
    let det = row_determinant(alg, &entries)?;
    Ok(coefficients_below_top(alg, &det, n))
}

/// `[c_1, ..., c_n]` where `c_i` multiplies `u^(n-i)`.
pub(crate) fn coefficients_below_top(alg: &NcAlgebra, det: &CentralPoly, n: usize) -> Vec<NcPoly> {
    (1..=n)
        .map(|i| det.get(n - i).cloned().unwrap_or_else(|| alg.zero()))
        .collect()
}

/// `Omega_k = sum E[i1,i2] E[i2,i3] ... E[ik,i1]` in U(gl_N).
pub fn omega_k(alg: &NcAlgebra, k: usize) -> Result<NcPoly> {
    let n = require_kind(alg, AlgebraKind::Gl)?;
    if k == 0 {
        return Err(Error::InvalidArgument("Omega_k needs k >= 1".into()));
    }
    let mut s = alg.session();
    let mut total = alg.zero();
    // paths[(start, end)] = sum of products E[start,..]...E[..,end]
    let mut paths: BTreeMap<(usize, usize), NcPoly> = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            paths.insert((i, j), gl_unit(alg, i, j)?);
        }
    }
    for _ in 1..k {
        let mut next = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                let mut acc = alg.zero();
                for m in 0..n {
                    let step = s.multiply(&paths[&(i, m)], &gl_unit(alg, m, j)?)?;
                    acc = acc.try_add(&step)?;
                }
                next.insert((i, j), acc);
            }
        }
        paths = next;
    }
    for i in 0..n {
        total = total.try_add(&paths[&(i, i)])?;
    }
    Ok(total)
}

/// Labels of the generators that do not commute with `p`.
pub fn non_commuting_generators(alg: &NcAlgebra, p: &NcPoly) -> Result<Vec<String>> {
    let mut s = alg.session();
    let mut bad = Vec::new();
    for i in 0..alg.dim() {
        let g = alg.generator(i)?;
        if !s.commutator(p, &g)?.is_zero() {
            bad.push(alg.spec().label(i).to_string());
        }
    }
    Ok(bad)
}

/// Strictly increasing 1-based index set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(mut indices: Vec<usize>, n: usize) -> Result<Self> {
        if indices.iter().any(|&i| i == 0 || i > n) {
            return Err(Error::InvalidIndexSet(format!("{indices:?} is not inside 1..={n}")));
        }
        let before = indices.len();
        indices.sort_unstable();
        indices.dedup();
        if indices.len() != before {
            return Err(Error::InvalidIndexSet("repeated index".into()));
        }
        Ok(IndexSet(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// Formal linear combination of index sets of equal size.
pub type IndexCombination = BTreeMap<IndexSet, Scalar>;

/// Sorts a sequence of distinct indices, returning the sign of the sorting
/// permutation; `None` if an index repeats.
pub fn sort_with_sign(seq: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut v = seq.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// Basic tensors `e_{i1} ⊗ ... ⊗ e_{ik}` (1-based) with coefficients.
pub type Tensor = BTreeMap<Vec<usize>, Scalar>;

/// Action of `F[i,j] = E_ij - E_ji` (1-based, any order of i and j) on a
/// tensor, acting in each slot of the vector representation.
pub fn act_f(i: usize, j: usize, t: &Tensor) -> Tensor {
    let mut out = Tensor::new();
    for (seq, c) in t {
        for slot in 0..seq.len() {
            let mut push = |idx: usize, sign: i64| {
                let mut s = seq.clone();
                s[slot] = idx;
                let e = out.entry(s).or_insert_with(Scalar::zero);
                *e += c * scalar::int(sign);
            };
            if seq[slot] == j {
                push(i, 1);
            }
            if seq[slot] == i {
                push(j, -1);
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Re-expresses a tensor as a combination of index sets using the
/// antisymmetry of pfaffians in their indices.
pub fn tensor_to_index_sets(t: &Tensor, n: usize) -> Result<IndexCombination> {
    let mut out = IndexCombination::new();
    for (seq, c) in t {
        if let Some((sorted, sign)) = sort_with_sign(seq) {
            let set = IndexSet::new(sorted, n)?;
            let e = out.entry(set).or_insert_with(Scalar::zero);
            *e += c * scalar::int(sign);
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Pfaffians and related elements in U(o_N).
pub struct PfaffianContext<'a> {
    alg: &'a NcAlgebra,
    n: usize,
    cache: BTreeMap<IndexSet, NcPoly>,
}

impl<'a> PfaffianContext<'a> {
    pub fn new(alg: &'a NcAlgebra) -> Result<Self> {
        let n = require_kind(alg, AlgebraKind::O)?;
        Ok(PfaffianContext {
            alg,
            n,
            cache: BTreeMap::new(),
        })
    }

    pub fn algebra(&self) -> &NcAlgebra {
        self.alg
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// `F[i,j]` for 1-based indices, with `F[j,i] = -F[i,j]` and `F[i,i] = 0`.
    pub fn f(&self, i: usize, j: usize) -> Result<NcPoly> {
        if i == j {
            return Ok(self.alg.zero());
        }
        let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        let label = format!("F[{a},{b}]");
        let idx = self
            .alg
            .spec()
            .index_of(&label)
            .ok_or_else(|| Error::IndexOutOfRange(format!("F[{a},{b}] in o{}", self.n)))?;
        Ok(self.alg.generator(idx)?.scale(&scalar::int(sign)))
    }

    /// Pfaffian of the submatrix on an index sequence, by the full
    /// `(2k)!`-term sum.
    pub fn pfaffian_of_sequence(&self, seq: &[usize]) -> Result<NcPoly> {
        if seq.len() % 2 == 1 {
            return Err(Error::OddIndexSet(seq.len()));
        }
        if seq.is_empty() {
            return Ok(self.alg.one());
        }
        let k = seq.len() / 2;
        let mut s = self.alg.session();
        let mut total = self.alg.zero();
        for perm in permutations(seq.len()) {
            let mut acc = self.alg.one();
            for pair in perm.chunks(2) {
                let entry = self.f(seq[pair[0]], seq[pair[1]])?;
                acc = s.multiply(&acc, &entry)?;
                if acc.is_zero() {
                    break;
                }
            }
            total = total.try_add(&acc.scale(&scalar::int(permutation_sign(&perm))))?;
        }
        let norm = scalar::factorial(k as u32) * scalar::pow(&scalar::int(2), k as u32);
        Ok(total.scale(&(Scalar::one() / norm)))
    }

    pub fn pfaffian(&mut self, set: &IndexSet) -> Result<NcPoly> {
        if let Some(p) = self.cache.get(set) {
            return Ok(p.clone());
        }
        let p = self.pfaffian_of_sequence(set.indices())?;
        self.cache.insert(set.clone(), p.clone());
        Ok(p)
    }

    /// `sum_I c_I Pf F_I`.
    pub fn pfaffian_of_combination(&mut self, comb: &IndexCombination) -> Result<NcPoly> {
        let mut total = self.alg.zero();
        for (set, c) in comb {
            total = total.try_add(&self.pfaffian(set)?.scale(c))?;
        }
        Ok(total)
    }

    /// `F[i,j] I` as a combination of index sets.
    pub fn act_on_set(&self, i: usize, j: usize, set: &IndexSet) -> Result<IndexCombination> {
        let t: Tensor = [(set.indices().to_vec(), Scalar::one())].into_iter().collect();
        tensor_to_index_sets(&act_f(i, j, &t), self.n)
    }

    /// Action of an element of U(o_N) on `e_I`, through the tensor
    /// representation.
    pub fn act_element_on_set(&self, p: &NcPoly, set: &IndexSet) -> Result<IndexCombination> {
        let base: Tensor = [(set.indices().to_vec(), Scalar::one())].into_iter().collect();
        let mut total = Tensor::new();
        for (word, c) in self.alg.words_as_generators(p) {
            let mut t = base.clone();
            for &g in word.iter().rev() {
                let (i, j) = self.generator_indices(g)?;
                t = act_f(i, j, &t);
            }
            for (seq, v) in t {
                let e = total.entry(seq).or_insert_with(Scalar::zero);
                *e += v * &c;
            }
        }
        total.retain(|_, c| !c.is_zero());
        tensor_to_index_sets(&total, self.n)
    }

    fn generator_indices(&self, g: usize) -> Result<(usize, usize)> {
        let label = self.alg.spec().label(g);
        let inner = label
            .strip_prefix("F[")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::UnknownSymbol(label.to_string()))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| Error::UnknownSymbol(label.to_string()))?;
        let parse = |s: &str| s.parse::<usize>().map_err(|_| Error::UnknownSymbol(label.to_string()));
        Ok((parse(a)?, parse(b)?))
    }

    /// `C_k = sum_{|I| = k} (Pf F_I)^2`.
    pub fn capelli(&mut self, k: usize) -> Result<NcPoly> {
        if k == 0 || k % 2 == 1 || k > self.n {
            return Err(Error::InvalidArgument(format!(
                "C_k needs even k with 2 <= k <= {}",
                2 * (self.n / 2)
            )));
        }
        let mut s = self.alg.session();
        let mut total = self.alg.zero();
        for set in subsets(self.n, k) {
            let set = IndexSet::new(set, self.n)?;
            let p = self.pfaffian(&set)?;
            total = total.try_add(&s.multiply(&p, &p)?)?;
        }
        Ok(total)
    }

    /// Both sides of `[F_ij, Pf F_I] = Pf F_{F_ij I}`.
    pub fn pf_bracket(&mut self, i: usize, j: usize, set: &IndexSet) -> Result<PfBracket> {
        let fij = self.f(i, j)?;
        let pf = self.pfaffian(set)?;
        let left = self.alg.commutator(&fij, &pf)?;
        let action = self.act_on_set(i, j, set)?;
        let right = self.pfaffian_of_combination(&action)?;
        Ok(PfBracket {
            equal: left == right,
            left,
            right,
            action,
        })
    }

    /// Computes `[Pf F_I, Pf F_J]` and compares it with candidate readings of
    /// the printed pfaffian-pfaffian relation.
    pub fn pf_pf_bracket_probe(&mut self, first: &IndexSet, second: &IndexSet) -> Result<PfPfProbe> {
        let a = self.pfaffian(first)?;
        let b = self.pfaffian(second)?;
        let left = self.alg.commutator(&a, &b)?;
        let mut readings = Vec::new();
        for reading in PfPfReading::ALL {
            let right = self.pf_pf_rhs(reading, first, second)?;
            let difference = left.try_sub(&right)?;
            readings.push(PfPfReadingResult {
                reading,
                matches: difference.is_zero(),
                right,
                difference,
            });
        }
        Ok(PfPfProbe {
            first: first.clone(),
            second: second.clone(),
            left,
            readings,
        })
    }

    fn pf_pf_rhs(&mut self, reading: PfPfReading, first: &IndexSet, second: &IndexSet) -> Result<NcPoly> {
        let mut s = self.alg.session();
        let mut total = self.alg.zero();
        for (outer, inner, sign) in reading.decompositions(first, self.n)? {
            let inner_pf = self.pfaffian(&inner)?;
            let acted = self.act_element_on_set(&inner_pf, second)?;
            if acted.is_empty() {
                continue;
            }
            let acted_pf = self.pfaffian_of_combination(&acted)?;
            let outer_pf = self.pfaffian(&outer)?;
            let term = if reading == PfPfReading::SplitSignedReversed {
                s.multiply(&acted_pf, &outer_pf)?
            } else {
                s.multiply(&outer_pf, &acted_pf)?
            };
            total = total.try_add(&term.scale(&scalar::int(sign)))?;
        }
        Ok(total)
    }
}

/// All k-subsets of `{1..n}` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for i in start..=n {
            prefix.push(i);
            go(i + 1, n, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug)]
pub struct PfBracket {
    pub left: NcPoly,
    pub right: NcPoly,
    pub action: IndexCombination,
    pub equal: bool,
}

/// Candidate readings of the summation in the pfaffian-pfaffian relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PfPfReading {
    /// I is the disjoint union of I' and I'' (I'' nonempty), signed by the
    /// shuffle that puts I' before I''.
    SplitSigned,
    /// As `SplitSigned` without the shuffle sign.
    SplitUnsigned,
    /// As `SplitSigned` with the two factors of each term swapped.
    SplitSignedReversed,
    /// I is the intersection of two even index sets I' and I''.
    Intersection,
}

impl PfPfReading {
    pub const ALL: [PfPfReading; 4] = [
        PfPfReading::SplitSigned,
        PfPfReading::SplitUnsigned,
        PfPfReading::SplitSignedReversed,
        PfPfReading::Intersection,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PfPfReading::SplitSigned => "split-signed",
            PfPfReading::SplitUnsigned => "split-unsigned",
            PfPfReading::SplitSignedReversed => "split-signed-reversed",
            PfPfReading::Intersection => "intersection",
        }
    }

    /// `(I', I'', sign)` triples summed over by this reading.
    fn decompositions(self, set: &IndexSet, n: usize) -> Result<Vec<(IndexSet, IndexSet, i64)>> {
        let mut out = Vec::new();
        match self {
            PfPfReading::SplitSigned | PfPfReading::SplitUnsigned | PfPfReading::SplitSignedReversed => {
                let idx = set.indices();
                for mask in 1u32..(1 << idx.len()) {
                    let inner: Vec<usize> = (0..idx.len()).filter(|b| mask >> b & 1 == 1).map(|b| idx[b]).collect();
                    let outer: Vec<usize> = (0..idx.len()).filter(|b| mask >> b & 1 == 0).map(|b| idx[b]).collect();
                    if inner.len() % 2 == 1 {
                        continue;
                    }
                    let sign = if self != PfPfReading::SplitUnsigned {
                        shuffle_sign(&outer, &inner)
                    } else {
                        1
                    };
                    out.push((IndexSet::new(outer, n)?, IndexSet::new(inner, n)?, sign));
                }
            }
            PfPfReading::Intersection => {
                let even: Vec<Vec<usize>> = (1..=n / 2).flat_map(|k| subsets(n, 2 * k)).collect();
                for a in &even {
                    for b in &even {
                        let meet: Vec<usize> = a.iter().filter(|x| b.contains(x)).copied().collect();
                        if meet == set.indices() {
                            out.push((IndexSet::new(a.clone(), n)?, IndexSet::new(b.clone(), n)?, shuffle_sign(a, b)));
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// `(-1)^#{(x, y) : x in a, y in b, x > y}`.
fn shuffle_sign(a: &[usize], b: &[usize]) -> i64 {
    let inversions = a.iter().map(|x| b.iter().filter(|y| x > y).count()).sum::<usize>();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug)]
pub struct PfPfReadingResult {
    pub reading: PfPfReading,
    pub right: NcPoly,
    pub difference: NcPoly,
    pub matches: bool,
}

#[derive(Clone, Debug)]
pub struct PfPfProbe {
    pub first: IndexSet,
    pub second: IndexSet,
    pub left: NcPoly,
    pub readings: Vec<PfPfReadingResult>,
}

impl PfPfProbe {
    pub fn matching(&self) -> Vec<&'static str> {
        self.readings
            .iter()
            .filter(|r| r.matches)
            .map(|r| r.reading.name())
            .collect()
    }

    pub fn to_json(&self, alg: &NcAlgebra) -> Value {
        json!({
            "I": self.first.indices(),
            "J": self.second.indices(),
            "commutator": alg.to_json(&self.left),
            "commutator_text": alg.render(&self.left, Style::Text),
            "readings": self.readings.iter().map(|r| json!({
                "reading": r.reading.name(),
                "matches": r.matches,
                "right": alg.render(&r.right, Style::Text),
                "difference": alg.render(&r.difference, Style::Text),
            })).collect::<Vec<_>>(),
        })
    }
}

/// U(gl_N) with the standard form.
pub fn gl_algebra(n: usize) -> Result<NcAlgebra> {
    Ok(NcAlgebra::new(liealg::build_kind(AlgebraKind::Gl, n, FormKind::Standard)?))
}

/// U(o_N) with the standard form.
pub fn o_algebra(n: usize) -> Result<NcAlgebra> {
    Ok(NcAlgebra::new(liealg::build_kind(AlgebraKind::O, n, FormKind::Standard)?))
}
