//! Sparse commutative polynomials with rational coefficients over an ordered
//! variable type.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{self, Scalar};

/// A monomial: variables in increasing order with positive exponents.
pub type Monomial<V> = Vec<(V, u32)>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<V: Ord> {
    terms: BTreeMap<Monomial<V>, Scalar>,
}

pub fn total_degree<V>(m: &Monomial<V>) -> u32 {
    m.iter().map(|(_, e)| e).sum()
}

fn mono_mul<V: Ord + Clone>(a: &Monomial<V>, b: &Monomial<V>) -> Monomial<V> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0.clone(), a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl<V: Ord + Clone + Debug> Poly<V> {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn var(v: V) -> Self {
        Self::monomial(vec![(v, 1)], scalar::one())
    }

    pub fn monomial(m: Monomial<V>, c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial<V>, Scalar)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial<V>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial<V>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial<V>) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Vec::new())
    }

    /// Returns the constant if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(total_degree).max()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn variables(&self) -> Vec<V> {
        let mut vs: Vec<V> = self
            .terms
            .keys()
            .flat_map(|m| m.iter().map(|(v, _)| v.clone()))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn contains_var(&self, v: &V) -> bool {
        self.terms.keys().any(|m| m.iter().any(|(w, _)| w == v))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial(&self, v: &V) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some(pos) = m.iter().position(|(w, _)| w == v) {
                let e = m[pos].1;
                let mut nm = m.clone();
                if e == 1 {
                    nm.remove(pos);
                } else {
                    nm[pos].1 -= 1;
                }
                out.add_term(nm, c * scalar::int(e as i64));
            }
        }
        out
    }

    /// Replaces every variable through `f`, which maps a variable to a polynomial.
    pub fn substitute<W: Ord + Clone + Debug>(&self, mut f: impl FnMut(&V) -> Poly<W>) -> Poly<W> {
        let mut cache: BTreeMap<V, Poly<W>> = BTreeMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for (v, e) in m {
                let img = cache.entry(v.clone()).or_insert_with(|| f(v)).clone();
                t = &t * &img.pow(*e);
            }
            out = &out + &t;
        }
        out
    }

    pub fn map_vars<W: Ord + Clone + Debug>(&self, mut f: impl FnMut(&V) -> W) -> Poly<W> {
        self.substitute(|v| Poly::var(f(v)))
    }

    pub fn evaluate(&self, mut f: impl FnMut(&V) -> Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m {
                t *= scalar::pow(&f(v), *e);
            }
            acc += t;
        }
        acc
    }

    /// Terms in graded-lex order: higher total degree first, ties broken by
    /// the variable order.
    pub fn terms_graded(&self) -> Vec<(&Monomial<V>, &Scalar)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|(a, _), (b, _)| total_degree(b).cmp(&total_degree(a)).then_with(|| a.cmp(b)));
        ts
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| total_degree(m) == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

impl<V: Ord + Clone + Debug> Add for &Poly<V> {
    type Output = Poly<V>;
    fn add(self, rhs: &Poly<V>) -> Poly<V> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<V: Ord + Clone + Debug> Sub for &Poly<V> {
    type Output = Poly<V>;
    fn sub(self, rhs: &Poly<V>) -> Poly<V> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<V: Ord + Clone + Debug> Neg for &Poly<V> {
    type Output = Poly<V>;
    fn neg(self) -> Poly<V> {
        self.scale(&-Scalar::one())
    }
}

impl<V: Ord + Clone + Debug> Mul for &Poly<V> {
    type Output = Poly<V>;
    fn mul(self, rhs: &Poly<V>) -> Poly<V> {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }
}

impl<V: Ord + Clone + Debug> Add for Poly<V> {
    type Output = Poly<V>;
    fn add(self, rhs: Poly<V>) -> Poly<V> {
        &self + &rhs
    }
}

impl<V: Ord + Clone + Debug> Sub for Poly<V> {
    type Output = Poly<V>;
    fn sub(self, rhs: Poly<V>) -> Poly<V> {
        &self - &rhs
    }
}

impl<V: Ord + Clone + Debug> Mul for Poly<V> {
    type Output = Poly<V>;
    fn mul(self, rhs: Poly<V>) -> Poly<V> {
        &self * &rhs
    }
}

impl<V: Ord + Clone + Debug> Neg for Poly<V> {
    type Output = Poly<V>;
    fn neg(self) -> Poly<V> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    type P = Poly<u8>;

    #[test]
    fn arithmetic_and_cancellation() {
        let x = P::var(0);
        let y = P::var(1);
        let s = &x + &y;
        let d = &x - &y;
        let prod = &s * &d;
        let expect = &x.pow(2) - &y.pow(2);
        assert_eq!(prod, expect);
        assert!((&prod - &expect).is_zero());
    }

    #[test]
    fn partial_derivative() {
        let x = P::var(0);
        let y = P::var(1);
        let p = &x.pow(3) * &y;
        assert_eq!(p.partial(&0), (&x.pow(2) * &y).scale(&int(3)));
        assert!(p.partial(&2).is_zero());
    }

    #[test]
    fn substitution_and_evaluation() {
        let x = P::var(0);
        let p = &x.pow(2) + &P::constant(int(1));
        let q = p.substitute(|_| &P::var(1) + &P::one());
        assert_eq!(q.evaluate(|_| int(2)), int(10));
        assert_eq!(p.evaluate(|_| int(3)), int(10));
    }

    #[test]
    fn graded_order() {
        let x = P::var(0);
        let y = P::var(1);
        let p = &(&x + &y.pow(2)) + &P::one();
        let degs: Vec<u32> = p.terms_graded().iter().map(|(m, _)| total_degree(m)).collect();
        assert_eq!(degs, vec![2, 1, 0]);
    }
}
