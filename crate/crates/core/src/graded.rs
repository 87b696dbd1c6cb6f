//! Graded bases, sparse linear combinations and the Koszul sign rule.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::ring::{odd, Ring};

/// Finitely supported linear combination keyed by `K`.
#[derive(Clone, Debug, PartialEq)]
pub struct Lin<K: Ord, E> {
    terms: BTreeMap<K, E>,
}

impl<K: Ord, E> Default for Lin<K, E> {
    fn default() -> Self {
        Lin { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone, E: Clone> Lin<K, E> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single<R: Ring<Elem = E>>(ring: &R, k: K, c: E) -> Self {
        let mut l = Self::new();
        l.add_term(ring, k, c);
        l
    }

    pub fn add_term<R: Ring<Elem = E>>(&mut self, ring: &R, k: K, c: E) {
        if ring.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(x) => {
                *x = ring.add(x, &c);
                if ring.is_zero(x) {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    /// `self += c · other`
    pub fn add_scaled<R: Ring<Elem = E>>(&mut self, ring: &R, c: &E, other: &Self) {
        for (k, x) in &other.terms {
            self.add_term(ring, k.clone(), ring.mul(c, x));
        }
    }

    pub fn add_lin<R: Ring<Elem = E>>(&mut self, ring: &R, other: &Self) {
        for (k, x) in &other.terms {
            self.add_term(ring, k.clone(), x.clone());
        }
    }

    pub fn scaled<R: Ring<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        let mut out = Self::new();
        out.add_scaled(ring, c, self);
        out
    }

    pub fn negated<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        Lin { terms: self.terms.iter().map(|(k, x)| (k.clone(), ring.neg(x))).collect() }
    }

    pub fn minus<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(ring, &ring.from_i64(-1), other);
        out
    }

    pub fn get(&self, k: &K) -> Option<&E> {
        self.terms.get(k)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &E)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Reindexes terms, merging collisions.
    pub fn map_keys<K2: Ord + Clone, R: Ring<Elem = E>>(&self, ring: &R, f: impl Fn(&K) -> K2) -> Lin<K2, E> {
        let mut out = Lin::new();
        for (k, x) in &self.terms {
            out.add_term(ring, f(k), x.clone());
        }
        out
    }

    pub fn map_coeffs<E2: Clone, R: Ring<Elem = E2>>(&self, ring: &R, f: impl Fn(&E) -> E2) -> Lin<K, E2> {
        let mut out = Lin::new();
        for (k, x) in &self.terms {
            out.add_term(ring, k.clone(), f(x));
        }
        out
    }
}

impl<K: Ord + Clone, E: Clone> FromIterator<(K, E)> for Lin<K, E> {
    /// Collects without ring arithmetic; later entries overwrite earlier ones.
    fn from_iter<I: IntoIterator<Item = (K, E)>>(iter: I) -> Self {
        Lin { terms: iter.into_iter().collect() }
    }
}

/// Element of a graded free module, indexed by basis position.
pub type Elem<E> = Lin<usize, E>;

/// Counts products that would leave the truncation window.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Truncation {
    pub events: usize,
}

impl Truncation {
    pub fn hit(&mut self) {
        self.events += 1;
    }

    pub fn clean(&self) -> bool {
        self.events == 0
    }
}

/// Named basis elements with degrees in `[0, top]`, ordered by degree then label.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedBasis {
    top: usize,
    labels: Vec<String>,
    degrees: Vec<usize>,
    index: HashMap<String, usize>,
}

impl GradedBasis {
    pub fn new(top: usize, elems: Vec<(String, usize)>) -> Result<Self> {
        let mut elems = elems;
        elems.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
        let mut index = HashMap::new();
        for (i, (label, deg)) in elems.iter().enumerate() {
            if *deg > top {
                return Err(Error::Degree(format!("basis element {label} of degree {deg} lies outside [0, {top}]")));
            }
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate basis label {label}")));
            }
        }
        let (labels, degrees) = elems.into_iter().unzip();
        Ok(GradedBasis { top, labels, degrees, index })
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn lookup(&self, label: &str) -> Result<usize> {
        self.find(label).ok_or_else(|| Error::Unresolved(format!("basis element {label}")))
    }

    pub fn rank(&self, d: usize) -> usize {
        self.degrees.iter().filter(|&&x| x == d).count()
    }

    pub fn in_degree(&self, d: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| self.degrees[i] == d)
    }

    pub fn elements(&self) -> impl Iterator<Item = (&str, usize)> {
        self.labels.iter().map(String::as_str).zip(self.degrees.iter().copied())
    }

    /// Common degree of the support, `None` for zero, error when mixed.
    pub fn homogeneous_degree<E: Clone>(&self, x: &Elem<E>) -> Result<Option<usize>> {
        let mut deg = None;
        for k in x.keys() {
            let d = self.degrees[*k];
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => {
                    return Err(Error::Degree(format!("element mixes degrees {e} and {d}")));
                }
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn render<R: Ring>(&self, ring: &R, x: &Elem<R::Elem>) -> String {
        render_lin(ring, x, |i| self.label(*i).to_string())
    }
}

/// Renders `Σ c·label` compactly.
pub fn render_lin<K: Ord + Clone, R: Ring>(ring: &R, x: &Lin<K, R::Elem>, label: impl Fn(&K) -> String) -> String {
    if x.is_empty() {
        return "0".into();
    }
    x.iter()
        .map(|(k, c)| {
            let l = label(k);
            if ring.is_one(c) {
                l
            } else if ring.is_one(&ring.neg(c)) {
                format!("-{l}")
            } else {
                format!("({})·{l}", ring.render(c))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Linear map between graded bases, of a fixed degree, given on basis elements.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMap<E> {
    pub degree: i64,
    pub images: Vec<Elem<E>>,
}

impl<E: Clone> GradedMap<E> {
    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        GradedMap { degree: 0, images: (0..n).map(|i| Elem::single(ring, i, ring.one())).collect() }
    }

    pub fn apply<R: Ring<Elem = E>>(&self, ring: &R, x: &Elem<E>) -> Elem<E> {
        let mut out = Elem::new();
        for (i, c) in x.iter() {
            out.add_scaled(ring, c, &self.images[*i]);
        }
        out
    }

    /// `self ∘ other`
    pub fn compose<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        GradedMap {
            degree: self.degree + other.degree,
            images: other.images.iter().map(|x| self.apply(ring, x)).collect(),
        }
    }
}

/// Sign of `(f_1 ⊗ … ⊗ f_k)(x_1 ⊗ … ⊗ x_k)`: `Σ_{i<j} |f_j||x_i|` is odd.
pub fn koszul_negative(map_degrees: &[i64], elem_degrees: &[i64]) -> bool {
    let mut acc = 0i64;
    let mut prefix = 0i64;
    for (f, x) in map_degrees.iter().zip(elem_degrees) {
        acc += f * prefix;
        prefix += x;
    }
    odd(acc)
}

/// Pairs `(i, j)` of basis positions of `x ⊗ y`.
pub type TensorElem<E> = Lin<(usize, usize), E>;

/// `(f ⊗ g)(x ⊗ y) = (−1)^{|g||x|} f(x) ⊗ g(y)` for homogeneous `x`, `y`.
pub fn koszul_apply<R: Ring>(
    ring: &R,
    f: &GradedMap<R::Elem>,
    g: &GradedMap<R::Elem>,
    (bx, x): (&GradedBasis, &Elem<R::Elem>),
    (by, y): (&GradedBasis, &Elem<R::Elem>),
) -> Result<TensorElem<R::Elem>> {
    let dx = bx.homogeneous_degree(x)?.unwrap_or(0) as i64;
    by.homogeneous_degree(y)?;
    let negate = koszul_negative(&[f.degree, g.degree], &[dx, 0]);
    let (fx, gy) = (f.apply(ring, x), g.apply(ring, y));
    let mut out = TensorElem::new();
    for (i, a) in fx.iter() {
        for (j, b) in gy.iter() {
            out.add_term(ring, (*i, *j), ring.signed(negate, &ring.mul(a, b)));
        }
    }
    Ok(out)
}

/// Applies `(f ⊗ g)` to a general (possibly mixed-degree) tensor by bilinearity.
pub fn koszul_apply_tensor<R: Ring>(
    ring: &R,
    f: &GradedMap<R::Elem>,
    g: &GradedMap<R::Elem>,
    bx: &GradedBasis,
    t: &TensorElem<R::Elem>,
) -> TensorElem<R::Elem> {
    let mut out = TensorElem::new();
    for ((i, j), c) in t.iter() {
        let negate = koszul_negative(&[f.degree, g.degree], &[bx.degree(*i) as i64, 0]);
        for (a, x) in f.images[*i].iter() {
            for (b, y) in g.images[*j].iter() {
                let v = ring.mul(c, &ring.mul(x, y));
                out.add_term(ring, (*a, *b), ring.signed(negate, &v));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Integers;
    use num_bigint::BigInt;

    fn basis() -> GradedBasis {
        GradedBasis::new(3, vec![("a".into(), 0), ("b".into(), 1)]).unwrap()
    }

    #[test]
    fn sign_rule_examples() {
        let z = Integers;
        let b = basis();
        let id0 = GradedMap::identity(&z, 2);
        let shift = GradedMap { degree: 1, images: id0.images.clone() };
        let x = Elem::single(&z, 1, BigInt::from(1));
        let y = Elem::single(&z, 0, BigInt::from(1));
        let out = koszul_apply(&z, &id0, &shift, (&b, &x), (&b, &y)).unwrap();
        assert_eq!(out.get(&(1, 0)), Some(&BigInt::from(-1)));
        let x0 = Elem::single(&z, 0, BigInt::from(1));
        let out = koszul_apply(&z, &id0, &shift, (&b, &x0), (&b, &y)).unwrap();
        assert_eq!(out.get(&(0, 0)), Some(&BigInt::from(1)));
    }

    #[test]
    fn mixed_degree_input_is_rejected() {
        let z = Integers;
        let b = basis();
        let id = GradedMap::identity(&z, 2);
        let mut x = Elem::single(&z, 0, BigInt::from(1));
        x.add_term(&z, 1, BigInt::from(1));
        assert!(matches!(koszul_apply(&z, &id, &id, (&b, &x), (&b, &x)), Err(Error::Degree(_))));
    }

    #[test]
    fn basis_is_sorted_and_checked() {
        let b = GradedBasis::new(2, vec![("z".into(), 0), ("y".into(), 1), ("a".into(), 1)]).unwrap();
        assert_eq!(b.label(1), "a");
        assert!(GradedBasis::new(1, vec![("u".into(), 2)]).is_err());
        assert!(GradedBasis::new(1, vec![("u".into(), 0), ("u".into(), 1)]).is_err());
    }
}
