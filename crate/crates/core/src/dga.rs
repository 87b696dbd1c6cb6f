//! Truncated differential graded algebras given by structure constants.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graded::{Elem, GradedBasis, Truncation};
use crate::linalg::{homology_at, HomologyGroup, Matrix};
use crate::report::Report;
use crate::ring::{odd, EuclideanRing, Ring};

/// Basis positions of the two factors of a tensor algebra, per basis element.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorFactors<R: Ring> {
    pub left: Dga<R>,
    pub right: Dga<R>,
    pub pairs: Vec<(usize, usize)>,
}

impl<R: Ring> TensorFactors<R> {
    /// Basis position of `a_i ⊗ b_j`, when inside the window.
    pub fn position(&self, i: usize, j: usize) -> Option<usize> {
        self.pairs.iter().position(|&p| p == (i, j))
    }

    /// `x ⊗ y` for elements of the two factors; terms outside the window are dropped.
    pub fn embed(&self, ring: &R, x: &Elem<R::Elem>, y: &Elem<R::Elem>) -> Elem<R::Elem> {
        let mut out = Elem::new();
        for (i, c) in x.iter() {
            for (j, e) in y.iter() {
                if let Some(k) = self.position(*i, *j) {
                    out.add_term(ring, k, ring.mul(c, e));
                }
            }
        }
        out
    }
}

/// A DGA with basis, differential `μ₁` and product `μ₂`; `μ_{≥3} = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Dga<R: Ring> {
    pub ring: R,
    pub basis: GradedBasis,
    mu1: Vec<Elem<R::Elem>>,
    mu2: HashMap<(usize, usize), Elem<R::Elem>>,
    unit: usize,
    factors: Option<Box<TensorFactors<R>>>,
}

impl<R: Ring> Dga<R> {
    /// Checks degrees of all structure constants; missing entries are zero.
    pub fn new(
        ring: R,
        basis: GradedBasis,
        mu1: Vec<(usize, Elem<R::Elem>)>,
        mu2: Vec<((usize, usize), Elem<R::Elem>)>,
        unit: usize,
    ) -> Result<Self> {
        if unit >= basis.len() || basis.degree(unit) != 0 {
            return Err(Error::Degree("the unit must be a degree-0 basis element".into()));
        }
        let mut d = vec![Elem::new(); basis.len()];
        for (i, x) in mu1 {
            check_degree(&basis, &x, basis.degree(i) as i64 - 1, || format!("μ₁({})", basis.label(i)))?;
            d[i] = x;
        }
        let mut m = HashMap::new();
        for ((i, j), x) in mu2 {
            let deg = basis.degree(i) + basis.degree(j);
            if deg > basis.top() {
                if x.is_empty() {
                    continue;
                }
                return Err(Error::Degree(format!(
                    "product {}·{} lies outside the window",
                    basis.label(i),
                    basis.label(j)
                )));
            }
            check_degree(&basis, &x, deg as i64, || format!("μ₂({}, {})", basis.label(i), basis.label(j)))?;
            if !x.is_empty() {
                m.insert((i, j), x);
            }
        }
        Ok(Dga { ring, basis, mu1: d, mu2: m, unit, factors: None })
    }

    /// `R·1` concentrated in degree 0.
    pub fn scalars(ring: R, top: usize) -> Self {
        let basis = GradedBasis::new(top, vec![("1".into(), 0)]).unwrap();
        let one = Elem::single(&ring, 0, ring.one());
        Dga::new(ring, basis, vec![], vec![((0, 0), one)], 0).unwrap()
    }

    /// Polynomial algebra on one generator `u` of degree `k ≥ 1`, with `μ₁ = 0`.
    pub fn polynomial(ring: R, k: usize, top: usize) -> Self {
        assert!(k >= 1, "generator degree must be positive");
        let n = top / k;
        let label = |j: usize| match j {
            0 => "1".to_string(),
            1 => "u".to_string(),
            j => format!("u^{j}"),
        };
        let basis = GradedBasis::new(top, (0..=n).map(|j| (label(j), j * k)).collect()).unwrap();
        let idx = |j: usize| basis.find(&label(j)).unwrap();
        let mut mu2 = Vec::new();
        for i in 0..=n {
            for j in 0..=n - i {
                mu2.push(((idx(i), idx(j)), Elem::single(&ring, idx(i + j), ring.one())));
            }
        }
        let unit = idx(0);
        Dga::new(ring, basis, vec![], mu2, unit).unwrap()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn unit_elem(&self) -> Elem<R::Elem> {
        Elem::single(&self.ring, self.unit, self.ring.one())
    }

    pub fn top(&self) -> usize {
        self.basis.top()
    }

    pub fn factors(&self) -> Option<&TensorFactors<R>> {
        self.factors.as_deref()
    }

    pub fn d_basis(&self, i: usize) -> &Elem<R::Elem> {
        &self.mu1[i]
    }

    /// `μ₁` on an element.
    pub fn d(&self, x: &Elem<R::Elem>) -> Elem<R::Elem> {
        let mut out = Elem::new();
        for (i, c) in x.iter() {
            out.add_scaled(&self.ring, c, &self.mu1[*i]);
        }
        out
    }

    /// `μ₂` on basis elements; products past the window are dropped and counted.
    pub fn mul_basis(&self, i: usize, j: usize, trunc: &mut Truncation) -> Elem<R::Elem> {
        if self.basis.degree(i) + self.basis.degree(j) > self.top() {
            trunc.hit();
            return Elem::new();
        }
        self.mu2.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn multiply(&self, a: &Elem<R::Elem>, b: &Elem<R::Elem>, trunc: &mut Truncation) -> Elem<R::Elem> {
        let ring = &self.ring;
        let mut out = Elem::new();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                let p = self.mul_basis(*i, *j, trunc);
                out.add_scaled(ring, &ring.mul(x, y), &p);
            }
        }
        out
    }

    pub fn render(&self, x: &Elem<R::Elem>) -> String {
        self.basis.render(&self.ring, x)
    }

    fn tuple(&self, idx: &[usize]) -> String {
        let labels: Vec<&str> = idx.iter().map(|&i| self.basis.label(i)).collect();
        format!("({})", labels.join(", "))
    }

    /// Exhaustive check of `μ₁² = 0`, Leibniz, associativity and the unit law.
    pub fn validate(&self) -> Report {
        let ring = &self.ring;
        let n = self.basis.len();
        let deg = |i: usize| self.basis.degree(i);
        let top = self.top();
        let mut rep = Report::new("dga");
        for a in 0..n {
            let dd = self.d(&self.mu1[a]);
            rep.checked += 1;
            if !dd.is_empty() {
                rep.fail("mu1-squared", self.tuple(&[a]), self.render(&dd));
            }
            let one = self.unit_elem();
            let x = Elem::single(ring, a, ring.one());
            let mut t = Truncation::default();
            let left = self.multiply(&one, &x, &mut t);
            let right = self.multiply(&x, &one, &mut t);
            rep.checked += 1;
            if left != x || right != x {
                rep.fail("unit", self.tuple(&[a]), format!("1·a = {}, a·1 = {}", self.render(&left), self.render(&right)));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if deg(a) + deg(b) > top {
                    continue;
                }
                let mut t = Truncation::default();
                let ea = Elem::single(ring, a, ring.one());
                let eb = Elem::single(ring, b, ring.one());
                let lhs = self.d(&self.mul_basis(a, b, &mut t));
                let mut rhs = self.multiply(&self.mu1[a], &eb, &mut t);
                let second = self.multiply(&ea, &self.mu1[b], &mut t);
                rhs.add_scaled(ring, &ring.signed(odd(deg(a) as i64), &ring.one()), &second);
                rep.checked += 1;
                if lhs != rhs {
                    let res = lhs.minus(ring, &rhs);
                    rep.fail("leibniz", self.tuple(&[a, b]), format!("residual {}", self.render(&res)));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if deg(a) + deg(b) + deg(c) > top {
                        continue;
                    }
                    let mut t = Truncation::default();
                    let ab = self.mul_basis(a, b, &mut t);
                    let bc = self.mul_basis(b, c, &mut t);
                    let lhs = self.multiply(&ab, &Elem::single(ring, c, ring.one()), &mut t);
                    let rhs = self.multiply(&Elem::single(ring, a, ring.one()), &bc, &mut t);
                    rep.checked += 1;
                    if lhs != rhs {
                        let res = lhs.minus(ring, &rhs);
                        rep.fail("associativity", self.tuple(&[a, b, c]), format!("residual {}", self.render(&res)));
                    }
                }
            }
        }
        rep
    }

    /// Parses `[[coefficient, label], …]` style data already split into pairs.
    pub fn element(&self, terms: &[(R::Elem, &str)]) -> Result<Elem<R::Elem>> {
        let mut out = Elem::new();
        for (c, l) in terms {
            out.add_term(&self.ring, self.basis.lookup(l)?, c.clone());
        }
        Ok(out)
    }

    /// Replaces one product structure constant; used to build deliberate violations.
    pub fn with_product(&self, i: usize, j: usize, value: Elem<R::Elem>) -> Self {
        let mut out = self.clone();
        out.mu2.insert((i, j), value);
        out
    }

    /// Structure constants as `(i, j, value)` triples in basis order.
    pub fn products(&self) -> Vec<(usize, usize, &Elem<R::Elem>)> {
        let mut v: Vec<_> = self.mu2.iter().map(|(&(i, j), x)| (i, j, x)).collect();
        v.sort_by_key(|&(i, j, _)| (i, j));
        v
    }
}

pub(crate) fn check_degree<E: Clone>(
    basis: &GradedBasis,
    x: &Elem<E>,
    expected: i64,
    what: impl Fn() -> String,
) -> Result<()> {
    match basis.homogeneous_degree(x) {
        Err(_) => Err(Error::Degree(format!("{} is not homogeneous", what()))),
        Ok(Some(d)) if d as i64 != expected => {
            Err(Error::Degree(format!("{} has degree {d}, expected {expected}", what())))
        }
        _ => Ok(()),
    }
}

/// The tensor DGA `A ⊗ B` with `(a⊗b)(c⊗d) = (−1)^{|b||c|} ac ⊗ bd`, truncated at `min` of the windows.
pub fn tensor_dga<R: Ring>(a: &Dga<R>, b: &Dga<R>) -> Dga<R> {
    let ring = a.ring.clone();
    let top = a.top().min(b.top());
    let mut pairs = Vec::new();
    let mut elems = Vec::new();
    for i in 0..a.basis.len() {
        for j in 0..b.basis.len() {
            let d = a.basis.degree(i) + b.basis.degree(j);
            if d <= top {
                pairs.push((i, j));
                elems.push((format!("{}⊗{}", a.basis.label(i), b.basis.label(j)), d));
            }
        }
    }
    let basis = GradedBasis::new(top, elems).unwrap();
    let pos: HashMap<(usize, usize), usize> = pairs
        .iter()
        .map(|&(i, j)| {
            let l = format!("{}⊗{}", a.basis.label(i), b.basis.label(j));
            ((i, j), basis.find(&l).unwrap())
        })
        .collect();
    let sorted_pairs: Vec<(usize, usize)> = {
        let mut v = vec![(0, 0); basis.len()];
        for (&p, &k) in &pos {
            v[k] = p;
        }
        v
    };
    let embed = |x: &Elem<R::Elem>, y: &Elem<R::Elem>, negate: bool| {
        let mut out = Elem::new();
        for (i, c) in x.iter() {
            for (j, e) in y.iter() {
                if let Some(&k) = pos.get(&(*i, *j)) {
                    out.add_term(&ring, k, ring.signed(negate, &ring.mul(c, e)));
                }
            }
        }
        out
    };
    let mut mu1 = Vec::new();
    let mut mu2 = Vec::new();
    for (k, &(i, j)) in sorted_pairs.iter().enumerate() {
        let ei = Elem::single(&ring, i, ring.one());
        let ej = Elem::single(&ring, j, ring.one());
        let mut d = embed(a.d_basis(i), &ej, false);
        d.add_lin(&ring, &embed(&ei, b.d_basis(j), odd(a.basis.degree(i) as i64)));
        mu1.push((k, d));
        for (l, &(p, q)) in sorted_pairs.iter().enumerate() {
            if basis.degree(k) + basis.degree(l) > top {
                continue;
            }
            let mut t = Truncation::default();
            let ap = a.mul_basis(i, p, &mut t);
            let bq = b.mul_basis(j, q, &mut t);
            let negate = odd((b.basis.degree(j) * a.basis.degree(p)) as i64);
            mu2.push(((k, l), embed(&ap, &bq, negate)));
        }
    }
    let unit = pos[&(a.unit(), b.unit())];
    let mut out = Dga::new(ring, basis, mu1, mu2, unit).unwrap();
    out.factors = Some(Box::new(TensorFactors { left: a.clone(), right: b.clone(), pairs: sorted_pairs }));
    out
}

/// `H₀ = A₀ / μ₁(A₁)` with its induced multiplication.
#[derive(Clone, Debug)]
pub struct DegreeZero<R: EuclideanRing> {
    pub ring: R,
    /// Basis positions of `A₀` inside the algebra basis.
    pub a0: Vec<usize>,
    pub group: HomologyGroup<R::Elem>,
    /// Set when the window cannot see `A₁`.
    pub warning: Option<String>,
}

impl<R: EuclideanRing> DegreeZero<R> {
    /// Coordinates of the class of a degree-0 element.
    pub fn project(&self, x: &Elem<R::Elem>) -> Vec<R::Elem> {
        let v: Vec<R::Elem> =
            self.a0.iter().map(|i| x.get(i).cloned().unwrap_or_else(|| self.ring.zero())).collect();
        self.group.coordinates(&self.ring, &v).expect("every degree-0 chain is a cycle")
    }

    /// An algebra element representing the given class.
    pub fn lift(&self, coords: &[R::Elem]) -> Elem<R::Elem> {
        let v = self.group.chain(&self.ring, coords);
        let mut out = Elem::new();
        for (i, c) in self.a0.iter().zip(v) {
            out.add_term(&self.ring, *i, c);
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.group.len()
    }
}

impl<R: EuclideanRing> Dga<R> {
    pub fn degree_zero_homology(&self) -> DegreeZero<R> {
        let ring = &self.ring;
        let a0: Vec<usize> = self.basis.in_degree(0).collect();
        let a1: Vec<usize> = self.basis.in_degree(1).collect();
        let mut d_in = Matrix::zeros(ring, a0.len(), a1.len());
        for (j, &c) in a1.iter().enumerate() {
            for (i, &r) in a0.iter().enumerate() {
                if let Some(x) = self.mu1[c].get(&r) {
                    d_in.set(i, j, x.clone());
                }
            }
        }
        let group = homology_at(ring, &d_in, &Matrix::zeros(ring, 0, a0.len())).unwrap();
        let warning = (self.top() < 1).then(|| "window too small to see μ₁(A₁) in degree 0".to_string());
        DegreeZero { ring: ring.clone(), a0, group, warning }
    }

    /// Checks that the projection to `H₀` is multiplicative on degree-0 basis pairs.
    pub fn check_projection(&self, h0: &DegreeZero<R>) -> Report {
        let mut rep = Report::new("degree-zero projection");
        let ring = &self.ring;
        for &a in &h0.a0 {
            for &b in &h0.a0 {
                let mut t = Truncation::default();
                let ab = self.mul_basis(a, b, &mut t);
                let pa = h0.lift(&h0.project(&Elem::single(ring, a, ring.one())));
                let pb = h0.lift(&h0.project(&Elem::single(ring, b, ring.one())));
                let prod = self.multiply(&pa, &pb, &mut t);
                rep.checked += 1;
                if !h0.group.same_class(ring, &h0.project(&ab), &h0.project(&prod)) {
                    rep.fail("projection", self.tuple(&[a, b]), "proj(ab) ≠ proj(a)proj(b)");
                }
            }
        }
        let unit = h0.project(&self.unit_elem());
        let one_class = h0.project(&h0.lift(&unit));
        if !h0.group.same_class(ring, &unit, &one_class) {
            rep.fail("projection", "unit", "unit class is not stable");
        }
        rep
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Integers, Laurent, Rationals};
    use num_bigint::BigInt;

    #[test]
    fn polynomial_algebra_is_valid() {
        let a = Dga::polynomial(Integers, 1, 6);
        let rep = a.validate();
        assert!(rep.is_ok(), "{rep}");
        let u = a.element(&[(BigInt::from(1), "u")]).unwrap();
        let mut t = Truncation::default();
        assert_eq!(a.render(&a.multiply(&u, &u, &mut t)), "u^2");
        assert!(t.clean());
    }

    #[test]
    fn scalars_are_valid() {
        let a = Dga::scalars(Laurent::new(Rationals), 12);
        assert!(a.validate().is_ok());
    }

    #[test]
    fn broken_associativity_cites_triple() {
        let a = Dga::polynomial(Integers, 1, 6);
        let (u, u2, u3) = (a.basis.lookup("u").unwrap(), a.basis.lookup("u^2").unwrap(), a.basis.lookup("u^3").unwrap());
        let bad = a.with_product(u, u2, Elem::single(&Integers, u3, BigInt::from(2)));
        let rep = bad.validate();
        assert!(rep.violations.iter().any(|v| v.identity == "associativity" && v.at == "(u, u, u)"));
    }

    #[test]
    fn truncated_products_are_counted() {
        let a = Dga::polynomial(Integers, 1, 2);
        let u2 = a.element(&[(BigInt::from(1), "u^2")]).unwrap();
        let mut t = Truncation::default();
        assert!(a.multiply(&u2, &u2, &mut t).is_empty());
        assert_eq!(t.events, 1);
    }

    #[test]
    fn degree_zero_of_polynomial_model() {
        let a = Dga::polynomial(Integers, 1, 4);
        let h0 = a.degree_zero_homology();
        assert_eq!(h0.rank(), 1);
        assert!(h0.warning.is_none());
        assert!(a.check_projection(&h0).is_ok());
    }
}
