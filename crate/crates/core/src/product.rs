//! The DG Chas–Sullivan product `CS = (−1)^{n(n−|τ|)} μ̃ ∘ Δ_! ∘ K` and its homology tables.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::cocycle::TransferCocycle;
use crate::complex::{Complex, EnrichedComplex, HomologyTable};
use crate::error::{Error, Result};
use crate::graded::Elem;
use crate::linalg::Matrix;
use crate::maps::{induced_map, kunneth_map, tensor_complex, transfer_map, ChainMap};
use crate::module::{sign, AInfMorphism};
use crate::report::Report;
use crate::ring::{EuclideanRing, Ring};

/// Everything the product needs: the base complex, its self-product, the diagonal transfer and `μ`.
#[derive(Clone, Debug)]
pub struct ProductDatum<R: Ring> {
    /// `C(X, m, F)` over `A`.
    pub base: EnrichedComplex<R>,
    /// `C(X × X, m^K, F ⊗ F)` over `A ⊗ A`.
    pub pair: EnrichedComplex<R>,
    /// `C(X, Δ_*m, F ⊗ F)` over `A ⊗ A`.
    pub diagonal: EnrichedComplex<R>,
    /// `C(X, m, Δ*(F ⊗ F))` over `A`.
    pub pulled: EnrichedComplex<R>,
    pub shriek: Arc<TransferCocycle<R>>,
    pub mu: Arc<AInfMorphism<R>>,
    pub n: usize,
    /// Module basis element whose product with the top point is the unit.
    pub unit: usize,
}

impl<R: Ring> ProductDatum<R> {
    pub fn new(
        base: EnrichedComplex<R>,
        pair: EnrichedComplex<R>,
        diagonal: EnrichedComplex<R>,
        pulled: EnrichedComplex<R>,
        shriek: Arc<TransferCocycle<R>>,
        mu: Arc<AInfMorphism<R>>,
        unit: usize,
    ) -> Result<Self> {
        let n = base.cocycle.crit.dim;
        if shriek.k != -(n as i64) {
            return Err(Error::Invalid(format!("diagonal transfer has shift {}, expected {}", shriek.k, -(n as i64))));
        }
        for rep in [shriek.validate(), mu.validate(mu.default_depth())] {
            if !rep.is_ok() {
                return Err(Error::Validation(rep.to_string()));
            }
        }
        if diagonal.complex != pulled.complex {
            return Err(Error::Mismatch("C(X, Δ_*m, F⊗F) and C(X, m, Δ*(F⊗F)) differ".into()));
        }
        if *mu.source != *pulled.module || *mu.target != *base.module {
            return Err(Error::Mismatch("μ must map Δ*(F⊗F) to F".into()));
        }
        Ok(ProductDatum { base, pair, diagonal, pulled, shriek, mu, n, unit })
    }

    /// Chain-level `μ̃ ∘ Δ_! ∘ K : C ⊗ C → C` of degree `−n`, without the Dold sign.
    pub fn chain_product(&self) -> Result<ChainProduct<R>> {
        let (k, _) = kunneth_map(&self.base, &self.base, &self.pair)?;
        let shriek = transfer_map(&self.shriek, &self.pair, &self.diagonal)?;
        let mu = induced_map(&self.mu, &self.pulled, &self.base)?;
        let map = mu.after(&shriek)?.after(&k)?;
        let (tensor, cells) = tensor_complex(&self.base.complex, &self.base.complex);
        debug_assert!(tensor == *map.source);
        Ok(ChainProduct { map, cells, n: self.n })
    }
}

/// The composite chain map and the factor cells of its source.
#[derive(Clone, Debug)]
pub struct ChainProduct<R: Ring> {
    pub map: ChainMap<R>,
    pub cells: Vec<Vec<((usize, usize), (usize, usize))>>,
    pub n: usize,
}

impl<R: Ring> ChainProduct<R> {
    /// `a ⊗ b` as a vector of `(C ⊗ C)_{k+l}`.
    pub fn tensor_vector(&self, k: usize, a: &[R::Elem], l: usize, b: &[R::Elem]) -> Option<Vec<R::Elem>> {
        let ring = self.map.ring();
        let cells = self.cells.get(k + l)?;
        Some(
            cells
                .iter()
                .map(|&((p, i), (q, j))| if p == k && q == l { ring.mul(&a[i], &b[j]) } else { ring.zero() })
                .collect(),
        )
    }

    /// Filtration law: `F_p ⊗ F_q` lands in `F_{p+q−n}`.
    pub fn check_filtration(&self) -> Report {
        let ring = self.map.ring();
        let (src, tgt) = (&self.map.source, &self.map.target);
        let mut rep = Report::new("product filtration");
        for (k, m) in self.map.blocks() {
            let t = (k as i64 + self.map.degree) as usize;
            for j in 0..m.cols() {
                rep.checked += 1;
                let bound = src.filtration[k][j] as i64 - self.n as i64;
                for i in 0..m.rows() {
                    if !ring.is_zero(m.get(i, j)) && tgt.filtration[t][i] as i64 > bound {
                        rep.fail("filtration", src.labels[k][j].clone(), format!("reaches {}", tgt.labels[t][i]));
                    }
                }
            }
        }
        rep
    }
}

/// A homology generator: degree, position within the degree, and representative label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub degree: usize,
    pub index: usize,
    pub label: String,
}

/// Structure constants of `CS` on generator pairs; classes are keyed by generator number.
#[derive(Clone, Debug)]
pub struct MultiplicationTable<R: Ring> {
    pub ring: R,
    pub n: usize,
    pub generators: Vec<Generator>,
    pub orders: Vec<Option<R::Elem>>,
    pub entries: BTreeMap<(usize, usize), Elem<R::Elem>>,
    /// Pairs whose product leaves the window.
    pub untested: Vec<(usize, usize)>,
}

/// Generators of every valid degree, numbered in (degree, position) order.
pub fn generators<R: Ring>(c: &Complex<R>, h: &HomologyTable<R::Elem>) -> (Vec<Generator>, Vec<Option<R::Elem>>) {
    let mut gens = Vec::new();
    let mut orders = Vec::new();
    for (k, g) in h.groups.iter().enumerate() {
        for (i, v) in g.generators.iter().enumerate() {
            gens.push(Generator { degree: k, index: i, label: c.render_chain(k, v) });
            orders.push(g.orders[i].clone());
        }
    }
    (gens, orders)
}

fn class_to_elem<R: Ring>(ring: &R, offset: usize, coords: &[R::Elem]) -> Elem<R::Elem> {
    coords.iter().enumerate().filter(|(_, c)| !ring.is_zero(c)).map(|(i, c)| (offset + i, c.clone())).collect()
}

impl<R: EuclideanRing> ChainProduct<R> {
    /// `CS(γ, τ)` for generators, with the Dold sign; `None` when out of window.
    pub fn product_of(&self, h: &HomologyTable<R::Elem>, gens: &[Generator], a: usize, b: usize) -> Result<Option<Elem<R::Elem>>> {
        let ring = self.map.ring();
        let (ga, gb) = (&gens[a], &gens[b]);
        let total = ga.degree + gb.degree;
        let out = total as i64 - self.n as i64;
        if out < 0 {
            return Ok(Some(Elem::new()));
        }
        let out = out as usize;
        if out > h.valid_top() || self.map.matrix(total).is_none() {
            return Ok(None);
        }
        let va = &h.groups[ga.degree].generators[ga.index];
        let vb = &h.groups[gb.degree].generators[gb.index];
        let Some(v) = self.tensor_vector(ga.degree, va, gb.degree, vb) else { return Ok(None) };
        let image = self.map.matrix(total).unwrap().apply(ring, &v);
        let target = &h.groups[out];
        if !target.is_cycle(ring, &image) {
            return Err(Error::Internal(format!("product of generators {a}, {b} is not a cycle")));
        }
        let coords = target.coordinates(ring, &image)?;
        let s = sign(ring, (self.n * (self.n + gb.degree)) as i64);
        let coords: Vec<R::Elem> = coords.iter().map(|c| ring.mul(&s, c)).collect();
        let offset = gens.iter().position(|g| g.degree == out).unwrap_or(0);
        Ok(Some(class_to_elem(ring, offset, &coords)))
    }

    pub fn table(&self, h: &HomologyTable<R::Elem>) -> Result<MultiplicationTable<R>> {
        let ring = self.map.ring().clone();
        let (gens, orders) = generators(&self.map.target, h);
        let mut entries = BTreeMap::new();
        let mut untested = Vec::new();
        for a in 0..gens.len() {
            for b in 0..gens.len() {
                match self.product_of(h, &gens, a, b)? {
                    Some(e) => {
                        entries.insert((a, b), e);
                    }
                    None => untested.push((a, b)),
                }
            }
        }
        Ok(MultiplicationTable { ring, n: self.n, generators: gens, orders, entries, untested })
    }
}

impl<R: EuclideanRing> MultiplicationTable<R> {
    /// Reduces torsion coordinates.
    pub fn normalize(&self, x: &Elem<R::Elem>) -> Elem<R::Elem> {
        let ring = &self.ring;
        x.iter()
            .filter_map(|(&i, c)| {
                let c = match &self.orders[i] {
                    Some(d) => ring.div_rem(c, d).1,
                    None => c.clone(),
                };
                (!ring.is_zero(&c)).then_some((i, c))
            })
            .collect()
    }

    pub fn same(&self, a: &Elem<R::Elem>, b: &Elem<R::Elem>) -> bool {
        self.normalize(&a.minus(&self.ring, b)).is_empty()
    }

    /// Bilinear extension; `None` when some pair is untested.
    pub fn multiply(&self, a: &Elem<R::Elem>, b: &Elem<R::Elem>) -> Option<Elem<R::Elem>> {
        let ring = &self.ring;
        let mut out = Elem::new();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                let e = self.entries.get(&(*i, *j))?;
                out.add_scaled(ring, &ring.mul(x, y), e);
            }
        }
        Some(out)
    }

    fn single(&self, i: usize) -> Elem<R::Elem> {
        Elem::single(&self.ring, i, self.ring.one())
    }

    pub fn degree_of(&self, x: &Elem<R::Elem>) -> Option<usize> {
        x.keys().next().map(|&i| self.generators[i].degree)
    }

    /// `|γ·τ| = |γ| + |τ| − n` for every nonzero entry.
    pub fn check_degrees(&self) -> Report {
        let mut rep = Report::new("product degrees");
        for (&(a, b), e) in &self.entries {
            rep.checked += 1;
            let expected = self.generators[a].degree + self.generators[b].degree;
            if e.keys().any(|&i| self.generators[i].degree + self.n != expected) {
                rep.fail("degree law", self.pair_label(a, b), "product lands in the wrong degree");
            }
        }
        rep
    }

    pub fn pair_label(&self, a: usize, b: usize) -> String {
        format!("({}, {})", self.generators[a].label, self.generators[b].label)
    }

    /// `γτ = (−1)^{(n−|γ|)(n−|τ|)} τγ`.
    pub fn check_commutativity(&self) -> Report {
        let ring = &self.ring;
        let n = self.n as i64;
        let mut rep = Report::new("commutativity");
        for (&(a, b), e) in &self.entries {
            let Some(f) = self.entries.get(&(b, a)) else {
                rep.untested += 1;
                continue;
            };
            rep.checked += 1;
            let s = (n - self.generators[a].degree as i64) * (n - self.generators[b].degree as i64);
            if !self.same(e, &f.scaled(ring, &sign(ring, s))) {
                rep.fail("signed commutativity", self.pair_label(a, b), "γτ ≠ ±τγ");
            }
        }
        rep
    }

    /// `(γτ)δ = γ(τδ)` on all generator triples with both sides in window.
    pub fn check_associativity(&self) -> Report {
        let mut rep = Report::new("associativity");
        let g = self.generators.len();
        for a in 0..g {
            for b in 0..g {
                for c in 0..g {
                    let left = self.entries.get(&(a, b)).and_then(|ab| self.multiply(ab, &self.single(c)));
                    let right = self.entries.get(&(b, c)).and_then(|bc| self.multiply(&self.single(a), bc));
                    let (Some(l), Some(r)) = (left, right) else {
                        rep.untested += 1;
                        continue;
                    };
                    rep.checked += 1;
                    if !self.same(&l, &r) {
                        rep.fail(
                            "associativity",
                            format!("({}, {}, {})", self.generators[a].label, self.generators[b].label, self.generators[c].label),
                            "(γτ)δ ≠ γ(τδ)",
                        );
                    }
                }
            }
        }
        rep
    }

    /// Two-sided neutrality of `u` on every generator.
    pub fn check_unit(&self, u: &Elem<R::Elem>) -> Report {
        let mut rep = Report::new("unit");
        for i in 0..self.generators.len() {
            let g = self.single(i);
            for (side, v) in [("left", self.multiply(u, &g)), ("right", self.multiply(&g, u))] {
                match v {
                    None => rep.untested += 1,
                    Some(v) => {
                        rep.checked += 1;
                        if !self.same(&v, &g) {
                            rep.fail(format!("{side} neutrality"), self.generators[i].label.clone(), "u·γ ≠ γ");
                        }
                    }
                }
            }
        }
        rep
    }

    pub fn render_class(&self, x: &Elem<R::Elem>) -> String {
        let ring = &self.ring;
        let x = self.normalize(x);
        if x.is_empty() {
            return "0".into();
        }
        x.iter()
            .map(|(&i, c)| {
                let l = &self.generators[i].label;
                if ring.is_one(c) {
                    format!("⟨{l}⟩")
                } else {
                    format!("({})⟨{l}⟩", ring.render(c))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Rows `(left, right, product)` sorted by generator order.
    pub fn rows(&self) -> Vec<(String, String, String)> {
        let mut rows = Vec::new();
        for a in 0..self.generators.len() {
            for b in 0..self.generators.len() {
                let value = match self.entries.get(&(a, b)) {
                    Some(e) => self.render_class(e),
                    None => "untested".into(),
                };
                rows.push((self.generators[a].label.clone(), self.generators[b].label.clone(), value));
            }
        }
        rows
    }
}

impl<R: EuclideanRing> ProductDatum<R> {
    /// Class of `unit ⊗ x_max`, in generator coordinates.
    pub fn unit_class(&self, h: &HomologyTable<R::Elem>, gens: &[Generator]) -> Result<Elem<R::Elem>> {
        let ring = self.base.ring();
        let crit = &self.base.cocycle.crit;
        let tops: Vec<usize> = (0..crit.len()).filter(|&x| crit.index(x) == self.n).collect();
        let [x_max] = tops[..] else {
            return Err(Error::Refused(format!("unit needs a unique maximum, found {} points of index {}", tops.len(), self.n)));
        };
        let (k, i) = self
            .base
            .position(self.unit, x_max)
            .ok_or_else(|| Error::Degree("unit generator lies outside the window".into()))?;
        let group = h.degree(k).ok_or_else(|| Error::Degree("unit degree outside the valid window".into()))?;
        let mut v = vec![ring.zero(); self.base.complex.rank(k)];
        v[i] = ring.one();
        if !group.is_cycle(ring, &v) {
            return Err(Error::Invalid("unit ⊗ x_max is not a cycle".into()));
        }
        let coords = group.coordinates(ring, &v)?;
        let offset = gens.iter().position(|g| g.degree == k).unwrap_or(0);
        Ok(class_to_elem(ring, offset, &coords))
    }
}

/// Matrix of left multiplication by a class, for inspection.
pub fn left_multiplication<R: EuclideanRing>(t: &MultiplicationTable<R>, u: &Elem<R::Elem>) -> Option<Matrix<R::Elem>> {
    let g = t.generators.len();
    let cols = (0..g)
        .map(|i| {
            let v = t.multiply(u, &Elem::single(&t.ring, i, t.ring.one()))?;
            Some((0..g).map(|j| v.get(&j).cloned().unwrap_or_else(|| t.ring.zero())).collect())
        })
        .collect::<Option<Vec<Vec<R::Elem>>>>()?;
    Some(Matrix::from_columns(&t.ring, g, &cols))
}
