//! Critical point sets, twisting cocycles, transfer cocycles and their homotopies.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::dga::{check_degree, Dga};
use crate::error::{Error, Result};
use crate::graded::{Elem, Truncation};
use crate::module::{sign, AlgebraMorphism};
use crate::report::Report;
use crate::ring::Ring;

/// Critical points with Morse indices, optionally a product of two sets.
#[derive(Clone, Debug, PartialEq)]
pub struct CritSet {
    pub dim: usize,
    labels: Vec<String>,
    index: Vec<usize>,
    factors: Option<Box<(CritSet, CritSet)>>,
}

impl CritSet {
    pub fn new(dim: usize, points: Vec<(String, usize)>) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, (label, ind)) in points.iter().enumerate() {
            if *ind > dim {
                return Err(Error::Invalid(format!("critical point {label} has index {ind} > dimension {dim}")));
            }
            if seen.insert(label.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate critical point {label}")));
            }
        }
        let (labels, index) = points.into_iter().unzip();
        Ok(CritSet { dim, labels, index, factors: None })
    }

    /// `X × Y` with points `(x,y)` at position `i·|Y| + j`.
    pub fn product(a: &CritSet, b: &CritSet) -> Self {
        let mut labels = Vec::new();
        let mut index = Vec::new();
        for i in 0..a.len() {
            for j in 0..b.len() {
                labels.push(format!("({},{})", a.labels[i], b.labels[j]));
                index.push(a.index[i] + b.index[j]);
            }
        }
        CritSet { dim: a.dim + b.dim, labels, index, factors: Some(Box::new((a.clone(), b.clone()))) }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index(&self, x: usize) -> usize {
        self.index[x]
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn lookup(&self, label: &str) -> Result<usize> {
        self.find(label).ok_or_else(|| Error::Unresolved(format!("critical point {label}")))
    }

    pub fn factors(&self) -> Option<&(CritSet, CritSet)> {
        self.factors.as_deref()
    }

    /// Position of `(x, y)` in a product set.
    pub fn pair(&self, x: usize, y: usize) -> usize {
        let (_, b) = self.factors().expect("not a product");
        x * b.len() + y
    }

    /// Factor positions of a product point.
    pub fn split(&self, p: usize) -> (usize, usize) {
        let (_, b) = self.factors().expect("not a product");
        (p / b.len(), p % b.len())
    }

    /// Points in increasing index, ties by declaration order.
    pub fn by_index(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.len()).collect();
        v.sort_by_key(|&x| self.index[x]);
        v
    }

    pub fn points(&self) -> impl Iterator<Item = (&str, usize)> {
        self.labels.iter().map(String::as_str).zip(self.index.iter().copied())
    }
}

type Entries<E> = BTreeMap<(usize, usize), Elem<E>>;

fn pair_label(a: &CritSet, x: usize, b: &CritSet, y: usize) -> String {
    format!("({}, {})", a.label(x), b.label(y))
}

/// Builds an entry table, checking each entry has the prescribed degree.
fn collect_entries<R: Ring>(
    dga: &Dga<R>,
    rows: &CritSet,
    cols: &CritSet,
    entries: Vec<((usize, usize), Elem<R::Elem>)>,
    degree: impl Fn(usize, usize) -> i64,
    name: &str,
) -> Result<Entries<R::Elem>> {
    let mut out = BTreeMap::new();
    for ((x, y), v) in entries {
        if x >= rows.len() || y >= cols.len() {
            return Err(Error::Invalid(format!("{name} entry refers to a missing critical point")));
        }
        if v.is_empty() {
            continue;
        }
        let d = degree(x, y);
        let what = || format!("{name}{}", pair_label(rows, x, cols, y));
        if d < 0 {
            return Err(Error::Degree(format!("{} must vanish: its degree would be {d}", what())));
        }
        if d > dga.top() as i64 {
            return Err(Error::Degree(format!("{} has degree {d} outside the window", what())));
        }
        check_degree(&dga.basis, &v, d, what)?;
        out.insert((x, y), v);
    }
    Ok(out)
}

/// A twisting cocycle `m_{x,y} ∈ A_{|x|−|y|−1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistingCocycle<R: Ring> {
    pub dga: Arc<Dga<R>>,
    pub crit: Arc<CritSet>,
    entries: Entries<R::Elem>,
}

impl<R: Ring> TwistingCocycle<R> {
    pub fn new(dga: Arc<Dga<R>>, crit: Arc<CritSet>, entries: Vec<((usize, usize), Elem<R::Elem>)>) -> Result<Self> {
        let deg = |x: usize, y: usize| crit.index(x) as i64 - crit.index(y) as i64 - 1;
        let entries = collect_entries(&dga, &crit, &crit, entries, deg, "m")?;
        Ok(TwistingCocycle { dga, crit, entries })
    }

    pub fn ring(&self) -> &R {
        &self.dga.ring
    }

    pub fn entry(&self, x: usize, y: usize) -> Option<&Elem<R::Elem>> {
        self.entries.get(&(x, y))
    }

    /// Nonzero `m_{x,y}` for fixed `x`.
    pub fn row(&self, x: usize) -> impl Iterator<Item = (usize, &Elem<R::Elem>)> {
        self.entries.range((x, 0)..(x + 1, 0)).map(|(&(_, y), v)| (y, v))
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &Elem<R::Elem>)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    /// Replaces one entry without checks.
    pub fn with_entry(&self, x: usize, y: usize, v: Elem<R::Elem>) -> Self {
        let mut out = self.clone();
        if v.is_empty() {
            out.entries.remove(&(x, y));
        } else {
            out.entries.insert((x, y), v);
        }
        out
    }

    pub fn degree(&self, x: usize, y: usize) -> i64 {
        self.crit.index(x) as i64 - self.crit.index(y) as i64 - 1
    }

    /// `∂m_{x,y} = Σ_z (−1)^{|x|−|z|} m_{x,z} m_{z,y}` for every pair.
    pub fn validate(&self) -> Report {
        let ring = self.ring();
        let c = &self.crit;
        let mut rep = Report::new("twisting cocycle");
        for x in 0..c.len() {
            for y in 0..c.len() {
                let d = self.degree(x, y) - 1;
                if d < 0 {
                    continue;
                }
                let mut t = Truncation::default();
                let mut res = self.entry(x, y).map(|m| self.dga.d(m)).unwrap_or_default();
                for (z, mxz) in self.row(x) {
                    if let Some(mzy) = self.entry(z, y) {
                        let p = self.dga.multiply(mxz, mzy, &mut t);
                        let s = c.index(x) as i64 - c.index(z) as i64 + 1;
                        res.add_scaled(ring, &sign(ring, s), &p);
                    }
                }
                if d > self.dga.top() as i64 || !t.clean() {
                    rep.untested += 1;
                    continue;
                }
                rep.checked += 1;
                if !res.is_empty() {
                    rep.fail("maurer-cartan", pair_label(c, x, c, y), format!("residual {}", self.dga.render(&res)));
                }
            }
        }
        rep
    }

    pub fn render_entries(&self) -> Vec<(String, String, String)> {
        self.entries()
            .map(|((x, y), v)| (self.crit.label(x).to_string(), self.crit.label(y).to_string(), self.dga.render(v)))
            .collect()
    }
}

/// `g_* m`: apply an algebra morphism to every entry.
pub fn pushforward<R: Ring>(m: &TwistingCocycle<R>, g: &AlgebraMorphism<R>) -> Result<TwistingCocycle<R>> {
    if *g.source != *m.dga {
        return Err(Error::Mismatch("pushforward along a morphism from a different algebra".into()));
    }
    let entries = m.entries().map(|(k, v)| (k, g.apply(v))).collect();
    TwistingCocycle::new(g.target.clone(), m.crit.clone(), entries)
}

/// The Künneth cocycle on `X × Y` over `A ⊗ B`.
pub fn kunneth<R: Ring>(
    m: &TwistingCocycle<R>,
    n: &TwistingCocycle<R>,
    ab: Arc<Dga<R>>,
) -> Result<TwistingCocycle<R>> {
    for (name, c) in [("first", m), ("second", n)] {
        let rep = c.validate();
        if !rep.is_ok() {
            return Err(Error::Validation(format!("{name} Künneth factor: {rep}")));
        }
    }
    let ring = m.ring().clone();
    let fac = ab.factors().ok_or_else(|| Error::Invalid("Künneth cocycle needs a tensor algebra".into()))?;
    if fac.left != *m.dga || fac.right != *n.dga {
        return Err(Error::Mismatch("tensor algebra factors differ from the cocycle algebras".into()));
    }
    let (x_set, y_set) = (&m.crit, &n.crit);
    let prod = Arc::new(CritSet::product(x_set, y_set));
    let one_a = m.dga.unit_elem();
    let one_b = n.dga.unit_elem();
    let mut entries = Vec::new();
    for x in 0..x_set.len() {
        for y in 0..y_set.len() {
            for (x2, v) in m.row(x) {
                entries.push(((prod.pair(x, y), prod.pair(x2, y)), fac.embed(&ring, v, &one_b)));
            }
            for (y2, v) in n.row(y) {
                let s = x_set.index(x) as i64 * (y_set.index(y) as i64 - y_set.index(y2) as i64);
                let e = fac.embed(&ring, &one_a, v).scaled(&ring, &sign(&ring, s));
                entries.push(((prod.pair(x, y), prod.pair(x, y2)), e));
            }
        }
    }
    let out = TwistingCocycle::new(ab, prod, entries)?;
    let rep = out.validate();
    if !rep.is_ok() {
        return Err(Error::Internal(format!("Künneth cocycle fails Maurer–Cartan: {rep}")));
    }
    Ok(out)
}

/// A transfer cocycle `τ_{x,y'} ∈ A_{|x|−|y'|+k}` from `(X, m⁰)` to `(Y, m¹)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransferCocycle<R: Ring> {
    pub source: Arc<TwistingCocycle<R>>,
    pub target: Arc<TwistingCocycle<R>>,
    pub k: i64,
    entries: Entries<R::Elem>,
}

impl<R: Ring> TransferCocycle<R> {
    pub fn new(
        source: Arc<TwistingCocycle<R>>,
        target: Arc<TwistingCocycle<R>>,
        k: i64,
        entries: Vec<((usize, usize), Elem<R::Elem>)>,
    ) -> Result<Self> {
        if source.dga != target.dga {
            return Err(Error::Mismatch("transfer between cocycles over different algebras".into()));
        }
        let (x, y) = (&source.crit, &target.crit);
        let deg = |a: usize, b: usize| x.index(a) as i64 - y.index(b) as i64 + k;
        let entries = collect_entries(&source.dga, x, y, entries, deg, "τ")?;
        Ok(TransferCocycle { source, target, k, entries })
    }

    /// `τ_{x,x} = 1` from a cocycle to itself.
    pub fn identity(m: Arc<TwistingCocycle<R>>) -> Self {
        let unit = m.dga.unit_elem();
        let entries = (0..m.crit.len()).map(|x| ((x, x), unit.clone())).collect();
        TransferCocycle::new(m.clone(), m, 0, entries).unwrap()
    }

    pub fn ring(&self) -> &R {
        self.source.ring()
    }

    pub fn dga(&self) -> &Arc<Dga<R>> {
        &self.source.dga
    }

    pub fn entry(&self, x: usize, y: usize) -> Option<&Elem<R::Elem>> {
        self.entries.get(&(x, y))
    }

    pub fn row(&self, x: usize) -> impl Iterator<Item = (usize, &Elem<R::Elem>)> {
        self.entries.range((x, 0)..(x + 1, 0)).map(|(&(_, y), v)| (y, v))
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &Elem<R::Elem>)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    pub fn with_entry(&self, x: usize, y: usize, v: Elem<R::Elem>) -> Self {
        let mut out = self.clone();
        if v.is_empty() {
            out.entries.remove(&(x, y));
        } else {
            out.entries.insert((x, y), v);
        }
        out
    }

    pub fn degree(&self, x: usize, y: usize) -> i64 {
        self.source.crit.index(x) as i64 - self.target.crit.index(y) as i64 + self.k
    }

    /// `∂τ_{x,y'} = Σ_z m⁰_{x,z} τ_{z,y'} − Σ_{w'} (−1)^{|x|−|w'|+k} τ_{x,w'} m¹_{w',y'}`.
    pub fn validate(&self) -> Report {
        let ring = self.ring();
        let (m0, m1) = (&self.source, &self.target);
        let (xs, ys) = (&m0.crit, &m1.crit);
        let a = self.dga();
        let mut rep = Report::new("transfer cocycle");
        for x in 0..xs.len() {
            for y in 0..ys.len() {
                let d = self.degree(x, y) - 1;
                if d < 0 {
                    continue;
                }
                let mut t = Truncation::default();
                let mut res = self.entry(x, y).map(|v| a.d(v)).unwrap_or_default();
                for (z, m) in m0.row(x) {
                    if let Some(tz) = self.entry(z, y) {
                        res = res.minus(ring, &a.multiply(m, tz, &mut t));
                    }
                }
                for (w, tw) in self.row(x) {
                    if let Some(m) = m1.entry(w, y) {
                        let s = xs.index(x) as i64 - ys.index(w) as i64 + self.k;
                        res.add_scaled(ring, &sign(ring, s), &a.multiply(tw, m, &mut t));
                    }
                }
                if d > a.top() as i64 || !t.clean() {
                    rep.untested += 1;
                    continue;
                }
                rep.checked += 1;
                if !res.is_empty() {
                    rep.fail("transfer equation", pair_label(xs, x, ys, y), format!("residual {}", a.render(&res)));
                }
            }
        }
        rep
    }
}

/// A homotopy `h_{x,y'} ∈ A_{|x|−|y'|+k+1}` between two transfer cocycles.
#[derive(Clone, Debug, PartialEq)]
pub struct HomotopyCocycle<R: Ring> {
    pub from: Arc<TransferCocycle<R>>,
    pub to: Arc<TransferCocycle<R>>,
    entries: Entries<R::Elem>,
}

impl<R: Ring> HomotopyCocycle<R> {
    pub fn new(
        from: Arc<TransferCocycle<R>>,
        to: Arc<TransferCocycle<R>>,
        entries: Vec<((usize, usize), Elem<R::Elem>)>,
    ) -> Result<Self> {
        if from.source != to.source || from.target != to.target || from.k != to.k {
            return Err(Error::Mismatch("homotopy between transfers with different ends".into()));
        }
        let (x, y, k) = (&from.source.crit, &from.target.crit, from.k);
        let deg = |a: usize, b: usize| x.index(a) as i64 - y.index(b) as i64 + k + 1;
        let entries = collect_entries(from.dga(), x, y, entries, deg, "h")?;
        Ok(HomotopyCocycle { from, to, entries })
    }

    pub fn entry(&self, x: usize, y: usize) -> Option<&Elem<R::Elem>> {
        self.entries.get(&(x, y))
    }

    pub fn row(&self, x: usize) -> impl Iterator<Item = (usize, &Elem<R::Elem>)> {
        self.entries.range((x, 0)..(x + 1, 0)).map(|(&(_, y), v)| (y, v))
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &Elem<R::Elem>)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    /// `μ₁h = τ − τ' + Σ_z (−1)^{|x|−|z|} m⁰h + Σ_{w'} (−1)^{|x|−|w'|+k} h m¹`.
    pub fn validate(&self) -> Report {
        let ring = self.from.ring();
        let (m0, m1) = (&self.from.source, &self.from.target);
        let (xs, ys) = (&m0.crit, &m1.crit);
        let k = self.from.k;
        let a = self.from.dga();
        let mut rep = Report::new("homotopy");
        for x in 0..xs.len() {
            for y in 0..ys.len() {
                let d = xs.index(x) as i64 - ys.index(y) as i64 + k;
                if d < 0 {
                    continue;
                }
                let mut t = Truncation::default();
                let mut res = self.entry(x, y).map(|v| a.d(v)).unwrap_or_default();
                if let Some(v) = self.from.entry(x, y) {
                    res = res.minus(ring, v);
                }
                if let Some(v) = self.to.entry(x, y) {
                    res.add_lin(ring, v);
                }
                for (z, m) in m0.row(x) {
                    if let Some(h) = self.entry(z, y) {
                        let s = xs.index(x) as i64 - xs.index(z) as i64 + 1;
                        res.add_scaled(ring, &sign(ring, s), &a.multiply(m, h, &mut t));
                    }
                }
                for (w, h) in self.row(x) {
                    if let Some(m) = m1.entry(w, y) {
                        let s = xs.index(x) as i64 - ys.index(w) as i64 + k + 1;
                        res.add_scaled(ring, &sign(ring, s), &a.multiply(h, m, &mut t));
                    }
                }
                if d > a.top() as i64 || !t.clean() {
                    rep.untested += 1;
                    continue;
                }
                rep.checked += 1;
                if !res.is_empty() {
                    rep.fail("homotopy equation", pair_label(xs, x, ys, y), format!("residual {}", a.render(&res)));
                }
            }
        }
        rep
    }
}

/// Composite transfer `τ'' = τ·τ'` with degree `k + k'`.
pub fn compose_transfers<R: Ring>(
    first: &TransferCocycle<R>,
    second: &TransferCocycle<R>,
) -> Result<TransferCocycle<R>> {
    if first.target != second.source {
        return Err(Error::Mismatch("transfers do not compose".into()));
    }
    let ring = first.ring();
    let a = first.dga();
    let mut t = Truncation::default();
    let mut acc: BTreeMap<(usize, usize), Elem<R::Elem>> = BTreeMap::new();
    for ((x, z), u) in first.entries() {
        for (y, v) in second.row(z) {
            let p = a.multiply(u, v, &mut t);
            acc.entry((x, y)).or_default().add_lin(ring, &p);
        }
    }
    if !t.clean() {
        return Err(Error::Degree("composite transfer leaves the window".into()));
    }
    TransferCocycle::new(first.source.clone(), second.target.clone(), first.k + second.k, acc.into_iter().collect())
}
