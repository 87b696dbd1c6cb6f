//! Finite chain complexes and the enriched Morse complex `F ⊗ ℤCrit(f)`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::cocycle::TwistingCocycle;
use crate::error::{Error, Result};
use crate::graded::Truncation;
use crate::linalg::{homology_at, HomologyGroup, Matrix};
use crate::module::CoefficientModule;
use crate::report::Report;
use crate::ring::{EuclideanRing, Ring};
use crate::words::{differential, Chain};

/// A free complex in degrees `0..=top` with `d[k] : C_k → C_{k−1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Complex<R: Ring> {
    pub ring: R,
    pub labels: Vec<Vec<String>>,
    /// Filtration level of each generator.
    pub filtration: Vec<Vec<usize>>,
    pub d: Vec<Matrix<R::Elem>>,
}

impl<R: Ring> Complex<R> {
    pub fn new(ring: R, labels: Vec<Vec<String>>, filtration: Vec<Vec<usize>>, d: Vec<Matrix<R::Elem>>) -> Result<Self> {
        for (k, m) in d.iter().enumerate() {
            let rows = if k == 0 { 0 } else { labels[k - 1].len() };
            if m.rows() != rows || m.cols() != labels[k].len() {
                return Err(Error::Invalid(format!("differential out of degree {k} has the wrong shape")));
            }
        }
        Ok(Complex { ring, labels, filtration, d })
    }

    pub fn top(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn rank(&self, k: usize) -> usize {
        self.labels.get(k).map_or(0, Vec::len)
    }

    /// Largest degree whose homology the window determines.
    pub fn valid_top(&self) -> usize {
        self.top().saturating_sub(1)
    }

    /// `d ∘ d = 0` in every degree.
    pub fn check_d_squared(&self) -> Report {
        let mut rep = Report::new("d²");
        for k in 2..=self.top() {
            rep.checked += 1;
            let dd = self.d[k - 1].mul(&self.ring, &self.d[k]);
            if !dd.is_zero(&self.ring) {
                let j = (0..dd.cols()).find(|&j| dd.column(j).iter().any(|x| !self.ring.is_zero(x))).unwrap();
                rep.fail("d squared", format!("degree {k}, generator {}", self.labels[k][j]), "d² ≠ 0");
            }
        }
        rep
    }

    /// The same complex with every coefficient sent through a ring map.
    pub fn map_ring<S: Ring>(&self, ring: S, f: impl Fn(&R::Elem) -> S::Elem) -> Complex<S> {
        let d = self.d.iter().map(|m| m.map(&f)).collect();
        Complex { ring, labels: self.labels.clone(), filtration: self.filtration.clone(), d }
    }

    pub fn render_chain(&self, k: usize, v: &[R::Elem]) -> String {
        let terms: Vec<String> = v
            .iter()
            .zip(&self.labels[k])
            .filter(|(c, _)| !self.ring.is_zero(c))
            .map(|(c, l)| {
                if self.ring.is_one(c) {
                    format!("[{l}]")
                } else {
                    format!("({})[{l}]", self.ring.render(c))
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

impl<R: EuclideanRing> Complex<R> {
    /// Homology in degrees `0..=valid_top()`.
    pub fn homology(&self) -> Result<HomologyTable<R::Elem>> {
        let groups = (0..=self.valid_top())
            .map(|k| homology_at(&self.ring, &self.d[k + 1], &self.d[k]).map_err(|_| Error::NotAComplex(k)))
            .collect::<Result<Vec<_>>>()?;
        Ok(HomologyTable { groups })
    }
}

#[derive(Clone, Debug)]
pub struct HomologyTable<E> {
    pub groups: Vec<HomologyGroup<E>>,
}

impl<E: Clone + PartialEq> HomologyTable<E> {
    pub fn degree(&self, k: usize) -> Option<&HomologyGroup<E>> {
        self.groups.get(k)
    }

    pub fn valid_top(&self) -> usize {
        self.groups.len().saturating_sub(1)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.groups.iter().map(HomologyGroup::free_rank).collect()
    }
}

/// `C(X, m, F)` together with the data it was built from.
#[derive(Clone, Debug, PartialEq)]
pub struct EnrichedComplex<R: Ring> {
    pub module: Arc<CoefficientModule<R>>,
    pub cocycle: Arc<TwistingCocycle<R>>,
    pub complex: Complex<R>,
    cells: Vec<Vec<(usize, usize)>>,
    position: HashMap<(usize, usize), (usize, usize)>,
    /// Products that left the window while building `∂`.
    pub truncation: Truncation,
}

impl<R: Ring> EnrichedComplex<R> {
    /// Generators `α ⊗ x` in total degrees `0..=N`, `N` the module window.
    pub fn build(module: Arc<CoefficientModule<R>>, cocycle: Arc<TwistingCocycle<R>>) -> Result<Self> {
        if module.dga != cocycle.dga {
            return Err(Error::Mismatch("module and cocycle live over different algebras".into()));
        }
        let ring = module.ring().clone();
        let top = module.top();
        let crit = &cocycle.crit;
        let mut cells = vec![Vec::new(); top + 1];
        for x in 0..crit.len() {
            for a in 0..module.basis.len() {
                let k = module.basis.degree(a) + crit.index(x);
                if k <= top {
                    cells[k].push((a, x));
                }
            }
        }
        let position: HashMap<(usize, usize), (usize, usize)> = cells
            .iter()
            .enumerate()
            .flat_map(|(k, v)| v.iter().enumerate().map(move |(i, &c)| (c, (k, i))))
            .collect();
        let labels = cells
            .iter()
            .map(|v| v.iter().map(|&(a, x)| format!("{}⊗{}", module.basis.label(a), crit.label(x))).collect())
            .collect();
        let filtration = cells.iter().map(|v| v.iter().map(|&(_, x)| crit.index(x)).collect()).collect();
        let mut trunc = Truncation::default();
        let mut d = vec![Matrix::zeros(&ring, 0, cells[0].len())];
        for k in 1..=top {
            let columns: Vec<(Vec<R::Elem>, usize)> = cells[k]
                .iter()
                .map(|&cell| {
                    let mut t = Truncation::default();
                    let chain = Chain::single(&ring, cell, ring.one());
                    let image = differential(&module, &cocycle, &chain, &mut t);
                    (to_column(&ring, &position, k - 1, cells[k - 1].len(), &image), t.events)
                })
                .collect();
            trunc.events += columns.iter().map(|c| c.1).sum::<usize>();
            let cols: Vec<Vec<R::Elem>> = columns.into_iter().map(|c| c.0).collect();
            d.push(Matrix::from_columns(&ring, cells[k - 1].len(), &cols));
        }
        let complex = Complex::new(ring, labels, filtration, d)?;
        Ok(EnrichedComplex { module, cocycle, complex, cells, position, truncation: trunc })
    }

    pub fn ring(&self) -> &R {
        &self.complex.ring
    }

    pub fn top(&self) -> usize {
        self.complex.top()
    }

    pub fn cells(&self, k: usize) -> &[(usize, usize)] {
        &self.cells[k]
    }

    /// Degree and position of `α ⊗ x`, when inside the window.
    pub fn position(&self, a: usize, x: usize) -> Option<(usize, usize)> {
        self.position.get(&(a, x)).copied()
    }

    pub(crate) fn positions(&self) -> &HashMap<(usize, usize), (usize, usize)> {
        &self.position
    }

    /// Chain of a basis vector.
    pub fn chain(&self, k: usize, v: &[R::Elem]) -> Chain<R::Elem> {
        let ring = self.ring();
        v.iter()
            .zip(&self.cells[k])
            .filter(|(c, _)| !ring.is_zero(c))
            .map(|(c, &cell)| (cell, c.clone()))
            .collect()
    }

    /// Coordinate vector in degree `k`; terms outside degree `k` are an error.
    pub fn vector(&self, k: usize, c: &Chain<R::Elem>) -> Result<Vec<R::Elem>> {
        let ring = self.ring();
        let mut v = vec![ring.zero(); self.cells[k].len()];
        for (cell, e) in c.iter() {
            match self.position.get(cell) {
                Some(&(j, i)) if j == k => v[i] = ring.add(&v[i], e),
                _ => return Err(Error::Degree(format!("chain term outside degree {k}"))),
            }
        }
        Ok(v)
    }

    /// Vector of `α ⊗ x` given by labels.
    pub fn generator(&self, alpha: &str, x: &str) -> Result<(usize, Vec<R::Elem>)> {
        let a = self.module.basis.lookup(alpha)?;
        let p = self.cocycle.crit.lookup(x)?;
        let (k, i) = self.position(a, p).ok_or_else(|| Error::Degree(format!("{alpha}⊗{x} lies outside the window")))?;
        let ring = self.ring();
        let mut v = vec![ring.zero(); self.cells[k].len()];
        v[i] = ring.one();
        Ok((k, v))
    }
}

pub(crate) fn to_column<E: Clone, R: Ring<Elem = E>>(
    ring: &R,
    position: &HashMap<(usize, usize), (usize, usize)>,
    k: usize,
    len: usize,
    c: &Chain<E>,
) -> Vec<E> {
    let mut v = vec![ring.zero(); len];
    for (cell, e) in c.iter() {
        if let Some(&(j, i)) = position.get(cell) {
            if j == k {
                v[i] = ring.add(&v[i], e);
            }
        }
    }
    v
}
