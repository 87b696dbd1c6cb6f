//! Chain maps between enriched complexes: transfers, homotopies, induced maps,
//! the Künneth isomorphism and the factor switch.

use std::sync::Arc;

use serde::Serialize;

use crate::cocycle::{HomotopyCocycle, TransferCocycle};
use crate::complex::{to_column, Complex, EnrichedComplex, HomologyTable};
use crate::error::{Error, Result};
use crate::graded::Truncation;
use crate::linalg::{kernel, smith_normal_form, Matrix};
use crate::module::{sign, AInfMorphism};
use crate::report::Report;
use crate::ring::{odd, EuclideanRing, Ring};
use crate::words::{collapse_nu, collapse_phi, expand, sandwich, words_of, Chain};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Identity,
    Transfer,
    Induced,
    Homotopy,
    Kunneth,
    KunnethInverse,
    Switch,
    Composite,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = serde_json::to_value(self).expect("unit variants serialize");
        f.write_str(s.as_str().unwrap_or_default())
    }
}

/// What `check_contract` verifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Contract {
    /// `∂f = f∂`.
    Commutes,
    /// `∂f = (−1)^{deg} f∂`.
    Graded,
    /// Checked against a pair of maps with `check_homotopy`.
    Homotopy,
}

/// Matrices `f_k : C_k → C_{k+deg}` for every source degree `k` whose target lies in the window.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap<R: Ring> {
    pub source: Arc<Complex<R>>,
    pub target: Arc<Complex<R>>,
    pub degree: i64,
    pub provenance: Provenance,
    pub contract: Contract,
    matrices: Vec<Option<Matrix<R::Elem>>>,
}

impl<R: Ring> ChainMap<R> {
    pub fn new(
        source: Arc<Complex<R>>,
        target: Arc<Complex<R>>,
        degree: i64,
        provenance: Provenance,
        contract: Contract,
        matrices: Vec<Option<Matrix<R::Elem>>>,
    ) -> Result<Self> {
        if matrices.len() != source.top() + 1 {
            return Err(Error::Invalid("one matrix slot per source degree expected".into()));
        }
        for (k, m) in matrices.iter().enumerate() {
            let t = k as i64 + degree;
            let expected = (0..=target.top() as i64).contains(&t);
            match m {
                Some(m) if !expected || m.rows() != target.rank(t as usize) || m.cols() != source.rank(k) => {
                    return Err(Error::Invalid(format!("matrix in source degree {k} has the wrong shape")));
                }
                None if expected => return Err(Error::Invalid(format!("missing matrix in source degree {k}"))),
                _ => {}
            }
        }
        Ok(ChainMap { source, target, degree, provenance, contract, matrices })
    }

    pub fn identity(c: Arc<Complex<R>>) -> Self {
        let ring = c.ring.clone();
        let matrices = (0..=c.top()).map(|k| Some(Matrix::identity(&ring, c.rank(k)))).collect();
        ChainMap { source: c.clone(), target: c, degree: 0, provenance: Provenance::Identity, contract: Contract::Commutes, matrices }
    }

    pub fn ring(&self) -> &R {
        &self.source.ring
    }

    /// `f_k`, or `None` when `k + deg` is outside the target window.
    pub fn matrix(&self, k: usize) -> Option<&Matrix<R::Elem>> {
        self.matrices.get(k).and_then(Option::as_ref)
    }

    /// `f_k` with zero maps filled in where the target vanishes.
    fn block(&self, k: usize) -> Option<Matrix<R::Elem>> {
        if k > self.source.top() {
            return None;
        }
        let t = k as i64 + self.degree;
        if t < 0 {
            return Some(Matrix::zeros(self.ring(), 0, self.source.rank(k)));
        }
        self.matrix(k).cloned()
    }

    /// Degrees `k` where both sides of the contract are determined.
    fn contract_degrees(&self) -> impl Iterator<Item = usize> + '_ {
        (0..=self.source.top()).filter(move |&k| {
            let t = k as i64 + self.degree;
            t >= 1 && t <= self.target.top() as i64
        })
    }

    /// `∂f − ε f∂` in every determined degree.
    pub fn check_contract(&self) -> Report {
        let ring = self.ring();
        let mut rep = Report::new(format!("{} chain map", self.provenance));
        let negate = match self.contract {
            Contract::Commutes => false,
            Contract::Graded => odd(self.degree),
            Contract::Homotopy => return rep,
        };
        for k in self.contract_degrees() {
            let t = (k as i64 + self.degree) as usize;
            let f = self.block(k).unwrap();
            let lhs = self.target.d[t].mul(ring, &f);
            let rhs = if k == 0 {
                Matrix::zeros(ring, lhs.rows(), lhs.cols())
            } else {
                self.block(k - 1).unwrap().mul(ring, &self.source.d[k]).scale(ring, &ring.signed(negate, &ring.one()))
            };
            rep.checked += 1;
            if lhs != rhs {
                rep.fail("chain map", format!("source degree {k}"), mismatch(&self.source, k, &lhs.sub(ring, &rhs)));
            }
        }
        rep
    }

    /// `self ∘ first`
    pub fn after(&self, first: &ChainMap<R>) -> Result<Self> {
        if *first.target != *self.source {
            return Err(Error::Mismatch("chain maps do not compose".into()));
        }
        let ring = self.ring();
        let degree = first.degree + self.degree;
        let matrices = (0..=first.source.top())
            .map(|k| {
                let t = k as i64 + degree;
                if t < 0 || t > self.target.top() as i64 {
                    return None;
                }
                let mid = k as i64 + first.degree;
                if mid < 0 || mid > self.source.top() as i64 {
                    return Some(Matrix::zeros(ring, self.target.rank(t as usize), first.source.rank(k)));
                }
                let f = first.block(k)?;
                let g = self.block(mid as usize)?;
                Some(g.mul(ring, &f))
            })
            .collect::<Vec<_>>();
        let contract = match (first.contract, self.contract) {
            (Contract::Homotopy, _) | (_, Contract::Homotopy) => Contract::Homotopy,
            (Contract::Commutes, Contract::Commutes) => Contract::Commutes,
            _ => Contract::Graded,
        };
        ChainMap::new(first.source.clone(), self.target.clone(), degree, Provenance::Composite, contract, matrices)
    }

    /// Entrywise difference of two maps with equal ends and degree.
    pub fn minus(&self, other: &ChainMap<R>) -> Result<Self> {
        if self.degree != other.degree || *self.source != *other.source || *self.target != *other.target {
            return Err(Error::Mismatch("maps with different ends".into()));
        }
        let ring = self.ring();
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| match (a, b) {
                (Some(a), Some(b)) => Some(a.sub(ring, b)),
                _ => None,
            })
            .collect();
        Ok(ChainMap { matrices, provenance: Provenance::Composite, ..self.clone() })
    }

    pub fn is_identity(&self) -> bool {
        let ring = self.ring();
        self.degree == 0
            && *self.source == *self.target
            && (0..=self.source.top()).all(|k| self.matrix(k) == Some(&Matrix::identity(ring, self.source.rank(k))))
    }

    /// Matrix degrees paired with their source degrees.
    pub fn blocks(&self) -> impl Iterator<Item = (usize, &Matrix<R::Elem>)> {
        self.matrices.iter().enumerate().filter_map(|(k, m)| m.as_ref().map(|m| (k, m)))
    }
}

fn mismatch<R: Ring>(c: &Complex<R>, k: usize, diff: &Matrix<R::Elem>) -> String {
    match (0..diff.cols()).find(|&j| diff.column(j).iter().any(|x| !c.ring.is_zero(x))) {
        Some(j) => format!("residual on generator {}", c.labels[k][j]),
        None => "residual".into(),
    }
}

/// `∂H + H∂ = f − g` in every determined degree.
pub fn check_homotopy<R: Ring>(h: &ChainMap<R>, f: &ChainMap<R>, g: &ChainMap<R>) -> Report {
    let ring = h.ring();
    let mut rep = Report::new("chain homotopy");
    if h.degree != f.degree + 1 || f.degree != g.degree {
        rep.fail("degrees", "", "homotopy degree must exceed the maps' degree by one");
        return rep;
    }
    for k in 0..=f.source.top() {
        let t = k as i64 + f.degree;
        if t < 0 || t + 1 > h.target.top() as i64 {
            continue;
        }
        let (Some(fk), Some(gk)) = (f.block(k), g.block(k)) else { continue };
        let hk = h.block(k).unwrap();
        let mut lhs = h.target.d[t as usize + 1].mul(ring, &hk);
        if k > 0 {
            lhs = lhs.add(ring, &h.block(k - 1).unwrap().mul(ring, &h.source.d[k]));
        }
        let rhs = fk.sub(ring, &gk);
        rep.checked += 1;
        if lhs != rhs {
            rep.fail("homotopy identity", format!("source degree {k}"), mismatch(&h.source, k, &lhs.sub(ring, &rhs)));
        }
    }
    rep
}

/// Tabulates a chain-level operator between enriched complexes.
fn tabulate<R: Ring>(
    source: &EnrichedComplex<R>,
    target: &EnrichedComplex<R>,
    degree: i64,
    f: impl Fn(&Chain<R::Elem>, &mut Truncation) -> Chain<R::Elem>,
) -> Result<Vec<Option<Matrix<R::Elem>>>> {
    let ring = source.ring();
    let mut trunc = Truncation::default();
    let mut out = Vec::new();
    for k in 0..=source.top() {
        let t = k as i64 + degree;
        if t < 0 || t > target.top() as i64 {
            out.push(None);
            continue;
        }
        let t = t as usize;
        let rows = target.complex.rank(t);
        let cols: Vec<Vec<R::Elem>> = source
            .cells(k)
            .iter()
            .map(|&cell| {
                let image = f(&Chain::single(ring, cell, ring.one()), &mut trunc);
                to_column(ring, target.positions(), t, rows, &image)
            })
            .collect();
        out.push(Some(Matrix::from_columns(ring, rows, &cols)));
    }
    if !trunc.clean() {
        return Err(Error::Degree(format!("{} truncation events while tabulating a chain map", trunc.events)));
    }
    Ok(out)
}

fn finish<R: Ring>(map: ChainMap<R>) -> Result<ChainMap<R>> {
    let rep = map.check_contract();
    if rep.is_ok() {
        Ok(map)
    } else {
        Err(Error::Internal(format!("constructed map violates its contract: {rep}")))
    }
}

/// `Ψ = Σ_n Σ_u (−1)^{u−1} (ν_{n+1}⊗1) m̃₁^{n−u} τ̃ m̃₀^{u−1}`.
pub fn transfer_map<R: Ring>(
    tau: &TransferCocycle<R>,
    source: &EnrichedComplex<R>,
    target: &EnrichedComplex<R>,
) -> Result<ChainMap<R>> {
    if source.module != target.module {
        return Err(Error::Mismatch("transfer between complexes with different modules".into()));
    }
    if *source.cocycle != *tau.source || *target.cocycle != *tau.target {
        return Err(Error::Mismatch("transfer cocycle ends differ from the complexes".into()));
    }
    let module = &source.module;
    let matrices = tabulate(source, target, tau.k, |c, t| {
        sandwich(module, &tau.source, &tau.target, c, |x| tau.row(x).collect(), false, true, |w| collapse_nu(module, w, t))
    })?;
    let map = ChainMap::new(
        Arc::new(source.complex.clone()),
        Arc::new(target.complex.clone()),
        tau.k,
        Provenance::Transfer,
        Contract::Commutes,
        matrices,
    )?;
    finish(map)
}

/// `H = Σ_n Σ_u (ν_{n+1}⊗1) m̃₁^{n−u} h̃ m̃₀^{u−1}`, with `h̃` signed by the prefix degree.
pub fn homotopy_map<R: Ring>(
    h: &HomotopyCocycle<R>,
    source: &EnrichedComplex<R>,
    target: &EnrichedComplex<R>,
) -> Result<ChainMap<R>> {
    if source.module != target.module || *source.cocycle != *h.from.source || *target.cocycle != *h.from.target {
        return Err(Error::Mismatch("homotopy ends differ from the complexes".into()));
    }
    let module = &source.module;
    let (m0, m1) = (&h.from.source, &h.from.target);
    let matrices = tabulate(source, target, h.from.k + 1, |c, t| {
        sandwich(module, m0, m1, c, |x| h.row(x).collect(), true, false, |w| collapse_nu(module, w, t))
    })?;
    ChainMap::new(
        Arc::new(source.complex.clone()),
        Arc::new(target.complex.clone()),
        h.from.k + 1,
        Provenance::Homotopy,
        Contract::Homotopy,
        matrices,
    )
}

/// `φ̃ = Σ_n (φ_{n+1} ⊗ 1) m̃ⁿ`.
pub fn induced_map<R: Ring>(
    phi: &AInfMorphism<R>,
    source: &EnrichedComplex<R>,
    target: &EnrichedComplex<R>,
) -> Result<ChainMap<R>> {
    if *source.module != *phi.source || *target.module != *phi.target {
        return Err(Error::Mismatch("morphism ends differ from the complex modules".into()));
    }
    if *source.cocycle != *target.cocycle {
        return Err(Error::Mismatch("induced maps need a common cocycle".into()));
    }
    let (module, m) = (&source.module, &source.cocycle);
    let matrices = tabulate(source, target, 0, |c, t| expand(module, m, words_of(c), |w| collapse_phi(phi, w, t)))?;
    let map = ChainMap::new(
        Arc::new(source.complex.clone()),
        Arc::new(target.complex.clone()),
        0,
        Provenance::Induced,
        Contract::Commutes,
        matrices,
    )?;
    finish(map)
}

/// `κ = Σ_n Σ_u (−1)^{u−1} (φ_{n+1}⊗1) m̃₁^{n−u} τ̃ m̃₀^{u−1}` from `C(X, m⁰, M)` to `C(Y, m¹, N)`.
pub fn compatibility_homotopy<R: Ring>(
    phi: &AInfMorphism<R>,
    tau: &TransferCocycle<R>,
    source: &EnrichedComplex<R>,
    target: &EnrichedComplex<R>,
) -> Result<ChainMap<R>> {
    if *source.module != *phi.source || *target.module != *phi.target {
        return Err(Error::Mismatch("morphism ends differ from the complex modules".into()));
    }
    if *source.cocycle != *tau.source || *target.cocycle != *tau.target {
        return Err(Error::Mismatch("transfer cocycle ends differ from the complexes".into()));
    }
    let module = &source.module;
    let matrices = tabulate(source, target, tau.k + 1, |c, t| {
        sandwich(module, &tau.source, &tau.target, c, |x| tau.row(x).collect(), false, true, |w| collapse_phi(phi, w, t))
    })?;
    ChainMap::new(
        Arc::new(source.complex.clone()),
        Arc::new(target.complex.clone()),
        tau.k + 1,
        Provenance::Homotopy,
        Contract::Homotopy,
        matrices,
    )
}

/// `C ⊗ D` in degrees `0..=min(top)`, with `d(a⊗b) = da⊗b + (−1)^{|a|} a⊗db`.
/// Returns the complex and, per degree, the factor cells `((k, i), (l, j))` of each generator.
pub fn tensor_complex<R: Ring>(c: &Complex<R>, d: &Complex<R>) -> (Complex<R>, Vec<Vec<((usize, usize), (usize, usize))>>) {
    let ring = c.ring.clone();
    let top = c.top().min(d.top());
    let mut cells = vec![Vec::new(); top + 1];
    for k in 0..=c.top() {
        for l in 0..=d.top() {
            if k + l > top {
                continue;
            }
            for i in 0..c.rank(k) {
                for j in 0..d.rank(l) {
                    cells[k + l].push(((k, i), (l, j)));
                }
            }
        }
    }
    let labels = cells
        .iter()
        .map(|v| v.iter().map(|&((k, i), (l, j))| format!("({})⊗({})", c.labels[k][i], d.labels[l][j])).collect())
        .collect();
    let filtration = cells
        .iter()
        .map(|v| v.iter().map(|&((k, i), (l, j))| c.filtration[k][i] + d.filtration[l][j]).collect())
        .collect();
    let index: std::collections::HashMap<((usize, usize), (usize, usize)), usize> =
        cells.iter().flat_map(|v| v.iter().enumerate().map(|(n, &cell)| (cell, n))).collect();
    let mut mats = vec![Matrix::zeros(&ring, 0, cells[0].len())];
    for n in 1..=top {
        let mut m = Matrix::zeros(&ring, cells[n - 1].len(), cells[n].len());
        for (col, &((k, i), (l, j))) in cells[n].iter().enumerate() {
            if k > 0 {
                for r in 0..c.rank(k - 1) {
                    let e = c.d[k].get(r, i);
                    if !ring.is_zero(e) {
                        let row = index[&((k - 1, r), (l, j))];
                        m.set(row, col, ring.add(m.get(row, col), e));
                    }
                }
            }
            if l > 0 {
                for r in 0..d.rank(l - 1) {
                    let e = d.d[l].get(r, j);
                    if !ring.is_zero(e) {
                        let row = index[&((k, i), (l - 1, r))];
                        let v = ring.signed(odd(k as i64), e);
                        m.set(row, col, ring.add(m.get(row, col), &v));
                    }
                }
            }
        }
        mats.push(m);
    }
    (Complex::new(ring, labels, filtration, mats).unwrap(), cells)
}

/// `K((α⊗x)⊗(β⊗y)) = (−1)^{|β||x|} (α⊗β)⊗(x,y)` and its inverse.
pub fn kunneth_map<R: Ring>(
    cx: &EnrichedComplex<R>,
    cy: &EnrichedComplex<R>,
    product: &EnrichedComplex<R>,
) -> Result<(ChainMap<R>, ChainMap<R>)> {
    if !cx.module.is_dg() || !cy.module.is_dg() {
        return Err(Error::Unsupported("Künneth map for modules with ν_{≥3} ≠ 0".into()));
    }
    let ring = cx.ring().clone();
    let crit = &product.cocycle.crit;
    let (fx, fy) = crit.factors().ok_or_else(|| Error::Invalid("Künneth target is not over a product".into()))?;
    if fx != &*cx.cocycle.crit || fy != &*cy.cocycle.crit {
        return Err(Error::Mismatch("product critical set differs from the factors".into()));
    }
    let (tensor, cells) = tensor_complex(&cx.complex, &cy.complex);
    if tensor.top() != product.top() {
        return Err(Error::Mismatch("product window differs from the factor windows".into()));
    }
    let pm = &product.module.basis;
    let mut fwd = Vec::new();
    for (n, v) in cells.iter().enumerate() {
        let mut m = Matrix::zeros(&ring, product.complex.rank(n), v.len());
        for (col, &((k, i), (l, j))) in v.iter().enumerate() {
            let (a, x) = cx.cells(k)[i];
            let (b, y) = cy.cells(l)[j];
            let label = format!("{}⊗{}", cx.module.basis.label(a), cy.module.basis.label(b));
            let ab = pm.lookup(&label)?;
            let (deg, row) = product
                .position(ab, crit.pair(x, y))
                .ok_or_else(|| Error::Internal("Künneth image outside the product window".into()))?;
            if deg != n {
                return Err(Error::Internal("Künneth map changes degree".into()));
            }
            let s = cy.module.basis.degree(b) as i64 * cx.cocycle.crit.index(x) as i64;
            m.set(row, col, sign(&ring, s));
        }
        fwd.push(m);
    }
    let mut inv = Vec::new();
    for m in &fwd {
        // K is a signed permutation, so its inverse is its transpose.
        if m.rows() != m.cols() {
            return Err(Error::Internal("Künneth map is not bijective".into()));
        }
        inv.push(m.transpose());
    }
    let source = Arc::new(tensor);
    let target = Arc::new(product.complex.clone());
    let k = ChainMap::new(
        source.clone(),
        target.clone(),
        0,
        Provenance::Kunneth,
        Contract::Commutes,
        fwd.into_iter().map(Some).collect(),
    )?;
    let kinv = ChainMap::new(target, source, 0, Provenance::KunnethInverse, Contract::Commutes, inv.into_iter().map(Some).collect())?;
    Ok((finish(k)?, finish(kinv)?))
}

/// `τ_!((α⊗β)⊗(x,x')) = (−1)^{|x||x'|+n} (α⊗β)⊗(x',x)` into the complex over the swapped module.
pub fn switch_map<R: Ring>(source: &EnrichedComplex<R>, target: &EnrichedComplex<R>) -> Result<ChainMap<R>> {
    let crit = &source.cocycle.crit;
    let (a, b) = crit.factors().ok_or_else(|| Error::Invalid("switch map needs a product complex".into()))?;
    if a != b || *target.cocycle.crit != **crit {
        return Err(Error::Invalid("switch map needs a self-product on both ends".into()));
    }
    if source.module.basis != target.module.basis {
        return Err(Error::Mismatch("switch map ends have different module bases".into()));
    }
    let n = a.dim as i64;
    let matrices = tabulate(source, target, 0, |c, _| {
        let ring = source.ring();
        let mut out = Chain::new();
        for (&(alpha, p), e) in c.iter() {
            let (x, y) = crit.split(p);
            let s = a.index(x) as i64 * a.index(y) as i64 + n;
            out.add_term(ring, (alpha, crit.pair(y, x)), ring.mul(e, &sign(ring, s)));
        }
        out
    })?;
    let map = ChainMap::new(
        Arc::new(source.complex.clone()),
        Arc::new(target.complex.clone()),
        0,
        Provenance::Switch,
        Contract::Commutes,
        matrices,
    )?;
    finish(map)
}

impl<R: EuclideanRing> ChainMap<R> {
    /// Matrix of `H_k(f)` in the representative bases, columns indexed by source generators.
    pub fn on_homology(&self, hs: &HomologyTable<R::Elem>, ht: &HomologyTable<R::Elem>, k: usize) -> Result<Matrix<R::Elem>> {
        let ring = self.ring();
        let t = k as i64 + self.degree;
        let src = hs.degree(k).ok_or_else(|| Error::Degree(format!("degree {k} outside the valid window")))?;
        if t < 0 {
            return Ok(Matrix::zeros(ring, 0, src.len()));
        }
        let tgt = ht.degree(t as usize).ok_or_else(|| Error::Degree(format!("degree {t} outside the valid window")))?;
        let f = self.matrix(k).ok_or_else(|| Error::Degree(format!("map undefined in degree {k}")))?;
        let cols = src
            .generators
            .iter()
            .map(|g| {
                let image = f.apply(ring, g);
                if !tgt.is_cycle(ring, &image) {
                    return Err(Error::Internal(format!("image of a degree-{k} representative is not a cycle")));
                }
                tgt.coordinates(ring, &image)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(ring, tgt.len(), &cols))
    }

    /// `H_k(f)` is bijective in every degree where both ends are valid.
    pub fn check_homology_iso(&self, hs: &HomologyTable<R::Elem>, ht: &HomologyTable<R::Elem>) -> Report {
        let ring = self.ring();
        let mut rep = Report::new("isomorphism on homology");
        for k in 0..hs.groups.len() {
            let t = k as i64 + self.degree;
            if t < 0 || t as usize >= ht.groups.len() {
                rep.untested += 1;
                continue;
            }
            let (src, tgt) = (&hs.groups[k], &ht.groups[t as usize]);
            let m = match self.on_homology(hs, ht, k) {
                Ok(m) => m,
                Err(e) => {
                    rep.fail("induced map", format!("degree {k}"), e.to_string());
                    continue;
                }
            };
            rep.checked += 1;
            // [H(f) | relations of the target] presents coker H(f); its kernel lands in the source relations iff H(f) is injective.
            let mut rel = Matrix::zeros(ring, tgt.len(), tgt.len());
            for (i, o) in tgt.orders.iter().enumerate() {
                if let Some(d) = o {
                    rel.set(i, i, d.clone());
                }
            }
            let big = m.hcat(&rel);
            let s = smith_normal_form(ring, &big);
            if s.rank < tgt.len() || s.diagonal().iter().take(tgt.len()).any(|x| !ring.is_unit(x)) {
                rep.fail("surjective", format!("degree {k}"), "H(f) misses part of the target");
                continue;
            }
            let ker = kernel(ring, &big);
            let injective = (0..ker.cols()).all(|j| {
                (0..src.len()).all(|i| match &src.orders[i] {
                    Some(d) => ring.divides(d, ker.get(i, j)),
                    None => ring.is_zero(ker.get(i, j)),
                })
            });
            if !injective {
                rep.fail("injective", format!("degree {k}"), "H(f) kills a nonzero class");
            }
        }
        rep
    }
}
