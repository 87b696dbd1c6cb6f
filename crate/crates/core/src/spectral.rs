//! The filtration by critical index, its spectral sequence over a field, and the lifted Morse complex.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::cocycle::{CritSet, TwistingCocycle};
use crate::complex::{Complex, EnrichedComplex};
use crate::dga::DegreeZero;
use crate::error::{Error, Result};
use crate::graded::{Elem, Truncation};
use crate::linalg::{homology_at, kernel, rank, Matrix};
use crate::module::{sign, CoefficientModule};
use crate::product::{ChainProduct, ProductDatum};
use crate::report::Report;
use crate::ring::{EuclideanRing, Integers, PrimeField, Ring};

/// Field directive for spectral computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Rationals,
    Prime(u64),
    /// Laurent coefficients read in their field of fractions.
    GenericLaurent,
}

impl FromStr for FieldChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q" => Ok(FieldChoice::Rationals),
            "generic-laurent" => Ok(FieldChoice::GenericLaurent),
            _ => {
                let p = s
                    .strip_prefix("fp:")
                    .and_then(|p| p.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown field {s:?}; use q, fp:<p> or generic-laurent")))?;
                PrimeField::new(p)?;
                Ok(FieldChoice::Prime(p))
            }
        }
    }
}

impl fmt::Display for FieldChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldChoice::Rationals => write!(f, "q"),
            FieldChoice::Prime(p) => write!(f, "fp:{p}"),
            FieldChoice::GenericLaurent => write!(f, "generic-laurent"),
        }
    }
}

/// How a scene's coefficients reach a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduction {
    /// Ranks over the fraction field of the base ring; named in output.
    FractionField(String),
    /// Integers reduced modulo `p`.
    ModP(u64),
}

/// Decides the reduction for a base ring name, refusing non-fields without a directive.
pub fn plan(ring_name: &str, field: Option<FieldChoice>) -> Result<Reduction> {
    let frac = |s: &str| Ok(Reduction::FractionField(s.into()));
    match (ring_name, field) {
        ("integers", Some(FieldChoice::Rationals)) => frac("Q"),
        ("integers", Some(FieldChoice::Prime(p))) => Ok(Reduction::ModP(p)),
        ("rationals", None | Some(FieldChoice::Rationals)) => frac("Q"),
        ("laurent-q", Some(FieldChoice::GenericLaurent)) => frac("Q(t)"),
        (name, Some(FieldChoice::GenericLaurent)) if name.starts_with("laurent-fp:") => {
            frac(&format!("F{}(t)", &name["laurent-fp:".len()..]))
        }
        (name, None) if name.starts_with("fp:") => frac(&format!("F{}", &name[3..])),
        (name, Some(FieldChoice::Prime(p))) if name == format!("fp:{p}") => frac(&format!("F{p}")),
        (name, None) => Err(Error::Refused(format!(
            "spectral pages need a field; base ring {name} requires --field (pages over a non-field are not computed)"
        ))),
        (name, Some(f)) => Err(Error::Refused(format!("field directive {f} does not apply to base ring {name}"))),
    }
}

pub fn reduce_mod_p(c: &Complex<Integers>, p: u64) -> Result<Complex<PrimeField>> {
    let f = PrimeField::new(p)?;
    Ok(c.map_ring(f, |x| f.reduce(x)))
}

/// `F` itself as a complex under `ν₁`, in degrees `0..=top`.
pub fn module_complex<R: Ring>(module: &CoefficientModule<R>) -> Complex<R> {
    let ring = module.ring().clone();
    let top = module.top();
    let basis = &module.basis;
    let by_degree: Vec<Vec<usize>> = (0..=top).map(|k| basis.in_degree(k).collect()).collect();
    let labels = by_degree.iter().map(|v| v.iter().map(|&a| basis.label(a).to_string()).collect()).collect();
    let filtration = by_degree.iter().map(|v| vec![0; v.len()]).collect();
    let mut d = vec![Matrix::zeros(&ring, 0, by_degree[0].len())];
    for k in 1..=top {
        let cols: Vec<Vec<R::Elem>> = by_degree[k]
            .iter()
            .map(|&a| {
                let image = module.nu_basis(&[a], &mut Truncation::default());
                by_degree[k - 1].iter().map(|b| image.get(b).cloned().unwrap_or_else(|| ring.zero())).collect()
            })
            .collect();
        d.push(Matrix::from_columns(&ring, by_degree[k - 1].len(), &cols));
    }
    Complex { ring, labels, filtration, d }
}

/// `∂(F_p) ⊆ F_p`: the differential is block-triangular in the filtration.
pub fn check_filtration<R: Ring>(c: &Complex<R>) -> Report {
    let mut rep = Report::new("filtration");
    for k in 1..=c.top() {
        for j in 0..c.rank(k) {
            rep.checked += 1;
            for i in 0..c.rank(k - 1) {
                if !c.ring.is_zero(c.d[k].get(i, j)) && c.filtration[k - 1][i] > c.filtration[k][j] {
                    rep.fail("filtration", c.labels[k][j].clone(), format!("∂ reaches {}", c.labels[k - 1][i]));
                }
            }
        }
    }
    rep
}

/// `E^r_{p,q}` dimensions and the ranks of `d^r` leaving each position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralPage {
    pub r: usize,
    pub dims: BTreeMap<(usize, usize), usize>,
    /// Rank of `d^r : E^r_{p,q} → E^r_{p−r,q+r−1}`.
    pub d_ranks: BTreeMap<(usize, usize), usize>,
}

impl SpectralPage {
    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.dims.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn d_rank(&self, p: usize, q: usize) -> usize {
        self.d_ranks.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn total(&self, k: usize) -> usize {
        self.dims.iter().filter(|((p, q), _)| p + q == k).map(|(_, d)| d).sum()
    }

    pub fn differential_vanishes(&self) -> bool {
        self.d_ranks.values().all(|&r| r == 0)
    }
}

/// Pages `E⁰ … E^{r_max}` and the limit page, all over the fraction field of `R`.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralSequence {
    pub pages: Vec<SpectralPage>,
    pub limit: SpectralPage,
    /// `dim H_k` computed directly from the complex.
    pub homology: Vec<usize>,
    pub p_max: usize,
    pub valid_top: usize,
}

struct Filtered<'a, R: EuclideanRing> {
    c: &'a Complex<R>,
}

impl<R: EuclideanRing> Filtered<'_, R> {
    fn level(&self, k: usize, p: i64) -> Vec<usize> {
        (0..self.c.rank(k)).filter(|&j| self.c.filtration[k][j] as i64 <= p).collect()
    }

    /// Columns spanning `Z^r_p` in degree `k`: chains in `F_p` whose boundary lies in `F_{p−r}`.
    fn z(&self, r: i64, p: i64, k: usize) -> Matrix<R::Elem> {
        let ring = &self.c.ring;
        let n = self.c.rank(k);
        let cols = self.level(k, p);
        let embed = |m: &Matrix<R::Elem>| {
            let mut out = Matrix::zeros(ring, n, m.cols());
            for (i, &j) in cols.iter().enumerate() {
                for c in 0..m.cols() {
                    out.set(j, c, m.get(i, c).clone());
                }
            }
            out
        };
        if r <= 0 || k == 0 {
            return embed(&Matrix::identity(ring, cols.len()));
        }
        let rows: Vec<usize> = (0..self.c.rank(k - 1)).filter(|&i| self.c.filtration[k - 1][i] as i64 > p - r).collect();
        embed(&kernel(ring, &self.c.d[k].select(&rows, &cols)))
    }

    fn dz(&self, r: i64, p: i64, k: usize) -> Matrix<R::Elem> {
        let ring = &self.c.ring;
        if k == 0 {
            return Matrix::zeros(ring, 0, 0);
        }
        self.c.d[k].mul(ring, &self.z(r, p, k))
    }

    /// `Z^{r−1}_{p−1} + d Z^{r−1}_{p+r−1}` in degree `k`.
    fn b(&self, r: i64, p: i64, k: usize) -> Matrix<R::Elem> {
        let low = self.z(r - 1, p - 1, k);
        if k + 1 > self.c.top() {
            return low;
        }
        low.hcat(&self.dz(r - 1, p + r - 1, k + 1))
    }

    fn dim(&self, r: i64, p: i64, k: usize) -> usize {
        let ring = &self.c.ring;
        rank(ring, &self.z(r, p, k)) - rank(ring, &self.b(r, p, k))
    }

    fn d_rank(&self, r: i64, p: i64, k: usize) -> usize {
        let ring = &self.c.ring;
        let b = self.b(r, p - r, k - 1);
        rank(ring, &b.hcat(&self.dz(r, p, k))) - rank(ring, &b)
    }

    fn page(&self, r: usize, p_max: usize, valid_top: usize) -> SpectralPage {
        let positions: Vec<(usize, usize)> =
            (0..=valid_top + 1).flat_map(|k| (0..=p_max.min(k)).map(move |p| (p, k))).collect();
        let values: Vec<((usize, usize), Option<usize>, usize)> = positions
            .par_iter()
            .map(|&(p, k)| {
                let dim = (k <= valid_top).then(|| self.dim(r as i64, p as i64, k));
                let dr = if k >= 1 && k <= self.c.top() && r <= p { self.d_rank(r as i64, p as i64, k) } else { 0 };
                ((p, k - p), dim, dr)
            })
            .collect();
        let mut dims = BTreeMap::new();
        let mut d_ranks = BTreeMap::new();
        for (pq, dim, dr) in values {
            if let Some(d) = dim {
                dims.insert(pq, d);
            }
            if dr > 0 {
                d_ranks.insert(pq, dr);
            }
        }
        SpectralPage { r, dims, d_ranks }
    }
}

/// Spectral sequence of the index filtration, ranks taken over the fraction field of `R`.
pub fn pages<R: EuclideanRing>(c: &Complex<R>, r_max: usize) -> Result<SpectralSequence> {
    let filt = check_filtration(c);
    if !filt.is_ok() {
        return Err(Error::Validation(filt.to_string()));
    }
    let f = Filtered { c };
    let p_max = c.filtration.iter().flatten().copied().max().unwrap_or(0);
    let valid_top = c.valid_top();
    let pages: Vec<SpectralPage> = (0..=r_max).map(|r| f.page(r, p_max, valid_top)).collect();
    let limit = f.page(p_max + 1, p_max, valid_top);
    let ring = &c.ring;
    let homology = (0..=valid_top)
        .map(|k| {
            let z = c.rank(k) - if k == 0 { 0 } else { rank(ring, &c.d[k]) };
            z - rank(ring, &c.d[k + 1])
        })
        .collect();
    Ok(SpectralSequence { pages, limit, homology, p_max, valid_top })
}

impl SpectralSequence {
    /// `dim E^{r+1} = dim E^r − rank d^r (out) − rank d^r (in)` on every position.
    pub fn check_pages(&self) -> Report {
        let mut rep = Report::new("page dimensions");
        for w in self.pages.windows(2) {
            let (e, next) = (&w[0], &w[1]);
            let r = e.r;
            for (&(p, q), &dim) in &next.dims {
                rep.checked += 1;
                let out = e.d_rank(p, q);
                let incoming = if q + 1 >= r { e.d_rank(p + r, q + 1 - r) } else { 0 };
                let expected = e.dim(p, q) as i64 - out as i64 - incoming as i64;
                if dim as i64 != expected {
                    rep.fail(
                        "E^{r+1} = H(E^r, d^r)",
                        format!("r = {}, (p, q) = ({p}, {q})", r + 1),
                        format!("dimension {dim}, expected {expected}"),
                    );
                }
            }
        }
        rep
    }

    /// `Σ_p dim E^∞_{p,k−p} = dim H_k` in every valid degree.
    pub fn check_convergence(&self) -> Report {
        let mut rep = Report::new("convergence");
        for (k, &h) in self.homology.iter().enumerate() {
            rep.checked += 1;
            let total = self.limit.total(k);
            if total != h {
                rep.fail("convergence", format!("degree {k}"), format!("E^∞ total {total}, homology {h}"));
            }
        }
        rep
    }

    /// First page from which every computed differential vanishes.
    pub fn collapse_page(&self) -> usize {
        (0..self.pages.len())
            .find(|&r| self.pages[r..].iter().all(SpectralPage::differential_vanishes))
            .unwrap_or(self.pages.len())
    }

    /// `E^r` for any `r`, the limit page past the last computed one.
    pub fn page(&self, r: usize) -> SpectralPage {
        if r > self.p_max {
            let mut p = self.limit.clone();
            p.r = r;
            return p;
        }
        self.pages.get(r).cloned().unwrap_or_else(|| {
            let mut p = self.limit.clone();
            p.r = r;
            p
        })
    }
}

/// `dim E¹_{p,q} = dim H_q(F) · #Crit_p` over the fraction field.
pub fn check_e1<R: EuclideanRing>(page1: &SpectralPage, module: &Complex<R>, crit: &CritSet) -> Report {
    let ring = &module.ring;
    let mut rep = Report::new("E¹ dimensions");
    let hq = |q: usize| -> usize {
        let z = module.rank(q) - if q == 0 { 0 } else { rank(ring, &module.d[q]) };
        let b = if q < module.top() { rank(ring, &module.d[q + 1]) } else { 0 };
        z - b
    };
    for (&(p, q), &dim) in &page1.dims {
        rep.checked += 1;
        let count = (0..crit.len()).filter(|&x| crit.index(x) == p).count();
        let expected = hq(q) * count;
        if dim != expected {
            rep.fail("E¹ = H_q(F) ⊗ Crit_p", format!("({p}, {q})"), format!("dimension {dim}, expected {expected}"));
        }
    }
    rep
}

/// Free `H₀`-module on `Crit(f)` with `d x = Σ m̂_{x,y} y` over consecutive indices.
#[derive(Clone, Debug)]
pub struct LiftedComplex<R: EuclideanRing> {
    pub h0: DegreeZero<R>,
    pub crit: std::sync::Arc<CritSet>,
    /// `m̂_{x,y}` as `H₀` coordinates, for `|x| − |y| = 1`.
    pub entries: BTreeMap<(usize, usize), Vec<R::Elem>>,
}

impl<R: EuclideanRing> LiftedComplex<R> {
    pub fn new(m: &TwistingCocycle<R>) -> Result<Self> {
        let h0 = m.dga.degree_zero_homology();
        let mut entries = BTreeMap::new();
        for ((x, y), e) in m.entries() {
            if m.crit.index(x) == m.crit.index(y) + 1 {
                let coords = h0.project(e);
                if coords.iter().any(|c| !h0.ring.is_zero(c)) {
                    entries.insert((x, y), coords);
                }
            }
        }
        let lifted = LiftedComplex { h0, crit: m.crit.clone(), entries };
        let rep = lifted.check_d_squared(m);
        if !rep.is_ok() {
            return Err(Error::Internal(format!("lifted differential does not square to zero: {rep}")));
        }
        Ok(lifted)
    }

    /// `m̂_{x,y}` lifted back to an algebra element.
    pub fn entry(&self, x: usize, y: usize) -> Elem<R::Elem> {
        self.entries.get(&(x, y)).map(|c| self.h0.lift(c)).unwrap_or_default()
    }

    pub fn check_d_squared(&self, m: &TwistingCocycle<R>) -> Report {
        let ring = &self.h0.ring;
        let mut rep = Report::new("lifted d²");
        for x in 0..self.crit.len() {
            for z in 0..self.crit.len() {
                if self.crit.index(x) != self.crit.index(z) + 2 {
                    continue;
                }
                rep.checked += 1;
                let mut sum = Elem::new();
                for y in 0..self.crit.len() {
                    let mut t = Truncation::default();
                    sum.add_lin(ring, &m.dga.multiply(&self.entry(x, y), &self.entry(y, z), &mut t));
                }
                if self.h0.project(&sum).iter().any(|c| !ring.is_zero(c)) {
                    rep.fail("lifted d²", format!("({}, {})", self.crit.label(x), self.crit.label(z)), "Σ m̂ m̂ ≠ 0");
                }
            }
        }
        rep
    }

    pub fn render_entries(&self) -> Vec<(String, String, String)> {
        let ring = &self.h0.ring;
        self.entries
            .iter()
            .map(|(&(x, y), c)| {
                let coords = c.iter().map(|e| ring.render(e)).collect::<Vec<_>>().join(", ");
                (self.crit.label(x).to_string(), self.crit.label(y).to_string(), format!("[{coords}]"))
            })
            .collect()
    }
}

/// `d¹(α̂ ⊗ x) = (−1)^q Σ_y ν₂(α, m̂_{x,y}) ⊗ y` in `H_q(F)`, for every generator class `α̂`.
pub fn d1_check<R: EuclideanRing>(c: &EnrichedComplex<R>, lifted: &LiftedComplex<R>) -> Report {
    let ring = c.ring();
    let module = &c.module;
    let crit = &c.cocycle.crit;
    let mc = module_complex(module);
    let mut rep = Report::new("d¹ check");
    for q in 0..mc.valid_top().min(c.complex.valid_top()) + 1 {
        let Ok(hq) = homology_at(ring, &mc.d[q + 1], &mc.d[q]) else {
            rep.fail("module complex", format!("degree {q}"), "ν₁² ≠ 0");
            continue;
        };
        let basis_q: Vec<usize> = module.basis.in_degree(q).collect();
        for x in 0..crit.len() {
            let p = crit.index(x);
            if p == 0 || p + q > c.complex.valid_top() {
                continue;
            }
            for alpha in &hq.generators {
                let chain: crate::words::Chain<R::Elem> = basis_q
                    .iter()
                    .zip(alpha)
                    .filter(|(_, a)| !ring.is_zero(a))
                    .map(|(&b, a)| ((b, x), a.clone()))
                    .collect();
                let mut t = Truncation::default();
                let image = crate::words::differential(module, &c.cocycle, &chain, &mut t);
                if !t.clean() {
                    rep.untested += 1;
                    continue;
                }
                let alpha_elem: Elem<R::Elem> =
                    basis_q.iter().zip(alpha).filter(|(_, a)| !ring.is_zero(a)).map(|(&b, a)| (b, a.clone())).collect();
                for y in (0..crit.len()).filter(|&y| crit.index(y) + 1 == p) {
                    rep.checked += 1;
                    let actual: Vec<R::Elem> = basis_q
                        .iter()
                        .map(|&b| image.get(&(b, y)).cloned().unwrap_or_else(|| ring.zero()))
                        .collect();
                    let mhat = lifted.entry(x, y);
                    let mut t = Truncation::default();
                    let expected_elem = module.nu(&alpha_elem, &[&mhat], &mut t).scaled(ring, &sign(ring, q as i64));
                    let expected: Vec<R::Elem> =
                        basis_q.iter().map(|b| expected_elem.get(b).cloned().unwrap_or_else(|| ring.zero())).collect();
                    let at = format!("{}⊗{} → {}", mc.render_chain(q, alpha), crit.label(x), crit.label(y));
                    if !hq.is_cycle(ring, &actual) || !hq.is_cycle(ring, &expected) {
                        rep.fail("d¹ lands in cycles", at, "component is not a cycle of F");
                        continue;
                    }
                    let (a, e) = (hq.coordinates(ring, &actual), hq.coordinates(ring, &expected));
                    match (a, e) {
                        (Ok(a), Ok(e)) if hq.same_class(ring, &a, &e) => {}
                        _ => rep.fail("d¹ = (−1)^q ν₂(·, m̂)", at, "classes differ in H_q(F)"),
                    }
                }
            }
        }
    }
    rep
}

/// Chain-level product respects bidegrees: `F_p ⊗ F_l → F_{p+l−n}`, and the unit sits at `(n, 0)`.
pub fn algebra_on_pages<R: EuclideanRing>(datum: &ProductDatum<R>, product: &ChainProduct<R>) -> Report {
    let mut rep = product.check_filtration();
    rep.subject = "algebra on pages".into();
    let crit = &datum.base.cocycle.crit;
    let tops: Vec<usize> = (0..crit.len()).filter(|&x| crit.index(x) == datum.n).collect();
    if let [x] = tops[..] {
        rep.checked += 1;
        let q = datum.base.module.basis.degree(datum.unit);
        if q != 0 || crit.index(x) != datum.n {
            rep.fail("unit bidegree", "unit", format!("unit sits at ({}, {q})", crit.index(x)));
        }
    } else {
        rep.untested += 1;
    }
    rep
}
