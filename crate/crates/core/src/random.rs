//! Random valid data by stabilization and gauge transformation, single-entry
//! corruptions, and A∞ modules transported along random morphisms.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;

use crate::cocycle::{CritSet, TransferCocycle, TwistingCocycle};
use crate::dga::Dga;
use crate::error::{Error, Result};
use crate::graded::{Elem, Truncation};
use crate::module::{sign, AInfMorphism, CoefficientModule};
use crate::ring::Ring;

/// A random nonzero element of degree `d`, or zero when `A_d = 0`.
pub fn element<R: Ring>(dga: &Dga<R>, d: i64, rng: &mut impl rand::Rng) -> Elem<R::Elem> {
    let ring = &dga.ring;
    if d < 0 {
        return Elem::new();
    }
    let basis: Vec<usize> = dga.basis.in_degree(d as usize).collect();
    if basis.is_empty() {
        return Elem::new();
    }
    let mut out = Elem::new();
    while out.is_empty() {
        for &b in &basis {
            if rng.gen_bool(0.6) {
                let c = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
                out.add_term(ring, b, ring.from_i64(c));
            }
        }
    }
    out
}

/// Adds a cancelling pair `s` (index `p+1`) and `t` (index `p`) with `m_{s,t} = 1`.
pub fn stabilize<R: Ring>(m: &TwistingCocycle<R>, p: usize, tag: &str) -> Result<TwistingCocycle<R>> {
    let c = &m.crit;
    if p + 1 > c.dim {
        return Err(Error::Invalid("stabilization index exceeds the dimension".into()));
    }
    let mut points: Vec<(String, usize)> = c.points().map(|(l, i)| (l.to_string(), i)).collect();
    points.push((format!("s{tag}"), p + 1));
    points.push((format!("t{tag}"), p));
    let crit = Arc::new(CritSet::new(c.dim, points)?);
    let mut entries: Vec<((usize, usize), Elem<R::Elem>)> = m.entries().map(|(k, v)| (k, v.clone())).collect();
    entries.push(((c.len(), c.len() + 1), m.dga.unit_elem()));
    TwistingCocycle::new(m.dga.clone(), crit, entries)
}

/// Random unipotent `τ` (`τ_{x,x} = 1`, degree `|x|−|y|`) and the cocycle `m¹` it transports `m` to.
pub fn gauge<R: Ring>(
    m: &Arc<TwistingCocycle<R>>,
    rng: &mut impl rand::Rng,
    max_degree: i64,
) -> Result<(TwistingCocycle<R>, TransferCocycle<R>)> {
    let ring = m.ring().clone();
    let a = &m.dga;
    let c = &m.crit;
    let n = c.len();
    let ind = |x: usize| c.index(x) as i64;
    // τ_{x,w} allowed below the diagonal: lower index, or equal index and earlier position.
    let below = |x: usize, w: usize| ind(w) < ind(x) || (ind(w) == ind(x) && w < x);
    let mut tau: HashMap<(usize, usize), Elem<R::Elem>> = HashMap::new();
    for x in 0..n {
        tau.insert((x, x), a.unit_elem());
        for w in 0..n {
            let d = ind(x) - ind(w);
            if below(x, w) && d <= max_degree && rng.gen_bool(0.5) {
                let e = element(a, d, rng);
                if !e.is_empty() {
                    tau.insert((x, w), e);
                }
            }
        }
    }
    let mut order: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| ind(x) > ind(y)).collect();
    order.sort_by_key(|&(x, y)| (ind(x) - ind(y), ind(x), x, y));
    let mut m1: HashMap<(usize, usize), Elem<R::Elem>> = HashMap::new();
    let mut t = Truncation::default();
    for (x, y) in order {
        let mut v = Elem::new();
        for (z, mxz) in m.row(x) {
            if let Some(tzy) = tau.get(&(z, y)) {
                v.add_lin(&ring, &a.multiply(mxz, tzy, &mut t));
            }
        }
        if let Some(txy) = tau.get(&(x, y)) {
            v = v.minus(&ring, &a.d(txy));
        }
        for w in 0..n {
            if w == x || !below(x, w) || ind(w) <= ind(y) {
                continue;
            }
            if let (Some(txw), Some(mwy)) = (tau.get(&(x, w)), m1.get(&(w, y))) {
                let p = a.multiply(txw, mwy, &mut t);
                v.add_scaled(&ring, &sign(&ring, ind(x) - ind(w) + 1), &p);
            }
        }
        if !v.is_empty() {
            m1.insert((x, y), v);
        }
    }
    if !t.clean() {
        return Err(Error::Degree("gauge transform left the window".into()));
    }
    let m1 = Arc::new(TwistingCocycle::new(a.clone(), c.clone(), m1.into_iter().collect())?);
    let tau = TransferCocycle::new(m.clone(), m1.clone(), 0, tau.into_iter().collect())?;
    Ok(((*m1).clone(), tau))
}

/// Perturbs one entry so that Maurer–Cartan fails; returns the pair and the corrupted cocycle.
pub fn corrupt<R: Ring>(
    m: &TwistingCocycle<R>,
    rng: &mut impl rand::Rng,
) -> Option<((usize, usize), TwistingCocycle<R>)> {
    let c = &m.crit;
    let mut pairs: Vec<(usize, usize)> = (0..c.len())
        .flat_map(|x| (0..c.len()).map(move |y| (x, y)))
        .filter(|&(x, y)| {
            let d = m.degree(x, y);
            d >= 0 && d <= m.dga.top() as i64 && m.dga.basis.in_degree(d as usize).next().is_some()
        })
        .collect();
    pairs.shuffle(rng);
    for (x, y) in pairs {
        for _ in 0..8 {
            let delta = element(&m.dga, m.degree(x, y), rng);
            let old = m.entry(x, y).cloned().unwrap_or_default();
            let bad = m.with_entry(x, y, old.add_scaled_owned(m.ring(), &delta));
            if !bad.validate().is_ok() {
                return Some(((x, y), bad));
            }
        }
    }
    None
}

trait AddOwned<E> {
    fn add_scaled_owned<R: Ring<Elem = E>>(self, ring: &R, other: &Elem<E>) -> Elem<E>;
}

impl<E: Clone> AddOwned<E> for Elem<E> {
    fn add_scaled_owned<R: Ring<Elem = E>>(mut self, ring: &R, other: &Elem<E>) -> Elem<E> {
        self.add_lin(ring, other);
        self
    }
}

/// A random `φ₂` vanishing on the unit.
pub fn phi2<R: Ring>(module: &CoefficientModule<R>, rng: &mut impl rand::Rng, density: f64) -> Vec<(Vec<usize>, Elem<R::Elem>)> {
    let a = &module.dga;
    let mut out = Vec::new();
    for m in 0..module.basis.len() {
        for g in 0..a.basis.len() {
            if g == a.unit() {
                continue;
            }
            let d = module.basis.degree(m) + a.basis.degree(g) + 1;
            if d > module.top() || !rng.gen_bool(density) {
                continue;
            }
            let basis: Vec<usize> = module.basis.in_degree(d).collect();
            if let Some(&b) = basis.choose(rng) {
                let c = rng.gen_range(1..=2) * if rng.gen_bool(0.5) { 1 } else { -1 };
                out.push((vec![m, g], Elem::single(&module.dga.ring, b, module.dga.ring.from_i64(c))));
            }
        }
    }
    out
}

/// Transports `ν` along `φ = (id, φ₂, 0, …)`: returns the A∞ module `ν'` and `φ : M → (M, ν')`.
pub fn transport<R: Ring>(
    module: &Arc<CoefficientModule<R>>,
    phi2: Vec<(Vec<usize>, Elem<R::Elem>)>,
) -> Result<(Arc<CoefficientModule<R>>, AInfMorphism<R>)> {
    if !module.is_dg() {
        return Err(Error::Unsupported("transport from a module with ν_{≥3} ≠ 0".into()));
    }
    let ring = module.ring().clone();
    let a = &module.dga;
    let top = module.top();
    let mut p2: HashMap<Vec<usize>, Elem<R::Elem>> = phi2.iter().cloned().collect();
    p2.retain(|_, v| !v.is_empty());
    let phi2_at = |m: &Elem<R::Elem>, g: usize| -> Elem<R::Elem> {
        let mut out = Elem::new();
        for (i, c) in m.iter() {
            if let Some(v) = p2.get(&vec![*i, g]) {
                out.add_scaled(&ring, c, v);
            }
        }
        out
    };
    let unit = |i: usize| Elem::single(&ring, i, ring.one());
    // ν'_n tables, filled for n = 1, 2, ….
    let mut nu: Vec<HashMap<Vec<usize>, Elem<R::Elem>>> = Vec::new();
    let nu_at = |nu: &Vec<HashMap<Vec<usize>, Elem<R::Elem>>>, m: &Elem<R::Elem>, algs: &[usize]| -> Elem<R::Elem> {
        let mut out = Elem::new();
        if let Some(table) = nu.get(algs.len()) {
            for (i, c) in m.iter() {
                let mut key = vec![*i];
                key.extend_from_slice(algs);
                if let Some(v) = table.get(&key) {
                    out.add_scaled(&ring, c, v);
                }
            }
        }
        out
    };
    let mut t = Truncation::default();
    for big_n in 0..=top + 1 {
        let mut table = HashMap::new();
        let budget = top as i64 + 1 - big_n as i64;
        let mut keys = Vec::new();
        if big_n <= 2 {
            enumerate(module, big_n, budget, &mut keys);
        } else {
            // Beyond ν'_2 only the φ₂(m, a₁) ↦ ν'_{N−1} term survives.
            let mut seen = std::collections::BTreeSet::new();
            for prev in nu[big_n - 1].keys() {
                for (k, v) in &p2 {
                    if v.get(&prev[0]).is_some() {
                        let mut key = k.clone();
                        key.extend_from_slice(&prev[1..]);
                        if seen.insert(key.clone()) {
                            keys.push(key);
                        }
                    }
                }
            }
        }
        for key in keys {
            let m = key[0];
            let algs = &key[1..];
            let mut lhs = Elem::new();
            // φ₁ν_{N+1}
            if big_n <= 1 {
                lhs.add_lin(&ring, &module.nu_basis(&key, &mut t));
            }
            if big_n >= 1 {
                let inner = module.nu_basis(&key[..big_n], &mut t);
                let v = phi2_at(&inner, algs[big_n - 1]);
                lhs.add_scaled(&ring, &sign(&ring, big_n as i64), &v);
            }
            if big_n == 1 {
                let g = algs[0];
                let dg = a.d_basis(g);
                let mut v = Elem::new();
                for (h, c) in dg.iter() {
                    v.add_scaled(&ring, c, &phi2_at(&unit(m), *h));
                }
                let s = 1 + module.basis.degree(m) as i64;
                lhs.add_scaled(&ring, &sign(&ring, s), &v);
            }
            if big_n == 2 {
                let p = a.mul_basis(algs[0], algs[1], &mut t);
                let mut v = Elem::new();
                for (h, c) in p.iter() {
                    v.add_scaled(&ring, c, &phi2_at(&unit(m), *h));
                }
                lhs = lhs.minus(&ring, &v);
            }
            if big_n >= 1 {
                let first = phi2_at(&unit(m), algs[0]);
                let v = nu_at(&nu, &first, &algs[1..]);
                lhs.add_scaled(&ring, &sign(&ring, big_n as i64), &v);
            }
            if !lhs.is_empty() {
                table.insert(key.clone(), lhs);
            }
        }
        nu.push(table);
    }
    let entries: Vec<(Vec<usize>, Elem<R::Elem>)> = nu.into_iter().flat_map(|t| t.into_iter()).collect();
    let target = Arc::new(CoefficientModule::new(a.clone(), module.basis.clone(), entries)?);
    let mut phi: Vec<(Vec<usize>, Elem<R::Elem>)> = (0..module.basis.len()).map(|i| (vec![i], unit(i))).collect();
    phi.extend(phi2);
    let morphism = AInfMorphism::new(module.clone(), target.clone(), phi)?;
    Ok((target, morphism))
}

fn enumerate<R: Ring>(module: &CoefficientModule<R>, k: usize, budget: i64, out: &mut Vec<Vec<usize>>) {
    fn rec<R: Ring>(module: &CoefficientModule<R>, k: usize, budget: i64, key: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if key.len() == k + 1 {
            out.push(key.clone());
            return;
        }
        for g in 0..module.dga.basis.len() {
            let d = module.dga.basis.degree(g) as i64;
            if d <= budget {
                key.push(g);
                rec(module, k, budget - d, key, out);
                key.pop();
            }
        }
    }
    for m in 0..module.basis.len() {
        let d = module.basis.degree(m) as i64;
        if d <= budget {
            let mut key = vec![m];
            rec(module, k, budget - d, &mut key, out);
        }
    }
}

/// Outcome of [`fuzz`] on one complex.
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct FuzzStats {
    pub trials: usize,
    /// Perturbations where Maurer–Cartan and `∂² = 0` both held.
    pub valid: usize,
    /// Corruptions caught by both Maurer–Cartan and `∂²` on the regular module.
    pub corrupted: usize,
    pub failures: Vec<String>,
}

/// Random stabilizations and gauge transforms of the complex's cocycle, each
/// followed by a single-entry corruption.
///
/// Valid data must give `∂² = 0` on the complex's module and on the regular
/// module; corrupted data must fail Maurer–Cartan and `∂² = 0` on the regular module.
pub fn fuzz<R: Ring>(c: &crate::complex::EnrichedComplex<R>, trials: usize, rng: &mut impl rand::Rng) -> FuzzStats {
    use crate::complex::EnrichedComplex;
    let mut stats = FuzzStats::default();
    let m = &c.cocycle;
    let regular = Arc::new(CoefficientModule::regular(m.dga.clone()));
    let d2_ok = |module: &Arc<CoefficientModule<R>>, cy: &Arc<TwistingCocycle<R>>| -> Result<bool> {
        Ok(EnrichedComplex::build(module.clone(), cy.clone())?.complex.check_d_squared().is_ok())
    };
    for tag in 0..trials {
        stats.trials += 1;
        let p = rng.gen_range(0..m.crit.dim.max(1));
        let stable = match stabilize(m, p, &tag.to_string()) {
            Ok(s) => Arc::new(s),
            Err(e) => {
                stats.failures.push(format!("trial {tag}: {e}"));
                continue;
            }
        };
        let m1 = gauge(&stable, rng, 2).map(|(m1, _)| Arc::new(m1)).unwrap_or(stable);
        let mc = m1.validate().is_ok();
        match (d2_ok(&c.module, &m1), d2_ok(&regular, &m1)) {
            (Ok(true), Ok(true)) if mc => stats.valid += 1,
            (Err(e), _) | (_, Err(e)) => stats.failures.push(format!("trial {tag}: {e}")),
            _ => stats.failures.push(format!("trial {tag}: valid perturbation broke Maurer–Cartan or ∂² = 0")),
        }
        if let Some(((x, y), bad)) = corrupt(&m1, rng) {
            let bad = Arc::new(bad);
            let at = format!("({}, {})", bad.crit.label(x), bad.crit.label(y));
            match d2_ok(&regular, &bad) {
                Ok(false) if !bad.validate().is_ok() => stats.corrupted += 1,
                Err(e) => stats.failures.push(format!("trial {tag}: {e}")),
                _ => stats.failures.push(format!("trial {tag}: corruption at {at} went unnoticed")),
            }
        }
    }
    stats
}
