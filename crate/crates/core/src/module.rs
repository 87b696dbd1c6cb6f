//! DG and A∞ right modules, their morphisms, pullbacks and tensor products.

use std::collections::HashMap;
use std::sync::Arc;

use crate::dga::{check_degree, tensor_dga, Dga};
use crate::error::{Error, Result};
use crate::graded::{Elem, GradedBasis, GradedMap, Truncation};
use crate::report::Report;
use crate::ring::{odd, Ring};

/// Structure constants of a multilinear operation, keyed by `[m, a_1, …, a_k]`.
pub type OpTable<E> = HashMap<Vec<usize>, Elem<E>>;

/// Expands a multilinear operation over basis tuples.
pub fn multilinear<R: Ring>(
    ring: &R,
    factors: &[&Elem<R::Elem>],
    mut f: impl FnMut(&[usize]) -> Elem<R::Elem>,
) -> Elem<R::Elem> {
    let mut out = Elem::new();
    let mut key = Vec::with_capacity(factors.len());
    fn go<R: Ring>(
        ring: &R,
        factors: &[&Elem<R::Elem>],
        key: &mut Vec<usize>,
        coeff: R::Elem,
        f: &mut dyn FnMut(&[usize]) -> Elem<R::Elem>,
        out: &mut Elem<R::Elem>,
    ) {
        if key.len() == factors.len() {
            out.add_scaled(ring, &coeff, &f(key));
            return;
        }
        for (i, c) in factors[key.len()].iter() {
            key.push(*i);
            go(ring, factors, key, ring.mul(&coeff, c), f, out);
            key.pop();
        }
    }
    go(ring, factors, &mut key, ring.one(), &mut f, &mut out);
    out
}

/// Calls `f` on every tuple `(m, a_1, …, a_k)` whose degree sum is at most `budget`.
fn for_tuples(
    module: &GradedBasis,
    alg: &GradedBasis,
    k: usize,
    budget: i64,
    f: &mut dyn FnMut(&[usize]),
) {
    fn rec(alg: &GradedBasis, k: usize, budget: i64, key: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if key.len() == k + 1 {
            f(key);
            return;
        }
        for a in 0..alg.len() {
            let d = alg.degree(a) as i64;
            if d <= budget {
                key.push(a);
                rec(alg, k, budget - d, key, f);
                key.pop();
            }
        }
    }
    for m in 0..module.len() {
        let d = module.degree(m) as i64;
        if d <= budget {
            let mut key = vec![m];
            rec(alg, k, budget - d, &mut key, f);
        }
    }
}

/// A right A∞-module: operations `ν_n : M ⊗ A^{⊗(n−1)} → M` of degree `n − 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientModule<R: Ring> {
    pub dga: Arc<Dga<R>>,
    pub basis: GradedBasis,
    nu: Vec<OpTable<R::Elem>>,
}

impl<R: Ring> CoefficientModule<R> {
    /// Entries are `(key, value)` with `key = [m, a_1, …, a_{n−1}]`.
    pub fn new(dga: Arc<Dga<R>>, basis: GradedBasis, entries: Vec<(Vec<usize>, Elem<R::Elem>)>) -> Result<Self> {
        let mut nu: Vec<OpTable<R::Elem>> = Vec::new();
        for (key, value) in entries {
            let n = key.len();
            if n == 0 {
                return Err(Error::Invalid("empty operation key".into()));
            }
            let what = || format!("ν_{n}{}", tuple_label(&basis, &dga.basis, &key));
            if key[0] >= basis.len() || key[1..].iter().any(|&a| a >= dga.basis.len()) {
                return Err(Error::Invalid(format!("{} refers to a missing basis element", what())));
            }
            let deg = key_degree(&basis, &dga.basis, &key) + n as i64 - 2;
            if value.is_empty() {
                continue;
            }
            if deg < 0 || deg > basis.top() as i64 {
                return Err(Error::Degree(format!("{} lands in degree {deg}, outside the window", what())));
            }
            check_degree(&basis, &value, deg, what)?;
            while nu.len() < n {
                nu.push(HashMap::new());
            }
            nu[n - 1].insert(key, value);
        }
        while nu.len() < 2 {
            nu.push(HashMap::new());
        }
        Ok(CoefficientModule { dga, basis, nu })
    }

    /// `A` acting on itself: `ν₁ = μ₁`, `ν₂ = μ₂`.
    pub fn regular(dga: Arc<Dga<R>>) -> Self {
        let mut entries = Vec::new();
        for i in 0..dga.basis.len() {
            entries.push((vec![i], dga.d_basis(i).clone()));
        }
        for (i, j, x) in dga.products() {
            entries.push((vec![i, j], x.clone()));
        }
        let basis = dga.basis.clone();
        CoefficientModule::new(dga, basis, entries).unwrap()
    }

    /// The ring in degree 0 with `1·γ = ε(γ)` for degree-0 basis elements `γ`.
    pub fn trivial(dga: Arc<Dga<R>>, top: usize, eps: impl Fn(usize) -> R::Elem) -> Self {
        let ring = dga.ring.clone();
        let basis = GradedBasis::new(top, vec![("1".into(), 0)]).unwrap();
        let entries = dga
            .basis
            .in_degree(0)
            .map(|g| (vec![0, g], Elem::single(&ring, 0, eps(g))))
            .collect();
        CoefficientModule::new(dga, basis, entries).unwrap()
    }

    pub fn ring(&self) -> &R {
        &self.dga.ring
    }

    pub fn top(&self) -> usize {
        self.basis.top()
    }

    /// Largest `n` with a nonzero `ν_n`.
    pub fn n_max(&self) -> usize {
        (1..=self.nu.len()).rev().find(|&n| !self.nu[n - 1].is_empty()).unwrap_or(1).max(2)
    }

    pub fn is_dg(&self) -> bool {
        self.n_max() <= 2
    }

    pub fn entries(&self, n: usize) -> Vec<(&Vec<usize>, &Elem<R::Elem>)> {
        let mut v: Vec<_> = self.nu.get(n - 1).map(|t| t.iter().collect()).unwrap_or_default();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    /// `ν_n` on a basis tuple.
    pub fn nu_basis(&self, key: &[usize], trunc: &mut Truncation) -> Elem<R::Elem> {
        let n = key.len();
        if n > self.nu.len() {
            return Elem::new();
        }
        let deg = key_degree(&self.basis, &self.dga.basis, key) + n as i64 - 2;
        if deg > self.top() as i64 {
            if n <= self.n_max() {
                trunc.hit();
            }
            return Elem::new();
        }
        self.nu[n - 1].get(key).cloned().unwrap_or_default()
    }

    /// `ν_n(m ⊗ a_1 ⊗ …)` extended multilinearly.
    pub fn nu(&self, m: &Elem<R::Elem>, algs: &[&Elem<R::Elem>], trunc: &mut Truncation) -> Elem<R::Elem> {
        let mut factors = vec![m];
        factors.extend_from_slice(algs);
        multilinear(self.ring(), &factors, |k| self.nu_basis(k, trunc))
    }

    /// Replaces one structure constant without checks; used to build deliberate violations.
    pub fn with_entry(&self, key: Vec<usize>, value: Elem<R::Elem>) -> Self {
        let mut out = self.clone();
        let n = key.len();
        while out.nu.len() < n {
            out.nu.push(HashMap::new());
        }
        out.nu[n - 1].insert(key, value);
        out
    }

    pub fn tuple(&self, key: &[usize]) -> String {
        tuple_label(&self.basis, &self.dga.basis, key)
    }

    /// A∞ relations for `N = 1..=depth` on all basis tuples with in-window output.
    pub fn validate(&self, depth: usize) -> Report {
        let ring = self.ring();
        let a = &self.dga;
        let mut rep = Report::new("module");
        for big_n in 1..=depth {
            let budget = self.top() as i64 + 3 - big_n as i64;
            for_tuples(&self.basis, &a.basis, big_n - 1, budget, &mut |key| {
                let mut t = Truncation::default();
                let mut total = Elem::new();
                let m = &key[0];
                let algs = &key[1..];
                for s in 1..=big_n {
                    let tt = big_n - s;
                    let inner = self.nu_basis(&key[..s], &mut t);
                    let rest: Vec<Elem<R::Elem>> = algs[s - 1..].iter().map(|&x| unit_vec(ring, x)).collect();
                    let refs: Vec<&Elem<R::Elem>> = rest.iter().collect();
                    let v = self.nu(&inner, &refs, &mut t);
                    total.add_scaled(ring, &sign(ring, (s * tt) as i64), &v);
                }
                let mut prefix = self.basis.degree(*m) as i64;
                for r in 1..big_n {
                    let d = a.d_basis(algs[r - 1]).clone();
                    let mut ins: Vec<Elem<R::Elem>> = algs.iter().map(|&x| unit_vec(ring, x)).collect();
                    ins[r - 1] = d;
                    let refs: Vec<&Elem<R::Elem>> = ins.iter().collect();
                    let v = self.nu(&unit_vec(ring, *m), &refs, &mut t);
                    total.add_scaled(ring, &sign(ring, big_n as i64 - 1 + prefix), &v);
                    prefix += a.basis.degree(algs[r - 1]) as i64;
                }
                for r in 1..big_n.saturating_sub(1) {
                    let p = a.mul_basis(algs[r - 1], algs[r], &mut t);
                    let mut ins: Vec<Elem<R::Elem>> = Vec::new();
                    for (i, &x) in algs.iter().enumerate() {
                        if i == r - 1 {
                            ins.push(p.clone());
                        } else if i != r {
                            ins.push(unit_vec(ring, x));
                        }
                    }
                    let refs: Vec<&Elem<R::Elem>> = ins.iter().collect();
                    let v = self.nu(&unit_vec(ring, *m), &refs, &mut t);
                    total.add_scaled(ring, &sign(ring, r as i64), &v);
                }
                if !t.clean() {
                    rep.untested += 1;
                    return;
                }
                rep.checked += 1;
                if !total.is_empty() {
                    rep.fail(
                        format!("a-infinity relation N = {big_n}"),
                        self.tuple(key),
                        format!("residual {}", self.basis.render(ring, &total)),
                    );
                }
            });
        }
        rep
    }

    pub fn default_depth(&self) -> usize {
        self.n_max() + 2
    }
}

fn unit_vec<R: Ring>(ring: &R, i: usize) -> Elem<R::Elem> {
    Elem::single(ring, i, ring.one())
}

pub(crate) fn sign<R: Ring>(ring: &R, e: i64) -> R::Elem {
    ring.signed(odd(e), &ring.one())
}

fn key_degree(module: &GradedBasis, alg: &GradedBasis, key: &[usize]) -> i64 {
    module.degree(key[0]) as i64 + key[1..].iter().map(|&a| alg.degree(a) as i64).sum::<i64>()
}

fn tuple_label(module: &GradedBasis, alg: &GradedBasis, key: &[usize]) -> String {
    let mut parts = vec![module.label(key[0]).to_string()];
    parts.extend(key[1..].iter().map(|&a| alg.label(a).to_string()));
    format!("({})", parts.join(", "))
}

/// A family `φ_n : M ⊗ A^{⊗(n−1)} → N` of degree `n − 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct AInfMorphism<R: Ring> {
    pub source: Arc<CoefficientModule<R>>,
    pub target: Arc<CoefficientModule<R>>,
    phi: Vec<OpTable<R::Elem>>,
}

impl<R: Ring> AInfMorphism<R> {
    pub fn new(
        source: Arc<CoefficientModule<R>>,
        target: Arc<CoefficientModule<R>>,
        entries: Vec<(Vec<usize>, Elem<R::Elem>)>,
    ) -> Result<Self> {
        if source.dga != target.dga {
            return Err(Error::Mismatch("morphism between modules over different algebras".into()));
        }
        let mut phi: Vec<OpTable<R::Elem>> = vec![HashMap::new()];
        for (key, value) in entries {
            let n = key.len();
            if n == 0 || key[0] >= source.basis.len() || key[1..].iter().any(|&a| a >= source.dga.basis.len()) {
                return Err(Error::Invalid("malformed morphism key".into()));
            }
            if value.is_empty() {
                continue;
            }
            let deg = key_degree(&source.basis, &source.dga.basis, &key) + n as i64 - 1;
            let what = || format!("φ_{n}{}", source.tuple(&key));
            if deg > target.top() as i64 {
                return Err(Error::Degree(format!("{} lands outside the target window", what())));
            }
            check_degree(&target.basis, &value, deg, what)?;
            while phi.len() < n {
                phi.push(HashMap::new());
            }
            phi[n - 1].insert(key, value);
        }
        Ok(AInfMorphism { source, target, phi })
    }

    /// `φ₁ = id`, `φ_{≥2} = 0`.
    pub fn identity(module: Arc<CoefficientModule<R>>) -> Self {
        let ring = module.ring().clone();
        let entries = (0..module.basis.len()).map(|i| (vec![i], unit_vec(&ring, i))).collect();
        AInfMorphism::new(module.clone(), module, entries).unwrap()
    }

    pub fn n_max(&self) -> usize {
        (1..=self.phi.len()).rev().find(|&n| !self.phi[n - 1].is_empty()).unwrap_or(1)
    }

    pub fn is_strict(&self) -> bool {
        self.n_max() <= 1
    }

    pub fn entries(&self, n: usize) -> Vec<(&Vec<usize>, &Elem<R::Elem>)> {
        let mut v: Vec<_> = self.phi.get(n - 1).map(|t| t.iter().collect()).unwrap_or_default();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    /// Drops every `φ_n` with `n ≥ 2`.
    pub fn truncated_to_strict(&self) -> Self {
        AInfMorphism { source: self.source.clone(), target: self.target.clone(), phi: vec![self.phi[0].clone()] }
    }

    pub fn phi_basis(&self, key: &[usize], trunc: &mut Truncation) -> Elem<R::Elem> {
        let n = key.len();
        if n > self.phi.len() {
            return Elem::new();
        }
        let deg = key_degree(&self.source.basis, &self.source.dga.basis, key) + n as i64 - 1;
        if deg > self.target.top() as i64 {
            if n <= self.n_max() {
                trunc.hit();
            }
            return Elem::new();
        }
        self.phi[n - 1].get(key).cloned().unwrap_or_default()
    }

    pub fn phi(&self, m: &Elem<R::Elem>, algs: &[&Elem<R::Elem>], trunc: &mut Truncation) -> Elem<R::Elem> {
        let mut factors = vec![m];
        factors.extend_from_slice(algs);
        multilinear(self.source.ring(), &factors, |k| self.phi_basis(k, trunc))
    }

    pub fn default_depth(&self) -> usize {
        self.n_max().max(self.source.n_max()).max(self.target.n_max()) + 1
    }

    /// Morphism relations for `N = 0..=depth` on tuples `(m, a_1, …, a_N)`.
    pub fn validate(&self, depth: usize) -> Report {
        let src = &self.source;
        let tgt = &self.target;
        let ring = src.ring();
        let a = &src.dga;
        let mut rep = Report::new("morphism");
        for big_n in 0..=depth {
            let budget = tgt.top() as i64 + 1 - big_n as i64;
            for_tuples(&src.basis, &a.basis, big_n, budget, &mut |key| {
                let mut t = Truncation::default();
                let mut total = Elem::new();
                let m = key[0];
                let algs = &key[1..];
                let singles = |range: &[usize]| -> Vec<Elem<R::Elem>> { range.iter().map(|&x| unit_vec(ring, x)).collect() };
                for k in 0..=big_n {
                    let n = big_n - k;
                    let inner = src.nu_basis(&key[..k + 1], &mut t);
                    let rest = singles(&algs[k..]);
                    let refs: Vec<&Elem<R::Elem>> = rest.iter().collect();
                    let v = self.phi(&inner, &refs, &mut t);
                    total.add_scaled(ring, &sign(ring, (n * (k + 1)) as i64), &v);
                    let left = self.phi_basis(&key[..k + 1], &mut t);
                    let w = tgt.nu(&left, &refs, &mut t);
                    total.add_scaled(ring, &sign(ring, (k * n) as i64 + 1), &w);
                }
                let mut prefix = src.basis.degree(m) as i64;
                for r in 1..=big_n {
                    let mut ins = singles(algs);
                    ins[r - 1] = a.d_basis(algs[r - 1]).clone();
                    let refs: Vec<&Elem<R::Elem>> = ins.iter().collect();
                    let v = self.phi(&unit_vec(ring, m), &refs, &mut t);
                    total.add_scaled(ring, &sign(ring, big_n as i64 + prefix), &v);
                    prefix += a.basis.degree(algs[r - 1]) as i64;
                }
                for r in 1..big_n {
                    let p = a.mul_basis(algs[r - 1], algs[r], &mut t);
                    let mut ins = Vec::new();
                    for (i, &x) in algs.iter().enumerate() {
                        if i == r - 1 {
                            ins.push(p.clone());
                        } else if i != r {
                            ins.push(unit_vec(ring, x));
                        }
                    }
                    let refs: Vec<&Elem<R::Elem>> = ins.iter().collect();
                    let v = self.phi(&unit_vec(ring, m), &refs, &mut t);
                    total.add_scaled(ring, &sign(ring, r as i64), &v);
                }
                if !t.clean() {
                    rep.untested += 1;
                    return;
                }
                rep.checked += 1;
                if !total.is_empty() {
                    rep.fail(
                        format!("morphism relation N = {big_n}"),
                        src.tuple(key),
                        format!("residual {}", tgt.basis.render(ring, &total)),
                    );
                }
            });
        }
        rep
    }
}

/// A degree-0 map of DGAs given on basis elements.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraMorphism<R: Ring> {
    pub source: Arc<Dga<R>>,
    pub target: Arc<Dga<R>>,
    pub map: GradedMap<R::Elem>,
}

impl<R: Ring> AlgebraMorphism<R> {
    pub fn new(source: Arc<Dga<R>>, target: Arc<Dga<R>>, images: Vec<Elem<R::Elem>>) -> Result<Self> {
        if images.len() != source.basis.len() {
            return Err(Error::Invalid("algebra morphism needs one image per basis element".into()));
        }
        for (i, x) in images.iter().enumerate() {
            let deg = source.basis.degree(i) as i64;
            check_degree(&target.basis, x, deg, || format!("image of {}", source.basis.label(i)))?;
        }
        Ok(AlgebraMorphism { source, target, map: GradedMap { degree: 0, images } })
    }

    pub fn identity(dga: Arc<Dga<R>>) -> Self {
        let map = GradedMap::identity(&dga.ring, dga.basis.len());
        AlgebraMorphism { source: dga.clone(), target: dga, map }
    }

    pub fn apply(&self, x: &Elem<R::Elem>) -> Elem<R::Elem> {
        self.map.apply(&self.source.ring, x)
    }

    /// `self ∘ first`
    pub fn after(&self, first: &AlgebraMorphism<R>) -> Result<Self> {
        if first.target != self.source {
            return Err(Error::Mismatch("algebra morphisms do not compose".into()));
        }
        Ok(AlgebraMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            map: self.map.compose(&self.source.ring, &first.map),
        })
    }

    /// Chain map, multiplicativity and unit checks on basis elements.
    pub fn validate(&self) -> Report {
        let (s, t) = (&self.source, &self.target);
        let ring = &s.ring;
        let mut rep = Report::new("algebra morphism");
        for i in 0..s.basis.len() {
            rep.checked += 1;
            let lhs = t.d(&self.map.images[i]);
            let rhs = self.apply(s.d_basis(i));
            if lhs != rhs {
                rep.fail("chain map", s.basis.label(i), format!("μ₁g − gμ₁ = {}", t.render(&lhs.minus(ring, &rhs))));
            }
            for j in 0..s.basis.len() {
                if s.basis.degree(i) + s.basis.degree(j) > s.top() {
                    continue;
                }
                let mut tr = Truncation::default();
                let lhs = self.apply(&s.mul_basis(i, j, &mut tr));
                let rhs = t.multiply(&self.map.images[i], &self.map.images[j], &mut tr);
                if !tr.clean() {
                    rep.untested += 1;
                    continue;
                }
                rep.checked += 1;
                if lhs != rhs {
                    rep.fail(
                        "multiplicativity",
                        format!("({}, {})", s.basis.label(i), s.basis.label(j)),
                        t.render(&lhs.minus(ring, &rhs)),
                    );
                }
            }
        }
        rep.checked += 1;
        if self.apply(&s.unit_elem()) != t.unit_elem() {
            rep.fail("unit", s.basis.label(s.unit()), "unit is not preserved");
        }
        rep
    }
}

/// Restriction of scalars: `ν_n^{g*M}(α ⊗ γ_1 ⊗ …) = ν_n^M(α ⊗ gγ_1 ⊗ …)`.
pub fn pullback_module<R: Ring>(m: &CoefficientModule<R>, g: &AlgebraMorphism<R>) -> Result<CoefficientModule<R>> {
    if *g.target != *m.dga {
        return Err(Error::Mismatch("pullback along a morphism into a different algebra".into()));
    }
    let ring = m.ring();
    let a = &g.source;
    let mut entries = Vec::new();
    for n in 1..=m.n_max() {
        let budget = m.top() as i64 + 2 - n as i64;
        for_tuples(&m.basis, &a.basis, n - 1, budget, &mut |key| {
            let images: Vec<Elem<R::Elem>> = key[1..].iter().map(|&x| g.map.images[x].clone()).collect();
            let refs: Vec<&Elem<R::Elem>> = images.iter().collect();
            let mut t = Truncation::default();
            let v = m.nu(&unit_vec(ring, key[0]), &refs, &mut t);
            if !v.is_empty() {
                entries.push((key.to_vec(), v));
            }
        });
    }
    CoefficientModule::new(g.source.clone(), m.basis.clone(), entries)
}

/// `F ⊗ G` over `A ⊗ B` for DG modules.
pub fn tensor_module<R: Ring>(f: &CoefficientModule<R>, g: &CoefficientModule<R>) -> Result<CoefficientModule<R>> {
    if !f.is_dg() || !g.is_dg() {
        return Err(Error::Unsupported("tensor products of modules with ν_{≥3} ≠ 0".into()));
    }
    let ring = f.ring().clone();
    let ab = Arc::new(tensor_dga(&f.dga, &g.dga));
    let pairs = &ab.factors().unwrap().pairs;
    let top = f.top().min(g.top());
    let mut elems = Vec::new();
    let mut mpairs = Vec::new();
    for i in 0..f.basis.len() {
        for j in 0..g.basis.len() {
            let d = f.basis.degree(i) + g.basis.degree(j);
            if d <= top {
                elems.push((format!("{}⊗{}", f.basis.label(i), g.basis.label(j)), d));
                mpairs.push((i, j));
            }
        }
    }
    let basis = GradedBasis::new(top, elems)?;
    let pos: HashMap<(usize, usize), usize> = mpairs
        .iter()
        .map(|&(i, j)| ((i, j), basis.find(&format!("{}⊗{}", f.basis.label(i), g.basis.label(j))).unwrap()))
        .collect();
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
    let mut entries = Vec::new();
    for (&(i, j), &k) in &pos {
        let mut t = Truncation::default();
        let d1 = f.nu_basis(&[i], &mut t);
        let d2 = g.nu_basis(&[j], &mut t);
        let mut d = embed(&d1, &unit_vec(&ring, j), false);
        d.add_lin(&ring, &embed(&unit_vec(&ring, i), &d2, odd(f.basis.degree(i) as i64)));
        entries.push((vec![k], d));
        for (l, &(p, q)) in pairs.iter().enumerate() {
            if basis.degree(k) + ab.basis.degree(l) > top {
                continue;
            }
            let x = f.nu_basis(&[i, p], &mut t);
            let y = g.nu_basis(&[j, q], &mut t);
            let negate = odd((g.basis.degree(j) * f.dga.basis.degree(p)) as i64);
            entries.push((vec![k, l], embed(&x, &y, negate)));
        }
    }
    CoefficientModule::new(ab, basis, entries)
}

/// The symmetry `γ₁ ⊗ γ₂ ↦ (−1)^{|γ₁||γ₂|} γ₂ ⊗ γ₁` of `A ⊗ A`.
pub fn swap_morphism<R: Ring>(aa: &Arc<Dga<R>>) -> Result<AlgebraMorphism<R>> {
    let fac = aa.factors().ok_or_else(|| Error::Invalid("swap needs a tensor algebra".into()))?;
    if fac.left != fac.right {
        return Err(Error::Invalid("swap needs equal tensor factors".into()));
    }
    let ring = aa.ring.clone();
    let pos: HashMap<(usize, usize), usize> = fac.pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let images = fac
        .pairs
        .iter()
        .map(|&(i, j)| {
            let negate = odd((fac.left.basis.degree(i) * fac.left.basis.degree(j)) as i64);
            Elem::single(&ring, pos[&(j, i)], ring.signed(negate, &ring.one()))
        })
        .collect();
    AlgebraMorphism::new(aa.clone(), aa.clone(), images)
}
