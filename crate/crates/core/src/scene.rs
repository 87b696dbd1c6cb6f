//! Scene documents: a single JSON file naming every algebraic datum and the computations to run.
//!
//! Graded elements are lists of `[coefficient, label]` pairs. Coefficients are
//! JSON integers or strings parsed by the base ring (`"1 - t"`, `"3/4"`).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cocycle::{kunneth, pushforward, CritSet, HomotopyCocycle, TransferCocycle, TwistingCocycle};
use crate::complex::EnrichedComplex;
use crate::dga::{tensor_dga, Dga};
use crate::error::{Error, Result};
use crate::graded::{Elem, GradedBasis};
use crate::maps::{check_homotopy, homotopy_map, induced_map, kunneth_map, switch_map, transfer_map, ChainMap};
use crate::module::{pullback_module, swap_morphism, tensor_module, AInfMorphism, AlgebraMorphism, CoefficientModule};
use crate::product::ProductDatum;
use crate::report::Report;
use crate::ring::{Integers, Laurent, PrimeField, Rationals, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coef {
    Int(i64),
    Text(String),
}

impl From<i64> for Coef {
    fn from(n: i64) -> Self {
        Coef::Int(n)
    }
}

impl From<&str> for Coef {
    fn from(s: &str) -> Self {
        Coef::Text(s.into())
    }
}

pub type ElemDoc = Vec<(Coef, String)>;
pub type Basis = Vec<(String, usize)>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitDga {
    pub window: usize,
    pub basis: Basis,
    pub unit: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub d: BTreeMap<String, ElemDoc>,
    #[serde(default)]
    pub products: Vec<(String, String, ElemDoc)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialDga {
    /// Degree of the generator `u`.
    pub degree: usize,
    pub window: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DgaDoc {
    Explicit(ExplicitDga),
    Tensor {
        tensor: (String, String),
    },
    Polynomial {
        polynomial: PolynomialDga,
    },
    Scalars {
        scalars: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraMapDoc {
    Explicit {
        source: String,
        target: String,
        images: BTreeMap<String, ElemDoc>,
    },
    Swap {
        swap: String,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitModule {
    pub dga: String,
    pub window: usize,
    pub basis: Basis,
    /// `[[m, a_1, …], value]` for `ν_n(m, a_1, …)`.
    pub nu: Vec<(Vec<String>, ElemDoc)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrivialModule {
    pub trivial: String,
    pub window: usize,
    /// Values of the augmentation on degree-0 basis elements; missing ones are 0, the unit is 1.
    #[serde(default)]
    pub augmentation: BTreeMap<String, Coef>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleDoc {
    Explicit(ExplicitModule),
    Trivial(TrivialModule),
    Regular { regular: String },
    Tensor { tensor: (String, String) },
    Pullback { pullback: String, along: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CritDoc {
    Points { dim: usize, points: Basis },
    Product { product: (String, String) },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CocycleDoc {
    Explicit { dga: String, crit: String, entries: Vec<(String, String, ElemDoc)> },
    Kunneth { kunneth: (String, String), dga: String },
    Pushforward { pushforward: String, along: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransferDoc {
    pub source: String,
    pub target: String,
    #[serde(default)]
    pub shift: i64,
    pub entries: Vec<(String, String, ElemDoc)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomotopyDoc {
    pub from: String,
    pub to: String,
    pub entries: Vec<(String, String, ElemDoc)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub source: String,
    pub target: String,
    pub phi: Vec<(Vec<String>, ElemDoc)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductDoc {
    /// Complex names, see `run.complexes`.
    pub base: String,
    pub pair: String,
    pub diagonal: String,
    pub pulled: String,
    /// Transfer from the pair cocycle to the pushed-forward cocycle.
    pub shriek: String,
    /// Morphism `Δ*(F ⊗ F) → F`.
    pub multiplication: String,
    /// Module basis label of the unit.
    pub unit: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub module: String,
    pub cocycle: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MapDoc {
    Transfer { transfer: String, source: String, target: String },
    Homotopy { homotopy: String, source: String, target: String },
    Induced { induced: String, source: String, target: String },
    Kunneth { kunneth: (String, String), product: String },
    Switch { switch: (String, String) },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunDoc {
    #[serde(default)]
    pub complexes: BTreeMap<String, ComplexDoc>,
    #[serde(default)]
    pub maps: BTreeMap<String, MapDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneDoc {
    pub ring: String,
    pub dga: BTreeMap<String, DgaDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub algebra_maps: BTreeMap<String, AlgebraMapDoc>,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleDoc>,
    #[serde(default)]
    pub crit: BTreeMap<String, CritDoc>,
    #[serde(default)]
    pub cocycles: BTreeMap<String, CocycleDoc>,
    #[serde(default)]
    pub transfers: BTreeMap<String, TransferDoc>,
    #[serde(default)]
    pub homotopies: BTreeMap<String, HomotopyDoc>,
    #[serde(default)]
    pub morphisms: BTreeMap<String, MorphismDoc>,
    #[serde(default)]
    pub products: BTreeMap<String, ProductDoc>,
    #[serde(default)]
    pub run: RunDoc,
}

impl SceneDoc {
    pub fn from_json(text: &str) -> Result<Self, SceneError> {
        serde_json::from_str(text).map_err(|e| SceneError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scene documents always serialize")
    }

    /// Replaces the window of every generated algebra and trivial module.
    pub fn with_window(mut self, n: usize) -> Self {
        for d in self.dga.values_mut() {
            match d {
                DgaDoc::Polynomial { polynomial } => polynomial.window = n,
                DgaDoc::Scalars { scalars } => *scalars = n,
                DgaDoc::Explicit(e) if e.basis.iter().all(|(_, d)| *d == 0) => e.window = n,
                _ => {}
            }
        }
        for m in self.modules.values_mut() {
            if let ModuleDoc::Trivial(t) = m {
                t.window = n;
            }
        }
        self
    }
}

/// Why a scene could not be loaded.
#[derive(Clone, Debug, PartialEq)]
pub enum SceneError {
    /// Malformed JSON, with serde's line and column.
    Parse(String),
    /// Unresolved names, degree errors and other structural problems.
    Build(Error),
    /// Validators that reported violations.
    Validation(Vec<Report>),
}

impl fmt::Display for SceneError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SceneError::Parse(e) => write!(f, "parse error: {e}"),
            SceneError::Build(e) => write!(f, "{e}"),
            SceneError::Validation(reps) => {
                writeln!(f, "validation failed:")?;
                for r in reps.iter().filter(|r| !r.is_ok()) {
                    write!(f, "{r}")?;
                }
                Ok(())
            }
        }
    }
}

impl std::error::Error for SceneError {}

impl From<Error> for SceneError {
    fn from(e: Error) -> Self {
        SceneError::Build(e)
    }
}

/// A resolved scene over a concrete base ring.
#[derive(Clone, Debug)]
pub struct Scene<R: Ring> {
    pub doc: SceneDoc,
    pub ring: R,
    pub dgas: BTreeMap<String, Arc<Dga<R>>>,
    pub algebra_maps: BTreeMap<String, Arc<AlgebraMorphism<R>>>,
    pub modules: BTreeMap<String, Arc<CoefficientModule<R>>>,
    pub crits: BTreeMap<String, Arc<CritSet>>,
    pub cocycles: BTreeMap<String, Arc<TwistingCocycle<R>>>,
    pub transfers: BTreeMap<String, Arc<TransferCocycle<R>>>,
    pub homotopies: BTreeMap<String, Arc<HomotopyCocycle<R>>>,
    pub morphisms: BTreeMap<String, Arc<AInfMorphism<R>>>,
    /// Filled by `finish`.
    pub complexes: BTreeMap<String, EnrichedComplex<R>>,
    pub products: BTreeMap<String, ProductDatum<R>>,
    /// Kunneth entries carry the forward map; the inverse is stored under `name⁻¹`.
    pub maps: BTreeMap<String, ChainMap<R>>,
}

impl<R: Ring> PartialEq for Scene<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.dgas == other.dgas
            && self.algebra_maps == other.algebra_maps
            && self.modules == other.modules
            && self.crits == other.crits
            && self.cocycles == other.cocycles
            && self.transfers == other.transfers
            && self.homotopies == other.homotopies
            && self.morphisms == other.morphisms
            && self.complexes == other.complexes
            && self.maps == other.maps
    }
}

fn unresolved(kind: &str, name: &str) -> Error {
    Error::Unresolved(format!("{kind} {name:?}"))
}

fn get<T: Clone>(map: &BTreeMap<String, T>, kind: &str, name: &str) -> Result<T> {
    map.get(name).cloned().ok_or_else(|| unresolved(kind, name))
}

struct Resolver<'a, R: Ring> {
    doc: &'a SceneDoc,
    scene: Scene<R>,
    visiting: BTreeSet<(String, String)>,
}

impl<'a, R: Ring> Resolver<'a, R> {
    fn coef(&self, c: &Coef) -> Result<R::Elem> {
        match c {
            Coef::Int(n) => Ok(self.scene.ring.from_i64(*n)),
            Coef::Text(s) => self.scene.ring.parse(s),
        }
    }

    fn elem(&self, basis: &GradedBasis, e: &ElemDoc) -> Result<Elem<R::Elem>> {
        let ring = &self.scene.ring;
        let mut out = Elem::new();
        for (c, label) in e {
            let i = basis.find(label).ok_or_else(|| unresolved("basis element", label))?;
            out.add_term(ring, i, self.coef(c)?);
        }
        Ok(out)
    }

    fn enter(&mut self, kind: &str, name: &str) -> Result<()> {
        if !self.visiting.insert((kind.into(), name.into())) {
            return Err(Error::Invalid(format!("{kind} {name:?} is defined in terms of itself")));
        }
        Ok(())
    }

    fn leave(&mut self, kind: &str, name: &str) {
        self.visiting.remove(&(kind.to_string(), name.to_string()));
    }

    fn dga(&mut self, name: &str) -> Result<Arc<Dga<R>>> {
        if let Some(d) = self.scene.dgas.get(name) {
            return Ok(d.clone());
        }
        let doc = self.doc.dga.get(name).ok_or_else(|| unresolved("dga", name))?;
        self.enter("dga", name)?;
        let ring = self.scene.ring.clone();
        let d = match doc {
            DgaDoc::Explicit(e) => {
                let basis = GradedBasis::new(e.window, e.basis.clone())?;
                let unit = basis.lookup(&e.unit)?;
                let mut mu1 = Vec::new();
                for (l, v) in &e.d {
                    mu1.push((basis.lookup(l)?, self.elem(&basis, v)?));
                }
                let mut mu2 = Vec::new();
                for (a, b, v) in &e.products {
                    mu2.push(((basis.lookup(a)?, basis.lookup(b)?), self.elem(&basis, v)?));
                }
                Dga::new(ring, basis, mu1, mu2, unit)?
            }
            DgaDoc::Tensor { tensor: (a, b) } => {
                let (a, b) = (self.dga(a)?, self.dga(b)?);
                tensor_dga(&a, &b)
            }
            DgaDoc::Polynomial { polynomial } => {
                if polynomial.degree == 0 {
                    return Err(Error::Invalid(format!("polynomial dga {name:?} needs a generator of positive degree")));
                }
                Dga::polynomial(ring, polynomial.degree, polynomial.window)
            }
            DgaDoc::Scalars { scalars } => Dga::scalars(ring, *scalars),
        };
        self.leave("dga", name);
        let d = Arc::new(d);
        self.scene.dgas.insert(name.into(), d.clone());
        Ok(d)
    }

    fn algebra_map(&mut self, name: &str) -> Result<Arc<AlgebraMorphism<R>>> {
        if let Some(g) = self.scene.algebra_maps.get(name) {
            return Ok(g.clone());
        }
        let doc = self.doc.algebra_maps.get(name).ok_or_else(|| unresolved("algebra map", name))?;
        let g = match doc {
            AlgebraMapDoc::Explicit { source, target, images } => {
                let (s, t) = (self.dga(source)?, self.dga(target)?);
                for l in images.keys() {
                    s.basis.lookup(l)?;
                }
                let imgs = (0..s.basis.len())
                    .map(|i| images.get(s.basis.label(i)).map_or(Ok(Elem::new()), |v| self.elem(&t.basis, v)))
                    .collect::<Result<Vec<_>>>()?;
                AlgebraMorphism::new(s, t, imgs)?
            }
            AlgebraMapDoc::Swap { swap } => swap_morphism(&self.dga(swap)?)?,
        };
        let g = Arc::new(g);
        self.scene.algebra_maps.insert(name.into(), g.clone());
        Ok(g)
    }

    fn module(&mut self, name: &str) -> Result<Arc<CoefficientModule<R>>> {
        if let Some(m) = self.scene.modules.get(name) {
            return Ok(m.clone());
        }
        let doc = self.doc.modules.get(name).ok_or_else(|| unresolved("module", name))?;
        self.enter("module", name)?;
        let m = match doc {
            ModuleDoc::Explicit(e) => {
                let a = self.dga(&e.dga)?;
                let basis = GradedBasis::new(e.window, e.basis.clone())?;
                let mut entries = Vec::new();
                for (key, v) in &e.nu {
                    let (m, algs) = key.split_first().ok_or_else(|| Error::Invalid(format!("empty ν key in {name:?}")))?;
                    let mut k = vec![basis.lookup(m)?];
                    for l in algs {
                        k.push(a.basis.lookup(l)?);
                    }
                    entries.push((k, self.elem(&basis, v)?));
                }
                CoefficientModule::new(a, basis, entries)?
            }
            ModuleDoc::Trivial(t) => {
                let a = self.dga(&t.trivial)?;
                let mut eps = vec![self.scene.ring.zero(); a.basis.len()];
                eps[a.unit()] = self.scene.ring.one();
                for (l, c) in &t.augmentation {
                    eps[a.basis.lookup(l)?] = self.coef(c)?;
                }
                CoefficientModule::trivial(a, t.window, |g| eps[g].clone())
            }
            ModuleDoc::Regular { regular } => CoefficientModule::regular(self.dga(regular)?),
            ModuleDoc::Tensor { tensor: (f, g) } => {
                let (f, g) = (self.module(f)?, self.module(g)?);
                tensor_module(&f, &g)?
            }
            ModuleDoc::Pullback { pullback, along } => {
                let m = self.module(pullback)?;
                let g = self.algebra_map(along)?;
                pullback_module(&m, &g)?
            }
        };
        self.leave("module", name);
        let m = Arc::new(m);
        self.scene.modules.insert(name.into(), m.clone());
        Ok(m)
    }

    fn crit(&mut self, name: &str) -> Result<Arc<CritSet>> {
        if let Some(c) = self.scene.crits.get(name) {
            return Ok(c.clone());
        }
        let doc = self.doc.crit.get(name).ok_or_else(|| unresolved("critical set", name))?;
        self.enter("crit", name)?;
        let c = match doc {
            CritDoc::Points { dim, points } => CritSet::new(*dim, points.clone())?,
            CritDoc::Product { product: (a, b) } => {
                let (a, b) = (self.crit(a)?, self.crit(b)?);
                CritSet::product(&a, &b)
            }
        };
        self.leave("crit", name);
        let c = Arc::new(c);
        self.scene.crits.insert(name.into(), c.clone());
        Ok(c)
    }

    fn pairs(
        &self,
        dga: &Dga<R>,
        rows: &CritSet,
        cols: &CritSet,
        entries: &[(String, String, ElemDoc)],
    ) -> Result<Vec<((usize, usize), Elem<R::Elem>)>> {
        entries
            .iter()
            .map(|(x, y, v)| Ok(((rows.lookup(x)?, cols.lookup(y)?), self.elem(&dga.basis, v)?)))
            .collect()
    }

    fn cocycle(&mut self, name: &str) -> Result<Arc<TwistingCocycle<R>>> {
        if let Some(c) = self.scene.cocycles.get(name) {
            return Ok(c.clone());
        }
        let doc = self.doc.cocycles.get(name).ok_or_else(|| unresolved("cocycle", name))?;
        self.enter("cocycle", name)?;
        let c = match doc {
            CocycleDoc::Explicit { dga, crit, entries } => {
                let (a, x) = (self.dga(dga)?, self.crit(crit)?);
                let e = self.pairs(&a, &x, &x, entries)?;
                TwistingCocycle::new(a, x, e)?
            }
            CocycleDoc::Kunneth { kunneth: (m, n), dga } => {
                let (m, n, ab) = (self.cocycle(m)?, self.cocycle(n)?, self.dga(dga)?);
                let out = kunneth(&m, &n, ab)?;
                // Reuse a declared product set so transfers can name its points.
                match self.doc.crit.iter().find(|(_, d)| **d == CritDoc::Product { product: (self.crit_name(&m.crit), self.crit_name(&n.crit)) }) {
                    Some((pname, _)) => {
                        let p = self.crit(&pname.clone())?;
                        if *p != *out.crit {
                            return Err(Error::Internal("product critical set differs from the Künneth one".into()));
                        }
                        TwistingCocycle::new(out.dga.clone(), p, out.entries().map(|(k, v)| (k, v.clone())).collect())?
                    }
                    None => out,
                }
            }
            CocycleDoc::Pushforward { pushforward: m, along } => {
                let (m, g) = (self.cocycle(m)?, self.algebra_map(along)?);
                pushforward(&m, &g)?
            }
        };
        self.leave("cocycle", name);
        let c = Arc::new(c);
        self.scene.cocycles.insert(name.into(), c.clone());
        Ok(c)
    }

    fn crit_name(&self, c: &Arc<CritSet>) -> String {
        self.scene.crits.iter().find(|(_, v)| Arc::ptr_eq(v, c) || ***v == **c).map(|(k, _)| k.clone()).unwrap_or_default()
    }

    fn transfer(&mut self, name: &str) -> Result<Arc<TransferCocycle<R>>> {
        if let Some(t) = self.scene.transfers.get(name) {
            return Ok(t.clone());
        }
        let doc = self.doc.transfers.get(name).ok_or_else(|| unresolved("transfer", name))?;
        let (s, t) = (self.cocycle(&doc.source)?, self.cocycle(&doc.target)?);
        let e = self.pairs(&s.dga, &s.crit, &t.crit, &doc.entries)?;
        let tr = Arc::new(TransferCocycle::new(s, t, doc.shift, e)?);
        self.scene.transfers.insert(name.into(), tr.clone());
        Ok(tr)
    }

    fn homotopy(&mut self, name: &str) -> Result<Arc<HomotopyCocycle<R>>> {
        if let Some(h) = self.scene.homotopies.get(name) {
            return Ok(h.clone());
        }
        let doc = self.doc.homotopies.get(name).ok_or_else(|| unresolved("homotopy", name))?;
        let (f, g) = (self.transfer(&doc.from)?, self.transfer(&doc.to)?);
        let e = self.pairs(f.dga(), &f.source.crit, &f.target.crit, &doc.entries)?;
        let h = Arc::new(HomotopyCocycle::new(f, g, e)?);
        self.scene.homotopies.insert(name.into(), h.clone());
        Ok(h)
    }

    fn morphism(&mut self, name: &str) -> Result<Arc<AInfMorphism<R>>> {
        if let Some(p) = self.scene.morphisms.get(name) {
            return Ok(p.clone());
        }
        let doc = self.doc.morphisms.get(name).ok_or_else(|| unresolved("morphism", name))?;
        let (s, t) = (self.module(&doc.source)?, self.module(&doc.target)?);
        let mut entries = Vec::new();
        for (key, v) in &doc.phi {
            let (m, algs) = key.split_first().ok_or_else(|| Error::Invalid(format!("empty φ key in {name:?}")))?;
            let mut k = vec![s.basis.lookup(m)?];
            for l in algs {
                k.push(s.dga.basis.lookup(l)?);
            }
            entries.push((k, self.elem(&t.basis, v)?));
        }
        let p = Arc::new(AInfMorphism::new(s, t, entries)?);
        self.scene.morphisms.insert(name.into(), p.clone());
        Ok(p)
    }
}

impl<R: Ring> Scene<R> {
    /// Resolves every name; validators and complexes are left to `validate` and `finish`.
    pub fn resolve(doc: SceneDoc, ring: R) -> Result<Self> {
        if ring.name() != doc.ring {
            return Err(Error::Mismatch(format!("scene ring {} loaded over {}", doc.ring, ring.name())));
        }
        let empty = Scene {
            doc: doc.clone(),
            ring,
            dgas: BTreeMap::new(),
            algebra_maps: BTreeMap::new(),
            modules: BTreeMap::new(),
            crits: BTreeMap::new(),
            cocycles: BTreeMap::new(),
            transfers: BTreeMap::new(),
            homotopies: BTreeMap::new(),
            morphisms: BTreeMap::new(),
            complexes: BTreeMap::new(),
            products: BTreeMap::new(),
            maps: BTreeMap::new(),
        };
        let mut r = Resolver { doc: &doc, scene: empty, visiting: BTreeSet::new() };
        for n in doc.dga.keys() {
            r.dga(n)?;
        }
        for n in doc.algebra_maps.keys() {
            r.algebra_map(n)?;
        }
        for n in doc.crit.keys() {
            r.crit(n)?;
        }
        for n in doc.modules.keys() {
            r.module(n)?;
        }
        for n in doc.cocycles.keys() {
            r.cocycle(n)?;
        }
        for n in doc.transfers.keys() {
            r.transfer(n)?;
        }
        for n in doc.homotopies.keys() {
            r.homotopy(n)?;
        }
        for n in doc.morphisms.keys() {
            r.morphism(n)?;
        }
        for (n, c) in &doc.run.complexes {
            get(&r.scene.modules, "module", &c.module).map_err(|e| Error::Unresolved(format!("{e} in complex {n:?}")))?;
            get(&r.scene.cocycles, "cocycle", &c.cocycle).map_err(|e| Error::Unresolved(format!("{e} in complex {n:?}")))?;
        }
        Ok(r.scene)
    }

    /// Runs every validator on every datum.
    pub fn validate(&self) -> Vec<Report> {
        let mut out = Vec::new();
        let named = |mut r: Report, kind: &str, name: &str| {
            r.subject = format!("{kind} {name}: {}", r.subject);
            r
        };
        for (n, d) in &self.dgas {
            out.push(named(d.validate(), "dga", n));
        }
        for (n, g) in &self.algebra_maps {
            out.push(named(g.validate(), "algebra map", n));
        }
        for (n, m) in &self.modules {
            out.push(named(m.validate(m.default_depth()), "module", n));
        }
        for (n, c) in &self.cocycles {
            out.push(named(c.validate(), "cocycle", n));
        }
        for (n, t) in &self.transfers {
            out.push(named(t.validate(), "transfer", n));
        }
        for (n, h) in &self.homotopies {
            out.push(named(h.validate(), "homotopy", n));
        }
        for (n, p) in &self.morphisms {
            out.push(named(p.validate(p.default_depth()), "morphism", n));
        }
        out
    }

    /// Builds complexes, product data and requested maps; every map passes its contract.
    pub fn finish(&mut self) -> Result<()> {
        let doc = self.doc.clone();
        for (n, c) in &doc.run.complexes {
            let m = get(&self.modules, "module", &c.module)?;
            let cy = get(&self.cocycles, "cocycle", &c.cocycle)?;
            self.complexes.insert(n.clone(), EnrichedComplex::build(m, cy)?);
        }
        for (n, p) in &doc.products {
            let c = |name: &str| get(&self.complexes, "complex", name);
            let module = get(&self.modules, "module", &doc.run.complexes.get(&p.base).ok_or_else(|| unresolved("complex", &p.base))?.module)?;
            let unit = module.basis.lookup(&p.unit)?;
            let datum = ProductDatum::new(
                c(&p.base)?,
                c(&p.pair)?,
                c(&p.diagonal)?,
                c(&p.pulled)?,
                get(&self.transfers, "transfer", &p.shriek)?,
                get(&self.morphisms, "morphism", &p.multiplication)?,
                unit,
            )?;
            self.products.insert(n.clone(), datum);
        }
        for (n, m) in &doc.run.maps {
            let c = |name: &str| get(&self.complexes, "complex", name);
            match m {
                MapDoc::Transfer { transfer, source, target } => {
                    let t = get(&self.transfers, "transfer", transfer)?;
                    self.maps.insert(n.clone(), transfer_map(&t, &c(source)?, &c(target)?)?);
                }
                MapDoc::Homotopy { homotopy, source, target } => {
                    let h = get(&self.homotopies, "homotopy", homotopy)?;
                    self.maps.insert(n.clone(), homotopy_map(&h, &c(source)?, &c(target)?)?);
                }
                MapDoc::Induced { induced, source, target } => {
                    let p = get(&self.morphisms, "morphism", induced)?;
                    self.maps.insert(n.clone(), induced_map(&p, &c(source)?, &c(target)?)?);
                }
                MapDoc::Kunneth { kunneth: (a, b), product } => {
                    let (k, inv) = kunneth_map(&c(a)?, &c(b)?, &c(product)?)?;
                    self.maps.insert(n.clone(), k);
                    self.maps.insert(format!("{n}⁻¹"), inv);
                }
                MapDoc::Switch { switch: (a, b) } => {
                    self.maps.insert(n.clone(), switch_map(&c(a)?, &c(b)?)?);
                }
            }
        }
        Ok(())
    }

    /// `resolve`, `validate`, then `finish`.
    pub fn load(doc: SceneDoc, ring: R) -> Result<Self, SceneError> {
        let mut scene = Scene::resolve(doc, ring)?;
        let reports = scene.validate();
        if reports.iter().any(|r| !r.is_ok()) {
            return Err(SceneError::Validation(reports));
        }
        scene.finish()?;
        Ok(scene)
    }

    pub fn complex(&self, name: &str) -> Result<&EnrichedComplex<R>> {
        self.complexes.get(name).ok_or_else(|| unresolved("complex", name))
    }

    pub fn map(&self, name: &str) -> Result<&ChainMap<R>> {
        self.maps.get(name).ok_or_else(|| unresolved("map", name))
    }

    pub fn product(&self, name: &str) -> Result<&ProductDatum<R>> {
        self.products.get(name).ok_or_else(|| unresolved("product", name))
    }

    pub fn truncation_events(&self) -> usize {
        self.complexes.values().map(|c| c.truncation.events).sum()
    }

    /// Validator reports plus `d²`, filtration and map contracts for built objects.
    pub fn check(&self) -> Vec<Report> {
        let mut out = self.validate();
        for (n, c) in &self.complexes {
            let mut r = c.complex.check_d_squared();
            r.subject = format!("complex {n}: {}", r.subject);
            out.push(r);
            let mut f = crate::spectral::check_filtration(&c.complex);
            f.subject = format!("complex {n}: {}", f.subject);
            out.push(f);
        }
        for (n, m) in &self.maps {
            let mut r = match self.doc.run.maps.get(n) {
                Some(MapDoc::Homotopy { homotopy, source, target }) => self.homotopy_report(m, homotopy, source, target),
                _ => m.check_contract(),
            };
            r.subject = format!("map {n}: {}", r.subject);
            out.push(r);
        }
        out
    }

    /// `∂H + H∂ = Ψ − Ψ'` against the transfer maps of the homotopy's ends.
    fn homotopy_report(&self, h: &ChainMap<R>, name: &str, source: &str, target: &str) -> Report {
        let ends = || -> Result<(ChainMap<R>, ChainMap<R>)> {
            let hc = get(&self.homotopies, "homotopy", name)?;
            let (s, t) = (self.complex(source)?, self.complex(target)?);
            Ok((transfer_map(&hc.from, s, t)?, transfer_map(&hc.to, s, t)?))
        };
        match ends() {
            Ok((f, g)) => check_homotopy(h, &f, &g),
            Err(e) => {
                let mut r = Report::new("homotopy");
                r.fail("homotopy identity", name, e.to_string());
                r
            }
        }
    }
}

/// A scene over whichever base ring its document names.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyScene {
    Integers(Scene<Integers>),
    Rationals(Scene<Rationals>),
    Prime(Scene<PrimeField>),
    Laurent(Scene<Laurent<Rationals>>),
    LaurentPrime(Scene<Laurent<PrimeField>>),
}

/// Runs an expression generic over the base ring of an [`AnyScene`].
#[macro_export]
macro_rules! with_scene {
    ($any:expr, $s:ident => $body:expr) => {
        match $any {
            $crate::scene::AnyScene::Integers($s) => $body,
            $crate::scene::AnyScene::Rationals($s) => $body,
            $crate::scene::AnyScene::Prime($s) => $body,
            $crate::scene::AnyScene::Laurent($s) => $body,
            $crate::scene::AnyScene::LaurentPrime($s) => $body,
        }
    };
}

fn prime(s: &str) -> Result<PrimeField> {
    let p = s.parse().map_err(|_| Error::Parse(format!("bad prime {s:?}")))?;
    PrimeField::new(p)
}

impl AnyScene {
    pub fn load(doc: SceneDoc) -> Result<Self, SceneError> {
        let r = doc.ring.clone();
        Ok(match r.as_str() {
            "integers" => AnyScene::Integers(Scene::load(doc, Integers)?),
            "rationals" => AnyScene::Rationals(Scene::load(doc, Rationals)?),
            "laurent-q" => AnyScene::Laurent(Scene::load(doc, Laurent::new(Rationals))?),
            s => {
                if let Some(p) = s.strip_prefix("laurent-fp:") {
                    AnyScene::LaurentPrime(Scene::load(doc, Laurent::new(prime(p)?))?)
                } else if let Some(p) = s.strip_prefix("fp:") {
                    AnyScene::Prime(Scene::load(doc, prime(p)?)?)
                } else {
                    return Err(SceneError::Build(Error::Parse(format!(
                        "unknown ring {s:?}; use integers, rationals, fp:<p>, laurent-q or laurent-fp:<p>"
                    ))));
                }
            }
        })
    }

    pub fn from_json(text: &str) -> Result<Self, SceneError> {
        AnyScene::load(SceneDoc::from_json(text)?)
    }

    pub fn doc(&self) -> &SceneDoc {
        with_scene!(self, s => &s.doc)
    }

    pub fn to_json(&self) -> String {
        self.doc().to_json()
    }

    pub fn ring_name(&self) -> String {
        with_scene!(self, s => s.ring.name())
    }
}
