//! Built-in scenes with hand-derived data.
//!
//! Conventions shared by every scene: the minimum of a circle is `m` (index 0)
//! and the maximum `M` (index 1); a based loop around the circle is the group
//! element `t` (path scenes) or `g` (free-loop scenes).

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::ring::{Integers, Laurent, Rationals};
use crate::scene::{
    AlgebraMapDoc, AnyScene, Coef, CocycleDoc, ComplexDoc, CritDoc, DgaDoc, ElemDoc, ExplicitDga, HomotopyDoc, MapDoc,
    ModuleDoc, MorphismDoc, PolynomialDga, ProductDoc, RunDoc, Scene, SceneDoc, SceneError, TransferDoc, TrivialModule,
};

pub const DEFAULT_WINDOW: usize = 12;

pub const NAMES: [&str; 4] = ["circle-path", "circle-free-loop", "torus-free-loop", "sphere-path(k)"];

fn e(terms: &[(Coef, &str)]) -> ElemDoc {
    terms.iter().map(|(c, l)| (c.clone(), l.to_string())).collect()
}

fn one(label: &str) -> ElemDoc {
    e(&[(1.into(), label)])
}

fn s(x: &str) -> String {
    x.to_string()
}

fn pair(a: &str, b: &str) -> (String, String) {
    (s(a), s(b))
}

fn empty(ring: &str) -> SceneDoc {
    SceneDoc {
        ring: s(ring),
        dga: BTreeMap::new(),
        algebra_maps: BTreeMap::new(),
        modules: BTreeMap::new(),
        crit: BTreeMap::new(),
        cocycles: BTreeMap::new(),
        transfers: BTreeMap::new(),
        homotopies: BTreeMap::new(),
        morphisms: BTreeMap::new(),
        products: BTreeMap::new(),
        run: RunDoc::default(),
    }
}

fn circle_points() -> CritDoc {
    CritDoc::Points { dim: 1, points: vec![(s("m"), 0), (s("M"), 1)] }
}

fn complex(module: &str, cocycle: &str) -> ComplexDoc {
    ComplexDoc { module: s(module), cocycle: s(cocycle) }
}

/// Path fibration of the circle over `ℚ[t, t⁻¹]`.
///
/// `A = R` in degree 0 acting on itself; the loop `t` enters only through the
/// coefficient ring. The single gradient line pair from `M` to `m` evaluates to
/// the two arcs `a`, `b`, and augmenting `a ↦ 1`, `b ↦ t` gives `m_{M,m} = 1 − t`.
/// MC holds trivially: there is no pair of index difference two.
///
/// The second cocycle `m¹_{M,m} = t − t²` is the gauge transform by
/// `τ_{M,M} = 1`, `τ_{m,m} = t`: the transfer equation at `(M, m)` reads
/// `m_{M,m} τ_{m,m} − τ_{M,M} m¹_{M,m} = (1 − t)t − (t − t²) = 0`.
/// Its inverse uses `τ_{m,m} = t⁻¹`.
pub fn circle_path_doc(window: usize) -> SceneDoc {
    let mut d = empty("laurent-q");
    d.dga.insert(s("A"), DgaDoc::Scalars { scalars: window });
    d.modules.insert(s("F"), ModuleDoc::Regular { regular: s("A") });
    d.crit.insert(s("X"), circle_points());
    d.cocycles.insert(
        s("m"),
        CocycleDoc::Explicit { dga: s("A"), crit: s("X"), entries: vec![(s("M"), s("m"), e(&[("1 - t".into(), "1")]))] },
    );
    d.cocycles.insert(
        s("m1"),
        CocycleDoc::Explicit { dga: s("A"), crit: s("X"), entries: vec![(s("M"), s("m"), e(&[("t - t^2".into(), "1")]))] },
    );
    d.transfers.insert(
        s("psi"),
        TransferDoc {
            source: s("m"),
            target: s("m1"),
            shift: 0,
            entries: vec![(s("M"), s("M"), one("1")), (s("m"), s("m"), e(&[("t".into(), "1")]))],
        },
    );
    d.transfers.insert(
        s("psi-inv"),
        TransferDoc {
            source: s("m1"),
            target: s("m"),
            shift: 0,
            entries: vec![(s("M"), s("M"), one("1")), (s("m"), s("m"), e(&[("t^-1".into(), "1")]))],
        },
    );
    d.run.complexes.insert(s("C"), complex("F", "m"));
    d.run.complexes.insert(s("C1"), complex("F", "m1"));
    d.run.maps.insert(s("psi"), MapDoc::Transfer { transfer: s("psi"), source: s("C"), target: s("C1") });
    d.run.maps.insert(s("psi-inv"), MapDoc::Transfer { transfer: s("psi-inv"), source: s("C1"), target: s("C") });
    d
}

/// `ℚ[t, t⁻¹][C₂]` with basis `1, g` in degree 0.
fn group_algebra(window: usize) -> DgaDoc {
    DgaDoc::Explicit(ExplicitDga {
        window,
        basis: vec![(s("1"), 0), (s("g"), 0)],
        unit: s("1"),
        d: BTreeMap::new(),
        products: vec![
            (s("1"), s("1"), one("1")),
            (s("1"), s("g"), one("g")),
            (s("g"), s("1"), one("g")),
            (s("g"), s("g"), one("1")),
        ],
    })
}

/// Shared data of the free-loop scenes: `A`, `F` with trivial action, `X`, `m`, and `A ⊗ A`, `F ⊗ F`.
///
/// The conjugation action on the fibre `ΩS¹` of `LS¹ → S¹` is trivial, so `g`
/// acts by `1` on `F = R`. The cocycle `m_{M,m} = 1 − g` is the difference of
/// the two arcs `a − b` with `a ↦ 1`, `b ↦ g`; MC is vacuous on two points.
fn free_loop_base(window: usize) -> SceneDoc {
    let mut d = empty("laurent-q");
    d.dga.insert(s("A"), group_algebra(window));
    d.dga.insert(s("AA"), DgaDoc::Tensor { tensor: pair("A", "A") });
    d.modules.insert(
        s("F"),
        ModuleDoc::Trivial(TrivialModule { trivial: s("A"), window, augmentation: [(s("g"), Coef::Int(1))].into() }),
    );
    d.modules.insert(s("FF"), ModuleDoc::Tensor { tensor: pair("F", "F") });
    d.crit.insert(s("X"), circle_points());
    d.crit.insert(s("XX"), CritDoc::Product { product: pair("X", "X") });
    d.cocycles.insert(
        s("m"),
        CocycleDoc::Explicit {
            dga: s("A"),
            crit: s("X"),
            entries: vec![(s("M"), s("m"), e(&[(1.into(), "1"), ((-1).into(), "g")]))],
        },
    );
    d.cocycles.insert(s("mK"), CocycleDoc::Kunneth { kunneth: pair("m", "m"), dga: s("AA") });
    d.run.complexes.insert(s("C"), complex("F", "m"));
    d.run.complexes.insert(s("CC"), complex("FF", "mK"));
    d
}

/// Free loop space of the circle with its Chas–Sullivan product data.
///
/// The diagonal `Δ : A → A ⊗ A` is `1 ↦ 1⊗1`, `g ↦ g⊗g`. The shriek transfer
/// `Δ_!` from `(X × X, m^K)` to `(X, Δ_*m)` has shift `−1`; its entries are the
/// intersection signs of the unstable cells of `(x, y)` with the diagonal:
///
/// - `τ_{(M,M),M} = 1⊗1`: the top cell meets the diagonal along `M`.
/// - `τ_{(m,M),m} = 1⊗1` and `τ_{(M,m),m} = −g⊗1`: the two edge cells meet it at
///   `m`, the second one after transport around the loop, with the sign of the
///   factor switch.
///
/// The transfer equation at `((M,M), m)` is then
/// `m^K_{(M,M),(m,M)} τ_{(m,M),m} + m^K_{(M,M),(M,m)} τ_{(M,m),m} − τ_{(M,M),M} Δ_*m_{M,m}`
/// `= (1⊗1 − g⊗1) + (1⊗1 − 1⊗g)(g⊗1) − (1⊗1 − g⊗g) = 0`, where
/// `m^K_{(M,M),(M,m)} = −(1⊗1 − 1⊗g)` carries the Künneth sign `(−1)^{|M|}`.
///
/// `μ : Δ*(F ⊗ F) → F` is `1⊗1 ↦ 1`. The product table on `H₁ = R·[1⊗M]`,
/// `H₀ = R·[1⊗m]` (generators called `A` and `P`, product of degree `|a| + |b| − 1`) is `A·A = A`, `A·P = P·A = P`,
/// `P·P = 0`, with unit `A`: the loop homology ring `R[x]/(x²)` of a circle component.
pub fn circle_free_loop_doc(window: usize) -> SceneDoc {
    let mut d = free_loop_base(window);
    d.algebra_maps.insert(
        s("diag"),
        AlgebraMapDoc::Explicit {
            source: s("A"),
            target: s("AA"),
            images: [(s("1"), one("1⊗1")), (s("g"), one("g⊗g"))].into(),
        },
    );
    d.algebra_maps.insert(s("swap"), AlgebraMapDoc::Swap { swap: s("AA") });
    d.modules.insert(s("DFF"), ModuleDoc::Pullback { pullback: s("FF"), along: s("diag") });
    d.modules.insert(s("sFF"), ModuleDoc::Pullback { pullback: s("FF"), along: s("swap") });
    d.cocycles.insert(s("Dm"), CocycleDoc::Pushforward { pushforward: s("m"), along: s("diag") });
    d.transfers.insert(
        s("shriek"),
        TransferDoc {
            source: s("mK"),
            target: s("Dm"),
            shift: -1,
            entries: vec![
                (s("(M,M)"), s("M"), one("1⊗1")),
                (s("(m,M)"), s("m"), one("1⊗1")),
                (s("(M,m)"), s("m"), e(&[((-1).into(), "g⊗1")])),
            ],
        },
    );
    d.morphisms.insert(
        s("mu"),
        MorphismDoc { source: s("DFF"), target: s("F"), phi: vec![(vec![s("1⊗1")], one("1"))] },
    );
    d.run.complexes.insert(s("D"), complex("FF", "Dm"));
    d.run.complexes.insert(s("P"), complex("DFF", "m"));
    d.run.complexes.insert(s("CCs"), complex("sFF", "mK"));
    d.run.maps.insert(s("shriek"), MapDoc::Transfer { transfer: s("shriek"), source: s("CC"), target: s("D") });
    d.run.maps.insert(s("switch"), MapDoc::Switch { switch: pair("CC", "CCs") });
    d.products.insert(
        s("cs"),
        ProductDoc {
            base: s("C"),
            pair: s("CC"),
            diagonal: s("D"),
            pulled: s("P"),
            shriek: s("shriek"),
            multiplication: s("mu"),
            unit: s("1"),
        },
    );
    d
}

/// Free loop space of the torus `S¹ × S¹`, built from two circle copies.
///
/// The algebra is `A ⊗ A = R[C₂ × C₂]`, the module `F ⊗ F`, the critical set
/// `X × X` and the cocycle the Künneth cocycle of `m` with itself. Homology is
/// `R, R², R` in degrees `0, 1, 2`.
pub fn torus_free_loop_doc(window: usize) -> SceneDoc {
    let mut d = free_loop_base(window);
    d.run.maps.insert(s("K"), MapDoc::Kunneth { kunneth: pair("C", "C"), product: s("CC") });
    d
}

/// Path fibration of `S^k` over `ℤ`, with the polynomial model `C_*(ΩS^k) ≃ ℤ[u]`, `|u| = k − 1`.
///
/// The one gradient family from `M` (index `k`) to `m` evaluates to the
/// fundamental cycle `u` of `ΩS^k`, so `m_{M,m} = u`. For `k = 2` the scene
/// also carries continuation data on the same cocycle:
///
/// - `tau` the identity transfer and `tau2` with the extra entry `τ'_{M,m} = 3u²`;
///   with `μ₁ = 0` the transfer equation at `(M, m)` is `u·1 − 1·u = 0` for both.
/// - `h` from `tau` to `tau2`: `h_{m,m} = u`, `h_{M,M} = 2u`, `h_{M,m} = u³`. At
///   `(M, m)` the homotopy equation is `0 = τ − τ' + m_{M,m} h_{m,m} + h_{M,M} m_{M,m}`
///   `= −3u² + u² + 2u²`.
/// - `phi : F → F` with `φ₁ = id` and `φ₂(uⁱ, uʲ) = j·u^{i+j+1}`, a derivation-type
///   correction: `φ₂(uⁱuʲ, uˡ) − φ₂(uⁱ, uʲuˡ) + φ₂(uⁱ, uʲ)uˡ = l − (j + l) + j = 0`.
pub fn sphere_path_doc(k: usize, window: usize) -> Result<SceneDoc> {
    if k < 2 {
        return Err(Error::Invalid(format!("sphere-path needs k ≥ 2, got {k}")));
    }
    let mut d = empty("integers");
    d.dga.insert(s("A"), DgaDoc::Polynomial { polynomial: PolynomialDga { degree: k - 1, window } });
    d.modules.insert(s("F"), ModuleDoc::Regular { regular: s("A") });
    d.crit.insert(s("X"), CritDoc::Points { dim: k, points: vec![(s("m"), 0), (s("M"), k)] });
    d.cocycles.insert(
        s("m"),
        CocycleDoc::Explicit { dga: s("A"), crit: s("X"), entries: vec![(s("M"), s("m"), one("u"))] },
    );
    d.run.complexes.insert(s("C"), complex("F", "m"));
    if k == 2 {
        let pow = |j: usize| match j {
            0 => s("1"),
            1 => s("u"),
            j => format!("u^{j}"),
        };
        let diag = vec![(s("m"), s("m"), one("1")), (s("M"), s("M"), one("1"))];
        d.transfers.insert(s("tau"), TransferDoc { source: s("m"), target: s("m"), shift: 0, entries: diag.clone() });
        let mut entries = diag;
        entries.push((s("M"), s("m"), e(&[(3.into(), "u^2")])));
        d.transfers.insert(s("tau2"), TransferDoc { source: s("m"), target: s("m"), shift: 0, entries });
        d.homotopies.insert(
            s("h"),
            HomotopyDoc {
                from: s("tau"),
                to: s("tau2"),
                entries: vec![
                    (s("m"), s("m"), one("u")),
                    (s("M"), s("M"), e(&[(2.into(), "u")])),
                    (s("M"), s("m"), one("u^3")),
                ],
            },
        );
        let mut phi: Vec<(Vec<String>, ElemDoc)> = (0..=window).map(|i| (vec![pow(i)], one(&pow(i)))).collect();
        for i in 0..=window {
            for j in 1..=window {
                if i + j < window {
                    phi.push((vec![pow(i), pow(j)], e(&[(Coef::Int(j as i64), &pow(i + j + 1))])));
                }
            }
        }
        d.morphisms.insert(s("phi"), MorphismDoc { source: s("F"), target: s("F"), phi });
        d.run.maps.insert(s("tau"), MapDoc::Transfer { transfer: s("tau"), source: s("C"), target: s("C") });
        d.run.maps.insert(s("tau2"), MapDoc::Transfer { transfer: s("tau2"), source: s("C"), target: s("C") });
        d.run.maps.insert(s("h"), MapDoc::Homotopy { homotopy: s("h"), source: s("C"), target: s("C") });
        d.run.maps.insert(s("phi"), MapDoc::Induced { induced: s("phi"), source: s("C"), target: s("C") });
    }
    Ok(d)
}

/// Parses `sphere-path(k)` or `sphere-path-k`.
fn sphere_k(name: &str) -> Option<usize> {
    let rest = name.strip_prefix("sphere-path")?;
    let k = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).or_else(|| rest.strip_prefix('-'))?;
    k.parse().ok()
}

/// The document of a catalog scene.
pub fn doc(name: &str, window: usize) -> Result<SceneDoc> {
    match name {
        "circle-path" => Ok(circle_path_doc(window)),
        "circle-free-loop" => Ok(circle_free_loop_doc(window)),
        "torus-free-loop" => Ok(torus_free_loop_doc(window)),
        _ => match sphere_k(name) {
            Some(k) => sphere_path_doc(k, window),
            None => Err(Error::Unresolved(format!("catalog scene {name:?}; known: {}", NAMES.join(", ")))),
        },
    }
}

pub fn catalog(name: &str, window: usize) -> Result<AnyScene, SceneError> {
    AnyScene::load(doc(name, window)?)
}

/// Every catalog scene used by the test suite, with `sphere-path(k)` for `k = 2, 3`.
pub fn all_names() -> Vec<&'static str> {
    vec!["circle-path", "circle-free-loop", "torus-free-loop", "sphere-path(2)", "sphere-path(3)"]
}

fn expect<R: crate::ring::Ring>(d: SceneDoc, ring: R) -> Scene<R> {
    match Scene::load(d, ring) {
        Ok(s) => s,
        Err(e) => panic!("catalog scene failed to load: {e}"),
    }
}

pub fn circle_path(window: usize) -> Scene<Laurent<Rationals>> {
    expect(circle_path_doc(window), Laurent::new(Rationals))
}

pub fn circle_free_loop(window: usize) -> Scene<Laurent<Rationals>> {
    expect(circle_free_loop_doc(window), Laurent::new(Rationals))
}

pub fn torus_free_loop(window: usize) -> Scene<Laurent<Rationals>> {
    expect(torus_free_loop_doc(window), Laurent::new(Rationals))
}

pub fn sphere_path(k: usize, window: usize) -> Scene<Integers> {
    expect(sphere_path_doc(k, window).expect("k ≥ 2"), Integers)
}

/// Signs `ε_x` per complex such that `α ⊗ x ↦ ε_x α ⊗ x` identifies the original and flipped complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub cocycle: String,
    pub entry: (String, String),
    /// Cocycle name to per-point signs in critical-set order.
    pub signs: BTreeMap<String, Vec<i64>>,
}

impl Certificate {
    /// Signs for the generators of a complex built on `cocycle`, by critical point position.
    pub fn for_cocycle(&self, cocycle: &str) -> Option<&[i64]> {
        self.signs.get(cocycle).map(Vec::as_slice)
    }
}

fn negate(v: &ElemDoc) -> ElemDoc {
    v.iter()
        .map(|(c, l)| {
            let c = match c {
                Coef::Int(n) => Coef::Int(-n),
                Coef::Text(t) => Coef::Text(negate_text(t)),
            };
            (c, l.clone())
        })
        .collect()
}

/// Toggles the sign of every top-level term of a written coefficient.
fn negate_text(t: &str) -> String {
    let compact: Vec<char> = t.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = String::new();
    let mut start = true;
    for (i, &c) in compact.iter().enumerate() {
        let boundary = (c == '+' || c == '-') && i > 0 && compact[i - 1] != '^' && compact[i - 1] != '(';
        if start && c != '+' && c != '-' {
            out.push('-');
            out.push(c);
        } else if start && c == '-' {
            // a leading minus cancels
        } else if start && c == '+' {
            out.push('-');
        } else if boundary {
            out.push(if c == '+' { '-' } else { '+' });
        } else {
            out.push(c);
        }
        start = false;
    }
    out
}

fn scale(v: &ElemDoc, sign: i64) -> ElemDoc {
    if sign < 0 {
        negate(v)
    } else {
        v.clone()
    }
}

/// Negates one explicit cocycle entry and re-signs every transfer and homotopy to match.
///
/// Point signs solve `ε_x ε_y = −1` on the flipped pair and `+1` on every other
/// nonzero entry; derived cocycles inherit product or pushed-forward signs.
pub fn flip_entry(doc: &SceneDoc, cocycle: &str, x: &str, y: &str) -> Result<(SceneDoc, Certificate)> {
    let Some(CocycleDoc::Explicit { crit, entries, .. }) = doc.cocycles.get(cocycle) else {
        return Err(Error::Invalid(format!("{cocycle:?} is not an explicit cocycle")));
    };
    let points: Vec<String> = match doc.crit.get(crit) {
        Some(CritDoc::Points { points, .. }) => points.iter().map(|p| p.0.clone()).collect(),
        _ => return Err(Error::Invalid(format!("{crit:?} is not a list of points"))),
    };
    if !entries.iter().any(|(a, b, _)| a == x && b == y) {
        return Err(Error::Unresolved(format!("entry ({x}, {y}) of {cocycle:?}")));
    }
    let pos = |l: &str| points.iter().position(|p| p == l).unwrap();
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); points.len()];
    for (a, b, _) in entries {
        let w = if a == x && b == y { -1 } else { 1 };
        adj[pos(a)].push((pos(b), w));
        adj[pos(b)].push((pos(a), w));
    }
    let mut eps = vec![0i64; points.len()];
    for start in 0..points.len() {
        if eps[start] != 0 {
            continue;
        }
        eps[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &(v, w) in &adj[u] {
                let want = eps[u] * w;
                if eps[v] == 0 {
                    eps[v] = want;
                    queue.push_back(v);
                } else if eps[v] != want {
                    return Err(Error::Refused(format!("no point re-signing realizes the flip of ({x}, {y})")));
                }
            }
        }
    }
    let mut out = doc.clone();
    if let Some(CocycleDoc::Explicit { entries, .. }) = out.cocycles.get_mut(cocycle) {
        for (a, b, v) in entries.iter_mut() {
            if a == x && b == y {
                *v = negate(v);
            }
        }
    }
    let mut signs: BTreeMap<String, Vec<i64>> = BTreeMap::new();
    fn resolve(doc: &SceneDoc, name: &str, base: &str, eps: &[i64], memo: &mut BTreeMap<String, Vec<i64>>) -> Vec<i64> {
        if let Some(v) = memo.get(name) {
            return v.clone();
        }
        let v = match doc.cocycles.get(name) {
            Some(CocycleDoc::Explicit { crit, .. }) => {
                let n = match doc.crit.get(crit) {
                    Some(CritDoc::Points { points, .. }) => points.len(),
                    _ => 0,
                };
                if name == base {
                    eps.to_vec()
                } else {
                    vec![1; n]
                }
            }
            Some(CocycleDoc::Kunneth { kunneth: (a, b), .. }) => {
                let (sa, sb) = (resolve(doc, a, base, eps, memo), resolve(doc, b, base, eps, memo));
                sa.iter().flat_map(|x| sb.iter().map(move |y| x * y)).collect()
            }
            Some(CocycleDoc::Pushforward { pushforward, .. }) => resolve(doc, pushforward, base, eps, memo),
            None => Vec::new(),
        };
        memo.insert(name.to_string(), v.clone());
        v
    }
    for name in doc.cocycles.keys() {
        resolve(doc, name, cocycle, &eps, &mut signs);
    }
    let labels = |name: &str| -> Vec<String> { crit_labels(doc, name) };
    let resign = |src: &str, tgt: &str, entries: &mut Vec<(String, String, ElemDoc)>| {
        let (ls, lt) = (labels(src), labels(tgt));
        for (a, b, v) in entries.iter_mut() {
            let i = ls.iter().position(|l| l == a);
            let j = lt.iter().position(|l| l == b);
            if let (Some(i), Some(j)) = (i, j) {
                *v = scale(v, signs[src][i] * signs[tgt][j]);
            }
        }
    };
    for t in out.transfers.values_mut() {
        let (src, tgt) = (t.source.clone(), t.target.clone());
        resign(&src, &tgt, &mut t.entries);
    }
    let ends: BTreeMap<String, (String, String)> =
        doc.transfers.iter().map(|(n, t)| (n.clone(), (t.source.clone(), t.target.clone()))).collect();
    for h in out.homotopies.values_mut() {
        if let Some((src, tgt)) = ends.get(&h.from) {
            resign(src, tgt, &mut h.entries);
        }
    }
    Ok((out, Certificate { cocycle: cocycle.into(), entry: (x.into(), y.into()), signs }))
}

/// Point labels of the critical set a cocycle lives on, in order.
pub fn crit_labels(doc: &SceneDoc, cocycle: &str) -> Vec<String> {
    fn of_crit(doc: &SceneDoc, crit: &str) -> Vec<String> {
        match doc.crit.get(crit) {
            Some(CritDoc::Points { points, .. }) => points.iter().map(|p| p.0.clone()).collect(),
            Some(CritDoc::Product { product: (a, b) }) => {
                let (la, lb) = (of_crit(doc, a), of_crit(doc, b));
                la.iter().flat_map(|x| lb.iter().map(move |y| format!("({x},{y})"))).collect()
            }
            None => Vec::new(),
        }
    }
    match doc.cocycles.get(cocycle) {
        Some(CocycleDoc::Explicit { crit, .. }) => of_crit(doc, crit),
        Some(CocycleDoc::Kunneth { kunneth: (a, b), .. }) => {
            let (la, lb) = (crit_labels(doc, a), crit_labels(doc, b));
            la.iter().flat_map(|x| lb.iter().map(move |y| format!("({x},{y})"))).collect()
        }
        Some(CocycleDoc::Pushforward { pushforward, .. }) => crit_labels(doc, pushforward),
        None => Vec::new(),
    }
}

/// Every explicit cocycle entry of a document, as `(cocycle, x, y)`.
pub fn explicit_entries(doc: &SceneDoc) -> Vec<(String, String, String)> {
    doc.cocycles
        .iter()
        .filter_map(|(n, c)| match c {
            CocycleDoc::Explicit { entries, .. } => Some(entries.iter().map(move |(x, y, _)| (n.clone(), x.clone(), y.clone()))),
            _ => None,
        })
        .flatten()
        .collect()
}
