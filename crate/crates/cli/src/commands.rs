//! Subcommands, generic over the scene's base ring.

use std::collections::BTreeMap;

use dgmorse::complex::Complex;
use dgmorse::error::Error;
use dgmorse::linalg::{rank, Matrix};
use dgmorse::product::generators;
use dgmorse::report::Report;
use dgmorse::ring::{EuclideanRing, Ring};
use dgmorse::scene::{MapDoc, Scene};
use dgmorse::{random, spectral};
use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::table::{Output, Table};

/// Why a command did not produce a verdict.
#[derive(Debug)]
pub enum Failure {
    /// Bad invocation or a command the scene cannot serve; exit 2.
    Usage(String),
    /// A computation failed on valid input; exit 1.
    Data(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Refused(_) | Error::Unresolved(_) => Failure::Usage(e.to_string()),
            e => Failure::Data(e.to_string()),
        }
    }
}

/// Rendered output plus whether every check passed.
pub struct Run {
    pub out: Output,
    pub ok: bool,
}

fn status(r: &Report) -> String {
    if r.is_ok() { "ok" } else { "FAIL" }.into()
}

/// One row per report and one per violation.
pub fn reports_output(reports: &[Report]) -> Output {
    let mut summary = Table::new("checks", &["subject", "status", "checked", "untested"]);
    let mut violations = Table::new("violations", &["subject", "identity", "at", "detail"]);
    let mut sorted: Vec<&Report> = reports.iter().collect();
    sorted.sort_by(|a, b| a.subject.cmp(&b.subject));
    for r in sorted {
        summary.push(vec![r.subject.clone(), status(r), r.checked.to_string(), r.untested.to_string()]);
        for v in &r.violations {
            violations.push(vec![r.subject.clone(), v.identity.clone(), v.at.clone(), v.detail.clone()]);
        }
    }
    let mut out = Output { tables: vec![summary], notes: vec![] };
    if !violations.rows.is_empty() {
        out.tables.push(violations);
    }
    out
}

pub fn check<R: Ring>(s: &Scene<R>) -> Run {
    let reports = s.check();
    let failed = reports.iter().filter(|r| !r.is_ok()).count();
    let events = s.truncation_events();
    let mut out = reports_output(&reports);
    out.notes.push(if failed == 0 {
        format!("all validators passed, {events} truncation events")
    } else {
        format!("{failed} of {} checks failed, {events} truncation events", reports.len())
    });
    Run { out, ok: failed == 0 }
}

fn need<T>(items: &BTreeMap<String, T>, what: &str) -> Result<(), Failure> {
    if items.is_empty() {
        return Err(Failure::Usage(format!("scene requests no {what}")));
    }
    Ok(())
}

pub fn homology<R: EuclideanRing>(s: &Scene<R>) -> Result<Run, Failure> {
    need(&s.complexes, "complexes")?;
    let mut out = Output::default();
    for (name, c) in &s.complexes {
        let cx = &c.complex;
        let h = cx.homology()?;
        let title = format!("H_*({name}) over {}, valid through degree {}", s.ring.name(), h.valid_top());
        let mut t = Table::new(title, &["degree", "group", "order", "generator"]);
        let mut zero = Vec::new();
        for (k, g) in h.groups.iter().enumerate() {
            if g.is_empty() {
                zero.push(k);
                continue;
            }
            let mut rows: Vec<(String, String)> = g
                .generators
                .iter()
                .zip(&g.orders)
                .map(|(v, o)| (cx.render_chain(k, v), o.as_ref().map_or("free".into(), |d| s.ring.render(d))))
                .collect();
            rows.sort();
            for (generator, order) in rows {
                t.push(vec![k.to_string(), g.describe(&s.ring), order, generator]);
            }
        }
        out.tables.push(t);
        if !zero.is_empty() {
            out.notes.push(format!("{name}: H_k = 0 for k in {}", ranges(&zero)));
        }
    }
    Ok(Run { out, ok: true })
}

/// `[1, 2, 3, 5]` as `1..3, 5`.
fn ranges(ks: &[usize]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < ks.len() {
        let mut j = i;
        while j + 1 < ks.len() && ks[j + 1] == ks[j] + 1 {
            j += 1;
        }
        parts.push(if i == j { ks[i].to_string() } else { format!("{}..{}", ks[i], ks[j]) });
        i = j + 1;
    }
    parts.join(", ")
}

pub fn product<R: EuclideanRing>(s: &Scene<R>) -> Result<Run, Failure> {
    need(&s.products, "products")?;
    let mut out = Output::default();
    let mut reports = Vec::new();
    for (name, datum) in &s.products {
        let cp = datum.chain_product()?;
        let h = datum.base.complex.homology()?;
        let table = cp.table(&h)?;
        let degree: BTreeMap<&str, usize> = table.generators.iter().map(|g| (g.label.as_str(), g.degree)).collect();
        let mut rows = table.rows();
        rows.sort_by(|a, b| (degree[a.0.as_str()], &a.0, degree[a.1.as_str()], &a.1).cmp(&(degree[b.0.as_str()], &b.0, degree[b.1.as_str()], &b.1)));
        let mut t = Table::new(format!("product {name} (degree {})", cp.map.degree), &["left", "|left|", "right", "|right|", "product"]);
        for (a, b, p) in rows {
            let (da, db) = (degree[a.as_str()].to_string(), degree[b.as_str()].to_string());
            t.push(vec![a, da, b, db, p]);
        }
        out.tables.push(t);

        let tag = |mut r: Report| {
            r.subject = format!("product {name}: {}", r.subject);
            r
        };
        let (gens, _) = generators(&datum.base.complex, &h);
        match datum.unit_class(&h, &gens) {
            Ok(u) => {
                out.notes.push(format!("{name}: unit {}", table.render_class(&u)));
                reports.push(tag(table.check_unit(&u)));
            }
            Err(e) => out.notes.push(format!("{name}: no unit class ({e})")),
        }
        reports.push(tag(table.check_degrees()));
        reports.push(tag(table.check_commutativity()));
        reports.push(tag(table.check_associativity()));
        reports.push(tag(cp.check_filtration()));
    }
    let ok = reports.iter().all(Report::is_ok);
    out.tables.extend(reports_output(&reports).tables);
    Ok(Run { out, ok })
}

/// Spectral pages of every complex, after carrying coefficients into a field with `lower`.
pub fn ss<R, S>(s: &Scene<R>, field: &str, lower: impl Fn(&Complex<R>) -> Result<Complex<S>, Error>) -> Result<Run, Failure>
where
    R: EuclideanRing,
    S: EuclideanRing,
{
    need(&s.complexes, "complexes")?;
    let mut out = Output::default();
    let mut reports = Vec::new();
    for (name, c) in &s.complexes {
        let ss = spectral::pages(&lower(&c.complex)?, c.cocycle.crit.dim + 2)?;
        let mut t = Table::new(format!("E^r({name}) over {field}"), &["page", "degree", "p", "q", "dim", "rank d^r"]);
        let limit = std::iter::once(("∞".to_string(), &ss.limit));
        for (r, page) in ss.pages.iter().map(|p| (p.r.to_string(), p)).chain(limit) {
            let mut cells: Vec<_> = page.dims.iter().filter(|(_, &d)| d > 0).collect();
            cells.sort_by_key(|(&(p, q), _)| (p + q, p));
            for (&(p, q), &dim) in cells {
                t.push(vec![r.clone(), (p + q).to_string(), p.to_string(), q.to_string(), dim.to_string(), page.d_rank(p, q).to_string()]);
            }
        }
        out.tables.push(t);
        out.notes.push(format!("{name}: collapses at E^{}, dim H = {:?}", ss.collapse_page().max(1), ss.homology));

        let tag = |mut r: Report| {
            r.subject = format!("complex {name}: {}", r.subject);
            r
        };
        reports.push(tag(ss.check_pages()));
        reports.push(tag(ss.check_convergence()));
        let module = lower(&spectral::module_complex(&c.module))?;
        reports.push(tag(spectral::check_e1(&ss.pages[1], &module, &c.cocycle.crit)));
        let lifted = spectral::LiftedComplex::new(&c.cocycle)?;
        reports.push(tag(spectral::d1_check(c, &lifted)));
    }
    for (name, datum) in &s.products {
        let mut r = spectral::algebra_on_pages(datum, &datum.chain_product()?);
        r.subject = format!("product {name}: {}", r.subject);
        reports.push(r);
    }
    let ok = reports.iter().all(Report::is_ok);
    out.tables.extend(reports_output(&reports).tables);
    Ok(Run { out, ok })
}

/// `dim H_k` over the fraction field in every valid degree.
fn field_dims<R: EuclideanRing>(c: &Complex<R>) -> Vec<usize> {
    let r: Vec<usize> = c.d.iter().map(|m| rank(&c.ring, m)).collect();
    (0..=c.valid_top()).map(|k| c.rank(k) - r[k] - r.get(k + 1).copied().unwrap_or(0)).collect()
}

pub fn kunneth<R: EuclideanRing>(s: &Scene<R>) -> Result<Run, Failure> {
    let requests: Vec<_> = s
        .doc
        .run
        .maps
        .iter()
        .filter_map(|(n, m)| match m {
            MapDoc::Kunneth { kunneth, product } => Some((n, kunneth, product)),
            _ => None,
        })
        .collect();
    if requests.is_empty() {
        return Err(Failure::Usage("scene requests no Künneth maps".into()));
    }
    let mut out = Output::default();
    let mut reports = Vec::new();
    for (name, (a, b), product) in requests {
        let k = s.map(name)?;
        let kinv = s.map(&format!("{name}⁻¹"))?;
        let mut contract = k.check_contract();
        contract.subject = format!("map {name}: {}", contract.subject);
        let mut inverse = kinv.check_contract();
        inverse.subject = format!("map {name}⁻¹: {}", inverse.subject);
        let mut bijection = Report::new(format!("map {name}: two-sided inverse"));
        bijection.checked = 2;
        if !k.after(kinv)?.is_identity() {
            bijection.fail("K ∘ K⁻¹ = id", name.as_str(), "not the identity");
        }
        if !kinv.after(k)?.is_identity() {
            bijection.fail("K⁻¹ ∘ K = id", name.as_str(), "not the identity");
        }

        let (da, db) = (field_dims(&s.complex(a)?.complex), field_dims(&s.complex(b)?.complex));
        let dp = field_dims(&s.complex(product)?.complex);
        let top = dp.len().min(da.len()).min(db.len());
        let mut dims = Report::new(format!("map {name}: dimensions"));
        let mut t = Table::new(format!("Künneth {name}: H({a}) ⊗ H({b}) → H({product}) over the fraction field"), &["degree", "tensor", "product", "status"]);
        for l in 0..top {
            dims.checked += 1;
            let tensor: usize = (0..=l).map(|i| da[i] * db[l - i]).sum();
            let ok = tensor == dp[l];
            if !ok {
                dims.fail("dim H_l = Σ dim H_k · dim H_{l−k}", format!("degree {l}"), format!("{} vs {tensor}", dp[l]));
            }
            t.push(vec![l.to_string(), tensor.to_string(), dp[l].to_string(), if ok { "ok" } else { "FAIL" }.into()]);
        }
        out.tables.push(t);
        reports.extend([contract, inverse, bijection, dims]);
    }
    let ok = reports.iter().all(Report::is_ok);
    out.tables.extend(reports_output(&reports).tables);
    Ok(Run { out, ok })
}

fn render_matrix<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> String {
    let rows: Vec<String> = (0..m.rows()).map(|i| m.row(i).iter().map(|x| ring.render(x)).collect::<Vec<_>>().join(", ")).collect();
    format!("[{}]", rows.join("; "))
}

pub fn maps<R: EuclideanRing>(s: &Scene<R>) -> Result<Run, Failure> {
    need(&s.maps, "maps")?;
    let contracts: Vec<Report> = s.check().into_iter().filter(|r| r.subject.starts_with("map ")).collect();
    let mut summary = Table::new("maps", &["map", "provenance", "degree", "contract", "iso on homology"]);
    let mut induced = Table::new(format!("induced maps on homology over {}", s.ring.name()), &["map", "degree", "target degree", "matrix"]);
    for (name, f) in &s.maps {
        let rep = contracts.iter().find(|r| r.subject.starts_with(&format!("map {name}: ")));
        let (hs, ht) = (f.source.homology()?, f.target.homology()?);
        let iso = if f.degree == 0 {
            if f.check_homology_iso(&hs, &ht).is_ok() { "yes" } else { "no" }
        } else {
            "n/a"
        };
        summary.push(vec![name.clone(), f.provenance.to_string(), f.degree.to_string(), rep.map_or("ok".into(), status), iso.into()]);
        for k in 0..hs.groups.len() {
            let t = k as i64 + f.degree;
            if t < 0 || t as usize >= ht.groups.len() {
                continue;
            }
            if let Ok(m) = f.on_homology(&hs, &ht, k) {
                if m.rows() > 0 && m.cols() > 0 {
                    induced.push(vec![name.clone(), k.to_string(), t.to_string(), render_matrix(&s.ring, &m)]);
                }
            }
        }
    }
    let ok = contracts.iter().all(Report::is_ok);
    let mut out = Output { tables: vec![summary, induced], notes: vec![] };
    out.tables.extend(reports_output(&contracts).tables.into_iter().skip(1));
    Ok(Run { out, ok })
}

pub fn fuzz<R: Ring>(s: &Scene<R>, trials: usize, seed: u64) -> Result<Run, Failure> {
    need(&s.complexes, "complexes")?;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut t = Table::new(format!("fuzz, seed {seed}"), &["complex", "trials", "valid", "corrupted", "failures"]);
    let mut out = Output::default();
    let mut ok = true;
    for (name, c) in &s.complexes {
        let stats = random::fuzz(c, trials, &mut rng);
        t.push(vec![name.clone(), stats.trials.to_string(), stats.valid.to_string(), stats.corrupted.to_string(), stats.failures.len().to_string()]);
        ok &= stats.failures.is_empty();
        out.notes.extend(stats.failures.iter().map(|f| format!("{name}: {f}")));
    }
    out.tables.insert(0, t);
    Ok(Run { out, ok })
}
