use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};
use ncg_core::algebra::{commutator_filtration_dim, localize, tangent_algebra};
use ncg_core::calculus::{
    karoubi_de_rham, omega1_projective, separability_idempotent, smoothness_witness, FdAlgebra, Smoothness,
};
use ncg_core::ncpoly::{format_rational, format_word, NcPoly, Presentation};
use ncg_core::nproj::{np_cohomology, quiver_compare, k0_pairing, JouanolouCover, Sheaf, Tables};
use ncg_core::repmod::{double_tangent_dim, ext1_dim, hom_dim, FramedModule};
use ncg_core::reprscheme::{
    classical_divergence, idempotent_points, nc_divergence, tangent_iso_check, trace_of_sym_square, Derivation,
    ReprScheme,
};
use ncg_core::rewrite::{basis_upto, complete_presentation};
use ncg_core::spaces::{cech_cohomology, CechParams, CechReport, Comodule};
use ncg_core::Q;
use serde_json::{json, Value};

use crate::inputs::Inputs;
use crate::report::RunReport;
use crate::{Command, ExitStatus, SheafArg};

pub struct Done {
    pub report: RunReport,
    pub text: String,
    pub status: ExitStatus,
    pub notes: Vec<String>,
}

const DEFAULT_SEED: u64 = 0x6e63_6721;

fn seed() -> Result<u64> {
    match std::env::var("NCG_SEED") {
        Ok(s) => s.trim().parse().with_context(|| format!("NCG_SEED=`{s}` is not an unsigned integer")),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn rat(x: &Q) -> Value {
    Value::String(format_rational(x))
}

struct Ctx {
    inputs: Inputs,
    report: RunReport,
}

impl Ctx {
    fn new(command: &str) -> Self {
        Ctx {
            inputs: Inputs::default(),
            report: RunReport::new(command),
        }
    }

    fn finish(mut self, parameters: Value, results: Value, certificates: Value, text: String, status: ExitStatus) -> Done {
        self.report.inputs = self.inputs.hashes;
        self.report.parameters = parameters;
        self.report.results = results;
        self.report.certificates = certificates;
        Done {
            report: self.report,
            text,
            status,
            notes: self.inputs.notes,
        }
    }
}

pub fn dispatch(cmd: &Command) -> Result<Done> {
    match cmd {
        Command::Nf { file, expr, max_len } => nf(file, expr, *max_len),
        Command::Complete { file, max_len } => complete(file, *max_len),
        Command::Basis { file, len, max_len } => basis(file, *len, *max_len),
        Command::PathAlgebra { quiver } => path_algebra(quiver),
        Command::Ta { file } => ta(file),
        Command::Localize { file, elems } => localize_cmd(file, elems),
        Command::Cfilt { d, n, len } => cfilt(*d, *n, *len),
        Command::Smooth { file, max_len } => smooth(file, *max_len),
        Command::Drh { file, deg, max_len } => drh(file, *deg, *max_len),
        Command::Sep { file, max_len } => sep(file, *max_len),
        Command::Hom { m, n } => module_pair("hom", m, n),
        Command::Ext1 { m, n } => module_pair("ext1", m, n),
        Command::T2dim { m, n } => module_pair("t2dim", m, n),
        Command::Repr {
            file,
            n,
            sample_rank,
            samples,
        } => repr(file, *n, *sample_rank, *samples),
        Command::Div { file, xi, n } => div(file, xi, *n),
        Command::TangentIso { file, n } => tangent_iso(file, *n),
        Command::Cech {
            bundle,
            sheaf,
            deg,
            cutoffs,
            window,
            slack,
        } => cech(bundle, sheaf.as_deref(), *deg, cutoffs, window.as_deref(), *slack),
        Command::Nproj { d, sheaf, cutoffs } => nproj(*d, *sheaf, cutoffs),
        Command::Corpus { manifest, bless } => crate::corpus::command(manifest, *bless),
    }
}

fn nf(file: &Path, expr: &str, max_len: usize) -> Result<Done> {
    let mut cx = Ctx::new("nf");
    let p = cx.inputs.algebra(file)?;
    let e = p.parse_poly(expr).context("in --expr")?;
    let rs = complete_presentation(&p, max_len)?;
    let nf = rs.normal_form(&e)?;
    let certified = rs.status().covers(e.max_len());
    let shown = p.format_poly(&nf);
    let status = if certified { ExitStatus::Ok } else { ExitStatus::Undetermined };
    if !certified {
        cx.inputs.notes.push(format!(
            "the system is only {}; this normal form is not certified unique",
            rs.status()
        ));
    }
    Ok(cx.finish(
        json!({ "expr": expr, "max_len": max_len }),
        json!({ "normal_form": shown }),
        json!({ "status": rs.status().to_string(), "certified": certified }),
        format!("{shown}\n"),
        status,
    ))
}

fn complete(file: &Path, max_len: usize) -> Result<Done> {
    let mut cx = Ctx::new("complete");
    let p = cx.inputs.algebra(file)?;
    let rs = complete_presentation(&p, max_len)?;
    let rules = rs.describe_rules(&p.symbols());
    let status = if rs.status().bound().is_none() && rs.status() != ncg_core::rewrite::Status::Complete {
        ExitStatus::Undetermined
    } else {
        ExitStatus::Ok
    };
    Ok(cx.finish(
        json!({ "max_len": max_len }),
        json!({ "rules": rules }),
        json!({ "status": rs.status().to_string() }),
        rs.to_text(&p.name, &p),
        status,
    ))
}

fn basis(file: &Path, len: usize, max_len: usize) -> Result<Done> {
    let mut cx = Ctx::new("basis");
    let p = cx.inputs.algebra(file)?;
    let rs = complete_presentation(&p, max_len.max(len))?;
    let words = basis_upto(&rs, len)?;
    let syms = p.symbols();
    let shown: Vec<String> = words.iter().map(|w| format_word(w, &syms)).collect();
    let mut counts = BTreeMap::new();
    for w in &words {
        *counts.entry(w.len().to_string()).or_insert(0usize) += 1;
    }
    Ok(cx.finish(
        json!({ "len": len, "max_len": max_len.max(len) }),
        json!({ "dimension": words.len(), "by_length": counts, "words": shown }),
        json!({ "status": rs.status().to_string() }),
        format!("{}\n{}\n", words.len(), shown.join("\n")),
        ExitStatus::Ok,
    ))
}

fn presentation_done(cx: Ctx, p: &Presentation, params: Value) -> Done {
    let text = p.to_text();
    cx.finish(
        params,
        json!({ "presentation": text, "generators": p.ngens(), "relations": p.rels.len() }),
        json!({}),
        text.clone(),
        ExitStatus::Ok,
    )
}

fn path_algebra(quiver: &Path) -> Result<Done> {
    let mut cx = Ctx::new("path-algebra");
    let q = cx.inputs.quiver(quiver)?;
    let p = ncg_core::algebra::path_algebra(&q)?;
    Ok(presentation_done(cx, &p, json!({})))
}

fn ta(file: &Path) -> Result<Done> {
    let mut cx = Ctx::new("ta");
    let p = cx.inputs.algebra(file)?;
    let t = tangent_algebra(&p)?;
    Ok(presentation_done(cx, &t.pres, json!({})))
}

fn localize_cmd(file: &Path, elems: &[String]) -> Result<Done> {
    let mut cx = Ctx::new("localize");
    let p = cx.inputs.algebra(file)?;
    let es = elems
        .iter()
        .map(|e| p.parse_poly(e).with_context(|| format!("in --elem `{e}`")))
        .collect::<Result<Vec<NcPoly>>>()?;
    let l = localize(&p, &es, &[])?;
    Ok(presentation_done(cx, &l, json!({ "elements": elems })))
}

fn cfilt(d: usize, n: usize, len: usize) -> Result<Done> {
    let cx = Ctx::new("cfilt");
    let r = commutator_filtration_dim(d, n, len)?;
    let mut notes = vec![];
    if let Some(w) = &r.warning {
        notes.push(w.clone());
    }
    let mut done = cx.finish(
        json!({ "d": d, "n": n, "len": len }),
        json!({ "dimension": r.dim }),
        json!({ "warning": r.warning }),
        format!("{}\n", r.dim),
        ExitStatus::Ok,
    );
    done.notes.extend(notes);
    Ok(done)
}

fn smooth(file: &Path, max_len: usize) -> Result<Done> {
    let mut cx = Ctx::new("smooth");
    let p = cx.inputs.algebra(file)?;
    match smoothness_witness(&p, max_len)? {
        Smoothness::Witness(w) => {
            let mut tau = serde_json::Map::new();
            let mut text = String::new();
            for (g, t) in p.gens.iter().zip(&w.tau) {
                let shown = w.ta.pres.format_poly(t);
                text.push_str(&format!("D(D{}) = {}\n", g.symbol, shown));
                tau.insert(format!("D(D{})", g.symbol), Value::String(shown));
            }
            Ok(cx.finish(
                json!({ "max_len": max_len }),
                json!({ "verdict": "witness", "tau": tau }),
                json!({ "witness_verified": true }),
                text,
                ExitStatus::Ok,
            ))
        }
        Smoothness::Unknown { max_len } => Ok(cx.finish(
            json!({ "max_len": max_len }),
            json!({ "verdict": "unknown" }),
            json!({ "searched_up_to": max_len }),
            format!("unknown: no witness with words of length <= {max_len}\n"),
            ExitStatus::Undetermined,
        )),
    }
}

fn fd_algebra(cx: &mut Ctx, file: &Path, max_len: usize) -> Result<FdAlgebra> {
    let p = cx.inputs.algebra(file)?;
    let (a, _) = FdAlgebra::from_presentation(&p, max_len)?;
    Ok(a)
}

fn drh(file: &Path, deg: usize, max_len: usize) -> Result<Done> {
    let mut cx = Ctx::new("drh");
    let a = fd_algebra(&mut cx, file, max_len)?;
    let h = karoubi_de_rham(&a, deg);
    let table: BTreeMap<String, usize> = h.iter().enumerate().map(|(i, d)| (i.to_string(), *d)).collect();
    let text = h.iter().enumerate().map(|(i, d)| format!("H^{i} = {d}\n")).collect();
    Ok(cx.finish(
        json!({ "deg": deg, "max_len": max_len }),
        json!(table),
        json!({ "algebra_dimension": a.dim() }),
        text,
        ExitStatus::Ok,
    ))
}

fn sep(file: &Path, max_len: usize) -> Result<Done> {
    let mut cx = Ctx::new("sep");
    let a = fd_algebra(&mut cx, file, max_len)?;
    let e = separability_idempotent(&a);
    let proj = omega1_projective(&a);
    let idem = e.as_ref().map(|m| {
        m.to_rows()
            .iter()
            .map(|r| r.iter().map(rat).collect::<Vec<_>>())
            .collect::<Vec<_>>()
    });
    Ok(cx.finish(
        json!({ "max_len": max_len }),
        json!({ "separable": e.is_some(), "omega1_projective": proj, "idempotent": idem }),
        json!({ "algebra_dimension": a.dim() }),
        format!("separable: {}\nomega1 projective: {}\n", e.is_some(), proj),
        ExitStatus::Ok,
    ))
}

fn module_pair(kind: &str, m: &Path, n: &Path) -> Result<Done> {
    let mut cx = Ctx::new(kind);
    let a = cx.inputs.module(m)?;
    let b = cx.inputs.module(n)?;
    if a.algebra != b.algebra {
        bail!("the two modules are over different algebras");
    }
    let value = match kind {
        "hom" => hom_dim(&a, &b)?,
        "ext1" => ext1_dim(&a, &b)?,
        _ => double_tangent_dim(&FramedModule::standard(a.clone()), &FramedModule::standard(b.clone()))?,
    };
    Ok(cx.finish(
        json!({}),
        json!({ "dimension": value }),
        json!({ "dims": [a.dim, b.dim] }),
        format!("{value}\n"),
        ExitStatus::Ok,
    ))
}

fn repr(file: &Path, n: usize, sample_rank: Option<usize>, samples: usize) -> Result<Done> {
    let mut cx = Ctx::new("repr");
    let p = cx.inputs.algebra(file)?;
    let s = ReprScheme::new(&p, n)?;
    let name = |v| s.var_name(v);
    let variables: Vec<String> = (0..s.num_vars() as u32).map(name).collect();
    let relations: Vec<String> = s.relations.iter().filter(|r| !r.is_zero()).map(|r| r.format(&name)).collect();
    let mut results = json!({
        "n": n,
        "ambient_dim": s.num_vars(),
        "variables": variables,
        "relations": relations,
    });
    let mut params = json!({ "n": n });
    let mut text = s.to_text();
    if let Some(m) = sample_rank {
        if p.ngens() != 1 || m > n {
            bail!("--sample-rank needs a one-generator algebra of idempotents and m <= n");
        }
        let seed = seed()?;
        let mut coranks = vec![];
        for pt in idempotent_points(n, m, samples, seed) {
            s.check_point(&pt)?;
            coranks.push(s.num_vars() - s.jacobian_rank_at(&pt)?);
        }
        text.push_str(&format!("# jacobian corank at rank-{m} points: {coranks:?}\n"));
        results["jacobian_coranks"] = json!(coranks);
        params["sample_rank"] = json!(m);
        params["samples"] = json!(samples);
        params["seed"] = json!(seed);
    }
    Ok(cx.finish(params, results, json!({}), text, ExitStatus::Ok))
}

fn div(file: &Path, xi: &str, n: usize) -> Result<Done> {
    let mut cx = Ctx::new("div");
    let p = cx.inputs.algebra(file)?;
    let mut images = vec![NcPoly::zero(); p.ngens()];
    for part in xi.split(',').filter(|s| !s.trim().is_empty()) {
        let (g, e) = part
            .split_once('=')
            .with_context(|| format!("--xi entry `{part}` is not of the form gen=expr"))?;
        let i = p
            .index_of(g.trim())
            .with_context(|| format!("--xi: `{}` is not a generator", g.trim()))?;
        images[i as usize] = p.parse_poly(e).with_context(|| format!("in --xi entry `{part}`"))?;
    }
    let d = Derivation::new(&p, images, 8)?;
    let s = ReprScheme::new(&p, n)?;
    let lhs = trace_of_sym_square(&s, &nc_divergence(&d)?);
    let rhs = classical_divergence(&s.vector_field(&d));
    let name = |v| s.var_name(v);
    let equal = lhs == rhs;
    Ok(cx.finish(
        json!({ "xi": xi, "n": n }),
        json!({ "trace_div": lhs.format(&name), "coordinate_div": rhs.format(&name), "equal": equal }),
        json!({}),
        format!("Tr(div xi) = {}\ndiv(field) = {}\nequal: {}\n", lhs.format(&name), rhs.format(&name), equal),
        ExitStatus::Ok,
    ))
}

fn tangent_iso(file: &Path, n: usize) -> Result<Done> {
    let mut cx = Ctx::new("tangent-iso");
    let p = cx.inputs.algebra(file)?;
    let r = tangent_iso_check(&p, n)?;
    Ok(cx.finish(
        json!({ "n": n }),
        json!({ "checked": r.checked, "mismatches": r.mismatches }),
        json!({}),
        format!("checked {} entries, {} mismatches\n", r.checked, r.mismatches.len()),
        ExitStatus::Ok,
    ))
}

fn cech_json(r: &CechReport) -> Value {
    let per: Vec<Value> = r
        .per_cutoff
        .iter()
        .map(|c| {
            let by: BTreeMap<String, &Vec<usize>> = c
                .by_degree
                .iter()
                .map(|(g, v)| (g.map_or("all".to_string(), |g| g.to_string()), v))
                .collect();
            json!({ "cutoff": c.cutoff, "totals": c.totals, "by_degree": by })
        })
        .collect();
    json!({ "per_cutoff": per, "stable": r.stable })
}

fn show_dims(v: &[Option<usize>]) -> String {
    v.iter()
        .enumerate()
        .map(|(i, h)| match h {
            Some(d) => format!("H^{i} = {d}\n"),
            None => format!("H^{i} undetermined\n"),
        })
        .collect()
}

fn cech(
    bundle: &Path,
    sheaf: Option<&Path>,
    deg: usize,
    cutoffs: &[usize],
    window: Option<&[i64]>,
    slack: usize,
) -> Result<Done> {
    let mut cx = Ctx::new("cech");
    let window = match window {
        None => None,
        Some([lo, hi]) if lo <= hi => Some((*lo, *hi)),
        Some(_) => bail!("--window expects `lo,hi` with lo <= hi"),
    };
    let cover = cx.inputs.bundle(bundle, deg + 1)?;
    let axioms = cover.check_axioms();
    if !axioms.passed() {
        let failed: Vec<&str> = axioms.checks.iter().filter(|c| !c.1).map(|c| c.0.as_str()).collect();
        bail!("cover axioms fail: {}", failed.join(", "));
    }
    let e = match sheaf {
        Some(path) => cx.inputs.comodule(path, &cover)?,
        None => Comodule::structure_sheaf(&cover),
    };
    let params = CechParams {
        max_degree: deg,
        cutoffs: cutoffs.to_vec(),
        window,
        slack,
    };
    let r = cech_cohomology(&cover, &e, &params)?;
    let status = if r.is_stable() { ExitStatus::Ok } else { ExitStatus::Undetermined };
    let checks: BTreeMap<&str, bool> = axioms.checks.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    Ok(cx.finish(
        json!({ "deg": deg, "cutoffs": cutoffs, "window": window.map(|(a, b)| vec![a, b]), "slack": slack }),
        json!({ "H": r.stable, "stabilization": cech_json(&r) }),
        json!({ "status": cover.system().status().to_string(), "axioms": checks, "faithful_flatness": "assumed" }),
        show_dims(&r.stable),
        status,
    ))
}

fn table_json(t: &Tables) -> Value {
    json!({ "hom": t.hom, "ext1": t.ext1 })
}

fn nproj(d: usize, sheaf: Option<SheafArg>, cutoffs: &[usize]) -> Result<Done> {
    let cx = Ctx::new("nproj");
    let params = CechParams {
        cutoffs: cutoffs.to_vec(),
        ..ncg_core::nproj::default_params()
    };
    let param_json = json!({
        "d": d,
        "cutoffs": cutoffs,
        "window": [params.window.map(|w| w.0), params.window.map(|w| w.1)],
        "slack": params.slack,
        "sheaf": sheaf.map(|s| format!("{s:?}")),
    });
    if let Some(s) = sheaf {
        let j = JouanolouCover::new(d)?;
        let target = match s {
            SheafArg::O => Sheaf::O,
            SheafArg::O1 => Sheaf::O1,
        };
        let r = np_cohomology(&j, Sheaf::O, target, &params)?;
        let status = if r.is_stable() { ExitStatus::Ok } else { ExitStatus::Undetermined };
        return Ok(cx.finish(
            param_json,
            json!({ "d": d, "sheaf": target.name(), "H": r.stable, "stabilization": cech_json(&r) }),
            json!({ "status": j.cover.system().status().to_string() }),
            show_dims(&r.stable),
            status,
        ));
    }
    let cmp = quiver_compare(d, &params)?;
    let stabilization: BTreeMap<String, Value> = cmp
        .reports
        .iter()
        .map(|((e, f), r)| (format!("Hom({},{})", e.name(), f.name()), cech_json(r)))
        .collect();
    let (k0, text, status) = match k0_pairing(&cmp) {
        Ok(k) => {
            let t = cmp.np.as_ref().expect("conclusive");
            let text = format!(
                "hom = {:?}\next1 = {:?}\nquiver hom = {:?}\nmatches quiver: {}\nk0 = {:?}, det = {}\n",
                t.hom,
                t.ext1,
                cmp.quiver.hom,
                cmp.matches(),
                k.matrix,
                k.det
            );
            (json!({ "matrix": k.matrix, "det": k.det }), text, ExitStatus::Ok)
        }
        Err(_) => (Value::Null, "inconclusive: cohomology did not stabilize\n".to_string(), ExitStatus::Undetermined),
    };
    Ok(cx.finish(
        param_json,
        json!({
            "d": d,
            "tables": cmp.np.as_ref().map(table_json),
            "quiver_tables": table_json(&cmp.quiver),
            "pairing": { "O": "P1 = A e1", "O(1)": "P0 = A e0" },
            "matches_quiver": cmp.matches(),
            "k0": k0,
            "stabilization": stabilization,
        }),
        json!({ "conclusive": cmp.conclusive() }),
        text,
        status,
    ))
}
