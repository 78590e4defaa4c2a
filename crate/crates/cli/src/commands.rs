//! Subcommand implementations. Each returns a JSON report and a verdict.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use twinheart_core::category::{Obj, PresentedCategory};
use twinheart_core::cluster::{build_cluster_category, ClusterCategory};
use twinheart_core::localise::{module_inventory, InventoryBound, Localisation, Representation};
use twinheart_core::matrix::Mat;
use twinheart_core::preab::{
    check_integral, check_quasi_abelian, check_semi_abelian, irreducible_morphisms, SampleConfig,
};
use twinheart_core::scalar::Field;
use twinheart_core::torsion::{canonical_twin_from_rigid, is_rigid, two_cy_checks, CanonicalTwin};

use crate::bundle::{scalars, Bundle, ScalarRepr};
use crate::config::{InventoryArg, RunConfig, SuiteArg};
use crate::{dot, report, CliError, Outcome};

/// The field used to enumerate module inventories.
pub const INVENTORY_PRIME: u32 = 5;

/// The category under study: freshly built, or read from a bundle.
pub enum Source {
    Cluster(ClusterCategory),
    Loaded(PresentedCategory),
}

impl Source {
    pub fn open(cfg: &RunConfig) -> Result<Source, CliError> {
        match &cfg.bundle {
            Some(path) => {
                let text = read(Path::new(path))?;
                Ok(Source::Loaded(Bundle::from_json(&text)?.to_category()?))
            }
            None => Ok(Source::Cluster(build_cluster_category(cfg.rank, cfg.parsed_field)?)),
        }
    }

    pub fn category(&self) -> &PresentedCategory {
        match self {
            Source::Cluster(c) => c.category(),
            Source::Loaded(c) => c,
        }
    }

    /// Names, aliases and arcs for built categories; plain names for bundles.
    pub fn parse_obj(&self, text: &str) -> Result<Obj, CliError> {
        Ok(match self {
            Source::Cluster(c) => c.parse_obj(text)?,
            Source::Loaded(c) => c.parse_obj(text)?,
        })
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(format!("reading {}: {e}", path.display())))
}

pub fn write(path: &Path, text: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::io(format!("creating {}: {e}", dir.display())))?;
    }
    fs::write(path, text).map_err(|e| CliError::io(format!("writing {}: {e}", path.display())))
}

fn envelope(command: &str, cfg: &RunConfig, passed: bool, body: Value) -> Value {
    json!({
        "schema_version": report::SCHEMA_VERSION,
        "command": command,
        "config": cfg,
        "passed": passed,
        "result": body,
    })
}

fn outcome(command: &str, cfg: &RunConfig, passed: bool, body: Value, summary: Vec<String>) -> Outcome {
    Outcome {
        report: envelope(command, cfg, passed, body),
        passed,
        summary,
    }
}

fn stem(cfg: &RunConfig) -> String {
    format!("c_a{}", cfg.rank)
}

fn file_list(paths: &[PathBuf]) -> Value {
    json!(paths.iter().map(|p| p.display().to_string()).collect::<Vec<_>>())
}

/// The rigid object and its canonical twin pair, or a failed report.
fn canonical(src: &Source, cfg: &RunConfig) -> Result<Result<(Obj, CanonicalTwin), Value>, CliError> {
    let cat = src.category();
    let r = src.parse_obj(&cfg.rigid)?;
    if !is_rigid(cat, &r)? {
        return Ok(Err(json!({ "rigid": report::obj(cat, &r), "is_rigid": false })));
    }
    let ct = canonical_twin_from_rigid(cat, &r)?;
    Ok(Ok((r, ct)))
}

pub fn build(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let c = build_cluster_category(cfg.rank, cfg.parsed_field)?;
    let cat = c.category();
    let validation = cat.validate();
    let names: serde_json::Map<String, Value> = cat
        .all_indecs()
        .map(|i| (cat.name(i).to_string(), json!({ "id": i, "arc": c.arc(i).to_string() })))
        .collect();
    let stem = stem(cfg);
    let files = [
        cfg.out_dir.join(format!("{stem}.bundle.json")),
        cfg.out_dir.join(format!("{stem}.names.json")),
        cfg.out_dir.join(format!("{stem}.ar.dot")),
    ];
    write(&files[0], &Bundle::from_category(cat).to_json())?;
    write(
        &files[1],
        &(serde_json::to_string_pretty(&names).expect("names serialize") + "\n"),
    )?;
    write(&files[2], &dot::ar_quiver(cat)?)?;
    let body = json!({
        "indecomposables": cat.n(),
        "validation": report::validation(cat, &validation),
        "files": file_list(&files),
    });
    let summary = vec![
        format!("built C_A{} over {}: {} indecomposables", cfg.rank, cfg.field, cat.n()),
        format!("validation: {}", if validation.passed() { "pass" } else { "FAIL" }),
    ];
    Ok(outcome("build", cfg, validation.passed(), body, summary))
}

fn twin_body(cat: &PresentedCategory, r: &Obj, ct: &CanonicalTwin) -> Result<(bool, Value), CliError> {
    let tw = &ct.twin;
    let two_cy = two_cy_checks(cat, tw)?;
    let all = twinheart_core::category::SubcatSpec::all(cat.n());
    let checks = json!({
        "w_equals_x_r": tw.w == ct.x_r,
        "t_equals_u": tw.t == tw.u,
        "h_is_everything": tw.h == all,
        "two_cy_t_equals_u": two_cy.t_equals_u,
        "two_cy_s_equals_v": two_cy.s_equals_v,
    });
    let body = json!({
        "rigid": report::obj(cat, r),
        "is_rigid": true,
        "x_r": report::spec(cat, &ct.x_r),
        "twin": report::twin(cat, tw),
        "checks": checks,
    });
    Ok((tw.is_valid(), body))
}

pub fn twin(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let src = Source::open(cfg)?;
    let cat = src.category();
    let (r, ct) = match canonical(&src, cfg)? {
        Ok(v) => v,
        Err(body) => {
            return Ok(outcome(
                "twin",
                cfg,
                false,
                body,
                vec!["rigid object is not rigid".into()],
            ))
        }
    };
    let (passed, body) = twin_body(cat, &r, &ct)?;
    let summary = vec![
        format!("R = {}", cat.obj_name(&r)),
        format!(
            "X_R = {{{}}}",
            ct.x_r.iter().map(|i| cat.name(i)).collect::<Vec<_>>().join(", ")
        ),
        format!(
            "twin cotorsion pair: {}",
            if passed { "certified" } else { "NOT certified" }
        ),
    ];
    Ok(outcome("twin", cfg, passed, body, summary))
}

pub fn heart(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let src = Source::open(cfg)?;
    let (_, ct) = match canonical(&src, cfg)? {
        Ok(v) => v,
        Err(body) => {
            return Ok(outcome(
                "heart",
                cfg,
                false,
                body,
                vec!["rigid object is not rigid".into()],
            ))
        }
    };
    let h = ct.heart.category();
    let body = json!({
        "indecomposables": h.names(),
        "count": h.n(),
        "homdim": report::homdims(h),
    });
    let summary = vec![format!("heart has {} indecomposables: {}", h.n(), h.names().join(", "))];
    Ok(outcome("heart", cfg, true, body, summary))
}

pub fn classify(cfg: &RunConfig, dot_path: Option<&Path>) -> Result<Outcome, CliError> {
    let src = Source::open(cfg)?;
    let (_, ct) = match canonical(&src, cfg)? {
        Ok(v) => v,
        Err(body) => {
            return Ok(outcome(
                "classify",
                cfg,
                false,
                body,
                vec!["rigid object is not rigid".into()],
            ))
        }
    };
    let h = ct.heart.category();
    let q = irreducible_morphisms(h)?;
    if let Some(path) = dot_path {
        write(path, &dot::decorated_heart(h, &q))?;
    }
    let regular: Vec<String> = q
        .regular_arrows()
        .map(|a| format!("{} -> {}", h.name(a.from), h.name(a.to)))
        .collect();
    let summary = vec![
        format!("{} irreducible arrows in the heart", q.arrow_count()),
        format!("regular: {}", regular.join(", ")),
    ];
    Ok(outcome("classify", cfg, true, report::quiver(h, &q), summary))
}

fn suites(which: Option<SuiteArg>) -> Vec<SuiteArg> {
    match which {
        Some(s) => vec![s],
        None => vec![SuiteArg::SemiAbelian, SuiteArg::QuasiAbelian, SuiteArg::Integral],
    }
}

pub fn sample_config(cfg: &RunConfig, exhaustive: bool, max_mult: Option<usize>) -> Result<SampleConfig, CliError> {
    let mut sc = if exhaustive {
        SampleConfig::exhaustive(cfg.parsed_field, max_mult.unwrap_or(1))?
    } else {
        SampleConfig::sampled(cfg.parsed_field, cfg.seed, cfg.samples)
    };
    if let (false, Some(m)) = (exhaustive, max_mult) {
        sc.max_mult = m;
    }
    sc.validate(cfg.parsed_field)?;
    Ok(sc)
}

fn run_suites(
    h: &PresentedCategory,
    which: &[SuiteArg],
    sc: &SampleConfig,
) -> Result<(bool, Vec<Value>, Vec<String>), CliError> {
    let mut passed = true;
    let mut reports = Vec::new();
    let mut summary = Vec::new();
    for &s in which {
        let r = match s {
            SuiteArg::SemiAbelian => check_semi_abelian(h, sc)?,
            SuiteArg::QuasiAbelian => check_quasi_abelian(h, sc)?,
            SuiteArg::Integral => check_integral(h, sc)?,
        };
        passed &= r.passed();
        summary.push(format!(
            "{}: {} ({} checks)",
            r.suite.name(),
            if r.passed() { "pass" } else { "FAIL" },
            r.total_checks()
        ));
        reports.push(report::suite(h, &r));
    }
    Ok((passed, reports, summary))
}

pub fn check(
    cfg: &RunConfig,
    suite: Option<SuiteArg>,
    exhaustive: bool,
    max_mult: Option<usize>,
    dot_path: Option<&Path>,
) -> Result<Outcome, CliError> {
    let sc = sample_config(cfg, exhaustive, max_mult)?;
    let src = Source::open(cfg)?;
    let (_, ct) = match canonical(&src, cfg)? {
        Ok(v) => v,
        Err(body) => {
            return Ok(outcome(
                "check",
                cfg,
                false,
                body,
                vec!["rigid object is not rigid".into()],
            ))
        }
    };
    let h = ct.heart.category();
    let (passed, reports, summary) = run_suites(h, &suites(suite), &sc)?;
    if let Some(path) = dot_path {
        write(path, &dot::decorated_heart(h, &irreducible_morphisms(h)?))?;
    }
    let body = json!({
        "exhaustive": exhaustive,
        "max_mult": sc.max_mult,
        "heart": h.names(),
        "suites": reports,
    });
    Ok(outcome("check", cfg, passed, body, summary))
}

#[derive(serde::Deserialize)]
struct InventoryFile {
    field: String,
    modules: Vec<InventoryModule>,
}

#[derive(serde::Deserialize)]
struct InventoryModule {
    dims: Vec<usize>,
    /// Row-major entries of each arrow's matrix, in the quiver's arrow order.
    maps: Vec<Vec<ScalarRepr>>,
}

fn load_inventory(loc: &Localisation, which: &InventoryArg) -> Result<Vec<Representation>, CliError> {
    let q = &loc.ext_quiver().quiver;
    match which {
        InventoryArg::Auto => {
            let field = Field::prime(INVENTORY_PRIME)?;
            Ok(module_inventory(q, field, InventoryBound::thin(q))?)
        }
        InventoryArg::File(path) => {
            let text = read(path)?;
            let file: InventoryFile = serde_json::from_str(&text)
                .map_err(|e| CliError::usage(format!("malformed inventory {}: {e}", path.display())))?;
            let field = Field::parse_tag(&file.field)?;
            file.modules
                .into_iter()
                .map(|m| {
                    if m.maps.len() != q.arrows.len() {
                        return Err(CliError::usage(format!(
                            "inventory module has {} maps for {} arrows",
                            m.maps.len(),
                            q.arrows.len()
                        )));
                    }
                    let maps = q
                        .arrows
                        .iter()
                        .zip(&m.maps)
                        .map(|(&(s, t), entries)| {
                            let data = entries
                                .iter()
                                .map(|e| e.to_scalar(field))
                                .collect::<Result<Vec<_>, _>>()?;
                            Mat::new(field, *m.dims.get(t).unwrap_or(&0), *m.dims.get(s).unwrap_or(&0), data)
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok(Representation::new(q, field, m.dims, maps)?)
                })
                .collect()
        }
    }
}

/// Λ_R, its quiver, the equivalence checks and the covers, as one report body.
fn localise_body(
    loc: &Localisation,
    cfg: &RunConfig,
    verify: bool,
    inventory: &InventoryArg,
) -> Result<(bool, Value, Vec<String>), CliError> {
    let cat = loc.category();
    let alg = loc.algebra();
    let aq = loc.ext_quiver();
    let st = loc.heart_st();
    let stc = st.category();
    let mut passed = true;
    let mut summary = Vec::new();

    let labels = &aq.quiver.labels;
    let arrows: Vec<String> = aq
        .quiver
        .arrows
        .iter()
        .map(|&(s, t)| format!("{}->{}", labels[s], labels[t]))
        .collect();
    let no_relations = aq.has_no_relations(alg);
    summary.push(format!("dim Lambda_R = {}; quiver {}", alg.dim, arrows.join(", ")));
    let algebra = json!({
        "dim": alg.dim,
        "basis": alg.basis.iter().map(|b| report::mor(cat, b)).collect::<Vec<_>>(),
        "unit": scalars(&alg.unit),
        "quiver": { "vertices": labels, "arrows": arrows, "path_count": aq.quiver.path_count() },
        "no_relations": no_relations,
    });

    let mut covers = Vec::new();
    let mut covers_ok = true;
    for y in cat.all_indecs() {
        match loc.find_cover(&Obj::indec(y)) {
            Ok(c) => covers.push(json!({ "y": cat.name(y), "x": report::obj(cat, &c.x) })),
            Err(e) => {
                covers_ok = false;
                covers.push(json!({ "y": cat.name(y), "x": Value::Null, "error": e.to_string() }));
            }
        }
    }
    passed &= covers_ok;
    summary.push(format!("covers: {}", if covers_ok { "all found" } else { "MISSING" }));

    let factor = loc.factor_through_s_check(cfg.samples, cfg.seed)?;
    passed &= factor.passed();
    summary.push(format!(
        "[W] maps from C(R) in [add Sigma R]: {}/{} ({} sampled)",
        factor.in_s, factor.in_w, factor.sampled
    ));
    let factor_json = json!({
        "sampled": factor.sampled,
        "in_w": factor.in_w,
        "in_add_sigma_r": factor.in_s,
        "passed": factor.passed(),
        "failures": factor.failures.iter().map(|f| report::mor(cat, f)).collect::<Vec<_>>(),
    });

    let equivalence = if verify {
        let inv = if no_relations {
            Some(load_inventory(loc, inventory)?)
        } else {
            None
        };
        let eq = loc.verify_equivalence(inv.as_deref())?;
        passed &= eq.is_equivalence();
        let pairs: Vec<Value> = eq
            .pairs
            .iter()
            .map(|p| {
                json!({
                    "x": stc.name(p.x), "y": stc.name(p.y),
                    "hom_heart": p.hom_heart, "hom_module": p.hom_module, "rank": p.rank,
                })
            })
            .collect();
        let density: Vec<Value> = eq
            .density
            .iter()
            .map(|(m, x)| json!({ "module": m, "preimage": x.map(|q| stc.name(q)) }))
            .collect();
        summary.push(format!(
            "G = E F: faithful {}, full {}, dense {}",
            eq.faithful,
            eq.full,
            eq.dense.map_or("unchecked".to_string(), |d| d.to_string())
        ));
        json!({
            "equivalence": eq.is_equivalence(),
            "faithful": eq.faithful,
            "full": eq.full,
            "dense": eq.dense,
            "heart_count": eq.heart_count,
            "inventory_count": eq.inventory_count,
            "pairs": pairs,
            "density": density,
        })
    } else {
        Value::Null
    };

    let body = json!({
        "algebra": algebra,
        "heart_st": stc.names(),
        "c_r": report::spec(cat, loc.c_r()),
        "covers": covers,
        "factor_through_sigma_r": factor_json,
        "equivalence": equivalence,
    });
    Ok((passed, body, summary))
}

pub fn localise(cfg: &RunConfig, verify: bool, inventory: &InventoryArg) -> Result<Outcome, CliError> {
    let src = Source::open(cfg)?;
    let r = src.parse_obj(&cfg.rigid)?;
    let loc = Localisation::new(src.category(), &r)?;
    let (passed, body, summary) = localise_body(&loc, cfg, verify, inventory)?;
    Ok(outcome("localise", cfg, passed, body, summary))
}

pub fn export(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let src = Source::open(cfg)?;
    let cat = src.category();
    let stem = stem(cfg);
    let ar_path = cfg.out_dir.join(format!("{stem}.ar.dot"));
    write(&ar_path, &dot::ar_quiver(cat)?)?;
    let mut files = vec![ar_path];
    let (_, ct) = match canonical(&src, cfg)? {
        Ok(v) => v,
        Err(body) => {
            return Ok(outcome(
                "export",
                cfg,
                false,
                body,
                vec!["rigid object is not rigid".into()],
            ))
        }
    };
    let h = ct.heart.category();
    let q = irreducible_morphisms(h)?;
    let heart_path = cfg.out_dir.join(format!("{stem}.heart.dot"));
    write(&heart_path, &dot::decorated_heart(h, &q))?;
    files.push(heart_path);
    let regular = q.regular_arrows().map(|a| a.multiplicity).sum::<usize>();
    let body = json!({ "files": file_list(&files), "heart_nodes": h.n(), "regular_edges": regular });
    let summary = vec![format!(
        "wrote {} DOT files; {} regular edges in the heart",
        files.len(),
        regular
    )];
    Ok(outcome("export", cfg, true, body, summary))
}

pub fn verify_all(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let src = Source::open(cfg)?;
    let cat = src.category();
    let mut sections = serde_json::Map::new();
    let mut summary = Vec::new();

    let validation = cat.validate();
    sections.insert("validation".into(), report::validation(cat, &validation));
    summary.push(format!(
        "validation: {}",
        if validation.passed() { "pass" } else { "FAIL" }
    ));
    if !validation.passed() {
        return Ok(finish_verify_all(cfg, false, sections, summary));
    }

    let (r, ct) = match canonical(&src, cfg)? {
        Ok(v) => v,
        Err(body) => {
            sections.insert("twin".into(), body);
            summary.push("rigid object is not rigid".into());
            return Ok(finish_verify_all(cfg, false, sections, summary));
        }
    };
    let (mut passed, twin) = twin_body(cat, &r, &ct)?;
    sections.insert("twin".into(), twin);
    summary.push(format!(
        "twin cotorsion pair: {}",
        if passed { "certified" } else { "NOT certified" }
    ));

    let h = ct.heart.category();
    sections.insert("heart".into(), json!({ "indecomposables": h.names(), "count": h.n() }));
    summary.push(format!("heart: {} indecomposables", h.n()));

    let sc = sample_config(cfg, false, None)?;
    let (suites_ok, reports, lines) = run_suites(h, &suites(None), &sc)?;
    passed &= suites_ok;
    sections.insert("suites".into(), json!(reports));
    summary.extend(lines);

    let q = irreducible_morphisms(h)?;
    sections.insert("heart_quiver".into(), report::quiver(h, &q));
    summary.push(format!("regular irreducible arrows: {}", q.regular_arrows().count()));

    // The localisation needs a basic rigid object.
    let basic = r.multiplicities().values().all(|&m| m == 1);
    if basic && !r.is_zero() {
        let loc = Localisation::new(cat, &r)?;
        let (ok, body, lines) = localise_body(&loc, cfg, true, &InventoryArg::Auto)?;
        passed &= ok;
        sections.insert("localisation".into(), body);
        summary.extend(lines);
    } else {
        let reason = if r.is_zero() { "R is zero" } else { "R is not basic" };
        sections.insert("localisation".into(), json!({ "skipped": reason }));
        summary.push(format!("localisation skipped: {reason}"));
    }
    Ok(finish_verify_all(cfg, passed, sections, summary))
}

fn finish_verify_all(
    cfg: &RunConfig,
    passed: bool,
    sections: serde_json::Map<String, Value>,
    mut summary: Vec<String>,
) -> Outcome {
    summary.push(format!("overall: {}", if passed { "PASS" } else { "FAIL" }));
    outcome("verify-all", cfg, passed, Value::Object(sections), summary)
}
