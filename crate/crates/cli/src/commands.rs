use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Value};

use gorkit::algebra::{builtin, Algebra};
use gorkit::frobext::{self, CheckReport, FrobError, FrobeniusVerdict};
use gorkit::gorenstein::{self, GorensteinCertificate, IgStatus};
use gorkit::io::{self, ModuleFile};
use gorkit::linalg::PrimeField;
use gorkit::modcat::Module;
use gorkit::oracle;
use gorkit::resolve::{self, DimValue};

use crate::report::{Failure, Report};
use crate::{Command, Config};

type Outcome = Result<(), Failure>;

fn algebra(path: &Path, cfg: &Config, r: &mut Report) -> Result<Arc<Algebra>, Failure> {
    r.input(path);
    Ok(io::load_algebra(path, cfg.prime)?)
}

fn module(path: &Path, alg: &Arc<Algebra>, r: &mut Report) -> Result<Module, Failure> {
    r.input(path);
    Ok(io::load_module(path, Some(alg), None)?)
}

fn certificate(alg: &Arc<Algebra>, cfg: &Config, r: &mut Report) -> GorensteinCertificate {
    let cert = gorenstein::certify_ig(alg, cfg.cap);
    r.result("certificate", json!(cert.to_string()));
    cert
}

fn dim_json(v: &DimValue) -> Value {
    match v {
        DimValue::Exact(n) => json!({"kind": "exact", "value": n}),
        DimValue::AtLeast(n) => json!({"kind": "at_least", "value": n}),
        DimValue::Infinite(_) => json!({"kind": "infinite", "witness": v.to_string()}),
    }
}

fn report_dim(name: &str, v: DimValue, r: &mut Report) {
    r.line(format!("{name} = {v}"));
    r.result(name, dim_json(&v));
    if let DimValue::AtLeast(n) = v {
        r.warn(format!("capped: resolution stopped at length {n} without a periodicity or growth witness"));
    }
}

pub fn run(cmd: &Command, cfg: &Config, r: &mut Report) -> Outcome {
    match cmd {
        Command::Basis { algebra: a } => {
            let alg = algebra(a, cfg, r)?;
            let labels: Vec<String> = (0..alg.dim()).map(|b| alg.basis_label(b)).collect();
            r.line(format!("dim A = {}", alg.dim()));
            r.line(format!("basis: {}", labels.join(" ")));
            r.result("dimension", json!(alg.dim()));
            r.result("basis", json!(labels));
            if let Some(p) = alg.presentation() {
                for w in p.truncation_warnings() {
                    r.warn(w);
                }
            }
            Ok(())
        }
        Command::Ext { algebra: a, m, n, degree } => {
            let alg = algebra(a, cfg, r)?;
            let (m, n) = (module(m, &alg, r)?, module(n, &alg, r)?);
            let d = resolve::ext_dim(&m, &n, *degree)?;
            let o = oracle::ext_oracle(&m, &n, *degree)?;
            if d != o {
                return Err(Failure::internal(format!("Ext^{degree}: engine {d} but oracle {o}")));
            }
            r.line(format!("dim Ext^{degree} = {d}"));
            r.result("degree", json!(degree));
            r.result("dimension", json!(d));
            Ok(())
        }
        Command::Pd { algebra: a, m } => {
            let alg = algebra(a, cfg, r)?;
            let m = module(m, &alg, r)?;
            report_dim("pd", resolve::pd(&m, cfg.cap), r);
            Ok(())
        }
        Command::Id { algebra: a, m } => {
            let alg = algebra(a, cfg, r)?;
            let m = module(m, &alg, r)?;
            report_dim("id", resolve::id(&m, cfg.cap), r);
            Ok(())
        }
        Command::IgCertify { algebra: a } => {
            let alg = algebra(a, cfg, r)?;
            let cert = certificate(&alg, cfg, r);
            r.line(cert.to_string());
            let names = alg.quiver().vertices();
            let side = |vals: &[DimValue]| -> Value {
                Value::Array(vals.iter().zip(names).map(|(v, n)| json!({"vertex": n, "id": dim_json(v)})).collect())
            };
            for (v, name) in cert.left.iter().zip(names) {
                r.line(format!("  id A e_{name} = {v}"));
            }
            for (v, name) in cert.right.iter().zip(names) {
                r.line(format!("  id e_{name} A = {v}"));
            }
            r.result("left", side(&cert.left));
            r.result("right", side(&cert.right));
            match cert.status {
                IgStatus::Certified(d) => r.result("d", json!(d)),
                _ => {
                    r.result("d", Value::Null);
                    r.warn(format!("not certified within cap {}", cfg.cap));
                }
            }
            Ok(())
        }
        Command::GpTest { algebra: a, m } => {
            let alg = algebra(a, cfg, r)?;
            let m = module(m, &alg, r)?;
            let cert = certificate(&alg, cfg, r);
            let gp = gorenstein::is_gp(&m, &cert)?;
            r.line(format!("Gorenstein projective: {}", if gp { "yes" } else { "no" }));
            r.result("gorenstein_projective", json!(gp));
            Ok(())
        }
        Command::Gdim { algebra: a, m } => {
            let alg = algebra(a, cfg, r)?;
            let m = module(m, &alg, r)?;
            let cert = certificate(&alg, cfg, r);
            let g = gorenstein::gdim(&m, &cert)?;
            let pd = gorenstein::finite_pd(&m, &cert)?;
            let suffix = if pd.is_some() { " (= pd)" } else { "" };
            r.line(format!("Gd = {g}{suffix}"));
            r.result("gdim", json!(g));
            r.result("pd", json!(pd));
            Ok(())
        }
        Command::Gext { algebra: a, x, y, degree } | Command::GextDirect { algebra: a, x, y, degree } => {
            let alg = algebra(a, cfg, r)?;
            let (x, y) = (module(x, &alg, r)?, module(y, &alg, r)?);
            let cert = certificate(&alg, cfg, r);
            let d = match cmd {
                Command::Gext { .. } => gorenstein::gorenstein_ext(&x, &y, *degree, &cert)?,
                _ => gorenstein::gorenstein_ext_direct(&x, &y, *degree, &cert)?,
            };
            r.line(format!("dim GE^{degree} = {d}"));
            r.result("degree", json!(degree));
            r.result("dimension", json!(d));
            Ok(())
        }
        Command::Tate { algebra: a, x, y, from, to } => {
            let alg = algebra(a, cfg, r)?;
            let (x, y) = (module(x, &alg, r)?, module(y, &alg, r)?);
            let cert = certificate(&alg, cfg, r);
            let needed = from.unsigned_abs().max(to.unsigned_abs()) + 2;
            if needed > cfg.window {
                return Err(gorenstein::GorensteinError::WindowTooSmall { window: cfg.window, needed }.into());
            }
            let cr = gorenstein::complete_resolution(&x, &cert, cfg.window)?;
            let mut values = Vec::new();
            for i in *from..=*to {
                let d = gorenstein::tate_ext_in(&cr, &x, &y, i)?;
                r.line(format!("dim Ext^{i}_tate = {d}"));
                values.push(json!({"degree": i, "dimension": d}));
            }
            if cr.is_zero() {
                r.line("complete resolution is zero (finite projective dimension)");
            }
            r.result("tate", Value::Array(values));
            Ok(())
        }
        Command::AmCheck { algebra: a, x, y } => {
            let alg = algebra(a, cfg, r)?;
            let (x, y) = (module(x, &alg, r)?, module(y, &alg, r)?);
            let cert = certificate(&alg, cfg, r);
            let rep = gorenstein::am_sequence_check(&x, &y, &cert)?;
            r.line("k  GE  Ext  Tate");
            for k in 0..rep.degrees {
                r.line(format!("{}  {}  {}  {}", k + 1, rep.ge[k], rep.ext[k], rep.tate[k]));
            }
            r.line(format!("exact: {}", if rep.exact { "yes" } else { "no" }));
            r.line(format!("engines agree: {}", if rep.engines_agree { "yes" } else { "no" }));
            r.result("ge", json!(rep.ge));
            r.result("ext", json!(rep.ext));
            r.result("tate", json!(rep.tate));
            r.result("ranks", json!(rep.ranks));
            r.result("exact", json!(rep.exact));
            r.result("engines_agree", json!(rep.engines_agree));
            if !rep.exact || !rep.engines_agree {
                r.fail_check();
            }
            Ok(())
        }
        Command::Nakayama { algebra: a, m } => {
            let alg = algebra(a, cfg, r)?;
            let m = module(m, &alg, r)?;
            let nu = gorenstein::nakayama(&m)?;
            let names = alg.quiver().vertices();
            let dims: Vec<String> = names.iter().zip(nu.dims()).map(|(v, d)| format!("{v}:{d}")).collect();
            r.line(format!("nu(M) dims {}", dims.join(" ")));
            r.result("module", serde_json::to_value(ModuleFile::from_module(&nu)).expect("module serializes"));
            Ok(())
        }
        Command::FrobCheck { extension } => frob_check(extension, cfg, r),
        Command::TransferCheck { extension, samples, dim_cap } => transfer_check(extension, *samples, *dim_cap, cfg, r),
        Command::Selftest { algebra: name, dim_cap } => selftest(name, *dim_cap, cfg, r),
    }
}

fn summarize(title: &str, rep: &CheckReport, r: &mut Report) {
    let total = rep.lines.len();
    let passed = rep.lines.iter().filter(|l| l.passed).count();
    r.line(format!("{title}: {passed}/{total} passed"));
    for l in rep.failures() {
        r.line(format!("  FAILED {}: {}", l.name, l.detail));
    }
    r.result(
        title,
        json!({"passed": passed, "total": total,
               "failures": rep.failures().map(|l| json!({"check": l.name, "detail": l.detail})).collect::<Vec<_>>()}),
    );
    if passed != total {
        r.fail_check();
    }
}

fn structural(alg: &Arc<Algebra>) -> Result<Vec<Module>, Failure> {
    let mut out = vec![Module::zero(alg), Module::regular(alg)];
    for v in 0..alg.vertex_count() {
        out.push(Module::simple(alg, v));
        out.push(Module::vertex_projective(alg, v)?);
        out.push(Module::vertex_injective(alg, v)?);
    }
    Ok(out)
}

fn frob_check(path: &Path, cfg: &Config, r: &mut Report) -> Outcome {
    r.input(path);
    let (emb, alpha) = io::load_extension(path, cfg.prime)?;
    let verdict = match frobext::verify_frobenius(&emb, &alpha, cfg.trials, cfg.seed) {
        Err(FrobError::NotProjective) => {
            r.line("refuted: R is not projective as a left S-module");
            r.result("verdict", json!("refuted"));
            return Ok(());
        }
        other => other?,
    };
    let ext = match verdict {
        FrobeniusVerdict::NotFound { candidates, sampled } => {
            r.line("no invertible bimodule map found (probabilistic)");
            r.result("verdict", json!("not_found"));
            r.result("candidates", json!(candidates));
            r.result("sampled", json!(sampled));
            r.warn(format!("{candidates} basis candidates and {sampled} random combinations tried"));
            return Ok(());
        }
        FrobeniusVerdict::Verified(ext) => ext,
    };
    r.line("Frobenius extension verified");
    r.result("verdict", json!("verified"));
    r.line(format!("R over S: vertex projective multiplicities {:?}", ext.multiplicities));
    r.result("multiplicities", json!(ext.multiplicities));
    let pairing = ext.check_pairing();
    r.line(format!("pairing associative, twisted-linear, non-degenerate: {}", if pairing { "yes" } else { "no" }));
    r.result("pairing_ok", json!(pairing));
    if !pairing {
        r.fail_check();
    }
    let ms = structural(emb.sub())?;
    let xs = structural(emb.big())?;
    summarize("adjunctions", &frobext::check_adjunctions(&emb, &ms, &xs)?, r);
    let proj = frobext::check_projective_correspondence(&emb, cfg.trials, cfg.seed)?;
    summarize("projective correspondence", &proj, r);
    let twist = frobext::check_ind_coind_twist(&ext, &ms, cfg.trials, cfg.seed)?;
    summarize("induction vs twisted coinduction", &twist, r);
    Ok(())
}

fn transfer_check(path: &Path, samples: usize, dim_cap: usize, cfg: &Config, r: &mut Report) -> Outcome {
    r.input(path);
    let (emb, _) = io::load_extension(path, cfg.prime)?;
    let cs = gorenstein::certify_ig(emb.sub(), cfg.cap);
    let cr = gorenstein::certify_ig(emb.big(), cfg.cap);
    r.line(format!("S: {cs}"));
    r.line(format!("R: {cr}"));
    r.result("certificate_sub", json!(cs.to_string()));
    r.result("certificate_big", json!(cr.to_string()));
    let xs = oracle::random_modules(emb.big(), samples, cfg.seed, dim_cap)?;
    let rep = frobext::transfer_checks(&emb, &cs, &cr, &xs)?;
    let mut families: Vec<String> = Vec::new();
    for l in &rep.lines {
        let fam = l.name.split(" #").next().unwrap_or(&l.name).to_string();
        if !families.contains(&fam) {
            families.push(fam);
        }
    }
    for fam in families {
        let sub = CheckReport {
            lines: rep.lines.iter().filter(|l| l.name.split(" #").next() == Some(fam.as_str())).cloned().collect(),
        };
        summarize(&fam, &sub, r);
    }
    Ok(())
}

fn selftest(name: &str, dim_cap: Option<usize>, cfg: &Config, r: &mut Report) -> Outcome {
    let field = match cfg.prime {
        Some(p) => PrimeField::new(p).map_err(Failure::precondition)?,
        None => PrimeField::default(),
    };
    let pres =
        builtin::by_name(name, field).ok_or_else(|| Failure::precondition(format!("unknown algebra `{name}`")))?;
    let alg = pres.compile().map_err(Failure::precondition)?;
    let cert = certificate(&alg, cfg, r);
    r.line(format!("{name}: {cert}"));
    let needed = (0..alg.vertex_count())
        .map(|v| Module::vertex_projective(&alg, v).map(|p| p.total_dim()))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .max()
        .unwrap_or(0);
    let corpus = oracle::generate_corpus(&alg, cfg.seed, dim_cap.unwrap_or(needed.max(4)))?;
    r.line(format!("corpus: {} modules", corpus.modules.len()));
    r.result("corpus", json!(corpus.names()));
    let top = cert.d().map(|d| d + 2).unwrap_or(3);
    let mut failures = Vec::new();
    let mut ext_checks = 0;
    for (mn, m) in &corpus.modules {
        for (nn, n) in &corpus.modules {
            for i in 0..=top {
                ext_checks += 1;
                let (e, o) = (resolve::ext_dim(m, n, i)?, oracle::ext_oracle(m, n, i)?);
                if e != o {
                    failures.push(format!("Ext^{i}({mn}, {nn}): engine {e}, oracle {o}"));
                }
            }
        }
    }
    r.line(format!("Ext engine = oracle: {ext_checks} checks"));
    let mut ge_checks = 0;
    if cert.d().is_ok() {
        let mut gp = 0;
        for (mn, m) in &corpus.modules {
            if gorenstein::is_gp(m, &cert)? {
                gp += 1;
                let (_, _, eta) = gorenstein::unit_map(m)?;
                if !eta.is_isomorphism() {
                    failures.push(format!("{mn}: unit is not an isomorphism"));
                }
            }
            for (nn, n) in &corpus.modules {
                for k in 0..=top {
                    ge_checks += 1;
                    let a = gorenstein::gorenstein_ext(m, n, k, &cert)?;
                    let b = gorenstein::gorenstein_ext_direct(m, n, k, &cert)?;
                    let c = oracle::ge_oracle(m, n, k, &cert)?;
                    if a != b || a != c {
                        failures.push(format!("GE^{k}({mn}, {nn}): {a} / direct {b} / oracle {c}"));
                    }
                }
            }
        }
        r.line(format!("GE engine = direct = oracle: {ge_checks} checks"));
        r.line(format!("Gorenstein projective corpus modules: {gp}, unit iso on each"));
        r.result("gorenstein_projective", json!(gp));
    } else {
        let refusal = gorenstein::is_gp(&Module::regular(&alg), &cert).unwrap_err();
        r.line(format!("Gorenstein engine: {refusal}"));
        r.warn(format!("not certified within cap {}; Gorenstein checks skipped", cfg.cap));
    }
    r.line(format!("failures: {}", failures.len()));
    for f in &failures {
        r.line(format!("  {f}"));
    }
    r.result("ext_checks", json!(ext_checks));
    r.result("ge_checks", json!(ge_checks));
    r.result("failures", json!(failures));
    if !failures.is_empty() {
        r.fail_check();
    }
    Ok(())
}
