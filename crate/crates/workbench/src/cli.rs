//! Verbs, dispatch and exit statuses.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use bar_complex::{coproduct, BarComplex};
use clap::{Parser, Subcommand};
use cut_dga::{regularize_certified, Cs, RelationIdeal};
use cycle_engine::{dump, verify_theory, Engine};
use exact_kernel::fmt_q;
use hodge_ledger::{build_z_gamma, evaluate_point, formal_differential, lambda_realize, FormalModule};
use path_comodule::{comodule_check_with, Comodule};
use period_lab::{
    feynman_dyson, multiple_polylog, regularized_iterated_integral, NumericConfig, PathSpec, C64,
};
use serde_json::{json, Value};

use crate::cache::{Cache, CACHE_DIR_ENV};
use crate::parse::*;
use crate::report::{self, Format, Report};
use crate::suite::{self, SuiteOptions};
use crate::WorkbenchError;

#[derive(Debug, Parser)]
#[command(name = "workbench", version, about = "Cut algebras, algebraic cycles and iterated-integral periods")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Directory for cached reports.
    #[arg(long, global = true, env = CACHE_DIR_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Absolute tolerance for numerical verbs.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Differential of a generator.
    DgaD {
        seq: String,
        #[arg(long)]
        keep_loops: bool,
    },
    /// The bar element T(A), one word per cut.
    DgaT {
        seq: String,
        #[arg(long)]
        keep_loops: bool,
    },
    /// Deconcatenation coproduct of T(A).
    DgaCoproduct {
        seq: String,
        #[arg(long)]
        keep_loops: bool,
    },
    /// Residual of a generator modulo the relations among T~.
    DgaReduce {
        seq: String,
        /// Interior alphabet; defaults to the interior entries of the sequence.
        #[arg(long, allow_hyphen_values = true)]
        letters: Option<String>,
        /// Extra endpoints beyond the letters.
        #[arg(long, allow_hyphen_values = true)]
        points: Option<String>,
    },
    /// Shuffle regularization of a divergent generator, with its certificate.
    DgaRegularize {
        seq: String,
        #[arg(long, allow_hyphen_values = true)]
        letters: Option<String>,
    },
    /// Coassociativity and counit of the path comodule.
    ComoduleCheck {
        #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
        letters: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        start: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        end: String,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long)]
        keep_loops: bool,
    },
    /// The cycle rho(A), or rho_k(A) with --k.
    CyclesRho {
        seq: String,
        #[arg(long, default_value = "seqdist")]
        theory: String,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Integration theory axioms on one sequence or a sweep.
    CyclesVerify {
        #[arg(long, default_value = "seqdist")]
        theory: String,
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        /// Check only this sequence.
        #[arg(long)]
        seq: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        letters: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        start: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        end: Option<String>,
        /// Flip the sign of the back coordinate, a variant known to break the axioms.
        #[arg(long)]
        negated_back: bool,
    },
    /// Multiple polylogarithm Li_{n1,...,nk}(z).
    PeriodsLi {
        exponents: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
    /// Regularized iterated integral of dt/(t-a1)...dt/(t-an) along a polygon.
    PeriodsIter {
        #[arg(allow_hyphen_values = true)]
        letters: String,
        #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
        path: String,
        /// Treat endpoints as ordinary points even when they are letters.
        #[arg(long)]
        no_tangential: bool,
    },
    /// Coefficients of the Feynman-Dyson series of a path.
    PeriodsPhi {
        #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
        punctures: String,
        #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
        path: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Z(A) and its formal differential.
    HodgeZ {
        seq: String,
        #[arg(long)]
        keep_loops: bool,
    },
    /// Numerical realization of Z(A) along a path.
    HodgeLambda {
        seq: String,
        #[arg(long, default_value = "seqdist")]
        theory: String,
        /// Polygon vertices; defaults to the straight segment between the ends.
        #[arg(long, allow_hyphen_values = true)]
        path: Option<String>,
        /// Values of the variables, e.g. z=0.5.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        values: String,
    },
    /// Acceptance criteria: `all` or a criterion number.
    Suite {
        #[arg(default_value = "all")]
        which: String,
        #[arg(long)]
        max_n: Option<usize>,
    },
}

impl Verb {
    pub fn name(&self) -> &'static str {
        match self {
            Verb::DgaD { .. } => "dga-d",
            Verb::DgaT { .. } => "dga-t",
            Verb::DgaCoproduct { .. } => "dga-coproduct",
            Verb::DgaReduce { .. } => "dga-reduce",
            Verb::DgaRegularize { .. } => "dga-regularize",
            Verb::ComoduleCheck { .. } => "comodule-check",
            Verb::CyclesRho { .. } => "cycles-rho",
            Verb::CyclesVerify { .. } => "cycles-verify",
            Verb::PeriodsLi { .. } => "periods-li",
            Verb::PeriodsIter { .. } => "periods-iter",
            Verb::PeriodsPhi { .. } => "periods-phi",
            Verb::HodgeZ { .. } => "hodge-z",
            Verb::HodgeLambda { .. } => "hodge-lambda",
            Verb::Suite { .. } => "suite",
        }
    }
}

fn algebra(keep_loops: bool) -> Cs {
    if keep_loops {
        Cs::keeping_loops()
    } else {
        Cs::default()
    }
}

fn config(tol: Option<f64>) -> Result<NumericConfig, WorkbenchError> {
    let mut cfg = NumericConfig::default();
    if let Some(t) = tol {
        cfg.tol = t;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

/// A parsed verb ready to run: canonical input for the cache key plus the
/// computation.
struct Job<'a> {
    input: Value,
    cacheable: bool,
    compute: Box<dyn FnOnce() -> Result<Report, WorkbenchError> + 'a>,
}

fn job<'a>(input: Value, f: impl FnOnce() -> Result<Report, WorkbenchError> + 'a) -> Job<'a> {
    Job { input, cacheable: true, compute: Box::new(f) }
}

fn prepare<'a>(verb: &'a Verb, tol: Option<f64>) -> Result<Job<'a>, WorkbenchError> {
    let name = verb.name();
    Ok(match verb {
        Verb::DgaD { seq, keep_loops } => {
            let a = parse_sequence(seq)?;
            let input = json!({ "sequence": a.to_string(), "keep_loops": keep_loops });
            job(input.clone(), move || {
                let d = algebra(*keep_loops).d_gen(&a);
                let text = if d.is_zero() {
                    format!("d({a}) = 0")
                } else {
                    let parts: Vec<String> = d.iter().map(|(m, c)| format!("{}*{m}", fmt_q(c))).collect();
                    format!("d({a}) =\n    {}", parts.join("\n  + "))
                };
                Ok(Report::new(name, input, true, report::algebra_element(&d), text))
            })
        }
        Verb::DgaT { seq, keep_loops } => {
            let a = parse_sequence(seq)?;
            let input = json!({ "sequence": a.to_string(), "keep_loops": keep_loops });
            job(input.clone(), move || {
                let t = algebra(*keep_loops).t_element(&a);
                let text = format!("T({a}) = ({} terms)\n    {}", t.len(), report::bar_text(&t));
                Ok(Report::new(name, input, true, report::bar_element(&t), text))
            })
        }
        Verb::DgaCoproduct { seq, keep_loops } => {
            let a = parse_sequence(seq)?;
            let input = json!({ "sequence": a.to_string(), "keep_loops": keep_loops });
            job(input.clone(), move || {
                let c = coproduct(&algebra(*keep_loops).t_element(&a));
                let text = format!("Δ T({a}) = ({} terms)\n    {}", c.len(), report::tensor_text(&c));
                Ok(Report::new(name, input, true, report::tensor(&c), text))
            })
        }
        Verb::DgaReduce { seq, letters, points } => {
            let a = parse_sequence(seq)?;
            let letters = match letters {
                Some(l) => parse_elements(l)?,
                None => a.interior().to_vec(),
            };
            let points = parse_elements(points.as_deref().unwrap_or(""))?;
            let mut ends = points.clone();
            ends.extend([a.start().clone(), a.end().clone()]);
            let input = json!({ "sequence": a.to_string(), "letters": strings(&letters), "points": strings(&points) });
            job(input.clone(), move || {
                let ideal = RelationIdeal::new(letters, ends);
                let r = ideal.reduce_generator(&a)?;
                let terms: Vec<Value> = r
                    .iter()
                    .map(|(s, c)| json!({ "coefficient": report::coefficient(c), "sequence": s.to_string() }))
                    .collect();
                let text = if r.is_zero() {
                    format!("T~({a}) = 0 modulo the relations")
                } else {
                    let parts: Vec<String> = r.iter().map(|(s, c)| format!("{}*T~({s})", fmt_q(c))).collect();
                    format!("T~({a}) ≡ {}", parts.join(" + "))
                };
                Ok(Report::new(name, input, true, Value::Array(terms), text))
            })
        }
        Verb::DgaRegularize { seq, letters } => {
            let a = parse_sequence(seq)?;
            let letters = match letters {
                Some(l) => parse_elements(l)?,
                None => a.interior().to_vec(),
            };
            let input = json!({ "sequence": a.to_string(), "letters": strings(&letters) });
            job(input.clone(), move || {
                let ideal = RelationIdeal::new(letters, vec![a.start().clone(), a.end().clone()]);
                let (p, certified) = regularize_certified(&ideal, &a)?;
                let parts: Vec<String> = p.iter().map(|(m, c)| format!("{}*{m}", fmt_q(c))).collect();
                let text = format!(
                    "reg T~({a}) = {}\ncertificate: {}",
                    if parts.is_empty() { "0".into() } else { parts.join(" + ") },
                    if certified { "re-expansion agrees modulo the ideal" } else { "FAILED" }
                );
                let result = json!({ "polynomial": report::t_polynomial(&p), "certified": certified });
                Ok(Report::new(name, input, certified, result, text))
            })
        }
        Verb::ComoduleCheck { letters, start, end, depth, keep_loops } => {
            let letters = parse_elements(letters)?;
            let (a, b) = (exact_kernel::parse_field(start)?, exact_kernel::parse_field(end)?);
            let input = json!({
                "letters": strings(&letters), "start": a.to_string(), "end": b.to_string(),
                "depth": depth, "keep_loops": keep_loops,
            });
            job(input.clone(), move || {
                let m = Comodule::with_algebra(letters, algebra(*keep_loops));
                let r = comodule_check_with(&m, &a, &b, *depth)?;
                let failure = r.failure.as_ref().map(|f| {
                    json!({ "law": f.law.to_string(), "word": f.word.to_string(), "detail": f.detail })
                });
                let result = json!({ "words_checked": r.words_checked, "failure": failure });
                Ok(Report::new(name, input, r.passed(), result, r.to_string()))
            })
        }
        Verb::CyclesRho { seq, theory, k } => {
            let a = parse_sequence(seq)?;
            let th = parse_theory(theory)?;
            let input = json!({ "sequence": a.to_string(), "theory": th.to_string(), "k": k });
            job(input.clone(), move || {
                let engine = Engine::new(th);
                let (label, z) = match k {
                    Some(k) => (format!("rho_{k}({a})"), engine.rho_k(&a, *k)?),
                    None => (format!("rho({a})"), engine.rho(&a)?),
                };
                let text = format!("{label} = {z}");
                Ok(Report::new(name, input, true, dump(&z), text))
            })
        }
        Verb::CyclesVerify { theory, max_n, seq, letters, start, end, negated_back } => {
            let th = parse_theory(theory)?;
            let (s0, l0, e0) = suite::default_alphabet(&th);
            let seqs = match seq {
                Some(text) => vec![parse_sequence(text)?],
                None => {
                    let letters = match letters {
                        Some(l) => parse_elements(l)?,
                        None => l0,
                    };
                    let s = start.as_deref().map(exact_kernel::parse_field).transpose()?.unwrap_or(s0);
                    let e = end.as_deref().map(exact_kernel::parse_field).transpose()?.unwrap_or(e0);
                    suite::admitted(&th, &s, &letters, &e, *max_n)
                }
            };
            let input = json!({ "theory": th.to_string(), "sequences": strings(&seqs), "negated_back": negated_back });
            job(input.clone(), move || {
                let engine = Engine::new(th).with_negated_back(*negated_back);
                let mut failures = Vec::new();
                let mut checks = 0;
                for a in &seqs {
                    let r = verify_theory(&engine, a)?;
                    checks += r.checks.len();
                    if let Some(c) = r.first_failure() {
                        failures.push(json!({ "sequence": a.to_string(), "check": c.name, "detail": c.detail }));
                    }
                }
                let mut text = format!(
                    "{}: {} sequences, {checks} checks, {} failing",
                    engine.theory(),
                    seqs.len(),
                    failures.len()
                );
                if let Some(f) = failures.first() {
                    text.push_str(&format!(
                        "\nfirst counterexample: {} {}: {:.400}",
                        f["sequence"].as_str().unwrap_or(""),
                        f["check"].as_str().unwrap_or(""),
                        f["detail"].as_str().unwrap_or("")
                    ));
                }
                let result = json!({ "sequences": seqs.len(), "checks": checks, "failures": failures });
                Ok(Report::new(name, input, failures.is_empty(), result, text))
            })
        }
        Verb::PeriodsLi { exponents, z } => {
            let exps = parse_exponents(exponents)?;
            let zv = parse_point(z)?;
            let cfg = config(tol)?;
            let input = json!({ "exponents": exps, "z": report::complex(zv), "tol": cfg.tol });
            job(input.clone(), move || {
                let v = multiple_polylog(&exps, zv, &cfg)?;
                let list: Vec<String> = exps.iter().map(|e| e.to_string()).collect();
                let text = format!(
                    "Li_{{{}}}({}) = {}  (error ≤ {:.1e}, {})",
                    list.join(","),
                    report::complex_text(zv),
                    report::complex_text(v.value),
                    v.error_bound,
                    v.method
                );
                Ok(Report::new(name, input, true, report::evaluation(&v), text))
            })
        }
        Verb::PeriodsIter { letters, path, no_tangential } => {
            let ls = parse_points(letters)?;
            let vertices = parse_points(path)?;
            let cfg = config(tol)?;
            if ls.is_empty() || vertices.is_empty() {
                return Err(WorkbenchError::Usage("need at least one letter and one vertex".into()));
            }
            let mut punctures: Vec<C64> = Vec::new();
            for &l in &ls {
                if !punctures.contains(&l) {
                    punctures.push(l);
                }
            }
            let (s, e) = (vertices[0], vertices[vertices.len() - 1]);
            let flags = if *no_tangential {
                if punctures.contains(&s) || punctures.contains(&e) {
                    return Err(WorkbenchError::Unsupported(
                        "an endpoint is a letter; tangential base points are needed".into(),
                    ));
                }
                (false, false)
            } else {
                (punctures.contains(&s), punctures.contains(&e))
            };
            let input = json!({
                "letters": ls.iter().map(|&z| report::complex(z)).collect::<Vec<_>>(),
                "path": vertices.iter().map(|&z| report::complex(z)).collect::<Vec<_>>(),
                "tangential": [flags.0, flags.1], "tol": cfg.tol,
            });
            job(input.clone(), move || {
                let p = PathSpec::new(vertices, punctures, flags)?;
                let v = regularized_iterated_integral(&ls, &p, &cfg)?;
                let text = format!(
                    "I = {}  (error ≤ {:.1e}, {})",
                    report::complex_text(v.value),
                    v.error_bound,
                    v.method
                );
                Ok(Report::new(name, input, true, report::evaluation(&v), text))
            })
        }
        Verb::PeriodsPhi { punctures, path, depth } => {
            let ps = parse_points(punctures)?;
            let vertices = parse_points(path)?;
            let cfg = config(tol)?;
            let input = json!({
                "punctures": ps.iter().map(|&z| report::complex(z)).collect::<Vec<_>>(),
                "path": vertices.iter().map(|&z| report::complex(z)).collect::<Vec<_>>(),
                "depth": depth, "tol": cfg.tol,
            });
            job(input.clone(), move || {
                let p = match vertices.as_slice() {
                    [a, b] => PathSpec::straight(*a, *b, ps.clone())?,
                    _ => {
                        let flags = (
                            vertices.first().is_some_and(|v| ps.contains(v)),
                            vertices.last().is_some_and(|v| ps.contains(v)),
                        );
                        PathSpec::new(vertices, ps.clone(), flags)?
                    }
                };
                let phi = feynman_dyson(&p, &ps, *depth, &cfg)?;
                let label = |w: &[usize]| -> String {
                    w.iter().map(|&i| format!("X[{}]", report::complex_text(ps[i]))).collect()
                };
                let mut lines = vec![format!("Φ to depth {depth}, max error {:.1e}", phi.max_error())];
                let mut terms = Vec::new();
                for (w, e) in phi.iter() {
                    lines.push(format!("  {} : {}", label(w), report::complex_text(e.value)));
                    terms.push(json!({ "word": w, "label": label(w), "value": report::evaluation(e) }));
                }
                Ok(Report::new(name, input, true, Value::Array(terms), lines.join("\n")))
            })
        }
        Verb::HodgeZ { seq, keep_loops } => {
            let a = parse_sequence(seq)?;
            let input = json!({ "sequence": a.to_string(), "keep_loops": keep_loops });
            job(input.clone(), move || {
                let module = FormalModule { cs: algebra(*keep_loops) };
                let z = build_z_gamma(&a, &module);
                let residual = formal_differential(&z.bar, &module);
                let bar = BarComplex::new(&module.cs, &module);
                let terms: Vec<Value> = z
                    .bar
                    .iter()
                    .map(|(w, c)| {
                        json!({
                            "coefficient": report::coefficient(c),
                            "module": w.module.to_string(),
                            "word": strings(&w.slots),
                            "degree": bar.degree(w),
                        })
                    })
                    .collect();
                let text = format!(
                    "{z}\n{} terms; dZ = {}",
                    terms.len(),
                    if residual.is_zero() { "0".to_string() } else { format!("{} nonzero terms", residual.len()) }
                );
                let result = json!({ "terms": terms, "residual_terms": residual.len() });
                Ok(Report::new(name, input, residual.is_zero(), result, text))
            })
        }
        Verb::HodgeLambda { seq, theory, path, values } => {
            let a = parse_sequence(seq)?;
            let th = parse_theory(theory)?;
            let vals: BTreeMap<String, C64> = parse_values(values)?;
            let cfg = config(tol)?;
            let vertices = match path {
                Some(p) => parse_points(p)?,
                None => vec![evaluate_point(a.start(), &vals)?, evaluate_point(a.end(), &vals)?],
            };
            let input = json!({
                "sequence": a.to_string(), "theory": th.to_string(),
                "path": vertices.iter().map(|&z| report::complex(z)).collect::<Vec<_>>(),
                "values": vals.iter().map(|(k, &v)| (k.clone(), report::complex(v))).collect::<BTreeMap<_, _>>(),
                "tol": cfg.tol,
            });
            job(input.clone(), move || {
                let mut punctures = Vec::new();
                for e in a.entries() {
                    let z = evaluate_point(e, &vals)?;
                    if !punctures.contains(&z) {
                        punctures.push(z);
                    }
                }
                let flags = (
                    vertices.first().is_some_and(|v| punctures.contains(v)),
                    vertices.last().is_some_and(|v| punctures.contains(v)),
                );
                let p = PathSpec::new(vertices, punctures, flags)?;
                let r = lambda_realize(&a, &th, &p, &vals, &cfg)?;
                let grouped = r.grouping_holds(&Cs::default());
                let mut lines = vec![format!("Λ(Z({a})): {} terms", r.terms.len())];
                let mut terms = Vec::new();
                for t in &r.terms {
                    let word: Vec<String> = strings(&t.word);
                    lines.push(format!(
                        "  {}{} · [{}]",
                        report::complex_text(t.scalar.value),
                        if t.full { " (full)" } else { "" },
                        word.join("|")
                    ));
                    terms.push(json!({
                        "cut": strings(&t.cut), "scalar": report::evaluation(&t.scalar),
                        "word": word, "full": t.full,
                    }));
                }
                lines.push(format!("elementary-cut grouping: {}", if grouped { "holds" } else { "FAILS" }));
                let result = json!({ "terms": terms, "elementary_grouping": grouped, "max_error": r.max_error() });
                Ok(Report::new(name, input, grouped, result, lines.join("\n")))
            })
        }
        Verb::Suite { which, max_n } => {
            let ids: Vec<usize> = if which == "all" {
                suite::CRITERIA.iter().map(|c| c.0).collect()
            } else {
                let id: usize = which
                    .parse()
                    .ok()
                    .filter(|i| suite::CRITERIA.iter().any(|c| c.0 == *i))
                    .ok_or_else(|| WorkbenchError::Usage(format!("unknown criterion `{which}`")))?;
                vec![id]
            };
            let input = json!({ "criteria": ids, "max_n": max_n });
            Job {
                input: input.clone(),
                cacheable: false,
                compute: Box::new(move || {
                    let opts = SuiteOptions { max_n: *max_n };
                    let outcomes: Vec<suite::Outcome> =
                        ids.iter().filter_map(|&i| suite::run(i, &opts)).collect();
                    let passed = outcomes.iter().all(|o| o.passed);
                    let text: Vec<String> = outcomes.iter().map(|o| o.line()).collect();
                    let result = serde_json::to_value(&outcomes).expect("serializable");
                    Ok(Report::new(name, input, passed, result, text.join("\n")))
                }),
            }
        }
    })
}

/// Runs a parsed command, consulting the cache when one is configured.
pub fn run(cli: &Cli) -> Result<Report, WorkbenchError> {
    let name = cli.verb.name();
    let job = prepare(&cli.verb, cli.tol)?;
    let cache = cli.cache_dir.as_ref().filter(|_| job.cacheable).map(Cache::new);
    let key = Cache::key(name, &job.input);
    if let Some(r) = cache.as_ref().and_then(|c| c.load(&key)) {
        return Ok(r);
    }
    let r = (job.compute)()?;
    if let Some(c) = &cache {
        c.store(&key, &r)?;
    }
    Ok(r)
}

/// Parses `args`, runs the verb and writes the report; returns the exit
/// status.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match run(&cli) {
        Ok(r) => {
            let _ = write!(out, "{}", r.render(cli.format));
            if r.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
