//! The `crown` command line: `verify`, `enumerate` and `certify`.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::checks;
use crate::crown::{CrownQuiver, Vertex};
use crate::descent::{
    build_cocycle_equal, build_cocycle_large, build_cocycle_m_a, build_cocycle_small, build_cocycle_string,
    certify_lambda, endomorphism_count, normal_form_homogeneous, normal_form_nonhomogeneous, rep_m_a, verify_cocycle,
    Family, LambdaRep, Variant, Witness,
};
use crate::error::{Error, Result};
use crate::report::{Status, VerificationReport};
use crate::scalars::{parse_element, FieldTowerCtx, PuiseuxElement, DEFAULT_PREC};
use crate::tensor::{check_beta_eigenvectors, verify_crown_identification, verify_idempotents};

/// Exit code for malformed input (unknown check, missing parameter, parse error).
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "crown", about = "Representations of crown quivers and their descent data", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run named checks (`all` runs the default suite; `list` prints the known ids).
    Verify {
        #[arg(required = true)]
        checks: Vec<String>,
        #[command(flatten)]
        params: Params,
    },
    /// List strings, the band, or root data of the n-crown.
    Enumerate {
        kind: EnumKind,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Certify a lambda-rep file as regular simple.
    Certify {
        file: PathBuf,
        #[command(flatten)]
        params: Params,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum EnumKind {
    Strings,
    Band,
    Roots,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Params {
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long)]
    pub j: Option<u32>,
    /// A Puiseux element, e.g. "e^(1/2) + 3*e".
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, env = "CROWN_PREC", default_value_t = DEFAULT_PREC)]
    pub prec: i64,
    /// Order of the cyclotomic field holding coefficients; every ramification index must divide it.
    #[arg(long)]
    pub zeta_order: Option<u32>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

impl Default for Params {
    fn default() -> Self {
        Params { n: None, m: None, d: None, j: None, a: None, prec: DEFAULT_PREC, zeta_order: None, format: Format::Text, jobs: 1 }
    }
}

impl Params {
    fn need(&self, v: Option<u32>, name: &str) -> Result<u32> {
        v.ok_or_else(|| Error::Invalid(format!("missing --{name}")))
    }

    pub fn n(&self) -> Result<u32> {
        self.need(self.n, "n")
    }

    pub fn m(&self) -> Result<u32> {
        self.need(self.m, "m")
    }

    pub fn j(&self) -> Result<u32> {
        self.need(self.j, "j")
    }

    pub fn a(&self) -> Result<PuiseuxElement> {
        parse_element(self.a.as_deref().ok_or_else(|| Error::Invalid("missing --a".into()))?)
    }

    /// The coefficient context for ramification indices `rams`, honouring `--zeta-order`.
    pub fn ctx(&self, rams: &[u32]) -> Result<FieldTowerCtx> {
        match self.zeta_order {
            Some(order) => {
                let ctx = FieldTowerCtx::new(order, self.prec)?;
                for &r in rams {
                    ctx.check_ram(r)?;
                }
                Ok(ctx)
            }
            None => {
                let mut ctx = FieldTowerCtx::for_rams(rams);
                ctx.default_prec = self.prec;
                Ok(ctx)
            }
        }
    }
}

type Runner = fn(&Params) -> Result<VerificationReport>;

fn cocycle(datum: Result<crate::descent::DescentDatum>) -> Result<VerificationReport> {
    Ok(verify_cocycle(&datum?))
}

fn run_crown_identification(p: &Params) -> Result<VerificationReport> {
    let n = p.n()?;
    Ok(verify_crown_identification(p.d.unwrap_or(n), n))
}

fn run_idempotents(p: &Params) -> Result<VerificationReport> {
    let n = p.n()?;
    Ok(verify_idempotents(p.d.unwrap_or(n), n))
}

fn run_beta_eigenvectors(p: &Params) -> Result<VerificationReport> {
    let n = p.n()?;
    let d = p.d.unwrap_or(n);
    let a = p.a()?;
    let mut rep = VerificationReport::new("beta-eigenvectors").param("n", n).param("d", d).param("a", &a);
    let js: Vec<u32> = match p.j {
        Some(j) => vec![j],
        None => (1..=n).collect(),
    };
    for j in js {
        rep.absorb(check_beta_eigenvectors(&a, n, d, j));
    }
    Ok(rep.finish())
}

fn run_string_defects(p: &Params) -> Result<VerificationReport> {
    Ok(checks::check_string_defects(p.n()?))
}

fn run_equal_cocycle(p: &Params) -> Result<VerificationReport> {
    cocycle(build_cocycle_equal(&p.a()?, p.n()?))
}

fn run_small_cocycle(p: &Params) -> Result<VerificationReport> {
    let (m, n) = (p.m()?, p.n()?);
    let ctx = p.ctx(&[crate::descent::descent_degree(n, m)])?;
    cocycle(build_cocycle_small(&ctx, &p.a()?, m, n, p.prec))
}

fn run_large_cocycle(p: &Params) -> Result<VerificationReport> {
    let (m, n) = (p.m()?, p.n()?);
    let ctx = p.ctx(&[crate::descent::descent_degree(n, m)])?;
    cocycle(build_cocycle_large(&ctx, &p.a()?, m, n, p.prec))
}

fn run_general_cocycle(p: &Params) -> Result<VerificationReport> {
    let (m, n) = (p.m()?, p.n()?);
    let ctx = p.ctx(&[crate::descent::descent_degree(n, m)])?;
    cocycle(build_cocycle_m_a(&ctx, &p.a()?, m, n, p.prec))
}

fn string_cocycles(p: &Params, which: Family) -> Result<VerificationReport> {
    let n = p.n()?;
    let js: Vec<u32> = match p.j {
        Some(j) => vec![j],
        None => (1..=n).collect(),
    };
    let mut rep = VerificationReport::new("string-cocycles").param("n", n);
    for j in js {
        let mut sub = verify_cocycle(&build_cocycle_string(j, n, which)?);
        sub.check = format!("j={j}");
        rep.absorb(sub);
    }
    Ok(rep.finish())
}

fn run_m_string_cocycles(p: &Params) -> Result<VerificationReport> {
    string_cocycles(p, Family::M)
}

fn run_n_string_cocycles(p: &Params) -> Result<VerificationReport> {
    string_cocycles(p, Family::N)
}

fn run_block_shifts(p: &Params) -> Result<VerificationReport> {
    let n = p.n()?;
    let js: Vec<u32> = match p.j {
        Some(j) => vec![j],
        None => (2..=n).collect(),
    };
    let mut rep = VerificationReport::new("block-shifts").param("n", n);
    for j in js {
        let mut sub = checks::check_block_shifts(j, n);
        sub.check = format!("j={j}");
        rep.absorb(sub);
    }
    Ok(rep.finish())
}

fn run_string_twists(p: &Params) -> Result<VerificationReport> {
    Ok(checks::check_string_twists(p.n()?))
}

fn run_normal_form_intertwining(p: &Params) -> Result<VerificationReport> {
    Ok(checks::check_normal_form_intertwining(p.j()?, checks::ShiftConvention::Backward))
}

fn run_root_extraction(p: &Params) -> Result<VerificationReport> {
    Ok(checks::check_root_extraction(p.n()?, 100, 0, 20))
}

fn run_orbit_product(p: &Params) -> Result<VerificationReport> {
    Ok(checks::check_orbit_product(p.n()?))
}

fn run_orbit_invariance(p: &Params) -> Result<VerificationReport> {
    Ok(checks::check_orbit_invariance(&p.a()?, p.m()?, p.n()?))
}

fn run_summand_orthogonality(p: &Params) -> Result<VerificationReport> {
    let (m, n) = (p.m()?, p.n()?);
    let base = rep_m_a(&p.a()?, n, crate::descent::descent_degree(n, m))?;
    Ok(checks::check_summand_orthogonality(&base, m))
}

fn run_alpha_intertwiner(p: &Params) -> Result<VerificationReport> {
    let x = match (&p.a, p.m) {
        (Some(_), _) => p.a()?,
        (None, Some(m)) => PuiseuxElement::eps(1, m),
        (None, None) => return Err(Error::Invalid("missing --a or --m".into())),
    };
    Ok(checks::check_alpha_intertwiner(&x))
}

fn run_homogeneous(p: &Params) -> Result<VerificationReport> {
    let (n, m, x) = (p.n()?, p.m()?, p.a()?);
    let l = normal_form_homogeneous(&x, n, m)?;
    Ok(certify_lambda(&l, m, Some(&Witness::Band(x.pow(n as u64)))))
}

fn run_nonhomogeneous(p: &Params) -> Result<VerificationReport> {
    let (n, j) = (p.n()?, p.j()?);
    let mut rep = VerificationReport::new("nonhomogeneous").param("n", n).param("j", j);
    for (variant, which) in [(Variant::BId, Family::N), (Variant::IdB, Family::M)] {
        let l = normal_form_nonhomogeneous(j, n, variant)?;
        let mut sub = certify_lambda(&l, n, Some(&Witness::Family(which, j)));
        sub.check = match variant {
            Variant::BId => "[B id]".into(),
            Variant::IdB => "[id B]".into(),
        };
        rep.absorb(sub);
    }
    Ok(rep.finish())
}

fn run_endomorphism_count(p: &Params) -> Result<VerificationReport> {
    let n = p.n()?;
    if p.a.is_some() {
        let m = p.m()?;
        return Ok(endomorphism_count(&normal_form_homogeneous(&p.a()?, n, m)?, m));
    }
    let j = p.j()?;
    let mut rep = VerificationReport::new("endomorphism-count").param("n", n).param("j", j);
    for variant in [Variant::BId, Variant::IdB] {
        let mut sub = endomorphism_count(&normal_form_nonhomogeneous(j, n, variant)?, n);
        sub.check = format!("{variant:?}");
        rep.absorb(sub);
    }
    Ok(rep.finish())
}

fn run_kronecker(p: &Params) -> Result<VerificationReport> {
    let n = p.n()?;
    let a = match &p.a {
        Some(_) => p.a()?,
        None => PuiseuxElement::eps(1, n),
    };
    Ok(checks::verify_kronecker(&a, n))
}

fn run_negative_controls(p: &Params) -> Result<VerificationReport> {
    let (m, n) = (p.m()?, p.n()?);
    let ctx = p.ctx(&[crate::descent::descent_degree(n, m)])?;
    let datum = build_cocycle_m_a(&ctx, &p.a()?, m, n, p.prec)?;
    Ok(checks::check_negative_controls(&datum))
}

/// Check ids accepted by `verify`, with the runner and a one-line description.
pub const CHECKS: &[(&str, Runner, &str)] = &[
    ("eq-3", run_idempotents, "orthogonal idempotents β_j (--n [--d])"),
    ("eq-7", run_endomorphism_count, "dim End(k_d ⊗ L) = m (--n --m --a | --n --j)"),
    ("eq-8", run_orbit_product, "orbit product of ε^{j/n} (--n)"),
    ("lemma-2.2", run_string_defects, "string defects (--n)"),
    ("lemma-2.3", run_string_defects, "band defect (--n)"),
    ("lemma-3.10", run_root_extraction, "root extraction on 100 samples (--n)"),
    ("lemma-3.17", run_m_string_cocycles, "cocycles on M_(j) orbit sums (--n [--j])"),
    ("lemma-3.18", run_n_string_cocycles, "cocycles on N_(j) orbit sums (--n [--j])"),
    ("lemma-3.24", run_normal_form_intertwining, "normal-form intertwining (--j)"),
    ("lemma-3.3", run_beta_eigenvectors, "β_j eigenvectors of f_a, g_a (--n --a [--d --j])"),
    ("lemma-3.4", run_orbit_invariance, "orbit sums are twist invariant (--a --m --n)"),
    ("lemma-3.8", run_summand_orthogonality, "twist summands are orthogonal (--a --m --n)"),
    ("negative-controls", run_negative_controls, "perturbed cocycles fail (--a --m --n)"),
    ("prop-3.12", run_equal_cocycle, "cocycle for m = n (--a --n)"),
    ("prop-3.13", run_small_cocycle, "cocycle for m < n (--a --m --n)"),
    ("prop-3.14", run_large_cocycle, "cocycle for m > n (--a --m --n)"),
    ("prop-3.15", run_general_cocycle, "cocycle for any m (--a --m --n)"),
    ("prop-3.22", run_alpha_intertwiner, "α(x) A = A D_x (--a | --m)"),
    ("prop-3.27", run_kronecker, "Kronecker specialisation (--n [--a])"),
    ("remark-3.16", run_block_shifts, "block shift identities (--n [--j])"),
    ("remark-3.19", run_string_twists, "families as string modules (--n)"),
    ("thm-3.2", run_crown_identification, "tensor algebra vs crown path algebra (--n [--d])"),
    ("thm-3.23", run_homogeneous, "certify [α(x) id_m] (--a --n --m)"),
    ("thm-3.26", run_nonhomogeneous, "certify [B id_j] and [id_j B] (--j --n)"),
    ("thm-3.29", run_kronecker, "certify [α(a) id_n] on the Kronecker quiver (--n [--a])"),
];

/// The parameter sets run by `verify all`.
pub fn default_suite() -> Vec<(&'static str, Params)> {
    let p = |n: Option<u32>, m: Option<u32>, j: Option<u32>, a: Option<&str>| Params {
        n,
        m,
        j,
        a: a.map(str::to_string),
        ..Params::default()
    };
    vec![
        ("eq-3", p(Some(3), None, None, None)),
        ("eq-7", p(Some(2), Some(3), None, Some("e^(1/3)"))),
        ("eq-8", p(Some(4), None, None, None)),
        ("lemma-2.2", p(Some(5), None, None, None)),
        ("lemma-2.3", p(Some(5), None, None, None)),
        ("lemma-3.10", p(Some(3), None, None, None)),
        ("lemma-3.17", p(Some(3), None, None, None)),
        ("lemma-3.18", p(Some(3), None, None, None)),
        ("lemma-3.24", p(None, None, Some(3), None)),
        ("lemma-3.3", p(Some(3), None, None, Some("1 + e^(1/3)"))),
        ("lemma-3.4", p(Some(2), Some(3), None, Some("e^(1/3)"))),
        ("lemma-3.8", p(Some(2), Some(3), None, Some("e^(1/3)"))),
        ("negative-controls", p(Some(3), Some(2), None, Some("e^(1/2)"))),
        ("prop-3.12", p(Some(3), None, None, Some("e^(1/3)"))),
        ("prop-3.13", p(Some(3), Some(2), None, Some("e^(1/2)"))),
        ("prop-3.14", p(Some(2), Some(3), None, Some("e^(1/3)"))),
        ("prop-3.22", p(None, Some(3), None, None)),
        ("prop-3.27", p(Some(2), None, None, None)),
        ("remark-3.16", p(Some(4), None, None, None)),
        ("remark-3.19", p(Some(4), None, None, None)),
        ("thm-3.2", p(Some(2), None, None, None)),
        ("thm-3.23", p(Some(2), Some(3), None, Some("e^(1/3)"))),
        ("thm-3.26", p(Some(3), None, Some(2), None)),
        ("thm-3.29", p(Some(3), None, None, None)),
    ]
}

fn lookup(id: &str) -> Option<Runner> {
    CHECKS.iter().find(|(k, _, _)| *k == id).map(|(_, r, _)| *r)
}

/// Runs one check by id; errors in the inputs become a failing or undecided report.
pub fn run_check(id: &str, params: &Params) -> Result<VerificationReport> {
    let runner = lookup(id).ok_or_else(|| Error::Invalid(format!("unknown check id {id:?}")))?;
    let mut report = match runner(params) {
        Ok(r) => r,
        Err(e @ Error::PrecisionExhausted(_)) | Err(e @ Error::ZeroAtPrecision(_)) => {
            let mut r = VerificationReport::new(id);
            r.push_status("precision", "sufficient", &e.to_string(), "exhausted", Status::Undecided);
            r
        }
        Err(e) => return Err(e),
    };
    report.check = id.to_string();
    for (k, v) in [("n", params.n), ("m", params.m), ("d", params.d), ("j", params.j)] {
        if let Some(v) = v {
            report.params.entry(k.to_string()).or_insert_with(|| v.to_string());
        }
    }
    if let Some(a) = &params.a {
        report.params.entry("a".to_string()).or_insert_with(|| a.clone());
    }
    Ok(report)
}

/// Runs `jobs` in parallel on up to `workers` threads; results come back in input order.
pub fn run_many(jobs: &[(String, Params)], workers: usize) -> Vec<Result<VerificationReport>> {
    let workers = workers.max(1).min(jobs.len().max(1));
    let next = std::sync::atomic::AtomicUsize::new(0);
    let slots: Vec<std::sync::Mutex<Option<Result<VerificationReport>>>> =
        jobs.iter().map(|_| std::sync::Mutex::new(None)).collect();
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                if i >= jobs.len() {
                    break;
                }
                let (id, params) = &jobs[i];
                *slots[i].lock().expect("unpoisoned") = Some(run_check(id, params));
            });
        }
    });
    slots.into_iter().map(|m| m.into_inner().expect("unpoisoned").expect("filled")).collect()
}

fn render(reports: &[VerificationReport], format: Format) -> String {
    match format {
        Format::Text => reports.iter().map(|r| r.to_text()).collect(),
        Format::Json if reports.len() == 1 => reports[0].to_json() + "\n",
        Format::Json => serde_json::to_string_pretty(reports).expect("serializable") + "\n",
    }
}

fn overall(reports: &[VerificationReport]) -> Status {
    reports.iter().fold(Status::Pass, |acc, r| acc.combine(r.status))
}

/// `verify`: returns the rendered output and the exit code.
pub fn cmd_verify(ids: &[String], params: &Params) -> Result<(String, i32)> {
    if ids.iter().any(|i| i == "list") {
        let lines: String = CHECKS.iter().map(|(k, _, d)| format!("{k:<18} {d}\n")).collect();
        return Ok((lines, 0));
    }
    let mut jobs: Vec<(String, Params)> = vec![];
    for id in ids {
        if id == "all" {
            for (k, mut p) in default_suite() {
                p.prec = params.prec;
                p.zeta_order = params.zeta_order;
                jobs.push((k.to_string(), p));
            }
        } else {
            lookup(id).ok_or_else(|| Error::Invalid(format!("unknown check id {id:?}")))?;
            jobs.push((id.clone(), params.clone()));
        }
    }
    let mut reports = vec![];
    for r in run_many(&jobs, params.jobs) {
        reports.push(r?);
    }
    reports.sort_by(|a, b| a.check.cmp(&b.check));
    let status = overall(&reports);
    Ok((render(&reports, params.format), status.exit_code()))
}

#[derive(Serialize)]
struct Listing {
    kind: String,
    n: u32,
    entries: Vec<BTreeMap<String, String>>,
}

/// `enumerate`: strings `s_{v,j}` ordered by vertex index (sink before source) then length, the
/// band, or the root data.
pub fn cmd_enumerate(kind: EnumKind, n: u32, format: Format) -> Result<String> {
    let q = CrownQuiver::new(n)?;
    let mut entries: Vec<BTreeMap<String, String>> = vec![];
    let entry = |pairs: &[(&str, String)]| pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
    match kind {
        EnumKind::Strings => {
            for i in 1..=n {
                for start in [Vertex::Sink(i), Vertex::Source(i)] {
                    for j in 1..=n {
                        let s = q.string_word(start, j)?;
                        entries.push(entry(&[
                            ("name", format!("s_{{{start},{j}}}")),
                            ("word", s.to_string()),
                            ("dim", s.dim_vector().to_string()),
                            ("defect", q.defect(&s.dim_vector()).to_string()),
                        ]));
                    }
                }
            }
        }
        EnumKind::Band => {
            let b = q.the_band();
            entries.push(entry(&[("word", b.to_string()), ("dim", b.dim_vector().to_string())]));
        }
        EnumKind::Roots => {
            let delta = q.minimal_imaginary_root();
            let cartan: Vec<String> = q
                .cartan_matrix()
                .iter()
                .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
                .collect();
            entries.push(entry(&[
                ("delta", delta.to_string()),
                ("cartan", cartan.join("; ")),
                ("euler(delta,delta)", q.euler_form(&delta, &delta).to_string()),
            ]));
        }
    }
    let kind_name = format!("{kind:?}").to_lowercase();
    Ok(match format {
        Format::Json => {
            serde_json::to_string_pretty(&Listing { kind: kind_name, n, entries }).expect("serializable") + "\n"
        }
        Format::Text => {
            let mut out = String::new();
            for e in &entries {
                let line = match kind {
                    EnumKind::Strings => format!("{}: {}  dim={} defect={}", e["name"], e["word"], e["dim"], e["defect"]),
                    EnumKind::Band => format!("{}  dim={}", e["word"], e["dim"]),
                    EnumKind::Roots => format!(
                        "delta = {}\ncartan = {}\n<delta,delta> = {}",
                        e["delta"], e["cartan"], e["euler(delta,delta)"]
                    ),
                };
                out.push_str(&line);
                out.push('\n');
            }
            out
        }
    })
}

/// `certify`: parses a lambda-rep file and certifies it; `--m` overrides the file's period.
pub fn cmd_certify(src: &str, params: &Params) -> Result<(String, i32)> {
    let file = LambdaRep::parse_file(src)?;
    let m = params
        .m
        .or(file.period)
        .ok_or_else(|| Error::Invalid("no period: pass --m or add a period line".into()))?;
    let report = certify_lambda(&file.rep, m, file.witness.as_ref());
    Ok((render(std::slice::from_ref(&report), params.format), report.status.exit_code()))
}

/// Parses `args`, runs the command, and returns `(stdout, stderr, exit code)`.
pub fn run<I, T>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            return (if code == 0 { e.to_string() } else { String::new() }, if code == 0 { String::new() } else { e.to_string() }, code);
        }
    };
    let result = match &cli.command {
        Command::Verify { checks, params } => cmd_verify(checks, params),
        Command::Enumerate { kind, n, format } => cmd_enumerate(*kind, *n, *format).map(|s| (s, 0)),
        Command::Certify { file, params } => std::fs::read_to_string(file)
            .map_err(|e| Error::Invalid(format!("{}: {e}", file.display())))
            .and_then(|src| cmd_certify(&src, params)),
    };
    match result {
        Ok((out, code)) => (out, String::new(), code),
        Err(e) => (String::new(), format!("error: {e}\n"), EXIT_USAGE),
    }
}

/// Entry point for the binary: prints and returns the exit code.
pub fn main() -> i32 {
    let (out, err, code) = run(std::env::args_os());
    print!("{out}");
    eprint!("{err}");
    code
}
