//! Command-line front end: flag parsing, the remaining report builders, text and
//! JSON rendering, exit codes.

use std::fmt::Write as _;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::duality::{
    capped_space, filtration_consistency, params, verify_hecke_dc, verify_sergeev, verify_sergeev_grid,
    verify_trunc_poly_dc, verify_vust, Check, DualityReport, Params, DEFAULT_SIZE_CAP,
};
use crate::error::{Error, Result};
use crate::exactlin::{commutant, subspace_equal, ExactMatrix, Subspace};
use crate::glsuper::{centralizer_combinatorial, centralizer_oracle, regular_nilpotent, NilpotentData};
use crate::hecke::{
    check_daha_relations, cyclotomic_minpoly, hecke_x_recursive, leading_term_check, CharVector, Construction,
    HeckeOperatorSet, SignConvention,
};
use crate::superindex::{admissible_triples, Permutation, Pyramid};
use crate::tensoract::{
    check_coefficient_axioms, poly_insertion, psi_generators, random_even_invertible, random_gl, theta_basis,
    theta_sigma, theta_sigma_tensor,
};
use crate::wtrunc::{
    closure_failures, find_wchi, is_wchi_element, wchi_algebra, wchi_hilbert_check, PbwAlgebra, UeaElement,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "superdual", version, about = "Exact checks of super double centralizer theorems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub config: RunConfig,
}

/// Flags shared by every command. Each can also be set as `SUPERDUAL_<FLAG>`.
#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    #[arg(long, global = true, env = "SUPERDUAL_M")]
    pub m: Option<usize>,
    #[arg(long, global = true, env = "SUPERDUAL_N")]
    pub n: Option<usize>,
    #[arg(long, global = true, env = "SUPERDUAL_D")]
    pub d: Option<usize>,
    /// Jordan type "λ|μ" of the nilpotent, e.g. "2|1,1".
    #[arg(long, global = true, env = "SUPERDUAL_PARTITIONS")]
    pub partitions: Option<String>,
    /// Comma separated rationals, one per column, e.g. "1/2,3".
    #[arg(long, global = true, env = "SUPERDUAL_C", allow_hyphen_values = true)]
    pub c: Option<String>,
    #[arg(long, global = true, env = "SUPERDUAL_MAX_KAZHDAN")]
    pub max_kazhdan: Option<i64>,
    /// Largest allowed (m+n)^d.
    #[arg(long, global = true, env = "SUPERDUAL_SIZE_CAP", default_value_t = DEFAULT_SIZE_CAP)]
    pub size_cap: usize,
    #[arg(long, global = true, env = "SUPERDUAL_FORMAT", value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true, env = "SUPERDUAL_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for `report all` (default: all cores).
    #[arg(long, global = true, env = "SUPERDUAL_WORKERS")]
    pub workers: Option<usize>,
    /// Record wall time in `elapsed_ms` (otherwise 0, keeping output reproducible).
    #[arg(long, global = true, env = "SUPERDUAL_TIMING")]
    pub timing: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Run one verification.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Truncated W_χ computations.
    #[command(subcommand)]
    Wchi(WchiCommand),
    /// Run the full suite.
    #[command(subcommand)]
    Report(ReportCommand),
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyCommand {
    Sergeev,
    Vust,
    TruncPoly,
    HeckeRelations,
    Cyclotomic,
    HeckeDc,
    Filtration,
    Centralizer,
    Theta,
    ThetaSigma,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum WchiCommand {
    Discover,
    Hilbert,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportCommand {
    All,
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::Parse(_) | Error::InvalidParams(_) => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            return if code == EXIT_PASS {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli.command, &cli.config) {
        Ok(reports) => {
            let code = if reports.iter().all(|r| r.equal) { EXIT_PASS } else { EXIT_FAIL };
            Outcome { code, stdout: render(&reports, cli.config.format), stderr: String::new() }
        }
        Err(e) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

/// Text or JSON for a list of reports. A single report is emitted as an object.
pub fn render(reports: &[DualityReport], format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = if reports.len() == 1 {
                serde_json::to_string_pretty(&reports[0])
            } else {
                serde_json::to_string_pretty(reports)
            }
            .expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => reports.iter().map(render_text).collect(),
    }
}

fn render_params(p: &Params) -> String {
    let mut parts = vec![format!("m={}", p.m), format!("n={}", p.n)];
    if let Some(d) = p.d {
        parts.push(format!("d={d}"));
    }
    if let Some(x) = &p.partitions {
        parts.push(format!("partitions={x}"));
    }
    if let Some(x) = &p.c {
        parts.push(format!("c={x}"));
    }
    if let Some(x) = p.max_kazhdan {
        parts.push(format!("max_kazhdan={x}"));
    }
    parts.join(" ")
}

fn render_text(r: &DualityReport) -> String {
    let mut s = String::new();
    let verdict = if r.equal { "PASS" } else { "FAIL" };
    let _ = writeln!(
        s,
        "{verdict} {} [{}] lhs_dim={} rhs_dim={}",
        r.theorem,
        render_params(&r.params),
        r.lhs_dim,
        r.rhs_dim
    );
    for c in &r.checks {
        let _ = writeln!(s, "  {} {}: {}", if c.pass { "ok  " } else { "FAIL" }, c.name, c.detail);
    }
    if r.elapsed_ms > 0 {
        let _ = writeln!(s, "  elapsed {} ms", r.elapsed_ms);
    }
    s
}

fn need(x: Option<usize>, flag: &str) -> Result<usize> {
    x.ok_or_else(|| Error::InvalidParams(format!("--{flag} is required for this command")))
}

fn mn(cfg: &RunConfig) -> Result<(usize, usize)> {
    let (m, n) = (need(cfg.m, "m")?, need(cfg.n, "n")?);
    if m == 0 || m > n {
        return Err(Error::InvalidParams(format!("need 1 <= m <= n, got m={m}, n={n}")));
    }
    Ok((m, n))
}

fn mnd(cfg: &RunConfig) -> Result<(usize, usize, usize)> {
    let (m, n) = mn(cfg)?;
    Ok((m, n, need(cfg.d, "d")?))
}

fn char_vector(cfg: &RunConfig, n: usize) -> Result<CharVector> {
    match &cfg.c {
        Some(s) => CharVector::parse(s, n),
        None => Ok(CharVector::zero(n)),
    }
}

/// Runs one command and returns its reports in a fixed order.
pub fn execute(cmd: &Command, cfg: &RunConfig) -> Result<Vec<DualityReport>> {
    let start = Instant::now();
    let cap = cfg.size_cap;
    let one = |r: Result<DualityReport>| r.map(|r| vec![r.timed(start, cfg.timing)]);
    match cmd {
        Command::Verify(v) => match v {
            VerifyCommand::Sergeev => {
                let (m, n, d) = mnd(cfg)?;
                one(verify_sergeev(m, n, d, cap))
            }
            VerifyCommand::Vust => {
                let (m, n, d) = mnd(cfg)?;
                let e = match &cfg.partitions {
                    Some(p) => NilpotentData::parse(p, m, n)?,
                    None => regular_nilpotent(m, n)?,
                };
                one(verify_vust(m, n, d, &e, cap))
            }
            VerifyCommand::TruncPoly => {
                let (m, n, d) = mnd(cfg)?;
                one(verify_trunc_poly_dc(m, n, d, cap))
            }
            VerifyCommand::HeckeRelations => {
                let (m, n, d) = mnd(cfg)?;
                one(hecke_relations_report(m, n, d, &char_vector(cfg, n)?, cap))
            }
            VerifyCommand::Cyclotomic => {
                let (m, n, d) = mnd(cfg)?;
                one(cyclotomic_report(m, n, d, &char_vector(cfg, n)?, cap))
            }
            VerifyCommand::HeckeDc => {
                let (m, n, d) = mnd(cfg)?;
                one(verify_hecke_dc(m, n, d, &char_vector(cfg, n)?, cfg.max_kazhdan.unwrap_or(4), cap))
            }
            VerifyCommand::Filtration => {
                let (m, n, d) = mnd(cfg)?;
                one(filtration_consistency(m, n, d, &char_vector(cfg, n)?, cap))
            }
            VerifyCommand::Centralizer => {
                let (m, n) = mn(cfg)?;
                one(centralizer_report(m, n))
            }
            VerifyCommand::Theta => {
                let (m, n, d) = mnd(cfg)?;
                one(theta_report(m, n, d, cap))
            }
            VerifyCommand::ThetaSigma => {
                let (m, n, d) = mnd(cfg)?;
                one(theta_sigma_report(m, n, d, cfg.seed, 20, cap))
            }
        },
        Command::Wchi(w) => {
            let (m, n) = mn(cfg)?;
            let k = cfg.max_kazhdan.unwrap_or(6);
            match w {
                WchiCommand::Discover => one(wchi_discover_report(m, n, k)),
                WchiCommand::Hilbert => one(wchi_hilbert_report(m, n, k)),
            }
        }
        Command::Report(ReportCommand::All) => report_all(cfg),
    }
}

/// The five relation families, closed formula against the recursion, and the
/// leading-term shape of the x_i.
pub fn hecke_relations_report(m: usize, n: usize, d: usize, c: &CharVector, cap: usize) -> Result<DualityReport> {
    let ts = capped_space(m, n, d, cap)?;
    let pyr = Pyramid::new(m, n)?;
    let set = HeckeOperatorSet::build(pyr, d, c.clone(), Construction::Closed(SignConvention::Corrected))?;
    let mut checks: Vec<Check> = check_daha_relations(&set)
        .into_iter()
        .map(|r| Check::new(r.name, r.pass, format!("max |defect| = {}", r.max_norm)))
        .collect();
    let rec = hecke_x_recursive(&pyr, &ts, c)?;
    for (s, x) in rec.iter().enumerate() {
        let same = x == set.x(s + 1);
        let diff = x.sub(set.x(s + 1)).nnz();
        checks.push(Check::new(
            format!("closed x{} = recursive x{}", s + 1, s + 1),
            same,
            format!("{diff} differing entries"),
        ));
    }
    let lead = leading_term_check(&set)?;
    checks.push(Check::new("x_i has filtration degree <= 1", lead, "top component of x1 is the (wp e)-insertion"));
    let mut p = params(m, n, d);
    p.c = Some(c.to_string());
    Ok(DualityReport::new("hecke-relations", p, ts.dim(), ts.dim(), checks))
}

/// Minimal polynomial of x_1 against `Π (x - c_i)`. Needs d >= 2.
pub fn cyclotomic_report(m: usize, n: usize, d: usize, c: &CharVector, cap: usize) -> Result<DualityReport> {
    capped_space(m, n, d, cap)?;
    if d < 2 {
        return Err(Error::InvalidParams("the cyclotomic relation is checked for d >= 2".into()));
    }
    let set =
        HeckeOperatorSet::build(Pyramid::new(m, n)?, d, c.clone(), Construction::Closed(SignConvention::Corrected))?;
    let r = cyclotomic_minpoly(&set);
    let deg = |p: &crate::exactlin::Polynomial| p.degree().unwrap_or(0);
    let checks = vec![Check::new(
        "minpoly(x1) = prod (x - c_i)",
        r.matches,
        format!("minimal {}; expected {}", r.minimal, r.expected),
    )];
    let mut p = params(m, n, d);
    p.c = Some(c.to_string());
    Ok(DualityReport::new("cyclotomic", p, deg(&r.minimal), deg(&r.expected), checks))
}

/// Combinatorial g_e basis against ker(ad e), and dim g_e = 3m + n.
pub fn centralizer_report(m: usize, n: usize) -> Result<DualityReport> {
    let oracle = centralizer_oracle(&regular_nilpotent(m, n)?);
    let (comb_dim, spans) = match centralizer_combinatorial(m, n) {
        Ok(b) => (b.len(), subspace_equal(&b.span(), &oracle)? && b.span().dim() == b.len()),
        Err(Error::Convention(_)) => (0, false),
        Err(e) => return Err(e),
    };
    let checks = vec![
        Check::new(
            "combinatorial basis spans ker(ad e)",
            spans,
            format!("{comb_dim} elements, kernel dim {}", oracle.dim()),
        ),
        Check::new("dim g_e = 3m + n", oracle.dim() == 3 * m + n, format!("{} vs {}", oracle.dim(), 3 * m + n)),
    ];
    Ok(DualityReport::new("centralizer", Params { m, n, ..Params::default() }, comb_dim, oracle.dim(), checks))
}

/// Commutant of ψ_d(S_d) and the e-insertions against the span of the Θ
/// operators, plus the coefficient axioms on a commutant basis.
pub fn theta_report(m: usize, n: usize, d: usize, cap: usize) -> Result<DualityReport> {
    let ts = capped_space(m, n, d, cap)?;
    let pyr = Pyramid::new(m, n)?;
    let e = regular_nilpotent(m, n)?;
    let mut gens = psi_generators(&ts);
    for i in 1..=d {
        gens.push(poly_insertion(&ts, i, &e)?);
    }
    let comm = commutant(ts.dim(), &gens)?;
    let k = admissible_triples(&pyr);
    let thetas: Vec<ExactMatrix> =
        theta_basis(&ts, &pyr, &k).into_iter().map(|t| t.operator).filter(|o| !o.is_zero()).collect();
    let span = Subspace::span_matrices(ts.dim() * ts.dim(), &thetas);
    let axioms = check_coefficient_axioms(&ts, &pyr, &k, &comm.matrices(ts.dim()));
    let eq = subspace_equal(&span, &comm)?;
    let checks = vec![
        Check::new(
            "nonzero Theta operators are independent",
            span.dim() == thetas.len(),
            format!("{} operators, span {}", thetas.len(), span.dim()),
        ),
        Check::new("span of Theta = commutant", eq, format!("dims {} / {}", span.dim(), comm.dim())),
        Check::new("axiom: vanishing off K", axioms.vanishing, ""),
        Check::new("axiom: nu-symmetry", axioms.nu_symmetry, ""),
        Check::new("axiom: constancy on fibres", axioms.fiber_constancy, ""),
        Check::new("axiom: orbit relation", axioms.orbit_relation, ""),
    ];
    Ok(DualityReport::new("theta-span", params(m, n, d), comm.dim(), span.dim(), checks))
}

/// Cycle formula for θ_σ against the supertrace on V^{⊗d}, and invariance under
/// `trials` seeded even changes of basis.
pub fn theta_sigma_report(m: usize, n: usize, d: usize, seed: u64, trials: u64, cap: usize) -> Result<DualityReport> {
    let ts = capped_space(m, n, d, cap)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs: Vec<_> = (0..d).map(|_| random_gl(ts.space, &mut rng, 4).even_part()).collect();
    let perms = Permutation::all(d);
    let mut cycle_bad = Vec::new();
    let mut values = Vec::new();
    for s in &perms {
        let a = theta_sigma(s, &xs)?;
        let b = theta_sigma_tensor(&ts, s, &xs)?;
        if a != b {
            cycle_bad.push(format!("{:?}: {a} vs {b}", s.one_line()));
        }
        values.push(a);
    }
    let mut conj_bad = 0;
    for t in 0..trials {
        let (g, g_inv) = random_even_invertible(ts.space, seed.wrapping_add(t + 1));
        let ys: Vec<_> = xs.iter().map(|x| g.mul(x).mul(&g_inv)).collect();
        for (s, v) in perms.iter().zip(&values) {
            if &theta_sigma(s, &ys)? != v {
                conj_bad += 1;
            }
        }
    }
    let checks = vec![
        Check::new(
            "cycle product = str(psi(sigma) X1...Xd) for all sigma",
            cycle_bad.is_empty(),
            if cycle_bad.is_empty() { format!("{} permutations", perms.len()) } else { cycle_bad.join("; ") },
        ),
        Check::new(
            "theta_sigma invariant under even conjugation",
            conj_bad == 0,
            format!("{trials} conjugations, {conj_bad} mismatches"),
        ),
    ];
    Ok(DualityReport::new("theta-sigma", params(m, n, d), perms.len(), perms.len(), checks))
}

fn uea_to_string(alg: &PbwAlgebra, u: &UeaElement) -> String {
    let mut s = String::new();
    for (mono, c) in &u.terms {
        let negative = c.signum() < 0;
        let abs = c.abs();
        s.push_str(match (s.is_empty(), negative) {
            (true, false) => "",
            (true, true) => "-",
            (false, false) => " + ",
            (false, true) => " - ",
        });
        let factors: Vec<String> = mono
            .0
            .iter()
            .map(|&k| {
                let (a, b) = alg.basis[k as usize];
                format!("e({a},{b})")
            })
            .collect();
        if factors.is_empty() {
            let _ = write!(s, "{abs}");
        } else if abs.is_one() {
            s.push_str(&factors.join(" "));
        } else {
            let _ = write!(s, "{abs} {}", factors.join(" "));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// Basis of the truncated W_χ, one check per element (re-verified after solving).
pub fn wchi_discover_report(m: usize, n: usize, max_kazhdan: i64) -> Result<DualityReport> {
    let alg = wchi_algebra(Pyramid::new(m, n)?, max_kazhdan)?;
    let found = find_wchi(&alg, max_kazhdan);
    let checks = found
        .elements
        .iter()
        .zip(&found.kazhdan_degrees)
        .enumerate()
        .map(|(i, (u, w))| {
            Check::new(format!("u{i} (Kazhdan degree {w})"), is_wchi_element(&alg, u), uea_to_string(&alg, u))
        })
        .collect();
    let p = Params { m, n, max_kazhdan: Some(max_kazhdan), ..Params::default() };
    Ok(DualityReport::new("wchi-discover", p, found.elements.len(), found.elements.len(), checks))
}

/// Layer dimensions against the S(g_e) Hilbert series, and closure under products.
pub fn wchi_hilbert_report(m: usize, n: usize, max_kazhdan: i64) -> Result<DualityReport> {
    let alg = wchi_algebra(Pyramid::new(m, n)?, max_kazhdan)?;
    let found = find_wchi(&alg, max_kazhdan);
    let h = wchi_hilbert_check(&alg, &found)?;
    let bad = closure_failures(&alg, &found)?;
    let pairs = (0..found.elements.len())
        .flat_map(|i| (0..found.elements.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| found.kazhdan_degrees[i] + found.kazhdan_degrees[j] <= max_kazhdan)
        .count();
    let checks = vec![
        Check::new(
            "cumulative dims match S(g_e) Hilbert series",
            h.matches,
            format!("found {:?}; expected {:?}", h.found, h.expected),
        ),
        Check::new(
            "products of solutions are solutions",
            bad.is_empty(),
            format!("{} of {pairs} products fail", bad.len()),
        ),
    ];
    let p = Params { m, n, max_kazhdan: Some(max_kazhdan), ..Params::default() };
    let top = |v: &[u64]| v.last().copied().unwrap_or(0) as usize;
    Ok(DualityReport::new("wchi-hilbert", p, *h.found.last().unwrap_or(&0), top(&h.expected), checks))
}

type Task = Box<dyn Fn() -> Result<Vec<DualityReport>> + Send + Sync>;

fn task(f: impl Fn() -> Result<DualityReport> + Send + Sync + 'static) -> Task {
    Box::new(move || f().map(|r| vec![r]))
}

/// The full suite in a fixed order.
pub fn suite(cfg: &RunConfig) -> Vec<Task> {
    let cap = cfg.size_cap;
    let seed = cfg.seed;
    let mut tasks: Vec<Task> = Vec::new();
    let grid = [(1, 1, 2), (1, 2, 2), (1, 2, 3), (2, 2, 2), (2, 3, 2)];
    for (m, n, d) in grid {
        for c in [CharVector::zero(n), ascending(n)] {
            let c2 = c.clone();
            tasks.push(task(move || hecke_relations_report(m, n, d, &c2, cap)));
            tasks.push(task(move || cyclotomic_report(m, n, d, &c, cap)));
        }
    }
    tasks.push(Box::new(move || verify_sergeev_grid(cap)));
    for (m, n, d) in [(1, 2, 2), (1, 2, 3), (2, 2, 2)] {
        tasks.push(task(move || verify_trunc_poly_dc(m, n, d, cap)));
    }
    for (p, m, n, d) in [("1|1,1", 1, 2, 2), ("1|1", 1, 1, 2), ("1|2,1", 1, 3, 2)] {
        tasks.push(task(move || verify_vust(m, n, d, &NilpotentData::parse(p, m, n)?, cap)));
    }
    for n in 1..=4 {
        for m in 1..=n {
            tasks.push(task(move || centralizer_report(m, n)));
        }
    }
    for (m, n, d) in [(1, 2, 2), (2, 2, 2)] {
        tasks.push(task(move || theta_report(m, n, d, cap)));
    }
    for (m, n) in [(1, 1), (1, 2), (2, 2)] {
        tasks.push(task(move || wchi_hilbert_report(m, n, 6)));
    }
    for (m, n, d) in [(1, 2, 2), (2, 2, 2)] {
        for c in [CharVector::zero(n), generic(n)] {
            tasks.push(task(move || verify_hecke_dc(m, n, d, &c, 4, cap)));
        }
    }
    for d in 1..=3 {
        tasks.push(task(move || theta_sigma_report(1, 2, d, seed, 20, cap)));
    }
    tasks.push(task(move || filtration_consistency(1, 2, 2, &CharVector::zero(2), cap)));
    tasks.push(task(move || filtration_consistency(1, 2, 2, &generic(2), cap)));
    tasks
}

/// c = (1, 2, …, n).
pub fn ascending(n: usize) -> CharVector {
    CharVector::new((1..=n as i64).map(crate::exactlin::Q::from_int).collect(), n).expect("length n")
}

/// A non-integral c with distinct entries.
pub fn generic(n: usize) -> CharVector {
    CharVector::new((0..n as i64).map(|k| crate::exactlin::Q::new(2 * k + 1, 3)).collect(), n).expect("length n")
}

fn report_all(cfg: &RunConfig) -> Result<Vec<DualityReport>> {
    let tasks = suite(cfg);
    let go = || -> Vec<Result<Vec<DualityReport>>> {
        tasks
            .par_iter()
            .map(|t| {
                let start = Instant::now();
                t().map(|rs| rs.into_iter().map(|r| r.timed(start, cfg.timing)).collect())
            })
            .collect()
    };
    let results = match cfg.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::InvalidParams(format!("cannot start {w} workers: {e}")))?
            .install(go),
        None => go(),
    };
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}
