//! The `flatsic` command line.
//!
//! Exit codes: 0 when the command ran and its verdict is positive, 1 when it
//! ran and the verdict is negative, 2 when the input could not be used.

use std::ffi::OsString;
use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use flatsic_core::ansatz::{self, build_ansatz, free_angle_count, x0_value};
use flatsic_core::legendre::{self, Verdict};
use flatsic_core::polysys::{self, ExportFormat};
use flatsic_core::search::{self, Objective, SearchConfig};
use flatsic_core::{verify, CVec, Complex64, Dim};

use crate::error::{Error, Result};
use crate::format::{self, Metadata, PolysysManifest, SearchFile};
use crate::parallel;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "flatsic", version, about = "Almost-flat SIC fiducial toolkit")]
pub struct Cli {
    /// Print one `key=value` pair per line.
    #[arg(long, global = true)]
    porcelain: bool,

    /// Significant digits for real numbers.
    #[arg(long, global = true, default_value_t = 15, value_parser = clap::value_parser!(u32).range(1..=17))]
    digits: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Arithmetic facts about a dimension.
    DimInfo {
        #[arg(long)]
        d: u64,
    },
    /// Build one Legendre vector, or classify every admissible prime up to --pmax.
    Legendre(LegendreArgs),
    /// Build an Ansatz vector from its free angles.
    AnsatzBuild(AnsatzBuildArgs),
    /// Full report on a vector file.
    Verify {
        file: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        /// Base the exit code on the SIC check alone.
        #[arg(long)]
        expect_sic: bool,
        /// Write the overlap table as CSV.
        #[arg(long)]
        table_csv: Option<PathBuf>,
        /// Write moduli instead of complex entries.
        #[arg(long)]
        moduli: bool,
    },
    /// Per-shift X-overlap residuals.
    Xoverlap {
        file: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// The quartic functional G(i,k) against its SIC targets.
    Gik {
        file: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        moduli: bool,
    },
    /// Both sides of the displacement-sum identities at shift J.
    Prop1 {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        j: i64,
    },
    /// Residue transition counts for primes p ≡ 3 mod 4.
    Perron {
        #[arg(long)]
        pmax: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Closed-form Legendre autocorrelations against direct sums.
    Lemma1 {
        #[arg(long)]
        pmax: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Export the polynomial system for a dimension.
    Polysys {
        #[arg(long)]
        d: u64,
        /// Add the constraints x_j = x_{Mj}.
        #[arg(long)]
        symmetry: Option<i64>,
        #[arg(long)]
        export: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Plain)]
        format: FormatArg,
    },
    /// Multi-start search over the free angles.
    Search(SearchArgs),
    /// Compare two vectors up to Z-shift and global phase.
    Match {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
}

#[derive(Debug, Args)]
struct LegendreArgs {
    #[arg(long, required_unless_present = "pmax", conflicts_with = "pmax")]
    d: Option<u64>,
    /// Branch of the inner square root: + or -.
    #[arg(long, default_value = "+", allow_hyphen_values = true, value_parser = parse_sign)]
    sign: i8,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    pmax: Option<u64>,
    /// Classification CSV (with --pmax).
    #[arg(long, requires = "pmax")]
    csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct AnsatzBuildArgs {
    #[arg(long)]
    d: u64,
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    angles: Vec<f64>,
    #[arg(long)]
    ghost: bool,
    #[arg(long, value_enum, default_value_t = FormArg::Normalized)]
    form: FormArg,
    /// Vector file in the chosen form.
    #[arg(long)]
    out: Option<PathBuf>,
    /// `{"d", "ghost", "angles"}` file.
    #[arg(long)]
    ansatz_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long)]
    d: u64,
    #[arg(long, value_enum, default_value_t = ObjectiveArg::Xoverlap)]
    objective: ObjectiveArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    restarts: usize,
    #[arg(long, default_value_t = SearchConfig::DEFAULT_MAX_ITERATIONS)]
    max_iterations: usize,
    #[arg(long, default_value_t = SearchConfig::DEFAULT_GRADIENT_STEP)]
    gradient_step: f64,
    #[arg(long, default_value_t = SearchConfig::DEFAULT_THRESHOLD)]
    threshold: f64,
    /// Full result list as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Best vector as a normalized vector file.
    #[arg(long)]
    vector_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Plain,
    CasScript,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormArg {
    Normalized,
    VForm,
    Rescaled,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    Xoverlap,
    Sic,
    #[value(name = "naive_x")]
    NaiveX,
}

fn parse_sign(s: &str) -> std::result::Result<i8, String> {
    match s {
        "+" | "+1" | "1" => Ok(1),
        "-" | "-1" => Ok(-1),
        _ => Err(format!("expected + or -, got `{s}`")),
    }
}

struct Out<'a> {
    w: &'a mut dyn Write,
    porcelain: bool,
    digits: usize,
}

impl Out<'_> {
    fn real(&self, x: f64) -> String {
        if x == 0.0 || !x.is_finite() {
            return x.to_string();
        }
        format!("{:.*e}", self.digits - 1, x)
    }

    fn complex(&self, z: Complex64) -> String {
        let im = self.real(z.im);
        let sign = if im.starts_with('-') { "" } else { "+" };
        format!("{}{sign}{im}i", self.real(z.re))
    }

    fn kv(&mut self, key: &str, value: impl Display) -> Result<()> {
        let r = if self.porcelain {
            writeln!(self.w, "{key}={value}")
        } else {
            writeln!(self.w, "{key:<24} {value}")
        };
        r.map_err(stdout_err)
    }

    fn num(&mut self, key: &str, x: f64) -> Result<()> {
        let s = self.real(x);
        self.kv(key, s)
    }

    fn cnum(&mut self, key: &str, z: Complex64) -> Result<()> {
        let s = self.complex(z);
        self.kv(key, s)
    }

    /// A line shown only in human-readable mode.
    fn text(&mut self, line: impl Display) -> Result<()> {
        if self.porcelain {
            return Ok(());
        }
        writeln!(self.w, "{line}").map_err(stdout_err)
    }
}

fn stdout_err(e: std::io::Error) -> Error {
    Error::Io {
        path: "<stdout>".into(),
        source: e,
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, contents: &[u8]) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn create(path: &Path) -> Result<fs::File> {
    fs::File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load(path: &Path) -> Result<CVec> {
    format::load_vector(&read(path)?)
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn exit_for(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

/// Parse `args` (including the program name) and run. Output goes to the
/// given writers.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{}", e.render());
                EXIT_OK
            };
            return code;
        }
    };
    let mut out = Out {
        w: stdout,
        porcelain: cli.porcelain,
        digits: cli.digits as usize,
    };
    match dispatch(cli.command, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

fn dispatch(cmd: Command, out: &mut Out) -> Result<i32> {
    match cmd {
        Command::DimInfo { d } => dim_info(d, out),
        Command::Legendre(a) => legendre_cmd(a, out),
        Command::AnsatzBuild(a) => ansatz_build(a, out),
        Command::Verify {
            file,
            tol,
            expect_sic,
            table_csv,
            moduli,
        } => verify_cmd(&file, tol, expect_sic, table_csv.as_deref(), moduli, out),
        Command::Xoverlap { file, tol } => xoverlap_cmd(&file, tol, out),
        Command::Gik {
            file,
            tol,
            csv,
            moduli,
        } => gik_cmd(&file, tol, csv.as_deref(), moduli, out),
        Command::Prop1 { file, j } => prop1_cmd(&file, j, out),
        Command::Perron { pmax, csv } => perron_cmd(pmax, csv.as_deref(), out),
        Command::Lemma1 { pmax, tol } => lemma1_cmd(pmax, tol, out),
        Command::Polysys {
            d,
            symmetry,
            export,
            format,
        } => polysys_cmd(d, symmetry, &export, format, out),
        Command::Search(a) => search_cmd(a, out),
        Command::Match { file1, file2, tol } => match_cmd(&file1, &file2, tol, out),
    }
}

fn dim_info(d: u64, out: &mut Out) -> Result<i32> {
    let dim = Dim::new(d)?;
    out.kv("d", d)?;
    out.kv("odd", dim.is_odd())?;
    out.kv("prime", dim.is_prime())?;
    out.kv("mod4", dim.mod4())?;
    out.kv("mod8", dim.mod8())?;
    match dim.n_sq_plus_3() {
        Some(n) => out.kv("n_sq_plus_3", n)?,
        None => out.kv("n_sq_plus_3", "none")?,
    }
    if dim.is_odd() && d >= 3 {
        out.kv("free_angles", free_angle_count(dim))?;
        let x0 = x0_value(dim, false);
        out.num("x0", x0)?;
        out.num("x0_ghost", x0_value(dim, true))?;
        out.num("norm_sq", 1.0 / (d as f64 - 1.0 - x0))?;
    }
    out.kv("legendre", dim.is_prime_3_mod_4())?;
    Ok(EXIT_OK)
}

fn legendre_cmd(a: LegendreArgs, out: &mut Out) -> Result<i32> {
    if let Some(pmax) = a.pmax {
        let rows = parallel::classify_up_to(pmax)?;
        if let Some(path) = &a.csv {
            format::write_classification_csv(create(path)?, &rows)?;
        }
        out.kv("dimensions", rows.len())?;
        for verdict in [Verdict::Sic, Verdict::XOverlapOnly, Verdict::Neither] {
            let n = rows.iter().filter(|r| r.verdict() == verdict).count();
            out.kv(&format!("count_{}", verdict.name().replace('-', "_")), n)?;
        }
        out.text(format!(
            "{:>6} {:>4} {:>22} {:>22}  verdict",
            "d", "mod8", "x_overlap", "sic"
        ))?;
        for r in &rows {
            let line = format!(
                "{:>6} {:>4} {:>22} {:>22}  {}",
                r.d,
                r.mod8,
                out.real(r.x_overlap_residual()),
                out.real(r.sic_residual()),
                r.verdict().name()
            );
            out.text(line)?;
        }
        return Ok(EXIT_OK);
    }

    let d = a.d.expect("clap requires --d without --pmax");
    let dim = Dim::new(d)?;
    let lv = legendre::build_legendre_vector(dim, a.sign)?;
    let psi = lv.ansatz().to_normalized();
    let xr = ansatz::x_overlap_residual(&psi)?;
    let sr = verify::sic_residual(&psi);
    out.kv("d", d)?;
    out.kv("sign", if a.sign > 0 { "+" } else { "-" })?;
    out.cnum("x1", lv.x1())?;
    out.num("x_overlap_residual", xr)?;
    out.num("sic_residual", sr)?;
    if let Some(path) = &a.out {
        let meta = Metadata {
            label: Some(format!(
                "legendre d={d} sign={}",
                if a.sign > 0 { "+" } else { "-" }
            )),
            source: Some("flatsic legendre".into()),
        };
        write_file(path, format::vector_json(&psi, Some(meta))?.as_bytes())?;
        out.kv("written", path.display())?;
    }
    Ok(EXIT_OK)
}

fn ansatz_build(a: AnsatzBuildArgs, out: &mut Out) -> Result<i32> {
    let dim = Dim::new(a.d)?;
    let av = build_ansatz(dim, &a.angles, a.ghost)?;
    let v = match a.form {
        FormArg::Normalized => av.to_normalized(),
        FormArg::VForm => av.to_v_form(),
        FormArg::Rescaled => av.to_rescaled(),
    };
    out.kv("d", a.d)?;
    out.kv("ghost", a.ghost)?;
    out.num("x0", av.x0())?;
    out.num("norm_sq", av.norm_sq())?;
    out.num(
        "x_overlap_residual",
        ansatz::x_overlap_residual(&av.to_normalized())?,
    )?;
    for (r, c) in v.components().iter().enumerate() {
        out.cnum(&format!("component_{r}"), *c)?;
    }
    if let Some(path) = &a.out {
        let meta = Metadata {
            label: None,
            source: Some("flatsic ansatz-build".into()),
        };
        write_file(path, format::vector_json(&v, Some(meta))?.as_bytes())?;
    }
    if let Some(path) = &a.ansatz_out {
        write_file(path, format::ansatz_json(&av)?.as_bytes())?;
    }
    Ok(EXIT_OK)
}

/// X-overlap residual, or `None` where the equation is not defined (even `d`
/// or a vanishing component).
fn x_overlap_if_defined(psi: &CVec) -> Option<f64> {
    ansatz::x_overlap_residual(psi).ok()
}

fn verify_cmd(
    file: &Path,
    tol: Option<f64>,
    expect_sic: bool,
    table_csv: Option<&Path>,
    moduli: bool,
    out: &mut Out,
) -> Result<i32> {
    let psi = load(file)?;
    let dim = psi.dim();
    let tol = tol.unwrap_or_else(|| verify::default_tolerance(dim));
    let report = verify::is_sic(&psi, tol);
    if report.input_norm == 0.0 {
        return Err(Error::Invariant {
            name: "non-zero",
            detail: "the vector is zero".into(),
        });
    }
    let xr = x_overlap_if_defined(&psi);

    out.kv("d", dim.get())?;
    out.kv("form", psi.form().name())?;
    out.num("input_norm", report.input_norm)?;
    out.num("tolerance", tol)?;
    out.num("z_overlap_residual", ansatz::z_overlap_residual(&psi))?;
    match xr {
        Some(x) => out.num("x_overlap_residual", x)?,
        None => out.kv("x_overlap_residual", "n/a")?,
    }
    out.num("naive_x_residual", verify::naive_x_residual(&psi))?;
    out.num("sic_residual", report.max_modulus_deviation)?;
    out.kv(
        "worst_pair",
        format!("{},{}", report.worst_pair.0, report.worst_pair.1),
    )?;
    out.num("gik_residual", report.gik_max_deviation)?;

    let x_ok = xr.map(|x| x <= tol);
    let x_label = x_ok.map_or("N/A", pass);
    if out.porcelain {
        out.kv("x_overlap", x_label.to_lowercase())?;
        out.kv("sic", pass(report.is_sic).to_lowercase())?;
    } else {
        out.text(format!(
            "X-overlap: {x_label}, SIC: {}",
            pass(report.is_sic)
        ))?;
    }

    if let Some(path) = table_csv {
        let table = verify::overlap_table(&psi);
        let rows: Vec<&[Complex64]> = (0..dim.len()).map(|j| table.row(j)).collect();
        format::write_complex_table(create(path)?, "j", &rows, moduli)?;
    }

    let ok = if expect_sic {
        report.is_sic
    } else {
        report.is_sic && x_ok.unwrap_or(true)
    };
    Ok(exit_for(ok))
}

fn xoverlap_cmd(file: &Path, tol: Option<f64>, out: &mut Out) -> Result<i32> {
    let psi = load(file)?;
    let tol = tol.unwrap_or_else(|| verify::default_tolerance(psi.dim()));
    let res = ansatz::x_overlap_residuals(&psi)?;
    let worst = res.iter().map(|r| r.norm()).fold(0.0, f64::max);
    out.kv("d", psi.dim().get())?;
    for (idx, r) in res.iter().enumerate() {
        out.num(&format!("residual_{}", idx + 1), r.norm())?;
    }
    out.num("max_residual", worst)?;
    out.num("tolerance", tol)?;
    out.kv("x_overlap", pass(worst <= tol).to_lowercase())?;
    Ok(exit_for(worst <= tol))
}

fn gik_cmd(
    file: &Path,
    tol: Option<f64>,
    csv: Option<&Path>,
    moduli: bool,
    out: &mut Out,
) -> Result<i32> {
    let psi = load(file)?;
    let dim = psi.dim();
    let tol = tol.unwrap_or_else(|| verify::default_tolerance(dim));
    let residual = verify::gik_residual(&psi);
    out.kv("d", dim.get())?;
    out.num("gik_residual", residual)?;
    out.num("tolerance", tol)?;
    out.kv("gik", pass(residual <= tol).to_lowercase())?;
    if let Some(path) = csv {
        let table = verify::gik_table(&psi);
        let rows: Vec<&[Complex64]> = table.chunks(dim.len()).collect();
        format::write_complex_table(create(path)?, "i", &rows, moduli)?;
    }
    Ok(exit_for(residual <= tol))
}

fn prop1_cmd(file: &Path, j: i64, out: &mut Out) -> Result<i32> {
    let psi = load(file)?;
    let row = ansatz::displacement_row_identity(&psi, j)?;
    let sum = ansatz::displacement_sum_relation(&psi, -2 * j)?;
    out.kv("d", psi.dim().get())?;
    out.kv("j", j)?;
    out.cnum("row_lhs", row.lhs)?;
    out.cnum("row_rhs", row.rhs)?;
    out.num("row_deviation", row.deviation)?;
    out.cnum("sum_lhs", sum.lhs)?;
    out.cnum("sum_rhs", sum.rhs)?;
    out.num("sum_deviation", sum.deviation)?;
    Ok(EXIT_OK)
}

fn perron_cmd(pmax: u64, csv: Option<&Path>, out: &mut Out) -> Result<i32> {
    let rows = parallel::perron_up_to(pmax)?;
    let mismatches = rows.iter().filter(|c| !c.matches_prediction()).count();
    if let Some(path) = csv {
        format::write_perron_csv(create(path)?, &rows)?;
    }
    out.text(format!(
        "{:>5} {:>5} {:>5} {:>5} {:>5} {:>5}  ok",
        "p", "a", "RR", "RN", "NR", "NN"
    ))?;
    for c in &rows {
        out.text(format!(
            "{:>5} {:>5} {:>5} {:>5} {:>5} {:>5}  {}",
            c.p,
            c.a,
            c.reste_from_reste,
            c.nichtreste_from_reste,
            c.reste_from_nichtreste,
            c.nichtreste_from_nichtreste,
            c.matches_prediction()
        ))?;
    }
    let primes = legendre::primes_3_mod_4(pmax).len();
    out.kv("primes", primes)?;
    out.kv("shifts", rows.len())?;
    out.kv("mismatches", mismatches)?;
    Ok(exit_for(mismatches == 0))
}

fn lemma1_cmd(pmax: u64, tol: f64, out: &mut Out) -> Result<i32> {
    let rows = parallel::lemma1_up_to(pmax)?;
    let worst = rows.iter().map(|r| r.1).fold(0.0, f64::max);
    for (p, dev) in &rows {
        let line = format!("{p:>6} {}", out.real(*dev));
        out.text(line)?;
    }
    out.kv("primes", rows.len())?;
    out.num("max_deviation", worst)?;
    out.kv("closed_forms", pass(worst <= tol).to_lowercase())?;
    Ok(exit_for(worst <= tol))
}

fn polysys_cmd(
    d: u64,
    symmetry: Option<i64>,
    export: &Path,
    fmt: FormatArg,
    out: &mut Out,
) -> Result<i32> {
    let sys = polysys::build_system(Dim::new(d)?, symmetry)?;
    let format = match fmt {
        FormatArg::Plain => ExportFormat::Plain,
        FormatArg::CasScript => ExportFormat::CasScript,
    };
    let text = polysys::export_system(&sys, format);
    write_file(export, text.as_bytes())?;
    let manifest = PolysysManifest::new(&sys, &text);
    let mut manifest_path = export.as_os_str().to_owned();
    manifest_path.push(".manifest.json");
    let manifest_path = PathBuf::from(manifest_path);
    write_file(
        &manifest_path,
        serde_json::to_string_pretty(&manifest)?.as_bytes(),
    )?;
    out.kv("d", d)?;
    out.kv("num_generators", manifest.num_generators)?;
    out.kv("sha256", &manifest.sha256)?;
    out.kv("export", export.display())?;
    out.kv("manifest", manifest_path.display())?;
    Ok(EXIT_OK)
}

fn search_cmd(a: SearchArgs, out: &mut Out) -> Result<i32> {
    let objective = match a.objective {
        ObjectiveArg::Xoverlap => Objective::XOverlap,
        ObjectiveArg::Sic => Objective::Sic,
        ObjectiveArg::NaiveX => Objective::NaiveX,
    };
    let config = SearchConfig {
        max_iterations: a.max_iterations,
        gradient_step: a.gradient_step,
        convergence_threshold: a.threshold,
        ..SearchConfig::new(Dim::new(a.d)?, objective, a.seed, a.restarts)?
    };
    let outcome = parallel::minimize(&config)?;
    let best = outcome.best();
    let converged = outcome.results.iter().filter(|r| r.converged).count();
    out.kv("d", a.d)?;
    out.kv("objective", objective.name())?;
    out.kv("seed", a.seed)?;
    out.kv("restarts", a.restarts)?;
    out.kv("converged", converged)?;
    out.num("best_objective", best.objective_value)?;
    out.kv("best_restart", best.restart_index)?;
    let angles: Vec<String> = best.angles.iter().map(|x| out.real(*x)).collect();
    out.kv("best_angles", angles.join(","))?;
    let psi = outcome.vector(best);
    out.kv(
        "best_is_sic",
        verify::is_sic(&psi, verify::default_tolerance(config.dim)).is_sic,
    )?;
    if let Some(path) = &a.out {
        write_file(
            path,
            serde_json::to_string_pretty(&SearchFile::from_outcome(&outcome))?.as_bytes(),
        )?;
    }
    if let Some(path) = &a.vector_out {
        let meta = Metadata {
            label: Some(format!(
                "search d={} seed={} restart={}",
                a.d, a.seed, best.restart_index
            )),
            source: Some("flatsic search".into()),
        };
        write_file(path, format::vector_json(&psi, Some(meta))?.as_bytes())?;
    }
    Ok(exit_for(converged > 0))
}

fn match_cmd(file1: &Path, file2: &Path, tol: f64, out: &mut Out) -> Result<i32> {
    let a = load(file1)?;
    let b = load(file2)?;
    let (dist, k) = search::canonical_distance(&a, &b)?;
    out.num("distance", dist)?;
    out.kv("z_shift", k)?;
    out.kv("match", dist < tol)?;
    Ok(exit_for(dist < tol))
}
