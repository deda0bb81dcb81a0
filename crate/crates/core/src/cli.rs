//! The `ybw` command line. Every command produces a [`Report`]; exit codes are
//! 0 (all checks pass), 1 (a verification failed) and 2 (malformed input).

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::construct::{build_couple, end_to_end_with};
use crate::corpus::{sample_elements, selftest};
use crate::couple::YangBaxterCouple;
use crate::group::{catalog_irreps, catalog_names, load_group, FiniteGroup, GroupData};
use crate::hirai::{closed_form_character, is_yb_admissible, thoma_restriction, validate_params};
use crate::io::{
    couple_parts_from_json, couple_to_json, element_from_json, parse_json, raw_params_from_json, rmatrix_from_json,
    rmatrix_to_json, to_pretty,
};
use crate::report::{use_color, Report};
use crate::rmatrix::{extract_thoma, verify_rmatrix, RMatrix};
use crate::rng::Lcg64;
use crate::wreath::WreathElement;
use crate::{CycloScalar, Error};

#[derive(Parser, Debug)]
#[command(name = "ybw", version, about = "Exact Yang-Baxter representations of S∞ and T ≀ S∞")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for sampled elements.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List catalog groups with their irreps and class characters.
    Catalog,
    /// Certify an R-matrix file and print its Thoma parameters.
    CheckRmatrix { file: PathBuf },
    /// Thoma parameters of a certified R-matrix.
    Thoma { file: PathBuf },
    /// Certify `R ⊞ R'` and check the merge law for its Thoma parameters.
    Boxplus {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decompose a wreath element or print its conjugacy invariant.
    Element(ElementArgs),
    /// Parameter-file commands.
    #[command(subcommand)]
    Params(ParamsCommand),
    /// Closed-form character of a parameter set at an element.
    HiraiChar {
        file: PathBuf,
        #[arg(long)]
        element: PathBuf,
    },
    /// Build the couple of an admissible parameter set.
    Build {
        file: PathBuf,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Certify a couple bundle.
    CheckCouple { file: PathBuf },
    /// Trace character of a couple at an element.
    Char {
        file: PathBuf,
        #[arg(long)]
        element: PathBuf,
    },
    /// Compare trace and closed-form characters on seeded samples.
    VerifyTheorem {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value_t = 5)]
        max_support: usize,
    },
    /// Run the bundled corpus against its expectations.
    Selftest,
}

#[derive(Args, Debug)]
pub struct ElementArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub json: PathBuf,
    #[arg(long, conflicts_with = "invariant", required_unless_present = "invariant")]
    pub decompose: bool,
    #[arg(long)]
    pub invariant: bool,
}

#[derive(Subcommand, Debug)]
pub enum ParamsCommand {
    /// Membership, admissibility, minimal d and Thoma restriction.
    Check {
        file: PathBuf,
        #[arg(long)]
        d: Option<usize>,
    },
}

/// Output text and process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run_cli<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Outcome { stdout, stderr, exit_code: code };
        }
    };
    let report = run(&cli);
    let stdout = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(use_color()),
    };
    Outcome {
        stdout,
        stderr: String::new(),
        exit_code: report.exit_code,
    }
}

/// Input failures end the command with exit code 2.
enum Stop {
    Input(String),
    Verify(String, String),
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        Stop::Input(e.to_string())
    }
}

type Step<T> = std::result::Result<T, Stop>;

fn read(report: &mut Report, path: &Path) -> Step<Value> {
    let shown = path.display().to_string();
    let bytes = std::fs::read(path).map_err(|e| Stop::Input(format!("{shown}: {e}")))?;
    report.input(&shown, &bytes);
    let text = String::from_utf8(bytes).map_err(|_| Stop::Input(format!("{shown}: not UTF-8")))?;
    Ok(parse_json(&text, &shown)?)
}

fn in_file<T>(path: &Path, r: crate::Result<T>) -> Step<T> {
    r.map_err(|e| Stop::Input(format!("{}: {e}", path.display())))
}

fn verified<T>(check: &str, r: crate::Result<T>) -> Step<T> {
    r.map_err(|e| Stop::Verify(check.to_string(), e.to_string()))
}

pub fn run(cli: &Cli) -> Report {
    let name = command_name(&cli.command);
    let mut report = Report::new(name);
    let result = match &cli.command {
        Command::Catalog => catalog(&mut report),
        Command::CheckRmatrix { file } => check_rmatrix(&mut report, file, true),
        Command::Thoma { file } => check_rmatrix(&mut report, file, false),
        Command::Boxplus { left, right, out } => boxplus(&mut report, left, right, out.as_deref()),
        Command::Element(args) => element(&mut report, args),
        Command::Params(ParamsCommand::Check { file, d }) => params_check(&mut report, file, *d),
        Command::HiraiChar { file, element } => hirai_char(&mut report, file, element),
        Command::Build { file, d, out } => build(&mut report, file, *d, out),
        Command::CheckCouple { file } => check_couple(&mut report, file),
        Command::Char { file, element } => char_cmd(&mut report, file, element),
        Command::VerifyTheorem {
            file,
            samples,
            d,
            max_support,
        } => verify_theorem(&mut report, file, *samples, *d, *max_support, cli.seed),
        Command::Selftest => {
            report = selftest();
            Ok(())
        }
    };
    match result {
        Ok(()) => {}
        Err(Stop::Input(msg)) => report.malformed(msg),
        Err(Stop::Verify(check, msg)) => report.fail(&check, msg),
    }
    report
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Catalog => "catalog",
        Command::CheckRmatrix { .. } => "check-rmatrix",
        Command::Thoma { .. } => "thoma",
        Command::Boxplus { .. } => "boxplus",
        Command::Element(_) => "element",
        Command::Params(_) => "params check",
        Command::HiraiChar { .. } => "hirai-char",
        Command::Build { .. } => "build",
        Command::CheckCouple { .. } => "check-couple",
        Command::Char { .. } => "char",
        Command::VerifyTheorem { .. } => "verify-theorem",
        Command::Selftest => "selftest",
    }
}

fn catalog(report: &mut Report) -> Step<()> {
    for name in catalog_names() {
        let g = load_group(&name)?;
        let irreps = catalog_irreps(&g)?;
        let reps: Vec<String> = g.conjugacy_classes().iter().map(|c| c.representative.to_string()).collect();
        report.info(
            &format!("group {name}"),
            format!("order {}, {} classes, representatives [{}]", g.order(), reps.len(), reps.join(", ")),
        );
        for r in &irreps {
            let chars: Vec<String> = g
                .conjugacy_classes()
                .iter()
                .map(|c| r.character(c.representative).to_string())
                .collect();
            report.info(&format!("  irrep {name}/{}", r.label), format!("dim {}, characters [{}]", r.dim, chars.join(", ")));
        }
    }
    Ok(())
}

fn load_rmatrix(report: &mut Report, file: &Path) -> Step<RMatrix> {
    let v = read(report, file)?;
    let (m, d) = in_file(file, rmatrix_from_json(&v, "$"))?;
    verified("certified", verify_rmatrix(m, d))
}

fn check_rmatrix(report: &mut Report, file: &Path, verbose: bool) -> Step<()> {
    let r = load_rmatrix(report, file)?;
    if verbose {
        report.pass_with("certified", format!("involutive, unitary, Yang-Baxter (d = {})", r.dim()));
    }
    let t = verified("thoma", extract_thoma(&r))?;
    report.pass_with("thoma", t.to_string());
    Ok(())
}

fn boxplus(report: &mut Report, left: &Path, right: &Path, out: Option<&Path>) -> Step<()> {
    let a = load_rmatrix(report, left)?;
    let b = load_rmatrix(report, right)?;
    let ta = verified("thoma", extract_thoma(&a))?;
    let tb = verified("thoma", extract_thoma(&b))?;
    let sum = verified("certified", a.boxplus(&b))?;
    report.pass_with("certified", format!("d = {}", sum.dim()));
    let got = verified("thoma", extract_thoma(&sum))?;
    let want = ta.merge(a.dim(), &tb, b.dim());
    report.check("merge law", got == want, || format!("extracted {got}, merge {want}"));
    report.info("thoma", got.to_string());
    if let Some(out) = out {
        write_file(out, &to_pretty(&rmatrix_to_json(&sum)))?;
        report.info("written", out.display().to_string());
    }
    Ok(())
}

fn write_file(path: &Path, text: &str) -> Step<()> {
    std::fs::write(path, text).map_err(|e| Stop::Verify("write".into(), format!("{}: {e}", path.display())))
}

fn element(report: &mut Report, args: &ElementArgs) -> Step<()> {
    let data = GroupData::catalog(&args.group)?;
    let v = read(report, &args.json)?;
    let g = in_file(&args.json, element_from_json(&v, data.group.clone(), "$"))?;
    report.info("element", g.to_string());
    if args.decompose {
        let dec = g.standard_decomposition();
        for (q, t) in &dec.elementary {
            report.info("elementary", format!("colour {t} at position {q}"));
        }
        for c in &dec.cyclic {
            let cycle: Vec<String> = c.cycle.iter().map(ToString::to_string).collect();
            report.info(
                "cyclic",
                format!("cycle ({}) with colour product {} (class representative {})", cycle.join(" "), c.product(&data.group), c.product_class(&data.group)),
            );
        }
        report.check("recomposes", dec.recompose(&data.group) == g, || "product of parts differs".into());
    } else {
        let inv = g.conjugacy_invariant();
        report.info("elementary classes", format!("{:?}", inv.elem_classes));
        report.info("cycles (class, length)", format!("{:?}", inv.cycle_data));
    }
    Ok(())
}

fn params_check(report: &mut Report, file: &Path, d: Option<usize>) -> Step<()> {
    let v = read(report, file)?;
    let (group, raw) = in_file(file, raw_params_from_json(&v, "$"))?;
    let data = in_file(file, GroupData::catalog(&group))?;
    let p = match validate_params(data, &raw) {
        Ok(p) => p,
        Err(e @ Error::UnknownIrrepLabel(_)) => return Err(Stop::Input(format!("{}: {e}", file.display()))),
        Err(e) => return Err(Stop::Verify("membership".into(), e.to_string())),
    };
    report.pass_with("membership", format!("mass {}, deficit {}", p.total_mass(), p.deficit()));
    let adm = is_yb_admissible(&p);
    if adm.verdict {
        report.pass_with("yb admissible", format!("minimal d = {}", adm.minimal_d.unwrap_or(0)));
    } else {
        report.info("yb admissible", format!("no ({})", adm.violations.join(", ")));
    }
    if let (Some(d), Some(min)) = (d, adm.minimal_d) {
        report.check("d", d > 0 && (d as u64).is_multiple_of(min), || format!("{d} is not a multiple of {min}"));
    }
    report.info("thoma restriction", thoma_restriction(&p).to_string());
    Ok(())
}

fn load_params(report: &mut Report, file: &Path) -> Step<crate::hirai::HiraiParams> {
    let v = read(report, file)?;
    in_file(file, crate::io::params_from_json(&v, "$"))
}

fn load_element(report: &mut Report, file: &Path, group: &Arc<FiniteGroup>) -> Step<WreathElement> {
    let v = read(report, file)?;
    in_file(file, element_from_json(&v, group.clone(), "$"))
}

fn show_value(report: &mut Report, check: &str, v: &CycloScalar) {
    let z = v.to_complex();
    report.info(check, format!("{v} ≈ {:.12} {:+.12}i", z.re, z.im));
}

fn hirai_char(report: &mut Report, file: &Path, element: &Path) -> Step<()> {
    let p = load_params(report, file)?;
    let g = load_element(report, element, p.group())?;
    let v = closed_form_character(&p, &g)?;
    show_value(report, "closed form", &v);
    Ok(())
}

fn build(report: &mut Report, file: &Path, d: Option<usize>, out: &Path) -> Step<()> {
    let p = load_params(report, file)?;
    let (couple, layout) = verified("build", build_couple(&p, d))?;
    report.pass_with("certified", format!("d = {}, {} blocks", layout.d, layout.blocks.len()));
    write_file(out, &to_pretty(&couple_to_json(&couple)))?;
    report.info("written", out.display().to_string());
    Ok(())
}

fn load_couple(report: &mut Report, file: &Path) -> Step<YangBaxterCouple> {
    let v = read(report, file)?;
    let parts = in_file(file, couple_parts_from_json(&v, "$"))?;
    let c = verified("certified", parts.certify())?;
    if c.w() > 1 {
        report.info("experimental", format!("dim W = {} > 1, characters normalized by w d^n", c.w()));
    }
    Ok(c)
}

fn check_couple(report: &mut Report, file: &Path) -> Step<()> {
    let c = load_couple(report, file)?;
    report.pass_with("certified", format!("d = {}, w = {}, |T| = {}", c.d(), c.w(), c.group().order()));
    let t = verified("thoma", extract_thoma(c.r()))?;
    report.info("thoma", t.to_string());
    Ok(())
}

fn char_cmd(report: &mut Report, file: &Path, element: &Path) -> Step<()> {
    let c = load_couple(report, file)?;
    let g = load_element(report, element, c.group())?;
    let v = verified("character", c.character(&g))?;
    show_value(report, "character", &v);
    Ok(())
}

fn verify_theorem(report: &mut Report, file: &Path, samples: usize, d: Option<usize>, max_support: usize, seed: u64) -> Step<()> {
    let p = load_params(report, file)?;
    let (couple, layout) = verified("build", build_couple(&p, d))?;
    report.pass_with("certified", format!("d = {}, extended reflection equation on T x T", layout.d));
    let sample = sample_elements(p.data(), seed, samples, max_support);
    let e2e = verified("end-to-end", end_to_end_with(&p, &couple, &layout, &sample))?;
    report.check("thoma restriction", e2e.thoma_match, || {
        format!("built {}, restricted {}", e2e.built_thoma, e2e.restricted_thoma)
    });
    match e2e.normal_form_match {
        Some(ok) => report.check("normal form", ok, || "permuted R differs from the normal form".into()),
        None => report.info("normal form", "not a basis permutation of the normal form for these blocks"),
    }
    if e2e.mismatches.is_empty() {
        report.pass_with("characters", format!("{} equal pairs (seed {seed})", e2e.equal));
    } else {
        for m in &e2e.mismatches {
            report.fail("characters", format!("sample {} {}: trace {} vs formula {}", m.index, m.element, m.trace, m.formula));
        }
    }
    let mut rng = Lcg64::new(seed ^ 0x5eed);
    let pairs: Vec<_> = (0..samples.min(50))
        .map(|_| WreathElement::random_disjoint_pair(p.group().clone(), &mut rng, max_support))
        .collect();
    let ext = verified("extremality", couple.verify_extremality(&pairs))?;
    report.check("extremality", ext.passed(), || format!("{:?}", ext.failures));
    Ok(())
}
