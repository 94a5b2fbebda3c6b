//! The `starframe` command-line tool.
//!
//! Exit codes: 0 verified or completed, 1 input error, 2 falsified (or an
//! embedded check failed), 3 undetermined, 4 singular input.
//!
//! A command that produces a frame writes the frame document to `--output`
//! (standard output by default). The report goes to standard output, unless the
//! frame document already occupies it, in which case it goes to standard error.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use crate::algebra::{AlgebraShape, DEFAULT_TOLERANCE};
use crate::document::{
    Check, NormBounds, FrameSpecDocument, HomomorphismDocument, OperatorDocument, Outcome, ReportDocument,
};
use crate::error::{Error, Result};
use crate::frame::{
    FrameBounds, FrameCertificate, OperatorFrame, TransportOptions, Verdict, VerifyPolicy, DEFAULT_SAMPLES,
};
use crate::hom::StarHomomorphism;
use crate::module::ModuleOperator;
use crate::tensor::{frame_tensor, Certification};

const CONSTRUCTION_TOLERANCE: f64 = 1e-8;
const IDENTITY_TOLERANCE: f64 = 1e-9;
const TRANSPORT_SAMPLES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "starframe", version, about = "Operator frames over finite direct sums of matrix algebras")]
pub struct Cli {
    /// Report format; frame documents are always JSON.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Positivity and singularity tolerance (overrides the document).
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Seed for sampling and generation (overrides the document).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Number of random vectors for sampled checks.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify the bounds stored in a frame document.
    Check {
        /// Frame document (`-` reads standard input).
        input: PathBuf,
        /// Refuse to fall back to sampling for non-central bounds.
        #[arg(long)]
        exact_only: bool,
    },
    /// Optimal scalar bounds and the spectrum of the frame operator.
    Bounds {
        /// Frame document (`-` reads standard input).
        input: PathBuf,
    },
    /// Canonical dual frame.
    Dual {
        /// Frame document (`-` reads standard input).
        input: PathBuf,
        /// Write the frame document here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Parseval normalization.
    Parseval {
        /// Frame document (`-` reads standard input).
        input: PathBuf,
        /// Write the frame document here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The frame {T_i θ} for an invertible θ.
    ComposeRight {
        /// Frame document (`-` reads standard input).
        input: PathBuf,
        /// Operator document holding θ.
        #[arg(long)]
        theta: PathBuf,
        /// Write the frame document here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The frame {θ T_i} for an invertible θ.
    ComposeLeft {
        /// Frame document (`-` reads standard input).
        input: PathBuf,
        /// Operator document holding θ.
        #[arg(long)]
        theta: PathBuf,
        /// Write the frame document here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Transport along a *-homomorphism.
    #[command(group(ArgGroup::new("map").required(true).args(["hom", "amplify", "embed"])))]
    Transport {
        /// Frame document (`-` reads standard input).
        input: PathBuf,
        /// Homomorphism document.
        #[arg(long)]
        hom: Option<PathBuf>,
        /// Use a ↦ a ⊕ … ⊕ a with this many copies.
        #[arg(long)]
        amplify: Option<usize>,
        /// Embed all blocks diagonally into one block with this much zero padding.
        #[arg(long)]
        embed: Option<usize>,
        /// Reject homomorphisms that are not onto the target algebra.
        #[arg(long)]
        require_surjective: bool,
        /// Write the frame document here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// External tensor product of two frames.
    Tensor {
        /// Frame document of the left factor.
        left: PathBuf,
        /// Frame document of the right factor.
        right: PathBuf,
        /// Skip certifying the bounds of the factors.
        #[arg(long)]
        waive: bool,
        /// Write the frame document here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Seeded random frame with frame-operator spectrum in [lo, hi].
    Gen {
        /// Block sizes, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        blocks: Vec<usize>,
        /// Rank d of the module A^d.
        #[arg(long, default_value_t = 1)]
        module_dim: usize,
        /// Number of operators.
        #[arg(long, default_value_t = 2)]
        count: usize,
        /// Spectrum range `lo:hi`.
        #[arg(long, default_value = "1:2")]
        spectrum: String,
        /// Write the frame document here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

struct Settings {
    tolerance: f64,
    seed: u64,
    samples: usize,
}

struct Run {
    report: ReportDocument,
    document: Option<FrameSpecDocument>,
    output: Option<PathBuf>,
}

impl Run {
    fn report(report: ReportDocument) -> Self {
        Self {
            report,
            document: None,
            output: None,
        }
    }
}

/// Runs the tool on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    1
                }
            };
            return code;
        }
    };
    let start = Instant::now();
    let mut run = match execute(&cli) {
        Ok(run) => run,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 1;
        }
    };
    run.report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let rendered = match cli.format {
        Format::Json => run.report.to_json(),
        Format::Text => run.report.to_text(),
    };
    let report_to_stderr = match (&run.document, &run.output) {
        (Some(doc), Some(path)) => {
            if let Err(e) = fs::write(path, doc.to_json()) {
                let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                return 1;
            }
            false
        }
        (Some(doc), None) => {
            let _ = stdout.write_all(doc.to_json().as_bytes());
            true
        }
        (None, _) => false,
    };
    let _ = if report_to_stderr {
        stderr.write_all(rendered.as_bytes())
    } else {
        stdout.write_all(rendered.as_bytes())
    };
    run.report.outcome.exit_code()
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_spec(path: &Path) -> Result<FrameSpecDocument> {
    FrameSpecDocument::parse(&read_input(path)?)
}

fn settings(cli: &Cli, doc: Option<&FrameSpecDocument>) -> Result<Settings> {
    let tolerance = cli
        .tolerance
        .or(doc.and_then(|d| d.tolerance))
        .unwrap_or(DEFAULT_TOLERANCE);
    if !(tolerance.is_finite() && tolerance >= 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance {tolerance} must be finite and non-negative")));
    }
    Ok(Settings {
        tolerance,
        seed: cli.seed.or(doc.and_then(|d| d.seed)).unwrap_or(0),
        samples: cli.samples.unwrap_or(DEFAULT_SAMPLES),
    })
}

fn execute(cli: &Cli) -> Result<Run> {
    match &cli.command {
        Command::Check { input, exact_only } => check(cli, input, *exact_only),
        Command::Bounds { input } => bounds(cli, input),
        Command::Dual { input, output } => dual_or_parseval(cli, input, output, "dual"),
        Command::Parseval { input, output } => dual_or_parseval(cli, input, output, "parseval"),
        Command::ComposeRight { input, theta, output } => compose(cli, input, theta, output, true),
        Command::ComposeLeft { input, theta, output } => compose(cli, input, theta, output, false),
        Command::Transport {
            input,
            hom,
            amplify,
            embed,
            require_surjective,
            output,
        } => transport(cli, input, hom.as_deref(), *amplify, *embed, *require_surjective, output),
        Command::Tensor {
            left,
            right,
            waive,
            output,
        } => tensor(cli, left, right, *waive, output),
        Command::Gen {
            blocks,
            module_dim,
            count,
            spectrum,
            output,
        } => generate(cli, blocks, *module_dim, *count, spectrum, output),
    }
}

fn verdict_outcome(c: &FrameCertificate) -> Outcome {
    match c.verdict {
        Verdict::Verified => Outcome::Verified,
        Verdict::Falsified { .. } => Outcome::Falsified,
        Verdict::Undetermined => Outcome::Undetermined,
    }
}

fn checks_outcome(report: &ReportDocument) -> Outcome {
    if report.all_checks_pass() {
        Outcome::Completed
    } else {
        Outcome::Falsified
    }
}

fn singular(command: &str, frame: &OperatorFrame, tol: f64, err: &Error) -> Run {
    let mut report = ReportDocument::new(command, Outcome::Singular).with_spectrum(frame, tol);
    report.message = Some(err.to_string());
    Run::report(report)
}

fn require_bounds(doc: &FrameSpecDocument, what: &str) -> Result<FrameBounds> {
    doc.bounds()?
        .ok_or_else(|| Error::InvalidArgument(format!("{what} needs a document with bounds")))
}

fn check(cli: &Cli, input: &Path, exact_only: bool) -> Result<Run> {
    let doc = load_spec(input)?;
    let s = settings(cli, Some(&doc))?;
    let frame = doc.frame()?;
    let bounds = require_bounds(&doc, "check")?;
    let policy = if exact_only {
        VerifyPolicy::ExactOnly
    } else {
        VerifyPolicy::ExactIfCentral {
            samples: s.samples,
            seed: s.seed,
        }
    };
    let cert = frame.verify_bounds(&bounds, policy, s.tolerance)?;
    let mut report = ReportDocument::new("check", verdict_outcome(&cert)).with_spectrum(&frame, s.tolerance);
    report.certificate = Some(cert);
    report.bounds = Some(bounds);
    Ok(Run::report(report))
}

fn bounds(cli: &Cli, input: &Path) -> Result<Run> {
    let doc = load_spec(input)?;
    let s = settings(cli, Some(&doc))?;
    let frame = doc.frame()?;
    let mut report = ReportDocument::new("bounds", Outcome::Completed).with_spectrum(&frame, s.tolerance);
    let optimal = report.optimal_bounds.clone().expect("spectrum was filled");
    let lower = if optimal.is_frame(s.tolerance) {
        frame
            .frame_operator()
            .inverse(s.tolerance)
            .ok()
            .map(|inv| 1.0 / inv.norms().norm_inf)
    } else {
        None
    };
    let upper = frame.analysis_norms().into_iter().fold(0.0, f64::max).powi(2);
    let scale = 1.0 + optimal.upper.abs();
    report.checks.push(Check::new(
        "upper_bound_from_analysis_norm",
        (upper - optimal.upper).abs(),
        CONSTRUCTION_TOLERANCE * scale,
    ));
    if let Some(l) = lower {
        report.checks.push(Check::new(
            "lower_bound_from_inverse_norm",
            (l - optimal.lower).abs(),
            CONSTRUCTION_TOLERANCE * scale,
        ));
    }
    report.norm_bounds = Some(NormBounds { lower, upper });
    report.outcome = checks_outcome(&report);
    Ok(Run::report(report))
}

fn output_document(frame: &OperatorFrame, bounds: Option<&FrameBounds>, input: &FrameSpecDocument) -> FrameSpecDocument {
    let mut doc = FrameSpecDocument::from_frame(frame, bounds);
    doc.seed = input.seed;
    doc.tolerance = input.tolerance;
    doc
}

fn dual_or_parseval(cli: &Cli, input: &Path, output: &Option<PathBuf>, command: &str) -> Result<Run> {
    let doc = load_spec(input)?;
    let s = settings(cli, Some(&doc))?;
    let frame = doc.frame()?;
    let result = if command == "dual" {
        frame.canonical_dual(s.tolerance)
    } else {
        frame.parseval_normalize(s.tolerance)
    };
    let out = match result {
        Ok(out) => out,
        Err(e @ Error::Singular { .. }) => return Ok(singular(command, &frame, s.tolerance, &e)),
        Err(e) => return Err(e),
    };
    let shape = frame.shape();
    let new_s = out.frame_operator();
    let (name, target, bounds) = if command == "dual" {
        let s_inv = frame.frame_operator().inverse(s.tolerance)?;
        let optimal = frame.optimal_scalar_bounds();
        let scalar = match doc.bounds()? {
            Some(b) => match (b.lower(), b.upper()) {
                (crate::frame::Bound::Scalar(lo), crate::frame::Bound::Scalar(hi)) => Some((*lo, *hi)),
                _ => None,
            },
            None => Some((optimal.lower, optimal.upper)),
        };
        let bounds = scalar.map(|(lo, hi)| FrameBounds::scalar(1.0 / hi, 1.0 / lo)).transpose()?;
        ("dual_frame_operator_is_inverse", s_inv, bounds)
    } else {
        (
            "parseval_frame_operator_is_identity",
            ModuleOperator::identity(shape, frame.dim()),
            Some(FrameBounds::scalar(1.0, 1.0)?),
        )
    };
    let mut report = ReportDocument::new(command, Outcome::Completed).with_spectrum(&out, s.tolerance);
    let residual = new_s.distance(&target)?;
    report
        .checks
        .push(Check::new(name, residual, CONSTRUCTION_TOLERANCE * (1.0 + target.norms().norm_inf)));
    report.bounds = bounds.clone();
    report.outcome = checks_outcome(&report);
    Ok(Run {
        report,
        document: Some(output_document(&out, bounds.as_ref(), &doc)),
        output: output.clone(),
    })
}

fn compose(cli: &Cli, input: &Path, theta: &Path, output: &Option<PathBuf>, right: bool) -> Result<Run> {
    let command = if right { "compose-right" } else { "compose-left" };
    let doc = load_spec(input)?;
    let s = settings(cli, Some(&doc))?;
    let frame = doc.frame()?;
    let theta = OperatorDocument::parse(&read_input(theta)?)?.operator()?;
    let bounds = match doc.bounds()? {
        Some(b) => b,
        None => {
            let optimal = frame.optimal_scalar_bounds();
            if !optimal.is_frame(s.tolerance) {
                let e = Error::Singular {
                    block: 0,
                    min_value: optimal.lower,
                    threshold: s.tolerance,
                };
                return Ok(singular(command, &frame, s.tolerance, &e));
            }
            FrameBounds::scalar(optimal.lower, optimal.upper)?
        }
    };
    if frame.shape() == theta.shape() && frame.dim() == theta.dim() && !theta.is_invertible(s.tolerance) {
        let norms = theta.norms();
        let e = Error::Singular {
            block: 0,
            min_value: norms.min_modulus,
            threshold: theta.invertibility_threshold(s.tolerance),
        };
        return Ok(singular(command, &frame, s.tolerance, &e));
    }
    let comp = if right {
        frame.compose_right(&theta, &bounds, s.tolerance)?
    } else {
        frame.compose_left(&theta, &bounds, s.tolerance)?
    };
    let mut report = ReportDocument::new(command, Outcome::Completed).with_spectrum(&comp.frame, s.tolerance);
    if let (Some(pred), Some(res)) = (&comp.predicted_operator, comp.operator_residual) {
        report.checks.push(Check::new(
            "composite_frame_operator",
            res,
            IDENTITY_TOLERANCE * (1.0 + pred.norms().norm_inf),
        ));
    }
    let optimal = report.optimal_bounds.clone().expect("spectrum was filled");
    let (lo, hi) = comp.envelope;
    report.checks.push(Check::new(
        "optimal_bounds_in_envelope",
        (lo - optimal.lower).max(optimal.upper - hi).max(0.0),
        CONSTRUCTION_TOLERANCE * (1.0 + hi.abs()),
    ));
    let cert = comp.frame.verify_bounds(
        &comp.predicted_bounds,
        VerifyPolicy::ExactIfCentral {
            samples: s.samples,
            seed: s.seed,
        },
        s.tolerance,
    )?;
    let falsified = matches!(cert.verdict, Verdict::Falsified { .. });
    report
        .checks
        .push(Check::new("predicted_bounds_not_falsified", f64::from(u8::from(falsified)), 0.0));
    report.certificate = Some(cert);
    report.envelope = Some([lo, hi]);
    report.bounds = Some(comp.predicted_bounds.clone());
    report.outcome = checks_outcome(&report);
    Ok(Run {
        report,
        document: Some(output_document(&comp.frame, Some(&comp.predicted_bounds), &doc)),
        output: output.clone(),
    })
}

fn transport(
    cli: &Cli,
    input: &Path,
    hom: Option<&Path>,
    amplify: Option<usize>,
    embed: Option<usize>,
    require_surjective: bool,
    output: &Option<PathBuf>,
) -> Result<Run> {
    let doc = load_spec(input)?;
    let s = settings(cli, Some(&doc))?;
    let frame = doc.frame()?;
    let phi = match (hom, amplify, embed) {
        (Some(path), _, _) => HomomorphismDocument::parse(&read_input(path)?)?.homomorphism()?,
        (_, Some(times), _) => StarHomomorphism::amplification(frame.shape(), times)?,
        (_, _, Some(padding)) => StarHomomorphism::block_embedding(frame.shape(), padding)?,
        _ => return Err(Error::InvalidArgument("transport needs --hom, --amplify or --embed".into())),
    };
    let opts = TransportOptions {
        samples: cli.samples.unwrap_or(TRANSPORT_SAMPLES),
        seed: s.seed,
        tol: s.tolerance.max(IDENTITY_TOLERANCE),
        require_surjective,
    };
    let bounds = doc.bounds()?;
    let (target, rep) = frame.transport(&phi, bounds.as_ref(), opts)?;
    let mut report = ReportDocument::new("transport", Outcome::Completed).with_spectrum(&target, s.tolerance);
    report.checks.push(Check {
        name: "transport_identity".into(),
        residual: rep.max_identity_residual,
        tolerance: rep.identity_tolerance,
        passed: rep.identity_holds,
    });
    let mut out_bounds = None;
    if let (Some(lo), Some(hi)) = (&rep.lower_bound, &rep.upper_bound) {
        report.checks.push(Check::new(
            "transported_bounds_not_falsified",
            rep.bound_falsifications as f64,
            0.0,
        ));
        let el = |e: &crate::algebra::AlgebraElement| crate::frame::Bound::Element(e.clone());
        out_bounds = FrameBounds::new(el(lo), el(hi)).ok();
    }
    report.bounds = out_bounds.clone();
    report.transport = Some(rep);
    report.outcome = checks_outcome(&report);
    Ok(Run {
        report,
        document: Some(output_document(&target, out_bounds.as_ref(), &doc)),
        output: output.clone(),
    })
}

fn tensor(cli: &Cli, left: &Path, right: &Path, waive: bool, output: &Option<PathBuf>) -> Result<Run> {
    let (ldoc, rdoc) = (load_spec(left)?, load_spec(right)?);
    let s = settings(cli, None)?;
    let tol_of = |d: &FrameSpecDocument| cli.tolerance.or(d.tolerance).unwrap_or(s.tolerance);
    let (lf, rf) = (ldoc.frame()?, rdoc.frame()?);
    let certs = if waive {
        None
    } else {
        let policy = VerifyPolicy::ExactIfCentral {
            samples: s.samples,
            seed: s.seed,
        };
        let lc = lf.verify_bounds(&require_bounds(&ldoc, "tensor without --waive")?, policy, tol_of(&ldoc))?;
        let rc = rf.verify_bounds(&require_bounds(&rdoc, "tensor without --waive")?, policy, tol_of(&rdoc))?;
        for (side, c, f) in [("left", &lc, &lf), ("right", &rc, &rf)] {
            if !c.is_verified() {
                let mut report = ReportDocument::new("tensor", verdict_outcome(c)).with_spectrum(f, s.tolerance);
                report.message = Some(format!("bounds of the {side} factor are not verified"));
                report.certificate = Some(c.clone());
                return Ok(Run::report(report));
            }
        }
        Some((lc, rc))
    };
    let certification = match &certs {
        Some((lc, rc)) => Certification::Verified(lc, rc),
        None => Certification::Waived,
    };
    let out = frame_tensor(&lf, &rf, certification)?;
    let mut report = ReportDocument::new("tensor", Outcome::Completed).with_spectrum(&out.frame, s.tolerance);
    report.checks.push(Check::new(
        "tensor_frame_operator",
        out.operator_residual,
        IDENTITY_TOLERANCE * (1.0 + out.predicted_operator.norms().norm_inf),
    ));
    let (lb, rb) = (lf.optimal_scalar_bounds(), rf.optimal_scalar_bounds());
    let optimal = report.optimal_bounds.clone().expect("spectrum was filled");
    let (plo, phi) = (lb.lower * rb.lower, lb.upper * rb.upper);
    report.checks.push(Check::new(
        "tensor_optimal_bounds_multiply",
        (optimal.lower - plo).abs().max((optimal.upper - phi).abs()),
        CONSTRUCTION_TOLERANCE * (1.0 + phi.abs()),
    ));
    report.bounds = out.predicted_bounds.clone();
    report.outcome = checks_outcome(&report);
    let mut doc = FrameSpecDocument::from_frame(&out.frame, out.predicted_bounds.as_ref());
    doc.layout = Some(out.layout);
    Ok(Run {
        report,
        document: Some(doc),
        output: output.clone(),
    })
}

fn parse_range(text: &str) -> Result<(f64, f64)> {
    let bad = || Error::InvalidArgument(format!("spectrum `{text}` is not of the form lo:hi"));
    let (lo, hi) = text.split_once(':').ok_or_else(bad)?;
    Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?))
}

fn generate(
    cli: &Cli,
    blocks: &[usize],
    module_dim: usize,
    count: usize,
    spectrum: &str,
    output: &Option<PathBuf>,
) -> Result<Run> {
    let s = settings(cli, None)?;
    let (lo, hi) = parse_range(spectrum)?;
    let shape = AlgebraShape::new(blocks.to_vec())?;
    let frame = OperatorFrame::random(&shape, module_dim, count, lo, hi, s.seed)?;
    let bounds = FrameBounds::scalar(lo, hi)?;
    let mut report = ReportDocument::new("gen", Outcome::Completed).with_spectrum(&frame, s.tolerance);
    let optimal = report.optimal_bounds.clone().expect("spectrum was filled");
    report.checks.push(Check::new(
        "spectrum_in_range",
        (lo - optimal.lower).max(optimal.upper - hi).max(0.0),
        IDENTITY_TOLERANCE * (1.0 + hi),
    ));
    report.bounds = Some(bounds.clone());
    report.outcome = checks_outcome(&report);
    let mut doc = FrameSpecDocument::from_frame(&frame, Some(&bounds));
    doc.seed = Some(s.seed);
    Ok(Run {
        report,
        document: Some(doc),
        output: output.clone(),
    })
}
