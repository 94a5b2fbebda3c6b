//! JSON documents read and written by the command-line tool.
//!
//! Complex numbers are `[re, im]`, matrices are row-major lists of rows. Every
//! document type satisfies `parse(print(doc)) == doc`.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraShape;
use crate::error::{Error, Result};
use crate::frame::{
    Bound, FrameBounds, FrameCertificate, OperatorFrame, ScalarBounds, TransportReport,
};
use crate::hom::{StarHomomorphism, TargetBlock};
use crate::module::ModuleOperator;
use crate::tensor::TensorLayout;
use crate::wire::{ElementWire, MatrixWire, OperatorWire};

pub const FORMAT_VERSION: u32 = 1;

/// Parses JSON into `T`, reporting failures with a 1-based line and column.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        let full = e.to_string();
        let message = match full.rsplit_once(" at line ") {
            Some((m, _)) if e.line() > 0 => m.to_string(),
            _ => full,
        };
        Error::Parse {
            line: e.line(),
            column: e.column(),
            message,
        }
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("document types serialize infallibly");
    s.push('\n');
    s
}

fn check_version(found: u32) -> Result<()> {
    if found != FORMAT_VERSION {
        return Err(Error::InvalidArgument(format!(
            "unsupported format_version {found}, expected {FORMAT_VERSION}"
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum BoundsSpec {
    Scalar([f64; 2]),
    Element { lower: ElementWire, upper: ElementWire },
}

impl BoundsSpec {
    pub fn from_bounds(b: &FrameBounds, shape: &AlgebraShape) -> Self {
        match (b.lower(), b.upper()) {
            (Bound::Scalar(lo), Bound::Scalar(hi)) => BoundsSpec::Scalar([*lo, *hi]),
            (lo, hi) => BoundsSpec::Element {
                lower: (&lo.to_element(shape)).into(),
                upper: (&hi.to_element(shape)).into(),
            },
        }
    }

    pub fn to_bounds(&self, shape: &AlgebraShape) -> Result<FrameBounds> {
        match self {
            BoundsSpec::Scalar([lo, hi]) => FrameBounds::scalar(*lo, *hi),
            BoundsSpec::Element { lower, upper } => FrameBounds::new(
                Bound::Element(lower.to_element_of(shape)?),
                Bound::Element(upper.to_element_of(shape)?),
            ),
        }
    }
}

/// A frame on `A^d` with optional bounds and run settings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameSpecDocument {
    pub format_version: u32,
    /// Block sizes `n_k`.
    pub algebra: Vec<usize>,
    pub module_dim: usize,
    pub operators: Vec<OperatorWire>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layout: Option<TensorLayout>,
}

fn at_operator(i: usize, err: Error) -> Error {
    match err {
        Error::ShapeMismatch { expected, found } => Error::ShapeMismatch {
            expected: format!("operator {i}, {expected}"),
            found,
        },
        other => Error::InvalidArgument(format!("operator {i}: {other}")),
    }
}

impl FrameSpecDocument {
    pub fn from_frame(frame: &OperatorFrame, bounds: Option<&FrameBounds>) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            algebra: frame.shape().block_dims().to_vec(),
            module_dim: frame.dim(),
            operators: frame.operators().iter().map(OperatorWire::from).collect(),
            bounds: bounds.map(|b| BoundsSpec::from_bounds(b, frame.shape())),
            seed: None,
            tolerance: None,
            layout: None,
        }
    }

    /// Parses and validates the whole document, so a successful parse always
    /// yields a loadable frame.
    pub fn parse(text: &str) -> Result<Self> {
        let doc: Self = parse_json(text)?;
        doc.frame()?;
        doc.bounds()?;
        if let Some(l) = &doc.layout {
            l.product_shape().ensure_same(&doc.shape()?)?;
            if l.product_dim() != doc.module_dim {
                return Err(Error::shape(l.product_dim(), doc.module_dim));
            }
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn shape(&self) -> Result<AlgebraShape> {
        check_version(self.format_version)?;
        AlgebraShape::new(self.algebra.clone())
    }

    pub fn frame(&self) -> Result<OperatorFrame> {
        let shape = self.shape()?;
        if self.module_dim == 0 {
            return Err(Error::InvalidArgument("module_dim must be positive".into()));
        }
        let operators = self
            .operators
            .iter()
            .enumerate()
            .map(|(i, w)| w.to_operator(&shape, self.module_dim).map_err(|e| at_operator(i, e)))
            .collect::<Result<Vec<_>>>()?;
        OperatorFrame::new(operators)
    }

    pub fn bounds(&self) -> Result<Option<FrameBounds>> {
        let shape = self.shape()?;
        self.bounds.as_ref().map(|b| b.to_bounds(&shape)).transpose()
    }
}

/// A single module map θ on `A^d`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorDocument {
    pub format_version: u32,
    pub algebra: Vec<usize>,
    pub module_dim: usize,
    pub operator: OperatorWire,
}

impl OperatorDocument {
    pub fn from_operator(t: &ModuleOperator) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            algebra: t.shape().block_dims().to_vec(),
            module_dim: t.dim(),
            operator: t.into(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: Self = parse_json(text)?;
        doc.operator()?;
        Ok(doc)
    }

    pub fn operator(&self) -> Result<ModuleOperator> {
        check_version(self.format_version)?;
        self.operator.to_operator(&AlgebraShape::new(self.algebra.clone())?, self.module_dim)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetBlockDocument {
    pub multiplicities: Vec<usize>,
    pub unitary: MatrixWire,
}

/// A *-homomorphism in normal form: target block `j` is
/// `U_j (⊕_k a_k^{⊕m_jk} ⊕ 0) U_j*`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomomorphismDocument {
    pub format_version: u32,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub blocks: Vec<TargetBlockDocument>,
}

impl HomomorphismDocument {
    pub fn from_homomorphism(phi: &StarHomomorphism) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            source: phi.source_shape().block_dims().to_vec(),
            target: phi.target_shape().block_dims().to_vec(),
            blocks: phi
                .target_blocks()
                .iter()
                .map(|b| TargetBlockDocument {
                    multiplicities: b.multiplicities.clone(),
                    unitary: (&b.unitary).into(),
                })
                .collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: Self = parse_json(text)?;
        doc.homomorphism()?;
        Ok(doc)
    }

    pub fn homomorphism(&self) -> Result<StarHomomorphism> {
        check_version(self.format_version)?;
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                Ok(TargetBlock {
                    multiplicities: b.multiplicities.clone(),
                    unitary: b.unitary.to_matrix()?,
                })
            })
            .collect::<Result<_>>()?;
        StarHomomorphism::new(
            AlgebraShape::new(self.source.clone())?,
            AlgebraShape::new(self.target.clone())?,
            blocks,
        )
    }
}

/// How a command ended; determines the process exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// Bounds verified exactly.
    Verified,
    /// A construction or summary whose embedded checks all passed.
    Completed,
    /// A bound was falsified or an embedded check failed.
    Falsified,
    Undetermined,
    /// An inverse or inverse square root was requested of a singular operator.
    Singular,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Verified | Outcome::Completed => 0,
            Outcome::Falsified => 2,
            Outcome::Undetermined => 3,
            Outcome::Singular => 4,
        }
    }
}

/// Smallest and largest eigenvalue of one realization block of `S`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockSpectrum {
    pub block: usize,
    pub min: f64,
    pub max: f64,
}

/// `‖S⁻¹‖^{-1}` and `p̂(R)²`, computed independently of the spectrum of `S`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormBounds {
    pub lower: Option<f64>,
    pub upper: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    pub fn new(name: &str, residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            residual,
            tolerance,
            passed: residual <= tolerance,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool_version: String,
    pub command: String,
    pub outcome: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<FrameCertificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optimal_bounds: Option<ScalarBounds>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm_bounds: Option<NormBounds>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub spectrum: Vec<BlockSpectrum>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub is_operator_frame: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<FrameBounds>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub envelope: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transport: Option<TransportReport>,
    pub elapsed_ms: f64,
}

impl ReportDocument {
    pub fn new(command: &str, outcome: Outcome) -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            outcome,
            message: None,
            certificate: None,
            optimal_bounds: None,
            norm_bounds: None,
            spectrum: Vec::new(),
            is_operator_frame: None,
            checks: Vec::new(),
            bounds: None,
            envelope: None,
            transport: None,
            elapsed_ms: 0.0,
        }
    }

    /// Fills the spectral summary of the frame operator of `frame`.
    pub fn with_spectrum(mut self, frame: &OperatorFrame, tol: f64) -> Self {
        let b = frame.optimal_scalar_bounds();
        self.spectrum = b
            .per_block
            .iter()
            .enumerate()
            .map(|(block, &(min, max))| BlockSpectrum { block, min, max })
            .collect();
        self.is_operator_frame = Some(b.is_frame(tol));
        self.optimal_bounds = Some(b);
        self
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_json(text)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Line-oriented rendering for `--format text`.
    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\noutcome: {:?}\n", self.command, self.outcome);
        if let Some(m) = &self.message {
            out += &format!("message: {m}\n");
        }
        if let Some(c) = &self.certificate {
            out += &format!("verdict: {}\n", verdict_text(c));
        }
        if let Some(b) = &self.optimal_bounds {
            out += &format!("optimal bounds: [{:.12e}, {:.12e}]\n", b.lower, b.upper);
        }
        for s in &self.spectrum {
            out += &format!("  block {}: lambda_min {:.12e}, lambda_max {:.12e}\n", s.block, s.min, s.max);
        }
        if let Some(c) = &self.norm_bounds {
            let lower = c.lower.map_or("none".to_string(), |l| format!("{l:.12e}"));
            out += &format!("norm bounds: [{lower}, {:.12e}]\n", c.upper);
        }
        if let Some(f) = self.is_operator_frame {
            out += &format!("operator frame: {f}\n");
        }
        if let Some([lo, hi]) = self.envelope {
            out += &format!("envelope: [{lo:.12e}, {hi:.12e}]\n");
        }
        if let Some(t) = &self.transport {
            out += &format!(
                "transport: surjective {}, identity residual {:.3e}, bound falsifications {}/{}\n",
                t.surjective, t.max_identity_residual, t.bound_falsifications, t.bound_checks
            );
        }
        for c in &self.checks {
            let mark = if c.passed { "ok" } else { "FAILED" };
            out += &format!("check {}: {mark} (residual {:.3e}, tolerance {:.3e})\n", c.name, c.residual, c.tolerance);
        }
        out
    }
}

fn verdict_text(c: &FrameCertificate) -> String {
    use crate::frame::Verdict;
    match &c.verdict {
        Verdict::Verified => "verified".into(),
        Verdict::Undetermined => "undetermined".into(),
        Verdict::Falsified { side, block, .. } => format!("falsified ({side:?} bound, block {block})"),
    }
}
