//! Classification of link surgeries on `S²×S²`, Seiberg–Witten product
//! formulas, and the Scharlemann manifolds of the (−1)-surgered trefoil.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forms::{self, FormError, IntForm, ManifoldName};
use crate::groups::{self, GroupError, Word};
use crate::laurent::{LaurentError, LaurentPoly};
use crate::linkdiag::LinkDiagram;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("expected a knot, got {0} components")]
    NotAKnot(usize),
    #[error("variable mismatch: {0}")]
    VariableMismatch(#[from] LaurentError),
    #[error("expected {expected} factors, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("framing twist must be 0 or 1, got {0}")]
    BadEpsilon(u8),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Form(#[from] FormError),
}

pub type Result<T> = std::result::Result<T, SurgeryError>;

/// The result of surgery on `S²×S²` along an `n`-component link: the spin
/// sum `#^{2n−1} S²×S²` when every linking parity vanishes, otherwise
/// `#^{2n−1} ℂP² # #^{2n−1} ℂP̄²`.
pub fn classify_link_surgery(d: &LinkDiagram) -> Result<ManifoldName> {
    let n = d.num_components() as u64;
    if n == 0 {
        return Err(SurgeryError::InvalidDiagram("empty link".to_string()));
    }
    Ok(if d.parity_vector().is_zero() {
        ManifoldName::spin(2 * n - 1)
    } else {
        ManifoldName::odd(2 * n - 1, 2 * n - 1)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogTransform {
    pub multiplicity: i64,
    pub auxiliary: i64,
    pub direction: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurgeryDescriptor {
    knot: LinkDiagram,
    pub aux_multiplicity: i64,
    pub log_transform: Option<LogTransform>,
}

impl SurgeryDescriptor {
    pub fn new(knot: LinkDiagram, aux_multiplicity: i64) -> Result<Self> {
        if knot.num_components() != 1 {
            return Err(SurgeryError::NotAKnot(knot.num_components()));
        }
        Ok(SurgeryDescriptor { knot, aux_multiplicity, log_transform: None })
    }

    pub fn with_log_transform(mut self, lt: LogTransform) -> Self {
        self.log_transform = Some(lt);
        self
    }

    pub fn knot(&self) -> &LinkDiagram {
        &self.knot
    }
}

/// The twist along the auxiliary multiplicity does not change the surgery.
pub fn canonicalize_descriptor(s: &SurgeryDescriptor) -> SurgeryDescriptor {
    SurgeryDescriptor { aux_multiplicity: 0, ..s.clone() }
}

pub fn classify_knot_surgery(s: &SurgeryDescriptor) -> Result<ManifoldName> {
    classify_link_surgery(canonicalize_descriptor(s).knot())
}

/// A Seiberg–Witten invariant written as a Laurent polynomial in fibre classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SWValue(pub LaurentPoly);

impl SWValue {
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Self {
        SWValue(LaurentPoly::zero(vars))
    }

    pub fn one<S: AsRef<str>>(vars: &[S]) -> Self {
        SWValue(LaurentPoly::one(vars))
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for SWValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `SW_{X_K} = SW_X · Δ_K`.
pub fn knot_surgery_sw(base: &SWValue, delta: &LaurentPoly) -> Result<SWValue> {
    Ok(SWValue(base.0.mul(delta)?))
}

/// `Δ_L(t₁,…,tₙ) · Π SW_i`. A factor over one variable is read in `t_i`.
pub fn link_surgery_sw(delta: &LaurentPoly, factors: &[SWValue]) -> Result<SWValue> {
    let n = delta.num_vars();
    if factors.len() != n {
        return Err(SurgeryError::ArityMismatch { expected: n, got: factors.len() });
    }
    let vars = delta.variables().to_vec();
    let mut acc = delta.clone();
    for (i, f) in factors.iter().enumerate() {
        let embedded = if f.0.variables() == vars.as_slice() {
            f.0.clone()
        } else if f.0.num_vars() == 1 {
            let terms = f.0.terms().map(|(e, c)| {
                let mut exps = vec![0; n];
                exps[i] = e[0];
                (exps, c.clone())
            });
            LaurentPoly::from_terms(&vars, terms)?
        } else {
            return Err(LaurentError::VariableMismatch {
                left: vars.clone(),
                right: f.0.variables().to_vec(),
            }
            .into());
        };
        acc = acc.mul(&embedded)?;
    }
    Ok(SWValue(acc))
}

/// `⟨1⟩ ⊕ 9⟨−1⟩ ⊕ H ⊕ H`, the form of `E(1) # 2 S²×S²`.
pub fn e1_fibersum_form() -> IntForm {
    let mut diag = vec![1];
    diag.extend([-1; 9]);
    IntForm::diagonal(&diag).direct_sum(&IntForm::hyperbolic_sum(2))
}

pub fn e1_fibersum_check() -> ManifoldName {
    forms::name_standard(&e1_fibersum_form()).expect("unimodular odd indefinite form")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Verdict {
    Known { manifold: ManifoldName },
    Open,
}

impl Verdict {
    pub fn is_open(&self) -> bool {
        matches!(self, Verdict::Open)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Known { manifold } => write!(f, "known: {manifold}"),
            Verdict::Open => f.write_str("open"),
        }
    }
}

pub fn standard_scharlemann() -> ManifoldName {
    ManifoldName { s2xs2: 1, s3xs1: 1, ..ManifoldName::default() }
}

pub fn odd_scharlemann() -> ManifoldName {
    ManifoldName { cp2: 1, cp2bar: 1, s3xs1: 1, ..ManifoldName::default() }
}

/// Known diffeomorphism types by (framing twist, class label). The meridian
/// is the class of `x`.
const KNOWN_VERDICTS: [(u8, &str, bool); 9] = [
    (1, "x", true),
    (1, "xy", true),
    (0, "x", false),
    (0, "xy", false),
    (1, "x^2", false),
    (0, "x^3", false),
    (1, "x^4", false),
    (0, "xyx", false),
    (1, "(xy)^2", false),
];

/// Label of the conjugacy class containing `w` in the binary icosahedral group.
pub fn trefoil_class_label(w: &Word) -> Result<&'static str> {
    let g = groups::binary_icosahedral_table();
    let class = g.class_index(g.evaluate_word(w)?)?;
    for (label, rep) in groups::BINARY_ICOSAHEDRAL_CLASS_WORDS {
        if g.class_index(g.evaluate(rep)?)? == class {
            return Ok(label);
        }
    }
    unreachable!("every class has a listed representative")
}

fn verdict_for_label(epsilon: u8, label: &str) -> Verdict {
    KNOWN_VERDICTS
        .iter()
        .find(|(e, l, _)| *e == epsilon && *l == label)
        .map(|&(_, _, standard)| Verdict::Known {
            manifold: if standard { standard_scharlemann() } else { odd_scharlemann() },
        })
        .unwrap_or(Verdict::Open)
}

/// Diffeomorphism type of the Scharlemann manifold `B^ε(w)` over the
/// (−1)-surgered trefoil, when known.
pub fn scharlemann_verdict(epsilon: u8, w: &Word) -> Result<Verdict> {
    if epsilon > 1 {
        return Err(SurgeryError::BadEpsilon(epsilon));
    }
    Ok(verdict_for_label(epsilon, trefoil_class_label(w)?))
}

/// Parses `w` over the generators `x, y` and returns its verdict.
pub fn scharlemann_verdict_text(epsilon: u8, w: &str) -> Result<Verdict> {
    let g = groups::binary_icosahedral_table();
    scharlemann_verdict(epsilon, &g.presentation().word(w)?)
}

/// Every (ε, class) pair with its verdict, classes in table order.
pub fn scharlemann_table() -> Vec<(u8, &'static str, Verdict)> {
    let mut out = Vec::new();
    for epsilon in 0..=1 {
        for (label, _) in groups::BINARY_ICOSAHEDRAL_CLASS_WORDS {
            out.push((epsilon, label, verdict_for_label(epsilon, label)));
        }
    }
    out
}
