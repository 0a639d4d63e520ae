//! JSON formats for rings, matrices, statements, tilings, reports and
//! certificates.
//!
//! Field elements are strings (`"3"`, `"-1/4"`). Algebra elements are lists of
//! coefficient strings on the canonical basis; a polynomial string in the
//! algebra's variables is accepted on input as well.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, AlgebraPresentation, RewriteRule};
use crate::field::{BaseField, FieldError, Scalar};
use crate::geometry::{GeometryError, PointMatrix, SymbolicMatrix, Vec3};
use crate::poly::parse_poly;
use crate::ring::{Ring, RingElement, RingError};
use crate::statement::{IncidenceStatement, InstanceReport, Pair, Triple};
use crate::tiling::{CancellationCertificate, LabelMap, Term, TileEquation, Tiling};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("JSON error at line {}, column {}: {source}", .source.line(), .source.column())]
    Json {
        #[from]
        source: serde_json::Error,
    },
    #[error("{context}: {message}")]
    Invalid { context: String, message: String },
}

fn invalid(context: impl Into<String>, message: impl ToString) -> FormatError {
    FormatError::Invalid { context: context.into(), message: message.to_string() }
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum FieldDescriptor {
    Q,
    Fp { p: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleDescriptor {
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum RingDescriptor {
    Q,
    Fp {
        p: u64,
    },
    #[serde(rename = "algebra")]
    Algebra {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        base: Option<FieldDescriptor>,
        vars: Vec<String>,
        rules: Vec<RuleDescriptor>,
    },
}

impl FieldDescriptor {
    pub fn of(f: BaseField) -> Self {
        match f {
            BaseField::Rationals => FieldDescriptor::Q,
            BaseField::Prime(p) => FieldDescriptor::Fp { p },
        }
    }

    pub fn to_field(&self) -> Result<BaseField, FieldError> {
        match self {
            FieldDescriptor::Q => Ok(BaseField::Rationals),
            FieldDescriptor::Fp { p } => BaseField::prime(*p),
        }
    }
}

impl RingDescriptor {
    /// Describe `ring`. Algebras given only by structure constants have no
    /// rule presentation and cannot be described.
    pub fn of(ring: &Ring) -> Result<Self, FormatError> {
        Ok(match ring {
            Ring::Rationals => RingDescriptor::Q,
            Ring::Prime(p) => RingDescriptor::Fp { p: *p },
            Ring::Algebra(a) => {
                if a.rules().is_empty() && a.dimension() > 1 {
                    return Err(invalid("ring", "algebra has no rewrite-rule presentation"));
                }
                let base = match a.base() {
                    BaseField::Rationals => None,
                    f => Some(FieldDescriptor::of(f)),
                };
                RingDescriptor::Algebra {
                    base,
                    vars: a.vars().to_vec(),
                    rules: a
                        .rules()
                        .iter()
                        .map(|r| RuleDescriptor { lhs: r.lhs_text(), rhs: r.rhs.to_string() })
                        .collect(),
                }
            }
        })
    }

    pub fn to_ring(&self) -> Result<Ring, FormatError> {
        match self {
            RingDescriptor::Q => Ok(Ring::Rationals),
            RingDescriptor::Fp { p } => Ring::prime(*p).map_err(|e| invalid("ring", e)),
            RingDescriptor::Algebra { base, vars, rules } => {
                let base = base
                    .as_ref()
                    .map_or(Ok(BaseField::Rationals), FieldDescriptor::to_field)
                    .map_err(|e| invalid("ring.base", e))?;
                let rules = rules
                    .iter()
                    .enumerate()
                    .map(|(i, r)| {
                        RewriteRule::parse(base, &r.lhs, &r.rhs).map_err(|e| invalid(format!("ring.rules[{i}]"), e))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let alg = AlgebraPresentation::from_rules(base, vars, rules)
                    .map_err(|e: AlgebraError| invalid("ring", e))?;
                Ok(alg.into())
            }
        }
    }
}

pub fn ring_to_json(ring: &Ring) -> Result<String, FormatError> {
    Ok(pretty(&RingDescriptor::of(ring)?))
}

pub fn ring_from_json(text: &str) -> Result<Ring, FormatError> {
    serde_json::from_str::<RingDescriptor>(text)?.to_ring()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRepr {
    Int(i64),
    Text(String),
    Coeffs(Vec<String>),
}

fn scalar_text(s: &Scalar) -> String {
    s.to_string()
}

pub fn element_repr(e: &RingElement) -> ElementRepr {
    if e.ring().is_field() {
        ElementRepr::Text(scalar_text(&e.coefficients()[0]))
    } else {
        ElementRepr::Coeffs(e.coefficients().iter().map(scalar_text).collect())
    }
}

pub fn element_from_repr(ring: &Ring, repr: &ElementRepr) -> Result<RingElement, RingError> {
    match repr {
        ElementRepr::Int(n) => Ok(ring.from_i64(*n)),
        ElementRepr::Text(t) => ring.parse_element(t),
        ElementRepr::Coeffs(cs) => {
            let base = ring.base_field();
            let coeffs = cs
                .iter()
                .map(|c| base.parse_scalar(c))
                .collect::<Result<Vec<_>, _>>()?;
            ring.from_coeffs(coeffs)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRepr {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingDescriptor>,
    pub columns: Vec<[ElementRepr; 3]>,
}

pub fn matrix_to_json(m: &PointMatrix) -> Result<String, FormatError> {
    Ok(pretty(&MatrixRepr {
        ring: Some(RingDescriptor::of(m.ring())?),
        columns: m.columns().iter().map(|c| c.entries().clone().map(|e| element_repr(&e))).collect(),
    }))
}

/// Parse a matrix; `fallback` supplies the ring when the file has none.
pub fn matrix_from_json(text: &str, fallback: Option<&Ring>) -> Result<PointMatrix, FormatError> {
    let repr: MatrixRepr = serde_json::from_str(text)?;
    let ring = match (&repr.ring, fallback) {
        (Some(d), _) => d.to_ring()?,
        (None, Some(r)) => r.clone(),
        (None, None) => return Err(invalid("matrix", "no ring given in the file or on the command line")),
    };
    let columns = repr
        .columns
        .iter()
        .enumerate()
        .map(|(i, col)| {
            let mut entries = Vec::with_capacity(3);
            for (r, e) in col.iter().enumerate() {
                let context = format!("columns[{i}][{r}]");
                entries.push(element_from_repr(&ring, e).map_err(|err| invalid(context, err))?);
            }
            let [a, b, c]: [RingElement; 3] = entries.try_into().expect("three entries");
            Vec3::new(a, b, c).map_err(|e| invalid(format!("columns[{i}]"), e))
        })
        .collect::<Result<Vec<_>, _>>()?;
    PointMatrix::new(ring, columns).map_err(|e: GeometryError| invalid("matrix", e))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PairsRepr {
    Keyword(String),
    List(Vec<Pair>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatementRepr {
    pub n: usize,
    pub nondeg_pairs: PairsRepr,
    #[serde(default)]
    pub nondeg_triples: Vec<Triple>,
    #[serde(default)]
    pub collinear: Vec<Triple>,
    pub conclusion: Triple,
}

pub fn statement_repr(s: &IncidenceStatement) -> StatementRepr {
    StatementRepr {
        n: s.n,
        nondeg_pairs: if s.has_all_pairs() {
            PairsRepr::Keyword("all".into())
        } else {
            PairsRepr::List(s.nondeg_pairs.iter().copied().collect())
        },
        nondeg_triples: s.nondeg_triples.iter().copied().collect(),
        collinear: s.collinear.iter().copied().collect(),
        conclusion: s.conclusion,
    }
}

pub fn statement_to_json(s: &IncidenceStatement) -> String {
    pretty(&statement_repr(s))
}

/// Parse a statement. Well-formedness is checked separately.
pub fn statement_from_json(text: &str) -> Result<IncidenceStatement, FormatError> {
    let r: StatementRepr = serde_json::from_str(text)?;
    let pairs = match r.nondeg_pairs {
        PairsRepr::Keyword(k) if k == "all" => crate::statement::all_pairs(r.n).into_iter().collect(),
        PairsRepr::Keyword(k) => return Err(invalid("nondeg_pairs", format!("expected \"all\" or a list, got {k:?}"))),
        PairsRepr::List(l) => l,
    };
    Ok(IncidenceStatement::new(r.n, pairs, r.nondeg_triples, r.collinear, r.conclusion))
}

pub fn tiling_to_json(t: &Tiling) -> String {
    pretty(t)
}

pub fn tiling_from_json(text: &str) -> Result<Tiling, FormatError> {
    Ok(serde_json::from_str(text)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicRepr {
    pub field: FieldDescriptor,
    pub columns: Vec<[String; 3]>,
}

pub fn symbolic_to_json(m: &SymbolicMatrix) -> String {
    pretty(&SymbolicRepr {
        field: FieldDescriptor::of(m.field()),
        columns: m.columns().iter().map(|c| c.clone().map(|p| p.to_string())).collect(),
    })
}

pub fn symbolic_from_json(text: &str) -> Result<SymbolicMatrix, FormatError> {
    let r: SymbolicRepr = serde_json::from_str(text)?;
    let field = r.field.to_field().map_err(|e| invalid("field", e))?;
    let mut columns = Vec::with_capacity(r.columns.len());
    for (i, col) in r.columns.iter().enumerate() {
        let mut entries = Vec::with_capacity(3);
        for (k, e) in col.iter().enumerate() {
            entries.push(parse_poly(e, field).map_err(|err| invalid(format!("columns[{i}][{k}]"), err))?);
        }
        columns.push(entries.try_into().expect("three entries"));
    }
    Ok(SymbolicMatrix::from_columns(field, columns))
}

#[derive(Debug, Clone, Serialize)]
pub struct ColumnCheck {
    pub column: usize,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairCheck {
    pub pair: Pair,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TripleCheck {
    pub triple: Triple,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CollinearCheck {
    pub triple: Triple,
    pub ok: bool,
    pub value: ElementRepr,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportRepr {
    pub verdict: String,
    pub columns: Vec<ColumnCheck>,
    pub pairs: Vec<PairCheck>,
    pub triples: Vec<TripleCheck>,
    pub collinear: Vec<CollinearCheck>,
    pub conclusion: Triple,
    pub conclusion_value: ElementRepr,
    pub conclusion_text: String,
}

pub fn report_repr(r: &InstanceReport) -> ReportRepr {
    ReportRepr {
        verdict: r.verdict.to_string(),
        columns: r.column_checks.iter().map(|&(column, ok)| ColumnCheck { column, ok }).collect(),
        pairs: r.pair_checks.iter().map(|&(pair, ok)| PairCheck { pair, ok }).collect(),
        triples: r.triple_unit_checks.iter().map(|&(triple, ok)| TripleCheck { triple, ok }).collect(),
        collinear: r
            .collinear_checks
            .iter()
            .map(|(triple, v)| CollinearCheck { triple: *triple, ok: v.is_zero(), value: element_repr(v) })
            .collect(),
        conclusion: r.conclusion,
        conclusion_value: element_repr(&r.conclusion_value),
        conclusion_text: r.conclusion_value.to_string(),
    }
}

pub fn report_to_json(r: &InstanceReport) -> String {
    pretty(&report_repr(r))
}

#[derive(Debug, Clone, Serialize)]
pub struct EquationRepr {
    pub tile: usize,
    pub left: [String; 2],
    pub right: [String; 2],
    pub automatic: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairingRepr {
    pub term: String,
    pub edge: [String; 2],
    pub left_tile: usize,
    pub right_tile: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateRepr {
    pub equations: Vec<EquationRepr>,
    pub pairing: Vec<PairingRepr>,
    pub residual: ResidualRepr,
    pub conclusion: EquationRepr,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResidualRepr {
    pub left: Vec<String>,
    pub right: Vec<String>,
}

fn terms(ts: &[Term]) -> Vec<String> {
    ts.iter().map(ToString::to_string).collect()
}

fn equation_repr(e: &TileEquation) -> EquationRepr {
    EquationRepr {
        tile: e.tile,
        left: e.left.clone().map(|t| t.to_string()),
        right: e.right.clone().map(|t| t.to_string()),
        automatic: e.automatic,
    }
}

pub fn certificate_to_json(c: &CancellationCertificate) -> String {
    pretty(&CertificateRepr {
        equations: c.equations.iter().map(equation_repr).collect(),
        pairing: c
            .pairing
            .iter()
            .map(|p| PairingRepr {
                term: p.term.to_string(),
                edge: [p.black.clone(), p.white.clone()],
                left_tile: p.left_tile,
                right_tile: p.right_tile,
            })
            .collect(),
        residual: ResidualRepr { left: terms(&c.residual_left), right: terms(&c.residual_right) },
        conclusion: equation_repr(&c.conclusion),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratedRepr {
    pub labels: Vec<String>,
    pub statement: StatementRepr,
}

/// A generated statement with its labels, `labels[i - 1]` naming index `i`.
pub fn generated_to_json(s: &IncidenceStatement, map: &LabelMap) -> String {
    pretty(&GeneratedRepr {
        labels: map.elements.iter().map(ToString::to_string).collect(),
        statement: statement_repr(s),
    })
}

/// Values for the variables of `ring` given as `name=value` pairs.
pub fn parse_assignment(ring: &Ring, pairs: &[(String, String)]) -> Result<HashMap<String, RingElement>, RingError> {
    pairs
        .iter()
        .map(|(k, v)| Ok((k.clone(), ring.parse_element(v)?)))
        .collect()
}
