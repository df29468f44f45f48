//! Evaluation of pairings against connected sums.
//!
//! A pairing table records, for each colored grading `(q, t)`, the value a
//! named cohomology class takes on admissible monomials of that grading's
//! quotient. Pairing a class `beta` on the `(Q, T)` quotient against a
//! connected sum is then a matter of bookkeeping: split `beta` through the
//! [`coproduct`](crate::coproduct::coproduct_element), look up each tensor
//! factor against the corresponding summand's table, and add up the
//! products. [`eval_connect_sum`] does exactly that and returns the full
//! term-by-term audit along with the value.
//!
//! [`eval_bracket`] evaluates the pairing of a class against a bracket
//! (commutator) of cycles. In odd ambient dimension every quotient's
//! cohomology is concentrated in degrees of one parity, which forces the
//! bracket pairing to vanish; the returned certificate exhibits the parity
//! tables that justify the zero.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::coproduct::{coproduct_element, ColoredGrading, Split};
use crate::error::{Error, Result};
use crate::expr::parse_monomial_key;
use crate::ring::{quotient_cohomology_dims, Element, Monomial, RingParams};
use crate::scalar::{Coefficients, Scalar};

/// A named cohomology class on a knot-space factor, optionally carrying its
/// degree (written `name@degree`). The degree is only needed when degree
/// bookkeeping is requested at evaluation time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassLabel {
    pub name: String,
    pub degree: Option<i64>,
}

impl ClassLabel {
    /// Parse `"v"` or `"v@3"`.
    pub fn parse(src: &str) -> Result<ClassLabel> {
        let mut parts = src.split('@');
        let name = parts.next().unwrap_or("").trim();
        if name.is_empty() {
            return Err(Error::InvalidLabel(src.to_string()));
        }
        let degree = match parts.next() {
            None => None,
            Some(d) => Some(
                d.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidLabel(src.to_string()))?,
            ),
        };
        if parts.next().is_some() {
            return Err(Error::InvalidLabel(src.to_string()));
        }
        Ok(ClassLabel {
            name: name.to_string(),
            degree,
        })
    }
}

impl std::fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.degree {
            Some(d) => write!(f, "{}@{}", self.name, d),
            None => write!(f, "{}", self.name),
        }
    }
}

fn entry_key_string(q: usize, t: usize, m: &Monomial, class: &str) -> String {
    format!("(q={q}, t={t}, {m}, {class})")
}

/// Values of named classes on admissible monomials, indexed by colored
/// grading. Entries given on non-admissible words are rewritten to normal
/// form first, so `w(2,1) -> 5` and `w(1,2) -> -5` state the same fact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingTable {
    n: usize,
    coefficients: Coefficients,
    entries: BTreeMap<(usize, usize, Monomial, String), Scalar>,
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    q: usize,
    t: usize,
    monomial: String,
    class: String,
    value: serde_json::Value,
}

impl PairingTable {
    pub fn new(n: usize, coefficients: Coefficients) -> Result<PairingTable> {
        // Validates n and the modulus the same way ring construction does.
        RingParams::new(n, 0, coefficients)?;
        Ok(PairingTable {
            n,
            coefficients,
            entries: BTreeMap::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Load a table from a JSON array of records
    /// `{"q": .., "t": .., "monomial": "w(1,2)", "class": "a1", "value": ..}`
    /// where `value` is an integer or a string like `"3/2"`.
    pub fn load_json(n: usize, coefficients: Coefficients, src: &str) -> Result<PairingTable> {
        let raw: Vec<RawEntry> =
            serde_json::from_str(src).map_err(|e| Error::TableFormat(e.to_string()))?;
        let mut table = PairingTable::new(n, coefficients)?;
        for (index, entry) in raw.into_iter().enumerate() {
            let at = |e: Error| Error::TableEntry {
                index,
                message: e.to_string(),
            };
            let value = match &entry.value {
                serde_json::Value::Number(num) => {
                    if let Some(v) = num.as_i64() {
                        crate::scalar::int(v)
                    } else {
                        return Err(Error::TableEntry {
                            index,
                            message: format!(
                                "value {num} is not an integer; write large or \
                                 fractional values as strings"
                            ),
                        });
                    }
                }
                serde_json::Value::String(s) => {
                    crate::scalar::parse_scalar(s).map_err(at)?
                }
                other => {
                    return Err(Error::TableEntry {
                        index,
                        message: format!("value must be an integer or a string, got {other}"),
                    })
                }
            };
            table
                .insert_expr(entry.q, entry.t, &entry.monomial, &entry.class, value)
                .map_err(|e| match e {
                    conflict @ Error::ConflictingEntry { .. } => conflict,
                    e => at(e),
                })?;
        }
        Ok(table)
    }

    /// Record `class(expr) = value` for the grading `(q, t)`; `expr` must be
    /// a single monomial up to sign and scale.
    pub fn insert_expr(
        &mut self,
        q: usize,
        t: usize,
        expr: &str,
        class: &str,
        value: Scalar,
    ) -> Result<()> {
        let params = RingParams::new(self.n, q + t, self.coefficients)?;
        let (monomial, c) = parse_monomial_key(expr, &params)?;
        let stored = self.coefficients.normalize(value / c)?;
        let key = (q, t, monomial, class.to_string());
        if let Some(prev) = self.entries.get(&key) {
            if *prev != stored {
                return Err(Error::ConflictingEntry {
                    key: entry_key_string(q, t, &key.2, class),
                    first: prev.to_string(),
                    second: stored.to_string(),
                });
            }
            return Ok(());
        }
        self.entries.insert(key, stored);
        Ok(())
    }

    /// Value of `class` on the normal-form monomial `m` in grading `(q, t)`.
    pub fn get(&self, q: usize, t: usize, m: &Monomial, class: &str) -> Option<&Scalar> {
        self.entries.get(&(q, t, m.clone(), class.to_string()))
    }
}

/// Evaluation policy for [`eval_connect_sum`].
#[derive(Debug, Clone, Copy, Default)]
pub struct EvalOptions {
    /// Fail on a missing table entry instead of treating it as zero.
    pub strict: bool,
    /// When set, require `beta` to be homogeneous, both labels to carry
    /// degrees, and `deg(a1) + deg(a2) = deg(beta) - shift`.
    pub degree_shift: Option<i64>,
}

/// One fully expanded summand of a pairing evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditTerm {
    pub split: Split,
    pub left: Monomial,
    pub right: Monomial,
    pub coproduct_coeff: Scalar,
    pub left_value: Scalar,
    pub right_value: Scalar,
    pub product: Scalar,
}

/// Flat serialization record for an audit term.
#[derive(Debug, Clone, Serialize)]
pub struct AuditTermRecord {
    pub q: usize,
    pub t: usize,
    pub r: usize,
    pub s: usize,
    pub left: String,
    pub right: String,
    pub coproduct_coeff: String,
    pub left_value: String,
    pub right_value: String,
    pub product: String,
}

/// Result of a connect-sum pairing evaluation with its audit trail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalResult {
    pub value: Scalar,
    pub terms: Vec<AuditTerm>,
    pub warnings: Vec<String>,
}

impl EvalResult {
    pub fn records(&self) -> Vec<AuditTermRecord> {
        self.terms
            .iter()
            .map(|term| AuditTermRecord {
                q: term.split.q,
                t: term.split.t,
                r: term.split.r,
                s: term.split.s,
                left: term.left.to_string(),
                right: term.right.to_string(),
                coproduct_coeff: term.coproduct_coeff.to_string(),
                left_value: term.left_value.to_string(),
                right_value: term.right_value.to_string(),
                product: term.product.to_string(),
            })
            .collect()
    }
}

/// Pair `beta` (a class on the `(Q, T)` quotient) against the connected sum
/// of the two knot spaces whose class values are tabulated as `a1` and
/// `a2`: split `beta` through the coproduct and sum
/// `coeff * a1(left) * a2(right)` over all tensor terms.
pub fn eval_connect_sum(
    beta: &Element,
    grading: ColoredGrading,
    a1: &ClassLabel,
    a2: &ClassLabel,
    table: &PairingTable,
    options: &EvalOptions,
) -> Result<EvalResult> {
    if table.n() != beta.params().n() || table.coefficients() != beta.params().coefficients() {
        return Err(Error::ParamMismatch {
            left: beta.params().to_string(),
            right: format!("table over n={}, {}", table.n(), table.coefficients()),
        });
    }
    if let Some(shift) = options.degree_shift {
        check_degrees(beta, a1, a2, shift)?;
    }
    let coefficients = beta.params().coefficients();
    let tensor = coproduct_element(beta, grading)?;
    let mut value = Scalar::zero();
    let mut terms = Vec::new();
    let mut warnings = Vec::new();
    for term in tensor.terms {
        let mut lookup = |q: usize, t: usize, m: &Monomial, class: &ClassLabel| {
            match table.get(q, t, m, &class.name) {
                Some(v) => Ok(v.clone()),
                None => {
                    let key = entry_key_string(q, t, m, &class.name);
                    if options.strict {
                        Err(Error::MissingEntry { key })
                    } else {
                        warnings.push(format!("no table entry for {key}; treated as 0"));
                        Ok(Scalar::zero())
                    }
                }
            }
        };
        let left_value = lookup(term.split.q, term.split.t, &term.left, a1)?;
        let right_value = lookup(term.split.r, term.split.s, &term.right, a2)?;
        let product =
            coefficients.normalize(&term.coeff * &left_value * &right_value)?;
        value += &product;
        terms.push(AuditTerm {
            split: term.split,
            left: term.left,
            right: term.right,
            coproduct_coeff: term.coeff,
            left_value,
            right_value,
            product,
        });
    }
    Ok(EvalResult {
        value: coefficients.normalize(value)?,
        terms,
        warnings,
    })
}

fn check_degrees(beta: &Element, a1: &ClassLabel, a2: &ClassLabel, shift: i64) -> Result<()> {
    let beta_degree = beta.homogeneous_degree().ok_or_else(|| {
        Error::DegreeMismatch(format!(
            "degree bookkeeping needs a homogeneous class, got degrees {:?}",
            beta.degrees()
        ))
    })? as i64;
    let (d1, d2) = match (a1.degree, a2.degree) {
        (Some(d1), Some(d2)) => (d1, d2),
        _ => {
            return Err(Error::DegreeMismatch(format!(
                "degree bookkeeping needs labels with degrees (like v@3), got {a1} and {a2}"
            )))
        }
    };
    if d1 + d2 != beta_degree - shift {
        return Err(Error::DegreeMismatch(format!(
            "{a1} and {a2} pair in degree {}, but the class has degree {} - {shift}",
            d1 + d2,
            beta_degree
        )));
    }
    Ok(())
}

/// Ranks of one quotient's cohomology together with the parity check: in
/// ambient dimension `n`, every nonzero rank of the `q`-point quotient must
/// sit in a degree congruent to `n * q` mod 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityTable {
    pub points: usize,
    pub ranks: BTreeMap<usize, String>,
    pub ok: bool,
}

/// The parity tables for every point count a bracket evaluation touches.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BracketCertificate {
    pub n: usize,
    pub tables: Vec<ParityTable>,
}

impl BracketCertificate {
    pub fn holds(&self) -> bool {
        self.tables.iter().all(|t| t.ok)
    }
}

/// A bracket evaluation: always zero in odd ambient dimension, with the
/// certificate exhibiting why.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketResult {
    pub value: Scalar,
    pub certificate: BracketCertificate,
}

/// Pair a class on the `(Q, T)` quotient against a bracket of cycles. For
/// odd `n` the cohomology of every quotient on `0..=Q+T` points is
/// concentrated in degrees congruent to `n * q` mod 2, the bracket shifts
/// parity, and the pairing vanishes identically; the result carries the
/// parity tables as a certificate. Even `n` has no parity gap and is
/// rejected.
pub fn eval_bracket(n: usize, grading: ColoredGrading) -> Result<BracketResult> {
    let params = RingParams::new(n, 0, Coefficients::Integers)?;
    if n.is_multiple_of(2) {
        return Err(Error::EvenDimension(n));
    }
    let mut tables = Vec::new();
    for points in 0..=grading.total() {
        let dims = quotient_cohomology_dims(&params.with_points(points));
        let ok = dims
            .iter()
            .all(|(degree, rank)| rank.is_zero() || degree % 2 == (n * points) % 2);
        let ranks = dims
            .into_iter()
            .map(|(degree, rank)| (degree, rank.to_string()))
            .collect::<BTreeMap<usize, String>>();
        tables.push(ParityTable { points, ranks, ok });
    }
    let certificate = BracketCertificate { n, tables };
    debug_assert!(certificate.holds());
    Ok(BracketResult {
        value: Scalar::zero(),
        certificate,
    })
}
