//! Machine-readable records (JSON lines).
//!
//! Numeric values are decimal strings with 40 significant digits; exact
//! witnesses are coefficient vectors of rationals in decimal strings with
//! the cyclotomic level attached.

use serde::Serialize;

use crate::bigfloat::format_sig;
use crate::classify::{
    Classification, Conjecture2Report, Detected, ExactOrNumeric, MembershipMethod,
    MembershipReport, ProjectiveValue, Provenance, SchurLimit, Verdict, WhichEigenvalue,
};
use crate::complex::ComplexBF;
use crate::cyclo::CycloElem;
use crate::witness::{IndexCertificate, StopReason, WitnessResult};

pub const NUMERIC_DIGITS: usize = 40;

#[derive(Debug, Clone, Serialize)]
pub struct NumericRecord {
    pub re: String,
    pub im: String,
}

impl NumericRecord {
    pub fn of(v: &ComplexBF) -> Self {
        NumericRecord {
            re: format_sig(&v.re, NUMERIC_DIGITS),
            im: format_sig(&v.im, NUMERIC_DIGITS),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExactRecord {
    pub level: u32,
    /// Power-basis coordinates as `p/q` strings.
    pub coeffs: Vec<String>,
}

impl ExactRecord {
    pub fn of(v: &CycloElem) -> Self {
        ExactRecord {
            level: v.level(),
            coeffs: v.coeffs().iter().map(|c| c.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ValueRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric: Option<NumericRecord>,
    pub infinite: bool,
}

impl ValueRecord {
    pub fn of(v: &ExactOrNumeric) -> Self {
        ValueRecord {
            exact: v.exact.as_ref().map(ExactRecord::of),
            numeric: Some(NumericRecord::of(&v.numeric)),
            infinite: false,
        }
    }

    pub fn of_projective(v: &ProjectiveValue) -> Self {
        match v {
            ProjectiveValue::Finite(f) => Self::of(f),
            ProjectiveValue::Infinity => ValueRecord {
                exact: None,
                numeric: None,
                infinite: true,
            },
        }
    }
}

pub fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::ConvergentWithLimit => "ConvergentWithLimit",
        Verdict::DivergentNegativeReal => "DivergentNegativeReal",
        Verdict::DivergentTwoLimitPoints => "DivergentTwoLimitPoints",
        Verdict::DivergentThreeLimitPointsPossible => "DivergentThreeLimitPointsPossible",
        Verdict::ConditionNotSatisfied => "ConditionNotSatisfied",
    }
}

pub fn provenance_str(p: Provenance) -> &'static str {
    match p {
        Provenance::Theorem3 => "Theorem3",
        Provenance::Theorem4 => "Theorem4",
        Provenance::SchurTheorem => "SchurTheorem",
        Provenance::Conjecture3 => "Conjecture3",
        Provenance::Heuristic => "Heuristic",
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MembershipRecord {
    pub record: &'static str,
    pub k: u32,
    pub m: u32,
    pub detected: bool,
    pub method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ExactRecord>,
    pub precision_bits: usize,
    pub height_bound: u64,
}

impl MembershipRecord {
    pub fn of(r: &MembershipReport) -> Self {
        let (detected, witness) = match &r.detected {
            Detected::InField { witness } => (true, Some(ExactRecord::of(witness))),
            Detected::NotDetected => (false, None),
        };
        MembershipRecord {
            record: "membership",
            k: r.k,
            m: r.m,
            detected,
            method: match r.method {
                MembershipMethod::ExactGaussSum => "exact_gauss_sum",
                MembershipMethod::IntegerRelation => "integer_relation",
            },
            witness,
            precision_bits: r.precision_bits,
            height_bound: r.height_bound,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationRecord {
    pub record: &'static str,
    pub a: String,
    pub m: u32,
    pub verdict: &'static str,
    pub provenance: &'static str,
    pub algebraic_condition_held: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit: Option<ValueRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit_points: Option<Vec<ValueRecord>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub membership: Option<MembershipRecord>,
}

impl ClassificationRecord {
    pub fn of(a: &str, m: u32, c: &Classification) -> Self {
        ClassificationRecord {
            record: "classification",
            a: a.to_string(),
            m,
            verdict: verdict_str(c.verdict),
            provenance: provenance_str(c.provenance),
            algebraic_condition_held: c.algebraic_condition_held,
            limit: c.limit.as_ref().map(ValueRecord::of),
            limit_points: c
                .limit_points
                .as_ref()
                .map(|pts| pts.iter().map(ValueRecord::of_projective).collect()),
            membership: c.membership.as_ref().map(MembershipRecord::of),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CandidateRecord {
    pub r: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigenvalue: Option<&'static str>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Conjecture2Record {
    pub record: &'static str,
    pub j: u32,
    pub k: u32,
    pub l: u32,
    pub m: u32,
    pub class_residue: u32,
    pub candidates: Vec<CandidateRecord>,
    pub holds: bool,
}

impl Conjecture2Record {
    pub fn of(r: &Conjecture2Report) -> Self {
        Conjecture2Record {
            record: "conjecture2",
            j: r.j,
            k: r.k,
            l: r.l,
            m: r.m,
            class_residue: r.class_residue,
            candidates: r
                .candidates
                .iter()
                .map(|c| CandidateRecord {
                    r: c.r,
                    eigenvalue: c.eigenvalue.map(|e| match e {
                        WhichEigenvalue::Plus => "plus",
                        WhichEigenvalue::Minus => "minus",
                    }),
                })
                .collect(),
            holds: r.holds,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SchurLimitRecord {
    pub record: &'static str,
    pub m: u64,
    pub legendre: i8,
    pub sigma: u64,
    pub exponent: i64,
    pub value: NumericRecord,
}

impl SchurLimitRecord {
    pub fn of(s: &SchurLimit) -> Self {
        SchurLimitRecord {
            record: "schur_limit",
            m: s.m,
            legendre: s.legendre,
            sigma: s.sigma,
            exponent: s.exponent,
            value: NumericRecord::of(&s.value),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessRecord {
    pub record: &'static str,
    /// Digits as decimal strings (arbitrarily large integers).
    pub digits: Vec<String>,
    /// Convergent denominators `d_0..d_n`.
    pub denominators: Vec<String>,
    /// `lambda_R` (40 significant digits).
    pub lambda: String,
    /// `lambda^(d_n/2)/e_(n+1)` evidence ratios for generated digits.
    pub ratios: Vec<String>,
    pub stopped: String,
}

impl WitnessRecord {
    pub fn of(w: &WitnessResult) -> Self {
        WitnessRecord {
            record: "witness",
            digits: w.digits.digits().iter().map(|d| d.to_string()).collect(),
            denominators: (0..=w.digits.len())
                .map(|n| w.digits.d(n).to_string())
                .collect(),
            lambda: format_sig(&w.lambda.lambda, NUMERIC_DIGITS),
            ratios: w
                .ratios
                .iter()
                .map(|r| format_sig(r, NUMERIC_DIGITS))
                .collect(),
            stopped: match &w.stop {
                StopReason::Completed => "completed".to_string(),
                StopReason::BudgetExhausted {
                    digit_index,
                    d_prev,
                    estimated_bits,
                } => format!(
                    "budget_exhausted: digit e_{digit_index} needs ~{estimated_bits} bits (d = {d_prev})"
                ),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateRecord {
    pub record: &'static str,
    pub n: usize,
    pub c_n: String,
    pub d_n: String,
    pub feasible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget_note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_m_r: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_r_margin: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schur_top: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schur_second: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perturbation_top: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perturbation_second: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub product_bound: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub product_direct: Option<String>,
}

impl CertificateRecord {
    pub fn of(c: &IndexCertificate) -> Self {
        let fmt = |x: &Option<astro_float::BigFloat>| {
            x.as_ref().map(|v| format_sig(v, NUMERIC_DIGITS))
        };
        CertificateRecord {
            record: "certificate",
            n: c.n,
            c_n: c.c_n.to_string(),
            d_n: c.d_n.to_string(),
            feasible: c.feasible,
            budget_note: c.budget_note.clone(),
            in_m_r: c.in_m_r,
            m_r_margin: fmt(&c.m_r_margin),
            schur_top: fmt(&c.schur_top),
            schur_second: fmt(&c.schur_second),
            perturbation_top: fmt(&c.perturbation_top),
            perturbation_second: fmt(&c.perturbation_second),
            product_bound: fmt(&c.product_bound),
            product_direct: fmt(&c.product_direct),
        }
    }
}

/// One record per line.
pub fn to_json_line<T: Serialize>(record: &T) -> String {
    serde_json::to_string(record).expect("serializable record")
}
