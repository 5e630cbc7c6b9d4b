//! JSON interchange formats: algebra definition files, jet points, and the
//! serializable views of reports and certificates.
//!
//! Rationals travel as strings, `"p"` or `"p/q"`, in lowest terms with a
//! positive denominator; floats never appear. Maps in the schemas use
//! ordered containers so emission is byte-deterministic.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    subalgebra_from_span, AlgebraElement, BracketTable, GradedLieAlgebra, Subalgebra,
    ValidationReport,
};
use crate::cohomology::Cochain;
use crate::error::{Error, Result};
use crate::filling::{
    CertificationRun, ExponentCertificate, HorizontalityLedger, LedgerEntry, Provenance,
    UpperRule,
};
use crate::jet::JetPoint;
use crate::scalar::{format_rational, parse_rational, Rational};

// ---------------------------------------------------------------------------
// Algebra definition files
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BasisEntryDto {
    pub name: String,
    pub weight: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BracketEntryDto {
    pub left: String,
    pub right: String,
    pub result: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CochainTermDto {
    pub factors: Vec<String>,
    pub coeff: String,
}

/// Candidate (cocycle, subalgebra) pair for lower-bound certification.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CandidatePairDto {
    pub cocycle: Vec<CochainTermDto>,
    /// Span vectors as sparse name -> coefficient maps.
    pub subalgebra: Vec<BTreeMap<String, String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct LedgerEntryDto {
    pub dim: usize,
    pub a: String,
    pub b: String,
    /// "cited" or "verified".
    pub kind: String,
    #[serde(default)]
    pub note: String,
}

/// On-disk algebra definition. `certificates` and `ledger` are optional
/// extensions used by certification on user algebras.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub basis: Vec<BasisEntryDto>,
    #[serde(default)]
    pub brackets: Vec<BracketEntryDto>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<CandidatePairDto>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ledger: Vec<LedgerEntryDto>,
}

/// A parsed algebra file: the algebra plus any certification extras.
pub struct LoadedAlgebra {
    pub algebra: Arc<GradedLieAlgebra>,
    pub candidates: Vec<(Cochain, Subalgebra)>,
    pub ledger: Option<HorizontalityLedger>,
}

pub fn algebra_from_json(text: &str) -> Result<LoadedAlgebra> {
    let file: AlgebraFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("algebra file: {e}")))?;
    load_algebra_file(&file)
}

pub fn load_algebra_file(file: &AlgebraFile) -> Result<LoadedAlgebra> {
    if file.basis.is_empty() {
        return Err(Error::Parse("basis list is empty".into()));
    }
    let mut names = Vec::with_capacity(file.basis.len());
    let mut weights = Vec::with_capacity(file.basis.len());
    for b in &file.basis {
        if b.weight <= 0 {
            return Err(Error::Parse(format!(
                "basis element {:?} has non-positive weight {}",
                b.name, b.weight
            )));
        }
        names.push(b.name.clone());
        weights.push(b.weight as u32);
    }
    let index_of = |name: &str| -> Result<usize> {
        names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::Parse(format!("unknown basis name {name:?}")))
    };
    let mut entries: BTreeMap<(usize, usize), Vec<(usize, Rational)>> = BTreeMap::new();
    for br in &file.brackets {
        let li = index_of(&br.left)?;
        let ri = index_of(&br.right)?;
        if li >= ri {
            return Err(Error::Parse(format!(
                "bracket pair ({}, {}) must be ordered left < right by basis order",
                br.left, br.right
            )));
        }
        if entries.contains_key(&(li, ri)) {
            return Err(Error::Parse(format!(
                "duplicate bracket pair ({}, {})",
                br.left, br.right
            )));
        }
        let mut sparse = Vec::new();
        for (target, coeff) in &br.result {
            let ti = index_of(target)?;
            sparse.push((ti, parse_rational(coeff)?));
        }
        entries.insert((li, ri), sparse);
    }
    let dim = names.len();
    let algebra = GradedLieAlgebra::new(names, weights, BracketTable::new(dim, entries)?)?;

    let mut candidates = Vec::new();
    for pair in &file.certificates {
        let span: Vec<AlgebraElement<Rational>> = pair
            .subalgebra
            .iter()
            .map(|entry| {
                let mut coeffs = vec![Rational::zero(); algebra.dim()];
                for (name, val) in entry {
                    let i = algebra
                        .index_of(name)
                        .ok_or_else(|| Error::Parse(format!("unknown basis name {name:?}")))?;
                    coeffs[i] = parse_rational(val)?;
                }
                algebra.element(coeffs)
            })
            .collect::<Result<_>>()?;
        let sub = subalgebra_from_span(&algebra, &span)?;
        let cocycle = cochain_from_dto(&algebra, &pair.cocycle)?;
        candidates.push((cocycle, sub));
    }

    let ledger = if file.ledger.is_empty() {
        None
    } else {
        let mut l = HorizontalityLedger::new();
        for e in &file.ledger {
            l.insert(ledger_entry_from_dto(e)?);
        }
        Some(l)
    };

    Ok(LoadedAlgebra { algebra, candidates, ledger })
}

pub fn algebra_to_file(alg: &GradedLieAlgebra) -> AlgebraFile {
    let basis = alg
        .names()
        .iter()
        .zip(alg.weights())
        .map(|(name, &w)| BasisEntryDto { name: clone_name(name), weight: w as i64 })
        .collect();
    let brackets = alg
        .table()
        .entries()
        .map(|((i, j), targets)| BracketEntryDto {
            left: alg.names()[*i].clone(),
            right: alg.names()[*j].clone(),
            result: targets
                .iter()
                .map(|(t, c)| (alg.names()[*t].clone(), format_rational(c)))
                .collect(),
        })
        .collect();
    AlgebraFile { basis, brackets, certificates: Vec::new(), ledger: Vec::new() }
}

fn clone_name(s: &str) -> String {
    s.to_owned()
}

pub fn cochain_from_dto(alg: &GradedLieAlgebra, terms: &[CochainTermDto]) -> Result<Cochain> {
    let degree = terms
        .first()
        .map(|t| t.factors.len())
        .ok_or_else(|| Error::Parse("cocycle has no terms".into()))?;
    let mut raw = Vec::new();
    for t in terms {
        if t.factors.len() != degree {
            return Err(Error::Parse("cocycle terms have mixed degrees".into()));
        }
        let mut indices = Vec::with_capacity(degree);
        for f in &t.factors {
            indices.push(
                alg.index_of(f)
                    .ok_or_else(|| Error::Parse(format!("unknown basis name {f:?}")))?,
            );
        }
        raw.push((indices, parse_rational(&t.coeff)?));
    }
    Cochain::from_terms(alg.dim(), degree, raw)
}

pub fn cochain_to_dto(alg: &GradedLieAlgebra, z: &Cochain) -> Vec<CochainTermDto> {
    z.terms()
        .map(|(indices, c)| CochainTermDto {
            factors: indices.iter().map(|&i| alg.names()[i].clone()).collect(),
            coeff: format_rational(c),
        })
        .collect()
}

fn ledger_entry_from_dto(e: &LedgerEntryDto) -> Result<LedgerEntry> {
    let provenance = match e.kind.as_str() {
        "cited" => Provenance::Cited { premise: e.note.clone() },
        "verified" => Provenance::Verified { detail: e.note.clone() },
        other => {
            return Err(Error::Parse(format!(
                "ledger kind must be \"cited\" or \"verified\", got {other:?}"
            )))
        }
    };
    LedgerEntry::new(e.dim, parse_rational(&e.a)?, parse_rational(&e.b)?, provenance)
}

pub fn ledger_entry_to_dto(e: &LedgerEntry) -> LedgerEntryDto {
    let (kind, note) = match &e.provenance {
        Provenance::Cited { premise } => ("cited", premise.clone()),
        Provenance::Verified { detail } => ("verified", detail.clone()),
    };
    LedgerEntryDto {
        dim: e.dim,
        a: format_rational(&e.a),
        b: format_rational(&e.b),
        kind: kind.to_owned(),
        note,
    }
}

// ---------------------------------------------------------------------------
// Jet points
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JetPointDto {
    pub m: usize,
    pub k: usize,
    #[serde(default)]
    pub base: Vec<String>,
    #[serde(default)]
    pub jet: BTreeMap<String, String>,
}

pub fn jet_point_from_json(text: &str) -> Result<JetPoint<Rational>> {
    let dto: JetPointDto =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("jet point: {e}")))?;
    jet_point_from_dto(&dto)
}

pub fn jet_point_from_dto(dto: &JetPointDto) -> Result<JetPoint<Rational>> {
    let base: Vec<Rational> = if dto.base.is_empty() {
        vec![Rational::zero(); dto.k]
    } else {
        dto.base.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?
    };
    let mut jet = BTreeMap::new();
    for (key, val) in &dto.jet {
        let index: Vec<u32> = key
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad multi-index component {part:?}")))
            })
            .collect::<Result<_>>()?;
        jet.insert(index, parse_rational(val)?);
    }
    JetPoint::new(dto.m, dto.k, base, jet)
}

pub fn jet_point_to_dto(p: &JetPoint<Rational>) -> JetPointDto {
    JetPointDto {
        m: p.m(),
        k: p.k(),
        base: p.base().iter().map(format_rational).collect(),
        jet: p
            .jet()
            .iter()
            .map(|(a, c)| {
                let key =
                    a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
                (key, format_rational(c))
            })
            .collect(),
    }
}

// ---------------------------------------------------------------------------
// Report views
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckDto {
    pub passed: bool,
    pub witness: Vec<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ValidationReportDto {
    pub passed: bool,
    pub antisymmetry: CheckDto,
    pub jacobi: CheckDto,
    pub grading: CheckDto,
    pub nilpotency: CheckDto,
    pub lower_central_series: Vec<usize>,
}

pub fn validation_to_dto(r: &ValidationReport) -> ValidationReportDto {
    let conv = |c: &crate::algebra::Check| CheckDto {
        passed: c.passed,
        witness: c.witness.clone(),
        detail: c.detail.clone(),
    };
    ValidationReportDto {
        passed: r.passed(),
        antisymmetry: conv(&r.antisymmetry),
        jacobi: conv(&r.jacobi),
        grading: conv(&r.grading),
        nilpotency: conv(&r.nilpotency),
        lower_central_series: r.lcs_dims.clone(),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GradingDto {
    pub weight: u32,
    pub dim: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct JetInfoDto {
    pub m: usize,
    pub k: usize,
    pub dim: usize,
    pub nilpotency_class: usize,
    pub homogeneous_dimension: u64,
    pub grading: Vec<GradingDto>,
    pub lattice_generators: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct LowerBoundDto {
    pub exponent: String,
    pub weight: u32,
    pub cocycle: Vec<CochainTermDto>,
    pub cocycle_rendered: String,
    /// Span vectors rendered over basis names.
    pub subalgebra_span: Vec<String>,
    pub nonvanishing_functional: Vec<CochainTermDto>,
    pub restriction_rendered: String,
    pub ledger_entry: LedgerEntryDto,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct UpperBoundDto {
    pub exponent: String,
    pub rule: String,
    pub trail: Vec<LedgerEntryDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CertificateDto {
    pub dimension: usize,
    pub filling_function: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homotopical_function: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower: Option<LowerBoundDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper: Option<UpperBoundDto>,
    pub sharp: bool,
    pub conditional: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GapDto {
    pub dimension: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CertificationDto {
    pub ledger: Vec<LedgerEntryDto>,
    pub certificates: Vec<CertificateDto>,
    pub gaps: Vec<GapDto>,
}

/// Renders a cochain over a subalgebra span basis as `u1, u2, …`.
fn render_sub_cochain(z: &Cochain) -> String {
    if z.is_zero() {
        return "0".to_owned();
    }
    z.terms()
        .map(|(indices, c)| {
            let mono: Vec<String> = indices.iter().map(|i| format!("u{}*", i + 1)).collect();
            if mono.is_empty() {
                format_rational(c)
            } else {
                format!("{} {}", format_rational(c), mono.join("∧"))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn dim_cert_to_dto(
    alg: &GradedLieAlgebra,
    cert: &ExponentCertificate,
    with_homotopical: bool,
) -> CertificateDto {
    let n = cert.dimension;
    let lower = cert.lower.as_ref().map(|l| {
        let subnames: Vec<String> = l
            .subalgebra
            .span()
            .iter()
            .map(crate::algebra::element_to_string)
            .collect();
        LowerBoundDto {
            exponent: format_rational(&l.exponent),
            weight: l.weight,
            cocycle: cochain_to_dto(alg, &l.cocycle),
            cocycle_rendered: l.cocycle.display_with(alg),
            subalgebra_span: subnames,
            nonvanishing_functional: l
                .nonvanishing
                .functional
                .iter()
                .map(|(indices, c)| CochainTermDto {
                    factors: indices.iter().map(|i| format!("u{}", i + 1)).collect(),
                    coeff: format_rational(c),
                })
                .collect(),
            restriction_rendered: render_sub_cochain(&l.nonvanishing.restricted),
            ledger_entry: ledger_entry_to_dto(&l.ledger_entry),
        }
    });
    let upper = cert.upper.as_ref().map(|u| UpperBoundDto {
        exponent: format_rational(&u.exponent),
        rule: match u.rule {
            UpperRule::Euclidean => "euclidean".to_owned(),
            UpperRule::Ledger => "ledger".to_owned(),
            UpperRule::Generic => "generic".to_owned(),
        },
        trail: u.trail.iter().map(ledger_entry_to_dto).collect(),
        class: u.class,
    });
    CertificateDto {
        dimension: n,
        filling_function: format!("FV_{n}"),
        homotopical_function: with_homotopical.then(|| format!("delta_{}", n - 1)),
        lower,
        upper,
        sharp: cert.sharp,
        conditional: cert.conditional,
    }
}

/// Serializable view of a certification run. `with_homotopical` labels the
/// equivalent homotopical filling function alongside each FV entry; it is
/// enabled for jet groups only.
pub fn certification_to_dto(run: &CertificationRun, with_homotopical: bool) -> CertificationDto {
    CertificationDto {
        ledger: run.ledger.entries().map(ledger_entry_to_dto).collect(),
        certificates: run
            .certificates
            .iter()
            .map(|c| dim_cert_to_dto(&run.algebra, c, with_homotopical))
            .collect(),
        gaps: run
            .gaps
            .iter()
            .map(|(dimension, reason)| GapDto { dimension: *dimension, reason: reason.clone() })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PlaneExponentsDto {
    pub a: String,
    pub b: String,
    /// Gram determinant coefficients, constant term first.
    pub gram_determinant: Vec<String>,
    pub gram_rendered: String,
}

pub fn plane_exponents_dto(pair: &crate::plane::ScalingExponentPair, gram: &[Rational]) -> PlaneExponentsDto {
    let rendered = gram
        .iter()
        .enumerate()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(d, c)| match d {
            0 => format_rational(c),
            1 => format!("{} t", format_rational(c)),
            _ => format!("{} t^{d}", format_rational(c)),
        })
        .collect::<Vec<_>>()
        .join(" + ");
    PlaneExponentsDto {
        a: format_rational(&pair.a),
        b: format_rational(&pair.b),
        gram_determinant: gram.iter().map(format_rational).collect(),
        gram_rendered: rendered,
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RepresentativeDto {
    pub weight: u32,
    pub cochain: Vec<CochainTermDto>,
    pub rendered: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CohomologyDto {
    pub degree: usize,
    pub betti: usize,
    pub representatives: Vec<RepresentativeDto>,
}

/// Inline vector entry: dense coefficient array or a sparse
/// name -> coefficient map.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VectorSpec {
    Dense(Vec<String>),
    Named(BTreeMap<String, String>),
}

pub fn parse_vectors(
    alg: &Arc<GradedLieAlgebra>,
    specs: &[VectorSpec],
) -> Result<Vec<AlgebraElement<Rational>>> {
    specs
        .iter()
        .map(|spec| {
            let mut coeffs = vec![Rational::zero(); alg.dim()];
            match spec {
                VectorSpec::Dense(values) => {
                    if values.len() != alg.dim() {
                        return Err(Error::DimensionMismatch {
                            expected: alg.dim(),
                            got: values.len(),
                        });
                    }
                    for (c, v) in coeffs.iter_mut().zip(values) {
                        *c = parse_rational(v)?;
                    }
                }
                VectorSpec::Named(map) => {
                    for (name, v) in map {
                        let i = alg.index_of(name).ok_or_else(|| {
                            Error::Parse(format!("unknown basis name {name:?}"))
                        })?;
                        coeffs[i] = parse_rational(v)?;
                    }
                }
            }
            alg.element(coeffs)
        })
        .collect()
}
