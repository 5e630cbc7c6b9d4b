//! Command implementations shared by the binary and the test suite.

use std::sync::Arc;

use sha2::{Digest, Sha256};

use carnot_core::algebra::GradedLieAlgebra;
use carnot_core::cohomology::{
    betti_numbers, cohomology_representatives, cochain_weight, DEFAULT_BUDGET_CELLS,
};
use carnot_core::error::Error;
use carnot_core::filling::{certify_jet_group, certify_user_algebra};
use carnot_core::formats::{
    algebra_from_json, certification_to_dto, cochain_to_dto, parse_vectors, plane_exponents_dto,
    validation_to_dto, CohomologyDto, GradingDto, JetInfoDto, RepresentativeDto, VectorSpec,
};
use carnot_core::jet::{lattice_generators, make_jet_algebra};
use carnot_core::plane::{gram_determinant_poly, plane_scaling_exponents};

use crate::report::{InputDescriptor, Report, Results};

/// Stable process exit codes.
pub mod exit_code {
    pub const SUCCESS: i32 = 0;
    pub const VALIDATION_FAILURE: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const BUDGET: i32 = 3;
}

pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::BudgetExceeded { .. } => exit_code::BUDGET,
        Error::Parse(_)
        | Error::BadRational(_)
        | Error::BadJetParameters { .. }
        | Error::Json(_) => exit_code::USAGE,
        _ => exit_code::VALIDATION_FAILURE,
    }
}

/// Reads the exterior-basis enumeration cap from `CARNOT_BUDGET_CELLS`.
pub fn budget_from_env() -> Result<u128, Error> {
    match std::env::var("CARNOT_BUDGET_CELLS") {
        Ok(v) => v
            .trim()
            .parse::<u128>()
            .map_err(|_| Error::Parse(format!("CARNOT_BUDGET_CELLS must be an integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_BUDGET_CELLS),
    }
}

pub enum Target {
    Jet { m: usize, k: usize },
    File { path: String },
}

pub struct LoadedTarget {
    pub descriptor: InputDescriptor,
    pub algebra: Arc<GradedLieAlgebra>,
    pub loaded: Option<carnot_core::formats::LoadedAlgebra>,
    pub jet: Option<(usize, usize)>,
}

pub fn load_target(target: &Target) -> Result<LoadedTarget, Error> {
    match target {
        Target::Jet { m, k } => Ok(LoadedTarget {
            descriptor: InputDescriptor::Builtin { jet_m: *m, jet_k: *k },
            algebra: make_jet_algebra(*m, *k)?,
            loaded: None,
            jet: Some((*m, *k)),
        }),
        Target::File { path } => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
            let digest = Sha256::digest(text.as_bytes());
            let sha256 = digest.iter().map(|b| format!("{b:02x}")).collect::<String>();
            let loaded = algebra_from_json(&text)?;
            Ok(LoadedTarget {
                descriptor: InputDescriptor::File { path: path.clone(), sha256 },
                algebra: loaded.algebra.clone(),
                loaded: Some(loaded),
                jet: None,
            })
        }
    }
}

/// `carnot algebra validate <file>`.
pub fn cmd_algebra_validate(path: &str) -> Result<(Report, i32), Error> {
    let target = load_target(&Target::File { path: path.to_owned() })?;
    let report_data = target.algebra.validate();
    let dto = validation_to_dto(&report_data);
    let code =
        if dto.passed { exit_code::SUCCESS } else { exit_code::VALIDATION_FAILURE };
    let report = Report::new("algebra validate", target.descriptor, Results::Validation(dto));
    Ok((report, code))
}

/// `carnot jet info --m M --k K`.
pub fn cmd_jet_info(m: usize, k: usize) -> Result<(Report, i32), Error> {
    let alg = make_jet_algebra(m, k)?;
    let grading = alg
        .graded_dims()
        .into_iter()
        .map(|(weight, dim)| GradingDto { weight, dim })
        .collect();
    let dto = JetInfoDto {
        m,
        k,
        dim: alg.dim(),
        nilpotency_class: alg.nilpotency_class()?,
        homogeneous_dimension: alg.homogeneous_dimension(),
        grading,
        lattice_generators: lattice_generators(m, k)?.len(),
    };
    let report = Report::new(
        "jet info",
        InputDescriptor::Builtin { jet_m: m, jet_k: k },
        Results::JetInfo(dto),
    );
    Ok((report, exit_code::SUCCESS))
}

/// `carnot certify (--jet M,K | --file F) [--dim N]`.
pub fn cmd_certify(target: &Target, dim: Option<usize>) -> Result<(Report, i32), Error> {
    let budget = budget_from_env()?;
    let loaded = load_target(target)?;
    let (run, homotopical) = match (&loaded.jet, &loaded.loaded) {
        (Some((m, k)), _) => (certify_jet_group(*m, *k, budget)?, true),
        (None, Some(file)) => (
            certify_user_algebra(
                &loaded.algebra,
                &file.candidates,
                file.ledger.clone(),
                budget,
            )?,
            false,
        ),
        (None, None) => unreachable!("load_target always fills one side"),
    };
    let mut dto = certification_to_dto(&run, homotopical);
    if let Some(n) = dim {
        dto.certificates.retain(|c| c.dimension == n);
        dto.gaps.retain(|g| g.dimension == n);
        if dto.certificates.is_empty() && dto.gaps.is_empty() {
            dto.gaps.push(carnot_core::formats::GapDto {
                dimension: n,
                reason: "not applicable: no certificate is defined in this dimension".to_owned(),
            });
        }
    }
    let report = Report::new("certify", loaded.descriptor, Results::Certification(dto));
    Ok((report, exit_code::SUCCESS))
}

/// `carnot cohomology (--jet M,K | --file F) --degree N`.
pub fn cmd_cohomology(target: &Target, degree: usize) -> Result<(Report, i32), Error> {
    let budget = budget_from_env()?;
    let loaded = load_target(target)?;
    let alg = &loaded.algebra;
    let betti = betti_numbers(alg, degree, budget)?[degree];
    let reps = cohomology_representatives(alg, degree, budget)?;
    let representatives = reps
        .into_iter()
        .map(|(weight, z)| {
            debug_assert_eq!(cochain_weight(alg, &z).unwrap(), weight);
            RepresentativeDto {
                weight,
                cochain: cochain_to_dto(alg, &z),
                rendered: z.display_with(alg),
            }
        })
        .collect();
    let dto = CohomologyDto { degree, betti, representatives };
    let report = Report::new("cohomology", loaded.descriptor, Results::Cohomology(dto));
    Ok((report, exit_code::SUCCESS))
}

/// `carnot plane-exponents (--jet M,K | --file F) --vectors <json>`.
pub fn cmd_plane_exponents(target: &Target, vectors_json: &str) -> Result<(Report, i32), Error> {
    let loaded = load_target(target)?;
    let specs: Vec<VectorSpec> = serde_json::from_str(vectors_json)
        .map_err(|e| Error::Parse(format!("--vectors: {e}")))?;
    let vectors = parse_vectors(&loaded.algebra, &specs)?;
    let pair = plane_scaling_exponents(&vectors)?;
    let gram = gram_determinant_poly(&vectors)?;
    let dto = plane_exponents_dto(&pair, &gram);
    let report = Report::new("plane-exponents", loaded.descriptor, Results::PlaneExponents(dto));
    Ok((report, exit_code::SUCCESS))
}
