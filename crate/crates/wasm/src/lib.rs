//! Browser bindings: three interactive queries against the core toolkit,
//! each returning a JSON string (`{"error": …}` on failure) so the page
//! needs no bindings beyond strings.

use wasm_bindgen::prelude::wasm_bindgen;

use carnot_core::cohomology::DEFAULT_BUDGET_CELLS;
use carnot_core::error::Error;
use carnot_core::filling::certify_jet_group;
use carnot_core::formats::{
    certification_to_dto, parse_vectors, plane_exponents_dto, GradingDto, JetInfoDto, VectorSpec,
};
use carnot_core::jet::{lattice_generators, make_jet_algebra};
use carnot_core::plane::{gram_determinant_poly, plane_scaling_exponents};

fn jet_info_impl(m: usize, k: usize) -> Result<String, Error> {
    let alg = make_jet_algebra(m, k)?;
    let dto = JetInfoDto {
        m,
        k,
        dim: alg.dim(),
        nilpotency_class: alg.nilpotency_class()?,
        homogeneous_dimension: alg.homogeneous_dimension(),
        grading: alg
            .graded_dims()
            .into_iter()
            .map(|(weight, dim)| GradingDto { weight, dim })
            .collect(),
        lattice_generators: lattice_generators(m, k)?.len(),
    };
    Ok(serde_json::to_string(&dto)?)
}

fn certify_jet_impl(m: usize, k: usize) -> Result<String, Error> {
    let run = certify_jet_group(m, k, DEFAULT_BUDGET_CELLS)?;
    let dto = certification_to_dto(&run, true);
    Ok(serde_json::to_string(&dto)?)
}

fn plane_exponents_impl(m: usize, k: usize, vectors_json: &str) -> Result<String, Error> {
    let alg = make_jet_algebra(m, k)?;
    let specs: Vec<VectorSpec> = serde_json::from_str(vectors_json)
        .map_err(|e| Error::Parse(format!("vectors: {e}")))?;
    let vectors = parse_vectors(&alg, &specs)?;
    let pair = plane_scaling_exponents(&vectors)?;
    let gram = gram_determinant_poly(&vectors)?;
    Ok(serde_json::to_string(&plane_exponents_dto(&pair, &gram))?)
}

fn or_error(result: Result<String, Error>) -> String {
    result.unwrap_or_else(|e| {
        serde_json::json!({ "error": e.to_string() }).to_string()
    })
}

/// Dimension, class, grading and lattice data of J^m(R^k).
#[wasm_bindgen]
pub fn jet_info(m: usize, k: usize) -> String {
    or_error(jet_info_impl(m, k))
}

/// Sharp filling-exponent certificates for J^m(R^k).
#[wasm_bindgen]
pub fn certify_jet(m: usize, k: usize) -> String {
    or_error(certify_jet_impl(m, k))
}

/// Volume-scaling exponents of the plane spanned by the given vectors
/// (JSON array of dense arrays or {"name": "p/q"} maps).
#[wasm_bindgen]
pub fn plane_exponents(m: usize, k: usize, vectors_json: &str) -> String {
    or_error(plane_exponents_impl(m, k, vectors_json))
}

/// Basis names of j_{m,k}, for building vector-entry forms.
#[wasm_bindgen]
pub fn basis_names(m: usize, k: usize) -> String {
    or_error(make_jet_algebra(m, k).and_then(|alg| Ok(serde_json::to_string(alg.names())?)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn info_payload_parses() {
        let text = jet_info(2, 2);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["dim"], 8);
        assert_eq!(v["nilpotency_class"], 3);
    }

    #[test]
    fn certify_payload_has_sharp_table() {
        let text = certify_jet(1, 2);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let certs = v["certificates"].as_array().unwrap();
        assert_eq!(certs.len(), 2);
        // n = 3: (k+m+1)/k = 4/2 = 2.
        assert_eq!(certs[1]["upper"]["exponent"], "2");
        assert!(certs[0]["sharp"].as_bool().unwrap());
    }

    #[test]
    fn plane_payload_and_errors() {
        let text = plane_exponents(1, 1, r#"[{"e1": "1"}, {"y(0)": "1"}]"#);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["a"], "3");
        assert_eq!(v["b"], "3");

        let text = plane_exponents(1, 1, "not json");
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert!(v["error"].as_str().unwrap().contains("vectors"));

        let text = jet_info(0, 1);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert!(v["error"].is_string());
    }
}
