//! Bundled scenarios.

use super::ScenarioError;

pub const FIXTURE_NAMES: [&str; 4] = ["z3_gl1_f3", "s3_gl2_f5", "zl_coprime", "ordinary_toy"];

/// The bundled scenario file with this name.
pub fn emit_fixture(name: &str) -> Result<&'static str, ScenarioError> {
    match name {
        "z3_gl1_f3" => Ok(include_str!("../../fixtures/z3_gl1_f3.json")),
        "s3_gl2_f5" => Ok(include_str!("../../fixtures/s3_gl2_f5.json")),
        "zl_coprime" => Ok(include_str!("../../fixtures/zl_coprime.json")),
        "ordinary_toy" => Ok(include_str!("../../fixtures/ordinary_toy.json")),
        _ => Err(ScenarioError::UnknownFixture(name.to_string())),
    }
}
