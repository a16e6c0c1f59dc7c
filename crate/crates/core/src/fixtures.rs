//! Reference values shipped with the crate (`fixtures/golden.toml`).

use std::sync::OnceLock;

use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
pub struct SchurFixture {
    pub partition: Vec<u32>,
    pub poly: String,
}

#[derive(Debug, Clone, Deserialize)]
pub struct SigmaFixture {
    pub poly: String,
}

/// `S⁴ · target_word = poly + sigma_multiple · S`.
#[derive(Debug, Clone, Deserialize)]
pub struct LeadingFixture {
    pub id: String,
    pub target: String,
    pub word: Vec<usize>,
    pub poly: String,
    pub sigma_multiple: i64,
    #[serde(default)]
    pub advisory: bool,
}

#[derive(Debug, Clone, Deserialize)]
pub struct BasisFixture {
    pub degree: u32,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Golden {
    pub schur: Vec<SchurFixture>,
    pub sigma: SigmaFixture,
    pub leading: Vec<LeadingFixture>,
    pub kp_basis: Vec<BasisFixture>,
}

pub const GOLDEN_TOML: &str = include_str!("../fixtures/golden.toml");

pub fn golden() -> &'static Golden {
    static G: OnceLock<Golden> = OnceLock::new();
    G.get_or_init(|| toml::from_str(GOLDEN_TOML).expect("bundled golden.toml is well-formed"))
}
