use crate::error::{Error, Result};
use crate::vectfn::VectFn;

pub const FIXTURE_NAMES: [&str; 3] = ["dillon6", "apn4_quadratic", "apn4_cubic"];

/// A bundled S-box that passed its self-validation.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub function: VectFn,
}

struct Contract {
    dim: usize,
    permutation: bool,
    /// Allowed component degrees (nonzero components).
    degrees: &'static [usize],
    max_degree: usize,
}

fn source(name: &str) -> Option<(&'static str, &'static str, Contract)> {
    Some(match name {
        "dillon6" => (
            "dillon6",
            include_str!("../../fixtures/dillon6.sbox"),
            Contract { dim: 6, permutation: true, degrees: &[3, 4], max_degree: 4 },
        ),
        "apn4_quadratic" => (
            "apn4_quadratic",
            include_str!("../../fixtures/apn4_quadratic.sbox"),
            Contract { dim: 4, permutation: false, degrees: &[2], max_degree: 2 },
        ),
        "apn4_cubic" => (
            "apn4_cubic",
            include_str!("../../fixtures/apn4_cubic.sbox"),
            Contract { dim: 4, permutation: false, degrees: &[2, 3], max_degree: 3 },
        ),
        _ => return None,
    })
}

/// Loads a bundled fixture and re-validates it.
pub fn load_fixture(name: &str) -> Result<Fixture> {
    let (name, text, contract) = source(name).ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
    let corrupted = |reason: String| Error::CorruptedFixture {
        name: name.to_string(),
        reason,
    };
    let f = VectFn::parse_text(text).map_err(|e| corrupted(e.to_string()))?;
    if f.dim() != contract.dim {
        return Err(corrupted(format!("dimension {} instead of {}", f.dim(), contract.dim)));
    }
    let delta = f.differential_uniformity();
    if delta != 2 {
        return Err(corrupted(format!("differential uniformity {delta}, expected 2")));
    }
    if contract.permutation && !f.is_permutation() {
        return Err(corrupted("not a permutation".into()));
    }
    let stats = f.degree_stats();
    if stats.max_degree != contract.max_degree {
        return Err(corrupted(format!("maximum degree {} instead of {}", stats.max_degree, contract.max_degree)));
    }
    if let Some(d) = stats.degree_set().into_iter().find(|d| !contract.degrees.contains(d)) {
        return Err(corrupted(format!("unexpected component degree {d}")));
    }
    Ok(Fixture { name, function: f })
}
