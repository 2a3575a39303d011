//! Curvature notions on weighted graphs.

pub mod bakry_emery;
pub mod laplacian;
pub mod ollivier;
pub mod simplex;
pub mod transport;

use serde_json::json;

use crate::rational::{self, Rational};

pub use bakry_emery::{bakry_emery, curvature_matrix, curvature_matrix_closed_form, CurvatureMatrix};
pub use laplacian::{gamma, gamma2, laplacian_apply, LaplacianKind};
pub use ollivier::{kappa_lly_laplacian, kappa_lly_transport, kappa_p, local_distances};
pub use transport::{wasserstein_w1, Transport};

/// Evidence behind a curvature value.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// Minimising function of the Bakry-Émery quotient (values on `B₂(x)`).
    Function { vertices: Vec<usize>, values: Vec<f64> },
    /// Optimal 1-Lipschitz function of the Laplacian formulation.
    Potential { vertices: Vec<usize>, values: Vec<Rational> },
    /// Optimal transport plan with its Kantorovich potential.
    Transport(Transport),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureResult {
    pub value: f64,
    pub exact: Option<Rational>,
    pub witness: Witness,
}

impl CurvatureResult {
    pub fn to_json(&self) -> serde_json::Value {
        let witness = match &self.witness {
            Witness::Function { vertices, values } => json!({
                "kind": "eigenfunction",
                "vertices": vertices,
                "values": values,
            }),
            Witness::Potential { vertices, values } => json!({
                "kind": "lipschitz_function",
                "vertices": vertices,
                "values": values.iter().map(rational::format).collect::<Vec<_>>(),
            }),
            Witness::Transport(t) => t.to_json(),
        };
        json!({
            "value_rational": self.exact.as_ref().map(rational::format),
            "value_float": self.value,
            "witness": witness,
        })
    }
}
