//! Serialized result envelopes shared by the CLI and by downstream
//! scripting. Field order is fixed by struct declaration order and
//! floats print in shortest round-trip form, so identical inputs give
//! byte-identical output.

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::bargmann::NumberDistribution;
use crate::fock::FockState;
use crate::metaplectic::{DisentangleBranch, DisentangleReport};
use crate::wave::{PhysicalParams, WaveSolution};

pub fn c64_pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

pub fn serialize_c64<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    c64_pair(*z).serialize(s)
}

/// `{"dim": N, "coeffs": [[re, im], ...], "norm": r, "tail_mass": t}`
/// with the tail reported at the 0.75 fraction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StateJson {
    pub dim: usize,
    pub coeffs: Vec<[f64; 2]>,
    pub norm: f64,
    pub tail_mass: f64,
}

impl From<&FockState> for StateJson {
    fn from(state: &FockState) -> Self {
        Self {
            dim: state.dim(),
            coeffs: state.coeffs().iter().map(|&z| c64_pair(z)).collect(),
            norm: state.norm(),
            tail_mass: state.tail_mass(0.75),
        }
    }
}

impl StateJson {
    pub fn to_state(&self) -> crate::Result<FockState> {
        FockState::new(
            self.coeffs
                .iter()
                .map(|&[re, im]| Complex64::new(re, im))
                .collect(),
        )
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ParamsJson {
    pub p: f64,
    pub m: f64,
    pub eps: f64,
}

impl From<&PhysicalParams> for ParamsJson {
    fn from(params: &PhysicalParams) -> Self {
        Self {
            p: params.momentum,
            m: params.mass,
            eps: params.energy,
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SolutionDiagnostics {
    pub closed_vs_operator_deviation: f64,
}

/// Envelope for solution and vacuum states.
#[derive(Clone, Debug, Serialize)]
pub struct SolutionEnvelope {
    pub params: ParamsJson,
    pub state: StateJson,
    pub residual: f64,
    pub diagnostics: SolutionDiagnostics,
}

impl SolutionEnvelope {
    pub fn from_solution(params: &PhysicalParams, solution: &WaveSolution) -> Self {
        Self {
            params: params.into(),
            state: (&solution.state).into(),
            residual: solution.residual,
            diagnostics: SolutionDiagnostics {
                closed_vs_operator_deviation: solution.route_deviation,
            },
        }
    }

    pub fn from_state(params: &PhysicalParams, state: &FockState, residual: f64) -> Self {
        Self {
            params: params.into(),
            state: state.into(),
            residual,
            diagnostics: SolutionDiagnostics {
                closed_vs_operator_deviation: 0.0,
            },
        }
    }
}

/// Disentangle report with the oracle diagnostics; `branch_used` is
/// `"paper"` for the delta-parameterized closed form and
/// `"substituted"` for the standard su(1,1) fallback.
#[derive(Clone, Debug, Serialize)]
pub struct DisentangleJson {
    pub input: BchInputJson,
    pub delta: [f64; 2],
    pub factors: FactorsJson,
    pub oracle_deviation: f64,
    pub branch_used: DisentangleBranch,
    pub paper_deviation: f64,
    pub oracle_scale: f64,
    pub margin: usize,
    pub tol: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BchInputJson {
    #[serde(rename = "A")]
    pub a: [f64; 2],
    #[serde(rename = "B")]
    pub b: [f64; 2],
    #[serde(rename = "C")]
    pub c: [f64; 2],
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorsJson {
    pub prefactor: [f64; 2],
    pub plus_exponent: [f64; 2],
    pub h_exponent: [f64; 2],
    pub minus_exponent: [f64; 2],
}

impl From<&crate::metaplectic::DisentangledFactors> for FactorsJson {
    fn from(f: &crate::metaplectic::DisentangledFactors) -> Self {
        Self {
            prefactor: c64_pair(f.prefactor),
            plus_exponent: c64_pair(f.plus_exponent),
            h_exponent: c64_pair(f.h_exponent),
            minus_exponent: c64_pair(f.minus_exponent),
        }
    }
}

impl From<&DisentangleReport> for DisentangleJson {
    fn from(report: &DisentangleReport) -> Self {
        Self {
            input: BchInputJson {
                a: c64_pair(report.input.a),
                b: c64_pair(report.input.b),
                c: c64_pair(report.input.c),
            },
            delta: c64_pair(report.delta),
            factors: (&report.factors).into(),
            oracle_deviation: report.oracle_deviation,
            branch_used: report.branch_used,
            paper_deviation: report.paper_deviation,
            oracle_scale: report.oracle_scale,
            margin: report.margin,
            tol: report.tol,
        }
    }
}

/// `{"mean": ..., "variance": ..., "mandel_q": ..., "odd_even_ratio": ...}`
/// with `null` where a quantity is undefined.
#[derive(Clone, Debug)]
pub struct SpectrumSummaryJson {
    pub mean: f64,
    pub variance: f64,
    pub mandel_q: Option<f64>,
    pub odd_even_ratio: Option<f64>,
}

impl Serialize for SpectrumSummaryJson {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SpectrumSummaryJson", 4)?;
        st.serialize_field("mean", &self.mean)?;
        st.serialize_field("variance", &self.variance)?;
        st.serialize_field("mandel_q", &self.mandel_q)?;
        st.serialize_field("odd_even_ratio", &self.odd_even_ratio)?;
        st.end()
    }
}

impl From<&NumberDistribution> for SpectrumSummaryJson {
    fn from(dist: &NumberDistribution) -> Self {
        Self {
            mean: dist.mean,
            variance: dist.variance,
            mandel_q: dist.mandel_q,
            odd_even_ratio: dist.odd_even_ratio,
        }
    }
}
