//! JSON state files: `{"dims": [m, n], "matrix": [[[re, im], ...], ...]}` for
//! density matrices or `{"dims": [...], "vector": [[re, im], ...]}` for pure
//! states.

use std::path::Path;

use entmoments::states::DEFAULT_STATE_TOL;
use entmoments::{CMatrix, Complex64, PureState, State};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vector: Option<Vec<[f64; 2]>>,
}

impl StateFile {
    pub fn from_state(state: &State) -> StateFile {
        let pair = |z: &Complex64| [z.re, z.im];
        match state {
            State::Pure(psi) => StateFile {
                dims: psi.dims().to_vec(),
                matrix: None,
                vector: Some(psi.amplitudes().iter().map(pair).collect()),
            },
            State::Mixed(rho) => {
                let m = rho.matrix();
                StateFile {
                    dims: rho.dims().to_vec(),
                    matrix: Some((0..m.rows()).map(|i| m.row(i).iter().map(pair).collect()).collect()),
                    vector: None,
                }
            }
        }
    }

    /// Builds and validates the state.
    pub fn into_state(self) -> Result<State> {
        let z = |[re, im]: [f64; 2]| Complex64::new(re, im);
        match (self.matrix, self.vector) {
            (Some(rows), None) => {
                let p = rows.len();
                if p == 0 || rows.iter().any(|r| r.len() != p) {
                    return Err(CliError::Parse("matrix must be a non-empty square array".into()));
                }
                let data = CMatrix::from_vec(p, p, rows.into_iter().flatten().map(z).collect())?;
                Ok(State::Mixed(entmoments::validate(data, &self.dims, DEFAULT_STATE_TOL)?))
            }
            (None, Some(v)) => Ok(State::Pure(PureState::new(v.into_iter().map(z).collect(), &self.dims)?)),
            _ => Err(CliError::Parse(
                "state file needs exactly one of `matrix` or `vector`".into(),
            )),
        }
    }
}

pub fn parse_state(text: &str) -> Result<State> {
    let file: StateFile = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    file.into_state()
}

pub fn load_state(path: &Path) -> Result<State> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_state(&text).map_err(|e| e.context(path.display()))
}

pub fn to_json(state: &State) -> String {
    serde_json::to_string_pretty(&StateFile::from_state(state)).expect("plain data serializes")
}
