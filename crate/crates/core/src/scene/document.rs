use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::hk::QuaternionicSpace;
use crate::matrix::Matrix;
use crate::scalar::Real;
use crate::subvariety::{DegreeStrategy, Subvariety};

/// Default relative comparison tolerance for inequality and oracle checks.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum SceneError {
    #[error("schema violation at {path}: {message}")]
    Schema { path: String, message: String },

    #[error("{path}: {source}")]
    Invalid {
        path: String,
        #[source]
        source: Error,
    },

    #[error("subvariety {name}: {source}")]
    Subvariety {
        name: String,
        #[source]
        source: Error,
    },

    #[error("explicit structure: {0}")]
    Structure(Error),

    #[error("duplicate subvariety name {0}")]
    DuplicateName(String),

    #[error("chains[{chain}]: unresolved name {name}")]
    Unresolved { chain: usize, name: String },

    #[error("chain {chain}: {source}")]
    Chain {
        chain: String,
        #[source]
        source: Error,
    },
}

type Rows = Vec<Vec<f64>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StandardTag {
    Standard,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StructureSpec {
    Standard(StandardTag),
    #[allow(non_snake_case)]
    Explicit {
        I: Rows,
        J: Rows,
        K: Rows,
        g: Rows,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    pub n: usize,
    pub structure: StructureSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubvarietySpec {
    pub name: String,
    /// `4n` rows, one per ambient coordinate; columns span the subspace.
    pub basis: Rows,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<Rows>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strategy: Option<DegreeStrategy>,
}

/// The scene file as written on disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneDocument {
    pub space: SpaceSpec,
    pub subvarieties: Vec<SubvarietySpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub chains: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<OptionsSpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SceneOptions {
    pub seed: u64,
    pub tolerance: f64,
    pub strategy: DegreeStrategy,
}

impl Default for SceneOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            tolerance: DEFAULT_TOLERANCE,
            strategy: DegreeStrategy::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SceneWarning {
    pub subvariety: String,
    pub message: String,
}

/// A validated scene: every name resolves and every subvariety is a valid
/// `I`-complex subspace of the declared space.
#[derive(Clone, Debug)]
pub struct Scene<R> {
    pub space: Arc<QuaternionicSpace<R>>,
    standard: bool,
    pub subvarieties: Vec<Subvariety<R>>,
    /// Indices into `subvarieties`.
    pub chains: Vec<Vec<usize>>,
    pub options: SceneOptions,
    /// Subvarieties of odd complex dimension; their degrees are undefined.
    pub warnings: Vec<SceneWarning>,
}

impl<R: Real> PartialEq for Scene<R> {
    fn eq(&self, other: &Self) -> bool {
        self.standard == other.standard
            && *self.space == *other.space
            && self.subvarieties == other.subvarieties
            && self.chains == other.chains
            && self.options == other.options
    }
}

fn to_matrix<R: Real>(rows: &Rows, path: &str) -> Result<Matrix<R>, SceneError> {
    let rows: Vec<Vec<R>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| R::c(x)).collect())
        .collect();
    Matrix::from_rows(&rows).map_err(|source| SceneError::Invalid {
        path: path.into(),
        source,
    })
}

fn to_rows<R: Real>(m: &Matrix<R>) -> Rows {
    m.to_rows()
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| x.to_f64().unwrap_or(f64::NAN))
                .collect()
        })
        .collect()
}

fn square<R: Real>(rows: &Rows, dim: usize, path: &str) -> Result<Matrix<R>, SceneError> {
    let m = to_matrix(rows, path)?;
    if m.rows() != dim || m.cols() != dim {
        let found = if m.rows() != dim { m.rows() } else { m.cols() };
        return Err(SceneError::Invalid {
            path: path.into(),
            source: Error::DimensionMismatch {
                expected: dim,
                found,
            },
        });
    }
    Ok(m)
}

impl<R: Real> Scene<R> {
    pub fn from_document(doc: &SceneDocument) -> Result<Self, SceneError> {
        let n = doc.space.n;
        let (space, standard) = match &doc.space.structure {
            StructureSpec::Standard(_) => {
                let s = QuaternionicSpace::standard(n).map_err(|source| SceneError::Invalid {
                    path: "space.n".into(),
                    source,
                })?;
                (s, true)
            }
            StructureSpec::Explicit { I, J, K, g } => {
                let dim = 4 * n;
                let i = square(I, dim, "space.structure.I")?;
                let j = square(J, dim, "space.structure.J")?;
                let k = square(K, dim, "space.structure.K")?;
                let g = square(g, dim, "space.structure.g")?;
                (
                    QuaternionicSpace::new(i, j, k, g).map_err(SceneError::Structure)?,
                    false,
                )
            }
        };
        let space = Arc::new(space);

        let mut index = HashMap::new();
        let mut subvarieties = Vec::with_capacity(doc.subvarieties.len());
        let mut warnings = Vec::new();
        for (idx, spec) in doc.subvarieties.iter().enumerate() {
            if index.insert(spec.name.clone(), idx).is_some() {
                return Err(SceneError::DuplicateName(spec.name.clone()));
            }
            let wrap = |source| SceneError::Subvariety {
                name: spec.name.clone(),
                source,
            };
            let basis = to_matrix(&spec.basis, &format!("subvarieties[{idx}].basis"))?;
            let lattice = spec
                .lattice
                .as_ref()
                .map(|l| to_matrix(l, &format!("subvarieties[{idx}].lattice")))
                .transpose()?;
            let x =
                Subvariety::new(space.clone(), spec.name.clone(), basis, lattice).map_err(wrap)?;
            if x.complex_dim() % 2 == 1 {
                warnings.push(SceneWarning {
                    subvariety: spec.name.clone(),
                    message: Error::OddComplexDimension(x.complex_dim()).to_string(),
                });
            }
            subvarieties.push(x);
        }

        let chains = doc
            .chains
            .iter()
            .enumerate()
            .map(|(c, names)| {
                if names.is_empty() {
                    return Err(SceneError::Schema {
                        path: format!("chains[{c}]"),
                        message: "empty chain".into(),
                    });
                }
                names
                    .iter()
                    .map(|name| {
                        index
                            .get(name)
                            .copied()
                            .ok_or_else(|| SceneError::Unresolved {
                                chain: c,
                                name: name.clone(),
                            })
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<usize>>, _>>()?;

        let opts = doc.options.clone().unwrap_or_default();
        let defaults = SceneOptions::default();
        let options = SceneOptions {
            seed: opts.seed.unwrap_or(defaults.seed),
            tolerance: opts.tolerance.unwrap_or(defaults.tolerance),
            strategy: opts.strategy.unwrap_or(defaults.strategy),
        };
        if !(options.tolerance > 0.0) {
            return Err(SceneError::Schema {
                path: "options.tolerance".into(),
                message: "tolerance must be positive".into(),
            });
        }
        Ok(Self {
            space,
            standard,
            subvarieties,
            chains,
            options,
            warnings,
        })
    }

    pub fn to_document(&self) -> SceneDocument {
        let structure = if self.standard {
            StructureSpec::Standard(StandardTag::Standard)
        } else {
            StructureSpec::Explicit {
                I: to_rows(self.space.i()),
                J: to_rows(self.space.j()),
                K: to_rows(self.space.k()),
                g: to_rows(self.space.g()),
            }
        };
        SceneDocument {
            space: SpaceSpec {
                n: self.space.n(),
                structure,
            },
            subvarieties: self
                .subvarieties
                .iter()
                .map(|x| SubvarietySpec {
                    name: x.name().to_string(),
                    basis: to_rows(x.basis()),
                    lattice: x.explicit_lattice().map(to_rows),
                })
                .collect(),
            chains: self
                .chains
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|&i| self.subvarieties[i].name().to_string())
                        .collect()
                })
                .collect(),
            options: Some(OptionsSpec {
                seed: Some(self.options.seed),
                tolerance: Some(self.options.tolerance),
                strategy: Some(self.options.strategy),
            }),
        }
    }

    /// Builds a scene from already-validated parts, keeping the structure
    /// explicit unless it equals the standard one.
    pub fn from_parts(
        subvarieties: Vec<Subvariety<R>>,
        chains: Vec<Vec<usize>>,
        options: SceneOptions,
    ) -> Result<Self, SceneError> {
        let space = subvarieties
            .first()
            .map(|x| x.space().clone())
            .ok_or_else(|| SceneError::Schema {
                path: "subvarieties".into(),
                message: "empty scene".into(),
            })?;
        if let Some(x) = subvarieties.iter().find(|x| **x.space() != *space) {
            return Err(SceneError::Subvariety {
                name: x.name().to_string(),
                source: Error::Chain("different ambient space".into()),
            });
        }
        let standard = QuaternionicSpace::standard(space.n()).is_ok_and(|s| s == *space);
        let doc = Self {
            space,
            standard,
            subvarieties,
            chains,
            options,
            warnings: Vec::new(),
        }
        .to_document();
        Self::from_document(&doc)
    }

    pub fn chain_members(&self, chain: usize) -> Vec<Subvariety<R>> {
        self.chains[chain]
            .iter()
            .map(|&i| self.subvarieties[i].clone())
            .collect()
    }

    pub fn chain_name(&self, chain: usize) -> String {
        self.chains[chain]
            .iter()
            .map(|&i| self.subvarieties[i].name())
            .collect::<Vec<_>>()
            .join(" -> ")
    }
}

/// Parses and validates a scene document.
pub fn parse_scene<R: Real>(text: &str) -> Result<Scene<R>, SceneError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: SceneDocument =
        serde_path_to_error::deserialize(de).map_err(|e| SceneError::Schema {
            path: match e.path().to_string() {
                p if p == "." => "<root>".into(),
                p => p,
            },
            message: e.into_inner().to_string(),
        })?;
    Scene::from_document(&doc)
}

pub fn serialize_scene<R: Real>(scene: &Scene<R>) -> String {
    serde_json::to_string_pretty(&scene.to_document()).expect("scene documents serialize")
}
