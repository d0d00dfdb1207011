//! On-disk kernel specification (JSON).
//!
//! ```json
//! {"kind": "sphere", "d": 2, "coeffs": [0.5, 0.3, 0.2], "scale": 1.0}
//!
//! {"kind": "sphere_time", "d": 2, "scale": 1.0,
//!  "terms": [{"a": 0.7, "charfn": {"family": "gaussian", "params": {"sigma": 1.0}}},
//!            {"a": 0.3, "charfn": {"family": "point_mass_at_zero"}}]}
//!
//! {"kind": "product_spheres", "d1": 2, "d2": 3, "matrix": [[0.5, 0.0], [0.0, 0.5]]}
//! ```
//!
//! `scale` is optional (default 1). Coefficients are taken as given; they
//! need not sum to one. Characteristic-function families and their
//! parameters:
//!
//! | family               | params            |
//! |----------------------|-------------------|
//! | `gaussian`           | `sigma`           |
//! | `exponential`        | `rate`            |
//! | `stable`             | `scale`, `alpha`  |
//! | `triangle_sinc`      | `width`           |
//! | `point_mass_at_zero` | none              |

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{
    self, CovarianceKernel, FieldSample, GramMatrix, ProductPointSet, SpaceTimePointSet,
    SpherePointSet,
};
use crate::gegenbauer::GegenbauerBasis;
use crate::product_spheres::ProductSphereKernel;
use crate::schoenberg::SchoenbergSequence;
use crate::spacetime::{CharFnSpec, SpaceTimeKernel, SpaceTimeTerm};

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum KernelSpecFile {
    Sphere {
        d: u32,
        coeffs: Vec<f64>,
        #[serde(default = "one")]
        scale: f64,
    },
    SphereTime {
        d: u32,
        terms: Vec<TermSpec>,
        #[serde(default = "one")]
        scale: f64,
    },
    ProductSpheres {
        d1: u32,
        d2: u32,
        matrix: Vec<Vec<f64>>,
        #[serde(default = "one")]
        scale: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub a: f64,
    pub charfn: CharFnFile,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharFnFile {
    pub family: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, f64>,
}

impl CharFnFile {
    pub fn to_spec(&self) -> Result<CharFnSpec> {
        let expect = |names: &[&str]| -> Result<Vec<f64>> {
            if let Some(extra) = self.params.keys().find(|k| !names.contains(&k.as_str())) {
                return Err(Error::Spec(format!(
                    "unknown parameter `{extra}` for family `{}`",
                    self.family
                )));
            }
            names
                .iter()
                .map(|n| {
                    self.params.get(*n).copied().ok_or_else(|| {
                        Error::Spec(format!("family `{}` needs parameter `{n}`", self.family))
                    })
                })
                .collect()
        };
        match self.family.as_str() {
            "gaussian" => CharFnSpec::gaussian(expect(&["sigma"])?[0]),
            "exponential" => CharFnSpec::exponential(expect(&["rate"])?[0]),
            "stable" => {
                let p = expect(&["scale", "alpha"])?;
                CharFnSpec::stable(p[0], p[1])
            }
            "triangle_sinc" => CharFnSpec::triangle_sinc(expect(&["width"])?[0]),
            "point_mass_at_zero" => {
                expect(&[])?;
                Ok(CharFnSpec::PointMassAtZero)
            }
            other => Err(Error::Spec(format!(
                "unknown characteristic-function family `{other}`"
            ))),
        }
    }

    pub fn from_spec(spec: &CharFnSpec) -> Self {
        let params: BTreeMap<String, f64> = match *spec {
            CharFnSpec::Gaussian { sigma } => [("sigma", sigma)].into_iter().collect_params(),
            CharFnSpec::Exponential { rate } => [("rate", rate)].into_iter().collect_params(),
            CharFnSpec::Stable { scale, alpha } => [("scale", scale), ("alpha", alpha)]
                .into_iter()
                .collect_params(),
            CharFnSpec::TriangleSinc { width } => [("width", width)].into_iter().collect_params(),
            CharFnSpec::PointMassAtZero => BTreeMap::new(),
        };
        Self {
            family: spec.family().to_string(),
            params,
        }
    }
}

trait CollectParams {
    fn collect_params(self) -> BTreeMap<String, f64>;
}

impl<I: Iterator<Item = (&'static str, f64)>> CollectParams for I {
    fn collect_params(self) -> BTreeMap<String, f64> {
        self.map(|(k, v)| (k.to_string(), v)).collect()
    }
}

/// Any of the three kernel types.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyKernel {
    Sphere(SchoenbergSequence),
    SphereTime(SpaceTimeKernel),
    ProductSpheres(ProductSphereKernel),
}

/// Point set matching an [`AnyKernel`].
#[derive(Debug, Clone, PartialEq)]
pub enum AnyPoints {
    Sphere(SpherePointSet),
    SphereTime(SpaceTimePointSet),
    ProductSpheres(ProductPointSet),
}

impl AnyPoints {
    pub fn len(&self) -> usize {
        match self {
            Self::Sphere(p) => p.len(),
            Self::SphereTime(p) => p.len(),
            Self::ProductSpheres(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl KernelSpecFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Spec(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("kernel spec serializes")
    }

    /// Validates into the corresponding domain type.
    pub fn to_kernel(&self) -> Result<AnyKernel> {
        match self {
            Self::Sphere { d, coeffs, scale } => {
                let basis = GegenbauerBasis::for_sphere(*d)?;
                Ok(AnyKernel::Sphere(
                    SchoenbergSequence::new(coeffs.clone(), basis, false)?.with_scale(*scale)?,
                ))
            }
            Self::SphereTime { d, terms, scale } => {
                let basis = GegenbauerBasis::for_sphere(*d)?;
                let terms = terms
                    .iter()
                    .map(|t| {
                        Ok(SpaceTimeTerm {
                            a: t.a,
                            phi: t.charfn.to_spec()?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(AnyKernel::SphereTime(
                    SpaceTimeKernel::new(terms, basis, false)?.with_scale(*scale)?,
                ))
            }
            Self::ProductSpheres {
                d1,
                d2,
                matrix,
                scale,
            } => {
                let b1 = GegenbauerBasis::for_sphere(*d1)?;
                let b2 = GegenbauerBasis::for_sphere(*d2)?;
                Ok(AnyKernel::ProductSpheres(
                    ProductSphereKernel::new(matrix.clone(), b1, b2, false)?.with_scale(*scale)?,
                ))
            }
        }
    }

    pub fn from_kernel(kernel: &AnyKernel) -> Self {
        match kernel {
            AnyKernel::Sphere(s) => Self::Sphere {
                d: s.basis().dimension(),
                coeffs: s.coeffs().to_vec(),
                scale: s.scale(),
            },
            AnyKernel::SphereTime(k) => Self::SphereTime {
                d: k.basis().dimension(),
                terms: k
                    .terms()
                    .iter()
                    .map(|t| TermSpec {
                        a: t.a,
                        charfn: CharFnFile::from_spec(&t.phi),
                    })
                    .collect(),
                scale: k.scale(),
            },
            AnyKernel::ProductSpheres(k) => {
                let (b1, b2) = k.bases();
                Self::ProductSpheres {
                    d1: b1.dimension(),
                    d2: b2.dimension(),
                    matrix: k.matrix().to_vec(),
                    scale: k.scale(),
                }
            }
        }
    }
}

impl AnyKernel {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Sphere(_) => "sphere",
            Self::SphereTime(_) => "sphere_time",
            Self::ProductSpheres(_) => "product_spheres",
        }
    }

    pub fn kernel_id(&self) -> String {
        match self {
            Self::Sphere(k) => k.kernel_id(),
            Self::SphereTime(k) => k.kernel_id(),
            Self::ProductSpheres(k) => k.kernel_id(),
        }
    }

    fn mismatch(&self, points: &AnyPoints) -> Error {
        let found = match points {
            AnyPoints::Sphere(_) => "sphere",
            AnyPoints::SphereTime(_) => "sphere_time",
            AnyPoints::ProductSpheres(_) => "product_spheres",
        };
        Error::GeometryMismatch(format!("{} kernel given {found} points", self.kind()))
    }

    pub fn gram(&self, points: &AnyPoints) -> Result<GramMatrix> {
        match (self, points) {
            (Self::Sphere(k), AnyPoints::Sphere(p)) => fields::gram(k, p),
            (Self::SphereTime(k), AnyPoints::SphereTime(p)) => fields::gram(k, p),
            (Self::ProductSpheres(k), AnyPoints::ProductSpheres(p)) => fields::gram(k, p),
            _ => Err(self.mismatch(points)),
        }
    }

    pub fn sample_factorized(
        &self,
        points: &AnyPoints,
        n_samples: usize,
        seed: u64,
        jitter: f64,
    ) -> Result<FieldSample> {
        let g = self.gram(points)?;
        fields::sample_gram(&g, n_samples, seed, jitter)
    }
}
