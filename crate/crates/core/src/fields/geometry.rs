use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::rng::{substream, Purpose};
use crate::error::{Error, Result};

/// Tolerance on `|‖p‖ - 1|` for points on the sphere.
pub const UNIT_TOL: f64 = 1e-12;

/// Finite point set on `S^d ⊂ R^{d+1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpherePointSet {
    dimension_d: u32,
    points: Vec<Vec<f64>>,
}

impl SpherePointSet {
    pub fn new(dimension_d: u32, points: Vec<Vec<f64>>) -> Result<Self> {
        if dimension_d == 0 {
            return Err(Error::GeometryMismatch(
                "sphere dimension must be >= 1".into(),
            ));
        }
        let ambient = dimension_d as usize + 1;
        for (index, p) in points.iter().enumerate() {
            if p.len() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: p.len(),
                });
            }
            let norm = norm(p);
            if !((norm - 1.0).abs() <= UNIT_TOL) {
                return Err(Error::NotUnitVector { index, norm });
            }
        }
        Ok(Self {
            dimension_d,
            points,
        })
    }

    /// Projects each nonzero vector onto the sphere.
    pub fn normalized(dimension_d: u32, points: Vec<Vec<f64>>) -> Result<Self> {
        let points = points
            .into_iter()
            .enumerate()
            .map(|(index, mut p)| {
                let n = norm(&p);
                if !(n > 0.0 && n.is_finite()) {
                    return Err(Error::NotUnitVector { index, norm: n });
                }
                p.iter_mut().for_each(|v| *v /= n);
                Ok(p)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(dimension_d, points)
    }

    pub fn dimension(&self) -> u32 {
        self.dimension_d
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn describe(&self) -> String {
        format!("{} points on S^{}", self.len(), self.dimension_d)
    }
}

/// Points on `S^d × R`: a sphere point and a time per site.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceTimePointSet {
    sphere: SpherePointSet,
    times: Vec<f64>,
}

impl SpaceTimePointSet {
    pub fn new(sphere: SpherePointSet, times: Vec<f64>) -> Result<Self> {
        if sphere.len() != times.len() {
            return Err(Error::DimensionMismatch {
                expected: sphere.len(),
                found: times.len(),
            });
        }
        if let Some(&t) = times.iter().find(|t| !t.is_finite()) {
            return Err(Error::Domain {
                value: t,
                domain: "finite times",
            });
        }
        Ok(Self { sphere, times })
    }

    pub fn sphere(&self) -> &SpherePointSet {
        &self.sphere
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn describe(&self) -> String {
        format!("{} points on S^{} x R", self.len(), self.sphere.dimension())
    }
}

/// Points on `S^{d1} × S^{d2}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductPointSet {
    first: SpherePointSet,
    second: SpherePointSet,
}

impl ProductPointSet {
    pub fn new(first: SpherePointSet, second: SpherePointSet) -> Result<Self> {
        if first.len() != second.len() {
            return Err(Error::DimensionMismatch {
                expected: first.len(),
                found: second.len(),
            });
        }
        Ok(Self { first, second })
    }

    pub fn first(&self) -> &SpherePointSet {
        &self.first
    }

    pub fn second(&self) -> &SpherePointSet {
        &self.second
    }

    pub fn len(&self) -> usize {
        self.first.len()
    }

    pub fn is_empty(&self) -> bool {
        self.first.is_empty()
    }

    pub fn describe(&self) -> String {
        format!(
            "{} points on S^{} x S^{}",
            self.len(),
            self.first.dimension(),
            self.second.dimension()
        )
    }
}

/// `n` independent uniform points on `S^d`: normalized standard Gaussian
/// vectors in `R^{d+1}`, drawn from the points substream of `seed`.
pub fn uniform_sphere_points(d: u32, n: usize, seed: u64) -> Result<SpherePointSet> {
    if d == 0 {
        return Err(Error::GeometryMismatch(
            "sphere dimension must be >= 1".into(),
        ));
    }
    let mut rng = substream(seed, Purpose::Points, 0);
    let ambient = d as usize + 1;
    let points = (0..n)
        .map(|_| loop {
            let mut v: Vec<f64> = (0..ambient)
                .map(|_| StandardNormal.sample(&mut rng))
                .collect();
            let r = norm(&v);
            if r > 1e-300 {
                v.iter_mut().for_each(|c| *c /= r);
                break v;
            }
        })
        .collect();
    SpherePointSet::new(d, points)
}

/// `n` times drawn uniformly from `[0, t_max]`.
pub fn uniform_times(n: usize, t_max: f64, seed: u64) -> Vec<f64> {
    use rand::Rng;
    let mut rng = substream(seed, Purpose::Times, 0);
    (0..n).map(|_| rng.random::<f64>() * t_max).collect()
}

/// Cosine of the geodesic angle between two unit vectors, clamped to `[-1, 1]`.
pub fn geodesic_cosine(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            found: q.len(),
        });
    }
    for (index, v) in [p, q].into_iter().enumerate() {
        let n = norm(v);
        if !((n - 1.0).abs() <= UNIT_TOL) {
            return Err(Error::NotUnitVector { index, norm: n });
        }
    }
    Ok(geodesic_cosine_unchecked(p, q))
}

#[inline]
pub(crate) fn geodesic_cosine_unchecked(p: &[f64], q: &[f64]) -> f64 {
    let dot: f64 = p.iter().zip(q).map(|(a, b)| a * b).sum();
    dot.clamp(-1.0, 1.0)
}

fn norm(p: &[f64]) -> f64 {
    p.iter().map(|v| v * v).sum::<f64>().sqrt()
}
