use crate::algorithm::Backend;
use crate::error::Result;
use crate::problem::{validate, ProjectionInstance, SolverStats, SparseProjection};
use crate::sum::Neumaier;

/// Input of an l1-ball projection: `d` and radius `b > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct BallInstance {
    d: Vec<f64>,
    b: f64,
}

impl BallInstance {
    pub fn new(d: Vec<f64>, b: f64) -> Result<Self> {
        validate(&d, b)?;
        Ok(Self { d, b })
    }

    pub fn d(&self) -> &[f64] {
        &self.d
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BallProjection {
    /// Signed values. For interior inputs this holds the nonzero entries of
    /// `d` and `tau = 0`.
    pub proj: SparseProjection,
    pub interior: bool,
    pub stats: SolverStats,
}

impl BallProjection {
    pub fn to_dense(&self, n: usize) -> Vec<f64> {
        self.proj.to_dense(n)
    }
}

/// Project onto `{v : ||v||_1 <= b}`.
///
/// Inputs inside the ball come back unchanged. Otherwise `|d|` restricted to
/// its nonzero entries is projected onto the `b`-simplex and signs are put
/// back. Zero entries never become active because the pivot is positive.
pub fn project_l1_ball(inst: &BallInstance, backend: &Backend) -> Result<BallProjection> {
    let d = inst.d();
    let nonzero: Vec<usize> = (0..d.len()).filter(|&i| d[i] != 0.0).collect();
    let norm = nonzero.iter().map(|&i| d[i].abs()).collect::<Neumaier>().value();
    if norm <= inst.b() {
        let values = nonzero.iter().map(|&i| d[i]).collect();
        return Ok(BallProjection {
            proj: SparseProjection { tau: 0.0, indices: nonzero, values },
            interior: true,
            stats: SolverStats { elements_scanned: d.len(), ..Default::default() },
        });
    }
    let abs = ProjectionInstance::new(nonzero.iter().map(|&i| d[i].abs()).collect(), inst.b())?;
    let (local, mut stats) = backend.project(&abs)?;
    stats.elements_scanned += d.len();
    let indices: Vec<usize> = local.indices.iter().map(|&j| nonzero[j]).collect();
    let values = indices.iter().zip(&local.values).map(|(&i, &v)| v.copysign(d[i])).collect();
    Ok(BallProjection { proj: SparseProjection { tau: local.tau, indices, values }, interior: false, stats })
}
