//! Model problems: finite-difference anisotropic diffusion in 2D, a
//! cell-centred finite-volume Darcy operator with a lognormal permeability
//! field in 3D, and plain Poisson matrices.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, LogNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sparse::CsrMatrix;

/// Right-hand side of all ones.
pub fn ones(n: usize) -> Vec<f64> {
    vec![1.0; n]
}

/// `tridiag(-1, 2, -1)`.
pub fn poisson_1d(n: usize) -> CsrMatrix {
    let mut t = Vec::with_capacity(3 * n);
    for i in 0..n {
        t.push((i, i, 2.0));
        if i > 0 {
            t.push((i, i - 1, -1.0));
        }
        if i + 1 < n {
            t.push((i, i + 1, -1.0));
        }
    }
    CsrMatrix::from_triplets(n, n, t).expect("indices in range")
}

/// 5-point Laplacian `(4, -1, -1, -1, -1)` on an `nx × ny` interior grid,
/// lexicographic with `x` fastest.
pub fn poisson_2d(nx: usize, ny: usize) -> CsrMatrix {
    let n = nx * ny;
    let id = |ix: usize, iy: usize| ix + nx * iy;
    let mut t = Vec::with_capacity(5 * n);
    for iy in 0..ny {
        for ix in 0..nx {
            let i = id(ix, iy);
            t.push((i, i, 4.0));
            if ix > 0 {
                t.push((i, id(ix - 1, iy), -1.0));
            }
            if ix + 1 < nx {
                t.push((i, id(ix + 1, iy), -1.0));
            }
            if iy > 0 {
                t.push((i, id(ix, iy - 1), -1.0));
            }
            if iy + 1 < ny {
                t.push((i, id(ix, iy + 1), -1.0));
            }
        }
    }
    CsrMatrix::from_triplets(n, n, t).expect("indices in range")
}

/// `-div(K ∇u) = f` on the unit square with
/// `K = [[ε + cos²θ, cosθ sinθ], [cosθ sinθ, ε + sin²θ]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AniSpec {
    pub nx: usize,
    pub ny: usize,
    pub epsilon: f64,
    pub theta: f64,
}

impl AniSpec {
    pub fn new(nx: usize, ny: usize, epsilon: f64, theta: f64) -> Result<Self> {
        let s = AniSpec {
            nx,
            ny,
            epsilon,
            theta,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.nx < 2 || self.ny < 2 {
            return Err(Error::InvalidConfig(format!(
                "grid {}x{} too small (need at least 2x2)",
                self.nx, self.ny
            )));
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) || !self.theta.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "need epsilon > 0 and finite theta, got {} and {}",
                self.epsilon, self.theta
            )));
        }
        Ok(())
    }

    /// `(a, b, c)` entries of the diffusion tensor.
    pub fn tensor(&self) -> (f64, f64, f64) {
        let (s, c) = self.theta.sin_cos();
        (self.epsilon + c * c, self.epsilon + s * s, c * s)
    }
}

/// 9-point finite-difference matrix of the anisotropic operator on the
/// `nx × ny` interior nodes with homogeneous Dirichlet boundary, mesh
/// widths `1/(nx+1)` and `1/(ny+1)`. The mixed derivative uses the
/// four-corner cross difference; corner entries are omitted when the
/// mixed coefficient is exactly zero, leaving the 5-point stencil.
pub fn gen_anisotropic_2d(spec: &AniSpec) -> Result<CsrMatrix> {
    spec.validate()?;
    let (nx, ny) = (spec.nx, spec.ny);
    let hx = 1.0 / (nx as f64 + 1.0);
    let hy = 1.0 / (ny as f64 + 1.0);
    let (ka, kb, kc) = spec.tensor();
    let east = -ka / (hx * hx);
    let north = -kb / (hy * hy);
    let centre = 2.0 * ka / (hx * hx) + 2.0 * kb / (hy * hy);
    let corner = kc / (2.0 * hx * hy);

    let id = |ix: usize, iy: usize| ix + nx * iy;
    let mut t = Vec::with_capacity(9 * nx * ny);
    for iy in 0..ny {
        for ix in 0..nx {
            let i = id(ix, iy);
            t.push((i, i, centre));
            let (w, e, s, n) = (ix > 0, ix + 1 < nx, iy > 0, iy + 1 < ny);
            if w {
                t.push((i, id(ix - 1, iy), east));
            }
            if e {
                t.push((i, id(ix + 1, iy), east));
            }
            if s {
                t.push((i, id(ix, iy - 1), north));
            }
            if n {
                t.push((i, id(ix, iy + 1), north));
            }
            if kc != 0.0 {
                if e && n {
                    t.push((i, id(ix + 1, iy + 1), -corner));
                }
                if w && s {
                    t.push((i, id(ix - 1, iy - 1), -corner));
                }
                if w && n {
                    t.push((i, id(ix - 1, iy + 1), corner));
                }
                if e && s {
                    t.push((i, id(ix + 1, iy - 1), corner));
                }
            }
        }
    }
    CsrMatrix::from_triplets(nx * ny, nx * ny, t)
}

/// Cell-centred 7-point finite-volume problem on the unit cube with a
/// lognormal permeability field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RandPermSpec {
    pub nx: usize,
    pub ny: usize,
    pub nz: usize,
    /// Standard deviation of the (mean one) lognormal permeability.
    pub sigma: f64,
    pub seed: u64,
}

impl RandPermSpec {
    pub fn validate(&self) -> Result<()> {
        if self.nx == 0 || self.ny == 0 || self.nz == 0 {
            return Err(Error::InvalidConfig("grid dimensions must be positive".into()));
        }
        if !(self.sigma >= 0.0 && self.sigma.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "sigma {} must be finite and non-negative",
                self.sigma
            )));
        }
        Ok(())
    }

    /// Seeded cell permeabilities, `x` fastest.
    pub fn permeability(&self) -> Result<Vec<f64>> {
        self.validate()?;
        let n = self.nx * self.ny * self.nz;
        if self.sigma == 0.0 {
            return Ok(vec![1.0; n]);
        }
        // mean 1, standard deviation sigma
        let s2 = (1.0 + self.sigma * self.sigma).ln();
        let dist = LogNormal::new(-0.5 * s2, s2.sqrt())
            .map_err(|e| Error::InvalidConfig(e.to_string()))?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        Ok((0..n).map(|_| dist.sample(&mut rng)).collect())
    }
}

/// Two-point flux matrix with harmonic-mean face transmissibilities and a
/// Dirichlet closure on every boundary face (half-cell distance).
pub fn gen_poisson_3d_randk(spec: &RandPermSpec) -> Result<CsrMatrix> {
    let k = spec.permeability()?;
    let (nx, ny, nz) = (spec.nx, spec.ny, spec.nz);
    let h = [1.0 / nx as f64, 1.0 / ny as f64, 1.0 / nz as f64];
    // face area over centre distance, per axis
    let geom = [
        h[1] * h[2] / h[0],
        h[0] * h[2] / h[1],
        h[0] * h[1] / h[2],
    ];
    let id = |x: usize, y: usize, z: usize| x + nx * (y + ny * z);
    let harmonic = |a: f64, b: f64| 2.0 * a * b / (a + b);

    let n = nx * ny * nz;
    let mut t = Vec::with_capacity(7 * n);
    for z in 0..nz {
        for y in 0..ny {
            for x in 0..nx {
                let i = id(x, y, z);
                let coord = [x, y, z];
                let dims = [nx, ny, nz];
                let mut diag = 0.0;
                for axis in 0..3 {
                    for dir in [-1isize, 1] {
                        let c = coord[axis] as isize + dir;
                        if c < 0 || c >= dims[axis] as isize {
                            diag += 2.0 * k[i] * geom[axis];
                            continue;
                        }
                        let mut nb = coord;
                        nb[axis] = c as usize;
                        let j = id(nb[0], nb[1], nb[2]);
                        let tr = harmonic(k[i], k[j]) * geom[axis];
                        diag += tr;
                        t.push((i, j, -tr));
                    }
                }
                t.push((i, i, diag));
            }
        }
    }
    CsrMatrix::from_triplets(n, n, t)
}
