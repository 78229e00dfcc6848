//! Index bundle of the chiral Dirac family over the torus of flat
//! connections.
//!
//! The family `c -> D+_c` splits over Fourier modes; the block on mode `k`
//! is invertible unless `k + c = 0`. The first Chern class of the index
//! bundle is therefore computed by localization: around each kernel jump the
//! determinant of the jumping block winds, and the windings add up to
//! `<c_1(ind), [T]>`. A plaquette (Fukui-Hatsugai-Suzuki) Chern number for
//! arbitrary frame fields on a closed grid serves as an independent check.
//!
//! Orientation: the parameter plane is oriented by `dc_1 ^ dc_2` and loops
//! run counterclockwise.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::clifford::{build_clifford, CliffordRep};
use crate::error::{Error, Result};
use crate::exact::{int, Rational};
use crate::spectral_flow::phase_winding;
use crate::torus_dirac::{chiral_index, modes, TwistParameter};

/// Determinant modulus below which a loop is considered to pass through a
/// zero of the chiral symbol.
pub const NEAR_ZERO: f64 = 1e-10;
/// Smallest admissible singular value of the augmented map `[D+ | W]`.
pub const CERTIFICATE_THRESHOLD: f64 = 1e-8;
/// Smallest admissible link overlap in the plaquette algorithm.
pub const MIN_OVERLAP: f64 = 1e-6;

const ORIENTATION: &str = "parameter plane oriented by dc1^dc2; loops counterclockwise";

/// Fundamental domain of the parameter torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    /// `(-1/2, 1/2]^n`
    Centered,
    /// `[0, 1)^n`
    Unit,
}

impl Domain {
    fn contains(self, x: &Rational) -> bool {
        let half = Rational::new(1.into(), 2.into());
        match self {
            Domain::Centered => *x > -half.clone() && *x <= half,
            Domain::Unit => *x >= Rational::zero() && *x < Rational::one(),
        }
    }
}

/// A twist where `ker D+` is nontrivial, with the modes responsible.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JumpPoint {
    pub location: TwistParameter,
    pub modes: Vec<Vec<i64>>,
}

/// All twists in the fundamental domain where some mode of the box
/// `|k|_inf <= cutoff` satisfies `k + c = 0`.
pub fn kernel_jump_loci(n: usize, cutoff: i64, domain: Domain) -> Result<Vec<JumpPoint>> {
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    build_clifford(n)?;
    if cutoff < 1 {
        return Err(Error::CutoffTooSmall(cutoff));
    }
    let cutoff = u32::try_from(cutoff).map_err(|_| Error::CutoffTooSmall(cutoff))?;
    let mut jumps: Vec<JumpPoint> = Vec::new();
    for k in modes(n, cutoff) {
        let c: Vec<Rational> = k.iter().map(|&kj| -int(kj)).collect();
        if !c.iter().all(|x| domain.contains(x)) {
            continue;
        }
        let location = TwistParameter::new(c)?;
        match jumps.iter_mut().find(|j| j.location == location) {
            Some(j) => j.modes.push(k),
            None => jumps.push(JumpPoint { location, modes: vec![k] }),
        }
    }
    Ok(jumps)
}

/// Floating-point chiral symbols `D+_k(c) : S+ -> S-` in orthonormal bases
/// of the chiral subspaces.
pub struct ChiralSymbol {
    dim: usize,
    /// `B-^* a_j B+` for each generator.
    blocks: Vec<DMatrix<Complex64>>,
}

impl ChiralSymbol {
    pub fn new(n: usize) -> Result<Self> {
        if n % 2 == 1 {
            return Err(Error::OddDimension(n));
        }
        let rep = build_clifford(n)?;
        Self::from_rep(&rep)
    }

    fn from_rep(rep: &CliffordRep) -> Result<Self> {
        let (plus, minus) = rep.chiral_bases()?;
        let bp = orthonormal(&plus, rep.spinor_rank());
        let bm = orthonormal(&minus, rep.spinor_rank());
        let blocks = rep.generators().iter().map(|a| bm.adjoint() * a.to_complex64() * &bp).collect();
        Ok(ChiralSymbol { dim: rep.dim(), blocks })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Size of one chiral block (half the spinor rank).
    pub fn size(&self) -> usize {
        self.blocks[0].nrows()
    }

    /// `D+_k(c) = -i sum_j (k_j + c_j) a_j` restricted to `S+ -> S-`.
    pub fn at(&self, k: &[i64], c: &[f64]) -> DMatrix<Complex64> {
        let h = self.size();
        let mut out = DMatrix::zeros(h, h);
        for (j, b) in self.blocks.iter().enumerate() {
            out += b * Complex64::new(0.0, -(k[j] as f64 + c[j]));
        }
        out
    }
}

fn orthonormal(columns: &[Vec<crate::clifford::GaussInt>], size: usize) -> DMatrix<Complex64> {
    let m = DMatrix::from_fn(size, columns.len(), |i, j| {
        let z = columns[j][i];
        Complex64::new(z.re as f64, z.im as f64)
    });
    m.qr().q()
}

fn check_loop(n: usize, radius: f64, samples: usize) -> Result<()> {
    if n != 2 {
        return Err(Error::WrongDimension { expected: 2, got: n });
    }
    if !(radius > 0.0 && radius < 1.0) {
        return Err(Error::Unsupported(format!("loop radius {radius} must lie in (0, 1)")));
    }
    if samples < 4 {
        return Err(Error::Unsupported("a loop needs at least four samples".into()));
    }
    Ok(())
}

fn loop_point(center: &[f64], radius: f64, j: usize, samples: usize) -> [f64; 2] {
    let theta = 2.0 * PI * j as f64 / samples as f64;
    [center[0] + radius * theta.cos(), center[1] + radius * theta.sin()]
}

fn mode_winding(sym: &ChiralSymbol, k: &[i64], center: &[f64], radius: f64, samples: usize) -> Result<i64> {
    let mut dets = Vec::with_capacity(samples);
    for j in 0..samples {
        let c = loop_point(center, radius, j, samples);
        let d = sym.at(k, &c).determinant();
        if d.norm() < NEAR_ZERO {
            return Err(Error::NearZero { index: j, modulus: d.norm(), threshold: NEAR_ZERO });
        }
        dets.push(d);
    }
    phase_winding(&dets, PI / 2.0)
}

/// Winding number of the determinant of the jumping block along the
/// counterclockwise circle of radius `radius` around the jump.
pub fn local_winding_degree(jump: &JumpPoint, radius: f64, samples: usize) -> Result<i64> {
    let n = jump.location.dim();
    check_loop(n, radius, samples)?;
    let sym = ChiralSymbol::new(n)?;
    let center = jump.location.to_f64();
    jump.modes.iter().map(|k| mode_winding(&sym, k, &center, radius, samples)).sum()
}

/// Winding of the determinant of the full truncated chiral operator around
/// an arbitrary circle: the sum of the windings of every mode block. Zero
/// when the disc contains no jump.
pub fn winding_around(center: &[f64], radius: f64, samples: usize, cutoff: i64) -> Result<i64> {
    check_loop(center.len(), radius, samples)?;
    if cutoff < 1 {
        return Err(Error::CutoffTooSmall(cutoff));
    }
    let sym = ChiralSymbol::new(2)?;
    let mode_list: Vec<Vec<i64>> = modes(2, cutoff as u32).collect();
    mode_list
        .par_iter()
        .map(|k| mode_winding(&sym, k, center, radius, samples))
        .collect::<Result<Vec<_>>>()
        .map(|w| w.into_iter().sum())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyIndexReport {
    pub dim: usize,
    pub cutoff: i64,
    pub jump_points: Vec<JumpPoint>,
    pub local_degrees: Vec<i64>,
    pub total_c1: i64,
    /// Index of a single operator of the family (the rank of the index bundle).
    pub rank: i64,
    pub convention: String,
}

impl FamilyIndexReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

/// First Chern number of the index bundle of the chiral family on `T^2`.
pub fn family_index_t2(cutoff: i64, radius: f64, samples: usize) -> Result<FamilyIndexReport> {
    let jump_points = kernel_jump_loci(2, cutoff, Domain::Centered)?;
    let local_degrees =
        jump_points.iter().map(|j| local_winding_degree(j, radius, samples)).collect::<Result<Vec<_>>>()?;
    let rank = chiral_index(2, &TwistParameter::from_f64(&[0.5, 0.25])?, cutoff)?.index;
    Ok(FamilyIndexReport {
        dim: 2,
        cutoff,
        total_c1: local_degrees.iter().sum(),
        jump_points,
        local_degrees,
        rank,
        convention: ORIENTATION.into(),
    })
}

/// Square grid `c = (-1/2 + (i + offset)/m, -1/2 + (j + offset)/m)`,
/// `0 <= i, j < m`, over the centered fundamental domain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub m: usize,
    pub offset: f64,
}

impl GridSpec {
    pub fn points(&self) -> Vec<[f64; 2]> {
        let m = self.m as f64;
        let coord = |i: usize| -0.5 + (i as f64 + self.offset) / m;
        (0..self.m).flat_map(|i| (0..self.m).map(move |j| [coord(i), coord(j)])).collect()
    }
}

/// Fiber of the index bundle at one grid point.
#[derive(Clone, Debug)]
pub struct WFiber {
    pub point: [f64; 2],
    /// Smallest singular value of the augmented map `[D+_c | iota_W]`.
    pub certificate: f64,
    /// Orthonormal columns spanning `V_c = (D+_c)^{-1}(W)` in the truncated `S+`.
    pub frame: DMatrix<Complex64>,
}

impl WFiber {
    pub fn dim(&self) -> usize {
        self.frame.ncols()
    }
}

/// Atiyah's construction at finite truncation: a subspace `W` of the target
/// spanned by whole `S-` mode blocks, and at each grid point the preimage
/// `V_c` of `W`. The family index is `[V] - [C^{dim W}]`.
#[derive(Clone, Debug)]
pub struct WConstruction {
    pub cutoff: i64,
    pub w_modes: Vec<Vec<i64>>,
    pub w_dim: usize,
    pub fibers: Vec<WFiber>,
}

impl WConstruction {
    /// `dim V - dim W` if constant over the grid.
    pub fn index_rank(&self) -> Option<i64> {
        let first = self.fibers.first()?.dim();
        if self.fibers.iter().all(|f| f.dim() == first) {
            Some(first as i64 - self.w_dim as i64)
        } else {
            None
        }
    }

    pub fn min_certificate(&self) -> f64 {
        self.fibers.iter().map(|f| f.certificate).fold(f64::INFINITY, f64::min)
    }
}

/// Builds `V_c` on `grid` for the chiral family on `T^2`, with `W` the sum of
/// the `S-` blocks of `w_modes`. Fails with [`Error::CertificateFailed`] at
/// the first grid point where `Im D+_c + W` is not the whole truncated target.
pub fn build_w_construction(n: usize, cutoff: i64, grid: GridSpec, w_modes: &[Vec<i64>]) -> Result<WConstruction> {
    if n != 2 {
        return Err(Error::WrongDimension { expected: 2, got: n });
    }
    if cutoff < 1 {
        return Err(Error::CutoffTooSmall(cutoff));
    }
    if grid.m == 0 {
        return Err(Error::Unsupported("grid resolution must be positive".into()));
    }
    let mode_list: Vec<Vec<i64>> = modes(n, cutoff as u32).collect();
    let mut w_modes = w_modes.to_vec();
    w_modes.sort();
    w_modes.dedup();
    if let Some(k) = w_modes.iter().find(|k| !mode_list.contains(k)) {
        return Err(Error::InvalidTwist(format!("mode {k:?} of W lies outside the truncation")));
    }
    let sym = ChiralSymbol::new(n)?;
    let h = sym.size();
    let total = h * mode_list.len();
    let fibers = grid
        .points()
        .par_iter()
        .map(|&point| {
            let mut certificate = f64::INFINITY;
            let mut columns: Vec<nalgebra::DVector<Complex64>> = Vec::new();
            for (b, k) in mode_list.iter().enumerate() {
                let block = sym.at(k, &point);
                let in_w = w_modes.contains(k);
                let mut aug = DMatrix::zeros(h, if in_w { 2 * h } else { h });
                aug.view_mut((0, 0), (h, h)).copy_from(&block);
                if in_w {
                    aug.view_mut((0, h), (h, h)).fill_with_identity();
                }
                let svd = aug.svd(in_w, true);
                let sigma = svd.singular_values.iter().copied().fold(f64::INFINITY, f64::min);
                certificate = certificate.min(sigma);
                if sigma < CERTIFICATE_THRESHOLD {
                    return Err(Error::CertificateFailed {
                        point: point.to_vec(),
                        sigma,
                        threshold: CERTIFICATE_THRESHOLD,
                    });
                }
                if in_w {
                    // all of S+_k maps into S-_k
                    for i in 0..h {
                        let mut v = nalgebra::DVector::zeros(total);
                        v[b * h + i] = Complex64::one();
                        columns.push(v);
                    }
                }
                // blocks outside W are injective once the certificate holds
            }
            let frame = if columns.is_empty() {
                DMatrix::zeros(total, 0)
            } else {
                DMatrix::from_columns(&columns)
            };
            Ok(WFiber { point, certificate, frame })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WConstruction { cutoff, w_dim: h * w_modes.len(), w_modes, fibers })
}

type Wrap = Vec<DMatrix<Complex64>>;

/// Identification of the grid edges.
#[derive(Clone, Debug)]
pub enum Boundary {
    Periodic,
    /// `frame(m1, j) = wrap1[j] * frame(0, j)` and
    /// `frame(i, m2) = wrap2[i] * frame(i, 0)`, with unitary `wrap` matrices
    /// acting on the ambient space.
    Twisted { wrap1: Wrap, wrap2: Wrap },
}

/// Frames of a rank-`r` subbundle sampled on an `m1 x m2` grid covering a
/// closed surface; `frames[i * m2 + j]` has orthonormal columns.
#[derive(Clone, Debug)]
pub struct FrameGrid {
    pub m1: usize,
    pub m2: usize,
    pub frames: Vec<DMatrix<Complex64>>,
    pub boundary: Boundary,
}

impl FrameGrid {
    fn frame(&self, i: usize, j: usize) -> DMatrix<Complex64> {
        let (wi, wj) = (i == self.m1, j == self.m2);
        let base = &self.frames[(i % self.m1) * self.m2 + j % self.m2];
        match &self.boundary {
            Boundary::Periodic => base.clone(),
            Boundary::Twisted { wrap1, wrap2 } => {
                let mut f = base.clone();
                if wj {
                    f = &wrap2[i % self.m1] * f;
                }
                if wi {
                    f = &wrap1[j % self.m2] * f;
                }
                f
            }
        }
    }

    fn validate(&self) -> Result<()> {
        if self.m1 < 2 || self.m2 < 2 || self.frames.len() != self.m1 * self.m2 {
            return Err(Error::InvalidFrames("frame count does not match the grid".into()));
        }
        let (rows, cols) = self.frames[0].shape();
        if cols == 0 || self.frames.iter().any(|f| f.shape() != (rows, cols)) {
            return Err(Error::InvalidFrames("frames must share a nonzero shape".into()));
        }
        if let Boundary::Twisted { wrap1, wrap2 } = &self.boundary {
            if wrap1.len() != self.m2 || wrap2.len() != self.m1 {
                return Err(Error::InvalidFrames("wrap matrices do not match the grid".into()));
            }
        }
        Ok(())
    }
}

fn link(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>, i: usize, j: usize) -> Result<Complex64> {
    let d = (a.adjoint() * b).determinant();
    let overlap = d.norm();
    if overlap < MIN_OVERLAP {
        return Err(Error::GridTooCoarse { i, j, overlap, threshold: MIN_OVERLAP });
    }
    Ok(d / overlap)
}

/// Plaquette Chern number `(1/2 pi) sum arg(U_1 U_2 U_1^{-1} U_2^{-1})`,
/// with `U_mu` the normalized determinant of frame overlaps along each link.
pub fn fhs_chern_number(grid: &FrameGrid) -> Result<i64> {
    grid.validate()?;
    let (m1, m2) = (grid.m1, grid.m2);
    let fluxes = (0..m1 * m2)
        .into_par_iter()
        .map(|p| {
            let (i, j) = (p / m2, p % m2);
            let f00 = grid.frame(i, j);
            let f10 = grid.frame(i + 1, j);
            let f11 = grid.frame(i + 1, j + 1);
            let f01 = grid.frame(i, j + 1);
            let u = link(&f00, &f10, i, j)? * link(&f10, &f11, i, j)? * link(&f11, &f01, i, j)? * link(&f01, &f00, i, j)?;
            Ok(u.arg())
        })
        .collect::<Result<Vec<f64>>>()?;
    let total: f64 = fluxes.iter().sum();
    Ok((total / (2.0 * PI)).round() as i64)
}

/// `h(c) = sin c1 sx + sin c2 sy + (m0 + cos c1 + cos c2) sz`.
pub fn two_band_hamiltonian(m0: f64, c1: f64, c2: f64) -> DMatrix<Complex64> {
    let (x, y, z) = (c1.sin(), c2.sin(), m0 + c1.cos() + c2.cos());
    DMatrix::from_row_slice(2, 2, &[
        Complex64::new(z, 0.0),
        Complex64::new(x, -y),
        Complex64::new(x, y),
        Complex64::new(-z, 0.0),
    ])
}

/// Lower-band eigenvectors of [`two_band_hamiltonian`] on the periodic
/// `m x m` grid over `[0, 2 pi)^2`.
pub fn two_band_lower_frames(m0: f64, m: usize) -> FrameGrid {
    let frames = (0..m * m)
        .map(|p| {
            let c1 = 2.0 * PI * (p / m) as f64 / m as f64;
            let c2 = 2.0 * PI * (p % m) as f64 / m as f64;
            let eig = two_band_hamiltonian(m0, c1, c2).symmetric_eigen();
            let low = if eig.eigenvalues[0] <= eig.eigenvalues[1] { 0 } else { 1 };
            eig.eigenvectors.columns(low, 1).into_owned()
        })
        .collect();
    FrameGrid { m1: m, m2: m, frames, boundary: Boundary::Periodic }
}
