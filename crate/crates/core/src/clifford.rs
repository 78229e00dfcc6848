//! Complex Clifford generators in every dimension.
//!
//! The generators `a_1, ..., a_n` are skew-Hermitian `N x N` matrices with
//! `N = 2^{floor(n/2)}`, squaring to `-I` and anticommuting pairwise. All
//! entries lie in `{0, ±1, ±i}`, so they are stored as Gaussian integers and
//! every relation is checked exactly.
//!
//! Construction is recursive. For odd `n` the generators of dimension
//! `n - 1` are kept and `i * omega_{n-1}` is put in front of them. For even
//! `n` the generators `b_j` of dimension `n - 1` are doubled into
//!
//! ```text
//! a_1 = [[0, -I], [I, 0]],   a_{j+1} = [[0, -b_j^*], [b_j, 0]]
//! ```
//!
//! This reproduces the standard low-dimensional choices: `a_1 = i` for the
//! circle, the two real/imaginary `2 x 2` matrices for the plane, the three
//! Pauli-type matrices for `n = 3`, and the `4 x 4` block matrices for `n = 4`.

use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::gaussian_rank;

pub type GaussInt = Complex<i64>;

/// Default upper bound on the dimension (spinor rank 64).
pub const MAX_DIMENSION: usize = 12;

const ZERO: GaussInt = Complex::new(0, 0);
const ONE: GaussInt = Complex::new(1, 0);
const I: GaussInt = Complex::new(0, 1);

/// Square matrix with Gaussian-integer entries, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussMatrix {
    size: usize,
    entries: Vec<GaussInt>,
}

impl GaussMatrix {
    pub fn zeros(size: usize) -> Self {
        GaussMatrix { size, entries: vec![ZERO; size * size] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size);
        for i in 0..size {
            m.entries[i * size + i] = ONE;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<GaussInt>]) -> Self {
        let size = rows.len();
        assert!(rows.iter().all(|r| r.len() == size), "matrix must be square");
        GaussMatrix { size, entries: rows.concat() }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> GaussInt {
        self.entries[row * self.size + col]
    }

    fn set(&mut self, row: usize, col: usize, v: GaussInt) {
        self.entries[row * self.size + col] = v;
    }

    pub fn rows(&self) -> Vec<Vec<GaussInt>> {
        self.entries.chunks(self.size).map(<[_]>::to_vec).collect()
    }

    pub fn mul(&self, other: &GaussMatrix) -> GaussMatrix {
        assert_eq!(self.size, other.size);
        let n = self.size;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * other.entries[k * n + j];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &GaussMatrix) -> GaussMatrix {
        assert_eq!(self.size, other.size);
        GaussMatrix {
            size: self.size,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, s: GaussInt) -> GaussMatrix {
        GaussMatrix { size: self.size, entries: self.entries.iter().map(|a| a * s).collect() }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> GaussMatrix {
        let n = self.size;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.entries[i * n + j].conj();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| *e == ZERO)
    }

    /// Exact rank over `Q(i)`.
    pub fn rank(&self) -> usize {
        gaussian_rank(
            self.rows()
                .into_iter()
                .map(|r| r.into_iter().map(|z| Complex::new(BigInt::from(z.re), BigInt::from(z.im))).collect())
                .collect(),
        )
    }

    pub fn to_complex64(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.size, self.size, |i, j| {
            let z = self.get(i, j);
            Complex64::new(z.re as f64, z.im as f64)
        })
    }

    /// `[[0, -b^*], [b, 0]]` for `top_right = -b^*`, `bottom_left = b`.
    fn off_diagonal(top_right: &GaussMatrix, bottom_left: &GaussMatrix) -> GaussMatrix {
        let h = top_right.size;
        let mut out = Self::zeros(2 * h);
        for i in 0..h {
            for j in 0..h {
                out.set(i, h + j, top_right.get(i, j));
                out.set(h + i, j, bottom_left.get(i, j));
            }
        }
        out
    }
}

impl fmt::Debug for GaussMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows().iter().map(|r| r.iter().map(|z| (z.re, z.im)).collect::<Vec<_>>())).finish()
    }
}

/// Minimal complex representation of the Clifford algebra in dimension `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordRep {
    dim: usize,
    rank: usize,
    generators: Vec<GaussMatrix>,
    chirality: Option<GaussMatrix>,
}

/// Chiral projector `P = (I ± omega) / 2`, stored as `2P` to stay integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiralProjector {
    doubled: GaussMatrix,
}

impl ChiralProjector {
    pub fn doubled(&self) -> &GaussMatrix {
        &self.doubled
    }

    /// `P^2 = P`, i.e. `(2P)^2 = 2 (2P)`.
    pub fn is_idempotent(&self) -> bool {
        self.doubled.mul(&self.doubled) == self.doubled.scale(Complex::new(2, 0))
    }

    pub fn rank(&self) -> usize {
        self.doubled.rank()
    }
}

/// Outcome of checking every defining relation of a representation.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RelationReport {
    pub dim: usize,
    pub spinor_rank: usize,
    pub squares_to_minus_identity: bool,
    pub anticommute: bool,
    pub skew_hermitian: bool,
    /// `None` in odd dimensions.
    pub chirality_ok: Option<bool>,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.squares_to_minus_identity
            && self.anticommute
            && self.skew_hermitian
            && self.chirality_ok.unwrap_or(true)
    }
}

pub fn spinor_rank(n: usize) -> usize {
    1 << (n / 2)
}

pub fn build_clifford(n: usize) -> Result<CliffordRep> {
    build_clifford_with_limit(n, MAX_DIMENSION)
}

pub fn build_clifford_with_limit(n: usize, max_dim: usize) -> Result<CliffordRep> {
    if n < 1 || n > max_dim {
        return Err(Error::DimensionOutOfRange { dim: n, min: 1, max: max_dim });
    }
    let generators = generators_for(n);
    let chirality = n.is_multiple_of(2).then(|| chirality_of(&generators, spinor_rank(n)));
    Ok(CliffordRep { dim: n, rank: spinor_rank(n), generators, chirality })
}

fn generators_for(n: usize) -> Vec<GaussMatrix> {
    if n == 0 {
        return Vec::new();
    }
    let prev = generators_for(n - 1);
    if n % 2 == 1 {
        let omega = chirality_of(&prev, spinor_rank(n - 1));
        let mut out = vec![omega.scale(I)];
        out.extend(prev);
        out
    } else {
        let h = spinor_rank(n - 1);
        let id = GaussMatrix::identity(h);
        let mut out = vec![GaussMatrix::off_diagonal(&id.scale(-ONE), &id)];
        out.extend(prev.iter().map(|b| GaussMatrix::off_diagonal(&b.adjoint().scale(-ONE), b)));
        out
    }
}

/// `omega = i^{n/2} a_1 ... a_n` for even `n` (identity when `n = 0`).
fn chirality_of(generators: &[GaussMatrix], size: usize) -> GaussMatrix {
    let product = generators.iter().fold(GaussMatrix::identity(size), |acc, a| acc.mul(a));
    let phase = match (generators.len() / 2) % 4 {
        0 => ONE,
        1 => I,
        2 => -ONE,
        _ => -I,
    };
    product.scale(phase)
}

impl CliffordRep {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Spinor rank `N = 2^{floor(n/2)}`.
    pub fn spinor_rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[GaussMatrix] {
        &self.generators
    }

    pub fn chirality(&self) -> Option<&GaussMatrix> {
        self.chirality.as_ref()
    }

    pub fn check_relations(&self) -> RelationReport {
        let n = self.rank;
        let minus_id = GaussMatrix::identity(n).scale(-ONE);
        let gens = &self.generators;
        let squares = gens.iter().all(|a| a.mul(a) == minus_id);
        let mut anticommute = true;
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                anticommute &= gens[i].mul(&gens[j]).add(&gens[j].mul(&gens[i])).is_zero();
            }
        }
        let skew = gens.iter().all(|a| a.adjoint() == a.scale(-ONE));
        let chirality_ok = self.chirality.as_ref().map(|w| {
            let id = GaussMatrix::identity(n);
            let involutive = w.mul(w) == id;
            let hermitian = w.adjoint() == *w;
            let anti = gens.iter().all(|a| w.mul(a).add(&a.mul(w)).is_zero());
            let plus = id.add(w).rank();
            let minus = id.add(&w.scale(-ONE)).rank();
            involutive && hermitian && anti && plus == n / 2 && minus == n / 2
        });
        RelationReport {
            dim: self.dim,
            spinor_rank: n,
            squares_to_minus_identity: squares,
            anticommute,
            skew_hermitian: skew,
            chirality_ok,
        }
    }

    /// `(P+, P-)` with `P± = (I ± omega) / 2`.
    pub fn chirality_projectors(&self) -> Result<(ChiralProjector, ChiralProjector)> {
        let w = self.chirality.as_ref().ok_or(Error::OddDimension(self.dim))?;
        let id = GaussMatrix::identity(self.rank);
        Ok((
            ChiralProjector { doubled: id.add(w) },
            ChiralProjector { doubled: id.add(&w.scale(-ONE)) },
        ))
    }

    /// Exact spanning columns of `S+` and `S-` (each `N/2` vectors of length `N`).
    pub fn chiral_bases(&self) -> Result<(Vec<Vec<GaussInt>>, Vec<Vec<GaussInt>>)> {
        let (plus, minus) = self.chirality_projectors()?;
        Ok((independent_columns(plus.doubled()), independent_columns(minus.doubled())))
    }

    /// Clifford multiplication by a real vector: `sum_j v_j a_j`.
    pub fn clifford_multiply(&self, v: &[f64]) -> DMatrix<Complex64> {
        assert_eq!(v.len(), self.dim);
        let mut out = DMatrix::zeros(self.rank, self.rank);
        for (a, &vj) in self.generators.iter().zip(v) {
            out += a.to_complex64() * Complex64::new(vj, 0.0);
        }
        out
    }
}

fn independent_columns(m: &GaussMatrix) -> Vec<Vec<GaussInt>> {
    let n = m.size();
    let mut chosen: Vec<Vec<GaussInt>> = Vec::new();
    for j in 0..n {
        let col: Vec<GaussInt> = (0..n).map(|i| m.get(i, j)).collect();
        if col.iter().all(Zero::is_zero) {
            continue;
        }
        let mut trial = chosen.clone();
        trial.push(col.clone());
        let rows = trial
            .iter()
            .map(|c| c.iter().map(|z| Complex::new(BigInt::from(z.re), BigInt::from(z.im))).collect())
            .collect();
        if gaussian_rank(rows) == trial.len() {
            chosen.push(col);
        }
    }
    chosen
}
