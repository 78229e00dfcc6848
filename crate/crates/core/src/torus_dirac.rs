//! Twisted Dirac operators on the flat torus `T^n = R^n / 2 pi Z^n`.
//!
//! A twist `c` is a flat connection written in the universal cover of the
//! torus of flat connections. On the Fourier mode `e^{-i k.x}` the twisted
//! operator acts by the Hermitian block
//!
//! ```text
//! D_k(c) = -i sum_j (k_j + c_j) a_j
//! ```
//!
//! so on the circle (`a_1 = i`) it is literally `i d/dt + c` with eigenvalue
//! `m + c` on `e^{-imt}`. Each block squares to `|k + c|^2 I`; in dimension
//! `n >= 2` its eigenvalues are `±|k + c|`, each with multiplicity `N/2`.
//!
//! Everything here is exact: twists are rationals (a double converts to
//! its exact dyadic value) and blocks are handled as Gaussian-integer
//! matrices after clearing the common denominator.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::clifford::{build_clifford, CliffordRep, GaussInt};
use crate::error::{Error, Result};
use crate::exact::{common_denominator, format_f64, gaussian_rank, int, parse_rational, rational_from_f64, rational_to_f64, Rational};

/// Default cap on the number of Fourier modes in one truncation.
pub const MAX_MODES: u128 = 10_000_000;

/// Flat twist `c`, a point of the universal cover of the torus of flat
/// connections. `c` and `c + k` for integral `k` give conjugate operators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwistParameter {
    coords: Vec<Rational>,
}

impl TwistParameter {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidTwist("twist must have at least one coordinate".into()));
        }
        Ok(TwistParameter { coords })
    }

    pub fn zero(n: usize) -> Self {
        TwistParameter { coords: vec![Rational::zero(); n.max(1)] }
    }

    pub fn from_f64(coords: &[f64]) -> Result<Self> {
        Self::new(coords.iter().map(|&x| rational_from_f64(x)).collect::<Result<_>>()?)
    }

    pub fn from_integers(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&x| int(x)).collect())
    }

    /// Parses a comma-separated list such as `"0.25, 1/3"`.
    pub fn parse(s: &str) -> Result<Self> {
        Self::new(s.split(',').map(parse_rational).collect::<Result<_>>()?)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(rational_to_f64).collect()
    }

    pub fn sup_norm(&self) -> Rational {
        self.coords.iter().map(|c| c.abs()).max().unwrap_or_else(Rational::zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// Adds an integral lattice vector.
    pub fn shifted(&self, k: &[i64]) -> Result<Self> {
        if k.len() != self.dim() {
            return Err(Error::InvalidTwist("shift has the wrong length".into()));
        }
        Ok(TwistParameter { coords: self.coords.iter().zip(k).map(|(c, &s)| c + int(s)).collect() })
    }

    /// Representative in `(-1/2, 1/2]^n` together with the integral shift
    /// that was subtracted.
    pub fn canonical(&self) -> (TwistParameter, Vec<BigInt>) {
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        let shifts: Vec<BigInt> = self.coords.iter().map(|c| (c - &half).ceil().to_integer()).collect();
        let coords = self.coords.iter().zip(&shifts).map(|(c, s)| c - Rational::from_integer(s.clone())).collect();
        (TwistParameter { coords }, shifts)
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if self.dim() != n {
            return Err(Error::InvalidTwist(format!("twist has {} coordinates, dimension is {n}", self.dim())));
        }
        Ok(())
    }
}

impl fmt::Display for TwistParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for TwistParameter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coords.iter().map(ToString::to_string))
    }
}

/// Exact real eigenvalue `sign * sqrt(square)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpectralValue {
    sign: i8,
    square: Rational,
}

impl SpectralValue {
    pub fn zero() -> Self {
        SpectralValue { sign: 0, square: Rational::zero() }
    }

    pub fn from_rational(r: &Rational) -> Self {
        let sign = if r.is_zero() { 0 } else if r.is_positive() { 1 } else { -1 };
        SpectralValue { sign, square: r * r }
    }

    /// `±sqrt(square)`; `square` must be nonnegative.
    pub fn signed_root(positive: bool, square: Rational) -> Self {
        debug_assert!(!square.is_negative());
        if square.is_zero() {
            return Self::zero();
        }
        SpectralValue { sign: if positive { 1 } else { -1 }, square }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn square(&self) -> &Rational {
        &self.square
    }

    pub fn value(&self) -> f64 {
        f64::from(self.sign) * rational_to_f64(&self.square).sqrt()
    }

    /// The value itself when it is rational.
    pub fn as_rational(&self) -> Option<Rational> {
        let root = Rational::new(self.square.numer().sqrt(), self.square.denom().sqrt());
        (&root * &root == self.square).then(|| root * int(i64::from(self.sign)))
    }

    pub fn negated(&self) -> Self {
        SpectralValue { sign: -self.sign, square: self.square.clone() }
    }

    /// `|value| <= radius` for a nonnegative radius.
    pub fn within(&self, radius: &Rational) -> bool {
        !radius.is_negative() && self.square <= radius * radius
    }
}

impl Ord for SpectralValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => match self.sign {
                1 => self.square.cmp(&other.square),
                -1 => other.square.cmp(&self.square),
                _ => Ordering::Equal,
            },
            o => o,
        }
    }
}

impl PartialOrd for SpectralValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub value: SpectralValue,
    pub multiplicity: u64,
}

/// How coincident eigenvalues are merged into one entry.
#[derive(Clone, Copy, Debug, PartialEq)]
#[derive(Default)]
pub enum Grouping {
    /// Exact comparison of the rational squares.
    #[default]
    Exact,
    /// Merge sorted neighbours closer than the given absolute tolerance.
    Tolerance(f64),
}


#[derive(Clone, Debug)]
pub struct SpectrumOptions {
    pub grouping: Grouping,
    pub max_modes: u128,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions { grouping: Grouping::Exact, max_modes: MAX_MODES }
    }
}

/// Low-lying spectrum of a mode-box truncation.
///
/// Every eigenvalue of the full operator with `|lambda| <= completeness_radius`
/// is present with its full multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumSlice {
    pub dim: usize,
    pub twist: TwistParameter,
    pub cutoff: u32,
    pub completeness_radius: Rational,
    pub entries: Vec<SpectrumEntry>,
}

impl SpectrumSlice {
    pub fn total_multiplicity(&self) -> u64 {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// Entries with `|lambda| <= radius`.
    pub fn window(&self, radius: &Rational) -> Vec<SpectrumEntry> {
        self.entries.iter().filter(|e| e.value.within(radius)).cloned().collect()
    }

    /// Invariance of the multiset under `lambda -> -lambda`.
    pub fn is_symmetric(&self) -> bool {
        let n = self.entries.len();
        (0..n).all(|i| {
            let (a, b) = (&self.entries[i], &self.entries[n - 1 - i]);
            a.value == b.value.negated() && a.multiplicity == b.multiplicity
        })
    }

    pub fn values(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.value.value()).collect()
    }

    pub fn to_json(&self) -> String {
        let entries: Vec<String> = self
            .entries
            .iter()
            .map(|e| format!("[{},{}]", format_f64(e.value.value()), e.multiplicity))
            .collect();
        format!(
            "{{\"n\":{},\"c\":{},\"K\":{},\"completeness_radius\":{},\"entries\":[{}]}}",
            self.dim,
            serde_json::to_string(&self.twist).expect("twist serializes"),
            self.cutoff,
            serde_json::to_string(&self.completeness_radius.to_string()).expect("string serializes"),
            entries.join(",")
        )
    }

    /// One row per entry: `n, c, K, completeness_radius, lambda, multiplicity`,
    /// with the twist coordinates joined by `;`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "c", "K", "completeness_radius", "lambda", "multiplicity"])
            .expect("in-memory write");
        let c: Vec<String> = self.twist.coords().iter().map(ToString::to_string).collect();
        let c = c.join(";");
        for e in &self.entries {
            w.write_record([
                self.dim.to_string(),
                c.clone(),
                self.cutoff.to_string(),
                self.completeness_radius.to_string(),
                format_f64(e.value.value()),
                e.multiplicity.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }
}

fn mode_count(n: usize, cutoff: u32) -> u128 {
    (2 * u128::from(cutoff) + 1).saturating_pow(n as u32)
}

fn check_truncation(n: usize, cutoff: i64, max_modes: u128) -> Result<u32> {
    if cutoff < 1 {
        return Err(Error::CutoffTooSmall(cutoff));
    }
    let cutoff = u32::try_from(cutoff).map_err(|_| Error::TruncationTooLarge { modes: u128::MAX, limit: max_modes })?;
    let modes = mode_count(n, cutoff);
    if modes > max_modes {
        return Err(Error::TruncationTooLarge { modes, limit: max_modes });
    }
    Ok(cutoff)
}

/// Lattice mode number `index` of the box `|k|_inf <= cutoff`, in
/// lexicographic order.
pub(crate) fn mode_at(index: u128, n: usize, cutoff: u32) -> Vec<i64> {
    let side = 2 * u128::from(cutoff) + 1;
    let mut k = vec![0i64; n];
    let mut rest = index;
    for slot in k.iter_mut().rev() {
        *slot = (rest % side) as i64 - i64::from(cutoff);
        rest /= side;
    }
    k
}

pub(crate) fn modes(n: usize, cutoff: u32) -> impl Iterator<Item = Vec<i64>> {
    (0..mode_count(n, cutoff)).map(move |i| mode_at(i, n, cutoff))
}

fn squared_norm(k: &[i64], c: &TwistParameter) -> Rational {
    k.iter().zip(c.coords()).map(|(&kj, cj)| {
        let v = int(kj) + cj;
        &v * &v
    }).sum()
}

pub fn spectrum(n: usize, c: &TwistParameter, cutoff: i64) -> Result<SpectrumSlice> {
    spectrum_with(n, c, cutoff, &SpectrumOptions::default())
}

pub fn spectrum_with(n: usize, c: &TwistParameter, cutoff: i64, opts: &SpectrumOptions) -> Result<SpectrumSlice> {
    let rep = build_clifford(n)?;
    c.check_dim(n)?;
    let cutoff = check_truncation(n, cutoff, opts.max_modes)?;
    let half = (rep.spinor_rank() / 2) as u64;
    let full = rep.spinor_rank() as u64;
    let total = mode_count(n, cutoff);

    let counts: BTreeMap<SpectralValue, u64> = (0..total)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<SpectralValue, u64>, idx| {
            let k = mode_at(idx, n, cutoff);
            if n == 1 {
                let v = int(k[0]) + &c.coords()[0];
                *acc.entry(SpectralValue::from_rational(&v)).or_default() += 1;
            } else {
                let sq = squared_norm(&k, c);
                if sq.is_zero() {
                    *acc.entry(SpectralValue::zero()).or_default() += full;
                } else {
                    *acc.entry(SpectralValue::signed_root(true, sq.clone())).or_default() += half;
                    *acc.entry(SpectralValue::signed_root(false, sq)).or_default() += half;
                }
            }
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (key, m) in b {
                *a.entry(key).or_default() += m;
            }
            a
        });

    let mut entries: Vec<SpectrumEntry> =
        counts.into_iter().map(|(value, multiplicity)| SpectrumEntry { value, multiplicity }).collect();
    if let Grouping::Tolerance(tol) = opts.grouping {
        entries = merge_within(entries, tol);
    }
    let completeness_radius = int(i64::from(cutoff)) - c.sup_norm();
    Ok(SpectrumSlice { dim: n, twist: c.clone(), cutoff, completeness_radius, entries })
}

fn merge_within(entries: Vec<SpectrumEntry>, tol: f64) -> Vec<SpectrumEntry> {
    let mut out: Vec<SpectrumEntry> = Vec::with_capacity(entries.len());
    for e in entries {
        match out.last_mut() {
            Some(last) if (e.value.value() - last.value.value()).abs() <= tol => last.multiplicity += e.multiplicity,
            _ => out.push(e),
        }
    }
    out
}

/// The block of the twisted operator on one Fourier mode, scaled by the
/// common denominator `q` of the twist so that it has Gaussian-integer
/// entries: `q D_k(c) = -i sum_j (q k_j + p_j) a_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeSymbol {
    mode: Vec<i64>,
    denominator: BigInt,
    size: usize,
    scaled: Vec<Complex<BigInt>>,
}

impl ModeSymbol {
    pub fn new(rep: &CliffordRep, k: &[i64], c: &TwistParameter) -> Result<Self> {
        c.check_dim(rep.dim())?;
        if k.len() != rep.dim() {
            return Err(Error::InvalidTwist("mode has the wrong length".into()));
        }
        let (q, p) = common_denominator(c.coords());
        let w: Vec<BigInt> = k.iter().zip(&p).map(|(&kj, pj)| BigInt::from(kj) * &q + pj).collect();
        let scaled = scaled_symbol(&gens_as::<BigInt>(rep), &w, rep.spinor_rank());
        Ok(ModeSymbol { mode: k.to_vec(), denominator: q, size: rep.spinor_rank(), scaled })
    }

    pub fn mode(&self) -> &[i64] {
        &self.mode
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex<Rational> {
        let z = &self.scaled[row * self.size + col];
        let q = Rational::from_integer(self.denominator.clone());
        Complex::new(Rational::from_integer(z.re.clone()) / &q, Rational::from_integer(z.im.clone()) / q)
    }

    pub fn to_complex64(&self) -> DMatrix<Complex64> {
        let q = self.denominator.to_f64().unwrap_or(f64::NAN);
        DMatrix::from_fn(self.size, self.size, |i, j| {
            let z = &self.scaled[i * self.size + j];
            Complex64::new(z.re.to_f64().unwrap_or(f64::NAN) / q, z.im.to_f64().unwrap_or(f64::NAN) / q)
        })
    }

    pub fn is_hermitian(&self) -> bool {
        let n = self.size;
        (0..n).all(|i| (0..n).all(|j| self.scaled[i * n + j] == self.scaled[j * n + i].conj()))
    }

    /// `|k + c|^2`.
    pub fn norm_squared(&self) -> Rational {
        // read back from the diagonal of the square
        let sq = square(&self.scaled, self.size);
        let q2 = &self.denominator * &self.denominator;
        Rational::new(sq[0].re.clone(), q2)
    }

    /// Largest entry of `D_k(c)^2 - |k + c|^2 I` (real or imaginary part).
    pub fn squaring_deviation(&self, c: &TwistParameter) -> Rational {
        let expected = squared_norm(&self.mode, c) * Rational::from_integer(&self.denominator * &self.denominator);
        let sq = square(&self.scaled, self.size);
        let n = self.size;
        let mut worst = Rational::zero();
        for i in 0..n {
            for j in 0..n {
                let mut re = Rational::from_integer(sq[i * n + j].re.clone());
                if i == j {
                    re -= &expected;
                }
                let im = Rational::from_integer(sq[i * n + j].im.clone());
                worst = worst.max(re.abs()).max(im.abs());
            }
        }
        worst / Rational::from_integer(&self.denominator * &self.denominator)
    }

    /// Exact rank of the block restricted to `S+ -> S-` (or `S- -> S+`).
    fn chiral_rank(&self, from: &[Vec<GaussInt>], to: &[Vec<GaussInt>]) -> usize {
        let n = self.size;
        let big = |z: &GaussInt| Complex::new(BigInt::from(z.re), BigInt::from(z.im));
        let rows: Vec<Vec<Complex<BigInt>>> = to
            .iter()
            .map(|t| {
                from.iter()
                    .map(|f| {
                        let mut acc = Complex::new(BigInt::zero(), BigInt::zero());
                        for i in 0..n {
                            let ti = big(&t[i]).conj();
                            if ti.is_zero() {
                                continue;
                            }
                            for j in 0..n {
                                let fj = big(&f[j]);
                                if !fj.is_zero() {
                                    acc += ti.clone() * self.scaled[i * n + j].clone() * fj;
                                }
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        gaussian_rank(rows)
    }
}

fn gens_as<T: From<i64> + Clone>(rep: &CliffordRep) -> Vec<Vec<Complex<T>>> {
    let n = rep.spinor_rank();
    rep.generators()
        .iter()
        .map(|a| {
            (0..n * n)
                .map(|idx| {
                    let z = a.get(idx / n, idx % n);
                    Complex::new(T::from(z.re), T::from(z.im))
                })
                .collect()
        })
        .collect()
}

/// `-i sum_j w_j a_j`.
fn scaled_symbol<T: Clone + Num + std::ops::Neg<Output = T>>(gens: &[Vec<Complex<T>>], w: &[T], size: usize) -> Vec<Complex<T>> {
    let mut out = vec![Complex::new(T::zero(), T::zero()); size * size];
    for (a, wj) in gens.iter().zip(w) {
        if wj.is_zero() {
            continue;
        }
        for (o, z) in out.iter_mut().zip(a) {
            if !z.is_zero() {
                // -i * w * (re + i im) = w im - i w re
                *o = o.clone() + Complex::new(wj.clone() * z.im.clone(), -(wj.clone() * z.re.clone()));
            }
        }
    }
    out
}

fn square<T: Clone + Num>(m: &[Complex<T>], n: usize) -> Vec<Complex<T>> {
    let mut out = vec![Complex::new(T::zero(), T::zero()); n * n];
    for i in 0..n {
        for k in 0..n {
            let a = &m[i * n + k];
            if a.is_zero() {
                continue;
            }
            for j in 0..n {
                out[i * n + j] = out[i * n + j].clone() + a.clone() * m[k * n + j].clone();
            }
        }
    }
    out
}

/// Dimension of the space of harmonic spinors: constant spinors when the
/// twist is gauge-trivial, nothing otherwise.
pub fn harmonic_spinor_dimension(n: usize, c: &TwistParameter) -> Result<usize> {
    let rep = build_clifford(n)?;
    c.check_dim(n)?;
    Ok(if c.is_integral() { rep.spinor_rank() } else { 0 })
}

/// Kernel dimension of the truncated operator, from exact ranks of every
/// mode block. Agrees with [`harmonic_spinor_dimension`] once the box
/// contains the mode `-c`.
pub fn kernel_dimension(n: usize, c: &TwistParameter, cutoff: i64) -> Result<usize> {
    let rep = build_clifford(n)?;
    c.check_dim(n)?;
    let cutoff = check_truncation(n, cutoff, MAX_MODES)?;
    let n_rank = rep.spinor_rank();
    let total = mode_count(n, cutoff);
    (0..total)
        .into_par_iter()
        .map(|idx| {
            let sym = ModeSymbol::new(&rep, &mode_at(idx, n, cutoff), c)?;
            let rows = (0..n_rank).map(|i| sym.scaled[i * n_rank..(i + 1) * n_rank].to_vec()).collect();
            Ok(n_rank - gaussian_rank(rows))
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiralIndex {
    pub kernel_plus: usize,
    pub kernel_minus: usize,
    pub index: i64,
}

/// `dim ker D+ - dim ker D-` of the truncation, each kernel computed from the
/// exact rank of the chirally restricted mode blocks.
pub fn chiral_index(n: usize, c: &TwistParameter, cutoff: i64) -> Result<ChiralIndex> {
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    let rep = build_clifford(n)?;
    c.check_dim(n)?;
    let cutoff = check_truncation(n, cutoff, MAX_MODES)?;
    let (plus, minus) = rep.chiral_bases()?;
    let half = rep.spinor_rank() / 2;
    let total = mode_count(n, cutoff);
    let (kernel_plus, kernel_minus) = (0..total)
        .into_par_iter()
        .map(|idx| {
            let sym = ModeSymbol::new(&rep, &mode_at(idx, n, cutoff), c)?;
            Ok((half - sym.chiral_rank(&plus, &minus), half - sym.chiral_rank(&minus, &plus)))
        })
        .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))?;
    Ok(ChiralIndex { kernel_plus, kernel_minus, index: kernel_plus as i64 - kernel_minus as i64 })
}

/// Exact maximal deviation of `D_k(c)^2` from `|k + c|^2 I` over the box.
///
/// On a flat torus the scalar curvature vanishes, so the Weitzenböck
/// identity says the deviation is exactly zero.
pub fn verify_lichnerowicz(n: usize, c: &TwistParameter, cutoff: i64) -> Result<Rational> {
    let rep = build_clifford(n)?;
    c.check_dim(n)?;
    let cutoff = check_truncation(n, cutoff, MAX_MODES)?;
    let (q, p) = common_denominator(c.coords());
    let size = rep.spinor_rank();
    let total = mode_count(n, cutoff);

    let reach = (q.clone() * BigInt::from(cutoff) + p.iter().map(|x| x.abs()).max().unwrap_or_default()) * BigInt::from(n);
    let worst: BigInt = if reach.bits() < 55 {
        let gens = gens_as::<i128>(&rep);
        let q = q.to_i128().expect("small");
        let p: Vec<i128> = p.iter().map(|x| x.to_i128().expect("small")).collect();
        let worst = (0..total)
            .into_par_iter()
            .map(|idx| {
                let k = mode_at(idx, n, cutoff);
                let w: Vec<i128> = k.iter().zip(&p).map(|(&kj, pj)| i128::from(kj) * q + pj).collect();
                deviation(&gens, &w, size)
            })
            .reduce(|| 0, i128::max);
        BigInt::from(worst)
    } else {
        let gens = gens_as::<BigInt>(&rep);
        (0..total)
            .into_par_iter()
            .map(|idx| {
                let k = mode_at(idx, n, cutoff);
                let w: Vec<BigInt> = k.iter().zip(&p).map(|(&kj, pj)| BigInt::from(kj) * &q + pj).collect();
                deviation(&gens, &w, size)
            })
            .reduce(BigInt::zero, |a, b| a.max(b))
    };
    Ok(Rational::new(worst, &q * &q))
}

fn deviation<T: Clone + Num + Signed + Ord>(gens: &[Vec<Complex<T>>], w: &[T], size: usize) -> T {
    let sq = square(&scaled_symbol(gens, w, size), size);
    let norm = w.iter().fold(T::zero(), |acc, x| acc + x.clone() * x.clone());
    let mut worst = T::zero();
    for i in 0..size {
        for j in 0..size {
            let z = &sq[i * size + j];
            let re = if i == j { z.re.clone() - norm.clone() } else { z.re.clone() };
            worst = worst.max(re.abs()).max(z.im.abs());
        }
    }
    worst
}

/// Compares the spectra of two twists on a window where both truncations
/// are complete.
///
/// Each twist is truncated at `cutoff + ceil(|c|_inf)`, so the comparison
/// window always has radius at least `cutoff`. Returns `true` exactly when
/// the windowed spectra agree, which happens iff `c - c'` is integral.
pub fn spectra_conjugacy_check(n: usize, c: &TwistParameter, c_other: &TwistParameter, cutoff: i64) -> Result<bool> {
    if cutoff < 1 {
        return Err(Error::CutoffTooSmall(cutoff));
    }
    let slice_for = |t: &TwistParameter| -> Result<SpectrumSlice> {
        let reach = t.sup_norm().ceil().to_integer().to_i64().ok_or_else(|| Error::InvalidTwist("twist too large".into()))?;
        spectrum(n, t, cutoff + reach)
    };
    let a = slice_for(c)?;
    let b = slice_for(c_other)?;
    let radius = a.completeness_radius.clone().min(b.completeness_radius.clone());
    Ok(a.window(&radius) == b.window(&radius))
}
