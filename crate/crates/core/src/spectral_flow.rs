//! Spectral flow along paths of self-adjoint operators and winding numbers
//! of unitary loops.
//!
//! Crossing convention: an eigenvalue moving from `< 0` to `>= 0` counts
//! `+1`, the reverse counts `-1`. With this convention the circle family
//! `i d/dt + c`, `c: 0 -> 1`, has flow `+1`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{int, parse_rational, rational_from_f64, rational_to_f64, Rational};
use crate::clifford::build_clifford;
use crate::torus_dirac::{modes, TwistParameter};

/// Piecewise-linear path of twists in the universal cover of the torus of
/// flat connections.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamPath {
    vertices: Vec<TwistParameter>,
    closed: bool,
}

impl ParamPath {
    pub fn new(vertices: Vec<TwistParameter>, closed: bool) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::InvalidPath("a path needs at least two vertices".into()));
        }
        let n = vertices[0].dim();
        if vertices.iter().any(|v| v.dim() != n) {
            return Err(Error::InvalidPath("vertices have different dimensions".into()));
        }
        if closed {
            let first = vertices.first().expect("nonempty");
            let last = vertices.last().expect("nonempty");
            let integral = first.coords().iter().zip(last.coords()).all(|(a, b)| (b - a).is_integer());
            if !integral {
                return Err(Error::InvalidPath("closed path: last - first must be integral".into()));
            }
        }
        Ok(ParamPath { vertices, closed })
    }

    pub fn from_f64(vertices: &[Vec<f64>], closed: bool) -> Result<Self> {
        Self::new(vertices.iter().map(|v| TwistParameter::from_f64(v)).collect::<Result<_>>()?, closed)
    }

    /// Straight segment `from -> to`.
    pub fn segment(from: TwistParameter, to: TwistParameter) -> Result<Self> {
        let closed = from.coords().iter().zip(to.coords()).all(|(a, b)| (b - a).is_integer());
        Self::new(vec![from, to], closed)
    }

    /// Parses a JSON path: either a bare list of vertices or
    /// `{"vertices": [...], "closed": bool}`. Coordinates may be numbers
    /// or exact strings such as `"1/3"`.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coord {
            Num(f64),
            Str(String),
        }
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum PathFile {
            List(Vec<Vec<Coord>>),
            Object {
                vertices: Vec<Vec<Coord>>,
                #[serde(default)]
                closed: Option<bool>,
            },
        }
        let parsed: PathFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let (raw, closed) = match parsed {
            PathFile::List(v) => (v, None),
            PathFile::Object { vertices, closed } => (vertices, closed),
        };
        let vertices = raw
            .into_iter()
            .map(|v| {
                let coords = v
                    .into_iter()
                    .map(|c| match c {
                        Coord::Num(x) => rational_from_f64(x),
                        Coord::Str(s) => parse_rational(&s),
                    })
                    .collect::<Result<Vec<_>>>()?;
                TwistParameter::new(coords)
            })
            .collect::<Result<Vec<_>>>()?;
        match closed {
            Some(c) => Self::new(vertices, c),
            None => {
                let (first, last) = (vertices.first().cloned(), vertices.last().cloned());
                let closed = match (first, last) {
                    (Some(a), Some(b)) => a.coords().iter().zip(b.coords()).all(|(x, y)| (y - x).is_integer()),
                    _ => false,
                };
                Self::new(vertices, closed)
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn vertices(&self) -> &[TwistParameter] {
        &self.vertices
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn start(&self) -> &TwistParameter {
        &self.vertices[0]
    }

    pub fn end(&self) -> &TwistParameter {
        self.vertices.last().expect("nonempty")
    }

    /// `self` followed by `other`; the end of `self` must be the start of `other`.
    pub fn concat(&self, other: &ParamPath) -> Result<ParamPath> {
        if self.end() != other.start() {
            return Err(Error::InvalidPath("paths do not meet".into()));
        }
        let mut vertices = self.vertices.clone();
        vertices.extend(other.vertices[1..].iter().cloned());
        let closed = {
            let (a, b) = (&vertices[0], vertices.last().expect("nonempty"));
            a.coords().iter().zip(b.coords()).all(|(x, y)| (y - x).is_integer())
        };
        ParamPath::new(vertices, closed)
    }

    pub fn reversed(&self) -> ParamPath {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        ParamPath { vertices, closed: self.closed }
    }

    pub fn sup_norm(&self) -> Rational {
        self.vertices.iter().map(TwistParameter::sup_norm).max().unwrap_or_else(Rational::zero)
    }
}

/// One zero-crossing of an eigenvalue branch.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Crossing {
    /// Segment (exact flow) or sampling step (numeric flow) index.
    pub segment: usize,
    /// Lattice mode for exact flow; sorted branch index for numeric flow.
    pub branch: Vec<i64>,
    /// Crossing parameter in `[0, 1]` within the segment (numeric: absolute time).
    #[serde(serialize_with = "crate::exact::serialize_f64")]
    pub at: f64,
    pub direction: i64,
}

/// Point where an eigenvalue branch touches zero without changing sign.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Touch {
    pub segment: usize,
    pub mode: Vec<i64>,
    pub at: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlowReport {
    pub flow: i64,
    pub crossings: Vec<Crossing>,
    pub touches: Vec<Touch>,
}

/// Spectral flow of the twisted Dirac family along `path`, computed
/// analytically on the mode box `|k|_inf <= cutoff`.
///
/// In dimension one each branch `m + c(t)` is linear on a segment and its
/// crossing is read off from the endpoint signs. In dimension `n >= 2` the
/// branches `±|k + c(t)|` never change sign; zeros of `|k + c(t)|^2` along
/// the path are reported as touches and contribute nothing.
pub fn exact_flow(n: usize, path: &ParamPath, cutoff: i64) -> Result<FlowReport> {
    build_clifford(n)?;
    if path.dim() != n {
        return Err(Error::InvalidPath(format!("path has dimension {}, expected {n}", path.dim())));
    }
    if cutoff < 1 {
        return Err(Error::CutoffTooSmall(cutoff));
    }
    let sup = path.sup_norm();
    if sup.clone() + int(1) > int(cutoff) {
        let needed = (sup.clone() + int(1)).ceil().to_integer().to_i64().unwrap_or(i64::MAX);
        return Err(Error::PathOutsideTruncation { sup_norm: sup.to_string(), needed, cutoff });
    }
    let cutoff = u32::try_from(cutoff).map_err(|_| Error::CutoffTooSmall(cutoff))?;

    let mut crossings = Vec::new();
    let mut touches = Vec::new();
    for (s, pair) in path.vertices.windows(2).enumerate() {
        let (a, b) = (pair[0].coords(), pair[1].coords());
        if n == 1 {
            for m in -i64::from(cutoff)..=i64::from(cutoff) {
                let va = int(m) + &a[0];
                let vb = int(m) + &b[0];
                let direction = i64::from(!vb.is_negative()) - i64::from(!va.is_negative());
                if direction != 0 {
                    let at = rational_to_f64(&(-va.clone() / (vb - va)));
                    crossings.push(Crossing { segment: s, branch: vec![m], at, direction });
                }
            }
        } else {
            let delta: Vec<Rational> = a.iter().zip(b).map(|(x, y)| y - x).collect();
            let dd: Rational = delta.iter().map(|d| d * d).sum();
            for k in modes(n, cutoff) {
                let v0: Vec<Rational> = k.iter().zip(a).map(|(&kj, aj)| int(kj) + aj).collect();
                // minimise |v0 + t delta|^2 over t in [0, 1]
                let t = if dd.is_zero() {
                    Rational::zero()
                } else {
                    let dot: Rational = v0.iter().zip(&delta).map(|(v, d)| v * d).sum();
                    (-dot / &dd).max(Rational::zero()).min(int(1))
                };
                let at_min: Rational = v0.iter().zip(&delta).map(|(v, d)| {
                    let x = v + &t * d;
                    &x * &x
                }).sum();
                if at_min.is_zero() {
                    touches.push(Touch { segment: s, mode: k, at: t.to_string() });
                }
            }
        }
    }
    let flow = crossings.iter().map(|c| c.direction).sum();
    Ok(FlowReport { flow, crossings, touches })
}

type MatrixFn = Box<dyn Fn(f64) -> DMatrix<Complex64> + Send + Sync>;

/// Finite family of Hermitian matrices over `[t_0, t_m]`, either sampled
/// (linear interpolation between samples) or given as a function.
pub struct HermitianFamily {
    times: Vec<f64>,
    samples: Vec<DMatrix<Complex64>>,
    generator: Option<MatrixFn>,
}

pub const HERMITIAN_TOLERANCE: f64 = 1e-12;

impl HermitianFamily {
    pub fn from_samples(times: Vec<f64>, samples: Vec<DMatrix<Complex64>>) -> Result<Self> {
        if times.len() < 2 || times.len() != samples.len() {
            return Err(Error::InvalidFamily("need at least two samples with matching times".into()));
        }
        if times.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidFamily("sample times must be strictly increasing".into()));
        }
        let d = samples[0].nrows();
        for (i, m) in samples.iter().enumerate() {
            if m.nrows() != d || m.ncols() != d {
                return Err(Error::InvalidFamily(format!("sample {i} has the wrong shape")));
            }
            check_hermitian(i, m)?;
        }
        Ok(HermitianFamily { times, samples, generator: None })
    }

    /// Family given by `f` on `[t0, t1]`, checked at `samples` equally spaced
    /// times which also serve as the initial sampling for flow computations.
    pub fn from_fn<F>(t0: f64, t1: f64, samples: usize, f: F) -> Result<Self>
    where
        F: Fn(f64) -> DMatrix<Complex64> + Send + Sync + 'static,
    {
        if samples < 2 || !(t0 < t1) {
            return Err(Error::InvalidFamily("need t0 < t1 and at least two samples".into()));
        }
        let times: Vec<f64> = (0..samples).map(|i| t0 + (t1 - t0) * i as f64 / (samples - 1) as f64).collect();
        let mats: Vec<_> = times.iter().map(|&t| f(t)).collect();
        let mut fam = Self::from_samples(times, mats)?;
        fam.generator = Some(Box::new(f));
        Ok(fam)
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn size(&self) -> usize {
        self.samples[0].nrows()
    }

    pub fn eval(&self, t: f64) -> DMatrix<Complex64> {
        if let Some(f) = &self.generator {
            return f(t);
        }
        let i = match self.times.iter().position(|&x| x >= t) {
            Some(0) => return self.samples[0].clone(),
            Some(i) => i,
            None => return self.samples.last().expect("nonempty").clone(),
        };
        let (ta, tb) = (self.times[i - 1], self.times[i]);
        let s = (t - ta) / (tb - ta);
        &self.samples[i - 1] * Complex64::new(1.0 - s, 0.0) + &self.samples[i] * Complex64::new(s, 0.0)
    }
}

fn check_hermitian(index: usize, m: &DMatrix<Complex64>) -> Result<()> {
    let deviation = (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if deviation > HERMITIAN_TOLERANCE {
        return Err(Error::NotHermitian { index, deviation });
    }
    Ok(())
}

fn sorted_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    let mut ev: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

fn negative_count(ev: &[f64]) -> usize {
    ev.iter().filter(|&&x| x < 0.0).count()
}

#[derive(Clone, Copy, Debug)]
pub struct NumericFlowOptions {
    /// Endpoint eigenvalues must lie outside `[-tol, tol]`; interior
    /// eigenvalues inside it are treated as touchings.
    pub tol: f64,
    /// Maximal number of step halvings per sampling interval.
    pub max_refinement: u32,
}

impl Default for NumericFlowOptions {
    fn default() -> Self {
        NumericFlowOptions { tol: 1e-9, max_refinement: 10 }
    }
}

/// Spectral flow of a sampled Hermitian family by sorted-eigenvalue branch
/// tracking.
///
/// Between consecutive samples the sorted branches `lambda_0 <= ... <=
/// lambda_{d-1}` are matched by index. A step is accepted when the number of
/// negative eigenvalues at its midpoint lies between the counts at its ends;
/// otherwise branches crossed and re-crossed inside the step and it is
/// halved, up to `max_refinement` times. The branches that change sign over
/// an accepted step are exactly those with index between the two negative
/// counts.
pub fn numeric_flow(family: &HermitianFamily, opts: NumericFlowOptions) -> Result<FlowReport> {
    let tol = opts.tol;
    let first = family.times[0];
    let last = *family.times.last().expect("nonempty");
    for t in [first, last] {
        let ev = sorted_eigenvalues(&family.eval(t));
        if ev.iter().any(|x| x.abs() <= tol) {
            return Err(Error::EndpointDegenerate { t, tol });
        }
    }
    let mut crossings = Vec::new();
    let mut touches = Vec::new();
    for (s, w) in family.times.windows(2).enumerate() {
        let ea = sorted_eigenvalues(&family.eval(w[0]));
        let eb = sorted_eigenvalues(&family.eval(w[1]));
        refine(family, s, (w[0], ea), (w[1], eb), 0, opts, &mut crossings, &mut touches)?;
    }
    let flow = crossings.iter().map(|c| c.direction).sum();
    Ok(FlowReport { flow, crossings, touches })
}

#[allow(clippy::too_many_arguments)]
fn refine(
    family: &HermitianFamily,
    segment: usize,
    (ta, ea): (f64, Vec<f64>),
    (tb, eb): (f64, Vec<f64>),
    depth: u32,
    opts: NumericFlowOptions,
    crossings: &mut Vec<Crossing>,
    touches: &mut Vec<Touch>,
) -> Result<()> {
    let (na, nb) = (negative_count(&ea), negative_count(&eb));
    let tm = 0.5 * (ta + tb);
    let em = sorted_eigenvalues(&family.eval(tm));
    let nm = negative_count(&em);
    if nm < na.min(nb) || nm > na.max(nb) {
        if depth < opts.max_refinement {
            refine(family, segment, (ta, ea), (tm, em.clone()), depth + 1, opts, crossings, touches)?;
            return refine(family, segment, (tm, em), (tb, eb), depth + 1, opts, crossings, touches);
        }
        // branches that bounce off zero within the tolerance are touchings
        let lo = nm.min(na.min(nb));
        let hi = nm.max(na.max(nb));
        if (lo..hi).all(|i| em[i].abs() <= opts.tol) {
            for i in lo..hi {
                touches.push(Touch { segment, mode: vec![i as i64], at: tm.to_string() });
            }
        } else {
            return Err(Error::NonConvergence { t0: ta, t1: tb, depth });
        }
    }
    let (lo, hi, direction) = if na > nb { (nb, na, 1) } else { (na, nb, -1) };
    for i in lo..hi {
        let (a, b) = (ea[i], eb[i]);
        let at = if a != b { ta + (tb - ta) * a / (a - b) } else { tm };
        crossings.push(Crossing { segment, branch: vec![i as i64], at, direction });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug)]
pub struct WindingOptions {
    /// Largest admissible phase step of the determinant between samples.
    pub max_phase_step: f64,
    pub unitarity_tol: f64,
}

impl Default for WindingOptions {
    fn default() -> Self {
        WindingOptions { max_phase_step: PI / 2.0, unitarity_tol: 1e-8 }
    }
}

/// Winding number of `det U(theta)` along a sampled loop. The samples are
/// read cyclically: the last one connects back to the first.
pub fn unitary_winding(loop_samples: &[DMatrix<Complex64>]) -> Result<i64> {
    unitary_winding_with(loop_samples, WindingOptions::default())
}

pub fn unitary_winding_with(loop_samples: &[DMatrix<Complex64>], opts: WindingOptions) -> Result<i64> {
    if loop_samples.len() < 2 {
        return Err(Error::InvalidFamily("a loop needs at least two samples".into()));
    }
    let d = loop_samples[0].nrows();
    let mut dets = Vec::with_capacity(loop_samples.len());
    for (i, u) in loop_samples.iter().enumerate() {
        if u.nrows() != d || u.ncols() != d {
            return Err(Error::InvalidFamily(format!("sample {i} has the wrong shape")));
        }
        let deviation = (u.adjoint() * u - DMatrix::identity(d, d)).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if deviation > opts.unitarity_tol {
            return Err(Error::NotUnitary { index: i, deviation });
        }
        dets.push(u.determinant());
    }
    phase_winding(&dets, opts.max_phase_step)
}

/// Winding of a cyclic sequence of nonzero complex numbers.
pub(crate) fn phase_winding(values: &[Complex64], max_step: f64) -> Result<i64> {
    let m = values.len();
    let mut total = 0.0;
    for i in 0..m {
        let step = (values[(i + 1) % m] / values[i]).arg();
        if step.abs() > max_step {
            return Err(Error::Aliasing { index: i, step, bound: max_step });
        }
        total += step;
    }
    Ok((total / (2.0 * PI)).round() as i64)
}

/// `theta -> diag(e^{i w_1 theta}, ..., e^{i w_d theta})` at `samples` points.
pub fn diagonal_phase_loop(windings: &[i64], samples: usize) -> Vec<DMatrix<Complex64>> {
    (0..samples)
        .map(|j| {
            let theta = 2.0 * PI * j as f64 / samples as f64;
            DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
                windings.len(),
                windings.iter().map(|&w| Complex64::from_polar(1.0, w as f64 * theta)),
            ))
        })
        .collect()
}

/// Pointwise block direct sum of two loops with the same sample count.
pub fn block_sum(a: &[DMatrix<Complex64>], b: &[DMatrix<Complex64>]) -> Result<Vec<DMatrix<Complex64>>> {
    if a.len() != b.len() {
        return Err(Error::InvalidFamily("loops have different sample counts".into()));
    }
    Ok(a.iter()
        .zip(b)
        .map(|(x, y)| {
            let (p, q) = (x.nrows(), y.nrows());
            let mut m = DMatrix::zeros(p + q, p + q);
            m.view_mut((0, 0), (p, p)).copy_from(x);
            m.view_mut((p, p), (q, q)).copy_from(y);
            m
        })
        .collect())
}

/// Truncated circle family `diag(m + c(t))`, `|m| <= cutoff`, along the
/// straight segment `c(t) = c0 + t (c1 - c0)`.
pub fn circle_dirac_family(c0: f64, c1: f64, cutoff: i64, samples: usize) -> Result<HermitianFamily> {
    HermitianFamily::from_fn(0.0, 1.0, samples, move |t| {
        let c = c0 + t * (c1 - c0);
        let diag: Vec<Complex64> = (-cutoff..=cutoff).map(|m| Complex64::new(m as f64 + c, 0.0)).collect();
        DMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag))
    })
}

/// Truncated torus family: block-diagonal matrix of all mode blocks
/// `D_k(c(t))` along the straight segment between two twists.
pub fn torus_dirac_family(n: usize, c0: &[f64], c1: &[f64], cutoff: i64, samples: usize) -> Result<HermitianFamily> {
    let rep = build_clifford(n)?;
    if c0.len() != n || c1.len() != n {
        return Err(Error::InvalidTwist("endpoint has the wrong length".into()));
    }
    if cutoff < 1 {
        return Err(Error::CutoffTooSmall(cutoff));
    }
    let mode_list: Vec<Vec<i64>> = modes(n, cutoff as u32).collect();
    let gens: Vec<DMatrix<Complex64>> = rep.generators().iter().map(|a| a.to_complex64()).collect();
    let size = rep.spinor_rank();
    let (c0, c1) = (c0.to_vec(), c1.to_vec());
    HermitianFamily::from_fn(0.0, 1.0, samples, move |t| {
        let dim = size * mode_list.len();
        let mut m = DMatrix::zeros(dim, dim);
        for (b, k) in mode_list.iter().enumerate() {
            let mut block = DMatrix::<Complex64>::zeros(size, size);
            for j in 0..n {
                let v = k[j] as f64 + c0[j] + t * (c1[j] - c0[j]);
                block += &gens[j] * Complex64::new(0.0, -v);
            }
            m.view_mut((b * size, b * size), (size, size)).copy_from(&block);
        }
        m
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(v: &[&str], closed: bool) -> ParamPath {
        ParamPath::new(v.iter().map(|s| TwistParameter::parse(s).unwrap()).collect(), closed).unwrap()
    }

    #[test]
    fn circle_loop_has_unit_flow() {
        let r = exact_flow(1, &path(&["0", "1"], true), 3).unwrap();
        assert_eq!(r.flow, 1);
        assert_eq!(r.crossings.len(), 1);
        assert_eq!(r.crossings[0].branch, vec![-1]);
    }

    #[test]
    fn constant_path_has_no_flow() {
        assert_eq!(exact_flow(1, &path(&["0.3", "0.3"], true), 2).unwrap().flow, 0);
    }

    #[test]
    fn coordinate_loop_in_three_torus_only_touches() {
        let r = exact_flow(3, &path(&["0,0,0", "1,0,0"], true), 2).unwrap();
        assert_eq!(r.flow, 0);
        assert!(r.crossings.is_empty());
        // mode 0 vanishes at t = 0 and mode (-1,0,0) at t = 1
        assert_eq!(r.touches.len(), 2);
    }

    #[test]
    fn exact_flow_checks_truncation() {
        assert!(matches!(
            exact_flow(1, &path(&["0", "2"], false), 2),
            Err(Error::PathOutsideTruncation { .. })
        ));
        assert!(ParamPath::new(vec![TwistParameter::parse("0").unwrap()], false).is_err());
        assert!(ParamPath::new(
            vec![TwistParameter::parse("0").unwrap(), TwistParameter::parse("0.5").unwrap()],
            true
        )
        .is_err());
    }

    #[test]
    fn path_json_forms() {
        let p = ParamPath::from_json("[[0], [1]]").unwrap();
        assert!(p.is_closed());
        let p = ParamPath::from_json(r#"{"vertices": [["1/4", 0], [0.75, "1/2"]], "closed": false}"#).unwrap();
        assert_eq!(p.dim(), 2);
        assert!(!p.is_closed());
        assert!(ParamPath::from_json("{").is_err());
    }

    #[test]
    fn scalar_family_crosses_once() {
        let fam = HermitianFamily::from_fn(0.0, 1.0, 8, |t| DMatrix::from_element(1, 1, Complex64::new(t - 0.5, 0.0))).unwrap();
        let r = numeric_flow(&fam, NumericFlowOptions::default()).unwrap();
        assert_eq!(r.flow, 1);
        assert!((r.crossings[0].at - 0.5).abs() < 1e-12);
    }

    #[test]
    fn opposite_crossings_cancel() {
        let fam = HermitianFamily::from_fn(0.0, 1.0, 7, |t| {
            DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
                Complex64::new(t - 0.5, 0.0),
                Complex64::new(0.5 - t, 0.0),
            ]))
        })
        .unwrap();
        assert_eq!(numeric_flow(&fam, NumericFlowOptions::default()).unwrap().flow, 0);
    }

    #[test]
    fn hidden_double_crossing_is_refined() {
        // dips below zero between the two samples and comes back
        let fam = HermitianFamily::from_fn(0.0, 1.0, 2, |t| {
            DMatrix::from_element(1, 1, Complex64::new((t - 0.5).powi(2) - 0.01, 0.0))
        })
        .unwrap();
        let r = numeric_flow(&fam, NumericFlowOptions::default()).unwrap();
        assert_eq!(r.flow, 0);
        assert_eq!(r.crossings.len(), 2);
    }

    #[test]
    fn degenerate_endpoint_is_rejected() {
        let fam = HermitianFamily::from_fn(0.0, 1.0, 4, |t| DMatrix::from_element(1, 1, Complex64::new(t, 0.0))).unwrap();
        assert!(matches!(
            numeric_flow(&fam, NumericFlowOptions::default()),
            Err(Error::EndpointDegenerate { .. })
        ));
    }

    #[test]
    fn non_hermitian_sample_is_rejected() {
        let m = DMatrix::from_row_slice(2, 2, &[
            Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0),
        ]);
        assert!(matches!(
            HermitianFamily::from_samples(vec![0.0, 1.0], vec![m.clone(), m]),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn sampled_family_interpolates() {
        let a = DMatrix::from_element(1, 1, Complex64::new(-1.0, 0.0));
        let b = DMatrix::from_element(1, 1, Complex64::new(3.0, 0.0));
        let fam = HermitianFamily::from_samples(vec![0.0, 1.0], vec![a, b]).unwrap();
        let r = numeric_flow(&fam, NumericFlowOptions::default()).unwrap();
        assert_eq!(r.flow, 1);
        assert!((r.crossings[0].at - 0.25).abs() < 1e-12);
    }

    #[test]
    fn circle_truncation_matches_exact_flow() {
        let fam = circle_dirac_family(0.1, 1.1, 10, 33).unwrap();
        let numeric = numeric_flow(&fam, NumericFlowOptions::default()).unwrap();
        let exact = exact_flow(1, &path(&["0.1", "1.1"], true), 10).unwrap();
        assert_eq!(numeric.flow, exact.flow);
        assert_eq!(exact.flow, 1);
    }

    #[test]
    fn windings() {
        assert_eq!(unitary_winding(&diagonal_phase_loop(&[1, 0, 0], 64)).unwrap(), 1);
        assert_eq!(unitary_winding(&diagonal_phase_loop(&[1, -1], 64)).unwrap(), 0);
        assert_eq!(unitary_winding(&diagonal_phase_loop(&[0, 0], 8)).unwrap(), 0);
        let a = diagonal_phase_loop(&[2], 64);
        let b = diagonal_phase_loop(&[-1, 0], 64);
        assert_eq!(unitary_winding(&block_sum(&a, &b).unwrap()).unwrap(), 1);
    }

    #[test]
    fn coarse_loop_is_flagged_as_aliasing() {
        assert!(matches!(unitary_winding(&diagonal_phase_loop(&[1], 3)), Err(Error::Aliasing { .. })));
    }

    #[test]
    fn non_unitary_sample_is_rejected() {
        let mut l = diagonal_phase_loop(&[1], 16);
        l[3] *= Complex64::new(2.0, 0.0);
        assert!(matches!(unitary_winding(&l), Err(Error::NotUnitary { index: 3, .. })));
    }
}
