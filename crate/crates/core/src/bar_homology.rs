//! Twisted de Rham model of bar monopole Floer homology of a 3-manifold.
//!
//! On translation-invariant forms of the torus `H^1(Y; R)/H^1(Y; Z)` the
//! exterior derivative vanishes, so the complex is `Lambda^*(R^b) (x) R[U, U^-1]`
//! with differential `x -> (zeta ^ x) U^-1`, where `zeta` is the triple cup
//! product of `Y`. `U` has degree 2, so only the parity of the degree is
//! meaningful and ranks are reported for one period `{even, odd}`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::char_classes::wedge_sign;
use crate::error::{Error, Result};
use crate::exact::{int, integer_rank, nullspace, rational_rank, Rational};

pub const MAX_BETTI: usize = 16;

/// Alternating integral 3-form `zeta` on a lattice of rank `b`, stored by
/// its coefficients `zeta_ijk`, `i < j < k` (zero-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CupForm {
    b: usize,
    coeffs: BTreeMap<(usize, usize, usize), i64>,
}

fn check_betti(b: usize) -> Result<()> {
    if b > MAX_BETTI {
        return Err(Error::DimensionOutOfRange { dim: b, min: 0, max: MAX_BETTI });
    }
    Ok(())
}

impl CupForm {
    pub fn zero(b: usize) -> Self {
        CupForm { b, coeffs: BTreeMap::new() }
    }

    /// From zero-based index triples in any order; a triple and its
    /// permutations are combined with the sign of the permutation.
    pub fn from_entries(b: usize, entries: &[([usize; 3], i64)]) -> Result<Self> {
        check_betti(b)?;
        let mut form = Self::zero(b);
        for &(idx, c) in entries {
            if idx.iter().any(|&i| i >= b) {
                return Err(Error::InvalidCupForm(format!("index in {idx:?} out of range for b = {b}")));
            }
            if idx[0] == idx[1] || idx[1] == idx[2] || idx[0] == idx[2] {
                return Err(Error::InvalidCupForm(format!("repeated index in {idx:?}")));
            }
            let mut sorted = idx;
            let mut sign = 1;
            for i in 0..3 {
                for j in 0..2 - i {
                    if sorted[j] > sorted[j + 1] {
                        sorted.swap(j, j + 1);
                        sign = -sign;
                    }
                }
            }
            let slot = form.coeffs.entry((sorted[0], sorted[1], sorted[2])).or_insert(0);
            *slot = slot.checked_add(sign * c).ok_or_else(|| Error::InvalidCupForm("coefficient overflow".into()))?;
        }
        form.coeffs.retain(|_, v| *v != 0);
        Ok(form)
    }

    /// Parses `"1,2,3:1; 4,5,6:-2"` with one-based indices. An empty string
    /// is the zero form.
    pub fn parse(b: usize, text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for part in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let (idx, coeff) = part.split_once(':').ok_or_else(|| Error::InvalidCupForm(format!("missing ':' in {part:?}")))?;
            let idx: Vec<usize> = idx
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::InvalidCupForm(format!("bad indices in {part:?}")))?;
            if idx.len() != 3 || idx.contains(&0) {
                return Err(Error::InvalidCupForm(format!("need three one-based indices in {part:?}")));
            }
            let coeff: i64 = coeff.trim().parse().map_err(|_| Error::InvalidCupForm(format!("bad coefficient in {part:?}")))?;
            entries.push(([idx[0] - 1, idx[1] - 1, idx[2] - 1], coeff));
        }
        Self::from_entries(b, &entries)
    }

    pub fn betti(&self) -> usize {
        self.b
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `zeta(e_i, e_j, e_k)` for arbitrary zero-based indices.
    pub fn get(&self, i: usize, j: usize, k: usize) -> i64 {
        if i == j || j == k || i == k {
            return 0;
        }
        let mut t = [i, j, k];
        let mut sign = 1;
        for a in 0..3 {
            for c in 0..2 - a {
                if t[c] > t[c + 1] {
                    t.swap(c, c + 1);
                    sign = -sign;
                }
            }
        }
        sign * self.coeffs.get(&(t[0], t[1], t[2])).copied().unwrap_or(0)
    }

    /// Nonzero coefficients `((i, j, k), zeta_ijk)`, `i < j < k`, zero-based.
    pub fn coefficients(&self) -> impl Iterator<Item = ((usize, usize, usize), i64)> + '_ {
        self.coeffs.iter().map(|(&k, &v)| (k, v))
    }

    pub fn scaled(&self, s: i64) -> Self {
        let mut out = self.clone();
        for v in out.coeffs.values_mut() {
            *v *= s;
        }
        out.coeffs.retain(|_, v| *v != 0);
        out
    }

    /// `zeta'(e_i, e_j, e_k) = zeta(g e_i, g e_j, g e_k)` for a unimodular
    /// integral `g` (rows of a `b x b` matrix).
    pub fn transform(&self, g: &[Vec<i64>]) -> Result<Self> {
        let b = self.b;
        if g.len() != b || g.iter().any(|r| r.len() != b) {
            return Err(Error::InvalidCupForm("change of basis has the wrong shape".into()));
        }
        let det = integer_determinant(g);
        if det != int(1) && det != int(-1) {
            return Err(Error::InvalidCupForm(format!("change of basis has determinant {det}, not +-1")));
        }
        let minor = |p: usize, q: usize, r: usize, i: usize, j: usize, k: usize| -> i64 {
            let m = [[g[p][i], g[p][j], g[p][k]], [g[q][i], g[q][j], g[q][k]], [g[r][i], g[r][j], g[r][k]]];
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        };
        let mut entries = Vec::new();
        for i in 0..b {
            for j in i + 1..b {
                for k in j + 1..b {
                    let v: i64 = self.coeffs.iter().map(|(&(p, q, r), &z)| z * minor(p, q, r, i, j, k)).sum();
                    if v != 0 {
                        entries.push(([i, j, k], v));
                    }
                }
            }
        }
        Self::from_entries(b, &entries)
    }

    /// The form as a sum over bitmasks of its index triples.
    fn terms(&self) -> Vec<(u64, i64)> {
        self.coeffs.iter().map(|(&(i, j, k), &v)| ((1u64 << i) | (1 << j) | (1 << k), v)).collect()
    }
}

impl fmt::Display for CupForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|(&(i, j, k), v)| format!("{},{},{}:{v}", i + 1, j + 1, k + 1)).collect();
        write!(f, "{}", parts.join("; "))
    }
}

fn integer_determinant(g: &[Vec<i64>]) -> Rational {
    let n = g.len();
    let mut m: Vec<Vec<Rational>> = g.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        for r in c + 1..n {
            let f = &m[r][c] / &m[c][c];
            for j in c..n {
                let d = &f * &m[c][j];
                m[r][j] -= d;
            }
        }
    }
    det
}

/// Subsets of `0..b` of size `k` as bitmasks, in increasing order.
fn basis(b: usize, k: usize) -> Vec<u64> {
    (0u64..1 << b).filter(|m| m.count_ones() as usize == k).collect()
}

/// The maps `zeta ^ : Lambda^k -> Lambda^{k+3}` for `k = 0..=b`.
#[derive(Clone, Debug)]
pub struct BarComplex {
    zeta: CupForm,
    bases: Vec<Vec<u64>>,
    /// `maps[k]` has `dim Lambda^{k+3}` rows and `dim Lambda^k` columns.
    maps: Vec<Vec<Vec<i64>>>,
}

pub fn build_complex(zeta: &CupForm) -> Result<BarComplex> {
    let b = zeta.betti();
    check_betti(b)?;
    let bases: Vec<Vec<u64>> = (0..=b).map(|k| basis(b, k)).collect();
    let terms = zeta.terms();
    let maps = (0..=b)
        .map(|k| {
            let target: &[u64] = if k + 3 <= b { &bases[k + 3] } else { &[] };
            let index: BTreeMap<u64, usize> = target.iter().enumerate().map(|(i, &m)| (m, i)).collect();
            let mut mat = vec![vec![0i64; bases[k].len()]; target.len()];
            for (col, &s) in bases[k].iter().enumerate() {
                for &(t, z) in &terms {
                    if let Some(sign) = wedge_sign(t, s) {
                        mat[index[&(t | s)]][col] += sign * z;
                    }
                }
            }
            mat
        })
        .collect();
    Ok(BarComplex { zeta: zeta.clone(), bases, maps })
}

impl BarComplex {
    pub fn betti(&self) -> usize {
        self.zeta.betti()
    }

    pub fn map(&self, k: usize) -> &[Vec<i64>] {
        &self.maps[k]
    }

    /// Rank of `zeta ^` on `Lambda^k` (zero outside `0..=b`).
    pub fn rank(&self, k: usize) -> usize {
        self.maps.get(k).map_or(0, |m| integer_rank(m))
    }

    /// Checks that `zeta ^ zeta ^ = 0` by multiplying consecutive maps.
    pub fn delta_squared_vanishes(&self) -> bool {
        let b = self.betti();
        (0..=b).filter(|k| k + 6 <= b).all(|k| {
            let (first, second) = (&self.maps[k], &self.maps[k + 3]);
            second.iter().all(|row| {
                (0..self.bases[k].len()).all(|c| row.iter().zip(first).map(|(a, r)| a * r[c]).sum::<i64>() == 0)
            })
        })
    }

    /// Dimension of the cohomology sitting in `Lambda^k`.
    pub fn cohomology_dim(&self, k: usize) -> usize {
        let below = if k >= 3 { self.rank(k - 3) } else { 0 };
        self.bases[k].len() - self.rank(k) - below
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BarRanks {
    pub even: usize,
    pub odd: usize,
    /// Positive rank in one period, hence in infinitely many gradings.
    pub nonvanishing: bool,
}

pub fn bar_ranks(zeta: &CupForm) -> Result<BarRanks> {
    let c = build_complex(zeta)?;
    let b = zeta.betti();
    let (mut even, mut odd) = (0, 0);
    for k in 0..=b {
        if k % 2 == 0 {
            even += c.cohomology_dim(k);
        } else {
            odd += c.cohomology_dim(k);
        }
    }
    Ok(BarRanks { even, odd, nonvanishing: even + odd > 0 })
}

/// A cocycle in `Lambda^k` that is not a coboundary.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub degree: usize,
    pub element: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NonvanishingReport {
    pub ranks: [usize; 2],
    pub nonvanishing: bool,
    pub witnesses: Vec<Witness>,
}

/// Ranks plus one explicit surviving class for every `k` with nonzero
/// cohomology in `Lambda^k`.
pub fn nonvanishing_check(zeta: &CupForm) -> Result<NonvanishingReport> {
    let c = build_complex(zeta)?;
    let r = bar_ranks(zeta)?;
    let b = zeta.betti();
    let mut witnesses = Vec::new();
    for k in 0..=b {
        if c.cohomology_dim(k) == 0 {
            continue;
        }
        let dim = c.bases[k].len();
        let rows: Vec<Vec<Rational>> = c.maps[k].iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
        let kernel = if rows.is_empty() {
            (0..dim).map(|i| (0..dim).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect()
        } else {
            nullspace(&rows, dim)
        };
        let image: Vec<Vec<Rational>> = if k >= 3 {
            let m = &c.maps[k - 3];
            (0..c.bases[k - 3].len()).map(|col| m.iter().map(|row| int(row[col])).collect()).collect()
        } else {
            Vec::new()
        };
        let base_rank = rational_rank(&image);
        let found = kernel.into_iter().find(|v| {
            let mut trial = image.clone();
            trial.push(v.clone());
            rational_rank(&trial) > base_rank
        });
        if let Some(v) = found {
            witnesses.push(Witness { degree: k, element: render_form(&c.bases[k], &v) });
        }
    }
    Ok(NonvanishingReport { ranks: [r.even, r.odd], nonvanishing: r.nonvanishing, witnesses })
}

fn render_form(basis: &[u64], v: &[Rational]) -> String {
    let mut out = String::new();
    for (&m, c) in basis.iter().zip(v).filter(|(_, c)| !c.is_zero()) {
        let name = if m == 0 {
            "1".to_string()
        } else {
            (0..64).filter(|i| m >> i & 1 == 1).map(|i| format!("e{}", i + 1)).collect::<Vec<_>>().join("^")
        };
        let term = if c.abs().is_one() { name } else { format!("{}*{name}", c.abs()) };
        match (out.is_empty(), c.is_negative()) {
            (true, false) => out.push_str(&term),
            (true, true) => out.push_str(&format!("-{term}")),
            (false, false) => out.push_str(&format!(" + {term}")),
            (false, true) => out.push_str(&format!(" - {term}")),
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub betti: usize,
    pub bound: i64,
    pub forms_checked: u64,
    pub all_nonvanishing: bool,
    /// First form (in enumeration order) with vanishing homology, if any.
    pub counterexample: Option<String>,
}

/// Checks the nonvanishing flag for every form with `|zeta_ijk| <= bound`.
pub fn scan_small_forms(b: usize, bound: i64) -> Result<ScanReport> {
    check_betti(b)?;
    if bound < 0 {
        return Err(Error::InvalidCupForm("coefficient bound must be nonnegative".into()));
    }
    let triples: Vec<[usize; 3]> = (0..b)
        .flat_map(|i| (i + 1..b).flat_map(move |j| (j + 1..b).map(move |k| [i, j, k])))
        .collect();
    let side = (2 * bound + 1) as u64;
    let total = side.checked_pow(triples.len() as u32).ok_or_else(|| Error::Unsupported("scan too large".into()))?;
    // template complexes with one triple each, to assemble maps quickly
    let units: Vec<BarComplex> = triples
        .iter()
        .map(|&t| build_complex(&CupForm::from_entries(b, &[(t, 1)]).expect("valid triple")))
        .collect::<Result<_>>()?;
    let bases: Vec<Vec<u64>> = (0..=b).map(|k| basis(b, k)).collect();
    let decode = |mut idx: u64| -> Vec<i64> {
        (0..triples.len())
            .map(|_| {
                let c = (idx % side) as i64 - bound;
                idx /= side;
                c
            })
            .collect()
    };
    let failing = (0..total).into_par_iter().find_first(|&idx| {
        let coeffs = decode(idx);
        let mut rank_sum = 0;
        for k in 0..=b {
            if k + 3 > b {
                break;
            }
            let rows = bases[k + 3].len();
            let cols = bases[k].len();
            let mut mat = vec![vec![0i64; cols]; rows];
            for (unit, &z) in units.iter().zip(&coeffs) {
                if z == 0 {
                    continue;
                }
                for (r, row) in unit.maps[k].iter().enumerate() {
                    for (c, &v) in row.iter().enumerate() {
                        mat[r][c] += z * v;
                    }
                }
            }
            rank_sum += integer_rank(&mat);
        }
        // total homology over one period is 2^b - 2 * sum of ranks
        (1usize << b) <= 2 * rank_sum
    });
    let counterexample = failing.map(|idx| {
        let coeffs = decode(idx);
        let entries: Vec<([usize; 3], i64)> = triples.iter().copied().zip(coeffs).collect();
        CupForm::from_entries(b, &entries).expect("valid").to_string()
    });
    Ok(ScanReport { betti: b, bound, forms_checked: total, all_nonvanishing: counterexample.is_none(), counterexample })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_torus() {
        let z = CupForm::parse(3, "1,2,3:1").unwrap();
        let c = build_complex(&z).unwrap();
        assert_eq!(c.map(0), &[vec![1]]);
        assert!((1..=3).all(|k| c.map(k).is_empty()));
        assert_eq!(bar_ranks(&z).unwrap(), BarRanks { even: 3, odd: 3, nonvanishing: true });
        let report = nonvanishing_check(&z).unwrap();
        let degrees: Vec<usize> = report.witnesses.iter().map(|w| w.degree).collect();
        assert_eq!(degrees, vec![1, 2]);
    }

    #[test]
    fn zero_forms() {
        assert_eq!(bar_ranks(&CupForm::zero(3)).unwrap(), BarRanks { even: 4, odd: 4, nonvanishing: true });
        assert_eq!(bar_ranks(&CupForm::zero(2)).unwrap(), BarRanks { even: 2, odd: 2, nonvanishing: true });
        let b0 = nonvanishing_check(&CupForm::zero(0)).unwrap();
        assert_eq!(b0.ranks, [1, 0]);
        assert!(b0.nonvanishing);
        assert_eq!(b0.witnesses[0].element, "1");
    }

    #[test]
    fn four_dimensional_example() {
        let z = CupForm::parse(4, "1,2,3:1").unwrap();
        let c = build_complex(&z).unwrap();
        assert_eq!(c.rank(1), 1);
        // only e4 survives: e1^e2^e3 ^ e4 = e1^e2^e3^e4
        assert_eq!(c.map(1), &[vec![0, 0, 0, 1]]);
        assert!(c.delta_squared_vanishes());
    }

    #[test]
    fn six_dimensional_example() {
        let z = CupForm::parse(6, "1,2,3:1; 4,5,6:1").unwrap();
        let c = build_complex(&z).unwrap();
        assert!(c.delta_squared_vanishes());
        let r = nonvanishing_check(&z).unwrap();
        assert!(r.nonvanishing);
        assert_eq!(r.ranks[0], r.ranks[1]);
    }

    #[test]
    fn parsing_normalizes_antisymmetry() {
        let a = CupForm::parse(3, "2,1,3:1").unwrap();
        assert_eq!(a.get(0, 1, 2), -1);
        assert_eq!(a.get(2, 1, 0), 1);
        assert!(CupForm::parse(3, "1,1,2:1").is_err());
        assert!(CupForm::parse(3, "1,2,4:1").is_err());
        assert!(CupForm::parse(3, "1,2:1").is_err());
        assert!(CupForm::parse(3, "1,2,3:1; 2,1,3:1").unwrap().is_zero());
        assert_eq!(CupForm::parse(6, "4,5,6:2;1,2,3:1").unwrap().to_string(), "1,2,3:1; 4,5,6:2");
    }

    #[test]
    fn transform_by_unimodular_matrix() {
        let z = CupForm::parse(3, "1,2,3:1").unwrap();
        let g = vec![vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(z.transform(&g).unwrap(), z);
        let swap = vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]];
        assert_eq!(z.transform(&swap).unwrap(), z.scaled(-1));
        assert!(z.transform(&[vec![2, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).is_err());
    }

    #[test]
    fn tiny_scan() {
        let r = scan_small_forms(3, 2).unwrap();
        assert_eq!(r.forms_checked, 5);
        assert!(r.all_nonvanishing);
        assert_eq!(scan_small_forms(2, 2).unwrap().forms_checked, 1);
    }
}
