//! Exact exterior-algebra engine for characteristic classes and index
//! formulas.
//!
//! Elements live in a graded-commutative algebra generated by up to 64
//! degree-one generators (named `x1`, `y3`, ...) and a few even-degree
//! polynomial symbols (`p1`, `p2`, Chern classes). Coefficients are exact
//! rationals.
//!
//! Pairing conventions: `<x1 ... xn, [M]> = +1` and `<y1 ... ym, [T]> = +1`.
//! Integration over `M` writes each monomial as `(y-part)(x-part)` and pairs
//! the `x-part` with the fundamental class.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::bar_homology::CupForm;
use crate::error::{Error, Result};
use crate::exact::{int, Rational};

pub const MAX_ODD_GENERATORS: usize = 64;

/// Generator set of a graded-commutative algebra, with an optional degree
/// above which everything is truncated to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    odd: Vec<String>,
    even: Vec<(String, u32)>,
    max_degree: Option<u32>,
}

impl Algebra {
    pub fn new(odd: Vec<String>, even: Vec<(String, u32)>, max_degree: Option<u32>) -> Result<Arc<Self>> {
        if odd.len() > MAX_ODD_GENERATORS {
            return Err(Error::Unsupported(format!("at most {MAX_ODD_GENERATORS} degree-one generators")));
        }
        if even.iter().any(|(_, d)| *d == 0 || d % 2 == 1) {
            return Err(Error::Unsupported("polynomial symbols must have positive even degree".into()));
        }
        let mut names: Vec<&str> = odd.iter().map(String::as_str).chain(even.iter().map(|(s, _)| s.as_str())).collect();
        names.sort_unstable();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Unsupported("generator names must be distinct".into()));
        }
        Ok(Arc::new(Algebra { odd, even, max_degree }))
    }

    /// `x1..xn` on the manifold side and `y1..ym` on the parameter side.
    pub fn bi_torus(n: usize, m: usize) -> Result<Arc<Self>> {
        let odd = (1..=n).map(|i| format!("x{i}")).chain((1..=m).map(|i| format!("y{i}"))).collect();
        Self::new(odd, Vec::new(), None)
    }

    /// Formal Pontryagin classes `p1` (degree 4) and `p2` (degree 8),
    /// truncated above `max_degree`.
    pub fn pontryagin(max_degree: u32) -> Result<Arc<Self>> {
        Self::new(Vec::new(), vec![("p1".into(), 4), ("p2".into(), 8)], Some(max_degree))
    }

    pub fn odd_names(&self) -> &[String] {
        &self.odd
    }

    pub fn even_symbols(&self) -> &[(String, u32)] {
        &self.even
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.max_degree
    }

    fn odd_index(&self, name: &str) -> Option<usize> {
        self.odd.iter().position(|s| s == name)
    }

    fn even_index(&self, name: &str) -> Option<usize> {
        self.even.iter().position(|(s, _)| s == name)
    }
}

/// Product of distinct degree-one generators (bitmask, ascending order)
/// times a monomial in the even symbols (exponent vector).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub odd: u64,
    pub even: Vec<u32>,
}

impl Monomial {
    fn unit(n_even: usize) -> Self {
        Monomial { odd: 0, even: vec![0; n_even] }
    }

    pub fn degree(&self, alg: &Algebra) -> u32 {
        self.odd.count_ones() + self.even.iter().zip(&alg.even).map(|(e, (_, d))| e * d).sum::<u32>()
    }
}

/// Sign of `e_a ^ e_b` relative to `e_{a | b}` for disjoint bitmasks of
/// degree-one generators, or `None` when they share a generator.
pub(crate) fn wedge_sign(a: u64, b: u64) -> Option<i64> {
    if a & b != 0 {
        return None;
    }
    // count pairs (i in a, j in b) with i > j
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += if j == 63 { 0 } else { (a >> (j + 1)).count_ones() };
        rest &= rest - 1;
    }
    Some(if swaps.is_multiple_of(2) { 1 } else { -1 })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExteriorElement {
    alg: Arc<Algebra>,
    terms: BTreeMap<Monomial, Rational>,
}

impl ExteriorElement {
    pub fn zero(alg: &Arc<Algebra>) -> Self {
        ExteriorElement { alg: alg.clone(), terms: BTreeMap::new() }
    }

    pub fn scalar(alg: &Arc<Algebra>, r: Rational) -> Self {
        let mut e = Self::zero(alg);
        e.insert(Monomial::unit(alg.even.len()), r);
        e
    }

    pub fn one(alg: &Arc<Algebra>) -> Self {
        Self::scalar(alg, Rational::one())
    }

    /// The generator or polynomial symbol called `name`.
    pub fn generator(alg: &Arc<Algebra>, name: &str) -> Result<Self> {
        let mut m = Monomial::unit(alg.even.len());
        if let Some(i) = alg.odd_index(name) {
            m.odd = 1 << i;
        } else if let Some(i) = alg.even_index(name) {
            m.even[i] = 1;
        } else {
            return Err(Error::Unsupported(format!("unknown generator {name:?}")));
        }
        let mut e = Self::zero(alg);
        e.insert(m, Rational::one());
        Ok(e)
    }

    /// Single monomial `coeff * prod odd[i] * prod even[j]^exp[j]`.
    pub fn monomial(alg: &Arc<Algebra>, odd: u64, even: Vec<u32>, coeff: Rational) -> Result<Self> {
        if even.len() != alg.even.len() || (alg.odd.len() < 64 && odd >> alg.odd.len() != 0) {
            return Err(Error::AlgebraMismatch);
        }
        let mut e = Self::zero(alg);
        e.insert(Monomial { odd, even }, coeff);
        Ok(e)
    }

    fn insert(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        if let Some(max) = self.alg.max_degree {
            if m.degree(&self.alg) > max {
                return;
            }
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_part(&self) -> Rational {
        self.coefficient(&Monomial::unit(self.alg.even.len()))
    }

    /// Homogeneous component of degree `d`.
    pub fn degree_part(&self, d: u32) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.degree(&self.alg) == d).map(|(m, c)| (m.clone(), c.clone())).collect();
        ExteriorElement { alg: self.alg.clone(), terms }
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|m| m.degree(&self.alg)).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = Self::zero(&self.alg);
        for (m, c) in &self.terms {
            out.insert(m.clone(), c * r);
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.alg);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let Some(sign) = wedge_sign(ma.odd, mb.odd) else { continue };
                let even = ma.even.iter().zip(&mb.even).map(|(a, b)| a + b).collect();
                out.insert(Monomial { odd: ma.odd | mb.odd, even }, ca * cb * int(sign));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut out = Self::one(&self.alg);
        for _ in 0..k {
            out = out.wedge(self)?;
        }
        Ok(out)
    }

    /// Drops every component of degree above `d`.
    pub fn truncated(&self, d: u32) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.degree(&self.alg) <= d).map(|(m, c)| (m.clone(), c.clone())).collect();
        ExteriorElement { alg: self.alg.clone(), terms }
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    fn monomial_name(&self, m: &Monomial) -> String {
        let mut parts: Vec<String> = (0..self.alg.odd.len()).filter(|i| m.odd >> i & 1 == 1).map(|i| self.alg.odd[i].clone()).collect();
        for (e, (name, _)) in m.even.iter().zip(&self.alg.even) {
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }

    /// Terms ordered by degree, then by monomial.
    fn sorted_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by_key(|(m, _)| m.degree(&self.alg));
        t
    }
}

impl fmt::Display for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let name = self.monomial_name(m);
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if name.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{mag}*{name}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for ExteriorElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            monomial: String,
            degree: u32,
            coefficient: String,
        }
        let terms = self.sorted_terms();
        let mut seq = s.serialize_seq(Some(terms.len()))?;
        for (m, c) in terms {
            seq.serialize_element(&Term { monomial: self.monomial_name(m), degree: m.degree(&self.alg), coefficient: c.to_string() })?;
        }
        seq.end()
    }
}

/// `sum_j a^j / j!` for nilpotent `a`.
pub fn exp_nilpotent(a: &ExteriorElement) -> Result<ExteriorElement> {
    if !a.constant_part().is_zero() {
        return Err(Error::NotNilpotent("element has a nonzero degree-0 part".into()));
    }
    if a.alg.max_degree.is_none() && a.terms.keys().any(|m| m.even.iter().any(|&e| e > 0)) {
        return Err(Error::NotNilpotent("polynomial symbols are not nilpotent without a truncation degree".into()));
    }
    let mut out = ExteriorElement::one(&a.alg);
    let mut power = ExteriorElement::one(&a.alg);
    let mut factorial = Rational::one();
    let mut j = 0i64;
    loop {
        power = power.wedge(a)?;
        if power.is_zero() {
            return Ok(out);
        }
        j += 1;
        factorial *= int(j);
        out = out.add(&power.scale(&factorial.recip()))?;
    }
}

/// `Omega = sum_i x_i y_i` in `Algebra::bi_torus(n, n)`.
pub fn omega(alg: &Arc<Algebra>, n: usize) -> Result<ExteriorElement> {
    let mut out = ExteriorElement::zero(alg);
    for i in 1..=n {
        let x = ExteriorElement::generator(alg, &format!("x{i}"))?;
        let y = ExteriorElement::generator(alg, &format!("y{i}"))?;
        out = out.add(&x.wedge(&y)?)?;
    }
    Ok(out)
}

/// Formal `A-hat = 1 - p1/24 + (7 p1^2 - 4 p2)/5760`, truncated above
/// degree `n`.
pub fn a_hat(n: u32) -> Result<ExteriorElement> {
    if n > 8 {
        return Err(Error::Unsupported(format!("A-hat is tabulated up to degree 8, asked for {n}")));
    }
    let alg = Algebra::pontryagin(n)?;
    let one = ExteriorElement::one(&alg);
    let mono = |p1: u32, p2: u32, c: Rational| ExteriorElement::monomial(&alg, 0, vec![p1, p2], c);
    let r = |p: i64, q: i64| Rational::new(p.into(), q.into());
    one.add(&mono(1, 0, r(-1, 24))?)?.add(&mono(2, 0, r(7, 5760))?)?.add(&mono(0, 1, r(-4, 5760))?)
}

/// `A-hat` of a flat manifold: all Pontryagin classes vanish.
pub fn a_hat_flat(n: u32) -> Result<ExteriorElement> {
    Ok(ExteriorElement::one(&Algebra::pontryagin(n)?))
}

/// Integration over the manifold factor: every monomial is written as
/// `(rest)(x-part)` with `x-part` the generators in `x_mask`, and the
/// `x-part` is replaced by `pairing(x-part)`. The result lives in the
/// algebra of the remaining generators.
pub fn integrate_fiber<F>(a: &ExteriorElement, x_mask: u64, pairing: F) -> Result<ExteriorElement>
where
    F: Fn(u64) -> Rational,
{
    let alg = &a.alg;
    let kept: Vec<usize> = (0..alg.odd.len()).filter(|i| x_mask >> i & 1 == 0).collect();
    let target = Algebra::new(kept.iter().map(|&i| alg.odd[i].clone()).collect(), alg.even.clone(), alg.max_degree)?;
    let mut out = ExteriorElement::zero(&target);
    for (m, c) in &a.terms {
        let x = m.odd & x_mask;
        let value = pairing(x);
        if value.is_zero() {
            continue;
        }
        let y = m.odd & !x_mask;
        let sign = if (x.count_ones() * y.count_ones()).is_multiple_of(2) { 1 } else { -1 };
        let mut packed = 0u64;
        for (new, &old) in kept.iter().enumerate() {
            if y >> old & 1 == 1 {
                packed |= 1 << new;
            }
        }
        out.insert(Monomial { odd: packed, even: m.even.clone() }, c * value * int(sign));
    }
    Ok(out)
}

/// Pairing with `[M]` for `M = T^n`, the `x`-generators being the first `n`
/// odd generators: picks out the coefficient of `x1 ... xn`.
pub fn slant_fundamental_class(a: &ExteriorElement, n: usize) -> Result<ExteriorElement> {
    if n > a.alg.odd.len() {
        return Err(Error::AlgebraMismatch);
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    integrate_fiber(a, full, |x| if x == full { Rational::one() } else { Rational::zero() })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndexFormulaReport {
    pub description: String,
    pub class: ExteriorElement,
    #[serde(serialize_with = "as_string")]
    pub rank_part: Rational,
    pub integral: bool,
}

fn as_string<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Chern character of the index bundle of the chiral family on `T^n`:
/// `<e^Omega A-hat(T^n), [T^n]>` with `A-hat(T^n) = 1`.
pub fn family_ch_torus(n: usize) -> Result<IndexFormulaReport> {
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    if n < 2 || 2 * n > MAX_ODD_GENERATORS {
        return Err(Error::DimensionOutOfRange { dim: n, min: 2, max: MAX_ODD_GENERATORS / 2 });
    }
    let alg = Algebra::bi_torus(n, n)?;
    let class = slant_fundamental_class(&exp_nilpotent(&omega(&alg, n)?)?, n)?;
    Ok(IndexFormulaReport {
        description: format!("ch(ind D+) over the parameter torus of T^{n}"),
        rank_part: class.constant_part(),
        integral: class.is_integral(),
        class,
    })
}

/// Chern character of the index of the odd family over the torus of flat
/// connections of a 3-manifold with triple cup product `cup`:
/// `<e^Omega, [Y]>` with `<x_i x_j x_k, [Y]> = zeta_ijk`.
pub fn odd_family_ch(cup: &CupForm) -> Result<ExteriorElement> {
    let b = cup.betti();
    if 2 * b > MAX_ODD_GENERATORS {
        return Err(Error::DimensionOutOfRange { dim: b, min: 0, max: MAX_ODD_GENERATORS / 2 });
    }
    let alg = Algebra::bi_torus(b, b)?;
    let e = exp_nilpotent(&omega(&alg, b)?)?;
    let x_mask = if b == 0 { 0 } else { (1u64 << b) - 1 };
    integrate_fiber(&e, x_mask, |x| {
        if x.count_ones() != 3 {
            return Rational::zero();
        }
        let idx: Vec<usize> = (0..b).filter(|i| x >> i & 1 == 1).collect();
        int(cup.get(idx[0], idx[1], idx[2]))
    })
}

/// Pontryagin numbers of a closed oriented manifold.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PontryaginNumbers {
    pub p1: Rational,
    pub p1_squared: Rational,
    pub p2: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PontryaginIndex {
    #[serde(serialize_with = "as_string")]
    pub value: Rational,
    pub integral: bool,
}

/// `<A-hat(M), [M]>`: `-p1/24` in dimension 4, `(7 p1^2 - 4 p2)/5760` in
/// dimension 8 and zero when `n = 2 mod 4`. A non-integral value signals
/// data that no spin manifold has.
pub fn index_from_pontryagin(n: usize, numbers: &PontryaginNumbers) -> Result<PontryaginIndex> {
    let r = |p: i64, q: i64| Rational::new(p.into(), q.into());
    let value = match n {
        2 | 6 => Rational::zero(),
        4 => -numbers.p1.clone() * r(1, 24),
        8 => (int(7) * &numbers.p1_squared - int(4) * &numbers.p2) * r(1, 5760),
        _ if n % 2 == 1 => return Err(Error::OddDimension(n)),
        _ => return Err(Error::DimensionOutOfRange { dim: n, min: 2, max: 8 }),
    };
    Ok(PontryaginIndex { integral: value.is_integer(), value })
}

/// `ch(E) = rank + c1 + (c1^2 - 2 c2)/2`, truncated above degree 4.
pub fn chern_character(rank: i64, c1: &ExteriorElement, c2: &ExteriorElement) -> Result<ExteriorElement> {
    c1.check(c2)?;
    let half = Rational::new(1.into(), 2.into());
    let quad = c1.wedge(c1)?.sub(&c2.scale(&int(2)))?.scale(&half);
    Ok(ExteriorElement::scalar(&c1.alg, int(rank)).add(c1)?.add(&quad)?.truncated(4))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(alg: &Arc<Algebra>, names: &[&str]) -> Vec<ExteriorElement> {
        names.iter().map(|n| ExteriorElement::generator(alg, n).unwrap()).collect()
    }

    #[test]
    fn degree_one_anticommutation() {
        let alg = Algebra::bi_torus(2, 2).unwrap();
        let g = gens(&alg, &["x1", "x2", "y1", "y2"]);
        assert!(g[0].wedge(&g[0]).unwrap().is_zero());
        assert_eq!(g[0].wedge(&g[2]).unwrap().to_string(), "x1*y1");
        assert_eq!(g[2].wedge(&g[0]).unwrap().to_string(), "-x1*y1");
        let a = g[0].wedge(&g[2]).unwrap();
        let b = g[1].wedge(&g[3]).unwrap();
        assert_eq!(a.wedge(&b).unwrap().to_string(), "-x1*x2*y1*y2");
    }

    #[test]
    fn wedge_sign_counts_transpositions() {
        assert_eq!(wedge_sign(0b10, 0b01), Some(-1));
        assert_eq!(wedge_sign(0b01, 0b10), Some(1));
        assert_eq!(wedge_sign(0b110, 0b001), Some(1));
        assert_eq!(wedge_sign(0b101, 0b010), Some(-1));
        assert_eq!(wedge_sign(0b1, 0b1), None);
    }

    #[test]
    fn exp_of_omega_in_dimension_two() {
        let alg = Algebra::bi_torus(2, 2).unwrap();
        let e = exp_nilpotent(&omega(&alg, 2).unwrap()).unwrap();
        assert_eq!(e.to_string(), "1 + x1*y1 + x2*y2 - x1*x2*y1*y2");
        assert_eq!(slant_fundamental_class(&e, 2).unwrap().to_string(), "-y1*y2");
        let inverse = exp_nilpotent(&omega(&alg, 2).unwrap().scale(&int(-1))).unwrap();
        assert_eq!(e.wedge(&inverse).unwrap(), ExteriorElement::one(&alg));
        assert_eq!(exp_nilpotent(&ExteriorElement::zero(&alg)).unwrap(), ExteriorElement::one(&alg));
    }

    #[test]
    fn exp_rejects_units() {
        let alg = Algebra::bi_torus(1, 1).unwrap();
        assert!(matches!(exp_nilpotent(&ExteriorElement::one(&alg)), Err(Error::NotNilpotent(_))));
        let poly = Algebra::new(vec![], vec![("h".into(), 2)], None).unwrap();
        assert!(exp_nilpotent(&ExteriorElement::generator(&poly, "h").unwrap()).is_err());
    }

    #[test]
    fn slant_examples() {
        let alg = Algebra::bi_torus(2, 2).unwrap();
        let g = gens(&alg, &["x1", "x2", "y1", "y2"]);
        let top = g[0].wedge(&g[1]).unwrap().wedge(&g[2]).unwrap().wedge(&g[3]).unwrap();
        assert_eq!(slant_fundamental_class(&top, 2).unwrap().to_string(), "y1*y2");
        assert!(slant_fundamental_class(&g[2].wedge(&g[3]).unwrap(), 2).unwrap().is_zero());
    }

    #[test]
    fn torus_family_characters() {
        let expected = ["-y1*y2", "y1*y2*y3*y4", "-y1*y2*y3*y4*y5*y6"];
        for (n, want) in [2, 4, 6].into_iter().zip(expected) {
            let r = family_ch_torus(n).unwrap();
            assert_eq!(r.class.to_string(), want);
            assert!(r.rank_part.is_zero());
            assert!(r.integral);
        }
        assert!(family_ch_torus(3).is_err());
    }

    #[test]
    fn odd_family_of_three_torus() {
        let cup = CupForm::parse(3, "1,2,3:1").unwrap();
        let ch = odd_family_ch(&cup).unwrap();
        assert_eq!(ch.to_string(), "y1*y2*y3");
        assert!(ch.degree_part(1).is_zero());
        assert!(odd_family_ch(&CupForm::zero(3)).unwrap().is_zero());
    }

    #[test]
    fn a_hat_series() {
        assert_eq!(a_hat(8).unwrap().to_string(), "1 - 1/24*p1 - 1/1440*p2 + 7/5760*p1^2");
        assert_eq!(a_hat(4).unwrap().to_string(), "1 - 1/24*p1");
        assert_eq!(a_hat(2).unwrap().to_string(), "1");
        assert_eq!(a_hat_flat(6).unwrap().to_string(), "1");
        assert!(a_hat(12).is_err());
    }

    #[test]
    fn pontryagin_indices() {
        let k3 = PontryaginNumbers { p1: int(-48), ..Default::default() };
        assert_eq!(index_from_pontryagin(4, &k3).unwrap().value, int(2));
        assert_eq!(index_from_pontryagin(4, &PontryaginNumbers::default()).unwrap().value, int(0));
        let eight = PontryaginNumbers { p2: int(-1440), ..Default::default() };
        assert_eq!(index_from_pontryagin(8, &eight).unwrap().value, int(1));
        assert_eq!(index_from_pontryagin(6, &k3).unwrap().value, int(0));
        let odd = index_from_pontryagin(4, &PontryaginNumbers { p1: int(1), ..Default::default() }).unwrap();
        assert!(!odd.integral);
        assert!(index_from_pontryagin(5, &k3).is_err());
    }

    #[test]
    fn chern_character_examples() {
        let alg = Algebra::new(vec![], vec![("h".into(), 2), ("e".into(), 4)], Some(4)).unwrap();
        let zero = ExteriorElement::zero(&alg);
        let h = ExteriorElement::generator(&alg, "h").unwrap();
        let e = ExteriorElement::generator(&alg, "e").unwrap();
        assert_eq!(chern_character(1, &zero, &zero).unwrap().to_string(), "1");
        assert_eq!(chern_character(1, &h, &zero).unwrap().to_string(), "1 + h + 1/2*h^2");
        assert_eq!(chern_character(2, &zero, &e).unwrap().to_string(), "2 - e");
    }

    #[test]
    fn mismatched_algebras_are_rejected() {
        let a = ExteriorElement::one(&Algebra::bi_torus(1, 1).unwrap());
        let b = ExteriorElement::one(&Algebra::bi_torus(2, 2).unwrap());
        assert_eq!(a.wedge(&b), Err(Error::AlgebraMismatch));
    }
}
