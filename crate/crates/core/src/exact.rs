//! Exact arithmetic helpers: rational parsing and formatting, fraction-free
//! rank computation over the integers and Gaussian integers, and rational
//! null spaces.

use std::ops::{Div, Mul, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Exact rational value of a finite double.
pub fn rational_from_f64(x: f64) -> Result<Rational> {
    BigRational::from_f64(x).ok_or_else(|| Error::Parse(format!("non-finite value {x}")))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `p/q`, an integer, or a decimal literal (`-0.25`, `1e-3`) exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let q: BigInt = q.trim().parse().map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = s[pos + 1..]
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(Error::Parse(format!("not a number: {s:?}")));
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(Error::Parse(format!("not a number: {s:?}")));
    }
    let numer: BigInt = format!("{whole}{frac}").parse().unwrap_or_else(|_| BigInt::zero());
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    if negative {
        r = -r;
    }
    Ok(r)
}

/// Formats a double the way C's `%.17g` does.
pub fn format_f64(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.16e}", x);
    let (mant, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let mant = trim_zeros(mant);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mant}e{sign}{:02}", exp.abs());
    }
    let decimals = (16 - exp).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

/// Serializes a double as a JSON number with 17 significant digits;
/// non-finite values become `null`.
pub fn serialize_f64<S: serde::Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::Serialize;
    if !x.is_finite() {
        return s.serialize_none();
    }
    let raw = serde_json::value::RawValue::from_string(format_f64(*x)).map_err(serde::ser::Error::custom)?;
    raw.serialize(s)
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Common denominator `q` and numerators `p_j` with `values[j] = p_j / q`.
pub fn common_denominator(values: &[Rational]) -> (BigInt, Vec<BigInt>) {
    let q = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let nums = values.iter().map(|v| v.numer() * (&q / v.denom())).collect();
    (q, nums)
}

/// Fraction-free Gaussian elimination (Bareiss) returning the rank.
///
/// Valid over any integral domain where the Bareiss quotients are exact,
/// which covers `i128`, `BigInt` and the Gaussian integers. The caller is
/// responsible for choosing a scalar type wide enough for the minors.
pub(crate) fn bareiss_rank<T>(mut rows: Vec<Vec<T>>) -> usize
where
    T: Clone + Zero + One + PartialEq + Sub<Output = T> + Mul<Output = T> + Div<Output = T>,
{
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    let mut prev = T::one();
    for col in 0..ncols {
        let Some(pivot) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let p = rows[rank][col].clone();
        for r in rank + 1..nrows {
            let factor = rows[r][col].clone();
            for c in col + 1..ncols {
                let v = (p.clone() * rows[r][c].clone() - factor.clone() * rows[rank][c].clone())
                    / prev.clone();
                rows[r][c] = v;
            }
            rows[r][col] = T::zero();
        }
        prev = p;
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Exact rank of an integer matrix over the rationals.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() || rows[0].is_empty() {
        return 0;
    }
    // Hadamard bound on every minor; Bareiss forms products of two minors.
    let log_bound: f64 = rows
        .iter()
        .map(|r| {
            let norm2: f64 = r.iter().map(|&v| (v as f64) * (v as f64)).sum();
            0.5 * norm2.max(1.0).log2()
        })
        .sum();
    if log_bound < 60.0 {
        bareiss_rank(rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect())
    } else {
        bareiss_rank(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }
}

/// Exact rank of a Gaussian-integer matrix over `Q(i)`.
pub fn gaussian_rank(rows: Vec<Vec<Complex<BigInt>>>) -> usize {
    bareiss_rank(rows)
}

/// Reduced row echelon form over the rationals; returns pivot columns.
pub fn rref(rows: &mut [Vec<Rational>]) -> Vec<usize> {
    let nrows = rows.len();
    if nrows == 0 {
        return Vec::new();
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let delta = &f * &rows[r][j];
                    rows[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the null space of `rows` (as column vectors of length `ncols`).
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][f].clone();
            }
            v
        })
        .collect()
}

/// Rank of a set of rational vectors.
pub fn rational_rank(vectors: &[Vec<Rational>]) -> usize {
    let mut m = vectors.to_vec();
    rref(&mut m).len()
}
