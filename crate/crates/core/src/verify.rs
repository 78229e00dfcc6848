//! End-to-end identity checks, grouped into named suites.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bar_homology::{bar_ranks, CupForm};
use crate::char_classes::{
    a_hat, chern_character, family_ch_torus, index_from_pontryagin, odd_family_ch, Algebra, ExteriorElement,
    PontryaginNumbers,
};
use crate::clifford::{build_clifford, GaussMatrix};
use crate::error::{Error, Result};
use crate::exact::{int, Rational};
use crate::family_index::{
    build_w_construction, family_index_t2, fhs_chern_number, kernel_jump_loci, local_winding_degree,
    two_band_lower_frames, Domain, GridSpec,
};
use crate::spectral_flow::{
    block_sum, circle_dirac_family, diagonal_phase_loop, exact_flow, numeric_flow, unitary_winding,
    NumericFlowOptions, ParamPath,
};
use crate::torus_dirac::{
    chiral_index, kernel_dimension, spectra_conjugacy_check, spectrum, verify_lichnerowicz, SpectralValue,
    TwistParameter,
};

const SEED: u64 = 0x5eed_d1ac;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Clifford,
    Lichnerowicz,
    CircleSpectrum,
    IndexT2,
    SpectralFlow,
    Winding,
    FamilyIndex,
    ChernFormulas,
    GromovLawson,
    BarT3,
    All,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Clifford,
        Suite::Lichnerowicz,
        Suite::CircleSpectrum,
        Suite::IndexT2,
        Suite::SpectralFlow,
        Suite::Winding,
        Suite::FamilyIndex,
        Suite::ChernFormulas,
        Suite::GromovLawson,
        Suite::BarT3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Clifford => "clifford",
            Suite::Lichnerowicz => "lichnerowicz",
            Suite::CircleSpectrum => "circle-spectrum",
            Suite::IndexT2 => "index-t2",
            Suite::SpectralFlow => "spectral-flow",
            Suite::Winding => "winding",
            Suite::FamilyIndex => "family-index",
            Suite::ChernFormulas => "chern-formulas",
            Suite::GromovLawson => "gromov-lawson",
            Suite::BarT3 => "bar-t3",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown verify suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Largest Clifford dimension checked by the `clifford` suite.
    pub max_dim: usize,
    /// Dimension used by the `gromov-lawson` suite.
    pub dim: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { max_dim: 8, dim: 2 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

struct Recorder {
    suite: Suite,
    checks: Vec<Check>,
}

impl Recorder {
    fn check(&mut self, name: &str, f: impl FnOnce() -> Result<(bool, String)>) {
        let (passed, detail) = match f() {
            Ok(r) => r,
            Err(e) => (false, format!("{}: {e}", e.reason())),
        };
        self.checks.push(Check { suite: self.suite.name().into(), name: name.into(), passed, detail });
    }
}

pub fn verify_suite(suite: Suite, opts: VerifyOptions) -> Result<VerifyReport> {
    let suites: Vec<Suite> = if suite == Suite::All { Suite::ALL.to_vec() } else { vec![suite] };
    if opts.max_dim == 0 || opts.max_dim > crate::clifford::MAX_DIMENSION {
        return Err(Error::DimensionOutOfRange { dim: opts.max_dim, min: 1, max: crate::clifford::MAX_DIMENSION });
    }
    let mut checks = Vec::new();
    for s in suites {
        let mut rec = Recorder { suite: s, checks: Vec::new() };
        match s {
            Suite::Clifford => clifford_suite(&mut rec, opts.max_dim),
            Suite::Lichnerowicz => lichnerowicz_suite(&mut rec),
            Suite::CircleSpectrum => circle_suite(&mut rec),
            Suite::IndexT2 => index_t2_suite(&mut rec),
            Suite::SpectralFlow => flow_suite(&mut rec),
            Suite::Winding => winding_suite(&mut rec),
            Suite::FamilyIndex => family_suite(&mut rec),
            Suite::ChernFormulas => chern_suite(&mut rec),
            Suite::GromovLawson => gromov_lawson_suite(&mut rec, opts.dim)?,
            Suite::BarT3 => bar_suite(&mut rec),
            Suite::All => unreachable!(),
        }
        checks.extend(rec.checks);
    }
    Ok(VerifyReport { suite: suite.name().into(), passed: checks.iter().all(|c| c.passed), checks })
}

fn gauss(rows: &[&[(i64, i64)]]) -> GaussMatrix {
    GaussMatrix::from_rows(&rows.iter().map(|r| r.iter().map(|&(a, b)| Complex::new(a, b)).collect()).collect::<Vec<_>>())
}

/// Reference generators for `n <= 4`, written out by hand.
fn reference_generators(n: usize) -> Vec<GaussMatrix> {
    const O: (i64, i64) = (0, 0);
    const P: (i64, i64) = (1, 0);
    const M: (i64, i64) = (-1, 0);
    const I: (i64, i64) = (0, 1);
    const J: (i64, i64) = (0, -1);
    match n {
        1 => vec![gauss(&[&[I]])],
        2 => vec![gauss(&[&[O, M], &[P, O]]), gauss(&[&[O, I], &[I, O]])],
        3 => vec![gauss(&[&[I, O], &[O, J]]), gauss(&[&[O, M], &[P, O]]), gauss(&[&[O, I], &[I, O]])],
        4 => vec![
            gauss(&[&[O, O, M, O], &[O, O, O, M], &[P, O, O, O], &[O, P, O, O]]),
            gauss(&[&[O, O, I, O], &[O, O, O, J], &[I, O, O, O], &[O, J, O, O]]),
            gauss(&[&[O, O, O, M], &[O, O, P, O], &[O, M, O, O], &[P, O, O, O]]),
            gauss(&[&[O, O, O, I], &[O, O, I, O], &[O, I, O, O], &[I, O, O, O]]),
        ],
        _ => Vec::new(),
    }
}

fn clifford_suite(rec: &mut Recorder, max_dim: usize) {
    for n in 1..=max_dim {
        rec.check(&format!("relations n={n}"), || {
            let r = build_clifford(n)?.check_relations();
            Ok((r.all_hold(), format!("{r:?}")))
        });
    }
    for n in 1..=max_dim.min(4) {
        rec.check(&format!("reference generators n={n}"), || {
            let rep = build_clifford(n)?;
            Ok((rep.generators() == reference_generators(n).as_slice(), format!("{} generators", rep.generators().len())))
        });
    }
}

fn random_twist(rng: &mut ChaCha8Rng, n: usize) -> Result<TwistParameter> {
    TwistParameter::new((0..n).map(|_| Rational::new(rng.gen_range(-20..=20).into(), rng.gen_range(1..=12).into())).collect())
}

fn lichnerowicz_suite(rec: &mut Recorder) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for n in 1..=4 {
        let twists: Result<Vec<_>> = (0..100).map(|_| random_twist(&mut rng, n)).collect();
        rec.check(&format!("D_k(c)^2 = |k+c|^2 n={n} K=5, 100 twists"), || {
            let mut worst = Rational::zero();
            for c in twists? {
                worst = worst.max(verify_lichnerowicz(n, &c, 5)?);
            }
            Ok((worst.is_zero(), format!("max deviation {worst}")))
        });
    }
}

fn circle_suite(rec: &mut Recorder) {
    for c in ["1/4", "0", "-2/3", "7/5"] {
        rec.check(&format!("spectrum(1, {c}, 3) = {{m + c}}"), || {
            let tw = TwistParameter::parse(c)?;
            let s = spectrum(1, &tw, 3)?;
            let expected: Vec<SpectralValue> =
                (-3..=3).map(|m| SpectralValue::from_rational(&(int(m) + &tw.coords()[0]))).collect();
            let got: Vec<SpectralValue> = s.entries.iter().map(|e| e.value.clone()).collect();
            let ok = got == expected && s.entries.iter().all(|e| e.multiplicity == 1);
            Ok((ok, s.to_json()))
        });
    }
    for (a, b, expected) in [("1/4", "5/4", true), ("1/4", "-3/4", true), ("1/4", "1/2", false), ("0", "1/3", false)] {
        rec.check(&format!("conjugacy({a}, {b}) = {expected}"), || {
            let got = spectra_conjugacy_check(1, &TwistParameter::parse(a)?, &TwistParameter::parse(b)?, 3)?;
            Ok((got == expected, format!("{got}")))
        });
    }
}

fn index_t2_suite(rec: &mut Recorder) {
    rec.check("sum of local windings has magnitude of symbolic class", || {
        let numeric = family_index_t2(3, 0.1, 64)?;
        let symbolic = family_ch_torus(2)?;
        let coeffs: Vec<Rational> = symbolic.class.terms().map(|(_, c)| c.clone()).collect();
        let ok = numeric.total_c1.abs() == 1 && coeffs.len() == 1 && coeffs[0].abs() == int(1);
        Ok((ok, format!("total_c1 = {}, symbolic = {}", numeric.total_c1, symbolic.class)))
    });
    rec.check("dim ker D = 2 exactly at c = 0", || {
        let at_zero = kernel_dimension(2, &TwistParameter::zero(2), 10)?;
        let elsewhere = ["1/2,0", "1/4,-1/3", "1/2,1/2", "1/10,0"]
            .iter()
            .map(|c| kernel_dimension(2, &TwistParameter::parse(c)?, 10))
            .collect::<Result<Vec<_>>>()?;
        Ok((at_zero == 2 && elsewhere.iter().all(|&d| d == 0), format!("{at_zero}, {elsewhere:?}")))
    });
    rec.check("chiral index vanishes", || {
        let idx = ["0,0", "1/2,0", "1/4,-1/3"]
            .iter()
            .map(|c| Ok(chiral_index(2, &TwistParameter::parse(c)?, 10)?.index))
            .collect::<Result<Vec<_>>>()?;
        Ok((idx.iter().all(|&i| i == 0), format!("{idx:?}")))
    });
}

fn circle_path(a: &Rational, b: &Rational) -> Result<ParamPath> {
    ParamPath::segment(TwistParameter::new(vec![a.clone()])?, TwistParameter::new(vec![b.clone()])?)
}

fn flow_suite(rec: &mut Recorder) {
    rec.check("exact flow of the circle loop 0 -> 1 is 1", || {
        let f = exact_flow(1, &circle_path(&int(0), &int(1))?, 3)?.flow;
        Ok((f == 1, format!("{f}")))
    });
    for k in [5, 10, 20] {
        rec.check(&format!("numeric flow agrees at K={k}"), || {
            let exact = exact_flow(1, &circle_path(&Rational::new(1.into(), 10.into()), &Rational::new(11.into(), 10.into()))?, k)?.flow;
            let fam = circle_dirac_family(0.1, 1.1, k, 4 * k as usize + 1)?;
            let numeric = numeric_flow(&fam, NumericFlowOptions::default())?.flow;
            Ok((exact == numeric && exact == 1, format!("exact {exact}, numeric {numeric}")))
        });
    }
    rec.check("coordinate loops of T^3 have zero flow", || {
        let mut flows = Vec::new();
        for axis in 0..3 {
            let mut end = vec![0i64; 3];
            end[axis] = 1;
            let path = ParamPath::segment(TwistParameter::zero(3), TwistParameter::from_integers(&end)?)?;
            flows.push(exact_flow(3, &path, 2)?.flow);
        }
        Ok((flows.iter().all(|&f| f == 0), format!("{flows:?}")))
    });
    rec.check("flow is additive under concatenation (50 random paths)", || {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
        let r = |rng: &mut ChaCha8Rng| Rational::new(rng.gen_range(-30..=30).into(), rng.gen_range(1..=8).into());
        for _ in 0..50 {
            let (a, b, c) = (r(&mut rng), r(&mut rng), r(&mut rng));
            let ab = circle_path(&a, &b)?;
            let bc = circle_path(&b, &c)?;
            let whole = exact_flow(1, &ab.concat(&bc)?, 40)?.flow;
            let parts = exact_flow(1, &ab, 40)?.flow + exact_flow(1, &bc, 40)?.flow;
            let direct = (c.floor() - a.floor()).to_integer();
            if whole != parts || num_bigint::BigInt::from(whole) != direct {
                return Ok((false, format!("{a} -> {b} -> {c}: {whole} vs {parts}")));
            }
        }
        Ok((true, "50 paths".into()))
    });
}

fn winding_suite(rec: &mut Recorder) {
    rec.check("diag(e^it, 1, 1) winds once", || {
        let w = unitary_winding(&diagonal_phase_loop(&[1, 0, 0], 64))?;
        Ok((w == 1, format!("{w}")))
    });
    rec.check("diag(e^it, e^-it) does not wind", || {
        let w = unitary_winding(&diagonal_phase_loop(&[1, -1], 64))?;
        Ok((w == 0, format!("{w}")))
    });
    rec.check("winding is additive under block sums", || {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 2);
        for _ in 0..20 {
            let a: Vec<i64> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(-2..=2)).collect();
            let b: Vec<i64> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(-2..=2)).collect();
            let (la, lb) = (diagonal_phase_loop(&a, 96), diagonal_phase_loop(&b, 96));
            let sum = unitary_winding(&block_sum(&la, &lb)?)?;
            if sum != unitary_winding(&la)? + unitary_winding(&lb)? {
                return Ok((false, format!("{a:?} + {b:?}")));
            }
        }
        Ok((true, "20 pairs".into()))
    });
}

fn family_suite(rec: &mut Recorder) {
    rec.check("kernel jumps only at c = 0", || {
        let j = kernel_jump_loci(2, 3, Domain::Centered)?;
        let ok = j.len() == 1 && j[0].location.is_integral() && j[0].modes == vec![vec![0, 0]];
        Ok((ok, format!("{} jump point(s)", j.len())))
    });
    rec.check("local degree independent of radius and sampling", || {
        let j = kernel_jump_loci(2, 3, Domain::Centered)?;
        let mut degrees = Vec::new();
        for r in [0.05, 0.1, 0.2] {
            for m in [32, 64, 128] {
                degrees.push(local_winding_degree(&j[0], r, m)?);
            }
        }
        Ok((degrees.iter().all(|&d| d == degrees[0]) && degrees[0].abs() == 1, format!("{degrees:?}")))
    });
    for m in [16, 32] {
        rec.check(&format!("W-construction on a {m}x{m} grid has rank 0"), || {
            let w = build_w_construction(2, 3, GridSpec { m, offset: 0.0 }, &[vec![0, 0]])?;
            let ok = w.fibers.iter().all(|f| f.dim() == 1) && w.index_rank() == Some(0);
            Ok((ok, format!("min certificate {:e}", w.min_certificate())))
        });
    }
    rec.check("empty W fails exactly when the grid hits the jump", || {
        let avoiding = build_w_construction(2, 3, GridSpec { m: 16, offset: 0.5 }, &[]).is_ok();
        let hitting = matches!(
            build_w_construction(2, 3, GridSpec { m: 16, offset: 0.0 }, &[]),
            Err(Error::CertificateFailed { .. })
        );
        Ok((avoiding && hitting, format!("avoiding ok: {avoiding}, hitting fails: {hitting}")))
    });
    rec.check("plaquette Chern numbers of the two-band family", || {
        let top = fhs_chern_number(&two_band_lower_frames(-1.0, 24))?;
        let trivial = fhs_chern_number(&two_band_lower_frames(-3.0, 24))?;
        Ok((top.abs() == 1 && trivial == 0, format!("m0=-1: {top}, m0=-3: {trivial}")))
    });
}

fn chern_suite(rec: &mut Recorder) {
    rec.check("A-hat series", || {
        let s = a_hat(8)?.to_string();
        Ok((s == "1 - 1/24*p1 - 1/1440*p2 + 7/5760*p1^2", s))
    });
    rec.check("K3 index from p1 = -48", || {
        let v = index_from_pontryagin(4, &PontryaginNumbers { p1: int(-48), ..Default::default() })?.value;
        Ok((v == int(2), v.to_string()))
    });
    rec.check("dimension-8 index from p2 = -1440", || {
        let v = index_from_pontryagin(8, &PontryaginNumbers { p2: int(-1440), ..Default::default() })?.value;
        Ok((v == int(1), v.to_string()))
    });
    for n in [2, 4, 6] {
        rec.check(&format!("torus family class n={n} is a unit monomial"), || {
            let r = family_ch_torus(n)?;
            let terms: Vec<_> = r.class.terms().collect();
            let ok = terms.len() == 1 && terms[0].1.abs() == int(1) && terms[0].0.odd.count_ones() as usize == n;
            Ok((ok && r.rank_part.is_zero(), r.class.to_string()))
        });
    }
    rec.check("odd family class of T^3 equals the cup form", || {
        let ch = odd_family_ch(&CupForm::parse(3, "1,2,3:1")?)?;
        let ok = ch.degree_part(1).is_zero() && ch.to_string() == "y1*y2*y3";
        Ok((ok, ch.to_string()))
    });
    rec.check("Chern character of a line bundle", || {
        let alg = Algebra::new(vec![], vec![("h".into(), 2), ("e".into(), 4)], Some(4))?;
        let h = ExteriorElement::generator(&alg, "h")?;
        let s = chern_character(1, &h, &ExteriorElement::zero(&alg))?.to_string();
        Ok((s == "1 + h + 1/2*h^2", s))
    });
}

fn gromov_lawson_suite(rec: &mut Recorder, n: usize) -> Result<()> {
    if n % 2 == 1 || n < 2 {
        return Err(Error::OddDimension(n));
    }
    rec.check(&format!("symbolic ch(ind) on T^{n} is nonzero"), || {
        let r = family_ch_torus(n)?;
        Ok((!r.class.is_zero(), r.class.to_string()))
    });
    rec.check(&format!("D+ has kernel at c = 0 on T^{n}"), || {
        let cutoff = if n <= 4 { 2 } else { 1 };
        let ci = chiral_index(n, &TwistParameter::zero(n), cutoff)?;
        let jumps = kernel_jump_loci(n, cutoff, Domain::Centered)?;
        Ok((ci.kernel_plus > 0 && jumps.len() == 1, format!("dim ker D+ = {}", ci.kernel_plus)))
    });
    Ok(())
}

fn bar_suite(rec: &mut Recorder) {
    rec.check("T^3 bar ranks are (3, 3)", || {
        let r = bar_ranks(&CupForm::parse(3, "1,2,3:1")?)?;
        Ok((r.even == 3 && r.odd == 3 && r.nonvanishing, format!("({}, {})", r.even, r.odd)))
    });
    rec.check("zero form on b = 1..6 has ranks (2^(b-1), 2^(b-1))", || {
        for b in 1..=6 {
            let r = bar_ranks(&CupForm::zero(b))?;
            if r.even != 1 << (b - 1) || r.odd != 1 << (b - 1) {
                return Ok((false, format!("b = {b}: ({}, {})", r.even, r.odd)));
            }
        }
        Ok((true, "b = 1..6".into()))
    });
}
