use dirac_families::bar_homology::{bar_ranks, CupForm};
use dirac_families::char_classes::{exp_nilpotent, Algebra, ExteriorElement};
use dirac_families::exact::int;
use dirac_families::spectral_flow::{exact_flow, ParamPath};
use dirac_families::torus_dirac::{spectrum, TwistParameter};
use num_rational::BigRational;
use proptest::prelude::*;

fn element(coeffs: &[i64], alg: &std::sync::Arc<Algebra>) -> ExteriorElement {
    let mut e = ExteriorElement::zero(alg);
    for (mask, &c) in coeffs.iter().enumerate() {
        let m = ExteriorElement::monomial(alg, mask as u64, Vec::new(), int(c)).unwrap();
        e = e.add(&m).unwrap();
    }
    e
}

fn four_generators() -> std::sync::Arc<Algebra> {
    Algebra::new((1..=4).map(|i| format!("e{i}")).collect(), Vec::new(), None).unwrap()
}

proptest! {
    #[test]
    fn wedge_is_associative(a in prop::collection::vec(-3i64..=3, 16), b in prop::collection::vec(-3i64..=3, 16), c in prop::collection::vec(-3i64..=3, 16)) {
        let alg = four_generators();
        let (a, b, c) = (element(&a, &alg), element(&b, &alg), element(&c, &alg));
        prop_assert_eq!(a.wedge(&b).unwrap().wedge(&c).unwrap(), a.wedge(&b.wedge(&c).unwrap()).unwrap());
    }

    #[test]
    fn odd_generators_anticommute(i in 0usize..4, j in 0usize..4) {
        let alg = four_generators();
        let x = ExteriorElement::generator(&alg, &format!("e{}", i + 1)).unwrap();
        let y = ExteriorElement::generator(&alg, &format!("e{}", j + 1)).unwrap();
        let sum = x.wedge(&y).unwrap().add(&y.wedge(&x).unwrap()).unwrap();
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn exp_of_sum_of_even_nilpotents_factors(a in prop::collection::vec(-3i64..=3, 6), b in prop::collection::vec(-3i64..=3, 6)) {
        // degree-2 elements commute, so exp(a + b) = exp(a) exp(b)
        let alg = four_generators();
        let deg2 = |v: &[i64]| {
            let masks = [0b0011u64, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100];
            let mut e = ExteriorElement::zero(&alg);
            for (&m, &c) in masks.iter().zip(v) {
                e = e.add(&ExteriorElement::monomial(&alg, m, Vec::new(), int(c)).unwrap()).unwrap();
            }
            e
        };
        let (x, y) = (deg2(&a), deg2(&b));
        let lhs = exp_nilpotent(&x.add(&y).unwrap()).unwrap();
        let rhs = exp_nilpotent(&x).unwrap().wedge(&exp_nilpotent(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn circle_spectrum_is_shifted_integers(p in -50i64..=50, q in 1i64..=12, k in 1i64..=5) {
        let c = BigRational::new(p.into(), q.into());
        let s = spectrum(1, &TwistParameter::new(vec![c.clone()]).unwrap(), k).unwrap();
        prop_assert_eq!(s.entries.len() as i64, 2 * k + 1);
        for (e, m) in s.entries.iter().zip(-k..=k) {
            prop_assert_eq!(e.value.as_rational(), Some(int(m) + &c));
        }
    }

    #[test]
    fn reversing_a_path_negates_flow(a in -40i64..=40, b in -40i64..=40, q in 1i64..=6) {
        let t = |x: i64| TwistParameter::new(vec![BigRational::new(x.into(), q.into())]).unwrap();
        let path = ParamPath::segment(t(a), t(b)).unwrap();
        let fwd = exact_flow(1, &path, 50).unwrap().flow;
        let back = exact_flow(1, &path.reversed(), 50).unwrap().flow;
        prop_assert_eq!(fwd, -back);
    }

    #[test]
    fn bar_ranks_are_balanced(coeffs in prop::collection::vec(-2i64..=2, 10)) {
        let mut entries = Vec::new();
        let mut it = coeffs.iter();
        for i in 0..5 {
            for j in i + 1..5 {
                for k in j + 1..5 {
                    entries.push(([i, j, k], *it.next().unwrap()));
                }
            }
        }
        let r = bar_ranks(&CupForm::from_entries(5, &entries).unwrap()).unwrap();
        prop_assert_eq!(r.even, r.odd);
        prop_assert!(r.even > 0);
        let scaled = bar_ranks(&CupForm::from_entries(5, &entries).unwrap().scaled(3)).unwrap();
        prop_assert_eq!((scaled.even, scaled.odd), (r.even, r.odd));
    }
}
