//! Property-based invariants across modules.

mod common;

use arcsos::arcsearch::{search_negative_arc, verify_certificate, SearchBudget};
use arcsos::cli::parse_problem;
use arcsos::ideal::monomials_up_to;
use arcsos::jet::{ArcHom, Jet};
use arcsos::rational::{self, frac, int};
use arcsos::sos::{verify_sos, SosCertificate};
use arcsos::theta::{theta_membership, ThetaOptions, ThetaVerdict};
use arcsos::univariate::UniPoly;
use arcsos::{Polynomial, Rational};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use common::{ctx, families};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| frac(n, d))
}

fn polynomial(nvars: usize, deg: u32) -> impl Strategy<Value = Polynomial> {
    let monos = monomials_up_to(nvars, deg);
    let len = monos.len();
    prop::collection::vec((0..len, small_rational()), 0..5).prop_map(move |terms| {
        Polynomial::from_terms(nvars, terms.into_iter().map(|(i, c)| (monos[i].clone(), c)))
    })
}

fn jet(order: usize) -> impl Strategy<Value = Jet> {
    prop::collection::vec(small_rational(), order).prop_map(move |c| Jet::new(order, c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluation_is_a_ring_map(a in polynomial(2, 3), b in polynomial(2, 3), x in small_rational(), y in small_rational()) {
        let p = [x, y];
        let sum = a.add(&b).unwrap().eval(&p).unwrap();
        let prod = a.mul(&b).unwrap().eval(&p).unwrap();
        let (va, vb) = (a.eval(&p).unwrap(), b.eval(&p).unwrap());
        prop_assert_eq!(sum, &va + &vb);
        prop_assert_eq!(prod, va * vb);
    }

    #[test]
    fn normal_forms_are_canonical(f in polynomial(2, 4), g in polynomial(2, 3)) {
        let c = ctx(&["y^2 - x^3", "x*y^2"], &["x", "y"]);
        let nf = c.normal_form(&f);
        prop_assert_eq!(c.normal_form(&nf), nf.clone());
        prop_assert!(c.is_member(&f.sub(&nf).unwrap()));
        let prod = c.normal_form(&f.mul(&g).unwrap());
        let reduced = c.normal_form(&nf.mul(&c.normal_form(&g)).unwrap());
        prop_assert_eq!(prod, reduced);
        for (m, _) in nf.terms() {
            prop_assert!(c.is_standard(m));
        }
    }

    #[test]
    fn jet_product_is_commutative_and_associative(a in jet(5), b in jet(5), c in jet(5)) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        let parsed = Jet::parse(&a.to_text(), 5).unwrap();
        prop_assert_eq!(parsed, a);
    }

    #[test]
    fn arcs_are_ring_homomorphisms(f in polynomial(2, 3), g in polynomial(2, 3), jx in jet(4), jy in jet(4)) {
        let arc = ArcHom::new(vec![jx.coeff(0).clone(), jy.coeff(0).clone()], vec![jx, jy]).unwrap();
        let fg = arc.apply(&f.mul(&g).unwrap()).unwrap();
        prop_assert_eq!(fg, arc.apply(&f).unwrap().mul(&arc.apply(&g).unwrap()).unwrap());
        let s = arc.apply(&f.add(&g).unwrap()).unwrap();
        prop_assert_eq!(s, arc.apply(&f).unwrap().add(&arc.apply(&g).unwrap()).unwrap());
        // the parameter flip commutes with application
        prop_assert_eq!(arc.negate_parameter().apply(&f).unwrap(), arc.apply(&f).unwrap().negate_parameter());
    }

    #[test]
    fn rationals_round_trip(r in small_rational()) {
        prop_assert_eq!(rational::parse(&rational::fmt(&r)), Some(r));
    }

    #[test]
    fn problem_files_round_trip(gens in prop::collection::vec(polynomial(3, 3), 0..3), f in polynomial(3, 2),
                                 pt in prop::collection::vec(small_rational(), 3), k in 1u32..4) {
        let vars = ["u", "v", "w"];
        let names = common::names(&vars);
        let order = arcsos::TermOrder::grevlex(3);
        let ideal: Vec<String> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.to_string_with(&names, &order)).collect();
        let text = format!(
            "vars: u, v, w\nideal:\n{}\nf: {}\npoint: {}\nparams: k={k}\n",
            ideal.iter().map(|g| format!("  {g}\n")).collect::<String>(),
            f.to_string_with(&names, &order),
            rational::fmt_point(&pt),
        );
        let p = parse_problem(&text).unwrap();
        prop_assert_eq!(p.params.k, k);
        prop_assert_eq!(&p.points[0], &pt);
        let again = parse_problem(&p.to_text()).unwrap();
        prop_assert_eq!(again, p);
    }

    #[test]
    fn gram_certificates_verify(entries in prop::collection::vec(small_rational(), 6), d in prop::collection::vec(0i64..5, 3)) {
        // G = L D Lᵀ with unit lower-triangular L is PSD by construction.
        let l = [
            [int(1), int(0), int(0)],
            [entries[0].clone(), int(1), int(0)],
            [entries[1].clone(), entries[2].clone(), int(1)],
        ];
        let d: Vec<Rational> = d.into_iter().map(int).collect();
        let g: Vec<Vec<Rational>> = (0..3)
            .map(|i| (0..3).map(|j| (0..3).map(|k| &l[i][k] * &d[k] * &l[j][k]).sum()).collect())
            .collect();
        let vars = ["x", "y"];
        let c = ctx(&["x^2 + y^2 - 1"], &vars);
        let basis = c.standard_monomials(1);
        let cert = SosCertificate::from_gram(1, basis.clone(), g.clone()).unwrap();
        let mut f = Polynomial::zero(2);
        for i in 0..3 {
            for j in 0..3 {
                f = f.add(&Polynomial::term(g[i][j].clone(), basis[i].mul(&basis[j]))).unwrap();
            }
        }
        prop_assert!(verify_sos(&cert, &f, &c));
        prop_assert!(cert.summands.iter().all(|(w, _)| !w.is_negative()));
        let shifted = f.sub(&Polynomial::constant(2, int(1))).unwrap();
        prop_assert!(!verify_sos(&cert, &shifted, &c));
    }

    #[test]
    fn rational_roots_are_recovered(roots in prop::collection::vec(small_rational(), 1..4)) {
        let mut p = UniPoly::new(vec![int(1)]);
        for r in &roots {
            let mut next = vec![Rational::zero(); p.coeffs().len() + 1];
            for (i, c) in p.coeffs().iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * r;
            }
            p = UniPoly::new(next);
        }
        let mut expected = roots.clone();
        expected.sort();
        expected.dedup();
        prop_assert_eq!(p.rational_roots(), expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn found_arcs_always_verify(f in polynomial(3, 3), which in 0usize..4) {
        let fams = families();
        let fam = &fams[[1, 2, 5, 6][which]];
        let c = fam.ctx();
        let n = fam.nvars();
        // drop the variables the family does not have
        let f = Polynomial::from_terms(n, f.terms()
            .filter(|(m, _)| m.exponents()[n..].iter().all(|&e| e == 0))
            .map(|(m, v)| (arcsos::Monomial::new(m.exponents()[..n].to_vec()), v.clone())));
        let p = vec![int(0); n];
        let f = f.sub(&Polynomial::constant(n, f.eval(&p).unwrap())).unwrap();
        let budget = SearchBudget { max_branches_per_order: 300, ..SearchBudget::default() };
        let v = search_negative_arc(&c, &p, &f, 3, &budget).unwrap();
        if let Some(cert) = v.certificate() {
            prop_assert!(verify_certificate(cert, &c, &p, &f));
            prop_assert!(cert.arc().is_valid(&c));
            prop_assert!(cert.leading().1.is_negative());
            // a strictly positive shift at the basepoint can never be certified
            let g = f.add(&Polynomial::constant(n, int(1))).unwrap();
            prop_assert!(!verify_certificate(cert, &c, &p, &g));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn dirac_points_are_inside(t in small_rational(), which in 0usize..5) {
        let fams = families();
        let fam = &fams[which];
        let p = (fam.point)(&t);
        let v = theta_membership(&fam.ctx(), 2, &p, &ThetaOptions::default()).unwrap();
        prop_assert!(matches!(v, ThetaVerdict::Inside(ref w) if w.dirac && w.residual == 0.0));
    }

    #[test]
    fn outside_persists_to_higher_levels(a in 5i64..20, b in -3i64..=3) {
        let vars = ["x", "y"];
        let c = ctx(&["x^2 + y^2 - 1"], &vars);
        let p = vec![frac(a, 4), frac(b, 4)];
        let opts = ThetaOptions::default();
        let v1 = theta_membership(&c, 1, &p, &opts).unwrap();
        if let ThetaVerdict::Outside { f, certificate, .. } = &v1 {
            // a 1-sos certificate is also a 2-sos certificate
            let lifted = SosCertificate { k: 2, ..certificate.clone() };
            prop_assert!(verify_sos(&lifted, f, &c));
            prop_assert!(f.eval(&p).unwrap().is_negative());
            let v2 = theta_membership(&c, 2, &p, &opts).unwrap();
            prop_assert!(!v2.is_inside(), "{:?}", v2);
        } else {
            prop_assert!(false, "({a}/4, {b}/4) is outside the disk: {:?}", v1);
        }
    }

    #[test]
    fn midpoints_of_inside_points_are_inside(s in small_rational(), t in small_rational()) {
        let fams = families();
        let circle = &fams[0];
        let (p, q) = ((circle.point)(&s), (circle.point)(&t));
        let mid: Vec<Rational> = p.iter().zip(&q).map(|(a, b)| (a + b) / int(2)).collect();
        let v = theta_membership(&circle.ctx(), 1, &mid, &ThetaOptions::default()).unwrap();
        prop_assert!(v.is_inside(), "{:?} {:?}", mid, v);
    }
}

#[test]
fn undeclared_variables_name_their_position() {
    let err = parse_problem("vars: a\nideal: a^2\nf: a + bb\n").unwrap_err().to_string();
    assert!(err.contains("`bb`") && err.contains("line 3"), "{err}");
}
