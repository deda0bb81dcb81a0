use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use serde_json::Value;

use ybw_core::construct::build_couple;
use ybw_core::corpus::corpus_params;
use ybw_core::couple::YangBaxterCouple;
use ybw_core::cyclo::{parse_rational, rat};
use ybw_core::group::FiniteGroup;
use ybw_core::hirai::{closed_form_character, HiraiParams};
use ybw_core::io::{element_from_json, element_to_json, matrix_from_json, matrix_to_json, scalar_from_json, scalar_to_json};
use ybw_core::matrix::ExactMatrix;
use ybw_core::perm::Perm;
use ybw_core::rng::Lcg64;
use ybw_core::wreath::WreathElement;
use ybw_core::{CycloScalar, Rational};

fn scalar(n: u32) -> impl Strategy<Value = CycloScalar> {
    let phi = ybw_core::cyclo::euler_phi(n);
    prop::collection::vec((-6i64..=6, 1i64..=4), phi)
        .prop_map(move |c| CycloScalar::from_basis_coeffs(n, c.into_iter().map(|(p, q)| rat(p, q)).collect()).unwrap())
}

fn any_scalar() -> impl Strategy<Value = CycloScalar> {
    prop_oneof![scalar(1), scalar(3), scalar(4), scalar(5), scalar(12)]
}

fn small_matrix(n: usize) -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec(prop_oneof![3 => Just(0i64), 1 => -2i64..=2], n * n)
        .prop_map(move |v| ExactMatrix::from_ints(n, n, &v))
}

struct Fixture {
    params: HiraiParams,
    couple: YangBaxterCouple,
}

fn fixture(name: &'static str) -> &'static Fixture {
    static CELLS: OnceLock<Vec<(&'static str, Fixture)>> = OnceLock::new();
    let all = CELLS.get_or_init(|| {
        ["s3_triv_std", "z3_eps_mix", "q8_h"]
            .into_iter()
            .map(|n| {
                let params = corpus_params(n).unwrap();
                let (couple, _) = build_couple(&params, None).unwrap();
                (n, Fixture { params, couple })
            })
            .collect()
    });
    &all.iter().find(|(n, _)| *n == name).unwrap().1
}

fn fixture_name() -> impl Strategy<Value = &'static str> {
    prop_oneof![Just("s3_triv_std"), Just("z3_eps_mix"), Just("q8_h")]
}

fn element(group: &Arc<FiniteGroup>, seed: u64, max_support: usize) -> WreathElement {
    WreathElement::random(group.clone(), &mut Lcg64::new(seed), max_support)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in any_scalar(), b in any_scalar(), c in any_scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!(a.conj().conj(), a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        let lhs = (&a * &b).to_complex();
        let rhs = a.to_complex() * b.to_complex();
        prop_assert!((lhs - rhs).norm() < 1e-6 * (1.0 + rhs.norm()));
    }

    #[test]
    fn rationals_round_trip(p in -1000i64..1000, q in 1i64..1000) {
        let r = rat(p, q);
        prop_assert_eq!(parse_rational(&ybw_core::cyclo::format_rational(&r)), Some(r));
    }

    #[test]
    fn sparse_product_matches_dense(a in small_matrix(4), b in small_matrix(4)) {
        let dense = a.matmul(&b).unwrap();
        let sparse = a.to_sparse().matmul(&b.to_sparse()).unwrap();
        prop_assert_eq!(sparse.to_dense(), dense.clone());
        prop_assert_eq!(sparse.trace(), dense.trace().unwrap());
    }

    #[test]
    fn kron_mixed_product(a in small_matrix(2), b in small_matrix(2), c in small_matrix(2), d in small_matrix(2)) {
        let lhs = a.kron(&b).matmul(&c.kron(&d)).unwrap();
        let rhs = a.matmul(&c).unwrap().kron(&b.matmul(&d).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bubble_word_reconstructs(images in Just((1..=6usize).collect::<Vec<_>>()).prop_shuffle()) {
        let p = Perm::from_one_line(&images).unwrap();
        let rebuilt = p.bubble_word().iter().fold(Perm::identity(), |acc, &i| acc.compose(&Perm::adjacent(i)));
        prop_assert_eq!(rebuilt, p);
    }

    #[test]
    fn wreath_group_axioms(name in fixture_name(), s1: u64, s2: u64, s3: u64) {
        let g = fixture(name).params.group();
        let (a, b, c) = (element(g, s1, 5), element(g, s2, 5), element(g, s3, 5));
        let ab_c = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let a_bc = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        prop_assert!(a.multiply(&a.inverse()).unwrap().is_identity());
        prop_assert_eq!(a.standard_decomposition().recompose(g), a.clone());
        let conj = a.conjugate_by(&b).unwrap();
        prop_assert_eq!(conj.conjugacy_invariant(), a.conjugacy_invariant());
    }

    #[test]
    fn element_codec_round_trip(name in fixture_name(), seed: u64) {
        let g = fixture(name).params.group();
        let e = element(g, seed, 7);
        let v = element_to_json(&e);
        let text = serde_json::to_string(&v).unwrap();
        let back = element_from_json(&serde_json::from_str::<Value>(&text).unwrap(), g.clone(), "$").unwrap();
        prop_assert_eq!(element_to_json(&back), v);
        prop_assert_eq!(back, e);
    }

    #[test]
    fn scalar_and_matrix_codecs(a in any_scalar(), m in small_matrix(3)) {
        prop_assert_eq!(scalar_from_json(&scalar_to_json(&a), "$").unwrap(), a.clone());
        let scaled = ExactMatrix::from_entries(3, 3, m.entries().iter().map(|x| x * &a).collect()).unwrap();
        let v = matrix_to_json(&scaled);
        let back = matrix_from_json(&v, "$").unwrap();
        prop_assert_eq!(matrix_to_json(&back), v);
        prop_assert_eq!(back, scaled);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rho_is_a_homomorphism(name in fixture_name(), s1: u64, s2: u64) {
        let f = fixture(name);
        let g = f.params.group();
        let (a, b) = (element(g, s1, 4), element(g, s2, 4));
        let n = a.max_support().max(b.max_support()).max(1);
        let ab = f.couple.rep_element(&a.multiply(&b).unwrap(), n).unwrap();
        let prod = f.couple.rep_element(&a, n).unwrap().matmul(&f.couple.rep_element(&b, n).unwrap()).unwrap();
        prop_assert!(ab.first_differing_column(&prod).is_none());
    }

    #[test]
    fn characters_are_class_functions(name in fixture_name(), s1: u64, s2: u64) {
        let f = fixture(name);
        let g = f.params.group();
        let (a, h) = (element(g, s1, 4), element(g, s2, 4));
        let chi = f.couple.character(&a).unwrap();
        prop_assert_eq!(f.couple.character(&a.conjugate_by(&h).unwrap()).unwrap(), chi.clone());
        prop_assert_eq!(f.couple.character(&a.inverse()).unwrap(), chi.conj());
        prop_assert_eq!(closed_form_character(&f.params, &a).unwrap(), chi);
    }

    #[test]
    fn truncation_independence(name in fixture_name(), seed: u64) {
        let f = fixture(name);
        let a = element(f.params.group(), seed, 3);
        let n = a.max_support().max(1);
        let at_n = f.couple.character_at_level(&a, n).unwrap();
        prop_assert_eq!(f.couple.character_at_level(&a, n + 1).unwrap(), at_n.clone());
        prop_assert_eq!(f.couple.character_at_level(&a, n + 2).unwrap(), at_n);
    }

    #[test]
    fn closed_form_is_multiplicative(name in fixture_name(), seed: u64) {
        let f = fixture(name);
        let (a, b) = WreathElement::random_disjoint_pair(f.params.group().clone(), &mut Lcg64::new(seed), 8);
        let joint = closed_form_character(&f.params, &a.multiply(&b).unwrap()).unwrap();
        let split = &closed_form_character(&f.params, &a).unwrap() * &closed_form_character(&f.params, &b).unwrap();
        prop_assert_eq!(joint, split);
    }

    #[test]
    fn characters_are_bounded(name in fixture_name(), seed: u64) {
        let f = fixture(name);
        let a = element(f.params.group(), seed, 6);
        let z = closed_form_character(&f.params, &a).unwrap().to_complex();
        prop_assert!(z.norm() <= 1.0 + 1e-12);
    }
}

#[test]
fn unit_mass_means_unit_character_at_identity() {
    let f = fixture("q8_h");
    let id = WreathElement::identity(f.params.group().clone());
    assert!(f.couple.character(&id).unwrap().is_one());
    assert_eq!(f.params.total_mass(), Rational::from_integer(1.into()));
}
