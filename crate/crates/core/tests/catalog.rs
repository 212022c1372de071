mod common;

use proptest::prelude::*;
use starnode::catalog::{self, BuildSource, DefiniteCase, Params, RowId};
use starnode::circle::{self, SymbolSequence};
use starnode::contraction;
use starnode::rational::{frac, int};
use starnode::starfield;
use starnode::{BinaryForm, Rational};

fn base(id: RowId) -> Params {
    catalog::sample_params(id).remove(0)
}

#[test]
fn golden_table() {
    for id in RowId::ALL {
        let params = catalog::sample_params(id);
        assert!(params.len() >= 5, "{id}");
        let want = catalog::expected(id);
        for p in params {
            let b = catalog::build(id, &p).unwrap();
            assert!(contraction::is_contracting(&b.field), "{id} {p:?}");
            assert_eq!(b.field.lq(), catalog::target(id, &p), "{id}");
            let got = catalog::observe(&b.field).unwrap();
            assert!(want.agrees_with(&got), "{id} {p:?}: {got:?}");
        }
    }
}

#[test]
fn printed_rows_used_where_possible() {
    let source = |id: RowId| catalog::build(id, &Params::default()).unwrap().source;
    for id in [RowId::IV, RowId::VI, RowId::VIII, RowId::IX, RowId::X] {
        assert_eq!(source(id), BuildSource::Printed, "{id}");
    }
    assert_ne!(source(RowId::VII), BuildSource::Printed);
    let b = catalog::build(RowId::II, &Params::default()).unwrap();
    assert!(b.note.unwrap().contains("phase form"));
}

#[test]
fn k_audit() {
    let mu = |m: Rational| Params::new(m, int(1), int(1));
    let a = catalog::audit_k(RowId::IV, &Params::default()).unwrap().unwrap();
    assert_eq!(a.k_squared, int(16));
    assert!(a.holds());
    let a = catalog::audit_k(RowId::VII, &Params::default()).unwrap().unwrap();
    assert_eq!(a.corners, (int(0), int(36)));
    assert!(!a.corners_agree());
    assert!(!a.third);
    // row I: 4K² = 36μ² against (p3 + p4)(0, 1)² = (6μ − 1)², which fails for μ < 1/12
    for (m, corner) in [(frac(-1, 2), int(16)), (int(-1), int(49))] {
        let a = catalog::audit_k(RowId::I, &mu(m)).unwrap().unwrap();
        assert_eq!(a.corners, (int(1), corner));
        assert!(a.corners_agree() && a.second && !a.third);
    }
    assert!(catalog::audit_k(RowId::VIII, &Params::default()).unwrap().is_none());
    for k in [frac(1, 2), int(1), int(3)] {
        assert!(catalog::audit_viii(&k).0);
    }
    assert!(!catalog::audit_viii(&int(4)).0);
    assert!(!catalog::audit_viii(&int(0)).0);
}

#[test]
fn boukoucha_without_b_has_no_phase_roots() {
    for (alpha, beta, a) in [(1, 1, 1), (-2, -1, -3), (3, 2, 1), (1, 4, 2)] {
        let f = catalog::boukoucha(&int(alpha), &int(beta), &int(a), &int(0), int(1)).unwrap();
        let c = circle::classify_circle(&f).unwrap();
        assert_eq!(c.sigma, SymbolSequence::Empty, "α={alpha} β={beta} a={a}");
    }
}

#[test]
fn cubic_classes() {
    for id in RowId::ALL {
        let f = catalog::build(id, &base(id)).unwrap().field;
        assert_eq!(catalog::match_cubic(&f).unwrap().class, id.class(), "{id}");
    }
    assert_eq!(RowId::VI.class(), RowId::II);
    assert_eq!(RowId::VIII.class(), RowId::III);
    assert_eq!(RowId::IX.class(), RowId::IV);
    assert!(catalog::match_cubic(&catalog::quintic_example(int(1)).unwrap()).is_err());
}

#[test]
fn definite_normal_forms() {
    let phi = -&BinaryForm::circle_power(1);
    for (case, a, alpha) in [
        (DefiniteCase::I, int(1), int(2)),
        (DefiniteCase::II, int(3), int(0)),
        (DefiniteCase::III, int(2), int(1)),
        (DefiniteCase::IV, frac(1, 2), int(0)),
    ] {
        let b = catalog::definite_normal_matrix(case, &a, &alpha);
        let r = catalog::definite_family(&phi, &b, int(1)).unwrap();
        assert_eq!(r.case, case);
        assert!(r.sigma.equivalent(&case.expected_sigma()), "{case:?}: {}", r.sigma);
    }
    let b = catalog::definite_normal_matrix(DefiniteCase::I, &int(-1), &int(1));
    assert!(catalog::definite_family(&phi, &b, int(1)).is_err());
}

#[test]
fn catalog_export() {
    let v: serde_json::Value = serde_json::from_str(&catalog::to_json()).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["normal_forms"].as_array().unwrap().len(), RowId::ALL.len());
}

fn definite_phi() -> impl Strategy<Value = BinaryForm> {
    // −(a x² + b xy + c y²) with b² < 4ac, a > 0
    (1i64..=5, -4i64..=4, 1i64..=5)
        .prop_filter("indefinite", |(a, b, c)| b * b < 4 * a * c)
        .prop_map(|(a, b, c)| BinaryForm::from_ints(&[-a, -b, -c]))
}

fn positive_matrix() -> impl Strategy<Value = starfield::Matrix2> {
    (common::rat(1, 6), common::rat(-4, 4), common::rat(-4, 4), common::rat(1, 6))
        .prop_map(|(a, b, c, d)| starfield::matrix(a, b, c, d))
        .prop_filter("not definite", |m| {
            let off: Rational = (&m[0][1] + &m[1][0]) / int(2);
            &m[0][0] * &m[1][1] - &off * &off > int(0)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn definite_family_phase_form_factors(phi in definite_phi(), b in positive_matrix()) {
        let r = catalog::definite_family(&phi, &b, int(1)).unwrap();
        prop_assert_eq!(r.field.lq(), &phi * &r.psi);
        prop_assert!(r.sigma.equivalent(&r.case.expected_sigma()));
        prop_assert!(contraction::is_contracting(&r.field));
    }

    #[test]
    fn cubic_match_is_invariant(id in prop::sample::select(RowId::ALL.to_vec()), l in common::invertible_matrix()) {
        let f = catalog::build(id, &base(id)).unwrap().field;
        let g = f.linear_change(&l).unwrap();
        if contraction::is_contracting(&g) {
            prop_assert_eq!(catalog::match_cubic(&g).unwrap().class, id.class());
        }
    }
}
