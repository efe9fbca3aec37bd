mod common;

use std::collections::BTreeMap;

use common::{q, rank_of};
use ncg_core::algebra::examples;
use ncg_core::ncpoly::{NcPoly, Presentation, Word};
use ncg_core::nproj::JouanolouCover;
use ncg_core::rewrite::{
    basis_upto, complete, complete_presentation, complete_rules, ideal_member, CompletionLimits, Membership, Rule,
    RewriteSystem, Status,
};
use ncg_core::spaces::product_space_algebra;
use ncg_core::Error;
use proptest::prelude::*;

fn pres(src: &str) -> Presentation {
    Presentation::parse(src).unwrap().0
}

fn words_upto(ngens: u16, len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..len {
        let mut next = vec![];
        for w in &layer {
            for l in 0..ngens {
                next.push(w.concat(&Word::letter(l)));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// `dim F_{<=len} / span{u r v}` where `u r v` ranges over products that stay
/// within length `len`, computed without any rewriting.
fn truncated_quotient_dim(p: &Presentation, len: usize) -> usize {
    let n = p.ngens() as u16;
    let all = words_upto(n, len);
    let mut span: Vec<BTreeMap<Word, ncg_core::Q>> = vec![];
    for r in &p.rels {
        let rl = r.max_len();
        if rl > len {
            continue;
        }
        for u in words_upto(n, len - rl) {
            for v in words_upto(n, len - rl - u.len()) {
                let t = NcPoly::word(u.clone()).mul(r).mul(&NcPoly::word(v));
                span.push(t.terms().map(|(w, c)| (w.clone(), c.clone())).collect());
            }
        }
    }
    all.len() - rank_of(&span)
}

#[test]
fn reduction_examples() {
    let toep = examples::toeplitz();
    let rs = complete_presentation(&toep, 8).unwrap();
    assert_eq!(rs.normal_form(&toep.parse_poly("y*x").unwrap()).unwrap(), NcPoly::one());
    assert_eq!(rs.normal_form(&toep.parse_poly("y*x*y*x").unwrap()).unwrap(), NcPoly::one());

    let b = pres("gen x1 x2 y2 y1\nrel y1*x1 + y2*x2 - 1");
    let rs = complete_presentation(&b, 6).unwrap();
    assert_eq!(
        rs.normal_form(&b.parse_poly("y1*x1").unwrap()).unwrap(),
        b.parse_poly("1 - y2*x2").unwrap()
    );
}

#[test]
fn completion_examples() {
    let toep = examples::toeplitz();
    let rs = complete_presentation(&toep, 10).unwrap();
    assert_eq!(rs.status(), Status::Complete);
    assert_eq!(rs.rules().len(), 1);

    let idem = examples::idempotent();
    let rs = complete_presentation(&idem, 10).unwrap();
    assert_eq!(rs.status(), Status::Complete);
    assert_eq!(rs.rules().len(), 1);

    let j = JouanolouCover::new(2).unwrap();
    let b2 = product_space_algebra(&j.cover, 2).unwrap();
    let rs = complete_presentation(&b2, 6).unwrap();
    assert!(rs.rules().len() >= b2.rels.len());
    assert!(rs.status().covers(6), "{}", rs.status());
    assert_eq!(complete_presentation(&b2, 4).unwrap().status(), Status::ConfluentUpTo(4));
}

#[test]
fn non_orientable_rules_are_rejected() {
    let bad = Rule {
        lhs: Word::from_letters(&[0]),
        rhs: NcPoly::word(Word::from_letters(&[0, 0])),
    };
    let err = complete_rules(1, &[bad], CompletionLimits::new(4)).unwrap_err();
    assert!(matches!(err, Error::NonOrientable(_)));
    assert!(RewriteSystem::from_rules(1, vec![Rule {
        lhs: Word::from_letters(&[0]),
        rhs: NcPoly::gen(0),
    }])
    .is_err());
}

#[test]
fn membership_examples() {
    let j = JouanolouCover::new(3).unwrap();
    let base = &j.cover.base;
    let rs = complete_presentation(base, 8).unwrap();
    let mut rel = NcPoly::one().neg();
    for i in 0..3 {
        rel = rel.add(&j.y(i).mul(&j.x(i)));
    }
    assert_eq!(ideal_member(&rel, &rs).unwrap(), Membership::Yes);

    let free = complete(2, &[], CompletionLimits::new(4)).unwrap();
    assert_eq!(
        ideal_member(&NcPoly::gen(0), &free).unwrap(),
        Membership::NoUpTo { certified_upto: None }
    );

    let idem = examples::idempotent();
    let rs = complete_presentation(&idem, 6).unwrap();
    assert_eq!(
        ideal_member(&idem.parse_poly("p^3 - p").unwrap(), &rs).unwrap(),
        Membership::Yes
    );
}

#[test]
fn basis_examples() {
    let toep = examples::toeplitz();
    let rs = complete_presentation(&toep, 8).unwrap();
    let b: Vec<String> = basis_upto(&rs, 2).unwrap().iter().map(|w| toep.format_poly(&NcPoly::word(w.clone()))).collect();
    assert_eq!(b, ["1", "x", "y", "x^2", "x*y", "y^2"]);

    let free = complete(2, &[], CompletionLimits::new(4)).unwrap();
    assert_eq!(basis_upto(&free, 2).unwrap().len(), 7);

    let idem = examples::idempotent();
    let rs = complete_presentation(&idem, 6).unwrap();
    assert_eq!(basis_upto(&rs, 3).unwrap(), vec![Word::empty(), Word::letter(0)]);
}

#[test]
fn basis_beyond_the_certificate_is_refused() {
    let comm = examples::commutative_plane();
    let noncomm = pres("gen x y z\nrel z*y*x - x*y*z\nrel z*z*y - y*x*x");
    let rs = complete_presentation(&noncomm, 5).unwrap();
    if let Status::ConfluentUpTo(b) = rs.status() {
        assert!(matches!(basis_upto(&rs, b + 1), Err(Error::InsufficientBound { .. })));
    }
    assert!(complete_presentation(&comm, 6).unwrap().status().covers(6));
}

#[test]
fn normal_word_counts_match_the_span_oracle() {
    let cases = [
        (examples::toeplitz(), 5),
        (examples::idempotent(), 5),
        (examples::dual_numbers(), 5),
        (examples::commutative_plane(), 5),
        (examples::split_semisimple(), 4),
        (examples::matrix_algebra(2), 3),
        (pres("gen x y\nrel x*x*y - y*x*x\nrel y*y*x - x*y*y"), 6),
        (pres("gen a b\nrel a*b*a - b*a*b"), 6),
    ];
    for (p, len) in cases {
        let rs = complete_presentation(&p, len + 4).unwrap();
        let ours = basis_upto(&rs, len).unwrap().len();
        assert_eq!(ours, truncated_quotient_dim(&p, len), "{} at length {len}", p.name);
    }
    // With a length-dropping relation the bounded span only gives an upper bound.
    let p = pres("gen x y\nrel x*x*y - y*x*x\nrel y*y - x");
    let rs = complete_presentation(&p, 10).unwrap();
    assert!(basis_upto(&rs, 5).unwrap().len() <= truncated_quotient_dim(&p, 5));
}

fn element(ngens: u16) -> impl Strategy<Value = NcPoly> {
    prop::collection::vec((prop::collection::vec(0..ngens, 0..5), -3i64..=3), 0..5).prop_map(|ts| {
        let mut p = NcPoly::zero();
        for (w, c) in ts {
            p.add_term(Word::from_letters(&w), q(c));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_forms_are_idempotent_and_linear(a in element(2), b in element(2)) {
        for p in [examples::toeplitz(), examples::commutative_plane(), examples::split_semisimple()] {
            let rs = complete_presentation(&p, 12).unwrap();
            let na = rs.normal_form(&a).unwrap();
            prop_assert_eq!(rs.normal_form(&na).unwrap(), na.clone());
            prop_assert!(na.terms().all(|(w, _)| rs.is_normal(w)));
            let nb = rs.normal_form(&b).unwrap();
            prop_assert_eq!(rs.normal_form(&a.add(&b)).unwrap(), na.add(&nb));
            prop_assert_eq!(rs.normal_form(&a.mul(&b)).unwrap(), rs.normal_form(&na.mul(&nb)).unwrap());
        }
    }
}
