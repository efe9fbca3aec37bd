use ncg_core::algebra::{path_algebra, Quiver};
use ncg_core::nproj::{
    default_params, k0_pairing, np_cohomology, quiver_compare, quiver_tables, JouanolouCover, K0Pairing,
    QuiverComparison, Sheaf, Tables,
};
use ncg_core::repmod::projective_module;
use ncg_core::rewrite::{basis_upto, complete_presentation};
use ncg_core::spaces::CechParams;

fn ladder(cutoffs: &[usize]) -> CechParams {
    CechParams {
        cutoffs: cutoffs.to_vec(),
        ..default_params()
    }
}

#[test]
fn twist_data_and_sections() {
    for d in 1..=5 {
        let j = JouanolouCover::new(d).unwrap();
        assert_eq!(j.twist_data().check(&j), (true, true), "d={d}");
        if d <= 3 {
            assert!(j.cover.check_axioms().passed());
            assert!(j.twisting_sheaf().check(&j.cover).is_ok());
            assert!((0..d).all(|i| j.is_section(i)));
        }
    }
    assert!(JouanolouCover::new(0).is_err());
    assert!(JouanolouCover::with_order(2, &[0, 0]).is_err());
}

#[test]
fn base_of_the_line_cover() {
    let j = JouanolouCover::new(1).unwrap();
    let rs = complete_presentation(&j.cover.base, 8).unwrap();
    assert_eq!(basis_upto(&rs, 2).unwrap().len(), 6);
}

/// `⟨dim P_i, dim P_k⟩` on the Kronecker quiver, with `P_1 = (0, 1)` and `P_0 = (1, d)`.
fn euler_oracle(d: usize) -> [[i64; 2]; 2] {
    let q = Quiver::kronecker(d);
    let a = path_algebra(&q).unwrap();
    let dims = [1, 0].map(|v| projective_module(&q, &a, v).unwrap().dimension_vector(&q));
    let form = |x: &[usize], y: &[usize]| -> i64 {
        (x[0] * y[0] + x[1] * y[1]) as i64 - (d * x[0] * y[1]) as i64
    };
    [[form(&dims[0], &dims[0]), form(&dims[0], &dims[1])], [form(&dims[1], &dims[0]), form(&dims[1], &dims[1])]]
}

#[test]
fn quiver_side_tables() {
    for d in 1..=5 {
        let t = quiver_tables(d).unwrap();
        assert_eq!(t.hom, [[1, d], [0, 1]]);
        assert_eq!(t.ext1, [[0, 0], [0, 0]]);
        assert_eq!(t.euler(), euler_oracle(d));
        let k = K0Pairing::from_tables(&t);
        assert_eq!(k.det, 1);
        assert!(k.unimodular());
    }
}

#[test]
fn projective_line_matches_the_quiver() {
    let cmp = quiver_compare(1, &default_params()).unwrap();
    assert!(cmp.conclusive());
    assert!(cmp.matches(), "{:?}", cmp.np);
    assert_eq!(k0_pairing(&cmp).unwrap().det, 1);
    assert!(cmp.reports.iter().all(|(_, r)| r.is_stable()));
}

#[test]
fn noncommutative_projective_line_matches_the_quiver() {
    let cmp = quiver_compare(2, &ladder(&[2, 4, 6])).unwrap();
    assert!(cmp.matches(), "{:?}", cmp.np);
    assert_eq!(
        cmp.np,
        Some(Tables {
            hom: [[1, 2], [0, 1]],
            ext1: [[0, 0], [0, 0]],
        })
    );
    assert_eq!(k0_pairing(&cmp).unwrap().matrix, [[1, 2], [0, 1]]);
}

#[test]
fn sections_do_not_depend_on_generator_order() {
    let params = ladder(&[2, 3, 4]);
    for order in [[0, 1, 2], [2, 0, 1]] {
        let j = JouanolouCover::with_order(3, &order).unwrap();
        let r = np_cohomology(&j, Sheaf::O, Sheaf::O1, &params).unwrap();
        assert_eq!(r.value(0), Some(3), "{order:?}");
    }
}

#[test]
fn ladders_and_inconclusive_comparisons() {
    let j = JouanolouCover::new(1).unwrap();
    assert!(np_cohomology(&j, Sheaf::O, Sheaf::O, &ladder(&[4, 6])).is_err());
    let cmp = QuiverComparison {
        d: 1,
        np: None,
        quiver: quiver_tables(1).unwrap(),
        reports: vec![],
    };
    assert!(!cmp.conclusive());
    assert!(!cmp.matches());
    assert!(k0_pairing(&cmp).is_err());
}
