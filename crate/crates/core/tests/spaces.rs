use ncg_core::algebra::{direct_sum, examples, localize};
use ncg_core::ncpoly::{NcPoly, Presentation};
use ncg_core::rewrite::{basis_upto, complete_presentation};
use ncg_core::spaces::{
    cech_cohomology, hom_cohomology, morphisms_equivalent, product_space_algebra, projective_line,
    projective_line_twist, CechParams, Comodule, Cover, CoverMorphism,
};
use ncg_core::Error;

fn cheap() -> CechParams {
    CechParams {
        cutoffs: vec![2, 3],
        ..Default::default()
    }
}

fn laurent() -> Presentation {
    localize(&examples::free(1), &[NcPoly::gen(0)], &[]).unwrap()
}

fn bases() -> Vec<Presentation> {
    let k = Presentation::free("k", &[]);
    vec![
        examples::free(1),
        examples::free(2),
        examples::toeplitz(),
        examples::commutative_plane(),
        laurent(),
        direct_sum(&[k.clone(), k]).unwrap(),
    ]
}

/// `g · m · g⁻¹` for the unipotent `g = [[1, x], [0, 1]]`, `x` the first generator.
fn unipotent_comodule(c: &Cover) -> Comodule {
    let (m, x) = (c.m(), NcPoly::gen(0));
    Comodule {
        coaction: vec![
            vec![m.clone(), c.nf(&x.mul(&m).sub(&m.mul(&x)))],
            vec![NcPoly::zero(), m],
        ],
    }
}

#[test]
fn affine_covers_are_acyclic() {
    for b in bases() {
        let c = Cover::affine(&b, 2, 8).unwrap();
        assert!(c.check_axioms().passed(), "{}", b.name);
        let mut comodules = vec![Comodule::structure_sheaf(&c), Comodule::free(&c, 2)];
        if b.ngens() > 0 {
            comodules.push(unipotent_comodule(&c));
        }
        for e in &comodules {
            e.check(&c).unwrap();
            let r = cech_cohomology(&c, e, &cheap()).unwrap();
            let rs = complete_presentation(&b, 10).unwrap();
            for res in &r.per_cutoff {
                let sections = basis_upto(&rs, res.cutoff).unwrap().len();
                assert_eq!(res.totals, vec![e.rank() * sections, 0], "{} rank {}", b.name, e.rank());
            }
        }
    }
}

#[test]
fn twisted_comodule_on_laurent_polynomials() {
    let b = laurent();
    let c = Cover::affine(&b, 2, 8).unwrap();
    let (x, xi) = (NcPoly::gen(0), NcPoly::gen(1));
    let e = Comodule::rank_one(c.nf(&x.mul(&c.m()).mul(&xi)));
    e.check(&c).unwrap();
    let r = cech_cohomology(&c, &e, &cheap()).unwrap();
    assert!(r.per_cutoff.iter().all(|res| res.totals[1] == 0));
}

#[test]
fn point_cover() {
    let c = Cover::point(2).unwrap();
    assert!(c.is_space());
    assert!(c.check_axioms().passed());
    let r = cech_cohomology(&c, &Comodule::structure_sheaf(&c), &cheap()).unwrap();
    assert_eq!(r.stable, vec![Some(1), Some(0)]);
    let r = cech_cohomology(&c, &Comodule::free(&c, 3), &cheap()).unwrap();
    assert_eq!(r.stable, vec![Some(3), Some(0)]);
}

#[test]
fn projective_line_line_bundles() {
    let c = projective_line(2).unwrap();
    assert!(c.check_axioms().passed());
    let params = CechParams {
        cutoffs: vec![2, 3, 4],
        ..Default::default()
    };
    for n in -3i64..=3 {
        let e = projective_line_twist(&c, n).unwrap();
        e.check(&c).unwrap();
        let r = cech_cohomology(&c, &e, &params).unwrap();
        assert!(r.is_stable(), "O({n})");
        let h0 = (n + 1).max(0) as usize;
        let h1 = (-n - 1).max(0) as usize;
        assert_eq!((r.value(0), r.value(1)), (Some(h0), Some(h1)), "O({n})");
    }
}

#[test]
fn homs_between_line_bundles_on_the_projective_line() {
    let c = projective_line(2).unwrap();
    let params = CechParams {
        cutoffs: vec![2, 3, 4],
        ..Default::default()
    };
    let o = |n| projective_line_twist(&c, n).unwrap();
    let r = hom_cohomology(&c, &o(1), &o(0), &params).unwrap();
    assert_eq!(r.stable, vec![Some(0), Some(0)]);
    let r = hom_cohomology(&c, &o(0), &o(1), &params).unwrap();
    assert_eq!(r.stable, vec![Some(2), Some(0)]);
    let r = hom_cohomology(&c, &o(1), &o(-1), &params).unwrap();
    assert_eq!(r.stable, vec![Some(0), Some(1)]);
}

#[test]
fn bad_covers_and_comodules_are_reported() {
    let b = examples::free(1);
    let good = Cover::affine(&b, 2, 6).unwrap();
    let bad = Cover::new(&b, good.kernel.clone(), good.coproduct.clone(), NcPoly::gen(0), 2, 6).unwrap();
    assert!(!bad.check_axioms().passed());
    assert!(!bad.is_space());

    let m = good.m();
    assert!(Comodule::rank_one(m.add(&m)).check(&good).is_err());
    assert!(Comodule::rank_one(NcPoly::one()).check(&good).is_err());
    assert!(Cover::new(&b, vec![NcPoly::gen(0)], good.coproduct.clone(), NcPoly::one(), 2, 6).is_err());
    assert!(Cover::new(&b, vec![], m.clone(), NcPoly::one(), 2, 6).is_err());
}

#[test]
fn cohomology_parameters_are_validated() {
    let c1 = Cover::affine(&examples::free(1), 1, 8).unwrap();
    let o = Comodule::structure_sheaf(&c1);
    assert!(matches!(cech_cohomology(&c1, &o, &cheap()), Err(Error::Invalid(_))));
    let c = Cover::affine(&examples::free(1), 2, 8).unwrap();
    let empty = CechParams {
        cutoffs: vec![],
        ..Default::default()
    };
    assert!(cech_cohomology(&c, &Comodule::structure_sheaf(&c), &empty).is_err());
    let (braid, _) = Presentation::parse("gen a b\nrel a*b*a - b*a*b").unwrap();
    let c = Cover::affine(&braid, 2, 6).unwrap();
    let res = cech_cohomology(&c, &Comodule::structure_sheaf(&c), &CechParams { cutoffs: vec![4], ..Default::default() });
    assert!(matches!(res, Err(Error::InsufficientBound { have: 6, need: 8 })));
}

#[test]
fn refinement_along_a_localization() {
    let b = examples::free(1);
    let c = Cover::affine(&b, 2, 8).unwrap();
    let target = laurent();
    let (refined, f) = c.refine(&target, &[NcPoly::gen(0)], 8).unwrap();
    assert!(refined.check_axioms().passed());
    assert!(f.check(&refined, &c).unwrap().passed());
    let pulled = f.pullback(&refined, &c, &Comodule::structure_sheaf(&c));
    assert_eq!(pulled, Comodule::structure_sheaf(&refined));
    let r = cech_cohomology(&refined, &pulled, &cheap()).unwrap();
    assert!(r.per_cutoff.iter().all(|res| res.totals[1] == 0));
    assert!(c.refine(&target, &[], 8).is_err());
}

#[test]
fn equivalence_of_morphisms() {
    let b = examples::free(2);
    let c = Cover::affine(&b, 2, 8).unwrap();
    let id = CoverMorphism {
        images: vec![NcPoly::gen(0), NcPoly::gen(1)],
        sep_image: c.m(),
    };
    let swap = CoverMorphism {
        images: vec![NcPoly::gen(1), NcPoly::gen(0)],
        sep_image: c.m(),
    };
    assert!(id.check(&c, &c).unwrap().passed());
    assert!(swap.check(&c, &c).unwrap().passed());
    assert!(morphisms_equivalent(&id, &id, &c, &c));
    assert!(morphisms_equivalent(&swap, &swap, &c, &c));
    assert_eq!(morphisms_equivalent(&id, &swap, &c, &c), morphisms_equivalent(&swap, &id, &c, &c));
    assert!(!morphisms_equivalent(&id, &swap, &c, &c));
}

#[test]
fn product_of_an_affine_space_with_itself_is_diagonal() {
    for b in [examples::free(2), examples::toeplitz()] {
        let c = Cover::affine(&b, 2, 8).unwrap();
        let sq = product_space_algebra(&c, 2).unwrap();
        assert_eq!(sq.ngens(), 2 * b.ngens());
        let a = complete_presentation(&b, 10).unwrap();
        let s = complete_presentation(&sq, 10).unwrap();
        for len in 0..=4 {
            assert_eq!(basis_upto(&s, len).unwrap().len(), basis_upto(&a, len).unwrap().len(), "{}", b.name);
        }
    }
    let c = Cover::point(2).unwrap();
    assert_eq!(product_space_algebra(&c, 3).unwrap().ngens(), 0);
}
