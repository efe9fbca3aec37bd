mod common;

use std::collections::BTreeMap;

use common::rank_of;
use ncg_core::algebra::{
    commutator_filtration_dim, direct_sum, examples, free_product, localize, path_algebra, tangent_algebra,
    upper_triangular, Arrow, Quiver,
};
use ncg_core::ncpoly::{Letter, NcPoly, Presentation, Word};
use ncg_core::reprscheme::Derivation;
use ncg_core::rewrite::{basis_upto, complete_presentation, hilbert_counts};
use ncg_core::Q;
use proptest::prelude::*;

fn dim_upto(p: &Presentation, len: usize) -> usize {
    let rs = complete_presentation(p, len + 4).unwrap();
    basis_upto(&rs, len).unwrap().len()
}

fn rel_texts(p: &Presentation) -> Vec<String> {
    p.rels.iter().map(|r| p.format_poly(r)).collect()
}

#[test]
fn path_algebra_examples() {
    for d in 1..=3 {
        let a = path_algebra(&Quiver::loops(d)).unwrap();
        let free = examples::free(d);
        assert_eq!(dim_upto(&a, 3), dim_upto(&free, 3));
    }
    let a2 = path_algebra(&Quiver::chain(2)).unwrap();
    assert_eq!(dim_upto(&a2, 6), 3);
    assert_eq!(dim_upto(&upper_triangular(2).unwrap(), 6), 3);
    assert_eq!(dim_upto(&upper_triangular(3).unwrap(), 6), 6);
    assert_eq!(dim_upto(&path_algebra(&Quiver::kronecker(2)).unwrap(), 6), 4);
}

fn quiver_strategy() -> impl Strategy<Value = Quiver> {
    (1usize..=3).prop_flat_map(|nv| {
        prop::collection::vec((0..nv, 0..nv), 0..=4).prop_map(move |arrows| Quiver {
            name: "R".into(),
            vertices: (0..nv).map(|v| v.to_string()).collect(),
            arrows: arrows
                .into_iter()
                .enumerate()
                .map(|(i, (s, t))| Arrow {
                    name: format!("a{i}"),
                    source: s,
                    target: t,
                })
                .collect(),
        })
    })
}

fn path_word(q: &Quiver, start: usize, arrows: &[usize]) -> NcPoly {
    let nv = q.vertices.len();
    if arrows.is_empty() {
        return NcPoly::gen(start as Letter);
    }
    let letters: Vec<Letter> = arrows.iter().map(|&a| (nv + a) as Letter).collect();
    NcPoly::word(Word::from_letters(&letters))
}

fn path_end(q: &Quiver, start: usize, arrows: &[usize]) -> usize {
    arrows.first().map_or(start, |&a| q.arrows[a].target)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn path_products_follow_concatenation(q in quiver_strategy()) {
        let a = path_algebra(&q).unwrap();
        let rs = complete_presentation(&a, 8).unwrap();
        let paths = q.paths(3);
        for (s1, p1) in &paths {
            for (s2, p2) in &paths {
                if p1.len() + p2.len() > 3 {
                    continue;
                }
                let product = path_word(&q, *s1, p1).mul(&path_word(&q, *s2, p2));
                let expected = if *s1 == path_end(&q, *s2, p2) {
                    let mut cat = p1.clone();
                    cat.extend_from_slice(p2);
                    path_word(&q, *s2, &cat)
                } else {
                    NcPoly::zero()
                };
                prop_assert_eq!(rs.normal_form(&product).unwrap(), rs.normal_form(&expected).unwrap());
            }
        }
    }
}

#[test]
fn direct_sums_of_fields() {
    let k = Presentation::free("k", &[]);
    let kk = direct_sum(&[k.clone(), k.clone()]).unwrap();
    let idem = examples::idempotent();
    let rs = complete_presentation(&kk, 8).unwrap();
    let rs_idem = complete_presentation(&idem, 8).unwrap();
    for len in 1..=5 {
        assert_eq!(basis_upto(&rs, len).unwrap().len(), 2);
        assert_eq!(basis_upto(&rs_idem, len).unwrap().len(), 2);
    }
    let kkk = direct_sum(&[k.clone(), k.clone(), k]).unwrap();
    assert_eq!(dim_upto(&kkk, 5), 3);
}

#[test]
fn free_products() {
    let x = Presentation::free("X", &["x"]);
    let y = Presentation::free("Y", &["y"]);
    let xy = free_product(&[x.clone(), y]).unwrap();
    assert_eq!(xy.ngens(), 2);
    assert!(xy.rels.is_empty());

    let px = free_product(&[examples::idempotent(), x]).unwrap();
    assert_eq!(px.ngens(), 2);
    assert_eq!(rel_texts(&px), ["p^2 - p"]);

    let pq = free_product(&[examples::idempotent(), examples::idempotent()]).unwrap();
    let rs = complete_presentation(&pq, 8).unwrap();
    let counts = hilbert_counts(&rs, 3).unwrap();
    assert_eq!(counts.values().copied().collect::<Vec<_>>(), vec![1, 2, 2, 2]);
}

#[test]
fn localizations() {
    let a = examples::free(1);
    let laurent = localize(&a, &[NcPoly::gen(0)], &[]).unwrap();
    assert_eq!(laurent.ngens(), 2);
    assert_eq!(laurent.rels.len(), 2);
    for len in 0..=5 {
        assert_eq!(dim_upto(&laurent, len), 1 + 2 * len);
    }

    let x = NcPoly::gen(0);
    let m = vec![vec![NcPoly::one(), x.clone()], vec![NcPoly::zero(), NcPoly::one()]];
    let l = localize(&a, &[], &[m]).unwrap();
    assert_eq!(l.ngens(), 5);
    assert_eq!(l.rels.len(), 8);
    let rs = complete_presentation(&l, 6).unwrap();
    let inverse: Vec<NcPoly> = (1..=4).map(|g| rs.normal_form(&NcPoly::gen(g)).unwrap()).collect();
    assert_eq!(inverse, vec![NcPoly::one(), x.neg(), NcPoly::zero(), NcPoly::one()]);

    let f2 = examples::free(2);
    let same = localize(&f2, &[], &[]).unwrap();
    assert_eq!((same.gens, same.rels), (f2.gens, f2.rels));
}

#[test]
fn tangent_algebra_examples() {
    let ta = tangent_algebra(&examples::free(2)).unwrap();
    assert_eq!(ta.pres.ngens(), 4);
    assert!(ta.pres.rels.is_empty());

    let ta = tangent_algebra(&examples::idempotent()).unwrap();
    let expect = [ta.pres.parse_poly("p^2 - p").unwrap(), ta.pres.parse_poly("p*Dp + Dp*p - Dp").unwrap()];
    assert_eq!(ta.pres.rels, expect);

    let ta = tangent_algebra(&examples::toeplitz()).unwrap();
    let expect = [ta.pres.parse_poly("y*x - 1").unwrap(), ta.pres.parse_poly("y*Dx + Dy*x").unwrap()];
    assert_eq!(ta.pres.rels, expect);
}

#[test]
fn tangent_algebra_commutes_with_free_products() {
    let (a, b) = (examples::idempotent(), examples::toeplitz());
    let left = tangent_algebra(&free_product(&[a.clone(), b.clone()]).unwrap()).unwrap().pres;
    let right = free_product(&[tangent_algebra(&a).unwrap().pres, tangent_algebra(&b).unwrap().pres]).unwrap();
    for len in 0..=3 {
        assert_eq!(dim_upto(&left, len), dim_upto(&right, len));
    }
}

#[test]
fn derivations_must_preserve_relations() {
    let idem = examples::idempotent();
    assert!(Derivation::new(&idem, vec![NcPoly::one()], 6).is_err());
    let p = NcPoly::gen(0);
    let inner = p.mul(&p).sub(&p);
    assert!(Derivation::new(&idem, vec![inner], 6).is_ok());
    let toep = examples::toeplitz();
    let euler = vec![NcPoly::gen(0), NcPoly::gen(1).neg()];
    assert!(Derivation::new(&toep, euler, 6).is_ok());
    assert!(Derivation::new(&toep, vec![NcPoly::gen(0), NcPoly::gen(1)], 6).is_err());
}

fn words(d: u16, len: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![vec![]];
    for l in 1..=len {
        let mut layer = vec![vec![]];
        for _ in 0..l {
            layer = layer
                .into_iter()
                .flat_map(|w: Vec<Letter>| {
                    (0..d).map(move |x| {
                        let mut v = w.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        out.extend(layer);
    }
    out
}

fn word(w: &[Letter]) -> NcPoly {
    NcPoly::word(Word::from_letters(w))
}

/// Spanning set of depth-`m` commutators `[w_0, [w_1, ... [w_{m-1}, w_m]]]`
/// of nonempty words with total length at most `len`.
fn commutators(d: u16, m: usize, len: usize) -> Vec<NcPoly> {
    if m == 0 {
        return words(d, len).into_iter().filter(|w| !w.is_empty()).map(|w| word(&w)).collect();
    }
    let mut out = vec![];
    for inner in commutators(d, m - 1, len.saturating_sub(1)) {
        for w in words(d, len - inner.max_len()).into_iter().filter(|w| !w.is_empty()) {
            let a = word(&w);
            let c = a.mul(&inner).sub(&inner.mul(&a));
            if !c.is_zero() {
                out.push(c);
            }
        }
    }
    out
}

fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    (1..=n)
        .flat_map(|first| {
            compositions(n - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Reference value for `dim (A / I_n)_{<= len}` on the free algebra.
fn filtration_oracle(d: u16, n: usize, len: usize) -> usize {
    let mut span: Vec<BTreeMap<Word, Q>> = vec![];
    for comp in compositions(n) {
        let mut partial: Vec<NcPoly> = words(d, len).iter().map(|w| word(w)).collect();
        for &m in &comp {
            let mut next = vec![];
            for p in &partial {
                let room = len - p.max_len();
                for c in commutators(d, m, room) {
                    for v in words(d, room - c.max_len()) {
                        next.push(p.mul(&c).mul(&word(&v)));
                    }
                }
            }
            partial = next;
        }
        span.extend(partial.iter().map(|p| p.terms().map(|(w, c)| (w.clone(), c.clone())).collect::<BTreeMap<_, _>>()));
    }
    words(d, len).len() - rank_of(&span)
}

#[test]
fn commutator_filtration_against_span_oracle() {
    assert_eq!(commutator_filtration_dim(2, 1, 2).unwrap().dim, 6);
    assert_eq!(commutator_filtration_dim(2, 2, 2).unwrap().dim, 7);
    for n in 1..=3 {
        for len in 0..=4 {
            assert_eq!(commutator_filtration_dim(1, n, len).unwrap().dim, len + 1);
        }
    }
    for (d, n, len) in [(2, 1, 3), (2, 1, 4), (2, 2, 3), (2, 2, 4), (2, 3, 4), (3, 1, 3), (3, 2, 3)] {
        let got = commutator_filtration_dim(d, n, len).unwrap().dim;
        assert_eq!(got, filtration_oracle(d as u16, n, len), "d={d} n={n} L={len}");
    }
    let short = commutator_filtration_dim(2, 3, 2).unwrap();
    assert!(short.warning.is_some());
    assert_eq!(short.dim, 7);
}

#[test]
fn commutator_filtration_grows_with_n() {
    for d in 2..=3 {
        for len in 2..=4 {
            let dims: Vec<usize> = (1..=4).map(|n| commutator_filtration_dim(d, n, len).unwrap().dim).collect();
            assert!(dims.windows(2).all(|w| w[0] <= w[1]), "{dims:?}");
        }
    }
}
