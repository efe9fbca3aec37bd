mod common;

use common::{dense_rank, q};
use ncg_core::algebra::{examples, path_algebra, Quiver};
use ncg_core::linalg::Matrix;
use ncg_core::ncpoly::Presentation;
use ncg_core::repmod::{
    double_tangent_dim, euler_form, ext1_dim, hom_dim, hom_space, projective_module, quiver_representation,
    simple_module, FdModule, FramedModule,
};
use ncg_core::reprscheme::ReprScheme;
use ncg_core::Q;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `dim Hom_A(M, N)` from the intertwining equations `N(g) φ = φ M(g)`.
fn hom_oracle(m: &FdModule, n: &FdModule) -> usize {
    let unknowns = n.dim * m.dim;
    let mut rows = vec![];
    for (am, an) in m.action.iter().zip(&n.action) {
        for i in 0..n.dim {
            for j in 0..m.dim {
                let mut row = vec![Q::zero(); unknowns];
                for k in 0..n.dim {
                    row[k * m.dim + j] += an[(i, k)].clone();
                }
                for k in 0..m.dim {
                    row[i * m.dim + k] -= am[(k, j)].clone();
                }
                rows.push(row);
            }
        }
    }
    unknowns - dense_rank(&mut rows)
}

fn euler_oracle(q: &Quiver, a: &[usize], b: &[usize]) -> i64 {
    let diag: i64 = a.iter().zip(b).map(|(x, y)| (x * y) as i64).sum();
    diag - q.arrows.iter().map(|ar| (a[ar.source] * b[ar.target]) as i64).sum::<i64>()
}

/// Every representation of the Kronecker quiver with total dimension at most
/// three and 0/1 arrow matrices.
fn kronecker_modules(q: &Quiver, alg: &Presentation) -> Vec<(Vec<usize>, FdModule)> {
    let d = q.arrows.len();
    let mut out = vec![];
    for a0 in 0..=3usize {
        for a1 in 0..=(3 - a0) {
            if a0 + a1 == 0 {
                continue;
            }
            let entries = d * a0 * a1;
            for mask in 0u32..(1 << entries) {
                let maps: Vec<Matrix> = (0..d)
                    .map(|k| {
                        let mut m = Matrix::zeros(a1, a0);
                        for i in 0..a1 {
                            for j in 0..a0 {
                                if mask >> (k * a0 * a1 + i * a0 + j) & 1 == 1 {
                                    m[(i, j)] = q_one();
                                }
                            }
                        }
                        m
                    })
                    .collect();
                out.push((vec![a0, a1], quiver_representation(q, alg, &[a0, a1], &maps).unwrap()));
            }
        }
    }
    out
}

fn q_one() -> Q {
    q(1)
}

#[test]
fn hom_and_ext_examples() {
    for d in 1..=3 {
        let qv = Quiver::kronecker(d);
        let a = path_algebra(&qv).unwrap();
        let s0 = simple_module(&qv, &a, 0).unwrap();
        let s1 = simple_module(&qv, &a, 1).unwrap();
        assert_eq!(hom_dim(&s0, &s1).unwrap(), 0);
        assert_eq!(ext1_dim(&s0, &s1).unwrap(), d);
        assert_eq!(ext1_dim(&s1, &s0).unwrap(), 0);
        assert_eq!(euler_form(&qv, &[1, 0], &[1, 0]).unwrap(), 1);
        assert_eq!(euler_form(&qv, &[1, 0], &[0, 1]).unwrap(), -(d as i64));
    }
    let qv = Quiver::kronecker(2);
    let a = path_algebra(&qv).unwrap();
    let p0 = projective_module(&qv, &a, 0).unwrap();
    let p1 = projective_module(&qv, &a, 1).unwrap();
    assert_eq!((p0.dim, p1.dim), (3, 1));
    assert_eq!(hom_dim(&p1, &p0).unwrap(), 2);
    assert_eq!(hom_space(&p1, &p0).unwrap().len(), 2);

    for d in 1..=3 {
        let f = examples::free(d);
        let triv = FdModule::new(&f, 1, vec![Matrix::zeros(1, 1); d]).unwrap();
        assert_eq!(hom_dim(&triv, &triv).unwrap(), 1);
        assert_eq!(ext1_dim(&triv, &triv).unwrap(), d);
    }

    let idem = examples::idempotent();
    let one = FdModule::new(&idem, 1, vec![Matrix::identity(1)]).unwrap();
    assert_eq!(ext1_dim(&one, &one).unwrap(), 0);
}

#[test]
fn modules_must_satisfy_relations() {
    let idem = examples::idempotent();
    assert!(FdModule::new(&idem, 1, vec![Matrix::from_i64(&[&[2]])]).is_err());
    assert!(FdModule::new(&idem, 2, vec![Matrix::from_i64(&[&[1, 1], &[0, 0]])]).is_ok());
}

#[test]
fn euler_form_matches_hom_minus_ext_exhaustively() {
    for d in 1..=3 {
        let qv = Quiver::kronecker(d);
        let a = path_algebra(&qv).unwrap();
        let mods = kronecker_modules(&qv, &a);
        for (alpha, m) in &mods {
            assert_eq!(&m.dimension_vector(&qv), alpha);
            for (beta, n) in &mods {
                let h = hom_dim(m, n).unwrap();
                assert_eq!(h, hom_oracle(m, n));
                let e = ext1_dim(m, n).unwrap();
                let chi = euler_form(&qv, alpha, beta).unwrap();
                assert_eq!(chi, euler_oracle(&qv, alpha, beta));
                assert_eq!(h as i64 - e as i64, chi, "d={d} {alpha:?} {beta:?}");
            }
        }
    }
}

fn conjugate(m: &FdModule, g: &Matrix) -> FdModule {
    let inv = g.inverse().unwrap();
    let action = m.action.iter().map(|a| g.mul(a).unwrap().mul(&inv).unwrap()).collect();
    FdModule::new(&m.algebra, m.dim, action).unwrap()
}

fn random_invertible(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = q(rng.gen_range(-2..=2));
            }
        }
        if g.rank() == n {
            return g;
        }
    }
}

#[test]
fn dimensions_do_not_depend_on_bases() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let qv = Quiver::kronecker(2);
    let a = path_algebra(&qv).unwrap();
    let mods = kronecker_modules(&qv, &a);
    for (i, (_, m)) in mods.iter().enumerate().step_by(7) {
        let (_, n) = &mods[(i * 5 + 3) % mods.len()];
        let m2 = conjugate(m, &random_invertible(m.dim, &mut rng));
        let n2 = conjugate(n, &random_invertible(n.dim, &mut rng));
        assert_eq!(ext1_dim(m, n).unwrap(), ext1_dim(&m2, &n2).unwrap());
        assert_eq!(hom_dim(m, n).unwrap(), hom_dim(&m2, &n2).unwrap());
    }
}

fn point_of(m: &FdModule) -> Vec<Q> {
    m.action.iter().flat_map(|a| a.to_rows().into_iter().flatten()).collect()
}

#[test]
fn double_tangent_matches_jacobian_on_the_diagonal() {
    let qv = Quiver::kronecker(2);
    let path = path_algebra(&qv).unwrap();
    let comm = examples::commutative_plane();
    let toep = examples::toeplitz();
    let points = vec![
        FdModule::new(&examples::free(2), 1, vec![Matrix::zeros(1, 1); 2]).unwrap(),
        FdModule::new(&examples::idempotent(), 2, vec![Matrix::from_i64(&[&[1, 0], &[0, 0]])]).unwrap(),
        FdModule::new(&examples::idempotent(), 3, vec![Matrix::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]])]).unwrap(),
        projective_module(&qv, &path, 0).unwrap(),
        FdModule::new(&comm, 2, vec![Matrix::from_i64(&[&[0, 1], &[0, 0]]), Matrix::from_i64(&[&[1, 2], &[0, 1]])]).unwrap(),
        FdModule::new(
            &toep,
            2,
            vec![
                Matrix::from_i64(&[&[2, 1], &[0, 1]]),
                Matrix::from_rows(vec![vec![Q::new(1.into(), 2.into()), Q::new((-1).into(), 2.into())], vec![q(0), q(1)]])
                    .unwrap(),
            ],
        )
        .unwrap(),
    ];
    for m in points {
        let s = ReprScheme::new(&m.algebra, m.dim).unwrap();
        let tangent = s.num_vars() - s.jacobian_rank_at(&point_of(&m)).unwrap();
        let fm = FramedModule::standard(m.clone());
        assert_eq!(double_tangent_dim(&fm, &fm).unwrap(), tangent, "{}", m.algebra.name);
    }
}

#[test]
fn double_tangent_examples() {
    for d in 1..=3 {
        let f = examples::free(d);
        let triv = FramedModule::standard(FdModule::new(&f, 1, vec![Matrix::zeros(1, 1); d]).unwrap());
        assert_eq!(double_tangent_dim(&triv, &triv).unwrap(), d);
    }
    let p = FdModule::new(&examples::idempotent(), 2, vec![Matrix::from_i64(&[&[1, 0], &[0, 0]])]).unwrap();
    let fp = FramedModule::standard(p);
    assert_eq!(double_tangent_dim(&fp, &fp).unwrap(), 2);
    let swapped = FramedModule::new(fp.module.clone(), Matrix::from_i64(&[&[0, 1], &[1, 0]])).unwrap();
    assert_eq!(double_tangent_dim(&swapped, &fp).unwrap(), 2);
    assert!(FramedModule::new(fp.module.clone(), Matrix::zeros(2, 2)).is_err());
}
