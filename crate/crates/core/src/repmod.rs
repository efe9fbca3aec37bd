//! Finite-dimensional modules over presented algebras: Hom, Ext¹, the Euler
//! form of a quiver and the tangent dimension of the double.

use num_traits::{One, Zero};

use crate::algebra::Quiver;
use crate::error::{Error, Result};
use crate::linalg::{kernel, rank, Matrix, SparseVec};
use crate::ncpoly::{NcPoly, Presentation};

/// A left module given by one matrix per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FdModule {
    pub algebra: Presentation,
    pub dim: usize,
    pub action: Vec<Matrix>,
}

impl FdModule {
    pub fn new(algebra: &Presentation, dim: usize, action: Vec<Matrix>) -> Result<Self> {
        if action.len() != algebra.ngens() {
            return Err(Error::Dimension(format!(
                "{} matrices for {} generators",
                action.len(),
                algebra.ngens()
            )));
        }
        if action.iter().any(|m| m.rows != dim || m.cols != dim) {
            return Err(Error::Dimension(format!("action matrices must be {dim}x{dim}")));
        }
        let m = FdModule {
            algebra: algebra.clone(),
            dim,
            action,
        };
        for r in &algebra.rels {
            if !m.eval(r).is_zero() {
                return Err(Error::Axiom(format!(
                    "relation `{}` does not act as zero",
                    algebra.format_poly(r)
                )));
            }
        }
        Ok(m)
    }

    pub fn eval(&self, p: &NcPoly) -> Matrix {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (w, c) in p.terms() {
            let mut m = Matrix::identity(self.dim);
            for &l in w.letters() {
                m = m.mul(&self.action[l as usize]).expect("square");
            }
            out = out.add(&m.scale(c)).expect("square");
        }
        out
    }

    fn word_action(&self, letters: &[u16]) -> Matrix {
        let mut m = Matrix::identity(self.dim);
        for &l in letters {
            m = m.mul(&self.action[l as usize]).expect("square");
        }
        m
    }

    /// Dimension vector `dim e_v M` for a path-algebra module.
    pub fn dimension_vector(&self, q: &Quiver) -> Vec<usize> {
        (0..q.vertices.len()).map(|v| self.action[v].rank()).collect()
    }
}

fn same_algebra(m: &FdModule, n: &FdModule) -> Result<()> {
    if m.algebra != n.algebra {
        return Err(Error::Invalid("modules are over different algebras".into()));
    }
    Ok(())
}

/// Columns of the map `φ ↦ (φ M(g) - N(g) φ)_g` on `Hom_k(M, N)`.
fn coboundary_columns(m: &FdModule, n: &FdModule) -> Vec<SparseVec<(usize, usize)>> {
    let mut cols = vec![];
    for p in 0..n.dim {
        for q in 0..m.dim {
            let phi = Matrix::unit(n.dim, m.dim, p, q);
            let mut col = SparseVec::new();
            for (g, (am, an)) in m.action.iter().zip(&n.action).enumerate() {
                let c = phi.mul(am).unwrap().sub(&an.mul(&phi).unwrap()).unwrap();
                for (i, x) in c.to_sparse() {
                    col.insert((g, i), x);
                }
            }
            cols.push(col);
        }
    }
    cols
}

/// Basis of `Hom_A(M, N)` as `dim N x dim M` matrices.
pub fn hom_space(m: &FdModule, n: &FdModule) -> Result<Vec<Matrix>> {
    same_algebra(m, n)?;
    Ok(kernel(&coboundary_columns(m, n))
        .into_iter()
        .map(|z| Matrix::from_sparse(n.dim, m.dim, &z))
        .collect())
}

pub fn hom_dim(m: &FdModule, n: &FdModule) -> Result<usize> {
    same_algebra(m, n)?;
    Ok(m.dim * n.dim - rank(coboundary_columns(m, n)))
}

/// Cocycles: assignments `g ↦ C(g) ∈ Hom_k(M, N)` such that the block
/// lower-triangular action `[[M(g), 0], [C(g), N(g)]]` satisfies every relation.
fn cocycle_columns(m: &FdModule, n: &FdModule) -> Vec<SparseVec<(usize, usize)>> {
    let rels = &m.algebra.rels;
    let ngens = m.algebra.ngens();
    let mut cols = vec![];
    for g in 0..ngens {
        for p in 0..n.dim {
            for q in 0..m.dim {
                let e = Matrix::unit(n.dim, m.dim, p, q);
                let mut col = SparseVec::new();
                for (k, r) in rels.iter().enumerate() {
                    let mut acc = Matrix::zeros(n.dim, m.dim);
                    for (w, c) in r.terms() {
                        let ls = w.letters();
                        for i in (0..ls.len()).filter(|&i| ls[i] as usize == g) {
                            let left = n.word_action(&ls[..i]);
                            let right = m.word_action(&ls[i + 1..]);
                            let t = left.mul(&e).unwrap().mul(&right).unwrap();
                            acc = acc.add(&t.scale(c)).unwrap();
                        }
                    }
                    for (i, x) in acc.to_sparse() {
                        col.insert((k, i), x);
                    }
                }
                cols.push(col);
            }
        }
    }
    cols
}

/// `dim Ext¹_A(M, N)` = cocycles modulo coboundaries.
pub fn ext1_dim(m: &FdModule, n: &FdModule) -> Result<usize> {
    same_algebra(m, n)?;
    let z = m.algebra.ngens() * n.dim * m.dim - rank(cocycle_columns(m, n));
    let b = rank(coboundary_columns(m, n));
    Ok(z - b)
}

/// Euler form `<α, β> = sum_v α_v β_v - sum_a α_{s(a)} β_{t(a)}`.
pub fn euler_form(q: &Quiver, alpha: &[usize], beta: &[usize]) -> Result<i64> {
    if alpha.len() != q.vertices.len() || beta.len() != q.vertices.len() {
        return Err(Error::Dimension("dimension vectors must have one entry per vertex".into()));
    }
    let diag: i64 = alpha.iter().zip(beta).map(|(a, b)| (a * b) as i64).sum();
    let arrows: i64 = q.arrows.iter().map(|a| (alpha[a.source] * beta[a.target]) as i64).sum();
    Ok(diag - arrows)
}

/// Representation of a quiver with the given vertex dimensions and arrow
/// matrices (`arrow_maps[i]` is `dims[target] x dims[source]`).
pub fn quiver_representation(q: &Quiver, alg: &Presentation, dims: &[usize], arrow_maps: &[Matrix]) -> Result<FdModule> {
    if dims.len() != q.vertices.len() || arrow_maps.len() != q.arrows.len() {
        return Err(Error::Dimension("representation data does not match the quiver".into()));
    }
    let total: usize = dims.iter().sum();
    let offset: Vec<usize> = dims.iter().scan(0, |s, &d| {
        let o = *s;
        *s += d;
        Some(o)
    }).collect();
    let mut action = vec![];
    for v in 0..dims.len() {
        let mut m = Matrix::zeros(total, total);
        for i in 0..dims[v] {
            m[(offset[v] + i, offset[v] + i)] = crate::Q::one();
        }
        action.push(m);
    }
    for (a, map) in q.arrows.iter().zip(arrow_maps) {
        if map.rows != dims[a.target] || map.cols != dims[a.source] {
            return Err(Error::Dimension(format!("arrow `{}` has the wrong shape", a.name)));
        }
        let mut m = Matrix::zeros(total, total);
        for i in 0..map.rows {
            for j in 0..map.cols {
                m[(offset[a.target] + i, offset[a.source] + j)] = map[(i, j)].clone();
            }
        }
        action.push(m);
    }
    FdModule::new(alg, total, action)
}

/// Indecomposable projective `A e_v` of an acyclic quiver, on the basis of
/// paths starting at `v`.
pub fn projective_module(q: &Quiver, alg: &Presentation, v: usize) -> Result<FdModule> {
    let max = q.arrows.len() + 1;
    let paths: Vec<Vec<usize>> = q
        .paths(max)
        .into_iter()
        .filter(|(s, _)| *s == v)
        .map(|(_, p)| p)
        .collect();
    if paths.iter().any(|p| p.len() >= max) {
        return Err(Error::Invalid("quiver has oriented cycles; projectives are infinite".into()));
    }
    let end = |p: &Vec<usize>| p.first().map_or(v, |&a| q.arrows[a].target);
    let n = paths.len();
    let mut action = vec![];
    for w in 0..q.vertices.len() {
        let mut m = Matrix::zeros(n, n);
        for (i, p) in paths.iter().enumerate() {
            if end(p) == w {
                m[(i, i)] = crate::Q::one();
            }
        }
        action.push(m);
    }
    for (ai, a) in q.arrows.iter().enumerate() {
        let mut m = Matrix::zeros(n, n);
        for (i, p) in paths.iter().enumerate() {
            if end(p) == a.source {
                let mut np = vec![ai];
                np.extend_from_slice(p);
                let j = paths.iter().position(|x| *x == np).expect("path closed under extension");
                m[(j, i)] = crate::Q::one();
            }
        }
        action.push(m);
    }
    FdModule::new(alg, n, action)
}

pub fn simple_module(q: &Quiver, alg: &Presentation, v: usize) -> Result<FdModule> {
    let mut dims = vec![0; q.vertices.len()];
    dims[v] = 1;
    let maps: Vec<Matrix> = q
        .arrows
        .iter()
        .map(|a| Matrix::zeros(dims[a.target], dims[a.source]))
        .collect();
    quiver_representation(q, alg, &dims, &maps)
}

/// A module together with a framing: an isomorphism `k^n → M` given by its
/// matrix (columns are the images of the standard basis).
#[derive(Clone, Debug)]
pub struct FramedModule {
    pub module: FdModule,
    pub framing: Matrix,
}

impl FramedModule {
    pub fn new(module: FdModule, framing: Matrix) -> Result<Self> {
        if framing.rows != module.dim || framing.rank() != framing.cols || framing.cols != module.dim {
            return Err(Error::Dimension(format!(
                "framing of rank {} does not identify k^{} with a module of dimension {}",
                framing.rank(),
                framing.cols,
                module.dim
            )));
        }
        Ok(FramedModule { module, framing })
    }

    pub fn standard(module: FdModule) -> Self {
        let n = module.dim;
        FramedModule {
            module,
            framing: Matrix::identity(n),
        }
    }

    pub fn rank(&self) -> usize {
        self.framing.cols
    }
}

/// `n · dim F - dim Hom(E, F) + dim Ext¹(E, F)`, the tangent dimension of the
/// representation scheme of the double at a pair of framed modules.
pub fn double_tangent_dim(e: &FramedModule, f: &FramedModule) -> Result<usize> {
    if e.rank() != f.rank() {
        return Err(Error::Dimension(format!(
            "framing ranks differ ({} vs {})",
            e.rank(),
            f.rank()
        )));
    }
    let n = e.rank();
    let h = hom_dim(&e.module, &f.module)?;
    let x = ext1_dim(&e.module, &f.module)?;
    Ok(n * f.module.dim + x - h)
}

pub fn is_zero_matrix(m: &Matrix) -> bool {
    m.to_rows().iter().flatten().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{examples, path_algebra};
    use crate::q;

    #[test]
    fn kronecker_simples_and_projectives() {
        for d in 1..=3 {
            let qv = Quiver::kronecker(d);
            let a = path_algebra(&qv).unwrap();
            let s0 = simple_module(&qv, &a, 0).unwrap();
            let s1 = simple_module(&qv, &a, 1).unwrap();
            assert_eq!(ext1_dim(&s0, &s1).unwrap(), d);
            assert_eq!(ext1_dim(&s1, &s0).unwrap(), 0);
            let p0 = projective_module(&qv, &a, 0).unwrap();
            let p1 = projective_module(&qv, &a, 1).unwrap();
            assert_eq!((p0.dim, p1.dim), (d + 1, 1));
            assert_eq!(hom_dim(&p1, &p0).unwrap(), d);
            assert_eq!(hom_dim(&p0, &p1).unwrap(), 0);
        }
    }

    #[test]
    fn free_algebra_double_tangent() {
        for d in 1..=3 {
            let a = examples::free(d);
            let m = FdModule::new(&a, 1, vec![Matrix::zeros(1, 1); d]).unwrap();
            let fm = FramedModule::standard(m);
            assert_eq!(double_tangent_dim(&fm, &fm).unwrap(), d);
        }
    }

    #[test]
    fn idempotent_double_tangent() {
        let a = examples::idempotent();
        let m = FdModule::new(&a, 2, vec![Matrix::from_i64(&[&[1, 0], &[0, 0]])]).unwrap();
        let fm = FramedModule::standard(m);
        assert_eq!(double_tangent_dim(&fm, &fm).unwrap(), 2);
    }

    #[test]
    fn relations_are_enforced() {
        let a = examples::idempotent();
        assert!(FdModule::new(&a, 1, vec![Matrix::from_rows(vec![vec![q(2)]]).unwrap()]).is_err());
    }
}
