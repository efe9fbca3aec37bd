//! Representation schemes `Rep_n(A)`: matrix-entry polynomial relations,
//! Jacobians, trace functions and trace forms, vector fields from
//! derivations, the divergence identity and the tangent-algebra comparison.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{derivation, tangent_algebra};
use crate::commpoly::{CommPoly, Form, Monomial, Var};
use crate::error::{Error, Result};
use crate::linalg::{solve, Matrix, SparseVec};
use crate::ncpoly::{Letter, NcPoly, Presentation, Word};
use crate::rewrite::{complete, CompletionLimits};
use crate::Q;

/// `n x n` matrix with polynomial entries.
pub type PolyMatrix = Vec<Vec<CommPoly>>;

#[derive(Clone, Debug)]
pub struct ReprScheme {
    pub algebra: Presentation,
    pub n: usize,
    /// Entries of `hat(r)` for every relation `r`, row-major, `n²` per relation.
    pub relations: Vec<CommPoly>,
}

impl ReprScheme {
    pub fn new(a: &Presentation, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("matrix size must be positive".into()));
        }
        let mut s = ReprScheme {
            algebra: a.clone(),
            n,
            relations: vec![],
        };
        let mut rels = vec![];
        for r in &a.rels {
            let m = s.hat(r);
            rels.extend(m.into_iter().flatten());
        }
        s.relations = rels;
        Ok(s)
    }

    pub fn num_vars(&self) -> usize {
        self.algebra.ngens() * self.n * self.n
    }

    pub fn var(&self, g: usize, i: usize, j: usize) -> Var {
        ((g * self.n + i) * self.n + j) as Var
    }

    pub fn var_name(&self, v: Var) -> String {
        let nn = self.n * self.n;
        let v = v as usize;
        let (g, i, j) = (v / nn, (v % nn) / self.n, v % self.n);
        format!("{}[{},{}]", self.algebra.gens[g].symbol, i + 1, j + 1)
    }

    pub fn generic_matrix(&self, g: Letter) -> PolyMatrix {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| CommPoly::var(self.var(g as usize, i, j))).collect())
            .collect()
    }

    /// `hat(p) = sum c_w X_{w_1} ... X_{w_k}`.
    pub fn hat(&self, p: &NcPoly) -> PolyMatrix {
        let n = self.n;
        let mut out = zero_matrix(n);
        for (w, c) in p.terms() {
            let mut m = identity_matrix(n);
            for &l in w.letters() {
                m = mat_mul(&m, &self.generic_matrix(l));
            }
            for i in 0..n {
                for j in 0..n {
                    out[i][j].add_scaled(c, &m[i][j]);
                }
            }
        }
        out
    }

    pub fn trace(&self, p: &NcPoly) -> CommPoly {
        let m = self.hat(p);
        (0..self.n).fold(CommPoly::zero(), |acc, i| acc.add(&m[i][i]))
    }

    /// `Tr(hat(a_1)) ··· Tr(hat(a_k))`.
    pub fn trace_function(&self, factors: &[NcPoly]) -> CommPoly {
        factors.iter().fold(CommPoly::one(), |acc, f| acc.mul(&self.trace(f)))
    }

    pub fn check_point(&self, point: &[Q]) -> Result<()> {
        if point.len() != self.num_vars() {
            return Err(Error::Dimension(format!(
                "point has {} coordinates, scheme has {} variables",
                point.len(),
                self.num_vars()
            )));
        }
        for (k, r) in self.relations.iter().enumerate() {
            let v = r.eval(point);
            if !v.is_zero() {
                return Err(Error::NotOnScheme(format!("relation entry {k} evaluates to {v}")));
            }
        }
        Ok(())
    }

    pub fn jacobian_at(&self, point: &[Q]) -> Matrix {
        let nv = self.num_vars();
        let mut j = Matrix::zeros(self.relations.len(), nv);
        for (r, f) in self.relations.iter().enumerate() {
            for v in f.vars() {
                j[(r, v as usize)] = f.derivative(v).eval(point);
            }
        }
        j
    }

    pub fn jacobian_rank_at(&self, point: &[Q]) -> Result<usize> {
        self.check_point(point)?;
        Ok(self.jacobian_at(point).rank())
    }

    /// Basis of the Zariski tangent space at a point.
    pub fn tangent_basis_at(&self, point: &[Q]) -> Result<Vec<Vec<Q>>> {
        self.check_point(point)?;
        Ok(self.jacobian_at(point).null_space())
    }

    /// Components of the vector field induced by a derivation: the
    /// `(g, i, j)` component is `hat(ξ(g))_{ij}`.
    pub fn vector_field(&self, xi: &Derivation) -> Vec<CommPoly> {
        let mut comps = vec![CommPoly::zero(); self.num_vars()];
        for (g, img) in xi.images.iter().enumerate() {
            let m = self.hat(img);
            for i in 0..self.n {
                for j in 0..self.n {
                    comps[self.var(g, i, j) as usize] = m[i][j].clone();
                }
            }
        }
        comps
    }

    /// Derivative of `f` along a vector field.
    pub fn directional(&self, f: &CommPoly, field: &[CommPoly]) -> CommPoly {
        f.vars()
            .into_iter()
            .fold(CommPoly::zero(), |acc, v| acc.add(&f.derivative(v).mul(&field[v as usize])))
    }

    /// Evaluate the derivative of every relation along the field at the given
    /// points of the scheme; all values vanish when the field is tangent there.
    pub fn field_tangent_at(&self, field: &[CommPoly], points: &[Vec<Q>]) -> Result<bool> {
        for p in points {
            self.check_point(p)?;
            for r in &self.relations {
                if !self.directional(r, field).eval(p).is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Polynomial form `hat(a_0) d hat(a_1) ... d hat(a_m)` traced.
    pub fn trace_form(&self, omega: &NcForm) -> Form {
        let n = self.n;
        let mut total = Form::zero();
        for (c, parts) in &omega.terms {
            let mut acc: Vec<Vec<Form>> = self
                .hat(&parts[0])
                .into_iter()
                .map(|row| row.into_iter().map(Form::function).collect())
                .collect();
            for a in &parts[1..] {
                let dm: Vec<Vec<Form>> = self
                    .hat(a)
                    .into_iter()
                    .map(|row| row.iter().map(Form::differential).collect())
                    .collect();
                acc = form_mat_mul(&acc, &dm);
            }
            for (i, row) in acc.iter().enumerate().take(n) {
                total = total.add(&row[i].scale(c));
            }
        }
        total
    }

    /// Decide whether `target` lies in the differential ideal generated by the
    /// relation entries, using polynomial multipliers of bounded degree.
    /// Returns `None` when the system is larger than `max_unknowns`.
    pub fn in_differential_ideal(&self, target: &Form, degree: usize, max_unknowns: usize) -> Option<bool> {
        let p = target.terms().next().map_or(0, |(k, _)| k.len());
        let nv = self.num_vars() as Var;
        let bound = target.max_coeff_degree() as usize + degree;
        let rels: Vec<&CommPoly> = self.relations.iter().filter(|r| !r.is_zero()).collect();
        let idx_p = subsets(nv, p);
        let idx_q = if p > 0 { subsets(nv, p - 1) } else { vec![] };
        let mut count = 0usize;
        for r in &rels {
            let d = r.degree() as usize;
            count += idx_p.len() * monomials(nv, bound.saturating_sub(d)).len();
            if p > 0 && bound + 1 >= d {
                count += idx_q.len() * monomials(nv, bound + 1 - d).len();
            }
        }
        if count > max_unknowns {
            return None;
        }
        let to_vec = |w: &Form| -> SparseVec<(Vec<Var>, Monomial)> {
            let mut v = SparseVec::new();
            for (k, f) in w.terms() {
                for (m, c) in f.terms() {
                    v.insert((k.clone(), m.clone()), c.clone());
                }
            }
            v
        };
        let mut cols = vec![];
        for r in &rels {
            let d = r.degree() as usize;
            if bound >= d {
                let ms = monomials(nv, bound - d);
                for idx in &idx_p {
                    let base = basis_form(idx);
                    for m in &ms {
                        cols.push(to_vec(&base.mul_fn(&r.mul(&mono_poly(m)))));
                    }
                }
            }
            if p > 0 && bound + 1 >= d {
                let dr = Form::differential(r);
                let ms = monomials(nv, bound + 1 - d);
                for idx in &idx_q {
                    let base = basis_form(idx);
                    for m in &ms {
                        cols.push(to_vec(&dr.wedge(&base.mul_fn(&mono_poly(m)))));
                    }
                }
            }
        }
        Some(solve(&cols, &to_vec(target)).is_some())
    }

    /// Check that `form` pulls back to zero on the tangent spaces at the given points.
    pub fn form_vanishes_at(&self, form: &Form, points: &[Vec<Q>]) -> Result<bool> {
        let p = form.terms().next().map_or(0, |(k, _)| k.len());
        for pt in points {
            let basis = self.tangent_basis_at(pt)?;
            for sel in subsets(basis.len() as Var, p) {
                let vs: Vec<Vec<Q>> = sel.iter().map(|&i| basis[i as usize].clone()).collect();
                if !form.eval(pt, &vs).is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Rank of a 2-form restricted to the tangent space at a point.
    pub fn two_form_rank_at(&self, form: &Form, point: &[Q]) -> Result<usize> {
        let basis = self.tangent_basis_at(point)?;
        let k = basis.len();
        let mut m = Matrix::zeros(k, k);
        for a in 0..k {
            for b in 0..k {
                m[(a, b)] = form.eval(point, &[basis[a].clone(), basis[b].clone()]);
            }
        }
        Ok(m.rank())
    }

    pub fn to_text(&self) -> String {
        let name = |v: Var| self.var_name(v);
        let mut s = format!("# Rep_{}({})\n", self.n, self.algebra.name);
        for r in &self.relations {
            s.push_str(&r.format(&name));
            s.push('\n');
        }
        s
    }
}

fn zero_matrix(n: usize) -> PolyMatrix {
    vec![vec![CommPoly::zero(); n]; n]
}

fn identity_matrix(n: usize) -> PolyMatrix {
    let mut m = zero_matrix(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = CommPoly::one();
    }
    m
}

fn mat_mul(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let n = a.len();
    let mut out = zero_matrix(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] = out[i][j].add(&a[i][k].mul(&b[k][j]));
            }
        }
    }
    out
}

fn form_mat_mul(a: &[Vec<Form>], b: &[Vec<Form>]) -> Vec<Vec<Form>> {
    let n = a.len();
    let mut out = vec![vec![Form::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] = out[i][j].add(&a[i][k].wedge(&b[k][j]));
            }
        }
    }
    out
}

fn subsets(n: Var, k: usize) -> Vec<Vec<Var>> {
    fn go(start: Var, n: Var, k: usize, cur: &mut Vec<Var>, out: &mut Vec<Vec<Var>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    go(0, n, k, &mut vec![], &mut out);
    out
}

fn monomials(nv: Var, max_deg: usize) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    let mut layer = vec![Monomial::one()];
    for _ in 0..max_deg {
        let mut next = std::collections::BTreeSet::new();
        for m in &layer {
            let start = m.factors().last().map_or(0, |&(v, _)| v);
            for v in start..nv {
                next.insert(m.mul(&Monomial::var(v)));
            }
        }
        layer = next.into_iter().collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn mono_poly(m: &Monomial) -> CommPoly {
    let mut p = CommPoly::zero();
    p.add_term(m.clone(), Q::one());
    p
}

fn basis_form(idx: &[Var]) -> Form {
    idx.iter().fold(Form::function(CommPoly::one()), |acc, &v| acc.wedge(&Form::dvar(v)))
}

/// Noncommutative differential form `sum c · a_0 da_1 ... da_m`.
#[derive(Clone, Debug, Default)]
pub struct NcForm {
    pub terms: Vec<(Q, Vec<NcPoly>)>,
}

impl NcForm {
    pub fn single(parts: Vec<NcPoly>) -> Self {
        NcForm {
            terms: vec![(Q::one(), parts)],
        }
    }

    /// `d(a_0 da_1 ... da_m) = 1 da_0 da_1 ... da_m`.
    pub fn d(&self) -> NcForm {
        NcForm {
            terms: self
                .terms
                .iter()
                .map(|(c, parts)| {
                    let mut v = vec![NcPoly::one()];
                    v.extend(parts.iter().cloned());
                    (c.clone(), v)
                })
                .collect(),
        }
    }
}

/// A derivation of a presented algebra, given by the images of the generators.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub algebra: Presentation,
    pub images: Vec<NcPoly>,
}

impl Derivation {
    /// Validates that every relation is sent into the ideal, using a rewriting
    /// system completed up to `max_len`.
    pub fn new(algebra: &Presentation, images: Vec<NcPoly>, max_len: usize) -> Result<Self> {
        if images.len() != algebra.ngens() {
            return Err(Error::Dimension("one image per generator is required".into()));
        }
        for im in &images {
            im.check_alphabet(algebra.ngens())?;
        }
        if !algebra.rels.is_empty() {
            let rs = complete(algebra.ngens(), &algebra.rels, CompletionLimits::new(max_len))?;
            let mut red = rs.reducer();
            for r in &algebra.rels {
                let img = derivation(r, |l| images[l as usize].clone());
                if !red.nf(&img).is_zero() {
                    return Err(Error::Invalid(format!(
                        "the Leibniz image of `{}` is not zero in the quotient",
                        algebra.format_poly(r)
                    )));
                }
            }
        }
        Ok(Derivation {
            algebra: algebra.clone(),
            images,
        })
    }

    pub fn apply(&self, p: &NcPoly) -> NcPoly {
        derivation(p, |l| self.images[l as usize].clone())
    }
}

/// Element of `Sym²(A/[A,A])` written as `sum c [u]·[v]` over word pairs.
pub type SymSquare = BTreeMap<(Word, Word), Q>;

/// Noncommutative divergence of a derivation of a free algebra:
/// `div ξ = sum_i sum_{ξ(x_i) ∋ u x_i v} [u]·[v]`.
pub fn nc_divergence(xi: &Derivation) -> Result<SymSquare> {
    if !xi.algebra.rels.is_empty() {
        return Err(Error::Invalid("the divergence is defined here for free algebras only".into()));
    }
    let mut out = SymSquare::new();
    for (i, img) in xi.images.iter().enumerate() {
        for (w, c) in img.terms() {
            let ls = w.letters();
            for k in (0..ls.len()).filter(|&k| ls[k] as usize == i) {
                let u = Word::from_letters(&ls[..k]);
                let v = Word::from_letters(&ls[k + 1..]);
                let key = if u <= v { (u, v) } else { (v, u) };
                let e = out.entry(key.clone()).or_insert_with(Q::zero);
                *e += c;
                if e.is_zero() {
                    out.remove(&key);
                }
            }
        }
    }
    Ok(out)
}

pub fn trace_of_sym_square(s: &ReprScheme, x: &SymSquare) -> CommPoly {
    let mut out = CommPoly::zero();
    for ((u, v), c) in x {
        let t = s.trace(&NcPoly::word(u.clone())).mul(&s.trace(&NcPoly::word(v.clone())));
        out.add_scaled(c, &t);
    }
    out
}

/// Classical divergence `sum_v ∂F_v/∂x_v` of a polynomial vector field.
pub fn classical_divergence(field: &[CommPoly]) -> CommPoly {
    field
        .iter()
        .enumerate()
        .fold(CommPoly::zero(), |acc, (v, f)| acc.add(&f.derivative(v as Var)))
}

/// Random rational points of the idempotent locus `{P : P² = P, rank P = m}`,
/// as conjugates `g diag(1^m, 0) g^{-1}` with small integer `g`.
pub fn idempotent_points(n: usize, m: usize, count: usize, seed: u64) -> Vec<Vec<Q>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![];
    let mut d = Matrix::zeros(n, n);
    for i in 0..m {
        d[(i, i)] = Q::one();
    }
    while out.len() < count {
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = crate::q(rng.gen_range(-3..=3));
            }
        }
        let Ok(inv) = g.inverse() else { continue };
        let p = g.mul(&d).unwrap().mul(&inv).unwrap();
        out.push(p.to_rows().into_iter().flatten().collect());
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentIsoReport {
    pub checked: usize,
    pub mismatches: Vec<String>,
}

/// Compare `Rep_n(TA)` with the tangent bundle equations of `Rep_n(A)`: each
/// entry of `hat(D r)` must equal the Jacobian contraction of `hat(r)` with
/// the tangent coordinates.
pub fn tangent_iso_check(a: &Presentation, n: usize) -> Result<TangentIsoReport> {
    let ta = tangent_algebra(a)?;
    let base = ReprScheme::new(a, n)?;
    let tan = ReprScheme::new(&ta.pres, n)?;
    let g = a.ngens();
    let shift = (g * n * n) as Var;
    let mut mismatches = vec![];
    let mut checked = 0;
    for (k, r) in a.rels.iter().enumerate() {
        let hr = base.hat(r);
        let hdr = tan.hat(&ta.pres.rels[a.rels.len() + k]);
        for i in 0..n {
            for j in 0..n {
                checked += 1;
                let f = &hr[i][j];
                let contraction = f
                    .vars()
                    .into_iter()
                    .fold(CommPoly::zero(), |acc, v| acc.add(&f.derivative(v).mul(&CommPoly::var(v + shift))));
                if contraction != hdr[i][j] {
                    mismatches.push(format!("relation {} entry ({},{})", k + 1, i + 1, j + 1));
                }
            }
        }
    }
    Ok(TangentIsoReport { checked, mismatches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::examples;
    use crate::q;

    #[test]
    fn relation_count_and_split_points() {
        let a = examples::split_semisimple();
        let s = ReprScheme::new(&a, 1).unwrap();
        assert_eq!(s.relations.len(), a.rels.len());
        let mut found = vec![];
        for x in -2..=2 {
            for y in -2..=2 {
                if s.check_point(&[q(x), q(y)]).is_ok() {
                    found.push((x, y));
                }
            }
        }
        assert_eq!(found, vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn idempotent_jacobian_corank() {
        let a = examples::idempotent();
        for n in 1..=3 {
            let s = ReprScheme::new(&a, n).unwrap();
            for m in 0..=n {
                let pts = idempotent_points(n, m, 2, 7);
                for p in &pts {
                    let r = s.jacobian_rank_at(p).unwrap();
                    assert_eq!(n * n - r, 2 * m * (n - m));
                }
            }
        }
    }

    #[test]
    fn point_off_scheme_is_rejected() {
        let s = ReprScheme::new(&examples::idempotent(), 1).unwrap();
        assert!(matches!(s.jacobian_rank_at(&[q(2)]), Err(Error::NotOnScheme(_))));
    }

    #[test]
    fn tangent_iso_for_examples() {
        for a in [examples::idempotent(), examples::toeplitz(), examples::commutative_plane()] {
            for n in 1..=2 {
                let r = tangent_iso_check(&a, n).unwrap();
                assert!(r.mismatches.is_empty());
            }
        }
    }
}
