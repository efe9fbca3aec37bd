//! Noncommutative differential forms: the universal DG algebra of a
//! finite-dimensional algebra, Karoubi–de Rham cohomology, smoothness
//! witnesses, separability idempotents and projectivity of Ω¹.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::{derivation, tangent_algebra, TangentAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{axpy, rank, solve, Echelon, Matrix, SparseVec};
use crate::ncpoly::{Letter, NcPoly, Presentation, Word};
use crate::rewrite::{complete, CompletionLimits, Status};
use crate::Q;

/// Associative unital algebra given by structure constants
/// `e_i e_j = sum_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FdAlgebra {
    pub name: String,
    n: usize,
    c: Vec<Q>,
    unit: Vec<Q>,
}

impl FdAlgebra {
    pub fn new(name: impl Into<String>, n: usize, c: Vec<Q>, unit: Vec<Q>) -> Result<Self> {
        if c.len() != n * n * n || unit.len() != n {
            return Err(Error::Dimension("structure constants do not match the dimension".into()));
        }
        let a = FdAlgebra {
            name: name.into(),
            n,
            c,
            unit,
        };
        a.check_axioms()?;
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn unit(&self) -> &[Q] {
        &self.unit
    }

    pub fn basis(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.n];
        v[i] = Q::one();
        v
    }

    pub fn structure(&self, i: usize, j: usize, k: usize) -> &Q {
        &self.c[(i * self.n + j) * self.n + k]
    }

    pub fn mul(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let n = self.n;
        let mut r = vec![Q::zero(); n];
        for i in (0..n).filter(|&i| !a[i].is_zero()) {
            for j in (0..n).filter(|&j| !b[j].is_zero()) {
                let ab = &a[i] * &b[j];
                for (k, rk) in r.iter_mut().enumerate() {
                    let s = self.structure(i, j, k);
                    if !s.is_zero() {
                        *rk += &ab * s;
                    }
                }
            }
        }
        r
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            let bi = self.basis(i);
            if self.mul(&self.unit, &bi) != bi || self.mul(&bi, &self.unit) != bi {
                return Err(Error::Axiom(format!("unit law fails on basis element {i}")));
            }
            for j in 0..n {
                let bij = self.mul(&bi, &self.basis(j));
                for k in 0..n {
                    let bk = self.basis(k);
                    let l = self.mul(&bij, &bk);
                    let r = self.mul(&bi, &self.mul(&self.basis(j), &bk));
                    if l != r {
                        return Err(Error::Axiom(format!("associativity fails on ({i},{j},{k})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field() -> Self {
        FdAlgebra::new("k", 1, vec![Q::one()], vec![Q::one()]).expect("field")
    }

    /// `n x n` matrices on matrix units, basis index `i*n + j`.
    pub fn matrix(n: usize) -> Self {
        let d = n * n;
        let mut c = vec![Q::zero(); d * d * d];
        let mut unit = vec![Q::zero(); d];
        for i in 0..n {
            unit[i * n + i] = Q::one();
            for j in 0..n {
                for l in 0..n {
                    c[((i * n + j) * d + (j * n + l)) * d + (i * n + l)] = Q::one();
                }
            }
        }
        FdAlgebra::new(format!("Mat{n}"), d, c, unit).expect("matrix algebra")
    }

    /// Upper-triangular `n x n` matrices on the units `E_ij`, `i <= j`.
    pub fn upper_triangular(n: usize) -> Self {
        let idx: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let d = idx.len();
        let pos = |p: (usize, usize)| idx.iter().position(|&q| q == p).unwrap();
        let mut c = vec![Q::zero(); d * d * d];
        let mut unit = vec![Q::zero(); d];
        for i in 0..n {
            unit[pos((i, i))] = Q::one();
        }
        for (a, &(i, j)) in idx.iter().enumerate() {
            for (b, &(k, l)) in idx.iter().enumerate() {
                if j == k {
                    c[(a * d + b) * d + pos((i, l))] = Q::one();
                }
            }
        }
        FdAlgebra::new(format!("UT{n}"), d, c, unit).expect("triangular algebra")
    }

    /// `k[x]/(x^m)` on the basis `1, x, ..., x^{m-1}`.
    pub fn truncated_polynomial(m: usize) -> Self {
        let mut c = vec![Q::zero(); m * m * m];
        for i in 0..m {
            for j in 0..m {
                if i + j < m {
                    c[(i * m + j) * m + i + j] = Q::one();
                }
            }
        }
        let mut unit = vec![Q::zero(); m];
        unit[0] = Q::one();
        FdAlgebra::new(format!("k[x]/x^{m}"), m, c, unit).expect("truncated polynomials")
    }

    pub fn direct_sum(a: &FdAlgebra, b: &FdAlgebra) -> Self {
        let n = a.n + b.n;
        let mut c = vec![Q::zero(); n * n * n];
        for i in 0..a.n {
            for j in 0..a.n {
                for k in 0..a.n {
                    c[(i * n + j) * n + k] = a.structure(i, j, k).clone();
                }
            }
        }
        for i in 0..b.n {
            for j in 0..b.n {
                for k in 0..b.n {
                    c[((a.n + i) * n + a.n + j) * n + a.n + k] = b.structure(i, j, k).clone();
                }
            }
        }
        let mut unit = a.unit.clone();
        unit.extend(b.unit.iter().cloned());
        FdAlgebra::new(format!("{}+{}", a.name, b.name), n, c, unit).expect("direct sum")
    }

    /// Finite-dimensional quotient given by a presentation whose completion is
    /// finite within `max_len`.
    pub fn from_presentation(p: &Presentation, max_len: usize) -> Result<(Self, Vec<Word>)> {
        let rs = complete(p.ngens(), &p.rels, CompletionLimits::new(max_len))?;
        let words = rs.normal_words(max_len);
        let longest = words.iter().map(Word::len).max().unwrap_or(0);
        if rs.status() != Status::Complete && longest * 2 > max_len {
            return Err(Error::Invalid(format!(
                "cannot certify that `{}` is finite-dimensional within length {max_len}",
                p.name
            )));
        }
        if longest >= max_len {
            return Err(Error::Invalid(format!(
                "`{}` has normal words of length {max_len}; it may be infinite-dimensional",
                p.name
            )));
        }
        let n = words.len();
        let pos: BTreeMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut red = rs.reducer();
        let mut c = vec![Q::zero(); n * n * n];
        for (i, a) in words.iter().enumerate() {
            for (j, b) in words.iter().enumerate() {
                let prod = red.nf_word(&a.concat(b));
                for (w, x) in prod.terms() {
                    c[(i * n + j) * n + pos[w]] = x.clone();
                }
            }
        }
        let mut unit = vec![Q::zero(); n];
        unit[pos[&Word::empty()]] = Q::one();
        Ok((FdAlgebra::new(p.name.clone(), n, c, unit)?, words))
    }

    /// Isomorphic copy whose basis element 0 is the unit.
    pub fn unit_adapted(&self) -> FdAlgebra {
        let n = self.n;
        let p = self.unit.iter().position(|x| !x.is_zero()).expect("nonzero unit");
        let mut cols = vec![self.unit.clone()];
        cols.extend((0..n).filter(|&j| j != p).map(|j| self.basis(j)));
        let mut pm = Matrix::zeros(n, n);
        for (j, col) in cols.iter().enumerate() {
            for i in 0..n {
                pm[(i, j)] = col[i].clone();
            }
        }
        let inv = pm.inverse().expect("change of basis is invertible");
        let mut c = vec![Q::zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                let prod = self.mul(&cols[i], &cols[j]);
                let coords = inv.apply(&prod);
                for (k, x) in coords.into_iter().enumerate() {
                    c[(i * n + j) * n + k] = x;
                }
            }
        }
        let unit = (0..n).map(|i| if i == 0 { Q::one() } else { Q::zero() }).collect();
        FdAlgebra::new(self.name.clone(), n, c, unit).expect("isomorphic copy")
    }
}

/// Basis key of `A ⊗ Ā^{⊗k}`: entry 0 indexes `A`, the rest index `Ā`
/// (basis elements `1..n` of a unit-adapted algebra).
pub type FormKey = Vec<u16>;
pub type FormVec = SparseVec<FormKey>;

/// The universal differential graded algebra `ΩA` of a finite-dimensional
/// algebra, truncated at a maximal degree.
pub struct UniversalForms {
    pub a: FdAlgebra,
    pub max_degree: usize,
}

impl UniversalForms {
    pub fn new(a: &FdAlgebra, max_degree: usize) -> Self {
        UniversalForms {
            a: a.unit_adapted(),
            max_degree,
        }
    }

    pub fn basis(&self, degree: usize) -> Vec<FormKey> {
        let n = self.a.dim() as u16;
        let mut out: Vec<FormKey> = (0..n).map(|i| vec![i]).collect();
        for _ in 0..degree {
            let mut next = vec![];
            for k in &out {
                for j in 1..n {
                    let mut v = k.clone();
                    v.push(j);
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }

    pub fn dim(&self, degree: usize) -> usize {
        let n = self.a.dim();
        n * (n - 1).pow(degree as u32)
    }

    fn element_form(&self, x: &[Q], tail: &[u16]) -> FormVec {
        let mut f = FormVec::new();
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                let mut k = vec![i as u16];
                k.extend_from_slice(tail);
                f.insert(k, c.clone());
            }
        }
        f
    }

    /// `ω ↦ ω · dx`.
    fn append_d(&self, w: &FormVec, x: &[Q]) -> FormVec {
        let mut out = FormVec::new();
        for (k, c) in w {
            for (j, xj) in x.iter().enumerate().skip(1) {
                if xj.is_zero() {
                    continue;
                }
                let mut key = k.clone();
                key.push(j as u16);
                let e = out.entry(key.clone()).or_insert_with(Q::zero);
                *e += c * xj;
                if e.is_zero() {
                    out.remove(&key);
                }
            }
        }
        out
    }

    fn right_mul_key(&self, key: &[u16], b: &[Q]) -> FormVec {
        if key.len() == 1 {
            let a0 = self.a.basis(key[0] as usize);
            return self.element_form(&self.a.mul(&a0, b), &[]);
        }
        let (prefix, last) = key.split_at(key.len() - 1);
        let ak = self.a.basis(last[0] as usize);
        let mut prefix_form = FormVec::new();
        prefix_form.insert(prefix.to_vec(), Q::one());
        let mut out = self.append_d(&prefix_form, &self.a.mul(&ak, b));
        let pa = self.right_mul_key(prefix, &ak);
        axpy(&mut out, &-Q::one(), &self.append_d(&pa, b));
        out
    }

    /// `ω · b` for an algebra element `b`, via `da · b = d(ab) - a db`.
    pub fn right_mul(&self, w: &FormVec, b: &[Q]) -> FormVec {
        let mut out = FormVec::new();
        for (k, c) in w {
            axpy(&mut out, c, &self.right_mul_key(k, b));
        }
        out
    }

    pub fn mul(&self, w: &FormVec, v: &FormVec) -> FormVec {
        let mut out = FormVec::new();
        for (k, c) in v {
            let head = self.right_mul(w, &self.a.basis(k[0] as usize));
            for (hk, hc) in head {
                let mut key = hk;
                key.extend_from_slice(&k[1..]);
                let e = out.entry(key.clone()).or_insert_with(Q::zero);
                *e += &hc * c;
                if e.is_zero() {
                    out.remove(&key);
                }
            }
        }
        out
    }

    pub fn d(&self, w: &FormVec) -> FormVec {
        let mut out = FormVec::new();
        for (k, c) in w {
            if k[0] != 0 {
                let mut key = vec![0u16];
                key.extend_from_slice(k);
                out.insert(key, c.clone());
            }
        }
        out
    }

    pub fn key_form(k: &FormKey) -> FormVec {
        let mut f = FormVec::new();
        f.insert(k.clone(), Q::one());
        f
    }

    /// Graded commutator `[ω, η] = ωη - (-1)^{|ω||η|} ηω`.
    pub fn supercommutator(&self, w: &FormKey, v: &FormKey) -> FormVec {
        let (fw, fv) = (Self::key_form(w), Self::key_form(v));
        let mut out = self.mul(&fw, &fv);
        let sign = if ((w.len() - 1) * (v.len() - 1)).is_multiple_of(2) { -Q::one() } else { Q::one() };
        axpy(&mut out, &sign, &self.mul(&fv, &fw));
        out
    }

    /// Spanning set of `[Ω, Ω]` in degree `n`.
    pub fn commutators(&self, n: usize) -> Vec<FormVec> {
        let mut out = vec![];
        for p in 0..=n {
            let bp = self.basis(p);
            let bq = self.basis(n - p);
            for w in &bp {
                for v in &bq {
                    let c = self.supercommutator(w, v);
                    if !c.is_empty() {
                        out.push(c);
                    }
                }
            }
        }
        out
    }
}

/// Cohomology dimensions `H^0..H^N` of the Karoubi–de Rham complex
/// `ΩA / [ΩA, ΩA]` with the induced differential.
pub fn karoubi_de_rham(a: &FdAlgebra, max_degree: usize) -> Vec<usize> {
    let uf = UniversalForms::new(a, max_degree + 1);
    let comm: Vec<Echelon<FormKey>> = (0..=max_degree + 1)
        .map(|n| {
            let mut e = Echelon::new();
            for c in uf.commutators(n) {
                e.insert(c);
            }
            e
        })
        .collect();
    let quotient_dim: Vec<usize> = (0..=max_degree + 1).map(|n| uf.dim(n) - comm[n].rank()).collect();
    let induced_rank: Vec<usize> = (0..=max_degree)
        .map(|n| {
            let mut e = Echelon::new();
            for c in uf.commutators(n + 1) {
                e.insert(c);
            }
            let base = e.rank();
            for k in uf.basis(n) {
                e.insert(uf.d(&UniversalForms::key_form(&k)));
            }
            e.rank() - base
        })
        .collect();
    (0..=max_degree)
        .map(|n| {
            let prev = if n == 0 { 0 } else { induced_rank[n - 1] };
            quotient_dim[n] - induced_rank[n] - prev
        })
        .collect()
}

/// Structural checks of `ΩA` up to the given degree: `d² = 0`, `d1 = 0` and the
/// graded Leibniz rule on all pairs of basis forms.
pub fn check_universal_forms(uf: &UniversalForms) -> Result<()> {
    let unit = UniversalForms::key_form(&vec![0]);
    if !uf.d(&unit).is_empty() {
        return Err(Error::Axiom("d(1) is not zero".into()));
    }
    for p in 0..=uf.max_degree {
        for k in uf.basis(p) {
            let f = UniversalForms::key_form(&k);
            if !uf.d(&uf.d(&f)).is_empty() {
                return Err(Error::Axiom(format!("d² does not vanish on {k:?}")));
            }
        }
    }
    for p in 0..=uf.max_degree {
        for q in 0..=uf.max_degree.saturating_sub(p + 1) {
            for w in uf.basis(p) {
                for v in uf.basis(q) {
                    let (fw, fv) = (UniversalForms::key_form(&w), UniversalForms::key_form(&v));
                    let lhs = uf.d(&uf.mul(&fw, &fv));
                    let mut rhs = uf.mul(&uf.d(&fw), &fv);
                    let sign = if p % 2 == 0 { Q::one() } else { -Q::one() };
                    axpy(&mut rhs, &sign, &uf.mul(&fw, &uf.d(&fv)));
                    if lhs != rhs {
                        return Err(Error::Axiom(format!("Leibniz rule fails on {w:?}, {v:?}")));
                    }
                }
            }
        }
    }
    Ok(())
}

/// A smoothness witness: a degree-one derivation `D` of the tangent algebra
/// with `D(g) = Dg` and `D(Dg) = tau_g`, killing every relation.
#[derive(Clone, Debug)]
pub struct SmoothnessWitness {
    pub ta: TangentAlgebra,
    pub tau: Vec<NcPoly>,
}

#[derive(Clone, Debug)]
pub enum Smoothness {
    Witness(SmoothnessWitness),
    /// No witness among normal words of tangent degree two and length at most `max_len`.
    Unknown { max_len: usize },
}

fn witness_derivation(ta: &TangentAlgebra, tau: &[NcPoly], p: &NcPoly) -> NcPoly {
    let n = ta.n() as Letter;
    derivation(p, |l| if l < n { NcPoly::gen(l + n) } else { tau[(l - n) as usize].clone() })
}

/// Search for a smoothness witness by exact linear algebra over the ansatz
/// `tau_g = sum c_w w` with `w` ranging over tangent-algebra normal words of
/// tangent degree exactly two and length at most `max_len`.
pub fn smoothness_witness(a: &Presentation, max_len: usize) -> Result<Smoothness> {
    let ta = tangent_algebra(a)?;
    let n = ta.n();
    let rel_len = ta.pres.rels.iter().map(NcPoly::max_len).max().unwrap_or(0);
    let bound = (max_len + rel_len).max(2 * rel_len);
    let rs = complete(ta.pres.ngens(), &ta.pres.rels, CompletionLimits::new(bound))?;
    let ansatz: Vec<Word> = rs
        .normal_words_where(max_len, |w| w.iter().filter(|&&l| (l as usize) >= n).count() <= 2)
        .into_iter()
        .filter(|w| ta.ta_degree(w) == 2)
        .collect();
    let targets: Vec<&NcPoly> = ta.pres.rels[a.rels.len()..].iter().collect();
    let mut red = rs.reducer();
    let mut rhs: SparseVec<(usize, Word)> = SparseVec::new();
    let zero_tau = vec![NcPoly::zero(); n];
    for (k, r) in targets.iter().enumerate() {
        for (w, c) in red.nf(&witness_derivation(&ta, &zero_tau, r)).terms() {
            rhs.insert((k, w.clone()), -c.clone());
        }
    }
    let mut columns = vec![];
    let mut unknowns = vec![];
    for g in 0..n {
        for w in &ansatz {
            let image = |l: Letter| {
                if (l as usize) == n + g {
                    NcPoly::word(w.clone())
                } else {
                    NcPoly::zero()
                }
            };
            let mut col = SparseVec::new();
            for (k, r) in targets.iter().enumerate() {
                for (v, c) in red.nf(&derivation(r, image)).terms() {
                    col.insert((k, v.clone()), c.clone());
                }
            }
            columns.push(col);
            unknowns.push((g, w.clone()));
        }
    }
    let Some(z) = solve(&columns, &rhs) else {
        return Ok(Smoothness::Unknown { max_len });
    };
    let mut tau = vec![NcPoly::zero(); n];
    for (i, c) in z {
        let (g, w) = &unknowns[i];
        tau[*g].add_term(w.clone(), c);
    }
    let witness = SmoothnessWitness { ta, tau };
    verify_smoothness_witness(&witness, bound)?;
    Ok(Smoothness::Witness(witness))
}

/// Independent re-check: every tangent-algebra relation is sent into the ideal.
pub fn verify_smoothness_witness(w: &SmoothnessWitness, bound: usize) -> Result<()> {
    let rs = complete(w.ta.pres.ngens(), &w.ta.pres.rels, CompletionLimits::new(bound))?;
    let mut red = rs.reducer();
    for r in &w.ta.pres.rels {
        let img = witness_derivation(&w.ta, &w.tau, r);
        if !red.nf(&img).is_zero() {
            return Err(Error::Axiom("witness derivation does not preserve the relations".into()));
        }
    }
    Ok(())
}

/// Separability idempotent `e = sum e_ij b_i ⊗ b_j` with `m(e) = 1` and `ae = ea`.
pub fn separability_idempotent(a: &FdAlgebra) -> Option<Matrix> {
    let n = a.dim();
    let mut columns = vec![];
    for i in 0..n {
        for j in 0..n {
            let (bi, bj) = (a.basis(i), a.basis(j));
            let mut col: SparseVec<(usize, usize, usize, usize)> = SparseVec::new();
            for (k, x) in a.mul(&bi, &bj).into_iter().enumerate() {
                if !x.is_zero() {
                    col.insert((0, 0, 0, k), x);
                }
            }
            for g in 0..n {
                let bg = a.basis(g);
                let left = a.mul(&bg, &bi);
                let right = a.mul(&bj, &bg);
                for p in 0..n {
                    let mut entry = |key, val: Q| {
                        if !val.is_zero() {
                            let e = col.entry(key).or_insert_with(Q::zero);
                            *e += val;
                        }
                    };
                    entry((1, g, p, j), left[p].clone());
                    entry((1, g, i, p), -right[p].clone());
                }
            }
            col.retain(|_, v| !v.is_zero());
            columns.push(col);
        }
    }
    let rhs: SparseVec<_> = a
        .unit()
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(k, x)| ((0, 0, 0, k), x.clone()))
        .collect();
    let z = solve(&columns, &rhs)?;
    Some(Matrix::from_sparse(n, n, &z))
}

pub fn check_separability_idempotent(a: &FdAlgebra, e: &Matrix) -> bool {
    let n = a.dim();
    let mut m = vec![Q::zero(); n];
    for i in 0..n {
        for j in 0..n {
            if e[(i, j)].is_zero() {
                continue;
            }
            for (k, x) in a.mul(&a.basis(i), &a.basis(j)).into_iter().enumerate() {
                m[k] += &e[(i, j)] * x;
            }
        }
    }
    if m != a.unit() {
        return false;
    }
    for g in 0..n {
        let bg = a.basis(g);
        let mut left = Matrix::zeros(n, n);
        let mut right = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if e[(i, j)].is_zero() {
                    continue;
                }
                for (p, x) in a.mul(&bg, &a.basis(i)).into_iter().enumerate() {
                    left[(p, j)] += &e[(i, j)] * x;
                }
                for (p, x) in a.mul(&a.basis(j), &bg).into_iter().enumerate() {
                    right[(i, p)] += &e[(i, j)] * x;
                }
            }
        }
        if left != right {
            return false;
        }
    }
    true
}

/// Decide whether `Ω¹A` is a projective bimodule by searching for a bimodule
/// splitting of `A ⊗ Ā ⊗ A → Ω¹A`, `u ⊗ a ⊗ v ↦ u da v`.
pub fn omega1_projective(a: &FdAlgebra) -> bool {
    let a = a.unit_adapted();
    let n = a.dim();
    if n == 1 {
        return true;
    }
    type Key = (u8, usize, usize, usize, usize, usize);
    let free_index = |p: usize, v: usize, q: usize| (p * (n - 1) + (v - 1)) * n + q;
    let fdim = n * (n - 1) * n;
    // unknown (j, f): coefficient of free basis element f in s_j, j in 1..n
    let mut columns: Vec<SparseVec<Key>> = vec![SparseVec::new(); (n - 1) * fdim];
    let col = |j: usize, f: usize| (j - 1) * fdim + f;
    let add = |c: &mut SparseVec<Key>, k: Key, v: Q| {
        if v.is_zero() {
            return;
        }
        let e = c.entry(k).or_insert_with(Q::zero);
        *e += v;
        if e.is_zero() {
            c.remove(&k);
        }
    };
    for j in 1..n {
        for p in 0..n {
            for v in 1..n {
                for q in 0..n {
                    let f = free_index(p, v, q);
                    let c = &mut columns[col(j, f)];
                    // projection: e_p e_v ⊗ e_q - e_p ⊗ e_v e_q
                    let pv = a.mul(&a.basis(p), &a.basis(v));
                    let vq = a.mul(&a.basis(v), &a.basis(q));
                    for (r, x) in pv.into_iter().enumerate() {
                        add(c, (0, j, r, q, 0, 0), x);
                    }
                    for (r, x) in vq.into_iter().enumerate() {
                        add(c, (0, j, p, r, 0, 0), -x);
                    }
                }
            }
        }
    }
    for i in 1..n {
        for j in 1..n {
            // sum_k c_ijk s_k - b_i s_j - s_i b_j = 0
            for k in 1..n {
                let cij = a.structure(i, j, k).clone();
                if cij.is_zero() {
                    continue;
                }
                for f in 0..fdim {
                    add(&mut columns[col(k, f)], (1, i, j, f, 0, 0), cij.clone());
                }
            }
            for p in 0..n {
                for v in 1..n {
                    for q in 0..n {
                        let f = free_index(p, v, q);
                        for (r, x) in a.mul(&a.basis(i), &a.basis(p)).into_iter().enumerate() {
                            add(&mut columns[col(j, f)], (1, i, j, free_index(r, v, q), 0, 0), -x);
                        }
                        for (r, x) in a.mul(&a.basis(q), &a.basis(j)).into_iter().enumerate() {
                            add(&mut columns[col(i, f)], (1, i, j, free_index(p, v, r), 0, 0), -x);
                        }
                    }
                }
            }
        }
    }
    let mut rhs: SparseVec<Key> = SparseVec::new();
    for j in 1..n {
        // d b_j = b_j ⊗ 1 - 1 ⊗ b_j
        add(&mut rhs, (0, j, j, 0, 0, 0), Q::one());
        add(&mut rhs, (0, j, 0, j, 0, 0), -Q::one());
    }
    solve(&columns, &rhs).is_some()
}

/// Bimodule presentation of `Ω¹A`: generators `Dg` and relations `D(r)`,
/// expressed inside the tangent algebra (tangent degree one).
pub fn omega1_presentation(a: &Presentation) -> Result<(TangentAlgebra, Vec<NcPoly>)> {
    let ta = tangent_algebra(a)?;
    let rels = ta.pres.rels[a.rels.len()..].to_vec();
    Ok((ta, rels))
}

/// For a finite-dimensional presented algebra, compare the dimension of the
/// presented `Ω¹A` with `dim ker(m: A ⊗ A → A)`.
pub fn omega1_dimension_check(a: &Presentation, max_len: usize) -> Result<(usize, usize)> {
    let (fd, words) = FdAlgebra::from_presentation(a, max_len)?;
    let n = fd.dim();
    let rs = complete(a.ngens(), &a.rels, CompletionLimits::new(max_len))?;
    let mut red = rs.reducer();
    let pos: BTreeMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let (ta, rels) = omega1_presentation(a)?;
    let g = a.ngens();
    let mut relation_vectors = vec![];
    for r in &rels {
        for u in 0..n {
            for v in 0..n {
                let mut vec: SparseVec<(usize, usize, usize)> = SparseVec::new();
                for (w, c) in r.terms() {
                    let ls = w.letters();
                    let i = ls.iter().position(|&l| ta.is_d_letter(l)).expect("tangent degree one");
                    let left = red.nf_word(&Word::concat3(words[u].letters(), &ls[..i], &[]));
                    let right = red.nf_word(&Word::concat3(&ls[i + 1..], words[v].letters(), &[]));
                    for (lw, lc) in left.terms() {
                        for (rw, rc) in right.terms() {
                            let key = (pos[lw], ls[i] as usize - g, pos[rw]);
                            let e = vec.entry(key).or_insert_with(Q::zero);
                            *e += c * lc * rc;
                        }
                    }
                }
                vec.retain(|_, x| !x.is_zero());
                relation_vectors.push(vec);
            }
        }
    }
    let presented = g * n * n - rank(relation_vectors);
    Ok((presented, n * n - n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn karoubi_of_field() {
        assert_eq!(karoubi_de_rham(&FdAlgebra::field(), 2), vec![1, 0, 0]);
    }

    #[test]
    fn universal_forms_axioms_small() {
        let uf = UniversalForms::new(&FdAlgebra::truncated_polynomial(2), 3);
        check_universal_forms(&uf).unwrap();
    }

    #[test]
    fn matrix_algebra_is_separable() {
        let a = FdAlgebra::matrix(2);
        let e = separability_idempotent(&a).unwrap();
        assert!(check_separability_idempotent(&a, &e));
        assert!(separability_idempotent(&FdAlgebra::truncated_polynomial(2)).is_none());
    }

    #[test]
    fn projectivity_of_omega1() {
        assert!(omega1_projective(&FdAlgebra::matrix(2)));
        assert!(omega1_projective(&FdAlgebra::upper_triangular(2)));
        assert!(!omega1_projective(&FdAlgebra::truncated_polynomial(2)));
    }
}
