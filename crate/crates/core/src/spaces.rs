//! Noncommutative covers and spaces. A cover `(B, M)` with `M` cyclic on a
//! generator `m` is encoded by the algebra `𝔐 = k<B-generators, m> / (B
//! relations, kernel generators)`; its elements with exactly `n` copies of the
//! separator `m` form `M^{⊗_B n}`. Coproduct, counit, comodules, cover
//! morphisms and the Čech/Hom complexes all act on this encoding.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{Interner, PackedEchelon, PackedVec, SparseVec};
use crate::ncpoly::{format_poly, parse_expr, Generator, Letter, NcPoly, Presentation, Word};
use crate::rewrite::{complete, CompletionLimits, RewriteSystem, Status};
use crate::Q;

/// Text symbol of the separator in cover files and printed output.
pub const SEPARATOR: &str = "|";

/// A cover `(B, M, Δ, ε)` with `M = B ⊗ B / (kernel)` generated by `m`.
#[derive(Clone, Debug)]
pub struct Cover {
    pub base: Presentation,
    /// Generators of the kernel of `B ⊗ B → M`, each a sum of words `a m b`.
    pub kernel: Vec<NcPoly>,
    /// `Δ(m) ∈ M ⊗_B M`.
    pub coproduct: NcPoly,
    /// `ε(m) ∈ B`.
    pub counit: NcPoly,
    /// Largest tensor power of `M` that is represented.
    pub max_tensor: usize,
    system: RewriteSystem,
    base_system: RewriteSystem,
}

/// Outcome of the mechanical axiom checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub status: Status,
    pub checks: Vec<(String, bool)>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

fn extended_symbols(base: &Presentation) -> Vec<String> {
    let mut s = base.symbols();
    s.push(SEPARATOR.to_string());
    s
}

impl Cover {
    pub fn new(
        base: &Presentation,
        kernel: Vec<NcPoly>,
        coproduct: NcPoly,
        counit: NcPoly,
        max_tensor: usize,
        max_len: usize,
    ) -> Result<Self> {
        let sep = base.ngens() as Letter;
        let ext = base.ngens() + 1;
        for k in &kernel {
            k.check_alphabet(ext)?;
            if k.terms().any(|(w, _)| w.count(sep) != 1) {
                return Err(Error::Invalid("kernel generators must be linear in the separator".into()));
            }
        }
        coproduct.check_alphabet(ext)?;
        if coproduct.terms().any(|(w, _)| w.count(sep) != 2) {
            return Err(Error::Invalid("the coproduct must lie in M ⊗ M".into()));
        }
        counit.check_alphabet(base.ngens())?;
        let mut rels = base.rels.clone();
        rels.extend(kernel.iter().cloned());
        let limits = CompletionLimits::new(max_len).with_cap(sep, max_tensor.max(1));
        let system = complete(ext, &rels, limits)?;
        let base_system = complete(base.ngens(), &base.rels, CompletionLimits::new(max_len))?;
        Ok(Cover {
            base: base.clone(),
            kernel,
            coproduct,
            counit,
            max_tensor: max_tensor.max(1),
            system,
            base_system,
        })
    }

    /// Space cover: `Δ(m) = m ⊗ m`, `ε(m) = 1`.
    pub fn space(base: &Presentation, kernel: Vec<NcPoly>, max_tensor: usize, max_len: usize) -> Result<Self> {
        let sep = base.ngens() as Letter;
        let mm = NcPoly::word(Word::from_letters(&[sep, sep]));
        Cover::new(base, kernel, mm, NcPoly::one(), max_tensor, max_len)
    }

    /// The affine cover `(B, B)`: the kernel of multiplication is generated by
    /// `g ⊗ 1 - 1 ⊗ g`.
    pub fn affine(base: &Presentation, max_tensor: usize, max_len: usize) -> Result<Self> {
        let sep = base.ngens() as Letter;
        let kernel = (0..base.ngens() as Letter)
            .map(|g| {
                NcPoly::word(Word::from_letters(&[g, sep])).sub(&NcPoly::word(Word::from_letters(&[sep, g])))
            })
            .collect();
        Cover::space(base, kernel, max_tensor, max_len)
    }

    /// The point `(k, k)`.
    pub fn point(max_tensor: usize) -> Result<Self> {
        Cover::affine(&Presentation::free("k", &[]), max_tensor, 4)
    }

    pub fn sep(&self) -> Letter {
        self.base.ngens() as Letter
    }

    pub fn is_space(&self) -> bool {
        let s = self.sep();
        self.coproduct == NcPoly::word(Word::from_letters(&[s, s])) && self.counit == NcPoly::one()
    }

    pub fn system(&self) -> &RewriteSystem {
        &self.system
    }

    pub fn base_system(&self) -> &RewriteSystem {
        &self.base_system
    }

    pub fn symbols(&self) -> Vec<String> {
        extended_symbols(&self.base)
    }

    pub fn parse(&self, text: &str) -> Result<NcPoly> {
        parse_expr(text, &self.symbols())
    }

    pub fn format(&self, p: &NcPoly) -> String {
        format_poly(p, &self.symbols())
    }

    pub fn nf(&self, p: &NcPoly) -> NcPoly {
        self.system.reducer().nf(p)
    }

    /// The separator as an element of `M`.
    pub fn m(&self) -> NcPoly {
        NcPoly::gen(self.sep())
    }

    /// Replace the `k`-th separator (1-based) of every word by `Δ(m)`.
    pub fn coproduct_at(&self, p: &NcPoly, k: usize) -> NcPoly {
        self.replace_sep(p, k, &self.coproduct)
    }

    /// Replace the `k`-th separator by `ε(m)`.
    pub fn counit_at(&self, p: &NcPoly, k: usize) -> NcPoly {
        self.replace_sep(p, k, &self.counit)
    }

    /// Apply `ε` to every separator, landing in `B`.
    pub fn counit_all(&self, p: &NcPoly) -> NcPoly {
        let mut cur = p.clone();
        while cur.terms().any(|(w, _)| w.count(self.sep()) > 0) {
            cur = self.counit_at(&cur, 1);
        }
        cur
    }

    fn replace_sep(&self, p: &NcPoly, k: usize, with: &NcPoly) -> NcPoly {
        let sep = self.sep();
        let mut out = NcPoly::zero();
        for (w, c) in p.terms() {
            let ls = w.letters();
            let pos = ls
                .iter()
                .enumerate()
                .filter(|(_, &l)| l == sep)
                .nth(k - 1)
                .map(|(i, _)| i)
                .expect("separator index in range");
            out.add_scaled_sandwich(c, &ls[..pos], with, &ls[pos + 1..]);
        }
        out
    }

    /// Mechanical verification of the cover axioms up to the certified bound.
    pub fn check_axioms(&self) -> AxiomReport {
        let mut checks = vec![];
        let m = self.m();
        let d = &self.coproduct;
        let coassoc = self.nf(&self.coproduct_at(d, 1).sub(&self.coproduct_at(d, 2))).is_zero();
        checks.push(("coassociativity".to_string(), coassoc));
        let left = self.nf(&self.counit_at(d, 1).sub(&m)).is_zero();
        let right = self.nf(&self.counit_at(d, 2).sub(&m)).is_zero();
        checks.push(("counit".to_string(), left && right));
        let mut bred = self.base_system.reducer();
        let mut well = true;
        for k in &self.kernel {
            if self.max_tensor >= 2 && !self.nf(&self.coproduct_at(k, 1)).is_zero() {
                well = false;
            }
            if !bred.nf(&self.counit_all(k)).is_zero() {
                well = false;
            }
        }
        checks.push(("coproduct and counit well defined on M".to_string(), well));
        AxiomReport {
            status: self.system.status(),
            checks,
        }
    }

    /// Normal words of `M^{⊗n}` (exactly `n` separators) with at most `max_len`
    /// other letters, optionally of a fixed degree.
    pub fn tensor_basis(&self, n: usize, max_len: usize, degree: Option<i64>) -> Vec<Word> {
        let sep = self.sep();
        let words = if n == 0 {
            self.base_system.normal_words(max_len)
        } else {
            self.system.normal_words_where(max_len + n, |w| {
                let s = w.iter().filter(|&&l| l == sep).count();
                s <= n && w.len() - s <= max_len
            })
        };
        words
            .into_iter()
            .filter(|w| w.count(sep) == n)
            .filter(|w| degree.is_none_or(|g| self.word_degree(w) == g))
            .collect()
    }

    pub fn word_degree(&self, w: &Word) -> i64 {
        let sep = self.sep();
        w.letters()
            .iter()
            .filter(|&&l| l != sep)
            .map(|&l| self.base.gens[l as usize].degree)
            .sum()
    }

    /// Refinement `(B', B' ⊗_B M ⊗_B B')` along an algebra map `B → B'`
    /// (images of the generators of `B` in `B'`).
    pub fn refine(&self, target: &Presentation, images: &[NcPoly], max_len: usize) -> Result<(Cover, CoverMorphism)> {
        if images.len() != self.base.ngens() {
            return Err(Error::Dimension("one image per generator is required".into()));
        }
        let new_sep = target.ngens() as Letter;
        let map = |p: &NcPoly| {
            p.substitute(|l| {
                if l == self.sep() {
                    NcPoly::gen(new_sep)
                } else {
                    images[l as usize].clone()
                }
            })
        };
        let kernel: Vec<NcPoly> = self.kernel.iter().map(map).filter(|k| !k.is_zero()).collect();
        let coproduct = map(&self.coproduct);
        let counit = self.counit.substitute(|l| images[l as usize].clone());
        let refined = Cover::new(target, kernel, coproduct, counit, self.max_tensor, max_len)?;
        let morphism = CoverMorphism {
            images: images.to_vec(),
            sep_image: NcPoly::gen(new_sep),
        };
        Ok((refined, morphism))
    }
}

/// A free comodule of finite rank: `m_E(e_a) = sum_c μ_{ac} ⊗ e_c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comodule {
    pub coaction: Vec<Vec<NcPoly>>,
}

impl Comodule {
    pub fn rank(&self) -> usize {
        self.coaction.len()
    }

    /// The structure sheaf: rank one with coaction `m`.
    pub fn structure_sheaf(c: &Cover) -> Comodule {
        Comodule {
            coaction: vec![vec![c.m()]],
        }
    }

    pub fn rank_one(mu: NcPoly) -> Comodule {
        Comodule {
            coaction: vec![vec![mu]],
        }
    }

    pub fn free(c: &Cover, r: usize) -> Comodule {
        Comodule {
            coaction: (0..r)
                .map(|a| (0..r).map(|b| if a == b { c.m() } else { NcPoly::zero() }).collect())
                .collect(),
        }
    }

    /// Counit and coassociativity of the coaction, plus homogeneity.
    pub fn check(&self, c: &Cover) -> Result<()> {
        let r = self.rank();
        if self.coaction.iter().any(|row| row.len() != r) {
            return Err(Error::Dimension("coaction matrix must be square".into()));
        }
        let sep = c.sep();
        let mut bred = c.base_system().reducer();
        let mut red = c.system().reducer();
        for a in 0..r {
            for b in 0..r {
                let mu = &self.coaction[a][b];
                mu.check_alphabet(c.base.ngens() + 1)?;
                if mu.terms().any(|(w, _)| w.count(sep) != 1) {
                    return Err(Error::Invalid("coaction entries must lie in M".into()));
                }
                let e = bred.nf(&c.counit_at(mu, 1));
                let want = if a == b { NcPoly::one() } else { NcPoly::zero() };
                if e != bred.nf(&want) {
                    return Err(Error::Axiom(format!("counit law fails at entry ({},{})", a + 1, b + 1)));
                }
                if c.max_tensor >= 2 {
                    let mut rhs = NcPoly::zero();
                    for k in 0..r {
                        rhs = rhs.add(&self.coaction[a][k].mul(&self.coaction[k][b]));
                    }
                    if !red.nf(&c.coproduct_at(mu, 1).sub(&rhs)).is_zero() {
                        return Err(Error::Axiom(format!(
                            "coassociativity fails at entry ({},{})",
                            a + 1,
                            b + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn homogeneous_degree_zero(&self, c: &Cover) -> bool {
        let sep = c.sep();
        let weight = |l: Letter| if l == sep { 0 } else { c.base.gens[l as usize].degree };
        self.coaction
            .iter()
            .flatten()
            .all(|p| matches!(p.homogeneous_degree(weight), Some(None) | Some(Some(0))))
    }
}

/// Morphism of covers `C1 → C2`, contravariant on algebras: the images in
/// `B1` of the generators of `B2`, and the image of `m2` in `M1`.
#[derive(Clone, Debug)]
pub struct CoverMorphism {
    pub images: Vec<NcPoly>,
    pub sep_image: NcPoly,
}

impl CoverMorphism {
    /// Map an element of the target's `𝔐` into the source's.
    pub fn apply(&self, source: &Cover, target: &Cover, p: &NcPoly) -> NcPoly {
        let s2 = target.sep();
        let _ = source;
        p.substitute(|l| {
            if l == s2 {
                self.sep_image.clone()
            } else {
                self.images[l as usize].clone()
            }
        })
    }

    pub fn check(&self, source: &Cover, target: &Cover) -> Result<AxiomReport> {
        if self.images.len() != target.base.ngens() {
            return Err(Error::Dimension("one image per generator of the target is required".into()));
        }
        let mut bred = source.base_system().reducer();
        let mut checks = vec![];
        let alg = target
            .base
            .rels
            .iter()
            .all(|r| bred.nf(&r.substitute(|l| self.images[l as usize].clone())).is_zero());
        checks.push(("algebra map".to_string(), alg));
        let bimod = target.kernel.iter().all(|k| source.nf(&self.apply(source, target, k)).is_zero());
        checks.push(("bimodule map on M".to_string(), bimod));
        let lhs = source.coproduct_at(&self.sep_image, 1);
        let rhs = self.apply(source, target, &target.coproduct);
        checks.push(("compatible with coproduct".to_string(), source.nf(&lhs.sub(&rhs)).is_zero()));
        let lhs = source.counit_all(&self.sep_image);
        let rhs = target.counit.substitute(|l| self.images[l as usize].clone());
        checks.push(("compatible with counit".to_string(), bred.nf(&lhs.sub(&rhs)).is_zero()));
        Ok(AxiomReport {
            status: source.system().status(),
            checks,
        })
    }

    /// Pullback of a comodule along the morphism.
    pub fn pullback(&self, source: &Cover, target: &Cover, e: &Comodule) -> Comodule {
        Comodule {
            coaction: e
                .coaction
                .iter()
                .map(|row| row.iter().map(|p| source.nf(&self.apply(source, target, p))).collect())
                .collect(),
        }
    }
}

/// Two morphisms of space covers `C → C'` are equivalent when every kernel
/// generator `sum a_α m b_α` of `C'` satisfies `sum f(a_α) g(b_α) = 0` and
/// `sum g(a_α) f(b_α) = 0` in the base of `C`.
pub fn morphisms_equivalent(f: &CoverMorphism, g: &CoverMorphism, source: &Cover, target: &Cover) -> bool {
    let sep = target.sep();
    let mut red = source.base_system().reducer();
    let side = |x: &CoverMorphism, y: &CoverMorphism, red: &mut crate::rewrite::Reducer| {
        target.kernel.iter().all(|k| {
            let mut acc = NcPoly::zero();
            for (w, c) in k.terms() {
                let ls = w.letters();
                let i = ls.iter().position(|&l| l == sep).expect("linear in the separator");
                let a = NcPoly::word(Word::from_letters(&ls[..i])).substitute(|l| x.images[l as usize].clone());
                let b = NcPoly::word(Word::from_letters(&ls[i + 1..])).substitute(|l| y.images[l as usize].clone());
                acc.add_scaled(c, &a.mul(&b));
            }
            red.nf(&acc).is_zero()
        })
    };
    side(f, g, &mut red) && side(g, f, &mut red)
}

/// The algebra of `S^n`: copies `i_1(B), ..., i_n(B)` subject to
/// `sum i_k(a_α) i_l(b_α) = 0` for every kernel generator and `k ≠ l`.
pub fn product_space_algebra(c: &Cover, n: usize) -> Result<Presentation> {
    let g = c.base.ngens();
    let sep = c.sep();
    let mut gens = vec![];
    for k in 1..=n {
        for gen in &c.base.gens {
            gens.push(Generator {
                symbol: format!("{}_{}", gen.symbol, k),
                ..gen.clone()
            });
        }
    }
    let shift = |p: &NcPoly, k: usize| p.relabel(|l| l + (k * g) as Letter);
    let mut rels = vec![];
    for k in 0..n {
        rels.extend(c.base.rels.iter().map(|r| shift(r, k)));
    }
    for ker in &c.kernel {
        for k in 0..n {
            for l in (0..n).filter(|&l| l != k) {
                let mut acc = NcPoly::zero();
                for (w, coef) in ker.terms() {
                    let ls = w.letters();
                    let i = ls.iter().position(|&x| x == sep).expect("linear in the separator");
                    let a = shift(&NcPoly::word(Word::from_letters(&ls[..i])), k);
                    let b = shift(&NcPoly::word(Word::from_letters(&ls[i + 1..])), l);
                    acc.add_scaled(coef, &a.mul(&b));
                }
                if !acc.is_zero() {
                    rels.push(acc);
                }
            }
        }
    }
    Presentation::new(format!("{}^{}", c.base.name, n), gens, rels)
}

#[derive(Clone, Debug)]
pub struct CechParams {
    /// Compute `H^0..H^max_degree`.
    pub max_degree: usize,
    pub cutoffs: Vec<usize>,
    /// Inclusive degree window; `None` for ungraded covers.
    pub window: Option<(i64, i64)>,
    /// Extra length allowed for coboundary preimages.
    pub slack: usize,
}

impl Default for CechParams {
    fn default() -> Self {
        CechParams {
            max_degree: 1,
            cutoffs: vec![4, 6, 8],
            window: None,
            slack: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutoffResult {
    pub cutoff: usize,
    /// Dimensions `H^0..H^D` for each degree in the window (key `None` when ungraded).
    pub by_degree: BTreeMap<Option<i64>, Vec<usize>>,
    pub totals: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechReport {
    pub per_cutoff: Vec<CutoffResult>,
    /// `Some(dim)` when the last two cutoffs agree.
    pub stable: Vec<Option<usize>>,
}

impl CechReport {
    pub fn is_stable(&self) -> bool {
        self.stable.iter().all(Option::is_some)
    }

    pub fn value(&self, i: usize) -> Option<usize> {
        self.stable.get(i).copied().flatten()
    }

    /// Stable per-degree values (from the last cutoff), when stable.
    pub fn degree_values(&self, i: usize) -> BTreeMap<Option<i64>, Option<usize>> {
        let n = self.per_cutoff.len();
        let last = &self.per_cutoff[n - 1];
        last.by_degree
            .iter()
            .map(|(g, v)| {
                let prev = if n >= 2 { self.per_cutoff[n - 2].by_degree.get(g).map(|p| p[i]) } else { None };
                (*g, (prev == Some(v[i])).then_some(v[i]))
            })
            .collect()
    }
}

type CochainKey = (u16, u16, Word);

struct HomComplex<'a> {
    cover: &'a Cover,
    e: &'a Comodule,
    f: &'a Comodule,
}

impl HomComplex<'_> {
    fn basis(&self, n: usize, len: usize, degree: Option<i64>) -> Vec<CochainKey> {
        let words = self.cover.tensor_basis(n, len, degree);
        let mut out = vec![];
        for a in 0..self.e.rank() as u16 {
            for b in 0..self.f.rank() as u16 {
                out.extend(words.iter().map(|w| (a, b, w.clone())));
            }
        }
        out
    }

    fn delta(&self, n: usize, key: &CochainKey, red: &mut crate::rewrite::Reducer) -> SparseVec<CochainKey> {
        let (a, b, w) = key;
        let wp = NcPoly::word(w.clone());
        let mut out: SparseVec<CochainKey> = SparseVec::new();
        let mut add = |a: u16, b: u16, p: &NcPoly, sign: &Q| {
            for (v, c) in red.nf(p).terms() {
                let k = (a, b, v.clone());
                let e = out.entry(k.clone()).or_insert_with(Q::zero);
                *e += sign * c;
                if e.is_zero() {
                    out.remove(&k);
                }
            }
        };
        let one = Q::one();
        for a2 in 0..self.e.rank() {
            let mu = &self.e.coaction[a2][*a as usize];
            if !mu.is_zero() {
                add(a2 as u16, *b, &mu.mul(&wp), &one);
            }
        }
        for k in 1..=n {
            let sign = if k % 2 == 0 { one.clone() } else { -one.clone() };
            add(*a, *b, &self.cover.coproduct_at(&wp, k), &sign);
        }
        let sign = if (n + 1).is_multiple_of(2) { one.clone() } else { -one.clone() };
        for b2 in 0..self.f.rank() {
            let mu = &self.f.coaction[*b as usize][b2];
            if !mu.is_zero() {
                add(*a, b2 as u16, &wp.mul(mu), &sign);
            }
        }
        out
    }

    fn nonsep_len(&self, w: &Word) -> usize {
        w.len() - w.count(self.cover.sep())
    }

    /// `dim H^n` in one degree at one cutoff. Coboundaries landing inside the
    /// cutoff are counted with a single elimination in which every coordinate
    /// beyond the cutoff outranks every coordinate within it: the pivots that
    /// stay within the cutoff span exactly that intersection.
    fn cohomology(&self, n: usize, len: usize, slack: usize, degree: Option<i64>) -> usize {
        const FAR: u32 = 1 << 31;
        let mut red = self.cover.system().reducer();
        let mut ids = Interner::new();
        let mut pack = |v: SparseVec<CochainKey>| -> PackedVec {
            let mut out: PackedVec = v
                .into_iter()
                .map(|(k, c)| {
                    let far = if self.nonsep_len(&k.2) > len { FAR } else { 0 };
                    (ids.id(&k) | far, c)
                })
                .collect();
            out.sort_unstable_by_key(|e| e.0);
            out
        };
        let cn = self.basis(n, len, degree);
        let mut z = PackedEchelon::new();
        for k in &cn {
            z.insert(pack(self.delta(n, k, &mut red)));
        }
        let cocycles = cn.len() - z.rank();
        if n == 0 {
            return cocycles;
        }
        let mut image = PackedEchelon::new();
        for k in &self.basis(n - 1, len + slack, degree) {
            image.insert(pack(self.delta(n - 1, k, &mut red)));
        }
        cocycles - image.pivots_below(FAR)
    }
}

/// Cohomology of the Hom complex between free comodules over a cover,
/// `C^n = Mat(M^{⊗n})`, `δω = μ_E ω + sum_k (-1)^k Δ_k ω + (-1)^{n+1} ω μ_F`,
/// computed on length-truncations with a stabilization check.
pub fn hom_cohomology(c: &Cover, e: &Comodule, f: &Comodule, params: &CechParams) -> Result<CechReport> {
    if params.max_degree + 1 > c.max_tensor {
        return Err(Error::Invalid(format!(
            "H^{} needs tensor powers up to {}, but the cover only represents {}",
            params.max_degree,
            params.max_degree + 1,
            c.max_tensor
        )));
    }
    if params.cutoffs.is_empty() {
        return Err(Error::Invalid("at least one cutoff is required".into()));
    }
    e.check(c)?;
    f.check(c)?;
    let graded = c.base.grading() == crate::ncpoly::Grading::Homogeneous
        && e.homogeneous_degree_zero(c)
        && f.homogeneous_degree_zero(c);
    let degrees: Vec<Option<i64>> = match (graded, params.window) {
        (true, Some((lo, hi))) => (lo..=hi).map(Some).collect(),
        _ => vec![None],
    };
    let cx = HomComplex { cover: c, e, f };
    let mut per_cutoff = vec![];
    for &len in &params.cutoffs {
        let needed = len + params.slack + params.max_degree + 1;
        if !c.system().status().covers(needed) {
            return Err(Error::InsufficientBound {
                have: c.system().status().bound().unwrap_or(0),
                need: needed,
            });
        }
        let jobs: Vec<(Option<i64>, usize)> = degrees
            .iter()
            .flat_map(|&g| (0..=params.max_degree).map(move |n| (g, n)))
            .collect();
        let values: Vec<usize> = jobs
            .par_iter()
            .map(|&(g, n)| cx.cohomology(n, len, params.slack, g))
            .collect();
        let mut by_degree = BTreeMap::new();
        for ((g, _), v) in jobs.iter().zip(values) {
            by_degree.entry(*g).or_insert_with(Vec::new).push(v);
        }
        let totals = (0..=params.max_degree)
            .map(|i| by_degree.values().map(|v: &Vec<usize>| v[i]).sum())
            .collect();
        per_cutoff.push(CutoffResult {
            cutoff: len,
            by_degree,
            totals,
        });
    }
    let k = per_cutoff.len();
    let stable = (0..=params.max_degree)
        .map(|i| {
            let last = &per_cutoff[k - 1];
            if k == 1 {
                return Some(last.totals[i]);
            }
            let prev = &per_cutoff[k - 2];
            (last.totals[i] == prev.totals[i]
                && last.by_degree.iter().all(|(g, v)| prev.by_degree.get(g).map(|p| p[i]) == Some(v[i])))
            .then_some(last.totals[i])
        })
        .collect();
    Ok(CechReport { per_cutoff, stable })
}

/// Čech cohomology `H^i(S, E)` = cohomology of `Hom(O, E)`.
pub fn cech_cohomology(c: &Cover, e: &Comodule, params: &CechParams) -> Result<CechReport> {
    hom_cohomology(c, &Comodule::structure_sheaf(c), e, params)
}

/// Commutative projective line glued from two affine charts `k[t]` and
/// `k[s]`, with `B = k[t] × k[s]` on idempotents `e0, e1`.
pub fn projective_line(max_tensor: usize) -> Result<Cover> {
    let (base, _) = Presentation::parse(
        "algebra P1charts\ngen e0 e1 t s\n\
         rel e0*e0 - e0\nrel e1*e1 - e1\nrel e0 + e1 - 1\nrel e0*e1\nrel e1*e0\n\
         rel e0*t - t\nrel t*e0 - t\nrel e1*s - s\nrel s*e1 - s\n",
    )?;
    let syms = extended_symbols(&base);
    let kernel = ["t*|*e0 - e0*|*t", "s*|*e1 - e1*|*s", "t*|*s - e0*|*e1", "s*|*t - e1*|*e0"]
        .iter()
        .map(|k| parse_expr(k, &syms))
        .collect::<Result<Vec<_>>>()?;
    Cover::space(&base, kernel, max_tensor, 9 + max_tensor)
}

/// Line bundle `O(n)` on [`projective_line`], with transition `s^n` on the overlap.
pub fn projective_line_twist(c: &Cover, n: i64) -> Result<Comodule> {
    let g = |s: &str| c.base.index_of(s).map(NcPoly::gen).ok_or_else(|| Error::UnknownSymbol { symbol: s.into(), column: None });
    let (e0, e1, t, s, m) = (g("e0")?, g("e1")?, g("t")?, g("s")?, c.m());
    let k = n.unsigned_abs() as u32;
    let (c01, c10) = if n >= 0 {
        (e0.mul(&m).mul(&e1).mul(&s.pow(k)), e1.mul(&m).mul(&e0).mul(&t.pow(k)))
    } else {
        (e0.mul(&t.pow(k)).mul(&m).mul(&e1), e1.mul(&s.pow(k)).mul(&m).mul(&e0))
    };
    let mu = e0.mul(&m).mul(&e0).add(&e1.mul(&m).mul(&e1)).add(&c01).add(&c10);
    Ok(Comodule::rank_one(c.nf(&mu)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::examples;

    #[test]
    fn point_cover_axioms_and_cohomology() {
        let c = Cover::point(2).unwrap();
        assert!(c.check_axioms().passed());
        let r = cech_cohomology(&c, &Comodule::structure_sheaf(&c), &CechParams { cutoffs: vec![2, 3], ..Default::default() }).unwrap();
        assert_eq!(r.stable, vec![Some(1), Some(0)]);
    }

    #[test]
    fn affine_cover_has_no_higher_cohomology() {
        let b = examples::toeplitz();
        let c = Cover::affine(&b, 2, 8).unwrap();
        assert!(c.check_axioms().passed());
        let r = cech_cohomology(&c, &Comodule::structure_sheaf(&c), &CechParams { cutoffs: vec![2, 3], ..Default::default() }).unwrap();
        let words = c.tensor_basis(0, 3, None).len();
        assert_eq!(r.per_cutoff[1].totals, vec![words, 0]);
    }

    #[test]
    fn projective_line_cohomology() {
        let c = projective_line(2).unwrap();
        assert!(c.check_axioms().passed());
        let params = CechParams { cutoffs: vec![2, 3, 4], ..Default::default() };
        for (n, h0, h1) in [(-2, 0, 1), (-1, 0, 0), (0, 1, 0), (1, 2, 0), (2, 3, 0)] {
            let e = projective_line_twist(&c, n).unwrap();
            let r = cech_cohomology(&c, &e, &params).unwrap();
            assert_eq!(r.stable, vec![Some(h0), Some(h1)], "O({n})");
        }
    }
}
