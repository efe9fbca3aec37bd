//! Constructions on presented algebras: path algebras of quivers, direct sums,
//! free products, localizations, tangent algebras and the commutator filtration.

use std::collections::BTreeSet;

use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::ncpoly::{is_identifier, Generator, Letter, NcPoly, Presentation, Word};
use crate::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub name: String,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    /// `d` parallel arrows from vertex 0 to vertex 1.
    pub fn kronecker(d: usize) -> Quiver {
        Quiver {
            name: format!("Q{d}"),
            vertices: vec!["0".into(), "1".into()],
            arrows: (1..=d)
                .map(|i| Arrow {
                    name: format!("a{i}"),
                    source: 0,
                    target: 1,
                })
                .collect(),
        }
    }

    /// Linearly oriented chain `0 -> 1 -> ... -> n-1`.
    pub fn chain(n: usize) -> Quiver {
        Quiver {
            name: format!("A{n}"),
            vertices: (0..n).map(|i| i.to_string()).collect(),
            arrows: (1..n)
                .map(|i| Arrow {
                    name: format!("a{i}"),
                    source: i - 1,
                    target: i,
                })
                .collect(),
        }
    }

    /// One vertex with `d` loops.
    pub fn loops(d: usize) -> Quiver {
        Quiver {
            name: format!("L{d}"),
            vertices: vec!["0".into()],
            arrows: (1..=d)
                .map(|i| Arrow {
                    name: format!("x{i}"),
                    source: 0,
                    target: 0,
                })
                .collect(),
        }
    }

    pub fn vertex_symbol(&self, v: usize) -> String {
        format!("e{}", self.vertices[v])
    }

    /// Format: `quiver NAME`, `vertex v ...`, `arrow a v w` (or `arrow a: v -> w`).
    pub fn parse(text: &str) -> Result<Quiver> {
        let mut q = Quiver {
            name: "Q".into(),
            vertices: vec![],
            arrows: vec![],
        };
        let mut pending = vec![];
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            match kw {
                "quiver" => q.name = rest.trim().into(),
                "vertex" => q.vertices.extend(rest.split_whitespace().map(String::from)),
                "arrow" => {
                    let bad = || Error::Parse(format!("line {}: expected `arrow NAME SOURCE TARGET`", n + 1));
                    let arrow = match rest.split_once(':') {
                        Some((name, ends)) => {
                            let (s, t) = ends.split_once("->").ok_or_else(bad)?;
                            (name.trim(), s.trim(), t.trim())
                        }
                        None => match rest.split_whitespace().collect::<Vec<_>>()[..] {
                            [name, s, t] => (name, s, t),
                            _ => return Err(bad()),
                        },
                    };
                    pending.push((arrow.0.to_string(), arrow.1.to_string(), arrow.2.to_string()));
                }
                other => return Err(Error::Parse(format!("line {}: unknown keyword `{other}`", n + 1))),
            }
        }
        let find = |v: &str| {
            q.vertices
                .iter()
                .position(|x| x == v)
                .ok_or_else(|| Error::UnknownSymbol { symbol: v.to_string(), column: None })
        };
        let mut arrows = vec![];
        for (name, s, t) in pending {
            arrows.push(Arrow {
                name,
                source: find(&s)?,
                target: find(&t)?,
            });
        }
        q.arrows = arrows;
        q.validate()?;
        Ok(q)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("quiver {}\nvertex {}\n", self.name, self.vertices.join(" "));
        for a in &self.arrows {
            s.push_str(&format!(
                "arrow {} {} {}\n",
                a.name, self.vertices[a.source], self.vertices[a.target]
            ));
        }
        s
    }

    fn validate(&self) -> Result<()> {
        let mut names = BTreeSet::new();
        for v in 0..self.vertices.len() {
            let s = self.vertex_symbol(v);
            if !is_identifier(&s) || !names.insert(s.clone()) {
                return Err(Error::Parse(format!("bad or duplicate vertex `{}`", self.vertices[v])));
            }
        }
        for a in &self.arrows {
            if !is_identifier(&a.name) || !names.insert(a.name.clone()) {
                return Err(Error::Parse(format!("bad or duplicate arrow `{}`", a.name)));
            }
        }
        Ok(())
    }

    /// Paths of length at most `max_len` as arrow sequences, written in
    /// composition order (the last arrow traversed first). Trivial paths are
    /// `(v, [])`.
    pub fn paths(&self, max_len: usize) -> Vec<(usize, Vec<usize>)> {
        let mut out: Vec<(usize, Vec<usize>)> = (0..self.vertices.len()).map(|v| (v, vec![])).collect();
        let mut layer: Vec<(usize, Vec<usize>)> = out.clone();
        for _ in 0..max_len {
            let mut next = vec![];
            for (start, p) in &layer {
                let end = p.first().map_or(*start, |&a| self.arrows[a].target);
                for (ai, a) in self.arrows.iter().enumerate() {
                    if a.source == end {
                        let mut q = vec![ai];
                        q.extend_from_slice(p);
                        next.push((*start, q));
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

/// Path algebra `k Q` with idempotents `e_v` and arrows, composed like
/// functions: `e_{t(a)} a = a = a e_{s(a)}`.
pub fn path_algebra(q: &Quiver) -> Result<Presentation> {
    q.validate()?;
    let nv = q.vertices.len();
    let mut gens: Vec<Generator> = (0..nv).map(|v| Generator::new(q.vertex_symbol(v))).collect();
    gens.extend(q.arrows.iter().map(|a| Generator::new(a.name.clone())));
    let e = |v: usize| NcPoly::gen(v as Letter);
    let arrow = |i: usize| NcPoly::gen((nv + i) as Letter);
    let mut rels = vec![];
    for v in 0..nv {
        for w in 0..nv {
            let mut r = e(v).mul(&e(w));
            if v == w {
                r = r.sub(&e(v));
            }
            rels.push(r);
        }
    }
    if nv > 0 {
        let mut s = NcPoly::zero();
        for v in 0..nv {
            s = s.add(&e(v));
        }
        rels.push(s.sub(&NcPoly::one()));
    }
    for (i, a) in q.arrows.iter().enumerate() {
        rels.push(e(a.target).mul(&arrow(i)).sub(&arrow(i)));
        rels.push(arrow(i).mul(&e(a.source)).sub(&arrow(i)));
    }
    Presentation::new(format!("k{}", q.name), gens, rels)
}

/// Upper-triangular `n x n` matrices, as the path algebra of a chain.
pub fn upper_triangular(n: usize) -> Result<Presentation> {
    let mut p = path_algebra(&Quiver::chain(n))?;
    p.name = format!("UT{n}");
    Ok(p)
}

fn rename_apart(parts: &[Presentation], reserved: &BTreeSet<String>) -> Vec<Vec<String>> {
    let mut taken: BTreeSet<String> = reserved.clone();
    let mut out = vec![];
    for (k, p) in parts.iter().enumerate() {
        let mut names = vec![];
        for g in &p.gens {
            let mut s = g.symbol.clone();
            if taken.contains(&s) {
                s = format!("{}_{}", g.symbol, k + 1);
                while taken.contains(&s) {
                    s.push('\'');
                }
            }
            taken.insert(s.clone());
            names.push(s);
        }
        out.push(names);
    }
    out
}

fn embed(parts: &[Presentation], names: &[Vec<String>], first_letter: usize) -> (Vec<Generator>, Vec<usize>) {
    let mut gens = vec![];
    let mut offsets = vec![];
    let mut off = first_letter;
    for (p, ns) in parts.iter().zip(names) {
        offsets.push(off);
        for (g, n) in p.gens.iter().zip(ns) {
            gens.push(Generator {
                symbol: n.clone(),
                ..g.clone()
            });
        }
        off += p.ngens();
    }
    (gens, offsets)
}

/// `A_1 ⊕ ... ⊕ A_n` with central idempotents `e1..en` summing to one.
pub fn direct_sum(parts: &[Presentation]) -> Result<Presentation> {
    let n = parts.len();
    if n == 0 {
        return Presentation::new("0", vec![], vec![NcPoly::one()]);
    }
    let idem: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
    let names = rename_apart(parts, &idem.iter().cloned().collect());
    let (mut body, offsets) = embed(parts, &names, n);
    let mut gens: Vec<Generator> = idem.iter().map(|s| Generator::new(s.clone())).collect();
    gens.append(&mut body);
    let e = |i: usize| NcPoly::gen(i as Letter);
    let mut rels = vec![];
    let mut sum = NcPoly::zero();
    for i in 0..n {
        sum = sum.add(&e(i));
        for j in 0..n {
            let mut r = e(i).mul(&e(j));
            if i == j {
                r = r.sub(&e(i));
            }
            rels.push(r);
        }
    }
    rels.push(sum.sub(&NcPoly::one()));
    for (k, p) in parts.iter().enumerate() {
        let off = offsets[k];
        for g in 0..p.ngens() {
            let a = NcPoly::gen((off + g) as Letter);
            for j in (0..n).filter(|&j| j != k) {
                rels.push(e(j).mul(&a));
                rels.push(a.mul(&e(j)));
            }
        }
        for r in &p.rels {
            rels.push(e(k).mul(&r.relabel(|l| l + off as Letter)));
        }
    }
    let name = parts.iter().map(|p| p.name.clone()).collect::<Vec<_>>().join("+");
    Presentation::new(name, gens, rels)
}

/// Coproduct of algebras: union of generators and relations.
pub fn free_product(parts: &[Presentation]) -> Result<Presentation> {
    let names = rename_apart(parts, &BTreeSet::new());
    let (gens, offsets) = embed(parts, &names, 0);
    let mut rels = vec![];
    for (p, off) in parts.iter().zip(offsets) {
        rels.extend(p.rels.iter().map(|r| r.relabel(|l| l + off as Letter)));
    }
    let name = parts.iter().map(|p| p.name.clone()).collect::<Vec<_>>().join("*");
    Presentation::new(name, gens, rels)
}

fn fresh(base: &str, taken: &mut BTreeSet<String>) -> String {
    let mut s = base.to_string();
    let mut k = 1;
    while taken.contains(&s) {
        s = format!("{base}{k}");
        k += 1;
    }
    taken.insert(s.clone());
    s
}

/// Universal localization inverting each element and each square matrix.
/// Every inverted `n x n` matrix adds `n^2` generators and `2 n^2` relations.
pub fn localize(a: &Presentation, elements: &[NcPoly], matrices: &[Vec<Vec<NcPoly>>]) -> Result<Presentation> {
    let mut gens = a.gens.clone();
    let mut rels = a.rels.clone();
    let mut taken: BTreeSet<String> = a.symbols().into_iter().collect();
    let mut all: Vec<Vec<Vec<NcPoly>>> = elements.iter().map(|e| vec![vec![e.clone()]]).collect();
    all.extend(matrices.iter().cloned());
    for (k, m) in all.iter().enumerate() {
        let n = m.len();
        if n == 0 || m.iter().any(|row| row.len() != n) {
            return Err(Error::Dimension(format!("inverted matrix {} is not square", k + 1)));
        }
        for row in m {
            for x in row {
                x.check_alphabet(a.ngens())?;
            }
        }
        let start = gens.len();
        for i in 0..n {
            for j in 0..n {
                let base = if n == 1 {
                    format!("inv{}", k + 1)
                } else {
                    format!("inv{}_{}{}", k + 1, i + 1, j + 1)
                };
                gens.push(Generator::new(fresh(&base, &mut taken)));
            }
        }
        let u = |i: usize, j: usize| NcPoly::gen((start + i * n + j) as Letter);
        for i in 0..n {
            for j in 0..n {
                let mut left = NcPoly::zero();
                let mut right = NcPoly::zero();
                for l in 0..n {
                    left = left.add(&m[i][l].mul(&u(l, j)));
                    right = right.add(&u(i, l).mul(&m[l][j]));
                }
                if i == j {
                    left = left.sub(&NcPoly::one());
                    right = right.sub(&NcPoly::one());
                }
                rels.push(left);
                rels.push(right);
            }
        }
    }
    Presentation::new(format!("{}_loc", a.name), gens, rels)
}

/// The tangent algebra `T A`: generators `g` and `Dg`, relations `r` and `D(r)`.
/// Letters `0..n` are the original generators and `n + i` is `D` of letter `i`.
#[derive(Clone, Debug)]
pub struct TangentAlgebra {
    pub base: Presentation,
    pub pres: Presentation,
}

impl TangentAlgebra {
    pub fn n(&self) -> usize {
        self.base.ngens()
    }

    pub fn d_letter(&self, l: Letter) -> Letter {
        l + self.n() as Letter
    }

    pub fn is_d_letter(&self, l: Letter) -> bool {
        (l as usize) >= self.n()
    }

    /// Number of `D`-letters in a word (the tangent grading).
    pub fn ta_degree(&self, w: &Word) -> usize {
        w.letters().iter().filter(|&&l| self.is_d_letter(l)).count()
    }

    /// The universal derivation on the base algebra.
    pub fn d(&self, p: &NcPoly) -> NcPoly {
        let n = self.n() as Letter;
        derivation(p, |l| if l < n { NcPoly::gen(l + n) } else { NcPoly::zero() })
    }
}

/// Apply the derivation determined by the images of the letters (Leibniz rule).
pub fn derivation(p: &NcPoly, image: impl Fn(Letter) -> NcPoly) -> NcPoly {
    let mut out = NcPoly::zero();
    for (w, c) in p.terms() {
        let ls = w.letters();
        for i in 0..ls.len() {
            let im = image(ls[i]);
            if im.is_zero() {
                continue;
            }
            out.add_scaled_sandwich(c, &ls[..i], &im, &ls[i + 1..]);
        }
    }
    out
}

pub fn tangent_algebra(a: &Presentation) -> Result<TangentAlgebra> {
    let mut taken: BTreeSet<String> = a.symbols().into_iter().collect();
    let mut gens = a.gens.clone();
    for g in &a.gens {
        let mut s = format!("D{}", g.symbol);
        while taken.contains(&s) {
            s.push('\'');
        }
        taken.insert(s.clone());
        gens.push(Generator {
            symbol: s,
            degree: g.degree,
            ta_degree: g.ta_degree + 1,
        });
    }
    let base = a.clone();
    let mut ta = TangentAlgebra {
        base,
        pres: Presentation {
            name: format!("T{}", a.name),
            gens,
            rels: vec![],
        },
    };
    let mut rels = a.rels.clone();
    for r in &a.rels {
        rels.push(ta.d(r));
    }
    ta.pres.rels = rels;
    ta.pres.validate()?;
    Ok(ta)
}

fn words_of_len(d: usize, len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..len {
        let mut next = vec![];
        for w in &out {
            for l in 0..d as Letter {
                let mut v = w.letters().to_vec();
                v.push(l);
                next.push(Word::from_letters(&v));
            }
        }
        out = next;
    }
    out
}

fn poly_vec(p: &NcPoly) -> SparseVec<Word> {
    p.terms().map(|(w, c)| (w.clone(), c.clone())).collect()
}

fn echelon_basis(vs: impl IntoIterator<Item = NcPoly>) -> Vec<NcPoly> {
    let mut e = Echelon::new();
    let mut out = vec![];
    for v in vs {
        if let crate::linalg::Insert::Independent = e.insert(poly_vec(&v)) {
            out.push(v);
        }
    }
    out
}

/// Iterated commutators `[w0,[w1,...,[w_{m-1},w_m]]]` of depth `m` and total
/// length `len`, spanned over nonempty words.
fn commutator_space(d: usize, depth: usize, len: usize) -> Vec<NcPoly> {
    if depth == 0 {
        return words_of_len(d, len).into_iter().map(NcPoly::word).collect();
    }
    let mut out = vec![];
    for k in 1..len {
        let inner = commutator_space(d, depth - 1, len - k);
        if inner.is_empty() {
            continue;
        }
        for w in words_of_len(d, k) {
            let a = NcPoly::word(w);
            for b in &inner {
                out.push(a.mul(b).sub(&b.mul(&a)));
            }
        }
    }
    echelon_basis(out)
}

fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationDim {
    pub dim: usize,
    /// Set when `len` is too short for the filtration step to be visible.
    pub warning: Option<String>,
}

/// Dimension of the length-`len` truncation of `A / I_n` for the free algebra
/// on `d` generators, where `I_n` is spanned by products
/// `A·A^{[m_1]}·A···A^{[m_l]}·A` with `m_1 + ... + m_l = n` and `A^{[m]}`
/// the span of depth-`m` iterated commutators.
pub fn commutator_filtration_dim(d: usize, n: usize, len: usize) -> Result<FiltrationDim> {
    if n == 0 {
        return Err(Error::Invalid("filtration index must be at least 1".into()));
    }
    let total: usize = (0..=len).map(|l| d.pow(l as u32)).sum();
    let warning = (len < n + 1).then(|| {
        format!("length {len} is below the shortest element of I_{n} (length {}); the truncation is the whole free algebra", n + 1)
    });
    let mut ideal_dim = 0;
    for l in 0..=len {
        let mut span: Vec<NcPoly> = vec![];
        for comp in compositions(n) {
            // running[k] = basis of the length-k part of A·C_{m1}·A···C_{mj}·A
            let mut running: Vec<Vec<NcPoly>> = vec![vec![]; l + 1];
            for k in 0..=l {
                running[k] = words_of_len(d, k).into_iter().map(NcPoly::word).collect();
            }
            for &m in &comp {
                let mut next: Vec<Vec<NcPoly>> = vec![vec![]; l + 1];
                for total_len in 0..=l {
                    let mut items = vec![];
                    for a in 0..=total_len {
                        for c in (m + 1)..=(total_len - a) {
                            let b = total_len - a - c;
                            let cs = commutator_space(d, m, c);
                            if cs.is_empty() {
                                continue;
                            }
                            for s in &running[a] {
                                for cc in &cs {
                                    let sc = s.mul(cc);
                                    for w in words_of_len(d, b) {
                                        items.push(sc.mul(&NcPoly::word(w)));
                                    }
                                }
                            }
                        }
                    }
                    next[total_len] = echelon_basis(items);
                }
                running = next;
            }
            span.extend(running[l].iter().cloned());
        }
        ideal_dim += echelon_basis(span).len();
    }
    Ok(FiltrationDim {
        dim: total - ideal_dim,
        warning,
    })
}

/// Standard small examples.
pub mod examples {
    use super::*;

    pub fn free(d: usize) -> Presentation {
        let syms: Vec<String> = (1..=d).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = syms.iter().map(String::as_str).collect();
        Presentation::free(format!("F{d}"), &refs)
    }

    fn parsed(src: &str) -> Presentation {
        Presentation::parse(src).expect("built-in example parses").0
    }

    pub fn toeplitz() -> Presentation {
        parsed("algebra Toeplitz\ngen x y\nrel y*x - 1\n")
    }

    pub fn idempotent() -> Presentation {
        parsed("algebra Idem\ngen p\nrel p*p - p\n")
    }

    pub fn dual_numbers() -> Presentation {
        parsed("algebra Dual\ngen x\nrel x*x\n")
    }

    pub fn commutative_plane() -> Presentation {
        parsed("algebra Comm\ngen x y\nrel y*x - x*y\n")
    }

    /// `k ⊕ k` presented by two orthogonal idempotents.
    pub fn split_semisimple() -> Presentation {
        let k = Presentation::free("k", &[]);
        direct_sum(&[k.clone(), k]).expect("direct sum of fields")
    }

    /// `n x n` matrices on matrix units `u_ij`.
    pub fn matrix_algebra(n: usize) -> Presentation {
        let mut gens = vec![];
        for i in 1..=n {
            for j in 1..=n {
                gens.push(Generator::new(format!("u{i}{j}")));
            }
        }
        let u = |i: usize, j: usize| NcPoly::gen((i * n + j) as Letter);
        let mut rels = vec![];
        let mut sum = NcPoly::zero();
        for i in 0..n {
            sum = sum.add(&u(i, i));
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut r = u(i, j).mul(&u(k, l));
                        if j == k {
                            r = r.sub(&u(i, l));
                        }
                        rels.push(r);
                    }
                }
            }
        }
        rels.push(sum.sub(&NcPoly::constant(Q::one())));
        Presentation::new(format!("Mat{n}"), gens, rels).expect("matrix units")
    }
}
