//! Words, noncommutative polynomials with exact rational coefficients, and
//! the text format for finitely presented algebras.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::Q;

pub type Letter = u16;

/// A word over a generator alphabet, ordered degree-lexicographically:
/// shorter words first, ties broken by the declared generator order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub SmallVec<[Letter; 12]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        Word(SmallVec::from_slice(letters))
    }

    pub fn letter(l: Letter) -> Self {
        Word::from_letters(&[l])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn concat3(a: &[Letter], b: &[Letter], c: &[Letter]) -> Word {
        let mut v = SmallVec::with_capacity(a.len() + b.len() + c.len());
        v.extend_from_slice(a);
        v.extend_from_slice(b);
        v.extend_from_slice(c);
        Word(v)
    }

    pub fn count(&self, l: Letter) -> usize {
        self.0.iter().filter(|&&x| x == l).count()
    }

    /// Position of the first occurrence of `sub`, if any.
    pub fn find(&self, sub: &[Letter]) -> Option<usize> {
        if sub.len() > self.len() {
            return None;
        }
        (0..=self.len() - sub.len()).find(|&i| &self.0[i..i + sub.len()] == sub)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Finite linear combination of words; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct NcPoly {
    terms: BTreeMap<Word, Q>,
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(w, c)| (w, c.to_string())))
            .finish()
    }
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    pub fn one() -> Self {
        NcPoly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        NcPoly::term(c, Word::empty())
    }

    pub fn term(c: Q, w: Word) -> Self {
        let mut p = NcPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn word(w: Word) -> Self {
        NcPoly::term(Q::one(), w)
    }

    pub fn gen(l: Letter) -> Self {
        NcPoly::word(Word::letter(l))
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Q)>>(it: I) -> Self {
        let mut p = NcPoly::zero();
        for (w, c) in it {
            p.add_term(w, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending degree-lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Q)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, Q> {
        self.terms
    }

    pub fn coeff(&self, w: &Word) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn leading(&self) -> Option<(&Word, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn min_len(&self) -> usize {
        self.terms.keys().map(Word::len).min().unwrap_or(0)
    }

    pub fn max_letter(&self) -> Option<Letter> {
        self.terms.keys().flat_map(|w| w.0.iter().copied()).max()
    }

    pub fn add_term(&mut self, w: Word, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * left * p * right` on the word level.
    pub fn add_scaled_sandwich(&mut self, c: &Q, left: &[Letter], p: &NcPoly, right: &[Letter]) {
        for (w, d) in &p.terms {
            self.add_term(Word::concat3(left, &w.0, right), c * d);
        }
    }

    pub fn add_scaled(&mut self, c: &Q, p: &NcPoly) {
        self.add_scaled_sandwich(c, &[], p, &[]);
    }

    pub fn scale(&self, c: &Q) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero();
        }
        NcPoly {
            terms: self.terms.iter().map(|(w, d)| (w.clone(), d * c)).collect(),
        }
    }

    pub fn neg(&self) -> NcPoly {
        self.scale(&-Q::one())
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        let mut r = self.clone();
        r.add_scaled(&Q::one(), other);
        r
    }

    pub fn sub(&self, other: &NcPoly) -> NcPoly {
        let mut r = self.clone();
        r.add_scaled(&-Q::one(), other);
        r
    }

    pub fn mul(&self, other: &NcPoly) -> NcPoly {
        let mut r = NcPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                r.add_term(a.concat(b), ca * cb);
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> NcPoly {
        let mut r = NcPoly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Replace every letter by a polynomial (algebra map on the free algebra).
    pub fn substitute<F: Fn(Letter) -> NcPoly>(&self, f: F) -> NcPoly {
        let images: BTreeMap<Letter, NcPoly> = self
            .terms
            .keys()
            .flat_map(|w| w.0.iter().copied())
            .map(|l| (l, f(l)))
            .collect();
        let mut r = NcPoly::zero();
        for (w, c) in &self.terms {
            let mut acc = NcPoly::constant(c.clone());
            for l in w.letters() {
                acc = acc.mul(&images[l]);
                if acc.is_zero() {
                    break;
                }
            }
            r.add_scaled(&Q::one(), &acc);
        }
        r
    }

    /// Map letters by a renaming (injective relabeling of the alphabet).
    pub fn relabel<F: Fn(Letter) -> Letter>(&self, f: F) -> NcPoly {
        NcPoly::from_terms(
            self.terms
                .iter()
                .map(|(w, c)| (Word(w.0.iter().map(|&l| f(l)).collect()), c.clone())),
        )
    }

    /// Degree with respect to letter weights, or `None` when inhomogeneous.
    pub fn homogeneous_degree(&self, weight: impl Fn(Letter) -> i64) -> Option<Option<i64>> {
        let mut deg = None;
        for w in self.terms.keys() {
            let d: i64 = w.0.iter().map(|&l| weight(l)).sum();
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        Some(deg)
    }

    pub fn check_alphabet(&self, ngens: usize) -> Result<()> {
        match self.max_letter() {
            Some(l) if l as usize >= ngens => Err(Error::AlphabetMismatch(format!(
                "letter index {l} outside an alphabet of {ngens} generators"
            ))),
            _ => Ok(()),
        }
    }
}

/// Multiply two polynomials declared over alphabets of the given sizes.
pub fn mul_checked(p: &NcPoly, p_gens: usize, q: &NcPoly, q_gens: usize) -> Result<NcPoly> {
    if p_gens != q_gens {
        return Err(Error::AlphabetMismatch(format!(
            "operands over {p_gens} and {q_gens} generators"
        )));
    }
    p.check_alphabet(p_gens)?;
    q.check_alphabet(q_gens)?;
    Ok(p.mul(q))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub symbol: String,
    pub degree: i64,
    pub ta_degree: i64,
}

impl Generator {
    pub fn new(symbol: impl Into<String>) -> Self {
        Generator {
            symbol: symbol.into(),
            degree: 0,
            ta_degree: 0,
        }
    }

    pub fn with_degree(symbol: impl Into<String>, degree: i64) -> Self {
        Generator {
            degree,
            ..Generator::new(symbol)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    /// No generator carries a nonzero degree.
    Trivial,
    Homogeneous,
    /// Degrees were declared but some relation is inhomogeneous.
    Ungraded,
}

/// Finitely presented algebra `k<generators> / (relations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    pub gens: Vec<Generator>,
    pub rels: Vec<NcPoly>,
}

impl Presentation {
    pub fn new(name: impl Into<String>, gens: Vec<Generator>, rels: Vec<NcPoly>) -> Result<Self> {
        let p = Presentation {
            name: name.into(),
            gens,
            rels,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn free(name: impl Into<String>, symbols: &[&str]) -> Self {
        Presentation {
            name: name.into(),
            gens: symbols.iter().map(|s| Generator::new(*s)).collect(),
            rels: vec![],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = std::collections::BTreeSet::new();
        for g in &self.gens {
            if !is_identifier(&g.symbol) {
                return Err(Error::Parse(format!("invalid generator symbol `{}`", g.symbol)));
            }
            if !seen.insert(g.symbol.as_str()) {
                return Err(Error::Parse(format!("duplicate generator `{}`", g.symbol)));
            }
        }
        if self.gens.len() > Letter::MAX as usize {
            return Err(Error::Parse("too many generators".into()));
        }
        for r in &self.rels {
            r.check_alphabet(self.gens.len())?;
        }
        Ok(())
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    pub fn symbols(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.symbol.clone()).collect()
    }

    pub fn index_of(&self, symbol: &str) -> Option<Letter> {
        self.gens
            .iter()
            .position(|g| g.symbol == symbol)
            .map(|i| i as Letter)
    }

    pub fn gen(&self, symbol: &str) -> NcPoly {
        NcPoly::gen(self.index_of(symbol).expect("unknown generator"))
    }

    pub fn degree_of_word(&self, w: &Word) -> i64 {
        w.letters().iter().map(|&l| self.gens[l as usize].degree).sum()
    }

    pub fn grading(&self) -> Grading {
        if self.gens.iter().all(|g| g.degree == 0) {
            return Grading::Trivial;
        }
        let weight = |l: Letter| self.gens[l as usize].degree;
        if self.rels.iter().all(|r| r.homogeneous_degree(weight).is_some()) {
            Grading::Homogeneous
        } else {
            Grading::Ungraded
        }
    }

    pub fn parse_poly(&self, text: &str) -> Result<NcPoly> {
        parse_expr(text, &self.symbols())
    }

    pub fn format_poly(&self, p: &NcPoly) -> String {
        format_poly(p, &self.symbols())
    }

    pub fn parse(text: &str) -> Result<(Presentation, Vec<String>)> {
        parse_presentation(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("algebra {}\n", self.name);
        if !self.gens.is_empty() {
            let gens: Vec<String> = self.gens.iter().map(format_generator).collect();
            out.push_str(&format!("gen {}\n", gens.join(" ")));
        }
        let syms = self.symbols();
        for r in &self.rels {
            out.push_str(&format!("rel {}\n", format_poly(r, &syms)));
        }
        out
    }
}

fn format_generator(g: &Generator) -> String {
    match (g.degree, g.ta_degree) {
        (0, 0) => g.symbol.clone(),
        (d, 0) => format!("{}:{}", g.symbol, d),
        (d, t) => format!("{}:{}:{}", g.symbol, d, t),
    }
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// Canonical text of a rational coefficient.
pub fn format_rational(c: &Q) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn format_word(w: &Word, symbols: &[String]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let mut parts = Vec::new();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let mut j = i;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        let sym = symbols
            .get(letters[i] as usize)
            .cloned()
            .unwrap_or_else(|| format!("?{}", letters[i]));
        if j - i == 1 {
            parts.push(sym);
        } else {
            parts.push(format!("{}^{}", sym, j - i));
        }
        i = j;
    }
    parts.join("*")
}

/// Terms are printed from the leading (largest) word down.
pub fn format_poly(p: &NcPoly, symbols: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (w, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        let body = if w.is_empty() {
            format_rational(&a)
        } else if a.is_one() {
            format_word(w, symbols)
        } else {
            format!("{}*{}", format_rational(&a), format_word(w, symbols))
        };
        match (k, neg) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body)
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body)
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body)
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

/// Tokens with the 1-based column where each starts.
fn tokenize(s: &str, offset: usize) -> Result<(Vec<Tok>, Vec<usize>)> {
    let mut toks = Vec::new();
    let mut cols = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if !c.is_whitespace() {
            cols.push(offset + i + 1);
        }
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let n: String = cs[st..i].iter().collect();
            toks.push(Tok::Num(n.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_' || cs[i] == '\'') {
                i += 1;
            }
            toks.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^()|".contains(c) {
            toks.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("column {}: unexpected character `{c}` in `{s}`", offset + i + 1)));
        }
    }
    Ok((toks, cols))
}

struct ExprParser<'a> {
    toks: Vec<Tok>,
    cols: Vec<usize>,
    pos: usize,
    symbols: &'a [String],
    src: &'a str,
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn err(&self, msg: &str) -> Error {
        let end = self.cols.last().map_or(1, |c| c + 1);
        let col = self.cols.get(self.pos).copied().unwrap_or(end);
        Error::Parse(format!("column {col}: {msg} in `{}`", self.src))
    }

    fn expr(&mut self) -> Result<NcPoly> {
        let mut acc = NcPoly::zero();
        let mut sign = Q::one();
        if let Some(Tok::Op(c @ ('+' | '-'))) = self.peek() {
            if *c == '-' {
                sign = -sign;
            }
            self.pos += 1;
        }
        loop {
            let t = self.product()?;
            acc.add_scaled(&sign, &t);
            match self.peek() {
                Some(Tok::Op('+')) => sign = Q::one(),
                Some(Tok::Op('-')) => sign = -Q::one(),
                _ => break,
            }
            self.pos += 1;
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<NcPoly> {
        let mut acc = self.power()?;
        while let Some(Tok::Op('*')) = self.peek() {
            self.pos += 1;
            let f = self.power()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<NcPoly> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.err("expected exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<NcPoly> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                if let Some(Tok::Op('/')) = self.peek() {
                    self.pos += 1;
                    match self.toks.get(self.pos).cloned() {
                        Some(Tok::Num(d)) if !d.is_zero() => {
                            self.pos += 1;
                            Ok(NcPoly::constant(Q::new(n, d)))
                        }
                        _ => Err(self.err("expected nonzero denominator")),
                    }
                } else {
                    Ok(NcPoly::constant(Q::from_integer(n)))
                }
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                self.symbol(&s)
            }
            Some(Tok::Op('|')) => {
                self.pos += 1;
                self.symbol("|")
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err(self.err("unbalanced parenthesis")),
                }
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(self.power()?.neg())
            }
            _ => Err(self.err("unexpected end of expression")),
        }
    }

    fn symbol(&self, s: &str) -> Result<NcPoly> {
        match self.symbols.iter().position(|t| t == s) {
            Some(i) => Ok(NcPoly::gen(i as Letter)),
            None => Err(Error::UnknownSymbol {
                symbol: s.to_string(),
                column: self.pos.checked_sub(1).and_then(|p| self.cols.get(p).copied()),
            }),
        }
    }
}

/// Parse an expression over the given symbols. `|` is accepted as an atom
/// when the symbol list contains it.
pub fn parse_expr(text: &str, symbols: &[String]) -> Result<NcPoly> {
    parse_expr_at(text, symbols, 0)
}

fn parse_expr_at(text: &str, symbols: &[String], offset: usize) -> Result<NcPoly> {
    let (toks, cols) = tokenize(text, offset)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = ExprParser {
        toks,
        cols,
        pos: 0,
        symbols,
        src: text,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

fn parse_generator(tok: &str) -> Result<Generator> {
    let parts: Vec<&str> = tok.split(':').collect();
    let bad = || Error::Parse(format!("bad generator declaration `{tok}`"));
    if parts.is_empty() || parts.len() > 3 || !is_identifier(parts[0]) {
        return Err(bad());
    }
    let num = |s: &str| s.parse::<i64>().map_err(|_| bad());
    Ok(Generator {
        symbol: parts[0].to_string(),
        degree: if parts.len() > 1 { num(parts[1])? } else { 0 },
        ta_degree: if parts.len() > 2 { num(parts[2])? } else { 0 },
    })
}

/// Parse the line-oriented algebra format. Returns the presentation and any
/// warnings (relations that canonicalize to zero are dropped with a warning).
pub fn parse_presentation(text: &str) -> Result<(Presentation, Vec<String>)> {
    let mut name = String::from("A");
    let mut gens = Vec::new();
    let mut rel_src = Vec::new();
    let mut warnings = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match kw {
            "algebra" => name = rest.trim().to_string(),
            "gen" => {
                for t in rest.split_whitespace() {
                    gens.push(parse_generator(t).map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?);
                }
            }
            "rel" => {
                let start = raw.len() - raw.trim_start().len() + kw.len();
                let lead = raw[start..].len() - raw[start..].trim_start().len();
                rel_src.push((lineno + 1, raw[..start + lead].chars().count(), rest.trim().to_string()))
            }
            other => {
                return Err(Error::Parse(format!(
                    "line {}: unknown keyword `{other}`",
                    lineno + 1
                )))
            }
        }
    }
    let syms: Vec<String> = gens.iter().map(|g: &Generator| g.symbol.clone()).collect();
    let mut rels = Vec::new();
    for (lineno, offset, src) in rel_src {
        let p = parse_expr_at(&src, &syms, offset).map_err(|e| match e {
            Error::Parse(m) => Error::Parse(format!("line {lineno}: {m}")),
            other => Error::Parse(format!("line {lineno}: {other}")),
        })?;
        if p.is_zero() {
            warnings.push(format!("line {lineno}: relation `{src}` is zero and was dropped"));
        } else {
            rels.push(p);
        }
    }
    let p = Presentation::new(name, gens, rels)?;
    if p.grading() == Grading::Ungraded {
        warnings.push("declared degrees but some relation is inhomogeneous; treated as ungraded".into());
    }
    Ok((p, warnings))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syms(s: &[&str]) -> Vec<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn deglex_order() {
        let a = Word::from_letters(&[1]);
        let b = Word::from_letters(&[0, 0]);
        let c = Word::from_letters(&[0, 1]);
        assert!(a < b && b < c);
        assert!(Word::empty() < a);
    }

    #[test]
    fn parse_and_print_roundtrip() {
        let s = syms(&["x", "y"]);
        let p = parse_expr("y*x - 1 + 3/2*x^2", &s).unwrap();
        assert_eq!(format_poly(&p, &s), "y*x + 3/2*x^2 - 1");
        assert_eq!(parse_expr(&format_poly(&p, &s), &s).unwrap(), p);
    }

    #[test]
    fn parenthesized_products_expand() {
        let s = syms(&["x", "y"]);
        let p = parse_expr("(x+y)*(x-y)", &s).unwrap();
        let q = parse_expr("x*x - x*y + y*x - y*y", &s).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn unknown_symbol_is_reported() {
        let s = syms(&["x"]);
        assert!(matches!(parse_expr("x*z", &s), Err(Error::UnknownSymbol { symbol, column: Some(3) }) if symbol == "z"));
    }

    #[test]
    fn zero_relation_warns() {
        let (p, w) = parse_presentation("algebra T\ngen x y\nrel x - x\nrel y*x - 1\n").unwrap();
        assert_eq!(p.rels.len(), 1);
        assert_eq!(w.len(), 1);
    }

    #[test]
    fn inhomogeneous_relation_flags_ungraded() {
        let (p, w) = parse_presentation("algebra T\ngen x:1 y:-1\nrel y*x*x - 1\n").unwrap();
        assert_eq!(p.grading(), Grading::Ungraded);
        assert!(!w.is_empty());
        let (p, _) = parse_presentation("algebra T\ngen x:1 y:-1\nrel y*x - 1\n").unwrap();
        assert_eq!(p.grading(), Grading::Homogeneous);
    }

    #[test]
    fn alphabet_mismatch_errors() {
        let p = NcPoly::gen(0);
        let q = NcPoly::gen(3);
        assert!(mul_checked(&p, 2, &q, 2).is_err());
        assert!(mul_checked(&p, 2, &p, 3).is_err());
        assert!(mul_checked(&p, 2, &p, 2).is_ok());
    }

    #[test]
    fn presentation_text_roundtrip() {
        let src = "algebra NP1\ngen x1:1 x2:1 y1:-1 y2:-1 Dz:0:1\nrel y1*x1 + y2*x2 - 1\n";
        let (p, _) = parse_presentation(src).unwrap();
        let (q, _) = parse_presentation(&p.to_text()).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.to_text(), q.to_text());
    }
}
