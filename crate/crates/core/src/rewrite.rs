//! Noncommutative rewriting: normal forms, bounded completion with
//! interreduction, ideal membership and normal-word bases.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ncpoly::{format_poly, Letter, NcPoly, Presentation, Word};
use crate::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// Every ambiguity resolves.
    Complete,
    /// Every ambiguity of length at most the bound resolves.
    ConfluentUpTo(usize),
    Unknown,
}

impl Status {
    /// Largest word length for which normal forms are unique, `None` when unbounded.
    pub fn bound(&self) -> Option<usize> {
        match self {
            Status::Complete => None,
            Status::ConfluentUpTo(n) => Some(*n),
            Status::Unknown => Some(0),
        }
    }

    pub fn covers(&self, len: usize) -> bool {
        self.bound().is_none_or(|b| b >= len)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Complete => write!(f, "complete"),
            Status::ConfluentUpTo(n) => write!(f, "confluent_upto({n})"),
            Status::Unknown => write!(f, "unknown"),
        }
    }
}

/// Restricts completion to words containing at most `cap` copies of `letter`.
/// Only meaningful when every relation is homogeneous in that letter, so that
/// rewriting never changes its count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LetterCap {
    pub letter: Letter,
    pub cap: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct CompletionLimits {
    pub max_len: usize,
    pub letter_cap: Option<LetterCap>,
    pub max_rules: usize,
}

impl CompletionLimits {
    pub fn new(max_len: usize) -> Self {
        CompletionLimits {
            max_len,
            letter_cap: None,
            max_rules: 20_000,
        }
    }

    pub fn with_cap(mut self, letter: Letter, cap: usize) -> Self {
        self.letter_cap = Some(LetterCap { letter, cap });
        self
    }
}

/// `lhs -> rhs` with every word of `rhs` strictly smaller than `lhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: NcPoly,
}

impl Rule {
    pub fn as_poly(&self) -> NcPoly {
        let mut p = self.rhs.neg();
        p.add_term(self.lhs.clone(), Q::one());
        p
    }

    /// Orient a nonzero polynomial by its leading word.
    pub fn orient(p: &NcPoly) -> Option<Rule> {
        let (w, c) = p.leading()?;
        let w = w.clone();
        let inv = -Q::one() / c;
        let mut rhs = p.scale(&inv);
        rhs.add_term(w.clone(), Q::one());
        Some(Rule { lhs: w, rhs })
    }

    pub fn validate(&self) -> Result<()> {
        if let Some((w, _)) = self.rhs.leading() {
            if *w >= self.lhs {
                return Err(Error::NonOrientable(format!(
                    "rule lhs {:?} is not strictly larger than rhs term {:?}",
                    self.lhs, w
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
struct RuleIndex {
    rules: Vec<Option<Rule>>,
    by_first: Vec<Vec<usize>>,
    by_last: Vec<Vec<usize>>,
}

impl RuleIndex {
    fn new(ngens: usize) -> Self {
        RuleIndex {
            rules: vec![],
            by_first: vec![vec![]; ngens],
            by_last: vec![vec![]; ngens],
        }
    }

    fn push(&mut self, r: Rule) -> usize {
        let id = self.rules.len();
        let f = r.lhs.letters()[0] as usize;
        let l = *r.lhs.letters().last().unwrap() as usize;
        self.by_first[f].push(id);
        self.by_last[l].push(id);
        self.rules.push(Some(r));
        id
    }

    fn remove(&mut self, id: usize) -> Option<Rule> {
        let r = self.rules[id].take()?;
        let f = r.lhs.letters()[0] as usize;
        let l = *r.lhs.letters().last().unwrap() as usize;
        self.by_first[f].retain(|&i| i != id);
        self.by_last[l].retain(|&i| i != id);
        Some(r)
    }

    fn live(&self) -> impl Iterator<Item = (usize, &Rule)> {
        self.rules
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.as_ref().map(|r| (i, r)))
    }

    fn get(&self, id: usize) -> Option<&Rule> {
        self.rules.get(id).and_then(|r| r.as_ref())
    }

    /// Leftmost occurrence of a rule's lhs in `w`; among rules matching at the
    /// same position the earliest-added one wins.
    fn find_match(&self, w: &[Letter]) -> Option<(usize, usize)> {
        for pos in 0..w.len() {
            for &id in &self.by_first[w[pos] as usize] {
                let lhs = self.rules[id].as_ref().unwrap().lhs.letters();
                if pos + lhs.len() <= w.len() && &w[pos..pos + lhs.len()] == lhs {
                    return Some((pos, id));
                }
            }
        }
        None
    }

    fn suffix_reducible(&self, w: &[Letter]) -> bool {
        let Some(&last) = w.last() else { return false };
        self.by_last[last as usize].iter().any(|&id| {
            let lhs = self.rules[id].as_ref().unwrap().lhs.letters();
            lhs.len() <= w.len() && &w[w.len() - lhs.len()..] == lhs
        })
    }
}

/// Memoizing normal-form computation for a fixed rule set.
pub struct Reducer<'a> {
    index: &'a RuleIndex,
    cache: HashMap<Word, NcPoly>,
}

impl<'a> Reducer<'a> {
    fn over(index: &'a RuleIndex) -> Self {
        Reducer {
            index,
            cache: HashMap::new(),
        }
    }

    pub fn nf_word(&mut self, w: &Word) -> NcPoly {
        if let Some(p) = self.cache.get(w) {
            return p.clone();
        }
        let result = match self.index.find_match(w.letters()) {
            None => NcPoly::word(w.clone()),
            Some((pos, id)) => {
                let rule = self.index.get(id).unwrap();
                let pre = &w.letters()[..pos];
                let post = &w.letters()[pos + rule.lhs.len()..];
                let mut acc = NcPoly::zero();
                let expansions: Vec<(Word, Q)> = rule
                    .rhs
                    .terms()
                    .map(|(m, c)| (Word::concat3(pre, m.letters(), post), c.clone()))
                    .collect();
                for (v, c) in expansions {
                    let r = self.nf_word(&v);
                    acc.add_scaled(&c, &r);
                }
                acc
            }
        };
        self.cache.insert(w.clone(), result.clone());
        result
    }

    pub fn nf(&mut self, p: &NcPoly) -> NcPoly {
        let mut acc = NcPoly::zero();
        for (w, c) in p.terms() {
            let r = self.nf_word(w);
            acc.add_scaled(c, &r);
        }
        acc
    }
}

/// A rewriting system together with its confluence certificate.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    ngens: usize,
    index: RuleIndex,
    status: Status,
    letter_cap: Option<LetterCap>,
}

impl RewriteSystem {
    /// Take the rules as given, without completing them.
    pub fn from_rules(ngens: usize, rules: Vec<Rule>) -> Result<Self> {
        let mut index = RuleIndex::new(ngens);
        for r in rules {
            r.validate()?;
            r.as_poly().check_alphabet(ngens)?;
            if r.lhs.is_empty() {
                return Err(Error::Invalid("a relation reduces 1 to a scalar; the algebra is zero".into()));
            }
            index.push(r);
        }
        Ok(RewriteSystem {
            ngens,
            index,
            status: Status::Unknown,
            letter_cap: None,
        })
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn letter_cap(&self) -> Option<LetterCap> {
        self.letter_cap
    }

    pub fn rules(&self) -> Vec<&Rule> {
        self.index.live().map(|(_, r)| r).collect()
    }

    pub fn reducer(&self) -> Reducer<'_> {
        Reducer::over(&self.index)
    }

    pub fn normal_form(&self, p: &NcPoly) -> Result<NcPoly> {
        p.check_alphabet(self.ngens)?;
        Ok(self.reducer().nf(p))
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.index.find_match(w.letters()).is_none()
    }

    /// Irreducible words of length at most `max_len`, in deglex order.
    pub fn normal_words(&self, max_len: usize) -> Vec<Word> {
        self.normal_words_where(max_len, |_| true)
    }

    /// Irreducible words of length at most `max_len` such that every prefix
    /// satisfies `keep` (used to bound letter counts during enumeration).
    pub fn normal_words_where(&self, max_len: usize, keep: impl Fn(&[Letter]) -> bool) -> Vec<Word> {
        let mut out = vec![];
        let mut layer: Vec<Vec<Letter>> = vec![vec![]];
        if keep(&[]) {
            out.push(Word::empty());
        } else {
            return out;
        }
        for _ in 0..max_len {
            let mut next = vec![];
            for w in &layer {
                for l in 0..self.ngens as Letter {
                    let mut v = w.clone();
                    v.push(l);
                    if keep(&v) && !self.index.suffix_reducible(&v) {
                        next.push(v);
                    }
                }
            }
            out.extend(next.iter().map(|v| Word::from_letters(v)));
            layer = next;
            if layer.is_empty() {
                break;
            }
        }
        out
    }

    /// Serialize as the algebra text format with a status comment.
    pub fn to_text(&self, name: &str, p: &Presentation) -> String {
        let base = Presentation {
            name: name.to_string(),
            gens: p.gens.clone(),
            rels: self.rules().iter().map(|r| r.as_poly()).collect(),
        };
        format!("# status: {}\n{}", self.status, base.to_text())
    }

    pub fn describe_rules(&self, symbols: &[String]) -> Vec<String> {
        self.rules()
            .iter()
            .map(|r| {
                format!(
                    "{} -> {}",
                    format_poly(&NcPoly::word(r.lhs.clone()), symbols),
                    format_poly(&r.rhs, symbols)
                )
            })
            .collect()
    }
}

type Ambiguity = (Word, usize, usize, usize);

struct Completer {
    index: RuleIndex,
    limits: CompletionLimits,
    queue: BTreeSet<Ambiguity>,
    truncated: bool,
}

impl Completer {
    fn within_cap(&self, w: &Word) -> bool {
        match self.limits.letter_cap {
            Some(c) => w.count(c.letter) <= c.cap,
            None => true,
        }
    }

    fn nf(&self, p: &NcPoly) -> NcPoly {
        Reducer::over(&self.index).nf(p)
    }

    fn ambiguities(&self, a: usize, b: usize) -> Vec<(Word, usize)> {
        let la = self.index.get(a).unwrap().lhs.letters();
        let lb = self.index.get(b).unwrap().lhs.letters();
        let mut out = vec![];
        for k in 1..la.len().min(lb.len()) {
            if la[la.len() - k..] == lb[..k] {
                out.push((Word::concat3(la, &lb[k..], &[]), k));
            }
        }
        out
    }

    fn enqueue_for(&mut self, id: usize) {
        let ids: Vec<usize> = self.index.live().map(|(i, _)| i).collect();
        for other in ids {
            let mut pairs = vec![(id, other)];
            if other != id {
                pairs.push((other, id));
            }
            for (a, b) in pairs {
                for (w, k) in self.ambiguities(a, b) {
                    if !self.within_cap(&w) {
                        continue;
                    }
                    if w.len() > self.limits.max_len {
                        self.truncated = true;
                        continue;
                    }
                    self.queue.insert((w, a, b, k));
                }
            }
        }
    }

    fn add(&mut self, p: NcPoly) -> Result<()> {
        let mut pending = vec![p];
        while let Some(p) = pending.pop() {
            let q = self.nf(&p);
            let Some(rule) = Rule::orient(&q) else { continue };
            if rule.lhs.is_empty() {
                return Err(Error::Invalid(
                    "the ideal contains a nonzero scalar; the algebra is zero".into(),
                ));
            }
            if self.index.live().count() >= self.limits.max_rules {
                return Err(Error::Invalid("rule limit exceeded during completion".into()));
            }
            let lhs = rule.lhs.clone();
            let id = self.index.push(rule);
            let others: Vec<usize> = self.index.live().map(|(i, _)| i).filter(|&i| i != id).collect();
            for o in &others {
                if self.index.get(*o).unwrap().lhs.find(lhs.letters()).is_some() {
                    let r = self.index.remove(*o).unwrap();
                    pending.push(r.as_poly());
                }
            }
            let live: Vec<usize> = self.index.live().map(|(i, _)| i).collect();
            let mut red = Reducer::over(&self.index);
            let updates: Vec<(usize, NcPoly)> = live
                .iter()
                .map(|&i| (i, red.nf(&self.index.get(i).unwrap().rhs)))
                .collect();
            for (i, rhs) in updates {
                self.index.rules[i].as_mut().unwrap().rhs = rhs;
            }
            self.enqueue_for(id);
        }
        Ok(())
    }

    fn resolve(&self, amb: &Ambiguity) -> Option<NcPoly> {
        let (w, a, b, k) = amb;
        let ra = self.index.get(*a)?;
        let rb = self.index.get(*b)?;
        let tail = &rb.lhs.letters()[*k..];
        let head = &ra.lhs.letters()[..ra.lhs.len() - k];
        let _ = w;
        let mut diff = NcPoly::zero();
        diff.add_scaled_sandwich(&Q::one(), &[], &ra.rhs, tail);
        diff.add_scaled_sandwich(&-Q::one(), head, &rb.rhs, &[]);
        let d = self.nf(&diff);
        (!d.is_zero()).then_some(d)
    }

    fn run(&mut self) -> Result<()> {
        loop {
            while let Some(amb) = self.queue.pop_first() {
                if let Some(d) = self.resolve(&amb) {
                    self.add(d)?;
                }
            }
            let ids: Vec<usize> = self.index.live().map(|(i, _)| i).collect();
            self.truncated = false;
            for id in ids {
                self.enqueue_for(id);
            }
            let all: Vec<Ambiguity> = std::mem::take(&mut self.queue).into_iter().collect();
            let mut clean = true;
            for amb in all {
                if let Some(d) = self.resolve(&amb) {
                    self.add(d)?;
                    clean = false;
                    break;
                }
            }
            if clean {
                return Ok(());
            }
        }
    }
}

/// Complete a set of relations by Knuth–Bendix / Bergman style completion.
pub fn complete(ngens: usize, rels: &[NcPoly], limits: CompletionLimits) -> Result<RewriteSystem> {
    for r in rels {
        r.check_alphabet(ngens)?;
    }
    if let Some(c) = limits.letter_cap {
        for r in rels {
            if r.homogeneous_degree(|l| (l == c.letter) as i64).is_none() {
                return Err(Error::Invalid(
                    "a letter cap requires every relation to be homogeneous in the capped letter".into(),
                ));
            }
        }
    }
    let mut c = Completer {
        index: RuleIndex::new(ngens),
        limits,
        queue: BTreeSet::new(),
        truncated: false,
    };
    let mut sorted: Vec<NcPoly> = rels.to_vec();
    sorted.sort_by(|a, b| a.leading().map(|x| x.0).cmp(&b.leading().map(|x| x.0)));
    for r in sorted {
        c.add(r)?;
    }
    c.run()?;
    let status = if c.truncated {
        Status::ConfluentUpTo(limits.max_len)
    } else {
        Status::Complete
    };
    let mut index = RuleIndex::new(ngens);
    let mut rules: Vec<Rule> = c.index.live().map(|(_, r)| r.clone()).collect();
    rules.sort_by(|a, b| a.lhs.cmp(&b.lhs));
    for r in rules {
        index.push(r);
    }
    Ok(RewriteSystem {
        ngens,
        index,
        status,
        letter_cap: limits.letter_cap,
    })
}

/// Complete user-supplied oriented rules; each must already be oriented.
pub fn complete_rules(ngens: usize, rules: &[Rule], limits: CompletionLimits) -> Result<RewriteSystem> {
    for r in rules {
        r.validate()?;
    }
    let rels: Vec<NcPoly> = rules.iter().map(Rule::as_poly).collect();
    complete(ngens, &rels, limits)
}

pub fn complete_presentation(p: &Presentation, max_len: usize) -> Result<RewriteSystem> {
    complete(p.ngens(), &p.rels, CompletionLimits::new(max_len))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Yes,
    /// The normal form is nonzero; conclusive only when `certified_upto` is `None`
    /// or covers the length of the queried element.
    NoUpTo { certified_upto: Option<usize> },
}

pub fn ideal_member(p: &NcPoly, rs: &RewriteSystem) -> Result<Membership> {
    if rs.normal_form(p)?.is_zero() {
        Ok(Membership::Yes)
    } else {
        Ok(Membership::NoUpTo {
            certified_upto: rs.status().bound(),
        })
    }
}

/// Normal words of length at most `len`, which form a basis of the length-filtered
/// quotient when the system is confluent up to `len`.
pub fn basis_upto(rs: &RewriteSystem, len: usize) -> Result<Vec<Word>> {
    if !rs.status().covers(len) {
        return Err(Error::InsufficientBound {
            have: rs.status().bound().unwrap_or(0),
            need: len,
        });
    }
    Ok(rs.normal_words(len))
}

/// Count of normal words by length.
pub fn hilbert_counts(rs: &RewriteSystem, len: usize) -> Result<BTreeMap<usize, usize>> {
    let mut m = BTreeMap::new();
    for w in basis_upto(rs, len)? {
        *m.entry(w.len()).or_insert(0) += 1;
    }
    Ok(m)
}

/// Check whether two elements are equal in the quotient.
pub fn equal_in_quotient(rs: &RewriteSystem, a: &NcPoly, b: &NcPoly) -> Result<bool> {
    Ok(rs.normal_form(&a.sub(b))?.is_zero())
}

pub fn scalar_of(p: &NcPoly) -> Option<Q> {
    match p.num_terms() {
        0 => Some(Q::zero()),
        1 => {
            let (w, c) = p.leading()?;
            w.is_empty().then(|| c.clone())
        }
        _ => None,
    }
}
