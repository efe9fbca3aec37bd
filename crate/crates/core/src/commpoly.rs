//! Commutative polynomials over the rationals and polynomial differential
//! forms, used for representation schemes.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::ncpoly::format_rational;
use crate::Q;

pub type Var = u32;

/// Exponent vector stored sparsely as `(variable, exponent)` pairs sorted by variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct Monomial(SmallVec<[(Var, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Var) -> Self {
        Monomial(SmallVec::from_slice(&[(v, 1)]))
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, e)| e)
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &o.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push(b[j]);
                j += 1;
            } else {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
        Monomial(out)
    }

    /// `∂/∂v` as `(multiplier, monomial)`, or `None` when `v` does not occur.
    pub fn derivative(&self, v: Var) -> Option<(u32, Monomial)> {
        let pos = self.0.iter().position(|&(w, _)| w == v)?;
        let e = self.0[pos].1;
        let mut m = self.0.clone();
        if e == 1 {
            m.remove(pos);
        } else {
            m[pos].1 -= 1;
        }
        Some((e, Monomial(m)))
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        let mut r = Q::one();
        for &(v, e) in &self.0 {
            for _ in 0..e {
                r *= &point[v as usize];
            }
        }
        r
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CommPoly {
    terms: BTreeMap<Monomial, Q>,
}

impl fmt::Debug for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format(&|v| format!("v{v}")))
    }
}

impl CommPoly {
    pub fn zero() -> Self {
        CommPoly::default()
    }

    pub fn constant(c: Q) -> Self {
        let mut p = CommPoly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn one() -> Self {
        CommPoly::constant(Q::one())
    }

    pub fn var(v: Var) -> Self {
        let mut p = CommPoly::zero();
        p.add_term(Monomial::var(v), Q::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add_scaled(&mut self, c: &Q, o: &CommPoly) {
        for (m, d) in &o.terms {
            self.add_term(m.clone(), c * d);
        }
    }

    pub fn add(&self, o: &CommPoly) -> CommPoly {
        let mut r = self.clone();
        r.add_scaled(&Q::one(), o);
        r
    }

    pub fn sub(&self, o: &CommPoly) -> CommPoly {
        let mut r = self.clone();
        r.add_scaled(&-Q::one(), o);
        r
    }

    pub fn scale(&self, c: &Q) -> CommPoly {
        let mut r = CommPoly::zero();
        r.add_scaled(c, self);
        r
    }

    pub fn mul(&self, o: &CommPoly) -> CommPoly {
        let mut r = CommPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                r.add_term(a.mul(b), ca * cb);
            }
        }
        r
    }

    pub fn derivative(&self, v: Var) -> CommPoly {
        let mut r = CommPoly::zero();
        for (m, c) in &self.terms {
            if let Some((e, dm)) = m.derivative(v) {
                r.add_term(dm, c * Q::from_integer(e.into()));
            }
        }
        r
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.keys().flat_map(|m| m.0.iter().map(|&(v, _)| v)).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        self.terms.iter().map(|(m, c)| c * m.eval(point)).sum()
    }

    /// Substitute every variable by a polynomial.
    pub fn compose(&self, image: &dyn Fn(Var) -> CommPoly) -> CommPoly {
        let mut r = CommPoly::zero();
        for (m, c) in &self.terms {
            let mut t = CommPoly::constant(c.clone());
            for &(v, e) in m.factors() {
                let iv = image(v);
                for _ in 0..e {
                    t = t.mul(&iv);
                }
            }
            r = r.add(&t);
        }
        r
    }

    pub fn format(&self, name: &dyn Fn(Var) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let a = c.abs();
            let mono: Vec<String> = m
                .0
                .iter()
                .map(|&(v, e)| if e == 1 { name(v) } else { format!("{}^{}", name(v), e) })
                .collect();
            let body = if mono.is_empty() {
                format_rational(&a)
            } else if a.is_one() {
                mono.join("*")
            } else {
                format!("{}*{}", format_rational(&a), mono.join("*"))
            };
            match (k, c.is_negative()) {
                (0, false) => out.push_str(&body),
                (0, true) => out.push_str(&format!("-{body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
                (_, true) => out.push_str(&format!(" - {body}")),
            }
        }
        out
    }
}

/// Polynomial differential form `sum_I f_I dx_I` with `I` strictly increasing.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct Form {
    terms: BTreeMap<Vec<Var>, CommPoly>,
}

fn merge_sign(a: &[Var], b: &[Var]) -> Option<(Vec<Var>, bool)> {
    let mut inversions = 0usize;
    for x in a {
        for y in b {
            if x == y {
                return None;
            }
            if x > y {
                inversions += 1;
            }
        }
    }
    let mut v: Vec<Var> = a.iter().chain(b).copied().collect();
    v.sort_unstable();
    Some((v, inversions % 2 == 1))
}

impl Form {
    pub fn zero() -> Self {
        Form::default()
    }

    pub fn function(f: CommPoly) -> Self {
        let mut w = Form::zero();
        w.add_term(vec![], f);
        w
    }

    pub fn dvar(v: Var) -> Self {
        let mut w = Form::zero();
        w.add_term(vec![v], CommPoly::one());
        w
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Var>, &CommPoly)> {
        self.terms.iter()
    }

    fn add_term(&mut self, idx: Vec<Var>, f: CommPoly) {
        if f.is_zero() {
            return;
        }
        let e = self.terms.entry(idx.clone()).or_default();
        *e = e.add(&f);
        if e.is_zero() {
            self.terms.remove(&idx);
        }
    }

    pub fn add(&self, o: &Form) -> Form {
        let mut r = self.clone();
        for (i, f) in &o.terms {
            r.add_term(i.clone(), f.clone());
        }
        r
    }

    pub fn sub(&self, o: &Form) -> Form {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Form {
        self.mul_fn(&CommPoly::constant(c.clone()))
    }

    pub fn mul_fn(&self, g: &CommPoly) -> Form {
        let mut r = Form::zero();
        for (i, f) in &self.terms {
            r.add_term(i.clone(), f.mul(g));
        }
        r
    }

    pub fn wedge(&self, o: &Form) -> Form {
        let mut r = Form::zero();
        for (i, f) in &self.terms {
            for (j, g) in &o.terms {
                if let Some((k, neg)) = merge_sign(i, j) {
                    let mut p = f.mul(g);
                    if neg {
                        p = p.scale(&-Q::one());
                    }
                    r.add_term(k, p);
                }
            }
        }
        r
    }

    pub fn d(&self) -> Form {
        let mut r = Form::zero();
        for (i, f) in &self.terms {
            for v in f.vars() {
                if let Some((k, neg)) = merge_sign(&[v], i) {
                    let mut p = f.derivative(v);
                    if neg {
                        p = p.scale(&-Q::one());
                    }
                    r.add_term(k, p);
                }
            }
        }
        r
    }

    pub fn differential(f: &CommPoly) -> Form {
        Form::function(f.clone()).d()
    }

    /// Evaluate at `point` on tangent vectors (alternating multilinear form).
    pub fn eval(&self, point: &[Q], vectors: &[Vec<Q>]) -> Q {
        let mut total = Q::zero();
        for (idx, f) in &self.terms {
            if idx.len() != vectors.len() {
                continue;
            }
            let c = f.eval(point);
            if c.is_zero() {
                continue;
            }
            let k = idx.len();
            let mut m = crate::linalg::Matrix::zeros(k, k);
            for (a, &v) in idx.iter().enumerate() {
                for (b, vec) in vectors.iter().enumerate() {
                    m[(a, b)] = vec[v as usize].clone();
                }
            }
            total += c * m.det().expect("square");
        }
        total
    }

    pub fn max_coeff_degree(&self) -> u32 {
        self.terms.values().map(CommPoly::degree).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    #[test]
    fn d_squared_vanishes() {
        let x = CommPoly::var(0);
        let y = CommPoly::var(1);
        let f = x.mul(&x).mul(&y).add(&y.scale(&q(3)));
        let w = Form::function(f.clone()).d().mul_fn(&x);
        assert!(w.d().d().is_zero());
        assert!(Form::differential(&f).d().is_zero());
    }

    #[test]
    fn wedge_is_graded_commutative() {
        let a = Form::dvar(0);
        let b = Form::dvar(1);
        assert_eq!(a.wedge(&b), b.wedge(&a).scale(&q(-1)));
        assert!(a.wedge(&a).is_zero());
    }

    #[test]
    fn evaluation_of_two_form() {
        let w = Form::dvar(0).wedge(&Form::dvar(1));
        let v = w.eval(&[q(0), q(0)], &[vec![q(1), q(0)], vec![q(0), q(1)]]);
        assert_eq!(v, q(1));
    }
}
