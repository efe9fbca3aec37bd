//! Noncommutative projective space `NP^{d-1}` through its Jouanolou cover,
//! the sheaves `O` and `O(1)`, and the comparison with the Kronecker quiver.

use rayon::prelude::*;

use crate::algebra::{path_algebra, Quiver};
use crate::error::{Error, Result};
use crate::ncpoly::{Generator, Letter, NcPoly, Presentation, Word};
use crate::repmod::{ext1_dim, hom_dim, projective_module};
use crate::spaces::{hom_cohomology, CechParams, CechReport, Comodule, Cover};

/// The Jouanolou cover of `NP^{d-1}`: `B = k<x_i, y_i>/(sum y_i x_i - 1)`
/// with kernel generators `e_j = -m x_j + sum_i x_j y_i m x_i`.
#[derive(Clone, Debug)]
pub struct JouanolouCover {
    pub d: usize,
    pub cover: Cover,
    x: Vec<Letter>,
    y: Vec<Letter>,
}

pub const DEFAULT_COMPLETION_LEN: usize = 14;

impl JouanolouCover {
    pub fn new(d: usize) -> Result<Self> {
        Self::with_order(d, &(0..d).collect::<Vec<_>>())
    }

    /// Build the cover with the generators declared in the order
    /// `x_{σ(1)}..x_{σ(d)}, y_{σ(1)}..y_{σ(d)}`, which changes the word order.
    pub fn with_order(d: usize, sigma: &[usize]) -> Result<Self> {
        Self::build(d, sigma, 2, DEFAULT_COMPLETION_LEN)
    }

    pub fn build(d: usize, sigma: &[usize], max_tensor: usize, max_len: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::Invalid("d must be at least 1".into()));
        }
        let mut sorted = sigma.to_vec();
        sorted.sort_unstable();
        if sorted != (0..d).collect::<Vec<_>>() {
            return Err(Error::Invalid("the generator order must be a permutation of 0..d".into()));
        }
        let mut gens = vec![];
        for &i in sigma {
            gens.push(Generator::with_degree(format!("x{}", i + 1), 1));
        }
        for &i in sigma {
            gens.push(Generator::with_degree(format!("y{}", i + 1), -1));
        }
        let pos = |i: usize| sigma.iter().position(|&s| s == i).expect("permutation") as Letter;
        let x: Vec<Letter> = (0..d).map(pos).collect();
        let y: Vec<Letter> = (0..d).map(|i| pos(i) + d as Letter).collect();
        let mut rel = NcPoly::one().neg();
        for i in 0..d {
            rel = rel.add(&NcPoly::word(Word::from_letters(&[y[i], x[i]])));
        }
        let base = Presentation::new(format!("Jouanolou{d}"), gens, vec![rel])?;
        let m = 2 * d as Letter;
        let kernel = (0..d)
            .map(|j| {
                let mut e = NcPoly::word(Word::from_letters(&[m, x[j]])).neg();
                for i in 0..d {
                    e = e.add(&NcPoly::word(Word::from_letters(&[x[j], y[i], m, x[i]])));
                }
                e
            })
            .collect();
        let cover = Cover::space(&base, kernel, max_tensor, max_len)?;
        Ok(JouanolouCover { d, cover, x, y })
    }

    pub fn x(&self, i: usize) -> NcPoly {
        NcPoly::gen(self.x[i])
    }

    pub fn y(&self, i: usize) -> NcPoly {
        NcPoly::gen(self.y[i])
    }

    /// The universal quotient `q: B^d → B`, `(b_i) ↦ sum b_i x_i`, with splitting
    /// `b ↦ (b y_i)` and projector `e = (x_i y_j)`.
    pub fn twist_data(&self) -> TwistData {
        let d = self.d;
        let projector = (0..d).map(|i| (0..d).map(|j| self.x(i).mul(&self.y(j))).collect()).collect();
        TwistData {
            quotient: (0..d).map(|i| self.x(i)).collect(),
            splitting: (0..d).map(|i| self.y(i)).collect(),
            projector,
        }
    }

    /// `O(1)`: rank one with coaction `sum_i y_i m x_i`.
    pub fn twisting_sheaf(&self) -> Comodule {
        let m = self.cover.m();
        let mut mu = NcPoly::zero();
        for i in 0..self.d {
            mu = mu.add(&self.y(i).mul(&m).mul(&self.x(i)));
        }
        Comodule::rank_one(mu)
    }

    pub fn structure_sheaf(&self) -> Comodule {
        Comodule::structure_sheaf(&self.cover)
    }

    pub fn sheaf(&self, s: Sheaf) -> Comodule {
        match s {
            Sheaf::O => self.structure_sheaf(),
            Sheaf::O1 => self.twisting_sheaf(),
        }
    }

    /// Whether `b ↦ b x_i` commutes with the coactions of `O` and `O(1)`.
    pub fn is_section(&self, i: usize) -> bool {
        let m = self.cover.m();
        let mu = &self.twisting_sheaf().coaction[0][0];
        let x = self.x(i);
        self.cover.nf(&m.mul(&x).sub(&x.mul(mu))).is_zero()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sheaf {
    O,
    O1,
}

impl Sheaf {
    pub fn name(self) -> &'static str {
        match self {
            Sheaf::O => "O",
            Sheaf::O1 => "O(1)",
        }
    }
}

#[derive(Clone, Debug)]
pub struct TwistData {
    pub quotient: Vec<NcPoly>,
    pub splitting: Vec<NcPoly>,
    pub projector: Vec<Vec<NcPoly>>,
}

impl TwistData {
    /// `e^2 = e` and `q ∘ split = id`, reduced in `B`.
    pub fn check(&self, j: &JouanolouCover) -> (bool, bool) {
        let mut red = j.cover.base_system().reducer();
        let d = self.projector.len();
        let mut idem = true;
        for a in 0..d {
            for b in 0..d {
                let mut s = NcPoly::zero();
                for c in 0..d {
                    s = s.add(&self.projector[a][c].mul(&self.projector[c][b]));
                }
                if !red.nf(&s.sub(&self.projector[a][b])).is_zero() {
                    idem = false;
                }
            }
        }
        let mut qs = NcPoly::zero();
        for (s, q) in self.splitting.iter().zip(&self.quotient) {
            qs = qs.add(&s.mul(q));
        }
        (idem, red.nf(&qs.sub(&NcPoly::one())).is_zero())
    }
}

pub fn default_params() -> CechParams {
    CechParams {
        max_degree: 1,
        cutoffs: vec![4, 6, 8],
        window: Some((-2, 2)),
        slack: 2,
    }
}

/// Cohomology of `Hom(E, F)` for `E, F ∈ {O, O(1)}`; with `E = O` this is `H^*(F)`.
pub fn np_cohomology(j: &JouanolouCover, e: Sheaf, f: Sheaf, params: &CechParams) -> Result<CechReport> {
    if params.cutoffs.len() < 3 {
        return Err(Error::Invalid("a cutoff ladder of at least three values is required".into()));
    }
    hom_cohomology(&j.cover, &j.sheaf(e), &j.sheaf(f), params)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tables {
    pub hom: [[usize; 2]; 2],
    pub ext1: [[usize; 2]; 2],
}

impl Tables {
    pub fn euler(&self) -> [[i64; 2]; 2] {
        let mut out = [[0i64; 2]; 2];
        for i in 0..2 {
            for k in 0..2 {
                out[i][k] = self.hom[i][k] as i64 - self.ext1[i][k] as i64;
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct QuiverComparison {
    pub d: usize,
    /// `None` when some entry failed to stabilize.
    pub np: Option<Tables>,
    pub quiver: Tables,
    /// Stabilization reports in the order `(O,O), (O,O(1)), (O(1),O), (O(1),O(1))`.
    pub reports: Vec<((Sheaf, Sheaf), CechReport)>,
}

impl QuiverComparison {
    pub fn conclusive(&self) -> bool {
        self.np.is_some()
    }

    pub fn matches(&self) -> bool {
        self.np.as_ref() == Some(&self.quiver)
    }
}

/// Hom and Ext^1 between the indecomposable projectives of the Kronecker
/// quiver with `d` arrows, ordered `(A e_1, A e_0)` so the table is upper triangular.
pub fn quiver_tables(d: usize) -> Result<Tables> {
    let q = Quiver::kronecker(d);
    let a = path_algebra(&q)?;
    let p = [projective_module(&q, &a, 1)?, projective_module(&q, &a, 0)?];
    let mut t = Tables {
        hom: [[0; 2]; 2],
        ext1: [[0; 2]; 2],
    };
    for i in 0..2 {
        for k in 0..2 {
            t.hom[i][k] = hom_dim(&p[i], &p[k])?;
            t.ext1[i][k] = ext1_dim(&p[i], &p[k])?;
        }
    }
    Ok(t)
}

/// The four `Hom/Ext^1` dimensions on the NP side, computed concurrently, and
/// the quiver side for comparison (`O ↔ A e_1`, `O(1) ↔ A e_0`).
pub fn quiver_compare(d: usize, params: &CechParams) -> Result<QuiverComparison> {
    let j = JouanolouCover::new(d)?;
    let pairs = [(Sheaf::O, Sheaf::O), (Sheaf::O, Sheaf::O1), (Sheaf::O1, Sheaf::O), (Sheaf::O1, Sheaf::O1)];
    let reports: Vec<CechReport> = pairs
        .par_iter()
        .map(|&(e, f)| np_cohomology(&j, e, f, params))
        .collect::<Result<_>>()?;
    let mut np = Some(Tables {
        hom: [[0; 2]; 2],
        ext1: [[0; 2]; 2],
    });
    for (k, r) in reports.iter().enumerate() {
        let (a, b) = (k / 2, k % 2);
        match (r.value(0), r.value(1), np.as_mut()) {
            (Some(h), Some(e), Some(t)) => {
                t.hom[a][b] = h;
                t.ext1[a][b] = e;
            }
            _ => np = None,
        }
    }
    Ok(QuiverComparison {
        d,
        np,
        quiver: quiver_tables(d)?,
        reports: pairs.into_iter().zip(reports).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K0Pairing {
    pub matrix: [[i64; 2]; 2],
    pub det: i64,
}

impl K0Pairing {
    pub fn from_tables(t: &Tables) -> Self {
        let matrix = t.euler();
        let det = matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0];
        K0Pairing { matrix, det }
    }

    pub fn unimodular(&self) -> bool {
        self.det.abs() == 1
    }
}

/// Euler pairing on the generators; errors when the NP side is inconclusive.
pub fn k0_pairing(cmp: &QuiverComparison) -> Result<K0Pairing> {
    let t = cmp
        .np
        .as_ref()
        .ok_or_else(|| Error::Invalid("cohomology did not stabilize; the comparison is inconclusive".into()))?;
    Ok(K0Pairing::from_tables(t))
}
