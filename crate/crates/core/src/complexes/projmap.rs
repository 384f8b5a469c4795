use serde::Serialize;

use crate::algebra::{AlgElem, Algebra};
use crate::error::{Error, Result};
use crate::exactla::{FieldElem, Mat};

/// A map between direct sums of indecomposable projectives
/// `⊕_k P_{src[k]} → ⊕_l P_{tgt[l]}`.
///
/// Entry `(k, l)` is the component `P_{src[k]} → P_{tgt[l]}`, an element of
/// `e_{tgt[l]} A e_{src[k]}` acting by left multiplication.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ProjMap {
    src: Vec<usize>,
    tgt: Vec<usize>,
    entries: Vec<AlgElem>,
}

impl ProjMap {
    pub fn zero(alg: &Algebra, src: Vec<usize>, tgt: Vec<usize>) -> Self {
        let entries = vec![alg.zero(); src.len() * tgt.len()];
        Self { src, tgt, entries }
    }

    /// Identity on `⊕ P_{v}` for `v` in `summands`.
    pub fn identity(alg: &Algebra, summands: Vec<usize>) -> Self {
        let mut m = Self::zero(alg, summands.clone(), summands.clone());
        for (k, &v) in summands.iter().enumerate() {
            m.set(k, k, alg.idempotent(v));
        }
        m
    }

    /// Builds from src-major entries, checking each lies in its corner.
    pub fn from_entries(alg: &Algebra, src: Vec<usize>, tgt: Vec<usize>, entries: Vec<AlgElem>) -> Result<Self> {
        if entries.len() != src.len() * tgt.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {}x{} block",
                entries.len(),
                src.len(),
                tgt.len()
            )));
        }
        let m = Self { src, tgt, entries };
        for k in 0..m.src.len() {
            for l in 0..m.tgt.len() {
                let e = m.entry(k, l);
                if e.len() != alg.dim() || !alg.in_corner(e, m.tgt[l], m.src[k]) {
                    return Err(Error::InvalidInput(format!(
                        "entry ({k}, {l}) is not in e_{}Ae_{}",
                        alg.quiver().vertex_id(m.tgt[l]),
                        alg.quiver().vertex_id(m.src[k])
                    )));
                }
            }
        }
        Ok(m)
    }

    pub fn src(&self) -> &[usize] {
        &self.src
    }

    pub fn tgt(&self) -> &[usize] {
        &self.tgt
    }

    pub fn entry(&self, k: usize, l: usize) -> &[FieldElem] {
        &self.entries[k * self.tgt.len() + l]
    }

    pub fn set(&mut self, k: usize, l: usize, x: AlgElem) {
        let n = self.tgt.len();
        self.entries[k * n + l] = x;
    }

    pub fn entries(&self) -> &[AlgElem] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.iter().all(|&c| c == 0))
    }

    /// `self` followed by `other`.
    pub fn then(&self, alg: &Algebra, other: &ProjMap) -> ProjMap {
        assert_eq!(self.tgt, other.src, "composable maps");
        let mut out = ProjMap::zero(alg, self.src.clone(), other.tgt.clone());
        for k in 0..self.src.len() {
            for n in 0..other.tgt.len() {
                let mut acc = alg.zero();
                for l in 0..self.tgt.len() {
                    let a = self.entry(k, l);
                    let b = other.entry(l, n);
                    if a.iter().all(|&c| c == 0) || b.iter().all(|&c| c == 0) {
                        continue;
                    }
                    alg.add_scaled(&mut acc, &alg.mul(b, a), 1);
                }
                out.set(k, n, acc);
            }
        }
        out
    }

    pub fn add_scaled(&mut self, alg: &Algebra, other: &ProjMap, c: FieldElem) {
        assert!(self.src == other.src && self.tgt == other.tgt);
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            alg.add_scaled(a, b, c);
        }
    }

    pub fn scale(&self, alg: &Algebra, c: FieldElem) -> ProjMap {
        let f = alg.field();
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            for x in e.iter_mut() {
                *x = f.mul(*x, c);
            }
        }
        out
    }

    /// Whether every entry lies in the radical.
    pub fn is_radical(&self, alg: &Algebra) -> bool {
        self.entries.iter().all(|e| alg.is_radical(e))
    }

    /// First entry with a nonzero trivial-path coefficient.
    pub fn first_unit_entry(&self, alg: &Algebra) -> Option<(usize, usize)> {
        for k in 0..self.src.len() {
            for l in 0..self.tgt.len() {
                if self.src[k] == self.tgt[l] && alg.trivial_coeff(self.entry(k, l), self.src[k]) != 0 {
                    return Some((k, l));
                }
            }
        }
        None
    }

    /// Matrix of trivial-path coefficients between the summands at `v`;
    /// rows index target summands, columns source summands.
    pub fn top_block(&self, alg: &Algebra, v: usize) -> Mat {
        let ks: Vec<usize> = (0..self.src.len()).filter(|&k| self.src[k] == v).collect();
        let ls: Vec<usize> = (0..self.tgt.len()).filter(|&l| self.tgt[l] == v).collect();
        let mut m = Mat::zeros(alg.field(), ls.len(), ks.len());
        for (r, &l) in ls.iter().enumerate() {
            for (c, &k) in ks.iter().enumerate() {
                m.set(r, c, alg.trivial_coeff(self.entry(k, l), v));
            }
        }
        m
    }

    /// The underlying k-linear map in the path bases of `⊕ e_x A`.
    pub fn to_linear(&self, alg: &Algebra) -> Mat {
        let f = alg.field();
        let offsets = |summands: &[usize]| {
            let mut acc = 0;
            summands
                .iter()
                .map(|&v| {
                    let o = acc;
                    acc += alg.projective_dim(v);
                    o
                })
                .collect::<Vec<_>>()
        };
        let so = offsets(&self.src);
        let to = offsets(&self.tgt);
        let rows: usize = self.tgt.iter().map(|&v| alg.projective_dim(v)).sum();
        let cols: usize = self.src.iter().map(|&v| alg.projective_dim(v)).sum();
        let mut m = Mat::zeros(f, rows, cols);
        for k in 0..self.src.len() {
            let pr = alg.projective_range(self.src[k]);
            for l in 0..self.tgt.len() {
                let e = self.entry(k, l);
                if e.iter().all(|&c| c == 0) {
                    continue;
                }
                let tr = alg.projective_range(self.tgt[l]);
                for (j, p) in pr.clone().enumerate() {
                    for (i, &c) in e.iter().enumerate() {
                        if c == 0 {
                            continue;
                        }
                        for &(q, d) in alg.mul_basis(i, p) {
                            debug_assert!(tr.contains(&q));
                            let r = to[l] + (q - tr.start);
                            let cur = m.get(r, so[k] + j);
                            m.set(r, so[k] + j, f.mul_add(cur, c, d));
                        }
                    }
                }
            }
        }
        m
    }

    /// Keeps the listed source and target summands.
    pub fn restrict(&self, keep_src: &[usize], keep_tgt: &[usize]) -> ProjMap {
        let mut entries = Vec::with_capacity(keep_src.len() * keep_tgt.len());
        for &k in keep_src {
            for &l in keep_tgt {
                entries.push(self.entry(k, l).to_vec());
            }
        }
        ProjMap {
            src: keep_src.iter().map(|&k| self.src[k]).collect(),
            tgt: keep_tgt.iter().map(|&l| self.tgt[l]).collect(),
            entries,
        }
    }

    pub fn direct_sum(&self, alg: &Algebra, other: &ProjMap) -> ProjMap {
        let mut src = self.src.clone();
        src.extend(&other.src);
        let mut tgt = self.tgt.clone();
        tgt.extend(&other.tgt);
        let mut out = ProjMap::zero(alg, src, tgt);
        let (s0, t0) = (self.src.len(), self.tgt.len());
        for k in 0..s0 {
            for l in 0..t0 {
                out.set(k, l, self.entry(k, l).to_vec());
            }
        }
        for k in 0..other.src.len() {
            for l in 0..other.tgt.len() {
                out.set(s0 + k, t0 + l, other.entry(k, l).to_vec());
            }
        }
        out
    }

    /// Reorders summands: entry `(k, l)` of the result is entry
    /// `(src_perm[k], tgt_perm[l])` of `self`.
    pub fn permute(&self, src_perm: &[usize], tgt_perm: &[usize]) -> ProjMap {
        self.restrict(src_perm, tgt_perm)
    }
}

impl ProjMap {
    pub(crate) fn from_raw(src: Vec<usize>, tgt: Vec<usize>, entries: Vec<AlgElem>) -> Self {
        Self { src, tgt, entries }
    }
}
