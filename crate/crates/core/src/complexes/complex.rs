use serde::Serialize;

use super::projmap::ProjMap;
use crate::algebra::Algebra;
use crate::error::{Error, Result};

/// A bounded complex of projectives in degrees `[0, m]`.
///
/// `mults[i]` lists the vertex of each indecomposable summand of `X^i` and
/// `diffs[i]` is the differential `X^i → X^{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ProjComplex {
    m: usize,
    mults: Vec<Vec<usize>>,
    diffs: Vec<ProjMap>,
}

impl ProjComplex {
    /// Checks shapes and corners; use [`validate`] for `d² = 0` and
    /// minimality.
    pub fn new(alg: &Algebra, m: usize, mults: Vec<Vec<usize>>, diffs: Vec<ProjMap>) -> Result<Self> {
        if mults.len() != m + 1 || diffs.len() != m {
            return Err(Error::DimensionMismatch(format!(
                "window [0, {m}] needs {} terms and {m} differentials, got {} and {}",
                m + 1,
                mults.len(),
                diffs.len()
            )));
        }
        let n = alg.vertex_count();
        if let Some(&v) = mults.iter().flatten().find(|&&v| v >= n) {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.src() != mults[i].as_slice() || d.tgt() != mults[i + 1].as_slice() {
                return Err(Error::InvalidComplex {
                    degree: i,
                    detail: "differential shape does not match the terms".into(),
                });
            }
            ProjMap::from_entries(alg, d.src().to_vec(), d.tgt().to_vec(), d.entries().to_vec()).map_err(|e| {
                Error::InvalidComplex {
                    degree: i,
                    detail: e.to_string(),
                }
            })?;
        }
        Ok(Self { m, mults, diffs })
    }

    pub(crate) fn from_parts_unchecked(m: usize, mults: Vec<Vec<usize>>, diffs: Vec<ProjMap>) -> Self {
        debug_assert_eq!(mults.len(), m + 1);
        debug_assert_eq!(diffs.len(), m);
        Self { m, mults, diffs }
    }

    pub fn zero(m: usize) -> Self {
        let mults = vec![Vec::new(); m + 1];
        let diffs = (0..m)
            .map(|_| ProjMap::from_raw(Vec::new(), Vec::new(), Vec::new()))
            .collect();
        Self { m, mults, diffs }
    }

    /// Stalk complex `⊕ P_v` concentrated in `degree`.
    pub fn stalk(alg: &Algebra, m: usize, degree: usize, summands: Vec<usize>) -> Result<Self> {
        if degree > m {
            return Err(Error::WindowOverflow(m));
        }
        let mut mults = vec![Vec::new(); m + 1];
        mults[degree] = summands;
        let diffs = (0..m)
            .map(|i| ProjMap::zero(alg, mults[i].clone(), mults[i + 1].clone()))
            .collect();
        Self::new(alg, m, mults, diffs)
    }

    /// Two-term complex `P^0 → P^1` in `C_1`.
    pub fn two_term(alg: &Algebra, d: ProjMap) -> Result<Self> {
        let mults = vec![d.src().to_vec(), d.tgt().to_vec()];
        Self::new(alg, 1, mults, vec![d])
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn term(&self, i: usize) -> &[usize] {
        &self.mults[i]
    }

    pub fn terms(&self) -> &[Vec<usize>] {
        &self.mults
    }

    pub fn diff(&self, i: usize) -> &ProjMap {
        &self.diffs[i]
    }

    pub fn diffs(&self) -> &[ProjMap] {
        &self.diffs
    }

    pub fn is_zero(&self) -> bool {
        self.mults.iter().all(Vec::is_empty)
    }

    /// `counts[i][v]` = multiplicity of `P_v` in degree `i`.
    pub fn multiplicities(&self, vertex_count: usize) -> Vec<Vec<usize>> {
        self.mults
            .iter()
            .map(|t| {
                let mut c = vec![0; vertex_count];
                for &v in t {
                    c[v] += 1;
                }
                c
            })
            .collect()
    }

    /// `dim_k X^i` per degree.
    pub fn term_dims(&self, alg: &Algebra) -> Vec<usize> {
        self.mults
            .iter()
            .map(|t| t.iter().map(|&v| alg.projective_dim(v)).sum())
            .collect()
    }

    /// Total dimension `Σ dim X^i`.
    pub fn dim(&self, alg: &Algebra) -> usize {
        self.term_dims(alg).iter().sum()
    }

    pub fn summand_count(&self) -> usize {
        self.mults.iter().map(Vec::len).sum()
    }

    pub fn direct_sum(&self, alg: &Algebra, other: &ProjComplex) -> Result<ProjComplex> {
        if self.m != other.m {
            return Err(Error::DimensionMismatch(format!(
                "windows [0, {}] and [0, {}]",
                self.m, other.m
            )));
        }
        let mults = self
            .mults
            .iter()
            .zip(&other.mults)
            .map(|(a, b)| a.iter().chain(b).copied().collect())
            .collect();
        let diffs = self
            .diffs
            .iter()
            .zip(&other.diffs)
            .map(|(a, b)| a.direct_sum(alg, b))
            .collect();
        Ok(Self::from_parts_unchecked(self.m, mults, diffs))
    }

    /// Sorts the summands of each degree by vertex (stable), conjugating the
    /// differentials. The result is isomorphic to `self`.
    pub fn sorted(&self) -> ProjComplex {
        let perms: Vec<Vec<usize>> = self
            .mults
            .iter()
            .map(|t| {
                let mut idx: Vec<usize> = (0..t.len()).collect();
                idx.sort_by_key(|&k| t[k]);
                idx
            })
            .collect();
        let mults = self
            .mults
            .iter()
            .zip(&perms)
            .map(|(t, p)| p.iter().map(|&k| t[k]).collect())
            .collect();
        let diffs = self
            .diffs
            .iter()
            .enumerate()
            .map(|(i, d)| d.permute(&perms[i], &perms[i + 1]))
            .collect();
        Self::from_parts_unchecked(self.m, mults, diffs)
    }
}

/// Where validation failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    SquareNonzero { degree: usize },
    NotMinimal { degree: usize, source: usize, target: usize },
}

/// Checks `d^{i+1} d^i = 0` and that every entry lies in the radical.
pub fn validate(alg: &Algebra, x: &ProjComplex) -> std::result::Result<(), Violation> {
    check_square_zero(alg, x)?;
    for (i, d) in x.diffs.iter().enumerate() {
        if let Some((k, l)) = d.first_unit_entry(alg) {
            return Err(Violation::NotMinimal {
                degree: i,
                source: k,
                target: l,
            });
        }
        // entries between distinct vertices are radical automatically
        debug_assert!(d.is_radical(alg));
    }
    Ok(())
}

pub(crate) fn check_square_zero(alg: &Algebra, x: &ProjComplex) -> std::result::Result<(), Violation> {
    for i in 0..x.m.saturating_sub(1) {
        if !x.diffs[i].then(alg, &x.diffs[i + 1]).is_zero() {
            return Err(Violation::SquareNonzero { degree: i });
        }
    }
    Ok(())
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        match v {
            Violation::SquareNonzero { degree } => Error::InvalidComplex {
                degree,
                detail: "d∘d is nonzero".into(),
            },
            Violation::NotMinimal { degree, source, target } => Error::InvalidComplex {
                degree,
                detail: format!("entry ({source}, {target}) is not in the radical"),
            },
        }
    }
}

/// Re-indexes `x` into the window `[0, new_m]`, moving degree `i` to
/// `i + offset`.
pub fn shift_embed(alg: &Algebra, x: &ProjComplex, offset: usize, new_m: usize) -> Result<ProjComplex> {
    let top = (0..=x.m).rev().find(|&i| !x.mults[i].is_empty());
    let bottom = (0..=x.m).find(|&i| !x.mults[i].is_empty());
    if let (Some(top), Some(_)) = (top, bottom) {
        if top + offset > new_m {
            return Err(Error::WindowOverflow(new_m));
        }
    } else if offset > new_m {
        return Err(Error::WindowOverflow(new_m));
    }
    let mut mults = vec![Vec::new(); new_m + 1];
    for (i, t) in x.mults.iter().enumerate() {
        if !t.is_empty() {
            mults[i + offset] = t.clone();
        }
    }
    let diffs = (0..new_m)
        .map(|j| {
            if j >= offset && j - offset < x.m {
                x.diffs[j - offset].clone()
            } else {
                ProjMap::zero(alg, mults[j].clone(), mults[j + 1].clone())
            }
        })
        .collect();
    Ok(ProjComplex::from_parts_unchecked(new_m, mults, diffs))
}
