//! Minimal relations, the homotopy relation they induce, and the fundamental
//! group of a bound quiver.
//!
//! The group is presented with one generator per arrow outside a BFS spanning
//! tree of the underlying graph; each minimal relation `Σ t_i u_i` contributes
//! relators `u_1 u_i^{-1}`. Everything is relative to the presentation given.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use super::basis::Algebra;
use super::quiver::{PathWord, Relation};
use crate::error::{Error, Result};

/// Default number of Tietze elimination rounds.
pub const DEFAULT_TIETZE_BUDGET: usize = 256;

/// Words larger than this stop the simplifier.
const MAX_WORD_LEN: usize = 4096;

/// Whether `r` is minimal: no nonempty proper sub-sum of its terms lies in `I`.
pub fn is_minimal(alg: &Algebra, r: &Relation) -> bool {
    proper_subset_in_ideal(alg, r).is_none()
}

fn proper_subset_in_ideal(alg: &Algebra, r: &Relation) -> Option<Vec<bool>> {
    let m = r.terms.len();
    if m >= 20 {
        // 2^m subsets; relations this long do not occur at desk scale
        return None;
    }
    (1u32..(1 << m) - 1).find_map(|mask| {
        let chosen: Vec<bool> = (0..m).map(|i| mask & (1 << i) != 0).collect();
        let terms: Vec<_> = r
            .terms
            .iter()
            .zip(&chosen)
            .filter(|(_, &c)| c)
            .map(|(t, _)| t.clone())
            .collect();
        alg.in_ideal(&terms).then_some(chosen)
    })
}

/// The generating relations that are minimal.
pub fn minimal_relations(alg: &Algebra) -> Vec<Relation> {
    alg.presentation()
        .relations
        .iter()
        .filter(|r| alg.relation_in_ideal(r) && is_minimal(alg, r))
        .cloned()
        .collect()
}

/// Splits a relation into minimal relations: if a proper sub-sum lies in `I`
/// then so does its complement, and both are split further.
pub fn minimal_parts(alg: &Algebra, r: &Relation) -> Vec<Relation> {
    match proper_subset_in_ideal(alg, r) {
        None => vec![r.clone()],
        Some(chosen) => {
            let (a, b): (Vec<_>, Vec<_>) = r.terms.iter().cloned().zip(chosen).partition(|(_, c)| *c);
            let mut out = Vec::new();
            for part in [a, b] {
                let terms = part.into_iter().map(|(t, _)| t).collect();
                let rel = Relation::new(terms).expect("sub-sum of a valid relation");
                out.extend(minimal_parts(alg, &rel));
            }
            out
        }
    }
}

/// A group word: letter `g` is `+(g + 1)`, its inverse `-(g + 1)`.
pub type Word = Vec<i32>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupVerdict {
    Trivial,
    Nontrivial,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Abelianization {
    pub free_rank: usize,
    /// Invariant factors of the torsion part, each > 1, dividing the next.
    pub torsion: Vec<u64>,
}

impl Abelianization {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FundamentalGroupReport {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<String>>,
    pub abelianization: Abelianization,
    pub verdict: GroupVerdict,
    pub simplified_generators: usize,
    pub note: String,
}

pub fn fundamental_group_report(alg: &Algebra) -> FundamentalGroupReport {
    fundamental_group_report_with_budget(alg, DEFAULT_TIETZE_BUDGET)
}

pub fn fundamental_group_report_with_budget(alg: &Algebra, budget: usize) -> FundamentalGroupReport {
    let q = alg.quiver();
    let tree = spanning_tree(alg);
    let mut gen_of_arrow = vec![None; q.arrows().len()];
    let mut generators = Vec::new();
    for (i, a) in q.arrows().iter().enumerate() {
        if !tree.contains(&i) {
            gen_of_arrow[i] = Some(generators.len());
            generators.push(a.id.clone());
        }
    }
    let word_of = |p: &PathWord| -> Word {
        p.arrows
            .iter()
            .filter_map(|&a| gen_of_arrow[a].map(|g| g as i32 + 1))
            .collect()
    };

    let mut relators: Vec<Word> = Vec::new();
    for r in &alg.presentation().relations {
        for part in minimal_parts(alg, r) {
            let first = word_of(&part.terms[0].1);
            for (_, u) in &part.terms[1..] {
                let mut w = first.clone();
                w.extend(invert(&word_of(u)));
                let w = free_reduce(&w);
                if !w.is_empty() {
                    relators.push(w);
                }
            }
        }
    }

    let abelianization = abelianize(generators.len(), &relators);
    let remaining = tietze_simplify(generators.len(), relators.clone(), budget);
    let verdict = if remaining == 0 {
        GroupVerdict::Trivial
    } else if !abelianization.is_trivial() {
        GroupVerdict::Nontrivial
    } else {
        GroupVerdict::Undetermined
    };
    debug_assert!(verdict != GroupVerdict::Trivial || abelianization.is_trivial());

    let render = |w: &Word| -> Vec<String> {
        w.iter()
            .map(|&l| {
                let g = &generators[l.unsigned_abs() as usize - 1];
                if l > 0 {
                    g.clone()
                } else {
                    format!("{g}^-1")
                }
            })
            .collect()
    };
    FundamentalGroupReport {
        relators: relators.iter().map(render).collect(),
        generators,
        abelianization,
        verdict,
        simplified_generators: remaining,
        note: "computed for the given presentation only; simple connectedness quantifies over all presentations"
            .into(),
    }
}

/// Tri-state answer for simple connectedness of the given presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Connectedness {
    Yes,
    No,
    Undetermined,
}

pub fn is_simply_connected(alg: &Algebra) -> Result<Connectedness> {
    if alg.quiver().has_oriented_cycle() {
        return Err(Error::NotTriangular);
    }
    Ok(match fundamental_group_report(alg).verdict {
        GroupVerdict::Trivial => Connectedness::Yes,
        GroupVerdict::Nontrivial => Connectedness::No,
        GroupVerdict::Undetermined => Connectedness::Undetermined,
    })
}

fn spanning_tree(alg: &Algebra) -> BTreeSet<usize> {
    let q = alg.quiver();
    let mut seen = vec![false; q.vertex_count()];
    let mut tree = BTreeSet::new();
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for (i, a) in q.arrows().iter().enumerate() {
            let next = if a.source == v {
                a.target
            } else if a.target == v {
                a.source
            } else {
                continue;
            };
            if !seen[next] {
                seen[next] = true;
                tree.insert(i);
                queue.push_back(next);
            }
        }
    }
    tree
}

fn invert(w: &[i32]) -> Word {
    w.iter().rev().map(|&l| -l).collect()
}

fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn cyclic_reduce(w: &[i32]) -> Word {
    let mut w = free_reduce(w);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.pop();
        w.remove(0);
    }
    w
}

/// Eliminates generators occurring exactly once in some relator. Returns the
/// number of generators left.
fn tietze_simplify(gen_count: usize, mut relators: Vec<Word>, budget: usize) -> usize {
    let mut alive: BTreeSet<i32> = (1..=gen_count as i32).collect();
    for _ in 0..budget {
        relators = relators
            .iter()
            .map(|r| cyclic_reduce(r))
            .filter(|r| !r.is_empty())
            .collect();
        let mut found = None;
        'search: for (ri, r) in relators.iter().enumerate() {
            for &g in &alive {
                let hits: Vec<usize> = (0..r.len()).filter(|&i| r[i].abs() == g).collect();
                if hits.len() == 1 {
                    found = Some((ri, g, hits[0]));
                    break 'search;
                }
            }
        }
        let Some((ri, g, pos)) = found else {
            break;
        };
        let r = relators.remove(ri);
        // rotate so that the occurrence comes first: r = g^ε · rest
        let mut rotated = r[pos..].to_vec();
        rotated.extend_from_slice(&r[..pos]);
        let eps = rotated[0].signum();
        let rest = rotated[1..].to_vec();
        // g^ε = rest^{-1}
        let image = if eps > 0 { invert(&rest) } else { rest };
        let image_inv = invert(&image);
        let mut too_long = false;
        for other in relators.iter_mut() {
            let mut w = Vec::new();
            for &l in other.iter() {
                if l == g {
                    w.extend_from_slice(&image);
                } else if l == -g {
                    w.extend_from_slice(&image_inv);
                } else {
                    w.push(l);
                }
            }
            if w.len() > MAX_WORD_LEN {
                too_long = true;
            }
            *other = free_reduce(&w);
        }
        alive.remove(&g);
        if too_long {
            break;
        }
    }
    alive.len()
}

fn abelianize(gen_count: usize, relators: &[Word]) -> Abelianization {
    let mut m: Vec<Vec<i64>> = relators
        .iter()
        .map(|w| {
            let mut row = vec![0i64; gen_count];
            for &l in w {
                row[l.unsigned_abs() as usize - 1] += l.signum() as i64;
            }
            row
        })
        .collect();
    let diag = smith_diagonal(&mut m, gen_count);
    let rank = diag.len();
    let mut torsion: Vec<u64> = diag.into_iter().map(|d| d.unsigned_abs()).filter(|&d| d > 1).collect();
    // normalise to a divisibility chain
    for i in 0..torsion.len() {
        for j in i + 1..torsion.len() {
            let g = gcd(torsion[i], torsion[j]);
            let l = torsion[i] / g * torsion[j];
            torsion[i] = g;
            torsion[j] = l;
        }
    }
    torsion.retain(|&d| d > 1);
    Abelianization {
        free_rank: gen_count - rank,
        torsion,
    }
}

/// Diagonalises an integer matrix by unimodular row/column operations and
/// returns its nonzero diagonal entries.
fn smith_diagonal(m: &mut [Vec<i64>], cols: usize) -> Vec<i64> {
    let rows = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        let mut clean = false;
        while !clean {
            clean = true;
            let pivot = m[t][t];
            for i in t + 1..rows {
                let q = m[i][t] / pivot;
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                if m[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = m[t][j] / pivot;
                if q != 0 {
                    for row in m.iter_mut() {
                        row[j] -= q * row[t];
                    }
                }
                if m[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                // move the smallest remainder into the pivot position
                let mut best = (t, t);
                for i in t..rows {
                    if m[i][t] != 0 && m[i][t].abs() < m[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t..cols {
                    if m[t][j] != 0 && m[t][j].abs() < m[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                m.swap(t, best.0);
                for row in m.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        diag.push(m[t][t]);
        t += 1;
    }
    diag
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
