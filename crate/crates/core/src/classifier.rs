//! Derived representation type verdicts with certificates, and the
//! brute-force census of small minimal complexes.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::algebra::{Algebra, Presentation};
use crate::complexes::{
    check_dim_bound, cohomology, hr_dim_sandwich, is_indecomposable, is_isomorphic, IsoMode, ProjComplex, ProjMap,
    SearchConfig,
};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::exactla::{Field, FieldElem, Mat};
use crate::gentle::{band_complex, find_bands, gentle_report, vossieck_counts, witness_family, WitnessFamily};
use crate::modules::{modules_isomorphic, presentation_complex, Representation};

/// Builds the presentation over `F_p`.
pub fn algebra_at(pres: &Presentation, p: u32) -> Result<Algebra> {
    Algebra::build(pres.with_field(Field::new(p)?)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusParams {
    pub m: usize,
    pub caps: Vec<usize>,
    pub prime: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusClass {
    pub representative: ProjComplex,
    pub cohomology: Vec<usize>,
    pub dim: usize,
    pub hl: usize,
    pub hw: usize,
    pub hr: usize,
    pub indecomposable: bool,
    /// Enumerated complexes isomorphic to the representative.
    pub members: usize,
}

impl CensusClass {
    /// Nonzero terms in a single degree.
    pub fn is_stalk(&self) -> bool {
        self.representative.terms().iter().filter(|t| !t.is_empty()).count() == 1
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusTable {
    pub params: CensusParams,
    /// Nonzero complexes enumerated (all minimal with `d² = 0`).
    pub enumerated: usize,
    pub classes: Vec<CensusClass>,
    pub dim_bound_violations: usize,
    pub sandwich_violations: usize,
}

impl CensusTable {
    pub fn indecomposables(&self) -> impl Iterator<Item = &CensusClass> {
        self.classes.iter().filter(|c| c.indecomposable)
    }

    pub fn indecomposable_count(&self) -> usize {
        self.indecomposables().count()
    }

    pub fn non_stalk_indecomposable_count(&self) -> usize {
        self.indecomposables().filter(|c| !c.is_stalk()).count()
    }
}

/// Sorted multisets of vertices of size at most `cap`.
fn multisets(n: usize, cap: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..cap {
        let mut next = Vec::new();
        for s in &frontier {
            let start = s.last().copied().unwrap_or(0);
            for v in start..n {
                let mut t: Vec<usize> = s.clone();
                t.push(v);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Free radical coordinates `(degree, k, l, basis index)` for fixed terms.
fn coordinates(alg: &Algebra, terms: &[Vec<usize>]) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 0..terms.len() - 1 {
        for (k, &s) in terms[i].iter().enumerate() {
            for (l, &t) in terms[i + 1].iter().enumerate() {
                for b in alg.corner(t, s) {
                    if !alg.basis()[b].is_trivial() {
                        out.push((i, k, l, b));
                    }
                }
            }
        }
    }
    out
}

fn term_choices(alg: &Algebra, m: usize, caps: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let n = alg.vertex_count();
    let mut all = vec![Vec::new()];
    for &cap in caps.iter().take(m + 1) {
        let sets = multisets(n, cap);
        all = all
            .into_iter()
            .flat_map(|prefix: Vec<Vec<usize>>| {
                sets.iter().map(move |s| {
                    let mut t = prefix.clone();
                    t.push(s.clone());
                    t
                })
            })
            .collect();
    }
    all.retain(|t| t.iter().any(|s| !s.is_empty()));
    all
}

/// Every nonzero minimal complex over `alg` in the window `[0, m]` whose
/// degree-`i` term has at most `caps[i]` summands.
pub fn enumerate_raw(alg: &Algebra, m: usize, caps: &[usize], budget: u64) -> Result<Vec<Vec<ProjComplex>>> {
    if caps.len() != m + 1 {
        return Err(Error::InvalidInput(format!("{} caps given for window [0, {m}]", caps.len())));
    }
    let p = alg.field().p() as u64;
    let choices = term_choices(alg, m, caps);
    let mut total = 0u64;
    for t in &choices {
        let r = coordinates(alg, t).len() as u32;
        total = total.saturating_add(p.checked_pow(r).unwrap_or(u64::MAX));
        if total > budget {
            return Err(Error::BudgetExceeded(format!(
                "census needs more than {budget} differential assignments"
            )));
        }
    }
    choices
        .par_iter()
        .map(|t| enumerate_terms(alg, m, t))
        .collect()
}

fn enumerate_terms(alg: &Algebra, m: usize, terms: &[Vec<usize>]) -> Result<Vec<ProjComplex>> {
    let field = alg.field();
    let coords = coordinates(alg, terms);
    let mut values = vec![0 as FieldElem; coords.len()];
    let mut out = Vec::new();
    loop {
        let mut diffs: Vec<ProjMap> = (0..m)
            .map(|i| ProjMap::zero(alg, terms[i].clone(), terms[i + 1].clone()))
            .collect();
        for (&(i, k, l, b), &v) in coords.iter().zip(&values) {
            if v != 0 {
                let mut e = diffs[i].entry(k, l).to_vec();
                e[b] = v;
                diffs[i].set(k, l, e);
            }
        }
        let square_zero = (0..m.saturating_sub(1)).all(|i| diffs[i].then(alg, &diffs[i + 1]).is_zero());
        if square_zero {
            out.push(ProjComplex::new(alg, m, terms.to_vec(), diffs)?);
        }
        // odometer
        let mut j = 0;
        loop {
            if j == values.len() {
                return Ok(out);
            }
            values[j] = field.add(values[j], 1);
            if values[j] != 0 {
                break;
            }
            j += 1;
        }
    }
}

/// Groups complexes with equal terms into isomorphism classes.
fn group_bucket(alg: &Algebra, raw: Vec<ProjComplex>, cfg: &SearchConfig) -> Result<Vec<(ProjComplex, Vec<usize>, usize)>> {
    let mut reps: Vec<(ProjComplex, Vec<usize>, usize)> = Vec::new();
    for x in raw {
        let h = cohomology(alg, &x).h;
        let mut matched = false;
        for (rep, rh, count) in reps.iter_mut() {
            if *rh != h {
                continue;
            }
            if is_isomorphic(alg, rep, &x, IsoMode::Exhaustive, cfg)?.isomorphic {
                *count += 1;
                matched = true;
                break;
            }
        }
        if !matched {
            reps.push((x, h, 1));
        }
    }
    Ok(reps)
}

fn sub_multisets(s: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut i = 0;
    while i < s.len() {
        let v = s[i];
        let run = s[i..].iter().take_while(|&&x| x == v).count();
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=run).map(move |c| {
                    let mut t = prefix.clone();
                    t.extend(std::iter::repeat(v).take(c));
                    t
                })
            })
            .collect();
        i += run;
    }
    out
}

fn multiset_minus(s: &[usize], t: &[usize]) -> Vec<usize> {
    let mut out = s.to_vec();
    for v in t {
        let pos = out.iter().position(|x| x == v).expect("sub-multiset");
        out.remove(pos);
    }
    out
}

/// Enumerates the census, groups it into isomorphism classes with
/// exhaustive chain-map search and marks a class decomposable exactly when
/// it is isomorphic to a direct sum of two census classes.
pub fn enumerate_cm(alg: &Algebra, m: usize, caps: &[usize], config: &Config) -> Result<CensusTable> {
    let cfg = SearchConfig::from(config);
    let buckets = enumerate_raw(alg, m, caps, config.census_budget)?;
    let enumerated = buckets.iter().map(Vec::len).sum();

    let violations: Vec<(usize, usize)> = buckets
        .par_iter()
        .flatten()
        .map(|x| {
            let dim_bad = match check_dim_bound(alg, x) {
                Ok(_) => 0,
                Err(Error::InvariantViolation(_)) => 1,
                Err(e) => return Err(e),
            };
            let sandwich_bad = match hr_dim_sandwich(alg, x) {
                Ok(s) => (!(s.lower <= s.dim as f64 && s.dim as u64 <= s.upper)) as usize,
                Err(Error::InvariantViolation(_)) => 1,
                Err(e) => return Err(e),
            };
            Ok((dim_bad, sandwich_bad))
        })
        .collect::<Result<_>>()?;

    let grouped: Vec<Vec<(ProjComplex, Vec<usize>, usize)>> = buckets
        .into_par_iter()
        .map(|raw| group_bucket(alg, raw, &cfg))
        .collect::<Result<_>>()?;
    let classes: Vec<(ProjComplex, Vec<usize>, usize)> = grouped.into_iter().flatten().collect();

    let mut by_terms: BTreeMap<Vec<Vec<usize>>, Vec<usize>> = BTreeMap::new();
    for (i, (x, _, _)) in classes.iter().enumerate() {
        by_terms.entry(x.terms().to_vec()).or_default().push(i);
    }
    let decomposable: Vec<bool> = (0..classes.len())
        .into_par_iter()
        .map(|i| is_census_sum(alg, &classes, &by_terms, i, &cfg))
        .collect::<Result<_>>()?;

    let classes = classes
        .into_iter()
        .zip(decomposable)
        .map(|((x, h, members), dec)| {
            let c = cohomology(alg, &x);
            CensusClass {
                cohomology: h,
                dim: c.dim,
                hl: c.hl,
                hw: c.hw,
                hr: c.hr,
                indecomposable: !dec,
                members,
                representative: x,
            }
        })
        .collect();
    Ok(CensusTable {
        params: CensusParams {
            m,
            caps: caps.to_vec(),
            prime: alg.field().p(),
        },
        enumerated,
        classes,
        dim_bound_violations: violations.iter().map(|v| v.0).sum(),
        sandwich_violations: violations.iter().map(|v| v.1).sum(),
    })
}

fn is_census_sum(
    alg: &Algebra,
    classes: &[(ProjComplex, Vec<usize>, usize)],
    by_terms: &BTreeMap<Vec<Vec<usize>>, Vec<usize>>,
    i: usize,
    cfg: &SearchConfig,
) -> Result<bool> {
    let (x, h, _) = &classes[i];
    let terms = x.terms();
    let parts: Vec<Vec<Vec<usize>>> = terms.iter().map(|t| sub_multisets(t)).collect();
    let mut choice = vec![0usize; terms.len()];
    loop {
        let left: Vec<Vec<usize>> = choice.iter().zip(&parts).map(|(&c, p)| p[c].clone()).collect();
        let right: Vec<Vec<usize>> = terms.iter().zip(&left).map(|(t, l)| multiset_minus(t, l)).collect();
        let proper = left.iter().any(|l| !l.is_empty()) && right.iter().any(|r| !r.is_empty());
        // each unordered split is visited twice; keep one orientation
        if proper && left <= right {
            if let (Some(ys), Some(zs)) = (by_terms.get(&left), by_terms.get(&right)) {
                for &y in ys {
                    for &z in zs {
                        let hy = &classes[y].1;
                        let hz = &classes[z].1;
                        if hy.iter().zip(hz).map(|(a, b)| a + b).ne(h.iter().copied()) {
                            continue;
                        }
                        let sum = classes[y].0.direct_sum(alg, &classes[z].0)?;
                        if is_isomorphic(alg, x, &sum, IsoMode::Exhaustive, cfg)?.isomorphic {
                            return Ok(true);
                        }
                    }
                }
            }
        }
        let mut j = 0;
        loop {
            if j == choice.len() {
                return Ok(false);
            }
            choice[j] += 1;
            if choice[j] < parts[j].len() {
                break;
            }
            choice[j] = 0;
            j += 1;
        }
    }
}

/// A presentation complex of one family member and its checks.
#[derive(Clone, Debug, Serialize)]
pub struct PresentationCheck {
    pub parameter: FieldElem,
    pub module_dim: usize,
    pub hr: usize,
    pub lower: usize,
    pub upper: usize,
    pub indecomposable: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RepInfiniteEvidence {
    pub kind: String,
    pub dims: Vec<usize>,
    /// Parameters for which the family is valid.
    pub valid_parameters: usize,
    pub sample: Vec<FieldElem>,
    #[serde(skip)]
    pub modules: Vec<Representation>,
    pub pairwise_non_isomorphic: bool,
    pub presentations: Vec<PresentationCheck>,
}

const SAMPLE: usize = 8;

/// A one-parameter family on the unique-cycle arrows of a minimal
/// undirected cycle: thin modules with one arrow scaled by `λ`.
fn thin_cycle_family(alg: &Algebra) -> Option<(Vec<usize>, Vec<Box<dyn Fn(FieldElem) -> Vec<Mat> + '_>>)> {
    let q = alg.quiver();
    let f = alg.field();
    let cycle = shortest_cycle(alg)?;
    let n = q.vertex_count();
    let mut dims = vec![0; n];
    for &(e, _) in &cycle {
        dims[q.arrow(e).source] = 1;
        dims[q.arrow(e).target] = 1;
    }
    let scaled = cycle[0].0;
    let on: Vec<usize> = cycle.iter().map(|&(e, _)| e).collect();
    let dims2 = dims.clone();
    let build = move |lambda: FieldElem| -> Vec<Mat> {
        q.arrows()
            .iter()
            .enumerate()
            .map(|(a, arr)| {
                let mut m = Mat::zeros(f, dims2[arr.target], dims2[arr.source]);
                if on.contains(&a) {
                    m.set(0, 0, if a == scaled { lambda } else { 1 });
                }
                m
            })
            .collect()
    };
    Some((dims, vec![Box::new(build)]))
}

/// Shortest cycle of the underlying graph as `(arrow, forward)` pairs.
fn shortest_cycle(alg: &Algebra) -> Option<Vec<(usize, bool)>> {
    let q = alg.quiver();
    let n = q.vertex_count();
    let mut best: Option<Vec<(usize, bool)>> = None;
    for (e, arr) in q.arrows().iter().enumerate() {
        // a path from arr.target back to arr.source avoiding e closes a cycle
        let mut prev: Vec<Option<(usize, usize, bool)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[arr.target] = true;
        let mut queue = std::collections::VecDeque::from([arr.target]);
        while let Some(v) = queue.pop_front() {
            for (g, a) in q.arrows().iter().enumerate() {
                if g == e {
                    continue;
                }
                let step = if a.source == v {
                    Some((a.target, true))
                } else if a.target == v {
                    Some((a.source, false))
                } else {
                    None
                };
                if let Some((w, fwd)) = step {
                    if !seen[w] {
                        seen[w] = true;
                        prev[w] = Some((v, g, fwd));
                        queue.push_back(w);
                    }
                }
            }
        }
        if arr.source == arr.target || seen[arr.source] {
            let mut walk = vec![(e, true)];
            let mut v = arr.source;
            let mut back = Vec::new();
            while v != arr.target {
                let (u, g, fwd) = prev[v].expect("bfs tree");
                back.push((g, fwd));
                v = u;
            }
            back.reverse();
            walk.extend(back);
            if best.as_ref().is_none_or(|b| walk.len() < b.len()) {
                best = Some(walk);
            }
        }
    }
    best
}

/// The four-subspace family at a vertex with at least four neighbours.
fn star_family(alg: &Algebra) -> Option<(Vec<usize>, usize)> {
    let q = alg.quiver();
    let n = q.vertex_count();
    let center = (0..n).find(|&v| {
        let mut nb: Vec<usize> = q
            .arrows()
            .iter()
            .filter_map(|a| {
                if a.source == v && a.target != v {
                    Some(a.target)
                } else if a.target == v && a.source != v {
                    Some(a.source)
                } else {
                    None
                }
            })
            .collect();
        nb.sort_unstable();
        nb.dedup();
        nb.len() >= 4
    })?;
    let mut dims = vec![0; n];
    dims[center] = 2;
    let mut count = 0;
    for a in q.arrows() {
        let other = if a.source == center { a.target } else if a.target == center { a.source } else { continue };
        if other != center && dims[other] == 0 && count < 4 {
            dims[other] = 1;
            count += 1;
        }
    }
    Some((dims, center))
}

fn star_module(alg: &Algebra, dims: &[usize], center: usize, lambda: FieldElem) -> Vec<Mat> {
    let q = alg.quiver();
    let f = alg.field();
    let lines: [(FieldElem, FieldElem); 4] = [(1, 0), (0, 1), (1, 1), (1, lambda)];
    let mut used = 0;
    let mut assigned = vec![None; q.vertex_count()];
    q.arrows()
        .iter()
        .map(|a| {
            let mut m = Mat::zeros(f, dims[a.target], dims[a.source]);
            let other = if a.source == center { a.target } else { a.source };
            let touches = (a.source == center) != (a.target == center) && dims[other] == 1;
            if touches {
                let idx = *assigned[other].get_or_insert_with(|| {
                    used += 1;
                    used - 1
                });
                let (x, y) = lines[idx];
                if a.target == center {
                    m.set(0, 0, x);
                    m.set(1, 0, y);
                } else {
                    // functional vanishing on the line
                    m.set(0, 0, y);
                    m.set(0, 1, f.neg(x));
                }
            }
            m
        })
        .collect()
}

/// Searches for a one-parameter family of pairwise non-isomorphic modules
/// of equal dimension at most `dim_cap`, and checks their presentation
/// complexes in `C_1`.
pub fn rep_infinite_evidence(alg: &Algebra, dim_cap: usize, config: &Config) -> Result<Option<RepInfiniteEvidence>> {
    let f = alg.field();
    let p = f.p();
    let mut candidates: Vec<(String, Vec<usize>, Vec<FieldElem>, Box<dyn Fn(FieldElem) -> Vec<Mat> + '_>)> = Vec::new();
    if let Some((dims, mut builders)) = thin_cycle_family(alg) {
        let b = builders.pop().expect("builder");
        candidates.push(("thin-cycle".into(), dims, (1..p).collect(), b));
    }
    if let Some((dims, center)) = star_family(alg) {
        let d2 = dims.clone();
        candidates.push((
            "four-subspace".into(),
            dims,
            (2..p).collect(),
            Box::new(move |l| star_module(alg, &d2, center, l)),
        ));
    }
    for (kind, dims, params, build) in candidates {
        if dims.iter().sum::<usize>() > dim_cap {
            continue;
        }
        let valid: Vec<(FieldElem, Representation)> = params
            .iter()
            .filter_map(|&l| Representation::new(alg, dims.clone(), build(l)).ok().map(|m| (l, m)))
            .collect();
        if valid.len() != params.len() || valid.len() < 2 {
            continue;
        }
        let sample: Vec<(FieldElem, Representation)> = valid.iter().take(SAMPLE).cloned().collect();
        let mut distinct = true;
        for i in 0..sample.len() {
            for j in i + 1..sample.len() {
                if modules_isomorphic(alg, &sample[i].1, &sample[j].1, config.seed, config.iso_budget) {
                    distinct = false;
                }
            }
        }
        if !distinct {
            continue;
        }
        let cfg = SearchConfig::from(config);
        let a2 = alg.dim() * alg.dim();
        let mut presentations = Vec::new();
        for (l, m) in &sample {
            let x = presentation_complex(alg, m)?;
            let c = cohomology(alg, &x);
            let d = m.dim();
            let (lower, upper) = (d, 2 * a2 * d);
            if c.hr < lower || c.hr > upper {
                return Err(Error::InvariantViolation(format!(
                    "presentation complex of a {d}-dimensional module has hr {}",
                    c.hr
                )));
            }
            let ind = is_indecomposable(alg, &x, &cfg)?;
            presentations.push(PresentationCheck {
                parameter: *l,
                module_dim: d,
                hr: c.hr,
                lower,
                upper,
                indecomposable: ind.indecomposable,
            });
        }
        if presentations.iter().any(|p| !p.indecomposable) {
            continue;
        }
        return Ok(Some(RepInfiniteEvidence {
            kind,
            dims,
            valid_parameters: valid.len(),
            sample: sample.iter().map(|s| s.0).collect(),
            modules: sample.into_iter().map(|s| s.1).collect(),
            pairwise_non_isomorphic: true,
            presentations,
        }));
    }
    Ok(None)
}

/// Dynkin type of the underlying graph, if it is one.
pub fn dynkin_type(alg: &Algebra) -> Option<String> {
    let q = alg.quiver();
    let n = q.vertex_count();
    if !q.is_connected() || q.betti_number() != 0 {
        return None;
    }
    let mut adj = vec![Vec::new(); n];
    for a in q.arrows() {
        adj[a.source].push(a.target);
        adj[a.target].push(a.source);
    }
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    match branch.as_slice() {
        [] => Some(format!("A_{n}")),
        [c] if adj[*c].len() == 3 => {
            let mut arms: Vec<usize> = adj[*c]
                .iter()
                .map(|&start| {
                    let (mut prev, mut v, mut len) = (*c, start, 1);
                    while adj[v].len() == 2 {
                        let next = if adj[v][0] == prev { adj[v][1] } else { adj[v][0] };
                        prev = v;
                        v = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            arms.sort_unstable();
            match (arms[0], arms[1], arms[2]) {
                (1, 1, _) => Some(format!("D_{n}")),
                (1, 2, 2) => Some("E_6".into()),
                (1, 2, 3) => Some("E_7".into()),
                (1, 2, 4) => Some("E_8".into()),
                _ => None,
            }
        }
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    DerivedDiscrete,
    StronglyDerivedUnbounded,
    Unknown,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::DerivedDiscrete => "derived-discrete",
            Verdict::StronglyDerivedUnbounded => "strongly-derived-unbounded",
            Verdict::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", content = "data", rename_all = "kebab-case")]
pub enum Certificate {
    Dynkin {
        dynkin_type: String,
    },
    VossieckCounts {
        clockwise: usize,
        counterclockwise: usize,
    },
    NoBands {
        max_letters: usize,
        provably_none: bool,
    },
    BandWitness {
        band: String,
        family: WitnessFamily,
    },
    RepInfinite(RepInfiniteEvidence),
    None,
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Dynkin { .. } => "dynkin",
            Certificate::VossieckCounts { .. } => "vossieck-counts",
            Certificate::NoBands { .. } => "no-bands",
            Certificate::BandWitness { .. } => "band-witness",
            Certificate::RepInfinite(_) => "rep-infinite",
            Certificate::None => "none",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub verdict: Verdict,
    pub certificate: Certificate,
    pub notes: Vec<String>,
}

/// Module dimension bound for [`rep_infinite_evidence`] inside [`classify`].
pub const EVIDENCE_DIM_CAP: usize = 12;

pub fn classify(pres: &Presentation) -> Result<ClassificationReport> {
    classify_with(pres, &Config::default())
}

pub fn classify_with(pres: &Presentation, config: &Config) -> Result<ClassificationReport> {
    let alg = Algebra::build(pres.clone())?;
    let cfg = SearchConfig::from(config);
    let mut notes = Vec::new();

    if pres.is_hereditary() {
        if let Some(t) = dynkin_type(&alg) {
            notes.push("hereditary of Dynkin type, hence piecewise hereditary of Dynkin type".into());
            return Ok(ClassificationReport {
                verdict: Verdict::DerivedDiscrete,
                certificate: Certificate::Dynkin { dynkin_type: t },
                notes,
            });
        }
        notes.push("hereditary, underlying graph not Dynkin".into());
    }

    let gentle = gentle_report(&alg);
    if gentle.is_gentle {
        let max_letters = 4 * alg.quiver().arrows().len().max(1);
        let search = find_bands(&alg, max_letters)?;
        let counts = vossieck_counts(&alg).ok();
        if let Some(c) = counts {
            if c.differ() != search.bands.is_empty() {
                return Err(Error::InvariantViolation(
                    "relation counts and band search disagree on a one-cycle gentle algebra".into(),
                ));
            }
        }
        if let Some(band) = search.bands.first() {
            let lambdas: Vec<FieldElem> = (1..alg.field().p()).take(3).collect();
            let family = witness_family(&alg, band, &[1, 2, 3], &lambdas, &cfg)?;
            notes.push(format!("gentle with band {}", band.label(&alg)));
            return Ok(ClassificationReport {
                verdict: Verdict::StronglyDerivedUnbounded,
                certificate: Certificate::BandWitness {
                    band: band.label(&alg),
                    family,
                },
                notes,
            });
        }
        if search.provably_none {
            notes.push("gentle without bands".into());
            let certificate = match counts {
                Some(c) => {
                    notes.push("one cycle with different clockwise and counterclockwise relation counts".into());
                    Certificate::VossieckCounts {
                        clockwise: c.clockwise,
                        counterclockwise: c.counterclockwise,
                    }
                }
                None => Certificate::NoBands {
                    max_letters,
                    provably_none: true,
                },
            };
            return Ok(ClassificationReport {
                verdict: Verdict::DerivedDiscrete,
                certificate,
                notes,
            });
        }
        notes.push(format!("gentle; no band up to {max_letters} letters but none excluded"));
    }

    if let Some(ev) = rep_infinite_evidence(&alg, EVIDENCE_DIM_CAP, config)? {
        notes.push(format!("representation-infinite: {} family", ev.kind));
        return Ok(ClassificationReport {
            verdict: Verdict::StronglyDerivedUnbounded,
            certificate: Certificate::RepInfinite(ev),
            notes,
        });
    }
    notes.push("no certificate found; the algebra is either derived discrete or strongly derived unbounded".into());
    Ok(ClassificationReport {
        verdict: Verdict::Unknown,
        certificate: Certificate::None,
        notes,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StatementStatus {
    Computed,
    TheoremBacked,
    Undecided,
}

#[derive(Clone, Debug, Serialize)]
pub struct DichotomyStatement {
    pub claim: String,
    pub status: StatementStatus,
    pub data: serde_json::Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct DichotomyReport {
    pub verdict: Verdict,
    pub m: usize,
    pub statements: Vec<DichotomyStatement>,
}

/// Census parameters used on the discrete side.
#[derive(Clone, Debug)]
pub struct DichotomyParams {
    pub m: usize,
    pub caps: Vec<usize>,
    pub census_prime: u32,
}

impl DichotomyParams {
    pub fn new(m: usize) -> Self {
        Self {
            m,
            caps: vec![2; m + 1],
            census_prime: 2,
        }
    }
}

pub fn dichotomy_report(pres: &Presentation, params: &DichotomyParams, config: &Config) -> Result<DichotomyReport> {
    let report = classify_with(pres, config)?;
    let m = params.m;
    let mut statements = Vec::new();
    match report.verdict {
        Verdict::DerivedDiscrete => {
            let alg = algebra_at(pres, params.census_prime)?;
            let census = enumerate_cm(&alg, m, &params.caps, config)?;
            statements.push(DichotomyStatement {
                claim: format!("C_{m}(proj A) is of finite representation type"),
                status: StatementStatus::Computed,
                data: json!({
                    "census_indecomposables": census.indecomposable_count(),
                    "caps": params.caps,
                    "prime": params.census_prime,
                    "note": "finitely many indecomposables up to isomorphism at these caps",
                }),
            });
            statements.push(DichotomyStatement {
                claim: "C_m(proj A) is of finite representation type for every m".into(),
                status: StatementStatus::TheoremBacked,
                data: json!({ "certificate": report.certificate.kind() }),
            });
        }
        Verdict::StronglyDerivedUnbounded => {
            let alg = Algebra::build(pres.clone())?;
            match &report.certificate {
                Certificate::BandWitness { family, .. } => {
                    let search = find_bands(&alg, 4 * alg.quiver().arrows().len())?;
                    let band = &search.bands[0];
                    let lambda = family.lambdas[0];
                    let mut rows = Vec::new();
                    let mut window = 0;
                    for d in [1usize, 2, 3] {
                        let x = band_complex(&alg, band, lambda, d)?;
                        window = window.max(x.m());
                        let c = cohomology(&alg, &x);
                        rows.push(json!({ "degree": d, "dim": c.dim, "hr": c.hr }));
                    }
                    statements.push(DichotomyStatement {
                        claim: format!("C_{}(proj A) has infinitely many indecomposables of growing dimension", m.max(window)),
                        status: StatementStatus::Computed,
                        data: json!({ "band": family.band, "family": rows, "m_prime": window, "fits_m": window <= m }),
                    });
                    statements.push(DichotomyStatement {
                        claim: "K^b(proj A) has indecomposables of cohomological range r_i for infinitely many r_i".into(),
                        status: StatementStatus::Computed,
                        data: json!({ "ranges": rows.iter().map(|r| r["hr"].clone()).collect::<Vec<_>>() }),
                    });
                }
                Certificate::RepInfinite(ev) => {
                    statements.push(DichotomyStatement {
                        claim: "C_1(proj A) is of strongly unbounded type".into(),
                        status: StatementStatus::Computed,
                        data: json!({ "family": ev.kind, "presentations": ev.presentations }),
                    });
                }
                _ => {}
            }
            statements.push(DichotomyStatement {
                claim: "the repetitive category is of strongly unbounded representation type".into(),
                status: StatementStatus::TheoremBacked,
                data: json!({ "recomputed": false }),
            });
        }
        Verdict::Unknown => statements.push(DichotomyStatement {
            claim: "A is either derived discrete or strongly derived unbounded".into(),
            status: StatementStatus::Undecided,
            data: json!({ "notes": report.notes }),
        }),
    }
    Ok(DichotomyReport {
        verdict: report.verdict,
        m,
        statements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::validate;
    use crate::fixtures;

    fn verdict(p: Presentation) -> Verdict {
        classify(&p).unwrap().verdict
    }

    #[test]
    fn multiset_helpers() {
        assert_eq!(multisets(2, 2).len(), 6);
        assert_eq!(multisets(3, 1).len(), 4);
        assert_eq!(sub_multisets(&[0, 0, 1]).len(), 6);
        assert_eq!(multiset_minus(&[0, 0, 1], &[0, 1]), vec![0]);
    }

    #[test]
    fn dynkin_detection() {
        let t = |p| dynkin_type(&Algebra::build(p).unwrap());
        assert_eq!(t(fixtures::a2()), Some("A_2".into()));
        assert_eq!(t(fixtures::a3()), Some("A_3".into()));
        assert_eq!(t(fixtures::d4()), Some("D_4".into()));
        assert_eq!(t(fixtures::kronecker()), None);
        assert_eq!(t(fixtures::a2_tilde()), None);
        let e6 = fixtures::presentation(
            &["1", "2", "3", "4", "5", "6"],
            &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4"), ("d", "4", "5"), ("e", "3", "6")],
            &[],
            101,
        );
        assert_eq!(t(e6), Some("E_6".into()));
        let d4_tilde = fixtures::presentation(
            &["0", "1", "2", "3", "4"],
            &[("a", "1", "0"), ("b", "2", "0"), ("c", "3", "0"), ("d", "4", "0")],
            &[],
            101,
        );
        assert_eq!(t(d4_tilde), None);
    }

    #[test]
    fn census_a2() {
        let alg = algebra_at(&fixtures::a2(), 2).unwrap();
        let t = enumerate_cm(&alg, 1, &[2, 2], &Config::default()).unwrap();
        assert_eq!(t.indecomposable_count(), 5);
        assert_eq!(t.non_stalk_indecomposable_count(), 1);
        assert_eq!((t.dim_bound_violations, t.sandwich_violations), (0, 0));
        for c in &t.classes {
            assert!(validate(&alg, &c.representative).is_ok());
        }
    }

    #[test]
    fn census_l2_and_kronecker() {
        for p in [2, 3] {
            let alg = algebra_at(&fixtures::l2(), p).unwrap();
            let t = enumerate_cm(&alg, 1, &[2, 2], &Config::default()).unwrap();
            assert_eq!(t.indecomposable_count(), 3, "p = {p}");
        }
        for p in [2, 3, 5] {
            let alg = algebra_at(&fixtures::kronecker(), p).unwrap();
            let t = enumerate_cm(&alg, 1, &[1, 1], &Config::default()).unwrap();
            assert_eq!(t.non_stalk_indecomposable_count(), p as usize + 1, "p = {p}");
            assert_eq!(t.indecomposable_count(), p as usize + 5);
        }
    }

    #[test]
    fn census_budget() {
        let alg = algebra_at(&fixtures::kronecker(), 5).unwrap();
        let cfg = Config {
            census_budget: 10,
            ..Config::default()
        };
        assert!(matches!(enumerate_cm(&alg, 1, &[2, 2], &cfg), Err(Error::BudgetExceeded(_))));
        assert!(enumerate_cm(&alg, 1, &[2], &cfg).is_err());
    }

    #[test]
    fn rep_infinite_examples() {
        let cfg = Config::default();
        let k = Algebra::build(fixtures::kronecker()).unwrap();
        let ev = rep_infinite_evidence(&k, 2, &cfg).unwrap().unwrap();
        assert_eq!(ev.dims, vec![1, 1]);
        assert_eq!(ev.valid_parameters, 100);
        assert!(ev.presentations.iter().all(|p| p.indecomposable));
        for p in [fixtures::a2(), fixtures::l2(), fixtures::n2(), fixtures::a3()] {
            assert!(rep_infinite_evidence(&Algebra::build(p).unwrap(), 12, &cfg).unwrap().is_none());
        }
        let d4_tilde = fixtures::presentation(
            &["0", "1", "2", "3", "4"],
            &[("a", "1", "0"), ("b", "2", "0"), ("c", "3", "0"), ("d", "0", "4")],
            &[],
            101,
        );
        let alg = Algebra::build(d4_tilde).unwrap();
        let ev = rep_infinite_evidence(&alg, 6, &cfg).unwrap().unwrap();
        assert_eq!(ev.kind, "four-subspace");
    }

    #[test]
    fn classification_table() {
        use Verdict::*;
        assert_eq!(verdict(fixtures::a2()), DerivedDiscrete);
        assert_eq!(verdict(fixtures::a3()), DerivedDiscrete);
        assert_eq!(verdict(fixtures::d4()), DerivedDiscrete);
        assert_eq!(verdict(fixtures::l2()), DerivedDiscrete);
        assert_eq!(verdict(fixtures::n2()), DerivedDiscrete);
        assert_eq!(verdict(fixtures::cycle3()), DerivedDiscrete);
        assert_eq!(verdict(fixtures::kronecker()), StronglyDerivedUnbounded);
        assert_eq!(verdict(fixtures::a2_tilde()), StronglyDerivedUnbounded);

        let l2 = classify(&fixtures::l2()).unwrap();
        assert!(matches!(
            l2.certificate,
            Certificate::VossieckCounts {
                clockwise: 1,
                counterclockwise: 0
            }
        ));
        let a2 = classify(&fixtures::a2()).unwrap();
        assert!(matches!(a2.certificate, Certificate::Dynkin { ref dynkin_type } if dynkin_type == "A_2"));
        let k = classify(&fixtures::kronecker()).unwrap();
        assert_eq!(k.certificate.kind(), "band-witness");
    }

    #[test]
    fn commutative_square_is_unknown() {
        let r = classify(&fixtures::square_commutative()).unwrap();
        assert_eq!(r.verdict, Verdict::Unknown);
        let d = dichotomy_report(&fixtures::square_commutative(), &DichotomyParams::new(1), &Config::default()).unwrap();
        assert_eq!(d.statements.len(), 1);
        assert_eq!(d.statements[0].status, StatementStatus::Undecided);
    }

    #[test]
    fn dichotomy_examples() {
        let cfg = Config::default();
        let l2 = dichotomy_report(&fixtures::l2(), &DichotomyParams::new(1), &cfg).unwrap();
        assert_eq!(l2.verdict, Verdict::DerivedDiscrete);
        assert_eq!(l2.statements[0].data["census_indecomposables"], 3);

        let k = dichotomy_report(&fixtures::kronecker(), &DichotomyParams::new(1), &cfg).unwrap();
        let dims: Vec<u64> = k.statements[0].data["family"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["dim"].as_u64().unwrap())
            .collect();
        assert_eq!(dims, vec![4, 8, 12]);
        assert_eq!(k.statements.last().unwrap().status, StatementStatus::TheoremBacked);
    }
}
