//! Gentle algebras: recognition, the one-cycle relation count, homotopy
//! bands and the band complexes they parameterize.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::{Algebra, PathWord};
use crate::complexes::{
    check_dim_bound, cohomology, hr_dim_sandwich, is_indecomposable, is_isomorphic, validate, IsoMode, ProjComplex,
    ProjMap, SearchConfig,
};
use crate::error::{Error, Result};
use crate::exactla::FieldElem;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CycleStructure {
    Tree,
    /// The unique cycle, traversed from its lowest vertex; `forward[i]` says
    /// whether `arrows[i]` is traversed along its orientation.
    OneCycle { arrows: Vec<String>, forward: Vec<bool> },
    MultiCycle { betti: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GentleReport {
    pub is_gentle: bool,
    pub violations: Vec<String>,
    pub cycle_structure: CycleStructure,
}

fn arrow_path(alg: &Algebra, a: usize) -> PathWord {
    let arr = alg.quiver().arrow(a);
    PathWord {
        source: arr.source,
        target: arr.target,
        arrows: vec![a],
    }
}

/// Whether the composite `a b` of two arrows lies in `I`.
fn arrows_compose_to_zero(alg: &Algebra, a: usize, b: usize) -> bool {
    let p = arrow_path(alg, a).concat(&arrow_path(alg, b)).expect("composable");
    alg.in_ideal(&[(1, p)])
}

pub fn gentle_report(alg: &Algebra) -> GentleReport {
    let q = alg.quiver();
    let mut violations = Vec::new();
    for (i, r) in alg.presentation().relations.iter().enumerate() {
        if !r.is_monomial() || r.min_len() != 2 {
            violations.push(format!(
                "relation #{i} ({}) is not a monomial of length 2",
                r.label(q, alg.field())
            ));
        }
    }
    for v in 0..q.vertex_count() {
        let (ins, outs) = (q.in_arrows(v).count(), q.out_arrows(v).count());
        if ins > 2 {
            violations.push(format!("vertex {} has {ins} incoming arrows", q.vertex_id(v)));
        }
        if outs > 2 {
            violations.push(format!("vertex {} has {outs} outgoing arrows", q.vertex_id(v)));
        }
    }
    for (a, arr) in q.arrows().iter().enumerate() {
        let after: Vec<usize> = q.out_arrows(arr.target).collect();
        let zero = after.iter().filter(|&&b| arrows_compose_to_zero(alg, a, b)).count();
        let nonzero = after.len() - zero;
        if nonzero > 1 {
            violations.push(format!("{} is followed nontrivially by {nonzero} arrows", arr.id));
        }
        if zero > 1 {
            violations.push(format!("{} is followed by {zero} arrows into the ideal", arr.id));
        }
        let before: Vec<usize> = q.in_arrows(arr.source).collect();
        let zero = before.iter().filter(|&&b| arrows_compose_to_zero(alg, b, a)).count();
        let nonzero = before.len() - zero;
        if nonzero > 1 {
            violations.push(format!("{} is preceded nontrivially by {nonzero} arrows", arr.id));
        }
        if zero > 1 {
            violations.push(format!("{} is preceded by {zero} arrows into the ideal", arr.id));
        }
    }
    GentleReport {
        is_gentle: violations.is_empty(),
        violations,
        cycle_structure: cycle_structure(alg),
    }
}

/// The unique cycle of the underlying graph as `(arrow, forward)` pairs.
fn unique_cycle(alg: &Algebra) -> Option<Vec<(usize, bool)>> {
    let q = alg.quiver();
    if q.betti_number() != 1 {
        return None;
    }
    let n = q.vertex_count();
    let mut alive: Vec<bool> = vec![true; q.arrows().len()];
    let degree = |v: usize, alive: &[bool]| -> usize {
        q.arrows()
            .iter()
            .enumerate()
            .filter(|(i, _)| alive[*i])
            .map(|(_, a)| (a.source == v) as usize + (a.target == v) as usize)
            .sum()
    };
    // strip leaves until only the cycle remains
    loop {
        let leaf = (0..n).find(|&v| degree(v, &alive) == 1);
        let Some(v) = leaf else { break };
        let e = (0..alive.len())
            .find(|&i| alive[i] && (q.arrow(i).source == v || q.arrow(i).target == v))
            .expect("leaf edge");
        alive[e] = false;
    }
    let on_cycle: Vec<usize> = (0..alive.len()).filter(|&i| alive[i]).collect();
    let anchor = on_cycle
        .iter()
        .flat_map(|&i| [q.arrow(i).source, q.arrow(i).target])
        .min()?;
    let mut walk = Vec::with_capacity(on_cycle.len());
    let mut used = BTreeSet::new();
    let mut v = anchor;
    while walk.len() < on_cycle.len() {
        let e = *on_cycle
            .iter()
            .find(|&&i| !used.contains(&i) && (q.arrow(i).source == v || q.arrow(i).target == v))?;
        let arr = q.arrow(e);
        let forward = arr.source == v;
        v = if forward { arr.target } else { arr.source };
        used.insert(e);
        walk.push((e, forward));
    }
    Some(walk)
}

fn cycle_structure(alg: &Algebra) -> CycleStructure {
    let q = alg.quiver();
    match q.betti_number() {
        0 => CycleStructure::Tree,
        1 => {
            let walk = unique_cycle(alg).expect("one cycle");
            CycleStructure::OneCycle {
                arrows: walk.iter().map(|&(e, _)| q.arrow(e).id.clone()).collect(),
                forward: walk.iter().map(|&(_, f)| f).collect(),
            }
        }
        betti => CycleStructure::MultiCycle { betti },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VossieckCounts {
    pub clockwise: usize,
    pub counterclockwise: usize,
}

impl VossieckCounts {
    pub fn differ(&self) -> bool {
        self.clockwise != self.counterclockwise
    }
}

/// Length-two relations on the unique cycle, split by direction relative to
/// the traversal of [`CycleStructure::OneCycle`].
pub fn vossieck_counts(alg: &Algebra) -> Result<VossieckCounts> {
    let report = gentle_report(alg);
    if !report.is_gentle {
        return Err(Error::NotOneCycleGentle);
    }
    let walk = unique_cycle(alg).ok_or(Error::NotOneCycleGentle)?;
    let direction = |a: usize| walk.iter().find(|&&(e, _)| e == a).map(|&(_, f)| f);
    let mut counts = VossieckCounts {
        clockwise: 0,
        counterclockwise: 0,
    };
    for r in &alg.presentation().relations {
        let path = &r.terms[0].1;
        let (a, b) = (path.arrows[0], path.arrows[1]);
        match (direction(a), direction(b)) {
            (Some(true), Some(true)) => counts.clockwise += 1,
            (Some(false), Some(false)) => counts.counterclockwise += 1,
            _ => {}
        }
    }
    Ok(counts)
}

/// A homotopy letter: a nonzero path (basis index) used directly or
/// inversely.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub path: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn invert(self) -> Letter {
        Letter {
            path: self.path,
            inverse: !self.inverse,
        }
    }

    /// Walk start and end vertices.
    pub fn ends(self, alg: &Algebra) -> (usize, usize) {
        let p = &alg.basis()[self.path];
        if self.inverse {
            (p.target, p.source)
        } else {
            (p.source, p.target)
        }
    }

    pub fn label(self, alg: &Algebra) -> String {
        let l = alg.label(self.path);
        if self.inverse {
            if l.contains('*') {
                format!("({l})^-1")
            } else {
                format!("{l}^-1")
            }
        } else {
            l
        }
    }
}

impl Serialize for Letter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Letter", 2)?;
        st.serialize_field("path", &self.path)?;
        st.serialize_field("inverse", &self.inverse)?;
        st.end()
    }
}

/// A primitive cyclic homotopy string with balanced direct and inverse
/// letters, stored in canonical rotation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HomotopyBand {
    pub letters: Vec<Letter>,
}

impl HomotopyBand {
    pub fn label(&self, alg: &Algebra) -> String {
        self.letters.iter().map(|l| l.label(alg)).collect::<Vec<_>>().join(" ")
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Checks junction conditions, balance and primitivity, and returns the
    /// canonical form.
    pub fn new(alg: &Algebra, letters: Vec<Letter>) -> Result<HomotopyBand> {
        if letters.is_empty() {
            return Err(Error::InvalidBand("empty band".into()));
        }
        for l in &letters {
            if l.path >= alg.dim() || alg.basis()[l.path].is_trivial() {
                return Err(Error::InvalidBand(format!("letter {} is not a nonzero path", l.path)));
            }
        }
        let n = letters.len();
        for j in 0..n {
            let (a, b) = (letters[j], letters[(j + 1) % n]);
            if !junction_ok(alg, a, b) {
                return Err(Error::InvalidBand(format!(
                    "{} cannot be followed by {}",
                    a.label(alg),
                    b.label(alg)
                )));
            }
        }
        let direct = letters.iter().filter(|l| !l.inverse).count();
        if 2 * direct != n {
            return Err(Error::InvalidBand("direct and inverse letters are unbalanced".into()));
        }
        if !is_primitive(&letters) {
            return Err(Error::InvalidBand("band is a proper power".into()));
        }
        Ok(HomotopyBand {
            letters: canonical(&letters),
        })
    }

    /// Index of the letter carrying the Jordan block.
    pub fn distinguished(&self) -> usize {
        self.letters.iter().position(|l| l.inverse).expect("balanced band has an inverse letter")
    }
}

fn is_primitive(letters: &[Letter]) -> bool {
    let n = letters.len();
    (1..n).filter(|k| n % k == 0).all(|k| (0..n).any(|i| letters[i] != letters[(i + k) % n]))
}

fn canonical(letters: &[Letter]) -> Vec<Letter> {
    let n = letters.len();
    let inverse: Vec<Letter> = letters.iter().rev().map(|l| l.invert()).collect();
    let mut best: Option<Vec<Letter>> = None;
    for word in [letters.to_vec(), inverse] {
        for r in 0..n {
            let rot: Vec<Letter> = word[r..].iter().chain(&word[..r]).copied().collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.expect("nonempty")
}

/// Whether letter `b` may follow letter `a` in a homotopy string.
pub fn junction_ok(alg: &Algebra, a: Letter, b: Letter) -> bool {
    if a.ends(alg).1 != b.ends(alg).0 {
        return false;
    }
    let pa = &alg.basis()[a.path];
    let pb = &alg.basis()[b.path];
    match (a.inverse, b.inverse) {
        (false, false) => alg.in_ideal(&[(1, pa.concat(pb).expect("composable"))]),
        (true, true) => alg.in_ideal(&[(1, pb.concat(pa).expect("composable"))]),
        // direct then inverse: both paths end at the junction
        (false, true) => pa.arrows.last() != pb.arrows.last(),
        // inverse then direct: both paths start at the junction
        (true, false) => pa.arrows.first() != pb.arrows.first(),
    }
}

fn letters(alg: &Algebra) -> Vec<Letter> {
    alg.radical_basis()
        .into_iter()
        .flat_map(|p| [Letter { path: p, inverse: false }, Letter { path: p, inverse: true }])
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct BandSearch {
    pub bands: Vec<HomotopyBand>,
    pub labels: Vec<String>,
    pub max_letters: usize,
    /// True when the letter graph admits no balanced closed walk at all, so
    /// an empty result holds without a length bound.
    pub provably_none: bool,
}

/// Enumerates bands with at most `max_letters` letters.
pub fn find_bands(alg: &Algebra, max_letters: usize) -> Result<BandSearch> {
    let report = gentle_report(alg);
    if !report.is_gentle {
        return Err(Error::NotGentle(report.violations.join("; ")));
    }
    let ls = letters(alg);
    let n = ls.len();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| junction_ok(alg, ls[i], ls[j])).collect())
        .collect();
    let mut found = BTreeSet::new();
    let mut stack = Vec::new();
    for start in 0..n {
        stack.clear();
        stack.push(start);
        dfs(alg, &ls, &adj, start, max_letters, &mut stack, &mut found);
    }
    let provably_none = !has_balanced_cycle(&ls, &adj);
    if provably_none && !found.is_empty() {
        return Err(Error::InvariantViolation("band found in a letter graph without balanced cycles".into()));
    }
    let bands: Vec<HomotopyBand> = found.into_iter().collect();
    Ok(BandSearch {
        labels: bands.iter().map(|b| b.label(alg)).collect(),
        bands,
        max_letters,
        provably_none,
    })
}

fn dfs(
    alg: &Algebra,
    ls: &[Letter],
    adj: &[Vec<usize>],
    start: usize,
    max: usize,
    stack: &mut Vec<usize>,
    found: &mut BTreeSet<HomotopyBand>,
) {
    let last = *stack.last().expect("nonempty");
    for &next in &adj[last] {
        // rotations are canonicalized later, so only walks starting at their
        // least letter are explored
        if next < start {
            continue;
        }
        if next == start {
            let word: Vec<Letter> = stack.iter().map(|&i| ls[i]).collect();
            if let Ok(b) = HomotopyBand::new(alg, word) {
                found.insert(b);
            }
        }
        if stack.len() < max {
            stack.push(next);
            dfs(alg, ls, adj, start, max, stack, found);
            stack.pop();
        }
    }
}

/// Whether some strongly connected component of the letter graph carries a
/// closed walk with as many direct as inverse letters (weights ∓1).
fn has_balanced_cycle(ls: &[Letter], adj: &[Vec<usize>]) -> bool {
    let n = ls.len();
    const INF: i64 = i64::MAX / 4;
    let weight = |j: usize| if ls[j].inverse { 1 } else { -1 };
    let shortest = |sign: i64| {
        let mut d = vec![vec![INF; n]; n];
        for i in 0..n {
            for &j in &adj[i] {
                d[i][j] = d[i][j].min(sign * weight(j));
            }
        }
        for k in 0..n {
            for i in 0..n {
                if d[i][k] == INF {
                    continue;
                }
                for j in 0..n {
                    if d[k][j] == INF {
                        continue;
                    }
                    let via = d[i][k] + d[k][j];
                    if via < d[i][j] {
                        d[i][j] = via.max(-INF);
                    }
                }
            }
        }
        d
    };
    let neg = shortest(1);
    let pos = shortest(-1);
    let has_neg = |d: &[Vec<i64>], i: usize| d[i][i] < 0;
    for i in 0..n {
        if neg[i][i] == INF {
            continue; // not on any cycle
        }
        let (n_here, p_here) = (has_neg(&neg, i), has_neg(&pos, i));
        if n_here && p_here {
            return true;
        }
        // all cycles through i have one sign; a zero cycle is detected by an
        // edge closing a shortest path exactly
        let d = if n_here { &pos } else { &neg };
        let sign = if n_here { -1 } else { 1 };
        if !n_here && !p_here {
            return true;
        }
        for &j in &adj[i] {
            if d[j][i] != INF && sign * weight(j) + d[j][i] == 0 {
                return true;
            }
        }
    }
    false
}

/// The complex `P•_{w,f}` for `f = (x − λ)^d`: multiplicity `d` at every
/// position of the band, path maps `w·I`, and `w·J_d(λ)` on the
/// distinguished letter.
pub fn band_complex(alg: &Algebra, band: &HomotopyBand, lambda: FieldElem, d: usize) -> Result<ProjComplex> {
    let f = alg.field();
    let lambda = lambda % f.p();
    if lambda == 0 {
        return Err(Error::ZeroParameter);
    }
    if d == 0 {
        return Err(Error::InvalidInput("degree d must be at least 1".into()));
    }
    let band = HomotopyBand::new(alg, band.letters.clone())?;
    let n = band.len();
    // position j sits at the start vertex of letter j
    let verts: Vec<usize> = band.letters.iter().map(|l| l.ends(alg).0).collect();
    let mut deg = vec![0i64; n];
    for j in 1..n {
        deg[j] = deg[j - 1] + if band.letters[j - 1].inverse { 1 } else { -1 };
    }
    let lo = *deg.iter().min().expect("nonempty");
    let degs: Vec<usize> = deg.iter().map(|&x| (x - lo) as usize).collect();
    let m = *degs.iter().max().expect("nonempty");

    // summand index of (position, copy) inside its degree
    let mut terms: Vec<Vec<usize>> = vec![Vec::new(); m + 1];
    let mut slot = vec![0usize; n];
    for j in 0..n {
        slot[j] = terms[degs[j]].len();
        for _ in 0..d {
            terms[degs[j]].push(verts[j]);
        }
    }
    let mut diffs: Vec<ProjMap> = (0..m)
        .map(|i| ProjMap::zero(alg, terms[i].clone(), terms[i + 1].clone()))
        .collect();
    let dist = band.distinguished();
    for (j, l) in band.letters.iter().enumerate() {
        let next = (j + 1) % n;
        // a direct letter maps the later position to the earlier one
        let (src_pos, tgt_pos) = if l.inverse { (j, next) } else { (next, j) };
        let i = degs[src_pos];
        debug_assert_eq!(degs[tgt_pos], i + 1);
        let w = alg.basis_elem(l.path);
        for r in 0..d {
            for c in 0..d {
                let coeff = if j == dist {
                    if r == c {
                        lambda
                    } else if c == r + 1 {
                        1
                    } else {
                        0
                    }
                } else {
                    (r == c) as FieldElem
                };
                if coeff == 0 {
                    continue;
                }
                let k = slot[src_pos] + c;
                let t = slot[tgt_pos] + r;
                let mut e = diffs[i].entry(k, t).to_vec();
                alg.add_scaled(&mut e, &w, coeff);
                diffs[i].set(k, t, e);
            }
        }
    }
    let x = ProjComplex::new(alg, m, terms, diffs)?;
    validate(alg, &x)?;
    Ok(x)
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessMember {
    pub lambda: FieldElem,
    pub degree: usize,
    pub dim: usize,
    pub hr: usize,
    pub cohomology: Vec<usize>,
    pub indecomposable_certain: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessFamily {
    pub band: String,
    pub degrees: Vec<usize>,
    pub lambdas: Vec<FieldElem>,
    pub field: u32,
    pub members: Vec<WitnessMember>,
    pub all_valid: bool,
    pub all_indecomposable: bool,
    pub pairwise_non_isomorphic: bool,
    pub equal_dim_within_degree: bool,
    pub dims_increase_with_degree: bool,
}

/// Builds the band family over the parameter grid and machine-checks it.
pub fn witness_family(
    alg: &Algebra,
    band: &HomotopyBand,
    degrees: &[usize],
    lambdas: &[FieldElem],
    cfg: &SearchConfig,
) -> Result<WitnessFamily> {
    let f = alg.field();
    let mut seen = BTreeSet::new();
    for &l in lambdas {
        let l = l % f.p();
        if l == 0 {
            return Err(Error::ZeroParameter);
        }
        if !seen.insert(l) {
            return Err(Error::DuplicateParameter(format!("lambda = {l}")));
        }
    }
    let mut seen = BTreeSet::new();
    for &d in degrees {
        if !seen.insert(d) {
            return Err(Error::DuplicateParameter(format!("degree = {d}")));
        }
    }
    let mut sorted_degrees = degrees.to_vec();
    sorted_degrees.sort_unstable();
    let lambdas: Vec<FieldElem> = lambdas.iter().map(|l| l % f.p()).collect();
    let mut members = Vec::new();
    let mut dims_by_degree = Vec::new();
    for &d in &sorted_degrees {
        let mut family = Vec::new();
        for &l in &lambdas {
            let x = band_complex(alg, band, l, d)?;
            check_dim_bound(alg, &x)?;
            hr_dim_sandwich(alg, &x)?;
            let ind = is_indecomposable(alg, &x, cfg)?;
            if !ind.indecomposable {
                return Err(Error::InvariantViolation(format!(
                    "band complex (lambda = {l}, d = {d}) decomposes"
                )));
            }
            let c = cohomology(alg, &x);
            members.push(WitnessMember {
                lambda: l,
                degree: d,
                dim: c.dim,
                hr: c.hr,
                cohomology: c.h.clone(),
                indecomposable_certain: ind.certain,
            });
            family.push(x);
        }
        for a in 0..family.len() {
            for b in a + 1..family.len() {
                if is_isomorphic(alg, &family[a], &family[b], IsoMode::Auto, cfg)?.isomorphic {
                    return Err(Error::InvariantViolation(format!(
                        "band complexes with lambda {} and {} (d = {d}) are isomorphic",
                        lambdas[a], lambdas[b]
                    )));
                }
            }
        }
        let dims: BTreeSet<usize> = family.iter().map(|x| x.dim(alg)).collect();
        if dims.len() > 1 {
            return Err(Error::InvariantViolation(format!("unequal dimensions at d = {d}")));
        }
        dims_by_degree.extend(dims);
    }
    if dims_by_degree.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvariantViolation("dimensions do not increase with the degree".into()));
    }
    Ok(WitnessFamily {
        band: band.label(alg),
        degrees: sorted_degrees,
        lambdas,
        field: f.p(),
        members,
        all_valid: true,
        all_indecomposable: true,
        pairwise_non_isomorphic: true,
        equal_dim_within_degree: true,
        dims_increase_with_degree: true,
    })
}
