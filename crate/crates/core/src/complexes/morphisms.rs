use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::complex::ProjComplex;
use super::invariants::cohomology;
use super::projmap::ProjMap;
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::local::{fitting_kind, is_split_local, splitting_shift, FittingKind};
use crate::exactla::{span_basis, Field, FieldElem, Mat};

/// A degreewise map `f^i: X^i → Y^i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainMap {
    pub components: Vec<ProjMap>,
}

impl ChainMap {
    pub fn identity(alg: &Algebra, x: &ProjComplex) -> Self {
        Self {
            components: x.terms().iter().map(|t| ProjMap::identity(alg, t.clone())).collect(),
        }
    }

    /// `self` followed by `other`.
    pub fn then(&self, alg: &Algebra, other: &ChainMap) -> ChainMap {
        ChainMap {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.then(alg, b))
                .collect(),
        }
    }

    pub fn is_chain_map(&self, alg: &Algebra, x: &ProjComplex, y: &ProjComplex) -> bool {
        (0..x.m()).all(|i| {
            let left = x.diff(i).then(alg, &self.components[i + 1]);
            let right = self.components[i].then(alg, y.diff(i));
            left == right
        })
    }

    /// Trivial-path coefficient blocks, one per `(degree, vertex)`.
    pub fn top_blocks(&self, alg: &Algebra) -> Vec<Mat> {
        let mut out = Vec::new();
        for c in &self.components {
            for v in 0..alg.vertex_count() {
                out.push(c.top_block(alg, v));
            }
        }
        out
    }

    /// Invertible iff every top block is square and invertible.
    pub fn is_invertible(&self, alg: &Algebra) -> bool {
        self.top_blocks(alg).iter().all(Mat::is_invertible)
    }
}

/// Coordinates of degreewise maps between two complexes: one corner
/// coordinate block per `(degree, source summand, target summand)`.
struct MapLayout {
    slots: Vec<(usize, usize, usize, std::ops::Range<usize>)>,
    len: usize,
}

impl MapLayout {
    /// Maps `X^i → Y^{i + shift}` for all degrees where both exist.
    fn new(alg: &Algebra, x: &ProjComplex, y: &ProjComplex, degrees: impl Iterator<Item = (usize, usize)>) -> Self {
        let mut slots = Vec::new();
        let mut len = 0;
        for (i, j) in degrees {
            for (k, &xv) in x.term(i).iter().enumerate() {
                for (l, &yv) in y.term(j).iter().enumerate() {
                    let r = alg.corner(yv, xv);
                    slots.push((i, k, l, len..len + r.len()));
                    len += r.len();
                }
            }
        }
        Self { slots, len }
    }

    fn assemble(
        &self,
        alg: &Algebra,
        x: &ProjComplex,
        y: &ProjComplex,
        target_degree: impl Fn(usize) -> usize,
        coeffs: &[FieldElem],
        degrees: &[usize],
    ) -> Vec<ProjMap> {
        let mut maps: Vec<ProjMap> = degrees
            .iter()
            .map(|&i| ProjMap::zero(alg, x.term(i).to_vec(), y.term(target_degree(i)).to_vec()))
            .collect();
        for (i, k, l, r) in &self.slots {
            let pos = degrees.iter().position(|d| d == i).expect("degree in layout");
            let xv = x.term(*i)[*k];
            let yv = y.term(target_degree(*i))[*l];
            let e = alg.from_corner(yv, xv, &coeffs[r.clone()]).expect("corner size");
            maps[pos].set(*k, *l, e);
        }
        maps
    }
}

fn flatten_maps(alg: &Algebra, maps: &[ProjMap]) -> Vec<FieldElem> {
    let mut out = Vec::new();
    for m in maps {
        for k in 0..m.src().len() {
            for l in 0..m.tgt().len() {
                out.extend(alg.to_corner(m.entry(k, l), m.tgt()[l], m.src()[k]));
            }
        }
    }
    out
}

fn chain_layout(alg: &Algebra, x: &ProjComplex, y: &ProjComplex) -> MapLayout {
    MapLayout::new(alg, x, y, (0..=x.m()).map(|i| (i, i)))
}

fn assemble_chain(alg: &Algebra, x: &ProjComplex, y: &ProjComplex, layout: &MapLayout, coeffs: &[FieldElem]) -> ChainMap {
    let degrees: Vec<usize> = (0..=x.m()).collect();
    ChainMap {
        components: layout.assemble(alg, x, y, |i| i, coeffs, &degrees),
    }
}

fn check_same_window(x: &ProjComplex, y: &ProjComplex) -> Result<()> {
    if x.m() != y.m() {
        return Err(Error::DimensionMismatch(format!(
            "windows [0, {}] and [0, {}]",
            x.m(),
            y.m()
        )));
    }
    Ok(())
}

/// Basis of the space of chain maps `X → Y`.
pub fn chain_maps(alg: &Algebra, x: &ProjComplex, y: &ProjComplex) -> Result<Vec<ChainMap>> {
    check_same_window(x, y)?;
    let layout = chain_layout(alg, x, y);
    let f = alg.field();
    let mut columns = Vec::with_capacity(layout.len);
    for u in 0..layout.len {
        let mut e = vec![0; layout.len];
        e[u] = 1;
        let cm = assemble_chain(alg, x, y, &layout, &e);
        let residuals: Vec<ProjMap> = (0..x.m())
            .map(|i| {
                let mut r = x.diff(i).then(alg, &cm.components[i + 1]);
                r.add_scaled(alg, &cm.components[i].then(alg, y.diff(i)), f.neg(1));
                r
            })
            .collect();
        columns.push(flatten_maps(alg, &residuals));
    }
    let rows = columns.first().map_or(0, Vec::len);
    let system = Mat::from_columns(f, rows, &columns);
    let kernel = if rows == 0 {
        (0..layout.len)
            .map(|u| {
                let mut e = vec![0; layout.len];
                e[u] = 1;
                e
            })
            .collect()
    } else {
        system.kernel_basis()
    };
    Ok(kernel
        .iter()
        .map(|c| assemble_chain(alg, x, y, &layout, c))
        .collect())
}

/// Basis of the null-homotopic chain maps `X → Y`.
pub fn homotopies(alg: &Algebra, x: &ProjComplex, y: &ProjComplex) -> Result<Vec<ChainMap>> {
    check_same_window(x, y)?;
    let m = x.m();
    if m == 0 {
        return Ok(Vec::new());
    }
    let hdeg: Vec<usize> = (1..=m).collect();
    let hlayout = MapLayout::new(alg, x, y, hdeg.iter().map(|&i| (i, i - 1)));
    let clayout = chain_layout(alg, x, y);
    let mut images = Vec::with_capacity(hlayout.len);
    for u in 0..hlayout.len {
        let mut e = vec![0; hlayout.len];
        e[u] = 1;
        let h = hlayout.assemble(alg, x, y, |i| i - 1, &e, &hdeg);
        let comps: Vec<ProjMap> = (0..=m)
            .map(|i| {
                let mut fi = ProjMap::zero(alg, x.term(i).to_vec(), y.term(i).to_vec());
                if i >= 1 {
                    fi.add_scaled(alg, &h[i - 1].then(alg, y.diff(i - 1)), 1);
                }
                if i < m {
                    fi.add_scaled(alg, &x.diff(i).then(alg, &h[i]), 1);
                }
                fi
            })
            .collect();
        images.push(flatten_maps(alg, &comps));
    }
    let basis = span_basis(alg.field(), clayout.len, &images);
    Ok(basis
        .iter()
        .map(|c| assemble_chain(alg, x, y, &clayout, c))
        .collect())
}

fn top_vector(alg: &Algebra, f: &ChainMap) -> Vec<FieldElem> {
    f.top_blocks(alg).iter().flat_map(|b| b.data().to_vec()).collect()
}

fn block_shapes(alg: &Algebra, f: &ChainMap) -> Vec<(usize, usize)> {
    f.top_blocks(alg).iter().map(|b| (b.rows(), b.cols())).collect()
}

/// Chain maps whose top vectors are linearly independent and span the image
/// of the top map.
fn top_independent(alg: &Algebra, basis: &[ChainMap]) -> (Vec<ChainMap>, Vec<Vec<FieldElem>>) {
    let field = alg.field();
    let mut chosen = Vec::new();
    let mut vecs: Vec<Vec<FieldElem>> = Vec::new();
    for f in basis {
        let v = top_vector(alg, f);
        let mut trial = vecs.clone();
        trial.push(v.clone());
        if span_basis(field, v.len(), &trial).len() > vecs.len() {
            vecs.push(v);
            chosen.push(f.clone());
        }
    }
    (chosen, vecs)
}

fn blocks_invertible(field: Field, shapes: &[(usize, usize)], v: &[FieldElem]) -> bool {
    let mut off = 0;
    for &(r, c) in shapes {
        if r != c {
            return false;
        }
        let m = Mat::from_vec(field, r, c, v[off..off + r * c].to_vec()).expect("block");
        if r > 0 && m.determinant() == 0 {
            return false;
        }
        off += r * c;
    }
    true
}

fn combine(alg: &Algebra, basis: &[ChainMap], coeffs: &[FieldElem]) -> ChainMap {
    let mut acc = basis[0].clone();
    for (j, c) in acc.components.iter_mut().enumerate() {
        *c = c.scale(alg, coeffs[0]);
        for (b, &a) in basis.iter().zip(coeffs).skip(1) {
            c.add_scaled(alg, &b.components[j], a);
        }
    }
    acc
}

fn random_coeffs(rng: &mut ChaCha8Rng, p: u32, n: usize) -> Vec<FieldElem> {
    (0..n).map(|_| rng.gen_range(0..p)).collect()
}

/// Number of elements of `F_p^r`, saturating.
fn space_size(p: u32, r: usize) -> u64 {
    (0..r).fold(1u64, |acc, _| acc.saturating_mul(p as u64))
}

/// Calls `visit` on every nonzero vector of the span of `vecs` (given as
/// coefficient combinations); stops early when `visit` returns true.
fn exhaust_span(field: Field, vecs: &[Vec<FieldElem>], mut visit: impl FnMut(&[FieldElem], &[FieldElem]) -> bool) -> bool {
    let r = vecs.len();
    if r == 0 {
        return false;
    }
    let len = vecs[0].len();
    let p = field.p();
    let mut coeffs = vec![0u32; r];
    let mut cur = vec![0u32; len];
    loop {
        // odometer step: bump the first coordinate that does not wrap
        let mut j = 0;
        loop {
            if j == r {
                return false;
            }
            coeffs[j] = (coeffs[j] + 1) % p;
            for (c, &b) in cur.iter_mut().zip(&vecs[j]) {
                *c = field.add(*c, b);
            }
            if coeffs[j] != 0 {
                break;
            }
            j += 1;
        }
        if visit(&coeffs, &cur) {
            return true;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum IsoMode {
    /// Random trials, then exhaustive search when the space is small enough.
    #[default]
    Auto,
    Randomized,
    Exhaustive,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchConfig {
    pub trials: usize,
    pub budget: u64,
    pub seed: u64,
}

impl From<&crate::Config> for SearchConfig {
    fn from(c: &crate::Config) -> Self {
        Self {
            trials: c.iso_trials,
            budget: c.iso_budget,
            seed: c.seed,
        }
    }
}

impl Default for SearchConfig {
    fn default() -> Self {
        (&crate::Config::default()).into()
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum IsoCertificate {
    /// An invertible chain map `X → Y`.
    ChainMap { map: ChainMap, found_by: String },
    /// Invariant mismatch.
    Rejected { reason: String },
    /// Every element of the top image was tested.
    Exhausted { elements: u64 },
    /// Random trials failed and the space was too large to exhaust.
    Inconclusive { trials: usize, space_log_p: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct IsoResult {
    pub isomorphic: bool,
    pub certificate: IsoCertificate,
}

impl IsoResult {
    fn no(reason: impl Into<String>) -> Self {
        Self {
            isomorphic: false,
            certificate: IsoCertificate::Rejected { reason: reason.into() },
        }
    }
}

/// Decides `X ≅ Y` for minimal complexes by searching for a chain map with
/// invertible top blocks.
pub fn is_isomorphic(
    alg: &Algebra,
    x: &ProjComplex,
    y: &ProjComplex,
    mode: IsoMode,
    cfg: &SearchConfig,
) -> Result<IsoResult> {
    if x.m() != y.m() {
        return Ok(IsoResult::no("different windows"));
    }
    let n = alg.vertex_count();
    if x.multiplicities(n) != y.multiplicities(n) {
        return Ok(IsoResult::no("multiplicity vectors differ"));
    }
    if cohomology(alg, x).h != cohomology(alg, y).h {
        return Ok(IsoResult::no("cohomology dimensions differ"));
    }
    // align summand order so that top blocks are square
    let (xs, ys) = (x.sorted(), y.sorted());
    let basis = chain_maps(alg, &xs, &ys)?;
    if basis.is_empty() {
        let zero_ok = xs.is_zero();
        return Ok(if zero_ok {
            IsoResult {
                isomorphic: true,
                certificate: IsoCertificate::ChainMap {
                    map: ChainMap::identity(alg, &xs),
                    found_by: "zero complexes".into(),
                },
            }
        } else {
            // the only chain map is zero
            IsoResult {
                isomorphic: false,
                certificate: IsoCertificate::Exhausted { elements: 1 },
            }
        });
    }
    let field = alg.field();
    let p = field.p();
    let shapes = block_shapes(alg, &basis[0]);

    if mode != IsoMode::Exhaustive {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for _ in 0..cfg.trials {
            let c = random_coeffs(&mut rng, p, basis.len());
            let f = combine(alg, &basis, &c);
            if f.is_invertible(alg) {
                return Ok(found(f, "random"));
            }
        }
        if mode == IsoMode::Randomized {
            return Ok(IsoResult {
                isomorphic: false,
                certificate: IsoCertificate::Inconclusive {
                    trials: cfg.trials,
                    space_log_p: basis.len(),
                },
            });
        }
    }

    let (chosen, vecs) = top_independent(alg, &basis);
    let size = space_size(p, vecs.len());
    if size > cfg.budget {
        if mode == IsoMode::Exhaustive {
            return Err(Error::BudgetExceeded(format!(
                "top image has {p}^{} elements, budget {}",
                vecs.len(),
                cfg.budget
            )));
        }
        return Ok(IsoResult {
            isomorphic: false,
            certificate: IsoCertificate::Inconclusive {
                trials: cfg.trials,
                space_log_p: vecs.len(),
            },
        });
    }
    let mut hit = None;
    exhaust_span(field, &vecs, |coeffs, v| {
        if blocks_invertible(field, &shapes, v) {
            hit = Some(coeffs.to_vec());
            true
        } else {
            false
        }
    });
    Ok(match hit {
        Some(c) => found(combine(alg, &chosen, &c), "exhaustive"),
        None => IsoResult {
            isomorphic: false,
            certificate: IsoCertificate::Exhausted { elements: size },
        },
    })
}

fn found(map: ChainMap, how: &str) -> IsoResult {
    IsoResult {
        isomorphic: true,
        certificate: IsoCertificate::ChainMap {
            map,
            found_by: how.into(),
        },
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IndecResult {
    pub indecomposable: bool,
    /// False only when the verdict rests on random sampling.
    pub certain: bool,
    pub method: String,
    pub end_dim: usize,
    pub null_homotopic_dim: usize,
    pub field: u32,
}

/// Indecomposability of a minimal complex via its endomorphism algebra
/// modulo the radical (seen through the top blocks).
pub fn is_indecomposable(alg: &Algebra, x: &ProjComplex, cfg: &SearchConfig) -> Result<IndecResult> {
    let field = alg.field();
    let xs = x.sorted();
    let basis = chain_maps(alg, &xs, &xs)?;
    let null = homotopies(alg, &xs, &xs)?.len();
    let result = |indec: bool, certain: bool, method: &str| IndecResult {
        indecomposable: indec,
        certain,
        method: method.into(),
        end_dim: basis.len(),
        null_homotopic_dim: null,
        field: field.p(),
    };
    if xs.is_zero() {
        return Ok(result(false, true, "zero complex"));
    }
    let block_diag = |f: &ChainMap| {
        let blocks = f.top_blocks(alg);
        let n: usize = blocks.iter().map(Mat::rows).sum();
        let mut m = Mat::zeros(field, n, n);
        let mut off = 0;
        for b in &blocks {
            m.paste(off, off, b);
            off += b.rows();
        }
        m
    };
    let mats: Vec<Mat> = basis.iter().map(block_diag).collect();
    let n = mats[0].rows();
    if is_split_local(field, n, &mats) {
        return Ok(result(true, true, "split local endomorphism algebra"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.trials {
        let c = random_coeffs(&mut rng, field.p(), basis.len());
        let f = combine(alg, &basis, &c);
        if splitting_shift(&block_diag(&f)).is_some() {
            return Ok(result(false, true, "Fitting split (random endomorphism)"));
        }
    }
    let (_, vecs) = top_independent(alg, &basis);
    if space_size(field.p(), vecs.len()) <= cfg.budget {
        let shapes = block_shapes(alg, &basis[0]);
        let split = exhaust_span(field, &vecs, |_, v| {
            let mut m = Mat::zeros(field, n, n);
            let mut off = 0;
            let mut pos = 0;
            for &(r, _) in &shapes {
                let b = Mat::from_vec(field, r, r, v[pos..pos + r * r].to_vec()).expect("block");
                m.paste(off, off, &b);
                off += r;
                pos += r * r;
            }
            matches!(fitting_kind(&m), FittingKind::Splits { .. })
        });
        return Ok(if split {
            result(false, true, "Fitting split (exhaustive)")
        } else {
            result(true, true, "no splitting endomorphism (exhaustive; residue field may be non-split)")
        });
    }
    Ok(result(true, false, "no split found in random trials"))
}
