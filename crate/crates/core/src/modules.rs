//! Finite-dimensional right modules as quiver representations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Algebra, PathWord};
use crate::complexes::{validate, ProjComplex, ProjMap};
use crate::error::{Error, Result};
use crate::exactla::local::{is_split_local, splitting_shift};
use crate::exactla::{span_basis, FieldElem, Mat, Solution};

/// `M(v)` has dimension `dims[v]`; `maps[α]` is `M(s(α)) → M(t(α))` acting on
/// column vectors, so a path `α₁⋯α_k` acts by `M(α_k)⋯M(α₁)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Representation {
    dims: Vec<usize>,
    maps: Vec<Mat>,
}

impl Representation {
    /// Checks shapes and relations.
    pub fn new(alg: &Algebra, dims: Vec<usize>, maps: Vec<Mat>) -> Result<Self> {
        let q = alg.quiver();
        if dims.len() != q.vertex_count() || maps.len() != q.arrows().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} vertex dims and {} arrow maps for a quiver with {} vertices and {} arrows",
                dims.len(),
                maps.len(),
                q.vertex_count(),
                q.arrows().len()
            )));
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] || m.field() != alg.field() {
                return Err(Error::DimensionMismatch(format!(
                    "arrow {} needs a {}x{} matrix over F_{}",
                    a.id,
                    dims[a.target],
                    dims[a.source],
                    alg.field().p()
                )));
            }
        }
        let rep = Self { dims, maps };
        check_representation(alg, &rep)?;
        Ok(rep)
    }

    pub fn zero(alg: &Algebra) -> Self {
        let q = alg.quiver();
        Self {
            dims: vec![0; q.vertex_count()],
            maps: q.arrows().iter().map(|_| Mat::zeros(alg.field(), 0, 0)).collect(),
        }
    }

    /// The simple module at `v`.
    pub fn simple(alg: &Algebra, v: usize) -> Self {
        let q = alg.quiver();
        let mut dims = vec![0; q.vertex_count()];
        dims[v] = 1;
        let maps = q
            .arrows()
            .iter()
            .map(|a| Mat::zeros(alg.field(), dims[a.target], dims[a.source]))
            .collect();
        Self { dims, maps }
    }

    /// `⊕_j P_{tops[j]}` with `P(w) = ⊕_j e_{tops[j]} A e_w` in path bases.
    pub fn projective_sum(alg: &Algebra, tops: &[usize]) -> Self {
        let q = alg.quiver();
        let f = alg.field();
        let dims: Vec<usize> = (0..q.vertex_count())
            .map(|w| tops.iter().map(|&v| alg.corner_dim(v, w)).sum())
            .collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let arrow = alg.reduce_path(&PathWord {
                    source: a.source,
                    target: a.target,
                    arrows: vec![i],
                });
                let mut m = Mat::zeros(f, dims[a.target], dims[a.source]);
                let (mut ro, mut co) = (0, 0);
                for &v in tops {
                    let src = alg.corner(v, a.source);
                    let tgt = alg.corner(v, a.target);
                    for (c, p) in src.clone().enumerate() {
                        for (j, &x) in arrow.iter().enumerate() {
                            if x == 0 {
                                continue;
                            }
                            for &(b, y) in alg.mul_basis(p, j) {
                                let r = ro + b - tgt.start;
                                m.set(r, co + c, f.mul_add(m.get(r, co + c), x, y));
                            }
                        }
                    }
                    ro += tgt.len();
                    co += src.len();
                }
                m
            })
            .collect();
        Self { dims, maps }
    }

    pub fn projective(alg: &Algebra, v: usize) -> Self {
        Self::projective_sum(alg, &[v])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Mat] {
        &self.maps
    }

    pub fn map(&self, arrow: usize) -> &Mat {
        &self.maps[arrow]
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Action of a path.
    pub fn path_matrix(&self, alg: &Algebra, p: &PathWord) -> Mat {
        let f = alg.field();
        let mut m = Mat::identity(f, self.dims[p.source]);
        for &a in &p.arrows {
            m = self.maps[a].mul(&m);
        }
        m
    }

    /// Action of `Σ c_i p_i` from `M(a)` to `M(b)`.
    pub fn terms_matrix(&self, alg: &Algebra, a: usize, b: usize, terms: &[(FieldElem, PathWord)]) -> Mat {
        let mut m = Mat::zeros(alg.field(), self.dims[b], self.dims[a]);
        for (c, p) in terms {
            m.add_scaled(&self.path_matrix(alg, p), *c);
        }
        m
    }

    /// Action of an algebra element supported in `e_a A e_b`.
    pub fn element_matrix(&self, alg: &Algebra, x: &[FieldElem], a: usize, b: usize) -> Mat {
        let terms: Vec<(FieldElem, PathWord)> = alg
            .corner(a, b)
            .filter(|&i| x[i] != 0)
            .map(|i| (x[i], alg.basis()[i].clone()))
            .collect();
        self.terms_matrix(alg, a, b, &terms)
    }

    pub fn direct_sum(&self, other: &Representation) -> Representation {
        Representation {
            dims: self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect(),
            maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.direct_sum(b)).collect(),
        }
    }

    /// The submodule spanned by `bases[v]` (columns) at each vertex, in
    /// those coordinates. The spans must be closed under the arrows.
    pub fn restrict_to(&self, alg: &Algebra, bases: &[Vec<Vec<FieldElem>>]) -> Result<Representation> {
        let f = alg.field();
        let q = alg.quiver();
        let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
        let mut maps = Vec::with_capacity(self.maps.len());
        for (a, m) in q.arrows().iter().zip(&self.maps) {
            let u_t = Mat::from_columns(f, self.dims[a.target], &bases[a.target]);
            let mut cols = Vec::with_capacity(dims[a.source]);
            for u in &bases[a.source] {
                let image = m.mul_vec(u);
                match u_t.solve(&image)? {
                    Solution::Solved { particular, .. } => cols.push(particular),
                    Solution::Inconsistent => {
                        return Err(Error::InvalidInput(format!("subspace not closed under arrow {}", a.id)))
                    }
                }
            }
            maps.push(Mat::from_columns(f, dims[a.target], &cols));
        }
        Ok(Representation { dims, maps })
    }
}

/// First violated relation, if any.
pub fn check_representation(alg: &Algebra, m: &Representation) -> Result<()> {
    for (i, r) in alg.presentation().relations.iter().enumerate() {
        if !m.terms_matrix(alg, r.source(), r.target(), &r.terms).is_zero() {
            return Err(Error::RelationViolated(i));
        }
    }
    Ok(())
}

/// A homomorphism as one matrix per vertex, `N(v) × M(v)`.
pub type Homomorphism = Vec<Mat>;

/// Basis of `Hom_A(M, N)`.
pub fn hom_space(alg: &Algebra, m: &Representation, n: &Representation) -> Vec<Homomorphism> {
    let f = alg.field();
    let q = alg.quiver();
    let nv = q.vertex_count();
    let mut offsets = Vec::with_capacity(nv);
    let mut total = 0;
    for v in 0..nv {
        offsets.push(total);
        total += n.dims[v] * m.dims[v];
    }
    // φ_t M(α) - N(α) φ_s = 0 for every arrow α: s → t
    let mut rows: Vec<Vec<FieldElem>> = Vec::new();
    for (ai, a) in q.arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let (ma, na) = (&m.maps[ai], &n.maps[ai]);
        for i in 0..n.dims[t] {
            for j in 0..m.dims[s] {
                let mut row = vec![0; total];
                for k in 0..m.dims[t] {
                    let idx = offsets[t] + i * m.dims[t] + k;
                    row[idx] = f.add(row[idx], ma.get(k, j));
                }
                for k in 0..n.dims[s] {
                    let idx = offsets[s] + k * m.dims[s] + j;
                    row[idx] = f.sub(row[idx], na.get(i, k));
                }
                rows.push(row);
            }
        }
    }
    let kernel: Vec<Vec<FieldElem>> = if rows.is_empty() {
        (0..total)
            .map(|u| {
                let mut e = vec![0; total];
                e[u] = 1;
                e
            })
            .collect()
    } else {
        let mut sys = Mat::zeros(f, rows.len(), total);
        for (r, row) in rows.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                sys.set(r, c, x);
            }
        }
        sys.kernel_basis()
    };
    kernel
        .iter()
        .map(|v| {
            (0..nv)
                .map(|w| {
                    let start = offsets[w];
                    Mat::from_vec(f, n.dims[w], m.dims[w], v[start..start + n.dims[w] * m.dims[w]].to_vec())
                        .expect("block shape")
                })
                .collect()
        })
        .collect()
}

fn block_diag(alg: &Algebra, h: &Homomorphism) -> Mat {
    let n: usize = h.iter().map(Mat::rows).sum();
    let c: usize = h.iter().map(Mat::cols).sum();
    let mut m = Mat::zeros(alg.field(), n, c);
    let (mut r0, mut c0) = (0, 0);
    for b in h {
        m.paste(r0, c0, b);
        r0 += b.rows();
        c0 += b.cols();
    }
    m
}

fn combine(alg: &Algebra, basis: &[Homomorphism], coeffs: &[FieldElem]) -> Homomorphism {
    let mut out: Homomorphism = basis[0].iter().map(|b| Mat::zeros(alg.field(), b.rows(), b.cols())).collect();
    for (h, &c) in basis.iter().zip(coeffs) {
        for (o, b) in out.iter_mut().zip(h) {
            o.add_scaled(b, c);
        }
    }
    out
}

/// Whether `End(M)` is local with residue field `F_p`.
pub fn has_split_local_endomorphisms(alg: &Algebra, m: &Representation) -> bool {
    if m.is_zero() {
        return false;
    }
    let mats: Vec<Mat> = hom_space(alg, m, m).iter().map(|h| block_diag(alg, h)).collect();
    is_split_local(alg.field(), m.dim(), &mats)
}

/// `M ≅ N`: searches `Hom(M, N)` for an invertible element, randomly then
/// exhaustively within `budget` elements.
pub fn modules_isomorphic(alg: &Algebra, m: &Representation, n: &Representation, seed: u64, budget: u64) -> bool {
    if m.dims != n.dims {
        return false;
    }
    if m.is_zero() {
        return true;
    }
    let basis = hom_space(alg, m, n);
    if basis.is_empty() {
        return false;
    }
    let invertible = |h: &Homomorphism| h.iter().all(Mat::is_invertible);
    let p = alg.field().p();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..32 {
        let c: Vec<FieldElem> = (0..basis.len()).map(|_| rng.gen_range(0..p)).collect();
        if invertible(&combine(alg, &basis, &c)) {
            return true;
        }
    }
    let size = (0..basis.len()).fold(1u64, |acc, _| acc.saturating_mul(p as u64));
    if size > budget {
        return false;
    }
    let mut c = vec![0; basis.len()];
    loop {
        let mut j = 0;
        loop {
            if j == c.len() {
                return false;
            }
            c[j] = (c[j] + 1) % p;
            if c[j] != 0 {
                break;
            }
            j += 1;
        }
        if invertible(&combine(alg, &basis, &c)) {
            return true;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitVerdict {
    /// Single summand with split local endomorphism ring.
    Indecomposable,
    /// Proper splitting found; every summand has a split local
    /// endomorphism ring.
    Split,
    /// Some summand could not be split but its endomorphism ring is not
    /// split local (possibly indecomposable over `F_p` only).
    NoSplitFound,
}

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub summands: Vec<Representation>,
    pub verdict: SplitVerdict,
    pub field: u32,
    pub note: String,
}

/// Decomposes `M` by Fitting's lemma applied to random endomorphisms.
pub fn fitting_split(alg: &Algebra, m: &Representation, trials: usize, seed: u64) -> Result<Decomposition> {
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pending = vec![m.clone()];
    let mut leaves = Vec::new();
    let mut all_local = true;
    while let Some(x) = pending.pop() {
        if has_split_local_endomorphisms(alg, &x) {
            leaves.push(x);
            continue;
        }
        match split_once(alg, &x, trials, &mut rng)? {
            Some((a, b)) => {
                pending.push(a);
                pending.push(b);
            }
            None => {
                all_local = false;
                leaves.push(x);
            }
        }
    }
    if leaves.iter().map(Representation::dim).sum::<usize>() != m.dim() {
        return Err(Error::InvariantViolation("summand dimensions do not add up".into()));
    }
    let verdict = match (leaves.len(), all_local) {
        (_, false) => SplitVerdict::NoSplitFound,
        (1, true) => SplitVerdict::Indecomposable,
        _ => SplitVerdict::Split,
    };
    let note = match verdict {
        SplitVerdict::NoSplitFound => format!(
            "no split found after {trials} samples; endomorphism ring is not split local over F_{}",
            alg.field().p()
        ),
        _ => format!("over F_{}", alg.field().p()),
    };
    leaves.sort_by_key(|r| std::cmp::Reverse(r.dim()));
    Ok(Decomposition {
        summands: leaves,
        verdict,
        field: alg.field().p(),
        note,
    })
}

fn split_once(
    alg: &Algebra,
    m: &Representation,
    trials: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Option<(Representation, Representation)>> {
    let basis = hom_space(alg, m, m);
    let p = alg.field().p();
    let n = m.dim();
    for _ in 0..trials {
        let c: Vec<FieldElem> = (0..basis.len()).map(|_| rng.gen_range(0..p)).collect();
        let phi = combine(alg, &basis, &c);
        if let Some(lambda) = splitting_shift(&block_diag(alg, &phi)) {
            let powers: Vec<Mat> = phi
                .iter()
                .map(|b| b.sub(&Mat::scalar(alg.field(), b.rows(), lambda)).pow(n as u64))
                .collect();
            let kernels: Vec<Vec<Vec<FieldElem>>> = powers.iter().map(Mat::kernel_basis).collect();
            let images: Vec<Vec<Vec<FieldElem>>> = powers
                .iter()
                .zip(&m.dims)
                .map(|(b, &d)| span_basis(alg.field(), d, &b.image_basis()))
                .collect();
            let a = m.restrict_to(alg, &kernels)?;
            let b = m.restrict_to(alg, &images)?;
            return Ok(Some((a, b)));
        }
    }
    Ok(None)
}

/// `top(M)(v) = M(v) / Σ_{α: · → v} im M(α)`, returned as vectors of
/// `M(v)` completing a basis of the radical part.
fn top_generators(alg: &Algebra, m: &Representation) -> Vec<(usize, Vec<FieldElem>)> {
    let f = alg.field();
    let q = alg.quiver();
    let mut out = Vec::new();
    for v in 0..q.vertex_count() {
        let d = m.dims[v];
        let mut rad: Vec<Vec<FieldElem>> = Vec::new();
        for a in q.in_arrows(v) {
            rad.extend(m.maps[a].image_basis());
        }
        let mut span = span_basis(f, d, &rad);
        for i in 0..d {
            let mut e = vec![0; d];
            e[i] = 1;
            let mut trial = span.clone();
            trial.push(e.clone());
            let grown = span_basis(f, d, &trial);
            if grown.len() > span.len() {
                span = grown;
                out.push((v, e));
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectiveCover {
    /// Vertex of each indecomposable summand.
    pub tops: Vec<usize>,
    /// Image in `M(tops[j])` of the generator `e_{tops[j]}`.
    pub generators: Vec<Vec<FieldElem>>,
    /// The surjection `P(w) → M(w)` per vertex.
    pub maps: Vec<Mat>,
}

pub fn projective_cover(alg: &Algebra, m: &Representation) -> Result<ProjectiveCover> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let f = alg.field();
    let gens = top_generators(alg, m);
    let tops: Vec<usize> = gens.iter().map(|(v, _)| *v).collect();
    let maps = (0..alg.vertex_count())
        .map(|w| {
            let mut cols = Vec::new();
            for (v, g) in &gens {
                for i in alg.corner(*v, w) {
                    cols.push(m.path_matrix(alg, &alg.basis()[i]).mul_vec(g));
                }
            }
            Mat::from_columns(f, m.dims[w], &cols)
        })
        .collect::<Vec<_>>();
    for (w, pi) in maps.iter().enumerate() {
        if pi.rank() != m.dims[w] {
            return Err(Error::InvariantViolation(format!("cover is not onto at vertex {w}")));
        }
    }
    Ok(ProjectiveCover {
        tops,
        generators: gens.into_iter().map(|(_, g)| g).collect(),
        maps,
    })
}

/// Minimal presentation `P^0 → P^1 → M → 0` as a complex in degrees `[0, 1]`
/// with `H^1 ≅ M`.
pub fn presentation_complex(alg: &Algebra, m: &Representation) -> Result<ProjComplex> {
    let cover = projective_cover(alg, m)?;
    let p = Representation::projective_sum(alg, &cover.tops);
    // Ω(M) = ker π as a submodule of P, in path coordinates
    let kernels: Vec<Vec<Vec<FieldElem>>> = cover.maps.iter().map(Mat::kernel_basis).collect();
    let omega = p.restrict_to(alg, &kernels)?;
    let gens = if omega.is_zero() {
        Vec::new()
    } else {
        top_generators(alg, &omega)
    };
    let f = alg.field();
    let mut d = ProjMap::zero(alg, gens.iter().map(|(w, _)| *w).collect(), cover.tops.clone());
    for (k, (w, g)) in gens.iter().enumerate() {
        // back to P(w) = ⊕_j e_{v_j} A e_w
        let basis = Mat::from_columns(f, p.dims[*w], &kernels[*w]);
        let h = basis.mul_vec(g);
        let mut off = 0;
        for (j, &v) in cover.tops.iter().enumerate() {
            let r = alg.corner(v, *w);
            let coeffs = &h[off..off + r.len()];
            d.set(k, j, alg.from_corner(v, *w, coeffs)?);
            off += r.len();
        }
    }
    let x = ProjComplex::two_term(alg, d)?;
    validate(alg, &x)?;
    Ok(x)
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::complexes::{cohomology, is_indecomposable, SearchConfig};
    use crate::exactla::Field;
    use crate::fixtures;

    fn build(p: crate::algebra::Presentation) -> Algebra {
        Algebra::build(p).unwrap()
    }

    fn mat(alg: &Algebra, rows: &[&[i64]]) -> Mat {
        Mat::from_rows(alg.field(), rows).unwrap()
    }

    /// `k ⇉ k` with `a = s`, `b = t`.
    fn kron_11(alg: &Algebra, s: i64, t: i64) -> Representation {
        Representation::new(alg, vec![1, 1], vec![mat(alg, &[&[s]]), mat(alg, &[&[t]])]).unwrap()
    }

    #[test]
    fn check_representation_examples() {
        let l2 = build(fixtures::l2());
        assert!(check_representation(&l2, &Representation::zero(&l2)).is_ok());
        assert!(Representation::new(&l2, vec![1], vec![mat(&l2, &[&[0]])]).is_ok());
        assert_eq!(
            Representation::new(&l2, vec![1], vec![mat(&l2, &[&[1]])]),
            Err(Error::RelationViolated(0))
        );
        let k = build(fixtures::kronecker());
        kron_11(&k, 1, 7);
    }

    #[test]
    fn projectives_match_corner_dimensions() {
        for pres in [fixtures::a2(), fixtures::kronecker(), fixtures::l2(), fixtures::square_commutative()] {
            let alg = build(pres);
            for v in 0..alg.vertex_count() {
                let p = Representation::projective(&alg, v);
                assert!(check_representation(&alg, &p).is_ok());
                assert_eq!(p.dim(), alg.projective_dim(v));
            }
        }
    }

    #[test]
    fn hom_space_examples() {
        let a2 = build(fixtures::a2());
        let s1 = Representation::simple(&a2, 0);
        assert_eq!(hom_space(&a2, &s1, &s1).len(), 1);
        let p1 = Representation::projective(&a2, 0);
        let p2 = Representation::projective(&a2, 1);
        assert_eq!(hom_space(&a2, &p1, &p2).len(), 0);
        assert_eq!(hom_space(&a2, &p2, &p1).len(), 1);
    }

    #[test]
    fn yoneda_dimension() {
        for pres in [fixtures::a2(), fixtures::kronecker(), fixtures::l2(), fixtures::n2()] {
            let alg = build(pres);
            let ms = [
                Representation::projective_sum(&alg, &(0..alg.vertex_count()).collect::<Vec<_>>()),
                Representation::simple(&alg, 0),
            ];
            for m in &ms {
                for v in 0..alg.vertex_count() {
                    let pv = Representation::projective(&alg, v);
                    assert_eq!(hom_space(&alg, &pv, m).len(), m.dims()[v]);
                }
            }
        }
    }

    #[test]
    fn fitting_split_examples() {
        let a2 = build(fixtures::a2());
        let p1 = Representation::projective(&a2, 0);
        let d = fitting_split(&a2, &p1, 32, 7).unwrap();
        assert_eq!(d.verdict, SplitVerdict::Indecomposable);

        let pp = p1.direct_sum(&p1);
        let d = fitting_split(&a2, &pp, 32, 7).unwrap();
        assert_eq!(d.verdict, SplitVerdict::Split);
        assert_eq!(d.summands.len(), 2);
        for s in &d.summands {
            assert!(modules_isomorphic(&a2, s, &p1, 1, 1 << 16));
        }
        let rebuilt = d.summands[0].direct_sum(&d.summands[1]);
        assert!(modules_isomorphic(&a2, &rebuilt, &pp, 1, 1 << 16));

        let k = build(fixtures::kronecker());
        let m = kron_11(&k, 1, 5);
        assert_eq!(hom_space(&k, &m, &m).len(), 1);
        assert_eq!(fitting_split(&k, &m, 32, 7).unwrap().verdict, SplitVerdict::Indecomposable);
        assert_eq!(fitting_split(&k, &Representation::zero(&k), 1, 0).unwrap_err(), Error::ZeroModule);
    }

    #[test]
    fn presentation_of_projective_is_a_stalk() {
        let a2 = build(fixtures::a2());
        let x = presentation_complex(&a2, &Representation::projective(&a2, 0)).unwrap();
        assert!(x.term(0).is_empty());
        assert_eq!(x.term(1), &[0]);
        assert_eq!(cohomology(&a2, &x).h, vec![0, 2]);
    }

    #[test]
    fn presentation_of_simple_top() {
        let a2 = build(fixtures::a2());
        let x = presentation_complex(&a2, &Representation::simple(&a2, 0)).unwrap();
        assert_eq!(x.term(0), &[1]);
        assert_eq!(x.term(1), &[0]);
        assert_eq!(cohomology(&a2, &x).h, vec![0, 1]);
    }

    #[test]
    fn presentation_of_kronecker_regular_module() {
        let k = build(fixtures::kronecker());
        let lambda = 3;
        let x = presentation_complex(&k, &kron_11(&k, 1, lambda)).unwrap();
        assert_eq!(x.term(0), &[1]);
        assert_eq!(x.term(1), &[0]);
        let c = cohomology(&k, &x);
        assert_eq!(c.h, vec![0, 2]);
        // kernel of the cover is spanned by b - λa
        let e = x.diff(0).entry(0, 0);
        let coeffs = k.to_corner(e, 0, 1);
        let f = k.field();
        assert_eq!(f.mul(coeffs[0], f.inv(coeffs[1])), f.neg(lambda as u32));
        assert!(is_indecomposable(&k, &x, &SearchConfig::default()).unwrap().indecomposable);
    }

    #[test]
    fn presentation_over_l2_has_nonzero_h0() {
        let l2 = build(fixtures::l2());
        let s = Representation::simple(&l2, 0);
        let x = presentation_complex(&l2, &s).unwrap();
        // A --α--> A: H^1 = S, H^0 = Ω²S = S
        assert_eq!(cohomology(&l2, &x).h, vec![1, 1]);
    }

    fn rep_inf_sandwich(alg: &Algebra, m: &Representation) {
        let x = presentation_complex(alg, m).unwrap();
        let c = cohomology(alg, &x);
        let d = m.dim();
        let bound = 2 * alg.dim() * alg.dim() * d;
        assert!(d <= c.hr && c.hr <= bound, "d = {d}, hr = {}, bound {bound}", c.hr);
        assert_eq!(c.h[1], d);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn kronecker_presentations_satisfy_the_sandwich(s in 0i64..7, t in 0i64..7, extra in 0usize..2) {
            let k = Algebra::build(fixtures::kronecker().with_field(Field::new(7).unwrap()).unwrap()).unwrap();
            let mut m = Representation::new(&k, vec![1, 1], vec![mat(&k, &[&[s]]), mat(&k, &[&[t]])]).unwrap();
            if extra == 1 {
                m = m.direct_sum(&Representation::simple(&k, 1));
            }
            rep_inf_sandwich(&k, &m);
            let d = fitting_split(&k, &m, 16, 3).unwrap();
            prop_assert_eq!(d.summands.iter().map(Representation::dim).sum::<usize>(), m.dim());
            let mut rebuilt = d.summands[0].clone();
            for s in &d.summands[1..] {
                rebuilt = rebuilt.direct_sum(s);
            }
            prop_assert!(modules_isomorphic(&k, &rebuilt, &m, 5, 1 << 16));
        }
    }
}
