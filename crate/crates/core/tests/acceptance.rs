//! Acceptance run: one line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use derange::algebra::{fundamental_group_report, Algebra, GroupVerdict, Presentation};
use derange::categories::{
    an_l_to_truncated, build_an_l, is_cleaving_cond1, repetitive_slice, slice_projective_dimvec, LinearFunctor,
};
use derange::classifier::{algebra_at, classify, enumerate_cm, enumerate_raw, CensusTable, Verdict};
use derange::complexes::{
    cohomology, is_indecomposable, is_isomorphic, shift_embed, validate, IsoCertificate, IsoMode, ProjComplex,
    SearchConfig,
};
use derange::exactla::Mat;
use derange::fixtures;
use derange::gentle::{find_bands, witness_family};
use derange::modules::{has_split_local_endomorphisms, presentation_complex, Representation};
use derange::Config;

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed())
}

fn all_fixtures() -> Vec<(&'static str, Presentation)> {
    vec![
        ("A2", fixtures::a2()),
        ("A3", fixtures::a3()),
        ("D4", fixtures::d4()),
        ("L2", fixtures::l2()),
        ("N2", fixtures::n2()),
        ("C3", fixtures::cycle3()),
        ("K", fixtures::kronecker()),
        ("A2~", fixtures::a2_tilde()),
        ("SQ", fixtures::square_commutative()),
    ]
}

fn census(p: &Presentation, prime: u32, m: usize, caps: &[usize]) -> Result<(Algebra, CensusTable), String> {
    let alg = algebra_at(p, prime).map_err(|e| e.to_string())?;
    let t = enumerate_cm(&alg, m, caps, &Config::default()).map_err(|e| e.to_string())?;
    Ok((alg, t))
}

fn c1_classification() -> Result<String, String> {
    let discrete = [
        ("A2", fixtures::a2()),
        ("A3", fixtures::a3()),
        ("D4", fixtures::d4()),
        ("L2", fixtures::l2()),
        ("N2", fixtures::n2()),
        ("C3", fixtures::cycle3()),
    ];
    let unbounded = [("K", fixtures::kronecker()), ("A2~", fixtures::a2_tilde())];
    let mut slowest = Duration::ZERO;
    for (expected, list) in [
        (Verdict::DerivedDiscrete, &discrete[..]),
        (Verdict::StronglyDerivedUnbounded, &unbounded[..]),
    ] {
        for (name, p) in list {
            let (r, t) = timed(|| classify(p));
            let r = r.map_err(|e| format!("{name}: {e}"))?;
            ensure(r.verdict == expected, format!("{name}: got {}", r.verdict.as_str()))?;
            ensure(t < Duration::from_secs(1), format!("{name}: took {t:?}"))?;
            slowest = slowest.max(t);
        }
    }
    Ok(format!("8 fixtures classified, slowest {slowest:?}"))
}

fn c2_census_counts() -> Result<String, String> {
    let (_, a2) = census(&fixtures::a2(), 2, 1, &[2, 2])?;
    ensure(a2.indecomposable_count() == 5, format!("A2: {}", a2.indecomposable_count()))?;
    for p in [2, 3] {
        let (_, l2) = census(&fixtures::l2(), p, 1, &[2, 2])?;
        ensure(l2.indecomposable_count() == 3, format!("L2 p={p}: {}", l2.indecomposable_count()))?;
    }
    for p in [2u32, 3, 5] {
        let (_, k) = census(&fixtures::kronecker(), p, 1, &[1, 1])?;
        let n = k.non_stalk_indecomposable_count();
        ensure(n == p as usize + 1, format!("K p={p}: {n} non-stalk"))?;
    }
    Ok("A2 5, L2 3/3, K 3/4/6".into())
}

fn census_windows() -> Vec<(usize, Vec<usize>)> {
    vec![(0, vec![2]), (1, vec![2, 2]), (2, vec![1, 1, 1])]
}

/// Every enumerated complex of every fixture over F_2.
fn every_census_complex() -> Result<Vec<(Algebra, Vec<ProjComplex>)>, String> {
    let mut out = Vec::new();
    for (name, p) in all_fixtures() {
        let alg = algebra_at(&p, 2).map_err(|e| e.to_string())?;
        for (m, caps) in census_windows() {
            let raw = enumerate_raw(&alg, m, &caps, 1 << 22).map_err(|e| format!("{name} m={m}: {e}"))?;
            out.push((alg.clone(), raw.into_iter().flatten().collect()));
        }
    }
    Ok(out)
}

fn geometric(d: u64, from: u32, to: u32) -> u64 {
    (from..=to).map(|k| d.pow(k)).sum()
}

fn c3_dim_control() -> Result<String, String> {
    let (mut checked, mut bad) = (0, 0);
    for (alg, xs) in every_census_complex()? {
        let d = alg.dim() as u64;
        for x in xs {
            let c = cohomology(&alg, &x).hl as u64;
            let m = x.m() as u32;
            for (i, dim) in x.term_dims(&alg).into_iter().enumerate() {
                checked += 1;
                if dim as u64 > c * geometric(d, 1, m - i as u32 + 1) {
                    bad += 1;
                }
            }
        }
    }
    ensure(bad == 0, format!("{bad} violations"))?;
    Ok(format!("{checked} degree checks, 0 violations"))
}

fn c4_dim_hr() -> Result<String, String> {
    let (mut checked, mut bad) = (0, 0);
    for (alg, xs) in every_census_complex()? {
        let d = alg.dim() as u64;
        for x in xs {
            let prof = cohomology(&alg, &x);
            let m = x.m() as u64;
            let n = (m + 1) * geometric(d, 1, m as u32 + 1);
            let (hr, dim) = (prof.hr as u64, prof.dim as u64);
            checked += 1;
            if hr > (m + 1) * dim || dim > n * hr {
                bad += 1;
            }
        }
    }
    ensure(bad == 0, format!("{bad} violations"))?;
    Ok(format!("{checked} complexes, 0 violations"))
}

fn c5_iso_oracle() -> Result<String, String> {
    let cases: Vec<(Presentation, u32, usize, Vec<usize>)> = vec![
        (fixtures::a2(), 2, 1, vec![2, 2]),
        (fixtures::l2(), 3, 1, vec![2, 2]),
        (fixtures::kronecker(), 3, 1, vec![1, 1]),
        (fixtures::n2(), 2, 1, vec![1, 1]),
        (fixtures::a2(), 2, 2, vec![1, 1, 1]),
        (fixtures::cycle3(), 2, 1, vec![1, 1]),
    ];
    let randomized = SearchConfig {
        trials: 64,
        budget: 1 << 20,
        seed: 17,
    };
    let exhaustive = SearchConfig::default();
    let (mut pairs, mut classes) = (0, 0);
    for (p, prime, m, caps) in cases {
        let alg = algebra_at(&p, prime).map_err(|e| e.to_string())?;
        let raw: Vec<ProjComplex> = enumerate_raw(&alg, m, &caps, 1 << 22)
            .map_err(|e| e.to_string())?
            .into_iter()
            .flatten()
            .collect();
        let step = raw.len().div_ceil(200).max(1);
        let sample: Vec<&ProjComplex> = raw.iter().step_by(step).collect();
        for i in 0..sample.len() {
            for j in i..sample.len() {
                let r = is_isomorphic(&alg, sample[i], sample[j], IsoMode::Randomized, &randomized)
                    .map_err(|e| e.to_string())?;
                let e = is_isomorphic(&alg, sample[i], sample[j], IsoMode::Exhaustive, &exhaustive)
                    .map_err(|e| e.to_string())?;
                ensure(r.isomorphic == e.isomorphic, format!("pair ({i}, {j}) disagrees"))?;
                pairs += 1;
            }
        }
        let t = enumerate_cm(&alg, m, &caps, &Config::default()).map_err(|e| e.to_string())?;
        for c in &t.classes {
            let r = is_indecomposable(&alg, &c.representative, &exhaustive).map_err(|e| e.to_string())?;
            ensure(
                r.indecomposable == c.indecomposable,
                format!("indecomposability disagrees on class with H = {:?}", c.cohomology),
            )?;
            classes += 1;
        }
    }
    Ok(format!("{pairs} pairs and {classes} classes agree"))
}

fn c6_band_family() -> Result<String, String> {
    let k = Algebra::build(fixtures::kronecker()).map_err(|e| e.to_string())?;
    let band = find_bands(&k, 8).map_err(|e| e.to_string())?.bands[0].clone();
    let lambdas: Vec<u32> = (1..=10).map(|i| 7 * i % 101).collect();
    let cfg = SearchConfig::default();
    let w = witness_family(&k, &band, &[1, 2, 3], &lambdas, &cfg).map_err(|e| e.to_string())?;
    ensure(w.members.len() == 30, format!("{} members", w.members.len()))?;
    for a in &w.members {
        ensure(a.dim == 4 * a.degree, format!("d={} has dim {}", a.degree, a.dim))?;
        ensure(a.indecomposable_certain, "indecomposability not certain")?;
        for b in &w.members {
            ensure((a.dim == b.dim) == (a.degree == b.degree), "dimension does not track degree")?;
        }
    }
    // independent exhaustive non-isomorphism within each degree
    for d in [1, 2, 3] {
        let xs: Vec<ProjComplex> = lambdas
            .iter()
            .map(|&l| derange::gentle::band_complex(&k, &band, l, d))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        for x in &xs {
            ensure(validate(&k, x).is_ok(), "band complex not minimal")?;
        }
        for i in 0..xs.len() {
            for j in i + 1..xs.len() {
                let r = is_isomorphic(&k, &xs[i], &xs[j], IsoMode::Exhaustive, &cfg).map_err(|e| e.to_string())?;
                ensure(
                    !r.isomorphic && matches!(r.certificate, IsoCertificate::Exhausted { .. }),
                    format!("d={d}: pair ({i}, {j}) not excluded"),
                )?;
            }
        }
    }
    Ok("30 complexes, dims 4/8/12, 135 pairs exhaustively non-isomorphic".into())
}

/// Preprojective Kronecker module of dimension vector `(n, n+1)`.
fn preprojective(k: &Algebra, n: usize) -> Representation {
    let f = k.field();
    let mut a = Mat::zeros(f, n + 1, n);
    let mut b = Mat::zeros(f, n + 1, n);
    for i in 0..n {
        a.set(i, i, 1);
        b.set(i + 1, i, 1);
    }
    Representation::new(k, vec![n, n + 1], vec![a, b]).expect("module")
}

fn c7_rep_inf() -> Result<String, String> {
    let k = Algebra::build(fixtures::kronecker()).map_err(|e| e.to_string())?;
    let cfg = SearchConfig::default();
    let bound = 2 * k.dim() * k.dim();
    for n in 1..=10 {
        let m = preprojective(&k, n);
        let d = m.dim();
        ensure(has_split_local_endomorphisms(&k, &m), format!("module of dim {d} decomposes"))?;
        let x = presentation_complex(&k, &m).map_err(|e| e.to_string())?;
        ensure(x.m() == 1 && validate(&k, &x).is_ok(), "presentation not in C_1")?;
        let hr = cohomology(&k, &x).hr;
        ensure(d <= hr && hr <= bound * d, format!("dim {d}: hr {hr}"))?;
        let ind = is_indecomposable(&k, &x, &cfg).map_err(|e| e.to_string())?;
        ensure(ind.indecomposable && ind.certain, format!("dim {d}: presentation decomposes"))?;
    }
    Ok(format!("dims 3..21, hr within [d, {bound}d]"))
}

fn c8_cleaving() -> Result<String, String> {
    let an = Algebra::build(build_an_l(3, 3).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let t3 = Algebra::build(fixtures::truncated_polynomial(3)).map_err(|e| e.to_string())?;
    let f = an_l_to_truncated(&an, &t3).map_err(|e| e.to_string())?;
    ensure(is_cleaving_cond1(&f).map_err(|e| e.to_string())?.holds, "A_3^3 functor rejected")?;
    let a2 = Algebra::build(fixtures::a2()).map_err(|e| e.to_string())?;
    let l2 = Algebra::build(fixtures::l2()).map_err(|e| e.to_string())?;
    let zero = LinearFunctor::from_arrow_images(&a2, &l2, vec![0, 0], &[l2.zero()]).map_err(|e| e.to_string())?;
    ensure(!is_cleaving_cond1(&zero).map_err(|e| e.to_string())?.holds, "zero functor accepted")?;
    Ok("A_3^3 -> k[x]/(x^3) true, arrow-to-zero false".into())
}

fn c9_pi1() -> Result<String, String> {
    let cases = [
        ("SQ", fixtures::square_commutative(), GroupVerdict::Trivial),
        ("SQ0", fixtures::square_zero_relations(), GroupVerdict::Nontrivial),
        ("A2", fixtures::a2(), GroupVerdict::Trivial),
    ];
    for (name, p, expected) in cases {
        let alg = Algebra::build(p).map_err(|e| e.to_string())?;
        let (r, t) = timed(|| fundamental_group_report(&alg));
        ensure(r.verdict == expected, format!("{name}: {:?}", r.verdict))?;
        ensure(t < Duration::from_millis(100), format!("{name}: took {t:?}"))?;
        if name == "SQ0" {
            ensure(
                r.abelianization.free_rank == 1 && r.abelianization.torsion.is_empty(),
                "SQ0 abelianization is not Z",
            )?;
        }
    }
    Ok("SQ trivial, SQ0 Z, A2 trivial".into())
}

fn c10_repetitive() -> Result<String, String> {
    let a2 = Algebra::build(fixtures::a2()).map_err(|e| e.to_string())?;
    let s = repetitive_slice(&a2, 0, 1).map_err(|e| e.to_string())?;
    for a in 0..2 {
        for b in 0..2 {
            ensure(s.hom_dim((a, 0), (b, 0)) == a2.corner_dim(a, b), "same-level hom")?;
            ensure(s.hom_dim((a, 0), (b, 1)) == a2.corner_dim(b, a), "raising hom")?;
            ensure(s.hom_dim((a, 1), (b, 0)) == 0, "lowering hom")?;
        }
    }
    let totals: Vec<usize> = (0..2)
        .map(|a| slice_projective_dimvec(&s, a, 0).map(|v| v.total))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(totals == vec![3, 3], format!("projective totals {totals:?}"))?;
    let wide = repetitive_slice(&a2, 0, 3).map_err(|e| e.to_string())?;
    for i in 0..=3 {
        for j in i + 2..=3 {
            for a in 0..2 {
                for b in 0..2 {
                    ensure(wide.hom_dim((a, i), (b, j)) == 0, format!("hom across {} levels", j - i))?;
                }
            }
        }
    }
    wide.category.check_associativity().map_err(|e| e.to_string())?;
    s.category.check_associativity().map_err(|e| e.to_string())?;
    Ok("hom table, totals (3,3), vanishing and associativity".into())
}

fn c11_embedding() -> Result<String, String> {
    let (alg, c1) = census(&fixtures::a2(), 2, 1, &[2, 2])?;
    let (_, c2) = census(&fixtures::a2(), 2, 2, &[2, 2, 2])?;
    let cfg = SearchConfig::default();
    let targets: Vec<&ProjComplex> = c2.indecomposables().map(|c| &c.representative).collect();
    let mut found = 0;
    for class in c1.indecomposables() {
        for offset in [0, 1] {
            let y = shift_embed(&alg, &class.representative, offset, 2).map_err(|e| e.to_string())?;
            let (a, b) = (cohomology(&alg, &class.representative), cohomology(&alg, &y));
            ensure((a.hl, a.hw, a.hr) == (b.hl, b.hw, b.hr), "range changed under embedding")?;
            let mut hit = false;
            for t in &targets {
                if is_isomorphic(&alg, &y, t, IsoMode::Exhaustive, &cfg).map_err(|e| e.to_string())?.isomorphic {
                    hit = true;
                    break;
                }
            }
            ensure(hit, format!("embedded class H = {:?} missing", class.cohomology))?;
        }
        found += 1;
    }
    ensure(found == 5, format!("{found} C_1 indecomposables"))?;
    Ok(format!("5 of 5 embed into {} C_2 indecomposables", targets.len()))
}

fn main() {
    let criteria: [(&str, Check); 11] = [
        ("classification table", c1_classification),
        ("exact census counts", c2_census_counts),
        ("degreewise dimension bound", c3_dim_control),
        ("range/dimension sandwich", c4_dim_hr),
        ("isomorphism and indecomposability oracles", c5_iso_oracle),
        ("band witness family", c6_band_family),
        ("preprojective presentations in C_1", c7_rep_inf),
        ("cleaving condition", c8_cleaving),
        ("fundamental group", c9_pi1),
        ("repetitive slice", c10_repetitive),
        ("embedding C_1 into C_2", c11_embedding),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let (result, t) = timed(|| catch_unwind(AssertUnwindSafe(check)));
        let result = result.unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{t:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{t:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
