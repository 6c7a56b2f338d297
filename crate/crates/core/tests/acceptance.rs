//! Acceptance suite: one line per criterion, nonzero exit status if any fails.

use std::fs;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use afftl::algebra::{check_central, check_presentation, AlgebraElement, Flavor};
use afftl::annular::enumerate_annular;
use afftl::cells::{
    classify_simples, gram_matrix, jones_basis, verify_cellularity, CellModule, EvenBase,
};
use afftl::diagram::{canonical_gaps, Diagram};
use afftl::scalars::{Ring, Scalar};
use afftl::Error;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T>(r: afftl::Result<T>) -> Result<T, String> {
    r.map_err(|err| err.to_string())
}

/// Involutions of `1..=n` with `t` fixed points that satisfy the interval conditions directly.
fn annular_oracle(n: usize, t: usize) -> Vec<Vec<usize>> {
    fn all(i: usize, map: &mut Vec<usize>, acc: &mut Vec<Vec<usize>>) {
        let n = map.len();
        if i > n {
            acc.push(map.clone());
            return;
        }
        if map[i - 1] != 0 {
            return all(i + 1, map, acc);
        }
        map[i - 1] = i;
        all(i + 1, map, acc);
        for j in i + 1..=n {
            if map[j - 1] == 0 {
                map[i - 1] = j;
                map[j - 1] = i;
                all(i + 1, map, acc);
                map[j - 1] = 0;
            }
        }
        map[i - 1] = 0;
    }
    let mut acc = Vec::new();
    all(1, &mut vec![0; n], &mut acc);
    acc.retain(|m| {
        let fixed: Vec<usize> = (1..=n).filter(|&i| m[i - 1] == i).collect();
        if fixed.len() != t {
            return false;
        }
        (1..=n).all(|i| {
            let j = m[i - 1];
            if j <= i {
                return true;
            }
            let closed = (i..=j).all(|k| (i..=j).contains(&m[k - 1]));
            let inside = fixed.iter().filter(|&&f| i <= f && f <= j).count();
            closed && (inside == 0 || inside == fixed.len())
        })
    });
    acc.sort();
    acc
}

fn presentation() -> Check {
    let mut cases = 0;
    for n in 3..=7 {
        for r in e(check_presentation(n))? {
            ensure(r.failures.is_empty(), || {
                format!("n = {n}: {} fails on {:?}", r.name, r.failures)
            })?;
            cases += r.cases;
        }
    }
    Ok(format!("{cases} relation instances"))
}

fn normal_form_bijection() -> Check {
    let mut count = 0;
    for n in 3..=5 {
        for t in 0..=n {
            let ann = enumerate_annular(n, t);
            for s1 in &ann {
                for s2 in &ann {
                    let forms: Vec<Diagram> = if t == 0 {
                        let mut v = Vec::new();
                        for &g1 in &canonical_gaps(s1) {
                            for &g2 in &canonical_gaps(s2) {
                                for k in 0..=3 {
                                    v.push(e(Diagram::loops(s1.clone(), s2.clone(), k, g1, g2))?);
                                }
                            }
                        }
                        v
                    } else {
                        (-6..=6)
                            .map(|w| e(Diagram::strands(s1.clone(), s2.clone(), w)))
                            .collect::<Result<_, _>>()?
                    };
                    for d in forms {
                        let back = e(Diagram::normalize(&d.realize()))?;
                        ensure(back == d, || format!("{d:?} came back as {back:?}"))?;
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{count} normal forms"))
}

fn winding() -> Check {
    for n in 3..=7 {
        let u = Diagram::u_pow(n, 1);
        let ui = Diagram::u_pow(n, -1);
        ensure(e(u.winding())? == 1, || format!("w(u) != 1 at n = {n}"))?;
        for i in 1..=n {
            let ei = e(Diagram::e(n, i))?;
            ensure(e(ei.winding())? == 0, || format!("w(E{i}) != 0 at n = {n}"))?;
        }
        for m in -8i64..=8 {
            let step = if m < 0 { &ui } else { &u };
            let mut d = Diagram::identity(n);
            for _ in 0..m.abs() {
                d = e(d.compose(step))?.1;
            }
            ensure(e(d.winding())? == m, || {
                format!("w(u^{m}) != {m} at n = {n}")
            })?;
        }
    }
    Ok("n = 3..7, |m| <= 8".into())
}

fn random_word(n: usize, rng: &mut ChaCha8Rng) -> Result<Diagram, String> {
    let mut d = Diagram::identity(n);
    for _ in 0..rng.gen_range(1..=8) {
        let k = rng.gen_range(0..n + 2);
        let g = if k < n {
            e(Diagram::e(n, k + 1))?
        } else {
            Diagram::u_pow(n, if k == n { 1 } else { -1 })
        };
        d = e(d.compose(&g))?.1;
    }
    Ok(d)
}

fn parity_and_epsilon() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let r = Ring::integer();
    for _ in 0..1000 {
        let n = rng.gen_range(3..=7);
        let a = random_word(n, &mut rng)?;
        let b = random_word(n, &mut rng)?;
        let (_, ab) = e(a.compose(&b))?;
        ensure(ab.is_odd() == (a.is_odd() != b.is_odd()), || {
            format!("parity of {a:?} * {b:?}")
        })?;
        let x = AlgebraElement::from_diagram(a, r);
        let y = AlgebraElement::from_diagram(b, r);
        let xy = e(x.mul(&y))?;
        ensure(
            xy.apply_epsilon() == e(x.apply_epsilon().mul(&y.apply_epsilon()))?,
            || "epsilon not multiplicative".into(),
        )?;
        ensure(x.apply_epsilon().apply_epsilon() == x, || {
            "epsilon not involutive".into()
        })?;
        let sum = e(x.add(&y))?;
        let (even, odd) = e(sum.decompose_on())?;
        let u = AlgebraElement::u_pow(n, 1, r);
        ensure(e(even.add(&e(u.mul(&odd))?))? == sum, || {
            "decompose_on does not reassemble".into()
        })?;
        ensure(even.is_in(Flavor::ON) && odd.is_in(Flavor::ON), || {
            "decompose_on parts not in O_n".into()
        })?;
    }
    ensure(Diagram::u_pow(4, 1).is_odd(), || "u should be odd".into())?;
    for n in 3..=5 {
        for t in 1..=n {
            let ann = enumerate_annular(n, t);
            for s1 in &ann {
                for s2 in &ann {
                    for w in -4..=4 {
                        let d = e(Diagram::strands(s1.clone(), s2.clone(), w))?;
                        let d1 = e(d.with_winding(w + 1))?;
                        ensure(d.is_odd() != d1.is_odd(), || {
                            format!("parity does not flip at {d:?}")
                        })?;
                    }
                }
            }
        }
    }
    Ok("1000 random products; flips exhaustive for n <= 5".into())
}

fn centrality() -> Check {
    for n in 3..=7 {
        ensure(e(check_central(n))?, || format!("u^{n} is not central"))?;
    }
    Ok("n = 3..7".into())
}

fn annular_enumeration() -> Check {
    for n in 1..=8 {
        for t in 0..=n {
            let got: Vec<Vec<usize>> = enumerate_annular(n, t)
                .iter()
                .map(|s| s.map().to_vec())
                .collect();
            ensure(got == annular_oracle(n, t), || format!("n = {n}, t = {t}"))?;
        }
    }
    for (n, t, c) in [(3, 1, 3), (3, 3, 1), (4, 0, 2), (4, 2, 4), (4, 4, 1)] {
        let got = enumerate_annular(n, t).len();
        ensure(got == c && annular_oracle(n, t).len() == c, || {
            format!("|Ann({n}) ∩ I({t})| = {got}, expected {c}")
        })?;
    }
    Ok("n <= 8, all t".into())
}

fn jones_sizes() -> Check {
    let mut totals = Vec::new();
    for n in 3..=6 {
        let basis = e(jones_basis(n, EvenBase::Offset))?;
        let mut total = 0;
        for tau in (1..=n).filter(|t| (n - t) % 2 == 0) {
            let window = if n % 2 == 1 { tau } else { tau / 2 };
            let expected = window * annular_oracle(n, tau).len().pow(2);
            let got = basis
                .iter()
                .find(|s| s.strands == tau)
                .map_or(0, |s| s.elements.len());
            ensure(got == expected, || {
                format!("n = {n}, tau = {tau}: {got} vs {expected}")
            })?;
            total += got;
        }
        ensure(
            basis.iter().map(|s| s.elements.len()).sum::<usize>() == total,
            || format!("extra strata at n = {n}"),
        )?;
        totals.push(total);
    }
    ensure(totals[0] == 12, || "n = 3 total is not 12".into())?;
    Ok(format!("totals {totals:?} for n = 3..6"))
}

fn cellularity() -> Check {
    let two = BigRational::from_integer(2.into());
    let mut checked = 0;
    for n in 3..=5 {
        let report = e(verify_cellularity(n, &two, EvenBase::ArcCount))?;
        for c in &report.conditions {
            ensure(c.passed, || {
                format!("n = {n}: {} fails: {:?}", c.name, c.failures)
            })?;
            checked += c.checked;
        }
    }
    Ok(format!(
        "{checked} instances at alpha = 2 (even-rank window based at the seam-arc count)"
    ))
}

fn module_flavors(n: usize) -> Vec<Flavor> {
    if n % 2 == 1 {
        vec![Flavor::DN, Flavor::ON, Flavor::TL]
    } else {
        vec![Flavor::ON, Flavor::TL]
    }
}

fn module_correctness() -> Check {
    let mut modules = 0;
    for n in 3..=6 {
        for tau in (1..=n).filter(|t| (n - t) % 2 == 0) {
            for flavor in module_flavors(n) {
                let m = e(CellModule::symbolic(n, tau, flavor))?;
                ensure(m.dim() == annular_oracle(n, tau).len(), || {
                    format!("dim W({tau}) at n = {n}")
                })?;
                for r in e(m.check_relations())? {
                    ensure(r.failures.is_empty(), || {
                        format!("n = {n}, tau = {tau}, {flavor}: {} fails", r.name)
                    })?;
                }
                ensure(e(m.check_scalar_rule())?, || {
                    format!("scalar rule fails: n = {n}, tau = {tau}, {flavor}")
                })?;
                modules += 1;
            }
        }
    }
    Ok(format!("{modules} modules, symbolic alpha"))
}

fn twist_and_restriction() -> Check {
    for n in [3, 5] {
        for tau in (1..=n).step_by(2) {
            let m = e(CellModule::symbolic(n, tau, Flavor::DN))?;
            ensure(e(m.check_epsilon_twist())?, || {
                format!("epsilon twist fails: n = {n}, tau = {tau}")
            })?;
            ensure(e(m.check_restriction())?, || {
                format!("restriction fails: n = {n}, tau = {tau}")
            })?;
        }
    }
    Ok("n = 3, 5, all strata".into())
}

fn classification() -> Check {
    for n in 3..=8 {
        for flavor in [Flavor::DN, Flavor::ON, Flavor::TL] {
            let got = classify_simples(n, flavor);
            if n % 2 == 0 && flavor == Flavor::DN {
                ensure(matches!(got, Err(Error::NotCovered(_))), || {
                    format!("D_{n} not rejected")
                })?;
                continue;
            }
            let table = e(got)?;
            let mut expected: Vec<usize> = if n % 2 == 1 {
                (1..=n).step_by(2).collect()
            } else {
                (1..=n / 2).map(|t| 2 * t).collect()
            };
            if flavor == Flavor::TL {
                expected.pop();
            }
            let strata: Vec<usize> = table.rows.iter().filter_map(|r| r.strands).collect();
            ensure(strata == expected, || {
                format!("n = {n}, {flavor}: strata {strata:?}, expected {expected:?}")
            })?;
            let trivial = table.rows.iter().filter(|r| r.strands.is_none()).count();
            ensure(trivial == usize::from(flavor == Flavor::TL), || {
                format!("n = {n}, {flavor}: trivial rows")
            })?;
            let delta = if flavor == Flavor::DN { 1 } else { 2 };
            for r in table.rows.iter().filter(|r| r.strands.is_some()) {
                let tau = r.strands.unwrap();
                ensure(
                    r.dim == annular_oracle(n, tau).len() && r.delta == Some(delta),
                    || format!("n = {n}, {flavor}, tau = {tau}"),
                )?;
            }
        }
    }
    Ok("n = 3..8".into())
}

fn generic_gram_rank() -> Check {
    let alpha = e(Scalar::alpha(Ring::integer_alpha()))?;
    let mut out = Vec::new();
    for (n, tau) in [(3, 1), (4, 2)] {
        let g = e(gram_matrix(n, tau, &alpha, EvenBase::ArcCount))?;
        let dim = annular_oracle(n, tau).len();
        ensure(g.rank == dim, || {
            format!("n = {n}, tau = {tau}: rank {} vs dim {dim}", g.rank)
        })?;
        out.push(format!("rank {} at (n, tau) = ({n}, {tau})", g.rank));
    }
    Ok(out.join(", "))
}

fn cli_golden() -> Check {
    let golden = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let cache = tempfile::tempdir().map_err(|err| err.to_string())?;
    let run = |args: &[&str], cached: bool| -> Result<Vec<u8>, String> {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_afftl"));
        cmd.args(args).env_remove("AFFTL_CACHE_DIR");
        if cached {
            cmd.arg("--cache").arg(cache.path());
        }
        let out = cmd.output().map_err(|err| err.to_string())?;
        ensure(out.status.success(), || {
            format!("{args:?} exited with {:?}", out.status.code())
        })?;
        Ok(out.stdout)
    };
    for (name, args) in common::CORPUS {
        let expected =
            fs::read(golden.join(format!("{name}.json"))).map_err(|err| err.to_string())?;
        for (label, cached) in [
            ("uncached", false),
            ("cache miss", true),
            ("cache hit", true),
        ] {
            ensure(run(args, cached)? == expected, || {
                format!("{name}: {label} output differs")
            })?;
        }
    }
    Ok(format!(
        "{} invocations, uncached, cache miss and cache hit",
        common::CORPUS.len()
    ))
}

fn main() {
    let criteria: Vec<(&str, Option<u64>, fn() -> Check)> = vec![
        ("presentation relations, n = 3..7", Some(10), presentation),
        (
            "normal-form bijection, n = 3..5",
            Some(30),
            normal_form_bijection,
        ),
        ("winding regression", None, winding),
        ("parity and epsilon", None, parity_and_epsilon),
        ("centrality of u^n", None, centrality),
        ("annular enumeration oracle", None, annular_enumeration),
        ("q-Jones basis sizes", None, jones_sizes),
        ("cellularity, n = 3..5, alpha = 2", Some(60), cellularity),
        ("cell-module correctness", None, module_correctness),
        ("epsilon twist and restriction", None, twist_and_restriction),
        ("classification tables", None, classification),
        ("generic Gram rank", None, generic_gram_rank),
        ("CLI golden outputs", None, cli_golden),
    ];
    let total = Instant::now();
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let over = limit.is_some_and(|s| took > Duration::from_secs(s));
        let limit_note = limit.map_or(String::new(), |s| format!(", limit {s}s"));
        match (&result, over) {
            (Ok(detail), false) => println!(
                "PASS {:>2} {name} ({took:.2?}{limit_note}): {detail}",
                i + 1
            ),
            (Ok(_), true) => {
                failed += 1;
                println!(
                    "FAIL {:>2} {name} ({took:.2?}{limit_note}): over time limit",
                    i + 1
                );
            }
            (Err(why), _) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({took:.2?}{limit_note}): {why}", i + 1);
            }
        }
    }
    println!(
        "{} of 13 criteria passed in {:.2?}",
        13 - failed,
        total.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
