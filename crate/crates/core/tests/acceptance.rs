//! Acceptance criteria, one PASS/FAIL line each. Run with
//! `cargo test -p ncfree-core --test acceptance`.

use std::process::ExitCode;
use std::time::Instant;

use ncfree_core::corpus;
use ncfree_core::freeprob;
use ncfree_core::matrix::{OperatorMatrix, ScalarMatrix};
use ncfree_core::mc::{self, McConfig};
use ncfree_core::ncpartition::{self, Partition, PartitionPermutation};
use ncfree_core::opvalued::{self, OpSpace};
use ncfree_core::oracle;
use ncfree_core::rational::{self, int, rat, Rat};
use ncfree_core::rcyclic::{self, MatrixFamily, RCyclicFamily};
use ncfree_core::series::{self, Series};
use ncfree_core::verify;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn nc_counts() -> Outcome {
    let catalan = [1, 2, 5, 14, 42, 132, 429];
    for (n, &c) in (1..=7).zip(&catalan) {
        let fast = ncpartition::enumerate_nc(n).map_err(e)?.len();
        let filtered = oracle::naive_nc(n).map_err(e)?.len();
        ensure(fast == c && filtered == c, || {
            format!("n={n}: {fast} / filter {filtered}, want {c}")
        })?;
    }
    Ok("n=1..7 match Catalan numbers and the set-partition filter".into())
}

fn kreweras() -> Outcome {
    let mut checked = 0;
    for n in 1..=7 {
        let gamma = PartitionPermutation::forward_cycle(n);
        for (p, kp) in ncpartition::nc_with_kreweras(n) {
            let comp = ncpartition::perm_of(p)
                .map_err(e)?
                .compose(&ncpartition::perm_of(kp).map_err(e)?);
            ensure(comp == gamma, || format!("perm identity fails for {p}"))?;
            let searched = oracle::kreweras_by_search(p).map_err(e)?;
            ensure(&searched == kp, || {
                format!("Kr({p}) = {kp}, search gives {searched}")
            })?;
            checked += 1;
        }
    }
    let p: Partition = "{1,2,5}{3,4}".parse().map_err(e)?;
    let kp = ncpartition::kreweras(&p).map_err(e)?;
    ensure(kp.to_string() == "{1}{2,4}{3}{5}", || {
        format!("example gives {kp}")
    })?;
    Ok(format!("{checked} partitions, example Kr = {kp}"))
}

fn series_algebra() -> Outcome {
    for s in 1..=2 {
        let lhs = series::zeta(s, 5)
            .boxed_convolve(&series::moebius(s, 5))
            .map_err(e)?;
        ensure(lhs == series::delta(s, 5), || {
            format!("Zeta * Moeb != Delta for s={s}")
        })?;
    }
    let mut checks = 0;
    for seed in 0..200u64 {
        let s = 1 + (seed as usize % 2);
        let d = 1 + (seed as usize / 2 % 3);
        let order = 3 + (seed as usize / 6 % 3);
        for r in verify::series_identities(seed, s, d, order).map_err(e)? {
            ensure(r.pass, || r.to_string())?;
            checks += 1;
        }
    }
    Ok(format!(
        "Zeta*Moeb = Delta; {checks} identity checks on 200 seeded triples"
    ))
}

fn hd_series() -> Outcome {
    for d in 2..=3 {
        let h = series::h_series(d, 5);
        for n in 1..=3 {
            for w in series::all_words(d, n) {
                let got = h.coef(&w).map_err(e)?;
                ensure(got == verify::hd_printed(d, &w), || {
                    format!("d={d} {w:?}: {got}")
                })?;
            }
        }
        for n in 2..=5 {
            for rest in series::all_words(d, n - 1) {
                for k in 0..n {
                    let mut total = Rat::from_integer(0.into());
                    for i in 1..=d as u32 {
                        let mut w = rest.clone();
                        w.insert(k, i);
                        total += h.coef(&w).map_err(e)?;
                    }
                    ensure(total == int(0), || {
                        format!("d={d} slot sum at {rest:?} slot {k}")
                    })?;
                }
            }
        }
        let inv = rat(1, d as i64);
        let alt = series::geometric(d, 5)
            .scale(&inv)
            .boxed_convolve(&series::moebius(d, 5))
            .map_err(e)?
            .scale(&int(d as i64));
        ensure(alt == h, || format!("alternative form differs for d={d}"))?;
        let proj = oracle::projection_cumulants(d, 5)
            .map_err(e)?
            .scale(&int(d as i64));
        ensure(proj == h, || format!("d * R(P_1..P_d) differs for d={d}"))?;
    }
    Ok("printed truncation, slot sums and both closed forms agree for d=2,3 to N=5".into())
}

fn moments_vs_oracle() -> Outcome {
    let families: [(&str, MatrixFamily); 3] = [
        (
            "diagonal semicirculars",
            corpus::diagonal_free_semicirculars(6),
        ),
        ("circular block", corpus::circular_block(6)),
        ("gaussian block", corpus::gaussian_block_instance(6)),
    ];
    let mut terms = 0;
    for (name, fam) in &families {
        let f = rcyclic::determining_series(fam).map_err(e)?;
        let fast = rcyclic::family_moments(&f, fam.d()).map_err(e)?;
        let brute = oracle::brute_force_family_moments(fam, 6).map_err(e)?;
        ensure(fast == brute, || {
            format!(
                "{name}: {} vs {}",
                oracle::series_text(&fast),
                oracle::series_text(&brute)
            )
        })?;
        terms += brute.support_len();
    }
    Ok(format!("3 families to N=6, {terms} nonzero moments agree"))
}

fn cyclic_partitions() -> Outcome {
    let mut tables = 0;
    for s in 1..=2 {
        for seed in 0..50u64 {
            let mut rng = corpus::rng(1000 * s as u64 + seed);
            let f = corpus::random_series(&mut rng, 2 * s, 5, 10);
            let fam = RCyclicFamily::new(2, s, f).map_err(e)?;
            for n in 1..=5 {
                let bad = verify::cyclic_partition_failures(&fam, n).map_err(e)?;
                ensure(bad == 0, || {
                    format!("s={s} seed={seed} n={n}: {bad} failures")
                })?;
            }
            tables += 1;
        }
    }
    Ok(format!(
        "{tables} random tables (d=2, s=1,2), all pi in NC(n), n<=5"
    ))
}

fn rtransform_closed_forms() -> Outcome {
    let r = rcyclic::family_rtransform(
        &rcyclic::determining_series(&corpus::circular_block(6)).map_err(e)?,
        2,
    )
    .map_err(e)?;
    ensure(oracle::series_text(&r) == "1,1=1/1", || {
        format!("circular block: {}", oracle::series_text(&r))
    })?;

    let one = corpus::uniform_radius_blocks(1, 6);
    let r =
        rcyclic::family_rtransform(&rcyclic::determining_series(&one).map_err(e)?, 2).map_err(e)?;
    ensure(oracle::series_text(&r) == "1,1=2/1", || {
        format!("uniform radius: {}", oracle::series_text(&r))
    })?;

    let two = corpus::uniform_radius_blocks(2, 5);
    let r =
        rcyclic::family_rtransform(&rcyclic::determining_series(&two).map_err(e)?, 2).map_err(e)?;
    let grouping: Partition = "{1}{2}".parse().map_err(e)?;
    let report = freeprob::check_free(&r, &grouping).map_err(e)?;
    ensure(report.free, || {
        format!("mixed cumulant {:?}", report.witness)
    })?;
    ensure(oracle::series_text(&r) == "1,1=2/1 2,2=2/1", || {
        format!("pair: {}", oracle::series_text(&r))
    })?;

    for d in 2..=3 {
        for s in 1..=2 {
            let mut rng = corpus::rng(50 + d as u64 * 10 + s as u64);
            let order = 4;
            let alpha = corpus::random_series(&mut rng, s, order, 8);
            let mut f = Series::zero(s * d, order);
            for (w, a) in alpha.terms() {
                for iw in series::all_words(d, w.len()) {
                    let pw: Vec<u32> = w
                        .letters()
                        .iter()
                        .zip(&iw)
                        .map(|(&r, &i)| series::pair_letter(r, i, d))
                        .collect();
                    f.set(&pw, a.clone()).map_err(e)?;
                }
            }
            let r = rcyclic::family_rtransform(&f, d).map_err(e)?;
            for (w, a) in alpha.terms() {
                let want = a * rational::pow(&int(d as i64), w.len() - 1);
                let got = r.coef(w.letters()).map_err(e)?;
                ensure(got == want, || {
                    format!("d={d} s={s} {:?}: {got} vs {want}", w.letters())
                })?;
            }
            ensure(r.support_len() == alpha.support_len(), || {
                format!("d={d} s={s}: extra terms")
            })?;
        }
    }
    Ok("R = z^2, R = 2z^2, free pair, constant-table rule d^(n-1) alpha".into())
}

fn closure() -> Outcome {
    let fam = corpus::gaussian_pair(4);
    let a = fam.matrices();
    let d = fam.d();
    let product = a[0].mul(&a[1]).map_err(e)?;
    let combo = a[0]
        .scale(&int(2))
        .sub(&a[1].scale(&rat(1, 3)))
        .map_err(e)?
        .add(&OperatorMatrix::identity(d))
        .map_err(e)?;
    let diag = OperatorMatrix::from_scalar(&ScalarMatrix::diag(&[int(1), int(2)]));
    for (name, m) in [
        ("A1 A2", product),
        ("2 A1 - A2/3 + I", combo),
        ("diag(1,2)", diag),
    ] {
        let v = rcyclic::closure_check(&fam, &m, 4).map_err(e)?;
        ensure(v.is_none(), || format!("{name}: {}", v.unwrap()))?;
    }
    let v12 = OperatorMatrix::from_scalar(&ScalarMatrix::unit(d, 1, 2));
    let v = rcyclic::closure_check(&fam, &v12, 4).map_err(e)?;
    ensure(v.is_some(), || "V_{1,2} adjunction not flagged".into())?;
    let witness = v.unwrap();

    let mut checks = 0;
    for seed in 0..100u64 {
        let mut rng = corpus::rng(5000 + seed);
        let s = 1 + (seed as usize % 3);
        let model = corpus::random_model(&mut rng, s, 5, 10);
        for n in 2..=5 {
            let x: Vec<u32> = series::all_words(s, n)[seed as usize % s.pow(n as u32)].clone();
            for m in 1..n {
                let mut args: Vec<Vec<u32>> = x.iter().map(|&g| vec![g]).collect();
                let merged = args.remove(m);
                args[m - 1].extend(merged);
                let want = oracle::naive_monomial_cumulant(model.cumulants(), &args).map_err(e)?;
                let got = freeprob::product_cumulant(&model, &x, m).map_err(e)?;
                ensure(got == want, || {
                    format!("seed={seed} x={x:?} m={m}: {got} vs {want}")
                })?;
                checks += 1;
            }
        }
    }
    Ok(format!(
        "three closures hold, V12 witness [{}], {checks} product-cumulant checks",
        witness.to_string().replace('\t', " ")
    ))
}

fn opvalued_formulas() -> Outcome {
    for seed in 0..50u64 {
        let mut rng = corpus::rng(7000 + seed);
        let model = corpus::random_model(&mut rng, 4, 4, 10);
        let x = corpus::random_affine_matrix(&mut rng, 2, 4);
        let mut space = OpSpace::new(&model);
        let bad = verify::bvalued_failures(&mut space, &[x], 4).map_err(e)?;
        ensure(bad == 0, || format!("B case seed={seed}: {bad} failures"))?;
    }
    let families: [(&str, MatrixFamily); 5] = [
        (
            "diagonal semicirculars",
            corpus::diagonal_free_semicirculars(4),
        ),
        ("circular block", corpus::circular_block(4)),
        ("gaussian block", corpus::gaussian_block_instance(4)),
        ("gaussian pair", corpus::gaussian_pair(4)),
        ("correlated diagonal", corpus::correlated_diagonal(4)),
    ];
    for (i, (name, fam)) in families.iter().enumerate() {
        let bad = verify::dvalued_failures(fam, 4, 8000 + i as u64).map_err(e)?;
        ensure(bad == 0, || format!("D case {name}: {bad} failures"))?;
    }
    let fam = corpus::off_diagonal_mean(4);
    let mut space = OpSpace::new(fam.model());
    let v = opvalued::chain_hypothesis_violation(&mut space, fam.matrices(), 2).map_err(e)?;
    ensure(v.is_some(), || {
        "off-diagonal mean passes the chain hypothesis".into()
    })?;
    Ok("50 random B cases and 5 chain families (n<=4) agree with the recursion".into())
}

fn amalgamated_freeness() -> Outcome {
    let families: [(&str, MatrixFamily); 5] = [
        (
            "diagonal semicirculars",
            corpus::diagonal_free_semicirculars(4),
        ),
        ("circular block", corpus::circular_block(4)),
        ("gaussian block", corpus::gaussian_block_instance(4)),
        ("uniform radius", corpus::uniform_radius_blocks(1, 4)),
        ("gaussian pair", corpus::gaussian_pair(4)),
    ];
    for (name, fam) in &families {
        let mut space = OpSpace::new(fam.model());
        let w = opvalued::check_amalgamated_freeness(&mut space, fam.matrices(), 4).map_err(e)?;
        ensure(w.is_none(), || format!("{name}: {}", w.unwrap()))?;

        // alternating products of centred generators and off-diagonal units
        let d = fam.d();
        let centred: Vec<OperatorMatrix> = fam
            .matrices()
            .iter()
            .map(|a| {
                let m = space.expect_d(a)?;
                a.sub(&OperatorMatrix::from_scalar(&m))
            })
            .collect::<Result<_, _>>()
            .map_err(e)?;
        let off: Vec<(usize, usize)> = (1..=d)
            .flat_map(|i| (1..=d).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect();
        for n in 2..=4 {
            for cs in series::all_words(centred.len(), n) {
                for units in series::all_words(off.len(), n - 1) {
                    let mut prod = centred[cs[0] as usize - 1].clone();
                    for (t, &u) in units.iter().enumerate() {
                        let (i, j) = off[u as usize - 1];
                        prod = prod
                            .mul_scalar_right(&ScalarMatrix::unit(d, i, j))
                            .and_then(|p| p.mul(&centred[cs[t + 1] as usize - 1]))
                            .map_err(e)?;
                    }
                    let v = space.expect_d(&prod).map_err(e)?;
                    ensure(v.is_zero(), || {
                        format!("{name}: alternating word {cs:?} {units:?} gives {v}")
                    })?;
                }
            }
        }

        let f = rcyclic::determining_series(fam).map_err(e)?;
        let rebuilt = opvalued::rcyclic_witness_from_dcumulants(d, fam.s(), 4, |r, p| {
            opvalued::projected_dcumulant(&mut space, fam.matrices(), r, p)
        })
        .map_err(e)?;
        ensure(rebuilt.determining_series() == &f, || {
            format!("{name}: rebuilt table differs")
        })?;
    }
    let fam = corpus::off_diagonal_mean(4);
    ensure(!rcyclic::is_rcyclic(&fam).map_err(e)?, || {
        "off-diagonal mean is R-cyclic".into()
    })?;
    let mut space = OpSpace::new(fam.model());
    let w = opvalued::check_amalgamated_freeness(&mut space, fam.matrices(), 4).map_err(e)?;
    let w = w.ok_or("off-diagonal mean passes the freeness check")?;
    ensure(w.len() == 1, || {
        format!("witness has length {}: {w}", w.len())
    })?;
    let text = w.to_string();
    ensure(text.starts_with("cent(A1) V2,1 I"), || {
        format!("unexpected witness {text}")
    })?;
    Ok(format!(
        "5 families free to budget 4, tables rebuilt; witness {}",
        text.replace('\t', " ")
    ))
}

fn monte_carlo() -> Outcome {
    let start = Instant::now();
    let cfg = McConfig::uniform(2, int(2), 512, 20, 20_240_601);
    let exact = mc::exact_moments(&cfg, 6).map_err(e)?;
    let want = [int(2), int(8), int(40)];
    for (k, w) in want.iter().enumerate() {
        let n = 2 * (k + 1);
        ensure(&exact[n - 1] == w, || {
            format!("engine predicts {} for n={n}", exact[n - 1])
        })?;
    }
    let rows = mc::compare(&cfg, &exact).map_err(e)?;
    let mut summary = Vec::new();
    for r in rows.iter().filter(|r| r.n % 2 == 0) {
        ensure(r.pass, || r.to_string().replace('\t', " "))?;
        summary.push(format!("n={} {:.4}", r.n, r.empirical));
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{} ({secs:.1}s)", summary.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("nc-counts", nc_counts),
        ("kreweras", kreweras),
        ("series-algebra", series_algebra),
        ("hd-series", hd_series),
        ("moments-vs-oracle", moments_vs_oracle),
        ("cyclic-partition-cumulants", cyclic_partitions),
        ("rtransform-closed-forms", rtransform_closed_forms),
        ("closure", closure),
        ("opvalued-formulas", opvalued_formulas),
        ("amalgamated-freeness", amalgamated_freeness),
        ("monte-carlo", monte_carlo),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS\t{:>2} {name}\t{msg}\t[{secs:.1}s]", k + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL\t{:>2} {name}\t{msg}\t[{secs:.1}s]", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
