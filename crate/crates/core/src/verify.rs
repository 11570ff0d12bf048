//! Named verification suites: each pairs an engine computation with an
//! oracle or an identity and reports one [`OracleReport`] per check.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::corpus;
use crate::error::{Error, Result};
use crate::freeprob::{self, NcPolynomial};
use crate::matrix::{OperatorMatrix, ScalarMatrix};
use crate::ncpartition::{self, PartitionPermutation};
use crate::opvalued::{self, Algebra, Extraction, OpSpace};
use crate::oracle::{self, series_text, OracleReport};
use crate::rational::{self, Rat};
use crate::rcyclic::{self, entry_generator, MatrixFamily, RCyclicFamily};
use crate::series::{self, Series};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Nc,
    Kreweras,
    Series,
    Hd,
    Moments,
    Rcyclic,
    Opvalued,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 8] = [
        "nc", "kreweras", "series", "hd", "moments", "rcyclic", "opvalued", "all",
    ];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "nc" => Suite::Nc,
            "kreweras" => Suite::Kreweras,
            "series" => Suite::Series,
            "hd" => Suite::Hd,
            "moments" => Suite::Moments,
            "rcyclic" => Suite::Rcyclic,
            "opvalued" => Suite::Opvalued,
            "all" => Suite::All,
            other => {
                return Err(Error::InvalidConfig(format!(
                    "unknown suite {other}; expected one of {}",
                    Suite::NAMES.join(", ")
                )))
            }
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = [
            Suite::Nc,
            Suite::Kreweras,
            Suite::Series,
            Suite::Hd,
            Suite::Moments,
            Suite::Rcyclic,
            Suite::Opvalued,
            Suite::All,
        ]
        .iter()
        .position(|s| s == self)
        .unwrap();
        f.write_str(Suite::NAMES[i])
    }
}

/// Runs `suite` with series truncated at `order` (clamped to `2..=5`).
pub fn run(suite: Suite, order: usize) -> Result<Vec<OracleReport>> {
    let order = order.clamp(2, 5);
    match suite {
        Suite::Nc => nc_suite(),
        Suite::Kreweras => kreweras_suite(),
        Suite::Series => series_suite(order),
        Suite::Hd => hd_suite(order),
        Suite::Moments => moments_suite(order),
        Suite::Rcyclic => rcyclic_suite(order),
        Suite::Opvalued => opvalued_suite(order),
        Suite::All => {
            let mut out = Vec::new();
            for s in [
                Suite::Nc,
                Suite::Kreweras,
                Suite::Series,
                Suite::Hd,
                Suite::Moments,
                Suite::Rcyclic,
                Suite::Opvalued,
            ] {
                out.extend(run(s, order)?);
            }
            Ok(out)
        }
    }
}

fn nc_suite() -> Result<Vec<OracleReport>> {
    let mut out = Vec::new();
    for n in 1..=8 {
        let fast = ncpartition::enumerate_nc(n)?;
        let mut slow = oracle::naive_nc(n)?;
        slow.sort();
        out.push(OracleReport::compare(
            "nc.count",
            format!("n={n}"),
            slow.len(),
            fast.len(),
        ));
        let same = fast == slow;
        out.push(OracleReport::compare(
            "nc.list",
            format!("n={n}"),
            true,
            same,
        ));
    }
    for n in 1..=7 {
        let disagree = oracle::all_set_partitions(n)?
            .into_iter()
            .filter(|p| p.is_noncrossing() != oracle::naive_is_noncrossing(p))
            .count();
        out.push(OracleReport::compare(
            "nc.crossing_test",
            format!("n={n}"),
            0,
            disagree,
        ));
    }
    Ok(out)
}

fn kreweras_suite() -> Result<Vec<OracleReport>> {
    let mut out = Vec::new();
    for n in 1..=7 {
        let gamma = PartitionPermutation::forward_cycle(n);
        let mut bad_identity = 0;
        let mut bad_search = 0;
        for (p, kp) in ncpartition::nc_with_kreweras(n) {
            if ncpartition::perm_of(p)?.compose(&ncpartition::perm_of(kp)?) != gamma {
                bad_identity += 1;
            }
            if &oracle::kreweras_by_search(p)? != kp {
                bad_search += 1;
            }
        }
        out.push(OracleReport::compare(
            "kreweras.identity",
            format!("n={n}"),
            0,
            bad_identity,
        ));
        out.push(OracleReport::compare(
            "kreweras.search",
            format!("n={n}"),
            0,
            bad_search,
        ));
    }
    let p: ncpartition::Partition = "{1,2,5}{3,4}".parse()?;
    out.push(OracleReport::compare(
        "kreweras.example",
        p.to_string(),
        oracle::kreweras_by_search(&p)?,
        ncpartition::kreweras(&p)?,
    ));
    Ok(out)
}

fn cmp_series(name: &str, inputs: String, expected: &Series, actual: &Series) -> OracleReport {
    OracleReport::compare(name, inputs, series_text(expected), series_text(actual))
}

/// One seeded instance of every series identity: plain associativity and the
/// right action, Zeta/Moebius reductions, dilation and scalar rules.
pub fn series_identities(seed: u64, s: usize, d: usize, order: usize) -> Result<Vec<OracleReport>> {
    let mut rng = corpus::rng(seed);
    let inputs = format!("seed={seed} s={s} d={d} N={order}");
    let f = corpus::random_series(&mut rng, s, order, 6);
    let g = corpus::random_series(&mut rng, s, order, 6);
    let h = corpus::random_series(&mut rng, s, order, 6);
    let fe = corpus::random_series(&mut rng, s * d, order, 8);
    let gd = corpus::random_series(&mut rng, d, order, 5);
    let hd = corpus::random_series(&mut rng, d, order, 5);
    let alpha = corpus::random_rat(&mut rng);
    let mut out = vec![cmp_series(
        "series.associativity",
        inputs.clone(),
        &f.boxed_convolve(&g)?.boxed_convolve(&h)?,
        &f.boxed_convolve(&g.boxed_convolve(&h)?)?,
    )];
    out.push(cmp_series(
        "series.action",
        inputs.clone(),
        &fe.ext_boxed_convolve(&gd)?.ext_boxed_convolve(&hd)?,
        &fe.ext_boxed_convolve(&gd.boxed_convolve(&hd)?)?,
    ));
    out.push(cmp_series(
        "series.action_zeta",
        inputs.clone(),
        &fe.boxed_convolve(&series::zeta(s * d, order))?,
        &fe.ext_boxed_convolve(&series::zeta(d, order))?,
    ));
    out.push(cmp_series(
        "series.action_moebius",
        inputs.clone(),
        &fe.boxed_convolve(&series::moebius(s * d, order))?,
        &fe.ext_boxed_convolve(&series::moebius(d, order))?,
    ));
    let lhs = fe.dilate(&alpha).ext_boxed_convolve(&gd)?;
    out.push(cmp_series(
        "series.dilation_left",
        format!("{inputs} alpha={}", rational::format_rat(&alpha)),
        &fe.ext_boxed_convolve(&gd)?.dilate(&alpha),
        &lhs,
    ));
    out.push(cmp_series(
        "series.dilation_right",
        format!("{inputs} alpha={}", rational::format_rat(&alpha)),
        &fe.ext_boxed_convolve(&gd)?.dilate(&alpha),
        &fe.ext_boxed_convolve(&gd.dilate(&alpha))?,
    ));
    out.push(cmp_series(
        "series.scalar",
        format!("{inputs} alpha={}", rational::format_rat(&alpha)),
        &fe.ext_boxed_convolve(&gd)?.dilate(&alpha).scale(&alpha),
        &fe.scale(&alpha).ext_boxed_convolve(&gd.scale(&alpha))?,
    ));
    let inv = Rat::from_integer(1.into()) / &alpha;
    out.push(cmp_series(
        "series.scalar_inverse",
        format!("{inputs} alpha={}", rational::format_rat(&alpha)),
        &fe.ext_boxed_convolve(&gd.dilate(&alpha).scale(&inv))?
            .scale(&alpha),
        &fe.scale(&alpha).ext_boxed_convolve(&gd)?,
    ));
    Ok(out)
}

fn series_suite(order: usize) -> Result<Vec<OracleReport>> {
    let mut out = Vec::new();
    for s in 1..=2 {
        let inputs = format!("s={s} N={order}");
        out.push(cmp_series(
            "series.zeta_moebius",
            inputs.clone(),
            &series::delta(s, order),
            &series::zeta(s, order).boxed_convolve(&series::moebius(s, order))?,
        ));
        out.push(cmp_series(
            "series.zeta_inverse",
            inputs,
            &series::moebius(s, order),
            &series::zeta(s, order).boxed_inverse()?,
        ));
    }
    for seed in 0..6 {
        let s = 1 + (seed as usize % 2);
        let d = 2 + (seed as usize / 2 % 2);
        out.extend(series_identities(seed, s, d, order.min(4))?);
    }
    Ok(out)
}

/// Coefficient of `H_d` at a word of length at most 3, from the truncation
/// written out by hand.
pub fn hd_printed(d: usize, w: &[u32]) -> Rat {
    let inv = rational::rat(1, d as i64);
    let delta = |a: u32, b: u32| {
        if a == b {
            Rat::from_integer(1.into())
        } else {
            Rat::zero()
        }
    };
    match *w {
        [_] => Rat::from_integer(1.into()),
        [a, b] => delta(a, b) - inv,
        [a, b, c] => {
            let all = if a == b && b == c {
                Rat::from_integer(1.into())
            } else {
                Rat::zero()
            };
            all - (delta(a, b) + delta(a, c) + delta(b, c)) * &inv
                + rational::rat(2, (d * d) as i64)
        }
        _ => panic!("printed truncation stops at degree 3"),
    }
}

fn hd_suite(order: usize) -> Result<Vec<OracleReport>> {
    let mut out = Vec::new();
    for d in 2..=3 {
        let h = series::h_series(d, order);
        let inputs = format!("d={d} N={order}");
        let via_projections =
            oracle::projection_cumulants(d, order)?.scale(&rational::int(d as i64));
        out.push(cmp_series(
            "hd.projection_cumulants",
            inputs.clone(),
            &via_projections,
            &h,
        ));

        let mut printed = Series::zero(d, order.min(3));
        for n in 1..=order.min(3) {
            for w in series::all_words(d, n) {
                printed.set(&w, hd_printed(d, &w))?;
            }
        }
        out.push(cmp_series(
            "hd.printed",
            inputs.clone(),
            &printed,
            &h.truncate(order.min(3)),
        ));

        let mut nonzero_slot_sums = 0;
        for n in 2..=order {
            for rest in series::all_words(d, n - 1) {
                for k in 0..n {
                    let mut total = Rat::zero();
                    for i in 1..=d as u32 {
                        let mut w = rest.clone();
                        w.insert(k, i);
                        total += h.coef(&w)?;
                    }
                    if !total.is_zero() {
                        nonzero_slot_sums += 1;
                    }
                }
            }
        }
        out.push(OracleReport::compare(
            "hd.slot_sums",
            inputs.clone(),
            0,
            nonzero_slot_sums,
        ));

        let inv = rational::rat(1, d as i64);
        let alt = series::geometric(d, order)
            .scale(&inv)
            .boxed_convolve(&series::moebius(d, order))?
            .scale(&rational::int(d as i64));
        out.push(cmp_series("hd.alternative_form", inputs, &alt, &h));
    }
    Ok(out)
}

fn moments_suite(order: usize) -> Result<Vec<OracleReport>> {
    let mut out = Vec::new();
    for seed in 0..8u64 {
        let mut rng = corpus::rng(100 + seed);
        let s = 1 + (seed as usize % 2);
        let model = corpus::random_model(&mut rng, s, order, 6);
        let inputs = format!("seed={} s={s} N={order}", 100 + seed);
        let elements: Vec<NcPolynomial> = (1..=s as u32).map(NcPolynomial::generator).collect();
        let fast = freeprob::moment_series(&model, &elements, order)?;
        let naive = oracle::naive_moment_series(model.cumulants())?;
        out.push(cmp_series("moments.phi", inputs.clone(), &naive, &fast));
        out.push(cmp_series(
            "moments.r_transform",
            inputs.clone(),
            &oracle::cumulants_by_inversion(&naive)?,
            &freeprob::r_transform(&fast)?,
        ));
        out.push(cmp_series(
            "moments.m_from_r",
            inputs.clone(),
            &naive,
            &freeprob::m_from_r(model.cumulants())?,
        ));
        let n = order.min(5);
        let mut disagree = 0;
        for x in series::all_words(s, n) {
            for m in 1..n {
                let mut args: Vec<Vec<u32>> = x.iter().map(|&g| vec![g]).collect();
                let merged = args.remove(m);
                args[m - 1].extend(merged);
                let want = oracle::naive_monomial_cumulant(model.cumulants(), &args)?;
                if freeprob::product_cumulant(&model, &x, m)? != want {
                    disagree += 1;
                }
            }
        }
        out.push(OracleReport::compare(
            "moments.product_cumulant",
            inputs,
            0,
            disagree,
        ));
    }
    Ok(out)
}

/// Corpus families whose entry-level moments the oracle can expand.
pub fn rcyclic_corpus(order: usize) -> Vec<(&'static str, MatrixFamily)> {
    vec![
        (
            "diagonal_semicirculars",
            corpus::diagonal_free_semicirculars(order),
        ),
        ("circular_block", corpus::circular_block(order)),
        ("gaussian_block", corpus::gaussian_block_instance(order)),
        ("gaussian_pair", corpus::gaussian_pair(order)),
        ("uniform_radius", corpus::uniform_radius_blocks(1, order)),
    ]
}

/// `k_π` of the cyclic entries equals `[w; π](f) [i; Kr π](G_d)` for every π,
/// `r`-word and `i`-word of length `n`; returns the number of failures.
pub fn cyclic_partition_failures(fam: &RCyclicFamily, n: usize) -> Result<usize> {
    let d = fam.d();
    let model = fam.to_model();
    let g = series::geometric(d, fam.order());
    let mut bad = 0;
    for rword in series::all_words(fam.s(), n) {
        for iword in series::all_words(d, n) {
            let w = fam.pair_word(&rword, &iword)?;
            let gens: Vec<u32> = (0..n)
                .map(|t| {
                    let prev = iword[(t + n - 1) % n] as usize;
                    entry_generator(d, rword[t] as usize, prev, iword[t] as usize)
                })
                .collect();
            for (p, kp) in ncpartition::nc_with_kreweras(n) {
                let lhs = oracle::naive_partition_cumulant(model.cumulants(), &gens, p)?;
                let rhs = fam.determining_series().gen_coef(&w, p)? * g.gen_coef(&iword, kp)?;
                if lhs != rhs {
                    bad += 1;
                }
            }
        }
    }
    Ok(bad)
}

fn rcyclic_suite(order: usize) -> Result<Vec<OracleReport>> {
    let mut out = Vec::new();
    for (name, fam) in rcyclic_corpus(order) {
        let inputs = format!("{name} N={order}");
        let f = rcyclic::determining_series(&fam)?;
        let brute = oracle::brute_force_family_moments(&fam, order)?;
        out.push(cmp_series(
            "rcyclic.moments",
            inputs.clone(),
            &brute,
            &rcyclic::family_moments(&f, fam.d())?,
        ));
        out.push(cmp_series(
            "rcyclic.rtransform",
            inputs,
            &oracle::cumulants_by_inversion(&brute)?,
            &rcyclic::family_rtransform(&f, fam.d())?,
        ));
    }
    for seed in 0..4u64 {
        let mut rng = corpus::rng(200 + seed);
        let s = 1 + (seed as usize % 2);
        let f = corpus::random_series(&mut rng, 2 * s, order, 8);
        let fam = RCyclicFamily::new(2, s, f)?;
        let inputs = format!("seed={} d=2 s={s}", 200 + seed);
        for n in 1..=order.min(4) {
            out.push(OracleReport::compare(
                "rcyclic.cyclic_partition",
                format!("{inputs} n={n}"),
                0,
                cyclic_partition_failures(&fam, n)?,
            ));
        }
        let brute = oracle::brute_force_family_moments(&fam.to_matrix_family(), order)?;
        out.push(cmp_series(
            "rcyclic.random_moments",
            inputs,
            &brute,
            &rcyclic::family_moments(fam.determining_series(), 2)?,
        ));
    }
    let semicircle = Series::from_terms(1, order, vec![(vec![1, 1], rational::int(1))])?;
    for d in 2..=3 {
        let f = corpus::compression_series(d, &semicircle);
        out.push(cmp_series(
            "rcyclic.compression_partial_sums",
            format!("d={d} N={order}"),
            &semicircle,
            &rcyclic::partial_sum_rtransform(&f, d)?,
        ));
        out.push(cmp_series(
            "rcyclic.compression_rtransform",
            format!("d={d} N={order}"),
            &semicircle,
            &rcyclic::family_rtransform(&f, d)?,
        ));
    }
    Ok(out)
}

/// Compares the recursion, the entrywise chain sum and `k̃` on every word of
/// length up to `max_n` in `xs`; returns the failure count.
pub fn bvalued_failures(
    space: &mut OpSpace<'_>,
    xs: &[OperatorMatrix],
    max_n: usize,
) -> Result<usize> {
    let model = space.model();
    let mut bad = 0;
    for n in 1..=max_n {
        for w in series::all_words(xs.len(), n) {
            let args: Vec<OperatorMatrix> = w.iter().map(|&r| xs[r as usize - 1].clone()).collect();
            let generic = space.cumulant(&args, Algebra::B)?;
            if opvalued::bvalued_cumulant_entrywise(space, &args)? != generic {
                bad += 1;
            }
            if opvalued::ktilde_b(model, &opvalued::odot(&args)?)? != generic {
                bad += 1;
            }
            for p in ncpartition::enumerate_nc(n)? {
                let left = space.cumulant_pi(&p, &args, Algebra::B, Extraction::Leftmost)?;
                let right = space.cumulant_pi(&p, &args, Algebra::B, Extraction::Rightmost)?;
                if left != right || opvalued::bvalued_cumulant_pi(space, &p, &args)? != left {
                    bad += 1;
                }
            }
        }
    }
    Ok(bad)
}

/// D-valued checks on a family satisfying the chain hypothesis: the closed
/// formula with random diagonal weights, `k̃^D`, and the `(i_n, i_n)` entry of
/// projected cumulants against the cyclic cumulants of the entries.
pub fn dvalued_failures(fam: &MatrixFamily, max_n: usize, seed: u64) -> Result<usize> {
    let mut space = OpSpace::new(fam.model());
    let xs = fam.matrices();
    let d = fam.d();
    let mut rng = corpus::rng(seed);
    let mut bad = 0;
    for n in 1..=max_n {
        for rword in series::all_words(xs.len(), n) {
            let lambdas: Vec<ScalarMatrix> = (1..n)
                .map(|_| {
                    ScalarMatrix::diag(
                        &(0..d)
                            .map(|_| corpus::random_rat(&mut rng))
                            .collect::<Vec<_>>(),
                    )
                })
                .collect();
            let mut args = Vec::with_capacity(n);
            for (t, &r) in rword.iter().enumerate() {
                let a = &xs[r as usize - 1];
                args.push(if t + 1 < n {
                    a.mul_scalar_right(&lambdas[t])?
                } else {
                    a.clone()
                });
            }
            let generic = space.cumulant(&args, Algebra::D)?;
            if opvalued::dvalued_cumulant(&mut space, xs, &rword, &lambdas)? != generic {
                bad += 1;
            }
            let plain: Vec<OperatorMatrix> =
                rword.iter().map(|&r| xs[r as usize - 1].clone()).collect();
            let ktilde = opvalued::ktilde_d(fam.model(), &opvalued::odot(&plain)?)?;
            if ktilde != space.cumulant(&plain, Algebra::D)? {
                bad += 1;
            }
            for iword in series::all_words(d, n) {
                let k = opvalued::projected_dcumulant(&mut space, xs, &rword, &iword[..n - 1])?;
                let last = iword[n - 1] as usize;
                let gens: Vec<&NcPolynomial> = (0..n)
                    .map(|t| {
                        let prev = iword[(t + n - 1) % n] as usize;
                        xs[rword[t] as usize - 1].get(prev, iword[t] as usize)
                    })
                    .collect();
                if k.get(last, last) != &space.entry_cumulant(&gens)? {
                    bad += 1;
                }
            }
        }
    }
    Ok(bad)
}

fn opvalued_suite(order: usize) -> Result<Vec<OracleReport>> {
    let mut out = Vec::new();
    let max_n = order.min(3);
    for seed in 0..4u64 {
        let mut rng = corpus::rng(300 + seed);
        let model = corpus::random_model(&mut rng, 3, order, 8);
        let xs: Vec<OperatorMatrix> = (0..2)
            .map(|_| corpus::random_affine_matrix(&mut rng, 2, 3))
            .collect();
        let mut space = OpSpace::new(&model);
        out.push(OracleReport::compare(
            "opvalued.bvalued",
            format!("seed={} n<={max_n}", 300 + seed),
            0,
            bvalued_failures(&mut space, &xs, max_n)?,
        ));
    }
    let chain_families = [
        ("gaussian_block", corpus::gaussian_block_instance(order)),
        ("correlated_diagonal", corpus::correlated_diagonal(order)),
    ];
    for (name, fam) in &chain_families {
        out.push(OracleReport::compare(
            "opvalued.dvalued",
            format!("{name} n<={max_n}"),
            0,
            dvalued_failures(fam, max_n, 400)?,
        ));
    }
    let budget = order.min(3);
    for (name, fam) in rcyclic_corpus(order) {
        if fam.s() > 1 {
            continue;
        }
        let mut space = OpSpace::new(fam.model());
        let w = opvalued::check_amalgamated_freeness(&mut space, fam.matrices(), budget)?;
        out.push(OracleReport::compare(
            "opvalued.amalgamated_freeness",
            format!("{name} budget={budget}"),
            "free",
            w.map_or("free".to_string(), |w| w.to_string()),
        ));
        let f = rcyclic::determining_series(&fam)?;
        let rebuilt =
            opvalued::rcyclic_witness_from_dcumulants(fam.d(), fam.s(), order.min(4), |r, p| {
                opvalued::projected_dcumulant(&mut space, fam.matrices(), r, p)
            })?;
        out.push(cmp_series(
            "opvalued.converse",
            format!("{name} N={}", order.min(4)),
            &f.truncate(order.min(4)),
            rebuilt.determining_series(),
        ));
    }
    let fam = corpus::off_diagonal_mean(order);
    let mut space = OpSpace::new(fam.model());
    let w = opvalued::check_amalgamated_freeness(&mut space, fam.matrices(), budget)?;
    out.push(OracleReport::compare(
        "opvalued.non_cyclic_witness",
        "off_diagonal_mean".to_string(),
        1,
        w.map_or(0, |w| w.len()),
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().to_string(), name);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn printed_hd_matches_engine() {
        let reports = hd_suite(3).unwrap();
        assert!(reports.iter().all(|r| r.pass), "{reports:?}");
    }

    #[test]
    fn small_suites_pass() {
        for s in [Suite::Nc, Suite::Series] {
            let reports = run(s, 3).unwrap();
            for r in &reports {
                assert!(r.pass, "{r}");
            }
        }
    }
}
