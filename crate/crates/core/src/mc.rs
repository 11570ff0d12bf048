//! Monte Carlo cross-check with Gaussian random matrices.
//!
//! A `d x d` block matrix of `M x M` Gaussian blocks approximates a
//! self-adjoint matrix with semicircular diagonal and circular off-diagonal
//! entries. Empirical normalized traces of its powers are compared with the
//! exact moments from [`crate::rcyclic::family_moments`]. Floating point is
//! confined to this module.

use std::fmt;

use ndarray::Array2;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::corpus::{self, EntryModel};
use crate::error::{Error, Result};
use crate::rational::{self, Rat};
use crate::rcyclic;

pub const MIN_MATRIX_SIZE: usize = 16;
pub const MAX_MOMENT: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McConfig {
    pub d: usize,
    /// `radii[i][j]`: radius of entry `(i,j)`; must be symmetric.
    pub radii: Vec<Vec<Rat>>,
    pub matrix_size: usize,
    pub trials: usize,
    pub seed: u64,
}

impl McConfig {
    pub fn uniform(d: usize, radius: Rat, matrix_size: usize, trials: usize, seed: u64) -> Self {
        McConfig {
            d,
            radii: vec![vec![radius; d]; d],
            matrix_size,
            trials,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.d == 0 {
            return bad("d must be positive".into());
        }
        if self.radii.len() != self.d || self.radii.iter().any(|row| row.len() != self.d) {
            return bad(format!("radii must be a {0}x{0} grid", self.d));
        }
        for i in 0..self.d {
            for j in 0..self.d {
                if self.radii[i][j] < Rat::zero() {
                    return bad(format!("radius ({},{}) is negative", i + 1, j + 1));
                }
                if self.radii[i][j] != self.radii[j][i] {
                    return bad(format!(
                        "radii ({},{}) and ({},{}) differ",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    ));
                }
            }
        }
        if self.matrix_size < MIN_MATRIX_SIZE {
            return bad(format!("matrix size must be at least {MIN_MATRIX_SIZE}"));
        }
        if self.trials == 0 {
            return bad("trials must be positive".into());
        }
        Ok(())
    }

    fn max_radius(&self) -> f64 {
        self.radii
            .iter()
            .flatten()
            .map(rational::to_f64)
            .fold(0.0, f64::max)
    }
}

/// Exact `φ_d(A^n)` for `n = 1..=max_moment`.
pub fn exact_moments(cfg: &McConfig, max_moment: usize) -> Result<Vec<Rat>> {
    cfg.validate()?;
    let mut model = EntryModel::new(cfg.d, 1, max_moment.max(1))?;
    corpus::gaussian_block(&mut model, 1, &cfg.radii)?;
    let f = rcyclic::determining_series(&model.family())?;
    let m = rcyclic::family_moments(&f, cfg.d)?;
    (1..=max_moment).map(|n| m.coef(&vec![1; n])).collect()
}

// Complex matrix as separate real and imaginary parts.
struct Cmat {
    re: Array2<f64>,
    im: Array2<f64>,
}

impl Cmat {
    // Three real products instead of four.
    fn mul(&self, other: &Cmat) -> Cmat {
        let t1 = self.re.dot(&other.re);
        let t2 = self.im.dot(&other.im);
        let t3 = (&self.re + &self.im).dot(&(&other.re + &other.im));
        let re = &t1 - &t2;
        let im = t3 - t1 - t2;
        Cmat { re, im }
    }

    // Re tr(self · other).
    fn trace_product(&self, other: &Cmat) -> f64 {
        let n = self.re.nrows();
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += self.re[[i, j]] * other.re[[j, i]] - self.im[[i, j]] * other.im[[j, i]];
            }
        }
        acc
    }

    // tr(X X*) for self = X.
    fn frobenius_sq(&self) -> f64 {
        self.re.iter().map(|x| x * x).sum::<f64>() + self.im.iter().map(|x| x * x).sum::<f64>()
    }
}

fn sample_matrix(cfg: &McConfig, rng: &mut ChaCha8Rng) -> Cmat {
    let m = cfg.matrix_size;
    let n = cfg.d * m;
    let mut re = Array2::<f64>::zeros((n, n));
    let mut im = Array2::<f64>::zeros((n, n));
    let mut gauss = || -> f64 { StandardNormal.sample(rng) };
    for bi in 0..cfg.d {
        for bj in bi..cfg.d {
            let r = rational::to_f64(&cfg.radii[bi][bj]);
            let sigma = r / (4.0 * m as f64).sqrt();
            if sigma == 0.0 {
                continue;
            }
            let (oi, oj) = (bi * m, bj * m);
            if bi == bj {
                for a in 0..m {
                    re[[oi + a, oi + a]] = sigma * gauss();
                    for b in a + 1..m {
                        let x = sigma * std::f64::consts::FRAC_1_SQRT_2 * gauss();
                        let y = sigma * std::f64::consts::FRAC_1_SQRT_2 * gauss();
                        re[[oi + a, oi + b]] = x;
                        im[[oi + a, oi + b]] = y;
                        re[[oi + b, oi + a]] = x;
                        im[[oi + b, oi + a]] = -y;
                    }
                }
            } else {
                for a in 0..m {
                    for b in 0..m {
                        let x = sigma * std::f64::consts::FRAC_1_SQRT_2 * gauss();
                        let y = sigma * std::f64::consts::FRAC_1_SQRT_2 * gauss();
                        re[[oi + a, oj + b]] = x;
                        im[[oi + a, oj + b]] = y;
                        re[[oj + b, oi + a]] = x;
                        im[[oj + b, oi + a]] = -y;
                    }
                }
            }
        }
    }
    Cmat { re, im }
}

// tr(A^k) for k = 1..=max, using A self-adjoint: tr(A^{2k}) = |A^k|_F^2.
fn traces(a: &Cmat, max: usize) -> Vec<f64> {
    let mut out = vec![0.0; max];
    out[0] = a.re.diag().sum();
    if max >= 2 {
        out[1] = a.frobenius_sq();
    }
    if max <= 2 {
        return out;
    }
    let a2 = a.mul(a);
    out[2] = a2.trace_product(a);
    if max >= 4 {
        out[3] = a2.frobenius_sq();
    }
    if max <= 4 {
        return out;
    }
    let a3 = a2.mul(a);
    out[4] = a3.trace_product(&a2);
    if max >= 6 {
        out[5] = a3.frobenius_sq();
    }
    if max <= 6 {
        return out;
    }
    let a4 = a2.mul(&a2);
    out[6] = a4.trace_product(&a3);
    if max >= 8 {
        out[7] = a4.frobenius_sq();
    }
    out
}

/// Per-trial random stream: the seed picks the key, the trial the stream.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// `(n, mean, standard error)` of `tr_{dM}(A^n)` over the trials. With a
/// single trial the standard error is infinite.
pub fn sample_block_moments(cfg: &McConfig, max_moment: usize) -> Result<Vec<(usize, f64, f64)>> {
    cfg.validate()?;
    if max_moment == 0 || max_moment > MAX_MOMENT {
        return Err(Error::InvalidConfig(format!(
            "max moment must lie in 1..={MAX_MOMENT}"
        )));
    }
    let dim = (cfg.d * cfg.matrix_size) as f64;
    let samples: Vec<Vec<f64>> = (0..cfg.trials)
        .map(|t| {
            let mut rng = trial_rng(cfg.seed, t);
            let a = sample_matrix(cfg, &mut rng);
            traces(&a, max_moment)
                .into_iter()
                .map(|x| x / dim)
                .collect()
        })
        .collect();
    let trials = cfg.trials as f64;
    let mut out = Vec::with_capacity(max_moment);
    for n in 1..=max_moment {
        let values: Vec<f64> = samples.iter().map(|s| s[n - 1]).collect();
        let mean = values.iter().sum::<f64>() / trials;
        let stderr = if cfg.trials < 2 {
            f64::INFINITY
        } else {
            let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (trials - 1.0);
            (var / trials).sqrt()
        };
        out.push((n, mean, stderr));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct McRow {
    pub n: usize,
    pub empirical: f64,
    pub stderr: f64,
    pub exact: Rat,
    pub tolerance: f64,
    pub pass: bool,
}

impl fmt::Display for McRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{:.6}\t{:.6}\t{}\t{}",
            self.n,
            self.empirical,
            self.stderr,
            rational::format_rat(&self.exact),
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

pub const MC_HEADER: &str = "n\tempirical\tstderr\texact\tpass";

/// Finite-size allowance `C = 4 · max_radius^n`.
pub fn finite_size_allowance(cfg: &McConfig, n: usize) -> f64 {
    4.0 * cfg.max_radius().powi(n as i32)
}

/// Flags every moment with `|empirical - exact| > 3 (stderr + C/M)`.
pub fn compare(cfg: &McConfig, exact: &[Rat]) -> Result<Vec<McRow>> {
    let sampled = sample_block_moments(cfg, exact.len())?;
    Ok(sampled
        .into_iter()
        .map(|(n, empirical, stderr)| {
            let want = rational::to_f64(&exact[n - 1]);
            let tolerance = 3.0 * (stderr + finite_size_allowance(cfg, n) / cfg.matrix_size as f64);
            McRow {
                n,
                empirical,
                stderr,
                exact: exact[n - 1].clone(),
                tolerance,
                pass: (empirical - want).abs() <= tolerance,
            }
        })
        .collect())
}

/// Samples `cfg` and compares against its own exact moments.
pub fn run(cfg: &McConfig, max_moment: usize) -> Result<Vec<McRow>> {
    let exact = exact_moments(cfg, max_moment)?;
    compare(cfg, &exact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn exact_moments_of_uniform_block() {
        let cfg = McConfig::uniform(2, int(2), 16, 2, 1);
        let m = exact_moments(&cfg, 4).unwrap();
        assert_eq!(m, vec![int(0), int(2), int(0), int(8)]);
        let one = McConfig::uniform(1, int(2), 16, 2, 1);
        assert_eq!(exact_moments(&one, 2).unwrap()[1], int(1));
    }

    #[test]
    fn traces_match_direct_powers() {
        let cfg = McConfig::uniform(2, int(1), 16, 1, 3);
        let a = sample_matrix(&cfg, &mut trial_rng(3, 0));
        let t = traces(&a, 8);
        let mut p = Cmat {
            re: a.re.clone(),
            im: a.im.clone(),
        };
        for (k, tk) in t.iter().enumerate() {
            let direct = p.re.diag().sum();
            assert!((direct - tk).abs() < 1e-9 * (1.0 + tk.abs()), "k={}", k + 1);
            p = p.mul(&a);
        }
    }

    #[test]
    fn invalid_configs() {
        let mut cfg = McConfig::uniform(2, int(1), 8, 2, 0);
        assert!(cfg.validate().is_err());
        cfg.matrix_size = 16;
        cfg.radii[0][1] = int(3);
        assert!(cfg.validate().is_err());
        cfg.radii[0][1] = int(1);
        cfg.trials = 0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn single_trial_has_infinite_stderr() {
        let cfg = McConfig::uniform(1, int(2), 16, 1, 5);
        let rows = run(&cfg, 2).unwrap();
        assert!(rows[1].stderr.is_infinite());
        assert!(rows.iter().all(|r| r.pass));
    }

    #[test]
    fn deterministic_under_seed() {
        let cfg = McConfig::uniform(2, int(2), 16, 3, 11);
        assert_eq!(
            sample_block_moments(&cfg, 4).unwrap(),
            sample_block_moments(&cfg, 4).unwrap()
        );
    }
}
