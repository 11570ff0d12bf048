//! Named example families and seeded random inputs.
//!
//! Every family here uses the canonical presentation of
//! [`crate::rcyclic::entry_generator`]: entry `(i,j)` of matrix `r` is its own
//! generator, and the model lists the joint cumulants of those generators.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::freeprob::{CumulantModel, NcPolynomial};
use crate::matrix::OperatorMatrix;
use crate::rational::{self, Rat};
use crate::rcyclic::{entry_generator, MatrixFamily};
use crate::series::{self, Series};

/// `k_2` of a semicircular element of the given radius: `radius² / 4`.
pub fn radius_variance(radius: &Rat) -> Rat {
    radius * radius * rational::rat(1, 4)
}

/// Cumulant table of entries of `s` matrices of size `d`, built up by
/// declarations. Distinct declarations never interact: entries not linked
/// by a declared cumulant are free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryModel {
    d: usize,
    s: usize,
    table: Series,
}

/// `(r, i, j)`: entry `(i,j)` of matrix `r`, all 1-based.
pub type Entry = (usize, usize, usize);

impl EntryModel {
    pub fn new(d: usize, s: usize, order: usize) -> Result<Self> {
        if d == 0 || s == 0 || order == 0 {
            return Err(Error::InvalidConfig(
                "dimension, matrix count and order must be positive".into(),
            ));
        }
        Ok(EntryModel {
            d,
            s,
            table: Series::zero(s * d * d, order),
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn generator(&self, e: Entry) -> Result<u32> {
        let (r, i, j) = e;
        if r == 0 || r > self.s {
            return Err(Error::IndexOutOfRange {
                index: r,
                max: self.s,
            });
        }
        for k in [i, j] {
            if k == 0 || k > self.d {
                return Err(Error::IndexOutOfRange {
                    index: k,
                    max: self.d,
                });
            }
        }
        Ok(entry_generator(self.d, r, i, j))
    }

    /// Declares `k_n(entries...) = value`; redeclaring a key is an error.
    pub fn set_cumulant(&mut self, entries: &[Entry], value: Rat) -> Result<()> {
        let word = entries
            .iter()
            .map(|&e| self.generator(e))
            .collect::<Result<Vec<u32>>>()?;
        if !self.table.coef(&word)?.is_zero() {
            return Err(Error::InvalidConfig(format!(
                "cumulant of {} declared twice",
                format_entries(entries)
            )));
        }
        self.table.set(&word, value)
    }

    /// Semicircular diagonal entry `(i,i)` of matrix `r`.
    pub fn semicircular(&mut self, r: usize, i: usize, radius: &Rat) -> Result<()> {
        self.set_cumulant(&[(r, i, i), (r, i, i)], radius_variance(radius))
    }

    /// Circular pair: entry `(i,j)` is `c` and `(j,i)` is `c*`.
    pub fn circular(&mut self, r: usize, i: usize, j: usize, radius: &Rat) -> Result<()> {
        if i == j {
            return Err(Error::InvalidConfig("a circular pair needs i != j".into()));
        }
        let v = radius_variance(radius);
        self.set_cumulant(&[(r, i, j), (r, j, i)], v.clone())?;
        self.set_cumulant(&[(r, j, i), (r, i, j)], v)
    }

    pub fn model(&self) -> CumulantModel {
        CumulantModel::new(self.table.clone())
    }

    pub fn family(&self) -> MatrixFamily {
        MatrixFamily::canonical(self.model(), self.d, self.s)
            .expect("canonical presentation matches the table")
    }

    /// Declared cumulants as `(entries, value)`, sorted.
    pub fn declarations(&self) -> Vec<(Vec<Entry>, Rat)> {
        self.table
            .terms()
            .into_iter()
            .map(|(w, c)| {
                let entries = w
                    .letters()
                    .iter()
                    .map(|&g| crate::rcyclic::generator_entry(self.d, g))
                    .collect();
                (entries, c)
            })
            .collect()
    }
}

pub fn format_entries(entries: &[Entry]) -> String {
    entries
        .iter()
        .map(|(r, i, j)| format!("{r}:{i},{j}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Self-adjoint `d x d` matrix with semicircular diagonal and circular
/// off-diagonal entries, all free; `radii[i][j]` must be symmetric.
pub fn gaussian_block(model: &mut EntryModel, r: usize, radii: &[Vec<Rat>]) -> Result<()> {
    let d = model.d();
    for i in 1..=d {
        if !radii[i - 1][i - 1].is_zero() {
            model.semicircular(r, i, &radii[i - 1][i - 1])?;
        }
        for j in i + 1..=d {
            if radii[i - 1][j - 1] != radii[j - 1][i - 1] {
                return Err(Error::InvalidConfig(format!(
                    "radii ({i},{j}) not symmetric"
                )));
            }
            if !radii[i - 1][j - 1].is_zero() {
                model.circular(r, i, j, &radii[i - 1][j - 1])?;
            }
        }
    }
    Ok(())
}

fn radii2(a: i64, b: i64, c: i64) -> Vec<Vec<Rat>> {
    // [[a, c], [c, b]]
    let (a, b, c) = (rational::int(a), rational::int(b), rational::int(c));
    vec![vec![a, c.clone()], vec![c, b]]
}

/// Diagonal matrix of two free semicirculars with variances 1 and 2.
pub fn diagonal_free_semicirculars(order: usize) -> MatrixFamily {
    let mut m = EntryModel::new(2, 1, order).unwrap();
    m.set_cumulant(&[(1, 1, 1), (1, 1, 1)], rational::int(1))
        .unwrap();
    m.set_cumulant(&[(1, 2, 2), (1, 2, 2)], rational::int(2))
        .unwrap();
    m.family()
}

/// `[[0, c], [c*, 0]]` with `c` circular of radius 2.
pub fn circular_block(order: usize) -> MatrixFamily {
    let mut m = EntryModel::new(2, 1, order).unwrap();
    m.circular(1, 1, 2, &rational::int(2)).unwrap();
    m.family()
}

/// Self-adjoint block with semicircular diagonal of radii 2 and 1 and a
/// circular off-diagonal pair of radius 3/2.
pub fn gaussian_block_instance(order: usize) -> MatrixFamily {
    let mut m = EntryModel::new(2, 1, order).unwrap();
    let radii = vec![
        vec![rational::int(2), rational::rat(3, 2)],
        vec![rational::rat(3, 2), rational::int(1)],
    ];
    gaussian_block(&mut m, 1, &radii).unwrap();
    m.family()
}

/// Two self-adjoint Gaussian blocks over free entry families, with unequal
/// radii so that no partial-sum shortcut applies.
pub fn gaussian_pair(order: usize) -> MatrixFamily {
    let mut m = EntryModel::new(2, 2, order).unwrap();
    gaussian_block(&mut m, 1, &radii2(2, 1, 1)).unwrap();
    gaussian_block(&mut m, 2, &radii2(1, 2, 2)).unwrap();
    m.family()
}

/// `s` self-adjoint `2 x 2` Gaussian blocks with every radius equal to 2.
pub fn uniform_radius_blocks(s: usize, order: usize) -> MatrixFamily {
    let mut m = EntryModel::new(2, s, order).unwrap();
    for r in 1..=s {
        gaussian_block(&mut m, r, &radii2(2, 2, 2)).unwrap();
    }
    m.family()
}

/// Not R-cyclic, yet every chain-shaped cumulant `k_n(a_{j i_1}, ..., a_{i_{n-1} i_n})`
/// with `j != i_n` vanishes: the two diagonal entries are correlated.
pub fn correlated_diagonal(order: usize) -> MatrixFamily {
    let mut m = EntryModel::new(2, 1, order).unwrap();
    gaussian_block(&mut m, 1, &radii2(2, 2, 1)).unwrap();
    m.set_cumulant(&[(1, 1, 1), (1, 2, 2)], rational::rat(1, 2))
        .unwrap();
    m.set_cumulant(&[(1, 2, 2), (1, 1, 1)], rational::rat(1, 2))
        .unwrap();
    m.family()
}

/// `k_1(a_{12}) = 1`, nothing else.
pub fn off_diagonal_mean(order: usize) -> MatrixFamily {
    let mut m = EntryModel::new(2, 1, order).unwrap();
    m.set_cumulant(&[(1, 1, 2)], rational::int(1)).unwrap();
    m.family()
}

/// Determining series `d · R_a((z_1 + ... + z_d)/d)` of the compression of a
/// single element with R-transform `r_a` (alphabet 1): coefficient
/// `d^{-(n-1)} k_n(a)` on every length-`n` word.
pub fn compression_series(d: usize, r_a: &Series) -> Series {
    let mut f = Series::zero(d, r_a.order());
    for n in 1..=r_a.order() {
        let k = r_a.coef(&vec![1; n]).expect("within order");
        if k.is_zero() {
            continue;
        }
        let c = k / rational::pow(&rational::int(d as i64), n - 1);
        for w in series::all_words(d, n) {
            f.set(&w, c.clone()).expect("within order");
        }
    }
    f
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small nonzero rational `p/q` with `|p| <= 3`, `q <= 3`.
pub fn random_rat(rng: &mut impl Rng) -> Rat {
    let mut p = 0;
    while p == 0 {
        p = rng.random_range(-3i64..=3);
    }
    rational::rat(p, rng.random_range(1i64..=3))
}

/// About `terms` random nonzero coefficients on random words.
pub fn random_series(rng: &mut impl Rng, alphabet: usize, order: usize, terms: usize) -> Series {
    let mut f = Series::zero(alphabet, order);
    for _ in 0..terms {
        let n = rng.random_range(1..=order);
        let w: Vec<u32> = (0..n)
            .map(|_| rng.random_range(1..=alphabet as u32))
            .collect();
        f.set(&w, random_rat(rng)).expect("word within bounds");
    }
    f
}

/// Random series with every degree-1 coefficient nonzero.
pub fn random_invertible_series(
    rng: &mut impl Rng,
    alphabet: usize,
    order: usize,
    terms: usize,
) -> Series {
    let mut f = random_series(rng, alphabet, order, terms);
    for r in 1..=alphabet as u32 {
        f.set(&[r], random_rat(rng)).expect("letter in range");
    }
    f
}

pub fn random_model(
    rng: &mut impl Rng,
    generators: usize,
    order: usize,
    terms: usize,
) -> CumulantModel {
    CumulantModel::new(random_series(rng, generators, order, terms))
}

/// `d x d` matrix whose entries are random affine polynomials `c_0 + c_1 g`.
pub fn random_affine_matrix(rng: &mut impl Rng, d: usize, generators: usize) -> OperatorMatrix {
    let mut m = OperatorMatrix::zero(d);
    for i in 1..=d {
        for j in 1..=d {
            let mut p = NcPolynomial::zero();
            if rng.random_bool(0.3) {
                p = p.add(&NcPolynomial::constant(random_rat(rng)));
            }
            if rng.random_bool(0.8) {
                let g = rng.random_range(1..=generators as u32);
                p = p.add(&NcPolynomial::generator(g).scale(&random_rat(rng)));
            }
            m.set(i, j, p);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rcyclic::{is_rcyclic, rcyclic_violation};

    #[test]
    fn corpus_families_are_rcyclic_where_claimed() {
        for fam in [
            diagonal_free_semicirculars(4),
            circular_block(4),
            gaussian_block_instance(4),
            gaussian_pair(4),
            uniform_radius_blocks(2, 4),
        ] {
            assert!(is_rcyclic(&fam).unwrap());
        }
        assert!(!is_rcyclic(&correlated_diagonal(4)).unwrap());
        let v = rcyclic_violation(&off_diagonal_mean(4)).unwrap().unwrap();
        assert_eq!(v.pairs, vec![(1, 2)]);
    }

    #[test]
    fn duplicate_and_out_of_range_declarations() {
        let mut m = EntryModel::new(2, 1, 4).unwrap();
        m.circular(1, 1, 2, &rational::int(2)).unwrap();
        assert!(m
            .set_cumulant(&[(1, 1, 2), (1, 2, 1)], rational::int(1))
            .is_err());
        assert!(m.set_cumulant(&[(1, 3, 1)], rational::int(1)).is_err());
        assert!(m.circular(1, 1, 1, &rational::int(1)).is_err());
        assert_eq!(m.declarations().len(), 2);
    }

    #[test]
    fn seeded_generation_is_deterministic() {
        let a = random_series(&mut rng(7), 3, 4, 6);
        let b = random_series(&mut rng(7), 3, 4, 6);
        assert_eq!(a, b);
    }
}
