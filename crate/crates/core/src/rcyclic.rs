//! R-cyclic matrix families.
//!
//! A family `A_1, ..., A_s` of `d x d` matrices over a cumulant model is
//! R-cyclic when every cumulant `k_n(a^{(r_1)}_{i_1 j_1}, ..., a^{(r_n)}_{i_n j_n})`
//! vanishes unless `j_1 = i_2, ..., j_{n-1} = i_n, j_n = i_1`. Such a family
//! is determined by the series `f` over the pair alphabet `(r, i)` whose
//! coefficient at `((r_1,i_1), ..., (r_n,i_n))` is
//! `k_n(a^{(r_1)}_{i_n i_1}, a^{(r_2)}_{i_1 i_2}, ..., a^{(r_n)}_{i_{n-1} i_n})`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::freeprob::{CumulantModel, MomentCache, NcPolynomial};
use crate::matrix::OperatorMatrix;
use crate::ncpartition::{self, Partition};
use crate::rational::{self, Rat};
use crate::series::{self, split_pair, Series};

/// Generator number of entry `(i, j)` of matrix `r` in the canonical
/// presentation where every entry is its own generator.
pub fn entry_generator(d: usize, r: usize, i: usize, j: usize) -> u32 {
    ((r - 1) * d * d + (i - 1) * d + j) as u32
}

/// Inverse of [`entry_generator`].
pub fn generator_entry(d: usize, g: u32) -> (usize, usize, usize) {
    let g = g as usize - 1;
    (g / (d * d) + 1, (g / d) % d + 1, g % d + 1)
}

// `(r, i, j, c)`: entry `(i,j)` of matrix `r` is `c` times the generator.
type ScaledEntry = (usize, usize, usize, Rat);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFamily {
    model: CumulantModel,
    matrices: Vec<OperatorMatrix>,
}

impl MatrixFamily {
    pub fn new(model: CumulantModel, matrices: Vec<OperatorMatrix>) -> Result<Self> {
        let Some(first) = matrices.first() else {
            return Err(Error::InvalidConfig(
                "a family needs at least one matrix".into(),
            ));
        };
        let d = first.dim();
        for m in &matrices {
            if m.dim() != d {
                return Err(Error::DimensionMismatch {
                    left: d,
                    right: m.dim(),
                });
            }
            let degree = m.degree();
            if degree > model.order() {
                return Err(Error::DegreeOverflow {
                    degree,
                    order: model.order(),
                });
            }
            for i in 1..=d {
                for j in 1..=d {
                    for (w, _) in m.get(i, j).terms() {
                        if let Some(&g) = w
                            .iter()
                            .find(|&&g| g == 0 || g as usize > model.generators())
                        {
                            return Err(Error::LetterOutOfRange {
                                letter: g,
                                alphabet: model.generators(),
                            });
                        }
                    }
                }
            }
        }
        Ok(MatrixFamily { model, matrices })
    }

    /// The canonical presentation: entry `(i,j)` of matrix `r` is the
    /// generator [`entry_generator`]`(d, r, i, j)`.
    pub fn canonical(model: CumulantModel, d: usize, s: usize) -> Result<Self> {
        if model.generators() != s * d * d {
            return Err(Error::AlphabetMismatch {
                left: model.generators(),
                right: s * d * d,
            });
        }
        let matrices = (1..=s)
            .map(|r| {
                OperatorMatrix::from_fn(d, |i, j| {
                    NcPolynomial::generator(entry_generator(d, r, i, j))
                })
            })
            .collect();
        MatrixFamily::new(model, matrices)
    }

    pub fn model(&self) -> &CumulantModel {
        &self.model
    }

    pub fn matrices(&self) -> &[OperatorMatrix] {
        &self.matrices
    }

    pub fn d(&self) -> usize {
        self.matrices[0].dim()
    }

    pub fn s(&self) -> usize {
        self.matrices.len()
    }

    /// The same family with one more matrix appended.
    pub fn with_matrix(&self, m: OperatorMatrix) -> Result<MatrixFamily> {
        let mut matrices = self.matrices.clone();
        matrices.push(m);
        MatrixFamily::new(self.model.clone(), matrices)
    }

    // generator -> entries (r, i, j, c) equal to c * generator
    fn generator_entries(&self) -> Result<HashMap<u32, Vec<ScaledEntry>>> {
        let d = self.d();
        let mut map: HashMap<u32, Vec<_>> = HashMap::new();
        for (r0, m) in self.matrices.iter().enumerate() {
            for i in 1..=d {
                for j in 1..=d {
                    let entry = m.get(i, j);
                    if entry.is_zero() {
                        continue;
                    }
                    let (c, g) = entry
                        .as_scaled_generator()
                        .ok_or(Error::NonGeneratorEntry { r: r0 + 1, i, j })?;
                    map.entry(g).or_default().push((r0 + 1, i, j, c));
                }
            }
        }
        Ok(map)
    }

    // Every nonzero entry cumulant, keyed by (r-word, index pairs).
    fn entry_cumulants(&self) -> Result<BTreeMap<EntryKey, Rat>> {
        let by_gen = self.generator_entries()?;
        let mut out = BTreeMap::new();
        for (w, k) in self.model.cumulants().iter() {
            let choices: Vec<&Vec<(usize, usize, usize, Rat)>> =
                match w.iter().map(|g| by_gen.get(g)).collect::<Option<Vec<_>>>() {
                    Some(c) => c,
                    None => continue,
                };
            let mut pick = vec![0usize; w.len()];
            loop {
                let mut value = k.clone();
                let mut rword = Vec::with_capacity(w.len());
                let mut pairs = Vec::with_capacity(w.len());
                for (t, &p) in pick.iter().enumerate() {
                    let (r, i, j, c) = &choices[t][p];
                    value *= c;
                    rword.push(*r as u32);
                    pairs.push((*i, *j));
                }
                let key = EntryKey { rword, pairs };
                let slot = out.entry(key).or_insert_with(Rat::zero);
                *slot += value;
                let mut t = 0;
                loop {
                    if t == pick.len() {
                        break;
                    }
                    pick[t] += 1;
                    if pick[t] < choices[t].len() {
                        break;
                    }
                    pick[t] = 0;
                    t += 1;
                }
                if t == pick.len() {
                    break;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }
}

// Ordered by length, then r-word, then index pairs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct EntryKey {
    rword: Vec<u32>,
    pairs: Vec<(usize, usize)>,
}

impl EntryKey {
    fn sort_key(&self) -> (usize, &[u32], &[(usize, usize)]) {
        (self.rword.len(), &self.rword, &self.pairs)
    }
}

fn is_cyclic(pairs: &[(usize, usize)]) -> bool {
    let n = pairs.len();
    (0..n).all(|t| pairs[t].1 == pairs[(t + 1) % n].0)
}

/// A nonzero cumulant on a non-cyclic index pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicViolation {
    pub rword: Vec<u32>,
    /// `(i_k, j_k)` for each argument `a^{(r_k)}_{i_k j_k}`.
    pub pairs: Vec<(usize, usize)>,
    pub value: Rat,
}

impl fmt::Display for CyclicViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self
            .rword
            .iter()
            .zip(&self.pairs)
            .map(|(r, (i, j))| format!("{r}:{i},{j}"))
            .collect();
        write!(
            f,
            "n={}\t{}\t{}",
            self.rword.len(),
            args.join(" "),
            rational::format_rat(&self.value)
        )
    }
}

/// The first non-cyclic nonzero entry cumulant, if any. Entries must be
/// zero or scalar multiples of single generators.
pub fn rcyclic_violation(fam: &MatrixFamily) -> Result<Option<CyclicViolation>> {
    let all = fam.entry_cumulants()?;
    Ok(all
        .into_iter()
        .filter(|(key, _)| !is_cyclic(&key.pairs))
        .min_by(|a, b| a.0.sort_key().cmp(&b.0.sort_key()))
        .map(|(key, value)| CyclicViolation {
            rword: key.rword,
            pairs: key.pairs,
            value,
        }))
}

pub fn is_rcyclic(fam: &MatrixFamily) -> Result<bool> {
    Ok(rcyclic_violation(fam)?.is_none())
}

/// The determining series over the pair alphabet `s*d`.
pub fn determining_series(fam: &MatrixFamily) -> Result<Series> {
    let d = fam.d();
    let all = fam.entry_cumulants()?;
    let mut f = Series::zero(fam.s() * d, fam.model.order());
    let mut first_bad: Option<CyclicViolation> = None;
    for (key, value) in all {
        if !is_cyclic(&key.pairs) {
            let v = CyclicViolation {
                rword: key.rword,
                pairs: key.pairs,
                value,
            };
            let replace = first_bad.as_ref().is_none_or(|b| {
                (v.rword.len(), &v.rword, &v.pairs) < (b.rword.len(), &b.rword, &b.pairs)
            });
            if replace {
                first_bad = Some(v);
            }
            continue;
        }
        // Argument k is a^{(r_k)}_{i_{k-1} i_k}; its column is the index letter.
        let word: Vec<u32> = key
            .rword
            .iter()
            .zip(&key.pairs)
            .map(|(&r, &(_, j))| series::pair_letter(r, j as u32, d))
            .collect();
        f.add_to(&word, &value)?;
    }
    match first_bad {
        Some(v) => Err(Error::NotRCyclic(v.to_string())),
        None => Ok(f),
    }
}

/// An R-cyclic family given only by its determining series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RCyclicFamily {
    d: usize,
    s: usize,
    f: Series,
}

impl RCyclicFamily {
    pub fn new(d: usize, s: usize, f: Series) -> Result<Self> {
        if f.alphabet() != s * d {
            return Err(Error::AlphabetMismatch {
                left: f.alphabet(),
                right: s * d,
            });
        }
        Ok(RCyclicFamily { d, s, f })
    }

    pub fn from_matrix_family(fam: &MatrixFamily) -> Result<Self> {
        RCyclicFamily::new(fam.d(), fam.s(), determining_series(fam)?)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn order(&self) -> usize {
        self.f.order()
    }

    pub fn determining_series(&self) -> &Series {
        &self.f
    }

    /// `k_n(a^{(r_1)}_{i_n i_1}, ..., a^{(r_n)}_{i_{n-1} i_n})`.
    pub fn cyclic_cumulant(&self, rword: &[u32], iword: &[u32]) -> Result<Rat> {
        let w = self.pair_word(rword, iword)?;
        self.f.coef(&w)
    }

    pub fn pair_word(&self, rword: &[u32], iword: &[u32]) -> Result<Vec<u32>> {
        if rword.len() != iword.len() {
            return Err(Error::SizeMismatch {
                left: rword.len(),
                right: iword.len(),
            });
        }
        Ok(rword
            .iter()
            .zip(iword)
            .map(|(&r, &i)| series::pair_letter(r, i, self.d))
            .collect())
    }

    /// The cumulant model of the canonical presentation: one generator per
    /// entry, nonzero cumulants only on cyclic patterns.
    pub fn to_model(&self) -> CumulantModel {
        let d = self.d;
        let mut table = Series::zero(self.s * d * d, self.f.order());
        for (w, c) in self.f.iter() {
            let n = w.len();
            let letters: Vec<(u32, u32)> = w.iter().map(|&l| split_pair(l, d)).collect();
            let gens: Vec<u32> = (0..n)
                .map(|t| {
                    let (r, i) = letters[t];
                    let prev = letters[(t + n - 1) % n].1;
                    entry_generator(d, r as usize, prev as usize, i as usize)
                })
                .collect();
            table
                .add_to(&gens, c)
                .expect("canonical generators are in range");
        }
        CumulantModel::new(table)
    }

    pub fn to_matrix_family(&self) -> MatrixFamily {
        MatrixFamily::canonical(self.to_model(), self.d, self.s)
            .expect("canonical presentation is well formed")
    }
}

fn sum_over_indices(g: &Series, d: usize) -> Series {
    let s = g.alphabet() / d;
    g.substitute(s, |l| split_pair(l, d).0)
        .scale(&rational::rat(1, d as i64))
}

/// Joint moment series of the family: `(1/d)(f ⊛̃ G_d)` with `z_{r,i} ↦ z_r`.
pub fn family_moments(f: &Series, d: usize) -> Result<Series> {
    let g = f.ext_boxed_convolve(&series::geometric(d, f.order()))?;
    Ok(sum_over_indices(&g, d))
}

/// Joint R-transform of the family: `(1/d)(f ⊛̃ H_d)` with `z_{r,i} ↦ z_r`.
pub fn family_rtransform(f: &Series, d: usize) -> Result<Series> {
    let g = f.ext_boxed_convolve(&series::h_series(d, f.order()))?;
    Ok(sum_over_indices(&g, d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Projected {
    Moments,
    RTransform,
}

/// Series of the compressed family `A_r P_i`, over the pair alphabet.
pub fn projected_series(f: &Series, d: usize, which: Projected) -> Result<Series> {
    let kernel = match which {
        Projected::Moments => series::geometric(d, f.order()),
        Projected::RTransform => series::h_series(d, f.order()),
    };
    Ok(f.ext_boxed_convolve(&kernel)?
        .scale(&rational::rat(1, d as i64)))
}

/// Two last indices whose partial sums over the remaining indices differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialSumViolation {
    pub rword: Vec<u32>,
    pub last: (u32, u32),
    pub sums: (Rat, Rat),
}

impl fmt::Display for PartialSumViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "r={}\ti_n={}: {}\ti_n={}: {}",
            series::join_letters(&self.rword),
            self.last.0,
            rational::format_rat(&self.sums.0),
            self.last.1,
            rational::format_rat(&self.sums.1)
        )
    }
}

// λ(r-word, i_n) = Σ over i_1..i_{n-1} of coef((r_1,i_1), ..., (r_n,i_n)).
fn partial_sums(f: &Series, d: usize) -> BTreeMap<(usize, Vec<u32>), Vec<Rat>> {
    let mut sums: BTreeMap<(usize, Vec<u32>), Vec<Rat>> = BTreeMap::new();
    for (w, c) in f.iter() {
        let rword: Vec<u32> = w.iter().map(|&l| split_pair(l, d).0).collect();
        let last = split_pair(*w.last().unwrap(), d).1 as usize;
        let slot = sums
            .entry((rword.len(), rword))
            .or_insert_with(|| vec![Rat::zero(); d]);
        slot[last - 1] += c;
    }
    sums
}

pub fn partial_sum_violation(f: &Series, d: usize) -> Option<PartialSumViolation> {
    partial_sums(f, d)
        .into_iter()
        .find_map(|((_, rword), sums)| {
            let t = sums.iter().position(|v| v != &sums[0])?;
            Some(PartialSumViolation {
                rword,
                last: (1, t as u32 + 1),
                sums: (sums[0].clone(), sums[t].clone()),
            })
        })
}

/// `Σ λ_{r_1..r_n} z_{r_1} ... z_{r_n}`, valid when every partial sum is
/// independent of the last index; errors with a witness otherwise.
pub fn partial_sum_rtransform(f: &Series, d: usize) -> Result<Series> {
    if let Some(v) = partial_sum_violation(f, d) {
        return Err(Error::PartialSum(v.to_string()));
    }
    let mut out = Series::zero(f.alphabet() / d, f.order());
    for ((_, rword), sums) in partial_sums(f, d) {
        out.add_to(&rword, &sums[0])?;
    }
    Ok(out)
}

/// The per-partition terms `T_π = (1/d) Σ_i [w; π](f) [i; Kr(π)](H_d)` of the
/// cumulant `k_n(A_{r_1}, ..., A_{r_n})`; they sum to the cumulant.
pub fn partial_sum_terms(f: &Series, d: usize, rword: &[u32]) -> Result<Vec<(Partition, Rat)>> {
    let n = rword.len();
    if n == 0 || n > f.order() {
        return Err(Error::WordTooLong {
            len: n,
            order: f.order(),
        });
    }
    let h = series::h_series(d, f.order());
    let inv_d = rational::rat(1, d as i64);
    let iwords = series::all_words(d, n);
    let mut out = Vec::new();
    for (p, kp) in ncpartition::nc_with_kreweras(n) {
        let mut total = Rat::zero();
        for iw in &iwords {
            let w: Vec<u32> = rword
                .iter()
                .zip(iw)
                .map(|(&r, &i)| series::pair_letter(r, i, d))
                .collect();
            let fp = f.gen_coef(&w, p)?;
            if fp.is_zero() {
                continue;
            }
            total += fp * h.gen_coef(iw, kp)?;
        }
        out.push((p.clone(), total * &inv_d));
    }
    Ok(out)
}

/// Checks that `fam` together with `new_matrix` is R-cyclic: every cumulant
/// of entries on a non-cyclic index pattern, with at most `budget` arguments
/// and total matrix degree at most `budget`, must vanish. Cumulants are
/// obtained by Moebius inversion of moments, so entries may be arbitrary
/// polynomials.
pub fn closure_check(
    fam: &MatrixFamily,
    new_matrix: &OperatorMatrix,
    budget: usize,
) -> Result<Option<CyclicViolation>> {
    let enlarged = fam.with_matrix(new_matrix.clone())?;
    if budget > fam.model().order() {
        return Err(Error::DegreeOverflow {
            degree: budget,
            order: fam.model().order(),
        });
    }
    let d = enlarged.d();
    let count = enlarged.s();
    let degrees: Vec<usize> = enlarged
        .matrices
        .iter()
        .map(OperatorMatrix::degree)
        .collect();
    let mut cache = MomentCache::new(fam.model());
    let index_pairs: Vec<(usize, usize)> =
        (1..=d).flat_map(|i| (1..=d).map(move |j| (i, j))).collect();
    for n in 1..=budget {
        for rword in series::all_words(count, n) {
            let weight: usize = rword.iter().map(|&r| degrees[r as usize - 1]).sum();
            if weight > budget {
                continue;
            }
            for choice in series::all_words(index_pairs.len(), n) {
                let pairs: Vec<(usize, usize)> = choice
                    .iter()
                    .map(|&c| index_pairs[c as usize - 1])
                    .collect();
                if is_cyclic(&pairs) {
                    continue;
                }
                let args: Vec<NcPolynomial> = rword
                    .iter()
                    .zip(&pairs)
                    .map(|(&r, &(i, j))| enlarged.matrices[r as usize - 1].get(i, j).clone())
                    .collect();
                if args.iter().any(NcPolynomial::is_zero) {
                    continue;
                }
                let value = cache.cumulant_of(&args)?;
                if !value.is_zero() {
                    return Ok(Some(CyclicViolation {
                        rword,
                        pairs,
                        value,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// `k_π` of the cyclic argument list `(a^{(r_1)}_{i_n i_1}, ...)` evaluated
/// directly from the cumulant table of `model` (canonical presentation).
pub fn cyclic_partition_cumulant(
    model: &CumulantModel,
    d: usize,
    rword: &[u32],
    iword: &[u32],
    p: &Partition,
) -> Result<Rat> {
    let n = rword.len();
    let gens: Vec<u32> = (0..n)
        .map(|t| {
            let prev = iword[(t + n - 1) % n] as usize;
            entry_generator(d, rword[t] as usize, prev, iword[t] as usize)
        })
        .collect();
    let mut acc = Rat::one();
    for block in p.blocks() {
        let w: Vec<u32> = block.iter().map(|&k| gens[k - 1]).collect();
        acc *= model.cumulant(&w)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn circular_block(order: usize) -> MatrixFamily {
        let d = 2;
        let c = entry_generator(d, 1, 1, 2);
        let cs = entry_generator(d, 1, 2, 1);
        let table =
            Series::from_terms(4, order, vec![(vec![c, cs], int(1)), (vec![cs, c], int(1))])
                .unwrap();
        let fam = MatrixFamily::canonical(CumulantModel::new(table), d, 1).unwrap();
        // diagonal entries carry no cumulants, so they behave as zero
        let m = OperatorMatrix::from_fn(d, |i, j| {
            if i == j {
                NcPolynomial::zero()
            } else {
                fam.matrices()[0].get(i, j).clone()
            }
        });
        MatrixFamily::new(fam.model().clone(), vec![m]).unwrap()
    }

    #[test]
    fn generator_numbering_round_trips() {
        for r in 1..=2 {
            for i in 1..=3 {
                for j in 1..=3 {
                    assert_eq!(generator_entry(3, entry_generator(3, r, i, j)), (r, i, j));
                }
            }
        }
    }

    #[test]
    fn circular_block_is_rcyclic() {
        let fam = circular_block(4);
        assert!(is_rcyclic(&fam).unwrap());
        let f = determining_series(&fam).unwrap();
        let want =
            Series::from_terms(2, 4, vec![(vec![1, 2], int(1)), (vec![2, 1], int(1))]).unwrap();
        assert_eq!(f, want);
        assert_eq!(
            family_rtransform(&f, 2).unwrap(),
            Series::from_terms(1, 4, vec![(vec![1, 1], int(1))]).unwrap()
        );
        assert_eq!(
            partial_sum_rtransform(&f, 2).unwrap(),
            family_rtransform(&f, 2).unwrap()
        );
    }

    #[test]
    fn off_diagonal_mean_breaks_cyclicity() {
        let g = entry_generator(2, 1, 1, 2);
        let table = Series::from_terms(4, 3, vec![(vec![g], int(1))]).unwrap();
        let fam = MatrixFamily::canonical(CumulantModel::new(table), 2, 1).unwrap();
        let v = rcyclic_violation(&fam).unwrap().unwrap();
        assert_eq!(v.rword, vec![1]);
        assert_eq!(v.pairs, vec![(1, 2)]);
        assert!(matches!(
            determining_series(&fam),
            Err(Error::NotRCyclic(_))
        ));
    }

    #[test]
    fn polynomial_entries_are_rejected_by_detection() {
        let fam = circular_block(4);
        let sq = fam.matrices()[0].mul(&fam.matrices()[0]).unwrap();
        let bigger = fam.with_matrix(sq).unwrap();
        assert!(matches!(
            rcyclic_violation(&bigger),
            Err(Error::NonGeneratorEntry { .. })
        ));
    }

    #[test]
    fn partial_sum_violation_is_reported() {
        let f = Series::from_terms(2, 3, vec![(vec![1, 1], int(1))]).unwrap();
        let v = partial_sum_violation(&f, 2).unwrap();
        assert_eq!(v.rword, vec![1, 1]);
        assert_eq!(v.sums, (int(1), int(0)));
        assert!(matches!(
            partial_sum_rtransform(&f, 2),
            Err(Error::PartialSum(_))
        ));
    }

    #[test]
    fn constant_table_scales_by_power_of_d() {
        let d = 3;
        let mut f = Series::zero(d, 4);
        for n in 1..=4 {
            for w in series::all_words(d, n) {
                f.set(&w, rat(n as i64, 7)).unwrap();
            }
        }
        let r = partial_sum_rtransform(&f, d).unwrap();
        for n in 1..=4usize {
            let want = rat(n as i64, 7) * rational::pow(&int(d as i64), n - 1);
            assert_eq!(r.coef(&vec![1; n]).unwrap(), want);
        }
        assert_eq!(r, family_rtransform(&f, d).unwrap());
    }

    #[test]
    fn table_and_model_presentations_agree() {
        let fam = circular_block(4);
        let rc = RCyclicFamily::from_matrix_family(&fam).unwrap();
        let back = RCyclicFamily::from_matrix_family(&rc.to_matrix_family()).unwrap();
        assert_eq!(rc, back);
        assert_eq!(rc.cyclic_cumulant(&[1, 1], &[1, 2]).unwrap(), int(1));
    }

    #[test]
    fn closure_examples() {
        let fam = circular_block(4);
        let a = &fam.matrices()[0];
        assert!(closure_check(&fam, &a.mul(a).unwrap(), 4)
            .unwrap()
            .is_none());
        let diag =
            OperatorMatrix::from_scalar(&crate::matrix::ScalarMatrix::diag(&[int(1), int(2)]));
        assert!(closure_check(&fam, &diag, 4).unwrap().is_none());
        let v12 = OperatorMatrix::from_scalar(&crate::matrix::ScalarMatrix::unit(2, 1, 2));
        let witness = closure_check(&fam, &v12, 4).unwrap().unwrap();
        assert_eq!(witness.rword, vec![2]);
        assert_eq!(witness.pairs, vec![(1, 2)]);
        assert!(closure_check(&fam, &v12, 5).is_err());
    }
}
