//! Cumulants of `d x d` matrices over a cumulant model with values in
//! `B = M_d(C)` (entrywise expectation) and in the diagonal subalgebra `D`.
//!
//! [`OpSpace`] evaluates the defining recursion directly: `k_π` is reduced by
//! extracting an interval block and multiplying its value into the neighbour
//! on the left, and `k_n = E(X_1 ... X_n) - Σ_{π ≠ 1_n} k_π`. The closed
//! entrywise formulas live alongside so the two can be compared.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::freeprob::{CumulantModel, MomentCache, NcPolynomial};
use crate::matrix::{OperatorMatrix, ScalarMatrix};
use crate::ncpartition::{self, Partition};
use crate::rational::{self, Rat};
use crate::rcyclic::RCyclicFamily;
use crate::series::{self, Series};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algebra {
    /// All of `M_d(C)`.
    B,
    /// Diagonal scalar matrices.
    D,
}

/// Which interval block the recursion for `k_π` removes first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extraction {
    Leftmost,
    Rightmost,
}

/// Evaluation context: a model plus memoised moments and cumulants.
pub struct OpSpace<'a> {
    cache: MomentCache<'a>,
    memo: HashMap<(Algebra, Vec<OperatorMatrix>), ScalarMatrix>,
}

impl<'a> OpSpace<'a> {
    pub fn new(model: &'a CumulantModel) -> Self {
        OpSpace {
            cache: MomentCache::new(model),
            memo: HashMap::new(),
        }
    }

    pub fn model(&self) -> &'a CumulantModel {
        self.cache.model()
    }

    fn phi(&mut self, p: &NcPolynomial) -> Result<Rat> {
        let order = self.model().order();
        self.cache.phi_poly(p).map_err(|e| match e {
            Error::WordTooLong { len, .. } => Error::DegreeOverflow { degree: len, order },
            other => other,
        })
    }

    /// `E_B`: entrywise `φ`.
    pub fn expect_b(&mut self, x: &OperatorMatrix) -> Result<ScalarMatrix> {
        let d = x.dim();
        let mut out = ScalarMatrix::zero(d);
        for i in 1..=d {
            for j in 1..=d {
                out.set(i, j, self.phi(x.get(i, j))?);
            }
        }
        Ok(out)
    }

    /// `E_D`: diagonal of the entrywise `φ`.
    pub fn expect_d(&mut self, x: &OperatorMatrix) -> Result<ScalarMatrix> {
        let d = x.dim();
        let mut out = ScalarMatrix::zero(d);
        for i in 1..=d {
            out.set(i, i, self.phi(x.get(i, i))?);
        }
        Ok(out)
    }

    pub fn expect(&mut self, x: &OperatorMatrix, algebra: Algebra) -> Result<ScalarMatrix> {
        match algebra {
            Algebra::B => self.expect_b(x),
            Algebra::D => self.expect_d(x),
        }
    }

    /// `k_n^{(B)}` or `k_n^{(D)}` by the defining recursion.
    pub fn cumulant(&mut self, xs: &[OperatorMatrix], algebra: Algebra) -> Result<ScalarMatrix> {
        let n = xs.len();
        if n == 0 {
            return Err(Error::EmptyWord);
        }
        let key = (algebra, xs.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let mut prod = xs[0].clone();
        for x in &xs[1..] {
            prod = prod.mul(x)?;
        }
        let mut value = self.expect(&prod, algebra)?;
        if n > 1 {
            for p in ncpartition::enumerate_nc(n)? {
                if p.is_one() {
                    continue;
                }
                let kp = self.cumulant_pi(&p, xs, algebra, Extraction::Leftmost)?;
                value = value.sub(&kp)?;
            }
        }
        self.memo.insert(key, value.clone());
        Ok(value)
    }

    /// `k_π` by repeated interval-block extraction. When the extracted block
    /// starts at position 1 its value multiplies the next argument on the left.
    pub fn cumulant_pi(
        &mut self,
        p: &Partition,
        xs: &[OperatorMatrix],
        algebra: Algebra,
        extraction: Extraction,
    ) -> Result<ScalarMatrix> {
        if p.n() != xs.len() {
            return Err(Error::SizeMismatch {
                left: p.n(),
                right: xs.len(),
            });
        }
        if p.is_one() {
            return self.cumulant(xs, algebra);
        }
        let block = match extraction {
            Extraction::Leftmost => ncpartition::interval_block(p),
            Extraction::Rightmost => ncpartition::rightmost_interval_block(p),
        };
        let (a, b) = (block[0], *block.last().unwrap());
        let inner = self.cumulant(&xs[a - 1..b], algebra)?;
        let mut rest: Vec<OperatorMatrix> = Vec::with_capacity(xs.len() - block.len());
        rest.extend_from_slice(&xs[..a - 1]);
        rest.extend_from_slice(&xs[b..]);
        if a > 1 {
            rest[a - 2] = rest[a - 2].mul_scalar_right(&inner)?;
        } else {
            rest[0] = rest[0].mul_scalar_left(&inner)?;
        }
        let reduced = ncpartition::remove_range(p, a, block.len())?;
        self.cumulant_pi(&reduced, &rest, algebra, extraction)
    }

    /// Scalar cumulant of matrix entries. Affine entries use multilinearity
    /// and the cumulant table; anything else goes through moment inversion.
    pub fn entry_cumulant(&mut self, args: &[&NcPolynomial]) -> Result<Rat> {
        if args.iter().any(|a| a.is_zero()) {
            return Ok(Rat::zero());
        }
        if args.len() == 1 {
            return self.phi(args[0]);
        }
        if !args.iter().all(|a| a.is_affine()) {
            let owned: Vec<NcPolynomial> = args.iter().map(|&a| a.clone()).collect();
            return self.cache.cumulant_of(&owned);
        }
        // constants drop out of cumulants of order >= 2
        let linear: Vec<Vec<(u32, Rat)>> = args
            .iter()
            .map(|a| {
                a.terms()
                    .filter(|(w, _)| w.len() == 1)
                    .map(|(w, c)| (w[0], c.clone()))
                    .collect()
            })
            .collect();
        if linear.iter().any(Vec::is_empty) {
            return Ok(Rat::zero());
        }
        let table = self.model().cumulants();
        let mut total = Rat::zero();
        let mut pick = vec![0usize; args.len()];
        let mut word = vec![0u32; args.len()];
        loop {
            let mut coef = Rat::one();
            for (t, &p) in pick.iter().enumerate() {
                word[t] = linear[t][p].0;
                coef *= &linear[t][p].1;
            }
            total += coef * table.coef(&word)?;
            let mut t = 0;
            while t < pick.len() {
                pick[t] += 1;
                if pick[t] < linear[t].len() {
                    break;
                }
                pick[t] = 0;
                t += 1;
            }
            if t == pick.len() {
                return Ok(total);
            }
        }
    }
}

// All index chains (i_0, i_1, ..., i_n) with fixed ends.
fn chains(d: usize, n: usize, i: usize, j: usize) -> Vec<Vec<usize>> {
    series::all_words(d, n - 1)
        .into_iter()
        .map(|mid| {
            let mut c = Vec::with_capacity(n + 1);
            c.push(i);
            c.extend(mid.iter().map(|&x| x as usize));
            c.push(j);
            c
        })
        .collect()
}

/// Entry `(i,j)` is `Σ_{i_1..i_{n-1}} k_n(a^{(1)}_{i i_1}, ..., a^{(n)}_{i_{n-1} j})`.
pub fn bvalued_cumulant_entrywise(
    space: &mut OpSpace<'_>,
    xs: &[OperatorMatrix],
) -> Result<ScalarMatrix> {
    bvalued_cumulant_pi(space, &Partition::one(xs.len().max(1)), xs)
}

/// Entry `(i,j)` is the chain sum of the scalar `k_π` of the entries.
pub fn bvalued_cumulant_pi(
    space: &mut OpSpace<'_>,
    p: &Partition,
    xs: &[OperatorMatrix],
) -> Result<ScalarMatrix> {
    let n = xs.len();
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    if p.n() != n {
        return Err(Error::SizeMismatch {
            left: p.n(),
            right: n,
        });
    }
    let d = xs[0].dim();
    let mut out = ScalarMatrix::zero(d);
    for i in 1..=d {
        for j in 1..=d {
            let mut total = Rat::zero();
            for chain in chains(d, n, i, j) {
                let mut term = Rat::one();
                for block in p.blocks() {
                    let args: Vec<&NcPolynomial> = block
                        .iter()
                        .map(|&k| xs[k - 1].get(chain[k - 1], chain[k]))
                        .collect();
                    let k = space.entry_cumulant(&args)?;
                    if k.is_zero() {
                        term = Rat::zero();
                        break;
                    }
                    term *= k;
                }
                total += term;
            }
            out.set(i, j, total);
        }
    }
    Ok(out)
}

/// A chain-shaped cumulant `k_n(a^{(r_1)}_{j i_1}, ..., a^{(r_n)}_{i_{n-1} i_n})`
/// with `j != i_n` that does not vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainViolation {
    pub rword: Vec<u32>,
    /// `(j, i_1, ..., i_n)`.
    pub chain: Vec<usize>,
    pub value: Rat,
}

impl fmt::Display for ChainViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self
            .rword
            .iter()
            .enumerate()
            .map(|(t, r)| format!("{r}:{},{}", self.chain[t], self.chain[t + 1]))
            .collect();
        write!(
            f,
            "{}\t{}",
            args.join(" "),
            rational::format_rat(&self.value)
        )
    }
}

/// First violation of the chain hypothesis up to length `max_len`.
pub fn chain_hypothesis_violation(
    space: &mut OpSpace<'_>,
    family: &[OperatorMatrix],
    max_len: usize,
) -> Result<Option<ChainViolation>> {
    let d = family[0].dim();
    for n in 1..=max_len {
        for rword in series::all_words(family.len(), n) {
            for start in 1..=d {
                for end in 1..=d {
                    if start == end {
                        continue;
                    }
                    for chain in chains(d, n, start, end) {
                        let args: Vec<&NcPolynomial> = rword
                            .iter()
                            .enumerate()
                            .map(|(t, &r)| family[r as usize - 1].get(chain[t], chain[t + 1]))
                            .collect();
                        let value = space.entry_cumulant(&args)?;
                        if !value.is_zero() {
                            return Ok(Some(ChainViolation {
                                rword,
                                chain,
                                value,
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// `k_n^{(D)}(A_{r_1} Λ_1, ..., A_{r_{n-1}} Λ_{n-1}, A_{r_n})` by the closed
/// formula `Σ λ^{(1)}_{i_1} ... λ^{(n-1)}_{i_{n-1}} k_n(a_{i_n i_1}, ..., a_{i_{n-1} i_n}) P_{i_n}`.
/// The chain hypothesis is verified up to length `n` first.
pub fn dvalued_cumulant(
    space: &mut OpSpace<'_>,
    family: &[OperatorMatrix],
    rword: &[u32],
    lambdas: &[ScalarMatrix],
) -> Result<ScalarMatrix> {
    let n = rword.len();
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    if lambdas.len() + 1 != n {
        return Err(Error::SizeMismatch {
            left: lambdas.len() + 1,
            right: n,
        });
    }
    if let Some(l) = lambdas.iter().find(|l| !l.is_diagonal()) {
        return Err(Error::InvalidConfig(format!("{l} is not diagonal")));
    }
    if let Some(v) = chain_hypothesis_violation(space, family, n)? {
        return Err(Error::ChainHypothesis(v.to_string()));
    }
    let d = family[0].dim();
    let mut out = ScalarMatrix::zero(d);
    for last in 1..=d {
        let mut total = Rat::zero();
        for mid in series::all_words(d, n - 1) {
            let mut weight = Rat::one();
            for (t, &i) in mid.iter().enumerate() {
                weight *= lambdas[t].get(i as usize, i as usize);
            }
            if weight.is_zero() {
                continue;
            }
            let mut idx = vec![last];
            idx.extend(mid.iter().map(|&x| x as usize));
            idx.push(last);
            let args: Vec<&NcPolynomial> = rword
                .iter()
                .enumerate()
                .map(|(t, &r)| family[r as usize - 1].get(idx[t], idx[t + 1]))
                .collect();
            total += weight * space.entry_cumulant(&args)?;
        }
        out.set(last, last, total);
    }
    Ok(out)
}

/// `A_1 ⊙ ... ⊙ A_n`: entry `(i,j)` is `Σ a^{(1)}_{i i_1} ⊗ ... ⊗ a^{(n)}_{i_{n-1} j}`,
/// stored as a combination of tensor words. Entries must be affine; letter 0
/// stands for the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorGrid {
    d: usize,
    n: usize,
    entries: Vec<HashMap<Vec<u32>, Rat>>,
}

impl TensorGrid {
    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn tensor_len(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &HashMap<Vec<u32>, Rat> {
        &self.entries[(i - 1) * self.d + (j - 1)]
    }
}

pub fn odot(xs: &[OperatorMatrix]) -> Result<TensorGrid> {
    let n = xs.len();
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    let d = xs[0].dim();
    for x in xs {
        for i in 1..=d {
            for j in 1..=d {
                if !x.get(i, j).is_affine() {
                    return Err(Error::NotAffine);
                }
            }
        }
    }
    let mut entries = Vec::with_capacity(d * d);
    for i in 1..=d {
        for j in 1..=d {
            let mut acc: HashMap<Vec<u32>, Rat> = HashMap::new();
            for chain in chains(d, n, i, j) {
                let mut partial: Vec<(Vec<u32>, Rat)> = vec![(Vec::new(), Rat::one())];
                for (t, x) in xs.iter().enumerate() {
                    let entry = x.get(chain[t], chain[t + 1]);
                    let mut next = Vec::new();
                    for (w, c) in &partial {
                        for (letter, coef) in entry.terms() {
                            let mut w2 = w.clone();
                            w2.push(letter.first().copied().unwrap_or(0));
                            next.push((w2, c * coef));
                        }
                    }
                    partial = next;
                }
                for (w, c) in partial {
                    let slot = acc.entry(w).or_insert_with(Rat::zero);
                    *slot += c;
                }
            }
            acc.retain(|_, c| !c.is_zero());
            entries.push(acc);
        }
    }
    Ok(TensorGrid { d, n, entries })
}

fn tensor_cumulant(model: &CumulantModel, entry: &HashMap<Vec<u32>, Rat>) -> Result<Rat> {
    let mut total = Rat::zero();
    for (w, c) in entry {
        let k = if w.contains(&0) {
            // the unit has k_1 = 1 and no higher cumulants
            if w.len() == 1 {
                Rat::one()
            } else {
                Rat::zero()
            }
        } else {
            model.cumulant(w)?
        };
        total += c * k;
    }
    Ok(total)
}

/// `k̃_n` applied entrywise.
pub fn ktilde_b(model: &CumulantModel, grid: &TensorGrid) -> Result<ScalarMatrix> {
    let d = grid.d;
    let mut out = ScalarMatrix::zero(d);
    for i in 1..=d {
        for j in 1..=d {
            out.set(i, j, tensor_cumulant(model, grid.entry(i, j))?);
        }
    }
    Ok(out)
}

/// `k̃_n` on the diagonal only.
pub fn ktilde_d(model: &CumulantModel, grid: &TensorGrid) -> Result<ScalarMatrix> {
    Ok(ktilde_b(model, grid)?.diagonal_part())
}

/// `(1/d) Σ_i k_n(x_{ii})`.
pub fn ktilde_c(model: &CumulantModel, grid: &TensorGrid) -> Result<Rat> {
    Ok(ktilde_b(model, grid)?.trace() * rational::rat(1, grid.d as i64))
}

/// A letter of a monomial in the generators of `C`: a matrix `A_r` or a
/// diagonal projection `P_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A(usize),
    P(usize),
}

/// One `C`-slot of an alternating product: the unit, or a centred monomial
/// `m - E_D(m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CFactor {
    Unit,
    Centered(Vec<Letter>),
}

impl fmt::Display for CFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CFactor::Unit => f.write_str("I"),
            CFactor::Centered(m) => {
                let parts: Vec<String> = m
                    .iter()
                    .map(|l| match l {
                        Letter::A(r) => format!("A{r}"),
                        Letter::P(i) => format!("P{i}"),
                    })
                    .collect();
                write!(f, "cent({})", parts.join("."))
            }
        }
    }
}

/// `C_1 V_{i_1 j_1} C_2 ... V_{i_{n-1} j_{n-1}} C_n` with nonzero `E_D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmalgamationWitness {
    pub factors: Vec<CFactor>,
    pub units: Vec<(usize, usize)>,
    pub value: ScalarMatrix,
}

impl AmalgamationWitness {
    /// Number of matrix units in the product.
    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }
}

impl fmt::Display for AmalgamationWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = vec![self.factors[0].to_string()];
        for (t, (i, j)) in self.units.iter().enumerate() {
            parts.push(format!("V{i},{j}"));
            parts.push(self.factors[t + 1].to_string());
        }
        write!(f, "{}\t{}", parts.join(" "), self.value)
    }
}

// Monomials A_{r_1} [P] A_{r_2} ... [P] A_{r_k} with k = `count` matrix
// letters. Outer projections are omitted: next to an off-diagonal matrix
// unit, or at either end under E_D, a projection either vanishes or acts as
// the identity, so it never produces a new witness.
fn monomials(s: usize, d: usize, count: usize) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    for rword in series::all_words(s, count) {
        // 0 means no projection between consecutive matrices
        for gaps in series::all_words(d + 1, count - 1) {
            let mut m = vec![Letter::A(rword[0] as usize)];
            for t in 1..count {
                let g = gaps[t - 1] as usize - 1;
                if g > 0 {
                    m.push(Letter::P(g));
                }
                m.push(Letter::A(rword[t] as usize));
            }
            out.push(m);
        }
    }
    out
}

/// Freeness of the algebra generated by `generators` and `D` from `B`, with
/// amalgamation over `D`, checked on alternating products whose total
/// matrix degree is at most `budget`. Returns the first product, in order of
/// total degree, number of factors, and factor choice, with nonzero `E_D`.
pub fn check_amalgamated_freeness(
    space: &mut OpSpace<'_>,
    generators: &[OperatorMatrix],
    budget: usize,
) -> Result<Option<AmalgamationWitness>> {
    let Some(first) = generators.first() else {
        return Ok(None);
    };
    let d = first.dim();
    if budget > space.model().order() {
        return Err(Error::DegreeOverflow {
            degree: budget,
            order: space.model().order(),
        });
    }
    let degrees: Vec<usize> = generators.iter().map(|g| g.degree().max(1)).collect();
    let mut options: Vec<(usize, CFactor, OperatorMatrix)> = Vec::new();
    for count in 1..=budget {
        for m in monomials(generators.len(), d, count) {
            let degree: usize = m
                .iter()
                .map(|l| match l {
                    Letter::A(r) => degrees[r - 1],
                    Letter::P(_) => 0,
                })
                .sum();
            if degree > budget {
                continue;
            }
            let mut prod = OperatorMatrix::identity(d);
            for l in &m {
                prod = match *l {
                    Letter::A(r) => prod.mul(&generators[r - 1])?,
                    Letter::P(i) => prod.mul_scalar_right(&ScalarMatrix::unit(d, i, i))?,
                };
            }
            let centered = prod.sub(&OperatorMatrix::from_scalar(&space.expect_d(&prod)?))?;
            if is_zero_matrix(&centered) {
                continue;
            }
            options.push((degree, CFactor::Centered(m), centered));
        }
    }
    options.sort_by_key(|o| o.0);
    let off_diagonal: Vec<(usize, usize)> = (1..=d)
        .flat_map(|i| (1..=d).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let unit = (0usize, CFactor::Unit, OperatorMatrix::identity(d));

    for total in 1..=budget {
        for n in 2..=total + 2 {
            let mut slots: Vec<usize> = Vec::with_capacity(n);
            if let Some(w) =
                search_factors(space, &options, &unit, &off_diagonal, n, total, &mut slots)?
            {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

fn is_zero_matrix(m: &OperatorMatrix) -> bool {
    let d = m.dim();
    (1..=d).all(|i| (1..=d).all(|j| m.get(i, j).is_zero()))
}

// Depth-first over factor choices; index `options.len()` denotes the unit,
// which is only admissible at the two ends and is tried last.
fn search_factors(
    space: &mut OpSpace<'_>,
    options: &[(usize, CFactor, OperatorMatrix)],
    unit: &(usize, CFactor, OperatorMatrix),
    off_diagonal: &[(usize, usize)],
    n: usize,
    remaining: usize,
    slots: &mut Vec<usize>,
) -> Result<Option<AmalgamationWitness>> {
    let pos = slots.len();
    if pos == n {
        if remaining != 0 {
            return Ok(None);
        }
        return evaluate_products(space, options, unit, off_diagonal, slots);
    }
    let is_end = pos == 0 || pos + 1 == n;
    for (idx, option) in options.iter().enumerate() {
        if option.0 > remaining {
            break;
        }
        slots.push(idx);
        let found = search_factors(
            space,
            options,
            unit,
            off_diagonal,
            n,
            remaining - option.0,
            slots,
        )?;
        slots.pop();
        if found.is_some() {
            return Ok(found);
        }
    }
    if is_end {
        slots.push(options.len());
        let found = search_factors(space, options, unit, off_diagonal, n, remaining, slots)?;
        slots.pop();
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

fn evaluate_products(
    space: &mut OpSpace<'_>,
    options: &[(usize, CFactor, OperatorMatrix)],
    unit: &(usize, CFactor, OperatorMatrix),
    off_diagonal: &[(usize, usize)],
    slots: &[usize],
) -> Result<Option<AmalgamationWitness>> {
    let pick = |idx: usize| {
        if idx == options.len() {
            unit
        } else {
            &options[idx]
        }
    };
    let d = unit.2.dim();
    let gaps = slots.len() - 1;
    for units in series::all_words(off_diagonal.len(), gaps) {
        let mut prod = pick(slots[0]).2.clone();
        for (t, &u) in units.iter().enumerate() {
            let (i, j) = off_diagonal[u as usize - 1];
            prod = prod
                .mul_scalar_right(&ScalarMatrix::unit(d, i, j))?
                .mul(&pick(slots[t + 1]).2)?;
        }
        let value = space.expect_d(&prod)?;
        if !value.is_zero() {
            return Ok(Some(AmalgamationWitness {
                factors: slots.iter().map(|&s| pick(s).1.clone()).collect(),
                units: units
                    .iter()
                    .map(|&u| off_diagonal[u as usize - 1])
                    .collect(),
                value,
            }));
        }
    }
    Ok(None)
}

/// `k_n^{(D)}(A_{r_1} P_{i_1}, ..., A_{r_{n-1}} P_{i_{n-1}}, A_{r_n})` by the
/// generic recursion.
pub fn projected_dcumulant(
    space: &mut OpSpace<'_>,
    family: &[OperatorMatrix],
    rword: &[u32],
    projections: &[u32],
) -> Result<ScalarMatrix> {
    let n = rword.len();
    if projections.len() + 1 != n {
        return Err(Error::SizeMismatch {
            left: projections.len() + 1,
            right: n,
        });
    }
    let d = family[0].dim();
    let mut args = Vec::with_capacity(n);
    for (t, &r) in rword.iter().enumerate() {
        let a = &family[r as usize - 1];
        if t + 1 < n {
            let i = projections[t] as usize;
            args.push(a.mul_scalar_right(&ScalarMatrix::unit(d, i, i))?);
        } else {
            args.push(a.clone());
        }
    }
    space.cumulant(&args, Algebra::D)
}

/// Builds the R-cyclic family whose cyclic cumulant at `(r-word, i-word)` is
/// the `(i_n, i_n)` entry of the supplied `D`-cumulant
/// `k_n^{(D)}(A_{r_1} P_{i_1}, ..., A_{r_{n-1}} P_{i_{n-1}}, A_{r_n})`.
pub fn rcyclic_witness_from_dcumulants(
    d: usize,
    s: usize,
    order: usize,
    mut dcumulant: impl FnMut(&[u32], &[u32]) -> Result<ScalarMatrix>,
) -> Result<RCyclicFamily> {
    let mut f = Series::zero(s * d, order);
    for n in 1..=order {
        for rword in series::all_words(s, n) {
            for projections in series::all_words(d, n - 1) {
                let k = dcumulant(&rword, &projections)?;
                for last in 1..=d {
                    let mut word: Vec<u32> = rword[..n - 1]
                        .iter()
                        .zip(&projections)
                        .map(|(&r, &i)| series::pair_letter(r, i, d))
                        .collect();
                    word.push(series::pair_letter(rword[n - 1], last as u32, d));
                    f.set(&word, k.get(last, last).clone())?;
                }
            }
        }
    }
    RCyclicFamily::new(d, s, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::rcyclic::{entry_generator, MatrixFamily};

    fn semicircle_corner() -> CumulantModel {
        CumulantModel::new(Series::from_terms(1, 4, vec![(vec![1, 1], int(1))]).unwrap())
    }

    fn corner_matrix() -> OperatorMatrix {
        let mut x = OperatorMatrix::zero(2);
        x.set(1, 1, NcPolynomial::generator(1));
        x
    }

    #[test]
    fn expectations() {
        let model = semicircle_corner();
        let mut space = OpSpace::new(&model);
        let x = corner_matrix();
        assert!(space.expect_b(&x).unwrap().is_zero());
        let sq = space.expect_b(&x.mul(&x).unwrap()).unwrap();
        assert_eq!(sq, ScalarMatrix::unit(2, 1, 1));
        assert_eq!(
            space.expect_b(&OperatorMatrix::identity(2)).unwrap(),
            ScalarMatrix::identity(2)
        );
        let v12 = OperatorMatrix::from_scalar(&ScalarMatrix::unit(2, 1, 2));
        assert!(space.expect_d(&v12).unwrap().is_zero());
        let v21 = OperatorMatrix::from_scalar(&ScalarMatrix::unit(2, 2, 1));
        assert_eq!(
            space.expect_d(&v12.mul(&v21).unwrap()).unwrap(),
            ScalarMatrix::unit(2, 1, 1)
        );
    }

    #[test]
    fn second_cumulant_is_covariance() {
        let model = semicircle_corner();
        let mut space = OpSpace::new(&model);
        let x = corner_matrix().add(&OperatorMatrix::identity(2)).unwrap();
        let k2 = space.cumulant(&[x.clone(), x.clone()], Algebra::B).unwrap();
        let e = space.expect_b(&x).unwrap();
        let want = space
            .expect_b(&x.mul(&x).unwrap())
            .unwrap()
            .sub(&e.mul(&e).unwrap())
            .unwrap();
        assert_eq!(k2, want);
        assert_eq!(k2, ScalarMatrix::unit(2, 1, 1));
    }

    #[test]
    fn extraction_order_is_irrelevant() {
        let model = semicircle_corner();
        let mut space = OpSpace::new(&model);
        let x = corner_matrix()
            .add(&OperatorMatrix::from_scalar(&ScalarMatrix::unit(2, 1, 2)))
            .unwrap();
        let xs = vec![x.clone(), x.clone(), x.clone(), x];
        for p in ncpartition::enumerate_nc(4).unwrap() {
            let l = space
                .cumulant_pi(&p, &xs, Algebra::B, Extraction::Leftmost)
                .unwrap();
            let r = space
                .cumulant_pi(&p, &xs, Algebra::B, Extraction::Rightmost)
                .unwrap();
            assert_eq!(l, r, "{p}");
            assert_eq!(l, bvalued_cumulant_pi(&mut space, &p, &xs).unwrap(), "{p}");
        }
    }

    #[test]
    fn off_diagonal_mean_gives_length_one_witness() {
        let g = entry_generator(2, 1, 1, 2);
        let table = Series::from_terms(4, 4, vec![(vec![g], int(1))]).unwrap();
        let fam = MatrixFamily::canonical(CumulantModel::new(table), 2, 1).unwrap();
        let mut space = OpSpace::new(fam.model());
        let w = check_amalgamated_freeness(&mut space, fam.matrices(), 4)
            .unwrap()
            .unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w.units, vec![(2, 1)]);
        assert_eq!(w.factors[1], CFactor::Unit);
        assert_eq!(w.value.get(1, 1), &int(1));
        assert_eq!(w.to_string(), "cent(A1) V2,1 I\t[1/1 0/1; 0/1 0/1]");
    }

    #[test]
    fn identity_generator_is_trivially_free() {
        let model = CumulantModel::trivial(1, 4);
        let mut space = OpSpace::new(&model);
        assert!(
            check_amalgamated_freeness(&mut space, &[OperatorMatrix::identity(2)], 4)
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn chain_hypothesis_failure_is_reported() {
        let g = entry_generator(2, 1, 1, 2);
        let table = Series::from_terms(4, 3, vec![(vec![g], int(1))]).unwrap();
        let fam = MatrixFamily::canonical(CumulantModel::new(table), 2, 1).unwrap();
        let mut space = OpSpace::new(fam.model());
        let err = dvalued_cumulant(
            &mut space,
            fam.matrices(),
            &[1, 1],
            &[ScalarMatrix::identity(2)],
        );
        assert!(matches!(err, Err(Error::ChainHypothesis(_))));
    }

    #[test]
    fn odot_requires_affine_entries() {
        let x = corner_matrix();
        assert!(odot(&[x.mul(&x).unwrap()]).is_err());
        let grid = odot(&[x.clone(), x]).unwrap();
        assert_eq!(grid.entry(1, 1).get(&vec![1, 1]), Some(&int(1)));
        assert_eq!(grid.tensor_len(), 2);
    }
}
