//! Scalar noncommutative probability spaces presented by free cumulants.
//!
//! A [`CumulantModel`] lists the joint cumulants `k_n(g_{r_1}, ..., g_{r_n})`
//! of abstract generators `g_1, ..., g_m`; every moment is derived from them
//! by the moment-cumulant formula `φ(g_{r_1} ... g_{r_n}) = Σ_{π ∈ NC(n)} k_π`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ncpartition::{self, Partition};
use crate::rational::{self, Rat};
use crate::series::{self, Series, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CumulantModel {
    cumulants: Series,
}

impl CumulantModel {
    pub fn new(cumulants: Series) -> Self {
        CumulantModel { cumulants }
    }

    /// A model with no nonzero cumulant.
    pub fn trivial(generators: usize, order: usize) -> Self {
        CumulantModel::new(Series::zero(generators, order))
    }

    pub fn generators(&self) -> usize {
        self.cumulants.alphabet()
    }

    pub fn order(&self) -> usize {
        self.cumulants.order()
    }

    /// The cumulant table as a series: the joint R-transform of the generators.
    pub fn cumulants(&self) -> &Series {
        &self.cumulants
    }

    pub fn cumulant(&self, w: &[u32]) -> Result<Rat> {
        self.cumulants.coef(w)
    }

    pub fn phi_word(&self, w: &[u32]) -> Result<Rat> {
        MomentCache::new(self).phi(w)
    }

    pub fn phi_poly(&self, p: &NcPolynomial) -> Result<Rat> {
        MomentCache::new(self).phi_poly(p)
    }
}

/// Memoised moments of one model. Reuse it across many evaluations.
pub struct MomentCache<'a> {
    model: &'a CumulantModel,
    memo: HashMap<Vec<u32>, Rat>,
}

impl<'a> MomentCache<'a> {
    pub fn new(model: &'a CumulantModel) -> Self {
        MomentCache {
            model,
            memo: HashMap::new(),
        }
    }

    pub fn model(&self) -> &'a CumulantModel {
        self.model
    }

    /// `φ(g_{w_1} ... g_{w_n})`; the empty word gives `φ(1) = 1`.
    pub fn phi(&mut self, w: &[u32]) -> Result<Rat> {
        if w.is_empty() {
            return Ok(Rat::one());
        }
        let table = &self.model.cumulants;
        // Validates letters and length once per top-level word.
        table.coef(w)?;
        Ok(self.phi_unchecked(w))
    }

    fn phi_unchecked(&mut self, w: &[u32]) -> Rat {
        if w.is_empty() {
            return Rat::one();
        }
        if let Some(v) = self.memo.get(w) {
            return v.clone();
        }
        let n = w.len();
        let mut total = Rat::zero();
        let mut block = Vec::with_capacity(n);
        // Sum over the block S containing the first position; the gaps
        // between consecutive elements of S are independent subwords.
        for mask in 0u32..(1u32 << (n - 1)) {
            block.clear();
            block.push(w[0]);
            let mut positions = vec![0usize];
            for (t, &x) in w.iter().enumerate().skip(1) {
                if mask >> (t - 1) & 1 == 1 {
                    block.push(x);
                    positions.push(t);
                }
            }
            let Some(k) = self.model.cumulants.get(&block).cloned() else {
                continue;
            };
            let mut term = k;
            positions.push(n);
            for pair in positions.windows(2) {
                let gap = &w[pair[0] + 1..pair[1]];
                if gap.is_empty() {
                    continue;
                }
                let m = self.phi_unchecked(gap);
                if m.is_zero() {
                    term = Rat::zero();
                    break;
                }
                term *= m;
            }
            total += term;
        }
        self.memo.insert(w.to_vec(), total.clone());
        total
    }

    pub fn phi_poly(&mut self, p: &NcPolynomial) -> Result<Rat> {
        let mut total = Rat::zero();
        for (w, c) in &p.terms {
            total += c * self.phi(w)?;
        }
        Ok(total)
    }

    /// `φ_π(p_1, ..., p_n)`: product over blocks of `φ` of the block product.
    pub fn phi_partition(&mut self, args: &[NcPolynomial], p: &Partition) -> Result<Rat> {
        let mut acc = Rat::one();
        for block in p.blocks() {
            let mut prod = NcPolynomial::one();
            for &k in block {
                prod = prod.mul(&args[k - 1]);
            }
            let v = self.phi_poly(&prod)?;
            if v.is_zero() {
                return Ok(v);
            }
            acc *= v;
        }
        Ok(acc)
    }

    /// `k_n(p_1, ..., p_n)` for arbitrary polynomial arguments by Moebius
    /// inversion over `NC(n)`: `Σ_π φ_π · Π_{V ∈ Kr(π)} Möb(|V|)`.
    pub fn cumulant_of(&mut self, args: &[NcPolynomial]) -> Result<Rat> {
        let n = args.len();
        if n == 0 {
            return Err(Error::EmptyWord);
        }
        let mut total = Rat::zero();
        for (p, kp) in ncpartition::nc_with_kreweras(n) {
            let phi = self.phi_partition(args, p)?;
            if phi.is_zero() {
                continue;
            }
            let mut mu = Rat::one();
            for b in kp.blocks() {
                mu *= rational::moebius_coefficient(b.len());
            }
            total += phi * mu;
        }
        Ok(total)
    }
}

/// A noncommutative polynomial in the generators. The empty word is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NcPolynomial {
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl NcPolynomial {
    pub fn zero() -> Self {
        NcPolynomial::default()
    }

    pub fn one() -> Self {
        NcPolynomial::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        NcPolynomial::monomial(Vec::new(), c)
    }

    pub fn generator(g: u32) -> Self {
        NcPolynomial::monomial(vec![g], Rat::one())
    }

    pub fn monomial(w: Vec<u32>, c: Rat) -> Self {
        let mut p = NcPolynomial::zero();
        if !c.is_zero() {
            p.terms.insert(w, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, Rat)>>(terms: I) -> Self {
        let mut p = NcPolynomial::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    fn add_term(&mut self, w: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rat)> {
        self.terms.iter().map(|(w, c)| (w.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximal word length; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).max()
    }

    pub fn constant_term(&self) -> Rat {
        self.terms
            .get(&Vec::new())
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.degree().is_none_or(|d| d == 0)
    }

    /// `Some((c, g))` when the polynomial is exactly `c · g`.
    pub fn as_scaled_generator(&self) -> Option<(Rat, u32)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (w, c) = self.terms.iter().next().unwrap();
        (w.len() == 1).then(|| (c.clone(), w[0]))
    }

    pub fn is_affine(&self) -> bool {
        self.degree().is_none_or(|d| d <= 1)
    }

    pub fn add(&self, other: &NcPolynomial) -> NcPolynomial {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NcPolynomial) -> NcPolynomial {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> NcPolynomial {
        if c.is_zero() {
            return NcPolynomial::zero();
        }
        NcPolynomial {
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &NcPolynomial) -> NcPolynomial {
        let mut out = NcPolynomial::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for NcPolynomial {
    /// `c*g1.g2 + ...`, with `1` for the unit word and `0` for zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (t, (w, c)) in self.terms.iter().enumerate() {
            if t > 0 {
                f.write_str(" + ")?;
            }
            let mono = if w.is_empty() {
                "1".to_string()
            } else {
                w.iter()
                    .map(|g| format!("g{g}"))
                    .collect::<Vec<_>>()
                    .join(".")
            };
            write!(f, "{}*{mono}", rational::format_rat(c))?;
        }
        Ok(())
    }
}

/// Moment series of `elements` up to `order`: coefficient at `(r_1..r_n)` is
/// `φ(a_{r_1} ... a_{r_n})`. A product whose degree exceeds the model order
/// is an error.
pub fn moment_series(
    model: &CumulantModel,
    elements: &[NcPolynomial],
    order: usize,
) -> Result<Series> {
    let s = elements.len();
    if s == 0 {
        return Err(Error::InvalidConfig("no elements".into()));
    }
    let mut cache = MomentCache::new(model);
    let mut out = Series::zero(s, order);
    for n in 1..=order {
        for w in series::all_words(s, n) {
            let mut prod = NcPolynomial::one();
            for &r in &w {
                prod = prod.mul(&elements[r as usize - 1]);
            }
            let degree = prod.degree().unwrap_or(0);
            if degree > model.order() {
                return Err(Error::DegreeOverflow {
                    degree,
                    order: model.order(),
                });
            }
            out.set(&w, cache.phi_poly(&prod)?)?;
        }
    }
    Ok(out)
}

/// `R = M ⊛ Möb`.
pub fn r_transform(moments: &Series) -> Result<Series> {
    moments.boxed_convolve(&series::moebius(moments.alphabet(), moments.order()))
}

/// `M = R ⊛ Zeta`.
pub fn m_from_r(r: &Series) -> Result<Series> {
    r.boxed_convolve(&series::zeta(r.alphabet(), r.order()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessReport {
    pub free: bool,
    /// First word (length, then lexicographic) mixing two families with a
    /// nonzero coefficient.
    pub witness: Option<(Word, Rat)>,
}

/// Freeness of the families given by the blocks of `grouping` (a partition
/// of the alphabet): every mixed coefficient of `r` must vanish.
pub fn check_free(r: &Series, grouping: &Partition) -> Result<FreenessReport> {
    if grouping.n() != r.alphabet() {
        return Err(Error::SizeMismatch {
            left: grouping.n(),
            right: r.alphabet(),
        });
    }
    let labels = grouping.labels();
    let witness = r.terms().into_iter().find(|(w, _)| {
        let first = labels[w.letters()[0] as usize - 1];
        w.letters().iter().any(|&l| labels[l as usize - 1] != first)
    });
    Ok(FreenessReport {
        free: witness.is_none(),
        witness,
    })
}

/// `k_{n-1}(x_1, ..., x_{m-1}, x_m x_{m+1}, x_{m+2}, ..., x_n)` for single
/// generators `x`, expressed through cumulants of the `x_i` alone: only the
/// partitions joining `m` and `m+1` into a connected whole contribute, namely
/// `1_n` and the two-block partitions separating `m` from `m+1`.
pub fn product_cumulant(model: &CumulantModel, x: &[u32], m: usize) -> Result<Rat> {
    let n = x.len();
    if m == 0 || m >= n {
        return Err(Error::IndexOutOfRange {
            index: m,
            max: n.saturating_sub(1),
        });
    }
    let k = |positions: Vec<usize>| -> Result<Rat> {
        let w: Vec<u32> = positions.iter().map(|&p| x[p - 1]).collect();
        model.cumulant(&w)
    };
    let mut total = k((1..=n).collect())?;
    total += k((1..=m).collect())? * k((m + 1..=n).collect())?;
    for j in 2..=m {
        let inner = k((j..=m).collect())?;
        if inner.is_zero() {
            continue;
        }
        let outer = k((1..j).chain(m + 1..=n).collect())?;
        total += inner * outer;
    }
    for j in m + 1..n {
        let inner = k((m + 1..=j).collect())?;
        if inner.is_zero() {
            continue;
        }
        let outer = k((1..=m).chain(j + 1..=n).collect())?;
        total += inner * outer;
    }
    Ok(total)
}
