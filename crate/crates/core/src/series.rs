//! Truncated noncommutative power series without constant term.
//!
//! A [`Series`] over an alphabet of size `s` stores the nonzero coefficients
//! of words `z_{r_1} ... z_{r_n}` with `1 <= n <= order`. Letters are 1-based.
//! Series over a pair alphabet of size `s*d` encode the letter `(r, i)` as
//! `(r - 1) * d + i`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ncpartition::{self, Partition};
use crate::rational::{self, Rat};

/// Index word ordered by length, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        compare_words(&self.0, &other.0)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_letters(&self.0))
    }
}

pub fn compare_words(a: &[u32], b: &[u32]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

pub fn join_letters(w: &[u32]) -> String {
    w.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

/// `(r, i)` for a pair letter over index size `d`.
pub fn split_pair(letter: u32, d: usize) -> (u32, u32) {
    let d = d as u32;
    ((letter - 1) / d + 1, (letter - 1) % d + 1)
}

pub fn pair_letter(r: u32, i: u32, d: usize) -> u32 {
    (r - 1) * d as u32 + i
}

/// Every word of length `n` over `1..=s`, in lexicographic order.
pub fn all_words(s: usize, n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * s);
        for w in &out {
            for r in 1..=s as u32 {
                let mut v = w.clone();
                v.push(r);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    alphabet: usize,
    order: usize,
    coeffs: HashMap<Vec<u32>, Rat>,
}

impl Series {
    pub fn zero(alphabet: usize, order: usize) -> Self {
        assert!(alphabet >= 1 && order >= 1);
        Series {
            alphabet,
            order,
            coeffs: HashMap::new(),
        }
    }

    pub fn from_terms<I>(alphabet: usize, order: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rat)>,
    {
        let mut f = Series::zero(alphabet, order);
        for (w, c) in terms {
            f.add_to(&w, &c)?;
        }
        Ok(f)
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    fn check_word(&self, w: &[u32]) -> Result<()> {
        if w.is_empty() {
            return Err(Error::EmptyWord);
        }
        if w.len() > self.order {
            return Err(Error::WordTooLong {
                len: w.len(),
                order: self.order,
            });
        }
        if let Some(&letter) = w.iter().find(|&&r| r == 0 || r as usize > self.alphabet) {
            return Err(Error::LetterOutOfRange {
                letter,
                alphabet: self.alphabet,
            });
        }
        Ok(())
    }

    pub fn coef(&self, w: &[u32]) -> Result<Rat> {
        self.check_word(w)?;
        Ok(self.get(w).cloned().unwrap_or_else(Rat::zero))
    }

    // Unchecked lookup for hot loops.
    pub(crate) fn get(&self, w: &[u32]) -> Option<&Rat> {
        self.coeffs.get(w)
    }

    pub fn set(&mut self, w: &[u32], value: Rat) -> Result<()> {
        self.check_word(w)?;
        if value.is_zero() {
            self.coeffs.remove(w);
        } else {
            self.coeffs.insert(w.to_vec(), value);
        }
        Ok(())
    }

    pub fn add_to(&mut self, w: &[u32], value: &Rat) -> Result<()> {
        self.check_word(w)?;
        accumulate(&mut self.coeffs, w, value);
        Ok(())
    }

    /// Nonzero terms sorted by length, then lexicographically.
    pub fn terms(&self) -> Vec<(Word, Rat)> {
        let mut out: Vec<(Word, Rat)> = self
            .coeffs
            .iter()
            .map(|(w, c)| (Word(w.clone()), c.clone()))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[u32], &Rat)> {
        self.coeffs.iter().map(|(w, c)| (w.as_slice(), c))
    }

    /// Product of `coef(f, w|B)` over the blocks `B` of `p`.
    pub fn gen_coef(&self, w: &[u32], p: &Partition) -> Result<Rat> {
        if w.len() != p.n() {
            return Err(Error::SizeMismatch {
                left: w.len(),
                right: p.n(),
            });
        }
        self.check_word(w)?;
        Ok(self.gen_coef_unchecked(w, p))
    }

    pub(crate) fn gen_coef_unchecked(&self, w: &[u32], p: &Partition) -> Rat {
        let mut buf = Vec::with_capacity(w.len());
        let mut acc = Rat::one();
        for block in p.blocks() {
            buf.clear();
            buf.extend(block.iter().map(|&k| w[k - 1]));
            match self.coeffs.get(buf.as_slice()) {
                Some(c) => acc *= c,
                None => return Rat::zero(),
            }
        }
        acc
    }

    fn same_shape(&self, other: &Series) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet,
                right: other.alphabet,
            });
        }
        self.same_order(other)
    }

    fn same_order(&self, other: &Series) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (w, c) in &other.coeffs {
            accumulate(&mut out.coeffs, w, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, alpha: &Rat) -> Series {
        self.map_coeffs(|_, c| c * alpha)
    }

    /// `f(alpha z_1, ..., alpha z_s)`.
    pub fn dilate(&self, alpha: &Rat) -> Series {
        let powers: Vec<Rat> = (0..=self.order).map(|n| rational::pow(alpha, n)).collect();
        self.map_coeffs(|w, c| c * &powers[w.len()])
    }

    fn map_coeffs(&self, f: impl Fn(&[u32], &Rat) -> Rat) -> Series {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(w, c)| (w.clone(), f(w, c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Series {
            alphabet: self.alphabet,
            order: self.order,
            coeffs,
        }
    }

    /// Re-truncates to a smaller order.
    pub fn truncate(&self, order: usize) -> Series {
        assert!(order >= 1);
        Series {
            alphabet: self.alphabet,
            order,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(w, _)| w.len() <= order)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Applies a letter map, summing coefficients that collide.
    pub fn substitute(&self, alphabet: usize, map: impl Fn(u32) -> u32) -> Series {
        let mut out = Series::zero(alphabet, self.order);
        let mut buf = Vec::new();
        for (w, c) in &self.coeffs {
            buf.clear();
            buf.extend(w.iter().map(|&r| map(r)));
            accumulate(&mut out.coeffs, &buf, c);
        }
        out
    }

    /// `f ⊛ g`: coefficient at `w` is `Σ_π [w; π](f) · [w; Kr(π)](g)`.
    pub fn boxed_convolve(&self, g: &Series) -> Result<Series> {
        self.same_shape(g)?;
        // Σ over (π, Kr π) can be driven from either side; pick the sparser.
        if g.coeffs.len() < self.coeffs.len() {
            Ok(convolve_core(g, self.alphabet, true, |w, _| {
                self.coeffs.get(w)
            }))
        } else {
            Ok(convolve_core(self, self.alphabet, false, |w, _| {
                g.coeffs.get(w)
            }))
        }
    }

    /// `f ⊛̃ g` for `f` over the pair alphabet `s*d` and `g` over `d`:
    /// `g` sees only the index components of the pair letters.
    pub fn ext_boxed_convolve(&self, g: &Series) -> Result<Series> {
        self.same_order(g)?;
        let d = g.alphabet;
        if !self.alphabet.is_multiple_of(d) {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet,
                right: d,
            });
        }
        Ok(convolve_core(self, self.alphabet, false, |w, buf| {
            buf.clear();
            buf.extend(w.iter().map(|&letter| split_pair(letter, d).1));
            g.coeffs.get(buf.as_slice())
        }))
    }

    /// The inverse under `⊛`, solved length by length.
    pub fn boxed_inverse(&self) -> Result<Series> {
        let s = self.alphabet;
        let mut inv_first = Vec::with_capacity(s);
        for r in 1..=s as u32 {
            match self.coeffs.get([r].as_slice()) {
                Some(c) => inv_first.push(c.recip()),
                None => return Err(Error::NotInvertible(r)),
            }
        }
        let mut g = Series::zero(s, self.order);
        for (r, c) in inv_first.iter().enumerate() {
            g.coeffs.insert(vec![r as u32 + 1], c.clone());
        }
        for n in 2..=self.order {
            let pairs = ncpartition::nc_with_kreweras(n);
            let mut fresh = Vec::new();
            for w in all_words(s, n) {
                // π = 0_n pairs with Kr(π) = 1_n, the unknown coefficient.
                let mut rest = Rat::zero();
                for (p, kp) in pairs {
                    if p.block_count() == n {
                        continue;
                    }
                    let fp = self.gen_coef_unchecked(&w, p);
                    if fp.is_zero() {
                        continue;
                    }
                    rest += fp * g.gen_coef_unchecked(&w, kp);
                }
                if rest.is_zero() {
                    continue;
                }
                let mut denom_inv = Rat::one();
                for &r in &w {
                    denom_inv *= &inv_first[r as usize - 1];
                }
                fresh.push((w, -rest * denom_inv));
            }
            for (w, c) in fresh {
                g.coeffs.insert(w, c);
            }
        }
        Ok(g)
    }

    /// One line per nonzero coefficient: `r1,...,rn<TAB>p/q`.
    pub fn to_tsv(&self) -> String {
        self.terms()
            .iter()
            .map(|(w, c)| format!("{w}\t{}\n", rational::format_rat(c)))
            .collect()
    }

    /// Like [`Series::to_tsv`] but prints pair letters as `r:i`.
    pub fn to_tsv_pairs(&self, d: usize) -> String {
        self.terms()
            .iter()
            .map(|(w, c)| {
                let letters: Vec<String> = w
                    .letters()
                    .iter()
                    .map(|&l| {
                        let (r, i) = split_pair(l, d);
                        format!("{r}:{i}")
                    })
                    .collect();
                format!("{}\t{}\n", letters.join(","), rational::format_rat(c))
            })
            .collect()
    }
}

fn accumulate(map: &mut HashMap<Vec<u32>, Rat>, w: &[u32], value: &Rat) {
    if value.is_zero() {
        return;
    }
    if let Some(c) = map.get_mut(w) {
        *c += value;
        if c.is_zero() {
            map.remove(w);
        }
    } else {
        map.insert(w.to_vec(), value.clone());
    }
}

// Drives Σ_π driver_π(w) · other_σ(w) where σ is Kr(π) (or π itself when
// `swap`, i.e. the driver sits on the Kreweras side). Words are built by
// assigning support words of the driver to its blocks, so only words with a
// nonzero driver contribution are ever visited. `other` receives the block
// restriction of `w` and a scratch buffer.
fn convolve_core<'a>(
    driver: &Series,
    alphabet: usize,
    swap: bool,
    other: impl Fn(&[u32], &mut Vec<u32>) -> Option<&'a Rat>,
) -> Series {
    let mut by_len: Vec<Vec<(&[u32], &Rat)>> = vec![Vec::new(); driver.order + 1];
    for (w, c) in &driver.coeffs {
        by_len[w.len()].push((w.as_slice(), c));
    }
    for bucket in &mut by_len {
        bucket.sort_by(|a, b| a.0.cmp(b.0));
    }
    let mut out: HashMap<Vec<u32>, Rat> = HashMap::new();
    let mut block_buf = Vec::new();
    let mut scratch = Vec::new();
    for n in 1..=driver.order {
        for (p, kp) in ncpartition::nc_with_kreweras(n) {
            let (drive, rest) = if swap { (kp, p) } else { (p, kp) };
            let blocks = drive.blocks();
            if blocks.iter().any(|b| by_len[b.len()].is_empty()) {
                continue;
            }
            let mut w = vec![0u32; n];
            let mut choice = vec![0usize; blocks.len()];
            // Odometer over one support word per block.
            'outer: loop {
                let mut coef = Rat::one();
                for (b, block) in blocks.iter().enumerate() {
                    let (word, c) = by_len[block.len()][choice[b]];
                    for (t, &k) in block.iter().enumerate() {
                        w[k - 1] = word[t];
                    }
                    coef *= c;
                }
                let mut term = Some(coef);
                for block in rest.blocks() {
                    block_buf.clear();
                    block_buf.extend(block.iter().map(|&k| w[k - 1]));
                    match other(&block_buf, &mut scratch) {
                        Some(c) => {
                            if let Some(t) = term.as_mut() {
                                *t *= c;
                            }
                        }
                        None => {
                            term = None;
                            break;
                        }
                    }
                }
                if let Some(t) = term {
                    accumulate(&mut out, &w, &t);
                }
                let mut b = 0;
                loop {
                    if b == blocks.len() {
                        break 'outer;
                    }
                    choice[b] += 1;
                    if choice[b] < by_len[blocks[b].len()].len() {
                        break;
                    }
                    choice[b] = 0;
                    b += 1;
                }
            }
        }
    }
    Series {
        alphabet,
        order: driver.order,
        coeffs: out,
    }
}

fn dense(s: usize, order: usize, coef: impl Fn(&[u32]) -> Rat) -> Series {
    let mut f = Series::zero(s, order);
    for n in 1..=order {
        for w in all_words(s, n) {
            let c = coef(&w);
            if !c.is_zero() {
                f.coeffs.insert(w, c);
            }
        }
    }
    f
}

/// Every coefficient equal to 1.
pub fn zeta(s: usize, order: usize) -> Series {
    dense(s, order, |_| Rat::one())
}

/// The `⊛`-inverse of [`zeta`]: `(-1)^(n+1) Catalan(n-1)` on length-`n` words.
pub fn moebius(s: usize, order: usize) -> Series {
    let by_len: Vec<Rat> = (0..=order)
        .map(|n| {
            if n == 0 {
                Rat::zero()
            } else {
                rational::moebius_coefficient(n)
            }
        })
        .collect();
    dense(s, order, |w| by_len[w.len()].clone())
}

/// The unit of `⊛`: `z_1 + ... + z_s`.
pub fn delta(s: usize, order: usize) -> Series {
    let mut f = Series::zero(s, order);
    for r in 1..=s as u32 {
        f.coeffs.insert(vec![r], Rat::one());
    }
    f
}

/// `Σ_i Σ_n z_i^n`: 1 on constant words, 0 elsewhere.
pub fn geometric(d: usize, order: usize) -> Series {
    let mut f = Series::zero(d, order);
    for i in 1..=d as u32 {
        for n in 1..=order {
            f.coeffs.insert(vec![i; n], Rat::one());
        }
    }
    f
}

/// `G_d ⊛ (d · Möb_d ∘ D_{1/d})`.
pub fn h_series(d: usize, order: usize) -> Series {
    let d_rat = rational::int(d as i64);
    let right = moebius(d, order).dilate(&d_rat.recip()).scale(&d_rat);
    geometric(d, order)
        .boxed_convolve(&right)
        .expect("operands share alphabet and order")
}
