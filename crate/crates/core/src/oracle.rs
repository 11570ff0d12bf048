//! Brute-force reference implementations.
//!
//! Nothing here calls the fast paths of [`crate::ncpartition`] or the
//! convolution code of [`crate::series`]; partitions are generated from all
//! set partitions and tested for crossings pair by pair.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::freeprob::NcPolynomial;
use crate::ncpartition::Partition;
use crate::rational::{self, Rat};
use crate::rcyclic::MatrixFamily;
use crate::series::{self, Series};

pub const MAX_SET_PARTITION_N: usize = 9;
pub const MAX_INVERSION_ORDER: usize = 6;

/// One oracle-versus-engine comparison; `pass` iff the texts agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub name: String,
    pub inputs: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl OracleReport {
    pub fn compare(
        name: impl Into<String>,
        inputs: impl Into<String>,
        expected: impl fmt::Display,
        actual: impl fmt::Display,
    ) -> Self {
        let expected = expected.to_string();
        let actual = actual.to_string();
        OracleReport {
            name: name.into(),
            inputs: inputs.into(),
            pass: expected == actual,
            expected,
            actual,
        }
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}",
            self.name,
            self.inputs,
            self.expected,
            self.actual,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

/// Single-line canonical text of a series: `w=c` terms in word order.
pub fn series_text(f: &Series) -> String {
    let terms = f.terms();
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .iter()
        .map(|(w, c)| {
            format!(
                "{}={}",
                series::join_letters(w.letters()),
                rational::format_rat(c)
            )
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Every set partition of `{1..n}`, via restricted growth strings.
pub fn all_set_partitions(n: usize) -> Result<Vec<Partition>> {
    if n > MAX_SET_PARTITION_N {
        return Err(Error::SizeOutOfRange {
            n,
            max: MAX_SET_PARTITION_N,
        });
    }
    let mut out = Vec::new();
    if n == 0 {
        return Ok(out);
    }
    let mut rgs = vec![0usize; n];
    loop {
        let count = rgs.iter().max().unwrap() + 1;
        let mut blocks = vec![Vec::new(); count];
        for (k, &b) in rgs.iter().enumerate() {
            blocks[b].push(k + 1);
        }
        out.push(Partition::new(n, blocks)?);
        // next restricted growth string
        let mut k = n - 1;
        loop {
            if k == 0 {
                return Ok(out);
            }
            let bound = rgs[..k].iter().max().unwrap() + 1;
            if rgs[k] < bound {
                rgs[k] += 1;
                for x in &mut rgs[k + 1..] {
                    *x = 0;
                }
                break;
            }
            k -= 1;
        }
    }
}

/// Crossing test straight from the definition: `a < b < c < e` with
/// `a, c` in one block and `b, e` in another.
pub fn naive_is_noncrossing(p: &Partition) -> bool {
    let label = p.labels();
    let n = p.n();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for e in c + 1..n {
                    if label[a] == label[c] && label[b] == label[e] && label[a] != label[b] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn naive_nc(n: usize) -> Result<Vec<Partition>> {
    Ok(all_set_partitions(n)?
        .into_iter()
        .filter(naive_is_noncrossing)
        .collect())
}

fn naive_perm(p: &Partition) -> Vec<usize> {
    // perm[k-1] = next element of k's block, cyclically
    let mut perm = vec![0; p.n()];
    for b in p.blocks() {
        for (t, &k) in b.iter().enumerate() {
            perm[k - 1] = b[(t + 1) % b.len()];
        }
    }
    perm
}

/// The unique `q` in NC(n) with `perm_p ∘ perm_q = γ_n`, found by trying
/// every candidate.
pub fn kreweras_by_search(p: &Partition) -> Result<Partition> {
    let n = p.n();
    if n > MAX_SET_PARTITION_N - 1 {
        return Err(Error::SizeOutOfRange {
            n,
            max: MAX_SET_PARTITION_N - 1,
        });
    }
    if !naive_is_noncrossing(p) {
        return Err(Error::Crossing(p.to_string()));
    }
    let pp = naive_perm(p);
    let mut found = Vec::new();
    for q in naive_nc(n)? {
        let pq = naive_perm(&q);
        if (1..=n).all(|k| pp[pq[k - 1] - 1] == k % n + 1) {
            found.push(q);
        }
    }
    assert_eq!(found.len(), 1, "Kreweras complement of {p} not unique");
    Ok(found.pop().unwrap())
}

fn restrict(w: &[u32], block: &[usize]) -> Vec<u32> {
    block.iter().map(|&k| w[k - 1]).collect()
}

/// Recovers cumulants from moments by solving the moment-cumulant relation
/// one length at a time: `k(w) = m(w) - Σ_{π ≠ 1_n} Π_B k(w|B)`.
pub fn cumulants_by_inversion(moments: &Series) -> Result<Series> {
    let order = moments.order();
    if order > MAX_INVERSION_ORDER {
        return Err(Error::SizeOutOfRange {
            n: order,
            max: MAX_INVERSION_ORDER,
        });
    }
    let s = moments.alphabet();
    let mut k = Series::zero(s, order);
    for n in 1..=order {
        let parts: Vec<Partition> = naive_nc(n)?
            .into_iter()
            .filter(|p| p.block_count() > 1)
            .collect();
        for w in series::all_words(s, n) {
            let mut value = moments.coef(&w)?;
            for p in &parts {
                let mut prod = Rat::one();
                for b in p.blocks() {
                    prod *= k.coef(&restrict(&w, b))?;
                    if prod.is_zero() {
                        break;
                    }
                }
                value -= prod;
            }
            k.set(&w, value)?;
        }
    }
    Ok(k)
}

/// `φ(x_{w_1} ... x_{w_n})` as the plain sum over NC(n) of cumulant products.
pub fn naive_phi(cumulants: &Series, w: &[u32]) -> Result<Rat> {
    if w.is_empty() {
        return Ok(Rat::one());
    }
    let mut total = Rat::zero();
    for p in naive_nc(w.len())? {
        let mut prod = Rat::one();
        for b in p.blocks() {
            prod *= cumulants.coef(&restrict(w, b))?;
            if prod.is_zero() {
                break;
            }
        }
        total += prod;
    }
    Ok(total)
}

pub fn naive_moment_series(cumulants: &Series) -> Result<Series> {
    let mut m = Series::zero(cumulants.alphabet(), cumulants.order());
    for n in 1..=cumulants.order() {
        for w in series::all_words(cumulants.alphabet(), n) {
            m.set(&w, naive_phi(cumulants, &w)?)?;
        }
    }
    Ok(m)
}

struct NaiveState<'a> {
    cumulants: &'a Series,
    memo: HashMap<Vec<u32>, Rat>,
}

impl NaiveState<'_> {
    fn phi_poly(&mut self, p: &NcPolynomial) -> Result<Rat> {
        let mut total = Rat::zero();
        for (w, c) in p.terms() {
            let v = match self.memo.get(w) {
                Some(v) => v.clone(),
                None => {
                    let v = naive_phi(self.cumulants, w)?;
                    self.memo.insert(w.to_vec(), v.clone());
                    v
                }
            };
            total += c * v;
        }
        Ok(total)
    }
}

/// Moment series of the matrices of `fam` in `(M_d(A), φ_d)`, obtained by
/// multiplying the matrices out and averaging `φ` over the diagonal.
pub fn brute_force_family_moments(fam: &MatrixFamily, order: usize) -> Result<Series> {
    let model = fam.model();
    if order > model.order() {
        return Err(Error::DegreeOverflow {
            degree: order,
            order: model.order(),
        });
    }
    let d = fam.d();
    let s = fam.s();
    let mut state = NaiveState {
        cumulants: model.cumulants(),
        memo: HashMap::new(),
    };
    let inv_d = rational::rat(1, d as i64);
    let mut out = Series::zero(s, order);
    for n in 1..=order {
        for rword in series::all_words(s, n) {
            let mut prod = fam.matrices()[rword[0] as usize - 1].clone();
            for &r in &rword[1..] {
                let m = &fam.matrices()[r as usize - 1];
                let mut next = crate::matrix::OperatorMatrix::zero(d);
                for i in 1..=d {
                    for j in 1..=d {
                        let mut e = NcPolynomial::zero();
                        for t in 1..=d {
                            e = e.add(&prod.get(i, t).mul(m.get(t, j)));
                        }
                        next.set(i, j, e);
                    }
                }
                prod = next;
            }
            let mut total = Rat::zero();
            for i in 1..=d {
                total += state.phi_poly(prod.get(i, i))?;
            }
            out.set(&rword, total * &inv_d)?;
        }
    }
    Ok(out)
}

/// `k_π` of the listed generators, read off the cumulant table.
pub fn naive_partition_cumulant(cumulants: &Series, w: &[u32], p: &Partition) -> Result<Rat> {
    let mut prod = Rat::one();
    for b in p.blocks() {
        prod *= cumulants.coef(&restrict(w, b))?;
    }
    Ok(prod)
}

/// `k_m(y_1, ..., y_m)` where each `y_t` is the monomial `args[t]`, from
/// `k_m = φ(y_1 ... y_m) - Σ_{π ≠ 1_m} k_π` applied recursively to sublists.
pub fn naive_monomial_cumulant(cumulants: &Series, args: &[Vec<u32>]) -> Result<Rat> {
    let m = args.len();
    let word: Vec<u32> = args.concat();
    let mut value = naive_phi(cumulants, &word)?;
    for p in naive_nc(m)? {
        if p.block_count() == 1 {
            continue;
        }
        let mut prod = Rat::one();
        for b in p.blocks() {
            let sub: Vec<Vec<u32>> = b.iter().map(|&k| args[k - 1].clone()).collect();
            prod *= naive_monomial_cumulant(cumulants, &sub)?;
            if prod.is_zero() {
                break;
            }
        }
        value -= prod;
    }
    Ok(value)
}

/// Joint cumulants of the diagonal matrix units `P_1, ..., P_d` in
/// `(M_d, tr_d)`, by inverting their moments (every moment of a constant
/// word `P_i ... P_i` is `1/d`, every other moment vanishes).
pub fn projection_cumulants(d: usize, order: usize) -> Result<Series> {
    let mut m = Series::zero(d, order);
    for n in 1..=order {
        for i in 1..=d as u32 {
            m.set(&vec![i; n], rational::rat(1, d as i64))?;
        }
    }
    cumulants_by_inversion(&m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn bell_and_catalan_counts() {
        let bell = [1, 2, 5, 15, 52, 203];
        for (n, &b) in (1..=6).zip(&bell) {
            assert_eq!(all_set_partitions(n).unwrap().len(), b);
        }
        assert_eq!(naive_nc(4).unwrap().len(), 14);
        assert!(all_set_partitions(10).is_err());
    }

    #[test]
    fn search_finds_the_complement() {
        let p: Partition = "{1,2,5}{3,4}".parse().unwrap();
        assert_eq!(
            kreweras_by_search(&p).unwrap().to_string(),
            "{1}{2,4}{3}{5}"
        );
        assert_eq!(
            kreweras_by_search(&Partition::one(4)).unwrap(),
            Partition::singletons(4)
        );
    }

    #[test]
    fn semicircular_inversion() {
        let m = Series::from_terms(1, 4, vec![(vec![1, 1], int(1)), (vec![1, 1, 1, 1], int(2))])
            .unwrap();
        let k = cumulants_by_inversion(&m).unwrap();
        assert_eq!(series_text(&k), "1,1=1/1");
        assert!(cumulants_by_inversion(&Series::zero(2, 4))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn report_line() {
        let r = OracleReport::compare("x", "n=1", 1, 2);
        assert!(!r.pass);
        assert_eq!(r.to_string(), "x\tn=1\t1\t2\tFAIL");
    }
}
