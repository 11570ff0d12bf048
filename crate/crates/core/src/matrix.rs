//! `d x d` matrices with rational entries and with polynomial entries.
//!
//! Indices are 1-based, matching matrix units `V_{i,j}`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::freeprob::NcPolynomial;
use crate::rational::{self, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScalarMatrix {
    d: usize,
    entries: Vec<Rat>,
}

impl ScalarMatrix {
    pub fn zero(d: usize) -> Self {
        ScalarMatrix {
            d,
            entries: vec![Rat::zero(); d * d],
        }
    }

    pub fn identity(d: usize) -> Self {
        ScalarMatrix::diag(&vec![Rat::one(); d])
    }

    /// The matrix unit `V_{i,j}`.
    pub fn unit(d: usize, i: usize, j: usize) -> Self {
        let mut m = ScalarMatrix::zero(d);
        m.set(i, j, Rat::one());
        m
    }

    pub fn diag(values: &[Rat]) -> Self {
        let mut m = ScalarMatrix::zero(values.len());
        for (i, v) in values.iter().enumerate() {
            m.set(i + 1, i + 1, v.clone());
        }
        m
    }

    pub fn from_fn(d: usize, f: impl Fn(usize, usize) -> Rat) -> Self {
        let mut m = ScalarMatrix::zero(d);
        for i in 1..=d {
            for j in 1..=d {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[(i - 1) * self.d + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.entries[(i - 1) * self.d + (j - 1)] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (1..=self.d).all(|i| (1..=self.d).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Keeps the diagonal, zeroes the rest.
    pub fn diagonal_part(&self) -> ScalarMatrix {
        ScalarMatrix::from_fn(self.d, |i, j| {
            if i == j {
                self.get(i, j).clone()
            } else {
                Rat::zero()
            }
        })
    }

    pub fn trace(&self) -> Rat {
        (1..=self.d).map(|i| self.get(i, i).clone()).sum()
    }

    fn check(&self, other: &ScalarMatrix) -> Result<()> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch {
                left: self.d,
                right: other.d,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &ScalarMatrix) -> Result<ScalarMatrix> {
        self.check(other)?;
        Ok(ScalarMatrix {
            d: self.d,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &ScalarMatrix) -> Result<ScalarMatrix> {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> ScalarMatrix {
        ScalarMatrix {
            d: self.d,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &ScalarMatrix) -> Result<ScalarMatrix> {
        self.check(other)?;
        let d = self.d;
        let mut out = ScalarMatrix::zero(d);
        for i in 1..=d {
            for k in 1..=d {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 1..=d {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[(i - 1) * d + (j - 1)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row-major TSV, one row per line.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for i in 1..=self.d {
            let row: Vec<String> = (1..=self.d)
                .map(|j| rational::format_rat(self.get(i, j)))
                .collect();
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for ScalarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (1..=self.d)
            .map(|i| {
                (1..=self.d)
                    .map(|j| rational::format_rat(self.get(i, j)))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// A `d x d` grid of noncommutative polynomials. The model the generators
/// live in is passed separately to whatever evaluates expectations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OperatorMatrix {
    d: usize,
    entries: Vec<NcPolynomial>,
}

impl OperatorMatrix {
    pub fn zero(d: usize) -> Self {
        OperatorMatrix {
            d,
            entries: vec![NcPolynomial::zero(); d * d],
        }
    }

    pub fn identity(d: usize) -> Self {
        OperatorMatrix::from_scalar(&ScalarMatrix::identity(d))
    }

    pub fn from_scalar(m: &ScalarMatrix) -> Self {
        OperatorMatrix::from_fn(m.dim(), |i, j| NcPolynomial::constant(m.get(i, j).clone()))
    }

    pub fn from_fn(d: usize, f: impl Fn(usize, usize) -> NcPolynomial) -> Self {
        let mut entries = Vec::with_capacity(d * d);
        for i in 1..=d {
            for j in 1..=d {
                entries.push(f(i, j));
            }
        }
        OperatorMatrix { d, entries }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn get(&self, i: usize, j: usize) -> &NcPolynomial {
        &self.entries[(i - 1) * self.d + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, p: NcPolynomial) {
        self.entries[(i - 1) * self.d + (j - 1)] = p;
    }

    /// Largest entry degree; 0 for constant matrices.
    pub fn degree(&self) -> usize {
        self.entries
            .iter()
            .filter_map(NcPolynomial::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn is_scalar(&self) -> bool {
        self.entries.iter().all(NcPolynomial::is_constant)
    }

    fn check(&self, other: &OperatorMatrix) -> Result<()> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch {
                left: self.d,
                right: other.d,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.check(other)?;
        Ok(OperatorMatrix {
            d: self.d,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> OperatorMatrix {
        OperatorMatrix {
            d: self.d,
            entries: self.entries.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn mul(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.check(other)?;
        let d = self.d;
        let mut out = OperatorMatrix::zero(d);
        for i in 1..=d {
            for k in 1..=d {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 1..=d {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = (i - 1) * d + (j - 1);
                        out.entries[idx] = out.entries[idx].add(&a.mul(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_scalar_left(&self, b: &ScalarMatrix) -> Result<OperatorMatrix> {
        OperatorMatrix::from_scalar(b).mul(self)
    }

    pub fn mul_scalar_right(&self, b: &ScalarMatrix) -> Result<OperatorMatrix> {
        self.mul(&OperatorMatrix::from_scalar(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn matrix_units_multiply() {
        let v12 = ScalarMatrix::unit(2, 1, 2);
        let v21 = ScalarMatrix::unit(2, 2, 1);
        assert_eq!(v12.mul(&v21).unwrap(), ScalarMatrix::unit(2, 1, 1));
        assert!(v12.mul(&v12).unwrap().is_zero());
        assert_eq!(ScalarMatrix::identity(3).trace(), int(3));
        assert!(v12.mul(&ScalarMatrix::identity(3)).is_err());
    }

    #[test]
    fn diagonal_part_and_tsv() {
        let m = ScalarMatrix::from_fn(2, |i, j| int((10 * i + j) as i64));
        assert_eq!(m.diagonal_part(), ScalarMatrix::diag(&[int(11), int(22)]));
        assert_eq!(m.to_tsv(), "11/1\t12/1\n21/1\t22/1\n");
        assert!(!m.is_diagonal());
    }

    #[test]
    fn operator_products_respect_order() {
        let a =
            OperatorMatrix::from_fn(2, |i, j| NcPolynomial::generator((2 * (i - 1) + j) as u32));
        let sq = a.mul(&a).unwrap();
        let want = NcPolynomial::monomial(vec![1, 1], int(1))
            .add(&NcPolynomial::monomial(vec![2, 3], int(1)));
        assert_eq!(sq.get(1, 1), &want);
        assert_eq!(sq.degree(), 2);
        let p = a.mul_scalar_right(&ScalarMatrix::unit(2, 1, 1)).unwrap();
        assert!(p.get(1, 2).is_zero());
        assert_eq!(p.get(2, 1), &NcPolynomial::generator(3));
        assert!(OperatorMatrix::identity(2).is_scalar());
    }
}
