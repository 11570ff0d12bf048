//! Non-crossing partitions of `{1,...,n}`.
//!
//! Everything is 1-based. A [`Partition`] is always stored in canonical form:
//! each block ascends and blocks are ordered by their smallest element, so
//! structural equality is set-partition equality.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest `n` accepted by [`enumerate_nc`]. `Catalan(12) = 208012`.
pub const DEFAULT_MAX_N: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Builds a partition of `{1,...,n}` from blocks in any order.
    pub fn new(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPartition("empty ground set".into()));
        }
        let mut seen = vec![false; n + 1];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            block.sort_unstable();
            for &k in block.iter() {
                if k == 0 || k > n {
                    return Err(Error::InvalidPartition(format!(
                        "element {k} outside 1..={n}"
                    )));
                }
                if seen[k] {
                    return Err(Error::InvalidPartition(format!("element {k} repeated")));
                }
                seen[k] = true;
            }
        }
        if let Some(k) = (1..=n).find(|&k| !seen[k]) {
            return Err(Error::InvalidPartition(format!("element {k} missing")));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Partition { n, blocks })
    }

    // Callers guarantee canonical form.
    fn from_canonical(n: usize, blocks: Vec<Vec<usize>>) -> Self {
        debug_assert!(blocks.iter().all(|b| b.windows(2).all(|w| w[0] < w[1])));
        debug_assert!(blocks.windows(2).all(|w| w[0][0] < w[1][0]));
        Partition { n, blocks }
    }

    /// The one-block partition `1_n`.
    pub fn one(n: usize) -> Self {
        assert!(n >= 1);
        Partition::from_canonical(n, vec![(1..=n).collect()])
    }

    /// The all-singletons partition `0_n`.
    pub fn singletons(n: usize) -> Self {
        assert!(n >= 1);
        Partition::from_canonical(n, (1..=n).map(|k| vec![k]).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_one(&self) -> bool {
        self.blocks.len() == 1
    }

    /// `labels[k-1]` is the index of the block containing `k`.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &k in block {
                labels[k - 1] = b;
            }
        }
        labels
    }

    pub fn is_noncrossing(&self) -> bool {
        is_noncrossing(self)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for block in &self.blocks {
            f.write_str("{")?;
            for (t, k) in block.iter().enumerate() {
                if t > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{k}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `{1,2,5}{3,4}`; `n` is the largest element.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidPartition(format!("cannot parse {s:?}"));
        let mut blocks = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest.strip_prefix('{').ok_or_else(bad)?;
            let close = body.find('}').ok_or_else(bad)?;
            let block = body[..close]
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            blocks.push(block);
            rest = body[close + 1..].trim_start();
        }
        let n = blocks.iter().flatten().copied().max().ok_or_else(bad)?;
        Partition::new(n, blocks)
    }
}

/// True iff no `i<j<k<l` has `i,k` in one block and `j,l` in another.
pub fn is_noncrossing(p: &Partition) -> bool {
    let labels = p.labels();
    let last: Vec<usize> = p.blocks.iter().map(|b| *b.last().unwrap()).collect();
    let first: Vec<usize> = p.blocks.iter().map(|b| b[0]).collect();
    let mut open: Vec<usize> = Vec::new();
    for k in 1..=p.n {
        let b = labels[k - 1];
        if first[b] == k {
            if last[b] != k {
                open.push(b);
            }
        } else {
            if open.last() != Some(&b) {
                return false;
            }
            if last[b] == k {
                open.pop();
            }
        }
    }
    true
}

fn require_noncrossing(p: &Partition) -> Result<()> {
    if is_noncrossing(p) {
        Ok(())
    } else {
        Err(Error::Crossing(p.to_string()))
    }
}

/// All of `NC(n)` in lexicographic order of canonical form.
pub fn enumerate_nc(n: usize) -> Result<Vec<Partition>> {
    enumerate_nc_with_max(n, DEFAULT_MAX_N)
}

pub fn enumerate_nc_with_max(n: usize, max_n: usize) -> Result<Vec<Partition>> {
    if n == 0 || n > max_n {
        return Err(Error::SizeOutOfRange { n, max: max_n });
    }
    let mut all: Vec<Partition> = nc_blocks(1, n)
        .into_iter()
        .map(|blocks| {
            let mut blocks = blocks;
            blocks.sort_unstable_by_key(|b| b[0]);
            Partition::from_canonical(n, blocks)
        })
        .collect();
    all.sort_unstable();
    Ok(all)
}

// Non-crossing partitions of the interval [lo, hi], generated by choosing the
// block containing `lo` and filling every gap it leaves independently.
fn nc_blocks(lo: usize, hi: usize) -> Vec<Vec<Vec<usize>>> {
    if lo > hi {
        return vec![Vec::new()];
    }
    let rest: Vec<usize> = (lo + 1..=hi).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << rest.len()) {
        let mut head = vec![lo];
        head.extend(
            rest.iter()
                .enumerate()
                .filter(|(t, _)| mask >> t & 1 == 1)
                .map(|(_, &k)| k),
        );
        let mut gaps: Vec<(usize, usize)> = head.windows(2).map(|w| (w[0] + 1, w[1] - 1)).collect();
        gaps.push((*head.last().unwrap() + 1, hi));
        let mut partial: Vec<Vec<Vec<usize>>> = vec![vec![head]];
        for (a, b) in gaps {
            let fills = nc_blocks(a, b);
            let mut next = Vec::with_capacity(partial.len() * fills.len());
            for base in &partial {
                for fill in &fills {
                    let mut joined = base.clone();
                    joined.extend(fill.iter().cloned());
                    next.push(joined);
                }
            }
            partial = next;
        }
        out.extend(partial);
    }
    out
}

/// `NC(n)` paired with Kreweras complements, computed once per `n`.
pub fn nc_with_kreweras(n: usize) -> &'static [(Partition, Partition)] {
    static CACHE: [OnceLock<Vec<(Partition, Partition)>>; DEFAULT_MAX_N + 1] =
        [const { OnceLock::new() }; DEFAULT_MAX_N + 1];
    assert!(
        (1..=DEFAULT_MAX_N).contains(&n),
        "NC({n}) outside cached range"
    );
    CACHE[n].get_or_init(|| {
        enumerate_nc(n)
            .expect("n checked above")
            .into_iter()
            .map(|p| {
                let k = kreweras(&p).expect("enumerated partitions are non-crossing");
                (p, k)
            })
            .collect()
    })
}

/// A bijection of `{1,...,n}`; `images[k-1]` is the image of `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartitionPermutation {
    images: Vec<usize>,
}

impl PartitionPermutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &k in &images {
            if k == 0 || k > n || seen[k] {
                return Err(Error::InvalidPartition(format!(
                    "{images:?} is not a permutation"
                )));
            }
            seen[k] = true;
        }
        Ok(PartitionPermutation { images })
    }

    pub fn identity(n: usize) -> Self {
        PartitionPermutation {
            images: (1..=n).collect(),
        }
    }

    /// `gamma_n = (1 2 ... n)`.
    pub fn forward_cycle(n: usize) -> Self {
        PartitionPermutation {
            images: (1..=n).map(|k| k % n + 1).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, k: usize) -> usize {
        self.images[k - 1]
    }

    /// `self ∘ other`, i.e. `k ↦ self(other(k))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.n(), other.n());
        PartitionPermutation {
            images: other.images.iter().map(|&k| self.apply(k)).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.n()];
        for (k, &v) in self.images.iter().enumerate() {
            images[v - 1] = k + 1;
        }
        PartitionPermutation { images }
    }

    /// The partition whose blocks are the cycles.
    pub fn cycles(&self) -> Partition {
        let n = self.n();
        let mut seen = vec![false; n + 1];
        let mut blocks = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut block = Vec::new();
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                block.push(k);
                k = self.apply(k);
            }
            block.sort_unstable();
            blocks.push(block);
        }
        Partition::from_canonical(n, blocks)
    }
}

/// Each block `k_1 < ... < k_p` becomes the cycle `k_1 ↦ k_2 ↦ ... ↦ k_p ↦ k_1`.
pub fn perm_of(p: &Partition) -> Result<PartitionPermutation> {
    require_noncrossing(p)?;
    let mut images = vec![0; p.n];
    for block in &p.blocks {
        for (t, &k) in block.iter().enumerate() {
            images[k - 1] = block[(t + 1) % block.len()];
        }
    }
    Ok(PartitionPermutation { images })
}

/// The Kreweras complement: the cycles of `perm_p⁻¹ ∘ gamma_n`.
pub fn kreweras(p: &Partition) -> Result<Partition> {
    let perm = perm_of(p)?;
    let kr = perm
        .inverse()
        .compose(&PartitionPermutation::forward_cycle(p.n))
        .cycles();
    if !is_noncrossing(&kr) {
        return Err(Error::Internal(format!(
            "Kreweras complement of {p} crosses"
        )));
    }
    Ok(kr)
}

/// Refinement order: every block of `p` lies inside a block of `q`.
pub fn leq(p: &Partition, q: &Partition) -> Result<bool> {
    if p.n != q.n {
        return Err(Error::SizeMismatch {
            left: p.n,
            right: q.n,
        });
    }
    let labels = q.labels();
    Ok(p.blocks
        .iter()
        .all(|b| b.iter().all(|&k| labels[k - 1] == labels[b[0] - 1])))
}

/// Places `p` on positions `k+1..=k+|p|` and `q` on the remaining positions.
pub fn insert(p: &Partition, q: &Partition, k: usize) -> Result<Partition> {
    require_noncrossing(p)?;
    require_noncrossing(q)?;
    if k > q.n {
        return Err(Error::InsertPosition { k, max: q.n });
    }
    let shift = p.n;
    let mut blocks: Vec<Vec<usize>> = q
        .blocks
        .iter()
        .map(|b| {
            b.iter()
                .map(|&x| if x <= k { x } else { x + shift })
                .collect()
        })
        .collect();
    blocks.extend(p.blocks.iter().map(|b| b.iter().map(|&x| x + k).collect()));
    blocks.sort_unstable_by_key(|b: &Vec<usize>| b[0]);
    Ok(Partition::from_canonical(p.n + q.n, blocks))
}

/// Drops positions `start..start+len` (1-based, contiguous and a union of
/// blocks) and re-indexes what remains. Inverse of [`insert`].
pub fn remove_range(p: &Partition, start: usize, len: usize) -> Result<Partition> {
    let end = start + len;
    if start == 0 || len == 0 || end - 1 > p.n || len == p.n {
        return Err(Error::InvalidPartition(format!(
            "cannot remove {len} elements at {start} from {p}"
        )));
    }
    let inside = |x: usize| x >= start && x < end;
    let mut blocks = Vec::new();
    for b in &p.blocks {
        let hits = b.iter().filter(|&&x| inside(x)).count();
        if hits == 0 {
            blocks.push(
                b.iter()
                    .map(|&x| if x < start { x } else { x - len })
                    .collect(),
            );
        } else if hits != b.len() {
            return Err(Error::InvalidPartition(format!(
                "block {b:?} straddles the removed range"
            )));
        }
    }
    Ok(Partition::from_canonical(p.n - len, blocks))
}

/// A block that is an integer interval, with the smallest minimum.
pub fn interval_block(p: &Partition) -> &[usize] {
    p.blocks
        .iter()
        .find(|b| is_interval(b))
        .expect("every non-crossing partition has an interval block")
}

/// The interval block with the largest minimum.
pub fn rightmost_interval_block(p: &Partition) -> &[usize] {
    p.blocks
        .iter()
        .rev()
        .find(|b| is_interval(b))
        .expect("every non-crossing partition has an interval block")
}

fn is_interval(b: &[usize]) -> bool {
    b.last().unwrap() - b[0] + 1 == b.len()
}
