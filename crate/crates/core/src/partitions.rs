//! Set partitions of `{1..m}`, the non-crossing lattice and its Möbius function.
//!
//! A [`Partition`] is stored as a restricted growth string: position `r` carries the
//! label of its block, and blocks are labelled `0, 1, 2, ...` in order of their least
//! element. That is exactly the canonical form "blocks sorted by minimum", so derived
//! equality, ordering and hashing are canonical.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::report::{witness, CheckReport, ResidualTracker};
use num_bigint::BigInt;

/// Default cap on `m` for [`enumerate_nc`].
pub const NC_LIMIT: usize = 12;

/// Cap on `m` for an eagerly tabulated [`NcLattice`].
pub const LATTICE_LIMIT: usize = 8;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    labels: Vec<u8>,
}

impl Partition {
    /// The partition of the empty ground set.
    pub fn empty() -> Self {
        Partition { labels: Vec::new() }
    }

    /// `0_m`, all singletons.
    pub fn singletons(m: usize) -> Self {
        Self::from_labels_unchecked((0..m).map(|r| r as u8).collect())
    }

    /// `1_m`, one block.
    pub fn one_block(m: usize) -> Self {
        Self::from_labels_unchecked(vec![0; m])
    }

    /// Builds a partition from arbitrary block labels, one per position; positions
    /// sharing a label share a block.
    pub fn from_labels<L: Ord + Clone>(labels: &[L]) -> Result<Self> {
        if labels.len() > u8::MAX as usize {
            return Err(Error::SizeLimit { size: labels.len(), limit: u8::MAX as usize });
        }
        let mut seen: BTreeMap<L, u8> = BTreeMap::new();
        let mut out = Vec::with_capacity(labels.len());
        for l in labels {
            let next = seen.len() as u8;
            out.push(*seen.entry(l.clone()).or_insert(next));
        }
        Ok(Partition { labels: out })
    }

    /// Builds a partition of `{1..m}` from 1-based blocks in any order.
    pub fn from_blocks(m: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        if m > u8::MAX as usize {
            return Err(Error::SizeLimit { size: m, limit: u8::MAX as usize });
        }
        let mut owner: Vec<Option<usize>> = vec![None; m];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {b} is empty")));
            }
            for &x in block {
                if x == 0 || x > m {
                    return Err(Error::InvalidPartition(format!("element {x} outside 1..={m}")));
                }
                if owner[x - 1].replace(b).is_some() {
                    return Err(Error::InvalidPartition(format!("element {x} appears twice")));
                }
            }
        }
        let labels: Vec<usize> = owner
            .into_iter()
            .enumerate()
            .map(|(r, o)| o.ok_or_else(|| Error::InvalidPartition(format!("element {} not covered", r + 1))))
            .collect::<Result<_>>()?;
        Self::from_labels(&labels)
    }

    fn from_labels_unchecked(labels: Vec<u8>) -> Self {
        debug_assert!(is_restricted_growth(&labels));
        Partition { labels }
    }

    /// Size of the ground set.
    pub fn m(&self) -> usize {
        self.labels.len()
    }

    /// `|π|`.
    pub fn num_blocks(&self) -> usize {
        self.labels.iter().map(|&l| l as usize + 1).max().unwrap_or(0)
    }

    /// Canonical block labels, one per position (0-based positions).
    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    /// Blocks as sorted 1-based index sets, ordered by minimum.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (r, &l) in self.labels.iter().enumerate() {
            blocks[l as usize].push(r + 1);
        }
        blocks
    }

    /// True iff positions `r` and `s` (0-based) share a block.
    pub fn same_block(&self, r: usize, s: usize) -> bool {
        self.labels[r] == self.labels[s]
    }

    /// Crossing test by the direct four-point scan.
    pub fn is_noncrossing(&self) -> bool {
        let m = self.m();
        let l = &self.labels;
        for a in 0..m {
            for b in a + 1..m {
                if l[b] == l[a] {
                    continue;
                }
                for c in b + 1..m {
                    if l[c] != l[a] {
                        continue;
                    }
                    for d in c + 1..m {
                        if l[d] == l[b] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Crossing test by repeatedly removing a block that is an interval of the
    /// remaining positions.
    pub fn is_noncrossing_by_peeling(&self) -> bool {
        let mut remaining: Vec<u8> = self.labels.clone();
        while !remaining.is_empty() {
            match first_interval_block(&remaining) {
                Some((start, len)) => {
                    remaining.drain(start..start + len);
                }
                None => return false,
            }
        }
        true
    }

    /// `self ≤ other`: every block of `self` lies inside a block of `other`.
    pub fn leq(&self, other: &Partition) -> Result<bool> {
        check_same_ground(self, other)?;
        Ok(self.leq_unchecked(other))
    }

    pub(crate) fn leq_unchecked(&self, other: &Partition) -> bool {
        let mut image: [u8; 256] = [u8::MAX; 256];
        for (&a, &b) in self.labels.iter().zip(&other.labels) {
            let slot = &mut image[a as usize];
            if *slot == u8::MAX {
                *slot = b;
            } else if *slot != b {
                return false;
            }
        }
        true
    }

    /// Greatest common refinement.
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        check_same_ground(self, other)?;
        let pairs: Vec<(u8, u8)> = self.labels.iter().copied().zip(other.labels.iter().copied()).collect();
        Self::from_labels(&pairs)
    }

    /// Blocks that are intervals `{a, a+1, ..., b}` of positions, as (0-based start, length).
    pub fn interval_blocks(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut start = 0;
        while start < self.m() {
            let label = self.labels[start];
            let mut end = start;
            while end + 1 < self.m() && self.labels[end + 1] == label {
                end += 1;
            }
            if self.labels.iter().filter(|&&l| l == label).count() == end - start + 1 {
                out.push((start, end - start + 1));
            }
            start = end + 1;
        }
        out
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (b, block) in self.blocks().iter().enumerate() {
            if b > 0 {
                f.write_str(",")?;
            }
            f.write_str("{")?;
            for (e, x) in block.iter().enumerate() {
                if e > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("}")?;
        }
        f.write_str("}")
    }
}

fn is_restricted_growth(labels: &[u8]) -> bool {
    let mut next = 0u8;
    for &l in labels {
        if l > next {
            return false;
        }
        if l == next {
            next += 1;
        }
    }
    true
}

fn check_same_ground(p: &Partition, q: &Partition) -> Result<()> {
    if p.m() != q.m() {
        return Err(Error::GroundSetMismatch { left: p.m(), right: q.m() });
    }
    Ok(())
}

/// First run of equal labels that contains every occurrence of its label.
pub(crate) fn first_interval_block<L: PartialEq>(labels: &[L]) -> Option<(usize, usize)> {
    let mut start = 0;
    while start < labels.len() {
        let mut end = start;
        while end + 1 < labels.len() && labels[end + 1] == labels[start] {
            end += 1;
        }
        let total = labels.iter().filter(|l| **l == labels[start]).count();
        if total == end - start + 1 {
            return Some((start, total));
        }
        start = end + 1;
    }
    None
}

/// `ker i`: positions grouped by equal values.
pub fn kernel<T: Ord + Clone>(indices: &[T]) -> Result<Partition> {
    if indices.is_empty() {
        return Err(Error::EmptyInput);
    }
    Partition::from_labels(indices)
}

/// All non-crossing partitions of `{1..m}` in lexicographic order of labels.
pub fn enumerate_nc(m: usize) -> Result<Vec<Partition>> {
    enumerate_nc_with_limit(m, NC_LIMIT)
}

pub fn enumerate_nc_with_limit(m: usize, limit: usize) -> Result<Vec<Partition>> {
    if m > limit {
        return Err(Error::SizeLimit { size: m, limit });
    }
    if m > u8::MAX as usize {
        return Err(Error::SizeLimit { size: m, limit: u8::MAX as usize });
    }
    let mut out = Vec::new();
    let mut labels = Vec::with_capacity(m);
    let mut open = Vec::with_capacity(m);
    extend_nc(m, &mut labels, &mut open, 0, &mut out);
    Ok(out)
}

// `open` is the stack of blocks that may still receive elements; joining a block
// closes every block opened after it.
fn extend_nc(m: usize, labels: &mut Vec<u8>, open: &mut Vec<u8>, next_label: u8, out: &mut Vec<Partition>) {
    if labels.len() == m {
        out.push(Partition::from_labels_unchecked(labels.clone()));
        return;
    }
    for depth in 0..open.len() {
        let label = open[depth];
        let closed: Vec<u8> = open.drain(depth + 1..).collect();
        labels.push(label);
        extend_nc(m, labels, open, next_label, out);
        labels.pop();
        open.extend(closed);
    }
    labels.push(next_label);
    open.push(next_label);
    extend_nc(m, labels, open, next_label + 1, out);
    open.pop();
    labels.pop();
}

/// `NC(m)` with its Möbius function tabulated for every comparable pair.
///
/// Immutable once built, so it can be shared across threads.
#[derive(Debug, Clone)]
pub struct NcLattice {
    m: usize,
    elements: Vec<Partition>,
    index: BTreeMap<Partition, usize>,
    // row s: (p, μ(s, p)) for every p ≥ s, sorted by p
    mobius_rows: Vec<Vec<(usize, Rational)>>,
}

impl NcLattice {
    pub fn new(m: usize) -> Result<Self> {
        if m > LATTICE_LIMIT {
            return Err(Error::SizeLimit { size: m, limit: LATTICE_LIMIT });
        }
        let elements = enumerate_nc(m)?;
        let index = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut order: Vec<usize> = (0..elements.len()).collect();
        order.sort_by_key(|&i| (core::cmp::Reverse(elements[i].num_blocks()), i));

        let mut mobius_rows = Vec::with_capacity(elements.len());
        for s in 0..elements.len() {
            let ups: Vec<usize> = order.iter().copied().filter(|&p| elements[s].leq_unchecked(&elements[p])).collect();
            let mut values: Vec<Rational> = Vec::with_capacity(ups.len());
            for (a, &p) in ups.iter().enumerate() {
                let value = if p == s {
                    Rational::one()
                } else {
                    let mut acc = Rational::zero();
                    for (b, &r) in ups[..a].iter().enumerate() {
                        if elements[r].leq_unchecked(&elements[p]) {
                            acc += &values[b];
                        }
                    }
                    -acc
                };
                values.push(value);
            }
            let mut row: Vec<(usize, Rational)> = ups.into_iter().zip(values).collect();
            row.sort_by_key(|(p, _)| *p);
            mobius_rows.push(row);
        }
        Ok(NcLattice { m, elements, index, mobius_rows })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn elements(&self) -> &[Partition] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// `(p, μ(s, p))` for all `p ≥ s`, by index.
    pub fn mobius_row(&self, s: usize) -> &[(usize, Rational)] {
        &self.mobius_rows[s]
    }

    /// `μ(s, p)` by index, `None` when `s ≰ p`.
    pub fn mobius_by_index(&self, s: usize, p: usize) -> Option<&Rational> {
        let row = &self.mobius_rows[s];
        row.binary_search_by_key(&p, |(q, _)| *q).ok().map(|k| &row[k].1)
    }

    pub fn mobius(&self, s: &Partition, p: &Partition) -> Result<Rational> {
        check_same_ground(s, p)?;
        if s.m() != self.m {
            return Err(Error::GroundSetMismatch { left: s.m(), right: self.m });
        }
        let si = self.index_of(s).ok_or(Error::Crossing)?;
        let pi = self.index_of(p).ok_or(Error::Crossing)?;
        self.mobius_by_index(si, pi).cloned().ok_or(Error::NotBelow)
    }
}

/// Lazily built [`NcLattice`]s keyed by `m`.
#[derive(Debug, Clone, Default)]
pub struct MobiusCache {
    lattices: BTreeMap<usize, NcLattice>,
}

impl MobiusCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn lattice(&mut self, m: usize) -> Result<&NcLattice> {
        if !self.lattices.contains_key(&m) {
            let lattice = NcLattice::new(m)?;
            self.lattices.insert(m, lattice);
        }
        Ok(&self.lattices[&m])
    }

    /// Cache with `NC(0..=max_m)` built up front, for read-only sharing.
    pub fn filled(max_m: usize) -> Result<Self> {
        let mut cache = Self::new();
        for m in 0..=max_m {
            cache.lattice(m)?;
        }
        Ok(cache)
    }

    /// Read-only access to an already built lattice.
    pub fn get(&self, m: usize) -> Option<&NcLattice> {
        self.lattices.get(&m)
    }

    pub fn mobius(&mut self, s: &Partition, p: &Partition) -> Result<Rational> {
        check_same_ground(s, p)?;
        self.lattice(s.m())?.mobius(s, p)
    }
}

/// `μ(s, p)` on `NC(m)`.
pub fn mobius(s: &Partition, p: &Partition, cache: &mut MobiusCache) -> Result<Rational> {
    cache.mobius(s, p)
}

/// `|NC(m)|` against the Catalan numbers for `m ≤ max_m`.
pub fn check_nc_counts(max_m: usize) -> Result<CheckReport> {
    let mut t = ResidualTracker::new(0.0, true);
    for m in 0..=max_m {
        let count = enumerate_nc(m)?.len();
        let expected = crate::moments::catalan(m);
        let diff = if BigInt::from(count) == expected { 0.0 } else { 1.0 };
        t.observe("count", diff, || witness([("m", vec![m as i64]), ("count", vec![count as i64])]));
    }
    let last = enumerate_nc(max_m)?.len();
    Ok(t.finish("nc.enumerate").with_param("m", max_m).with_param("count", last))
}

/// Both closure identities `Σ_{σ≤ρ≤π} μ(σ, ρ) = δ_{σπ} = Σ_{σ≤ρ≤π} μ(ρ, π)` over all
/// pairs of `NC(m)`, and `μ(0_m, 1_m) = (−1)^{m−1} C_{m−1}`.
pub fn check_mobius(m: usize) -> Result<CheckReport> {
    let lattice = NcLattice::new(m)?;
    let els = lattice.elements();
    let mut t = ResidualTracker::new(0.0, true);
    t.touch("left_closure");
    t.touch("right_closure");
    for s in 0..els.len() {
        for (p, _) in lattice.mobius_row(s) {
            let p = *p;
            let delta = if s == p { Rational::one() } else { Rational::zero() };
            let mut left = Rational::zero();
            let mut right = Rational::zero();
            for (r, mu) in lattice.mobius_row(s) {
                if els[*r].leq_unchecked(&els[p]) {
                    left += mu;
                    right += lattice.mobius_by_index(*r, p).expect("r ≤ p");
                }
            }
            let labels = |x: usize| els[x].labels().iter().map(|&l| l as i64).collect();
            t.observe("left_closure", if left == delta { 0.0 } else { 1.0 }, || witness([("sigma", labels(s)), ("pi", labels(p))]));
            t.observe("right_closure", if right == delta { 0.0 } else { 1.0 }, || witness([("sigma", labels(s)), ("pi", labels(p))]));
        }
    }
    let mut report_mu = 0i64;
    if m > 0 {
        let mu = lattice.mobius(&Partition::singletons(m), &Partition::one_block(m))?;
        let c = crate::moments::catalan(m - 1);
        let expected = Rational::from_integer(if m % 2 == 1 { c } else { -c });
        t.observe("bottom_top", if mu == expected { 0.0 } else { 1.0 }, || witness([("m", vec![m as i64])]));
        report_mu = i64::try_from(mu.to_integer()).unwrap_or(i64::MAX);
    }
    Ok(t.finish("nc.mobius").with_param("m", m).with_param("elements", els.len()).with_param("mu_bottom_top", report_mu))
}
