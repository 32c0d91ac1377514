use super::ring::Ring;
use crate::colorset::ColorSet;
use crate::error::{Error, Result};

/// A signature table: one entry per assignment of a proper, nonempty color
/// set to each live label. Labels are stored increasing; the smallest label
/// is the least significant digit and a set `S` has digit `bits(S) - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpTable<E> {
    k: u32,
    labels: Vec<u32>,
    entries: Vec<E>,
}

pub fn radix(k: u32) -> usize {
    (1usize << k) - 2
}

impl<E: Clone> DpTable<E> {
    pub fn from_entries(k: u32, labels: Vec<u32>, entries: Vec<E>) -> Self {
        assert!(labels.windows(2).all(|w| w[0] < w[1]), "labels must be increasing");
        let expect = radix(k).pow(labels.len() as u32);
        assert_eq!(entries.len(), expect, "table length");
        DpTable { k, labels, entries }
    }

    pub fn scalar(k: u32, v: E) -> Self {
        DpTable {
            k,
            labels: vec![],
            entries: vec![v],
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn entries(&self) -> &[E] {
        &self.entries
    }

    pub fn radix(&self) -> usize {
        radix(self.k)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn pos(&self, label: u32) -> Result<usize> {
        self.labels.binary_search(&label).map_err(|_| Error::LabelNotLive(label))
    }

    fn stride(&self, pos: usize) -> usize {
        self.radix().pow(pos as u32)
    }

    /// Index of a signature given as one set per label.
    pub fn index_of(&self, sig: &[ColorSet]) -> usize {
        assert_eq!(sig.len(), self.labels.len());
        let full = ColorSet::full(self.k);
        sig.iter().enumerate().fold(0, |acc, (p, s)| {
            assert!(!s.is_empty() && *s != full && s.within(self.k), "set {s} is not a proper subset");
            acc + (s.bits() as usize - 1) * self.stride(p)
        })
    }

    pub fn get(&self, sig: &[ColorSet]) -> &E {
        &self.entries[self.index_of(sig)]
    }

    pub fn set(&mut self, sig: &[ColorSet], v: E) {
        let i = self.index_of(sig);
        self.entries[i] = v;
    }

    /// The value of a table without live labels.
    pub fn scalar_value(&self) -> Option<&E> {
        if self.labels.is_empty() {
            self.entries.first()
        } else {
            None
        }
    }
}

/// Visits every digit vector in index order, passing the digits and, for
/// each stride vector, the dot product of digits and strides.
fn walk(radix: usize, len: usize, strides: &[&[usize]], mut f: impl FnMut(&[usize], &[usize])) {
    let mut digits = vec![0usize; len];
    let mut acc = vec![0usize; strides.len()];
    loop {
        f(&digits, &acc);
        let mut p = 0;
        loop {
            if p == len {
                return;
            }
            digits[p] += 1;
            for (a, s) in acc.iter_mut().zip(strides) {
                *a += s[p];
            }
            if digits[p] < radix {
                break;
            }
            digits[p] = 0;
            for (a, s) in acc.iter_mut().zip(strides) {
                *a -= radix * s[p];
            }
            p += 1;
        }
    }
}

/// Strides of `labels` inside a table over `of`, zero where absent.
fn strides_in(labels: &[u32], of: &[u32], radix: usize) -> Vec<usize> {
    labels
        .iter()
        .map(|l| match of.binary_search(l) {
            Ok(p) => radix.pow(p as u32),
            Err(_) => 0,
        })
        .collect()
}

fn sorted_union(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut v: Vec<u32> = a.iter().chain(b).copied().collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Subset-sum over the proper nonempty sets of one coordinate.
pub fn zeta_in_place<R: Ring>(ring: &R, t: &mut DpTable<R::Elem>, label: u32) -> Result<()> {
    transform(ring, t, label, false)
}

/// Inverse of [`zeta_in_place`].
pub fn moebius_in_place<R: Ring>(ring: &R, t: &mut DpTable<R::Elem>, label: u32) -> Result<()> {
    transform(ring, t, label, true)
}

fn transform<R: Ring>(ring: &R, t: &mut DpTable<R::Elem>, label: u32, inverse: bool) -> Result<()> {
    let pos = t.pos(label)?;
    let r = t.radix();
    let stride = t.stride(pos);
    let block = stride * r;
    let len = t.entries.len();
    for j in 0..t.k {
        let bit = 1usize << j;
        for outer in (0..len).step_by(block) {
            for m in (1..=r).filter(|&m| m & bit != 0 && m != bit) {
                let dst = outer + (m - 1) * stride;
                let src = dst - bit * stride;
                let (lo, hi) = t.entries.split_at_mut(dst);
                for i in 0..stride {
                    if inverse {
                        ring.sub_assign(&mut hi[i], &lo[src + i]);
                    } else {
                        ring.add_assign(&mut hi[i], &lo[src + i]);
                    }
                }
            }
        }
    }
    Ok(())
}

/// Table operations for a fixed ring, palette size and memory cap.
#[derive(Clone, Debug)]
pub struct Dp<R> {
    pub ring: R,
    pub k: u32,
    pub max_entries: usize,
}

impl<R: Ring> Dp<R> {
    pub fn new(ring: R, k: u32) -> Self {
        Dp {
            ring,
            k,
            max_entries: 1 << 27,
        }
    }

    fn alloc(&self, labels: usize) -> Result<Vec<R::Elem>> {
        let r = radix(self.k);
        let too_large = Error::TableTooLarge {
            labels,
            radix: r as u64,
            limit: self.max_entries,
        };
        match r.checked_pow(labels as u32) {
            Some(n) if n <= self.max_entries => Ok(vec![self.ring.zero(); n]),
            _ => Err(too_large),
        }
    }

    /// Leaf table: a singleton signature per allowed color if live, else the
    /// number of allowed colors.
    pub fn introduce(&self, label: u32, list: ColorSet, live: bool) -> Result<DpTable<R::Elem>> {
        if !live {
            return Ok(DpTable::scalar(self.k, self.ring.lift(list.len() as u64)));
        }
        let mut entries = self.alloc(1)?;
        for c in list.iter() {
            entries[(1usize << (c - 1)) - 1] = self.ring.lift(1);
        }
        Ok(DpTable {
            k: self.k,
            labels: vec![label],
            entries,
        })
    }

    /// Zeroes signatures where `i1` and `i2` share a color, then sums out
    /// whichever of them is not in `live_after`.
    pub fn join(&self, mut t: DpTable<R::Elem>, i1: u32, i2: u32, live_after: &[u32]) -> Result<DpTable<R::Elem>> {
        if i1 == i2 {
            return Err(Error::InvalidInstance(format!("join with equal labels {i1}")));
        }
        let p1 = t.pos(i1)?;
        let p2 = t.pos(i2)?;
        let r = t.radix();
        let n = t.labels.len();
        let zero = self.ring.zero();
        let entries = &mut t.entries;
        let mut idx = 0;
        walk(r, n, &[], |d, _| {
            if (d[p1] + 1) & (d[p2] + 1) != 0 {
                entries[idx] = zero.clone();
            }
            idx += 1;
        });
        for l in [i1, i2] {
            if live_after.binary_search(&l).is_err() {
                t = self.marginalize(t, l)?;
            }
        }
        assert_eq!(t.labels, live_after, "join changes liveness beyond its labels");
        Ok(t)
    }

    /// Sums out one coordinate.
    pub fn marginalize(&self, t: DpTable<R::Elem>, label: u32) -> Result<DpTable<R::Elem>> {
        t.pos(label)?;
        let labels: Vec<u32> = t.labels.iter().copied().filter(|&l| l != label).collect();
        let mut out = self.alloc(labels.len())?;
        let r = t.radix();
        let s_out = strides_in(&t.labels, &labels, r);
        let mut idx = 0;
        walk(r, t.labels.len(), &[&s_out], |_, a| {
            self.ring.add_assign(&mut out[a[0]], &t.entries[idx]);
            idx += 1;
        });
        Ok(DpTable {
            k: t.k,
            labels,
            entries: out,
        })
    }

    /// Rename `from` to `to`: copy if `from` is not live, move the coordinate
    /// if only `from` is live, otherwise merge both coordinates by union.
    pub fn rename(&self, t: DpTable<R::Elem>, from: u32, to: u32, live_after: &[u32]) -> Result<DpTable<R::Elem>> {
        if from == to {
            return Err(Error::InvalidInstance(format!("rename with equal labels {from}")));
        }
        let r = t.radix();
        let n = t.labels.len();
        let out = match (t.pos(from), t.pos(to)) {
            (Err(_), _) => t,
            (Ok(_), Err(_)) => {
                let labels: Vec<u32> = sorted_union(
                    &t.labels.iter().copied().filter(|&l| l != from).collect::<Vec<_>>(),
                    &[to],
                );
                let mapped: Vec<u32> = t.labels.iter().map(|&l| if l == from { to } else { l }).collect();
                let s_out = strides_in(&mapped, &labels, r);
                let mut out = self.alloc(n)?;
                let mut idx = 0;
                walk(r, n, &[&s_out], |_, a| {
                    out[a[0]] = t.entries[idx].clone();
                    idx += 1;
                });
                DpTable {
                    k: t.k,
                    labels,
                    entries: out,
                }
            }
            (Ok(pf), Ok(pt)) => {
                let labels: Vec<u32> = t.labels.iter().copied().filter(|&l| l != from).collect();
                let mut s_out = strides_in(&t.labels, &labels, r);
                let to_stride = s_out[pt];
                s_out[pf] = 0;
                s_out[pt] = 0;
                let full = (1usize << t.k) - 1;
                let mut out = self.alloc(labels.len())?;
                let mut idx = 0;
                walk(r, n, &[&s_out], |d, a| {
                    let merged = (d[pf] + 1) | (d[pt] + 1);
                    if merged != full {
                        self.ring
                            .add_assign(&mut out[a[0] + (merged - 1) * to_stride], &t.entries[idx]);
                    }
                    idx += 1;
                });
                DpTable {
                    k: t.k,
                    labels,
                    entries: out,
                }
            }
        };
        assert_eq!(out.labels, live_after, "rename result disagrees with liveness");
        Ok(out)
    }

    /// Disjoint union. Coordinates live on one side only combine as an outer
    /// product; shared coordinates go through zeta, pointwise product and
    /// Möbius inversion.
    pub fn union(&self, mut a: DpTable<R::Elem>, mut b: DpTable<R::Elem>, live: &[u32]) -> Result<DpTable<R::Elem>> {
        let labels = sorted_union(&a.labels, &b.labels);
        assert_eq!(labels, live, "union labels disagree with liveness");
        let shared: Vec<u32> = a.labels.iter().copied().filter(|l| b.labels.contains(l)).collect();
        let mut out = self.alloc(labels.len())?;
        for &l in &shared {
            zeta_in_place(&self.ring, &mut a, l)?;
            zeta_in_place(&self.ring, &mut b, l)?;
        }
        let r = radix(self.k);
        let sa = strides_in(&labels, &a.labels, r);
        let sb = strides_in(&labels, &b.labels, r);
        let mut idx = 0;
        walk(r, labels.len(), &[&sa, &sb], |_, x| {
            out[idx] = self.ring.mul(&a.entries[x[0]], &b.entries[x[1]]);
            idx += 1;
        });
        let mut t = DpTable {
            k: self.k,
            labels,
            entries: out,
        };
        for &l in &shared {
            moebius_in_place(&self.ring, &mut t, l)?;
        }
        Ok(t)
    }

    /// Union that transforms every coordinate of the output.
    pub fn union_full_transform(
        &self,
        a: DpTable<R::Elem>,
        b: DpTable<R::Elem>,
        live: &[u32],
    ) -> Result<DpTable<R::Elem>> {
        let labels = sorted_union(&a.labels, &b.labels);
        assert_eq!(labels, live);
        let r = radix(self.k);
        // A label missing from one side has no vertices there, so that side's
        // transformed table is constant along its axis: transform each side
        // over its own coordinates, then replicate along the missing ones.
        let mut a = a;
        let mut b = b;
        for &l in &a.labels.clone() {
            zeta_in_place(&self.ring, &mut a, l)?;
        }
        for &l in &b.labels.clone() {
            zeta_in_place(&self.ring, &mut b, l)?;
        }
        let sa = strides_in(&labels, &a.labels, r);
        let sb = strides_in(&labels, &b.labels, r);
        let mut out = self.alloc(labels.len())?;
        let mut idx = 0;
        walk(r, labels.len(), &[&sa, &sb], |_, x| {
            out[idx] = self.ring.mul(&a.entries[x[0]], &b.entries[x[1]]);
            idx += 1;
        });
        let mut t = DpTable {
            k: self.k,
            labels: labels.clone(),
            entries: out,
        };
        for &l in &labels {
            moebius_in_place(&self.ring, &mut t, l)?;
        }
        Ok(t)
    }

    pub fn is_all_zero(&self, t: &DpTable<R::Elem>) -> bool {
        t.entries.iter().all(|e| self.ring.is_zero(e))
    }
}
