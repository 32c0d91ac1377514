use std::fmt;

/// Largest palette supported anywhere in the crate.
pub const MAX_COLORS: u32 = 30;

/// A subset of the colors `1..=k`, stored as a bit mask (bit `c-1` for color `c`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ColorSet(u32);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    pub fn full(k: u32) -> Self {
        assert!(k <= MAX_COLORS, "palette of {k} colors exceeds {MAX_COLORS}");
        ColorSet(((1u64 << k) - 1) as u32)
    }

    pub fn singleton(color: u32) -> Self {
        assert!((1..=MAX_COLORS).contains(&color), "color {color} out of range");
        ColorSet(1 << (color - 1))
    }

    pub fn from_bits(bits: u32) -> Self {
        ColorSet(bits)
    }

    pub fn from_colors<I: IntoIterator<Item = u32>>(colors: I) -> Self {
        colors
            .into_iter()
            .fold(ColorSet::EMPTY, |acc, c| acc.union(ColorSet::singleton(c)))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, color: u32) -> bool {
        (1..=MAX_COLORS).contains(&color) && self.0 & (1 << (color - 1)) != 0
    }

    pub fn insert(&mut self, color: u32) {
        *self = self.union(ColorSet::singleton(color));
    }

    pub fn union(self, other: ColorSet) -> Self {
        ColorSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ColorSet) -> Self {
        ColorSet(self.0 & other.0)
    }

    pub fn difference(self, other: ColorSet) -> Self {
        ColorSet(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: ColorSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: ColorSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn complement(self, k: u32) -> Self {
        ColorSet::full(k).difference(self)
    }

    /// True iff every color lies in `1..=k`.
    pub fn within(self, k: u32) -> bool {
        self.is_subset(ColorSet::full(k))
    }

    /// Colors in increasing order.
    pub fn iter(self) -> impl Iterator<Item = u32> {
        let bits = self.0;
        (1..=MAX_COLORS).filter(move |c| bits & (1 << (c - 1)) != 0)
    }

    /// All subsets of `self` with exactly `size` colors, by increasing bit value.
    pub fn subsets_of_size(self, size: u32) -> Vec<ColorSet> {
        let colors: Vec<u32> = self.iter().collect();
        let mut out = Vec::new();
        if size as usize > colors.len() {
            return out;
        }
        // Gosper's hack over positions within `colors`.
        let n = colors.len() as u32;
        if size == 0 {
            return vec![ColorSet::EMPTY];
        }
        let mut pick: u64 = (1u64 << size) - 1;
        while pick < (1u64 << n) {
            let set = (0..n)
                .filter(|i| pick & (1 << i) != 0)
                .fold(ColorSet::EMPTY, |acc, i| {
                    acc.union(ColorSet::singleton(colors[i as usize]))
                });
            out.push(set);
            let c = pick & pick.wrapping_neg();
            let r = pick + c;
            pick = (((r ^ pick) >> 2) / c) | r;
        }
        out.sort();
        out
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_set_algebra() {
        let a = ColorSet::from_colors([1, 3]);
        let b = ColorSet::from_colors([2, 3]);
        assert_eq!(a.union(b), ColorSet::full(3));
        assert_eq!(a.intersection(b), ColorSet::singleton(3));
        assert_eq!(a.complement(3), ColorSet::singleton(2));
        assert!(!a.is_disjoint(b));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(format!("{a}"), "{1,3}");
    }

    #[test]
    fn subsets_of_size_in_bit_order() {
        let half = ColorSet::full(4).subsets_of_size(2);
        let bits: Vec<u32> = half.iter().map(|s| s.bits()).collect();
        assert_eq!(bits, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(ColorSet::full(6).subsets_of_size(3).len(), 20);
        assert_eq!(ColorSet::from_colors([2, 5]).subsets_of_size(1).len(), 2);
        assert!(ColorSet::singleton(1).subsets_of_size(2).is_empty());
    }

    #[test]
    fn full_thirty() {
        assert_eq!(ColorSet::full(30).len(), 30);
    }
}
