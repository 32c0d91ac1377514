use crate::colorset::{ColorSet, MAX_COLORS};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    /// All nonempty proper subsets of `1..=k`.
    ProperSubsets,
    /// All subsets of size `floor(k/2)`.
    HalfSubsets,
}

/// Bijection between values `1..=len` and color sets, in increasing bit order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationTable {
    pub k: u32,
    pub scheme: Scheme,
    sets: Vec<ColorSet>,
}

impl TranslationTable {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[ColorSet] {
        &self.sets
    }

    /// Color set of value `v` (1-based).
    pub fn encode(&self, v: u32) -> ColorSet {
        self.sets[v as usize - 1]
    }

    pub fn decode(&self, s: ColorSet) -> Option<u32> {
        self.sets.binary_search_by_key(&s.bits(), |x| x.bits()).ok().map(|i| i as u32 + 1)
    }
}

pub fn value_encoding(k: u32, scheme: Scheme) -> Result<TranslationTable> {
    if !(3..=MAX_COLORS).contains(&k) {
        return Err(Error::ColorsOutOfRange {
            k,
            min: 3,
            max: MAX_COLORS,
        });
    }
    let full = ColorSet::full(k);
    let sets = match scheme {
        Scheme::ProperSubsets => (1..full.bits()).map(ColorSet::from_bits).collect(),
        Scheme::HalfSubsets => full.subsets_of_size(k / 2),
    };
    Ok(TranslationTable { k, scheme, sets })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(c: &[u32]) -> ColorSet {
        ColorSet::from_colors(c.iter().copied())
    }

    #[test]
    fn proper_subsets_k3() {
        let t = value_encoding(3, Scheme::ProperSubsets).unwrap();
        let want = [cs(&[1]), cs(&[2]), cs(&[1, 2]), cs(&[3]), cs(&[1, 3]), cs(&[2, 3])];
        assert_eq!(t.sets(), &want);
        assert_eq!(value_encoding(5, Scheme::ProperSubsets).unwrap().len(), 30);
    }

    #[test]
    fn half_subsets_k4() {
        let t = value_encoding(4, Scheme::HalfSubsets).unwrap();
        let want = [cs(&[1, 2]), cs(&[1, 3]), cs(&[2, 3]), cs(&[1, 4]), cs(&[2, 4]), cs(&[3, 4])];
        assert_eq!(t.sets(), &want);
        assert_eq!(value_encoding(5, Scheme::HalfSubsets).unwrap().len(), 10);
    }

    #[test]
    fn decode_inverts_encode() {
        for k in 3..=6 {
            for scheme in [Scheme::ProperSubsets, Scheme::HalfSubsets] {
                let t = value_encoding(k, scheme).unwrap();
                for v in 1..=t.len() as u32 {
                    assert_eq!(t.decode(t.encode(v)), Some(v));
                }
            }
        }
        let t = value_encoding(4, Scheme::HalfSubsets).unwrap();
        assert_eq!(t.decode(cs(&[1])), None);
        assert!(value_encoding(2, Scheme::HalfSubsets).is_err());
    }
}
