//! Finite universes, bit-indexed subsets, and canonically ordered subset families.
//!
//! Every other module trades in these types: a [`Universe`] fixes the ground
//! set, a [`Subset`] is a membership word over it, and a [`SetFamily`] is a
//! duplicate-free collection of subsets kept in canonical order (ascending by
//! cardinality, then by numeric value of the membership word).

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Hard representation limit: subsets are stored in a single 64-bit word.
pub const MAX_UNIVERSE: usize = 64;

/// Default cap for full powerset scans (2^20 subsets).
pub const DEFAULT_ENUMERATION_CAP: usize = 20;

#[derive(Debug)]
struct UniverseInner {
    labels: Vec<String>,
}

/// An indexed finite ground set with display labels.
///
/// Elements are 0-indexed internally; labels (default `"1".."n"`) are what
/// every piece of user-facing output shows. Cloning is cheap.
#[derive(Debug, Clone)]
pub struct Universe(Arc<UniverseInner>);

impl Universe {
    /// Universe of `n` elements labeled `"1"` through `"n"`.
    ///
    /// Panics if `n` is zero or exceeds [`MAX_UNIVERSE`].
    pub fn new(n: usize) -> Universe {
        assert!(
            (1..=MAX_UNIVERSE).contains(&n),
            "universe size must be between 1 and {MAX_UNIVERSE}, got {n}"
        );
        let labels = (1..=n).map(|i| i.to_string()).collect();
        Universe(Arc::new(UniverseInner { labels }))
    }

    /// Universe with caller-supplied labels.
    ///
    /// Labels must be nonempty, whitespace-free, not start with `#`, and be
    /// pairwise distinct, so that every label survives the line-oriented
    /// relation text format unambiguously.
    pub fn with_labels<I, S>(labels: I) -> Result<Universe>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidLabels("no labels given".into()));
        }
        if labels.len() > MAX_UNIVERSE {
            return Err(Error::InvalidLabels(format!(
                "{} labels exceed the maximum universe size of {MAX_UNIVERSE}",
                labels.len()
            )));
        }
        for label in &labels {
            if label.is_empty() {
                return Err(Error::InvalidLabels("empty label".into()));
            }
            if label.chars().any(char::is_whitespace) {
                return Err(Error::InvalidLabels(format!(
                    "label `{label}` contains whitespace"
                )));
            }
            if label.starts_with('#') {
                return Err(Error::InvalidLabels(format!(
                    "label `{label}` starts with `#`"
                )));
            }
        }
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].contains(label) {
                return Err(Error::InvalidLabels(format!("duplicate label `{label}`")));
            }
        }
        Ok(Universe(Arc::new(UniverseInner { labels })))
    }

    pub fn size(&self) -> usize {
        self.0.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    /// Display label of the element at `index`. Panics when out of range.
    pub fn label(&self, index: usize) -> &str {
        &self.0.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.0.labels.iter().position(|l| l == label)
    }

    /// Membership word with every element present.
    pub(crate) fn full_mask(&self) -> u64 {
        full_mask(self.size())
    }
}

fn full_mask(n: usize) -> u64 {
    if n == MAX_UNIVERSE {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl PartialEq for Universe {
    fn eq(&self, other: &Universe) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.labels == other.0.labels
    }
}

impl Eq for Universe {}

impl std::hash::Hash for Universe {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.labels.hash(state);
    }
}

/// A subset of a [`Universe`], stored as a bit-indexed membership word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    universe: Universe,
    bits: u64,
}

impl Subset {
    pub fn empty(universe: &Universe) -> Subset {
        Subset {
            universe: universe.clone(),
            bits: 0,
        }
    }

    pub fn full(universe: &Universe) -> Subset {
        Subset {
            universe: universe.clone(),
            bits: universe.full_mask(),
        }
    }

    /// Panics if `index` is out of range.
    pub fn singleton(universe: &Universe, index: usize) -> Subset {
        Self::from_indices(universe, [index])
    }

    /// Panics if any index is out of range.
    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: &Universe, indices: I) -> Subset {
        let mut bits = 0u64;
        for index in indices {
            assert!(
                index < universe.size(),
                "element index {index} out of range for universe of size {}",
                universe.size()
            );
            bits |= 1 << index;
        }
        Subset {
            universe: universe.clone(),
            bits,
        }
    }

    /// Wraps a raw membership word. Panics if bits are set beyond the universe.
    pub fn from_bits(universe: &Universe, bits: u64) -> Subset {
        assert!(
            bits & !universe.full_mask() == 0,
            "membership word has bits set beyond the universe"
        );
        Subset {
            universe: universe.clone(),
            bits,
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn cardinality(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, index: usize) -> bool {
        index < self.universe.size() && self.bits >> index & 1 == 1
    }

    /// Ascending element indices.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.bits;
        (0..self.universe.size()).filter(move |i| bits >> i & 1 == 1)
    }

    /// Element labels in ascending index order.
    pub fn label_vec(&self) -> Vec<&str> {
        self.indices().map(|i| self.universe.label(i)).collect()
    }

    fn assert_same_universe(&self, other: &Subset) {
        assert!(
            self.universe == other.universe,
            "set operation on subsets of different universes"
        );
    }

    pub fn union(&self, other: &Subset) -> Subset {
        self.assert_same_universe(other);
        Subset {
            universe: self.universe.clone(),
            bits: self.bits | other.bits,
        }
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        self.assert_same_universe(other);
        Subset {
            universe: self.universe.clone(),
            bits: self.bits & other.bits,
        }
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        self.assert_same_universe(other);
        Subset {
            universe: self.universe.clone(),
            bits: self.bits & !other.bits,
        }
    }

    pub fn complement(&self) -> Subset {
        Subset {
            universe: self.universe.clone(),
            bits: !self.bits & self.universe.full_mask(),
        }
    }

    pub fn with(&self, index: usize) -> Subset {
        assert!(index < self.universe.size());
        Subset {
            universe: self.universe.clone(),
            bits: self.bits | 1 << index,
        }
    }

    pub fn without(&self, index: usize) -> Subset {
        assert!(index < self.universe.size());
        Subset {
            universe: self.universe.clone(),
            bits: self.bits & !(1 << index),
        }
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.assert_same_universe(other);
        self.bits & !other.bits == 0
    }

    /// Sort key realizing the canonical family order.
    pub fn canonical_key(&self) -> (usize, u64) {
        (self.cardinality(), self.bits)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.label_vec().join(", "))
    }
}

/// A duplicate-free, canonically ordered list of subsets of one universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    universe: Universe,
    members: Vec<Subset>,
}

impl SetFamily {
    pub fn empty(universe: &Universe) -> SetFamily {
        SetFamily {
            universe: universe.clone(),
            members: Vec::new(),
        }
    }

    /// Builds a family from arbitrary subsets: deduplicates and imposes
    /// canonical order. Rejects members of a different universe.
    pub fn from_subsets<I: IntoIterator<Item = Subset>>(
        universe: &Universe,
        subsets: I,
    ) -> Result<SetFamily> {
        let mut members: Vec<Subset> = Vec::new();
        for subset in subsets {
            if subset.universe() != universe {
                return Err(Error::UniverseMismatch);
            }
            members.push(subset);
        }
        members.sort_by_key(Subset::canonical_key);
        members.dedup();
        Ok(SetFamily {
            universe: universe.clone(),
            members,
        })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Subset> {
        self.members.iter()
    }

    pub fn get(&self, index: usize) -> &Subset {
        &self.members[index]
    }

    pub fn contains(&self, subset: &Subset) -> bool {
        self.position(subset).is_some()
    }

    pub fn position(&self, subset: &Subset) -> Option<usize> {
        if subset.universe() != &self.universe {
            return None;
        }
        self.members
            .binary_search_by_key(&subset.canonical_key(), Subset::canonical_key)
            .ok()
    }

    /// Union of all members; the empty subset for an empty family.
    pub fn union_of_members(&self) -> Subset {
        let bits = self.members.iter().fold(0u64, |acc, m| acc | m.bits());
        Subset::from_bits(&self.universe, bits)
    }

    /// Members present in `self` but not in `other`, plus vice versa.
    pub fn symmetric_difference(&self, other: &SetFamily) -> Result<SetFamily> {
        if self.universe != other.universe {
            return Err(Error::UniverseMismatch);
        }
        let diff = self
            .iter()
            .filter(|m| !other.contains(m))
            .chain(other.iter().filter(|m| !self.contains(m)))
            .cloned();
        SetFamily::from_subsets(&self.universe, diff)
    }
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, member) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{member}")?;
        }
        write!(f, "}}")
    }
}

pub(crate) fn ensure_enumerable(universe: &Universe, cap: usize) -> Result<()> {
    if universe.size() > cap {
        return Err(Error::EnumerationCapExceeded {
            size: universe.size(),
            cap,
        });
    }
    Ok(())
}

/// All `2^n` subsets of `universe` in canonical order, behind the default
/// enumeration cap.
pub fn enumerate_subsets(universe: &Universe) -> Result<SubsetIter> {
    enumerate_subsets_with_cap(universe, DEFAULT_ENUMERATION_CAP)
}

/// As [`enumerate_subsets`] with a caller-chosen cap (at most 32).
pub fn enumerate_subsets_with_cap(universe: &Universe, cap: usize) -> Result<SubsetIter> {
    ensure_enumerable(universe, cap.min(32))?;
    Ok(SubsetIter {
        universe: universe.clone(),
        next: Some(0),
        cardinality: 0,
    })
}

/// Canonical-order powerset iterator: ascending cardinality, then ascending
/// numeric value within each cardinality layer (Gosper's hack).
pub struct SubsetIter {
    universe: Universe,
    next: Option<u64>,
    cardinality: usize,
}

impl Iterator for SubsetIter {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let bits = self.next?;
        let n = self.universe.size();
        let item = Subset::from_bits(&self.universe, bits);
        self.next = match same_cardinality_successor(bits) {
            Some(succ) if succ <= full_mask(n) => Some(succ),
            _ => {
                self.cardinality += 1;
                if self.cardinality > n {
                    None
                } else {
                    Some(full_mask(self.cardinality))
                }
            }
        };
        Some(item)
    }
}

/// Next-larger word with the same popcount, or `None` for zero/overflow.
fn same_cardinality_successor(bits: u64) -> Option<u64> {
    if bits == 0 {
        return None;
    }
    let lowest = bits & bits.wrapping_neg();
    let ripple = bits.checked_add(lowest)?;
    Some((((ripple ^ bits) >> 2) / lowest) | ripple)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(u: &Universe, members: &[usize]) -> Subset {
        // test helper speaks 1-based labels, like the I/O surface
        Subset::from_indices(u, members.iter().map(|&m| m - 1))
    }

    #[test]
    fn default_labels_are_one_based() {
        let u = Universe::new(4);
        assert_eq!(u.labels(), &["1", "2", "3", "4"]);
        assert_eq!(u.index_of("3"), Some(2));
        assert_eq!(u.index_of("5"), None);
    }

    #[test]
    fn label_validation() {
        assert!(Universe::with_labels(["a", "b"]).is_ok());
        assert!(matches!(
            Universe::with_labels(["a", "a"]),
            Err(Error::InvalidLabels(_))
        ));
        assert!(matches!(
            Universe::with_labels(Vec::<String>::new()),
            Err(Error::InvalidLabels(_))
        ));
        assert!(matches!(
            Universe::with_labels(["a b"]),
            Err(Error::InvalidLabels(_))
        ));
        assert!(matches!(
            Universe::with_labels(["#a"]),
            Err(Error::InvalidLabels(_))
        ));
    }

    #[test]
    fn subset_display_uses_labels() {
        let u = Universe::new(4);
        assert_eq!(set(&u, &[1, 3]).to_string(), "{1, 3}");
        assert_eq!(Subset::empty(&u).to_string(), "{}");
        assert_eq!(Subset::full(&u).to_string(), "{1, 2, 3, 4}");
    }

    #[test]
    fn enumerate_smallest_universe() {
        let u = Universe::new(1);
        let all: Vec<String> = enumerate_subsets(&u)
            .unwrap()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(all, ["{}", "{1}"]);
    }

    #[test]
    fn enumerate_two_elements_in_canonical_order() {
        let u = Universe::new(2);
        let all: Vec<String> = enumerate_subsets(&u)
            .unwrap()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(all, ["{}", "{1}", "{2}", "{1, 2}"]);
    }

    #[test]
    fn enumerate_four_elements() {
        let u = Universe::new(4);
        let all: Vec<Subset> = enumerate_subsets(&u).unwrap().collect();
        assert_eq!(all.len(), 16);
        assert_eq!(all.first().unwrap(), &Subset::empty(&u));
        assert_eq!(all.last().unwrap(), &Subset::full(&u));
    }

    #[test]
    fn enumeration_yields_no_duplicates_and_respects_canonical_order() {
        for n in 1..=8 {
            let u = Universe::new(n);
            let all: Vec<Subset> = enumerate_subsets(&u).unwrap().collect();
            assert_eq!(all.len(), 1 << n);
            let mut keys: Vec<_> = all.iter().map(Subset::canonical_key).collect();
            let sorted = {
                let mut k = keys.clone();
                k.sort();
                k
            };
            assert_eq!(keys, sorted);
            keys.dedup();
            assert_eq!(keys.len(), 1 << n);
        }
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let u = Universe::new(21);
        assert_eq!(
            enumerate_subsets(&u).err(),
            Some(Error::EnumerationCapExceeded { size: 21, cap: 20 })
        );
        assert!(enumerate_subsets_with_cap(&u, 21).is_ok());
    }

    #[test]
    fn family_canonical_order_and_dedup() {
        let u = Universe::new(4);
        let family = SetFamily::from_subsets(
            &u,
            vec![
                set(&u, &[4]),
                set(&u, &[1, 3]),
                Subset::empty(&u),
                Subset::full(&u),
            ],
        )
        .unwrap();
        let rendered: Vec<String> = family.iter().map(|s| s.to_string()).collect();
        assert_eq!(rendered, ["{}", "{4}", "{1, 3}", "{1, 2, 3, 4}"]);

        let deduped =
            SetFamily::from_subsets(&u, vec![Subset::empty(&u), Subset::empty(&u)]).unwrap();
        assert_eq!(deduped.len(), 1);

        let empty = SetFamily::from_subsets(&u, Vec::new()).unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn family_rejects_mixed_universes() {
        let u = Universe::new(4);
        let v = Universe::new(3);
        let err = SetFamily::from_subsets(&u, vec![Subset::empty(&v)]);
        assert_eq!(err.err(), Some(Error::UniverseMismatch));
    }

    #[test]
    fn family_position_and_union() {
        let u = Universe::new(4);
        let family = SetFamily::from_subsets(&u, vec![set(&u, &[4]), set(&u, &[1, 3])]).unwrap();
        assert_eq!(family.position(&set(&u, &[4])), Some(0));
        assert!(!family.contains(&Subset::empty(&u)));
        assert_eq!(family.union_of_members(), set(&u, &[1, 3, 4]));
    }

    #[test]
    fn set_algebra_laws_exhaustive_small() {
        // commutativity, associativity, De Morgan, checked over every pair
        // and triple of subsets for n <= 4
        for n in 1..=4 {
            let u = Universe::new(n);
            let all: Vec<Subset> = enumerate_subsets(&u).unwrap().collect();
            for a in &all {
                assert_eq!(a.complement().complement(), *a);
                for b in &all {
                    assert_eq!(a.union(b), b.union(a));
                    assert_eq!(a.intersection(b), b.intersection(a));
                    assert_eq!(
                        a.union(b).complement(),
                        a.complement().intersection(&b.complement())
                    );
                    assert_eq!(
                        a.intersection(b).complement(),
                        a.complement().union(&b.complement())
                    );
                    assert_eq!(a.difference(b), a.intersection(&b.complement()));
                    for c in &all {
                        assert_eq!(a.union(&b.union(c)), a.union(b).union(c));
                        assert_eq!(
                            a.intersection(&b.intersection(c)),
                            a.intersection(b).intersection(c)
                        );
                    }
                }
            }
        }
    }
}
