//! A generic finite lattice engine over inclusion-ordered subset families.
//!
//! [`build_lattice`] takes a family together with join and meet operations,
//! verifies the family is closed under both, and precomputes everything the
//! structural queries need: operation tables, the Hasse diagram (cover
//! relation), atoms, and heights. Heights are longest-chain lengths from the
//! least element, which coincides with the usual height function on
//! semimodular lattices, where every maximal chain between two fixed
//! endpoints has the same length; [`FiniteLattice::chain_length_range`]
//! exposes the chain-length spread so callers can flag the ungraded case.
//!
//! Structural classification:
//! * [`FiniteLattice::is_modular`] searches for a pentagon sublattice via its
//!   standard witness form (see [`FiniteLattice::pentagon_witness`]);
//! * [`FiniteLattice::is_distributive`] checks the distributive law on all
//!   triples;
//! * [`FiniteLattice::is_semimodular`] checks the cover-implication form on
//!   all pairs.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::sets::{SetFamily, Subset, Universe};

/// Joint cap on lattice size: the operation tables are dense `m x m` arrays.
pub const MAX_LATTICE_ELEMENTS: usize = 4096;

#[derive(Debug, Clone)]
pub struct FiniteLattice {
    elements: SetFamily,
    bits: Vec<u64>,
    index_by_bits: HashMap<u64, usize>,
    join_table: Vec<u32>,
    meet_table: Vec<u32>,
    hasse: Vec<(usize, usize)>,
    cover_set: HashSet<(usize, usize)>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    least: usize,
    greatest: usize,
    heights: Vec<usize>,
}

/// Builds a lattice from `elements` and the supplied operations.
///
/// Verifies closure under both operations (reporting the first offending
/// pair), locates the least and greatest elements, computes the cover
/// relation by strict-inclusion minimality, and assigns heights by longest
/// chain from the least element.
pub fn build_lattice<J, M>(elements: SetFamily, join: J, meet: M) -> Result<FiniteLattice>
where
    J: Fn(&Subset, &Subset) -> Result<Subset>,
    M: Fn(&Subset, &Subset) -> Result<Subset>,
{
    let m = elements.len();
    if m == 0 {
        return Err(Error::NoLeastElement);
    }
    if m > MAX_LATTICE_ELEMENTS {
        return Err(Error::LatticeTooLarge {
            elements: m,
            max: MAX_LATTICE_ELEMENTS,
        });
    }

    let bits: Vec<u64> = elements.iter().map(Subset::bits).collect();
    let index_by_bits: HashMap<u64, usize> =
        bits.iter().enumerate().map(|(i, &b)| (b, i)).collect();

    let mut join_table = vec![0u32; m * m];
    let mut meet_table = vec![0u32; m * m];
    for i in 0..m {
        for j in i..m {
            let (a, b) = (elements.get(i), elements.get(j));
            let joined = join(a, b)?;
            let ji = *index_by_bits
                .get(&joined.bits())
                .filter(|_| joined.universe() == elements.universe())
                .ok_or_else(|| Error::NotClosedUnder {
                    operation: "join",
                    left: a.to_string(),
                    right: b.to_string(),
                    result: joined.to_string(),
                })?;
            let met = meet(a, b)?;
            let mi = *index_by_bits
                .get(&met.bits())
                .filter(|_| met.universe() == elements.universe())
                .ok_or_else(|| Error::NotClosedUnder {
                    operation: "meet",
                    left: a.to_string(),
                    right: b.to_string(),
                    result: met.to_string(),
                })?;
            join_table[i * m + j] = ji as u32;
            join_table[j * m + i] = ji as u32;
            meet_table[i * m + j] = mi as u32;
            meet_table[j * m + i] = mi as u32;
        }
    }

    let intersection_of_all = bits.iter().fold(u64::MAX, |acc, &b| acc & b);
    let least = *index_by_bits
        .get(&intersection_of_all)
        .ok_or(Error::NoLeastElement)?;
    let union_of_all = bits.iter().fold(0u64, |acc, &b| acc | b);
    let greatest = *index_by_bits
        .get(&union_of_all)
        .ok_or(Error::NoGreatestElement)?;

    // Cover relation. Canonical order ascends by cardinality, so scanning
    // candidate upper neighbours in index order meets every intermediate
    // element before the pairs it would disqualify.
    let mut upper_covers: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut lower_covers: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut hasse = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if i == j || bits[i] & !bits[j] != 0 || bits[i] == bits[j] {
                continue;
            }
            let dominated = upper_covers[i]
                .iter()
                .any(|&c| bits[c] & !bits[j] == 0 && bits[c] != bits[j]);
            if !dominated {
                upper_covers[i].push(j);
                lower_covers[j].push(i);
                hasse.push((i, j));
            }
        }
    }
    hasse.sort_unstable();
    for covers in upper_covers.iter_mut().chain(lower_covers.iter_mut()) {
        covers.sort_unstable();
    }
    let cover_set: HashSet<(usize, usize)> = hasse.iter().copied().collect();

    // Longest chain from the least element; index order is topological.
    let mut heights = vec![0usize; m];
    for j in 0..m {
        heights[j] = lower_covers[j]
            .iter()
            .map(|&c| heights[c] + 1)
            .max()
            .unwrap_or(0);
    }

    Ok(FiniteLattice {
        elements,
        bits,
        index_by_bits,
        join_table,
        meet_table,
        hasse,
        cover_set,
        upper_covers,
        lower_covers,
        least,
        greatest,
        heights,
    })
}

/// Builds a lattice whose operations are induced by inclusion: the join of
/// two members is the unique minimal member containing their union, the meet
/// the unique maximal member contained in their intersection. Errors when a
/// pair lacks a unique bound (the family is not a lattice under inclusion).
pub fn from_family_by_inclusion(elements: SetFamily) -> Result<FiniteLattice> {
    let members: Vec<Subset> = elements.members().to_vec();
    let join = |a: &Subset, b: &Subset| -> Result<Subset> {
        let union = a.union(b);
        let mut candidates: Vec<&Subset> =
            members.iter().filter(|m| union.is_subset_of(m)).collect();
        candidates.retain(|m| {
            !members
                .iter()
                .any(|o| union.is_subset_of(o) && o.is_subset_of(m) && o != *m)
        });
        match candidates.as_slice() {
            [only] => Ok((*only).clone()),
            _ => Err(Error::NoUniqueBound {
                bound: "least upper bound",
                left: a.to_string(),
                right: b.to_string(),
            }),
        }
    };
    let meet = |a: &Subset, b: &Subset| -> Result<Subset> {
        let inter = a.intersection(b);
        let mut candidates: Vec<&Subset> =
            members.iter().filter(|m| m.is_subset_of(&inter)).collect();
        candidates.retain(|m| {
            !members
                .iter()
                .any(|o| o.is_subset_of(&inter) && m.is_subset_of(o) && o != *m)
        });
        match candidates.as_slice() {
            [only] => Ok((*only).clone()),
            _ => Err(Error::NoUniqueBound {
                bound: "greatest lower bound",
                left: a.to_string(),
                right: b.to_string(),
            }),
        }
    };
    build_lattice(elements.clone(), join, meet)
}

impl FiniteLattice {
    pub fn elements(&self) -> &SetFamily {
        &self.elements
    }

    pub fn universe(&self) -> &Universe {
        self.elements.universe()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, index: usize) -> &Subset {
        self.elements.get(index)
    }

    pub fn index_of(&self, a: &Subset) -> Option<usize> {
        if a.universe() != self.universe() {
            return None;
        }
        self.index_by_bits.get(&a.bits()).copied()
    }

    fn require_index(&self, a: &Subset) -> Result<usize> {
        self.index_of(a)
            .ok_or_else(|| Error::NotAnElement { set: a.to_string() })
    }

    pub fn least(&self) -> &Subset {
        self.elements.get(self.least)
    }

    pub fn greatest(&self) -> &Subset {
        self.elements.get(self.greatest)
    }

    pub fn least_index(&self) -> usize {
        self.least
    }

    pub fn greatest_index(&self) -> usize {
        self.greatest
    }

    pub fn join_index(&self, i: usize, j: usize) -> usize {
        self.join_table[i * self.len() + j] as usize
    }

    pub fn meet_index(&self, i: usize, j: usize) -> usize {
        self.meet_table[i * self.len() + j] as usize
    }

    pub fn join_of(&self, a: &Subset, b: &Subset) -> Result<&Subset> {
        let (i, j) = (self.require_index(a)?, self.require_index(b)?);
        Ok(self.element(self.join_index(i, j)))
    }

    pub fn meet_of(&self, a: &Subset, b: &Subset) -> Result<&Subset> {
        let (i, j) = (self.require_index(a)?, self.require_index(b)?);
        Ok(self.element(self.meet_index(i, j)))
    }

    /// Cover edges `(lower, upper)` by element index, sorted.
    pub fn hasse_edge_indices(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    /// Cover edges as subset pairs.
    pub fn hasse_edges(&self) -> impl Iterator<Item = (&Subset, &Subset)> + '_ {
        self.hasse
            .iter()
            .map(|&(a, b)| (self.element(a), self.element(b)))
    }

    pub fn covers_by_index(&self, lower: usize, upper: usize) -> bool {
        self.cover_set.contains(&(lower, upper))
    }

    /// Whether `b` covers `a` (a Hasse edge).
    pub fn covers(&self, a: &Subset, b: &Subset) -> Result<bool> {
        let (i, j) = (self.require_index(a)?, self.require_index(b)?);
        Ok(self.covers_by_index(i, j))
    }

    pub fn upper_covers_of(&self, index: usize) -> &[usize] {
        &self.upper_covers[index]
    }

    pub fn lower_covers_of(&self, index: usize) -> &[usize] {
        &self.lower_covers[index]
    }

    /// Elements covering the least element; the height-1 level set.
    pub fn atoms(&self) -> SetFamily {
        let atoms = self.upper_covers[self.least]
            .iter()
            .map(|&i| self.element(i).clone());
        SetFamily::from_subsets(self.universe(), atoms).expect("atoms share the universe")
    }

    pub fn height_by_index(&self, index: usize) -> usize {
        self.heights[index]
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    /// Longest-chain height of `a` above the least element.
    pub fn height(&self, a: &Subset) -> Result<usize> {
        Ok(self.heights[self.require_index(a)?])
    }

    pub fn top_height(&self) -> usize {
        self.heights[self.greatest]
    }

    /// `{c | a ⊆ c ⊆ b}`. Errors unless `a ⊆ b` within the lattice.
    pub fn interval(&self, a: &Subset, b: &Subset) -> Result<SetFamily> {
        let (i, j) = (self.require_index(a)?, self.require_index(b)?);
        if self.bits[i] & !self.bits[j] != 0 {
            return Err(Error::IncomparableEndpoints {
                lower: a.to_string(),
                upper: b.to_string(),
            });
        }
        let members = (0..self.len())
            .filter(|&c| self.bits[i] & !self.bits[c] == 0 && self.bits[c] & !self.bits[j] == 0)
            .map(|c| self.element(c).clone());
        SetFamily::from_subsets(self.universe(), members)
    }

    /// Elements of height exactly `k`.
    pub fn level_set(&self, k: usize) -> SetFamily {
        let members = (0..self.len())
            .filter(|&i| self.heights[i] == k)
            .map(|i| self.element(i).clone());
        SetFamily::from_subsets(self.universe(), members).expect("level set shares the universe")
    }

    /// Shortest and longest maximal-chain length from the least element to
    /// `a`. The two agree everywhere exactly when the lattice is graded.
    pub fn chain_length_range(&self, a: &Subset) -> Result<(usize, usize)> {
        let target = self.require_index(a)?;
        let mut shortest = vec![usize::MAX; self.len()];
        let mut longest = vec![0usize; self.len()];
        shortest[self.least] = 0;
        for j in 0..self.len() {
            if self.bits[j] & !self.bits[target] != 0 {
                continue; // outside the interval [0, a]
            }
            for &c in &self.lower_covers[j] {
                if shortest[c] != usize::MAX {
                    shortest[j] = shortest[j].min(shortest[c] + 1);
                    longest[j] = longest[j].max(longest[c] + 1);
                }
            }
        }
        Ok((shortest[target], longest[target]))
    }

    /// Searches for five elements forming a pentagon sublattice, returned as
    /// `[bottom, short-side, long-side-low, long-side-high, top]` indices.
    ///
    /// A pentagon exists iff some `a < c` share both meet and join with a
    /// third element `b`; the five elements `{a∧b, b, a, c, a∨b}` are then
    /// distinct, closed under the ambient operations, and pentagon-ordered.
    pub fn pentagon_witness(&self) -> Option<[usize; 5]> {
        let m = self.len();
        for a in 0..m {
            for c in 0..m {
                if a == c || self.bits[a] & !self.bits[c] != 0 {
                    continue; // need a strictly below c
                }
                for b in 0..m {
                    if self.meet_index(a, b) == self.meet_index(c, b)
                        && self.join_index(a, b) == self.join_index(c, b)
                    {
                        let bottom = self.meet_index(a, b);
                        let top = self.join_index(a, b);
                        return Some([bottom, b, a, c, top]);
                    }
                }
            }
        }
        None
    }

    /// Modular iff no pentagon sublattice exists.
    pub fn is_modular(&self) -> bool {
        self.pentagon_witness().is_none()
    }

    /// Distributive law `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)` on all triples.
    pub fn is_distributive(&self) -> bool {
        let m = self.len();
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let lhs = self.meet_index(a, self.join_index(b, c));
                    let rhs = self.join_index(self.meet_index(a, b), self.meet_index(a, c));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `[x, y] = {x, y}` as sets: trivially true when `x = y`, otherwise a
    /// cover. This is the interval form used by the semimodularity test.
    fn segment_is_trivial(&self, x: usize, y: usize) -> bool {
        x == y || self.covers_by_index(x, y)
    }

    /// Semimodular iff for all pairs: `a∧b ≺ b` implies `a ≺ a∨b` (in the
    /// trivial-interval reading that also admits equal endpoints).
    pub fn is_semimodular(&self) -> bool {
        let m = self.len();
        for a in 0..m {
            for b in 0..m {
                let meet = self.meet_index(a, b);
                if self.segment_is_trivial(meet, b)
                    && !self.segment_is_trivial(a, self.join_index(a, b))
                {
                    return false;
                }
            }
        }
        true
    }

    /// DOT digraph of the Hasse diagram, bottom-to-top, with elements ranked
    /// by height and labeled with their contents. Output is deterministic.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str("digraph lattice {\n");
        out.push_str("    rankdir=BT;\n");
        out.push_str("    node [shape=box];\n");
        for i in 0..self.len() {
            let label = self.element(i).to_string().replace('"', "\\\"");
            let _ = writeln!(out, "    n{i} [label=\"{label}\"];");
        }
        for k in 0..=self.top_height() {
            let level: Vec<usize> = (0..self.len()).filter(|&i| self.heights[i] == k).collect();
            if level.len() > 1 {
                let ids: Vec<String> = level.iter().map(|i| format!("n{i}")).collect();
                let _ = writeln!(out, "    {{ rank=same; {}; }}", ids.join("; "));
            }
        }
        for &(a, b) in &self.hasse {
            let _ = writeln!(out, "    n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }
}
