//! Generalized rough-set operators and regular-set enumeration.
//!
//! An [`ApproximationSpace`] pairs a universe with a binary relation and
//! caches the successor neighborhoods. The lower approximation of `X`
//! collects the elements whose neighborhood is contained in `X`; the upper
//! approximation collects those whose neighborhood meets `X`. A *regular*
//! set is a fixed point of lower-after-upper, and for serial and transitive
//! relations the regular sets form a lattice under inclusion with
//! join `lower(upper(union))` and meet plain intersection.

use crate::error::{Error, Result};
use crate::lattice::{build_lattice, FiniteLattice};
use crate::relation::BinaryRelation;
use crate::sets::{ensure_enumerable, SetFamily, Subset, Universe, DEFAULT_ENUMERATION_CAP};

#[derive(Debug, Clone)]
pub struct ApproximationSpace {
    relation: BinaryRelation,
    neighborhoods: Vec<u64>,
}

impl ApproximationSpace {
    pub fn new(relation: BinaryRelation) -> ApproximationSpace {
        let neighborhoods = (0..relation.universe().size())
            .map(|x| relation.row(x))
            .collect();
        ApproximationSpace {
            relation,
            neighborhoods,
        }
    }

    pub fn universe(&self) -> &Universe {
        self.relation.universe()
    }

    pub fn relation(&self) -> &BinaryRelation {
        &self.relation
    }

    /// Cached successor neighborhood of element `x`.
    pub fn neighborhood(&self, x: usize) -> Result<Subset> {
        self.relation.successor_neighborhood(x)
    }

    /// Fails fast unless the relation is serial and transitive, the
    /// hypotheses under which the regular sets form a lattice.
    pub fn check_hypotheses(&self) -> Result<()> {
        self.relation.check_serial()?;
        self.relation.check_transitive()
    }

    fn check_operand(&self, x: &Subset) -> Result<()> {
        if x.universe() != self.universe() {
            return Err(Error::UniverseMismatch);
        }
        Ok(())
    }

    pub(crate) fn lower_bits(&self, bits: u64) -> u64 {
        let mut out = 0u64;
        for (e, &nbr) in self.neighborhoods.iter().enumerate() {
            if nbr & !bits == 0 {
                out |= 1 << e;
            }
        }
        out
    }

    pub(crate) fn upper_bits(&self, bits: u64) -> u64 {
        let mut out = 0u64;
        for (e, &nbr) in self.neighborhoods.iter().enumerate() {
            if nbr & bits != 0 {
                out |= 1 << e;
            }
        }
        out
    }

    /// `{e | neighborhood(e) ⊆ x}`.
    pub fn lower_approximation(&self, x: &Subset) -> Result<Subset> {
        self.check_operand(x)?;
        Ok(Subset::from_bits(
            self.universe(),
            self.lower_bits(x.bits()),
        ))
    }

    /// `{e | neighborhood(e) ∩ x ≠ ∅}`.
    pub fn upper_approximation(&self, x: &Subset) -> Result<Subset> {
        self.check_operand(x)?;
        Ok(Subset::from_bits(
            self.universe(),
            self.upper_bits(x.bits()),
        ))
    }

    pub(crate) fn is_regular_bits(&self, bits: u64) -> bool {
        self.lower_bits(self.upper_bits(bits)) == bits
    }

    /// Whether `x` is a fixed point of lower-after-upper.
    pub fn is_regular(&self, x: &Subset) -> Result<bool> {
        self.check_operand(x)?;
        Ok(self.is_regular_bits(x.bits()))
    }

    /// All regular sets, in canonical order. Full powerset scan behind the
    /// default enumeration cap; the scan doubles as the oracle for the
    /// fixed-point condition.
    pub fn enumerate_regular_sets(&self) -> Result<SetFamily> {
        self.enumerate_regular_sets_with_cap(DEFAULT_ENUMERATION_CAP)
    }

    pub fn enumerate_regular_sets_with_cap(&self, cap: usize) -> Result<SetFamily> {
        ensure_enumerable(self.universe(), cap.min(32))?;
        let n = self.universe().size();
        let regular = (0u64..1 << n)
            .filter(|&bits| self.is_regular_bits(bits))
            .map(|bits| Subset::from_bits(self.universe(), bits));
        SetFamily::from_subsets(self.universe(), regular)
    }

    fn check_regular_operands(&self, xs: &[Subset]) -> Result<()> {
        self.check_hypotheses()?;
        for x in xs {
            self.check_operand(x)?;
            if !self.is_regular_bits(x.bits()) {
                return Err(Error::NotRegular { set: x.to_string() });
            }
        }
        Ok(())
    }

    /// Least upper bound of regular sets: `lower(upper(∪ xs))`.
    ///
    /// The empty join is the empty set, the least regular set. Requires a
    /// serial and transitive relation and regular operands.
    pub fn regular_join(&self, xs: &[Subset]) -> Result<Subset> {
        self.check_regular_operands(xs)?;
        let union = xs.iter().fold(0u64, |acc, x| acc | x.bits());
        let joined = self.lower_bits(self.upper_bits(union));
        Ok(Subset::from_bits(self.universe(), joined))
    }

    /// Greatest lower bound of regular sets: plain intersection.
    ///
    /// The empty meet is the whole universe, the greatest regular set under
    /// the hypotheses.
    pub fn regular_meet(&self, xs: &[Subset]) -> Result<Subset> {
        self.check_regular_operands(xs)?;
        let full = Subset::full(self.universe()).bits();
        let met = xs.iter().fold(full, |acc, x| acc & x.bits());
        Ok(Subset::from_bits(self.universe(), met))
    }
}

/// Builds the lattice of regular sets, ordered by inclusion with join
/// `lower(upper(union))` and meet intersection. Fails fast unless the
/// relation is serial and transitive.
pub fn regular_set_lattice(space: &ApproximationSpace) -> Result<FiniteLattice> {
    space.check_hypotheses()?;
    let regular = space.enumerate_regular_sets()?;
    let join_space = space.clone();
    let meet_space = space.clone();
    build_lattice(
        regular,
        move |a, b| join_space.regular_join(&[a.clone(), b.clone()]),
        move |a, b| meet_space.regular_meet(&[a.clone(), b.clone()]),
    )
}
