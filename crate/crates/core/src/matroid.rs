//! The matroid induced by the regular-set lattice through its height
//! function.
//!
//! Over a serial and transitive relation, a subset `X` of the ground set is
//! *independent* when no regular set `Y` satisfies `|X ∩ Y| > height(Y)`.
//! This family satisfies the matroid axioms, its rank admits the closed form
//! `rank(X) = min over regular Y of height(Y) + |X − Y|`, and the flats of
//! the matroid (fixed points of the closure operator) again form a lattice.
//!
//! [`LatticeMatroid::rank`] evaluates the closed form; the definition-level
//! [`LatticeMatroid::rank_bruteforce`] (maximum cardinality of an
//! independent subset) is kept as a separately invocable oracle so the two
//! routes can be compared on every subset.

use std::fmt;

use crate::approximation::ApproximationSpace;
use crate::error::{Error, Result};
use crate::lattice::{build_lattice, FiniteLattice};
use crate::sets::{ensure_enumerable, SetFamily, Subset, Universe, DEFAULT_ENUMERATION_CAP};

#[derive(Debug, Clone)]
pub struct LatticeMatroid {
    space: ApproximationSpace,
    lattice: FiniteLattice,
    reg_bits: Vec<u64>,
    reg_heights: Vec<usize>,
}

impl LatticeMatroid {
    /// Builds the matroid for `space`, failing fast unless the relation is
    /// serial and transitive (the axioms are only guaranteed under those
    /// hypotheses) and the ground set is within the enumeration cap.
    pub fn from_space(space: &ApproximationSpace) -> Result<LatticeMatroid> {
        let lattice = crate::approximation::regular_set_lattice(space)?;
        let reg_bits: Vec<u64> = lattice.elements().iter().map(Subset::bits).collect();
        let reg_heights = lattice.heights().to_vec();
        Ok(LatticeMatroid {
            space: space.clone(),
            lattice,
            reg_bits,
            reg_heights,
        })
    }

    pub fn ground(&self) -> &Universe {
        self.space.universe()
    }

    pub fn space(&self) -> &ApproximationSpace {
        &self.space
    }

    /// The regular-set lattice whose heights define independence.
    pub fn regular_lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    fn check_operand(&self, x: &Subset) -> Result<()> {
        if x.universe() != self.ground() {
            return Err(Error::UniverseMismatch);
        }
        Ok(())
    }

    pub(crate) fn is_independent_bits(&self, bits: u64) -> bool {
        self.reg_bits
            .iter()
            .zip(&self.reg_heights)
            .all(|(&y, &h)| (bits & y).count_ones() as usize <= h)
    }

    /// `x` is independent when every regular set `Y` has
    /// `height(Y) >= |x ∩ Y|`.
    pub fn is_independent(&self, x: &Subset) -> Result<bool> {
        self.check_operand(x)?;
        Ok(self.is_independent_bits(x.bits()))
    }

    pub fn enumerate_independent_sets(&self) -> Result<SetFamily> {
        ensure_enumerable(self.ground(), DEFAULT_ENUMERATION_CAP)?;
        let n = self.ground().size();
        let members = (0u64..1 << n)
            .filter(|&bits| self.is_independent_bits(bits))
            .map(|bits| Subset::from_bits(self.ground(), bits));
        SetFamily::from_subsets(self.ground(), members)
    }

    /// Per-subset independence table over the whole powerset.
    fn independence_table(&self) -> Result<Vec<bool>> {
        ensure_enumerable(self.ground(), DEFAULT_ENUMERATION_CAP)?;
        let n = self.ground().size();
        Ok((0u64..1 << n)
            .map(|bits| self.is_independent_bits(bits))
            .collect())
    }

    /// Exhaustively checks the independence axioms, reporting witnesses for
    /// any violation instead of erroring.
    pub fn verify_axioms(&self) -> Result<AxiomReport> {
        let table = self.independence_table()?;
        let n = self.ground().size();

        let empty_set_independent = table[0];

        // hereditary: removing one element from an independent set stays
        // independent (single removals reach every subset by induction)
        let mut hereditary_counterexample = None;
        'hereditary: for bits in 0..table.len() as u64 {
            if !table[bits as usize] {
                continue;
            }
            for e in 0..n {
                let smaller = bits & !(1 << e);
                if smaller != bits && !table[smaller as usize] {
                    hereditary_counterexample = Some((
                        Subset::from_bits(self.ground(), bits),
                        Subset::from_bits(self.ground(), smaller),
                    ));
                    break 'hereditary;
                }
            }
        }

        // exchange: a smaller independent set can always grow from a larger
        let independents: Vec<u64> = (0..table.len() as u64)
            .filter(|&bits| table[bits as usize])
            .collect();
        let mut exchange_counterexample = None;
        'exchange: for &small in &independents {
            for &large in &independents {
                if small.count_ones() >= large.count_ones() {
                    continue;
                }
                let candidates = large & !small;
                let feasible =
                    (0..n).any(|e| candidates >> e & 1 == 1 && table[(small | 1 << e) as usize]);
                if !feasible {
                    exchange_counterexample = Some((
                        Subset::from_bits(self.ground(), small),
                        Subset::from_bits(self.ground(), large),
                    ));
                    break 'exchange;
                }
            }
        }

        Ok(AxiomReport {
            empty_set_independent,
            hereditary_counterexample,
            exchange_counterexample,
        })
    }

    pub(crate) fn rank_bits(&self, bits: u64) -> usize {
        self.reg_bits
            .iter()
            .zip(&self.reg_heights)
            .map(|(&y, &h)| h + (bits & !y).count_ones() as usize)
            .min()
            .expect("the regular-set lattice is never empty")
    }

    /// Closed-form rank: `min over regular Y of height(Y) + |x − Y|`.
    pub fn rank(&self, x: &Subset) -> Result<usize> {
        self.check_operand(x)?;
        Ok(self.rank_bits(x.bits()))
    }

    /// Definition-level rank: the largest cardinality of an independent
    /// subset of `x`, found by enumerating all submasks. Kept as the oracle
    /// against which the closed form is validated.
    pub fn rank_bruteforce(&self, x: &Subset) -> Result<usize> {
        self.check_operand(x)?;
        let size = x.cardinality();
        if size > DEFAULT_ENUMERATION_CAP {
            return Err(Error::EnumerationCapExceeded {
                size,
                cap: DEFAULT_ENUMERATION_CAP,
            });
        }
        let bits = x.bits();
        let mut best = 0;
        let mut sub = bits;
        loop {
            if self.is_independent_bits(sub) {
                best = best.max(sub.count_ones() as usize);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & bits;
        }
        Ok(best)
    }

    /// Closed-form rank of every subset, indexed by membership word. Shared
    /// by the scans that evaluate the closure operator across the powerset.
    pub(crate) fn rank_table(&self) -> Result<Vec<u8>> {
        ensure_enumerable(self.ground(), DEFAULT_ENUMERATION_CAP)?;
        let n = self.ground().size();
        Ok((0u64..1 << n)
            .map(|bits| self.rank_bits(bits) as u8)
            .collect())
    }

    pub(crate) fn closure_from_table(&self, table: &[u8], bits: u64) -> u64 {
        let n = self.ground().size();
        let rank = table[bits as usize];
        let mut out = bits;
        for e in 0..n {
            if bits >> e & 1 == 0 && table[(bits | 1 << e) as usize] == rank {
                out |= 1 << e;
            }
        }
        out
    }

    pub(crate) fn closure_bits(&self, bits: u64) -> u64 {
        let n = self.ground().size();
        let rank = self.rank_bits(bits);
        let mut out = bits;
        for e in 0..n {
            if bits >> e & 1 == 0 && self.rank_bits(bits | 1 << e) == rank {
                out |= 1 << e;
            }
        }
        out
    }

    /// `{u | rank(x) = rank(x ∪ {u})}`; always contains `x`.
    pub fn closure(&self, x: &Subset) -> Result<Subset> {
        self.check_operand(x)?;
        Ok(Subset::from_bits(
            self.ground(),
            self.closure_bits(x.bits()),
        ))
    }

    pub fn is_closed(&self, x: &Subset) -> Result<bool> {
        self.check_operand(x)?;
        Ok(self.closure_bits(x.bits()) == x.bits())
    }

    /// All fixed points of the closure operator, found by scanning the full
    /// powerset. This is the ground truth the three-step derivation is
    /// compared against.
    pub fn enumerate_closed_sets_bruteforce(&self) -> Result<SetFamily> {
        let table = self.rank_table()?;
        let members = (0..table.len() as u64)
            .filter(|&bits| self.closure_from_table(&table, bits) == bits)
            .map(|bits| Subset::from_bits(self.ground(), bits));
        SetFamily::from_subsets(self.ground(), members)
    }

    /// Lattice of closed sets: join is the closure of the union, meet the
    /// plain intersection.
    pub fn closed_set_lattice(&self) -> Result<FiniteLattice> {
        let closed = self.enumerate_closed_sets_bruteforce()?;
        let table = self.rank_table()?;
        let matroid = self.clone();
        build_lattice(
            closed,
            move |a, b| {
                Ok(Subset::from_bits(
                    matroid.ground(),
                    matroid.closure_from_table(&table, a.bits() | b.bits()),
                ))
            },
            |a, b| Ok(a.intersection(b)),
        )
    }

    /// Maximal independent sets. A derived convenience beyond the core
    /// construction, useful when debugging a space.
    pub fn bases(&self) -> Result<SetFamily> {
        let table = self.independence_table()?;
        let n = self.ground().size();
        let members = (0..table.len() as u64)
            .filter(|&bits| {
                table[bits as usize]
                    && (0..n).all(|e| bits >> e & 1 == 1 || !table[(bits | 1 << e) as usize])
            })
            .map(|bits| Subset::from_bits(self.ground(), bits));
        SetFamily::from_subsets(self.ground(), members)
    }

    /// Minimal dependent sets; same derived status as [`Self::bases`].
    pub fn circuits(&self) -> Result<SetFamily> {
        let table = self.independence_table()?;
        let n = self.ground().size();
        let members = (0..table.len() as u64)
            .filter(|&bits| {
                !table[bits as usize]
                    && (0..n).all(|e| bits >> e & 1 == 0 || table[(bits & !(1 << e)) as usize])
            })
            .map(|bits| Subset::from_bits(self.ground(), bits));
        SetFamily::from_subsets(self.ground(), members)
    }
}

/// Outcome of the exhaustive independence-axiom scan. Failures are report
/// content, never errors.
#[derive(Debug, Clone)]
pub struct AxiomReport {
    /// (I1): the empty set is independent.
    pub empty_set_independent: bool,
    /// (I2) violation: an independent set and a subset of it that is not.
    pub hereditary_counterexample: Option<(Subset, Subset)>,
    /// (I3) violation: a smaller and a larger independent set such that no
    /// element of the difference extends the smaller one.
    pub exchange_counterexample: Option<(Subset, Subset)>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.empty_set_independent
            && self.hereditary_counterexample.is_none()
            && self.exchange_counterexample.is_none()
    }

    /// Rendered violations, one line per failing axiom.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.empty_set_independent {
            out.push("(I1) the empty set is not independent".to_string());
        }
        if let Some((superset, subset)) = &self.hereditary_counterexample {
            out.push(format!(
                "(I2) {superset} is independent but its subset {subset} is not"
            ));
        }
        if let Some((small, large)) = &self.exchange_counterexample {
            out.push(format!(
                "(I3) no element of {large} - {small} extends {small} independently"
            ));
        }
        out
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.all_pass() {
            write!(f, "(I1) pass, (I2) pass, (I3) pass")
        } else {
            write!(f, "{}", self.violations().join("; "))
        }
    }
}
