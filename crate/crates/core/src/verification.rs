//! Exhaustive verification of the structural claims behind the pipeline,
//! plus the three-step derivation of closed sets from the regular-set
//! lattice.
//!
//! Every check in the catalog ([`PropositionId`]) quantifies over a finite
//! domain and is evaluated exhaustively on a given space, collecting
//! explicit counterexamples instead of stopping at the first failure.
//! [`run_campaign`] drives the whole catalog over a deterministic stream of
//! randomly generated serial and transitive relations; any failing verdict
//! or derivation discrepancy is reported together with the full relation so
//! the instance can be replayed.
//!
//! The derivation itself ([`derive_closed_sets`]) assembles closed-set
//! candidates in three steps: singletons not covered by any atom of the
//! regular-set lattice, the lattice elements themselves, and the exclusion
//! of every set sandwiched strictly between a cover pair. Candidates are
//! compared against the brute-force closed-set enumeration; containment of
//! the candidates in the oracle is an invariant, while the reverse direction
//! is surveyed empirically and surfaced as the discrepancy.

use std::collections::HashSet;
use std::fmt;
use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::approximation::ApproximationSpace;
use crate::error::Result;
use crate::matroid::LatticeMatroid;
use crate::relation::random_serial_transitive;
use crate::sets::{SetFamily, Subset};

/// Identifiers of the checks in the verification catalog. The short codes
/// (`P2.3` .. `C4.7`) are the stable names used in reports and JSON output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PropositionId {
    /// P2.3 — regular sets form a lattice under inclusion: the meet of two
    /// regular sets is their intersection, the join is
    /// `lower(upper(union))`, and both land back in the family.
    JoinMeetStructure,
    /// P2.4 — the regular-set lattice is distributive.
    Distributivity,
    /// P3.1 — the regular-set lattice is semimodular.
    Semimodularity,
    /// P3.3 — the height-induced family satisfies the independence axioms.
    IndependenceAxioms,
    /// P3.6 — closed-form rank equals definition-level rank on every subset.
    RankFormula,
    /// P4.1 — the rank of a regular set equals its lattice height.
    RankEqualsHeight,
    /// P4.2 — a singleton outside every atom is closed.
    UncoveredSingletonsClosed,
    /// P4.3 — adding an outside element to a regular set gives rank
    /// `height + 1`.
    RankIncrement,
    /// P4.4 — every regular set is closed.
    LatticeElementsClosed,
    /// P4.5 — a set sandwiched strictly inside a cover pair has the rank of
    /// the upper set.
    SandwichedRank,
    /// P4.6 — a set sandwiched strictly inside a cover pair closes to the
    /// upper set.
    SandwichedClosure,
    /// C4.7 — regular sets keep their height inside the closed-set lattice.
    HeightsPreserved,
}

impl PropositionId {
    pub const ALL: [PropositionId; 12] = [
        PropositionId::JoinMeetStructure,
        PropositionId::Distributivity,
        PropositionId::Semimodularity,
        PropositionId::IndependenceAxioms,
        PropositionId::RankFormula,
        PropositionId::RankEqualsHeight,
        PropositionId::UncoveredSingletonsClosed,
        PropositionId::RankIncrement,
        PropositionId::LatticeElementsClosed,
        PropositionId::SandwichedRank,
        PropositionId::SandwichedClosure,
        PropositionId::HeightsPreserved,
    ];

    pub fn code(&self) -> &'static str {
        match self {
            PropositionId::JoinMeetStructure => "P2.3",
            PropositionId::Distributivity => "P2.4",
            PropositionId::Semimodularity => "P3.1",
            PropositionId::IndependenceAxioms => "P3.3",
            PropositionId::RankFormula => "P3.6",
            PropositionId::RankEqualsHeight => "P4.1",
            PropositionId::UncoveredSingletonsClosed => "P4.2",
            PropositionId::RankIncrement => "P4.3",
            PropositionId::LatticeElementsClosed => "P4.4",
            PropositionId::SandwichedRank => "P4.5",
            PropositionId::SandwichedClosure => "P4.6",
            PropositionId::HeightsPreserved => "C4.7",
        }
    }

    pub fn description(&self) -> &'static str {
        match self {
            PropositionId::JoinMeetStructure => {
                "meets of regular sets are intersections, joins are lower(upper(union))"
            }
            PropositionId::Distributivity => "the regular-set lattice is distributive",
            PropositionId::Semimodularity => "the regular-set lattice is semimodular",
            PropositionId::IndependenceAxioms => {
                "the height-induced family satisfies (I1), (I2), (I3)"
            }
            PropositionId::RankFormula => {
                "closed-form rank equals definition-level rank on every subset"
            }
            PropositionId::RankEqualsHeight => "rank of a regular set equals its height",
            PropositionId::UncoveredSingletonsClosed => "singletons outside every atom are closed",
            PropositionId::RankIncrement => {
                "rank of a regular set plus one outside element is height + 1"
            }
            PropositionId::LatticeElementsClosed => "every regular set is closed",
            PropositionId::SandwichedRank => {
                "sets strictly between a cover pair have the rank of the upper set"
            }
            PropositionId::SandwichedClosure => {
                "sets strictly between a cover pair close to the upper set"
            }
            PropositionId::HeightsPreserved => {
                "regular sets keep their height in the closed-set lattice"
            }
        }
    }

    pub fn from_code(code: &str) -> Option<PropositionId> {
        PropositionId::ALL
            .iter()
            .copied()
            .find(|id| id.code() == code)
    }
}

impl fmt::Display for PropositionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

/// Outcome of one check on one space. The verdict is `Fail` exactly when
/// counterexamples were found; `instance` is the relation fingerprint, which
/// reproduces the space verbatim.
#[derive(Debug, Clone)]
pub struct PropositionReport {
    pub id: PropositionId,
    pub verdict: Verdict,
    pub counterexamples: Vec<String>,
    pub instance: String,
}

impl PropositionReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// The three derivation steps, the assembled candidates, the brute-force
/// oracle, and their symmetric difference.
#[derive(Debug, Clone)]
pub struct DerivationResult {
    /// Singletons disjoint from every atom of the regular-set lattice.
    pub step1: SetFamily,
    /// The regular-set lattice elements.
    pub step2: SetFamily,
    /// Sets strictly sandwiched inside some cover pair, proven non-closed.
    pub excluded: SetFamily,
    /// `step1 ∪ step2`.
    pub candidate: SetFamily,
    /// Brute-force enumeration of all closed sets.
    pub oracle: SetFamily,
    /// Symmetric difference of candidate and oracle.
    pub discrepancy: SetFamily,
}

impl DerivationResult {
    pub fn candidate_within_oracle(&self) -> bool {
        self.candidate.iter().all(|c| self.oracle.contains(c))
    }
}

/// Runs the three-step derivation for `matroid` and compares it against the
/// brute-force closed-set enumeration.
pub fn derive_closed_sets(matroid: &LatticeMatroid) -> Result<DerivationResult> {
    let ground = matroid.ground();
    let lattice = matroid.regular_lattice();

    let covered = lattice.atoms().union_of_members();
    let step1 = SetFamily::from_subsets(
        ground,
        (0..ground.size())
            .filter(|&e| !covered.contains(e))
            .map(|e| Subset::singleton(ground, e)),
    )?;

    let step2 = lattice.elements().clone();

    let mut sandwiched: HashSet<u64> = HashSet::new();
    for &(lo, hi) in lattice.hasse_edge_indices() {
        let lo_bits = lattice.element(lo).bits();
        let hi_bits = lattice.element(hi).bits();
        let gap = hi_bits & !lo_bits;
        let mut inner = gap;
        loop {
            if inner != 0 && inner != gap {
                sandwiched.insert(lo_bits | inner);
            }
            if inner == 0 {
                break;
            }
            inner = (inner - 1) & gap;
        }
    }
    let excluded = SetFamily::from_subsets(
        ground,
        sandwiched
            .iter()
            .map(|&bits| Subset::from_bits(ground, bits)),
    )?;

    let candidate = SetFamily::from_subsets(ground, step1.iter().chain(step2.iter()).cloned())?;
    let oracle = matroid.enumerate_closed_sets_bruteforce()?;
    let discrepancy = candidate.symmetric_difference(&oracle)?;

    Ok(DerivationResult {
        step1,
        step2,
        excluded,
        candidate,
        oracle,
        discrepancy,
    })
}

/// One space, one catalog: the matroid, its lattice, and the shared rank
/// table, built once and reused by every check.
struct Verifier {
    matroid: LatticeMatroid,
    rank_table: Vec<u8>,
    instance: String,
}

impl Verifier {
    fn new(space: &ApproximationSpace) -> Result<Verifier> {
        let matroid = LatticeMatroid::from_space(space)?;
        let rank_table = matroid.rank_table()?;
        let instance = space.relation().fingerprint();
        Ok(Verifier {
            matroid,
            rank_table,
            instance,
        })
    }

    fn space(&self) -> &ApproximationSpace {
        self.matroid.space()
    }

    fn lattice(&self) -> &crate::lattice::FiniteLattice {
        self.matroid.regular_lattice()
    }

    fn element_bits(&self, index: usize) -> u64 {
        self.lattice().element(index).bits()
    }

    fn render(&self, bits: u64) -> String {
        Subset::from_bits(self.matroid.ground(), bits).to_string()
    }

    fn report(&self, id: PropositionId) -> Result<PropositionReport> {
        let counterexamples = self.counterexamples(id)?;
        Ok(PropositionReport {
            id,
            verdict: if counterexamples.is_empty() {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
            counterexamples,
            instance: self.instance.clone(),
        })
    }

    fn counterexamples(&self, id: PropositionId) -> Result<Vec<String>> {
        Ok(match id {
            PropositionId::JoinMeetStructure => self.check_join_meet(),
            PropositionId::Distributivity => self.check_distributivity(),
            PropositionId::Semimodularity => self.check_semimodularity(),
            PropositionId::IndependenceAxioms => self.matroid.verify_axioms()?.violations(),
            PropositionId::RankFormula => self.check_rank_formula()?,
            PropositionId::RankEqualsHeight => self.check_rank_equals_height(),
            PropositionId::UncoveredSingletonsClosed => self.check_uncovered_singletons(),
            PropositionId::RankIncrement => self.check_rank_increment(),
            PropositionId::LatticeElementsClosed => self.check_lattice_elements_closed(),
            PropositionId::SandwichedRank => self.check_sandwiched(false),
            PropositionId::SandwichedClosure => self.check_sandwiched(true),
            PropositionId::HeightsPreserved => self.check_heights_preserved()?,
        })
    }

    fn check_join_meet(&self) -> Vec<String> {
        let lattice = self.lattice();
        let m = lattice.len();
        let bits: Vec<u64> = (0..m).map(|i| self.element_bits(i)).collect();
        let member: HashSet<u64> = bits.iter().copied().collect();
        let mut out = Vec::new();
        for i in 0..m {
            for j in i..m {
                let (a, b) = (bits[i], bits[j]);
                if !member.contains(&(a & b)) {
                    out.push(format!(
                        "meet of {} and {} is {}, which is not regular",
                        self.render(a),
                        self.render(b),
                        self.render(a & b)
                    ));
                }
                let space = self.space();
                let join = space.lower_bits(space.upper_bits(a | b));
                if !member.contains(&join) {
                    out.push(format!(
                        "join of {} and {} is {}, which is not regular",
                        self.render(a),
                        self.render(b),
                        self.render(join)
                    ));
                    continue;
                }
                if (a | b) & !join != 0 {
                    out.push(format!(
                        "join of {} and {} is {}, which does not contain both",
                        self.render(a),
                        self.render(b),
                        self.render(join)
                    ));
                }
                // least upper bound: no regular upper bound is smaller
                for &z in &bits {
                    if (a | b) & !z == 0 && join & !z != 0 {
                        out.push(format!(
                            "join of {} and {} is {}, but regular upper bound {} does not contain it",
                            self.render(a),
                            self.render(b),
                            self.render(join),
                            self.render(z)
                        ));
                    }
                }
            }
        }
        out
    }

    fn check_distributivity(&self) -> Vec<String> {
        let lattice = self.lattice();
        let m = lattice.len();
        let mut out = Vec::new();
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let lhs = lattice.meet_index(a, lattice.join_index(b, c));
                    let rhs =
                        lattice.join_index(lattice.meet_index(a, b), lattice.meet_index(a, c));
                    if lhs != rhs {
                        out.push(format!(
                            "a={}, b={}, c={}: a∧(b∨c) = {} but (a∧b)∨(a∧c) = {}",
                            lattice.element(a),
                            lattice.element(b),
                            lattice.element(c),
                            lattice.element(lhs),
                            lattice.element(rhs)
                        ));
                    }
                }
            }
        }
        out
    }

    fn check_semimodularity(&self) -> Vec<String> {
        let lattice = self.lattice();
        let m = lattice.len();
        let trivial = |x: usize, y: usize| x == y || lattice.covers_by_index(x, y);
        let mut out = Vec::new();
        for a in 0..m {
            for b in 0..m {
                let meet = lattice.meet_index(a, b);
                let join = lattice.join_index(a, b);
                if trivial(meet, b) && !trivial(a, join) {
                    out.push(format!(
                        "a={}, b={}: a∧b ≺ b but a is not covered by a∨b",
                        lattice.element(a),
                        lattice.element(b)
                    ));
                }
            }
        }
        out
    }

    fn check_rank_formula(&self) -> Result<Vec<String>> {
        let ground = self.matroid.ground();
        let mut out = Vec::new();
        for bits in 0..self.rank_table.len() as u64 {
            let subset = Subset::from_bits(ground, bits);
            let formula = self.rank_table[bits as usize] as usize;
            let oracle = self.matroid.rank_bruteforce(&subset)?;
            if formula != oracle {
                out.push(format!(
                    "X={subset}: closed-form rank {formula}, definition-level rank {oracle}"
                ));
            }
        }
        Ok(out)
    }

    fn check_rank_equals_height(&self) -> Vec<String> {
        let lattice = self.lattice();
        let mut out = Vec::new();
        for i in 0..lattice.len() {
            let rank = self.rank_table[self.element_bits(i) as usize] as usize;
            let height = lattice.height_by_index(i);
            if rank != height {
                out.push(format!(
                    "X={}: rank {rank}, height {height}",
                    lattice.element(i)
                ));
            }
        }
        out
    }

    fn check_uncovered_singletons(&self) -> Vec<String> {
        let ground = self.matroid.ground();
        let covered = self.lattice().atoms().union_of_members();
        let mut out = Vec::new();
        for e in 0..ground.size() {
            if covered.contains(e) {
                continue;
            }
            let singleton = 1u64 << e;
            let closure = self.matroid.closure_from_table(&self.rank_table, singleton);
            if closure != singleton {
                out.push(format!(
                    "e={}: closure of {} is {}",
                    ground.label(e),
                    self.render(singleton),
                    self.render(closure)
                ));
            }
        }
        out
    }

    fn check_rank_increment(&self) -> Vec<String> {
        let lattice = self.lattice();
        let n = self.matroid.ground().size();
        let mut out = Vec::new();
        for i in 0..lattice.len() {
            let x = self.element_bits(i);
            let height = lattice.height_by_index(i);
            for e in (0..n).filter(|&e| x >> e & 1 == 0) {
                let rank = self.rank_table[(x | 1 << e) as usize] as usize;
                if rank != height + 1 {
                    out.push(format!(
                        "X={}, e={}: rank of the union is {rank}, expected {}",
                        lattice.element(i),
                        self.matroid.ground().label(e),
                        height + 1
                    ));
                }
            }
        }
        out
    }

    fn check_lattice_elements_closed(&self) -> Vec<String> {
        let lattice = self.lattice();
        let mut out = Vec::new();
        for i in 0..lattice.len() {
            let x = self.element_bits(i);
            let closure = self.matroid.closure_from_table(&self.rank_table, x);
            if closure != x {
                out.push(format!(
                    "X={}: closure is {}",
                    lattice.element(i),
                    self.render(closure)
                ));
            }
        }
        out
    }

    /// P4.5 (`check_closure == false`) and P4.6 (`true`): quantifies `Z`
    /// over arbitrary subsets strictly between a cover pair whose heights
    /// differ by exactly one.
    fn check_sandwiched(&self, check_closure: bool) -> Vec<String> {
        let lattice = self.lattice();
        let mut out = Vec::new();
        for &(lo, hi) in lattice.hasse_edge_indices() {
            if lattice.height_by_index(hi) != lattice.height_by_index(lo) + 1 {
                continue;
            }
            let lo_bits = self.element_bits(lo);
            let hi_bits = self.element_bits(hi);
            let target_height = lattice.height_by_index(hi);
            let gap = hi_bits & !lo_bits;
            let mut inner = gap;
            loop {
                if inner != 0 && inner != gap {
                    let z = lo_bits | inner;
                    if check_closure {
                        let closure = self.matroid.closure_from_table(&self.rank_table, z);
                        if closure != hi_bits {
                            out.push(format!(
                                "Y={}, X={}, Z={}: closure of Z is {}, expected X",
                                lattice.element(lo),
                                lattice.element(hi),
                                self.render(z),
                                self.render(closure)
                            ));
                        }
                    } else {
                        let rank = self.rank_table[z as usize] as usize;
                        if rank != target_height {
                            out.push(format!(
                                "Y={}, X={}, Z={}: rank of Z is {rank}, expected {target_height}",
                                lattice.element(lo),
                                lattice.element(hi),
                                self.render(z)
                            ));
                        }
                    }
                }
                if inner == 0 {
                    break;
                }
                inner = (inner - 1) & gap;
            }
        }
        out
    }

    fn check_heights_preserved(&self) -> Result<Vec<String>> {
        let closed_lattice = self.matroid.closed_set_lattice()?;
        let lattice = self.lattice();
        let mut out = Vec::new();
        for i in 0..lattice.len() {
            let x = lattice.element(i);
            match closed_lattice.index_of(x) {
                None => out.push(format!("X={x} is regular but not closed")),
                Some(j) => {
                    let h = lattice.height_by_index(i);
                    let h1 = closed_lattice.height_by_index(j);
                    if h != h1 {
                        out.push(format!(
                            "X={x}: height {h} in the regular-set lattice, {h1} in the closed-set lattice"
                        ));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Runs a single check against `space`. Errors on hypothesis violations
/// (non-serial or non-transitive relations) and capacity overruns; failed
/// checks come back as `Fail` verdicts with counterexamples.
pub fn verify_proposition(
    space: &ApproximationSpace,
    id: PropositionId,
) -> Result<PropositionReport> {
    Verifier::new(space)?.report(id)
}

/// Runs the whole catalog against `space`, in catalog order.
pub fn verify_all(space: &ApproximationSpace) -> Result<Vec<PropositionReport>> {
    let verifier = Verifier::new(space)?;
    PropositionId::ALL
        .iter()
        .map(|&id| verifier.report(id))
        .collect()
}

/// Largest universe a campaign may draw: at this size even a powerset-sized
/// regular family still fits the lattice engine's element cap.
pub const CAMPAIGN_SIZE_CAP: usize = 12;

/// Parameters of a randomized verification campaign. Instances are drawn
/// deterministically from `seed`: sizes uniformly from `sizes`, densities
/// uniformly from the `densities` interval.
#[derive(Debug, Clone)]
pub struct CampaignConfig {
    pub count: usize,
    pub sizes: RangeInclusive<usize>,
    pub densities: (f64, f64),
    pub seed: u64,
}

/// Everything recorded about one campaign instance.
#[derive(Debug, Clone)]
pub struct InstanceReport {
    pub index: usize,
    pub size: usize,
    pub density: f64,
    /// Relation fingerprint; reproduces the instance verbatim.
    pub relation: String,
    pub distributive: bool,
    pub modular: bool,
    pub semimodular: bool,
    pub propositions: Vec<PropositionReport>,
    pub derivation: DerivationSummary,
}

impl InstanceReport {
    pub fn all_pass(&self) -> bool {
        self.propositions.iter().all(PropositionReport::passed)
    }
}

/// Candidate-versus-oracle outcome of the three-step derivation.
#[derive(Debug, Clone)]
pub struct DerivationSummary {
    pub candidate_count: usize,
    pub oracle_count: usize,
    pub candidate_within_oracle: bool,
    /// Rendered members of the symmetric difference.
    pub discrepancy: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct CampaignReport {
    pub config: CampaignConfig,
    pub instances: Vec<InstanceReport>,
}

impl CampaignReport {
    /// Count of failing proposition reports across all instances.
    pub fn failed_propositions(&self) -> usize {
        self.instances
            .iter()
            .flat_map(|i| &i.propositions)
            .filter(|r| !r.passed())
            .count()
    }

    /// Count of instances whose derivation disagreed with the oracle.
    pub fn discrepancy_count(&self) -> usize {
        self.instances
            .iter()
            .filter(|i| !i.derivation.discrepancy.is_empty())
            .count()
    }

    pub fn all_pass(&self) -> bool {
        self.failed_propositions() == 0
    }

    /// Anything worth failing a pipeline over: a failed verdict or a
    /// candidate/oracle mismatch.
    pub fn has_findings(&self) -> bool {
        !self.all_pass() || self.discrepancy_count() > 0
    }
}

/// Generates `config.count` spaces and runs the full catalog plus the
/// derivation survey on each. Deterministic for a fixed config; instances
/// are verified in parallel and reported in order.
pub fn run_campaign(config: &CampaignConfig) -> CampaignReport {
    assert!(
        *config.sizes.start() >= 1 && *config.sizes.end() <= CAMPAIGN_SIZE_CAP,
        "campaign sizes must stay within 1..={CAMPAIGN_SIZE_CAP}"
    );
    let (lo, hi) = config.densities;
    assert!(
        (0.0..=1.0).contains(&lo) && (0.0..=1.0).contains(&hi) && lo <= hi,
        "density bounds must satisfy 0 <= lo <= hi <= 1"
    );

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let params: Vec<(usize, usize, f64, u64)> = (0..config.count)
        .map(|index| {
            let size = rng.random_range(config.sizes.clone());
            let density = if lo == hi {
                lo
            } else {
                rng.random_range(lo..=hi)
            };
            let instance_seed = rng.random();
            (index, size, density, instance_seed)
        })
        .collect();

    let instances: Vec<InstanceReport> = params
        .par_iter()
        .map(|&(index, size, density, instance_seed)| {
            let relation = random_serial_transitive(size, density, instance_seed);
            let space = ApproximationSpace::new(relation);
            let verifier = Verifier::new(&space)
                .expect("generated relations are serial, transitive, and within caps");
            let propositions: Vec<PropositionReport> = PropositionId::ALL
                .iter()
                .map(|&id| verifier.report(id).expect("within caps by construction"))
                .collect();
            let lattice = verifier.lattice();
            let (distributive, modular, semimodular) = (
                lattice.is_distributive(),
                lattice.is_modular(),
                lattice.is_semimodular(),
            );
            let derivation =
                derive_closed_sets(&verifier.matroid).expect("within caps by construction");
            InstanceReport {
                index,
                size,
                density,
                relation: space.relation().fingerprint(),
                distributive,
                modular,
                semimodular,
                propositions,
                derivation: DerivationSummary {
                    candidate_count: derivation.candidate.len(),
                    oracle_count: derivation.oracle.len(),
                    candidate_within_oracle: derivation.candidate_within_oracle(),
                    discrepancy: derivation
                        .discrepancy
                        .iter()
                        .map(Subset::to_string)
                        .collect(),
                },
            }
        })
        .collect();

    CampaignReport {
        config: config.clone(),
        instances,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::relation::BinaryRelation;
    use crate::sets::Universe;

    fn set(u: &Universe, members: &[usize]) -> Subset {
        Subset::from_indices(u, members.iter().map(|&m| m - 1))
    }

    fn family(u: &Universe, sets: &[&[usize]]) -> SetFamily {
        SetFamily::from_subsets(u, sets.iter().map(|s| set(u, s))).unwrap()
    }

    fn worked_example_space() -> ApproximationSpace {
        let u = Universe::new(4);
        let r = BinaryRelation::from_pairs(
            &u,
            [
                (0, 0),
                (0, 2),
                (1, 0),
                (1, 2),
                (1, 3),
                (2, 0),
                (2, 2),
                (3, 3),
            ],
        )
        .unwrap();
        ApproximationSpace::new(r)
    }

    #[test]
    fn derivation_worked_example() {
        let m = LatticeMatroid::from_space(&worked_example_space()).unwrap();
        let u = m.ground().clone();
        let d = derive_closed_sets(&m).unwrap();
        assert_eq!(d.step1, family(&u, &[&[2]]));
        assert_eq!(d.step2, family(&u, &[&[], &[4], &[1, 3], &[1, 2, 3, 4]]));
        assert_eq!(
            d.candidate,
            family(&u, &[&[], &[2], &[4], &[1, 3], &[1, 2, 3, 4]])
        );
        assert_eq!(d.candidate, d.oracle);
        assert!(d.discrepancy.is_empty());
        assert!(d.candidate_within_oracle());
        // the sandwiched sets proven non-closed
        assert_eq!(
            d.excluded,
            family(
                &u,
                &[
                    &[1],
                    &[3],
                    &[1, 4],
                    &[2, 4],
                    &[3, 4],
                    &[1, 2, 3],
                    &[1, 2, 4],
                    &[1, 3, 4],
                    &[2, 3, 4],
                ]
            )
        );
        // step 3 never contradicts the oracle
        assert!(d.excluded.iter().all(|z| !d.oracle.contains(z)));
    }

    #[test]
    fn derivation_identity_relation() {
        let u = Universe::new(4);
        let s = ApproximationSpace::new(BinaryRelation::identity(&u));
        let m = LatticeMatroid::from_space(&s).unwrap();
        let d = derive_closed_sets(&m).unwrap();
        // every singleton is an atom, so step 1 is empty
        assert!(d.step1.is_empty());
        assert_eq!(d.candidate.len(), 16);
        assert_eq!(d.candidate, d.oracle);
        assert!(d.discrepancy.is_empty());
    }

    #[test]
    fn derivation_complete_relation() {
        let u = Universe::new(3);
        let s = ApproximationSpace::new(BinaryRelation::complete(&u));
        let m = LatticeMatroid::from_space(&s).unwrap();
        let d = derive_closed_sets(&m).unwrap();
        // the single atom is the whole universe, so step 1 is empty
        assert!(d.step1.is_empty());
        assert_eq!(d.candidate, family(&u, &[&[], &[1, 2, 3]]));
        assert_eq!(d.candidate, d.oracle);
        assert!(d.discrepancy.is_empty());
    }

    #[test]
    fn catalog_passes_on_the_worked_example() {
        let space = worked_example_space();
        for id in PropositionId::ALL {
            let report = verify_proposition(&space, id).unwrap();
            assert!(report.passed(), "{id} failed: {:?}", report.counterexamples);
            assert!(report.counterexamples.is_empty());
            assert_eq!(report.instance, space.relation().fingerprint());
        }
    }

    #[test]
    fn catalog_passes_on_the_identity_relation() {
        let u = Universe::new(4);
        let space = ApproximationSpace::new(BinaryRelation::identity(&u));
        for report in verify_all(&space).unwrap() {
            assert!(report.passed(), "{} failed", report.id);
        }
    }

    #[test]
    fn hypothesis_violations_are_errors_not_verdicts() {
        let u = Universe::new(3);
        let space = ApproximationSpace::new(
            BinaryRelation::from_pairs(&u, [(0, 1), (1, 2), (2, 2)]).unwrap(),
        );
        let err = verify_proposition(&space, PropositionId::RankFormula);
        assert!(matches!(err, Err(Error::NotTransitive { .. })));
    }

    #[test]
    fn verify_all_covers_the_catalog_in_order() {
        let reports = verify_all(&worked_example_space()).unwrap();
        let ids: Vec<PropositionId> = reports.iter().map(|r| r.id).collect();
        assert_eq!(ids, PropositionId::ALL);
    }

    #[test]
    fn proposition_codes_round_trip() {
        for id in PropositionId::ALL {
            assert_eq!(PropositionId::from_code(id.code()), Some(id));
        }
        assert_eq!(PropositionId::from_code("P9.9"), None);
    }

    /// The claims all hold on legitimate spaces, so the scans' failure
    /// branches are exercised by corrupting the shared rank table and
    /// checking that each affected scan reports the right witness.
    fn corrupted_verifier(corruptions: &[(u64, u8)]) -> Verifier {
        let matroid = LatticeMatroid::from_space(&worked_example_space()).unwrap();
        let mut rank_table = matroid.rank_table().unwrap();
        for &(bits, rank) in corruptions {
            rank_table[bits as usize] = rank;
        }
        Verifier {
            matroid,
            rank_table,
            instance: "corrupted".into(),
        }
    }

    #[test]
    fn rank_scans_fire_on_a_corrupted_table() {
        // {1, 3} is regular with height 1; misreport its rank as 2
        let verifier = corrupted_verifier(&[(0b0101, 2)]);

        let formula = verifier.report(PropositionId::RankFormula).unwrap();
        assert_eq!(formula.verdict, Verdict::Fail);
        assert!(formula.counterexamples[0].contains("{1, 3}"));

        let height = verifier.report(PropositionId::RankEqualsHeight).unwrap();
        assert!(!height.passed());
        assert!(height.counterexamples[0].contains("rank 2, height 1"));

        // the inflated rank lets outside elements into the closure
        let closed = verifier
            .report(PropositionId::LatticeElementsClosed)
            .unwrap();
        assert!(!closed.passed());
        assert!(closed.counterexamples[0].contains("X={1, 3}"));
    }

    #[test]
    fn sandwich_scans_fire_on_a_corrupted_table() {
        // {1} sits strictly between the cover pair {} < {1, 3}
        let verifier = corrupted_verifier(&[(0b0001, 2)]);

        let rank = verifier.report(PropositionId::SandwichedRank).unwrap();
        assert!(!rank.passed());
        assert!(rank.counterexamples[0].contains("Z={1}"));

        let closure = verifier.report(PropositionId::SandwichedClosure).unwrap();
        assert!(!closure.passed());
        assert!(closure.counterexamples[0].contains("Z={1}"));
    }

    #[test]
    fn singleton_scan_fires_on_a_corrupted_table() {
        // deflating the rank of {1, 2} pulls 1 into the closure of {2},
        // the one singleton outside every atom
        let verifier = corrupted_verifier(&[(0b0011, 1)]);
        let report = verifier
            .report(PropositionId::UncoveredSingletonsClosed)
            .unwrap();
        assert!(!report.passed());
        assert!(report.counterexamples[0].contains("e=2"));
        assert_eq!(report.instance, "corrupted");
    }

    #[test]
    fn empty_campaign() {
        let report = run_campaign(&CampaignConfig {
            count: 0,
            sizes: 2..=4,
            densities: (0.1, 0.3),
            seed: 1,
        });
        assert!(report.instances.is_empty());
        assert!(report.all_pass());
        assert!(!report.has_findings());
    }

    #[test]
    fn campaign_is_deterministic() {
        let config = CampaignConfig {
            count: 12,
            sizes: 2..=6,
            densities: (0.05, 0.4),
            seed: 42,
        };
        let a = run_campaign(&config);
        let b = run_campaign(&config);
        assert_eq!(a.instances.len(), b.instances.len());
        for (x, y) in a.instances.iter().zip(&b.instances) {
            assert_eq!(x.relation, y.relation);
            assert_eq!(x.size, y.size);
            assert_eq!(x.density, y.density);
            assert_eq!(x.all_pass(), y.all_pass());
            assert_eq!(x.derivation.discrepancy, y.derivation.discrepancy);
        }
    }

    #[test]
    fn small_campaign_passes_everything() {
        let report = run_campaign(&CampaignConfig {
            count: 25,
            sizes: 2..=6,
            densities: (0.05, 0.4),
            seed: 7,
        });
        assert_eq!(report.instances.len(), 25);
        assert!(
            report.all_pass(),
            "failures: {}",
            report.failed_propositions()
        );
        for instance in &report.instances {
            assert!(instance.derivation.candidate_within_oracle);
            assert!(instance.distributive);
            assert!(instance.modular);
            assert!(instance.semimodular);
        }
    }
}
