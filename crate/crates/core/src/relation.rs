//! Binary relations over a universe: property predicates, successor
//! neighborhoods, transitive closure, and a seeded generator of serial and
//! transitive relations for randomized verification campaigns.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::sets::{Subset, Universe};

/// A binary relation stored row-wise: bit `y` of `rows[x]` means `x R y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryRelation {
    universe: Universe,
    rows: Vec<u64>,
}

impl BinaryRelation {
    pub fn empty(universe: &Universe) -> BinaryRelation {
        BinaryRelation {
            universe: universe.clone(),
            rows: vec![0; universe.size()],
        }
    }

    /// The diagonal relation `{(x, x)}`.
    pub fn identity(universe: &Universe) -> BinaryRelation {
        let rows = (0..universe.size()).map(|x| 1u64 << x).collect();
        BinaryRelation {
            universe: universe.clone(),
            rows,
        }
    }

    /// The complete relation `U x U`.
    pub fn complete(universe: &Universe) -> BinaryRelation {
        let full = Subset::full(universe).bits();
        BinaryRelation {
            universe: universe.clone(),
            rows: vec![full; universe.size()],
        }
    }

    /// Builds from 0-indexed pairs, rejecting out-of-range endpoints.
    pub fn from_pairs<I>(universe: &Universe, pairs: I) -> Result<BinaryRelation>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = universe.size();
        let mut rows = vec![0u64; n];
        for (x, y) in pairs {
            for index in [x, y] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, size: n });
                }
            }
            rows[x] |= 1 << y;
        }
        Ok(BinaryRelation {
            universe: universe.clone(),
            rows,
        })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        x < self.rows.len() && y < self.rows.len() && self.rows[x] >> y & 1 == 1
    }

    /// All pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.rows.len();
        (0..n).flat_map(move |x| {
            (0..n)
                .filter(move |&y| self.rows[x] >> y & 1 == 1)
                .map(move |y| (x, y))
        })
    }

    pub(crate) fn row(&self, x: usize) -> u64 {
        self.rows[x]
    }

    /// The successor neighborhood `{y | x R y}`.
    pub fn successor_neighborhood(&self, x: usize) -> Result<Subset> {
        if x >= self.rows.len() {
            return Err(Error::IndexOutOfRange {
                index: x,
                size: self.rows.len(),
            });
        }
        Ok(Subset::from_bits(&self.universe, self.rows[x]))
    }

    /// Every element has at least one successor.
    pub fn is_serial(&self) -> bool {
        self.rows.iter().all(|&row| row != 0)
    }

    /// `x R y` and `y R z` imply `x R z`; equivalently, each row contains
    /// the union of the rows of its successors.
    pub fn is_transitive(&self) -> bool {
        self.rows.iter().enumerate().all(|(x, &row)| {
            (0..self.rows.len())
                .filter(|&y| row >> y & 1 == 1)
                .all(|y| self.rows[y] & !self.rows[x] == 0)
        })
    }

    pub fn is_reflexive(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(x, &row)| row >> x & 1 == 1)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.rows.len();
        (0..n).all(|x| (0..n).all(|y| self.contains(x, y) == self.contains(y, x)))
    }

    /// `Ok(())` for serial relations, otherwise an error naming a
    /// successor-free element.
    pub fn check_serial(&self) -> Result<()> {
        match self.rows.iter().position(|&row| row == 0) {
            None => Ok(()),
            Some(x) => Err(Error::NotSerial {
                element: self.universe.label(x).to_string(),
            }),
        }
    }

    /// `Ok(())` for transitive relations, otherwise an error carrying a
    /// witnessing triple.
    pub fn check_transitive(&self) -> Result<()> {
        let n = self.rows.len();
        for x in 0..n {
            for y in (0..n).filter(|&y| self.rows[x] >> y & 1 == 1) {
                let missing = self.rows[y] & !self.rows[x];
                if missing != 0 {
                    let z = missing.trailing_zeros() as usize;
                    return Err(Error::NotTransitive {
                        x: self.universe.label(x).to_string(),
                        y: self.universe.label(y).to_string(),
                        z: self.universe.label(z).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Smallest transitive superset (Warshall over bit rows). Idempotent.
    pub fn transitive_closure(&self) -> BinaryRelation {
        let n = self.rows.len();
        let mut rows = self.rows.clone();
        for k in 0..n {
            let row_k = rows[k];
            for row in rows.iter_mut() {
                if *row >> k & 1 == 1 {
                    *row |= row_k;
                }
            }
        }
        BinaryRelation {
            universe: self.universe.clone(),
            rows,
        }
    }

    /// Compact `n=..; R={(..)..}` rendering, precise enough to reproduce the
    /// relation verbatim.
    pub fn fingerprint(&self) -> String {
        let pairs: Vec<String> = self
            .pairs()
            .map(|(x, y)| format!("({},{})", self.universe.label(x), self.universe.label(y)))
            .collect();
        format!("n={}; R={{{}}}", self.universe.size(), pairs.join(","))
    }
}

/// Deterministically samples a serial and transitive relation on a fresh
/// `n`-element universe.
///
/// Each ordered pair is kept with probability `density`, the transitive
/// closure is taken, and every element still lacking a successor gains a
/// self-loop (which cannot break transitivity on a successor-free element).
pub fn random_serial_transitive(n: usize, density: f64, seed: u64) -> BinaryRelation {
    assert!((0.0..=1.0).contains(&density), "density must lie in [0, 1]");
    let universe = Universe::new(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut relation = BinaryRelation::empty(&universe);
    for x in 0..n {
        for y in 0..n {
            if rng.random_bool(density) {
                relation.rows[x] |= 1 << y;
            }
        }
    }
    let mut relation = relation.transitive_closure();
    for x in 0..n {
        if relation.rows[x] == 0 {
            relation.rows[x] = 1 << x;
        }
    }
    relation
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The four-element relation used as the running worked example across
    /// the crate: R = {(1,1),(1,3),(2,1),(2,3),(2,4),(3,1),(3,3),(4,4)}.
    pub(crate) fn worked_example() -> BinaryRelation {
        let u = Universe::new(4);
        BinaryRelation::from_pairs(
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
        .unwrap()
    }

    #[test]
    fn worked_example_neighborhoods() {
        let r = worked_example();
        assert_eq!(r.successor_neighborhood(0).unwrap().to_string(), "{1, 3}");
        assert_eq!(r.successor_neighborhood(2).unwrap().to_string(), "{1, 3}");
        assert_eq!(
            r.successor_neighborhood(1).unwrap().to_string(),
            "{1, 3, 4}"
        );
        assert_eq!(r.successor_neighborhood(3).unwrap().to_string(), "{4}");
        assert!(matches!(
            r.successor_neighborhood(4),
            Err(Error::IndexOutOfRange { index: 4, size: 4 })
        ));
    }

    #[test]
    fn identity_neighborhood_is_the_singleton() {
        let u = Universe::new(5);
        let r = BinaryRelation::identity(&u);
        for x in 0..5 {
            assert_eq!(
                r.successor_neighborhood(x).unwrap(),
                Subset::singleton(&u, x)
            );
        }
    }

    #[test]
    fn seriality() {
        let u = Universe::new(3);
        assert!(worked_example().is_serial());
        assert!(!BinaryRelation::empty(&u).is_serial());
        assert!(BinaryRelation::complete(&u).is_serial());
        assert!(BinaryRelation::empty(&u).check_serial().is_err());
    }

    #[test]
    fn transitivity() {
        let u = Universe::new(3);
        assert!(worked_example().is_transitive());
        let chain = BinaryRelation::from_pairs(&u, [(0, 1), (1, 2)]).unwrap();
        assert!(!chain.is_transitive());
        assert_eq!(
            chain.check_transitive(),
            Err(Error::NotTransitive {
                x: "1".into(),
                y: "2".into(),
                z: "3".into(),
            })
        );
        assert!(BinaryRelation::identity(&u).is_transitive());
    }

    #[test]
    fn transitive_closure_adds_the_missing_pair() {
        let u = Universe::new(3);
        let chain = BinaryRelation::from_pairs(&u, [(0, 1), (1, 2)]).unwrap();
        let closed = chain.transitive_closure();
        assert!(closed.contains(0, 2));
        assert_eq!(
            closed,
            BinaryRelation::from_pairs(&u, [(0, 1), (1, 2), (0, 2)]).unwrap()
        );
    }

    #[test]
    fn transitive_closure_fixes_transitive_inputs() {
        let r = worked_example();
        assert_eq!(r.transitive_closure(), r);
        let u = Universe::new(4);
        let full = BinaryRelation::complete(&u);
        assert_eq!(full.transitive_closure(), full);
    }

    #[test]
    fn transitive_closure_exhaustive_small() {
        // every relation on up to 3 elements: closure is transitive,
        // extensive, and idempotent
        for n in 1..=3usize {
            let u = Universe::new(n);
            let cells = n * n;
            for code in 0u32..1 << cells {
                let pairs = (0..cells)
                    .filter(|&c| code >> c & 1 == 1)
                    .map(|c| (c / n, c % n));
                let r = BinaryRelation::from_pairs(&u, pairs).unwrap();
                let closed = r.transitive_closure();
                assert!(closed.is_transitive());
                for (x, y) in r.pairs() {
                    assert!(closed.contains(x, y));
                }
                assert_eq!(closed.transitive_closure(), closed);
            }
        }
    }

    #[test]
    fn generator_degenerate_densities() {
        let identity = random_serial_transitive(5, 0.0, 99);
        assert_eq!(identity, BinaryRelation::identity(&Universe::new(5)));
        let full = random_serial_transitive(5, 1.0, 99);
        assert_eq!(full, BinaryRelation::complete(&Universe::new(5)));
    }

    #[test]
    fn generator_is_deterministic() {
        let a = random_serial_transitive(7, 0.3, 1234);
        let b = random_serial_transitive(7, 0.3, 1234);
        assert_eq!(a, b);
    }

    #[test]
    fn generator_output_is_serial_and_transitive() {
        let mut samples = 0;
        for n in 2..=10 {
            for &density in &[0.05, 0.1, 0.2, 0.4] {
                for seed in 0..7 {
                    let r = random_serial_transitive(n, density, seed);
                    assert!(r.is_serial(), "non-serial sample: {}", r.fingerprint());
                    assert!(
                        r.is_transitive(),
                        "non-transitive sample: {}",
                        r.fingerprint()
                    );
                    samples += 1;
                }
            }
        }
        assert!(samples >= 200);
    }

    #[test]
    fn fingerprint_round_trips_through_pairs() {
        let r = worked_example();
        assert_eq!(
            r.fingerprint(),
            "n=4; R={(1,1),(1,3),(2,1),(2,3),(2,4),(3,1),(3,3),(4,4)}"
        );
    }
}
