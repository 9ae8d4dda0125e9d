//! The poset of cyclic subgroups and its Hasse diagram, with the edge count
//! computed two independent ways: structurally from cover relations, and as
//! an exact rational sum of ω(o(a))/φ(o(a)) over the elements.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::numtheory::{factorize, gcd_u64, is_prime, ratio, Rational};

/// A cyclic subgroup, identified by its canonically sorted element list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicSubgroup {
    /// Sorted element indices; closed under multiplication and inverses.
    pub elements: Vec<usize>,
    pub order: usize,
    /// Least element index generating this subgroup.
    pub min_generator: usize,
}

/// The Hasse diagram of the cyclic subgroup poset, as a simple undirected
/// graph. Subgroups are in canonical order (order, then min generator);
/// `cover_edges` holds pairs (i, j) with subgroup i covered by subgroup j,
/// sorted ascending.
#[derive(Debug, Clone)]
pub struct CyclicPoset {
    pub subgroups: Vec<CyclicSubgroup>,
    pub cover_edges: Vec<(usize, usize)>,
}

impl CyclicPoset {
    pub fn edge_count(&self) -> u64 {
        self.cover_edges.len() as u64
    }

    pub fn vertex_count(&self) -> u64 {
        self.subgroups.len() as u64
    }
}

/// Enumerate the distinct cyclic subgroups of G, including the trivial one.
/// Each element generates exactly one subgroup, so the subgroup orders
/// partition |G| into φ(order) generators each.
pub fn cyclic_subgroups(g: &FiniteGroup) -> Vec<CyclicSubgroup> {
    let identity = g.identity();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut subs = Vec::new();
    for a in 0..g.order() {
        let mut elements = vec![identity];
        let mut x = a;
        while x != identity {
            elements.push(x);
            x = g.mul(x, a);
        }
        debug_assert_eq!(elements.len() as u64, g.element_order(a));
        elements.sort_unstable();
        if seen.insert(elements.clone()) {
            subs.push(CyclicSubgroup {
                order: elements.len(),
                elements,
                min_generator: a,
            });
        }
    }
    subs.sort_by_key(|s| (s.order, s.min_generator));
    subs
}

/// Build the cover relation over a deduped subgroup list.
///
/// Covers are computed generically (strict containment with nothing strictly
/// between) and again by the prime-index rule (containment with prime order
/// ratio); the two must agree on every pair, otherwise `ShortcutMismatch`
/// is returned.
pub fn hasse_cover_edges(subgroups: Vec<CyclicSubgroup>) -> Result<CyclicPoset> {
    let k = subgroups.len();
    let universe = subgroups
        .iter()
        .flat_map(|s| s.elements.iter().copied())
        .max()
        .map_or(0, |m| m + 1);
    let words = universe.div_ceil(64);
    let mut bits = vec![0u64; k * words];
    for (i, s) in subgroups.iter().enumerate() {
        for &e in &s.elements {
            bits[i * words + e / 64] |= 1 << (e % 64);
        }
    }
    let subset = |i: usize, j: usize| -> bool {
        (0..words).all(|w| bits[i * words + w] & !bits[j * words + w] == 0)
    };

    // Strict containment; distinct canonical sets make order comparison a
    // sound strictness test.
    let mut lt = vec![false; k * k];
    for i in 0..k {
        for j in 0..k {
            if subgroups[i].order < subgroups[j].order && subset(i, j) {
                lt[i * k + j] = true;
            }
        }
    }

    let mut cover_edges = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let generic = lt[i * k + j]
                && (0..k).all(|m| !(lt[i * k + m] && lt[m * k + j]));
            let prime_index = lt[i * k + j]
                && subgroups[j].order % subgroups[i].order == 0
                && is_prime((subgroups[j].order / subgroups[i].order) as u64);
            if generic != prime_index {
                return Err(Error::ShortcutMismatch(format!(
                    "pair ({}, {}): orders {} <= {}, generic cover {}, prime-index cover {}",
                    i, j, subgroups[i].order, subgroups[j].order, generic, prime_index
                )));
            }
            if generic {
                cover_edges.push((i, j));
            }
        }
    }
    cover_edges.sort_unstable();

    Ok(CyclicPoset {
        subgroups,
        cover_edges,
    })
}

/// Enumerate subgroups and build the Hasse diagram in one step.
pub fn cyclic_poset(g: &FiniteGroup) -> Result<CyclicPoset> {
    hasse_cover_edges(cyclic_subgroups(g))
}

/// Edge count of the Hasse diagram, verifying on the way that every vertex
/// has exactly ω(order) lower covers.
pub fn edge_count_hasse(g: &FiniteGroup) -> Result<u64> {
    let poset = cyclic_poset(g)?;
    let mut down_degree = vec![0u32; poset.subgroups.len()];
    for &(_, j) in &poset.cover_edges {
        down_degree[j] += 1;
    }
    for (j, s) in poset.subgroups.iter().enumerate() {
        let omega = factorize(s.order as u64).omega();
        if down_degree[j] != omega {
            return Err(Error::ShortcutMismatch(format!(
                "subgroup of order {} has {} lower covers, expected ω = {}",
                s.order, down_degree[j], omega
            )));
        }
    }
    Ok(poset.edge_count())
}

/// Edge count as the exact rational sum Σ ω(o(a))/φ(o(a)) over all elements.
/// The sum must come out an integer; a fractional result signals an
/// implementation fault and is reported as `NonIntegerSum`.
pub fn edge_count_formula(g: &FiniteGroup) -> Result<u64> {
    let mut sum = Rational::zero();
    for a in 0..g.order() {
        sum += ratio(g.element_order(a));
    }
    if !sum.is_integer() {
        return Err(Error::NonIntegerSum {
            numerator: sum.numerator(),
            denominator: sum.denominator(),
        });
    }
    Ok(sum.numerator())
}

/// Edge count of a direct product of groups with pairwise coprime orders,
/// from the per-factor vertex and edge counts alone:
/// Σ_i |E_i| · Π_{j≠i} |C_j|.
pub fn coprime_product_edge_count(factors: &[FiniteGroup]) -> Result<u64> {
    for i in 0..factors.len() {
        for j in (i + 1)..factors.len() {
            if gcd_u64(factors[i].order() as u64, factors[j].order() as u64) != 1 {
                return Err(Error::NotCoprime {
                    a: factors[i].order(),
                    b: factors[j].order(),
                });
            }
        }
    }
    let mut counts = Vec::with_capacity(factors.len());
    for g in factors {
        let poset = cyclic_poset(g)?;
        counts.push((poset.edge_count() as u128, poset.vertex_count() as u128));
    }
    let mut total = 0u128;
    for i in 0..counts.len() {
        let mut term = counts[i].0;
        for (j, &(_, c)) in counts.iter().enumerate() {
            if j != i {
                term *= c;
            }
        }
        total += term;
    }
    u64::try_from(total).map_err(|_| Error::NonIntegerSum {
        numerator: u64::MAX,
        denominator: 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::{cyclic_edge_count, omega_phi};
    use std::collections::BTreeSet;

    /// Independent oracle: cyclic subgroups as plain sets via repeated
    /// multiplication, covers by chain search over sets. No bitsets, no
    /// prime-index rule.
    fn oracle_subgroup_sets(g: &FiniteGroup) -> Vec<BTreeSet<usize>> {
        let mut all: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        for a in 0..g.order() {
            let mut set = BTreeSet::new();
            let mut x = g.identity();
            loop {
                set.insert(x);
                x = g.mul(x, a);
                if x == g.identity() {
                    break;
                }
            }
            all.insert(set);
        }
        all.into_iter().collect()
    }

    fn oracle_cover_count(g: &FiniteGroup) -> u64 {
        let sets = oracle_subgroup_sets(g);
        let mut count = 0;
        for s in &sets {
            for t in &sets {
                if s.len() < t.len() && s.is_subset(t) {
                    let between = sets
                        .iter()
                        .any(|u| u.len() > s.len() && u.len() < t.len() && s.is_subset(u) && u.is_subset(t));
                    if !between {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    fn group(spec: &str) -> FiniteGroup {
        spec.parse::<crate::spec::GroupSpec>().unwrap().construct().unwrap()
    }

    #[test]
    fn trivial_group_has_one_subgroup() {
        let subs = cyclic_subgroups(&group("Z1"));
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].elements, vec![0]);
    }

    #[test]
    fn cyclic_prime_power_subgroup_counts() {
        for &(p, k) in &[(2usize, 5u32), (3, 3), (5, 2), (7, 1)] {
            let n = p.pow(k);
            let subs = cyclic_subgroups(&group(&format!("Z{n}")));
            assert_eq!(subs.len() as u32, k + 1, "p={p} k={k}");
            assert_eq!(edge_count_hasse(&group(&format!("Z{n}"))).unwrap(), k as u64);
        }
    }

    #[test]
    fn s3_has_five_cyclic_subgroups() {
        let g = group("S3");
        let subs = cyclic_subgroups(&g);
        assert_eq!(subs.len(), 5);
        assert_eq!(oracle_subgroup_sets(&g).len(), 5);
        let orders: Vec<usize> = subs.iter().map(|s| s.order).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3]);
    }

    #[test]
    fn generator_partition() {
        // Each element generates exactly one subgroup, φ(order) generators
        // apiece.
        for spec in ["Z12", "S4", "Dic3", "D6", "Z3xZ3", "SD[7,3,2]"] {
            let g = group(spec);
            let subs = cyclic_subgroups(&g);
            let total: u64 = subs.iter().map(|s| omega_phi(s.order as u64).1).sum();
            assert_eq!(total, g.order() as u64, "{spec}");
        }
    }

    #[test]
    fn paper_headline_edge_counts() {
        for spec in ["Z12", "A4", "Dic3"] {
            let g = group(spec);
            assert_eq!(edge_count_hasse(&g).unwrap(), 7, "{spec}");
            assert_eq!(edge_count_formula(&g).unwrap(), 7, "{spec}");
        }
    }

    #[test]
    fn quaternion_poset_shape() {
        let poset = cyclic_poset(&group("Q8")).unwrap();
        assert_eq!(poset.vertex_count(), 5);
        assert_eq!(poset.edge_count(), 4);
        // center over trivial, three order-4 subgroups over the center
        assert_eq!(poset.cover_edges, vec![(0, 1), (1, 2), (1, 3), (1, 4)]);
    }

    #[test]
    fn frozen_hasse_counts() {
        for (spec, expected) in [
            ("Z2", 1),
            ("Z6", 4),
            ("Z30", 12),
            ("Z3xZ3", 4),
            ("D4", 6),
            ("Z8", 3),
            ("Ab[4,2]", 5),
            ("Ab[2,2,2]", 7),
            ("D6", 10),
            ("Ab[6,2]", 10),
        ] {
            let g = group(spec);
            assert_eq!(edge_count_hasse(&g).unwrap(), expected, "{spec}");
            assert_eq!(oracle_cover_count(&g), expected, "oracle {spec}");
        }
    }

    #[test]
    fn formula_matches_hasse_and_oracle() {
        for spec in [
            "Z1", "Z2", "Z12", "Z36", "D4", "D6", "D9", "Q8", "Dic3", "Dic5",
            "S3", "S4", "A4", "A5", "Z3xZ3", "Ab[4,4]", "SD[7,3,2]", "SD[9,3,4]",
            "Q8xZ3", "D4xZ5",
        ] {
            let g = group(spec);
            let hasse = edge_count_hasse(&g).unwrap();
            assert_eq!(edge_count_formula(&g).unwrap(), hasse, "{spec}");
            assert_eq!(oracle_cover_count(&g), hasse, "oracle {spec}");
        }
    }

    #[test]
    fn formula_term_breakdown_for_z6() {
        // 0 for the identity, 1 for each generator, 1/2 for each element of
        // order 3, 1 for the involution: total 4.
        let g = group("Z6");
        assert_eq!(edge_count_formula(&g).unwrap(), 4);
        let terms: Vec<Rational> = (0..6).map(|a| ratio(g.element_order(a))).collect();
        let expected = [
            Rational::new(0, 1),
            Rational::new(1, 1),
            Rational::new(1, 2),
            Rational::new(1, 1),
            Rational::new(1, 2),
            Rational::new(1, 1),
        ];
        assert_eq!(terms, expected);
    }

    #[test]
    fn eq1_on_coprime_factors() {
        let z4 = group("Z4");
        let z3 = group("Z3");
        assert_eq!(coprime_product_edge_count(&[z4, z3]).unwrap(), 7);
        assert_eq!(cyclic_edge_count(12), 7);

        let s3 = group("S3");
        let z5 = group("Z5");
        let direct = edge_count_hasse(&group("S3xZ5")).unwrap();
        assert_eq!(coprime_product_edge_count(&[s3, z5]).unwrap(), direct);
        assert_eq!(direct, 13);
    }

    #[test]
    fn eq1_with_three_factors() {
        let factors = [group("Q8"), group("Z3"), group("Z25")];
        let by_formula = coprime_product_edge_count(&factors).unwrap();
        let product = FiniteGroup::direct_product(&factors).unwrap();
        assert_eq!(product.order(), 600);
        assert_eq!(edge_count_hasse(&product).unwrap(), by_formula);
    }

    #[test]
    fn eq1_rejects_shared_prime() {
        let z2 = group("Z2");
        let err = coprime_product_edge_count(&[z2.clone(), z2]).unwrap_err();
        assert!(matches!(err, Error::NotCoprime { a: 2, b: 2 }));
    }

    #[test]
    fn doctored_subgroup_list_trips_the_cross_check() {
        // Z4 with the middle Z2 dropped: trivial ⊂ Z4 has nothing listed
        // between (generic cover) but index 4 is not prime.
        let mut subs = cyclic_subgroups(&group("Z4"));
        subs.retain(|s| s.order != 2);
        let err = hasse_cover_edges(subs).unwrap_err();
        assert!(matches!(err, Error::ShortcutMismatch(_)));
    }

    #[test]
    fn non_integer_sum_is_reported() {
        // A fractional total can only come from a corrupted order cache;
        // simulate one. Pretending element 3 has order 9 turns the sum into
        // 0 + 1/2 + 1 + 1/6 = 5/3.
        let mut g = group("Z4");
        g.override_element_order(3, 9);
        let err = edge_count_formula(&g).unwrap_err();
        assert!(matches!(
            err,
            Error::NonIntegerSum {
                numerator: 5,
                denominator: 3
            }
        ));
    }

    #[test]
    fn eq2_matches_hasse_for_small_n() {
        for n in 1..=120u64 {
            let g = group(&format!("Z{n}"));
            assert_eq!(edge_count_hasse(&g).unwrap(), cyclic_edge_count(n), "n={n}");
        }
    }
}
