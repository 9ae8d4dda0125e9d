//! Catalog-wide structural invariants: validation round trips, the naive
//! order oracle, generator counting, lcm order law on coprime products, and
//! the monotone ratio consequence of the bijection at odd orders.

use std::collections::BTreeMap;

use cycsub::bijection::{find_order_bijection, order_histogram, BijectionOutcome};
use cycsub::catalog::{catalog_to, MAX_CATALOG_ORDER};
use cycsub::group::{cayley_text, parse_cayley_text, FiniteGroup};
use cycsub::lattice::{cyclic_subgroups, edge_count_formula};
use cycsub::numtheory::{cyclic_edge_count, gcd_u64, omega_phi, ratio};

fn naive_order(g: &FiniteGroup, a: usize) -> u64 {
    let mut x = a;
    let mut t = 1u64;
    while x != g.identity() {
        x = g.mul(x, a);
        t += 1;
    }
    t
}

/// Every constructed group passes full validation on its own emitted table.
/// The O(n^3) associativity scan keeps this to the smaller orders.
#[test]
fn emitted_tables_revalidate() {
    for cat in catalog_to(64).unwrap() {
        for entry in &cat.entries {
            let g = entry.spec.construct().unwrap();
            let text = cayley_text(&g);
            let rows = parse_cayley_text(&text).unwrap();
            let h = FiniteGroup::from_cayley_table(&rows)
                .unwrap_or_else(|e| panic!("{}: {e}", entry.label));
            assert_eq!(h.to_table(), g.to_table(), "{}", entry.label);
            assert_eq!(h.identity(), g.identity(), "{}", entry.label);
        }
    }
}

/// Divisor descent equals naive iteration on every element of every catalog
/// group.
#[test]
fn divisor_descent_matches_naive_iteration_everywhere() {
    for cat in catalog_to(MAX_CATALOG_ORDER).unwrap() {
        for entry in &cat.entries {
            let g = entry.spec.construct().unwrap();
            for a in 0..g.order() {
                assert_eq!(
                    g.element_order(a),
                    naive_order(&g, a),
                    "{} element {a}",
                    entry.label
                );
            }
        }
    }
}

/// Elements of order d come in blocks of φ(d): each cyclic subgroup of
/// order d contributes exactly φ(d) generators.
#[test]
fn order_classes_factor_through_subgroup_generators() {
    for cat in catalog_to(MAX_CATALOG_ORDER).unwrap() {
        for entry in &cat.entries {
            let g = entry.spec.construct().unwrap();
            let subs = cyclic_subgroups(&g);
            let mut subgroups_of_order: BTreeMap<u64, u64> = BTreeMap::new();
            for s in &subs {
                *subgroups_of_order.entry(s.order as u64).or_insert(0) += 1;
            }
            for (&d, &count) in order_histogram(&g).counts() {
                let phi = omega_phi(d).1;
                assert_eq!(
                    count,
                    phi * subgroups_of_order[&d],
                    "{} order {d}",
                    entry.label
                );
            }
        }
    }
}

/// On coprime products, element orders are lcms of the component orders.
#[test]
fn coprime_product_orders_are_lcms() {
    let catalogs = catalog_to(MAX_CATALOG_ORDER).unwrap();
    for m in 2..=MAX_CATALOG_ORDER {
        for k in (m + 1)..=MAX_CATALOG_ORDER {
            if m * k > 200 || gcd_u64(m as u64, k as u64) != 1 {
                continue;
            }
            for e1 in &catalogs[m - 1].entries {
                for e2 in &catalogs[k - 1].entries {
                    let g1 = e1.spec.construct().unwrap();
                    let g2 = e2.spec.construct().unwrap();
                    let p = FiniteGroup::direct_product(&[g1.clone(), g2.clone()]).unwrap();
                    for x in 0..p.order() {
                        let (c1, c2) = (x % m, x / m);
                        let (o1, o2) = (g1.element_order(c1), g2.element_order(c2));
                        let lcm = o1 / gcd_u64(o1, o2) * o2;
                        assert_eq!(
                            p.element_order(x),
                            lcm,
                            "{} x {} element {x}",
                            e1.label,
                            e2.label
                        );
                    }
                }
            }
        }
    }
}

/// At odd orders the bijection never increases ω/φ of an element's order,
/// which forces the edge-count inequality against the cyclic group.
#[test]
fn odd_order_bijections_are_ratio_monotone() {
    for cat in catalog_to(MAX_CATALOG_ORDER).unwrap() {
        if cat.order % 2 == 0 {
            continue;
        }
        for entry in &cat.entries {
            let g = entry.spec.construct().unwrap();
            let n = g.order() as u64;
            let bijection = match find_order_bijection(&g) {
                BijectionOutcome::Feasible { bijection, .. } => bijection,
                BijectionOutcome::Infeasible(cert) => {
                    panic!("{}: infeasible {cert:?}", entry.label)
                }
            };
            for (a, &r) in bijection.mapping.iter().enumerate() {
                let residue_order = n / gcd_u64(n, r as u64);
                assert!(
                    ratio(g.element_order(a)) >= ratio(residue_order),
                    "{} element {a}",
                    entry.label
                );
            }
            assert!(
                edge_count_formula(&g).unwrap() >= cyclic_edge_count(n),
                "{}",
                entry.label
            );
        }
    }
}

/// Histogram coincidences within one order only ever pair an abelian entry
/// with a nonabelian one (the documented distinguishing invariant), and
/// never occur at the fully verified orders up to 15.
#[test]
fn histogram_collisions_are_documented() {
    for cat in catalog_to(MAX_CATALOG_ORDER).unwrap() {
        let digests: Vec<(String, bool, String)> = cat
            .entries
            .iter()
            .map(|e| {
                let g = e.spec.construct().unwrap();
                (order_histogram(&g).digest(), e.abelian, e.label.clone())
            })
            .collect();
        for i in 0..digests.len() {
            for j in (i + 1)..digests.len() {
                if digests[i].0 == digests[j].0 {
                    assert!(
                        cat.order > 15,
                        "collision in the verified range at order {}",
                        cat.order
                    );
                    assert_ne!(
                        digests[i].1, digests[j].1,
                        "undocumented histogram collision at order {}: {} vs {}",
                        cat.order, digests[i].2, digests[j].2
                    );
                }
            }
        }
    }
}

/// The closed form is multiplicative the way the product formula says:
/// for coprime m, n the two-factor formula over Z_m, Z_n reproduces the
/// closed form at mn. |C(Z_m)| is the divisor count of m.
#[test]
fn closed_form_multiplicativity_to_100() {
    let divisor_count = |n: u64| -> u64 {
        (1..=n).filter(|d| n % d == 0).count() as u64
    };
    for m in 1..=100u64 {
        for n in 1..=100u64 {
            if gcd_u64(m, n) != 1 {
                continue;
            }
            let lhs = cyclic_edge_count(m * n);
            let rhs = cyclic_edge_count(m) * divisor_count(n)
                + cyclic_edge_count(n) * divisor_count(m);
            assert_eq!(lhs, rhs, "m={m} n={n}");
        }
    }
}

#[test]
fn groups_are_send_and_sync() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<FiniteGroup>();
    assert_send_sync::<cycsub::lattice::CyclicPoset>();
    assert_send_sync::<cycsub::OrderHistogram>();
}
