//! Finite groups given by an explicit multiplication table over element
//! indices 0..n-1, with validated construction from Cayley tables,
//! permutation generators, and the standard small-group families.

use std::collections::HashMap;

use crate::error::{Error, Result, TableLine};
use crate::numtheory::{factorize, gcd_u64};

/// Default cap on group order; table storage is O(n^2).
pub const DEFAULT_CLOSURE_BOUND: usize = 20_000;

/// Knobs for the validating constructors.
///
/// `check_associativity` controls the full O(n^3) triple scan run by
/// [`FiniteGroup::from_cayley_table_with`]; it is intended to stay on at desk
/// scale (it is cheap up to a few hundred elements) and be switched off only
/// for large trusted inputs. Even when skipped, a power screen during order
/// computation still rejects many non-groups.
#[derive(Debug, Clone)]
pub struct BuildOptions {
    pub check_associativity: bool,
    pub closure_bound: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            check_associativity: true,
            closure_bound: DEFAULT_CLOSURE_BOUND,
        }
    }
}

/// A finite group of order n on element indices 0..n-1.
///
/// Immutable after construction; the identity index, inverse table and
/// element orders are derived and cached at build time. Orders are computed
/// by divisor descent (factor n, then strip primes with fast exponentiation)
/// rather than naive iteration.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<u32>,
    identity: usize,
    inverse: Vec<u32>,
    elt_order: Vec<u32>,
}

impl FiniteGroup {
    /// |G|.
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    pub fn inverse_of(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// o(a): least t >= 1 with a^t = identity.
    pub fn element_order(&self, a: usize) -> u64 {
        self.elt_order[a] as u64
    }

    /// a^k by repeated squaring on the table.
    pub fn pow(&self, a: usize, mut k: u64) -> usize {
        let mut result = self.identity;
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        result
    }

    pub fn is_abelian(&self) -> bool {
        for a in 0..self.n {
            for b in (a + 1)..self.n {
                if self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
            }
        }
        true
    }

    /// Nilpotency via the Sylow criterion: for every prime p dividing |G|,
    /// the elements of p-power order must number exactly the p-part of |G|
    /// (equivalently, every Sylow subgroup is unique, hence normal).
    pub fn is_nilpotent(&self) -> bool {
        let n = self.n as u64;
        for &(p, e) in factorize(n).factors() {
            let p_part = p.pow(e);
            let count = (0..self.n)
                .filter(|&a| {
                    let mut o = self.element_order(a);
                    while o % p == 0 {
                        o /= p;
                    }
                    o == 1
                })
                .count() as u64;
            if count != p_part {
                return false;
            }
        }
        true
    }

    /// Test hook: corrupt the cached order of one element to exercise the
    /// fault-signal paths downstream.
    #[cfg(test)]
    pub(crate) fn override_element_order(&mut self, a: usize, order: u32) {
        self.elt_order[a] = order;
    }

    /// The multiplication table as nested rows.
    pub fn to_table(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|a| (0..self.n).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    /// Validate an explicit Cayley table and build the group. The identity is
    /// detected, never assumed to sit at index 0.
    pub fn from_cayley_table(table: &[Vec<usize>]) -> Result<Self> {
        Self::from_cayley_table_with(table, &BuildOptions::default())
    }

    pub fn from_cayley_table_with(table: &[Vec<usize>], opts: &BuildOptions) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::FileFormat("empty table".into()));
        }
        if n > opts.closure_bound {
            return Err(Error::ClosureBoundExceeded {
                bound: opts.closure_bound,
            });
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::FileFormat(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::FileFormat(format!(
                        "row {i} contains entry {x}, outside 0..{n}"
                    )));
                }
                flat.push(x as u32);
            }
        }
        Self::build(flat, n, opts.check_associativity)
    }

    /// Close a set of permutation generators of the given degree under
    /// composition. Elements are indexed in first-discovered breadth-first
    /// order from the identity, which makes every downstream output
    /// reproducible.
    pub fn from_permutation_generators(degree: usize, gens: &[Vec<usize>]) -> Result<Self> {
        Self::from_permutation_generators_with(degree, gens, &BuildOptions::default())
    }

    pub fn from_permutation_generators_with(
        degree: usize,
        gens: &[Vec<usize>],
        opts: &BuildOptions,
    ) -> Result<Self> {
        for (gi, g) in gens.iter().enumerate() {
            if g.len() != degree || !is_permutation(g) {
                return Err(Error::NotAPermutation {
                    generator: gi,
                    degree,
                });
            }
        }

        let identity: Vec<usize> = (0..degree).collect();
        let mut elems: Vec<Vec<usize>> = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(identity, 0);

        let mut head = 0;
        while head < elems.len() {
            for g in gens {
                let prod = compose(&elems[head], g);
                if !index.contains_key(&prod) {
                    if elems.len() >= opts.closure_bound {
                        return Err(Error::ClosureBoundExceeded {
                            bound: opts.closure_bound,
                        });
                    }
                    index.insert(prod.clone(), elems.len());
                    elems.push(prod);
                }
            }
            head += 1;
        }

        let n = elems.len();
        let mut flat = Vec::with_capacity(n * n);
        for a in &elems {
            for b in &elems {
                flat.push(index[&compose(a, b)] as u32);
            }
        }
        // Closure of permutations under composition is associative by
        // construction; skip the triple scan.
        Self::build(flat, n, false)
    }

    /// Z_n.
    pub fn cyclic(n: usize) -> Result<Self> {
        require_positive(n, "cyclic order")?;
        Self::from_family_table(n, |a, b| (a + b) % n)
    }

    /// Dihedral group of order 2n (symmetries of the regular n-gon for
    /// n >= 3). Element j*n + i encodes r^i s^j.
    pub fn dihedral(n: usize) -> Result<Self> {
        require_positive(n, "dihedral parameter")?;
        Self::from_family_table(2 * n, |x, y| {
            let (i1, j1) = (x % n, x / n);
            let (i2, j2) = (y % n, y / n);
            let i = if j1 == 0 { (i1 + i2) % n } else { (i1 + n - i2) % n };
            let j = (j1 + j2) % 2;
            j * n + i
        })
    }

    /// Dicyclic group of order 4n: <a, b | a^(2n) = 1, b^2 = a^n,
    /// b a b^-1 = a^-1>. Element j*2n + i encodes a^i b^j. Dic_2 is the
    /// quaternion group Q8.
    pub fn dicyclic(n: usize) -> Result<Self> {
        require_positive(n, "dicyclic parameter")?;
        let m = 2 * n;
        Self::from_family_table(4 * n, move |x, y| {
            let (i1, j1) = (x % m, x / m);
            let (i2, j2) = (y % m, y / m);
            let mut i = if j1 == 0 { i1 + i2 } else { i1 + m - i2 };
            if j1 + j2 == 2 {
                i += n;
            }
            (j1 + j2) % 2 * m + i % m
        })
    }

    /// Symmetric group on k points, built from a transposition and a k-cycle.
    pub fn symmetric(k: usize) -> Result<Self> {
        Self::symmetric_with(k, &BuildOptions::default())
    }

    pub fn symmetric_with(k: usize, opts: &BuildOptions) -> Result<Self> {
        require_positive(k, "symmetric degree")?;
        if k == 1 {
            return Self::cyclic(1);
        }
        let mut gens = vec![swap_first_two(k)];
        if k > 2 {
            gens.push(full_cycle(k, 0));
        }
        Self::from_permutation_generators_with(k, &gens, opts)
    }

    /// Alternating group on k points, built from a 3-cycle and a long even
    /// cycle.
    pub fn alternating(k: usize) -> Result<Self> {
        Self::alternating_with(k, &BuildOptions::default())
    }

    pub fn alternating_with(k: usize, opts: &BuildOptions) -> Result<Self> {
        require_positive(k, "alternating degree")?;
        if k <= 2 {
            return Self::cyclic(1);
        }
        let mut three_cycle: Vec<usize> = (0..k).collect();
        three_cycle[0] = 1;
        three_cycle[1] = 2;
        three_cycle[2] = 0;
        let mut gens = vec![three_cycle];
        if k > 3 {
            // A full cycle is even exactly when k is odd; for even k use a
            // (k-1)-cycle fixing the first point.
            gens.push(if k % 2 == 1 {
                full_cycle(k, 0)
            } else {
                full_cycle(k, 1)
            });
        }
        Self::from_permutation_generators_with(k, &gens, opts)
    }

    /// Z_m ⋊ Z_n with the action x -> kx:
    /// (a1, b1)(a2, b2) = (a1 + k^b1 * a2 mod m, b1 + b2 mod n).
    /// Requires gcd(k, m) = 1 and k^n ≡ 1 (mod m). Element b*m + a.
    pub fn semidirect_cyclic(m: usize, n: usize, k: usize) -> Result<Self> {
        require_positive(m, "semidirect modulus")?;
        require_positive(n, "semidirect cofactor order")?;
        require_positive(k, "semidirect action")?;
        let km = (k % m) as u64;
        if m > 1 && gcd_u64(km, m as u64) != 1 {
            return Err(Error::InvalidParameters(format!(
                "gcd({k}, {m}) != 1, action is not invertible"
            )));
        }
        // k^b mod m for b in 0..n, and the closing condition k^n = 1.
        let mut kpow = Vec::with_capacity(n);
        let mut acc = 1u64 % m as u64;
        for _ in 0..n {
            kpow.push(acc as usize);
            acc = acc * km % m as u64;
        }
        if m > 1 && acc != 1 {
            return Err(Error::InvalidParameters(format!(
                "{k}^{n} is not 1 mod {m}, the action does not close"
            )));
        }
        Self::from_family_table(m * n, move |x, y| {
            let (a1, b1) = (x % m, x / m);
            let (a2, b2) = (y % m, y / m);
            let a = (a1 + kpow[b1] * a2) % m;
            let b = (b1 + b2) % n;
            b * m + a
        })
    }

    /// Direct product with component-wise multiplication. Element indices
    /// are mixed-radix with the first factor fastest.
    pub fn direct_product(factors: &[FiniteGroup]) -> Result<Self> {
        Self::direct_product_with(factors, &BuildOptions::default())
    }

    pub fn direct_product_with(factors: &[FiniteGroup], opts: &BuildOptions) -> Result<Self> {
        let mut n = 1usize;
        for g in factors {
            n = n
                .checked_mul(g.order())
                .filter(|&n| n <= opts.closure_bound)
                .ok_or(Error::ClosureBoundExceeded {
                    bound: opts.closure_bound,
                })?;
        }
        let decode = |mut x: usize| -> Vec<usize> {
            factors
                .iter()
                .map(|g| {
                    let c = x % g.order();
                    x /= g.order();
                    c
                })
                .collect()
        };
        let mut flat = Vec::with_capacity(n * n);
        for x in 0..n {
            let xs = decode(x);
            for y in 0..n {
                let ys = decode(y);
                let mut idx = 0usize;
                for (g, (&cx, &cy)) in factors.iter().zip(xs.iter().zip(&ys)).rev() {
                    idx = idx * g.order() + g.mul(cx, cy);
                }
                flat.push(idx as u32);
            }
        }
        Self::build(flat, n, false)
    }

    fn from_family_table(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        if n > DEFAULT_CLOSURE_BOUND {
            return Err(Error::ClosureBoundExceeded {
                bound: DEFAULT_CLOSURE_BOUND,
            });
        }
        let mut flat = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                flat.push(f(a, b) as u32);
            }
        }
        // Family tables are groups by construction; the Latin, identity,
        // inverse and Lagrange checks still run.
        Self::build(flat, n, false)
    }

    /// Shared validating pipeline: Latin square, optional associativity
    /// scan, identity detection, two-sided inverses, cached element orders.
    fn build(table: Vec<u32>, n: usize, check_associativity: bool) -> Result<Self> {
        debug_assert_eq!(table.len(), n * n);
        let at = |a: usize, b: usize| table[a * n + b] as usize;

        // Latin square: every row and column is a permutation of 0..n-1.
        let mut seen = vec![false; n];
        for a in 0..n {
            seen.fill(false);
            for b in 0..n {
                let x = at(a, b);
                if seen[x] {
                    return Err(Error::NotLatinSquare {
                        kind: TableLine::Row,
                        index: a,
                    });
                }
                seen[x] = true;
            }
        }
        for b in 0..n {
            seen.fill(false);
            for a in 0..n {
                let x = at(a, b);
                if seen[x] {
                    return Err(Error::NotLatinSquare {
                        kind: TableLine::Column,
                        index: b,
                    });
                }
                seen[x] = true;
            }
        }

        if check_associativity {
            find_associativity_failure(&table, n)?;
        }

        // Identity: detected, not assumed at index 0.
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or(Error::NoIdentity)?;

        // Each row contains the identity exactly once (Latin), giving a right
        // inverse; require it to be two-sided.
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            let b = (0..n).find(|&b| at(a, b) == identity).expect("Latin row");
            if at(b, a) != identity {
                return Err(Error::NoInverse { element: a });
            }
            inverse[a] = b as u32;
        }

        let mut group = FiniteGroup {
            n,
            table,
            identity,
            inverse,
            elt_order: vec![0; n],
        };

        // Divisor descent over the factorization of n. A Lagrange screen
        // (a^n = identity) guards the skipped-associativity path: if it
        // fails, the table cannot be a group, and the full scan will name a
        // violating triple.
        let n64 = n as u64;
        let factors: Vec<u64> = factorize(n64).factors().iter().map(|&(p, _)| p).collect();
        for a in 0..n {
            if group.pow(a, n64) != identity {
                find_associativity_failure(&group.table, n)?;
                unreachable!("Latin associative table with identity violates Lagrange");
            }
            let mut t = n64;
            for &p in &factors {
                while t % p == 0 && group.pow(a, t / p) == identity {
                    t /= p;
                }
            }
            group.elt_order[a] = t as u32;
        }
        debug_assert_eq!(group.elt_order[identity], 1);

        Ok(group)
    }
}

fn require_positive(v: usize, what: &str) -> Result<()> {
    if v == 0 {
        Err(Error::InvalidParameters(format!("{what} must be positive")))
    } else {
        Ok(())
    }
}

fn find_associativity_failure(table: &[u32], n: usize) -> Result<()> {
    let at = |a: usize, b: usize| table[a * n + b] as usize;
    for a in 0..n {
        for b in 0..n {
            let ab = at(a, b);
            for c in 0..n {
                if at(ab, c) != at(a, at(b, c)) {
                    return Err(Error::NotAssociative { a, b, c });
                }
            }
        }
    }
    Ok(())
}

fn is_permutation(map: &[usize]) -> bool {
    let mut seen = vec![false; map.len()];
    map.iter().all(|&x| {
        if x >= map.len() || seen[x] {
            false
        } else {
            seen[x] = true;
            true
        }
    })
}

/// (p ∘ q)(x) = p(q(x)).
fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&x| p[x]).collect()
}

fn swap_first_two(k: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..k).collect();
    v.swap(0, 1);
    v
}

/// Cycle on points start..k, fixing everything before start.
fn full_cycle(k: usize, start: usize) -> Vec<usize> {
    (0..k)
        .map(|i| {
            if i < start {
                i
            } else if i + 1 < k {
                i + 1
            } else {
                start
            }
        })
        .collect()
}

/// Parse the Cayley file format: a line holding n, then n rows of n
/// whitespace-separated indices. Trailing garbage is rejected.
pub fn parse_cayley_text(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut lines = text.lines();
    let n: usize = lines
        .next()
        .ok_or_else(|| Error::FileFormat("missing order line".into()))?
        .trim()
        .parse()
        .map_err(|_| Error::FileFormat("first line must be the order n".into()))?;
    if n == 0 {
        return Err(Error::FileFormat("order must be positive".into()));
    }
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| Error::FileFormat(format!("expected {n} rows, found {i}")))?;
        let row: Vec<usize> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::FileFormat(format!("row {i}: bad entry `{tok}`")))
            })
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(Error::FileFormat(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        rows.push(row);
    }
    for rest in lines {
        if !rest.trim().is_empty() {
            return Err(Error::FileFormat(format!(
                "trailing garbage after table: `{}`",
                rest.trim()
            )));
        }
    }
    Ok(rows)
}

/// Emit the Cayley file format for a group; re-parsing and re-validating
/// this text reproduces the group.
pub fn cayley_text(g: &FiniteGroup) -> String {
    let mut out = String::new();
    out.push_str(&g.order().to_string());
    out.push('\n');
    for a in 0..g.order() {
        let row: Vec<String> = (0..g.order()).map(|b| g.mul(a, b).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parse the permutation file format: a line holding the degree d, then one
/// generator per line as d whitespace-separated images. Trailing garbage is
/// rejected; blank lines are allowed only at the end.
pub fn parse_perm_text(text: &str) -> Result<(usize, Vec<Vec<usize>>)> {
    let mut lines = text.lines();
    let degree: usize = lines
        .next()
        .ok_or_else(|| Error::FileFormat("missing degree line".into()))?
        .trim()
        .parse()
        .map_err(|_| Error::FileFormat("first line must be the degree d".into()))?;
    if degree == 0 {
        return Err(Error::FileFormat("degree must be positive".into()));
    }
    let mut gens = Vec::new();
    let mut blank_seen = false;
    for (ln, line) in lines.enumerate() {
        if line.trim().is_empty() {
            blank_seen = true;
            continue;
        }
        if blank_seen {
            return Err(Error::FileFormat(format!(
                "generator on line {} after blank line",
                ln + 2
            )));
        }
        let gen: Vec<usize> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::FileFormat(format!("bad image `{tok}` on line {}", ln + 2)))
            })
            .collect::<Result<_>>()?;
        if gen.len() != degree {
            return Err(Error::FileFormat(format!(
                "generator on line {} has {} images, expected {degree}",
                ln + 2,
                gen.len()
            )));
        }
        gens.push(gen);
    }
    Ok((degree, gens))
}
