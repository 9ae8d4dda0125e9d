//! Group specifications: a small constructor algebra over the built-in
//! families plus external Cayley/permutation files, with a terse
//! shell-friendly string grammar.
//!
//! Grammar: `Z12`, `D6` (dihedral, order 12), `Dic3` (order 12), `Q8`
//! (quaternion, alias for `Dic2`), `S4`, `A5`, `Ab[6,2]`, `SD[7,3,2]`,
//! `x`-joined products such as `Z3xZ3`, and `@file.cayley` / `@file.perms`.

use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::{parse_cayley_text, parse_perm_text, BuildOptions, FiniteGroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    /// Direct product of cyclic groups of the listed orders.
    Abelian(Vec<usize>),
    /// Order 2n.
    Dihedral(usize),
    /// Order 4n; `Dicyclic(2)` is Q8.
    Dicyclic(usize),
    Symmetric(usize),
    Alternating(usize),
    /// `SemidirectCyclic(m, n, k)`: Z_m ⋊ Z_n with the action x -> kx.
    SemidirectCyclic(usize, usize, usize),
    Product(Vec<GroupSpec>),
    CayleyFile(PathBuf),
    PermFile(PathBuf),
}

impl GroupSpec {
    /// Canonical display label, also accepted back by the parser (file specs
    /// round-trip through `@path`).
    pub fn label(&self) -> String {
        match self {
            GroupSpec::Cyclic(n) => format!("Z{n}"),
            GroupSpec::Abelian(fs) => fs
                .iter()
                .map(|f| format!("Z{f}"))
                .collect::<Vec<_>>()
                .join("x"),
            GroupSpec::Dihedral(n) => format!("D{n}"),
            GroupSpec::Dicyclic(2) => "Q8".to_string(),
            GroupSpec::Dicyclic(n) => format!("Dic{n}"),
            GroupSpec::Symmetric(k) => format!("S{k}"),
            GroupSpec::Alternating(k) => format!("A{k}"),
            GroupSpec::SemidirectCyclic(m, n, k) => format!("SD[{m},{n},{k}]"),
            GroupSpec::Product(ps) => ps
                .iter()
                .map(|p| p.label())
                .collect::<Vec<_>>()
                .join("x"),
            GroupSpec::CayleyFile(p) | GroupSpec::PermFile(p) => format!("@{}", p.display()),
        }
    }

    pub fn construct(&self) -> Result<FiniteGroup> {
        self.construct_with(&BuildOptions::default())
    }

    pub fn construct_with(&self, opts: &BuildOptions) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Cyclic(n) => FiniteGroup::cyclic(*n),
            GroupSpec::Abelian(fs) => {
                if fs.is_empty() {
                    return Err(Error::InvalidParameters(
                        "abelian spec needs at least one factor".into(),
                    ));
                }
                let factors: Vec<FiniteGroup> = fs
                    .iter()
                    .map(|&f| FiniteGroup::cyclic(f))
                    .collect::<Result<_>>()?;
                FiniteGroup::direct_product_with(&factors, opts)
            }
            GroupSpec::Dihedral(n) => FiniteGroup::dihedral(*n),
            GroupSpec::Dicyclic(n) => FiniteGroup::dicyclic(*n),
            GroupSpec::Symmetric(k) => FiniteGroup::symmetric_with(*k, opts),
            GroupSpec::Alternating(k) => FiniteGroup::alternating_with(*k, opts),
            GroupSpec::SemidirectCyclic(m, n, k) => FiniteGroup::semidirect_cyclic(*m, *n, *k),
            GroupSpec::Product(ps) => {
                let factors: Vec<FiniteGroup> = ps
                    .iter()
                    .map(|p| p.construct_with(opts))
                    .collect::<Result<_>>()?;
                FiniteGroup::direct_product_with(&factors, opts)
            }
            GroupSpec::CayleyFile(path) => {
                let text = std::fs::read_to_string(path)?;
                let rows = parse_cayley_text(&text)?;
                FiniteGroup::from_cayley_table_with(&rows, opts)
            }
            GroupSpec::PermFile(path) => {
                let text = std::fs::read_to_string(path)?;
                let (degree, gens) = parse_perm_text(&text)?;
                FiniteGroup::from_permutation_generators_with(degree, &gens, opts)
            }
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::BadGroupSpec {
            spec: s.to_string(),
            reason: reason.to_string(),
        };

        if let Some(path) = s.strip_prefix('@') {
            return if path.ends_with(".cayley") {
                Ok(GroupSpec::CayleyFile(PathBuf::from(path)))
            } else if path.ends_with(".perms") {
                Ok(GroupSpec::PermFile(PathBuf::from(path)))
            } else {
                Err(bad("group files must end in .cayley or .perms"))
            };
        }

        let parts = split_product(s).ok_or_else(|| bad("unbalanced brackets"))?;
        if parts.is_empty() {
            return Err(bad("empty spec"));
        }
        let atoms: Vec<GroupSpec> = parts
            .into_iter()
            .map(|atom| parse_atom(atom).ok_or_else(|| bad(&format!("bad factor `{atom}`"))))
            .collect::<Result<_>>()?;
        if atoms.len() == 1 {
            Ok(atoms.into_iter().next().unwrap())
        } else {
            Ok(GroupSpec::Product(atoms))
        }
    }
}

/// Split on `x` at bracket depth zero.
fn split_product(s: &str) -> Option<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            'x' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return None;
    }
    parts.push(&s[start..]);
    Some(parts)
}

fn parse_atom(atom: &str) -> Option<GroupSpec> {
    let positive = |v: &str| v.parse::<usize>().ok().filter(|&n| n > 0);

    if let Some(body) = atom.strip_prefix("Ab[").and_then(|r| r.strip_suffix(']')) {
        let factors: Option<Vec<usize>> = body.split(',').map(|t| positive(t.trim())).collect();
        let factors = factors?;
        if factors.is_empty() {
            return None;
        }
        return Some(GroupSpec::Abelian(factors));
    }
    if let Some(body) = atom.strip_prefix("SD[").and_then(|r| r.strip_suffix(']')) {
        let params: Option<Vec<usize>> = body.split(',').map(|t| positive(t.trim())).collect();
        let params = params?;
        if params.len() != 3 {
            return None;
        }
        return Some(GroupSpec::SemidirectCyclic(params[0], params[1], params[2]));
    }
    if let Some(rest) = atom.strip_prefix("Dic") {
        return Some(GroupSpec::Dicyclic(positive(rest)?));
    }
    if let Some(rest) = atom.strip_prefix('Q') {
        // Generalized quaternion / dicyclic named by order: Q8 = Dic2.
        let order = positive(rest)?;
        if order % 4 != 0 || order < 8 {
            return None;
        }
        return Some(GroupSpec::Dicyclic(order / 4));
    }
    if let Some(rest) = atom.strip_prefix('Z') {
        return Some(GroupSpec::Cyclic(positive(rest)?));
    }
    if let Some(rest) = atom.strip_prefix('D') {
        return Some(GroupSpec::Dihedral(positive(rest)?));
    }
    if let Some(rest) = atom.strip_prefix('S') {
        return Some(GroupSpec::Symmetric(positive(rest)?));
    }
    if let Some(rest) = atom.strip_prefix('A') {
        return Some(GroupSpec::Alternating(positive(rest)?));
    }
    None
}
