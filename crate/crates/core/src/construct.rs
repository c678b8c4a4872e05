//! Hyperstructures built from finite groups: singleton embedding, the coset
//! hypergroup `G/H`, and the double coset polygroup `G//H`.

use std::collections::BTreeSet;

use crate::bundle::StructureBundle;
use crate::error::{Error, Result};
use crate::set::{CarrierIndex, ElementSet};
use crate::table::{check_names, HyperTable};

/// A finite group given by its Cayley table, validated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    names: Vec<String>,
    cayley: Vec<CarrierIndex>,
    identity: CarrierIndex,
    inverse: Vec<CarrierIndex>,
}

impl GroupTable {
    /// Validates the group axioms exhaustively and derives identity and inverses.
    pub fn new(names: Vec<String>, cayley: Vec<CarrierIndex>) -> Result<Self> {
        check_names(&names)?;
        let n = names.len();
        if cayley.len() != n * n {
            return Err(Error::InvalidGroup(format!(
                "Cayley table has {} entries, expected {}",
                cayley.len(),
                n * n
            )));
        }
        if let Some(&bad) = cayley.iter().find(|&&c| c >= n) {
            return Err(Error::InvalidGroup(format!("entry {bad} out of range")));
        }
        let mul = |a: usize, b: usize| cayley[a * n + b];
        for (a, name) in names.iter().enumerate() {
            let row: ElementSet = (0..n).map(|b| mul(a, b)).collect();
            if row != ElementSet::full(n) {
                return Err(Error::InvalidGroup(format!(
                    "row {name} is not a permutation"
                )));
            }
            let col: ElementSet = (0..n).map(|b| mul(b, a)).collect();
            if col != ElementSet::full(n) {
                return Err(Error::InvalidGroup(format!(
                    "column {name} is not a permutation"
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "({a}{b}){c} ≠ {a}({b}{c})",
                            a = names[a],
                            b = names[b],
                            c = names[c]
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul(e, x) == x && mul(x, e) == x))
            .ok_or_else(|| Error::InvalidGroup("no identity".into()))?;
        let inverse = (0..n)
            .map(|x| (0..n).find(|&y| mul(x, y) == identity).unwrap())
            .collect();
        Ok(GroupTable {
            names,
            cayley,
            identity,
            inverse,
        })
    }

    /// Reads a group from a bundle whose table is all-singleton and which names
    /// its identity and inverse; both are checked against the derived ones.
    pub fn from_bundle(b: &StructureBundle) -> Result<Self> {
        let t = &b.table;
        let mut cayley = Vec::with_capacity(t.order() * t.order());
        for x in 0..t.order() {
            for y in 0..t.order() {
                let c = t.cell(x, y);
                if c.len() != 1 {
                    return Err(Error::InvalidGroup(format!(
                        "cell ({}, {}) is not a singleton",
                        t.name(x),
                        t.name(y)
                    )));
                }
                cayley.push(c.first().unwrap());
            }
        }
        let g = GroupTable::new(t.names().to_vec(), cayley)?;
        match b.identity {
            Some(e) if e == g.identity => {}
            Some(e) => {
                return Err(Error::InvalidGroup(format!(
                    "declared identity {} is not the identity",
                    t.name(e)
                )))
            }
            None => {
                return Err(Error::InvalidGroup(
                    "group file must name its identity".into(),
                ))
            }
        }
        match &b.inverse {
            Some(inv) if *inv == g.inverse => {}
            Some(_) => return Err(Error::InvalidGroup("declared inverse map is wrong".into())),
            None => {
                return Err(Error::InvalidGroup(
                    "group file must give its inverse map".into(),
                ))
            }
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    #[inline]
    pub fn mul(&self, a: CarrierIndex, b: CarrierIndex) -> CarrierIndex {
        self.cayley[a * self.order() + b]
    }

    pub fn identity(&self) -> CarrierIndex {
        self.identity
    }

    pub fn inverse(&self, a: CarrierIndex) -> CarrierIndex {
        self.inverse[a]
    }

    pub fn inverses(&self) -> &[CarrierIndex] {
        &self.inverse
    }

    pub fn index_of(&self, label: &str) -> Option<CarrierIndex> {
        self.names.iter().position(|n| n == label)
    }

    /// Setwise product `A·B`.
    pub fn mul_sets(&self, a: ElementSet, b: ElementSet) -> ElementSet {
        a.iter()
            .flat_map(|x| b.iter().map(move |y| (x, y)))
            .map(|(x, y)| self.mul(x, y))
            .collect()
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: ElementSet) -> ElementSet {
        let mut s = gens | ElementSet::singleton(self.identity);
        loop {
            let next = s | self.mul_sets(s, s);
            if next == s {
                return s;
            }
            s = next;
        }
    }

    /// The group as a bundle: singleton table plus identity and inverse.
    pub fn to_bundle(&self, name: impl Into<String>) -> StructureBundle {
        StructureBundle::new(name, from_cayley_table(self))
            .with_identity(self.identity)
            .with_inverse(self.inverse.clone())
    }
}

/// A subset of a group's carrier claimed to be a subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubgroupSpec {
    pub members: ElementSet,
}

impl SubgroupSpec {
    pub fn new(members: ElementSet) -> Self {
        SubgroupSpec { members }
    }

    pub fn from_labels<S: AsRef<str>>(g: &GroupTable, labels: &[S]) -> Result<Self> {
        let mut members = ElementSet::EMPTY;
        for l in labels {
            let l = l.as_ref().trim();
            let i = g.index_of(l).ok_or_else(|| Error::UnknownElement {
                label: l.to_string(),
                location: "subgroup".into(),
            })?;
            members.insert(i);
        }
        Ok(SubgroupSpec { members })
    }

    /// Checks identity, closure under products, and closure under inverses.
    pub fn validate(&self, g: &GroupTable) -> Result<()> {
        let h = self.members;
        if !h.fits(g.order()) {
            return Err(Error::NotSubgroup("members outside the group".into()));
        }
        if !h.contains(g.identity()) {
            return Err(Error::NotSubgroup(format!(
                "identity {} missing",
                g.names()[g.identity()]
            )));
        }
        for a in h {
            for b in h {
                let ab = g.mul(a, b);
                if !h.contains(ab) {
                    return Err(Error::NotSubgroup(format!(
                        "{}·{} = {} is not a member",
                        g.names()[a],
                        g.names()[b],
                        g.names()[ab]
                    )));
                }
            }
            if !h.contains(g.inverse(a)) {
                return Err(Error::NotSubgroup(format!(
                    "inverse of {} is not a member",
                    g.names()[a]
                )));
            }
        }
        Ok(())
    }
}

/// Splits a member list on commas outside parentheses, so `(0,1),(1,0)`
/// gives two labels.
pub fn split_labels(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    out.push(cur);
    out.into_iter()
        .map(|l| l.trim().to_string())
        .filter(|l| !l.is_empty())
        .collect()
}

/// All subgroups, found as iterated joins of cyclic subgroups; sorted by bits.
pub fn subgroups(g: &GroupTable) -> Vec<SubgroupSpec> {
    let cyclic: BTreeSet<ElementSet> = (0..g.order())
        .map(|x| g.closure(ElementSet::singleton(x)))
        .collect();
    let mut all = cyclic.clone();
    let mut frontier: Vec<ElementSet> = cyclic.iter().copied().collect();
    while let Some(h) = frontier.pop() {
        for &c in &cyclic {
            let j = g.closure(h | c);
            if all.insert(j) {
                frontier.push(j);
            }
        }
    }
    all.into_iter().map(SubgroupSpec::new).collect()
}

/// Embeds a group as the all-singleton hypertable `a·b = {ab}`.
pub fn from_cayley_table(g: &GroupTable) -> HyperTable {
    HyperTable::from_fn(g.names().to_vec(), |a, b| {
        ElementSet::singleton(g.mul(a, b))
    })
    .expect("group carrier is valid")
}

/// Partition of the carrier into blocks, ordered by smallest member.
fn blocks(n: usize, mut block_of: impl FnMut(CarrierIndex) -> ElementSet) -> Vec<ElementSet> {
    let mut seen = ElementSet::EMPTY;
    let mut out = Vec::new();
    for x in 0..n {
        if !seen.contains(x) {
            let b = block_of(x);
            seen |= b;
            out.push(b);
        }
    }
    out
}

fn block_index(blocks: &[ElementSet], x: CarrierIndex) -> usize {
    blocks
        .iter()
        .position(|b| b.contains(x))
        .expect("blocks cover the group")
}

/// Left cosets `G/H` with `aH ∘ bH = {cH : c ∈ aH·bH}`.
///
/// Cosets are named `xH` after their smallest member `x`.
pub fn quotient_hypergroup(g: &GroupTable, h: &SubgroupSpec) -> Result<HyperTable> {
    h.validate(g)?;
    let cosets = blocks(g.order(), |x| {
        g.mul_sets(ElementSet::singleton(x), h.members)
    });
    let names = cosets
        .iter()
        .map(|c| format!("{}H", g.names()[c.first().unwrap()]))
        .collect();
    HyperTable::from_fn(names, |i, j| {
        g.mul_sets(cosets[i], cosets[j])
            .iter()
            .map(|c| block_index(&cosets, c))
            .collect()
    })
}

/// Double cosets `G//H` with `Hg₁H ∗ Hg₂H = {Hg₁hg₂H : h ∈ H}`, identity `H`
/// and inverse `HgH ↦ Hg⁻¹H`. Double cosets are named `HxH` after their
/// smallest member `x`.
pub fn double_coset_algebra(g: &GroupTable, h: &SubgroupSpec) -> Result<StructureBundle> {
    h.validate(g)?;
    let hs = h.members;
    let dcs = blocks(g.order(), |x| {
        g.mul_sets(g.mul_sets(hs, ElementSet::singleton(x)), hs)
    });
    let rep = |i: usize| dcs[i].first().unwrap();
    let names: Vec<String> = dcs
        .iter()
        .map(|c| format!("H{}H", g.names()[c.first().unwrap()]))
        .collect();
    let table = HyperTable::from_fn(names, |i, j| {
        let (g1, g2) = (rep(i), rep(j));
        hs.iter()
            .map(|k| block_index(&dcs, g.mul(g.mul(g1, k), g2)))
            .collect()
    })?;
    let identity = block_index(&dcs, g.identity());
    let inverse = (0..dcs.len())
        .map(|i| block_index(&dcs, g.inverse(rep(i))))
        .collect();
    Ok(StructureBundle::new("G//H", table)
        .with_identity(identity)
        .with_inverse(inverse))
}

/// Small groups used by tests, examples and the acceptance suite.
pub mod groups {
    use super::*;

    pub fn cyclic(n: usize) -> GroupTable {
        let names = (0..n).map(|i| i.to_string()).collect();
        let cayley = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        GroupTable::new(names, cayley).expect("cyclic group")
    }

    /// Direct product with elements named `(a,b)`, ordered lexicographically.
    pub fn direct_product(g: &GroupTable, h: &GroupTable) -> GroupTable {
        let (m, n) = (g.order(), h.order());
        let names = (0..m * n)
            .map(|k| format!("({},{})", g.names()[k / n], h.names()[k % n]))
            .collect();
        let cayley = (0..m * n * m * n)
            .map(|k| {
                let (x, y) = (k / (m * n), k % (m * n));
                g.mul(x / n, y / n) * n + h.mul(x % n, y % n)
            })
            .collect();
        GroupTable::new(names, cayley).expect("direct product")
    }

    /// Permutations in cycle notation on points `1..=degree`; identity is `id`.
    pub fn cycle_name(p: &[usize]) -> String {
        let mut seen = vec![false; p.len()];
        let mut out = String::new();
        for start in 0..p.len() {
            if seen[start] || p[start] == start {
                continue;
            }
            out.push('(');
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                out.push_str(&(x + 1).to_string());
                x = p[x];
            }
            out.push(')');
        }
        if out.is_empty() {
            "id".into()
        } else {
            out
        }
    }

    /// Permutation group generated by `gens` (images of `0..degree`).
    /// Elements are sorted lexicographically by image list, so `id` comes first.
    pub fn permutation_group(gens: &[Vec<usize>]) -> GroupTable {
        let degree = gens.first().map_or(0, Vec::len);
        let compose = |p: &[usize], q: &[usize]| -> Vec<usize> {
            // apply p, then q
            (0..degree).map(|i| q[p[i]]).collect()
        };
        let mut elems: BTreeSet<Vec<usize>> = BTreeSet::new();
        elems.insert((0..degree).collect());
        let mut frontier: Vec<Vec<usize>> = elems.iter().cloned().collect();
        while let Some(p) = frontier.pop() {
            for g in gens {
                let r = compose(&p, g);
                if elems.insert(r.clone()) {
                    frontier.push(r);
                }
            }
        }
        let elems: Vec<Vec<usize>> = elems.into_iter().collect();
        let index = |p: &Vec<usize>| elems.iter().position(|q| q == p).unwrap();
        let n = elems.len();
        let cayley = (0..n * n)
            .map(|k| index(&compose(&elems[k / n], &elems[k % n])))
            .collect();
        let names = elems.iter().map(|p| cycle_name(p)).collect();
        GroupTable::new(names, cayley).expect("permutation group")
    }

    /// `S_n` for `n ≤ 4`.
    pub fn symmetric(n: usize) -> GroupTable {
        assert!((1..=4).contains(&n), "symmetric groups up to degree 4");
        if n == 1 {
            return permutation_group(&[vec![0]]);
        }
        let swap: Vec<usize> = (0..n)
            .map(|i| match i {
                0 => 1,
                1 => 0,
                _ => i,
            })
            .collect();
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        permutation_group(&[swap, cycle])
    }

    /// Dihedral group of order `2n` acting on an `n`-gon.
    pub fn dihedral(n: usize) -> GroupTable {
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        permutation_group(&[rot, refl])
    }

    /// Quaternion group `{±1, ±i, ±j, ±k}`.
    pub fn quaternion() -> GroupTable {
        // unit index 0..4 = 1, i, j, k; element = (sign, unit)
        const TABLE: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        let units = ["1", "i", "j", "k"];
        let names = (0..8)
            .map(|e| format!("{}{}", if e >= 4 { "-" } else { "" }, units[e % 4]))
            .collect();
        let cayley = (0..64)
            .map(|k| {
                let (x, y) = (k / 8, k % 8);
                let (neg, u) = TABLE[x % 4][y % 4];
                let neg = neg ^ (x >= 4) ^ (y >= 4);
                u + if neg { 4 } else { 0 }
            })
            .collect();
        GroupTable::new(names, cayley).expect("quaternion group")
    }

    /// One representative of every isomorphism class of groups of order 1–8.
    pub fn all_up_to_order_8() -> Vec<(&'static str, GroupTable)> {
        let z2 = cyclic(2);
        vec![
            ("Z1", cyclic(1)),
            ("Z2", cyclic(2)),
            ("Z3", cyclic(3)),
            ("Z4", cyclic(4)),
            ("Z2xZ2", direct_product(&z2, &z2)),
            ("Z5", cyclic(5)),
            ("Z6", cyclic(6)),
            ("S3", symmetric(3)),
            ("Z7", cyclic(7)),
            ("Z8", cyclic(8)),
            ("Z4xZ2", direct_product(&cyclic(4), &z2)),
            ("Z2xZ2xZ2", direct_product(&direct_product(&z2, &z2), &z2)),
            ("D4", dihedral(4)),
            ("Q8", quaternion()),
        ]
    }
}
