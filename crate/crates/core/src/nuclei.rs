//! First through fourth left, middle and right nuclei.
//!
//! The `i`-th nucleus on a side is the set of `a` for which an association
//! equation holds with the other two arguments ranging over elements
//! (`i = 1`), over subsets in the first free position (`i = 2`), in the second
//! (`i = 3`), or in both (`i = 4`). The arguments are placed as
//!
//! | side   | equation                  |
//! |--------|---------------------------|
//! | left   | `a·(P·Q) = (a·P)·Q`       |
//! | middle | `(P·a)·Q = P·(a·Q)`       |
//! | right  | `(P·Q)·a = P·(Q·a)`       |
//!
//! Under the union extension every such equation is a union of its
//! singleton instances, so all four orders agree with the first. The default
//! path exploits this; [`nucleus_bruteforce`] enumerates the subsets
//! literally and serves as the independent check.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::set::ElementSet;
use crate::table::HyperTable;

/// Default carrier-order cap for [`nucleus_bruteforce`].
pub const DEFAULT_SUBSET_CAP: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum NucleusOrder {
    First = 1,
    Second = 2,
    Third = 3,
    Fourth = 4,
}

impl NucleusOrder {
    pub const ALL: [NucleusOrder; 4] = [
        NucleusOrder::First,
        NucleusOrder::Second,
        NucleusOrder::Third,
        NucleusOrder::Fourth,
    ];

    pub fn new(i: u8) -> Result<Self> {
        match i {
            1 => Ok(NucleusOrder::First),
            2 => Ok(NucleusOrder::Second),
            3 => Ok(NucleusOrder::Third),
            4 => Ok(NucleusOrder::Fourth),
            _ => Err(Error::InvalidSpec(format!(
                "nucleus order {i} not in 1..=4"
            ))),
        }
    }

    pub fn get(self) -> u8 {
        self as u8
    }

    fn index(self) -> usize {
        self as usize - 1
    }

    /// Which free positions range over subsets: (first, second).
    fn subset_positions(self) -> (bool, bool) {
        match self {
            NucleusOrder::First => (false, false),
            NucleusOrder::Second => (true, false),
            NucleusOrder::Third => (false, true),
            NucleusOrder::Fourth => (true, true),
        }
    }
}

impl fmt::Display for NucleusOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.get())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NucleusSide {
    Left,
    Middle,
    Right,
}

impl NucleusSide {
    pub const ALL: [NucleusSide; 3] = [NucleusSide::Left, NucleusSide::Middle, NucleusSide::Right];

    pub fn as_str(self) -> &'static str {
        match self {
            NucleusSide::Left => "left",
            NucleusSide::Middle => "middle",
            NucleusSide::Right => "right",
        }
    }

    fn index(self) -> usize {
        self as usize
    }

    /// Both sides of the defining equation with `a` in this side's slot.
    #[inline]
    fn sides(
        self,
        t: &HyperTable,
        a: ElementSet,
        p: ElementSet,
        q: ElementSet,
    ) -> (ElementSet, ElementSet) {
        match self {
            NucleusSide::Left => (
                t.set_product(a, t.set_product(p, q)),
                t.set_product(t.set_product(a, p), q),
            ),
            NucleusSide::Middle => (
                t.set_product(t.set_product(p, a), q),
                t.set_product(p, t.set_product(a, q)),
            ),
            NucleusSide::Right => (
                t.set_product(t.set_product(p, q), a),
                t.set_product(p, t.set_product(q, a)),
            ),
        }
    }
}

impl fmt::Display for NucleusSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for NucleusSide {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "left" | "l" | "lambda" | "λ" => Ok(NucleusSide::Left),
            "middle" | "m" | "mu" | "μ" => Ok(NucleusSide::Middle),
            "right" | "r" | "rho" | "ρ" => Ok(NucleusSide::Right),
            _ => Err(Error::InvalidSpec(format!("unknown nucleus side {s:?}"))),
        }
    }
}

/// Element-quantified membership test for `a`.
fn is_nuclear(t: &HyperTable, side: NucleusSide, a: usize) -> bool {
    let n = t.order();
    let sa = ElementSet::singleton(a);
    (0..n).all(|x| {
        let sx = ElementSet::singleton(x);
        (0..n).all(|y| {
            let (l, r) = side.sides(t, sa, sx, ElementSet::singleton(y));
            l == r
        })
    })
}

/// The `order`-th nucleus on `side`.
///
/// Order 1 is computed from its definition; orders 2–4 use the singleton
/// reduction (see the module docs) and can be cross-checked with
/// [`nucleus_bruteforce`].
pub fn nucleus(t: &HyperTable, _order: NucleusOrder, side: NucleusSide) -> ElementSet {
    let members: Vec<usize> = (0..t.order())
        .into_par_iter()
        .filter(|&a| is_nuclear(t, side, a))
        .collect();
    members.into_iter().collect()
}

/// `N^i = N^i_left ∩ N^i_middle ∩ N^i_right`.
pub fn nucleus_intersection(t: &HyperTable, order: NucleusOrder) -> ElementSet {
    NucleusSide::ALL
        .iter()
        .fold(t.carrier(), |acc, &s| acc & nucleus(t, order, s))
}

/// Literal enumeration of every non-empty subset in each subset-valued
/// position. Rejects tables of order above `cap`.
pub fn nucleus_bruteforce(
    t: &HyperTable,
    order: NucleusOrder,
    side: NucleusSide,
    cap: usize,
) -> Result<ElementSet> {
    if order == NucleusOrder::First {
        return Ok(nucleus(t, order, side));
    }
    let n = t.order();
    if n > cap {
        return Err(Error::BudgetExceeded { order: n, cap });
    }
    let singletons: Vec<ElementSet> = (0..n).map(ElementSet::singleton).collect();
    let subsets: Vec<ElementSet> = ElementSet::nonempty_subsets(n).collect();
    let (p_sub, q_sub) = order.subset_positions();
    let ps = if p_sub { &subsets } else { &singletons };
    let qs = if q_sub { &subsets } else { &singletons };
    let members: Vec<usize> = (0..n)
        .into_par_iter()
        .filter(|&a| {
            let sa = ElementSet::singleton(a);
            ps.iter().all(|&p| {
                qs.iter().all(|&q| {
                    let (l, r) = side.sides(t, sa, p, q);
                    l == r
                })
            })
        })
        .collect();
    Ok(members.into_iter().collect())
}

/// How a nucleus set was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    FastPath,
    BruteForce,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct NucleusEntry {
    pub set: ElementSet,
    pub method: Method,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PartialEq for NucleusEntry {
    fn eq(&self, other: &Self) -> bool {
        self.set == other.set && self.method == other.method
    }
}

/// All twelve side nuclei and the four intersections.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NucleusReport {
    /// `entries[i-1][side]`; `None` for orders that were not requested.
    pub entries: [[Option<NucleusEntry>; 3]; 4],
    pub intersections: [Option<ElementSet>; 4],
}

impl NucleusReport {
    pub fn get(&self, order: NucleusOrder, side: NucleusSide) -> Option<ElementSet> {
        self.entries[order.index()][side.index()].map(|e| e.set)
    }

    pub fn entry(&self, order: NucleusOrder, side: NucleusSide) -> Option<&NucleusEntry> {
        self.entries[order.index()][side.index()].as_ref()
    }

    pub fn intersection(&self, order: NucleusOrder) -> Option<ElementSet> {
        self.intersections[order.index()]
    }
}

/// Strategy for orders 2–4.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Fast,
    Brute { cap: usize },
}

pub fn nucleus_report(
    t: &HyperTable,
    orders: &[NucleusOrder],
    strategy: Strategy,
) -> Result<NucleusReport> {
    let mut report = NucleusReport {
        entries: [[None; 3]; 4],
        intersections: [None; 4],
    };
    for &order in orders {
        let mut inter = t.carrier();
        for side in NucleusSide::ALL {
            let start = Instant::now();
            let (set, method) = match strategy {
                Strategy::Brute { cap } if order != NucleusOrder::First => {
                    (nucleus_bruteforce(t, order, side, cap)?, Method::BruteForce)
                }
                _ => (nucleus(t, order, side), Method::FastPath),
            };
            inter &= set;
            report.entries[order.index()][side.index()] = Some(NucleusEntry {
                set,
                method,
                elapsed: start.elapsed(),
            });
        }
        report.intersections[order.index()] = Some(inter);
    }
    Ok(report)
}

/// Left, middle and right nuclei of an ordinary groupoid, computed on the
/// underlying binary operation.
pub fn classical_nuclei(t: &HyperTable) -> Result<[ElementSet; 3]> {
    let n = t.order();
    let mut op = vec![0usize; n * n];
    for x in 0..n {
        for y in 0..n {
            let c = t.cell(x, y);
            if c.len() != 1 {
                return Err(Error::NotClassical { row: x, col: y });
            }
            op[x * n + y] = c.first().unwrap();
        }
    }
    let mul = |x: usize, y: usize| op[x * n + y];
    let pairs = || (0..n).flat_map(|x| (0..n).map(move |y| (x, y)));
    let collect = |pred: &dyn Fn(usize, usize, usize) -> bool| -> ElementSet {
        (0..n)
            .filter(|&a| pairs().all(|(x, y)| pred(a, x, y)))
            .collect()
    };
    Ok([
        collect(&|a, x, y| mul(a, mul(x, y)) == mul(mul(a, x), y)),
        collect(&|a, x, y| mul(mul(x, a), y) == mul(x, mul(a, y))),
        collect(&|a, x, y| mul(mul(x, y), a) == mul(x, mul(y, a))),
    ])
}

/// One containment `sub ⊆ sup` between nuclei.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clause {
    /// `None` for the intersection nuclei.
    pub side: Option<NucleusSide>,
    pub sub_order: NucleusOrder,
    pub sup_order: NucleusOrder,
    pub sub: ElementSet,
    pub sup: ElementSet,
    pub holds: bool,
}

impl Clause {
    pub fn label(&self) -> String {
        let side = self.side.map_or("", |s| s.as_str());
        let sep = if self.side.is_some() { "_" } else { "" };
        format!(
            "N{}{sep}{side} ⊆ N{}{sep}{side}",
            self.sub_order, self.sup_order
        )
    }
}

/// Verdicts for the twenty containments between nucleus orders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub clauses: Vec<Clause>,
}

impl TheoremReport {
    pub fn all_hold(&self) -> bool {
        self.clauses.iter().all(|c| c.holds)
    }

    pub fn violations(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter().filter(|c| !c.holds)
    }
}

/// The (sub, sup) order pairs checked for each side and for the intersections.
pub const CONTAINMENTS: [(NucleusOrder, NucleusOrder); 5] = [
    (NucleusOrder::First, NucleusOrder::Second),
    (NucleusOrder::First, NucleusOrder::Third),
    (NucleusOrder::First, NucleusOrder::Fourth),
    (NucleusOrder::Second, NucleusOrder::Fourth),
    (NucleusOrder::Third, NucleusOrder::Fourth),
];

/// Checks every containment on a precomputed report covering all four orders.
pub fn containments(report: &NucleusReport) -> Result<TheoremReport> {
    let missing = || Error::Internal("nucleus report lacks an order".into());
    let mut clauses = Vec::with_capacity(20);
    for side in NucleusSide::ALL {
        for (lo, hi) in CONTAINMENTS {
            let sub = report.get(lo, side).ok_or_else(missing)?;
            let sup = report.get(hi, side).ok_or_else(missing)?;
            clauses.push(Clause {
                side: Some(side),
                sub_order: lo,
                sup_order: hi,
                sub,
                sup,
                holds: sub.is_subset(sup),
            });
        }
    }
    for (lo, hi) in CONTAINMENTS {
        let sub = report.intersection(lo).ok_or_else(missing)?;
        let sup = report.intersection(hi).ok_or_else(missing)?;
        clauses.push(Clause {
            side: None,
            sub_order: lo,
            sup_order: hi,
            sub,
            sup,
            holds: sub.is_subset(sup),
        });
    }
    Ok(TheoremReport { clauses })
}

pub fn verify_containment_theorems(t: &HyperTable, strategy: Strategy) -> Result<TheoremReport> {
    containments(&nucleus_report(t, &NucleusOrder::ALL, strategy)?)
}
