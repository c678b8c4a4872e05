//! Decision procedures for every structure class, each returning a witness on failure.
//!
//! All scans run in lexicographic order over their quantified variables and
//! stop at the first counterexample, so witnesses are deterministic.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bundle::StructureBundle;
use crate::error::{Error, Line, Result};
use crate::set::{CarrierIndex, ElementSet};
use crate::table::{derive_divisions, DivisionPair, HyperTable};

/// Outcome of checking one axiom class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "detail", rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails(Witness),
    /// The class depends on data the bundle lacks and that cannot be derived.
    Undetermined(String),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn fails(&self) -> bool {
        matches!(self, Verdict::Fails(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Fails(w) => Some(w),
            _ => None,
        }
    }

    /// `Some(bool)` when determined.
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Verdict::Holds => Some(true),
            Verdict::Fails(_) => Some(false),
            Verdict::Undetermined(_) => None,
        }
    }

    fn inherit(&self, class: &'static str) -> Verdict {
        match self {
            Verdict::Fails(w) => Verdict::Fails(Witness::Inherited {
                class,
                cause: Box::new(w.clone()),
            }),
            other => other.clone(),
        }
    }

    /// Conjunction: first non-holding verdict wins, tagged with its class.
    fn and(parts: &[(&'static str, &Verdict)]) -> Verdict {
        for (class, v) in parts {
            if !v.holds() {
                return v.inherit(class);
            }
        }
        Verdict::Holds
    }
}

/// The four membership laws a polyquasigroup's divisions must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DivisionLaw {
    /// `x ∈ (x·y)/y`
    RightCancel,
    /// `x ∈ (x/y)·y`
    RightSolve,
    /// `x ∈ y\(y·x)`
    LeftCancel,
    /// `x ∈ y·(y\x)`
    LeftSolve,
}

impl DivisionLaw {
    pub const ALL: [DivisionLaw; 4] = [
        DivisionLaw::RightCancel,
        DivisionLaw::RightSolve,
        DivisionLaw::LeftCancel,
        DivisionLaw::LeftSolve,
    ];

    /// The set that must contain `x`.
    pub fn evaluate(self, t: &HyperTable, d: &DivisionPair, x: usize, y: usize) -> ElementSet {
        match self {
            DivisionLaw::RightCancel => d.right.right_mul(t.cell(x, y), y),
            DivisionLaw::RightSolve => t.right_mul(d.right.cell(x, y), y),
            DivisionLaw::LeftCancel => d.left.left_mul(y, t.cell(y, x)),
            DivisionLaw::LeftSolve => t.left_mul(y, d.left.cell(y, x)),
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            DivisionLaw::RightCancel => "x ∈ (x·y)/y",
            DivisionLaw::RightSolve => "x ∈ (x/y)·y",
            DivisionLaw::LeftCancel => "x ∈ y\\(y·x)",
            DivisionLaw::LeftSolve => "x ∈ y·(y\\x)",
        }
    }
}

/// Concrete counterexample to a universally quantified axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `(a·b)·c` vs `a·(b·c)`.
    Association {
        a: usize,
        b: usize,
        c: usize,
        left: ElementSet,
        right: ElementSet,
    },
    /// `x·H` (row) or `H·x` (column) misses `missing`.
    Reproduction {
        element: usize,
        line: Line,
        missing: ElementSet,
    },
    Division {
        law: DivisionLaw,
        x: usize,
        y: usize,
        computed: ElementSet,
    },
    Commutation {
        x: usize,
        y: usize,
        xy: ElementSet,
        yx: ElementSet,
    },
    /// Tallini 1: `h·h ≠ {h}`.
    Idempotence { h: usize, cell: ElementSet },
    /// Tallini 2: `{h1, h2} ⊄ h1·h2`.
    FactorContainment {
        h1: usize,
        h2: usize,
        cell: ElementSet,
    },
    /// Tallini 3 / 5: comparison of `h1·h2` against `g1·g2` with `g1 ≠ g2`.
    PairComparison {
        h1: usize,
        h2: usize,
        g1: usize,
        g2: usize,
        left: ElementSet,
        right: ElementSet,
    },
    /// Tallini 4 at `h3 ∈ h1·h2`.
    Absorption {
        h1: usize,
        h2: usize,
        h3: usize,
        nested: ElementSet,
        grouped: ElementSet,
        product: ElementSet,
    },
    /// `e` is not an identity at `x`.
    IdentityLaw {
        e: usize,
        x: usize,
        xe: ElementSet,
        ex: ElementSet,
    },
    /// No element is an identity; one failing `(candidate, x)` per candidate.
    NoIdentity { failures: Vec<(usize, usize)> },
    /// Reversibility: `x ∈ y·z` but `y ∉ x·z⁻¹` (first) or `z ∉ y⁻¹·x` (second).
    Reversibility {
        x: usize,
        y: usize,
        z: usize,
        second: bool,
        computed: ElementSet,
    },
    /// A class failed because a class it requires failed.
    Inherited {
        class: &'static str,
        cause: Box<Witness>,
    },
}

impl Witness {
    /// Human-readable rendering using element names.
    pub fn describe(&self, t: &HyperTable) -> String {
        let n = |i: usize| t.name(i).to_string();
        let s = |x: ElementSet| t.format_set(x);
        match self {
            Witness::Association {
                a,
                b,
                c,
                left,
                right,
            } => format!(
                "({a}·{b})·{c} = {} but {a}·({b}·{c}) = {}",
                s(*left),
                s(*right),
                a = n(*a),
                b = n(*b),
                c = n(*c)
            ),
            Witness::Reproduction {
                element,
                line,
                missing,
            } => format!("{line} {} misses {}", n(*element), s(*missing)),
            Witness::Division {
                law,
                x,
                y,
                computed,
            } => format!(
                "{} fails at x={}, y={}: computed {}",
                law.formula(),
                n(*x),
                n(*y),
                s(*computed)
            ),
            Witness::Commutation { x, y, xy, yx } => format!(
                "{}·{} = {} but {}·{} = {}",
                n(*x),
                n(*y),
                s(*xy),
                n(*y),
                n(*x),
                s(*yx)
            ),
            Witness::Idempotence { h, cell } => {
                format!("{h}·{h} = {}", s(*cell), h = n(*h))
            }
            Witness::FactorContainment { h1, h2, cell } => {
                format!("{}·{} = {} omits a factor", n(*h1), n(*h2), s(*cell))
            }
            Witness::PairComparison {
                h1,
                h2,
                g1,
                g2,
                left,
                right,
            } => format!(
                "{}·{} = {} vs {}·{} = {}",
                n(*h1),
                n(*h2),
                s(*left),
                n(*g1),
                n(*g2),
                s(*right)
            ),
            Witness::Absorption {
                h1,
                h2,
                h3,
                nested,
                grouped,
                product,
            } => format!(
                "h3={} ∈ {}·{} = {}: {}·({}·{}) = {}, ({}·{})·{} = {}",
                n(*h3),
                n(*h1),
                n(*h2),
                s(*product),
                n(*h1),
                n(*h2),
                n(*h3),
                s(*nested),
                n(*h1),
                n(*h2),
                n(*h3),
                s(*grouped)
            ),
            Witness::IdentityLaw { e, x, xe, ex } => format!(
                "{x}·{e} = {}, {e}·{x} = {}",
                s(*xe),
                s(*ex),
                x = n(*x),
                e = n(*e)
            ),
            Witness::NoIdentity { failures } => {
                let parts: Vec<String> = failures
                    .iter()
                    .map(|(e, x)| format!("{} fails at {}", n(*e), n(*x)))
                    .collect();
                format!("no identity: {}", parts.join("; "))
            }
            Witness::Reversibility {
                x,
                y,
                z,
                second,
                computed,
            } => {
                if *second {
                    format!(
                        "{} ∈ {}·{} but {} ∉ {}⁻¹·{} = {}",
                        n(*x),
                        n(*y),
                        n(*z),
                        n(*z),
                        n(*y),
                        n(*x),
                        s(*computed)
                    )
                } else {
                    format!(
                        "{} ∈ {}·{} but {} ∉ {}·{}⁻¹ = {}",
                        n(*x),
                        n(*y),
                        n(*z),
                        n(*y),
                        n(*x),
                        n(*z),
                        s(*computed)
                    )
                }
            }
            Witness::Inherited { class, cause } => {
                format!("{class} fails: {}", cause.describe(t))
            }
        }
    }
}

fn verdict_from(w: Option<Witness>) -> Verdict {
    w.map_or(Verdict::Holds, Verdict::Fails)
}

/// Both association orders of `(a, b, c)`: `((a·b)·c, a·(b·c))`.
#[inline]
pub fn association(t: &HyperTable, a: usize, b: usize, c: usize) -> (ElementSet, ElementSet) {
    (t.right_mul(t.cell(a, b), c), t.left_mul(a, t.cell(b, c)))
}

fn first_triple(t: &HyperTable, bad: impl Fn(ElementSet, ElementSet) -> bool) -> Option<Witness> {
    let n = t.order();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (left, right) = association(t, a, b, c);
                if bad(left, right) {
                    return Some(Witness::Association {
                        a,
                        b,
                        c,
                        left,
                        right,
                    });
                }
            }
        }
    }
    None
}

/// `(a·b)·c = a·(b·c)` for every triple, under the union extension.
pub fn check_associativity(t: &HyperTable) -> Verdict {
    verdict_from(first_triple(t, |l, r| l != r))
}

/// `(x·y)·z ∩ x·(y·z) ≠ ∅` for every triple.
pub fn check_weak_associativity(t: &HyperTable) -> Verdict {
    verdict_from(first_triple(t, |l, r| (l & r).is_empty()))
}

/// `x·H = H = H·x` for every `x`.
pub fn check_reproduction(t: &HyperTable) -> Verdict {
    let full = t.carrier();
    for x in 0..t.order() {
        for (line, covered) in [
            (Line::Row, t.row_union(x)),
            (Line::Column, t.column_union(x)),
        ] {
            if covered != full {
                return Verdict::Fails(Witness::Reproduction {
                    element: x,
                    line,
                    missing: full - covered,
                });
            }
        }
    }
    Verdict::Holds
}

pub fn check_commutativity(t: &HyperTable) -> Verdict {
    let n = t.order();
    for x in 0..n {
        for y in x + 1..n {
            let (xy, yx) = (t.cell(x, y), t.cell(y, x));
            if xy != yx {
                return Verdict::Fails(Witness::Commutation { x, y, xy, yx });
            }
        }
    }
    Verdict::Holds
}

/// The four division membership laws for every pair `(x, y)`.
pub fn check_polyquasigroup(t: &HyperTable, d: &DivisionPair) -> Result<Verdict> {
    for dt in [&d.left, &d.right] {
        if dt.order() != t.order() {
            return Err(Error::CarrierMismatch {
                expected: t.order(),
                found: dt.order(),
            });
        }
    }
    let n = t.order();
    for x in 0..n {
        for y in 0..n {
            for law in DivisionLaw::ALL {
                let computed = law.evaluate(t, d, x, y);
                if !computed.contains(x) {
                    return Ok(Verdict::Fails(Witness::Division {
                        law,
                        x,
                        y,
                        computed,
                    }));
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Strict (`x·e = e·x = {x}`) and weak (`x ∈ x·e = e·x`) identities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub strict: Option<CarrierIndex>,
    pub weak: Vec<CarrierIndex>,
}

/// First `x` at which `e` is not a strict identity.
pub fn strict_identity_failure(t: &HyperTable, e: CarrierIndex) -> Option<Witness> {
    (0..t.order()).find_map(|x| {
        let (xe, ex) = (t.cell(x, e), t.cell(e, x));
        let sx = ElementSet::singleton(x);
        (xe != sx || ex != sx).then_some(Witness::IdentityLaw { e, x, xe, ex })
    })
}

/// First `x` at which `e` is not a weak identity.
pub fn weak_identity_failure(t: &HyperTable, e: CarrierIndex) -> Option<Witness> {
    (0..t.order()).find_map(|x| {
        let (xe, ex) = (t.cell(x, e), t.cell(e, x));
        (!xe.contains(x) || xe != ex).then_some(Witness::IdentityLaw { e, x, xe, ex })
    })
}

pub fn check_identity(t: &HyperTable) -> Result<IdentityReport> {
    let strict: Vec<_> = (0..t.order())
        .filter(|&e| strict_identity_failure(t, e).is_none())
        .collect();
    if strict.len() > 1 {
        return Err(Error::Internal(format!(
            "several strict identities {strict:?}"
        )));
    }
    let weak = (0..t.order())
        .filter(|&e| weak_identity_failure(t, e).is_none())
        .collect();
    Ok(IdentityReport {
        strict: strict.first().copied(),
        weak,
    })
}

fn no_identity(t: &HyperTable, failure: impl Fn(&HyperTable, usize) -> Option<Witness>) -> Witness {
    let failures = (0..t.order())
        .filter_map(|e| match failure(t, e) {
            Some(Witness::IdentityLaw { x, .. }) => Some((e, x)),
            _ => None,
        })
        .collect();
    Witness::NoIdentity { failures }
}

/// The unique `y` with `e ∈ x·y` and `e ∈ y·x`, for every `x`.
pub fn derive_inverse(t: &HyperTable, e: CarrierIndex) -> Result<Vec<CarrierIndex>> {
    t.check_index(e)?;
    (0..t.order())
        .map(|x| {
            let candidates: ElementSet = (0..t.order())
                .filter(|&y| t.cell(x, y).contains(e) && t.cell(y, x).contains(e))
                .collect();
            match candidates.len() {
                0 => Err(Error::NoInverse(x)),
                1 => Ok(candidates.first().unwrap()),
                _ => Err(Error::AmbiguousInverse {
                    element: x,
                    candidates,
                }),
            }
        })
        .collect()
}

fn reversibility_failure(t: &HyperTable, inv: &[CarrierIndex]) -> Option<Witness> {
    let n = t.order();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if !t.cell(y, z).contains(x) {
                    continue;
                }
                let first = t.cell(x, inv[z]);
                if !first.contains(y) {
                    return Some(Witness::Reversibility {
                        x,
                        y,
                        z,
                        second: false,
                        computed: first,
                    });
                }
                let second = t.cell(inv[y], x);
                if !second.contains(z) {
                    return Some(Witness::Reversibility {
                        x,
                        y,
                        z,
                        second: true,
                        computed: second,
                    });
                }
            }
        }
    }
    None
}

/// Associativity, strict identity `e`, and reversibility under `inv`.
pub fn check_polygroup(t: &HyperTable, e: CarrierIndex, inv: &[CarrierIndex]) -> Result<Verdict> {
    t.check_index(e)?;
    if inv.len() != t.order() {
        return Err(Error::CarrierMismatch {
            expected: t.order(),
            found: inv.len(),
        });
    }
    for &y in inv {
        t.check_index(y)?;
    }
    let assoc = check_associativity(t);
    if !assoc.holds() {
        return Ok(assoc.inherit("associativity"));
    }
    if let Some(w) = strict_identity_failure(t, e) {
        return Ok(Verdict::Fails(w));
    }
    Ok(verdict_from(reversibility_failure(t, inv)))
}

/// Tallini axiom verdicts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TalliniReport {
    pub tallini1: Verdict,
    pub tallini2: Verdict,
    pub tallini3: Verdict,
    pub tallini4: Verdict,
    pub tallini5: Verdict,
    /// Tallini 1–3 on a quasihypergroup.
    pub geometric: Verdict,
}

fn pair_scan(t: &HyperTable, bad: impl Fn(ElementSet, ElementSet) -> bool) -> Option<Witness> {
    let n = t.order();
    for h1 in 0..n {
        for h2 in 0..n {
            let left = t.cell(h1, h2);
            for g1 in 0..n {
                for g2 in 0..n {
                    if g1 == g2 {
                        continue;
                    }
                    let right = t.cell(g1, g2);
                    if bad(left, right) {
                        return Some(Witness::PairComparison {
                            h1,
                            h2,
                            g1,
                            g2,
                            left,
                            right,
                        });
                    }
                }
            }
        }
    }
    None
}

pub fn check_tallini(t: &HyperTable) -> TalliniReport {
    let n = t.order();
    let tallini1 = verdict_from((0..n).find_map(|h| {
        let cell = t.cell(h, h);
        (cell != ElementSet::singleton(h)).then_some(Witness::Idempotence { h, cell })
    }));
    let tallini2 = verdict_from((0..n * n).find_map(|k| {
        let (h1, h2) = (k / n, k % n);
        let cell = t.cell(h1, h2);
        let factors = ElementSet::singleton(h1) | ElementSet::singleton(h2);
        (!factors.is_subset(cell)).then_some(Witness::FactorContainment { h1, h2, cell })
    }));
    let tallini3 = verdict_from(pair_scan(t, |l, r| !l.is_subset(r)));
    let tallini4 = verdict_from((0..n * n).find_map(|k| {
        let (h1, h2) = (k / n, k % n);
        let product = t.cell(h1, h2);
        product.iter().find_map(|h3| {
            let nested = t.left_mul(h1, t.cell(h2, h3));
            let grouped = t.right_mul(product, h3);
            (nested != product || grouped != product).then_some(Witness::Absorption {
                h1,
                h2,
                h3,
                nested,
                grouped,
                product,
            })
        })
    }));
    let tallini5 = verdict_from(pair_scan(t, |l, r| l != r));
    let reproduction = check_reproduction(t);
    let geometric = Verdict::and(&[
        ("quasihypergroup", &reproduction),
        ("tallini1", &tallini1),
        ("tallini2", &tallini2),
        ("tallini3", &tallini3),
    ]);
    TalliniReport {
        tallini1,
        tallini2,
        tallini3,
        tallini4,
        tallini5,
        geometric,
    }
}

/// One flag per structure class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flag {
    Hypergroupoid,
    Semihypergroup,
    Quasihypergroup,
    Hypergroup,
    WeakAssociative,
    HvGroup,
    Polyquasigroup,
    Polyloop,
    Multiloop,
    AssociativePolyloop,
    Polygroup,
    Tallini1,
    Tallini2,
    Tallini3,
    Tallini4,
    Tallini5,
    Geometric,
    Commutative,
}

impl Flag {
    pub const ALL: [Flag; 18] = [
        Flag::Hypergroupoid,
        Flag::Semihypergroup,
        Flag::Quasihypergroup,
        Flag::Hypergroup,
        Flag::WeakAssociative,
        Flag::HvGroup,
        Flag::Polyquasigroup,
        Flag::Polyloop,
        Flag::Multiloop,
        Flag::AssociativePolyloop,
        Flag::Polygroup,
        Flag::Tallini1,
        Flag::Tallini2,
        Flag::Tallini3,
        Flag::Tallini4,
        Flag::Tallini5,
        Flag::Geometric,
        Flag::Commutative,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Flag::Hypergroupoid => "hypergroupoid",
            Flag::Semihypergroup => "semihypergroup",
            Flag::Quasihypergroup => "quasihypergroup",
            Flag::Hypergroup => "hypergroup",
            Flag::WeakAssociative => "weak_associative",
            Flag::HvGroup => "hv_group",
            Flag::Polyquasigroup => "polyquasigroup",
            Flag::Polyloop => "polyloop",
            Flag::Multiloop => "multiloop",
            Flag::AssociativePolyloop => "associative_polyloop",
            Flag::Polygroup => "polygroup",
            Flag::Tallini1 => "tallini1",
            Flag::Tallini2 => "tallini2",
            Flag::Tallini3 => "tallini3",
            Flag::Tallini4 => "tallini4",
            Flag::Tallini5 => "tallini5",
            Flag::Geometric => "geometric",
            Flag::Commutative => "commutative",
        }
    }

    /// Classes whose definition includes the reproduction axiom.
    pub fn implies_reproduction(self) -> bool {
        matches!(
            self,
            Flag::Quasihypergroup
                | Flag::Hypergroup
                | Flag::HvGroup
                | Flag::Polyquasigroup
                | Flag::Polyloop
                | Flag::Multiloop
                | Flag::AssociativePolyloop
                | Flag::Polygroup
                | Flag::Geometric
        )
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Flag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Flag> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        let alias = match key.as_str() {
            "polygroupoid" => "hypergroupoid",
            "geometric_hyperquasigroup" => "geometric",
            "hv" | "hvgroup" => "hv_group",
            "wass" => "weak_associative",
            "associative" => "semihypergroup",
            other => other,
        };
        Flag::ALL
            .into_iter()
            .find(|f| f.as_str() == alias)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown flag {s:?}")))
    }
}

/// Classification of a bundle against every structure class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureProfile {
    pub hypergroupoid: Verdict,
    pub semihypergroup: Verdict,
    pub quasihypergroup: Verdict,
    pub hypergroup: Verdict,
    pub weak_associative: Verdict,
    pub hv_group: Verdict,
    pub polyquasigroup: Verdict,
    pub polyloop: Verdict,
    pub multiloop: Verdict,
    pub associative_polyloop: Verdict,
    pub polygroup: Verdict,
    pub tallini1: Verdict,
    pub tallini2: Verdict,
    pub tallini3: Verdict,
    pub tallini4: Verdict,
    pub tallini5: Verdict,
    pub geometric: Verdict,
    pub commutative: Verdict,
    /// Strict identity used for polyloop/polygroup (the bundle's, if it names one).
    pub identity: Option<CarrierIndex>,
    pub weak_identities: Vec<CarrierIndex>,
    /// Inverse map used for the polygroup check, if one was available.
    pub inverse: Option<Vec<CarrierIndex>>,
    /// Whether polyquasigroup was judged with derived rather than supplied divisions.
    pub derived_divisions: bool,
}

impl StructureProfile {
    pub fn get(&self, flag: Flag) -> &Verdict {
        match flag {
            Flag::Hypergroupoid => &self.hypergroupoid,
            Flag::Semihypergroup => &self.semihypergroup,
            Flag::Quasihypergroup => &self.quasihypergroup,
            Flag::Hypergroup => &self.hypergroup,
            Flag::WeakAssociative => &self.weak_associative,
            Flag::HvGroup => &self.hv_group,
            Flag::Polyquasigroup => &self.polyquasigroup,
            Flag::Polyloop => &self.polyloop,
            Flag::Multiloop => &self.multiloop,
            Flag::AssociativePolyloop => &self.associative_polyloop,
            Flag::Polygroup => &self.polygroup,
            Flag::Tallini1 => &self.tallini1,
            Flag::Tallini2 => &self.tallini2,
            Flag::Tallini3 => &self.tallini3,
            Flag::Tallini4 => &self.tallini4,
            Flag::Tallini5 => &self.tallini5,
            Flag::Geometric => &self.geometric,
            Flag::Commutative => &self.commutative,
        }
    }

    pub fn flags(&self) -> impl Iterator<Item = (Flag, &Verdict)> {
        Flag::ALL.into_iter().map(move |f| (f, self.get(f)))
    }

    /// Whether every `(flag, wanted)` pair is matched by a determined verdict.
    pub fn satisfies(&self, required: &[(Flag, bool)]) -> bool {
        required
            .iter()
            .all(|&(f, want)| self.get(f).as_bool() == Some(want))
    }
}

/// Classifies a bundle. Divisions, identity and inverse are derived when the
/// bundle lacks them and derivation is possible.
pub fn classify(bundle: &StructureBundle) -> Result<StructureProfile> {
    bundle.validate()?;
    let t = &bundle.table;

    let semihypergroup = check_associativity(t);
    let quasihypergroup = check_reproduction(t);
    let hypergroup = Verdict::and(&[
        ("semihypergroup", &semihypergroup),
        ("quasihypergroup", &quasihypergroup),
    ]);
    let weak_associative = check_weak_associativity(t);
    let hv_group = Verdict::and(&[
        ("quasihypergroup", &quasihypergroup),
        ("weak_associative", &weak_associative),
    ]);

    let (polyquasigroup, derived_divisions) = match &bundle.divisions {
        Some(d) => (check_polyquasigroup(t, d)?, false),
        None => match derive_divisions(t) {
            Ok(d) => {
                let v = check_polyquasigroup(t, &d)?;
                if !v.holds() {
                    return Err(Error::Internal(format!(
                        "derived divisions fail the division laws: {v:?}"
                    )));
                }
                (v, true)
            }
            // every division pair forces reproduction through the solve laws
            Err(_) => (quasihypergroup.inherit("quasihypergroup"), true),
        },
    };

    let ids = check_identity(t)?;
    let (strict, weak) = match bundle.identity {
        Some(e) => (
            strict_identity_failure(t, e).map_or(Verdict::Holds, Verdict::Fails),
            weak_identity_failure(t, e).map_or(Verdict::Holds, Verdict::Fails),
        ),
        None => (
            match ids.strict {
                Some(_) => Verdict::Holds,
                None => Verdict::Fails(no_identity(t, strict_identity_failure)),
            },
            if ids.weak.is_empty() {
                Verdict::Fails(no_identity(t, weak_identity_failure))
            } else {
                Verdict::Holds
            },
        ),
    };
    let identity = match bundle.identity {
        Some(e) => strict.holds().then_some(e),
        None => ids.strict,
    };

    let polyloop = Verdict::and(&[("polyquasigroup", &polyquasigroup), ("identity", &strict)]);
    let multiloop = Verdict::and(&[
        ("polyquasigroup", &polyquasigroup),
        ("weak identity", &weak),
    ]);
    let associative_polyloop =
        Verdict::and(&[("polyloop", &polyloop), ("semihypergroup", &semihypergroup)]);

    let mut inverse = bundle.inverse.clone();
    let polygroup = if !semihypergroup.holds() {
        semihypergroup.inherit("associativity")
    } else if !strict.holds() {
        strict.inherit("identity")
    } else {
        let e = identity.expect("strict identity holds");
        if inverse.is_none() {
            inverse = derive_inverse(t, e).ok();
        }
        match &inverse {
            Some(inv) => check_polygroup(t, e, inv)?,
            None => Verdict::Undetermined(match derive_inverse(t, e) {
                Err(err) => format!("no inverse supplied and none derivable: {err}"),
                Ok(_) => unreachable!(),
            }),
        }
    };

    let tal = check_tallini(t);
    Ok(StructureProfile {
        hypergroupoid: Verdict::Holds,
        semihypergroup,
        quasihypergroup,
        hypergroup,
        weak_associative,
        hv_group,
        polyquasigroup,
        polyloop,
        multiloop,
        associative_polyloop,
        polygroup,
        tallini1: tal.tallini1,
        tallini2: tal.tallini2,
        tallini3: tal.tallini3,
        tallini4: tal.tallini4,
        tallini5: tal.tallini5,
        geometric: tal.geometric,
        commutative: check_commutativity(t),
        identity,
        weak_identities: ids.weak,
        inverse,
        derived_divisions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::default_names;

    fn set(xs: &[usize]) -> ElementSet {
        xs.iter().copied().collect()
    }

    fn cyclic(n: usize) -> HyperTable {
        HyperTable::from_fn(default_names(n), |a, b| ElementSet::singleton((a + b) % n)).unwrap()
    }

    fn trivial() -> HyperTable {
        HyperTable::from_cells(1, vec![set(&[0])]).unwrap()
    }

    #[test]
    fn group_is_associative_and_reproductive() {
        let t = cyclic(3);
        assert!(check_associativity(&t).holds());
        assert!(check_weak_associativity(&t).holds());
        assert!(check_reproduction(&t).holds());
        assert_eq!(
            check_identity(&t).unwrap(),
            IdentityReport {
                strict: Some(0),
                weak: vec![0]
            }
        );
    }

    #[test]
    fn order_one_table() {
        let t = trivial();
        assert!(check_weak_associativity(&t).holds());
        let tal = check_tallini(&t);
        assert!(tal.tallini1.holds() && tal.tallini2.holds());
        assert!(tal.tallini3.holds() && tal.tallini5.holds());
        assert!(tal.geometric.holds());
    }

    #[test]
    fn z3_inverse() {
        assert_eq!(derive_inverse(&cyclic(3), 0).unwrap(), vec![0, 2, 1]);
    }

    #[test]
    fn ambiguous_inverse() {
        // 0·0, 0·1 and 1·0 all contain 0, so 0 has two inverse candidates.
        let t =
            HyperTable::from_cells(2, vec![set(&[0]), set(&[0, 1]), set(&[0, 1]), set(&[0, 1])])
                .unwrap();
        assert_eq!(
            derive_inverse(&t, 0).unwrap_err(),
            Error::AmbiguousInverse {
                element: 0,
                candidates: set(&[0, 1])
            }
        );
    }

    #[test]
    fn missing_inverse() {
        let t =
            HyperTable::from_cells(2, vec![set(&[0]), set(&[1]), set(&[1]), set(&[1])]).unwrap();
        assert_eq!(derive_inverse(&t, 0).unwrap_err(), Error::NoInverse(1));
    }

    #[test]
    fn groups_are_polygroups() {
        for n in 1..6 {
            let t = cyclic(n);
            let inv: Vec<_> = (0..n).map(|x| (n - x) % n).collect();
            assert!(check_polygroup(&t, 0, &inv).unwrap().holds(), "Z_{n}");
        }
    }

    #[test]
    fn wrong_inverse_breaks_reversibility() {
        let t = cyclic(3);
        let v = check_polygroup(&t, 0, &[0, 1, 2]).unwrap();
        assert!(matches!(v, Verdict::Fails(Witness::Reversibility { .. })));
    }

    #[test]
    fn polyquasigroup_order_mismatch() {
        let t = cyclic(3);
        let d = derive_divisions(&cyclic(2)).unwrap();
        assert!(matches!(
            check_polyquasigroup(&t, &d),
            Err(Error::CarrierMismatch { .. })
        ));
    }

    #[test]
    fn flag_parsing() {
        assert_eq!("polyloop".parse::<Flag>().unwrap(), Flag::Polyloop);
        assert_eq!("polygroupoid".parse::<Flag>().unwrap(), Flag::Hypergroupoid);
        assert_eq!("hv-group".parse::<Flag>().unwrap(), Flag::HvGroup);
        assert!("nonsense".parse::<Flag>().is_err());
        for f in Flag::ALL {
            assert_eq!(f.as_str().parse::<Flag>().unwrap(), f);
        }
    }

    #[test]
    fn classify_group() {
        let b = StructureBundle::new("Z4", cyclic(4));
        let p = classify(&b).unwrap();
        for f in [
            Flag::Semihypergroup,
            Flag::Hypergroup,
            Flag::Polyquasigroup,
            Flag::Polyloop,
            Flag::Multiloop,
            Flag::AssociativePolyloop,
            Flag::Polygroup,
            Flag::Commutative,
        ] {
            assert!(p.get(f).holds(), "{f}");
        }
        assert_eq!(p.identity, Some(0));
        assert_eq!(p.inverse, Some(vec![0, 3, 2, 1]));
        assert!(p.tallini2.fails());
    }

    #[test]
    fn polygroup_undetermined_without_inverse() {
        // {0, 1} with 0 strict identity and 1·1 = {0, 1}: an associative hypergroup
        // where 1 has inverse 1 uniquely; make it ambiguous by adding a third element.
        let c = |xs: &[usize]| set(xs);
        let cells = vec![
            c(&[0]),
            c(&[1]),
            c(&[2]),
            c(&[1]),
            c(&[0, 1, 2]),
            c(&[0, 1, 2]),
            c(&[2]),
            c(&[0, 1, 2]),
            c(&[0, 1, 2]),
        ];
        let t = HyperTable::from_cells(3, cells).unwrap();
        assert!(check_associativity(&t).holds());
        let p = classify(&StructureBundle::new("t", t)).unwrap();
        assert!(matches!(p.polygroup, Verdict::Undetermined(_)));
    }
}
