//! Report views shared by the human and JSON renderings. Each view is built
//! from the computed objects; the text form prints a subset of its fields.

use std::fmt::Write;

use indexmap::IndexMap;
use serde::Serialize;

use crate::axioms::{StructureProfile, Verdict};
use crate::bundle::StructureBundle;
use crate::fixtures::{FixtureCheck, NucleiStatus};
use crate::nuclei::{Method, NucleusOrder, NucleusReport, NucleusSide, TheoremReport};
use crate::set::ElementSet;
use crate::table::HyperTable;

fn labels(t: &HyperTable, s: ElementSet) -> Vec<String> {
    t.labels(s).into_iter().map(String::from).collect()
}

fn braces(items: &[String]) -> String {
    if items.is_empty() {
        "∅".into()
    } else {
        format!("{{{}}}", items.join(", "))
    }
}

#[derive(Serialize)]
pub struct FlagLine {
    pub flag: &'static str,
    /// `null` when undetermined.
    pub holds: Option<bool>,
    pub reason: Option<String>,
    pub verdict: Verdict,
}

#[derive(Serialize)]
pub struct ProfileView {
    pub name: String,
    pub order: usize,
    pub elements: Vec<String>,
    pub flags: Vec<FlagLine>,
    pub identity: Option<String>,
    pub weak_identities: Vec<String>,
    pub inverse: Option<IndexMap<String, String>>,
    pub derived_divisions: bool,
}

impl ProfileView {
    pub fn new(b: &StructureBundle, p: &StructureProfile) -> Self {
        let t = &b.table;
        let flags = p
            .flags()
            .map(|(f, v)| FlagLine {
                flag: f.as_str(),
                holds: v.as_bool(),
                reason: match v {
                    Verdict::Holds => None,
                    Verdict::Fails(w) => Some(w.describe(t)),
                    Verdict::Undetermined(why) => Some(why.clone()),
                },
                verdict: v.clone(),
            })
            .collect();
        ProfileView {
            name: b.name.clone(),
            order: t.order(),
            elements: t.names().to_vec(),
            flags,
            identity: p.identity.map(|e| t.name(e).to_string()),
            weak_identities: p
                .weak_identities
                .iter()
                .map(|&e| t.name(e).to_string())
                .collect(),
            inverse: p.inverse.as_ref().map(|inv| {
                inv.iter()
                    .enumerate()
                    .map(|(x, &y)| (t.name(x).to_string(), t.name(y).to_string()))
                    .collect()
            }),
            derived_divisions: p.derived_divisions,
        }
    }

    pub fn human(&self) -> String {
        let mut s = format!("{} (order {})\n", self.name, self.order);
        let width = self.flags.iter().map(|f| f.flag.len()).max().unwrap_or(0);
        for f in &self.flags {
            let v = match f.holds {
                Some(true) => "yes",
                Some(false) => "no",
                None => "undetermined",
            };
            let _ = write!(s, "  {:width$}  {v}", f.flag);
            if let Some(r) = &f.reason {
                let _ = write!(s, "  ({r})");
            }
            s.push('\n');
        }
        let _ = writeln!(
            s,
            "identity: {}",
            self.identity.as_deref().unwrap_or("none")
        );
        let _ = writeln!(s, "weak identities: {}", braces(&self.weak_identities));
        if let Some(inv) = &self.inverse {
            let pairs: Vec<String> = inv.iter().map(|(x, y)| format!("{x}→{y}")).collect();
            let _ = writeln!(s, "inverse: {}", pairs.join(" "));
        }
        if self.derived_divisions {
            s.push_str("divisions: derived from the table\n");
        }
        s
    }
}

#[derive(Serialize)]
pub struct NucleusLine {
    pub order: u8,
    pub side: NucleusSide,
    pub set: Vec<String>,
    pub method: Method,
    pub micros: u128,
}

#[derive(Serialize)]
pub struct IntersectionLine {
    pub order: u8,
    pub set: Vec<String>,
}

#[derive(Serialize)]
pub struct NucleiView {
    pub name: String,
    pub order: usize,
    pub nuclei: Vec<NucleusLine>,
    pub intersections: Vec<IntersectionLine>,
}

impl NucleiView {
    pub fn new(b: &StructureBundle, r: &NucleusReport) -> Self {
        let t = &b.table;
        let mut nuclei = Vec::new();
        let mut intersections = Vec::new();
        for order in NucleusOrder::ALL {
            for side in NucleusSide::ALL {
                if let Some(e) = r.entry(order, side) {
                    nuclei.push(NucleusLine {
                        order: order.get(),
                        side,
                        set: labels(t, e.set),
                        method: e.method,
                        micros: e.elapsed.as_micros(),
                    });
                }
            }
            if let Some(s) = r.intersection(order) {
                intersections.push(IntersectionLine {
                    order: order.get(),
                    set: labels(t, s),
                });
            }
        }
        NucleiView {
            name: b.name.clone(),
            order: t.order(),
            nuclei,
            intersections,
        }
    }

    pub fn human(&self) -> String {
        let mut s = format!("{} (order {})\n", self.name, self.order);
        for i in &self.intersections {
            let _ = writeln!(s, "order {}:", i.order);
            for l in self.nuclei.iter().filter(|l| l.order == i.order) {
                let method = match l.method {
                    Method::FastPath => "fast",
                    Method::BruteForce => "brute",
                };
                let _ = writeln!(s, "  {:<7} {}  [{method}]", l.side.as_str(), braces(&l.set));
            }
            let _ = writeln!(s, "  {:<7} {}", "all", braces(&i.set));
        }
        s
    }
}

#[derive(Serialize)]
pub struct ClauseLine {
    pub clause: String,
    pub holds: bool,
    pub sub: Vec<String>,
    pub sup: Vec<String>,
}

#[derive(Serialize)]
pub struct TheoremView {
    pub name: String,
    pub all_hold: bool,
    pub clauses: Vec<ClauseLine>,
}

impl TheoremView {
    pub fn new(b: &StructureBundle, r: &TheoremReport) -> Self {
        let t = &b.table;
        TheoremView {
            name: b.name.clone(),
            all_hold: r.all_hold(),
            clauses: r
                .clauses
                .iter()
                .map(|c| ClauseLine {
                    clause: c.label(),
                    holds: c.holds,
                    sub: labels(t, c.sub),
                    sup: labels(t, c.sup),
                })
                .collect(),
        }
    }

    pub fn human(&self) -> String {
        let mut s = format!("{}\n", self.name);
        for c in &self.clauses {
            let mark = if c.holds { "ok  " } else { "FAIL" };
            let _ = writeln!(
                s,
                "  {mark} {:<20} {} ⊆ {}",
                c.clause,
                braces(&c.sub),
                braces(&c.sup)
            );
        }
        let held = self.clauses.iter().filter(|c| c.holds).count();
        let _ = writeln!(s, "{held}/{} containments hold", self.clauses.len());
        s
    }
}

/// One line per fixture.
pub fn fixture_checks_human(checks: &[FixtureCheck]) -> String {
    let mut s = String::new();
    for c in checks {
        let status = if !c.passed() {
            "FAIL"
        } else if matches!(c.nuclei, NucleiStatus::KnownErratum { .. }) {
            "KNOWN-ERRATUM"
        } else {
            "ok"
        };
        let _ = write!(s, "{:<14} {status}", c.id);
        for m in &c.flag_mismatches {
            let _ = write!(
                s,
                "  {} expected {} got {}",
                m.flag,
                m.expected,
                m.computed.map_or("undetermined".into(), |b| b.to_string())
            );
        }
        if !c.identity_ok() {
            let _ = write!(
                s,
                "  identity expected {} got {}",
                c.identity_expected.unwrap_or("none"),
                c.identity_computed.as_deref().unwrap_or("none")
            );
        }
        match &c.nuclei {
            NucleiStatus::Match => s.push_str("  nuclei match"),
            NucleiStatus::NotPublished => s.push_str("  nuclei not published"),
            NucleiStatus::KnownErratum {
                published,
                computed,
            } => {
                let _ = write!(s, "  published {published}, computed {computed}");
            }
            NucleiStatus::Mismatch {
                order,
                side,
                expected,
                computed,
            } => {
                let side = side.map_or("all", |x| x.as_str());
                let _ = write!(
                    s,
                    "  nucleus {order} {side}: expected {expected}, computed {computed}"
                );
            }
        }
        let agree = c.oracle.iter().filter(|o| o.agrees).count();
        let _ = writeln!(s, "  oracle {agree}/{}", c.oracle.len());
    }
    s
}
