//! Reference implementations over `BTreeSet`s, written directly from the
//! definitions and sharing no code with the library beyond reading cells.

#![allow(dead_code)]

use std::collections::BTreeSet;

use polynuclei::HyperTable;

pub type Set = BTreeSet<usize>;

pub struct Naive {
    pub n: usize,
    pub cells: Vec<Vec<Set>>,
}

impl Naive {
    pub fn from_table(t: &HyperTable) -> Self {
        let n = t.order();
        let cells = (0..n)
            .map(|a| (0..n).map(|b| t.cell(a, b).iter().collect()).collect())
            .collect();
        Naive { n, cells }
    }

    pub fn mul(&self, a: &Set, b: &Set) -> Set {
        let mut out = Set::new();
        for &x in a {
            for &y in b {
                out.extend(self.cells[x][y].iter().copied());
            }
        }
        out
    }

    pub fn subsets(&self) -> Vec<Set> {
        (1u32..(1 << self.n))
            .map(|m| (0..self.n).filter(|i| m >> i & 1 == 1).collect())
            .collect()
    }

    fn singletons(&self) -> Vec<Set> {
        (0..self.n).map(|i| Set::from([i])).collect()
    }

    /// Nucleus of order 1–4 on side 0 (left), 1 (middle) or 2 (right),
    /// quantifying literally over elements or non-empty subsets.
    pub fn nucleus(&self, order: u8, side: usize) -> Set {
        let (ps, qs) = match order {
            1 => (self.singletons(), self.singletons()),
            2 => (self.subsets(), self.singletons()),
            3 => (self.singletons(), self.subsets()),
            4 => (self.subsets(), self.subsets()),
            _ => panic!("order {order}"),
        };
        (0..self.n)
            .filter(|&a| {
                let a = Set::from([a]);
                ps.iter().all(|p| {
                    qs.iter().all(|q| match side {
                        0 => self.mul(&a, &self.mul(p, q)) == self.mul(&self.mul(&a, p), q),
                        1 => self.mul(&self.mul(p, &a), q) == self.mul(p, &self.mul(&a, q)),
                        _ => self.mul(&self.mul(p, q), &a) == self.mul(p, &self.mul(q, &a)),
                    })
                })
            })
            .collect()
    }

    pub fn associative(&self) -> bool {
        let s = self.singletons();
        s.iter().all(|a| {
            s.iter().all(|b| {
                s.iter()
                    .all(|c| self.mul(&self.mul(a, b), c) == self.mul(a, &self.mul(b, c)))
            })
        })
    }

    pub fn reproductive(&self) -> bool {
        let all: Set = (0..self.n).collect();
        (0..self.n).all(|x| {
            let x = Set::from([x]);
            self.mul(&x, &all) == all && self.mul(&all, &x) == all
        })
    }

    pub fn strict_identity(&self) -> Option<usize> {
        (0..self.n).find(|&e| {
            (0..self.n)
                .all(|x| self.cells[x][e] == Set::from([x]) && self.cells[e][x] == Set::from([x]))
        })
    }
}

/// Converts a library set into labels-free indices for comparison.
pub fn indices(s: polynuclei::ElementSet) -> Set {
    s.iter().collect()
}
