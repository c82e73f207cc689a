//! Exhaustive enumeration of uniform chirotopes up to relabeling,
//! reorientation and global negation.
//!
//! A uniform chirotope with at most 64 bases is a bitmask, bit set for a
//! negative basis. Bit positions are arranged so that integer order is lex
//! order of the `+ −` value string (first basis most significant), which
//! makes "smallest value string in the orbit" a plain integer minimum.

use alloc::vec::Vec;

use hashbrown::HashSet;

use super::chirotope::Chirotope;
use super::perm::{sort_parity, Permutation};
use crate::linalg::{binomial, colex_rank, colex_subsets};
use crate::sign::Sign;
use crate::{Error, Result};

pub const MAX_ENUMERATION_GROUND: usize = 7;
pub const MAX_ENUMERATION_BASES: u64 = 35;

/// One canonical chirotope per isomorphism class of uniform rank-`rank`
/// oriented matroids on `n` elements, in increasing order of value string.
pub fn enumerate_uniform_chirotopes(rank: usize, n: usize) -> Result<Vec<Chirotope>> {
    if rank == 0 || rank > n {
        return Err(Error::InvalidChirotope(alloc::format!(
            "rank {rank} on {n} elements"
        )));
    }
    if n > MAX_ENUMERATION_GROUND {
        return Err(Error::EnumerationTooLarge {
            rank,
            n,
            reason: alloc::format!("ground set larger than {MAX_ENUMERATION_GROUND}"),
        });
    }
    if binomial(n, rank) > MAX_ENUMERATION_BASES {
        return Err(Error::EnumerationTooLarge {
            rank,
            n,
            reason: alloc::format!("more than {MAX_ENUMERATION_BASES} bases"),
        });
    }
    let tables = Tables::new(rank, n);
    let mut search = Search {
        t: &tables,
        seen: HashSet::new(),
        classes: Vec::new(),
    };
    search.dfs(0, 0);
    let mut classes = search.classes;
    classes.sort_unstable();
    Ok(classes
        .into_iter()
        .map(|key| {
            let values = (0..tables.m)
                .map(|i| {
                    if tables.bit(key, i) {
                        Sign::Neg
                    } else {
                        Sign::Pos
                    }
                })
                .collect();
            Chirotope::new(n, rank, values).expect("shape is right")
        })
        .collect())
}

struct Relabel {
    target: Vec<u8>,
    odd: Vec<bool>,
}

struct Tables {
    rank: usize,
    m: usize,
    /// Value pattern flipped by reorienting each element set.
    flip: Vec<u64>,
    /// Basis `{0..r−2} ∪ {e}` for each `e ≥ r−1`, forced positive.
    normal_bases: Vec<(usize, usize)>,
    /// Three-term relations grouped by their largest basis index; each term
    /// is two basis indices and a constant sign bit.
    relations: Vec<Vec<[(usize, usize, bool); 3]>>,
    relabels: Vec<Relabel>,
}

impl Tables {
    fn new(rank: usize, n: usize) -> Self {
        let bases: Vec<Vec<usize>> = colex_subsets(n, rank).collect();
        let m = bases.len();
        let pos = |i: usize| m - 1 - i;

        let mut single = alloc::vec![0u64; n];
        for (i, b) in bases.iter().enumerate() {
            for &e in b {
                single[e] |= 1 << pos(i);
            }
        }
        let flip = (0..1u64 << n)
            .map(|r| {
                (0..n)
                    .filter(|&e| r >> e & 1 == 1)
                    .fold(0, |acc, e| acc ^ single[e])
            })
            .collect();

        let normal_bases = (rank - 1..n)
            .map(|e| {
                let mut b: Vec<usize> = (0..rank - 1).collect();
                b.push(e);
                (e, colex_rank(&b))
            })
            .collect();

        let mut relations = alloc::vec![Vec::new(); m];
        if rank >= 2 {
            for s in colex_subsets(n, rank - 2) {
                let rest: Vec<usize> = (0..n).filter(|e| !s.contains(e)).collect();
                for quad in colex_subsets(rest.len(), 4) {
                    let q: Vec<usize> = quad.iter().map(|&i| rest[i]).collect();
                    let entry = |x: usize, y: usize| {
                        let mut t = s.clone();
                        t.push(x);
                        t.push(y);
                        let odd = sort_parity(&t);
                        t.sort_unstable();
                        (colex_rank(&t), odd)
                    };
                    let term = |x: (usize, usize), y: (usize, usize), negated: bool| {
                        let (i, a) = entry(x.0, x.1);
                        let (j, b) = entry(y.0, y.1);
                        (i, j, a ^ b ^ negated)
                    };
                    let rel = [
                        term((q[0], q[1]), (q[2], q[3]), false),
                        term((q[0], q[2]), (q[1], q[3]), true),
                        term((q[0], q[3]), (q[1], q[2]), false),
                    ];
                    let top = rel.iter().map(|t| t.0.max(t.1)).max().expect("three terms");
                    relations[top].push(rel);
                }
            }
        }

        let mut relabels = Vec::new();
        let mut sigma = Permutation::identity(n);
        loop {
            let mut target = Vec::with_capacity(m);
            let mut odd = Vec::with_capacity(m);
            for b in &bases {
                let image: Vec<usize> = b.iter().map(|&e| sigma.image(e)).collect();
                odd.push(sort_parity(&image));
                let mut sorted = image;
                sorted.sort_unstable();
                target.push(pos(colex_rank(&sorted)) as u8);
            }
            relabels.push(Relabel { target, odd });
            if !sigma.next_lex() {
                break;
            }
        }

        Self {
            rank,
            m,
            flip,
            normal_bases,
            relations,
            relabels,
        }
    }

    fn bit(&self, key: u64, i: usize) -> bool {
        key >> (self.m - 1 - i) & 1 == 1
    }

    fn full(&self) -> u64 {
        if self.m == 64 {
            u64::MAX
        } else {
            (1u64 << self.m) - 1
        }
    }

    fn normalize(&self, key: u64) -> u64 {
        let r = self
            .normal_bases
            .iter()
            .filter(|&&(_, i)| self.bit(key, i))
            .fold(0u64, |acc, &(e, _)| acc | 1 << e);
        key ^ self.flip[r as usize]
    }

    fn relabel(&self, key: u64, sigma: &Relabel) -> u64 {
        (0..self.m).fold(0u64, |acc, i| {
            if self.bit(key, i) ^ sigma.odd[i] {
                acc | 1 << sigma.target[i]
            } else {
                acc
            }
        })
    }
}

struct Search<'a> {
    t: &'a Tables,
    seen: HashSet<u64>,
    classes: Vec<u64>,
}

impl Search<'_> {
    fn dfs(&mut self, i: usize, key: u64) {
        let t = self.t;
        if i == t.m {
            if !self.seen.contains(&key) {
                self.new_class(key);
            }
            return;
        }
        let forced = t.normal_bases.iter().any(|&(_, b)| b == i);
        for negative in [false, true] {
            if negative && forced {
                continue;
            }
            let key = if negative {
                key | 1 << (t.m - 1 - i)
            } else {
                key
            };
            let ok = t.relations[i].iter().all(|rel| {
                let s = rel.map(|(a, b, c)| t.bit(key, a) ^ t.bit(key, b) ^ c);
                !(s[0] == s[1] && s[1] == s[2])
            });
            if ok {
                self.dfs(i + 1, key);
            }
        }
    }

    /// Mark every normalized member of the orbit of `key` and record the
    /// orbit's smallest value string.
    fn new_class(&mut self, key: u64) {
        let t = self.t;
        let full = t.full();
        let inner = 1usize << (t.rank - 1);
        let mut best = u64::MAX;
        for sigma in &t.relabels {
            let base = t.relabel(key, sigma);
            for flip in &t.flip {
                let g = base ^ flip;
                best = best.min(g).min(g ^ full);
            }
            // Reorientations inside {0..r−2} are the only ones normalization
            // cannot undo.
            for u in 0..inner {
                let g = base ^ t.flip[u];
                self.seen.insert(t.normalize(g));
                self.seen.insert(t.normalize(g ^ full));
            }
        }
        self.classes.push(best);
    }
}
