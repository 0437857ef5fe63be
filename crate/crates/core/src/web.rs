//! Closed webs with bivalent vertices.
//!
//! Every web here comes from a resolved crossing, so it is stored as a list of
//! junctions. A junction has two incoming edges `ins` and two outgoing edges
//! `outs`. A [`JunctionKind::Pass`] joins `ins[k]` to `outs[k]` (the oriented
//! resolution). A [`JunctionKind::Singular`] junction carries an in-in vertex
//! absorbing both `ins` and an out-out vertex emitting both `outs`. Edges are
//! named by the diagram arcs they came from; free loops have no junction.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JunctionKind {
    Pass,
    Singular,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Junction {
    pub kind: JunctionKind,
    pub ins: [u32; 2],
    pub outs: [u32; 2],
}

/// A cycle of the web: its edges in traversal order and its vertex count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    pub edges: Vec<u32>,
    pub vertices: usize,
    /// Traversal direction of each edge relative to its orientation.
    pub forward: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Web {
    junctions: Vec<Junction>,
    loops: Vec<u32>,
    /// `(junction, k)` where each edge ends (as `ins[k]`) and starts (as `outs[k]`).
    head: BTreeMap<u32, (usize, usize)>,
    tail: BTreeMap<u32, (usize, usize)>,
    seifert_circles: Option<usize>,
}

impl Web {
    /// Validates that every edge ends at exactly one junction and starts at
    /// exactly one, or is a free loop.
    pub fn new(junctions: Vec<Junction>, loops: Vec<u32>) -> Result<Self> {
        let mut head = BTreeMap::new();
        let mut tail = BTreeMap::new();
        for (j, x) in junctions.iter().enumerate() {
            for k in 0..2 {
                if head.insert(x.ins[k], (j, k)).is_some() {
                    return Err(Error::InvalidWeb(format!("edge {} ends twice", x.ins[k])));
                }
                if tail.insert(x.outs[k], (j, k)).is_some() {
                    return Err(Error::InvalidWeb(format!("edge {} starts twice", x.outs[k])));
                }
            }
        }
        let heads: BTreeSet<_> = head.keys().collect();
        let tails: BTreeSet<_> = tail.keys().collect();
        if heads != tails {
            let e = heads.symmetric_difference(&tails).next().unwrap();
            return Err(Error::InvalidWeb(format!("edge {e} is open")));
        }
        let mut seen = BTreeSet::new();
        for l in &loops {
            if head.contains_key(l) || !seen.insert(*l) {
                return Err(Error::InvalidWeb(format!("loop edge {l} is reused")));
            }
        }
        let web = Web {
            junctions,
            loops,
            head,
            tail,
            seifert_circles: None,
        };
        if let Some(c) = web.cycles().iter().find(|c| c.vertices % 2 == 1) {
            return Err(Error::InvalidWeb(format!(
                "cycle through edge {} has an odd vertex count",
                c.edges[0]
            )));
        }
        Ok(web)
    }

    /// Records the number of circles of the all-oriented resolution.
    pub fn with_provenance(mut self, seifert_circles: usize) -> Self {
        self.seifert_circles = Some(seifert_circles);
        self
    }

    /// Records provenance read off the junction labels, taking `ins[k] → outs[k]`
    /// as the oriented resolution of every singular junction.
    pub fn with_junction_provenance(self) -> Self {
        let oriented: Vec<Junction> = self
            .junctions
            .iter()
            .map(|j| Junction {
                kind: JunctionKind::Pass,
                ..j.clone()
            })
            .collect();
        let circles = Web::new(oriented, self.loops.clone())
            .expect("relabelled junctions stay valid")
            .cycles()
            .len();
        self.with_provenance(circles)
    }

    pub fn junctions(&self) -> &[Junction] {
        &self.junctions
    }

    pub fn loops(&self) -> &[u32] {
        &self.loops
    }

    /// All edges in increasing order.
    pub fn edges(&self) -> Vec<u32> {
        let mut e: Vec<u32> = self.head.keys().chain(&self.loops).copied().collect();
        e.sort_unstable();
        e
    }

    pub fn num_vertices(&self) -> usize {
        2 * self
            .junctions
            .iter()
            .filter(|j| j.kind == JunctionKind::Singular)
            .count()
    }

    /// Cycles ordered by their smallest edge, each listed from that edge in
    /// its forward direction.
    pub fn cycles(&self) -> Vec<Cycle> {
        let mut visited = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.edges() {
            if visited.contains(&start) {
                continue;
            }
            if self.loops.contains(&start) {
                visited.insert(start);
                out.push(Cycle {
                    edges: vec![start],
                    vertices: 0,
                    forward: vec![true],
                });
                continue;
            }
            let mut cycle = Cycle {
                edges: Vec::new(),
                vertices: 0,
                forward: Vec::new(),
            };
            let (mut e, mut fwd) = (start, true);
            loop {
                visited.insert(e);
                cycle.edges.push(e);
                cycle.forward.push(fwd);
                let (next, next_fwd, vertex) = self.step(e, fwd);
                cycle.vertices += vertex as usize;
                (e, fwd) = (next, next_fwd);
                if e == start && fwd {
                    break;
                }
            }
            out.push(cycle);
        }
        out
    }

    /// Edge reached after leaving `e` through its head (`fwd`) or tail.
    /// Returns the next edge, its traversal direction and whether a vertex
    /// was crossed.
    fn step(&self, e: u32, fwd: bool) -> (u32, bool, bool) {
        if fwd {
            let (j, k) = self.head[&e];
            let x = &self.junctions[j];
            match x.kind {
                JunctionKind::Pass => (x.outs[k], true, false),
                JunctionKind::Singular => (x.ins[1 - k], false, true),
            }
        } else {
            let (j, k) = self.tail[&e];
            let x = &self.junctions[j];
            match x.kind {
                JunctionKind::Pass => (x.ins[k], false, false),
                JunctionKind::Singular => (x.outs[1 - k], true, true),
            }
        }
    }

    /// Index into [`Web::cycles`] of the cycle through each edge.
    pub fn cycle_index(&self) -> BTreeMap<u32, usize> {
        self.cycles()
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.edges.iter().map(move |&e| (e, i)))
            .collect()
    }

    /// Parity of the number of circles of the all-oriented resolution.
    pub fn p_parity(&self) -> Result<u8> {
        self.seifert_circles
            .map(|c| (c % 2) as u8)
            .ok_or(Error::MissingProvenance)
    }
}
