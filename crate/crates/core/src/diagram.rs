//! Oriented link diagrams given by PD codes.
//!
//! A crossing `X[i,j,k,l]` lists its four arcs counterclockwise starting from
//! the incoming under-strand, so the under-strand runs `i → k`. The
//! over-strand runs either `l → j` (a positive crossing) or `j → l` (a
//! negative one). Its direction is recovered by chasing orientations along
//! arcs. A crossing-free component is written `O[c]`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poly::{int, Rational};
use crate::web::{Junction, JunctionKind, Web};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub arcs: [u32; 4],
    /// Slot (1 or 3) where the over-strand enters.
    pub over_in: usize,
    pub sign: Sign,
}

impl Crossing {
    pub fn over_out(&self) -> usize {
        4 - self.over_in
    }

    /// Incoming arcs `[under, over]`.
    pub fn ins(&self) -> [u32; 2] {
        [self.arcs[0], self.arcs[self.over_in]]
    }

    /// Outgoing arcs `[over, under]`, so that `ins[k] → outs[k]` is the
    /// oriented smoothing.
    pub fn outs(&self) -> [u32; 2] {
        [self.arcs[self.over_out()], self.arcs[2]]
    }
}

/// Where a crossing was written in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    loops: Vec<u32>,
    /// Component index of every arc, components numbered by smallest arc.
    component_of: BTreeMap<u32, usize>,
    components: usize,
}

/// Choice of smoothing at one crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Resolution {
    Oriented,
    Singular,
}

/// A resolution of every crossing; bit `c` set means crossing `c` is singular.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResolutionWord {
    singular: u64,
    len: usize,
}

impl ResolutionWord {
    pub fn all_oriented(len: usize) -> Self {
        ResolutionWord { singular: 0, len }
    }

    pub fn from_bits(singular: u64, len: usize) -> Self {
        debug_assert!(len <= 64);
        let mask = if len == 64 { u64::MAX } else { (1 << len) - 1 };
        ResolutionWord {
            singular: singular & mask,
            len,
        }
    }

    pub fn from_choices(choices: &[Resolution]) -> Self {
        let bits = choices
            .iter()
            .enumerate()
            .filter(|(_, r)| **r == Resolution::Singular)
            .fold(0, |acc, (i, _)| acc | 1 << i);
        Self::from_bits(bits, choices.len())
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u64 {
        self.singular
    }

    pub fn get(&self, c: usize) -> Resolution {
        if (self.singular >> c) & 1 == 1 {
            Resolution::Singular
        } else {
            Resolution::Oriented
        }
    }

    pub fn with(&self, c: usize, r: Resolution) -> Self {
        let bits = match r {
            Resolution::Singular => self.singular | 1 << c,
            Resolution::Oriented => self.singular & !(1 << c),
        };
        ResolutionWord {
            singular: bits,
            len: self.len,
        }
    }

    pub fn singular_count(&self) -> u32 {
        self.singular.count_ones()
    }
}

/// `o` for oriented and `s` for singular, crossing 0 first.
impl fmt::Display for ResolutionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in 0..self.len {
            let ch = match self.get(c) {
                Resolution::Oriented => 'o',
                Resolution::Singular => 's',
            };
            write!(f, "{ch}")?;
        }
        Ok(())
    }
}

impl LinkDiagram {
    /// The crossing-free unknot.
    pub fn unknot() -> Self {
        Self::from_pd(&[], &[1]).expect("unknot is valid")
    }

    /// Builds a diagram from PD crossings and free loops.
    pub fn from_pd(crossings: &[[u32; 4]], loops: &[u32]) -> Result<Self> {
        let locs = vec![Location::default(); crossings.len()];
        build(crossings, loops, &locs, None)
    }

    /// Closure of a braid on `strands` strands. Generator `k` (1-based)
    /// is `σ_k`, and `-k` is its inverse. `σ_k` passes the left strand over.
    pub fn from_braid(strands: usize, word: &[i32]) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidDiagram("braid with no strands".into()));
        }
        let mut cur: Vec<u32> = (1..=strands as u32).collect();
        let mut next = strands as u32 + 1;
        let mut pd = Vec::new();
        let mut hints = Vec::new();
        for &g in word {
            let i = g.unsigned_abs() as usize;
            if g == 0 || i >= strands {
                return Err(Error::InvalidDiagram(format!(
                    "braid generator {g} on {strands} strands"
                )));
            }
            let (left, right) = (cur[i - 1], cur[i]);
            let (a, b) = (next, next + 1);
            next += 2;
            if g > 0 {
                // Over: left → right position. Under: right → left position.
                pd.push([right, b, a, left]);
                hints.push(3);
                cur[i - 1] = a;
                cur[i] = b;
            } else {
                // Over: right → left position. Under: left → right position.
                pd.push([left, right, b, a]);
                hints.push(1);
                cur[i - 1] = a;
                cur[i] = b;
            }
        }
        let mut rename = BTreeMap::new();
        let mut loops = Vec::new();
        for (p, &end) in cur.iter().enumerate() {
            let start = p as u32 + 1;
            if end == start {
                loops.push(start);
            } else {
                rename.insert(end, start);
            }
        }
        for x in &mut pd {
            for a in x.iter_mut() {
                if let Some(&s) = rename.get(a) {
                    *a = s;
                }
            }
        }
        let locs = vec![Location::default(); pd.len()];
        build(&pd, &loops, &locs, Some(&hints))
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn loops(&self) -> &[u32] {
        &self.loops
    }

    pub fn num_components(&self) -> usize {
        self.components
    }

    pub fn component_of(&self, arc: u32) -> usize {
        self.component_of[&arc]
    }

    pub fn arcs(&self) -> impl Iterator<Item = u32> + '_ {
        self.component_of.keys().copied()
    }

    pub fn writhe(&self) -> i32 {
        self.crossings.iter().map(|c| c.sign.value()).sum()
    }

    pub fn num_positive(&self) -> usize {
        self.crossings
            .iter()
            .filter(|c| c.sign == Sign::Positive)
            .count()
    }

    pub fn num_negative(&self) -> usize {
        self.num_crossings() - self.num_positive()
    }

    /// Components of the under- and over-strand of crossing `c`.
    pub fn crossing_components(&self, c: usize) -> (usize, usize) {
        let x = &self.crossings[c];
        (self.component_of(x.arcs[0]), self.component_of(x.arcs[x.over_in]))
    }

    /// `lk(i, j) = ½ Σ` signs of crossings between components `i ≠ j`; the
    /// diagonal holds the writhe of each component.
    pub fn linking_matrix(&self) -> Vec<Vec<Rational>> {
        let n = self.components;
        let mut twice = vec![vec![0i64; n]; n];
        for (c, x) in self.crossings.iter().enumerate() {
            let (u, o) = self.crossing_components(c);
            let s = x.sign.value() as i64;
            if u == o {
                twice[u][u] += 2 * s;
            } else {
                twice[u][o] += s;
                twice[o][u] += s;
            }
        }
        twice
            .into_iter()
            .map(|row| row.into_iter().map(|t| int(t) / int(2)).collect())
            .collect()
    }

    /// The diagram with every crossing changed.
    pub fn mirror(&self) -> Self {
        let mut pd = Vec::new();
        let mut hints = Vec::new();
        for x in &self.crossings {
            let [i, j, k, l] = x.arcs;
            match x.sign {
                Sign::Positive => {
                    pd.push([l, i, j, k]);
                    hints.push(1);
                }
                Sign::Negative => {
                    pd.push([j, k, l, i]);
                    hints.push(3);
                }
            }
        }
        let locs = vec![Location::default(); pd.len()];
        build(&pd, &self.loops, &locs, Some(&hints)).expect("mirror of a valid diagram")
    }

    /// The diagram with crossing `c` changed, orientation kept.
    pub fn change_crossing(&self, c: usize) -> Self {
        let mut pd: Vec<[u32; 4]> = Vec::new();
        let mut hints = Vec::new();
        for (i, x) in self.crossings.iter().enumerate() {
            let [a, b, cc, d] = x.arcs;
            if i != c {
                pd.push(x.arcs);
                hints.push(x.over_in);
            } else if x.sign == Sign::Positive {
                pd.push([d, a, b, cc]);
                hints.push(1);
            } else {
                pd.push([b, cc, d, a]);
                hints.push(3);
            }
        }
        let locs = vec![Location::default(); pd.len()];
        build(&pd, &self.loops, &locs, Some(&hints)).expect("crossing change of a valid diagram")
    }

    /// The diagram with crossing `c` replaced by its oriented smoothing.
    pub fn smooth_crossing(&self, c: usize) -> Self {
        let x = &self.crossings[c];
        let mut rename: BTreeMap<u32, u32> = BTreeMap::new();
        for (i, o) in x.ins().into_iter().zip(x.outs()) {
            rename.insert(o, i);
        }
        let resolve = |mut a: u32| {
            for _ in 0..rename.len() {
                match rename.get(&a) {
                    Some(&b) if b != a => a = b,
                    _ => break,
                }
            }
            a
        };
        let mut pd = Vec::new();
        let mut hints = Vec::new();
        for (i, y) in self.crossings.iter().enumerate() {
            if i != c {
                pd.push(y.arcs.map(resolve));
                hints.push(y.over_in);
            }
        }
        let mut loops = self.loops.clone();
        let used: BTreeSet<u32> = pd.iter().flatten().copied().collect();
        let mut freed: Vec<u32> = x.ins().into_iter().map(resolve).filter(|a| !used.contains(a)).collect();
        freed.sort_unstable();
        freed.dedup();
        loops.extend(freed);
        let locs = vec![Location::default(); pd.len()];
        build(&pd, &loops, &locs, Some(&hints)).expect("smoothing of a valid diagram")
    }

    /// Resolves every crossing according to `w`.
    pub fn resolve(&self, w: &ResolutionWord) -> Web {
        assert_eq!(w.len(), self.num_crossings(), "resolution word length");
        let junctions = self
            .crossings
            .iter()
            .enumerate()
            .map(|(c, x)| Junction {
                kind: match w.get(c) {
                    Resolution::Oriented => JunctionKind::Pass,
                    Resolution::Singular => JunctionKind::Singular,
                },
                ins: x.ins(),
                outs: x.outs(),
            })
            .collect();
        let seifert = self.seifert_circles();
        Web::new(junctions, self.loops.clone())
            .expect("resolutions of a valid diagram are valid webs")
            .with_provenance(seifert)
    }

    /// Number of circles in the all-oriented resolution.
    pub fn seifert_circles(&self) -> usize {
        let junctions = self
            .crossings
            .iter()
            .map(|x| Junction {
                kind: JunctionKind::Pass,
                ins: x.ins(),
                outs: x.outs(),
            })
            .collect();
        Web::new(junctions, self.loops.clone())
            .expect("oriented resolution is a valid web")
            .cycles()
            .len()
    }

    /// PD text, one crossing per line.
    pub fn to_pd_string(&self) -> String {
        let mut s = String::new();
        for x in &self.crossings {
            let [i, j, k, l] = x.arcs;
            s.push_str(&format!("X[{i},{j},{k},{l}]\n"));
        }
        for c in &self.loops {
            s.push_str(&format!("O[{c}]\n"));
        }
        s
    }
}

impl FromStr for LinkDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (pd, loops, locs) = parse_pd(s)?;
        build(&pd, &loops, &locs, None)
    }
}

fn parse_error(loc: Location, message: impl Into<String>) -> Error {
    Error::Parse {
        line: loc.line,
        column: loc.column,
        message: message.into(),
    }
}

type ParsedPd = (Vec<[u32; 4]>, Vec<u32>, Vec<Location>);

/// Tokenizes PD text. Accepts `X[..]` and `O[..]` items separated by
/// whitespace or commas, an optional `PD[ … ]` wrapper and `#` comments.
fn parse_pd(text: &str) -> Result<ParsedPd> {
    let mut pd = Vec::new();
    let mut loops = Vec::new();
    let mut locs = Vec::new();
    let mut loop_locs = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        let loc = |i: usize| Location {
            line: ln + 1,
            column: i + 1,
        };
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() || c == ',' || c == ']' {
                i += 1;
                continue;
            }
            if chars[i..].starts_with(&['P', 'D', '[']) {
                i += 3;
                continue;
            }
            if (c == 'X' || c == 'O') && chars.get(i + 1) == Some(&'[') {
                let start = i;
                let close = chars[i..]
                    .iter()
                    .position(|&ch| ch == ']')
                    .map(|p| p + i)
                    .ok_or_else(|| parse_error(loc(i), "missing ']'"))?;
                let body: String = chars[i + 2..close].iter().collect();
                let mut ids = Vec::new();
                let mut col = i + 2;
                for part in body.split(',') {
                    let t = part.trim();
                    let id = t.parse::<u32>().map_err(|_| {
                        parse_error(loc(col), format!("expected arc id, found {t:?}"))
                    })?;
                    ids.push(id);
                    col += part.chars().count() + 1;
                }
                if c == 'X' {
                    let arcs: [u32; 4] = ids.try_into().map_err(|v: Vec<u32>| {
                        parse_error(loc(start), format!("crossing has {} arcs, expected 4", v.len()))
                    })?;
                    pd.push(arcs);
                    locs.push(loc(start));
                } else {
                    if ids.len() != 1 {
                        return Err(parse_error(loc(start), "loop takes exactly one arc id"));
                    }
                    loops.push(ids[0]);
                    loop_locs.push(loc(start));
                }
                i = close + 1;
                continue;
            }
            return Err(parse_error(loc(i), format!("unexpected character {c:?}")));
        }
    }
    if pd.is_empty() && loops.is_empty() {
        return Err(parse_error(Location { line: 1, column: 1 }, "empty diagram"));
    }
    // Loops share the crossing location table after the crossings.
    locs.extend(loop_locs);
    Ok((pd, loops, locs))
}

/// Validates arcs, chases orientations and computes signs and components.
/// `hints[c]` fixes the over-in slot of crossing `c` when known.
fn build(
    pd: &[[u32; 4]],
    loops: &[u32],
    locs: &[Location],
    hints: Option<&[usize]>,
) -> Result<LinkDiagram> {
    let n = pd.len();
    let loc_of = |c: usize| locs.get(c).copied().unwrap_or_default();

    let mut ends: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
    for (c, x) in pd.iter().enumerate() {
        for (s, &a) in x.iter().enumerate() {
            ends.entry(a).or_default().push((c, s));
        }
    }
    for (a, e) in &ends {
        if e.len() != 2 {
            let (c, _) = e[0];
            return Err(parse_error(
                loc_of(c),
                format!("arc {a} appears {} time(s); every arc needs two ends", e.len()),
            ));
        }
    }
    let mut seen_loops = BTreeSet::new();
    for (k, &l) in loops.iter().enumerate() {
        if ends.contains_key(&l) || !seen_loops.insert(l) {
            return Err(parse_error(loc_of(n + k), format!("loop arc {l} is reused")));
        }
    }

    // role[c][s]: Some(true) when the strand enters crossing c at slot s.
    let mut role = vec![[None::<bool>; 4]; n];
    let mut queue = VecDeque::new();
    let assign = |role: &mut Vec<[Option<bool>; 4]>,
                      queue: &mut VecDeque<(usize, usize)>,
                      c: usize,
                      s: usize,
                      v: bool|
     -> Result<()> {
        match role[c][s] {
            Some(old) if old != v => Err(parse_error(
                loc_of(c),
                format!("inconsistent orientation at slot {} of crossing {}", s + 1, c + 1),
            )),
            Some(_) => Ok(()),
            None => {
                role[c][s] = Some(v);
                queue.push_back((c, s));
                Ok(())
            }
        }
    };
    for c in 0..n {
        assign(&mut role, &mut queue, c, 0, true)?;
        assign(&mut role, &mut queue, c, 2, false)?;
        if let Some(h) = hints {
            assign(&mut role, &mut queue, c, h[c], true)?;
        }
    }
    let mut next_free = 0;
    loop {
        while let Some((c, s)) = queue.pop_front() {
            let v = role[c][s].unwrap();
            let a = pd[c][s];
            for &(c2, s2) in &ends[&a] {
                if (c2, s2) != (c, s) {
                    assign(&mut role, &mut queue, c2, s2, !v)?;
                }
            }
            if s == 1 || s == 3 {
                assign(&mut role, &mut queue, c, 4 - s, !v)?;
            }
        }
        while next_free < n && role[next_free][1].is_some() {
            next_free += 1;
        }
        if next_free == n {
            break;
        }
        let [_, j, _, l] = pd[next_free];
        let slot = if l == j + 1 || j > l + 1 { 1 } else { 3 };
        assign(&mut role, &mut queue, next_free, slot, true)?;
    }

    let crossings: Vec<Crossing> = pd
        .iter()
        .enumerate()
        .map(|(c, &arcs)| {
            let over_in = if role[c][1] == Some(true) { 1 } else { 3 };
            let sign = if over_in == 3 {
                Sign::Positive
            } else {
                Sign::Negative
            };
            Crossing {
                arcs,
                over_in,
                sign,
            }
        })
        .collect();

    // Components: union arcs joined through crossings.
    let mut parent: BTreeMap<u32, u32> = ends.keys().map(|&a| (a, a)).collect();
    fn find(parent: &mut BTreeMap<u32, u32>, a: u32) -> u32 {
        let p = parent[&a];
        if p == a {
            return a;
        }
        let r = find(parent, p);
        parent.insert(a, r);
        r
    }
    for x in &crossings {
        let strands = [(x.arcs[0], x.arcs[2]), (x.arcs[x.over_in], x.arcs[x.over_out()])];
        for (i, o) in strands {
            let (ri, ro) = (find(&mut parent, i), find(&mut parent, o));
            if ri != ro {
                parent.insert(ri.max(ro), ri.min(ro));
            }
        }
    }
    let mut roots: BTreeMap<u32, u32> = BTreeMap::new();
    let arcs: Vec<u32> = ends.keys().copied().collect();
    for &a in &arcs {
        let r = find(&mut parent, a);
        let e = roots.entry(r).or_insert(a);
        *e = (*e).min(a);
    }
    let mut reps: Vec<u32> = roots.values().copied().chain(loops.iter().copied()).collect();
    reps.sort_unstable();
    let index: BTreeMap<u32, usize> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut component_of = BTreeMap::new();
    for &a in &arcs {
        let r = find(&mut parent, a);
        component_of.insert(a, index[&roots[&r]]);
    }
    for &l in loops {
        component_of.insert(l, index[&l]);
    }

    Ok(LinkDiagram {
        crossings,
        loops: loops.to_vec(),
        components: reps.len(),
        component_of,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pd(s: &str) -> LinkDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn unknot_and_kinks() {
        let u = pd("O[1]");
        assert_eq!((u.num_components(), u.num_crossings()), (1, 0));
        assert_eq!(pd("X[1,1,2,2]").crossings()[0].sign, Sign::Positive);
        assert_eq!(pd("X[1,2,2,1]").crossings()[0].sign, Sign::Negative);
    }

    #[test]
    fn hopf_signs() {
        let h = pd("X[4,1,3,2]\nX[2,3,1,4]");
        assert_eq!(h.num_components(), 2);
        let signs: Vec<Sign> = h.crossings().iter().map(|c| c.sign).collect();
        assert_eq!(signs[0], signs[1]);
        let m = h.mirror();
        assert_eq!(m.writhe(), -h.writhe());
        assert_eq!(m.linking_matrix()[0][1], -h.linking_matrix()[0][1].clone());
        use num_traits::Signed;
        assert_eq!(h.linking_matrix()[0][1].abs(), int(1));
    }

    #[test]
    fn trefoil_writhe() {
        let t = pd("X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]");
        assert_eq!(t.num_components(), 1);
        assert_eq!(t.writhe().abs(), 3);
        assert_eq!(t.linking_matrix(), vec![vec![int(t.writhe() as i64)]]);
    }

    #[test]
    fn parse_errors_carry_location() {
        match "X[1,2,3,4]\nX[1,2,3]".parse::<LinkDiagram>() {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 1)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            "X[1,2,3,5]".parse::<LinkDiagram>(),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!("Y[1]".parse::<LinkDiagram>().is_err());
        assert!("".parse::<LinkDiagram>().is_err());
        // Both arcs 1 and 2 would have to enter the first crossing.
        assert!("X[1,2,3,4]\nX[1,4,3,2]".parse::<LinkDiagram>().is_err());
    }

    #[test]
    fn braid_closure() {
        let hopf = LinkDiagram::from_braid(2, &[1, 1]).unwrap();
        assert_eq!(hopf.num_components(), 2);
        assert_eq!(hopf.writhe(), 2);
        let t = LinkDiagram::from_braid(2, &[1, 1, 1]).unwrap();
        assert_eq!((t.num_components(), t.writhe()), (1, 3));
        let u = LinkDiagram::from_braid(2, &[1, -1]).unwrap();
        assert_eq!((u.num_components(), u.writhe()), (2, 0));
        assert_eq!(u.linking_matrix()[0][1], int(0));
    }

    #[test]
    fn resolution_word_text() {
        let w = ResolutionWord::from_choices(&[Resolution::Oriented, Resolution::Singular]);
        assert_eq!(w.to_string(), "os");
        assert_eq!(w.with(0, Resolution::Singular).singular_count(), 2);
    }
}
