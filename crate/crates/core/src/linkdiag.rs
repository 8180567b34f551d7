//! Oriented link diagrams given as planar-diagram codes or braid closures.
//!
//! PD convention: in `X(a,b,c,d)` the under-strand enters at `a` and leaves
//! at `c`, and the labels run counter-clockwise. The over-strand occupies
//! `b` and `d`; the crossing is positive when it runs from `d` to `b`.
//! Orientation of each component is traced from its under-crossings; a
//! component that only passes over is oriented by label succession.
//!
//! Braid convention: letter `i > 0` is the positive crossing `σ_i` between
//! positions `i` and `i + 1` (1-based); in it the strand moving from
//! position `i + 1` to `i` passes over. Negative letters are inverses.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("linking number of component {0} with itself")]
    SameComponent(usize),
    #[error("no component {index} (diagram has {count})")]
    UnknownComponent { index: usize, count: usize },
    #[error("three-strand twist needs at least 3 strands, braid has {0}")]
    TooFewStrands(usize),
    #[error("{what} {index} out of range (bound {bound})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        bound: usize,
    },
}

pub type Result<T> = std::result::Result<T, LinkError>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(LinkError::InvalidDiagram("a braid needs at least one strand".into()));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(LinkError::InvalidDiagram(format!(
                    "letter {l} out of range for {strands} strands"
                )));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Result<Self> {
        Self::new(strands, Vec::new())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `perm[p]` is the bottom position of the strand starting at top
    /// position `p` (0-based).
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect(); // position -> starting strand
        for &l in &self.letters {
            let p = l.unsigned_abs() as usize - 1;
            at.swap(p, p + 1);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &start) in at.iter().enumerate() {
            perm[start] = pos;
        }
        perm
    }

    /// Cycles of the permutation, each listed from its smallest strand and
    /// ordered by that strand.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut out = Vec::new();
        for s in 0..self.strands {
            if seen[s] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = s;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = perm[p];
            }
            out.push(cycle);
        }
        out
    }

    /// Cancels adjacent inverse letters until none remain.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord { strands: self.strands, letters: out }
    }

    pub fn inverse(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    /// Positive Markov stabilization: a new last strand joined by `σ_s`.
    pub fn stabilize(&self) -> Self {
        let mut letters = self.letters.clone();
        letters.push(self.strands as i32);
        BraidWord { strands: self.strands + 1, letters }
    }

    /// `g · self · g⁻¹` for a single generator letter `g`.
    pub fn conjugate(&self, g: i32) -> Result<Self> {
        let mut letters = Vec::with_capacity(self.letters.len() + 2);
        letters.push(g);
        letters.extend_from_slice(&self.letters);
        letters.push(-g);
        Self::new(self.strands, letters)
    }

    /// Inserts the full twist `(σ_i σ_{i+1})³` (or its inverse when
    /// `sign < 0`) on strands `i, i+1, i+2` before letter `position`.
    pub fn insert_full_twist(&self, position: usize, strand: usize, sign: i8) -> Result<Self> {
        if self.strands < 3 {
            return Err(LinkError::TooFewStrands(self.strands));
        }
        if strand < 1 || strand > self.strands - 2 {
            return Err(LinkError::IndexOutOfRange {
                what: "strand",
                index: strand,
                bound: self.strands - 2,
            });
        }
        if position > self.letters.len() {
            return Err(LinkError::IndexOutOfRange {
                what: "position",
                index: position,
                bound: self.letters.len(),
            });
        }
        let i = strand as i32;
        let twist: Vec<i32> = if sign >= 0 {
            [i, i + 1].repeat(3)
        } else {
            [-(i + 1), -i].repeat(3)
        };
        let mut letters = self.letters.clone();
        letters.splice(position..position, twist);
        Ok(BraidWord { strands: self.strands, letters })
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "BR[{}: {}]", self.strands, body.join(" "))
    }
}

/// `apply_three_strand_twist`: the delta move on a braid closure.
pub fn apply_three_strand_twist(
    b: &BraidWord,
    position: usize,
    strand: usize,
    sign: i8,
) -> Result<BraidWord> {
    b.insert_full_twist(position, strand, sign)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PdCode(pub Vec<[u32; 4]>);

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xs: Vec<String> = self
            .0
            .iter()
            .map(|[a, b, c, d]| format!("X({a},{b},{c},{d})"))
            .collect();
        write!(f, "PD[{}]", xs.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LinkSource {
    Pd(PdCode),
    Braid(BraidWord),
}

impl fmt::Display for LinkSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinkSource::Pd(pd) => pd.fmt(f),
            LinkSource::Braid(b) => b.fmt(f),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    /// PD slots `a, b, c, d`.
    pub edges: [u32; 4],
    pub sign: i8,
    pub under: usize,
    pub over: usize,
}

impl Crossing {
    pub fn under_in(&self) -> u32 {
        self.edges[0]
    }

    pub fn under_out(&self) -> u32 {
        self.edges[2]
    }

    pub fn over_in(&self) -> u32 {
        if self.sign > 0 {
            self.edges[3]
        } else {
            self.edges[1]
        }
    }

    pub fn over_out(&self) -> u32 {
        if self.sign > 0 {
            self.edges[1]
        } else {
            self.edges[3]
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    source: LinkSource,
    crossings: Vec<Crossing>,
    components: usize,
    edge_component: BTreeMap<u32, usize>,
}

impl LinkDiagram {
    pub fn from_braid(braid: BraidWord) -> Self {
        let cycles = braid.cycles();
        let mut component_of_start = vec![0; braid.strands];
        for (c, cycle) in cycles.iter().enumerate() {
            for &s in cycle {
                component_of_start[s] = c;
            }
        }

        // Walk each component once, recording the crossings it passes.
        struct Passage {
            level: usize,
            from_left: bool,
        }
        let mut edge_component = BTreeMap::new();
        // (level, from_left) -> (incoming label, outgoing label)
        let mut labels: BTreeMap<(usize, bool), (u32, u32)> = BTreeMap::new();
        let mut next_label = 1u32;
        for (c, cycle) in cycles.iter().enumerate() {
            let start = cycle[0];
            let mut passages = Vec::new();
            let mut pos = start;
            loop {
                for (level, &l) in braid.letters.iter().enumerate() {
                    let left = l.unsigned_abs() as usize - 1;
                    if pos == left {
                        passages.push(Passage { level, from_left: true });
                        pos = left + 1;
                    } else if pos == left + 1 {
                        passages.push(Passage { level, from_left: false });
                        pos = left;
                    }
                }
                if pos == start {
                    break;
                }
            }
            let m = passages.len() as u32;
            if m == 0 {
                continue;
            }
            let base = next_label;
            for label in base..base + m {
                edge_component.insert(label, c);
            }
            for (j, p) in passages.iter().enumerate() {
                let j = j as u32;
                let incoming = base + (j + m - 1) % m;
                let outgoing = base + j;
                labels.insert((p.level, p.from_left), (incoming, outgoing));
            }
            next_label += m;
        }

        let mut crossings = Vec::with_capacity(braid.letters.len());
        let mut at: Vec<usize> = (0..braid.strands).collect();
        for (level, &l) in braid.letters.iter().enumerate() {
            let left = l.unsigned_abs() as usize - 1;
            let left_comp = component_of_start[at[left]];
            let right_comp = component_of_start[at[left + 1]];
            let from_left = labels[&(level, true)];
            let from_right = labels[&(level, false)];
            let c = if l > 0 {
                // The strand from the right passes over.
                let (ui, uo) = from_left;
                let (oi, oo) = from_right;
                Crossing { edges: [ui, oo, uo, oi], sign: 1, under: left_comp, over: right_comp }
            } else {
                let (ui, uo) = from_right;
                let (oi, oo) = from_left;
                Crossing { edges: [ui, oi, uo, oo], sign: -1, under: right_comp, over: left_comp }
            };
            crossings.push(c);
            at.swap(left, left + 1);
        }
        LinkDiagram {
            source: LinkSource::Braid(braid),
            crossings,
            components: cycles.len(),
            edge_component,
        }
    }

    pub fn from_pd(pd: PdCode) -> Result<Self> {
        let (crossings, components, edge_component) = trace_pd(&pd.0)?;
        let d = LinkDiagram { source: LinkSource::Pd(pd), crossings, components, edge_component };
        d.check_linking_parity()?;
        Ok(d)
    }

    fn check_linking_parity(&self) -> Result<()> {
        let mut sums: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for c in &self.crossings {
            if c.under != c.over {
                let key = (c.under.min(c.over), c.under.max(c.over));
                *sums.entry(key).or_default() += c.sign as i64;
            }
        }
        match sums.iter().find(|(_, s)| *s % 2 != 0) {
            Some(((i, j), _)) => Err(LinkError::InvalidDiagram(format!(
                "odd signed crossing count between components {i} and {j}"
            ))),
            None => Ok(()),
        }
    }

    pub fn source(&self) -> &LinkSource {
        &self.source
    }

    pub fn braid(&self) -> Option<&BraidWord> {
        match &self.source {
            LinkSource::Braid(b) => Some(b),
            LinkSource::Pd(_) => None,
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn num_components(&self) -> usize {
        self.components
    }

    pub fn component_of_edge(&self, label: u32) -> Option<usize> {
        self.edge_component.get(&label).copied()
    }

    /// Edge labels in use, ascending.
    pub fn edges(&self) -> impl Iterator<Item = u32> + '_ {
        self.edge_component.keys().copied()
    }

    /// Components that pass through no crossing.
    pub fn free_components(&self) -> Vec<usize> {
        let used: BTreeSet<usize> = self.edge_component.values().copied().collect();
        (0..self.components).filter(|c| !used.contains(c)).collect()
    }

    /// PD code of the diagram; braid closures are converted.
    pub fn to_pd(&self) -> PdCode {
        match &self.source {
            LinkSource::Pd(pd) => pd.clone(),
            LinkSource::Braid(_) => PdCode(self.crossings.iter().map(|c| c.edges).collect()),
        }
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    pub fn linking_number(&self, i: usize, j: usize) -> Result<i64> {
        for k in [i, j] {
            if k >= self.components {
                return Err(LinkError::UnknownComponent { index: k, count: self.components });
            }
        }
        if i == j {
            return Err(LinkError::SameComponent(i));
        }
        let total: i64 = self
            .crossings
            .iter()
            .filter(|c| (c.under == i && c.over == j) || (c.under == j && c.over == i))
            .map(|c| c.sign as i64)
            .sum();
        Ok(total / 2)
    }

    /// Symmetric matrix of pairwise linking numbers with zero diagonal.
    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.components;
        let mut m = vec![vec![0i64; n]; n];
        for c in &self.crossings {
            if c.under != c.over {
                m[c.under][c.over] += c.sign as i64;
                m[c.over][c.under] += c.sign as i64;
            }
        }
        for row in &mut m {
            for x in row.iter_mut() {
                *x /= 2;
            }
        }
        m
    }

    pub fn parity_vector(&self) -> ParityVector {
        ParityVector(
            self.linking_matrix()
                .iter()
                .map(|row| row.iter().sum::<i64>().rem_euclid(2) as u8)
                .collect(),
        )
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.source.fmt(f)
    }
}

impl std::str::FromStr for LinkDiagram {
    type Err = LinkError;

    fn from_str(s: &str) -> Result<Self> {
        parse_link(s)
    }
}

type Traced = (Vec<Crossing>, usize, BTreeMap<u32, usize>);

fn trace_pd(xs: &[[u32; 4]]) -> Result<Traced> {
    if xs.is_empty() {
        return Err(LinkError::InvalidDiagram(
            "empty PD code; use BR[1: ] for the unknot".into(),
        ));
    }
    let mut occurrences: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
    for (x, edges) in xs.iter().enumerate() {
        for (slot, &label) in edges.iter().enumerate() {
            if label == 0 {
                return Err(LinkError::InvalidDiagram("edge labels must be positive".into()));
            }
            occurrences.entry(label).or_default().push((x, slot));
        }
    }
    if let Some((label, occ)) = occurrences.iter().find(|(_, o)| o.len() != 2) {
        return Err(LinkError::InvalidDiagram(format!(
            "edge {label} appears {} times, expected 2",
            occ.len()
        )));
    }
    let other_end = |label: u32, here: (usize, usize)| -> (usize, usize) {
        let occ = &occurrences[&label];
        if occ[0] == here {
            occ[1]
        } else {
            occ[0]
        }
    };
    // Undirected walk from an entry slot; returns entries visited in order.
    let walk = |start: (usize, usize)| -> Vec<(usize, usize)> {
        let mut entries = Vec::new();
        let mut at = start;
        loop {
            entries.push(at);
            let exit = (at.0, (at.1 + 2) % 4);
            at = other_end(xs[exit.0][exit.1], exit);
            if at == start {
                return entries;
            }
        }
    };

    let mut entry_slot: Vec<[Option<usize>; 2]> = vec![[None, None]; xs.len()]; // [under, over]
    let mut edge_comp_raw: BTreeMap<u32, usize> = BTreeMap::new();
    let mut raw_components = 0usize;
    let mut record = |entries: &[(usize, usize)],
                      entry_slot: &mut Vec<[Option<usize>; 2]>|
     -> Result<()> {
        for &(x, slot) in entries {
            let strand = slot % 2;
            if strand == 0 && slot != 0 {
                return Err(LinkError::InvalidDiagram(format!(
                    "crossing {} is traversed against its under-strand direction",
                    x + 1
                )));
            }
            if entry_slot[x][strand].is_some() {
                return Err(LinkError::InvalidDiagram(format!(
                    "crossing {} strand visited twice",
                    x + 1
                )));
            }
            entry_slot[x][strand] = Some(slot);
            edge_comp_raw.insert(xs[x][slot], raw_components);
        }
        raw_components += 1;
        Ok(())
    };

    for x in 0..xs.len() {
        if entry_slot[x][0].is_none() {
            let entries = walk((x, 0));
            record(&entries, &mut entry_slot)?;
        }
    }
    for x in 0..xs.len() {
        if entry_slot[x][1].is_some() {
            continue;
        }
        let labels: BTreeSet<u32> = walk((x, 1)).iter().map(|&(y, s)| xs[y][s]).collect();
        let (b, d) = (xs[x][1], xs[x][3]);
        let (min, max) = (*labels.first().unwrap(), *labels.last().unwrap());
        let start_slot = if d == b + 1 {
            1
        } else if b == d + 1 {
            3
        } else if b == max && d == min {
            1
        } else if d == max && b == min {
            3
        } else {
            return Err(LinkError::InvalidDiagram(format!(
                "cannot orient over-strand ({b},{d}) at crossing {}",
                x + 1
            )));
        };
        let entries = walk((x, start_slot));
        record(&entries, &mut entry_slot)?;
    }

    // Renumber components by smallest edge label.
    let mut smallest: BTreeMap<usize, u32> = BTreeMap::new();
    for (&label, &c) in &edge_comp_raw {
        smallest.entry(c).or_insert(label);
    }
    let mut order: Vec<(u32, usize)> = smallest.iter().map(|(&c, &l)| (l, c)).collect();
    order.sort();
    let mut renumber = vec![0; raw_components];
    for (new, &(_, old)) in order.iter().enumerate() {
        renumber[old] = new;
    }
    let edge_component: BTreeMap<u32, usize> =
        edge_comp_raw.iter().map(|(&l, &c)| (l, renumber[c])).collect();

    let crossings = xs
        .iter()
        .enumerate()
        .map(|(x, &edges)| {
            let over_entry = entry_slot[x][1].expect("every strand traced");
            Crossing {
                edges,
                sign: if over_entry == 3 { 1 } else { -1 },
                under: edge_component[&edges[0]],
                over: edge_component[&edges[1]],
            }
        })
        .collect();
    Ok((crossings, raw_components, edge_component))
}

/// Parses `PD[X(a,b,c,d), …]` or `BR[s: w1 w2 …]`.
pub fn parse_link(text: &str) -> Result<LinkDiagram> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    let d = if cur.eat("PD") {
        let pd = cur.pd_body()?;
        LinkDiagram::from_pd(pd)?
    } else if cur.eat("BR") {
        let b = cur.braid_body()?;
        LinkDiagram::from_braid(b)
    } else {
        return cur.error("expected `PD[` or `BR[`");
    };
    cur.skip_ws();
    if !cur.at_end() {
        return cur.error("trailing input");
    }
    Ok(d)
}

/// Parses a bare `BR[…]` braid.
pub fn parse_braid(text: &str) -> Result<BraidWord> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    if !cur.eat("BR") {
        return cur.error("expected `BR[`");
    }
    let b = cur.braid_body()?;
    cur.skip_ws();
    if !cur.at_end() {
        return cur.error("trailing input");
    }
    Ok(b)
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            self.error(format!("expected `{s}`"))
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(LinkError::Syntax { offset: self.pos, message: message.into() })
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let r = self.rest();
        let sign_len = usize::from(r.starts_with('-') || r.starts_with('+'));
        let digits = r[sign_len..].find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len() - sign_len);
        if digits == 0 {
            return self.error("expected an integer");
        }
        let len = sign_len + digits;
        match r[..len].parse::<i64>() {
            Ok(v) => {
                self.pos += len;
                Ok(v)
            }
            Err(_) => self.error("integer out of range"),
        }
    }

    fn pd_body(&mut self) -> Result<PdCode> {
        self.expect("[")?;
        let mut xs = Vec::new();
        if self.eat("]") {
            return Ok(PdCode(xs));
        }
        loop {
            self.expect("X")?;
            let close = if self.eat("(") {
                ")"
            } else if self.eat("[") {
                "]"
            } else {
                return self.error("expected `(` after X");
            };
            let mut edges = [0u32; 4];
            for (k, e) in edges.iter_mut().enumerate() {
                if k > 0 {
                    self.expect(",")?;
                }
                let v = self.int()?;
                *e = u32::try_from(v).ok().filter(|&v| v > 0).ok_or(LinkError::InvalidDiagram(
                    format!("edge label {v} is not a positive integer"),
                ))?;
            }
            self.expect(close)?;
            xs.push(edges);
            if self.eat("]") {
                return Ok(PdCode(xs));
            }
            self.expect(",")?;
        }
    }

    fn braid_body(&mut self) -> Result<BraidWord> {
        self.expect("[")?;
        let strands = self.int()?;
        if strands < 1 {
            return Err(LinkError::InvalidDiagram("braid needs at least one strand".into()));
        }
        self.expect(":")?;
        let mut letters = Vec::new();
        loop {
            if self.eat("]") {
                break;
            }
            self.eat(",");
            let v = self.int()?;
            letters.push(
                i32::try_from(v)
                    .map_err(|_| LinkError::InvalidDiagram(format!("letter {v} out of range")))?,
            );
        }
        BraidWord::new(strands as usize, letters)
    }
}

/// Linking parities `εᵢ = Σ_{j≠i} lk(Kᵢ, Kⱼ) mod 2`, in component order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ParityVector(pub Vec<u8>);

impl ParityVector {
    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b != 0).count()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }

    pub fn sorted_desc(&self) -> ParityVector {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        ParityVector(v)
    }
}

impl fmt::Display for ParityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|b| b.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaClass {
    /// Parity vector sorted descending; invariant of the unordered class.
    pub parity: ParityVector,
    /// Number of ordered classes of links with this many components, `2^{n-1}`.
    pub class_count: BigUint,
}

pub fn delta_class(d: &LinkDiagram) -> DeltaClass {
    let n = d.num_components();
    DeltaClass {
        parity: d.parity_vector().sorted_desc(),
        class_count: BigUint::from(1u8) << (n - 1),
    }
}
