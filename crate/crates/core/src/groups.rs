//! Finitely presented groups realised as finite permutation tables by
//! Todd–Coxeter coset enumeration over the trivial subgroup.

use std::collections::VecDeque;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("presentation has no generators")]
    EmptyPresentation,
    #[error("coset enumeration exceeded {0} cosets (group may be infinite)")]
    EnumerationLimitExceeded(usize),
    #[error("no element {0}")]
    UnknownElement(usize),
}

pub type Result<T> = std::result::Result<T, GroupError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    /// Column of the coset table acted on by this letter.
    fn column(self) -> usize {
        2 * self.gen + usize::from(self.inverse)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn generator(gen: usize) -> Self {
        Word(vec![Letter { gen, inverse: false }])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `self^k`, with negative `k` meaning powers of the inverse.
    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        Word(base.0.repeat(k.unsigned_abs() as usize))
    }

    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, ngens: usize) -> Vec<i64> {
        let mut s = vec![0; ngens];
        for l in &self.0 {
            s[l.gen] += if l.inverse { -1 } else { 1 };
        }
        s
    }

    pub fn parse<S: AsRef<str>>(text: &str, generators: &[S]) -> Result<Self> {
        let gens: Vec<&str> = generators.iter().map(|g| g.as_ref()).collect();
        let mut p = WordParser { src: text, pos: 0, gens: &gens };
        let w = p.word()?;
        p.skip_ws();
        if p.pos < text.len() {
            return p.error("unexpected input");
        }
        Ok(w)
    }

    pub fn display<'a, S: AsRef<str>>(&'a self, generators: &'a [S]) -> impl fmt::Display + 'a {
        WordDisplay { word: self, gens: generators }
    }
}

struct WordDisplay<'a, S> {
    word: &'a Word,
    gens: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for WordDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        // Collapse runs of the same letter into powers.
        let mut parts = Vec::new();
        let letters = &self.word.0;
        let mut i = 0;
        while i < letters.len() {
            let l = letters[i];
            let mut run = 1;
            while i + run < letters.len() && letters[i + run] == l {
                run += 1;
            }
            let name = self.gens[l.gen].as_ref();
            let exp = if l.inverse { -(run as i64) } else { run as i64 };
            parts.push(if exp == 1 { name.to_string() } else { format!("{name}^{exp}") });
            i += run;
        }
        f.write_str(&parts.join(" "))
    }
}

struct WordParser<'a> {
    src: &'a str,
    pos: usize,
    gens: &'a [&'a str],
}

impl WordParser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn error<T>(&self, message: &str) -> Result<T> {
        Err(GroupError::Syntax { offset: self.pos, message: message.to_string() })
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn word(&mut self) -> Result<Word> {
        let mut out = Vec::new();
        loop {
            match self.peek() {
                Some('(') => {
                    self.pos += 1;
                    let inner = self.word()?;
                    if self.peek() != Some(')') {
                        return self.error("expected `)`");
                    }
                    self.pos += 1;
                    let k = self.exponent()?;
                    out.extend(inner.pow(k).0);
                }
                Some('1') => {
                    // `1` denotes the empty word.
                    self.pos += 1;
                }
                Some(c) if c.is_alphabetic() || c == '_' => {
                    let r = self.rest();
                    let len = r
                        .find(|c: char| !(c.is_alphanumeric() || c == '_'))
                        .unwrap_or(r.len());
                    let ident = r[..len].to_string();
                    self.pos += len;
                    let letters = self.resolve(&ident)?;
                    let k = self.exponent()?;
                    out.extend(Word(letters).pow(k).0);
                }
                _ => return Ok(Word(out)),
            }
        }
    }

    /// A generator name, or a run of single-character generator names
    /// such as `xyx`.
    fn resolve(&self, ident: &str) -> Result<Vec<Letter>> {
        if let Some(g) = self.gens.iter().position(|g| *g == ident) {
            return Ok(vec![Letter { gen: g, inverse: false }]);
        }
        ident
            .chars()
            .map(|c| {
                let mut buf = [0u8; 4];
                let s: &str = c.encode_utf8(&mut buf);
                self.gens
                    .iter()
                    .position(|g| *g == s)
                    .map(|gen| Letter { gen, inverse: false })
                    .ok_or_else(|| GroupError::UnknownGenerator(ident.to_string()))
            })
            .collect()
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let r = self.rest();
        let sign_len = usize::from(r.starts_with('-') || r.starts_with('+'));
        let digits = r[sign_len..]
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(r.len() - sign_len);
        if digits == 0 {
            return self.error("expected an integer exponent");
        }
        let len = sign_len + digits;
        let v = r[..len].parse::<i64>().or_else(|_| self.error("exponent out of range"))?;
        self.pos += len;
        Ok(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        for w in &relators {
            if let Some(l) = w.0.iter().find(|l| l.gen >= generators.len()) {
                return Err(GroupError::UnknownGenerator(format!("#{}", l.gen)));
            }
        }
        Ok(Presentation { generators, relators })
    }

    /// Parses `< x, y | x^5 (x y)^-3, (x y)^3 (x y x)^-2 >`. A relator item
    /// may also be a chain `u = v = w`, read as `u v⁻¹, v w⁻¹`.
    pub fn parse(text: &str) -> Result<Self> {
        let syntax = |offset: usize, message: &str| GroupError::Syntax {
            offset,
            message: message.to_string(),
        };
        let trimmed = text.trim();
        let lead = text.len() - text.trim_start().len();
        let inner = trimmed
            .strip_prefix('<')
            .and_then(|s| s.strip_suffix('>'))
            .ok_or_else(|| syntax(lead, "expected `< generators | relators >`"))?;
        let (gens_text, rels_text) = inner
            .split_once('|')
            .ok_or_else(|| syntax(lead + 1, "expected `|`"))?;
        let generators: Vec<String> = gens_text
            .split(',')
            .map(|g| g.trim().to_string())
            .filter(|g| !g.is_empty())
            .collect();
        for g in &generators {
            if !g.chars().all(|c| c.is_alphanumeric() || c == '_')
                || g.starts_with(|c: char| c.is_ascii_digit())
            {
                return Err(syntax(lead + 1, &format!("bad generator name `{g}`")));
            }
        }
        let base = lead + 1 + gens_text.len() + 1;
        let mut relators = Vec::new();
        let mut offset = base;
        for item in rels_text.split(',') {
            if !item.trim().is_empty() {
                let sides: Vec<Word> = item
                    .split('=')
                    .map(|side| {
                        Word::parse(side, &generators).map_err(|e| match e {
                            GroupError::Syntax { offset: o, message } => {
                                GroupError::Syntax { offset: offset + o, message }
                            }
                            other => other,
                        })
                    })
                    .collect::<Result<_>>()?;
                if sides.len() == 1 {
                    relators.push(sides.into_iter().next().unwrap());
                } else {
                    for pair in sides.windows(2) {
                        relators.push(pair[0].concat(&pair[1].inverse()));
                    }
                }
            }
            offset += item.len() + 1;
        }
        Presentation::new(generators, relators)
    }

    pub fn word(&self, text: &str) -> Result<Word> {
        Word::parse(text, &self.generators)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| r.display(&self.generators).to_string())
            .collect();
        write!(f, "< {} | {} >", self.generators.join(", "), rels.join(", "))
    }
}

/// `⟨x, y | x⁵ = (xy)³ = (xyx)²⟩`, encoded as two relators.
pub fn binary_icosahedral() -> Presentation {
    Presentation::parse("< x, y | x^5 (x y)^-3, (x y)^3 (x y x)^-2 >").expect("static presentation")
}

/// Labels and representative words of the nine conjugacy classes of the
/// binary icosahedral group, in the column order used for the trefoil.
pub const BINARY_ICOSAHEDRAL_CLASS_WORDS: [(&str, &str); 9] = [
    ("e", "1"),
    ("x^5", "x^5"),
    ("xyx", "x y x"),
    ("x", "x"),
    ("x^2", "x^2"),
    ("x^3", "x^3"),
    ("x^4", "x^4"),
    ("xy", "x y"),
    ("(xy)^2", "(x y)^2"),
];

/// The enumerated binary icosahedral group, computed once.
pub fn binary_icosahedral_table() -> &'static GroupTable {
    static TABLE: OnceLock<GroupTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        coset_enumerate(&binary_icosahedral(), DEFAULT_MAX_COSETS)
            .expect("binary icosahedral group enumerates")
    })
}

const UNDEF: usize = usize::MAX;

struct CosetTable {
    cols: usize,
    table: Vec<usize>,
    parent: Vec<usize>,
    limit: usize,
}

impl CosetTable {
    fn new(ngens: usize, limit: usize) -> Result<Self> {
        if limit < 1 {
            return Err(GroupError::EnumerationLimitExceeded(limit));
        }
        let cols = 2 * ngens;
        Ok(CosetTable { cols, table: vec![UNDEF; cols], parent: vec![0], limit })
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    fn get(&self, coset: usize, col: usize) -> usize {
        self.table[coset * self.cols + col]
    }

    fn set(&mut self, coset: usize, col: usize, value: usize) {
        self.table[coset * self.cols + col] = value;
    }

    fn is_live(&self, coset: usize) -> bool {
        self.parent[coset] == coset
    }

    fn define(&mut self, coset: usize, col: usize) -> Result<usize> {
        let new = self.len();
        if new >= self.limit {
            return Err(GroupError::EnumerationLimitExceeded(self.limit));
        }
        self.parent.push(new);
        self.table.extend(std::iter::repeat_n(UNDEF, self.cols));
        self.set(coset, col, new);
        self.set(new, col ^ 1, coset);
        Ok(new)
    }

    fn rep(&mut self, coset: usize) -> usize {
        let mut root = coset;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut c = coset;
        while self.parent[c] != root {
            let next = self.parent[c];
            self.parent[c] = root;
            c = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (keep, drop) = (ra.min(rb), ra.max(rb));
            self.parent[drop] = keep;
            queue.push(drop);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let dead = queue[i];
            i += 1;
            for col in 0..self.cols {
                let target = self.get(dead, col);
                if target == UNDEF {
                    continue;
                }
                self.set(target, col ^ 1, UNDEF);
                let mu = self.rep(dead);
                let nu = self.rep(target);
                if self.get(mu, col) != UNDEF {
                    let other = self.get(mu, col);
                    self.merge(nu, other, &mut queue);
                } else if self.get(nu, col ^ 1) != UNDEF {
                    let other = self.get(nu, col ^ 1);
                    self.merge(mu, other, &mut queue);
                } else {
                    self.set(mu, col, nu);
                    self.set(nu, col ^ 1, mu);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, coset: usize, relator: &[usize]) -> Result<()> {
        if relator.is_empty() {
            return Ok(());
        }
        let mut f = coset;
        let mut b = coset;
        let mut i = 0usize;
        let mut j = relator.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.get(f, relator[i]) != UNDEF {
                f = self.get(f, relator[i]);
                i += 1;
            }
            if (i as isize) > j {
                if f != coset {
                    self.coincidence(f, coset);
                }
                return Ok(());
            }
            while j >= i as isize && self.get(b, relator[j as usize] ^ 1) != UNDEF {
                b = self.get(b, relator[j as usize] ^ 1);
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.set(f, relator[i], b);
                self.set(b, relator[i] ^ 1, f);
                return Ok(());
            }
            self.define(f, relator[i])?;
        }
    }
}

/// Enumerates the cosets of the trivial subgroup (Hasse–Lohse–Trotter
/// strategy, coincidences processed immediately).
pub fn coset_enumerate(p: &Presentation, max_cosets: usize) -> Result<GroupTable> {
    let ngens = p.generators.len();
    if ngens == 0 {
        return Err(GroupError::EmptyPresentation);
    }
    let relators: Vec<Vec<usize>> = p
        .relators
        .iter()
        .map(|w| w.free_reduce().0.iter().map(|l| l.column()).collect())
        .collect();
    let mut ct = CosetTable::new(ngens, max_cosets)?;
    let mut alpha = 0;
    while alpha < ct.len() {
        if ct.is_live(alpha) {
            for r in &relators {
                ct.scan_and_fill(alpha, r)?;
                if !ct.is_live(alpha) {
                    break;
                }
            }
            if ct.is_live(alpha) {
                for col in 0..ct.cols {
                    if ct.get(alpha, col) == UNDEF {
                        ct.define(alpha, col)?;
                    }
                }
            }
        }
        alpha += 1;
    }

    let live: Vec<usize> = (0..ct.len()).filter(|&c| ct.is_live(c)).collect();
    let mut index = vec![UNDEF; ct.len()];
    for (k, &c) in live.iter().enumerate() {
        index[c] = k;
    }
    let mut action = vec![vec![0; ct.cols]; live.len()];
    for (k, &c) in live.iter().enumerate() {
        for col in 0..ct.cols {
            let target = ct.get(c, col);
            debug_assert_ne!(target, UNDEF, "complete table");
            action[k][col] = index[ct.rep(target)];
        }
    }
    Ok(GroupTable::from_action(p.clone(), action))
}

/// A finite group with elements `0..order`, identity `0`, and generators
/// acting on the right.
#[derive(Debug, Clone)]
pub struct GroupTable {
    presentation: Presentation,
    /// `action[e][2k]` is `e·g_k`, `action[e][2k+1]` is `e·g_k⁻¹`.
    action: Vec<Vec<usize>>,
    /// Spanning-tree word of each element, as table columns.
    paths: Vec<Vec<usize>>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl GroupTable {
    fn from_action(presentation: Presentation, action: Vec<Vec<usize>>) -> Self {
        let order = action.len();
        let mut paths: Vec<Option<Vec<usize>>> = vec![None; order];
        paths[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for (col, &next) in action[e].iter().enumerate() {
                if paths[next].is_none() {
                    let mut p = paths[e].clone().unwrap();
                    p.push(col);
                    paths[next] = Some(p);
                    queue.push_back(next);
                }
            }
        }
        let paths: Vec<Vec<usize>> = paths.into_iter().map(|p| p.expect("connected")).collect();
        let mut g = GroupTable { presentation, action, paths, classes: Vec::new(), class_of: Vec::new() };
        g.compute_classes();
        g
    }

    fn compute_classes(&mut self) {
        let order = self.order();
        let ngens = self.presentation.generators.len();
        let gens: Vec<(usize, usize)> = (0..ngens)
            .map(|k| (self.action[0][2 * k], self.action[0][2 * k + 1]))
            .collect();
        let mut class_of = vec![usize::MAX; order];
        let mut classes = Vec::new();
        for start in 0..order {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = vec![start];
            class_of[start] = id;
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                i += 1;
                for &(g, g_inv) in &gens {
                    let y = self.product(g_inv, self.product(x, g));
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    pub fn order(&self) -> usize {
        self.action.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn generators(&self) -> &[String] {
        &self.presentation.generators
    }

    fn check(&self, e: usize) -> Result<()> {
        if e < self.order() {
            Ok(())
        } else {
            Err(GroupError::UnknownElement(e))
        }
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        self.paths[b].iter().fold(a, |acc, &col| self.action[acc][col])
    }

    pub fn inverse(&self, e: usize) -> usize {
        self.paths[e].iter().rev().fold(0, |acc, &col| self.action[acc][col ^ 1])
    }

    /// Full Cayley table, `table[a][b] = a·b`.
    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        (0..self.order())
            .map(|a| (0..self.order()).map(|b| self.product(a, b)).collect())
            .collect()
    }

    /// Shortest word (in breadth-first order) representing `e`.
    pub fn word_of(&self, e: usize) -> Word {
        Word(
            self.paths[e]
                .iter()
                .map(|&col| Letter { gen: col / 2, inverse: col % 2 == 1 })
                .collect(),
        )
    }

    pub fn evaluate_word(&self, w: &Word) -> Result<usize> {
        let ngens = self.generators().len();
        w.0.iter().try_fold(0, |acc, l| {
            if l.gen >= ngens {
                Err(GroupError::UnknownGenerator(format!("#{}", l.gen)))
            } else {
                Ok(self.action[acc][l.column()])
            }
        })
    }

    /// Parses `text` over this group's generators and evaluates it.
    pub fn evaluate(&self, text: &str) -> Result<usize> {
        self.evaluate_word(&self.presentation.word(text)?)
    }

    pub fn element_order(&self, e: usize) -> Result<usize> {
        self.check(e)?;
        let mut k = 1;
        let mut p = e;
        while p != 0 {
            p = self.product(p, e);
            k += 1;
        }
        Ok(k)
    }

    /// Conjugacy classes ordered by least element.
    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_index(&self, e: usize) -> Result<usize> {
        self.check(e)?;
        Ok(self.class_of[e])
    }

    pub fn is_conjugate(&self, w1: &Word, w2: &Word) -> Result<bool> {
        let a = self.evaluate_word(w1)?;
        let b = self.evaluate_word(w2)?;
        Ok(self.class_of[a] == self.class_of[b])
    }

    /// Size of the normal closure of `e`.
    pub fn normal_closure_size(&self, e: usize) -> Result<usize> {
        self.check(e)?;
        let class = &self.classes[self.class_of[e]];
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut members = vec![0];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            i += 1;
            for &c in class {
                let y = self.product(x, c);
                if !seen[y] {
                    seen[y] = true;
                    members.push(y);
                }
            }
        }
        Ok(members.len())
    }

    pub fn normally_generates(&self, e: usize) -> Result<bool> {
        Ok(self.normal_closure_size(e)? == self.order())
    }

    /// Checks the table invariants: every generator column is a permutation,
    /// every relator fixes every element, and the product is a Latin square.
    pub fn verify(&self) -> std::result::Result<(), String> {
        let n = self.order();
        for col in 0..self.action.first().map_or(0, |r| r.len()) {
            let mut hit = vec![false; n];
            for e in 0..n {
                let t = self.action[e][col];
                if hit[t] {
                    return Err(format!("column {col} is not a permutation"));
                }
                hit[t] = true;
                if self.action[t][col ^ 1] != e {
                    return Err(format!("column {col} and its inverse disagree at {e}"));
                }
            }
        }
        for (k, r) in self.presentation.relators.iter().enumerate() {
            for e in 0..n {
                let end = r.0.iter().fold(e, |acc, l| self.action[acc][l.column()]);
                if end != e {
                    return Err(format!("relator {k} moves element {e}"));
                }
            }
        }
        let table = self.cayley_table();
        for a in 0..n {
            let mut row = vec![false; n];
            let mut column = vec![false; n];
            for b in 0..n {
                row[table[a][b]] = true;
                column[table[b][a]] = true;
            }
            if row.iter().chain(&column).any(|x| !x) {
                return Err(format!("row or column {a} is not a permutation"));
            }
        }
        Ok(())
    }
}
