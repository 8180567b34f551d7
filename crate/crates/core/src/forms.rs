//! Integer symmetric bilinear forms: invariants, handle slides, and names of
//! standard simply connected 4-manifolds.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("form is not unimodular (determinant {0})")]
    NotUnimodular(BigInt),
    #[error("form not in the standard vocabulary: {0}")]
    Unrecognized(String),
    #[error("index {index} out of range for rank {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("slide of a handle over itself (index {0})")]
    SameIndex(usize),
    #[error("definite forms of rank {0} > 8 are not supported")]
    DefiniteNotSupported(usize),
    #[error("integer overflow")]
    Overflow,
    #[error("bad manifold name `{0}`")]
    BadName(String),
}

pub type Result<T> = std::result::Result<T, FormError>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawForm", into = "RawForm")]
pub struct IntForm {
    rows: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct RawForm {
    n: usize,
    rows: Vec<Vec<i64>>,
}

impl TryFrom<RawForm> for IntForm {
    type Error = FormError;

    fn try_from(raw: RawForm) -> Result<Self> {
        if raw.rows.len() != raw.n {
            return Err(FormError::NotSquare);
        }
        IntForm::new(raw.rows)
    }
}

impl From<IntForm> for RawForm {
    fn from(q: IntForm) -> Self {
        RawForm { n: q.size(), rows: q.rows }
    }
}

impl IntForm {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(FormError::NotSquare);
        }
        for i in 0..n {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(FormError::NotSymmetric);
                }
            }
        }
        Ok(IntForm { rows })
    }

    pub fn empty() -> Self {
        IntForm { rows: Vec::new() }
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let n = entries.len();
        let mut rows = vec![vec![0; n]; n];
        for (i, &e) in entries.iter().enumerate() {
            rows[i][i] = e;
        }
        IntForm { rows }
    }

    /// The hyperbolic plane `[[0,1],[1,0]]`.
    pub fn hyperbolic() -> Self {
        IntForm { rows: vec![vec![0, 1], vec![1, 0]] }
    }

    /// `k` copies of the hyperbolic plane.
    pub fn hyperbolic_sum(k: usize) -> Self {
        (0..k).fold(Self::empty(), |acc, _| acc.direct_sum(&Self::hyperbolic()))
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn determinant(&self) -> BigInt {
        bareiss(&self.rows)
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }

    pub fn direct_sum(&self, other: &IntForm) -> IntForm {
        let (a, b) = (self.size(), other.size());
        let mut rows = vec![vec![0; a + b]; a + b];
        for i in 0..a {
            rows[i][..a].copy_from_slice(&self.rows[i]);
        }
        for i in 0..b {
            rows[a + i][a..].copy_from_slice(&other.rows[i]);
        }
        IntForm { rows }
    }

    /// Blow-up: direct sum with `⟨sign⟩`.
    pub fn blow_up(&self, sign: i8) -> IntForm {
        self.direct_sum(&IntForm::diagonal(&[if sign < 0 { -1 } else { 1 }]))
    }

    /// `EᵀqE` with `E = I + sign·E_ij`, i.e. `e_j ↦ e_j + sign·e_i` (0-based).
    pub fn handle_slide(&self, i: usize, j: usize, sign: i8) -> Result<IntForm> {
        let n = self.size();
        for index in [i, j] {
            if index >= n {
                return Err(FormError::IndexOutOfRange { index, size: n });
            }
        }
        if i == j {
            return Err(FormError::SameIndex(i));
        }
        self.add_multiple(i, j, if sign < 0 { -1 } else { 1 })
    }

    /// Basis change `e_j ↦ e_j + k·e_i`.
    fn add_multiple(&self, i: usize, j: usize, k: i64) -> Result<IntForm> {
        let mut rows = self.rows.clone();
        let n = self.size();
        let ov = || FormError::Overflow;
        // Column j += k·column i, then row j += k·row i.
        for row in rows.iter_mut() {
            row[j] = row[i].checked_mul(k).and_then(|x| x.checked_add(row[j])).ok_or_else(ov)?;
        }
        for c in 0..n {
            rows[j][c] =
                rows[i][c].checked_mul(k).and_then(|x| x.checked_add(rows[j][c])).ok_or_else(ov)?;
        }
        Ok(IntForm { rows })
    }

    pub fn negate(&self) -> IntForm {
        IntForm { rows: self.rows.iter().map(|r| r.iter().map(|x| -x).collect()).collect() }
    }

    pub fn invariants(&self) -> FormInvariants {
        let (pos, neg) = inertia(&self.rows);
        let rank = pos + neg;
        let definiteness = match (pos, neg) {
            (0, 0) => Definiteness::ZeroRank,
            (_, 0) => Definiteness::Positive,
            (0, _) => Definiteness::Negative,
            _ => Definiteness::Indefinite,
        };
        FormInvariants {
            rank,
            signature: pos as i64 - neg as i64,
            parity: if (0..self.size()).all(|i| self.rows[i][i] % 2 == 0) {
                Parity::Even
            } else {
                Parity::Odd
            },
            unimodular: self.is_unimodular(),
            definiteness,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("form serializes")
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    fn pair(&self, u: &[i64], v: &[i64]) -> i128 {
        let mut s = 0i128;
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            for (j, &vj) in v.iter().enumerate() {
                s += ui as i128 * self.rows[i][j] as i128 * vj as i128;
            }
        }
        s
    }

    /// Pairwise (Gauss) reduction of a positive definite form: slides until
    /// `|2·q_ij| ≤ q_jj` for all `i ≠ j`.
    fn reduce_definite(&self) -> Result<IntForm> {
        let mut q = self.clone();
        let n = q.size();
        loop {
            let mut changed = false;
            for j in 0..n {
                for i in 0..n {
                    if i == j {
                        continue;
                    }
                    let (qij, qjj) = (q.rows[i][j], q.rows[j][j]);
                    if 2 * qij.abs() > qjj {
                        // e_i ↦ e_i − k·e_j with k the rounded quotient.
                        let k = Integer::div_floor(&(2 * qij + qjj), &(2 * qjj));
                        q = q.add_multiple(j, i, -k)?;
                        changed = true;
                    }
                }
            }
            if !changed {
                return Ok(q);
            }
        }
    }

    /// Nonzero vectors `v` with `q(v) ≤ bound` for positive definite `q`.
    pub fn short_vectors(&self, bound: i64) -> Vec<Vec<i64>> {
        let n = self.size();
        let (d, r) = ldl(&self.rows);
        let mut out = Vec::new();
        let mut x = vec![0i64; n];
        if n > 0 {
            enumerate_short(n - 1, &d, &r, &mut x, BigRational::from_integer(bound.into()), &mut out);
        }
        out
    }
}

impl fmt::Display for IntForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

fn bareiss(rows: &[Vec<i64>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> =
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = if a[i][k].is_zero() || a[k][j].is_zero() {
                    &a[i][j] * &a[k][k] / &prev
                } else {
                    (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev
                };
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Counts of positive and negative diagonal entries after exact congruence
/// diagonalization over the rationals.
fn inertia(rows: &[Vec<i64>]) -> (usize, usize) {
    let n = rows.len();
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let (mut pos, mut neg) = (0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let pivot = match active.iter().position(|&i| !a[i][i].is_zero()) {
            Some(p) => active[p],
            None => {
                // All remaining diagonal entries vanish: e_p ↦ e_p + e_q for
                // some nonzero off-diagonal entry makes the diagonal 2·a_pq.
                let found = active.iter().find_map(|&p| {
                    active.iter().find(|&&q| q != p && !a[p][q].is_zero()).map(|&q| (p, q))
                });
                let Some((p, q)) = found else { break };
                for k in 0..n {
                    let v = a[q][k].clone();
                    a[p][k] += v;
                }
                for k in 0..n {
                    let v = a[k][q].clone();
                    a[k][p] += v;
                }
                p
            }
        };
        let d = a[pivot][pivot].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&i| i != pivot);
        for &i in &active {
            if a[i][pivot].is_zero() {
                continue;
            }
            let f = &a[i][pivot] / &d;
            for &j in &active {
                let v = &f * &a[pivot][j];
                a[i][j] -= v;
            }
        }
    }
    (pos, neg)
}

/// `q = Σ d_i (x_i + Σ_{j>i} r_ij x_j)²` for positive definite `q`.
fn ldl(rows: &[Vec<i64>]) -> (Vec<BigRational>, Vec<Vec<BigRational>>) {
    let n = rows.len();
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let mut d = Vec::with_capacity(n);
    let mut r = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        let di = m[i][i].clone();
        for j in i + 1..n {
            r[i][j] = &m[i][j] / &di;
        }
        for j in i + 1..n {
            for k in i + 1..n {
                let v = &m[i][j] * &m[i][k] / &di;
                m[j][k] -= v;
            }
        }
        d.push(di);
    }
    (d, r)
}

fn enumerate_short(
    i: usize,
    d: &[BigRational],
    r: &[Vec<BigRational>],
    x: &mut Vec<i64>,
    remaining: BigRational,
    out: &mut Vec<Vec<i64>>,
) {
    let n = x.len();
    let mut c = BigRational::zero();
    for j in i + 1..n {
        c += &r[i][j] * BigRational::from_integer(x[j].into());
    }
    let cost = |xi: i64| {
        let t = BigRational::from_integer(xi.into()) + &c;
        &d[i] * &t * &t
    };
    let centre = (-c.clone()).floor().to_integer();
    let start = [centre.clone(), centre + 1]
        .into_iter()
        .map(|v| i64::try_from(v).expect("bounded coordinate"))
        .find(|&v| cost(v) <= remaining);
    let Some(start) = start else { return };
    let mut lo = start;
    while cost(lo - 1) <= remaining {
        lo -= 1;
    }
    let mut hi = start;
    while cost(hi + 1) <= remaining {
        hi += 1;
    }
    for xi in lo..=hi {
        x[i] = xi;
        let rest = &remaining - cost(xi);
        if i == 0 {
            if x.iter().any(|&v| v != 0) {
                out.push(x.clone());
            }
        } else {
            enumerate_short(i - 1, d, r, x, rest, out);
        }
    }
    x[i] = 0;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Definiteness {
    Positive,
    Negative,
    Indefinite,
    ZeroRank,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormInvariants {
    pub rank: usize,
    pub signature: i64,
    pub parity: Parity,
    pub unimodular: bool,
    pub definiteness: Definiteness,
}

/// Connected sum `#^a S²×S² # #^b ℂP² # #^c ℂP̄² # #^d S³×S¹`; all zero is `S⁴`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ManifoldName {
    pub s2xs2: u64,
    pub cp2: u64,
    pub cp2bar: u64,
    pub s3xs1: u64,
}

const SUMMANDS: [&str; 4] = ["S2xS2", "CP2", "CP2bar", "S3xS1"];

impl ManifoldName {
    pub fn s4() -> Self {
        Self::default()
    }

    pub fn spin(s2xs2: u64) -> Self {
        ManifoldName { s2xs2, ..Self::default() }
    }

    pub fn odd(cp2: u64, cp2bar: u64) -> Self {
        ManifoldName { cp2, cp2bar, ..Self::default() }
    }

    fn counts(&self) -> [u64; 4] {
        [self.s2xs2, self.cp2, self.cp2bar, self.s3xs1]
    }

    pub fn is_s4(&self) -> bool {
        self.counts() == [0; 4]
    }

    pub fn connected_sum(&self, other: &ManifoldName) -> ManifoldName {
        ManifoldName {
            s2xs2: self.s2xs2 + other.s2xs2,
            cp2: self.cp2 + other.cp2,
            cp2bar: self.cp2bar + other.cp2bar,
            s3xs1: self.s3xs1 + other.s3xs1,
        }
    }

    /// Rewrites `S²×S² # ℂP²` as `ℂP² # ℂP² # ℂP̄²` so that mixed sums have a
    /// unique name.
    pub fn canonical(&self) -> ManifoldName {
        let mut m = *self;
        if m.cp2 + m.cp2bar > 0 {
            m.cp2 += m.s2xs2;
            m.cp2bar += m.s2xs2;
            m.s2xs2 = 0;
        }
        m
    }

    /// `a·H ⊕ b·⟨1⟩ ⊕ c·⟨−1⟩`; `S³×S¹` summands carry no form.
    pub fn model_form(&self) -> IntForm {
        let mut diag = vec![1; self.cp2 as usize];
        diag.extend(std::iter::repeat_n(-1, self.cp2bar as usize));
        IntForm::hyperbolic_sum(self.s2xs2 as usize).direct_sum(&IntForm::diagonal(&diag))
    }
}

impl fmt::Display for ManifoldName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_s4() {
            return f.write_str("S4");
        }
        let parts: Vec<String> = self
            .counts()
            .iter()
            .zip(SUMMANDS)
            .filter(|(c, _)| **c > 0)
            .map(|(c, s)| format!("#^{c} {s}"))
            .collect();
        f.write_str(&parts.join(" # "))
    }
}

impl FromStr for ManifoldName {
    type Err = FormError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || FormError::BadName(s.to_string());
        let s = s.trim();
        if s == "S4" {
            return Ok(Self::s4());
        }
        let mut counts = [0u64; 4];
        let mut pending: Option<u64> = None;
        let mut expect_summand = true;
        for token in s.split_whitespace() {
            if token == "#" {
                if expect_summand {
                    return Err(bad());
                }
                expect_summand = true;
            } else if let Some(k) = token.strip_prefix("#^") {
                if !expect_summand || pending.is_some() {
                    return Err(bad());
                }
                pending = Some(k.parse().map_err(|_| bad())?);
            } else {
                let slot = SUMMANDS.iter().position(|n| *n == token).ok_or_else(bad)?;
                if !expect_summand {
                    return Err(bad());
                }
                counts[slot] += pending.take().unwrap_or(1);
                expect_summand = false;
            }
        }
        if expect_summand {
            return Err(bad());
        }
        Ok(ManifoldName { s2xs2: counts[0], cp2: counts[1], cp2bar: counts[2], s3xs1: counts[3] })
    }
}

impl Serialize for ManifoldName {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ManifoldName {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

fn unimodular_invariants(q: &IntForm) -> Result<FormInvariants> {
    let inv = q.invariants();
    if inv.unimodular {
        Ok(inv)
    } else {
        Err(FormError::NotUnimodular(q.determinant()))
    }
}

/// Name of the standard manifold whose intersection form is `q`.
///
/// Odd definite forms are named only when certified diagonal (a rank-`n`
/// form with `2n` vectors of norm one is `n⟨±1⟩`).
pub fn name_standard(q: &IntForm) -> Result<ManifoldName> {
    let inv = unimodular_invariants(q)?;
    if q.size() == 0 {
        return Ok(ManifoldName::s4());
    }
    let b_plus = (inv.rank as i64 + inv.signature) / 2;
    let b_minus = (inv.rank as i64 - inv.signature) / 2;
    match (inv.parity, inv.definiteness) {
        (Parity::Even, _) if inv.signature == 0 => Ok(ManifoldName::spin(inv.rank as u64 / 2)),
        (Parity::Even, _) => Err(FormError::Unrecognized(format!(
            "even form with signature {}",
            inv.signature
        ))),
        (Parity::Odd, Definiteness::Indefinite) => {
            Ok(ManifoldName::odd(b_plus as u64, b_minus as u64))
        }
        (Parity::Odd, def) => {
            let positive = if def == Definiteness::Negative { q.negate() } else { q.clone() };
            let units = positive.reduce_definite()?.short_vectors(1).len();
            if units == 2 * inv.rank {
                Ok(ManifoldName::odd(b_plus as u64, b_minus as u64))
            } else {
                Err(FormError::Unrecognized(format!(
                    "odd definite form of rank {} with {units} unit vectors",
                    inv.rank
                )))
            }
        }
    }
}

pub const MAX_DEFINITE_SEARCH_RANK: usize = 8;

/// Whether two unimodular forms are congruent over the integers.
///
/// Indefinite forms are compared by rank, signature and parity; definite
/// forms of rank at most 8 by an explicit isometry search.
pub fn stably_equivalent(q1: &IntForm, q2: &IntForm) -> Result<bool> {
    let (a, b) = (unimodular_invariants(q1)?, unimodular_invariants(q2)?);
    if (a.rank, a.signature, a.parity) != (b.rank, b.signature, b.parity) {
        return Ok(false);
    }
    match a.definiteness {
        Definiteness::Indefinite | Definiteness::ZeroRank => Ok(true),
        def => {
            if a.rank > MAX_DEFINITE_SEARCH_RANK {
                return Err(FormError::DefiniteNotSupported(a.rank));
            }
            let flip = |q: &IntForm| if def == Definiteness::Negative { q.negate() } else { q.clone() };
            Ok(find_isometry(&flip(q1).reduce_definite()?, &flip(q2).reduce_definite()?).is_some())
        }
    }
}

/// Images in `target` of the standard basis of `source` realising an
/// isometry between positive definite forms of equal determinant.
fn find_isometry(source: &IntForm, target: &IntForm) -> Option<Vec<Vec<i64>>> {
    let n = source.size();
    let max_norm = (0..n).map(|i| source.rows[i][i]).max().unwrap_or(0);
    let pool = target.short_vectors(max_norm);
    let candidates: Vec<Vec<&Vec<i64>>> = (0..n)
        .map(|i| pool.iter().filter(|v| target.pair(v, v) == source.rows[i][i] as i128).collect())
        .collect();
    let mut chosen: Vec<&Vec<i64>> = Vec::with_capacity(n);
    fn search<'a>(
        source: &IntForm,
        target: &IntForm,
        candidates: &[Vec<&'a Vec<i64>>],
        chosen: &mut Vec<&'a Vec<i64>>,
    ) -> bool {
        let i = chosen.len();
        if i == candidates.len() {
            return true;
        }
        for &v in &candidates[i] {
            if chosen
                .iter()
                .enumerate()
                .all(|(j, u)| target.pair(u, v) == source.rows[j][i] as i128)
            {
                chosen.push(v);
                if search(source, target, candidates, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    search(source, target, &candidates, &mut chosen).then(|| chosen.into_iter().cloned().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e8() -> IntForm {
        // Cartan matrix of E8.
        let mut rows = vec![vec![0i64; 8]; 8];
        for i in 0..8 {
            rows[i][i] = 2;
        }
        for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)] {
            rows[a][b] = -1;
            rows[b][a] = -1;
        }
        IntForm::new(rows).unwrap()
    }

    fn eq3_form() -> IntForm {
        let mut diag = vec![1];
        diag.extend([-1; 9]);
        IntForm::diagonal(&diag).direct_sum(&IntForm::hyperbolic_sum(2))
    }

    #[test]
    fn basic_invariants() {
        let h = IntForm::hyperbolic().invariants();
        assert_eq!((h.rank, h.signature, h.parity, h.unimodular), (2, 0, Parity::Even, true));
        assert_eq!(h.definiteness, Definiteness::Indefinite);
        let d = IntForm::diagonal(&[1, -1]).invariants();
        assert_eq!((d.rank, d.signature, d.parity, d.unimodular), (2, 0, Parity::Odd, true));
        let z = IntForm::new(vec![vec![-1, 0], vec![0, 0]]).unwrap().invariants();
        assert_eq!((z.rank, z.signature, z.unimodular), (1, -1, false));
        assert_eq!(IntForm::empty().invariants().definiteness, Definiteness::ZeroRank);
        let e = e8().invariants();
        assert_eq!((e.rank, e.signature, e.parity, e.unimodular), (8, 8, Parity::Even, true));
    }

    #[test]
    fn fibre_sum_form() {
        let q = eq3_form();
        let inv = q.invariants();
        assert_eq!((inv.rank, inv.signature, inv.parity, inv.unimodular), (14, -8, Parity::Odd, true));
        assert_eq!(name_standard(&q).unwrap(), ManifoldName::odd(3, 11));
        assert_eq!(name_standard(&q).unwrap().to_string(), "#^3 CP2 # #^11 CP2bar");
    }

    #[test]
    fn naming() {
        assert_eq!(name_standard(&IntForm::hyperbolic()).unwrap(), ManifoldName::spin(1));
        assert_eq!(name_standard(&IntForm::empty()).unwrap().to_string(), "S4");
        assert_eq!(name_standard(&IntForm::diagonal(&[-1, -1])).unwrap(), ManifoldName::odd(0, 2));
        assert!(matches!(name_standard(&e8()), Err(FormError::Unrecognized(_))));
        assert!(matches!(
            name_standard(&IntForm::diagonal(&[2])),
            Err(FormError::NotUnimodular(_))
        ));
        let q = IntForm::hyperbolic_sum(3).direct_sum(&IntForm::diagonal(&[1, 1, -1, -1]));
        assert_eq!(name_standard(&q).unwrap(), ManifoldName::odd(5, 5));
    }

    #[test]
    fn odd_definite_non_diagonal_is_refused() {
        // E8 ⊕ ⟨1⟩ is odd, positive definite, and has only two unit vectors.
        let q = e8().direct_sum(&IntForm::diagonal(&[1]));
        assert!(matches!(name_standard(&q), Err(FormError::Unrecognized(_))));
        let i9 = IntForm::diagonal(&[1; 9]);
        assert_eq!(name_standard(&i9).unwrap(), ManifoldName::odd(9, 0));
    }

    #[test]
    fn slides() {
        let q = IntForm::new(vec![vec![-1, 0], vec![0, 0]]).unwrap();
        let s = q.handle_slide(0, 1, 1).unwrap();
        assert_eq!(s.rows(), &[vec![-1, -1], vec![-1, -1]]);
        assert_eq!(s.handle_slide(0, 1, -1).unwrap(), q);
        assert_eq!(q.handle_slide(1, 1, 1).unwrap_err(), FormError::SameIndex(1));
        assert_eq!(
            q.handle_slide(0, 2, 1).unwrap_err(),
            FormError::IndexOutOfRange { index: 2, size: 2 }
        );
    }

    #[test]
    fn sums() {
        let q = IntForm::hyperbolic();
        assert_eq!(q.direct_sum(&IntForm::empty()), q);
        assert_eq!(
            IntForm::diagonal(&[1]).direct_sum(&IntForm::diagonal(&[-1])),
            IntForm::diagonal(&[1, -1])
        );
        assert_eq!(q.blow_up(-1), IntForm::new(vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, -1]]).unwrap());
    }

    #[test]
    fn equivalence() {
        for n in 2..=6usize {
            let lhs = IntForm::hyperbolic_sum(2 * n - 3).direct_sum(&IntForm::diagonal(&[1, 1, -1, -1]));
            let rhs = (0..2 * n - 1).fold(IntForm::empty(), |acc, _| acc.direct_sum(&IntForm::diagonal(&[1, -1])));
            assert!(stably_equivalent(&lhs, &rhs).unwrap(), "n = {n}");
        }
        assert!(!stably_equivalent(&IntForm::hyperbolic(), &IntForm::diagonal(&[1, -1])).unwrap());
        let i8 = IntForm::diagonal(&[1; 8]);
        assert!(!stably_equivalent(&e8(), &i8).unwrap());
        let mut scrambled = e8();
        for (i, j, s) in [(0, 3, 1), (4, 1, -1), (7, 2, 1), (5, 0, 1), (3, 6, -1)] {
            scrambled = scrambled.handle_slide(i, j, s).unwrap();
        }
        assert!(stably_equivalent(&e8(), &scrambled).unwrap());
        assert!(stably_equivalent(&i8.negate(), &i8.negate().handle_slide(2, 5, 1).unwrap()).unwrap());
        assert_eq!(
            stably_equivalent(&IntForm::diagonal(&[1; 9]), &IntForm::diagonal(&[1; 9])).unwrap_err(),
            FormError::DefiniteNotSupported(9)
        );
    }

    #[test]
    fn short_vector_counts() {
        assert_eq!(e8().short_vectors(2).len(), 240);
        assert_eq!(IntForm::diagonal(&[1; 4]).short_vectors(1).len(), 8);
        assert_eq!(IntForm::diagonal(&[1; 4]).short_vectors(2).len(), 8 + 24);
    }

    #[test]
    fn names_print_and_parse() {
        let m = ManifoldName { s2xs2: 1, cp2: 0, cp2bar: 0, s3xs1: 1 };
        assert_eq!(m.to_string(), "#^1 S2xS2 # #^1 S3xS1");
        assert_eq!(m.to_string().parse::<ManifoldName>().unwrap(), m);
        assert_eq!("S4".parse::<ManifoldName>().unwrap(), ManifoldName::s4());
        assert_eq!("S3xS1 # S2xS2".parse::<ManifoldName>().unwrap(), m);
        assert!("#^2 RP4".parse::<ManifoldName>().is_err());
        assert_eq!(
            ManifoldName { s2xs2: 2, cp2: 1, cp2bar: 0, s3xs1: 0 }.canonical(),
            ManifoldName::odd(3, 2)
        );
    }

    #[test]
    fn json_round_trip() {
        let q = IntForm::hyperbolic();
        assert_eq!(q.to_json(), r#"{"n":2,"rows":[[0,1],[1,0]]}"#);
        assert_eq!(IntForm::from_json(&q.to_json()).unwrap(), q);
        assert!(IntForm::from_json(r#"{"n":2,"rows":[[0,1],[2,0]]}"#).is_err());
        assert!(IntForm::from_json(r#"{"n":3,"rows":[[0,1],[1,0]]}"#).is_err());
    }
}
