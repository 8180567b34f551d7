//! Alexander polynomials from Wirtinger presentations and Fox calculus.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::groups::{Letter, Presentation, Word};
use crate::laurent::{LaurentError, LaurentPoly};
use crate::linkdiag::LinkDiagram;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlexanderError {
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("degenerate Alexander matrix: {0}")]
    DegenerateMatrix(String),
    #[error("no generator {0}")]
    UnknownGenerator(usize),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

pub type Result<T> = std::result::Result<T, AlexanderError>;

/// Variable names for an `n`-component link: `t` for knots, else `t1..tn`.
pub fn link_variables(n: usize) -> Vec<String> {
    if n == 1 {
        vec!["t".to_string()]
    } else {
        (1..=n).map(|i| format!("t{i}")).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WirtingerData {
    pub presentation: Presentation,
    /// Component carried by each generator.
    pub arc_component: Vec<usize>,
    pub num_components: usize,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = x;
        while self.0[c] != r {
            let next = self.0[c];
            self.0[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// One generator per arc, ordered by least edge label, then one per
/// crossingless component; one relator `x_k^ε x_i x_k^-ε x_j^-1` per crossing.
pub fn wirtinger(d: &LinkDiagram) -> Result<WirtingerData> {
    let edges: Vec<u32> = d.edges().collect();
    let slot: BTreeMap<u32, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let index = |label: u32| {
        slot.get(&label)
            .copied()
            .ok_or_else(|| AlexanderError::InvalidDiagram(format!("unknown edge {label}")))
    };
    let mut uf = UnionFind((0..edges.len()).collect());
    for c in d.crossings() {
        uf.union(index(c.over_in())?, index(c.over_out())?);
    }
    let mut arc_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut arc_component = Vec::new();
    for (i, &e) in edges.iter().enumerate() {
        let root = uf.find(i);
        if let std::collections::btree_map::Entry::Vacant(slot) = arc_of_root.entry(root) {
            slot.insert(arc_component.len());
            arc_component.push(d.component_of_edge(e).expect("edge has a component"));
        }
    }
    let mut arc = |label: u32| -> Result<usize> {
        let i = index(label)?;
        Ok(arc_of_root[&uf.find(i)])
    };
    let mut relators = Vec::with_capacity(d.crossings().len());
    for c in d.crossings() {
        let k = arc(c.over_in())?;
        let i = arc(c.under_in())?;
        let j = arc(c.under_out())?;
        let pos = |gen| Letter { gen, inverse: false };
        let conj = Letter { gen: k, inverse: c.sign < 0 };
        relators.push(Word(vec![conj, pos(i), conj.inv(), pos(j).inv()]));
    }
    arc_component.extend(d.free_components());
    let generators = (1..=arc_component.len()).map(|i| format!("a{i}")).collect();
    let presentation = Presentation::new(generators, relators)
        .map_err(|e| AlexanderError::InvalidDiagram(e.to_string()))?;
    Ok(WirtingerData { presentation, arc_component, num_components: d.num_components() })
}

/// Element of the integral group ring of a free group, keyed by reduced words.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, BigInt>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_word(w: &Word) -> Self {
        let mut e = Self::zero();
        e.add_term(w.free_reduce(), BigInt::one());
        e
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, w: Word, c: BigInt) {
        let slot = self.terms.entry(w.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        GroupRingElement { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v).free_reduce(), a * b);
            }
        }
        out
    }

    /// Image under generator `k ↦ variable var_of_gen[k]`.
    pub fn abelianize<S: AsRef<str>>(&self, var_of_gen: &[usize], vars: &[S]) -> Result<LaurentPoly> {
        let mut terms: Vec<(Vec<i64>, BigInt)> = Vec::with_capacity(self.terms.len());
        for (w, c) in &self.terms {
            let mut exps = vec![0i64; vars.len()];
            for l in w.letters() {
                let v = *var_of_gen.get(l.gen).ok_or(AlexanderError::UnknownGenerator(l.gen))?;
                exps[v] += if l.inverse { -1 } else { 1 };
            }
            terms.push((exps, c.clone()));
        }
        Ok(LaurentPoly::from_terms(vars, terms)?)
    }
}

/// Free derivative `∂w/∂g` over a free group on `ngens` generators.
pub fn fox_derivative(w: &Word, gen: usize, ngens: usize) -> Result<GroupRingElement> {
    if gen >= ngens {
        return Err(AlexanderError::UnknownGenerator(gen));
    }
    let mut out = GroupRingElement::zero();
    for (p, l) in w.letters().iter().enumerate() {
        if l.gen >= ngens {
            return Err(AlexanderError::UnknownGenerator(l.gen));
        }
        if l.gen != gen {
            continue;
        }
        if l.inverse {
            out.add_term(Word(w.letters()[..=p].to_vec()).free_reduce(), -BigInt::one());
        } else {
            out.add_term(Word(w.letters()[..p].to_vec()).free_reduce(), BigInt::one());
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlexMatrix {
    pub vars: Vec<String>,
    /// Rows are relators, columns generators.
    pub entries: Vec<Vec<LaurentPoly>>,
    pub column_component: Vec<usize>,
}

impl AlexMatrix {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.column_component.len()
    }

    /// Row `r` with each entry multiplied by `(t_c − 1)` for its column and
    /// summed; zero for every row of a genuine Fox matrix.
    pub fn augmented_row_sum(&self, r: usize) -> Result<LaurentPoly> {
        let mut sum = LaurentPoly::zero(&self.vars);
        for (c, entry) in self.entries[r].iter().enumerate() {
            let factor = LaurentPoly::var(&self.vars, self.column_component[c])
                .sub(&LaurentPoly::one(&self.vars))?;
            sum = sum.add(&entry.mul(&factor)?)?;
        }
        Ok(sum)
    }
}

pub fn alexander_matrix(w: &WirtingerData) -> Result<AlexMatrix> {
    let vars = link_variables(w.num_components.max(1));
    let ngens = w.presentation.generators.len();
    let entries = w
        .presentation
        .relators
        .iter()
        .map(|r| {
            (0..ngens)
                .map(|g| fox_derivative(r, g, ngens)?.abelianize(&w.arc_component, &vars))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AlexMatrix { vars, entries, column_component: w.arc_component.clone() })
}

/// Fraction-free (Bareiss) determinant over the Laurent ring.
pub fn determinant(m: &[Vec<LaurentPoly>], vars: &[String]) -> Result<LaurentPoly> {
    let n = m.len();
    if n == 0 {
        return Ok(LaurentPoly::one(vars));
    }
    let mut a: Vec<Vec<LaurentPoly>> = m.to_vec();
    let mut negate = false;
    let mut prev = LaurentPoly::one(vars);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(LaurentPoly::zero(vars)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k])?.sub(&a[i][k].mul(&a[k][j])?)?;
                a[i][j] = num.div_exact(&prev)?.ok_or_else(|| {
                    AlexanderError::DegenerateMatrix("inexact Bareiss step".to_string())
                })?;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { det.neg() } else { det })
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut current, &mut out);
    out
}

/// Gcd of the maximal minors of the matrix with `column` deleted, before
/// any division or normalization.
pub fn minor_gcd(m: &AlexMatrix, column: usize) -> Result<LaurentPoly> {
    let g = m.cols();
    if column >= g {
        return Err(AlexanderError::UnknownGenerator(column));
    }
    let size = g - 1;
    if size == 0 {
        return Ok(LaurentPoly::one(&m.vars));
    }
    if m.rows() < size {
        return Ok(LaurentPoly::zero(&m.vars));
    }
    let keep: Vec<usize> = (0..g).filter(|&c| c != column).collect();
    let mut acc = LaurentPoly::zero(&m.vars);
    for rows in combinations(m.rows(), size) {
        let sub: Vec<Vec<LaurentPoly>> = rows
            .iter()
            .map(|&r| keep.iter().map(|&c| m.entries[r][c].clone()).collect())
            .collect();
        let minor = determinant(&sub, &m.vars)?;
        if minor.is_zero() {
            continue;
        }
        acc = if acc.is_zero() { minor.to_polynomial().1 } else { acc.gcd(&minor)? };
        if acc.is_unit() {
            break;
        }
    }
    Ok(acc)
}

/// Alexander polynomial computed from the given deleted column, up to units.
/// For links the minor gcd is divided by `t_c − 1`, `c` the column's component.
pub fn alexander_with_column(d: &LinkDiagram, column: usize) -> Result<LaurentPoly> {
    let w = wirtinger(d)?;
    let m = alexander_matrix(&w)?;
    let raw = minor_gcd(&m, column)?;
    let poly = if d.num_components() >= 2 && !raw.is_zero() {
        let divisor = LaurentPoly::var(&m.vars, m.column_component[column])
            .sub(&LaurentPoly::one(&m.vars))?;
        raw.div_exact(&divisor)?.ok_or_else(|| {
            AlexanderError::DegenerateMatrix(format!("minor gcd not divisible by {divisor}"))
        })?
    } else {
        raw
    };
    if poly.is_zero() {
        return Ok(poly);
    }
    Ok(poly.normalize()?)
}

/// Normalized Alexander polynomial; `Δ(1) = 1` for knots and `0` for split links.
pub fn alexander_polynomial(d: &LinkDiagram) -> Result<LaurentPoly> {
    if d.num_components() == 0 {
        return Err(AlexanderError::InvalidDiagram("empty link".to_string()));
    }
    let p = alexander_with_column(d, 0)?;
    if d.num_components() == 1 && p.eval_one() != BigInt::one() {
        return Err(AlexanderError::DegenerateMatrix(format!("knot polynomial {p} has Δ(1) ≠ 1")));
    }
    Ok(p)
}

/// Minor gcd for the first column, without division or normalization.
pub fn alexander_raw(d: &LinkDiagram) -> Result<LaurentPoly> {
    let m = alexander_matrix(&wirtinger(d)?)?;
    minor_gcd(&m, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkdiag::parse_link;

    fn delta(text: &str) -> String {
        alexander_polynomial(&parse_link(text).unwrap()).unwrap().to_string()
    }

    fn laplace(m: &[Vec<LaurentPoly>], vars: &[String]) -> LaurentPoly {
        if m.is_empty() {
            return LaurentPoly::one(vars);
        }
        let mut total = LaurentPoly::zero(vars);
        for (c, entry) in m[0].iter().enumerate() {
            let minor: Vec<Vec<LaurentPoly>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = entry.mul(&laplace(&minor, vars)).unwrap();
            total = if c % 2 == 0 { total.add(&term) } else { total.sub(&term) }.unwrap();
        }
        total
    }

    #[test]
    fn fox_rules() {
        let g = ["x", "y"];
        let xy = Word::parse("x y", &g).unwrap();
        assert_eq!(fox_derivative(&xy, 0, 2).unwrap(), GroupRingElement::from_word(&Word::empty()));
        assert_eq!(fox_derivative(&xy, 1, 2).unwrap(), GroupRingElement::from_word(&Word::parse("x", &g).unwrap()));
        let xi = Word::parse("x^-1", &g).unwrap();
        assert_eq!(fox_derivative(&xi, 0, 2).unwrap(), GroupRingElement::from_word(&xi).neg());
        assert_eq!(fox_derivative(&xy, 2, 2).unwrap_err(), AlexanderError::UnknownGenerator(2));
    }

    #[test]
    fn fox_product_rule() {
        let g = ["x", "y"];
        let u = Word::parse("x y^-1 x", &g).unwrap();
        let v = Word::parse("y^2 x^-1", &g).unwrap();
        for gen in 0..2 {
            let lhs = fox_derivative(&u.concat(&v), gen, 2).unwrap();
            let rhs = fox_derivative(&u, gen, 2)
                .unwrap()
                .add(&GroupRingElement::from_word(&u).mul(&fox_derivative(&v, gen, 2).unwrap()));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn wirtinger_shapes() {
        let unknot = wirtinger(&parse_link("BR[1: ]").unwrap()).unwrap();
        assert_eq!(unknot.presentation.generators.len(), 1);
        assert!(unknot.presentation.relators.is_empty());
        let trefoil = wirtinger(&parse_link("PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]").unwrap()).unwrap();
        assert_eq!(trefoil.presentation.generators.len(), 3);
        assert_eq!(trefoil.presentation.relators.len(), 3);
        let hopf = wirtinger(&parse_link("PD[X(1,3,2,4), X(3,1,4,2)]").unwrap()).unwrap();
        assert_eq!(hopf.presentation.generators.len(), 2);
        assert_eq!(hopf.presentation.relators.len(), 2);
        assert_eq!(hopf.arc_component, vec![0, 1]);
        for r in &trefoil.presentation.relators {
            let l = r.letters();
            assert_eq!(l.len(), 4);
            assert_eq!(l[0], l[2].inv());
            assert!(!l[1].inverse && l[3].inverse);
        }
    }

    #[test]
    fn knot_polynomials() {
        assert_eq!(delta("BR[1: ]"), "1");
        assert_eq!(delta("PD[X(1,2,2,1)]"), "1");
        assert_eq!(delta("PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]"), "t - 1 + t^-1");
        assert_eq!(delta("BR[2: 1 1 1]"), "t - 1 + t^-1");
        assert_eq!(delta("BR[2: -1 -1 -1]"), "t - 1 + t^-1");
        assert_eq!(delta("BR[3: 1 -2 1 -2]"), "-t + 3 - t^-1");
        assert_eq!(
            delta("PD[X(4,2,5,1), X(8,6,1,5), X(6,3,7,4), X(2,7,3,8)]"),
            "-t + 3 - t^-1"
        );
    }

    #[test]
    fn link_polynomials() {
        assert_eq!(delta("PD[X(1,3,2,4), X(3,1,4,2)]"), "1");
        assert_eq!(delta("BR[2: 1 1]"), "1");
        assert_eq!(delta("BR[2: ]"), "0");
        assert_eq!(delta("BR[3: 1 1]"), "0");
        assert_eq!(delta("BR[2: 1 1 1 1]"), "t1*t2 + 1");
        let borromean = parse_link("BR[3: 1 -2 1 -2 1 -2]").unwrap();
        let p = alexander_polynomial(&borromean).unwrap();
        let vars = link_variables(3);
        let expected = ["t1 - 1", "t2 - 1", "t3 - 1"]
            .iter()
            .map(|f| LaurentPoly::parse(f, &vars).unwrap())
            .fold(LaurentPoly::one(&vars), |acc, f| acc.mul(&f).unwrap())
            .normalize()
            .unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn every_column_agrees() {
        for text in [
            "BR[3: 1 -2 1 -2]",
            "BR[3: 1 -2 1 -2 1 -2]",
            "BR[2: 1 1 1 1]",
            "PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]",
        ] {
            let d = parse_link(text).unwrap();
            let cols = wirtinger(&d).unwrap().presentation.generators.len();
            let first = alexander_with_column(&d, 0).unwrap();
            for c in 1..cols {
                assert_eq!(alexander_with_column(&d, c).unwrap(), first, "{text} column {c}");
            }
        }
    }

    #[test]
    fn fox_matrix_rows_augment_to_zero() {
        let d = parse_link("BR[3: 1 -2 1 -2 1 -2]").unwrap();
        let m = alexander_matrix(&wirtinger(&d).unwrap()).unwrap();
        for r in 0..m.rows() {
            assert!(m.augmented_row_sum(r).unwrap().is_zero());
        }
    }

    #[test]
    fn bareiss_matches_laplace() {
        let d = parse_link("BR[3: 1 -2 1 -2 1 -2]").unwrap();
        let m = alexander_matrix(&wirtinger(&d).unwrap()).unwrap();
        let n = m.rows();
        for skip in 0..n {
            let sub: Vec<Vec<LaurentPoly>> = (0..n)
                .filter(|&r| r != skip)
                .map(|r| m.entries[r][1..].to_vec())
                .collect();
            assert_eq!(determinant(&sub, &m.vars).unwrap(), laplace(&sub, &m.vars));
        }
    }
}
