#![allow(dead_code)]

use surgerykit::laurent::LaurentPoly;
use surgerykit::linkdiag::BraidWord;

/// Conway polynomial of a braid closure by the descending-diagram skein
/// recursion; coefficient `k` is that of `z^k`.
pub fn conway(strands: usize, word: &[i32]) -> Vec<i64> {
    match first_under_crossing(strands, word) {
        None => {
            if cycle_count(strands, word) == 1 {
                vec![1]
            } else {
                vec![]
            }
        }
        Some(k) => {
            let mut switched = word.to_vec();
            switched[k] = -word[k];
            let mut smoothed = word.to_vec();
            smoothed.remove(k);
            let a = conway(strands, &switched);
            let mut b = vec![0];
            b.extend(conway(strands, &smoothed));
            let sign = if word[k] > 0 { 1 } else { -1 };
            let len = a.len().max(b.len());
            let mut out: Vec<i64> = (0..len)
                .map(|i| a.get(i).copied().unwrap_or(0) + sign * b.get(i).copied().unwrap_or(0))
                .collect();
            while out.last() == Some(&0) {
                out.pop();
            }
            out
        }
    }
}

fn cycle_starts(strands: usize, word: &[i32]) -> Vec<usize> {
    let perm = permutation(strands, word);
    let mut seen = vec![false; strands];
    let mut starts = Vec::new();
    for s in 0..strands {
        if !seen[s] {
            starts.push(s);
            let mut c = s;
            while !seen[c] {
                seen[c] = true;
                c = perm[c];
            }
        }
    }
    starts
}

fn cycle_count(strands: usize, word: &[i32]) -> usize {
    cycle_starts(strands, word).len()
}

/// Where the strand entering at the top in each position leaves the bottom.
fn permutation(strands: usize, word: &[i32]) -> Vec<usize> {
    (0..strands)
        .map(|start| {
            let mut pos = start;
            for &l in word {
                let left = l.unsigned_abs() as usize - 1;
                if pos == left {
                    pos += 1;
                } else if pos == left + 1 {
                    pos -= 1;
                }
            }
            pos
        })
        .collect()
}

/// First crossing, walking the components in order from their base points,
/// that is reached along its under-strand before its over-strand.
fn first_under_crossing(strands: usize, word: &[i32]) -> Option<usize> {
    let mut visited = vec![false; word.len()];
    for start in cycle_starts(strands, word) {
        let mut pos = start;
        loop {
            for (k, &l) in word.iter().enumerate() {
                let left = l.unsigned_abs() as usize - 1;
                if pos != left && pos != left + 1 {
                    continue;
                }
                let from_right = pos == left + 1;
                let over = if l > 0 { from_right } else { !from_right };
                if !visited[k] {
                    visited[k] = true;
                    if !over {
                        return Some(k);
                    }
                }
                pos = if from_right { left } else { left + 1 };
            }
            if pos == start {
                break;
            }
        }
    }
    None
}

/// Alexander polynomial of a knot from its Conway polynomial, `z² = t − 2 + t⁻¹`.
pub fn alexander_from_conway(coeffs: &[i64]) -> LaurentPoly {
    let vars = ["t"];
    let z2 = LaurentPoly::parse("t - 2 + t^-1", &vars).unwrap();
    let mut out = LaurentPoly::zero(&vars);
    for (k, &c) in coeffs.iter().enumerate() {
        assert!(k % 2 == 0 || c == 0, "knot Conway polynomials are even");
        if k % 2 == 0 && c != 0 {
            let term = z2.pow(k as u32 / 2).scale(&c.into());
            out = out.add(&term).unwrap();
        }
    }
    out
}

pub fn skein_alexander(b: &BraidWord) -> LaurentPoly {
    alexander_from_conway(&conway(b.strands(), b.letters())).normalize().unwrap()
}

/// Positive Markov stabilizations until the braid has at least `k` strands.
pub fn stabilize_to(b: &BraidWord, k: usize) -> BraidWord {
    let mut strands = b.strands();
    let mut letters = b.letters().to_vec();
    while strands < k {
        letters.push(strands as i32);
        strands += 1;
    }
    BraidWord::new(strands, letters).unwrap()
}
