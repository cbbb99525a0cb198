//! A deliberately naive reference implementation: chains are maps from
//! vertex-index words to `Rational64`, operators are written out from their
//! definitions with no shared code from the library.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_rational::Rational64;

use pathcalc::{Basis, OperatorMatrix, Scalar};

pub type Word = Vec<u32>;
pub type Lin = BTreeMap<Word, Rational64>;

pub fn q(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

pub fn sign(i: usize) -> Rational64 {
    if i.is_multiple_of(2) {
        q(1, 1)
    } else {
        q(-1, 1)
    }
}

pub fn from_scalar(s: &Scalar) -> Rational64 {
    s.to_string().parse().expect("scalar fits in Rational64")
}

fn add(out: &mut Lin, w: Word, c: Rational64) {
    let e = out.entry(w.clone()).or_insert_with(|| q(0, 1));
    *e += c;
    if *e == q(0, 1) {
        out.remove(&w);
    }
}

pub fn single(w: &[u32]) -> Lin {
    let mut l = Lin::new();
    l.insert(w.to_vec(), q(1, 1));
    l
}

pub fn scale(a: &Lin, c: Rational64) -> Lin {
    let mut out = Lin::new();
    for (w, x) in a {
        add(&mut out, w.clone(), *x * c);
    }
    out
}

pub fn plus(a: &Lin, b: &Lin) -> Lin {
    let mut out = a.clone();
    for (w, x) in b {
        add(&mut out, w.clone(), *x);
    }
    out
}

fn linear(a: &Lin, f: impl Fn(&Word) -> Lin) -> Lin {
    let mut out = Lin::new();
    for (w, x) in a {
        for (v, y) in f(w) {
            add(&mut out, v, *x * y);
        }
    }
    out
}

/// `∂ᵢᶠ`: remove slot `i`, weight by `(−1)ⁱ f(vᵢ)`.
pub fn face(f: &[Rational64], i: usize, a: &Lin) -> Lin {
    linear(a, |w| {
        let mut out = Lin::new();
        if i < w.len() && w.len() > 1 {
            let mut v = w.clone();
            let x = v.remove(i);
            add(&mut out, v, sign(i) * f[x as usize]);
        }
        out
    })
}

/// `dᵢᶠ`: insert every vertex at slot `i`, weight by `(−1)ⁱ f(v)`.
pub fn coface(f: &[Rational64], i: usize, a: &Lin) -> Lin {
    linear(a, |w| {
        let mut out = Lin::new();
        if i <= w.len() {
            for (x, fx) in f.iter().enumerate() {
                let mut v = w.clone();
                v.insert(i, x as u32);
                add(&mut out, v, sign(i) * *fx);
            }
        }
        out
    })
}

/// `sᵢ`: repeat slot `i`.
pub fn degeneracy(i: usize, a: &Lin) -> Lin {
    linear(a, |w| {
        let mut v = w.clone();
        v.insert(i, w[i]);
        single(&v)
    })
}

pub fn is_regular(w: &[u32]) -> bool {
    w.windows(2).all(|p| p[0] != p[1])
}

pub fn project(a: &Lin) -> Lin {
    a.iter()
        .filter(|(w, _)| is_regular(w))
        .map(|(w, x)| (w.clone(), *x))
        .collect()
}

/// Every word of length `n + 1` over `nv` letters, lexicographic.
pub fn words(nv: usize, n: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..=n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..nv as u32).map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

pub fn regular_words(nv: usize, n: usize) -> Vec<Word> {
    words(nv, n).into_iter().filter(|w| is_regular(w)).collect()
}

/// Column `c` of a library matrix as an oracle chain.
pub fn column(m: &OperatorMatrix, c: usize) -> Lin {
    m.column_entries(c)
        .iter()
        .map(|(r, s)| (m.rows().path_at(*r).vertices().to_vec(), from_scalar(s)))
        .collect()
}

pub fn col_word(b: &Basis, c: usize) -> Word {
    b.path_at(c).vertices().to_vec()
}
