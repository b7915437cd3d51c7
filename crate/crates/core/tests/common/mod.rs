//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls into the rewriting machinery of the library: group
//! identities are decided with the reduced Burau representation of the braid
//! group on three strands, and monoid facts with a union-find over all
//! positive words of a given length.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use artin_special::{Gen, Letter, Presentation, Sign, Word};
use rand::Rng;

/// Laurent polynomial in `t` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Laurent(BTreeMap<i32, i64>);

impl Laurent {
    pub fn zero() -> Self {
        Laurent(BTreeMap::new())
    }

    pub fn mono(c: i64, e: i32) -> Self {
        let mut m = BTreeMap::new();
        if c != 0 {
            m.insert(e, c);
        }
        Laurent(m)
    }

    pub fn one() -> Self {
        Self::mono(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        let mut m = self.0.clone();
        for (&e, &c) in &o.0 {
            let v = m.entry(e).or_insert(0);
            *v += c;
            if *v == 0 {
                m.remove(&e);
            }
        }
        Laurent(m)
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (&e1, &c1) in &self.0 {
            for (&e2, &c2) in &o.0 {
                out = out.add(&Laurent::mono(c1 * c2, e1 + e2));
            }
        }
        out
    }
}

pub type Mat = [[Laurent; 2]; 2];

pub fn identity() -> Mat {
    [[Laurent::one(), Laurent::zero()], [Laurent::zero(), Laurent::one()]]
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let e = |i: usize, j: usize| a[i][0].mul(&b[0][j]).add(&a[i][1].mul(&b[1][j]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// Reduced Burau matrix of `σ_i^{±1}`, `i ∈ {1, 2}`. Faithful on three strands.
pub fn burau(i: u8, inverse: bool) -> Mat {
    let m = Laurent::mono;
    match (i, inverse) {
        (1, false) => [[m(-1, 1), m(1, 0)], [m(0, 0), m(1, 0)]],
        (1, true) => [[m(-1, -1), m(1, -1)], [m(0, 0), m(1, 0)]],
        (2, false) => [[m(1, 0), m(0, 0)], [m(1, 1), m(-1, 1)]],
        (2, true) => [[m(1, 0), m(0, 0)], [m(1, 0), m(-1, -1)]],
        _ => unreachable!(),
    }
}

/// How the two generators of a dihedral-type presentation sit in `B₃`:
/// `a ↦ σ₁^k`, `b ↦ σ₂`. With `k = 1` this is `A₂`, with `k = 2` the
/// type with `m = 4`, both embedded.
#[derive(Clone, Copy, Debug)]
pub struct BraidEmbedding {
    pub a_power: u8,
}

pub const A2: BraidEmbedding = BraidEmbedding { a_power: 1 };
pub const I2_4: BraidEmbedding = BraidEmbedding { a_power: 2 };

impl BraidEmbedding {
    pub fn image(&self, w: &Word) -> Mat {
        let mut acc = identity();
        for l in w.letters() {
            let inv = l.sign == Sign::Neg;
            let (i, k) = if l.gen == Gen(0) { (1, self.a_power) } else { (2, 1) };
            for _ in 0..k {
                acc = mat_mul(&acc, &burau(i, inv));
            }
        }
        acc
    }

    pub fn is_trivial(&self, w: &Word) -> bool {
        self.image(w) == identity()
    }

    pub fn equal(&self, u: &Word, v: &Word) -> bool {
        self.image(u) == self.image(v)
    }
}

pub fn random_word(rank: usize, max_len: usize, rng: &mut impl Rng) -> Word {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            let g = Gen(rng.gen_range(0..rank) as u32);
            if rng.gen_bool(0.5) { Letter::pos(g) } else { Letter::neg(g) }
        })
        .collect()
}

/// Positive equivalence classes of all positive words of length `n`, built by
/// uniting words that differ by one relation application.
pub struct BruteClasses {
    pub n: usize,
    class_of: HashMap<Vec<u32>, usize>,
    pub classes: Vec<BTreeSet<Vec<u32>>>,
}

fn all_words(rank: u32, n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|w| (0..rank).map(move |g| {
            let mut w = w.clone();
            w.push(g);
            w
        })).collect();
    }
    out
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl BruteClasses {
    /// Only meaningful for length-preserving presentations.
    pub fn new(p: &Presentation, n: usize) -> Self {
        let words = all_words(p.rank() as u32, n);
        let index: HashMap<Vec<u32>, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut parent: Vec<usize> = (0..words.len()).collect();
        let sides: Vec<(Vec<u32>, Vec<u32>)> = p
            .relations()
            .iter()
            .map(|r| (r.lhs.gens().iter().map(|g| g.0).collect(), r.rhs.gens().iter().map(|g| g.0).collect()))
            .collect();
        for (i, w) in words.iter().enumerate() {
            for (l, r) in &sides {
                for pos in 0..w.len() {
                    if w[pos..].starts_with(l) {
                        let mut v = w[..pos].to_vec();
                        v.extend_from_slice(r);
                        v.extend_from_slice(&w[pos + l.len()..]);
                        let j = index[&v];
                        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                        parent[a] = b;
                    }
                }
            }
        }
        let mut roots: HashMap<usize, usize> = HashMap::new();
        let mut classes: Vec<BTreeSet<Vec<u32>>> = Vec::new();
        let mut class_of = HashMap::new();
        for (i, w) in words.iter().enumerate() {
            let r = find(&mut parent, i);
            let c = *roots.entry(r).or_insert_with(|| {
                classes.push(BTreeSet::new());
                classes.len() - 1
            });
            classes[c].insert(w.clone());
            class_of.insert(w.clone(), c);
        }
        BruteClasses { n, class_of, classes }
    }

    /// Memoized across a test binary, keyed by presentation text and length.
    pub fn shared(p: &Presentation, n: usize) -> Arc<BruteClasses> {
        static CACHE: OnceLock<Mutex<HashMap<(String, usize), Arc<BruteClasses>>>> = OnceLock::new();
        let key = (p.to_text(), n);
        let cache = CACHE.get_or_init(Default::default);
        if let Some(bc) = cache.lock().unwrap().get(&key) {
            return Arc::clone(bc);
        }
        let bc = Arc::new(BruteClasses::new(p, n));
        cache.lock().unwrap().insert(key, Arc::clone(&bc));
        bc
    }

    pub fn class(&self, w: &[u32]) -> &BTreeSet<Vec<u32>> {
        &self.classes[self.class_of[w]]
    }
}

pub fn gens_of(w: &artin_special::PositiveWord) -> Vec<u32> {
    w.gens().iter().map(|g| g.0).collect()
}

/// Smallest common right multiples of `u` and `v`, by increasing length:
/// the classes of that length containing a word starting with `u` and one
/// starting with `v`.
pub fn brute_right_lcm(p: &Presentation, u: &[u32], v: &[u32], max_len: usize) -> Option<Vec<BTreeSet<Vec<u32>>>> {
    for n in u.len().max(v.len())..=max_len {
        let bc = BruteClasses::shared(p, n);
        let hits: Vec<_> = bc
            .classes
            .iter()
            .filter(|c| c.iter().any(|w| w.starts_with(u)) && c.iter().any(|w| w.starts_with(v)))
            .cloned()
            .collect();
        if !hits.is_empty() {
            return Some(hits);
        }
    }
    None
}

/// Whether the generator `s` right-divides the element of the positive word `w`.
pub fn brute_right_divisible(bc: &BruteClasses, w: &[u32], s: u32) -> bool {
    bc.class(w).iter().any(|m| m.last() == Some(&s))
}
