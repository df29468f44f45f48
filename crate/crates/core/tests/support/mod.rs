//! Shared helpers for the integration suites.
//!
//! Everything here recomputes answers by a route the library does not use,
//! so the two sides can check each other:
//!
//! * [`RankOracle`] presents each graded piece of the three-dimensional
//!   ring as (monomials in the free commutative algebra) / (explicit
//!   relation rows) and gets ranks and ideal membership from exact integer
//!   Gaussian elimination, never from the library's rewriting.
//! * [`brute_strata_counts`] sweeps every subset of the admissible
//!   clusters with a bit-parallel compatibility test instead of the
//!   library's recursive enumeration.
//! * [`random_words`] produces seeded streams of raw generator words.

#![allow(dead_code)] // each integration test binary uses its own subset

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use confcoh::{Element, Monomial};

/// A canonically oriented generator index pair `i < j`.
pub type Pair = (u32, u32);

/// A raw generator word: ordered point-index pairs, not necessarily
/// oriented or admissible.
pub type Word = Vec<(usize, usize)>;

/// A degree-`k` monomial of the free commutative algebra on the pairs,
/// as a sorted multiset.
pub type Multiset = Vec<Pair>;

/// A sparse vector over the multiset columns.
pub type SparseRow = BTreeMap<Multiset, BigInt>;

/// Incremental integer Gaussian elimination keyed by leading column.
#[derive(Default)]
pub struct Echelon {
    rows: BTreeMap<Multiset, SparseRow>,
}

fn strip_zeroes(row: &mut SparseRow) {
    row.retain(|_, c| !c.is_zero());
}

fn normalize_content(row: &mut SparseRow) {
    let mut content = BigInt::zero();
    for c in row.values() {
        content = content.gcd(c);
    }
    if content > BigInt::one() {
        for c in row.values_mut() {
            *c = &*c / &content;
        }
    }
    if let Some((_, lead)) = row.iter().next() {
        if lead.is_negative() {
            for c in row.values_mut() {
                *c = -&*c;
            }
        }
    }
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Eliminate `row` against the stored rows until its leading column has
    /// no stored pivot (or the row dies).
    fn reduce(&self, row: &mut SparseRow) {
        loop {
            strip_zeroes(row);
            let Some((lead, coeff)) = row.iter().next().map(|(k, c)| (k.clone(), c.clone()))
            else {
                return;
            };
            let Some(pivot_row) = self.rows.get(&lead) else {
                return;
            };
            let pivot = pivot_row.get(&lead).expect("stored row keeps its pivot");
            let g = coeff.gcd(pivot);
            let row_scale = pivot / &g;
            let pivot_scale = &coeff / &g;
            for c in row.values_mut() {
                *c = &*c * &row_scale;
            }
            for (k, c) in pivot_row {
                let entry = row.entry(k.clone()).or_insert_with(BigInt::zero);
                *entry -= c * &pivot_scale;
            }
            strip_zeroes(row);
            normalize_content(row);
        }
    }

    /// Add a row to the span. Returns true if it was independent.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        self.reduce(&mut row);
        if row.is_empty() {
            return false;
        }
        normalize_content(&mut row);
        let lead = row.iter().next().map(|(k, _)| k.clone()).expect("nonempty");
        self.rows.insert(lead, row);
        true
    }

    /// Is the vector in the span of the inserted rows?
    pub fn contains(&self, row: &SparseRow) -> bool {
        let mut row = row.clone();
        self.reduce(&mut row);
        row.is_empty()
    }
}

/// All canonical generator pairs on `q` points.
pub fn all_pairs(q: u32) -> Vec<Pair> {
    let mut out = Vec::new();
    for j in 2..=q {
        for i in 1..j {
            out.push((i, j));
        }
    }
    out
}

/// All sorted multisets of `len` pairs (combinations with repetition).
pub fn multisets(pairs: &[Pair], len: usize) -> Vec<Multiset> {
    fn extend(pairs: &[Pair], start: usize, left: usize, acc: &mut Multiset, out: &mut Vec<Multiset>) {
        if left == 0 {
            let mut m = acc.clone();
            m.sort_unstable();
            out.push(m);
            return;
        }
        for p in start..pairs.len() {
            acc.push(pairs[p]);
            extend(pairs, p, left - 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    extend(pairs, 0, len, &mut Vec::new(), &mut out);
    out.sort_unstable();
    out
}

fn with_pair(base: &Multiset, extra: &[Pair]) -> Multiset {
    let mut m = base.clone();
    m.extend_from_slice(extra);
    m.sort_unstable();
    m
}

/// Rank and ideal-membership oracle for the ring on `q` points in ambient
/// dimension three. Degree `2k` of the ring is presented as multisets of
/// `k` pairs modulo the rows of:
///
/// * squares: `m * w(i,j)^2` for every pair and every multiset `m` of
///   `k - 2` pairs, and
/// * triples: `m * (w(i,j) w(j,k) - w(i,k) w(j,k) - w(i,j) w(i,k))` for
///   every `i < j < k`, with signs as forced by `w(j,i) = -w(i,j)`.
pub struct RankOracle {
    q: u32,
    pairs: Vec<Pair>,
    by_len: BTreeMap<usize, Echelon>,
    ambient: BTreeMap<usize, usize>,
}

impl RankOracle {
    pub fn new(q: u32) -> RankOracle {
        RankOracle {
            q,
            pairs: all_pairs(q),
            by_len: BTreeMap::new(),
            ambient: BTreeMap::new(),
        }
    }

    /// Number of length-`len` monomials in the free commutative algebra.
    pub fn ambient_dim(&mut self, len: usize) -> usize {
        if let Some(&d) = self.ambient.get(&len) {
            return d;
        }
        let d = multisets(&self.pairs, len).len();
        self.ambient.insert(len, d);
        d
    }

    fn relations(&mut self, len: usize) -> &Echelon {
        if !self.by_len.contains_key(&len) {
            let mut ech = Echelon::new();
            if len >= 2 {
                for base in multisets(&self.pairs, len - 2) {
                    for &p in &self.pairs {
                        let mut row = SparseRow::new();
                        row.insert(with_pair(&base, &[p, p]), BigInt::one());
                        ech.insert(row);
                    }
                    for c in 3..=self.q {
                        for b in 2..c {
                            for a in 1..b {
                                let mut row = SparseRow::new();
                                *row.entry(with_pair(&base, &[(a, b), (b, c)]))
                                    .or_insert_with(BigInt::zero) += 1;
                                *row.entry(with_pair(&base, &[(a, c), (b, c)]))
                                    .or_insert_with(BigInt::zero) -= 1;
                                *row.entry(with_pair(&base, &[(a, b), (a, c)]))
                                    .or_insert_with(BigInt::zero) -= 1;
                                ech.insert(row);
                            }
                        }
                    }
                }
            }
            self.by_len.insert(len, ech);
        }
        &self.by_len[&len]
    }

    /// Rank of the degree-`2*len` piece of the quotient.
    pub fn rank(&mut self, len: usize) -> usize {
        let ambient = self.ambient_dim(len);
        ambient - self.relations(len).rank()
    }

    /// Sparse vector of a raw word, orienting each letter and tracking the
    /// sign; a repeated-index letter has no image (the word is zero).
    pub fn word_vector(&self, word: &[(usize, usize)]) -> Option<(Multiset, BigInt)> {
        let mut sign = BigInt::one();
        let mut m: Multiset = Vec::with_capacity(word.len());
        for &(i, j) in word {
            if i == j {
                return None;
            }
            if i < j {
                m.push((i as u32, j as u32));
            } else {
                sign = -sign;
                m.push((j as u32, i as u32));
            }
        }
        m.sort_unstable();
        Some((m, sign))
    }

    /// Does the library's normal form of `word` differ from the word by an
    /// element of the relation ideal?
    pub fn reduces_to(&mut self, word: &[(usize, usize)], normal: &Element) -> bool {
        self.combination_reduces(&[(word.to_vec(), 1)], normal)
    }

    /// Same check for an integer combination of words: the difference
    /// between the combination and the library's normal form must lie in
    /// the relation ideal, graded piece by graded piece. Scalars in the
    /// normal form are cleared to integers by a common denominator.
    pub fn combination_reduces(
        &mut self,
        terms: &[(Word, i64)],
        normal: &Element,
    ) -> bool {
        let mut denom = BigInt::one();
        for (_, c) in normal.terms() {
            denom = denom.lcm(c.denom());
        }
        let mut diff: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (word, coeff) in terms {
            if let Some((m, sign)) = self.word_vector(word) {
                *diff
                    .entry(word.len())
                    .or_default()
                    .entry(m)
                    .or_insert_with(BigInt::zero) += sign * BigInt::from(*coeff) * &denom;
            }
        }
        for (m, c) in normal.terms() {
            let scaled = c.numer() * (&denom / c.denom());
            *diff
                .entry(m.generators().len())
                .or_default()
                .entry(monomial_multiset(m))
                .or_insert_with(BigInt::zero) -= scaled;
        }
        for (len, mut row) in diff {
            strip_zeroes(&mut row);
            if !row.is_empty() && !self.relations(len).contains(&row) {
                return false;
            }
        }
        true
    }
}

/// Admissibility the long way round: oriented letters on `1..=q` whose
/// larger indices strictly increase.
pub fn is_admissible(m: &Monomial, q: usize) -> bool {
    let pairs = m.pairs();
    pairs.iter().all(|&(i, j)| 1 <= i && i < j && j <= q)
        && pairs.windows(2).all(|w| w[0].1 < w[1].1)
}

/// Multiset column of a normal-form monomial.
pub fn monomial_multiset(m: &Monomial) -> Multiset {
    let mut v: Multiset = m
        .pairs()
        .iter()
        .map(|&(i, j)| (i as u32, j as u32))
        .collect();
    v.sort_unstable();
    v
}

/// Counts of pairwise-compatible cluster families on `q` points, indexed by
/// family size (codimension), computed by sweeping all subsets of the
/// admissible clusters with a bit-parallel validity recurrence.
pub fn brute_strata_counts(q: usize) -> Vec<usize> {
    let clusters = brute_clusters(q);
    let m = clusters.len();
    assert!(m <= 26, "sweep is exponential in the cluster count");
    let incompat: Vec<u32> = clusters
        .iter()
        .map(|&a| {
            let mut mask = 0u32;
            for (jx, &b) in clusters.iter().enumerate() {
                let meet = a & b;
                if !(meet == 0 || meet == a || meet == b) {
                    mask |= 1 << jx;
                }
            }
            mask
        })
        .collect();
    let total = 1usize << m;
    let mut valid = vec![0u64; total.div_ceil(64)];
    let get = |v: &[u64], ix: usize| v[ix >> 6] >> (ix & 63) & 1 == 1;
    valid[0] |= 1;
    let mut counts = vec![0usize; m + 2];
    counts[0] = 1;
    for family in 1..total {
        let low = family.trailing_zeros() as usize;
        let rest = family & (family - 1);
        if get(&valid, rest) && (incompat[low] as usize) & rest == 0 {
            valid[family >> 6] |= 1 << (family & 63);
            counts[family.count_ones() as usize] += 1;
        }
    }
    while counts.last() == Some(&0) {
        counts.pop();
    }
    counts
}

/// Every pairwise-compatible family, as sorted lists of cluster masks.
/// Only for small `q`; the sweep visits all subsets.
pub fn brute_strata_families(q: usize) -> Vec<Vec<u32>> {
    let clusters = brute_clusters(q);
    let m = clusters.len();
    assert!(m <= 16, "family listing is for small ground sets");
    let mut out = Vec::new();
    'family: for family in 0..(1usize << m) {
        let members: Vec<u32> = (0..m)
            .filter(|&ix| family >> ix & 1 == 1)
            .map(|ix| clusters[ix])
            .collect();
        for (ax, &a) in members.iter().enumerate() {
            for &b in &members[ax + 1..] {
                let meet = a & b;
                if !(meet == 0 || meet == a || meet == b) {
                    continue 'family;
                }
            }
        }
        out.push(members);
    }
    out.sort();
    out
}

fn brute_clusters(q: usize) -> Vec<u32> {
    (0u32..1 << q).filter(|m| m.count_ones() >= 2).collect()
}

/// Seeded stream of raw generator words on `q` points: each word has at
/// most `max_len` letters, each letter an ordered pair of distinct indices
/// (so orientation flips are exercised).
pub fn random_words(q: usize, count: usize, max_len: usize, seed: u64) -> Vec<Word> {
    assert!(q >= 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_word(q, max_len, &mut rng)).collect()
}

fn random_word(q: usize, max_len: usize, rng: &mut ChaCha8Rng) -> Word {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            let i = rng.gen_range(1..=q);
            let mut j = rng.gen_range(1..=q - 1);
            if j >= i {
                j += 1;
            }
            (i, j)
        })
        .collect()
}

/// Signed random linear combinations of random words, as word lists with
/// coefficients, for exercising linearity.
pub fn random_combinations(
    q: usize,
    count: usize,
    max_terms: usize,
    max_len: usize,
    seed: u64,
) -> Vec<Vec<(Word, i64)>> {
    const COEFFS: [i64; 5] = [-2, -1, 1, 2, 3];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..rng.gen_range(1..=max_terms))
                .map(|_| {
                    let word = random_word(q, max_len, &mut rng);
                    (word, COEFFS[rng.gen_range(0..COEFFS.len())])
                })
                .collect()
        })
        .collect()
}
