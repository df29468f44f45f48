//! The cohomology ring of the configuration space of `q` labeled points in
//! `R^n`, presented by generators `w(i,j)` of degree `n-1` (one for each
//! unordered pair of points) subject to
//!
//! * `w(j,i) = (-1)^n w(i,j)`,
//! * `w(i,j)^2 = 0`, and
//! * the three-term Arnold relation
//!   `w(i,j)w(j,k) + w(j,k)w(k,i) + w(k,i)w(i,j) = 0`.
//!
//! Elements are kept in normal form on the *admissible* monomial basis:
//! products `w(i_1,j_1)*...*w(i_k,j_k)` with `i < j` in each factor and the
//! larger indices strictly increasing, `j_1 < j_2 < ... < j_k`. A product
//! with a repeated larger index is rewritten with the Arnold relation
//! (for `i < i' < j`):
//!
//! ```text
//! w(i,j)*w(i',j)  =  w(i,i')*w(i',j) - k * w(i,j)*w(i,i')
//! ```
//!
//! where `k` is the Koszul sign of transposing two generators (`+1` for odd
//! `n`). Both right-hand monomials have strictly smaller multisets of
//! repeated larger indices, so leftmost-innermost rewriting terminates.
//! There are `q!` admissible monomials in total.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Coefficients, Scalar};

/// Ambient dimension, number of points, and coefficient ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingParams {
    n: usize,
    q: usize,
    coefficients: Coefficients,
}

impl RingParams {
    pub fn new(n: usize, q: usize, coefficients: Coefficients) -> Result<Self> {
        if n < 3 {
            return Err(Error::AmbientDimension(n));
        }
        coefficients.validate()?;
        Ok(RingParams { n, q, coefficients })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    /// Every generator sits in degree `n - 1`.
    pub fn generator_degree(&self) -> usize {
        self.n - 1
    }

    /// Sign picked up by writing `w(j,i)` as a multiple of `w(i,j)`.
    pub(crate) fn flip_sign(&self) -> i64 {
        if self.n.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Koszul sign of transposing two generators: `(-1)^((n-1)^2)`.
    pub(crate) fn swap_sign(&self) -> i64 {
        if (self.n - 1).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Same ring on a different number of points.
    pub(crate) fn with_points(&self, q: usize) -> RingParams {
        RingParams { q, ..*self }
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index >= 1 && index <= self.q {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, q: self.q })
        }
    }

    pub(crate) fn same_ring(&self, other: &RingParams) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ParamMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl fmt::Display for RingParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(q={}, n={}, {})", self.q, self.n, self.coefficients)
    }
}

/// A generator `w(i,j)` in canonical orientation `i < j`.
///
/// Generators order by larger index first, which is the order factors take
/// inside an admissible monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Generator {
    i: u32,
    j: u32,
}

impl Generator {
    /// Canonicalize `w(i,j)`: orient the indices and report the sign,
    /// `(-1)^n` when the pair had to be swapped.
    pub fn canonicalize(i: usize, j: usize, params: &RingParams) -> Result<(Generator, i64)> {
        params.check_index(i)?;
        params.check_index(j)?;
        if i == j {
            return Err(Error::RepeatedIndex(i));
        }
        let (lo, hi, sign) = if i < j {
            (i, j, 1)
        } else {
            (j, i, params.flip_sign())
        };
        Ok((
            Generator {
                i: lo as u32,
                j: hi as u32,
            },
            sign,
        ))
    }

    pub fn small(&self) -> usize {
        self.i as usize
    }

    pub fn large(&self) -> usize {
        self.j as usize
    }

    pub(crate) fn shifted(&self, by: usize) -> Generator {
        Generator {
            i: self.i + by as u32,
            j: self.j + by as u32,
        }
    }
}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Generator {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.j, self.i).cmp(&(other.j, other.i))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w({},{})", self.i, self.j)
    }
}

/// An admissible monomial: factors with strictly increasing larger indices.
/// The empty product is the ring unit.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    gens: Vec<Generator>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub(crate) fn from_sorted(gens: Vec<Generator>) -> Monomial {
        debug_assert!(gens.windows(2).all(|w| w[0].large() < w[1].large()));
        Monomial { gens }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn degree(&self, params: &RingParams) -> usize {
        self.len() * params.generator_degree()
    }

    /// Index pairs `(i, j)` of the factors, for re-building words.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.gens.iter().map(|g| (g.small(), g.large())).collect()
    }

    pub(crate) fn shifted(&self, by: usize) -> Monomial {
        Monomial {
            gens: self.gens.iter().map(|g| g.shifted(by)).collect(),
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.gens.len(), &self.gens).cmp(&(other.gens.len(), &other.gens))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for g in &self.gens {
            if !first {
                write!(f, "*")?;
            }
            write!(f, "{g}")?;
            first = false;
        }
        Ok(())
    }
}

/// A ring element in normal form: a finite map from admissible monomials to
/// nonzero coefficients. Immutable once built; all operations return fresh
/// elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    params: RingParams,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero(params: RingParams) -> Element {
        Element {
            params,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(params: RingParams) -> Element {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::one(), Scalar::one());
        Element { params, terms }
    }

    /// The generator `w(i,j)` as an element (indices in either order).
    pub fn generator(params: RingParams, i: usize, j: usize) -> Result<Element> {
        Element::from_words(params, [(vec![(i, j)], Scalar::one())])
    }

    /// A single admissible monomial with the given coefficient.
    pub fn from_monomial(params: RingParams, m: &Monomial, coeff: Scalar) -> Result<Element> {
        Element::from_words(params, [(m.pairs(), coeff)])
    }

    /// Normal form of a linear combination of generator words. Each word is
    /// a list of `(i, j)` index pairs in any orientation; this is the
    /// rewriting entry point everything else routes through.
    pub fn from_words<I>(params: RingParams, words: I) -> Result<Element>
    where
        I: IntoIterator<Item = (Vec<(usize, usize)>, Scalar)>,
    {
        let mut raw: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (pairs, coeff) in words {
            let mut gens = Vec::with_capacity(pairs.len());
            let mut sign = 1i64;
            for (i, j) in pairs {
                let (g, s) = Generator::canonicalize(i, j, &params)?;
                sign *= s;
                gens.push(g);
            }
            let coeff = if sign < 0 { -coeff } else { coeff };
            reduce_word_into(&params, gens, coeff, &mut raw);
        }
        let mut terms = BTreeMap::new();
        for (m, c) in raw {
            let c = params.coefficients.normalize(c)?;
            if !c.is_zero() {
                terms.insert(m, c);
            }
        }
        Ok(Element { params, terms })
    }

    pub fn params(&self) -> &RingParams {
        &self.params
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The degrees present in this element, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = self.terms.keys().map(|m| m.degree(&self.params)).collect();
        ds.dedup(); // keys ascend by length, so degrees ascend too
        ds
    }

    /// `Some(degree)` when all terms share one degree; zero is homogeneous
    /// of every degree and reports `Some(0)`.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        match self.degrees()[..] {
            [] => Some(0),
            [d] => Some(d),
            _ => None,
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.params.same_ring(&other.params)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let entry = terms.entry(m.clone()).or_insert_with(Scalar::zero);
            *entry += c;
        }
        let mut out = BTreeMap::new();
        for (m, c) in terms {
            let c = self.params.coefficients.normalize(c)?;
            if !c.is_zero() {
                out.insert(m, c);
            }
        }
        Ok(Element {
            params: self.params,
            terms: out,
        })
    }

    pub fn neg(&self) -> Element {
        self.scale(&-Scalar::one())
            .expect("negation never leaves the ring")
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Result<Element> {
        let mut terms = BTreeMap::new();
        for (m, v) in &self.terms {
            let v = self.params.coefficients.normalize(v * c)?;
            if !v.is_zero() {
                terms.insert(m.clone(), v);
            }
        }
        Ok(Element {
            params: self.params,
            terms,
        })
    }

    /// Ring product, reduced to normal form.
    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.params.same_ring(&other.params)?;
        let mut words = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut pairs = ma.pairs();
                pairs.extend(mb.pairs());
                words.push((pairs, ca * cb));
            }
        }
        Element::from_words(self.params, words)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Ascending degree; within a degree the rewrite-leading monomial
        // (largest in generator order) prints first.
        let mut terms: Vec<(&Monomial, &Scalar)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then_with(|| b.cmp(a)));
        for (idx, (m, c)) in terms.iter().enumerate() {
            let negative = c.is_negative();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Rewrite one word (canonically-oriented generators) into the admissible
/// basis, accumulating into `out`. Words needing the Arnold rewrite fork
/// into two shorter-ordered words on a work stack.
fn reduce_word_into(
    params: &RingParams,
    word: Vec<Generator>,
    coeff: Scalar,
    out: &mut BTreeMap<Monomial, Scalar>,
) {
    let kappa = params.swap_sign();
    let mut stack = vec![(word, coeff)];
    'words: while let Some((mut gens, mut c)) = stack.pop() {
        if c.is_zero() {
            continue;
        }
        // Sort factors by (larger, smaller) index, tracking the Koszul sign.
        let mut swaps = 0usize;
        for a in 1..gens.len() {
            let mut b = a;
            while b > 0 && gens[b] < gens[b - 1] {
                gens.swap(b - 1, b);
                swaps += 1;
                b -= 1;
            }
        }
        if kappa < 0 && swaps % 2 == 1 {
            c = -c;
        }
        for a in 1..gens.len() {
            let (prev, here) = (gens[a - 1], gens[a]);
            if prev == here {
                continue 'words; // square of a generator
            }
            if prev.large() == here.large() {
                // prev = w(i,j), here = w(i',j) with i < i' < j; apply
                // w(i,j)w(i',j) = w(i,i')w(i',j) - kappa w(i,j)w(i,i').
                let bridge = Generator {
                    i: prev.i,
                    j: here.i,
                };
                let mut first = gens.clone();
                first[a - 1] = bridge;
                let mut second = gens;
                second[a] = bridge;
                let second_coeff = if kappa < 0 { c.clone() } else { -c.clone() };
                stack.push((first, c));
                stack.push((second, second_coeff));
                continue 'words;
            }
        }
        let entry = out
            .entry(Monomial::from_sorted(gens))
            .or_insert_with(Scalar::zero);
        *entry += c;
    }
}

/// All admissible monomials, optionally restricted to one degree, in
/// ascending monomial order. Each monomial picks, for every larger index
/// `j` in `2..=q`, either nothing or one smaller partner `i < j`; hence
/// `q!` monomials in total.
pub fn basis(params: &RingParams, degree: Option<usize>) -> Vec<Monomial> {
    let want_len = match degree {
        None => None,
        Some(d) => {
            let g = params.generator_degree();
            if d % g != 0 {
                return Vec::new();
            }
            Some(d / g)
        }
    };
    let mut out = Vec::new();
    let mut current: Vec<Generator> = Vec::new();
    fn rec(
        j: usize,
        q: usize,
        want_len: Option<usize>,
        current: &mut Vec<Generator>,
        out: &mut Vec<Monomial>,
    ) {
        if j > q {
            if want_len.is_none_or(|k| k == current.len()) {
                out.push(Monomial::from_sorted(current.clone()));
            }
            return;
        }
        rec(j + 1, q, want_len, current, out);
        if want_len.is_none_or(|k| current.len() < k) {
            for i in 1..j {
                current.push(Generator {
                    i: i as u32,
                    j: j as u32,
                });
                rec(j + 1, q, want_len, current, out);
                current.pop();
            }
        }
    }
    rec(2, params.q, want_len, &mut current, &mut out);
    out.sort();
    out
}

/// Poincare polynomial of the ring: integer coefficients by degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoincarePolynomial {
    coeffs: BTreeMap<usize, BigUint>,
}

impl PoincarePolynomial {
    pub fn coefficient(&self, degree: usize) -> BigUint {
        self.coeffs.get(&degree).cloned().unwrap_or_default()
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (&usize, &BigUint)> {
        self.coeffs.iter()
    }

    /// Value at `t = 1`: the total rank, `q!`.
    pub fn total_rank(&self) -> BigUint {
        self.coeffs.values().sum()
    }
}

impl fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *k == 0 {
                write!(f, "{c}")?;
            } else {
                if !c.is_one() {
                    write!(f, "{c}*")?;
                }
                if *k == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{k}")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Closed form `prod_{j=2}^{q} (1 + (j-1) t^(n-1))`, which counts the
/// admissible monomials by degree.
pub fn poincare_polynomial(params: &RingParams) -> PoincarePolynomial {
    let g = params.generator_degree();
    let mut coeffs: BTreeMap<usize, BigUint> = BTreeMap::new();
    coeffs.insert(0, BigUint::one());
    for j in 2..=params.q {
        let mut next = coeffs.clone();
        for (k, c) in &coeffs {
            let entry = next.entry(k + g).or_default();
            *entry += c * BigUint::from(j - 1);
        }
        coeffs = next;
    }
    PoincarePolynomial { coeffs }
}

/// Ranks of the cohomology of the compactified space relative to its
/// boundary: by Lefschetz duality the rank in degree `k` equals the rank of
/// the configuration space's homology in degree `nq - k`, so the table is
/// the Poincare polynomial read against top degree. Ranks are over the
/// rationals.
pub fn quotient_cohomology_dims(params: &RingParams) -> BTreeMap<usize, BigUint> {
    let top = params.n * params.q;
    poincare_polynomial(params)
        .coefficients()
        .map(|(k, c)| (top - k, c.clone()))
        .collect()
}
