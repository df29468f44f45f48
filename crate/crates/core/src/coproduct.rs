//! Product and coproduct on the cohomology of the compactified
//! configuration spaces relative to their boundary.
//!
//! Points carry two colors: `q` points constrained to a knotted strand and
//! `t` free points, written as the grading `(q, t)`; the underlying ring is
//! the one on `q + t` points. Stacking a `(q, t)` configuration before an
//! `(r, s)` one and letting the strand pass through both gives a product
//!
//! ```text
//! delta_star_colored : H(q,t) (x) H(r,s) -> H(q+r, t+s)
//! ```
//!
//! computed by relabeling the second factor up by `q + t`, multiplying, and
//! renumbering through the shuffle [`sigma`] that puts the strand points
//! first. The linear dual [`coproduct`] splits a monomial across every
//! `(q,t | r,s)` decomposition of its grading; a generator joining points
//! on opposite sides of a split kills that split's term.
//! [`duality_matrix_check`] confirms the two are exact transposes of one
//! another, degree by degree.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{basis, Element, Monomial, RingParams};
use crate::scalar::{Coefficients, Scalar};

/// A two-color point count: `q` strand points, `t` free points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredGrading {
    pub q: usize,
    pub t: usize,
}

impl ColoredGrading {
    pub fn new(q: usize, t: usize) -> ColoredGrading {
        ColoredGrading { q, t }
    }

    pub fn total(&self) -> usize {
        self.q + self.t
    }

    fn matches(&self, params: &RingParams) -> Result<()> {
        if self.total() == params.q() {
            Ok(())
        } else {
            Err(Error::GradingMismatch {
                q: self.q,
                t: self.t,
                points: params.q(),
            })
        }
    }
}

impl std::fmt::Display for ColoredGrading {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.q, self.t)
    }
}

/// The block shuffle renumbering points of a stacked pair of colored
/// configurations. On `1..=q+t+r+s` it fixes `1..=q` (first strand block)
/// and the final `s` free points, moves the `t` free points of the first
/// factor up by `r`, and the `r` strand points of the second factor down
/// by `t`, so strand points come first in the result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShufflePermutation {
    q: usize,
    t: usize,
    r: usize,
    s: usize,
    forward: Vec<usize>,
}

/// Build the shuffle for the split `(q, t | r, s)`.
pub fn sigma(q: usize, t: usize, r: usize, s: usize) -> ShufflePermutation {
    let total = q + t + r + s;
    let forward = (1..=total)
        .map(|i| {
            if i <= q || i > q + t + r {
                i
            } else if i <= q + t {
                i + r
            } else {
                i - t
            }
        })
        .collect();
    ShufflePermutation { q, t, r, s, forward }
}

impl ShufflePermutation {
    pub fn total(&self) -> usize {
        self.forward.len()
    }

    /// Image of a 1-based point index.
    pub fn apply(&self, i: usize) -> usize {
        self.forward[i - 1]
    }

    /// Images `[sigma(1), sigma(2), ...]`.
    pub fn images(&self) -> &[usize] {
        &self.forward
    }

    /// The inverse shuffle; exchanging the middle block sizes inverts the
    /// permutation.
    pub fn inverse(&self) -> ShufflePermutation {
        sigma(self.q, self.r, self.t, self.s)
    }

    pub fn is_identity(&self) -> bool {
        self.forward.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    pub fn is_involution(&self) -> bool {
        self.forward.iter().enumerate().all(|(k, &v)| self.forward[v - 1] == k + 1)
    }
}

/// Product induced by stacking on the uncolored quotients: relabel the
/// second factor by `+q` and multiply. On generators,
/// `w(i,j) (x) 1 -> w(i,j)` and `1 (x) w(i,j) -> w(q+i, q+j)`.
pub fn delta_star(theta: &Element, eta: &Element) -> Result<Element> {
    compatible_rings(theta, eta)?;
    let q = theta.params().q();
    let params = theta.params().with_points(q + eta.params().q());
    let mut words = Vec::new();
    for (mt, ct) in theta.terms() {
        for (me, ce) in eta.terms() {
            let mut pairs = mt.pairs();
            pairs.extend(me.shifted(q).pairs());
            words.push((pairs, ct * ce));
        }
    }
    Element::from_words(params, words)
}

/// Colored product: stack a `(q,t)` configuration before an `(r,s)` one and
/// renumber through [`sigma`]. On generators, `w(i,j) (x) 1` maps to
/// `w(sigma(i), sigma(j))` and `1 (x) w(i,j)` to
/// `w(sigma(i+q+t), sigma(j+q+t))`; the result is reduced to normal form
/// (the renumbering need not preserve index orientation).
pub fn delta_star_colored(
    theta: &Element,
    theta_grading: ColoredGrading,
    eta: &Element,
    eta_grading: ColoredGrading,
) -> Result<Element> {
    compatible_rings(theta, eta)?;
    theta_grading.matches(theta.params())?;
    eta_grading.matches(eta.params())?;
    let cut = theta_grading.total();
    let shuffle = sigma(theta_grading.q, theta_grading.t, eta_grading.q, eta_grading.t);
    let params = theta.params().with_points(cut + eta_grading.total());
    let mut words = Vec::new();
    for (mt, ct) in theta.terms() {
        for (me, ce) in eta.terms() {
            let mut pairs: Vec<(usize, usize)> = mt
                .pairs()
                .into_iter()
                .map(|(i, j)| (shuffle.apply(i), shuffle.apply(j)))
                .collect();
            pairs.extend(
                me.pairs()
                    .into_iter()
                    .map(|(i, j)| (shuffle.apply(i + cut), shuffle.apply(j + cut))),
            );
            words.push((pairs, ct * ce));
        }
    }
    Element::from_words(params, words)
}

/// One way of splitting a colored grading across a tensor factor pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Split {
    pub q: usize,
    pub t: usize,
    pub r: usize,
    pub s: usize,
}

impl Split {
    pub fn left(&self) -> ColoredGrading {
        ColoredGrading::new(self.q, self.t)
    }

    pub fn right(&self) -> ColoredGrading {
        ColoredGrading::new(self.r, self.s)
    }
}

/// One term `coeff * (left (x) right)` of a coproduct, tagged by its split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorTerm {
    pub split: Split,
    pub left: Monomial,
    pub right: Monomial,
    pub coeff: Scalar,
}

/// A finite sum of tensor terms across the splits of one grading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorSum {
    pub grading: ColoredGrading,
    pub terms: Vec<TensorTerm>,
}

/// Flat serialization record for a tensor term; monomials and coefficients
/// print in the expression text format.
#[derive(Debug, Clone, Serialize)]
pub struct TensorTermRecord {
    pub q: usize,
    pub t: usize,
    pub r: usize,
    pub s: usize,
    pub left: String,
    pub right: String,
    pub coeff: String,
}

impl TensorSum {
    pub fn records(&self) -> Vec<TensorTermRecord> {
        self.terms
            .iter()
            .map(|term| TensorTermRecord {
                q: term.split.q,
                t: term.split.t,
                r: term.split.r,
                s: term.split.s,
                left: term.left.to_string(),
                right: term.right.to_string(),
                coeff: term.coeff.to_string(),
            })
            .collect()
    }
}

/// Coproduct of an admissible monomial on the `(Q, T)` quotient: for each
/// split `(q, t | r, s)` of the grading, pull the monomial back through the
/// inverse shuffle; if every generator then joins two points on the same
/// side of the cut at `q + t`, the split contributes the pair of sub-
/// monomials (the right one renumbered down) with a Koszul sign, otherwise
/// it contributes nothing.
pub fn coproduct(params: &RingParams, grading: ColoredGrading, m: &Monomial) -> Result<TensorSum> {
    grading.matches(params)?;
    let mut terms = Vec::new();
    for q in 0..=grading.q {
        for t in 0..=grading.t {
            let split = Split {
                q,
                t,
                r: grading.q - q,
                s: grading.t - t,
            };
            if let Some(term) = split_term(params, m, split)? {
                terms.push(term);
            }
        }
    }
    Ok(TensorSum { grading, terms })
}

fn split_term(params: &RingParams, m: &Monomial, split: Split) -> Result<Option<TensorTerm>> {
    let inverse = sigma(split.q, split.t, split.r, split.s).inverse();
    let cut = split.q + split.t;
    let mut sign = 1i64;
    let mut low: Vec<(usize, usize)> = Vec::new();
    let mut high: Vec<(usize, usize)> = Vec::new();
    let mut low_after_high = 0usize;
    for g in m.generators() {
        let a = inverse.apply(g.small());
        let b = inverse.apply(g.large());
        let (x, y, flipped) = if a < b { (a, b, false) } else { (b, a, true) };
        if y <= cut {
            if flipped {
                sign *= params.flip_sign();
            }
            low_after_high += high.len();
            low.push((x, y));
        } else if x > cut {
            if flipped {
                sign *= params.flip_sign();
            }
            high.push((x - cut, y - cut));
        } else {
            return Ok(None); // generator straddles the cut
        }
    }
    // Koszul sign for moving the low factors in front of the high ones.
    if params.swap_sign() < 0 && low_after_high % 2 == 1 {
        sign = -sign;
    }
    let left = Element::from_words(
        params.with_points(cut),
        [(low, Scalar::one())],
    )?;
    let right = Element::from_words(
        params.with_points(params.q() - cut),
        [(high, Scalar::one())],
    )?;
    // Sub-words of an admissible monomial keep their distinct larger
    // indices, so each side reduces to a single signed monomial.
    debug_assert_eq!(left.num_terms(), 1);
    debug_assert_eq!(right.num_terms(), 1);
    let (lm, lc) = left.terms().next().expect("left side is monomial");
    let (rm, rc) = right.terms().next().expect("right side is monomial");
    let mut coeff = lc * rc;
    if sign < 0 {
        coeff = -coeff;
    }
    let coeff = params.coefficients().normalize(coeff)?;
    Ok(Some(TensorTerm {
        split,
        left: lm.clone(),
        right: rm.clone(),
        coeff,
    }))
}

/// Coproduct extended linearly to a normal-form element. Terms merge by
/// (split, left, right) and sort canonically, so output is deterministic.
pub fn coproduct_element(e: &Element, grading: ColoredGrading) -> Result<TensorSum> {
    let mut acc: BTreeMap<(Split, Monomial, Monomial), Scalar> = BTreeMap::new();
    for (m, c) in e.terms() {
        let ts = coproduct(e.params(), grading, m)?;
        for term in ts.terms {
            let key = (term.split, term.left, term.right);
            let entry = acc.entry(key).or_insert_with(Scalar::zero);
            *entry += c * &term.coeff;
        }
    }
    let mut terms = Vec::new();
    for ((split, left, right), coeff) in acc {
        let coeff = e.params().coefficients().normalize(coeff)?;
        if !coeff.is_zero() {
            terms.push(TensorTerm {
                split,
                left,
                right,
                coeff,
            });
        }
    }
    Ok(TensorSum { grading, terms })
}

/// Verify that in a fixed degree the coproduct matrix on the `(Q, T)`
/// quotient is the exact transpose of the colored product matrix: for every
/// split, every pair of basis monomials `(theta, eta)`, and every basis
/// monomial `m` of the given degree, the coefficient of `m` in
/// `delta_star_colored(theta, eta)` equals the coefficient of
/// `theta (x) eta` in `coproduct(m)`.
pub fn duality_matrix_check(
    n: usize,
    coefficients: Coefficients,
    grading: ColoredGrading,
    degree: usize,
) -> Result<bool> {
    let params = RingParams::new(n, grading.total(), coefficients)?;
    let mut cop: BTreeMap<(Monomial, Split, Monomial, Monomial), Scalar> = BTreeMap::new();
    for m in basis(&params, Some(degree)) {
        for term in coproduct(&params, grading, &m)?.terms {
            cop.insert((m.clone(), term.split, term.left, term.right), term.coeff);
        }
    }
    let mut matched = 0usize;
    for q in 0..=grading.q {
        for t in 0..=grading.t {
            let split = Split {
                q,
                t,
                r: grading.q - q,
                s: grading.t - t,
            };
            let left_params = params.with_points(q + t);
            let right_params = params.with_points(split.r + split.s);
            for d1 in 0..=degree {
                let left_basis = basis(&left_params, Some(d1));
                if left_basis.is_empty() {
                    continue;
                }
                let right_basis = basis(&right_params, Some(degree - d1));
                for theta in &left_basis {
                    let te = Element::from_monomial(left_params, theta, Scalar::one())?;
                    for eta in &right_basis {
                        let he = Element::from_monomial(right_params, eta, Scalar::one())?;
                        let prod = delta_star_colored(&te, split.left(), &he, split.right())?;
                        for (m, c) in prod.terms() {
                            match cop.get(&(m.clone(), split, theta.clone(), eta.clone())) {
                                Some(cc) if cc == c => matched += 1,
                                _ => return Ok(false),
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(matched == cop.len())
}

fn compatible_rings(a: &Element, b: &Element) -> Result<()> {
    if a.params().n() == b.params().n()
        && a.params().coefficients() == b.params().coefficients()
    {
        Ok(())
    } else {
        Err(Error::ParamMismatch {
            left: a.params().to_string(),
            right: b.params().to_string(),
        })
    }
}
