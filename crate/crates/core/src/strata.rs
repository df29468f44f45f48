//! Combinatorics of the boundary stratification of the compactified
//! configuration space. A stratum is labeled by a family of subsets of the
//! ground set `{1..q}`, each of size at least two, pairwise disjoint or
//! nested (each subset records a cluster of points that have collided; a
//! nested subset is a cluster inside a cluster). The codimension of the
//! stratum is the number of subsets, the faces (codimension-one strata)
//! containing it are the singleton families `{S}` for its members `S`, and
//! there are `2^q - q - 1` faces in all.
//!
//! Subsets are stored as bitmasks over the ground set, so `q <= 31`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// A stratum label: a nested family of point clusters over `{1..q}`.
/// The family is kept sorted by (size, bits), which makes equality,
/// ordering, and printing canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StratumLabel {
    q: usize,
    sets: Vec<u32>,
}

fn mask_of(points: &[usize], q: usize) -> Result<u32> {
    let mut mask = 0u32;
    for &p in points {
        if p < 1 || p > q {
            return Err(Error::InvalidLabel(format!(
                "point {p} outside the ground set 1..={q}"
            )));
        }
        mask |= 1 << (p - 1);
    }
    Ok(mask)
}

fn points_of(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect()
}

fn canonical_key(mask: u32) -> (u32, u32) {
    (mask.count_ones(), mask)
}

/// Two clusters are compatible when disjoint or nested.
pub fn compatible(a: u32, b: u32) -> bool {
    let c = a & b;
    c == 0 || c == a || c == b
}

/// Validity of a raw family over `{1..q}`: every set has at least two
/// points inside the ground set, no duplicates, pairwise compatible.
pub fn is_valid_family(q: usize, families: &[Vec<usize>]) -> bool {
    StratumLabel::new(q, families).is_ok()
}

impl StratumLabel {
    /// Build and validate a label from explicit point lists.
    pub fn new(q: usize, families: &[Vec<usize>]) -> Result<StratumLabel> {
        if q > 31 {
            return Err(Error::GroundSetTooLarge(q));
        }
        let mut sets = Vec::with_capacity(families.len());
        for points in families {
            let mask = mask_of(points, q)?;
            if mask.count_ones() < 2 {
                return Err(Error::InvalidLabel(format!(
                    "cluster {{{}}} has fewer than two points",
                    points_of(mask)
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(",")
                )));
            }
            sets.push(mask);
        }
        sets.sort_by_key(|&m| canonical_key(m));
        for w in sets.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidLabel("repeated cluster".into()));
            }
        }
        for (idx, &a) in sets.iter().enumerate() {
            for &b in &sets[idx + 1..] {
                if !compatible(a, b) {
                    return Err(Error::InvalidLabel(format!(
                        "clusters {} and {} neither disjoint nor nested",
                        fmt_mask(a),
                        fmt_mask(b)
                    )));
                }
            }
        }
        Ok(StratumLabel { q, sets })
    }

    /// The open stratum: the empty family.
    pub fn open(q: usize) -> StratumLabel {
        StratumLabel { q, sets: Vec::new() }
    }

    pub(crate) fn from_masks(q: usize, mut sets: Vec<u32>) -> StratumLabel {
        sets.sort_by_key(|&m| canonical_key(m));
        debug_assert!(sets.windows(2).all(|w| w[0] != w[1]));
        debug_assert!(sets
            .iter()
            .enumerate()
            .all(|(i, &a)| sets[i + 1..].iter().all(|&b| compatible(a, b))));
        StratumLabel { q, sets }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Codimension of the stratum: the number of clusters.
    pub fn codim(&self) -> usize {
        self.sets.len()
    }

    pub fn masks(&self) -> &[u32] {
        &self.sets
    }

    /// Clusters as explicit point lists, in canonical order.
    pub fn clusters(&self) -> Vec<Vec<usize>> {
        self.sets.iter().map(|&m| points_of(m)).collect()
    }

    /// The codimension-one strata whose closures contain this stratum:
    /// one face per cluster, so a codimension-k label lies in exactly k
    /// faces.
    pub fn faces_containing(&self) -> Vec<StratumLabel> {
        self.sets
            .iter()
            .map(|&s| StratumLabel {
                q: self.q,
                sets: vec![s],
            })
            .collect()
    }

    fn sort_key(&self) -> (usize, Vec<(u32, u32)>) {
        (
            self.sets.len(),
            self.sets.iter().map(|&m| canonical_key(m)).collect(),
        )
    }
}

fn fmt_mask(mask: u32) -> String {
    let inner: Vec<String> = points_of(mask).iter().map(ToString::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

impl fmt::Display for StratumLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.sets.iter().map(|&m| fmt_mask(m)).collect();
        write!(f, "{{{}}}", inner.join(","))
    }
}

/// All clusters available over `{1..q}`: the `2^q - q - 1` subsets of size
/// at least two, in canonical order. These are exactly the faces' labels.
pub fn admissible_clusters(q: usize) -> Vec<u32> {
    let mut out: Vec<u32> = (0u32..(1 << q)).filter(|m| m.count_ones() >= 2).collect();
    out.sort_by_key(|&m| canonical_key(m));
    out
}

/// Every valid stratum label over `{1..q}`, sorted by (codimension, family).
///
/// `max_codim = None` lists the full stratification including the open
/// stratum; `max_codim = Some(k)` lists the proper boundary strata of
/// codimension `1..=k`, so `Some(1)` is exactly the faces.
pub fn enumerate_strata(q: usize, max_codim: Option<usize>) -> Result<Vec<StratumLabel>> {
    if q > 31 {
        return Err(Error::GroundSetTooLarge(q));
    }
    let clusters = admissible_clusters(q);
    let cap = max_codim.unwrap_or(usize::MAX);
    let min = if max_codim.is_some() { 1 } else { 0 };
    let mut out = Vec::new();
    let mut chosen: Vec<u32> = Vec::new();
    fn extend(
        start: usize,
        clusters: &[u32],
        chosen: &mut Vec<u32>,
        min: usize,
        cap: usize,
        q: usize,
        out: &mut Vec<StratumLabel>,
    ) {
        if chosen.len() >= min {
            out.push(StratumLabel::from_masks(q, chosen.clone()));
        }
        if chosen.len() == cap {
            return;
        }
        for idx in start..clusters.len() {
            let cand = clusters[idx];
            if chosen.iter().all(|&c| compatible(c, cand)) {
                chosen.push(cand);
                extend(idx + 1, clusters, chosen, min, cap, q, out);
                chosen.pop();
            }
        }
    }
    if cap > 0 || min == 0 {
        extend(0, &clusters, &mut chosen, min, cap.max(min), q, &mut out);
    }
    out.sort_by_key(StratumLabel::sort_key);
    Ok(out)
}

/// Product of boundary faces: place the second label's ground set after the
/// first's. The result has codimension `codim(a) + codim(b)`.
pub fn face_multiply(a: &StratumLabel, b: &StratumLabel) -> Result<StratumLabel> {
    let q = a.q + b.q;
    if q > 31 {
        return Err(Error::GroundSetTooLarge(q));
    }
    let mut sets = a.sets.clone();
    sets.extend(b.sets.iter().map(|&m| m << a.q));
    Ok(StratumLabel::from_masks(q, sets))
}

/// Outcome of checking the manifold-with-faces axioms over `{1..q}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacesReport {
    pub q: usize,
    pub labels_checked: usize,
    pub face_count: usize,
    pub passed: bool,
    pub failures: Vec<String>,
}

impl fmt::Display for FacesReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "q={}: {} labels, {} faces: {}",
            self.q,
            self.labels_checked,
            self.face_count,
            if self.passed { "PASS" } else { "FAIL" }
        )?;
        for line in &self.failures {
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

/// Check the combinatorial manifold-with-faces axioms:
///
/// 0. a codimension-k label lies in exactly k distinct faces;
/// 1. every label of positive codimension lies in at least one face;
/// 2. two distinct compatible faces `{S}`, `{T}` meet in the codimension-2
///    label `{S,T}`, which is a face of (covers by one cluster) each.
pub fn verify_faces_axioms(q: usize) -> Result<FacesReport> {
    let labels = enumerate_strata(q, None)?;
    let known: HashMap<&[u32], usize> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.masks(), i))
        .collect();
    let faces = admissible_clusters(q);
    let mut failures = Vec::new();

    for label in &labels {
        let fs = label.faces_containing();
        if fs.len() != label.codim() {
            failures.push(format!(
                "{label}: codim {} but {} faces",
                label.codim(),
                fs.len()
            ));
        }
        let mut masks: Vec<u32> = fs.iter().map(|f| f.masks()[0]).collect();
        masks.dedup();
        if masks.len() != fs.len() {
            failures.push(format!("{label}: repeated face"));
        }
        if label.codim() >= 1 && fs.is_empty() {
            failures.push(format!("{label}: positive codimension but no face"));
        }
        for f in &fs {
            if !known.contains_key(f.masks()) {
                failures.push(format!("{label}: face {f} not enumerated"));
            }
        }
    }

    for (ai, &s) in faces.iter().enumerate() {
        for &t in &faces[ai + 1..] {
            if !compatible(s, t) {
                continue;
            }
            let meet = StratumLabel::from_masks(q, vec![s, t]);
            if meet.codim() != 2 {
                failures.push(format!("{meet}: expected codimension 2"));
            }
            if !known.contains_key(meet.masks()) {
                failures.push(format!("{meet}: intersection not enumerated"));
            }
            let mut got: Vec<u32> = meet.faces_containing().iter().map(|f| f.masks()[0]).collect();
            got.sort_unstable();
            let mut want = vec![s, t];
            want.sort_unstable();
            if got != want {
                failures.push(format!("{meet}: faces differ from {{S}},{{T}}"));
            }
        }
    }

    Ok(FacesReport {
        q,
        labels_checked: labels.len(),
        face_count: faces.len(),
        passed: failures.is_empty(),
        failures,
    })
}

/// Covering edges of the face poset: `a -> b` when `b` extends `a` by one
/// cluster. Indices refer to the given slice.
pub fn face_poset_edges(labels: &[StratumLabel]) -> Vec<(usize, usize)> {
    let index: HashMap<&[u32], usize> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.masks(), i))
        .collect();
    let mut edges = Vec::new();
    for (child_idx, label) in labels.iter().enumerate() {
        if label.codim() == 0 {
            continue;
        }
        for drop in 0..label.sets.len() {
            let mut parent: Vec<u32> = label.sets.clone();
            parent.remove(drop);
            if let Some(&parent_idx) = index.get(parent.as_slice()) {
                edges.push((parent_idx, child_idx));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    edges
}

/// The face poset in DOT format, one node per label, edges the covering
/// relation from lower to higher codimension.
pub fn face_poset_dot(labels: &[StratumLabel]) -> String {
    let mut out = String::from("digraph strata {\n  rankdir=TB;\n");
    for label in labels {
        out.push_str(&format!("  \"{label}\";\n"));
    }
    for (a, b) in face_poset_edges(labels) {
        out.push_str(&format!("  \"{}\" -> \"{}\";\n", labels[a], labels[b]));
    }
    out.push_str("}\n");
    out
}
