//! Structure sheaves on full spectra, sheaves of modules, finite ringed-space
//! gluing, and the comparison functor down to the prime spectrum.
//!
//! Every space here is a finite Alexandrov space presented by its
//! specialization order: opens are up-closed sets, so a sheaf is determined
//! by finitely much data and the sheaf condition is a finite statement. The
//! ring of sections over an open is computed as an inverse limit in the most
//! literal sense available — the subring of the product of the point stalks
//! consisting of tuples compatible under the restriction maps. Limits are
//! determined by the minimal points of the open, which keeps everything
//! small.
//!
//! The sheaf-condition verifier works against a minimal `PresheafData`
//! interface (carrier sizes and restriction index maps), so the same checker
//! runs on structure sheaves, module sheaves, and deliberately corrupted
//! fixtures. Covers are enumerated as antichains of proper subopens; covers
//! with redundant (comparable) members impose strictly weaker conditions
//! once functoriality holds, and functoriality is checked separately and
//! exhaustively.
//!
//! Affinity of a glued space is decided by the topology alone: a space is
//! affine exactly when it has a center, i.e. a least point. The recursive
//! `n`-affine classification certifies the level-1 case by exhibiting an
//! affine open cover whose pairwise intersections split into affine
//! connected components.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::ideals::IdealError;
use crate::localization::{localize, Localization, LocalizationError};
use crate::module::{LeftModule, MElem, ModuleError, ModuleHom};
use crate::ring::{Elem, FiniteRing, RingError, RingHom};
use crate::spectrum::{full_spectrum, FullSpectrum, SpectrumError, DEFAULT_OPEN_BOUND};

#[derive(Debug, Error)]
pub enum SheafError {
    #[error("doubling needs at least two points (removing the center must leave something)")]
    SinglePoint,
    #[error("space has no center")]
    NoCenter,
    #[error("lattice enumeration needs {points} points but the bound is {bound}")]
    TooLarge { points: usize, bound: usize },
    #[error("not an open set of this space")]
    NotOpen,
    #[error("empty open has no section ring")]
    EmptyOpen,
    #[error("point index out of range")]
    PointOutOfRange,
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("maps do not form a composable sequence over one ring")]
    MismatchedSequence,
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Localization(#[from] LocalizationError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// A finite T₀ space presented by its specialization order (`leq[i][j]` means
/// every open containing `i` contains `j`); opens are the up-closed sets.
#[derive(Clone)]
pub struct FSpace {
    pub labels: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl FSpace {
    pub fn new(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self, SheafError> {
        let n = labels.len();
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(SheafError::NotAPartialOrder("matrix shape".into()));
        }
        for i in 0..n {
            if !leq[i][i] {
                return Err(SheafError::NotAPartialOrder(format!("not reflexive at {i}")));
            }
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(SheafError::NotAPartialOrder(format!(
                        "not antisymmetric at ({i},{j})"
                    )));
                }
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return Err(SheafError::NotAPartialOrder(format!(
                            "not transitive at ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(FSpace { labels, leq })
    }

    /// The underlying space of a full spectrum.
    pub fn from_spectrum(spec: &FullSpectrum) -> Self {
        let n = spec.len();
        let leq = (0..n)
            .map(|i| (0..n).map(|j| spec.leq(i, j)).collect())
            .collect();
        let labels = spec
            .points
            .iter()
            .map(|p| render_members(&p.members))
            .collect();
        FSpace { labels, leq }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn up_set(&self, i: usize) -> BTreeSet<usize> {
        (0..self.len()).filter(|&j| self.leq[i][j]).collect()
    }

    pub fn is_open(&self, set: &BTreeSet<usize>) -> bool {
        set.iter()
            .all(|&i| (0..self.len()).all(|j| !self.leq[i][j] || set.contains(&j)))
    }

    /// All opens (up-closed sets) in canonical order, within the point bound.
    pub fn open_sets(&self, bound: usize) -> Result<Vec<BTreeSet<usize>>, SheafError> {
        if self.len() > bound {
            return Err(SheafError::TooLarge {
                points: self.len(),
                bound,
            });
        }
        // Points near the top (small up-sets) first, so that by the time a
        // point may be added, the rest of its up-set has been decided.
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| self.up_set(i).len());
        let mut out = Vec::new();
        let mut current = BTreeSet::new();
        self.collect_opens(&order, 0, &mut current, &mut out);
        out.sort_by(|a, b| match a.len().cmp(&b.len()) {
            std::cmp::Ordering::Equal => a.iter().cmp(b.iter()),
            other => other,
        });
        Ok(out)
    }

    fn collect_opens(
        &self,
        order: &[usize],
        idx: usize,
        current: &mut BTreeSet<usize>,
        out: &mut Vec<BTreeSet<usize>>,
    ) {
        if idx == order.len() {
            out.push(current.clone());
            return;
        }
        let p = order[idx];
        self.collect_opens(order, idx + 1, current, out);
        if self
            .up_set(p)
            .iter()
            .all(|&q| q == p || current.contains(&q))
        {
            current.insert(p);
            self.collect_opens(order, idx + 1, current, out);
            current.remove(&p);
        }
    }

    /// The center of the whole space: its least point.
    pub fn center(&self) -> Option<usize> {
        self.subspace_center(&(0..self.len()).collect())
    }

    /// The least point of a subset, if one exists — the center of the
    /// subspace, whose existence is exactly affinity for open subspaces.
    pub fn subspace_center(&self, set: &BTreeSet<usize>) -> Option<usize> {
        set.iter()
            .copied()
            .find(|&i| set.iter().all(|&j| self.leq[i][j]))
    }

    /// Connected components of a subset under comparability.
    pub fn components(&self, set: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
        let mut remaining: BTreeSet<usize> = set.clone();
        let mut out = Vec::new();
        while let Some(&start) = remaining.iter().next() {
            let mut component = BTreeSet::new();
            let mut frontier = vec![start];
            remaining.remove(&start);
            while let Some(i) = frontier.pop() {
                component.insert(i);
                let linked: Vec<usize> = remaining
                    .iter()
                    .copied()
                    .filter(|&j| self.leq[i][j] || self.leq[j][i])
                    .collect();
                for j in linked {
                    remaining.remove(&j);
                    frontier.push(j);
                }
            }
            out.push(component);
        }
        out
    }
}

fn render_members(members: &BTreeSet<Elem>) -> String {
    let inner: Vec<String> = members.iter().map(|e| e.0.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// How far a finite space is from being affine.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Affinity {
    Affine,
    OneAffine,
    TwoAffine,
}

impl std::fmt::Display for Affinity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Affinity::Affine => write!(f, "affine"),
            Affinity::OneAffine => write!(f, "1-affine"),
            Affinity::TwoAffine => write!(f, "2-affine"),
        }
    }
}

/// Classify a space as affine, 1-affine, or 2-affine.
///
/// Affine means having a center (a least point); the empty space counts as
/// affine (it is a fundamental open of anything). Level 1 is certified by an
/// affine open cover whose pairwise intersections decompose into affine
/// connected components; this refinement by components is deliberate —
/// recursing on the raw intersection instead would push spaces like the
/// doubled three-point spectrum to level 2 even though their cover
/// intersections are disjoint unions of fundamental opens.
pub fn classify_affinity(space: &FSpace) -> Result<Affinity, SheafError> {
    let all: BTreeSet<usize> = (0..space.len()).collect();
    if space.is_empty() || space.subspace_center(&all).is_some() {
        return Ok(Affinity::Affine);
    }
    let opens = space.open_sets(DEFAULT_OPEN_BOUND)?;
    let affine_opens: Vec<BTreeSet<usize>> = opens
        .into_iter()
        .filter(|o| !o.is_empty() && space.subspace_center(o).is_some())
        .collect();
    if affine_opens.len() > 16 {
        return Err(SheafError::TooLarge {
            points: affine_opens.len(),
            bound: 16,
        });
    }
    let component_affine = |set: &BTreeSet<usize>| {
        space
            .components(set)
            .iter()
            .all(|c| space.subspace_center(c).is_some())
    };
    for mask in 1u64..1 << affine_opens.len() {
        let chosen: Vec<&BTreeSet<usize>> = affine_opens
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, o)| o)
            .collect();
        let union: BTreeSet<usize> = chosen.iter().flat_map(|o| o.iter().copied()).collect();
        if union != all {
            continue;
        }
        let good = chosen.iter().enumerate().all(|(i, a)| {
            chosen.iter().skip(i + 1).all(|b| {
                let meet: BTreeSet<usize> = a.intersection(b).copied().collect();
                component_affine(&meet)
            })
        });
        if good {
            return Ok(Affinity::OneAffine);
        }
    }
    Ok(Affinity::TwoAffine)
}

/// Two copies of a spectrum's space glued along the complement of the
/// center.
pub struct DoubledSpace {
    pub space: FSpace,
    /// The two embedded copies of the original space, as point sets.
    pub copies: [BTreeSet<usize>; 2],
    /// The shared center-removed part.
    pub shared: BTreeSet<usize>,
}

/// Glue a spectrum's space with itself along everything except the center.
pub fn glue_double(spec: &FullSpectrum) -> Result<DoubledSpace, SheafError> {
    if spec.len() < 2 {
        return Err(SheafError::SinglePoint);
    }
    let m = spec.len() - 1; // shared points: original indices 1..
    let n = m + 2;
    let mut leq = vec![vec![false; n]; n];
    for i in 0..m {
        for j in 0..m {
            leq[i][j] = spec.leq(i + 1, j + 1);
        }
    }
    for c in [m, m + 1] {
        leq[c][c] = true;
        for j in 0..m {
            leq[c][j] = true; // each center copy sits below every shared point
        }
    }
    let mut labels: Vec<String> = spec.points[1..]
        .iter()
        .map(|p| render_members(&p.members))
        .collect();
    let center = render_members(&spec.center().members);
    labels.push(format!("A:{center}"));
    labels.push(format!("B:{center}"));
    let space = FSpace::new(labels, leq)?;
    let shared: BTreeSet<usize> = (0..m).collect();
    let mut copy_a = shared.clone();
    copy_a.insert(m);
    let mut copy_b = shared.clone();
    copy_b.insert(m + 1);
    Ok(DoubledSpace {
        space,
        copies: [copy_a, copy_b],
        shared,
    })
}

/// The data the sheaf-condition verifier needs: carrier sizes per open and
/// restriction maps by element index. The empty open must report size 1.
pub trait PresheafData {
    fn size(&self, open: &BTreeSet<usize>) -> usize;
    fn restrict(&self, from: &BTreeSet<usize>, to: &BTreeSet<usize>, x: usize) -> usize;
}

/// Result of a sheaf-condition run.
pub struct SheafVerdict {
    pub holds: bool,
    pub counterexample: Option<String>,
    pub covers_checked: usize,
}

/// Check functoriality and the gluing condition for every antichain cover of
/// every open. Once restriction is functorial, a cover with comparable
/// members imposes a weaker condition than the antichain of its maximal
/// members, so antichain covers decide the sheaf condition for all covers.
pub fn verify_sheaf_condition<P: PresheafData>(opens: &[BTreeSet<usize>], data: &P) -> SheafVerdict {
    // Functoriality: identity and composition over all nested triples.
    for u in opens {
        for x in 0..data.size(u) {
            if data.restrict(u, u, x) != x {
                return fail(format!("restriction along {u:?} ⊆ {u:?} is not the identity"), 0);
            }
        }
        for v in opens.iter().filter(|v| v.is_subset(u)) {
            for w in opens.iter().filter(|w| w.is_subset(v)) {
                for x in 0..data.size(u) {
                    let two_step = data.restrict(v, w, data.restrict(u, v, x));
                    if two_step != data.restrict(u, w, x) {
                        return fail(
                            format!("restriction not functorial on {u:?} ⊇ {v:?} ⊇ {w:?}"),
                            0,
                        );
                    }
                }
            }
        }
    }

    let mut covers_checked = 0;
    for u in opens {
        let candidates: Vec<&BTreeSet<usize>> = opens
            .iter()
            .filter(|v| !v.is_empty() && v.is_subset(u) && *v != u)
            .collect();
        let mut chosen: Vec<&BTreeSet<usize>> = Vec::new();
        // DFS over antichain subsets of the candidates.
        fn explore<'a, P: PresheafData>(
            u: &BTreeSet<usize>,
            candidates: &[&'a BTreeSet<usize>],
            start: usize,
            chosen: &mut Vec<&'a BTreeSet<usize>>,
            data: &P,
            covers_checked: &mut usize,
        ) -> Option<String> {
            let union: BTreeSet<usize> = chosen.iter().flat_map(|v| v.iter().copied()).collect();
            if !chosen.is_empty() && &union == u {
                *covers_checked += 1;
                if let Some(err) = check_cover(u, chosen, data) {
                    return Some(err);
                }
                // Extending a cover keeps it a cover; continue for more.
            }
            for (offset, v) in candidates.iter().enumerate().skip(start) {
                if chosen
                    .iter()
                    .any(|w| v.is_subset(w) || w.is_subset(v))
                {
                    continue; // not an antichain
                }
                chosen.push(v);
                if let Some(err) =
                    explore(u, candidates, offset + 1, chosen, data, covers_checked)
                {
                    return Some(err);
                }
                chosen.pop();
            }
            None
        }
        if let Some(err) = explore(u, &candidates, 0, &mut chosen, data, &mut covers_checked) {
            return fail(err, covers_checked);
        }
    }
    SheafVerdict {
        holds: true,
        counterexample: None,
        covers_checked,
    }
}

fn fail(msg: String, covers_checked: usize) -> SheafVerdict {
    SheafVerdict {
        holds: false,
        counterexample: Some(msg),
        covers_checked,
    }
}

/// Locality + gluing for one cover: sections over the union must biject with
/// compatible families.
fn check_cover<P: PresheafData>(
    u: &BTreeSet<usize>,
    cover: &[&BTreeSet<usize>],
    data: &P,
) -> Option<String> {
    let compatible = |family: &[usize]| {
        cover.iter().enumerate().all(|(i, vi)| {
            cover.iter().enumerate().skip(i + 1).all(|(j, vj)| {
                let meet: BTreeSet<usize> = vi.intersection(vj).copied().collect();
                data.restrict(vi, &meet, family[i]) == data.restrict(vj, &meet, family[j])
            })
        })
    };
    // Count compatible families by backtracking over the cover members.
    fn count<P: PresheafData>(
        cover: &[&BTreeSet<usize>],
        data: &P,
        family: &mut Vec<usize>,
        total: &mut usize,
    ) {
        let k = family.len();
        if k == cover.len() {
            *total += 1;
            return;
        }
        'next: for x in 0..data.size(cover[k]) {
            for i in 0..k {
                let meet: BTreeSet<usize> =
                    cover[i].intersection(cover[k]).copied().collect();
                if data.restrict(cover[i], &meet, family[i]) != data.restrict(cover[k], &meet, x) {
                    continue 'next;
                }
            }
            family.push(x);
            count(cover, data, family, total);
            family.pop();
        }
    }
    let mut total = 0;
    count(cover, data, &mut Vec::new(), &mut total);

    let mut seen = BTreeSet::new();
    for x in 0..data.size(u) {
        let family: Vec<usize> = cover.iter().map(|v| data.restrict(u, v, x)).collect();
        if !compatible(&family) {
            return Some(format!("restriction of section {x} over {u:?} is incompatible"));
        }
        if !seen.insert(family) {
            return Some(format!("two sections over {u:?} agree on the cover {cover:?}"));
        }
    }
    if seen.len() != total {
        return Some(format!(
            "open {u:?} with cover {cover:?}: {} sections but {total} compatible families",
            seen.len()
        ));
    }
    None
}

/// Ring of sections over one open: compatible tuples of stalk elements.
pub struct SectionRing {
    pub open: BTreeSet<usize>,
    pub ring: FiniteRing,
    /// Per section element: its value at each point of the open, in sorted
    /// point order.
    pub tuples: Vec<Vec<Elem>>,
}

/// The structure sheaf of a commutative spectrum, with all section rings of
/// the whole open lattice precomputed.
pub struct StructureSheaf {
    pub spectrum: FullSpectrum,
    /// Localization at each point, index-aligned with the spectrum.
    pub locs: Vec<Localization>,
    /// The full open lattice in canonical order.
    pub opens: Vec<BTreeSet<usize>>,
    /// Restriction between point stalks for each comparable pair.
    point_maps: BTreeMap<(usize, usize), RingHom>,
    sections: BTreeMap<BTreeSet<usize>, SectionRing>,
}

/// Enumerate compatible tuples over the points of an open. Generic worker
/// shared by the ring and module sheaves: `sizes[i]` is the stalk size at
/// point `pts[i]`, and `restrict(i, j, x)` maps stalk elements along
/// `pts[i] ≤ pts[j]`.
fn limit_tuples(
    pts: &[usize],
    leq: impl Fn(usize, usize) -> bool,
    sizes: impl Fn(usize) -> usize,
    restrict: impl Fn(usize, usize, usize) -> usize,
) -> Vec<Vec<usize>> {
    let minimal: Vec<usize> = pts
        .iter()
        .copied()
        .filter(|&p| pts.iter().all(|&q| q == p || !leq(q, p)))
        .collect();
    let mut tuples = Vec::new();
    let mut choice = vec![0usize; minimal.len()];
    'outer: loop {
        // Propagate the minimal choices upward and check agreement.
        let mut tuple = Vec::with_capacity(pts.len());
        let mut ok = true;
        for &p in pts {
            let mut value = None;
            for (k, &s) in minimal.iter().enumerate() {
                if leq(s, p) {
                    let v = restrict(s, p, choice[k]);
                    if value.is_none_or(|old| old == v) {
                        value = Some(v);
                    } else {
                        ok = false;
                        break;
                    }
                }
            }
            match (ok, value) {
                (true, Some(v)) => tuple.push(v),
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            tuples.push(tuple);
        }
        // Odometer step.
        for k in 0..minimal.len() {
            choice[k] += 1;
            if choice[k] < sizes(minimal[k]) {
                continue 'outer;
            }
            choice[k] = 0;
        }
        break;
    }
    tuples.sort();
    tuples
}

/// Build the structure sheaf (commutative engine), precomputing the section
/// ring of every open.
pub fn structure_sheaf(spec: &FullSpectrum) -> Result<StructureSheaf, SheafError> {
    spec.ring.require_commutative()?;
    let mut locs = Vec::with_capacity(spec.len());
    for p in &spec.points {
        locs.push(localize(&spec.ring, &p.members)?);
    }
    let mut point_maps = BTreeMap::new();
    for i in 0..spec.len() {
        for j in 0..spec.len() {
            if spec.leq(i, j) {
                point_maps.insert((i, j), locs[i].restriction_to(&locs[j])?);
            }
        }
    }
    let opens: Vec<BTreeSet<usize>> = spec
        .open_sets(DEFAULT_OPEN_BOUND)?
        .into_iter()
        .map(|(o, _)| o)
        .collect();
    let mut sections = BTreeMap::new();
    for open in &opens {
        if open.is_empty() {
            continue;
        }
        sections.insert(open.clone(), build_section_ring(spec, &locs, &point_maps, open)?);
    }
    Ok(StructureSheaf {
        spectrum: spec.clone(),
        locs,
        opens,
        point_maps,
        sections,
    })
}

fn build_section_ring(
    spec: &FullSpectrum,
    locs: &[Localization],
    point_maps: &BTreeMap<(usize, usize), RingHom>,
    open: &BTreeSet<usize>,
) -> Result<SectionRing, SheafError> {
    let pts: Vec<usize> = open.iter().copied().collect();
    let raw = limit_tuples(
        &pts,
        |i, j| spec.leq(i, j),
        |i| locs[i].fractions.order(),
        |i, j, x| point_maps[&(i, j)].apply(Elem(x)).0,
    );
    let tuples: Vec<Vec<Elem>> = raw
        .into_iter()
        .map(|t| t.into_iter().map(Elem).collect())
        .collect();
    let index_of: BTreeMap<&Vec<Elem>, usize> =
        tuples.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let n = tuples.len();
    let combine = |f: &dyn Fn(usize, Elem, Elem) -> Elem, a: &[Elem], b: &[Elem]| {
        let out: Vec<Elem> = pts
            .iter()
            .enumerate()
            .map(|(k, &p)| f(p, a[k], b[k]))
            .collect();
        index_of[&out]
    };
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for a in &tuples {
        for b in &tuples {
            add.push(combine(&|p, x, y| locs[p].fractions.add(x, y), a, b));
            mul.push(combine(&|p, x, y| locs[p].fractions.mul(x, y), a, b));
        }
    }
    let constant = |f: &dyn Fn(usize) -> Elem| {
        let t: Vec<Elem> = pts.iter().map(|&p| f(p)).collect();
        index_of[&t]
    };
    let zero = constant(&|p| locs[p].fractions.zero());
    let one = constant(&|p| locs[p].fractions.one());
    let names = tuples
        .iter()
        .map(|t| {
            let parts: Vec<String> = pts
                .iter()
                .zip(t)
                .map(|(&p, &e)| locs[p].fractions.name(e).to_string())
                .collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let labels: Vec<String> = pts.iter().map(|p| p.to_string()).collect();
    let ring = FiniteRing::from_parts(
        n,
        add,
        mul,
        zero,
        one,
        format!("O({})", labels.join(",")),
        names,
    )?;
    Ok(SectionRing {
        open: open.clone(),
        ring,
        tuples,
    })
}

impl StructureSheaf {
    /// Restriction between point stalks along `i ≤ j`.
    pub fn point_restriction(&self, i: usize, j: usize) -> Result<&RingHom, SheafError> {
        self.point_maps.get(&(i, j)).ok_or(SheafError::NotOpen)
    }

    /// The section ring over a nonempty open.
    pub fn sections(&self, open: &BTreeSet<usize>) -> Result<&SectionRing, SheafError> {
        if open.is_empty() {
            return Err(SheafError::EmptyOpen);
        }
        self.sections.get(open).ok_or(SheafError::NotOpen)
    }

    /// Restriction between section rings of nested opens.
    pub fn restriction(
        &self,
        from: &BTreeSet<usize>,
        to: &BTreeSet<usize>,
    ) -> Result<RingHom, SheafError> {
        if !to.is_subset(from) {
            return Err(SheafError::NotOpen);
        }
        let big = self.sections(from)?;
        let small = self.sections(to)?;
        let positions: Vec<usize> = from
            .iter()
            .enumerate()
            .filter(|(_, p)| to.contains(p))
            .map(|(k, _)| k)
            .collect();
        let index_of: BTreeMap<&Vec<Elem>, usize> = small
            .tuples
            .iter()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        let map = big
            .tuples
            .iter()
            .map(|t| {
                let sub: Vec<Elem> = positions.iter().map(|&k| t[k]).collect();
                index_of[&sub]
            })
            .collect();
        RingHom::new(big.ring.clone(), small.ring.clone(), map).map_err(Into::into)
    }

    /// The stalk at a point: sections over its principal open neighborhood
    /// (the only opens containing a point are those containing its up-set).
    pub fn stalk(&self, point: usize) -> Result<&SectionRing, SheafError> {
        if point >= self.spectrum.len() {
            return Err(SheafError::PointOutOfRange);
        }
        self.sections(&self.spectrum.up_set(point))
    }

    /// The isomorphism from the stalk onto the localization at the point,
    /// by projecting tuples to their coordinate there.
    pub fn stalk_iso(&self, point: usize) -> Result<RingHom, SheafError> {
        let stalk = self.stalk(point)?;
        let open = self.spectrum.up_set(point);
        let slot = open.iter().position(|&p| p == point).expect("point in its up-set");
        let map = stalk.tuples.iter().map(|t| t[slot].0).collect();
        RingHom::new(
            stalk.ring.clone(),
            self.locs[point].fractions.clone(),
            map,
        )
        .map_err(Into::into)
    }

    /// Sections over the whole space.
    pub fn global_sections(&self) -> &SectionRing {
        let all: BTreeSet<usize> = (0..self.spectrum.len()).collect();
        &self.sections[&all]
    }

    /// The canonical map from the base ring onto the global sections,
    /// sending an element to the tuple of its images.
    pub fn global_iso(&self) -> Result<RingHom, SheafError> {
        let gamma = self.global_sections();
        let index_of: BTreeMap<&Vec<Elem>, usize> = gamma
            .tuples
            .iter()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        let map = self
            .spectrum
            .ring
            .elements()
            .map(|a| {
                let t: Vec<Elem> = (0..self.spectrum.len())
                    .map(|i| self.locs[i].to_fractions.apply(a))
                    .collect();
                index_of[&t]
            })
            .collect();
        RingHom::new(self.spectrum.ring.clone(), gamma.ring.clone(), map).map_err(Into::into)
    }

    /// Points whose stalk is a local ring.
    pub fn local_points(&self) -> BTreeSet<usize> {
        (0..self.spectrum.len())
            .filter(|&i| self.locs[i].fractions.is_local_ring())
            .collect()
    }
}

impl PresheafData for StructureSheaf {
    fn size(&self, open: &BTreeSet<usize>) -> usize {
        if open.is_empty() {
            1
        } else {
            self.sections[open].tuples.len()
        }
    }

    fn restrict(&self, from: &BTreeSet<usize>, to: &BTreeSet<usize>, x: usize) -> usize {
        if to.is_empty() {
            return 0;
        }
        let big = &self.sections[from];
        let small = &self.sections[to];
        let positions: Vec<usize> = from
            .iter()
            .enumerate()
            .filter(|(_, p)| to.contains(p))
            .map(|(k, _)| k)
            .collect();
        let sub: Vec<Elem> = positions.iter().map(|&k| big.tuples[x][k]).collect();
        small
            .tuples
            .iter()
            .position(|t| t == &sub)
            .expect("restriction of a section is a section")
    }
}

/// Comparison of a fundamental open with the spectrum of the corresponding
/// localization: point bijection, order isomorphism, stalk isomorphisms.
pub struct FundamentalComparison {
    pub element: Elem,
    pub open: BTreeSet<usize>,
    pub bijective: bool,
    pub order_isomorphic: bool,
    pub stalks_isomorphic: bool,
}

impl FundamentalComparison {
    pub fn holds(&self) -> bool {
        self.bijective && self.order_isomorphic && self.stalks_isomorphic
    }
}

/// Certify `D(a) ≅ F(A_a)` as ringed subspaces.
pub fn fundamental_subspace_compare(
    sheaf: &StructureSheaf,
    a: Elem,
) -> Result<FundamentalComparison, SheafError> {
    let spec = &sheaf.spectrum;
    let open = spec.fundamental_open(a);
    let seed = [a].into_iter().collect();
    let loc_a = match localize(&spec.ring, &seed) {
        Ok(loc) => loc,
        Err(LocalizationError::ZeroLocalization) => {
            // No nonzero localization: D(a) must be empty and the comparison
            // is the empty one.
            return Ok(FundamentalComparison {
                element: a,
                open: open.clone(),
                bijective: open.is_empty(),
                order_isomorphic: true,
                stalks_isomorphic: true,
            });
        }
        Err(e) => return Err(e.into()),
    };
    let sub_spec = full_spectrum(&loc_a.fractions)?;
    let mut point_map = Vec::with_capacity(sub_spec.len());
    let mut image = BTreeSet::new();
    for p in &sub_spec.points {
        let pulled = loc_a.to_fractions.preimage(&p.members);
        let idx = spec.point_index(&pulled).ok_or(SheafError::PointOutOfRange)?;
        point_map.push(idx);
        image.insert(idx);
    }
    let bijective = image.len() == sub_spec.len() && image == open;
    let mut order_isomorphic = true;
    for i in 0..sub_spec.len() {
        for j in 0..sub_spec.len() {
            if sub_spec.leq(i, j) != spec.leq(point_map[i], point_map[j]) {
                order_isomorphic = false;
            }
        }
    }
    let mut stalks_isomorphic = true;
    for (qi, p) in sub_spec.points.iter().enumerate() {
        let si = point_map[qi];
        let inner = localize(&loc_a.fractions, &p.members)?;
        let chi = loc_a.induced_hom(&sheaf.locs[si].to_fractions)?;
        let alpha = inner.induced_hom(&chi)?;
        if !alpha.is_bijective() {
            stalks_isomorphic = false;
        }
    }
    Ok(FundamentalComparison {
        element: a,
        open,
        bijective,
        order_isomorphic,
        stalks_isomorphic,
    })
}

/// Comparison between the prime spectrum and the local points of the full
/// spectrum: the classical space is recovered as `{A∖P}` with matching
/// topology and stalks.
pub struct LComparison {
    pub prime_count: usize,
    pub local_count: usize,
    /// Prime index ↦ point index under `P ↦ A∖P`.
    pub point_of_prime: Vec<usize>,
    pub matched: bool,
    pub topology_agrees: bool,
    pub stalks_agree: bool,
}

impl LComparison {
    pub fn holds(&self) -> bool {
        self.matched && self.topology_agrees && self.stalks_agree
    }
}

pub fn compare_l_with_spec(ring: &FiniteRing) -> Result<LComparison, SheafError> {
    ring.require_commutative()?;
    let spec = full_spectrum(ring)?;
    let sheaf = structure_sheaf(&spec)?;
    let primes = crate::localization::prime_ideals(ring);
    let local = sheaf.local_points();

    let mut point_of_prime = Vec::with_capacity(primes.len());
    let mut image = BTreeSet::new();
    for p in &primes {
        let complement: BTreeSet<Elem> =
            ring.elements().filter(|a| !p.contains(*a)).collect();
        match spec.point_index(&complement) {
            Some(idx) => {
                point_of_prime.push(idx);
                image.insert(idx);
            }
            None => {
                return Ok(LComparison {
                    prime_count: primes.len(),
                    local_count: local.len(),
                    point_of_prime,
                    matched: false,
                    topology_agrees: false,
                    stalks_agree: false,
                })
            }
        }
    }
    let matched = image == local && image.len() == primes.len();

    // Topology: D(a) cut to the local points corresponds to {P : a ∉ P}.
    let mut topology_agrees = true;
    for a in ring.elements() {
        let open_side: BTreeSet<usize> = spec
            .fundamental_open(a)
            .intersection(&local)
            .copied()
            .collect();
        let prime_side: BTreeSet<usize> = primes
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.contains(a))
            .map(|(i, _)| point_of_prime[i])
            .collect();
        if open_side != prime_side {
            topology_agrees = false;
        }
    }

    // Stalks: at A∖P the stalk is local and isomorphic to the localization.
    let mut stalks_agree = true;
    for &idx in &image {
        let iso = sheaf.stalk_iso(idx)?;
        if !iso.is_bijective() || !sheaf.locs[idx].fractions.is_local_ring() {
            stalks_agree = false;
        }
    }

    Ok(LComparison {
        prime_count: primes.len(),
        local_count: local.len(),
        point_of_prime,
        matched,
        topology_agrees,
        stalks_agree,
    })
}

/// A localized module `S⁻¹M`, stored as fraction classes `(m, s)` with
/// `(m,s) ~ (n,t) ⟺ ∃u ∈ S: u(t·m − s·n) = 0`, carried as a module over the
/// base ring (the action goes through the canonical map).
pub struct LocalizedModule {
    pub module: LeftModule,
    pub to_fractions: ModuleHom,
    reps: Vec<(MElem, Elem)>,
    class: Vec<usize>,
}

impl LocalizedModule {
    /// The class of `(m, s)`; `None` when `s` is not in the denominator set.
    pub fn class_of(&self, m: MElem, s: Elem) -> Option<MElem> {
        let order = self.to_fractions.source.ring.order();
        let idx = self.class[m.0 * order + s.0];
        (idx != usize::MAX).then_some(MElem(idx))
    }

    pub fn rep(&self, c: MElem) -> (MElem, Elem) {
        self.reps[c.0]
    }
}

/// Localize a module at the multiplicative set of a ring localization.
pub fn localize_module(
    loc: &Localization,
    base: &LeftModule,
) -> Result<LocalizedModule, SheafError> {
    let ring = &loc.ring;
    if &base.ring != ring {
        return Err(SheafError::MismatchedSequence);
    }
    let size = base.size();
    let order = ring.order();
    let s_list: Vec<Elem> = loc.set.iter().copied().collect();
    let equivalent = |m: MElem, s: Elem, n: MElem, t: Elem| {
        let diff = base.sub(base.act(t, m), base.act(s, n));
        s_list.iter().any(|&u| base.act(u, diff) == base.zero())
    };
    let mut class = vec![usize::MAX; size * order];
    let mut reps: Vec<(MElem, Elem)> = Vec::new();
    for m in 0..size {
        for &s in &s_list {
            let key = m * order + s.0;
            if class[key] != usize::MAX {
                continue;
            }
            let found = reps
                .iter()
                .position(|&(n, t)| equivalent(MElem(m), s, n, t));
            class[key] = found.unwrap_or_else(|| {
                reps.push((MElem(m), s));
                reps.len() - 1
            });
        }
    }
    let q = reps.len();
    let mut add = Vec::with_capacity(q * q);
    for &(m, s) in &reps {
        for &(n, t) in &reps {
            let num = base.add(base.act(t, m), base.act(s, n));
            add.push(class[num.0 * order + ring.mul(s, t).0]);
        }
    }
    let mut act = Vec::with_capacity(ring.order() * q);
    for a in ring.elements() {
        for &(m, s) in &reps {
            act.push(class[base.act(a, m).0 * order + s.0]);
        }
    }
    let zero = class[base.zero().0 * order + ring.one().0];
    let names = reps
        .iter()
        .map(|&(m, s)| format!("{}/{}", base.name(m), ring.name(s)))
        .collect();
    let module = LeftModule::from_tables(ring, q, add, act, zero, Some(names))?;
    let map = (0..size).map(|m| class[m * order + ring.one().0]).collect();
    let to_fractions = ModuleHom::new(base.clone(), module.clone(), map)?;
    Ok(LocalizedModule {
        module,
        to_fractions,
        reps,
        class,
    })
}

/// Module of sections over one open.
pub struct SectionModule {
    pub open: BTreeSet<usize>,
    pub module: LeftModule,
    pub tuples: Vec<Vec<MElem>>,
}

/// The sheaf of modules attached to a finite module over a commutative ring.
pub struct ModuleSheaf {
    pub spectrum: FullSpectrum,
    pub base: LeftModule,
    pub points: Vec<LocalizedModule>,
    point_maps: BTreeMap<(usize, usize), ModuleHom>,
    sections: BTreeMap<BTreeSet<usize>, SectionModule>,
    pub opens: Vec<BTreeSet<usize>>,
}

pub fn module_sheaf(spec: &FullSpectrum, base: &LeftModule) -> Result<ModuleSheaf, SheafError> {
    spec.ring.require_commutative()?;
    if base.ring != spec.ring {
        return Err(SheafError::MismatchedSequence);
    }
    let mut locs = Vec::with_capacity(spec.len());
    for p in &spec.points {
        locs.push(localize(&spec.ring, &p.members)?);
    }
    let mut points = Vec::with_capacity(spec.len());
    for loc in &locs {
        points.push(localize_module(loc, base)?);
    }
    let mut point_maps = BTreeMap::new();
    for i in 0..spec.len() {
        for j in 0..spec.len() {
            if !spec.leq(i, j) {
                continue;
            }
            // (m, s) keeps its meaning in the finer localization.
            let map = points[i]
                .reps
                .iter()
                .map(|&(m, s)| {
                    points[j]
                        .class_of(m, s)
                        .expect("denominator stays invertible")
                        .0
                })
                .collect();
            point_maps.insert(
                (i, j),
                ModuleHom::new(points[i].module.clone(), points[j].module.clone(), map)?,
            );
        }
    }
    let opens: Vec<BTreeSet<usize>> = spec
        .open_sets(DEFAULT_OPEN_BOUND)?
        .into_iter()
        .map(|(o, _)| o)
        .collect();
    let mut sections = BTreeMap::new();
    for open in &opens {
        if open.is_empty() {
            continue;
        }
        let pts: Vec<usize> = open.iter().copied().collect();
        let raw = limit_tuples(
            &pts,
            |i, j| spec.leq(i, j),
            |i| points[i].module.size(),
            |i, j, x| point_maps[&(i, j)].apply(MElem(x)).0,
        );
        let tuples: Vec<Vec<MElem>> = raw
            .into_iter()
            .map(|t| t.into_iter().map(MElem).collect())
            .collect();
        let index_of: BTreeMap<&Vec<MElem>, usize> =
            tuples.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let n = tuples.len();
        let mut add = Vec::with_capacity(n * n);
        for a in &tuples {
            for b in &tuples {
                let t: Vec<MElem> = pts
                    .iter()
                    .enumerate()
                    .map(|(k, &p)| points[p].module.add(a[k], b[k]))
                    .collect();
                add.push(index_of[&t]);
            }
        }
        let mut act = Vec::with_capacity(spec.ring.order() * n);
        for a in spec.ring.elements() {
            for t in &tuples {
                let image: Vec<MElem> = pts
                    .iter()
                    .enumerate()
                    .map(|(k, &p)| points[p].module.act(a, t[k]))
                    .collect();
                act.push(index_of[&image]);
            }
        }
        let zero_tuple: Vec<MElem> = pts.iter().map(|&p| points[p].module.zero()).collect();
        let zero = index_of[&zero_tuple];
        let module = LeftModule::from_tables(&spec.ring, n, add, act, zero, None)?;
        sections.insert(
            open.clone(),
            SectionModule {
                open: open.clone(),
                module,
                tuples,
            },
        );
    }
    Ok(ModuleSheaf {
        spectrum: spec.clone(),
        base: base.clone(),
        points,
        point_maps,
        sections,
        opens,
    })
}

impl ModuleSheaf {
    /// Restriction between localized modules along `i ≤ j`.
    pub fn point_restriction(&self, i: usize, j: usize) -> Result<&ModuleHom, SheafError> {
        self.point_maps.get(&(i, j)).ok_or(SheafError::NotOpen)
    }

    pub fn sections(&self, open: &BTreeSet<usize>) -> Result<&SectionModule, SheafError> {
        if open.is_empty() {
            return Err(SheafError::EmptyOpen);
        }
        self.sections.get(open).ok_or(SheafError::NotOpen)
    }

    pub fn stalk(&self, point: usize) -> Result<&SectionModule, SheafError> {
        if point >= self.spectrum.len() {
            return Err(SheafError::PointOutOfRange);
        }
        self.sections(&self.spectrum.up_set(point))
    }

    pub fn global_sections(&self) -> &SectionModule {
        let all: BTreeSet<usize> = (0..self.spectrum.len()).collect();
        &self.sections[&all]
    }

    /// The canonical map from the base module onto the global sections.
    pub fn global_iso(&self) -> Result<ModuleHom, SheafError> {
        let gamma = self.global_sections();
        let index_of: BTreeMap<&Vec<MElem>, usize> = gamma
            .tuples
            .iter()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        let map = (0..self.base.size())
            .map(|m| {
                let t: Vec<MElem> = (0..self.spectrum.len())
                    .map(|i| self.points[i].to_fractions.apply(MElem(m)))
                    .collect();
                index_of[&t]
            })
            .collect();
        ModuleHom::new(self.base.clone(), gamma.module.clone(), map).map_err(Into::into)
    }

    /// The stalk projected to its coordinate at the point, verified to be an
    /// isomorphism onto the localized module.
    pub fn stalk_iso(&self, point: usize) -> Result<ModuleHom, SheafError> {
        let stalk = self.stalk(point)?;
        let open = self.spectrum.up_set(point);
        let slot = open
            .iter()
            .position(|&p| p == point)
            .expect("point in its up-set");
        let map = stalk.tuples.iter().map(|t| t[slot].0).collect();
        ModuleHom::new(
            stalk.module.clone(),
            self.points[point].module.clone(),
            map,
        )
        .map_err(Into::into)
    }
}

impl PresheafData for ModuleSheaf {
    fn size(&self, open: &BTreeSet<usize>) -> usize {
        if open.is_empty() {
            1
        } else {
            self.sections[open].tuples.len()
        }
    }

    fn restrict(&self, from: &BTreeSet<usize>, to: &BTreeSet<usize>, x: usize) -> usize {
        if to.is_empty() {
            return 0;
        }
        let big = &self.sections[from];
        let small = &self.sections[to];
        let positions: Vec<usize> = from
            .iter()
            .enumerate()
            .filter(|(_, p)| to.contains(p))
            .map(|(k, _)| k)
            .collect();
        let sub: Vec<MElem> = positions.iter().map(|&k| big.tuples[x][k]).collect();
        small
            .tuples
            .iter()
            .position(|t| t == &sub)
            .expect("restriction of a section is a section")
    }
}

/// Exactness data for a short sequence of module sheaves.
pub struct GammaExactness {
    pub stalkwise_exact: bool,
    pub gamma_exact: bool,
}

/// Check that taking global sections preserves exactness of a stalkwise
/// short exact sequence. Requires the space to have a center: then global
/// sections coincide with the stalk there, which is exact by assumption.
/// The check is performed literally on the section modules, not inferred.
pub fn gamma_exactness_check(
    space: &FSpace,
    spec: &FullSpectrum,
    inj: &ModuleHom,
    surj: &ModuleHom,
) -> Result<GammaExactness, SheafError> {
    if space.center().is_none() {
        return Err(SheafError::NoCenter);
    }
    if inj.target != surj.source {
        return Err(SheafError::MismatchedSequence);
    }
    let left = module_sheaf(spec, &inj.source)?;
    let mid = module_sheaf(spec, &inj.target)?;
    let right = module_sheaf(spec, &surj.target)?;

    // Localized maps per point: (m, s) ↦ (f(m), s).
    let localized = |from: &ModuleSheaf, to: &ModuleSheaf, f: &ModuleHom, i: usize| {
        let map: Vec<usize> = from.points[i]
            .reps
            .iter()
            .map(|&(m, s)| {
                to.points[i]
                    .class_of(f.apply(m), s)
                    .expect("same multiplicative set")
                    .0
            })
            .collect();
        ModuleHom::new(
            from.points[i].module.clone(),
            to.points[i].module.clone(),
            map,
        )
    };

    let mut stalkwise_exact = true;
    for i in 0..spec.len() {
        let f = localized(&left, &mid, inj, i)?;
        let g = localized(&mid, &right, surj, i)?;
        if !f.is_injective() || !g.is_surjective() || f.image() != g.kernel() {
            stalkwise_exact = false;
        }
    }

    // Global sections: apply the localized maps tuple-wise.
    let section_map = |from: &ModuleSheaf,
                       to: &ModuleSheaf,
                       f: &ModuleHom|
     -> Result<ModuleHom, SheafError> {
        let gamma_from = from.global_sections();
        let gamma_to = to.global_sections();
        let index_of: BTreeMap<&Vec<MElem>, usize> = gamma_to
            .tuples
            .iter()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        let mut per_point = Vec::new();
        for i in 0..spec.len() {
            per_point.push(localized(from, to, f, i)?);
        }
        let map = gamma_from
            .tuples
            .iter()
            .map(|t| {
                let image: Vec<MElem> = t
                    .iter()
                    .enumerate()
                    .map(|(i, &m)| per_point[i].apply(m))
                    .collect();
                index_of[&image]
            })
            .collect();
        ModuleHom::new(
            gamma_from.module.clone(),
            gamma_to.module.clone(),
            map,
        )
        .map_err(Into::into)
    };

    let gamma_inj = section_map(&left, &mid, inj)?;
    let gamma_surj = section_map(&mid, &right, surj)?;
    let gamma_exact = gamma_inj.is_injective()
        && gamma_surj.is_surjective()
        && gamma_inj.image() == gamma_surj.kernel();

    Ok(GammaExactness {
        stalkwise_exact,
        gamma_exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localization;

    fn z(n: usize) -> FiniteRing {
        FiniteRing::zmod(n).unwrap()
    }

    fn spec(n: usize) -> FullSpectrum {
        full_spectrum(&z(n)).unwrap()
    }

    fn idx(items: &[usize]) -> BTreeSet<usize> {
        items.iter().copied().collect()
    }

    #[test]
    fn section_rings_of_z6_match_the_frozen_values() {
        let sheaf = structure_sheaf(&spec(6)).unwrap();
        assert_eq!(sheaf.sections(&idx(&[1])).unwrap().ring.order(), 2);
        assert_eq!(sheaf.sections(&idx(&[2])).unwrap().ring.order(), 3);
        let pair = sheaf.sections(&idx(&[1, 2])).unwrap();
        assert_eq!(pair.ring.order(), 6);
        // Compatible pairs over the two incomparable points form the product
        // ring; additively it is cyclic of order 6.
        let z6 = z(6);
        let mut map = vec![usize::MAX; 6];
        for k in 0..6 {
            map[pair.ring.int_embed(k).0] = z6.int_embed(k).0;
        }
        assert!(RingHom::new(pair.ring.clone(), z6, map).unwrap().is_bijective());
    }

    #[test]
    fn global_sections_recover_the_ring() {
        for n in [4, 6, 12, 30] {
            let sheaf = structure_sheaf(&spec(n)).unwrap();
            let iso = sheaf.global_iso().unwrap();
            assert!(iso.is_bijective(), "Z/{n}");
        }
    }

    #[test]
    fn stalks_are_isomorphic_to_localizations() {
        for n in [4, 6, 12, 30] {
            let sheaf = structure_sheaf(&spec(n)).unwrap();
            for i in 0..sheaf.spectrum.len() {
                assert!(sheaf.stalk_iso(i).unwrap().is_bijective(), "Z/{n} point {i}");
            }
        }
    }

    #[test]
    fn sheaf_condition_holds_for_structure_sheaves() {
        for n in [4, 6, 12, 30] {
            let sheaf = structure_sheaf(&spec(n)).unwrap();
            let verdict = verify_sheaf_condition(&sheaf.opens, &sheaf);
            assert!(verdict.holds, "Z/{n}: {:?}", verdict.counterexample);
        }
    }

    struct Corrupted<'a> {
        inner: &'a StructureSheaf,
        from: BTreeSet<usize>,
        to: BTreeSet<usize>,
    }

    impl PresheafData for Corrupted<'_> {
        fn size(&self, open: &BTreeSet<usize>) -> usize {
            self.inner.size(open)
        }

        fn restrict(&self, from: &BTreeSet<usize>, to: &BTreeSet<usize>, x: usize) -> usize {
            let honest = self.inner.restrict(from, to, x);
            if from == &self.from && to == &self.to {
                // Swap two elements of the target: a non-functorial lie.
                match honest {
                    0 => 1,
                    1 => 0,
                    v => v,
                }
            } else {
                honest
            }
        }
    }

    #[test]
    fn corrupted_restriction_is_reported_with_a_witness() {
        let sheaf = structure_sheaf(&spec(6)).unwrap();
        let corrupted = Corrupted {
            inner: &sheaf,
            from: idx(&[0, 1, 2]),
            to: idx(&[1]),
        };
        let verdict = verify_sheaf_condition(&sheaf.opens, &corrupted);
        assert!(!verdict.holds);
        assert!(verdict.counterexample.is_some());
    }

    #[test]
    fn local_points_are_the_noncentral_points_for_z6() {
        let sheaf = structure_sheaf(&spec(6)).unwrap();
        assert_eq!(sheaf.local_points(), idx(&[1, 2]));
        let z4_sheaf = structure_sheaf(&spec(4)).unwrap();
        assert_eq!(z4_sheaf.local_points(), idx(&[0]));
    }

    #[test]
    fn z30_has_three_local_points_of_seven() {
        let sheaf = structure_sheaf(&spec(30)).unwrap();
        assert_eq!(sheaf.spectrum.len(), 7);
        assert_eq!(sheaf.local_points().len(), 3);
    }

    #[test]
    fn spec_comparison_holds_on_the_commutative_corpus() {
        for ring in [z(4), z(6), z(12), z(30), FiniteRing::gf4()] {
            let report = compare_l_with_spec(&ring).unwrap();
            assert!(report.holds(), "{}", ring.label());
            assert_eq!(report.prime_count, report.local_count);
        }
        let z30_report = compare_l_with_spec(&z(30)).unwrap();
        assert_eq!(z30_report.prime_count, 3);
    }

    #[test]
    fn fundamental_opens_match_localized_spectra() {
        let sheaf = structure_sheaf(&spec(6)).unwrap();
        for a in z(6).elements() {
            let report = fundamental_subspace_compare(&sheaf, a).unwrap();
            assert!(report.holds(), "element {}", a.0);
        }
        let sheaf30 = structure_sheaf(&spec(30)).unwrap();
        let report = fundamental_subspace_compare(&sheaf30, Elem(2)).unwrap();
        assert_eq!(report.open.len(), 3);
        assert!(report.holds());
    }

    #[test]
    fn doubled_z6_space_has_no_center_and_is_1_affine() {
        let doubled = glue_double(&spec(6)).unwrap();
        assert_eq!(doubled.space.len(), 4);
        assert!(doubled.space.center().is_none());
        assert_eq!(
            classify_affinity(&doubled.space).unwrap(),
            Affinity::OneAffine
        );
        // The two copies are open, affine, and cover the space.
        for copy in &doubled.copies {
            assert!(doubled.space.is_open(copy));
            assert!(doubled.space.subspace_center(copy).is_some());
        }
        let union: BTreeSet<usize> = doubled.copies[0]
            .union(&doubled.copies[1])
            .copied()
            .collect();
        assert_eq!(union, (0..4).collect::<BTreeSet<usize>>());
    }

    #[test]
    fn gluing_a_one_point_space_is_rejected() {
        assert!(matches!(glue_double(&spec(4)), Err(SheafError::SinglePoint)));
    }

    #[test]
    fn affine_spaces_classify_as_affine() {
        for n in [4, 6, 12, 30] {
            let space = FSpace::from_spectrum(&spec(n));
            assert_eq!(classify_affinity(&space).unwrap(), Affinity::Affine);
        }
    }

    #[test]
    fn a_discrete_two_point_space_is_1_affine() {
        let space = FSpace::new(
            vec!["a".into(), "b".into()],
            vec![vec![true, false], vec![false, true]],
        )
        .unwrap();
        assert_eq!(classify_affinity(&space).unwrap(), Affinity::OneAffine);
    }

    fn z2_module_over_z6() -> LeftModule {
        // Action a·m = (a mod 2)·m on a two-element module.
        let z6 = z(6);
        let add = vec![0, 1, 1, 0];
        let mut act = Vec::new();
        for a in 0..6 {
            for m in 0..2 {
                act.push(a % 2 * m);
            }
        }
        LeftModule::from_tables(&z6, 2, add, act, 0, None).unwrap()
    }

    #[test]
    fn module_sections_kill_or_keep_torsion_as_frozen() {
        let sheaf = module_sheaf(&spec(6), &z2_module_over_z6()).unwrap();
        // At the point inverting 2, the 2-torsion module dies; at the point
        // inverting 3 it survives.
        assert_eq!(sheaf.sections(&idx(&[2])).unwrap().module.size(), 1);
        assert_eq!(sheaf.sections(&idx(&[1])).unwrap().module.size(), 2);
    }

    #[test]
    fn module_global_sections_recover_the_module() {
        let base = z2_module_over_z6();
        let sheaf = module_sheaf(&spec(6), &base).unwrap();
        assert!(sheaf.global_iso().unwrap().is_bijective());
        let regular = LeftModule::regular(&z(12));
        let sheaf12 = module_sheaf(&spec(12), &regular).unwrap();
        assert!(sheaf12.global_iso().unwrap().is_bijective());
    }

    #[test]
    fn module_sheaf_of_the_regular_module_mirrors_the_structure_sheaf() {
        let spec6 = spec(6);
        let ring_sheaf = structure_sheaf(&spec6).unwrap();
        let mod_sheaf = module_sheaf(&spec6, &LeftModule::regular(&z(6))).unwrap();
        for open in &ring_sheaf.opens {
            if open.is_empty() {
                continue;
            }
            assert_eq!(
                ring_sheaf.sections(open).unwrap().ring.order(),
                mod_sheaf.sections(open).unwrap().module.size()
            );
        }
    }

    #[test]
    fn module_sheaves_satisfy_the_sheaf_condition_and_stalk_isos() {
        let sheaf = module_sheaf(&spec(6), &z2_module_over_z6()).unwrap();
        let verdict = verify_sheaf_condition(&sheaf.opens, &sheaf);
        assert!(verdict.holds, "{:?}", verdict.counterexample);
        for i in 0..sheaf.spectrum.len() {
            assert!(sheaf.stalk_iso(i).unwrap().is_bijective());
        }
    }

    #[test]
    fn localized_module_size_matches_the_torsion_quotient() {
        // Oracle: S⁻¹M ≅ M/K for K = {m : ∃s ∈ S, s·m = 0}, because every
        // s acts injectively (hence bijectively) on the finite quotient.
        let z6 = z(6);
        let regular = LeftModule::regular(&z6);
        for seed in [vec![2usize], vec![3], vec![]] {
            let seed_set: BTreeSet<Elem> = seed.iter().map(|&i| Elem(i)).collect();
            let loc = localize(&z6, &seed_set).unwrap();
            let localized = localize_module(&loc, &regular).unwrap();
            let killed = (0..6)
                .filter(|&m| {
                    loc.set
                        .iter()
                        .any(|&s| regular.act(s, MElem(m)) == regular.zero())
                })
                .count();
            assert_eq!(localized.module.size() * killed, 6);
            assert_eq!(localized.to_fractions.kernel().len(), killed);
        }
    }

    #[test]
    fn gamma_is_exact_on_the_z6_torsion_sequence() {
        let z6 = z(6);
        let spec6 = spec(6);
        let space = FSpace::from_spectrum(&spec6);
        let regular = LeftModule::regular(&z6);
        let carrier: BTreeSet<MElem> = [MElem(0), MElem(3)].into_iter().collect();
        let sub = LeftModule::submodule(&regular, &carrier).unwrap();
        let inj = ModuleHom::new(sub.clone(), regular.clone(), vec![0, 3]).unwrap();
        let (quot, surj) = LeftModule::quotient(&regular, &carrier).unwrap();
        let _ = quot;
        let result = gamma_exactness_check(&space, &spec6, &inj, &surj).unwrap();
        assert!(result.stalkwise_exact);
        assert!(result.gamma_exact);
    }

    #[test]
    fn gamma_check_requires_a_center() {
        let spec6 = spec(6);
        let doubled = glue_double(&spec6).unwrap();
        let regular = LeftModule::regular(&z(6));
        let id = ModuleHom::new(regular.clone(), regular.clone(), (0..6).collect()).unwrap();
        assert!(matches!(
            gamma_exactness_check(&doubled.space, &spec6, &id, &id),
            Err(SheafError::NoCenter)
        ));
    }

    #[test]
    fn gamma_accepts_the_zero_sequence() {
        let z6 = z(6);
        let spec6 = spec(6);
        let space = FSpace::from_spectrum(&spec6);
        let zero = LeftModule::from_tables(&z6, 1, vec![0], vec![0; 6], 0, None).unwrap();
        let id = ModuleHom::new(zero.clone(), zero.clone(), vec![0]).unwrap();
        let result = gamma_exactness_check(&space, &spec6, &id, &id).unwrap();
        assert!(result.stalkwise_exact && result.gamma_exact);
    }

    #[test]
    fn prime_complement_localizations_are_local_rings() {
        for ring in [z(6), z(12), z(30)] {
            for p in localization::prime_ideals(&ring) {
                let complement: BTreeSet<Elem> =
                    ring.elements().filter(|a| !p.contains(*a)).collect();
                let loc = localize(&ring, &complement).unwrap();
                assert!(loc.fractions.is_local_ring(), "{}", ring.label());
            }
        }
    }
}
