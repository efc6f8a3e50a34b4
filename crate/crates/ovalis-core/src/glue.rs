//! Topological gluing of a degenerating surface's two halves.
//!
//! A curve on a reducible surface meets the double curve `E` in `2k`
//! points; the real part of each half is cut by `E` into marked pieces
//! (two disks, an annulus, or nothing when the curve misses `E`).  Gluing
//! the pieces along their common boundary labels produces spheres on which
//! the curve arcs concatenate into circles: each circle is one cycle of
//! the permutation that alternates between the two sides' arc matchings.
//!
//! A `MarkedHalf` is pure fixture data: plain (uncut) sphere components,
//! plus the marked part with its arcs and per-face closed circles.  Faces
//! of a disk are named by a boundary gap they touch (gap `g` lies between
//! boundary points `g` and `g + 1`); faces of an annulus are named by a
//! gap on its first boundary circle.

use crate::notation::{parse_forest, ParseError};
use crate::scheme::{OvalTree, Scheme, SphereArrangement};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Error raised on inconsistent gluing data.
#[derive(Debug, Error)]
pub enum GlueError {
    #[error("boundary sizes differ: {0} vs {1}")]
    BoundaryMismatch(usize, usize),
    #[error("boundary point count {0} is odd")]
    OddBoundary(usize),
    #[error("boundary point {0} is outside 1..={1} or used twice")]
    BadEndpoint(usize, usize),
    #[error("arcs ({0},{1}) and ({2},{3}) cross")]
    CrossingArcs(usize, usize, usize, usize),
    #[error("annulus across-arcs are not cyclically monotone")]
    AnnulusOrder,
    #[error("gap {0} is outside the boundary range")]
    BadGap(usize),
    #[error("marked parts {0} and {1} cannot be glued")]
    KindMismatch(&'static str, &'static str),
    #[error("glued regions do not form spheres (crossing data inconsistent)")]
    NotATree,
    #[error("invalid forest notation: {0}")]
    Forest(#[from] ParseError),
}

/// Closed circles attached to a face: `(gap naming the face, forest)`.
pub type FaceOvals = Vec<(usize, String)>;

/// The marked (cut) part of one half of the degeneration.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MarkedPart {
    /// The curve misses the double curve on this half.
    None,
    /// Two disks with a common boundary label range `1..=boundary`.
    TwoDisks {
        boundary: usize,
        arcs1: Vec<(usize, usize)>,
        arcs2: Vec<(usize, usize)>,
        #[serde(default)]
        ovals1: FaceOvals,
        #[serde(default)]
        ovals2: FaceOvals,
    },
    /// An annulus whose two boundary circles carry `boundary` points each;
    /// every point is matched across by an arc `(point on B1, point on B2)`.
    Annulus {
        boundary: usize,
        across: Vec<(usize, usize)>,
        #[serde(default)]
        ovals: FaceOvals,
    },
}

impl MarkedPart {
    fn kind_name(&self) -> &'static str {
        match self {
            MarkedPart::None => "none",
            MarkedPart::TwoDisks { .. } => "two_disks",
            MarkedPart::Annulus { .. } => "annulus",
        }
    }

    fn boundary(&self) -> usize {
        match self {
            MarkedPart::None => 0,
            MarkedPart::TwoDisks { boundary, .. } | MarkedPart::Annulus { boundary, .. } => *boundary,
        }
    }
}

/// One half of the degeneration: plain spheres plus the marked part.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MarkedHalf {
    /// Uncut sphere components, as scheme-part notation strings.
    #[serde(default)]
    pub spheres: Vec<String>,
    pub marked: MarkedPart,
    #[serde(default)]
    pub source: String,
}

/// How the marked pieces are identified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct GlueChoice {
    /// False glues the first S-piece to the first T-piece, true to the second.
    pub swap: bool,
    /// Match boundary labels in reversed cyclic order.
    pub reflect: bool,
}

/// A disk's non-crossing chord diagram with its face decorations.
struct Disk {
    boundary: usize,
    chords: Vec<(usize, usize)>,
    ovals: Vec<(usize, Vec<OvalTree>)>,
}

impl Disk {
    fn new(boundary: usize, chords: &[(usize, usize)], ovals: &FaceOvals) -> Result<Self, GlueError> {
        let mut used = vec![false; boundary + 1];
        for &(a, b) in chords {
            for p in [a, b] {
                if p == 0 || p > boundary || used[p] {
                    return Err(GlueError::BadEndpoint(p, boundary));
                }
                used[p] = true;
            }
        }
        if used[1..].iter().any(|&u| !u) {
            return Err(GlueError::BadEndpoint(0, boundary));
        }
        for (i, &ab) in chords.iter().enumerate() {
            let (a, b) = norm(ab);
            for &cd in &chords[i + 1..] {
                let (c, d) = norm(cd);
                if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                    return Err(GlueError::CrossingArcs(a, b, c, d));
                }
            }
        }
        let mut parsed = Vec::new();
        for &(g, ref f) in ovals {
            if g == 0 || g > boundary.max(1) {
                return Err(GlueError::BadGap(g));
            }
            parsed.push((g, parse_forest(f)?));
        }
        Ok(Disk { boundary, chords: chords.to_vec(), ovals: parsed })
    }

    /// Face count: one per chord plus the face along the unenclosed boundary.
    fn faces(&self) -> usize {
        self.chords.len() + 1
    }

    /// Face index of gap `g`: 0 is the outermost face, `i + 1` the face
    /// directly inside chord `i`.
    fn face_of_gap(&self, g: usize) -> usize {
        let mut best: Option<(usize, usize)> = None;
        for (i, &ab) in self.chords.iter().enumerate() {
            let (a, b) = norm(ab);
            if a <= g && g < b {
                let span = b - a;
                if best.map_or(true, |(s, _)| span < s) {
                    best = Some((span, i));
                }
            }
        }
        best.map_or(0, |(_, i)| i + 1)
    }

    /// The two faces adjacent to chord `i`.
    fn chord_sides(&self, i: usize) -> (usize, usize) {
        let (a, b) = norm(self.chords[i]);
        let mut parent: Option<(usize, usize)> = None;
        for (j, &cd) in self.chords.iter().enumerate() {
            let (c, d) = norm(cd);
            if j != i && c <= a && b <= d {
                let span = d - c;
                if parent.map_or(true, |(s, _)| span < s) {
                    parent = Some((span, j));
                }
            }
        }
        (i + 1, parent.map_or(0, |(_, j)| j + 1))
    }

    /// Chord whose endpoint is boundary point `p`.
    fn chord_at(&self, p: usize) -> (usize, usize) {
        for (i, &(a, b)) in self.chords.iter().enumerate() {
            if a == p {
                return (i, b);
            }
            if b == p {
                return (i, a);
            }
        }
        unreachable!("validated matching covers every point")
    }
}

fn norm((a, b): (usize, usize)) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Validated annulus data; across-arcs are stored as `partner[p1] = p2`.
struct Annulus {
    boundary: usize,
    partner: Vec<usize>,
    back: Vec<usize>,
    ovals: Vec<(usize, Vec<OvalTree>)>,
}

impl Annulus {
    fn new(boundary: usize, across: &[(usize, usize)], ovals: &FaceOvals) -> Result<Self, GlueError> {
        let mut partner = vec![0usize; boundary + 1];
        let mut back = vec![0usize; boundary + 1];
        let mut used1 = vec![false; boundary + 1];
        let mut used2 = vec![false; boundary + 1];
        for &(p, q) in across {
            if p == 0 || p > boundary || used1[p] {
                return Err(GlueError::BadEndpoint(p, boundary));
            }
            if q == 0 || q > boundary || used2[q] {
                return Err(GlueError::BadEndpoint(q, boundary));
            }
            used1[p] = true;
            used2[q] = true;
            partner[p] = q;
            back[q] = p;
        }
        if used1[1..].iter().any(|&u| !u) || used2[1..].iter().any(|&u| !u) {
            return Err(GlueError::BadEndpoint(0, boundary));
        }
        // Embeddability in the annulus: the matching must be cyclically
        // monotone (a fixed rotation in one of the two directions).
        if boundary > 1 {
            let step =
                (partner[2] + boundary - partner[1]) % boundary;
            if step != 1 && step != boundary - 1 {
                return Err(GlueError::AnnulusOrder);
            }
            for p in 1..=boundary {
                let next = p % boundary + 1;
                if (partner[next] + boundary - partner[p]) % boundary != step {
                    return Err(GlueError::AnnulusOrder);
                }
            }
        }
        let mut parsed = Vec::new();
        for &(g, ref f) in ovals {
            if g == 0 || g > boundary {
                return Err(GlueError::BadGap(g));
            }
            parsed.push((g, parse_forest(f)?));
        }
        Ok(Annulus { boundary, partner, back, ovals: parsed })
    }

    /// Faces are the strips between consecutive arcs, named by the B1 gap
    /// they touch: face `g` lies along B1 gap `g` (0-based index `g - 1`).
    fn faces(&self) -> usize {
        self.boundary
    }

    /// The B2 gap touched by face `g` of B1: the gap between the partners
    /// of points `g` and `g + 1`.
    fn b2_gap_of_face(&self, g: usize) -> usize {
        let p = self.partner[g];
        let q = self.partner[g % self.boundary + 1];
        // q is cyclically adjacent to p; the gap between them is min side.
        if q % self.boundary + 1 == p {
            q
        } else {
            p
        }
    }
}

/// Accumulates the region graph of one glued sphere.
struct SphereBuilder {
    uf: Vec<usize>,
    ovals: Vec<Vec<OvalTree>>,
    /// One entry per arc: (side regions, cycle id).
    arcs: Vec<(usize, usize, usize)>,
}

impl SphereBuilder {
    fn new(regions: usize) -> Self {
        SphereBuilder { uf: (0..regions).collect(), ovals: vec![Vec::new(); regions], arcs: Vec::new() }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.uf[x] != x {
            let r = self.find(self.uf[x]);
            self.uf[x] = r;
            r
        } else {
            x
        }
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.uf[ra] = rb;
        }
    }

    /// Collapse to the region tree and return the sphere arrangement.
    fn build(mut self) -> Result<SphereArrangement, GlueError> {
        let n = self.uf.len();
        let reps: Vec<usize> = (0..n).map(|_| 0).collect();
        let mut reps = reps;
        for i in 0..n {
            reps[i] = self.find(i);
        }
        let mut ids: Vec<usize> = reps.clone();
        ids.sort_unstable();
        ids.dedup();
        let index = |r: usize| ids.binary_search(&r).expect("region rep");
        let mut ovals: Vec<Vec<OvalTree>> = vec![Vec::new(); ids.len()];
        for (i, trees) in self.ovals.iter().enumerate() {
            ovals[index(reps[i])].extend(trees.iter().cloned());
        }
        // One region-tree edge per curve circle (cycle of arcs); every arc
        // of a cycle must connect the same region pair.
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut cycle_edge: std::collections::BTreeMap<usize, (usize, usize)> = Default::default();
        for &(a, b, cyc) in &self.arcs {
            let (ra, rb) = (index(reps[a]), index(reps[b]));
            let key = (ra.min(rb), ra.max(rb));
            match cycle_edge.get(&cyc) {
                Some(&prev) if prev != key => return Err(GlueError::NotATree),
                Some(_) => {}
                None => {
                    cycle_edge.insert(cyc, key);
                    edges.push(key);
                }
            }
        }
        if edges.len() + 1 != ids.len() {
            return Err(GlueError::NotATree);
        }
        // Root the region tree at region 0 and expand decorations.
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); ids.len()];
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        fn forest_at(
            v: usize,
            parent: Option<usize>,
            adj: &[Vec<usize>],
            ovals: &[Vec<OvalTree>],
            seen: &mut Vec<bool>,
        ) -> Result<Vec<OvalTree>, GlueError> {
            if seen[v] {
                return Err(GlueError::NotATree);
            }
            seen[v] = true;
            let mut forest = Vec::new();
            for &w in &adj[v] {
                if Some(w) != parent {
                    forest.push(OvalTree::with_children(forest_at(w, Some(v), adj, ovals, seen)?));
                }
            }
            forest.extend(ovals[v].iter().cloned());
            Ok(forest)
        }
        let mut seen = vec![false; ids.len()];
        let forest = forest_at(0, None, &adj, &ovals, &mut seen)?;
        if seen.iter().any(|&s| !s) {
            return Err(GlueError::NotATree);
        }
        Ok(SphereArrangement::from_forest(&forest))
    }
}

/// Map a boundary point of the S side to the matched T-side point.
fn match_point(p: usize, boundary: usize, reflect: bool) -> usize {
    if reflect {
        boundary - p + 1
    } else {
        p
    }
}

/// Map an S-side gap to the matched T-side gap.
fn match_gap(g: usize, boundary: usize, reflect: bool) -> usize {
    if boundary == 0 {
        return g;
    }
    if reflect {
        // Gap between points g and g+1 maps to the gap between their
        // mirror images boundary-g+1 and boundary-g.
        if g == boundary {
            boundary
        } else {
            boundary - g
        }
    } else {
        g
    }
}

/// Glue one S disk to one T disk into a sphere.
fn glue_disks(s: &Disk, t: &Disk, reflect: bool) -> Result<SphereArrangement, GlueError> {
    let n = s.boundary;
    let t_off = s.faces();
    let mut b = SphereBuilder::new(s.faces() + t.faces());
    for (g, trees) in &s.ovals {
        b.ovals[s.face_of_gap(*g)].extend(trees.iter().cloned());
    }
    for (g, trees) in &t.ovals {
        b.ovals[t_off + t.face_of_gap(*g)].extend(trees.iter().cloned());
    }
    for g in 1..=n.max(1) {
        let tg = match_gap(g, n, reflect);
        b.union(s.face_of_gap(g), t_off + t.face_of_gap(tg));
    }
    // Cycles of the alternating arc permutation.
    let mut cycle = vec![usize::MAX; n + 1];
    let mut cycles = 0usize;
    for start in 1..=n {
        if cycle[start] != usize::MAX {
            continue;
        }
        let id = cycles;
        cycles += 1;
        let mut p = start;
        loop {
            cycle[p] = id;
            let (_, q) = s.chord_at(p);
            cycle[q] = id;
            let (_, back) = t.chord_at(match_point(q, n, reflect));
            p = if reflect { n - back + 1 } else { back };
            if p == start {
                break;
            }
        }
    }
    for (i, &ab) in s.chords.iter().enumerate() {
        let (f1, f2) = s.chord_sides(i);
        b.arcs.push((f1, f2, cycle[ab.0]));
    }
    for (i, &ab) in t.chords.iter().enumerate() {
        let (f1, f2) = t.chord_sides(i);
        let s_point = if reflect { n - ab.0 + 1 } else { ab.0 };
        b.arcs.push((t_off + f1, t_off + f2, cycle[s_point]));
    }
    b.build()
}

/// Glue both S disks through a T annulus into one sphere.
fn glue_through_annulus(
    w1: &Disk,
    w2: &Disk,
    ann: &Annulus,
    reflect: bool,
) -> Result<SphereArrangement, GlueError> {
    let n = ann.boundary;
    let a_off = w1.faces();
    let w2_off = a_off + ann.faces();
    let mut b = SphereBuilder::new(w2_off + w2.faces());
    for (g, trees) in &w1.ovals {
        b.ovals[w1.face_of_gap(*g)].extend(trees.iter().cloned());
    }
    for (g, trees) in &ann.ovals {
        b.ovals[a_off + g - 1].extend(trees.iter().cloned());
    }
    for (g, trees) in &w2.ovals {
        b.ovals[w2_off + w2.face_of_gap(*g)].extend(trees.iter().cloned());
    }
    for g in 1..=n {
        b.union(w1.face_of_gap(g), a_off + match_gap(g, n, reflect) - 1);
    }
    // Merge W2 faces through the annulus's second boundary.
    for g in 1..=n {
        let b2g = match_gap(g, n, reflect);
        let face = (1..=n)
            .find(|&f| ann.b2_gap_of_face(f) == b2g)
            .ok_or(GlueError::AnnulusOrder)?;
        b.union(w2_off + w2.face_of_gap(g), a_off + face - 1);
    }
    // Cycles: W1 chord -> across -> W2 chord -> across -> ...; `m` is the
    // boundary identification for both ends (an involution on 1..=n).
    let m = |p: usize| match_point(p, n, reflect);
    let mut cyc_w1 = vec![usize::MAX; n + 1];
    let mut cyc_w2 = vec![usize::MAX; n + 1];
    let mut cyc_across = vec![usize::MAX; n + 1];
    let mut cycles = 0usize;
    for start in 1..=n {
        if cyc_w1[start] != usize::MAX {
            continue;
        }
        let id = cycles;
        cycles += 1;
        let mut p = start;
        loop {
            cyc_w1[p] = id;
            let (_, q) = w1.chord_at(p);
            cyc_w1[q] = id;
            let b1 = m(q);
            cyc_across[b1] = id;
            let r0 = m(ann.partner[b1]);
            cyc_w2[r0] = id;
            let (_, r1) = w2.chord_at(r0);
            cyc_w2[r1] = id;
            let b1_back = ann.back[m(r1)];
            cyc_across[b1_back] = id;
            p = m(b1_back);
            if p == start {
                break;
            }
        }
    }
    for (i, &ab) in w1.chords.iter().enumerate() {
        let (f1, f2) = w1.chord_sides(i);
        b.arcs.push((f1, f2, cyc_w1[ab.0]));
    }
    for p in 1..=n {
        // Across arc at B1 point p borders the strips on either side,
        // i.e. the faces along B1 gaps p-1 and p (cyclically).
        let left = if p == 1 { n } else { p - 1 };
        b.arcs.push((a_off + left - 1, a_off + p - 1, cyc_across[p]));
    }
    for (i, &ab) in w2.chords.iter().enumerate() {
        let (f1, f2) = w2.chord_sides(i);
        b.arcs.push((w2_off + f1, w2_off + f2, cyc_w2[ab.0]));
    }
    b.build()
}

fn plain_spheres(half: &MarkedHalf) -> Result<Vec<SphereArrangement>, GlueError> {
    let mut out = Vec::new();
    for text in &half.spheres {
        if text == "0" {
            out.push(SphereArrangement::empty());
        } else {
            out.push(SphereArrangement::from_forest(&parse_forest(text)?));
        }
    }
    Ok(out)
}

/// Glue the two halves with the given identification.
pub fn glue(s: &MarkedHalf, t: &MarkedHalf, choice: GlueChoice) -> Result<Scheme, GlueError> {
    let bs = s.marked.boundary();
    let bt = t.marked.boundary();
    if bs != bt {
        return Err(GlueError::BoundaryMismatch(bs, bt));
    }
    if bs % 2 != 0 {
        return Err(GlueError::OddBoundary(bs));
    }
    let mut spheres = plain_spheres(s)?;
    spheres.extend(plain_spheres(t)?);
    match (&s.marked, &t.marked) {
        (MarkedPart::None, MarkedPart::None) => {}
        (
            MarkedPart::TwoDisks { boundary, arcs1, arcs2, ovals1, ovals2 },
            MarkedPart::TwoDisks {
                boundary: tb,
                arcs1: t_arcs1,
                arcs2: t_arcs2,
                ovals1: t_ovals1,
                ovals2: t_ovals2,
            },
        ) => {
            let w1 = Disk::new(*boundary, arcs1, ovals1)?;
            let w2 = Disk::new(*boundary, arcs2, ovals2)?;
            let h1 = Disk::new(*tb, t_arcs1, t_ovals1)?;
            let h2 = Disk::new(*tb, t_arcs2, t_ovals2)?;
            let (first, second) = if choice.swap { (&h2, &h1) } else { (&h1, &h2) };
            spheres.push(glue_disks(&w1, first, choice.reflect)?);
            spheres.push(glue_disks(&w2, second, choice.reflect)?);
        }
        (
            MarkedPart::TwoDisks { boundary, arcs1, arcs2, ovals1, ovals2 },
            MarkedPart::Annulus { boundary: tb, across, ovals },
        ) => {
            let w1 = Disk::new(*boundary, arcs1, ovals1)?;
            let w2 = Disk::new(*boundary, arcs2, ovals2)?;
            let ann = Annulus::new(*tb, across, ovals)?;
            let (first, second) = if choice.swap { (&w2, &w1) } else { (&w1, &w2) };
            spheres.push(glue_through_annulus(first, second, &ann, choice.reflect)?);
        }
        (a, b) => return Err(GlueError::KindMismatch(a.kind_name(), b.kind_name())),
    }
    while spheres.len() < 4 {
        spheres.push(SphereArrangement::empty());
    }
    Ok(Scheme::new_dp2(spheres))
}

/// Evaluate every applicable identification choice.
pub fn enumerate_gluings(
    s: &MarkedHalf,
    t: &MarkedHalf,
    reflect: bool,
) -> Result<Vec<(GlueChoice, Scheme)>, GlueError> {
    let choices: &[bool] = match (&s.marked, &t.marked) {
        (MarkedPart::None, MarkedPart::None) => &[false],
        _ => &[false, true],
    };
    let mut out = Vec::new();
    for &swap in choices {
        let choice = GlueChoice { swap, reflect };
        out.push((choice, glue(s, t, choice)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::{parse_dp2, print_scheme};

    fn ovals(list: &[(usize, &str)]) -> FaceOvals {
        list.iter().map(|&(g, f)| (g, f.to_string())).collect()
    }

    fn two_disks(
        boundary: usize,
        arcs1: &[(usize, usize)],
        arcs2: &[(usize, usize)],
        ovals1: &[(usize, &str)],
        ovals2: &[(usize, &str)],
    ) -> MarkedPart {
        MarkedPart::TwoDisks {
            boundary,
            arcs1: arcs1.to_vec(),
            arcs2: arcs2.to_vec(),
            ovals1: ovals(ovals1),
            ovals2: ovals(ovals2),
        }
    }

    #[test]
    fn empty_halves_union_plain_spheres() {
        let s = MarkedHalf {
            spheres: vec!["1+<1>".into(), "0".into()],
            marked: MarkedPart::None,
            source: String::new(),
        };
        let t = MarkedHalf { spheres: vec!["2".into()], marked: MarkedPart::None, source: String::new() };
        let got = glue(&s, &t, GlueChoice::default()).expect("glue");
        assert_eq!(got.code(), parse_dp2("1+<1>:2:0:0", 4).expect("parse").code());
    }

    #[test]
    fn nested_versus_zigzag_matching() {
        // Nested triple against a shifted triple concatenates into two
        // circles on the first sphere (a depth-2 chain) and one on the
        // second; face circles decorate them to the target type.
        let s = MarkedHalf {
            spheres: vec![],
            marked: two_disks(6, &[(1, 6), (2, 5), (3, 4)], &[(1, 2), (3, 4), (5, 6)], &[(6, "<2>")], &[(2, "2")]),
            source: String::new(),
        };
        let t = MarkedHalf {
            spheres: vec![],
            marked: two_disks(6, &[(2, 3), (4, 5), (6, 1)], &[(2, 3), (4, 5), (6, 1)], &[], &[]),
            source: String::new(),
        };
        let got = glue(&s, &t, GlueChoice::default()).expect("glue");
        assert_eq!(got.code(), parse_dp2("<1>+<2>:3:0:0", 4).expect("parse").code());
    }

    #[test]
    fn both_choices_differ_in_general() {
        let s = MarkedHalf {
            spheres: vec![],
            marked: two_disks(2, &[(1, 2)], &[(1, 2)], &[(1, "1")], &[]),
            source: String::new(),
        };
        let t = MarkedHalf {
            spheres: vec![],
            marked: two_disks(2, &[(1, 2)], &[(1, 2)], &[(1, "1")], &[]),
            source: String::new(),
        };
        let all = enumerate_gluings(&s, &t, false).expect("glue");
        assert_eq!(all.len(), 2);
        // Pairing the decorated disks puts both circles on one sphere;
        // swapping spreads them over the two spheres.
        assert_eq!(print_scheme(&all[0].1), "3:1:0:0");
        assert_eq!(print_scheme(&all[1].1), "2:2:0:0");
    }

    #[test]
    fn annulus_closes_both_disks_into_one_sphere() {
        let s = MarkedHalf {
            spheres: vec![],
            marked: two_disks(2, &[(1, 2)], &[(1, 2)], &[], &[]),
            source: String::new(),
        };
        let t = MarkedHalf {
            spheres: vec![],
            marked: MarkedPart::Annulus { boundary: 2, across: vec![(1, 1), (2, 2)], ovals: ovals(&[(1, "1")]) },
            source: String::new(),
        };
        let all = enumerate_gluings(&s, &t, false).expect("glue");
        assert_eq!(all.len(), 2);
        // One circle from the arc cycle plus the annulus decoration.
        let l: usize = all[0].1.components();
        assert_eq!(l, 2);
    }

    #[test]
    fn mismatched_boundaries_rejected() {
        let s = MarkedHalf {
            spheres: vec![],
            marked: two_disks(2, &[(1, 2)], &[(1, 2)], &[], &[]),
            source: String::new(),
        };
        let t = MarkedHalf { spheres: vec![], marked: MarkedPart::None, source: String::new() };
        assert!(matches!(glue(&s, &t, GlueChoice::default()), Err(GlueError::BoundaryMismatch(2, 0))));
    }
}
