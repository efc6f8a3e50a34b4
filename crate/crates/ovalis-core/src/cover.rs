//! Double-cover lifts of curve arrangements.
//!
//! A degree-2 surface is a double cover of the plane branched along a
//! quartic; a degree-1 surface is a double cover of a quadratic cone
//! branched along a cubic section through the vertex.  Both lifts are
//! purely topological: the interior of each branch-locus oval doubles to a
//! sphere (the cone's vertex region doubles to `RP²`), a curve arc with
//! both endpoints on the branch oval doubles to a single circle, and a
//! curve circle strictly inside a region doubles to two disjoint circles,
//! one per sheet.
//!
//! Disk data is combinatorial: the crossings of the curve with one branch
//! oval are numbered `1..=2m` in cyclic order, the curve arcs inside the
//! disk form a non-crossing perfect matching of those points, and closed
//! curve circles are attached to the face of the matching that touches a
//! named boundary gap (gap `g` sits between points `g` and `g + 1`).

use crate::notation::{parse_forest, ParseError};
use crate::scheme::{OvalTree, RefinedScheme, Scheme, SphereArrangement};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Error raised by lift computations on inconsistent fixture data.
#[derive(Debug, Error)]
pub enum CoverError {
    #[error("boundary point count {0} is odd")]
    OddBoundary(usize),
    #[error("boundary point {0} is outside 1..={1} or used twice")]
    BadEndpoint(usize, usize),
    #[error("chords ({0},{1}) and ({2},{3}) cross")]
    CrossingChords(usize, usize, usize, usize),
    #[error("gap {0} is outside the boundary range")]
    BadGap(usize),
    #[error("boundary points {0} not covered by the arc matching")]
    UnmatchedPoints(usize),
    #[error("a degree-2 branch locus has at most 4 ovals, got {0}")]
    TooManyOvals(usize),
    #[error("refined lift needs 4 ovals with exactly 2 positive, got {pos} positive of {total}")]
    BadPositivity { pos: usize, total: usize },
    #[error("invalid forest notation: {0}")]
    Forest(#[from] ParseError),
}

/// One branch-locus oval: the disk it bounds, with the curve trace inside.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiskDiagram {
    /// Number of curve crossings on the oval (even, possibly 0).
    pub boundary: usize,
    /// Non-crossing perfect matching of the crossings by curve arcs.
    #[serde(default)]
    pub chords: Vec<(usize, usize)>,
    /// Closed curve circles per face: `(gap, forest notation)`.
    #[serde(default)]
    pub ovals: Vec<(usize, String)>,
}

impl DiskDiagram {
    /// An empty disk: no crossings, no circles.
    pub fn empty() -> Self {
        DiskDiagram { boundary: 0, chords: Vec::new(), ovals: Vec::new() }
    }

    fn validate(&self) -> Result<(), CoverError> {
        if self.boundary % 2 != 0 {
            return Err(CoverError::OddBoundary(self.boundary));
        }
        let mut used = vec![false; self.boundary + 1];
        for &(a, b) in &self.chords {
            for p in [a, b] {
                if p == 0 || p > self.boundary || used[p] {
                    return Err(CoverError::BadEndpoint(p, self.boundary));
                }
                used[p] = true;
            }
        }
        let unmatched = used[1..].iter().filter(|&&u| !u).count();
        if unmatched > 0 {
            return Err(CoverError::UnmatchedPoints(unmatched));
        }
        for (i, &(a, b)) in self.chords.iter().enumerate() {
            let (a, b) = (a.min(b), a.max(b));
            for &(c, d) in &self.chords[i + 1..] {
                let (c, d) = (c.min(d), c.max(d));
                let crossing = (a < c && c < b && b < d) || (c < a && a < d && d < b);
                if crossing {
                    return Err(CoverError::CrossingChords(a, b, c, d));
                }
            }
        }
        let gaps = self.boundary.max(1);
        for &(g, _) in &self.ovals {
            if g == 0 || g > gaps {
                return Err(CoverError::BadGap(g));
            }
        }
        Ok(())
    }

    /// The face containing gap `g`: the innermost chord whose span covers
    /// it, or `None` for the face touching the un-enclosed boundary run.
    fn face_of_gap(&self, g: usize) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for (i, &(a, b)) in self.chords.iter().enumerate() {
            let (a, b) = (a.min(b), a.max(b));
            if a <= g && g < b {
                let span = b - a;
                if best.map_or(true, |(s, _)| span < s) {
                    best = Some((span, i));
                }
            }
        }
        best.map(|(_, i)| i)
    }

    /// The rooted forest of the sphere obtained by doubling the disk along
    /// its boundary: chords become circles (the matching's laminar nesting
    /// is the region nesting), interior circles contribute two copies.
    pub fn doubled_forest(&self) -> Result<Vec<OvalTree>, CoverError> {
        self.validate()?;
        // Per-face interior circles, doubled.
        let mut face_ovals: Vec<Vec<OvalTree>> = vec![Vec::new(); self.chords.len()];
        let mut root_ovals: Vec<OvalTree> = Vec::new();
        for &(g, ref forest) in &self.ovals {
            let trees = parse_forest(forest)?;
            let target = match self.face_of_gap(g) {
                Some(i) => &mut face_ovals[i],
                None => &mut root_ovals,
            };
            target.extend(trees.iter().cloned());
            target.extend(trees);
        }
        // Laminar structure: direct children of each chord.
        let parent: Vec<Option<usize>> = (0..self.chords.len())
            .map(|i| {
                let (a, b) = norm(self.chords[i]);
                let mut best: Option<(usize, usize)> = None;
                for (j, &cd) in self.chords.iter().enumerate() {
                    let (c, d) = norm(cd);
                    if j != i && c <= a && b <= d {
                        let span = d - c;
                        if best.map_or(true, |(s, _)| span < s) {
                            best = Some((span, j));
                        }
                    }
                }
                best.map(|(_, j)| j)
            })
            .collect();
        fn build(
            i: usize,
            parent: &[Option<usize>],
            face_ovals: &[Vec<OvalTree>],
        ) -> OvalTree {
            let mut children: Vec<OvalTree> = (0..parent.len())
                .filter(|&j| parent[j] == Some(i))
                .map(|j| build(j, parent, face_ovals))
                .collect();
            children.extend(face_ovals[i].iter().cloned());
            OvalTree::with_children(children)
        }
        let mut forest: Vec<OvalTree> = (0..self.chords.len())
            .filter(|&i| parent[i].is_none())
            .map(|i| build(i, &parent, &face_ovals))
            .collect();
        forest.extend(root_ovals);
        Ok(forest)
    }
}

fn norm((a, b): (usize, usize)) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// A plane arrangement of the quartic branch locus and a curve: one disk
/// diagram per branch oval, plus the count of curve circles that stay
/// outside every branch oval (they bound no real point of the cover and
/// vanish in the lift).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlanePair {
    pub disks: Vec<DiskDiagram>,
    #[serde(default)]
    pub outside: usize,
    #[serde(default)]
    pub source: String,
}

/// Lift a plane pair through the branched double cover: one sphere per
/// branch oval, padded with empty spheres to the four components of a
/// maximal degree-2 real part.
pub fn dp2_lift(p: &PlanePair) -> Result<Scheme, CoverError> {
    if p.disks.len() > 4 {
        return Err(CoverError::TooManyOvals(p.disks.len()));
    }
    let mut spheres = Vec::new();
    for d in &p.disks {
        spheres.push(SphereArrangement::from_forest(&d.doubled_forest()?));
    }
    while spheres.len() < 4 {
        spheres.push(SphereArrangement::empty());
    }
    Ok(Scheme::new_dp2(spheres))
}

/// A cone arrangement of the cubic-section branch locus and a curve: one
/// disk per branch oval (with a positivity label used by refined lifts),
/// plus the curve trace in the region of the cone vertex.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConePair {
    pub ovals: Vec<DiskDiagram>,
    /// Positivity label per oval, parallel to `ovals`.
    #[serde(default)]
    pub positive: Vec<bool>,
    /// True when a curve component crosses the vertex region end to end;
    /// its lift is the pseudo-line.
    #[serde(default)]
    pub generatrix: bool,
    /// Closed curve circles inside the vertex region, as forest notation.
    #[serde(default)]
    pub v_circles: String,
    #[serde(default)]
    pub source: String,
}

/// Lift a cone pair through the branched double cover: the vertex region
/// doubles (branched at the vertex) to the `RP²` component, each branch
/// oval doubles to a sphere.
pub fn dp1_lift(p: &ConePair) -> Result<Scheme, CoverError> {
    if p.ovals.len() > 4 {
        return Err(CoverError::TooManyOvals(p.ovals.len()));
    }
    let (rp2, spheres) = lift_parts(p)?;
    Ok(Scheme::new_dp1(u8::from(p.generatrix), rp2, spheres))
}

/// Refined lift: the positivity labels split the four spheres into the
/// positive and negative pair.
pub fn dp1_lift_refined(p: &ConePair) -> Result<RefinedScheme, CoverError> {
    let pos_count = p.positive.iter().filter(|&&b| b).count();
    if p.ovals.len() != 4 || p.positive.len() != 4 || pos_count != 2 {
        return Err(CoverError::BadPositivity { pos: pos_count, total: p.ovals.len() });
    }
    let (rp2, spheres) = lift_parts(p)?;
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for (s, &is_pos) in spheres.into_iter().zip(&p.positive) {
        if is_pos {
            pos.push(s);
        } else {
            neg.push(s);
        }
    }
    Ok(RefinedScheme::new(
        u8::from(p.generatrix),
        rp2,
        [pos[0].clone(), pos[1].clone()],
        [neg[0].clone(), neg[1].clone()],
    ))
}

fn lift_parts(p: &ConePair) -> Result<(Vec<OvalTree>, Vec<SphereArrangement>), CoverError> {
    let mut rp2 = Vec::new();
    if !p.v_circles.is_empty() && p.v_circles != "0" {
        let trees = parse_forest(&p.v_circles)?;
        rp2.extend(trees.iter().cloned());
        rp2.extend(trees);
    }
    let mut spheres = Vec::new();
    for d in &p.ovals {
        spheres.push(SphereArrangement::from_forest(&d.doubled_forest()?));
    }
    while spheres.len() < 4 {
        spheres.push(SphereArrangement::empty());
    }
    Ok((rp2, spheres))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::{parse_dp1, parse_dp2, print_scheme};

    fn disk(boundary: usize, chords: &[(usize, usize)], ovals: &[(usize, &str)]) -> DiskDiagram {
        DiskDiagram {
            boundary,
            chords: chords.to_vec(),
            ovals: ovals.iter().map(|&(g, f)| (g, f.to_string())).collect(),
        }
    }

    #[test]
    fn line_through_two_branch_ovals() {
        // A line crossing two quartic ovals leaves one arc in each disk;
        // each arc doubles to a single circle on its sphere.
        let p = PlanePair {
            disks: vec![disk(2, &[(1, 2)], &[]), disk(2, &[(1, 2)], &[]), DiskDiagram::empty(), DiskDiagram::empty()],
            outside: 0,
            source: String::new(),
        };
        let s = dp2_lift(&p).expect("lift");
        assert_eq!(s.code(), parse_dp2("1:1:0:0", 4).expect("parse").code());
    }

    #[test]
    fn empty_curve_lifts_to_empty_scheme() {
        let p = PlanePair { disks: vec![], outside: 0, source: String::new() };
        let s = dp2_lift(&p).expect("lift");
        assert_eq!(print_scheme(&s), "0:0:0:0");
    }

    #[test]
    fn interior_circle_doubles() {
        // One circle strictly inside one branch oval: two non-nested
        // circles on the lifted sphere.
        let p = PlanePair {
            disks: vec![disk(0, &[], &[(1, "1")])],
            outside: 3,
            source: String::new(),
        };
        let s = dp2_lift(&p).expect("lift");
        assert_eq!(s.code(), parse_dp2("2:0:0:0", 4).expect("parse").code());
    }

    #[test]
    fn nested_chords_nest_on_the_sphere() {
        // Two nested arcs double to a depth-2 nest; a circle in the
        // innermost face doubles inside it.
        let d = disk(4, &[(1, 4), (2, 3)], &[(2, "1")]);
        let forest = d.doubled_forest().expect("forest");
        let s = SphereArrangement::from_forest(&forest);
        let want = parse_dp2("<<2>>:0:0:0", 4).expect("parse");
        assert_eq!(s.code(), want.spheres()[0].code());
    }

    #[test]
    fn crossing_chords_rejected() {
        let d = disk(4, &[(1, 3), (2, 4)], &[]);
        assert!(matches!(d.doubled_forest(), Err(CoverError::CrossingChords(..))));
    }

    #[test]
    fn generatrix_lifts_to_pseudo_line() {
        let p = ConePair {
            ovals: vec![DiskDiagram::empty(); 4],
            positive: vec![],
            generatrix: true,
            v_circles: String::new(),
            source: String::new(),
        };
        let s = dp1_lift(&p).expect("lift");
        assert_eq!(s.code(), parse_dp1("J|0:0:0:0", 4).expect("parse").code());
    }

    #[test]
    fn refined_lift_keeps_positivity_sides() {
        // A circle inside a positive oval refines to the positive pair.
        let mut ovals = vec![DiskDiagram::empty(); 4];
        ovals[0] = disk(0, &[], &[(1, "1")]);
        let p = ConePair {
            ovals,
            positive: vec![true, true, false, false],
            generatrix: false,
            v_circles: String::new(),
            source: String::new(),
        };
        let r = dp1_lift_refined(&p).expect("lift");
        assert_eq!(r.pos()[0].ovals() + r.pos()[1].ovals(), 2);
        assert_eq!(r.neg()[0].ovals() + r.neg()[1].ovals(), 0);
        // Same circle inside a negative oval is a different refined type.
        let mut ovals2 = vec![DiskDiagram::empty(); 4];
        ovals2[2] = disk(0, &[], &[(1, "1")]);
        let p2 = ConePair { ovals: ovals2, ..p.clone() };
        let r2 = dp1_lift_refined(&p2).expect("lift");
        assert_ne!(r.code(), r2.code());
        assert_eq!(r.to_plain().code(), r2.to_plain().code());
    }
}
