//! Prohibition criteria for real schemes on degree-1 and degree-2 del Pezzo
//! surfaces, with replayable witnesses.
//!
//! Every criterion returns `Admissible`, `Prohibited` (with a witness that
//! records the violated inequality and the nest selections realizing it) or
//! `NotApplicable` when its preconditions fail.  The per-surface verdict
//! aggregates the criteria that apply for the given number of spheres.

use crate::nest::{
    deepest_nest, max_disjoint_selection, Nest, Rp2Poset, SelectionRule,
};
use crate::notation::parse_dp2;
use crate::scheme::{Scheme, SurfaceKind};
use serde::Serialize;

/// Outcome of a single criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum Verdict {
    Admissible,
    Prohibited { witness: Witness },
    NotApplicable,
}

impl Verdict {
    pub fn is_prohibited(&self) -> bool {
        matches!(self, Verdict::Prohibited { .. })
    }
}

/// Replayable evidence for a prohibition: the violated inequality together
/// with the selections that realize its left side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub criterion: &'static str,
    /// Left-hand side of the violated inequality.
    pub lhs: i64,
    /// Right-hand side (the bound).
    pub rhs: i64,
    /// Rendered inequality for humans, e.g. `"6 > 5"`.
    pub inequality: String,
    /// Sphere indices (into the scheme's canonical sphere order) carrying
    /// the nest selections, parallel to `selections`.
    pub spheres: Vec<usize>,
    /// Nest selections as lists of region-tree edge indices per nest.
    pub selections: Vec<Vec<Vec<usize>>>,
}

impl Witness {
    fn new(criterion: &'static str, lhs: i64, rhs: i64) -> Self {
        Witness {
            criterion,
            lhs,
            rhs,
            inequality: format!("{lhs} > {rhs}"),
            spheres: Vec::new(),
            selections: Vec::new(),
        }
    }

    fn with_selection(mut self, sphere: usize, sel: &[Nest]) -> Self {
        self.spheres.push(sphere);
        self.selections.push(sel.iter().map(|n| n.edges.clone()).collect());
        self
    }
}

/// Tunable interpretation knobs.  The default configuration is the one the
/// published counts are verified against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ObstructionConfig {
    /// Whether the one-sphere three-nest bound requires the selection to be
    /// disjoint in the end-disk sense (true) or merely oval-disjoint.
    pub one_sphere_lemma_disjoint: bool,
}

impl Default for ObstructionConfig {
    fn default() -> Self {
        ObstructionConfig { one_sphere_lemma_disjoint: true }
    }
}

fn prohibited_if(cond: bool, w: Witness) -> Verdict {
    if cond {
        Verdict::Prohibited { witness: w }
    } else {
        Verdict::Admissible
    }
}

// ---------------------------------------------------------------------------
// Degree 2 criteria
// ---------------------------------------------------------------------------

/// Component-count bound: a degree-`d` section class cannot carry more than
/// `d(d-1) + 2` ovals.
pub fn dp2_harnack(s: &Scheme, d: i64) -> Verdict {
    let l = s.components() as i64;
    let bound = d * (d - 1) + 2;
    prohibited_if(l > bound, Witness::new("dp2_harnack", l, bound))
}

/// Maximum depth sums of disjoint r-nest selections per sphere, for odd
/// r ≥ 3, with witnesses.
fn odd_selections(s: &Scheme, rule: SelectionRule) -> Vec<Vec<(usize, usize, Vec<Nest>)>> {
    s.spheres()
        .iter()
        .map(|a| {
            let mut per = Vec::new();
            let mut r = 3;
            while r <= a.ovals() {
                if let Some((sum, sel)) = max_disjoint_selection(a, r, rule) {
                    per.push((r, sum, sel));
                }
                r += 2;
            }
            per
        })
        .collect()
}

/// Nest-depth bounds on disjoint selections forced by interpolating curves
/// of low class (`t` = number of occupied spheres):
///
/// * across two distinct spheres, selections of odd sizes `r1, r2 ≥ 3`
///   have combined depth at most `d(r1+r2)/2 - (t - 2)`;
/// * `r` disjoint nests with `r` odd ≥ 3 on one sphere, together with a
///   nest on some other sphere, have total depth (on the first sphere) at
///   most `d(r+1)/2 - (t - 1)`;
/// * two disjoint nests on one sphere (equivalently one nest split in two)
///   have combined depth at most `2d - 1` when that sphere is the only one
///   meeting the curve, and `2d - 2` otherwise.
pub fn dp2_welschinger_nests(s: &Scheme, d: i64) -> Verdict {
    let t = s.occupied_spheres() as i64;
    let per = odd_selections(s, SelectionRule::PairwiseEndDisk);
    // A conic component through both end disks of a nest pair crosses every
    // oval of the pair, plus one interpolation point on each further
    // occupied sphere: the depth sum is capped one lower as soon as a
    // second sphere carries ovals.
    let pair_bound = if t >= 2 { 2 * d - 2 } else { 2 * d - 1 };
    for (i, a) in s.spheres().iter().enumerate() {
        if let Some((sum, sel)) = max_disjoint_selection(a, 2, SelectionRule::PairwiseEndDisk) {
            if sum as i64 > pair_bound {
                let w = Witness::new("dp2_welschinger_nests", sum as i64, pair_bound)
                    .with_selection(i, &sel);
                return Verdict::Prohibited { witness: w };
            }
        }
    }
    // One sphere carrying the odd selection, one interpolation point on a
    // second sphere (which need not meet the curve).
    for (i, sels) in per.iter().enumerate() {
        for (r1, sum, sel) in sels {
            let sp = (*r1 as i64 + 1) / 2;
            let bound = d * sp - (t - 1);
            if *sum as i64 > bound {
                let w = Witness::new("dp2_welschinger_nests", *sum as i64, bound)
                    .with_selection(i, sel);
                return Verdict::Prohibited { witness: w };
            }
        }
    }
    // Odd selections on two distinct spheres.
    for i in 0..s.k() {
        for j in (i + 1)..s.k() {
            for (r1, sum1, sel1) in &per[i] {
                for (r2, sum2, sel2) in &per[j] {
                    let sp = (*r1 + *r2) as i64 / 2;
                    let bound = d * sp - (t - 2);
                    let total = (*sum1 + *sum2) as i64;
                    if total > bound {
                        let w = Witness::new("dp2_welschinger_nests", total, bound)
                            .with_selection(i, sel1)
                            .with_selection(j, sel2);
                        return Verdict::Prohibited { witness: w };
                    }
                }
            }
        }
    }
    Verdict::Admissible
}

/// Two nests on two distinct spheres of a four-sphere surface:
/// `j1 + j2 ≤ 2d - (t - 2)`.
pub fn dp2_two_nests(s: &Scheme, d: i64) -> Verdict {
    if s.k() != 4 {
        return Verdict::NotApplicable;
    }
    let t = s.occupied_spheres() as i64;
    let bound = 2 * d - (t - 2);
    for i in 0..s.k() {
        for j in (i + 1)..s.k() {
            let (d1, d2) = (deepest_nest(&s.spheres()[i]), deepest_nest(&s.spheres()[j]));
            if d1 == 0 || d2 == 0 {
                continue;
            }
            if (d1 + d2) as i64 > bound {
                let wit_i = max_disjoint_selection(&s.spheres()[i], 1, SelectionRule::EndDisk)
                    .map(|(_, sel)| sel)
                    .unwrap_or_default();
                let wit_j = max_disjoint_selection(&s.spheres()[j], 1, SelectionRule::EndDisk)
                    .map(|(_, sel)| sel)
                    .unwrap_or_default();
                let w = Witness::new("dp2_two_nests", (d1 + d2) as i64, bound)
                    .with_selection(i, &wit_i)
                    .with_selection(j, &wit_j);
                return Verdict::Prohibited { witness: w };
            }
        }
    }
    Verdict::Admissible
}

/// The single sporadic prohibition at `k = 4`, `d = 3`: four disjoint
/// depth-2 nests on one sphere, the other three spheres empty.
pub fn dp2_forbidden_quadruple(s: &Scheme, d: i64) -> Verdict {
    if s.k() != 4 || d != 3 {
        return Verdict::NotApplicable;
    }
    let target = parse_dp2("<1>+<1>+<1>+<1>:0:0:0", 4).unwrap();
    prohibited_if(s.code() == target.code(), {
        let mut w = Witness::new("dp2_forbidden_quadruple", 8, 8);
        w.inequality = "sporadic: <1>+<1>+<1>+<1> on one sphere".to_string();
        w
    })
}

/// One-sphere bound (`k = 1`): three disjoint nests have total depth ≤ 2d.
pub fn dp2_one_sphere_nests(s: &Scheme, d: i64, cfg: &ObstructionConfig) -> Verdict {
    if s.k() != 1 {
        return Verdict::NotApplicable;
    }
    let rule = if cfg.one_sphere_lemma_disjoint {
        SelectionRule::PairwiseEndDisk
    } else {
        SelectionRule::EdgeDisjoint
    };
    let Some((sum, sel)) = max_disjoint_selection(&s.spheres()[0], 3, rule) else {
        return Verdict::Admissible;
    };
    let bound = 2 * d;
    prohibited_if(
        sum as i64 > bound,
        Witness::new("dp2_one_sphere_nests", sum as i64, bound).with_selection(0, &sel),
    )
}

/// Euler-characteristic estimate for maximal non-nested schemes carried by
/// a single sphere of an even class: each half of the complement of the
/// curve in the covering surface must satisfy
/// `-14 - d(3d-2)/2 ≤ 2χ ≤ 16 + d(3d-2)/2`.
pub fn dp2_petrovsky(s: &Scheme, d: i64) -> Verdict {
    let l = s.components() as i64;
    let applicable = d % 2 == 0
        && s.k() == 4
        && s.occupied_spheres() <= 1
        && l == d * (d - 1) + 2
        && s.spheres().iter().all(|a| {
            a.is_empty()
                || a.rootings()
                    .iter()
                    .any(|f| f.iter().all(|t| t.children.is_empty()))
        });
    if !applicable {
        return Verdict::NotApplicable;
    }
    let lo = -14 - d * (3 * d - 2) / 2;
    let hi = 16 + d * (3 * d - 2) / 2;
    // The curve cuts its sphere into halves of Euler characteristic l and
    // 2 - l (in some order); each empty sphere contributes 2 to one half.
    let empties = (s.k() - s.occupied_spheres()) as i64;
    let mut some_ok = false;
    let mut worst: Option<(i64, i64)> = None;
    for flip in [false, true] {
        let (a, b) = if flip { (2 - l, l) } else { (l, 2 - l) };
        for e in 0..=empties {
            let (c1, c2) = (2 * (a + 2 * e), 2 * (b + 2 * (empties - e)));
            if (lo..=hi).contains(&c1) && (lo..=hi).contains(&c2) {
                some_ok = true;
            } else {
                let bad = if !(lo..=hi).contains(&c1) { c1 } else { c2 };
                if worst.is_none() {
                    worst = Some((bad, if bad > hi { hi } else { lo }));
                }
            }
        }
    }
    if some_ok {
        Verdict::Admissible
    } else {
        let (lhs, rhs) = worst.unwrap();
        let mut w = Witness::new("dp2_petrovsky", lhs, rhs);
        w.inequality = if lhs > rhs {
            format!("{lhs} > {rhs}")
        } else {
            format!("{lhs} < {rhs}")
        };
        Verdict::Prohibited { witness: w }
    }
}

/// Aggregate verdict for a degree-2 scheme; returns the per-criterion
/// results alongside the combined verdict.
pub fn dp2_verdict(s: &Scheme, d: i64, cfg: &ObstructionConfig) -> (Verdict, Vec<(&'static str, Verdict)>) {
    assert_eq!(s.kind(), SurfaceKind::DelPezzo2);
    let mut checks: Vec<(&'static str, Verdict)> = vec![("dp2_harnack", dp2_harnack(s, d))];
    if s.k() == 1 {
        checks.push(("dp2_one_sphere_nests", dp2_one_sphere_nests(s, d, cfg)));
    } else {
        checks.push(("dp2_welschinger_nests", dp2_welschinger_nests(s, d)));
    }
    if s.k() == 4 {
        checks.push(("dp2_two_nests", dp2_two_nests(s, d)));
        checks.push(("dp2_forbidden_quadruple", dp2_forbidden_quadruple(s, d)));
        checks.push(("dp2_petrovsky", dp2_petrovsky(s, d)));
    }
    let verdict = checks
        .iter()
        .find(|(_, v)| v.is_prohibited())
        .map(|(_, v)| v.clone())
        .unwrap_or(Verdict::Admissible);
    (verdict, checks)
}

// ---------------------------------------------------------------------------
// Degree 1 criteria
// ---------------------------------------------------------------------------

/// Pseudo-line parity: a degree-`d` class carries a pseudo-line iff `d` is odd.
pub fn dp1_parity(s: &Scheme, d: i64) -> Verdict {
    let j = s.pseudo_lines() as i64;
    prohibited_if(j != d.rem_euclid(2), {
        let mut w = Witness::new("dp1_parity", j, d.rem_euclid(2));
        w.inequality = format!("pseudo-lines {} ≢ {} (mod 2)", j, d);
        w
    })
}

/// Component-count bounds: `ε ≤ l ≤ d(d-1)/2 + 2` with `ε = d mod 2`.
pub fn dp1_bounds(s: &Scheme, d: i64) -> Verdict {
    let l = s.components() as i64;
    let eps = d.rem_euclid(2);
    let hi = d * (d - 1) / 2 + 2;
    if l > hi {
        return Verdict::Prohibited { witness: Witness::new("dp1_bounds", l, hi) };
    }
    if l < eps {
        let mut w = Witness::new("dp1_bounds", l, eps);
        w.inequality = format!("{l} < {eps}");
        return Verdict::Prohibited { witness: w };
    }
    Verdict::Admissible
}

/// Nest obstruction for `k = 4`, `d = 2s' + ε ≥ 4`: for two disjoint nests
/// of depths `i1 ≤ i2` on `RP²` and a nest of depth `i3` on a sphere,
/// `i1 + i2 ≤ 3s' + ε - t` and `i2 + i3 ≤ 3s' + ε - (t - 1)`
/// (`t` = occupied spheres).
pub fn dp1_nest_obstruction(s: &Scheme, d: i64) -> Verdict {
    if s.k() != 4 || d < 4 {
        return Verdict::NotApplicable;
    }
    let eps = d.rem_euclid(2);
    let sp = (d - eps) / 2;
    let t = s.occupied_spheres() as i64;
    let poset = Rp2Poset::new(s.rp2_forest());
    let chains = poset.chains();
    // Deepest disjoint pair (maximizing the sum) and deepest i2 over pairs.
    let mut best_pair: Option<(usize, usize)> = None; // (i1+i2, max depth)
    let mut best_i2 = 0usize;
    for (a, ca) in chains.iter().enumerate() {
        for cb in chains.iter().skip(a + 1) {
            if poset.chains_disjoint(ca, cb) {
                let (la, lb) = (ca.len(), cb.len());
                let sum = la + lb;
                if best_pair.map_or(true, |(b, _)| sum > b) {
                    best_pair = Some((sum, la.max(lb)));
                }
                best_i2 = best_i2.max(la.max(lb));
            }
        }
    }
    let Some((pair_sum, _)) = best_pair else {
        return Verdict::NotApplicable;
    };
    let i3 = s.spheres().iter().map(deepest_nest).max().unwrap_or(0);
    if i3 == 0 {
        return Verdict::NotApplicable;
    }
    let bound1 = 3 * sp + eps - t;
    let bound2 = 3 * sp + eps - (t - 1);
    if pair_sum as i64 > bound1 {
        return Verdict::Prohibited {
            witness: Witness::new("dp1_nest_obstruction", pair_sum as i64, bound1),
        };
    }
    let mixed = (best_i2 + i3) as i64;
    if mixed > bound2 {
        return Verdict::Prohibited {
            witness: Witness::new("dp1_nest_obstruction", mixed, bound2),
        };
    }
    Verdict::Admissible
}

/// Aggregate verdict for a plain degree-1 scheme.
pub fn dp1_verdict(s: &Scheme, d: i64) -> (Verdict, Vec<(&'static str, Verdict)>) {
    assert_eq!(s.kind(), SurfaceKind::DelPezzo1);
    let mut checks: Vec<(&'static str, Verdict)> =
        vec![("dp1_parity", dp1_parity(s, d)), ("dp1_bounds", dp1_bounds(s, d))];
    if d >= 4 && s.k() == 4 {
        checks.push(("dp1_nest_obstruction", dp1_nest_obstruction(s, d)));
    }
    let verdict = checks
        .iter()
        .find(|(_, v)| v.is_prohibited())
        .map(|(_, v)| v.clone())
        .unwrap_or(Verdict::Admissible);
    (verdict, checks)
}

/// Refined schemes are judged through their underlying plain scheme.
pub fn dp1_refined_verdict(r: &crate::scheme::RefinedScheme, d: i64) -> (Verdict, Vec<(&'static str, Verdict)>) {
    dp1_verdict(&r.to_plain(), d)
}

/// Count admissible degree-2 schemes for each k at the given degree and oval
/// count (used by the acceptance gate and the CLI).
pub fn dp2_admissible_count(k: usize, d: i64, l: usize, cfg: &ObstructionConfig) -> Result<usize, crate::enumerate::EnumError> {
    Ok(crate::enumerate::dp2_schemes(k, l)?
        .iter()
        .filter(|s| !dp2_verdict(s, d, cfg).0.is_prohibited())
        .count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::{parse_dp1, parse_dp2};

    #[test]
    fn harnack_bound() {
        let s = parse_dp2("9:0:0:0", 4).unwrap();
        assert!(dp2_harnack(&s, 3).is_prohibited());
        let s = parse_dp2("8:0:0:0", 4).unwrap();
        assert!(!dp2_harnack(&s, 3).is_prohibited());
    }

    #[test]
    fn welschinger_examples() {
        let s = parse_dp2("<1>+<1>+<1>:2:0:0", 4).unwrap();
        assert!(dp2_welschinger_nests(&s, 3).is_prohibited()); // 6 > 5
        let s = parse_dp2("3+<1>+<1>:1:0:0", 4).unwrap();
        assert!(!dp2_welschinger_nests(&s, 3).is_prohibited()); // 5 ≤ 5
        let s = parse_dp2("<<1>>+<1>+<1>:<1>+<1>+<1>:0:0", 4).unwrap();
        assert!(dp2_welschinger_nests(&s, 4).is_prohibited()); // 13 > 12
    }

    #[test]
    fn same_sphere_pair_bound() {
        // A depth-5 nest next to a second occupied sphere violates 2d - 2.
        let s = parse_dp2("1+<<<1>>>:3", 2).unwrap();
        assert!(dp2_welschinger_nests(&s, 3).is_prohibited()); // 5 > 4
        let s = parse_dp2("1+<<<1>>>:1+<1>:0", 3).unwrap();
        assert!(dp2_welschinger_nests(&s, 3).is_prohibited()); // 5 > 4
        // On a lone occupied sphere the bound relaxes to 2d - 1.
        let s = parse_dp2("1+<<<4>>>:0", 2).unwrap();
        assert!(!dp2_welschinger_nests(&s, 3).is_prohibited()); // 5 ≤ 5
        // Two depth-4 nests on distinct spheres are out of this bound's reach.
        let s = parse_dp2("<1>+<1>:<1>+<1>", 2).unwrap();
        assert!(!dp2_welschinger_nests(&s, 3).is_prohibited()); // 4 ≤ 4 per sphere
    }

    #[test]
    fn two_nests_examples() {
        let s = parse_dp2("<<<1>>>:<<<1>>>:0:0", 4).unwrap();
        assert!(dp2_two_nests(&s, 3).is_prohibited()); // 8 > 6
        let s = parse_dp2("<<<1>>>:4:0:0", 4).unwrap();
        assert!(!dp2_two_nests(&s, 3).is_prohibited()); // 5 ≤ 6
    }

    #[test]
    fn forbidden_quadruple_only_matches_exact_scheme() {
        let s = parse_dp2("<1>+<1>+<1>+<1>:0:0:0", 4).unwrap();
        assert!(dp2_forbidden_quadruple(&s, 3).is_prohibited());
        let s = parse_dp2("<1>+<1>+<1>+<1>:0:0", 3).unwrap();
        assert_eq!(dp2_forbidden_quadruple(&s, 3), Verdict::NotApplicable);
        let s = parse_dp2("1+<1>+<1>+<1>:0:0:0", 4).unwrap();
        assert!(!dp2_forbidden_quadruple(&s, 3).is_prohibited());
    }

    #[test]
    fn one_sphere_examples() {
        let cfg = ObstructionConfig::default();
        let s = parse_dp2("<<1>>+<<1>>+<1>", 1).unwrap();
        assert!(dp2_one_sphere_nests(&s, 3, &cfg).is_prohibited()); // 8 > 6
        let s = parse_dp2("8", 1).unwrap();
        assert!(!dp2_one_sphere_nests(&s, 3, &cfg).is_prohibited());
        let s = parse_dp2("<1>+<1>+<1>+<1>", 1).unwrap();
        assert!(!dp2_one_sphere_nests(&s, 3, &cfg).is_prohibited()); // 6 ≤ 6
    }

    #[test]
    fn petrovsky_examples() {
        let s = parse_dp2("58:0:0:0", 4);
        // l = 58 exceeds the generation cap but parsing is fine.
        let s = s.unwrap();
        assert!(dp2_petrovsky(&s, 8).is_prohibited()); // 116 > 104
        let s = parse_dp2("32:0:0:0", 4).unwrap();
        assert!(!dp2_petrovsky(&s, 6).is_prohibited()); // 64 ≤ 64, -60 ≥ -62
        let s = parse_dp2("8:0:0:0", 4).unwrap();
        assert_eq!(dp2_petrovsky(&s, 3), Verdict::NotApplicable); // odd degree
    }

    #[test]
    fn dp1_parity_and_bounds() {
        let s = parse_dp1("J|0:0:0:0", 4).unwrap();
        assert!(dp1_parity(&s, 2).is_prohibited());
        assert!(!dp1_parity(&s, 3).is_prohibited());
        let s = parse_dp1("1|0:0:0:0", 4).unwrap();
        assert!(dp1_parity(&s, 3).is_prohibited()); // no pseudo-line, odd degree
        let s = parse_dp1("J+2|1:1:0:0", 4).unwrap(); // l = 5
        assert!(!dp1_bounds(&s, 3).is_prohibited()); // 5 ≤ 5
        let s = parse_dp1("J+3|1:1:0:0", 4).unwrap(); // l = 6
        assert!(dp1_bounds(&s, 3).is_prohibited());
    }

    #[test]
    fn dp1_nest_examples() {
        // Two depth-2 nests on RP², three occupied spheres, d = 4: 4 > 3.
        let s = parse_dp1("<1>+<1>|1:1:1:0", 4).unwrap();
        assert!(dp1_nest_obstruction(&s, 4).is_prohibited());
        // Depths (1,3) + sphere nest of depth 2, t = 3: 5 > 4 (mixed bound).
        let s = parse_dp1("1+<<1>>|<1>:1:1:0", 4).unwrap();
        assert!(dp1_nest_obstruction(&s, 4).is_prohibited());
        // Same with t = 2: 5 ≤ 5 and 4 ≤ 4.
        let s = parse_dp1("1+<<1>>|<1>:1:0:0", 4).unwrap();
        assert!(!dp1_nest_obstruction(&s, 4).is_prohibited());
        // No sphere nest: not applicable.
        let s = parse_dp1("1+<<1>>|0:0:0:0", 4).unwrap();
        assert_eq!(dp1_nest_obstruction(&s, 4), Verdict::NotApplicable);
    }

    #[test]
    fn dp1_enumeration_example() {
        // Degree 1, k = 4: exactly three admissible plain schemes.
        let mut count = 0;
        for l in 0..=2usize {
            for s in crate::enumerate::dp1_schemes(4, l).unwrap() {
                if !dp1_verdict(&s, 1).0.is_prohibited() {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 3);
    }
}
