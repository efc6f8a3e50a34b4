//! Randomized cross-checks of the gluing and double-cover constructions
//! against independent straight-line reimplementations.

use ovalis_core::cover::DiskDiagram;
use ovalis_core::glue::{glue, GlueChoice, MarkedHalf, MarkedPart};
use ovalis_core::scheme::{OvalTree, SphereArrangement};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// Random non-crossing perfect matching of points `lo..lo+len` (1-based).
fn random_matching(rng: &mut ChaCha8Rng, lo: usize, len: usize, out: &mut Vec<(usize, usize)>) {
    if len == 0 {
        return;
    }
    // Point `lo` pairs with a point at odd distance; both sides split evenly.
    let t = rng.gen_range(0..len / 2);
    let partner = lo + 2 * t + 1;
    out.push((lo, partner));
    random_matching(rng, lo + 1, 2 * t, out);
    random_matching(rng, partner + 1, len - 2 * t - 2, out);
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let r = self.find(self.0[x]);
            self.0[x] = r;
            r
        } else {
            x
        }
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
    fn classes(&mut self, n: usize) -> usize {
        let mut reps: Vec<usize> = (0..n).map(|i| self.find(i)).collect();
        reps.sort_unstable();
        reps.dedup();
        reps.len()
    }
}

/// Independent circle count for one glued sphere: arcs of both matchings
/// join boundary points into circles; `reflect` reverses the second side.
fn circle_count(w: &[(usize, usize)], h: &[(usize, usize)], n: usize, reflect: bool) -> usize {
    let r = |p: usize| if reflect { n - p + 1 } else { p };
    let mut uf = UnionFind::new(n + 1);
    for &(a, b) in w {
        uf.union(a, b);
    }
    for &(a, b) in h {
        uf.union(r(a), r(b));
    }
    uf.classes(n + 1) - 1
}

#[test]
fn glued_circle_counts_match_independent_cycle_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x91e);
    for trial in 0..1200 {
        let m = rng.gen_range(1..=8usize);
        let n = 2 * m;
        let mut mats: Vec<Vec<(usize, usize)>> = Vec::new();
        for _ in 0..4 {
            let mut mat = Vec::new();
            random_matching(&mut rng, 1, n, &mut mat);
            mat.shuffle(&mut rng);
            mats.push(mat);
        }
        let reflect = trial % 2 == 1;
        let s = MarkedHalf {
            spheres: vec![],
            marked: MarkedPart::TwoDisks {
                boundary: n,
                arcs1: mats[0].clone(),
                arcs2: mats[1].clone(),
                ovals1: vec![],
                ovals2: vec![],
            },
            source: String::new(),
        };
        let t = MarkedHalf {
            spheres: vec![],
            marked: MarkedPart::TwoDisks {
                boundary: n,
                arcs1: mats[2].clone(),
                arcs2: mats[3].clone(),
                ovals1: vec![],
                ovals2: vec![],
            },
            source: String::new(),
        };
        let scheme = glue(&s, &t, GlueChoice { swap: false, reflect }).expect("glue");
        let want = circle_count(&mats[0], &mats[2], n, reflect)
            + circle_count(&mats[1], &mats[3], n, reflect);
        assert_eq!(
            scheme.components(),
            want,
            "trial {trial}: {:?} vs {:?} / {:?} vs {:?} (reflect {reflect})",
            mats[0],
            mats[2],
            mats[1],
            mats[3]
        );
    }
}

/// Independent doubling oracle: reconstruct the doubled sphere's forest by
/// a stack walk over the boundary (parent of a chord is the chord open
/// beneath it; the face of a gap is the chord on top of the stack).
fn doubled_forest_by_stack(d: &DiskDiagram) -> Vec<OvalTree> {
    let n = d.boundary;
    let mut open_at = vec![usize::MAX; n + 1];
    let mut close_at = vec![usize::MAX; n + 1];
    for (i, &(a, b)) in d.chords.iter().enumerate() {
        let (a, b) = (a.min(b), a.max(b));
        open_at[a] = i;
        close_at[b] = i;
    }
    let mut stack: Vec<usize> = Vec::new();
    let mut parent = vec![None; d.chords.len()];
    let mut face_of_gap = vec![None; n.max(1) + 1];
    for p in 1..=n {
        if open_at[p] != usize::MAX {
            parent[open_at[p]] = stack.last().copied();
            stack.push(open_at[p]);
        } else {
            assert_eq!(stack.pop(), Some(close_at[p]));
        }
        face_of_gap[p] = stack.last().copied();
    }
    // Gap n wraps around to the root face; with no points at all the single
    // gap is also the root face.
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); d.chords.len()];
    let mut roots = Vec::new();
    for (i, &p) in parent.iter().enumerate() {
        match p {
            Some(q) => children[q].push(i),
            None => roots.push(i),
        }
    }
    let mut face_ovals: Vec<Vec<OvalTree>> = vec![Vec::new(); d.chords.len() + 1];
    for (g, text) in &d.ovals {
        let forest = ovalis_core::notation::parse_forest(text).expect("fixture forest");
        let slot = match face_of_gap[*g] {
            Some(c) => c + 1,
            None => 0,
        };
        // Doubling duplicates everything away from the branch boundary.
        face_ovals[slot].extend(forest.iter().cloned());
        face_ovals[slot].extend(forest.iter().cloned());
    }
    fn build(c: usize, children: &[Vec<usize>], face_ovals: &[Vec<OvalTree>]) -> OvalTree {
        let mut kids: Vec<OvalTree> =
            children[c].iter().map(|&k| build(k, children, face_ovals)).collect();
        kids.extend(face_ovals[c + 1].iter().cloned());
        OvalTree::with_children(kids)
    }
    let mut forest: Vec<OvalTree> =
        roots.iter().map(|&r| build(r, &children, &face_ovals)).collect();
    forest.extend(face_ovals[0].iter().cloned());
    forest
}

#[test]
fn doubled_disks_match_independent_stack_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let forests = ["1", "2", "<1>", "1+<1>", "<2>"];
    for trial in 0..600 {
        let m = rng.gen_range(0..=7usize);
        let n = 2 * m;
        let mut chords = Vec::new();
        random_matching(&mut rng, 1, n, &mut chords);
        chords.shuffle(&mut rng);
        let mut ovals = Vec::new();
        for _ in 0..rng.gen_range(0..=2) {
            let g = rng.gen_range(1..=n.max(1));
            ovals.push((g, forests.choose(&mut rng).unwrap().to_string()));
        }
        let d = DiskDiagram { boundary: n, chords, ovals };
        let got = SphereArrangement::from_forest(&d.doubled_forest().expect("double"));
        let want = SphereArrangement::from_forest(&doubled_forest_by_stack(&d));
        assert_eq!(got.code(), want.code(), "trial {trial}: {d:?}");
    }
}
