//! Core scheme model: oval trees, sphere arrangements up to ambient
//! homeomorphism, and full (refined) real schemes.
//!
//! An arrangement of `l` disjoint circles on `S²` cuts the sphere into
//! `l + 1` regions whose adjacency structure is a tree (the *region tree*)
//! with one edge per circle.  Ambient homeomorphisms of the sphere can move
//! any region outside, so two arrangements are equivalent iff their region
//! trees are isomorphic as *unrooted* trees.  On `RP²` the complement of the
//! ovals has a distinguished non-orientable region, so arrangements there
//! are rooted forests of ovals.
//!
//! All identity questions go through canonical codes (AHU parenthesis
//! strings, rooted at the tree centroid for the unrooted case); display
//! strings are never used for equality.

use std::cmp::Reverse;
use std::collections::HashSet;

/// A rooted tree of ovals: the node is an oval, children are the ovals
/// immediately inside it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OvalTree {
    pub children: Vec<OvalTree>,
}

impl OvalTree {
    /// A single empty oval.
    pub fn leaf() -> Self {
        OvalTree { children: Vec::new() }
    }

    /// An oval with the given contents.
    pub fn with_children(children: Vec<OvalTree>) -> Self {
        OvalTree { children }
    }

    /// Number of ovals in this tree (the node itself plus everything inside).
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(|c| c.size()).sum::<usize>()
    }

    /// Canonical AHU parenthesis code of the rooted tree.
    pub fn code(&self) -> String {
        format!("({})", forest_code(&self.children))
    }
}

/// Canonical code of a rooted forest: concatenation of the sorted tree codes.
pub fn forest_code(forest: &[OvalTree]) -> String {
    let mut codes: Vec<String> = forest.iter().map(|t| t.code()).collect();
    codes.sort();
    codes.concat()
}

/// Sort a forest into canonical order (recursively, children first).
pub fn canonical_forest(forest: &[OvalTree]) -> Vec<OvalTree> {
    let mut out: Vec<OvalTree> = forest
        .iter()
        .map(|t| OvalTree::with_children(canonical_forest(&t.children)))
        .collect();
    out.sort_by_key(|t| t.code());
    out
}

/// Total oval count of a forest.
pub fn forest_size(forest: &[OvalTree]) -> usize {
    forest.iter().map(|t| t.size()).sum()
}

/// Adjacency representation of the region tree of a sphere arrangement.
///
/// Vertices are the regions of `S² ∖ (ovals)`, edges are the ovals.  Vertex 0
/// is the base region of whatever rooting produced the tree.
#[derive(Clone, Debug)]
pub struct RegionTree {
    pub adj: Vec<Vec<usize>>,
}

impl RegionTree {
    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    /// Edges as ordered pairs `(min, max)`, one per oval.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, nbrs) in self.adj.iter().enumerate() {
            for &v in nbrs {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Build the region tree of a forest of ovals; region 0 is the region
    /// the forest is rooted at.
    pub fn from_forest(forest: &[OvalTree]) -> Self {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new()];
        fn add(adj: &mut Vec<Vec<usize>>, parent: usize, tree: &OvalTree) {
            let v = adj.len();
            adj.push(Vec::new());
            adj[parent].push(v);
            adj[v].push(parent);
            for c in &tree.children {
                add(adj, v, c);
            }
        }
        for t in forest {
            add(&mut adj, 0, t);
        }
        RegionTree { adj }
    }

    /// Read off the oval forest obtained by rooting at region `root`.
    pub fn forest_at(&self, root: usize) -> Vec<OvalTree> {
        fn build(rt: &RegionTree, v: usize, parent: usize) -> Vec<OvalTree> {
            rt.adj[v]
                .iter()
                .filter(|&&w| w != parent)
                .map(|&w| OvalTree::with_children(build(rt, w, v)))
                .collect()
        }
        canonical_forest(&build(self, root, usize::MAX))
    }

    /// Centroid vertex (or the two centroids) of the tree.
    pub fn centroids(&self) -> Vec<usize> {
        let n = self.adj.len();
        if n == 1 {
            return vec![0];
        }
        let mut sub = vec![0usize; n];
        // Iterative post-order to compute subtree sizes from root 0.
        let mut order = Vec::with_capacity(n);
        let mut parent = vec![usize::MAX; n];
        let mut stack = vec![0usize];
        let mut seen = vec![false; n];
        while let Some(v) = stack.pop() {
            seen[v] = true;
            order.push(v);
            for &w in &self.adj[v] {
                if !seen[w] {
                    parent[w] = v;
                    stack.push(w);
                }
            }
        }
        for &v in order.iter().rev() {
            sub[v] = 1 + self.adj[v]
                .iter()
                .filter(|&&w| parent[w] == v)
                .map(|&w| sub[w])
                .sum::<usize>();
        }
        let mut best = usize::MAX;
        let mut cents = Vec::new();
        for v in 0..n {
            let mut heaviest = n - sub[v];
            for &w in &self.adj[v] {
                if parent[w] == v {
                    heaviest = heaviest.max(sub[w]);
                }
            }
            if heaviest < best {
                best = heaviest;
                cents = vec![v];
            } else if heaviest == best {
                cents.push(v);
            }
        }
        cents
    }
}

/// An arrangement of disjoint circles on `S²` up to ambient homeomorphism.
///
/// Stored as a representative oval forest (rooted at a centroid of the
/// region tree) plus the canonical unrooted code used for identity.
#[derive(Clone, Debug)]
pub struct SphereArrangement {
    forest: Vec<OvalTree>,
    code: String,
}

impl PartialEq for SphereArrangement {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code
    }
}
impl Eq for SphereArrangement {}
impl std::hash::Hash for SphereArrangement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.code.hash(state);
    }
}

impl SphereArrangement {
    /// Empty sphere.
    pub fn empty() -> Self {
        Self::from_forest(&[])
    }

    /// Build from any rooting of the arrangement.
    pub fn from_forest(forest: &[OvalTree]) -> Self {
        let rt = RegionTree::from_forest(forest);
        let mut best: Option<(String, Vec<OvalTree>)> = None;
        for c in rt.centroids() {
            let f = rt.forest_at(c);
            let code = forest_code(&f);
            if best.as_ref().map_or(true, |(b, _)| code < *b) {
                best = Some((code, f));
            }
        }
        let (code, forest) = best.unwrap();
        SphereArrangement { forest, code }
    }

    /// Canonical unrooted code.
    pub fn code(&self) -> &str {
        &self.code
    }

    /// Representative forest (rooted at a centroid region).
    pub fn forest(&self) -> &[OvalTree] {
        &self.forest
    }

    /// Number of ovals.
    pub fn ovals(&self) -> usize {
        forest_size(&self.forest)
    }

    pub fn is_empty(&self) -> bool {
        self.forest.is_empty()
    }

    /// Region tree of the canonical representative (vertex 0 = centroid).
    pub fn region_tree(&self) -> RegionTree {
        RegionTree::from_forest(&self.forest)
    }

    /// All distinct rootings: the oval forests seen from each region,
    /// deduplicated by rooted code and sorted.
    pub fn rootings(&self) -> Vec<Vec<OvalTree>> {
        let rt = self.region_tree();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for v in 0..rt.vertex_count() {
            let f = rt.forest_at(v);
            if seen.insert(forest_code(&f)) {
                out.push(f);
            }
        }
        out.sort_by_key(|f| forest_code(f));
        out
    }

    /// Whether the arrangement admits a mirror pair: some rooting whose
    /// top-level forest contains two identical trees.  Such an arrangement
    /// can absorb a second copy of a component, so schemes containing it are
    /// never forcibly non-symmetric.
    pub fn has_mirror(&self) -> bool {
        self.rootings().iter().any(|f| {
            let mut codes: Vec<String> = f.iter().map(|t| t.code()).collect();
            codes.sort();
            codes.windows(2).any(|w| w[0] == w[1])
        })
    }
}

/// Which surface a scheme lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum SurfaceKind {
    /// Degree 2: real part `⊔k S²`, 1 ≤ k ≤ 4.
    DelPezzo2,
    /// Degree 1: real part `RP² ⊔ ⊔k S²`, 0 ≤ k ≤ 4.
    DelPezzo1,
}

/// A plain real scheme on a del Pezzo surface.
///
/// For degree 2 the scheme is a multiset of sphere arrangements.  For
/// degree 1 it additionally carries a rooted oval forest on `RP²` and at
/// most one pseudo-line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scheme {
    kind: SurfaceKind,
    pseudo_lines: u8,
    rp2: Vec<OvalTree>,
    spheres: Vec<SphereArrangement>,
}

impl Scheme {
    pub fn new_dp2(mut spheres: Vec<SphereArrangement>) -> Self {
        sort_spheres(&mut spheres);
        Scheme { kind: SurfaceKind::DelPezzo2, pseudo_lines: 0, rp2: Vec::new(), spheres }
    }

    pub fn new_dp1(pseudo_lines: u8, rp2: Vec<OvalTree>, mut spheres: Vec<SphereArrangement>) -> Self {
        sort_spheres(&mut spheres);
        Scheme {
            kind: SurfaceKind::DelPezzo1,
            pseudo_lines,
            rp2: canonical_forest(&rp2),
            spheres,
        }
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn pseudo_lines(&self) -> u8 {
        self.pseudo_lines
    }

    /// Rooted oval forest on `RP²` (empty for degree 2 schemes).
    pub fn rp2_forest(&self) -> &[OvalTree] {
        &self.rp2
    }

    pub fn spheres(&self) -> &[SphereArrangement] {
        &self.spheres
    }

    /// Number of sphere components of the surface.
    pub fn k(&self) -> usize {
        self.spheres.len()
    }

    /// Total number of curve components (ovals plus pseudo-lines).
    pub fn components(&self) -> usize {
        self.pseudo_lines as usize
            + forest_size(&self.rp2)
            + self.spheres.iter().map(|s| s.ovals()).sum::<usize>()
    }

    /// Number of spheres carrying at least one oval.
    pub fn occupied_spheres(&self) -> usize {
        self.spheres.iter().filter(|s| !s.is_empty()).count()
    }

    /// Whether the surface component `RP²` carries anything (degree 1).
    pub fn rp2_occupied(&self) -> bool {
        self.pseudo_lines > 0 || !self.rp2.is_empty()
    }

    /// Canonical identity string.
    pub fn code(&self) -> String {
        let sph: Vec<&str> = self.spheres.iter().map(|s| s.code()).collect();
        match self.kind {
            SurfaceKind::DelPezzo2 => format!("S[{}]", sph.join(":")),
            SurfaceKind::DelPezzo1 => format!(
                "P{}[{}]|[{}]",
                self.pseudo_lines,
                forest_code(&self.rp2),
                sph.join(":")
            ),
        }
    }
}

fn sort_spheres(spheres: &mut [SphereArrangement]) {
    spheres.sort_by(|a, b| {
        (Reverse(a.ovals()), a.code()).cmp(&(Reverse(b.ovals()), b.code()))
    });
}

/// A refined degree-1 scheme (class-4 surfaces): the four spheres split
/// into a positive and a negative pair, each pair unordered.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RefinedScheme {
    pseudo_lines: u8,
    rp2: Vec<OvalTree>,
    pos: [SphereArrangement; 2],
    neg: [SphereArrangement; 2],
}

impl RefinedScheme {
    pub fn new(
        pseudo_lines: u8,
        rp2: Vec<OvalTree>,
        mut pos: [SphereArrangement; 2],
        mut neg: [SphereArrangement; 2],
    ) -> Self {
        sort_spheres(&mut pos);
        sort_spheres(&mut neg);
        RefinedScheme { pseudo_lines, rp2: canonical_forest(&rp2), pos, neg }
    }

    pub fn pseudo_lines(&self) -> u8 {
        self.pseudo_lines
    }

    pub fn rp2_forest(&self) -> &[OvalTree] {
        &self.rp2
    }

    pub fn pos(&self) -> &[SphereArrangement; 2] {
        &self.pos
    }

    pub fn neg(&self) -> &[SphereArrangement; 2] {
        &self.neg
    }

    /// Forget the pair structure.
    pub fn to_plain(&self) -> Scheme {
        Scheme::new_dp1(
            self.pseudo_lines,
            self.rp2.clone(),
            self.pos.iter().chain(self.neg.iter()).cloned().collect(),
        )
    }

    pub fn code(&self) -> String {
        format!(
            "P{}[{}]|[{}:{}][{}:{}]",
            self.pseudo_lines,
            forest_code(&self.rp2),
            self.pos[0].code(),
            self.pos[1].code(),
            self.neg[0].code(),
            self.neg[1].code()
        )
    }
}

/// Per-scheme component statistics used by the prohibition criteria.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentStats {
    /// Total number of curve components.
    pub components: usize,
    /// Number of spheres carrying ovals.
    pub occupied_spheres: usize,
    /// Oval count per sphere, in the scheme's canonical sphere order.
    pub sphere_ovals: Vec<usize>,
    /// Ovals on `RP²` (degree 1 only).
    pub rp2_ovals: usize,
    /// Pseudo-lines (degree 1 only, 0 or 1).
    pub pseudo_lines: u8,
}

/// Compute the component statistics of a scheme.
pub fn component_stats(scheme: &Scheme) -> ComponentStats {
    ComponentStats {
        components: scheme.components(),
        occupied_spheres: scheme.occupied_spheres(),
        sphere_ovals: scheme.spheres().iter().map(|s| s.ovals()).collect(),
        rp2_ovals: forest_size(scheme.rp2_forest()),
        pseudo_lines: scheme.pseudo_lines(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_forest;

    fn arr(text: &str) -> SphereArrangement {
        SphereArrangement::from_forest(&parse_forest(text).unwrap())
    }

    #[test]
    fn nested_pair_equals_side_by_side_on_sphere() {
        // Two disjoint circles on S² always bound a nest of depth 2.
        assert_eq!(arr("1+1"), arr("<1>"));
        assert_eq!(arr("2+<1>"), arr("1+<1+1>"));
    }

    #[test]
    fn rooting_invariance_of_codes() {
        for text in ["1+<2>+<<1>>", "4", "N(5,0)", "<1>+<1>+<1>", "1+<1+<2>>"] {
            let a = arr(text);
            let rt = a.region_tree();
            for v in 0..rt.vertex_count() {
                let again = SphereArrangement::from_forest(&rt.forest_at(v));
                assert_eq!(a, again, "rooting {v} of {text}");
            }
        }
    }

    #[test]
    fn mirror_detection() {
        assert!(arr("1+<<1>>").has_mirror()); // re-root mid-chain: <1> ⊔ <1>
        assert!(!arr("1+<1>").has_mirror());
        assert!(!arr("").has_mirror());
        assert!(arr("1+1").has_mirror());
        assert!(arr("<1>+<1>").has_mirror());
    }

    #[test]
    fn sphere_sorting_and_stats() {
        let s = Scheme::new_dp2(vec![arr(""), arr("3"), arr("1")]);
        assert_eq!(
            component_stats(&s),
            ComponentStats {
                components: 4,
                occupied_spheres: 2,
                sphere_ovals: vec![3, 1, 0],
                rp2_ovals: 0,
                pseudo_lines: 0,
            }
        );
    }
}
