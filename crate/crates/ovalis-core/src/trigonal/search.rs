//! Backtracking search for hemisphere completions of a real graph.
//!
//! The upper hemisphere is filled face by face.  Every face covers a
//! half-plane with some positive degree, so its boundary crosses the three
//! special values equally often: a face has `3k` essential corners cycling
//! `×`, `∘`, `•` in the order fixed by its sign, plus any number of
//! monochrome corners (`k = 1` for generic maps, but deformations with
//! non-real critical values force larger faces).  Once a
//! face's sign is fixed, every corner forces the next edge color, and the
//! search only branches on *where* that edge goes: the next boundary dart
//! (absorb), a fresh interior vertex (pendant), or an existing frontier
//! vertex (connect, splitting the region in two).  Per-color incidence
//! budgets — each essential color collects exactly `6n` half-incidences on
//! the hemisphere — and vertex parity deficits prune the tree.
//!
//! The boundary itself is not rigid: the word fixes only the fiberwise
//! data, so segments with one real intersection may swap between solid and
//! bold across `•`-vertices, poles may sit inside one-intersection and
//! three-intersection runs alike, and monochrome joints may appear
//! anywhere.  These decorations are enumerated with iterative deepening,
//! from zero insertions upward; interior monochrome vertices are never
//! created, since a completion using one can be perturbed away.

use super::{
    transition_sign, CompletionEdge, CompletionVertex, EColor, RealGraph, TrigonalCompletion, VColor,
};
use std::collections::{HashMap, VecDeque};

/// Node allowance for the backtracking search.
#[derive(Debug, Clone, Copy)]
pub struct SearchBudget {
    pub max_nodes: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 400_000_000 }
    }
}

/// Outcome of a completion search.
#[derive(Debug, Clone)]
pub enum SearchResult {
    Found(Box<TrigonalCompletion>),
    NotCompletable,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Dart {
    edge: usize,
    from: usize,
    to: usize,
    color: EColor,
    /// Required sign of the face absorbing this dart.
    sign: Option<bool>,
}

#[derive(Debug, Clone)]
struct Region {
    darts: VecDeque<Dart>,
    face: Vec<Dart>,
    sign: bool,
    /// Essential corners consumed by the face in progress.
    ess: u8,
}

#[derive(Debug, Clone)]
struct State {
    vcol: Vec<VColor>,
    /// Real edge colors left/right of each boundary vertex.
    real: Vec<Option<(EColor, EColor)>>,
    /// Interior (upper hemisphere) degree per vertex.
    deg: Vec<usize>,
    /// Open dart endpoints per vertex; zero means the vertex is finished.
    refs: Vec<usize>,
    used: [usize; 3],
    edges: Vec<CompletionEdge>,
    faces: Vec<Vec<Dart>>,
    regions: Vec<Region>,
}

/// Required interior degree condition for a finished boundary vertex.
fn boundary_target(color: VColor, left: EColor, right: EColor, i: usize) -> bool {
    match color {
        VColor::Mono(c) => left == c && right == c,
        VColor::Cross => {
            if left == right {
                i % 2 == 1
            } else {
                i % 2 == 0
            }
        }
        // Doubled degree 2 + 2i must be divisible by 4.
        VColor::Circ => left == right && i % 2 == 1,
        // Doubled degree divisible by 6: i ≡ 2 (mod 3), parity from the
        // real colors as for every essential vertex.
        VColor::Bullet => {
            if left == right {
                i % 6 == 5
            } else {
                i % 6 == 2
            }
        }
    }
}

/// Least number of further incidences an unfinished vertex still needs;
/// used as a per-color lower bound for pruning.
fn deficit(state: &State, v: usize) -> usize {
    let i = state.deg[v];
    match (state.real[v], state.vcol[v]) {
        (Some(_), VColor::Mono(_)) => 0,
        (Some((l, r)), VColor::Cross) => (i + usize::from(l == r)) % 2,
        (Some((_, _)), VColor::Circ) => (i + 1) % 2,
        (Some((l, r)), VColor::Bullet) => {
            let target = if l == r { 5 } else { 2 };
            (target + 6 - i % 6) % 6
        }
        (None, VColor::Cross) => {
            if i < 2 {
                2 - i
            } else {
                i % 2
            }
        }
        (None, VColor::Circ) => {
            if i < 4 {
                4 - i
            } else {
                (4 - i % 4) % 4
            }
        }
        (None, VColor::Bullet) => {
            if i < 6 {
                6 - i
            } else {
                (6 - i % 6) % 6
            }
        }
        (None, VColor::Mono(_)) => 0,
    }
}

impl State {
    /// Check a finished vertex against its degree conditions.
    fn finalize_vertex(&self, v: usize) -> bool {
        match self.real[v] {
            Some((l, r)) => boundary_target(self.vcol[v], l, r, self.deg[v]),
            None => match self.vcol[v] {
                VColor::Cross => self.deg[v] >= 2 && self.deg[v] % 2 == 0,
                VColor::Circ => self.deg[v] >= 4 && self.deg[v] % 4 == 0,
                VColor::Bullet => self.deg[v] >= 6 && self.deg[v] % 6 == 0,
                VColor::Mono(_) => false,
            },
        }
    }

    /// Close the face of the last region; `None` if a vertex check fails.
    fn close_face(mut self) -> Option<State> {
        let region = self.regions.pop().expect("region");
        debug_assert!(region.darts.is_empty());
        for d in &region.face {
            self.refs[d.from] -= 1;
            self.refs[d.to] -= 1;
        }
        for d in &region.face {
            for v in [d.from, d.to] {
                if self.refs[v] == 0 && !self.finalize_vertex(v) {
                    return None;
                }
            }
        }
        self.faces.push(region.face);
        Some(self)
    }

    /// Record one extra incidence of an essential vertex.
    fn charge(&mut self, v: usize, cap: usize) -> bool {
        if let Some(slot) = self.vcol[v].budget_slot() {
            self.used[slot] += 1;
            if self.used[slot] > cap {
                return false;
            }
        }
        true
    }

    /// Per-color lower bounds on incidences still required.
    fn feasible(&self, cap: usize) -> bool {
        let mut need = [0usize; 3];
        for v in 0..self.vcol.len() {
            if self.refs[v] > 0 {
                if let Some(slot) = self.vcol[v].budget_slot() {
                    need[slot] += deficit(self, v);
                }
            }
        }
        (0..3).all(|s| self.used[s] + need[s] <= cap)
    }
}

/// The transition at a corner: entering vertex `v` along color `c` inside
/// a face of sign `sign`, return the forced outgoing color.
fn corner_out(v: VColor, c: EColor, sign: bool) -> Option<EColor> {
    match v {
        VColor::Mono(m) => (m == c).then_some(c),
        _ => {
            let out = v.other(c)?;
            (transition_sign(c, out) == Some(sign)).then_some(out)
        }
    }
}

struct Searcher {
    cap: usize,
    max_nodes: usize,
    nodes: usize,
}

enum Fill {
    Found(State),
    Exhausted,
    OutOfNodes,
}

impl Searcher {
    fn fill(&mut self, root: State) -> Fill {
        let mut stack = vec![root];
        while let Some(state) = stack.pop() {
            if self.nodes >= self.max_nodes {
                return Fill::OutOfNodes;
            }
            self.nodes += 1;
            if state.regions.is_empty() {
                if state.used == [self.cap; 3] {
                    return Fill::Found(state);
                }
                continue;
            }
            self.expand(state, &mut stack);
        }
        Fill::Exhausted
    }

    /// Push the children of `state` (in reverse preference order).
    fn expand(&mut self, mut state: State, stack: &mut Vec<State>) {
        // Between faces, work on the most constrained region first.
        if state.regions.last().expect("region").face.is_empty() {
            let (smallest, _) = state
                .regions
                .iter()
                .enumerate()
                .min_by_key(|(_, r)| r.darts.len())
                .expect("region");
            let last = state.regions.len() - 1;
            state.regions.swap(smallest, last);
        }
        let region = state.regions.last().expect("region");
        if region.face.is_empty() {
            // Start the face; its direction is a branch unless forced.
            let signs: Vec<bool> = match region.darts.front().expect("dart").sign {
                Some(s) => vec![s],
                None => vec![false, true],
            };
            for sign in signs {
                let mut st = state.clone();
                let r = st.regions.last_mut().expect("region");
                let mut d = r.darts.pop_front().expect("dart");
                d.sign = Some(sign);
                r.face.push(d);
                r.sign = sign;
                r.ess = 0;
                stack.push(st);
            }
            return;
        }
        let cur = *region.face.last().expect("dart");
        let sign = region.sign;
        let ess = region.ess;
        let v = cur.to;
        let v_ess = !matches!(state.vcol[v], VColor::Mono(_));
        let Some(out) = corner_out(state.vcol[v], cur.color, sign) else {
            return;
        };
        let mut children: Vec<State> = Vec::new();
        // Close: the region is one complete face if the wrap corner fits
        // and the face has its three essential corners.
        if region.darts.is_empty() {
            let first = region.face[0];
            let wrap_ess = u8::from(!matches!(state.vcol[first.from], VColor::Mono(_)));
            let cnt = ess + wrap_ess;
            if cnt >= 3
                && cnt % 3 == 0
                && corner_out(state.vcol[first.from], cur.color, sign) == Some(first.color)
            {
                if let Some(st) = state.clone().close_face() {
                    children.push(st);
                }
            }
        }
        // All remaining moves consume the corner at `v`.
        {
            let ess2 = ess + u8::from(v_ess);
            // Absorb the next frontier dart into the face.
            if let Some(&front) = region.darts.front() {
                debug_assert_eq!(front.from, v);
                if front.color == out && front.sign.map_or(true, |s| s == sign) {
                    let mut st = state.clone();
                    let r = st.regions.last_mut().expect("region");
                    let mut d = r.darts.pop_front().expect("dart");
                    d.sign = Some(sign);
                    r.face.push(d);
                    r.ess = ess2;
                    children.push(st);
                }
            }
            // Connect to a frontier vertex, splitting the region.
            for k in 0..region.darts.len() {
                let x = region.darts[k].to;
                if x == v || !state.vcol[x].accepts(out) {
                    continue;
                }
                if matches!(state.vcol[x], VColor::Mono(_))
                    && matches!(state.vcol[v], VColor::Mono(_))
                {
                    continue;
                }
                let mut st = state.clone();
                if !st.charge(v, self.cap) || !st.charge(x, self.cap) {
                    continue;
                }
                let edge = st.edges.len();
                st.edges.push(CompletionEdge { a: v, b: x, color: out, real: false });
                st.deg[v] += 1;
                st.deg[x] += 1;
                let r = st.regions.last_mut().expect("region");
                let mut rest = r.darts.split_off(k + 1);
                std::mem::swap(&mut r.darts, &mut rest);
                // `rest` now holds darts 0..=k for the split-off region.
                r.face.push(Dart { edge, from: v, to: x, color: out, sign: Some(sign) });
                r.ess = ess2;
                let mut back = VecDeque::with_capacity(rest.len() + 1);
                back.push_back(Dart { edge, from: x, to: v, color: out, sign: Some(!sign) });
                back.extend(rest);
                st.refs[v] += 2;
                st.refs[x] += 2;
                let split = Region { darts: back, face: Vec::new(), sign: false, ess: 0 };
                let last = st.regions.len() - 1;
                st.regions.insert(last, split);
                if st.feasible(self.cap) {
                    children.push(st);
                }
            }
            // Pendant: a fresh interior vertex of either type on `out`.
            for vtype in [VColor::Cross, VColor::Circ, VColor::Bullet] {
                if !vtype.accepts(out) {
                    continue;
                }
                let mut st = state.clone();
                if !st.charge(v, self.cap) {
                    continue;
                }
                let w = st.vcol.len();
                st.vcol.push(vtype);
                st.real.push(None);
                st.deg.push(1);
                st.refs.push(0);
                if !st.charge(w, self.cap) {
                    continue;
                }
                st.deg[v] += 1;
                let edge = st.edges.len();
                st.edges.push(CompletionEdge { a: v, b: w, color: out, real: false });
                let r = st.regions.last_mut().expect("region");
                r.face.push(Dart { edge, from: v, to: w, color: out, sign: Some(sign) });
                r.ess = ess2;
                r.darts.push_front(Dart { edge, from: w, to: v, color: out, sign: Some(!sign) });
                st.refs[v] += 2;
                st.refs[w] += 2;
                if st.feasible(self.cap) {
                    children.push(st);
                }
            }
        }
        // Depth-first: most promising last (close > absorb > connect > new).
        children.reverse();
        stack.extend(children);
    }
}

/// A decorated boundary word: vertex colors and the edge colors between
/// them, cyclically.
#[derive(Debug, Clone)]
struct Boundary {
    vcol: Vec<VColor>,
    ecol: Vec<EColor>,
}

/// All decorated forms of one boundary edge of color `c` with exactly `j`
/// inserted vertices: a path of edge colors starting and ending at `c`.
///
/// One-intersection segments move freely between solid and bold across
/// `•`-vertices and carry poles inside bold parts; three-intersection
/// segments stay dotted and carry poles directly.  Monochrome joints fit
/// anywhere.
fn edge_words(c: EColor, j: usize) -> Vec<(Vec<VColor>, Vec<EColor>)> {
    fn extend(
        state: EColor,
        end: EColor,
        left: usize,
        vs: &mut Vec<VColor>,
        es: &mut Vec<EColor>,
        out: &mut Vec<(Vec<VColor>, Vec<EColor>)>,
    ) {
        if left == 0 {
            if state == end {
                out.push((vs.clone(), es.clone()));
            }
            return;
        }
        let steps: &[(VColor, EColor)] = match state {
            EColor::Dotted => &[
                (VColor::Circ, EColor::Dotted),
                (VColor::Mono(EColor::Dotted), EColor::Dotted),
            ],
            EColor::Solid => &[
                (VColor::Bullet, EColor::Bold),
                (VColor::Bullet, EColor::Solid),
                (VColor::Mono(EColor::Solid), EColor::Solid),
            ],
            EColor::Bold => &[
                (VColor::Bullet, EColor::Solid),
                (VColor::Bullet, EColor::Bold),
                (VColor::Circ, EColor::Bold),
                (VColor::Mono(EColor::Bold), EColor::Bold),
            ],
        };
        for &(v, next) in steps {
            vs.push(v);
            es.push(next);
            extend(next, end, left - 1, vs, es, out);
            vs.pop();
            es.pop();
        }
    }
    let mut out = Vec::new();
    extend(c, c, j, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

/// Count decoration vertices against the per-type caps
/// `[×, ∘, •, joint]`; `None` when a cap is exceeded.
fn spend(caps: [usize; 4], vs: &[VColor]) -> Option<[usize; 4]> {
    let mut caps = caps;
    for v in vs {
        let slot = match v {
            VColor::Cross => 0,
            VColor::Circ => 1,
            VColor::Bullet => 2,
            VColor::Mono(_) => 3,
        };
        if caps[slot] == 0 {
            return None;
        }
        caps[slot] -= 1;
    }
    Some(caps)
}

/// Every decorated boundary with exactly `total` inserted vertices.
fn boundaries(g: &RealGraph, total: usize, caps: [usize; 4]) -> Vec<Boundary> {
    let mut out = Vec::new();
    if let Some(base) = g.circle {
        // Cyclic decoration of a bare circle: a closed path of segment
        // colors.  Dotted circles stay dotted; one-intersection circles
        // may use solid and bold segments in any closed pattern.
        let starts: &[EColor] = match base {
            EColor::Dotted => &[EColor::Dotted],
            _ => &[EColor::Solid, EColor::Bold],
        };
        for &start in starts {
            for (vs, es) in edge_words(start, total) {
                if vs.is_empty() {
                    continue;
                }
                if spend(caps, &vs).is_none() {
                    continue;
                }
                // The closing edge of the cycle is the start color.
                let mut ecol = vec![start];
                ecol.extend(es.iter().take(es.len() - 1).copied());
                out.push(Boundary { vcol: vs, ecol });
            }
        }
        return out;
    }
    fn rec(
        g: &RealGraph,
        idx: usize,
        left: usize,
        caps: [usize; 4],
        vcol: &mut Vec<VColor>,
        ecol: &mut Vec<EColor>,
        out: &mut Vec<Boundary>,
    ) {
        if idx == g.edges.len() {
            if left == 0 {
                out.push(Boundary { vcol: vcol.clone(), ecol: ecol.clone() });
            }
            return;
        }
        vcol.push(g.vertices[idx]);
        for j in 0..=left {
            for (vs, es) in edge_words(g.edges[idx], j) {
                let Some(caps2) = spend(caps, &vs) else { continue };
                ecol.push(g.edges[idx]);
                let nv = vs.len();
                vcol.extend(vs);
                ecol.extend(es.iter().take(nv).copied());
                rec(g, idx + 1, left - j, caps2, vcol, ecol, out);
                vcol.truncate(vcol.len() - nv);
                ecol.truncate(ecol.len() - nv - 1);
            }
        }
        vcol.pop();
    }
    rec(g, 0, total, caps, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

/// Whether the color budget `cap` is exactly reachable from the boundary
/// contributions (each an arithmetic progression `first, first+step, …`)
/// plus interior vertices contributing multiples of `interior`.
fn color_reachable(cap: usize, contribs: &[(usize, usize)], interior: usize) -> bool {
    let full: u64 = if cap >= 63 { !0 } else { (1u64 << (cap + 1)) - 1 };
    let mut mask: u64 = 1;
    for &(first, step) in contribs {
        let mut next = 0u64;
        let mut k = first;
        while k <= cap {
            next |= (mask << k) & full;
            k += step;
        }
        mask = next;
        if mask == 0 {
            return false;
        }
    }
    let mut k = interior;
    while k <= cap {
        mask |= (mask << k) & full;
        k += interior;
    }
    mask & (1 << cap) != 0
}

/// Static reachability of all three exact color budgets for a boundary.
fn budgets_reachable(b: &Boundary, cap: usize) -> bool {
    let m = b.vcol.len();
    let mut per: [Vec<(usize, usize)>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for i in 0..m {
        let l = b.ecol[(i + m - 1) % m];
        let r = b.ecol[i];
        match b.vcol[i] {
            VColor::Mono(_) => {}
            VColor::Cross => per[0].push(if l == r { (2, 2) } else { (1, 2) }),
            VColor::Circ => per[1].push((2, 2)),
            VColor::Bullet => per[2].push(if l == r { (6, 6) } else { (3, 6) }),
        }
    }
    color_reachable(cap, &per[0], 2)
        && color_reachable(cap, &per[1], 4)
        && color_reachable(cap, &per[2], 6)
}

/// Initial state for a decorated boundary word.
fn initial_state(b: &Boundary, cap: usize) -> Option<State> {
    let vcol = b.vcol.clone();
    let ecol = &b.ecol;
    let m = vcol.len();
    if m < 2 {
        // A single boundary vertex would close the real circle into a
        // loop; a free subdivision joint always exists instead.
        return None;
    }
    if vcol.iter().all(|v| matches!(v, VColor::Mono(_))) {
        // A boundary of joints alone is a monochrome cycle.
        return None;
    }
    let mut real = Vec::with_capacity(m);
    let mut used = [0usize; 3];
    for i in 0..m {
        let left = ecol[(i + m - 1) % m];
        let right = ecol[i];
        if !vcol[i].accepts(left) || !vcol[i].accepts(right) {
            return None;
        }
        real.push(Some((left, right)));
        if let Some(slot) = vcol[i].budget_slot() {
            used[slot] += 1;
            if used[slot] > cap {
                return None;
            }
        }
    }
    // The parity of every essential boundary degree is forced by its real
    // colors, interior vertices have even degree, and the sum of all
    // upper degrees is even; only a monochrome joint has free parity.
    let mut parity = 0usize;
    let mut has_mono = false;
    for i in 0..m {
        let (l, r) = real[i].expect("boundary");
        match vcol[i] {
            VColor::Mono(_) => has_mono = true,
            VColor::Circ => parity += 1,
            VColor::Cross | VColor::Bullet => parity += usize::from(l == r),
        }
    }
    if !has_mono && parity % 2 == 1 {
        return None;
    }
    let mut edges = Vec::with_capacity(m);
    let mut darts = VecDeque::with_capacity(m);
    for i in 0..m {
        edges.push(CompletionEdge { a: i, b: (i + 1) % m, color: ecol[i], real: true });
        darts.push_back(Dart { edge: i, from: i, to: (i + 1) % m, color: ecol[i], sign: None });
    }
    let state = State {
        vcol,
        real,
        deg: vec![0; m],
        refs: vec![2; m],
        used,
        edges,
        faces: Vec::new(),
        regions: vec![Region { darts, face: Vec::new(), sign: false, ess: 0 }],
    };
    state.feasible(cap).then_some(state)
}

/// Assemble the completion from the closed faces of a finished state.
fn assemble(state: &State, n: usize) -> TrigonalCompletion {
    // Rotation successor: arriving dart (edge, head) -> departing edge.
    let mut succ: HashMap<(usize, usize), usize> = HashMap::new();
    for face in &state.faces {
        for (i, d) in face.iter().enumerate() {
            let nd = &face[(i + 1) % face.len()];
            succ.insert((d.edge, d.to), nd.edge);
        }
    }
    let boundary = state.real.iter().filter(|r| r.is_some()).count();
    let mut rotations = Vec::with_capacity(state.vcol.len());
    for v in 0..state.vcol.len() {
        let mut rot = Vec::new();
        if state.real[v].is_some() {
            // From the left real edge around the upper side to the right.
            let left = (v + boundary - 1) % boundary;
            let right = v;
            let mut e = left;
            rot.push(e);
            while e != right {
                e = succ[&(e, v)];
                rot.push(e);
            }
        } else {
            let first = state
                .edges
                .iter()
                .position(|e| e.a == v || e.b == v)
                .expect("interior vertex has an edge");
            let mut e = first;
            loop {
                rot.push(e);
                e = succ[&(e, v)];
                if e == first {
                    break;
                }
            }
        }
        rotations.push(rot);
    }
    TrigonalCompletion {
        n,
        vertices: state
            .vcol
            .iter()
            .zip(&state.real)
            .map(|(&color, r)| CompletionVertex { color, on_boundary: r.is_some() })
            .collect(),
        edges: state.edges.clone(),
        rotations,
    }
}

/// Search for a hemisphere completion of `g` in its own degree.
pub fn search_completion(g: &RealGraph, budget: SearchBudget) -> SearchResult {
    let cap = 6 * g.n;
    // Arithmetic fast path: every boundary vertex costs at least one
    // incidence of its color, and decorations only add more.
    let mut base = [0usize; 3];
    for (i, v) in g.vertices.iter().enumerate() {
        if let Some(slot) = v.budget_slot() {
            let left = g.edges[(i + g.edges.len() - 1) % g.edges.len()];
            let right = g.edges[i];
            base[slot] += 1 + match v {
                VColor::Circ => 1,
                VColor::Bullet if left == right => 5,
                VColor::Bullet => 2,
                VColor::Cross if left == right => 1,
                _ => 0,
            };
        }
    }
    if (0..3).any(|s| base[s] > cap) {
        return SearchResult::NotCompletable;
    }
    let circ_cap = (cap - base[1]) / 2;
    let bullet_cap = (cap - base[2]) / 3;
    let mono_cap = 3 * cap - base.iter().sum::<usize>();
    let caps = [0, circ_cap, bullet_cap, mono_cap];
    let max_total = circ_cap + bullet_cap + mono_cap;
    let mut searcher = Searcher { cap, max_nodes: budget.max_nodes, nodes: 0 };
    for total in 0..=max_total {
        for boundary in boundaries(g, total, caps) {
            if !budgets_reachable(&boundary, cap) {
                continue;
            }
            let Some(state) = initial_state(&boundary, cap) else {
                continue;
            };
            match searcher.fill(state) {
                Fill::Found(state) => {
                    return SearchResult::Found(Box::new(assemble(&state, g.n)));
                }
                Fill::Exhausted => {}
                Fill::OutOfNodes => return SearchResult::Unknown,
            }
        }
    }
    SearchResult::NotCompletable
}
