//! Independent validation of hemisphere completions.
//!
//! A completion is checked by doubling it across the real circle into a
//! map on the whole sphere and verifying the conditions that characterise
//! the three-valued graphs of genuine fibrations: degree and divisibility
//! conditions per vertex type, global incidence totals `12n` per
//! essential color, strict color alternation around essential vertices,
//! acyclicity of the monochrome part, a
//! consistent two-coloring of faces by sign with the forced sign at every
//! essential corner, and sphericity via Euler characteristic plus
//! connectivity.  None of the search machinery is reused here.

use super::{transition_sign, EColor, TrigonalCompletion, VColor};
use std::collections::HashMap;

/// Check all structural conditions; an empty vector means valid.
pub fn is_valid_completion(c: &TrigonalCompletion) -> Vec<String> {
    let mut bad = Vec::new();
    let nv = c.vertices.len();
    if c.rotations.len() != nv {
        return vec!["rotation count differs from vertex count".into()];
    }
    for (i, e) in c.edges.iter().enumerate() {
        if e.a >= nv || e.b >= nv {
            return vec![format!("edge {i} has an endpoint out of range")];
        }
        if e.a == e.b {
            return vec![format!("edge {i} is a loop")];
        }
        if e.real && !(c.vertices[e.a].on_boundary && c.vertices[e.b].on_boundary) {
            bad.push(format!("real edge {i} leaves the boundary"));
        }
    }

    // The real circle: every boundary vertex carries exactly two real
    // edges and they close into a single cycle.
    let boundary: Vec<usize> =
        (0..nv).filter(|&v| c.vertices[v].on_boundary).collect();
    if boundary.is_empty() {
        bad.push("no real circle".into());
    }
    let mut real_at: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (i, e) in c.edges.iter().enumerate().filter(|(_, e)| e.real) {
        real_at[e.a].push(i);
        real_at[e.b].push(i);
    }
    for &v in &boundary {
        if real_at[v].len() != 2 {
            bad.push(format!("boundary vertex {v} has {} real edges", real_at[v].len()));
        }
    }
    if !bad.is_empty() {
        return bad;
    }
    {
        // Walk the cycle of real edges.
        let mut seen = 1usize;
        let start = boundary[0];
        let mut prev_edge = real_at[start][0];
        let mut at = start;
        loop {
            let e = &c.edges[prev_edge];
            at = if e.a == at { e.b } else { e.a };
            if at == start {
                break;
            }
            seen += 1;
            prev_edge = if real_at[at][0] == prev_edge { real_at[at][1] } else { real_at[at][0] };
            if seen > boundary.len() {
                break;
            }
        }
        if seen != boundary.len() || at != start {
            bad.push("real edges do not form a single circle".into());
        }
    }

    // Double across the real circle: interior vertices and non-real
    // edges acquire mirror copies, boundary rotations are completed by
    // the reflected upper list.
    let mut mirror_v: Vec<usize> = (0..nv).collect();
    let mut vcolors: Vec<VColor> = c.vertices.iter().map(|v| v.color).collect();
    for v in 0..nv {
        if !c.vertices[v].on_boundary {
            mirror_v[v] = vcolors.len();
            vcolors.push(c.vertices[v].color);
        }
    }
    let mut edges: Vec<(usize, usize, EColor)> =
        c.edges.iter().map(|e| (e.a, e.b, e.color)).collect();
    let mut mirror_e: Vec<usize> = (0..edges.len()).collect();
    for (i, e) in c.edges.iter().enumerate() {
        if !e.real {
            mirror_e[i] = edges.len();
            edges.push((mirror_v[e.a], mirror_v[e.b], e.color));
        }
    }
    let mut rotations: Vec<Vec<usize>> = Vec::with_capacity(vcolors.len());
    for v in 0..nv {
        let rot = &c.rotations[v];
        if c.vertices[v].on_boundary {
            if rot.len() < 2
                || !c.edges.get(rot[0]).is_some_and(|e| e.real && (e.a == v || e.b == v))
                || !c.edges.get(*rot.last().expect("nonempty")).is_some_and(|e| {
                    e.real && (e.a == v || e.b == v)
                })
            {
                return vec![format!("boundary rotation at {v} does not end in real edges")];
            }
            let mut full = rot.clone();
            for &e in rot[1..rot.len() - 1].iter().rev() {
                full.push(mirror_e[e]);
            }
            rotations.push(full);
        } else {
            rotations.push(rot.clone());
        }
    }
    for v in 0..nv {
        if !c.vertices[v].on_boundary {
            let mirrored: Vec<usize> =
                c.rotations[v].iter().rev().map(|&e| mirror_e[e]).collect();
            rotations.push(mirrored);
        }
    }

    // Rotations must list exactly the incident edges.
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); vcolors.len()];
    for (i, &(a, b, _)) in edges.iter().enumerate() {
        incident[a].push(i);
        incident[b].push(i);
    }
    for v in 0..vcolors.len() {
        let mut r = rotations[v].clone();
        let mut inc = incident[v].clone();
        r.sort_unstable();
        inc.sort_unstable();
        if r != inc {
            bad.push(format!("rotation at doubled vertex {v} mismatches incidences"));
        }
    }
    if !bad.is_empty() {
        return bad;
    }

    // Degrees, divisibility and the 12n totals.
    let mut totals = [0usize; 3];
    for v in 0..vcolors.len() {
        let d = rotations[v].len();
        match vcolors[v] {
            VColor::Cross => {
                if d == 0 || d % 2 != 0 {
                    bad.push(format!("tangency vertex {v} has degree {d}"));
                }
                totals[0] += d;
            }
            VColor::Circ => {
                if d == 0 || d % 4 != 0 {
                    bad.push(format!("pole vertex {v} has degree {d}"));
                }
                totals[1] += d;
            }
            VColor::Bullet => {
                if d == 0 || d % 6 != 0 {
                    bad.push(format!("branch vertex {v} has degree {d}"));
                }
                totals[2] += d;
            }
            VColor::Mono(m) => {
                if d == 0 || d % 2 != 0 {
                    bad.push(format!("monochrome vertex {v} has degree {d}"));
                }
                if rotations[v].iter().any(|&e| edges[e].2 != m) {
                    bad.push(format!("monochrome vertex {v} meets a foreign color"));
                }
                if v < nv && !c.vertices[v].on_boundary {
                    bad.push(format!("monochrome vertex {v} is interior"));
                }
            }
        }
        // Essential vertices alternate their two edge colors exactly.
        if let Some((c1, c2)) = vcolors[v].colors() {
            for k in 0..d {
                let here = edges[rotations[v][k]].2;
                let next = edges[rotations[v][(k + 1) % d]].2;
                if !((here == c1 && next == c2) || (here == c2 && next == c1)) {
                    bad.push(format!("colors do not alternate at vertex {v}"));
                    break;
                }
            }
        }
    }
    for (slot, name) in [(0, "tangency"), (1, "pole"), (2, "branch")] {
        if totals[slot] != 12 * c.n {
            bad.push(format!(
                "{name} incidences total {} instead of {}",
                totals[slot],
                12 * c.n
            ));
        }
    }
    if !bad.is_empty() {
        return bad;
    }

    // No monochrome cycles: the subgraph spanned by monochrome vertices
    // must be a forest.
    {
        let mut comp: Vec<usize> = (0..vcolors.len()).collect();
        fn find(comp: &mut Vec<usize>, x: usize) -> usize {
            if comp[x] != x {
                comp[x] = find(comp, comp[x]);
            }
            comp[x]
        }
        for &(a, b, _) in &edges {
            if matches!(vcolors[a], VColor::Mono(_)) && matches!(vcolors[b], VColor::Mono(_)) {
                let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
                if ra == rb {
                    bad.push("monochrome cycle".into());
                    return bad;
                }
                comp[ra] = rb;
            }
        }
    }

    // Trace faces: the dart after (u -> v) leaves v along the rotation
    // successor of its edge.
    let mut pos: HashMap<(usize, usize), usize> = HashMap::new();
    for v in 0..vcolors.len() {
        for (k, &e) in rotations[v].iter().enumerate() {
            pos.insert((e, v), k);
        }
    }
    let dart_head = |e: usize, fwd: bool| if fwd { edges[e].1 } else { edges[e].0 };
    let mut face_of: HashMap<(usize, bool), usize> = HashMap::new();
    let mut faces: Vec<Vec<(usize, bool)>> = Vec::new();
    for e0 in 0..edges.len() {
        for fwd0 in [true, false] {
            if face_of.contains_key(&(e0, fwd0)) {
                continue;
            }
            let id = faces.len();
            let mut cycle = Vec::new();
            let (mut e, mut fwd) = (e0, fwd0);
            loop {
                cycle.push((e, fwd));
                face_of.insert((e, fwd), id);
                let v = dart_head(e, fwd);
                let k = pos[&(e, v)];
                let rot = &rotations[v];
                let e2 = rot[(k + 1) % rot.len()];
                fwd = edges[e2].0 == v;
                e = e2;
                if (e, fwd) == (e0, fwd0) {
                    break;
                }
            }
            faces.push(cycle);
        }
    }

    // Sphericity: Euler characteristic two and a connected graph.
    let (v2, e2, f2) = (vcolors.len() as i64, edges.len() as i64, faces.len() as i64);
    if v2 - e2 + f2 != 2 {
        bad.push(format!("Euler characteristic {} instead of 2", v2 - e2 + f2));
    }
    {
        let mut comp: Vec<usize> = (0..vcolors.len()).collect();
        fn find(comp: &mut Vec<usize>, x: usize) -> usize {
            if comp[x] != x {
                comp[x] = find(comp, comp[x]);
            }
            comp[x]
        }
        for &(a, b, _) in &edges {
            let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
            comp[ra] = rb;
        }
        let roots: std::collections::HashSet<usize> =
            (0..vcolors.len()).map(|v| find(&mut comp, v)).collect();
        if roots.len() != 1 {
            bad.push(format!("{} connected components instead of 1", roots.len()));
        }
    }
    if !bad.is_empty() {
        return bad;
    }

    // Face signs: every essential corner forces its face's sign, signs
    // must be constant along a face and opposite across every edge.
    let mut sign: Vec<Option<bool>> = vec![None; faces.len()];
    for (id, cycle) in faces.iter().enumerate() {
        for (k, &(e, fwd)) in cycle.iter().enumerate() {
            let v = dart_head(e, fwd);
            if matches!(vcolors[v], VColor::Mono(_)) {
                continue;
            }
            let (e_next, _) = cycle[(k + 1) % cycle.len()];
            let Some(s) = transition_sign(edges[e].2, edges[e_next].2) else {
                bad.push(format!("impossible corner in face {id}"));
                return bad;
            };
            match sign[id] {
                None => sign[id] = Some(s),
                Some(prev) if prev != s => {
                    bad.push(format!("inconsistent corner signs in face {id}"));
                    return bad;
                }
                _ => {}
            }
        }
    }
    // Propagate across edges: the two sides of an edge disagree.
    let mut queue: Vec<usize> =
        (0..faces.len()).filter(|&f| sign[f].is_some()).collect();
    while let Some(f) = queue.pop() {
        let s = sign[f].expect("queued faces are signed");
        for &(e, fwd) in &faces[f] {
            let other = face_of[&(e, !fwd)];
            match sign[other] {
                None => {
                    sign[other] = Some(!s);
                    queue.push(other);
                }
                Some(t) if t != !s => {
                    bad.push("adjacent faces share a sign".into());
                    return bad;
                }
                _ => {}
            }
        }
    }
    if sign.iter().any(|s| s.is_none()) {
        bad.push("some faces cannot be signed".into());
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::super::{CompletionEdge, CompletionVertex};
    use super::*;

    /// The completion of the everywhere-three-real-points circle in base
    /// degree one, built by hand on the upper hemisphere.  The dotted real
    /// circle carries a pole `S` and a dotted joint `M`; inside, three
    /// degree-two tangency vertices hang off a central branch vertex `B`
    /// of degree six, and a pole `O` of degree four separates `B`'s two
    /// parallel bold edges with its dotted ones.
    ///
    /// Vertices: 0 = S (`∘`), 1 = M (joint), 2..=4 = tangencies, 5 = O
    /// (`∘`), 6 = B (`•`).  Doubled totals: tangency `3·(2·2) = 12`, pole
    /// `(2+2·1) + 2·4 = 12`, branch `2·6 = 12`.
    fn hyperbolic_completion() -> TrigonalCompletion {
        let v = |color, on_boundary| CompletionVertex { color, on_boundary };
        let e = |a, b, color, real| CompletionEdge { a, b, color, real };
        TrigonalCompletion {
            n: 1,
            vertices: vec![
                v(VColor::Circ, true),
                v(VColor::Mono(EColor::Dotted), true),
                v(VColor::Cross, false),
                v(VColor::Cross, false),
                v(VColor::Cross, false),
                v(VColor::Circ, false),
                v(VColor::Bullet, false),
            ],
            edges: vec![
                e(0, 1, EColor::Dotted, true),
                e(1, 0, EColor::Dotted, true),
                e(0, 6, EColor::Bold, false),
                e(1, 2, EColor::Dotted, false),
                e(2, 6, EColor::Solid, false),
                e(3, 6, EColor::Solid, false),
                e(4, 6, EColor::Solid, false),
                e(5, 3, EColor::Dotted, false),
                e(5, 4, EColor::Dotted, false),
                e(5, 6, EColor::Bold, false),
                e(5, 6, EColor::Bold, false),
            ],
            rotations: vec![
                vec![1, 2, 0],
                vec![0, 3, 1],
                vec![3, 4],
                vec![5, 7],
                vec![6, 8],
                vec![8, 10, 7, 9],
                vec![4, 10, 6, 9, 5, 2],
            ],
        }
    }

    #[test]
    fn hand_built_completion_is_valid() {
        let c = hyperbolic_completion();
        let bad = is_valid_completion(&c);
        assert!(bad.is_empty(), "violations: {bad:?}");
    }

    #[test]
    fn broken_divisibility_is_reported() {
        let mut c = hyperbolic_completion();
        // Turn a tangency into a pole: degree 2·2 is not divisible by 4.
        c.vertices[2].color = VColor::Circ;
        c.edges[3].color = EColor::Bold;
        let bad = is_valid_completion(&c);
        assert!(!bad.is_empty());
    }
}
