//! Trigonal curves on Hirzebruch surfaces via colored graphs on the disk.
//!
//! A trigonal curve `y³ + b₂(x)y + b₃(x)` over a degree-`n` base meets
//! each fiber in one or three real points, except at finitely many
//! vertical tangencies.  The fiberwise picture (the *L-scheme*) is encoded
//! as a colored vertex word on the boundary circle (the *real graph*), and
//! the curve is realizable if and only if that word extends to a colored
//! graph on the whole sphere satisfying a list of local conditions — the
//! preimage of the real line under the rationalized discriminant.  By
//! conjugation symmetry it suffices to build the extension on one closed
//! hemisphere, which is what [`search_completion`] does; an independent
//! checker re-validates candidates on the doubled sphere.
//!
//! Color dictionary used throughout: `×`-vertices sit between solid and
//! dotted edges (zeros of the discriminant), `∘`-vertices between dotted
//! and bold edges (poles, i.e. zeros of `b₃`), `•`-vertices between bold
//! and solid edges (zeros of `b₂`); dotted edges carry three real fiber
//! points, solid and bold edges one.

mod check;
mod search;
mod trace;

pub use check::is_valid_completion;
pub use search::{search_completion, SearchBudget, SearchResult};
pub use trace::{trace_trigonal_polynomial, TraceError, TrigonalPolynomial};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Edge colors of a trigonal graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EColor {
    Solid,
    Bold,
    Dotted,
}

/// Vertex colors: three essential types plus monochrome joints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VColor {
    /// `×`: between solid and dotted edges.
    Cross,
    /// `∘`: between dotted and bold edges.
    Circ,
    /// `•`: between bold and solid edges.
    Bullet,
    /// Joint inside a single edge color.
    Mono(EColor),
}

impl VColor {
    /// The two edge colors an essential vertex may touch.
    pub fn colors(self) -> Option<(EColor, EColor)> {
        match self {
            VColor::Cross => Some((EColor::Solid, EColor::Dotted)),
            VColor::Circ => Some((EColor::Dotted, EColor::Bold)),
            VColor::Bullet => Some((EColor::Bold, EColor::Solid)),
            VColor::Mono(_) => None,
        }
    }

    /// Whether edges of color `c` may end at this vertex.
    pub fn accepts(self, c: EColor) -> bool {
        match self {
            VColor::Mono(m) => m == c,
            v => {
                let (a, b) = v.colors().expect("essential");
                a == c || b == c
            }
        }
    }

    /// For an essential vertex, the companion color of `c`.
    pub fn other(self, c: EColor) -> Option<EColor> {
        let (a, b) = self.colors()?;
        if c == a {
            Some(b)
        } else if c == b {
            Some(a)
        } else {
            None
        }
    }

    /// Index 0/1/2 for ×/∘/• budgets; `None` for monochrome.
    pub fn budget_slot(self) -> Option<usize> {
        match self {
            VColor::Cross => Some(0),
            VColor::Circ => Some(1),
            VColor::Bullet => Some(2),
            VColor::Mono(_) => None,
        }
    }
}

/// A corner transition `c -> c'` walks the color cycle solid→dotted→bold
/// forwards (`true`) or backwards (`false`).
pub fn transition_sign(from: EColor, to: EColor) -> Option<bool> {
    use EColor::*;
    match (from, to) {
        (Solid, Dotted) | (Dotted, Bold) | (Bold, Solid) => Some(true),
        (Dotted, Solid) | (Bold, Dotted) | (Solid, Bold) => Some(false),
        _ => None,
    }
}

/// Which side of the persisting branch a vertical tangency happens on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Up,
    Down,
}

/// How many real points a fiber meets between tangencies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunKind {
    One,
    Three,
}

impl RunKind {
    fn edge(self) -> EColor {
        match self {
            RunKind::One => EColor::Solid,
            RunKind::Three => EColor::Dotted,
        }
    }
}

mod tag {
    use serde::{Deserialize, Serialize};

    /// Literal `"tangency"` discriminant for the event JSON form.
    #[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
    #[serde(rename_all = "snake_case")]
    pub enum TangencyTag {
        Tangency,
    }
}

fn default_len() -> usize {
    1
}

/// One entry of the fiberwise word over the base circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FiberEvent {
    Tangency {
        event: tag::TangencyTag,
        side: Side,
    },
    Run {
        run: RunKind,
        #[serde(default = "default_len")]
        length: usize,
    },
}

impl FiberEvent {
    /// Convenience constructor for a tangency event.
    pub fn tangency(side: Side) -> Self {
        FiberEvent::Tangency { event: tag::TangencyTag::Tangency, side }
    }

    /// Convenience constructor for a run.
    pub fn run(kind: RunKind, length: usize) -> Self {
        FiberEvent::Run { run: kind, length }
    }
}

/// The fiberwise topology of a trigonal curve over the base circle.
///
/// The word lists events in base order over the affine chart; the first
/// and last runs are the two tails of the same run through infinity.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrigonalLScheme {
    pub n: usize,
    pub word: Vec<FiberEvent>,
    #[serde(default)]
    pub source: String,
}

/// Error raised for malformed L-scheme words.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("base degree must be positive")]
    BadDegree,
    #[error("word must contain at least one run")]
    Empty,
    #[error("two tangencies with no fiber between them")]
    AdjacentTangencies,
    #[error("run kinds around tangency {0} do not alternate")]
    NoAlternation(usize),
    #[error("runs in the same gap disagree in kind")]
    MixedGap,
}

/// Boundary word of a trigonal graph: colored vertices on the circle with
/// the edge colors between them; a vertexless circle keeps only a color.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealGraph {
    pub n: usize,
    /// Vertex colors in cyclic order (all essential here).
    pub vertices: Vec<VColor>,
    /// `edges[i]` joins `vertices[i]` to `vertices[i + 1]` (cyclically).
    pub edges: Vec<EColor>,
    /// Color of the whole circle when there are no vertices.
    pub circle: Option<EColor>,
}

/// A candidate extension of a real graph to the closed upper hemisphere.
///
/// Vertex 0..boundary_len are the boundary vertices in cyclic order; the
/// rotation of a boundary vertex lists only its upper-side edges, starting
/// with the real edge on its left and ending with the real edge on its
/// right.  Interior rotations are full counterclockwise cycles.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrigonalCompletion {
    pub n: usize,
    pub vertices: Vec<CompletionVertex>,
    pub edges: Vec<CompletionEdge>,
    /// Edge ids in rotation order per vertex.
    pub rotations: Vec<Vec<usize>>,
}

/// Vertex record of a completion.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CompletionVertex {
    pub color: VColor,
    pub on_boundary: bool,
}

/// Edge record of a completion.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CompletionEdge {
    pub a: usize,
    pub b: usize,
    pub color: EColor,
    pub real: bool,
}

struct Gap {
    kind: RunKind,
    /// Effective side tags of the bounding tangencies differ.
    split: bool,
}

/// Normalize a word into tangency sides plus the gap between each pair.
fn gaps(ls: &TrigonalLScheme) -> Result<(Vec<Side>, Vec<Gap>, Option<RunKind>), WordError> {
    if ls.n == 0 {
        return Err(WordError::BadDegree);
    }
    let mut sides = Vec::new();
    // Runs seen since the previous tangency; index 0 collects the leading
    // tail which later merges with the trailing one.
    let mut runs: Vec<Vec<RunKind>> = vec![Vec::new()];
    for ev in &ls.word {
        match *ev {
            FiberEvent::Tangency { side, .. } => {
                sides.push(side);
                runs.push(Vec::new());
            }
            FiberEvent::Run { run, .. } => runs.last_mut().expect("nonempty").push(run),
        }
    }
    // Merge the two tails into the wrap-around gap.
    let head = runs.remove(0);
    if sides.is_empty() {
        let mut all = head;
        all.extend(runs.pop().unwrap_or_default());
        let kind = *all.first().ok_or(WordError::Empty)?;
        if all.iter().any(|&k| k != kind) {
            return Err(WordError::MixedGap);
        }
        return Ok((sides, Vec::new(), Some(kind)));
    }
    runs.last_mut().expect("nonempty").extend(head);
    let mut kinds = Vec::new();
    for gap in &runs {
        let kind = *gap.first().ok_or(WordError::AdjacentTangencies)?;
        if gap.iter().any(|&k| k != kind) {
            return Err(WordError::MixedGap);
        }
        kinds.push(kind);
    }
    // A tangency converts one real point into three and vice versa.
    for i in 0..kinds.len() {
        let prev = if i == 0 { kinds.len() - 1 } else { i - 1 };
        if kinds[prev] == kinds[i] {
            return Err(WordError::NoAlternation(i));
        }
    }
    let t = sides.len();
    let mut out = Vec::new();
    for i in 0..t {
        let s1 = sides[i];
        let s2 = sides[(i + 1) % t];
        // The fiber coordinate twists across infinity on odd-degree bases,
        // flipping the side comparison for the wrap-around gap.
        let wrap_flip = i + 1 == t && ls.n % 2 == 1;
        let split = (s1 != s2) != wrap_flip;
        out.push(Gap { kind: kinds[i], split });
    }
    Ok((sides, out, None))
}

/// Encode an L-scheme into its boundary real graph.
///
/// Each tangency becomes a `×`.  A gap whose bounding tangencies lie on
/// opposite sides of the persisting branch forces a pole of the
/// discriminant quotient inside it: a one-point gap receives `•–∘–•`
/// (solid outward, bold inward), a three-point gap a single `∘`.
/// Same-side gaps stay bare runs.
pub fn encode_real_graph(ls: &TrigonalLScheme) -> Result<RealGraph, WordError> {
    let (sides, gap_list, circle) = gaps(ls)?;
    if let Some(kind) = circle {
        return Ok(RealGraph { n: ls.n, vertices: Vec::new(), edges: Vec::new(), circle: Some(kind.edge()) });
    }
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for gap in gap_list.iter() {
        vertices.push(VColor::Cross);
        match (gap.kind, gap.split) {
            (RunKind::Three, false) | (RunKind::One, false) => edges.push(gap.kind.edge()),
            (RunKind::Three, true) => {
                edges.push(EColor::Dotted);
                vertices.push(VColor::Circ);
                edges.push(EColor::Dotted);
            }
            (RunKind::One, true) => {
                edges.push(EColor::Solid);
                vertices.push(VColor::Bullet);
                edges.push(EColor::Bold);
                vertices.push(VColor::Circ);
                edges.push(EColor::Bold);
                vertices.push(VColor::Bullet);
                edges.push(EColor::Solid);
            }
        }
    }
    let _ = sides;
    Ok(RealGraph { n: ls.n, vertices, edges, circle: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(parts: &[FiberEvent]) -> TrigonalLScheme {
        TrigonalLScheme { n: 1, word: parts.to_vec(), source: String::new() }
    }

    #[test]
    fn hyperbolic_word_encodes_to_dotted_circle() {
        let ls = word(&[FiberEvent::run(RunKind::Three, 1)]);
        let rg = encode_real_graph(&ls).expect("encode");
        assert!(rg.vertices.is_empty());
        assert_eq!(rg.circle, Some(EColor::Dotted));
    }

    #[test]
    fn opposite_side_one_point_gap_gets_full_pattern() {
        // Two tangencies; base degree odd, so the wrap comparison flips:
        // equal raw sides put the pole pattern in the wrap (three-point)
        // gap and leave the affine one-point gap bare.
        let ls = word(&[
            FiberEvent::run(RunKind::Three, 1),
            FiberEvent::tangency(Side::Up),
            FiberEvent::run(RunKind::One, 1),
            FiberEvent::tangency(Side::Up),
            FiberEvent::run(RunKind::Three, 1),
        ]);
        let rg = encode_real_graph(&ls).expect("encode");
        assert_eq!(rg.vertices, vec![VColor::Cross, VColor::Cross, VColor::Circ]);
        assert_eq!(rg.edges, vec![EColor::Solid, EColor::Dotted, EColor::Dotted]);
        // Flipping one raw side moves the pattern into the one-point gap.
        let ls2 = word(&[
            FiberEvent::run(RunKind::Three, 1),
            FiberEvent::tangency(Side::Up),
            FiberEvent::run(RunKind::One, 1),
            FiberEvent::tangency(Side::Down),
            FiberEvent::run(RunKind::Three, 1),
        ]);
        let rg2 = encode_real_graph(&ls2).expect("encode");
        assert_eq!(
            rg2.vertices,
            vec![VColor::Cross, VColor::Bullet, VColor::Circ, VColor::Bullet, VColor::Cross]
        );
        assert_eq!(
            rg2.edges,
            vec![EColor::Solid, EColor::Bold, EColor::Bold, EColor::Solid, EColor::Dotted]
        );
    }

    #[test]
    fn non_alternating_runs_rejected() {
        let ls = word(&[
            FiberEvent::run(RunKind::One, 1),
            FiberEvent::tangency(Side::Up),
            FiberEvent::run(RunKind::One, 1),
        ]);
        assert!(matches!(encode_real_graph(&ls), Err(WordError::NoAlternation(_))));
    }

    #[test]
    fn word_round_trips_through_json() {
        let ls = word(&[
            FiberEvent::run(RunKind::Three, 2),
            FiberEvent::tangency(Side::Up),
            FiberEvent::run(RunKind::One, 1),
            FiberEvent::tangency(Side::Down),
            FiberEvent::run(RunKind::Three, 1),
        ]);
        let js = serde_json::to_string(&ls).expect("serialize");
        assert!(js.contains("\"event\":\"tangency\""));
        assert!(js.contains("\"run\":\"three\""));
        let back: TrigonalLScheme = serde_json::from_str(&js).expect("parse");
        assert_eq!(back.word, ls.word);
    }
}
