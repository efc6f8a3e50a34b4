//! The catalog of known realization and prohibition records, loaded from
//! the structured text tables under `data/`, together with the consistency
//! checks tying the records to the combinatorial verdicts.

use crate::enumerate::{dp1_refined_schemes, dp2_schemes};
use crate::notation::{parse_dp1_refined, parse_dp2, print_scheme};
use crate::obstruct::{dp1_refined_verdict, dp2_verdict, ObstructionConfig};
use crate::scheme::{Scheme, SurfaceKind};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

const REALIZED_DEG3: &str = include_str!("../data/realized_deg3.txt");
const KNOTTED_DEG3: &str = include_str!("../data/knotted_deg3.txt");
const SYMPLECTIC_DEG3: &str = include_str!("../data/symplectic_deg3.txt");
const REALIZED_DEG1_CLASS2: &str = include_str!("../data/realized_deg1_class2.txt");
const FAMILIES: &str = include_str!("../data/families.txt");

/// Classification of a scheme relative to the catalog and the verdicts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Status {
    /// Realized by a curve invariant under a holomorphic involution.
    RealizedSymmetric,
    /// Realized by an algebraic curve.
    Realized,
    /// Realized symplectically, no algebraic construction known.
    SymplecticOnly,
    /// Passes every prohibition criterion but no construction is recorded.
    AdmissibleOpen,
    /// Ruled out (by a criterion or by a recorded prohibition).
    Prohibited,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::RealizedSymmetric => "realized-symmetric",
            Status::Realized => "realized",
            Status::SymplecticOnly => "symplectic-only",
            Status::AdmissibleOpen => "admissible-open",
            Status::Prohibited => "prohibited",
        };
        f.write_str(s)
    }
}

/// Realization labels attached to catalog cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Label {
    /// `∘`: symmetric realization on the four-sphere surface.
    Circ,
    /// `∘*`: symmetric realization for the smaller surfaces.
    CircStar,
    /// `†`: realization on the four-sphere surface.
    Dagger,
    /// `†*`: realization for the smaller surfaces.
    DaggerStar,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Label::Circ => "∘",
            Label::CircStar => "∘*",
            Label::Dagger => "†",
            Label::DaggerStar => "†*",
        };
        f.write_str(s)
    }
}

/// A single record: a scheme on a specific surface and class with a known
/// status.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    /// Canonical scheme code (equality key).
    pub scheme: String,
    /// Human-readable notation.
    pub display: String,
    pub surface: SurfaceKind,
    pub k: usize,
    pub d: i64,
    pub status: Status,
    pub labels: Vec<Label>,
    /// Identifier of the source table.
    pub provenance: &'static str,
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown table id {0:?}")]
    UnknownTable(String),
    #[error("scheme does not parse: {0}")]
    BadScheme(#[from] crate::notation::ParseError),
    #[error("unknown family row {0}")]
    UnknownRow(usize),
    #[error("family constraint violated: {0}")]
    Constraint(String),
}

/// One row of the non-symmetric family table: sphere templates over the
/// parameters `k1, k2, h1..h4`, plus the extra conditions under which the
/// expanded scheme admits no symmetric realization.
#[derive(Clone, Debug)]
pub struct FamilyRow {
    pub row: usize,
    /// Template for the first sphere.
    pub s1: String,
    /// Template for the second sphere (spheres three and four always carry
    /// the chains `N(h3,0)` and `N(h4,0)`).
    pub s2: String,
    /// Non-symmetry conditions in the condition mini-language.
    pub conditions: Vec<String>,
}

/// Parameters of a family expansion: the class and the splitting of
/// `d - 4` into `k1 + k2` and of `d - 1` into `h1 + .. + h4`.
#[derive(Clone, Copy, Debug)]
pub struct FamilyParams {
    pub d: i64,
    pub k1: i64,
    pub k2: i64,
    pub h: [i64; 4],
}

/// An expanded family member.
#[derive(Clone, Debug)]
pub struct FamilyExpansion {
    pub scheme: Scheme,
    pub display: String,
    /// True when the row's extra conditions hold, in which case every real
    /// curve realizing the scheme is non-symmetric.
    pub forced_nonsymmetric: bool,
}

/// One check of the validation report.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

/// Outcome of `Catalog::validate`.
#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    /// Entries whose recorded status overrides the combinatorial verdict
    /// (informational, not failures).
    pub discrepancies: Vec<String>,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Per-table summary for `catalog report`.
#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub table: String,
    /// Number of cells (records in the source layout, before per-k
    /// expansion) or rows for pattern tables.
    pub cells: usize,
    pub lines: Vec<String>,
}

fn data_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// The full catalog.
pub struct Catalog {
    entries: Vec<CatalogEntry>,
    /// Realized refined schemes as (refined code, class) pairs.
    refined_realized: BTreeSet<(String, i64)>,
    /// Cell counts per table id.
    cell_counts: BTreeMap<&'static str, usize>,
    /// Non-symmetric family rows.
    families: Vec<FamilyRow>,
}

impl Catalog {
    pub fn new() -> Self {
        let mut entries = Vec::new();
        let mut cell_counts = BTreeMap::new();

        // Realization table for d = 3.
        let mut realized_cells = 0;
        for line in data_lines(REALIZED_DEG3) {
            let fields: Vec<&str> = line.split(';').map(str::trim).collect();
            let (text, kmin, labels) = (fields[0], fields[1], fields[2]);
            let kmin: usize = kmin.parse().expect("kmin must be a number");
            let labels: Vec<Label> = labels
                .split_whitespace()
                .map(|t| match t {
                    "o" => Label::Circ,
                    "o*" => Label::CircStar,
                    "t" => Label::Dagger,
                    "t*" => Label::DaggerStar,
                    other => panic!("unknown label token {other:?}"),
                })
                .collect();
            realized_cells += 1;
            let four = labels.iter().find(|l| matches!(l, Label::Circ | Label::Dagger));
            if let Some(l) = four {
                let status = if matches!(l, Label::Circ) {
                    Status::RealizedSymmetric
                } else {
                    Status::Realized
                };
                entries.push(Self::dp2_entry(text, 4, 3, status, labels.clone(), "realized3"));
            }
            let star = labels.iter().find(|l| matches!(l, Label::CircStar | Label::DaggerStar));
            if let Some(l) = star {
                let status = if matches!(l, Label::CircStar) {
                    Status::RealizedSymmetric
                } else {
                    Status::Realized
                };
                for k in kmin..=3 {
                    entries.push(Self::dp2_entry(text, k, 3, status, labels.clone(), "realized3"));
                }
            }
        }
        cell_counts.insert("realized3", realized_cells);

        // Knot-theoretic prohibitions for d = 3.
        let mut knot_cells = 0;
        for line in data_lines(KNOTTED_DEG3) {
            let fields: Vec<&str> = line.split(';').map(str::trim).collect();
            knot_cells += 1;
            for k in fields[1].split(',').map(str::trim) {
                let k: usize = k.parse().expect("k must be a number");
                entries.push(Self::dp2_entry(fields[0], k, 3, Status::Prohibited, vec![], "knot4"));
            }
        }
        cell_counts.insert("knot4", knot_cells);

        // Symplectic-only records.
        let mut symplectic_cells = 0;
        for line in data_lines(SYMPLECTIC_DEG3) {
            let fields: Vec<&str> = line.split(';').map(str::trim).collect();
            let k: usize = fields[1].parse().expect("k must be a number");
            let d: i64 = fields[2].parse().expect("d must be a number");
            symplectic_cells += 1;
            entries.push(Self::dp2_entry(fields[0], k, d, Status::SymplecticOnly, vec![], "symplectic"));
        }
        cell_counts.insert("symplectic", symplectic_cells);

        // Realized refined schemes for the degree-1 surface, d = 2.
        let mut refined_realized = BTreeSet::new();
        let mut refined_rows = 0;
        for line in data_lines(REALIZED_DEG1_CLASS2) {
            refined_rows += 1;
            let fields: Vec<&str> = line.split(';').map(str::trim).collect();
            let ranged = fields.last().unwrap().starts_with("range=");
            let patterns = &fields[1..fields.len() - usize::from(ranged)];
            let cap: i64 = if ranged {
                let spec = fields.last().unwrap();
                spec.rsplit("<=").next().unwrap().parse().expect("range cap")
            } else {
                0
            };
            let fill = |pat: &str, a: i64, b: i64, c: i64| {
                pat.replace("{a}", &a.to_string())
                    .replace("{b}", &b.to_string())
                    .replace("{c}", &c.to_string())
            };
            for a in 0..=cap {
                for b in 0..=(cap - a) {
                    for c in 0..=(cap - a - b) {
                        for pat in patterns {
                            let text = fill(pat, a, b, c);
                            let r = parse_dp1_refined(&text).expect("refined pattern parses");
                            refined_realized.insert((r.code(), 2));
                        }
                    }
                }
            }
        }
        cell_counts.insert("lastchapter", refined_rows);

        // Non-symmetric family rows.
        let families: Vec<FamilyRow> = data_lines(FAMILIES)
            .map(|line| {
                let fields: Vec<&str> = line.split('|').map(str::trim).collect();
                FamilyRow {
                    row: fields[0].parse().expect("row number"),
                    s1: fields[1].to_string(),
                    s2: fields[2].to_string(),
                    conditions: fields[3].split(';').map(|c| c.trim().to_string()).collect(),
                }
            })
            .collect();
        cell_counts.insert("table1", families.len());

        Catalog { entries, refined_realized, cell_counts, families }
    }

    fn dp2_entry(
        text: &str,
        k: usize,
        d: i64,
        status: Status,
        labels: Vec<Label>,
        provenance: &'static str,
    ) -> CatalogEntry {
        let scheme = parse_dp2(text, k).expect("catalog scheme parses");
        CatalogEntry {
            scheme: scheme.code(),
            display: print_scheme(&scheme),
            surface: SurfaceKind::DelPezzo2,
            k,
            d,
            status,
            labels,
            provenance,
        }
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    /// Records matching the given scheme, surface and class.
    pub fn records(&self, scheme: &Scheme, d: i64) -> Vec<&CatalogEntry> {
        let code = scheme.code();
        self.entries
            .iter()
            .filter(|e| {
                e.surface == scheme.kind() && e.k == scheme.k() && e.d == d && e.scheme == code
            })
            .collect()
    }

    /// Catalog status of a plain scheme: an explicit record wins, then the
    /// combinatorial verdict, then `AdmissibleOpen`.  On the degree-1
    /// surface every admissible scheme in class ≤ 3 is realized by the
    /// classification, so those report `Realized` instead of open.
    pub fn status(&self, scheme: &Scheme, d: i64, cfg: &ObstructionConfig) -> Status {
        let records = self.records(scheme, d);
        if let Some(best) = records.iter().map(|e| e.status).min() {
            return best;
        }
        let prohibited = match scheme.kind() {
            SurfaceKind::DelPezzo2 => dp2_verdict(scheme, d, cfg).0.is_prohibited(),
            SurfaceKind::DelPezzo1 => crate::obstruct::dp1_verdict(scheme, d).0.is_prohibited(),
        };
        if prohibited {
            Status::Prohibited
        } else if scheme.kind() == SurfaceKind::DelPezzo1 && (1..=3).contains(&d) {
            Status::Realized
        } else {
            Status::AdmissibleOpen
        }
    }

    /// Catalog status of a refined degree-1 scheme.
    pub fn refined_status(&self, r: &crate::scheme::RefinedScheme, d: i64) -> Status {
        if dp1_refined_verdict(r, d).0.is_prohibited() {
            Status::Prohibited
        } else if (1..=3).contains(&d) {
            Status::Realized
        } else if self.refined_realized(&r.code(), d) {
            Status::Realized
        } else {
            Status::AdmissibleOpen
        }
    }

    /// Whether a refined scheme is recorded as realized in the given class.
    pub fn refined_realized(&self, code: &str, d: i64) -> bool {
        self.refined_realized.contains(&(code.to_string(), d))
    }

    /// Consistency checks tying the tables to the combinatorial verdicts.
    pub fn validate(&self, cfg: &ObstructionConfig) -> ValidationReport {
        let mut checks = Vec::new();
        let mut discrepancies = Vec::new();

        // Admissible scheme codes at d = 3, l = 8 for each k.
        let admissible: Vec<BTreeSet<String>> = (0..=4)
            .map(|k| {
                if k == 0 {
                    return BTreeSet::new();
                }
                dp2_schemes(k, 8)
                    .expect("enumeration in range")
                    .iter()
                    .filter(|s| !dp2_verdict(s, 3, cfg).0.is_prohibited())
                    .map(|s| s.code())
                    .collect()
            })
            .collect();

        let realized4: BTreeSet<&str> = self
            .entries
            .iter()
            .filter(|e| {
                e.k == 4
                    && e.d == 3
                    && matches!(e.status, Status::Realized | Status::RealizedSymmetric)
            })
            .map(|e| e.scheme.as_str())
            .collect();
        let symmetric4 = self
            .entries
            .iter()
            .filter(|e| e.k == 4 && e.d == 3 && e.status == Status::RealizedSymmetric)
            .count();
        checks.push(Check {
            name: "realized4_count",
            pass: realized4.len() == 48,
            detail: format!("{} realized records at k=4 (want 48)", realized4.len()),
        });
        checks.push(Check {
            name: "symmetric4_count",
            pass: symmetric4 == 19,
            detail: format!("{symmetric4} symmetric records at k=4 (want 19)"),
        });
        checks.push(Check {
            name: "admissible4_count",
            pass: admissible[4].len() == 74,
            detail: format!("{} admissible schemes at k=4 (want 74)", admissible[4].len()),
        });
        let missing: Vec<&&str> =
            realized4.iter().filter(|c| !admissible[4].contains(**c)).collect();
        checks.push(Check {
            name: "realized4_admissible",
            pass: missing.is_empty(),
            detail: if missing.is_empty() {
                "all realized k=4 schemes are admissible".into()
            } else {
                format!("realized but not admissible: {missing:?}")
            },
        });

        let star_expect = [(3usize, 49usize, 6usize), (2, 38, 6), (1, 17, 2)];
        for (k, want, want_sym) in star_expect {
            let starred: Vec<&CatalogEntry> = self
                .entries
                .iter()
                .filter(|e| {
                    e.k == k
                        && e.d == 3
                        && matches!(e.status, Status::Realized | Status::RealizedSymmetric)
                })
                .collect();
            let sym = starred.iter().filter(|e| e.status == Status::RealizedSymmetric).count();
            let name: &'static str = match k {
                3 => "starred_k3",
                2 => "starred_k2",
                _ => "starred_k1",
            };
            checks.push(Check {
                name,
                pass: starred.len() == want && sym == want_sym,
                detail: format!(
                    "k={k}: {} realized ({sym} symmetric), want {want} ({want_sym})",
                    starred.len()
                ),
            });
            let bad: Vec<&str> = starred
                .iter()
                .filter(|e| !admissible[k].contains(&e.scheme))
                .map(|e| e.display.as_str())
                .collect();
            let name: &'static str = match k {
                3 => "realized_admissible_k3",
                2 => "realized_admissible_k2",
                _ => "realized_admissible_k1",
            };
            checks.push(Check {
                name,
                pass: bad.is_empty(),
                detail: if bad.is_empty() {
                    format!("k={k}: realized set is admissible")
                } else {
                    format!("k={k}: realized but not admissible: {bad:?}")
                },
            });
        }

        // Symplectic-only records must be admissible as well.
        let bad: Vec<&str> = self
            .entries
            .iter()
            .filter(|e| e.status == Status::SymplecticOnly && !admissible[e.k].contains(&e.scheme))
            .map(|e| e.display.as_str())
            .collect();
        checks.push(Check {
            name: "symplectic_admissible",
            pass: bad.is_empty(),
            detail: if bad.is_empty() {
                "symplectic-only records are admissible".into()
            } else {
                format!("symplectic-only but not admissible: {bad:?}")
            },
        });

        // Every refined scheme in the class-2 construction table must pass
        // the refined verdict.
        let mut refined_admissible = BTreeSet::new();
        for l in 0..=3usize {
            for r in dp1_refined_schemes(l).expect("refined enumeration in range") {
                if !dp1_refined_verdict(&r, 2).0.is_prohibited() {
                    refined_admissible.insert(r.code());
                }
            }
        }
        let bad: Vec<&str> = self
            .refined_realized
            .iter()
            .filter(|(c, d)| *d == 2 && !refined_admissible.contains(c))
            .map(|(c, _)| c.as_str())
            .collect();
        checks.push(Check {
            name: "refined_class2_table",
            pass: bad.is_empty(),
            detail: if bad.is_empty() {
                format!(
                    "all {} tabulated refined class-2 schemes are admissible ({} admissible total)",
                    self.refined_realized.iter().filter(|(_, d)| *d == 2).count(),
                    refined_admissible.len()
                )
            } else {
                format!("tabulated but prohibited: {bad:?}")
            },
        });

        // Knot-table consistency: a cell must never be listed as realized at
        // the same k, and its four-sphere verdict is reported (the table's
        // non-realizability claims exceed the criteria for most cells).
        let mut clashes = Vec::new();
        let mut open_at_four = BTreeSet::new();
        for e in self.entries.iter().filter(|e| e.provenance == "knot4") {
            let clash = self.entries.iter().any(|r| {
                r.provenance == "realized3" && r.k == e.k && r.scheme == e.scheme
            });
            if clash {
                clashes.push(format!("{} (k={})", e.display, e.k));
            }
            let parts = e.display.matches(':').count() + 1;
            let padded = format!("{}{}", e.display, ":0".repeat(4 - parts));
            let four = parse_dp2(&padded, 4).expect("knot scheme pads to four spheres");
            if !dp2_verdict(&four, 3, cfg).0.is_prohibited() {
                open_at_four.insert(e.display.clone());
            }
        }
        checks.push(Check {
            name: "knot4_consistency",
            pass: clashes.is_empty(),
            detail: if clashes.is_empty() {
                format!(
                    "no knot cell is recorded as realized; {} cells stay admissible at k=4: {:?}",
                    open_at_four.len(),
                    open_at_four
                )
            } else {
                format!("knot cells also recorded as realized: {clashes:?}")
            },
        });

        // Recorded prohibitions the combinatorial criteria cannot see.
        for e in &self.entries {
            if e.status == Status::Prohibited && e.d == 3 && admissible[e.k].contains(&e.scheme) {
                discrepancies.push(format!(
                    "{} (k={}): recorded prohibition overrides admissible verdict [{}]",
                    e.display, e.k, e.provenance
                ));
            }
        }

        ValidationReport { checks, discrepancies }
    }

    /// Summary of a source table.
    pub fn report(&self, table: &str) -> Result<TableReport, CatalogError> {
        let cells = *self
            .cell_counts
            .get(table)
            .ok_or_else(|| CatalogError::UnknownTable(table.to_string()))?;
        let lines = match table {
            "realized3" => self
                .entries
                .iter()
                .filter(|e| e.provenance == "realized3" && e.k == 4)
                .map(|e| format!("{} [{}]", e.display, e.status))
                .collect(),
            "knot4" => self
                .entries
                .iter()
                .filter(|e| e.provenance == "knot4")
                .map(|e| format!("{} (k={})", e.display, e.k))
                .collect(),
            "lastchapter" => self
                .refined_realized
                .iter()
                .map(|(code, d)| format!("{code} (d={d})"))
                .collect(),
            "table1" => data_lines(FAMILIES).map(str::to_string).collect(),
            _ => Vec::new(),
        };
        Ok(TableReport { table: table.to_string(), cells, lines })
    }

    /// The non-symmetric family rows.
    pub fn family_rows(&self) -> &[FamilyRow] {
        &self.families
    }

    /// Expand a family row at the given parameters.  The base constraints
    /// (`d ≥ 5`, `k1 + k2 = d - 4`, `h1 + .. + h4 = d - 1`, `h3` and `h4`
    /// odd or zero) are always enforced; the row's extra conditions decide
    /// `forced_nonsymmetric`.
    pub fn expand_family(&self, row: usize, p: FamilyParams) -> Result<FamilyExpansion, CatalogError> {
        let fam = self
            .families
            .iter()
            .find(|f| f.row == row)
            .ok_or(CatalogError::UnknownRow(row))?;
        if p.d < 5 {
            return Err(CatalogError::Constraint(format!("class {} below 5", p.d)));
        }
        if p.k1 < 0 || p.k2 < 0 || p.h.iter().any(|&h| h < 0) {
            return Err(CatalogError::Constraint("negative parameter".to_string()));
        }
        if p.k1 + p.k2 != p.d - 4 {
            return Err(CatalogError::Constraint(format!(
                "k1 + k2 = {} must equal d - 4 = {}",
                p.k1 + p.k2,
                p.d - 4
            )));
        }
        if p.h.iter().sum::<i64>() != p.d - 1 {
            return Err(CatalogError::Constraint(format!(
                "h1 + h2 + h3 + h4 = {} must equal d - 1 = {}",
                p.h.iter().sum::<i64>(),
                p.d - 1
            )));
        }
        for (name, h) in [("h3", p.h[2]), ("h4", p.h[3])] {
            if h != 0 && h % 2 == 0 {
                return Err(CatalogError::Constraint(format!("{name} = {h} must be odd or zero")));
            }
        }
        let vars = family_vars(&p);
        let s1 = substitute(&fam.s1, &vars)?;
        let s2 = substitute(&fam.s2, &vars)?;
        let text = format!("{s1}:{s2}:N({},0):N({},0)", p.h[2], p.h[3]);
        let scheme = parse_dp2(&text, 4)?;
        let forced_nonsymmetric = fam
            .conditions
            .iter()
            .all(|c| eval_condition(c, &vars).expect("shipped condition parses"));
        let display = print_scheme(&scheme);
        Ok(FamilyExpansion { scheme, display, forced_nonsymmetric })
    }
}

fn family_vars(p: &FamilyParams) -> BTreeMap<&'static str, i64> {
    BTreeMap::from([
        ("d", p.d),
        ("k1", p.k1),
        ("k2", p.k2),
        ("h1", p.h[0]),
        ("h2", p.h[1]),
        ("h3", p.h[2]),
        ("h4", p.h[3]),
    ])
}

/// Replace `{expr}` placeholders (a variable optionally plus a constant)
/// with their values.
fn substitute(template: &str, vars: &BTreeMap<&'static str, i64>) -> Result<String, CatalogError> {
    let mut out = String::new();
    let mut rest = template;
    while let Some(start) = rest.find('{') {
        out.push_str(&rest[..start]);
        let end = rest[start..]
            .find('}')
            .map(|e| start + e)
            .ok_or_else(|| CatalogError::Constraint(format!("unclosed placeholder in {template:?}")))?;
        let expr = &rest[start + 1..end];
        let mut toks = Tokens::new(expr);
        let value = parse_sum(&mut toks, vars)
            .ok_or_else(|| CatalogError::Constraint(format!("bad placeholder {expr:?}")))?;
        out.push_str(&value.to_string());
        rest = &rest[end + 1..];
    }
    out.push_str(rest);
    Ok(out)
}

/// Evaluate one condition of the family mini-language:
///
/// ```text
/// cond   := "if" clause "then" clause | clause
/// clause := term ("and" term | "or" term)*
/// term   := "(" clause ")" | sum test
/// test   := ("=" | "!=" | ">" | "<") sum | "odd" | "even" | ("in" | "notin") "{" int ("," int)* "}"
/// sum    := (var | int) ("+" (var | int))*
/// ```
fn eval_condition(text: &str, vars: &BTreeMap<&'static str, i64>) -> Option<bool> {
    let mut toks = Tokens::new(text);
    let value = if toks.eat("if") {
        let hyp = parse_clause(&mut toks, vars)?;
        if !toks.eat("then") {
            return None;
        }
        let conc = parse_clause(&mut toks, vars)?;
        !hyp || conc
    } else {
        parse_clause(&mut toks, vars)?
    };
    toks.done().then_some(value)
}

struct Tokens {
    items: Vec<String>,
    pos: usize,
}

impl Tokens {
    fn new(text: &str) -> Self {
        let mut items = Vec::new();
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() {
                i += 1;
            } else if c.is_alphanumeric() {
                let mut word = String::new();
                while i < chars.len() && chars[i].is_alphanumeric() {
                    word.push(chars[i]);
                    i += 1;
                }
                items.push(word);
            } else if c == '!' && chars.get(i + 1) == Some(&'=') {
                items.push("!=".to_string());
                i += 2;
            } else {
                items.push(c.to_string());
                i += 1;
            }
        }
        Tokens { items, pos: 0 }
    }

    fn peek(&self) -> Option<&str> {
        self.items.get(self.pos).map(String::as_str)
    }

    fn eat(&mut self, tok: &str) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn next(&mut self) -> Option<&str> {
        let item = self.items.get(self.pos)?;
        self.pos += 1;
        Some(item)
    }

    fn done(&self) -> bool {
        self.pos == self.items.len()
    }
}

fn parse_clause(toks: &mut Tokens, vars: &BTreeMap<&'static str, i64>) -> Option<bool> {
    let mut value = parse_term(toks, vars)?;
    loop {
        if toks.eat("and") {
            value &= parse_term(toks, vars)?;
        } else if toks.eat("or") {
            value |= parse_term(toks, vars)?;
        } else {
            return Some(value);
        }
    }
}

fn parse_term(toks: &mut Tokens, vars: &BTreeMap<&'static str, i64>) -> Option<bool> {
    if toks.eat("(") {
        let value = parse_clause(toks, vars)?;
        toks.eat(")").then_some(value)
    } else {
        let lhs = parse_sum(toks, vars)?;
        let op = toks.next()?.to_string();
        match op.as_str() {
            "=" => Some(lhs == parse_sum(toks, vars)?),
            "!=" => Some(lhs != parse_sum(toks, vars)?),
            ">" => Some(lhs > parse_sum(toks, vars)?),
            "<" => Some(lhs < parse_sum(toks, vars)?),
            "odd" => Some(lhs % 2 != 0),
            "even" => Some(lhs % 2 == 0),
            op @ ("in" | "notin") => {
                let member = op == "in";
                if !toks.eat("{") {
                    return None;
                }
                let mut found = false;
                loop {
                    found |= lhs == parse_sum(toks, vars)?;
                    if !toks.eat(",") {
                        break;
                    }
                }
                toks.eat("}").then_some(found == member)
            }
            _ => None,
        }
    }
}

fn parse_sum(toks: &mut Tokens, vars: &BTreeMap<&'static str, i64>) -> Option<i64> {
    let mut total = parse_atom(toks, vars)?;
    while toks.eat("+") {
        total += parse_atom(toks, vars)?;
    }
    Some(total)
}

fn parse_atom(toks: &mut Tokens, vars: &BTreeMap<&'static str, i64>) -> Option<i64> {
    let tok = toks.next()?;
    if let Ok(n) = tok.parse::<i64>() {
        Some(n)
    } else {
        vars.get(tok).copied()
    }
}

impl Default for Catalog {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_passes_on_shipped_data() {
        let cat = Catalog::new();
        let report = cat.validate(&ObstructionConfig::default());
        for c in &report.checks {
            assert!(c.pass, "{}: {}", c.name, c.detail);
        }
        // Every knot-derived prohibition is invisible to the criteria and
        // must therefore be flagged (10 cells over 16 per-k records).
        assert_eq!(report.discrepancies.len(), 16);
    }

    #[test]
    fn status_precedence() {
        let cat = Catalog::new();
        let cfg = ObstructionConfig::default();
        let s = parse_dp2("2:2:2:2", 4).unwrap();
        assert_eq!(cat.status(&s, 3, &cfg), Status::RealizedSymmetric);
        let s = parse_dp2("2+<1>+<1>+<1>", 4).unwrap();
        assert_eq!(cat.status(&s, 3, &cfg), Status::SymplecticOnly);
        let s = parse_dp2("<1>+<1>+<1>+<1>", 3).unwrap();
        assert_eq!(cat.status(&s, 3, &cfg), Status::Prohibited); // knot record
        let s = parse_dp2("<1>+<1>+<1>+<1>", 4).unwrap();
        assert_eq!(cat.status(&s, 3, &cfg), Status::Prohibited); // criterion
        let s = parse_dp2("9:0:0:0", 4).unwrap();
        assert_eq!(cat.status(&s, 3, &cfg), Status::Prohibited);
    }

    #[test]
    fn family_expansion_examples() {
        let cat = Catalog::new();
        let p = FamilyParams { d: 5, k1: 0, k2: 1, h: [1, 2, 1, 0] };
        let e = cat.expand_family(1, p).unwrap();
        assert!(e.forced_nonsymmetric);
        assert_eq!(e.scheme.components(), 11); // 2d + 1
        let want = parse_dp2("1+<1>:1+<1+<1>>+<1>:1:0", 4).unwrap();
        assert_eq!(e.scheme.code(), want.code());

        // h2 = 1 violates an extra condition but not a base constraint.
        let p = FamilyParams { d: 5, k1: 0, k2: 1, h: [2, 1, 1, 0] };
        let e = cat.expand_family(1, p).unwrap();
        assert!(!e.forced_nonsymmetric);

        // Base constraints are hard errors.
        let p = FamilyParams { d: 4, k1: 0, k2: 0, h: [1, 1, 1, 0] };
        assert!(matches!(cat.expand_family(1, p), Err(CatalogError::Constraint(_))));
        let p = FamilyParams { d: 5, k1: 0, k2: 1, h: [1, 1, 2, 0] };
        assert!(matches!(cat.expand_family(1, p), Err(CatalogError::Constraint(_))));
        let p = FamilyParams { d: 5, k1: 0, k2: 1, h: [1, 2, 1, 0] };
        assert!(matches!(cat.expand_family(9, p), Err(CatalogError::UnknownRow(9))));
    }

    #[test]
    fn forced_nonsymmetric_matches_mirror_freeness() {
        // When the extra conditions hold, the expansion must carry the
        // maximal 2d+1 ovals with no mirror-symmetric sphere; sweep all
        // rows over a parameter grid and check both directions' witness
        // properties on the forced side.
        let cat = Catalog::new();
        let mut forced = 0;
        for d in 5..=9i64 {
            for k1 in 0..=(d - 4) {
                let k2 = d - 4 - k1;
                for h1 in 0..=(d - 1) {
                    for h2 in 0..=(d - 1 - h1) {
                        for h3 in 0..=(d - 1 - h1 - h2) {
                            let h4 = d - 1 - h1 - h2 - h3;
                            if (h3 != 0 && h3 % 2 == 0) || (h4 != 0 && h4 % 2 == 0) {
                                continue;
                            }
                            let p = FamilyParams { d, k1, k2, h: [h1, h2, h3, h4] };
                            for row in 1..=8 {
                                let e = cat.expand_family(row, p).unwrap();
                                if e.forced_nonsymmetric {
                                    forced += 1;
                                    assert_eq!(
                                        e.scheme.components() as i64,
                                        2 * d + 1,
                                        "row {row} {p:?}"
                                    );
                                    assert!(
                                        e.scheme.spheres().iter().all(|a| !a.has_mirror()),
                                        "row {row} {p:?}: {}",
                                        e.display
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
        assert!(forced > 50, "expected a rich forced set, got {forced}");
    }

    #[test]
    fn reports_have_expected_sizes() {
        let cat = Catalog::new();
        assert_eq!(cat.report("realized3").unwrap().cells, 55);
        assert_eq!(cat.report("knot4").unwrap().cells, 10);
        assert_eq!(cat.report("lastchapter").unwrap().cells, 2);
        assert_eq!(cat.report("table1").unwrap().cells, 8);
        assert!(cat.report("unknown").is_err());
    }
}
