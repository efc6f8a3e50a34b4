//! Exhaustive enumeration of schemes by oval count.
//!
//! Everything is generated from rooted forests: a sphere arrangement class
//! is a rooted forest up to re-rooting of its region tree (deduplicated by
//! canonical unrooted code), a degree-2 scheme is a multiset of `k`
//! arrangements, and a degree-1 scheme adds a rooted forest on `RP²` plus an
//! optional pseudo-line.

use crate::scheme::{forest_code, OvalTree, RefinedScheme, Scheme, SphereArrangement};
use std::collections::HashSet;
use thiserror::Error;

/// Hard cap on total component count for exhaustive generation.
pub const MAX_COMPONENTS: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumError {
    #[error("component count {0} exceeds the generation cap {MAX_COMPONENTS}")]
    TooLarge(usize),
    #[error("k must be between {min} and 4, got {got}")]
    BadK { min: usize, got: usize },
    #[error("refined enumeration is only defined for k = 4")]
    RefinedNeedsK4,
}

/// All rooted trees with `n` ovals, in canonical code order.
fn rooted_trees(n: usize) -> Vec<OvalTree> {
    assert!(n >= 1);
    let forests = rooted_forests(n - 1);
    forests.into_iter().map(OvalTree::with_children).collect()
}

/// All rooted forests with `n` ovals total (canonical: trees sorted by code).
pub fn rooted_forests(n: usize) -> Vec<Vec<OvalTree>> {
    // Multisets of rooted trees summing to n, generated with a
    // non-decreasing (size, code) key to avoid duplicates.
    fn rec(remaining: usize, min_key: &(usize, String), out: &mut Vec<Vec<OvalTree>>, acc: &mut Vec<OvalTree>) {
        if remaining == 0 {
            out.push(acc.clone());
            return;
        }
        for size in 1..=remaining {
            if size < min_key.0 {
                continue;
            }
            for t in rooted_trees(size) {
                let key = (size, t.code());
                if size == min_key.0 && key.1 < min_key.1 {
                    continue;
                }
                acc.push(t);
                rec(remaining - size, &key, out, acc);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut acc = Vec::new();
    rec(n, &(0, String::new()), &mut out, &mut acc);
    out
}

/// All sphere arrangement classes with `l` ovals, sorted by code.
pub fn sphere_arrangements(l: usize) -> Result<Vec<SphereArrangement>, EnumError> {
    if l > MAX_COMPONENTS {
        return Err(EnumError::TooLarge(l));
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for forest in rooted_forests(l) {
        let a = SphereArrangement::from_forest(&forest);
        if seen.insert(a.code().to_string()) {
            out.push(a);
        }
    }
    out.sort_by(|a, b| a.code().cmp(b.code()));
    Ok(out)
}

/// Multisets of `k` sphere arrangements with `l` ovals in total.
fn sphere_multisets(k: usize, l: usize) -> Result<Vec<Vec<SphereArrangement>>, EnumError> {
    if l > MAX_COMPONENTS {
        return Err(EnumError::TooLarge(l));
    }
    let by_size: Vec<Vec<SphereArrangement>> =
        (0..=l).map(|n| sphere_arrangements(n)).collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    let mut acc: Vec<SphereArrangement> = Vec::new();
    // Non-increasing key (ovals desc, code asc) mirrors the scheme's
    // canonical sphere order.
    fn key(a: &SphereArrangement) -> (std::cmp::Reverse<usize>, String) {
        (std::cmp::Reverse(a.ovals()), a.code().to_string())
    }
    fn rec(
        by_size: &[Vec<SphereArrangement>],
        slots: usize,
        remaining: usize,
        acc: &mut Vec<SphereArrangement>,
        out: &mut Vec<Vec<SphereArrangement>>,
    ) {
        if slots == 0 {
            if remaining == 0 {
                out.push(acc.clone());
            }
            return;
        }
        let max_size = acc.last().map_or(remaining, |p| p.ovals().min(remaining));
        for size in (0..=max_size).rev() {
            if size * slots < remaining {
                break; // sizes are non-increasing; cannot reach the total
            }
            for a in &by_size[size] {
                if let Some(prev) = acc.last() {
                    if key(a) < key(prev) {
                        continue;
                    }
                }
                acc.push(a.clone());
                rec(by_size, slots - 1, remaining - size, acc, out);
                acc.pop();
            }
        }
    }
    rec(&by_size, k, l, &mut acc, &mut out);
    Ok(out)
}

/// All degree-2 schemes on `⊔k S²` with `l` ovals.
pub fn dp2_schemes(k: usize, l: usize) -> Result<Vec<Scheme>, EnumError> {
    if !(1..=4).contains(&k) {
        return Err(EnumError::BadK { min: 1, got: k });
    }
    let mut out: Vec<Scheme> = sphere_multisets(k, l)?.into_iter().map(Scheme::new_dp2).collect();
    out.sort_by_key(|s| s.code());
    Ok(out)
}

/// All plain degree-1 schemes on `RP² ⊔ ⊔k S²` with `l` components
/// (pseudo-line included in the count).
pub fn dp1_schemes(k: usize, l: usize) -> Result<Vec<Scheme>, EnumError> {
    if k > 4 {
        return Err(EnumError::BadK { min: 0, got: k });
    }
    if l > MAX_COMPONENTS {
        return Err(EnumError::TooLarge(l));
    }
    let mut out = Vec::new();
    for j in 0..=1u8 {
        if j as usize > l {
            continue;
        }
        for rp2_ovals in 0..=(l - j as usize) {
            let sphere_total = l - j as usize - rp2_ovals;
            for rp2 in rooted_forests(rp2_ovals) {
                for spheres in sphere_multisets(k, sphere_total)? {
                    out.push(Scheme::new_dp1(j, rp2.clone(), spheres));
                }
            }
        }
    }
    out.sort_by_key(|s| s.code());
    out.dedup_by_key(|s| s.code());
    Ok(out)
}

/// All refined degree-1 schemes (k = 4) with `l` components: the four
/// spheres split into an ordered pair of unordered pairs.
pub fn dp1_refined_schemes(l: usize) -> Result<Vec<RefinedScheme>, EnumError> {
    if l > MAX_COMPONENTS {
        return Err(EnumError::TooLarge(l));
    }
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for j in 0..=1u8 {
        if j as usize > l {
            continue;
        }
        for rp2_ovals in 0..=(l - j as usize) {
            let sphere_total = l - j as usize - rp2_ovals;
            for rp2 in rooted_forests(rp2_ovals) {
                for pos_total in 0..=sphere_total {
                    for pos in sphere_multisets(2, pos_total)? {
                        for neg in sphere_multisets(2, sphere_total - pos_total)? {
                            let r = RefinedScheme::new(
                                j,
                                rp2.clone(),
                                [pos[0].clone(), pos[1].clone()],
                                [neg[0].clone(), neg[1].clone()],
                            );
                            if seen.insert(r.code()) {
                                out.push(r);
                            }
                        }
                    }
                }
            }
        }
    }
    out.sort_by_key(|r| r.code());
    Ok(out)
}

/// Forgetful map from refined to plain schemes.
pub fn refined_to_plain(r: &RefinedScheme) -> Scheme {
    r.to_plain()
}

#[allow(dead_code)]
fn forest_code_of(f: &[OvalTree]) -> String {
    forest_code(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent count of unlabeled trees via the rooted-tree recurrence
    /// and the rooted/unrooted correction term (pure arithmetic; shares no
    /// code with the generator).
    fn unlabeled_tree_counts(up_to: usize) -> Vec<u64> {
        // r[n] = rooted trees with n vertices.
        let n = up_to + 1;
        let mut r = vec![0u64; n + 1];
        r[1] = 1;
        for m in 2..=n {
            let mut total = 0u64;
            for k in 1..m {
                // sum over j | k of j*r[j], times r[m-k]
                let mut s = 0u64;
                for j in 1..=k {
                    if k % j == 0 {
                        s += (j as u64) * r[j];
                    }
                }
                total += s * r[m - k];
            }
            r[m] = total / (m as u64 - 1);
        }
        // t[n] = unlabeled trees with n vertices.
        let mut t = vec![0u64; n + 1];
        for m in 1..=n {
            let mut pairs = 0u64;
            for i in 1..m {
                let j = m - i;
                if i < j {
                    pairs += r[i] * r[j];
                }
            }
            let half = if m % 2 == 0 { r[m / 2] * (r[m / 2] - 1) / 2 } else { 0 };
            t[m] = r[m] - pairs - half;
        }
        t
    }

    #[test]
    fn arrangement_counts_match_tree_counts() {
        let t = unlabeled_tree_counts(9);
        let expected = [1u64, 1, 1, 2, 3, 6, 11, 23, 47];
        for (l, &want) in expected.iter().enumerate() {
            let got = sphere_arrangements(l).unwrap().len() as u64;
            assert_eq!(got, want, "arrangements with {l} ovals");
            assert_eq!(t[l + 1], want, "tree count oracle with {} vertices", l + 1);
        }
    }

    #[test]
    fn arrangement_counts_match_labeled_tree_oracle() {
        // Second oracle: all labeled trees on l+1 vertices via parent
        // sequences, deduplicated by canonical code.
        use crate::scheme::RegionTree;
        for l in 0..=6usize {
            let n = l + 1;
            let mut seen = HashSet::new();
            // parent[i] for i in 1..n ranges over 0..i gives each rooted
            // labeled increasing tree once; that covers all tree shapes.
            fn rec(n: usize, i: usize, parents: &mut Vec<usize>, seen: &mut HashSet<String>) {
                if i == n {
                    let mut adj = vec![Vec::new(); n];
                    for (child, &p) in parents.iter().enumerate() {
                        let c = child + 1;
                        adj[p].push(c);
                        adj[c].push(p);
                    }
                    let rt = RegionTree { adj };
                    let a = SphereArrangement::from_forest(&rt.forest_at(0));
                    seen.insert(a.code().to_string());
                    return;
                }
                for p in 0..i {
                    parents.push(p);
                    rec(n, i + 1, parents, seen);
                    parents.pop();
                }
            }
            let mut parents = Vec::new();
            if n == 1 {
                seen.insert(SphereArrangement::empty().code().to_string());
            } else {
                rec(n, 1, &mut parents, &mut seen);
            }
            assert_eq!(seen.len(), sphere_arrangements(l).unwrap().len(), "l={l}");
        }
    }

    #[test]
    fn dp2_counts_match_multiset_oracle() {
        // Generating-function oracle: number of multisets of k arrangements
        // with total size l, from the per-size class counts alone.
        fn binom(n: u64, k: u64) -> u64 {
            let mut r = 1u64;
            for i in 0..k {
                r = r * (n + i) / (i + 1);
            }
            r
        }
        for l in 0..=8usize {
            let counts: Vec<u64> =
                (0..=l).map(|n| sphere_arrangements(n).unwrap().len() as u64).collect();
            for k in 1..=4usize {
                // DP over sizes: multisets with repetition.
                let mut dp = vec![vec![0u64; l + 1]; k + 1];
                dp[0][0] = 1;
                let mut cur = dp;
                for size in 0..=l {
                    let mut next = vec![vec![0u64; l + 1]; k + 1];
                    for used in 0..=k {
                        for tot in 0..=l {
                            if cur[used][tot] == 0 {
                                continue;
                            }
                            for m in 0..=(k - used) {
                                let add = m * size;
                                if size == 0 && m > 0 && counts[0] == 0 {
                                    continue;
                                }
                                if tot + add <= l {
                                    next[used + m][tot + add] +=
                                        cur[used][tot] * binom(counts[size], m as u64);
                                }
                            }
                        }
                    }
                    cur = next;
                }
                let oracle = cur[k][l];
                let got = dp2_schemes(k, l).unwrap().len() as u64;
                assert_eq!(got, oracle, "k={k}, l={l}");
            }
        }
    }

    #[test]
    fn generation_cap_is_enforced() {
        assert_eq!(sphere_arrangements(13).unwrap_err(), EnumError::TooLarge(13));
        assert!(dp2_schemes(5, 3).is_err());
    }

    #[test]
    fn refined_forgetful_map_is_surjective() {
        for l in 0..=5usize {
            let plain: HashSet<String> =
                dp1_schemes(4, l).unwrap().iter().map(|s| s.code()).collect();
            let image: HashSet<String> =
                dp1_refined_schemes(l).unwrap().iter().map(|r| r.to_plain().code()).collect();
            assert_eq!(plain, image, "l={l}");
        }
    }
}
