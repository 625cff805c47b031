//! Brute-force reference for small lengths.
//!
//! Walks every sequence of length `l` with `(l+1)/2` plus signs and
//! groups them by PAF profile. Deliberately shares no code with the search
//! pipeline: its own bitmask enumeration, its own PAF and a PSD obtained
//! from the PAF by the Wiener-Khinchin relation.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

/// Longest length the oracle accepts.
pub const MAX_ORACLE_LENGTH: usize = 27;

fn to_string(mask: u64, l: usize) -> String {
    (0..l)
        .map(|i| if mask >> i & 1 == 1 { '+' } else { '-' })
        .collect()
}

fn value(mask: u64, i: usize) -> i64 {
    if mask >> i & 1 == 1 {
        1
    } else {
        -1
    }
}

fn paf_profile(mask: u64, l: usize) -> Vec<i64> {
    (1..=(l - 1) / 2)
        .map(|s| {
            (0..l)
                .map(|i| value(mask, i) * value(mask, (i + s) % l))
                .sum()
        })
        .collect()
}

/// Masks with `k` of the low `l` bits set, ascending.
fn masks(l: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << l;
    let mut next = (k > 0).then(|| (1u64 << k) - 1);
    std::iter::from_fn(move || {
        let cur = next?;
        // Gosper's hack
        let c = cur & cur.wrapping_neg();
        let r = cur + c;
        let n = (((r ^ cur) >> 2) / c) | r;
        next = (n < limit).then_some(n);
        Some(cur)
    })
}

/// `true` when the mask is invariant under `r -> h r` for every `h`
/// (position `p` holds residue `p mod l`, bit `p - 1`).
fn orbit_closed(mask: u64, l: usize, subgroup: &[usize]) -> bool {
    (1..=l).all(|p| {
        subgroup.iter().all(|&h| {
            let q = (h * (p % l)) % l;
            let q = if q == 0 { l } else { q };
            (mask >> (p - 1) & 1) == (mask >> (q - 1) & 1)
        })
    })
}

fn check(l: usize) -> Result<()> {
    if l < 3 || l % 2 == 0 || l > MAX_ORACLE_LENGTH {
        return Err(Error::Invalid(format!(
            "oracle needs odd 3 <= l <= {MAX_ORACLE_LENGTH}, got {l}"
        )));
    }
    Ok(())
}

/// Normalized sequences (sum `+1`), restricted to unions of orbits of
/// `subgroup` when given, as `+`/`-` strings.
pub fn normalized_sequences(l: usize, subgroup: Option<&[usize]>) -> Result<Vec<String>> {
    check(l)?;
    Ok(masks(l, (l + 1) / 2)
        .filter(|&m| subgroup.is_none_or(|h| orbit_closed(m, l, h)))
        .map(|m| to_string(m, l))
        .collect())
}

/// All unordered Legendre pairs `{A, B}` of normalized sequences, each as
/// `(smaller string, larger string)`; `A = B` is allowed.
pub fn legendre_pairs(l: usize, subgroup: Option<&[usize]>) -> Result<BTreeSet<(String, String)>> {
    check(l)?;
    let mut by_profile: HashMap<Vec<i64>, Vec<u64>> = HashMap::new();
    for m in masks(l, (l + 1) / 2).filter(|&m| subgroup.is_none_or(|h| orbit_closed(m, l, h))) {
        by_profile.entry(paf_profile(m, l)).or_default().push(m);
    }
    let mut out = BTreeSet::new();
    for (profile, xs) in &by_profile {
        let partner: Vec<i64> = profile.iter().map(|v| -2 - v).collect();
        let Some(ys) = by_profile.get(&partner) else {
            continue;
        };
        for &x in xs {
            for &y in ys {
                let (sx, sy) = (to_string(x, l), to_string(y, l));
                if sx <= sy {
                    out.insert((sx, sy));
                }
            }
        }
    }
    Ok(out)
}

/// Normalized (optionally orbit-closed) sequences whose PSD never exceeds
/// `2l + 2 + eps`.
pub fn psd_survivors(l: usize, subgroup: Option<&[usize]>, eps: f64) -> Result<BTreeSet<String>> {
    check(l)?;
    let bound = (2 * l + 2) as f64 + eps;
    let mut out = BTreeSet::new();
    for m in masks(l, (l + 1) / 2).filter(|&m| subgroup.is_none_or(|h| orbit_closed(m, l, h))) {
        let paf: Vec<i64> = (0..l)
            .map(|s| (0..l).map(|i| value(m, i) * value(m, (i + s) % l)).sum())
            .collect();
        let ok = (1..l).all(|k| {
            let psd: f64 = paf
                .iter()
                .enumerate()
                .map(|(s, &v)| {
                    v as f64 * (2.0 * std::f64::consts::PI * (k * s) as f64 / l as f64).cos()
                })
                .sum();
            psd <= bound
        });
        if ok {
            out.insert(to_string(m, l));
        }
    }
    Ok(out)
}
