use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::{HashMap, HashSet};

use super::Pattern;
use crate::error::{Error, Result};
use crate::exactnum::{lcm_u32, CycloNum, ModKey, MAX_ORDER};
use crate::geom::images::SetImages;
use crate::geom::PointSet;

/// Witness tuples kept by default.
pub const DEFAULT_WITNESS_LIMIT: usize = 64;

/// Which matched copies to keep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum WitnessMode {
    #[default]
    None,
    /// At most this many distinct copies.
    Sample(usize),
    All,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CountOptions {
    pub witnesses: WitnessMode,
    /// Per-point number of copies through each point of the target.
    pub incidence: bool,
}

/// Result of counting similar copies of a pattern in a target set.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CountReport {
    pub pattern_size: usize,
    pub sym_order: usize,
    pub target_size: usize,
    /// `N`: ordered anchor-image pairs whose similarity maps the pattern into
    /// the target.
    pub ordered_matches: u64,
    /// `S_P(A) = N / I`.
    pub copies: u64,
    pub index: f64,
    /// Distinct copies as target indices, listed in pattern point order.
    pub witnesses: Vec<Vec<usize>>,
    /// Copies through each target point, when requested.
    pub incidence: Option<Vec<u64>>,
}

/// `log(I·S + n) / log n`.
pub fn index_from_counts(sym_order: usize, copies: u64, n: usize) -> f64 {
    let num = sym_order as f64 * copies as f64 + n as f64;
    libm::log(num) / libm::log(n as f64)
}

/// Lifts pattern and set to a common conductor.
pub fn align(pattern: &Pattern, set: &PointSet) -> Result<(Pattern, PointSet)> {
    let m = lcm_u32(pattern.order(), set.order());
    if m > MAX_ORDER {
        return Err(Error::UnsupportedOrder(m));
    }
    Ok((pattern.lift(m)?, set.lift(m)?))
}

pub fn count_similar(pattern: &Pattern, set: &PointSet) -> Result<CountReport> {
    count_similar_with(pattern, set, &CountOptions::default())
}

/// Exact `S_P(A)`.
///
/// For each ordered pair `(a₁, a₂)` of target points the similarity
/// `p ↦ a₂ + (a₁ - a₂)·μ_p` is evaluated on the pattern. Images are first
/// looked up by modular key, which rejects almost every pair in constant
/// time per point; surviving candidates are confirmed exactly.
pub fn count_similar_with(pattern: &Pattern, set: &PointSet, opts: &CountOptions) -> Result<CountReport> {
    let (pattern, set) = align(pattern, set)?;
    let n = set.len();
    let k = pattern.len();
    let sym = pattern.sym_order();
    let mut report = CountReport {
        pattern_size: k,
        sym_order: sym,
        target_size: n,
        ordered_matches: 0,
        copies: 0,
        index: if n >= 2 { 1.0 } else { f64::NAN },
        witnesses: Vec::new(),
        incidence: if opts.incidence { Some(vec![0; n]) } else { None },
    };
    if n < k {
        return Ok(report);
    }
    let (a_idx, b_idx) = pattern.anchors();
    let mu = pattern.transfer_coefficients();
    // pattern points other than the anchors, in index order
    let others: Vec<usize> = (0..k).filter(|&i| i != a_idx && i != b_idx).collect();
    let pts = set.points();

    let (images, (mu_keys, lookup)) = SetImages::compute(set.order(), pts, |img| {
        let mu_keys = others.iter().map(|&i| img.hasher.key(&mu[i])).collect::<Option<Vec<_>>>()?;
        let mut lookup: HashMap<ModKey, Vec<usize>> = HashMap::with_capacity(n);
        for (i, key) in img.keys.iter().enumerate() {
            lookup.entry(*key).or_default().push(i);
        }
        Some((mu_keys, lookup))
    });
    let h = images.hasher;

    let limit = match opts.witnesses {
        WitnessMode::None => 0,
        WitnessMode::Sample(s) => s,
        WitnessMode::All => usize::MAX,
    };
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut candidates: Vec<&[usize]> = Vec::with_capacity(others.len());
    let mut image = vec![0usize; k];
    let mut matches: u64 = 0;

    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let d = h.sub(images.keys[i], images.keys[j]);
            candidates.clear();
            let mut ok = true;
            for key in &mu_keys {
                match lookup.get(&h.add(images.keys[j], h.mul(d, *key))) {
                    Some(c) => candidates.push(c),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            let d_exact = &pts[i] - &pts[j];
            image[a_idx] = i;
            image[b_idx] = j;
            for (&p, cands) in others.iter().zip(&candidates) {
                let target = &pts[j] + &(&d_exact * &mu[p]);
                match cands.iter().find(|&&c| pts[c] == target) {
                    Some(&c) => image[p] = c,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            matches += 1;
            if let Some(inc) = report.incidence.as_mut() {
                for &c in &image {
                    inc[c] += 1;
                }
            }
            if report.witnesses.len() < limit {
                let mut key = image.clone();
                key.sort_unstable();
                if seen.insert(key) {
                    report.witnesses.push(image.clone());
                }
            }
        }
    }

    let sym64 = sym as u64;
    if matches % sym64 != 0 {
        return Err(Error::CheckFailed(format!(
            "ordered match count {matches} is not divisible by the symmetry order {sym}"
        )));
    }
    report.ordered_matches = matches;
    report.copies = matches / sym64;
    if let Some(inc) = report.incidence.as_mut() {
        for v in inc.iter_mut() {
            *v /= sym64;
        }
    }
    // Elekes–Erdős: I·S ≤ n² − n
    let bound = (n as u64) * (n as u64 - 1);
    if matches > bound {
        return Err(Error::CheckFailed(format!("I·S = {matches} exceeds n² - n = {bound}")));
    }
    report.index = index_from_counts(sym, report.copies, n);
    Ok(report)
}

/// `i_P(A)`.
pub fn index(pattern: &Pattern, set: &PointSet) -> Result<f64> {
    if set.len() < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: set.len() });
    }
    Ok(count_similar(pattern, set)?.index)
}

/// Subset-count guard for [`brute_force_count`].
pub const BRUTE_FORCE_LIMIT: u128 = 10_000_000;

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = core::cmp::min(k, n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// `S_P(A)` straight from the definition: every `|P|`-subset of `A` is tested
/// for similarity with `P` by comparing the ratios
/// `(q_j - q_a)/(q_b - q_a)` against `(p_j - p₁)/(p₂ - p₁)` over all ordered
/// choices `(q_a, q_b)` in the subset. Uses no hashing.
pub fn brute_force_count(pattern: &Pattern, set: &PointSet) -> Result<u64> {
    let (pattern, set) = align(pattern, set)?;
    let n = set.len();
    let k = pattern.len();
    let subsets = binomial(n, k);
    if subsets > BRUTE_FORCE_LIMIT {
        return Err(Error::GuardExceeded { n, k, subsets, bound: BRUTE_FORCE_LIMIT });
    }
    if n < k {
        return Ok(0);
    }
    let (a_idx, b_idx) = pattern.anchors();
    let base = pattern.base();
    let inv = (&base[b_idx] - &base[a_idx]).inverse()?;
    let ratios: Vec<CycloNum> = (0..k)
        .filter(|&i| i != a_idx && i != b_idx)
        .map(|i| &(&base[i] - &base[a_idx]) * &inv)
        .collect();
    let pts = set.points();
    let mut count = 0u64;
    let mut combo: Vec<usize> = (0..k).collect();
    let mut members: Vec<&CycloNum> = Vec::with_capacity(k);
    loop {
        members.clear();
        members.extend(combo.iter().map(|&c| &pts[c]));
        if subset_is_similar(&members, &ratios) {
            count += 1;
        }
        // next combination in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(count);
            }
            i -= 1;
            if combo[i] < n - k + i {
                break;
            }
        }
        combo[i] += 1;
        for t in i + 1..k {
            combo[t] = combo[t - 1] + 1;
        }
    }
}

/// Whether `points` (in any order) form a similar copy of the pattern.
pub fn is_similar(pattern: &Pattern, points: &[CycloNum]) -> Result<bool> {
    if points.len() != pattern.len() {
        return Ok(false);
    }
    let m = points.iter().fold(pattern.order(), |m, p| lcm_u32(m, p.order()));
    if m > MAX_ORDER {
        return Err(Error::UnsupportedOrder(m));
    }
    let pattern = pattern.lift(m)?;
    let pts = points.iter().map(|p| p.lift_order(m)).collect::<Result<Vec<_>>>()?;
    let set = PointSet::new(m, pts)?;
    let (a_idx, b_idx) = pattern.anchors();
    let base = pattern.base();
    let inv = (&base[b_idx] - &base[a_idx]).inverse()?;
    let ratios: Vec<CycloNum> = (0..pattern.len())
        .filter(|&i| i != a_idx && i != b_idx)
        .map(|i| &(&base[i] - &base[a_idx]) * &inv)
        .collect();
    let members: Vec<&CycloNum> = set.iter().collect();
    Ok(subset_is_similar(&members, &ratios))
}

fn subset_is_similar(members: &[&CycloNum], ratios: &[CycloNum]) -> bool {
    for (x, qa) in members.iter().enumerate() {
        for (y, qb) in members.iter().enumerate() {
            if x == y {
                continue;
            }
            let d = *qb - *qa;
            // ratios are distinct and avoid 0 and 1, so hits are distinct
            // and differ from q_a and q_b
            if ratios.iter().all(|r| {
                let t = *qa + &(&d * r);
                members.iter().enumerate().any(|(z, m)| z != x && z != y && **m == t)
            }) {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(e: i64) -> CycloNum {
        CycloNum::root_of_unity(3, e).unwrap()
    }

    fn triangle() -> Pattern {
        Pattern::from_points(3, vec![w(0), w(1), w(2)]).unwrap()
    }

    #[test]
    fn pattern_in_itself_is_one_copy() {
        let p = triangle();
        let r = count_similar(&p, p.base()).unwrap();
        assert_eq!((r.ordered_matches, r.copies), (3, 1));
        assert_eq!(brute_force_count(&p, p.base()).unwrap(), 1);
    }

    #[test]
    fn triangle_plus_centre() {
        let p = triangle();
        let a = PointSet::new(3, vec![w(0), w(1), w(2), CycloNum::zero(3).unwrap()]).unwrap();
        assert_eq!(count_similar(&p, &a).unwrap().copies, 1);
        assert_eq!(brute_force_count(&p, &a).unwrap(), 1);
    }

    #[test]
    fn small_target_has_no_copies() {
        let p = triangle();
        let a = PointSet::new(3, vec![w(0), w(1)]).unwrap();
        let r = count_similar(&p, &a).unwrap();
        assert_eq!(r.copies, 0);
        assert_eq!(r.index, 1.0);
    }

    #[test]
    fn hexagon_with_centre_lifts_across_conductors() {
        // pattern over Q(ζ₃), set over Q(ζ₆)
        let mut pts: Vec<CycloNum> = (0..6).map(|e| CycloNum::root_of_unity(6, e).unwrap()).collect();
        pts.push(CycloNum::zero(6).unwrap());
        let a = PointSet::new(6, pts).unwrap();
        let r = count_similar_with(&triangle(), &a, &CountOptions { witnesses: WitnessMode::All, incidence: true })
            .unwrap();
        // 6 unit triangles at the centre plus 2 large ones
        assert_eq!(r.copies, 8);
        assert_eq!(r.witnesses.len(), 8);
        assert_eq!(r.incidence.as_ref().unwrap()[6], 6);
        assert_eq!(brute_force_count(&triangle(), &a).unwrap(), 8);
        assert!((r.index - libm::log(31.0) / libm::log(7.0)).abs() < 1e-12);
    }

    #[test]
    fn guard() {
        let pts: Vec<CycloNum> = (0..400).map(|v| CycloNum::from_integer(3, v).unwrap()).collect();
        let a = PointSet::new(3, pts).unwrap();
        assert!(matches!(brute_force_count(&triangle(), &a), Err(Error::GuardExceeded { n: 400, k: 3, .. })));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(15, 3), 455);
        assert_eq!(binomial(19, 4), 3876);
        assert_eq!(binomial(3, 5), 0);
    }
}
