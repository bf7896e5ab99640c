//! Degrees of fundamental elements, with a root-counting cross-check.
//!
//! The degree of the fundamental element of a connected finite-type component
//! depends only on its classification tag; for an arbitrary subset the degree
//! is the sum over connected components. [`count_positive_roots`] recomputes
//! each tag's degree independently by closing the simple roots of the standard
//! geometric representation under the simple reflections.

use std::collections::HashMap;

use crate::coxeter::{CoxeterMatrix, IrreducibleType};
use crate::error::{Error, Result};

/// Default cap on the reflection-closure root set.
pub const DEFAULT_ROOT_CAP: usize = 100_000;

/// Tolerance for the positivity test on root coordinates.
const POSITIVITY_EPS: f64 = 1e-6;

/// Coordinates are deduplicated by rounding to this many decimal places.
const DEDUP_DECIMALS: i32 = 9;

/// Degree of the fundamental element of one irreducible type.
///
/// These are the positive-root counts of the corresponding root systems; the
/// test suite checks every entry against [`count_positive_roots`].
pub fn fundamental_degree(tag: IrreducibleType) -> u64 {
    match tag {
        IrreducibleType::A(n) => (n as u64) * (n as u64 + 1) / 2,
        IrreducibleType::B(n) => (n as u64) * (n as u64),
        IrreducibleType::D(n) => (n as u64) * (n as u64 - 1),
        IrreducibleType::E6 => 36,
        IrreducibleType::E7 => 63,
        IrreducibleType::E8 => 120,
        IrreducibleType::F4 => 24,
        IrreducibleType::H3 => 15,
        IrreducibleType::H4 => 60,
        IrreducibleType::I2(p) => p as u64,
    }
}

/// Degree of the fundamental element of the subset `mask`: the sum of
/// [`fundamental_degree`] over the connected components. The empty set has
/// degree 0.
pub fn deg_delta(matrix: &CoxeterMatrix, mask: u64) -> Result<u64> {
    let mut total = 0u64;
    for &component in matrix.decompose(mask).components() {
        total += fundamental_degree(matrix.classify(component)?);
    }
    Ok(total)
}

/// Width of the hazard zone around a dedup cell edge, in grid units. Far
/// wider than accumulated f64 noise, far narrower than root separations.
const BOUNDARY_ZONE: f64 = 1e-3;

/// Counts positive roots by reflection closure in the geometric
/// representation (bilinear form `B(e_a, e_b) = -cos(pi / m(a, b))`).
///
/// Starts from the simple-root unit vectors, repeatedly applies the simple
/// reflections, and deduplicates by rounding coordinates to
/// [`DEDUP_DECIMALS`] places. A coordinate may land within float noise of a
/// rounding boundary (the H-type golden-ratio coordinates do), so a vector
/// with near-boundary coordinates also probes the adjacent dedup cells and
/// counts as a duplicate on a hit. Exceeding `cap` distinct vectors reports
/// [`Error::ClosureExceededCap`] (the signature of a non-finite type); a
/// closure that does not split evenly into positive and negative halves
/// reports [`Error::NumericalAmbiguity`].
pub fn count_positive_roots(matrix: &CoxeterMatrix, cap: usize) -> Result<u64> {
    let l = matrix.rank();
    let scale = 10f64.powi(DEDUP_DECIMALS);
    let mut form = vec![0f64; l * l];
    for a in 0..l {
        for b in 0..l {
            form[a * l + b] = -(std::f64::consts::PI / matrix.entry(a + 1, b + 1) as f64).cos();
        }
    }

    // key plus, per near-boundary coordinate, the way its duplicate from
    // another closure path could have rounded instead
    type Quantized = (Vec<i64>, Vec<(usize, i64)>);
    let quantize = |v: &[f64]| -> Result<Quantized> {
        let mut key = Vec::with_capacity(l);
        let mut hazards = Vec::new();
        for (i, &x) in v.iter().enumerate() {
            let scaled = x * scale;
            let nearest = scaled.round();
            let delta = scaled - nearest;
            if delta.abs() > 0.5 - BOUNDARY_ZONE {
                hazards.push((i, if delta > 0.0 { 1 } else { -1 }));
            }
            key.push(nearest as i64);
        }
        if hazards.len() > 16 {
            return Err(Error::NumericalAmbiguity(format!(
                "{} coordinates lie on rounding boundaries at once",
                hazards.len()
            )));
        }
        Ok((key, hazards))
    };

    let is_known = |seen: &HashMap<Vec<i64>, bool>, key: &[i64], hazards: &[(usize, i64)]| {
        if seen.contains_key(key) {
            return true;
        }
        // any occupied neighbor cell is at most ~2 grid units away, i.e.
        // the same root
        let mut probe = key.to_vec();
        for choice in 1u32..(1 << hazards.len()) {
            probe.copy_from_slice(key);
            for (bit, &(i, dir)) in hazards.iter().enumerate() {
                if choice & (1 << bit) != 0 {
                    probe[i] += dir;
                }
            }
            if seen.contains_key(&probe) {
                return true;
            }
        }
        false
    };

    let mut seen: HashMap<Vec<i64>, bool> = HashMap::new();
    let mut queue: Vec<Vec<f64>> = Vec::new();
    for a in 0..l {
        let mut e = vec![0f64; l];
        e[a] = 1.0;
        let (key, _) = quantize(&e)?;
        seen.insert(key, true);
        queue.push(e);
    }

    while let Some(v) = queue.pop() {
        for a in 0..l {
            let s: f64 = (0..l).map(|b| form[a * l + b] * v[b]).sum();
            let mut w = v.clone();
            w[a] -= 2.0 * s;
            let (key, hazards) = quantize(&w)?;
            if !is_known(&seen, &key, &hazards) {
                if seen.len() >= cap {
                    return Err(Error::ClosureExceededCap { cap });
                }
                let positive = w.iter().all(|&x| x >= -POSITIVITY_EPS);
                seen.insert(key, positive);
                queue.push(w);
            }
        }
    }

    let total = seen.len();
    let positive = seen.values().filter(|&&p| p).count();
    if !total.is_multiple_of(2) || positive * 2 != total {
        return Err(Error::NumericalAmbiguity(format!(
            "{positive} of {total} closure vectors test positive"
        )));
    }
    Ok((total / 2) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{build_product, parse_type_spec, Family};
    use proptest::prelude::*;

    fn named(family: Family, n: usize) -> CoxeterMatrix {
        CoxeterMatrix::named(family, n).unwrap()
    }

    fn mask_of(verts: &[usize]) -> u64 {
        verts.iter().map(|v| 1u64 << (v - 1)).sum()
    }

    #[test]
    fn fundamental_degree_table_entries() {
        assert_eq!(fundamental_degree(IrreducibleType::A(3)), 6);
        assert_eq!(fundamental_degree(IrreducibleType::B(3)), 9);
        assert_eq!(fundamental_degree(IrreducibleType::D(4)), 12);
        assert_eq!(fundamental_degree(IrreducibleType::E8), 120);
        assert_eq!(fundamental_degree(IrreducibleType::I2(7)), 7);
    }

    #[test]
    fn deg_delta_sums_components() {
        assert_eq!(deg_delta(&named(Family::A, 5), mask_of(&[1, 2, 4])).unwrap(), 4);
        assert_eq!(deg_delta(&named(Family::B, 4), mask_of(&[1, 2, 4])).unwrap(), 5);
        assert_eq!(deg_delta(&named(Family::A, 3), 0).unwrap(), 0);
        assert_eq!(deg_delta(&named(Family::D, 6), mask_of(&[4, 5, 6])).unwrap(), 6);
    }

    #[test]
    fn b_type_degree_depends_on_the_labeled_edge() {
        // a connected subset of B_l containing the 4-edge has degree #J^2,
        // any other connected subset is A-type with degree binom(#J+1, 2)
        let b5 = named(Family::B, 5);
        assert_eq!(deg_delta(&b5, mask_of(&[1, 2, 3])).unwrap(), 9);
        assert_eq!(deg_delta(&b5, mask_of(&[2, 3, 4])).unwrap(), 6);
        assert_eq!(deg_delta(&b5, b5.full_mask()).unwrap(), 25);
    }

    #[test]
    fn d_type_degree_cases() {
        let d6 = named(Family::D, 6);
        // contains the branch with >= 4 vertices: n(n-1)
        assert_eq!(deg_delta(&d6, mask_of(&[3, 4, 5, 6])).unwrap(), 12);
        assert_eq!(deg_delta(&d6, d6.full_mask()).unwrap(), 30);
        // both leaves with the branch only: the 3-vertex star is an A3 path
        assert_eq!(deg_delta(&d6, mask_of(&[4, 5, 6])).unwrap(), 6);
        // missing a leaf: plain A-type
        assert_eq!(deg_delta(&d6, mask_of(&[3, 4, 5])).unwrap(), 6);
    }

    #[test]
    fn connected_a_subsets_depend_only_on_size() {
        // every run of j consecutive vertices in A_l has degree j(j+1)/2
        let a9 = named(Family::A, 9);
        for start in 1..=9u64 {
            for j in 1..=(10 - start) {
                let mask = ((1u64 << j) - 1) << (start - 1);
                assert_eq!(deg_delta(&a9, mask).unwrap(), j * (j + 1) / 2);
            }
        }
    }

    #[test]
    fn count_positive_roots_small_types() {
        assert_eq!(count_positive_roots(&named(Family::A, 2), 1000).unwrap(), 3);
        assert_eq!(count_positive_roots(&named(Family::B, 2), 1000).unwrap(), 4);
        assert_eq!(count_positive_roots(&named(Family::H, 3), 1000).unwrap(), 15);
        assert_eq!(count_positive_roots(&named(Family::I2, 9), 1000).unwrap(), 9);
    }

    #[test]
    fn count_positive_roots_rejects_affine_triangle() {
        let tri = CoxeterMatrix::from_entries(3, vec![1, 3, 3, 3, 1, 3, 3, 3, 1]).unwrap();
        assert_eq!(
            count_positive_roots(&tri, 500),
            Err(Error::ClosureExceededCap { cap: 500 })
        );
    }

    fn named_part() -> impl Strategy<Value = (Family, usize)> {
        prop_oneof![
            (1usize..=8).prop_map(|n| (Family::A, n)),
            (2usize..=8).prop_map(|n| (Family::B, n)),
            (4usize..=8).prop_map(|n| (Family::D, n)),
            (6usize..=8).prop_map(|n| (Family::E, n)),
            Just((Family::F, 4)),
            (3usize..=4).prop_map(|n| (Family::H, n)),
            (5usize..=12).prop_map(|p| (Family::I2, p)),
        ]
    }

    proptest! {
        #[test]
        fn deg_delta_is_additive_over_components(
            spec in proptest::collection::vec(named_part(), 1..=3),
            raw_mask in any::<u64>(),
        ) {
            let m = build_product(&spec).unwrap();
            let mask = raw_mask & m.full_mask();
            let total = deg_delta(&m, mask).unwrap();
            let by_parts: u64 = m
                .decompose(mask)
                .components()
                .iter()
                .map(|&c| deg_delta(&m, c).unwrap())
                .sum();
            prop_assert_eq!(total, by_parts);
        }

        #[test]
        fn deg_delta_is_monotone_under_inclusion(
            part in named_part(),
            raw_small in any::<u64>(),
            raw_extra in any::<u64>(),
        ) {
            let m = build_product(&[part]).unwrap();
            let small = raw_small & m.full_mask();
            let large = small | (raw_extra & m.full_mask());
            prop_assert!(deg_delta(&m, small).unwrap() <= deg_delta(&m, large).unwrap());
        }
    }

    #[test]
    fn monotone_exhaustively_on_small_mixed_matrix() {
        let m = build_product(&parse_type_spec("B3xA2").unwrap()).unwrap();
        let full = m.full_mask();
        for mask in 0..=full {
            let d = deg_delta(&m, mask).unwrap();
            for v in 1..=m.rank() {
                let bigger = mask | (1 << (v - 1));
                assert!(d <= deg_delta(&m, bigger).unwrap());
            }
        }
    }
}
