//! Randomized cross-checks: every closed form is compared with
//! exhaustive enumeration on seeded random instances, the pointwise
//! weight identities are checked message by message, and the strict
//! (verbatim) evaluation mode is pinned to differ from the corrected
//! one exactly where it should.  Seeds are fixed so failures replay.

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand::{Rng, SeedableRng};

use gf4codes::bounds::griesmer_min_length;
use gf4codes::closed_forms::{
    cor_4_12, cor_4_3, cor_4_9, prop_4_2, prop_4_7, prop_5_1, prop_5_3, prop_5_6, thm_4_10,
    thm_4_4, thm_5_2, thm_5_5_check, TheoremPrediction,
};
use gf4codes::code_engine::{
    codeword, complement_codeword_weight, weight_distribution_bruteforce,
    weight_via_character_sums, WeightDistribution,
};
use gf4codes::defining_sets::{product_set, shared_product, DefiningSet, Provenance};
use gf4codes::gf4_algebra::{ones, F4Vector};
use gf4codes::simplicial::{
    u_class, u_class_cardinalities, u_class_cardinalities_verbatim, SimplicialComplex, SubsetMask,
};

// ---------------------------------------------------------------------------
// Samplers
// ---------------------------------------------------------------------------

fn mask(rng: &mut ChaCha8Rng, m: usize) -> SubsetMask {
    rng.random_range(0..1u32 << m)
}

/// Any pair except both-empty (those product codes have length zero).
fn nonzero_pair(rng: &mut ChaCha8Rng) -> (usize, SubsetMask, SubsetMask) {
    loop {
        let m = rng.random_range(1..=5);
        let (a, b) = (mask(rng, m), mask(rng, m));
        if a | b != 0 {
            return (m, a, b);
        }
    }
}

/// Any pair except both-full (those complement codes have length zero).
fn not_both_full_pair(rng: &mut ChaCha8Rng) -> (usize, SubsetMask, SubsetMask) {
    loop {
        let m = rng.random_range(1..=5);
        let (a, b) = (mask(rng, m), mask(rng, m));
        if !(a == ones(m) && b == ones(m)) {
            return (m, a, b);
        }
    }
}

/// Each face has a vertex the other lacks (needs `m >= 2`).
fn incomparable_pair(rng: &mut ChaCha8Rng, max_m: usize) -> (usize, SubsetMask, SubsetMask) {
    loop {
        let m = rng.random_range(2..=max_m);
        let (a, b) = (mask(rng, m), mask(rng, m));
        if a & !b != 0 && b & !a != 0 {
            return (m, a, b);
        }
    }
}

fn shuffled_vertices(rng: &mut ChaCha8Rng, m: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..m).collect();
    for i in (1..m).rev() {
        v.swap(i, rng.random_range(0..=i));
    }
    v
}

fn face_of(vertices: &[usize]) -> SubsetMask {
    vertices.iter().fold(0, |acc, &v| acc | 1 << v)
}

/// A complex with one to three random maximal faces.
fn random_complex(rng: &mut ChaCha8Rng, m: usize) -> SimplicialComplex {
    let count = rng.random_range(1..=3);
    let faces: Vec<SubsetMask> = (0..count).map(|_| mask(rng, m)).collect();
    SimplicialComplex::new(m, &faces).expect("faces fit in m")
}

// ---------------------------------------------------------------------------
// Pipelines
// ---------------------------------------------------------------------------

fn punctured_product(m: usize, a: SubsetMask, b: SubsetMask) -> DefiningSet {
    let da = SimplicialComplex::single(m, a).unwrap();
    let db = SimplicialComplex::single(m, b).unwrap();
    product_set(&da, &db).unwrap().puncture_zero()
}

fn product_complement(m: usize, a: SubsetMask, b: SubsetMask) -> DefiningSet {
    let da = SimplicialComplex::single(m, a).unwrap();
    let db = SimplicialComplex::single(m, b).unwrap();
    product_set(&da, &db).unwrap().complement().unwrap()
}

fn shared_punctured(m: usize, a: SubsetMask, b: SubsetMask) -> DefiningSet {
    let delta = SimplicialComplex::new(m, &[a, b]).unwrap();
    shared_product(&delta).unwrap().puncture_zero()
}

fn shared_complement(m: usize, a: SubsetMask, b: SubsetMask) -> DefiningSet {
    let delta = SimplicialComplex::new(m, &[a, b]).unwrap();
    shared_product(&delta).unwrap().complement().unwrap()
}

fn oracle(set: &DefiningSet) -> WeightDistribution {
    weight_distribution_bruteforce(set).unwrap()
}

fn assert_prediction(pred: &TheoremPrediction, set: &DefiningSet) {
    let measured = oracle(set);
    assert_eq!(
        pred.distribution, measured,
        "{} disagrees with enumeration on a {}-element set",
        pred.theorem_id,
        set.len()
    );
}

// ---------------------------------------------------------------------------
// Formula vs oracle, family by family
// ---------------------------------------------------------------------------

#[test]
fn punctured_product_formula_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4F2A01);
    for _ in 0..30 {
        let (m, a, b) = nonzero_pair(&mut rng);
        let pred = prop_4_2(m, a, b).unwrap();
        assert_prediction(&pred, &punctured_product(m, a, b));
    }
}

#[test]
fn product_complement_formula_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4F2A02);
    for _ in 0..30 {
        let (m, a, b) = not_both_full_pair(&mut rng);
        let pred = thm_4_4(m, a, b).unwrap();
        assert!(pred.flags.griesmer_code);
        assert_prediction(&pred, &product_complement(m, a, b));
    }
}

#[test]
fn full_face_specialization_agrees() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4F2A03);
    for _ in 0..20 {
        let m = rng.random_range(1..=5);
        let a = mask(&mut rng, m);
        let special = cor_4_3(m, a).unwrap();
        let general = prop_4_2(m, ones(m), a).unwrap();
        assert_eq!(special.distribution, general.distribution);
        assert_eq!(special.flags, general.flags);
        assert_prediction(&special, &punctured_product(m, ones(m), a));
    }
}

#[test]
fn shared_punctured_formula_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4F2A04);
    for _ in 0..30 {
        let (m, a, b) = incomparable_pair(&mut rng, 5);
        let pred = prop_4_7(m, a, b, false).unwrap();
        assert_prediction(&pred, &shared_punctured(m, a, b));
    }
}

#[test]
fn shared_complement_formula_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4F2A05);
    for _ in 0..30 {
        let (m, a, b) = incomparable_pair(&mut rng, 5);
        let pred = thm_4_10(m, a, b, false).unwrap();
        assert_prediction(&pred, &shared_complement(m, a, b));
    }
}

/// The three gated special cases reduce to the general shared form and
/// the oracle: singletons apart, equal sizes apart, equal sizes with one
/// private vertex each.
#[test]
fn special_case_gate_agrees_with_general_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4F2A06);
    for round in 0..15 {
        let (m, a, b) = match round % 3 {
            0 => {
                let m = rng.random_range(2..=5);
                let v = shuffled_vertices(&mut rng, m);
                (m, face_of(&v[..1]), face_of(&v[1..2]))
            }
            1 => {
                let m = rng.random_range(4..=5);
                let v = shuffled_vertices(&mut rng, m);
                (m, face_of(&v[..2]), face_of(&v[2..4]))
            }
            _ => {
                let m = rng.random_range(3..=5);
                let u = rng.random_range(2..=m - 1);
                let v = shuffled_vertices(&mut rng, m);
                let common = face_of(&v[..u - 1]);
                (m, common | 1 << v[u - 1], common | 1 << v[u])
            }
        };
        let special = cor_4_9(m, a, b).unwrap();
        let general = prop_4_7(m, a, b, false).unwrap();
        assert_eq!(special.distribution, general.distribution);
        assert_prediction(&special, &shared_punctured(m, a, b));
        let complemented = cor_4_12(m, a, b).unwrap();
        let general = thm_4_10(m, a, b, false).unwrap();
        assert_eq!(complemented.distribution, general.distribution);
    }
    // Outside the three cases the gates refuse.
    assert!(cor_4_9(4, 0b0111, 0b1100).is_err());
    assert!(cor_4_9(3, 0b011, 0b111).is_err());
    assert!(cor_4_12(4, 0b0111, 0b1100).is_err());
}

#[test]
fn product_image_formula_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4F2A07);
    for _ in 0..30 {
        let (m, a, b) = nonzero_pair(&mut rng);
        let pred = prop_5_1(m, a, b).unwrap();
        let set = punctured_product(m, a, b).subfield_defining_set().unwrap();
        assert_prediction(&pred, &set);
    }
}

#[test]
fn complement_image_formula_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4F2A08);
    for _ in 0..30 {
        let (m, a, b) = not_both_full_pair(&mut rng);
        let pred = thm_5_2(m, a, b).unwrap();
        assert!(pred.flags.griesmer_code);
        let set = product_complement(m, a, b).subfield_defining_set().unwrap();
        assert_prediction(&pred, &set);
    }
}

#[test]
fn shared_image_formulas_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4F2A09);
    for _ in 0..25 {
        let (m, a, b) = incomparable_pair(&mut rng, 5);
        let punctured = prop_5_3(m, a, b, false).unwrap();
        let set = shared_punctured(m, a, b).subfield_defining_set().unwrap();
        assert_prediction(&punctured, &set);

        let complemented = prop_5_6(m, a, b, false).unwrap();
        let set = shared_complement(m, a, b).subfield_defining_set().unwrap();
        assert_prediction(&complemented, &set);
    }
}

// ---------------------------------------------------------------------------
// Pointwise identities
// ---------------------------------------------------------------------------

/// The character-sum weight equals the enumerated codeword weight for
/// every message, over products of arbitrary (multi-face) complexes.
#[test]
fn pointwise_character_weights_match_codewords() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4F2A0A);
    for _ in 0..10 {
        let m = rng.random_range(1..=4);
        let d1 = random_complex(&mut rng, m);
        let d2 = random_complex(&mut rng, m);
        let set = product_set(&d1, &d2).unwrap();
        for alpha in 0..1u32 << m {
            for beta in 0..1u32 << m {
                let a = F4Vector::new(m, alpha, beta);
                let enumerated = codeword(&set, &a)
                    .unwrap()
                    .iter()
                    .filter(|e| !e.is_zero())
                    .count() as u64;
                assert_eq!(
                    weight_via_character_sums(&a, &d1, &d2),
                    enumerated,
                    "message ({alpha:#b}, {beta:#b}) over {d1} x {d2}"
                );
            }
        }
    }
}

/// Complement weights mirror product weights around `3 * 4^{m-1}` for
/// every nonzero message, again over arbitrary complexes.
#[test]
fn complement_weights_mirror_product_weights() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4F2A0B);
    for _ in 0..8 {
        let m = rng.random_range(1..=4);
        let d1 = random_complex(&mut rng, m);
        let d2 = random_complex(&mut rng, m);
        let product = product_set(&d1, &d2).unwrap();
        let complement = product.complement().unwrap();
        for alpha in 0..1u32 << m {
            for beta in 0..1u32 << m {
                let a = F4Vector::new(m, alpha, beta);
                let weight_of = |set: &DefiningSet| {
                    codeword(set, &a)
                        .unwrap()
                        .iter()
                        .filter(|e| !e.is_zero())
                        .count() as u64
                };
                assert_eq!(
                    weight_of(&complement),
                    complement_codeword_weight(m, a.is_zero(), weight_of(&product))
                );
            }
        }
    }
}

/// Complementing twice removes exactly the zero vector: as sets,
/// `(D^c)^c = D \ {0}`.
#[test]
fn complement_twice_is_puncture() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4F2A0C);
    for _ in 0..10 {
        let m = rng.random_range(1..=3);
        let mut elements = Vec::new();
        for enc in 0..1u32 << (2 * m) {
            if rng.random_range(0..10) < 3 {
                elements.push([enc & ones(m), enc >> m]);
            }
        }
        let set = DefiningSet::new_f4(m, elements, Provenance::Explicit).unwrap();
        let double = set.complement().unwrap().complement().unwrap();
        let expect: BTreeSet<[u32; 2]> = set.puncture_zero().elements.into_iter().collect();
        let got: BTreeSet<[u32; 2]> = double.elements.into_iter().collect();
        assert_eq!(got, expect);
    }
}

// ---------------------------------------------------------------------------
// Strict (verbatim) evaluation
// ---------------------------------------------------------------------------

/// Strict mode re-evaluates the published count tables verbatim.  For
/// the shared-product rows the published and corrected expressions
/// coincide, so strict prop_4_7 / thm_4_10 never move; for the expanded
/// (binary) rows the published `(q-1)^4` pair count is a misprint of
/// `((p-1)(q-1))^2`, so strict prop_5_3 / prop_5_6 differ exactly when
/// `p != q`.
#[test]
fn strict_mode_differs_only_at_published_misprints() {
    // Exhaustive over m <= 4: the quaternary shared forms are unmoved.
    for m in 2..=4usize {
        for a in 0..1u32 << m {
            for b in 0..1u32 << m {
                if a & !b == 0 || b & !a == 0 {
                    continue;
                }
                assert_eq!(
                    prop_4_7(m, a, b, true).unwrap().distribution,
                    prop_4_7(m, a, b, false).unwrap().distribution
                );
                assert_eq!(
                    thm_4_10(m, a, b, true).unwrap().distribution,
                    thm_4_10(m, a, b, false).unwrap().distribution
                );
            }
        }
    }

    // Unbalanced private sides: strict binary rows are wrong (and their
    // counts no longer sum to 2^k - 1).
    let (m, a, b) = (4usize, 0b0111u32, 0b1100u32);
    let strict = prop_5_3(m, a, b, true).unwrap();
    let corrected = prop_5_3(m, a, b, false).unwrap();
    assert_ne!(strict.distribution, corrected.distribution);
    assert!(strict.distribution.total_codewords() < corrected.distribution.total_codewords());
    assert_eq!(corrected.distribution, oracle(&shared_punctured(m, a, b).subfield_defining_set().unwrap()));
    let strict6 = prop_5_6(m, a, b, true).unwrap();
    let corrected6 = prop_5_6(m, a, b, false).unwrap();
    assert_ne!(strict6.distribution, corrected6.distribution);

    // Balanced private sides: the misprinted expression happens to agree.
    let (a, b) = (0b0011u32, 0b0110u32);
    assert_eq!(
        prop_5_3(4, a, b, true).unwrap().distribution,
        prop_5_3(4, a, b, false).unwrap().distribution
    );
}

/// The corrected message-class cardinalities match direct enumeration
/// for every pair; the verbatim fourth entry differs exactly when the
/// private sides are unbalanced.
#[test]
fn class_cardinalities_match_direct_enumeration() {
    for m in 1..=4usize {
        for a in 0..1u32 << m {
            for b in 0..1u32 << m {
                let mut direct = [0u64; 5];
                for u in 0..1u32 << m {
                    direct[u_class(a, b, u) - 1] += 1;
                }
                assert_eq!(u_class_cardinalities(m, a, b), direct, "m={m} a={a:#b} b={b:#b}");
                let verbatim = u_class_cardinalities_verbatim(m, a, b);
                let p = 1u64 << (a & !b).count_ones();
                let q = 1u64 << (b & !a).count_ones();
                if p != q && p != 1 {
                    assert_ne!(verbatim[3], direct[3]);
                } else {
                    assert_eq!(verbatim, direct);
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Dual-distance and bound checks
// ---------------------------------------------------------------------------

#[test]
fn dual_distance_of_shared_images_is_three() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4F2A0D);
    for _ in 0..10 {
        let (m, a, b) = incomparable_pair(&mut rng, 4);
        let report = thm_5_5_check(m, a, b).unwrap();
        assert_eq!(report.dual_distance, Some(3));
        assert!(report.dual_distance_is_3);
        assert!(report.sphere_packing_strict);
        assert!(report.almost_optimal);
        assert_eq!(report.dual_k, report.n - report.k);
    }
}

#[test]
fn griesmer_sum_identity_for_complement_families() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4F2A0E);
    for _ in 0..40 {
        let (m, a, b) = not_both_full_pair(&mut rng);
        let quaternary = thm_4_4(m, a, b).unwrap();
        let (n, k, d) = quaternary.distribution.parameters();
        assert_eq!(griesmer_min_length(k, d, 4), n);
        let binary = thm_5_2(m, a, b).unwrap();
        let (n, k, d) = binary.distribution.parameters();
        assert_eq!(griesmer_min_length(k, d, 2), n);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The shortcut-laden Griesmer length agrees with the literal
    /// ceiling sum.
    #[test]
    fn griesmer_length_is_the_ceiling_sum(k in 1u64..=8, d in 1u64..=500, q in 2u64..=4) {
        let naive: u64 = (0..k).map(|i| d.div_ceil(q.pow(i as u32))).sum();
        prop_assert_eq!(griesmer_min_length(k, d, q), naive);
    }
}
