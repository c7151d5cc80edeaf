//! Pinned end-to-end constructions: small instances whose faces,
//! matrices, expanded sets, and weight distributions are known exactly.
//! Each test walks one pipeline from scratch and compares every
//! intermediate artifact, not just the final distribution.

use gf4codes::closed_forms::{prop_4_7, prop_5_1, prop_5_6, thm_5_2};
use gf4codes::code_engine::{binary_codeword, codeword, weight_distribution_bruteforce};
use gf4codes::defining_sets::{
    product_of_sets, product_set, shared_product, subfield_generator_matrix, DefiningSet,
};
use gf4codes::gf4_algebra::{binary_rank, F4Element, F4Matrix, F4Vector};
use gf4codes::simplicial::{face_monomial, SimplicialComplex};
use std::collections::BTreeSet;

const ZERO: F4Element = F4Element::ZERO;
const ONE: F4Element = F4Element::ONE;
const W: F4Element = F4Element::W;
const WW: F4Element = F4Element::ONE_PLUS_W;

/// The four-element product of `{x1, x2}` and `{x2, x1+x2 masks}` used
/// throughout the expansion tests: explicit mask lists, not complexes.
fn four_point_product() -> DefiningSet {
    product_of_sets(2, &[1, 2], &[2, 3]).expect("valid explicit product")
}

fn reversed_columns(g: &F4Matrix) -> F4Matrix {
    let rows: Vec<Vec<F4Element>> = (0..g.rows)
        .map(|r| (0..g.cols).rev().map(|c| g.get(r, c)).collect())
        .collect();
    F4Matrix::from_rows(rows).expect("rectangular")
}

// ---------------------------------------------------------------------------
// Faces and monomials
// ---------------------------------------------------------------------------

#[test]
fn face_monomials_and_complex_size() {
    let delta = SimplicialComplex::new(4, &[0b0011, 0b0110, 0b1100]).unwrap();
    let faces = delta.enumerate_faces();
    assert_eq!(faces, vec![0, 1, 2, 3, 4, 6, 8, 12]);
    let monomials: Vec<String> = faces.iter().map(|&f| face_monomial(f)).collect();
    assert_eq!(
        monomials,
        ["1", "x1", "x2", "x1x2", "x3", "x2x3", "x4", "x3x4"]
    );
    assert_eq!(delta.complex_size(), 8);
    assert_eq!(faces.len() as u64, delta.complex_size());
}

// ---------------------------------------------------------------------------
// The four-point product and its binary expansion
// ---------------------------------------------------------------------------

#[test]
fn product_set_matrices_expand_as_pinned() {
    let set = four_point_product();
    // Canonical element order: first factor ascending, second factor
    // ascending within it.
    assert_eq!(set.elements, vec![[1, 2], [1, 3], [2, 2], [2, 3]]);

    let g = set.generator_matrix().unwrap();
    assert_eq!(
        g,
        F4Matrix::from_rows(vec![vec![ONE, WW, ZERO, W], vec![W, W, WW, WW]]).unwrap()
    );
    // The same matrix is also quoted with its columns in the exact
    // reverse order; both orders generate the same code.
    assert_eq!(
        reversed_columns(&g),
        F4Matrix::from_rows(vec![vec![W, ZERO, WW, ONE], vec![WW, WW, W, W]]).unwrap()
    );

    // Stacked binary expansion, in the reversed column order it is
    // usually quoted in.
    let expanded = subfield_generator_matrix(&reversed_columns(&g));
    let quoted = [
        [1, 0, 1, 0],
        [1, 1, 1, 1],
        [1, 0, 0, 1],
        [0, 0, 1, 1],
    ];
    for (r, row) in quoted.iter().enumerate() {
        for (c, &bit) in row.iter().enumerate() {
            assert_eq!(expanded.get(r, c) as u8, bit, "G(2)[{r}][{c}]");
        }
    }
    // The stack has four rows but only rank 3.
    assert_eq!(binary_rank(&expanded), 3);

    // The expanded defining set, compared as a set of mask vectors.
    let image = set.subfield_defining_set().unwrap();
    let got: BTreeSet<u32> = image.elements.iter().map(|e| e[0]).collect();
    let quoted_masks: BTreeSet<u32> = [0b0111, 0b0010, 0b1011, 0b1110].into_iter().collect();
    assert_eq!(got, quoted_masks);

    // Both codes' distributions.
    let quaternary = weight_distribution_bruteforce(&set).unwrap();
    assert_eq!(quaternary.parameters(), (4, 2, 2));
    assert_eq!(quaternary.weight_enumerator_string(), "1+3z^2+6z^3+6z^4");
    let binary = weight_distribution_bruteforce(&image).unwrap();
    assert_eq!(binary.parameters(), (4, 3, 2));
    assert_eq!(binary.weight_enumerator_string(), "1+6z^2+z^4");
}

/// The expanded binary code is exactly the set of `w`-components of the
/// quaternary codewords: for `a = x + w y` the binary message `(x, y)`
/// produces the coordinatewise `w`-part of the quaternary codeword of
/// `a`.  Checked as a set equality over all messages.
#[test]
fn binary_code_collects_the_w_components_of_the_quaternary_code() {
    let set = four_point_product();
    let image = set.subfield_defining_set().unwrap();
    let m = set.m;

    let mut w_parts: BTreeSet<Vec<u8>> = BTreeSet::new();
    for alpha in 0..1u32 << m {
        for beta in 0..1u32 << m {
            let a = F4Vector::new(m, alpha, beta);
            let c = codeword(&set, &a).unwrap();
            w_parts.insert(c.iter().map(|e| e.b as u8).collect());
        }
    }
    let mut binary_words: BTreeSet<Vec<u8>> = BTreeSet::new();
    for x in 0..1u32 << (2 * m) {
        binary_words.insert(binary_codeword(&image, x).unwrap());
    }
    assert_eq!(w_parts, binary_words);
    // Sanity: the sets are genuinely smaller than the message space.
    assert_eq!(binary_words.len(), 8);
}

#[test]
fn quaternary_subcode_of_binary_vectors_is_pinned() {
    let set = four_point_product();
    let subcode = gf4codes::code_engine::subfield_subcode(&set).unwrap();
    assert_eq!(subcode.n, 4);
    assert_eq!(subcode.dimension, 1);
    assert_eq!(subcode.codewords, vec!["0000".to_string(), "0110".to_string()]);
}

// ---------------------------------------------------------------------------
// Shared products with disjoint faces
// ---------------------------------------------------------------------------

#[test]
fn disjoint_shared_product_matches_oracle() {
    let (m, a, b) = (4, 0b0011u32, 0b1100u32);
    let delta = SimplicialComplex::new(m, &[a, b]).unwrap();
    let set = shared_product(&delta).unwrap().puncture_zero();
    let oracle = weight_distribution_bruteforce(&set).unwrap();
    let predicted = prop_4_7(m, a, b, false).unwrap();
    assert_eq!(predicted.distribution, oracle);
    assert_eq!(oracle.parameters(), (48, 4, 24));
    assert_eq!(
        oracle.weight_enumerator_string(),
        "1+18z^24+12z^30+90z^36+108z^38+27z^40"
    );
}

#[test]
fn disjoint_shared_complement_binary_image_matches_oracle() {
    let (m, a, b) = (4, 0b0011u32, 0b1100u32);
    let delta = SimplicialComplex::new(m, &[a, b]).unwrap();
    let set = shared_product(&delta)
        .unwrap()
        .complement()
        .unwrap()
        .subfield_defining_set()
        .unwrap();
    let oracle = weight_distribution_bruteforce(&set).unwrap();
    let predicted = prop_5_6(m, a, b, false).unwrap();
    assert_eq!(predicted.distribution, oracle);
    assert_eq!(oracle.parameters(), (207, 8, 100));
    assert_eq!(
        oracle.weight_enumerator_string(),
        "1+18z^100+108z^102+81z^104+36z^108+12z^114"
    );
}

#[test]
fn overlapping_shared_complement_binary_image_matches_oracle() {
    let (m, a, b) = (4, 0b0011u32, 0b0110u32);
    let delta = SimplicialComplex::new(m, &[a, b]).unwrap();
    let set = shared_product(&delta)
        .unwrap()
        .complement()
        .unwrap()
        .subfield_defining_set()
        .unwrap();
    let oracle = weight_distribution_bruteforce(&set).unwrap();
    let predicted = prop_5_6(m, a, b, false).unwrap();
    assert_eq!(predicted.distribution, oracle);
    assert_eq!(oracle.parameters(), (220, 8, 104));
    assert_eq!(
        oracle.weight_enumerator_string(),
        "1+8z^104+16z^108+192z^110+20z^112+16z^116+3z^128"
    );
}

// ---------------------------------------------------------------------------
// Binary images of plain products
// ---------------------------------------------------------------------------

#[test]
fn one_weight_product_image() {
    let (m, a, b) = (3, 0b111u32, 0b011u32);
    let da = SimplicialComplex::single(m, a).unwrap();
    let db = SimplicialComplex::single(m, b).unwrap();
    let set = product_set(&da, &db)
        .unwrap()
        .puncture_zero()
        .subfield_defining_set()
        .unwrap();
    let oracle = weight_distribution_bruteforce(&set).unwrap();
    let predicted = prop_5_1(m, a, b).unwrap();
    assert_eq!(predicted.distribution, oracle);
    assert!(predicted.flags.one_weight);
    assert_eq!(oracle.parameters(), (31, 5, 16));
    assert_eq!(oracle.weight_enumerator_string(), "1+31z^16");
}

#[test]
fn full_complement_binary_image_is_griesmer() {
    let m = 3;
    let da = SimplicialComplex::empty(m).unwrap();
    let db = SimplicialComplex::empty(m).unwrap();
    let set = product_set(&da, &db)
        .unwrap()
        .complement()
        .unwrap()
        .subfield_defining_set()
        .unwrap();
    let oracle = weight_distribution_bruteforce(&set).unwrap();
    let predicted = thm_5_2(m, 0, 0).unwrap();
    assert_eq!(predicted.distribution, oracle);
    assert!(predicted.flags.griesmer_code);
    assert!(predicted.flags.one_weight);
    assert_eq!(oracle.parameters(), (63, 6, 32));
    assert_eq!(oracle.weight_enumerator_string(), "1+63z^32");
    assert_eq!(gf4codes::bounds::griesmer_min_length(6, 32, 2), 63);
}
