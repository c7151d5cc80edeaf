//! Exhaustive code computations with an explicit work budget.
//!
//! The brute-force engine walks every message of the ambient space and
//! tallies codeword weights.  Messages that differ by an element of the
//! kernel of `a -> c_D(a)` give the same codeword, so each tally is an
//! exact multiple of the kernel size `|field|^{m - rank D}`; the engine
//! divides that multiplicity out and refuses (rather than rounds) if the
//! division is not exact, since a remainder means the rank and the tally
//! disagree about the code.
//!
//! For product sets `D = D1 + w D2` the weight of a single codeword also
//! has a character-sum expression, computed here without touching the
//! code itself; the two paths cross-check each other in the test suites.

use crate::defining_sets::{DefiningSet, FieldTag};
use crate::gf4_algebra::{inner_product_masks, ones, F4Element, F4Vector};
use crate::simplicial::SimplicialComplex;
use crate::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Hard ceiling on `messages x length` for exhaustive walks.
pub const COORD_EVAL_BUDGET: u128 = 1 << 34;

/// Below this many messages the engine stays on one thread; the rayon
/// setup costs more than the walk.
const PARALLEL_THRESHOLD: u128 = 1 << 14;

// ---------------------------------------------------------------------------
// Weight distributions
// ---------------------------------------------------------------------------

/// The weight distribution of a linear code: `counts[w]` is the number of
/// codewords of weight `w > 0`; the single zero codeword is implicit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDistribution {
    pub n: u64,
    pub k: u64,
    /// Minimum nonzero weight; `0` for the zero code.
    pub d: u64,
    pub counts: BTreeMap<u64, u64>,
}

impl WeightDistribution {
    /// Normalizes a raw count map (weight-0 and count-0 entries dropped)
    /// and fills in the minimum distance.
    pub fn from_counts(n: u64, k: u64, counts: BTreeMap<u64, u64>) -> WeightDistribution {
        let counts: BTreeMap<u64, u64> = counts
            .into_iter()
            .filter(|&(w, c)| w > 0 && c > 0)
            .collect();
        let d = counts.keys().next().copied().unwrap_or(0);
        WeightDistribution { n, k, d, counts }
    }

    /// `[n, k, d]` as a tuple.
    pub fn parameters(&self) -> (u64, u64, u64) {
        (self.n, self.k, self.d)
    }

    /// Total number of codewords, the implicit zero word included.
    pub fn total_codewords(&self) -> u64 {
        1 + self.counts.values().sum::<u64>()
    }

    /// Renders `1 + A_{w1} z^{w1} + ...` in ascending weight order, with
    /// unit coefficients and the exponent 1 elided: `"1+21z^16+234z^24"`.
    pub fn weight_enumerator_string(&self) -> String {
        let mut out = String::from("1");
        for (&w, &c) in &self.counts {
            out.push('+');
            if c != 1 {
                out.push_str(&c.to_string());
            }
            out.push('z');
            if w != 1 {
                out.push('^');
                out.push_str(&w.to_string());
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Codewords
// ---------------------------------------------------------------------------

/// The codeword `c_D(a) = (a . d)_{d in D}` of an `F4` defining set.
pub fn codeword(d: &DefiningSet, a: &F4Vector) -> Result<Vec<F4Element>> {
    if d.field != FieldTag::F4 {
        return Err(Error::Precondition(
            "codeword over F4 requires an F4 defining set".into(),
        ));
    }
    if a.m != d.m {
        return Err(Error::Precondition(format!(
            "message lives in F4^{} but the set in F4^{}",
            a.m, d.m
        )));
    }
    Ok(d.elements
        .iter()
        .map(|&[da, db]| inner_product_masks(a.alpha, a.beta, da, db))
        .collect())
}

/// The codeword `(x . d)_{d in D}` of a binary defining set, message `x`
/// given as a mask.
pub fn binary_codeword(d: &DefiningSet, x: u32) -> Result<Vec<u8>> {
    if d.field != FieldTag::F2 {
        return Err(Error::Precondition(
            "binary_codeword requires an F2 defining set".into(),
        ));
    }
    if x & !ones(d.m) != 0 {
        return Err(Error::Precondition(format!(
            "message {x:#b} does not fit in F2^{}",
            d.m
        )));
    }
    Ok(d.elements
        .iter()
        .map(|&[mask, _]| ((x & mask).count_ones() & 1) as u8)
        .collect())
}

// ---------------------------------------------------------------------------
// Brute force
// ---------------------------------------------------------------------------

/// Exhaustive weight distribution of `C_D`, walking all
/// `|field|^m` messages.  Fails with [`Error::BudgetExceeded`] when
/// `messages x |D|` passes [`COORD_EVAL_BUDGET`].
pub fn weight_distribution_bruteforce(d: &DefiningSet) -> Result<WeightDistribution> {
    let n = d.len() as u64;
    if n == 0 {
        return Ok(WeightDistribution::from_counts(0, 0, BTreeMap::new()));
    }
    let log2_field = match d.field {
        FieldTag::F4 => 2,
        FieldTag::F2 => 1,
    };
    let messages: u128 = 1 << (log2_field * d.m);
    let needed = messages * n as u128;
    if needed > COORD_EVAL_BUDGET {
        return Err(Error::BudgetExceeded {
            needed,
            budget: COORD_EVAL_BUDGET,
        });
    }

    let k = d.rank() as u64;
    let multiplicity = 1u64 << (log2_field * d.m - log2_field * k as usize);
    let tally = match d.field {
        FieldTag::F4 => tally_weights_f4(d.m, &d.elements, messages as u64),
        FieldTag::F2 => tally_weights_f2(&d.elements, messages as u64),
    };

    debug_assert_eq!(tally.iter().sum::<u64>(), messages as u64);
    let mut counts = BTreeMap::new();
    for (w, &t) in tally.iter().enumerate() {
        if t == 0 {
            continue;
        }
        if t % multiplicity != 0 {
            return Err(Error::NonExactDivision {
                weight: w as u64,
                tally: t,
                multiplicity,
            });
        }
        if w > 0 {
            counts.insert(w as u64, t / multiplicity);
        }
    }
    assert_eq!(
        tally[0], multiplicity,
        "kernel size disagrees with the rank of the defining set"
    );
    Ok(WeightDistribution::from_counts(n, k, counts))
}

fn tally_weights_f4(m: usize, elements: &[[u32; 2]], messages: u64) -> Vec<u64> {
    let span = ones(m);
    let weight_of = |idx: u64| -> usize {
        let alpha = idx as u32 & span;
        let beta = (idx >> m) as u32;
        elements
            .iter()
            .filter(|&&[da, db]| !inner_product_masks(alpha, beta, da, db).is_zero())
            .count()
    };
    tally_by(messages, elements.len(), weight_of)
}

fn tally_weights_f2(elements: &[[u32; 2]], messages: u64) -> Vec<u64> {
    let weight_of = |idx: u64| -> usize {
        let x = idx as u32;
        elements
            .iter()
            .filter(|&&[mask, _]| (x & mask).count_ones() & 1 != 0)
            .count()
    };
    tally_by(messages, elements.len(), weight_of)
}

fn tally_by(messages: u64, n: usize, weight_of: impl Fn(u64) -> usize + Send + Sync) -> Vec<u64> {
    if (messages as u128) < PARALLEL_THRESHOLD {
        let mut tally = vec![0u64; n + 1];
        for idx in 0..messages {
            tally[weight_of(idx)] += 1;
        }
        return tally;
    }
    // Per-thread histograms merged by elementwise addition: associative
    // and commutative, so the result does not depend on work splitting.
    (0..messages)
        .into_par_iter()
        .fold(
            || vec![0u64; n + 1],
            |mut tally, idx| {
                tally[weight_of(idx)] += 1;
                tally
            },
        )
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

// ---------------------------------------------------------------------------
// Character-sum weights
// ---------------------------------------------------------------------------

/// Weight of the codeword of `a = alpha + w beta` in the unpunctured
/// product code of `D = D1 + w D2`, via
///
/// ```text
/// 4 wt = 3 |D| - [ chi_alpha(D1) chi_beta(D2)
///                + chi_beta(D1) chi_{alpha+beta}(D2)
///                + chi_{alpha+beta}(D1) chi_alpha(D2) ].
/// ```
///
/// Puncturing the zero coordinate does not change any weight, so this is
/// also the weight in the punctured code.
pub fn weight_via_character_sums(
    a: &F4Vector,
    d1: &SimplicialComplex,
    d2: &SimplicialComplex,
) -> u64 {
    debug_assert_eq!(d1.m(), d2.m());
    debug_assert_eq!(a.m, d1.m());
    let size = (d1.complex_size() * d2.complex_size()) as i64;
    let (alpha, beta) = (a.alpha, a.beta);
    let gamma = alpha ^ beta;
    let t = d1.chi_complex(alpha) * d2.chi_complex(beta)
        + d1.chi_complex(beta) * d2.chi_complex(gamma)
        + d1.chi_complex(gamma) * d2.chi_complex(alpha);
    let quarters = 3 * size - t;
    assert!(
        quarters >= 0 && quarters % 4 == 0,
        "character sums produced a non-weight: {quarters}/4"
    );
    (quarters / 4) as u64
}

/// Weight of the codeword of `a` over the complement set
/// `F4^m \ (D | {0})`, from its weight over the product set:
/// `wt_c(a) = 3 * 2^{2m-2} - wt(a)` for nonzero `a`, and `0` for `a = 0`.
pub fn complement_codeword_weight(m: usize, a_is_zero: bool, product_weight: u64) -> u64 {
    if a_is_zero {
        debug_assert_eq!(product_weight, 0);
        return 0;
    }
    let full = 3u64 << (2 * m - 2);
    debug_assert!(product_weight <= full);
    full - product_weight
}

// ---------------------------------------------------------------------------
// Dual-distance probe
// ---------------------------------------------------------------------------

/// Smallest size `s <= t_max` of a linearly dependent column set of the
/// generator matrix of a binary defining set, i.e. the dual minimum
/// distance if it is at most `t_max`; `None` when every column set of
/// size up to `t_max` is independent.  Supports `t_max <= 4`.
pub fn dual_min_distance_leq(d: &DefiningSet, t_max: usize) -> Result<Option<usize>> {
    if d.field != FieldTag::F2 {
        return Err(Error::Precondition(
            "dual_min_distance_leq requires an F2 defining set".into(),
        ));
    }
    if t_max == 0 || t_max > 4 {
        return Err(Error::Precondition(format!(
            "dual-distance probe supports t_max in 1..=4, got {t_max}"
        )));
    }
    let masks: Vec<u32> = d.elements.iter().map(|e| e[0]).collect();
    let n = masks.len();

    // s = 1: a zero column.
    if masks.contains(&0) {
        return Ok(Some(1));
    }
    if t_max == 1 {
        return Ok(None);
    }

    // s = 2: equal columns.  Defining sets are distinct by construction,
    // but explicit callers may hand anything.
    let member = MaskSet::new(d.m, &masks);
    if member.had_duplicates {
        return Ok(Some(2));
    }
    if t_max == 2 {
        return Ok(None);
    }

    // s = 3: a pair whose xor is a third column.
    for i in 0..n {
        for j in i + 1..n {
            let x = masks[i] ^ masks[j];
            // x != masks[i], masks[j] since columns are nonzero; x != 0
            // since they are distinct.
            if member.contains(x) {
                return Ok(Some(3));
            }
        }
    }
    if t_max == 3 {
        return Ok(None);
    }

    // s = 4: two pairs with equal xor.  Pairs sharing an index cannot
    // collide (equal xors would force two equal columns), so any repeated
    // xor value yields four distinct dependent columns.
    let pairs = n as u128 * (n as u128 - 1) / 2;
    if pairs > 1 << 26 {
        return Err(Error::BudgetExceeded {
            needed: pairs,
            budget: 1 << 26,
        });
    }
    let mut xors: Vec<u64> = Vec::with_capacity(pairs as usize);
    for i in 0..n {
        for j in i + 1..n {
            xors.push((masks[i] ^ masks[j]) as u64);
        }
    }
    xors.sort_unstable();
    if xors.windows(2).any(|w| w[0] == w[1]) {
        return Ok(Some(4));
    }
    Ok(None)
}

/// Membership structure for column masks: a direct bitset when the
/// ambient cube is small, a hash set otherwise.
enum MaskSetRepr {
    Bits(Vec<bool>),
    Hash(std::collections::HashSet<u32>),
}

struct MaskSet {
    repr: MaskSetRepr,
    had_duplicates: bool,
}

impl MaskSet {
    fn new(m: usize, masks: &[u32]) -> MaskSet {
        let mut had_duplicates = false;
        let repr = if m <= 24 {
            let mut bits = vec![false; 1 << m];
            for &x in masks {
                had_duplicates |= bits[x as usize];
                bits[x as usize] = true;
            }
            MaskSetRepr::Bits(bits)
        } else {
            let mut set = std::collections::HashSet::with_capacity(masks.len());
            for &x in masks {
                had_duplicates |= !set.insert(x);
            }
            MaskSetRepr::Hash(set)
        };
        MaskSet {
            repr,
            had_duplicates,
        }
    }

    fn contains(&self, x: u32) -> bool {
        match &self.repr {
            MaskSetRepr::Bits(bits) => bits[x as usize],
            MaskSetRepr::Hash(set) => set.contains(&x),
        }
    }
}

// ---------------------------------------------------------------------------
// Subfield subcodes
// ---------------------------------------------------------------------------

/// The subcode `C_D & F2^n`: codewords of an `F4` code all of whose
/// entries lie in the prime field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubfieldSubcode {
    pub n: u64,
    pub dimension: u32,
    /// Codewords as `0/1` strings in lexicographic order.
    pub codewords: Vec<String>,
}

/// Enumerates the subfield subcode of an `F4` defining-set code by
/// walking all messages; subject to the same budget as the weight engine.
pub fn subfield_subcode(d: &DefiningSet) -> Result<SubfieldSubcode> {
    if d.field != FieldTag::F4 {
        return Err(Error::Precondition(
            "subfield_subcode requires an F4 defining set".into(),
        ));
    }
    let n = d.len();
    let messages: u128 = 1 << (2 * d.m);
    let needed = messages * n.max(1) as u128;
    if needed > COORD_EVAL_BUDGET {
        return Err(Error::BudgetExceeded {
            needed,
            budget: COORD_EVAL_BUDGET,
        });
    }
    let span = ones(d.m);
    let mut seen = std::collections::HashSet::new();
    for idx in 0..messages as u64 {
        let alpha = idx as u32 & span;
        let beta = (idx >> d.m) as u32;
        let mut word = String::with_capacity(n);
        let mut binary = true;
        for &[da, db] in &d.elements {
            let e = inner_product_masks(alpha, beta, da, db);
            if e.b {
                binary = false;
                break;
            }
            word.push(if e.a { '1' } else { '0' });
        }
        if binary {
            seen.insert(word);
        }
    }
    let mut codewords: Vec<String> = seen.into_iter().collect();
    codewords.sort();
    assert!(
        codewords.len().is_power_of_two(),
        "a subfield subcode is F2-linear, so its size must be a power of two"
    );
    Ok(SubfieldSubcode {
        n: n as u64,
        dimension: codewords.len().trailing_zeros(),
        codewords,
    })
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
