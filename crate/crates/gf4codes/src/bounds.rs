//! Classical bound checks for `[n, k, d]_q` parameters: Griesmer,
//! sphere packing, and comparison against a table of best-known minimum
//! distances.
//!
//! Everything is exact.  The sphere-packing comparison uses big integers,
//! with powers of two compared through bit lengths so that astronomically
//! long codes never materialize `q^n`; it is skipped (reported as
//! unevaluated) when the packing radius is so large that even the exact
//! ball volume is out of reach.

use crate::{Error, Result};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::HashMap;

/// Largest packing radius `t = (d - 1) / 2` for which the exact ball
/// volume is computed; beyond it [`classify`] leaves the sphere-packing
/// fields unevaluated.
pub const MAX_PACKING_RADIUS: u64 = 1 << 16;

// ---------------------------------------------------------------------------
// Griesmer
// ---------------------------------------------------------------------------

/// Griesmer lower bound on the length of a `[n, k, d]_q` code:
/// `sum_{i=0}^{k-1} ceil(d / q^i)`.  Returns `0` when `k = 0` or `d = 0`.
pub fn griesmer_min_length(k: u64, d: u64, q: u64) -> u64 {
    assert!(q >= 2, "field size must be at least 2");
    if k == 0 || d == 0 {
        return 0;
    }
    let d = d as u128;
    let mut sum: u128 = 0;
    let mut power: u128 = 1;
    for i in 0..k {
        if power >= d {
            // Every remaining term is ceil(d / q^i) = 1.
            sum += (k - i) as u128;
            break;
        }
        sum += d.div_ceil(power);
        power = power.saturating_mul(q as u128);
    }
    u64::try_from(sum).expect("griesmer sum fits u64 for u64 inputs")
}

// ---------------------------------------------------------------------------
// Sphere packing
// ---------------------------------------------------------------------------

/// Exact three-way comparison of `q^k V_q(n, t)` against `q^n`, where
/// `t = (d - 1) / 2` and `V_q(n, t) = sum_{i=0}^{t} C(n, i) (q - 1)^i`.
/// `Less`/`Equal` mean the parameters satisfy the sphere-packing bound,
/// `Equal` alone means a perfect code.
pub fn sphere_packing_cmp(n: u64, k: u64, d: u64, q: u64) -> Ordering {
    assert!(q >= 2, "field size must be at least 2");
    assert!(k <= n, "dimension exceeds length");
    let t = d.saturating_sub(1) / 2;
    let qm1 = BigUint::from(q - 1);
    let mut volume = BigUint::from(1u32);
    let mut binom = BigUint::from(1u32);
    let mut qm1_pow = BigUint::from(1u32);
    for i in 1..=t.min(n) {
        // C(n, i) from C(n, i-1): multiply first, divide after; the
        // division is exact at every step.
        binom = binom * (n - i + 1) / i;
        qm1_pow *= &qm1;
        volume += &binom * &qm1_pow;
        // The volume only grows, so overshoot is final.
        if cmp_with_power(&volume, q, n - k) == Ordering::Greater {
            return Ordering::Greater;
        }
    }
    cmp_with_power(&volume, q, n - k)
}

/// Whether `[n, k, d]_q` satisfies the sphere-packing bound.
pub fn sphere_packing_holds(n: u64, k: u64, d: u64, q: u64) -> bool {
    sphere_packing_cmp(n, k, d, q) != Ordering::Greater
}

/// Compares `v` with `q^e` without materializing the power when `q` is a
/// power of two (bit-length arithmetic is exact there).
fn cmp_with_power(v: &BigUint, q: u64, e: u64) -> Ordering {
    if q.is_power_of_two() {
        let bit_e = e * q.trailing_zeros() as u64;
        let bits = v.bits();
        return if bits <= bit_e {
            Ordering::Less
        } else if bits == bit_e + 1 && v.trailing_zeros() == Some(bit_e) {
            Ordering::Equal
        } else {
            Ordering::Greater
        };
    }
    let e = u32::try_from(e).expect("exponent fits u32 for non-power-of-two fields");
    v.cmp(&BigUint::from(q).pow(e))
}

// ---------------------------------------------------------------------------
// Best-known distances
// ---------------------------------------------------------------------------

/// Lookup table of best-known minimum distances, keyed by `(q, n, k)`.
#[derive(Clone, Debug, Default)]
pub struct BestKnownTable {
    entries: HashMap<(u64, u64, u64), u64>,
}

impl BestKnownTable {
    /// Parses CSV lines of the form `q,n,k,best_d`.  Empty lines, `#`
    /// comments, and a literal `q,n,k,best_d` header are skipped.
    pub fn from_csv(text: &str) -> Result<BestKnownTable> {
        let mut entries = HashMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || line == "q,n,k,best_d" {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 4 {
                return Err(Error::Parse(format!(
                    "line {}: expected 4 comma-separated fields, got {}",
                    lineno + 1,
                    fields.len()
                )));
            }
            let mut nums = [0u64; 4];
            for (slot, field) in nums.iter_mut().zip(&fields) {
                *slot = field.parse().map_err(|_| {
                    Error::Parse(format!("line {}: bad number {field:?}", lineno + 1))
                })?;
            }
            let [q, n, k, best_d] = nums;
            entries.insert((q, n, k), best_d);
        }
        Ok(BestKnownTable { entries })
    }

    pub fn lookup(&self, q: u64, n: u64, k: u64) -> Option<u64> {
        self.entries.get(&(q, n, k)).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

/// Everything the bound checks have to say about one parameter triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub q: u64,
    pub n: u64,
    pub k: u64,
    pub d: u64,
    /// `sum_{i<k} ceil(d / q^i)`: the shortest length Griesmer allows.
    pub griesmer_min_n: u64,
    /// The code meets the Griesmer bound with equality.
    pub griesmer_code: bool,
    /// No `[n, k, d+1]_q` code can exist by Griesmer, or the code is a
    /// Griesmer code outright: `d` is Griesmer-optimal at this length.
    pub griesmer_met: bool,
    /// Sphere-packing bound satisfied; `None` if skipped (radius beyond
    /// [`MAX_PACKING_RADIUS`]).
    pub sphere_packing_ok: Option<bool>,
    /// Sphere-packing equality (a perfect code); `None` if skipped.
    pub perfect: Option<bool>,
    /// Best-known distance for `(q, n, k)`, when a table holds one.
    pub best_known_d: Option<u64>,
    /// `d` equals the best-known distance.
    pub distance_optimal: Option<bool>,
    /// `d + 1` equals the best-known distance.
    pub almost_optimal: Option<bool>,
}

/// Runs every bound check against one parameter triple.
pub fn classify(q: u64, n: u64, k: u64, d: u64, table: Option<&BestKnownTable>) -> BoundReport {
    let griesmer_min_n = griesmer_min_length(k, d, q);
    let griesmer_code = k > 0 && d > 0 && griesmer_min_n == n;
    let griesmer_met = griesmer_code || (d > 0 && griesmer_min_length(k, d + 1, q) > n);
    let (sphere_packing_ok, perfect) = if k <= n && d.saturating_sub(1) / 2 <= MAX_PACKING_RADIUS {
        let cmp = sphere_packing_cmp(n, k, d, q);
        (
            Some(cmp != Ordering::Greater),
            Some(cmp == Ordering::Equal),
        )
    } else {
        (None, None)
    };
    let best_known_d = table.and_then(|t| t.lookup(q, n, k));
    BoundReport {
        q,
        n,
        k,
        d,
        griesmer_min_n,
        griesmer_code,
        griesmer_met,
        sphere_packing_ok,
        perfect,
        best_known_d,
        distance_optimal: best_known_d.map(|bd| d == bd),
        almost_optimal: best_known_d.map(|bd| d + 1 == bd),
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn griesmer_equality_on_simplex_codes() {
        // Quaternary simplex [21, 3, 16] and repetition [5, 1, 5].
        assert_eq!(griesmer_min_length(3, 16, 4), 21);
        assert_eq!(griesmer_min_length(1, 5, 2), 5);
        assert_eq!(griesmer_min_length(0, 7, 2), 0);
        assert_eq!(griesmer_min_length(4, 3, 2), 3 + 2 + 1 + 1);
    }

    #[test]
    fn hamming_and_golay_codes_are_perfect() {
        for (n, k, d, q) in [(7u64, 4, 3, 2u64), (23, 12, 7, 2), (11, 6, 5, 3)] {
            assert_eq!(sphere_packing_cmp(n, k, d, q), Ordering::Equal, "[{n},{k},{d}]_{q}");
        }
    }

    #[test]
    fn sphere_packing_rejects_overfull_parameters() {
        assert_eq!(sphere_packing_cmp(7, 5, 3, 2), Ordering::Greater);
        assert!(!sphere_packing_holds(7, 5, 3, 2));
        assert!(sphere_packing_holds(7, 4, 3, 2));
        assert_eq!(sphere_packing_cmp(8, 4, 3, 2), Ordering::Less);
    }

    #[test]
    fn classify_marks_griesmer_codes() {
        let report = classify(4, 21, 3, 16, None);
        assert!(report.griesmer_code);
        assert!(report.griesmer_met);
        assert_eq!(report.sphere_packing_ok, Some(true));
        assert_eq!(report.perfect, Some(false));
        assert_eq!(report.best_known_d, None);

        // [4, 1, 3]_2 exists but d = 4 would too: not Griesmer-optimal.
        let report = classify(2, 4, 1, 3, None);
        assert!(!report.griesmer_code);
        assert!(!report.griesmer_met);
    }

    #[test]
    fn classify_skips_unreachable_radii() {
        let report = classify(2, u64::MAX / 4, 10, u64::MAX / 8, None);
        assert_eq!(report.sphere_packing_ok, None);
        assert_eq!(report.perfect, None);
    }

    #[test]
    fn best_known_table_round_trip() {
        let csv = "\
# sample entries
q,n,k,best_d
4,12,2,9
4,8,2,6
2,220,8,109
";
        let table = BestKnownTable::from_csv(csv).unwrap();
        assert_eq!(table.len(), 3);
        assert_eq!(table.lookup(4, 12, 2), Some(9));
        assert_eq!(table.lookup(4, 99, 4), None);

        let report = classify(4, 12, 2, 9, Some(&table));
        assert_eq!(report.distance_optimal, Some(true));
        assert_eq!(report.almost_optimal, Some(false));
        let report = classify(2, 220, 8, 108, Some(&table));
        assert_eq!(report.distance_optimal, Some(false));
        assert_eq!(report.almost_optimal, Some(true));
    }

    #[test]
    fn best_known_table_rejects_junk() {
        assert!(BestKnownTable::from_csv("4,12,2").is_err());
        assert!(BestKnownTable::from_csv("4,12,2,x").is_err());
    }
}
