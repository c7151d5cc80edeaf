//! Simplicial complexes over the vertex set `[m] = {1, ..., m}`.
//!
//! A complex is a downward-closed family of subsets of `[m]`; it is stored
//! by its maximal faces, each face a bit mask with bit `i` standing for
//! vertex `i + 1`.  The generating-function view matters here: a complex
//! corresponds to the squarefree monomials of its faces, and the two
//! numbers a code construction needs from it are its size and its
//! character sums
//!
//! ```text
//! chi_u(D) = sum_{x in D} (-1)^{|u & x|},
//! ```
//!
//! both computed exactly by inclusion-exclusion over the maximal faces.
//!
//! For a pair of faces `(A, B)` the map `u -> (u & A, u & B)` partitions
//! `F2^m` into five classes on which the product `chi_u(P(A)) chi_u(P(B))`
//! is constant; [`u_class`] and [`u_class_cardinalities`] implement that
//! partition and its counting.

use crate::gf4_algebra::ones;
use crate::{Error, Result};
use std::fmt;

/// A subset of `[m]` as a bit mask (bit `i` is vertex `i + 1`).
pub type SubsetMask = u32;

/// Largest number of maximal faces a complex may carry.  The
/// inclusion-exclusion routines walk all `2^k - 1` nonempty subfamilies,
/// so the cap keeps them trivially cheap.
pub const MAX_MAXIMAL_FACES: usize = 8;

// ---------------------------------------------------------------------------
// Normalization and the complex type
// ---------------------------------------------------------------------------

/// Canonical maximal-face list: duplicates and faces contained in another
/// face are dropped, the rest sorted ascending as masks.  An empty input
/// denotes the complex `{emptyset}` and normalizes to `[0]`.
pub fn normalize(faces: &[SubsetMask]) -> Vec<SubsetMask> {
    let mut out: Vec<SubsetMask> = Vec::new();
    for &f in faces {
        if faces.iter().any(|&g| g != f && g & f == f && g | f == g) {
            // f is strictly contained in g (g covers all bits of f and
            // differs from it), hence not maximal.  Equal duplicates are
            // kept here and deduped below.
            continue;
        }
        if !out.contains(&f) {
            out.push(f);
        }
    }
    if out.is_empty() {
        out.push(0);
    }
    out.sort_unstable();
    out
}

/// A simplicial complex over `[m]`, held by its maximal faces in
/// normalized order.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    m: usize,
    maximal: Vec<SubsetMask>,
}

impl SimplicialComplex {
    /// Builds a complex from any generating list of faces (not
    /// necessarily maximal; the list is normalized).
    pub fn new(m: usize, faces: &[SubsetMask]) -> Result<SimplicialComplex> {
        if m == 0 || m > crate::gf4_algebra::MAX_M {
            return Err(Error::Precondition(format!(
                "vertex count m={m} outside 1..={}",
                crate::gf4_algebra::MAX_M
            )));
        }
        if let Some(&f) = faces.iter().find(|&&f| f & !ones(m) != 0) {
            return Err(Error::Precondition(format!(
                "face mask {f:#b} has vertices outside [{m}]"
            )));
        }
        let maximal = normalize(faces);
        if maximal.len() > MAX_MAXIMAL_FACES {
            return Err(Error::Precondition(format!(
                "complex has {} maximal faces, limit is {MAX_MAXIMAL_FACES}",
                maximal.len()
            )));
        }
        Ok(SimplicialComplex { m, maximal })
    }

    /// The power set of a single face.
    pub fn single(m: usize, face: SubsetMask) -> Result<SimplicialComplex> {
        SimplicialComplex::new(m, &[face])
    }

    /// The full power set of `[m]`.
    pub fn full(m: usize) -> Result<SimplicialComplex> {
        SimplicialComplex::new(m, &[ones(m)])
    }

    /// The complex `{emptyset}`.
    pub fn empty(m: usize) -> Result<SimplicialComplex> {
        SimplicialComplex::new(m, &[])
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn maximal_faces(&self) -> &[SubsetMask] {
        &self.maximal
    }

    /// The unique maximal face, if the complex is a power set `P(A)`.
    pub fn single_face(&self) -> Option<SubsetMask> {
        match self.maximal[..] {
            [f] => Some(f),
            _ => None,
        }
    }

    /// The maximal pair `(A, B)`, if the complex has exactly two maximal
    /// faces.
    pub fn face_pair(&self) -> Option<(SubsetMask, SubsetMask)> {
        match self.maximal[..] {
            [a, b] => Some((a, b)),
            _ => None,
        }
    }

    /// All faces, ascending as masks.
    pub fn enumerate_faces(&self) -> Vec<SubsetMask> {
        let mut seen = vec![false; 1 << self.m];
        for &f in &self.maximal {
            // Standard submask walk, including f itself and 0.
            let mut sub = f;
            loop {
                seen[sub as usize] = true;
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & f;
            }
        }
        (0..1u32 << self.m).filter(|&x| seen[x as usize]).collect()
    }

    /// Number of faces, by inclusion-exclusion over maximal subfamilies:
    /// `|D| = sum_{S != 0} (-1)^{|S|+1} 2^{|intersection of S|}`.
    pub fn complex_size(&self) -> u64 {
        let k = self.maximal.len();
        let mut size: i64 = 0;
        for s in 1u32..1 << k {
            let inter = self
                .maximal
                .iter()
                .enumerate()
                .filter(|&(i, _)| s >> i & 1 != 0)
                .fold(ones(self.m), |acc, (_, &f)| acc & f);
            let term = 1i64 << inter.count_ones();
            size += if s.count_ones() % 2 == 1 { term } else { -term };
        }
        debug_assert!(size > 0, "a complex always contains the empty face");
        size as u64
    }

    /// Character sum `chi_u(D) = sum_{x in D} (-1)^{|u & x|}`.
    ///
    /// For a power set `P(F)` the inner sum factors, giving
    /// `2^{|F|}` when `u & F = 0` and `0` otherwise; the union over
    /// maximal faces is again inclusion-exclusion.
    pub fn chi_complex(&self, u: SubsetMask) -> i64 {
        let k = self.maximal.len();
        let mut chi: i64 = 0;
        for s in 1u32..1 << k {
            let inter = self
                .maximal
                .iter()
                .enumerate()
                .filter(|&(i, _)| s >> i & 1 != 0)
                .fold(ones(self.m), |acc, (_, &f)| acc & f);
            if u & inter != 0 {
                continue;
            }
            let term = 1i64 << inter.count_ones();
            chi += if s.count_ones() % 2 == 1 { term } else { -term };
        }
        chi
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.maximal == [0] {
            return f.write_str("-");
        }
        for (i, &face) in self.maximal.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            f.write_str(&face_to_string(face))?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Character values
// ---------------------------------------------------------------------------

/// Additive character value `psi(u | x) = (-1)^{|u & x|}`.
#[inline]
pub fn psi(u: SubsetMask, x: SubsetMask) -> i64 {
    if (u & x).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

// ---------------------------------------------------------------------------
// The five-class partition for a face pair
// ---------------------------------------------------------------------------

/// Class of `u` in the partition of `F2^m` induced by faces `A` and `B`:
///
/// 1. `u` misses `A | B`;
/// 2. `u` misses `A` but meets `B \ A`;
/// 3. `u` misses `B` but meets `A \ B`;
/// 4. `u` meets both `A \ B` and `B \ A` but misses `A & B`;
/// 5. `u` meets `A & B`.
///
/// On each class the pair `(chi_u(P(A)), chi_u(P(B)))` is constant, which
/// is what the closed-form weight rows consume.
#[inline]
pub fn u_class(a: SubsetMask, b: SubsetMask, u: SubsetMask) -> usize {
    if u & a & b != 0 {
        5
    } else if u & a == 0 && u & b == 0 {
        1
    } else if u & a == 0 {
        2
    } else if u & b == 0 {
        3
    } else {
        4
    }
}

/// Cardinalities `[|U_1|, ..., |U_5|]` of the five classes in `F2^m`.
///
/// With `p = 2^{|A \ B|}`, `q = 2^{|B \ A|}` and `z = |A | B|`:
/// classes 1 to 4 have `2^{m-z}` times `1`, `q - 1`, `p - 1`,
/// `(p - 1)(q - 1)` members, and class 5 holds the rest,
/// `2^m - 2^{m - |A & B|}`.
pub fn u_class_cardinalities(m: usize, a: SubsetMask, b: SubsetMask) -> [u64; 5] {
    class_cardinalities(m, a, b, false)
}

/// Same as [`u_class_cardinalities`] but with the fourth count evaluated
/// as published, `2^{m-z} (p - 1)^2`, which miscounts whenever
/// `|A \ B| != |B \ A|` and `A` is not contained in `B`.
pub fn u_class_cardinalities_verbatim(m: usize, a: SubsetMask, b: SubsetMask) -> [u64; 5] {
    class_cardinalities(m, a, b, true)
}

fn class_cardinalities(m: usize, a: SubsetMask, b: SubsetMask, verbatim: bool) -> [u64; 5] {
    debug_assert!(a & !ones(m) == 0 && b & !ones(m) == 0);
    let z = (a | b).count_ones() as u64;
    let shared = (a & b).count_ones() as u64;
    let p: u64 = 1 << (a & !b).count_ones();
    let q: u64 = 1 << (b & !a).count_ones();
    let outside: u64 = 1 << (m as u64 - z);
    let fourth = if verbatim {
        (p - 1) * (p - 1)
    } else {
        (p - 1) * (q - 1)
    };
    [
        outside,
        outside * (q - 1),
        outside * (p - 1),
        outside * fourth,
        (1 << m) - (1u64 << (m as u64 - shared)),
    ]
}

// ---------------------------------------------------------------------------
// Text encoding
// ---------------------------------------------------------------------------

/// Parses a complex from its face-list encoding: faces separated by `;`,
/// each face a comma-separated list of vertices in `1..=m`.  A lone `-`
/// (or an empty string) is the complex `{emptyset}`.
///
/// `"1,2;2,3"` over `m = 3` is the complex with maximal faces
/// `{1,2}` and `{2,3}`.
pub fn parse_complex(m: usize, text: &str) -> Result<SimplicialComplex> {
    let text = text.trim();
    if text.is_empty() || text == "-" {
        return SimplicialComplex::empty(m);
    }
    let mut faces = Vec::new();
    for part in text.split(';') {
        let part = part.trim();
        if part.is_empty() || part == "-" {
            faces.push(0);
            continue;
        }
        let mut mask: SubsetMask = 0;
        for v in part.split(',') {
            let v: usize = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad vertex {:?} in face {part:?}", v.trim())))?;
            if v == 0 || v > m {
                return Err(Error::Parse(format!(
                    "vertex {v} outside 1..={m} in face {part:?}"
                )));
            }
            mask |= 1 << (v - 1);
        }
        faces.push(mask);
    }
    SimplicialComplex::new(m, &faces)
}

/// Renders a face mask as a vertex list, `"-"` for the empty face.
pub fn face_to_string(face: SubsetMask) -> String {
    if face == 0 {
        return "-".into();
    }
    let mut out = String::new();
    for i in 0..32 {
        if face >> i & 1 != 0 {
            if !out.is_empty() {
                out.push(',');
            }
            out.push_str(&(i + 1).to_string());
        }
    }
    out
}

/// Renders a face mask as a squarefree monomial, `"1"` for the empty
/// face: `{1,3}` becomes `"x1x3"`.
pub fn face_monomial(face: SubsetMask) -> String {
    if face == 0 {
        return "1".into();
    }
    let mut out = String::new();
    for i in 0..32 {
        if face >> i & 1 != 0 {
            out.push('x');
            out.push_str(&(i + 1).to_string());
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
