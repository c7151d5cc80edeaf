//! Defining sets and the constructions that connect them.
//!
//! A defining set `D = {d_1, ..., d_n}` in `F4^m` (or `F2^m`) fixes the
//! linear code `C_D = {(a . d_1, ..., a . d_n) : a in F4^m}`; the order of
//! `elements` is the coordinate order of that code.  Sets are built four
//! ways and remember which one:
//!
//! * product of two complexes, `D = D1 + w D2`, in the canonical order
//!   `d1` ascending outer, `d2` ascending inner;
//! * puncturing, `D \ {0}`, order preserved;
//! * complement, `F4^m \ (D | {0})`, ascending by the encoding
//!   `beta * 2^m + alpha` (the zero vector is never a member);
//! * binary subfield image, `d1 + w d2 -> (d2, d1 + d2)` in `F2^{2m}`,
//!   order preserved.
//!
//! Elements are stored bit-sliced as `[alpha, beta]` mask pairs; binary
//! sets use `[mask, 0]`.

use crate::gf4_algebra::{
    binary_span_rank, f4_span_rank, ones, BinaryMatrix, F4Element, F4Matrix, F4Vector,
};
use crate::simplicial::{SimplicialComplex, SubsetMask};
use crate::{Error, Result};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize};
use std::fmt;

// ---------------------------------------------------------------------------
// Tags
// ---------------------------------------------------------------------------

/// Ground field of a defining set.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum FieldTag {
    F4,
    F2,
}

impl FieldTag {
    /// Number of field elements (message alphabet size per coordinate).
    pub fn size(self) -> u64 {
        match self {
            FieldTag::F4 => 4,
            FieldTag::F2 => 2,
        }
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldTag::F4 => "F4",
            FieldTag::F2 => "F2",
        })
    }
}

/// How a defining set came to be.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Product,
    Punctured,
    Complement,
    SubfieldImage,
    Explicit,
}

// ---------------------------------------------------------------------------
// The set type
// ---------------------------------------------------------------------------

/// Largest `m` for which [`DefiningSet::complement`] will materialize
/// `F4^m`; beyond it the element vector alone runs to gigabytes.
pub const MAX_COMPLEMENT_M: usize = 12;

/// An ordered defining set over `F4^m` or `F2^m`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DefiningSet {
    pub field: FieldTag,
    pub m: usize,
    /// `[alpha, beta]` mask pairs over `F4`; `[mask, 0]` over `F2`.
    pub elements: Vec<[u32; 2]>,
    pub provenance: Provenance,
}

impl DefiningSet {
    pub fn new_f4(m: usize, elements: Vec<[u32; 2]>, provenance: Provenance) -> Result<DefiningSet> {
        if m == 0 || m > crate::gf4_algebra::MAX_M {
            return Err(Error::Precondition(format!(
                "ambient dimension m={m} outside 1..={}",
                crate::gf4_algebra::MAX_M
            )));
        }
        let mask = ones(m);
        if let Some(e) = elements.iter().find(|e| (e[0] | e[1]) & !mask != 0) {
            return Err(Error::Precondition(format!(
                "element ({:#b}, {:#b}) does not fit in F4^{m}",
                e[0], e[1]
            )));
        }
        let set = DefiningSet {
            field: FieldTag::F4,
            m,
            elements,
            provenance,
        };
        set.check_distinct()?;
        Ok(set)
    }

    pub fn new_f2(m: usize, masks: Vec<u32>, provenance: Provenance) -> Result<DefiningSet> {
        if m == 0 || m > 32 {
            return Err(Error::Precondition(format!(
                "ambient dimension m={m} outside 1..=32"
            )));
        }
        let bound = ones(m);
        if let Some(&e) = masks.iter().find(|&&e| e & !bound != 0) {
            return Err(Error::Precondition(format!(
                "element {e:#b} does not fit in F2^{m}"
            )));
        }
        let set = DefiningSet {
            field: FieldTag::F2,
            m,
            elements: masks.into_iter().map(|e| [e, 0]).collect(),
            provenance,
        };
        set.check_distinct()?;
        Ok(set)
    }

    fn check_distinct(&self) -> Result<()> {
        let mut seen = std::collections::HashSet::with_capacity(self.elements.len());
        for e in &self.elements {
            if !seen.insert(*e) {
                return Err(Error::Precondition(format!(
                    "repeated element ({}, {}) in defining set",
                    e[0], e[1]
                )));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains_zero(&self) -> bool {
        self.elements.contains(&[0, 0])
    }

    /// Dimension of the code `C_D`: the rank of `D` as vectors over the
    /// ground field.
    pub fn rank(&self) -> usize {
        match self.field {
            FieldTag::F4 => f4_span_rank(&self.elements),
            FieldTag::F2 => {
                let masks: Vec<u32> = self.elements.iter().map(|e| e[0]).collect();
                binary_span_rank(&masks)
            }
        }
    }

    /// Drops the zero vector if present; coordinate order is preserved.
    pub fn puncture_zero(&self) -> DefiningSet {
        DefiningSet {
            field: self.field,
            m: self.m,
            elements: self
                .elements
                .iter()
                .copied()
                .filter(|e| *e != [0, 0])
                .collect(),
            provenance: Provenance::Punctured,
        }
    }

    /// The complement `F4^m \ (D | {0})`, ascending by
    /// `beta * 2^m + alpha`.  The zero vector is excluded whether or not
    /// it belongs to `D`, so complementing twice returns the punctured
    /// set.
    pub fn complement(&self) -> Result<DefiningSet> {
        if self.field != FieldTag::F4 {
            return Err(Error::Precondition(
                "complement is defined for F4 defining sets".into(),
            ));
        }
        if self.m > MAX_COMPLEMENT_M {
            return Err(Error::BudgetExceeded {
                needed: 1u128 << (2 * self.m),
                budget: 1u128 << (2 * MAX_COMPLEMENT_M),
            });
        }
        let m = self.m;
        let mut in_d = vec![false; 1 << (2 * m)];
        in_d[0] = true;
        for &[a, b] in &self.elements {
            in_d[((b as usize) << m) | a as usize] = true;
        }
        let elements: Vec<[u32; 2]> = (0..1u32 << (2 * m))
            .filter(|&enc| !in_d[enc as usize])
            .map(|enc| [enc & ones(m), enc >> m])
            .collect();
        Ok(DefiningSet {
            field: FieldTag::F4,
            m,
            elements,
            provenance: Provenance::Complement,
        })
    }

    /// Binary image of an `F4` set under `d1 + w d2 -> (d2, d1 + d2)`,
    /// a set in `F2^{2m}` in the same coordinate order.  The map is a
    /// bijection of `F4^m` onto `F2^{2m}`, so distinctness carries over.
    pub fn subfield_defining_set(&self) -> Result<DefiningSet> {
        if self.field != FieldTag::F4 {
            return Err(Error::Precondition(
                "subfield image is defined for F4 defining sets".into(),
            ));
        }
        let m = self.m;
        let elements: Vec<[u32; 2]> = self
            .elements
            .iter()
            .map(|&[a, b]| [b | ((a ^ b) << m), 0])
            .collect();
        Ok(DefiningSet {
            field: FieldTag::F2,
            m: 2 * m,
            elements,
            provenance: Provenance::SubfieldImage,
        })
    }

    /// Generator matrix of `C_D` over `F4`: column `j` is `d_j`.
    /// (Rows may be dependent; the code dimension is [`DefiningSet::rank`].)
    pub fn generator_matrix(&self) -> Result<F4Matrix> {
        if self.field != FieldTag::F4 {
            return Err(Error::Precondition(
                "generator_matrix is defined for F4 defining sets".into(),
            ));
        }
        let columns: Vec<F4Vector> = self
            .elements
            .iter()
            .map(|&[a, b]| F4Vector::new(self.m, a, b))
            .collect();
        Ok(F4Matrix::from_columns(self.m, &columns))
    }

    /// Generator matrix of a binary set: column `j` is the mask `d_j`.
    pub fn binary_generator_matrix(&self) -> Result<BinaryMatrix> {
        if self.field != FieldTag::F2 {
            return Err(Error::Precondition(
                "binary_generator_matrix is defined for F2 defining sets".into(),
            ));
        }
        let mut mat = BinaryMatrix::zero(self.m, self.elements.len());
        for (j, &[mask, _]) in self.elements.iter().enumerate() {
            for i in 0..self.m {
                if mask >> i & 1 != 0 {
                    mat.set(i, j, true);
                }
            }
        }
        Ok(mat)
    }
}

impl fmt::Display for DefiningSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (j, &[a, b]) in self.elements.iter().enumerate() {
            if j > 0 {
                f.write_str(", ")?;
            }
            match self.field {
                FieldTag::F4 => write!(f, "{}", F4Vector::new(self.m, a, b))?,
                FieldTag::F2 => {
                    f.write_str("(")?;
                    for i in 0..self.m {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{}", a >> i & 1)?;
                    }
                    f.write_str(")")?;
                }
            }
        }
        f.write_str("}")
    }
}

// ---------------------------------------------------------------------------
// Serde: F4 elements as [alpha, beta] pairs, F2 elements as bare masks
// ---------------------------------------------------------------------------

impl Serialize for DefiningSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("DefiningSet", 4)?;
        st.serialize_field("field", &self.field)?;
        st.serialize_field("m", &self.m)?;
        match self.field {
            FieldTag::F4 => st.serialize_field("elements", &self.elements)?,
            FieldTag::F2 => {
                let flat: Vec<u32> = self.elements.iter().map(|e| e[0]).collect();
                st.serialize_field("elements", &flat)?;
            }
        }
        st.serialize_field("provenance", &self.provenance)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for DefiningSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<DefiningSet, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum RawElement {
            Pair([u32; 2]),
            Mask(u32),
        }

        #[derive(Deserialize)]
        struct Raw {
            field: FieldTag,
            m: usize,
            elements: Vec<RawElement>,
            #[serde(default)]
            provenance: Option<Provenance>,
        }

        let raw = Raw::deserialize(d)?;
        let provenance = raw.provenance.unwrap_or(Provenance::Explicit);
        let result = match raw.field {
            FieldTag::F4 => {
                let elements: std::result::Result<Vec<[u32; 2]>, D::Error> = raw
                    .elements
                    .into_iter()
                    .map(|e| match e {
                        RawElement::Pair(p) => Ok(p),
                        RawElement::Mask(_) => Err(serde::de::Error::custom(
                            "F4 elements must be [alpha, beta] pairs",
                        )),
                    })
                    .collect();
                DefiningSet::new_f4(raw.m, elements?, provenance)
            }
            FieldTag::F2 => {
                let masks: std::result::Result<Vec<u32>, D::Error> = raw
                    .elements
                    .into_iter()
                    .map(|e| match e {
                        RawElement::Mask(x) => Ok(x),
                        RawElement::Pair([x, 0]) => Ok(x),
                        RawElement::Pair(_) => Err(serde::de::Error::custom(
                            "F2 elements must be bare masks",
                        )),
                    })
                    .collect();
                DefiningSet::new_f2(raw.m, masks?, provenance)
            }
        };
        result.map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Constructions from complexes
// ---------------------------------------------------------------------------

/// Product set `D = D1 + w D2` of two explicit face lists: all pairs
/// `(d1, d2)` with `d1` outer ascending and `d2` inner ascending (inputs
/// are sorted and deduplicated first).  The result contains the zero
/// vector exactly when both lists contain the empty face.
pub fn product_of_sets(
    m: usize,
    d1: &[SubsetMask],
    d2: &[SubsetMask],
) -> Result<DefiningSet> {
    let mut d1 = d1.to_vec();
    let mut d2 = d2.to_vec();
    d1.sort_unstable();
    d1.dedup();
    d2.sort_unstable();
    d2.dedup();
    let mut elements = Vec::with_capacity(d1.len() * d2.len());
    for &a in &d1 {
        for &b in &d2 {
            elements.push([a, b]);
        }
    }
    DefiningSet::new_f4(m, elements, Provenance::Product)
}

/// Product set `D = D1 + w D2` of two complexes over the same `[m]`.
pub fn product_set(d1: &SimplicialComplex, d2: &SimplicialComplex) -> Result<DefiningSet> {
    if d1.m() != d2.m() {
        return Err(Error::Precondition(format!(
            "complexes live over different vertex sets ({} and {})",
            d1.m(),
            d2.m()
        )));
    }
    product_of_sets(d1.m(), &d1.enumerate_faces(), &d2.enumerate_faces())
}

/// Shared-complex product `D = D + w D` of a single complex.
pub fn shared_product(delta: &SimplicialComplex) -> Result<DefiningSet> {
    product_set(delta, delta)
}

/// Binary generator matrix of the subfield code: for `G` with rows
/// `g_i = G_1_i + w G_2_i`, stacks the `k` rows `G_2_i` on top of the
/// `k` rows `G_1_i + G_2_i`, giving a `2k x n` matrix over `F2`.
pub fn subfield_generator_matrix(g: &F4Matrix) -> BinaryMatrix {
    let (k, n) = (g.rows, g.cols);
    let mut out = BinaryMatrix::zero(2 * k, n);
    for i in 0..k {
        for j in 0..n {
            let e = g.get(i, j);
            out.set(i, j, e.b);
            out.set(k + i, j, e.a ^ e.b);
        }
    }
    out
}

/// Coordinate `i` of a stored `[alpha, beta]` element, as a scalar.
#[inline]
pub fn element_at(pair: [u32; 2], i: usize) -> F4Element {
    F4Element {
        a: pair[0] >> i & 1 != 0,
        b: pair[1] >> i & 1 != 0,
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
