//! Arithmetic over `F4 = F2(w)` with `w^2 = w + 1`, and linear algebra
//! over `F4` and `F2`.
//!
//! Field elements are bit pairs `(a, b)` standing for `a + w b`.  Vectors
//! in `F4^m` are stored bit-sliced as two `u32` masks `(alpha, beta)`, so
//! a vector is `alpha + w beta` componentwise.  This makes scalar
//! multiplication a pair of mask swizzles and inner products a handful of
//! popcounts, which is what the exhaustive weight-distribution engine
//! lives on.

use crate::{Error, Result};
use std::fmt;

// ---------------------------------------------------------------------------
// Scalars
// ---------------------------------------------------------------------------

/// An element of `F4`, stored as the bit pair `(a, b)` of `a + w b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct F4Element {
    pub a: bool,
    pub b: bool,
}

impl F4Element {
    pub const ZERO: F4Element = F4Element { a: false, b: false };
    pub const ONE: F4Element = F4Element { a: true, b: false };
    pub const W: F4Element = F4Element { a: false, b: true };
    pub const ONE_PLUS_W: F4Element = F4Element { a: true, b: true };

    /// Index in `{0, 1, w, 1+w} -> {0, 1, 2, 3}`.
    #[inline]
    pub fn index(self) -> usize {
        self.a as usize | (self.b as usize) << 1
    }

    #[inline]
    pub fn from_index(i: usize) -> F4Element {
        debug_assert!(i < 4);
        F4Element {
            a: i & 1 != 0,
            b: i & 2 != 0,
        }
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        !self.a && !self.b
    }

    /// Multiplicative inverse; `None` for zero.  The nonzero elements form
    /// a cyclic group of order 3, so every nonzero element is its own
    /// inverse's square: `1 -> 1`, `w -> 1+w`, `1+w -> w`.
    pub fn inverse(self) -> Option<F4Element> {
        match (self.a, self.b) {
            (false, false) => None,
            (true, false) => Some(F4Element::ONE),
            (false, true) => Some(F4Element::ONE_PLUS_W),
            (true, true) => Some(F4Element::W),
        }
    }
}

/// Sum in `F4` (componentwise XOR of the bit pairs).
#[inline]
pub fn f4_add(x: F4Element, y: F4Element) -> F4Element {
    F4Element {
        a: x.a ^ y.a,
        b: x.b ^ y.b,
    }
}

/// Product in `F4`.  Expanding `(a1 + w b1)(a2 + w b2)` with
/// `w^2 = 1 + w` gives the bit pair
/// `(a1 a2 + b1 b2, a1 b2 + a2 b1 + b1 b2)`.
#[inline]
pub fn f4_mul(x: F4Element, y: F4Element) -> F4Element {
    F4Element {
        a: (x.a & y.a) ^ (x.b & y.b),
        b: (x.a & y.b) ^ (x.b & y.a) ^ (x.b & y.b),
    }
}

impl std::ops::Add for F4Element {
    type Output = F4Element;
    #[inline]
    fn add(self, rhs: F4Element) -> F4Element {
        f4_add(self, rhs)
    }
}

impl std::ops::Mul for F4Element {
    type Output = F4Element;
    #[inline]
    fn mul(self, rhs: F4Element) -> F4Element {
        f4_mul(self, rhs)
    }
}

impl fmt::Display for F4Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match (self.a, self.b) {
            (false, false) => "0",
            (true, false) => "1",
            (false, true) => "w",
            (true, true) => "1+w",
        })
    }
}

impl fmt::Debug for F4Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// ---------------------------------------------------------------------------
// Bit-sliced vectors
// ---------------------------------------------------------------------------

/// Largest supported ambient dimension for `F4^m` vectors.
pub const MAX_M: usize = 16;

/// A vector in `F4^m`, `m <= 16`, stored as the mask pair
/// `(alpha, beta)` with coordinate `i` equal to `alpha_i + w beta_i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct F4Vector {
    pub m: usize,
    pub alpha: u32,
    pub beta: u32,
}

impl F4Vector {
    pub fn new(m: usize, alpha: u32, beta: u32) -> F4Vector {
        assert!(m <= MAX_M, "ambient dimension {m} exceeds {MAX_M}");
        let mask = ones(m);
        assert!(alpha & !mask == 0 && beta & !mask == 0, "mask bits outside [m]");
        F4Vector { m, alpha, beta }
    }

    pub fn zero(m: usize) -> F4Vector {
        F4Vector::new(m, 0, 0)
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.alpha == 0 && self.beta == 0
    }

    #[inline]
    pub fn get(self, i: usize) -> F4Element {
        debug_assert!(i < self.m);
        F4Element {
            a: self.alpha >> i & 1 != 0,
            b: self.beta >> i & 1 != 0,
        }
    }

    pub fn set(&mut self, i: usize, e: F4Element) {
        debug_assert!(i < self.m);
        let bit = 1u32 << i;
        self.alpha = self.alpha & !bit | if e.a { bit } else { 0 };
        self.beta = self.beta & !bit | if e.b { bit } else { 0 };
    }

    /// Hamming weight (number of nonzero coordinates).
    #[inline]
    pub fn weight(self) -> u32 {
        (self.alpha | self.beta).count_ones()
    }

    #[inline]
    pub fn add(self, other: F4Vector) -> F4Vector {
        debug_assert_eq!(self.m, other.m);
        F4Vector {
            m: self.m,
            alpha: self.alpha ^ other.alpha,
            beta: self.beta ^ other.beta,
        }
    }

    /// Scalar multiple.  In sliced form `w (alpha, beta) = (beta,
    /// alpha ^ beta)` and `(1+w)(alpha, beta) = (alpha ^ beta, alpha)`.
    #[inline]
    pub fn scalar_mul(self, s: F4Element) -> F4Vector {
        let (alpha, beta) = scalar_mul_masks(s, self.alpha, self.beta);
        F4Vector {
            m: self.m,
            alpha,
            beta,
        }
    }
}

impl fmt::Display for F4Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..self.m {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.get(i))?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for F4Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Scalar multiplication on raw mask pairs.
#[inline]
pub fn scalar_mul_masks(s: F4Element, alpha: u32, beta: u32) -> (u32, u32) {
    match (s.a, s.b) {
        (false, false) => (0, 0),
        (true, false) => (alpha, beta),
        (false, true) => (beta, alpha ^ beta),
        (true, true) => (alpha ^ beta, alpha),
    }
}

#[inline]
fn parity(x: u32) -> bool {
    x.count_ones() & 1 != 0
}

/// All-ones mask of width `m`.
#[inline]
pub fn ones(m: usize) -> u32 {
    debug_assert!(m <= 32);
    if m == 32 {
        u32::MAX
    } else {
        (1u32 << m) - 1
    }
}

/// Standard bilinear form `x . y = sum_i x_i y_i` on `F4^m`.
///
/// With `x = ax + w bx` and `y = ay + w by`, expanding coordinatewise and
/// reducing mod `w^2 = 1 + w` leaves one parity per bit of the product
/// formula.
#[inline]
pub fn inner_product(x: F4Vector, y: F4Vector) -> F4Element {
    debug_assert_eq!(x.m, y.m);
    inner_product_masks(x.alpha, x.beta, y.alpha, y.beta)
}

/// `inner_product` on raw mask pairs; the hot path of the brute-force
/// engine.
#[inline]
pub fn inner_product_masks(ax: u32, bx: u32, ay: u32, by: u32) -> F4Element {
    F4Element {
        a: parity(ax & ay) ^ parity(bx & by),
        b: parity(ax & by) ^ parity(bx & ay) ^ parity(bx & by),
    }
}

// ---------------------------------------------------------------------------
// Dense matrices over F4
// ---------------------------------------------------------------------------

/// A dense row-major matrix over `F4`.
#[derive(Clone, PartialEq, Eq)]
pub struct F4Matrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<F4Element>,
}

impl F4Matrix {
    pub fn zero(rows: usize, cols: usize) -> F4Matrix {
        F4Matrix {
            rows,
            cols,
            entries: vec![F4Element::ZERO; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<F4Element>>) -> Result<F4Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Precondition("ragged matrix rows".into()));
        }
        Ok(F4Matrix {
            rows: r,
            cols: c,
            entries: rows.concat(),
        })
    }

    /// Matrix whose `j`-th column is `columns[j]`, rows indexed by the
    /// `m` coordinates of the column vectors.
    pub fn from_columns(m: usize, columns: &[F4Vector]) -> F4Matrix {
        let mut mat = F4Matrix::zero(m, columns.len());
        for (j, v) in columns.iter().enumerate() {
            debug_assert_eq!(v.m, m);
            for i in 0..m {
                mat.set(i, j, v.get(i));
            }
        }
        mat
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> F4Element {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, e: F4Element) {
        self.entries[r * self.cols + c] = e;
    }

    pub fn row(&self, r: usize) -> &[F4Element] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }
}

impl fmt::Display for F4Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Column-aligned so that w and 1+w entries line up.
        let width = (0..self.rows * self.cols)
            .map(|i| self.entries[i].to_string().len())
            .max()
            .unwrap_or(1);
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", self.get(r, c).to_string())?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for F4Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F4Matrix {}x{}", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}

/// Rank over `F4` by Gaussian elimination with first-nonzero pivoting.
pub fn f4_rank(mat: &F4Matrix) -> usize {
    let mut work = mat.clone();
    let mut rank = 0;
    for col in 0..work.cols {
        let Some(pivot) = (rank..work.rows).find(|&r| !work.get(r, col).is_zero()) else {
            continue;
        };
        for c in 0..work.cols {
            let tmp = work.get(rank, c);
            work.set(rank, c, work.get(pivot, c));
            work.set(pivot, c, tmp);
        }
        let inv = work.get(rank, col).inverse().expect("pivot is nonzero");
        for c in 0..work.cols {
            let e = work.get(rank, c);
            work.set(rank, c, f4_mul(e, inv));
        }
        for r in 0..work.rows {
            if r != rank && !work.get(r, col).is_zero() {
                let factor = work.get(r, col);
                for c in 0..work.cols {
                    let e = f4_add(work.get(r, c), f4_mul(factor, work.get(rank, c)));
                    work.set(r, c, e);
                }
            }
        }
        rank += 1;
        if rank == work.rows {
            break;
        }
    }
    rank
}

/// Rank of the span of bit-sliced vectors given as `[alpha, beta]` mask
/// pairs.  Echelon elimination on mask pairs: each basis vector is
/// normalized so its pivot coordinate is 1, and reduction subtracts the
/// right scalar multiple.
pub fn f4_span_rank(elements: &[[u32; 2]]) -> usize {
    // basis[j] = Some((alpha, beta)) with pivot coordinate j equal to 1.
    let mut basis: [Option<(u32, u32)>; 32] = [None; 32];
    let mut rank = 0;
    for &[mut alpha, mut beta] in elements {
        while alpha | beta != 0 {
            let j = (alpha | beta).trailing_zeros() as usize;
            let coeff = F4Element {
                a: alpha >> j & 1 != 0,
                b: beta >> j & 1 != 0,
            };
            match basis[j] {
                Some((ba, bb)) => {
                    let (sa, sb) = scalar_mul_masks(coeff, ba, bb);
                    alpha ^= sa;
                    beta ^= sb;
                }
                None => {
                    // Normalize the pivot to 1 by multiplying with its
                    // inverse, then store.
                    let inv = coeff.inverse().expect("pivot coefficient is nonzero");
                    let (na, nb) = scalar_mul_masks(inv, alpha, beta);
                    basis[j] = Some((na, nb));
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

// ---------------------------------------------------------------------------
// Binary matrices
// ---------------------------------------------------------------------------

/// A dense row-major matrix over `F2`, rows packed into `u64` words.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryMatrix {
    pub rows: usize,
    pub cols: usize,
    words_per_row: usize,
    words: Vec<u64>,
}

impl BinaryMatrix {
    pub fn zero(rows: usize, cols: usize) -> BinaryMatrix {
        let words_per_row = cols.div_ceil(64).max(1);
        BinaryMatrix {
            rows,
            cols,
            words_per_row,
            words: vec![0; rows * words_per_row],
        }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        self.words[r * self.words_per_row + c / 64] >> (c % 64) & 1 != 0
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let w = &mut self.words[r * self.words_per_row + c / 64];
        if bit {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.words[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    fn xor_row(&mut self, dst: usize, src: usize) {
        debug_assert_ne!(dst, src);
        for i in 0..self.words_per_row {
            let s = self.words[src * self.words_per_row + i];
            self.words[dst * self.words_per_row + i] ^= s;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.words_per_row {
            self.words.swap(a * self.words_per_row + i, b * self.words_per_row + i);
        }
    }
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c) as u8)?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}

/// Rank over `F2` by word-packed Gaussian elimination.
pub fn binary_rank(mat: &BinaryMatrix) -> usize {
    let mut work = mat.clone();
    let mut rank = 0;
    for col in 0..work.cols {
        let Some(pivot) = (rank..work.rows).find(|&r| work.get(r, col)) else {
            continue;
        };
        work.swap_rows(rank, pivot);
        for r in 0..work.rows {
            if r != rank && work.get(r, col) {
                work.xor_row(r, rank);
            }
        }
        rank += 1;
        if rank == work.rows {
            break;
        }
    }
    rank
}

/// Rank of the `F2`-span of bit masks (each mask is a vector over `F2`).
pub fn binary_span_rank(masks: &[u32]) -> usize {
    let mut basis = [0u32; 32];
    let mut rank = 0;
    for &m in masks {
        let mut v = m;
        while v != 0 {
            let j = v.trailing_zeros() as usize;
            if basis[j] == 0 {
                basis[j] = v;
                rank += 1;
                break;
            }
            v ^= basis[j];
        }
    }
    rank
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
