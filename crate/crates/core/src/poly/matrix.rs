use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Coefficient, GradedPoly, Symbol};
use crate::arith::{ModN, Rational};

/// Integral-domain operations needed by the determinant routines.
pub trait DetRing: Clone {
    fn is_zero_elem(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
    fn ring_sub(&self, other: &Self) -> Self;
    fn ring_add(&self, other: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    /// Division known to be exact (fraction-free elimination guarantees it).
    fn div_exact_elem(&self, other: &Self) -> Self;
}

macro_rules! field_det_ring {
    ($t:ty) => {
        impl DetRing for $t {
            fn is_zero_elem(&self) -> bool {
                Coefficient::is_zero(self)
            }
            fn zero_like(&self) -> Self {
                <$t as Coefficient>::zero_in(self.field_of())
            }
            fn one_like(&self) -> Self {
                <$t as Coefficient>::one_in(self.field_of())
            }
            fn ring_mul(&self, other: &Self) -> Self {
                self.times(other)
            }
            fn ring_sub(&self, other: &Self) -> Self {
                self.minus(other)
            }
            fn ring_add(&self, other: &Self) -> Self {
                self.plus(other)
            }
            fn ring_neg(&self) -> Self {
                self.negated()
            }
            fn div_exact_elem(&self, other: &Self) -> Self {
                self.times(&other.inverse().expect("nonzero pivot"))
            }
        }
    };
}

field_det_ring!(Rational);
field_det_ring!(ModN);

impl DetRing for BigInt {
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn div_exact_elem(&self, other: &Self) -> Self {
        debug_assert!((self % other).is_zero());
        self / other
    }
}

impl<C: Coefficient> DetRing for GradedPoly<C> {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn zero_like(&self) -> Self {
        GradedPoly::zero(self.field())
    }
    fn one_like(&self) -> Self {
        GradedPoly::one(self.field())
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn div_exact_elem(&self, other: &Self) -> Self {
        self.div_exact(other)
            .expect("fraction-free elimination divides exactly")
    }
}

/// Fraction-free (Bareiss) elimination. Every intermediate entry is a minor of the input.
pub fn det_bareiss<R: DetRing>(mut a: Vec<Vec<R>>) -> R {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n), "square matrix required");
    if n == 0 {
        panic!("determinant of an empty matrix has no ring context");
    }
    let mut sign_negative = false;
    let mut prev = a[0][0].one_like();
    for k in 0..n {
        if a[k][k].is_zero_elem() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero_elem()) {
                Some(r) => {
                    a.swap(k, r);
                    sign_negative = !sign_negative;
                }
                None => return a[0][0].zero_like(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let lhs = a[i][j].ring_mul(&a[k][k]);
                let rhs = a[i][k].ring_mul(&a[k][j]);
                a[i][j] = lhs.ring_sub(&rhs).div_exact_elem(&prev);
            }
            a[i][k] = a[i][k].zero_like();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign_negative {
        d.ring_neg()
    } else {
        d
    }
}

/// Laplace expansion down the rows, memoizing the minor for each set of still-free
/// columns. Zero entries are skipped, which is what makes banded matrices cheap.
pub fn det_minor_expansion<R: DetRing>(a: &[Vec<R>]) -> R {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n), "square matrix required");
    assert!(n > 0 && n <= 63, "matrix size out of range");
    let mut memo: HashMap<u64, R> = HashMap::new();
    let full: u64 = (1u64 << n) - 1;
    minor(a, full, &mut memo)
}

fn minor<R: DetRing>(a: &[Vec<R>], cols: u64, memo: &mut HashMap<u64, R>) -> R {
    let n = a.len();
    let used = cols.count_ones() as usize;
    let row = n - used;
    if used == 1 {
        let j = cols.trailing_zeros() as usize;
        return a[row][j].clone();
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let mut acc = a[row][0].zero_like();
    let mut position = 0;
    for j in 0..n {
        if cols & (1 << j) == 0 {
            continue;
        }
        let entry = &a[row][j];
        if !entry.is_zero_elem() {
            let sub = minor(a, cols & !(1 << j), memo);
            if !sub.is_zero_elem() {
                let term = entry.ring_mul(&sub);
                acc = if position % 2 == 0 {
                    acc.ring_add(&term)
                } else {
                    acc.ring_sub(&term)
                };
            }
        }
        position += 1;
    }
    memo.insert(cols, acc.clone());
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetAlgorithm {
    Bareiss,
    MinorExpansion,
}

impl DetAlgorithm {
    pub fn name(self) -> &'static str {
        match self {
            DetAlgorithm::Bareiss => "bareiss",
            DetAlgorithm::MinorExpansion => "minor-expansion",
        }
    }
}

/// Square matrix of polynomials over one coefficient field.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMatrix<C: Coefficient> {
    rows: Vec<Vec<GradedPoly<C>>>,
}

impl<C: Coefficient> PolyMatrix<C> {
    pub fn new(rows: Vec<Vec<GradedPoly<C>>>) -> Self {
        let n = rows.len();
        assert!(n > 0, "empty matrix");
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        let field = rows[0][0].field();
        assert!(
            rows.iter().flatten().all(|p| p.field() == field),
            "matrix entries must share one coefficient field"
        );
        PolyMatrix { rows }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &GradedPoly<C> {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<GradedPoly<C>>] {
        &self.rows
    }

    /// Entries involving more than one symbol are handled by minor expansion;
    /// numeric or univariate matrices go through fraction-free elimination.
    pub fn preferred_algorithm(&self) -> DetAlgorithm {
        let multivariate = self
            .rows
            .iter()
            .flatten()
            .any(|p| !Symbol::ALL.iter().any(|&s| p.is_univariate_in(s)));
        if multivariate {
            DetAlgorithm::MinorExpansion
        } else {
            DetAlgorithm::Bareiss
        }
    }

    pub fn det(&self) -> GradedPoly<C> {
        self.det_with(self.preferred_algorithm())
    }

    pub fn det_with(&self, algorithm: DetAlgorithm) -> GradedPoly<C> {
        match algorithm {
            DetAlgorithm::Bareiss => det_bareiss(self.rows.clone()),
            DetAlgorithm::MinorExpansion => det_minor_expansion(&self.rows),
        }
    }
}
