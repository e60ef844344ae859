//! Exact rational arithmetic and linear algebra.
//!
//! Rationals are `num_rational::BigRational`, which is always kept in lowest
//! terms with a positive denominator, so equality is structural. Rank is
//! computed by fraction-free (Bareiss) elimination over the integers after
//! clearing denominators row by row.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a rational: {text:?}"));
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.entries[i * size + i] = Rational::one();
        }
        m
    }

    /// Builds a matrix from a list of equal-length rows. An empty list gives a
    /// `0 x 0` matrix.
    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row.iter().cloned());
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        let rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[Rational] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Row-major vectorization.
    pub fn vectorize(&self) -> Vec<Rational> {
        self.entries.clone()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && rank(self) == self.rows
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_rational).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Scales a rational vector by the lcm of its denominators, giving an integer
/// vector with the same sign pattern and the same span.
pub fn clear_denominators(values: &[Rational]) -> Vec<BigInt> {
    let lcm = values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    values
        .iter()
        .map(|v| v.numer() * (&lcm / v.denom()))
        .collect()
}

/// Divides an integer vector by the gcd of its entries. The zero vector is
/// returned unchanged.
pub fn primitive(values: &mut [BigInt]) {
    let g = values.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in values.iter_mut() {
            *v /= &g;
        }
    }
}

/// Exact rank over the rationals.
///
/// Each row is first scaled to integers; Bareiss elimination then keeps all
/// intermediate values integral. Pivots are the first nonzero entry in column
/// order among the remaining rows.
pub fn rank(m: &RationalMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows()).map(|r| clear_denominators(m.row(r))).collect();
    bareiss_rank(&mut a, m.cols())
}

fn bareiss_rank(a: &mut [Vec<BigInt>], cols: usize) -> usize {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = (&a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c]) / &prev;
                a[r][c] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Dimension of the affine hull of `points`.
pub fn affine_dimension(points: &[Vec<Rational>]) -> Result<usize> {
    let Some(base) = points.first() else {
        return Err(Error::NoPoints);
    };
    let diffs = differences(points, base)?;
    Ok(rank(&RationalMatrix::from_rows(&diffs)?))
}

pub(crate) fn differences(points: &[Vec<Rational>], base: &[Rational]) -> Result<Vec<Vec<Rational>>> {
    points
        .iter()
        .map(|p| {
            if p.len() != base.len() {
                return Err(Error::DimensionMismatch {
                    expected: base.len(),
                    found: p.len(),
                });
            }
            Ok(p.iter().zip(base).map(|(x, y)| x - y).collect())
        })
        .collect()
}

/// Reduced row echelon form of `rows`, pivoting only within the first `cols`
/// columns (any further columns are carried along, as in an augmented
/// matrix). Returns the nonzero reduced rows and their pivot columns.
pub fn row_echelon_basis(rows: &[Vec<Rational>], cols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][col].recip();
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][col].is_zero() {
                let factor = a[i][col].clone();
                for c in col..a[r].len() {
                    let delta = &factor * &a[r][c];
                    a[i][c] -= delta;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// Solves `m x = b` for square invertible `m`.
pub fn solve(m: &RationalMatrix, b: &[Rational]) -> Result<Vec<Rational>> {
    let n = m.rows();
    if !m.is_square() || b.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.len(),
        });
    }
    let mut aug: Vec<Vec<Rational>> = (0..n)
        .map(|r| {
            let mut row = m.row(r).to_vec();
            row.push(b[r].clone());
            row
        })
        .collect();
    let (reduced, pivots) = row_echelon_basis(&aug, n);
    if pivots.len() != n {
        return Err(Error::NotInvertible);
    }
    aug = reduced;
    Ok(aug.into_iter().map(|row| row[n].clone()).collect())
}

/// Inverse of a square invertible matrix.
pub fn inverse(m: &RationalMatrix) -> Result<RationalMatrix> {
    let n = m.rows();
    if !m.is_square() {
        return Err(Error::NotInvertible);
    }
    let aug: Vec<Vec<Rational>> = (0..n)
        .map(|r| {
            let mut row = m.row(r).to_vec();
            row.extend((0..n).map(|c| if c == r { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    let (reduced, pivots) = row_echelon_basis(&aug, n);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
        return Err(Error::NotInvertible);
    }
    let rows: Vec<Vec<Rational>> = reduced.into_iter().map(|row| row[n..].to_vec()).collect();
    RationalMatrix::from_rows(&rows)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn is_nonnegative(value: &Rational) -> bool {
    !value.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm_matrix_rows(n: usize) -> Vec<Vec<Rational>> {
        let mut out = Vec::new();
        for p in itertools::Itertools::permutations(0..n, n) {
            let mut v = vec![int(0); n * n];
            for (i, &j) in p.iter().enumerate() {
                v[i * n + j] = int(1);
            }
            out.push(v);
        }
        out
    }

    #[test]
    fn rank_of_identity_and_zero() {
        assert_eq!(rank(&RationalMatrix::identity(3)), 3);
        assert_eq!(rank(&RationalMatrix::zeros(2, 2)), 0);
    }

    #[test]
    fn rank_of_vectorized_s3_permutation_matrices() {
        let m = RationalMatrix::from_rows(&perm_matrix_rows(3)).unwrap();
        assert_eq!(m.rows(), 6);
        assert_eq!(rank(&m), 5);
    }

    #[test]
    fn affine_dimension_examples() {
        assert_eq!(affine_dimension(&[vec![int(3), int(1)]]).unwrap(), 0);
        let square = vec![
            vec![int(0), int(0)],
            vec![int(1), int(0)],
            vec![int(0), int(1)],
            vec![int(1), int(1)],
        ];
        assert_eq!(affine_dimension(&square).unwrap(), 2);
        assert_eq!(affine_dimension(&perm_matrix_rows(3)).unwrap(), 4);
        assert_eq!(affine_dimension(&[]), Err(Error::NoPoints));
    }

    #[test]
    fn rational_formatting() {
        assert_eq!(format_rational(&rational(6, -4)), "-3/2");
        assert_eq!(format_rational(&int(7)), "7");
        assert_eq!(format_rational(&rational(0, 5)), "0");
        assert_eq!(parse_rational(" -3/2 ").unwrap(), rational(-3, 2));
        assert_eq!(parse_rational("4/2").unwrap(), int(2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn fractional_rank() {
        let m = RationalMatrix::new(
            2,
            2,
            vec![rational(1, 2), rational(1, 3), rational(3, 2), int(1)],
        )
        .unwrap();
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn inverse_and_solve() {
        let m = RationalMatrix::from_integers(&[vec![2, 1], vec![1, 1]]).unwrap();
        let inv = inverse(&m).unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        let x = solve(&m, &[int(3), int(2)]).unwrap();
        assert_eq!(x, vec![int(1), int(1)]);
        let singular = RationalMatrix::from_integers(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(inverse(&singular), Err(Error::NotInvertible));
    }
}
