//! Rational generating functions with integer coefficients: exact recovery
//! from series terms by linear algebra over the rationals, series expansion,
//! and the closed form for k = 3.

use num::{BigInt, BigRational, BigUint, One, Zero};

use crate::error::{Error, Result};

/// A rational generating function in reduced form: integer-coefficient
/// numerator and denominator (ascending powers), no common polynomial
/// factor, denominator constant term exactly 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalGf {
    numerator: Vec<BigInt>,
    denominator: Vec<BigInt>,
}

impl RationalGf {
    /// Canonicalizes and validates: reduces by the polynomial gcd, scales the
    /// denominator constant term to 1, and insists the result has integer
    /// coefficients (true for any integer power series).
    pub fn new(numerator: Vec<BigInt>, denominator: Vec<BigInt>) -> Result<Self> {
        let num: Vec<BigRational> = numerator.into_iter().map(BigRational::from).collect();
        let den: Vec<BigRational> = denominator.into_iter().map(BigRational::from).collect();
        Self::from_rational(num, den)
    }

    fn from_rational(num: Vec<BigRational>, den: Vec<BigRational>) -> Result<Self> {
        let mut num = poly::trim(num);
        let mut den = poly::trim(den);
        if den.is_empty() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        if num.is_empty() {
            return Ok(RationalGf {
                numerator: vec![BigInt::zero()],
                denominator: vec![BigInt::one()],
            });
        }
        let g = poly::gcd(num.clone(), den.clone());
        if poly::degree(&g) > 0 {
            num = poly::div_exact(&num, &g);
            den = poly::div_exact(&den, &g);
        }
        if den[0].is_zero() {
            return Err(Error::InvalidInput(
                "denominator vanishes at 0; not a power series".into(),
            ));
        }
        let scale = den[0].clone();
        for c in num.iter_mut() {
            *c /= &scale;
        }
        for c in den.iter_mut() {
            *c /= &scale;
        }
        let to_int = |poly: Vec<BigRational>, side: &str| -> Result<Vec<BigInt>> {
            poly.into_iter()
                .map(|c| {
                    if c.is_integer() {
                        Ok(c.to_integer())
                    } else {
                        Err(Error::InvalidInput(format!(
                            "{side} does not normalize to integer coefficients"
                        )))
                    }
                })
                .collect()
        };
        Ok(RationalGf {
            numerator: to_int(num, "numerator")?,
            denominator: to_int(den, "denominator")?,
        })
    }

    /// Ascending coefficients of the numerator.
    pub fn numerator(&self) -> &[BigInt] {
        &self.numerator
    }

    /// Ascending coefficients of the denominator; constant term is 1.
    pub fn denominator(&self) -> &[BigInt] {
        &self.denominator
    }

    /// The first `len` coefficients of the power series expansion.
    pub fn series(&self, len: usize) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = Vec::with_capacity(len);
        for m in 0..len {
            let mut acc = self
                .numerator
                .get(m)
                .cloned()
                .unwrap_or_else(BigInt::zero);
            for i in 1..=m.min(self.denominator.len() - 1) {
                acc -= &self.denominator[i] * &out[m - i];
            }
            out.push(acc);
        }
        out
    }
}

/// Fits the minimal rational generating function matching every supplied
/// term: the smallest order L such that a constant-coefficient recurrence of
/// order L generates the tail from index L on, solved exactly over the
/// rationals, with the numerator read off the initial terms. The fit is
/// verified against all supplied terms and reduced before returning.
///
/// Requires at least `2 * degree_bound + 2` terms so that a spurious fit
/// cannot survive verification.
pub fn fit_rational_gf(terms: &[BigUint], degree_bound: usize) -> Result<RationalGf> {
    if terms.len() < 2 * degree_bound + 2 {
        return Err(Error::InvalidInput(format!(
            "fitting with degree bound {degree_bound} needs at least {} terms, got {}",
            2 * degree_bound + 2,
            terms.len()
        )));
    }
    let t: Vec<BigRational> = terms
        .iter()
        .map(|v| BigRational::from(BigInt::from(v.clone())))
        .collect();
    let expected: Vec<BigInt> = terms.iter().map(|v| BigInt::from(v.clone())).collect();

    for order in 0..=degree_bound {
        // Unknowns q_1..q_order with t[n] + sum q_i t[n-i] = 0 for n >= order.
        let mut rows = Vec::new();
        for n in order..t.len() {
            let mut row: Vec<BigRational> = (1..=order).map(|i| t[n - i].clone()).collect();
            row.push(-t[n].clone());
            rows.push(row);
        }
        let Some(q) = solve_exact(rows, order) else {
            continue;
        };
        let mut den = vec![BigRational::one()];
        den.extend(q);
        let num: Vec<BigRational> = (0..order)
            .map(|m| {
                (0..=m)
                    .map(|i| &den[i] * &t[m - i])
                    .fold(BigRational::zero(), |acc, v| acc + v)
            })
            .collect();
        let candidate = RationalGf::from_rational(num, den)?;
        if candidate.series(expected.len()) == expected {
            return Ok(candidate);
        }
    }
    Err(Error::FitFailure(format!(
        "no linear recurrence of order <= {degree_bound} generates the series"
    )))
}

/// The closed-form generating function for the number of uniquely
/// 3-determined permutations:
/// `(1 - 2x + 2x^2 + x^3 - x^5 + x^6) / ((1 - x - x^3)(1 - x)^2)`.
pub fn gf_reference_k3() -> RationalGf {
    let int = |v: i64| BigInt::from(v);
    let numerator = vec![int(1), int(-2), int(2), int(1), int(0), int(-1), int(1)];
    let cubic = [int(1), int(-1), int(0), int(-1)];
    let linear = [int(1), int(-1)];
    let denominator = int_poly_mul(&int_poly_mul(&cubic, &linear), &linear);
    RationalGf::new(numerator, denominator).expect("the reference form is already reduced")
}

fn int_poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Gaussian elimination over the rationals on an augmented system with
/// `cols` unknowns; returns the particular solution with free variables set
/// to zero, or `None` when the system is inconsistent.
fn solve_exact(mut rows: Vec<Vec<BigRational>>, cols: usize) -> Option<Vec<BigRational>> {
    let row_count = rows.len();
    let mut pivot_row = 0;
    let mut pivot_cols = Vec::new();
    for col in 0..cols {
        let Some(r) = (pivot_row..row_count).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, r);
        let inv = rows[pivot_row][col].clone();
        for c in col..=cols {
            rows[pivot_row][c] /= &inv;
        }
        for r2 in 0..row_count {
            if r2 != pivot_row && !rows[r2][col].is_zero() {
                let factor = rows[r2][col].clone();
                for c in col..=cols {
                    let delta = &rows[pivot_row][c] * &factor;
                    rows[r2][c] -= delta;
                }
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
        if pivot_row == row_count {
            break;
        }
    }
    for row in rows.iter().skip(pivot_row) {
        if row[..cols].iter().all(Zero::is_zero) && !row[cols].is_zero() {
            return None;
        }
    }
    let mut solution = vec![BigRational::zero(); cols];
    for (i, &col) in pivot_cols.iter().enumerate() {
        solution[col] = rows[i][cols].clone();
    }
    Some(solution)
}

mod poly {
    use num::{BigRational, Zero};

    pub fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
        p
    }

    pub fn degree(p: &[BigRational]) -> usize {
        p.len().saturating_sub(1)
    }

    /// Euclidean remainder, normalized to a monic leading coefficient.
    fn rem(mut a: Vec<BigRational>, b: &[BigRational]) -> Vec<BigRational> {
        let db = degree(b);
        let lead = b[db].clone();
        while a.len() > db {
            let coeff = a.last().unwrap() / &lead;
            let shift = a.len() - 1 - db;
            for i in 0..=db {
                let delta = &b[i] * &coeff;
                a[shift + i] -= delta;
            }
            a = trim(a);
            if a.is_empty() {
                break;
            }
        }
        a
    }

    /// Monic polynomial gcd by the Euclidean algorithm.
    pub fn gcd(mut a: Vec<BigRational>, mut b: Vec<BigRational>) -> Vec<BigRational> {
        a = trim(a);
        b = trim(b);
        while !b.is_empty() {
            let r = rem(a, &b);
            a = b;
            b = r;
        }
        if let Some(lead) = a.last().cloned() {
            for c in a.iter_mut() {
                *c /= &lead;
            }
        }
        a
    }

    /// Exact division; the divisor must divide evenly.
    pub fn div_exact(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut rem: Vec<BigRational> = a.to_vec();
        let db = degree(b);
        let lead = b[db].clone();
        let mut quotient = vec![BigRational::zero(); a.len() - db];
        while rem.len() > db {
            let coeff = rem.last().unwrap() / &lead;
            let shift = rem.len() - 1 - db;
            quotient[shift] = coeff.clone();
            for i in 0..=db {
                let delta = &b[i] * &coeff;
                rem[shift + i] -= delta;
            }
            rem = trim(rem);
            if rem.is_empty() {
                break;
            }
        }
        debug_assert!(rem.is_empty(), "division was not exact");
        quotient
    }
}
