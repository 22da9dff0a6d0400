//! Exact linear algebra: integer row spaces, rational kernels and
//! univariate polynomials over `Q`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Scales a rational vector by the lcm of its denominators.
pub fn clear_denominators(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

fn make_primitive(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
    }
    if g.is_zero() {
        return;
    }
    let lead_negative = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    if lead_negative {
        g = -g;
    }
    if !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// A subspace of `Q^n` held as an integer echelon basis. Rows are primitive
/// and sorted by pivot column; each row vanishes left of its pivot.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn spanned_by<'a, I: IntoIterator<Item = &'a [BigInt]>>(ambient: usize, vectors: I) -> Self {
        let mut s = Subspace::new(ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn spanned_by_rational<'a, I: IntoIterator<Item = &'a [Rational]>>(ambient: usize, vectors: I) -> Self {
        let mut s = Subspace::new(ambient);
        for v in vectors {
            s.insert_rational(v);
        }
        s
    }

    pub fn full(ambient: usize) -> Self {
        let mut s = Subspace::new(ambient);
        for i in 0..ambient {
            let mut e = vec![BigInt::zero(); ambient];
            e[i] = BigInt::one();
            s.insert(&e);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.ambient, "vector length does not match the ambient dimension");
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let g = row[p].gcd(&v[p]);
            let a = &row[p] / &g;
            let b = &v[p] / &g;
            for k in 0..self.ambient {
                if row[k].is_zero() {
                    if !a.is_one() {
                        v[k] = &v[k] * &a;
                    }
                } else {
                    v[k] = &v[k] * &a - &row[k] * &b;
                }
            }
            make_primitive(&mut v);
        }
        v
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[BigInt]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        make_primitive(&mut r);
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    pub fn insert_rational(&mut self, v: &[Rational]) -> bool {
        self.insert(&clear_denominators(v))
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn contains_rational(&self, v: &[Rational]) -> bool {
        self.contains(&clear_denominators(v))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r);
        }
        s
    }

    pub fn intersection_dim(&self, other: &Subspace) -> usize {
        self.dim() + other.dim() - self.sum(other).dim()
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.dim() == other.dim() && self.is_subspace_of(other)
    }
}

impl Eq for Subspace {}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for e in &mut m[r][c..cols] {
            *e = &*e * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let (pivot, row) = if i < r {
                    let (lo, hi) = m.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = m.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (dst, src) in row[c..cols].iter_mut().zip(&pivot[c..cols]) {
                    if !src.is_zero() {
                        *dst -= &f * src;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Rational>]) -> usize {
    let mut m = m.to_vec();
    rref(&mut m).len()
}

/// Basis of `{v : m v = 0}` for a matrix with `cols` columns.
pub fn nullspace(m: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -a[row][free].clone();
        }
        out.push(v);
    }
    out
}

/// Coefficients `c` with `sum_i c_i columns[i] = target`, if any.
pub fn solve(columns: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let n = columns.len();
    let mut m: Vec<Vec<Rational>> = (0..target.len())
        .map(|r| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&n) {
        return None;
    }
    let mut c = vec![Rational::zero(); n];
    for (row, &p) in pivots.iter().enumerate() {
        c[p] = m[row][n].clone();
    }
    Some(c)
}

/// A polynomial in `T` with rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_integers(c: &[i64]) -> Self {
        Polynomial::new(c.iter().map(|&x| rat(x)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial at `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(l) => {
                let inv = l.recip();
                Polynomial::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Polynomial::new(c)
    }

    pub fn derivative(&self) -> Self {
        Polynomial::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * rat(i as i64)).collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn rem(&self, d: &Polynomial) -> Polynomial {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.coeffs[dd].clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let top = r.len() - 1;
            let f = &r[top] / &lead;
            if !f.is_zero() {
                for (i, c) in d.coeffs.iter().enumerate() {
                    let delta = &f * c;
                    r[top - dd + i] -= delta;
                }
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Polynomial::new(r)
    }

    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_square_free(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "T")?,
                _ => write!(f, "T^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn subspace_rank_and_membership() {
        let mut s = Subspace::new(3);
        assert!(s.insert(&ints(&[2, 4, 6])));
        assert!(!s.insert(&ints(&[1, 2, 3])));
        assert!(s.insert(&ints(&[0, 1, 1])));
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&ints(&[1, 3, 4])));
        assert!(!s.contains(&ints(&[0, 0, 1])));
        let t = Subspace::spanned_by(3, [ints(&[1, 3, 4]).as_slice(), ints(&[0, 2, 2]).as_slice()]);
        assert_eq!(s, t);
        assert_eq!(s.intersection_dim(&Subspace::spanned_by(3, [ints(&[0, 0, 1]).as_slice()])), 0);
    }

    #[test]
    fn kernel_and_solve() {
        let m = vec![vec![rat(1), rat(2), rat(3)], vec![rat(2), rat(4), rat(6)]];
        let k = nullspace(&m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let dot: Rational = (0..3).map(|i| &m[0][i] * &v[i]).sum();
            assert!(dot.is_zero());
        }
        let cols = vec![vec![rat(1), rat(0)], vec![rat(1), rat(1)]];
        assert_eq!(solve(&cols, &[rat(3), rat(2)]), Some(vec![rat(1), rat(2)]));
        assert_eq!(solve(&[vec![rat(1), rat(1)]], &[rat(1), rat(2)]), None);
    }

    #[test]
    fn polynomial_printing_and_square_freeness() {
        assert_eq!(Polynomial::from_integers(&[0, -6, 1]).to_string(), "T^2 - 6T");
        assert_eq!(Polynomial::from_integers(&[-1, 1]).to_string(), "T - 1");
        assert_eq!(Polynomial::from_integers(&[0, 0, 1]).to_string(), "T^2");
        assert!(Polynomial::from_integers(&[0, -6, 1]).is_square_free());
        assert!(!Polynomial::from_integers(&[0, 0, 1]).is_square_free());
        assert!(!Polynomial::from_integers(&[1, -2, 1]).is_square_free());
    }
}
